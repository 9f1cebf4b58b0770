//! Computes the full invariant report of a signed Gauss code.
//!
//! Usage: `cargo run --example compute -- "O1+O2+U1+U2+"`
//! (defaults to a small tour of named diagrams when no code is given).

use gaussindex::gauss::parse;
use gaussindex::invariants::report_text;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let Some(code) = args.first() {
        match parse(code) {
            Ok(d) => print!("{}", report_text(&d)),
            Err(e) => {
                eprintln!("parse error: {e}");
                std::process::exit(2);
            }
        }
        return;
    }

    let tour = [
        ("unknot", ""),
        ("virtual trefoil", "O1+O2+U1+U2+"),
        ("classical trefoil", "O1+U2+O3+U1+O2+U3+"),
        ("virtualized trefoil", "O1-U2+O3+U1-O2+U3+"),
        ("three-chord diagram with a modular exponent", "O1+O2+O3+U2+U1+U3+"),
    ];
    for (name, code) in tour {
        println!("=== {name} ===");
        print!("{}", report_text(&parse(code).unwrap()));
        println!();
    }
}
