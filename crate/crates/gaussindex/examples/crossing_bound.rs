//! F(t, s) bounds the real crossing number from below by its coefficient
//! mass away from the constant term. The bound can beat the one read off
//! the writhe polynomial; this example searches small censuses for cases
//! where it does.

use num_bigint::BigInt;
use num_traits::Signed;

use gaussindex::census::census_stream;
use gaussindex::gauss::parse;
use gaussindex::invariants::{crossing_bound, transcendental};

fn main() {
    let kd3 = parse("O1+O2+O3+U2+U1+U3+").unwrap();
    let f = transcendental(&kd3).f;
    println!("example: {}", kd3.code());
    println!("  F = {f}");
    println!("  crossing number >= {}  (tight: the diagram has 3 chords)", crossing_bound(&f));
    println!();

    for n in 3..=4 {
        let mut shown = 0;
        for rec in census_stream(n) {
            let w_bound: BigInt = rec.w_t.terms().map(|(_, c)| c.abs()).sum();
            if rec.bound > w_bound {
                if shown == 0 {
                    println!("{n}-chord classes where the F bound beats the W(t) bound:");
                }
                println!(
                    "  {}  W(t) = {}  bound {} > {}",
                    rec.canonical_code,
                    rec.w_t.render("t"),
                    rec.bound,
                    w_bound
                );
                shown += 1;
                if shown == 3 {
                    break;
                }
            }
        }
        if shown == 0 {
            println!("no {n}-chord class beats the W(t) bound");
        }
        println!();
    }

    // the bound never exceeds the chord count
    for rec in census_stream(3) {
        let d = parse(&rec.canonical_code).unwrap();
        assert!(rec.bound <= BigInt::from(d.n_chords()));
    }
}
