//! Scrambles diagrams with random Reidemeister moves and checks that every
//! computed invariant is preserved.
//!
//! Usage: `cargo run --example move_fuzz -- [count] [steps] [seed]`

use gaussindex::gauss::parse;
use gaussindex::invariants::{invariant_differences, transcendental};
use gaussindex::moves::{fuzz_invariance, random_walk};

fn main() {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let steps: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(50);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let vt = parse("O1+O2+U1+U2+").unwrap();
    println!("virtual trefoil: F = {}", transcendental(&vt).f);
    for walk_seed in 0..3 {
        let scrambled = random_walk(&vt, steps, walk_seed, 30);
        println!(
            "after a {steps}-move walk (seed {walk_seed}): {} chords, F = {}",
            scrambled.n_chords(),
            transcendental(&scrambled).f
        );
    }
    println!();

    let report = fuzz_invariance(count, steps, 8, 30, seed, invariant_differences);
    println!("{}/{count} random walks preserved every invariant", report.passes);
    for failure in &report.failures {
        println!("FAIL {} broke {:?}", failure.start_code, failure.broken);
        for step in &failure.trace {
            println!("  {step}");
        }
    }
    if !report.failures.is_empty() {
        std::process::exit(4);
    }
}
