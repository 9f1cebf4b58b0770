//! Enumerates all 2-chord diagrams up to rotation and tabulates their
//! invariants: only the two interleaved equal-sign classes carry F != 0.
//!
//! Usage: `cargo run --example census_small -- [chords]`

use gaussindex::census::{census_stream, CensusSummary};

fn main() {
    let chords: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2);

    let mut summary = CensusSummary::new(chords);
    println!("{:<28} {:>7}  {:<16} F(t,s)", "canonical code", "writhe", "W(t)");
    for rec in census_stream(chords) {
        println!(
            "{:<28} {:>7}  {:<16} {}",
            rec.canonical_code,
            rec.writhe,
            rec.w_t.render("t"),
            rec.f.render()
        );
        summary.add(&rec);
    }
    println!();
    println!("classes: {}", summary.classes);
    println!("classes with F != 0: {}", summary.nonzero_f);
    println!("distinct F values: {}", summary.f_groups.len());
}
