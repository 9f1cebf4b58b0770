//! F is additive over connected sums, at any splice points. The flip side:
//! a composite of two trivial diagrams is invisible to F, even when the
//! composite knot is nontrivial.

use gaussindex::gauss::parse;
use gaussindex::invariants::transcendental;

fn main() {
    let vt = parse("O1+O2+U1+U2+").unwrap();
    let kd3 = parse("O1+O2+O3+U2+U1+U3+").unwrap();

    let f1 = transcendental(&vt).f;
    let f2 = transcendental(&kd3).f;
    println!("F(A) = {f1}");
    println!("F(B) = {f2}");

    for (g1, g2) in [(0, 0), (1, 3), (3, 5)] {
        let sum = vt.connected_sum(g1, &kd3, g2).unwrap();
        let f = transcendental(&sum).f;
        assert_eq!(f, &f1 + &f2);
        println!("F(A # B) spliced at gaps ({g1}, {g2}) = {f}");
    }
    println!();

    // each summand is a cancelling second-move pair, so F vanishes on the
    // composite no matter how the pieces tangle
    let pair_a = parse("O1+U2-U1+O2-").unwrap();
    let pair_b = parse("O1-O2+U1-U2+").unwrap();
    let composite = pair_a.connected_sum(1, &pair_b, 2).unwrap();
    let f = transcendental(&composite).f;
    println!("composite of two trivial pieces: {}", composite.code());
    println!("F = {f}  (blind to composites of trivial diagrams)");
    assert!(f.is_zero());
}
