//! Mirror images and orientation reversal act on F(t, s) by the exact
//! substitution laws F(mirror) = -F(t^-1, s^-1) and F(reverse) = F(t^-1, s).

use gaussindex::gauss::parse;
use gaussindex::invariants::transcendental;

fn main() {
    let codes = [
        "O1+O2+U1+U2+",
        "O1+O2+U3+U1+O3+O4+U2+U4+",
        "O1+O2+O3+U2+U1+U3+",
    ];
    for code in codes {
        let d = parse(code).unwrap();
        let f = transcendental(&d).f;
        let f_mirror = transcendental(&d.mirror()).f;
        let f_reverse = transcendental(&d.reverse()).f;
        println!("diagram    {code}");
        println!("  F           = {f}");
        println!("  F(mirror)   = {f_mirror}");
        println!("  F(reverse)  = {f_reverse}");
        assert_eq!(f_mirror, -&f.substitute_t_inverse().substitute_s_inverse());
        assert_eq!(f_reverse, f.substitute_t_inverse());
        if f_mirror != f {
            println!("  => chiral: F distinguishes this knot from its mirror");
        }
        if f_reverse != f {
            println!("  => F distinguishes this knot from its reverse");
        }
        println!();
    }
}
