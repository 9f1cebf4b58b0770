//! Index-type invariants of virtual knots, computed exactly from signed
//! Gauss codes.
//!
//! The centerpiece is the two-variable invariant `F(t, s)`, a formal sum
//! of terms `±t^{g(s)}` whose exponents are index functions of chords
//! valued in quotient rings `Z[s, s^-1]/(s^n - 1)`. The crate also computes
//! every polynomial invariant this refines (writhe polynomial, affine index
//! polynomial, zero polynomial, odd writhe polynomial, parity writhe
//! polynomial), a Reidemeister-move engine for invariance testing, and a
//! small-diagram census.
//!
//! ```
//! use gaussindex::{gauss, invariants};
//!
//! let diagram = gauss::parse("O1+O2+U1+U2+").unwrap();
//! let t = invariants::transcendental(&diagram);
//! assert_eq!(t.f.render(), "t + t^-1 - 2");
//! ```

pub mod algebra;
pub mod census;
pub mod cli;
pub mod gauss;
pub mod invariants;
pub mod moves;

pub use algebra::{reduce_exponent, ExponentKey, ExponentialSum, LaurentPolynomial};
pub use gauss::{parse, DiagramError, GaussDiagram, Linkage, ParseError, Role, Sign};
