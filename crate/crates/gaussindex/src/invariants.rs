//! Index-type invariants of a Gauss diagram: the chord index, the index
//! function valued in Z[s, s^-1]/(s^|Ind| - 1), the two-variable refinement
//! F(t, s) = W(t, s) - Q(t, s), and all of its polynomial specializations,
//! together with the crossing-number lower bound and the finite-type
//! alternating sum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{
    bigint_to_number, reduce_exponent, ExponentKey, ExponentialSum, LaurentPolynomial,
};
use crate::gauss::{relate_at, DiagramError, GaussDiagram, Linkage, Sign};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("the writhe polynomial has no t^0 coefficient")]
    ZeroParityIndex,
    #[error("no chords marked")]
    EmptyMarking,
    #[error("chord {0} marked twice")]
    DuplicateMarking(usize),
}

/// Positions and chord indices of one diagram, computed once and shared by
/// the per-chord operations.
struct DiagramData {
    pos: Vec<(usize, usize)>,
    indices: Vec<BigInt>,
    m: usize,
}

impl DiagramData {
    fn new(d: &GaussDiagram) -> Self {
        let pos = d.positions();
        let m = d.len();
        let n = d.n_chords();
        let mut indices = Vec::with_capacity(n);
        for c in 1..=n {
            let mut ind = BigInt::zero();
            for e in 1..=n {
                if e == c {
                    continue;
                }
                let w = d.sign(e).unwrap().value();
                match relate_at(&pos, m, c, e) {
                    Linkage::LeftToRight => ind += w,
                    Linkage::RightToLeft => ind -= w,
                    Linkage::Unlinked => {}
                }
            }
            indices.push(ind);
        }
        DiagramData { pos, indices, m }
    }

    /// Raw index function of chord `c`: the signed sum of `s^phi(±Ind(d))`
    /// over chords crossing `c`, with `phi` the reduction modulo |Ind(c)|
    /// (the identity when Ind(c) = 0).
    fn raw_index_function(&self, d: &GaussDiagram, c: usize) -> LaurentPolynomial {
        let modulus = self.indices[c - 1].abs();
        let phi = |e: BigInt| {
            if modulus.is_zero() {
                e
            } else {
                e.mod_floor(&modulus)
            }
        };
        let mut terms: Vec<(BigInt, BigInt)> = Vec::new();
        for e in 1..=d.n_chords() {
            if e == c {
                continue;
            }
            let w = BigInt::from(d.sign(e).unwrap().value());
            match relate_at(&self.pos, self.m, c, e) {
                Linkage::LeftToRight => terms.push((phi(self.indices[e - 1].clone()), w)),
                Linkage::RightToLeft => terms.push((phi(-&self.indices[e - 1]), -w)),
                Linkage::Unlinked => {}
            }
        }
        LaurentPolynomial::from_terms(terms)
    }

    fn key(&self, d: &GaussDiagram, c: usize) -> ExponentKey {
        let raw = self.raw_index_function(d, c);
        reduce_exponent(&raw, &self.indices[c - 1].abs())
    }
}

fn check_chord(d: &GaussDiagram, c: usize) -> Result<(), DiagramError> {
    d.sign(c).map(|_| ())
}

/// Index of chord `c`: the signed count of chords crossing it, positive
/// left-to-right and negative right-to-left.
pub fn chord_index(d: &GaussDiagram, c: usize) -> Result<BigInt, DiagramError> {
    check_chord(d, c)?;
    Ok(DiagramData::new(d).indices[c - 1].clone())
}

/// Index function of chord `c`: the raw polynomial and its normal form in
/// Z[s, s^-1]/(s^|Ind(c)| - 1).
pub fn index_function(
    d: &GaussDiagram,
    c: usize,
) -> Result<(LaurentPolynomial, ExponentKey), DiagramError> {
    check_chord(d, c)?;
    let data = DiagramData::new(d);
    let raw = data.raw_index_function(d, c);
    let key = reduce_exponent(&raw, &data.indices[c - 1].abs());
    Ok((raw, key))
}

/// Writhe of the diagram: the sum of all chord signs.
pub fn writhe(d: &GaussDiagram) -> BigInt {
    d.chord_ids().map(|c| BigInt::from(d.sign(c).unwrap().value())).sum()
}

/// Writhe polynomial: the signed count of chords grouped by nonzero index.
pub fn writhe_poly(d: &GaussDiagram) -> LaurentPolynomial {
    let data = DiagramData::new(d);
    LaurentPolynomial::from_terms(d.chord_ids().filter_map(|c| {
        let ind = &data.indices[c - 1];
        (!ind.is_zero()).then(|| (ind.clone(), BigInt::from(d.sign(c).unwrap().value())))
    }))
}

/// Signed count of chords with nonzero index.
pub fn q_scalar(d: &GaussDiagram) -> BigInt {
    let data = DiagramData::new(d);
    d.chord_ids()
        .filter(|&c| !data.indices[c - 1].is_zero())
        .map(|c| BigInt::from(d.sign(c).unwrap().value()))
        .sum()
}

/// Signed count of chords with odd index.
pub fn odd_writhe(d: &GaussDiagram) -> BigInt {
    let data = DiagramData::new(d);
    d.chord_ids()
        .filter(|&c| data.indices[c - 1].is_odd())
        .map(|c| BigInt::from(d.sign(c).unwrap().value()))
        .sum()
}

/// Signed count of chords grouped by odd index.
pub fn odd_writhe_poly(d: &GaussDiagram) -> LaurentPolynomial {
    let data = DiagramData::new(d);
    LaurentPolynomial::from_terms(d.chord_ids().filter_map(|c| {
        let ind = &data.indices[c - 1];
        ind.is_odd()
            .then(|| (ind.clone(), BigInt::from(d.sign(c).unwrap().value())))
    }))
}

/// Coefficient of `t^n` in the writhe polynomial. Rejects `n = 0`, which
/// the writhe polynomial excludes by definition.
pub fn nth_parity_writhe(d: &GaussDiagram, n: &BigInt) -> Result<BigInt, InvariantError> {
    if n.is_zero() {
        return Err(InvariantError::ZeroParityIndex);
    }
    Ok(writhe_poly(d).coeff(n))
}

/// Parity writhe polynomial, returned as its x-part (odd-index chords plus
/// the `-w(K)x` correction) and y-part (even-index chords). The quantity
/// preserved by Reidemeister moves is the y -> x collapse of the pair.
pub fn parity_writhe_poly(d: &GaussDiagram) -> (LaurentPolynomial, LaurentPolynomial) {
    let data = DiagramData::new(d);
    let one = BigInt::from(1);
    let mut x_terms: Vec<(BigInt, BigInt)> = Vec::new();
    let mut y_terms: Vec<(BigInt, BigInt)> = Vec::new();
    for c in d.chord_ids() {
        let ind = &data.indices[c - 1];
        let w = BigInt::from(d.sign(c).unwrap().value());
        if ind.is_odd() {
            x_terms.push((ind + &one, w));
        } else {
            y_terms.push((ind + &one, w));
        }
    }
    x_terms.push((one, -writhe(d)));
    (
        LaurentPolynomial::from_terms(x_terms),
        LaurentPolynomial::from_terms(y_terms),
    )
}

/// Affine index polynomial `P = W(t) - Q`.
pub fn affine_index_poly(d: &GaussDiagram) -> LaurentPolynomial {
    &writhe_poly(d) - &LaurentPolynomial::constant(q_scalar(d))
}

/// Zero polynomial: the contribution of index-zero chords, each weighted by
/// its signed count of index-zero neighbours.
pub fn zero_poly(d: &GaussDiagram) -> LaurentPolynomial {
    let data = DiagramData::new(d);
    let mut out = LaurentPolynomial::zero();
    for c in d.chord_ids() {
        if !data.indices[c - 1].is_zero() {
            continue;
        }
        let w = BigInt::from(d.sign(c).unwrap().value());
        let mut g0 = BigInt::zero();
        for e in d.chord_ids() {
            if e == c || !data.indices[e - 1].is_zero() {
                continue;
            }
            let we = d.sign(e).unwrap().value();
            match relate_at(&data.pos, data.m, c, e) {
                Linkage::LeftToRight => g0 += we,
                Linkage::RightToLeft => g0 -= we,
                Linkage::Unlinked => {}
            }
        }
        out = &out + &LaurentPolynomial::from_terms([(g0, w.clone()), (BigInt::zero(), -w)]);
    }
    out
}

/// The three exponential sums `W(t, s)`, `Q(t, s)` and `F = W - Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcendental {
    pub w: ExponentialSum,
    pub q: ExponentialSum,
    pub f: ExponentialSum,
}

/// Computes `W(t, s)` (nonzero-index chords), `Q(t, s)` (the writhe minus
/// the index-zero chords) and their difference `F(t, s)`.
pub fn transcendental(d: &GaussDiagram) -> Transcendental {
    let data = DiagramData::new(d);
    let mut w_sum = ExponentialSum::zero();
    let mut q_sum = ExponentialSum::constant(writhe(d));
    for c in d.chord_ids() {
        let wc = d.sign(c).unwrap().value();
        let key = data.key(d, c);
        let term = ExponentialSum::term(wc, key);
        if data.indices[c - 1].is_zero() {
            q_sum = &q_sum - &term;
        } else {
            w_sum = &w_sum + &term;
        }
    }
    let f = &w_sum - &q_sum;
    Transcendental { w: w_sum, q: q_sum, f }
}

/// Lower bound for the real crossing number read off an exponential sum:
/// the sum of absolute coefficients away from the plain constant.
pub fn crossing_bound(f: &ExponentialSum) -> BigInt {
    f.terms()
        .filter(|(k, _)| !k.is_constant_zero())
        .map(|(_, c)| c.abs())
        .sum()
}

/// Alternating sum of `F` over all sign resolutions of the marked chords:
/// resolution 0 keeps the chord's roles with sign `+`, resolution 1 is the
/// crossing switch of that. Vanishes whenever two or more chords are marked.
pub fn finite_type_altsum(
    d: &GaussDiagram,
    marked: &[usize],
) -> Result<ExponentialSum, InvariantError> {
    if marked.is_empty() {
        return Err(InvariantError::EmptyMarking);
    }
    for (i, &c) in marked.iter().enumerate() {
        check_chord(d, c)?;
        if marked[..i].contains(&c) {
            return Err(InvariantError::DuplicateMarking(c));
        }
    }
    let mut acc = ExponentialSum::zero();
    for mask in 0u64..(1 << marked.len()) {
        let mut resolved = d.clone();
        for (i, &c) in marked.iter().enumerate() {
            resolved = resolve(&resolved, c, mask >> i & 1 == 1);
        }
        let f = transcendental(&resolved).f;
        if mask.count_ones() % 2 == 0 {
            acc = &acc + &f;
        } else {
            acc = &acc - &f;
        }
    }
    Ok(acc)
}

/// Positive (negative) resolution of a singular chord: sign forced to `+`
/// with roles kept, or to `-` with roles swapped.
fn resolve(d: &GaussDiagram, c: usize, negative: bool) -> GaussDiagram {
    let positive = match d.sign(c).unwrap() {
        Sign::Plus => d.clone(),
        Sign::Minus => d.switch(c).unwrap(),
    };
    if negative {
        positive.switch(c).unwrap()
    } else {
        positive
    }
}

/// Every move-invariant value of a diagram, bundled for comparison. The
/// parity writhe pair enters through its move-invariant y -> x collapse;
/// the diagram writhe itself is deliberately absent (the first move
/// changes it).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSet {
    pub f: ExponentialSum,
    pub w_ts: ExponentialSum,
    pub q_ts: ExponentialSum,
    pub w_t: LaurentPolynomial,
    pub p: LaurentPolynomial,
    pub z: LaurentPolynomial,
    pub odd_writhe_poly: LaurentPolynomial,
    pub parity_writhe: LaurentPolynomial,
    pub odd_writhe: BigInt,
}

impl InvariantSet {
    pub fn of(d: &GaussDiagram) -> Self {
        let t = transcendental(d);
        let (px, py) = parity_writhe_poly(d);
        InvariantSet {
            f: t.f,
            w_ts: t.w,
            q_ts: t.q,
            w_t: writhe_poly(d),
            p: affine_index_poly(d),
            z: zero_poly(d),
            odd_writhe_poly: odd_writhe_poly(d),
            parity_writhe: &px + &py,
            odd_writhe: odd_writhe(d),
        }
    }

    /// Names of the invariants that differ between the two sets.
    pub fn differences(&self, other: &Self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.f != other.f {
            out.push("F");
        }
        if self.w_ts != other.w_ts {
            out.push("W(t,s)");
        }
        if self.q_ts != other.q_ts {
            out.push("Q(t,s)");
        }
        if self.w_t != other.w_t {
            out.push("W(t)");
        }
        if self.p != other.p {
            out.push("P");
        }
        if self.z != other.z {
            out.push("Z");
        }
        if self.odd_writhe_poly != other.odd_writhe_poly {
            out.push("odd writhe poly");
        }
        if self.parity_writhe != other.parity_writhe {
            out.push("parity writhe poly");
        }
        if self.odd_writhe != other.odd_writhe {
            out.push("odd writhe");
        }
        out
    }
}

/// Names of invariants that differ between two diagrams; empty when every
/// computed invariant agrees.
pub fn invariant_differences(a: &GaussDiagram, b: &GaussDiagram) -> Vec<String> {
    InvariantSet::of(a)
        .differences(&InvariantSet::of(b))
        .into_iter()
        .map(str::to_string)
        .collect()
}

/// Per-chord data of one diagram: sign, index, and index function in raw
/// and reduced form.
#[derive(Clone, Debug)]
pub struct ChordReport {
    pub sign: Sign,
    pub index: BigInt,
    pub raw: LaurentPolynomial,
    pub key: ExponentKey,
}

#[derive(Clone, Debug)]
pub struct IndexReport {
    pub chords: Vec<ChordReport>,
    pub writhe: BigInt,
}

pub fn index_report(d: &GaussDiagram) -> IndexReport {
    let data = DiagramData::new(d);
    let chords = d
        .chord_ids()
        .map(|c| {
            let raw = data.raw_index_function(d, c);
            let key = reduce_exponent(&raw, &data.indices[c - 1].abs());
            ChordReport {
                sign: d.sign(c).unwrap(),
                index: data.indices[c - 1].clone(),
                raw,
                key,
            }
        })
        .collect();
    IndexReport { chords, writhe: writhe(d) }
}

fn render_key(key: &ExponentKey) -> String {
    match key {
        ExponentKey::Constant(k) => k.to_string(),
        ExponentKey::Modular { poly, .. } => poly.render("s"),
    }
}

/// Full invariant report as JSON, with polynomials rendered canonically.
pub fn report_json(d: &GaussDiagram) -> Value {
    let report = index_report(d);
    let t = transcendental(d);
    let mut indices = serde_json::Map::new();
    let mut functions = serde_json::Map::new();
    for (i, chord) in report.chords.iter().enumerate() {
        indices.insert((i + 1).to_string(), Value::Number(bigint_to_number(&chord.index)));
        functions.insert((i + 1).to_string(), Value::String(render_key(&chord.key)));
    }
    let mut map = serde_json::Map::new();
    map.insert("code".into(), Value::String(d.code()));
    map.insert("canonical_code".into(), Value::String(d.canonical_code()));
    map.insert("writhe".into(), Value::Number(bigint_to_number(&report.writhe)));
    map.insert("indices".into(), Value::Object(indices));
    map.insert("index_functions".into(), Value::Object(functions));
    map.insert("W_t".into(), Value::String(writhe_poly(d).render("t")));
    map.insert("P".into(), Value::String(affine_index_poly(d).render("t")));
    map.insert("Z".into(), Value::String(zero_poly(d).render("t")));
    map.insert("odd_writhe".into(), Value::Number(bigint_to_number(&odd_writhe(d))));
    map.insert("W_ts".into(), Value::String(t.w.render()));
    map.insert("Q_ts".into(), Value::String(t.q.render()));
    map.insert("F".into(), Value::String(t.f.render()));
    map.insert("bound".into(), Value::Number(bigint_to_number(&crossing_bound(&t.f))));
    Value::Object(map)
}

/// Full invariant report as plain text.
pub fn report_text(d: &GaussDiagram) -> String {
    let report = index_report(d);
    let t = transcendental(d);
    let (px, py) = parity_writhe_poly(d);
    let mut out = String::new();
    out.push_str(&format!("code: {}\n", d.code()));
    out.push_str(&format!("canonical: {}\n", d.canonical_code()));
    out.push_str(&format!("chords: {}\n", d.n_chords()));
    out.push_str(&format!("writhe: {}\n", report.writhe));
    let indices: Vec<String> = report
        .chords
        .iter()
        .enumerate()
        .map(|(i, c)| format!("{}:{}", i + 1, c.index))
        .collect();
    out.push_str(&format!("indices: {}\n", indices.join(" ")));
    let functions: Vec<String> = report
        .chords
        .iter()
        .enumerate()
        .map(|(i, c)| format!("{}:{}", i + 1, render_key(&c.key)))
        .collect();
    out.push_str(&format!("index functions: {}\n", functions.join(" ")));
    out.push_str(&format!("W(t) = {}\n", writhe_poly(d).render("t")));
    out.push_str(&format!("P = {}\n", affine_index_poly(d).render("t")));
    out.push_str(&format!("Z = {}\n", zero_poly(d).render("t")));
    out.push_str(&format!("odd writhe = {}\n", odd_writhe(d)));
    out.push_str(&format!("odd writhe poly = {}\n", odd_writhe_poly(d).render("t")));
    out.push_str(&format!(
        "parity writhe = ({}, {})\n",
        px.render("x"),
        py.render("y")
    ));
    out.push_str(&format!("W(t,s) = {}\n", t.w.render()));
    out.push_str(&format!("Q(t,s) = {}\n", t.q.render()));
    out.push_str(&format!("F = {}\n", t.f.render()));
    out.push_str(&format!("bound = {}\n", crossing_bound(&t.f)));
    out
}
