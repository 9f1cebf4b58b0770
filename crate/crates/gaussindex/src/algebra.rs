//! Exact arithmetic for Laurent polynomials over the integers, reduction
//! into the quotient rings Z[s, s^-1]/(s^n - 1), and formal exponential
//! sums in t whose exponents are themselves (reduced) polynomials in s.
//!
//! All values are immutable after construction and kept in canonical form:
//! no zero coefficients are ever stored, exponent polynomials reduced
//! modulo s^n - 1 carry representatives in [0, n), and an exponent that
//! collapses to a plain integer is always stored as [`ExponentKey::Constant`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

/// Laurent polynomial with integer coefficients, stored as a finite map
/// from integer exponents to nonzero integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<BigInt, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// The single term `coeff * var^exp` (zero if `coeff` is zero).
    pub fn monomial(coeff: impl Into<BigInt>, exp: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp.into(), coeff.into());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging
    /// duplicate exponents and dropping zero coefficients.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BigInt, BigInt)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &BigInt) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of the `var^0` term.
    pub fn constant_coeff(&self) -> BigInt {
        self.coeff(&BigInt::zero())
    }

    /// Value at `var = 1`, i.e. the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Substitutes `var -> var^-1`, negating every exponent.
    pub fn invert_variable(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (-e, c.clone())))
    }

    fn add_term(&mut self, exp: BigInt, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Canonical spaced rendering with nonzero exponents in descending
    /// order and the constant term last, e.g. `t + t^-1 - 2`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&BigInt> = self.terms.keys().filter(|e| !e.is_zero()).collect();
        keys.sort_by(|a, b| b.cmp(a));
        let zero = BigInt::zero();
        if self.terms.contains_key(&zero) {
            keys.push(&zero);
        }
        let mut out = String::new();
        for (i, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&render_magnitude(c, e, var));
        }
        out
    }

    /// Compact rendering used inside exponents, constant term first and
    /// remaining terms by ascending absolute exponent, e.g. `1+s` or
    /// `-1+s^-1`.
    pub(crate) fn render_compact(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&BigInt> = self.terms.keys().collect();
        keys.sort_by(|a, b| exponent_print_order(a, b));
        let mut out = String::new();
        for (i, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push('-');
            } else {
                out.push('+');
            }
            out.push_str(&render_magnitude(c, e, var));
        }
        out
    }
}

/// Print order for exponents inside a rendered exponent polynomial:
/// ascending absolute value, nonnegative before negative on ties.
fn exponent_print_order(a: &BigInt, b: &BigInt) -> Ordering {
    a.abs().cmp(&b.abs()).then_with(|| b.sign().cmp(&a.sign()))
}

fn render_magnitude(coeff: &BigInt, exp: &BigInt, var: &str) -> String {
    let mag = coeff.abs();
    if exp.is_zero() {
        return mag.to_string();
    }
    let head = if mag.is_one() { String::new() } else { mag.to_string() };
    if exp.is_one() {
        format!("{head}{var}")
    } else {
        format!("{head}{var}^{exp}")
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(self.terms.iter().map(|(e, c)| (e.clone(), -c)))
    }
}

/// Normal form of a value of the index function: either a plain integer,
/// or a residue class modulo `s^n - 1` (with `n = 0` meaning no reduction)
/// that is not itself a constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExponentKey {
    Constant(BigInt),
    Modular {
        modulus: BigInt,
        poly: LaurentPolynomial,
    },
}

impl ExponentKey {
    pub fn constant(k: impl Into<BigInt>) -> Self {
        ExponentKey::Constant(k.into())
    }

    pub fn is_constant_zero(&self) -> bool {
        matches!(self, ExponentKey::Constant(k) if k.is_zero())
    }

    /// Value of the exponent at `s = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        match self {
            ExponentKey::Constant(k) => k.clone(),
            ExponentKey::Modular { poly, .. } => poly.eval_at_one(),
        }
    }

    /// Coefficient of `s^0` in the exponent (the whole value for constants).
    pub fn constant_coeff(&self) -> BigInt {
        match self {
            ExponentKey::Constant(k) => k.clone(),
            ExponentKey::Modular { poly, .. } => poly.constant_coeff(),
        }
    }

    /// Negation of the exponent, re-reduced in its quotient ring.
    pub fn negate(&self) -> Self {
        match self {
            ExponentKey::Constant(k) => ExponentKey::Constant(-k),
            ExponentKey::Modular { modulus, poly } => reduce_exponent(&-poly, modulus),
        }
    }

    /// Substitutes `s -> s^-1` in the exponent, re-reduced.
    pub fn invert_s(&self) -> Self {
        match self {
            ExponentKey::Constant(_) => self.clone(),
            ExponentKey::Modular { modulus, poly } => {
                reduce_exponent(&poly.invert_variable(), modulus)
            }
        }
    }

    fn rank(&self) -> u8 {
        match self {
            ExponentKey::Constant(k) if !k.is_zero() => 0,
            ExponentKey::Modular { .. } => 1,
            ExponentKey::Constant(_) => 2,
        }
    }
}

/// Lexicographic comparison of two polynomials by their printed term
/// sequence: exponents in print order, then coefficients ascending.
fn cmp_poly_print(a: &LaurentPolynomial, b: &LaurentPolynomial) -> Ordering {
    let mut ta: Vec<(&BigInt, &BigInt)> = a.terms().collect();
    let mut tb: Vec<(&BigInt, &BigInt)> = b.terms().collect();
    ta.sort_by(|x, y| exponent_print_order(x.0, y.0));
    tb.sort_by(|x, y| exponent_print_order(x.0, y.0));
    for ((ea, ca), (eb, cb)) in ta.iter().zip(tb.iter()) {
        let ord = exponent_print_order(ea, eb).then_with(|| ca.cmp(cb));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ta.len().cmp(&tb.len())
}

impl Ord for ExponentKey {
    /// Canonical term order: nonzero constants by descending value, then
    /// modular exponents by modulus and printed polynomial, then the
    /// constant-zero key (the plain summand) last.
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank()).then_with(|| match (self, other) {
            (ExponentKey::Constant(a), ExponentKey::Constant(b)) => b.cmp(a),
            (
                ExponentKey::Modular { modulus: m1, poly: p1 },
                ExponentKey::Modular { modulus: m2, poly: p2 },
            ) => m1.cmp(m2).then_with(|| cmp_poly_print(p1, p2)),
            _ => unreachable!("equal ranks imply equal variants"),
        })
    }
}

impl PartialOrd for ExponentKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reduces a raw exponent polynomial into Z[s, s^-1]/(s^n - 1).
///
/// Exponents are folded into `[0, n)` with coefficients summed. A result
/// supported only on `s^0` collapses to `Constant`; `n = 0` leaves the
/// polynomial unreduced (constants still collapse); `n = 1` collapses to
/// the value at `s = 1`.
pub fn reduce_exponent(p: &LaurentPolynomial, modulus: &BigInt) -> ExponentKey {
    assert!(!modulus.is_negative(), "modulus must be nonnegative");
    if modulus.is_one() {
        return ExponentKey::Constant(p.eval_at_one());
    }
    let folded = if modulus.is_zero() {
        p.clone()
    } else {
        LaurentPolynomial::from_terms(
            p.terms().map(|(e, c)| (e.mod_floor(modulus), c.clone())),
        )
    };
    match folded.as_constant() {
        Some(c) => ExponentKey::Constant(c),
        None => ExponentKey::Modular {
            modulus: modulus.clone(),
            poly: folded,
        },
    }
}

/// Formal integer combination of terms `t^g` where each exponent `g` is an
/// [`ExponentKey`]. The plain integer summand lives at `Constant(0)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExponentialSum {
    terms: BTreeMap<ExponentKey, BigInt>,
}

impl ExponentialSum {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single term `coeff * t^key`.
    pub fn term(coeff: impl Into<BigInt>, key: ExponentKey) -> Self {
        let mut s = Self::zero();
        s.add_term(key, coeff.into());
        s
    }

    /// The plain integer summand `c`.
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, ExponentKey::constant(0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentKey, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &ExponentKey) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, key: ExponentKey, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Substitutes `t -> t^-1`: every exponent key is negated.
    pub fn substitute_t_inverse(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.terms.iter() {
            out.add_term(k.negate(), c.clone());
        }
        out
    }

    /// Substitutes `s -> s^-1` inside every exponent key.
    pub fn substitute_s_inverse(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.terms.iter() {
            out.add_term(k.invert_s(), c.clone());
        }
        out
    }

    /// Evaluation at `s = 1`, well defined because folding modulo
    /// `s^n - 1` preserves the value at 1. The result is a Laurent
    /// polynomial in `t`.
    pub fn evaluate_s_one(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            self.terms.iter().map(|(k, c)| (k.eval_at_one(), c.clone())),
        )
    }

    /// Evaluation at `t = 1`: the sum of all coefficients.
    pub fn evaluate_t_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Specialization at `s = 0`, read as constant-term extraction of each
    /// exponent so that negative powers of `s` vanish.
    pub fn specialize_s_zero(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            self.terms.iter().map(|(k, c)| (k.constant_coeff(), c.clone())),
        )
    }

    /// Canonical string, e.g. `t + t^-1 + t^{-1+s^-1} + t^{1-s^-1} - 4`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (key, coeff)) in self.terms.iter().enumerate() {
            if i == 0 {
                if coeff.is_negative() {
                    out.push('-');
                }
            } else if coeff.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = coeff.abs();
            let body = match key {
                ExponentKey::Constant(k) if k.is_zero() => mag.to_string(),
                ExponentKey::Constant(k) => {
                    let head = if mag.is_one() { String::new() } else { mag.to_string() };
                    if k.is_one() {
                        format!("{head}t")
                    } else {
                        format!("{head}t^{k}")
                    }
                }
                ExponentKey::Modular { poly, .. } => {
                    let head = if mag.is_one() { String::new() } else { mag.to_string() };
                    format!("{head}t^{{{}}}", poly.render_compact("s"))
                }
            };
            out.push_str(&body);
        }
        out
    }

    /// JSON encoding: an array of `{coeff, exponent}` objects in canonical
    /// order, with `exponent` either `{kind: "const", k}` or
    /// `{kind: "poly", modulus, coeffs: {"<exp>": coeff}}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(key, coeff)| {
                let exponent = match key {
                    ExponentKey::Constant(k) => json!({
                        "kind": "const",
                        "k": bigint_to_number(k),
                    }),
                    ExponentKey::Modular { modulus, poly } => {
                        let mut coeffs = serde_json::Map::new();
                        for (e, c) in poly.terms() {
                            coeffs.insert(e.to_string(), Value::Number(bigint_to_number(c)));
                        }
                        json!({
                            "kind": "poly",
                            "modulus": bigint_to_number(modulus),
                            "coeffs": Value::Object(coeffs),
                        })
                    }
                };
                json!({
                    "coeff": bigint_to_number(coeff),
                    "exponent": exponent,
                })
            })
            .collect();
        Value::Array(terms)
    }

    /// Decodes the [`to_json`](Self::to_json) encoding, re-normalizing
    /// into canonical form.
    pub fn from_json(value: &Value) -> Result<Self, SumDecodeError> {
        let arr = value.as_array().ok_or(SumDecodeError::NotArray)?;
        let mut out = Self::zero();
        for (i, item) in arr.iter().enumerate() {
            let obj = item.as_object().ok_or(SumDecodeError::BadTerm(i))?;
            let coeff = obj
                .get("coeff")
                .and_then(Value::as_number)
                .and_then(number_to_bigint)
                .ok_or(SumDecodeError::BadInt(i))?;
            let exponent = obj
                .get("exponent")
                .and_then(Value::as_object)
                .ok_or(SumDecodeError::BadTerm(i))?;
            let kind = exponent
                .get("kind")
                .and_then(Value::as_str)
                .ok_or(SumDecodeError::BadTerm(i))?;
            let key = match kind {
                "const" => {
                    let k = exponent
                        .get("k")
                        .and_then(Value::as_number)
                        .and_then(number_to_bigint)
                        .ok_or(SumDecodeError::BadInt(i))?;
                    ExponentKey::Constant(k)
                }
                "poly" => {
                    let modulus = exponent
                        .get("modulus")
                        .and_then(Value::as_number)
                        .and_then(number_to_bigint)
                        .ok_or(SumDecodeError::BadInt(i))?;
                    if modulus.is_negative() || modulus.is_one() {
                        return Err(SumDecodeError::BadModulus(i, modulus));
                    }
                    let coeffs = exponent
                        .get("coeffs")
                        .and_then(Value::as_object)
                        .ok_or(SumDecodeError::BadTerm(i))?;
                    let mut poly = LaurentPolynomial::zero();
                    for (e, c) in coeffs {
                        let e: BigInt = e.parse().map_err(|_| SumDecodeError::BadInt(i))?;
                        let c = c
                            .as_number()
                            .and_then(number_to_bigint)
                            .ok_or(SumDecodeError::BadInt(i))?;
                        poly.add_term(e, c);
                    }
                    reduce_exponent(&poly, &modulus)
                }
                other => return Err(SumDecodeError::BadKind(i, other.to_string())),
            };
            out.add_term(key, coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for ExponentialSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &ExponentialSum {
    type Output = ExponentialSum;
    fn add(self, rhs: &ExponentialSum) -> ExponentialSum {
        let mut out = self.clone();
        for (k, c) in rhs.terms.iter() {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ExponentialSum {
    type Output = ExponentialSum;
    fn sub(self, rhs: &ExponentialSum) -> ExponentialSum {
        let mut out = self.clone();
        for (k, c) in rhs.terms.iter() {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl Neg for &ExponentialSum {
    type Output = ExponentialSum;
    fn neg(self) -> ExponentialSum {
        let mut out = ExponentialSum::zero();
        for (k, c) in self.terms.iter() {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

/// Errors decoding the JSON encoding of an [`ExponentialSum`].
#[derive(Debug, Error)]
pub enum SumDecodeError {
    #[error("expected a top-level array of terms")]
    NotArray,
    #[error("term {0}: expected an object with `coeff` and `exponent`")]
    BadTerm(usize),
    #[error("term {0}: unknown exponent kind `{1}`")]
    BadKind(usize, String),
    #[error("term {0}: invalid integer")]
    BadInt(usize),
    #[error("term {0}: invalid modulus {1}")]
    BadModulus(usize, BigInt),
}

pub(crate) fn bigint_to_number(i: &BigInt) -> serde_json::Number {
    serde_json::from_str(&i.to_string()).expect("integer literal is a valid JSON number")
}

pub(crate) fn number_to_bigint(n: &serde_json::Number) -> Option<BigInt> {
    n.to_string().parse().ok()
}
