//! Exhaustive enumeration of Gauss diagrams with a given number of chords,
//! deduplicated by rotation, with invariant tabulation and predicate search.
//!
//! A diagram class is emitted exactly once, through the representative
//! whose basepoint serialization equals its canonical code, so enumeration
//! streams without keeping a table of seen codes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{bigint_to_number, ExponentialSum, LaurentPolynomial};
use crate::gauss::{Endpoint, GaussDiagram, Role, Sign};
use crate::invariants;

/// Default cap on the census size; about 4 * 10^7 raw diagrams at n = 6.
pub const DEFAULT_CENSUS_CAP: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CensusError {
    #[error("chord count {requested} exceeds the census cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PredicateError {
    #[error("empty predicate")]
    Empty,
    #[error("malformed clause `{0}`")]
    BadClause(String),
    #[error("unknown field `{0}`")]
    UnknownField(String),
}

/// Invariant record of one rotation class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub canonical_code: String,
    pub writhe: BigInt,
    pub w_t: LaurentPolynomial,
    pub p: LaurentPolynomial,
    pub z: LaurentPolynomial,
    pub f: ExponentialSum,
    pub bound: BigInt,
}

impl CensusRecord {
    pub fn from_diagram(d: &GaussDiagram) -> Self {
        let t = invariants::transcendental(d);
        CensusRecord {
            canonical_code: d.canonical_code(),
            writhe: invariants::writhe(d),
            w_t: invariants::writhe_poly(d),
            p: invariants::affine_index_poly(d),
            z: invariants::zero_poly(d),
            bound: invariants::crossing_bound(&t.f),
            f: t.f,
        }
    }

    /// One JSON-lines record.
    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        map.insert("canonical_code".into(), Value::String(self.canonical_code.clone()));
        map.insert("writhe".into(), Value::Number(bigint_to_number(&self.writhe)));
        map.insert("W_t".into(), Value::String(self.w_t.render("t")));
        map.insert("P".into(), Value::String(self.p.render("t")));
        map.insert("Z".into(), Value::String(self.z.render("t")));
        map.insert("F".into(), Value::String(self.f.render()));
        map.insert("bound".into(), Value::Number(bigint_to_number(&self.bound)));
        Value::Object(map)
    }

    /// CSV row of the scalar columns.
    pub fn to_csv_row(&self) -> String {
        format!("{},{},{}", self.canonical_code, self.writhe, self.bound)
    }
}

pub const CSV_HEADER: &str = "canonical_code,writhe,bound";

/// All perfect matchings of `0..2n`, each as pairs ordered by first point.
fn matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn recurse(
        free: &[usize],
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if free.is_empty() {
            out.push(current.clone());
            return;
        }
        let a = free[0];
        for j in 1..free.len() {
            let b = free[j];
            let rest: Vec<usize> =
                free.iter().copied().filter(|&p| p != a && p != b).collect();
            current.push((a, b));
            recurse(&rest, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    let free: Vec<usize> = (0..2 * n).collect();
    recurse(&free, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Decorated diagrams of one matching: two role bits and two sign bits per
/// chord, `4^n` in total, in deterministic order.
fn decorations(pairs: &[(usize, usize)]) -> impl Iterator<Item = GaussDiagram> + '_ {
    let n = pairs.len();
    (0..1u64 << (2 * n)).map(move |bits| {
        let mut endpoints = vec![Endpoint { chord: 0, role: Role::Over }; 2 * n];
        let mut signs = Vec::with_capacity(n);
        for (k, &(a, b)) in pairs.iter().enumerate() {
            let over_first = bits >> (2 * k) & 1 == 0;
            let positive = bits >> (2 * k + 1) & 1 == 0;
            let (over, under) = if over_first { (a, b) } else { (b, a) };
            endpoints[over] = Endpoint { chord: k + 1, role: Role::Over };
            endpoints[under] = Endpoint { chord: k + 1, role: Role::Under };
            signs.push(if positive { Sign::Plus } else { Sign::Minus });
        }
        GaussDiagram::from_parts_unchecked(endpoints, signs)
    })
}

/// Streams every rotation class of diagrams with `n` chords exactly once,
/// in deterministic order, through its canonical representative.
pub fn enumerate_diagrams(n: usize) -> impl Iterator<Item = GaussDiagram> {
    matchings(n).into_iter().flat_map(|pairs| {
        let owned: Vec<(usize, usize)> = pairs;
        let mut reps = Vec::new();
        for d in decorations(&owned) {
            if d.code() == d.canonical_code() {
                reps.push(d);
            }
        }
        reps
    })
}

/// Streams census records for every rotation class with `n` chords.
pub fn census_stream(n: usize) -> impl Iterator<Item = CensusRecord> {
    enumerate_diagrams(n).map(|d| CensusRecord::from_diagram(&d))
}

/// Collects the census, refusing chord counts above `cap`.
pub fn census(n: usize, cap: usize) -> Result<Vec<CensusRecord>, CensusError> {
    if n > cap {
        return Err(CensusError::CapExceeded { requested: n, cap });
    }
    Ok(census_stream(n).collect())
}

/// Streaming totals and group-by-F summary.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusSummary {
    pub chords: usize,
    pub classes: u64,
    pub nonzero_f: u64,
    pub f_groups: BTreeMap<String, u64>,
}

impl CensusSummary {
    pub fn new(chords: usize) -> Self {
        CensusSummary { chords, ..Default::default() }
    }

    pub fn add(&mut self, record: &CensusRecord) {
        self.classes += 1;
        if !record.f.is_zero() {
            self.nonzero_f += 1;
        }
        *self.f_groups.entry(record.f.render()).or_insert(0) += 1;
    }

    pub fn to_json(&self) -> Value {
        let mut groups = serde_json::Map::new();
        for (f, count) in &self.f_groups {
            groups.insert(f.clone(), json!(count));
        }
        json!({
            "chords": self.chords,
            "classes": self.classes,
            "nonzero_f": self.nonzero_f,
            "f_groups": Value::Object(groups),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Field {
    Writhe,
    WT,
    P,
    Z,
    F,
    Bound,
}

impl Field {
    fn parse(name: &str) -> Result<Field, PredicateError> {
        match name.to_ascii_lowercase().as_str() {
            "writhe" => Ok(Field::Writhe),
            "w_t" | "wt" => Ok(Field::WT),
            "p" => Ok(Field::P),
            "z" => Ok(Field::Z),
            "f" => Ok(Field::F),
            "bound" => Ok(Field::Bound),
            _ => Err(PredicateError::UnknownField(name.to_string())),
        }
    }

    fn is_zero_in(self, rec: &CensusRecord) -> bool {
        match self {
            Field::Writhe => rec.writhe.is_zero(),
            Field::WT => rec.w_t.is_zero(),
            Field::P => rec.p.is_zero(),
            Field::Z => rec.z.is_zero(),
            Field::F => rec.f.is_zero(),
            Field::Bound => rec.bound.is_zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Clause {
    IsZero(Field),
    NonZero(Field),
    BoundAtLeast(BigInt),
}

/// Conjunction of clauses over census record fields: `field=0`,
/// `field!=0` and `bound>=k`, joined by `&&` (also accepted: `∧`, `≠`, `≥`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    clauses: Vec<Clause>,
}

impl Predicate {
    pub fn parse(text: &str) -> Result<Predicate, PredicateError> {
        let normalized = text.replace('∧', "&&").replace('≠', "!=").replace('≥', ">=");
        if normalized.trim().is_empty() {
            return Err(PredicateError::Empty);
        }
        let mut clauses = Vec::new();
        for raw in normalized.split("&&") {
            let clause: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            if clause.is_empty() {
                return Err(PredicateError::BadClause(raw.trim().to_string()));
            }
            if let Some((name, value)) = clause.split_once(">=") {
                if Field::parse(name)? != Field::Bound {
                    return Err(PredicateError::BadClause(clause.clone()));
                }
                let k: BigInt = value
                    .parse()
                    .map_err(|_| PredicateError::BadClause(clause.clone()))?;
                clauses.push(Clause::BoundAtLeast(k));
            } else if let Some((name, value)) = clause.split_once("!=") {
                if value != "0" {
                    return Err(PredicateError::BadClause(clause.clone()));
                }
                clauses.push(Clause::NonZero(Field::parse(name)?));
            } else if let Some((name, value)) = clause.split_once('=') {
                if value != "0" {
                    return Err(PredicateError::BadClause(clause.clone()));
                }
                clauses.push(Clause::IsZero(Field::parse(name)?));
            } else {
                return Err(PredicateError::BadClause(clause.clone()));
            }
        }
        Ok(Predicate { clauses })
    }

    pub fn matches(&self, rec: &CensusRecord) -> bool {
        self.clauses.iter().all(|clause| match clause {
            Clause::IsZero(field) => field.is_zero_in(rec),
            Clause::NonZero(field) => !field.is_zero_in(rec),
            Clause::BoundAtLeast(k) => rec.bound >= *k,
        })
    }
}

/// Canonical codes of all classes with `n` chords matching the predicate,
/// in enumeration order.
pub fn find_examples(n: usize, predicate: &Predicate) -> Vec<String> {
    census_stream(n)
        .filter(|rec| predicate.matches(rec))
        .map(|rec| rec.canonical_code)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::parse;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    #[test]
    fn matching_counts_are_double_factorials() {
        assert_eq!(matchings(0).len(), 1);
        assert_eq!(matchings(1).len(), 1);
        assert_eq!(matchings(2).len(), 3);
        assert_eq!(matchings(3).len(), 15);
        assert_eq!(matchings(4).len(), 105);
    }

    #[test]
    fn tiny_censuses() {
        assert_eq!(enumerate_diagrams(0).count(), 1);
        // one matching of 2 points, 2 signs; role orders collapse under rotation
        assert_eq!(enumerate_diagrams(1).count(), 2);
    }

    /// Brute-force rotation dedup over all raw decorated diagrams.
    fn dedup_oracle(n: usize) -> BTreeSet<String> {
        let mut set = BTreeSet::new();
        for pairs in matchings(n) {
            for d in decorations(&pairs) {
                set.insert(d.canonical_code());
            }
        }
        set
    }

    #[test]
    fn enumeration_agrees_with_dedup_oracle() {
        for n in 0..=3 {
            let streamed: Vec<String> =
                enumerate_diagrams(n).map(|d| d.canonical_code()).collect();
            let set: BTreeSet<String> = streamed.iter().cloned().collect();
            assert_eq!(set.len(), streamed.len(), "duplicate classes at n = {n}");
            assert_eq!(set, dedup_oracle(n), "class set mismatch at n = {n}");
        }
    }

    #[test]
    fn enumeration_is_complete_for_random_diagrams() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let all: BTreeSet<String> = enumerate_diagrams(3).map(|d| d.canonical_code()).collect();
        for _ in 0..50 {
            let d = GaussDiagram::random(3, &mut rng);
            assert!(all.contains(&d.canonical_code()));
        }
    }

    #[test]
    fn census_n2_nonzero_classes() {
        let records = census(2, DEFAULT_CENSUS_CAP).unwrap();
        // raw object count before dedup: 3 matchings x 16 decorations
        let raw: usize = matchings(2).iter().map(|p| decorations(p).count()).sum();
        assert_eq!(raw, 48);

        let nonzero: Vec<&CensusRecord> =
            records.iter().filter(|r| !r.f.is_zero()).collect();
        assert_eq!(nonzero.len(), 2);
        let values: BTreeSet<String> = nonzero.iter().map(|r| r.f.render()).collect();
        let expect: BTreeSet<String> =
            ["t + t^-1 - 2".to_string(), "-t - t^-1 + 2".to_string()].into();
        assert_eq!(values, expect);

        // interleaved mixed-sign classes cancel, non-interleaved are isolated
        for rec in &records {
            if rec.f.is_zero() {
                let d = parse(&rec.canonical_code).unwrap();
                let t = invariants::transcendental(&d);
                assert!(t.f.is_zero());
            }
            assert!(rec.bound <= BigInt::from(2));
            assert_eq!(rec.f.evaluate_s_one(), rec.p);
        }
    }

    #[test]
    fn census_rejects_above_cap() {
        assert_eq!(
            census(7, 6),
            Err(CensusError::CapExceeded { requested: 7, cap: 6 })
        );
    }

    #[test]
    fn partition_independence() {
        let full: Vec<String> = enumerate_diagrams(3).map(|d| d.canonical_code()).collect();
        let ms = matchings(3);
        let (left, right) = ms.split_at(ms.len() / 2);
        let mut split: Vec<String> = Vec::new();
        for part in [left, right] {
            for pairs in part {
                for d in decorations(pairs) {
                    if d.code() == d.canonical_code() {
                        split.push(d.canonical_code());
                    }
                }
            }
        }
        assert_eq!(split, full);
    }

    #[test]
    fn summary_counts() {
        let mut summary = CensusSummary::new(2);
        for rec in census_stream(2) {
            summary.add(&rec);
        }
        assert_eq!(summary.nonzero_f, 2);
        assert_eq!(summary.classes as usize, census(2, 6).unwrap().len());
        let v = summary.to_json();
        assert_eq!(v["chords"], 2);
        assert_eq!(v["nonzero_f"], 2);
    }

    #[test]
    fn predicates_filter_records() {
        let nonzero = Predicate::parse("F != 0").unwrap();
        assert_eq!(find_examples(2, &nonzero).len(), 2);
        assert!(find_examples(1, &nonzero).is_empty());

        let zero = Predicate::parse("F=0").unwrap();
        let total = census(2, 6).unwrap().len();
        assert_eq!(find_examples(2, &zero).len(), total - 2);

        let both = Predicate::parse("W_t = 0 ∧ F ≠ 0").unwrap();
        let a = find_examples(3, &both);
        let b = find_examples(3, &both);
        assert_eq!(a, b);

        let bound = Predicate::parse("bound >= 2").unwrap();
        assert_eq!(find_examples(2, &bound).len(), 2);
    }

    #[test]
    fn predicate_parse_errors() {
        assert_eq!(Predicate::parse("  "), Err(PredicateError::Empty));
        assert!(matches!(
            Predicate::parse("F = 1"),
            Err(PredicateError::BadClause(_))
        ));
        assert!(matches!(
            Predicate::parse("blah = 0"),
            Err(PredicateError::UnknownField(_))
        ));
        assert!(matches!(
            Predicate::parse("writhe >= 2"),
            Err(PredicateError::BadClause(_))
        ));
        assert!(matches!(
            Predicate::parse("F"),
            Err(PredicateError::BadClause(_))
        ));
    }

    #[test]
    fn json_record_shape() {
        let rec = census(2, 6).unwrap().into_iter().next().unwrap();
        let v = rec.to_json();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, vec!["canonical_code", "writhe", "W_t", "P", "Z", "F", "bound"]);
        assert_eq!(rec.to_csv_row().split(',').count(), 3);
    }

    #[test]
    fn search_is_stable_at_four_chords() {
        let predicate = Predicate::parse("W_t=0 && Z=0 && F!=0").unwrap();
        let found = find_examples(4, &predicate);
        assert_eq!(found, find_examples(4, &predicate));
    }

    #[test]
    fn random_diagram_record_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..50 {
            let n = rng.gen_range(0..=5);
            let d = GaussDiagram::random(n, &mut rng);
            let rec = CensusRecord::from_diagram(&d);
            assert!(rec.bound <= BigInt::from(n as i64));
            assert_eq!(rec.f.evaluate_s_one(), rec.p);
        }
    }
}
