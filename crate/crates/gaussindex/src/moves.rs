//! Reidemeister-move rewriting on Gauss diagrams: first and second moves as
//! insert/remove pairs, a pinned third-move pattern, and seeded random move
//! walks for invariance fuzzing.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gauss::{DiagramError, Endpoint, GaussDiagram, Role, Sign};

/// Which endpoint of an R1 chord comes first in listed order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum R1Order {
    OverFirst,
    UnderFirst,
}

/// Relative arrangement of an R2 pair: nested chords are unlinked, crossed
/// chords are linked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum R2Shape {
    Nested,
    Crossed,
}

/// Which insertion site of an R2 move receives the two over endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverSite {
    P,
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum R3Form {
    Before,
    After,
}

/// A third-move site: three chords `x, y, z` with signs `(-1, -1, +1)`
/// whose six endpoints form three contiguous pairs,
/// `[O(y) O(x)] [U(x) O(z)] [U(y) U(z)]` in the `Before` form and
/// `[O(x) O(y)] [O(z) U(x)] [U(z) U(y)]` in the `After` form. Applying the
/// move swaps the two endpoints inside each pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct R3Match {
    pub form: R3Form,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    /// Start position of each contiguous pair.
    pub pairs: [usize; 3],
}

/// One parametrized Reidemeister move instance.
#[derive(Clone, Debug, PartialEq)]
pub enum MoveStep {
    R1Insert { gap: usize, sign: Sign, order: R1Order },
    R1Remove { chord: usize },
    R2Insert { gap_p: usize, gap_q: usize, sign: Sign, over_site: OverSite, shape: R2Shape },
    R2Remove { c1: usize, c2: usize },
    R3(R3Match),
}

impl fmt::Display for MoveStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveStep::R1Insert { gap, sign, order } => {
                let order = match order {
                    R1Order::OverFirst => "over-first",
                    R1Order::UnderFirst => "under-first",
                };
                write!(f, "R1Insert gap={gap} sign={sign} order={order}")
            }
            MoveStep::R1Remove { chord } => write!(f, "R1Remove chord={chord}"),
            MoveStep::R2Insert { gap_p, gap_q, sign, over_site, shape } => {
                let site = match over_site {
                    OverSite::P => "P",
                    OverSite::Q => "Q",
                };
                let shape = match shape {
                    R2Shape::Nested => "nested",
                    R2Shape::Crossed => "crossed",
                };
                write!(
                    f,
                    "R2Insert gap_p={gap_p} gap_q={gap_q} sign={sign} over={site} shape={shape}"
                )
            }
            MoveStep::R2Remove { c1, c2 } => write!(f, "R2Remove c1={c1} c2={c2}"),
            MoveStep::R3(m) => {
                let form = match m.form {
                    R3Form::Before => "before",
                    R3Form::After => "after",
                };
                write!(
                    f,
                    "R3 form={form} x={} y={} z={} pairs={},{},{}",
                    m.x, m.y, m.z, m.pairs[0], m.pairs[1], m.pairs[2]
                )
            }
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum MoveError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("chord {0} endpoints are not adjacent")]
    NotAdjacent(usize),
    #[error("chords {0} and {1} do not form a removable pair")]
    PatternMismatch(usize, usize),
    #[error("stale match: the diagram no longer contains the pattern")]
    StaleMatch,
}

fn check_gap(d: &GaussDiagram, gap: usize) -> Result<(), MoveError> {
    if gap >= d.n_gaps() {
        return Err(DiagramError::InvalidGap { index: gap, gaps: d.n_gaps() }.into());
    }
    Ok(())
}

fn insert_blocks(
    d: &GaussDiagram,
    mut blocks: Vec<(usize, Vec<Endpoint>)>,
    extra_signs: &[Sign],
) -> GaussDiagram {
    // insert right-most first so earlier gap indices stay valid
    blocks.sort_by_key(|(gap, _)| *gap);
    let mut endpoints = d.endpoints().to_vec();
    for (gap, block) in blocks.into_iter().rev() {
        let at = gap.min(endpoints.len());
        endpoints.splice(at..at, block);
    }
    let mut signs: Vec<Sign> = d.chord_ids().map(|c| d.sign(c).unwrap()).collect();
    signs.extend_from_slice(extra_signs);
    GaussDiagram::from_parts_unchecked(endpoints, signs)
}

fn remove_chords(d: &GaussDiagram, removed: &[usize]) -> GaussDiagram {
    let renumber: Vec<usize> = {
        let mut map = vec![0usize; d.n_chords() + 1];
        let mut next = 1;
        for c in d.chord_ids() {
            if !removed.contains(&c) {
                map[c] = next;
                next += 1;
            }
        }
        map
    };
    let endpoints: Vec<Endpoint> = d
        .endpoints()
        .iter()
        .filter(|ep| !removed.contains(&ep.chord))
        .map(|ep| Endpoint { chord: renumber[ep.chord], role: ep.role })
        .collect();
    let signs: Vec<Sign> = d
        .chord_ids()
        .filter(|c| !removed.contains(c))
        .map(|c| d.sign(c).unwrap())
        .collect();
    GaussDiagram::from_parts_unchecked(endpoints, signs)
}

/// First move, insertion: places both endpoints of a new chord adjacently
/// in the chosen gap.
pub fn r1_insert(
    d: &GaussDiagram,
    gap: usize,
    sign: Sign,
    order: R1Order,
) -> Result<GaussDiagram, MoveError> {
    check_gap(d, gap)?;
    let c = d.n_chords() + 1;
    let block = match order {
        R1Order::OverFirst => vec![
            Endpoint { chord: c, role: Role::Over },
            Endpoint { chord: c, role: Role::Under },
        ],
        R1Order::UnderFirst => vec![
            Endpoint { chord: c, role: Role::Under },
            Endpoint { chord: c, role: Role::Over },
        ],
    };
    Ok(insert_blocks(d, vec![(gap, block)], &[sign]))
}

/// First move, removal: deletes a chord whose endpoints are adjacent on the
/// circle. Remaining chords are renumbered densely.
pub fn r1_remove(d: &GaussDiagram, chord: usize) -> Result<GaussDiagram, MoveError> {
    d.sign(chord)?;
    let pos = d.positions();
    let (o, u) = pos[chord - 1];
    let m = d.len();
    if (o + 1) % m != u && (u + 1) % m != o {
        return Err(MoveError::NotAdjacent(chord));
    }
    Ok(remove_chords(d, &[chord]))
}

/// Second move, insertion: adds a cancelling pair of chords with signs
/// `(sign, -sign)`, both over endpoints adjacent at one site and both under
/// endpoints adjacent at the other. The two gaps may coincide; the first
/// site's block then precedes the second's.
pub fn r2_insert(
    d: &GaussDiagram,
    gap_p: usize,
    gap_q: usize,
    sign: Sign,
    over_site: OverSite,
    shape: R2Shape,
) -> Result<GaussDiagram, MoveError> {
    check_gap(d, gap_p)?;
    check_gap(d, gap_q)?;
    let c1 = d.n_chords() + 1;
    let c2 = d.n_chords() + 2;
    let (p_role, q_role) = match over_site {
        OverSite::P => (Role::Over, Role::Under),
        OverSite::Q => (Role::Under, Role::Over),
    };
    let p_block = vec![
        Endpoint { chord: c1, role: p_role },
        Endpoint { chord: c2, role: p_role },
    ];
    let q_block = match shape {
        R2Shape::Nested => vec![
            Endpoint { chord: c2, role: q_role },
            Endpoint { chord: c1, role: q_role },
        ],
        R2Shape::Crossed => vec![
            Endpoint { chord: c1, role: q_role },
            Endpoint { chord: c2, role: q_role },
        ],
    };
    let blocks = if gap_p == gap_q {
        // single splice keeps the P block first
        let mut block = p_block;
        block.extend(q_block);
        vec![(gap_p, block)]
    } else {
        vec![(gap_p, p_block), (gap_q, q_block)]
    };
    Ok(insert_blocks(d, blocks, &[sign, sign.flipped()]))
}

/// Second move, removal: deletes two opposite-sign chords whose over
/// endpoints are adjacent and whose under endpoints are adjacent.
pub fn r2_remove(d: &GaussDiagram, c1: usize, c2: usize) -> Result<GaussDiagram, MoveError> {
    d.sign(c1)?;
    d.sign(c2)?;
    if c1 == c2 {
        return Err(MoveError::PatternMismatch(c1, c2));
    }
    if d.sign(c1).unwrap() != d.sign(c2).unwrap().flipped() {
        return Err(MoveError::PatternMismatch(c1, c2));
    }
    let pos = d.positions();
    let m = d.len();
    let adjacent = |a: usize, b: usize| (a + 1) % m == b || (b + 1) % m == a;
    let (o1, u1) = pos[c1 - 1];
    let (o2, u2) = pos[c2 - 1];
    if !adjacent(o1, o2) || !adjacent(u1, u2) {
        return Err(MoveError::PatternMismatch(c1, c2));
    }
    Ok(remove_chords(d, &[c1, c2]))
}

fn expected_pairs(m: &R3Match) -> [[Endpoint; 2]; 3] {
    let over = |chord| Endpoint { chord, role: Role::Over };
    let under = |chord| Endpoint { chord, role: Role::Under };
    match m.form {
        R3Form::Before => [
            [over(m.y), over(m.x)],
            [under(m.x), over(m.z)],
            [under(m.y), under(m.z)],
        ],
        R3Form::After => [
            [over(m.x), over(m.y)],
            [over(m.z), under(m.x)],
            [under(m.z), under(m.y)],
        ],
    }
}

fn match_is_valid(d: &GaussDiagram, m: &R3Match) -> bool {
    let len = d.len();
    if len < 6 {
        return false;
    }
    let signs_ok = [m.x, m.y, m.z].iter().all(|&c| d.sign(c).is_ok())
        && d.sign(m.x).unwrap() == Sign::Minus
        && d.sign(m.y).unwrap() == Sign::Minus
        && d.sign(m.z).unwrap() == Sign::Plus;
    if !signs_ok || m.x == m.y || m.x == m.z || m.y == m.z {
        return false;
    }
    let expected = expected_pairs(m);
    m.pairs.iter().zip(expected.iter()).all(|(&start, pair)| {
        start < len
            && d.endpoints()[start] == pair[0]
            && d.endpoints()[(start + 1) % len] == pair[1]
    })
}

/// All third-move sites present in the diagram, in both forms.
pub fn r3_matches(d: &GaussDiagram) -> Vec<R3Match> {
    let m = d.len();
    let mut out = Vec::new();
    if m < 6 {
        return out;
    }
    let pos = d.positions();
    let eps = d.endpoints();
    let sign = |c: usize| d.sign(c).unwrap();
    for i in 0..m {
        let a = eps[i];
        let b = eps[(i + 1) % m];
        if a.role != Role::Over || b.role != Role::Over || a.chord == b.chord {
            continue;
        }
        if sign(a.chord) != Sign::Minus || sign(b.chord) != Sign::Minus {
            continue;
        }
        // Before form: a = O(y), b = O(x)
        {
            let (y, x) = (a.chord, b.chord);
            let ux = pos[x - 1].1;
            let after_ux = eps[(ux + 1) % m];
            if after_ux.role == Role::Over
                && after_ux.chord != x
                && after_ux.chord != y
                && sign(after_ux.chord) == Sign::Plus
            {
                let z = after_ux.chord;
                let uy = pos[y - 1].1;
                if eps[(uy + 1) % m] == (Endpoint { chord: z, role: Role::Under }) {
                    let candidate =
                        R3Match { form: R3Form::Before, x, y, z, pairs: [i, ux, uy] };
                    if match_is_valid(d, &candidate) {
                        out.push(candidate);
                    }
                }
            }
        }
        // After form: a = O(x), b = O(y)
        {
            let (x, y) = (a.chord, b.chord);
            let ux = pos[x - 1].1;
            let before_ux = eps[(ux + m - 1) % m];
            if before_ux.role == Role::Over
                && before_ux.chord != x
                && before_ux.chord != y
                && sign(before_ux.chord) == Sign::Plus
            {
                let z = before_ux.chord;
                let uz = pos[z - 1].1;
                if eps[(uz + 1) % m] == (Endpoint { chord: y, role: Role::Under }) {
                    let candidate = R3Match {
                        form: R3Form::After,
                        x,
                        y,
                        z,
                        pairs: [i, (ux + m - 1) % m, uz],
                    };
                    if match_is_valid(d, &candidate) {
                        out.push(candidate);
                    }
                }
            }
        }
    }
    out
}

/// Applies a third move by swapping the two endpoints inside each of the
/// three pairs; an involution on match sites.
pub fn r3_apply(d: &GaussDiagram, m: &R3Match) -> Result<GaussDiagram, MoveError> {
    if !match_is_valid(d, m) {
        return Err(MoveError::StaleMatch);
    }
    let len = d.len();
    let mut endpoints = d.endpoints().to_vec();
    for &start in &m.pairs {
        endpoints.swap(start, (start + 1) % len);
    }
    let signs = d.chord_ids().map(|c| d.sign(c).unwrap()).collect();
    Ok(GaussDiagram::from_parts_unchecked(endpoints, signs))
}

/// Applies any move step.
pub fn apply(d: &GaussDiagram, step: &MoveStep) -> Result<GaussDiagram, MoveError> {
    match step {
        MoveStep::R1Insert { gap, sign, order } => r1_insert(d, *gap, *sign, *order),
        MoveStep::R1Remove { chord } => r1_remove(d, *chord),
        MoveStep::R2Insert { gap_p, gap_q, sign, over_site, shape } => {
            r2_insert(d, *gap_p, *gap_q, *sign, *over_site, *shape)
        }
        MoveStep::R2Remove { c1, c2 } => r2_remove(d, *c1, *c2),
        MoveStep::R3(m) => r3_apply(d, m),
    }
}

fn r1_removals(d: &GaussDiagram) -> Vec<usize> {
    let pos = d.positions();
    let m = d.len();
    d.chord_ids()
        .filter(|&c| {
            let (o, u) = pos[c - 1];
            (o + 1) % m == u || (u + 1) % m == o
        })
        .collect()
}

fn r2_removals(d: &GaussDiagram) -> Vec<(usize, usize)> {
    let pos = d.positions();
    let m = d.len();
    let adjacent = |a: usize, b: usize| (a + 1) % m == b || (b + 1) % m == a;
    let mut out = Vec::new();
    for c1 in d.chord_ids() {
        for c2 in (c1 + 1)..=d.n_chords() {
            if d.sign(c1).unwrap() != d.sign(c2).unwrap().flipped() {
                continue;
            }
            if adjacent(pos[c1 - 1].0, pos[c2 - 1].0) && adjacent(pos[c1 - 1].1, pos[c2 - 1].1) {
                out.push((c1, c2));
            }
        }
    }
    out
}

/// Draws one applicable move uniformly. Insertions are suppressed once the
/// diagram has `size_cap` or more chords; `None` means no move applies.
pub fn sample_move<R: Rng>(d: &GaussDiagram, size_cap: usize, rng: &mut R) -> Option<MoveStep> {
    let g = d.n_gaps();
    let inserts = d.n_chords() < size_cap;
    let r1r = r1_removals(d);
    let r2r = r2_removals(d);
    let r3 = r3_matches(d);
    let c_r1i = if inserts { g * 4 } else { 0 };
    let c_r2i = if inserts { g * g * 4 } else { 0 };
    let total = c_r1i + c_r2i + r1r.len() + r2r.len() + r3.len();
    if total == 0 {
        return None;
    }
    let mut idx = rng.gen_range(0..total);
    if idx < c_r1i {
        let sign = if idx % 2 == 0 { Sign::Plus } else { Sign::Minus };
        let order = if (idx / 2) % 2 == 0 { R1Order::OverFirst } else { R1Order::UnderFirst };
        return Some(MoveStep::R1Insert { gap: idx / 4, sign, order });
    }
    idx -= c_r1i;
    if idx < c_r2i {
        let shape = if idx % 2 == 0 { R2Shape::Nested } else { R2Shape::Crossed };
        let sign = if (idx / 2) % 2 == 0 { Sign::Plus } else { Sign::Minus };
        let rest = idx / 4;
        return Some(MoveStep::R2Insert {
            gap_p: rest / g,
            gap_q: rest % g,
            sign,
            over_site: OverSite::P,
            shape,
        });
    }
    idx -= c_r2i;
    if idx < r1r.len() {
        return Some(MoveStep::R1Remove { chord: r1r[idx] });
    }
    idx -= r1r.len();
    if idx < r2r.len() {
        let (c1, c2) = r2r[idx];
        return Some(MoveStep::R2Remove { c1, c2 });
    }
    idx -= r2r.len();
    Some(MoveStep::R3(r3[idx].clone()))
}

/// Seeded random walk of applicable moves; steps with no applicable move
/// are skipped. Returns a diagram of the same virtual knot.
pub fn random_walk(d: &GaussDiagram, steps: usize, seed: u64, size_cap: usize) -> GaussDiagram {
    random_walk_traced(d, steps, seed, size_cap).0
}

/// Random walk that also records the applied steps, one per line when
/// displayed, for reproducing failures.
pub fn random_walk_traced(
    d: &GaussDiagram,
    steps: usize,
    seed: u64,
    size_cap: usize,
) -> (GaussDiagram, Vec<MoveStep>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut trace = Vec::new();
    for _ in 0..steps {
        if let Some(step) = sample_move(&cur, size_cap, &mut rng) {
            cur = apply(&cur, &step).expect("sampled move applies");
            trace.push(step);
        }
    }
    (cur, trace)
}

/// One fuzzing failure: the walk that broke an invariant, minimized to the
/// first offending step.
#[derive(Clone, Debug)]
pub struct FuzzFailure {
    pub start_code: String,
    pub trace: Vec<MoveStep>,
    pub first_bad_step: usize,
    pub before_code: String,
    pub after_code: String,
    pub broken: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct FuzzReport {
    pub passes: usize,
    pub failures: Vec<FuzzFailure>,
}

/// Runs `count` seeded random walks and applies `check` to each start/end
/// pair; `check` returns the names of whatever it found changed. Start
/// diagrams have up to `start_max` chords; walks insert up to `size_cap`.
/// Failures are minimized by replaying the walk to its first bad step.
pub fn fuzz_invariance<F>(
    count: usize,
    steps: usize,
    start_max: usize,
    size_cap: usize,
    seed: u64,
    check: F,
) -> FuzzReport
where
    F: Fn(&GaussDiagram, &GaussDiagram) -> Vec<String>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = FuzzReport::default();
    for _ in 0..count {
        let n = rng.gen_range(0..=start_max);
        let start = GaussDiagram::random(n, &mut rng);
        let walk_seed = rng.gen::<u64>();
        let (end, trace) = random_walk_traced(&start, steps, walk_seed, size_cap);
        if check(&start, &end).is_empty() {
            report.passes += 1;
            continue;
        }
        let mut prev = start.clone();
        let mut cur = start.clone();
        let mut first_bad_step = trace.len();
        let mut broken = Vec::new();
        for (k, step) in trace.iter().enumerate() {
            prev = cur.clone();
            cur = apply(&cur, step).expect("trace replays");
            broken = check(&start, &cur);
            if !broken.is_empty() {
                first_bad_step = k;
                break;
            }
        }
        report.failures.push(FuzzFailure {
            start_code: start.code(),
            trace,
            first_bad_step,
            before_code: prev.code(),
            after_code: cur.code(),
            broken,
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::parse;
    use crate::invariants::{chord_index, index_function, invariant_differences, transcendental};
    use num_bigint::BigInt;
    use rand_chacha::ChaCha8Rng;

    const VIRTUAL_TREFOIL: &str = "O1+O2+U1+U2+";

    #[test]
    fn r1_insert_into_unknot() {
        let unknot = GaussDiagram::unknot();
        let d = r1_insert(&unknot, 0, Sign::Plus, R1Order::OverFirst).unwrap();
        assert_eq!(d.code(), "O1+U1+");
        assert!(transcendental(&d).f.is_zero());
        assert_eq!(r1_remove(&d, 1).unwrap(), unknot);
    }

    #[test]
    fn r1_preserves_f_anywhere() {
        let vt = parse(VIRTUAL_TREFOIL).unwrap();
        let f = transcendental(&vt).f;
        for gap in 0..vt.n_gaps() {
            for sign in [Sign::Plus, Sign::Minus] {
                for order in [R1Order::OverFirst, R1Order::UnderFirst] {
                    let d = r1_insert(&vt, gap, sign, order).unwrap();
                    assert_eq!(transcendental(&d).f, f);
                }
            }
        }
    }

    #[test]
    fn r1_remove_rejects_linked_chords() {
        let vt = parse(VIRTUAL_TREFOIL).unwrap();
        assert_eq!(r1_remove(&vt, 1), Err(MoveError::NotAdjacent(1)));
    }

    #[test]
    fn r2_insert_into_unknot_cancels() {
        for shape in [R2Shape::Nested, R2Shape::Crossed] {
            let d = r2_insert(&GaussDiagram::unknot(), 0, 0, Sign::Plus, OverSite::P, shape)
                .unwrap();
            assert_eq!(d.n_chords(), 2);
            assert!(transcendental(&d).f.is_zero());
        }
    }

    #[test]
    fn r2_inserted_pair_has_matching_index_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..80 {
            let d = GaussDiagram::random(rng.gen_range(0..=5), &mut rng);
            let gap_p = rng.gen_range(0..d.n_gaps());
            let gap_q = rng.gen_range(0..d.n_gaps());
            let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            let over = if rng.gen_bool(0.5) { OverSite::P } else { OverSite::Q };
            let shape = if rng.gen_bool(0.5) { R2Shape::Nested } else { R2Shape::Crossed };
            let out = r2_insert(&d, gap_p, gap_q, sign, over, shape).unwrap();
            let (c1, c2) = (d.n_chords() + 1, d.n_chords() + 2);
            assert_eq!(out.sign(c1).unwrap(), out.sign(c2).unwrap().flipped());
            assert_eq!(
                chord_index(&out, c1).unwrap(),
                chord_index(&out, c2).unwrap()
            );
            assert_eq!(
                index_function(&out, c1).unwrap().1,
                index_function(&out, c2).unwrap().1
            );
            assert_eq!(transcendental(&out).f, transcendental(&d).f);
        }
    }

    #[test]
    fn r2_crossed_insert_preserves_virtual_trefoil() {
        let vt = parse(VIRTUAL_TREFOIL).unwrap();
        let d = r2_insert(&vt, 1, 3, Sign::Minus, OverSite::Q, R2Shape::Crossed).unwrap();
        assert_eq!(d.n_chords(), 4);
        assert_eq!(transcendental(&d).f.render(), "t + t^-1 - 2");
    }

    #[test]
    fn r2_remove_is_inverse_of_insert() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..40 {
            let d = GaussDiagram::random(rng.gen_range(0..=4), &mut rng);
            let gap_p = rng.gen_range(0..d.n_gaps());
            let gap_q = rng.gen_range(0..d.n_gaps());
            let out =
                r2_insert(&d, gap_p, gap_q, Sign::Minus, OverSite::P, R2Shape::Nested).unwrap();
            let (c1, c2) = (d.n_chords() + 1, d.n_chords() + 2);
            let back = r2_remove(&out, c1, c2).unwrap();
            assert_eq!(back, d);
        }
    }

    #[test]
    fn r2_remove_rejects_non_pairs() {
        let vt = parse(VIRTUAL_TREFOIL).unwrap();
        // equal signs
        assert_eq!(r2_remove(&vt, 1, 2), Err(MoveError::PatternMismatch(1, 2)));
        // not adjacent
        let d = parse("O1+U2-O2-U1+").unwrap();
        assert_eq!(r2_remove(&d, 1, 2), Err(MoveError::PatternMismatch(1, 2)));
    }

    /// Splices the three R3 pairs into a host diagram, in pair order
    /// 1,2,3 or 1,3,2 around the circle.
    fn inject_before_pattern<R: rand::Rng>(host: &GaussDiagram, rng: &mut R) -> GaussDiagram {
        let n = host.n_chords();
        let (x, y, z) = (n + 1, n + 2, n + 3);
        let over = |chord| Endpoint { chord, role: Role::Over };
        let under = |chord| Endpoint { chord, role: Role::Under };
        let p1 = vec![over(y), over(x)];
        let p2 = vec![under(x), over(z)];
        let p3 = vec![under(y), under(z)];
        let mut gaps = [
            rng.gen_range(0..host.n_gaps()),
            rng.gen_range(0..host.n_gaps()),
            rng.gen_range(0..host.n_gaps()),
        ];
        gaps.sort_unstable();
        let blocks = if rng.gen_bool(0.5) {
            vec![(gaps[0], p1), (gaps[1], p2), (gaps[2], p3)]
        } else {
            vec![(gaps[0], p1), (gaps[1], p3), (gaps[2], p2)]
        };
        // same-gap blocks keep their listed order when spliced
        let mut endpoints = host.endpoints().to_vec();
        for (gap, block) in blocks.into_iter().rev() {
            let at = gap.min(endpoints.len());
            endpoints.splice(at..at, block);
        }
        let mut signs: Vec<Sign> = host.chord_ids().map(|c| host.sign(c).unwrap()).collect();
        signs.extend_from_slice(&[Sign::Minus, Sign::Minus, Sign::Plus]);
        GaussDiagram::from_parts(endpoints, signs).unwrap()
    }

    #[test]
    fn r3_matches_satisfy_index_relation_and_preserve_f() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut applied = 0;
        for _ in 0..60 {
            let host = GaussDiagram::random(rng.gen_range(0..=4), &mut rng);
            let d = inject_before_pattern(&host, &mut rng);
            let matches = r3_matches(&d);
            assert!(!matches.is_empty(), "pattern not found in {}", d.code());
            let f = transcendental(&d).f;
            for m in &matches {
                // Ind(x) - Ind(y) + Ind(z) = 0
                let ix = chord_index(&d, m.x).unwrap();
                let iy = chord_index(&d, m.y).unwrap();
                let iz = chord_index(&d, m.z).unwrap();
                assert_eq!(&ix - &iy + &iz, BigInt::from(0));

                let moved = r3_apply(&d, m).unwrap();
                assert_eq!(transcendental(&moved).f, f, "F changed for {}", d.code());
                // chords outside the move keep index and index function
                for c in d.chord_ids() {
                    if c == m.x || c == m.y || c == m.z {
                        continue;
                    }
                    assert_eq!(chord_index(&d, c).unwrap(), chord_index(&moved, c).unwrap());
                    assert_eq!(
                        index_function(&d, c).unwrap().1,
                        index_function(&moved, c).unwrap().1
                    );
                }
                applied += 1;
            }
        }
        assert!(applied > 0);
    }

    #[test]
    fn r3_apply_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let host = GaussDiagram::random(3, &mut rng);
        let d = inject_before_pattern(&host, &mut rng);
        let m = r3_matches(&d).into_iter().next().unwrap();
        let once = r3_apply(&d, &m).unwrap();
        let inverse = r3_matches(&once)
            .into_iter()
            .find(|c| c.pairs == m.pairs && (c.x, c.y, c.z) == (m.x, m.y, m.z))
            .expect("inverse match present");
        assert_eq!(r3_apply(&once, &inverse).unwrap(), d);
    }

    #[test]
    fn r3_apply_rejects_stale_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let d = inject_before_pattern(&GaussDiagram::unknot(), &mut rng);
        let m = r3_matches(&d).into_iter().next().unwrap();
        let changed = r1_insert(&d, 0, Sign::Plus, R1Order::OverFirst).unwrap();
        assert_eq!(r3_apply(&changed, &m), Err(MoveError::StaleMatch));
    }

    #[test]
    fn walk_is_deterministic_and_preserves_f() {
        let vt = parse(VIRTUAL_TREFOIL).unwrap();
        let a = random_walk(&vt, 50, 1, 40);
        let b = random_walk(&vt, 50, 1, 40);
        assert_eq!(a, b);
        assert_eq!(transcendental(&a).f.render(), "t + t^-1 - 2");

        assert_eq!(random_walk(&vt, 0, 9, 40), vt);

        let unknot = GaussDiagram::unknot();
        for seed in 0..5 {
            let d = random_walk(&unknot, 100, seed, 20);
            assert!(transcendental(&d).f.is_zero());
        }
    }

    #[test]
    fn walk_respects_size_cap() {
        let vt = parse(VIRTUAL_TREFOIL).unwrap();
        let (d, trace) = random_walk_traced(&vt, 200, 5, 10);
        // insertions add at most 2 chords past the threshold
        assert!(d.n_chords() <= 11, "grew to {} chords", d.n_chords());
        assert!(!trace.is_empty());
    }

    #[test]
    fn non_participating_chords_keep_index_data_under_inserts() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let d = GaussDiagram::random(rng.gen_range(1..=5), &mut rng);
            let step = sample_move(&d, 30, &mut rng).unwrap();
            let out = apply(&d, &step).unwrap();
            let survivors: Vec<(usize, usize)> = match &step {
                MoveStep::R1Insert { .. } | MoveStep::R2Insert { .. } | MoveStep::R3(_) => {
                    d.chord_ids().map(|c| (c, c)).collect()
                }
                MoveStep::R1Remove { chord } => d
                    .chord_ids()
                    .filter(|c| c != chord)
                    .map(|c| (c, if c > *chord { c - 1 } else { c }))
                    .collect(),
                MoveStep::R2Remove { c1, c2 } => d
                    .chord_ids()
                    .filter(|c| c != c1 && c != c2)
                    .map(|c| {
                        let shift = [*c1, *c2].iter().filter(|&&r| r < c).count();
                        (c, c - shift)
                    })
                    .collect(),
            };
            let moved = match &step {
                MoveStep::R3(m) => vec![m.x, m.y, m.z],
                _ => vec![],
            };
            for (before, after) in survivors {
                if moved.contains(&before) {
                    continue;
                }
                assert_eq!(
                    chord_index(&d, before).unwrap(),
                    chord_index(&out, after).unwrap(),
                    "step {step} on {}",
                    d.code()
                );
                assert_eq!(
                    index_function(&d, before).unwrap().1,
                    index_function(&out, after).unwrap().1
                );
            }
        }
    }

    #[test]
    fn fuzz_harness_passes_with_real_invariants() {
        let report = fuzz_invariance(20, 15, 6, 20, 1, invariant_differences);
        assert_eq!(report.passes, 20);
        assert!(report.failures.is_empty());
    }

    #[test]
    fn fuzz_harness_self_test_catches_a_broken_checker() {
        // the writhe is not move-invariant, so checking it must fail and
        // produce a minimized single-step trace
        let report = fuzz_invariance(30, 10, 4, 20, 3, |a, b| {
            if crate::invariants::writhe(a) == crate::invariants::writhe(b) {
                vec![]
            } else {
                vec!["writhe".to_string()]
            }
        });
        assert!(!report.failures.is_empty());
        let failure = &report.failures[0];
        assert!(failure.first_bad_step < failure.trace.len());
        assert_eq!(failure.broken, vec!["writhe".to_string()]);
        // the dump replays: start code plus trace reaches the bad diagram
        let mut d = parse(&failure.start_code).unwrap();
        for step in &failure.trace[..=failure.first_bad_step] {
            d = apply(&d, step).unwrap();
        }
        assert_eq!(d.code(), failure.after_code);
    }

    #[test]
    fn move_steps_render_one_line() {
        let step = MoveStep::R2Insert {
            gap_p: 1,
            gap_q: 3,
            sign: Sign::Minus,
            over_site: OverSite::Q,
            shape: R2Shape::Crossed,
        };
        assert_eq!(
            step.to_string(),
            "R2Insert gap_p=1 gap_q=3 sign=- over=Q shape=crossed"
        );
    }
}
