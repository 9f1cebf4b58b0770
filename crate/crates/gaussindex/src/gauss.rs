//! Gauss diagrams of virtual knots: a cyclic sequence of signed, directed
//! chord endpoints, the signed Gauss code grammar, and diagram-level
//! operators (mirror, reverse, switch, virtualize, connected sum, rotation,
//! canonical form).
//!
//! A chord records one real crossing; its arrow runs from the overcrossing
//! endpoint to the undercrossing endpoint and it carries the crossing sign.

use std::fmt;

use rand::Rng;
use serde_json::{json, Value};
use thiserror::Error;

/// Chord identifiers are dense, 1-based, and assigned by first occurrence.
pub type ChordId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn letter(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
        }
    }

    pub fn flipped(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// One endpoint on the circle: which chord it belongs to and whether the
/// strand passes over or under at the corresponding crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Endpoint {
    pub chord: ChordId,
    pub role: Role,
}

/// How a chord `d` crosses a chord `c`, relative to `c`'s arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Linkage {
    Unlinked,
    LeftToRight,
    RightToLeft,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("garbled token `{0}`")]
    GarbledToken(String),
    #[error("missing sign in token `{0}`")]
    MissingSign(String),
    #[error("duplicate {role} endpoint for chord in token `{token}`")]
    DuplicateRole { token: String, role: char },
    #[error("sign mismatch for chord in token `{0}`")]
    SignMismatch(String),
    #[error("chord `{0}` appears only once")]
    UnpairedChord(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("unknown chord id {0}")]
    UnknownChord(ChordId),
    #[error("cannot relate a chord to itself (chord {0})")]
    SelfRelate(ChordId),
    #[error("invalid gap index {index} (diagram has {gaps} gaps)")]
    InvalidGap { index: usize, gaps: usize },
    #[error("malformed diagram: {0}")]
    Malformed(&'static str),
}

/// Gauss diagram: `2n` endpoints in cyclic order plus one sign per chord.
/// The zero-chord diagram is the unknot and is legal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    endpoints: Vec<Endpoint>,
    signs: Vec<Sign>,
}

impl GaussDiagram {
    /// The unknot diagram.
    pub fn unknot() -> Self {
        GaussDiagram { endpoints: Vec::new(), signs: Vec::new() }
    }

    /// Builds a diagram from raw parts, checking that every chord id in
    /// `1..=signs.len()` occurs exactly once per role.
    pub fn from_parts(endpoints: Vec<Endpoint>, signs: Vec<Sign>) -> Result<Self, DiagramError> {
        let n = signs.len();
        let mut seen = vec![[false, false]; n];
        for ep in &endpoints {
            if ep.chord == 0 || ep.chord > n {
                return Err(DiagramError::UnknownChord(ep.chord));
            }
            let slot = &mut seen[ep.chord - 1][(ep.role == Role::Under) as usize];
            if *slot {
                return Err(DiagramError::Malformed("duplicate endpoint role"));
            }
            *slot = true;
        }
        if endpoints.len() != 2 * n || seen.iter().any(|s| !s[0] || !s[1]) {
            return Err(DiagramError::Malformed("every chord needs one over and one under endpoint"));
        }
        Ok(GaussDiagram { endpoints, signs })
    }

    pub(crate) fn from_parts_unchecked(endpoints: Vec<Endpoint>, signs: Vec<Sign>) -> Self {
        debug_assert!(Self::from_parts(endpoints.clone(), signs.clone()).is_ok());
        GaussDiagram { endpoints, signs }
    }

    pub fn n_chords(&self) -> usize {
        self.signs.len()
    }

    /// Number of endpoints, `2n`.
    pub fn len(&self) -> usize {
        self.endpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endpoints.is_empty()
    }

    pub fn endpoints(&self) -> &[Endpoint] {
        &self.endpoints
    }

    pub fn chord_ids(&self) -> impl Iterator<Item = ChordId> {
        1..=self.signs.len()
    }

    pub fn sign(&self, chord: ChordId) -> Result<Sign, DiagramError> {
        self.signs
            .get(chord.wrapping_sub(1))
            .copied()
            .ok_or(DiagramError::UnknownChord(chord))
    }

    /// Number of gaps between endpoints (one for the empty circle).
    pub fn n_gaps(&self) -> usize {
        self.endpoints.len().max(1)
    }

    /// Positions `(over, under)` of every chord, indexed by `id - 1`.
    pub(crate) fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(usize::MAX, usize::MAX); self.n_chords()];
        for (i, ep) in self.endpoints.iter().enumerate() {
            match ep.role {
                Role::Over => pos[ep.chord - 1].0 = i,
                Role::Under => pos[ep.chord - 1].1 = i,
            }
        }
        pos
    }

    /// Classifies how chord `d` crosses chord `c`. Traversing the circle
    /// in listed order, `A(c)` is the open arc from the over endpoint of
    /// `c` to its under endpoint; `d` is linked with `c` iff exactly one
    /// endpoint of `d` lies in `A(c)`, and it crosses left to right iff
    /// that endpoint is the under endpoint of `d`.
    pub fn relate(&self, c: ChordId, d: ChordId) -> Result<Linkage, DiagramError> {
        if c == d {
            return Err(DiagramError::SelfRelate(c));
        }
        self.sign(c)?;
        self.sign(d)?;
        let pos = self.positions();
        Ok(relate_at(&pos, self.len(), c, d))
    }

    /// Serialization from an arbitrary basepoint, chords renumbered by
    /// first occurrence. Tokens are concatenated, e.g. `O1+U2+O2+U1+`.
    pub fn serialize(&self, basepoint: usize) -> String {
        let m = self.endpoints.len();
        let mut rename = vec![0usize; self.n_chords()];
        let mut next = 1usize;
        let mut out = String::with_capacity(4 * m);
        for i in 0..m {
            let ep = &self.endpoints[(basepoint + i) % m];
            let slot = &mut rename[ep.chord - 1];
            if *slot == 0 {
                *slot = next;
                next += 1;
            }
            out.push(ep.role.letter());
            out.push_str(&slot.to_string());
            out.push(self.signs[ep.chord - 1].symbol());
        }
        out
    }

    /// Serialization from the listed basepoint.
    pub fn code(&self) -> String {
        self.serialize(0)
    }

    /// Lexicographically least serialization over all rotations; equal for
    /// rotated copies of the same diagram.
    pub fn canonical_code(&self) -> String {
        let m = self.endpoints.len();
        if m == 0 {
            return String::new();
        }
        (0..m).map(|b| self.serialize(b)).min().unwrap()
    }

    /// Cyclic shift of the endpoint sequence by `k`.
    pub fn rotate(&self, k: usize) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let m = self.endpoints.len();
        let k = k % m;
        let mut endpoints = Vec::with_capacity(m);
        endpoints.extend_from_slice(&self.endpoints[k..]);
        endpoints.extend_from_slice(&self.endpoints[..k]);
        GaussDiagram { endpoints, signs: self.signs.clone() }
    }

    /// Mirror image: every chord flips sign and swaps over/under roles.
    pub fn mirror(&self) -> Self {
        GaussDiagram {
            endpoints: self
                .endpoints
                .iter()
                .map(|ep| Endpoint { chord: ep.chord, role: ep.role.flipped() })
                .collect(),
            signs: self.signs.iter().map(|s| s.flipped()).collect(),
        }
    }

    /// Orientation reversal: the cyclic sequence is reversed, signs and
    /// roles kept.
    pub fn reverse(&self) -> Self {
        GaussDiagram {
            endpoints: self.endpoints.iter().rev().copied().collect(),
            signs: self.signs.clone(),
        }
    }

    /// Crossing switch at `c`: flips its sign and swaps its roles.
    pub fn switch(&self, c: ChordId) -> Result<Self, DiagramError> {
        self.sign(c)?;
        let mut out = self.clone();
        out.signs[c - 1] = out.signs[c - 1].flipped();
        for ep in out.endpoints.iter_mut() {
            if ep.chord == c {
                ep.role = ep.role.flipped();
            }
        }
        Ok(out)
    }

    /// Virtualization of `c`: flips its sign only.
    pub fn virtualize(&self, c: ChordId) -> Result<Self, DiagramError> {
        self.sign(c)?;
        let mut out = self.clone();
        out.signs[c - 1] = out.signs[c - 1].flipped();
        Ok(out)
    }

    /// Splices `other` (read from its gap `other_gap`) into this diagram's
    /// gap `gap`. No chord of one summand links any chord of the other.
    pub fn connected_sum(
        &self,
        gap: usize,
        other: &GaussDiagram,
        other_gap: usize,
    ) -> Result<Self, DiagramError> {
        if gap >= self.n_gaps() {
            return Err(DiagramError::InvalidGap { index: gap, gaps: self.n_gaps() });
        }
        if other_gap >= other.n_gaps() {
            return Err(DiagramError::InvalidGap { index: other_gap, gaps: other.n_gaps() });
        }
        let offset = self.n_chords();
        let m2 = other.endpoints.len();
        let mut endpoints = Vec::with_capacity(self.len() + m2);
        endpoints.extend_from_slice(&self.endpoints[..gap.min(self.len())]);
        for i in 0..m2 {
            let ep = other.endpoints[(other_gap + i) % m2];
            endpoints.push(Endpoint { chord: ep.chord + offset, role: ep.role });
        }
        endpoints.extend_from_slice(&self.endpoints[gap.min(self.len())..]);
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        Ok(GaussDiagram { endpoints, signs })
    }

    /// Uniformly random diagram with `n` chords: random perfect matching of
    /// `2n` points, random arrow direction and sign per chord. Chord ids
    /// come out in first-occurrence order, so `parse(d.code()) == d`.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut slots: Vec<usize> = (0..2 * n).collect();
        let mut endpoints = vec![Endpoint { chord: 0, role: Role::Over }; 2 * n];
        let mut signs = Vec::with_capacity(n);
        let mut next_id = 0usize;
        while !slots.is_empty() {
            next_id += 1;
            let a = slots.remove(0);
            let b = slots.remove(rng.gen_range(0..slots.len()));
            let (over, under) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            endpoints[over] = Endpoint { chord: next_id, role: Role::Over };
            endpoints[under] = Endpoint { chord: next_id, role: Role::Under };
            signs.push(if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus });
        }
        GaussDiagram { endpoints, signs }
    }

    /// JSON dump: `{endpoints: [[id, "O"|"U"], ...], signs: {"id": ±1}}`.
    pub fn to_json(&self) -> Value {
        let endpoints: Vec<Value> = self
            .endpoints
            .iter()
            .map(|ep| json!([ep.chord, ep.role.letter().to_string()]))
            .collect();
        let mut signs = serde_json::Map::new();
        for (i, s) in self.signs.iter().enumerate() {
            signs.insert((i + 1).to_string(), json!(s.value()));
        }
        json!({ "endpoints": endpoints, "signs": Value::Object(signs) })
    }
}

/// Linkage classification on precomputed positions; `m` is the number of
/// endpoints.
pub(crate) fn relate_at(pos: &[(usize, usize)], m: usize, c: ChordId, d: ChordId) -> Linkage {
    let (oc, uc) = pos[c - 1];
    let span = (uc + m - oc) % m;
    let inside = |p: usize| {
        let off = (p + m - oc) % m;
        0 < off && off < span
    };
    let (od, ud) = pos[d - 1];
    match (inside(od), inside(ud)) {
        (false, true) => Linkage::LeftToRight,
        (true, false) => Linkage::RightToLeft,
        _ => Linkage::Unlinked,
    }
}

/// Parses a signed Gauss code. Grammar: tokens `("O"|"U") digits ("+"|"-")`,
/// concatenated or whitespace-separated, strict uppercase; ids are arbitrary
/// positive integers and are renumbered by first occurrence. The empty code
/// is the unknot.
pub fn parse(code: &str) -> Result<GaussDiagram, ParseError> {
    struct Pending {
        token: String,
        sign: Sign,
        roles: [bool; 2], // seen [over, under]
        positions: Vec<(usize, Role)>,
    }

    let mut order: Vec<u64> = Vec::new();
    let mut pending: Vec<Pending> = Vec::new();
    let mut entries: Vec<(u64, Role)> = Vec::new();

    let bytes = code.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let role = match ch {
            'O' => Role::Over,
            'U' => Role::Under,
            _ => return Err(ParseError::GarbledToken(grab_token(code, start))),
        };
        i += 1;
        let digits_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == digits_start {
            return Err(ParseError::GarbledToken(grab_token(code, start)));
        }
        let id: u64 = code[digits_start..i]
            .parse()
            .map_err(|_| ParseError::GarbledToken(grab_token(code, start)))?;
        if id == 0 {
            return Err(ParseError::GarbledToken(grab_token(code, start)));
        }
        let sign = match bytes.get(i).map(|&b| b as char) {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            _ => return Err(ParseError::MissingSign(code[start..i].to_string())),
        };
        i += 1;
        let token = code[start..i].to_string();

        let idx = match order.iter().position(|&x| x == id) {
            Some(idx) => idx,
            None => {
                order.push(id);
                pending.push(Pending {
                    token: token.clone(),
                    sign,
                    roles: [false, false],
                    positions: Vec::new(),
                });
                order.len() - 1
            }
        };
        let p = &mut pending[idx];
        if p.sign != sign {
            return Err(ParseError::SignMismatch(token));
        }
        let slot = &mut p.roles[(role == Role::Under) as usize];
        if *slot {
            return Err(ParseError::DuplicateRole { token, role: role.letter() });
        }
        *slot = true;
        p.positions.push((entries.len(), role));
        entries.push((id, role));
    }

    for p in &pending {
        if !(p.roles[0] && p.roles[1]) {
            return Err(ParseError::UnpairedChord(p.token.clone()));
        }
    }

    let signs: Vec<Sign> = pending.iter().map(|p| p.sign).collect();
    let endpoints: Vec<Endpoint> = entries
        .iter()
        .map(|&(id, role)| Endpoint {
            chord: order.iter().position(|&x| x == id).unwrap() + 1,
            role,
        })
        .collect();
    Ok(GaussDiagram { endpoints, signs })
}

fn grab_token(code: &str, start: usize) -> String {
    code[start..]
        .chars()
        .take_while(|c| !c.is_whitespace())
        .take(12)
        .collect()
}
