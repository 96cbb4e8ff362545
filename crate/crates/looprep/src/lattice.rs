//! Delannoy paths, Delannoy loops on the torus, their 3-D analogue, and
//! the counting formulas tying them together.
//!
//! A loop is stored in canonical form: among all rotations of its step
//! word, each paired with the correspondingly advanced start vertex, we
//! keep the lexicographically least (start, word) pair. Equality of loops
//! is equality of canonical forms.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

use crate::series::BiSeries;
use crate::Error;

/// Default truncation order for generating-function extraction; covers
/// the 9×9 table with margin.
pub const DEFAULT_SERIES_DEGREE: usize = 16;

// ---------------------------------------------------------------------------
// Steps
// ---------------------------------------------------------------------------

/// Planar step: R = (1,0), U = (0,1), D = (1,1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step2 {
    R,
    U,
    D,
}

impl Step2 {
    pub fn dx(self) -> u32 {
        matches!(self, Step2::R | Step2::D) as u32
    }

    pub fn dy(self) -> u32 {
        matches!(self, Step2::U | Step2::D) as u32
    }

    pub fn to_char(self) -> char {
        match self {
            Step2::R => 'R',
            Step2::U => 'U',
            Step2::D => 'D',
        }
    }

    pub fn from_char(c: char) -> Result<Self, Error> {
        match c {
            'R' => Ok(Step2::R),
            'U' => Ok(Step2::U),
            'D' => Ok(Step2::D),
            other => Err(Error::Parse(format!("invalid step letter {other:?}"))),
        }
    }
}

fn steps_to_string(steps: &[Step2]) -> String {
    steps.iter().map(|s| s.to_char()).collect()
}

fn steps_from_string(s: &str) -> Result<Vec<Step2>, Error> {
    s.chars().map(Step2::from_char).collect()
}

/// Spatial step: any nonzero 0/1-increment triple, named by the set of
/// coordinates it increments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step3 {
    X,
    Y,
    Z,
    XY,
    XZ,
    YZ,
    XYZ,
}

impl Step3 {
    pub const ALL: [Step3; 7] = [
        Step3::X,
        Step3::Y,
        Step3::Z,
        Step3::XY,
        Step3::XZ,
        Step3::YZ,
        Step3::XYZ,
    ];

    pub fn dx(self) -> u32 {
        matches!(self, Step3::X | Step3::XY | Step3::XZ | Step3::XYZ) as u32
    }

    pub fn dy(self) -> u32 {
        matches!(self, Step3::Y | Step3::XY | Step3::YZ | Step3::XYZ) as u32
    }

    pub fn dz(self) -> u32 {
        matches!(self, Step3::Z | Step3::XZ | Step3::YZ | Step3::XYZ) as u32
    }

    pub fn name(self) -> &'static str {
        match self {
            Step3::X => "X",
            Step3::Y => "Y",
            Step3::Z => "Z",
            Step3::XY => "XY",
            Step3::XZ => "XZ",
            Step3::YZ => "YZ",
            Step3::XYZ => "XYZ",
        }
    }

    pub fn from_name(s: &str) -> Result<Self, Error> {
        Step3::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::Parse(format!("invalid 3-D step {s:?}")))
    }
}

// ---------------------------------------------------------------------------
// Delannoy paths
// ---------------------------------------------------------------------------

/// A lattice path from (0,0) to (n,m) with steps R, U, D.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DelannoyPath {
    steps: Vec<Step2>,
}

impl DelannoyPath {
    pub fn steps(&self) -> &[Step2] {
        &self.steps
    }

    pub fn endpoint(&self) -> (u32, u32) {
        self.steps
            .iter()
            .fold((0, 0), |(x, y), s| (x + s.dx(), y + s.dy()))
    }
}

impl fmt::Display for DelannoyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", steps_to_string(&self.steps))
    }
}

/// All (n,m)-Delannoy paths in lexicographic step order.
pub fn enumerate_paths(n: u32, m: u32) -> Vec<DelannoyPath> {
    let mut out = Vec::new();
    let mut word = Vec::new();
    fn go(rx: u32, ry: u32, word: &mut Vec<Step2>, out: &mut Vec<DelannoyPath>) {
        if rx == 0 && ry == 0 {
            out.push(DelannoyPath { steps: word.clone() });
            return;
        }
        if rx > 0 {
            word.push(Step2::R);
            go(rx - 1, ry, word, out);
            word.pop();
        }
        if ry > 0 {
            word.push(Step2::U);
            go(rx, ry - 1, word, out);
            word.pop();
        }
        if rx > 0 && ry > 0 {
            word.push(Step2::D);
            go(rx - 1, ry - 1, word, out);
            word.pop();
        }
    }
    go(n, m, &mut word, &mut out);
    out
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// D(n,m) = Σ_k binom(n,k)·binom(m,k)·2^k.
pub fn count_paths_formula(n: u32, m: u32) -> u128 {
    (0..=n.min(m) as u64)
        .map(|k| binomial(n as u64, k) * binomial(m as u64, k) * (1u128 << k))
        .sum()
}

/// D table computed by the recurrence D(n,m) = D(n,m−1) + D(n−1,m) + D(n−1,m−1).
pub fn delannoy_table(max: u32) -> Vec<Vec<u128>> {
    let s = max as usize + 1;
    let mut t = vec![vec![0u128; s]; s];
    for m in 0..s {
        for n in 0..s {
            t[m][n] = if n == 0 || m == 0 {
                1
            } else {
                t[m - 1][n] + t[m][n - 1] + t[m - 1][n - 1]
            };
        }
    }
    t
}

// ---------------------------------------------------------------------------
// Torus loops
// ---------------------------------------------------------------------------

/// An (n,m)-Delannoy loop: an unbased loop on the ℤ/n × ℤ/m grid that
/// winds exactly once in each direction. Construction canonicalizes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusLoop {
    n: u32,
    m: u32,
    start: (u32, u32),
    steps: Vec<Step2>,
}

impl TorusLoop {
    pub fn new(n: u32, m: u32, start: (u32, u32), steps: Vec<Step2>) -> Result<Self, Error> {
        if n == 0 || m == 0 {
            return Err(Error::Domain(
                "torus loops need n, m >= 1 (the degenerate boundary rows exist only in tables)"
                    .into(),
            ));
        }
        let dx: u32 = steps.iter().map(|s| s.dx()).sum();
        let dy: u32 = steps.iter().map(|s| s.dy()).sum();
        if dx != n || dy != m {
            return Err(Error::Domain(format!(
                "steps wind ({dx},{dy}) but must wind exactly ({n},{m})"
            )));
        }
        let mut lp = TorusLoop {
            n,
            m,
            start: (start.0 % n, start.1 % m),
            steps,
        };
        lp.canonicalize();
        Ok(lp)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn start(&self) -> (u32, u32) {
        self.start
    }

    pub fn steps(&self) -> &[Step2] {
        &self.steps
    }

    /// Number of steps; also the number of visited vertex-step pairs.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The vertices visited, in order, starting from the start vertex.
    pub fn vertices(&self) -> Vec<(u32, u32)> {
        let mut v = Vec::with_capacity(self.steps.len());
        let mut pos = self.start;
        for s in &self.steps {
            v.push(pos);
            pos = ((pos.0 + s.dx()) % self.n, (pos.1 + s.dy()) % self.m);
        }
        v
    }

    fn canonicalize(&mut self) {
        let k = self.steps.len();
        let mut best: Option<((u32, u32), Vec<Step2>)> = None;
        let mut pos = self.start;
        for t in 0..k {
            let mut word = Vec::with_capacity(k);
            word.extend_from_slice(&self.steps[t..]);
            word.extend_from_slice(&self.steps[..t]);
            let cand = (pos, word);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
            pos = (
                (pos.0 + self.steps[t].dx()) % self.n,
                (pos.1 + self.steps[t].dy()) % self.m,
            );
        }
        let (start, steps) = best.expect("loop has at least one step");
        self.start = start;
        self.steps = steps;
    }
}

impl fmt::Display for TorusLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})@({},{}):{}",
            self.n,
            self.m,
            self.start.0,
            self.start.1,
            steps_to_string(&self.steps)
        )
    }
}

#[derive(Serialize, Deserialize)]
struct TorusLoopWire {
    n: u32,
    m: u32,
    start: [u32; 2],
    steps: String,
}

impl Serialize for TorusLoop {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TorusLoopWire {
            n: self.n,
            m: self.m,
            start: [self.start.0, self.start.1],
            steps: steps_to_string(&self.steps),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TorusLoop {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let w = TorusLoopWire::deserialize(deserializer)?;
        let steps = steps_from_string(&w.steps).map_err(serde::de::Error::custom)?;
        TorusLoop::new(w.n, w.m, (w.start[0], w.start[1]), steps)
            .map_err(serde::de::Error::custom)
    }
}

/// All (n,m)-Delannoy loops, sorted by canonical form.
pub fn enumerate_loops(n: u32, m: u32) -> Result<Vec<TorusLoop>, Error> {
    if n == 0 || m == 0 {
        return Err(Error::Domain("enumerate_loops needs n, m >= 1".into()));
    }
    let mut set = BTreeSet::new();
    let mut word = Vec::new();
    // depth-first over step words, then all starts, deduplicated by
    // canonical form
    fn go(
        rx: u32,
        ry: u32,
        n: u32,
        m: u32,
        word: &mut Vec<Step2>,
        set: &mut BTreeSet<TorusLoop>,
    ) {
        if rx == 0 && ry == 0 {
            for sx in 0..n {
                for sy in 0..m {
                    let lp = TorusLoop::new(n, m, (sx, sy), word.clone())
                        .expect("word winds correctly by construction");
                    set.insert(lp);
                }
            }
            return;
        }
        if rx > 0 {
            word.push(Step2::R);
            go(rx - 1, ry, n, m, word, set);
            word.pop();
        }
        if ry > 0 {
            word.push(Step2::U);
            go(rx, ry - 1, n, m, word, set);
            word.pop();
        }
        if rx > 0 && ry > 0 {
            word.push(Step2::D);
            go(rx - 1, ry - 1, n, m, word, set);
            word.pop();
        }
    }
    go(n, m, n, m, &mut word, &mut set);
    Ok(set.into_iter().collect())
}

/// Translate the start vertex by (a,b) and re-canonicalize. This is the
/// ℤ/n × ℤ/m action on loops.
pub fn loop_action(p: &TorusLoop, a: i64, b: i64) -> TorusLoop {
    let sx = (p.start.0 as i64 + a).rem_euclid(p.n as i64) as u32;
    let sy = (p.start.1 as i64 + b).rem_euclid(p.m as i64) as u32;
    TorusLoop::new(p.n, p.m, (sx, sy), p.steps.clone()).expect("translation preserves winding")
}

/// Orbits of the full ℤ/n × ℤ/m action, each listed in canonical order,
/// ordered by their least element.
pub fn loop_orbits(loops: &[TorusLoop]) -> Vec<Vec<TorusLoop>> {
    let mut seen: BTreeSet<TorusLoop> = BTreeSet::new();
    let mut orbits = Vec::new();
    for p in loops {
        if seen.contains(p) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for a in 0..p.n as i64 {
            for b in 0..p.m as i64 {
                orbit.insert(loop_action(p, a, b));
            }
        }
        for q in &orbit {
            seen.insert(q.clone());
        }
        orbits.push(orbit.into_iter().collect());
    }
    orbits
}

/// C(n,m) = n·(D(n,m−1) + D(n−1,m−1)).
pub fn count_loops_formula(n: u32, m: u32) -> u128 {
    assert!(n >= 1 && m >= 1);
    n as u128 * (count_paths_formula(n, m - 1) + count_paths_formula(n - 1, m - 1))
}

/// C(n,m) = n·(D(n,m) − D(n−1,m)).
pub fn count_loops_difference(n: u32, m: u32) -> u128 {
    assert!(n >= 1 && m >= 1);
    n as u128 * (count_paths_formula(n, m) - count_paths_formula(n - 1, m))
}

/// C(n,m) = Σ_{k≥1} binom(n,k)·binom(m,k)·k·2^k.
pub fn count_loops_sum(n: u32, m: u32) -> u128 {
    assert!(n >= 1 && m >= 1);
    (1..=n.min(m) as u64)
        .map(|k| binomial(n as u64, k) * binomial(m as u64, k) * k as u128 * (1u128 << k))
        .sum()
}

/// Coefficient of x^n y^m in 2xy/(1−x−y−xy)², truncated at `max_deg`.
pub fn genfun_coefficient_trunc(n: u32, m: u32, max_deg: usize) -> u128 {
    assert!(n >= 1 && m >= 1);
    assert!(
        (n as usize) <= max_deg && (m as usize) <= max_deg,
        "requested coefficient beyond truncation order"
    );
    let d = max_deg;
    let denom = BiSeries::one(d)
        .sub(&BiSeries::monomial(d, 1, 0, 1))
        .sub(&BiSeries::monomial(d, 0, 1, 1))
        .sub(&BiSeries::monomial(d, 1, 1, 1));
    let inv = denom.inverse();
    let series = BiSeries::monomial(d, 1, 1, 2).mul(&inv.mul(&inv));
    let c = series.coeff(n as usize, m as usize);
    let (sign, digits) = c.to_u64_digits();
    assert!(sign != num::bigint::Sign::Minus, "coefficient is negative");
    digits
        .iter()
        .rev()
        .fold(0u128, |acc, &d| (acc << 64) | d as u128)
}

pub fn genfun_coefficient(n: u32, m: u32) -> u128 {
    genfun_coefficient_trunc(n, m, DEFAULT_SERIES_DEGREE)
}

/// The circular Delannoy table with the conventional boundary rows
/// C(n,0) = C(0,m) = 1; rows indexed by m, columns by n.
pub fn circular_table(max: u32) -> Vec<Vec<u128>> {
    let s = max as usize + 1;
    let mut t = vec![vec![1u128; s]; s];
    for (m, row) in t.iter_mut().enumerate().skip(1) {
        for (n, cell) in row.iter_mut().enumerate().skip(1) {
            *cell = count_loops_formula(n as u32, m as u32);
        }
    }
    t
}

// ---------------------------------------------------------------------------
// 3-D loops
// ---------------------------------------------------------------------------

/// Which pair of coordinates a 3-D loop is projected onto.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axes {
    XY,
    YZ,
    XZ,
}

/// An (n,m,ℓ)-Delannoy loop on ℤ/n × ℤ/m × ℤ/ℓ, canonicalized like the
/// planar ones.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusLoop3 {
    n: u32,
    m: u32,
    l: u32,
    start: (u32, u32, u32),
    steps: Vec<Step3>,
}

impl TorusLoop3 {
    pub fn new(
        n: u32,
        m: u32,
        l: u32,
        start: (u32, u32, u32),
        steps: Vec<Step3>,
    ) -> Result<Self, Error> {
        if n == 0 || m == 0 || l == 0 {
            return Err(Error::Domain("3-D torus loops need n, m, l >= 1".into()));
        }
        let dx: u32 = steps.iter().map(|s| s.dx()).sum();
        let dy: u32 = steps.iter().map(|s| s.dy()).sum();
        let dz: u32 = steps.iter().map(|s| s.dz()).sum();
        if dx != n || dy != m || dz != l {
            return Err(Error::Domain(format!(
                "steps wind ({dx},{dy},{dz}) but must wind exactly ({n},{m},{l})"
            )));
        }
        let mut lp = TorusLoop3 {
            n,
            m,
            l,
            start: (start.0 % n, start.1 % m, start.2 % l),
            steps,
        };
        lp.canonicalize();
        Ok(lp)
    }

    pub fn dims(&self) -> (u32, u32, u32) {
        (self.n, self.m, self.l)
    }

    pub fn start(&self) -> (u32, u32, u32) {
        self.start
    }

    pub fn steps(&self) -> &[Step3] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn canonicalize(&mut self) {
        let k = self.steps.len();
        let mut best: Option<((u32, u32, u32), Vec<Step3>)> = None;
        let mut pos = self.start;
        for t in 0..k {
            let mut word = Vec::with_capacity(k);
            word.extend_from_slice(&self.steps[t..]);
            word.extend_from_slice(&self.steps[..t]);
            let cand = (pos, word);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
            pos = (
                (pos.0 + self.steps[t].dx()) % self.n,
                (pos.1 + self.steps[t].dy()) % self.m,
                (pos.2 + self.steps[t].dz()) % self.l,
            );
        }
        let (start, steps) = best.expect("loop has at least one step");
        self.start = start;
        self.steps = steps;
    }
}

impl fmt::Display for TorusLoop3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{})@({},{},{}):",
            self.n, self.m, self.l, self.start.0, self.start.1, self.start.2
        )?;
        let names: Vec<&str> = self.steps.iter().map(|s| s.name()).collect();
        write!(f, "{}", names.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct TorusLoop3Wire {
    n: u32,
    m: u32,
    l: u32,
    start: [u32; 3],
    steps: Vec<String>,
}

impl Serialize for TorusLoop3 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TorusLoop3Wire {
            n: self.n,
            m: self.m,
            l: self.l,
            start: [self.start.0, self.start.1, self.start.2],
            steps: self.steps.iter().map(|s| s.name().to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TorusLoop3 {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let w = TorusLoop3Wire::deserialize(deserializer)?;
        let steps = w
            .steps
            .iter()
            .map(|s| Step3::from_name(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        TorusLoop3::new(w.n, w.m, w.l, (w.start[0], w.start[1], w.start[2]), steps)
            .map_err(serde::de::Error::custom)
    }
}

/// All (n,m,ℓ)-Delannoy loops, sorted by canonical form.
pub fn enumerate_loops3(n: u32, m: u32, l: u32) -> Result<Vec<TorusLoop3>, Error> {
    if n == 0 || m == 0 || l == 0 {
        return Err(Error::Domain("enumerate_loops3 needs n, m, l >= 1".into()));
    }
    let mut set = BTreeSet::new();
    let mut word = Vec::new();
    fn go(
        rx: u32,
        ry: u32,
        rz: u32,
        dims: (u32, u32, u32),
        word: &mut Vec<Step3>,
        set: &mut BTreeSet<TorusLoop3>,
    ) {
        if rx == 0 && ry == 0 && rz == 0 {
            let (n, m, l) = dims;
            for sx in 0..n {
                for sy in 0..m {
                    for sz in 0..l {
                        let lp = TorusLoop3::new(n, m, l, (sx, sy, sz), word.clone())
                            .expect("word winds correctly by construction");
                        set.insert(lp);
                    }
                }
            }
            return;
        }
        for s in Step3::ALL {
            if s.dx() <= rx && s.dy() <= ry && s.dz() <= rz {
                word.push(s);
                go(rx - s.dx(), ry - s.dy(), rz - s.dz(), dims, word, set);
                word.pop();
            }
        }
    }
    go(n, m, l, (n, m, l), &mut word, &mut set);
    Ok(set.into_iter().collect())
}

/// Project a 3-D loop onto two of its coordinates: the omitted coordinate
/// is dropped from every step, steps that become (0,0) are deleted, and
/// the result is re-canonicalized.
pub fn project(q: &TorusLoop3, axes: Axes) -> TorusLoop {
    let (n, m, l) = q.dims();
    let (pn, pm) = match axes {
        Axes::XY => (n, m),
        Axes::YZ => (m, l),
        Axes::XZ => (n, l),
    };
    let start = match axes {
        Axes::XY => (q.start.0, q.start.1),
        Axes::YZ => (q.start.1, q.start.2),
        Axes::XZ => (q.start.0, q.start.2),
    };
    let mut steps = Vec::new();
    for s in q.steps() {
        let (dx, dy) = match axes {
            Axes::XY => (s.dx(), s.dy()),
            Axes::YZ => (s.dy(), s.dz()),
            Axes::XZ => (s.dx(), s.dz()),
        };
        match (dx, dy) {
            (0, 0) => {}
            (1, 0) => steps.push(Step2::R),
            (0, 1) => steps.push(Step2::U),
            (1, 1) => steps.push(Step2::D),
            _ => unreachable!("step increments are 0/1"),
        }
    }
    TorusLoop::new(pn, pm, start, steps).expect("projection preserves winding")
}
