//! The Delannoy-loop diagram category: Hom spaces with loop bases, the
//! signed composition rule, identity elements, and endomorphism algebras.
//!
//! Composition of basis loops sums over spatial loops compatible with the
//! given pair of projections:
//!
//!   [p₁] ∘ [p₂] = Σ_q (−1)^{ℓ(q)+ℓ(p₃)} [p₃],   p₃ = π₁₃(q),
//!
//! where q runs over Λ(n,m,ℓ) with π₁₂(q) = p₁ and π₂₃(q) = p₂, and ℓ(·)
//! counts steps. Compatibility tables are built once per index signature
//! and cached for concurrent readers.

use num::{BigRational, One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::lattice::{
    enumerate_loops, enumerate_loops3, loop_action, project, Axes, Step2, TorusLoop,
};
use crate::ratmat::{rat, Mat, Rat};
use crate::Error;

// ---------------------------------------------------------------------------
// Caches
// ---------------------------------------------------------------------------

type PairKey = (u32, u32);
type TripleKey = (u32, u32, u32);
type Bucket = BTreeMap<TorusLoop, i64>;

/// For one (n,m,ℓ): map (π₁₂(q), π₂₃(q)) ↦ signed tally of π₁₃(q) over q.
struct TripleIndex {
    buckets: HashMap<(TorusLoop, TorusLoop), Bucket>,
}

fn pair_cache() -> &'static RwLock<HashMap<PairKey, Arc<Vec<TorusLoop>>>> {
    static CACHE: OnceLock<RwLock<HashMap<PairKey, Arc<Vec<TorusLoop>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn triple_cache() -> &'static RwLock<HashMap<TripleKey, Arc<TripleIndex>>> {
    static CACHE: OnceLock<RwLock<HashMap<TripleKey, Arc<TripleIndex>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The loop basis of 𝒞(n,m), canonical order, built once.
pub fn loop_basis(n: u32, m: u32) -> Result<Arc<Vec<TorusLoop>>, Error> {
    if let Some(hit) = pair_cache().read().unwrap().get(&(n, m)) {
        return Ok(Arc::clone(hit));
    }
    let loops = Arc::new(enumerate_loops(n, m)?);
    let mut w = pair_cache().write().unwrap();
    Ok(Arc::clone(w.entry((n, m)).or_insert(loops)))
}

fn triple_index(n: u32, m: u32, l: u32) -> Result<Arc<TripleIndex>, Error> {
    if let Some(hit) = triple_cache().read().unwrap().get(&(n, m, l)) {
        return Ok(Arc::clone(hit));
    }
    let mut buckets: HashMap<(TorusLoop, TorusLoop), Bucket> = HashMap::new();
    for q in enumerate_loops3(n, m, l)? {
        let p12 = project(&q, Axes::XY);
        let p23 = project(&q, Axes::YZ);
        let p13 = project(&q, Axes::XZ);
        let sign = if (q.len() + p13.len()).is_multiple_of(2) { 1 } else { -1 };
        *buckets
            .entry((p12, p23))
            .or_default()
            .entry(p13)
            .or_insert(0) += sign;
    }
    let idx = Arc::new(TripleIndex { buckets });
    let mut w = triple_cache().write().unwrap();
    Ok(Arc::clone(w.entry((n, m, l)).or_insert(idx)))
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

/// An element of 𝒞(src,dst): a finite rational combination of loops.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    src: u32,
    dst: u32,
    coeffs: BTreeMap<TorusLoop, Rat>,
}

impl Morphism {
    pub fn zero(src: u32, dst: u32) -> Self {
        Morphism {
            src,
            dst,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(p: &TorusLoop) -> Self {
        let mut m = Morphism::zero(p.n(), p.m());
        m.add_term(p.clone(), Rat::one());
        m
    }

    pub fn src(&self) -> u32 {
        self.src
    }

    pub fn dst(&self) -> u32 {
        self.dst
    }

    pub fn coeffs(&self) -> &BTreeMap<TorusLoop, Rat> {
        &self.coeffs
    }

    pub fn coeff(&self, p: &TorusLoop) -> Rat {
        self.coeffs.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, p: TorusLoop, c: Rat) {
        assert_eq!((p.n(), p.m()), (self.src, self.dst), "loop key shape");
        let entry = self.coeffs.entry(p.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism, Error> {
        if (self.src, self.dst) != (other.src, other.dst) {
            return Err(Error::IndexMismatch(format!(
                "cannot add C({},{}) to C({},{})",
                self.src, self.dst, other.src, other.dst
            )));
        }
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Morphism {
        if c.is_zero() {
            return Morphism::zero(self.src, self.dst);
        }
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism, Error> {
        self.add(&other.scale(&-Rat::one()))
    }

    /// Relabeling action: translate every loop key by (a,b).
    pub fn translate(&self, a: i64, b: i64) -> Morphism {
        let mut out = Morphism::zero(self.src, self.dst);
        for (p, c) in &self.coeffs {
            out.add_term(loop_action(p, a, b), c.clone());
        }
        out
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(p, c)| format!("{c}*[{p}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub(crate) fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub(crate) fn rat_from_string(s: &str) -> Result<Rat, Error> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: num::BigInt = num
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad numerator {num:?}: {e}")))?;
    let d: num::BigInt = den
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad denominator {den:?}: {e}")))?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

#[derive(Serialize, Deserialize)]
struct MorphismTermWire {
    #[serde(rename = "loop")]
    lp: TorusLoop,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct MorphismWire {
    src: u32,
    dst: u32,
    terms: Vec<MorphismTermWire>,
}

impl Serialize for Morphism {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MorphismWire {
            src: self.src,
            dst: self.dst,
            terms: self
                .coeffs
                .iter()
                .map(|(p, c)| MorphismTermWire {
                    lp: p.clone(),
                    coeff: rat_to_string(c),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Morphism {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let w = MorphismWire::deserialize(deserializer)?;
        let mut m = Morphism::zero(w.src, w.dst);
        for t in w.terms {
            if (t.lp.n(), t.lp.m()) != (w.src, w.dst) {
                return Err(serde::de::Error::custom(format!(
                    "loop on ({},{}) torus in a C({},{}) morphism",
                    t.lp.n(),
                    t.lp.m(),
                    w.src,
                    w.dst
                )));
            }
            let c = rat_from_string(&t.coeff).map_err(serde::de::Error::custom)?;
            m.add_term(t.lp, c);
        }
        Ok(m)
    }
}

// ---------------------------------------------------------------------------
// Composition
// ---------------------------------------------------------------------------

/// Bilinear composition 𝒞(n,m) × 𝒞(m,ℓ) → 𝒞(n,ℓ).
pub fn compose(f: &Morphism, g: &Morphism) -> Result<Morphism, Error> {
    if f.dst != g.src {
        return Err(Error::IndexMismatch(format!(
            "cannot compose C({},{}) with C({},{})",
            f.src, f.dst, g.src, g.dst
        )));
    }
    let idx = triple_index(f.src, f.dst, g.dst)?;
    let mut out = Morphism::zero(f.src, g.dst);
    for (p1, c1) in &f.coeffs {
        for (p2, c2) in &g.coeffs {
            let Some(bucket) = idx.buckets.get(&(p1.clone(), p2.clone())) else {
                continue;
            };
            let c12 = c1 * c2;
            for (p3, k) in bucket {
                out.add_term(p3.clone(), &c12 * rat(*k));
            }
        }
    }
    Ok(out)
}

/// The principal all-diagonal loop through the origin on the n×n torus.
pub fn principal_diagonal(n: u32) -> TorusLoop {
    TorusLoop::new(n, n, (0, 0), vec![Step2::D; n as usize])
        .expect("all-diagonal word winds once each way")
}

/// The two-sided identity of End(𝒞(n)).
///
/// The candidate is the principal diagonal loop; both unit laws are then
/// checked against the whole loop basis, which fails loudly if the sign
/// convention were wrong. A two-sided unit is unique when it exists, so
/// the checks pin it down completely.
pub fn identity(n: u32) -> Result<Morphism, Error> {
    let e = Morphism::basis(&principal_diagonal(n));
    for p in loop_basis(n, n)?.iter() {
        let bp = Morphism::basis(p);
        let left = compose(&e, &bp)?;
        if left != bp {
            return Err(Error::Solve(format!(
                "principal diagonal is not a left unit at n={n}: e∘[{p}] = {left}"
            )));
        }
        let right = compose(&bp, &e)?;
        if right != bp {
            return Err(Error::Solve(format!(
                "principal diagonal is not a right unit at n={n}: [{p}]∘e = {right}"
            )));
        }
    }
    Ok(e)
}

/// Solve the identity equations e∘[p] = [p] = [p]∘e as a linear system
/// over the loop basis and return the unique solution. Quadratic in the
/// basis size; used as an independent oracle for `identity`.
pub fn identity_by_solve(n: u32) -> Result<Morphism, Error> {
    let basis = loop_basis(n, n)?;
    let dim = basis.len();
    let index: BTreeMap<&TorusLoop, usize> =
        basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for p in basis.iter() {
        let bp = Morphism::basis(p);
        let mut left_rows = vec![vec![Rat::zero(); dim]; dim];
        let mut right_rows = vec![vec![Rat::zero(); dim]; dim];
        for (qi, q) in basis.iter().enumerate() {
            let bq = Morphism::basis(q);
            for (r, c) in compose(&bq, &bp)?.coeffs() {
                left_rows[index[r]][qi] = c.clone();
            }
            for (r, c) in compose(&bp, &bq)?.coeffs() {
                right_rows[index[r]][qi] = c.clone();
            }
        }
        for (ri, row) in left_rows.into_iter().chain(right_rows).enumerate() {
            rows.push(row);
            rhs.push(if ri % dim == index[p] {
                Rat::one()
            } else {
                Rat::zero()
            });
        }
    }
    let mat = Mat::from_rows(rows);
    if mat.rank() < dim {
        return Err(Error::Solve(format!(
            "identity system at n={n} is underdetermined"
        )));
    }
    let x = mat
        .solve(&rhs)
        .ok_or_else(|| Error::Solve(format!("no identity element in End(C({n}))")))?;
    let mut e = Morphism::zero(n, n);
    for (i, c) in x.into_iter().enumerate() {
        if !c.is_zero() {
            e.add_term(basis[i].clone(), c);
        }
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// Endomorphism algebras
// ---------------------------------------------------------------------------

/// Structure constants of End(𝒞(n)) over the canonical loop order:
/// [p_i]∘[p_j] = Σ_k constants[i][j][k] [p_k].
pub struct EndAlgebra {
    n: u32,
    basis: Vec<TorusLoop>,
    constants: Vec<Vec<Vec<i64>>>,
}

impl EndAlgebra {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[TorusLoop] {
        &self.basis
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> i64 {
        self.constants[i][j][k]
    }

    pub fn constants(&self) -> &Vec<Vec<Vec<i64>>> {
        &self.constants
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| (0..d).all(|k| self.constants[i][j][k] == self.constants[j][i][k]))
        })
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let lhs: i64 = (0..d)
                            .map(|t| self.constants[i][j][t] * self.constants[t][k][l])
                            .sum();
                        let rhs: i64 = (0..d)
                            .map(|t| self.constants[j][k][t] * self.constants[i][t][l])
                            .sum();
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn left_mult(&self, i: usize) -> Mat {
        let d = self.dim();
        let mut m = Mat::zero(d, d);
        for j in 0..d {
            for k in 0..d {
                m[(k, j)] = rat(self.constants[i][j][k]);
            }
        }
        m
    }

    /// Dimension of the Jacobson radical, computed as the radical of the
    /// trace form (x,y) ↦ tr(L_x L_y); valid in characteristic zero.
    pub fn radical_dimension(&self) -> usize {
        let d = self.dim();
        let lmats: Vec<Mat> = (0..d).map(|i| self.left_mult(i)).collect();
        let mut gram = Mat::zero(d, d);
        for i in 0..d {
            for j in 0..d {
                let prod = lmats[i].mul(&lmats[j]);
                let mut tr = Rat::zero();
                for t in 0..d {
                    tr += prod[(t, t)].clone();
                }
                gram[(i, j)] = tr;
            }
        }
        d - gram.rank()
    }
}

/// Build the full structure-constant table of End(𝒞(n)).
pub fn end_algebra(n: u32) -> Result<EndAlgebra, Error> {
    let basis = loop_basis(n, n)?.as_ref().clone();
    let dim = basis.len();
    let index: BTreeMap<&TorusLoop, usize> =
        basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut constants = vec![vec![vec![0i64; dim]; dim]; dim];
    let idx = triple_index(n, n, n)?;
    for (i, p1) in basis.iter().enumerate() {
        for (j, p2) in basis.iter().enumerate() {
            if let Some(bucket) = idx.buckets.get(&(p1.clone(), p2.clone())) {
                for (p3, k) in bucket {
                    constants[i][j][index[p3]] = *k;
                }
            }
        }
    }
    Ok(EndAlgebra {
        n,
        basis,
        constants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag1() -> TorusLoop {
        TorusLoop::new(1, 1, (0, 0), vec![Step2::D]).unwrap()
    }

    fn sq1() -> TorusLoop {
        TorusLoop::new(1, 1, (0, 0), vec![Step2::R, Step2::U]).unwrap()
    }

    #[test]
    fn composition_on_the_point_torus() {
        let d = Morphism::basis(&diag1());
        let s = Morphism::basis(&sq1());
        assert_eq!(compose(&d, &d).unwrap(), d);
        assert_eq!(compose(&d, &s).unwrap(), s);
        assert_eq!(compose(&s, &d).unwrap(), s);
        // [sq]∘[sq] = −[diag] − 2[sq]
        let ss = compose(&s, &s).unwrap();
        assert_eq!(ss.coeff(&diag1()), rat(-1));
        assert_eq!(ss.coeff(&sq1()), rat(-2));
        assert_eq!(ss.coeffs().len(), 2);
    }

    #[test]
    fn index_mismatch_is_rejected() {
        let d = Morphism::basis(&diag1());
        let p = Morphism::basis(&principal_diagonal(2));
        assert!(compose(&d, &p).is_err());
    }

    #[test]
    fn identities_are_principal_diagonals() {
        for n in 1..=2u32 {
            let e = identity(n).unwrap();
            assert_eq!(e, Morphism::basis(&principal_diagonal(n)));
            assert_eq!(compose(&e, &e).unwrap(), e);
        }
    }

    #[test]
    fn identity_solve_oracle_agrees() {
        for n in 1..=2u32 {
            assert_eq!(identity_by_solve(n).unwrap(), identity(n).unwrap());
        }
    }

    #[test]
    fn identity_acts_on_rectangular_homs() {
        let e2 = identity(2).unwrap();
        for p in loop_basis(2, 3).unwrap().iter() {
            let bp = Morphism::basis(p);
            assert_eq!(compose(&e2, &bp).unwrap(), bp);
        }
        for p in loop_basis(3, 2).unwrap().iter() {
            let bp = Morphism::basis(p);
            assert_eq!(compose(&bp, &e2).unwrap(), bp);
        }
    }

    #[test]
    fn end_of_point_torus_is_dual_numbers() {
        let alg = end_algebra(1).unwrap();
        assert_eq!(alg.dim(), 2);
        assert!(alg.is_commutative());
        assert!(alg.is_associative());
        assert_eq!(alg.radical_dimension(), 1);
        // z = [sq] + [diag] squares to zero
        let z = Morphism::basis(&sq1())
            .add(&Morphism::basis(&diag1()))
            .unwrap();
        assert!(compose(&z, &z).unwrap().is_zero());
    }

    #[test]
    fn end_dimension_matches_counting() {
        for n in 1..=3u32 {
            let alg = end_algebra(n).unwrap();
            assert_eq!(alg.dim() as u128, crate::lattice::count_loops_formula(n, n));
        }
    }

    #[test]
    fn associativity_spot_checks() {
        let b12 = loop_basis(1, 2).unwrap();
        let b21 = loop_basis(2, 1).unwrap();
        let b11 = loop_basis(1, 1).unwrap();
        for f in b12.iter() {
            for g in b21.iter() {
                for h in b11.iter() {
                    let fg_h = compose(
                        &compose(&Morphism::basis(f), &Morphism::basis(g)).unwrap(),
                        &Morphism::basis(h),
                    )
                    .unwrap();
                    let f_gh = compose(
                        &Morphism::basis(f),
                        &compose(&Morphism::basis(g), &Morphism::basis(h)).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(fg_h, f_gh);
                }
            }
        }
    }

    #[test]
    fn composition_is_equivariant_on_outer_indices() {
        let b23 = loop_basis(2, 3).unwrap();
        let b32 = loop_basis(3, 2).unwrap();
        for f in b23.iter().take(6) {
            for g in b32.iter().take(6) {
                let base = compose(&Morphism::basis(f), &Morphism::basis(g)).unwrap();
                for a in 0..2 {
                    for c in 0..2 {
                        let lhs = compose(
                            &Morphism::basis(f).translate(a, 0),
                            &Morphism::basis(g).translate(0, c),
                        )
                        .unwrap();
                        assert_eq!(lhs, base.translate(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn morphism_serde_roundtrip() {
        let m = Morphism::basis(&sq1())
            .scale(&BigRational::new(3.into(), 2.into()))
            .sub(&Morphism::basis(&diag1()))
            .unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert!(json.contains("3/2"));
        let back: Morphism = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
    }
}
