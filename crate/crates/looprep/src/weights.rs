//! Weights (finite words over a two-letter alphabet) and the cyclic
//! operations on them: shifts, contractions, rotation symmetry counts,
//! transpose, and the special/generic classification of simple labels.
//!
//! Serialized form uses `b` for the filled letter and `w` for the open one,
//! so the weight ●○○ prints as `"bww"` and the empty weight as `""`.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::Error;

/// One letter of a weight. Ordered `Black < White`; canonical class
/// representatives are minimal for the induced word order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Black,
    White,
}

impl Letter {
    pub fn flip(self) -> Letter {
        match self {
            Letter::Black => Letter::White,
            Letter::White => Letter::Black,
        }
    }

    fn to_char(self) -> char {
        match self {
            Letter::Black => 'b',
            Letter::White => 'w',
        }
    }
}

/// A weight: a finite (possibly empty) word over {●,○}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(Vec<Letter>);

impl Weight {
    pub fn new(letters: Vec<Letter>) -> Self {
        Weight(letters)
    }

    pub fn empty() -> Self {
        Weight(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// Parse from the `b`/`w` serialization; `""` is the empty weight.
    pub fn parse(s: &str) -> Result<Self, Error> {
        s.chars()
            .map(|c| match c {
                'b' => Ok(Letter::Black),
                'w' => Ok(Letter::White),
                other => Err(Error::Parse(format!(
                    "invalid weight letter {other:?}, expected 'b' or 'w'"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &Weight) -> Weight {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Weight(v)
    }

    /// `self` followed by one extra letter (λ⁺ = λ●, λ⁻ = λ○).
    pub fn push(&self, l: Letter) -> Weight {
        let mut v = self.0.clone();
        v.push(l);
        Weight(v)
    }

    /// Substring λ_i ⋯ λ_j with 1-based inclusive indices; empty when i > j.
    pub fn segment(&self, i: usize, j: usize) -> Weight {
        if i > j {
            return Weight::empty();
        }
        Weight(self.0[i - 1..j].to_vec())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Weight::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// σ^i(λ): the i-th cyclic shift, with σ(λ₁⋯λₙ) = λₙλ₁⋯λₙ₋₁.
/// `i` is taken mod ℓ(λ) and may be negative; the empty weight is fixed.
pub fn cyclic_shift(lambda: &Weight, i: i64) -> Weight {
    let n = lambda.len();
    if n == 0 {
        return lambda.clone();
    }
    let shift = i.rem_euclid(n as i64) as usize;
    // σ rotates letters rightwards, so σ^i moves the last i letters in front.
    let mut v = Vec::with_capacity(n);
    v.extend_from_slice(&lambda.0[n - shift..]);
    v.extend_from_slice(&lambda.0[..n - shift]);
    Weight(v)
}

/// γ_i(λ) = λ_{i+1} ⋯ λ_n λ_1 ⋯ λ_{i−1}: drop letter i of the i-th framing.
/// `i` is 1-based mod ℓ(λ). Rejects the empty weight.
pub fn cyclic_contraction(lambda: &Weight, i: i64) -> Result<Weight, Error> {
    let n = lambda.len();
    if n == 0 {
        return Err(Error::EmptyWeight("cyclic_contraction"));
    }
    let idx = (i - 1).rem_euclid(n as i64) as usize; // letter to delete, 0-based
    let mut v = Vec::with_capacity(n - 1);
    v.extend_from_slice(&lambda.0[idx + 1..]);
    v.extend_from_slice(&lambda.0[..idx]);
    Ok(Weight(v))
}

/// (g, N) where g = #{i : σ^i(λ) = λ} and N = ℓ(λ)/g counts distinct rotations.
pub fn aut_order(lambda: &Weight) -> Result<(usize, usize), Error> {
    let n = lambda.len();
    if n == 0 {
        return Err(Error::EmptyWeight("aut_order"));
    }
    let g = (1..=n)
        .filter(|&i| cyclic_shift(lambda, i as i64) == *lambda)
        .count();
    Ok((g, n / g))
}

/// λ†: reverse the word and swap ● ↔ ○.
pub fn transpose_weight(lambda: &Weight) -> Weight {
    Weight(lambda.0.iter().rev().map(|l| l.flip()).collect())
}

/// π(n): |n| copies of ● for n ≥ 0, of ○ for n < 0. π(0) = ∅.
pub fn pi(n: i64) -> Weight {
    let letter = if n >= 0 { Letter::Black } else { Letter::White };
    Weight(vec![letter; n.unsigned_abs() as usize])
}

/// ε(n) = (−1)^{n+1}.
pub fn epsilon(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        -1
    } else {
        1
    }
}

/// A rotation class of nonempty weights, keyed by its lexicographically
/// least rotation (with ● < ○).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicClass {
    rep: Weight,
}

impl CyclicClass {
    pub fn new(w: &Weight) -> Result<Self, Error> {
        if w.is_empty() {
            return Err(Error::EmptyWeight("CyclicClass::new"));
        }
        let rep = (0..w.len())
            .map(|i| cyclic_shift(w, i as i64))
            .min()
            .expect("nonempty weight has rotations");
        Ok(CyclicClass { rep })
    }

    pub fn rep(&self) -> &Weight {
        &self.rep
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Order of the rotation stabilizer of the class representative.
    pub fn aut_order(&self) -> usize {
        aut_order(&self.rep).expect("class is nonempty").0
    }

    /// Number of distinct rotations.
    pub fn num_rotations(&self) -> usize {
        aut_order(&self.rep).expect("class is nonempty").1
    }

    /// The class of λ† (well defined: transpose conjugates rotation).
    pub fn transpose(&self) -> CyclicClass {
        CyclicClass::new(&transpose_weight(&self.rep)).expect("transpose preserves length")
    }

    /// Signed index n with rep = π(n), when the class is constant.
    pub fn constant_index(&self) -> Option<i64> {
        if !self.rep.is_constant() {
            return None;
        }
        let n = self.rep.len() as i64;
        Some(match self.rep.letters()[0] {
            Letter::Black => n,
            Letter::White => -n,
        })
    }
}

impl fmt::Display for CyclicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl Serialize for CyclicClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.rep.to_string())
    }
}

impl<'de> Deserialize<'de> for CyclicClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let w = Weight::deserialize(deserializer)?;
        CyclicClass::new(&w).map_err(serde::de::Error::custom)
    }
}

/// ζ = exp(2πi·j/g), stored as the exponent j mod g. Exact by construction:
/// nothing downstream ever needs a floating-point root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ZetaExp {
    j: u64,
    g: u64,
}

impl ZetaExp {
    pub fn new(j: u64, g: u64) -> Result<Self, Error> {
        if g == 0 {
            return Err(Error::Domain("root-of-unity order must be positive".into()));
        }
        if j >= g {
            return Err(Error::Domain(format!(
                "zeta exponent {j} out of range for order {g}"
            )));
        }
        Ok(ZetaExp { j, g })
    }

    pub fn exponent(&self) -> u64 {
        self.j
    }

    pub fn order(&self) -> u64 {
        self.g
    }

    /// ζ⁻¹, i.e. j ↦ −j mod g.
    pub fn inverse(&self) -> ZetaExp {
        ZetaExp {
            j: (self.g - self.j) % self.g,
            g: self.g,
        }
    }

    /// All g exponents of the given order.
    pub fn all(g: u64) -> impl Iterator<Item = ZetaExp> {
        (0..g).map(move |j| ZetaExp { j, g })
    }
}

impl fmt::Display for ZetaExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e(2pi i {}/{})", self.j, self.g)
    }
}

/// The exponent of ε(n) inside the group of g-th roots of unity:
/// 0 when ε(n) = +1, g/2 when ε(n) = −1 (only possible for even g).
fn epsilon_exponent(n: i64, g: u64) -> Option<u64> {
    if epsilon(n) == 1 {
        Some(0)
    } else if g.is_multiple_of(2) {
        Some(g / 2)
    } else {
        None
    }
}

/// True iff (class, ζ) is special: the class is constant, say π(n), and
/// ζ = ε(n). Mixed classes are always generic.
pub fn is_special(class: &CyclicClass, zeta: ZetaExp) -> Result<bool, Error> {
    let g = class.aut_order() as u64;
    if zeta.order() != g {
        return Err(Error::Domain(format!(
            "zeta has order {} but class {class} has aut order {g}",
            zeta.order()
        )));
    }
    let Some(n) = class.constant_index() else {
        return Ok(false);
    };
    Ok(epsilon_exponent(n, g) == Some(zeta.exponent()))
}

/// Label of a simple object: the trivial module, a generic simple
/// M_{λ,ζ}, or a special simple M(n) with n ≠ 0 (M(0) is the trivial one
/// and is normalized away at construction).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimpleGLabel {
    Trivial,
    Generic(CyclicClass, ZetaExp),
    SpecialM(i64),
}

impl SimpleGLabel {
    /// M(n), with M(0) = 𝟙.
    pub fn special(n: i64) -> SimpleGLabel {
        if n == 0 {
            SimpleGLabel::Trivial
        } else {
            SimpleGLabel::SpecialM(n)
        }
    }

    /// M_{λ,ζ}; rejects special pairs.
    pub fn generic(class: CyclicClass, zeta: ZetaExp) -> Result<SimpleGLabel, Error> {
        if is_special(&class, zeta)? {
            return Err(Error::Domain(format!(
                "({class}, {zeta}) is special; use SimpleGLabel::special"
            )));
        }
        Ok(SimpleGLabel::Generic(class, zeta))
    }
}

impl fmt::Display for SimpleGLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleGLabel::Trivial => write!(f, "1"),
            SimpleGLabel::Generic(c, z) => write!(f, "M[{c},{}/{}]", z.exponent(), z.order()),
            SimpleGLabel::SpecialM(n) => write!(f, "M({n})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        Weight::parse(s).unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(cyclic_shift(&w("bww"), 1), w("wbw"));
        assert_eq!(cyclic_shift(&w("bww"), 3), w("bww"));
        assert_eq!(cyclic_shift(&Weight::empty(), 5), Weight::empty());
        assert_eq!(cyclic_shift(&w("bww"), -1), cyclic_shift(&w("bww"), 2));
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(cyclic_contraction(&w("bww"), 1).unwrap(), w("ww"));
        assert_eq!(cyclic_contraction(&w("bww"), 2).unwrap(), w("wb"));
        assert_eq!(cyclic_contraction(&w("b"), 1).unwrap(), Weight::empty());
        assert!(cyclic_contraction(&Weight::empty(), 1).is_err());
    }

    #[test]
    fn contraction_is_shift_then_drop() {
        for len in 1..=6usize {
            for bits in 0..(1u32 << len) {
                let lam = Weight::new(
                    (0..len)
                        .map(|k| {
                            if bits >> k & 1 == 1 {
                                Letter::White
                            } else {
                                Letter::Black
                            }
                        })
                        .collect(),
                );
                // the deletion framings are traversed opposite to the
                // rotation direction of σ, hence the negated shift
                for i in 1..=len as i64 {
                    let direct = cyclic_contraction(&lam, i).unwrap();
                    let via_shift =
                        cyclic_contraction(&cyclic_shift(&lam, -(i - 1)), 1).unwrap();
                    assert_eq!(direct, via_shift, "lambda={lam} i={i}");
                }
            }
        }
    }

    #[test]
    fn aut_order_examples() {
        assert_eq!(aut_order(&w("bwbw")).unwrap(), (2, 2));
        assert_eq!(aut_order(&w("bb")).unwrap(), (2, 1));
        assert_eq!(aut_order(&w("bww")).unwrap(), (1, 3));
    }

    #[test]
    fn rotations_and_contractions_distinct() {
        // the N rotations σ^i, i=1..N, and the N contractions γ_i, i=1..N,
        // are pairwise distinct; contraction equality forces shift equality
        for len in 1..=8usize {
            for bits in 0..(1u32 << len) {
                let lam = Weight::new(
                    (0..len)
                        .map(|k| {
                            if bits >> k & 1 == 1 {
                                Letter::White
                            } else {
                                Letter::Black
                            }
                        })
                        .collect(),
                );
                let (g, n_rot) = aut_order(&lam).unwrap();
                assert_eq!(g * n_rot, len);
                let rots: std::collections::BTreeSet<_> = (1..=n_rot)
                    .map(|i| cyclic_shift(&lam, i as i64))
                    .collect();
                assert_eq!(rots.len(), n_rot);
                let cons: std::collections::BTreeSet<_> = (1..=n_rot)
                    .map(|i| cyclic_contraction(&lam, i as i64).unwrap())
                    .collect();
                assert_eq!(cons.len(), n_rot);
                for i in 1..=len as i64 {
                    for j in 1..=len as i64 {
                        if cyclic_contraction(&lam, i).unwrap()
                            == cyclic_contraction(&lam, j).unwrap()
                        {
                            assert_eq!(cyclic_shift(&lam, i), cyclic_shift(&lam, j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(transpose_weight(&w("bww")), w("bbw"));
        assert_eq!(transpose_weight(&w("bb")), w("ww"));
        assert_eq!(transpose_weight(&Weight::empty()), Weight::empty());
    }

    #[test]
    fn pi_epsilon_examples() {
        assert_eq!(pi(2), w("bb"));
        assert_eq!(epsilon(2), -1);
        assert_eq!(pi(-1), w("w"));
        assert_eq!(epsilon(-1), 1);
        assert_eq!(pi(0), Weight::empty());
    }

    #[test]
    fn class_representative_is_least_rotation() {
        let c = CyclicClass::new(&w("wb")).unwrap();
        assert_eq!(c.rep(), &w("bw"));
        assert_eq!(
            CyclicClass::new(&w("wbb")).unwrap(),
            CyclicClass::new(&w("bbw")).unwrap()
        );
    }

    #[test]
    fn special_examples() {
        let bb = CyclicClass::new(&w("bb")).unwrap();
        assert!(is_special(&bb, ZetaExp::new(1, 2).unwrap()).unwrap());
        assert!(!is_special(&bb, ZetaExp::new(0, 2).unwrap()).unwrap());
        let bw = CyclicClass::new(&w("bw")).unwrap();
        assert!(!is_special(&bw, ZetaExp::new(0, 1).unwrap()).unwrap());
        // wrong-order zeta is rejected
        assert!(is_special(&bb, ZetaExp::new(0, 3).unwrap()).is_err());
        // odd constant classes are special at exponent 0
        let www = CyclicClass::new(&w("www")).unwrap();
        assert!(is_special(&www, ZetaExp::new(0, 3).unwrap()).unwrap());
    }

    #[test]
    fn special_label_normalizes_zero() {
        assert_eq!(SimpleGLabel::special(0), SimpleGLabel::Trivial);
        assert_eq!(SimpleGLabel::special(2), SimpleGLabel::SpecialM(2));
        let bb = CyclicClass::new(&w("bb")).unwrap();
        assert!(SimpleGLabel::generic(bb, ZetaExp::new(1, 2).unwrap()).is_err());
    }

    #[test]
    fn weight_serde_roundtrip() {
        let lam = w("bwwb");
        let json = serde_json::to_string(&lam).unwrap();
        assert_eq!(json, "\"bwwb\"");
        assert_eq!(serde_json::from_str::<Weight>(&json).unwrap(), lam);
    }
}
