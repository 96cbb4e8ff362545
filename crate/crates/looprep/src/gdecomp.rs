//! Structure on the circle side: classification of simple labels,
//! standard-module data, the standard filtration of induced modules,
//! decomposition of induced modules and Schwartz spaces into
//! indecomposable projectives, restriction of simples, categorical
//! dimensions, and Hom-dimension bookkeeping between projectives.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::branching::{a_decomp, abar_decomp, weights_of_length, HDecomp};
use crate::lattice::binomial;
use crate::weights::{is_special, pi, CyclicClass, Letter, SimpleGLabel, Weight, ZetaExp};
use crate::Error;

// ---------------------------------------------------------------------------
// Labels and decompositions
// ---------------------------------------------------------------------------

/// Label of an indecomposable projective: a generic simple (which is its
/// own projective cover) or a special projective P(n).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjLabel {
    SpecialP(i64),
    GenericSimple(CyclicClass, ZetaExp),
}

impl ProjLabel {
    pub fn generic(class: CyclicClass, zeta: ZetaExp) -> Result<Self, Error> {
        if is_special(&class, zeta)? {
            return Err(Error::Domain(format!(
                "({class}, {zeta}) is special; use ProjLabel::SpecialP"
            )));
        }
        Ok(ProjLabel::GenericSimple(class, zeta))
    }
}

impl fmt::Display for ProjLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjLabel::SpecialP(n) => write!(f, "P({n})"),
            ProjLabel::GenericSimple(c, z) => {
                write!(f, "M[{c},{}/{}]", z.exponent(), z.order())
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum ProjLabelWire {
    #[serde(rename = "P")]
    P { n: i64 },
    #[serde(rename = "generic")]
    Generic { class: CyclicClass, zeta: u64 },
}

impl Serialize for ProjLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ProjLabel::SpecialP(n) => ProjLabelWire::P { n: *n }.serialize(serializer),
            ProjLabel::GenericSimple(c, z) => ProjLabelWire::Generic {
                class: c.clone(),
                zeta: z.exponent(),
            }
            .serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for ProjLabel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match ProjLabelWire::deserialize(deserializer)? {
            ProjLabelWire::P { n } => Ok(ProjLabel::SpecialP(n)),
            ProjLabelWire::Generic { class, zeta } => {
                let g = class.aut_order() as u64;
                let z = ZetaExp::new(zeta, g).map_err(serde::de::Error::custom)?;
                ProjLabel::generic(class, z).map_err(serde::de::Error::custom)
            }
        }
    }
}

/// Multiset of indecomposable projectives.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GDecomp {
    mult: BTreeMap<ProjLabel, u64>,
}

impl GDecomp {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, label: ProjLabel, k: u64) {
        if k > 0 {
            *self.mult.entry(label).or_insert(0) += k;
        }
    }

    pub fn merge_scaled(&mut self, other: &GDecomp, k: u64) {
        for (l, j) in &other.mult {
            self.add(l.clone(), j * k);
        }
    }

    pub fn get(&self, label: &ProjLabel) -> u64 {
        self.mult.get(label).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ProjLabel, u64)> {
        self.mult.iter().map(|(l, &k)| (l, k))
    }

    pub fn num_labels(&self) -> usize {
        self.mult.len()
    }

    pub fn total_mult(&self) -> u64 {
        self.mult.values().sum()
    }

    /// Restriction to the line group, expanding every summand.
    pub fn h_restriction(&self) -> HDecomp {
        let mut out = HDecomp::new();
        for (label, k) in self.iter() {
            let part = match label {
                ProjLabel::SpecialP(n) => special_projective_h_decomp(*n),
                ProjLabel::GenericSimple(c, z) => {
                    restrict_simple(&SimpleGLabel::Generic(c.clone(), *z))
                }
            };
            for (w, j) in part.iter() {
                out.add(w.clone(), j * k);
            }
        }
        out
    }
}

impl FromIterator<(ProjLabel, u64)> for GDecomp {
    fn from_iter<I: IntoIterator<Item = (ProjLabel, u64)>>(iter: I) -> Self {
        let mut d = GDecomp::new();
        for (l, k) in iter {
            d.add(l, k);
        }
        d
    }
}

impl fmt::Display for GDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.mult.iter().map(|(l, k)| format!("{l}^{k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct GDecompEntry {
    label: ProjLabel,
    mult: u64,
}

impl Serialize for GDecomp {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<GDecompEntry> = self
            .mult
            .iter()
            .map(|(l, &k)| GDecompEntry {
                label: l.clone(),
                mult: k,
            })
            .collect();
        entries.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GDecomp {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let entries = Vec::<GDecompEntry>::deserialize(deserializer)?;
        Ok(entries.into_iter().map(|e| (e.label, e.mult)).collect())
    }
}

// ---------------------------------------------------------------------------
// Classification and standard modules
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Generic,
    Special,
}

pub fn classify(class: &CyclicClass, zeta: ZetaExp) -> Result<Classification, Error> {
    Ok(if is_special(class, zeta)? {
        Classification::Special
    } else {
        Classification::Generic
    })
}

/// Invariants of one standard module: its restriction to the line group,
/// its length, the unique proper submodule in the length-two case, the
/// dimension of the distinguished invariant space, and the eigenvalue of
/// the rotation power acting there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StdModuleData {
    pub class: CyclicClass,
    pub zeta: ZetaExp,
    pub h_decomp: HDecomp,
    pub length: u8,
    pub sub: Option<SimpleGLabel>,
    pub invariant_dim: u64,
    pub tau_power_eigenvalue: ZetaExp,
}

pub fn standard_data(class: &CyclicClass, zeta: ZetaExp) -> Result<StdModuleData, Error> {
    let h_decomp = abar_decomp(class.rep())?;
    let invariant_dim = class.num_rotations() as u64;
    let (length, sub) = match classify(class, zeta)? {
        Classification::Generic => (1, None),
        Classification::Special => {
            let n = class
                .constant_index()
                .expect("special classes are constant");
            // the unique proper submodule sits one step closer to zero
            (2, Some(SimpleGLabel::special(n - n.signum())))
        }
    };
    Ok(StdModuleData {
        class: class.clone(),
        zeta,
        h_decomp,
        length,
        sub,
        invariant_dim,
        tau_power_eigenvalue: zeta,
    })
}

/// Standard filtration of the induced module I_λ: submodule labels
/// Δ_{λ●}, Δ_{λ○} and quotient label Δ_λ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaFiltration {
    pub subs: [Weight; 2],
    pub quotient: Weight,
}

impl DeltaFiltration {
    /// Total line-group length of the three layers; equals the length of
    /// I_λ itself, 6ℓ(λ)+4.
    pub fn h_length_total(&self) -> u64 {
        let layer = |w: &Weight| a_decomp(w).expect("nonempty").total_length();
        layer(&self.subs[0]) + layer(&self.subs[1]) + layer(&self.quotient)
    }
}

pub fn delta_filtration(lambda: &Weight) -> Result<DeltaFiltration, Error> {
    if lambda.is_empty() {
        // exactness fails on the left: the two submodules of I_∅ meet in
        // a trivial subrepresentation
        return Err(Error::EmptyWeight("delta_filtration"));
    }
    Ok(DeltaFiltration {
        subs: [lambda.push(Letter::Black), lambda.push(Letter::White)],
        quotient: lambda.clone(),
    })
}

// ---------------------------------------------------------------------------
// Decomposition into indecomposable projectives
// ---------------------------------------------------------------------------

fn generic_labels_of_class(class: &CyclicClass) -> Vec<ProjLabel> {
    let g = class.aut_order() as u64;
    ZetaExp::all(g)
        .filter(|z| !is_special(class, *z).expect("orders match"))
        .map(|z| ProjLabel::GenericSimple(class.clone(), z))
        .collect()
}

/// Decomposition of the induced module I_μ into indecomposable
/// projectives. The special projective P(n) appears exactly when μ is the
/// constant word π(n); a generic simple appears (with multiplicity one)
/// exactly when μ is a rotation or a contraction of its class.
pub fn induced_proj_decomp(mu: &Weight) -> GDecomp {
    let mut out = GDecomp::new();
    if mu.is_empty() || mu.is_constant() {
        let n = if mu.is_empty() {
            0
        } else {
            CyclicClass::new(mu)
                .expect("nonempty")
                .constant_index()
                .expect("constant")
        };
        out.add(ProjLabel::SpecialP(n), 1);
    }
    if !mu.is_empty() {
        let class = CyclicClass::new(mu).expect("nonempty");
        for label in generic_labels_of_class(&class) {
            out.add(label, 1);
        }
    }
    // classes with μ as a cyclic contraction: exactly those of μ● and μ○
    for ext in [mu.push(Letter::Black), mu.push(Letter::White)] {
        let class = CyclicClass::new(&ext).expect("nonempty");
        for label in generic_labels_of_class(&class) {
            out.add(label, 1);
        }
    }
    out
}

/// Restriction of P(n) to the line group. The two standard layers each
/// restrict to {π(k), π(k−1)}, so the projective collects
/// {π(n+1), π(n)², π(n−1)}, four constituents in total.
pub fn special_projective_h_decomp(n: i64) -> HDecomp {
    let mut out = HDecomp::new();
    out.add(pi(n + 1), 1);
    out.add(pi(n), 2);
    out.add(pi(n - 1), 1);
    out
}

/// Decomposition of the n-point Schwartz space into indecomposable
/// projectives, obtained by flattening its induced-module pieces.
pub fn schwartz_g_decomp(n: u32) -> Result<GDecomp, Error> {
    if n == 0 {
        return Err(Error::Domain("schwartz_g_decomp needs n >= 1".into()));
    }
    let mut out = GDecomp::new();
    for len in 0..n as usize {
        let binom = binomial((n - 1) as u64, len as u64) as u64;
        for lam in weights_of_length(len) {
            out.merge_scaled(&induced_proj_decomp(&lam), binom);
        }
    }
    Ok(out)
}

/// Which closed-form rule to use for the generic multiplicity in a
/// Schwartz space. The rotation-count rule N(λ)·binom(n,ℓ) is the one the
/// flattening (and every cross-check) confirms; the stabilizer-order rule
/// g(λ)·binom(n,ℓ) is retained only to demonstrate that it fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenericMultRule {
    RotationCount,
    StabilizerOrder,
}

/// Closed-form multiplicity of a generic simple in the n-point Schwartz
/// space under the chosen rule.
pub fn schwartz_generic_mult_closed(class: &CyclicClass, n: u32, rule: GenericMultRule) -> u64 {
    let factor = match rule {
        GenericMultRule::RotationCount => class.num_rotations() as u64,
        GenericMultRule::StabilizerOrder => class.aut_order() as u64,
    };
    factor * binomial(n as u64, class.len() as u64) as u64
}

/// Closed-form multiplicity of P(m) in the n-point Schwartz space.
pub fn schwartz_special_mult_closed(m: i64, n: u32) -> u64 {
    binomial((n - 1) as u64, m.unsigned_abs()) as u64
}

/// dim Hom between two indecomposable projectives. Generic simples only
/// see themselves; the special projectives form the banded 2/1/0 table.
pub fn hom_dim_projectives(p: &ProjLabel, q: &ProjLabel) -> u64 {
    match (p, q) {
        (ProjLabel::GenericSimple(c1, z1), ProjLabel::GenericSimple(c2, z2)) => {
            u64::from(c1 == c2 && z1 == z2)
        }
        (ProjLabel::SpecialP(a), ProjLabel::SpecialP(b)) => match (a - b).abs() {
            0 => 2,
            1 => 1,
            _ => 0,
        },
        _ => 0,
    }
}

fn hom_sum(left: &GDecomp, right: &GDecomp) -> u128 {
    let mut total: u128 = 0;
    for (p, kp) in left.iter() {
        for (q, kq) in right.iter() {
            let h = hom_dim_projectives(p, q);
            if h > 0 {
                total += kp as u128 * kq as u128 * h as u128;
            }
        }
    }
    total
}

/// dim Hom between two Schwartz spaces computed through their projective
/// decompositions; must reproduce the circular Delannoy numbers.
pub fn hom_dim_schwartz(n: u32, m: u32) -> Result<u128, Error> {
    Ok(hom_sum(&schwartz_g_decomp(n)?, &schwartz_g_decomp(m)?))
}

/// The same Hom sum but with both Schwartz spaces decomposed by closed
/// formulas instead of flattening; `rule` picks the generic multiplicity
/// convention.
pub fn hom_dim_schwartz_closed(n: u32, m: u32, rule: GenericMultRule) -> Result<u128, Error> {
    let build = |k: u32| -> GDecomp {
        let mut out = GDecomp::new();
        for sp in -(k as i64 - 1)..=(k as i64 - 1) {
            out.add(ProjLabel::SpecialP(sp), schwartz_special_mult_closed(sp, k));
        }
        let mut seen = std::collections::BTreeSet::new();
        for len in 1..=k as usize {
            for w in weights_of_length(len) {
                let class = CyclicClass::new(&w).expect("nonempty");
                if !seen.insert(class.clone()) {
                    continue;
                }
                let mult = schwartz_generic_mult_closed(&class, k, rule);
                for label in generic_labels_of_class(&class) {
                    out.add(label, mult);
                }
            }
        }
        out
    };
    if n == 0 || m == 0 {
        return Err(Error::Domain("hom_dim_schwartz_closed needs n, m >= 1".into()));
    }
    Ok(hom_sum(&build(n), &build(m)))
}

// ---------------------------------------------------------------------------
// Simples: restriction, dimension, transpose, duality
// ---------------------------------------------------------------------------

/// Irreducible line-group decomposition of a simple circle module.
pub fn restrict_simple(s: &SimpleGLabel) -> HDecomp {
    match s {
        SimpleGLabel::Trivial => [(Weight::empty(), 1)].into_iter().collect(),
        SimpleGLabel::SpecialM(n) => [(pi(*n), 1)].into_iter().collect(),
        SimpleGLabel::Generic(class, _) => abar_decomp(class.rep()).expect("nonempty"),
    }
}

/// Categorical dimension: generic simples are invisible to the trace.
pub fn categorical_dim(s: &SimpleGLabel) -> i64 {
    match s {
        SimpleGLabel::Trivial => 1,
        SimpleGLabel::Generic(..) => 0,
        SimpleGLabel::SpecialM(n) => {
            if n.rem_euclid(2) == 0 {
                1
            } else {
                -1
            }
        }
    }
}

/// Transpose of a simple label: M_{λ,ζ} ↦ M_{λ†,ζ⁻¹} and M(n) ↦ M(−n).
pub fn transpose_label(s: &SimpleGLabel) -> SimpleGLabel {
    match s {
        SimpleGLabel::Trivial => SimpleGLabel::Trivial,
        SimpleGLabel::SpecialM(n) => SimpleGLabel::special(-n),
        SimpleGLabel::Generic(class, zeta) => {
            SimpleGLabel::generic(class.transpose(), zeta.inverse())
                .expect("transpose preserves genericity")
        }
    }
}

/// Dual of a special simple: M(n)ᵛ = M(−n). Duals of generic simples are
/// not exposed.
pub fn dual_special(s: &SimpleGLabel) -> Result<SimpleGLabel, Error> {
    match s {
        SimpleGLabel::Trivial => Ok(SimpleGLabel::Trivial),
        SimpleGLabel::SpecialM(n) => Ok(SimpleGLabel::special(-n)),
        SimpleGLabel::Generic(..) => Err(Error::Domain(
            "duals of generic simples are not part of this calculus".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::induced_h_decomp;

    fn w(s: &str) -> Weight {
        Weight::parse(s).unwrap()
    }

    fn class(s: &str) -> CyclicClass {
        CyclicClass::new(&w(s)).unwrap()
    }

    fn zeta(j: u64, g: u64) -> ZetaExp {
        ZetaExp::new(j, g).unwrap()
    }

    fn p(n: i64) -> ProjLabel {
        ProjLabel::SpecialP(n)
    }

    fn gen(s: &str, j: u64) -> ProjLabel {
        let c = class(s);
        let g = c.aut_order() as u64;
        ProjLabel::generic(c, zeta(j, g)).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&class("bb"), zeta(1, 2)).unwrap(),
            Classification::Special
        );
        assert_eq!(
            classify(&class("bw"), zeta(0, 1)).unwrap(),
            Classification::Generic
        );
        // cube roots other than +1 on the all-black 3-class are generic
        assert_eq!(
            classify(&class("bbb"), zeta(1, 3)).unwrap(),
            Classification::Generic
        );
        assert_eq!(
            classify(&class("bbb"), zeta(0, 3)).unwrap(),
            Classification::Special
        );
    }

    #[test]
    fn standard_data_examples() {
        let d = standard_data(&class("bb"), zeta(1, 2)).unwrap();
        assert_eq!(d.length, 2);
        assert_eq!(d.sub, Some(SimpleGLabel::SpecialM(1)));
        assert_eq!(d.h_decomp, [(w("bb"), 1), (w("b"), 1)].into_iter().collect());
        assert_eq!(d.invariant_dim, 1);
        assert_eq!(d.tau_power_eigenvalue, zeta(1, 2));

        let d = standard_data(&class("bw"), zeta(0, 1)).unwrap();
        assert_eq!(d.length, 1);
        assert_eq!(d.sub, None);
        assert_eq!(d.invariant_dim, 2);
        assert_eq!(
            d.h_decomp,
            [(w("bw"), 1), (w("wb"), 1), (w("b"), 1), (w("w"), 1)]
                .into_iter()
                .collect()
        );

        // the length-one all-white class sits just under the trivial module
        let d = standard_data(&class("w"), zeta(0, 1)).unwrap();
        assert_eq!(d.length, 2);
        assert_eq!(d.sub, Some(SimpleGLabel::Trivial));
    }

    #[test]
    fn delta_filtration_examples() {
        let f = delta_filtration(&w("b")).unwrap();
        assert_eq!(f.subs, [w("bb"), w("bw")]);
        assert_eq!(f.quotient, w("b"));
        assert_eq!(f.h_length_total(), 10);
        assert_eq!(delta_filtration(&w("bw")).unwrap().h_length_total(), 16);
        assert!(delta_filtration(&Weight::empty()).is_err());
    }

    #[test]
    fn induced_decomp_examples() {
        let d = induced_proj_decomp(&Weight::empty());
        assert_eq!(d, [(p(0), 1)].into_iter().collect());

        let d = induced_proj_decomp(&w("b"));
        assert_eq!(
            d,
            [(p(1), 1), (gen("bb", 0), 1), (gen("bw", 0), 1)]
                .into_iter()
                .collect()
        );

        let d = induced_proj_decomp(&w("bb"));
        assert_eq!(
            d,
            [
                (p(2), 1),
                (gen("bb", 0), 1),
                (gen("bbb", 1), 1),
                (gen("bbb", 2), 1),
                (gen("bbw", 0), 1)
            ]
            .into_iter()
            .collect()
        );
    }

    #[test]
    fn induced_decomp_multiplicity_free_and_length_checked() {
        for len in 0..=4usize {
            for mu in weights_of_length(len) {
                let d = induced_proj_decomp(&mu);
                for (_, k) in d.iter() {
                    assert_eq!(k, 1, "mu={mu}");
                }
                assert_eq!(
                    d.h_restriction().total_length(),
                    6 * len as u64 + 4,
                    "mu={mu}"
                );
                assert_eq!(d.h_restriction(), induced_h_decomp(&mu), "mu={mu}");
            }
        }
    }

    #[test]
    fn schwartz_examples() {
        assert_eq!(
            schwartz_g_decomp(1).unwrap(),
            [(p(0), 1)].into_iter().collect()
        );
        assert_eq!(
            schwartz_g_decomp(2).unwrap(),
            [
                (p(0), 1),
                (p(1), 1),
                (p(-1), 1),
                (gen("bb", 0), 1),
                (gen("ww", 0), 1),
                (gen("bw", 0), 2)
            ]
            .into_iter()
            .collect()
        );
        let d3 = schwartz_g_decomp(3).unwrap();
        assert_eq!(d3.get(&p(1)), 2);
        assert_eq!(d3.get(&p(-1)), 2);
    }

    #[test]
    fn schwartz_closed_forms_match_flattening() {
        for n in 1..=5u32 {
            let d = schwartz_g_decomp(n).unwrap();
            for (label, k) in d.iter() {
                match label {
                    ProjLabel::SpecialP(m) => {
                        assert_eq!(k, schwartz_special_mult_closed(*m, n), "P({m}) in n={n}")
                    }
                    ProjLabel::GenericSimple(c, _) => assert_eq!(
                        k,
                        schwartz_generic_mult_closed(c, n, GenericMultRule::RotationCount),
                        "class {c} in n={n}"
                    ),
                }
            }
            // every key restricts to weights of length <= n
            for (wt, _) in d.h_restriction().iter() {
                assert!(wt.len() <= n as usize);
            }
        }
    }

    #[test]
    fn hom_dims_between_projectives() {
        assert_eq!(hom_dim_projectives(&p(0), &p(1)), 1);
        assert_eq!(hom_dim_projectives(&p(0), &p(0)), 2);
        assert_eq!(hom_dim_projectives(&p(0), &p(2)), 0);
        assert_eq!(hom_dim_projectives(&gen("bw", 0), &gen("bw", 0)), 1);
        assert_eq!(hom_dim_projectives(&gen("bw", 0), &gen("bb", 0)), 0);
        assert_eq!(hom_dim_projectives(&gen("bb", 0), &p(2)), 0);
    }

    #[test]
    fn hom_dim_schwartz_reproduces_loop_counts() {
        assert_eq!(hom_dim_schwartz(1, 1).unwrap(), 2);
        assert_eq!(hom_dim_schwartz(2, 1).unwrap(), 4);
        assert_eq!(hom_dim_schwartz(2, 2).unwrap(), 16);
        for n in 1..=4u32 {
            for m in 1..=4u32 {
                assert_eq!(
                    hom_dim_schwartz(n, m).unwrap(),
                    crate::lattice::count_loops_formula(n, m),
                    "(n,m)=({n},{m})"
                );
            }
        }
    }

    #[test]
    fn printed_multiplicity_rule_fails() {
        // the stabilizer-order reading overcounts: 19 instead of C(2,2)=16
        assert_eq!(
            hom_dim_schwartz_closed(2, 2, GenericMultRule::StabilizerOrder).unwrap(),
            19
        );
        assert_eq!(
            hom_dim_schwartz_closed(2, 2, GenericMultRule::RotationCount).unwrap(),
            16
        );
        for n in 1..=4u32 {
            for m in 1..=4u32 {
                assert_eq!(
                    hom_dim_schwartz_closed(n, m, GenericMultRule::RotationCount).unwrap(),
                    hom_dim_schwartz(n, m).unwrap()
                );
            }
        }
    }

    #[test]
    fn restriction_of_simples() {
        assert_eq!(
            restrict_simple(&SimpleGLabel::SpecialM(2)),
            [(w("bb"), 1)].into_iter().collect()
        );
        assert_eq!(
            restrict_simple(&SimpleGLabel::Trivial),
            [(Weight::empty(), 1)].into_iter().collect()
        );
        let m = SimpleGLabel::generic(class("bw"), zeta(0, 1)).unwrap();
        assert_eq!(
            restrict_simple(&m),
            [(w("bw"), 1), (w("wb"), 1), (w("b"), 1), (w("w"), 1)]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn categorical_dims() {
        let m = SimpleGLabel::generic(class("bw"), zeta(0, 1)).unwrap();
        assert_eq!(categorical_dim(&m), 0);
        assert_eq!(categorical_dim(&SimpleGLabel::SpecialM(1)), -1);
        assert_eq!(categorical_dim(&SimpleGLabel::SpecialM(-2)), 1);
        assert_eq!(categorical_dim(&SimpleGLabel::Trivial), 1);
    }

    #[test]
    fn transpose_and_duality() {
        let m = SimpleGLabel::generic(class("bww"), zeta(0, 1)).unwrap();
        let t = transpose_label(&m);
        match &t {
            SimpleGLabel::Generic(c, z) => {
                assert_eq!(c, &class("bbw"));
                assert_eq!(*z, zeta(0, 1));
            }
            other => panic!("unexpected transpose {other:?}"),
        }
        assert_eq!(transpose_label(&t), m);
        assert_eq!(
            dual_special(&SimpleGLabel::SpecialM(3)).unwrap(),
            SimpleGLabel::SpecialM(-3)
        );
        assert_eq!(
            dual_special(&SimpleGLabel::Trivial).unwrap(),
            SimpleGLabel::Trivial
        );
        assert!(dual_special(&m).is_err());
        assert_eq!(
            transpose_label(&SimpleGLabel::SpecialM(2)),
            SimpleGLabel::SpecialM(-2)
        );
    }

    #[test]
    fn proj_label_serde() {
        let l = gen("bw", 0);
        let json = serde_json::to_string(&l).unwrap();
        assert_eq!(json, r#"{"kind":"generic","class":"bw","zeta":0}"#);
        assert_eq!(serde_json::from_str::<ProjLabel>(&json).unwrap(), l);
        let l = p(1);
        let json = serde_json::to_string(&l).unwrap();
        assert_eq!(json, r#"{"kind":"P","n":1}"#);
        assert_eq!(serde_json::from_str::<ProjLabel>(&json).unwrap(), l);
        // special pairs are rejected as generic labels
        assert!(serde_json::from_str::<ProjLabel>(
            r#"{"kind":"generic","class":"bb","zeta":1}"#
        )
        .is_err());
    }
}
