//! Monomial ideals over two ambient semigroups — the normal cone semigroup
//! `σ∨ ∩ M` and a finitely generated `Λ` — together with the logarithmic
//! Jacobian and Jacobian ideal constructors.
//!
//! Membership is decided componentwise over the normal cone, and by a
//! bounded enumeration over `Λ`; the two semantics give different minimal
//! generating sets and must not be conflated.

use crate::lattice::{wedge_nonzero, Basis, IntMat, Lattice, LatticeError, Rat, RatVec};
use crate::semigroup::{QOSemigroup, SemigroupError, DEFAULT_MEMBER_BUDGET};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IdealError {
    #[error("exponent does not lie in the ambient semigroup")]
    NotInAmbient,
    #[error("ideals live over different ambient semigroups")]
    AmbientMismatch,
    #[error("relation matrix has rank below the codimension")]
    RankDeficient,
    #[error("relation vector {0} is not in the kernel of the generator map")]
    NotInKernel(usize),
    #[error("operation is not available in dimension {0}")]
    UnsupportedDimension(usize),
    #[error("the branch is not normalized; the surface equality requires it")]
    NotNormalized,
    #[error("a shifted generator falls outside the ambient semigroup")]
    GeneratorOutsideCone,
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Ambient semigroup a monomial ideal lives over.
#[derive(Debug, Clone)]
pub enum AmbientKind {
    /// The saturated semigroup `σ∨ ∩ M` of the normalization.
    NormalCone,
    /// A finitely generated `Λ ⊂ σ∨` with `ZΛ = M`.
    FinGen {
        generators: Vec<RatVec>,
        /// When `Λ` is the semigroup of a quasi-ordinary branch, membership
        /// is decided by the exact descending reduction instead of the
        /// enumeration oracle.
        qo: Option<Arc<QOSemigroup>>,
    },
}

#[derive(Debug, Clone)]
pub struct Ambient {
    d: usize,
    lattice: Lattice,
    kind: AmbientKind,
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        if self.d != other.d || self.lattice != other.lattice {
            return false;
        }
        match (&self.kind, &other.kind) {
            (AmbientKind::NormalCone, AmbientKind::NormalCone) => true,
            (AmbientKind::FinGen { generators: a, .. }, AmbientKind::FinGen { generators: b, .. }) => a == b,
            _ => false,
        }
    }
}

impl Ambient {
    /// The normal semigroup `σ∨ ∩ M`.
    pub fn normal_cone(m: Lattice) -> Arc<Ambient> {
        Arc::new(Ambient { d: m.dim(), lattice: m, kind: AmbientKind::NormalCone })
    }

    /// A finitely generated ambient; the generators must lie in
    /// `σ∨ ∖ {0}` and span a full-rank lattice.
    pub fn fin_gen(d: usize, generators: Vec<RatVec>) -> Result<Arc<Ambient>, IdealError> {
        if generators.iter().any(|g| !g.is_nonnegative() || g.is_zero()) {
            return Err(IdealError::NotInAmbient);
        }
        let lattice = Lattice::from_generators(d, &generators)?;
        Ok(Arc::new(Ambient { d, lattice, kind: AmbientKind::FinGen { generators, qo: None } }))
    }

    /// The semigroup `Γ` of a quasi-ordinary branch as a finitely generated
    /// ambient with fast membership.
    pub fn fin_gen_qo(s: &Arc<QOSemigroup>) -> Arc<Ambient> {
        Arc::new(Ambient {
            d: s.d,
            lattice: s.m_lattice().clone(),
            kind: AmbientKind::FinGen { generators: s.gens.clone(), qo: Some(Arc::clone(s)) },
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn kind(&self) -> &AmbientKind {
        &self.kind
    }

    /// Membership of `v` in the ambient semigroup.
    pub fn semigroup_member(&self, v: &RatVec) -> Result<bool, IdealError> {
        match &self.kind {
            AmbientKind::NormalCone => Ok(v.is_nonnegative() && self.lattice.contains(v)?),
            AmbientKind::FinGen { generators, qo } => match qo {
                Some(s) => Ok(s.contains(v)),
                None => Ok(enumeration_member(generators, &self.lattice, v)?),
            },
        }
    }
}

/// Enumeration membership for a finitely generated semigroup: search for 0
/// by subtracting generators while staying in `σ∨`.
fn enumeration_member(gens: &[RatVec], lattice: &Lattice, v: &RatVec) -> Result<bool, SemigroupError> {
    use std::collections::HashSet;
    let cap = BigInt::from(DEFAULT_MEMBER_BUDGET);
    let scale = lattice.denominator_scale();
    let scaled = (v.coord_sum() * Rat::from_integer(scale.clone())).ceil().to_integer();
    if scaled > cap {
        return Err(SemigroupError::BudgetExceeded { got: scaled, cap });
    }
    if !v.is_nonnegative() {
        return Ok(false);
    }
    let start = match lattice.member_coordinates(v)? {
        Some(c) => c,
        None => return Ok(false),
    };
    let mut gens_m: Vec<(Vec<BigInt>, RatVec)> = gens
        .iter()
        .filter_map(|g| lattice.member_coordinates(g).ok().flatten().map(|c| (c, g.clone())))
        .collect();
    gens_m.sort_by(|a, b| b.1.coord_sum().cmp(&a.1.coord_sum()));
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    let mut stack = vec![(start.clone(), v.clone())];
    seen.insert(start);
    while let Some((coords, e)) = stack.pop() {
        if coords.iter().all(|x| x.is_zero()) {
            return Ok(true);
        }
        for (gm, ge) in &gens_m {
            let e_next = e.sub(ge);
            if !e_next.is_nonnegative() {
                continue;
            }
            let next: Vec<BigInt> = coords.iter().zip(gm).map(|(a, b)| a - b).collect();
            if seen.insert(next.clone()) {
                stack.push((next, e_next));
            }
        }
    }
    Ok(false)
}

/// A monomial ideal given by a finite set of exponents in its ambient
/// semigroup.
#[derive(Debug, Clone)]
pub struct MonomialIdeal {
    ambient: Arc<Ambient>,
    gens: Vec<RatVec>,
    minimal: bool,
}

impl MonomialIdeal {
    /// Build an ideal, validating that every generator lies in the ambient
    /// semigroup.
    pub fn new(ambient: Arc<Ambient>, gens: Vec<RatVec>) -> Result<Self, IdealError> {
        for g in &gens {
            if !ambient.semigroup_member(g)? {
                return Err(IdealError::NotInAmbient);
            }
        }
        Ok(Self::new_unchecked(ambient, gens))
    }

    /// Build an ideal whose generators are known to lie in the ambient
    /// semigroup (internal constructors).
    pub fn new_unchecked(ambient: Arc<Ambient>, gens: Vec<RatVec>) -> Self {
        let mut deduped: Vec<RatVec> = Vec::with_capacity(gens.len());
        for g in gens {
            if !deduped.contains(&g) {
                deduped.push(g);
            }
        }
        MonomialIdeal { ambient, gens: deduped, minimal: false }
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn gens(&self) -> &[RatVec] {
        &self.gens
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// An ideal is proper unless it contains the monomial `X^0 = 1`.
    pub fn is_proper(&self) -> bool {
        !self.gens.iter().any(|g| g.is_zero())
    }

    /// Membership of `X^α` in the ideal.
    pub fn member(&self, alpha: &RatVec) -> Result<bool, IdealError> {
        if !self.ambient.semigroup_member(alpha)? {
            return Err(IdealError::NotInAmbient);
        }
        self.member_of_ambient_element(alpha)
    }

    /// Membership for an `α` already known to lie in the ambient semigroup.
    fn member_of_ambient_element(&self, alpha: &RatVec) -> Result<bool, IdealError> {
        match &self.ambient.kind {
            AmbientKind::NormalCone => Ok(self.gens.iter().any(|b| b.leq(alpha))),
            AmbientKind::FinGen { generators, qo } => {
                for b in &self.gens {
                    let diff = alpha.sub(b);
                    let inside = match qo {
                        Some(s) => s.contains(&diff),
                        None => enumeration_member(generators, &self.ambient.lattice, &diff)?,
                    };
                    if inside {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// The unique minimal generating set: drop every exponent that lies in
    /// the ideal generated by the others. Idempotent.
    pub fn minimalize(&self) -> Result<MonomialIdeal, IdealError> {
        let mut keep: Vec<RatVec> = Vec::with_capacity(self.gens.len());
        for (i, alpha) in self.gens.iter().enumerate() {
            let others: Vec<RatVec> = self
                .gens
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let rest = MonomialIdeal { ambient: Arc::clone(&self.ambient), gens: others, minimal: false };
            if !rest.member_of_ambient_element(alpha)? {
                keep.push(alpha.clone());
            }
        }
        Ok(MonomialIdeal { ambient: Arc::clone(&self.ambient), gens: keep, minimal: true })
    }

    /// The shifted ideal `X^γ · I`.
    pub fn scale_by_monomial(&self, gamma: &RatVec) -> Result<MonomialIdeal, IdealError> {
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let shifted = g.add(gamma);
            if !self.ambient.semigroup_member(&shifted)? {
                return Err(IdealError::GeneratorOutsideCone);
            }
            gens.push(shifted);
        }
        Ok(MonomialIdeal::new_unchecked(Arc::clone(&self.ambient), gens))
    }

    /// Minkowski product of two monomial ideals over the same ambient.
    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        if self.ambient.as_ref() != other.ambient.as_ref() {
            return Err(IdealError::AmbientMismatch);
        }
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.add(b));
            }
        }
        Ok(MonomialIdeal::new_unchecked(Arc::clone(&self.ambient), gens))
    }

    /// `I^k` by repeated Minkowski products.
    pub fn power(&self, k: usize) -> Result<MonomialIdeal, IdealError> {
        assert!(k >= 1);
        let mut out = self.clone();
        for _ in 1..k {
            out = out.product(self)?.minimalize()?;
        }
        Ok(out)
    }

    /// Reinterpret the generators over `σ∨ ∩ M`: the extension of the
    /// ideal to the normalization.
    pub fn extend_to_normal_cone(&self) -> MonomialIdeal {
        let ambient = Ambient::normal_cone(self.ambient.lattice.clone());
        MonomialIdeal::new_unchecked(ambient, self.gens.clone())
    }
}

/// Inclusion `I ⊆ J`, tested on the generators of `I`.
pub fn ideal_subset(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<bool, IdealError> {
    if i.ambient().as_ref() != j.ambient().as_ref() {
        return Err(IdealError::AmbientMismatch);
    }
    for g in i.gens() {
        if !j.member_of_ambient_element(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Logarithmic Jacobian ideal of the toric variety spanned by `gens`:
/// sums `α_{j_1} + ⋯ + α_{j_d}` over subsets with nonzero wedge,
/// minimalized over the given ambient.
pub fn log_jacobian(gens: &[RatVec], ambient: Arc<Ambient>) -> Result<MonomialIdeal, IdealError> {
    log_jacobian_full(gens, ambient)?.minimalize()
}

/// As [`log_jacobian`] but without the final minimalization.
pub fn log_jacobian_full(gens: &[RatVec], ambient: Arc<Ambient>) -> Result<MonomialIdeal, IdealError> {
    let d = ambient.dim();
    let mut exponents = Vec::new();
    for subset in combinations(gens.len(), d) {
        let vs: Vec<RatVec> = subset.iter().map(|&j| gens[j].clone()).collect();
        if wedge_nonzero(&vs)? {
            let mut sum = RatVec::zero(d, Basis::E);
            for v in &vs {
                sum = sum.add(v);
            }
            exponents.push(sum);
        }
    }
    Ok(MonomialIdeal::new_unchecked(ambient, exponents))
}

/// `ℐ_g`: the logarithmic Jacobian ideal of the monomial variety of `Γ`,
/// extended to the normalization (ambient `σ∨ ∩ M`).
pub fn toric_log_jacobian(s: &QOSemigroup) -> Result<MonomialIdeal, IdealError> {
    log_jacobian(&s.gens, Ambient::normal_cone(s.m_lattice().clone()))
}

/// The full generator list of `ℐ_g`, one sum per independent `d`-subset.
pub fn toric_log_jacobian_full(s: &QOSemigroup) -> Result<MonomialIdeal, IdealError> {
    log_jacobian_full(&s.gens, Ambient::normal_cone(s.m_lattice().clone()))
}

/// `𝒥_g`: the logarithmic Jacobian ideal of the hypersurface, generated by
/// `Σ e_j` together with `e_1 + ⋯ + ê_i + ⋯ + e_d + λ_{m_i}` for every
/// coordinate with `m_i ≤ g`. Note the characteristic exponents `λ_{m_i}`
/// enter here, not the semigroup generators `λ̄_{m_i}`.
pub fn hyper_log_jacobian(s: &QOSemigroup) -> Result<MonomialIdeal, IdealError> {
    hyper_log_jacobian_full(s)?.minimalize()
}

/// The generator list of `𝒥_g` before minimalization.
pub fn hyper_log_jacobian_full(s: &QOSemigroup) -> Result<MonomialIdeal, IdealError> {
    let d = s.d;
    let unit_sum = Lattice::standard(d)
        .basis()
        .iter()
        .fold(RatVec::zero(d, Basis::E), |acc, e| acc.add(e));
    let mut exponents = vec![unit_sum.clone()];
    for i in 0..d {
        let m_i = s.m_idx[i];
        if m_i <= s.g {
            let e_i = Lattice::standard(d).basis()[i].clone();
            exponents.push(unit_sum.sub(&e_i).add(&s.exps[m_i - 1]));
        }
    }
    Ok(MonomialIdeal::new_unchecked(Ambient::normal_cone(s.m_lattice().clone()), exponents))
}

/// Jacobian ideal of the toric variety `Z^Λ` presented by `gens` and the
/// relation vectors `rels` (rows of the matrix of relations).
///
/// For every kept-row subset of size `m − d` with full rank and every
/// deleted-column subset `{j_1 < ⋯ < j_d}` with nonzero wedge, emits
/// `Σ ψ(n_i^+) − Σ_{j ∉ {j_1..j_d}} α_j`; the result is minimalized over
/// the ambient.
pub fn jacobian_toric(
    gens: &[RatVec],
    rels: &[Vec<BigInt>],
    ambient: Arc<Ambient>,
) -> Result<MonomialIdeal, IdealError> {
    let d = ambient.dim();
    let m = gens.len();
    assert!(m >= d);
    let codim = m - d;
    // relation rows must pair to zero with the generators
    for (idx, rel) in rels.iter().enumerate() {
        if rel.len() != m {
            return Err(IdealError::NotInKernel(idx + 1));
        }
        let mut sum = RatVec::zero(d, Basis::E);
        for (coeff, alpha) in rel.iter().zip(gens) {
            sum = sum.add(&alpha.scale(&Rat::from_integer(coeff.clone())));
        }
        if !sum.is_zero() {
            return Err(IdealError::NotInKernel(idx + 1));
        }
    }
    let rel_mat = IntMat::new(rels.len(), m, rels.iter().flat_map(|r| r.iter().cloned()).collect());
    if rel_mat.rank() != codim {
        return Err(IdealError::RankDeficient);
    }
    // ψ(n^+) per relation row
    let psi_plus: Vec<RatVec> = rels
        .iter()
        .map(|rel| {
            let mut sum = RatVec::zero(d, Basis::E);
            for (coeff, alpha) in rel.iter().zip(gens) {
                if coeff.is_positive() {
                    sum = sum.add(&alpha.scale(&Rat::from_integer(coeff.clone())));
                }
            }
            sum
        })
        .collect();
    let total: RatVec = gens.iter().fold(RatVec::zero(d, Basis::E), |acc, g| acc.add(g));

    let mut exponents = Vec::new();
    for kept_rows in combinations(rels.len(), codim) {
        let sub = IntMat::new(codim, m, kept_rows.iter().flat_map(|&i| rels[i].iter().cloned()).collect());
        if sub.rank() != codim {
            continue;
        }
        let psi_sum = kept_rows
            .iter()
            .fold(RatVec::zero(d, Basis::E), |acc, &i| acc.add(&psi_plus[i]));
        for deleted_cols in combinations(m, d) {
            let vs: Vec<RatVec> = deleted_cols.iter().map(|&j| gens[j].clone()).collect();
            if !wedge_nonzero(&vs)? {
                continue;
            }
            let kept_sum = deleted_cols.iter().fold(total.clone(), |acc, &j| acc.sub(&gens[j]));
            exponents.push(psi_sum.sub(&kept_sum));
        }
    }
    MonomialIdeal::new_unchecked(ambient, exponents).minimalize()
}

/// Jacobian ideal of the monomial variety `Z^Γ` from its canonical
/// presentation, as an ideal of `C[Γ]`.
pub fn jacobian_toric_qo(s: &Arc<QOSemigroup>) -> Result<MonomialIdeal, IdealError> {
    let rels: Vec<Vec<BigInt>> = (0..s.g).map(|j| s.rel_matrix.row(j).to_vec()).collect();
    jacobian_toric(&s.gens, &rels, Ambient::fin_gen_qo(s))
}

/// `Jac(S)·O_Z = X^{γ_0} 𝒥_g` for a quasi-ordinary hypersurface of
/// dimension at most two. For surfaces the equality requires a normalized
/// branch; higher dimensions are refused (the inclusion-side ideal is
/// available through [`jac_qo_lower_bound`]).
pub fn jac_qo(s: &QOSemigroup) -> Result<MonomialIdeal, IdealError> {
    if s.d > 2 {
        return Err(IdealError::UnsupportedDimension(s.d));
    }
    if s.d == 2 && !s.normalized {
        return Err(IdealError::NotNormalized);
    }
    jac_qo_lower_bound(s)
}

/// The ideal `X^{γ_0} 𝒥_g` in any dimension. For `d ≥ 3` this is only a
/// lower bound for `Jac(S)·O_Z`.
pub fn jac_qo_lower_bound(s: &QOSemigroup) -> Result<MonomialIdeal, IdealError> {
    let jg = hyper_log_jacobian(s)?;
    jg.scale_by_monomial(&s.frobenius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::parse_rational;
    use crate::semigroup::{build_semigroup, validate};

    fn rat(s: &str) -> Rat {
        parse_rational(s).unwrap()
    }

    fn surface() -> Arc<QOSemigroup> {
        let exps = vec![
            vec![rat("3/2"), rat("0")],
            vec![rat("7/4"), rat("0")],
            vec![rat("2"), rat("1/2")],
        ];
        Arc::new(build_semigroup(&validate(&exps, 2).unwrap()).unwrap())
    }

    fn cusp() -> Arc<QOSemigroup> {
        Arc::new(build_semigroup(&validate(&[vec![rat("3/2")]], 1).unwrap()).unwrap())
    }

    fn m_coords(s: &QOSemigroup, i: &MonomialIdeal) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = i
            .gens()
            .iter()
            .map(|g| {
                s.to_m_coords(g)
                    .unwrap()
                    .iter()
                    .map(|x| i64::try_from(x).unwrap())
                    .collect()
            })
            .collect();
        out.sort();
        out
    }

    fn lambda_ambient() -> (Vec<RatVec>, Arc<Ambient>) {
        let gens = vec![
            RatVec::from_ints(&[2, 0], Basis::E),
            RatVec::from_ints(&[0, 2], Basis::E),
            RatVec::from_ints(&[3, 0], Basis::E),
            RatVec::from_ints(&[7, 1], Basis::E),
        ];
        let ambient = Ambient::fin_gen(2, gens.clone()).unwrap();
        (gens, ambient)
    }

    #[test]
    fn member_over_normal_cone() {
        let s = surface();
        let ig = toric_log_jacobian(&s).unwrap();
        let alpha = RatVec::from_ints(&[6, 2], Basis::M);
        assert!(ig.member(&s.resolve_to_e(&alpha)).unwrap());
        for g in ig.gens() {
            assert!(ig.member(g).unwrap());
        }
    }

    #[test]
    fn member_over_fin_gen_rejects_near_miss() {
        let (_, ambient) = lambda_ambient();
        let listed = MonomialIdeal::new(
            Arc::clone(&ambient),
            vec![
                RatVec::from_ints(&[10, 1], Basis::E),
                RatVec::from_ints(&[17, 0], Basis::E),
                RatVec::from_ints(&[15, 2], Basis::E),
                RatVec::from_ints(&[18, 0], Basis::E),
            ],
        )
        .unwrap();
        assert!(!listed.member(&RatVec::from_ints(&[11, 1], Basis::E)).unwrap());
        assert!(listed.member(&RatVec::from_ints(&[12, 1], Basis::E)).unwrap());
    }

    #[test]
    fn minimalize_hypersurface_log_jacobian() {
        let s = surface();
        let jg = hyper_log_jacobian(&s).unwrap();
        assert_eq!(m_coords(&s, &jg), vec![vec![4, 2], vec![12, 1]]);
        let again = jg.minimalize().unwrap();
        assert_eq!(m_coords(&s, &again), vec![vec![4, 2], vec![12, 1]]);
    }

    #[test]
    fn minimalize_toric_log_jacobian() {
        let s = surface();
        let ig = toric_log_jacobian(&s).unwrap();
        assert_eq!(m_coords(&s, &ig), vec![vec![4, 2], vec![31, 1]]);
    }

    #[test]
    fn minimalize_keeps_single_generator() {
        let s = surface();
        let ambient = Ambient::normal_cone(s.m_lattice().clone());
        let one = MonomialIdeal::new_unchecked(ambient, vec![s.gens[0].clone()]);
        let min = one.minimalize().unwrap();
        assert_eq!(min.gens().len(), 1);
    }

    #[test]
    fn hypersurface_log_jacobian_paper_form() {
        let s = surface();
        let jg = hyper_log_jacobian_full(&s).unwrap();
        assert_eq!(m_coords(&s, &jg), vec![vec![4, 2], vec![6, 2], vec![12, 1]]);
    }

    #[test]
    fn log_jacobian_of_free_semigroup_is_principal() {
        let s = Arc::new(build_semigroup(&validate(&[], 3).unwrap()).unwrap());
        let ig = toric_log_jacobian(&s).unwrap();
        assert_eq!(ig.gens(), &[RatVec::from_ints(&[1, 1, 1], Basis::E)]);
        let jg = hyper_log_jacobian(&s).unwrap();
        assert_eq!(jg.gens(), &[RatVec::from_ints(&[1, 1, 1], Basis::E)]);
    }

    #[test]
    fn cusp_log_jacobian() {
        let s = cusp();
        let jg = hyper_log_jacobian(&s).unwrap();
        assert_eq!(jg.gens(), &[RatVec::from_ints(&[1], Basis::E)]);
    }

    #[test]
    fn jacobian_toric_reproduces_the_listed_generators() {
        let (gens, ambient) = lambda_ambient();
        let rels = vec![
            vec![BigInt::from(3), BigInt::from(0), BigInt::from(-2), BigInt::from(0)],
            vec![BigInt::from(7), BigInt::from(1), BigInt::from(0), BigInt::from(-2)],
        ];
        let jac = jacobian_toric(&gens, &rels, ambient).unwrap();
        let mut got: Vec<Vec<i64>> = jac
            .gens()
            .iter()
            .map(|g| g.coords().iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect())
            .collect();
        got.sort();
        assert_eq!(got, vec![vec![10, 1], vec![11, 1], vec![15, 2], vec![17, 0], vec![18, 0]]);
    }

    #[test]
    fn jacobian_toric_rejects_bad_relations() {
        let (gens, ambient) = lambda_ambient();
        let bad = vec![vec![BigInt::from(1), BigInt::from(0), BigInt::from(0), BigInt::from(0)]];
        assert!(matches!(
            jacobian_toric(&gens, &bad, Arc::clone(&ambient)),
            Err(IdealError::NotInKernel(1))
        ));
        let deficient = vec![vec![BigInt::from(3), BigInt::from(0), BigInt::from(-2), BigInt::from(0)]];
        assert!(matches!(
            jacobian_toric(&gens, &deficient, ambient),
            Err(IdealError::RankDeficient)
        ));
    }

    #[test]
    fn jacobian_of_monomial_variety_matches_shifted_log_jacobian() {
        let s = surface();
        let jac = jacobian_toric_qo(&s).unwrap().extend_to_normal_cone();
        let shifted = toric_log_jacobian(&s).unwrap().scale_by_monomial(&s.frobenius).unwrap();
        assert!(ideal_subset(&jac, &shifted).unwrap());
        assert!(ideal_subset(&shifted, &jac).unwrap());
    }

    #[test]
    fn jac_qo_surface() {
        let s = surface();
        let jac = jac_qo(&s).unwrap().minimalize().unwrap();
        assert_eq!(m_coords(&s, &jac), vec![vec![46, 1], vec![54, 0]]);
    }

    #[test]
    fn jac_qo_cusp_is_principal() {
        let s = cusp();
        let jac = jac_qo(&s).unwrap().minimalize().unwrap();
        assert_eq!(jac.gens(), &[RatVec::new(vec![rat("3/2")], Basis::E)]);
    }

    #[test]
    fn jac_qo_smooth_surface_is_unit() {
        let s = Arc::new(build_semigroup(&validate(&[], 2).unwrap()).unwrap());
        let jac = jac_qo(&s).unwrap();
        assert!(!jac.is_proper());
        assert_eq!(jac.gens(), &[RatVec::zero(2, Basis::E)]);
    }

    #[test]
    fn jac_qo_refuses_higher_dimension() {
        let exps = vec![vec![rat("3/2"), rat("1/2"), rat("1/2")]];
        let s = build_semigroup(&validate(&exps, 3).unwrap()).unwrap();
        assert!(matches!(jac_qo(&s), Err(IdealError::UnsupportedDimension(3))));
        assert!(jac_qo_lower_bound(&s).is_ok());
    }

    #[test]
    fn jac_qo_requires_normalized_surfaces() {
        let exps = vec![vec![rat("1/2"), rat("0")]];
        let s = build_semigroup(&validate(&exps, 2).unwrap()).unwrap();
        assert!(matches!(jac_qo(&s), Err(IdealError::NotNormalized)));
    }

    #[test]
    fn inclusion_of_log_jacobians() {
        let s = surface();
        let ig = toric_log_jacobian(&s).unwrap();
        let jg = hyper_log_jacobian(&s).unwrap();
        assert!(ideal_subset(&ig, &jg).unwrap());
        assert!(!ideal_subset(&jg, &ig).unwrap());
        assert!(ideal_subset(&ig, &ig).unwrap());
    }

    #[test]
    fn subset_requires_matching_ambient() {
        let s = surface();
        let ig = toric_log_jacobian(&s).unwrap();
        let over_gamma = MonomialIdeal::new_unchecked(Ambient::fin_gen_qo(&s), ig.gens().to_vec());
        assert!(matches!(ideal_subset(&ig, &over_gamma), Err(IdealError::AmbientMismatch)));
    }

    #[test]
    fn scale_by_zero_is_identity() {
        let s = surface();
        let ig = toric_log_jacobian(&s).unwrap();
        let shifted = ig.scale_by_monomial(&RatVec::zero(2, Basis::E)).unwrap();
        assert_eq!(shifted.gens(), ig.gens());
    }

    #[test]
    fn scale_can_reach_the_unit_ideal() {
        let ambient = Ambient::normal_cone(Lattice::standard(1));
        let i = MonomialIdeal::new(ambient, vec![RatVec::from_ints(&[1], Basis::E)]).unwrap();
        let scaled = i.scale_by_monomial(&RatVec::from_ints(&[-1], Basis::E)).unwrap();
        assert!(!scaled.is_proper());
        let err = i.scale_by_monomial(&RatVec::from_ints(&[-2], Basis::E));
        assert!(matches!(err, Err(IdealError::GeneratorOutsideCone)));
    }

    #[test]
    fn member_is_monotone() {
        let s = surface();
        let jg = hyper_log_jacobian(&s).unwrap();
        let alpha = jg.gens()[0].clone();
        let beta = s.gens[1].clone();
        assert!(jg.member(&alpha.add(&beta)).unwrap());
    }
}
