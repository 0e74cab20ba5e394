//! The semigroup of a quasi-ordinary branch: validated characteristic
//! exponents, the lattice chain, generators, relation matrix, Frobenius
//! vector and membership oracles.

use crate::lattice::{lattice_index, Basis, IntMat, Lattice, LatticeError, Rat, RatVec};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("exponent {index} has dimension {got}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, got: usize },
    #[error("exponent {0} has a negative coordinate")]
    NegativeExponent(usize),
    #[error("exponents {0} and {1} are not strictly increasing")]
    NotStrictlyIncreasing(usize, usize),
    #[error("exponent {0} lies in the previous lattice (index 1)")]
    IndexOne(usize),
    #[error("descending reduction failed at row {0}")]
    ReductionFailure(usize),
    #[error("descending reduction of row {0} left a remainder outside Z^d_(>=0)")]
    NegativeRemainder(usize),
    #[error("internal cross-check failed: {0}")]
    CrossCheckMismatch(&'static str),
    #[error("membership query weight {got} exceeds the budget {cap} (scaled units)")]
    BudgetExceeded { got: BigInt, cap: BigInt },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Default cap for the brute-force membership oracle, in scaled integer
/// weight units (weight times the lattice denominator).
pub const DEFAULT_MEMBER_BUDGET: u64 = 1_000_000;

/// A validated sequence of characteristic exponents together with the
/// lattice chain it generates.
#[derive(Debug, Clone)]
pub struct CharExponents {
    pub d: usize,
    /// `λ_1 ≺ … ≺ λ_g`, e-coordinates.
    pub exps: Vec<RatVec>,
    /// `M_0 ⊂ M_1 ⊂ … ⊂ M_g`.
    pub lattices: Vec<Lattice>,
    /// `n_j = [M_j : M_{j-1}]`, each at least 2.
    pub indices: Vec<BigInt>,
    pub normalized: bool,
    pub well_ordered: bool,
}

impl CharExponents {
    pub fn g(&self) -> usize {
        self.exps.len()
    }
}

/// Validate raw exponent vectors and compute the lattice chain.
pub fn validate(raw: &[Vec<Rat>], d: usize) -> Result<CharExponents, SemigroupError> {
    assert!(d >= 1, "ambient dimension must be positive");
    let mut exps = Vec::with_capacity(raw.len());
    for (j, coords) in raw.iter().enumerate() {
        if coords.len() != d {
            return Err(SemigroupError::DimensionMismatch { index: j + 1, expected: d, got: coords.len() });
        }
        if coords.iter().any(|c| c.is_negative()) {
            return Err(SemigroupError::NegativeExponent(j + 1));
        }
        exps.push(RatVec::new(coords.clone(), Basis::E));
    }
    for j in 1..exps.len() {
        if !exps[j - 1].lt(&exps[j]) {
            return Err(SemigroupError::NotStrictlyIncreasing(j, j + 1));
        }
    }
    let mut lattices = vec![Lattice::standard(d)];
    let mut indices = Vec::with_capacity(exps.len());
    for (j, lambda) in exps.iter().enumerate() {
        let next = lattices[j].extend(lambda)?;
        let n = lattice_index(&lattices[j], &next)?;
        if n.is_one() {
            return Err(SemigroupError::IndexOne(j + 1));
        }
        indices.push(n);
        lattices.push(next);
    }
    let well_ordered = has_well_ordered_variables(&exps, d);
    let normalized = well_ordered && first_exponent_rule(&exps);
    Ok(CharExponents { d, exps, lattices, indices, normalized, well_ordered })
}

/// Columns `(λ_{1,i}, …, λ_{g,i})` strictly decreasing in lexicographic
/// order as `i` grows.
fn has_well_ordered_variables(exps: &[RatVec], d: usize) -> bool {
    for i in 1..d {
        let left: Vec<&Rat> = exps.iter().map(|l| l.coord(i - 1)).collect();
        let right: Vec<&Rat> = exps.iter().map(|l| l.coord(i)).collect();
        if !exps.is_empty() && left <= right {
            return false;
        }
    }
    true
}

/// When `λ_1 = (λ_{1,1}, 0, …, 0)` the branch is normalized only if
/// `λ_{1,1} > 1`.
fn first_exponent_rule(exps: &[RatVec]) -> bool {
    match exps.first() {
        None => true,
        Some(l1) => {
            let axial = l1.coords()[1..].iter().all(|c| c.is_zero());
            !axial || l1.coord(0) > &Rat::one()
        }
    }
}

/// The full semigroup package of a quasi-ordinary branch.
///
/// Generators are `γ_i = e_i` for `i ≤ d` and `γ_{d+j} = λ̄_j`, where the
/// `λ̄_j` follow the recursion `λ̄_{j+1} = n_j λ̄_j + λ_{j+1} − λ_j`.
#[derive(Debug, Clone)]
pub struct QOSemigroup {
    pub d: usize,
    pub g: usize,
    /// `γ_1, …, γ_{d+g}` in e-coordinates.
    pub gens: Vec<RatVec>,
    pub exps: Vec<RatVec>,
    pub lattices: Vec<Lattice>,
    pub indices: Vec<BigInt>,
    /// `R(0)`: row `j` holds `ℓ_1^{(j)}, …, ℓ_{d+g}^{(j)}` with
    /// `ℓ_{d+j}^{(j)} = -n_j`.
    pub rel_matrix: IntMat,
    /// `m_i`: first row of the relation matrix with a nonzero entry in
    /// column `i`, or `g+1` when the column vanishes.
    pub m_idx: Vec<usize>,
    /// Minimal Frobenius vector `γ_0`, e-coordinates.
    pub frobenius: RatVec,
    pub normalized: bool,
    pub well_ordered: bool,
}

/// Build the semigroup from validated characteristic exponents.
pub fn build_semigroup(c: &CharExponents) -> Result<QOSemigroup, SemigroupError> {
    let (d, g) = (c.d, c.g());
    let mut gens: Vec<RatVec> = Lattice::standard(d).basis().to_vec();
    // recursion for the λ̄_j, cross-checked against the closed form
    let mut lambda_bar: Vec<RatVec> = Vec::with_capacity(g);
    for j in 0..g {
        let next = if j == 0 {
            c.exps[0].clone()
        } else {
            lambda_bar[j - 1]
                .scale(&Rat::from_integer(c.indices[j - 1].clone()))
                .add(&c.exps[j])
                .sub(&c.exps[j - 1])
        };
        if next != closed_form_generator(c, j + 1) {
            return Err(SemigroupError::CrossCheckMismatch("generator recursion vs closed form"));
        }
        lambda_bar.push(next);
    }
    gens.extend(lambda_bar.iter().cloned());

    let rel_matrix = relation_matrix_impl(c, &gens)?;

    // m_i from the matrix, cross-checked against the supports of the λ̄_j
    let mut m_idx = Vec::with_capacity(d);
    for i in 0..d {
        let from_matrix = (0..g).find(|&j| !rel_matrix.at(j, i).is_zero()).map_or(g + 1, |j| j + 1);
        let from_support = (0..g).find(|&j| !lambda_bar[j].coord(i).is_zero()).map_or(g + 1, |j| j + 1);
        if from_matrix != from_support {
            return Err(SemigroupError::CrossCheckMismatch("m_i from matrix vs generator supports"));
        }
        m_idx.push(from_matrix);
    }

    let mut frobenius = RatVec::zero(d, Basis::E);
    for (j, lb) in lambda_bar.iter().enumerate() {
        frobenius = frobenius.add(&lb.scale(&Rat::from_integer(&c.indices[j] - BigInt::one())));
    }
    for e in Lattice::standard(d).basis() {
        frobenius = frobenius.sub(e);
    }

    Ok(QOSemigroup {
        d,
        g,
        gens,
        exps: c.exps.clone(),
        lattices: c.lattices.clone(),
        indices: c.indices.clone(),
        rel_matrix,
        m_idx,
        frobenius,
        normalized: c.normalized,
        well_ordered: c.well_ordered,
    })
}

/// Closed form for `λ̄_j`:
/// `λ_j + Σ_{l<j} (n_l − 1) n_{l+1} ⋯ n_{j-1} λ_l`.
fn closed_form_generator(c: &CharExponents, j: usize) -> RatVec {
    let mut acc = c.exps[j - 1].clone();
    for l in 1..j {
        let mut coeff = &c.indices[l - 1] - BigInt::one();
        for s in l + 1..j {
            coeff *= &c.indices[s - 1];
        }
        acc = acc.add(&c.exps[l - 1].scale(&Rat::from_integer(coeff)));
    }
    acc
}

/// Relation rows by descending reduction: `v ← n_j λ̄_j`, then for
/// `k = j−1, …, 1` subtract the unique multiple `ℓ_{d+k} ∈ {0, …, n_k−1}`
/// of `λ̄_k` that lands in `M_{k-1}`; the final remainder must lie in
/// `Z^d_{≥0}` and fills the first `d` columns.
fn relation_matrix_impl(c: &CharExponents, gens: &[RatVec]) -> Result<IntMat, SemigroupError> {
    let (d, g) = (c.d, c.g());
    let mut rel = IntMat::zero(g, d + g);
    for j in 1..=g {
        let lb_j = &gens[d + j - 1];
        let v = lb_j.scale(&Rat::from_integer(c.indices[j - 1].clone()));
        let (digits, remainder) =
            descending_reduction(&c.lattices, &c.indices, gens, d, &v, j - 1).ok_or(SemigroupError::ReductionFailure(j))?;
        let rem = remainder.integer_coords().filter(|r| r.iter().all(|x| !x.is_negative()));
        let rem = rem.ok_or(SemigroupError::NegativeRemainder(j))?;
        for (i, x) in rem.into_iter().enumerate() {
            *rel.at_mut(j - 1, i) = x;
        }
        for (k, l) in digits.into_iter().enumerate() {
            *rel.at_mut(j - 1, d + k) = l;
        }
        *rel.at_mut(j - 1, d + j - 1) = -c.indices[j - 1].clone();
    }
    Ok(rel)
}

/// Reduce `v ∈ M_top` through the lattice chain. Returns the digits
/// `ℓ_{d+k}` for `k = 1, …, top` and the remainder in `M_0`.
///
/// Uniqueness of each digit rests on `M_k / M_{k-1}` being cyclic of order
/// `n_k`, generated by the class of `λ̄_k`.
fn descending_reduction(
    lattices: &[Lattice],
    indices: &[BigInt],
    gens: &[RatVec],
    d: usize,
    v: &RatVec,
    top: usize,
) -> Option<(Vec<BigInt>, RatVec)> {
    let mut w = v.clone();
    let mut digits = vec![BigInt::zero(); top];
    for k in (1..=top).rev() {
        let lb_k = &gens[d + k - 1];
        let mut l = BigInt::zero();
        let mut found = false;
        let mut candidate = w.clone();
        while l < indices[k - 1] {
            if lattices[k - 1].contains(&candidate).ok()? {
                found = true;
                break;
            }
            candidate = candidate.sub(lb_k);
            l += BigInt::one();
        }
        if !found {
            return None;
        }
        digits[k - 1] = l;
        w = candidate;
    }
    Some((digits, w))
}

impl QOSemigroup {
    /// The lattice `M = M_g` generated by the semigroup.
    pub fn m_lattice(&self) -> &Lattice {
        &self.lattices[self.g]
    }

    /// The generators `λ̄_1, …, λ̄_g`.
    pub fn lambda_bar(&self) -> &[RatVec] {
        &self.gens[self.d..]
    }

    pub fn relation_matrix(&self) -> &IntMat {
        &self.rel_matrix
    }

    pub fn m_indices(&self) -> &[usize] {
        &self.m_idx
    }

    pub fn frobenius_vector(&self) -> &RatVec {
        &self.frobenius
    }

    /// Multiplicity `n = n_1 ⋯ n_g`.
    pub fn multiplicity(&self) -> BigInt {
        self.indices.iter().product()
    }

    /// Integer coordinates of `v` in the canonical basis of `M`, if `v ∈ M`.
    pub fn to_m_coords(&self, v: &RatVec) -> Option<Vec<BigInt>> {
        assert_eq!(v.basis(), Basis::E);
        self.m_lattice().member_coordinates(v).ok().flatten()
    }

    /// The e-coordinate vector for canonical `M`-coordinates.
    pub fn to_e_coords(&self, coords: &[BigInt]) -> RatVec {
        self.m_lattice().from_coordinates(coords)
    }

    /// Accept a vector in either basis and return its e-coordinate form.
    pub fn resolve_to_e(&self, v: &RatVec) -> RatVec {
        match v.basis() {
            Basis::E => v.clone(),
            Basis::M => {
                let ints = v.integer_coords().expect("M-basis coordinates must be integers");
                self.to_e_coords(&ints)
            }
        }
    }

    /// Membership `v ∈ σ∨ ∩ M`.
    pub fn sigma_member(&self, v: &RatVec) -> bool {
        let v = self.resolve_to_e(v);
        v.is_nonnegative() && self.m_lattice().contains(&v).unwrap_or(false)
    }

    /// Fast exact membership `v ∈ Γ` through the descending reduction.
    pub fn contains(&self, v: &RatVec) -> bool {
        let v = self.resolve_to_e(v);
        if self.m_lattice().contains(&v) != Ok(true) {
            return false;
        }
        match descending_reduction(&self.lattices, &self.indices, &self.gens, self.d, &v, self.g) {
            Some((_, remainder)) => remainder
                .integer_coords()
                .map_or(false, |r| r.iter().all(|x| !x.is_negative())),
            None => false,
        }
    }

    /// Brute-force membership oracle `v ∈ Γ` by bounded enumeration.
    ///
    /// Searches for `0` by repeatedly subtracting generators while staying
    /// in `σ∨`; the weight functional `w(α) = Σ α_i` (e-coordinates) is
    /// strictly positive on every generator, so the search is finite.
    pub fn gamma_member(&self, v: &RatVec) -> Result<bool, SemigroupError> {
        self.gamma_member_with_budget(v, &BigInt::from(DEFAULT_MEMBER_BUDGET))
    }

    pub fn gamma_member_with_budget(&self, v: &RatVec, cap: &BigInt) -> Result<bool, SemigroupError> {
        let v = self.resolve_to_e(v);
        if v.dim() != self.d {
            return Err(SemigroupError::DimensionMismatch { index: 0, expected: self.d, got: v.dim() });
        }
        let m = self.m_lattice();
        let scale = m.denominator_scale();
        let scaled_weight = (v.coord_sum() * Rat::from_integer(scale.clone())).ceil().to_integer();
        if &scaled_weight > cap {
            return Err(SemigroupError::BudgetExceeded { got: scaled_weight, cap: cap.clone() });
        }
        if !v.is_nonnegative() {
            return Ok(false);
        }
        let start = match m.member_coordinates(&v)? {
            Some(coords) => coords,
            None => return Ok(false),
        };
        // generators in M-coordinates, heaviest first so the search
        // descends quickly
        let mut gens_m: Vec<(Vec<BigInt>, RatVec)> = self
            .gens
            .iter()
            .map(|gamma| (self.to_m_coords(gamma).expect("generators lie in M"), gamma.clone()))
            .collect();
        gens_m.sort_by(|a, b| b.1.coord_sum().cmp(&a.1.coord_sum()));

        let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
        let mut stack: Vec<(Vec<BigInt>, RatVec)> = vec![(start.clone(), v)];
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

    /// Weight `w(v)`: sum of e-coordinates.
    pub fn weight(&self, v: &RatVec) -> Rat {
        self.resolve_to_e(v).coord_sum()
    }
}
