//! Exact lattice linear algebra: rational vectors with basis tags, integer
//! matrices with Hermite normal form, lattice membership and indices.
//!
//! Everything here is arbitrary-precision rational/integer arithmetic; there
//! is no floating point anywhere in the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generators do not span a rank-{0} lattice")]
    NotFullRank(usize),
    #[error("first lattice is not contained in the second")]
    NotSublattice,
    #[error("determinant ratio of nested lattices is not an integer")]
    NonIntegerIndex,
    #[error("zero vector has no primitive representative")]
    ZeroVector,
}

/// Coordinate system a vector is expressed in: the canonical basis
/// `e_1..e_d` of `Z^d`, or the chosen integral basis of a finer lattice `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    E,
    M,
}

/// A rational vector tagged with the basis its coordinates refer to.
///
/// Arithmetic on vectors with different tags or lengths is a programming
/// error and panics; conversions between bases are explicit operations on
/// [`crate::semigroup::QOSemigroup`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatVec {
    coords: Vec<Rat>,
    basis: Basis,
}

impl RatVec {
    pub fn new(coords: Vec<Rat>, basis: Basis) -> Self {
        RatVec { coords, basis }
    }

    pub fn from_ints(coords: &[i64], basis: Basis) -> Self {
        RatVec::new(coords.iter().map(|&c| Rat::from_integer(c.into())).collect(), basis)
    }

    pub fn zero(dim: usize, basis: Basis) -> Self {
        RatVec::new(vec![Rat::zero(); dim], basis)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn check_compatible(&self, other: &RatVec) {
        assert_eq!(self.basis, other.basis, "mixing vectors from different bases");
        assert_eq!(self.coords.len(), other.coords.len(), "mixing vectors of different dimensions");
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        self.check_compatible(other);
        RatVec::new(
            self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
            self.basis,
        )
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        self.check_compatible(other);
        RatVec::new(
            self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
            self.basis,
        )
    }

    pub fn scale(&self, k: &Rat) -> RatVec {
        RatVec::new(self.coords.iter().map(|c| c * k).collect(), self.basis)
    }

    /// Componentwise `self <= other` (the order written `⪯` on exponents).
    pub fn leq(&self, other: &RatVec) -> bool {
        self.check_compatible(other);
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// Strict componentwise order: `self ⪯ other` and `self != other`.
    pub fn lt(&self, other: &RatVec) -> bool {
        self.leq(other) && self != other
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    /// Sum of coordinates; used as the weight functional on e-coordinates.
    pub fn coord_sum(&self) -> Rat {
        self.coords.iter().sum()
    }

    /// Pairing with an integer covector of the same length.
    pub fn pair(&self, covector: &[BigInt]) -> Rat {
        assert_eq!(self.coords.len(), covector.len());
        self.coords
            .iter()
            .zip(covector)
            .map(|(c, n)| c * Rat::from_integer(n.clone()))
            .sum()
    }

    /// The coordinates as integers, if every entry is integral.
    pub fn integer_coords(&self) -> Option<Vec<BigInt>> {
        self.coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Parse a rational written as `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().map_err(|_| format!("invalid integer `{num}`"))?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| format!("invalid integer `{d}`"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rat::new(n, d))
}

/// Dense integer matrix, row-major, arbitrary precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMat { rows, cols, entries }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let entries = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c);
                row.iter().map(|&x| BigInt::from(x))
            })
            .collect();
        IntMat::new(r, c, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.at(k, j);
                    *out.at_mut(i, j) += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Submatrix with the listed columns removed.
    pub fn delete_columns(&self, deleted: &[usize]) -> IntMat {
        let keep: Vec<usize> = (0..self.cols).filter(|j| !deleted.contains(j)).collect();
        let mut out = IntMat::zero(self.rows, keep.len());
        for i in 0..self.rows {
            for (jj, &j) in keep.iter().enumerate() {
                *out.at_mut(i, jj) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let (h, _) = hnf(self);
        (0..h.rows).filter(|&i| !h.row(i).iter().all(Zero::is_zero)).count()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = num.checked_div(&prev).expect("Bareiss division is exact");
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = a[k * n + k].clone();
        }
        sign * a[(n - 1) * n + (n - 1)].clone()
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U * m = H`, `U` unimodular, `H` in row echelon
/// form with positive pivots and the entries above each pivot reduced into
/// `[0, pivot)`.
pub fn hnf(m: &IntMat) -> (IntMat, IntMat) {
    let mut h = m.clone();
    let mut u = IntMat::identity(m.rows);
    let mut pivot_row = 0;
    for col in 0..h.cols {
        if pivot_row == h.rows {
            break;
        }
        // clear everything below the pivot with extended-gcd row operations
        for i in pivot_row + 1..h.rows {
            if h.at(i, col).is_zero() {
                continue;
            }
            let a = h.at(pivot_row, col).clone();
            let b = h.at(i, col).clone();
            let ext = a.extended_gcd(&b);
            let (g, s, t) = (ext.gcd, ext.x, ext.y);
            let p = -(&b / &g);
            let q = &a / &g;
            row_combine(&mut h, pivot_row, i, &s, &t, &p, &q);
            row_combine(&mut u, pivot_row, i, &s, &t, &p, &q);
        }
        if h.at(pivot_row, col).is_zero() {
            continue;
        }
        if h.at(pivot_row, col).is_negative() {
            negate_row(&mut h, pivot_row);
            negate_row(&mut u, pivot_row);
        }
        // reduce the entries above the pivot
        let pivot = h.at(pivot_row, col).clone();
        for i in 0..pivot_row {
            let q = h.at(i, col).div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            row_sub_multiple(&mut h, i, pivot_row, &q);
            row_sub_multiple(&mut u, i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Replace rows `(r1, r2)` by `(s*r1 + t*r2, p*r1 + q*r2)`; the coefficient
/// matrix must have determinant ±1.
fn row_combine(m: &mut IntMat, r1: usize, r2: usize, s: &BigInt, t: &BigInt, p: &BigInt, q: &BigInt) {
    for j in 0..m.cols {
        let a = m.at(r1, j).clone();
        let b = m.at(r2, j).clone();
        *m.at_mut(r1, j) = s * &a + t * &b;
        *m.at_mut(r2, j) = p * &a + q * &b;
    }
}

fn negate_row(m: &mut IntMat, r: usize) {
    for j in 0..m.cols {
        let v = -m.at(r, j).clone();
        *m.at_mut(r, j) = v;
    }
}

fn row_sub_multiple(m: &mut IntMat, r: usize, src: usize, q: &BigInt) {
    for j in 0..m.cols {
        let v = m.at(r, j).clone() - q * m.at(src, j);
        *m.at_mut(r, j) = v;
    }
}

/// A basis of the integer kernel lattice `{ v : m * v = 0 }`.
///
/// The kernel is computed through the Hermite form of the transpose, so the
/// returned vectors span the full (saturated) kernel of `m`.
pub fn snf_kernel_basis(m: &IntMat) -> Vec<Vec<BigInt>> {
    let t = m.transpose();
    let (h, u) = hnf(&t);
    (0..h.rows)
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row(i).to_vec())
        .collect()
}

/// Full-rank lattice in `Q^d`, stored through a canonical (Hermite) basis.
///
/// The basis rows are rational vectors in e-coordinates; two lattices are
/// equal iff their canonical bases are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<RatVec>,
    /// lcm of the basis denominators: the lattice is contained in (1/scale)Z^d
    scale: BigInt,
    inverse: Vec<Vec<Rat>>,
    det_abs: Rat,
}

impl Lattice {
    /// The standard lattice `Z^d`.
    pub fn standard(dim: usize) -> Lattice {
        let gens: Vec<RatVec> = (0..dim)
            .map(|i| {
                let mut v = vec![Rat::zero(); dim];
                v[i] = Rat::one();
                RatVec::new(v, Basis::E)
            })
            .collect();
        Lattice::from_generators(dim, &gens).expect("standard basis is full rank")
    }

    /// Lattice spanned by the given generators; requires rank `dim`.
    pub fn from_generators(dim: usize, gens: &[RatVec]) -> Result<Lattice, LatticeError> {
        for g in gens {
            if g.dim() != dim {
                return Err(LatticeError::DimensionMismatch { expected: dim, got: g.dim() });
            }
        }
        let mut scale = BigInt::one();
        for g in gens {
            for c in g.coords() {
                scale = scale.lcm(c.denom());
            }
        }
        let scaled = IntMat::new(
            gens.len(),
            dim,
            gens.iter()
                .flat_map(|g| g.coords().iter().map(|c| (c * Rat::from_integer(scale.clone())).to_integer()))
                .collect(),
        );
        let (h, _) = hnf(&scaled);
        let rows: Vec<RatVec> = (0..h.rows())
            .filter(|&i| !h.row(i).iter().all(Zero::is_zero))
            .map(|i| {
                RatVec::new(
                    h.row(i).iter().map(|x| Rat::new(x.clone(), scale.clone())).collect(),
                    Basis::E,
                )
            })
            .collect();
        if rows.len() != dim {
            return Err(LatticeError::NotFullRank(dim));
        }
        let inverse = invert(&rows);
        let det_abs = rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.coord(i).clone())
            .product::<Rat>()
            .abs();
        // re-derive the scale from the canonical rows only
        let mut canon_scale = BigInt::one();
        for r in &rows {
            for c in r.coords() {
                canon_scale = canon_scale.lcm(c.denom());
            }
        }
        Ok(Lattice { dim, basis: rows, scale: canon_scale, inverse, det_abs })
    }

    /// The lattice `self + Z*v`.
    pub fn extend(&self, v: &RatVec) -> Result<Lattice, LatticeError> {
        let mut gens = self.basis.clone();
        gens.push(v.clone());
        Lattice::from_generators(self.dim, &gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical basis vectors (rows, e-coordinates).
    pub fn basis(&self) -> &[RatVec] {
        &self.basis
    }

    /// Positive integer N with `self ⊆ (1/N) Z^d`.
    pub fn denominator_scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn det_abs(&self) -> &Rat {
        &self.det_abs
    }

    /// Coordinates of `v` with respect to the canonical basis.
    pub fn coordinates(&self, v: &RatVec) -> Result<Vec<Rat>, LatticeError> {
        if v.dim() != self.dim {
            return Err(LatticeError::DimensionMismatch { expected: self.dim, got: v.dim() });
        }
        // v = c * B with basis rows B, so c = v * B^{-1}
        Ok((0..self.dim)
            .map(|j| v.coords().iter().zip(self.inverse.iter()).map(|(vi, row)| vi * &row[j]).sum())
            .collect())
    }

    /// Exact membership test `v ∈ self`.
    pub fn contains(&self, v: &RatVec) -> Result<bool, LatticeError> {
        Ok(self.coordinates(v)?.iter().all(|c| c.is_integer()))
    }

    /// Integer coordinates of a lattice member, in the canonical basis.
    pub fn member_coordinates(&self, v: &RatVec) -> Result<Option<Vec<BigInt>>, LatticeError> {
        let coords = self.coordinates(v)?;
        if coords.iter().all(|c| c.is_integer()) {
            Ok(Some(coords.iter().map(|c| c.to_integer()).collect()))
        } else {
            Ok(None)
        }
    }

    /// Map canonical-basis coordinates back to e-coordinates.
    pub fn from_coordinates(&self, coords: &[BigInt]) -> RatVec {
        assert_eq!(coords.len(), self.dim);
        let mut out = RatVec::zero(self.dim, Basis::E);
        for (c, b) in coords.iter().zip(&self.basis) {
            out = out.add(&b.scale(&Rat::from_integer(c.clone())));
        }
        out
    }
}

fn invert(rows: &[RatVec]) -> Vec<Vec<Rat>> {
    // Gauss-Jordan on the basis matrix; the basis is full rank by construction.
    let n = rows.len();
    let mut a: Vec<Vec<Rat>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !a[i][col].is_zero()).expect("basis is nonsingular");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..n {
                let av = &a[col][j] * &f;
                a[i][j] = &a[i][j] - &av;
                let iv = &inv[col][j] * &f;
                inv[i][j] = &inv[i][j] - &iv;
            }
        }
    }
    inv
}

/// Index `[sup : sub]` of a full-rank sublattice.
pub fn lattice_index(sub: &Lattice, sup: &Lattice) -> Result<BigInt, LatticeError> {
    if sub.dim() != sup.dim() {
        return Err(LatticeError::DimensionMismatch { expected: sup.dim(), got: sub.dim() });
    }
    for b in sub.basis() {
        if !sup.contains(b)? {
            return Err(LatticeError::NotSublattice);
        }
    }
    let ratio = sub.det_abs() / sup.det_abs();
    if !ratio.is_integer() {
        return Err(LatticeError::NonIntegerIndex);
    }
    Ok(ratio.to_integer())
}

/// Membership `v ∈ L`, exact.
pub fn lattice_member(v: &RatVec, l: &Lattice) -> Result<bool, LatticeError> {
    l.contains(v)
}

/// Whether `d` vectors of dimension `d` have nonzero wedge, i.e. nonzero
/// determinant.
pub fn wedge_nonzero(vs: &[RatVec]) -> Result<bool, LatticeError> {
    let d = vs.len();
    for v in vs {
        if v.dim() != d {
            return Err(LatticeError::DimensionMismatch { expected: d, got: v.dim() });
        }
    }
    Ok(!rational_det(vs).is_zero())
}

fn rational_det(vs: &[RatVec]) -> Rat {
    let d = vs.len();
    let mut scale = BigInt::one();
    for v in vs {
        for c in v.coords() {
            scale = scale.lcm(c.denom());
        }
    }
    let m = IntMat::new(
        d,
        d,
        vs.iter()
            .flat_map(|v| v.coords().iter().map(|c| (c * Rat::from_integer(scale.clone())).to_integer()))
            .collect(),
    );
    Rat::new(m.det(), scale.pow(d as u32))
}

/// Divide an integer vector by the gcd of its entries, preserving direction.
pub fn primitive(v: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}
