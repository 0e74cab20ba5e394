//! Newton polygons of monomial ideals, two-dimensional dual fans with
//! their exceptional-ray sets, and the order exponents `ν̄`.

use crate::ideal::{IdealError, MonomialIdeal};
use crate::lattice::{primitive, Lattice, LatticeError, Rat, RatVec};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NewtonError {
    #[error("empty support")]
    EmptySupport,
    #[error("dual fans and ν̄ are only available in dimension {0} <= 2")]
    UnsupportedDimension(usize),
    #[error("the ideal is not proper")]
    NotProper,
    #[error("a support exponent does not lie in σ∨ ∩ M")]
    NotInLattice,
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Support function of a Newton polyhedron with recession cone `σ∨`,
/// evaluated on a finite support: `min ⟨n, ω⟩` over the support points.
///
/// Valid in any dimension; the covector must be nonnegative on `σ∨` for the
/// minimum over the finite set to equal the infimum over the polyhedron.
pub fn support_ord(support: &[RatVec], covector: &[Rat]) -> Result<Rat, NewtonError> {
    support
        .iter()
        .map(|p| {
            p.coords()
                .iter()
                .zip(covector)
                .map(|(a, b)| a * b)
                .sum::<Rat>()
        })
        .min()
        .ok_or(NewtonError::EmptySupport)
}

fn pairing(p: &[BigInt], n: &[BigInt]) -> BigInt {
    p.iter().zip(n).map(|(a, b)| a * b).sum()
}

/// `min ⟨n, p⟩` over integer points.
pub fn ord_int(points: &[Vec<BigInt>], ray: &[BigInt]) -> Result<BigInt, NewtonError> {
    points
        .iter()
        .map(|p| pairing(p, ray))
        .min()
        .ok_or(NewtonError::EmptySupport)
}

/// Newton polygon of a finite exponent set over `σ∨ ∩ M`, dimension two.
///
/// Vertices are the extreme points of the convex hull of
/// `support + σ∨`, kept in staircase order (first e-coordinate strictly
/// increasing, second strictly decreasing).
#[derive(Debug, Clone)]
pub struct NewtonPolygon {
    /// Input support, integer M-coordinates.
    pub points: Vec<Vec<BigInt>>,
    /// Hull vertices in M-coordinates, staircase order.
    pub hull_vertices: Vec<Vec<BigInt>>,
    hull_e: Vec<RatVec>,
}

impl NewtonPolygon {
    pub fn from_support(support: &[RatVec], m: &Lattice) -> Result<NewtonPolygon, NewtonError> {
        if support.is_empty() {
            return Err(NewtonError::EmptySupport);
        }
        if m.dim() != 2 {
            return Err(NewtonError::UnsupportedDimension(m.dim()));
        }
        let mut points = Vec::new();
        for p in support {
            if !p.is_nonnegative() {
                return Err(NewtonError::NotInLattice);
            }
            match m.member_coordinates(p)? {
                Some(c) => points.push(c),
                None => return Err(NewtonError::NotInLattice),
            }
        }
        // staircase candidates: ⪯-minimal support points, e-coordinates
        let mut minimal: Vec<RatVec> = Vec::new();
        for p in support {
            if support.iter().any(|q| q != p && q.leq(p)) {
                continue;
            }
            if !minimal.contains(p) {
                minimal.push(p.clone());
            }
        }
        minimal.sort_by(|a, b| a.coord(0).cmp(b.coord(0)));
        // convex chain: slopes strictly increase along the staircase
        let mut chain: Vec<RatVec> = Vec::new();
        for p in minimal {
            while chain.len() >= 2 {
                let a = &chain[chain.len() - 2];
                let b = &chain[chain.len() - 1];
                // keep b iff slope(a,b) < slope(b,p)
                let lhs = (b.coord(1) - a.coord(1)) * (p.coord(0) - b.coord(0));
                let rhs = (p.coord(1) - b.coord(1)) * (b.coord(0) - a.coord(0));
                if lhs < rhs {
                    break;
                }
                chain.pop();
            }
            chain.push(p);
        }
        let hull_vertices = chain
            .iter()
            .map(|p| m.member_coordinates(p).map(|c| c.expect("hull vertex lies in M")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(NewtonPolygon { points, hull_vertices, hull_e: chain })
    }

    pub fn hull_e_coords(&self) -> &[RatVec] {
        &self.hull_e
    }
}

/// Dual fan of a proper monomial ideal over `σ∨ ∩ M`, dimension two:
/// primitive covectors in `N`-coordinates (dual to the canonical basis of
/// `M`) for the two boundary rays of `σ` and one inward normal per compact
/// hull edge, each with its `ord` value on the ideal.
#[derive(Debug, Clone)]
pub struct DualFan2D {
    pub polygon: NewtonPolygon,
    pub rays: Vec<Vec<BigInt>>,
    pub ord_values: Vec<BigInt>,
}

impl DualFan2D {
    /// The exceptional set `K(ℐ)`: rays with `ord > 0`.
    pub fn k_set(&self) -> KSet {
        let entries = self
            .rays
            .iter()
            .zip(&self.ord_values)
            .filter(|(_, o)| o.is_positive())
            .map(|(r, o)| (r.clone(), o.clone()))
            .collect();
        KSet { entries }
    }
}

/// Rays of the dual fan whose divisorial valuation is positive on the
/// ideal; these index the exceptional components of the normalized blow up.
#[derive(Debug, Clone)]
pub struct KSet {
    pub entries: Vec<(Vec<BigInt>, BigInt)>,
}

/// Boundary rays of `σ` in `N`-coordinates: the primitive covectors
/// vanishing on one of `e_1, e_2` and nonnegative on the other.
fn boundary_rays(m: &Lattice) -> Result<Vec<Vec<BigInt>>, NewtonError> {
    let e = Lattice::standard(2);
    let e_m: Vec<Vec<BigInt>> = e
        .basis()
        .iter()
        .map(|v| m.member_coordinates(v).map(|c| c.expect("Z^d lies in M")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rays = Vec::new();
    for i in 0..2 {
        let (a, b) = (e_m[i][0].clone(), e_m[i][1].clone());
        let candidate = primitive(&[-b, a])?;
        let other = &e_m[1 - i];
        let ray = if pairing(other, &candidate).is_negative() {
            candidate.iter().map(|x| -x).collect()
        } else {
            candidate
        };
        rays.push(ray);
    }
    Ok(rays)
}

/// Dual fan of a proper monomial ideal, `d = 2` only.
pub fn dual_fan(ideal: &MonomialIdeal) -> Result<DualFan2D, NewtonError> {
    let m = ideal.ambient().lattice();
    if m.dim() != 2 {
        return Err(NewtonError::UnsupportedDimension(m.dim()));
    }
    if !ideal.is_proper() {
        return Err(NewtonError::NotProper);
    }
    let polygon = NewtonPolygon::from_support(ideal.gens(), m)?;
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    for pair in polygon.hull_vertices.windows(2) {
        let (v, w) = (&pair[0], &pair[1]);
        let normal = primitive(&[&v[1] - &w[1], &w[0] - &v[0]])?;
        // orient inward: the ray must attain its minimum over the support
        // at both edge endpoints
        let flipped: Vec<BigInt> = normal.iter().map(|x| -x).collect();
        let pick = |n: &Vec<BigInt>| {
            let o = ord_int(&polygon.points, n).expect("support is nonempty");
            pairing(v, n) == o && pairing(w, n) == o
        };
        if pick(&normal) {
            rays.push(normal);
        } else if pick(&flipped) {
            rays.push(flipped);
        } else {
            unreachable!("adjacent hull vertices must share an inner normal");
        }
    }
    for b in boundary_rays(m)? {
        if !rays.contains(&b) {
            rays.push(b);
        }
    }
    let ord_values = rays
        .iter()
        .map(|r| ord_int(&polygon.points, r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DualFan2D { polygon, rays, ord_values })
}

/// A computed `ν̄` value: finite rational or `+∞` (for `φ = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NuBar {
    Finite(Rat),
    Infinite,
}

/// Per-ray audit data for a `ν̄` computation.
#[derive(Debug, Clone)]
pub struct NuBarReport {
    pub value: NuBar,
    /// `(ray, ord_I, ord_φ, ratio)` over the exceptional rays.
    pub rays: Vec<(Vec<BigInt>, BigInt, BigInt, Rat)>,
}

/// `ν̄_I(φ)` for a function given by its finite monomial support, through
/// the support functions on the exceptional rays of the dual fan of `I`.
pub fn nu_bar(phi_support: &[RatVec], ideal: &MonomialIdeal) -> Result<NuBar, NewtonError> {
    nu_bar_report(phi_support, ideal).map(|r| r.value)
}

pub fn nu_bar_report(phi_support: &[RatVec], ideal: &MonomialIdeal) -> Result<NuBarReport, NewtonError> {
    if !ideal.is_proper() {
        return Err(NewtonError::NotProper);
    }
    let m = ideal.ambient().lattice();
    if phi_support.is_empty() {
        return Ok(NuBarReport { value: NuBar::Infinite, rays: Vec::new() });
    }
    let phi_m: Vec<Vec<BigInt>> = phi_support
        .iter()
        .map(|p| {
            if !p.is_nonnegative() {
                return Err(NewtonError::NotInLattice);
            }
            m.member_coordinates(p)?.ok_or(NewtonError::NotInLattice)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let exceptional: Vec<(Vec<BigInt>, BigInt)> = match m.dim() {
        1 => {
            let gens_m: Vec<Vec<BigInt>> = ideal
                .gens()
                .iter()
                .map(|g| m.member_coordinates(g).map(|c| c.expect("generator lies in M")))
                .collect::<Result<Vec<_>, _>>()?;
            let ray = vec![BigInt::from(1)];
            let o = ord_int(&gens_m, &ray)?;
            vec![(ray, o)]
        }
        2 => dual_fan(ideal)?.k_set().entries,
        d => return Err(NewtonError::UnsupportedDimension(d)),
    };
    let mut rows = Vec::new();
    let mut best: Option<Rat> = None;
    for (ray, ord_i) in exceptional {
        let ord_phi = ord_int(&phi_m, &ray)?;
        let ratio = Rat::new(ord_phi.clone(), ord_i.clone());
        if best.as_ref().map_or(true, |b| &ratio < b) {
            best = Some(ratio.clone());
        }
        rows.push((ray, ord_i, ord_phi, ratio));
    }
    let value = NuBar::Finite(best.expect("a proper ideal has exceptional rays"));
    Ok(NuBarReport { value, rays: rows })
}

/// `ν̄_I(J)` for a pair of monomial ideals: the support of `J` plays the
/// role of the function support.
pub fn nu_bar_ideal_pair(j: &MonomialIdeal, i: &MonomialIdeal) -> Result<NuBar, NewtonError> {
    nu_bar(j.gens(), i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{hyper_log_jacobian, toric_log_jacobian, Ambient, MonomialIdeal};
    use crate::lattice::{parse_rational, Basis};
    use crate::semigroup::{build_semigroup, validate, QOSemigroup};
    use std::sync::Arc;

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

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn standard_ideal(gens: &[&[i64]]) -> MonomialIdeal {
        let ambient = Ambient::normal_cone(Lattice::standard(2));
        MonomialIdeal::new(
            ambient,
            gens.iter().map(|g| RatVec::from_ints(g, Basis::E)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn ord_on_the_log_jacobian() {
        let s = surface();
        let jg = hyper_log_jacobian(&s).unwrap();
        let fan = dual_fan(&jg).unwrap();
        let gens_m: Vec<Vec<BigInt>> = jg.gens().iter().map(|g| s.to_m_coords(g).unwrap()).collect();
        assert_eq!(ord_int(&gens_m, &ints(&[1, 8])).unwrap(), BigInt::from(20));
        assert_eq!(ord_int(&gens_m, &ints(&[0, 1])).unwrap(), BigInt::from(1));
        assert_eq!(fan.rays.len(), 3);
    }

    #[test]
    fn ord_of_single_point() {
        let p = vec![RatVec::from_ints(&[3, 5], Basis::E)];
        let n = vec![rat("2"), rat("1/5")];
        assert_eq!(support_ord(&p, &n).unwrap(), rat("7"));
        assert!(matches!(support_ord(&[], &n), Err(NewtonError::EmptySupport)));
    }

    #[test]
    fn fan_of_the_log_jacobian() {
        let s = surface();
        let fan = dual_fan(&hyper_log_jacobian(&s).unwrap()).unwrap();
        let mut rays: Vec<Vec<BigInt>> = fan.rays.clone();
        rays.sort();
        assert_eq!(rays, vec![ints(&[0, 1]), ints(&[1, 0]), ints(&[1, 8])]);
        for (ray, expected) in [
            (ints(&[1, 0]), 4i64),
            (ints(&[0, 1]), 1),
            (ints(&[1, 8]), 20),
        ] {
            let i = fan.rays.iter().position(|r| r == &ray).unwrap();
            assert_eq!(fan.ord_values[i], BigInt::from(expected));
        }
    }

    #[test]
    fn fan_of_principal_ideal_has_no_edge_rays() {
        let i = standard_ideal(&[&[1, 1]]);
        let fan = dual_fan(&i).unwrap();
        let mut rays = fan.rays.clone();
        rays.sort();
        assert_eq!(rays, vec![ints(&[0, 1]), ints(&[1, 0])]);
    }

    #[test]
    fn collinear_generator_does_not_change_the_fan() {
        let with = standard_ideal(&[&[0, 2], &[2, 1], &[4, 0]]);
        let without = standard_ideal(&[&[0, 2], &[4, 0]]);
        let f1 = dual_fan(&with).unwrap();
        let f2 = dual_fan(&without).unwrap();
        let sorted = |f: &DualFan2D| {
            let mut r = f.rays.clone();
            r.sort();
            r
        };
        assert_eq!(sorted(&f1), sorted(&f2));
        assert_eq!(f1.polygon.hull_vertices.len(), 2);
    }

    #[test]
    fn k_set_of_axis_ideal() {
        let i = standard_ideal(&[&[1, 0]]);
        let fan = dual_fan(&i).unwrap();
        let k = fan.k_set();
        assert_eq!(k.entries, vec![(ints(&[1, 0]), BigInt::from(1))]);
    }

    #[test]
    fn k_set_of_log_jacobian_has_all_rays() {
        let s = surface();
        let fan = dual_fan(&hyper_log_jacobian(&s).unwrap()).unwrap();
        assert_eq!(fan.k_set().entries.len(), 3);
    }

    #[test]
    fn unit_ideal_is_rejected() {
        let ambient = Ambient::normal_cone(Lattice::standard(2));
        let unit = MonomialIdeal::new(ambient, vec![RatVec::zero(2, Basis::E)]).unwrap();
        assert!(matches!(dual_fan(&unit), Err(NewtonError::NotProper)));
        assert!(matches!(
            nu_bar(&[RatVec::from_ints(&[1, 1], Basis::E)], &unit),
            Err(NewtonError::NotProper)
        ));
    }

    #[test]
    fn nu_bar_of_a_generator_is_one() {
        let s = surface();
        let jg = hyper_log_jacobian(&s).unwrap();
        let phi = s.to_e_coords(&ints(&[12, 1]));
        assert_eq!(nu_bar(&[phi], &jg).unwrap(), NuBar::Finite(rat("1")));
    }

    #[test]
    fn nu_bar_of_a_square_element_is_two() {
        let s = surface();
        let jg = hyper_log_jacobian(&s).unwrap();
        let phi = s.to_e_coords(&ints(&[16, 3]));
        let report = nu_bar_report(&[phi], &jg).unwrap();
        assert_eq!(report.value, NuBar::Finite(rat("2")));
        let mut ratios: Vec<Rat> = report.rays.iter().map(|r| r.3.clone()).collect();
        ratios.sort();
        assert_eq!(ratios, vec![rat("2"), rat("3"), rat("4")]);
    }

    #[test]
    fn nu_bar_against_principal_ideal() {
        let i = standard_ideal(&[&[1, 1]]);
        let phi = RatVec::from_ints(&[2, 3], Basis::E);
        assert_eq!(nu_bar(&[phi], &i).unwrap(), NuBar::Finite(rat("2")));
    }

    #[test]
    fn nu_bar_in_dimension_one() {
        let m = Lattice::from_generators(1, &[RatVec::new(vec![rat("1/2")], Basis::E)]).unwrap();
        let ambient = Ambient::normal_cone(m);
        let i = MonomialIdeal::new(ambient, vec![RatVec::new(vec![rat("3/2")], Basis::E)]).unwrap();
        let phi = RatVec::new(vec![rat("9/2")], Basis::E);
        assert_eq!(nu_bar(&[phi], &i).unwrap(), NuBar::Finite(rat("3")));
    }

    #[test]
    fn nu_bar_of_zero_is_infinite() {
        let i = standard_ideal(&[&[1, 1]]);
        assert_eq!(nu_bar(&[], &i).unwrap(), NuBar::Infinite);
    }

    #[test]
    fn nu_bar_refuses_dimension_three() {
        let ambient = Ambient::normal_cone(Lattice::standard(3));
        let i = MonomialIdeal::new(ambient, vec![RatVec::from_ints(&[1, 1, 1], Basis::E)]).unwrap();
        assert!(matches!(
            nu_bar(&[RatVec::from_ints(&[2, 2, 2], Basis::E)], &i),
            Err(NewtonError::UnsupportedDimension(3))
        ));
    }

    #[test]
    fn nu_bar_pair_identity_and_doubling() {
        let s = surface();
        let jg = hyper_log_jacobian(&s).unwrap();
        assert_eq!(nu_bar_ideal_pair(&jg, &jg).unwrap(), NuBar::Finite(rat("1")));
        let square = jg.power(2).unwrap();
        assert_eq!(nu_bar_ideal_pair(&square, &jg).unwrap(), NuBar::Finite(rat("2")));
    }

    #[test]
    fn nu_bar_pair_of_the_two_log_jacobians() {
        let s = surface();
        let jg = hyper_log_jacobian(&s).unwrap();
        let ig = toric_log_jacobian(&s).unwrap();
        // fan of ℐ_3 has the edge ray (1,27) with ord 58; 𝒥_3 pairs to 39
        assert_eq!(nu_bar_ideal_pair(&jg, &ig).unwrap(), NuBar::Finite(rat("39/58")));
        assert!(matches!(nu_bar_ideal_pair(&jg, &ig).unwrap(), NuBar::Finite(v) if v < rat("1")));
    }

    #[test]
    fn minkowski_power_oracle_lower_bound() {
        let s = surface();
        let jg = hyper_log_jacobian(&s).unwrap();
        for k in 1..=4usize {
            let power = jg.power(k).unwrap();
            for alpha in power.gens() {
                match nu_bar(&[alpha.clone()], &jg).unwrap() {
                    NuBar::Finite(v) => assert!(v >= Rat::from_integer(k.into())),
                    NuBar::Infinite => panic!("finite value expected"),
                }
            }
        }
    }

    #[test]
    fn homogeneity_and_superadditivity() {
        let s = surface();
        let jg = hyper_log_jacobian(&s).unwrap();
        let alpha = s.to_e_coords(&ints(&[16, 3]));
        let beta = s.to_e_coords(&ints(&[12, 1]));
        let value = |v: &RatVec| match nu_bar(&[v.clone()], &jg).unwrap() {
            NuBar::Finite(x) => x,
            NuBar::Infinite => panic!("finite value expected"),
        };
        let va = value(&alpha);
        for mlt in 2..=4i64 {
            let scaled = alpha.scale(&Rat::from_integer(mlt.into()));
            assert_eq!(value(&scaled), va.clone() * Rat::from_integer(mlt.into()));
        }
        assert!(value(&alpha.add(&beta)) >= va + value(&beta));
    }
}
