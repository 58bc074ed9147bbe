//! Strongly convex rational polyhedral cones given by inward facet conormals.
//!
//! For `m = 3` the conormals must be listed in facet-adjacency (cyclic)
//! order: consecutive conormals share an edge of the cone. Unordered input is
//! rejected rather than sorted.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{
    is_primitive, kernel_line, lattice_rank, smith_normal_form, solve_all_ones, IntMatrix, LatticeVector, LinalgError,
    RationalVector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("ambient dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("cone needs at least one conormal")]
    NoConormals,
    #[error("conormal {index} has length {found}, expected {expected}")]
    WrongLength { index: usize, expected: usize, found: usize },
    #[error("conormal {index} = {vector} is not primitive")]
    NotPrimitive { index: usize, vector: LatticeVector },
    #[error("conormals {first} and {second} coincide")]
    Duplicate { first: usize, second: usize },
    #[error("cone is not strongly convex: conormals have rank {rank} < {dim}")]
    NotStronglyConvex { rank: usize, dim: usize },
    #[error("conormals not in facet-adjacency order")]
    NotInAdjacencyOrder,
    #[error("conormal {0} does not define a facet")]
    Redundant(usize),
    #[error("operation not supported in dimension {0}")]
    UnsupportedDimension(usize),
    #[error("vector has dimension {found}, cone has dimension {expected}")]
    VectorDimension { expected: usize, found: usize },
    #[error("internal consistency: general goodness test says {general}, consecutive-difference test says {shortcut}")]
    GoodnessDisagreement { general: bool, shortcut: bool },
}

/// `Delta = { y : <y, lambda_i> >= 0 for all i } \ {0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralCone {
    dim: usize,
    conormals: Vec<LatticeVector>,
}

impl PolyhedralCone {
    /// Structural checks only: lengths, primitivity, no duplicates.
    /// Use [`PolyhedralCone::new`] for a fully validated cone.
    pub fn from_conormals(dim: usize, conormals: Vec<LatticeVector>) -> Result<Self, ConeError> {
        if dim < 2 {
            return Err(ConeError::DimensionTooSmall(dim));
        }
        if conormals.is_empty() {
            return Err(ConeError::NoConormals);
        }
        for (index, v) in conormals.iter().enumerate() {
            if v.dim() != dim {
                return Err(ConeError::WrongLength { index, expected: dim, found: v.dim() });
            }
            if !is_primitive(v)? {
                return Err(ConeError::NotPrimitive { index, vector: v.clone() });
            }
        }
        for i in 0..conormals.len() {
            for j in i + 1..conormals.len() {
                if conormals[i] == conormals[j] {
                    return Err(ConeError::Duplicate { first: i, second: j });
                }
            }
        }
        Ok(PolyhedralCone { dim, conormals })
    }

    /// Fully validated cone: structural checks, strong convexity, and every
    /// conormal defining a facet (in cyclic order when `m = 3`).
    pub fn new(dim: usize, conormals: Vec<LatticeVector>) -> Result<Self, ConeError> {
        let cone = Self::from_conormals(dim, conormals)?;
        let rank = lattice_rank(&cone.conormals)?;
        if rank != dim {
            return Err(ConeError::NotStronglyConvex { rank, dim });
        }
        let rays = match dim {
            2 | 3 => extreme_rays(&cone)?,
            _ => enumerate_rays(&cone),
        };
        for i in 0..cone.len() {
            let on_facet: Vec<LatticeVector> =
                rays.rays.iter().zip(&rays.zero_sets).filter(|(_, z)| z.contains(&i)).map(|(r, _)| r.clone()).collect();
            if lattice_rank(&on_facet)? != dim - 1 {
                return Err(ConeError::Redundant(i));
            }
        }
        Ok(cone)
    }

    pub fn from_i64(dim: usize, rows: &[&[i64]]) -> Result<Self, ConeError> {
        Self::new(dim, rows.iter().map(|r| LatticeVector::from_i64(r)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conormals(&self) -> &[LatticeVector] {
        &self.conormals
    }

    pub fn len(&self) -> usize {
        self.conormals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conormals.is_empty()
    }

    /// `sum_i lambda_i`, an interior point of the dual cone whenever the
    /// conormals span.
    pub fn conormal_sum(&self) -> LatticeVector {
        self.conormals.iter().fold(LatticeVector::zero(self.dim), |acc, v| acc.add(v))
    }

    pub fn conormal_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.conormals).expect("conormals share one length")
    }

    fn check_dim(&self, found: usize) -> Result<(), ConeError> {
        if found == self.dim {
            Ok(())
        } else {
            Err(ConeError::VectorDimension { expected: self.dim, found })
        }
    }
}

/// Lineality space of `Delta` is `span(Lambda)^perp`; strongly convex iff
/// the conormals have full rank.
pub fn is_strongly_convex(cone: &PolyhedralCone) -> bool {
    lattice_rank(&cone.conormals).is_ok_and(|r| r == cone.dim)
}

/// Primitive generators of the one-dimensional faces of `Delta`.
///
/// `zero_sets[k]` lists the conormals vanishing on `rays[k]`. For `m = 3`
/// ray `k` is the edge shared by facets `k` and `k + 1 (mod d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremeRaySet {
    pub rays: Vec<LatticeVector>,
    pub zero_sets: Vec<Vec<usize>>,
}

impl ExtremeRaySet {
    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    fn from_rays(cone: &PolyhedralCone, rays: Vec<LatticeVector>) -> Self {
        let zero_sets =
            rays.iter().map(|r| (0..cone.len()).filter(|&i| cone.conormals[i].dot(r).is_zero()).collect()).collect();
        ExtremeRaySet { rays, zero_sets }
    }
}

/// Extreme rays for `m = 3` (signed cross products of adjacent conormals)
/// and `m = 2` (the conormals rotated by a quarter turn).
pub fn extreme_rays(cone: &PolyhedralCone) -> Result<ExtremeRaySet, ConeError> {
    let d = cone.len();
    let lam = &cone.conormals;
    let rays = match cone.dim {
        2 => {
            if d != 2 {
                return Err(ConeError::NotInAdjacencyOrder);
            }
            let mut rays = Vec::with_capacity(2);
            for (i, v) in lam.iter().enumerate() {
                let e = v.entries();
                let r = LatticeVector::new(vec![-e[1].clone(), e[0].clone()]);
                rays.push(orient_ray(r, lam, &[i])?);
            }
            rays
        }
        3 => {
            if d < 3 {
                return Err(ConeError::NotStronglyConvex { rank: lattice_rank(lam)?, dim: 3 });
            }
            let mut rays = Vec::with_capacity(d);
            for k in 0..d {
                let next = (k + 1) % d;
                let r = lam[k].cross(&lam[next]);
                if r.is_zero() {
                    return Err(ConeError::NotInAdjacencyOrder);
                }
                rays.push(orient_ray(r.primitive_part(), lam, &[k, next])?);
            }
            for i in 0..d {
                for j in i + 1..d {
                    if rays[i].is_proportional(&rays[j]) {
                        return Err(ConeError::NotInAdjacencyOrder);
                    }
                }
            }
            rays
        }
        m => return Err(ConeError::UnsupportedDimension(m)),
    };
    Ok(ExtremeRaySet::from_rays(cone, rays))
}

/// Picks the sign of `r` making it pair nonnegatively with every conormal,
/// and strictly positively with all conormals outside `adjacent`.
fn orient_ray(r: LatticeVector, lam: &[LatticeVector], adjacent: &[usize]) -> Result<LatticeVector, ConeError> {
    for cand in [r.clone(), r.neg()] {
        let ok = lam.iter().enumerate().all(|(i, l)| {
            let p = l.dot(&cand);
            if adjacent.contains(&i) {
                p.is_zero()
            } else {
                p.is_positive()
            }
        });
        if ok {
            return Ok(cand);
        }
    }
    Err(ConeError::NotInAdjacencyOrder)
}

/// Extreme rays in any dimension by brute force over `(m-1)`-subsets of
/// conormals. Used where no cyclic structure is available.
pub(crate) fn enumerate_rays(cone: &PolyhedralCone) -> ExtremeRaySet {
    let m = cone.dim;
    let d = cone.len();
    let mut rays: Vec<LatticeVector> = Vec::new();
    for subset in k_subsets(d, m - 1) {
        let rows: Vec<LatticeVector> = subset.iter().map(|&i| cone.conormals[i].clone()).collect();
        let Some(k) = kernel_line(&rows, m) else { continue };
        for cand in [k.clone(), k.neg()] {
            if cone.conormals.iter().all(|l| !l.dot(&cand).is_negative()) && !rays.contains(&cand) {
                rays.push(cand);
            }
        }
    }
    rays.sort();
    ExtremeRaySet::from_rays(cone, rays)
}

pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn rays_for(cone: &PolyhedralCone) -> Result<ExtremeRaySet, ConeError> {
    match cone.dim {
        2 | 3 => extreme_rays(cone),
        _ => Ok(enumerate_rays(cone)),
    }
}

/// Why a face-defining subset of conormals violates goodness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoodnessViolation {
    /// The conormals of the face are linearly dependent.
    LinearlyDependent,
    /// The real span meets the lattice in more than the integer span;
    /// carries the nonzero elementary divisors.
    IndexGreaterThanOne { divisors: Vec<BigInt> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodnessWitness {
    /// Indices into the conormal list.
    pub subset: Vec<usize>,
    pub violation: GoodnessViolation,
}

impl GoodnessWitness {
    /// Largest elementary divisor, if the violation is an index one.
    pub fn max_divisor(&self) -> Option<&BigInt> {
        match &self.violation {
            GoodnessViolation::IndexGreaterThanOne { divisors } => divisors.iter().max(),
            GoodnessViolation::LinearlyDependent => None,
        }
    }
}

/// Outcome of the consecutive-difference test for `m = 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortcutOutcome {
    pub good: bool,
    /// First adjacent pair `(i, i+1)` failing all three conditions.
    pub failing_pair: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodnessReport {
    pub good: bool,
    pub witness: Option<GoodnessWitness>,
    /// `None` when the shortcut does not apply (`m != 3` or no
    /// Calabi-Yau element to normalise the first coordinate).
    pub shortcut: Option<ShortcutOutcome>,
    pub faces_checked: usize,
}

/// Goodness of a strongly convex cone.
///
/// Every subset of conormals cutting out a nonzero face must be linearly
/// independent with unimodular Smith form. For `m = 3` cones admitting a
/// Calabi-Yau element the consecutive-difference criterion is evaluated too,
/// after a unimodular change of basis sending every conormal to first
/// coordinate 1, and must agree.
pub fn is_good(cone: &PolyhedralCone) -> Result<GoodnessReport, ConeError> {
    if !is_strongly_convex(cone) {
        return Err(ConeError::NotStronglyConvex { rank: lattice_rank(&cone.conormals)?, dim: cone.dim });
    }
    let rays = rays_for(cone)?;

    let mut faces: Vec<Vec<usize>> = Vec::new();
    for z in &rays.zero_sets {
        for size in 1..=z.len() {
            for pick in k_subsets(z.len(), size) {
                let subset: Vec<usize> = pick.iter().map(|&i| z[i]).collect();
                if !faces.contains(&subset) {
                    faces.push(subset);
                }
            }
        }
    }
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let mut witness = None;
    for subset in &faces {
        let rows: Vec<LatticeVector> = subset.iter().map(|&i| cone.conormals[i].clone()).collect();
        if lattice_rank(&rows)? != rows.len() {
            witness = Some(GoodnessWitness { subset: subset.clone(), violation: GoodnessViolation::LinearlyDependent });
            break;
        }
        let divisors = smith_normal_form(&IntMatrix::from_rows(&rows)?).divisors();
        if divisors.iter().any(|x| !x.is_one()) {
            witness = Some(GoodnessWitness {
                subset: subset.clone(),
                violation: GoodnessViolation::IndexGreaterThanOne { divisors },
            });
            break;
        }
    }
    let good = witness.is_none();

    let shortcut = if cone.dim == 3 { consecutive_difference_test(cone) } else { None };
    if let Some(s) = &shortcut {
        if s.good != good {
            return Err(ConeError::GoodnessDisagreement { general: good, shortcut: s.good });
        }
    }
    Ok(GoodnessReport { good, witness, shortcut, faces_checked: faces.len() })
}

/// Consecutive-difference criterion on conormals `(1, p_i, q_i)`: each
/// adjacent pair needs `|dp| = 1`, `|dq| = 1`, or `dp, dq` coprime and both
/// nonzero. A zero difference never satisfies the coprimality clause.
pub fn consecutive_difference_test(cone: &PolyhedralCone) -> Option<ShortcutOutcome> {
    let normalised = normalise_first_coordinate(cone)?;
    let d = normalised.len();
    for i in 0..d {
        let j = (i + 1) % d;
        let dp = &normalised[j].entries()[1] - &normalised[i].entries()[1];
        let dq = &normalised[j].entries()[2] - &normalised[i].entries()[2];
        let cond1 = dp.abs().is_one();
        let cond2 = dq.abs().is_one();
        let cond3 = !dp.is_zero() && !dq.is_zero() && num_integer::Integer::gcd(&dp, &dq).is_one();
        if !(cond1 || cond2 || cond3) {
            return Some(ShortcutOutcome { good: false, failing_pair: Some((i, j)) });
        }
    }
    Some(ShortcutOutcome { good: true, failing_pair: None })
}

/// Conormals in a lattice basis whose first coordinate is `<gamma, .>`.
fn normalise_first_coordinate(cone: &PolyhedralCone) -> Option<Vec<LatticeVector>> {
    if cone.conormals.iter().all(|l| l.entries()[0].is_one()) {
        return Some(cone.conormals.clone());
    }
    let gamma = calabi_yau_gamma(cone).gamma?;
    let w = basis_with_first_row(&gamma)?;
    Some(cone.conormals.iter().map(|l| w.mul_vec(l)).collect())
}

/// Unimodular matrix whose first row is the primitive vector `v`.
pub(crate) fn basis_with_first_row(v: &LatticeVector) -> Option<IntMatrix> {
    let row = IntMatrix::from_rows(std::slice::from_ref(v)).ok()?;
    let snf = smith_normal_form(&row);
    if !snf.divisors().first().is_some_and(One::is_one) {
        return None;
    }
    // u * v^T * V = e_1^T, so row 1 of V^{-1} is u * v^T
    let mut w = snf.v.inverse_unimodular()?;
    if !snf.u[(0, 0)].is_one() {
        w.negate_row(0);
    }
    debug_assert_eq!(&w.row(0), v);
    Some(w)
}

/// `xi` lies in the open dual cone: `<r, xi> > 0` for every extreme ray.
pub fn reeb_admissible(cone: &PolyhedralCone, xi: &RationalVector) -> Result<bool, ConeError> {
    cone.check_dim(xi.dim())?;
    let rays = rays_for(cone)?;
    Ok(rays.rays.iter().all(|r| r.dot_rational(xi).is_positive()))
}

/// Pairings `<r, v>` of every extreme ray with `v`, exactly.
pub fn ray_pairings(rays: &ExtremeRaySet, v: &RationalVector) -> Vec<BigRational> {
    rays.rays.iter().map(|r| r.dot_rational(v)).collect()
}

/// The Calabi-Yau element: integral `gamma` with `<gamma, lambda_i> = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalabiYauData {
    pub gamma: Option<LatticeVector>,
}

impl CalabiYauData {
    pub fn exists(&self) -> bool {
        self.gamma.is_some()
    }
}

pub fn calabi_yau_gamma(cone: &PolyhedralCone) -> CalabiYauData {
    let gamma = solve_all_ones(&cone.conormal_matrix());
    if let Some(g) = &gamma {
        assert!(cone.conormals.iter().all(|l| l.dot(g).is_one()), "Calabi-Yau element failed re-verification");
    }
    CalabiYauData { gamma }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::genus_family;

    fn lv(x: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(x)
    }

    #[test]
    fn strong_convexity_examples() {
        let g1 = genus_family(1).unwrap();
        assert!(is_strongly_convex(&g1));
        let line = PolyhedralCone::from_conormals(3, vec![lv(&[1, 0, 0]), lv(&[-1, 0, 0])]).unwrap();
        assert!(!is_strongly_convex(&line));
        assert!(matches!(
            PolyhedralCone::new(3, vec![lv(&[1, 0, 0]), lv(&[-1, 0, 0])]),
            Err(ConeError::NotStronglyConvex { rank: 1, dim: 3 })
        ));
        assert!(is_strongly_convex(&PolyhedralCone::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap()));
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(PolyhedralCone::new(3, vec![lv(&[2, 0, 2])]), Err(ConeError::NotPrimitive { .. })));
        assert!(matches!(
            PolyhedralCone::new(3, vec![lv(&[1, 0, 0]), lv(&[1, 0, 0])]),
            Err(ConeError::Duplicate { .. })
        ));
        assert!(matches!(PolyhedralCone::new(1, vec![lv(&[1])]), Err(ConeError::DimensionTooSmall(1))));
        assert!(matches!(PolyhedralCone::new(3, vec![lv(&[1, 0])]), Err(ConeError::WrongLength { .. })));
    }

    #[test]
    fn genus_one_rays() {
        let cone = genus_family(1).unwrap();
        let rays = extreme_rays(&cone).unwrap();
        assert_eq!(rays.len(), 4);
        assert_eq!(rays.rays[0], lv(&[1, 0, 1]));
        assert_eq!(rays.rays, vec![lv(&[1, 0, 1]), lv(&[1, -1, 1]), lv(&[3, -3, 1]), lv(&[1, 4, -3])]);
        for (r, z) in rays.rays.iter().zip(&rays.zero_sets) {
            assert_eq!(z.len(), 2);
            assert!(cone.conormals().iter().all(|l| !l.dot(r).is_negative()));
        }
    }

    #[test]
    fn planar_rays_are_dual() {
        let cone = PolyhedralCone::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        let rays = extreme_rays(&cone).unwrap();
        let mut got = rays.rays.clone();
        got.sort();
        assert_eq!(got, vec![lv(&[0, 1]), lv(&[1, 0])]);
    }

    #[test]
    fn unordered_conormals_are_rejected() {
        let g1 = genus_family(1).unwrap();
        let mut c = g1.conormals().to_vec();
        c.swap(1, 2);
        assert_eq!(PolyhedralCone::new(3, c), Err(ConeError::NotInAdjacencyOrder));
        assert_eq!(ConeError::NotInAdjacencyOrder.to_string(), "conormals not in facet-adjacency order");
    }

    #[test]
    fn redundant_conormal_is_rejected() {
        // (1,1,1) is implied by the coordinate half-spaces
        let r = PolyhedralCone::new(3, vec![lv(&[1, 0, 0]), lv(&[0, 1, 0]), lv(&[1, 1, 1]), lv(&[0, 0, 1])]);
        assert!(r.is_err());
    }

    #[test]
    fn goodness_of_the_family() {
        for g in 1..=4 {
            let rep = is_good(&genus_family(g).unwrap()).unwrap();
            assert!(rep.good, "genus {g}");
            assert_eq!(rep.shortcut.as_ref().map(|s| s.good), Some(true));
        }
    }

    #[test]
    fn mutated_pair_is_not_good() {
        let cone = PolyhedralCone::from_i64(3, &[&[1, 0, 0], &[1, 2, 0], &[1, 1, 1]]).unwrap();
        let rep = is_good(&cone).unwrap();
        assert!(!rep.good);
        let w = rep.witness.unwrap();
        assert_eq!(w.subset, vec![0, 1]);
        assert_eq!(w.max_divisor(), Some(&BigInt::from(2)));
        let s = rep.shortcut.unwrap();
        assert_eq!(s.failing_pair, Some((0, 1)));
    }

    #[test]
    fn reeb_examples() {
        let cone = genus_family(1).unwrap();
        assert_eq!(cone.conormal_sum(), lv(&[4, 2, 1]));
        assert!(reeb_admissible(&cone, &RationalVector::from_i64(&[4, 2, 1])).unwrap());
        assert!(!reeb_admissible(&cone, &RationalVector::from_i64(&[0, 0, 1])).unwrap());
        assert!(!reeb_admissible(&cone, &RationalVector::zero(3)).unwrap());
        assert!(reeb_admissible(&cone, &RationalVector::from_i64(&[1, 2])).is_err());
    }

    #[test]
    fn calabi_yau_examples() {
        for g in 1..=3 {
            let cy = calabi_yau_gamma(&genus_family(g).unwrap());
            assert_eq!(cy.gamma, Some(lv(&[1, 0, 0])));
        }
        let a = PolyhedralCone::from_i64(2, &[&[1, 0], &[1, 2]]).unwrap();
        assert_eq!(calabi_yau_gamma(&a).gamma, Some(lv(&[1, 0])));
        // <(0,1), (2,1)> = <(0,1), (0,1)> = 1
        let b = PolyhedralCone::from_i64(2, &[&[2, 1], &[0, 1]]).unwrap();
        assert_eq!(calabi_yau_gamma(&b).gamma, Some(lv(&[0, 1])));
        let c = PolyhedralCone::from_i64(2, &[&[3, 1], &[1, 3]]).unwrap();
        assert!(!calabi_yau_gamma(&c).exists());
    }

    #[test]
    fn basis_change_has_requested_first_row() {
        for v in [lv(&[1, 0, 0]), lv(&[2, 3, 5]), lv(&[-4, 1, 7]), lv(&[0, 0, -1])] {
            let w = basis_with_first_row(&v).unwrap();
            assert_eq!(w.row(0), v);
            assert!(w.determinant().abs().is_one());
        }
        assert!(basis_with_first_row(&lv(&[2, 4, 0])).is_none());
    }

    #[test]
    fn enumeration_agrees_with_cross_products() {
        for g in 1..=6 {
            let cone = genus_family(g).unwrap();
            let mut a = extreme_rays(&cone).unwrap().rays;
            let b = enumerate_rays(&cone).rays;
            a.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn four_dimensional_cones_use_enumeration() {
        // cone over a square: rays +-e1 +- e2 + e3 style, conormals in Z^4
        let cone = PolyhedralCone::from_i64(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]).unwrap();
        let rep = is_good(&cone).unwrap();
        assert!(rep.good);
        assert!(rep.shortcut.is_none());
        assert_eq!(enumerate_rays(&cone).len(), 4);
        let bad = PolyhedralCone::from_i64(4, &[&[1, 0, 0, 0], &[1, 2, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(!is_good(&bad.unwrap()).unwrap().good);
    }
}
