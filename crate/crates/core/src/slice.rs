//! Hyperplane slices `Delta_{zeta,c} = Delta ∩ {<y, zeta> = c}` and the two
//! standing assumptions on `(zeta, c)`:
//!
//! * the interior of `Delta` meets the hyperplane;
//! * for every `y` in `Delta ∩ H`, `zeta` is not in the span of the conormals
//!   vanishing at `y`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cone::{calabi_yau_gamma, rays_for, ConeError, ExtremeRaySet, PolyhedralCone};
use crate::linalg::{format_rational, rational_rank, RationalVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("zeta must be nonzero")]
    ZeroZeta,
    #[error("zeta has dimension {found}, cone has dimension {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("slice polygon is only built in dimension 3, got {0}")]
    UnsupportedDimension(usize),
    #[error("level must be positive, got {0}")]
    LevelNotPositive(String),
    #[error("hyperplane does not cross all rays (ray {ray} pairs to {pairing} with zeta)")]
    MissesRay { ray: usize, pairing: String },
    #[error("default slice needs a Calabi-Yau element, none exists")]
    NoCalabiYau,
    #[error("slice invariant violated: {0}")]
    Invariant(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceSpec {
    zeta: RationalVector,
    level: BigRational,
}

impl SliceSpec {
    pub fn new(zeta: RationalVector, level: BigRational) -> Result<Self, SliceError> {
        if zeta.is_zero() {
            return Err(SliceError::ZeroZeta);
        }
        Ok(SliceSpec { zeta, level })
    }

    /// `zeta = xi = sum_i lambda_i` and `c = <gamma, xi> / 2`.
    pub fn standard(cone: &PolyhedralCone) -> Result<Self, SliceError> {
        let gamma = calabi_yau_gamma(cone).gamma.ok_or(SliceError::NoCalabiYau)?;
        let xi = cone.conormal_sum();
        let level = BigRational::new(gamma.dot(&xi), BigInt::from(2));
        Self::new(xi.to_rational(), level)
    }

    pub fn zeta(&self) -> &RationalVector {
        &self.zeta
    }

    pub fn level(&self) -> &BigRational {
        &self.level
    }

    pub fn with_level(&self, level: BigRational) -> Self {
        SliceSpec { zeta: self.zeta.clone(), level }
    }
}

/// A face of `Delta` given by the conormals vanishing on it and the rays it
/// contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub conormals: Vec<usize>,
    pub rays: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssumptionReport {
    pub interior_meets_hyperplane: bool,
    /// Exact point with every `<y, lambda_i> > 0` and `<y, zeta> = c`.
    pub interior_witness: Option<RationalVector>,
    pub transversal: bool,
    /// First face meeting the hyperplane whose conormal span contains zeta.
    pub failing_face: Option<Face>,
    pub faces_checked: usize,
    pub warnings: Vec<String>,
}

impl AssumptionReport {
    pub fn holds(&self) -> bool {
        self.interior_meets_hyperplane && self.transversal
    }
}

/// Some strictly positive combination of values with these signs equals a
/// value of sign `target`.
fn positive_combination_hits(pairings: &[BigRational], target: Ordering) -> bool {
    let pos = pairings.iter().any(Signed::is_positive);
    let neg = pairings.iter().any(Signed::is_negative);
    match target {
        Ordering::Greater => pos,
        Ordering::Less => neg,
        Ordering::Equal => (pos && neg) || (!pos && !neg),
    }
}

fn sign(x: &BigRational) -> Ordering {
    x.cmp(&BigRational::zero())
}

pub fn check_assumptions(cone: &PolyhedralCone, spec: &SliceSpec) -> Result<AssumptionReport, SliceError> {
    if spec.zeta.dim() != cone.dim() {
        return Err(SliceError::Dimension { expected: cone.dim(), found: spec.zeta.dim() });
    }
    let rays = rays_for(cone)?;
    let pairings: Vec<BigRational> = rays.rays.iter().map(|r| r.dot_rational(&spec.zeta)).collect();
    let c = &spec.level;

    let mut warnings = Vec::new();
    if pairings.iter().all(Signed::is_positive) && !c.is_positive() {
        warnings.push(format!(
            "zeta lies in the interior of the dual cone but the level {} is not positive",
            format_rational(c)
        ));
    }

    let interior_witness = interior_point_on_hyperplane(cone, &rays, &pairings, spec);

    let faces = enumerate_faces(cone, &rays);
    let mut failing_face = None;
    for face in &faces {
        let face_pairings: Vec<BigRational> = face.rays.iter().map(|&j| pairings[j].clone()).collect();
        if !positive_combination_hits(&face_pairings, sign(c)) {
            continue;
        }
        let mut span: Vec<RationalVector> = face.conormals.iter().map(|&i| cone.conormals()[i].to_rational()).collect();
        let before = rational_rank(&span).map_err(ConeError::from)?;
        span.push(spec.zeta.clone());
        let after = rational_rank(&span).map_err(ConeError::from)?;
        if after == before {
            failing_face = Some(face.clone());
            break;
        }
    }

    Ok(AssumptionReport {
        interior_meets_hyperplane: interior_witness.is_some(),
        interior_witness,
        transversal: failing_face.is_none(),
        failing_face,
        faces_checked: faces.len(),
        warnings,
    })
}

/// `y = eps * sum_j r_j + t * r_b` with every coefficient positive, chosen
/// so that `<y, zeta> = c`; verified exactly before being returned.
fn interior_point_on_hyperplane(
    cone: &PolyhedralCone,
    rays: &ExtremeRaySet,
    pairings: &[BigRational],
    spec: &SliceSpec,
) -> Option<RationalVector> {
    let c = &spec.level;
    if !positive_combination_hits(pairings, sign(c)) {
        return None;
    }
    let total: BigRational = pairings.iter().cloned().sum();
    let (eps, target_sign) = if c.is_zero() {
        (BigRational::one(), sign(&-total.clone()))
    } else {
        (c.abs() / (BigRational::from_integer(2.into()) * (total.abs() + BigRational::one())), sign(c))
    };
    let (b, t) = if target_sign == Ordering::Equal {
        (0, BigRational::zero())
    } else {
        let b = pairings.iter().position(|s| sign(s) == target_sign)?;
        (b, (c - &eps * &total) / &pairings[b])
    };
    let mut y = RationalVector::zero(cone.dim());
    for (j, r) in rays.rays.iter().enumerate() {
        let coeff = if j == b { &eps + &t } else { eps.clone() };
        y = y.add(&r.to_rational().scale(&coeff));
    }
    let inside = cone.conormals().iter().all(|l| l.dot_rational(&y).is_positive());
    (inside && &y.dot(&spec.zeta) == c).then_some(y)
}

/// All nonzero faces of `Delta`, including `Delta` itself, by closing the
/// ray zero sets under intersection.
pub fn enumerate_faces(cone: &PolyhedralCone, rays: &ExtremeRaySet) -> Vec<Face> {
    let mut sets: Vec<Vec<usize>> = rays.zero_sets.clone();
    sets.push(Vec::new());
    let mut grew = true;
    while grew {
        grew = false;
        let snapshot = sets.clone();
        for a in &snapshot {
            for b in &snapshot {
                let meet: Vec<usize> = a.iter().copied().filter(|i| b.contains(i)).collect();
                if !sets.contains(&meet) {
                    sets.push(meet);
                    grew = true;
                }
            }
        }
    }
    let mut faces: Vec<Face> = sets
        .into_iter()
        .filter_map(|conormals| {
            let on: Vec<usize> =
                (0..rays.len()).filter(|&j| conormals.iter().all(|i| rays.zero_sets[j].contains(i))).collect();
            (!on.is_empty()).then_some(Face { conormals, rays: on })
        })
        .collect();
    debug_assert!(faces.iter().all(|f| f.conormals.iter().all(|&i| i < cone.len())));
    faces.sort_by(|a, b| b.conormals.len().cmp(&a.conormals.len()).then_with(|| a.conormals.cmp(&b.conormals)));
    faces
}

/// An edge of the slice polygon lying in facet `facet`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceEdge {
    pub from: usize,
    pub to: usize,
    pub facet: usize,
}

/// Convex polygon with vertex `k` on ray `k` (shared by facets `k`, `k+1`)
/// and edge `j` in facet `j`, joining vertices `j-1` and `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlicePolytope {
    pub spec: SliceSpec,
    pub vertices: Vec<RationalVector>,
    pub edges: Vec<SliceEdge>,
}

impl SlicePolytope {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge carrying facet label `j`.
    pub fn edge_for_facet(&self, j: usize) -> Option<&SliceEdge> {
        self.edges.iter().find(|e| e.facet == j)
    }

    pub fn vertices_f64(&self) -> Vec<Vec<f64>> {
        self.vertices.iter().map(RationalVector::to_f64).collect()
    }

    /// Re-checks every polygon invariant exactly.
    pub fn verify(&self, cone: &PolyhedralCone) -> Result<(), SliceError> {
        let bad = |msg: String| Err(SliceError::Invariant(msg));
        for (k, v) in self.vertices.iter().enumerate() {
            if &v.dot(&self.spec.zeta) != self.spec.level() {
                return bad(format!("vertex {k} off the hyperplane"));
            }
            if cone.conormals().iter().any(|l| l.dot_rational(v).is_negative()) {
                return bad(format!("vertex {k} outside the cone"));
            }
        }
        let mut labels: Vec<usize> = self.edges.iter().map(|e| e.facet).collect();
        labels.sort_unstable();
        if labels != (0..cone.len()).collect::<Vec<_>>() {
            return bad("edge labels do not partition the conormals".into());
        }
        for e in &self.edges {
            let l = &cone.conormals()[e.facet];
            if !l.dot_rational(&self.vertices[e.from]).is_zero() || !l.dot_rational(&self.vertices[e.to]).is_zero() {
                return bad(format!("edge {} leaves its facet", e.facet));
            }
        }
        // strictly convex: every turn has the same nonzero sign about zeta
        let n = self.vertices.len();
        let turns: Vec<BigRational> = (0..n)
            .map(|k| {
                let a = &self.vertices[k];
                let b = &self.vertices[(k + 1) % n];
                let c = &self.vertices[(k + 2) % n];
                cross3(&sub(b, a), &sub(c, b)).dot(&self.spec.zeta)
            })
            .collect();
        if !(turns.iter().all(Signed::is_positive) || turns.iter().all(Signed::is_negative)) {
            return bad("polygon not strictly convex".into());
        }
        Ok(())
    }

    pub fn scaled(&self, t: &BigRational) -> SlicePolytope {
        SlicePolytope {
            spec: self.spec.with_level(self.spec.level() * t),
            vertices: self.vertices.iter().map(|v| v.scale(t)).collect(),
            edges: self.edges.clone(),
        }
    }
}

fn sub(a: &RationalVector, b: &RationalVector) -> RationalVector {
    a.add(&b.scale(&-BigRational::one()))
}

fn cross3(a: &RationalVector, b: &RationalVector) -> RationalVector {
    let (a, b) = (a.entries(), b.entries());
    RationalVector::new(vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ])
}

/// Vertex `k` is `(c / <r_k, zeta>) r_k`.
pub fn compute_slice(cone: &PolyhedralCone, spec: &SliceSpec) -> Result<SlicePolytope, SliceError> {
    if cone.dim() != 3 {
        return Err(SliceError::UnsupportedDimension(cone.dim()));
    }
    if spec.zeta.dim() != 3 {
        return Err(SliceError::Dimension { expected: 3, found: spec.zeta.dim() });
    }
    if !spec.level.is_positive() {
        return Err(SliceError::LevelNotPositive(format_rational(&spec.level)));
    }
    let rays = crate::cone::extreme_rays(cone)?;
    let mut vertices = Vec::with_capacity(rays.len());
    for (k, r) in rays.rays.iter().enumerate() {
        let s = r.dot_rational(&spec.zeta);
        if !s.is_positive() {
            return Err(SliceError::MissesRay { ray: k, pairing: format_rational(&s) });
        }
        vertices.push(r.to_rational().scale(&(&spec.level / s)));
    }
    let d = cone.len();
    let edges = (0..d).map(|j| SliceEdge { from: (j + d - 1) % d, to: j, facet: j }).collect();
    let poly = SlicePolytope { spec: spec.clone(), vertices, edges };
    poly.verify(cone)?;
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::genus_family;
    use crate::linalg::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn spec(z: &[i64], c: &str) -> SliceSpec {
        SliceSpec::new(RationalVector::from_i64(z), q(c)).unwrap()
    }

    #[test]
    fn standard_spec_of_genus_one() {
        let s = SliceSpec::standard(&genus_family(1).unwrap()).unwrap();
        assert_eq!(s.zeta(), &RationalVector::from_i64(&[4, 2, 1]));
        assert_eq!(s.level(), &q("2"));
    }

    #[test]
    fn standard_spec_satisfies_assumptions() {
        for g in 1..=6 {
            let cone = genus_family(g).unwrap();
            let rep = check_assumptions(&cone, &SliceSpec::standard(&cone).unwrap()).unwrap();
            assert!(rep.holds(), "genus {g}");
            assert!(rep.warnings.is_empty());
            let y = rep.interior_witness.unwrap();
            assert!(cone.conormals().iter().all(|l| l.dot_rational(&y).is_positive()));
        }
    }

    #[test]
    fn hyperplane_through_apex_along_a_conormal_misses_the_interior() {
        for g in 1..=3 {
            let cone = genus_family(g).unwrap();
            let z = cone.conormals()[0].to_rational();
            let rep = check_assumptions(&cone, &SliceSpec::new(z, q("0")).unwrap()).unwrap();
            assert!(!rep.interior_meets_hyperplane);
            assert!(!rep.holds());
        }
    }

    #[test]
    fn transversality_fails_on_a_ray_inside_the_conormal_span() {
        // rays of genus 1 pair with (0,1,0) as 0, -1, -3, 4; the ray (1,0,1)
        // lies on the hyperplane and its conormals span (0,1,0)
        let cone = genus_family(1).unwrap();
        let rep = check_assumptions(&cone, &spec(&[0, 1, 0], "0")).unwrap();
        assert!(rep.interior_meets_hyperplane);
        assert!(!rep.transversal);
        let face = rep.failing_face.unwrap();
        assert_eq!(face.conormals, vec![0, 1]);
        assert_eq!(face.rays, vec![0]);
    }

    #[test]
    fn transversality_only_fails_at_level_zero() {
        // (0,0,1) pairs with the genus-1 rays as 1, 1, 1, -3
        let cone = genus_family(1).unwrap();
        for c in ["1", "-1", "1/2", "-3"] {
            let rep = check_assumptions(&cone, &spec(&[0, 0, 1], c)).unwrap();
            assert!(rep.holds(), "level {c}");
        }
        let rep = check_assumptions(&cone, &spec(&[4, 2, 1], "-1")).unwrap();
        assert!(!rep.interior_meets_hyperplane);
        assert_eq!(rep.warnings.len(), 1);
    }

    #[test]
    fn faces_of_genus_one() {
        let cone = genus_family(1).unwrap();
        let rays = crate::cone::extreme_rays(&cone).unwrap();
        let faces = enumerate_faces(&cone, &rays);
        // 4 rays, 4 facets, the cone itself
        assert_eq!(faces.len(), 9);
    }

    #[test]
    fn genus_one_vertices() {
        let cone = genus_family(1).unwrap();
        let poly = compute_slice(&cone, &spec(&[4, 2, 1], "2")).unwrap();
        assert_eq!(poly.len(), 4);
        let v0 = RationalVector::parse(&["2/5", "0", "2/5"]).unwrap();
        assert!(poly.vertices.contains(&v0));
        for j in 0..4 {
            assert!(poly.edge_for_facet(j).is_some());
        }
    }

    #[test]
    fn polygon_size_and_homogeneity() {
        for g in 1..=8 {
            let cone = genus_family(g).unwrap();
            let s = SliceSpec::standard(&cone).unwrap();
            let poly = compute_slice(&cone, &s).unwrap();
            assert_eq!(poly.len() as i64, g + 3);
            let t = q("7/3");
            let scaled = compute_slice(&cone, &s.with_level(s.level() * &t)).unwrap();
            assert_eq!(scaled, poly.scaled(&t));
        }
    }

    #[test]
    fn slice_errors() {
        let cone = genus_family(1).unwrap();
        assert!(matches!(compute_slice(&cone, &spec(&[0, 0, 1], "1")), Err(SliceError::MissesRay { ray: 3, .. })));
        assert!(matches!(compute_slice(&cone, &spec(&[4, 2, 1], "0")), Err(SliceError::LevelNotPositive(_))));
        assert_eq!(SliceSpec::new(RationalVector::zero(3), q("1")), Err(SliceError::ZeroZeta));
        let plane = PolyhedralCone::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        assert!(matches!(compute_slice(&plane, &spec(&[1, 1], "1")), Err(SliceError::UnsupportedDimension(2))));
        assert!(check_assumptions(&plane, &spec(&[1, 1], "1")).unwrap().holds());
    }
}
