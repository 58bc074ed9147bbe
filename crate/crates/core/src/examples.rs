//! The genus-g family of three-dimensional good cones with Calabi-Yau
//! element `(1, 0, 0)`.

use thiserror::Error;

use crate::cone::{ConeError, PolyhedralCone};
use crate::linalg::LatticeVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExampleError {
    #[error("genus must be at least 1, got {0}")]
    GenusTooSmall(i64),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// Conormals in cyclic order.
///
/// Genus 1: `(1,-1,-1), (1,0,-1), (1,1,0), (1,2,3)`. Genus `g >= 2`:
/// `(1,-1,-1)`, then `(1, k-2, (k-2)^2 - 1)` for `k = 2..=g+2`, then
/// `(1, -2, g^2)`.
pub fn genus_family_conormals(genus: i64) -> Result<Vec<LatticeVector>, ExampleError> {
    if genus < 1 {
        return Err(ExampleError::GenusTooSmall(genus));
    }
    if genus == 1 {
        return Ok([[1, -1, -1], [1, 0, -1], [1, 1, 0], [1, 2, 3]]
            .iter()
            .map(|r| LatticeVector::from_i64(r))
            .collect());
    }
    let mut out = vec![LatticeVector::from_i64(&[1, -1, -1])];
    for k in 2..=genus + 2 {
        let p = k - 2;
        out.push(LatticeVector::from_i64(&[1, p, p * p - 1]));
    }
    out.push(LatticeVector::from_i64(&[1, -2, genus * genus]));
    Ok(out)
}

pub fn genus_family(genus: i64) -> Result<PolyhedralCone, ExampleError> {
    Ok(PolyhedralCone::new(3, genus_family_conormals(genus)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_conormals() {
        let g2 = genus_family_conormals(2).unwrap();
        assert_eq!(g2.len(), 5);
        assert_eq!(g2[4], LatticeVector::from_i64(&[1, -2, 4]));
        let g3 = genus_family_conormals(3).unwrap();
        assert_eq!(g3.len(), 6);
        assert_eq!(g3[5], LatticeVector::from_i64(&[1, -2, 9]));
        assert_eq!(genus_family_conormals(0), Err(ExampleError::GenusTooSmall(0)));
    }

    #[test]
    fn family_is_valid_through_genus_twelve() {
        for g in 1..=12 {
            let cone = genus_family(g).unwrap();
            assert_eq!(cone.len() as i64, g + 3);
        }
    }
}
