//! JSON cone specification. Rationals are `"p/q"` strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::{ConeError, PolyhedralCone};
use crate::examples::{genus_family_conormals, ExampleError};
use crate::linalg::{format_rational, parse_rational, LatticeVector, LinalgError, RationalVector};
use crate::slice::{SliceError, SliceSpec};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Slice(#[from] SliceError),
    #[error(transparent)]
    Example(#[from] ExampleError),
    #[error("{field} has length {found}, expected {expected}")]
    Length { field: &'static str, expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceDocument {
    pub zeta: Vec<String>,
    pub c: String,
}

/// A built-in motion profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProfileDescriptor {
    /// `f = t / N`, `rho = (1 / sin t)^{1/N}` on `(0, pi)`, target phase 0.
    SlagSine {},
    /// `c(t) = e^{it}`, `theta(t) = N t + pi/2`; `a` defaults to `-N`.
    ShrinkerCircle {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a: Option<f64>,
    },
    /// `exp(N (kappa + i f)) = e^{-i (theta - theta0)} (t + i c)` on
    /// `(t_min, t_max)`.
    SlagLine {
        c: f64,
        t_min: f64,
        t_max: f64,
        #[serde(default)]
        theta0: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSpecDocument {
    pub dim: usize,
    pub conormals: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reeb: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice: Option<SliceDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileDescriptor>,
}

impl ConeSpecDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialises")
    }

    pub fn conormal_vectors(&self) -> Vec<LatticeVector> {
        self.conormals.iter().map(|r| LatticeVector::from_i64(r)).collect()
    }

    /// The fully validated cone.
    pub fn cone(&self) -> Result<PolyhedralCone, DocumentError> {
        Ok(PolyhedralCone::new(self.dim, self.conormal_vectors())?)
    }

    /// The given Reeb vector, or the conormal sum.
    pub fn reeb_vector(&self, cone: &PolyhedralCone) -> Result<RationalVector, DocumentError> {
        match &self.reeb {
            Some(v) => {
                self.check_len("reeb", v.len())?;
                Ok(RationalVector::parse(v)?)
            }
            None => Ok(cone.conormal_sum().to_rational()),
        }
    }

    pub fn gamma_vector(&self) -> Result<Option<LatticeVector>, DocumentError> {
        match &self.gamma {
            Some(g) => {
                self.check_len("gamma", g.len())?;
                Ok(Some(LatticeVector::from_i64(g)))
            }
            None => Ok(None),
        }
    }

    /// The given slice, or `zeta = xi`, `c = <gamma, xi> / 2`.
    pub fn slice_spec(&self, xi: &RationalVector, gamma: Option<&LatticeVector>) -> Result<SliceSpec, DocumentError> {
        match &self.slice {
            Some(s) => {
                self.check_len("slice.zeta", s.zeta.len())?;
                Ok(SliceSpec::new(RationalVector::parse(&s.zeta)?, parse_rational(&s.c)?)?)
            }
            None => {
                let gamma = gamma.ok_or(SliceError::NoCalabiYau)?;
                let level = gamma.dot_rational(xi) / BigRational::from_integer(BigInt::from(2));
                Ok(SliceSpec::new(xi.clone(), level)?)
            }
        }
    }

    fn check_len(&self, field: &'static str, found: usize) -> Result<(), DocumentError> {
        if found == self.dim {
            Ok(())
        } else {
            Err(DocumentError::Length { field, expected: self.dim, found })
        }
    }
}

/// The genus-`g` example with `gamma = (1,0,0)`, `xi` the conormal sum and
/// the slice `zeta = xi`, `c = <gamma, xi> / 2`.
pub fn generate_example(genus: i64) -> Result<ConeSpecDocument, DocumentError> {
    let conormals = genus_family_conormals(genus)?;
    let xi = conormals.iter().fold(LatticeVector::zero(3), |a, v| a.add(v));
    let gamma = LatticeVector::from_i64(&[1, 0, 0]);
    let level = BigRational::new(gamma.dot(&xi), BigInt::from(2));
    let xi_strings = xi.to_rational().to_strings();
    Ok(ConeSpecDocument {
        dim: 3,
        conormals: conormals.iter().map(|v| v.to_i64_vec().expect("small entries")).collect(),
        reeb: Some(xi_strings.clone()),
        gamma: Some(vec![1, 0, 0]),
        slice: Some(SliceDocument { zeta: xi_strings, c: format_rational(&level) }),
        profile: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_documents() {
        let d = generate_example(1).unwrap();
        assert_eq!(d.conormals, vec![vec![1, -1, -1], vec![1, 0, -1], vec![1, 1, 0], vec![1, 2, 3]]);
        assert_eq!(d.reeb.as_deref(), Some(&["4".to_string(), "2".into(), "1".into()][..]));
        assert_eq!(d.slice.as_ref().unwrap().c, "2");
        assert_eq!(generate_example(2).unwrap().conormals.last().unwrap(), &vec![1, -2, 4]);
        assert_eq!(generate_example(3).unwrap().conormals.last().unwrap(), &vec![1, -2, 9]);
        assert!(matches!(generate_example(0), Err(DocumentError::Example(ExampleError::GenusTooSmall(0)))));
        // g = 2: xi = (5, 1, 6), c = 5/2
        assert_eq!(generate_example(2).unwrap().slice.unwrap().c, "5/2");
    }

    #[test]
    fn round_trip() {
        for g in 1..=10 {
            let d = generate_example(g).unwrap();
            assert_eq!(ConeSpecDocument::parse(&d.to_json()).unwrap(), d);
        }
        let mut d = generate_example(1).unwrap();
        for p in [
            ProfileDescriptor::SlagSine {},
            ProfileDescriptor::ShrinkerCircle { a: Some(-2.5) },
            ProfileDescriptor::ShrinkerCircle { a: None },
            ProfileDescriptor::SlagLine { c: 0.1, t_min: -1.0, t_max: 2.0, theta0: 0.30000000000000004 },
        ] {
            d.profile = Some(p);
            assert_eq!(ConeSpecDocument::parse(&d.to_json()).unwrap(), d);
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"dim": 2, "conormals": [[1,0],[0,1]], "colour": "red"}"#;
        assert!(matches!(ConeSpecDocument::parse(text), Err(DocumentError::Json(_))));
        let text = r#"{"dim": 2, "conormals": [[1,0],[0,1]], "profile": {"kind": "slag-sine", "x": 1}}"#;
        assert!(ConeSpecDocument::parse(text).is_err());
        let text = r#"{"dim": 2, "conormals": [[1,0],[0,1]], "slice": {"zeta": ["1","1"], "c": "1/2", "h": 0}}"#;
        assert!(ConeSpecDocument::parse(text).is_err());
    }

    #[test]
    fn defaults_and_validation() {
        let d = ConeSpecDocument::parse(r#"{"dim": 2, "conormals": [[1,0],[1,2]]}"#).unwrap();
        let cone = d.cone().unwrap();
        let xi = d.reeb_vector(&cone).unwrap();
        assert_eq!(xi, RationalVector::from_i64(&[2, 2]));
        let g = LatticeVector::from_i64(&[1, 0]);
        assert_eq!(d.slice_spec(&xi, Some(&g)).unwrap().level(), &parse_rational("1").unwrap());
        let bad = ConeSpecDocument::parse(r#"{"dim": 3, "conormals": [[2,0,2],[0,1,0],[0,0,1]]}"#).unwrap();
        assert!(matches!(bad.cone(), Err(DocumentError::Cone(ConeError::NotPrimitive { .. }))));
        let short = ConeSpecDocument::parse(r#"{"dim": 2, "conormals": [[1,0],[0,1]], "reeb": ["1"]}"#).unwrap();
        assert!(matches!(short.reeb_vector(&short.cone().unwrap()), Err(DocumentError::Length { .. })));
    }
}
