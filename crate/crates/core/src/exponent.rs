//! Variable exponents `p ∈ C₊(Ω̄)` sampled on grid nodes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::profile::ProfileSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExponentSource {
    Constant { value: f64 },
    Affine { a: f64, b: f64 },
    Tabulated,
    Conjugate,
}

/// Nodal exponent values together with their extrema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentField {
    pub values: Vec<f64>,
    pub p_minus: f64,
    pub p_plus: f64,
    pub source: ExponentSource,
    /// Spatial dimension the field was validated against.
    pub dim: usize,
}

/// Checks `1 < p(x) < ∞` at every node and records `p⁻`, `p⁺`.
pub fn validate_exponent(raw: &[f64], dim: usize) -> Result<ExponentField> {
    if raw.is_empty() {
        return Err(Error::InvalidParameter("empty exponent field".into()));
    }
    for (node, &value) in raw.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite { node, value });
        }
        if value <= 1.0 {
            return Err(Error::ExponentNotAdmissible { node, value });
        }
    }
    let p_minus = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let p_plus = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(ExponentField { values: raw.to_vec(), p_minus, p_plus, source: ExponentSource::Tabulated, dim })
}

impl ExponentField {
    pub fn constant(value: f64, len: usize, dim: usize) -> Result<Self> {
        let mut p = validate_exponent(&vec![value; len], dim)?;
        p.source = ExponentSource::Constant { value };
        Ok(p)
    }

    pub fn from_spec(spec: &ProfileSpec, grid: &Grid) -> Result<Self> {
        let mut p = validate_exponent(&spec.sample(grid)?, grid.dim())?;
        p.source = match *spec {
            ProfileSpec::Constant { value } => ExponentSource::Constant { value },
            ProfileSpec::Affine { a, b } => ExponentSource::Affine { a, b },
            ProfileSpec::Table { .. } => ExponentSource::Tabulated,
        };
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `p⁻ > N/2`, the embedding condition the certificate relies on.
    pub fn certificate_eligible(&self) -> bool {
        self.p_minus > self.dim as f64 / 2.0
    }

    pub fn is_constant(&self) -> bool {
        self.p_minus == self.p_plus
    }

    /// Nodewise `p' = p / (p - 1)`.
    pub fn conjugate(&self) -> ExponentField {
        let values: Vec<f64> = self.values.iter().map(|&p| p / (p - 1.0)).collect();
        let mut q = validate_exponent(&values, self.dim).expect("conjugate of an admissible exponent is admissible");
        q.source = ExponentSource::Conjugate;
        q
    }

    /// Nodewise critical Sobolev exponent `Np/(N - 2p)` where `p < N/2`,
    /// `f64::INFINITY` otherwise.
    pub fn critical_exponent(&self, dim: usize) -> Vec<f64> {
        let n = dim as f64;
        self.values
            .iter()
            .map(|&p| if p < n / 2.0 { n * p / (n - 2.0 * p) } else { f64::INFINITY })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Domain;
    use proptest::prelude::*;

    #[test]
    fn constant_two_is_eligible_in_one_dimension() {
        let p = validate_exponent(&[2.0; 11], 1).unwrap();
        assert_eq!((p.p_minus, p.p_plus), (2.0, 2.0));
        assert!(p.certificate_eligible());
        let p = validate_exponent(&[2.0; 11], 4).unwrap();
        assert!(!p.certificate_eligible());
    }

    #[test]
    fn affine_extrema() {
        let grid = Grid::new(Domain::unit_interval(), 11).unwrap();
        let p = ExponentField::from_spec(&ProfileSpec::Affine { a: 2.0, b: 1.0 }, &grid).unwrap();
        assert_eq!(p.p_minus, 2.0);
        assert_eq!(p.p_plus, 3.0);
        assert_eq!(p.source, ExponentSource::Affine { a: 2.0, b: 1.0 });
    }

    #[test]
    fn rejects_inadmissible_values() {
        let err = validate_exponent(&[2.0, 1.0, 2.0], 1).unwrap_err();
        assert_eq!(err, Error::ExponentNotAdmissible { node: 1, value: 1.0 });
        assert!(err.to_string().contains("exponent not in C+"));
        assert!(matches!(validate_exponent(&[2.0, f64::INFINITY], 1), Err(Error::NonFinite { node: 1, .. })));
        assert!(matches!(validate_exponent(&[f64::NAN], 1), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn conjugate_examples() {
        let p = validate_exponent(&[2.0, 3.0, 2.5], 1).unwrap();
        let q = p.conjugate();
        assert_eq!(q.values[0], 2.0);
        assert!((q.values[1] - 1.5).abs() < 1e-15);
        assert!((q.values[2] - 5.0 / 3.0).abs() < 1e-15);
        assert_eq!(q.p_minus, 1.5);
        assert_eq!(q.p_plus, 2.0);
    }

    #[test]
    fn critical_exponent_branches() {
        let p = validate_exponent(&[2.0; 3], 5).unwrap();
        assert!(p.critical_exponent(5).iter().all(|&v| (v - 10.0).abs() < 1e-12));
        assert!(p.critical_exponent(1).iter().all(|v| v.is_infinite()));
        assert!(p.critical_exponent(4).iter().all(|v| v.is_infinite()));
    }

    proptest! {
        #[test]
        fn conjugate_identities(values in prop::collection::vec(1.001f64..50.0, 1..40)) {
            let p = validate_exponent(&values, 2).unwrap();
            let q = p.conjugate();
            let qq = q.conjugate();
            for i in 0..values.len() {
                prop_assert!((1.0 / p.values[i] + 1.0 / q.values[i] - 1.0).abs() < 1e-12);
                prop_assert!((qq.values[i] - p.values[i]).abs() < 1e-12);
                prop_assert!(p.p_minus <= p.values[i] && p.values[i] <= p.p_plus);
            }
        }
    }
}
