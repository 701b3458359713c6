//! Scalar fields sampled on the sites of a domain.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which sites a field is meaningful on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    Interior,
    Boundary,
    AllSites,
}

/// Where a field came from, for report bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Input,
    Extension,
    Trace,
    GradientSurrogate,
}

/// A function sampled on interior or boundary sites. Values are stored for
/// every site; entries off the support are zero and never read.
#[derive(Debug, Clone)]
pub struct ScalarField<T: Scalar> {
    pub values: Vec<T>,
    pub support: Support,
    pub provenance: Provenance,
}

impl<T: Scalar> ScalarField<T> {
    pub fn new(values: Vec<T>, support: Support, provenance: Provenance) -> Self {
        Self { values, support, provenance }
    }

    pub fn zeros(n: usize, support: Support) -> Self {
        Self::new(vec![T::zero(); n], support, Provenance::Input)
    }

    /// Sample a function of the site coordinates on the given support.
    pub fn from_fn(
        n: usize,
        support_sites: &[usize],
        support: Support,
        mut f: impl FnMut(usize) -> T,
    ) -> Self {
        let mut values = vec![T::zero(); n];
        for &i in support_sites {
            values[i] = f(i);
        }
        Self::new(values, support, Provenance::Input)
    }

    pub fn value(&self, site: usize) -> T {
        self.values[site]
    }

    /// Check that every support-site value is finite.
    pub fn validate_on(&self, support_sites: &[usize]) -> Result<()> {
        for &i in support_sites {
            let v = self.values[i];
            if !v.is_finite() {
                return Err(Error::NonFiniteValue { site: i, value: v.f64() });
            }
        }
        Ok(())
    }

    /// `a*self + b*other`, elementwise on the common support.
    pub fn linear_combination(&self, a: T, other: &Self, b: T) -> Result<Self> {
        if self.values.len() != other.values.len() || self.support != other.support {
            return Err(Error::FieldMismatch(
                "linear combination of fields with different supports".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&x, &y)| a * x + b * y)
            .collect();
        Ok(Self::new(values, self.support, Provenance::Input))
    }

    pub fn scaled(&self, a: T) -> Self {
        Self::new(
            self.values.iter().map(|&x| a * x).collect(),
            self.support,
            self.provenance,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_combination_respects_support() {
        let f = ScalarField::new(vec![1.0, 2.0], Support::Boundary, Provenance::Input);
        let g = ScalarField::new(vec![0.5, -1.0], Support::Boundary, Provenance::Input);
        let h = f.linear_combination(2.0, &g, 3.0).unwrap();
        assert_eq!(h.values, vec![3.5, 1.0]);
        let bad = ScalarField::new(vec![0.0, 0.0], Support::Interior, Provenance::Input);
        assert!(f.linear_combination(1.0, &bad, 1.0).is_err());
    }

    #[test]
    fn validation_flags_non_finite() {
        let f = ScalarField::new(vec![1.0, f64::NAN], Support::Boundary, Provenance::Input);
        assert!(f.validate_on(&[0]).is_ok());
        assert!(f.validate_on(&[0, 1]).is_err());
    }
}
