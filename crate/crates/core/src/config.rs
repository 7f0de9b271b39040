use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::Domain;

/// Strictly increasing particle positions.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Configuration {
    points: Vec<f64>,
}

impl Configuration {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidConfiguration("no points".into()));
        }
        if let Some(x) = points.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidConfiguration(format!("non-finite point {x}")));
        }
        if let Some(w) = points.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfiguration(format!(
                "points not strictly increasing at {} >= {}",
                w[0], w[1]
            )));
        }
        Ok(Configuration { points })
    }

    /// Like [`Configuration::new`], additionally requiring every point to lie
    /// inside `domain`.
    pub fn in_domain(points: Vec<f64>, domain: &Domain) -> Result<Self> {
        let config = Self::new(points)?;
        config.check_domain(domain)?;
        Ok(config)
    }

    pub fn check_domain(&self, domain: &Domain) -> Result<()> {
        match self.points.iter().find(|&&x| !domain.contains(x)) {
            Some(x) => Err(Error::InvalidConfiguration(format!(
                "point {x} outside ({}, {})",
                domain.lower(),
                domain.upper()
            ))),
            None => Ok(()),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn into_points(self) -> Vec<f64> {
        self.points
    }

    pub fn min_gap(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// `1 + max |x_i|`, the scale used for relative tolerances.
    pub fn scale(&self) -> f64 {
        1.0 + self.points.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn max_distance(&self, other: &Configuration) -> f64 {
        assert_eq!(self.len(), other.len(), "configuration sizes differ");
        self.points
            .iter()
            .zip(&other.points)
            .fold(0.0, |m, (a, b)| f64::max(m, (a - b).abs()))
    }

    /// Ascending-degree coefficients of the monic polynomial `prod (x - x_i)`.
    pub fn monic_polynomial(&self) -> Vec<f64> {
        let mut c = vec![1.0];
        for &r in &self.points {
            c.push(0.0);
            for k in (1..c.len()).rev() {
                c[k] = c[k - 1] - r * c[k];
            }
            c[0] *= -r;
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsorted_and_duplicates() {
        assert!(Configuration::new(vec![]).is_err());
        assert!(Configuration::new(vec![1.0, 1.0]).is_err());
        assert!(Configuration::new(vec![2.0, 1.0]).is_err());
        assert!(Configuration::new(vec![0.0, f64::NAN]).is_err());
        assert!(Configuration::new(vec![-1.0, 2.0]).is_ok());
    }

    #[test]
    fn domain_membership_is_open() {
        let d = Domain::new(-1.0, 1.0).unwrap();
        assert!(Configuration::in_domain(vec![-1.0, 0.0], &d).is_err());
        assert!(Configuration::in_domain(vec![-0.5, 0.999], &d).is_ok());
    }

    #[test]
    fn monic_expansion() {
        let c = Configuration::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(c.monic_polynomial(), vec![-6.0, 11.0, -6.0, 1.0]);
        let c = Configuration::new(vec![-1.0, 1.0]).unwrap();
        assert_eq!(c.monic_polynomial(), vec![-1.0, 0.0, 1.0]);
    }
}
