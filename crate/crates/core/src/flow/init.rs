use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::operator::EquationSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitStrategy {
    /// Evenly spaced: interior partition of a bounded domain, unit spacing
    /// from the finite end of a half-line, centred unit spacing on the line.
    Equispaced,
    /// Uniform draws from the middle tenth of a bounded domain (or an
    /// `n`-wide window on unbounded ones), reproducible per seed.
    Seeded(u64),
    /// `x_i = i` for `i = 1..=n`.
    Indexed,
}

/// Starting configuration of `n` particles for `spec`.
pub fn default_init(spec: &EquationSpec, n: usize, strategy: InitStrategy) -> Result<Configuration> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one particle".into()));
    }
    let domain = spec.domain();
    let (lo, hi) = (domain.lower(), domain.upper());
    let nf = n as f64;
    let points: Vec<f64> = match strategy {
        InitStrategy::Equispaced => {
            if let Some(center) = domain.center() {
                let h = (hi - lo) / (nf + 1.0);
                (1..=n).map(|i| center + h * (i as f64 - 0.5 * (nf + 1.0))).collect()
            } else if lo.is_finite() {
                (1..=n).map(|i| lo + i as f64).collect()
            } else if hi.is_finite() {
                (1..=n).map(|i| hi - (nf + 1.0 - i as f64)).collect()
            } else {
                (0..n).map(|i| i as f64 - 0.5 * (nf - 1.0)).collect()
            }
        }
        InitStrategy::Seeded(seed) => {
            let (a, b) = if let Some(center) = domain.center() {
                let half = 0.05 * (hi - lo);
                (center - half, center + half)
            } else if lo.is_finite() {
                (lo, lo + nf)
            } else if hi.is_finite() {
                (hi - nf, hi)
            } else {
                (-0.5 * nf, 0.5 * nf)
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pts: Vec<f64> = Vec::with_capacity(n);
            while pts.len() < n {
                let x: f64 = rng.random_range(a..b);
                if x > lo && x < hi && !pts.contains(&x) {
                    pts.push(x);
                }
            }
            pts.sort_by(f64::total_cmp);
            pts
        }
        InitStrategy::Indexed => (1..=n).map(|i| i as f64).collect(),
    };
    Configuration::in_domain(points, &domain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{make_classical, ClassicalFamily};

    #[test]
    fn indexed_laguerre() {
        let spec = make_classical(ClassicalFamily::Laguerre { alpha: 0.0 }).unwrap();
        let c = default_init(&spec, 100, InitStrategy::Indexed).unwrap();
        let expected: Vec<f64> = (1..=100).map(f64::from).collect();
        assert_eq!(c.points(), expected.as_slice());
    }

    #[test]
    fn equispaced_legendre() {
        let spec = make_classical(ClassicalFamily::Legendre).unwrap();
        let c = default_init(&spec, 3, InitStrategy::Equispaced).unwrap();
        assert_eq!(c.points(), &[-0.5, 0.0, 0.5]);
        let herm = make_classical(ClassicalFamily::Hermite).unwrap();
        let c = default_init(&herm, 4, InitStrategy::Equispaced).unwrap();
        assert_eq!(c.points(), &[-1.5, -0.5, 0.5, 1.5]);
        let lag = make_classical(ClassicalFamily::Laguerre { alpha: 1.0 }).unwrap();
        let c = default_init(&lag, 3, InitStrategy::Equispaced).unwrap();
        assert_eq!(c.points(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn seeded_is_reproducible_and_confined() {
        let spec = make_classical(ClassicalFamily::Legendre).unwrap();
        let a = default_init(&spec, 100, InitStrategy::Seeded(7)).unwrap();
        let b = default_init(&spec, 100, InitStrategy::Seeded(7)).unwrap();
        let c = default_init(&spec, 100, InitStrategy::Seeded(8)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 100);
        assert!(a.points().iter().all(|x| x.abs() < 0.1));
    }

    #[test]
    fn indexed_outside_bounded_domain_fails() {
        let spec = make_classical(ClassicalFamily::Legendre).unwrap();
        assert!(default_init(&spec, 2, InitStrategy::Indexed).is_err());
        assert!(default_init(&spec, 0, InitStrategy::Equispaced).is_err());
    }
}
