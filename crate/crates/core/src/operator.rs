//! Equation specifications and the action of the operator
//! `L y = -(p y')' + q y'` on polynomials of bounded degree.
//!
//! With `deg p <= 2` and `deg q <= 1` the operator maps polynomials of degree
//! at most `n` to themselves. In the monomial basis its matrix is upper
//! triangular with at most three nonzero diagonals, and the diagonal carries
//! the eigenvalues `lambda_m = q1 m - p2 m (m + 1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Open interval `(lower, upper)`; either end may be infinite. Serialized
/// with `null` for an infinite end, since JSON has no infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "DomainRepr", try_from = "DomainRepr")]
pub struct Domain {
    lower: f64,
    upper: f64,
}

#[derive(Serialize, Deserialize)]
struct DomainRepr {
    lower: Option<f64>,
    upper: Option<f64>,
}

impl From<Domain> for DomainRepr {
    fn from(d: Domain) -> Self {
        DomainRepr {
            lower: d.lower.is_finite().then_some(d.lower),
            upper: d.upper.is_finite().then_some(d.upper),
        }
    }
}

impl TryFrom<DomainRepr> for Domain {
    type Error = Error;

    fn try_from(r: DomainRepr) -> Result<Self> {
        Domain::new(
            r.lower.unwrap_or(f64::NEG_INFINITY),
            r.upper.unwrap_or(f64::INFINITY),
        )
    }
}

impl Domain {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() || lower >= upper {
            return Err(Error::InvalidSpec(format!(
                "domain ({lower}, {upper}) is empty"
            )));
        }
        Ok(Domain { lower, upper })
    }

    pub fn real_line() -> Self {
        Domain {
            lower: f64::NEG_INFINITY,
            upper: f64::INFINITY,
        }
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lower && x < self.upper
    }

    pub fn is_bounded(&self) -> bool {
        self.lower.is_finite() && self.upper.is_finite()
    }

    /// Midpoint for bounded domains, `None` otherwise.
    pub fn center(&self) -> Option<f64> {
        self.is_bounded().then_some(0.5 * (self.lower + self.upper))
    }
}

/// The named polynomial families whose equations have a canonical form here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ClassicalFamily {
    /// Probabilists' Hermite, `-y'' + x y' = n y`.
    Hermite,
    Legendre,
    Jacobi { alpha: f64, beta: f64 },
    Laguerre { alpha: f64 },
    ChebyshevFirst,
    ChebyshevSecond,
}

impl ClassicalFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ClassicalFamily::Hermite => "hermite",
            ClassicalFamily::Legendre => "legendre",
            ClassicalFamily::Jacobi { .. } => "jacobi",
            ClassicalFamily::Laguerre { .. } => "laguerre",
            ClassicalFamily::ChebyshevFirst => "chebyshev1",
            ClassicalFamily::ChebyshevSecond => "chebyshev2",
        }
    }
}

/// Coefficients of `p(x) = p2 x^2 + p1 x + p0` and `q(x) = q1 x + q0`
/// together with the interval on which the particles live.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquationSpec {
    pub(crate) p2: f64,
    pub(crate) p1: f64,
    pub(crate) p0: f64,
    pub(crate) q1: f64,
    pub(crate) q0: f64,
    pub(crate) domain: Domain,
}

impl EquationSpec {
    /// Validates that `p` is not identically zero and has no root strictly
    /// inside the domain.
    pub fn new(p: [f64; 3], q: [f64; 2], domain: Domain) -> Result<Self> {
        let [p2, p1, p0] = p;
        let [q1, q0] = q;
        if p.iter().chain(q.iter()).any(|c| !c.is_finite()) {
            return Err(Error::InvalidSpec("non-finite coefficient".into()));
        }
        if p2 == 0.0 && p1 == 0.0 && p0 == 0.0 {
            return Err(Error::InvalidSpec("p is identically zero".into()));
        }
        let spec = EquationSpec {
            p2,
            p1,
            p0,
            q1,
            q0,
            domain,
        };
        if let Some(r) = spec.p_roots().into_iter().find(|&r| domain.contains(r)) {
            return Err(Error::InvalidSpec(format!(
                "p vanishes at {r} inside the domain"
            )));
        }
        Ok(spec)
    }

    pub fn p_coeffs(&self) -> [f64; 3] {
        [self.p2, self.p1, self.p0]
    }

    pub fn q_coeffs(&self) -> [f64; 2] {
        [self.q1, self.q0]
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    #[inline]
    pub fn p(&self, x: f64) -> f64 {
        (self.p2 * x + self.p1) * x + self.p0
    }

    #[inline]
    pub fn dp(&self, x: f64) -> f64 {
        2.0 * self.p2 * x + self.p1
    }

    #[inline]
    pub fn d2p(&self) -> f64 {
        2.0 * self.p2
    }

    #[inline]
    pub fn q(&self, x: f64) -> f64 {
        self.q1 * x + self.q0
    }

    #[inline]
    pub fn dq(&self) -> f64 {
        self.q1
    }

    /// Real roots of `p`.
    pub fn p_roots(&self) -> Vec<f64> {
        let (a, b, c) = (self.p2, self.p1, self.p0);
        if a == 0.0 {
            if b == 0.0 {
                return Vec::new();
            }
            return vec![-c / b];
        }
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return Vec::new();
        }
        // cancellation-free quadratic formula
        let s = -0.5 * (b + b.signum() * disc.sqrt());
        if s == 0.0 {
            return vec![0.0];
        }
        let (r1, r2) = (s / a, c / s);
        if r1 <= r2 {
            vec![r1, r2]
        } else {
            vec![r2, r1]
        }
    }
}

/// Canonical equation for a classical family, normalized so that
/// `lambda_n > 0` for `n >= 1` and the family's polynomials are the
/// eigenfunctions.
pub fn make_classical(family: ClassicalFamily) -> Result<EquationSpec> {
    let interval = Domain::new(-1.0, 1.0)?;
    match family {
        ClassicalFamily::Hermite => EquationSpec::new([0.0, 0.0, 1.0], [1.0, 0.0], Domain::real_line()),
        ClassicalFamily::Legendre => make_classical(ClassicalFamily::Jacobi {
            alpha: 0.0,
            beta: 0.0,
        }),
        ClassicalFamily::Jacobi { alpha, beta } => {
            check_param("alpha", alpha)?;
            check_param("beta", beta)?;
            EquationSpec::new([-1.0, 0.0, 1.0], [alpha + beta, alpha - beta], interval)
        }
        ClassicalFamily::Laguerre { alpha } => {
            check_param("alpha", alpha)?;
            EquationSpec::new(
                [0.0, 1.0, 0.0],
                [1.0, -alpha],
                Domain::new(0.0, f64::INFINITY)?,
            )
        }
        ClassicalFamily::ChebyshevFirst => make_classical(ClassicalFamily::Jacobi {
            alpha: -0.5,
            beta: -0.5,
        }),
        ClassicalFamily::ChebyshevSecond => make_classical(ClassicalFamily::Jacobi {
            alpha: 0.5,
            beta: 0.5,
        }),
    }
}

fn check_param(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > -1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {value} must exceed -1")))
    }
}

/// `lambda_n = n q1 - p2 n (n + 1)`, forced by the leading coefficient.
pub fn eigenvalue(spec: &EquationSpec, n: usize) -> f64 {
    let m = n as f64;
    spec.q1 * m - spec.p2 * m * (m + 1.0)
}

/// `lambda_n - lambda_{n-1}`; `n` must be positive.
pub fn eigenvalue_gap(spec: &EquationSpec, n: usize) -> f64 {
    assert!(n >= 1, "eigenvalue gap needs n >= 1");
    eigenvalue(spec, n) - eigenvalue(spec, n - 1)
}

/// Matrix of `L` on polynomials of degree at most `n`, monomial basis,
/// column `m` holding the image of `x^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl OperatorMatrix {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim() + col]
    }

    /// Row-major dense entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// `M c` for an ascending-degree coefficient vector of length `n + 1`.
    pub fn apply(&self, coeffs: &[f64]) -> Vec<f64> {
        assert_eq!(coeffs.len(), self.dim(), "coefficient length mismatch");
        let d = self.dim();
        (0..d)
            .map(|j| {
                (j..d.min(j + 3))
                    .map(|m| self.get(j, m) * coeffs[m])
                    .sum()
            })
            .collect()
    }
}

/// Builds the operator matrix from the closed-form images of `x^m`:
/// diagonal `q1 m - p2 m (m+1)`, first superdiagonal `m (q0 - p1 m)`,
/// second superdiagonal `-p0 m (m-1)`.
pub fn operator_matrix(spec: &EquationSpec, n: usize) -> OperatorMatrix {
    let d = n + 1;
    let mut entries = vec![0.0; d * d];
    for m in 0..d {
        let mf = m as f64;
        entries[m * d + m] = eigenvalue(spec, m);
        if m >= 1 {
            entries[(m - 1) * d + m] = mf * (spec.q0 - spec.p1 * mf);
        }
        if m >= 2 {
            entries[(m - 2) * d + m] = -spec.p0 * mf * (mf - 1.0);
        }
    }
    OperatorMatrix { n, entries }
}

/// Checks `lambda_0 < lambda_1 < ... < lambda_n`, reporting the first
/// offending consecutive pair.
pub fn check_simple_spectrum(spec: &EquationSpec, n: usize) -> Result<()> {
    for k in 1..=n {
        if eigenvalue(spec, k) <= eigenvalue(spec, k - 1) {
            return Err(Error::DegenerateSpectrum { j: k - 1, k });
        }
    }
    Ok(())
}
