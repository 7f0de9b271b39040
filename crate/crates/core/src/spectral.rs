//! Spectral reference solver.
//!
//! The operator matrix is upper triangular in the monomial basis, so the
//! monic degree-`n` eigenpolynomial follows from back-substitution. Its zeros
//! are real and simple for valid equations and are isolated by sign changes on
//! a refined grid, bisected, then Newton-polished.
//!
//! Monomial coefficients of high-degree eigenpolynomials are useless for
//! evaluation in floating point (the Legendre `P_100` loses every digit to
//! cancellation inside `(-1, 1)`), so [`oracle_zeros`] evaluates through the
//! three-term recurrence `y_{k+1} = (x - b_k) y_k - g_k y_{k-1}` instead. The
//! recurrence coefficients come from the two leading subdiagonal coefficients
//! of each monic eigenpolynomial, which the back-substitution produces without
//! cancellation.

use serde::Serialize;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::operator::{check_simple_spectrum, eigenvalue, operator_matrix, Domain, EquationSpec};

const BISECTION_TOL: f64 = 1e-10;
const MAX_GRID_REFINEMENTS: u32 = 22;
const MAX_EXPONENT: f64 = 700.0;

/// Polynomial coefficients in ascending degree with nonzero leading term.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PolynomialCoefficients {
    coeffs: Vec<f64>,
}

impl PolynomialCoefficients {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        match coeffs.last() {
            Some(&lead) if lead != 0.0 && lead.is_finite() => Ok(PolynomialCoefficients { coeffs }),
            _ => Err(Error::InvalidParameter(
                "leading coefficient must be finite and nonzero".into(),
            )),
        }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &Configuration) -> Self {
        PolynomialCoefficients {
            coeffs: roots.monic_polynomial(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[self.degree()]
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1.0
    }

    /// Value and derivative by Horner's scheme.
    pub fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let mut value = 0.0;
        let mut deriv = 0.0;
        for &c in self.coeffs.iter().rev() {
            deriv = deriv * x + value;
            value = value * x + c;
        }
        (value, deriv)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_with_derivative(x).0
    }
}

/// Monic `c` with `M c = lambda_n c`, by back-substitution.
pub fn eigen_coefficients(spec: &EquationSpec, n: usize) -> Result<PolynomialCoefficients> {
    check_simple_spectrum(spec, n)?;
    let m = operator_matrix(spec, n);
    let lambda_n = eigenvalue(spec, n);
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    for j in (0..n).rev() {
        let acc: f64 = (j + 1..=n.min(j + 2)).map(|k| m.get(j, k) * c[k]).sum();
        c[j] = acc / (lambda_n - eigenvalue(spec, j));
    }
    Ok(PolynomialCoefficients { coeffs: c })
}

/// Real roots of `coeffs` inside `domain`, searched within a root-modulus
/// bound.
pub fn poly_roots(coeffs: &PolynomialCoefficients, domain: &Domain) -> Result<Configuration> {
    let n = coeffs.degree();
    // Rescaling leaves the roots unchanged; it does not recover the digits
    // lost to cancellation at high degree.
    let poly = if n > 60 {
        let big = coeffs.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        PolynomialCoefficients {
            coeffs: coeffs.coeffs.iter().map(|c| c / big).collect(),
        }
    } else {
        coeffs.clone()
    };
    let bound = root_bound(coeffs.coeffs());
    let lo = domain.lower().max(-bound);
    let hi = domain.upper().min(bound);
    let roots = isolate_real_roots(|x| poly.eval_with_derivative(x), lo, hi, n)?;
    Configuration::new(roots)
}

/// Smaller of the Cauchy bound `1 + max |c_i / c_n|` and the Fujiwara bound
/// `2 max |c_{n-k} / c_n|^(1/k)` on the modulus of every root.
fn root_bound(c: &[f64]) -> f64 {
    let n = c.len() - 1;
    let lead = c[n];
    let cauchy = 1.0 + c[..n].iter().fold(0.0f64, |m, v| m.max((v / lead).abs()));
    let fujiwara = 2.0
        * (1..=n)
            .map(|k| {
                let r = (c[n - k] / lead).abs();
                let r = if k == n { 0.5 * r } else { r };
                r.powf(1.0 / k as f64)
            })
            .fold(0.0f64, f64::max);
    // pad so roots on the bound are bracketed
    cauchy.min(fujiwara) * (1.0 + 1e-9) + f64::MIN_POSITIVE
}

/// Zeros of the degree-`n` eigenpolynomial of `spec`.
pub fn oracle_zeros(spec: &EquationSpec, n: usize) -> Result<Configuration> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one zero".into()));
    }
    let rec = EigenRecurrence::new(spec, n)?;
    let (lo, hi) = rec.root_interval();
    let domain = spec.domain();
    let lo = lo.max(domain.lower());
    let hi = hi.min(domain.upper());
    let roots = isolate_real_roots(|x| rec.eval_scaled(x), lo, hi, n)?;
    if let Some(&r) = roots.iter().find(|&&r| !domain.contains(r)) {
        return Err(Error::RootOutsideDomain(r));
    }
    Configuration::new(roots)
}

/// Three-term recurrence for the monic eigenpolynomials `y_0, ..., y_n`.
#[derive(Debug, Clone)]
pub struct EigenRecurrence {
    /// `b_k` for `k = 0..n`.
    shift: Vec<f64>,
    /// `g_k` for `k = 0..n` (`g_0` unused).
    coupling: Vec<f64>,
    /// Sub-leading coefficients `s_n`, `t_n` of `y_n`.
    top: (f64, f64),
}

impl EigenRecurrence {
    pub fn new(spec: &EquationSpec, n: usize) -> Result<Self> {
        check_simple_spectrum(spec, n)?;
        let m = operator_matrix(spec, n);
        let lam: Vec<f64> = (0..=n).map(|k| eigenvalue(spec, k)).collect();
        // s_k, t_k: coefficients of x^{k-1}, x^{k-2} in monic y_k
        let mut s = vec![0.0; n + 1];
        let mut t = vec![0.0; n + 1];
        for k in 1..=n {
            s[k] = m.get(k - 1, k) / (lam[k] - lam[k - 1]);
            if k >= 2 {
                t[k] = (m.get(k - 2, k - 1) * s[k] + m.get(k - 2, k)) / (lam[k] - lam[k - 2]);
            }
        }
        let mut shift = vec![0.0; n];
        let mut coupling = vec![0.0; n];
        for k in 0..n {
            shift[k] = s[k] - s[k + 1];
            if k >= 1 {
                coupling[k] = t[k] - shift[k] * s[k] - t[k + 1];
            }
        }
        Ok(EigenRecurrence {
            shift,
            coupling,
            top: (s[n], t[n]),
        })
    }

    pub fn degree(&self) -> usize {
        self.shift.len()
    }

    pub fn shifts(&self) -> &[f64] {
        &self.shift
    }

    pub fn couplings(&self) -> &[f64] {
        &self.coupling
    }

    /// `(y_n(x), y_n'(x))` up to a common positive factor, which keeps the
    /// sign and the Newton ratio intact while avoiding overflow.
    pub fn eval_scaled(&self, x: f64) -> (f64, f64) {
        const BIG: f64 = 1e150;
        const SMALL: f64 = 1e-150;
        let (mut y_prev, mut y) = (0.0, 1.0);
        let (mut d_prev, mut d) = (0.0, 0.0);
        for (k, (&b, &g)) in self.shift.iter().zip(&self.coupling).enumerate() {
            let g = if k == 0 { 0.0 } else { g };
            let y_next = (x - b) * y - g * y_prev;
            let d_next = y + (x - b) * d - g * d_prev;
            y_prev = y;
            y = y_next;
            d_prev = d;
            d = d_next;
            let size = y.abs().max(y_prev.abs()).max(d.abs()).max(d_prev.abs());
            if size > BIG || (size < SMALL && size > 0.0) {
                let f = 1.0 / size;
                y *= f;
                y_prev *= f;
                d *= f;
                d_prev *= f;
            }
        }
        (y, d)
    }

    /// Interval containing every root of a real-rooted monic `y_n`, from the
    /// mean and spread of the roots implied by the two sub-leading
    /// coefficients.
    fn root_interval(&self) -> (f64, f64) {
        let n = self.degree() as f64;
        let (s, t) = self.top;
        let mean = -s / n;
        let var = ((s * s - 2.0 * t) / n - mean * mean).max(0.0);
        let radius = (n - 1.0).sqrt() * var.sqrt();
        let pad = 1e-6 * (1.0 + mean.abs() + radius) + 1e-12;
        (mean - radius - pad, mean + radius + pad)
    }
}

/// Finds `n` simple real roots of a function in `[lo, hi]` given a
/// value/derivative evaluator. Sign changes are searched on a uniform grid
/// refined until `n` brackets appear; each bracket is bisected and then
/// polished with safeguarded Newton steps.
fn isolate_real_roots<F>(eval: F, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>>
where
    F: Fn(f64) -> (f64, f64),
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::RootCountMismatch { found: 0, expected: n });
    }
    let mut cells = 4 * n + 4;
    let mut best = 0;
    for _ in 0..=MAX_GRID_REFINEMENTS {
        let brackets = sign_changes(&eval, lo, hi, cells);
        best = best.max(brackets.len());
        if brackets.len() == n {
            return Ok(brackets
                .into_iter()
                .map(|(a, b)| refine_root(&eval, a, b))
                .collect());
        }
        if brackets.len() > n {
            break;
        }
        cells *= 2;
    }
    Err(Error::RootCountMismatch { found: best, expected: n })
}

fn sign_changes<F>(eval: &F, lo: f64, hi: f64, cells: usize) -> Vec<(f64, f64)>
where
    F: Fn(f64) -> (f64, f64),
{
    let h = (hi - lo) / cells as f64;
    let node = |i: usize| if i == cells { hi } else { lo + h * i as f64 };
    let mut out = Vec::new();
    let mut a = lo;
    let mut fa = eval(a).0;
    let mut i = 1;
    while i <= cells {
        let b = node(i);
        let fb = eval(b).0;
        if fa == 0.0 {
            out.push((a, a));
            // skip past the exact root so it is not counted twice
            a = b;
            fa = fb;
            i += 1;
            continue;
        }
        if fa * fb < 0.0 {
            out.push((a, b));
        }
        a = b;
        fa = fb;
        i += 1;
    }
    if fa == 0.0 {
        out.push((a, a));
    }
    out
}

fn refine_root<F>(eval: &F, mut a: f64, mut b: f64) -> f64
where
    F: Fn(f64) -> (f64, f64),
{
    if a == b {
        return a;
    }
    let mut fa = eval(a).0;
    while (b - a) > BISECTION_TOL * a.abs().max(b.abs()).max(1.0) {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = eval(m).0;
        if fm == 0.0 {
            return m;
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    // Newton polish kept inside a slightly widened bracket
    let width = b - a;
    let (lo, hi) = (a - width, b + width);
    let mut x = 0.5 * (a + b);
    for _ in 0..8 {
        let (f, df) = eval(x);
        if f == 0.0 || df == 0.0 || !df.is_finite() {
            break;
        }
        let next = x - f / df;
        if !(next > lo && next < hi) {
            break;
        }
        let done = (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE);
        x = next;
        if done {
            break;
        }
    }
    x
}

/// Applies `exp(t M)` to `coeffs` by changing to the eigenpolynomial basis,
/// scaling mode `k` by `exp(lambda_k t)` and changing back.
pub fn heat_propagate(
    spec: &EquationSpec,
    coeffs: &PolynomialCoefficients,
    t: f64,
) -> Result<PolynomialCoefficients> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!("t = {t} must be nonnegative")));
    }
    let n = coeffs.degree();
    check_simple_spectrum(spec, n)?;
    let top = (0..=n).map(|k| eigenvalue(spec, k) * t).fold(0.0f64, f64::max);
    if top > MAX_EXPONENT {
        return Err(Error::Overflow(top));
    }
    // basis[k] = monic y_k, length k + 1
    let basis: Vec<Vec<f64>> = (0..=n)
        .map(|k| eigen_coefficients(spec, k).map(|p| p.coeffs))
        .collect::<Result<_>>()?;

    // unit upper triangular solve Y a = c
    let mut rem = coeffs.coeffs.clone();
    let mut amp = vec![0.0; n + 1];
    for k in (0..=n).rev() {
        amp[k] = rem[k];
        for (j, yj) in basis[k].iter().enumerate() {
            rem[j] -= amp[k] * yj;
        }
    }

    let mut out = vec![0.0; n + 1];
    for (k, yk) in basis.iter().enumerate() {
        let w = amp[k] * (eigenvalue(spec, k) * t).exp();
        for (j, yj) in yk.iter().enumerate() {
            out[j] += w * yj;
        }
    }
    PolynomialCoefficients::new(out)
}
