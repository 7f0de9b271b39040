use serde::Serialize;

use super::{Termination, Trajectory};
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::operator::eigenvalue_gap;

const MIN_FIT_POINTS: usize = 10;
const WINDOW_START: f64 = 1e-3;
const WINDOW_END: f64 = 1e-9;

/// Exponential fit of `max_i |x_i(t) - x_i*|` against the eigenvalue gap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateReport {
    /// Negated least-squares slope of the log error.
    pub sigma_hat: f64,
    /// `lambda_n - lambda_{n-1}`.
    pub theoretical_gap: f64,
    pub fit_window: (f64, f64),
    /// Coefficient of determination of the linear fit, clipped to `[0, 1]`.
    pub fit_quality: f64,
    /// Fitted `log c`; reported, not checked.
    pub intercept: f64,
    pub fit_points: usize,
}

/// Fits the decay rate over the tail where the error lies between `1e-3`
/// and `1e-9` times its initial value.
pub fn estimate_rate(traj: &Trajectory, reference: &Configuration) -> Result<RateReport> {
    if let Termination::Failed(_) = traj.terminated_by {
        return Err(Error::NotConverged);
    }
    let errors: Vec<(f64, f64)> = traj
        .snapshots
        .iter()
        .map(|s| (s.t, s.config.max_distance(reference)))
        .collect();
    let e0 = errors[0].1;
    let upper = WINDOW_START * e0;
    let lower = WINDOW_END * e0;
    let first = errors.iter().position(|&(_, e)| e <= upper);
    let last = errors.iter().rposition(|&(_, e)| e >= lower);
    let window: Vec<(f64, f64)> = match (first, last) {
        (Some(a), Some(b)) if a <= b => errors[a..=b]
            .iter()
            .filter(|&&(_, e)| e > 0.0)
            .map(|&(t, e)| (t, e.ln()))
            .collect(),
        _ => Vec::new(),
    };
    if window.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientDecay {
            found: window.len(),
            needed: MIN_FIT_POINTS,
        });
    }

    let m = window.len() as f64;
    let mean_t = window.iter().map(|w| w.0).sum::<f64>() / m;
    let mean_y = window.iter().map(|w| w.1).sum::<f64>() / m;
    let (mut stt, mut sty, mut syy) = (0.0, 0.0, 0.0);
    for &(t, y) in &window {
        stt += (t - mean_t) * (t - mean_t);
        sty += (t - mean_t) * (y - mean_y);
        syy += (y - mean_y) * (y - mean_y);
    }
    let slope = sty / stt;
    let intercept = mean_y - slope * mean_t;
    let ss_res: f64 = window
        .iter()
        .map(|&(t, y)| (y - intercept - slope * t).powi(2))
        .sum();
    let quality = if syy > 0.0 { (1.0 - ss_res / syy).clamp(0.0, 1.0) } else { 0.0 };

    Ok(RateReport {
        sigma_hat: -slope,
        theoretical_gap: eigenvalue_gap(&traj.spec, reference.len()),
        fit_window: (window[0].0, window[window.len() - 1].0),
        fit_quality: quality,
        intercept,
        fit_points: window.len(),
    })
}
