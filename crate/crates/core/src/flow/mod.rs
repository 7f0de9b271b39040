//! Particle flow `dx_i/dt = R_i(x)` towards the zeros of the degree-`n`
//! eigenpolynomial.
//!
//! Writing `u(t, x) = h(t) prod (x - x_i(t))` for the solution of
//! `u_t = -(p u_x)_x + q u_x`, differentiating `u(t, x_i(t)) = 0` gives exactly
//! this system, so the particles follow the roots of `exp(t M) c(0)` and
//! converge at rate at least `lambda_n - lambda_{n-1}`.
//!
//! For Legendre the right-hand side is
//! `(1 - x_i^2) sum_{k != i} 2/(x_i - x_k) - 2 x_i`; note the coefficient is
//! `1 - x_i^2`, not `(1 - x_i)^2`.

mod dopri;
mod init;
mod rate;

pub use init::{default_init, InitStrategy};
pub use rate::{estimate_rate, RateReport};

use serde::Serialize;

use crate::config::Configuration;
use crate::equilibrium::{max_norm, residual, residual_of};
use crate::error::{Error, Result};
use crate::operator::EquationSpec;

/// Right-hand side of the particle system; identical to the residual.
pub fn flow_rhs(spec: &EquationSpec, config: &Configuration) -> Vec<f64> {
    residual(spec, config)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowOptions {
    pub t_max: f64,
    /// Stop once `max_i |R_i|` drops below this.
    pub residual_tol: f64,
    pub initial_step: f64,
    pub max_steps: usize,
    /// Store every `snapshot_stride`-th accepted step (first and last are
    /// always stored).
    pub snapshot_stride: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl FlowOptions {
    /// Defaults for `n` particles: every step stored up to `n = 10`, every
    /// tenth beyond. The error tolerances sit well below `residual_tol`: near
    /// the equilibrium the step size is stability-limited and the residual
    /// stalls at a few times `rel_tol`.
    pub fn for_size(n: usize) -> Self {
        FlowOptions {
            t_max: 100.0,
            residual_tol: 1e-10,
            initial_step: 1e-3,
            max_steps: 1_000_000,
            snapshot_stride: if n <= 10 { 1 } else { 10 },
            rel_tol: 1e-12,
            abs_tol: 1e-14,
        }
    }

    fn validate(&self) -> Result<()> {
        let positive = [
            self.t_max,
            self.residual_tol,
            self.initial_step,
            self.rel_tol,
            self.abs_tol,
        ];
        if positive.iter().any(|v| !(*v > 0.0)) || self.max_steps == 0 || self.snapshot_stride == 0 {
            return Err(Error::InvalidParameter(format!(
                "flow options must be positive: {self:?}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Snapshot {
    pub t: f64,
    pub config: Configuration,
    pub residual_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FlowFailure {
    /// Particles about to cross or merge even at the smallest step.
    CollisionImminent,
    LeftDomain,
    MaxStepsExceeded,
    /// Error control rejected the smallest allowed step.
    StepSizeUnderflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Termination {
    Converged,
    MaxTime,
    Failed(FlowFailure),
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub spec: EquationSpec,
    pub snapshots: Vec<Snapshot>,
    pub terminated_by: Termination,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

impl Trajectory {
    pub fn last(&self) -> &Snapshot {
        self.snapshots.last().expect("trajectory holds the initial snapshot")
    }

    pub fn final_config(&self) -> &Configuration {
        &self.last().config
    }

    pub fn converged(&self) -> bool {
        self.terminated_by == Termination::Converged
    }
}

enum Guard {
    Order,
    Domain,
    GapShrink,
}

fn check_guards(spec: &EquationSpec, x: &[f64], old_gap: f64) -> std::result::Result<Configuration, Guard> {
    let config = Configuration::new(x.to_vec()).map_err(|_| Guard::Order)?;
    config.check_domain(&spec.domain()).map_err(|_| Guard::Domain)?;
    if config.min_gap() < 0.5 * old_gap {
        return Err(Guard::GapShrink);
    }
    Ok(config)
}

/// Integrates the particle system with an adaptive Dormand–Prince 5(4) pair.
///
/// A step is accepted only if the error estimate passes, the particles stay
/// ordered and inside the domain, and the smallest gap shrinks by at most
/// half. Rejected steps are halved; a guard failure at the minimum step ends
/// the run with [`Termination::Failed`].
pub fn integrate(spec: &EquationSpec, start: &Configuration, opts: &FlowOptions) -> Result<Trajectory> {
    opts.validate()?;
    start.check_domain(&spec.domain())?;

    let f = |x: &[f64]| residual_of(spec, x);
    let scale = start.scale();
    let h_min = 1e-15 * opts.t_max.max(1.0);

    let mut t = 0.0;
    let mut config = start.clone();
    let mut k1 = f(config.points());
    let mut res = max_norm(&k1);
    let mut snapshots = vec![Snapshot {
        t,
        config: config.clone(),
        residual_norm: res,
    }];
    let mut h = opts.initial_step.min(opts.t_max);
    let mut accepted = 0usize;
    let mut rejected = 0usize;
    let mut stored_last = true;

    let terminated_by = loop {
        if res < opts.residual_tol {
            break Termination::Converged;
        }
        if t >= opts.t_max {
            break Termination::MaxTime;
        }
        if accepted >= opts.max_steps {
            break Termination::Failed(FlowFailure::MaxStepsExceeded);
        }
        let h_try = h.min(opts.t_max - t);
        let last_stretch = h_try < h;

        let x = config.points();
        let outcome = dopri::step(&f, x, &k1, h_try);
        let (x_new, k_new, err) = match outcome {
            Some(v) => v,
            None => {
                rejected += 1;
                if h_try <= h_min {
                    break Termination::Failed(FlowFailure::CollisionImminent);
                }
                h = 0.5 * h_try;
                continue;
            }
        };

        let err_norm = (err
            .iter()
            .zip(x.iter().zip(&x_new))
            .map(|(e, (a, b))| {
                let sc = opts.abs_tol + opts.rel_tol * a.abs().max(b.abs());
                (e / sc).powi(2)
            })
            .sum::<f64>()
            / x.len() as f64)
            .sqrt();

        if !(err_norm <= 1.0) {
            rejected += 1;
            if h_try <= h_min {
                break Termination::Failed(FlowFailure::StepSizeUnderflow);
            }
            let factor = (0.9 * err_norm.powf(-0.2)).clamp(0.1, 0.5);
            h = (h_try * factor).max(h_min);
            continue;
        }

        match check_guards(spec, &x_new, config.min_gap()) {
            Ok(next) => {
                t = if last_stretch { opts.t_max } else { t + h_try };
                config = next;
                k1 = k_new;
                res = max_norm(&k1);
                accepted += 1;
                stored_last = false;
                if accepted.is_multiple_of(opts.snapshot_stride) {
                    snapshots.push(Snapshot {
                        t,
                        config: config.clone(),
                        residual_norm: res,
                    });
                    stored_last = true;
                }
                let grow = if err_norm == 0.0 { 5.0 } else { (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0) };
                if !last_stretch {
                    h = h_try * grow;
                }
            }
            Err(guard) => {
                rejected += 1;
                if h_try <= h_min {
                    let kind = match guard {
                        Guard::Domain => FlowFailure::LeftDomain,
                        Guard::Order | Guard::GapShrink => FlowFailure::CollisionImminent,
                    };
                    log::warn!(
                        "flow guard failed at t = {t}, min gap {:e} (scale {scale})",
                        config.min_gap()
                    );
                    break Termination::Failed(kind);
                }
                h = (0.5 * h_try).max(h_min);
            }
        }
    };

    if !stored_last {
        snapshots.push(Snapshot {
            t,
            config,
            residual_norm: res,
        });
    }
    log::debug!(
        "flow ended {terminated_by:?} at t = {t} after {accepted} accepted / {rejected} rejected steps"
    );
    Ok(Trajectory {
        spec: *spec,
        snapshots,
        terminated_by,
        accepted_steps: accepted,
        rejected_steps: rejected,
    })
}
