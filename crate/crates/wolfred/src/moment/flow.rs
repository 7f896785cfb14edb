//! Descent of the energy along its gradient, with a backtracking step and
//! an exponential retraction. Convergence on the compact group is observed,
//! not guaranteed; on the split form non-convergence is a reported outcome.

use super::{classify_regularity, energy, energy_gradient, Regularity};
use crate::error::MomentError;
use crate::lie::{exp, GroupElement, SkewAdjoint};
use serde::Serialize;

/// One accepted state of the flow.
#[derive(Debug, Clone)]
pub struct FlowState {
    pub t: f64,
    pub energy: f64,
    pub g: GroupElement,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum FlowOutcome {
    /// Energy fell at or below the tolerance: the flow reached the zero
    /// locus.
    Converged,
    /// Gradient vanished with energy still above tolerance; carries the
    /// regularity of the limit point.
    CriticalPoint { regularity: Regularity },
    /// Step budget exhausted or the line search stalled.
    NotConverged,
}

#[derive(Debug, Clone)]
pub struct FlowResult {
    pub trajectory: Vec<FlowState>,
    pub g: GroupElement,
    pub outcome: FlowOutcome,
    pub steps: usize,
}

pub struct FlowOptions {
    pub step: f64,
    pub max_steps: usize,
    pub tol: f64,
    pub grad_tol: f64,
    /// Record every accepted state (otherwise only start and end).
    pub record: bool,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions {
            step: 0.25,
            max_steps: 20_000,
            tol: 1e-9,
            grad_tol: 1e-12,
            record: false,
        }
    }
}

/// Run the gradient descent `g <- g exp(-step grad E)` with step halving on
/// energy increase and regrowth on success.
pub fn flow(v: &SkewAdjoint, g0: &GroupElement, opts: &FlowOptions) -> Result<FlowResult, MomentError> {
    let mut g = g0.clone();
    let mut e = energy(v, &g)?;
    let mut step = opts.step;
    let mut t = 0.0;
    let mut trajectory = vec![FlowState { t, energy: e, g: g.clone() }];
    for k in 0..opts.max_steps {
        if e <= opts.tol {
            return Ok(FlowResult {
                trajectory,
                g,
                outcome: FlowOutcome::Converged,
                steps: k,
            });
        }
        let grad = energy_gradient(v, &g)?;
        let gnorm = grad.norm();
        if gnorm <= opts.grad_tol {
            let regularity = classify_regularity(v, &g, 1e-7);
            return Ok(FlowResult {
                trajectory,
                g,
                outcome: FlowOutcome::CriticalPoint { regularity },
                steps: k,
            });
        }
        // backtracking: accepted steps never increase the energy
        let mut accepted = false;
        while step * gnorm > 1e-16 {
            let cand = g.compose(&exp(&grad, -step))?;
            let ec = energy(v, &cand)?;
            if ec < e {
                g = if k % 64 == 63 { cand.reproject() } else { cand };
                t += step;
                e = ec;
                step = (step * 1.5).min(4.0 / gnorm.max(1e-9));
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            return Ok(FlowResult {
                trajectory,
                g,
                outcome: FlowOutcome::NotConverged,
                steps: k,
            });
        }
        if opts.record {
            trajectory.push(FlowState { t, energy: e, g: g.clone() });
        }
    }
    if !opts.record {
        trajectory.push(FlowState { t, energy: e, g: g.clone() });
    }
    Ok(FlowResult {
        trajectory,
        g,
        outcome: if e <= opts.tol {
            FlowOutcome::Converged
        } else {
            FlowOutcome::NotConverged
        },
        steps: opts.max_steps,
    })
}
