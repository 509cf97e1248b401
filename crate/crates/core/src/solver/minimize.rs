//! Preconditioned L-BFGS descent on `E_λ` with Armijo backtracking.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::linalg::{biharmonic_precondition, dot, sup};
use crate::energy::ProblemInstance;
use crate::grid::{BoundaryCondition, GridFunction};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverOptions {
    /// Acceptance threshold on the sup-norm of the weighted residual.
    pub tol: f64,
    pub max_iter: usize,
    /// L-BFGS memory.
    pub memory: usize,
    pub n_starts: usize,
    pub k_max: usize,
    pub seed: u64,
    /// Distinctness threshold in the sup norm.
    pub delta_dist: f64,
    /// Height of the `±v̄` starts.
    pub vbar_height: f64,
    /// Amplitude of the random starts.
    pub start_scale: f64,
    pub newton_max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-8,
            max_iter: 10_000,
            memory: 12,
            n_starts: 8,
            k_max: 3,
            seed: 0,
            delta_dist: 1e-3,
            vbar_height: 1.0,
            start_scale: 1.0,
            newton_max_iter: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPoint {
    pub u: GridFunction,
    pub energy: f64,
    /// Sup-norm of the weighted residual.
    pub residual_norm: f64,
    /// Number of starts consumed when the point was found.
    pub starts_used: usize,
    pub iterations: usize,
    pub converged: bool,
}

impl CriticalPoint {
    pub(crate) fn from_values(inst: &ProblemInstance, values: Vec<f64>, iterations: usize, converged: bool) -> Self {
        let residual_norm = sup(&inst.gradient_values(&values));
        let energy = inst.total_energy_values(&values);
        CriticalPoint {
            u: GridFunction { grid: inst.grid.clone(), values, bc: BoundaryCondition::Navier },
            energy,
            residual_norm,
            starts_used: 0,
            iterations,
            converged,
        }
    }
}

/// Energy trace of a run, one entry per accepted step.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DescentTrace {
    pub energies: Vec<f64>,
}

/// Minimizes `E_λ` from `u0` until the residual sup-norm drops below `tol`.
pub fn minimize(inst: &ProblemInstance, u0: &GridFunction, opts: &SolverOptions) -> CriticalPoint {
    minimize_traced(inst, u0, opts).0
}

pub fn minimize_traced(inst: &ProblemInstance, u0: &GridFunction, opts: &SolverOptions) -> (CriticalPoint, DescentTrace) {
    let grid = &inst.grid;
    let mut x: Vec<f64> =
        u0.values.iter().enumerate().map(|(i, v)| if grid.is_boundary(i) { 0.0 } else { *v }).collect();
    let mut f = inst.total_energy_values(&x);
    let mut g = inst.gradient_values(&x);
    let mut history: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();
    let mut trace = DescentTrace { energies: vec![f] };
    let mut iterations = 0;
    let mut converged = sup(&g) < opts.tol;
    let mut stalls = 0;

    while !converged && iterations < opts.max_iter {
        iterations += 1;
        let mut d = two_loop(grid, &g, &history);
        let mut slope = dot(&g, &d);
        if !(slope < 0.0) {
            history.clear();
            d = biharmonic_precondition(grid, &g).iter().map(|v| -v).collect();
            slope = dot(&g, &d);
        }
        let slack = 1e-12 * f.abs().max(1.0);
        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let trial: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a + step * b).collect();
            let ft = inst.total_energy_values(&trial);
            if ft.is_finite() && ft <= f + 1e-4 * step * slope + slack {
                accepted = Some((trial, ft));
                break;
            }
            step *= 0.5;
        }
        let Some((xn, fn_)) = accepted else {
            if history.is_empty() {
                stalls += 1;
                if stalls > 2 {
                    break;
                }
            }
            history.clear();
            continue;
        };
        let gn = inst.gradient_values(&xn);
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-14 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() && sy > 0.0 {
            if history.len() == opts.memory.max(1) {
                history.pop_front();
            }
            history.push_back((s, y, 1.0 / sy));
        }
        x = xn;
        f = fn_;
        g = gn;
        trace.energies.push(f);
        converged = sup(&g) < opts.tol;
    }
    let mut cp = CriticalPoint::from_values(inst, x, iterations, converged);
    cp.converged = cp.residual_norm < opts.tol;
    (cp, trace)
}

/// L-BFGS two-loop recursion with `H0 = γK⁻¹`, `γ = sᵀy / yᵀK⁻¹y`.
fn two_loop(grid: &crate::grid::Grid, g: &[f64], history: &VecDeque<(Vec<f64>, Vec<f64>, f64)>) -> Vec<f64> {
    let mut q = g.to_vec();
    let mut alphas = Vec::with_capacity(history.len());
    for (s, y, rho) in history.iter().rev() {
        let a = rho * dot(s, &q);
        for (qi, yi) in q.iter_mut().zip(y) {
            *qi -= a * yi;
        }
        alphas.push(a);
    }
    let mut r = biharmonic_precondition(grid, &q);
    if let Some((s, y, _)) = history.back() {
        let ky = biharmonic_precondition(grid, y);
        let denom = dot(y, &ky);
        if denom > 0.0 {
            let gamma = dot(s, y) / denom;
            r.iter_mut().for_each(|v| *v *= gamma);
        }
    }
    for ((s, y, rho), a) in history.iter().zip(alphas.iter().rev()) {
        let b = rho * dot(y, &r);
        for (ri, si) in r.iter_mut().zip(s) {
            *ri += (a - b) * si;
        }
    }
    r.iter_mut().for_each(|v| *v = -*v);
    r
}
