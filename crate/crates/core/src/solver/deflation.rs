//! Multi-start search for distinct critical points: descent to minima and
//! deflated Newton–Krylov iterations for the remaining (saddle-type) points.

use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::linalg::{biharmonic_precondition, dual_norm, gmres, sup};
use super::minimize::{minimize, CriticalPoint, SolverOptions};
use crate::certificate::{build_test_function, inradius};
use crate::energy::ProblemInstance;
use crate::grid::GridFunction;

/// Deflation power and shift of `M(u) = Π_j(‖u − u_j‖_∞^{-β} + shift)`.
pub const DEFLATION_POWER: i32 = 2;
pub const DEFLATION_SHIFT: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    pub points: Vec<CriticalPoint>,
    /// Sup-norm distances between the points.
    pub pairwise_dist: Vec<Vec<f64>>,
    pub starts_tried: usize,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn energies(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.energy).collect()
    }

    pub fn min_pairwise_distance(&self) -> Option<f64> {
        let mut m: Option<f64> = None;
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                m = Some(m.map_or(self.pairwise_dist[i][j], |v| v.min(self.pairwise_dist[i][j])));
            }
        }
        m
    }
}

/// Summary of one start, kept for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StartKind {
    NearZero,
    PlusTestFunction,
    MinusTestFunction,
    Random,
}

fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// `M(u)` and `∇M / M` for the sup-norm deflation operator.
fn deflation(u: &[f64], found: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let mut m = 1.0;
    let mut grad_log = vec![0.0; u.len()];
    for root in found {
        let (mut k, mut dist) = (0, 0.0);
        for (i, (a, b)) in u.iter().zip(root).enumerate() {
            if (a - b).abs() > dist {
                dist = (a - b).abs();
                k = i;
            }
        }
        if dist == 0.0 {
            return (f64::INFINITY, grad_log);
        }
        let inv = dist.powi(-DEFLATION_POWER);
        let factor = inv + DEFLATION_SHIFT;
        m *= factor;
        let d_inv = -(DEFLATION_POWER as f64) * inv / dist * (u[k] - root[k]).signum();
        grad_log[k] += d_inv / factor;
    }
    (m, grad_log)
}

/// Newton step `δ` solving `H(u)δ = −g` by preconditioned GMRES.
fn newton_direction(inst: &ProblemInstance, u: &[f64], g: &[f64]) -> Option<Vec<f64>> {
    let grid = &inst.grid;
    let rhs: Vec<f64> = g.iter().map(|v| -v).collect();
    let out = gmres(
        |v| inst.hessian_vec_values(u, v),
        |v| biharmonic_precondition(grid, v),
        &rhs,
        1e-11,
        60,
        600,
    );
    (out.relative_residual < 1e-4 && out.x.iter().all(|v| v.is_finite())).then_some(out.x)
}

/// Damped Newton on the deflated residual `M(u)g(u)`, with the step scaled
/// by `τ = 1/(1 − (∇M/M)·δ)`. Returns the iterate once the undeflated
/// residual is below `tol`.
fn deflated_newton(inst: &ProblemInstance, start: &[f64], found: &[Vec<f64>], opts: &SolverOptions) -> Option<(Vec<f64>, usize)> {
    let grid = &inst.grid;
    let mut u = start.to_vec();
    let mut g = inst.gradient_values(&u);
    for it in 0..opts.newton_max_iter {
        if sup(&g) < opts.tol {
            return Some((u, it));
        }
        let delta_r = newton_direction(inst, &u, &g)?;
        let (m, grad_log) = deflation(&u, found);
        if !m.is_finite() {
            return None;
        }
        let denom = 1.0 - grad_log.iter().zip(&delta_r).map(|(a, b)| a * b).sum::<f64>();
        let tau = if denom.abs() < 1e-12 { 1.0 } else { 1.0 / denom };
        let delta: Vec<f64> = delta_r.iter().map(|v| tau * v).collect();
        let merit0 = m * dual_norm(grid, &g);
        let mut step = 1.0;
        let mut next = None;
        for _ in 0..40 {
            let trial: Vec<f64> = u.iter().zip(&delta).map(|(a, b)| a + step * b).collect();
            let gt = inst.gradient_values(&trial);
            let (mt, _) = deflation(&trial, found);
            let merit = mt * dual_norm(grid, &gt);
            if merit.is_finite() && merit < (1.0 - 1e-4 * step) * merit0 {
                next = Some((trial, gt));
                break;
            }
            step *= 0.5;
        }
        let (un, gn) = next?;
        u = un;
        g = gn;
    }
    (sup(&g) < opts.tol).then_some((u, opts.newton_max_iter))
}

/// Undeflated Newton steps until the residual is below `tol`.
fn polish(inst: &ProblemInstance, u: Vec<f64>, opts: &SolverOptions) -> Vec<f64> {
    deflated_newton(inst, &u, &[], opts).map_or(u, |(v, _)| v)
}

/// The structured starts followed by `n_starts` seeded random fields.
pub fn starts(inst: &ProblemInstance, opts: &SolverOptions) -> Vec<(StartKind, Vec<f64>)> {
    let grid = &inst.grid;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::with_capacity(opts.n_starts + 3);
    let near_zero: Vec<f64> = grid.random_smooth_field(&mut rng, 1).iter().map(|v| 1e-2 * v).collect();
    out.push((StartKind::NearZero, near_zero));
    if let Ok((d, x0)) = inradius(&grid.domain) {
        if let Ok(tf) = build_test_function(opts.vbar_height, d, x0, grid) {
            out.push((StartKind::PlusTestFunction, tf.values.values.clone()));
            out.push((StartKind::MinusTestFunction, tf.values.values.iter().map(|v| -v).collect()));
        }
    }
    for j in 0..opts.n_starts {
        // amplitudes cycle through start_scale · {1, 2, 4, 8}
        let amp = opts.start_scale * (1u32 << (j % 4)) as f64;
        let field = grid.random_smooth_field(&mut rng, 5);
        let peak = sup(&field).max(f64::MIN_POSITIVE);
        out.push((StartKind::Random, field.iter().map(|v| amp * v / peak).collect()));
    }
    out
}

fn order(a: &CriticalPoint, b: &CriticalPoint) -> Ordering {
    a.energy.total_cmp(&b.energy).then_with(|| {
        for (x, y) in a.u.values.iter().zip(&b.u.values) {
            match x.total_cmp(y) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    })
}

/// Searches for up to `k_max` distinct critical points.
///
/// Each start is first run through descent; then deflated Newton is
/// restarted from it until it stops producing new points. A candidate is
/// kept when its undeflated residual is below `tol` and its sup distance to
/// every kept point exceeds `delta_dist`. Points are returned sorted by
/// energy, then by nodal values.
pub fn deflate_and_search(inst: &ProblemInstance, k_max: usize, n_starts: usize, opts: &SolverOptions) -> SolutionSet {
    let opts = SolverOptions { k_max, n_starts, ..opts.clone() };
    let mut points: Vec<CriticalPoint> = Vec::new();
    let mut roots: Vec<Vec<f64>> = Vec::new();
    let mut starts_tried = 0;

    let accept = |cand: Vec<f64>, it: usize, used: usize, points: &mut Vec<CriticalPoint>, roots: &mut Vec<Vec<f64>>| -> bool {
        let mut cp = CriticalPoint::from_values(inst, cand, it, true);
        if !(cp.residual_norm < opts.tol) {
            return false;
        }
        if roots.iter().any(|r| sup_distance(r, &cp.u.values) <= opts.delta_dist) {
            return false;
        }
        cp.starts_used = used;
        roots.push(cp.u.values.clone());
        points.push(cp);
        true
    };

    for (_, start) in starts(inst, &opts) {
        if points.len() >= k_max {
            break;
        }
        starts_tried += 1;
        let u0 = GridFunction { grid: inst.grid.clone(), values: start.clone(), bc: crate::grid::BoundaryCondition::Navier };
        let descent = minimize(inst, &u0, &opts);
        if descent.converged {
            accept(descent.u.values, descent.iterations, starts_tried, &mut points, &mut roots);
        }
        while points.len() < k_max {
            let Some((cand, it)) = deflated_newton(inst, &start, &roots, &opts) else { break };
            let cand = polish(inst, cand, &opts);
            if !accept(cand, it, starts_tried, &mut points, &mut roots) {
                break;
            }
        }
    }

    points.sort_by(order);
    let pairwise_dist = points
        .iter()
        .map(|a| points.iter().map(|b| sup_distance(&a.u.values, &b.u.values)).collect())
        .collect();
    SolutionSet { points, pairwise_dist, starts_tried }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deflation_factor_and_gradient() {
        let root = vec![0.0, 0.0, 0.0];
        let u = vec![0.0, 0.5, -0.1];
        let (m, g) = deflation(&u, std::slice::from_ref(&root));
        assert!((m - (4.0 + 1.0)).abs() < 1e-14);
        // d/du_1 of (u_1^-2 + 1) is -2 u_1^-3 = -16; divided by M = 5
        assert!((g[1] + 16.0 / 5.0).abs() < 1e-14);
        assert_eq!(g[0], 0.0);
        assert!(deflation(&root, std::slice::from_ref(&root)).0.is_infinite());
    }
}
