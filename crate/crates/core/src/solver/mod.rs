//! Critical points of `E_λ`: preconditioned descent, deflated multi-start
//! search, weak-solution verification and `λ` sweeps.

mod deflation;
mod linalg;
mod minimize;
mod sweep;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::energy::ProblemInstance;
use crate::grid::GridFunction;

pub use deflation::{deflate_and_search, starts, SolutionSet, StartKind, DEFLATION_POWER, DEFLATION_SHIFT};
pub use linalg::{biharmonic_precondition, dual_norm};
pub use minimize::{minimize, minimize_traced, CriticalPoint, DescentTrace, SolverOptions};
pub use sweep::{lambda_sweep, log_spaced, sweep_csv, sweep_lambdas, SweepRow};

/// Largest `|⟨r(u), v⟩| / (1 + ‖v‖₁)` over `n_dirs` seeded smooth
/// directions, `‖v‖₁` the nodal sum of `|v|`.
pub fn weak_residual_ratio(inst: &ProblemInstance, u: &GridFunction, n_dirs: usize, seed: u64) -> f64 {
    let grid = &inst.grid;
    let g = inst.gradient_values(&u.values);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n_dirs)
        .map(|_| {
            let v = grid.random_smooth_field(&mut rng, 5);
            let pairing: f64 = g.iter().zip(&v).map(|(a, b)| a * b).sum();
            let norm: f64 = v.iter().map(|x| x.abs()).sum();
            pairing.abs() / (1.0 + norm)
        })
        .fold(0.0, f64::max)
}

/// Whether `u` passes the discrete weak-solution test at level `tol`.
pub fn verify_weak_solution(inst: &ProblemInstance, u: &GridFunction, n_dirs: usize, seed: u64, tol: f64) -> bool {
    weak_residual_ratio(inst, u, n_dirs, seed) <= tol
}
