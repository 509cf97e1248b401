//! The energy `E_λ = J − λΦ` with `J(u) = ∫A(x, Δu)` and `Φ(u) = ∫F(x, u)`,
//! and its exact discrete gradient.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::ProblemSpec;
use crate::error::{Error, Result};
use crate::exponent::ExponentField;
use crate::grid::{BoundaryCondition, Grid, GridFunction};
use crate::nonlinearity::NonlinearitySpec;
use crate::potential::{verify_hypotheses, HypothesisReport, PotentialSpec, TSampler};

#[derive(Debug, Clone)]
pub struct ProblemInstance {
    pub grid: Arc<Grid>,
    pub p: ExponentField,
    pub potential: PotentialSpec,
    pub nonlinearity: NonlinearitySpec,
    pub lambda: f64,
    pub hypotheses: HypothesisReport,
    /// Set when the instance was built although some hypothesis failed.
    pub overridden: bool,
    /// Description the instance was built from, used to rebuild it on a
    /// refined grid.
    pub recipe: Option<ProblemSpec>,
}

impl ProblemInstance {
    /// Builds the instance and requires every hypothesis check to pass or be
    /// unverifiable.
    pub fn new(grid: Arc<Grid>, potential: PotentialSpec, nonlinearity: NonlinearitySpec, lambda: f64) -> Result<Self> {
        let inst = Self::new_unchecked(grid, potential, nonlinearity, lambda)?;
        if inst.hypotheses.any_fail() {
            return Err(Error::HypothesesFailed(inst.hypotheses.summary()));
        }
        Ok(inst)
    }

    /// Builds the instance even when hypotheses fail; `overridden` records it.
    pub fn new_unchecked(grid: Arc<Grid>, potential: PotentialSpec, nonlinearity: NonlinearitySpec, lambda: f64) -> Result<Self> {
        grid.check_len(potential.len())?;
        grid.check_len(nonlinearity.len())?;
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!("lambda must be a nonnegative finite number, got {lambda}")));
        }
        let hypotheses = verify_hypotheses(&potential, &nonlinearity, &TSampler::new(grid.len(), 10.0));
        let overridden = hypotheses.any_fail();
        Ok(ProblemInstance { p: potential.p.clone(), grid, potential, nonlinearity, lambda, hypotheses, overridden, recipe: None })
    }

    pub fn with_lambda(&self, lambda: f64) -> Self {
        ProblemInstance { lambda, ..self.clone() }
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// `J` on raw nodal values (boundary values are ignored by the stencil).
    pub fn energy_j_values(&self, u: &[f64]) -> f64 {
        let lap = self.grid.laplacian(u);
        self.grid
            .weights
            .iter()
            .zip(&lap)
            .enumerate()
            .map(|(i, (w, t))| w * self.potential.big_a(i, *t))
            .sum()
    }

    pub fn load_phi_values(&self, u: &[f64]) -> f64 {
        self.grid.weights.iter().zip(u).enumerate().map(|(i, (w, t))| w * self.nonlinearity.big_f(i, *t)).sum()
    }

    pub fn total_energy_values(&self, u: &[f64]) -> f64 {
        self.energy_j_values(u) - self.lambda * self.load_phi_values(u)
    }

    /// `E(u) − E(w)` accumulated node by node, which keeps the cancellation
    /// local when `u` and `w` are close.
    pub fn energy_difference(&self, u: &[f64], w: &[f64]) -> f64 {
        let (lu, lw) = (self.grid.laplacian(u), self.grid.laplacian(w));
        (0..u.len())
            .map(|i| {
                let dj = self.potential.big_a(i, lu[i]) - self.potential.big_a(i, lw[i]);
                let dphi = self.nonlinearity.big_f(i, u[i]) - self.nonlinearity.big_f(i, w[i]);
                self.grid.weights[i] * (dj - self.lambda * dphi)
            })
            .sum()
    }

    /// Gradient of [`Self::total_energy_values`] with respect to the interior
    /// nodal values; zero on the boundary.
    pub fn gradient_values(&self, u: &[f64]) -> Vec<f64> {
        let grid = &self.grid;
        let lap = grid.laplacian(u);
        let stress: Vec<f64> =
            (0..u.len()).map(|i| if grid.is_boundary(i) { 0.0 } else { self.potential.a(i, lap[i]) }).collect();
        let back = grid.laplacian(&stress);
        (0..u.len())
            .map(|i| {
                if grid.is_boundary(i) {
                    0.0
                } else {
                    grid.weights[i] * (back[i] - self.lambda * self.nonlinearity.f(i, u[i]))
                }
            })
            .collect()
    }

    /// Hessian of the energy applied to `v`, with the same boundary convention.
    pub fn hessian_vec_values(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        let grid = &self.grid;
        let lap_u = grid.laplacian(u);
        let lap_v = grid.laplacian(v);
        let inner: Vec<f64> = (0..u.len())
            .map(|i| {
                if grid.is_boundary(i) {
                    0.0
                } else {
                    let k = self.potential.da_dt(i, lap_u[i]);
                    let k = if k.is_finite() { k } else { 1e12 };
                    k * lap_v[i]
                }
            })
            .collect();
        let back = grid.laplacian(&inner);
        (0..u.len())
            .map(|i| {
                if grid.is_boundary(i) {
                    0.0
                } else {
                    grid.weights[i] * (back[i] - self.lambda * self.nonlinearity.df_dt(i, u[i]) * v[i])
                }
            })
            .collect()
    }
}

pub fn energy_j(inst: &ProblemInstance, u: &GridFunction) -> f64 {
    inst.energy_j_values(&u.values)
}

pub fn load_phi(inst: &ProblemInstance, u: &GridFunction) -> f64 {
    inst.load_phi_values(&u.values)
}

pub fn total_energy(inst: &ProblemInstance, u: &GridFunction) -> f64 {
    inst.total_energy_values(&u.values)
}

/// Quadrature-weighted nodal residual: `⟨g, v⟩ = ∫a(x,Δu)Δv − λ∫f(x,u)v`
/// for every Navier direction `v`.
pub fn weak_residual(inst: &ProblemInstance, u: &GridFunction) -> GridFunction {
    GridFunction { grid: u.grid.clone(), values: inst.gradient_values(&u.values), bc: BoundaryCondition::Navier }
}

pub fn hessian_vec(inst: &ProblemInstance, u: &GridFunction, v: &GridFunction) -> GridFunction {
    GridFunction { grid: u.grid.clone(), values: inst.hessian_vec_values(&u.values, &v.values), bc: BoundaryCondition::Navier }
}

/// Worst relative error between `⟨weak_residual(u), v⟩` and central
/// differences of the energy along `n_directions` seeded smooth directions.
pub fn gradient_check(inst: &ProblemInstance, u: &GridFunction, n_directions: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = inst.gradient_values(&u.values);
    let u_scale = u.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut worst: f64 = 0.0;
    for _ in 0..n_directions {
        let v = inst.grid.random_smooth_field(&mut rng, 5);
        let v_scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if v_scale == 0.0 {
            continue;
        }
        let eps = 1e-6 * u_scale / v_scale;
        let plus: Vec<f64> = u.values.iter().zip(&v).map(|(a, b)| a + eps * b).collect();
        let minus: Vec<f64> = u.values.iter().zip(&v).map(|(a, b)| a - eps * b).collect();
        let fd = inst.energy_difference(&plus, &minus) / (2.0 * eps);
        let dd: f64 = g.iter().zip(&v).map(|(a, b)| a * b).sum();
        let denom = fd.abs().max(dd.abs());
        if denom > 0.0 {
            worst = worst.max((fd - dd).abs() / denom);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Domain;
    use crate::modular::laplacian_norm;
    use crate::nonlinearity::{CustomLaw, ScalarLaw};
    use crate::potential::make_power_family;
    use crate::profile::ProfileSpec;

    fn instance(n: usize, p: ExponentField, law: ScalarLaw, lambda: f64) -> ProblemInstance {
        let grid = Arc::new(Grid::new(Domain::unit_interval(), n).unwrap());
        let pot = make_power_family(vec![1.0; n], p.clone()).unwrap();
        let bare = NonlinearitySpec::new(law, &grid);
        let nl = bare.clone().with_default_growth(&p).unwrap_or(bare);
        ProblemInstance::new(grid, pot, nl, lambda).unwrap()
    }

    fn p_const(v: f64, n: usize) -> ExponentField {
        ExponentField::constant(v, n, 1).unwrap()
    }

    #[test]
    fn beam_quadratic_examples() {
        let inst = instance(101, p_const(2.0, 101), ScalarLaw::Constant(1.0), 6.0);
        let u = GridFunction::from_fn(inst.grid.clone(), BoundaryCondition::Navier, |c| c[0] * (1.0 - c[0]));
        // Δu = -2 except at the two endpoints where the Laplacian is forced to 0
        let h = inst.grid.spacing();
        assert!((energy_j(&inst, &u) - 2.0 * (1.0 - h)).abs() < 1e-12);
        let phi_oracle = 1.0 / 6.0 - h * h / 6.0;
        assert!((load_phi(&inst, &u) - phi_oracle).abs() < 1e-12);
        assert!((total_energy(&inst, &u) - (energy_j(&inst, &u) - 6.0 * load_phi(&inst, &u))).abs() == 0.0);
        assert!((total_energy(&inst, &u) - 1.0).abs() < 0.05);
        let zero = GridFunction::zeros(inst.grid.clone());
        assert_eq!(energy_j(&inst, &zero), 0.0);
        assert_eq!(load_phi(&inst, &zero), 0.0);
        let inst0 = inst.with_lambda(0.0);
        assert_eq!(total_energy(&inst0, &u), energy_j(&inst0, &u));
    }

    #[test]
    fn quadratic_energy_is_half_norm_squared() {
        let inst = instance(65, p_const(2.0, 65), ScalarLaw::Rational, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let u = GridFunction::navier(inst.grid.clone(), inst.grid.random_smooth_field(&mut rng, 5)).unwrap();
            let norm = laplacian_norm(&u, &inst.p).unwrap().value;
            assert!((energy_j(&inst, &u) - 0.5 * norm * norm).abs() < 1e-8);
        }
    }

    #[test]
    fn residual_at_zero_is_weighted_source() {
        let inst = instance(33, p_const(2.0, 33), ScalarLaw::Constant(3.0), 2.0);
        let r = weak_residual(&inst, &GridFunction::zeros(inst.grid.clone()));
        for i in 0..33 {
            let expected = if inst.grid.is_boundary(i) { 0.0 } else { -2.0 * 3.0 * inst.grid.weights[i] };
            assert_eq!(r.values[i], expected);
        }
        let inst = instance(33, p_const(2.0, 33), ScalarLaw::Constant(0.0), 2.0);
        let r = weak_residual(&inst, &GridFunction::zeros(inst.grid.clone()));
        assert!(r.values.iter().all(|v| *v == 0.0));
        assert_eq!(gradient_check(&inst, &GridFunction::zeros(inst.grid.clone()), 5, 1), 0.0);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let grid = Grid::new(Domain::unit_interval(), 65).unwrap();
        let p_var = ExponentField::from_spec(&ProfileSpec::Affine { a: 2.0, b: 0.5 }, &grid).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for law in [ScalarLaw::Rational, ScalarLaw::ExpDecay] {
            let inst = instance(65, p_var.clone(), law, 1.7);
            for seed in 0..5 {
                let u = GridFunction::navier(inst.grid.clone(), inst.grid.random_smooth_field(&mut rng, 5)).unwrap();
                let u = u.scaled(0.1);
                assert!(gradient_check(&inst, &u, 10, seed) < 1e-6);
            }
        }
        // quadratic energy: central differences are exact up to roundoff
        let inst = instance(65, p_const(2.0, 65), ScalarLaw::Custom(CustomLaw::new("lin", |_, t| 2.0 * t + 1.0)), 1.0);
        let u = GridFunction::navier(inst.grid.clone(), inst.grid.random_smooth_field(&mut rng, 5)).unwrap();
        let e = gradient_check(&inst, &u, 10, 4);
        assert!(e < 1e-9, "{e}");
    }

    #[test]
    fn hessian_matches_gradient_differences() {
        let grid = Grid::new(Domain::unit_interval(), 41).unwrap();
        let p = ExponentField::from_spec(&ProfileSpec::Affine { a: 2.5, b: 0.5 }, &grid).unwrap();
        let inst = instance(41, p, ScalarLaw::Rational, 3.0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = inst.grid.random_smooth_field(&mut rng, 5);
        let v = inst.grid.random_smooth_field(&mut rng, 5);
        let hv = inst.hessian_vec_values(&u, &v);
        let eps = 1e-6;
        let up: Vec<f64> = u.iter().zip(&v).map(|(a, b)| a + eps * b).collect();
        let um: Vec<f64> = u.iter().zip(&v).map(|(a, b)| a - eps * b).collect();
        let (gp, gm) = (inst.gradient_values(&up), inst.gradient_values(&um));
        let scale = hv.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for i in 0..41 {
            assert!(((gp[i] - gm[i]) / (2.0 * eps) - hv[i]).abs() < 1e-6 * scale);
        }
    }

    #[test]
    fn zero_load_energy_increases_along_rays() {
        let grid = Grid::new(Domain::unit_interval(), 33).unwrap();
        let p = ExponentField::from_spec(&ProfileSpec::Affine { a: 2.0, b: 1.0 }, &grid).unwrap();
        let inst = instance(33, p, ScalarLaw::Constant(0.0), 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = inst.grid.random_smooth_field(&mut rng, 5);
        let mut prev = f64::NEG_INFINITY;
        for k in 0..20 {
            let s = 1.0 + 0.25 * k as f64;
            let us: Vec<f64> = u.iter().map(|v| s * v).collect();
            let e = inst.total_energy_values(&us);
            assert!(e > prev);
            prev = e;
        }
    }

    #[test]
    fn rejects_failing_hypotheses_unless_unchecked() {
        let grid = Arc::new(Grid::new(Domain::unit_interval(), 21).unwrap());
        let p = p_const(2.0, 21);
        let table = crate::profile::PiecewiseLinear::new(vec![-1e3, 1e3], vec![1e3, -1e3]).unwrap();
        let pot = crate::potential::make_tabulated_family(vec![1.0; 21], p.clone(), table).unwrap();
        let nl = NonlinearitySpec::new(ScalarLaw::Rational, &grid).with_default_growth(&p).unwrap();
        assert!(matches!(
            ProblemInstance::new(grid.clone(), pot.clone(), nl.clone(), 1.0),
            Err(Error::HypothesesFailed(_))
        ));
        let inst = ProblemInstance::new_unchecked(grid, pot, nl, 1.0).unwrap();
        assert!(inst.overridden);
    }
}
