//! Modular, Luxemburg norm, sup-norm and the inequalities relating them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::ExponentField;
use crate::grid::{BoundaryCondition, Grid, GridFunction};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormResult {
    pub value: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LuxemburgOptions {
    /// Bisection stops once the bracket width is below `rel_tol · upper`.
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Default for LuxemburgOptions {
    fn default() -> Self {
        LuxemburgOptions { rel_tol: 1e-12, max_iter: 200 }
    }
}

fn check_exponent(grid: &Grid, p: &ExponentField) -> Result<()> {
    grid.check_len(p.len())
}

/// `Σ V_i |u_i / μ|^{p_i}`.
pub(crate) fn modular_scaled(weights: &[f64], values: &[f64], p: &[f64], mu: f64) -> f64 {
    weights
        .iter()
        .zip(values)
        .zip(p)
        .map(|((w, u), e)| if *u == 0.0 { 0.0 } else { w * (u.abs() / mu).powf(*e) })
        .sum()
}

/// Quadrature approximation of `∫ |u|^{p(x)} dx`.
pub fn modular(u: &GridFunction, p: &ExponentField) -> Result<f64> {
    check_exponent(&u.grid, p)?;
    Ok(modular_scaled(&u.grid.weights, &u.values, &p.values, 1.0))
}

/// The Luxemburg norm of raw nodal values under the given weights.
pub fn luxemburg_values(weights: &[f64], values: &[f64], p: &[f64], opts: LuxemburgOptions) -> Result<NormResult> {
    let sup = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if sup == 0.0 {
        return Ok(NormResult { value: 0.0, iterations: 0, bracket: (0.0, 0.0) });
    }
    let rho = |mu: f64| modular_scaled(weights, values, p, mu);
    let measure: f64 = weights.iter().sum();
    let mut iterations = 0;

    let mut hi = 1f64.max(sup * measure).max(sup);
    while rho(hi) > 1.0 {
        hi *= 2.0;
        iterations += 1;
        if iterations > opts.max_iter || !hi.is_finite() {
            return Err(Error::NormNotConverged { iterations });
        }
    }
    let mut lo = hi;
    while rho(lo) <= 1.0 {
        lo /= 2.0;
        iterations += 1;
        if iterations > opts.max_iter || lo == 0.0 {
            return Err(Error::NormNotConverged { iterations });
        }
    }
    // rho(lo) > 1 >= rho(hi)
    while hi - lo > opts.rel_tol * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if rho(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
        if iterations > opts.max_iter {
            return Err(Error::NormNotConverged { iterations });
        }
    }
    Ok(NormResult { value: 0.5 * (lo + hi), iterations, bracket: (lo, hi) })
}

/// `inf{μ > 0 : ρ(u/μ) ≤ 1}` by bracketing and bisection.
pub fn luxemburg_norm(u: &GridFunction, p: &ExponentField) -> Result<NormResult> {
    luxemburg_norm_with(u, p, LuxemburgOptions::default())
}

pub fn luxemburg_norm_with(u: &GridFunction, p: &ExponentField, opts: LuxemburgOptions) -> Result<NormResult> {
    check_exponent(&u.grid, p)?;
    luxemburg_values(&u.grid.weights, &u.values, &p.values, opts)
}

/// The working norm `‖u‖ = |Δu|_{p(x)}` on Navier fields.
pub fn laplacian_norm(u: &GridFunction, p: &ExponentField) -> Result<NormResult> {
    if u.bc != BoundaryCondition::Navier {
        return Err(Error::InvalidParameter("laplacian_norm needs a Navier field".into()));
    }
    check_exponent(&u.grid, p)?;
    let lap = u.grid.laplacian(&u.values);
    luxemburg_values(&u.grid.weights, &lap, &p.values, LuxemburgOptions::default())
}

/// Modular of the discrete Laplacian, `∫ |Δu|^{p(x)}`.
pub fn laplacian_modular(u: &GridFunction, p: &ExponentField) -> Result<f64> {
    check_exponent(&u.grid, p)?;
    let lap = u.grid.laplacian(&u.values);
    Ok(modular_scaled(&u.grid.weights, &lap, &p.values, 1.0))
}

pub fn sup_norm(u: &GridFunction) -> f64 {
    u.values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolderReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Slack used by [`check_holder`].
pub const HOLDER_SLACK: f64 = 1e-10;

/// `|∫uv| ≤ (1/p⁻ + 1/(p')⁻) |u|_{p(x)} |v|_{p'(x)}`.
pub fn check_holder(u: &GridFunction, v: &GridFunction, p: &ExponentField) -> Result<HolderReport> {
    u.grid.check_len(v.len())?;
    let product: Vec<f64> = u.values.iter().zip(&v.values).map(|(a, b)| a * b).collect();
    let lhs = u.grid.integrate(&product)?.abs();
    let q = p.conjugate();
    let constant = 1.0 / p.p_minus + 1.0 / q.p_minus;
    let rhs = constant * luxemburg_norm(u, p)?.value * luxemburg_norm(v, &q)?.value;
    Ok(HolderReport { lhs, rhs, holds: lhs <= rhs + HOLDER_SLACK })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    /// Largest violation seen (0 when every case holds).
    pub worst_violation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacesReport {
    pub checks: Vec<PropertyCheck>,
    pub all_passed: bool,
}

struct Tally {
    name: &'static str,
    cases: usize,
    worst: f64,
    failed: bool,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, cases: 0, worst: 0.0, failed: false }
    }

    fn record(&mut self, violation: f64, tol: f64) {
        self.cases += 1;
        if violation > tol || violation.is_nan() {
            self.failed = true;
        }
        if violation > self.worst || violation.is_nan() {
            self.worst = violation;
        }
    }

    fn finish(self) -> PropertyCheck {
        PropertyCheck { name: self.name.to_string(), passed: !self.failed, cases: self.cases, worst_violation: self.worst.max(0.0) }
    }
}

/// Runs the norm and modular property battery on random smooth Navier
/// fields over `grid` with exponent `p`.
pub fn property_battery(grid: &std::sync::Arc<Grid>, p: &ExponentField, seed: u64, cases: usize) -> Result<SpacesReport> {
    check_exponent(grid, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = |rng: &mut ChaCha8Rng| {
        let values = grid.random_smooth_field(rng, 5);
        GridFunction::navier(grid.clone(), values)
    };

    let mut reduction = Tally::new("constant_exponent_reduction");
    for q in [1.5, 2.0, 3.0] {
        let pc = ExponentField::constant(q, grid.len(), grid.dim())?;
        for _ in 0..cases {
            let u = field(&mut rng)?;
            let lux = luxemburg_norm(&u, &pc)?.value;
            let classical = modular(&u, &pc)?.powf(1.0 / q);
            reduction.record((lux - classical).abs() / classical.max(1e-300), 1e-10);
        }
    }

    let mut unit_ball = Tally::new("norm_modular_unit_equivalence");
    let mut sandwich = Tally::new("modular_power_sandwich");
    let mut limits = Tally::new("norm_modular_limits");
    let mut homogeneity = Tally::new("absolute_homogeneity");
    let mut triangle = Tally::new("triangle_inequality");
    let mut holder = Tally::new("holder_inequality");
    let (lo, hi) = (p.p_minus, p.p_plus);
    for _ in 0..cases {
        let u = field(&mut rng)?;
        let norm = luxemburg_norm(&u, p)?.value;
        for (target, expect) in [(0.5, -1.0), (1.0, 0.0), (2.0, 1.0)] {
            let scaled = u.scaled(target / norm);
            let rho = modular(&scaled, p)?;
            let violation = if expect < 0.0 {
                (rho - 1.0).max(0.0)
            } else if expect > 0.0 {
                (1.0 - rho).max(0.0)
            } else {
                (rho - 1.0).abs()
            };
            unit_ball.record(violation, 1e-8);
        }

        let lap_norm = laplacian_norm(&u, p)?.value;
        for scale in [0.3, 1.0, 3.0] {
            let s = u.scaled(scale / lap_norm);
            let m = scale;
            let rho = laplacian_modular(&s, p)?;
            let lower = m.powf(lo).min(m.powf(hi));
            let upper = m.powf(lo).max(m.powf(hi));
            let violation = ((lower - rho) / lower).max((rho - upper) / upper).max(0.0);
            sandwich.record(violation, 1e-8);
        }

        // ρ(u/k) ≤ k^{-p⁻} ρ(u) and ρ(k u) ≥ k^{p⁻} ρ(u) for k ≥ 1, while the norm scales by k.
        let rho_u = laplacian_modular(&u, p)?;
        let mut violation: f64 = 0.0;
        for k in [10.0f64, 100.0, 1000.0] {
            let small = u.scaled(1.0 / k);
            let large = u.scaled(k);
            let rs = laplacian_modular(&small, p)?;
            let rl = laplacian_modular(&large, p)?;
            violation = violation
                .max((rs - k.powf(-lo) * rho_u) / rho_u)
                .max((k.powf(lo) * rho_u - rl) / rl)
                .max((laplacian_norm(&small, p)?.value * k - lap_norm).abs() / lap_norm)
                .max((laplacian_norm(&large, p)?.value / k - lap_norm).abs() / lap_norm);
        }
        limits.record(violation, 1e-8);

        let c = -2.75;
        let cn = luxemburg_norm(&u.scaled(c), p)?.value;
        homogeneity.record((cn - c.abs() * norm).abs() / norm, 1e-8);

        let v = field(&mut rng)?;
        let vn = luxemburg_norm(&v, p)?.value;
        let sum = GridFunction::navier(grid.clone(), u.values.iter().zip(&v.values).map(|(a, b)| a + b).collect())?;
        let sn = luxemburg_norm(&sum, p)?.value;
        triangle.record((sn - norm - vn).max(0.0), 1e-8);

        let report = check_holder(&u, &v, p)?;
        holder.record((report.lhs - report.rhs).max(0.0), HOLDER_SLACK);
    }

    let checks: Vec<PropertyCheck> = [reduction, unit_ball, sandwich, limits, homogeneity, triangle, holder]
        .into_iter()
        .map(Tally::finish)
        .collect();
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(SpacesReport { checks, all_passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Domain;
    use crate::profile::ProfileSpec;
    use std::f64::consts::PI;
    use std::sync::Arc;

    fn interval(n: usize) -> Arc<Grid> {
        Arc::new(Grid::new(Domain::unit_interval(), n).unwrap())
    }

    fn affine(grid: &Grid, a: f64, b: f64) -> ExponentField {
        ExponentField::from_spec(&ProfileSpec::Affine { a, b }, grid).unwrap()
    }

    #[test]
    fn modular_of_constants() {
        let g = interval(33);
        let p = affine(&g, 2.0, 1.0);
        let ones = GridFunction::from_fn(g.clone(), BoundaryCondition::None, |_| 1.0);
        assert!((modular(&ones, &p).unwrap() - 1.0).abs() < 1e-14);
        let twos = GridFunction::from_fn(g.clone(), BoundaryCondition::None, |_| 2.0);
        let p2 = ExponentField::constant(2.0, g.len(), 1).unwrap();
        assert!((modular(&twos, &p2).unwrap() - 4.0).abs() < 1e-13);
        let short = ExponentField::constant(2.0, 5, 1).unwrap();
        assert!(matches!(modular(&ones, &short), Err(Error::GridMismatch { .. })));
    }

    #[test]
    fn modular_converges_under_refinement() {
        // Oracle: the same smooth integrand on a 10x finer grid.
        let u = |x: f64| (3.0 * x).sin() + 0.4 * (7.0 * x).cos();
        let coarse = interval(1001);
        let fine = interval(10_001);
        let value = |g: &Arc<Grid>| {
            let f = GridFunction::from_fn(g.clone(), BoundaryCondition::None, |c| u(c[0]));
            modular(&f, &affine(g, 2.0, 1.0)).unwrap()
        };
        assert!((value(&coarse) - value(&fine)).abs() < 1e-6);
    }

    #[test]
    fn zero_has_zero_norm() {
        let g = interval(11);
        let p = affine(&g, 2.0, 1.0);
        let z = GridFunction::zeros(g);
        assert_eq!(luxemburg_norm(&z, &p).unwrap().value, 0.0);
        assert_eq!(laplacian_norm(&z, &p).unwrap().value, 0.0);
        assert_eq!(sup_norm(&z), 0.0);
    }

    #[test]
    fn unit_field_with_affine_exponent_matches_dense_scan() {
        // Dense scan over μ of ∫_0^1 μ^{-(2+x)} dx = 1, with the integral in closed form.
        let g = interval(2001);
        let p = affine(&g, 2.0, 1.0);
        let ones = GridFunction::from_fn(g.clone(), BoundaryCondition::None, |_| 1.0);
        let lux = luxemburg_norm(&ones, &p).unwrap().value;
        let exact = |mu: f64| {
            let l = mu.ln();
            (mu.powi(-2) - mu.powi(-3)) / l
        };
        let mut best = (f64::INFINITY, 0.0);
        let mut mu = 0.5;
        while mu < 2.0 {
            if (mu - 1.0f64).abs() > 1e-9 {
                let gap = (exact(mu) - 1.0).abs();
                if gap < best.0 {
                    best = (gap, mu);
                }
            }
            mu += 1e-6;
        }
        assert!((lux - best.1).abs() < 1e-5, "{lux} vs {}", best.1);
    }

    #[test]
    fn laplacian_norm_examples() {
        let g = interval(101);
        let p2 = ExponentField::constant(2.0, g.len(), 1).unwrap();
        let u = GridFunction::from_fn(g.clone(), BoundaryCondition::Navier, |c| c[0] * (1.0 - c[0]));
        // Δu = -2 at interior nodes and 0 at the two endpoints.
        let expected = (4.0 * (1.0 - g.spacing())).sqrt();
        assert!((laplacian_norm(&u, &p2).unwrap().value - expected).abs() < 1e-10);
        assert!((expected - 2.0).abs() < 2e-2);

        let mut errs = Vec::new();
        for n in [65, 129, 257] {
            let g = interval(n);
            let p2 = ExponentField::constant(2.0, g.len(), 1).unwrap();
            let s = GridFunction::from_fn(g.clone(), BoundaryCondition::Navier, |c| (PI * c[0]).sin());
            errs.push((laplacian_norm(&s, &p2).unwrap().value - PI * PI / 2f64.sqrt()).abs());
        }
        assert!(errs[2] < 1e-3 && errs[0] / errs[2] > 12.0, "{errs:?}");

        let raw = GridFunction::from_fn(g, BoundaryCondition::None, |_| 1.0);
        assert!(laplacian_norm(&raw, &p2).is_err());
    }

    #[test]
    fn sup_norm_examples() {
        let g = interval(301);
        let u = GridFunction::from_fn(g.clone(), BoundaryCondition::Navier, |c| c[0] * (1.0 - c[0]));
        assert!((sup_norm(&u) - 0.25).abs() < 1e-15);
        let s = GridFunction::from_fn(g, BoundaryCondition::Navier, |c| (3.0 * PI * c[0]).sin());
        assert!((sup_norm(&s) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn holder_equality_edge_and_zero() {
        let g = interval(51);
        let p2 = ExponentField::constant(2.0, g.len(), 1).unwrap();
        let ones = GridFunction::from_fn(g.clone(), BoundaryCondition::None, |_| 1.0);
        let r = check_holder(&ones, &ones, &p2).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-12 && (r.rhs - 1.0).abs() < 1e-10 && r.holds);
        let z = GridFunction::zeros(g);
        let r = check_holder(&z, &ones, &p2).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!(r.holds);
    }

    #[test]
    fn battery_passes_on_affine_exponent() {
        let g = interval(129);
        let p = affine(&g, 2.0, 1.0);
        let report = property_battery(&g, &p, 3, 10).unwrap();
        assert!(report.all_passed, "{report:#?}");
        assert_eq!(report.checks.len(), 7);
    }
}
