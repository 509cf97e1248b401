//! Three-solution certificates: the constants `w, D, L, γ_r, c0, α_r, β_h`,
//! the admissible `λ`-interval, and the one-dimensional variant with the
//! constant `k`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::energy::ProblemInstance;
use crate::error::{Error, Result};
use crate::exponent::ExponentField;
use crate::grid::{unit_ball_volume, Domain, Grid, GridFunction};
use crate::modular::{laplacian_norm, luxemburg_values, sup_norm, LuxemburgOptions};
use crate::nonlinearity::ScalarLaw;
use crate::potential::{growth_constants, ConstantsSource, GrowthConstants, TSampler};

/// Volume of the unit ball in `R^N`.
pub fn ball_volume_coeff(n: usize) -> f64 {
    unit_ball_volume(n)
}

/// Largest inscribed ball: radius and a center attaining it.
pub fn inradius(domain: &Domain) -> Result<(f64, [f64; 2])> {
    domain.validate()?;
    Ok(match *domain {
        Domain::Interval { length } => (length / 2.0, [length / 2.0, 0.0]),
        Domain::Rectangle { a, b } => (a.min(b) / 2.0, [a / 2.0, b / 2.0]),
        Domain::BallRadial { radius, .. } => (radius, [0.0, 0.0]),
    })
}

/// `L = w(D^N − (D/2)^N)`.
pub fn compute_l(n: usize, d: f64) -> f64 {
    ball_volume_coeff(n) * (d.powi(n as i32) - (d / 2.0).powi(n as i32))
}

/// `γ_r = max{(p⁺r)^{1/p⁺}, (p⁺r)^{1/p⁻}}`.
pub fn gamma_r(p: &ExponentField, r: f64) -> f64 {
    let base = p.p_plus * r;
    base.powf(1.0 / p.p_plus).max(base.powf(1.0 / p.p_minus))
}

/// `8hN/(3D²)`, the modulus of the test function's Laplacian on the annulus.
pub fn annulus_laplacian(h: f64, d: f64, n: usize) -> f64 {
    8.0 * h * n as f64 / (3.0 * d * d)
}

/// The piecewise test function `v̄` on a grid together with its analytic
/// Laplacian.
#[derive(Debug, Clone)]
pub struct TestFunction {
    pub values: GridFunction,
    /// Analytic `Δv̄`; nodes on an interface sphere carry the mean of the
    /// one-sided values.
    pub laplacian: Vec<f64>,
    /// Share of each node's neighbourhood inside the annulus (0, 1/2 or 1).
    pub annulus_share: Vec<f64>,
}

fn ball_contained(grid: &Grid, d: f64, x0: [f64; 2]) -> bool {
    let tol = 1e-12 * (1.0 + d);
    match grid.domain {
        Domain::Interval { length } => x0[0] - d >= -tol && x0[0] + d <= length + tol,
        Domain::Rectangle { a, b } => {
            x0[0] - d >= -tol && x0[0] + d <= a + tol && x0[1] - d >= -tol && x0[1] + d <= b + tol
        }
        Domain::BallRadial { radius, .. } => x0 == [0.0, 0.0] && d <= radius + tol,
    }
}

pub fn build_test_function(h: f64, d: f64, x0: [f64; 2], grid: &std::sync::Arc<Grid>) -> Result<TestFunction> {
    if !(h > 0.0 && d > 0.0) {
        return Err(Error::InvalidParameter(format!("test function needs h > 0 and D > 0, got h = {h}, D = {d}")));
    }
    if !ball_contained(grid, d, x0) {
        return Err(Error::BallNotContained { radius: d });
    }
    let n = grid.dim();
    let c = -annulus_laplacian(h, d, n);
    let eps = 1e-9 * d;
    let mut values = Vec::with_capacity(grid.len());
    let mut share = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let dist = grid.distance(i, x0);
        let v = if dist <= d / 2.0 {
            h
        } else if dist < d {
            4.0 * h / (3.0 * d * d) * (d * d - dist * dist)
        } else {
            0.0
        };
        values.push(if grid.is_boundary(i) && dist >= d - eps { 0.0 } else { v });
        let s = if (dist - d / 2.0).abs() <= eps {
            0.5
        } else if (dist - d).abs() <= eps {
            if grid.is_boundary(i) {
                1.0
            } else {
                0.5
            }
        } else if dist > d / 2.0 && dist < d {
            1.0
        } else {
            0.0
        };
        share.push(s);
    }
    let laplacian = share.iter().map(|s| s * c).collect();
    Ok(TestFunction { values: GridFunction::navier(grid.clone(), values)?, laplacian, annulus_share: share })
}

/// `J(v̄)` with the analytic Laplacian; interface nodes average the
/// one-sided integrands.
pub fn energy_of_test_function(inst: &ProblemInstance, tf: &TestFunction, h: f64, d: f64) -> f64 {
    let c = -annulus_laplacian(h, d, inst.grid.dim());
    (0..inst.len())
        .map(|i| inst.grid.weights[i] * tf.annulus_share[i] * inst.potential.big_a(i, c))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum C0Provenance {
    Analytic,
    NumericalEstimate,
}

/// Embedding constant in `‖u‖_∞ ≤ c0‖u‖`.
///
/// The unit interval uses the analytic value `1/4`. Other domains take 1.5
/// times the largest ratio `sup|u| / ‖u‖` over 200 seeded smooth Navier
/// fields and the test-function family.
pub fn estimate_c0(grid: &std::sync::Arc<Grid>, p: &ExponentField) -> Result<(f64, C0Provenance)> {
    if matches!(grid.domain, Domain::Interval { length } if length == 1.0) {
        return Ok((0.25, C0Provenance::Analytic));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0);
    let mut worst: f64 = 0.0;
    let mut consider = |u: &GridFunction| -> Result<()> {
        let norm = laplacian_norm(u, p)?.value;
        if norm > 0.0 {
            worst = worst.max(sup_norm(u) / norm);
        }
        Ok(())
    };
    for _ in 0..200 {
        let u = GridFunction::navier(grid.clone(), grid.random_smooth_field(&mut rng, 5))?;
        consider(&u)?;
    }
    let (d, x0) = inradius(&grid.domain)?;
    for h in [0.1, 1.0, 10.0] {
        consider(&build_test_function(h, d, x0, grid)?.values)?;
    }
    Ok((1.5 * worst, C0Provenance::NumericalEstimate))
}

/// `sup_{|t| ≤ s} F(x_i, t)` per node: a 1001-point scan followed by one
/// Newton step on `f = ∂F/∂t` at the best point.
pub fn sup_primitive(inst: &ProblemInstance, s: f64) -> Vec<f64> {
    let nl = &inst.nonlinearity;
    (0..inst.len())
        .into_par_iter()
        .map(|i| {
            if s <= 0.0 {
                return nl.big_f(i, 0.0);
            }
            let dt = 2.0 * s / 1000.0;
            let mut best = (nl.big_f(i, -s), -s);
            for k in 1..=1000 {
                let t = -s + dt * k as f64;
                let v = nl.big_f(i, t);
                if v > best.0 {
                    best = (v, t);
                }
            }
            let (f, fp) = (nl.f(i, best.1), nl.df_dt(i, best.1));
            if fp < 0.0 {
                let t = (best.1 - f / fp).clamp((best.1 - dt).max(-s), (best.1 + dt).min(s));
                let v = nl.big_f(i, t);
                if v > best.0 {
                    best = (v, t);
                }
            }
            best.0
        })
        .collect()
}

/// `α_r = (1/r)∫ sup_{|t| ≤ c0γ_r} F(x, t) dx`.
pub fn alpha_r(inst: &ProblemInstance, r: f64, c0: f64, p: &ExponentField) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::InvalidParameter(format!("r must be positive, got {r}")));
    }
    let sup = sup_primitive(inst, c0 * gamma_r(p, r));
    Ok(inst.grid.integrate(&sup)? / r)
}

/// Inputs of the `β_h` quotient besides the nonlinearity.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaConstants {
    pub c3: f64,
    pub d: Vec<f64>,
    pub l: f64,
    pub w: f64,
    pub inradius: f64,
    pub n: usize,
}

/// The pieces of `β_h`: numerator, denominator and `|d|_{p'}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaParts {
    pub ess_inf_f_h: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub d_dual_norm: f64,
    pub value: f64,
}

/// `β_h`: `w(D/2)^N ess inf F(x,h)` over
/// `c3 L^{1/p⁺}[N^{1/p⁺}(8h/3D²)|d|_{p'} + L^{(p⁺−1)/p⁺} max{X^{p⁻}, X^{p⁺}}]`
/// with `X = 8hN/(3D²)`. The essential infimum is the minimum over nodes.
pub fn beta_h(inst: &ProblemInstance, h: f64, k: &BetaConstants) -> Result<BetaParts> {
    let p = &inst.p;
    let ess_inf = (0..inst.len()).map(|i| inst.nonlinearity.big_f(i, h)).fold(f64::INFINITY, f64::min);
    let numerator = k.w * (k.inradius / 2.0).powi(k.n as i32) * ess_inf;
    let dual = p.conjugate();
    let d_dual_norm = luxemburg_values(&inst.grid.weights, &k.d, &dual.values, LuxemburgOptions::default())?.value;
    let x = annulus_laplacian(h, k.inradius, k.n);
    let n = k.n as f64;
    let inner = n.powf(1.0 / p.p_plus) * 8.0 * h / (3.0 * k.inradius * k.inradius) * d_dual_norm
        + k.l.powf((p.p_plus - 1.0) / p.p_plus) * x.powf(p.p_minus).max(x.powf(p.p_plus));
    let denominator = k.c3 * k.l.powf(1.0 / p.p_plus) * inner;
    Ok(BetaParts { ess_inf_f_h: ess_inf, numerator, denominator, d_dual_norm, value: numerator / denominator })
}

/// Analytic bounds on `J(v̄)` and its quadrature value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub lower: f64,
    pub j_vbar: f64,
    pub upper: f64,
    pub holds: bool,
    pub phi_vbar: f64,
    /// `w(D/2)^N ess inf F(x, h)`, a lower bound for `Φ(v̄)`.
    pub phi_lower: f64,
}

/// Relative slack of the sandwich comparison.
pub const SANDWICH_TOL: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    General,
    Dim1,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateConstants {
    pub w: f64,
    #[serde(rename = "D")]
    pub inradius: f64,
    #[serde(rename = "L")]
    pub l_const: f64,
    pub gamma_r: f64,
    pub c0: f64,
    pub c0_provenance: C0Provenance,
    pub alpha_r: f64,
    pub beta_h: f64,
    pub r: f64,
    pub h: f64,
    #[serde(rename = "N")]
    pub dim: usize,
    pub x0: [f64; 2],
    pub c3: f64,
    pub c3_source: ConstantsSource,
    pub d_dual_norm: f64,
    pub ess_inf_f_h: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_l1: Option<f64>,
    /// Interval endpoints as computed, before any feasibility gating.
    pub raw_interval: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateChecks {
    pub r_bound: bool,
    pub beta_gt_alpha: bool,
    pub f_nonnegative_on_0_h: bool,
    pub hypotheses_pass: bool,
    pub exponent_eligible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side_condition: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_nonnegative: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_zero_nonzero: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_growth: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub theorem: Theorem,
    pub constants: CertificateConstants,
    pub checks: CertificateChecks,
    pub lambda_interval: Option<[f64; 2]>,
    /// Set when refining the grid to `2n − 1` nodes moves `α_r` and `β_h`
    /// by less than [`CONVERGENCE_TOL`].
    pub converged: bool,
    pub reasons: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sandwich: Option<SandwichReport>,
}

impl Certificate {
    pub fn is_feasible(&self) -> bool {
        self.lambda_interval.is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

pub const CONVERGENCE_TOL: f64 = 0.005;

fn relative_change(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Constants used by the certificate. Closed-form constants are kept;
/// fitted ones are refitted on `[−T, T]` with
/// `T = 10·max(1, h, c0γ_r, 8hN/(3D²))`.
pub fn certificate_growth_constants(inst: &ProblemInstance, h: f64, s: f64, x: f64) -> GrowthConstants {
    if inst.potential.constants.source == ConstantsSource::ClosedForm {
        return inst.potential.constants.clone();
    }
    let t_max = 10.0 * 1f64.max(h).max(s).max(x);
    growth_constants(&inst.potential, &TSampler::new(inst.len(), t_max))
}

struct Geometry {
    w: f64,
    d: f64,
    x0: [f64; 2],
    l: f64,
    n: usize,
}

fn geometry(grid: &Grid) -> Result<Geometry> {
    let n = grid.dim();
    let (d, x0) = inradius(&grid.domain)?;
    Ok(Geometry { w: ball_volume_coeff(n), d, x0, l: compute_l(n, d), n })
}

/// Minimum of `F(x, t)` over nodes and `t ∈ [0, h]` (201 samples).
fn min_primitive_on(inst: &ProblemInstance, h: f64) -> f64 {
    let mut m = f64::INFINITY;
    for k in 0..=200 {
        let t = h * k as f64 / 200.0;
        for i in 0..inst.len() {
            m = m.min(inst.nonlinearity.big_f(i, t));
        }
    }
    m
}

/// Analytic sandwich bounds and quadrature `J(v̄)`, `Φ(v̄)`.
pub fn sandwich_check(inst: &ProblemInstance, h: f64) -> Result<SandwichReport> {
    let g = geometry(&inst.grid)?;
    let p = &inst.p;
    let x = annulus_laplacian(h, g.d, g.n);
    let c0 = estimate_c0(&inst.grid, p)?.0;
    let s = c0 * gamma_r(p, 1.0);
    let k = certificate_growth_constants(inst, h, s, x);
    let beta = beta_h(inst, h, &BetaConstants { c3: k.c3, d: k.d.clone(), l: g.l, w: g.w, inradius: g.d, n: g.n })?;
    sandwich_from_parts(inst, h, &g, &beta)
}

fn sandwich_from_parts(inst: &ProblemInstance, h: f64, g: &Geometry, beta: &BetaParts) -> Result<SandwichReport> {
    let p = &inst.p;
    let x = annulus_laplacian(h, g.d, g.n);
    let tf = build_test_function(h, g.d, g.x0, &inst.grid)?;
    let lower = g.l / p.p_plus * x.powf(p.p_minus).min(x.powf(p.p_plus));
    let upper = beta.denominator;
    let j_vbar = energy_of_test_function(inst, &tf, h, g.d);
    let phi_vbar = inst.load_phi_values(&tf.values.values);
    let holds = lower * (1.0 - SANDWICH_TOL) <= j_vbar && j_vbar <= upper * (1.0 + SANDWICH_TOL);
    Ok(SandwichReport { lower, j_vbar, upper, holds, phi_vbar, phi_lower: beta.numerator })
}

struct GeneralValues {
    alpha: f64,
    beta: BetaParts,
    k: GrowthConstants,
    c0: (f64, C0Provenance),
    gamma: f64,
}

fn general_values(inst: &ProblemInstance, r: f64, h: f64, g: &Geometry, c0: Option<(f64, C0Provenance)>) -> Result<GeneralValues> {
    let p = &inst.p;
    let c0 = match c0 {
        Some(c) => c,
        None => estimate_c0(&inst.grid, p)?,
    };
    let gamma = gamma_r(p, r);
    let x = annulus_laplacian(h, g.d, g.n);
    let k = certificate_growth_constants(inst, h, c0.0 * gamma, x);
    let alpha = alpha_r(inst, r, c0.0, p)?;
    let beta = beta_h(inst, h, &BetaConstants { c3: k.c3, d: k.d.clone(), l: g.l, w: g.w, inradius: g.d, n: g.n })?;
    Ok(GeneralValues { alpha, beta, k, c0, gamma })
}

/// Certificate for the pair `(r, h)`.
pub fn certify(inst: &ProblemInstance, r: f64, h: f64) -> Result<Certificate> {
    if !(r > 0.0 && h > 0.0) {
        return Err(Error::InvalidParameter(format!("r and h must be positive, got r = {r}, h = {h}")));
    }
    let g = geometry(&inst.grid)?;
    let p = &inst.p;
    let v = general_values(inst, r, h, &g, None)?;
    let x = annulus_laplacian(h, g.d, g.n);
    let mut reasons = Vec::new();

    let r_limit = g.l / p.p_plus * x.powf(p.p_minus).min(x.powf(p.p_plus));
    let r_bound = r < r_limit;
    if !r_bound {
        reasons.push(format!("r = {r} violates r < {r_limit}"));
    }
    let beta_gt_alpha = v.beta.value > v.alpha && v.alpha > 0.0;
    if !beta_gt_alpha {
        reasons.push(format!("need beta_h > alpha_r > 0, got beta_h = {}, alpha_r = {}", v.beta.value, v.alpha));
    }
    let f_nonnegative = min_primitive_on(inst, h) >= -1e-14;
    if !f_nonnegative {
        reasons.push(format!("ess inf F(x, t) < 0 for some t in [0, {h}]"));
    }
    let hypotheses_pass = !inst.hypotheses.any_fail();
    if !hypotheses_pass {
        reasons.push(format!("hypotheses: {}", inst.hypotheses.summary()));
    }
    let exponent_eligible = p.certificate_eligible();
    if !exponent_eligible {
        reasons.push(format!("p- = {} must exceed N/2 = {}", p.p_minus, g.n as f64 / 2.0));
    }
    if v.c0.1 == C0Provenance::NumericalEstimate {
        reasons.push("c0 is a numerical estimate; the interval is only as rigorous as c0".into());
    }

    let raw_interval = [1.0 / v.beta.value, 1.0 / v.alpha];
    let feasible = r_bound && beta_gt_alpha && f_nonnegative && hypotheses_pass && exponent_eligible;
    let lambda_interval = feasible.then_some(raw_interval);

    let converged = match &inst.recipe {
        Some(recipe) => {
            let fine = recipe.instantiate_unchecked(2 * inst.grid.n - 1, inst.lambda)?;
            let gf = geometry(&fine.grid)?;
            let vf = general_values(&fine, r, h, &gf, Some(v.c0))?;
            relative_change(v.alpha, vf.alpha) < CONVERGENCE_TOL && relative_change(v.beta.value, vf.beta.value) < CONVERGENCE_TOL
        }
        None => {
            reasons.push("no problem description attached; grid refinement skipped".into());
            false
        }
    };

    let sandwich = sandwich_from_parts(inst, h, &g, &v.beta).ok();
    Ok(Certificate {
        theorem: Theorem::General,
        constants: CertificateConstants {
            w: g.w,
            inradius: g.d,
            l_const: g.l,
            gamma_r: v.gamma,
            c0: v.c0.0,
            c0_provenance: v.c0.1,
            alpha_r: v.alpha,
            beta_h: v.beta.value,
            r,
            h,
            dim: g.n,
            x0: g.x0,
            c3: v.k.c3,
            c3_source: v.k.source,
            d_dual_norm: v.beta.d_dual_norm,
            ess_inf_f_h: v.beta.ess_inf_f_h,
            k: None,
            l: None,
            nu: None,
            alpha_0: None,
            alpha_l1: None,
            raw_interval,
        },
        checks: CertificateChecks {
            r_bound,
            beta_gt_alpha,
            f_nonnegative_on_0_h: f_nonnegative,
            hypotheses_pass,
            exponent_eligible,
            side_condition: None,
            g_nonnegative: None,
            g_zero_nonzero: None,
            nu_growth: None,
        },
        lambda_interval,
        converged,
        reasons,
        sandwich,
    })
}

/// [`certify`] with `r = 1`.
pub fn certify_r1(inst: &ProblemInstance, h: f64) -> Result<Certificate> {
    certify(inst, 1.0, h)
}

/// Log-spaced `h` grid on `[1e-2, 1e2]`.
pub fn h_scan_grid(points: usize) -> Vec<f64> {
    let points = points.max(2);
    (0..points).map(|k| 10f64.powf(-2.0 + 4.0 * k as f64 / (points - 1) as f64)).collect()
}

/// Scans `h` and returns the certificate maximizing `β_h / α_r` among those
/// whose `r`-bound holds (ties go to the smaller `h`).
pub fn certify_h_scan(inst: &ProblemInstance, r: f64, points: usize) -> Result<Certificate> {
    let g = geometry(&inst.grid)?;
    let p = &inst.p;
    let c0 = estimate_c0(&inst.grid, p)?;
    let alpha = alpha_r(inst, r, c0.0, p)?;
    let hs = h_scan_grid(points);
    let scores: Vec<Result<(f64, f64)>> = hs
        .par_iter()
        .map(|&h| {
            let x = annulus_laplacian(h, g.d, g.n);
            let r_ok = r < g.l / p.p_plus * x.powf(p.p_minus).min(x.powf(p.p_plus));
            let k = certificate_growth_constants(inst, h, c0.0 * gamma_r(p, r), x);
            let beta = beta_h(inst, h, &BetaConstants { c3: k.c3, d: k.d, l: g.l, w: g.w, inradius: g.d, n: g.n })?;
            let score = if r_ok { beta.value / alpha.max(f64::MIN_POSITIVE) } else { f64::NEG_INFINITY };
            Ok((score, h))
        })
        .collect();
    let mut best = (f64::NEG_INFINITY, hs[0]);
    for s in scores {
        let (score, h) = s?;
        if score > best.0 {
            best = (score, h);
        }
    }
    certify(inst, r, best.1)
}

/// Samples of `g(t)|t|^{-ν}` at `|t| ∈ {1e2, 1e3, 1e4}`; the growth check
/// passes when they shrink by at least a factor 10 from first to last on
/// each side, or are negligible.
pub fn nu_growth_holds(g: &ScalarLaw, nu: f64) -> bool {
    [1.0, -1.0].iter().all(|sign| {
        let vals: Vec<f64> = [1e2, 1e3, 1e4].iter().map(|t: &f64| g.eval(0.0, sign * t).abs() * t.powf(-nu)).collect();
        vals.iter().all(|v| *v <= 1e-12) || (vals[1] <= vals[0] && vals[2] <= vals[1] && vals[2] <= 0.1 * vals[0])
    })
}

/// `k = (1/(p⁺c3))(3/8)^{p⁺} α₀/‖α‖₁`.
pub fn dim1_k(p_plus: f64, c3: f64, alpha_0: f64, alpha_l1: f64) -> f64 {
    (0.375f64).powf(p_plus) * alpha_0 / (p_plus * c3 * alpha_l1)
}

/// Interval of the one-dimensional theorem:
/// `((8/3)^{p⁺}h^{p⁺}c3/(α₀G(h)), l^{p⁺}/(p⁺‖α‖₁G(l)))`.
pub fn dim1_interval(g: &ScalarLaw, p: &ExponentField, c3: f64, alpha_0: f64, alpha_l1: f64, l: f64, h: f64) -> [f64; 2] {
    let pp = p.p_plus;
    let lo = (8.0 / 3.0f64).powf(pp) * h.powf(pp) * c3 / (alpha_0 * g.primitive(0.0, h));
    let hi = l.powf(pp) / (pp * alpha_l1 * g.primitive(0.0, l));
    [lo, hi]
}

/// Certificate of the one-dimensional theorem on `[0, 1]` for
/// `f(x, t) = α(x)g(t)`.
pub fn dim1_certificate(g: &ScalarLaw, alpha: &GridFunction, p: &ExponentField, l: f64, h: f64, c3: f64, nu: f64) -> Result<Certificate> {
    let grid = &alpha.grid;
    if !matches!(grid.domain, Domain::Interval { length } if length == 1.0) {
        return Err(Error::UnsupportedDomain("the one-dimensional certificate needs the unit interval".into()));
    }
    if !(l > 0.0 && h > 0.0 && c3 > 0.0) {
        return Err(Error::InvalidParameter(format!("l, h and c3 must be positive, got l = {l}, h = {h}, c3 = {c3}")));
    }
    let mut reasons = Vec::new();
    let alpha_0 = alpha.values.iter().copied().fold(f64::INFINITY, f64::min);
    let abs_alpha: Vec<f64> = alpha.values.iter().map(|a| a.abs()).collect();
    let alpha_l1 = grid.integrate(&abs_alpha)?;
    if !(alpha_0 > 0.0) {
        reasons.push(format!("alpha must be positive, min is {alpha_0}"));
    }
    let pp = p.p_plus;
    let pm = p.p_minus;
    let k = dim1_k(pp, c3, alpha_0, alpha_l1);

    let g_nonnegative = (0..=4000).all(|j| g.eval(0.0, -100.0 + 0.05 * j as f64) >= 0.0);
    if !g_nonnegative {
        reasons.push("g takes negative values".into());
    }
    let g_zero_nonzero = g.eval(0.0, 0.0) != 0.0;
    if !g_zero_nonzero {
        reasons.push("g(0) = 0".into());
    }
    let nu_range = (0.0..pm - 1.0).contains(&nu);
    let nu_growth = nu_range && nu_growth_holds(g, nu);
    if !nu_growth {
        reasons.push(format!("growth limit g(t)|t|^-nu -> 0 not observed for nu = {nu} (need 0 <= nu < {})", pm - 1.0));
    }
    let side_rhs = (8.0 * h / 3.0).powf(pm / pp) * 0.25f64.powf(1.0 / pp);
    let side_condition = l <= 1.0 && 1.0 <= side_rhs;
    if !side_condition {
        reasons.push(format!("side condition l <= 1 <= {side_rhs} fails"));
    }
    let gl = g.primitive(0.0, l);
    let gh = g.primitive(0.0, h);
    let quotient_ok = gl / l.powf(pp) < k * gh / h.powf(pp);
    if !quotient_ok {
        reasons.push(format!("G(l)/l^p+ = {} is not below k G(h)/h^p+ = {}", gl / l.powf(pp), k * gh / h.powf(pp)));
    }
    let raw_interval = dim1_interval(g, p, c3, alpha_0, alpha_l1, l, h);
    let exponent_eligible = p.certificate_eligible();
    let feasible = alpha_0 > 0.0 && g_nonnegative && g_zero_nonzero && nu_growth && side_condition && quotient_ok && exponent_eligible;

    // the proof takes r = l^{p⁺}/p⁺, for which γ_r = l
    let r = l.powf(pp) / pp;
    let w = ball_volume_coeff(1);
    Ok(Certificate {
        theorem: Theorem::Dim1,
        constants: CertificateConstants {
            w,
            inradius: 0.5,
            l_const: compute_l(1, 0.5),
            gamma_r: gamma_r(p, r),
            c0: 0.25,
            c0_provenance: C0Provenance::Analytic,
            alpha_r: alpha_l1 * gl / r,
            beta_h: alpha_0 * gh / ((8.0 / 3.0f64).powf(pp) * h.powf(pp) * c3),
            r,
            h,
            dim: 1,
            x0: [0.5, 0.0],
            c3,
            c3_source: ConstantsSource::ClosedForm,
            d_dual_norm: 0.0,
            ess_inf_f_h: alpha_0 * gh,
            k: Some(k),
            l: Some(l),
            nu: Some(nu),
            alpha_0: Some(alpha_0),
            alpha_l1: Some(alpha_l1),
            raw_interval,
        },
        checks: CertificateChecks {
            r_bound: side_condition,
            beta_gt_alpha: quotient_ok,
            f_nonnegative_on_0_h: g_nonnegative,
            hypotheses_pass: true,
            exponent_eligible,
            side_condition: Some(side_condition),
            g_nonnegative: Some(g_nonnegative),
            g_zero_nonzero: Some(g_zero_nonzero),
            nu_growth: Some(nu_growth),
        },
        lambda_interval: feasible.then_some(raw_interval),
        converged: true,
        reasons,
        sandwich: None,
    })
}

/// Default `ν` for the growth check, the midpoint of `[0, p⁻ − 1)`.
pub fn default_nu(p: &ExponentField) -> f64 {
    (p.p_minus - 1.0) / 2.0
}

/// [`dim1_certificate`] for an instance, with `c3` from its potential and
/// `hypotheses_pass` from its report.
pub fn certify_dim1(inst: &ProblemInstance, l: f64, h: f64, nu: f64) -> Result<Certificate> {
    let alpha = GridFunction::new(inst.grid.clone(), inst.nonlinearity.weight.clone(), crate::grid::BoundaryCondition::None)?;
    let mut cert = dim1_certificate(&inst.nonlinearity.law, &alpha, &inst.p, l, h, inst.potential.constants.c3, nu)?;
    cert.constants.c3_source = inst.potential.constants.source;
    let pass = !inst.hypotheses.any_fail();
    cert.checks.hypotheses_pass = pass;
    if !pass {
        cert.reasons.push(format!("hypotheses: {}", inst.hypotheses.summary()));
        cert.lambda_interval = None;
    }
    Ok(cert)
}

/// Smallest `h` allowed by the side condition, `(3/8)·4^{1/p⁻}`.
pub fn dim1_min_h(p: &ExponentField) -> f64 {
    0.375 * 4f64.powf(1.0 / p.p_minus)
}

/// Scans `l ∈ [1e-3, 1]` and `h ∈ [h_min, 1e2]` (log grids) for the pair
/// maximizing the ratio of the interval endpoints `hi/lo`.
pub fn certify_dim1_scan(inst: &ProblemInstance, nu: f64) -> Result<Certificate> {
    let p = &inst.p;
    let law = &inst.nonlinearity.law;
    let c3 = inst.potential.constants.c3;
    let weights = &inst.nonlinearity.weight;
    let alpha_0 = weights.iter().copied().fold(f64::INFINITY, f64::min);
    let abs_alpha: Vec<f64> = weights.iter().map(|a| a.abs()).collect();
    let alpha_l1 = inst.grid.integrate(&abs_alpha)?;
    let h_min = dim1_min_h(p);
    let ls: Vec<f64> = (0..31).map(|k| 10f64.powf(-3.0 + 3.0 * k as f64 / 30.0)).collect();
    let hs: Vec<f64> = (0..41).map(|k| h_min * (100.0 / h_min).powf(k as f64 / 40.0)).collect();
    let mut best = (f64::NEG_INFINITY, 1.0, h_min);
    for &h in &hs {
        for &l in &ls {
            let [lo, hi] = dim1_interval(law, p, c3, alpha_0, alpha_l1, l, h);
            let ratio = hi / lo;
            if ratio > best.0 {
                best = (ratio, l, h);
            }
        }
    }
    certify_dim1(inst, best.1, best.2, nu)
}
