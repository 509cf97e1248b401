//! Leray–Lions potentials `a(x, t)`, their antiderivatives `A(x, t)` and
//! sampled verification of the structural hypotheses (H1)–(H5).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::ExponentField;
use crate::nonlinearity::NonlinearitySpec;
use crate::profile::PiecewiseLinear;
use crate::quadrature;

/// Exponent convention of the perturbed family `θ(1+t²)^e t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PerturbedVariant {
    /// `e = p/(p-2)`, singular at `p = 2`.
    PaperLiteral,
    /// `e = (p-2)/2`.
    Standard,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PotentialFamily {
    /// `θ|t|^{p-2}t`.
    Power,
    Perturbed(PerturbedVariant),
    /// `θ · table(t)`, constant beyond the table.
    Tabulated(PiecewiseLinear),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantsSource {
    ClosedForm,
    SampledFit,
}

/// Constants of (H2), (H4) and the `|A| ≤ c3(d|t| + |t|^p)` bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub d: Vec<f64>,
    pub source: ConstantsSource,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec {
    pub family: PotentialFamily,
    pub theta: Vec<f64>,
    pub theta_0: f64,
    pub theta_max: f64,
    pub p: ExponentField,
    pub constants: GrowthConstants,
}

/// Margin applied to sampled fits: `c1`, `c3` are inflated and `c2` deflated.
pub const FIT_MARGIN: f64 = 0.05;
const QUAD_TOL: f64 = 1e-10;
/// Tighter tolerance for energy evaluation, where finite differences and
/// line searches see the quadrature noise.
const ENERGY_QUAD_TOL: f64 = 1e-13;

fn check_theta(theta: &[f64], p: &ExponentField) -> Result<(f64, f64)> {
    if theta.len() != p.len() {
        return Err(Error::GridMismatch { expected: p.len(), got: theta.len() });
    }
    for (node, &value) in theta.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite { node, value });
        }
        if value <= 0.0 {
            return Err(Error::NonPositiveTheta { node, value });
        }
    }
    let lo = theta.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = theta.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((lo, hi))
}

/// `a = θ|t|^{p-2}t`, `A = θ|t|^p/p` with closed-form constants.
pub fn make_power_family(theta: Vec<f64>, p: ExponentField) -> Result<PotentialSpec> {
    let (theta_0, theta_max) = check_theta(&theta, &p)?;
    let constants = GrowthConstants {
        c1: theta_max.max(1.0),
        c2: theta_0.min(1.0),
        c3: theta_max / p.p_minus,
        d: vec![0.0; p.len()],
        source: ConstantsSource::ClosedForm,
    };
    Ok(PotentialSpec { family: PotentialFamily::Power, theta, theta_0, theta_max, p, constants })
}

/// `a = θ(1+t²)^e t`; `A` by adaptive quadrature, constants by sampled fit.
pub fn make_perturbed_family(theta: Vec<f64>, p: ExponentField, variant: PerturbedVariant) -> Result<PotentialSpec> {
    let (theta_0, theta_max) = check_theta(&theta, &p)?;
    if variant == PerturbedVariant::PaperLiteral {
        if let Some(node) = p.values.iter().position(|&v| v == 2.0) {
            return Err(Error::SingularExponent { node });
        }
    }
    let mut spec = PotentialSpec {
        family: PotentialFamily::Perturbed(variant),
        theta,
        theta_0,
        theta_max,
        constants: placeholder_constants(p.len()),
        p,
    };
    spec.constants = growth_constants(&spec, &TSampler::new(spec.p.len(), 10.0));
    Ok(spec)
}

/// `a = θ · table(t)`, `A` integrated exactly; constants by sampled fit.
pub fn make_tabulated_family(theta: Vec<f64>, p: ExponentField, table: PiecewiseLinear) -> Result<PotentialSpec> {
    let (theta_0, theta_max) = check_theta(&theta, &p)?;
    let mut spec = PotentialSpec {
        family: PotentialFamily::Tabulated(table),
        theta,
        theta_0,
        theta_max,
        constants: placeholder_constants(p.len()),
        p,
    };
    spec.constants = growth_constants(&spec, &TSampler::new(spec.p.len(), 10.0));
    Ok(spec)
}

fn placeholder_constants(len: usize) -> GrowthConstants {
    GrowthConstants { c1: 1.0, c2: 1.0, c3: 1.0, d: vec![0.0; len], source: ConstantsSource::SampledFit }
}

fn perturbed_exponent(variant: PerturbedVariant, p: f64) -> f64 {
    match variant {
        PerturbedVariant::PaperLiteral => p / (p - 2.0),
        PerturbedVariant::Standard => (p - 2.0) / 2.0,
    }
}

impl PotentialSpec {
    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn a(&self, node: usize, t: f64) -> f64 {
        let theta = self.theta[node];
        let p = self.p.values[node];
        match &self.family {
            PotentialFamily::Power => {
                if t == 0.0 {
                    0.0
                } else {
                    theta * t.abs().powf(p - 1.0) * t.signum()
                }
            }
            PotentialFamily::Perturbed(v) => theta * (1.0 + t * t).powf(perturbed_exponent(*v, p)) * t,
            PotentialFamily::Tabulated(table) => theta * table.eval(t),
        }
    }

    /// `∂a/∂t`; infinite at `t = 0` for the power family with `p < 2`.
    pub fn da_dt(&self, node: usize, t: f64) -> f64 {
        let theta = self.theta[node];
        let p = self.p.values[node];
        match &self.family {
            PotentialFamily::Power => {
                if p == 2.0 {
                    theta
                } else if t == 0.0 {
                    if p > 2.0 {
                        0.0
                    } else {
                        f64::INFINITY
                    }
                } else {
                    theta * (p - 1.0) * t.abs().powf(p - 2.0)
                }
            }
            PotentialFamily::Perturbed(v) => {
                let e = perturbed_exponent(*v, p);
                let base = 1.0 + t * t;
                theta * (base.powf(e) + 2.0 * e * t * t * base.powf(e - 1.0))
            }
            PotentialFamily::Tabulated(table) => theta * table.slope(t),
        }
    }

    /// `A(x, t)`; the quadrature path returns its best estimate even when
    /// the tolerance was not met (see [`antiderivative_a`] for the checked form).
    pub fn big_a(&self, node: usize, t: f64) -> f64 {
        match self.closed_form_a(node, t) {
            Some(v) => v,
            None => quadrature::adaptive_simpson(|s| self.a(node, s), 0.0, t, ENERGY_QUAD_TOL).value,
        }
    }

    fn closed_form_a(&self, node: usize, t: f64) -> Option<f64> {
        let theta = self.theta[node];
        let p = self.p.values[node];
        match &self.family {
            PotentialFamily::Power => Some(if t == 0.0 { 0.0 } else { theta * t.abs().powf(p) / p }),
            PotentialFamily::Tabulated(table) => Some(theta * table.integral_from_zero(t)),
            PotentialFamily::Perturbed(_) => {
                if t == 0.0 {
                    Some(0.0)
                } else {
                    None
                }
            }
        }
    }

    pub fn has_closed_form_a(&self) -> bool {
        !matches!(self.family, PotentialFamily::Perturbed(_))
    }
}

/// `A(x, t) = ∫_0^t a(x, s) ds`, closed form when available, otherwise
/// adaptive quadrature to relative tolerance `1e-10`.
pub fn antiderivative_a(spec: &PotentialSpec, node: usize, t: f64) -> Result<f64> {
    match spec.closed_form_a(node, t) {
        Some(v) => Ok(v),
        None => quadrature::integrate(|s| spec.a(node, s), 0.0, t, QUAD_TOL),
    }
}

/// Sample points for hypothesis checks and constant fits: a symmetric
/// `t`-grid on `[-T, T]` with log-spaced points near 0, and a subset of
/// grid nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct TSampler {
    pub t: Vec<f64>,
    pub nodes: Vec<usize>,
}

impl TSampler {
    /// `T` is raised to at least 10.
    pub fn new(grid_len: usize, t_max: f64) -> Self {
        Self::with_density(grid_len, t_max, 1)
    }

    fn with_density(grid_len: usize, t_max: f64, density: usize) -> Self {
        let t_max = t_max.max(10.0);
        let n_log = 24 * density;
        let n_lin = 48 * density;
        let mut positive = Vec::with_capacity(n_log + n_lin + 1);
        for k in 0..n_log {
            positive.push(10f64.powf(-6.0 + 6.0 * k as f64 / n_log as f64));
        }
        for k in 0..=n_lin {
            positive.push(1.0 + (t_max - 1.0) * k as f64 / n_lin as f64);
        }
        let mut t: Vec<f64> = positive.iter().map(|v| -v).collect();
        t.push(0.0);
        t.extend(positive);
        t.sort_by(|a, b| a.partial_cmp(b).unwrap());
        t.dedup();

        let n_nodes = (16 * density + 1).min(grid_len);
        let mut nodes: Vec<usize> = (0..n_nodes)
            .map(|k| if n_nodes == 1 { 0 } else { k * (grid_len - 1) / (n_nodes - 1) })
            .collect();
        nodes.dedup();
        TSampler { t, nodes }
    }

    /// Twice as many `t` samples and nodes.
    pub fn refined(&self) -> Self {
        let t_max = self.t.last().copied().unwrap_or(10.0);
        let grid_len = self.nodes.last().map_or(1, |n| n + 1);
        Self::with_density(grid_len, t_max, 2)
    }

    pub fn t_max(&self) -> f64 {
        self.t.last().copied().unwrap_or(0.0)
    }
}

/// Fits `(c1, c2, c3, d)` over the sample, with closed forms for the power
/// family. Fitted `c1`, `c3` are inflated and `c2` deflated by [`FIT_MARGIN`];
/// a `c2` whose raw fit is at least 1 is reported as `max(1, deflated)`.
pub fn growth_constants(spec: &PotentialSpec, sampler: &TSampler) -> GrowthConstants {
    if spec.family == PotentialFamily::Power {
        return make_power_family(spec.theta.clone(), spec.p.clone())
            .expect("spec was validated")
            .constants;
    }
    let nonzero_t: Vec<f64> = sampler.t.iter().copied().filter(|t| *t != 0.0).collect();

    let vanishes_at_zero = sampler.nodes.iter().all(|&i| spec.a(i, 0.0).abs() <= 1e-12);
    let mut ratio_no_d: f64 = 0.0;
    for &i in &sampler.nodes {
        let p = spec.p.values[i];
        for &t in &nonzero_t {
            ratio_no_d = ratio_no_d.max(spec.a(i, t).abs() / t.abs().powf(p - 1.0));
        }
    }
    let d_value = if vanishes_at_zero && ratio_no_d <= 1e6 { 0.0 } else { 1.0 };

    let mut c1: f64 = 0.0;
    let mut c3: f64 = 0.0;
    let mut c2_raw = f64::INFINITY;
    for &i in &sampler.nodes {
        let p = spec.p.values[i];
        for &t in &nonzero_t {
            let at = t.abs();
            let a = spec.a(i, t);
            let big = spec.big_a(i, t);
            c1 = c1.max(a.abs() / (d_value + at.powf(p - 1.0)));
            c3 = c3.max(big.abs() / (d_value * at + at.powf(p)));
            c2_raw = c2_raw.min((a * t).min(p * big) / at.powf(p));
        }
    }
    let c2_fit = (1.0 - FIT_MARGIN) * c2_raw;
    let c2 = if c2_raw >= 1.0 { c2_fit.max(1.0) } else { c2_fit };
    GrowthConstants {
        c1: (1.0 + FIT_MARGIN) * c1,
        c2,
        c3: (1.0 + FIT_MARGIN) * c3,
        d: vec![d_value; spec.len()],
        source: ConstantsSource::SampledFit,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisStatus {
    Pass,
    Fail,
    Unverifiable,
}

/// Sample point where an inequality is violated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub node: usize,
    pub x: f64,
    pub t: f64,
    pub s: Option<f64>,
    /// The side that should be smaller, and the side that should be larger.
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub id: String,
    pub status: HypothesisStatus,
    pub samples: usize,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub checks: Vec<HypothesisCheck>,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == HypothesisStatus::Pass)
    }

    pub fn any_fail(&self) -> bool {
        self.checks.iter().any(|c| c.status == HypothesisStatus::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&HypothesisCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn summary(&self) -> String {
        self.checks
            .iter()
            .map(|c| format!("{}={:?}", c.id, c.status))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Relative slack for sampled inequalities.
pub const HYPOTHESIS_TOL: f64 = 1e-9;

/// Tracks the worst normalized violation; ties go to the smaller `|t|`, then
/// to positive `t`.
struct WorstViolation {
    best: Option<(f64, Witness)>,
    samples: usize,
}

impl WorstViolation {
    fn new() -> Self {
        WorstViolation { best: None, samples: 0 }
    }

    fn offer(&mut self, lhs: f64, rhs: f64, scale: f64, witness: Witness) {
        self.samples += 1;
        let excess = lhs - rhs;
        if !(excess > HYPOTHESIS_TOL * scale.max(1.0)) && !excess.is_nan() {
            return;
        }
        let score = if excess.is_nan() { f64::INFINITY } else { excess / scale.max(1.0) };
        let better = match &self.best {
            None => true,
            Some((s, w)) => {
                score > *s * (1.0 + 1e-12)
                    || ((score - *s).abs() <= 1e-12 * s.abs()
                        && (witness.t.abs() < w.t.abs() || (witness.t.abs() == w.t.abs() && witness.t > w.t)))
            }
        };
        if better {
            self.best = Some((score, witness));
        }
    }

    fn finish(self, id: &str) -> HypothesisCheck {
        let (status, witness) = match self.best {
            Some((_, w)) => (HypothesisStatus::Fail, Some(w)),
            None => (HypothesisStatus::Pass, None),
        };
        HypothesisCheck { id: id.to_string(), status, samples: self.samples, witness, note: None }
    }
}

/// Samples (H1)–(H5) on the node × t (and t × s for H3) product grid.
///
/// (H3) is checked in strict monotone form `(a(x,t) - a(x,s))(t - s) > 0`
/// for `t ≠ s`; (H4) is checked with `max(c2, 1)`.
pub fn verify_hypotheses(spec: &PotentialSpec, nl: &NonlinearitySpec, sampler: &TSampler) -> HypothesisReport {
    let coord = |i: usize| nl.coords.get(i).copied().unwrap_or(0.0);
    let witness = |i: usize, t: f64, s: Option<f64>, lhs: f64, rhs: f64| Witness { node: i, x: coord(i), t, s, lhs, rhs };
    let k = &spec.constants;

    let mut h1 = WorstViolation::new();
    for &i in &sampler.nodes {
        let a0 = spec.a(i, 0.0).abs();
        h1.offer(a0, 0.0, 1e-3, witness(i, 0.0, None, a0, 0.0));
    }

    let mut h2 = WorstViolation::new();
    let mut h4 = WorstViolation::new();
    let c2 = k.c2.max(1.0);
    for &i in &sampler.nodes {
        let p = spec.p.values[i];
        for &t in &sampler.t {
            let at = t.abs();
            let a = spec.a(i, t);
            let bound = k.c1 * (k.d[i] + at.powf(p - 1.0));
            h2.offer(a.abs(), bound, bound, witness(i, t, None, a.abs(), bound));
            let lower = c2 * at.powf(p);
            let upper = (a * t).min(p * spec.big_a(i, t));
            h4.offer(lower, upper, lower.abs().max(upper.abs()), witness(i, t, None, lower, upper));
        }
    }

    // strict monotonicity on a thinned t-grid
    let mut h3 = WorstViolation::new();
    let thin: Vec<f64> = sampler.t.iter().copied().step_by(2).collect();
    for &i in &sampler.nodes {
        let values: Vec<f64> = thin.iter().map(|&t| spec.a(i, t)).collect();
        for (ti, &t) in thin.iter().enumerate() {
            for (si, &s) in thin.iter().enumerate().skip(ti + 1) {
                let product = (values[ti] - values[si]) * (t - s);
                h3.samples += 1;
                if !(product > 0.0) {
                    let w = witness(i, t, Some(s), 0.0, product);
                    if h3.best.is_none() {
                        h3.best = Some((1.0, w));
                    }
                }
            }
        }
    }
    let mut h3 = h3.finish("H3");
    h3.note = Some("strict monotonicity (a(x,t)-a(x,s))(t-s) > 0 for t != s".into());

    let mut h4 = h4.finish("H4");
    if k.c2 < 1.0 {
        h4.note = Some(format!("fitted c2 = {} is below 1", k.c2));
        h4.status = HypothesisStatus::Fail;
    }

    let h5 = match &nl.growth {
        None => HypothesisCheck {
            id: "H5".into(),
            status: HypothesisStatus::Unverifiable,
            samples: 0,
            witness: None,
            note: Some("no growth data (xi, zeta, q) supplied".into()),
        },
        Some(g) => {
            if !(g.q.p_minus > 1.0 && g.q.p_plus < spec.p.p_minus) {
                let node = g.q.values.iter().position(|&q| q == g.q.p_plus).unwrap_or(0);
                HypothesisCheck {
                    id: "H5".into(),
                    status: HypothesisStatus::Fail,
                    samples: 0,
                    witness: Some(witness(node, 0.0, None, g.q.p_plus, spec.p.p_minus)),
                    note: Some(format!("need 1 < q- <= q+ < p-, got q+ = {} and p- = {}", g.q.p_plus, spec.p.p_minus)),
                }
            } else {
                let mut h5 = WorstViolation::new();
                for &i in &sampler.nodes {
                    let q = g.q.values[i];
                    for &t in &sampler.t {
                        let f = nl.f(i, t).abs();
                        let bound = g.xi[i] + g.zeta * t.abs().powf(q - 1.0);
                        h5.offer(f, bound, bound, witness(i, t, None, f, bound));
                    }
                }
                h5.finish("H5")
            }
        }
    };

    HypothesisReport { checks: vec![h1.finish("H1"), h2.finish("H2"), h3, h4, h5] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Domain, Grid};
    use crate::nonlinearity::ScalarLaw;

    fn setup(p: f64) -> (Grid, ExponentField) {
        let g = Grid::new(Domain::unit_interval(), 21).unwrap();
        let pf = ExponentField::constant(p, g.len(), 1).unwrap();
        (g, pf)
    }

    #[test]
    fn power_family_closed_forms() {
        let (_, p) = setup(2.0);
        let s = make_power_family(vec![1.0; 21], p).unwrap();
        assert_eq!(s.a(0, 1.7), 1.7);
        assert!((s.big_a(0, 3.0) - 4.5).abs() < 1e-15);
        assert_eq!(s.constants.c2, 1.0);
        assert_eq!(s.constants.c1, 1.0);
        assert_eq!(s.constants.c3, 0.5);
        assert!(s.constants.d.iter().all(|&d| d == 0.0));

        let (_, p3) = setup(3.0);
        let s = make_power_family(vec![2.0; 21], p3).unwrap();
        assert!((s.a(0, -1.0) + 2.0).abs() < 1e-15);
        assert!((s.big_a(0, -1.0) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(s.a(0, 0.0), 0.0);
        assert_eq!(antiderivative_a(&s, 3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn theta_must_be_positive() {
        let (_, p) = setup(2.0);
        let mut theta = vec![1.0; 21];
        theta[4] = 0.0;
        assert_eq!(make_power_family(theta, p).unwrap_err(), Error::NonPositiveTheta { node: 4, value: 0.0 });
    }

    #[test]
    fn perturbed_examples() {
        let (_, p2) = setup(2.0);
        let s = make_perturbed_family(vec![1.0; 21], p2.clone(), PerturbedVariant::Standard).unwrap();
        assert_eq!(s.a(0, 0.7), 0.7);
        let (_, p4) = setup(4.0);
        let s = make_perturbed_family(vec![1.0; 21], p4.clone(), PerturbedVariant::Standard).unwrap();
        assert_eq!(s.a(0, 1.0), 2.0);
        // oracle: ∫_0^1 (1+s²)s ds = 3/4
        assert!((antiderivative_a(&s, 0, 1.0).unwrap() - 0.75).abs() < 1e-12);
        let lit = make_perturbed_family(vec![1.0; 21], p4, PerturbedVariant::PaperLiteral).unwrap();
        assert_eq!(lit.a(0, 1.0), 4.0);
        assert_eq!(
            make_perturbed_family(vec![1.0; 21], p2, PerturbedVariant::PaperLiteral).unwrap_err(),
            Error::SingularExponent { node: 0 }
        );
    }

    #[test]
    fn built_in_families_are_odd_and_consistent() {
        let g = Grid::new(Domain::unit_interval(), 21).unwrap();
        let p = ExponentField::from_spec(&crate::profile::ProfileSpec::Affine { a: 2.0, b: 0.5 }, &g).unwrap();
        let fams = [
            make_power_family(vec![1.3; 21], p.clone()).unwrap(),
            make_perturbed_family(vec![0.8; 21], p.clone(), PerturbedVariant::Standard).unwrap(),
        ];
        for s in &fams {
            for i in [0, 7, 20] {
                for t in [0.01, 0.3, 1.0, 2.5, 7.0] {
                    assert_eq!(s.a(i, -t), -s.a(i, t));
                    let eps = 1e-5 * t.max(1.0);
                    let fd = (s.big_a(i, t + eps) - s.big_a(i, t - eps)) / (2.0 * eps);
                    assert!((fd - s.a(i, t)).abs() < 1e-6 * s.a(i, t).abs().max(1.0), "{:?} {i} {t}", s.family);
                    let fd2 = (s.a(i, t + eps) - s.a(i, t - eps)) / (2.0 * eps);
                    assert!((fd2 - s.da_dt(i, t)).abs() < 1e-5 * fd2.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn growth_fit_reproduces_on_finer_grid() {
        let (g, p4) = setup(4.0);
        let s = make_perturbed_family(vec![1.0; 21], p4, PerturbedVariant::Standard).unwrap();
        let k = &s.constants;
        assert_eq!(k.source, ConstantsSource::SampledFit);
        let fine = TSampler::new(g.len(), 10.0).refined();
        for &i in &fine.nodes {
            for &t in &fine.t {
                let at = t.abs();
                assert!(s.a(i, t).abs() <= k.c1 * (k.d[i] + at.powi(3)) + 1e-12);
                assert!(s.big_a(i, t).abs() <= k.c3 * (k.d[i] * at + at.powi(4)) + 1e-12);
                assert!(k.c2 * at.powi(4) <= (s.a(i, t) * t).min(4.0 * s.big_a(i, t)) + 1e-12);
            }
        }
        // The family satisfies (H4) with c2 = 1 exactly: the ratio tends to 1 from above.
        assert_eq!(k.c2, 1.0);
    }

    fn rational_nl(g: &Grid, p: &ExponentField) -> NonlinearitySpec {
        let q = ExponentField::constant(1.5, g.len(), 1).unwrap();
        NonlinearitySpec::new(ScalarLaw::Rational, g).with_growth(vec![2.0; g.len()], 1.0, q).unwrap();
        let _ = p;
        NonlinearitySpec::new(ScalarLaw::Rational, g)
            .with_growth(vec![2.0; g.len()], 1.0, ExponentField::constant(1.5, g.len(), 1).unwrap())
            .unwrap()
    }

    #[test]
    fn power_family_passes_all_hypotheses() {
        let (g, p) = setup(2.0);
        let s = make_power_family(vec![1.0; 21], p.clone()).unwrap();
        let report = verify_hypotheses(&s, &rational_nl(&g, &p), &TSampler::new(g.len(), 10.0));
        assert!(report.all_pass(), "{report:#?}");
    }

    #[test]
    fn negative_potential_fails_h4_at_unit_t() {
        let (g, p) = setup(2.0);
        let table = PiecewiseLinear::new(vec![-1e3, 1e3], vec![1e3, -1e3]).unwrap();
        let s = make_tabulated_family(vec![1.0; 21], p.clone(), table).unwrap();
        let report = verify_hypotheses(&s, &rational_nl(&g, &p), &TSampler::new(g.len(), 10.0));
        let h4 = report.get("H4").unwrap();
        assert_eq!(h4.status, HypothesisStatus::Fail);
        let w = h4.witness.unwrap();
        assert_eq!(w.t, 1.0);
        assert!((w.rhs + 1.0).abs() < 1e-12);
        assert_eq!(report.get("H1").unwrap().status, HypothesisStatus::Pass);
    }

    #[test]
    fn shifted_potential_fails_h1() {
        let (g, p) = setup(2.0);
        let table = PiecewiseLinear::new(vec![-1e3, 1e3], vec![-999.0, 1001.0]).unwrap();
        let s = make_tabulated_family(vec![1.0; 21], p.clone(), table).unwrap();
        let report = verify_hypotheses(&s, &rational_nl(&g, &p), &TSampler::new(g.len(), 10.0));
        let h1 = report.get("H1").unwrap();
        assert_eq!(h1.status, HypothesisStatus::Fail);
        assert!((h1.witness.unwrap().lhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn h5_needs_growth_data_and_subcritical_q() {
        let (g, p) = setup(2.0);
        let s = make_power_family(vec![1.0; 21], p.clone()).unwrap();
        let bare = NonlinearitySpec::new(ScalarLaw::Rational, &g);
        let report = verify_hypotheses(&s, &bare, &TSampler::new(g.len(), 10.0));
        assert_eq!(report.get("H5").unwrap().status, HypothesisStatus::Unverifiable);
        let q = ExponentField::constant(2.5, g.len(), 1).unwrap();
        let nl = NonlinearitySpec::new(ScalarLaw::Rational, &g).with_growth(vec![2.0; 21], 1.0, q).unwrap();
        let report = verify_hypotheses(&s, &nl, &TSampler::new(g.len(), 10.0));
        assert_eq!(report.get("H5").unwrap().status, HypothesisStatus::Fail);
    }

    #[test]
    fn coercivity_lower_bound_on_samples() {
        let g = Grid::new(Domain::unit_interval(), 21).unwrap();
        let p = ExponentField::from_spec(&crate::profile::ProfileSpec::Affine { a: 2.0, b: 1.0 }, &g).unwrap();
        let s = make_power_family(vec![1.0; 21], p).unwrap();
        let sampler = TSampler::new(g.len(), 10.0);
        for &i in &sampler.nodes {
            let pi = s.p.values[i];
            for &t in &sampler.t {
                assert!(s.big_a(i, t) >= s.constants.c2 / pi * t.abs().powf(pi) * (1.0 - 1e-14));
                for &u in sampler.t.iter().step_by(7) {
                    assert!((s.a(i, t) - s.a(i, u)) * (t - u) >= 0.0);
                }
            }
        }
    }
}
