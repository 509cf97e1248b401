//! Right-hand sides `f(x, t) = α(x) g(t)` and their primitives `F(x, t)`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use statrs::function::erf::erf;

use crate::error::{Error, Result};
use crate::exponent::ExponentField;
use crate::grid::Grid;
use crate::profile::PiecewiseLinear;
use crate::quadrature;

type LawFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A user-supplied law `g(x, t)` with an optional primitive in `t`.
#[derive(Clone)]
pub struct CustomLaw {
    pub name: String,
    g: LawFn,
    primitive: Option<LawFn>,
}

impl CustomLaw {
    pub fn new(name: impl Into<String>, g: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        CustomLaw { name: name.into(), g: Arc::new(g), primitive: None }
    }

    pub fn with_primitive(mut self, primitive: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.primitive = Some(Arc::new(primitive));
        self
    }
}

impl fmt::Debug for CustomLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomLaw").field("name", &self.name).field("closed_primitive", &self.primitive.is_some()).finish()
    }
}

/// The `t`-dependence of the right-hand side.
#[derive(Debug, Clone)]
pub enum ScalarLaw {
    Constant(f64),
    /// `1/(1+t²) + 1`.
    Rational,
    /// `e^{-|t|} + 1`.
    ExpDecay,
    /// `base + amplitude · exp(-((t - center)/width)²)`.
    Bump { base: f64, amplitude: f64, center: f64, width: f64 },
    /// Piecewise-linear `g`, constant beyond the table.
    Table(PiecewiseLinear),
    Custom(CustomLaw),
}

impl ScalarLaw {
    pub fn eval(&self, x: f64, t: f64) -> f64 {
        match self {
            ScalarLaw::Constant(c) => *c,
            ScalarLaw::Rational => 1.0 / (1.0 + t * t) + 1.0,
            ScalarLaw::ExpDecay => (-t.abs()).exp() + 1.0,
            ScalarLaw::Bump { base, amplitude, center, width } => {
                let z = (t - center) / width;
                base + amplitude * (-z * z).exp()
            }
            ScalarLaw::Table(table) => table.eval(t),
            ScalarLaw::Custom(law) => (law.g)(x, t),
        }
    }

    /// `∫_0^t g(x, s) ds`.
    pub fn primitive(&self, x: f64, t: f64) -> f64 {
        match self {
            ScalarLaw::Constant(c) => c * t,
            ScalarLaw::Rational => t.atan() + t,
            ScalarLaw::ExpDecay => t.signum() * (1.0 - (-t.abs()).exp()) + t,
            ScalarLaw::Bump { base, amplitude, center, width } => {
                base * t + amplitude * width * PI.sqrt() / 2.0 * (erf((t - center) / width) - erf(-center / width))
            }
            ScalarLaw::Table(table) => table.integral_from_zero(t),
            ScalarLaw::Custom(law) => match &law.primitive {
                Some(big) => big(x, t),
                None => quadrature::adaptive_simpson(|s| (law.g)(x, s), 0.0, t, 1e-12).value,
            },
        }
    }

    /// `∂g/∂t`.
    pub fn slope(&self, x: f64, t: f64) -> f64 {
        match self {
            ScalarLaw::Constant(_) => 0.0,
            ScalarLaw::Rational => -2.0 * t / (1.0 + t * t).powi(2),
            ScalarLaw::ExpDecay => {
                if t == 0.0 {
                    0.0
                } else {
                    -t.signum() * (-t.abs()).exp()
                }
            }
            ScalarLaw::Bump { amplitude, center, width, .. } => {
                let z = (t - center) / width;
                -2.0 * amplitude * z / width * (-z * z).exp()
            }
            ScalarLaw::Table(table) => table.slope(t),
            ScalarLaw::Custom(law) => {
                let eps = 1e-6 * t.abs().max(1.0);
                ((law.g)(x, t + eps) - (law.g)(x, t - eps)) / (2.0 * eps)
            }
        }
    }

    /// `sup_t |g|` for the bounded built-in laws.
    pub fn bound(&self) -> Option<f64> {
        match self {
            ScalarLaw::Constant(c) => Some(c.abs()),
            ScalarLaw::Rational | ScalarLaw::ExpDecay => Some(2.0),
            ScalarLaw::Bump { base, amplitude, .. } => Some(base.abs() + amplitude.abs()),
            ScalarLaw::Table(table) => Some(table.max_abs()),
            ScalarLaw::Custom(_) => None,
        }
    }
}

/// Growth data of (H5): `|f(x,t)| ≤ ξ(x) + ζ |t|^{q(x)-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Growth {
    pub xi: Vec<f64>,
    pub zeta: f64,
    pub q: ExponentField,
}

#[derive(Debug, Clone)]
pub struct NonlinearitySpec {
    pub law: ScalarLaw,
    /// `α(x)` at each node.
    pub weight: Vec<f64>,
    /// Profile coordinate of each node (passed to custom laws).
    pub coords: Vec<f64>,
    pub growth: Option<Growth>,
}

impl NonlinearitySpec {
    pub fn new(law: ScalarLaw, grid: &Grid) -> Self {
        NonlinearitySpec {
            law,
            weight: vec![1.0; grid.len()],
            coords: (0..grid.len()).map(|i| grid.profile_coordinate(i)).collect(),
            growth: None,
        }
    }

    pub fn with_weight(mut self, weight: Vec<f64>) -> Result<Self> {
        if weight.len() != self.weight.len() {
            return Err(Error::GridMismatch { expected: self.weight.len(), got: weight.len() });
        }
        self.weight = weight;
        Ok(self)
    }

    /// Attaches (H5) data after checking `1 < q⁻ ≤ q⁺` and `ζ > 0`.
    pub fn with_growth(mut self, xi: Vec<f64>, zeta: f64, q: ExponentField) -> Result<Self> {
        if xi.len() != self.weight.len() {
            return Err(Error::GridMismatch { expected: self.weight.len(), got: xi.len() });
        }
        if q.len() != self.weight.len() {
            return Err(Error::GridMismatch { expected: self.weight.len(), got: q.len() });
        }
        if !(zeta > 0.0 && zeta.is_finite()) {
            return Err(Error::InvalidParameter(format!("zeta must be positive, got {zeta}")));
        }
        if xi.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidParameter("xi must be finite and nonnegative".into()));
        }
        self.growth = Some(Growth { xi, zeta, q });
        Ok(self)
    }

    /// Default (H5) data for bounded laws: `ξ = α·sup|g|`, `ζ = 1`,
    /// `q ≡ (1 + p⁻)/2`.
    pub fn with_default_growth(self, p: &ExponentField) -> Result<Self> {
        let bound = self
            .law
            .bound()
            .ok_or_else(|| Error::InvalidParameter("custom law needs explicit growth data".into()))?;
        let xi = self.weight.iter().map(|w| w.abs() * bound).collect();
        let q = ExponentField::constant(0.5 * (1.0 + p.p_minus), self.weight.len(), p.dim)?;
        self.with_growth(xi, 1.0, q)
    }

    pub fn len(&self) -> usize {
        self.weight.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weight.is_empty()
    }

    pub fn f(&self, node: usize, t: f64) -> f64 {
        self.weight[node] * self.law.eval(self.coords[node], t)
    }

    /// `F(x, t) = ∫_0^t f(x, s) ds`.
    pub fn big_f(&self, node: usize, t: f64) -> f64 {
        self.weight[node] * self.law.primitive(self.coords[node], t)
    }

    pub fn df_dt(&self, node: usize, t: f64) -> f64 {
        self.weight[node] * self.law.slope(self.coords[node], t)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.law, ScalarLaw::Constant(c) if c == 0.0) || self.weight.iter().all(|w| *w == 0.0)
    }
}
