//! One-dimensional coefficient profiles sampled onto grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;

/// Piecewise-linear interpolant through `(x_k, y_k)`, held constant
/// beyond the end points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseLinear {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PiecewiseLinear {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "table needs matching abscissae and values with at least 2 entries (got {} and {})",
                xs.len(),
                ys.len()
            )));
        }
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("table contains non-finite entries".into()));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter("table abscissae must be strictly increasing".into()));
        }
        Ok(PiecewiseLinear { xs, ys })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    fn segment(&self, x: f64) -> usize {
        match self.xs.partition_point(|&v| v <= x) {
            0 => 0,
            k => (k - 1).min(self.xs.len() - 2),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let last = self.xs.len() - 1;
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[last] {
            return self.ys[last];
        }
        let k = self.segment(x);
        let s = (x - self.xs[k]) / (self.xs[k + 1] - self.xs[k]);
        self.ys[k] + s * (self.ys[k + 1] - self.ys[k])
    }

    /// Slope at `x` (zero outside the table).
    pub fn slope(&self, x: f64) -> f64 {
        let last = self.xs.len() - 1;
        if x < self.xs[0] || x > self.xs[last] {
            return 0.0;
        }
        let k = self.segment(x);
        (self.ys[k + 1] - self.ys[k]) / (self.xs[k + 1] - self.xs[k])
    }

    /// Exact `∫_0^t` of the interpolant.
    pub fn integral_from_zero(&self, t: f64) -> f64 {
        self.primitive(t) - self.primitive(0.0)
    }

    /// A primitive of the interpolant (`∫_{x_0}^t`).
    fn primitive(&self, t: f64) -> f64 {
        let last = self.xs.len() - 1;
        if t <= self.xs[0] {
            return self.ys[0] * (t - self.xs[0]);
        }
        let mut acc = 0.0;
        for k in 0..last {
            let (x0, x1) = (self.xs[k], self.xs[k + 1]);
            if t <= x1 {
                let y = self.eval(t);
                return acc + 0.5 * (self.ys[k] + y) * (t - x0);
            }
            acc += 0.5 * (self.ys[k] + self.ys[k + 1]) * (x1 - x0);
        }
        acc + self.ys[last] * (t - self.xs[last])
    }

    pub fn max_abs(&self) -> f64 {
        self.ys.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// A coefficient that depends on position only through the profile
/// coordinate (`x` on intervals and rectangles, `r` on balls).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSpec {
    Constant { value: f64 },
    /// `a + b·x`.
    Affine { a: f64, b: f64 },
    Table {
        x: Vec<f64>,
        #[serde(alias = "p")]
        values: Vec<f64>,
    },
}

impl ProfileSpec {
    pub fn sample(&self, grid: &Grid) -> Result<Vec<f64>> {
        let at = |i: usize| grid.profile_coordinate(i);
        let values = match self {
            ProfileSpec::Constant { value } => vec![*value; grid.len()],
            ProfileSpec::Affine { a, b } => (0..grid.len()).map(|i| a + b * at(i)).collect(),
            ProfileSpec::Table { x, values } => {
                let table = PiecewiseLinear::new(x.clone(), values.clone())?;
                (0..grid.len()).map(|i| table.eval(at(i))).collect()
            }
        };
        Ok(values)
    }
}

/// Either a bare number (a constant profile) or a full [`ProfileSpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Profile {
    Number(f64),
    Spec(ProfileSpec),
}

impl Profile {
    pub fn sample(&self, grid: &Grid) -> Result<Vec<f64>> {
        match self {
            Profile::Number(v) => ProfileSpec::Constant { value: *v }.sample(grid),
            Profile::Spec(s) => s.sample(grid),
        }
    }
}

impl From<f64> for Profile {
    fn from(v: f64) -> Self {
        Profile::Number(v)
    }
}
