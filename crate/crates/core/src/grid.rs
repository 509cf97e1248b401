//! Structured grids, the Navier-boundary discrete Laplacian and quadrature.
//!
//! Every grid carries quadrature weights `V_i` for which `V ⊙ Δ_h` is
//! symmetric on the interior nodes. The discrete Laplacian is forced to
//! zero on boundary nodes, which is how `u = Δu = 0` on the boundary is
//! encoded. For the radial ball the weights are the volumes of the
//! spherical shells `[r_{i-1/2}, r_{i+1/2}]` and the Laplacian is the
//! finite-volume form of `r^{1-N}(r^{N-1}u')'`.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Volume of the unit ball in `R^n`, `π^{n/2} / ((n/2) Γ(n/2))`.
pub fn unit_ball_volume(n: usize) -> f64 {
    assert!(n >= 1, "dimension must be positive");
    let half = n as f64 / 2.0;
    PI.powf(half) / (half * gamma_half_integer(n))
}

/// `Γ(n/2)` for a positive integer `n`, by the recursion `Γ(s+1) = sΓ(s)`.
fn gamma_half_integer(n: usize) -> f64 {
    let (mut s, mut value) = if n.is_multiple_of(2) { (1.0, 1.0) } else { (0.5, PI.sqrt()) };
    let target = n as f64 / 2.0;
    while s < target {
        value *= s;
        s += 1.0;
    }
    value
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Domain {
    /// `[0, length]`.
    Interval {
        #[serde(default = "one")]
        length: f64,
    },
    /// `[0, a] × [0, b]`.
    Rectangle { a: f64, b: f64 },
    /// Ball of radius `R` in `R^N`, reduced to its radial profile.
    BallRadial {
        #[serde(rename = "N")]
        dim: usize,
        #[serde(rename = "R")]
        radius: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl Domain {
    pub fn unit_interval() -> Self {
        Domain::Interval { length: 1.0 }
    }

    /// Spatial dimension `N`.
    pub fn dim(&self) -> usize {
        match self {
            Domain::Interval { .. } => 1,
            Domain::Rectangle { .. } => 2,
            Domain::BallRadial { dim, .. } => *dim,
        }
    }

    pub fn measure(&self) -> f64 {
        match *self {
            Domain::Interval { length } => length,
            Domain::Rectangle { a, b } => a * b,
            Domain::BallRadial { dim, radius } => unit_ball_volume(dim) * radius.powi(dim as i32),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Domain::Interval { length } => length.is_finite() && length > 0.0,
            Domain::Rectangle { a, b } => a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0,
            Domain::BallRadial { dim, radius } => dim >= 1 && radius.is_finite() && radius > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedDomain(format!("{self:?}")))
        }
    }
}

/// Boundary-condition tag of a [`GridFunction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCondition {
    Navier,
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub domain: Domain,
    /// Nodes per axis.
    pub n: usize,
    /// Node coordinates; 1D and radial grids use only the first slot
    /// (the radial slot holds `r`).
    pub coords: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
    /// Spacing along each axis (`[h, h]` for 1D grids).
    pub h: [f64; 2],
    boundary: Vec<bool>,
    /// Radial only: `N ω_N r^{N-1}` at the face `r_{i+1/2}`.
    faces: Vec<f64>,
}

impl Grid {
    pub fn new(domain: Domain, n: usize) -> Result<Self> {
        domain.validate()?;
        if n < 5 {
            return Err(Error::GridTooSmall(n));
        }
        let grid = match domain {
            Domain::Interval { length } => {
                let h = length / (n - 1) as f64;
                let coords = (0..n).map(|i| [i as f64 * h, 0.0]).collect();
                let mut weights = vec![h; n];
                weights[0] = h / 2.0;
                weights[n - 1] = h / 2.0;
                let mut boundary = vec![false; n];
                boundary[0] = true;
                boundary[n - 1] = true;
                Grid { domain, n, coords, weights, h: [h, h], boundary, faces: Vec::new() }
            }
            Domain::Rectangle { a, b } => {
                let hx = a / (n - 1) as f64;
                let hy = b / (n - 1) as f64;
                let mut coords = Vec::with_capacity(n * n);
                let mut weights = Vec::with_capacity(n * n);
                let mut boundary = Vec::with_capacity(n * n);
                for j in 0..n {
                    for i in 0..n {
                        coords.push([i as f64 * hx, j as f64 * hy]);
                        let edge_x = i == 0 || i == n - 1;
                        let edge_y = j == 0 || j == n - 1;
                        let wx = if edge_x { hx / 2.0 } else { hx };
                        let wy = if edge_y { hy / 2.0 } else { hy };
                        weights.push(wx * wy);
                        boundary.push(edge_x || edge_y);
                    }
                }
                Grid { domain, n, coords, weights, h: [hx, hy], boundary, faces: Vec::new() }
            }
            Domain::BallRadial { dim, radius } => {
                let dr = radius / (n - 1) as f64;
                let omega = unit_ball_volume(dim);
                let coords = (0..n).map(|i| [i as f64 * dr, 0.0]).collect();
                let shell = |r: f64| omega * r.powi(dim as i32);
                let weights = (0..n)
                    .map(|i| {
                        let outer = ((i as f64 + 0.5) * dr).min(radius);
                        let inner = if i == 0 { 0.0 } else { (i as f64 - 0.5) * dr };
                        shell(outer) - shell(inner)
                    })
                    .collect();
                let faces = (0..n)
                    .map(|i| dim as f64 * omega * ((i as f64 + 0.5) * dr).powi(dim as i32 - 1))
                    .collect();
                let mut boundary = vec![false; n];
                boundary[n - 1] = true;
                Grid { domain, n, coords, weights, h: [dr, dr], boundary, faces }
            }
        };
        Ok(grid)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn spacing(&self) -> f64 {
        self.h[0]
    }

    pub fn is_boundary(&self, i: usize) -> bool {
        self.boundary[i]
    }

    pub fn interior(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| !self.boundary[i])
    }

    /// Coordinate used by one-dimensional coefficient profiles
    /// (`x` on intervals and rectangles, `r` on radial grids).
    pub fn profile_coordinate(&self, i: usize) -> f64 {
        self.coords[i][0]
    }

    /// Euclidean distance from node `i` to `center`. For radial grids the
    /// center is the origin and the distance is `r`.
    pub fn distance(&self, i: usize, center: [f64; 2]) -> f64 {
        match self.domain {
            Domain::Interval { .. } => (self.coords[i][0] - center[0]).abs(),
            Domain::Rectangle { .. } => {
                let dx = self.coords[i][0] - center[0];
                let dy = self.coords[i][1] - center[1];
                dx.hypot(dy)
            }
            Domain::BallRadial { .. } => self.coords[i][0],
        }
    }

    /// Quadrature `Σ V_i g_i`.
    pub fn integrate(&self, g: &[f64]) -> Result<f64> {
        self.check_len(g.len())?;
        Ok(self.weights.iter().zip(g).map(|(w, v)| w * v).sum())
    }

    pub(crate) fn check_len(&self, got: usize) -> Result<()> {
        if got == self.len() {
            Ok(())
        } else {
            Err(Error::GridMismatch { expected: self.len(), got })
        }
    }

    /// Second-order discrete Laplacian with the boundary values forced to 0.
    /// Boundary entries of `u` are read as given (they are zero for Navier data).
    pub fn laplacian(&self, u: &[f64]) -> Vec<f64> {
        debug_assert_eq!(u.len(), self.len());
        let n = self.n;
        let mut out = vec![0.0; self.len()];
        match self.domain {
            Domain::Interval { .. } => {
                let inv = 1.0 / (self.h[0] * self.h[0]);
                for i in 1..n - 1 {
                    out[i] = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv;
                }
            }
            Domain::Rectangle { .. } => {
                let ix = 1.0 / (self.h[0] * self.h[0]);
                let iy = 1.0 / (self.h[1] * self.h[1]);
                for j in 1..n - 1 {
                    for i in 1..n - 1 {
                        let k = j * n + i;
                        out[k] = (u[k - 1] - 2.0 * u[k] + u[k + 1]) * ix
                            + (u[k - n] - 2.0 * u[k] + u[k + n]) * iy;
                    }
                }
            }
            Domain::BallRadial { .. } => {
                let dr = self.h[0];
                for i in 0..n - 1 {
                    let outward = self.faces[i] * (u[i + 1] - u[i]);
                    let inward = if i == 0 { 0.0 } else { self.faces[i - 1] * (u[i] - u[i - 1]) };
                    out[i] = (outward - inward) / (dr * self.weights[i]);
                }
            }
        }
        out
    }

    /// Solves `Δ_h y = b` on the interior nodes with `y = 0` on the boundary.
    /// Boundary entries of `b` are ignored.
    pub fn solve_dirichlet(&self, b: &[f64]) -> Vec<f64> {
        debug_assert_eq!(b.len(), self.len());
        match self.domain {
            Domain::Interval { .. } => {
                let n = self.n;
                let inv = 1.0 / (self.h[0] * self.h[0]);
                let m = n - 2;
                let lower = vec![inv; m];
                let diag = vec![-2.0 * inv; m];
                let upper = vec![inv; m];
                let x = thomas(&lower, &diag, &upper, &b[1..n - 1]);
                let mut y = vec![0.0; n];
                y[1..n - 1].copy_from_slice(&x);
                y
            }
            Domain::BallRadial { .. } => {
                let n = self.n;
                let dr = self.h[0];
                let m = n - 1;
                let mut lower = vec![0.0; m];
                let mut diag = vec![0.0; m];
                let mut upper = vec![0.0; m];
                for i in 0..m {
                    let scale = dr * self.weights[i];
                    let out_face = self.faces[i] / scale;
                    let in_face = if i == 0 { 0.0 } else { self.faces[i - 1] / scale };
                    lower[i] = in_face;
                    upper[i] = out_face;
                    diag[i] = -(out_face + in_face);
                }
                let x = thomas(&lower, &diag, &upper, &b[..m]);
                let mut y = vec![0.0; n];
                y[..m].copy_from_slice(&x);
                y
            }
            Domain::Rectangle { .. } => self.solve_dirichlet_cg(b),
        }
    }

    /// Conjugate gradients on `-Δ_h`, which is symmetric positive definite on
    /// the interior of a rectangle (uniform interior weights).
    fn solve_dirichlet_cg(&self, b: &[f64]) -> Vec<f64> {
        let len = self.len();
        let mask = |v: &mut Vec<f64>| {
            for (i, x) in v.iter_mut().enumerate() {
                if self.boundary[i] {
                    *x = 0.0;
                }
            }
        };
        let mut rhs: Vec<f64> = b.iter().map(|v| -v).collect();
        mask(&mut rhs);
        let apply = |x: &[f64]| -> Vec<f64> {
            let mut y = self.laplacian(x);
            y.iter_mut().for_each(|v| *v = -*v);
            y
        };
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let mut x = vec![0.0; len];
        let mut r = rhs.clone();
        let mut p = r.clone();
        let mut rr = dot(&r, &r);
        let target = 1e-28 * rr.max(f64::MIN_POSITIVE);
        for _ in 0..10 * len {
            if rr <= target {
                break;
            }
            let ap = apply(&p);
            let alpha = rr / dot(&p, &ap);
            for i in 0..len {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            let rr_new = dot(&r, &r);
            let beta = rr_new / rr;
            rr = rr_new;
            for i in 0..len {
                p[i] = r[i] + beta * p[i];
            }
        }
        mask(&mut x);
        x
    }

    /// Smooth random field vanishing on the boundary: a sine series on
    /// intervals and rectangles, a cosine series `cos((k-1/2)πr/R)` on balls.
    /// Mode `k` carries a uniform coefficient in `[-1/k, 1/k]`.
    pub fn random_smooth_field<R: Rng + ?Sized>(&self, rng: &mut R, modes: usize) -> Vec<f64> {
        let mut values = vec![0.0; self.len()];
        match self.domain {
            Domain::Interval { length } => {
                for k in 1..=modes {
                    let c = rng.random_range(-1.0..=1.0) / k as f64;
                    for (v, x) in values.iter_mut().zip(&self.coords) {
                        *v += c * (k as f64 * PI * x[0] / length).sin();
                    }
                }
            }
            Domain::Rectangle { a, b } => {
                for k in 1..=modes {
                    for l in 1..=modes {
                        let c = rng.random_range(-1.0..=1.0) / (k * l) as f64;
                        for (v, x) in values.iter_mut().zip(&self.coords) {
                            *v += c
                                * (k as f64 * PI * x[0] / a).sin()
                                * (l as f64 * PI * x[1] / b).sin();
                        }
                    }
                }
            }
            Domain::BallRadial { radius, .. } => {
                for k in 1..=modes {
                    let c = rng.random_range(-1.0..=1.0) / k as f64;
                    for (v, x) in values.iter_mut().zip(&self.coords) {
                        *v += c * ((k as f64 - 0.5) * PI * x[0] / radius).cos();
                    }
                }
            }
        }
        for (i, v) in values.iter_mut().enumerate() {
            if self.boundary[i] {
                *v = 0.0;
            }
        }
        values
    }
}

/// Thomas algorithm; `lower[0]` and `upper[m-1]` are ignored.
fn thomas(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Vec<f64> {
    let m = diag.len();
    let mut c = vec![0.0; m];
    let mut d = vec![0.0; m];
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..m {
        let denom = diag[i] - lower[i] * c[i - 1];
        c[i] = if i + 1 < m { upper[i] / denom } else { 0.0 };
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / denom;
    }
    let mut x = vec![0.0; m];
    x[m - 1] = d[m - 1];
    for i in (0..m - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// Nodal values of a scalar field on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub grid: Arc<Grid>,
    pub values: Vec<f64>,
    pub bc: BoundaryCondition,
}

impl GridFunction {
    pub fn new(grid: Arc<Grid>, values: Vec<f64>, bc: BoundaryCondition) -> Result<Self> {
        grid.check_len(values.len())?;
        if let Some((node, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { node, value });
        }
        let mut f = GridFunction { grid, values, bc };
        if bc == BoundaryCondition::Navier {
            let scale = 1.0 + f.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for i in 0..f.values.len() {
                if f.grid.is_boundary(i) {
                    if f.values[i].abs() > 1e-10 * scale {
                        return Err(Error::InvalidParameter(format!(
                            "Navier field has nonzero boundary value {} at node {i}",
                            f.values[i]
                        )));
                    }
                    f.values[i] = 0.0;
                }
            }
        }
        Ok(f)
    }

    /// Navier field; boundary values must vanish up to roundoff and are set to 0.
    pub fn navier(grid: Arc<Grid>, values: Vec<f64>) -> Result<Self> {
        Self::new(grid, values, BoundaryCondition::Navier)
    }

    pub fn zeros(grid: Arc<Grid>) -> Self {
        let values = vec![0.0; grid.len()];
        GridFunction { grid, values, bc: BoundaryCondition::Navier }
    }

    /// Samples `f(coords)`; the boundary is zeroed for Navier fields.
    pub fn from_fn(grid: Arc<Grid>, bc: BoundaryCondition, f: impl Fn([f64; 2]) -> f64) -> Self {
        let mut values: Vec<f64> = grid.coords.iter().map(|&c| f(c)).collect();
        if bc == BoundaryCondition::Navier {
            for (i, v) in values.iter_mut().enumerate() {
                if grid.is_boundary(i) {
                    *v = 0.0;
                }
            }
        }
        GridFunction { grid, values, bc }
    }

    pub fn scaled(&self, c: f64) -> Self {
        GridFunction { grid: self.grid.clone(), values: self.values.iter().map(|v| c * v).collect(), bc: self.bc }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Discrete Laplacian of `u` as a grid function (boundary values are 0).
pub fn laplacian(u: &GridFunction) -> GridFunction {
    GridFunction { grid: u.grid.clone(), values: u.grid.laplacian(&u.values), bc: BoundaryCondition::None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval(n: usize) -> Arc<Grid> {
        Arc::new(Grid::new(Domain::unit_interval(), n).unwrap())
    }

    #[test]
    fn ball_volumes() {
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-15);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn weights_sum_to_measure() {
        let g = interval(11);
        assert!((g.spacing() - 0.1).abs() < 1e-15);
        assert!((g.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let r = Grid::new(Domain::Rectangle { a: 2.0, b: 1.0 }, 11).unwrap();
        assert!((r.weights.iter().sum::<f64>() - 2.0).abs() < 1e-12);
        let b = Grid::new(Domain::BallRadial { dim: 2, radius: 1.0 }, 101).unwrap();
        assert!((b.weights.iter().sum::<f64>() - PI).abs() < 1e-6);
        for dim in 1..=5 {
            let b = Grid::new(Domain::BallRadial { dim, radius: 1.3 }, 33).unwrap();
            let total: f64 = b.weights.iter().sum();
            assert!((total - b.domain.measure()).abs() < 1e-12 * total, "dim {dim}");
        }
    }

    #[test]
    fn rejects_small_grids_and_bad_domains() {
        assert_eq!(Grid::new(Domain::unit_interval(), 4), Err(Error::GridTooSmall(4)));
        assert!(matches!(
            Grid::new(Domain::Rectangle { a: -1.0, b: 1.0 }, 11),
            Err(Error::UnsupportedDomain(_))
        ));
    }

    #[test]
    fn integrate_linear_and_exponential() {
        let g = interval(11);
        let ones = vec![1.0; 11];
        assert!((g.integrate(&ones).unwrap() - 1.0).abs() < 1e-14);
        let x: Vec<f64> = g.coords.iter().map(|c| c[0]).collect();
        assert!((g.integrate(&x).unwrap() - 0.5).abs() < 1e-12);
        let mut prev = f64::INFINITY;
        for n in [11, 21, 41] {
            let g = interval(n);
            let e: Vec<f64> = g.coords.iter().map(|c| c[0].exp()).collect();
            let err = (g.integrate(&e).unwrap() - (1f64.exp() - 1.0)).abs();
            assert!(err < 0.02 * g.spacing().powi(2) * 10.0);
            assert!(err < prev / 3.5);
            prev = err;
        }
        assert!(matches!(g.integrate(&[1.0; 3]), Err(Error::GridMismatch { expected: 11, got: 3 })));
    }

    #[test]
    fn laplacian_is_exact_on_quadratics() {
        let g = interval(21);
        let u = GridFunction::from_fn(g.clone(), BoundaryCondition::Navier, |c| c[0] * (1.0 - c[0]));
        let lap = laplacian(&u);
        for i in g.interior() {
            assert!((lap.values[i] + 2.0).abs() < 1e-9);
        }
        assert_eq!(lap.values[0], 0.0);
        assert_eq!(lap.values[20], 0.0);

        let r = Arc::new(Grid::new(Domain::Rectangle { a: 2.0, b: 1.0 }, 17).unwrap());
        let u = r.coords.iter().map(|c| c[0] * c[0] + 3.0 * c[1] * c[1] - c[0] * c[1]).collect::<Vec<_>>();
        let lap = r.laplacian(&u);
        for i in r.interior() {
            assert!((lap[i] - 8.0).abs() < 1e-9);
        }

        for dim in 1..=4 {
            let b = Grid::new(Domain::BallRadial { dim, radius: 1.0 }, 25).unwrap();
            let u: Vec<f64> = b.coords.iter().map(|c| 1.0 - c[0] * c[0]).collect();
            let lap = b.laplacian(&u);
            for i in b.interior() {
                assert!((lap[i] + 2.0 * dim as f64).abs() < 1e-9, "dim {dim} node {i}: {}", lap[i]);
            }
        }
    }

    #[test]
    fn laplacian_of_sine_is_second_order() {
        let mut errs = Vec::new();
        for n in [33, 65, 129] {
            let g = interval(n);
            let u: Vec<f64> = g.coords.iter().map(|c| (PI * c[0]).sin()).collect();
            let lap = g.laplacian(&u);
            let err = g
                .interior()
                .map(|i| (lap[i] + PI * PI * u[i]).abs())
                .fold(0.0, f64::max);
            assert!(err <= PI.powi(4) / 12.0 * g.spacing().powi(2) * 1.01);
            errs.push(err);
        }
        assert!(errs[0] / errs[1] > 3.9 && errs[1] / errs[2] > 3.9);
    }

    #[test]
    fn zero_field_has_zero_laplacian() {
        let g = interval(9);
        assert!(g.laplacian(&[0.0; 9]).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn discrete_integration_by_parts() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let grids = [
            Grid::new(Domain::unit_interval(), 41).unwrap(),
            Grid::new(Domain::Rectangle { a: 2.0, b: 1.0 }, 17).unwrap(),
            Grid::new(Domain::BallRadial { dim: 3, radius: 1.0 }, 41).unwrap(),
        ];
        for g in &grids {
            for _ in 0..5 {
                let u = g.random_smooth_field(&mut rng, 5);
                let v = g.random_smooth_field(&mut rng, 5);
                let lu = g.laplacian(&u);
                let lv = g.laplacian(&v);
                let a: Vec<f64> = lu.iter().zip(&v).map(|(x, y)| x * y).collect();
                let b: Vec<f64> = u.iter().zip(&lv).map(|(x, y)| x * y).collect();
                let diff = g.integrate(&a).unwrap() - g.integrate(&b).unwrap();
                assert!(diff.abs() < 1e-10, "{:?}: {diff}", g.domain);
            }
        }
    }

    #[test]
    fn dirichlet_solve_inverts_laplacian() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let grids = [
            Grid::new(Domain::unit_interval(), 33).unwrap(),
            Grid::new(Domain::Rectangle { a: 1.0, b: 1.5 }, 15).unwrap(),
            Grid::new(Domain::BallRadial { dim: 2, radius: 1.0 }, 33).unwrap(),
        ];
        for g in &grids {
            let u = g.random_smooth_field(&mut rng, 4);
            let back = g.solve_dirichlet(&g.laplacian(&u));
            for (a, b) in u.iter().zip(&back) {
                assert!((a - b).abs() < 1e-9, "{:?}", g.domain);
            }
        }
    }

    #[test]
    fn navier_constructor_checks_boundary() {
        let g = interval(11);
        assert!(GridFunction::navier(g.clone(), vec![1.0; 11]).is_err());
        let mut v = vec![0.5; 11];
        v[0] = 1e-17;
        v[10] = 0.0;
        let f = GridFunction::navier(g.clone(), v).unwrap();
        assert_eq!(f.values[0], 0.0);
        assert!(matches!(
            GridFunction::navier(g, vec![f64::NAN; 11]),
            Err(Error::NonFinite { node: 0, .. })
        ));
    }
}
