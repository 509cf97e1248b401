//! Adaptive Simpson quadrature for one-dimensional antiderivatives.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 48;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub converged: bool,
}

/// `∫_a^b f` to relative tolerance `rel_tol` (absolute floor `1e-300`).
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> Quadrature {
    if a == b {
        return Quadrature { value: 0.0, converged: true };
    }
    if b < a {
        let q = adaptive_simpson(f, b, a, rel_tol);
        return Quadrature { value: -q.value, converged: q.converged };
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // coarse magnitude estimate so the relative tolerance has a scale
    let scale = whole.abs().max(((b - a) * (fa.abs() + fm.abs() + fb.abs()) / 3.0).abs()).max(1e-300);
    let mut converged = true;
    let value = recurse(&f, a, b, fa, fm, fb, whole, rel_tol * scale, MAX_DEPTH, &mut converged);
    Quadrature { value, converged }
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    converged: &mut bool,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    if depth == 0 || m <= a || m >= b {
        *converged = false;
        return left + right + delta / 15.0;
    }
    recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, converged)
        + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, converged)
}

/// Like [`adaptive_simpson`] but reports non-convergence as an error.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    let q = adaptive_simpson(f, a, b, rel_tol);
    if q.converged && q.value.is_finite() {
        Ok(q.value)
    } else {
        Err(Error::QuadratureNotConverged { a, b })
    }
}
