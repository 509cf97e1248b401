//! Small dense-vector helpers, the biharmonic preconditioner and GMRES.

use crate::grid::Grid;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn sup(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub(crate) fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// `K⁻¹g = Δ⁻¹(Δ⁻¹(g / V))` with Dirichlet solves on the interior; the
/// exact inverse Hessian of `½∫|Δu|²`.
pub fn biharmonic_precondition(grid: &Grid, g: &[f64]) -> Vec<f64> {
    let scaled: Vec<f64> = g
        .iter()
        .enumerate()
        .map(|(i, v)| if grid.is_boundary(i) { 0.0 } else { v / grid.weights[i] })
        .collect();
    let y = grid.solve_dirichlet(&scaled);
    grid.solve_dirichlet(&y)
}

/// Dual norm `sqrt(gᵀK⁻¹g)` of a weighted residual.
pub fn dual_norm(grid: &Grid, g: &[f64]) -> f64 {
    dot(g, &biharmonic_precondition(grid, g)).max(0.0).sqrt()
}

pub(crate) struct GmresOutcome {
    pub x: Vec<f64>,
    pub relative_residual: f64,
}

/// Right-preconditioned restarted GMRES for `A x = b`.
pub(crate) fn gmres(
    apply: impl Fn(&[f64]) -> Vec<f64>,
    precond: impl Fn(&[f64]) -> Vec<f64>,
    b: &[f64],
    rel_tol: f64,
    restart: usize,
    max_iter: usize,
) -> GmresOutcome {
    let n = b.len();
    let b_norm = dot(b, b).sqrt();
    let mut x = vec![0.0; n];
    if b_norm == 0.0 {
        return GmresOutcome { x, relative_residual: 0.0 };
    }
    let mut total = 0;
    let mut rel = 1.0;
    while total < max_iter {
        let ax = apply(&x);
        let r: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
        let beta = dot(&r, &r).sqrt();
        rel = beta / b_norm;
        if rel <= rel_tol {
            break;
        }
        let mut basis: Vec<Vec<f64>> = vec![r.iter().map(|v| v / beta).collect()];
        let mut hess: Vec<Vec<f64>> = Vec::new();
        let mut cs: Vec<f64> = Vec::new();
        let mut sn: Vec<f64> = Vec::new();
        let mut rhs = vec![beta];
        let mut zs: Vec<Vec<f64>> = Vec::new();
        for j in 0..restart {
            total += 1;
            let z = precond(&basis[j]);
            let mut w = apply(&z);
            zs.push(z);
            let mut col = vec![0.0; j + 2];
            for (i, v) in basis.iter().enumerate() {
                col[i] = dot(&w, v);
                axpy(-col[i], v, &mut w);
            }
            col[j + 1] = dot(&w, &w).sqrt();
            for i in 0..j {
                let t = cs[i] * col[i] + sn[i] * col[i + 1];
                col[i + 1] = -sn[i] * col[i] + cs[i] * col[i + 1];
                col[i] = t;
            }
            let denom = col[j].hypot(col[j + 1]);
            let (c, s) = if denom == 0.0 { (1.0, 0.0) } else { (col[j] / denom, col[j + 1] / denom) };
            cs.push(c);
            sn.push(s);
            let next_w = col[j + 1];
            col[j] = denom;
            col[j + 1] = 0.0;
            rhs.push(-s * rhs[j]);
            rhs[j] *= c;
            hess.push(col);
            rel = rhs[j + 1].abs() / b_norm;
            if rel <= rel_tol || next_w == 0.0 || total >= max_iter {
                break;
            }
            basis.push(w.iter().map(|v| v / next_w).collect());
        }
        let m = hess.len();
        let mut y = vec![0.0; m];
        for i in (0..m).rev() {
            let mut acc = rhs[i];
            for k in i + 1..m {
                acc -= hess[k][i] * y[k];
            }
            y[i] = if hess[i][i] == 0.0 { 0.0 } else { acc / hess[i][i] };
        }
        for (yi, z) in y.iter().zip(&zs) {
            axpy(*yi, z, &mut x);
        }
        if rel <= rel_tol {
            break;
        }
    }
    GmresOutcome { x, relative_residual: rel }
}
