//! Multiplicity table over a log-spaced range of `λ`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::deflation::deflate_and_search;
use super::minimize::SolverOptions;
use crate::energy::ProblemInstance;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub n_solutions: usize,
    /// Whether `λ` lies in the interval the sweep was built around.
    pub inside: bool,
    pub energies: Vec<f64>,
}

/// `m` log-spaced values spanning `[lo/2, 2·hi]`.
pub fn sweep_lambdas(interval: [f64; 2], m: usize) -> Result<Vec<f64>> {
    let [lo, hi] = interval;
    if m < 2 {
        return Err(Error::InvalidParameter("a sweep needs at least 2 points".into()));
    }
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidParameter(format!("sweep interval [{lo}, {hi}] must satisfy 0 < lo < hi < inf")));
    }
    Ok(log_spaced(0.5 * lo, 2.0 * hi, m))
}

pub fn log_spaced(a: f64, b: f64, m: usize) -> Vec<f64> {
    let (la, lb) = (a.ln(), b.ln());
    (0..m)
        .map(|i| match i {
            0 => a,
            i if i + 1 == m => b,
            i => (la + (lb - la) * i as f64 / (m - 1) as f64).exp(),
        })
        .collect()
}

/// Runs [`deflate_and_search`] at each `λ` of [`sweep_lambdas`]; rows come
/// back in increasing `λ`.
pub fn lambda_sweep(inst: &ProblemInstance, interval: [f64; 2], m: usize, opts: &SolverOptions) -> Result<Vec<SweepRow>> {
    let lambdas = sweep_lambdas(interval, m)?;
    Ok(lambdas
        .par_iter()
        .map(|&lambda| {
            let set = deflate_and_search(&inst.with_lambda(lambda), opts.k_max, opts.n_starts, opts);
            SweepRow {
                lambda,
                n_solutions: set.len(),
                inside: lambda >= interval[0] && lambda <= interval[1],
                energies: set.energies(),
            }
        })
        .collect())
}

/// `lambda,n_solutions,inside,energy_1,…,energy_k`; short rows are padded
/// with empty fields.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let k = rows.iter().map(|r| r.energies.len()).max().unwrap_or(0);
    let mut out = String::from("lambda,n_solutions,inside");
    for j in 1..=k {
        out.push_str(&format!(",energy_{j}"));
    }
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{:e},{},{}", r.lambda, r.n_solutions, r.inside));
        for j in 0..k {
            out.push(',');
            if let Some(e) = r.energies.get(j) {
                out.push_str(&format!("{e:e}"));
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambdas_hit_scaled_endpoints() {
        let l = sweep_lambdas([2.0, 8.0], 5).unwrap();
        assert_eq!(l.len(), 5);
        assert_eq!(l[0], 1.0);
        assert_eq!(l[4], 16.0);
        assert!((l[2] - 4.0).abs() < 1e-12);
        assert!(sweep_lambdas([2.0, 8.0], 1).is_err());
        assert!(sweep_lambdas([8.0, 2.0], 3).is_err());
    }

    #[test]
    fn csv_pads_short_rows() {
        let rows = vec![
            SweepRow { lambda: 1.0, n_solutions: 1, inside: false, energies: vec![-0.5] },
            SweepRow { lambda: 2.5, n_solutions: 2, inside: true, energies: vec![-1.0, 0.25] },
        ];
        assert_eq!(
            sweep_csv(&rows),
            "lambda,n_solutions,inside,energy_1,energy_2\n1e0,1,false,-5e-1,\n2.5e0,2,true,-1e0,2.5e-1\n"
        );
    }
}
