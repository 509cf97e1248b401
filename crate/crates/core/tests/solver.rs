use pxbiharm::solver::{deflate_and_search, lambda_sweep, minimize, minimize_traced, sweep_csv, verify_weak_solution, SolverOptions};
use pxbiharm::{certify, GridFunction, ProblemInstance, ProblemSpec};

fn spec(exponent: &str, nonlinearity: &str) -> ProblemSpec {
    serde_json::from_str(&format!(
        r#"{{"domain": {{"kind": "interval"}}, "exponent": {exponent},
            "potential": {{"family": "power"}}, "nonlinearity": {nonlinearity}}}"#
    ))
    .unwrap()
}

fn bump_beam(n: usize, lambda: f64) -> ProblemInstance {
    spec("2", r#"{"kind": "builtin:bump", "bump": {"base": 0.01, "amplitude": 10, "center": 3, "width": 1}}"#)
        .instantiate(n, lambda)
        .unwrap()
}

fn random_start(inst: &ProblemInstance, seed: u64, scale: f64) -> GridFunction {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let values = inst.grid.random_smooth_field(&mut rng, 5).iter().map(|v| scale * v).collect();
    GridFunction::navier(inst.grid.clone(), values).unwrap()
}

#[test]
fn zero_load_gives_zero_solution() {
    let inst = spec("3", r#"{"kind": "builtin:const", "value": 0}"#).instantiate(65, 1.0).unwrap();
    let cp = minimize(&inst, &random_start(&inst, 4, 2.0), &SolverOptions::default());
    assert!(cp.converged);
    assert!(cp.u.values.iter().all(|v| v.abs() < 1e-6), "{:?}", cp.u.values);
    let set = deflate_and_search(&inst, 3, 4, &SolverOptions::default());
    assert_eq!(set.len(), 1);
    let peak = set.points[0].u.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    // p = 3 is degenerate at 0, so the residual gate leaves a small offset
    assert!(peak < 1e-4, "{peak}");
}

#[test]
fn beam_closed_form() {
    for lambda in [1.0, 7.5] {
        let inst = spec("2", r#"{"kind": "builtin:const", "value": 1}"#).instantiate(201, lambda).unwrap();
        let cp = minimize(&inst, &GridFunction::zeros(inst.grid.clone()), &SolverOptions::default());
        assert!(cp.converged && cp.residual_norm < 1e-8);
        let err = inst
            .grid
            .coords
            .iter()
            .zip(&cp.u.values)
            .map(|(c, u)| {
                let x = c[0];
                (u - lambda * (x.powi(4) / 24.0 - x.powi(3) / 12.0 + x / 24.0)).abs()
            })
            .fold(0.0, f64::max);
        assert!(err < 1e-4 * lambda, "λ={lambda}: {err}");
    }
}

#[test]
fn descent_is_monotone_for_variable_exponent() {
    let inst = spec(r#"{"kind": "affine", "a": 2.0, "b": 0.5}"#, r#"{"kind": "builtin:rational"}"#)
        .instantiate(65, 3.0)
        .unwrap();
    let (cp, trace) = minimize_traced(&inst, &random_start(&inst, 11, 3.0), &SolverOptions::default());
    assert!(cp.converged, "residual {}", cp.residual_norm);
    for w in trace.energies.windows(2) {
        assert!(w[1] <= w[0] + 1e-12 * w[0].abs().max(1.0), "{} -> {}", w[0], w[1]);
    }
    assert!(verify_weak_solution(&inst, &cp.u, 20, 3, 1e-8));
}

#[test]
fn bump_beam_has_three_solutions_inside_certified_interval() {
    let inst = bump_beam(101, 1.0);
    let cert = certify(&inst, 8.0, 4.0).unwrap();
    let [lo, hi] = cert.lambda_interval.unwrap();
    let lambda = (lo * hi).sqrt();
    let set = deflate_and_search(&inst.with_lambda(lambda), 3, 8, &SolverOptions::default());
    assert!(set.len() >= 3, "λ={lambda}: {} points", set.len());
    assert!(set.min_pairwise_distance().unwrap() > 1e-3);
    for p in &set.points {
        assert!(p.residual_norm < 1e-8);
    }
    for w in set.points.windows(2) {
        assert!(w[0].energy <= w[1].energy);
    }
}

#[test]
fn sweep_is_deterministic_and_has_m_rows() {
    let inst = bump_beam(41, 1.0);
    let opts = SolverOptions { n_starts: 3, ..SolverOptions::default() };
    let a = lambda_sweep(&inst, [50.0, 150.0], 4, &opts).unwrap();
    let b = lambda_sweep(&inst, [50.0, 150.0], 4, &opts).unwrap();
    assert_eq!(a.len(), 4);
    assert_eq!(sweep_csv(&a), sweep_csv(&b));
}

#[test]
fn zero_load_sweep_counts_one_everywhere() {
    let inst = spec("2", r#"{"kind": "builtin:const", "value": 0}"#).instantiate(33, 1.0).unwrap();
    let rows = lambda_sweep(&inst, [1.0, 10.0], 3, &SolverOptions { n_starts: 2, ..SolverOptions::default() }).unwrap();
    assert!(rows.iter().all(|r| r.n_solutions == 1));
}
