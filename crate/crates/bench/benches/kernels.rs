use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use pxbiharm::modular::luxemburg_norm;
use pxbiharm::solver::{deflate_and_search, minimize, SolverOptions};
use pxbiharm::{weak_residual, BoundaryCondition, Domain, ExponentField, Grid, GridFunction, ProblemInstance, ProblemSpec};

fn instance(nonlinearity: &str, n: usize, lambda: f64) -> ProblemInstance {
    let spec: ProblemSpec = serde_json::from_str(&format!(
        r#"{{"domain": {{"kind": "interval"}}, "exponent": {{"kind": "affine", "a": 2.0, "b": 0.5}},
            "potential": {{"family": "power"}}, "nonlinearity": {nonlinearity}}}"#
    ))
    .unwrap();
    spec.instantiate(n, lambda).unwrap()
}

fn wavy(grid: &Arc<Grid>) -> GridFunction {
    GridFunction::from_fn(grid.clone(), BoundaryCondition::Navier, |c| {
        (std::f64::consts::PI * c[0]).sin() + 0.3 * (3.0 * std::f64::consts::PI * c[0]).sin()
    })
}

fn norms(c: &mut Criterion) {
    let grid = Arc::new(Grid::new(Domain::unit_interval(), 1024).unwrap());
    let p = ExponentField::from_spec(&pxbiharm::profile::ProfileSpec::Affine { a: 2.0, b: 1.0 }, &grid).unwrap();
    let u = wavy(&grid);
    c.bench_function("luxemburg_norm/n1024", |b| b.iter(|| luxemburg_norm(black_box(&u), &p).unwrap()));
}

fn residuals(c: &mut Criterion) {
    let inst = instance(r#"{"kind": "builtin:rational"}"#, 201, 5.0);
    let u = wavy(&inst.grid);
    c.bench_function("weak_residual/n201", |b| b.iter(|| weak_residual(&inst, black_box(&u))));
}

fn solvers(c: &mut Criterion) {
    let inst = instance(r#"{"kind": "builtin:rational"}"#, 201, 5.0);
    let u0 = GridFunction::zeros(inst.grid.clone());
    let opts = SolverOptions::default();
    c.bench_function("minimize/n201", |b| b.iter(|| minimize(&inst, black_box(&u0), &opts)));

    let bump = r#"{"kind": "builtin:bump", "bump": {"base": 0.01, "amplitude": 10, "center": 3, "width": 1}}"#;
    let spec: ProblemSpec = serde_json::from_str(&format!(
        r#"{{"domain": {{"kind": "interval"}}, "exponent": 2, "potential": {{"family": "power"}}, "nonlinearity": {bump}}}"#
    ))
    .unwrap();
    let beam = spec.instantiate(101, 95.0).unwrap();
    let mut group = c.benchmark_group("deflate_and_search");
    group.sample_size(10);
    group.bench_function("bump_beam/n101", |b| b.iter(|| deflate_and_search(&beam, 3, 8, &opts)));
    group.finish();
}

criterion_group!(benches, norms, residuals, solvers);
criterion_main!(benches);
