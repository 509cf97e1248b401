//! Variable-exponent fourth-order Leray–Lions problems under Navier
//! boundary conditions: function-space numerics, energy functionals,
//! three-solution certificates and a deflated multi-start solver.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certificate;
pub mod config;
pub mod energy;
pub mod error;
pub mod exponent;
pub mod grid;
pub mod modular;
pub mod nonlinearity;
pub mod potential;
pub mod profile;
pub mod quadrature;
pub mod solver;

pub use error::{Error, Result};
pub use exponent::{validate_exponent, ExponentField, ExponentSource};
pub use grid::{laplacian, BoundaryCondition, Domain, Grid, GridFunction};
pub use certificate::{certify, certify_dim1, Certificate};
pub use config::ProblemSpec;
pub use energy::{energy_j, load_phi, total_energy, weak_residual, ProblemInstance};
pub use modular::luxemburg_norm;
pub use solver::{deflate_and_search, lambda_sweep, minimize, CriticalPoint, SolutionSet, SolverOptions};
