//! Serializable problem description: domain, exponent, potential and
//! nonlinearity blocks, turned into a [`ProblemInstance`] on a grid.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::energy::ProblemInstance;
use crate::error::{Error, Result};
use crate::exponent::ExponentField;
use crate::grid::{Domain, Grid};
use crate::nonlinearity::{NonlinearitySpec, ScalarLaw};
use crate::potential::{make_perturbed_family, make_power_family, make_tabulated_family, PerturbedVariant, PotentialSpec};
use crate::profile::{PiecewiseLinear, Profile, ProfileSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Power,
    PerturbedPower,
    Tabulated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialTable {
    pub t: Vec<f64>,
    pub a: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialConfig {
    pub family: FamilyTag,
    #[serde(default = "unit_profile")]
    pub theta: Profile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<PerturbedVariant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<PotentialTable>,
}

fn unit_profile() -> Profile {
    Profile::Number(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LawKind {
    #[serde(rename = "builtin:const")]
    Const,
    #[serde(rename = "builtin:rational")]
    Rational,
    #[serde(rename = "builtin:exp")]
    Exp,
    #[serde(rename = "builtin:bump")]
    Bump,
    #[serde(rename = "table")]
    Table,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BumpParams {
    pub base: f64,
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LawTable {
    pub t: Vec<f64>,
    pub g: Vec<f64>,
}

/// `f(x, t) = α(x) g(t)` with optional explicit growth data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonlinearityConfig {
    pub kind: LawKind,
    /// Value of `builtin:const`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bump: Option<BumpParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<LawTable>,
    #[serde(default = "unit_profile")]
    pub alpha: Profile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Profile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Profile>,
}

impl NonlinearityConfig {
    pub fn law(&self) -> Result<ScalarLaw> {
        let missing = |what: &str| Error::InvalidParameter(format!("nonlinearity kind {:?} needs `{what}`", self.kind));
        Ok(match self.kind {
            LawKind::Const => ScalarLaw::Constant(self.value.ok_or_else(|| missing("value"))?),
            LawKind::Rational => ScalarLaw::Rational,
            LawKind::Exp => ScalarLaw::ExpDecay,
            LawKind::Bump => {
                let b = self.bump.as_ref().ok_or_else(|| missing("bump"))?;
                if !(b.width > 0.0) {
                    return Err(Error::InvalidParameter("bump width must be positive".into()));
                }
                ScalarLaw::Bump { base: b.base, amplitude: b.amplitude, center: b.center, width: b.width }
            }
            LawKind::Table => {
                let t = self.table.as_ref().ok_or_else(|| missing("table"))?;
                ScalarLaw::Table(PiecewiseLinear::new(t.t.clone(), t.g.clone())?)
            }
        })
    }

    pub fn build(&self, grid: &Grid, p: &ExponentField) -> Result<NonlinearitySpec> {
        let nl = NonlinearitySpec::new(self.law()?, grid).with_weight(self.alpha.sample(grid)?)?;
        match (&self.xi, self.zeta, &self.q) {
            (None, None, None) => nl.with_default_growth(p),
            (Some(xi), Some(zeta), Some(q)) => {
                let q = ExponentField::from_spec(&profile_spec(q), grid)?;
                nl.with_growth(xi.sample(grid)?, zeta, q)
            }
            _ => Err(Error::InvalidParameter("xi, zeta and q must be given together".into())),
        }
    }
}

fn profile_spec(p: &Profile) -> ProfileSpec {
    match p {
        Profile::Number(value) => ProfileSpec::Constant { value: *value },
        Profile::Spec(s) => s.clone(),
    }
}

impl PotentialConfig {
    pub fn build(&self, grid: &Grid, p: &ExponentField) -> Result<PotentialSpec> {
        let theta = self.theta.sample(grid)?;
        match self.family {
            FamilyTag::Power => make_power_family(theta, p.clone()),
            FamilyTag::PerturbedPower => {
                let variant = self
                    .variant
                    .ok_or_else(|| Error::InvalidParameter("perturbed_power needs `variant` (paper_literal or standard)".into()))?;
                make_perturbed_family(theta, p.clone(), variant)
            }
            FamilyTag::Tabulated => {
                let t = self.table.as_ref().ok_or_else(|| Error::InvalidParameter("tabulated potential needs `table`".into()))?;
                make_tabulated_family(theta, p.clone(), PiecewiseLinear::new(t.t.clone(), t.a.clone())?)
            }
        }
    }
}

/// Physics of one problem, independent of grid size and `λ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub domain: Domain,
    pub exponent: Profile,
    pub potential: PotentialConfig,
    pub nonlinearity: NonlinearityConfig,
}

/// The grid-level pieces of a [`ProblemSpec`].
#[derive(Debug, Clone)]
pub struct ProblemParts {
    pub grid: Arc<Grid>,
    pub p: ExponentField,
    pub potential: PotentialSpec,
    pub nonlinearity: NonlinearitySpec,
}

impl ProblemSpec {
    pub fn parts(&self, n: usize) -> Result<ProblemParts> {
        self.domain.validate()?;
        let grid = Arc::new(Grid::new(self.domain, n)?);
        let p = ExponentField::from_spec(&profile_spec(&self.exponent), &grid)?;
        let potential = self.potential.build(&grid, &p)?;
        let nonlinearity = self.nonlinearity.build(&grid, &p)?;
        Ok(ProblemParts { grid, p, potential, nonlinearity })
    }

    /// Instance whose hypotheses must pass.
    pub fn instantiate(&self, n: usize, lambda: f64) -> Result<ProblemInstance> {
        let parts = self.parts(n)?;
        let mut inst = ProblemInstance::new(parts.grid, parts.potential, parts.nonlinearity, lambda)?;
        inst.recipe = Some(self.clone());
        Ok(inst)
    }

    pub fn instantiate_unchecked(&self, n: usize, lambda: f64) -> Result<ProblemInstance> {
        let parts = self.parts(n)?;
        let mut inst = ProblemInstance::new_unchecked(parts.grid, parts.potential, parts.nonlinearity, lambda)?;
        inst.recipe = Some(self.clone());
        Ok(inst)
    }
}
