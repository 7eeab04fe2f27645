//! Job configuration: what to compute, on which recurrence, over which grid.

use std::path::Path;

use maxmod_core::recurrence::{presets, RecurrenceSpec};
use maxmod_core::symbolfield::Grid;
use maxmod_core::{ComplexPoly, C64};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::Failure;

/// A coefficient given as a real number or as `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coef {
    Real(f64),
    Complex([f64; 2]),
}

impl Coef {
    fn value(self) -> C64 {
        match self {
            Coef::Real(x) => C64::new(x, 0.0),
            Coef::Complex([re, im]) => C64::new(re, im),
        }
    }
}

/// Ascending coefficients.
pub type PolyInput = Vec<Coef>;

fn poly(p: &PolyInput) -> ComplexPoly {
    ComplexPoly::new(p.iter().map(|c| c.value()).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecInput {
    /// A preset name (`fibonacci`, `fig1` .. `fig4`) or a path to a JSON file
    /// holding one of the other forms.
    Named(String),
    /// `p_{n+1} = Q_1 p_n + ... + Q_k p_{n+1-k}`.
    Forward { forward: Vec<PolyInput> },
    /// The full recurrence, including coefficients that vary with `n`.
    Recurrence { recurrence: RecurrenceSpec },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialInput {
    /// `standard` (`0, 1`), `upper` or `lower` (the two figure-1 triples).
    Named(String),
    Polys(Vec<PolyInput>),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridInput {
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub nx: usize,
    pub ny: usize,
}

impl GridInput {
    pub fn grid(&self) -> Result<Grid, Failure> {
        Grid::window(self.x[0], self.x[1], self.y[0], self.y[1], self.nx, self.ny).map_err(Failure::invalid)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub spec: Option<SpecInput>,
    pub initial: Option<InitialInput>,
    pub grid: Option<GridInput>,
    pub levels: Option<Vec<usize>>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    /// Ratio-field depth and the index of the measure.
    pub n: Option<usize>,
    /// Perron sweep: endpoints of the real segment and the number of steps.
    pub z_range: Option<[f64; 2]>,
    pub steps: Option<usize>,
    /// Maxmod audit.
    pub k: Option<Vec<usize>>,
    pub samples: Option<usize>,
    /// Report: criterion names, all when absent.
    pub criteria: Option<Vec<String>>,
    /// Moments compared by `measure`.
    pub moments: Option<usize>,
}

impl JobConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let Some(path) = path else {
            return Ok(JobConfig::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("bad config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), Failure> {
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Failure::Invalid(format!("tolerance must be positive, got {t}")));
            }
        }
        if let Some(g) = &self.grid {
            if g.nx < 2 || g.ny < 2 {
                return Err(Failure::Invalid("grid counts must be at least 2".into()));
            }
        }
        if self.steps == Some(0) || self.samples == Some(0) {
            return Err(Failure::Invalid("steps and samples must be positive".into()));
        }
        Ok(())
    }

    /// Hex SHA-256 of the effective configuration.
    pub fn hash(&self, command: &str) -> String {
        let body = serde_json::to_string(&(command, self)).expect("config serializes");
        Sha256::digest(body.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn spec(&self) -> Result<RecurrenceSpec, Failure> {
        let spec = match self.spec.clone().unwrap_or(SpecInput::Named("fig2".into())) {
            SpecInput::Named(name) => named_spec(&name)?,
            SpecInput::Forward { forward } => RecurrenceSpec::forward(forward.iter().map(poly).collect()),
            SpecInput::Recurrence { recurrence } => recurrence,
        };
        spec.validate().map_err(Failure::invalid)?;
        Ok(spec)
    }

    /// Initial polynomials; defaults to `standard` for order 2 and `upper` for
    /// the figure-1 relation.
    pub fn initial(&self, k: usize) -> Result<Vec<ComplexPoly>, Failure> {
        let input = self.initial.clone().unwrap_or_else(|| InitialInput::Named(if k == 3 { "upper" } else { "standard" }.into()));
        let init = match input {
            InitialInput::Named(name) => match name.as_str() {
                "standard" => presets::standard_initial(),
                "upper" => presets::fig1_upper(),
                "lower" => presets::fig1_lower(),
                other => return Err(Failure::Invalid(format!("unknown initial tuple {other:?}"))),
            },
            InitialInput::Polys(ps) => ps.iter().map(poly).collect(),
        };
        if init.len() != k {
            return Err(Failure::Invalid(format!("initial tuple has {} entries, the recurrence needs {k}", init.len())));
        }
        Ok(init)
    }
}

fn named_spec(name: &str) -> Result<RecurrenceSpec, Failure> {
    Ok(match name {
        "fibonacci" => presets::fibonacci(),
        "fig1" => presets::fig1(),
        "fig2" => q_spec(presets::fig2_q()),
        "fig3" => q_spec(presets::fig3_q()),
        "fig4" => q_spec(presets::fig4_q()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("unknown preset or unreadable file {path:?}: {e}")))?;
            let input: SpecInput = serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("bad spec file {path}: {e}")))?;
            if let SpecInput::Named(_) = input {
                return Err(Failure::Invalid(format!("spec file {path} must hold a recurrence, not a name")));
            }
            let cfg = JobConfig { spec: Some(input), ..JobConfig::default() };
            return cfg.spec();
        }
    })
}

fn q_spec(q: (ComplexPoly, ComplexPoly)) -> RecurrenceSpec {
    presets::eq41(q.0, q.1)
}
