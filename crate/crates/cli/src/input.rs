//! JSON input files and their resolution into library values.

use std::collections::BTreeMap;
use std::path::Path;

use mustafin_core::coeffs::{PiPoly, PrimeField, DEFAULT_PRIME};
use mustafin_core::degeneration::SubvarietyInput;
use mustafin_core::mustafin::{Entries, LatticeConfig};
use mustafin_core::specialize::Assignment;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::args::PRIME_ENV;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Modulus(u64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntriesFile {
    /// `"symbolic"` or `"random"`.
    Keyword(String),
    /// `[l][row][col]`, each a polynomial in `pi`.
    Concrete(Vec<Vec<Vec<String>>>),
}

/// Lattice configuration file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub d: usize,
    pub n: usize,
    pub n_vec: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<EntriesFile>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Random,
    Symbolic,
    Explicit,
}

impl ConfigFile {
    pub fn shape(&self) -> Result<Shape, CliError> {
        match &self.entries {
            None => Ok(Shape::Random),
            Some(EntriesFile::Keyword(k)) if k == "random" => Ok(Shape::Random),
            Some(EntriesFile::Keyword(k)) if k == "symbolic" => Ok(Shape::Symbolic),
            Some(EntriesFile::Keyword(k)) => Err(CliError::Usage(format!("unknown entries keyword `{k}`"))),
            Some(EntriesFile::Concrete(_)) => Ok(Shape::Explicit),
        }
    }

    /// The configuration for one trial seed.
    pub fn build(&self, field: &PrimeField, seed: u64) -> Result<LatticeConfig<PrimeField>, CliError> {
        let cfg = match (&self.entries, self.shape()?) {
            (Some(EntriesFile::Concrete(m)), _) => {
                let mats = m
                    .iter()
                    .map(|ml| ml.iter().map(|r| r.iter().map(|t| parse_pi(field, t)).collect()).collect())
                    .collect::<Result<Vec<Vec<Vec<_>>>, _>>()?;
                LatticeConfig::new(field, self.d, self.n, self.n_vec.clone(), Entries::Concrete(mats))
            }
            (_, Shape::Symbolic) => LatticeConfig::symbolic(field, self.d, self.n, self.n_vec.clone()),
            _ => LatticeConfig::random(field, self.d, self.n, self.n_vec.clone(), seed),
        };
        cfg.map_err(CliError::input)
    }
}

/// A polynomial in `pi` over the field.
pub fn parse_pi(field: &PrimeField, text: &str) -> Result<PiPoly<u64>, CliError> {
    let a = Assignment::parse(field, [("value", text)]).map_err(|e| CliError::Usage(format!("entry `{text}`: {e}")))?;
    Ok(a.values["value"].clone())
}

/// Subvariety file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CurveFile {
    Explicit { gens: Vec<String>, dim: usize, degree: u64 },
    /// Intersection of seeded random hyperplanes.
    Linear { codim: usize },
    /// Seeded random nonsingular quadric hypersurface.
    Quadric,
}

impl CurveFile {
    /// Random kinds draw from `seed`.
    pub fn build(&self, field: &PrimeField, d: usize, seed: u64) -> Result<SubvarietyInput<PrimeField>, CliError> {
        let x = match self {
            CurveFile::Explicit { gens, dim, degree } => SubvarietyInput::parse(field, d, gens, *dim, *degree),
            CurveFile::Linear { codim } => SubvarietyInput::random_linear(field, d, *codim, seed),
            CurveFile::Quadric => SubvarietyInput::random_quadric(field, d, seed),
        };
        x.map_err(CliError::input)
    }

    pub fn is_random(&self) -> bool {
        !matches!(self, CurveFile::Explicit { .. })
    }
}

/// Assignment file: parameter name to a polynomial in `pi`.
pub type AssignmentFile = BTreeMap<String, String>;

/// A free specialization problem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub variables: Vec<String>,
    pub gens: Vec<String>,
    /// Saturating element; `pi` when absent.
    #[serde(default)]
    pub a: Option<String>,
    #[serde(default)]
    pub assignment: Option<AssignmentFile>,
}

/// Reads and decodes a JSON file, reporting decode errors with line and column.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Usage(format!("{}:{}:{}: {}", path.display(), e.line(), e.column(), strip_position(&e.to_string())))
    })
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Modulus from the flag, then the config file, then the environment.
pub fn resolve_field(flag: Option<&str>, file: Option<&FieldSpec>) -> Result<PrimeField, CliError> {
    let env = std::env::var(PRIME_ENV).ok();
    let p = match (flag, file, env) {
        (Some(s), _, _) => parse_modulus(s)?,
        (None, Some(FieldSpec::Modulus(p)), _) => *p,
        (None, Some(FieldSpec::Text(s)), _) => parse_modulus(s)?,
        (None, None, Some(s)) => parse_modulus(&s)?,
        (None, None, None) => DEFAULT_PRIME,
    };
    PrimeField::new(p).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_modulus(s: &str) -> Result<u64, CliError> {
    let t = s.trim();
    let t = t.strip_prefix("fp:").or_else(|| t.strip_prefix("F_")).unwrap_or(t);
    t.parse().map_err(|_| CliError::Usage(format!("field `{s}` is not a prime modulus")))
}
