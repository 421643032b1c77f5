use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use tate_ledger::{Cell, Coeff, Row, Symbol};

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(CliError::Usage(format!("unknown format {s:?} (text, json, csv)"))),
        }
    }
}

/// Value of a symbol: left symbolic or fixed to an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Binding {
    Symbolic,
    Value(i64),
}

impl Binding {
    pub fn value(self) -> Option<i64> {
        match self {
            Binding::Symbolic => None,
            Binding::Value(v) => Some(v),
        }
    }

    /// Parses `symbolic` or an integer from `allowed` (any integer when `allowed` is empty).
    pub fn parse(s: &str, allowed: &[i64]) -> Result<Self, CliError> {
        if s == "symbolic" {
            return Ok(Binding::Symbolic);
        }
        let v: i64 = s.parse().map_err(|_| CliError::Usage(format!("expected an integer or `symbolic`, got {s:?}")))?;
        if !allowed.is_empty() && !allowed.contains(&v) {
            return Err(CliError::Usage(format!("value {v} not among {allowed:?}")));
        }
        Ok(Binding::Value(v))
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Binding::Symbolic => write!(f, "symbolic"),
            Binding::Value(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bindings {
    pub ea4: Binding,
    pub epsilon: Binding,
    pub r: Binding,
}

impl Default for Bindings {
    /// Everything symbolic except `r = 0`, the value the purity argument needs.
    fn default() -> Self {
        Bindings { ea4: Binding::Symbolic, epsilon: Binding::Symbolic, r: Binding::Value(0) }
    }
}

impl Bindings {
    fn pairs(&self) -> impl Iterator<Item = (Symbol, i64)> {
        [(Symbol::EA4, self.ea4), (Symbol::Eps, self.epsilon), (Symbol::R, self.r)]
            .into_iter()
            .filter_map(|(s, b)| b.value().map(|v| (s, v)))
    }

    pub fn coeff(&self, c: Coeff) -> Coeff {
        self.pairs().fold(c, |c, (s, v)| c.bind(s, v))
    }

    pub fn cell(&self, c: &Cell) -> Cell {
        self.pairs().fold(c.clone(), |c, (s, v)| c.bind(s, v))
    }

    pub fn row(&self, r: &Row) -> Row {
        self.pairs().fold(r.clone(), |r, (s, v)| r.bind(s, v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Fan {
    Perfect,
    Voronoi,
}

impl FromStr for Fan {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "perfect" => Ok(Fan::Perfect),
            "voronoi" => Ok(Fan::Voronoi),
            _ => Err(CliError::Usage(format!("unknown fan {s:?} (perfect, voronoi)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Orbit census of a fan, or classification of the cones in `--input`.
    Census { fan: Fan },
    Stabilizer { cone: Option<String> },
    Euler { cone: Option<String> },
    Faces { cone: Option<String> },
    Suite { name: String },
    Table { name: String },
    Verify,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub bindings: Bindings,
    /// Worker threads; `None` leaves the pool at its default size.
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig { command, input: None, out: None, format: Format::Text, bindings: Bindings::default(), jobs: None }
    }
}
