//! Cone input files with JSON-pointer diagnostics.
//!
//! A file holds one cone `{"g": 4, "name": "...", "generators": [...]}` or a
//! list of them. A generator is `{"vector": [..]}` (rank one) or
//! `{"g": 4, "coords": [..]}`.

use std::path::Path;

use conelab::{named_cone, Cone, ConeJson};
use serde_path_to_error::Segment;

use crate::CliError;

fn pointer(path: &serde_path_to_error::Path) -> String {
    let mut s = String::new();
    for seg in path.iter() {
        s.push('/');
        match seg {
            Segment::Seq { index } => s.push_str(&index.to_string()),
            Segment::Map { key } => s.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => s.push_str(variant),
            Segment::Unknown => s.push('?'),
        }
    }
    if s.is_empty() {
        s.push('/');
    }
    s
}

fn bad(file: &Path, at: String, msg: impl Into<String>) -> CliError {
    CliError::Input { file: file.display().to_string(), pointer: at, message: msg.into() }
}

fn build(file: &Path, base: &str, c: &ConeJson) -> Result<Cone, CliError> {
    for (i, q) in c.generators.iter().enumerate() {
        q.to_form().map_err(|e| bad(file, format!("{base}/generators/{i}"), e.to_string()))?;
    }
    c.to_cone().map_err(|e| bad(file, format!("{base}/generators"), e.to_string()))
}

/// Parses the cones of a JSON document; `file` only labels diagnostics.
pub fn parse_cones(file: &Path, text: &str) -> Result<Vec<Cone>, CliError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| bad(file, "/".into(), format!("line {} column {}: {e}", e.line(), e.column())))?;
    // Decode list and single forms separately so errors point inside the right shape.
    if value.is_array() {
        let list: Vec<ConeJson> =
            serde_path_to_error::deserialize(&value).map_err(|e| bad(file, pointer(e.path()), e.inner().to_string()))?;
        list.iter().enumerate().map(|(i, c)| build(file, &format!("/{i}"), c)).collect()
    } else {
        let c: ConeJson =
            serde_path_to_error::deserialize(&value).map_err(|e| bad(file, pointer(e.path()), e.inner().to_string()))?;
        Ok(vec![build(file, "", &c)?])
    }
}

pub fn read_cones(file: &Path) -> Result<Vec<Cone>, CliError> {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Io(format!("{}: {e}", file.display())))?;
    parse_cones(file, &text)
}

/// The cone named on the command line, or the single cone of the input file.
pub fn one_cone(name: Option<&str>, input: Option<&Path>) -> Result<Cone, CliError> {
    match (name, input) {
        (Some(n), None) => Ok(named_cone(n)?),
        (None, Some(f)) => {
            let mut cones = read_cones(f)?;
            if cones.len() != 1 {
                return Err(bad(f, "/".into(), format!("expected one cone, found {}", cones.len())));
            }
            Ok(cones.remove(0))
        }
        _ => Err(CliError::Usage("give exactly one of --cone NAME or --input FILE".into())),
    }
}
