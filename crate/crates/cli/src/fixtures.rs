//! Golden tables compiled into the binary. Each file starts with `#` comment
//! lines (description, `# version N`, column names); data lines are fields
//! separated by `|`.

use crate::CliError;

/// Names and contents of every fixture, in a fixed order.
pub const FIXTURES: &[(&str, &str)] = &[
    ("census", include_str!("../fixtures/census.txt")),
    ("perfect_euler", include_str!("../fixtures/perfect_euler.txt")),
    ("e_euler", include_str!("../fixtures/e_euler.txt")),
    ("deltas", include_str!("../fixtures/deltas.txt")),
    ("strata_betti", include_str!("../fixtures/strata_betti.txt")),
    ("fibre_invariants", include_str!("../fixtures/fibre_invariants.txt")),
    ("fibre_actions", include_str!("../fixtures/fibre_actions.txt")),
    ("fibre_d2", include_str!("../fixtures/fibre_d2.txt")),
    ("rank2", include_str!("../fixtures/rank2.txt")),
    ("final", include_str!("../fixtures/final.txt")),
    ("table2", include_str!("../fixtures/table2.txt")),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub header: Vec<String>,
    pub version: u32,
    pub rows: Vec<Vec<String>>,
}

impl Fixture {
    /// The row whose first field is `key`.
    pub fn row(&self, key: &str) -> Result<&[String], CliError> {
        self.rows
            .iter()
            .find(|r| r[0] == key)
            .map(|r| &r[1..])
            .ok_or_else(|| CliError::Fixture(format!("{}: no row {key:?}", self.name)))
    }
}

pub fn parse(name: &'static str, text: &str) -> Result<Fixture, CliError> {
    let mut header = Vec::new();
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut version = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(c) = line.strip_prefix('#') {
            let c = c.trim();
            if let Some(v) = c.strip_prefix("version ") {
                version = v.trim().parse().ok();
            }
            header.push(c.to_string());
        } else {
            rows.push(line.split('|').map(|f| f.trim().to_string()).collect());
        }
    }
    let width = rows.first().map(Vec::len).unwrap_or(0);
    if rows.iter().any(|r| r.len() != width) {
        return Err(CliError::Fixture(format!("{name}: ragged rows")));
    }
    let version = version.ok_or_else(|| CliError::Fixture(format!("{name}: missing version line")))?;
    Ok(Fixture { name, header, version, rows })
}

pub fn load(name: &str) -> Result<Fixture, CliError> {
    let (n, text) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| CliError::Fixture(format!("no fixture {name:?}")))?;
    parse(n, text)
}

/// Splits `a,b,c` into its fields.
pub fn list(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).collect()
}

pub fn int_list(s: &str) -> Result<Vec<i64>, CliError> {
    list(s).iter().map(|x| x.parse().map_err(|_| CliError::Fixture(format!("not an integer: {x:?}")))).collect()
}
