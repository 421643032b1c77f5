//! Front end for the genus-4 computations: fan censuses, stabilizers,
//! Hodge–Euler polynomials, fibre suites, Betti tables and the acceptance suite.

pub mod commands;
pub mod config;
pub mod criteria;
pub mod fixtures;
pub mod input;
pub mod report;

use std::fs;

use thiserror::Error;

pub use config::{Binding, Bindings, Command, Fan, Format, RunConfig};
pub use criteria::{run_all, Check, Criterion};
pub use report::{Report, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{file}: at {pointer}: {message}")]
    Input { file: String, pointer: String, message: String },
    #[error("desk-scale guard: {0}")]
    Guard(String),
    #[error("fixture: {0}")]
    Fixture(String),
    #[error("{0}")]
    Compute(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<conelab::ConeError> for CliError {
    fn from(e: conelab::ConeError) -> Self {
        match e {
            conelab::ConeError::TooLarge { dim, gens } => CliError::Guard(format!(
                "cone of dimension {dim} with {gens} generators exceeds the face-enumeration limits \
                 (dimension {}, {} generators)",
                conelab::MAX_FACE_DIM,
                conelab::MAX_FACE_GENS
            )),
            e => CliError::Compute(e.to_string()),
        }
    }
}

macro_rules! compute_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Compute(e.to_string())
            }
        }
    )*};
}

compute_error!(
    arithgrp::ArithError,
    torus_coh::TorusError,
    extfib::ExtError,
    tate_ledger::LedgerError,
    symquad::SymquadError
);

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Rendered output and the exit status it calls for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub status: i32,
}

/// The acceptance suite as a report: one row per criterion.
pub fn verify_report(results: &[Criterion]) -> Report {
    let mut t = Table::new("acceptance", &["criterion", "status", "checks", "title"]);
    for c in results {
        let ok = c.checks.iter().filter(|x| x.pass).count();
        t.push(&[
            c.id.to_string(),
            (if c.pass() { "PASS" } else { "FAIL" }).to_string(),
            format!("{ok}/{}", c.checks.len()),
            c.title.to_string(),
        ]);
    }
    let mut checks = Table::new("checks", &["criterion", "check", "pass", "detail"]);
    for c in results {
        for x in &c.checks {
            checks.push(&[c.id.to_string(), x.name.clone(), x.pass.to_string(), x.detail.clone()]);
        }
    }
    let mut r = Report::new("verify").table(t).table(checks);
    for c in results {
        for n in &c.notes {
            r = r.note(format!("criterion {}: {n}", c.id));
        }
    }
    r
}

fn dispatch(cfg: &RunConfig) -> Result<(Report, i32), CliError> {
    let input = cfg.input.as_deref();
    let report = match &cfg.command {
        Command::Census { fan } => commands::census(*fan, input)?,
        Command::Stabilizer { cone } => commands::stabilizer_cmd(cone.as_deref(), input)?,
        Command::Euler { cone } => commands::euler(cone.as_deref(), input)?,
        Command::Faces { cone } => commands::faces(cone.as_deref(), input)?,
        Command::Suite { name } => commands::suite(name)?,
        Command::Table { name } => commands::table(name, &cfg.bindings)?,
        Command::Verify => {
            let results = run_all();
            let status = i32::from(!results.iter().all(Criterion::pass));
            return Ok((verify_report(&results), status));
        }
    };
    Ok((report, 0))
}

/// Runs one command. With `out` set, the output goes to that file and the
/// returned text is empty.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (report, status) = match cfg.jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            pool.install(|| dispatch(cfg))?
        }
        None => dispatch(cfg)?,
    };
    let text = report.render(cfg.format)?;
    match &cfg.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(Outcome { output: String::new(), status })
        }
        None => Ok(Outcome { output: text, status }),
    }
}
