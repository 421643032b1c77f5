use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cli::{run, Binding, Bindings, CliError, Command, Fan, Format, RunConfig};

#[derive(Parser)]
#[command(name = "a4coh", version, about = "Exact computations for the toroidal compactifications of A4")]
struct Args {
    #[command(subcommand)]
    command: Cmd,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format: text, json or csv.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Euler characteristic of A4: an integer or `symbolic`.
    #[arg(long = "eA4", global = true, default_value = "symbolic")]
    ea4: String,
    /// Rank on the torus-rank-one stratum: 0, 1 or `symbolic`.
    #[arg(long, global = true, default_value = "symbolic")]
    epsilon: String,
    /// Rank of the unknown A2 group: 0 or `symbolic`.
    #[arg(long, global = true, default_value = "0")]
    r: String,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Orbit census of a fan, or classification of the cones in --input.
    Census {
        #[arg(long, default_value = "perfect")]
        fan: String,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Stabilizer in GL(4,Z) of a named cone or of the cone in --input.
    Stabilizer {
        #[arg(long)]
        cone: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Hodge-Euler polynomial of the torus-orbit stratum of a cone.
    Euler {
        #[arg(long)]
        cone: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Face lattice of a cone.
    Faces {
        #[arg(long)]
        cone: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Fibre suites: sigma3, sigmaI, sigmaII, sigma5, sigma6, rank2, beta3, deltas.
    Suite { name: String },
    /// Reproduced tables: beta4perf, E, beta4, beta3, beta2, beta2-fibre, beta1,
    /// jacobian, final, table2, purity, perfect, e1, ranks, manifest.
    Table { name: String },
    /// Runs the acceptance suite; exits nonzero if any criterion fails.
    Verify,
}

fn config(a: Args) -> Result<RunConfig, CliError> {
    let (command, input) = match a.command {
        Cmd::Census { fan, input } => (Command::Census { fan: fan.parse::<Fan>()? }, input),
        Cmd::Stabilizer { cone, input } => (Command::Stabilizer { cone }, input),
        Cmd::Euler { cone, input } => (Command::Euler { cone }, input),
        Cmd::Faces { cone, input } => (Command::Faces { cone }, input),
        Cmd::Suite { name } => (Command::Suite { name }, None),
        Cmd::Table { name } => (Command::Table { name }, None),
        Cmd::Verify => (Command::Verify, None),
    };
    let bindings = Bindings {
        ea4: Binding::parse(&a.ea4, &[])?,
        epsilon: Binding::parse(&a.epsilon, &[0, 1])?,
        r: Binding::parse(&a.r, &[0])?,
    };
    Ok(RunConfig { command, input, out: a.out, format: a.format.parse::<Format>()?, bindings, jobs: a.jobs })
}

fn main() -> ExitCode {
    let result = config(Args::parse()).and_then(|cfg| run(&cfg));
    match result {
        Ok(o) => {
            print!("{}", o.output);
            ExitCode::from(o.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
