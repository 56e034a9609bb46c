//! `moduli` — command-line access to the exact level-structure engines.
//!
//! Every subcommand prints one JSON report to stdout and exits with
//!
//! * `0` on success,
//! * `1` when a verification ran to completion and reported failure,
//! * `2` on usage errors: bad flags, unreadable inputs, or violated
//!   preconditions (non-prime characteristic, level mismatches, scale
//!   bounds).
//!
//! Reports are pure functions of the invocation: identical inputs produce
//! byte-identical output. The environment variable `MODULI_MAX_RANK`
//! (default 32) bounds every p-power scale the engines will touch.

mod commands;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(
    name = "moduli",
    version,
    about = "Exact component bookkeeping for level-structure moduli at desk scale"
)]
pub struct Cli {
    /// Worker threads for independent oracle recomputations (1 = serial).
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every subgroup of (Z/N)².
    Subgroups {
        /// Level N (bounded by MODULI_MAX_RANK, default 32).
        #[arg(long)]
        level: u64,
    },
    /// Tabulate the label sets L_K and the component classes Λ at a
    /// prime-power level.
    Labels {
        /// Level N = p^n with n ≥ 1.
        #[arg(long)]
        level: u64,
        /// Residue characteristic p.
        #[arg(long = "char", value_name = "P")]
        characteristic: u64,
    },
    /// Stratified locus ranks, optionally cross-checked against the
    /// full-set-of-sections oracle.
    Strata {
        /// Which locus to stratify.
        #[arg(long, value_enum)]
        kind: StrataKind,
        /// Residue characteristic p.
        #[arg(long = "char", value_name = "P")]
        characteristic: u64,
        /// Level exponent n (the level is p^n).
        #[arg(long)]
        exp: u32,
        /// Generators of K ≤ (Z/p^n)² as "x1,y1[;x2,y2;…]" (gK only;
        /// default: the trivial subgroup).
        #[arg(long = "K", value_name = "GENS")]
        k: Option<String>,
        /// Recompute every stratum rank with the enumeration oracle and
        /// report agreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Build a component graph, run its consistency checks, and emit DOT
    /// and JSON renderings.
    Graph {
        /// Which family of graphs to build.
        #[arg(long, value_enum)]
        family: Family,
        /// Level N (for the h family, N must equal the characteristic).
        #[arg(long)]
        level: u64,
        /// Residue characteristic p.
        #[arg(long = "char", value_name = "P")]
        characteristic: u64,
        /// Annotate components with boundary data (h1 family only).
        #[arg(long)]
        compactified: bool,
        /// Write the DOT rendering to this path.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Write the JSON rendering to this path.
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Verify the torsor structure of a quotient-by-kernel construction
    /// on a fixture curve.
    VerifyTorsor {
        /// Fixture TOML describing the curve and its kernel point Q.
        #[arg(long, value_name = "FILE")]
        fixture: PathBuf,
        /// Order of the cyclic kernel.
        #[arg(long = "N", value_name = "N")]
        n: u64,
    },
    /// Compute a point's (a, b) component label and check the
    /// level-raising shift (a, b) → (a+1, b).
    VerifyLabel {
        /// Fixture TOML describing the curve and its named points.
        #[arg(long, value_name = "FILE")]
        fixture: PathBuf,
        /// Name of the point inside the fixture.
        #[arg(long, value_name = "NAME")]
        point: String,
        /// Level exponent n at which to read the label.
        #[arg(long)]
        exp: u32,
    },
    /// Evaluate a level-structure predicate on a polygon fiber.
    Polygon {
        /// Number of sides of the polygon.
        #[arg(long)]
        d: u64,
        /// Level N of the structure.
        #[arg(long)]
        level: u64,
        /// Which predicate to evaluate.
        #[arg(long, value_enum)]
        check: PolygonCheck,
        /// Map file (JSON) naming the field and the generator images.
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
    /// Raw combinatorial oracles.
    Oracle {
        #[command(subcommand)]
        oracle: OracleCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Full-set-of-sections generator rank, computed by exhaustive linear
    /// algebra — no closed-form identity involved.
    Fss {
        /// Residue characteristic p.
        #[arg(long = "char", value_name = "P")]
        characteristic: u64,
        /// Multiplicative exponent a (the μ_{p^a} part).
        #[arg(long)]
        a: u32,
        /// Étale cofactor exponent e.
        #[arg(long)]
        e: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrataKind {
    Gamma1,
    #[value(name = "gK")]
    GK,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    H1,
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolygonCheck {
    Gamma1,
    Gamma,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let text =
                serde_json::to_string_pretty(&out.report).expect("reports always serialize");
            // A closed pipe (e.g. `moduli … | head`) truncates the report
            // but must not change the verdict carried by the exit code.
            use std::io::Write as _;
            let _ = writeln!(std::io::stdout(), "{text}");
            if out.ok { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<commands::CommandOutput, commands::CliError> {
    match cli.command {
        Command::Subgroups { level } => commands::subgroups(level),
        Command::Labels { level, characteristic } => commands::labels(level, characteristic),
        Command::Strata { kind, characteristic, exp, k, oracle } => {
            commands::strata(kind, characteristic, exp, k.as_deref(), oracle, cli.jobs)
        }
        Command::Graph { family, level, characteristic, compactified, dot, json } => {
            commands::graph(
                family,
                level,
                characteristic,
                compactified,
                dot.as_deref(),
                json.as_deref(),
            )
        }
        Command::VerifyTorsor { fixture, n } => commands::verify_torsor(&fixture, n),
        Command::VerifyLabel { fixture, point, exp } => {
            commands::verify_label(&fixture, &point, exp)
        }
        Command::Polygon { d, level, check, input } => commands::polygon(d, level, check, &input),
        Command::Oracle { oracle } => commands::oracle(oracle),
    }
}
