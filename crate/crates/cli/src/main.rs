use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use splitjac::Error;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "splitjac", version, about = "Genus-2 curves with split Jacobians: covers, invariants, braid orbits")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel stages.
    #[arg(long, global = true, env = "SPLITJAC_THREADS", value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    /// Seed for every random choice; recorded in JSON output.
    #[arg(long, global = true, default_value_t = 42)]
    rng: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Igusa invariants of y^2 = f(x).
    Igusa(IgusaArgs),
    /// Ramification catalogue for a degree, or validation of one profile.
    Ramification(RamificationArgs),
    /// Nielsen classes and braid orbits.
    Braid(BraidArgs),
    /// Member of the degree-4 degenerate family.
    Family4(Family4Args),
    /// Numerically solve for Type I covers.
    CoverSolve(CoverSolveArgs),
    /// Singular relations of a point in the Siegel upper half space.
    Humbert(HumbertArgs),
}

#[derive(Args, Debug)]
struct IgusaArgs {
    /// Coefficients of f, constant term first, e.g. "0,-1,0,0,0,1" for x^5 - x.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
}

#[derive(Args, Debug)]
struct RamificationArgs {
    #[arg(long)]
    degree: usize,
    /// Validate this profile instead of printing the catalogue, e.g. "2^3,2^3,2^3,2^4,2".
    #[arg(long)]
    profile: Option<String>,
}

#[derive(Args, Debug)]
struct BraidArgs {
    #[arg(long, default_value_t = 8)]
    degree: usize,
    /// Cycle types in order, e.g. "2^3,2^3,4.2,2^4".
    #[arg(long, conflicts_with = "table1")]
    types: Option<String>,
    /// Attach the genus of each orbit (4 branch points only).
    #[arg(long)]
    genus: bool,
    #[arg(long, value_enum, default_value = "pure-lambda-line")]
    convention: commands::Convention,
    /// Recompute every row of the stored degree-8 orbit table.
    #[arg(long)]
    table1: bool,
    /// With --table1: exit 3 unless every row matches.
    #[arg(long, requires = "table1")]
    check: bool,
    /// Alternative table file.
    #[arg(long, requires = "table1")]
    table: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
struct Family4Args {
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    /// Evaluate both locus relations exactly; exit 3 if either is nonzero.
    #[arg(long)]
    verify_locus: bool,
}

#[derive(Args, Debug)]
struct CoverSolveArgs {
    #[arg(long)]
    degree: usize,
    #[arg(long, default_value_t = 500)]
    seeds: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 200)]
    max_iter: usize,
    /// Branch value with n/2 double points, e.g. "-1.3+0.7i".
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// Branch value with one double point.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
}

#[derive(Args, Debug)]
struct HumbertArgs {
    /// Entries z1,z2,z3, e.g. "i,1/2,2i".
    #[arg(long, allow_hyphen_values = true)]
    tau: String,
    #[arg(long, default_value_t = 10)]
    height: i64,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<i128>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

/// Outcome of a subcommand: payload plus whether its checks held.
pub struct Report {
    pub schema: &'static str,
    pub result: Value,
    pub text: String,
    pub verified: bool,
}

impl Report {
    pub fn new(schema: &'static str, result: impl Serialize, text: String) -> Self {
        Self {
            schema,
            result: serde_json::to_value(result).expect("serializable"),
            text,
            verified: true,
        }
    }
}

const EXIT_DOMAIN: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let outcome = match &cli.command {
        Command::Igusa(a) => commands::igusa(&a.coeffs),
        Command::Ramification(a) => commands::ramification(a.degree, a.profile.as_deref()),
        Command::Braid(a) => {
            if a.table1 {
                commands::braid_table(a.table.as_deref(), a.check)
            } else if let Some(types) = &a.types {
                commands::braid(a.degree, types, a.genus.then_some(a.convention))
            } else {
                eprintln!("error: braid needs --types or --table1");
                return ExitCode::from(EXIT_USAGE);
            }
        }
        Command::Family4(a) => commands::family4(&a.b, a.verify_locus),
        Command::CoverSolve(a) => commands::cover_solve(
            a.degree,
            a.seeds,
            a.tol,
            a.max_iter,
            cli.rng,
            a.s.as_deref(),
            a.t.as_deref(),
        ),
        Command::Humbert(a) => commands::humbert(&a.tau, a.height, a.delta, a.tol),
    };
    match outcome {
        Ok(report) => {
            if cli.json {
                let doc = json!({ "schema": report.schema, "rng_seed": cli.rng, "result": report.result });
                println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            } else {
                print!("{}", report.text);
            }
            if report.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Domain(_) => EXIT_DOMAIN,
                Error::Parse(_) => EXIT_USAGE,
                Error::Inconclusive(_) => EXIT_VERIFY,
            })
        }
    }
}
