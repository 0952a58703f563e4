mod expr;
mod instance;
mod maps;

use clap::{Parser, Subcommand};
use instance::InstanceArgs;
use laysem_core::axioms::{full_report, surpass_l_compat_suite, CheckConfig};
use laysem_core::check::{DEFAULT_BUDGET, DEFAULT_SEED};
use laysem_core::tropical::{kapranov_check, parse_roots, tropicalize_poly, PuiseuxPoly};
use laysem_core::{CheckReport, Error};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact layered semirings: axiom checks, maps, truncations and
/// tropicalization.
#[derive(Parser, Debug)]
#[command(name = "laysem", version)]
struct Cli {
    #[command(flatten)]
    inst: InstanceArgs,
    /// Seed for sampled checks
    #[arg(long, env = "LAYSEM_SEED", default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Number of samples per law when a carrier is too large to enumerate
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    budget: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Semiring laws, layered axioms, surpassing and Frobenius suites
    CheckAxioms {
        /// Also check compatibility of the surpassing relation with + and *
        #[arg(long)]
        surpass_l_compat: bool,
    },
    /// Run a morphism checker on a builtin map or a table file
    CheckMap {
        #[arg(long, value_enum)]
        kind: maps::Kind,
        /// Builtin name or a file of `<src> -> <dst>` lines
        #[arg(long)]
        map: String,
    },
    /// Tropicalize a Puiseux polynomial and check its roots
    Tropicalize {
        /// File of `lambda^<k> : <series>` lines
        #[arg(long)]
        poly: PathBuf,
        /// File with one root series per line
        #[arg(long)]
        roots: Option<PathBuf>,
    },
    /// Print the instance after the requested truncations
    Truncate,
    /// Evaluate a fully parenthesized expression such as `(3@1 + 3@1) * 2@1`
    Eval { expr: String },
}

enum Failure {
    /// Bad input or configuration.
    Usage(String),
    /// A check failed.
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotARoot(_) => {
                eprintln!("laysem: {e}");
                Failure::Check
            }
            e => Failure::Usage(e.to_string()),
        }
    }
}

fn emit(rep: &CheckReport) -> Result<(), Failure> {
    print!("{}", rep.render());
    if rep.all_pass() {
        Ok(())
    } else {
        eprintln!("laysem: {} of {} checks failed", rep.failures().len(), rep.len());
        Err(Failure::Check)
    }
}

fn read(p: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = CheckConfig { budget: cli.budget, seed: cli.seed };
    match cli.cmd {
        Cmd::CheckAxioms { surpass_l_compat } => {
            let r = cli.inst.build()?;
            let mut rep = full_report(&r, cfg);
            if surpass_l_compat {
                rep.extend(surpass_l_compat_suite(&r, cfg));
            }
            emit(&rep)
        }
        Cmd::CheckMap { kind, map } => emit(&maps::check_map(kind, &map, &cli.inst, cfg)?),
        Cmd::Tropicalize { poly, roots } => {
            let r = cli.inst.build()?;
            let f = PuiseuxPoly::parse_file(&read(&poly)?).map_err(|e| Failure::Usage(format!("{}: {e}", poly.display())))?;
            if f.is_zero() {
                return Err(Failure::Usage(format!("{}: the zero polynomial has no tropicalization", poly.display())));
            }
            print!("{}", tropicalize_poly(&r, &f)?);
            let roots = match roots {
                Some(p) => parse_roots(&read(&p)?).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
                None => Vec::new(),
            };
            if roots.is_empty() {
                return Ok(());
            }
            emit(&kapranov_check(&r, &f, &roots)?)
        }
        Cmd::Truncate => {
            if cli.inst.nu_trunc.is_none() && cli.inst.sort_trunc.is_none() {
                return Err(Failure::Usage("truncate needs --nu-trunc or --sort-trunc".into()));
            }
            print!("{}", instance::serialize(&cli.inst.build()?));
            Ok(())
        }
        Cmd::Eval { expr } => {
            let r = cli.inst.build()?;
            println!("{}", expr::eval(&r, &expr)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("laysem: {m}");
            ExitCode::from(2)
        }
    }
}
