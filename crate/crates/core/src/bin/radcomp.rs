use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use radcomp::decide::{verify_artifact, Prover, ProverConfig};
use radcomp::group::DEFAULT_SEARCH_BUDGET;
use radcomp::presentation::DEFAULT_MAX_COSETS;
use radcomp::{selftest, Error, RingParams};

/// Complements of 1 + J(R) in the unit group of Mat_n(Z/p^k).
///
/// JSON goes to stdout, a summary to stderr. Exit status: 0 when a complement
/// exists (or an artifact verifies), 1 when none exists (or verification
/// fails), 2 on error.
#[derive(Parser)]
#[command(name = "radcomp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Coset limit for presentation checks.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    /// Cap on candidate tuples in brute-force searches.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_BUDGET)]
    search_budget: u64,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    k: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<RingParams, Error> {
        RingParams::new(self.p, self.n, self.k)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide existence and attach evidence.
    Decide(ParamArgs),
    /// Emit a verified section.
    Witness(ParamArgs),
    /// Emit a nonexistence certificate.
    CertifyNo {
        #[command(flatten)]
        params: ParamArgs,
        /// Relator fixture to build the obstruction from.
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Re-check a witness, certificate or decision file.
    Verify { path: PathBuf },
    /// Decision grid.
    Table {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 5])]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        k_max: u32,
    },
    /// Run the quick reproduction checks.
    Selftest,
}

const EXISTS: u8 = 0;
const ABSENT: u8 = 1;
const FAILURE: u8 = 2;

fn emit<T: Serialize>(value: &T) -> Result<(), Error> {
    let json = serde_json::to_string_pretty(value).map_err(Error::from)?;
    println!("{json}");
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    let mut prover = Prover::new(ProverConfig {
        max_cosets: cli.max_cosets,
        search_budget: cli.search_budget,
    });
    match cli.command {
        Command::Decide(args) => {
            let d = prover.decide(&args.params()?)?;
            emit(&d)?;
            eprintln!("{}", d.summary());
            if let Some(c) = &d.citation {
                eprintln!("citation: {c}");
            }
            Ok(if d.exists { EXISTS } else { ABSENT })
        }
        Command::Witness(args) => match prover.witness(&args.params()?) {
            Ok(w) => {
                emit(&w)?;
                eprintln!("section with {} generator images", w.generator_images.len());
                Ok(EXISTS)
            }
            Err(e @ Error::NoComplement { .. }) => {
                eprintln!("{e}");
                Ok(ABSENT)
            }
            Err(e) => Err(e),
        },
        Command::CertifyNo { params, fixture } => {
            match prover.certify_no(&params.params()?, fixture.as_deref()) {
                Ok(c) => {
                    emit(&c)?;
                    eprintln!(
                        "no complement: fixture {} at n={}, {} core rows",
                        c.fixture,
                        c.lemma.from.n(),
                        c.obstruction.core_rows().len()
                    );
                    Ok(ABSENT)
                }
                Err(e @ Error::ComplementExists { .. }) => {
                    eprintln!("{e}");
                    Ok(EXISTS)
                }
                Err(e @ Error::NotCertifiable { .. }) => {
                    let d = prover.decide(&params.params()?)?;
                    emit(&d)?;
                    eprintln!("{e}");
                    Ok(ABSENT)
                }
                Err(e) => Err(e),
            }
        }
        Command::Verify { path } => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let report = verify_artifact(&text)?;
            emit(&report)?;
            eprintln!(
                "{:?}: {}",
                report.kind,
                if report.valid { "valid" } else { "INVALID" }
            );
            Ok(if report.valid { EXISTS } else { ABSENT })
        }
        Command::Table {
            n_max,
            primes,
            k_max,
        } => {
            let rows = prover.table(n_max, &primes, k_max)?;
            let mut ok = true;
            for d in &rows {
                let backed = match &d.evidence {
                    Some(e) => e.verify(&d.params)?,
                    None => d.citation.is_some(),
                };
                ok &= backed;
                eprintln!(
                    "{}{}",
                    d.summary(),
                    if backed { "" } else { "  [UNVERIFIED]" }
                );
            }
            emit(&rows)?;
            Ok(if ok { EXISTS } else { ABSENT })
        }
        Command::Selftest => {
            let checks = selftest::run(&mut prover);
            for c in &checks {
                eprintln!(
                    "{} {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            emit(&checks)?;
            Ok(if checks.iter().all(|c| c.passed) {
                EXISTS
            } else {
                ABSENT
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(FAILURE)
        }
    }
}
