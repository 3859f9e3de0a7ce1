use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use hz_dihedral::dihedral::{Grading, GroupSpec};
use hz_dihedral::oracle::{pi_mackey_with_budget, Budget, OracleError};
use hz_dihedral::ring::{self, Mono};
use hz_dihedral::service::json::{LevelJson, MackeyJson};
use hz_dihedral::service::table::{build_table, render, Format, TableTheory};
use hz_dihedral::service::{verify, Cache, Suite, VerifyError, VerifyOptions, Window};

#[derive(Parser)]
#[command(name = "hzd", version, about = "RO(D_2p)-graded homotopy of HZ")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Prime {
    /// An odd prime.
    #[arg(long, default_value_t = 3)]
    p: u64,
}

#[derive(Subcommand)]
enum Command {
    /// The G-level group at a grading, from the closed form.
    Group {
        #[command(flatten)]
        prime: Prime,
        /// a,b,c for a + bα + cγ
        #[arg(long, allow_hyphen_values = true)]
        grading: String,
    },
    /// The full Mackey functor at a grading.
    Mackey {
        #[command(flatten)]
        prime: Prime,
        #[arg(long, allow_hyphen_values = true)]
        grading: String,
        /// Compute cellularly instead of from the closed form.
        #[arg(long)]
        oracle: bool,
        /// Largest total rank the oracle may build.
        #[arg(long)]
        max_rank: Option<usize>,
    },
    /// Multiplies two homogeneous elements.
    Mult {
        #[command(flatten)]
        prime: Prime,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// Also print the family of each term of the product.
        #[arg(long)]
        families: bool,
    },
    /// Runs acceptance suites over a window and prints a JSON report.
    Verify {
        #[command(flatten)]
        prime: Prime,
        #[arg(long, allow_hyphen_values = true, default_value = "-6..6,-3..3,-3..3")]
        window: String,
        /// Worker threads, 0 for all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value = "all")]
        suite: String,
        /// Cache directory, overriding HZD_CACHE_DIR.
        #[arg(long)]
        cache_dir: Option<String>,
        #[arg(long)]
        no_cache: bool,
        #[arg(long)]
        max_rank: Option<usize>,
    },
    /// Renders a table of values over a range of gradings.
    Table {
        #[command(flatten)]
        prime: Prime,
        #[arg(long, default_value = "json")]
        format: String,
        /// aMin..aMax for integer gradings, or aMin..aMax,bMin..bMax,cMin..cMax
        #[arg(long, allow_hyphen_values = true, default_value = "-4..4")]
        range: String,
        /// `pi` for every level, or one theory of the assembly
        #[arg(long, default_value = "pi")]
        theory: String,
    },
}

const MAX_WINDOW: usize = 100_000;

enum Failure {
    Input(String),
    Budget(String),
    Mismatch,
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Budget(e.to_string())
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

#[derive(Serialize)]
struct GroupJson {
    p: u32,
    grading: [i64; 3],
    levels: BTreeMap<String, LevelJson>,
    families: Vec<String>,
}

fn spec_and_grading(prime: &Prime, grading: &str) -> Result<(GroupSpec, Grading), Failure> {
    let spec = GroupSpec::new(prime.p).map_err(input)?;
    let g: Grading = grading.parse().map_err(input)?;
    Ok((spec, g))
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Group { prime, grading } => {
            let (spec, g) = spec_and_grading(&prime, &grading)?;
            let piece = ring::group_at(spec, g);
            let group = piece.group();
            let level = LevelJson {
                free_rank: group.free_rank,
                torsion: group.torsion_u64(),
                basis: piece.labels(),
                orders: piece.orders().iter().map(|o| u64::try_from(o).expect("small orders")).collect(),
            };
            print_json(&GroupJson {
                p: spec.p(),
                grading: g.as_array(),
                levels: BTreeMap::from([("G".to_string(), level)]),
                families: piece.basis.iter().map(|m| m.family().to_string()).collect(),
            });
        }
        Command::Mackey {
            prime,
            grading,
            oracle,
            max_rank,
        } => {
            let (spec, g) = spec_and_grading(&prime, &grading)?;
            let (ans, source) = if oracle {
                let budget = max_rank.map_or_else(Budget::default, |r| Budget { max_total_rank: r });
                (pi_mackey_with_budget(spec, g, budget)?, "oracle")
            } else {
                (ring::mackey_at(spec, g), "closed_form")
            };
            print_json(&MackeyJson::from_answer(&ans, source));
        }
        Command::Mult { prime, x, y, families } => {
            let spec = GroupSpec::new(prime.p).map_err(input)?;
            let p = spec.p() as u64;
            let x = ring::parse_element(p, &x).map_err(input)?;
            let y = ring::parse_element(p, &y).map_err(input)?;
            let z = x.multiply(p, &y);
            println!("{z}");
            if families {
                for m in z.monomials() {
                    let k = m.kind(p).expect("products are classified");
                    let group = if k.is_free() { "Z".to_string() } else { format!("Z/{}", k.torsion) };
                    println!("{m}: {} {group} prefix {}", m.family(), k.prefix);
                }
            }
        }
        Command::Verify {
            prime,
            window,
            jobs,
            suite,
            cache_dir,
            no_cache,
            max_rank,
        } => {
            let spec = GroupSpec::new(prime.p).map_err(input)?;
            let window: Window = window.parse().map_err(input)?;
            if window.len() > MAX_WINDOW {
                return Err(Failure::Input(format!("window of {} gradings is above the cap {MAX_WINDOW}", window.len())));
            }
            let suites = Suite::parse_list(&suite).map_err(Failure::Input)?;
            let cache = match (no_cache, cache_dir) {
                (true, _) => None,
                (false, Some(d)) => Some(Cache::new(d)),
                (false, None) => Cache::from_env(),
            };
            let mut opts = VerifyOptions::new(spec, window, suites);
            opts.jobs = jobs;
            if let Some(r) = max_rank {
                opts.budget = Budget { max_total_rank: r };
            }
            let report = verify(&opts, cache.as_ref()).map_err(|e| match e {
                VerifyError::Pool(m) => Failure::Input(m),
                e => Failure::Budget(e.to_string()),
            })?;
            print_json(&report);
            if !report.passed() {
                return Err(Failure::Mismatch);
            }
        }
        Command::Table {
            prime,
            format,
            range,
            theory,
        } => {
            let spec = GroupSpec::new(prime.p).map_err(input)?;
            let format: Format = format.parse().map_err(Failure::Input)?;
            let window: Window = range.parse().map_err(input)?;
            if window.len() > MAX_WINDOW {
                return Err(Failure::Input(format!("range of {} gradings is above the cap {MAX_WINDOW}", window.len())));
            }
            let theory: TableTheory = theory.parse().map_err(Failure::Input)?;
            print!("{}", render(&build_table(spec, &window, theory), format));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
