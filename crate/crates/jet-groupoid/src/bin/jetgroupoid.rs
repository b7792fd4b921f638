//! Command-line front end: partition enumeration, seeded verification
//! runs, and jet arithmetic on JSON files.
//!
//! Exit codes: 0 on success, 1 when a verified property or image check
//! fails, 2 on usage or schema errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use jet_groupoid::connection::ChristoffelGerm;
use jet_groupoid::error::Error;
use jet_groupoid::germ::MatrixGerm;
use jet_groupoid::jets::TrivializedJet;
use jet_groupoid::lie::GroupTag;
use jet_groupoid::partitions::{
    compositions, count_c, count_n, enumerate_antilex, enumerate_p1plus, Partition,
};
use jet_groupoid::tol;
use jet_groupoid::verify::{run_verify, VerifyConfig, VerifyReport};

#[derive(Parser)]
#[command(
    name = "jetgroupoid",
    version,
    about = "Right-trivialized jets of Lie-group-valued maps: partition families, groupoid arithmetic, and property verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Enumerate a partition family with per-block-size counts
    Partitions {
        /// Which family to enumerate
        #[arg(long, value_enum)]
        kind: PartitionKind,
        /// Ground-set size (≥ 1)
        #[arg(long)]
        j: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the seeded property-verification suite and report residuals
    Verify {
        /// Group tag: gl(N), sl(2) or so(3)
        #[arg(long)]
        group: String,
        /// Base dimension (1..=4)
        #[arg(long)]
        n: usize,
        /// Jet order (1..=5)
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Residual tolerance for the germ-oracle identities
        /// (defaults to 1e-8, or JETGROUPOID_TOL when set)
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Jet arithmetic on JSON files
    #[command(subcommand)]
    Jet(JetCommand),
}

#[derive(Subcommand)]
enum JetCommand {
    /// Right-trivialize the k-jet of a germ file
    Trivialize {
        /// Germ JSON file
        input: PathBuf,
        /// Jet order (defaults to the germ truncation order)
        #[arg(long)]
        k: Option<usize>,
        /// Christoffel JSON file; when present the covariant
        /// trivialization is used instead of the flat one
        #[arg(long)]
        christoffel: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Fibered product of two jet files over the same base point
    Multiply {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Groupoid inverse of a jet file
    Inverse {
        input: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Check the second-order image condition skew(ξ⁽²⁾) = −½[ξ⁽¹⁾,ξ⁽¹⁾]
    CheckImage {
        input: PathBuf,
        /// Residual tolerance (defaults to 1e-9, or JETGROUPOID_TOL)
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Args)]
struct OutputArg {
    /// Write the result here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PartitionKind {
    P1plus,
    Antilex,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Table,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Commands::Partitions { kind, j, format } => cmd_partitions(kind, j, format),
        Commands::Verify {
            group,
            n,
            k,
            trials,
            seed,
            tol,
            format,
        } => cmd_verify(&group, n, k, trials, seed, tol, format),
        Commands::Jet(jet) => cmd_jet(jet),
    }
}

fn env_tol() -> Result<Option<f64>, Error> {
    match std::env::var("JETGROUPOID_TOL") {
        Ok(s) => s
            .parse::<f64>()
            .map(Some)
            .map_err(|_| Error::Unsupported(format!("JETGROUPOID_TOL is not a number: {s:?}"))),
        Err(_) => Ok(None),
    }
}

fn cmd_partitions(kind: PartitionKind, j: usize, format: Format) -> Result<ExitCode, Error> {
    let family = match kind {
        PartitionKind::P1plus => enumerate_p1plus(j)?,
        PartitionKind::Antilex => enumerate_antilex(j)?,
    };
    let signs: Option<Vec<i32>> = match kind {
        PartitionKind::P1plus => Some(
            family
                .iter()
                .map(Partition::sign)
                .collect::<Result<_, _>>()?,
        ),
        PartitionKind::Antilex => None,
    };
    let per_size: Vec<(Vec<usize>, String)> = compositions(j)
        .into_iter()
        .map(|sizes| {
            let count = match kind {
                PartitionKind::P1plus => count_c(&sizes),
                PartitionKind::Antilex => count_n(&sizes),
            }?;
            Ok((sizes, count.to_string()))
        })
        .collect::<Result<_, Error>>()?;

    match format {
        Format::Json => {
            let kind_name = match kind {
                PartitionKind::P1plus => "p1plus",
                PartitionKind::Antilex => "antilex",
            };
            let mut doc = json!({
                "kind": kind_name,
                "j": j,
                "count": family.len(),
                "partitions": family,
                "per_size_counts": per_size
                    .iter()
                    .map(|(sizes, count)| json!({"sizes": sizes, "count": count}))
                    .collect::<Vec<_>>(),
            });
            if let Some(signs) = &signs {
                doc["signs"] = json!(signs);
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
        Format::Table => {
            for (i, p) in family.iter().enumerate() {
                match &signs {
                    Some(signs) => println!("{p}  sign {:+}", signs[i]),
                    None => println!("{p}"),
                }
            }
            println!("total: {}", family.len());
            for (sizes, count) in &per_size {
                println!("sizes {sizes:?}: {count}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    group: &str,
    n: usize,
    k: usize,
    trials: usize,
    seed: u64,
    tol_flag: Option<f64>,
    format: Format,
) -> Result<ExitCode, Error> {
    let tag = GroupTag::parse(group)?;
    let mut cfg = VerifyConfig::new(tag, n, k, trials, seed);
    if let Some(t) = tol_flag.or(env_tol()?) {
        cfg = cfg.with_oracle_tolerance(t);
    }
    let report = run_verify(&cfg)?;
    print_report(&report, format);
    Ok(if report.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn print_report(report: &VerifyReport, format: Format) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(report).expect("json"));
        }
        Format::Table => {
            println!(
                "group {}  n {}  k {}  trials {}  seed {}",
                report.group, report.base_dim, report.order, report.trials, report.seed
            );
            for p in &report.properties {
                println!(
                    "{:<42} max residual {:>12.3e}  tol {:>8.1e}  {}",
                    p.name,
                    p.max_residual,
                    p.tolerance,
                    if p.pass { "pass" } else { "FAIL" }
                );
            }
            println!("all pass: {}", report.all_pass);
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn write_result<T: serde::Serialize>(value: &T, out: &OutputArg) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("results serialize");
    match &out.output {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_jet(cmd: JetCommand) -> Result<ExitCode, Error> {
    match cmd {
        JetCommand::Trivialize {
            input,
            k,
            christoffel,
            out,
        } => {
            let germ: MatrixGerm = read_json(&input)?;
            let order = k.unwrap_or_else(|| germ.truncation());
            let jet = match christoffel {
                Some(path) => {
                    let gamma: ChristoffelGerm = read_json(&path)?;
                    germ.trivialize_covariant(order, &gamma)?
                }
                None => germ.trivialize_flat(order)?,
            };
            write_result(&jet, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        JetCommand::Multiply { a, b, out } => {
            let a: TrivializedJet = read_json(&a)?;
            let b: TrivializedJet = read_json(&b)?;
            write_result(&a.multiply(&b)?, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        JetCommand::Inverse { input, out } => {
            let jet: TrivializedJet = read_json(&input)?;
            write_result(&jet.inverse()?, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        JetCommand::CheckImage {
            input,
            tol: tol_flag,
        } => {
            let jet: TrivializedJet = read_json(&input)?;
            let tolerance = tol_flag.or(env_tol()?).unwrap_or(tol::IMAGE);
            let residual = jet.image_residual_k2()?;
            let pass = residual <= tolerance;
            println!(
                "{}",
                json!({"in_image": pass, "residual": residual, "tolerance": tolerance})
            );
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
