//! `holaff`: command-line front end for holaff-core.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use holaff_core::affine::{affine_order, ffrak_of_autgroup, orbit_statistics, AffineMap};
use holaff_core::autom::{automorphism_group, order_statistics};
use holaff_core::group::{derived_series, solvable_radical, structural_invariants};
use holaff_core::linfp::{
    char_poly, classify_f_large_rcf, classify_large_order_rcf, matrix_order_rcf, primary_rcf,
    singer, singer_poly, MatFp,
};
use holaff_core::verify::{self, CheckId, CheckResult, Config, Format, Status, Subject};
use holaff_core::{Error, Group};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "holaff", version, about = "Affine maps of finite groups")]
struct Cli {
    /// JSON configuration file.
    #[arg(long, global = true, env = "HOLAFF_CONFIG")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural data of a group.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Automorphism group summary.
    Aut { subject: String },
    /// 𝔉(G), 𝔣(G) and maffo(G) with witnesses.
    Ffrak { subject: String },
    /// Largest affine-map order with a witness.
    Maffo { subject: String },
    /// Cycle structure of one affine map.
    Orbit {
        subject: String,
        /// Index into the sorted automorphism list (0 is the identity).
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        g: usize,
    },
    /// Matrix queries over 𝔽_p.
    Matrix {
        #[arg(value_enum)]
        action: MatrixAction,
        #[arg(long)]
        p: u64,
        /// Rows separated by `;`, entries by `,`.
        #[arg(long)]
        matrix: String,
    },
    /// Singer cycle of `GL(n, p)`.
    Singer {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
    },
    /// Run the verification suite.
    Verify {
        /// Check id; repeatable. Defaults to every theorem check.
        #[arg(long = "check")]
        checks: Vec<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run an open-question experiment.
    Experiments {
        #[arg(value_enum)]
        which: Experiment,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Subcommand)]
enum GroupAction {
    Info { subject: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixAction {
    Rcf,
    Order,
    Classify,
}

#[derive(Clone, Copy, ValueEnum)]
enum Experiment {
    Q1,
    Q2,
    Q3,
}

#[derive(Args)]
struct RunArgs {
    /// JSON array of subjects; defaults to the built-in catalog.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutFormat>,
    /// Base seed for sampled checks; recorded in every result.
    #[arg(long)]
    seed: Option<u64>,
    /// Include the heavy groups in the default catalog.
    #[arg(long)]
    heavy: bool,
    /// Suppress per-job progress lines on stderr.
    #[arg(long)]
    quiet: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

enum Failure {
    Compute(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(e.into())
    }
}

type CliResult<T> = Result<T, Failure>;

fn load_config(path: Option<&PathBuf>) -> CliResult<Config> {
    Ok(match path {
        Some(p) => Config::from_path(p)?,
        None => Config::default(),
    })
}

fn load_group(subject: &str, config: &Config) -> CliResult<Group> {
    Ok(subject.parse::<Subject>()?.load(config.max_order)?)
}

fn print_json(v: &Value) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).map_err(Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn ratio(r: num_rational::Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn group_info(g: &Group) -> Value {
    let inv = structural_invariants(g);
    let ds = derived_series(g);
    let rad = solvable_radical(g);
    json!({
        "label": g.label(),
        "order": g.order(),
        "exponent": inv.exponent,
        "abelian": inv.is_abelian,
        "nilpotent": inv.is_nilpotent,
        "solvable": ds.is_solvable(),
        "derived_length": ds.derived_length,
        "derived_series_orders": ds.terms.iter().map(|t| t.order()).collect::<Vec<_>>(),
        "center_order": inv.center.order(),
        "radical_order": rad.order(),
        "conjugacy_classes": inv.conjugacy_classes.len(),
        "commuting_probability": ratio(inv.commuting_probability),
    })
}

fn matrix_query(action: MatrixAction, p: u64, text: &str) -> CliResult<Value> {
    let m = MatFp::parse(p, text)?;
    let rcf = primary_rcf(&m)?;
    Ok(match action {
        MatrixAction::Rcf => json!({
            "p": p,
            "n": rcf.n(),
            "char_poly": char_poly(&m).to_string(),
            "blocks": rcf.blocks().iter().map(|b| json!({"poly": b.poly.to_string(), "e": b.e})).collect::<Vec<_>>(),
        }),
        MatrixAction::Order => json!(matrix_order_rcf(&rcf)?),
        MatrixAction::Classify => {
            let large_f = if rcf.n() >= 2 {
                serde_json::to_value(classify_f_large_rcf(&rcf)?).map_err(Error::from)?
            } else {
                Value::Null
            };
            json!({
                "large_order": serde_json::to_value(classify_large_order_rcf(&rcf)?).map_err(Error::from)?,
                "large_f": large_f,
            })
        }
    })
}

fn write_output(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn run_suite(
    checks: &[CheckId],
    args: &RunArgs,
    mut config: Config,
) -> CliResult<(Vec<CheckResult>, Config)> {
    if let Some(j) = args.jobs {
        config.jobs = j;
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(f) = args.format {
        config.format = match f {
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
        };
    }
    config.heavy |= args.heavy;
    let catalog = match &args.catalog {
        Some(p) => verify::load_catalog(p)?,
        None => verify::default_catalog(&config),
    };
    let quiet = args.quiet;
    let progress = move |label: &str| {
        if !quiet {
            eprintln!("done {label}");
        }
    };
    let results = verify::run_with_progress(&config, checks, &catalog, &progress)?;
    Ok((results, config))
}

fn q2_scatter(results: &[CheckResult]) -> String {
    let mut out = String::from("subject,f,rho,commuting_probability\n");
    for r in results.iter().filter(|r| r.status == Status::Pass) {
        let v = |k: &str| r.values.get(k).cloned().unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.subject,
            v("f"),
            v("rho"),
            v("commuting_probability")
        ));
    }
    out
}

fn dispatch(cli: Cli) -> CliResult<()> {
    let config = load_config(cli.config.as_ref())?;
    match cli.command {
        Command::Group {
            action: GroupAction::Info { subject },
        } => print_json(&group_info(&load_group(&subject, &config)?)),
        Command::Aut { subject } => {
            let g = load_group(&subject, &config)?;
            let aut = automorphism_group(&g, config.aut_options())?;
            let stats = order_statistics(&aut);
            print_json(&json!({
                "label": g.label(),
                "order": g.order(),
                "aut_order": aut.len(),
                "inner": aut.inner_count(),
                "ord_set": stats.ord_set,
                "mao": stats.mao,
                "generators": aut.generators().iter().map(|&i| aut.elements()[i].images()).collect::<Vec<_>>(),
            }))
        }
        Command::Ffrak { subject } => {
            let g = load_group(&subject, &config)?;
            let report = ffrak_of_autgroup(&automorphism_group(&g, config.aut_options())?);
            print_json(&serde_json::to_value(report).map_err(Error::from)?)
        }
        Command::Maffo { subject } => {
            let g = load_group(&subject, &config)?;
            let report = ffrak_of_autgroup(&automorphism_group(&g, config.aut_options())?);
            print_json(
                &json!({"label": report.label, "order": report.order, "maffo": report.maffo, "witness": report.witness}),
            )
        }
        Command::Orbit { subject, alpha, g } => {
            let grp = load_group(&subject, &config)?;
            let aut = automorphism_group(&grp, config.aut_options())?;
            let a = aut.elements().get(alpha).ok_or_else(|| {
                Error::OutOfRange(format!("alpha index {alpha} >= {}", aut.len()))
            })?;
            if g >= grp.order() {
                return Err(Error::OutOfRange(format!("element {g} >= {}", grp.order())).into());
            }
            let map = AffineMap::new(a.clone(), g);
            let stats = orbit_statistics(&grp, &map);
            print_json(&json!({
                "alpha": a.images(),
                "g": g,
                "order": affine_order(&grp, &map),
                "cycle_lengths": stats.lengths,
                "longest_cycle": stats.max,
                "shortest_cycle": stats.min,
            }))
        }
        Command::Matrix { action, p, matrix } => print_json(&matrix_query(action, p, &matrix)?),
        Command::Singer { p, n } => {
            let m = singer(p, n)?;
            let order = matrix_order_rcf(&primary_rcf(&m)?)?;
            print_json(
                &json!({"p": p, "n": n, "poly": singer_poly(p, n)?.to_string(), "matrix": m.to_string(), "order": order}),
            )
        }
        Command::Verify { checks, run } => {
            let ids = if checks.is_empty() {
                CheckId::theorem_checks()
            } else {
                checks
                    .iter()
                    .map(|c| c.parse())
                    .collect::<Result<Vec<CheckId>, _>>()?
            };
            let (results, config) = run_suite(&ids, &run, config)?;
            write_output(&verify::render(&results, config.format)?, run.out.as_ref())?;
            let summary = verify::summarize(&results);
            eprintln!(
                "{}",
                summary
                    .iter()
                    .map(|(s, c)| format!("{s}: {c}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            if results.iter().any(CheckResult::is_fail) {
                return Err(Failure::Verification);
            }
            Ok(())
        }
        Command::Experiments { which, run } => {
            let id = match which {
                Experiment::Q1 => CheckId::Q1Metabelian,
                Experiment::Q2 => CheckId::Q2Commuting,
                Experiment::Q3 => CheckId::Q3CycleLength,
            };
            let (results, config) = run_suite(&[id], &run, config)?;
            let text = match which {
                Experiment::Q2 if run.format.is_none() => q2_scatter(&results),
                _ => verify::render(&results, config.format)?,
            };
            write_output(&text, run.out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(3),
    }
}
