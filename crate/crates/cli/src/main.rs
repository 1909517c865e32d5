use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kclique::bench::{run_bench, write_csv, BenchConfig};
use kclique::cliques::{collect_k_cliques, DEFAULT_ORACLE_BUDGET};
use kclique::io::{parse_edge_list, write_edge_list, write_tuples};
use kclique::matrix::DEFAULT_MATRIX_MAX_N;
use kclique::methods::{edge_count_detect, triangle_method_detect, DEFAULT_H_VERTEX_BUDGET};
use kclique::triangles::collect_triangles;
use kclique::{generate, run_count, Algo, CountOptions, Error, GeneratorCertificate, Graph, Limits, TriangleAlgo};
use serde::Serialize;

mod models;
mod verify;

use models::ModelArgs;
use verify::{verify, VerifyOptions};

/// Triangle and K_l listing, counting and detection.
#[derive(Parser, Debug)]
#[command(name = "kclique", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write `<out>.el` and its certificate `<out>.cert.json`.
    Generate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print every K_l (or one witness, for the detection algorithms) as
    /// sorted vertex tuples, one per line.
    List {
        input: PathBuf,
        /// hybrid, cn, ir, edge-hash, brute-force, kclique, triangle-method
        /// (detect one K_l) or edge-count (detect one K_{4j})
        #[arg(long, default_value = "kclique")]
        algo: String,
        #[arg(long, default_value_t = 3)]
        l: usize,
        #[arg(long)]
        j: Option<usize>,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count K_l and print a JSON report.
    Count {
        input: PathBuf,
        /// hybrid, cn, ir, edge-hash, matrix, kclique, extension or triangle-method
        #[arg(long)]
        algo: Algo,
        #[arg(long, default_value_t = 3)]
        l: usize,
        /// Extension split; defaults to l - 3 for l > 5, else 2.
        #[arg(long)]
        l1: Option<usize>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[command(flatten)]
        limits: LimitArgs,
        /// Report millis as 0 so repeated runs are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
    /// Cross-check every algorithm on one graph, plus its certificate.
    Verify {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        l_max: usize,
        /// Certificate to compare against; `<input stem>.cert.json` is used
        /// when present.
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Run a model grid against several algorithms and emit CSV.
    Bench {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_delimiter = ',', default_value = "hybrid")]
        algo: Vec<Algo>,
        #[arg(long, default_value_t = 3)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[command(flatten)]
        limits: LimitArgs,
        /// Output path; stdout when absent.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct LimitArgs {
    #[arg(long, default_value_t = DEFAULT_MATRIX_MAX_N)]
    matrix_max_n: usize,
    #[arg(long, default_value_t = DEFAULT_H_VERTEX_BUDGET)]
    h_budget: usize,
    #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
    oracle_budget: u64,
}

impl From<LimitArgs> for Limits {
    fn from(a: LimitArgs) -> Self {
        Limits {
            matrix_max_n: a.matrix_max_n,
            h_vertex_budget: a.h_budget,
            oracle_budget: a.oracle_budget,
        }
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: String,
}

enum Failure {
    Error(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Error(Error::Io(e))
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(3),
        Err(Failure::Error(e)) => {
            log::error!("{e}");
            let report = ErrorReport {
                error: e.kind(),
                message: e.to_string(),
            };
            println!("{}", serde_json::to_string(&report).expect("error report serializes"));
            match e {
                Error::Parse { .. } | Error::MalformedInput(_) | Error::Io(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn load(path: &Path) -> Result<Graph, Error> {
    let file = File::open(path).map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    let (g, report) = parse_edge_list(BufReader::new(file))?;
    if report.self_loops + report.duplicates > 0 || report.reindexed {
        log::info!(
            "canonicalized {}: {} self-loops dropped, {} duplicate edges merged, reindexed = {}",
            path.display(),
            report.self_loops,
            report.duplicates,
            report.reindexed
        );
    }
    Ok(g)
}

fn sidecar(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Generate { model, out } => {
            let model = model.single()?;
            let (g, cert) = generate(&model)?;
            let mut w = BufWriter::new(File::create(sidecar(&out, ".el"))?);
            write_edge_list(&g, &mut w)?;
            w.flush()?;
            fs::write(sidecar(&out, ".cert.json"), cert.to_json() + "\n")?;
            log::info!("{}: n = {}, m = {}", model.id(), g.n(), g.m());
        }
        Command::List {
            input,
            algo,
            l,
            j,
            limits,
            out,
        } => {
            let g = load(&input)?;
            let limits = Limits::from(limits);
            let tuples = list_tuples(&g, &algo, l, j, &limits)?;
            match out {
                Some(path) => {
                    let mut w = BufWriter::new(File::create(path)?);
                    write_tuples(tuples, &mut w)?;
                    w.flush()?;
                }
                None => write_tuples(tuples, io::stdout().lock())?,
            }
        }
        Command::Count {
            input,
            algo,
            l,
            l1,
            threads,
            limits,
            no_timing,
        } => {
            if l < 3 {
                return Err(Error::Contract(format!("count needs l >= 3, got {l}")).into());
            }
            let g = load(&input)?;
            let opts = CountOptions {
                l,
                l1,
                threads,
                limits: limits.into(),
                timed: !no_timing,
            };
            let report = run_count(&g, algo, &opts)?;
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
        }
        Command::Verify {
            input,
            l_max,
            cert,
            threads,
            limits,
        } => {
            let g = load(&input)?;
            let cert_path = cert.or_else(|| {
                let candidate = input.with_extension("cert.json");
                candidate.exists().then_some(candidate)
            });
            let cert = match cert_path {
                Some(p) => Some(GeneratorCertificate::from_json(&fs::read_to_string(&p)?)?),
                None => None,
            };
            let outcome = verify(
                &g,
                &VerifyOptions {
                    l_max,
                    threads,
                    limits: limits.into(),
                    cert,
                },
            );
            let mut stdout = io::stdout().lock();
            for line in &outcome.lines {
                writeln!(stdout, "{line}")?;
            }
            writeln!(stdout, "{}", outcome.summary())?;
            if outcome.failed > 0 {
                return Err(Failure::Mismatch);
            }
        }
        Command::Bench {
            model,
            algo,
            l,
            threads,
            limits,
            csv,
        } => {
            let config = BenchConfig {
                models: model.expand()?,
                algos: algo,
                l,
                threads,
                limits: limits.into(),
            };
            let rows = run_bench(&config)?;
            for r in rows.iter().filter(|r| r.status != "ok") {
                log::warn!("{} / {}: {}", r.graph_id, r.algo, r.status);
            }
            match csv {
                Some(path) => write_csv(&rows, BufWriter::new(File::create(path)?))?,
                None => write_csv(&rows, io::stdout().lock())?,
            }
        }
    }
    Ok(())
}

fn list_tuples(g: &Graph, algo: &str, l: usize, j: Option<usize>, limits: &Limits) -> Result<Vec<Vec<u32>>, Error> {
    let triangle_algo = TriangleAlgo::ALL.into_iter().find(|a| a.name() == algo);
    if let Some(t) = triangle_algo {
        if l != 3 {
            return Err(Error::Contract(format!("{algo} only lists triangles, got l = {l}")));
        }
        let (found, _) = collect_triangles(g, t, limits.matrix_max_n)?;
        return Ok(found.into_iter().map(|t| t.to_vec()).collect());
    }
    let witness = match algo {
        "kclique" => return Ok(collect_k_cliques(g, l)?.into_iter().map(|c| c.into_vec()).collect()),
        "triangle-method" => triangle_method_detect(g, l, limits)?,
        "edge-count" => {
            let j = j.ok_or_else(|| Error::Contract("edge-count needs --j".into()))?;
            edge_count_detect(g, j, limits)?
        }
        other => return Err(Error::Contract(format!("unknown listing algorithm {other:?}"))),
    };
    Ok(witness.into_iter().map(|c| c.into_vec()).collect())
}
