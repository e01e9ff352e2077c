mod cache;
mod config;
mod jobs;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use cache::{Cache, Lookup};
use config::{validate_functor, Check, Format, Job, JobConfig, ModuleSource};
use jobs::{run_job, Setting};
use output::{render, JobResult};

#[derive(Parser)]
#[command(name = "qswd", version, about = "R-matrix denominators, pole quivers, KLR algebras and the duality functor")]
struct Cli {
    /// Output format; defaults to the config's `format` line, then tsv.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, default_value = ".qswd-cache")]
    cache_dir: PathBuf,
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides the rank given in the config.
    #[arg(long = "N")]
    rank: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Denominators d_kl(z) of the normalized R-matrices.
    Denominators {
        #[arg(long = "N")]
        rank: usize,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
    },
    /// Vertices, arrows and type of the pole quiver.
    Quiver {
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Defining relations in the polynomial representation.
    KlrVerify {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        degree_cap: u32,
    },
    /// Graded dimensions of e(nu') R e(nu).
    GradedDims {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        degree_cap: i64,
    },
    /// Applies the duality functor to module files.
    Functor {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long = "module", required = true)]
        modules: Vec<PathBuf>,
        #[arg(long, value_enum)]
        check: Option<Check>,
        /// Degree cap of the bimodule check.
        #[arg(long, default_value_t = 2)]
        degree_cap: u32,
    },
    /// Runs every job listed in a config.
    Run {
        #[command(flatten)]
        cfg: ConfigArgs,
    },
}

fn load_config(args: &ConfigArgs) -> anyhow::Result<JobConfig> {
    let mut cfg = JobConfig::load(&args.config).with_context(|| format!("reading {}", args.config.display()))?;
    if let Some(n) = args.rank {
        if let Some(e) = cfg.index.iter().find(|e| e.k == 0 || e.k >= n || n < 2) {
            bail!("--N {n} does not fit index entry k = {}", e.k);
        }
        cfg.rank = Some(n);
    }
    Ok(cfg)
}

fn positive(v: u64, what: &str) -> anyhow::Result<()> {
    if v == 0 {
        bail!("{what} must be positive");
    }
    Ok(())
}

/// Builds the list of jobs and the setting they run in.
fn plan(cli: &Cli) -> anyhow::Result<(JobConfig, Vec<Job>)> {
    let single = |cfg: &ConfigArgs, job: Job| -> anyhow::Result<(JobConfig, Vec<Job>)> { Ok((load_config(cfg)?, vec![job])) };
    match &cli.command {
        Command::Denominators { rank, max_k } => {
            if *rank < 2 {
                bail!("--N must be at least 2");
            }
            positive(*max_k as u64, "--max-k")?;
            let cfg = JobConfig { rank: Some(*rank), index: vec![], jobs: vec![], format: None };
            Ok((cfg, vec![Job::Denominators { max_k: *max_k }]))
        }
        Command::Quiver { cfg } => single(cfg, Job::Quiver),
        Command::KlrVerify { cfg, n, degree_cap } => {
            positive(*n as u64, "--n")?;
            positive(*degree_cap as u64, "--degree-cap")?;
            single(cfg, Job::KlrVerify { n: *n, cap: *degree_cap })
        }
        Command::GradedDims { cfg, n, degree_cap } => {
            positive(*n as u64, "--n")?;
            if *degree_cap <= 0 {
                bail!("--degree-cap must be positive");
            }
            single(cfg, Job::GradedDims { n: *n, cap: *degree_cap })
        }
        Command::Functor { cfg, modules, check, degree_cap } => {
            positive(*degree_cap as u64, "--degree-cap")?;
            let modules = modules.iter().map(|p| ModuleSource::load(p)).collect::<Result<Vec<_>, _>>()?;
            validate_functor(&modules, *check).map_err(anyhow::Error::msg)?;
            single(cfg, Job::Functor { modules, check: *check, cap: *degree_cap })
        }
        Command::Run { cfg } => {
            let c = load_config(cfg)?;
            if c.jobs.is_empty() {
                bail!("{} lists no jobs", cfg.config.display());
            }
            let jobs = c.jobs.clone();
            Ok((c, jobs))
        }
    }
}

fn title(job: &Job) -> String {
    match job {
        Job::Functor { modules, check, .. } => {
            let names: Vec<String> = modules.iter().map(|m| m.path.display().to_string()).collect();
            match check {
                Some(c) => format!("functor {} (check {c})", names.join(" ")),
                None => format!("functor {}", names.join(" ")),
            }
        }
        other => format!("{} ({})", other.name(), other.caps()),
    }
}

/// Cache section: everything that determines the job's output.
fn section(cfg: &JobConfig, job: &Job) -> String {
    let job_key = match job {
        // module paths do not matter, contents do
        Job::Functor { modules, check, cap } => {
            let texts: Vec<&str> = modules.iter().map(|m| m.text.as_str()).collect();
            serde_json::json!({ "functor": { "modules": texts, "check": check, "cap": cap } })
        }
        _ => serde_json::to_value(job).expect("serializable"),
    };
    let index = if matches!(job, Job::Denominators { .. }) { serde_json::json!([]) } else { serde_json::to_value(&cfg.index).expect("serializable") };
    serde_json::json!({ "N": cfg.rank, "index": index, "job": job_key }).to_string()
}

fn execute(cli: &Cli) -> anyhow::Result<bool> {
    let (cfg, jobs) = plan(cli)?;
    let rank = cfg.rank.context("config gives no rank `N`")?;
    let index = cfg.spectral_index();
    let format = cli.format.or(cfg.format).unwrap_or(Format::Tsv);
    let cache = if cli.no_cache {
        None
    } else {
        Some(Cache::new(&cli.cache_dir).with_context(|| format!("creating cache dir {}", cli.cache_dir.display()))?)
    };
    let setting = Setting { rank, index: &index };
    let results: Vec<(JobResult, Option<bool>)> = jobs
        .par_iter()
        .map(|job| {
            let key = cache::key(&section(&cfg, job));
            let mut hit = None;
            let cached = cache.as_ref().and_then(|c| match c.get(&key) {
                Lookup::Hit(r) => Some(r),
                Lookup::Miss => None,
                Lookup::Corrupt(why) => {
                    eprintln!("warning: ignoring corrupt cache entry ({why}); recomputing");
                    None
                }
            });
            let report = match cached {
                Some(r) => {
                    hit = Some(true);
                    r
                }
                None => {
                    let r = run_job(job, &setting);
                    if let Some(c) = &cache {
                        hit = Some(false);
                        if let Err(e) = c.put(&key, &r) {
                            eprintln!("warning: cannot write cache entry: {e}");
                        }
                    }
                    r
                }
            };
            (JobResult { title: title(job), report }, hit)
        })
        .collect();
    let hits = results.iter().filter(|(_, h)| *h == Some(true)).count();
    let failed = results.iter().filter(|(r, _)| !r.report.failures.is_empty()).count();
    let caps: Vec<String> = jobs.iter().map(|j| format!("{}: {}", j.name(), j.caps())).collect();
    let metadata = vec![
        ("version".to_string(), cache::VERSION_TAG.to_string()),
        ("coproduct".to_string(), "e -> e(x)1 + K(x)e; f -> f(x)K^-1 + 1(x)f; K -> K(x)K".to_string()),
        ("affinization".to_string(), "E_0 carries z, F_0 carries z^-1".to_string()),
        ("z-orientation".to_string(), qswd_core::functor::ORIENTATION.to_string()),
        ("N".to_string(), rank.to_string()),
        ("caps".to_string(), caps.join("; ")),
        (
            "cache".to_string(),
            match &cache {
                None => "disabled".to_string(),
                Some(_) => format!("{hits} hits, {} misses", results.len() - hits),
            },
        ),
        ("status".to_string(), if failed == 0 { "ok".to_string() } else { format!("{failed} job(s) failed") }),
    ];
    let results: Vec<JobResult> = results.into_iter().map(|(r, _)| r).collect();
    print!("{}", render(&results, &metadata, format));
    Ok(failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
