use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ssein::benchmark::{run_benchmark, BenchmarkConfig, Manifest};
use ssein::config::{AcoOverrides, ConfigFile, GaOverrides, Placement};
use ssein::pipeline::{run_predict, write_outputs};
use ssein::report::Verdict;
use ssein::{Error, Result};

const EXIT_ERROR: u8 = 1;
const EXIT_REJECTED: u8 = 2;

/// Predicts the SSE interaction network of a protein from a family of
/// template structures.
#[derive(Parser)]
#[command(name = "ssein", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Predict the SSE graph and shortcut edges of one structure.
    Predict(PredictArgs),
    /// Score repeated simulations on instances with a known network.
    Benchmark(BenchmarkArgs),
}

#[derive(clap::Args)]
struct PredictArgs {
    /// TOML config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Query structure (first chain, HELIX/SHEET records)
    #[arg(long)]
    pdb: Option<PathBuf>,
    /// Family index (protein_id, path, sse_count per line).
    #[arg(long)]
    family: Option<PathBuf>,
    /// Cα contact distance in Ångströms [default: 7.0]
    #[arg(long)]
    threshold: Option<f64>,
    /// Topology gate tolerance [default: 0.2]
    #[arg(long)]
    tolerance: Option<f64>,
    /// Master seed [default: 0]
    #[arg(long)]
    seed: Option<u64>,
    /// Population size [default: 20]
    #[arg(long)]
    pop: Option<usize>,
    /// Archive size [default: 20]
    #[arg(long)]
    archive: Option<usize>,
    /// Generations [default: 100]
    #[arg(long)]
    generations: Option<usize>,
    /// Colony simulations to try before giving up [default: 150]
    #[arg(long)]
    simulations: Option<usize>,
    /// Where colony ants start [default: one-per-vertex]
    #[arg(long, value_enum)]
    ant_placement: Option<Placement>,
    /// Output directory [default: .]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct BenchmarkArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Overrides the manifest's simulation count.
    #[arg(long)]
    simulations: Option<usize>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

fn canonical(path: &Path) -> Result<PathBuf> {
    std::fs::canonicalize(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn predict(args: PredictArgs) -> Result<Verdict> {
    let base = match &args.config {
        Some(path) => ConfigFile::read(path)?,
        None => ConfigFile::default(),
    };
    let flags = ConfigFile {
        pdb: args.pdb,
        family: args.family,
        threshold: args.threshold,
        tolerance: args.tolerance,
        seed: args.seed,
        simulations: args.simulations,
        output_dir: args.out,
        ga: GaOverrides { population_size: args.pop, archive_size: args.archive, generations: args.generations, ..Default::default() },
        aco: AcoOverrides { ant_placement: args.ant_placement, ..Default::default() },
    };
    let mut cfg = base.merge(flags).resolve()?;
    cfg.pdb = canonical(&cfg.pdb)?;
    cfg.family = canonical(&cfg.family)?;
    let pred = run_predict(&cfg)?;
    write_outputs(&pred, &cfg.output_dir)?;
    let r = &pred.report;
    println!(
        "{}: {} after {} attempt(s); E_p {}, score {:.3}, deviation {:.3}",
        r.protein_id,
        match r.verdict {
            Verdict::Accepted => "accepted",
            Verdict::Rejected => "rejected",
        },
        r.attempts,
        r.edge_budget.e_p,
        r.evaluation.shortcut_score,
        r.deviation
    );
    Ok(r.verdict)
}

fn benchmark(args: BenchmarkArgs) -> Result<()> {
    let manifest = Manifest::read(&args.manifest)?;
    let out = run_benchmark(&manifest, &BenchmarkConfig { seed: args.seed, simulations: args.simulations })?;
    out.write(&args.out)?;
    for r in &out.rows {
        println!("{}\tscore {:.3}\tlocal {:.3}", r.instance, r.score_mean, r.local_recovery_mean);
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SSEIN_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Predict(args) => predict(args).map(|v| if v == Verdict::Accepted { 0 } else { EXIT_REJECTED }),
        Command::Benchmark(args) => benchmark(args).map(|()| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
