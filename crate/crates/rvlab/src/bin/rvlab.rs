//! Command-line front end: run, list, validate, and dump-samples over
//! experiment files. All logic lives in the library; this binary only
//! parses arguments, moves bytes, and maps errors to exit codes
//! (0 success, 2 configuration error, 3 statistical precondition failure).

use clap::{Args, Parser, Subcommand};
use rvlab::report::write_table_csv;
use rvlab::{bundled_toml, run_toml_str, ExperimentConfig, Result, RvError, BUNDLED};
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "rvlab",
    version,
    about = "Run regular-variation experiments and write deterministic JSON/CSV reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where an experiment file comes from: a path or the bundled catalogue.
#[derive(Args)]
struct Source {
    /// Path to an experiment TOML file.
    #[arg(long, conflicts_with = "name", required_unless_present = "name")]
    config: Option<PathBuf>,
    /// Name of a bundled experiment (see `rvlab list`).
    #[arg(long)]
    name: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment; write `<name>.json` and `<name>.csv` into the
    /// output directory and print its verdicts.
    Run {
        #[command(flatten)]
        source: Source,
        /// Directory for the report files (created if missing).
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Worker threads. Reports are byte-identical for any value; this
        /// only changes wall-clock time.
        #[arg(long)]
        threads: Option<usize>,
        /// Replace the file's seed for this run (recorded in the report).
        #[arg(long)]
        seed_override: Option<u64>,
    },
    /// List the bundled experiments.
    List,
    /// Parse and validate an experiment file without running it.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Print the first samples of the experiment's generator as JSON lines.
    DumpSamples {
        #[command(flatten)]
        source: Source,
        /// How many samples to emit.
        #[arg(long, default_value_t = 10)]
        count: u64,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replace the file's seed.
        #[arg(long)]
        seed_override: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_statistical() { 3 } else { 2 })
        }
    }
}

fn load(source: &Source) -> Result<String> {
    match (&source.config, &source.name) {
        (Some(path), None) => Ok(fs::read_to_string(path)?),
        (None, Some(name)) => bundled_toml(name).map(str::to_owned).ok_or_else(|| {
            RvError::Config(format!("no bundled experiment named '{name}'; see `rvlab list`"))
        }),
        _ => Err(RvError::Config("give exactly one of --config or --name".into())),
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Run { source, out_dir, threads, seed_override } => {
            if let Some(t) = threads {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build_global()
                    .map_err(|e| RvError::Config(format!("could not size the thread pool: {e}")))?;
            }
            let text = load(&source)?;
            let report = run_toml_str(&text, seed_override)?;
            fs::create_dir_all(&out_dir)?;
            let json_path = out_dir.join(format!("{}.json", report.name));
            fs::write(&json_path, report.to_json_bytes())?;
            let csv_path = out_dir.join(format!("{}.csv", report.name));
            write_table_csv(fs::File::create(&csv_path)?, &report.table)?;

            println!("experiment {} ({}), seed {}", report.name, report.analysis, report.seed);
            for v in &report.verdicts {
                let mark = if v.pass { "PASS" } else { "FAIL" };
                println!(
                    "  [{mark}] {}: estimate {:.6} target {:.6} (tolerance {:.6})",
                    v.claim, v.estimate, v.target, v.tolerance
                );
            }
            for note in &report.notes {
                println!("  note: {note}");
            }
            println!("wrote {}", json_path.display());
            println!("wrote {}", csv_path.display());
            Ok(())
        }
        Command::List => {
            for b in BUNDLED {
                let cfg = ExperimentConfig::from_toml_str(b.toml)
                    .expect("bundled experiments are validated by the test suite");
                println!("{:<22} {}", b.name, cfg.analysis.label());
            }
            Ok(())
        }
        Command::Validate { source } => {
            let text = load(&source)?;
            let cfg = ExperimentConfig::from_toml_str(&text)?;
            println!("ok: {} ({})", cfg.name, cfg.analysis.label());
            Ok(())
        }
        Command::DumpSamples { source, count, out, seed_override } => {
            let text = load(&source)?;
            let mut cfg = ExperimentConfig::from_toml_str(&text)?;
            if let Some(s) = seed_override {
                cfg.seed = Some(s);
            }
            let gen = cfg.generator.as_ref().ok_or_else(|| {
                RvError::Config("this experiment has no 'generator' key to sample from".into())
            })?;
            let samples = rvlab::samplers::sample(gen, cfg.seed()?, count as usize)?;
            let mut lines = Vec::new();
            for s in &samples {
                lines.extend_from_slice(
                    serde_json::to_string(s)
                        .expect("element serialization is total")
                        .as_bytes(),
                );
                lines.push(b'\n');
            }
            match out {
                Some(path) => fs::write(path, lines)?,
                None => std::io::stdout().write_all(&lines)?,
            }
            Ok(())
        }
    }
}
