//! `dictpin` — security metrics for dictionary-derived PINs.
//!
//! Subcommands: `analyze` (one scenario), `sweep` (blacklist sweep),
//! `tables` (reproduce the published reference tables with deltas) and
//! `inspect` (corpus statistics). Exit codes: 0 success, 1 runtime or
//! pipeline failure, 2 usage error.

mod args;
mod render;
mod tables;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dictpin::corpus::{LengthFilter, WordFrequencyList};
use dictpin::metrics::monte_carlo_check;
use dictpin::scenario::{run_scenario_on, sweep_blacklist_on, load_corpora};

use args::{resolve_corpus_path, OutputKind, ScenarioArgs};

#[derive(Parser)]
#[command(name = "dictpin", version, about = "Security metrics for dictionary-derived PINs")]
struct Cli {
    /// Log pipeline details (stage sizes, removed mass) to stderr
    #[arg(long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the metric record and top PINs for one scenario
    Analyze {
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Evaluate the scenario at blacklist sizes 0, step, …, max
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Largest blacklist size
        #[arg(long = "sweep-max", value_name = "K")]
        sweep_max: usize,
        /// Grid step between blacklist sizes
        #[arg(long = "sweep-step", value_name = "S", default_value_t = 1)]
        sweep_step: usize,
    },
    /// Reproduce the published reference tables and report deltas
    Tables {
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Print corpus statistics: entry counts, histogram, skip stats
    Inspect {
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::from_default_env()
        .filter_level(if cli.verbose {
            log::LevelFilter::Debug
        } else {
            log::LevelFilter::Warn
        })
        .init();

    let result = match &cli.command {
        Command::Analyze { scenario } => cmd_analyze(scenario),
        Command::Sweep { scenario, sweep_max, sweep_step } => cmd_sweep(scenario, *sweep_max, *sweep_step),
        Command::Tables { scenario } => cmd_tables(scenario),
        Command::Inspect { scenario } => cmd_inspect(scenario),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn cmd_analyze(args: &ScenarioArgs) -> Result<(), String> {
    let resolved = args.resolve()?;
    let config = &resolved.scenario;
    config.validate().map_err(|e| e.to_string())?;
    let lists = load_corpora(config).map_err(|e| e.to_string())?;
    let report = run_scenario_on(&lists, config).map_err(|e| e.to_string())?;

    let mc = if resolved.mc_samples > 0 {
        let dist = dictpin::scenario::build_distribution(&lists, config).map_err(|e| e.to_string())?;
        Some(monte_carlo_check(&dist, config.beta, resolved.mc_samples, resolved.seed))
    } else {
        None
    };

    let mut out = std::io::stdout().lock();
    let io = match resolved.output {
        OutputKind::Table => render::analyze_table(&mut out, &report, mc.as_ref()),
        OutputKind::Csv => render::analyze_csv(&mut out, &report),
        OutputKind::Json => render::analyze_json(&mut out, &report, mc.as_ref()),
    };
    io.map_err(|e| e.to_string())
}

fn cmd_sweep(args: &ScenarioArgs, sweep_max: usize, sweep_step: usize) -> Result<(), String> {
    let resolved = args.resolve()?;
    let config = &resolved.scenario;
    config.validate().map_err(|e| e.to_string())?;
    let lists = load_corpora(config).map_err(|e| e.to_string())?;
    let series = sweep_blacklist_on(&lists, config, sweep_max, sweep_step).map_err(|e| e.to_string())?;

    let mut out = std::io::stdout().lock();
    let io = match resolved.output {
        OutputKind::Table => render::sweep_table(&mut out, &series),
        OutputKind::Csv => render::sweep_csv(&mut out, &series),
        OutputKind::Json => render::sweep_json(&mut out, &series),
    };
    io.map_err(|e| e.to_string())
}

fn cmd_tables(args: &ScenarioArgs) -> Result<(), String> {
    let resolved = args.resolve()?;
    let config = &resolved.scenario;
    if config.corpora.is_empty() {
        return Err("tables needs at least one --dict".to_string());
    }
    if config.corpora.len() > 2 {
        return Err("tables takes at most two --dict corpora".to_string());
    }
    let mut lists = Vec::new();
    for path in &config.corpora {
        let (list, _) = WordFrequencyList::load(path, &config.format).map_err(|e| e.to_string())?;
        lists.push(list.filter(config.min_count, LengthFilter::Any).map_err(|e| e.to_string())?);
    }
    let (first, second) = (&lists[0], lists.get(1));

    let mut notices = Vec::new();
    let cells = tables::table_battery(first, second, &mut notices).map_err(|e| e.to_string())?;
    for notice in &notices {
        eprintln!("notice: {notice}");
    }

    let mut out = std::io::stdout().lock();
    let io = match resolved.output {
        OutputKind::Table => tables::render_table(&mut out, &cells),
        OutputKind::Csv => tables::render_csv(&mut out, &cells),
        OutputKind::Json => tables::render_json(&mut out, &cells),
    };
    io.map_err(|e| e.to_string())
}

fn cmd_inspect(args: &ScenarioArgs) -> Result<(), String> {
    let resolved = args.resolve()?;
    let config = &resolved.scenario;
    if config.corpora.len() != 1 {
        return Err("inspect takes exactly one --dict".to_string());
    }
    let path: PathBuf = resolve_corpus_path(&config.corpora[0]);
    let (list, stats) = WordFrequencyList::load(&path, &config.format).map_err(|e| e.to_string())?;
    let retained = list.filter(config.min_count, LengthFilter::Any);

    let mut out = std::io::stdout().lock();
    let io = match resolved.output {
        OutputKind::Json => {
            #[derive(serde::Serialize)]
            struct InspectJson<'a> {
                label: &'a str,
                entries: usize,
                total_count: f64,
                min_count: f64,
                retained: usize,
                skipped_lines: usize,
                merged_variants: usize,
                length_histogram: Vec<(usize, usize)>,
            }
            let doc = InspectJson {
                label: list.source_label(),
                entries: list.len(),
                total_count: list.total_count(),
                min_count: config.min_count,
                retained: retained.as_ref().map_or(0, |l| l.len()),
                skipped_lines: stats.skipped,
                merged_variants: stats.merged,
                length_histogram: retained.as_ref().map_or_else(|_| Vec::new(), |l| l.length_histogram()),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
        _ => {
            writeln!(out, "corpus: {}", list.source_label())
                .and_then(|_| writeln!(out, "entries: {} (total count {})", list.len(), list.total_count()))
                .and_then(|_| {
                    writeln!(
                        out,
                        "above min count {}: {}",
                        config.min_count,
                        retained.as_ref().map_or(0, |l| l.len())
                    )
                })
                .and_then(|_| writeln!(out, "skipped lines: {}", stats.skipped))
                .and_then(|_| writeln!(out, "merged variants: {}", stats.merged))
                .and_then(|_| writeln!(out, "length histogram:"))
                .and_then(|_| {
                    if let Ok(retained) = &retained {
                        for (len, count) in retained.length_histogram() {
                            writeln!(out, "  {len:>2}: {count}")?;
                        }
                    }
                    Ok(())
                })
        }
    };
    io.map_err(|e| e.to_string())
}
