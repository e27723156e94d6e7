//! Table, CSV and JSON emitters.
//!
//! Percentages and bit values print with two decimals in human tables;
//! CSV and JSON carry full precision so they re-parse to the exact
//! in-memory values. All formatting is locale-independent (the decimal
//! point is always '.').

use std::io::Write;

use serde::Serialize;

use dictpin::metrics::{MetricsRecord, MonteCarloEstimate};
use dictpin::scenario::{ScenarioReport, SweepSeries};

pub const RECORD_CSV_HEADER: &str = "entropy_bits,guesswork,guesswork_bits,marginal_guesswork,\
marginal_guesswork_bits,marginal_success,alpha,beta,support_size,pin_space";

/// Quote a CSV field when it contains separators, quotes or newlines.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn record_csv_row(m: &MetricsRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        m.entropy_bits,
        m.guesswork,
        m.guesswork_bits,
        m.marginal_guesswork,
        m.marginal_guesswork_bits,
        m.marginal_success,
        m.alpha,
        m.beta,
        m.support_size,
        m.pin_space
    )
}

/// The compact one-line summary: H₁ / G̃ / μ̃_α in bits, λ_β in percent.
pub fn summary_row(m: &MetricsRecord) -> String {
    format!(
        "{:.2} / {:.2} / {:.2} / {:.2}",
        m.entropy_bits,
        m.guesswork_bits,
        m.marginal_guesswork_bits,
        m.marginal_success * 100.0
    )
}

#[derive(Serialize)]
struct AnalyzeJson<'a> {
    label: &'a str,
    metrics: &'a MetricsRecord,
    top_pins: &'a [(String, f64)],
    #[serde(skip_serializing_if = "Option::is_none")]
    monte_carlo: Option<&'a MonteCarloEstimate>,
}

pub fn analyze_table(
    out: &mut impl Write,
    report: &ScenarioReport,
    mc: Option<&MonteCarloEstimate>,
) -> std::io::Result<()> {
    let m = &report.metrics;
    writeln!(out, "scenario: {}", report.label)?;
    writeln!(out, "H1 / G~ / mu~{} / lambda{}: {}", m.alpha, m.beta, summary_row(m))?;
    writeln!(out)?;
    writeln!(out, "  entropy                 {:>10.2} bits", m.entropy_bits)?;
    writeln!(
        out,
        "  guesswork               {:>10.2} guesses  ({:.2} bits)",
        m.guesswork, m.guesswork_bits
    )?;
    writeln!(
        out,
        "  marginal guesswork      {:>10} guesses  ({:.2} bits) at alpha {}",
        m.marginal_guesswork, m.marginal_guesswork_bits, m.alpha
    )?;
    writeln!(
        out,
        "  marginal success        {:>10.2} %        within beta {} attempts",
        m.marginal_success * 100.0,
        m.beta
    )?;
    writeln!(out, "  support                 {:>10} of {} PINs", m.support_size, m.pin_space)?;
    if let Some(mc) = mc {
        writeln!(
            out,
            "  monte carlo             {:>10.2} %        lambda{} over {} samples (mean rank {:.1})",
            mc.top_beta_rate * 100.0,
            mc.beta,
            mc.samples,
            mc.mean_rank
        )?;
    }
    if !report.top_pins.is_empty() {
        writeln!(out)?;
        writeln!(out, "top {} PINs:", report.top_pins.len())?;
        for (rank, (pin, p)) in report.top_pins.iter().enumerate() {
            writeln!(out, "  {:>3}. {}  {:>7.4} %", rank + 1, pin, p * 100.0)?;
        }
    }
    Ok(())
}

pub fn analyze_csv(out: &mut impl Write, report: &ScenarioReport) -> std::io::Result<()> {
    writeln!(out, "label,{RECORD_CSV_HEADER}")?;
    writeln!(out, "{},{}", csv_field(&report.label), record_csv_row(&report.metrics))?;
    Ok(())
}

pub fn analyze_json(
    out: &mut impl Write,
    report: &ScenarioReport,
    mc: Option<&MonteCarloEstimate>,
) -> std::io::Result<()> {
    let doc = AnalyzeJson {
        label: &report.label,
        metrics: &report.metrics,
        top_pins: &report.top_pins,
        monte_carlo: mc,
    };
    writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))
}

pub fn sweep_table(out: &mut impl Write, series: &SweepSeries) -> std::io::Result<()> {
    writeln!(out, "{:>6}  {:>9}  {:>10}", "k", "H1 (bits)", "lambda (%)")?;
    for point in &series.points {
        writeln!(
            out,
            "{:>6}  {:>9.2}  {:>10.2}",
            point.k,
            point.metrics.entropy_bits,
            point.metrics.marginal_success * 100.0
        )?;
    }
    Ok(())
}

pub fn sweep_csv(out: &mut impl Write, series: &SweepSeries) -> std::io::Result<()> {
    writeln!(out, "k,entropy_bits,lambda_beta,{RECORD_CSV_HEADER}")?;
    for point in &series.points {
        let m = &point.metrics;
        writeln!(
            out,
            "{},{},{},{}",
            point.k,
            m.entropy_bits,
            m.marginal_success,
            record_csv_row(m)
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SweepPointJson<'a> {
    k: usize,
    metrics: &'a MetricsRecord,
}

pub fn sweep_json(out: &mut impl Write, series: &SweepSeries) -> std::io::Result<()> {
    let doc: Vec<SweepPointJson> = series
        .points
        .iter()
        .map(|p| SweepPointJson { k: p.k, metrics: &p.metrics })
        .collect();
    writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))
}
