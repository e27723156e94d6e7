//! The `tables` subcommand: reproduce the published reference tables
//! for subtitle-derived corpora and report deltas.
//!
//! The published numbers are embedded here purely for the delta columns;
//! computation never touches them. Metric columns follow the reference
//! layout: H₁, G̃ and μ̃₀.₅ in bits, λ₆ in percent, all printed with two
//! decimals.

use std::io::Write;

use serde::Serialize;

use dictpin::corpus::WordFrequencyList;
use dictpin::mapping::KeypadMapping;
use dictpin::metrics::{full_metrics, MetricsRecord};
use dictpin::strategy::{
    basic_distribution, blacklist_pins, mix, morph_distribution, prefix_distribution,
    PinDistribution,
};
use dictpin::Result;

use crate::render::csv_field;

const ALPHA: f64 = 0.5;
const BETA: usize = 6;

/// Metric rows of the four-value tables, in layout order.
const METRICS: [&str; 4] = ["H1_bits", "G_bits", "mu0.5_bits", "lambda6_pct"];

/// Published reference values, straightforward construction
/// (English subtitle corpus): [H₁, G̃, μ̃₀.₅, λ₆%] for n = 4 and n = 5.
const REF_BASIC: [[f64; 4]; 2] = [[7.23, 7.18, 5.52, 23.93], [8.42, 8.63, 6.58, 19.24]];

/// Published reference values, modified constructions.
const REF_STRETCHED: [[f64; 4]; 2] = [[7.28, 7.28, 5.52, 24.04], [8.43, 8.67, 6.58, 19.31]];
const REF_PREFIX: [[f64; 4]; 2] = [[9.03, 8.89, 7.56, 11.30], [10.36, 10.39, 8.77, 8.01]];
const REF_MORPH: [[f64; 4]; 2] = [[11.08, 10.73, 9.88, 2.77], [12.96, 12.84, 11.53, 2.17]];

/// Published reference values for blacklist sizes 0, 10, 20: entropy in
/// bits and λ₆ in percent, per construction and PIN length.
const BLACKLIST_KS: [usize; 3] = [0, 10, 20];
const REF_BL_PREFIX_H: [[f64; 3]; 2] = [[9.03, 9.37, 9.53], [10.36, 10.68, 10.82]];
const REF_BL_MORPH_H: [[f64; 3]; 2] = [[11.08, 11.15, 11.19], [12.96, 13.06, 13.09]];
const REF_BL_PREFIX_L: [[f64; 3]; 2] = [[11.30, 6.62, 4.69], [8.01, 4.28, 2.95]];
const REF_BL_MORPH_L: [[f64; 3]; 2] = [[2.77, 1.74, 1.56], [2.17, 0.97, 0.85]];

/// Published reference values, two-dictionary (50/50) scenario.
const REF_MIX_BASIC: [[f64; 4]; 2] = [[7.84, 7.72, 6.24, 18.00], [9.35, 9.41, 7.63, 11.07]];
const REF_MIX_PREFIX: [[f64; 4]; 2] = [[9.62, 9.37, 8.27, 7.78], [11.21, 11.09, 9.68, 4.37]];
const REF_MIX_PREFIX_BL10: [[f64; 4]; 2] = [[9.84, 9.50, 8.55, 4.09], [11.37, 11.17, 9.85, 2.32]];

/// One reproduced cell: a computed value next to its published
/// counterpart.
#[derive(Debug, Clone, Serialize)]
pub struct TableCell {
    pub table: &'static str,
    pub scenario: String,
    pub metric: &'static str,
    pub computed: f64,
    pub published: f64,
    pub delta: f64,
}

fn cell(table: &'static str, scenario: String, metric: &'static str, computed: f64, published: f64) -> TableCell {
    TableCell {
        table,
        scenario,
        metric,
        computed,
        published,
        delta: computed - published,
    }
}

/// The four displayed values of a record: bits, bits, bits, percent.
pub fn displayed_values(m: &MetricsRecord) -> [f64; 4] {
    [
        m.entropy_bits,
        m.guesswork_bits,
        m.marginal_guesswork_bits,
        m.marginal_success * 100.0,
    ]
}

fn four_metric_cells(
    table: &'static str,
    scenario: String,
    dist: &PinDistribution,
    published: &[f64; 4],
) -> Result<Vec<TableCell>> {
    let record = full_metrics(dist, ALPHA, BETA)?;
    let values = displayed_values(&record);
    Ok(METRICS
        .iter()
        .zip(values)
        .zip(published)
        .map(|((metric, computed), &published)| cell(table, scenario.clone(), metric, computed, published))
        .collect())
}

/// Run the whole battery. `second` enables the two-dictionary table;
/// when absent that table is skipped (a notice goes to `notices`).
pub fn table_battery(
    first: &WordFrequencyList,
    second: Option<&WordFrequencyList>,
    notices: &mut Vec<String>,
) -> Result<Vec<TableCell>> {
    let standard = KeypadMapping::standard();
    let stretched = KeypadMapping::stretched();
    let mut cells = Vec::new();

    for (i, n) in [4usize, 5].into_iter().enumerate() {
        let basic = basic_distribution(first, n, &standard)?;
        cells.extend(four_metric_cells(
            "straightforward",
            format!("basic n={n}"),
            &basic,
            &REF_BASIC[i],
        )?);

        let stretched_dist = basic_distribution(first, n, &stretched)?;
        cells.extend(four_metric_cells(
            "modifications",
            format!("stretched n={n}"),
            &stretched_dist,
            &REF_STRETCHED[i],
        )?);

        let prefix = prefix_distribution(first, n, &standard)?;
        cells.extend(four_metric_cells(
            "modifications",
            format!("prefix n={n}"),
            &prefix,
            &REF_PREFIX[i],
        )?);

        let morph = morph_distribution(&basic);
        cells.extend(four_metric_cells(
            "modifications",
            format!("morphing n={n}"),
            &morph,
            &REF_MORPH[i],
        )?);

        for (j, k) in BLACKLIST_KS.into_iter().enumerate() {
            let prefix_cut = blacklist_pins(&prefix, k)?;
            let record = full_metrics(&prefix_cut, ALPHA, BETA)?;
            cells.push(cell(
                "blacklist-combination",
                format!("prefix n={n} k={k}"),
                METRICS[0],
                record.entropy_bits,
                REF_BL_PREFIX_H[i][j],
            ));
            cells.push(cell(
                "blacklist-combination",
                format!("prefix n={n} k={k}"),
                METRICS[3],
                record.marginal_success * 100.0,
                REF_BL_PREFIX_L[i][j],
            ));

            let morph_cut = blacklist_pins(&morph, k)?;
            let record = full_metrics(&morph_cut, ALPHA, BETA)?;
            cells.push(cell(
                "blacklist-combination",
                format!("morphing n={n} k={k}"),
                METRICS[0],
                record.entropy_bits,
                REF_BL_MORPH_H[i][j],
            ));
            cells.push(cell(
                "blacklist-combination",
                format!("morphing n={n} k={k}"),
                METRICS[3],
                record.marginal_success * 100.0,
                REF_BL_MORPH_L[i][j],
            ));
        }

        if let Some(second) = second {
            let basic_mix = mix(&basic, &basic_distribution(second, n, &standard)?, 0.5)?;
            cells.extend(four_metric_cells(
                "two-dictionary",
                format!("basic n={n}"),
                &basic_mix,
                &REF_MIX_BASIC[i],
            )?);

            let prefix_mix = mix(&prefix, &prefix_distribution(second, n, &standard)?, 0.5)?;
            cells.extend(four_metric_cells(
                "two-dictionary",
                format!("prefix n={n}"),
                &prefix_mix,
                &REF_MIX_PREFIX[i],
            )?);

            cells.extend(four_metric_cells(
                "two-dictionary",
                format!("prefix-bl10 n={n}"),
                &blacklist_pins(&prefix_mix, 10)?,
                &REF_MIX_PREFIX_BL10[i],
            )?);
        }
    }

    if second.is_none() {
        notices.push("two-dictionary: skipped (needs a second --dict)".to_string());
    }
    Ok(cells)
}

pub fn render_table(out: &mut impl Write, cells: &[TableCell]) -> std::io::Result<()> {
    let mut current = "";
    writeln!(
        out,
        "{:<22} {:<18} {:<12} {:>9} {:>10} {:>7}",
        "table", "scenario", "metric", "computed", "published", "delta"
    )?;
    for c in cells {
        if c.table != current {
            current = c.table;
            writeln!(out, "---- {current} ----")?;
        }
        writeln!(
            out,
            "{:<22} {:<18} {:<12} {:>9.2} {:>10.2} {:>+7.2}",
            c.table, c.scenario, c.metric, c.computed, c.published, c.delta
        )?;
    }
    Ok(())
}

pub fn render_csv(out: &mut impl Write, cells: &[TableCell]) -> std::io::Result<()> {
    writeln!(out, "table,scenario,metric,computed,published,delta")?;
    for c in cells {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            csv_field(c.table),
            csv_field(&c.scenario),
            csv_field(c.metric),
            c.computed,
            c.published,
            c.delta
        )?;
    }
    Ok(())
}

pub fn render_json(out: &mut impl Write, cells: &[TableCell]) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(cells).expect("serializable"))
}
