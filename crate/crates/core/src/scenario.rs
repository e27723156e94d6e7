//! Declarative scenario evaluation.
//!
//! A [`ScenarioConfig`] names everything one run needs — corpora, list
//! format, mapping, construction strategy, blacklist, mixture weight and
//! metric parameters — and the runner executes the fixed pipeline
//!
//! ```text
//! parse → filter → [word blacklist] → strategy (per corpus)
//!       → [mix] → [morph] → [PIN blacklist] → metrics
//! ```
//!
//! Morphing always precedes PIN blacklisting: the blacklist forbids the
//! most frequent PINs of the method as actually used.

use std::fmt;
use std::path::PathBuf;

use crate::corpus::{LengthFilter, ListFormat, WordFrequencyList};
use crate::mapping::KeypadMapping;
use crate::metrics::{full_metrics, MetricsRecord};
use crate::strategy::{
    basic_distribution, blacklist_pins, blacklist_words, mix, morph_distribution,
    prefix_distribution, BlacklistMode, BlacklistSpec, PinDistribution,
};
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// PIN construction strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Words of length exactly n.
    Basic,
    /// First n letters of words of length at least n.
    Prefix,
}

impl Strategy {
    /// The word lengths the strategy draws from.
    pub fn length_filter(&self, pin_length: usize) -> LengthFilter {
        match self {
            Strategy::Basic => LengthFilter::Exactly(pin_length),
            Strategy::Prefix => LengthFilter::AtLeast(pin_length),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Basic => "basic",
            Strategy::Prefix => "prefix",
        })
    }
}

/// Which keypad table to use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MappingChoice {
    Standard,
    Stretched,
    Custom(PathBuf),
}

impl MappingChoice {
    pub fn resolve(&self) -> Result<KeypadMapping> {
        match self {
            MappingChoice::Standard => Ok(KeypadMapping::standard()),
            MappingChoice::Stretched => Ok(KeypadMapping::stretched()),
            MappingChoice::Custom(path) => KeypadMapping::load(path),
        }
    }
}

/// One scenario: the unit of CLI execution.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    /// One corpus, or two when mixing dictionaries.
    pub corpora: Vec<PathBuf>,
    pub format: ListFormat,
    /// Strict lower bound on word counts; the conventional cut keeps
    /// words with frequency higher than 1.
    pub min_count: f64,
    pub pin_length: usize,
    pub mapping: MappingChoice,
    pub strategy: Strategy,
    pub morph: bool,
    pub blacklist: BlacklistSpec,
    /// Probability of drawing from the first corpus when mixing.
    pub mix_weight: f64,
    pub alpha: f64,
    pub beta: usize,
    /// How many top PINs a report lists.
    pub top: usize,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            corpora: Vec::new(),
            format: ListFormat::default(),
            min_count: 1.0,
            pin_length: 4,
            mapping: MappingChoice::Standard,
            strategy: Strategy::Basic,
            morph: false,
            blacklist: BlacklistSpec::none(),
            mix_weight: 0.5,
            alpha: 0.5,
            beta: 6,
            top: 10,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.corpora.is_empty() || self.corpora.len() > 2 {
            return Err(Error::BadScenario(format!(
                "expected one corpus (or two when mixing), got {}",
                self.corpora.len()
            )));
        }
        if self.pin_length < 1 || self.pin_length > 9 {
            return Err(Error::BadScenario(format!(
                "PIN length {} outside 1..=9",
                self.pin_length
            )));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::BadScenario(format!("alpha {} outside (0, 1]", self.alpha)));
        }
        if self.beta < 1 {
            return Err(Error::BadScenario("beta must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.mix_weight) {
            return Err(Error::BadScenario(format!(
                "mix weight {} outside [0, 1]",
                self.mix_weight
            )));
        }
        if self.min_count < 0.0 {
            return Err(Error::BadScenario(format!(
                "min count {} must be non-negative",
                self.min_count
            )));
        }
        self.format.validate()
    }

    /// A short human-readable tag for reports.
    pub fn label(&self, lists: &[WordFrequencyList]) -> String {
        let corpora: Vec<&str> = lists.iter().map(|l| l.source_label()).collect();
        let mut label = format!(
            "{} {} n={} mapping={}",
            corpora.join("+"),
            self.strategy,
            self.pin_length,
            match &self.mapping {
                MappingChoice::Standard => "standard".to_string(),
                MappingChoice::Stretched => "stretched".to_string(),
                MappingChoice::Custom(p) => p.display().to_string(),
            }
        );
        if self.morph {
            label.push_str(" morph");
        }
        if self.blacklist.k > 0 {
            label.push_str(&format!(
                " blacklist={}:{}",
                match self.blacklist.mode {
                    BlacklistMode::Pin => "pin",
                    BlacklistMode::Word => "word",
                },
                self.blacklist.k
            ));
        }
        label
    }
}

/// A scenario's outcome: the metric record plus the head of the
/// distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioReport {
    pub label: String,
    pub metrics: MetricsRecord,
    pub top_pins: Vec<(String, f64)>,
}

/// A blacklist sweep: one record per blacklist size.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSeries {
    pub points: Vec<SweepPoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub k: usize,
    pub metrics: MetricsRecord,
}

/// Load and min-count-filter the corpora named by the config.
pub fn load_corpora(config: &ScenarioConfig) -> Result<Vec<WordFrequencyList>> {
    config
        .corpora
        .iter()
        .map(|path| {
            let (list, stats) = WordFrequencyList::load(path, &config.format)?;
            log::debug!(
                "{}: {} entries from {} lines ({} skipped, {} merged)",
                path.display(),
                list.len(),
                stats.lines,
                stats.skipped,
                stats.merged
            );
            list.filter(config.min_count, LengthFilter::Any)
        })
        .collect()
}

/// Build the scenario's final distribution from pre-parsed (and
/// min-count-filtered) corpora.
pub fn build_distribution(lists: &[WordFrequencyList], config: &ScenarioConfig) -> Result<PinDistribution> {
    let staged = stage_pre_blacklist(lists, config)?;
    match config.blacklist.mode {
        BlacklistMode::Pin if config.blacklist.k > 0 => blacklist_pins(&staged, config.blacklist.k),
        _ => Ok(staged),
    }
}

/// Everything up to (but excluding) the PIN blacklist; word blacklists
/// are applied here since they act on corpora.
fn stage_pre_blacklist(lists: &[WordFrequencyList], config: &ScenarioConfig) -> Result<PinDistribution> {
    stage_with_word_blacklist(lists, config, match config.blacklist.mode {
        BlacklistMode::Word => config.blacklist.k,
        BlacklistMode::Pin => 0,
    })
}

fn stage_with_word_blacklist(
    lists: &[WordFrequencyList],
    config: &ScenarioConfig,
    word_k: usize,
) -> Result<PinDistribution> {
    if lists.len() != config.corpora.len() && !config.corpora.is_empty() {
        return Err(Error::BadScenario(format!(
            "{} corpora configured but {} lists supplied",
            config.corpora.len(),
            lists.len()
        )));
    }
    if lists.is_empty() || lists.len() > 2 {
        return Err(Error::BadScenario(format!(
            "expected one or two corpora, got {}",
            lists.len()
        )));
    }
    let mapping = config.mapping.resolve()?;
    let eligible = config.strategy.length_filter(config.pin_length);

    let mut dists = Vec::with_capacity(lists.len());
    for list in lists {
        let trimmed;
        let list = if word_k > 0 {
            trimmed = blacklist_words(list, word_k, eligible)?;
            &trimmed
        } else {
            list
        };
        let dist = match config.strategy {
            Strategy::Basic => basic_distribution(list, config.pin_length, &mapping)?,
            Strategy::Prefix => prefix_distribution(list, config.pin_length, &mapping)?,
        };
        log::debug!(
            "{}: {} support {} over {} words",
            list.source_label(),
            config.strategy,
            dist.support_size(),
            list.len()
        );
        dists.push(dist);
    }

    let combined = if dists.len() == 2 {
        mix(&dists[0], &dists[1], config.mix_weight)?
    } else {
        dists.pop().expect("one corpus present")
    };

    Ok(if config.morph {
        morph_distribution(&combined)
    } else {
        combined
    })
}

/// Run one scenario on pre-parsed corpora.
pub fn run_scenario_on(lists: &[WordFrequencyList], config: &ScenarioConfig) -> Result<ScenarioReport> {
    let dist = build_distribution(lists, config)?;
    let metrics = full_metrics(&dist, config.alpha, config.beta)?;
    Ok(ScenarioReport {
        label: config.label(lists),
        metrics,
        top_pins: dist.top(config.top),
    })
}

/// Load the configured corpora and run the scenario.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioReport> {
    config.validate()?;
    let lists = load_corpora(config)?;
    run_scenario_on(&lists, config)
}

/// Evaluate the scenario at blacklist sizes `0, step, 2·step, …, k_max`
/// (in the configured blacklist mode). The k = 0 point is identical to
/// the plain scenario result.
pub fn sweep_blacklist_on(
    lists: &[WordFrequencyList],
    config: &ScenarioConfig,
    k_max: usize,
    step: usize,
) -> Result<SweepSeries> {
    sweep_impl(lists, config, k_max, step, true)
}

/// Sequential sweep; identical output to [`sweep_blacklist_on`], kept
/// callable for the benchmark suite.
pub fn sweep_blacklist_seq_on(
    lists: &[WordFrequencyList],
    config: &ScenarioConfig,
    k_max: usize,
    step: usize,
) -> Result<SweepSeries> {
    sweep_impl(lists, config, k_max, step, false)
}

fn sweep_impl(
    lists: &[WordFrequencyList],
    config: &ScenarioConfig,
    k_max: usize,
    step: usize,
    parallel: bool,
) -> Result<SweepSeries> {
    if step == 0 {
        return Err(Error::BadScenario("sweep step must be at least 1".into()));
    }
    let ks: Vec<usize> = (0..=k_max).step_by(step).collect();

    let points = match config.blacklist.mode {
        BlacklistMode::Pin => {
            let base = stage_pre_blacklist(lists, config)?;
            if k_max >= base.support_size() {
                return Err(Error::SweepTooWide {
                    k_max,
                    support: base.support_size(),
                });
            }
            map_points(&ks, parallel, |k| {
                let cut = blacklist_pins(&base, k)?;
                Ok(SweepPoint {
                    k,
                    metrics: full_metrics(&cut, config.alpha, config.beta)?,
                })
            })?
        }
        BlacklistMode::Word => {
            let eligible = config.strategy.length_filter(config.pin_length);
            let available = lists
                .iter()
                .map(|l| l.entries().iter().filter(|e| eligible.accepts(e.word.len())).count())
                .min()
                .unwrap_or(0);
            if k_max >= available {
                return Err(Error::SweepTooWide {
                    k_max,
                    support: available,
                });
            }
            map_points(&ks, parallel, |k| {
                let dist = stage_with_word_blacklist(lists, config, k)?;
                Ok(SweepPoint {
                    k,
                    metrics: full_metrics(&dist, config.alpha, config.beta)?,
                })
            })?
        }
    };

    Ok(SweepSeries { points })
}

fn map_points<F>(ks: &[usize], parallel: bool, eval: F) -> Result<Vec<SweepPoint>>
where
    F: Fn(usize) -> Result<SweepPoint> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return ks.par_iter().map(|&k| eval(k)).collect();
    }
    let _ = parallel;
    ks.iter().map(|&k| eval(k)).collect()
}

/// Load the configured corpora and sweep.
pub fn sweep_blacklist(config: &ScenarioConfig, k_max: usize, step: usize) -> Result<SweepSeries> {
    config.validate()?;
    let lists = load_corpora(config)?;
    sweep_blacklist_on(&lists, config, k_max, step)
}
