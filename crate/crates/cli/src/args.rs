//! Flag definitions and the flag / config-file / default merge.
//!
//! Every scenario-shaped option is declared optional so that a value
//! can come from three places with fixed precedence: explicit CLI flag,
//! then `--config` file entry, then the built-in default.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use clap::Args;

use dictpin::corpus::ListFormat;
use dictpin::scenario::{MappingChoice, ScenarioConfig, Strategy};
use dictpin::strategy::{BlacklistMode, BlacklistSpec};

/// Environment variable naming a directory searched for corpus files
/// given as relative paths.
pub const CORPUS_DIR_ENV: &str = "DICTPIN_CORPUS_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputKind {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Word frequency list (repeat for a two-dictionary mixture, max 2)
    #[arg(long = "dict", value_name = "PATH")]
    pub dict: Vec<PathBuf>,

    /// Column separator: tab|comma|semicolon|space or a single character
    #[arg(long = "dict-format", value_name = "SEP")]
    pub dict_format: Option<String>,

    /// Zero-based column holding the word
    #[arg(long = "word-col", value_name = "N")]
    pub word_col: Option<usize>,

    /// Zero-based column holding the count
    #[arg(long = "count-col", value_name = "N")]
    pub count_col: Option<usize>,

    /// Treat the first line as a header row
    #[arg(long)]
    pub header: bool,

    /// Fail on malformed lines instead of skipping them
    #[arg(long)]
    pub strict: bool,

    /// Keep only words with count strictly greater than this
    #[arg(long = "min-count", value_name = "X")]
    pub min_count: Option<f64>,

    /// PIN length n (1..=9)
    #[arg(long = "pin-length", value_name = "N")]
    pub pin_length: Option<usize>,

    /// Keypad mapping: standard, stretched, or a letter=digit file
    #[arg(long, value_name = "NAME|FILE")]
    pub mapping: Option<String>,

    /// Construction strategy: basic (length-n words) or prefix
    #[arg(long, value_name = "NAME")]
    pub strategy: Option<String>,

    /// Morph the constructed distribution (random single-digit change)
    #[arg(long)]
    pub morph: bool,

    /// Blacklist the K most frequent items
    #[arg(long, value_name = "K")]
    pub blacklist: Option<usize>,

    /// What the blacklist removes: pin or word
    #[arg(long = "blacklist-mode", value_name = "MODE")]
    pub blacklist_mode: Option<String>,

    /// Probability of the first dictionary in a two-dictionary mixture
    #[arg(long = "mix-weight", value_name = "W")]
    pub mix_weight: Option<f64>,

    /// Success probability threshold for marginal guesswork
    #[arg(long, value_name = "A")]
    pub alpha: Option<f64>,

    /// Attacker attempt budget for the marginal success rate
    #[arg(long, value_name = "B")]
    pub beta: Option<usize>,

    /// How many top PINs to list
    #[arg(long, value_name = "M")]
    pub top: Option<usize>,

    /// Monte Carlo cross-check sample count (0 disables)
    #[arg(long = "mc-samples", value_name = "N")]
    pub mc_samples: Option<u64>,

    /// Seed for the Monte Carlo cross-check
    #[arg(long, value_name = "S")]
    pub seed: Option<u64>,

    /// Output format
    #[arg(long, value_enum, value_name = "FMT")]
    pub output: Option<OutputKind>,

    /// key=value file supplying defaults for any of the flags above
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

/// A parsed `--config` file: bare key=value lines, `#` comments.
/// Keys are the long flag names; `dict` may repeat.
#[derive(Debug, Default)]
pub struct FileConfig {
    values: HashMap<String, String>,
    dicts: Vec<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = FileConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value", idx + 1))?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key == "dict" {
                cfg.dicts.push(PathBuf::from(value));
            } else if cfg.values.insert(key.clone(), value).is_some() {
                return Err(format!("line {}: duplicate key {key:?}", idx + 1));
            }
        }
        Ok(cfg)
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, String> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| format!("config key {key}: cannot parse {v:?}")),
        }
    }

    fn flag(&self, key: &str) -> Result<bool, String> {
        match self.get(key) {
            None => Ok(false),
            Some("true") | Some("1") | Some("yes") => Ok(true),
            Some("false") | Some("0") | Some("no") => Ok(false),
            Some(v) => Err(format!("config key {key}: expected a boolean, got {v:?}")),
        }
    }
}

pub fn parse_separator(s: &str) -> Result<char, String> {
    match s {
        "tab" | "\\t" => Ok('\t'),
        "comma" => Ok(','),
        "semicolon" => Ok(';'),
        "space" => Ok(' '),
        "pipe" => Ok('|'),
        _ => {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(format!("separator must be a single character or a name, got {s:?}")),
            }
        }
    }
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    match s {
        "basic" => Ok(Strategy::Basic),
        "prefix" => Ok(Strategy::Prefix),
        _ => Err(format!("unknown strategy {s:?} (expected basic or prefix)")),
    }
}

fn parse_mapping(s: &str) -> MappingChoice {
    match s {
        "standard" => MappingChoice::Standard,
        "stretched" => MappingChoice::Stretched,
        path => MappingChoice::Custom(PathBuf::from(path)),
    }
}

fn parse_blacklist_mode(s: &str) -> Result<BlacklistMode, String> {
    match s {
        "pin" => Ok(BlacklistMode::Pin),
        "word" => Ok(BlacklistMode::Word),
        _ => Err(format!("unknown blacklist mode {s:?} (expected pin or word)")),
    }
}

/// Resolve a corpus path: an existing path wins; otherwise a relative
/// path is retried under `$DICTPIN_CORPUS_DIR`.
pub fn resolve_corpus_path(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    if let Ok(dir) = std::env::var(CORPUS_DIR_ENV) {
        let candidate = Path::new(&dir).join(path);
        if candidate.exists() {
            return candidate;
        }
    }
    path.to_path_buf()
}

/// Everything `analyze`/`sweep` needs beyond the core scenario.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub scenario: ScenarioConfig,
    pub output: OutputKind,
    pub mc_samples: u64,
    pub seed: u64,
}

impl ScenarioArgs {
    /// Merge flags over the optional config file over defaults.
    pub fn resolve(&self) -> Result<Resolved, String> {
        let file = match &self.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let defaults = ScenarioConfig::default();

        let dicts = if self.dict.is_empty() { file.dicts.clone() } else { self.dict.clone() };
        let corpora: Vec<PathBuf> = dicts.iter().map(|p| resolve_corpus_path(p)).collect();

        let separator = match self.dict_format.as_deref().or(file.get("dict-format")) {
            Some(s) => parse_separator(s)?,
            None => '\t',
        };
        let format = ListFormat {
            separator,
            word_column: match self.word_col {
                Some(c) => c,
                None => file.parsed("word-col")?.unwrap_or(0),
            },
            count_column: match self.count_col {
                Some(c) => c,
                None => file.parsed("count-col")?.unwrap_or(1),
            },
            has_header: self.header || file.flag("header")?,
            strict: self.strict || file.flag("strict")?,
        };

        let strategy = match self.strategy.as_deref().or(file.get("strategy")) {
            Some(s) => parse_strategy(s)?,
            None => defaults.strategy,
        };
        let mapping = match self.mapping.as_deref().or(file.get("mapping")) {
            Some(m) => parse_mapping(m),
            None => MappingChoice::Standard,
        };
        let blacklist = BlacklistSpec {
            mode: match self.blacklist_mode.as_deref().or(file.get("blacklist-mode")) {
                Some(m) => parse_blacklist_mode(m)?,
                None => BlacklistMode::Pin,
            },
            k: match self.blacklist {
                Some(k) => k,
                None => file.parsed("blacklist")?.unwrap_or(0),
            },
        };

        let scenario = ScenarioConfig {
            corpora,
            format,
            min_count: match self.min_count {
                Some(m) => m,
                None => file.parsed("min-count")?.unwrap_or(defaults.min_count),
            },
            pin_length: match self.pin_length {
                Some(n) => n,
                None => file.parsed("pin-length")?.unwrap_or(defaults.pin_length),
            },
            mapping,
            strategy,
            morph: self.morph || file.flag("morph")?,
            blacklist,
            mix_weight: match self.mix_weight {
                Some(w) => w,
                None => file.parsed("mix-weight")?.unwrap_or(defaults.mix_weight),
            },
            alpha: match self.alpha {
                Some(a) => a,
                None => file.parsed("alpha")?.unwrap_or(defaults.alpha),
            },
            beta: match self.beta {
                Some(b) => b,
                None => file.parsed("beta")?.unwrap_or(defaults.beta),
            },
            top: match self.top {
                Some(t) => t,
                None => file.parsed("top")?.unwrap_or(defaults.top),
            },
        };

        let output = match self.output {
            Some(o) => o,
            None => match file.get("output") {
                Some("table") => OutputKind::Table,
                Some("csv") => OutputKind::Csv,
                Some("json") => OutputKind::Json,
                Some(v) => return Err(format!("config key output: unknown format {v:?}")),
                None => OutputKind::Table,
            },
        };

        Ok(Resolved {
            scenario,
            output,
            mc_samples: match self.mc_samples {
                Some(n) => n,
                None => file.parsed("mc-samples")?.unwrap_or(0),
            },
            seed: match self.seed {
                Some(s) => s,
                None => file.parsed("seed")?.unwrap_or(1),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bare_args() -> ScenarioArgs {
        ScenarioArgs {
            dict: vec![],
            dict_format: None,
            word_col: None,
            count_col: None,
            header: false,
            strict: false,
            min_count: None,
            pin_length: None,
            mapping: None,
            strategy: None,
            morph: false,
            blacklist: None,
            blacklist_mode: None,
            mix_weight: None,
            alpha: None,
            beta: None,
            top: None,
            mc_samples: None,
            seed: None,
            output: None,
            config: None,
        }
    }

    #[test]
    fn defaults_mirror_the_convention() {
        let r = bare_args().resolve().unwrap();
        assert_eq!(r.scenario.min_count, 1.0);
        assert_eq!(r.scenario.pin_length, 4);
        assert_eq!(r.scenario.alpha, 0.5);
        assert_eq!(r.scenario.beta, 6);
        assert_eq!(r.scenario.top, 10);
        assert_eq!(r.scenario.mix_weight, 0.5);
        assert_eq!(r.scenario.strategy, Strategy::Basic);
        assert_eq!(r.scenario.mapping, MappingChoice::Standard);
        assert_eq!(r.output, OutputKind::Table);
    }

    #[test]
    fn file_config_fills_gaps_and_flags_win() {
        let file = FileConfig::parse("pin-length=5\nstrategy=prefix\nmorph=true\n").unwrap();
        assert_eq!(file.parsed::<usize>("pin-length").unwrap(), Some(5));

        let dir = std::env::temp_dir().join("dictpin-args-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("merge.conf");
        std::fs::write(&path, "pin-length=5\nstrategy=prefix\nbeta=3\n").unwrap();

        let mut args = bare_args();
        args.config = Some(path.clone());
        args.pin_length = Some(6);
        let r = args.resolve().unwrap();
        assert_eq!(r.scenario.pin_length, 6, "flag beats file");
        assert_eq!(r.scenario.strategy, Strategy::Prefix, "file beats default");
        assert_eq!(r.scenario.beta, 3);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn separators_parse_by_name_or_char() {
        assert_eq!(parse_separator("tab").unwrap(), '\t');
        assert_eq!(parse_separator("comma").unwrap(), ',');
        assert_eq!(parse_separator(";").unwrap(), ';');
        assert!(parse_separator("ab").is_err());
    }

    #[test]
    fn config_rejects_duplicates_and_junk() {
        assert!(FileConfig::parse("alpha=0.5\nalpha=0.6").is_err());
        assert!(FileConfig::parse("what even is this").is_err());
        let cfg = FileConfig::parse("# comment\n\ndict=a.tsv\ndict=b.tsv\n").unwrap();
        assert_eq!(cfg.dicts.len(), 2);
    }
}
