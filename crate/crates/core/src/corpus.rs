//! Word frequency list ingestion, normalization and filtering.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

use crate::sum::compensated_sum;
use crate::{Error, Result};

/// One normalized word together with its occurrence count.
///
/// The word is lowercase `a`–`z` only; the count is any positive real
/// (published lists carry raw counts or per-million rates).
#[derive(Debug, Clone, PartialEq)]
pub struct WordEntry {
    pub word: String,
    pub count: f64,
}

/// A parsed frequency list: the empirical language model.
///
/// Entries are unique per word (case and diacritic variants merged at
/// ingestion) and kept in descending count order, ties broken by
/// ascending word, so "most frequent word" queries are deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct WordFrequencyList {
    entries: Vec<WordEntry>,
    total_count: f64,
    source_label: String,
}

/// How to slice a record line into word and count fields.
#[derive(Debug, Clone, PartialEq)]
pub struct ListFormat {
    pub separator: char,
    pub word_column: usize,
    pub count_column: usize,
    pub has_header: bool,
    pub strict: bool,
}

impl Default for ListFormat {
    fn default() -> Self {
        Self {
            separator: '\t',
            word_column: 0,
            count_column: 1,
            has_header: false,
            strict: false,
        }
    }
}

impl ListFormat {
    pub fn validate(&self) -> Result<()> {
        if self.word_column == self.count_column {
            return Err(Error::BadFormat(format!(
                "word column and count column are both {}",
                self.word_column
            )));
        }
        Ok(())
    }
}

/// Ingestion statistics, reported by `inspect` and useful when a list
/// silently loses records in non-strict mode.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseStats {
    /// Data lines read (header excluded).
    pub lines: usize,
    /// Lines dropped: normalization rejected the word, or the record was
    /// malformed in non-strict mode.
    pub skipped: usize,
    /// Raw forms that merged into an already-seen normalized word.
    pub merged: usize,
}

/// Predicate on word length used by filtering, strategies and word
/// blacklists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthFilter {
    Any,
    Exactly(usize),
    AtLeast(usize),
}

impl LengthFilter {
    pub fn accepts(&self, len: usize) -> bool {
        match *self {
            LengthFilter::Any => true,
            LengthFilter::Exactly(n) => len == n,
            LengthFilter::AtLeast(n) => len >= n,
        }
    }
}

/// Normalize a raw token to a dictionary word.
///
/// Applies Unicode canonical decomposition, drops combining marks and
/// lowercases. Accepts the result only if something remains and every
/// character is `a`–`z`; anything else (digits, apostrophes, hyphens)
/// rejects the whole token rather than being deleted, since the keypad
/// mapping is defined on letters only.
pub fn normalize_word(raw: &str) -> Option<String> {
    let mut out = String::with_capacity(raw.len());
    for c in raw.nfd() {
        if is_combining_mark(c) {
            continue;
        }
        for lower in c.to_lowercase() {
            if lower.is_ascii_lowercase() {
                out.push(lower);
            } else {
                return None;
            }
        }
    }
    if out.is_empty() {
        None
    } else {
        Some(out)
    }
}

/// Parse a frequency list from a reader.
///
/// One record per line; fields split on `format.separator`; the word and
/// count columns are configurable so both bare two-column extracts and
/// wider exports work. Raw forms normalizing to the same word are merged
/// by summing counts. In non-strict mode malformed lines and rejected
/// words are skipped and counted; in strict mode any malformed line is
/// an error carrying its line number.
pub fn parse_frequency_list<R: BufRead>(
    reader: R,
    format: &ListFormat,
    source_label: &str,
) -> Result<(WordFrequencyList, ParseStats)> {
    format.validate()?;
    let mut stats = ParseStats::default();
    let mut raw: Vec<(String, f64)> = Vec::new();
    let needed = format.word_column.max(format.count_column);

    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::ParseLine {
            line: idx + 1,
            reason: e.to_string(),
        })?;
        if idx == 0 && format.has_header {
            continue;
        }
        if line.is_empty() {
            continue;
        }
        stats.lines += 1;
        let fields: Vec<&str> = line.split(format.separator).collect();
        if fields.len() <= needed {
            if format.strict {
                return Err(Error::ParseLine {
                    line: idx + 1,
                    reason: format!("expected at least {} columns, got {}", needed + 1, fields.len()),
                });
            }
            stats.skipped += 1;
            continue;
        }
        let count: f64 = match fields[format.count_column].trim().parse() {
            Ok(c) if c > 0.0 && f64::is_finite(c) => c,
            _ => {
                if format.strict {
                    return Err(Error::ParseLine {
                        line: idx + 1,
                        reason: format!("count {:?} is not a positive number", fields[format.count_column]),
                    });
                }
                stats.skipped += 1;
                continue;
            }
        };
        match normalize_word(fields[format.word_column].trim()) {
            Some(word) => raw.push((word, count)),
            None => stats.skipped += 1,
        }
    }

    let list = WordFrequencyList::from_raw(raw, source_label, &mut stats)?;
    Ok((list, stats))
}

impl WordFrequencyList {
    /// Build a list from already-normalized `(word, count)` pairs,
    /// merging duplicates.
    pub fn from_counts(pairs: impl IntoIterator<Item = (String, f64)>, source_label: &str) -> Result<Self> {
        let mut stats = ParseStats::default();
        Self::from_raw(pairs.into_iter().collect(), source_label, &mut stats)
    }

    fn from_raw(mut raw: Vec<(String, f64)>, source_label: &str, stats: &mut ParseStats) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut entries: Vec<WordEntry> = Vec::with_capacity(raw.len());
        for (word, count) in raw {
            match entries.last_mut() {
                Some(last) if last.word == word => {
                    last.count += count;
                    stats.merged += 1;
                }
                _ => entries.push(WordEntry { word, count }),
            }
        }
        Ok(Self::from_entries(entries, source_label))
    }

    fn from_entries(mut entries: Vec<WordEntry>, source_label: &str) -> Self {
        entries.sort_by(|a, b| {
            b.count
                .partial_cmp(&a.count)
                .expect("counts are finite")
                .then_with(|| a.word.cmp(&b.word))
        });
        let total_count = compensated_sum(entries.iter().map(|e| e.count));
        Self {
            entries,
            total_count,
            source_label: source_label.to_string(),
        }
    }

    /// Read a list from a file, labelling it with the file stem.
    pub fn load(path: &Path, format: &ListFormat) -> Result<(Self, ParseStats)> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        parse_frequency_list(BufReader::new(file), format, &label)
    }

    /// Entries in descending count order, ties by ascending word.
    pub fn entries(&self) -> &[WordEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_count(&self) -> f64 {
        self.total_count
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    /// Keep entries with `count > min_count` that satisfy the length
    /// predicate; the total is recomputed. The threshold is a strict
    /// inequality: published lists are typically cut at "frequency
    /// higher than 1".
    pub fn filter(&self, min_count: f64, length: LengthFilter) -> Result<Self> {
        let kept: Vec<WordEntry> = self
            .entries
            .iter()
            .filter(|e| e.count > min_count && length.accepts(e.word.len()))
            .cloned()
            .collect();
        if kept.is_empty() {
            return Err(Error::EmptyAfterFilter);
        }
        Ok(Self::from_entries(kept, &self.source_label))
    }

    /// Histogram of word lengths, as `(length, entry count)` ascending.
    pub fn length_histogram(&self) -> Vec<(usize, usize)> {
        let mut hist: Vec<(usize, usize)> = Vec::new();
        for e in &self.entries {
            let len = e.word.len();
            match hist.binary_search_by_key(&len, |&(l, _)| l) {
                Ok(i) => hist[i].1 += 1,
                Err(i) => hist.insert(i, (len, 1)),
            }
        }
        hist
    }

    /// Serialize as word<TAB>count lines in canonical order. Counts use
    /// the shortest representation that parses back to the same value,
    /// so serialize → parse is lossless.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for e in &self.entries {
            writeln!(out, "{}\t{}", e.word, e.count)?;
        }
        Ok(())
    }
}

/// Standalone filtering operation; see [`WordFrequencyList::filter`].
pub fn filter_list(list: &WordFrequencyList, min_count: f64, length: LengthFilter) -> Result<WordFrequencyList> {
    list.filter(min_count, length)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, format: &ListFormat) -> (WordFrequencyList, ParseStats) {
        parse_frequency_list(text.as_bytes(), format, "test").unwrap()
    }

    #[test]
    fn extracts_word_and_count() {
        let (list, stats) = parse("that\t11000\n", &ListFormat::default());
        assert_eq!(list.entries(), &[WordEntry { word: "that".into(), count: 11000.0 }]);
        assert_eq!(stats.skipped, 0);
        assert_eq!(list.total_count(), 11000.0);
    }

    #[test]
    fn case_variants_merge_into_one_entry() {
        let (list, stats) = parse("That\t3\nTHAT\t2\n", &ListFormat::default());
        assert_eq!(list.len(), 1);
        assert_eq!(list.entries()[0].word, "that");
        assert_eq!(list.entries()[0].count, 5.0);
        assert_eq!(stats.merged, 1);
    }

    #[test]
    fn non_letter_words_are_skipped_and_counted() {
        let (list, stats) = parse("it's\t40\nhate\t2\n", &ListFormat::default());
        assert_eq!(list.len(), 1);
        assert_eq!(stats.skipped, 1);
        assert_eq!(list.entries()[0].word, "hate");
    }

    #[test]
    fn strict_mode_reports_the_line_number() {
        let format = ListFormat { strict: true, ..ListFormat::default() };
        let err = parse_frequency_list("good\t5\nbad\tx\n".as_bytes(), &format, "t").unwrap_err();
        assert!(matches!(err, Error::ParseLine { line: 2, .. }), "{err}");
    }

    #[test]
    fn nonpositive_counts_are_rejected() {
        let (list, stats) = parse("zero\t0\nneg\t-3\nnan\tNaN\nok\t1\n", &ListFormat::default());
        assert_eq!(list.len(), 1);
        assert_eq!(stats.skipped, 3);
    }

    #[test]
    fn empty_input_is_an_error() {
        let err = parse_frequency_list("".as_bytes(), &ListFormat::default(), "t").unwrap_err();
        assert!(matches!(err, Error::EmptyCorpus));
    }

    #[test]
    fn header_and_column_selection() {
        let format = ListFormat {
            separator: ',',
            word_column: 1,
            count_column: 2,
            has_header: true,
            ..ListFormat::default()
        };
        let (list, _) = parse("id,Word,Freq\n1,that,3\n2,what,1\n", &format);
        assert_eq!(list.len(), 2);
        assert_eq!(list.entries()[0].word, "that");
    }

    #[test]
    fn same_column_twice_is_a_format_error() {
        let format = ListFormat { word_column: 1, count_column: 1, ..ListFormat::default() };
        assert!(matches!(
            parse_frequency_list("a\t1".as_bytes(), &format, "t"),
            Err(Error::BadFormat(_))
        ));
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalize_word("Löve").as_deref(), Some("love"));
        assert_eq!(normalize_word("hate").as_deref(), Some("hate"));
        assert_eq!(normalize_word("it's"), None);
        assert_eq!(normalize_word(""), None);
        assert_eq!(normalize_word("naïve").as_deref(), Some("naive"));
        assert_eq!(normalize_word("pin42"), None);
    }

    #[test]
    fn normalization_is_idempotent() {
        for raw in ["Löve", "CRÈME", "weiß", "ok", "Ångström"] {
            if let Some(once) = normalize_word(raw) {
                assert_eq!(normalize_word(&once).as_deref(), Some(once.as_str()));
            }
        }
    }

    #[test]
    fn filter_by_length_and_threshold() {
        let list = WordFrequencyList::from_counts(
            [("that".into(), 3.0), ("a".into(), 9.0), ("there".into(), 2.0)],
            "t",
        )
        .unwrap();
        let four = list.filter(0.0, LengthFilter::Exactly(4)).unwrap();
        assert_eq!(four.len(), 1);
        assert_eq!(four.entries()[0].word, "that");
        assert_eq!(four.total_count(), 3.0);

        let list = WordFrequencyList::from_counts([("that".into(), 1.0), ("what".into(), 5.0)], "t").unwrap();
        let cut = list.filter(1.0, LengthFilter::Any).unwrap();
        assert_eq!(cut.len(), 1);
        assert_eq!(cut.entries()[0].word, "what");

        let list = WordFrequencyList::from_counts([("that".into(), 3.0), ("what".into(), 1.0)], "t").unwrap();
        let at_least = list.filter(0.0, LengthFilter::AtLeast(4)).unwrap();
        assert_eq!(at_least.len(), 2);
    }

    #[test]
    fn filtering_everything_is_an_error() {
        let list = WordFrequencyList::from_counts([("abc".into(), 1.0)], "t").unwrap();
        assert!(matches!(list.filter(0.0, LengthFilter::Exactly(9)), Err(Error::EmptyAfterFilter)));
    }

    #[test]
    fn entries_are_in_descending_count_order_with_word_ties() {
        let list = WordFrequencyList::from_counts(
            [("bb".into(), 2.0), ("aa".into(), 2.0), ("cc".into(), 5.0)],
            "t",
        )
        .unwrap();
        let words: Vec<&str> = list.entries().iter().map(|e| e.word.as_str()).collect();
        assert_eq!(words, ["cc", "aa", "bb"]);
    }

    #[test]
    fn serialize_then_reparse_is_identity() {
        let (list, _) = parse("That\t3.5\nwhat\t2\nthere\t0.125\nTHAT\t1\n", &ListFormat::default());
        let mut buf = Vec::new();
        list.write_tsv(&mut buf).unwrap();
        let (reparsed, stats) = parse_frequency_list(buf.as_slice(), &ListFormat::default(), "test").unwrap();
        assert_eq!(reparsed, list);
        assert_eq!(stats.skipped, 0);
    }

    #[test]
    fn total_count_matches_entry_sum() {
        let (list, _) = parse("a\t0.1\nb\t0.2\nc\t0.3\n", &ListFormat::default());
        let sum: f64 = list.entries().iter().map(|e| e.count).sum();
        assert!((list.total_count() - sum).abs() <= 1e-12 * sum);
    }
}
