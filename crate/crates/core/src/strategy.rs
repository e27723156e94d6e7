//! PIN distribution construction and transformation strategies.
//!
//! A [`PinDistribution`] is an exact probability mass function over
//! fixed-length digit strings. Constructors translate a word frequency
//! list through a keypad mapping (straight translation of length-n
//! words, or prefix truncation of longer words); transformations model
//! policy and user behaviour (single-digit morphing, blacklisting,
//! two-dictionary mixtures).

use crate::corpus::{LengthFilter, WordFrequencyList};
use crate::mapping::KeypadMapping;
use crate::sum::{compensated_sum, Compensated};
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

const POW10: [u32; 10] = [
    1,
    10,
    100,
    1_000,
    10_000,
    100_000,
    1_000_000,
    10_000_000,
    100_000_000,
    1_000_000_000,
];

/// Longest representable PIN; codes are packed into a `u32` per digit
/// position, so 9 digits is the ceiling (and far beyond practical PINs).
pub const MAX_PIN_LENGTH: usize = 9;

/// Morphed distributions are accumulated into a dense table when the
/// PIN space fits; beyond this the sparse pair-merge path is used.
const DENSE_SPACE_LIMIT: u64 = 1_000_000;

/// Base entries per work unit when morphing; fixed so that the parallel
/// and sequential paths chunk identically and stay bit-for-bit equal.
const MORPH_BLOCK: usize = 8 * 1024;

/// Render a packed PIN code as its zero-padded digit string.
pub fn pin_to_string(code: u32, pin_length: usize) -> String {
    format!("{code:0pin_length$}")
}

/// An exact probability mass function over `pin_length`-digit strings.
///
/// Entries are held in canonical order: descending probability, ties
/// broken by ascending PIN. All probabilities are strictly positive and
/// sum to 1 within 1e-9; zero-mass PINs are simply absent. The canonical
/// order doubles as the attacker's optimal guessing order, which is what
/// every metric is defined against.
#[derive(Debug, Clone, PartialEq)]
pub struct PinDistribution {
    pin_length: usize,
    entries: Vec<(u32, f64)>,
}

impl PinDistribution {
    /// Build a distribution from weighted PIN codes.
    ///
    /// Weights need not be normalized: duplicates are merged with
    /// compensated accumulation, non-positive weights are dropped, and
    /// the result is scaled to total mass 1.
    pub fn from_weighted(pin_length: usize, weighted: Vec<(u32, f64)>) -> Result<Self> {
        assert!(
            pin_length >= 1 && pin_length <= MAX_PIN_LENGTH,
            "pin_length {pin_length} out of range 1..={MAX_PIN_LENGTH}"
        );
        let space = POW10[pin_length];
        let mut weighted = weighted;
        weighted.sort_by_key(|&(code, _)| code);

        let mut entries: Vec<(u32, f64)> = Vec::with_capacity(weighted.len());
        let mut i = 0;
        while i < weighted.len() {
            let code = weighted[i].0;
            debug_assert!(code < space, "PIN code {code} exceeds space 10^{pin_length}");
            let mut acc = Compensated::new();
            while i < weighted.len() && weighted[i].0 == code {
                debug_assert!(weighted[i].1.is_finite());
                acc.add(weighted[i].1);
                i += 1;
            }
            let mass = acc.value();
            if mass > 0.0 {
                entries.push((code, mass));
            }
        }
        if entries.is_empty() {
            return Err(Error::NoMass {
                what: "distribution construction",
            });
        }
        let total = compensated_sum(entries.iter().map(|&(_, m)| m));
        for e in &mut entries {
            e.1 /= total;
        }
        sort_canonical(&mut entries);
        Ok(Self { pin_length, entries })
    }

    /// The uniform distribution over every `pin_length`-digit string
    /// drawn from the given digit set — the ideal baseline a mapping
    /// admits.
    pub fn uniform(pin_length: usize, digits: &[u8]) -> Result<Self> {
        assert!(!digits.is_empty() && digits.iter().all(|&d| d <= 9));
        let m = (digits.len() as u64).pow(pin_length as u32);
        let mass = 1.0 / m as f64;
        let mut weighted = Vec::with_capacity(m as usize);
        let mut stack = vec![0u32];
        for _ in 0..pin_length {
            let mut next = Vec::with_capacity(stack.len() * digits.len());
            for code in stack {
                for &d in digits {
                    next.push(code * 10 + u32::from(d));
                }
            }
            stack = next;
        }
        for code in stack {
            weighted.push((code, mass));
        }
        Self::from_weighted(pin_length, weighted)
    }

    pub fn pin_length(&self) -> usize {
        self.pin_length
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    /// Size of the full PIN space, `10^pin_length`.
    pub fn pin_space(&self) -> u64 {
        u64::from(POW10[self.pin_length])
    }

    /// The canonical sorted view: descending probability, ties by
    /// ascending PIN code.
    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    /// Probability of a PIN given as a digit string; 0 for PINs outside
    /// the support (or of the wrong length).
    pub fn probability(&self, pin: &str) -> f64 {
        if pin.len() != self.pin_length || !pin.bytes().all(|b| b.is_ascii_digit()) {
            return 0.0;
        }
        let code: u32 = pin.parse().expect("digit strings of length <= 9 fit u32");
        self.entries
            .iter()
            .find(|&&(c, _)| c == code)
            .map_or(0.0, |&(_, p)| p)
    }

    /// The `m` most probable PINs with their probabilities, rendered.
    pub fn top(&self, m: usize) -> Vec<(String, f64)> {
        self.entries
            .iter()
            .take(m)
            .map(|&(code, p)| (pin_to_string(code, self.pin_length), p))
            .collect()
    }

    /// Total mass; 1 within 1e-9 by construction, exposed for tests.
    pub fn total_mass(&self) -> f64 {
        compensated_sum(self.entries.iter().map(|&(_, p)| p))
    }
}

fn sort_canonical(entries: &mut [(u32, f64)]) {
    entries.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .expect("probabilities are finite")
            .then_with(|| a.0.cmp(&b.0))
    });
}

/// Which items a blacklist removes: whole PINs from a constructed
/// distribution, or source words before construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlacklistMode {
    Pin,
    Word,
}

/// A blacklist policy: remove the `k` most frequent items.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlacklistSpec {
    pub mode: BlacklistMode,
    pub k: usize,
}

impl BlacklistSpec {
    pub fn none() -> Self {
        Self {
            mode: BlacklistMode::Pin,
            k: 0,
        }
    }
}

/// Straight construction: every word of length exactly `pin_length`
/// contributes its count to the PIN it maps to; probabilities are
/// normalized over the length-`pin_length` words only.
pub fn basic_distribution(
    list: &WordFrequencyList,
    pin_length: usize,
    mapping: &KeypadMapping,
) -> Result<PinDistribution> {
    let weighted: Vec<(u32, f64)> = list
        .entries()
        .iter()
        .filter(|e| e.word.len() == pin_length)
        .map(|e| (mapping.map_prefix_code(&e.word, pin_length), e.count))
        .collect();
    if weighted.is_empty() {
        return Err(Error::EmptySupport {
            stage: "basic",
            pin_length,
        });
    }
    PinDistribution::from_weighted(pin_length, weighted)
}

/// Prefix construction: every word of length at least `pin_length`
/// contributes its full count to the PIN its first `pin_length` letters
/// map to.
pub fn prefix_distribution(
    list: &WordFrequencyList,
    pin_length: usize,
    mapping: &KeypadMapping,
) -> Result<PinDistribution> {
    let weighted: Vec<(u32, f64)> = list
        .entries()
        .iter()
        .filter(|e| e.word.len() >= pin_length)
        .map(|e| (mapping.map_prefix_code(&e.word, pin_length), e.count))
        .collect();
    if weighted.is_empty() {
        return Err(Error::EmptySupport {
            stage: "prefix",
            pin_length,
        });
    }
    PinDistribution::from_weighted(pin_length, weighted)
}

/// Morph a distribution: one uniformly chosen position is replaced by
/// one uniformly chosen digit (the current digit included, so identity
/// replacements concentrate extra mass on the original PIN).
///
/// Each source PIN of mass `q` spreads `q/(10·n)` over every
/// `(position, digit)` outcome; total mass is preserved.
pub fn morph_distribution(base: &PinDistribution) -> PinDistribution {
    #[cfg(feature = "parallel")]
    {
        morph_distribution_par(base)
    }
    #[cfg(not(feature = "parallel"))]
    {
        morph_distribution_seq(base)
    }
}

/// Sequential morphing; used directly by the benchmark suite, otherwise
/// behind [`morph_distribution`].
pub fn morph_distribution_seq(base: &PinDistribution) -> PinDistribution {
    let n = base.pin_length();
    if u64::from(POW10[n]) <= DENSE_SPACE_LIMIT {
        let dense = dense_input(base);
        let space = POW10[n] as usize;
        let mut out = vec![0.0f64; space];
        for (start, block) in morph_output_blocks(space) {
            morph_dense_block(&dense, n, start, &mut out[start..start + block]);
        }
        dense_to_distribution(n, &out)
    } else {
        let pairs: Vec<Vec<(u32, f64)>> = base
            .entries()
            .chunks(MORPH_BLOCK)
            .map(|chunk| morph_sparse_chunk(chunk, n))
            .collect();
        sparse_to_distribution(n, pairs)
    }
}

/// Rayon morphing; chunked exactly like the sequential path, so the two
/// produce bit-identical distributions.
#[cfg(feature = "parallel")]
pub fn morph_distribution_par(base: &PinDistribution) -> PinDistribution {
    let n = base.pin_length();
    if u64::from(POW10[n]) <= DENSE_SPACE_LIMIT {
        let dense = dense_input(base);
        let space = POW10[n] as usize;
        let mut out = vec![0.0f64; space];
        out.par_chunks_mut(MORPH_BLOCK)
            .enumerate()
            .for_each(|(i, block)| {
                morph_dense_block(&dense, n, i * MORPH_BLOCK, block);
            });
        dense_to_distribution(n, &out)
    } else {
        let pairs: Vec<Vec<(u32, f64)>> = base
            .entries()
            .par_chunks(MORPH_BLOCK)
            .map(|chunk| morph_sparse_chunk(chunk, n))
            .collect();
        sparse_to_distribution(n, pairs)
    }
}

fn dense_input(base: &PinDistribution) -> Vec<f64> {
    let mut dense = vec![0.0f64; POW10[base.pin_length()] as usize];
    for &(code, p) in base.entries() {
        dense[code as usize] = p;
    }
    dense
}

fn morph_output_blocks(space: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..space)
        .step_by(MORPH_BLOCK)
        .map(move |start| (start, MORPH_BLOCK.min(space - start)))
}

/// Compute morphed mass for output codes `[start, start + block.len())`.
///
/// The morphed mass at `x` collects, for every position `j`, the mass of
/// all PINs that agree with `x` off `j` — each such source reaches `x`
/// with probability `1/(10n)`.
fn morph_dense_block(dense: &[f64], n: usize, start: usize, block: &mut [f64]) {
    let share = 1.0 / (10.0 * n as f64);
    for (offset, out) in block.iter_mut().enumerate() {
        let code = start + offset;
        let mut acc = Compensated::new();
        for j in 0..n {
            let pow = POW10[n - 1 - j] as usize;
            let digit = (code / pow) % 10;
            let floor = code - digit * pow;
            for d in 0..10 {
                acc.add(dense[floor + d * pow]);
            }
        }
        *out = acc.value() * share;
    }
}

fn morph_sparse_chunk(chunk: &[(u32, f64)], n: usize) -> Vec<(u32, f64)> {
    let share_div = 10.0 * n as f64;
    let mut pairs = Vec::with_capacity(chunk.len() * 10 * n);
    for &(code, p) in chunk {
        let share = p / share_div;
        for j in 0..n {
            let pow = POW10[n - 1 - j];
            let digit = (code / pow) % 10;
            let floor = code - digit * pow;
            for d in 0..10 {
                pairs.push((floor + d * pow, share));
            }
        }
    }
    pairs
}

fn dense_to_distribution(n: usize, dense: &[f64]) -> PinDistribution {
    let weighted: Vec<(u32, f64)> = dense
        .iter()
        .enumerate()
        .filter(|&(_, &m)| m > 0.0)
        .map(|(code, &m)| (code as u32, m))
        .collect();
    PinDistribution::from_weighted(n, weighted).expect("morphing preserves positive mass")
}

fn sparse_to_distribution(n: usize, pairs: Vec<Vec<(u32, f64)>>) -> PinDistribution {
    let flat: Vec<(u32, f64)> = pairs.into_iter().flatten().collect();
    PinDistribution::from_weighted(n, flat).expect("morphing preserves positive mass")
}

/// Remove the `k` most probable PINs (canonical order, so ties are
/// deterministic) and renormalize the remainder.
pub fn blacklist_pins(dist: &PinDistribution, k: usize) -> Result<PinDistribution> {
    if k == 0 {
        return Ok(dist.clone());
    }
    if k >= dist.support_size() {
        return Err(Error::BlacklistExhaustsSupport {
            requested: k,
            available: dist.support_size(),
        });
    }
    let kept = &dist.entries()[k..];
    let kept_mass = compensated_sum(kept.iter().map(|&(_, p)| p));
    log::debug!(
        "pin blacklist: removed top {k} PINs carrying {:.4}% of the mass",
        (1.0 - kept_mass) * 100.0
    );
    let mut entries: Vec<(u32, f64)> = kept.iter().map(|&(code, p)| (code, p / kept_mass)).collect();
    sort_canonical(&mut entries);
    Ok(PinDistribution {
        pin_length: dist.pin_length(),
        entries,
    })
}

/// Remove the `k` highest-count words among those satisfying the length
/// predicate; other entries are untouched. Ties break by ascending word,
/// mirroring the PIN-level rule.
pub fn blacklist_words(
    list: &WordFrequencyList,
    k: usize,
    eligible: LengthFilter,
) -> Result<WordFrequencyList> {
    let eligible_count = list
        .entries()
        .iter()
        .filter(|e| eligible.accepts(e.word.len()))
        .count();
    if k >= eligible_count && k > 0 {
        return Err(Error::BlacklistExhaustsSupport {
            requested: k,
            available: eligible_count,
        });
    }
    if k == 0 {
        return Ok(list.clone());
    }
    // Entries are already in descending-count, ascending-word order, so
    // the first k eligible entries are exactly the blacklist.
    let mut removed = 0usize;
    let kept: Vec<(String, f64)> = list
        .entries()
        .iter()
        .filter(|e| {
            if removed < k && eligible.accepts(e.word.len()) {
                removed += 1;
                false
            } else {
                true
            }
        })
        .map(|e| (e.word.clone(), e.count))
        .collect();
    log::debug!("word blacklist: removed top {k} of {eligible_count} eligible words");
    WordFrequencyList::from_counts(kept, list.source_label())
}

/// Mix two distributions of equal PIN length: `weight` on `a`,
/// `1 - weight` on `b`. Models a user who first picks one of two
/// dictionaries at random.
pub fn mix(a: &PinDistribution, b: &PinDistribution, weight: f64) -> Result<PinDistribution> {
    if a.pin_length() != b.pin_length() {
        return Err(Error::PinLengthMismatch {
            left: a.pin_length(),
            right: b.pin_length(),
        });
    }
    if !(0.0..=1.0).contains(&weight) {
        return Err(Error::BadWeight(weight));
    }
    let mut weighted: Vec<(u32, f64)> = Vec::with_capacity(a.support_size() + b.support_size());
    weighted.extend(a.entries().iter().map(|&(code, p)| (code, weight * p)));
    weighted.extend(b.entries().iter().map(|&(code, p)| (code, (1.0 - weight) * p)));
    PinDistribution::from_weighted(a.pin_length(), weighted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::WordFrequencyList;
    use std::collections::HashMap;

    fn list(pairs: &[(&str, f64)]) -> WordFrequencyList {
        WordFrequencyList::from_counts(pairs.iter().map(|&(w, c)| (w.to_string(), c)), "test").unwrap()
    }

    fn std_map() -> KeypadMapping {
        KeypadMapping::standard()
    }

    #[test]
    fn basic_distribution_normalizes_over_length_n_words() {
        let dist = basic_distribution(&list(&[("that", 3.0), ("what", 1.0)]), 4, &std_map()).unwrap();
        assert_eq!(dist.probability("8428"), 0.75);
        assert_eq!(dist.probability("9428"), 0.25);
        assert_eq!(dist.support_size(), 2);
    }

    #[test]
    fn basic_distribution_ignores_other_lengths() {
        let dist = basic_distribution(&list(&[("that", 3.0), ("a", 100.0)]), 4, &std_map()).unwrap();
        assert_eq!(dist.probability("8428"), 1.0);
    }

    #[test]
    fn basic_distribution_errors_without_support() {
        let err = basic_distribution(&list(&[("abc", 1.0)]), 4, &std_map()).unwrap_err();
        assert!(matches!(err, Error::EmptySupport { stage: "basic", pin_length: 4 }));
    }

    #[test]
    fn prefix_distribution_truncates_longer_words() {
        let dist =
            prefix_distribution(&list(&[("there", 2.0), ("that", 1.0), ("the", 1.0)]), 4, &std_map()).unwrap();
        assert!((dist.probability("8437") - 2.0 / 3.0).abs() < 1e-15);
        assert!((dist.probability("8428") - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(dist.support_size(), 2);
    }

    #[test]
    fn prefix_equals_basic_on_length_n_corpora() {
        let l = list(&[("love", 5.0), ("hate", 3.0), ("know", 2.0)]);
        let basic = basic_distribution(&l, 4, &std_map()).unwrap();
        let prefix = prefix_distribution(&l, 4, &std_map()).unwrap();
        assert_eq!(basic, prefix);
    }

    #[test]
    fn morph_of_point_mass_enumerates_forty_outcomes() {
        let base = basic_distribution(&list(&[("that", 1.0)]), 4, &std_map()).unwrap();
        let morphed = morph_distribution(&base);

        // Independent enumeration of all (position, digit) outcomes.
        let mut expected: HashMap<String, f64> = HashMap::new();
        let pin = "8428";
        for j in 0..4 {
            for d in 0..10u8 {
                let mut out = pin.to_string().into_bytes();
                out[j] = b'0' + d;
                *expected.entry(String::from_utf8(out).unwrap()).or_insert(0.0) += 1.0 / 40.0;
            }
        }
        assert_eq!(morphed.support_size(), expected.len());
        assert_eq!(expected.len(), 37);
        for (pin, want) in &expected {
            assert!(
                (morphed.probability(pin) - want).abs() < 1e-15,
                "pin {pin}: got {}, want {want}",
                morphed.probability(pin)
            );
        }
        assert!((morphed.probability("8428") - 0.1).abs() < 1e-15);
    }

    #[test]
    fn morph_preserves_mass_and_grows_support() {
        let base = basic_distribution(&list(&[("that", 3.0), ("what", 1.0)]), 4, &std_map()).unwrap();
        let morphed = morph_distribution(&base);
        assert!((morphed.total_mass() - 1.0).abs() < 1e-12);
        assert!(morphed.support_size() >= base.support_size());
        // The standard mapping never emits 0 or 1, morphing does.
        assert!(morphed.probability("0428") > 0.0);
        assert!(morphed.probability("1428") > 0.0);
    }

    #[test]
    fn morph_seq_matches_dispatch_exactly() {
        let base = basic_distribution(
            &list(&[("that", 3.0), ("what", 1.0), ("love", 0.5), ("know", 0.25)]),
            4,
            &std_map(),
        )
        .unwrap();
        assert_eq!(morph_distribution_seq(&base), morph_distribution(&base));
    }

    #[test]
    fn morph_sparse_path_matches_dense_result() {
        // Same base, pushed through both accumulation paths: the dense
        // path at n=4 and the sparse pair-merge used for wide spaces.
        let base = basic_distribution(&list(&[("that", 3.0), ("what", 1.0)]), 4, &std_map()).unwrap();
        let dense = morph_distribution_seq(&base);
        let pairs: Vec<Vec<(u32, f64)>> = base
            .entries()
            .chunks(MORPH_BLOCK)
            .map(|chunk| morph_sparse_chunk(chunk, 4))
            .collect();
        let sparse = sparse_to_distribution(4, pairs);
        assert_eq!(dense.support_size(), sparse.support_size());
        for (&(ca, pa), &(cb, pb)) in dense.entries().iter().zip(sparse.entries()) {
            assert_eq!(ca, cb);
            assert!((pa - pb).abs() < 1e-15);
        }
    }

    #[test]
    fn blacklist_removes_and_renormalizes() {
        let dist = PinDistribution::from_weighted(1, vec![(1, 0.5), (2, 0.3), (3, 0.2)]).unwrap();
        let cut = blacklist_pins(&dist, 1).unwrap();
        assert_eq!(cut.support_size(), 2);
        assert!((cut.probability("2") - 0.6).abs() < 1e-15);
        assert!((cut.probability("3") - 0.4).abs() < 1e-15);
        assert_eq!(cut.probability("1"), 0.0);
    }

    #[test]
    fn blacklist_zero_is_identity() {
        let dist = PinDistribution::from_weighted(2, vec![(11, 0.5), (22, 0.5)]).unwrap();
        assert_eq!(blacklist_pins(&dist, 0).unwrap(), dist);
    }

    #[test]
    fn blacklist_exhausting_support_is_an_error() {
        let dist = PinDistribution::from_weighted(1, vec![(1, 0.5), (2, 0.5)]).unwrap();
        assert!(matches!(
            blacklist_pins(&dist, 2),
            Err(Error::BlacklistExhaustsSupport { requested: 2, available: 2 })
        ));
    }

    #[test]
    fn blacklist_ties_break_by_ascending_pin() {
        let dist =
            PinDistribution::from_weighted(1, vec![(7, 0.25), (3, 0.25), (5, 0.5)]).unwrap();
        let cut = blacklist_pins(&dist, 2).unwrap();
        // 5 (highest), then 3 (tie broken by code) go first.
        assert_eq!(cut.entries(), &[(7, 1.0)]);
    }

    #[test]
    fn word_blacklist_removes_top_counts_among_eligible() {
        let l = list(&[("that", 3.0), ("what", 2.0), ("love", 1.0)]);
        let cut = blacklist_words(&l, 1, LengthFilter::Exactly(4)).unwrap();
        let words: Vec<&str> = cut.entries().iter().map(|e| e.word.as_str()).collect();
        assert_eq!(words, ["what", "love"]);

        let same = blacklist_words(&l, 0, LengthFilter::Any).unwrap();
        assert_eq!(same, l);
    }

    #[test]
    fn word_blacklist_skips_ineligible_words() {
        let l = list(&[("a", 100.0), ("that", 3.0), ("what", 2.0)]);
        let cut = blacklist_words(&l, 1, LengthFilter::Exactly(4)).unwrap();
        let words: Vec<&str> = cut.entries().iter().map(|e| e.word.as_str()).collect();
        assert_eq!(words, ["a", "what"]);
    }

    #[test]
    fn word_blacklist_exhaustion_errors() {
        let l = list(&[("that", 3.0), ("what", 2.0)]);
        assert!(matches!(
            blacklist_words(&l, 2, LengthFilter::Exactly(4)),
            Err(Error::BlacklistExhaustsSupport { .. })
        ));
    }

    #[test]
    fn mix_unions_disjoint_supports() {
        let a = PinDistribution::from_weighted(4, vec![(2222, 1.0)]).unwrap();
        let b = PinDistribution::from_weighted(4, vec![(3333, 1.0)]).unwrap();
        let m = mix(&a, &b, 0.5).unwrap();
        assert_eq!(m.probability("2222"), 0.5);
        assert_eq!(m.probability("3333"), 0.5);
    }

    #[test]
    fn mix_with_itself_is_identity() {
        let a = PinDistribution::from_weighted(2, vec![(10, 0.25), (20, 0.75)]).unwrap();
        assert_eq!(mix(&a, &a, 0.5).unwrap(), a);
        let m = mix(&a, &a, 0.3).unwrap();
        for (&(ca, pa), &(cb, pb)) in m.entries().iter().zip(a.entries()) {
            assert_eq!(ca, cb);
            assert!((pa - pb).abs() < 1e-15);
        }
    }

    #[test]
    fn mix_validates_lengths_and_weight() {
        let a = PinDistribution::from_weighted(2, vec![(10, 1.0)]).unwrap();
        let b = PinDistribution::from_weighted(3, vec![(100, 1.0)]).unwrap();
        assert!(matches!(mix(&a, &b, 0.5), Err(Error::PinLengthMismatch { left: 2, right: 3 })));
        assert!(matches!(mix(&a, &a, 1.5), Err(Error::BadWeight(_))));
    }

    #[test]
    fn uniform_baseline_has_even_masses() {
        let u = PinDistribution::uniform(2, &[2, 3]).unwrap();
        assert_eq!(u.support_size(), 4);
        for &(_, p) in u.entries() {
            assert_eq!(p, 0.25);
        }
        assert_eq!(u.probability("23"), 0.25);
        assert_eq!(u.probability("00"), 0.0);
    }

    #[test]
    fn canonical_order_is_descending_prob_then_ascending_pin() {
        let d = PinDistribution::from_weighted(2, vec![(30, 0.2), (10, 0.4), (20, 0.2), (40, 0.2)]).unwrap();
        let codes: Vec<u32> = d.entries().iter().map(|&(c, _)| c).collect();
        assert_eq!(codes, [10, 20, 30, 40]);
    }

    #[test]
    fn duplicate_codes_merge_on_construction() {
        let d = PinDistribution::from_weighted(1, vec![(5, 0.25), (5, 0.25), (6, 0.5)]).unwrap();
        assert_eq!(d.support_size(), 2);
        assert_eq!(d.probability("5"), 0.5);
    }

    #[test]
    fn leading_zeros_render_in_pin_strings() {
        assert_eq!(pin_to_string(47, 4), "0047");
        assert_eq!(pin_to_string(0, 4), "0000");
        assert_eq!(pin_to_string(8428, 4), "8428");
    }
}
