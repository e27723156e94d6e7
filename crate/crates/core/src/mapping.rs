//! Letter-to-digit keypad mappings and word-to-PIN translation.

use std::fmt;
use std::path::Path;

use crate::{Error, Result};

const ALPHABET: usize = 26;

/// A total mapping from the letters `a`–`z` to the digits `0`–`9`.
///
/// Totality is enforced at construction so translation can never fail
/// mid-corpus. The two mappings used in practice are built in:
/// [`KeypadMapping::standard`] (the ubiquitous phone keypad, digits 2–9)
/// and [`KeypadMapping::stretched`] (all ten digits). Arbitrary custom
/// tables can be loaded from `letter=digit` files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeypadMapping {
    name: String,
    table: [u8; ALPHABET],
    digit_range: Vec<u8>,
}

impl KeypadMapping {
    /// The standard phone keypad: abc→2, def→3, ghi→4, jkl→5, mno→6,
    /// pqrs→7, tuv→8, wxyz→9. Digits 0 and 1 carry no letters.
    pub fn standard() -> Self {
        Self::from_groups("standard", &["", "", "abc", "def", "ghi", "jkl", "mno", "pqrs", "tuv", "wxyz"])
    }

    /// A stretched table spreading the alphabet over all ten digits:
    /// ab→1, cd→2, ef→3, ghi→4, jkl→5, mn→6, opq→7, rst→8, uvw→9, xyz→0.
    pub fn stretched() -> Self {
        Self::from_groups("stretched", &["xyz", "ab", "cd", "ef", "ghi", "jkl", "mn", "opq", "rst", "uvw"])
    }

    fn from_groups(name: &str, groups: &[&str; 10]) -> Self {
        let mut pairs = Vec::with_capacity(ALPHABET);
        for (digit, letters) in groups.iter().enumerate() {
            for letter in letters.chars() {
                pairs.push((letter, digit as u8));
            }
        }
        Self::from_pairs(name, pairs).expect("built-in mapping tables are total")
    }

    /// Build a mapping from 26 `(letter, digit)` pairs.
    ///
    /// Every letter `a`–`z` must appear exactly once and digits must be
    /// in `0`–`9`; anything else is a construction error.
    pub fn from_pairs(name: &str, pairs: impl IntoIterator<Item = (char, u8)>) -> Result<Self> {
        let mut table = [u8::MAX; ALPHABET];
        for (letter, digit) in pairs {
            if !letter.is_ascii_lowercase() {
                return Err(Error::BadMapping(format!("invalid letter {letter:?}")));
            }
            if digit > 9 {
                return Err(Error::BadMapping(format!("invalid digit {digit} for letter '{letter}'")));
            }
            let slot = &mut table[(letter as u8 - b'a') as usize];
            if *slot != u8::MAX {
                return Err(Error::BadMapping(format!("duplicate entry for letter '{letter}'")));
            }
            *slot = digit;
        }
        if let Some(missing) = table.iter().position(|&d| d == u8::MAX) {
            return Err(Error::PartialMapping {
                name: name.to_string(),
                letter: (b'a' + missing as u8) as char,
            });
        }
        let mut seen = [false; 10];
        for &d in &table {
            seen[d as usize] = true;
        }
        let digit_range = (0u8..10).filter(|&d| seen[d as usize]).collect();
        Ok(Self {
            name: name.to_string(),
            table,
            digit_range,
        })
    }

    /// Parse a custom mapping file: one `letter=digit` pair per line,
    /// `#` comments and blank lines ignored, all 26 letters required.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut pairs = Vec::with_capacity(ALPHABET);
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (letter, digit) = line
                .split_once('=')
                .ok_or_else(|| Error::BadMapping(format!("line {}: expected letter=digit, got {line:?}", idx + 1)))?;
            let letter = letter.trim();
            let digit = digit.trim();
            let (Some(l), 1) = (letter.chars().next(), letter.chars().count()) else {
                return Err(Error::BadMapping(format!("line {}: bad letter {letter:?}", idx + 1)));
            };
            let d: u8 = digit
                .parse()
                .map_err(|_| Error::BadMapping(format!("line {}: bad digit {digit:?}", idx + 1)))?;
            pairs.push((l.to_ascii_lowercase(), d));
        }
        Self::from_pairs(name, pairs)
    }

    /// Load a custom mapping from a file; the mapping is named after the
    /// file stem.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "custom".to_string());
        Self::parse(&name, &text)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The image digit of a single lowercase letter.
    pub fn digit(&self, letter: char) -> u8 {
        debug_assert!(letter.is_ascii_lowercase());
        self.table[(letter as u8 - b'a') as usize]
    }

    /// The set of digits that actually occur in the table, ascending.
    pub fn digit_range(&self) -> &[u8] {
        &self.digit_range
    }

    /// Translate a word to its PIN string, character by character.
    ///
    /// The word must already be normalized (lowercase `a`–`z` only);
    /// output length always equals input length.
    pub fn map_word(&self, word: &str) -> String {
        word.chars().map(|c| (b'0' + self.digit(c)) as char).collect()
    }

    /// Translate the first `len` letters of a word to a numeric PIN code.
    ///
    /// This is the allocation-free work-horse behind distribution
    /// construction: the PIN `d₁d₂…dₙ` is packed as the integer
    /// `Σ dᵢ·10^(n-i)`, so leading zeros are preserved by carrying the
    /// length alongside the code.
    pub fn map_prefix_code(&self, word: &str, len: usize) -> u32 {
        debug_assert!(len <= 9 && word.len() >= len);
        word.bytes()
            .take(len)
            .fold(0u32, |acc, b| acc * 10 + u32::from(self.table[(b - b'a') as usize]))
    }
}

impl fmt::Display for KeypadMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
