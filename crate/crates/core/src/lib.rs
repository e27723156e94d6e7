//! Security metrics for dictionary-derived PINs.
//!
//! A dictionary PIN is obtained by translating a memorized word to digits
//! through a keypad letter-to-digit mapping. This crate ingests word
//! frequency lists, builds exact PIN probability distributions under
//! several construction strategies (straight translation, prefix
//! truncation, single-digit morphing, blacklisting, two-dictionary
//! mixtures) and evaluates standard guessability metrics on them:
//! Shannon entropy, guesswork, marginal guesswork and marginal success
//! rate, together with their bit-domain conversions.
//!
//! The crate is organized around a small pipeline:
//!
//! - [`corpus`] parses and normalizes word frequency lists,
//! - [`mapping`] translates words to digit strings,
//! - [`strategy`] constructs and transforms [`strategy::PinDistribution`]s,
//! - [`metrics`] evaluates a distribution,
//! - [`scenario`] binds all of the above into declarative runs.
//!
//! With the default `parallel` feature the heavy inner loops (morphing,
//! Monte Carlo sampling, blacklist sweeps) run on rayon. Disabling the
//! feature selects sequential fallbacks that produce bit-identical
//! results; the work is chunked the same way on both paths.

pub mod corpus;
mod error;
pub mod mapping;
pub mod metrics;
pub mod scenario;
pub mod strategy;
mod sum;

pub use error::{Error, Result};
