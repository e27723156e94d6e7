//! Security metrics over PIN distributions.
//!
//! All metrics assume the attacker guesses in descending probability
//! order, which is exactly the canonical order of
//! [`PinDistribution::entries`]:
//!
//! - Shannon entropy `H₁ = −Σ pᵢ·log₂ pᵢ` (bits),
//! - guesswork `G = Σ i·pᵢ` (expected guesses),
//! - marginal guesswork `μ_α = min{k | Σ_{i≤k} pᵢ ≥ α}` (guesses),
//! - marginal success rate `λ_β = Σ_{i≤β} pᵢ` (probability).
//!
//! Guess-count metrics convert to bits via `G̃ = log₂(2G−1)` and
//! `μ̃_α = log₂(μ_α / λ_{μ_α})`, where `λ_{μ_α}` is the cumulative mass
//! attained at rank `μ_α`; on the uniform distribution over `M`
//! outcomes all three bit values coincide at `log₂ M`.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::strategy::PinDistribution;
use crate::sum::Compensated;
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Samples per RNG stream in the Monte Carlo check. Fixed so that the
/// parallel and sequential samplers consume identical streams and agree
/// bit-for-bit regardless of thread count.
const MC_CHUNK: u64 = 16 * 1024;

/// Every metric for one distribution, computed in a single pass over
/// the canonical view.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    /// Shannon entropy H₁ in bits.
    pub entropy_bits: f64,
    /// Expected number of guesses G.
    pub guesswork: f64,
    /// G converted to bits, log₂(2G−1).
    pub guesswork_bits: f64,
    /// Smallest number of guesses reaching cumulative mass ≥ α.
    pub marginal_guesswork: usize,
    /// μ_α converted to bits, log₂(μ_α/λ_{μ_α}).
    pub marginal_guesswork_bits: f64,
    /// Probability that the PIN falls in the attacker's first β guesses.
    pub marginal_success: f64,
    pub alpha: f64,
    pub beta: usize,
    /// Number of PINs with positive mass.
    pub support_size: usize,
    /// Size of the full PIN space, 10^n.
    pub pin_space: u64,
}

/// Shannon entropy in bits. Zero-mass PINs are absent from the support,
/// so no `0·log 0` terms arise.
pub fn entropy(dist: &PinDistribution) -> f64 {
    let mut acc = Compensated::new();
    for &(_, p) in dist.entries() {
        acc.add(p * p.log2());
    }
    -acc.value()
}

/// Expected number of guesses `Σ i·pᵢ` in canonical guessing order.
pub fn guesswork(dist: &PinDistribution) -> f64 {
    let mut acc = Compensated::new();
    for (i, &(_, p)) in dist.entries().iter().enumerate() {
        acc.add((i + 1) as f64 * p);
    }
    acc.value()
}

/// Convert an expected guess count to bits: `log₂(2g − 1)`.
pub fn guesswork_bits(g: f64) -> Result<f64> {
    if g < 1.0 {
        return Err(Error::GuessworkDomain(g));
    }
    Ok((2.0 * g - 1.0).log2())
}

/// Smallest prefix of the canonical view whose cumulative mass reaches
/// `alpha`. `alpha` must lie in (0, 1]; existence is then guaranteed
/// (the full support is returned if rounding keeps the cumulative sum
/// a hair under an `alpha` of 1).
pub fn marginal_guesswork(dist: &PinDistribution, alpha: f64) -> usize {
    alpha_crossing(dist, alpha).0
}

/// `μ_α` converted to bits using the cumulative mass actually attained
/// at that rank.
pub fn marginal_guesswork_bits(dist: &PinDistribution, alpha: f64) -> f64 {
    let (rank, attained) = alpha_crossing(dist, alpha);
    (rank as f64 / attained).log2()
}

fn alpha_crossing(dist: &PinDistribution, alpha: f64) -> (usize, f64) {
    assert!(alpha > 0.0 && alpha <= 1.0, "alpha must be in (0, 1]");
    let mut cum = Compensated::new();
    for (i, &(_, p)) in dist.entries().iter().enumerate() {
        cum.add(p);
        if cum.value() >= alpha {
            return (i + 1, cum.value());
        }
    }
    (dist.support_size(), cum.value())
}

/// Cumulative mass of the attacker's first `beta` guesses; exactly 1
/// once `beta` covers the whole support.
pub fn marginal_success_rate(dist: &PinDistribution, beta: usize) -> f64 {
    assert!(beta >= 1, "beta must be at least 1");
    if beta >= dist.support_size() {
        return 1.0;
    }
    let mut cum = Compensated::new();
    for &(_, p) in &dist.entries()[..beta] {
        cum.add(p);
    }
    cum.value()
}

/// Evaluate every metric in one pass over the canonical view.
pub fn full_metrics(dist: &PinDistribution, alpha: f64, beta: usize) -> Result<MetricsRecord> {
    assert!(alpha > 0.0 && alpha <= 1.0, "alpha must be in (0, 1]");
    assert!(beta >= 1, "beta must be at least 1");

    let mut h = Compensated::new();
    let mut g = Compensated::new();
    let mut cum = Compensated::new();
    let mut crossing: Option<(usize, f64)> = None;
    let mut at_beta: Option<f64> = None;

    for (i, &(_, p)) in dist.entries().iter().enumerate() {
        h.add(p * p.log2());
        g.add((i + 1) as f64 * p);
        cum.add(p);
        if crossing.is_none() && cum.value() >= alpha {
            crossing = Some((i + 1, cum.value()));
        }
        if i + 1 == beta {
            at_beta = Some(cum.value());
        }
    }

    let support_size = dist.support_size();
    let (mu, attained) = crossing.unwrap_or((support_size, cum.value()));
    let marginal_success = if beta >= support_size { 1.0 } else { at_beta.expect("beta < support") };
    let guesswork = g.value();

    Ok(MetricsRecord {
        entropy_bits: -h.value(),
        guesswork,
        guesswork_bits: guesswork_bits(guesswork)?,
        marginal_guesswork: mu,
        marginal_guesswork_bits: (mu as f64 / attained).log2(),
        marginal_success,
        alpha,
        beta,
        support_size,
        pin_space: dist.pin_space(),
    })
}

/// Result of the Monte Carlo cross-check: empirical counterparts of
/// `λ_β` and of the guesswork, from i.i.d. draws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    /// Fraction of samples falling in the attacker's first β guesses.
    pub top_beta_rate: f64,
    /// Mean rank of the sampled PINs in canonical guessing order.
    pub mean_rank: f64,
    pub samples: u64,
    pub beta: usize,
}

/// Draw `samples` i.i.d. PINs from the distribution with a seeded
/// deterministic generator and measure how often they fall within the
/// attacker's first `beta` guesses, plus the mean guess rank.
///
/// Sampling is split into fixed-size chunks, one ChaCha stream per
/// chunk, so results depend only on the seed — not on thread count or
/// the `parallel` feature.
pub fn monte_carlo_check(
    dist: &PinDistribution,
    beta: usize,
    samples: u64,
    seed: u64,
) -> MonteCarloEstimate {
    monte_carlo_impl(dist, beta, samples, seed, true)
}

/// Sequential sampler; identical output to [`monte_carlo_check`], kept
/// callable for the benchmark suite.
pub fn monte_carlo_check_seq(
    dist: &PinDistribution,
    beta: usize,
    samples: u64,
    seed: u64,
) -> MonteCarloEstimate {
    monte_carlo_impl(dist, beta, samples, seed, false)
}

fn monte_carlo_impl(
    dist: &PinDistribution,
    beta: usize,
    samples: u64,
    seed: u64,
    parallel: bool,
) -> MonteCarloEstimate {
    assert!(samples >= 1, "need at least one sample");
    assert!(beta >= 1, "beta must be at least 1");

    // Cumulative mass in canonical order; a binary search over it maps
    // a uniform variate to the sampled rank.
    let mut cdf = Vec::with_capacity(dist.support_size());
    let mut cum = Compensated::new();
    for &(_, p) in dist.entries() {
        cum.add(p);
        cdf.push(cum.value());
    }

    let chunks = samples.div_ceil(MC_CHUNK);
    let sample_chunk = |chunk: u64| -> (u64, u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk);
        let here = MC_CHUNK.min(samples - chunk * MC_CHUNK);
        let mut hits = 0u64;
        let mut rank_sum = 0u64;
        for _ in 0..here {
            let u: f64 = rng.gen();
            let rank = (cdf.partition_point(|&c| c <= u) + 1).min(cdf.len());
            if rank <= beta {
                hits += 1;
            }
            rank_sum += rank as u64;
        }
        (hits, rank_sum)
    };

    #[cfg(feature = "parallel")]
    let per_chunk: Vec<(u64, u64)> = if parallel {
        (0..chunks).into_par_iter().map(sample_chunk).collect()
    } else {
        (0..chunks).map(sample_chunk).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let per_chunk: Vec<(u64, u64)> = {
        let _ = parallel;
        (0..chunks).map(sample_chunk).collect()
    };

    let (hits, rank_sum) = per_chunk
        .iter()
        .fold((0u64, 0u64), |(h, r), &(ch, cr)| (h + ch, r + cr));

    MonteCarloEstimate {
        top_beta_rate: hits as f64 / samples as f64,
        mean_rank: rank_sum as f64 / samples as f64,
        samples,
        beta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::KeypadMapping;
    use crate::strategy::PinDistribution;

    fn uniform_standard(n: usize) -> PinDistribution {
        PinDistribution::uniform(n, KeypadMapping::standard().digit_range()).unwrap()
    }

    fn point_mass() -> PinDistribution {
        PinDistribution::from_weighted(4, vec![(8428, 1.0)]).unwrap()
    }

    fn coin() -> PinDistribution {
        PinDistribution::from_weighted(1, vec![(1, 0.5), (2, 0.5)]).unwrap()
    }

    #[test]
    fn entropy_of_uniform_and_coin() {
        assert!((entropy(&uniform_standard(4)) - 12.0).abs() < 1e-9);
        assert!((entropy(&coin()) - 1.0).abs() < 1e-15);
        assert_eq!(entropy(&point_mass()), 0.0);
    }

    #[test]
    fn guesswork_ideal_values() {
        let four = PinDistribution::from_weighted(1, vec![(1, 0.25), (2, 0.25), (3, 0.25), (4, 0.25)]).unwrap();
        assert!((guesswork(&four) - 2.5).abs() < 1e-15);
        assert_eq!(guesswork(&point_mass()), 1.0);
        let g = guesswork(&uniform_standard(4));
        assert!((g - 2048.5).abs() < 1e-9);
        assert!((guesswork_bits(g).unwrap() - 12.0).abs() < 1e-9);
    }

    #[test]
    fn guesswork_bits_domain() {
        assert_eq!(guesswork_bits(1.0).unwrap(), 0.0);
        assert!((guesswork_bits(2048.5).unwrap() - 12.0).abs() < 1e-12);
        assert!(matches!(guesswork_bits(0.99), Err(Error::GuessworkDomain(_))));
    }

    #[test]
    fn marginal_guesswork_crossings() {
        let skewed = PinDistribution::from_weighted(1, vec![(1, 0.6), (2, 0.4)]).unwrap();
        assert_eq!(marginal_guesswork(&skewed, 0.5), 1);
        assert!((marginal_guesswork_bits(&skewed, 0.5) - (1.0f64 / 0.6).log2()).abs() < 1e-12);

        let u = uniform_standard(4);
        assert_eq!(marginal_guesswork(&u, 0.5), 2048);
        assert!((marginal_guesswork_bits(&u, 0.5) - 12.0).abs() < 1e-9);
        assert_eq!(marginal_guesswork(&u, 1.0), 4096);
    }

    #[test]
    fn marginal_success_examples() {
        let u = uniform_standard(4);
        let l6 = marginal_success_rate(&u, 6);
        assert!((l6 - 6.0 / 4096.0).abs() < 1e-12);
        assert_eq!(marginal_success_rate(&point_mass(), 6), 1.0);
        assert_eq!(marginal_success_rate(&u, 4096), 1.0);
        assert_eq!(marginal_success_rate(&u, 10_000), 1.0);
    }

    #[test]
    fn full_metrics_uniform_4096() {
        let r = full_metrics(&uniform_standard(4), 0.5, 6).unwrap();
        assert!((r.entropy_bits - 12.0).abs() < 1e-9);
        assert!((r.guesswork - 2048.5).abs() < 1e-9);
        assert!((r.guesswork_bits - 12.0).abs() < 1e-9);
        assert_eq!(r.marginal_guesswork, 2048);
        assert!((r.marginal_guesswork_bits - 12.0).abs() < 1e-9);
        assert!((r.marginal_success - 0.00146484375).abs() < 1e-12);
        assert_eq!(r.support_size, 4096);
        assert_eq!(r.pin_space, 10_000);
    }

    #[test]
    fn full_metrics_point_mass_degenerates() {
        let r = full_metrics(&point_mass(), 0.5, 6).unwrap();
        assert_eq!(
            (r.entropy_bits, r.guesswork, r.guesswork_bits, r.marginal_guesswork),
            (0.0, 1.0, 0.0, 1)
        );
        assert_eq!(r.marginal_guesswork_bits, 0.0);
        assert_eq!(r.marginal_success, 1.0);
    }

    #[test]
    fn full_metrics_matches_individual_ops() {
        let d = PinDistribution::from_weighted(
            2,
            vec![(10, 0.4), (20, 0.3), (30, 0.2), (40, 0.05), (50, 0.05)],
        )
        .unwrap();
        let r = full_metrics(&d, 0.5, 2).unwrap();
        assert_eq!(r.entropy_bits, entropy(&d));
        assert_eq!(r.guesswork, guesswork(&d));
        assert_eq!(r.marginal_guesswork, marginal_guesswork(&d, 0.5));
        assert_eq!(r.marginal_guesswork_bits, marginal_guesswork_bits(&d, 0.5));
        assert_eq!(r.marginal_success, marginal_success_rate(&d, 2));
    }

    #[test]
    fn monte_carlo_point_mass_always_hits() {
        let est = monte_carlo_check(&point_mass(), 1, 100, 7);
        assert_eq!(est.top_beta_rate, 1.0);
        assert_eq!(est.mean_rank, 1.0);
    }

    #[test]
    fn monte_carlo_coin_within_three_sigma() {
        let samples = 100_000u64;
        let est = monte_carlo_check(&coin(), 1, samples, 42);
        let sigma = (0.25f64 / samples as f64).sqrt();
        assert!(
            (est.top_beta_rate - 0.5).abs() <= 3.0 * sigma,
            "empirical {} vs 0.5 ± {}",
            est.top_beta_rate,
            3.0 * sigma
        );
    }

    #[test]
    fn monte_carlo_is_seed_deterministic() {
        let d = PinDistribution::from_weighted(1, vec![(1, 0.2), (2, 0.3), (3, 0.5)]).unwrap();
        let a = monte_carlo_check(&d, 2, 50_000, 9);
        let b = monte_carlo_check(&d, 2, 50_000, 9);
        assert_eq!(a, b);
        let c = monte_carlo_check(&d, 2, 50_000, 10);
        assert_ne!(a.top_beta_rate, c.top_beta_rate);
    }

    #[test]
    fn monte_carlo_mean_rank_tracks_guesswork() {
        let d = PinDistribution::from_weighted(1, vec![(1, 0.5), (2, 0.3), (3, 0.2)]).unwrap();
        let est = monte_carlo_check(&d, 1, 200_000, 3);
        assert!((est.mean_rank - guesswork(&d)).abs() < 0.02);
    }

    #[test]
    fn metrics_record_survives_json_round_trip() {
        let r = full_metrics(&uniform_standard(4), 0.5, 6).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: MetricsRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
