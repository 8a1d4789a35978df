//! Independent validators: exhaustive path enumeration, reproducible
//! Monte Carlo sampling and statistical distribution comparison. Nothing
//! here goes through the closed-form engine formulas, so these routines
//! can serve as oracles for them.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::crw::CrwParams;
use crate::error::Error;
use crate::qrw::{flip_coin2, grover_probabilities, GroverProbabilities};
use crate::types::{CoinOperator, CoinState2, CoinState4, Distribution1D, Distribution2D};

/// Exhaustive 1D enumeration walks all 2^n sign sequences.
pub const MAX_ENUMERATION_1D: usize = 20;
/// Exhaustive 2D enumeration walks all 4^n direction sequences.
pub const MAX_ENUMERATION_2D: usize = 10;
/// Fixed sampler chunk size; the chunk count of a report follows from it.
pub const SAMPLES_PER_CHUNK: u64 = 1 << 16;

/// Sums the probability of every sign sequence of length n, grouped by the
/// final displacement. No binomial identities involved: this is the
/// literal path sum.
pub fn enumerate_paths_1d(
    p_right: f64,
    p_left: f64,
    n: usize,
) -> Result<Distribution1D, Error> {
    if n > MAX_ENUMERATION_1D {
        return Err(Error::EnumerationTooLarge {
            n,
            limit: MAX_ENUMERATION_1D,
        });
    }
    if !(0.0..=1.0).contains(&p_right)
        || !(0.0..=1.0).contains(&p_left)
        || (p_right + p_left - 1.0).abs() > crate::types::TRACE_TOL
    {
        return Err(Error::InvalidParameter(format!(
            "step probabilities ({p_right}, {p_left}) do not form a distribution"
        )));
    }
    let mut masses = vec![0.0f64; n + 1];
    for mask in 0u64..(1u64 << n) {
        let mut weight = 1.0;
        let mut rights = 0usize;
        for step in 0..n {
            if mask >> step & 1 == 1 {
                weight *= p_right;
                rights += 1;
            } else {
                weight *= p_left;
            }
        }
        masses[rights] += weight;
    }
    Distribution1D::from_support_masses(n, masses)
}

/// Sums the probability of every direction sequence in {R, L, U, D}^n,
/// grouped by the final position.
pub fn enumerate_paths_2d(
    probs: &GroverProbabilities,
    n: usize,
) -> Result<Distribution2D, Error> {
    if n > MAX_ENUMERATION_2D {
        return Err(Error::EnumerationTooLarge {
            n,
            limit: MAX_ENUMERATION_2D,
        });
    }
    let p = probs.as_array();
    let moves: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
    let mut sites: BTreeMap<(i64, i64), f64> = BTreeMap::new();
    for mut code in 0u64..(4u64.pow(n as u32)) {
        let mut weight = 1.0;
        let (mut x, mut y) = (0i64, 0i64);
        for _ in 0..n {
            let dir = (code & 3) as usize;
            code >>= 2;
            weight *= p[dir];
            x += moves[dir].0;
            y += moves[dir].1;
        }
        if weight > 0.0 {
            *sites.entry((x, y)).or_insert(0.0) += weight;
        }
    }
    Distribution2D::from_site_masses(n, sites)
}

/// The walk being sampled. Each variant reduces to an i.i.d. per-step
/// direction distribution.
#[derive(Debug, Clone)]
pub enum WalkModel {
    Crw {
        p_right: f64,
    },
    Qrw1d {
        state: CoinState2,
        coin: CoinOperator,
    },
    Qrw2d {
        state: CoinState4,
    },
    /// 2D walk given directly by its Grover-flipped step probabilities
    /// (e.g. derived from an effective-coherence triple).
    Qrw2dSteps {
        probs: GroverProbabilities,
    },
}

enum StepLaw {
    OneD { p_right: f64 },
    TwoD { cumulative: [f64; 3] },
}

impl WalkModel {
    fn step_law(&self) -> Result<StepLaw, Error> {
        match self {
            WalkModel::Crw { p_right } => {
                CrwParams::new(*p_right, 1.0 - *p_right, 0)?;
                Ok(StepLaw::OneD { p_right: *p_right })
            }
            WalkModel::Qrw1d { state, coin } => {
                let flipped = flip_coin2(state, coin)?;
                Ok(StepLaw::OneD {
                    p_right: flipped.rho11(),
                })
            }
            WalkModel::Qrw2d { state } => {
                let p = grover_probabilities(state)?;
                Ok(StepLaw::TwoD {
                    cumulative: [p.rr(), p.rr() + p.ll(), p.rr() + p.ll() + p.uu()],
                })
            }
            WalkModel::Qrw2dSteps { probs: p } => Ok(StepLaw::TwoD {
                cumulative: [p.rr(), p.rr() + p.ll(), p.rr() + p.ll() + p.uu()],
            }),
        }
    }
}

/// Final-position counts of a sampling run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmpiricalCounts {
    OneD(BTreeMap<i64, u64>),
    TwoD(BTreeMap<(i64, i64), u64>),
}

/// Outcome of a reproducible Monte Carlo run. Masses are exact multiples
/// of 1/n_samples (counts are stored, division happens on demand).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleReport {
    n: usize,
    n_samples: u64,
    seed: u64,
    chunk_count: u64,
    counts: EmpiricalCounts,
}

impl SampleReport {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_samples(&self) -> u64 {
        self.n_samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn chunk_count(&self) -> u64 {
        self.chunk_count
    }

    pub fn counts(&self) -> &EmpiricalCounts {
        &self.counts
    }

    /// Total of all counts; always equals n_samples.
    pub fn count_total(&self) -> u64 {
        match &self.counts {
            EmpiricalCounts::OneD(map) => map.values().sum(),
            EmpiricalCounts::TwoD(map) => map.values().sum(),
        }
    }

    pub fn empirical_1d(&self) -> Option<Distribution1D> {
        let EmpiricalCounts::OneD(map) = &self.counts else {
            return None;
        };
        let n = self.n;
        let mut masses = vec![0.0; n + 1];
        for (&x, &count) in map {
            masses[((x + n as i64) / 2) as usize] = count as f64 / self.n_samples as f64;
        }
        Some(
            Distribution1D::from_support_masses(n, masses)
                .expect("counts sum to n_samples exactly"),
        )
    }

    pub fn empirical_2d(&self) -> Option<Distribution2D> {
        let EmpiricalCounts::TwoD(map) = &self.counts else {
            return None;
        };
        let sites: BTreeMap<(i64, i64), f64> = map
            .iter()
            .map(|(&site, &count)| (site, count as f64 / self.n_samples as f64))
            .collect();
        Some(
            Distribution2D::from_site_masses(self.n, sites)
                .expect("counts sum to n_samples exactly"),
        )
    }
}

/// Draws `n_samples` walks of `n` i.i.d. steps each. Sampling is split
/// into fixed-size chunks, each with its own ChaCha stream
/// (`set_stream(chunk index)` on a generator seeded with `seed`), so runs
/// are deterministic per (seed, chunk_count) and chunks can run in
/// parallel. Counts merge by integer addition, which is order-independent.
pub fn sample_walk(
    model: &WalkModel,
    n: usize,
    n_samples: u64,
    seed: u64,
) -> Result<SampleReport, Error> {
    if n_samples == 0 {
        return Err(Error::InvalidParameter("n_samples must be >= 1".into()));
    }
    let law = model.step_law()?;
    let chunk_count = n_samples.div_ceil(SAMPLES_PER_CHUNK);

    let counts = match law {
        StepLaw::OneD { p_right } => {
            let chunk_maps: Vec<BTreeMap<i64, u64>> = (0..chunk_count)
                .into_par_iter()
                .map(|chunk| {
                    let mut rng = chunk_rng(seed, chunk);
                    let lo = chunk * SAMPLES_PER_CHUNK;
                    let hi = n_samples.min(lo + SAMPLES_PER_CHUNK);
                    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
                    for _ in lo..hi {
                        let mut x = 0i64;
                        for _ in 0..n {
                            if rng.gen::<f64>() < p_right {
                                x += 1;
                            } else {
                                x -= 1;
                            }
                        }
                        *counts.entry(x).or_insert(0) += 1;
                    }
                    counts
                })
                .collect();
            let mut merged: BTreeMap<i64, u64> = BTreeMap::new();
            for map in chunk_maps {
                for (site, count) in map {
                    *merged.entry(site).or_insert(0) += count;
                }
            }
            EmpiricalCounts::OneD(merged)
        }
        StepLaw::TwoD { cumulative } => {
            let chunk_maps: Vec<BTreeMap<(i64, i64), u64>> = (0..chunk_count)
                .into_par_iter()
                .map(|chunk| {
                    let mut rng = chunk_rng(seed, chunk);
                    let lo = chunk * SAMPLES_PER_CHUNK;
                    let hi = n_samples.min(lo + SAMPLES_PER_CHUNK);
                    let mut counts: BTreeMap<(i64, i64), u64> = BTreeMap::new();
                    for _ in lo..hi {
                        let (mut x, mut y) = (0i64, 0i64);
                        for _ in 0..n {
                            let u: f64 = rng.gen();
                            if u < cumulative[0] {
                                x += 1;
                            } else if u < cumulative[1] {
                                x -= 1;
                            } else if u < cumulative[2] {
                                y += 1;
                            } else {
                                y -= 1;
                            }
                        }
                        *counts.entry((x, y)).or_insert(0) += 1;
                    }
                    counts
                })
                .collect();
            let mut merged: BTreeMap<(i64, i64), u64> = BTreeMap::new();
            for map in chunk_maps {
                for (site, count) in map {
                    *merged.entry(site).or_insert(0) += count;
                }
            }
            EmpiricalCounts::TwoD(merged)
        }
    };

    Ok(SampleReport {
        n,
        n_samples,
        seed,
        chunk_count,
        counts,
    })
}

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Result of comparing an analytic distribution against another (usually
/// empirical) one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonReport {
    /// (1/2) sum |a - b| over the union of supports.
    pub total_variation: f64,
    /// Pearson statistic over merged bins; present when a sample count was
    /// supplied and at least two bins had expected count >= 5.
    pub chi_square_statistic: Option<f64>,
    pub chi_square_p: Option<f64>,
    pub chi_square_bins: Option<usize>,
}

/// Compares two 1D distributions with the same step count; `sample_count`
/// is the number of samples behind `observed`, enabling the chi-square test.
pub fn compare_1d(
    expected: &Distribution1D,
    observed: &Distribution1D,
    sample_count: Option<u64>,
) -> Result<ComparisonReport, Error> {
    if expected.n() != observed.n() {
        return Err(Error::StepCountMismatch {
            a: expected.n(),
            b: observed.n(),
        });
    }
    let pairs: Vec<(f64, f64)> = expected
        .support()
        .map(|(x, p)| (p, observed.mass(x)))
        .collect();
    Ok(compare_mass_pairs(&pairs, sample_count))
}

/// 2D counterpart of `compare_1d`; sites are aligned over the union of
/// supports in lexicographic order.
pub fn compare_2d(
    expected: &Distribution2D,
    observed: &Distribution2D,
    sample_count: Option<u64>,
) -> Result<ComparisonReport, Error> {
    if expected.n() != observed.n() {
        return Err(Error::StepCountMismatch {
            a: expected.n(),
            b: observed.n(),
        });
    }
    let mut sites: BTreeMap<(i64, i64), (f64, f64)> = BTreeMap::new();
    for (site, p) in expected.sites() {
        sites.entry(site).or_insert((0.0, 0.0)).0 = p;
    }
    for (site, p) in observed.sites() {
        sites.entry(site).or_insert((0.0, 0.0)).1 = p;
    }
    let pairs: Vec<(f64, f64)> = sites.into_values().collect();
    Ok(compare_mass_pairs(&pairs, sample_count))
}

fn compare_mass_pairs(pairs: &[(f64, f64)], sample_count: Option<u64>) -> ComparisonReport {
    let total_variation = 0.5 * pairs.iter().map(|(a, b)| (a - b).abs()).sum::<f64>();

    let Some(samples) = sample_count else {
        return ComparisonReport {
            total_variation,
            chi_square_statistic: None,
            chi_square_p: None,
            chi_square_bins: None,
        };
    };

    // Pearson chi-square over bins with expected count >= 5; underfull
    // sites merge into their neighbours (tail bins) in site order.
    let samples_f = samples as f64;
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for (p_expected, p_observed) in pairs {
        acc.0 += p_expected * samples_f;
        acc.1 += p_observed * samples_f;
        if acc.0 >= 5.0 {
            bins.push(acc);
            acc = (0.0, 0.0);
        }
    }
    if acc.0 > 0.0 || acc.1 > 0.0 {
        if let Some(last) = bins.last_mut() {
            last.0 += acc.0;
            last.1 += acc.1;
        } else {
            bins.push(acc);
        }
    }

    if bins.len() < 2 {
        return ComparisonReport {
            total_variation,
            chi_square_statistic: None,
            chi_square_p: None,
            chi_square_bins: Some(bins.len()),
        };
    }

    let statistic: f64 = bins
        .iter()
        .map(|(expected, observed)| {
            let d = observed - expected;
            d * d / expected
        })
        .sum();
    let dof = (bins.len() - 1) as f64;
    let p_value = ChiSquared::new(dof)
        .map(|dist| 1.0 - dist.cdf(statistic))
        .unwrap_or(f64::NAN);

    ComparisonReport {
        total_variation,
        chi_square_statistic: Some(statistic),
        chi_square_p: Some(p_value),
        chi_square_bins: Some(bins.len()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::hadamard2;
    use num_complex::Complex64;

    #[test]
    fn enumeration_1d_two_steps() {
        let d = enumerate_paths_1d(0.6, 0.4, 2).unwrap();
        assert!((d.mass(2) - 0.36).abs() < 1e-15);
        assert!((d.mass(0) - 0.48).abs() < 1e-15);
        assert!((d.mass(-2) - 0.16).abs() < 1e-15);
    }

    #[test]
    fn enumeration_1d_empty_walk() {
        let d = enumerate_paths_1d(0.5, 0.5, 0).unwrap();
        assert_eq!(d.mass(0), 1.0);
    }

    #[test]
    fn enumeration_1d_matches_binomial_engine() {
        use crate::crw::{crw_distribution, CrwParams};
        let enumerated = enumerate_paths_1d(0.5, 0.5, 12).unwrap();
        let engine = crw_distribution(&CrwParams::symmetric(12));
        assert!(enumerated.max_abs_diff(&engine).unwrap() <= 1e-13);
    }

    #[test]
    fn enumeration_rejects_oversized_walks() {
        assert!(matches!(
            enumerate_paths_1d(0.5, 0.5, 21),
            Err(Error::EnumerationTooLarge { n: 21, limit: 20 })
        ));
        let probs = GroverProbabilities::new(0.25, 0.25, 0.25, 0.25).unwrap();
        assert!(enumerate_paths_2d(&probs, 11).is_err());
    }

    #[test]
    fn enumeration_2d_single_step_is_the_step_law() {
        let probs = GroverProbabilities::new(0.45, 0.25, 0.05, 0.25).unwrap();
        let d = enumerate_paths_2d(&probs, 1).unwrap();
        assert_eq!(d.mass(1, 0), 0.45);
        assert_eq!(d.mass(-1, 0), 0.25);
        assert_eq!(d.mass(0, 1), 0.05);
        assert_eq!(d.mass(0, -1), 0.25);
    }

    #[test]
    fn enumeration_2d_degenerate_vertical_stays_on_axis() {
        let probs = GroverProbabilities::new(0.5, 0.5, 0.0, 0.0).unwrap();
        let d = enumerate_paths_2d(&probs, 4).unwrap();
        assert!(d.sites().all(|((_, y), _)| y == 0));
    }

    #[test]
    fn enumeration_2d_cross_checks_quadrinomial_engine() {
        let probs = GroverProbabilities::new(0.45, 0.25, 0.05, 0.25).unwrap();
        let enumerated = enumerate_paths_2d(&probs, 3).unwrap();
        let engine = crate::qrw::qrw2d_distribution_from_probs(&probs, 3);
        assert!(enumerated.max_abs_diff(&engine).unwrap() <= 1e-13);
    }

    #[test]
    fn sampler_is_deterministic_per_seed_and_chunking() {
        let model = WalkModel::Crw { p_right: 0.5 };
        let a = sample_walk(&model, 10, 150_000, 7).unwrap();
        let b = sample_walk(&model, 10, 150_000, 7).unwrap();
        assert_eq!(a.chunk_count(), 3);
        assert_eq!(a, b);
        let c = sample_walk(&model, 10, 150_000, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sampler_counts_sum_to_sample_count() {
        let model = WalkModel::Qrw2d {
            state: CoinState4::maximally_mixed(),
        };
        let report = sample_walk(&model, 5, 10_000, 3).unwrap();
        assert_eq!(report.count_total(), 10_000);
        let empirical = report.empirical_2d().unwrap();
        assert_eq!(empirical.n(), 5);
    }

    #[test]
    fn bernoulli_single_step_frequencies() {
        let model = WalkModel::Crw { p_right: 0.5 };
        let report = sample_walk(&model, 1, 100_000, 11).unwrap();
        let d = report.empirical_1d().unwrap();
        assert!((d.mass(1) - 0.5).abs() < 0.01);
        assert!((d.mass(-1) - 0.5).abs() < 0.01);
    }

    #[test]
    fn sampler_tracks_biased_qrw_mean() {
        let model = WalkModel::Qrw1d {
            state: CoinState2::new(0.5, 0.5, Complex64::new(0.1, 0.0)).unwrap(),
            coin: hadamard2(),
        };
        let report = sample_walk(&model, 100, 100_000, 42).unwrap();
        let d = report.empirical_1d().unwrap();
        // mean 20, sigma^2 = 96: allow 4 sigma / sqrt(N)
        let bound = 4.0 * 96.0f64.sqrt() / (100_000.0f64).sqrt();
        assert!((d.mean() - 20.0).abs() < bound, "mean = {}", d.mean());
    }

    #[test]
    fn total_variation_examples() {
        let a = Distribution1D::from_support_masses(2, vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(compare_1d(&a, &a, None).unwrap().total_variation, 0.0);

        let b = Distribution1D::from_support_masses(2, vec![0.0, 0.5, 0.5]).unwrap();
        assert!((compare_1d(&a, &b, None).unwrap().total_variation - 0.5).abs() < 1e-15);
    }

    #[test]
    fn compare_rejects_mismatched_step_counts() {
        let a = Distribution1D::from_support_masses(2, vec![0.25, 0.5, 0.25]).unwrap();
        let b = Distribution1D::from_support_masses(4, vec![0.0, 0.25, 0.5, 0.25, 0.0]).unwrap();
        assert!(matches!(
            compare_1d(&a, &b, None),
            Err(Error::StepCountMismatch { a: 2, b: 4 })
        ));
    }

    #[test]
    fn chi_square_accepts_matching_sample() {
        use crate::crw::{crw_distribution, CrwParams};
        let params = CrwParams::new(0.6, 0.4, 30).unwrap();
        let analytic = crw_distribution(&params);
        let report = sample_walk(&WalkModel::Crw { p_right: 0.6 }, 30, 200_000, 5).unwrap();
        let empirical = report.empirical_1d().unwrap();
        let cmp = compare_1d(&analytic, &empirical, Some(200_000)).unwrap();
        assert!(cmp.chi_square_p.unwrap() > 0.001, "p = {:?}", cmp.chi_square_p);
        assert!(cmp.total_variation < 0.01);
    }

    #[test]
    fn chi_square_rejects_wrong_model() {
        use crate::crw::{crw_distribution, CrwParams};
        let analytic = crw_distribution(&CrwParams::new(0.5, 0.5, 30).unwrap());
        let report = sample_walk(&WalkModel::Crw { p_right: 0.6 }, 30, 200_000, 5).unwrap();
        let empirical = report.empirical_1d().unwrap();
        let cmp = compare_1d(&analytic, &empirical, Some(200_000)).unwrap();
        assert!(cmp.chi_square_p.unwrap() < 1e-6);
    }

    #[test]
    fn chi_square_needs_sample_context() {
        let a = Distribution1D::from_support_masses(2, vec![0.25, 0.5, 0.25]).unwrap();
        let cmp = compare_1d(&a, &a, None).unwrap();
        assert!(cmp.chi_square_p.is_none());
    }
}
