//! Coherence-driven quantum random walk: a fresh quantum coin per step,
//! each flipped once by a unitary coin operator. Step-direction
//! probabilities are the diagonal of the flipped coin state, so the
//! position law stays binomial (1D) or quadrinomial (2D) with a bias set
//! entirely by the initial coherence.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::Error;
use crate::numeric::{binomial_masses, exponent_term, ln_choose, ln_factorials, KahanSum};
use crate::types::{
    effective_coherence, CoinOperator, CoinState2, CoinState4, Distribution1D, Distribution2D,
    EffectiveCoherence, Moments1D, Moments2D, PROB_CLAMP, TRACE_TOL,
};

/// Step probabilities in [-PROB_CLAMP, 0) are numerical noise at
/// feasibility boundaries; snap them to exact zeros.
fn clamp_probability(p: f64) -> f64 {
    if (-PROB_CLAMP..0.0).contains(&p) {
        0.0
    } else if p > 1.0 && p <= 1.0 + PROB_CLAMP {
        1.0
    } else {
        p
    }
}

/// The coin state after one unitary flip, reduced to what the walk needs:
/// the two transition probabilities and the residual off-diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlippedCoin2 {
    rho11: f64,
    rho_m1m1: f64,
    rho_1m1: Complex64,
}

impl FlippedCoin2 {
    pub fn new(rho11: f64, rho_m1m1: f64, rho_1m1: Complex64) -> Result<Self, Error> {
        let rho11 = clamp_probability(rho11);
        let rho_m1m1 = clamp_probability(rho_m1m1);
        if !(0.0..=1.0).contains(&rho11) || !(0.0..=1.0).contains(&rho_m1m1) {
            return Err(Error::Invariant {
                invariant: "flipped_coin2.range",
                measured: rho11.min(rho_m1m1),
                bound: 0.0,
            });
        }
        let residual = (rho11 + rho_m1m1 - 1.0).abs();
        if residual > TRACE_TOL {
            return Err(Error::Invariant {
                invariant: "flipped_coin2.trace",
                measured: residual,
                bound: TRACE_TOL,
            });
        }
        Ok(Self {
            rho11,
            rho_m1m1,
            rho_1m1,
        })
    }

    /// Probability of stepping right.
    pub fn rho11(&self) -> f64 {
        self.rho11
    }

    /// Probability of stepping left.
    pub fn rho_m1m1(&self) -> f64 {
        self.rho_m1m1
    }

    /// Off-diagonal of the flipped state; irrelevant for the position law
    /// but exposed for diagnostics.
    pub fn rho_1m1(&self) -> Complex64 {
        self.rho_1m1
    }
}

/// Flips a two-level coin: C rho C^H for any U(2) coin operator. The
/// off-diagonal is read from the upper triangle (Hermiticity is enforced,
/// not re-derived).
pub fn flip_coin2(state: &CoinState2, coin: &CoinOperator) -> Result<FlippedCoin2, Error> {
    if coin.dim() != 2 {
        return Err(Error::DimensionMismatch {
            operator: coin.dim(),
            state: 2,
        });
    }
    let rho = state.matrix();
    let rho_dyn = nalgebra::DMatrix::from_fn(2, 2, |i, j| rho[(i, j)]);
    let flipped = coin.conjugate(&rho_dyn)?;
    FlippedCoin2::new(flipped[(0, 0)].re, flipped[(1, 1)].re, flipped[(0, 1)])
}

/// 1D position distribution: binomial with the flipped-coin diagonals as
/// step probabilities, evaluated in log space like the classical walk.
pub fn qrw1d_distribution(
    state: &CoinState2,
    coin: &CoinOperator,
    n: usize,
) -> Result<Distribution1D, Error> {
    let flipped = flip_coin2(state, coin)?;
    let masses = binomial_masses(n, flipped.rho11(), flipped.rho_m1m1());
    Ok(Distribution1D::from_support_masses(n, masses)
        .expect("binomial masses are normalized by construction"))
}

/// Closed-form moments for the Hadamard-coin convention:
/// mean 2 n Re(eta), variance n (1 - (2 Re eta)^2).
pub fn qrw1d_moments(state: &CoinState2, n: usize) -> Moments1D {
    let bias = 2.0 * state.eta().re;
    let n = n as f64;
    Moments1D {
        mean: n * bias,
        variance: n * (1.0 - bias * bias),
    }
}

/// The four direction probabilities of the Grover-flipped 2D coin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroverProbabilities {
    rr: f64,
    ll: f64,
    uu: f64,
    dd: f64,
}

impl GroverProbabilities {
    pub fn new(rr: f64, ll: f64, uu: f64, dd: f64) -> Result<Self, Error> {
        let vals = [rr, ll, uu, dd].map(clamp_probability);
        let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < 0.0 || vals.iter().any(|&v| v > 1.0) {
            return Err(Error::Invariant {
                invariant: "grover_probabilities.range",
                measured: min,
                bound: 0.0,
            });
        }
        let residual = (vals.iter().sum::<f64>() - 1.0).abs();
        if residual > TRACE_TOL {
            return Err(Error::Invariant {
                invariant: "grover_probabilities.sum",
                measured: residual,
                bound: TRACE_TOL,
            });
        }
        let [rr, ll, uu, dd] = vals;
        Ok(Self { rr, ll, uu, dd })
    }

    /// Maps effective coherence to direction probabilities; fails outside
    /// the feasibility tetrahedron.
    pub fn from_zeta(zeta: &EffectiveCoherence) -> Result<Self, Error> {
        let [rr, ll, uu, dd] = raw_direction_weights(zeta);
        Self::new(rr, ll, uu, dd)
    }

    pub fn rr(&self) -> f64 {
        self.rr
    }

    pub fn ll(&self) -> f64 {
        self.ll
    }

    pub fn uu(&self) -> f64 {
        self.uu
    }

    pub fn dd(&self) -> f64 {
        self.dd
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.rr, self.ll, self.uu, self.dd]
    }
}

/// (rr, ll, uu, dd) = (1/4) M (1, z1, z2, z3) with M the fixed map
/// [[1,-2,-2,-2],[1,-2,2,2],[1,2,-2,2],[1,2,2,-2]]. No validation: values
/// go negative outside the feasibility region.
pub fn raw_direction_weights(zeta: &EffectiveCoherence) -> [f64; 4] {
    let (z1, z2, z3) = (zeta.zeta1, zeta.zeta2, zeta.zeta3);
    [
        (1.0 - 2.0 * z1 - 2.0 * z2 - 2.0 * z3) / 4.0,
        (1.0 - 2.0 * z1 + 2.0 * z2 + 2.0 * z3) / 4.0,
        (1.0 + 2.0 * z1 - 2.0 * z2 + 2.0 * z3) / 4.0,
        (1.0 + 2.0 * z1 + 2.0 * z2 - 2.0 * z3) / 4.0,
    ]
}

/// Direction probabilities of a valid 4x4 coin state after the Grover flip.
pub fn grover_probabilities(state: &CoinState4) -> Result<GroverProbabilities, Error> {
    GroverProbabilities::from_zeta(&effective_coherence(state))
}

/// True iff all four direction probabilities derived from zeta are
/// non-negative (the feasibility tetrahedron).
pub fn feasibility_region_check(zeta: &EffectiveCoherence) -> bool {
    GroverProbabilities::from_zeta(zeta).is_ok()
}

/// Quadrinomial 2D position distribution after n steps.
pub fn qrw2d_distribution(state: &CoinState4, n: usize) -> Result<Distribution2D, Error> {
    Ok(qrw2d_distribution_from_probs(
        &grover_probabilities(state)?,
        n,
    ))
}

/// Quadrinomial law from explicit direction probabilities, summing over
/// the number of horizontal steps l:
/// mass(x, y) = sum_l C(n,l) C(l,(l+x)/2) C(n-l,(n-l+y)/2)
///              rr^((l+x)/2) ll^((l-x)/2) uu^((n-l+y)/2) dd^((n-l-y)/2).
/// Terms are computed as exp of log-gamma sums; each site accumulates its
/// l-sum with compensated summation because terms span many orders of
/// magnitude at n = 40+.
pub fn qrw2d_distribution_from_probs(probs: &GroverProbabilities, n: usize) -> Distribution2D {
    let table = ln_factorials(n);
    let mut acc: BTreeMap<(i64, i64), KahanSum> = BTreeMap::new();
    for l in 0..=n {
        let vertical = n - l;
        let ln_split = ln_choose(&table, n, l);
        for right in 0..=l {
            let left = l - right;
            if (probs.rr == 0.0 && right > 0) || (probs.ll == 0.0 && left > 0) {
                continue;
            }
            let horizontal_log = ln_split
                + ln_choose(&table, l, right)
                + exponent_term(right, probs.rr)
                + exponent_term(left, probs.ll);
            let x = right as i64 - left as i64;
            for up in 0..=vertical {
                let down = vertical - up;
                if (probs.uu == 0.0 && up > 0) || (probs.dd == 0.0 && down > 0) {
                    continue;
                }
                let log_mass = horizontal_log
                    + ln_choose(&table, vertical, up)
                    + exponent_term(up, probs.uu)
                    + exponent_term(down, probs.dd);
                let y = up as i64 - down as i64;
                acc.entry((x, y)).or_default().add(log_mass.exp());
            }
        }
    }

    let mut total = KahanSum::default();
    for sum in acc.values() {
        total.add(sum.value());
    }
    let norm = total.value();
    let sites: BTreeMap<(i64, i64), f64> =
        acc.into_iter().map(|(k, v)| (k, v.value() / norm)).collect();
    Distribution2D::from_site_masses(n, sites)
        .expect("quadrinomial masses are normalized by construction")
}

/// Closed-form 2D moments in terms of the effective coherence:
/// mean n(-z2-z3, -z2+z3), var_x n[1/2 - z1 - (z2+z3)^2],
/// var_y n[1/2 + z1 - (z2-z3)^2], var_total n(1 - 2 z2^2 - 2 z3^2).
pub fn qrw2d_moments(state: &CoinState4, n: usize) -> Moments2D {
    qrw2d_moments_from_zeta(&effective_coherence(state), n)
}

pub fn qrw2d_moments_from_zeta(zeta: &EffectiveCoherence, n: usize) -> Moments2D {
    let (z1, z2, z3) = (zeta.zeta1, zeta.zeta2, zeta.zeta3);
    let n = n as f64;
    Moments2D {
        mean_x: n * (-z2 - z3),
        mean_y: n * (-z2 + z3),
        var_x: n * (0.5 - z1 - (z2 + z3) * (z2 + z3)),
        var_y: n * (0.5 + z1 - (z2 - z3) * (z2 - z3)),
        var_total: n * (1.0 - 2.0 * z2 * z2 - 2.0 * z3 * z3),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{grover4, hadamard2};
    use nalgebra::DMatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn coin2(p1: f64, eta: Complex64) -> CoinState2 {
        CoinState2::new(p1, 1.0 - p1, eta).unwrap()
    }

    #[test]
    fn hadamard_flip_examples() {
        // real coherence biases the walk
        let f = flip_coin2(&coin2(0.5, c(0.1, 0.0)), &hadamard2()).unwrap();
        assert!((f.rho11() - 0.6).abs() < 1e-15);
        assert!((f.rho_m1m1() - 0.4).abs() < 1e-15);
        assert!(f.rho_1m1().norm() < 1e-15);

        // maximally mixed is a fixed point (up to (1/sqrt 2)^2 rounding)
        let f = flip_coin2(&coin2(0.5, c(0.0, 0.0)), &hadamard2()).unwrap();
        assert!((f.rho11() - 0.5).abs() < 1e-15);
        assert!((f.rho_m1m1() - 0.5).abs() < 1e-15);

        // imaginary coherence gives no bias
        let f = flip_coin2(&coin2(0.5, c(0.0, 0.1)), &hadamard2()).unwrap();
        assert!((f.rho11() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn flip_rejects_wrong_dimension() {
        let err = flip_coin2(&coin2(0.5, c(0.0, 0.0)), &grover4()).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { operator: 4, state: 2 }));
    }

    #[test]
    fn su2_flip_matches_closed_form_elements() {
        // For C = [[a, b], [-b*, a*]] the conjugation must reproduce the
        // closed-form transition elements of a general SU(2) flip.
        let angles: [(f64, f64, f64); 4] = [
            (0.3, 0.7, -1.1),
            (1.2, 0.0, 0.4),
            (0.9, 2.2, 1.8),
            (2.5, -0.6, 0.0),
        ];
        for &(theta, alpha, beta) in &angles {
            let a = Complex64::from_polar(theta.cos(), alpha);
            let b = Complex64::from_polar(theta.sin(), beta);
            let coin = CoinOperator::from_matrix(DMatrix::from_row_slice(
                2,
                2,
                &[a, b, -b.conj(), a.conj()],
            ))
            .unwrap();

            let p1 = 0.7;
            let pm1 = 0.3;
            let eta = c(0.2, -0.25);
            let state = CoinState2::new(p1, pm1, eta).unwrap();
            let f = flip_coin2(&state, &coin).unwrap();

            let rho11 = p1 * a.norm_sqr()
                + (eta.conj() * a.conj() * b + eta * a * b.conj()).re
                + pm1 * b.norm_sqr();
            let rho_m1m1 = pm1 * a.norm_sqr()
                - (eta.conj() * a.conj() * b + eta * a * b.conj()).re
                + p1 * b.norm_sqr();
            let rho_1m1 = a * (a * eta + b * pm1) - b * (a * p1 + b * eta.conj());

            assert!((f.rho11() - rho11).abs() < 1e-14);
            assert!((f.rho_m1m1() - rho_m1m1).abs() < 1e-14);
            assert!((f.rho_1m1() - rho_1m1).norm() < 1e-14);
        }
    }

    #[test]
    fn qrw1d_two_steps_with_coherence() {
        let d = qrw1d_distribution(&coin2(0.5, c(0.1, 0.0)), &hadamard2(), 2).unwrap();
        assert!((d.mass(2) - 0.36).abs() < 1e-14);
        assert!((d.mass(0) - 0.48).abs() < 1e-14);
        assert!((d.mass(-2) - 0.16).abs() < 1e-14);
    }

    #[test]
    fn zero_coherence_reduces_to_classical() {
        use crate::crw::{crw_distribution, CrwParams};
        for &n in &[1usize, 7, 50] {
            let q = qrw1d_distribution(&coin2(0.5, c(0.0, 0.0)), &hadamard2(), n).unwrap();
            let cl = crw_distribution(&CrwParams::symmetric(n));
            assert!(q.max_abs_diff(&cl).unwrap() <= 1e-12, "n = {n}");
        }
    }

    #[test]
    fn maximal_coherence_walks_deterministically() {
        // (|1> + |-1>)/sqrt(2): eta = 0.5 forces rho11 = 1
        let d = qrw1d_distribution(&coin2(0.5, c(0.5, 0.0)), &hadamard2(), 5).unwrap();
        assert_eq!(d.mass(5), 1.0);
        assert_eq!(d.mass(-5), 0.0);
        assert_eq!(d.mass(3), 0.0);
    }

    #[test]
    fn qrw1d_moment_examples() {
        let m = qrw1d_moments(&coin2(0.5, c(0.1, 0.0)), 100);
        assert!((m.mean - 20.0).abs() < 1e-12);
        assert!((m.variance - 96.0).abs() < 1e-12);

        let m = qrw1d_moments(&coin2(0.5, c(0.0, 0.0)), 100);
        assert_eq!((m.mean, m.variance), (0.0, 100.0));

        let m = qrw1d_moments(&coin2(0.5, c(0.5, 0.0)), 40);
        assert_eq!((m.mean, m.variance), (40.0, 0.0));
    }

    #[test]
    fn qrw1d_moments_match_distribution_sums() {
        let h = hadamard2();
        for &n in &[1usize, 10, 100, 1000, 2000] {
            for &eta_re in &[0.0, 0.1, -0.2, 0.35] {
                let state = coin2(0.5, c(eta_re, 0.05));
                let d = qrw1d_distribution(&state, &h, n).unwrap();
                let m = qrw1d_moments(&state, n);
                assert!(
                    (d.mean() - m.mean).abs() <= 1e-9 * m.mean.abs().max(1.0),
                    "mean at n={n}, eta={eta_re}"
                );
                assert!(
                    (d.variance() - m.variance).abs() <= 1e-9 * m.variance.max(1.0),
                    "variance at n={n}, eta={eta_re}"
                );
            }
        }
    }

    #[test]
    fn distribution_depends_only_on_re_eta() {
        let h = hadamard2();
        let a = qrw1d_distribution(&coin2(0.5, c(0.1, 0.3)), &h, 60).unwrap();
        let b = qrw1d_distribution(&coin2(0.5, c(0.1, -0.3)), &h, 60).unwrap();
        assert_eq!(a.max_abs_diff(&b).unwrap(), 0.0);
    }

    fn state4(assign: &[(usize, usize, f64)]) -> CoinState4 {
        let mut eta = [c(0.0, 0.0); 6];
        for &(i, j, v) in assign {
            let idx = crate::types::ETA_PAIRS
                .iter()
                .position(|&p| p == (i, j))
                .unwrap();
            eta[idx] = c(v, 0.0);
        }
        CoinState4::new([0.25; 4], eta).unwrap()
    }

    #[test]
    fn grover_probability_examples() {
        // zero coherence: symmetric
        let p = grover_probabilities(&CoinState4::maximally_mixed()).unwrap();
        assert_eq!(p.as_array(), [0.25; 4]);

        // zeta = (-1/2, 0, 0): motion confined to the x axis
        let p = GroverProbabilities::from_zeta(&EffectiveCoherence {
            zeta1: -0.5,
            zeta2: 0.0,
            zeta3: 0.0,
        })
        .unwrap();
        assert_eq!(p.as_array(), [0.5, 0.5, 0.0, 0.0]);

        // zeta = (-0.2, 0, -0.2)
        let p = GroverProbabilities::from_zeta(&EffectiveCoherence {
            zeta1: -0.2,
            zeta2: 0.0,
            zeta3: -0.2,
        })
        .unwrap();
        let want = [0.45, 0.25, 0.05, 0.25];
        for (got, want) in p.as_array().iter().zip(want) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn grover_probabilities_match_conjugation_diagonal() {
        // independent route: diagonal of G rho G^H
        let state = state4(&[(0, 1, -0.1), (2, 3, 0.1), (1, 2, 0.2)]);
        let probs = grover_probabilities(&state).unwrap();
        let g = grover4();
        let rho = state.matrix();
        let rho_dyn = DMatrix::from_fn(4, 4, |i, j| rho[(i, j)]);
        let flipped = g.conjugate(&rho_dyn).unwrap();
        for (k, &want) in probs.as_array().iter().enumerate() {
            assert!(
                (flipped[(k, k)].re - want).abs() < 1e-14,
                "direction {k}: {} vs {want}",
                flipped[(k, k)].re
            );
            assert!(flipped[(k, k)].im.abs() < 1e-15);
        }
    }

    #[test]
    fn feasibility_examples() {
        let f = |z1, z2, z3| {
            feasibility_region_check(&EffectiveCoherence {
                zeta1: z1,
                zeta2: z2,
                zeta3: z3,
            })
        };
        assert!(f(0.0, 0.0, 0.0));
        assert!(f(-0.5, 0.0, 0.0)); // boundary face
        assert!(!f(0.5, 0.5, 0.5)); // rr = (1 - 3)/4 < 0
    }

    #[test]
    fn qrw2d_single_step_is_the_step_distribution() {
        let d = qrw2d_distribution(&CoinState4::maximally_mixed(), 1).unwrap();
        for site in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            assert!((d.mass(site.0, site.1) - 0.25).abs() < 1e-15);
        }
        assert_eq!(d.site_count(), 4);
    }

    #[test]
    fn qrw2d_degenerate_vertical_embeds_1d_walk() {
        let probs = GroverProbabilities::new(0.5, 0.5, 0.0, 0.0).unwrap();
        let d = qrw2d_distribution_from_probs(&probs, 2);
        assert!((d.mass(-2, 0) - 0.25).abs() < 1e-15);
        assert!((d.mass(0, 0) - 0.5).abs() < 1e-15);
        assert!((d.mass(2, 0) - 0.25).abs() < 1e-15);
        assert_eq!(d.site_count(), 3);
    }

    #[test]
    fn qrw2d_support_stays_on_axis_when_vertical_is_impossible() {
        let probs = GroverProbabilities::new(0.7, 0.3, 0.0, 0.0).unwrap();
        let d = qrw2d_distribution_from_probs(&probs, 4);
        assert!(d.sites().all(|((_, y), _)| y == 0));
    }

    #[test]
    fn qrw2d_marginal_matches_binomial_when_vertical_is_impossible() {
        let probs = GroverProbabilities::new(0.6, 0.4, 0.0, 0.0).unwrap();
        let d = qrw2d_distribution_from_probs(&probs, 30);
        let marginal = d.marginal_x();
        let binomial = binomial_masses(30, 0.6, 0.4);
        for (j, &mass) in binomial.iter().enumerate() {
            let x = 2 * j as i64 - 30;
            let got = marginal.get(&x).copied().unwrap_or(0.0);
            assert!((got - mass).abs() < 1e-12, "site {x}");
        }
    }

    #[test]
    fn qrw2d_moment_examples() {
        // zeta = (-0.2, 0, -0.2) at n = 40
        let state = state4(&[(0, 1, -0.1), (2, 3, 0.1), (1, 2, 0.2)]);
        let m = qrw2d_moments(&state, 40);
        assert_eq!((m.mean_x, m.mean_y), (8.0, -8.0));

        let m = qrw2d_moments(&CoinState4::maximally_mixed(), 40);
        assert_eq!((m.mean_x, m.mean_y), (0.0, 0.0));
        assert_eq!(m.var_total, 40.0);

        // zeta = (-1/2, 0, 0): all variance along x
        let m = qrw2d_moments_from_zeta(
            &EffectiveCoherence {
                zeta1: -0.5,
                zeta2: 0.0,
                zeta3: 0.0,
            },
            40,
        );
        assert_eq!(m.var_x, 40.0);
        assert_eq!(m.var_y, 0.0);
        // cross-check against the embedded 1D classical walk
        let crw = crate::crw::crw_moments(&crate::crw::CrwParams::symmetric(40));
        assert_eq!(m.var_x, crw.variance);
    }

    #[test]
    fn qrw2d_moments_match_distribution_sums() {
        let patterns: Vec<CoinState4> = vec![
            CoinState4::maximally_mixed(),
            state4(&[(0, 1, -0.1), (2, 3, 0.1), (1, 2, 0.2)]),
            state4(&[(0, 3, -0.1), (1, 2, 0.1)]),
            state4(&[(0, 1, -0.2), (2, 3, 0.2)]),
        ];
        for state in patterns {
            for &n in &[1usize, 2, 10, 40, 300] {
                let d = qrw2d_distribution(&state, n).unwrap();
                let m = qrw2d_moments(&state, n);
                let (mean_x, mean_y) = d.mean();
                let (var_x, var_y) = d.variance_xy();
                assert!((mean_x - m.mean_x).abs() <= 1e-9 * m.mean_x.abs().max(1.0));
                assert!((mean_y - m.mean_y).abs() <= 1e-9 * m.mean_y.abs().max(1.0));
                assert!((var_x - m.var_x).abs() <= 1e-9 * m.var_x.max(1.0));
                assert!((var_y - m.var_y).abs() <= 1e-9 * m.var_y.max(1.0));
                // the literal identity <Delta r^2> = <Delta x^2> + <Delta y^2>
                assert!((m.var_total - (m.var_x + m.var_y)).abs() <= 1e-12 * m.var_total.max(1.0));
                assert!(
                    (d.variance_total() - m.var_total).abs() <= 1e-9 * m.var_total.max(1.0)
                );
            }
        }
    }

    #[test]
    fn infeasible_zeta_is_rejected() {
        let err = GroverProbabilities::from_zeta(&EffectiveCoherence {
            zeta1: 0.5,
            zeta2: 0.5,
            zeta3: 0.5,
        })
        .unwrap_err();
        assert!(matches!(err, Error::Invariant { invariant: "grover_probabilities.range", .. }));
    }
}
