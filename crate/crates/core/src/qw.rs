//! Conventional quantum walk: a single coin flipped by the same Hadamard
//! every step, with the walker and coin evolving unitarily. The sequential
//! evolution correlates different steps, which shows up as a non-zero
//! covariance between the coin measured before the first step and after
//! the n-th, and as a ballistic position distribution.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Error;
use crate::quad::{oscillatory_integral, oscillatory_integral_real};
use crate::types::{CoinState2, Distribution1D, TRACE_TOL};

/// Tolerances for the reduced coin matrix invariants.
const REDUCED_TOL: f64 = 1e-10;

/// sigma_z eigenbasis label of the coin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoinBasis {
    /// |+1> (heads; the walker steps right on this component).
    Plus,
    /// |-1> (tails).
    Minus,
}

/// How a reduced matrix or covariance value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Dense evolution of the walker-coin state, then a partial trace.
    Direct,
    /// Closed-form momentum integrals evaluated by quadrature.
    Integral,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Integral => "integral",
        }
    }
}

/// Pure walker-coin state over sites [-n_max, n_max] with two coin
/// amplitudes per site.
#[derive(Debug, Clone)]
pub struct QwState {
    n_max: usize,
    steps: usize,
    /// Slot 2*site_index(x) holds the |+1> amplitude, the next the |-1>.
    amps: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl QwState {
    /// Walker at the origin with the given coin amplitudes (must be
    /// normalized within 1e-12).
    pub fn localized(n_max: usize, up: Complex64, down: Complex64) -> Result<Self, Error> {
        let norm = up.norm_sqr() + down.norm_sqr();
        if (norm - 1.0).abs() > TRACE_TOL {
            return Err(Error::Invariant {
                invariant: "qw_state.norm",
                measured: (norm - 1.0).abs(),
                bound: TRACE_TOL,
            });
        }
        let len = 2 * (2 * n_max + 1);
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        let origin = n_max;
        amps[2 * origin] = up;
        amps[2 * origin + 1] = down;
        Ok(Self {
            n_max,
            steps: 0,
            amps,
            scratch: vec![Complex64::new(0.0, 0.0); len],
        })
    }

    pub fn from_basis(n_max: usize, basis: CoinBasis) -> Self {
        let (up, down) = match basis {
            CoinBasis::Plus => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
            CoinBasis::Minus => (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
        };
        Self::localized(n_max, up, down).expect("basis state is normalized")
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn steps_taken(&self) -> usize {
        self.steps
    }

    fn slot(&self, x: i64) -> usize {
        2 * ((x + self.n_max as i64) as usize)
    }

    /// Amplitude at site x for the given coin component; zero outside the
    /// reachable support.
    pub fn amplitude(&self, x: i64, basis: CoinBasis) -> Complex64 {
        if x.abs() > self.steps as i64 {
            return Complex64::new(0.0, 0.0);
        }
        let offset = match basis {
            CoinBasis::Plus => 0,
            CoinBasis::Minus => 1,
        };
        self.amps[self.slot(x) + offset]
    }

    /// One walk step: Hadamard on each site's coin block, then the +1
    /// component shifts right and the -1 component shifts left.
    pub fn step(&mut self) -> Result<(), Error> {
        if self.steps >= self.n_max {
            return Err(Error::StepLimit {
                requested: self.steps + 1,
                n_max: self.n_max,
            });
        }
        // 1/sqrt(2) as a hi+lo pair. The f64 constant alone sits ~0.7e-16
        // above the true value, and that bias compounds into a linear norm
        // drift past 1e-12 within ~7000 steps.
        let hi = FRAC_1_SQRT_2;
        let lo = -hi.mul_add(hi, -0.5) / (2.0 * hi);
        let scale = |v: Complex64| v * hi + v * lo;

        let reach = self.steps as i64;
        let next_reach = reach + 1;
        for x in -next_reach..=next_reach {
            let slot = self.slot(x);
            self.scratch[slot] = Complex64::new(0.0, 0.0);
            self.scratch[slot + 1] = Complex64::new(0.0, 0.0);
        }
        for x in -reach..=reach {
            let slot = self.slot(x);
            let up = self.amps[slot];
            let down = self.amps[slot + 1];
            if up == Complex64::new(0.0, 0.0) && down == Complex64::new(0.0, 0.0) {
                continue;
            }
            let new_up = scale(up + down);
            let new_down = scale(up - down);
            let right = self.slot(x + 1);
            let left = self.slot(x - 1) + 1;
            self.scratch[right] += new_up;
            self.scratch[left] += new_down;
        }
        std::mem::swap(&mut self.amps, &mut self.scratch);
        self.steps += 1;
        Ok(())
    }

    /// Total probability (should stay 1 under the unitary evolution).
    pub fn norm_sqr(&self) -> f64 {
        let reach = self.steps as i64;
        let mut total = 0.0;
        for x in -reach..=reach {
            let slot = self.slot(x);
            total += self.amps[slot].norm_sqr() + self.amps[slot + 1].norm_sqr();
        }
        total
    }

    /// Position distribution after the steps taken so far.
    pub fn position_distribution(&self) -> Distribution1D {
        let n = self.steps;
        let mut masses = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let x = 2 * j as i64 - n as i64;
            let slot = self.slot(x);
            masses.push(self.amps[slot].norm_sqr() + self.amps[slot + 1].norm_sqr());
        }
        Distribution1D::from_support_masses(n, masses)
            .expect("unitary evolution preserves total probability")
    }

    /// Partial trace over the walker: rho_c = sum_x psi_x psi_x^H, as
    /// (rho11, rho_1m1, rho_m11, rho_m1m1).
    fn reduced_coin_elements(&self) -> [Complex64; 4] {
        let reach = self.steps as i64;
        let mut rho11 = Complex64::new(0.0, 0.0);
        let mut rho_1m1 = Complex64::new(0.0, 0.0);
        let mut rho_m1m1 = Complex64::new(0.0, 0.0);
        for x in -reach..=reach {
            let slot = self.slot(x);
            let up = self.amps[slot];
            let down = self.amps[slot + 1];
            rho11 += up * up.conj();
            rho_1m1 += up * down.conj();
            rho_m1m1 += down * down.conj();
        }
        [rho11, rho_1m1, rho_1m1.conj(), rho_m1m1]
    }
}

/// Functional step: returns the advanced copy of the state.
pub fn qw_step(state: &QwState) -> Result<QwState, Error> {
    let mut next = state.clone();
    next.step()?;
    Ok(next)
}

/// Position distribution of the walk after n steps from a possibly mixed
/// initial coin. The coin is spectrally decomposed into at most two
/// orthogonal pure states, each evolved separately and mixed with its
/// spectral weight.
pub fn qw_distribution(initial_coin: &CoinState2, n: usize) -> Distribution1D {
    let components = spectral_decomposition(initial_coin);
    let mut masses = vec![0.0; n + 1];
    for (weight, up, down) in components {
        if weight <= 0.0 {
            continue;
        }
        let mut state = QwState::localized(n, up, down).expect("eigenvectors are normalized");
        for _ in 0..n {
            state.step().expect("n_max sized to n");
        }
        let d = state.position_distribution();
        for (j, mass) in masses.iter_mut().enumerate() {
            *mass += weight * d.mass(2 * j as i64 - n as i64);
        }
    }
    Distribution1D::from_support_masses(n, masses).expect("mixture of normalized distributions")
}

/// Eigendecomposition of the 2x2 coin density matrix into
/// (weight, up-amplitude, down-amplitude) pure components.
fn spectral_decomposition(coin: &CoinState2) -> Vec<(f64, Complex64, Complex64)> {
    let p1 = coin.p1();
    let pm1 = coin.pm1();
    let eta = coin.eta();
    if eta.norm() < 1e-15 {
        return vec![
            (p1, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
            (pm1, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
        ];
    }
    let gap = ((p1 - pm1) * (p1 - pm1) + 4.0 * eta.norm_sqr()).sqrt();
    let lambda_plus = (p1 + pm1 + gap) / 2.0;
    let lambda_minus = (p1 + pm1 - gap) / 2.0;
    // (eta, lambda - p1) is an eigenvector for lambda when eta != 0
    let v1 = eta;
    let v2 = Complex64::new(lambda_plus - p1, 0.0);
    let norm = (v1.norm_sqr() + v2.norm_sqr()).sqrt();
    let up = v1 / norm;
    let down = v2 / norm;
    // orthogonal complement is the other eigenvector
    vec![
        (lambda_plus.max(0.0), up, down),
        (lambda_minus.max(0.0), -down.conj(), up.conj()),
    ]
}

/// The coin's reduced density matrix after n steps with its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedCoinMatrix {
    pub rho11: Complex64,
    pub rho_1m1: Complex64,
    pub rho_m11: Complex64,
    pub rho_m1m1: Complex64,
    pub method: Method,
}

impl ReducedCoinMatrix {
    fn new(elements: [Complex64; 4], method: Method) -> Result<Self, Error> {
        let [rho11, rho_1m1, rho_m11, rho_m1m1] = elements;
        let trace_residual = (rho11 + rho_m1m1 - Complex64::new(1.0, 0.0)).norm();
        if trace_residual > REDUCED_TOL {
            return Err(Error::Invariant {
                invariant: "reduced_coin.trace",
                measured: trace_residual,
                bound: REDUCED_TOL,
            });
        }
        let hermiticity = (rho_1m1 - rho_m11.conj()).norm();
        if hermiticity > REDUCED_TOL {
            return Err(Error::Invariant {
                invariant: "reduced_coin.hermiticity",
                measured: hermiticity,
                bound: REDUCED_TOL,
            });
        }
        Ok(Self {
            rho11,
            rho_1m1,
            rho_m11,
            rho_m1m1,
            method,
        })
    }

    /// <sigma_z> = rho11 - rho_m1m1 (real part; imaginary parts are noise).
    pub fn sigma_z(&self) -> f64 {
        (self.rho11 - self.rho_m1m1).re
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.rho11 - other.rho11,
            self.rho_1m1 - other.rho_1m1,
            self.rho_m11 - other.rho_m11,
            self.rho_m1m1 - other.rho_m1m1,
        ]
        .iter()
        .map(|d| d.norm())
        .fold(0.0, f64::max)
    }
}

/// Reduced coin matrix by dense evolution from |0> (x) |basis>.
pub fn coin_reduced_direct(basis: CoinBasis, n: usize) -> ReducedCoinMatrix {
    let mut state = QwState::from_basis(n.max(1), basis);
    for _ in 0..n {
        state.step().expect("n_max sized to n");
    }
    ReducedCoinMatrix::new(state.reduced_coin_elements(), Method::Direct)
        .expect("partial trace of a normalized pure state")
}

fn omega(k: f64) -> f64 {
    (k.sin() * FRAC_1_SQRT_2).asin()
}

/// Oscillating diagonal integral: int cos(2 n omega_k) / (1 + cos^2 k) dk.
fn diagonal_integral(n: usize) -> Result<f64, Error> {
    oscillatory_integral_real(
        move |k| (2.0 * n as f64 * omega(k)).cos() / (1.0 + k.cos() * k.cos()),
        n,
    )
}

/// Closed-form reduced coin matrix: the four momentum-space integrals
/// evaluated by quadrature. Equals the direct route for every n.
pub fn coin_reduced_integral(basis: CoinBasis, n: usize) -> Result<ReducedCoinMatrix, Error> {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let scale = sign / (4.0 * PI);
    let diag = diagonal_integral(n)?;
    let nf = n as f64;

    let upper = oscillatory_integral(
        move |k| {
            let cos_k = k.cos();
            let root = (1.0 + cos_k * cos_k).sqrt();
            let phase = Complex64::new(0.0, -k).exp();
            let angle = 2.0 * nf * omega(k);
            phase
                * (Complex64::new(0.0, angle.sin() / root)
                    - Complex64::new(cos_k * angle.cos() / (root * root), 0.0))
        },
        n,
    )?;
    let lower = oscillatory_integral(
        move |k| {
            let cos_k = k.cos();
            let root = (1.0 + cos_k * cos_k).sqrt();
            let phase = Complex64::new(0.0, k).exp();
            let angle = 2.0 * nf * omega(k);
            phase
                * (Complex64::new(0.0, -angle.sin() / root)
                    - Complex64::new(cos_k * angle.cos() / (root * root), 0.0))
        },
        n,
    )?;

    let elements = match basis {
        CoinBasis::Plus => [
            Complex64::new(1.0 - SQRT_2 / 4.0 + scale * diag, 0.0),
            Complex64::new((2.0 - SQRT_2) / 4.0, 0.0) + upper * scale,
            Complex64::new((2.0 - SQRT_2) / 4.0, 0.0) + lower * scale,
            Complex64::new(SQRT_2 / 4.0 - scale * diag, 0.0),
        ],
        CoinBasis::Minus => [
            Complex64::new(SQRT_2 / 4.0 - scale * diag, 0.0),
            Complex64::new(-(2.0 - SQRT_2) / 4.0, 0.0) - upper * scale,
            Complex64::new(-(2.0 - SQRT_2) / 4.0, 0.0) - lower * scale,
            Complex64::new(1.0 - SQRT_2 / 4.0 + scale * diag, 0.0),
        ],
    };
    ReducedCoinMatrix::new(elements, Method::Integral)
}

fn require_diagonal(initial: &CoinState2) -> Result<(), Error> {
    if !initial.is_diagonal() {
        return Err(Error::InvalidParameter(format!(
            "covariance requires a diagonal initial coin (the first projective \
             measurement removes coherence); |eta| = {:.3e}",
            initial.eta().norm()
        )));
    }
    Ok(())
}

fn covariance_from_reduced(
    initial: &CoinState2,
    plus: &ReducedCoinMatrix,
    minus: &ReducedCoinMatrix,
) -> f64 {
    let p1 = initial.p1();
    let pm1 = initial.pm1();
    let joint = p1 * plus.sigma_z() - pm1 * minus.sigma_z();
    let sigma_n = p1 * plus.sigma_z() + pm1 * minus.sigma_z();
    let sigma_0 = p1 - pm1;
    joint - sigma_n * sigma_0
}

/// Covariance <sigma_z(n) sigma_z(0)> - <sigma_z(n)><sigma_z(0)> from the
/// two projected dense evolutions.
pub fn covariance_direct(initial: &CoinState2, n: usize) -> Result<f64, Error> {
    require_diagonal(initial)?;
    let plus = coin_reduced_direct(CoinBasis::Plus, n);
    let minus = coin_reduced_direct(CoinBasis::Minus, n);
    Ok(covariance_from_reduced(initial, &plus, &minus))
}

/// Covariance from the closed form
/// (1 - sqrt(2)/2 + (-1)^n/(2 pi) int cos(2 omega_k n)/(1 + cos^2 k) dk)
/// * (1 - (p1 - pm1)^2).
pub fn covariance_integral(initial: &CoinState2, n: usize) -> Result<f64, Error> {
    require_diagonal(initial)?;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let diag = diagonal_integral(n)?;
    let base = 1.0 - SQRT_2 / 2.0 + sign / (2.0 * PI) * diag;
    let bias = initial.p1() - initial.pm1();
    Ok(base * (1.0 - bias * bias))
}

/// The large-n limit of the symmetric covariance.
pub fn covariance_limit(initial: &CoinState2) -> f64 {
    let bias = initial.p1() - initial.pm1();
    (1.0 - SQRT_2 / 2.0) * (1.0 - bias * bias)
}

/// The analogous covariance for walks whose flips are independent across
/// steps (classical and many-coin walks): the joint expectation factorizes,
/// so the covariance is identically zero.
pub fn independent_flip_covariance(p_right_first: f64, p_right_last: f64) -> f64 {
    let first = 2.0 * p_right_first - 1.0;
    let last = 2.0 * p_right_last - 1.0;
    let joint = first * last;
    joint - first * last
}

/// Per-step covariance with its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceEntry {
    pub n: usize,
    pub value: f64,
    pub method: Method,
}

/// Covariance values for n = 1..n_max, ordered by n ascending (direct
/// before integral at equal n).
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceSeries {
    entries: Vec<CovarianceEntry>,
}

/// Which methods a covariance series should evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodSelection {
    Direct,
    Integral,
    Both,
}

impl MethodSelection {
    fn wants_direct(&self) -> bool {
        matches!(self, MethodSelection::Direct | MethodSelection::Both)
    }

    fn wants_integral(&self) -> bool {
        matches!(self, MethodSelection::Integral | MethodSelection::Both)
    }
}

impl CovarianceSeries {
    fn new(entries: Vec<CovarianceEntry>) -> Result<Self, Error> {
        for entry in &entries {
            if entry.value.abs() > 1.0 + TRACE_TOL {
                return Err(Error::Invariant {
                    invariant: "covariance_series.bound",
                    measured: entry.value.abs(),
                    bound: 1.0,
                });
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[CovarianceEntry] {
        &self.entries
    }

    pub fn value(&self, n: usize, method: Method) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.n == n && e.method == method)
            .map(|e| e.value)
    }
}

/// Evaluates the covariance for every n in 1..=n_max. The direct route
/// reuses one incremental evolution per basis; integral entries are
/// independent and evaluated in parallel, then emitted in ascending n.
pub fn covariance_series(
    initial: &CoinState2,
    n_max: usize,
    selection: MethodSelection,
) -> Result<CovarianceSeries, Error> {
    require_diagonal(initial)?;
    if n_max < 1 {
        return Err(Error::InvalidParameter(
            "covariance series needs n_max >= 1".into(),
        ));
    }

    let direct = if selection.wants_direct() {
        let mut plus = QwState::from_basis(n_max, CoinBasis::Plus);
        let mut minus = QwState::from_basis(n_max, CoinBasis::Minus);
        let mut values = Vec::with_capacity(n_max);
        for _ in 1..=n_max {
            plus.step()?;
            minus.step()?;
            let rp = ReducedCoinMatrix::new(plus.reduced_coin_elements(), Method::Direct)?;
            let rm = ReducedCoinMatrix::new(minus.reduced_coin_elements(), Method::Direct)?;
            values.push(covariance_from_reduced(initial, &rp, &rm));
        }
        Some(values)
    } else {
        None
    };

    let integral = if selection.wants_integral() {
        let values: Result<Vec<f64>, Error> = (1..=n_max)
            .into_par_iter()
            .map(|n| covariance_integral(initial, n))
            .collect();
        Some(values?)
    } else {
        None
    };

    let mut entries = Vec::new();
    for n in 1..=n_max {
        if let Some(values) = &direct {
            entries.push(CovarianceEntry {
                n,
                value: values[n - 1],
                method: Method::Direct,
            });
        }
        if let Some(values) = &integral {
            entries.push(CovarianceEntry {
                n,
                value: values[n - 1],
                method: Method::Integral,
            });
        }
    }
    CovarianceSeries::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_step_splits_evenly() {
        let mut state = QwState::from_basis(4, CoinBasis::Plus);
        state.step().unwrap();
        assert!((state.amplitude(1, CoinBasis::Plus) - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((state.amplitude(-1, CoinBasis::Minus) - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        let d = state.position_distribution();
        assert!((d.mass(1) - 0.5).abs() < 1e-15);
        assert!((d.mass(-1) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn two_steps_from_heads() {
        let mut state = QwState::from_basis(4, CoinBasis::Plus);
        state.step().unwrap();
        state.step().unwrap();
        let d = state.position_distribution();
        assert!((d.mass(2) - 0.25).abs() < 1e-15);
        assert!((d.mass(0) - 0.5).abs() < 1e-15);
        assert!((d.mass(-2) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn norm_is_preserved_over_many_steps() {
        let mut state = QwState::localized(
            100,
            c(0.6, 0.0),
            c(0.0, 0.8),
        )
        .unwrap();
        for _ in 0..100 {
            state.step().unwrap();
            assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn stepping_past_capacity_fails() {
        let mut state = QwState::from_basis(2, CoinBasis::Plus);
        state.step().unwrap();
        state.step().unwrap();
        assert!(matches!(
            state.step(),
            Err(Error::StepLimit { requested: 3, n_max: 2 })
        ));
    }

    #[test]
    fn functional_step_leaves_input_unchanged() {
        let state = QwState::from_basis(3, CoinBasis::Plus);
        let next = qw_step(&state).unwrap();
        assert_eq!(state.steps_taken(), 0);
        assert_eq!(next.steps_taken(), 1);
    }

    #[test]
    fn mixed_coin_distribution_is_symmetric() {
        let d = qw_distribution(&CoinState2::maximally_mixed(), 60);
        for (x, m) in d.support() {
            assert!((m - d.mass(-x)).abs() < 1e-12, "site {x}");
        }
    }

    #[test]
    fn single_step_distribution_from_heads() {
        let d = qw_distribution(&CoinState2::basis(true), 1);
        assert!((d.mass(1) - 0.5).abs() < 1e-15);
        assert!((d.mass(-1) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn coherent_coin_spectral_decomposition_round_trips() {
        // lambda_+ v + lambda_- v_perp must reassemble the density matrix
        let coin = CoinState2::new(0.62, 0.38, c(0.21, -0.13)).unwrap();
        let comps = spectral_decomposition(&coin);
        assert_eq!(comps.len(), 2);
        let mut rho = [[c(0.0, 0.0); 2]; 2];
        for (w, up, down) in &comps {
            rho[0][0] += up * up.conj() * *w;
            rho[0][1] += up * down.conj() * *w;
            rho[1][0] += down * up.conj() * *w;
            rho[1][1] += down * down.conj() * *w;
        }
        assert!((rho[0][0] - c(0.62, 0.0)).norm() < 1e-14);
        assert!((rho[0][1] - c(0.21, -0.13)).norm() < 1e-14);
        assert!((rho[1][1] - c(0.38, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn ballistic_spread_beats_diffusive() {
        let d = qw_distribution(&CoinState2::maximally_mixed(), 100);
        assert!(d.variance() / 1e4 > 0.2, "variance = {}", d.variance());
    }

    #[test]
    fn mirror_symmetry_between_bases() {
        let mut plus = QwState::from_basis(200, CoinBasis::Plus);
        let mut minus = QwState::from_basis(200, CoinBasis::Minus);
        for n in 1..=200usize {
            plus.step().unwrap();
            minus.step().unwrap();
            let dp = plus.position_distribution();
            let dm = minus.position_distribution();
            for (x, m) in dp.support() {
                assert!(
                    (m - dm.mass(-x)).abs() < 1e-12,
                    "n = {n}, site {x}: {m} vs {}",
                    dm.mass(-x)
                );
            }
        }
    }

    #[test]
    fn reduced_direct_small_steps() {
        let r = coin_reduced_direct(CoinBasis::Plus, 0);
        assert_eq!(r.rho11, c(1.0, 0.0));
        assert_eq!(r.rho_m1m1, c(0.0, 0.0));

        // after one step the components sit on distinct sites
        let r = coin_reduced_direct(CoinBasis::Plus, 1);
        assert!((r.rho11 - c(0.5, 0.0)).norm() < 1e-15);
        assert!((r.rho_m1m1 - c(0.5, 0.0)).norm() < 1e-15);
        assert!(r.rho_1m1.norm() < 1e-15);
    }

    #[test]
    fn reduced_integral_at_zero_steps_is_the_initial_projector() {
        let r = coin_reduced_integral(CoinBasis::Plus, 0).unwrap();
        assert!((r.rho11 - c(1.0, 0.0)).norm() < 1e-10);
        assert!(r.rho_m1m1.norm() < 1e-10);
        assert!(r.rho_1m1.norm() < 1e-10);
    }

    #[test]
    fn reduced_matrices_agree_across_methods() {
        for &n in &[0usize, 1, 2, 3, 5, 9, 17, 33, 64] {
            for basis in [CoinBasis::Plus, CoinBasis::Minus] {
                let direct = coin_reduced_direct(basis, n);
                let integral = coin_reduced_integral(basis, n).unwrap();
                let diff = direct.max_abs_diff(&integral);
                assert!(diff <= 1e-8, "n = {n}, basis {basis:?}: diff = {diff:e}");
            }
        }
    }

    #[test]
    fn reduced_matrix_approaches_limit_constants() {
        // limits: (1/4)[[4-s2, 2-s2], [2-s2, s2]] and its mirror; the
        // oscillatory correction decays like 1/sqrt(n)
        let limit_plus = [
            c((4.0 - SQRT_2) / 4.0, 0.0),
            c((2.0 - SQRT_2) / 4.0, 0.0),
            c((2.0 - SQRT_2) / 4.0, 0.0),
            c(SQRT_2 / 4.0, 0.0),
        ];
        for &n in &[100usize, 200, 400] {
            let envelope = 0.5 / (n as f64).sqrt();
            let r = coin_reduced_direct(CoinBasis::Plus, n);
            let got = [r.rho11, r.rho_1m1, r.rho_m11, r.rho_m1m1];
            for (g, l) in got.iter().zip(limit_plus) {
                assert!((g - l).norm() <= envelope, "n = {n}: {} vs {}", g, l);
            }
            let rm = coin_reduced_direct(CoinBasis::Minus, n);
            assert!((rm.rho11 - c(SQRT_2 / 4.0, 0.0)).norm() <= envelope);
            assert!((rm.rho_1m1 - c(-(2.0 - SQRT_2) / 4.0, 0.0)).norm() <= envelope);
        }
    }

    #[test]
    fn covariance_exact_small_values() {
        // the n = 1 integral reduces to int cos^2 k/(1 + cos^2 k) dk, which
        // cancels the constant exactly; n = 3 evaluates to 1/2 and n = 5 to
        // 1/8 by the same dense evolution that fixes the expected values
        let mixed = CoinState2::maximally_mixed();
        assert!(covariance_direct(&mixed, 1).unwrap().abs() < 1e-14);
        assert!(covariance_integral(&mixed, 1).unwrap().abs() < 1e-10);
        assert!((covariance_direct(&mixed, 3).unwrap() - 0.5).abs() < 1e-14);
        assert!((covariance_direct(&mixed, 5).unwrap() - 0.125).abs() < 1e-14);
    }

    #[test]
    fn covariance_vanishes_for_deterministic_initial_measurement() {
        for heads in [true, false] {
            let coin = CoinState2::basis(heads);
            assert_eq!(covariance_direct(&coin, 7).unwrap(), 0.0);
            assert_eq!(covariance_integral(&coin, 7).unwrap(), 0.0);
        }
    }

    #[test]
    fn covariance_rejects_coherent_initial_state() {
        let coherent = CoinState2::new(0.5, 0.5, c(0.1, 0.0)).unwrap();
        assert!(covariance_direct(&coherent, 3).is_err());
        assert!(covariance_integral(&coherent, 3).is_err());
    }

    #[test]
    fn covariance_methods_agree() {
        let mixed = CoinState2::maximally_mixed();
        for &n in &[1usize, 2, 7, 20, 45, 64] {
            let d = covariance_direct(&mixed, n).unwrap();
            let i = covariance_integral(&mixed, n).unwrap();
            assert!((d - i).abs() <= 1e-8, "n = {n}: {d} vs {i}");
        }
    }

    #[test]
    fn covariance_approaches_constant() {
        let mixed = CoinState2::maximally_mixed();
        let limit = covariance_limit(&mixed);
        assert!((limit - (1.0 - SQRT_2 / 2.0)).abs() < 1e-15);
        let v = covariance_integral(&mixed, 200).unwrap();
        assert!((v - limit).abs() < 0.04);
    }

    #[test]
    fn series_is_ordered_and_bounded() {
        let mixed = CoinState2::maximally_mixed();
        let series = covariance_series(&mixed, 3, MethodSelection::Both).unwrap();
        assert_eq!(series.entries().len(), 6);
        let mut last_n = 0;
        for entry in series.entries() {
            assert!(entry.n >= last_n);
            last_n = entry.n;
            assert!(entry.value.abs() <= 1.0);
        }
        for n in 1..=3 {
            let d = series.value(n, Method::Direct).unwrap();
            let i = series.value(n, Method::Integral).unwrap();
            assert!((d - i).abs() <= 1e-8);
        }
    }

    #[test]
    fn series_tail_approaches_the_constant_with_shrinking_envelope() {
        let mixed = CoinState2::maximally_mixed();
        let series = covariance_series(&mixed, 120, MethodSelection::Integral).unwrap();
        let limit = 1.0 - SQRT_2 / 2.0;
        for entry in series.entries().iter().filter(|e| e.n >= 20) {
            let envelope = 0.5 / (entry.n as f64).sqrt();
            assert!(
                (entry.value - limit).abs() <= envelope,
                "n = {}: {} vs envelope {envelope}",
                entry.n,
                entry.value
            );
        }
    }

    #[test]
    fn independent_flips_have_exactly_zero_covariance() {
        for &(a, b) in &[(0.5, 0.5), (0.6, 0.4), (1.0, 0.3), (0.0, 0.9)] {
            assert_eq!(independent_flip_covariance(a, b), 0.0);
        }
    }
}
