//! Domain types shared by every engine: coin density matrices, unitary coin
//! operators, lattice distributions and the effective coherence of a
//! four-direction coin.
//!
//! All types are immutable value objects validated at construction; once
//! built they can be shared and sent across threads freely.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64;

use crate::error::{Error, ValidationReport};
use crate::numeric::KahanSum;

/// Tolerance for probability sums (trace of a density matrix).
pub const TRACE_TOL: f64 = 1e-12;
/// Lower bound for the 2x2 determinant condition `p1*pm1 - |eta|^2`.
pub const PSD2_TOL: f64 = -1e-12;
/// Lower bound for the minimum eigenvalue of a 4x4 coin state.
pub const PSD4_TOL: f64 = -1e-10;
/// Maximum allowed entry of `U^H U - I` for a coin operator.
pub const UNITARITY_TOL: f64 = 1e-12;
/// Tolerance for the total mass of a position distribution.
pub const DISTRIBUTION_SUM_TOL: f64 = 1e-10;
/// Step probabilities in [-PROB_CLAMP, 0) are treated as exact zeros.
pub const PROB_CLAMP: f64 = 1e-12;

/// Density matrix of a two-level coin: diagonal probabilities plus the
/// off-diagonal coherence eta (the conjugate entry is implied, so the
/// matrix is Hermitian by construction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinState2 {
    p1: f64,
    pm1: f64,
    eta: Complex64,
}

/// Measures every `CoinState2` invariant without failing.
pub fn validate_coin2(p1: f64, pm1: f64, eta: Complex64) -> ValidationReport {
    let mut report = ValidationReport::default();
    report.push_min("coin2.p1_nonneg", p1, 0.0);
    report.push_min("coin2.pm1_nonneg", pm1, 0.0);
    report.push_max("coin2.trace", (p1 + pm1 - 1.0).abs(), TRACE_TOL);
    report.push_min("coin2.psd", p1 * pm1 - eta.norm_sqr(), PSD2_TOL);
    report
}

impl CoinState2 {
    pub fn new(p1: f64, pm1: f64, eta: Complex64) -> Result<Self, Error> {
        validate_coin2(p1, pm1, eta).into_result()?;
        Ok(Self { p1, pm1, eta })
    }

    /// diag(1/2, 1/2): the fully decoherenced, unbiased coin.
    pub fn maximally_mixed() -> Self {
        Self {
            p1: 0.5,
            pm1: 0.5,
            eta: Complex64::new(0.0, 0.0),
        }
    }

    /// Coin pointing at the basis state |1> (heads) or |-1> (tails).
    pub fn basis(heads: bool) -> Self {
        if heads {
            Self {
                p1: 1.0,
                pm1: 0.0,
                eta: Complex64::new(0.0, 0.0),
            }
        } else {
            Self {
                p1: 0.0,
                pm1: 1.0,
                eta: Complex64::new(0.0, 0.0),
            }
        }
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn pm1(&self) -> f64 {
        self.pm1
    }

    pub fn eta(&self) -> Complex64 {
        self.eta
    }

    pub fn is_diagonal(&self) -> bool {
        self.eta.norm() <= TRACE_TOL
    }

    pub fn matrix(&self) -> Matrix2<Complex64> {
        Matrix2::new(
            Complex64::new(self.p1, 0.0),
            self.eta,
            self.eta.conj(),
            Complex64::new(self.pm1, 0.0),
        )
    }

    /// Rebuilds a state from a conjugated density matrix, re-validating the
    /// invariants. The upper off-diagonal is taken as eta; Hermiticity is
    /// enforced structurally.
    pub fn from_matrix(m: &Matrix2<Complex64>) -> Result<Self, Error> {
        Self::new(m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)])
    }

    pub fn report(&self) -> ValidationReport {
        validate_coin2(self.p1, self.pm1, self.eta)
    }
}

/// Index pairs (i < j, zero-based) of the six stored off-diagonals of a
/// four-level coin, in row-major upper-triangle order.
pub const ETA_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn eta_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < 4);
    i * (7 - i) / 2 + j - i - 1
}

/// Density matrix of a four-level coin for the 2D walk: four diagonal
/// probabilities plus the six upper-triangle coherences. Only the upper
/// triangle is stored, so Hermiticity cannot be violated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinState4 {
    q: [f64; 4],
    eta: [Complex64; 6],
}

/// Measures every `CoinState4` invariant without failing.
pub fn validate_coin4(q: [f64; 4], eta: [Complex64; 6]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let trace: f64 = q.iter().sum();
    report.push_max("coin4.trace", (trace - 1.0).abs(), TRACE_TOL);
    report.push_min("coin4.q_min", q.iter().cloned().fold(f64::INFINITY, f64::min), 0.0);
    let min_eig = assemble4(&q, &eta)
        .symmetric_eigenvalues()
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    report.push_min("coin4.min_eigenvalue", min_eig, PSD4_TOL);
    report
}

fn assemble4(q: &[f64; 4], eta: &[Complex64; 6]) -> Matrix4<Complex64> {
    let mut m = Matrix4::zeros();
    for i in 0..4 {
        m[(i, i)] = Complex64::new(q[i], 0.0);
    }
    for (idx, &(i, j)) in ETA_PAIRS.iter().enumerate() {
        m[(i, j)] = eta[idx];
        m[(j, i)] = eta[idx].conj();
    }
    m
}

impl CoinState4 {
    pub fn new(q: [f64; 4], eta: [Complex64; 6]) -> Result<Self, Error> {
        validate_coin4(q, eta).into_result()?;
        Ok(Self { q, eta })
    }

    /// diag(1/4, 1/4, 1/4, 1/4).
    pub fn maximally_mixed() -> Self {
        Self {
            q: [0.25; 4],
            eta: [Complex64::new(0.0, 0.0); 6],
        }
    }

    pub fn q(&self) -> [f64; 4] {
        self.q
    }

    /// Off-diagonal entry (i, j) with zero-based i < j < 4.
    pub fn eta(&self, i: usize, j: usize) -> Complex64 {
        self.eta[eta_index(i, j)]
    }

    pub fn eta_entries(&self) -> &[Complex64; 6] {
        &self.eta
    }

    pub fn matrix(&self) -> Matrix4<Complex64> {
        assemble4(&self.q, &self.eta)
    }

    pub fn from_matrix(m: &Matrix4<Complex64>) -> Result<Self, Error> {
        let q = [m[(0, 0)].re, m[(1, 1)].re, m[(2, 2)].re, m[(3, 3)].re];
        let mut eta = [Complex64::new(0.0, 0.0); 6];
        for (idx, &(i, j)) in ETA_PAIRS.iter().enumerate() {
            eta[idx] = m[(i, j)];
        }
        Self::new(q, eta)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.matrix()
            .symmetric_eigenvalues()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn report(&self) -> ValidationReport {
        validate_coin4(self.q, self.eta)
    }
}

/// Difference of real off-diagonal parts that fully determines the
/// step-direction probabilities of the Grover-flipped 2D coin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveCoherence {
    pub zeta1: f64,
    pub zeta2: f64,
    pub zeta3: f64,
}

/// zeta1 = Re eta_12 - Re eta_34, zeta2 = Re eta_13 - Re eta_24,
/// zeta3 = Re eta_14 - Re eta_23.
pub fn effective_coherence(state: &CoinState4) -> EffectiveCoherence {
    EffectiveCoherence {
        zeta1: state.eta(0, 1).re - state.eta(2, 3).re,
        zeta2: state.eta(0, 2).re - state.eta(1, 3).re,
        zeta3: state.eta(0, 3).re - state.eta(1, 2).re,
    }
}

/// Unitary coin-flip operator of dimension 2 or 4.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinOperator {
    entries: DMatrix<Complex64>,
}

/// Hadamard matrix (1/sqrt 2) [[1, 1], [1, -1]].
pub fn hadamard2() -> CoinOperator {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    CoinOperator {
        entries: DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(h, 0.0),
                Complex64::new(h, 0.0),
                Complex64::new(h, 0.0),
                Complex64::new(-h, 0.0),
            ],
        ),
    }
}

/// Grover diffusion coin: diagonal -1/2, off-diagonal +1/2.
pub fn grover4() -> CoinOperator {
    let mut m = DMatrix::from_element(4, 4, Complex64::new(0.5, 0.0));
    for i in 0..4 {
        m[(i, i)] = Complex64::new(-0.5, 0.0);
    }
    CoinOperator { entries: m }
}

impl CoinOperator {
    /// Builds a general U(2) or U(4) coin, rejecting non-unitary input.
    pub fn from_matrix(entries: DMatrix<Complex64>) -> Result<Self, Error> {
        let n = entries.nrows();
        if entries.ncols() != n || (n != 2 && n != 4) {
            return Err(Error::InvalidParameter(format!(
                "coin operator must be 2x2 or 4x4, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let op = Self { entries };
        let residual = op.unitarity_residual();
        if residual > UNITARITY_TOL {
            return Err(Error::Invariant {
                invariant: "coin_operator.unitarity",
                measured: residual,
                bound: UNITARITY_TOL,
            });
        }
        Ok(op)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Max-norm of `U^H U - I`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.dim();
        let product = self.entries.adjoint() * &self.entries;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                worst = worst.max((product[(i, j)] - expected).norm());
            }
        }
        worst
    }

    /// `U rho U^H`.
    pub fn conjugate(&self, rho: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>, Error> {
        if rho.nrows() != self.dim() {
            return Err(Error::DimensionMismatch {
                operator: self.dim(),
                state: rho.nrows(),
            });
        }
        Ok(&self.entries * rho * self.entries.adjoint())
    }
}

/// Probability mass over lattice sites x in [-n, n] after n steps. Sites
/// with the wrong parity (n + x odd) carry zero mass and are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution1D {
    n: usize,
    /// Mass at x = 2j - n for j = 0..=n.
    mass: Vec<f64>,
}

impl Distribution1D {
    /// Builds a distribution from the n+1 masses on the parity-allowed
    /// support, ordered by site from -n to n.
    pub fn from_support_masses(n: usize, mass: Vec<f64>) -> Result<Self, Error> {
        if mass.len() != n + 1 {
            return Err(Error::InvalidParameter(format!(
                "expected {} support masses for n = {}, got {}",
                n + 1,
                n,
                mass.len()
            )));
        }
        let min = mass.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < 0.0 {
            return Err(Error::Invariant {
                invariant: "distribution1d.nonneg",
                measured: min,
                bound: 0.0,
            });
        }
        let mut total = KahanSum::default();
        for &m in &mass {
            total.add(m);
        }
        let residual = (total.value() - 1.0).abs();
        if residual > DISTRIBUTION_SUM_TOL {
            return Err(Error::Invariant {
                invariant: "distribution1d.total_mass",
                measured: residual,
                bound: DISTRIBUTION_SUM_TOL,
            });
        }
        Ok(Self { n, mass })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Mass at site x; zero off the support or at odd-parity sites.
    pub fn mass(&self, x: i64) -> f64 {
        let n = self.n as i64;
        if x < -n || x > n || (x + n) % 2 != 0 {
            return 0.0;
        }
        self.mass[((x + n) / 2) as usize]
    }

    /// Iterates (site, mass) over the parity-allowed support, ascending in x.
    pub fn support(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let n = self.n as i64;
        self.mass.iter().enumerate().map(move |(j, &m)| (2 * j as i64 - n, m))
    }

    /// Mean by direct summation.
    pub fn mean(&self) -> f64 {
        let mut acc = KahanSum::default();
        for (x, m) in self.support() {
            acc.add(x as f64 * m);
        }
        acc.value()
    }

    /// Variance by direct summation of the second central moment.
    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        let mut acc = KahanSum::default();
        for (x, m) in self.support() {
            let d = x as f64 - mean;
            acc.add(d * d * m);
        }
        acc.value()
    }

    /// Largest absolute site-wise difference against another distribution
    /// with the same step count.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, Error> {
        if self.n != other.n {
            return Err(Error::StepCountMismatch {
                a: self.n,
                b: other.n,
            });
        }
        Ok(self
            .mass
            .iter()
            .zip(&other.mass)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// Probability mass over 2D lattice sites after n steps. Only sites with
/// nonzero mass are stored; the parity constraint (x and n + y share
/// parity) is enforced on every stored site.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution2D {
    n: usize,
    mass: BTreeMap<(i64, i64), f64>,
}

impl Distribution2D {
    pub fn from_site_masses(n: usize, sites: BTreeMap<(i64, i64), f64>) -> Result<Self, Error> {
        let n_i = n as i64;
        let mut total = KahanSum::default();
        let mut mass = BTreeMap::new();
        for ((x, y), m) in sites {
            if m < 0.0 {
                return Err(Error::Invariant {
                    invariant: "distribution2d.nonneg",
                    measured: m,
                    bound: 0.0,
                });
            }
            if x.abs() + y.abs() > n_i || (x + y + n_i) % 2 != 0 {
                return Err(Error::InvalidParameter(format!(
                    "site ({x}, {y}) is unreachable in {n} steps"
                )));
            }
            total.add(m);
            if m > 0.0 {
                mass.insert((x, y), m);
            }
        }
        let residual = (total.value() - 1.0).abs();
        if residual > DISTRIBUTION_SUM_TOL {
            return Err(Error::Invariant {
                invariant: "distribution2d.total_mass",
                measured: residual,
                bound: DISTRIBUTION_SUM_TOL,
            });
        }
        Ok(Self { n, mass })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mass(&self, x: i64, y: i64) -> f64 {
        self.mass.get(&(x, y)).copied().unwrap_or(0.0)
    }

    /// Iterates ((x, y), mass) over nonzero-mass sites in lexicographic order.
    pub fn sites(&self) -> impl Iterator<Item = ((i64, i64), f64)> + '_ {
        self.mass.iter().map(|(&k, &v)| (k, v))
    }

    pub fn site_count(&self) -> usize {
        self.mass.len()
    }

    pub fn mean(&self) -> (f64, f64) {
        let (mut mx, mut my) = (KahanSum::default(), KahanSum::default());
        for ((x, y), m) in self.sites() {
            mx.add(x as f64 * m);
            my.add(y as f64 * m);
        }
        (mx.value(), my.value())
    }

    /// (var_x, var_y) by direct summation.
    pub fn variance_xy(&self) -> (f64, f64) {
        let (mean_x, mean_y) = self.mean();
        let (mut vx, mut vy) = (KahanSum::default(), KahanSum::default());
        for ((x, y), m) in self.sites() {
            let dx = x as f64 - mean_x;
            let dy = y as f64 - mean_y;
            vx.add(dx * dx * m);
            vy.add(dy * dy * m);
        }
        (vx.value(), vy.value())
    }

    /// <Delta r^2> = var_x + var_y by direct summation.
    pub fn variance_total(&self) -> f64 {
        let (vx, vy) = self.variance_xy();
        vx + vy
    }

    /// Marginal distribution over x as a raw site->mass map. (The marginal
    /// is generally not parity-constrained, so it is not a Distribution1D.)
    pub fn marginal_x(&self) -> BTreeMap<i64, f64> {
        let mut out: BTreeMap<i64, f64> = BTreeMap::new();
        for ((x, _), m) in self.sites() {
            *out.entry(x).or_insert(0.0) += m;
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, Error> {
        if self.n != other.n {
            return Err(Error::StepCountMismatch {
                a: self.n,
                b: other.n,
            });
        }
        let mut worst = 0.0f64;
        for (&site, &m) in &self.mass {
            worst = worst.max((m - other.mass(site.0, site.1)).abs());
        }
        for (&site, &m) in &other.mass {
            worst = worst.max((m - self.mass(site.0, site.1)).abs());
        }
        Ok(worst)
    }
}

/// First and second central moments of a 1D walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments1D {
    pub mean: f64,
    pub variance: f64,
}

/// Moments of a 2D walk: mean vector, per-axis variances and their sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments2D {
    pub mean_x: f64,
    pub mean_y: f64,
    pub var_x: f64,
    pub var_y: f64,
    pub var_total: f64,
}
