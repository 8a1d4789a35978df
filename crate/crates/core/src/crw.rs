//! Classical random walk: closed-form binomial position law and moments.
//! This is the fully decoherent baseline every quantum variant is compared
//! against.

use crate::error::Error;
use crate::numeric::binomial_masses;
use crate::types::{Distribution1D, Moments1D, TRACE_TOL};

/// Step probabilities and step count of a classical walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrwParams {
    p1: f64,
    pm1: f64,
    n: usize,
}

impl CrwParams {
    pub fn new(p1: f64, pm1: f64, n: usize) -> Result<Self, Error> {
        if !(0.0..=1.0).contains(&p1) || !(0.0..=1.0).contains(&pm1) {
            return Err(Error::InvalidParameter(format!(
                "step probabilities must lie in [0, 1], got ({p1}, {pm1})"
            )));
        }
        let residual = (p1 + pm1 - 1.0).abs();
        if residual > TRACE_TOL {
            return Err(Error::Invariant {
                invariant: "crw.p_sum",
                measured: residual,
                bound: TRACE_TOL,
            });
        }
        Ok(Self { p1, pm1, n })
    }

    /// Unbiased walk with p1 = pm1 = 1/2.
    pub fn symmetric(n: usize) -> Self {
        Self {
            p1: 0.5,
            pm1: 0.5,
            n,
        }
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn pm1(&self) -> f64 {
        self.pm1
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Binomial position distribution: mass(x) = C(n, (n+x)/2) p1^((n+x)/2)
/// pm1^((n-x)/2) on parity-allowed sites. Evaluated in log space, so step
/// counts up to 1e5 stay finite.
pub fn crw_distribution(params: &CrwParams) -> Distribution1D {
    let masses = binomial_masses(params.n, params.p1, params.pm1);
    Distribution1D::from_support_masses(params.n, masses)
        .expect("binomial masses are normalized by construction")
}

/// Closed-form moments: mean n(p1 - pm1), variance 4 n p1 pm1.
pub fn crw_moments(params: &CrwParams) -> Moments1D {
    let n = params.n as f64;
    Moments1D {
        mean: n * (params.p1 - params.pm1),
        variance: 4.0 * n * params.p1 * params.pm1,
    }
}
