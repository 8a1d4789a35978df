//! Composite Simpson quadrature over [-pi, pi] for the oscillatory
//! momentum integrals of the single-coin walk. The integrands are smooth
//! and periodic but oscillate with a frequency growing linearly in the
//! step count, so the grid is sized with the step count and doubled until
//! successive estimates agree.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Error;

/// Successive Simpson estimates must agree to this before a value is
/// accepted; the accepted value is then good to ~1e-10 absolute.
pub(crate) const STEP_TOL: f64 = 1e-11;

const MAX_INTERVALS: usize = 1 << 24;

fn simpson_sum<F>(f: &F, intervals: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    debug_assert!(intervals.is_multiple_of(2));
    let h = 2.0 * PI / intervals as f64;
    let mut acc = f(-PI) + f(PI);
    for i in 1..intervals {
        let k = -PI + i as f64 * h;
        let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += f(k) * weight;
    }
    acc * (h / 3.0)
}

/// Integrates a complex-valued periodic integrand whose oscillation order
/// is `walk_steps`, starting from max(1024, 64 * walk_steps) intervals and
/// doubling until two successive estimates differ by less than `STEP_TOL`.
pub(crate) fn oscillatory_integral<F>(f: F, walk_steps: usize) -> Result<Complex64, Error>
where
    F: Fn(f64) -> Complex64,
{
    let mut intervals = 1024usize.max(64 * walk_steps);
    if intervals % 2 == 1 {
        intervals += 1;
    }
    let mut prev = simpson_sum(&f, intervals);
    loop {
        intervals *= 2;
        if intervals > MAX_INTERVALS {
            return Err(Error::QuadratureConvergence {
                achieved: f64::NAN,
                requested: STEP_TOL,
                intervals,
            });
        }
        let current = simpson_sum(&f, intervals);
        let residual = (current - prev).norm();
        if residual < STEP_TOL {
            return Ok(current);
        }
        if intervals == MAX_INTERVALS {
            return Err(Error::QuadratureConvergence {
                achieved: residual,
                requested: STEP_TOL,
                intervals,
            });
        }
        prev = current;
    }
}

/// Real-valued convenience wrapper.
pub(crate) fn oscillatory_integral_real<F>(f: F, walk_steps: usize) -> Result<f64, Error>
where
    F: Fn(f64) -> f64,
{
    oscillatory_integral(|k| Complex64::new(f(k), 0.0), walk_steps).map(|v| v.re)
}
