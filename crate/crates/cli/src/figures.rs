//! Canned parameter sets that regenerate the reference figure data:
//! 1D walk comparisons at n = 100, the eight 2D coin patterns at n = 40,
//! and the covariance series with its limiting constant and fit envelope.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use coinwalk_core::crw::{crw_distribution, CrwParams};
use coinwalk_core::qrw::qrw1d_distribution;
use coinwalk_core::qw::{covariance_series, qw_distribution, Method, MethodSelection};
use coinwalk_core::types::{hadamard2, CoinState2, CoinState4, ETA_PAIRS};

use crate::cli::FigureId;
use crate::error::CliError;
use crate::output::fmt_float;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The eight coin patterns of the 2D figure set: q = 1/4 on the diagonal,
/// real upper-triangle coherences assigned per pattern.
pub fn pattern_coin(assign: &[(usize, usize, f64)]) -> CoinState4 {
    let mut eta = [c(0.0, 0.0); 6];
    for &(i, j, v) in assign {
        let idx = ETA_PAIRS.iter().position(|&p| p == (i, j)).unwrap();
        eta[idx] = c(v, 0.0);
    }
    CoinState4::new([0.25; 4], eta).expect("pattern states are valid")
}

pub fn pattern_for(id: FigureId) -> Option<CoinState4> {
    let assign: &[(usize, usize, f64)] = match id {
        FigureId::Fig4a => &[],
        FigureId::Fig4b => &[
            (0, 1, 0.25),
            (0, 2, 0.25),
            (0, 3, 0.25),
            (1, 2, 0.25),
            (1, 3, 0.25),
            (2, 3, 0.25),
        ],
        FigureId::Fig4c => &[(0, 1, -0.25), (2, 3, 0.25)],
        FigureId::Fig4d => &[(0, 1, 0.25), (2, 3, -0.25)],
        FigureId::Fig4e => &[(0, 1, -0.2), (2, 3, 0.2)],
        FigureId::Fig4f => &[(0, 1, 0.2), (2, 3, -0.2)],
        FigureId::Fig4g => &[(0, 3, -0.1), (1, 2, 0.1)],
        FigureId::Fig4h => &[(0, 1, -0.1), (2, 3, 0.1), (1, 2, 0.2)],
        _ => return None,
    };
    Some(pattern_coin(assign))
}

pub fn figure_csv(id: FigureId) -> Result<String, CliError> {
    match id {
        FigureId::Fig2a => walk_comparison(0.0),
        FigureId::Fig2b => walk_comparison(0.1),
        FigureId::FigCov => covariance_figure(),
        FigureId::FigLoglog => loglog_figure(),
        other => {
            let state = pattern_for(other).expect("2d figure ids carry a pattern");
            let d = coinwalk_core::qrw::qrw2d_distribution(&state, 40)?;
            Ok(crate::output::csv_2d(&d))
        }
    }
}

/// `x,p_crw,p_qrw,p_qw` at n = 100 with p1 = pm1 = 1/2 and the given
/// coherence; odd sites carry zero mass and are omitted, as in the plots.
fn walk_comparison(eta_re: f64) -> Result<String, CliError> {
    let n = 100usize;
    let crw = crw_distribution(&CrwParams::symmetric(n));
    let state = CoinState2::new(0.5, 0.5, c(eta_re, 0.0))?;
    let qrw = qrw1d_distribution(&state, &hadamard2(), n)?;
    let qw = qw_distribution(&state, n);
    let mut out = String::from("x,p_crw,p_qrw,p_qw\n");
    for (x, p_crw) in crw.support() {
        out.push_str(&format!(
            "{x},{},{},{}\n",
            fmt_float(p_crw),
            fmt_float(qrw.mass(x)),
            fmt_float(qw.mass(x)),
        ));
    }
    Ok(out)
}

/// `n,cov_direct,cov_integral,reference` for n = 1..100 with the maximally
/// mixed initial coin; the reference column is the limit 1 - sqrt(2)/2.
fn covariance_figure() -> Result<String, CliError> {
    let n_max = 100usize;
    let series = covariance_series(
        &CoinState2::maximally_mixed(),
        n_max,
        MethodSelection::Both,
    )?;
    let reference = fmt_float(1.0 - SQRT_2 / 2.0);
    let mut out = String::from("n,cov_direct,cov_integral,reference\n");
    for n in 1..=n_max {
        out.push_str(&format!(
            "{n},{},{},{reference}\n",
            fmt_float(series.value(n, Method::Direct).unwrap()),
            fmt_float(series.value(n, Method::Integral).unwrap()),
        ));
    }
    Ok(out)
}

/// `n,abs_diff,fit` for n = 1..400: the distance of the covariance from
/// its limit next to the 2/(5 sqrt n) fit.
fn loglog_figure() -> Result<String, CliError> {
    let n_max = 400usize;
    let series = covariance_series(
        &CoinState2::maximally_mixed(),
        n_max,
        MethodSelection::Integral,
    )?;
    let limit = 1.0 - SQRT_2 / 2.0;
    let mut out = String::from("n,abs_diff,fit\n");
    for n in 1..=n_max {
        let value = series.value(n, Method::Integral).unwrap();
        let fit = 2.0 / (5.0 * (n as f64).sqrt());
        out.push_str(&format!(
            "{n},{},{}\n",
            fmt_float((value - limit).abs()),
            fmt_float(fit),
        ));
    }
    Ok(out)
}
