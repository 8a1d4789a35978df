//! Command implementations: parameter resolution, engine calls and output.

use std::path::PathBuf;

use num_complex::Complex64;
use serde_json::json;

use coinwalk_core::crw::{crw_distribution, CrwParams};
use coinwalk_core::oracle::{compare_1d, compare_2d, sample_walk, ComparisonReport, WalkModel};
use coinwalk_core::qrw::{
    feasibility_region_check, flip_coin2, grover_probabilities, qrw1d_distribution,
    qrw2d_distribution, qrw2d_distribution_from_probs, qrw2d_moments_from_zeta,
    raw_direction_weights, GroverProbabilities,
};
use coinwalk_core::qw::{covariance_series, qw_distribution, MethodSelection};
use coinwalk_core::types::hadamard2;
use coinwalk_core::{
    effective_coherence, CoinState2, CoinState4, EffectiveCoherence, ValidationReport,
};

use crate::cli::{
    Cli, Coin2Opts, Coin4Opts, CoinAnalyticsArgs, Command, CompareArgs, CovarianceArgs, CrwArgs,
    FeasibilityArgs, FigureArgs, Format, MethodArg, ModelArg, OutputOpts, Qrw1dArgs, Qrw2dArgs,
    QwArgs, SampleArgs,
};
use crate::coin_io::{dump_coin, load_coin, CoinInput};
use crate::error::CliError;
use crate::figures::figure_csv;
use crate::output::{
    csv_1d, csv_2d, csv_covariance, fmt_float, json_1d, json_2d, json_covariance, read_distribution,
    render_json, unify_1d, unify_2d, write_output, RawDistribution,
};

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Crw(args) => run_crw(args),
        Command::Qrw1d(args) => run_qrw1d(args),
        Command::Qrw2d(args) => run_qrw2d(args),
        Command::Qw(args) => run_qw(args),
        Command::Covariance(args) => run_covariance(args),
        Command::CoinAnalytics(args) => run_coin_analytics(args),
        Command::Sample(args) => run_sample(args),
        Command::Compare(args) => run_compare(args),
        Command::Feasibility(args) => run_feasibility(args),
        Command::Figure(args) => run_figure(args),
    }
}

fn warn_override(field: &str, file_value: String, inline_value: String) {
    eprintln!(
        "warning: --{field} {inline_value} overrides the value {file_value} from --coin"
    );
}

/// Resolves a dim-2 coin state from an optional JSON file plus inline
/// flags. Inline flags win; a bare --p1 implies pm1 = 1 - p1.
fn resolve_coin2(
    file: Option<&PathBuf>,
    p1: Option<f64>,
    pm1: Option<f64>,
    eta: Option<Complex64>,
) -> Result<CoinState2, CliError> {
    let file_state = match file {
        Some(path) => match load_coin(path)? {
            CoinInput::Two(state) => Some(state),
            CoinInput::Four(_) => {
                return Err(CliError::Validation(format!(
                    "{} holds a dim-4 coin state; this command needs dim 2",
                    path.display()
                )))
            }
        },
        None => None,
    };

    let mut resolved_p1 = file_state.map(|s| s.p1()).unwrap_or(0.5);
    let mut resolved_pm1 = file_state.map(|s| s.pm1()).unwrap_or(0.5);
    let mut resolved_eta = file_state
        .map(|s| s.eta())
        .unwrap_or(Complex64::new(0.0, 0.0));

    if let Some(value) = p1 {
        if let Some(state) = file_state {
            if state.p1() != value {
                warn_override("p1", state.p1().to_string(), value.to_string());
            }
        }
        resolved_p1 = value;
        if pm1.is_none() {
            resolved_pm1 = 1.0 - value;
        }
    }
    if let Some(value) = pm1 {
        if let Some(state) = file_state {
            if state.pm1() != value {
                warn_override("pm1", state.pm1().to_string(), value.to_string());
            }
        }
        resolved_pm1 = value;
    }
    if let Some(value) = eta {
        if let Some(state) = file_state {
            if state.eta() != value {
                warn_override("eta", state.eta().to_string(), value.to_string());
            }
        }
        resolved_eta = value;
    }

    Ok(CoinState2::new(resolved_p1, resolved_pm1, resolved_eta)?)
}

fn resolve_coin2_opts(opts: &Coin2Opts) -> Result<CoinState2, CliError> {
    let state = resolve_coin2(opts.coin.as_ref(), opts.p1, opts.pm1, opts.eta)?;
    if let Some(path) = &opts.dump_coin {
        dump_coin(&CoinInput::Two(state), path)?;
    }
    Ok(state)
}

fn zeta_from_triple(values: &[f64]) -> EffectiveCoherence {
    EffectiveCoherence {
        zeta1: values[0],
        zeta2: values[1],
        zeta3: values[2],
    }
}

/// Resolves 2D step probabilities (and, when available, the full state)
/// from a coin file or an effective-coherence triple.
fn resolve_coin4_opts(
    opts: &Coin4Opts,
) -> Result<(GroverProbabilities, Option<CoinState4>), CliError> {
    let file_state = match &opts.coin {
        Some(path) => match load_coin(path)? {
            CoinInput::Four(state) => Some(state),
            CoinInput::Two(_) => {
                return Err(CliError::Validation(format!(
                    "{} holds a dim-2 coin state; this command needs dim 4",
                    path.display()
                )))
            }
        },
        None => None,
    };

    let probs = match (&opts.zeta, file_state) {
        (Some(triple), maybe_state) => {
            let zeta = zeta_from_triple(triple);
            if let Some(state) = maybe_state {
                let from_state = effective_coherence(&state);
                if (from_state.zeta1 - zeta.zeta1).abs() > 0.0
                    || (from_state.zeta2 - zeta.zeta2).abs() > 0.0
                    || (from_state.zeta3 - zeta.zeta3).abs() > 0.0
                {
                    eprintln!(
                        "warning: --zeta overrides the effective coherence of the state in --coin"
                    );
                }
            }
            GroverProbabilities::from_zeta(&zeta)?
        }
        (None, Some(state)) => grover_probabilities(&state)?,
        (None, None) => {
            return Err(CliError::Validation(
                "supply a dim-4 coin state via --coin or an effective coherence via --zeta".into(),
            ))
        }
    };

    if let Some(path) = &opts.dump_coin {
        match file_state {
            Some(state) => dump_coin(&CoinInput::Four(state), path)?,
            None => {
                return Err(CliError::Validation(
                    "--dump-coin needs a full coin state (--coin), not just --zeta".into(),
                ))
            }
        }
    }
    Ok((probs, file_state))
}

fn emit_1d(d: &coinwalk_core::Distribution1D, out: &OutputOpts) -> Result<(), CliError> {
    let content = match out.format {
        Format::Csv => csv_1d(d),
        Format::Json => render_json(&json_1d(d)),
    };
    write_output(out.output.as_deref(), &content)
}

fn emit_2d(d: &coinwalk_core::Distribution2D, out: &OutputOpts) -> Result<(), CliError> {
    let content = match out.format {
        Format::Csv => csv_2d(d),
        Format::Json => render_json(&json_2d(d)),
    };
    write_output(out.output.as_deref(), &content)
}

fn run_crw(args: CrwArgs) -> Result<(), CliError> {
    let pm1 = args.pm1.unwrap_or(1.0 - args.p1);
    let params = CrwParams::new(args.p1, pm1, args.n)?;
    emit_1d(&crw_distribution(&params), &args.out)
}

fn run_qrw1d(args: Qrw1dArgs) -> Result<(), CliError> {
    let state = resolve_coin2_opts(&args.coin)?;
    let d = qrw1d_distribution(&state, &hadamard2(), args.n)?;
    emit_1d(&d, &args.out)
}

fn run_qrw2d(args: Qrw2dArgs) -> Result<(), CliError> {
    let (probs, state) = resolve_coin4_opts(&args.coin)?;
    let d = match (args.coin.zeta.is_some(), state) {
        (false, Some(state)) => qrw2d_distribution(&state, args.n)?,
        _ => qrw2d_distribution_from_probs(&probs, args.n),
    };
    emit_2d(&d, &args.out)
}

fn run_qw(args: QwArgs) -> Result<(), CliError> {
    let state = resolve_coin2_opts(&args.coin)?;
    emit_1d(&qw_distribution(&state, args.n), &args.out)
}

fn run_covariance(args: CovarianceArgs) -> Result<(), CliError> {
    let initial = CoinState2::new(args.p1, 1.0 - args.p1, Complex64::new(0.0, 0.0))?;
    let selection = match args.method {
        MethodArg::Direct => MethodSelection::Direct,
        MethodArg::Integral => MethodSelection::Integral,
        MethodArg::Both => MethodSelection::Both,
    };
    let series = covariance_series(&initial, args.n_max, selection)?;
    let content = match args.out.format {
        Format::Csv => csv_covariance(&series, args.n_max),
        Format::Json => render_json(&json_covariance(&series, args.n_max)),
    };
    write_output(args.out.output.as_deref(), &content)
}

fn validation_json(report: &ValidationReport) -> serde_json::Value {
    serde_json::Value::Array(
        report
            .checks
            .iter()
            .map(|c| {
                json!({
                    "invariant": c.invariant,
                    "measured": c.measured,
                    "bound": c.bound,
                    "passed": c.passed,
                })
            })
            .collect(),
    )
}

fn run_coin_analytics(args: CoinAnalyticsArgs) -> Result<(), CliError> {
    let coin = match &args.coin {
        Some(path) => match load_coin(path)? {
            CoinInput::Four(state) => {
                if args.p1.is_some() || args.pm1.is_some() || args.eta.is_some() {
                    return Err(CliError::Validation(
                        "inline --p1/--pm1/--eta apply to dim-2 states only".into(),
                    ));
                }
                CoinInput::Four(state)
            }
            CoinInput::Two(_) => {
                CoinInput::Two(resolve_coin2(args.coin.as_ref(), args.p1, args.pm1, args.eta)?)
            }
        },
        None => CoinInput::Two(resolve_coin2(None, args.p1, args.pm1, args.eta)?),
    };
    if let Some(path) = &args.dump_coin {
        dump_coin(&coin, path)?;
    }

    let report = match &coin {
        CoinInput::Two(state) => {
            let flipped = flip_coin2(state, &hadamard2())?;
            let bias = 2.0 * state.eta().re;
            json!({
                "kind": "coin_analytics",
                "dim": 2,
                "state": serde_json::to_value(coin.to_json()).unwrap(),
                "validation": validation_json(&state.report()),
                "flipped_hadamard": {
                    "rho11": flipped.rho11(),
                    "rho_m1m1": flipped.rho_m1m1(),
                    "rho_1m1": [flipped.rho_1m1().re, flipped.rho_1m1().im],
                },
                "drift_per_step": bias,
                "variance_per_step": 1.0 - bias * bias,
            })
        }
        CoinInput::Four(state) => {
            let zeta = effective_coherence(state);
            let probs = grover_probabilities(state)?;
            let moments = qrw2d_moments_from_zeta(&zeta, 1);
            json!({
                "kind": "coin_analytics",
                "dim": 4,
                "state": serde_json::to_value(coin.to_json()).unwrap(),
                "validation": validation_json(&state.report()),
                "effective_coherence": [zeta.zeta1, zeta.zeta2, zeta.zeta3],
                "grover_probabilities": probs.as_array(),
                "feasible": feasibility_region_check(&zeta),
                "drift_per_step": [moments.mean_x, moments.mean_y],
                "variance_per_step": {
                    "x": moments.var_x,
                    "y": moments.var_y,
                    "total": moments.var_total,
                },
            })
        }
    };
    write_output(args.output.as_deref(), &render_json(&report))
}

fn run_sample(args: SampleArgs) -> Result<(), CliError> {
    let (model, label) = match args.model {
        ModelArg::Crw => {
            if args.coin.is_some() {
                return Err(CliError::Validation(
                    "the crw model takes --p1/--pm1, not a coin state".into(),
                ));
            }
            let p1 = args.p1.unwrap_or(0.5);
            let pm1 = args.pm1.unwrap_or(1.0 - p1);
            CrwParams::new(p1, pm1, args.n)?;
            (WalkModel::Crw { p_right: p1 }, "crw")
        }
        ModelArg::Qrw1d => {
            let state = resolve_coin2(args.coin.as_ref(), args.p1, args.pm1, args.eta)?;
            if let Some(path) = &args.dump_coin {
                dump_coin(&CoinInput::Two(state), path)?;
            }
            (
                WalkModel::Qrw1d {
                    state,
                    coin: hadamard2(),
                },
                "qrw1d",
            )
        }
        ModelArg::Qrw2d => {
            let opts = Coin4Opts {
                coin: args.coin.clone(),
                zeta: args.zeta.clone(),
                dump_coin: args.dump_coin.clone(),
            };
            let (probs, state) = resolve_coin4_opts(&opts)?;
            let model = match (args.zeta.is_some(), state) {
                (false, Some(state)) => WalkModel::Qrw2d { state },
                _ => WalkModel::Qrw2dSteps { probs },
            };
            (model, "qrw2d")
        }
    };

    let report = sample_walk(&model, args.n, args.samples, args.seed)?;
    eprintln!(
        "sampled {} walks of {} steps in {} chunks (seed {})",
        report.n_samples(),
        report.n(),
        report.chunk_count(),
        report.seed()
    );

    let empirical_json = |report: &coinwalk_core::oracle::SampleReport| {
        report
            .empirical_1d()
            .map(|d| json_1d(&d))
            .or_else(|| report.empirical_2d().map(|d| json_2d(&d)))
            .expect("a report is 1d or 2d")
    };

    let content = match args.out.format {
        Format::Csv => match (report.empirical_1d(), report.empirical_2d()) {
            (Some(d), _) => csv_1d(&d),
            (_, Some(d)) => csv_2d(&d),
            _ => unreachable!(),
        },
        Format::Json => render_json(&json!({
            "kind": "sample_report",
            "model": label,
            "n": report.n(),
            "n_samples": report.n_samples(),
            "seed": report.seed(),
            "chunk_count": report.chunk_count(),
            "empirical": empirical_json(&report),
        })),
    };
    write_output(args.out.output.as_deref(), &content)
}

fn comparison_json(cmp: &ComparisonReport) -> serde_json::Value {
    json!({
        "kind": "comparison",
        "total_variation": cmp.total_variation,
        "chi_square_statistic": cmp.chi_square_statistic,
        "chi_square_p": cmp.chi_square_p,
        "chi_square_bins": cmp.chi_square_bins,
    })
}

fn run_compare(args: CompareArgs) -> Result<(), CliError> {
    let a = read_distribution(&args.a)?;
    let b = read_distribution(&args.b)?;
    let cmp = match (&a, &b) {
        (
            RawDistribution::OneD {
                sites: sa,
                n_hint: ha,
            },
            RawDistribution::OneD {
                sites: sb,
                n_hint: hb,
            },
        ) => {
            let (da, db) = unify_1d((sa, *ha), (sb, *hb))?;
            compare_1d(&da, &db, args.n_samples)?
        }
        (
            RawDistribution::TwoD {
                sites: sa,
                n_hint: ha,
            },
            RawDistribution::TwoD {
                sites: sb,
                n_hint: hb,
            },
        ) => {
            let (da, db) = unify_2d((sa, *ha), (sb, *hb))?;
            compare_2d(&da, &db, args.n_samples)?
        }
        _ => {
            return Err(CliError::Validation(
                "cannot compare a 1D distribution with a 2D one".into(),
            ))
        }
    };
    write_output(args.output.as_deref(), &render_json(&comparison_json(&cmp)))
}

fn run_feasibility(args: FeasibilityArgs) -> Result<(), CliError> {
    let zeta = zeta_from_triple(&args.zeta);
    let feasible = feasibility_region_check(&zeta);
    let [rr, ll, uu, dd] = raw_direction_weights(&zeta);
    let verdict = if feasible { "feasible" } else { "infeasible" };
    let mut out = format!("{verdict}\n");
    out.push_str(&format!("rho_RR = {}\n", fmt_float(rr)));
    out.push_str(&format!("rho_LL = {}\n", fmt_float(ll)));
    out.push_str(&format!("rho_UU = {}\n", fmt_float(uu)));
    out.push_str(&format!("rho_DD = {}\n", fmt_float(dd)));
    write_output(None, &out)
}

fn run_figure(args: FigureArgs) -> Result<(), CliError> {
    let content = figure_csv(args.id)?;
    write_output(args.output.as_deref(), &content)
}
