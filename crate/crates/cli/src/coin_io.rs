//! JSON schema for coin states:
//! `{"dim":2,"p":[p1,pm1],"eta":[re,im]}` and
//! `{"dim":4,"q":[q1..q4],"eta":{"12":[re,im],...,"34":[re,im]}}`.
//! Unlisted eta entries default to zero.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use coinwalk_core::types::ETA_PAIRS;
use coinwalk_core::{CoinState2, CoinState4};

use crate::error::CliError;
use crate::output::write_output;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoinJson {
    pub dim: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<EtaJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EtaJson {
    Pair([f64; 2]),
    Map(BTreeMap<String, [f64; 2]>),
}

/// A validated coin state of either dimension.
#[derive(Debug, Clone)]
pub enum CoinInput {
    Two(CoinState2),
    Four(CoinState4),
}

fn eta_key(i: usize, j: usize) -> String {
    format!("{}{}", i + 1, j + 1)
}

impl CoinInput {
    pub fn to_json(&self) -> CoinJson {
        match self {
            CoinInput::Two(state) => CoinJson {
                dim: 2,
                p: Some([state.p1(), state.pm1()]),
                q: None,
                eta: Some(EtaJson::Pair([state.eta().re, state.eta().im])),
            },
            CoinInput::Four(state) => {
                let mut map = BTreeMap::new();
                for &(i, j) in &ETA_PAIRS {
                    let eta = state.eta(i, j);
                    map.insert(eta_key(i, j), [eta.re, eta.im]);
                }
                CoinJson {
                    dim: 4,
                    p: None,
                    q: Some(state.q()),
                    eta: Some(EtaJson::Map(map)),
                }
            }
        }
    }
}

pub fn parse_coin(json: &CoinJson) -> Result<CoinInput, CliError> {
    match json.dim {
        2 => {
            let p = json.p.ok_or_else(|| {
                CliError::Validation("a dim-2 coin needs \"p\": [p1, pm1]".into())
            })?;
            let eta = match &json.eta {
                None => Complex64::new(0.0, 0.0),
                Some(EtaJson::Pair([re, im])) => Complex64::new(*re, *im),
                Some(EtaJson::Map(_)) => {
                    return Err(CliError::Validation(
                        "a dim-2 coin takes \"eta\": [re, im], not a map".into(),
                    ))
                }
            };
            Ok(CoinInput::Two(CoinState2::new(p[0], p[1], eta)?))
        }
        4 => {
            let q = json.q.ok_or_else(|| {
                CliError::Validation("a dim-4 coin needs \"q\": [q1, q2, q3, q4]".into())
            })?;
            let mut eta = [Complex64::new(0.0, 0.0); 6];
            match &json.eta {
                None => {}
                Some(EtaJson::Map(map)) => {
                    for (key, [re, im]) in map {
                        let idx = ETA_PAIRS
                            .iter()
                            .position(|&(i, j)| eta_key(i, j) == *key)
                            .ok_or_else(|| {
                                CliError::Validation(format!(
                                    "unknown eta entry \"{key}\" (expected 12, 13, 14, 23, 24 or 34)"
                                ))
                            })?;
                        eta[idx] = Complex64::new(*re, *im);
                    }
                }
                Some(EtaJson::Pair(_)) => {
                    return Err(CliError::Validation(
                        "a dim-4 coin takes \"eta\" as a map of upper-triangle entries".into(),
                    ))
                }
            }
            Ok(CoinInput::Four(CoinState4::new(q, eta)?))
        }
        other => Err(CliError::Validation(format!(
            "unsupported coin dimension {other} (expected 2 or 4)"
        ))),
    }
}

pub fn load_coin(path: &Path) -> Result<CoinInput, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    let json: CoinJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("cannot parse {}: {e}", path.display())))?;
    parse_coin(&json)
}

pub fn dump_coin(coin: &CoinInput, path: &Path) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(&coin.to_json())
        .map_err(|e| CliError::Validation(format!("cannot serialize coin state: {e}")))?;
    text.push('\n');
    write_output(Some(path), &text)
}
