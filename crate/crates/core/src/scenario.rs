//! Flat `key = value` scenario files.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::extended::Regime;
use crate::params::{validate_params, ModelParams};
use crate::population::ModelKind;

const KEYS: [&str; 12] = [
    "model", "alpha", "delta", "gamma", "beta", "beta_w", "beta_m", "a_w", "a_m", "regime",
    "subsidy", "seed",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub model: ModelKind,
    pub params: ModelParams,
    pub regime: Regime,
    pub subsidy: f64,
    pub seed: Option<u64>,
}

impl ScenarioConfig {
    pub fn to_params(&self) -> ModelParams {
        self.params
    }
}

fn number(line: usize, key: &str, value: &str) -> Result<f64> {
    match value.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::ParseError {
            line,
            message: format!("`{key}` expects a decimal number, got `{value}`"),
        }),
    }
}

pub fn parse_scenario(text: &str) -> Result<ScenarioConfig> {
    // key -> (line, raw value)
    let mut entries: HashMap<&'static str, (usize, &str)> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::ParseError {
                line,
                message: format!("expected `key = value`, got `{content}`"),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        let Some(&known) = KEYS.iter().find(|k| **k == key) else {
            return Err(Error::UnknownKey {
                line,
                key: key.to_string(),
            });
        };
        if value.is_empty() {
            return Err(Error::ParseError {
                line,
                message: format!("`{key}` has no value"),
            });
        }
        if let Some((first, _)) = entries.insert(known, (line, value)) {
            return Err(Error::ParseError {
                line,
                message: format!("`{key}` already set on line {first}"),
            });
        }
    }

    let model = match entries.get("model") {
        Some(&(line, v)) => v.parse::<ModelKind>().map_err(|_| Error::ParseError {
            line,
            message: format!("unknown model `{v}`"),
        })?,
        None => return Err(Error::MissingKey("model")),
    };
    let regime = match entries.get("regime") {
        Some(&(line, v)) => v.parse::<Regime>().map_err(|_| Error::ParseError {
            line,
            message: format!("unknown regime `{v}`"),
        })?,
        None => Regime::default(),
    };
    let seed = match entries.get("seed") {
        Some(&(line, v)) => Some(v.parse::<u64>().map_err(|_| Error::ParseError {
            line,
            message: format!("`seed` expects an unsigned integer, got `{v}`"),
        })?),
        None => None,
    };

    let mut values: HashMap<&'static str, f64> = HashMap::new();
    for key in [
        "alpha", "delta", "gamma", "beta", "beta_w", "beta_m", "a_w", "a_m", "subsidy",
    ] {
        if let Some(&(line, v)) = entries.get(key) {
            values.insert(key, number(line, key, v)?);
        }
    }
    let required: &[&'static str] = match model {
        ModelKind::Game => &["alpha", "delta", "gamma", "a_w", "a_m"],
        ModelKind::Benchmark | ModelKind::Extended => {
            &["alpha", "delta", "gamma", "beta", "a_w", "a_m"]
        }
    };
    for key in required {
        if !values.contains_key(key) {
            return Err(Error::MissingKey(key));
        }
    }

    // The game never reads beta; a unit cost keeps the parameter set valid.
    let beta = values.get("beta").copied().unwrap_or(1.0);
    let mut params = ModelParams::new(
        values["alpha"],
        values["delta"],
        values["gamma"],
        beta,
        values["a_w"],
        values["a_m"],
    );
    match (values.get("beta_w"), values.get("beta_m")) {
        (Some(&w), Some(&m)) => params = params.with_cost_split(w, m),
        (Some(_), None) => return Err(Error::MissingKey("beta_m")),
        (None, Some(_)) => return Err(Error::MissingKey("beta_w")),
        (None, None) => {}
    }
    let params = validate_params(params)?;

    let subsidy = values.get("subsidy").copied().unwrap_or(0.0);
    if subsidy < 0.0 {
        return Err(Error::ParseError {
            line: entries["subsidy"].0,
            message: format!("`subsidy` must be >= 0, got {subsidy}"),
        });
    }
    if subsidy > 0.0 && model != ModelKind::Game {
        return Err(Error::SubsidyUnsupported(model.name()));
    }

    Ok(ScenarioConfig {
        model,
        params,
        regime,
        subsidy,
        seed,
    })
}
