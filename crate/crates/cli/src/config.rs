//! Line-oriented `key=value` parameter files.
//!
//! ```text
//! # unit point with a magnetic quantum number
//! M=1
//! omega=1
//! m=1
//! ```
//!
//! Recognised keys are `M`, `omega`, `k`, `m`, `alpha`, `a`, `delta1` and
//! `delta2`. Missing keys default to 1 except `m` and `k`, which default to 0.
//! Blank lines and lines starting with `#` are ignored; unknown or repeated
//! keys are errors.

use std::fs;
use std::path::Path;

use dkp_core::{ModelParams, Param};

use crate::error::{CliError, Result};

pub fn parse_config(text: &str) -> Result<ModelParams> {
    let mut params = ModelParams::default();
    let mut seen: Vec<Param> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let config_err = |message: String| CliError::Config { line: idx + 1, message };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| config_err(format!("expected key=value, got `{line}`")))?;
        let param = assign(&mut params, key.trim(), value.trim()).map_err(config_err)?;
        if seen.contains(&param) {
            return Err(config_err(format!("duplicate key `{}`", param.name())));
        }
        seen.push(param);
    }
    params.validate().map_err(CliError::from)
}

pub fn load_config(path: &Path) -> Result<ModelParams> {
    let text = fs::read_to_string(path)?;
    parse_config(&text)
}

/// Sets one parameter from its textual form. `m` must be an integer literal.
pub(crate) fn assign(params: &mut ModelParams, key: &str, value: &str) -> Result<Param, String> {
    let param = Param::from_name(key).ok_or_else(|| format!("unknown key `{key}`"))?;
    if param == Param::M {
        params.m = value
            .parse()
            .map_err(|_| format!("m must be a signed integer, got `{value}`"))?;
    } else {
        let v: f64 = value
            .parse()
            .map_err(|_| format!("{key} must be a decimal number, got `{value}`"))?;
        *params = params.with(param, v);
    }
    Ok(param)
}

/// All eight parameters as space-separated `key=value` pairs, in a form
/// [`parse_assignments`] reads back exactly.
pub fn render_params(params: &ModelParams) -> String {
    Param::ALL
        .iter()
        .map(|&p| match p {
            Param::M => format!("m={}", params.m),
            _ => format!("{}={:?}", p.name(), params.get(p)),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_assignments(text: &str) -> Result<ModelParams, String> {
    let mut params = ModelParams::default();
    for pair in text.split_whitespace() {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got `{pair}`"))?;
        assign(&mut params, key, value)?;
    }
    Ok(params)
}
