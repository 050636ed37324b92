//! `key = value` configuration files mirroring the command-line flags.
//!
//! ```text
//! # comments and blank lines are ignored
//! model = svr
//! p = 48
//! exog = true
//! ```
//!
//! Keys are flag names without the leading `--`. Values given on the
//! command line take precedence over the file.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// Environment variable naming the default configuration file.
pub const CONFIG_ENV: &str = "ENERGY_FORECAST_CONFIG";

pub fn parse_config(text: &str, path: &Path) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::Config(format!("{}:{}: expected `key = value`", path.display(), i + 1)));
        };
        let key = k.trim().trim_start_matches("--").to_string();
        if key.is_empty() {
            return Err(Error::Config(format!("{}:{}: empty key", path.display(), i + 1)));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

/// Pull `--config <path>` (or `--config=<path>`) out of `args`, falling back
/// to the environment variable.
pub(crate) fn take_config_path(args: &mut Vec<OsString>) -> Result<Option<PathBuf>> {
    let mut found = None;
    let mut i = 1;
    while i < args.len() {
        let a = args[i].to_string_lossy().into_owned();
        if a == "--" {
            break;
        }
        if a == "--config" {
            if i + 1 >= args.len() {
                return Err(Error::Config("--config needs a path".into()));
            }
            found = Some(PathBuf::from(args.remove(i + 1)));
            args.remove(i);
            continue;
        }
        if let Some(p) = a.strip_prefix("--config=") {
            found = Some(PathBuf::from(p));
            args.remove(i);
            continue;
        }
        i += 1;
    }
    Ok(found.or_else(|| std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)))
}

/// Splice configuration entries into `args` right after the subcommand,
/// skipping any key the user passed explicitly.
pub(crate) fn splice(args: &mut Vec<OsString>, entries: &[(String, String)], is_switch: impl Fn(&str) -> bool) -> Result<()> {
    let Some(sub) = (1..args.len()).find(|&i| !args[i].to_string_lossy().starts_with('-')) else {
        return Ok(());
    };
    let given: Vec<String> = args[sub + 1..]
        .iter()
        .filter_map(|a| a.to_str())
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect();
    let mut extra: Vec<OsString> = Vec::new();
    for (k, v) in entries {
        if given.iter().any(|g| g == k) {
            continue;
        }
        if is_switch(k) {
            match v.as_str() {
                "true" | "yes" | "1" => extra.push(format!("--{k}").into()),
                "false" | "no" | "0" => {}
                other => return Err(Error::Config(format!("`{k}` expects true or false, got `{other}`"))),
            }
        } else {
            extra.push(format!("--{k}={v}").into());
        }
    }
    let tail = args.split_off(sub + 1);
    args.extend(extra);
    args.extend(tail);
    Ok(())
}
