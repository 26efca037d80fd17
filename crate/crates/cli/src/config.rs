//! Run configuration, ξ presets and the error type shared by all commands.

use diophlab::exactreal::{parse_rational, AlgebraicReal, AlgebraicRealJson};
use diophlab::minpoints::canonicalize_xi;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const RUN_CONFIG: &str = "run_config.json";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Verification(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Verification(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub fn io(context: impl Into<String>) -> impl FnOnce(std::io::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Io { context, source }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn invalid(msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(msg.to_string())
}

/// ξ as given on the command line, together with the value actually scanned.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiConfig {
    pub input: String,
    /// `ξ − ⌊ξ⌋`, the number passed to the engine.
    pub canonical: AlgebraicRealJson,
    pub shift: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<XiConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0_max: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff_bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shards: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resumed_at: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub outputs: Vec<String>,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        RunConfig {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn write(&self, dir: &Path) -> CliResult<()> {
        write_json(&dir.join(RUN_CONFIG), self)
    }

    pub fn read(dir: &Path) -> CliResult<Self> {
        let path = dir.join(RUN_CONFIG);
        let text = std::fs::read_to_string(&path).map_err(CliError::io(format!("reading {}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
    }
}

/// Named inputs: `sqrt2`, `2^(1/4)`, and their fractional parts.
pub fn preset(name: &str) -> Option<AlgebraicReal> {
    let (poly, lo, hi): (&[i64], (i64, i64), (i64, i64)) = match name {
        "sqrt2" => (&[-2, 0, 1], (1, 1), (2, 1)),
        "sqrt2-1" => (&[-1, 2, 1], (0, 1), (1, 1)),
        "2^(1/4)" => (&[-2, 0, 0, 0, 1], (1, 1), (2, 1)),
        "2^(1/4)-1" => (&[-1, 4, 6, 4, 1], (0, 1), (1, 2)),
        _ => return None,
    };
    Some(AlgebraicReal::from_i64s(poly, lo, hi).expect("preset isolates one root"))
}

/// Parses a preset name or `{"poly": [...], "lo": "...", "hi": "..."}`.
pub fn parse_xi(text: &str) -> CliResult<AlgebraicReal> {
    if let Some(x) = preset(text.trim()) {
        return Ok(x);
    }
    if !text.trim_start().starts_with('{') {
        return Err(invalid(format!(
            "unknown xi {text:?}: use sqrt2, sqrt2-1, 2^(1/4), 2^(1/4)-1 or a JSON object with poly, lo, hi"
        )));
    }
    let j: AlgebraicRealJson = serde_json::from_str(text).map_err(|e| invalid(format!("xi JSON: {e}")))?;
    AlgebraicReal::from_json(&j).map_err(|e| invalid(format!("xi: {e}")))
}

/// Parses ξ and moves it into (0, 1), warning on stderr when it shifts.
pub fn resolve_xi(text: &str) -> CliResult<(AlgebraicReal, XiConfig)> {
    let xi = parse_xi(text)?;
    let (canonical, shift) = canonicalize_xi(&xi).map_err(|e| invalid(format!("xi: {e}")))?;
    if !shift.is_zero() {
        eprintln!("warning: xi = {text} is not in (0, 1); scanning xi - {shift} instead");
    }
    let cfg = XiConfig {
        input: text.to_string(),
        canonical: canonical.to_json(),
        shift: shift.to_string(),
    };
    Ok((canonical, cfg))
}

/// ξ for a command reading `input`: explicit `--xi`, else the run config
/// stored beside the input.
pub fn xi_for_input(explicit: Option<&str>, input: &Path) -> CliResult<(AlgebraicReal, XiConfig)> {
    if let Some(text) = explicit {
        return resolve_xi(text);
    }
    let dir = parent_dir(input);
    let cfg = RunConfig::read(&dir)
        .map_err(|e| invalid(format!("no --xi given and no usable {RUN_CONFIG} beside the input ({e})")))?;
    let xc = cfg
        .xi
        .ok_or_else(|| invalid(format!("{} records no xi", dir.join(RUN_CONFIG).display())))?;
    let xi = AlgebraicReal::from_json(&xc.canonical).map_err(|e| invalid(format!("stored xi: {e}")))?;
    Ok((xi, xc))
}

pub fn parent_dir(p: &Path) -> PathBuf {
    match p.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

/// Accepts integers written plainly or as `1e8`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    let r = parse_rational(s).map_err(|e| e.to_string())?;
    if !r.is_integer() || r.is_negative() {
        return Err(format!("{s:?} is not a non-negative integer"));
    }
    r.to_integer().to_u64().ok_or_else(|| format!("{s:?} is too large"))
}

pub fn parse_int(s: &str) -> Result<BigInt, String> {
    let r = parse_rational(s).map_err(|e| e.to_string())?;
    if !r.is_integer() {
        return Err(format!("{s:?} is not an integer"));
    }
    Ok(r.to_integer())
}

pub fn create_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(CliError::io(format!("creating {}", dir.display())))
}

pub fn create_file(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(CliError::io(format!("creating {}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut f = create_file(path)?;
    let ctx = || format!("writing {}", path.display());
    serde_json::to_writer_pretty(&mut f, value).map_err(|e| CliError::Io {
        context: ctx(),
        source: e.into(),
    })?;
    f.write_all(b"\n").and_then(|_| f.flush()).map_err(CliError::io(ctx()))
}

pub fn display(p: &Path) -> String {
    p.display().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_canonicalize() {
        let (xi, cfg) = resolve_xi("sqrt2").unwrap();
        assert_eq!(cfg.shift, "1");
        assert_eq!(xi.to_decimal(6), preset("sqrt2-1").unwrap().to_decimal(6));
        let (_, cfg) = resolve_xi("2^(1/4)-1").unwrap();
        assert_eq!(cfg.shift, "0");
    }

    #[test]
    fn xi_json_and_errors() {
        let xi = parse_xi(r#"{"poly": ["-2", "0", "0", "1"], "lo": "1", "hi": "2"}"#).unwrap();
        assert_eq!(xi.degree(), 3);
        assert!(matches!(parse_xi("pi"), Err(CliError::Validation(_))));
        assert!(matches!(parse_xi(r#"{"poly": ["-2", "0", "1"], "lo": "-2", "hi": "2"}"#), Err(CliError::Validation(_))));
        assert!(matches!(resolve_xi(r#"{"poly": ["-1", "2"], "lo": "0", "hi": "1"}"#), Err(CliError::Validation(_))));
    }

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e8"), Ok(100_000_000));
        assert_eq!(parse_count("250"), Ok(250));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }

    #[test]
    fn run_config_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = RunConfig::new("minpoints");
        cfg.n = Some(3);
        cfg.outputs = vec!["records.jsonl".into()];
        cfg.write(dir.path()).unwrap();
        assert_eq!(RunConfig::read(dir.path()).unwrap(), cfg);
    }
}
