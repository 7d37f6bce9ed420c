//! Run configuration: command-line flags over `BINSUM_*` variables over a
//! `key = value` file over defaults.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use binsum_core::verify::SUITES;

use crate::Format;

/// Keys accepted in the config file.
pub const KEYS: &[&str] = &[
    "n_max",
    "prime_max",
    "suites",
    "format",
    "output",
    "workers",
    "strict_conjectures",
    "timings",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub n_max: u64,
    pub prime_max: u64,
    pub suites: Vec<String>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub workers: usize,
    pub strict_conjectures: bool,
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_max: 300,
            prime_max: 199,
            suites: vec!["theorems".into()],
            format: Format::Human,
            output: None,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            strict_conjectures: false,
            timings: false,
        }
    }
}

/// Values given on the command line or through the environment; `None`
/// falls through to the file and then the defaults.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub n_max: Option<u64>,
    pub prime_max: Option<u64>,
    pub suites: Vec<String>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub workers: Option<usize>,
    pub strict_conjectures: Option<bool>,
    pub timings: Option<bool>,
}

pub fn parse_file(text: &str, origin: &Path) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected `key = value`", origin.display(), i + 1))?;
        let key = key.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(format!("{}:{}: unknown key `{key}`", origin.display(), i + 1));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

fn field<T: FromStr>(file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, String> {
    file.get(key)
        .map(|v| v.parse().map_err(|_| format!("config key `{key}`: invalid value `{v}`")))
        .transpose()
}

fn parse_bool(v: &str) -> Result<bool, String> {
    match v.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(format!("invalid boolean `{v}`")),
    }
}

pub fn resolve(overrides: Overrides, file: Option<&Path>) -> Result<RunConfig, String> {
    let values = match file {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_file(&text, path)?
        }
        None => BTreeMap::new(),
    };
    let defaults = RunConfig::default();
    let file_suites = values
        .get("suites")
        .map(|s| s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect());
    let file_bool = |key: &str| {
        values
            .get(key)
            .map(|v| parse_bool(v).map_err(|e| format!("config key `{key}`: {e}")))
            .transpose()
    };
    let cfg = RunConfig {
        n_max: overrides.n_max.or(field(&values, "n_max")?).unwrap_or(defaults.n_max),
        prime_max: overrides.prime_max.or(field(&values, "prime_max")?).unwrap_or(defaults.prime_max),
        suites: if !overrides.suites.is_empty() {
            overrides.suites
        } else {
            file_suites.unwrap_or(defaults.suites)
        },
        format: overrides.format.or(field(&values, "format")?).unwrap_or(defaults.format),
        output: overrides.output.or(values.get("output").map(PathBuf::from)),
        workers: overrides.workers.or(field(&values, "workers")?).unwrap_or(defaults.workers),
        strict_conjectures: overrides
            .strict_conjectures
            .or(file_bool("strict_conjectures")?)
            .unwrap_or(defaults.strict_conjectures),
        timings: overrides.timings.or(file_bool("timings")?).unwrap_or(defaults.timings),
    };
    cfg.validate()?;
    Ok(cfg)
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.n_max < 1 {
            return Err("n_max must be at least 1".into());
        }
        if self.prime_max < 2 {
            return Err("prime_max must be at least 2".into());
        }
        if self.workers < 1 {
            return Err("workers must be at least 1".into());
        }
        if let Some(bad) = self.suites.iter().find(|s| !SUITES.contains(&s.as_str())) {
            return Err(format!("unknown suite `{bad}` (known: {})", SUITES.join(", ")));
        }
        Ok(())
    }
}
