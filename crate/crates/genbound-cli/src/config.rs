//! Run configuration: command-line flags merged over an optional key=value file.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use genbound::chain::CoefficientTuple;
use genbound::geometry::{parse_rational, Rational};
use genbound::sampling::{DEEP_DENOMINATOR, DEFAULT_DENOMINATOR, DEFAULT_SEED};
use num_bigint::BigInt;
use thiserror::Error;

/// A configuration problem; the process exits with status 2.
#[derive(Debug, Error)]
pub enum UsageError {
    #[error("cannot read config file {path}: {reason}")]
    ConfigFile { path: String, reason: String },
    #[error("config line {line}: expected key=value, found {text:?}")]
    ConfigSyntax { line: usize, text: String },
    #[error("unknown config key {0:?}")]
    UnknownKey(String),
    #[error("invalid value {value:?} for {key}")]
    BadValue { key: String, value: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

/// Flags shared by every command. Each may also be given in the config file
/// under the same name without the leading dashes.
#[derive(Args, Clone, Debug, Default)]
pub struct CommonArgs {
    /// Dimension, or the first dimension of a range.
    #[arg(long)]
    pub n: Option<usize>,
    /// Last dimension of the range.
    #[arg(long = "n-max")]
    pub n_max: Option<usize>,
    /// Number of extra face positions; 0 is the classical case.
    #[arg(long = "L")]
    pub l: Option<usize>,
    /// Coefficient tuple, e.g. "9,4".
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    /// Common denominator of the lattice part of the sample grid.
    #[arg(long = "grid-denominator")]
    pub grid_denominator: Option<u64>,
    /// Use the deep grid denominator 840.
    #[arg(long)]
    pub deep: bool,
    /// Seed for the pseudorandom part of the sample grid.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Cross levels for the figure command, e.g. "1/6,5/6".
    #[arg(long)]
    pub alpha: Option<String>,
    /// Key=value file mirroring these flags; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// The fully resolved configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub n_max: Option<usize>,
    pub l: Option<usize>,
    pub m: Option<CoefficientTuple>,
    pub denominator: u64,
    pub seed: u64,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub alpha: Vec<Rational>,
}

const KEYS: [&str; 10] = [
    "n",
    "n-max",
    "L",
    "m",
    "grid-denominator",
    "deep",
    "seed",
    "format",
    "out",
    "alpha",
];

fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, UsageError> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| UsageError::ConfigSyntax {
            line: idx + 1,
            text: raw.to_string(),
        })?;
        let key = k.trim().to_string();
        if !KEYS.contains(&key.as_str()) {
            return Err(UsageError::UnknownKey(key));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, UsageError> {
    value.parse().map_err(|_| UsageError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
    })
}

/// Parses "9,4" into an integer coefficient tuple.
pub fn parse_tuple(text: &str) -> Result<CoefficientTuple, UsageError> {
    let values = text
        .split(',')
        .map(|v| parse_value::<BigInt>("m", v.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    CoefficientTuple::new(genbound::chain::RingSpec::Integers, values).map_err(|e| UsageError::Invalid(e.to_string()))
}

fn parse_levels(text: &str) -> Result<Vec<Rational>, UsageError> {
    text.split(',')
        .map(|v| {
            parse_rational(v).map_err(|_| UsageError::BadValue {
                key: "alpha".into(),
                value: v.to_string(),
            })
        })
        .collect()
}

impl RunConfig {
    /// Merges `args` over the config file named by `--config`, if any.
    pub fn resolve(args: &CommonArgs) -> Result<RunConfig, UsageError> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| UsageError::ConfigFile {
                    path: path.display().to_string(),
                    reason: e.to_string(),
                })?;
                parse_config_text(&text)?
            }
            None => BTreeMap::new(),
        };
        RunConfig::merge(args, &file)
    }

    fn merge(args: &CommonArgs, file: &BTreeMap<String, String>) -> Result<RunConfig, UsageError> {
        fn pick<T: std::str::FromStr>(
            flag: Option<T>,
            file: &BTreeMap<String, String>,
            key: &str,
        ) -> Result<Option<T>, UsageError> {
            match flag {
                Some(v) => Ok(Some(v)),
                None => file.get(key).map(|v| parse_value(key, v)).transpose(),
            }
        }
        let deep = args.deep || pick::<bool>(None, file, "deep")?.unwrap_or(false);
        let format = match args.format {
            Some(f) => Some(f),
            None => file
                .get("format")
                .map(|v| {
                    Format::from_str(v, true).map_err(|_| UsageError::BadValue {
                        key: "format".into(),
                        value: v.clone(),
                    })
                })
                .transpose()?,
        };
        let m = match args.m.clone().or_else(|| file.get("m").cloned()) {
            Some(text) => Some(parse_tuple(&text)?),
            None => None,
        };
        let alpha = match args.alpha.clone().or_else(|| file.get("alpha").cloned()) {
            Some(text) => parse_levels(&text)?,
            None => Vec::new(),
        };
        let default_d = if deep { DEEP_DENOMINATOR } else { DEFAULT_DENOMINATOR };
        Ok(RunConfig {
            n: pick(args.n, file, "n")?,
            n_max: pick(args.n_max, file, "n-max")?,
            l: pick(args.l, file, "L")?,
            m,
            denominator: pick(args.grid_denominator, file, "grid-denominator")?.unwrap_or(default_d),
            seed: pick(args.seed, file, "seed")?.unwrap_or(DEFAULT_SEED),
            format,
            out: pick(args.out.clone(), file, "out")?,
            alpha,
        })
    }

    /// The inclusive dimension range `[n, n-max]`.
    pub fn range(&self, default_n: usize) -> Result<(usize, usize), UsageError> {
        let lo = self.n.unwrap_or(default_n);
        let hi = self.n_max.unwrap_or(lo);
        if hi < lo {
            return Err(UsageError::Invalid(format!("--n-max {hi} is below --n {lo}")));
        }
        Ok((lo, hi))
    }

    /// `L` and the coefficient tuple, defaulting to `L = 1` with all ones.
    pub fn tuple(&self) -> Result<(usize, CoefficientTuple), UsageError> {
        match (&self.m, self.l) {
            (Some(m), Some(l)) if m.l() != l => Err(UsageError::Invalid(format!(
                "--m has {} entries but --L {l} needs {}",
                m.l() + 1,
                l + 1
            ))),
            (Some(m), _) => Ok((m.l(), m.clone())),
            (None, l) => {
                let l = l.unwrap_or(1);
                Ok((l, CoefficientTuple::from_ints(&vec![1; l + 1])))
            }
        }
    }

    /// Rejects grids whose denominator is below `n + 2`.
    pub fn check_denominator(&self, n: usize) -> Result<(), UsageError> {
        if self.denominator < n as u64 + 2 {
            return Err(UsageError::Invalid(format!(
                "--grid-denominator {} must be at least n+2 = {}",
                self.denominator,
                n + 2
            )));
        }
        Ok(())
    }
}
