use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use equikh::invariant::{Mode, RationalT, Settings};

use crate::CliError;

/// Primes accepted by `fp:P`; each one is a separate monomorphization.
pub const PRIMES: [u32; 7] = [2, 3, 5, 7, 11, 13, 31];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldChoice {
    Q,
    Fp(u32),
}

impl FromStr for FieldChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "q" => Ok(FieldChoice::Q),
            "f2" => Ok(FieldChoice::Fp(2)),
            other => {
                let p: u32 = other
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| format!("unknown field {s:?} (f2|q|fp:P)"))?;
                if PRIMES.contains(&p) {
                    Ok(FieldChoice::Fp(p))
                } else {
                    Err(format!("unsupported prime {p}; supported: {PRIMES:?}"))
                }
            }
        }
    }
}

impl std::fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldChoice::Q => write!(f, "q"),
            FieldChoice::Fp(2) => write!(f, "f2"),
            FieldChoice::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

impl TryFrom<String> for FieldChoice {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<FieldChoice> for String {
    fn from(f: FieldChoice) -> String {
        f.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    #[default]
    Json,
    Csv,
}

/// Flags shared by `compute` and `verify`. Everything is optional so that a config file
/// can fill the gaps.
#[derive(Args, Debug, Default)]
pub struct RunArgs {
    /// PD code, e.g. "PD[X[2,2,1,1]]"
    #[arg(long, group = "input")]
    pub pd: Option<String>,
    /// file holding a PD code or a JSON diagram
    #[arg(long, group = "input")]
    pub file: Option<PathBuf>,
    /// the crossingless unknot
    #[arg(long, group = "input")]
    pub unknot: bool,
    /// coefficient field: f2, q or fp:P
    #[arg(long)]
    pub field: Option<FieldChoice>,
    /// evaluate at t = P/Q (repeatable)
    #[arg(long = "t", value_name = "P/Q")]
    pub t: Vec<RationalT>,
    /// evaluate on the grid k/Q, k = 0..=2Q
    #[arg(long, value_name = "Q")]
    pub sweep: Option<u32>,
    /// also compute the reduced invariant
    #[arg(long)]
    pub reduced: bool,
    /// edge label carrying the basepoint
    #[arg(long, value_name = "E")]
    pub basepoint: Option<u32>,
    #[arg(long)]
    pub mode: Option<Mode>,
    /// exponent cap at t = 0 and t = 2
    #[arg(long, value_name = "N")]
    pub cap: Option<u32>,
    /// largest diagram the full cube accepts
    #[arg(long, value_name = "N")]
    pub max_crossings: Option<usize>,
    #[arg(long, value_enum)]
    pub output: Option<Output>,
    /// run the verification suite as well
    #[arg(long)]
    pub verify: bool,
    /// JSON config file; flags take precedence
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// include wall-clock timings (makes output nondeterministic)
    #[arg(long)]
    pub timing: bool,
}

/// Config file contents. Unknown keys are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub field: Option<FieldChoice>,
    pub t: Option<Vec<RationalT>>,
    pub sweep: Option<u32>,
    pub reduced: Option<bool>,
    pub basepoint: Option<u32>,
    pub mode: Option<Mode>,
    pub cap: Option<u32>,
    pub max_crossings: Option<usize>,
    pub output: Option<Output>,
    pub verify: Option<bool>,
    pub timing: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub field: FieldChoice,
    pub mode: Mode,
    /// grid denominator, if a sweep was requested
    pub q: Option<u32>,
    pub t: Vec<RationalT>,
    pub reduced: bool,
    pub basepoint: Option<u32>,
    pub cap: u32,
    pub max_crossings: usize,
    pub output: Output,
    pub verify: bool,
    pub timing: bool,
}

pub const DEFAULT_Q: u32 = 8;

impl RunConfig {
    pub fn resolve(args: &RunArgs) -> Result<Self, CliError> {
        let file: FileConfig = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let defaults = Settings::default();
        let t = if args.t.is_empty() { file.t.unwrap_or_default() } else { args.t.clone() };
        let mut q = args.sweep.or(file.sweep);
        if q.is_none() && t.is_empty() {
            q = Some(DEFAULT_Q);
        }
        if q == Some(0) {
            return Err(CliError::Input("--sweep needs Q >= 1".into()));
        }
        let mut t = t;
        if let Some(q) = q {
            t.extend(RationalT::grid(q));
        }
        t.sort();
        t.dedup();
        Ok(RunConfig {
            field: args.field.or(file.field).unwrap_or(FieldChoice::Fp(2)),
            mode: args.mode.or(file.mode).unwrap_or(defaults.mode),
            q,
            t,
            reduced: args.reduced || file.reduced.unwrap_or(false),
            basepoint: args.basepoint.or(file.basepoint),
            cap: args.cap.or(file.cap).unwrap_or(defaults.cap),
            max_crossings: args.max_crossings.or(file.max_crossings).unwrap_or(defaults.max_crossings),
            output: args.output.or(file.output).unwrap_or_default(),
            verify: args.verify || file.verify.unwrap_or(false),
            timing: args.timing || file.timing.unwrap_or(false),
        })
    }

    pub fn settings(&self, reduced: bool) -> Settings {
        Settings { mode: self.mode, reduced, cap: self.cap, max_crossings: self.max_crossings }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields() {
        assert_eq!("F2".parse::<FieldChoice>(), Ok(FieldChoice::Fp(2)));
        assert_eq!("q".parse::<FieldChoice>(), Ok(FieldChoice::Q));
        assert_eq!("fp:7".parse::<FieldChoice>(), Ok(FieldChoice::Fp(7)));
        assert!("fp:9".parse::<FieldChoice>().is_err());
        assert!("r".parse::<FieldChoice>().is_err());
        assert_eq!(FieldChoice::Fp(2).to_string(), "f2");
        assert_eq!(FieldChoice::Fp(5).to_string(), "fp:5");
    }

    #[test]
    fn defaults_and_t_sets() {
        let c = RunConfig::resolve(&RunArgs::default()).unwrap();
        assert_eq!((c.q, c.t.len(), c.field, c.cap), (Some(8), 17, FieldChoice::Fp(2), 6));
        let args = RunArgs { t: vec!["3/2".parse().unwrap(), "1/2".parse().unwrap()], ..RunArgs::default() };
        let c = RunConfig::resolve(&args).unwrap();
        assert_eq!(c.q, None);
        assert_eq!(c.t.iter().map(|t| t.to_string()).collect::<Vec<_>>(), ["1/2", "3/2"]);
        let args = RunArgs { t: vec!["1/3".parse().unwrap()], sweep: Some(1), ..RunArgs::default() };
        assert_eq!(RunConfig::resolve(&args).unwrap().t.len(), 4);
        assert!(RunConfig::resolve(&RunArgs { sweep: Some(0), ..RunArgs::default() }).is_err());
    }
}
