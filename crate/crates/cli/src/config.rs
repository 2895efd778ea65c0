//! Run configuration: JSON file values overridden by command-line flags.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};
use tlbraid_core::linalg::TOL_REPORT;
use tlbraid_core::tla::{tl_params, DEFAULT_THETA};
use tlbraid_core::{InvolutionSpec, RepShape, Sign, TLParams};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Jones,
    Bell,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// An angle in a config file: a number of radians or an expression such as `"pi/8"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Angle {
    Radians(f64),
    Expr(String),
}

impl Angle {
    fn resolve(&self) -> Result<f64, CliError> {
        match self {
            Angle::Radians(x) => Ok(*x),
            Angle::Expr(s) => parse_angle(s),
        }
    }
}

/// Values a config file may set. Every field is optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub theta: Option<Angle>,
    pub phi: Option<Angle>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub s: Option<String>,
    pub a_sign: Option<String>,
    pub b_sign: Option<String>,
    pub rep: Option<RepKind>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Flag values before merging; `None` means "not given".
#[derive(Clone, Debug, Default)]
pub struct FlagConfig {
    pub theta: Option<f64>,
    pub phi: Option<f64>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub s: Option<String>,
    pub a_sign: Option<String>,
    pub b_sign: Option<String>,
    pub rep: Option<RepKind>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
}

/// The merged, validated configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub params: TLParams,
    /// Explicit qubit count, if any; commands fall back to their own defaults.
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub s: Option<String>,
    pub rep: RepKind,
    pub tol: f64,
    pub seed: u64,
    pub format: Format,
}

impl RunConfig {
    pub fn merge(file: FileConfig, flags: FlagConfig) -> Result<Self, CliError> {
        let theta = match (flags.theta, &file.theta) {
            (Some(t), _) => t,
            (None, Some(a)) => a.resolve()?,
            (None, None) => DEFAULT_THETA,
        };
        let phi = match (flags.phi, &file.phi) {
            (Some(p), _) => p,
            (None, Some(a)) => a.resolve()?,
            (None, None) => 0.0,
        };
        let sign = |s: Option<String>| -> Result<Sign, CliError> {
            s.map_or(Ok(Sign::Plus), |s| s.parse().map_err(CliError::from))
        };
        let a_sign = sign(flags.a_sign.or(file.a_sign))?;
        let b_sign = sign(flags.b_sign.or(file.b_sign))?;
        let params = tl_params(theta, phi, a_sign, b_sign)?;
        let tol = flags.tol.or(file.tol).unwrap_or(TOL_REPORT);
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(CliError::Config(format!(
                "tolerance must be a finite non-negative number, got {tol}"
            )));
        }
        Ok(Self {
            params,
            n: flags.n.or(file.n),
            k: flags.k.or(file.k),
            s: flags.s.or(file.s),
            rep: flags.rep.or(file.rep).unwrap_or(RepKind::Jones),
            tol,
            seed: flags.seed.or(file.seed).unwrap_or(0),
            format: flags.format.or(file.format).unwrap_or_default(),
        })
    }

    /// Shape from `--n`/`--k`, with `n` defaulting to `default_n` and `k` to 1.
    pub fn shape(&self, default_n: usize) -> Result<RepShape, CliError> {
        let n = self.n.unwrap_or(default_n);
        Ok(RepShape::new(n, self.k.unwrap_or(1))?)
    }

    /// The `--s` assignment, or the standard one.
    pub fn spec(&self, shape: RepShape) -> Result<InvolutionSpec, CliError> {
        match &self.s {
            Some(text) => Ok(InvolutionSpec::parse(shape, text)?),
            None => Ok(InvolutionSpec::standard(shape)),
        }
    }
}

/// Parses radians: a number, or sums of terms like `pi`, `-pi/8`, `3pi/4`, `2*pi/15`.
pub fn parse_angle(text: &str) -> Result<f64, CliError> {
    let bad = || CliError::Config(format!("cannot parse angle {text:?}"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    if let Ok(x) = compact.parse::<f64>() {
        return Ok(x);
    }
    // split into signed terms, keeping exponent signs such as 1e-3 intact
    let mut terms = Vec::new();
    let mut current = String::new();
    for ch in compact.chars() {
        let after_exp = current.ends_with(['e', 'E']) && current.len() > 1;
        if (ch == '+' || ch == '-') && !current.is_empty() && !after_exp {
            terms.push(std::mem::take(&mut current));
        }
        current.push(ch);
    }
    terms.push(current);

    let mut total = 0.0;
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1.0, rest),
            None => (1.0, term.strip_prefix('+').unwrap_or(&term)),
        };
        let (numerator, denominator) = match body.split_once('/') {
            Some((num, den)) => (num, den.parse::<f64>().map_err(|_| bad())?),
            None => (body, 1.0),
        };
        let value = if let Some(coef) = numerator.strip_suffix("pi") {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let coef = if coef.is_empty() {
                1.0
            } else {
                coef.parse::<f64>().map_err(|_| bad())?
            };
            coef * PI
        } else {
            numerator.parse::<f64>().map_err(|_| bad())?
        };
        if denominator == 0.0 {
            return Err(bad());
        }
        total += sign * value / denominator;
    }
    if total.is_finite() {
        Ok(total)
    } else {
        Err(bad())
    }
}
