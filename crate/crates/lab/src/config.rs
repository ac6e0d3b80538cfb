//! Run configuration shared by all subcommands.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use congruence_core::exact::parse_rational;
use congruence_core::suite::XPolicy;
use congruence_core::{Filter, Kind, PrimeConstraint, PrimeRange, SuiteConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Identity,
    List,
    Export,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Jsonl,
    Csv,
    #[default]
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum XPolicyArg {
    /// Residues 0..p-1 and the rational panel.
    #[default]
    Full,
    /// Residues 0..p-1 only.
    Residues,
    /// The rational panel only.
    Panel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub kinds: Vec<String>,
    pub ids: Vec<String>,
    /// Inclusive prime range.
    pub primes: (u64, u64),
    /// Explicit x samples (`a/b`); overrides the policy.
    pub x: Option<Vec<String>>,
    pub x_policy: XPolicyArg,
    pub modulus: Vec<(String, u32)>,
    /// Worker threads; `None` uses the hardware width.
    pub jobs: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub exact: bool,
    pub ignore_caps: bool,
    pub inject_fault: Option<String>,
    pub all: bool,
    pub param_max: u64,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            kinds: Vec::new(),
            ids: Vec::new(),
            primes: (3, 50),
            x: None,
            x_policy: XPolicyArg::Full,
            modulus: Vec::new(),
            jobs: None,
            output: None,
            format: Format::Pretty,
            exact: false,
            ignore_caps: false,
            inject_fault: None,
            all: false,
            param_max: 8,
        }
    }

    /// Rejects malformed settings before any work is done.
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.primes;
        if lo > hi {
            bail!("invalid prime range {lo}..{hi}: lower end exceeds upper end");
        }
        for k in &self.kinds {
            if Kind::parse(k).is_none() {
                bail!("unknown kind {k:?}");
            }
        }
        if let Some(xs) = &self.x {
            for x in xs {
                parse_rational(x).with_context(|| format!("bad --x value {x:?}"))?;
            }
        }
        if self.jobs == Some(0) {
            bail!("--jobs must be at least 1");
        }
        Ok(())
    }

    pub fn filter(&self) -> Filter {
        Filter {
            kinds: self.kinds.iter().filter_map(|k| Kind::parse(k)).collect(),
            ids: self.ids.clone(),
        }
    }

    pub fn range(&self) -> Result<PrimeRange> {
        Ok(PrimeRange::new(
            self.primes.0,
            self.primes.1,
            PrimeConstraint::AtLeast3,
        )?)
    }

    pub fn suite_config(&self) -> Result<SuiteConfig> {
        let x_policy = match (&self.x, self.x_policy) {
            (Some(xs), _) => XPolicy::Custom(
                xs.iter()
                    .map(|x| parse_rational(x))
                    .collect::<Result<_, _>>()?,
            ),
            (None, XPolicyArg::Full) => XPolicy::Full,
            (None, XPolicyArg::Residues) => XPolicy::Residues,
            (None, XPolicyArg::Panel) => XPolicy::Panel,
        };
        Ok(SuiteConfig {
            x_policy,
            exact: self.exact,
            ignore_caps: self.ignore_caps,
            modulus_overrides: self.modulus.clone(),
            fault: self.inject_fault.clone(),
            clock: Some(crate::micros),
            ..SuiteConfig::default()
        })
    }
}

/// `lo..hi` (inclusive) or a single prime.
pub fn parse_range(s: &str) -> Result<(u64, u64)> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let lo = lo.parse().with_context(|| format!("bad range {s:?}"))?;
    let hi = hi.parse().with_context(|| format!("bad range {s:?}"))?;
    Ok((lo, hi))
}

/// `id=e`.
pub fn parse_modulus(s: &str) -> Result<(String, u32)> {
    let Some((id, e)) = s.split_once('=') else {
        bail!("expected id=e, got {s:?}");
    };
    let e: u32 = e
        .parse()
        .with_context(|| format!("bad exponent in {s:?}"))?;
    if e == 0 {
        bail!("exponent must be at least 1 in {s:?}");
    }
    Ok((id.to_string(), e))
}
