//! Resolution of options: flags, then `SPECTRA_BUDGET_PAIRS`, then the
//! config file, then defaults.

use std::path::Path;

use serde::Deserialize;
use spectra_core::engine::DEFAULT_MAX_PAIRS;
use spectra_core::field::DEFAULT_MAX_ELEMENTS;

use crate::args::{Common, Format};
use crate::Failure;

pub const PAIR_BUDGET_ENV: &str = "SPECTRA_BUDGET_PAIRS";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    p: Option<u64>,
    n: Option<u32>,
    m: Option<u32>,
    d: Option<u64>,
    s: Option<u64>,
    format: Option<Format>,
    threads: Option<u64>,
    max_elements: Option<u64>,
    max_pairs: Option<u128>,
    poly: Option<Vec<u32>>,
    psi: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    N(u32),
    M(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponent {
    D(u64),
    S(u64),
}

/// Options after merging every source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolved {
    pub p: Option<u64>,
    pub degree: Option<Degree>,
    pub exponent: Option<Exponent>,
    pub format: Format,
    pub threads: usize,
    pub max_elements: u64,
    pub max_pairs: u128,
    pub poly: Option<Vec<u32>>,
    pub psi: Option<u64>,
}

fn load(path: &Path) -> Result<ConfigFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Failure::usage(format!("bad config {}: {e}", path.display())))
}

fn pick<T>(flag_a: Option<T>, flag_b: Option<T>, file_a: Option<T>, file_b: Option<T>) -> (Option<T>, Option<T>) {
    if flag_a.is_some() || flag_b.is_some() {
        (flag_a, flag_b)
    } else {
        (file_a, file_b)
    }
}

pub fn resolve(flags: &Common, env_pairs: Option<&str>) -> Result<Resolved, Failure> {
    let file = match &flags.config {
        Some(path) => load(path)?,
        None => ConfigFile::default(),
    };
    if file.n.is_some() && file.m.is_some() {
        return Err(Failure::usage("config sets both n and m"));
    }
    if file.d.is_some() && file.s.is_some() {
        return Err(Failure::usage("config sets both d and s"));
    }
    let degree = match pick(flags.n, flags.m, file.n, file.m) {
        (Some(n), _) => Some(Degree::N(n)),
        (_, Some(m)) => Some(Degree::M(m)),
        _ => None,
    };
    let exponent = match pick(flags.d, flags.s, file.d, file.s) {
        (Some(d), _) => Some(Exponent::D(d)),
        (_, Some(s)) => Some(Exponent::S(s)),
        _ => None,
    };
    let env_pairs = env_pairs
        .map(|v| {
            v.trim().parse::<u128>().map_err(|_| Failure::usage(format!("{PAIR_BUDGET_ENV}={v:?} is not a count")))
        })
        .transpose()?;
    let threads = flags.threads.or(file.threads).unwrap_or(1);
    if threads == 0 {
        return Err(Failure::usage("threads must be at least 1"));
    }
    Ok(Resolved {
        p: flags.p.or(file.p),
        degree,
        exponent,
        format: flags.format.or(file.format).unwrap_or(Format::Json),
        threads: threads as usize,
        max_elements: flags.max_elements.or(file.max_elements).unwrap_or(DEFAULT_MAX_ELEMENTS),
        max_pairs: flags.max_pairs.or(env_pairs).or(file.max_pairs).unwrap_or(DEFAULT_MAX_PAIRS),
        poly: flags.poly.clone().or(file.poly),
        psi: flags.psi.or(file.psi),
    })
}

impl Resolved {
    pub fn p(&self) -> Result<u64, Failure> {
        self.p.ok_or_else(|| Failure::usage("--p is required"))
    }

    /// Field degree n; `--m` means n = 2m.
    pub fn degree(&self) -> Result<u32, Failure> {
        match self.degree {
            Some(Degree::N(n)) => Ok(n),
            Some(Degree::M(m)) => m.checked_mul(2).ok_or_else(|| Failure::usage("--m is too large")),
            None => Err(Failure::usage("one of --n or --m is required")),
        }
    }

    pub fn m(&self) -> Option<u32> {
        match self.degree {
            Some(Degree::M(m)) => Some(m),
            _ => None,
        }
    }

    /// (p, m, s), as the closed forms need them.
    pub fn parametrized(&self, command: &str) -> Result<(u64, u32, u64), Failure> {
        let p = self.p()?;
        let (Some(Degree::M(m)), Some(Exponent::S(s))) = (self.degree, self.exponent) else {
            return Err(Failure::usage(format!("{command} requires --m and --s (d = s(p^m - 1), n = 2m)")));
        };
        Ok((p, m, s))
    }
}
