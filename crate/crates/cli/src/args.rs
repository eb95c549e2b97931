use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(name = "spectra", version, about = "Differential and boomerang spectra of power maps over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Differential spectrum by exhaustive enumeration.
    Ds(Common),
    /// Boomerang spectrum by exhaustive enumeration.
    Bs(Common),
    /// Differential spectrum of x^(s(p^m-1)) from the closed form.
    DsClosed(Common),
    /// Boomerang spectrum of x^(s(p^m-1)) from the closed form.
    BsClosed(Common),
    /// Compare enumeration against the closed form; exit 3 on any difference.
    Verify(VerifyArgs),
    /// Points on alpha x^n1 + beta y^n2 + 1 = 0: closed form against enumeration.
    Curve(CurveArgs),
    /// Sizes of the cells C_(j1,j2) and their solutions of (x+1)^d = x^d.
    Partition(Common),
    /// The field's defining polynomial and primitive element.
    FieldInfo(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Ds,
    Bs,
    Both,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// Characteristic.
    #[arg(long)]
    pub p: Option<u64>,
    /// Extension degree.
    #[arg(long, conflicts_with = "m")]
    pub n: Option<u32>,
    /// Half the extension degree; the field is F_(p^(2m)).
    #[arg(long)]
    pub m: Option<u32>,
    /// Exponent of x^d.
    #[arg(long, conflicts_with = "s")]
    pub d: Option<u64>,
    /// Multiplier in d = s(p^m - 1).
    #[arg(long)]
    pub s: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for enumeration.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    /// Largest field size to build.
    #[arg(long)]
    pub max_elements: Option<u64>,
    /// Largest number of (x, y) pairs to scan; SPECTRA_BUDGET_PAIRS sets the default.
    #[arg(long)]
    pub max_pairs: Option<u128>,
    /// Defining polynomial, coefficients constant term first, e.g. 1,1,0,0,1.
    #[arg(long, value_delimiter = ',')]
    pub poly: Option<Vec<u32>>,
    /// Primitive element by encoding.
    #[arg(long)]
    pub psi: Option<u64>,
    /// TOML file with defaults for any of these options.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "both")]
    pub kind: VerifyKind,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub common: Common,
    /// The field is F_(p^(2km)).
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long)]
    pub n1: u64,
    #[arg(long)]
    pub n2: u64,
    /// Coefficient alpha, as an encoding or as psi^k.
    #[arg(long, value_parser = parse_element)]
    pub alpha: ElementArg,
    /// Coefficient beta, as an encoding or as psi^k.
    #[arg(long, value_parser = parse_element)]
    pub beta: ElementArg,
    /// Skip the enumeration and report only the closed form.
    #[arg(long)]
    pub no_bruteforce: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementArg {
    Encoding(u64),
    PsiPower(u64),
}

fn parse_element(src: &str) -> Result<ElementArg, String> {
    let src = src.trim();
    if let Some(k) = src.strip_prefix("psi^") {
        return k.parse().map(ElementArg::PsiPower).map_err(|_| format!("bad exponent in {src:?}"));
    }
    src.parse().map(ElementArg::Encoding).map_err(|_| format!("expected an encoding or psi^k, got {src:?}"))
}
