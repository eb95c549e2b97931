//! The `spectra` command line. [`run`] does everything except process exit,
//! so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 usage error, 2 budget or hypothesis failure,
//! 3 verification mismatch.

pub mod args;
pub mod config;
mod render;

use std::ffi::OsString;

use clap::Parser;
use serde::Serialize;
use spectra_core::closed_form::{case_flags, closed_form_bs, closed_form_ds, CaseFlags, ClosedForm, ClosedFormError};
use spectra_core::coset::{self, CosetError};
use spectra_core::curve::{self, CurveError, CurveInstance};
use spectra_core::field::{FieldDescriptor, FieldElement};
use spectra_core::{
    boomerang_spectrum, build_field, differential_spectrum, differential_uniformity, is_locally_apn, EngineConfig,
    EngineError, FieldError, FieldOptions, FieldSpec, PowerMapSpec, Spectrum,
};

use args::{Cli, Command, Common, CurveArgs, ElementArg, Format, VerifyArgs, VerifyKind};
use config::{resolve, Degree, Exponent, Resolved, PAIR_BUDGET_ENV};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_UNSATISFIED: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    pub fn unsatisfied(message: impl Into<String>) -> Self {
        Failure { code: EXIT_UNSATISFIED, message: message.into() }
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::FieldTooLarge { .. } => Failure::unsatisfied(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::PairBudgetExceeded { .. } => Failure::unsatisfied(e.to_string()),
            EngineError::Field(f) => f.into(),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<ClosedFormError> for Failure {
    fn from(e: ClosedFormError) -> Self {
        match e {
            ClosedFormError::NotApplicable { .. } => {
                Failure::unsatisfied(format!("{e}; use ds or bs to enumerate instead"))
            }
            ClosedFormError::InvalidParameters(_) | ClosedFormError::FieldMismatch { .. } => {
                Failure::usage(e.to_string())
            }
            _ => Failure::unsatisfied(e.to_string()),
        }
    }
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::HypothesisViolated { .. }
            | CurveError::UncoveredCase { .. }
            | CurveError::BudgetExceeded { .. } => Failure::unsatisfied(e.to_string()),
            CurveError::Field(f) => f.into(),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<CosetError> for Failure {
    fn from(e: CosetError) -> Self {
        Failure::usage(e.to_string())
    }
}

/// What a successful (or mismatching) run prints, with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub code: u8,
    pub stdout: String,
}

impl Report {
    fn ok(stdout: String) -> Self {
        Report { code: 0, stdout }
    }
}

/// Parse `argv` and run. Clap's own help and version output are returned
/// as reports with code 0.
pub fn run_args<I, T>(argv: I, env_pairs: Option<&str>) -> Result<Report, Failure>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => return Ok(Report::ok(e.to_string())),
        Err(e) => {
            let text = e.to_string();
            return Err(Failure::usage(text.strip_prefix("error: ").unwrap_or(&text)));
        }
    };
    run(&cli.command, env_pairs)
}

/// Reads `SPECTRA_BUDGET_PAIRS` from the environment.
pub fn env_pair_budget() -> Option<String> {
    std::env::var(PAIR_BUDGET_ENV).ok()
}

pub fn run(command: &Command, env_pairs: Option<&str>) -> Result<Report, Failure> {
    let opts = |c: &Common| resolve(c, env_pairs);
    match command {
        Command::Ds(c) => enumerate(&opts(c)?, false),
        Command::Bs(c) => enumerate(&opts(c)?, true),
        Command::DsClosed(c) => closed(&opts(c)?, false),
        Command::BsClosed(c) => closed(&opts(c)?, true),
        Command::Verify(v) => verify(&opts(&v.common)?, v),
        Command::Curve(a) => curve(&opts(&a.common)?, a),
        Command::Partition(c) => partition(&opts(c)?),
        Command::FieldInfo(c) => field_info(&opts(c)?),
    }
}

fn field_with_degree(r: &Resolved, n: u32) -> Result<FieldSpec, Failure> {
    let opts = FieldOptions { poly: r.poly.clone(), psi: r.psi, max_elements: r.max_elements };
    Ok(build_field(r.p()?, n, &opts)?)
}

fn field(r: &Resolved) -> Result<FieldSpec, Failure> {
    field_with_degree(r, r.degree()?)
}

fn power_map<'f>(r: &Resolved, fs: &'f FieldSpec) -> Result<PowerMapSpec<'f>, Failure> {
    match r.exponent {
        Some(Exponent::D(d)) => Ok(PowerMapSpec::new(fs, d)?),
        Some(Exponent::S(s)) => {
            let m = r.m().ok_or_else(|| Failure::usage("--s needs --m (d = s(p^m - 1), n = 2m)"))?;
            Ok(PowerMapSpec::parametrized(fs, s, m)?)
        }
        None => Err(Failure::usage("one of --d or --s is required")),
    }
}

fn engine(r: &Resolved) -> EngineConfig {
    EngineConfig { workers: r.threads, max_pairs: r.max_pairs }
}

#[derive(Serialize)]
struct SpectrumReport<'a> {
    d: u64,
    field: FieldDescriptor,
    #[serde(skip_serializing_if = "Option::is_none")]
    locally_apn: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<u64>,
    spectrum: &'a Spectrum,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "optional_count")]
    uniformity: Option<u128>,
}

fn optional_count<S: serde::Serializer>(v: &Option<u128>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => spectra_core::spectrum::serialize_count(v, s),
        None => s.serialize_none(),
    }
}

fn enumerate(r: &Resolved, boomerang: bool) -> Result<Report, Failure> {
    let fs = field(r)?;
    let pm = power_map(r, &fs)?;
    let cfg = engine(r);
    let spectrum = if boomerang { boomerang_spectrum(&pm, &cfg)? } else { differential_spectrum(&pm, &cfg) };
    let s = match r.exponent {
        Some(Exponent::S(s)) => Some(s),
        _ => None,
    };
    let report = SpectrumReport {
        d: pm.exponent(),
        field: fs.descriptor(),
        locally_apn: (!boomerang).then(|| is_locally_apn(&pm, &cfg)),
        m: r.m(),
        s,
        spectrum: &spectrum,
        uniformity: (!boomerang).then(|| differential_uniformity(&spectrum)),
    };
    let mut header = vec![format!("field: F_{}^{}", fs.characteristic(), fs.degree()), format!("d: {}", pm.exponent())];
    if let Some(u) = report.uniformity {
        header.push(format!("differential uniformity: {u}"));
    }
    if let Some(apn) = report.locally_apn {
        header.push(format!("locally APN: {apn}"));
    }
    Ok(Report::ok(match r.format {
        Format::Json => render::json(&report),
        Format::Csv => render::spectrum_csv(&spectrum),
        Format::Table => render::spectrum_table(&header, &spectrum),
    }))
}

#[derive(Serialize)]
struct ClosedReport<'a> {
    branch: &'static str,
    condition: &'static str,
    flags: &'a CaseFlags,
    rows: &'a [spectra_core::closed_form::EvaluatedRow],
    spectrum: &'a Spectrum,
}

fn closed_form(cf: &CaseFlags, boomerang: bool) -> Result<ClosedForm, Failure> {
    Ok(if boomerang { closed_form_bs(cf)? } else { closed_form_ds(cf)? })
}

fn closed(r: &Resolved, boomerang: bool) -> Result<Report, Failure> {
    let name = if boomerang { "bs-closed" } else { "ds-closed" };
    let (p, m, s) = r.parametrized(name)?;
    let cf = case_flags(p, m, s)?;
    let result = closed_form(&cf, boomerang)?;
    let report = ClosedReport {
        branch: cf.branch.code(),
        condition: cf.branch.condition(),
        flags: &cf,
        rows: &result.rows,
        spectrum: &result.spectrum,
    };
    let header = vec![format!("p = {p}, m = {m}, s = {s}, t = {}", cf.t), format!("branch: {}", cf.branch)];
    Ok(Report::ok(match r.format {
        Format::Json => render::json(&report),
        Format::Csv => render::spectrum_csv(&result.spectrum),
        Format::Table => render::spectrum_table(&header, &result.spectrum),
    }))
}

#[derive(Serialize)]
struct DiffEntry {
    #[serde(serialize_with = "spectra_core::spectrum::serialize_count")]
    bruteforce: u128,
    #[serde(serialize_with = "spectra_core::spectrum::serialize_count")]
    closed_form: u128,
    #[serde(serialize_with = "spectra_core::spectrum::serialize_count")]
    value: u128,
}

#[derive(Serialize)]
struct Check {
    branch: &'static str,
    bruteforce: Spectrum,
    closed_form: Spectrum,
    diff: Vec<DiffEntry>,
    #[serde(rename = "match")]
    matched: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    checks: Vec<Check>,
    #[serde(rename = "match")]
    matched: bool,
}

fn verify(r: &Resolved, v: &VerifyArgs) -> Result<Report, Failure> {
    let (p, m, s) = r.parametrized("verify")?;
    let cf = case_flags(p, m, s)?;
    cf.require_applicable()?;
    let fs = field_with_degree(r, 2 * m)?;
    let pm = PowerMapSpec::parametrized(&fs, s, m)?;
    let cfg = engine(r);
    let kinds: &[bool] = match v.kind {
        VerifyKind::Ds => &[false],
        VerifyKind::Bs => &[true],
        VerifyKind::Both => &[false, true],
    };
    let mut checks = Vec::new();
    for &boomerang in kinds {
        let closed = closed_form(&cf, boomerang)?.spectrum;
        let brute = if boomerang { boomerang_spectrum(&pm, &cfg)? } else { differential_spectrum(&pm, &cfg) };
        checks.push(compare(cf.branch.code(), brute, closed));
    }
    Ok(verify_report(checks, r.format))
}

fn compare(branch: &'static str, bruteforce: Spectrum, closed_form: Spectrum) -> Check {
    let diff: Vec<DiffEntry> = bruteforce
        .diff(&closed_form)
        .into_iter()
        .map(|(value, bruteforce, closed_form)| DiffEntry { bruteforce, closed_form, value })
        .collect();
    Check { branch, matched: diff.is_empty(), bruteforce, closed_form, diff }
}

fn verify_report(checks: Vec<Check>, format: Format) -> Report {
    let matched = checks.iter().all(|c| c.matched);
    let report = VerifyReport { checks, matched };
    let stdout = match format {
        Format::Json => render::json(&report),
        Format::Csv => {
            let mut out = String::from("kind,value,bruteforce,closed_form\n");
            for c in &report.checks {
                for d in &c.diff {
                    out.push_str(&format!("{},{},{},{}\n", c.bruteforce.kind(), d.value, d.bruteforce, d.closed_form));
                }
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            for c in &report.checks {
                let status = if c.matched { "match" } else { "MISMATCH" };
                out.push_str(&format!("{} ({}): {status}\n", c.bruteforce.kind(), c.branch));
                out.push_str(&format!("  bruteforce:  {}\n  closed form: {}\n", c.bruteforce, c.closed_form));
                for d in &c.diff {
                    out.push_str(&format!(
                        "  value {}: bruteforce {}, closed form {}\n",
                        d.value, d.bruteforce, d.closed_form
                    ));
                }
            }
            out
        }
    };
    Report { code: if matched { 0 } else { EXIT_MISMATCH }, stdout }
}

#[derive(Serialize)]
struct CurveReport {
    #[serde(rename = "N")]
    count: u64,
    alpha: FieldElement,
    beta: FieldElement,
    bruteforce: Option<u64>,
    case: &'static str,
    field: FieldDescriptor,
    k: u32,
    #[serde(rename = "match")]
    matched: Option<bool>,
    m: u32,
    n1: u64,
    n2: u64,
    r1: u64,
    r2: u64,
    t: u64,
}

fn element(fs: &FieldSpec, arg: ElementArg) -> Result<FieldElement, Failure> {
    match arg {
        ElementArg::PsiPower(k) => Ok(fs.exp(k)),
        ElementArg::Encoding(e) if e < fs.order() as u64 => Ok(e as FieldElement),
        ElementArg::Encoding(e) => {
            Err(Failure::usage(format!("{e} is not an element of a field of size {}", fs.order())))
        }
    }
}

fn curve(r: &Resolved, a: &CurveArgs) -> Result<Report, Failure> {
    let Some(Degree::M(m)) = r.degree else {
        return Err(Failure::usage("curve requires --m; the field is F_(p^(2km)) with --k (default 1)"));
    };
    let n = m.checked_mul(2 * a.k).ok_or_else(|| Failure::usage("2km is too large"))?;
    let fs = field_with_degree(r, n)?;
    let (alpha, beta) = (element(&fs, a.alpha)?, element(&fs, a.beta)?);
    let ci = CurveInstance::new(&fs, m, alpha, beta, a.n1, a.n2)?;
    let bruteforce = if a.no_bruteforce { None } else { Some(curve::count_points_bruteforce(&ci, r.max_pairs)?) };
    let (case, count) = match curve::count_points_closed_form(&ci) {
        Ok(hit) => hit,
        Err(e @ CurveError::UncoveredCase { .. }) => {
            let brute = bruteforce.map(|b| format!("; enumeration gives N = {b}")).unwrap_or_default();
            return Err(Failure::unsatisfied(format!("{e}{brute}")));
        }
        Err(e) => return Err(e.into()),
    };
    let (r1, r2) = ci.residues();
    let matched = bruteforce.map(|b| b == count);
    let report = CurveReport {
        count,
        alpha,
        beta,
        bruteforce,
        case: case.label(),
        field: fs.descriptor(),
        k: ci.k(),
        matched,
        m,
        n1: a.n1,
        n2: a.n2,
        r1,
        r2,
        t: ci.t(),
    };
    let stdout = match r.format {
        Format::Json => render::json(&report),
        Format::Csv => format!(
            "case,N,bruteforce,match\n{},{},{},{}\n",
            report.case,
            count,
            bruteforce.map(|b| b.to_string()).unwrap_or_default(),
            matched.map(|m| m.to_string()).unwrap_or_default()
        ),
        Format::Table => format!(
            "curve: alpha x^{} + beta y^{} + 1 = 0 over F_{}^{} (k = {}, t = {}, r1 = {r1}, r2 = {r2})\ncase: {}\nN: {count}\nbruteforce: {}\n",
            a.n1,
            a.n2,
            fs.characteristic(),
            fs.degree(),
            ci.k(),
            ci.t(),
            report.case,
            bruteforce.map(|b| b.to_string()).unwrap_or_else(|| "skipped".into())
        ),
    };
    Ok(Report { code: if matched == Some(false) { EXIT_MISMATCH } else { 0 }, stdout })
}

#[derive(Serialize)]
struct Cell {
    delta0_count: u64,
    j1: u64,
    j2: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    predicted: Option<u64>,
    size: u64,
}

#[derive(Serialize)]
struct PartitionReport {
    cells: Vec<Cell>,
    field: FieldDescriptor,
    m: u32,
    modulus: u64,
    s: u64,
}

fn partition(r: &Resolved) -> Result<Report, Failure> {
    let (_, m, s) = r.parametrized("partition")?;
    let fs = field_with_degree(r, 2 * m)?;
    let sizes = coset::partition_sizes(&fs, m)?;
    let delta0 = coset::delta_zero_coset_table(&fs, m, s)?;
    let predicted = if fs.characteristic() == 2 { Some(coset::characteristic_two_prediction(m, s)?) } else { None };
    let modulus = sizes.modulus;
    let mut cells = Vec::with_capacity((modulus * modulus) as usize);
    for j1 in 0..modulus {
        for j2 in 0..modulus {
            cells.push(Cell {
                delta0_count: delta0.get(j1, j2),
                j1,
                j2,
                predicted: predicted.as_ref().map(|t| t.get(j1, j2)),
                size: sizes.get(j1, j2),
            });
        }
    }
    let stdout = match r.format {
        Format::Json => render::json(&PartitionReport { cells, field: fs.descriptor(), m, modulus, s }),
        Format::Csv => {
            let mut buf = Vec::new();
            coset::write_csv(&mut buf, &sizes, &delta0).expect("writing to memory");
            String::from_utf8(buf).expect("ascii")
        }
        Format::Table => {
            let mut out = format!("psi = {}, modulus = {modulus}\n", fs.psi());
            let with_prediction = predicted.is_some();
            out.push_str(if with_prediction { "j1\tj2\tsize\tdelta0\tpredicted\n" } else { "j1\tj2\tsize\tdelta0\n" });
            for c in &cells {
                out.push_str(&format!("{}\t{}\t{}\t{}", c.j1, c.j2, c.size, c.delta0_count));
                if let Some(pv) = c.predicted {
                    out.push_str(&format!("\t{pv}"));
                }
                out.push('\n');
            }
            out
        }
    };
    Ok(Report::ok(stdout))
}

#[derive(Serialize)]
struct FieldInfo {
    field: FieldDescriptor,
    group_order: u32,
    order: u32,
}

fn field_info(r: &Resolved) -> Result<Report, Failure> {
    let fs = field(r)?;
    let info = FieldInfo { field: fs.descriptor(), group_order: fs.group_order(), order: fs.order() };
    let poly = |sep: &str| fs.poly().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(sep);
    Ok(Report::ok(match r.format {
        Format::Json => render::json(&info),
        Format::Csv => format!(
            "p,n,poly,psi,order\n{},{},{},{},{}\n",
            fs.characteristic(),
            fs.degree(),
            poly(" "),
            fs.psi(),
            fs.order()
        ),
        Format::Table => format!(
            "p: {}\nn: {}\npoly (constant term first): {}\npsi: {}\norder: {}\n",
            fs.characteristic(),
            fs.degree(),
            poly(", "),
            fs.psi(),
            fs.order()
        ),
    }))
}
