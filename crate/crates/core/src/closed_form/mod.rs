//! Closed-form spectra of `x^(s(p^m - 1))` over F_{p^(2m)}.
//!
//! With q = p^m and t = gcd(s, q + 1) the spectra depend only on p, m, t and
//! on which of 2t, 3t, 6t divide q + 1. [`case_flags`] derives those
//! parameters; [`closed_form_ds`] and [`closed_form_bs`] evaluate the branch
//! tables exactly and merge rows by value.

mod expr;
mod predict;
mod tables;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{gcd, is_prime};
use crate::field::{FieldElement, FieldSpec};
use crate::spectrum::{Spectrum, SpectrumKind};

pub use expr::{evaluate, Bindings, ExprError};
pub use predict::{beta_for_class, delta_for_class, BClass, Predictor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("closed form not applicable: (p^m+1)/t = {ratio} ≤ 3")]
    NotApplicable { ratio: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("row {value_expr:?} has non-integral frequency {frequency}")]
    NonIntegerFrequency { value_expr: String, frequency: String },
    #[error("row {value_expr:?} has negative frequency {frequency}")]
    NegativeFrequency { value_expr: String, frequency: String },
    #[error("row {value_expr:?} evaluates to the invalid count {value}")]
    InvalidValue { value_expr: String, value: String },
    #[error(transparent)]
    Expression(#[from] ExprError),
    #[error("field does not match the parameters: expected F_{{{p}^{n}}}")]
    FieldMismatch { p: u64, n: u32 },
    #[error("b must be nonzero for boomerang counts")]
    ZeroArgument,
}

/// Which divisibility case of q + 1 applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// p = 2, 3t does not divide 2^m + 1.
    P2Not3t,
    /// p = 2, 3t | 2^m + 1.
    P2Div3t,
    /// p = 3, 2t does not divide 3^m + 1.
    P3Not2t,
    /// p = 3, 2t | 3^m + 1.
    P3Div2t,
    /// p > 3, 2t does not divide p^m + 1.
    Pg3Not2t,
    /// p > 3, 2t | p^m + 1 but 6t does not.
    Pg3Div2tNot6t,
    /// p > 3, 6t | p^m + 1.
    Pg3Div6t,
}

impl Branch {
    pub const ALL: [Branch; 7] = [
        Branch::P2Not3t,
        Branch::P2Div3t,
        Branch::P3Not2t,
        Branch::P3Div2t,
        Branch::Pg3Not2t,
        Branch::Pg3Div2tNot6t,
        Branch::Pg3Div6t,
    ];

    /// Stable short name used in reports.
    pub fn code(self) -> &'static str {
        match self {
            Branch::P2Not3t => "P2_3tNotDiv",
            Branch::P2Div3t => "P2_3tDiv",
            Branch::P3Not2t => "P3_2tNotDiv",
            Branch::P3Div2t => "P3_2tDiv",
            Branch::Pg3Not2t => "PG3_2tNotDiv",
            Branch::Pg3Div2tNot6t => "PG3_2tDiv6tNot",
            Branch::Pg3Div6t => "PG3_6tDiv",
        }
    }

    pub fn condition(self) -> &'static str {
        match self {
            Branch::P2Not3t => "p = 2, 3t does not divide p^m+1",
            Branch::P2Div3t => "p = 2, 3t | p^m+1",
            Branch::P3Not2t => "p = 3, 2t does not divide p^m+1",
            Branch::P3Div2t => "p = 3, 2t | p^m+1",
            Branch::Pg3Not2t => "p > 3, 2t does not divide p^m+1",
            Branch::Pg3Div2tNot6t => "p > 3, 2t | p^m+1, 6t does not divide p^m+1",
            Branch::Pg3Div6t => "p > 3, 6t | p^m+1",
        }
    }

    pub fn from_code(code: &str) -> Option<Branch> {
        Branch::ALL.into_iter().find(|b| b.code() == code)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.code(), self.condition())
    }
}

impl Serialize for Branch {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

/// Parameters derived from (p, m, s).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaseFlags {
    pub p: u64,
    pub m: u32,
    pub s: u64,
    /// p^m.
    pub q: u64,
    pub t: u64,
    pub div2t: bool,
    pub div3t: bool,
    pub div6t: bool,
    pub applicable: bool,
    pub branch: Branch,
}

impl CaseFlags {
    /// Field degree n = 2m.
    pub fn n(&self) -> u32 {
        2 * self.m
    }

    /// Size of the unit circle, q + 1.
    pub fn circle(&self) -> u64 {
        self.q + 1
    }

    /// (q + 1) / t, the order of the subgroup `{alpha^(si)}`.
    pub fn ratio(&self) -> u64 {
        self.circle() / self.t
    }

    /// The exponent d = s(q - 1).
    pub fn exponent(&self) -> Option<u64> {
        self.s.checked_mul(self.q - 1)
    }

    pub fn require_applicable(&self) -> Result<(), ClosedFormError> {
        if self.applicable {
            Ok(())
        } else {
            Err(ClosedFormError::NotApplicable { ratio: self.ratio() })
        }
    }

    fn bindings(&self) -> Bindings {
        Bindings { p: self.p.into(), m: self.m.into(), n: self.n().into(), t: self.t.into() }
    }
}

pub fn case_flags(p: u64, m: u32, s: u64) -> Result<CaseFlags, ClosedFormError> {
    if !is_prime(p) {
        return Err(ClosedFormError::InvalidParameters(format!("p = {p} is not prime")));
    }
    if m == 0 || s == 0 {
        return Err(ClosedFormError::InvalidParameters("m and s must be positive".into()));
    }
    let q = p
        .checked_pow(m)
        .filter(|q| q.checked_mul(*q).is_some())
        .ok_or_else(|| ClosedFormError::InvalidParameters(format!("{p}^{} overflows", 2 * m)))?;
    let circle = q + 1;
    let t = gcd(s % circle, circle);
    let t = if t == 0 { circle } else { t };
    let divides = |k: u64| circle % (k * t) == 0;
    let (div2t, div3t, div6t) = (divides(2), divides(3), divides(6));
    let branch = match p {
        2 if div3t => Branch::P2Div3t,
        2 => Branch::P2Not3t,
        3 if div2t => Branch::P3Div2t,
        3 => Branch::P3Not2t,
        _ if div6t => Branch::Pg3Div6t,
        _ if div2t => Branch::Pg3Div2tNot6t,
        _ => Branch::Pg3Not2t,
    };
    Ok(CaseFlags { p, m, s, q, t, div2t, div3t, div6t, applicable: circle / t > 3, branch })
}

/// One table row after evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvaluatedRow {
    pub value_expr: &'static str,
    pub frequency_expr: &'static str,
    #[serde(serialize_with = "crate::spectrum::serialize_count")]
    pub value: u128,
    #[serde(serialize_with = "crate::spectrum::serialize_count")]
    pub frequency: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub flags: CaseFlags,
    pub rows: Vec<EvaluatedRow>,
    pub spectrum: Spectrum,
}

impl ClosedForm {
    pub fn branch(&self) -> Branch {
        self.flags.branch
    }
}

fn to_count(x: &BigRational, expr: &'static str, is_frequency: bool) -> Result<u128, ClosedFormError> {
    let shown = x.to_string();
    if !x.is_integer() {
        return Err(if is_frequency {
            ClosedFormError::NonIntegerFrequency { value_expr: expr.into(), frequency: shown }
        } else {
            ClosedFormError::InvalidValue { value_expr: expr.into(), value: shown }
        });
    }
    let int: BigInt = x.to_integer();
    if int.is_negative() {
        return Err(if is_frequency {
            ClosedFormError::NegativeFrequency { value_expr: expr.into(), frequency: shown }
        } else {
            ClosedFormError::InvalidValue { value_expr: expr.into(), value: shown }
        });
    }
    int.to_u128().ok_or_else(|| ClosedFormError::InvalidValue { value_expr: expr.into(), value: shown })
}

fn evaluate_rows(
    cf: &CaseFlags,
    kind: SpectrumKind,
    rows: &'static [tables::Row],
) -> Result<ClosedForm, ClosedFormError> {
    cf.require_applicable()?;
    let vars = cf.bindings();
    let mut evaluated = Vec::with_capacity(rows.len());
    let mut spectrum = Spectrum::new(kind);
    for &(value_expr, frequency_expr) in rows {
        let value = to_count(&evaluate(value_expr, &vars)?, value_expr, false)?;
        let frequency = to_count(&evaluate(frequency_expr, &vars)?, value_expr, true)?;
        spectrum.add(value, frequency);
        evaluated.push(EvaluatedRow { value_expr, frequency_expr, value, frequency });
    }
    Ok(ClosedForm { flags: *cf, rows: evaluated, spectrum })
}

/// Differential spectrum from the branch table.
pub fn closed_form_ds(cf: &CaseFlags) -> Result<ClosedForm, ClosedFormError> {
    evaluate_rows(cf, SpectrumKind::Differential, tables::differential_rows(cf.branch))
}

/// Boomerang spectrum from the branch table.
pub fn closed_form_bs(cf: &CaseFlags) -> Result<ClosedForm, ClosedFormError> {
    evaluate_rows(cf, SpectrumKind::Boomerang, tables::boomerang_rows(cf.branch))
}

/// Σ over b of the table frequencies, as an exact check that is independent
/// of row merging.
pub fn exact_row_total(rows: &[EvaluatedRow]) -> BigInt {
    rows.iter().fold(BigInt::zero(), |acc, r| acc + BigInt::from(r.frequency))
}

/// Predicted δ(1, b). Builds a [`Predictor`]; reuse one for many b.
pub fn predict_delta(cf: &CaseFlags, fs: &FieldSpec, b: FieldElement) -> Result<u128, ClosedFormError> {
    Ok(Predictor::new(cf, fs)?.predict_delta(b))
}

/// Predicted β(1, b) for b ≠ 0.
pub fn predict_beta(cf: &CaseFlags, fs: &FieldSpec, b: FieldElement) -> Result<u128, ClosedFormError> {
    Predictor::new(cf, fs)?.predict_beta(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_for_example_parameters() {
        let f = case_flags(5, 2, 1).unwrap();
        assert_eq!((f.t, f.div2t, f.div6t, f.applicable), (1, true, false, true));
        assert_eq!(f.branch, Branch::Pg3Div2tNot6t);

        let f = case_flags(2, 2, 1).unwrap();
        assert_eq!((f.t, f.div3t), (1, false));
        assert_eq!(f.branch, Branch::P2Not3t);

        let f = case_flags(11, 2, 2).unwrap();
        assert_eq!((f.t, f.div2t), (2, false));
        assert_eq!(f.branch, Branch::Pg3Not2t);
    }

    #[test]
    fn six_implies_two_and_three() {
        for p in [2, 3, 5, 7, 11] {
            for m in 1..=3 {
                for s in 1..=40 {
                    let f = case_flags(p, m, s).unwrap();
                    assert_eq!(f.t, gcd(s, f.q + 1));
                    assert!(!f.div6t || (f.div2t && f.div3t));
                }
            }
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(case_flags(4, 2, 1).is_err());
        assert!(case_flags(5, 0, 1).is_err());
        assert!(case_flags(5, 2, 0).is_err());
    }

    #[test]
    fn not_applicable_names_the_ratio() {
        let f = case_flags(2, 1, 1).unwrap();
        assert!(!f.applicable);
        let err = closed_form_ds(&f).unwrap_err();
        assert_eq!(err, ClosedFormError::NotApplicable { ratio: 3 });
        assert!(err.to_string().contains("(p^m+1)/t = 3 ≤ 3"));
    }

    fn spectrum_of(kind: SpectrumKind, entries: &[(u128, u128)]) -> Spectrum {
        Spectrum::from_entries(kind, entries.iter().copied())
    }

    #[test]
    fn differential_examples() {
        use SpectrumKind::Differential as D;
        let cf = closed_form_ds(&case_flags(5, 2, 1).unwrap()).unwrap();
        assert_eq!(cf.spectrum, spectrum_of(D, &[(0, 286), (1, 74), (2, 264), (23, 1)]));
        let freqs: Vec<u128> = cf.rows.iter().map(|r| r.frequency).collect();
        assert_eq!(freqs, [284, 264, 48, 24, 2, 2, 1]);

        let cf = closed_form_ds(&case_flags(11, 2, 2).unwrap()).unwrap();
        assert_eq!(cf.spectrum, spectrum_of(D, &[(0, 10978), (1, 2), (2, 120), (4, 3540), (239, 1)]));

        let cf = closed_form_ds(&case_flags(2, 2, 1).unwrap()).unwrap();
        assert_eq!(cf.spectrum, spectrum_of(D, &[(0, 8), (2, 8)]));
    }

    #[test]
    fn boomerang_examples() {
        use SpectrumKind::Boomerang as B;
        let cf = closed_form_bs(&case_flags(3, 4, 3).unwrap()).unwrap();
        assert_eq!(cf.branch(), Branch::P3Div2t);
        assert_eq!(cf.spectrum, spectrum_of(B, &[(0, 3440), (2, 3120)]));
        let freqs: Vec<u128> = cf.rows.iter().map(|r| r.frequency).collect();
        assert_eq!(freqs, [3198, 80, 3120, 160, 2]);

        let cf = closed_form_bs(&case_flags(7, 2, 2).unwrap()).unwrap();
        assert_eq!(cf.spectrum, spectrum_of(B, &[(0, 1800), (4, 552), (94, 48)]));
    }

    #[test]
    fn every_branch_satisfies_the_identities() {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23] {
            for m in 1..=4 {
                let Ok(f) = case_flags(p, m, 1) else { continue };
                let circle = f.q + 1;
                for t in crate::arith::divisors(circle) {
                    let f = case_flags(p, m, t).unwrap();
                    if !f.applicable {
                        continue;
                    }
                    let order = (f.q as u128) * (f.q as u128);
                    let ds = closed_form_ds(&f).unwrap().spectrum;
                    assert_eq!(ds.total(), order, "{f:?}");
                    assert_eq!(ds.weighted_total(), order, "{f:?}");
                    let bs = closed_form_bs(&f).unwrap();
                    assert_eq!(bs.spectrum.total(), order - 1, "{f:?}");
                    assert_eq!(exact_row_total(&bs.rows), BigInt::from(order - 1));
                }
            }
        }
    }

    #[test]
    fn branch_codes_round_trip() {
        for b in Branch::ALL {
            assert_eq!(Branch::from_code(b.code()), Some(b));
        }
        assert_eq!(serde_json::to_string(&Branch::Pg3Div6t).unwrap(), "\"PG3_6tDiv\"");
    }
}
