//! Affine points on `alpha x^n1 + beta y^n2 + 1 = 0` over F_{p^n}, n = 2km,
//! with lcm(n1, n2) | p^m + 1.
//!
//! The closed form depends on t = gcd(n1, n2), the residues
//! r1 = ind(alpha) mod n1 and r2 = ind(beta) mod n2, and the sign (-1)^k.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd, lcm};
use crate::field::{FieldElement, FieldError, FieldSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("lcm(n1, n2) = {lcm} does not divide p^m + 1 = {circle}")]
    HypothesisViolated { lcm: u64, circle: u64 },
    #[error("no closed form covers r1 = {r1}, r2 = {r2} with t = {t}")]
    UncoveredCase { r1: u64, r2: u64, t: u64 },
    #[error("2m = {} does not divide n = {n}", 2 * .m)]
    DegreeMismatch { n: u32, m: u32 },
    #[error("exponents n1 and n2 must be positive")]
    ZeroExponent,
    #[error("coefficients alpha and beta must be nonzero")]
    ZeroCoefficient,
    #[error("point count over {elements} elements exceeds the budget of {budget}")]
    BudgetExceeded { elements: u128, budget: u128 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Which closed form applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CurveCase {
    /// r1 = r2 = 0.
    #[serde(rename = "i")]
    I,
    /// r1 = 0, t does not divide r2.
    #[serde(rename = "ii")]
    II,
    /// r2 = 0, t does not divide r1.
    #[serde(rename = "iii")]
    III,
    /// r1, r2 ≠ 0, t does not divide r1 - r2.
    #[serde(rename = "iv")]
    IV,
    /// r1, r2 ≠ 0, t | r1 - r2.
    #[serde(rename = "v")]
    V,
}

impl CurveCase {
    pub fn label(self) -> &'static str {
        match self {
            CurveCase::I => "i",
            CurveCase::II => "ii",
            CurveCase::III => "iii",
            CurveCase::IV => "iv",
            CurveCase::V => "v",
        }
    }
}

/// Residue of ind(alpha) modulo n1.
pub fn classify_coefficient(fs: &FieldSpec, alpha: FieldElement, n1: u64) -> Result<u64, FieldError> {
    Ok(fs.ind(alpha)? as u64 % n1)
}

#[derive(Debug, Clone)]
pub struct CurveInstance<'f> {
    field: &'f FieldSpec,
    m: u32,
    k: u32,
    alpha: FieldElement,
    beta: FieldElement,
    n1: u64,
    n2: u64,
    t: u64,
    r1: u64,
    r2: u64,
}

impl<'f> CurveInstance<'f> {
    pub fn new(
        field: &'f FieldSpec,
        m: u32,
        alpha: FieldElement,
        beta: FieldElement,
        n1: u64,
        n2: u64,
    ) -> Result<Self, CurveError> {
        let n = field.degree();
        if m == 0 || !n.is_multiple_of(2 * m) {
            return Err(CurveError::DegreeMismatch { n, m });
        }
        if n1 == 0 || n2 == 0 {
            return Err(CurveError::ZeroExponent);
        }
        if alpha == 0 || beta == 0 {
            return Err(CurveError::ZeroCoefficient);
        }
        let circle = (field.characteristic() as u64).pow(m) + 1;
        let l = lcm(n1, n2);
        if !circle.is_multiple_of(l) {
            return Err(CurveError::HypothesisViolated { lcm: l, circle });
        }
        let r1 = classify_coefficient(field, alpha, n1)?;
        let r2 = classify_coefficient(field, beta, n2)?;
        Ok(CurveInstance { field, m, k: n / (2 * m), alpha, beta, n1, n2, t: gcd(n1, n2), r1, r2 })
    }

    pub fn field(&self) -> &'f FieldSpec {
        self.field
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// n / (2m).
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coefficients(&self) -> (FieldElement, FieldElement) {
        (self.alpha, self.beta)
    }

    pub fn exponents(&self) -> (u64, u64) {
        (self.n1, self.n2)
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn residues(&self) -> (u64, u64) {
        (self.r1, self.r2)
    }

    pub fn case(&self) -> Result<CurveCase, CurveError> {
        let (r1, r2, t) = (self.r1, self.r2, self.t);
        let uncovered = Err(CurveError::UncoveredCase { r1, r2, t });
        match (r1 == 0, r2 == 0) {
            (true, true) => Ok(CurveCase::I),
            (true, false) if r2 % t != 0 => Ok(CurveCase::II),
            (false, true) if r1 % t != 0 => Ok(CurveCase::III),
            (true, false) | (false, true) => uncovered,
            (false, false) if r1.abs_diff(r2) % t != 0 => Ok(CurveCase::IV),
            (false, false) => Ok(CurveCase::V),
        }
    }
}

/// Exact point count: for each x, the number of y with
/// `y^n2 = -(alpha x^n1 + 1) / beta`, read from a fiber-size table.
/// `budget` caps the field size.
pub fn count_points_bruteforce(ci: &CurveInstance, budget: u128) -> Result<u64, CurveError> {
    let fs = ci.field;
    if fs.order() as u128 > budget {
        return Err(CurveError::BudgetExceeded { elements: fs.order() as u128, budget });
    }
    let mut fiber = vec![0u64; fs.order() as usize];
    for y in fs.elements() {
        fiber[fs.pow_map(ci.n2, y)? as usize] += 1;
    }
    let minus_inv_beta = fs.neg(fs.inv(ci.beta)?);
    let mut total = 0;
    for x in fs.elements() {
        let lhs = fs.succ(fs.mul(ci.alpha, fs.pow_map(ci.n1, x)?));
        total += fiber[fs.mul(lhs, minus_inv_beta) as usize];
    }
    Ok(total)
}

/// Closed-form point count together with the case used.
pub fn count_points_closed_form(ci: &CurveInstance) -> Result<(CurveCase, u64), CurveError> {
    let case = ci.case()?;
    let fs = ci.field;
    let order = fs.order() as i128;
    let root = (fs.characteristic() as i128).pow(fs.degree() / 2);
    let sign: i128 = if ci.k.is_multiple_of(2) { 1 } else { -1 };
    let (n1, n2, t) = (ci.n1 as i128, ci.n2 as i128, ci.t as i128);
    let count = match case {
        CurveCase::I => order - sign * ((n1 - 1) * (n2 - 1) + 1 - t) * root - t + 1,
        CurveCase::II => order + sign * (n1 - 2) * root + 1,
        CurveCase::III => order + sign * (n2 - 2) * root + 1,
        CurveCase::IV => order - sign * 2 * root + 1,
        CurveCase::V => order + sign * (t - 2) * root - t + 1,
    };
    let count = u64::try_from(count).expect("point counts are nonnegative");
    Ok((case, count))
}
