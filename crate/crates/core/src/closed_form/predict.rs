//! Per-b predictions of δ(1, b) and β(1, b).
//!
//! Let G = {α^(si)} be the subgroup of order h = (q + 1)/t of the unit
//! circle. Every b falls in exactly one class, tested in this order:
//! 0, ±1, the cube roots of unity ±ω, ±ω² (boomerang only), ±2 (p > 3),
//! 1 - g or g - 1, 2g, g1 - g2 (all g ∈ G \ {1}, g1 ≠ g2), and the rest.

use serde::Serialize;

use super::{CaseFlags, ClosedFormError};
use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BClass {
    Zero,
    PlusMinusOne,
    /// ±α^((q+1)/3), ±α^(2(q+1)/3); only when 3 | q + 1.
    CubeRoot,
    PlusMinusTwo,
    OneMinusUnit,
    TwiceUnit,
    UnitDifference,
    Other,
}

/// Class tests for one (p, m, s) over a matching field.
#[derive(Debug, Clone)]
pub struct Predictor<'f> {
    fs: &'f FieldSpec,
    flags: CaseFlags,
    /// ind(g) ≡ 0 mod this, for g ∈ G.
    step: u64,
    subgroup: Vec<FieldElement>,
    cube_roots: Vec<FieldElement>,
}

impl<'f> Predictor<'f> {
    pub fn new(flags: &CaseFlags, fs: &'f FieldSpec) -> Result<Self, ClosedFormError> {
        flags.require_applicable()?;
        if fs.characteristic() as u64 != flags.p || fs.degree() != flags.n() {
            return Err(ClosedFormError::FieldMismatch { p: flags.p, n: flags.n() });
        }
        let step = (flags.q - 1) * flags.t;
        let subgroup = (0..flags.ratio()).map(|k| fs.exp(k * step)).collect();
        let circle = flags.circle();
        let mut cube_roots = Vec::new();
        if circle.is_multiple_of(3) {
            let w = fs.exp((flags.q - 1) * (circle / 3));
            let w2 = fs.mul(w, w);
            cube_roots.extend([w, w2]);
            if flags.p != 2 {
                cube_roots.extend([fs.neg(w), fs.neg(w2)]);
            }
        }
        Ok(Predictor { fs, flags: *flags, step, subgroup, cube_roots })
    }

    pub fn flags(&self) -> &CaseFlags {
        &self.flags
    }

    /// Elements of G, as α^(sk) for k = 0, 1, ...
    pub fn subgroup(&self) -> &[FieldElement] {
        &self.subgroup
    }

    pub fn in_subgroup(&self, x: FieldElement) -> bool {
        x != 0 && (self.fs.log_table()[x as usize] as u64).is_multiple_of(self.step)
    }

    fn in_subgroup_not_one(&self, x: FieldElement) -> bool {
        x != 1 && self.in_subgroup(x)
    }

    /// Class of b. The cube roots are only separated out for boomerang
    /// counts; for differential counts they fall through to the later tests.
    pub fn classify(&self, b: FieldElement, boomerang: bool) -> BClass {
        let fs = self.fs;
        let p = self.flags.p;
        if b == 0 {
            return BClass::Zero;
        }
        if b == 1 || b == fs.neg(1) {
            return BClass::PlusMinusOne;
        }
        if boomerang && self.cube_roots.contains(&b) {
            return BClass::CubeRoot;
        }
        if p > 3 && (b == fs.constant(2) || b == fs.constant(-2)) {
            return BClass::PlusMinusTwo;
        }
        if self.in_subgroup_not_one(fs.sub(1, b)) || self.in_subgroup_not_one(fs.succ(b)) {
            return BClass::OneMinusUnit;
        }
        if p != 2 {
            let half = fs.mul(b, fs.inv(fs.constant(2)).expect("2 is a unit in odd characteristic"));
            if self.in_subgroup_not_one(half) {
                return BClass::TwiceUnit;
            }
        }
        let is_difference = self.subgroup.iter().skip(1).any(|&g1| {
            let g2 = fs.sub(g1, b);
            g2 != g1 && self.in_subgroup_not_one(g2)
        });
        if is_difference {
            BClass::UnitDifference
        } else {
            BClass::Other
        }
    }

    pub fn predict_delta(&self, b: FieldElement) -> u128 {
        delta_for_class(&self.flags, self.classify(b, false))
    }

    pub fn predict_beta(&self, b: FieldElement) -> Result<u128, ClosedFormError> {
        if b == 0 {
            return Err(ClosedFormError::ZeroArgument);
        }
        Ok(beta_for_class(&self.flags, self.classify(b, true)))
    }
}

/// δ(1, b) for every b in `class`.
pub fn delta_for_class(cf: &CaseFlags, class: BClass) -> u128 {
    let (t, q) = (cf.t as u128, cf.q as u128);
    let (d2, d3, d6) = (cf.div2t, cf.div3t, cf.div6t);
    let pick = |cond: bool, yes: u128, no: u128| if cond { yes } else { no };
    if class == BClass::Zero {
        return t * (q - 1) - 1;
    }
    match (cf.p, class) {
        (2, BClass::PlusMinusOne) => pick(d3, 2 * t * t + 2, 2),
        (2, BClass::OneMinusUnit) => 2 * t * (t - 1),
        (2, BClass::UnitDifference) => 2 * t * t,
        (2, _) => 0,
        (3, BClass::PlusMinusOne) => pick(d2, t * t - t + 1, 1),
        (_, BClass::PlusMinusOne) => pick(d6, 2 * t * t + 1, 1),
        (_, BClass::PlusMinusTwo) => pick(d2, t * t - t, 0),
        (_, BClass::OneMinusUnit) => pick(d2, 2 * t * t - t, t * t - t),
        (_, BClass::TwiceUnit) => pick(d2, t * t, 0),
        (_, BClass::UnitDifference) => pick(d2, 2 * t * t, t * t),
        _ => 0,
    }
}

/// β(1, b) for every b in `class`; `Zero` maps to 0 since b = 0 is excluded.
pub fn beta_for_class(cf: &CaseFlags, class: BClass) -> u128 {
    let (t, q) = (cf.t as u128, cf.q as u128);
    let (d2, d3, d6) = (cf.div2t, cf.div3t, cf.div6t);
    let pick = |cond: bool, yes: u128, no: u128| if cond { yes } else { no };
    let t2 = t * t;
    let square_block = t2 * t2 + t2 - 2 * t2 * t;
    let double_block = 4 * t2 * t2 - 4 * t2 * t + 2 * t2;
    match (cf.p, class) {
        (_, BClass::Zero) => 0,
        (2, BClass::PlusMinusOne) => pick(d3, double_block + 2, 2),
        (2, BClass::CubeRoot) => pick(d3, 2 * t * (t - 1) * (q + 2 * t2 - 4 * t) + 4 * t2, 0),
        (2, BClass::OneMinusUnit) => 2 * t * (t - 1) * (q + 2 * t2 - 4 * t),
        (2, BClass::UnitDifference) => double_block,
        (2, _) => 0,
        (3, BClass::PlusMinusOne) => pick(d2, t * (t - 1) * (q + t2 + 2 - 3 * t), 0),
        (_, BClass::PlusMinusOne) => pick(d6, double_block, 0),
        (_, BClass::CubeRoot) => pick(d6, t * (t - 1) * (q + 4 * t2 - 4 * t) + 2 * t2, 0),
        (_, BClass::PlusMinusTwo) => pick(d2, t * (t - 1) * (q + t2 - 3 * t), 0),
        (_, BClass::OneMinusUnit) => pick(d2, t * (t - 1) * (q + 4 * t2 - 4 * t), t * (t - 1) * (q + t2 - 3 * t)),
        (_, BClass::TwiceUnit) => pick(d2, square_block, 0),
        (_, BClass::UnitDifference) => pick(d2, double_block, square_block),
        _ => 0,
    }
}
