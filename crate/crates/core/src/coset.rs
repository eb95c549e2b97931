//! The cells `C_{j1,j2} = {x : ind(x+1) ≡ j1, ind(x) ≡ j2 mod p^m + 1}`
//! partitioning F_{p^(2m)} \ {0, -1}.
//!
//! Cells are relative to the field's ψ; every report carries it.

use std::io::{self, Write};

use serde::Serialize;
use thiserror::Error;

use crate::arith::gcd;
use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error("x = {0} is 0 or -1")]
    OutsideSharpSet(FieldElement),
    #[error("field degree {n} is not 2m = {}", 2 * .m)]
    DegreeMismatch { n: u32, m: u32 },
    #[error("s must be at least 1")]
    ZeroMultiplier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CosetIndex {
    pub j1: u64,
    pub j2: u64,
    /// p^m + 1.
    pub modulus: u64,
}

fn circle(fs: &FieldSpec, m: u32) -> Result<u64, CosetError> {
    if m == 0 || fs.degree() != 2 * m {
        return Err(CosetError::DegreeMismatch { n: fs.degree(), m });
    }
    Ok((fs.characteristic() as u64).pow(m) + 1)
}

pub fn coset_of(fs: &FieldSpec, m: u32, x: FieldElement) -> Result<CosetIndex, CosetError> {
    let modulus = circle(fs, m)?;
    let x1 = fs.succ(x);
    if x == 0 || x1 == 0 {
        return Err(CosetError::OutsideSharpSet(x));
    }
    let ind = |y: FieldElement| fs.log_table()[y as usize] as u64 % modulus;
    Ok(CosetIndex { j1: ind(x1), j2: ind(x), modulus })
}

/// A square table over (j1, j2), row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetTable {
    pub modulus: u64,
    pub cells: Vec<u64>,
}

impl CosetTable {
    fn zeros(modulus: u64) -> Self {
        CosetTable { modulus, cells: vec![0; (modulus * modulus) as usize] }
    }

    fn slot(&self, j1: u64, j2: u64) -> usize {
        (j1 * self.modulus + j2) as usize
    }

    pub fn get(&self, j1: u64, j2: u64) -> u64 {
        self.cells[self.slot(j1, j2)]
    }

    fn bump(&mut self, c: CosetIndex) {
        let i = self.slot(c.j1, c.j2);
        self.cells[i] += 1;
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().sum()
    }
}

fn sharp_cells(fs: &FieldSpec, m: u32) -> impl Iterator<Item = (FieldElement, CosetIndex)> + '_ {
    fs.elements().filter_map(move |x| coset_of(fs, m, x).ok().map(|c| (x, c)))
}

/// `|C_{j1,j2}|` for every cell; the sizes sum to p^n - 2.
pub fn partition_sizes(fs: &FieldSpec, m: u32) -> Result<CosetTable, CosetError> {
    let mut table = CosetTable::zeros(circle(fs, m)?);
    for (_, c) in sharp_cells(fs, m) {
        table.bump(c);
    }
    Ok(table)
}

/// Per cell, the number of x with `(x+1)^d = x^d` for d = s(p^m - 1).
pub fn delta_zero_coset_table(fs: &FieldSpec, m: u32, s: u64) -> Result<CosetTable, CosetError> {
    if s == 0 {
        return Err(CosetError::ZeroMultiplier);
    }
    let modulus = circle(fs, m)?;
    let d = (s % modulus) * (modulus - 2);
    let d = if d == 0 { fs.group_order() as u64 } else { d };
    let mut table = CosetTable::zeros(modulus);
    for (x, c) in sharp_cells(fs, m) {
        if fs.pow_map(d, fs.succ(x)).ok() == fs.pow_map(d, x).ok() {
            table.bump(c);
        }
    }
    Ok(table)
}

/// The predicted cell counts of `(x+1)^d = x^d` for p = 2, with t = gcd(s, 2^m + 1)
/// and h = (2^m + 1)/t:
/// (0,0) gives 2^m - 2; the cells (i + hj1, i + hj2) with j1 ≠ j2 and
/// (hj1, hj2) with j1, j2 ≠ 0 give 1 each; all others give 0.
pub fn characteristic_two_prediction(m: u32, s: u64) -> Result<CosetTable, CosetError> {
    if m == 0 {
        return Err(CosetError::DegreeMismatch { n: 0, m });
    }
    if s == 0 {
        return Err(CosetError::ZeroMultiplier);
    }
    let q = 1u64 << m;
    let modulus = q + 1;
    let t = gcd(s, modulus);
    let h = modulus / t;
    let mut table = CosetTable::zeros(modulus);
    for j1 in 0..modulus {
        for j2 in 0..modulus {
            let (i1, i2) = (j1 % h, j2 % h);
            let value = if (j1, j2) == (0, 0) {
                q - 2
            } else if i1 != i2 || j1 == j2 {
                0
            } else if i1 == 0 {
                // (hj1, hj2): both off the origin
                u64::from(j1 != 0 && j2 != 0)
            } else {
                1
            };
            let slot = table.slot(j1, j2);
            table.cells[slot] = value;
        }
    }
    Ok(table)
}

/// Whether the nonzero sums `alpha^i + alpha^j`, 0 ≤ i ≤ j ≤ p^m, are pairwise
/// distinct, for alpha of order p^m + 1 in a field of degree 2km.
///
/// A nonzero sum a fixes the product as `a / a^(p^m)`, so {alpha^i, alpha^j}
/// are the roots of one quadratic. Zero sums carry no such information and
/// do collide: `alpha^i + alpha^i` in characteristic 2, and
/// `alpha^i + alpha^(i + (p^m+1)/2)` for odd p. They are skipped.
pub fn unit_circle_sum_unique(fs: &FieldSpec, m: u32) -> Result<bool, CosetError> {
    if m == 0 || !fs.degree().is_multiple_of(2 * m) {
        return Err(CosetError::DegreeMismatch { n: fs.degree(), m });
    }
    let alpha = fs.unit_circle_generator(m);
    let modulus = (fs.characteristic() as u64).pow(m) + 1;
    let mut powers = Vec::with_capacity(modulus as usize);
    let mut g = 1;
    for _ in 0..modulus {
        powers.push(g);
        g = fs.mul(g, alpha);
    }
    let mut seen = vec![false; fs.order() as usize];
    for (i, &a) in powers.iter().enumerate() {
        for &b in &powers[i..] {
            let sum = fs.add(a, b) as usize;
            if sum == 0 {
                continue;
            }
            if seen[sum] {
                return Ok(false);
            }
            seen[sum] = true;
        }
    }
    Ok(true)
}

/// Row-major CSV of the sizes and Δ(x) = 0 counts.
pub fn write_csv<W: Write>(out: &mut W, sizes: &CosetTable, delta0: &CosetTable) -> io::Result<()> {
    writeln!(out, "j1,j2,size,delta0_count")?;
    for j1 in 0..sizes.modulus {
        for j2 in 0..sizes.modulus {
            writeln!(out, "{j1},{j2},{},{}", sizes.get(j1, j2), delta0.get(j1, j2))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_is_outside_in_characteristic_two() {
        let fs = FieldSpec::new(2, 4).unwrap();
        assert_eq!(coset_of(&fs, 2, 1), Err(CosetError::OutsideSharpSet(1)));
        assert_eq!(coset_of(&fs, 2, 0), Err(CosetError::OutsideSharpSet(0)));
        let f25 = FieldSpec::new(5, 2).unwrap();
        assert!(coset_of(&f25, 1, 1).is_ok());
        assert_eq!(coset_of(&f25, 1, 4), Err(CosetError::OutsideSharpSet(4)));
    }

    #[test]
    fn partition_totals() {
        let f16 = FieldSpec::new(2, 4).unwrap();
        let sizes = partition_sizes(&f16, 2).unwrap();
        assert_eq!(sizes.total(), 14);
        assert_eq!(sizes.get(0, 0), 2);
        assert_eq!(partition_sizes(&FieldSpec::new(3, 2).unwrap(), 1).unwrap().total(), 7);
        assert_eq!(partition_sizes(&FieldSpec::new(5, 4).unwrap(), 2).unwrap().total(), 623);
    }

    #[test]
    fn cell_zero_zero_members() {
        let fs = FieldSpec::new(5, 4).unwrap();
        for x in fs.elements() {
            if let Ok(c) = coset_of(&fs, 2, x) {
                let both = fs.ind(x).unwrap().is_multiple_of(26) && fs.ind(fs.succ(x)).unwrap().is_multiple_of(26);
                assert_eq!((c.j1, c.j2) == (0, 0), both);
            }
        }
    }

    #[test]
    fn delta_zero_cells_over_f16() {
        let fs = FieldSpec::new(2, 4).unwrap();
        let table = delta_zero_coset_table(&fs, 2, 1).unwrap();
        assert_eq!(table.get(0, 0), 2);
        for i in 1..5 {
            assert_eq!(table.get(i, i), 0);
        }
        assert_eq!(table.total(), 2);
        assert_eq!(table, characteristic_two_prediction(2, 1).unwrap());
    }

    #[test]
    fn prediction_total() {
        for m in 2..=6 {
            let q = 1u64 << m;
            for s in 1..=q {
                let t = gcd(s, q + 1);
                if (q + 1) / t <= 3 {
                    continue;
                }
                assert_eq!(characteristic_two_prediction(m, s).unwrap().total(), t * (q - 1) - 1);
            }
        }
    }

    #[test]
    fn sums_on_the_unit_circle_are_distinct() {
        for (p, n, m) in [(2, 4, 2), (3, 2, 1), (5, 4, 2), (2, 8, 2), (3, 4, 1)] {
            assert!(unit_circle_sum_unique(&FieldSpec::new(p, n).unwrap(), m).unwrap());
        }
    }

    #[test]
    fn only_zero_sums_collide() {
        for (p, n, m) in [(2, 4, 2), (3, 2, 1), (5, 2, 1), (7, 2, 1)] {
            let fs = FieldSpec::new(p, n).unwrap();
            let alpha = fs.unit_circle_generator(m);
            let modulus = (p as u32).pow(m) + 1;
            let powers: Vec<FieldElement> =
                (0..modulus).map(|i| fs.exp(i as u64 * fs.ind(alpha).unwrap() as u64)).collect();
            let mut zero_pairs = 0;
            for i in 0..modulus as usize {
                for j in i..modulus as usize {
                    if fs.add(powers[i], powers[j]) == 0 {
                        zero_pairs += 1;
                    }
                }
            }
            let expected = if p == 2 { modulus } else { modulus / 2 };
            assert_eq!(zero_pairs, expected, "p = {p}");
        }
    }

    #[test]
    fn csv_layout() {
        let fs = FieldSpec::new(2, 4).unwrap();
        let sizes = partition_sizes(&fs, 2).unwrap();
        let d0 = delta_zero_coset_table(&fs, 2, 1).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &sizes, &d0).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 26);
        assert_eq!(lines[0], "j1,j2,size,delta0_count");
        assert_eq!(lines[1], "0,0,2,2");
    }
}
