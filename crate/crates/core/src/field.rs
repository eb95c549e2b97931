//! Construction of F_{p^n} and table-driven element arithmetic.
//!
//! Elements are encoded as integers in `[0, p^n)`: the base-p digits of the
//! encoding are the coordinates in the polynomial basis `1, x, ..., x^(n-1)`,
//! so `0` is the zero element, `1` is the identity and the prime subfield is
//! exactly the encodings `0..p`. Multiplication goes through discrete-log
//! tables with respect to a fixed primitive element `psi`; addition is
//! digit-wise modulo `p`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{is_prime, prime_divisors};
use crate::poly;

/// Canonical integer encoding of an element, always read relative to one [`FieldSpec`].
pub type FieldElement = u32;

/// Default cap on `p^n` for table-backed fields.
pub const DEFAULT_MAX_ELEMENTS: u64 = 1 << 26;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field with {p}^{n} elements exceeds the element budget of {budget}")]
    FieldTooLarge { p: u64, n: u32, budget: u64 },
    #[error("polynomial {0:?} is not monic irreducible of the requested degree")]
    ReducedPolynomial(Vec<u32>),
    #[error("element {0} does not have full multiplicative order")]
    NotPrimitive(u64),
    #[error("discrete logarithm of zero is undefined")]
    LogOfZero,
    #[error("exponent 0 is not accepted")]
    ZeroExponent,
}

/// Optional knobs for [`build_field`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldOptions {
    /// Monic irreducible of degree n, constant term first (length n + 1).
    pub poly: Option<Vec<u32>>,
    /// Encoding of the primitive element to use.
    pub psi: Option<u64>,
    pub max_elements: u64,
}

impl Default for FieldOptions {
    fn default() -> Self {
        FieldOptions { poly: None, psi: None, max_elements: DEFAULT_MAX_ELEMENTS }
    }
}

/// Serialized form of a field: the tables are rebuilt on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub n: u32,
    pub poly: Vec<u32>,
    pub psi: u32,
}

/// A fully constructed F_{p^n}. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    order: u32,
    poly: Vec<u32>,
    psi: u32,
    log: Vec<u32>,
    antilog: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("poly", &self.poly)
            .field("psi", &self.psi)
            .finish()
    }
}

fn digits_of(mut e: u64, p: u64, n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(e % p);
        e /= p;
    }
    out
}

fn encode(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Build F_{p^n}.
///
/// Without overrides the modulus is the smallest monic irreducible of degree
/// `n`, ordering candidates by the integer whose base-p digits are the
/// non-leading coefficients (constant term least significant), and `psi` is
/// the smallest encoding of full multiplicative order.
pub fn build_field(p: u64, n: u32, opts: &FieldOptions) -> Result<FieldSpec, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NonPrimeCharacteristic(p));
    }
    if n == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let too_large = FieldError::FieldTooLarge { p, n, budget: opts.max_elements };
    let order = p.checked_pow(n).ok_or(too_large.clone())?;
    if order > opts.max_elements || order > u32::MAX as u64 {
        return Err(too_large);
    }
    let nn = n as usize;

    let poly: Vec<u64> = match &opts.poly {
        Some(given) => {
            let f: Vec<u64> = given.iter().map(|&c| c as u64).collect();
            let well_formed = f.len() == nn + 1 && f.iter().all(|&c| c < p) && f[nn] == 1;
            if !well_formed || !poly::is_irreducible(&f, p) {
                return Err(FieldError::ReducedPolynomial(given.clone()));
            }
            f
        }
        None => (0..order)
            .map(|low| {
                let mut f = digits_of(low, p, nn);
                f.push(1);
                f
            })
            .find(|f| poly::is_irreducible(f, p))
            .expect("an irreducible polynomial exists in every degree"),
    };

    let group_order = order - 1;
    let factors = prime_divisors(group_order);
    let one = poly::reduce(&[1], &poly, p);
    let has_full_order = |e: u64| -> bool {
        if e == 0 || e >= order {
            return false;
        }
        let g = digits_of(e, p, nn);
        factors.iter().all(|&r| poly::pow_mod(&g, (group_order / r) as u128, &poly, p) != one)
    };
    let psi = match opts.psi {
        Some(e) => {
            if !has_full_order(e) {
                return Err(FieldError::NotPrimitive(e));
            }
            e
        }
        None => (1..order).find(|&e| has_full_order(e)).expect("F_q^* is cyclic"),
    };

    let (log, antilog) = power_tables(p, nn, &poly, psi, order);
    Ok(FieldSpec {
        p: p as u32,
        n,
        order: order as u32,
        poly: poly.iter().map(|&c| c as u32).collect(),
        psi: psi as u32,
        log,
        antilog,
    })
}

/// Powers of psi by repeated multiplication; psi is nearly always of low
/// degree so this is O(n * deg psi) per step.
fn power_tables(p: u64, n: usize, f: &[u64], psi: u64, order: u64) -> (Vec<u32>, Vec<u32>) {
    let psi_digits = digits_of(psi, p, n);
    let terms: Vec<(usize, u64)> =
        psi_digits.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c)).collect();
    let max_shift = terms.last().map_or(0, |t| t.0);

    let group_order = (order - 1) as usize;
    let mut antilog = vec![0u32; group_order];
    let mut log = vec![NO_LOG; order as usize];
    let mut cur = vec![0u64; n];
    cur[0] = 1;
    let mut shifted = vec![0u64; n];
    let mut next = vec![0u64; n];
    for (i, slot) in antilog.iter_mut().enumerate() {
        let enc = encode(&cur, p) as u32;
        *slot = enc;
        log[enc as usize] = i as u32;

        next.iter_mut().for_each(|c| *c = 0);
        shifted.copy_from_slice(&cur);
        let mut term = terms.iter().peekable();
        for k in 0..=max_shift {
            if let Some(&(_, c)) = term.next_if(|t| t.0 == k) {
                for (acc, &s) in next.iter_mut().zip(&shifted) {
                    *acc = (*acc + c * s) % p;
                }
            }
            if k < max_shift {
                // multiply `shifted` by x and reduce by the modulus
                let top = shifted[n - 1];
                for j in (1..n).rev() {
                    shifted[j] = shifted[j - 1];
                }
                shifted[0] = 0;
                if top != 0 {
                    for (s, &fj) in shifted.iter_mut().zip(&f[..n]) {
                        *s = (*s + (p - fj) * top) % p;
                    }
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    debug_assert!(log[1..].iter().all(|&l| l != NO_LOG));
    (log, antilog)
}

impl FieldSpec {
    /// Deterministic default field; see [`build_field`].
    pub fn new(p: u64, n: u32) -> Result<FieldSpec, FieldError> {
        build_field(p, n, &FieldOptions::default())
    }

    pub fn from_descriptor(desc: &FieldDescriptor, max_elements: u64) -> Result<FieldSpec, FieldError> {
        let opts = FieldOptions { poly: Some(desc.poly.clone()), psi: Some(desc.psi as u64), max_elements };
        build_field(desc.p as u64, desc.n, &opts)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, n: self.n, poly: self.poly.clone(), psi: self.psi }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Number of elements, p^n.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Order of the multiplicative group, p^n - 1.
    pub fn group_order(&self) -> u32 {
        self.order - 1
    }

    pub fn poly(&self) -> &[u32] {
        &self.poly
    }

    pub fn psi(&self) -> FieldElement {
        self.psi
    }

    pub fn log_table(&self) -> &[u32] {
        &self.log
    }

    pub fn antilog_table(&self) -> &[u32] {
        &self.antilog
    }

    pub fn elements(&self) -> std::ops::Range<FieldElement> {
        0..self.order
    }

    /// The element `c mod p` of the prime subfield.
    pub fn constant(&self, c: i64) -> FieldElement {
        c.rem_euclid(self.p as i64) as FieldElement
    }

    pub fn in_prime_subfield(&self, x: FieldElement) -> bool {
        x < self.p
    }

    /// Discrete logarithm to the base psi, in `[0, p^n - 2]`.
    pub fn ind(&self, x: FieldElement) -> Result<u32, FieldError> {
        match self.log[x as usize] {
            NO_LOG => Err(FieldError::LogOfZero),
            l => Ok(l),
        }
    }

    /// psi^e for any exponent.
    pub fn exp(&self, e: u64) -> FieldElement {
        self.antilog[(e % self.group_order() as u64) as usize]
    }

    /// x^d; `0^d = 0`. Exponents at or beyond p^n - 1 are reduced internally.
    pub fn pow_map(&self, d: u64, x: FieldElement) -> Result<FieldElement, FieldError> {
        if d == 0 {
            return Err(FieldError::ZeroExponent);
        }
        Ok(self.pow_nonzero_exponent(d, x))
    }

    pub(crate) fn pow_nonzero_exponent(&self, d: u64, x: FieldElement) -> FieldElement {
        if x == 0 {
            return 0;
        }
        let g = self.group_order() as u64;
        let e = (self.log[x as usize] as u64 * (d % g)) % g;
        self.antilog[e as usize]
    }

    /// The whole map `x -> x^d` as a table indexed by encoding.
    pub fn power_table(&self, d: u64) -> Result<Vec<FieldElement>, FieldError> {
        if d == 0 {
            return Err(FieldError::ZeroExponent);
        }
        Ok(self.elements().map(|x| self.pow_nonzero_exponent(d, x)).collect())
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.p == 2 {
            return x ^ y;
        }
        let p = self.p;
        let (mut x, mut y) = (x, y);
        let mut out = 0;
        let mut place = 1;
        while x | y != 0 {
            let s = x % p + y % p;
            out += (if s >= p { s - p } else { s }) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.p == 2 {
            return x ^ y;
        }
        let p = self.p;
        let (mut x, mut y) = (x, y);
        let mut out = 0;
        let mut place = 1;
        while x | y != 0 {
            let (a, b) = (x % p, y % p);
            out += (if a >= b { a - b } else { a + p - b }) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        self.sub(0, x)
    }

    /// `x + 1`, touching only the constant digit.
    #[inline]
    pub fn succ(&self, x: FieldElement) -> FieldElement {
        if x % self.p == self.p - 1 {
            x + 1 - self.p
        } else {
            x + 1
        }
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x == 0 || y == 0 {
            return 0;
        }
        let g = self.group_order() as u64;
        let e = (self.log[x as usize] as u64 + self.log[y as usize] as u64) % g;
        self.antilog[e as usize]
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        let l = self.ind(x)? as u64;
        let g = self.group_order() as u64;
        Ok(self.antilog[((g - l) % g) as usize])
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// Generator of the order-(p^m + 1) subgroup, for `2m | n`. This is
    /// `psi^(p^m - 1)` when n = 2m.
    pub fn unit_circle_generator(&self, m: u32) -> FieldElement {
        debug_assert!(m >= 1 && self.n.is_multiple_of(2 * m));
        let circle = (self.p as u64).pow(m) + 1;
        self.exp(self.group_order() as u64 / circle)
    }
}
