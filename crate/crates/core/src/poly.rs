//! Dense polynomials over F_p, coefficients stored constant term first.
//!
//! Only what the field builder needs: reduction modulo a monic polynomial,
//! modular exponentiation and gcd, which together give the Rabin
//! irreducibility test.

use crate::arith::prime_divisors;

pub(crate) type Poly = Vec<u64>;

fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn degree(a: &Poly) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_scalar(a % p, p - 2, p)
}

fn pow_scalar(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Reduce `a` modulo the monic `f`; the result has length `deg f`.
pub(crate) fn reduce(a: &[u64], f: &[u64], p: u64) -> Poly {
    let n = f.len() - 1;
    let mut r: Poly = a.iter().map(|&c| c % p).collect();
    if r.len() < n {
        r.resize(n, 0);
    }
    for top in (n..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        // x^top = x^(top-n) * x^n and x^n = -(f_0 + ... + f_{n-1} x^{n-1})
        for (j, &fj) in f[..n].iter().enumerate() {
            let idx = top - n + j;
            r[idx] = (r[idx] + (p - fj % p) * c) % p;
        }
        r[top] = 0;
    }
    r.truncate(n);
    r
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![0; f.len() - 1];
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    reduce(&prod, f, p)
}

pub(crate) fn pow_mod(base: &[u64], mut exp: u128, f: &[u64], p: u64) -> Poly {
    let n = f.len() - 1;
    let mut acc = reduce(&[1], f, p);
    let mut b = reduce(base, f, p);
    debug_assert_eq!(acc.len(), n);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        exp >>= 1;
        if exp > 0 {
            b = mul_mod(&b, &b, f, p);
        }
    }
    acc
}

fn rem(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut a = a.clone();
    trim(&mut a);
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[db], p);
    while let Some(da) = degree(&a) {
        if da < db {
            break;
        }
        let c = a[da] * lead_inv % p;
        for (j, &bj) in b[..=db].iter().enumerate() {
            let idx = da - db + j;
            a[idx] = (a[idx] + (p - bj) * c) % p;
        }
        trim(&mut a);
    }
    a
}

pub(crate) fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut a = a.clone();
    let mut b = b.clone();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// x^(p^k) mod f for k = 0..=n, by repeated Frobenius.
fn frobenius_powers(f: &[u64], p: u64) -> Vec<Poly> {
    let n = f.len() - 1;
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = reduce(&[0, 1], f, p);
    out.push(cur.clone());
    for _ in 0..n {
        cur = pow_mod(&cur, p as u128, f, p);
        out.push(cur.clone());
    }
    out
}

/// Rabin's test: `f` (monic, degree n) is irreducible over F_p iff
/// x^(p^n) = x mod f and gcd(x^(p^(n/r)) - x, f) = 1 for each prime r | n.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 || f[n] % p != 1 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = reduce(&[0, 1], f, p);
    let frob = frobenius_powers(f, p);
    if frob[n] != x {
        return false;
    }
    for r in prime_divisors(n as u64) {
        let k = n / r as usize;
        let mut g = frob[k].clone();
        for (gi, xi) in g.iter_mut().zip(&x) {
            *gi = (*gi + p - xi) % p;
        }
        let common = gcd(&f.to_vec(), &g, p);
        if degree(&common) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Irreducibility by exhaustive search for a monic factor of degree <= n/2.
    fn irreducible_by_search(f: &[u64], p: u64) -> bool {
        let n = f.len() - 1;
        for d in 1..=n / 2 {
            let count = p.pow(d as u32);
            for low in 0..count {
                let mut g: Poly = (0..d).map(|i| low / p.pow(i as u32) % p).collect();
                g.push(1);
                if rem(&f.to_vec(), &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_agrees_with_factor_search() {
        for (p, n) in [(2u64, 2usize), (2, 3), (2, 4), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)] {
            let total = p.pow(n as u32);
            for low in 0..total {
                let mut f: Poly = (0..n).map(|i| low / p.pow(i as u32) % p).collect();
                f.push(1);
                assert_eq!(is_irreducible(&f, p), irreducible_by_search(&f, p), "p={p} f={f:?}");
            }
        }
    }

    #[test]
    fn known_polynomials() {
        // x^2 + x + 1 over F_2, x^4 + x + 1 over F_2
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
        // x^4 + 1 = (x + 1)^4 over F_2
        assert!(!is_irreducible(&[1, 0, 0, 0, 1], 2));
        // x^2 + 1 over F_3 is irreducible, over F_5 it splits
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 5));
    }

    #[test]
    fn pow_mod_matches_repeated_multiplication() {
        let f = [1u64, 1, 0, 0, 1];
        let x = [0u64, 1];
        let mut acc = reduce(&[1], &f, 2);
        for e in 0..20u128 {
            assert_eq!(pow_mod(&x, e, &f, 2), acc);
            acc = mul_mod(&acc, &x, &f, 2);
        }
    }
}
