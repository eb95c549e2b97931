//! Exhaustive differential and boomerang counts for power maps.
//!
//! Every scan splits its outer range into contiguous blocks, one per worker.
//! Workers fill private histograms which are summed at the end, so results
//! are bit-identical for any worker count.

use std::ops::Range;

use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};
use crate::spectrum::{Spectrum, SpectrumKind};

/// Default cap on p^(2n) for pair scans.
pub const DEFAULT_MAX_PAIRS: u128 = 1 << 34;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("derivative direction a must be nonzero")]
    ZeroDerivativeDirection,
    #[error("boomerang arguments a and b must both be nonzero")]
    ZeroArgument,
    #[error("pair scan of {pairs} pairs exceeds the pair budget of {budget}")]
    PairBudgetExceeded { pairs: u128, budget: u128 },
    #[error("parametrized exponent needs n = 2m, got n = {n}, m = {m}")]
    DegreeMismatch { n: u32, m: u32 },
    #[error("s must be at least 1")]
    ZeroMultiplier,
    #[error("exponent s(p^m - 1) overflows 64 bits")]
    ExponentOverflow,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    pub workers: usize,
    pub max_pairs: u128,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { workers: 1, max_pairs: DEFAULT_MAX_PAIRS }
    }
}

impl EngineConfig {
    pub fn with_workers(workers: usize) -> Self {
        EngineConfig { workers, ..EngineConfig::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentOrigin {
    Explicit,
    /// d = s(p^m - 1) over a field of degree 2m.
    Parametrized {
        s: u64,
        m: u32,
    },
}

/// `f(x) = x^d` bound to a field, with its value table.
#[derive(Debug, Clone)]
pub struct PowerMapSpec<'f> {
    field: &'f FieldSpec,
    d: u64,
    origin: ExponentOrigin,
    values: Vec<FieldElement>,
}

impl<'f> PowerMapSpec<'f> {
    pub fn new(field: &'f FieldSpec, d: u64) -> Result<Self, EngineError> {
        let values = field.power_table(d)?;
        Ok(PowerMapSpec { field, d, origin: ExponentOrigin::Explicit, values })
    }

    pub fn parametrized(field: &'f FieldSpec, s: u64, m: u32) -> Result<Self, EngineError> {
        if m == 0 || field.degree() != 2 * m {
            return Err(EngineError::DegreeMismatch { n: field.degree(), m });
        }
        if s == 0 {
            return Err(EngineError::ZeroMultiplier);
        }
        let q = (field.characteristic() as u64).pow(m);
        let d = s.checked_mul(q - 1).ok_or(EngineError::ExponentOverflow)?;
        let values = field.power_table(d)?;
        Ok(PowerMapSpec { field, d, origin: ExponentOrigin::Parametrized { s, m }, values })
    }

    pub fn field(&self) -> &'f FieldSpec {
        self.field
    }

    pub fn exponent(&self) -> u64 {
        self.d
    }

    pub fn origin(&self) -> ExponentOrigin {
        self.origin
    }

    #[inline]
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.values[x as usize]
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }
}

/// Split `0..len` into `workers` contiguous blocks, run `scan` on each with a
/// private zeroed histogram of `bins` slots and sum the results.
fn partitioned_histogram<F>(len: u32, bins: usize, workers: usize, scan: F) -> Vec<u64>
where
    F: Fn(Range<u32>, &mut [u64]) + Sync,
{
    let workers = workers.clamp(1, len.max(1) as usize);
    if workers == 1 {
        let mut hist = vec![0u64; bins];
        scan(0..len, &mut hist);
        return hist;
    }
    let chunk = (len as usize).div_ceil(workers) as u32;
    let blocks: Vec<Range<u32>> =
        (0..workers as u32).map(|w| (w * chunk).min(len)..((w + 1) * chunk).min(len)).collect();
    let partials: Vec<Vec<u64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = blocks
            .into_iter()
            .map(|block| {
                let scan = &scan;
                scope.spawn(move || {
                    let mut hist = vec![0u64; bins];
                    scan(block, &mut hist);
                    hist
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    });
    let mut total = vec![0u64; bins];
    for part in partials {
        for (t, v) in total.iter_mut().zip(part) {
            *t += v;
        }
    }
    total
}

/// #{x : f(x + a) - f(x) = b}.
pub fn delta(pm: &PowerMapSpec, a: FieldElement, b: FieldElement) -> Result<u64, EngineError> {
    if a == 0 {
        return Err(EngineError::ZeroDerivativeDirection);
    }
    let fs = pm.field;
    Ok(fs.elements().filter(|&x| fs.sub(pm.eval(fs.add(x, a)), pm.eval(x)) == b).count() as u64)
}

/// delta(1, b) for every b, indexed by encoding of b.
pub fn derivative_counts(pm: &PowerMapSpec, workers: usize) -> Vec<u64> {
    let fs = pm.field;
    partitioned_histogram(fs.order(), fs.order() as usize, workers, |xs, hist| {
        for x in xs {
            let b = fs.sub(pm.eval(fs.succ(x)), pm.eval(x));
            hist[b as usize] += 1;
        }
    })
}

/// One pass over x, bucketing (x + 1)^d - x^d.
pub fn differential_spectrum(pm: &PowerMapSpec, cfg: &EngineConfig) -> Spectrum {
    Spectrum::from_counts(SpectrumKind::Differential, &derivative_counts(pm, cfg.workers))
}

fn check_pair_budget(fs: &FieldSpec, cfg: &EngineConfig) -> Result<(), EngineError> {
    let pairs = (fs.order() as u128).pow(2);
    if pairs > cfg.max_pairs {
        return Err(EngineError::PairBudgetExceeded { pairs, budget: cfg.max_pairs });
    }
    Ok(())
}

/// Number of (x, y) with f(x) - f(y) = b and f(x + a) - f(y + a) = b.
pub fn beta(pm: &PowerMapSpec, a: FieldElement, b: FieldElement, cfg: &EngineConfig) -> Result<u64, EngineError> {
    if a == 0 || b == 0 {
        return Err(EngineError::ZeroArgument);
    }
    let fs = pm.field;
    check_pair_budget(fs, cfg)?;
    let shifted: Vec<FieldElement> = fs.elements().map(|x| pm.eval(fs.add(x, a))).collect();
    let hist = partitioned_histogram(fs.order(), 1, cfg.workers, |xs, hist| {
        for x in xs {
            let (fx, fxa) = (pm.eval(x), shifted[x as usize]);
            for y in fs.elements() {
                if fs.sub(fx, pm.eval(y)) == b && fs.sub(fxa, shifted[y as usize]) == b {
                    hist[0] += 1;
                }
            }
        }
    });
    Ok(hist[0])
}

/// beta(1, b) for every b (slot 0 is unused and stays 0), from a single
/// pass over all pairs (x, y).
///
/// For each x the differences against every value in the image of f are
/// tabulated once, so the inner loop over y is two small-table lookups.
pub fn boomerang_counts(pm: &PowerMapSpec, cfg: &EngineConfig) -> Result<Vec<u64>, EngineError> {
    let fs = pm.field;
    check_pair_budget(fs, cfg)?;
    let q = fs.order() as usize;

    const UNSEEN: u32 = u32::MAX;
    let mut slot = vec![UNSEEN; q];
    let mut image: Vec<FieldElement> = Vec::new();
    for &v in pm.values() {
        if slot[v as usize] == UNSEEN {
            slot[v as usize] = image.len() as u32;
            image.push(v);
        }
    }
    // (index of f(y), index of f(y + 1)) for every y
    let keys: Vec<(u32, u32)> =
        fs.elements().map(|y| (slot[pm.eval(y) as usize], slot[pm.eval(fs.succ(y)) as usize])).collect();

    Ok(partitioned_histogram(fs.order(), q, cfg.workers, |xs, hist| {
        let mut base = vec![0 as FieldElement; image.len()];
        let mut shifted = vec![0 as FieldElement; image.len()];
        for x in xs {
            let fx = pm.eval(x);
            let fx1 = pm.eval(fs.succ(x));
            for ((d0, d1), &v) in base.iter_mut().zip(shifted.iter_mut()).zip(&image) {
                *d0 = fs.sub(fx, v);
                *d1 = fs.sub(fx1, v);
            }
            for &(k0, k1) in &keys {
                let b = base[k0 as usize];
                if b != 0 && shifted[k1 as usize] == b {
                    hist[b as usize] += 1;
                }
            }
        }
    }))
}

/// Histogram of beta(1, b) over nonzero b.
pub fn boomerang_spectrum(pm: &PowerMapSpec, cfg: &EngineConfig) -> Result<Spectrum, EngineError> {
    let counts = boomerang_counts(pm, cfg)?;
    Ok(Spectrum::from_counts(SpectrumKind::Boomerang, &counts[1..]))
}

/// max delta(1, b) over b outside the prime subfield equals 2.
pub fn is_locally_apn(pm: &PowerMapSpec, cfg: &EngineConfig) -> bool {
    let fs = pm.field;
    derivative_counts(pm, cfg.workers)
        .iter()
        .enumerate()
        .filter(|&(b, _)| !fs.in_prime_subfield(b as FieldElement))
        .map(|(_, &c)| c)
        .max()
        == Some(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spectrum(entries: &[(u128, u128)], kind: SpectrumKind) -> Spectrum {
        Spectrum::from_entries(kind, entries.iter().copied())
    }

    #[test]
    fn identity_map_derivative_is_constant() {
        let fs = FieldSpec::new(3, 2).unwrap();
        let pm = PowerMapSpec::new(&fs, 1).unwrap();
        for a in 1..fs.order() {
            for b in fs.elements() {
                let expected = if b == a { fs.order() as u64 } else { 0 };
                assert_eq!(delta(&pm, a, b).unwrap(), expected);
            }
        }
        assert_eq!(delta(&pm, 0, 1), Err(EngineError::ZeroDerivativeDirection));
    }

    #[test]
    fn delta_examples_over_f625() {
        let fs = FieldSpec::new(5, 4).unwrap();
        let pm = PowerMapSpec::parametrized(&fs, 1, 2).unwrap();
        assert_eq!(pm.exponent(), 24);
        assert_eq!(delta(&pm, 1, 0).unwrap(), 23);
        assert_eq!(delta(&pm, 1, 1).unwrap(), 1);
    }

    #[test]
    fn cube_map_over_f16() {
        // brute force by hand: (x+1)^3 - x^3 = x^2 + x + 1 is 2-to-1 onto 8 values
        let fs = FieldSpec::new(2, 4).unwrap();
        let pm = PowerMapSpec::parametrized(&fs, 1, 2).unwrap();
        let ds = differential_spectrum(&pm, &EngineConfig::default());
        assert_eq!(ds, spectrum(&[(0, 8), (2, 8)], SpectrumKind::Differential));
        let cfg = EngineConfig::default();
        assert_eq!(beta(&pm, 1, 1, &cfg).unwrap(), 2);
    }

    #[test]
    fn identity_map_boomerang() {
        let fs = FieldSpec::new(3, 2).unwrap();
        let pm = PowerMapSpec::new(&fs, 1).unwrap();
        let cfg = EngineConfig::default();
        for b in 1..fs.order() {
            assert_eq!(beta(&pm, 2, b, &cfg).unwrap(), 9);
        }
        let bs = boomerang_spectrum(&pm, &cfg).unwrap();
        assert_eq!(bs, spectrum(&[(9, 8)], SpectrumKind::Boomerang));
        assert_eq!(beta(&pm, 1, 0, &cfg), Err(EngineError::ZeroArgument));
    }

    #[test]
    fn boomerang_pass_matches_per_b_enumeration() {
        for (p, n, d) in [(2u64, 4u32, 3u64), (3, 2, 2), (5, 2, 4), (2, 4, 7), (3, 3, 5)] {
            let fs = FieldSpec::new(p, n).unwrap();
            let pm = PowerMapSpec::new(&fs, d).unwrap();
            let cfg = EngineConfig::default();
            let counts = boomerang_counts(&pm, &cfg).unwrap();
            for b in 1..fs.order() {
                assert_eq!(counts[b as usize], beta(&pm, 1, b, &cfg).unwrap(), "p={p} n={n} d={d} b={b}");
            }
        }
    }

    #[test]
    fn budgets_fail_fast() {
        let fs = FieldSpec::new(2, 8).unwrap();
        let pm = PowerMapSpec::new(&fs, 3).unwrap();
        let cfg = EngineConfig { workers: 1, max_pairs: 1000 };
        assert_eq!(boomerang_counts(&pm, &cfg), Err(EngineError::PairBudgetExceeded { pairs: 65536, budget: 1000 }));
        assert!(matches!(beta(&pm, 1, 1, &cfg), Err(EngineError::PairBudgetExceeded { .. })));
    }

    #[test]
    fn parametrized_requires_even_degree() {
        let fs = FieldSpec::new(3, 3).unwrap();
        assert_eq!(PowerMapSpec::parametrized(&fs, 1, 1).unwrap_err(), EngineError::DegreeMismatch { n: 3, m: 1 });
        let fs = FieldSpec::new(3, 2).unwrap();
        assert_eq!(PowerMapSpec::parametrized(&fs, 0, 1).unwrap_err(), EngineError::ZeroMultiplier);
        assert!(matches!(PowerMapSpec::new(&fs, 0), Err(EngineError::Field(FieldError::ZeroExponent))));
    }

    #[test]
    fn locally_apn_examples() {
        let cfg = EngineConfig::default();
        let f625 = FieldSpec::new(5, 4).unwrap();
        assert!(is_locally_apn(&PowerMapSpec::new(&f625, 24).unwrap(), &cfg));
        assert!(!is_locally_apn(&PowerMapSpec::new(&f625, 1).unwrap(), &cfg));
        let f11 = FieldSpec::new(11, 4).unwrap();
        assert!(!is_locally_apn(&PowerMapSpec::new(&f11, 240).unwrap(), &cfg));
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let fs = FieldSpec::new(3, 4).unwrap();
        let pm = PowerMapSpec::parametrized(&fs, 2, 2).unwrap();
        let base_d = derivative_counts(&pm, 1);
        let base_b = boomerang_counts(&pm, &EngineConfig::with_workers(1)).unwrap();
        for w in [2, 3, 8, 200] {
            assert_eq!(derivative_counts(&pm, w), base_d);
            assert_eq!(boomerang_counts(&pm, &EngineConfig::with_workers(w)).unwrap(), base_b);
        }
    }
}
