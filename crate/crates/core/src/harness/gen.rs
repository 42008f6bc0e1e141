//! Enumeration and seeded random generation of instances.
//!
//! Every generated number is a rational with a bounded denominator, so all
//! downstream checks stay exact.

use crate::exact::int;
use crate::fourier::{BooleanFunction, FourierError, Partition, RealFunction};
use crate::rv::DiscreteRV;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// Largest `m` for [`enumerate_boolean_functions`].
pub const MAX_ENUMERATE_VARS: usize = 4;

/// Grid for random random variables: values `n/q` with `|n/q| ≤ value_range`
/// and `q ≤ value_denom_cap`; probabilities `k/D` with `D ≤ prob_denom_cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RvGrid {
    pub value_range: i64,
    pub value_denom_cap: i64,
    pub prob_denom_cap: i64,
}

impl Default for RvGrid {
    fn default() -> Self {
        Self { value_range: 4, value_denom_cap: 4, prob_denom_cap: 12 }
    }
}

impl RvGrid {
    /// Number of distinct values the grid can produce (an upper bound when
    /// fractions coincide, exact for `value_denom_cap = 1`).
    pub fn max_support(&self) -> usize {
        if self.value_range < 0 || self.value_denom_cap < 1 {
            return 0;
        }
        let mut values = BTreeSet::new();
        for q in 1..=self.value_denom_cap.min(64) {
            for n in -self.value_range * q..=self.value_range * q {
                values.insert(BigRational::new(BigInt::from(n), BigInt::from(q)));
                if values.len() > 4096 {
                    return values.len();
                }
            }
        }
        values.len()
    }

    pub fn random_value<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let q = rng.gen_range(1..=self.value_denom_cap);
        let n = rng.gen_range(-self.value_range * q..=self.value_range * q);
        BigRational::new(BigInt::from(n), BigInt::from(q))
    }

    /// A probability in `[lo, hi)` (or `[lo, hi]` when `inclusive`), as
    /// `k/D` with `D ≤ prob_denom_cap`. Falls back to `lo` when no grid point
    /// fits.
    pub fn random_probability<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        lo: &BigRational,
        hi: &BigRational,
        inclusive: bool,
    ) -> BigRational {
        let mut candidates = Vec::new();
        for d in 1..=self.prob_denom_cap {
            for k in 0..=d {
                let p = BigRational::new(BigInt::from(k), BigInt::from(d));
                let below = if inclusive { p <= *hi } else { p < *hi };
                if p >= *lo && below && !candidates.contains(&p) {
                    candidates.push(p);
                }
            }
        }
        candidates.choose(rng).cloned().unwrap_or_else(|| lo.clone())
    }
}

/// Per-instance generator: a ChaCha stream chosen by the instance index
/// under a shared seed, so results do not depend on evaluation order.
pub fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// All `2^{2^m}` Boolean functions on `m ≤ 4` variables, in the order of
/// their tables read as integers (bit `x` set when `f(x) = -1`).
pub fn enumerate_boolean_functions(m: usize) -> Result<impl Iterator<Item = BooleanFunction>, FourierError> {
    if m == 0 || m > MAX_ENUMERATE_VARS {
        return Err(FourierError::VariableCount(m));
    }
    let count = 1u64 << (1u64 << m);
    Ok((0..count).map(move |bits| BooleanFunction::from_bits(m, bits).expect("m checked")))
}

/// A random variable with exactly `support_size` atoms, deterministic in
/// `seed`.
pub fn random_rv(support_size: usize, seed: u64, grid: &RvGrid) -> DiscreteRV {
    random_rv_with(&mut ChaCha8Rng::seed_from_u64(seed), support_size, grid)
}

/// [`random_rv`] driven by a caller-owned generator. The support size is
/// clamped to what the grid can produce.
pub fn random_rv_with<R: Rng + ?Sized>(rng: &mut R, support_size: usize, grid: &RvGrid) -> DiscreteRV {
    let support = support_size.max(1).min(grid.max_support().max(1));
    let mut values = BTreeSet::new();
    while values.len() < support {
        values.insert(grid.random_value(rng));
    }
    let probs = random_composition(rng, support, grid.prob_denom_cap);
    DiscreteRV::from_atoms(values.into_iter().zip(probs)).expect("composition sums to one")
}

/// `parts` positive probabilities `k_i/D` summing to one, with
/// `parts ≤ D ≤ max(cap, parts)`.
fn random_composition<R: Rng + ?Sized>(rng: &mut R, parts: usize, cap: i64) -> Vec<BigRational> {
    let lo = parts as i64;
    let d = rng.gen_range(lo..=cap.max(lo));
    let mut cuts: Vec<i64> = rand::seq::index::sample(rng, (d - 1) as usize, parts - 1)
        .into_iter()
        .map(|c| c as i64 + 1)
        .collect();
    cuts.sort_unstable();
    let mut prev = 0;
    let mut out = Vec::with_capacity(parts);
    for c in cuts.into_iter().chain(std::iter::once(d)) {
        out.push(BigRational::new(BigInt::from(c - prev), BigInt::from(d)));
        prev = c;
    }
    out
}

/// A mean-zero random variable: a centered [`random_rv_with`].
pub fn random_balanced_rv<R: Rng + ?Sized>(rng: &mut R, support_size: usize, grid: &RvGrid) -> DiscreteRV {
    random_rv_with(rng, support_size, grid).center()
}

/// A real function whose values are `k/2^j` with `j ≤ 4` and magnitude at
/// most `range`, so every value and coefficient is exact in `f64`.
pub fn random_real_function<R: Rng + ?Sized>(rng: &mut R, m: usize, range: i64) -> RealFunction {
    let table = (0..1usize << m)
        .map(|_| {
            let j = rng.gen_range(0..=4);
            let scale = 1i64 << j;
            rng.gen_range(-range * scale..=range * scale) as f64 / scale as f64
        })
        .collect();
    RealFunction::new(m, table).expect("valid size")
}

pub fn random_boolean_function<R: Rng + ?Sized>(rng: &mut R, m: usize) -> BooleanFunction {
    BooleanFunction::from_predicate(m, |_| rng.gen_bool(0.5)).expect("valid m")
}

/// A uniformly shuffled partition of `[m]` into `blocks` nonempty blocks.
pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, m: usize, blocks: usize) -> Result<Partition, FourierError> {
    if blocks == 0 || blocks > m {
        return Err(FourierError::InvalidPartition(format!("cannot split {m} variables into {blocks} blocks")));
    }
    let mut vars: Vec<usize> = (0..m).collect();
    vars.shuffle(rng);
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, m - 1, blocks - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(blocks);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(m)) {
        out.push(vars[prev..c].to_vec());
        prev = c;
    }
    Partition::new(m, out)
}

/// Zero a quarter of the time, otherwise a random grid value.
pub fn random_shift<R: Rng + ?Sized>(rng: &mut R, grid: &RvGrid) -> BigRational {
    if rng.gen_bool(0.25) {
        int(0)
    } else {
        grid.random_value(rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Signed, Zero};

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_boolean_functions(1).unwrap().count(), 4);
        assert_eq!(enumerate_boolean_functions(2).unwrap().count(), 16);
        assert_eq!(enumerate_boolean_functions(4).unwrap().count(), 65536);
        assert!(enumerate_boolean_functions(5).is_err());
        let all: Vec<_> = enumerate_boolean_functions(1).unwrap().collect();
        assert_eq!(all[0].table(), &[1, 1]);
        assert_eq!(all[1].table(), &[-1, 1]);
        assert_eq!(all[3].table(), &[-1, -1]);
    }

    #[test]
    fn random_rv_shape() {
        let grid = RvGrid::default();
        assert!(random_rv(1, 3, &grid).is_constant());
        assert_eq!(random_rv(5, 11, &grid), random_rv(5, 11, &grid));
        for seed in 0..200 {
            let x = random_rv(5, seed, &grid);
            assert_eq!(x.support_size(), 5);
            let total: BigRational = x.atoms().iter().map(|(_, p)| p.clone()).sum();
            assert!(total.is_one());
            for (v, p) in x.atoms() {
                assert!(*p.denom() <= BigInt::from(12));
                assert!(*v.denom() <= BigInt::from(4));
                assert!(v.abs() <= int(4));
            }
        }
    }

    #[test]
    fn tiny_grids_clamp_support() {
        let grid = RvGrid { value_range: 1, value_denom_cap: 1, prob_denom_cap: 2 };
        assert_eq!(grid.max_support(), 3);
        let x = random_rv(5, 0, &grid);
        assert_eq!(x.support_size(), 3);
        let total: BigRational = x.atoms().iter().map(|(_, p)| p.clone()).sum();
        assert!(total.is_one());
    }

    #[test]
    fn balanced_and_partitions() {
        let mut rng = instance_rng(1, 2);
        let grid = RvGrid::default();
        for _ in 0..50 {
            assert!(random_balanced_rv(&mut rng, 4, &grid).expectation().is_zero());
            let p = random_partition(&mut rng, 5, 3).unwrap();
            assert_eq!(p.len(), 3);
        }
        assert!(random_partition(&mut rng, 2, 3).is_err());
    }

    #[test]
    fn streams_are_independent_of_order() {
        let a: u64 = instance_rng(9, 5).gen();
        let _ = instance_rng(9, 4).gen::<u64>();
        let b: u64 = instance_rng(9, 5).gen();
        assert_eq!(a, b);
        assert_ne!(a, instance_rng(9, 6).gen::<u64>());
    }

    #[test]
    fn probabilities_respect_bounds() {
        let grid = RvGrid::default();
        let mut rng = instance_rng(0, 0);
        for _ in 0..100 {
            let p = grid.random_probability(&mut rng, &crate::exact::rat(1, 4), &crate::exact::rat(1, 2), false);
            assert!(p >= crate::exact::rat(1, 4) && p < crate::exact::rat(1, 2));
        }
    }
}
