//! The two extremal constructions: the tribes function (OR of two ANDs on
//! disjoint blocks), whose variance factor cannot be dropped from the
//! partition corollary, and the two-variable pair showing the
//! absolute-value transfer needs a constant of at least 4/3.

use crate::exact::{int, rat};
use crate::fourier::{BooleanFunction, FourierError, Partition, RealFunction, MAX_VARS};
use crate::rv::DiscreteRV;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Largest block size for [`tribes_example`].
pub const MAX_TRIBES_BLOCK: usize = MAX_VARS / 2;

/// `f = X ∨ Y` on `2m` variables with `X = ∧_{i≤m} x_i`, `Y = ∧_{i>m} x_i`,
/// reading `-1` as true; the partition is `{1..m} | {m+1..2m}`.
pub fn tribes_example(m: usize) -> Result<(BooleanFunction, Partition), FourierError> {
    if m == 0 || m > MAX_TRIBES_BLOCK {
        return Err(FourierError::VariableCount(2 * m));
    }
    let low = (1usize << m) - 1;
    let high = low << m;
    let f = BooleanFunction::from_predicate(2 * m, |x| x & low == low || x & high == high)?;
    let partition = Partition::consecutive(&[m, m])?;
    Ok((f, partition))
}

/// The non-crossing approximation `X + Y - 1` of the tribes function.
pub fn tribes_linear_part(m: usize) -> Result<RealFunction, FourierError> {
    let (_, partition) = tribes_example(m)?;
    let low = partition.block_mask(0);
    let high = partition.block_mask(1);
    let and = |x: usize, mask: usize| if x & mask == mask { -1.0 } else { 1.0 };
    RealFunction::new(2 * m, (0..1usize << (2 * m)).map(|x| and(x, low) + and(x, high) - 1.0).collect())
}

/// `4·2^{-2m}`, the squared distance from the tribes function to
/// `X + Y - 1`.
pub fn tribes_linear_distance(m: usize) -> BigRational {
    BigRational::new(BigInt::from(4), BigInt::one() << (2 * m))
}

/// `4p(1-p)` with `p = Pr[f = -1] = 1 - (1 - 2^{-m})^2`.
pub fn tribes_variance(m: usize) -> BigRational {
    let q = BigRational::one() - BigRational::new(BigInt::one(), BigInt::one() << m);
    let p = BigRational::one() - &q * &q;
    int(4) * &p * (BigRational::one() - &p)
}

/// `X` uniform on `{0}` (mass 1/2) and `{±2}` (1/4 each), `Y` uniform on
/// `{±1}`. Both are balanced, `Var|X+Y| = 3/4` and `Var|X| = 1`.
pub fn claim6_example() -> (DiscreteRV, DiscreteRV) {
    let x = DiscreteRV::from_atoms([(int(-2), rat(1, 4)), (int(0), rat(1, 2)), (int(2), rat(1, 4))])
        .expect("valid atoms");
    let y = DiscreteRV::symmetric_sign(int(1));
    (x, y)
}
