//! Scan of the tribes family: the variance factor in the partition
//! corollary cannot be dropped.

use crate::bounds::{corollary2_apply, BoundError, PaperConstants};
use crate::constructions::{tribes_example, tribes_linear_part, MAX_TRIBES_BLOCK};
use crate::exact::{int, rat};
use crate::fourier::{sq_l2_dist_exact, BooleanFunction, FourierError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Blocks up to this size are also computed from full `2^{2m}` tables.
pub const TABLE_SCAN_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessRow {
    pub m: usize,
    pub variance: BigRational,
    pub cross_weight: BigRational,
    /// `‖f - (X + Y - 1)‖²`.
    pub linear_distance: BigRational,
    /// `‖f - f_j - f̂(∅)‖²` for both blocks.
    pub block_distances: [BigRational; 2],
    pub min_dist: BigRational,
    /// `2^m · cross_weight / Var f`.
    pub scaled_epsilon: BigRational,
    /// `2^m · min_dist`.
    pub scaled_dist: BigRational,
    /// Both scaled columns lie in `[1/8, 32]` (vacuous for `m = 1`).
    pub in_bracket: bool,
    /// Row values were recomputed from the full truth table and agreed.
    pub table_checked: bool,
}

/// Mean and variance of the AND of `m` variables (`-1` iff all are `-1`).
fn and_moments(m: usize) -> (BigRational, BigRational) {
    let q = BigRational::new(BigInt::one(), BigInt::one() << m);
    let mean = BigRational::one() - int(2) * &q;
    let var = int(4) * &q * (BigRational::one() - &q);
    (mean, var)
}

/// Row values from the product structure `f = (X + Y + XY - 1)/2` with
/// independent block functions `X`, `Y`.
fn factored_row(m: usize) -> TightnessRow {
    let (ex, vx) = and_moments(m);
    let (ey, vy) = (ex.clone(), vx.clone());
    let one = BigRational::one();
    let mean = (&ex + &ey + &ex * &ey - &one) / int(2);
    let variance = &one - &mean * &mean;
    let cross_weight = &vx * &vy / int(4);
    // Pure-Y part of f is (1 + E X)(Y - E Y)/2, and symmetrically.
    let d1 = &cross_weight + (&one + &ex) * (&one + &ex) * &vy / int(4);
    let d2 = &cross_weight + (&one + &ey) * (&one + &ey) * &vx / int(4);
    // f - (X + Y - 1) = (1 - X)(1 - Y)/2.
    let linear_distance = (int(2) - int(2) * &ex) * (int(2) - int(2) * &ey) / int(4);
    finish_row(m, variance, cross_weight, linear_distance, [d1, d2], false)
}

fn finish_row(
    m: usize,
    variance: BigRational,
    cross_weight: BigRational,
    linear_distance: BigRational,
    block_distances: [BigRational; 2],
    table_checked: bool,
) -> TightnessRow {
    let scale = BigRational::from_integer(BigInt::one() << m);
    let min_dist = std::cmp::min(&block_distances[0], &block_distances[1]).clone();
    let scaled_epsilon = &scale * &cross_weight / &variance;
    let scaled_dist = &scale * &min_dist;
    let bracket = |v: &BigRational| *v >= rat(1, 8) && *v <= int(32);
    let in_bracket = m < 2 || (bracket(&scaled_epsilon) && bracket(&scaled_dist));
    TightnessRow {
        m,
        variance,
        cross_weight,
        linear_distance,
        block_distances,
        min_dist,
        scaled_epsilon,
        scaled_dist,
        in_bracket,
        table_checked,
    }
}

fn table_row(m: usize) -> Result<TightnessRow, BoundError> {
    let (f, partition): (BooleanFunction, _) = tribes_example(m)?;
    let report = corollary2_apply(&f, &partition, &PaperConstants::paper())?;
    let linear = sq_l2_dist_exact(&f, &tribes_linear_part(m)?)?;
    let [d1, d2]: [BigRational; 2] = report.block_distances.clone().try_into().expect("two blocks");
    Ok(finish_row(m, report.variance, report.cross_weight, linear, [d1, d2], true))
}

/// Rows for `m = 1..=max_m`. Blocks of size at most [`TABLE_SCAN_LIMIT`]
/// are computed from truth tables and cross-checked against the product
/// formulas; larger ones use the formulas alone.
pub fn tightness_scan(max_m: usize) -> Result<Vec<TightnessRow>, BoundError> {
    if max_m == 0 || max_m > MAX_TRIBES_BLOCK {
        return Err(FourierError::VariableCount(2 * max_m).into());
    }
    let mut rows = Vec::with_capacity(max_m);
    for m in 1..=max_m {
        let factored = factored_row(m);
        if m <= TABLE_SCAN_LIMIT {
            let from_table = table_row(m)?;
            let agree = TightnessRow { table_checked: false, ..from_table.clone() } == factored;
            rows.push(TightnessRow { table_checked: agree, ..from_table });
        } else {
            rows.push(factored);
        }
    }
    debug_assert!(rows.iter().all(|r| !r.variance.is_zero()));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{tribes_linear_distance, tribes_variance};

    #[test]
    fn first_rows() {
        let rows = tightness_scan(3).unwrap();
        assert_eq!(rows[0].variance, rat(3, 4));
        assert_eq!(rows[0].cross_weight, rat(1, 4));
        assert_eq!(rows[0].min_dist, rat(1, 2));
        assert_eq!(rows[1].variance, rat(63, 64));
        assert_eq!(rows[1].cross_weight, rat(9, 64));
        assert_eq!(rows[1].min_dist, rat(9, 16));
        assert_eq!(rows[2].cross_weight, rat(49, 1024));
        assert_eq!(rows[2].min_dist, rat(49, 128));
        for r in &rows {
            assert!(r.table_checked, "m={}", r.m);
            assert!(r.in_bracket);
            assert_eq!(r.linear_distance, tribes_linear_distance(r.m));
            assert_eq!(r.variance, tribes_variance(r.m));
        }
    }

    #[test]
    fn formula_rows_stay_in_bracket() {
        for m in 2..=MAX_TRIBES_BLOCK {
            let r = factored_row(m);
            assert!(r.in_bracket, "m={m}");
            assert_eq!(r.linear_distance, tribes_linear_distance(m));
            assert_eq!(r.variance, tribes_variance(m));
        }
    }

    #[test]
    fn range() {
        assert!(tightness_scan(0).is_err());
        assert!(tightness_scan(14).is_err());
    }
}
