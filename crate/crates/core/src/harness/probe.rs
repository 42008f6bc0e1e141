//! Experimental search for `f ≈ g(h_1, …, h_n)` with one Boolean `h_j` per
//! block and an arbitrary Boolean `g` on the block outputs. Finding a good
//! composition, or failing to, proves nothing.

use crate::exact::int;
use crate::fourier::{BooleanFunction, FourierError, Partition};
use num_bigint::BigInt;
use num_rational::BigRational;

pub const MAX_PROBE_BLOCKS: usize = 4;
pub const MAX_PROBE_BLOCK_SIZE: usize = 3;
/// Upper bound on `(number of h combinations) · 2^m`.
pub const MAX_PROBE_WORK: u64 = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeResult {
    /// On the block outputs; bit `j` of the input index set means
    /// `h_j = -1`.
    pub g: BooleanFunction,
    /// One function per block, on that block's variables in increasing
    /// order.
    pub hs: Vec<BooleanFunction>,
    /// `‖f - g∘(h_1, …, h_n)‖²`.
    pub dist: BigRational,
    pub combinations: u64,
}

/// Exhaustive search over the `h_j` (normalized to `h_j(1,…,1) = 1`, since
/// `g` absorbs output negations) with the best `g` for each choice: the
/// pointwise majority of `f` over each fibre, ties to `+1`. The first
/// minimizer in enumeration order is returned.
pub fn conjecture_probe(f: &BooleanFunction, partition: &Partition) -> Result<ProbeResult, FourierError> {
    let m = f.vars();
    if partition.vars() != m {
        return Err(FourierError::DimensionMismatch { left: m, right: partition.vars() });
    }
    let n = partition.len();
    if n > MAX_PROBE_BLOCKS || partition.blocks().iter().any(|b| b.len() > MAX_PROBE_BLOCK_SIZE) {
        return Err(FourierError::InvalidPartition(format!(
            "probe needs at most {MAX_PROBE_BLOCKS} blocks of at most {MAX_PROBE_BLOCK_SIZE} variables"
        )));
    }
    // Free table bits per block: all points except the origin.
    let free_bits: Vec<u32> = partition.blocks().iter().map(|b| (1u32 << b.len()) - 1).collect();
    let total_bits: u32 = free_bits.iter().sum();
    let combinations = 1u64 << total_bits;
    if combinations.saturating_mul(1 << m) > MAX_PROBE_WORK {
        return Err(FourierError::InvalidPartition(format!(
            "search space too large: {combinations} combinations on {m} variables"
        )));
    }
    // Local index of each point inside each block.
    let local: Vec<Vec<u8>> = partition
        .blocks()
        .iter()
        .map(|block| {
            (0..1usize << m)
                .map(|x| block.iter().enumerate().fold(0u8, |acc, (k, &i)| acc | (((x >> i) & 1) as u8) << k))
                .collect()
        })
        .collect();
    let values = f.table();
    let patterns = 1usize << n;
    let mut sums = vec![0i64; patterns];
    let mut best: Option<(i64, u64, Vec<i8>)> = None;
    for combo in 0..combinations {
        // Split the combo into per-block tables; bit 0 (the origin) stays 0.
        let mut tables = [0u32; MAX_PROBE_BLOCKS];
        let mut rest = combo;
        for (j, &bits) in free_bits.iter().enumerate() {
            tables[j] = ((rest & ((1 << bits) - 1)) as u32) << 1;
            rest >>= bits;
        }
        sums.iter_mut().for_each(|s| *s = 0);
        for x in 0..1usize << m {
            let mut z = 0;
            for j in 0..n {
                z |= (((tables[j] >> local[j][x]) & 1) as usize) << j;
            }
            sums[z] += values[x] as i64;
        }
        // Agreement with the majority g is Σ_z |sums[z]|.
        let agreement: i64 = sums.iter().map(|s| s.abs()).sum();
        if best.as_ref().is_none_or(|(a, _, _)| agreement > *a) {
            let g = sums.iter().map(|&s| if s < 0 { -1 } else { 1 }).collect();
            best = Some((agreement, combo, g));
        }
    }
    let (agreement, combo, g) = best.expect("at least one combination");
    let mut hs = Vec::with_capacity(n);
    let mut rest = combo;
    for (j, &bits) in free_bits.iter().enumerate() {
        let table = ((rest & ((1 << bits) - 1)) as u32) << 1;
        rest >>= bits;
        let size = partition.blocks()[j].len();
        hs.push(BooleanFunction::from_predicate(size, |x| (table >> x) & 1 == 1)?);
    }
    // Pr[f ≠ g∘h] = (2^m - agreement) / 2^{m+1}; the squared distance is four times that.
    let len = 1i64 << m;
    let dist = BigRational::new(BigInt::from(2 * (len - agreement)), BigInt::from(len));
    debug_assert!(dist >= int(0));
    Ok(ProbeResult { g: BooleanFunction::new(n, g)?, hs, dist, combinations })
}
