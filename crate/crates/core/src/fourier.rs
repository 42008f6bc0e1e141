//! Functions on the hypercube `{±1}^m`, their Walsh–Hadamard expansion,
//! squared L² distances, variances, block restrictions and the balancing
//! extension.
//!
//! Point indexing: bit `b` of a point index is set exactly when
//! `x_{b+1} = -1`. A subset `S` of variables is a bitmask in the same
//! layout, so `χ_S(x) = (-1)^{popcount(S & x)}`.
//!
//! Tables are stored as `f64`. Fourier coefficients of a Boolean function
//! on `m` variables are multiples of `2^{-m}`, so with `m ≤ 26` every
//! coefficient, square and Parseval partial sum is an exact double. Wherever
//! a caller needs a value it will compare exactly, use the `*_exact`
//! variants, which accumulate without rounding.

use crate::exact::{exact_mean, exact_sum, ratio_to_f64};
use num_rational::BigRational;
use thiserror::Error;

/// Largest supported variable count.
pub const MAX_VARS: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FourierError {
    #[error("table has {got} entries, expected 2^{m} = {expected}")]
    SizeMismatch { m: usize, expected: usize, got: usize },
    #[error("variable count {0} is outside 1..={max}", max = MAX_VARS)]
    VariableCount(usize),
    #[error("entry {index} is {value}, Boolean tables hold only +1 and -1")]
    NotBoolean { index: usize, value: i64 },
    #[error("functions live on different cubes (m = {left} vs m = {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("variable index {index} is outside 1..={m}")]
    VariableOutOfRange { index: usize, m: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("cannot extend a function on {0} variables past the {max}-variable cap", max = MAX_VARS)]
    AtCapacity(usize),
}

pub type Result<T> = std::result::Result<T, FourierError>;

fn check_m(m: usize) -> Result<()> {
    if m == 0 || m > MAX_VARS {
        return Err(FourierError::VariableCount(m));
    }
    Ok(())
}

fn check_len(m: usize, got: usize) -> Result<()> {
    let expected = 1usize << m;
    if got != expected {
        return Err(FourierError::SizeMismatch { m, expected, got });
    }
    Ok(())
}

/// `χ_S(x)` for subset mask `s` and point index `x`.
#[inline]
pub fn character(s: usize, x: usize) -> f64 {
    if (s & x).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Anything with a real-valued truth table on the cube.
#[allow(clippy::len_without_is_empty)]
pub trait CubeFunction {
    fn vars(&self) -> usize;
    fn value(&self, x: usize) -> f64;

    fn len(&self) -> usize {
        1 << self.vars()
    }

    fn to_real(&self) -> RealFunction {
        RealFunction {
            m: self.vars(),
            table: (0..self.len()).map(|x| self.value(x)).collect(),
        }
    }
}

/// A `±1`-valued function on `{±1}^m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    m: usize,
    table: Vec<i8>,
}

impl BooleanFunction {
    pub fn new(m: usize, table: Vec<i8>) -> Result<Self> {
        check_m(m)?;
        check_len(m, table.len())?;
        if let Some((index, &v)) = table.iter().enumerate().find(|(_, v)| **v != 1 && **v != -1) {
            return Err(FourierError::NotBoolean { index, value: v as i64 });
        }
        Ok(Self { m, table })
    }

    /// Builds a function from a predicate; `true` maps to `-1`.
    pub fn from_predicate(m: usize, mut is_true: impl FnMut(usize) -> bool) -> Result<Self> {
        check_m(m)?;
        let table = (0..1usize << m).map(|x| if is_true(x) { -1 } else { 1 }).collect();
        Ok(Self { m, table })
    }

    /// The function whose table, read as a bit string, is `bits` (bit `x`
    /// set means `f(x) = -1`). Only meaningful for `m ≤ 6`.
    pub fn from_bits(m: usize, bits: u64) -> Result<Self> {
        if m > 6 {
            return Err(FourierError::VariableCount(m));
        }
        Self::from_predicate(m, |x| (bits >> x) & 1 == 1)
    }

    pub fn constant(m: usize, value: i8) -> Result<Self> {
        Self::new(m, vec![value; 1 << m])
    }

    /// `x_i` for a 1-based variable index `i`.
    pub fn dictator(m: usize, i: usize) -> Result<Self> {
        if i == 0 || i > m {
            return Err(FourierError::VariableOutOfRange { index: i, m });
        }
        Self::from_predicate(m, |x| (x >> (i - 1)) & 1 == 1)
    }

    /// `χ_S` for a subset mask.
    pub fn parity(m: usize, mask: usize) -> Result<Self> {
        Self::from_predicate(m, |x| (x & mask).count_ones() % 2 == 1)
    }

    pub fn vars(&self) -> usize {
        self.m
    }

    pub fn table(&self) -> &[i8] {
        &self.table
    }

    pub fn get(&self, x: usize) -> i8 {
        self.table[x]
    }

    pub fn negate(&self) -> Self {
        Self { m: self.m, table: self.table.iter().map(|v| -v).collect() }
    }

    pub fn is_constant(&self) -> bool {
        self.table.iter().all(|v| *v == self.table[0])
    }

    /// `Pr[f = -1]` as a count of points.
    pub fn count_true(&self) -> usize {
        self.table.iter().filter(|v| **v == -1).count()
    }

    pub fn fourier(&self) -> FourierExpansion {
        wht(self)
    }
}

impl CubeFunction for BooleanFunction {
    fn vars(&self) -> usize {
        self.m
    }

    fn value(&self, x: usize) -> f64 {
        self.table[x] as f64
    }
}

/// A real-valued function on `{±1}^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealFunction {
    m: usize,
    table: Vec<f64>,
}

impl RealFunction {
    pub fn new(m: usize, table: Vec<f64>) -> Result<Self> {
        check_m(m)?;
        check_len(m, table.len())?;
        Ok(Self { m, table })
    }

    pub fn constant(m: usize, c: f64) -> Result<Self> {
        Self::new(m, vec![c; 1 << m])
    }

    pub fn vars(&self) -> usize {
        self.m
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn mean(&self) -> f64 {
        ratio_to_f64(&self.mean_exact())
    }

    pub fn mean_exact(&self) -> BigRational {
        exact_mean(self.table.iter().copied(), self.table.len())
    }

    pub fn add_constant(&self, c: f64) -> Self {
        Self { m: self.m, table: self.table.iter().map(|v| v + c).collect() }
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { m: self.m, table: self.table.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &RealFunction) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RealFunction) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &RealFunction, op: impl Fn(f64, f64) -> f64) -> Result<Self> {
        same_cube(self.m, other.m)?;
        let table = self.table.iter().zip(&other.table).map(|(a, b)| op(*a, *b)).collect();
        Ok(Self { m: self.m, table })
    }

    pub fn fourier(&self) -> FourierExpansion {
        wht(self)
    }

    /// Pointwise `E[f^2] - (E f)^2`, computed exactly.
    pub fn pointwise_variance_exact(&self) -> BigRational {
        let mean = self.mean_exact();
        let second = exact_mean(self.table.iter().map(|v| v * v), self.table.len());
        second - &mean * &mean
    }
}

impl CubeFunction for RealFunction {
    fn vars(&self) -> usize {
        self.m
    }

    fn value(&self, x: usize) -> f64 {
        self.table[x]
    }

    fn to_real(&self) -> RealFunction {
        self.clone()
    }
}

impl From<&BooleanFunction> for RealFunction {
    fn from(f: &BooleanFunction) -> Self {
        f.to_real()
    }
}

fn same_cube(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(FourierError::DimensionMismatch { left, right });
    }
    Ok(())
}

/// Coefficients `f̂(S)` indexed by subset mask.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierExpansion {
    m: usize,
    coeffs: Vec<f64>,
}

impl FourierExpansion {
    pub fn new(m: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_m(m)?;
        check_len(m, coeffs.len())?;
        Ok(Self { m, coeffs })
    }

    pub fn vars(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn get(&self, mask: usize) -> f64 {
        self.coeffs[mask]
    }

    /// `f̂(∅)`, the mean.
    pub fn constant_term(&self) -> f64 {
        self.coeffs[0]
    }

    /// `Σ_S f̂(S)^2`.
    pub fn total_weight(&self) -> f64 {
        ratio_to_f64(&self.weight_exact(|_| true))
    }

    /// `Σ f̂(S)^2` over the masks selected by `keep`, without rounding.
    pub fn weight_exact(&self, keep: impl Fn(usize) -> bool) -> BigRational {
        exact_sum(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(s, _)| keep(*s))
                .map(|(_, c)| c * c),
        )
    }

    /// `Σ_{|S| = level} f̂(S)^2`.
    pub fn level_weight_exact(&self, level: u32) -> BigRational {
        self.weight_exact(|s| s.count_ones() == level)
    }

    pub fn variance(&self) -> f64 {
        ratio_to_f64(&self.variance_exact())
    }

    /// `Σ_{S ≠ ∅} f̂(S)^2`.
    pub fn variance_exact(&self) -> BigRational {
        self.weight_exact(|s| s != 0)
    }

    /// Coefficient-space `Σ_S (f̂(S) - ĝ(S))^2`.
    pub fn sq_dist(&self, other: &FourierExpansion) -> Result<f64> {
        Ok(ratio_to_f64(&self.sq_dist_exact(other)?))
    }

    pub fn sq_dist_exact(&self, other: &FourierExpansion) -> Result<BigRational> {
        same_cube(self.m, other.m)?;
        // Differences of dyadic coefficients are exact; squares of them too
        // for the denominators reachable with m ≤ 26.
        Ok(exact_sum(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b) * (a - b)),
        ))
    }

    /// Keeps the coefficients on nonempty subsets of `block_mask`.
    pub fn restrict_mask(&self, block_mask: usize) -> FourierExpansion {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(s, c)| if s != 0 && s & !block_mask == 0 { *c } else { 0.0 })
            .collect();
        FourierExpansion { m: self.m, coeffs }
    }

    pub fn inverse(&self) -> RealFunction {
        inverse_wht(self)
    }
}

fn butterfly(values: &mut [f64]) {
    let n = values.len();
    let mut h = 1;
    while h < n {
        for chunk in values.chunks_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, v) = (*a, *b);
                *a = u + v;
                *b = u - v;
            }
        }
        h *= 2;
    }
}

/// Walsh–Hadamard transform: `f̂(S) = 2^{-m} Σ_x f(x) χ_S(x)`.
pub fn wht<F: CubeFunction + ?Sized>(f: &F) -> FourierExpansion {
    let m = f.vars();
    let mut values: Vec<f64> = (0..f.len()).map(|x| f.value(x)).collect();
    butterfly(&mut values);
    let scale = (-(m as i32) as f64).exp2();
    for v in &mut values {
        *v *= scale;
    }
    FourierExpansion { m, coeffs: values }
}

/// Evaluates `Σ_S f̂(S) χ_S` at every point.
pub fn inverse_wht(expansion: &FourierExpansion) -> RealFunction {
    let mut values = expansion.coeffs.clone();
    butterfly(&mut values);
    RealFunction { m: expansion.m, table: values }
}

/// Pointwise `E_x[(f(x) - g(x))^2]`.
pub fn sq_l2_dist<F, G>(f: &F, g: &G) -> Result<f64>
where
    F: CubeFunction + ?Sized,
    G: CubeFunction + ?Sized,
{
    Ok(ratio_to_f64(&sq_l2_dist_exact(f, g)?))
}

pub fn sq_l2_dist_exact<F, G>(f: &F, g: &G) -> Result<BigRational>
where
    F: CubeFunction + ?Sized,
    G: CubeFunction + ?Sized,
{
    same_cube(f.vars(), g.vars())?;
    let len = f.len();
    Ok(exact_mean(
        (0..len).map(|x| {
            let d = f.value(x) - g.value(x);
            d * d
        }),
        len,
    ))
}

/// `Var f = Σ_{S≠∅} f̂(S)^2`.
pub fn variance<F: CubeFunction + ?Sized>(f: &F) -> f64 {
    wht(f).variance()
}

pub fn variance_exact<F: CubeFunction + ?Sized>(f: &F) -> BigRational {
    wht(f).variance_exact()
}

/// A disjoint cover of the variables by nonempty blocks.
///
/// Blocks are stored with 0-based variable indices; the text format and
/// constructors taking `one_based` lists use 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    m: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Validates 0-based blocks.
    pub fn new(m: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        check_m(m)?;
        let mut seen = vec![false; m];
        let mut normalized = Vec::with_capacity(blocks.len());
        for block in blocks {
            if block.is_empty() {
                return Err(FourierError::InvalidPartition("empty block".into()));
            }
            let mut block = block;
            block.sort_unstable();
            for &i in &block {
                if i >= m {
                    return Err(FourierError::VariableOutOfRange { index: i + 1, m });
                }
                if seen[i] {
                    return Err(FourierError::InvalidPartition(format!(
                        "variable {} appears in more than one block",
                        i + 1
                    )));
                }
                seen[i] = true;
            }
            normalized.push(block);
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(FourierError::InvalidPartition(format!(
                "variable {} is not covered",
                missing + 1
            )));
        }
        Ok(Self { m, blocks: normalized })
    }

    pub fn from_one_based(m: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut b = Vec::with_capacity(block.len());
            for i in block {
                if i == 0 || i > m {
                    return Err(FourierError::VariableOutOfRange { index: i, m });
                }
                b.push(i - 1);
            }
            zero_based.push(b);
        }
        Self::new(m, zero_based)
    }

    /// Blocks of consecutive variables with the given sizes.
    pub fn consecutive(sizes: &[usize]) -> Result<Self> {
        let m: usize = sizes.iter().sum();
        let mut next = 0;
        let blocks = sizes
            .iter()
            .map(|&k| {
                let b: Vec<usize> = (next..next + k).collect();
                next += k;
                b
            })
            .collect();
        Self::new(m, blocks)
    }

    pub fn vars(&self) -> usize {
        self.m
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_mask(&self, j: usize) -> usize {
        self.blocks[j].iter().fold(0, |acc, i| acc | (1 << i))
    }

    pub fn masks(&self) -> Vec<usize> {
        (0..self.blocks.len()).map(|j| self.block_mask(j)).collect()
    }

    /// True when the nonempty subset `s` lies inside a single block.
    pub fn contains_in_block(&self, s: usize) -> bool {
        self.masks().iter().any(|mask| s & !mask == 0)
    }

    /// All partitions of `[m]` into exactly two nonempty blocks, with the
    /// block containing variable 1 listed first.
    pub fn all_two_block(m: usize) -> Result<Vec<Partition>> {
        check_m(m)?;
        let full = (1usize << m) - 1;
        let mut out = Vec::new();
        // Masks containing variable 1 (bit 0), excluding the full set.
        for first in (1..full).filter(|s| s & 1 == 1) {
            let to_list = |mask: usize| (0..m).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>();
            out.push(Partition::new(m, vec![to_list(first), to_list(full & !first)])?);
        }
        Ok(out)
    }
}

fn block_mask_of(m: usize, block: &[usize]) -> Result<usize> {
    let mut mask = 0;
    for &i in block {
        if i >= m {
            return Err(FourierError::VariableOutOfRange { index: i + 1, m });
        }
        mask |= 1 << i;
    }
    Ok(mask)
}

/// `f_j = Σ_{∅≠S⊆block} f̂(S) χ_S` for a 0-based block.
pub fn restriction(f: &BooleanFunction, block: &[usize]) -> Result<RealFunction> {
    let mask = block_mask_of(f.vars(), block)?;
    Ok(inverse_wht(&f.fourier().restrict_mask(mask)))
}

fn check_partition(f_vars: usize, partition: &Partition) -> Result<()> {
    if f_vars != partition.vars() {
        return Err(FourierError::InvalidPartition(format!(
            "partition covers {} variables, function has {}",
            partition.vars(),
            f_vars
        )));
    }
    Ok(())
}

/// Fourier weight on nonempty sets not contained in any block.
pub fn cross_partition_weight(f: &BooleanFunction, partition: &Partition) -> Result<f64> {
    Ok(ratio_to_f64(&cross_partition_weight_exact(f, partition)?))
}

pub fn cross_partition_weight_exact(f: &BooleanFunction, partition: &Partition) -> Result<BigRational> {
    check_partition(f.vars(), partition)?;
    Ok(cross_weight_of(&f.fourier(), partition))
}

pub(crate) fn cross_weight_of(expansion: &FourierExpansion, partition: &Partition) -> BigRational {
    let masks = partition.masks();
    expansion.weight_exact(|s| s != 0 && !masks.iter().any(|mask| s & !mask == 0))
}

/// The same weight through `1 - f̂(∅)^2 - Σ_j Var f_j`, with each restriction
/// evaluated pointwise.
pub fn cross_partition_weight_via_blocks(f: &BooleanFunction, partition: &Partition) -> Result<BigRational> {
    check_partition(f.vars(), partition)?;
    let expansion = f.fourier();
    let mean = crate::exact::ratio_from_f64(expansion.constant_term());
    let mut rest = num_traits::One::one();
    rest -= &mean * &mean;
    for block in partition.blocks() {
        let fj = restriction(f, block)?;
        rest -= fj.pointwise_variance_exact();
    }
    Ok(rest)
}

/// `g(x, x_{m+1}) = x_{m+1} f(x_{m+1} x_1, …, x_{m+1} x_m)` on `m + 1`
/// variables, the new variable occupying the highest bit.
pub fn balance_extend(f: &BooleanFunction) -> Result<BooleanFunction> {
    let m = f.vars();
    if m >= MAX_VARS {
        return Err(FourierError::AtCapacity(m));
    }
    let low = (1usize << m) - 1;
    let table = (0..1usize << (m + 1))
        .map(|x| {
            if x >> m & 1 == 1 {
                -f.get(!x & low)
            } else {
                f.get(x)
            }
        })
        .collect();
    Ok(BooleanFunction { m: m + 1, table })
}
