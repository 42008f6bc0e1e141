//! Finite-support random variables with exact rational atoms.
//!
//! Everything here is exact: values and probabilities are [`BigRational`],
//! and every construction (sums of independent variables, absolute values,
//! centering, the constant-magnitude approximation and the two-point
//! decomposition of a balanced variable) returns exact distributions.

use crate::exact::ratio_from_f64;
use crate::fourier::{CubeFunction, RealFunction};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Default bound on the number of distinct atoms a convolution may produce.
pub const DEFAULT_ATOM_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RvError {
    #[error("a random variable needs at least one atom")]
    Empty,
    #[error("probability {0} of an atom is not positive")]
    NonPositiveProbability(BigRational),
    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(BigRational),
    #[error("value {0} appears twice or out of order")]
    UnsortedValues(BigRational),
    #[error("convolution would produce more than {cap} atoms")]
    AtomCap { cap: usize },
    #[error("variable has mean {0}, expected a balanced (mean zero) variable")]
    NotBalanced(BigRational),
    #[error("two-point parameter p = {0} must lie strictly between 0 and 1")]
    InvalidSplit(BigRational),
    #[error("two-point magnitude d = {0} must be non-negative")]
    NegativeMagnitude(BigRational),
    #[error("expected at most two atoms, found {0}")]
    TooManyAtoms(usize),
}

pub type Result<T> = std::result::Result<T, RvError>;

/// A distribution on finitely many rational values.
///
/// Atoms are kept sorted by value with strictly positive probabilities that
/// sum to exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscreteRV {
    atoms: Vec<(BigRational, BigRational)>,
}

impl DiscreteRV {
    /// Validates atoms given in strictly increasing value order.
    pub fn new(atoms: Vec<(BigRational, BigRational)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(RvError::Empty);
        }
        let mut total = BigRational::zero();
        for (i, (v, p)) in atoms.iter().enumerate() {
            if !p.is_positive() {
                return Err(RvError::NonPositiveProbability(p.clone()));
            }
            if i > 0 && atoms[i - 1].0 >= *v {
                return Err(RvError::UnsortedValues(v.clone()));
            }
            total += p;
        }
        if !total.is_one() {
            return Err(RvError::NotNormalized(total));
        }
        Ok(Self { atoms })
    }

    /// Sorts, merges equal values and drops zero-probability atoms before
    /// validating.
    pub fn from_atoms<I>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigRational, BigRational)>,
    {
        let mut merged: BTreeMap<BigRational, BigRational> = BTreeMap::new();
        for (v, p) in atoms {
            if p.is_negative() {
                return Err(RvError::NonPositiveProbability(p));
            }
            *merged.entry(v).or_insert_with(BigRational::zero) += p;
        }
        Self::new(merged.into_iter().filter(|(_, p)| !p.is_zero()).collect())
    }

    pub fn constant(value: BigRational) -> Self {
        Self { atoms: vec![(value, BigRational::one())] }
    }

    /// Equal mass on each of the given values.
    pub fn uniform(values: &[BigRational]) -> Result<Self> {
        if values.is_empty() {
            return Err(RvError::Empty);
        }
        let p = BigRational::new(BigInt::one(), BigInt::from(values.len()));
        Self::from_atoms(values.iter().map(|v| (v.clone(), p.clone())))
    }

    /// Uniform on `{-a, +a}`.
    pub fn symmetric_sign(a: BigRational) -> Self {
        Self::uniform(&[-a.clone(), a]).expect("two values")
    }

    pub fn atoms(&self) -> &[(BigRational, BigRational)] {
        &self.atoms
    }

    pub fn support_size(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.atoms.len() == 1
    }

    pub fn expectation(&self) -> BigRational {
        self.atoms.iter().map(|(v, p)| v * p).sum()
    }

    pub fn second_moment(&self) -> BigRational {
        self.atoms.iter().map(|(v, p)| v * v * p).sum()
    }

    pub fn variance(&self) -> BigRational {
        let mean = self.expectation();
        self.atoms.iter().map(|(v, p)| (v - &mean) * (v - &mean) * p).sum()
    }

    /// `E[(X - c)^2]`.
    pub fn sq_dist_to_constant(&self, c: &BigRational) -> BigRational {
        self.atoms.iter().map(|(v, p)| (v - c) * (v - c) * p).sum()
    }

    /// `½ E_{x₁,x₂ i.i.d.} (x₁ - x₂)^2`, the pair form of the variance.
    pub fn half_pair_sq_diff(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for (a, pa) in &self.atoms {
            for (b, pb) in &self.atoms {
                acc += (a - b) * (a - b) * pa * pb;
            }
        }
        acc / BigRational::from_integer(BigInt::from(2))
    }

    pub fn is_balanced(&self) -> bool {
        self.expectation().is_zero()
    }

    pub fn require_balanced(&self) -> Result<()> {
        let mean = self.expectation();
        if mean.is_zero() {
            Ok(())
        } else {
            Err(RvError::NotBalanced(mean))
        }
    }

    /// Pushforward under an arbitrary value map; equal images are merged.
    pub fn map(&self, f: impl Fn(&BigRational) -> BigRational) -> Self {
        Self::from_atoms(self.atoms.iter().map(|(v, p)| (f(v), p.clone()))).expect("pushforward of a valid RV")
    }

    pub fn shift(&self, c: &BigRational) -> Self {
        // Shifting preserves order, so no merge is needed.
        Self { atoms: self.atoms.iter().map(|(v, p)| (v + c, p.clone())).collect() }
    }

    pub fn negate(&self) -> Self {
        Self { atoms: self.atoms.iter().rev().map(|(v, p)| (-v, p.clone())).collect() }
    }

    pub fn abs(&self) -> Self {
        self.map(|v| v.abs())
    }

    /// `X - E X`.
    pub fn center(&self) -> Self {
        self.shift(&-self.expectation())
    }

    pub fn convolve(&self, other: &DiscreteRV) -> Result<Self> {
        self.convolve_with_cap(other, DEFAULT_ATOM_CAP)
    }

    /// Distribution of `X + Y` for independent `X`, `Y`.
    pub fn convolve_with_cap(&self, other: &DiscreteRV, cap: usize) -> Result<Self> {
        let mut merged: BTreeMap<BigRational, BigRational> = BTreeMap::new();
        for (a, pa) in &self.atoms {
            for (b, pb) in &other.atoms {
                *merged.entry(a + b).or_insert_with(BigRational::zero) += pa * pb;
                if merged.len() > cap {
                    return Err(RvError::AtomCap { cap });
                }
            }
        }
        Ok(Self { atoms: merged.into_iter().collect() })
    }

    /// `Var |X + E|`.
    pub fn var_abs_shifted(&self, e: &BigRational) -> BigRational {
        self.shift(e).abs().variance()
    }

    /// `X' = sign(X + E) · E|X + E|`, with `sign(0) = +1`.
    pub fn const_abs_approx(&self, e: &BigRational) -> ConstAbsRV {
        let shifted = self.shift(e);
        let magnitude = shifted.abs().expectation();
        let p_positive: BigRational = shifted
            .atoms
            .iter()
            .filter(|(v, _)| !v.is_negative())
            .map(|(_, p)| p.clone())
            .sum();
        ConstAbsRV { magnitude, p_positive }
    }

    /// Writes a balanced variable as a mixture of balanced variables with at
    /// most two atoms.
    ///
    /// Positive and negative atoms form two pools. The smallest remaining
    /// positive value is repeatedly paired with the negative value of smallest
    /// magnitude, and the largest mean-zero block supported on that pair is
    /// removed; each step exhausts at least one atom. A zero atom becomes a
    /// constant-zero component carrying its mass.
    pub fn two_point_decompose(&self) -> Result<Vec<(BigRational, TwoPointBalancedRV)>> {
        self.require_balanced()?;
        let mut out = Vec::new();
        let mut positives: Vec<(BigRational, BigRational)> = Vec::new();
        let mut negatives: Vec<(BigRational, BigRational)> = Vec::new();
        for (v, p) in &self.atoms {
            if v.is_zero() {
                out.push((p.clone(), TwoPointBalancedRV::zero()));
            } else if v.is_positive() {
                positives.push((v.clone(), p.clone()));
            } else {
                negatives.push((v.clone(), p.clone()));
            }
        }
        // Atoms are sorted ascending: positives ascend already; negatives are
        // reversed so the smallest magnitude comes first.
        negatives.reverse();
        let (mut i, mut j) = (0, 0);
        while i < positives.len() && j < negatives.len() {
            let (v, mass_pos) = positives[i].clone();
            let (u, mass_neg) = negatives[j].clone();
            let u_abs = -u.clone();
            // Mean zero on {v, u}: alpha·v = beta·|u|.
            let alpha_max_from_neg = &mass_neg * &u_abs / &v;
            let alpha = if mass_pos <= alpha_max_from_neg { mass_pos.clone() } else { alpha_max_from_neg };
            let beta = &alpha * &v / &u_abs;
            let weight = &alpha + &beta;
            let p = &alpha / &weight;
            let d = &v * &p;
            out.push((weight, TwoPointBalancedRV { d, p }));
            positives[i].1 = &mass_pos - &alpha;
            negatives[j].1 = &mass_neg - &beta;
            if positives[i].1.is_zero() {
                i += 1;
            }
            if negatives[j].1.is_zero() {
                j += 1;
            }
        }
        debug_assert!(i == positives.len() && j == negatives.len());
        Ok(out)
    }

    /// Mixture `Σ w_α Y_α` of component distributions.
    pub fn mixture<'a, I>(components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a BigRational, &'a DiscreteRV)>,
    {
        let mut atoms = Vec::new();
        for (w, rv) in components {
            for (v, p) in &rv.atoms {
                atoms.push((v.clone(), w * p));
            }
        }
        Self::from_atoms(atoms)
    }

    /// Distribution of `f(x)` for uniform `x` on the cube.
    pub fn pushforward<F: CubeFunction + ?Sized>(f: &F) -> Self {
        let n = f.len();
        let p = BigRational::new(BigInt::one(), BigInt::from(n));
        let mut counts: BTreeMap<BigRational, u64> = BTreeMap::new();
        for x in 0..n {
            *counts.entry(ratio_from_f64(f.value(x))).or_insert(0) += 1;
        }
        Self {
            atoms: counts
                .into_iter()
                .map(|(v, c)| (v, &p * BigRational::from_integer(BigInt::from(c))))
                .collect(),
        }
    }

    /// `E[(|Z| - 1)^2]`, the squared distance from `Z` to the nearest
    /// `±1`-valued function of `Z`.
    pub fn nearest_boolean_distance(&self) -> BigRational {
        let one = BigRational::one();
        self.atoms
            .iter()
            .map(|(v, p)| {
                let gap = v.abs() - &one;
                &gap * &gap * p
            })
            .sum()
    }
}

/// Distribution of `f(x)` for uniform `x`; free-function form of
/// [`DiscreteRV::pushforward`].
pub fn pushforward(f: &RealFunction) -> DiscreteRV {
    DiscreteRV::pushforward(f)
}

/// Sum of independent variables, folded left to right.
pub fn convolve_all(vars: &[DiscreteRV], cap: usize) -> Result<DiscreteRV> {
    let mut iter = vars.iter();
    let first = iter.next().ok_or(RvError::Empty)?.clone();
    iter.try_fold(first, |acc, x| acc.convolve_with_cap(x, cap))
}

impl fmt::Display for DiscreteRV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, p)) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}: {p}")?;
        }
        write!(f, "}}")
    }
}

/// A balanced variable on `{d/p, -d/(1-p)}`, or the constant zero when
/// `d = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoPointBalancedRV {
    d: BigRational,
    p: BigRational,
}

impl TwoPointBalancedRV {
    pub fn new(d: BigRational, p: BigRational) -> Result<Self> {
        if d.is_negative() {
            return Err(RvError::NegativeMagnitude(d));
        }
        if !p.is_positive() || p >= BigRational::one() {
            return Err(RvError::InvalidSplit(p));
        }
        Ok(Self { d, p })
    }

    pub fn zero() -> Self {
        Self { d: BigRational::zero(), p: BigRational::new(BigInt::one(), BigInt::from(2)) }
    }

    /// Recognizes a balanced variable with at most two atoms.
    pub fn from_rv(rv: &DiscreteRV) -> Result<Self> {
        rv.require_balanced()?;
        match rv.atoms() {
            [(v, _)] => {
                debug_assert!(v.is_zero());
                Ok(Self::zero())
            }
            [(lo, _), (hi, p_hi)] => {
                debug_assert!(lo.is_negative() && hi.is_positive());
                Self::new(hi * p_hi, p_hi.clone())
            }
            _ => Err(RvError::TooManyAtoms(rv.support_size())),
        }
    }

    pub fn d(&self) -> &BigRational {
        &self.d
    }

    /// `Pr[Y ≥ 0]`.
    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn high(&self) -> BigRational {
        &self.d / &self.p
    }

    pub fn low(&self) -> BigRational {
        -(&self.d / (BigRational::one() - &self.p))
    }

    /// The two atoms `(value, probability)`; a single zero atom when `d = 0`.
    pub fn atoms(&self) -> Vec<(BigRational, BigRational)> {
        if self.d.is_zero() {
            return vec![(BigRational::zero(), BigRational::one())];
        }
        vec![(self.low(), BigRational::one() - &self.p), (self.high(), self.p.clone())]
    }

    pub fn to_rv(&self) -> DiscreteRV {
        DiscreteRV::new(self.atoms()).expect("two-point atoms are valid")
    }

    /// `-Y`, which is again two-point balanced with the same `d` and
    /// `p ↦ 1 - p`.
    pub fn negate(&self) -> Self {
        if self.d.is_zero() {
            return self.clone();
        }
        Self { d: self.d.clone(), p: BigRational::one() - &self.p }
    }
}

/// A variable with constant absolute value: `+magnitude` with probability
/// `p_positive`, `-magnitude` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstAbsRV {
    magnitude: BigRational,
    p_positive: BigRational,
}

impl ConstAbsRV {
    pub fn new(magnitude: BigRational, p_positive: BigRational) -> Result<Self> {
        if magnitude.is_negative() {
            return Err(RvError::NegativeMagnitude(magnitude));
        }
        if p_positive.is_negative() || p_positive > BigRational::one() {
            return Err(RvError::InvalidSplit(p_positive));
        }
        Ok(Self { magnitude, p_positive })
    }

    pub fn magnitude(&self) -> &BigRational {
        &self.magnitude
    }

    pub fn p_positive(&self) -> &BigRational {
        &self.p_positive
    }

    pub fn to_rv(&self) -> DiscreteRV {
        let q = BigRational::one() - &self.p_positive;
        DiscreteRV::from_atoms([
            (-self.magnitude.clone(), q),
            (self.magnitude.clone(), self.p_positive.clone()),
        ])
        .expect("valid two-sign distribution")
    }

    /// `E[(Z - X')^2]` where `X'` is built from `Z` on the same sample
    /// space: each atom `z` is matched with `sign(z) · magnitude`.
    pub fn coupled_sq_distance(&self, source: &DiscreteRV) -> BigRational {
        source
            .atoms()
            .iter()
            .map(|(z, p)| {
                let image = if z.is_negative() { -self.magnitude.clone() } else { self.magnitude.clone() };
                let gap = z - image;
                &gap * &gap * p
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::fourier::{restriction, BooleanFunction};

    fn rv(atoms: &[(i64, i64, i64)]) -> DiscreteRV {
        // (value, prob numerator, prob denominator)
        DiscreteRV::from_atoms(atoms.iter().map(|&(v, n, d)| (int(v), rat(n, d)))).unwrap()
    }

    fn pm1() -> DiscreteRV {
        DiscreteRV::symmetric_sign(int(1))
    }

    fn claim6_x() -> DiscreteRV {
        rv(&[(0, 1, 2), (-2, 1, 4), (2, 1, 4)])
    }

    #[test]
    fn validation() {
        assert_eq!(DiscreteRV::new(vec![]), Err(RvError::Empty));
        assert!(matches!(
            DiscreteRV::new(vec![(int(0), rat(1, 2))]),
            Err(RvError::NotNormalized(_))
        ));
        assert!(matches!(
            DiscreteRV::new(vec![(int(1), rat(1, 2)), (int(0), rat(1, 2))]),
            Err(RvError::UnsortedValues(_))
        ));
        assert!(matches!(
            DiscreteRV::new(vec![(int(0), int(0)), (int(1), int(1))]),
            Err(RvError::NonPositiveProbability(_))
        ));
    }

    #[test]
    fn convolve_examples() {
        assert_eq!(pm1().convolve(&pm1()).unwrap(), rv(&[(-2, 1, 4), (0, 1, 2), (2, 1, 4)]));
        let sum = claim6_x().convolve(&pm1()).unwrap();
        assert_eq!(sum.abs(), rv(&[(1, 3, 4), (3, 1, 4)]));
        let zero = DiscreteRV::constant(int(0));
        assert_eq!(claim6_x().convolve(&zero).unwrap(), claim6_x());
    }

    #[test]
    fn convolve_respects_cap() {
        let a = rv(&[(0, 1, 2), (1, 1, 2)]);
        let b = rv(&[(0, 1, 2), (10, 1, 2)]);
        assert_eq!(a.convolve_with_cap(&b, 3), Err(RvError::AtomCap { cap: 3 }));
        assert_eq!(a.convolve_with_cap(&b, 4).unwrap().support_size(), 4);
    }

    #[test]
    fn moments() {
        assert_eq!(pm1().expectation(), int(0));
        assert_eq!(pm1().variance(), int(1));
        assert_eq!(claim6_x().expectation(), int(0));
        assert_eq!(claim6_x().variance(), int(2));
        let c = DiscreteRV::constant(int(5));
        assert_eq!((c.expectation(), c.variance()), (int(5), int(0)));
    }

    #[test]
    fn abs_examples() {
        assert_eq!(pm1().abs(), DiscreteRV::constant(int(1)));
        let sum_abs = claim6_x().convolve(&pm1()).unwrap().abs();
        assert_eq!(sum_abs.variance(), rat(3, 4));
        let nonneg = rv(&[(0, 1, 3), (4, 2, 3)]);
        assert_eq!(nonneg.abs(), nonneg);
    }

    #[test]
    fn center_examples() {
        assert_eq!(DiscreteRV::constant(int(5)).center(), DiscreteRV::constant(int(0)));
        assert_eq!(rv(&[(0, 1, 2), (2, 1, 2)]).center(), pm1());
        assert_eq!(pm1().center(), pm1());
    }

    #[test]
    fn var_abs_shifted_examples() {
        assert_eq!(pm1().var_abs_shifted(&int(0)), int(0));
        assert_eq!(pm1().var_abs_shifted(&int(1)), int(1));
        assert_eq!(claim6_x().var_abs_shifted(&int(0)), int(1));
    }

    #[test]
    fn const_abs_examples() {
        let a = pm1().const_abs_approx(&int(0));
        assert_eq!((a.magnitude(), a.p_positive()), (&int(1), &rat(1, 2)));

        let two = DiscreteRV::symmetric_sign(int(2));
        let b = two.const_abs_approx(&int(1));
        assert_eq!((b.magnitude(), b.p_positive()), (&int(2), &rat(1, 2)));
        assert_eq!(b.to_rv(), two);

        let c = DiscreteRV::constant(int(0)).const_abs_approx(&int(-3));
        assert_eq!((c.magnitude(), c.p_positive()), (&int(3), &int(0)));
        assert_eq!(c.to_rv(), DiscreteRV::constant(int(-3)));

        // sign(0) = +1
        let d = DiscreteRV::constant(int(0)).const_abs_approx(&int(0));
        assert_eq!(d.p_positive(), &int(1));
    }

    #[test]
    fn coupled_distance_is_var_abs() {
        let x = rv(&[(-3, 1, 6), (-1, 1, 3), (1, 1, 4), (5, 1, 4)]).center();
        for e in [int(0), rat(1, 2), int(-2), int(7)] {
            let approx = x.const_abs_approx(&e);
            assert_eq!(approx.coupled_sq_distance(&x.shift(&e)), x.var_abs_shifted(&e));
        }
    }

    #[test]
    fn decompose_examples() {
        let parts = pm1().two_point_decompose().unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, int(1));
        assert_eq!(parts[0].1.to_rv(), pm1());

        let skew = rv(&[(-1, 2, 3), (2, 1, 3)]);
        let parts = skew.two_point_decompose().unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].1.to_rv(), skew);

        let four = rv(&[(-3, 1, 6), (-1, 1, 3), (1, 1, 3), (3, 1, 6)]);
        let parts = four.two_point_decompose().unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, rat(2, 3));
        assert_eq!(parts[0].1.to_rv(), pm1());
        assert_eq!(parts[1].0, rat(1, 3));
        assert_eq!(parts[1].1.to_rv(), DiscreteRV::symmetric_sign(int(3)));
    }

    #[test]
    fn decompose_handles_zero_atoms_and_rejects_unbalanced() {
        let parts = claim6_x().two_point_decompose().unwrap();
        let rvs: Vec<DiscreteRV> = parts.iter().map(|(_, c)| c.to_rv()).collect();
        let mix = DiscreteRV::mixture(parts.iter().map(|(w, _)| w).zip(rvs.iter())).unwrap();
        assert_eq!(mix, claim6_x());
        assert_eq!(parts[0], (rat(1, 2), TwoPointBalancedRV::zero()));
        assert!(matches!(
            rv(&[(0, 1, 2), (2, 1, 2)]).two_point_decompose(),
            Err(RvError::NotBalanced(_))
        ));
    }

    #[test]
    fn two_point_construction() {
        let y = TwoPointBalancedRV::new(int(1), rat(1, 4)).unwrap();
        assert_eq!(y.high(), int(4));
        assert_eq!(y.low(), rat(-4, 3));
        assert!(y.to_rv().is_balanced());
        assert_eq!(TwoPointBalancedRV::from_rv(&y.to_rv()).unwrap(), y);
        assert_eq!(y.negate().to_rv(), y.to_rv().negate());
        assert!(TwoPointBalancedRV::new(int(1), int(1)).is_err());
        assert!(TwoPointBalancedRV::new(int(-1), rat(1, 2)).is_err());
    }

    #[test]
    fn pushforward_examples() {
        let x1 = BooleanFunction::dictator(2, 1).unwrap();
        assert_eq!(DiscreteRV::pushforward(&x1), pm1());
        let or2 = BooleanFunction::from_predicate(2, |x| x != 0).unwrap();
        let f1 = restriction(&or2, &[0]).unwrap();
        assert_eq!(pushforward(&f1), DiscreteRV::symmetric_sign(rat(1, 2)));
        let c = RealFunction::constant(3, 2.5).unwrap();
        assert_eq!(pushforward(&c), DiscreteRV::constant(rat(5, 2)));
    }

    #[test]
    fn nearest_boolean_examples() {
        assert_eq!(pm1().nearest_boolean_distance(), int(0));
        assert_eq!(DiscreteRV::constant(int(0)).nearest_boolean_distance(), int(1));
        let sum = claim6_x().convolve(&pm1()).unwrap();
        assert_eq!(sum.nearest_boolean_distance(), int(1));
        assert!(sum.abs().variance() <= sum.nearest_boolean_distance());
    }
}
