//! Exact evaluators for the variance-of-absolute-value inequalities and the
//! partition corollary built on them.
//!
//! Every evaluator returns both sides of its inequality as exact rationals
//! in a [`BoundReport`], along with the data the existential statements
//! leave open (which summand `k`, which split `(A, B)`, which proof case).

use crate::exact::{int, rat};
use crate::fourier::{
    cross_weight_of, restriction, sq_l2_dist_exact, BooleanFunction, FourierError, Partition,
};
use crate::rv::{convolve_all, DiscreteRV, RvError, TwoPointBalancedRV, DEFAULT_ATOM_CAP};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error(transparent)]
    Rv(#[from] RvError),
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error("need at least {needed} random variables, got {got}")]
    TooFewVariables { needed: usize, got: usize },
    #[error("variance zero: the function is constant")]
    ConstantFunction,
    #[error("variances must be non-negative with a positive total")]
    DegenerateVariances,
    #[error("variable {index} carries more than two thirds of the total variance")]
    HeavyVariable { index: usize },
    #[error("premise fails: cross weight {cross} exceeds epsilon * Var f = {allowed}")]
    PremiseViolated { cross: Box<BigRational>, allowed: Box<BigRational> },
}

pub type Result<T> = std::result::Result<T, BoundError>;

/// Constants of the inequality chain: `K0` for the absolute-value transfer,
/// `K1` for the two-variable bound and `K2` for the `n`-variable bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperConstants {
    pub k0: BigRational,
    pub k1: BigRational,
    pub k2: BigRational,
}

impl PaperConstants {
    /// `K0 = 4`, `K1 = 20480`, `K2 = 61440`.
    pub fn paper() -> Self {
        Self::from_k0(int(4))
    }

    /// Derives `K1 = 5120 K0` and `K2 = 3 K1`.
    pub fn from_k0(k0: BigRational) -> Self {
        let k1 = &k0 * int(5120);
        let k2 = &k1 * int(3);
        Self { k0, k1, k2 }
    }

    pub fn with_k0(mut self, k0: BigRational) -> Self {
        self.k0 = k0;
        self
    }

    pub fn with_k1(mut self, k1: BigRational) -> Self {
        self.k1 = k1;
        self
    }

    pub fn with_k2(mut self, k2: BigRational) -> Self {
        self.k2 = k2;
        self
    }

    /// `K2 + 2`, the corollary's constant.
    pub fn corollary_k(&self) -> BigRational {
        &self.k2 + int(2)
    }
}

impl Default for PaperConstants {
    fn default() -> Self {
        Self::paper()
    }
}

/// Smallest constant for which a single instance satisfies its inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RequiredConstant {
    /// The constant-free right side vanishes; any constant works.
    Any,
    Finite(BigRational),
    /// The left side vanishes while the right side does not.
    Unbounded,
}

impl RequiredConstant {
    fn from_parts(scale: &BigRational, lhs: &BigRational) -> Self {
        if scale.is_zero() {
            RequiredConstant::Any
        } else if lhs.is_zero() {
            RequiredConstant::Unbounded
        } else {
            RequiredConstant::Finite(scale / lhs)
        }
    }
}

/// Which branch of the two-variable argument an instance falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma4Branch {
    /// `max{Var|X̄+E|, Var|Ȳ+E|} ≥ a · M_XY`: the absolute-value transfer
    /// applies directly.
    LargeAbsVariance,
    /// Both shifted variables are close to constant magnitude.
    ConstantMagnitude,
}

/// Instance data recorded next to the two sides of a bound. Indices are
/// 0-based.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Witness {
    pub k: Option<usize>,
    pub split: Option<(Vec<usize>, Vec<usize>)>,
    pub a: Option<BigRational>,
    pub min_variance: Option<BigRational>,
    pub branch: Option<Lemma4Branch>,
    pub claim8_case: Option<u8>,
    pub swapped: Option<bool>,
    /// For the absolute-value transfer: the larger of the two right-side
    /// terms came from the second variable.
    pub max_from_second: Option<bool>,
}

impl Witness {
    /// Flat `key=value` pairs with 1-based indices.
    pub fn pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        let list = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        if let Some(k) = self.k {
            out.push(("k".into(), (k + 1).to_string()));
        }
        if let Some((a, b)) = &self.split {
            out.push(("split_a".into(), list(a)));
            out.push(("split_b".into(), list(b)));
        }
        if let Some(a) = &self.a {
            out.push(("a".into(), a.to_string()));
        }
        if let Some(mv) = &self.min_variance {
            out.push(("m_xy".into(), mv.to_string()));
        }
        if let Some(branch) = self.branch {
            let name = match branch {
                Lemma4Branch::LargeAbsVariance => "large_abs_variance",
                Lemma4Branch::ConstantMagnitude => "constant_magnitude",
            };
            out.push(("branch".into(), name.into()));
        }
        if let Some(case) = self.claim8_case {
            out.push(("case".into(), case.to_string()));
        }
        if let Some(s) = self.swapped {
            out.push(("swapped".into(), s.to_string()));
        }
        if let Some(s) = self.max_from_second {
            out.push(("max_side".into(), if s { "y" } else { "x" }.into()));
        }
        out
    }

    /// Compact single-field form, `key=value` pairs joined by `;`.
    pub fn compact(&self) -> String {
        self.pairs().into_iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
    }
}

/// Both sides of an inequality `lhs ≥ rhs` on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
    /// The right side with its constant set to one.
    pub scale: BigRational,
    pub required_constant: RequiredConstant,
    pub witness: Witness,
}

impl BoundReport {
    /// `rhs = scale / constant`.
    pub fn with_constant(lhs: BigRational, scale: BigRational, constant: &BigRational, witness: Witness) -> Self {
        let rhs = if scale.is_zero() { BigRational::zero() } else { &scale / constant };
        Self::from_sides(lhs, rhs, scale, witness)
    }

    pub fn from_sides(lhs: BigRational, rhs: BigRational, scale: BigRational, witness: Witness) -> Self {
        let holds = lhs >= rhs;
        let required_constant = RequiredConstant::from_parts(&scale, &lhs);
        Self { lhs, rhs, holds, scale, required_constant, witness }
    }

    /// An exact identity `lhs = rhs`; holds only on equality.
    pub fn identity(lhs: BigRational, rhs: BigRational, witness: Witness) -> Self {
        let holds = lhs == rhs;
        Self { lhs, scale: rhs.clone(), rhs, holds, required_constant: RequiredConstant::Any, witness }
    }

    /// `lhs / rhs` when the right side is positive.
    pub fn ratio(&self) -> Option<BigRational> {
        if self.rhs.is_positive() {
            Some(&self.lhs / &self.rhs)
        } else {
            None
        }
    }
}

/// `Var|X̄ + Ȳ + E| ≥ max{Var|X̄ + E|, Var|Ȳ + E|} / K0` for balanced `X̄, Ȳ`.
pub fn lemma7_bound(
    x_bar: &DiscreteRV,
    y_bar: &DiscreteRV,
    e: &BigRational,
    constants: &PaperConstants,
) -> Result<BoundReport> {
    x_bar.require_balanced()?;
    y_bar.require_balanced()?;
    let lhs = x_bar.convolve(y_bar)?.var_abs_shifted(e);
    let vx = x_bar.var_abs_shifted(e);
    let vy = y_bar.var_abs_shifted(e);
    let from_second = vy > vx;
    let scale = if from_second { vy } else { vx };
    let witness = Witness { max_from_second: Some(from_second), ..Witness::default() };
    Ok(BoundReport::with_constant(lhs, scale, &constants.k0, witness))
}

/// `Var|X + Y| ≥ max{Var|X + E Y|, Var|Y + E X|} / K0` for arbitrary
/// independent `X, Y`, through centering and `E = E[X + Y]`.
pub fn lemma5_bound(x: &DiscreteRV, y: &DiscreteRV, constants: &PaperConstants) -> Result<BoundReport> {
    let e = x.expectation() + y.expectation();
    lemma7_bound(&x.center(), &y.center(), &e, constants)
}

/// `E_{y₁,y₂}(|x₁+y₁| - |x₂+y₂|)^2 ≥ ¼ (|x₁| - |x₂|)^2` for a two-point
/// balanced `Ȳ`.
pub fn claim8_check(x1: &BigRational, x2: &BigRational, y_bar: &TwoPointBalancedRV) -> BoundReport {
    let atoms = y_bar.atoms();
    let mut lhs = BigRational::zero();
    for (y1, p1) in &atoms {
        for (y2, p2) in &atoms {
            let gap = (x1 + y1).abs() - (x2 + y2).abs();
            lhs += &gap * &gap * p1 * p2;
        }
    }
    let gap = x1.abs() - x2.abs();
    let scale = &gap * &gap;
    let witness = Witness { claim8_case: Some(claim8_case(x1, x2, y_bar)), ..Witness::default() };
    BoundReport::with_constant(lhs, scale, &int(4), witness)
}

/// Case of the four-way analysis an instance falls into, after reducing to
/// `x₁ ≥ 0`, `|x₁| ≥ |x₂|` (swapping the evaluations, and negating both
/// together with `Ȳ` if needed):
///
/// 1. `p ≥ 1/2`
/// 2. `1/4 ≤ p < 1/2`
/// 3. `p < 1/4` and `x₁ ≤ 2d/(1-p)`
/// 4. `p < 1/4` and `x₁ > 2d/(1-p)`
///
/// where `p = Pr[Ȳ ≥ 0]`.
pub fn claim8_case(x1: &BigRational, x2: &BigRational, y_bar: &TwoPointBalancedRV) -> u8 {
    let (mut a, mut b) = (x1.clone(), x2.clone());
    if a.abs() < b.abs() {
        std::mem::swap(&mut a, &mut b);
    }
    let y = if a.is_negative() { y_bar.negate() } else { y_bar.clone() };
    if a.is_negative() {
        a = -a;
    }
    let p = if y.d().is_zero() { BigRational::one() } else { y.p().clone() };
    if p >= rat(1, 2) {
        1
    } else if p >= rat(1, 4) {
        2
    } else {
        let threshold = int(2) * y.d() / (BigRational::one() - &p);
        if a <= threshold {
            3
        } else {
            4
        }
    }
}

/// `Var|X' + Y' - E| ≥ Var X' · Var Y' / (16 (Var X̄ + E^2))` for the
/// constant-magnitude approximations `X'`, `Y'` of `X̄ + E`, `Ȳ + E`.
///
/// The bound is not symmetric in the two variables; it holds when `X̄` is
/// the one whose approximation has the larger magnitude. The evaluator puts
/// the variables in that order (keeping the given order on ties) and records
/// whether it swapped them.
pub fn claim9_bound(x_bar: &DiscreteRV, y_bar: &DiscreteRV, e: &BigRational) -> Result<BoundReport> {
    x_bar.require_balanced()?;
    y_bar.require_balanced()?;
    let xa = x_bar.const_abs_approx(e);
    let ya = y_bar.const_abs_approx(e);
    let swapped = ya.magnitude() > xa.magnitude();
    let (lead, lead_approx, other_approx) = if swapped { (y_bar, &ya, &xa) } else { (x_bar, &xa, &ya) };
    let xp = lead_approx.to_rv();
    let yp = other_approx.to_rv();
    let lhs = xp.convolve(&yp)?.var_abs_shifted(&-e.clone());
    let denom = lead.variance() + e * e;
    let scale = if denom.is_zero() {
        BigRational::zero()
    } else {
        xp.variance() * yp.variance() / denom
    };
    let witness = Witness { swapped: Some(swapped), ..Witness::default() };
    Ok(BoundReport::with_constant(lhs, scale, &int(16), witness))
}

/// `Var|X + Y| ≥ V · min{Var X, Var Y} / (K1 (V + E^2))`.
pub fn lemma4_bound(x: &DiscreteRV, y: &DiscreteRV, constants: &PaperConstants) -> Result<BoundReport> {
    let lhs = x.convolve(y)?.abs().variance();
    let (vx, vy) = (x.variance(), y.variance());
    let v = &vx + &vy;
    let e = x.expectation() + y.expectation();
    let m_xy = if vx < vy { vx } else { vy };
    let denom = &v + &e * &e;
    let (scale, a) = if denom.is_zero() {
        (BigRational::zero(), BigRational::zero())
    } else {
        (&v * &m_xy / &denom, &v / (int(2560) * &denom))
    };
    let (xb, yb) = (x.center(), y.center());
    let abs_side = std::cmp::max(xb.var_abs_shifted(&e), yb.var_abs_shifted(&e));
    let branch = if abs_side >= &a * &m_xy {
        Lemma4Branch::LargeAbsVariance
    } else {
        Lemma4Branch::ConstantMagnitude
    };
    let witness = Witness {
        a: Some(a),
        min_variance: Some(m_xy),
        branch: Some(branch),
        ..Witness::default()
    };
    Ok(BoundReport::with_constant(lhs, scale, &constants.k1, witness))
}

/// Splits indices into `A`, `B` with both variance sums in `[V/3, 2V/3]`.
///
/// A single variance in `(V/3, 2V/3]` forms `A` on its own; otherwise
/// indices are added to `A` in order until its sum first reaches `V/3`.
pub fn partition_split(variances: &[BigRational]) -> Result<(Vec<usize>, Vec<usize>)> {
    if variances.iter().any(|v| v.is_negative()) {
        return Err(BoundError::DegenerateVariances);
    }
    let total: BigRational = variances.iter().sum();
    if !total.is_positive() {
        return Err(BoundError::DegenerateVariances);
    }
    let third = &total / int(3);
    let two_thirds = &third * int(2);
    if let Some(index) = variances.iter().position(|v| *v > two_thirds) {
        return Err(BoundError::HeavyVariable { index });
    }
    let a: Vec<usize> = match variances.iter().position(|v| *v > third) {
        Some(i) => vec![i],
        None => {
            let mut acc = BigRational::zero();
            let mut a = Vec::new();
            for (i, v) in variances.iter().enumerate() {
                a.push(i);
                acc += v;
                if acc >= third {
                    break;
                }
            }
            a
        }
    };
    let b = (0..variances.len()).filter(|i| !a.contains(i)).collect();
    Ok((a, b))
}

/// `Var|Σ X_i| ≥ V · Var(Σ_{i≠k} X_i) / (K2 (V + E^2))` with `k` the index
/// of largest variance (lowest index on ties).
pub fn theorem1_check(vars: &[DiscreteRV], constants: &PaperConstants) -> Result<BoundReport> {
    theorem1_check_with_cap(vars, constants, DEFAULT_ATOM_CAP)
}

pub fn theorem1_check_with_cap(vars: &[DiscreteRV], constants: &PaperConstants, cap: usize) -> Result<BoundReport> {
    if vars.len() < 2 {
        return Err(BoundError::TooFewVariables { needed: 2, got: vars.len() });
    }
    let lhs = convolve_all(vars, cap)?.abs().variance();
    let variances: Vec<BigRational> = vars.iter().map(DiscreteRV::variance).collect();
    let v: BigRational = variances.iter().sum();
    let e: BigRational = vars.iter().map(DiscreteRV::expectation).sum();
    let mut k = 0;
    for (i, var) in variances.iter().enumerate() {
        if *var > variances[k] {
            k = i;
        }
    }
    let rest = &v - &variances[k];
    let denom = &v + &e * &e;
    let scale = if denom.is_zero() { BigRational::zero() } else { &v * &rest / &denom };
    let split = if v.is_positive() { partition_split(&variances).ok() } else { None };
    let witness = Witness { k: Some(k), split, ..Witness::default() };
    Ok(BoundReport::with_constant(lhs, scale, &constants.k2, witness))
}

/// Outcome of applying the partition corollary to one Boolean function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corollary2Report {
    /// Selected block, 0-based.
    pub k: usize,
    /// `‖f - f_k - f̂(∅)‖²`, computed pointwise.
    pub dist: BigRational,
    /// The same distance as `Σ_{S ⊄ I_k, S ≠ ∅} f̂(S)^2`.
    pub dist_fourier: BigRational,
    pub epsilon: BigRational,
    pub variance: BigRational,
    pub cross_weight: BigRational,
    pub mean: BigRational,
    /// `(K2 + 2) ε`.
    pub bound: BigRational,
    pub holds: bool,
    pub block_distances: Vec<BigRational>,
}

impl Corollary2Report {
    /// `dist / ε`, the constant this instance needs.
    pub fn required_constant(&self) -> RequiredConstant {
        RequiredConstant::from_parts(&self.dist, &self.epsilon)
    }

    /// The conclusion as `bound ≥ dist`.
    pub fn to_bound_report(&self) -> BoundReport {
        BoundReport {
            lhs: self.bound.clone(),
            rhs: self.dist.clone(),
            holds: self.holds,
            scale: self.dist.clone(),
            required_constant: self.required_constant(),
            witness: Witness { k: Some(self.k), ..Witness::default() },
        }
    }
}

/// Applies the corollary with the tightest `ε`, `cross_weight / Var f`, and
/// picks the block closest to `f` (lowest index on ties).
pub fn corollary2_apply(f: &BooleanFunction, partition: &Partition, constants: &PaperConstants) -> Result<Corollary2Report> {
    corollary2_core(f, partition, constants, None)
}

/// Same as [`corollary2_apply`] with a caller-chosen `ε`, which must satisfy
/// the premise `cross_weight ≤ ε · Var f`.
pub fn corollary2_apply_with_epsilon(
    f: &BooleanFunction,
    partition: &Partition,
    epsilon: &BigRational,
    constants: &PaperConstants,
) -> Result<Corollary2Report> {
    corollary2_core(f, partition, constants, Some(epsilon))
}

fn corollary2_core(
    f: &BooleanFunction,
    partition: &Partition,
    constants: &PaperConstants,
    epsilon: Option<&BigRational>,
) -> Result<Corollary2Report> {
    if f.vars() != partition.vars() {
        return Err(FourierError::InvalidPartition(format!(
            "partition covers {} variables, function has {}",
            partition.vars(),
            f.vars()
        ))
        .into());
    }
    let expansion = f.fourier();
    let variance = expansion.variance_exact();
    if variance.is_zero() {
        return Err(BoundError::ConstantFunction);
    }
    let cross_weight = cross_weight_of(&expansion, partition);
    let epsilon = match epsilon {
        None => &cross_weight / &variance,
        Some(eps) => {
            let allowed = eps * &variance;
            if cross_weight > allowed {
                return Err(BoundError::PremiseViolated { cross: Box::new(cross_weight), allowed: Box::new(allowed) });
            }
            eps.clone()
        }
    };
    let mean_f64 = expansion.constant_term();
    let mut block_distances = Vec::with_capacity(partition.len());
    for block in partition.blocks() {
        let approx = restriction(f, block)?.add_constant(mean_f64);
        block_distances.push(sq_l2_dist_exact(f, &approx)?);
    }
    let mut k = 0;
    for (j, d) in block_distances.iter().enumerate() {
        if *d < block_distances[k] {
            k = j;
        }
    }
    let mask = partition.block_mask(k);
    let dist_fourier = expansion.weight_exact(|s| s != 0 && s & !mask != 0);
    let dist = block_distances[k].clone();
    let bound = constants.corollary_k() * &epsilon;
    let holds = dist <= bound;
    Ok(Corollary2Report {
        k,
        dist,
        dist_fourier,
        epsilon,
        variance,
        cross_weight,
        mean: crate::exact::ratio_from_f64(mean_f64),
        bound,
        holds,
        block_distances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::claim6_example;

    fn pm(a: i64) -> DiscreteRV {
        DiscreteRV::symmetric_sign(int(a))
    }

    fn paper() -> PaperConstants {
        PaperConstants::paper()
    }

    #[test]
    fn constants_relations() {
        let c = paper();
        assert_eq!(c.k0, int(4));
        assert_eq!(c.k1, int(20480));
        assert_eq!(c.k2, int(61440));
        assert_eq!(c.corollary_k(), int(61442));
        assert_eq!(c.k1, &c.k0 * int(5120));
        assert_eq!(c.k2, &c.k1 * int(3));
    }

    #[test]
    fn lemma7_examples() {
        let r = lemma7_bound(&pm(1), &pm(1), &int(0), &paper()).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.holds), (int(1), int(0), true));
        assert_eq!(r.required_constant, RequiredConstant::Any);

        let (x, y) = claim6_example();
        let r = lemma7_bound(&x, &y, &int(0), &paper()).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (rat(3, 4), rat(1, 4)));
        assert_eq!(r.ratio(), Some(int(3)));
        assert_eq!(r.required_constant, RequiredConstant::Finite(rat(4, 3)));

        let zero = DiscreteRV::constant(int(0));
        let y = DiscreteRV::from_atoms([(int(-1), rat(2, 3)), (int(2), rat(1, 3))]).unwrap();
        for e in [int(0), rat(1, 2), int(-3)] {
            let r = lemma7_bound(&zero, &y, &e, &paper()).unwrap();
            assert_eq!(r.lhs, y.var_abs_shifted(&e));
            assert!(r.holds);
        }
        assert!(matches!(
            lemma7_bound(&DiscreteRV::constant(int(1)), &y, &int(0), &paper()),
            Err(BoundError::Rv(RvError::NotBalanced(_)))
        ));
    }

    #[test]
    fn lemma5_is_shift_invariant() {
        let (x, y) = claim6_example();
        let base = lemma5_bound(&x, &y, &paper()).unwrap();
        let moved = lemma5_bound(&x.shift(&int(5)), &y.shift(&int(-5)), &paper()).unwrap();
        assert_eq!(base, moved);
        let c = lemma5_bound(&DiscreteRV::constant(int(2)), &DiscreteRV::constant(int(-7)), &paper()).unwrap();
        assert_eq!((c.lhs, c.rhs, c.holds), (int(0), int(0), true));
    }

    #[test]
    fn claim8_examples() {
        let y = TwoPointBalancedRV::new(rat(1, 2), rat(1, 2)).unwrap();
        assert_eq!(y.to_rv(), pm(1));
        let r = claim8_check(&int(1), &int(-1), &y);
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.holds), (int(2), int(0), true));
        let r = claim8_check(&int(2), &int(0), &y);
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.holds), (int(2), int(1), true));
        let r = claim8_check(&int(5), &int(2), &TwoPointBalancedRV::zero());
        assert_eq!(r.lhs, int(9));
        assert!(r.holds);
    }

    #[test]
    fn claim8_cases() {
        let half = TwoPointBalancedRV::new(int(1), rat(1, 2)).unwrap();
        let third = TwoPointBalancedRV::new(int(1), rat(1, 3)).unwrap();
        let tenth = TwoPointBalancedRV::new(int(1), rat(1, 10)).unwrap();
        assert_eq!(claim8_case(&int(3), &int(1), &half), 1);
        assert_eq!(claim8_case(&int(3), &int(1), &third), 2);
        // 2d/(1-p) = 20/9.
        assert_eq!(claim8_case(&int(2), &int(1), &tenth), 3);
        assert_eq!(claim8_case(&rat(20, 9), &int(1), &tenth), 3);
        assert_eq!(claim8_case(&int(3), &int(1), &tenth), 4);
        // Negative x1 flips Ȳ: p = 9/10 becomes 1/10 after normalization.
        let ninetenths = TwoPointBalancedRV::new(int(1), rat(9, 10)).unwrap();
        assert_eq!(claim8_case(&int(-3), &int(1), &ninetenths), 4);
        assert_eq!(claim8_case(&int(1), &int(-3), &ninetenths), 4);
    }

    #[test]
    fn claim9_examples() {
        let r = claim9_bound(&pm(1), &pm(1), &int(0)).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (int(1), rat(1, 16)));
        let r = claim9_bound(&pm(1), &DiscreteRV::constant(int(0)), &int(1)).unwrap();
        assert!(r.holds);
        let (x, y) = claim6_example();
        let r = claim9_bound(&x, &y, &int(0)).unwrap();
        // X' = ±1 (E|X| = 1, Pr[X ≥ 0] = 3/4), Y' = ±1 uniform.
        // |X'+Y'| is 0 or 2 each with probability 1/2: variance 1.
        // rhs = (3/4)·1 / (16·2) = 3/128.
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.holds), (int(1), rat(3, 128), true));
    }

    #[test]
    fn claim9_orders_by_magnitude() {
        // Taken literally in the given order this instance fails:
        // lhs 1 against 1·25/16.
        let r = claim9_bound(&pm(1), &pm(5), &int(0)).unwrap();
        assert_eq!(r.witness.swapped, Some(true));
        assert_eq!(r.lhs, int(1));
        assert_eq!(r.rhs, rat(1, 16));
        assert!(r.holds);
    }

    #[test]
    fn lemma4_examples() {
        let r = lemma4_bound(&pm(1), &pm(1), &paper()).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (int(1), rat(1, 20480)));
        assert_eq!(r.witness.a, Some(rat(1, 2560)));
        let r = lemma4_bound(&pm(1), &DiscreteRV::constant(int(3)), &paper()).unwrap();
        assert_eq!(r.witness.min_variance, Some(int(0)));
        assert_eq!((r.rhs.clone(), r.holds), (int(0), true));
        let (x, y) = claim6_example();
        let r = lemma4_bound(&x, &y, &paper()).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.holds), (rat(3, 4), rat(1, 20480), true));
    }

    #[test]
    fn split_examples() {
        assert_eq!(partition_split(&[int(1), int(1), int(1)]).unwrap(), (vec![0], vec![1, 2]));
        let halves = vec![rat(1, 2); 4];
        assert_eq!(partition_split(&halves).unwrap(), (vec![0, 1], vec![2, 3]));
        assert_eq!(partition_split(&[int(2), int(1)]).unwrap(), (vec![0], vec![1]));
        assert_eq!(partition_split(&[int(3), int(1)]), Err(BoundError::HeavyVariable { index: 0 }));
        assert_eq!(partition_split(&[int(0), int(0)]), Err(BoundError::DegenerateVariances));
    }

    #[test]
    fn theorem1_examples() {
        let r = theorem1_check(&[pm(1), pm(1), pm(1)], &paper()).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (rat(3, 4), rat(1, 30720)));
        assert_eq!(r.witness.k, Some(0));
        assert_eq!(r.witness.split, Some((vec![0], vec![1, 2])));
        assert!(r.holds);

        let r = theorem1_check(&[pm(1), pm(100)], &paper()).unwrap();
        assert_eq!(r.witness.k, Some(1));
        assert_eq!(r.witness.split, None);
        assert!(r.holds);

        assert!(matches!(
            theorem1_check(&[pm(1)], &paper()),
            Err(BoundError::TooFewVariables { .. })
        ));
    }

    #[test]
    fn corollary2_examples() {
        let p = Partition::from_one_based(3, vec![vec![1], vec![2, 3]]).unwrap();
        let x1 = BooleanFunction::dictator(3, 1).unwrap();
        let r = corollary2_apply(&x1, &p, &paper()).unwrap();
        assert_eq!((r.epsilon.clone(), r.dist.clone(), r.holds, r.k), (int(0), int(0), true, 0));

        let or2 = BooleanFunction::from_predicate(2, |x| x != 0).unwrap();
        let p = Partition::from_one_based(2, vec![vec![1], vec![2]]).unwrap();
        let r = corollary2_apply(&or2, &p, &paper()).unwrap();
        assert_eq!(r.mean, rat(-1, 2));
        assert_eq!(r.epsilon, rat(1, 3));
        assert_eq!(r.dist, rat(1, 2));
        assert_eq!(r.dist_fourier, r.dist);
        assert_eq!(r.bound, rat(61442, 3));
        assert!(r.holds);

        let parity = BooleanFunction::parity(2, 0b11).unwrap();
        let r = corollary2_apply(&parity, &p, &paper()).unwrap();
        assert_eq!((r.epsilon.clone(), r.dist.clone(), r.holds), (int(1), int(1), true));

        let constant = BooleanFunction::constant(2, 1).unwrap();
        assert_eq!(corollary2_apply(&constant, &p, &paper()), Err(BoundError::ConstantFunction));
    }

    #[test]
    fn corollary2_caller_epsilon() {
        let or2 = BooleanFunction::from_predicate(2, |x| x != 0).unwrap();
        let p = Partition::from_one_based(2, vec![vec![1], vec![2]]).unwrap();
        let r = corollary2_apply_with_epsilon(&or2, &p, &rat(1, 2), &paper()).unwrap();
        assert_eq!(r.epsilon, rat(1, 2));
        assert!(matches!(
            corollary2_apply_with_epsilon(&or2, &p, &rat(1, 4), &paper()),
            Err(BoundError::PremiseViolated { .. })
        ));
    }
}
