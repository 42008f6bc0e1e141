//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines always print:
//! `cargo test -p fknlab --test acceptance`.

use fknlab::bounds::{lemma5_bound, PaperConstants, RequiredConstant};
use fknlab::constructions::{claim6_example, tribes_example, tribes_linear_part};
use fknlab::exact::{exact_sum, int, parse_rational, rat, ratio_from_f64};
use fknlab::fourier::{
    balance_extend, character, sq_l2_dist_exact, variance_exact, wht, BooleanFunction, CubeFunction,
    RealFunction,
};
use fknlab::harness::gen::{enumerate_boolean_functions, instance_rng, random_boolean_function};
use fknlab::harness::{corollary2_exhaustive, run_sweep, SweepConfig, SweepResult, Target};
use fknlab::BigRational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::panic;
use std::time::Instant;

const SEED: u64 = 20240611;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn sweep(target: Target, n: usize) -> Result<SweepResult, String> {
    let cfg = SweepConfig::new(target).with_instances(n).with_seed(SEED);
    let r = run_sweep(&cfg).map_err(|e| e.to_string())?;
    ensure(r.instances >= n, format!("{target}: only {} instances", r.instances))?;
    ensure(
        r.is_clean(),
        format!("{target}: {} violations, {} errors; first {:?} {:?}", r.violations.len(), r.errors.len(), r.violations.first(), r.errors.first()),
    )?;
    Ok(r)
}

/// `2^{-m} Σ_x f(x) χ_S(x)` for every `S`.
fn naive_transform(f: &impl CubeFunction) -> Vec<f64> {
    let n = f.len();
    (0..n)
        .map(|s| (0..n).map(|x| f.value(x) * character(s, x)).sum::<f64>() / n as f64)
        .collect()
}

/// Exact `Σ_{S ∈ keep} f̂(S)^2` from the naive transform.
fn naive_weight(f: &impl CubeFunction, keep: impl Fn(usize) -> bool) -> BigRational {
    let c = naive_transform(f);
    (0..c.len())
        .filter(|&s| keep(s))
        .map(|s| ratio_from_f64(c[s]) * ratio_from_f64(c[s]))
        .sum()
}

fn criterion1() -> Outcome {
    let (x, y) = claim6_example();
    let r = lemma5_bound(&x, &y, &PaperConstants::paper()).map_err(|e| e.to_string())?;
    ensure(r.lhs == rat(3, 4), format!("Var|X+Y| = {}", r.lhs))?;
    ensure(x.abs().variance() == int(1), "Var|X| != 1")?;
    ensure(r.scale == int(1), format!("max side = {}", r.scale))?;
    ensure(r.required_constant == RequiredConstant::Finite(rat(4, 3)), format!("{:?}", r.required_constant))?;
    let weak = lemma5_bound(&x, &y, &PaperConstants::from_k0(parse_rational("1.33").unwrap())).unwrap();
    ensure(!weak.holds, "K0 = 1.33 should fail")?;
    let tight = lemma5_bound(&x, &y, &PaperConstants::from_k0(rat(4, 3))).unwrap();
    ensure(tight.holds, "K0 = 4/3 should hold")?;
    Ok("Var|X+Y| = 3/4, Var|X| = 1, required K0 = 4/3; 1.33 fails, 4/3 holds".into())
}

fn criterion2() -> Outcome {
    for m in 1..=10usize {
        let (f, _) = tribes_example(m).map_err(|e| e.to_string())?;
        let dist = sq_l2_dist_exact(&f, &tribes_linear_part(m).unwrap()).unwrap();
        let expected_dist = BigRational::new(BigInt::from(4), BigInt::one() << (2 * m));
        ensure(dist == expected_dist, format!("m={m}: dist {dist}"))?;
        // p = Pr[f = -1] by counting the table.
        let p = BigRational::new(BigInt::from(f.count_true()), BigInt::one() << (2 * m));
        let q = BigRational::one() - BigRational::new(BigInt::one(), BigInt::one() << m);
        ensure(p == BigRational::one() - &q * &q, format!("m={m}: p {p}"))?;
        let var = variance_exact(&f);
        ensure(var == int(4) * &p * (BigRational::one() - &p), format!("m={m}: Var {var}"))?;
    }
    Ok("m = 1..10: dist = 4*2^-2m and Var f = 4p(1-p) exactly".into())
}

fn criterion3() -> Outcome {
    let mut total = 0;
    let mut worst = BigRational::zero();
    for m in 1..=3 {
        let r = corollary2_exhaustive(m, &PaperConstants::paper()).map_err(|e| e.to_string())?;
        ensure(r.is_clean(), format!("m={m}: {:?}", r.violations.first()))?;
        total += r.instances;
        worst = worst.max(r.empirical_constant().map_err(|e| e.to_string())?);
    }
    // Independent check of the distance identity against the naive transform.
    let p = fknlab::Partition::all_two_block(3).unwrap();
    for f in enumerate_boolean_functions(3).unwrap().filter(|f| !f.is_constant()) {
        for part in &p {
            let rep = fknlab::bounds::corollary2_apply(&f, part, &PaperConstants::paper()).unwrap();
            let mask = part.block_mask(rep.k);
            let oracle = naive_weight(&f, |s| s != 0 && s & !mask != 0);
            ensure(rep.dist == oracle, format!("{:?}: dist {} vs {}", f.table(), rep.dist, oracle))?;
        }
    }
    Ok(format!("{total} instances (m <= 3), zero violations, empirical constant {worst}"))
}

fn criterion4() -> Outcome {
    let mut parts = Vec::new();
    for target in [Target::Lemma7, Target::Lemma5, Target::Lemma4, Target::Claim8, Target::Claim9, Target::Theorem1] {
        let r = sweep(target, 10_000)?;
        if target == Target::Claim8 {
            let mut cases = BTreeMap::new();
            for o in &r.outcomes {
                let case = o.result.as_ref().unwrap().witness.claim8_case.unwrap();
                *cases.entry(case).or_insert(0usize) += 1;
            }
            ensure(cases.len() == 4, format!("claim8 cases covered: {cases:?}"))?;
        }
        parts.push(format!("{target}:{}", r.instances));
    }
    Ok(format!("zero violations on {}", parts.join(" ")))
}

fn criterion5() -> Outcome {
    let mut cfg = SweepConfig::new(Target::Lemma7).with_instances(10_000).with_seed(SEED);
    cfg.include_claim6 = true;
    let k = run_sweep(&cfg).and_then(|r| r.empirical_constant()).map_err(|e| e.to_string())?;
    ensure(k >= rat(4, 3) && k <= int(4), format!("empirical constant {k}"))?;
    Ok(format!("empirical lemma7 constant {k} in [4/3, 4]"))
}

fn criterion6() -> Outcome {
    for target in [Target::Fact1, Target::Fact4, Target::Fact6, Target::Fact7, Target::Fact8] {
        sweep(target, 1_000)?;
    }
    for target in [Target::Fact2, Target::Fact3, Target::Fact5] {
        sweep(target, 1_000)?;
    }
    for m in 1..=3 {
        let all: Vec<BooleanFunction> = enumerate_boolean_functions(m).unwrap().collect();
        for f in &all {
            let coeffs = naive_transform(f);
            let mean = ratio_from_f64(coeffs[0]);
            // Fact 3: variance from the spectrum, against 1 - E[f]^2.
            let var = variance_exact(f);
            ensure(var == BigRational::one() - &mean * &mean, format!("fact3 {:?}", f.table()))?;
            // Fact 5: distance to the mean.
            let c = RealFunction::constant(m, coeffs[0]).unwrap();
            ensure(sq_l2_dist_exact(f, &c).unwrap() == var, format!("fact5 {:?}", f.table()))?;
            for g in &all {
                // Fact 2: pointwise distance = coefficient distance = 4 Pr[f != g].
                let d = sq_l2_dist_exact(f, g).unwrap();
                let gc = naive_transform(g);
                let spectral = exact_sum(coeffs.iter().zip(&gc).map(|(a, b)| (a - b) * (a - b)));
                let disagree = (0..f.len()).filter(|&x| f.get(x) != g.get(x)).count() as i64;
                ensure(d == spectral, format!("fact2 {:?} {:?}", f.table(), g.table()))?;
                ensure(d == rat(4 * disagree, 1 << m), "fact2 hamming")?;
            }
        }
    }
    Ok("facts 1,4,6,7,8 on 1000 instances; facts 2,3,5 exhaustive m <= 3 and 1000 random real functions".into())
}

fn criterion7() -> Outcome {
    let mut count = 0;
    for m in 1..=4 {
        for f in enumerate_boolean_functions(m).unwrap() {
            let g = balance_extend(&f).map_err(|e| e.to_string())?;
            let fc = naive_transform(&f);
            let gc = naive_transform(&g);
            ensure(gc[0] == 0.0, format!("unbalanced {:?}", f.table()))?;
            for i in 0..m {
                ensure(gc[1 << i] == fc[1 << i], "singleton coefficient moved")?;
            }
            ensure(gc[1 << m] == fc[0], "new variable does not carry the mean")?;
            let level1_g = naive_weight(&g, |s| s.count_ones() == 1);
            let level01_f = naive_weight(&f, |s| s.count_ones() <= 1);
            ensure(level1_g == level01_f, "level weights differ")?;
            count += 1;
        }
    }
    Ok(format!("{count} functions on m <= 4"))
}

fn criterion8() -> Outcome {
    let r = sweep(Target::KreinMilman, 1_000)?;
    Ok(format!("{} instances: exact mixture, two-point mean-zero parts, convexity holds", r.instances))
}

fn criterion9() -> Outcome {
    let mut checked = 0;
    for m in 1..=3 {
        for f in enumerate_boolean_functions(m).unwrap() {
            ensure(wht(&f).coeffs() == naive_transform(&f).as_slice(), format!("m={m} {:?}", f.table()))?;
            checked += 1;
        }
    }
    for i in 0..100 {
        let mut rng = instance_rng(SEED, i);
        let f = random_boolean_function(&mut rng, 10);
        ensure(wht(&f).coeffs() == naive_transform(&f).as_slice(), format!("random m=10 #{i}"))?;
        checked += 1;
    }
    Ok(format!("{checked} functions agree exactly"))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 9] = [
        (1, criterion1),
        (2, criterion2),
        (3, criterion3),
        (4, criterion4),
        (5, criterion5),
        (6, criterion6),
        (7, criterion7),
        (8, criterion8),
        (9, criterion9),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({secs:.1}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL ({secs:.1}s) {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
