use fknlab::bounds::{claim9_bound, lemma7_bound, PaperConstants};
use fknlab::exact::{int, ratio_from_f64};
use fknlab::format::{parse_real_function, parse_rv, parse_truth_table, write_real_function, write_rv, write_truth_table};
use fknlab::fourier::{
    cross_partition_weight_exact, cross_partition_weight_via_blocks, inverse_wht, restriction, sq_l2_dist_exact,
    variance_exact, wht, BooleanFunction, RealFunction,
};
use fknlab::harness::gen::{random_partition, random_rv, RvGrid};
use fknlab::{BigRational, DiscreteRV};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn boolean(max_m: usize) -> impl Strategy<Value = BooleanFunction> {
    (1..=max_m).prop_flat_map(|m| {
        prop::collection::vec(prop::bool::ANY, 1 << m)
            .prop_map(move |bits| BooleanFunction::from_predicate(m, |x| bits[x]).unwrap())
    })
}

/// Values `k/16` in `[-4, 4]`.
fn dyadic_table(m: usize) -> impl Strategy<Value = RealFunction> {
    prop::collection::vec(-64i32..=64, 1 << m)
        .prop_map(move |v| RealFunction::new(m, v.into_iter().map(|k| k as f64 / 16.0).collect()).unwrap())
}

fn rv() -> impl Strategy<Value = DiscreteRV> {
    (1usize..=5, any::<u64>()).prop_map(|(s, seed)| random_rv(s, seed, &RvGrid::default()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parseval(f in boolean(8)) {
        prop_assert!(f.fourier().weight_exact(|_| true).is_one());
    }

    #[test]
    fn transform_roundtrip(f in (1usize..=6).prop_flat_map(dyadic_table)) {
        prop_assert_eq!(inverse_wht(&wht(&f)), f);
    }

    #[test]
    fn relaxed_triangle(
        (f, g, h) in (1usize..=4).prop_flat_map(|m| (dyadic_table(m), dyadic_table(m), dyadic_table(m)))
    ) {
        let lhs = sq_l2_dist_exact(&f, &g).unwrap() + sq_l2_dist_exact(&g, &h).unwrap();
        prop_assert!(lhs * int(2) >= sq_l2_dist_exact(&f, &h).unwrap());
    }

    #[test]
    fn variance_is_distance_to_mean(f in (1usize..=5).prop_flat_map(dyadic_table)) {
        let var = variance_exact(&f);
        prop_assert_eq!(var.clone(), f.pointwise_variance_exact());
        let c = RealFunction::constant(f.vars(), f.mean()).unwrap();
        prop_assert_eq!(sq_l2_dist_exact(&f, &c).unwrap(), var);
    }

    #[test]
    fn convolution_adds_variance(x in rv(), y in rv()) {
        let z = x.convolve(&y).unwrap();
        prop_assert_eq!(z.variance(), x.variance() + y.variance());
        prop_assert_eq!(z.expectation(), x.expectation() + y.expectation());
    }

    #[test]
    fn abs_does_not_increase_variance(x in rv()) {
        prop_assert!(x.abs().variance() <= x.variance());
    }

    #[test]
    fn pair_difference_identity(x in rv()) {
        prop_assert_eq!(x.variance(), x.half_pair_sq_diff());
    }

    #[test]
    fn const_abs_distance_identity(x in rv(), e in -8i64..=8) {
        let xb = x.center();
        let e = BigRational::new(e.into(), 2.into());
        let approx = xb.const_abs_approx(&e);
        prop_assert_eq!(approx.coupled_sq_distance(&xb.shift(&e)), xb.var_abs_shifted(&e));
    }

    #[test]
    fn decomposition_reconstructs(x in rv()) {
        let xb = x.center();
        let parts = xb.two_point_decompose().unwrap();
        let rvs: Vec<(BigRational, DiscreteRV)> = parts.iter().map(|(w, t)| (w.clone(), t.to_rv())).collect();
        let total: BigRational = rvs.iter().map(|(w, _)| w.clone()).sum();
        prop_assert!(total.is_one());
        prop_assert_eq!(DiscreteRV::mixture(rvs.iter().map(|(w, r)| (w, r))).unwrap(), xb);
        for (_, r) in &rvs {
            prop_assert!(r.support_size() <= 2);
            prop_assert!(r.expectation().is_zero());
        }
    }

    #[test]
    fn lemma7_and_claim9_hold(x in rv(), y in rv(), e in -8i64..=8) {
        let e = BigRational::new(e.into(), 3.into());
        let (xb, yb) = (x.center(), y.center());
        prop_assert!(lemma7_bound(&xb, &yb, &e, &PaperConstants::paper()).unwrap().holds);
        prop_assert!(claim9_bound(&xb, &yb, &e).unwrap().holds);
    }

    #[test]
    fn cross_weight_two_ways(f in boolean(6), seed in any::<u64>()) {
        prop_assume!(f.vars() >= 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let blocks = 2 + (seed as usize) % (f.vars() - 1);
        let p = random_partition(&mut rng, f.vars(), blocks).unwrap();
        prop_assert_eq!(
            cross_partition_weight_exact(&f, &p).unwrap(),
            cross_partition_weight_via_blocks(&f, &p).unwrap()
        );
        // Restrictions to distinct blocks are orthogonal.
        let r: Vec<RealFunction> = p.blocks().iter().map(|b| restriction(&f, b).unwrap()).collect();
        let inner = fknlab::exact::exact_sum(r[0].table().iter().zip(r[1].table()).map(|(a, b)| a * b));
        prop_assert!(inner.is_zero());
    }

    #[test]
    fn formats_roundtrip(f in boolean(6), g in (1usize..=4).prop_flat_map(dyadic_table), x in rv()) {
        prop_assert_eq!(parse_truth_table(&write_truth_table(&f, Some("h"))).unwrap(), f);
        prop_assert_eq!(parse_real_function(&write_real_function(&g, None)).unwrap(), g);
        prop_assert_eq!(parse_rv(&write_rv(&x, None)).unwrap(), x);
    }

    #[test]
    fn boolean_distance_is_four_times_disagreement(f in boolean(6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = fknlab::harness::gen::random_boolean_function(&mut rng, f.vars());
        let disagree = (0..1usize << f.vars()).filter(|&x| f.get(x) != g.get(x)).count();
        let expected = ratio_from_f64(4.0 * disagree as f64 / (1u64 << f.vars()) as f64);
        prop_assert_eq!(sq_l2_dist_exact(&f, &g).unwrap(), expected);
    }
}
