use logiprob_core::event::{
    b_eval, bernoulli_pmf, binomial_tail, f_event, frequency, lln_bound, random_event, series_members,
    success_count, t_sum, variance_identity_check, EventExpr, ProbModel, TestScheme,
};
use logiprob_core::rational::{binomial, int, ratio};
use num::{BigRational, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn scheme(r: usize, p: BigRational) -> TestScheme {
    TestScheme::new("S", r, p).unwrap()
}

#[test]
fn t_sum_matches_pmf_by_enumeration() {
    for p in [ratio(1, 4), ratio(2, 3)] {
        let s = scheme(8, p.clone());
        for r in 1..=8 {
            let model = s.model(r).unwrap();
            for k in 0..=r {
                let brute = b_eval(&model, &t_sum(&s, r, k).unwrap()).unwrap();
                assert_eq!(brute, bernoulli_pmf(r as u64, k as u64, &p).unwrap(), "r={r} k={k}");
            }
        }
    }
}

#[test]
fn member_counts_are_binomial() {
    let s = scheme(10, ratio(1, 2));
    for r in 1..=10usize {
        for k in 0..=r {
            let n = series_members(&s, r, k).unwrap().len();
            assert_eq!(n.to_u64(), binomial(r as u64, k as u64).to_u64());
        }
    }
}

#[test]
fn t_sums_partition_the_outcomes() {
    let s = scheme(6, ratio(1, 3));
    let model = s.model(6).unwrap();
    let sums: Vec<EventExpr> = (0..=6).map(|k| t_sum(&s, 6, k).unwrap()).collect();
    let total: BigRational = sums.iter().map(|e| b_eval(&model, e).unwrap()).sum();
    assert_eq!(total, int(1));
    for i in 0..sums.len() {
        for j in i + 1..sums.len() {
            let both = EventExpr::product(sums[i].clone(), sums[j].clone());
            assert!(b_eval(&model, &both).unwrap().is_zero());
        }
    }
}

#[test]
fn t_sum_is_the_frequency_event() {
    let s = scheme(5, ratio(1, 2));
    let model = s.model(5).unwrap();
    for k in 0..=5 {
        let occurs = model.occurrence(&t_sum(&s, 5, k).unwrap()).unwrap();
        for (row, hit) in occurs.into_iter().enumerate() {
            let values = model.row_values(row);
            assert_eq!(hit, frequency(&values, 5) == ratio(k as i64, 5));
        }
    }
}

#[test]
fn range_event_occurs_exactly_on_counts_in_range() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..60 {
        let r = rng.random_range(1..=10usize);
        let p = ratio(rng.random_range(0..=10), 10);
        let s = scheme(r, p.clone());
        let a = ratio(rng.random_range(-20..=110), 10);
        let b = &a + ratio(rng.random_range(0..=60), 10);
        let ev = f_event(&s, r, &a, &b).unwrap();
        let model = s.model(r).unwrap();
        let occurs = model.occurrence(&ev.event).unwrap();
        for (row, hit) in occurs.into_iter().enumerate() {
            let k = int(success_count(&model.row_values(row), r) as i64);
            assert_eq!(hit, a <= k && k <= b, "r={r} a={a} b={b} row={row}");
        }
        assert_eq!(b_eval(&model, &ev.event).unwrap(), binomial_tail(r as u64, &a, &b, &p).unwrap());
    }
}

#[test]
fn association_of_sums_is_irrelevant() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let names: Vec<String> = ["A", "B", "C", "D"].iter().map(|s| s.to_string()).collect();
    let model = ProbModel::product(names.iter().cloned().zip([ratio(1, 2), ratio(1, 3), ratio(3, 4), ratio(1, 5)])).unwrap();
    for _ in 0..200 {
        let (x, y, z) = (
            random_event(&names, 3, &mut rng),
            random_event(&names, 3, &mut rng),
            random_event(&names, 3, &mut rng),
        );
        let left = EventExpr::sum(EventExpr::sum(x.clone(), y.clone()), z.clone());
        let right = EventExpr::sum(x.clone(), EventExpr::sum(y.clone(), z.clone()));
        assert!(model.same_event(&left, &right).unwrap());
        assert!(model.same_event(&EventExpr::sum(x.clone(), y.clone()), &EventExpr::sum(y, x)).unwrap());
        assert_eq!(b_eval(&model, &left).unwrap(), b_eval(&model, &right).unwrap());
    }
}

#[test]
fn tail_dominates_bound_on_fine_grid() {
    for r in (10..=60).step_by(10) {
        for pn in 1..10 {
            let p = ratio(pn, 10);
            for eps in [ratio(1, 20), ratio(1, 10), ratio(1, 5)] {
                let rr = int(r);
                let tail = binomial_tail(r as u64, &(&rr * (&p - &eps)), &(&rr * (&p + &eps)), &p).unwrap();
                assert!(tail >= lln_bound(r as u64, &p, &eps).unwrap(), "r={r} p={p} eps={eps}");
            }
        }
    }
}

proptest! {
    #[test]
    fn pmf_sums_to_one(r in 0u64..40, pn in 0i64..=20) {
        let p = ratio(pn, 20);
        let total: BigRational = (0..=r).map(|k| bernoulli_pmf(r, k, &p).unwrap()).sum();
        prop_assert_eq!(total, int(1));
    }

    #[test]
    fn variance_identity(r in 0u64..30, pn in 0i64..=12) {
        prop_assert!(variance_identity_check(r, &ratio(pn, 12)).unwrap().holds());
    }

    #[test]
    fn sum_equals_its_definition(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let names: Vec<String> = ["A", "B", "C"].iter().map(|s| s.to_string()).collect();
        let model = ProbModel::product(names.iter().cloned().zip([ratio(1, 7), ratio(1, 2), ratio(5, 6)])).unwrap();
        let e = random_event(&names, 4, &mut rng);
        prop_assert_eq!(b_eval(&model, &e).unwrap(), b_eval(&model, &e.desugar()).unwrap());
        prop_assert!(model.same_event(&e, &e.desugar()).unwrap());
    }
}
