use num_bigint::BigInt;
use proptest::prelude::*;
use quotzeta::hall::{hall_count_oracle, hall_general};
use quotzeta::oracle::{
    build_local_model, coh_quot_invariance_check, determinism_check, eval_q, hall_oracle_check, quot_vs_formula_check,
    solomon_check, ModelTarget, DEFAULT_BUDGET,
};
use quotzeta::partitions::{partitions_of, Partition};
use quotzeta::quotzeta::{Module, SingularityFamily};
use quotzeta::Error;

#[test]
fn quot_counts_match_the_formula() {
    for m in 1..=2 {
        for f in [SingularityFamily::cusp(m), SingularityFamily::node(m)] {
            for d in 1..=2 {
                for module in [Module::Free, Module::Normalization] {
                    let r = quot_vs_formula_check(f, d, 2, 3, module, DEFAULT_BUDGET).unwrap();
                    assert!(r.passed(), "{}", r.to_text());
                }
            }
        }
    }
}

#[test]
fn quot_counts_at_three() {
    let r = quot_vs_formula_check(SingularityFamily::node(1), 1, 3, 3, Module::Free, DEFAULT_BUDGET).unwrap();
    assert!(r.passed(), "{}", r.to_text());
}

#[test]
fn solomon_and_invariance() {
    for d in 1..=2 {
        for p in [2, 3] {
            assert!(solomon_check(d, p, 4, DEFAULT_BUDGET).unwrap().passed());
        }
    }
    for (n, r) in [(1, 1), (2, 1), (2, 2)] {
        let rep =
            coh_quot_invariance_check(SingularityFamily::node(1), 2, n, r, &[r, r + 1, r + 2], DEFAULT_BUDGET).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
    }
}

#[test]
fn schedules_agree() {
    let model = build_local_model(SingularityFamily::cusp(1), 2, 3, 2, ModelTarget::Free).unwrap();
    assert!(determinism_check(&model, 3, DEFAULT_BUDGET).unwrap().passed());
}

#[test]
fn budget_is_enforced() {
    let model = build_local_model(SingularityFamily::node(2), 2, 3, 3, ModelTarget::Free).unwrap();
    let err = quotzeta::oracle::enumerate_submodules(&model, 3, 50).unwrap_err();
    assert!(matches!(err, Error::Budget { cap: 50, .. }));
}

#[test]
fn hall_counts_up_to_five() {
    for p in [2, 3] {
        let r = hall_oracle_check(5, p, DEFAULT_BUDGET).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
}

fn arb_small_partition() -> impl Strategy<Value = Partition> {
    (0usize..=4).prop_flat_map(|n| {
        let all = partitions_of(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn hall_counts_sum_over_cotypes(lambda in arb_small_partition(), k in 0usize..=4, p in prop::sample::select(vec![2u32, 3, 5])) {
        let k = k.min(lambda.size());
        for mu in partitions_of(k) {
            let total = hall_count_oracle(&lambda, &mu, None, p, DEFAULT_BUDGET).unwrap();
            let formula: BigInt = partitions_of(lambda.size() - k)
                .iter()
                .map(|nu| eval_q(&hall_general(&lambda, &mu, nu), p).unwrap())
                .sum();
            prop_assert_eq!(total, formula);
        }
    }
}
