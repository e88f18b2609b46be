use proptest::prelude::*;
use quotzeta::hall::{hall_box, hall_consistency_check, hall_general, hall_skew};
use quotzeta::partitions::{partitions_of, Partition};

#[test]
fn consistency_up_to_six() {
    let r = hall_consistency_check(6, 3).unwrap();
    assert!(r.passed(), "{}", r.to_text());
}

#[test]
fn skew_outside_lambda_is_zero() {
    let lambda: Partition = "2,1".parse().unwrap();
    let mu: Partition = "3".parse().unwrap();
    assert!(hall_skew(&lambda, &mu).unwrap().is_zero());
    assert!(hall_box(2, 2, &mu).is_err());
}

fn arb_pair() -> impl Strategy<Value = (Partition, Partition)> {
    (0usize..=3, 0usize..=3).prop_flat_map(|(a, b)| {
        let (pa, pb) = (partitions_of(a), partitions_of(b));
        (0..pa.len(), 0..pb.len()).prop_map(move |(i, j)| (pa[i].clone(), pb[j].clone()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn general_is_symmetric((mu, nu) in arb_pair()) {
        for lambda in partitions_of(mu.size() + nu.size()) {
            prop_assert_eq!(hall_general(&lambda, &mu, &nu), hall_general(&lambda, &nu, &mu));
        }
    }
}
