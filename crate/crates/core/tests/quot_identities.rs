use proptest::prelude::*;
use quotzeta::exactalg::LaurentPoly2;
use quotzeta::quotzeta::{
    check_functional_equation, cusp_squaring_check, degree_bound_check, funceq_check, node22_check, nz, nz_node_free,
    point_count_check, skew_cauchy_bounded_check, special_check, t2_check, Module, SingularityFamily,
};
use quotzeta::report::Status;

fn family(node: bool, m: usize) -> SingularityFamily {
    if node {
        SingularityFamily::node(m)
    } else {
        SingularityFamily::cusp(m)
    }
}

#[test]
fn functional_equation_all_small_cases() {
    for m in 1..=3 {
        for d in 1..=3 {
            for f in [SingularityFamily::cusp(m), SingularityFamily::node(m)] {
                let r = funceq_check(f, d);
                assert!(r.passed(), "{}", r.to_text());
            }
        }
    }
}

#[test]
fn a_flipped_coefficient_breaks_the_functional_equation() {
    let good = nz_node_free(2, 2);
    let bad = &good + &LaurentPoly2::monomial(1, 2, 3);
    let r = check_functional_equation(&bad, 2, 2);
    assert_eq!(r.status, Status::Fail);
    assert!(r.discrepancy.is_some());
    assert!(r.to_text().contains("first discrepancy"));
}

#[test]
fn squaring_and_skew_cauchy() {
    for m in 1..=3 {
        for d in 1..=4 {
            assert!(cusp_squaring_check(m, d).passed());
        }
        for d in 1..=3 {
            assert!(skew_cauchy_bounded_check(m, d).passed());
            assert!(t2_check(m, d).passed());
        }
    }
}

#[test]
fn node22_and_specializations() {
    for d in 1..=5 {
        assert!(node22_check(d).passed());
    }
    for m in 1..=3 {
        for d in 1..=3 {
            for f in [SingularityFamily::cusp(m), SingularityFamily::node(m)] {
                let r = special_check(f, d);
                assert!(r.passed(), "{}", r.to_text());
            }
        }
    }
}

#[test]
fn numerators_start_with_one() {
    for m in 1..=3 {
        for d in 1..=3 {
            for f in [SingularityFamily::cusp(m), SingularityFamily::node(m)] {
                for module in [Module::Free, Module::Normalization] {
                    assert_eq!(nz(f, d, module).t_coeff(0), LaurentPoly2::one());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn degree_and_point_counts(node in any::<bool>(), m in 1usize..=4, d in 1usize..=3) {
        let f = family(node, m);
        prop_assert!(degree_bound_check(f, d).passed());
        prop_assert!(point_count_check(f, d, Module::Free, 4).passed());
    }

    #[test]
    fn funceq_beyond_the_tested_range(node in any::<bool>(), m in 1usize..=5, d in 1usize..=3) {
        prop_assert!(funceq_check(family(node, m), d).passed());
    }
}
