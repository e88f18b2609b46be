use quotzeta::clzeta::{
    cl_node, conversion_check, limit_check, matrix_count_check, node22_cl_check, special_values_check,
};
use quotzeta::quotzeta::SingularityFamily;
use quotzeta::report::Status;
use quotzeta::series::Window;

#[test]
fn limits_for_both_families() {
    for m in 1..=2 {
        for family in [SingularityFamily::cusp(m), SingularityFamily::node(m)] {
            let r = limit_check(family, &[4, 5], Window::new(5, 3)).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }
}

#[test]
fn conversions_with_oracle() {
    let r = conversion_check(SingularityFamily::node(1), Window::new(6, 4), Some((2, 10_000_000))).unwrap();
    assert_eq!(r.detail.as_deref(), Some("13 sub-checks"));
    assert!(r.passed(), "{}", r.to_text());
}

#[test]
fn matrix_pairs_up_to_two() {
    let r = matrix_count_check(2, &[2, 3], 10_000_000).unwrap();
    assert!(r.passed(), "{}", r.to_text());
}

#[test]
fn special_values() {
    for m in 1..=3 {
        let r = special_values_check(SingularityFamily::node(m), 1, 12).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
    for m in 1..=2 {
        for sign in [1, -1] {
            let r = special_values_check(SingularityFamily::cusp(m), sign, 20).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }
    let r = special_values_check(SingularityFamily::node(1), -1, 20).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    for m in 2..=3 {
        let r = special_values_check(SingularityFamily::node(m), -1, 20).unwrap();
        assert_eq!(r.status, Status::Reported, "{}", r.to_text());
        println!("{}", r.to_text());
    }
}

#[test]
fn node_numerator_is_a_1phi1() {
    let r = node22_cl_check(Window::new(10, 6)).unwrap();
    assert!(r.passed(), "{}", r.to_text());
}

#[test]
fn node_m3_fifth_coefficient() {
    // the t^5 row for m = 3, printed coefficients only
    let cl = cl_node(3, Window::new(11, 6)).unwrap();
    let row: Vec<i64> = cl.numerator.t_coeff(5).iter().map(|c| c.try_into().unwrap()).collect();
    assert_eq!(row, [0, 0, 0, -1, -2, -4, -6, -10, -14, -20, -27]);
}
