//! End-to-end acceptance suite: every headline property of the library,
//! re-verified from scratch, one pass/fail line per property.

use valueset::selftest::{self, CheckResult};
use valueset::DEFAULT_ENUMERATION_CAP;

const CAP: u64 = DEFAULT_ENUMERATION_CAP;

fn require(result: CheckResult) {
    let status = if result.passed { "PASS" } else { "FAIL" };
    println!("{status} {}: {}", result.name, result.detail);
    assert!(result.passed, "{}: {}", result.name, result.detail);
}

#[test]
fn bound_holds_for_every_univariate_map_on_small_fields() {
    require(selftest::check_bound_exhaustive_small_fields(CAP).unwrap());
}

#[test]
fn bound_holds_on_gf4_against_both_subfields() {
    require(selftest::check_subfield_bounds_gf4(CAP).unwrap());
}

#[test]
fn norm_examples_meet_the_bound_with_equality() {
    require(selftest::check_norm_examples(CAP).unwrap());
}

#[test]
fn one_missing_examples_have_maximal_degree() {
    require(selftest::check_one_missing_examples(CAP).unwrap());
}

#[test]
fn digit_degree_formula_matches_the_interpolation_oracle() {
    require(selftest::check_digit_degree_oracle(CAP).unwrap());
}

#[test]
fn series_coefficients_vanish_below_the_truncation() {
    require(selftest::check_series_vanishing(CAP).unwrap());
}

#[test]
fn digit_sums_of_divisors_are_bounded_below() {
    require(selftest::check_digit_sum_lower_bound().unwrap());
}

#[test]
fn interpolation_and_evaluation_invert_each_other() {
    require(selftest::check_interpolation_round_trip().unwrap());
}

#[test]
fn digit_sums_are_subadditive() {
    require(selftest::check_digit_subadditivity().unwrap());
}
