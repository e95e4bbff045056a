//! Built-in verification suite: one check per headline property, each
//! runnable on demand and summarized as a pass/fail line.
//!
//! Every check either enumerates its instance space exhaustively or draws
//! from a fixed-seed RNG, so two runs of the suite produce identical
//! results. The checks re-derive everything they assert; none of them
//! trust cached or constructed values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{
    elementary_symmetric_series, exhaustive_bound_sweep, fiber_series_identity_holds, SweepMode,
    SweepOptions,
};
use crate::degrees::{deg_l_oracle, deg_l_via_digits, digit_sum};
use crate::extremal::{norm_example, one_missing_example, Verification};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{interpolate, point_at, Degree, MultiPoly};
use crate::polymap::PolyMap;
use crate::Result;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, failures: u64, detail: String) -> CheckResult {
    CheckResult {
        name,
        passed: failures == 0,
        detail,
    }
}

/// Every function on GF(2), GF(3), and GF(4) in one variable satisfies
/// the missed-value bound over the field itself.
pub fn check_bound_exhaustive_small_fields(cap: u64) -> Result<CheckResult> {
    let mut maps = 0;
    let mut violations = 0;
    for (p, m) in [(2u64, 1usize), (3, 1), (2, 2)] {
        let spec = FieldSpec::new(p, m)?;
        let report = exhaustive_bound_sweep(
            &spec,
            &SweepOptions {
                n: 1,
                mode: SweepMode::AllFunctions,
                budget: 1 << 20,
                seed: 0,
                subfield: Some(spec.order()),
                cap,
            },
        )?;
        maps += report.maps_checked;
        violations += report.violations.len() as u64;
    }
    Ok(outcome(
        "bound-exhaustive-small-fields",
        violations,
        format!("{maps} univariate maps over GF(2), GF(3), GF(4); {violations} violations"),
    ))
}

/// Every function on GF(4) satisfies the bound against both of its
/// subfields.
pub fn check_subfield_bounds_gf4(cap: u64) -> Result<CheckResult> {
    let spec = FieldSpec::new(2, 2)?;
    let report = exhaustive_bound_sweep(
        &spec,
        &SweepOptions {
            n: 1,
            mode: SweepMode::AllFunctions,
            budget: 1 << 20,
            seed: 0,
            subfield: None,
            cap,
        },
    )?;
    let violations = report.violations.len() as u64;
    Ok(outcome(
        "subfield-bounds-gf4",
        violations,
        format!(
            "{} maps over GF(4), subfields {:?}; {violations} violations",
            report.maps_checked, report.subfields
        ),
    ))
}

/// Norm-form examples miss exactly q - 1 values with degree n, meeting
/// the bound with equality.
pub fn check_norm_examples(cap: u64) -> Result<CheckResult> {
    let pairs = [(2u64, 2usize), (2, 3), (3, 2), (3, 3), (4, 2), (5, 2)];
    let mut failures = 0;
    for (q, n) in pairs {
        let artifact = norm_example(q, n, cap)?;
        let good = match &artifact.verification {
            Verification::Checked(r) => {
                artifact.claimed_missed == q - 1
                    && artifact.claimed_degree == Degree::Finite(n as u64)
                    && r.missed == q - 1
                    && r.deg == Degree::Finite(n as u64)
                    && r.applicable
                    && r.satisfied
                    && r.bound.map(|b| b == (q - 1).into()) == Some(true)
            }
            Verification::Skipped { .. } => false,
        };
        if !good {
            failures += 1;
        }
    }
    Ok(outcome(
        "norm-examples-meet-bound",
        failures,
        format!(
            "{} norm maps verified, {failures} off the bound",
            pairs.len()
        ),
    ))
}

/// One-missing examples attain the maximal reduced degree n(q - 1).
pub fn check_one_missing_examples(cap: u64) -> Result<CheckResult> {
    let pairs = [(3u64, 1usize), (4, 1), (5, 1), (2, 2), (3, 2)];
    let mut failures = 0;
    for (q, n) in pairs {
        let artifact = one_missing_example(q, n, cap)?;
        let want = Degree::Finite(n as u64 * (q - 1));
        let good = match &artifact.verification {
            Verification::Checked(r) => {
                r.missed == 1 && r.deg == want && r.deg_l == want && r.satisfied
            }
            Verification::Skipped { .. } => false,
        };
        if !good {
            failures += 1;
        }
    }
    Ok(outcome(
        "one-missing-maximal-degree",
        failures,
        format!(
            "{} one-missing maps verified, {failures} below the maximal degree",
            pairs.len()
        ),
    ))
}

/// The digit-sum degree formula agrees with the restriction-of-scalars
/// oracle: exhaustively on monomials, and on random reduced polynomials.
pub fn check_digit_degree_oracle(cap: u64) -> Result<CheckResult> {
    let mut checked = 0u64;
    let mut failures = 0u64;
    for (p, m, q) in [(2u64, 2usize, 2u64), (2, 3, 2), (3, 2, 3)] {
        let spec = FieldSpec::new(p, m)?;
        for s in 0..spec.order() {
            let f = MultiPoly::monomial(&spec, 1, vec![s], spec.one())?;
            let digits = deg_l_via_digits(&f, q)?;
            let oracle = deg_l_oracle(&PolyMap::new(vec![f])?, q, cap)?;
            checked += 1;
            if digits != oracle {
                failures += 1;
            }
        }
    }

    let spec = FieldSpec::new(2, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut sampled = 0;
    while sampled < 200 {
        let nvars = rng.gen_range(1..=2usize);
        let terms: Vec<(Vec<u64>, FieldElement)> = (0..rng.gen_range(1..5usize))
            .map(|_| {
                let exps = (0..nvars).map(|_| rng.gen_range(0..4u64)).collect();
                (exps, spec.element_from_index(rng.gen_range(0..4)))
            })
            .collect();
        let f = MultiPoly::from_terms(&spec, nvars, terms)?;
        if f.is_zero() {
            continue;
        }
        sampled += 1;
        let digits = deg_l_via_digits(&f, 2)?;
        let oracle = deg_l_oracle(&PolyMap::new(vec![f])?, 2, cap)?;
        checked += 1;
        if digits != oracle {
            failures += 1;
        }
    }
    Ok(outcome(
        "digit-degree-matches-oracle",
        failures,
        format!("{checked} degree computations cross-checked; {failures} mismatches"),
    ))
}

/// For every table on `spec` with f(0) = 0, runs the series and fiber
/// checks against every subfield; returns (checks, failures).
fn series_over_tables<I>(spec: &FieldSpec, tables: I, cap: u64) -> Result<(u64, u64)>
where
    I: Iterator<Item = Vec<FieldElement>>,
{
    let mut checked = 0;
    let mut failures = 0;
    for values in tables {
        let f = interpolate(spec, 1, &values)?;
        if f.total_degree() < Degree::Finite(1) {
            continue;
        }
        for q in spec.subfield_orders() {
            let series = elementary_symmetric_series(&f, q, cap)?;
            let fibers = fiber_series_identity_holds(&f, q, cap)?;
            checked += 1;
            if !series.all_zero || !fibers {
                failures += 1;
            }
        }
    }
    Ok((checked, failures))
}

/// The leading coefficients of `prod_a (1 - f(a)T)` vanish below the
/// truncation order, and the fiber-product congruence holds: exhaustive
/// over GF(2), GF(3), GF(4), random over GF(8) and GF(9).
pub fn check_series_vanishing(cap: u64) -> Result<CheckResult> {
    let mut checked = 0;
    let mut failures = 0;
    for (p, m) in [(2u64, 1usize), (3, 1), (2, 2)] {
        let spec = FieldSpec::new(p, m)?;
        let q = spec.order();
        // Tables with f(0) = 0, indexed by the remaining q - 1 outputs.
        let tables = (0..q.pow((q - 1) as u32)).map(move |index| {
            let mut rest = index;
            let mut values = vec![spec.zero()];
            for _ in 1..q {
                values.push(spec.element_from_index(rest % q));
                rest /= q;
            }
            values
        });
        let spec = FieldSpec::new(p, m)?;
        let (c, f) = series_over_tables(&spec, tables, cap)?;
        checked += c;
        failures += f;
    }

    for (p, m) in [(2u64, 3usize), (3, 2)] {
        let spec = FieldSpec::new(p, m)?;
        let q = spec.order();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let tables = (0..500).map(|_| {
            let mut values = vec![spec.zero()];
            for _ in 1..q {
                values.push(spec.element_from_index(rng.gen_range(0..q)));
            }
            values
        });
        let spec2 = FieldSpec::new(p, m)?;
        let (c, f) = series_over_tables(&spec2, tables, cap)?;
        checked += c;
        failures += f;
    }
    Ok(outcome(
        "series-coefficients-vanish",
        failures,
        format!("{checked} series and fiber-product checks; {failures} failures"),
    ))
}

/// Multiples of q^h - 1 have base-q digit sum at least h(q - 1), for
/// q in {2, 3}, h up to 3, m up to 100000.
pub fn check_digit_sum_lower_bound() -> Result<CheckResult> {
    let mut checked = 0u64;
    let mut failures = 0u64;
    for q in [2u64, 3] {
        for h in 1..=3u64 {
            let modulus = q.pow(h as u32) - 1;
            let mut m = modulus;
            while m <= 100_000 {
                checked += 1;
                if digit_sum(m, q)? < h * (q - 1) {
                    failures += 1;
                }
                m += modulus;
            }
        }
    }
    Ok(outcome(
        "digit-sum-lower-bound",
        failures,
        format!("{checked} divisor cases up to 100000; {failures} exceptions"),
    ))
}

fn random_table(spec: &FieldSpec, nvars: usize, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    let domain = spec.order().pow(nvars as u32);
    (0..domain)
        .map(|_| spec.element_from_index(rng.gen_range(0..spec.order())))
        .collect()
}

fn random_reduced_poly(spec: &FieldSpec, nvars: usize, rng: &mut ChaCha8Rng) -> Result<MultiPoly> {
    let q = spec.order();
    let monomials = q.pow(nvars as u32);
    let terms = (0..monomials).map(|j| {
        let mut rest = j;
        let exps = (0..nvars)
            .map(|_| {
                let e = rest % q;
                rest /= q;
                e
            })
            .collect();
        (exps, spec.element_from_index(rng.gen_range(0..q)))
    });
    MultiPoly::from_terms(spec, nvars, terms)
}

/// Interpolation and evaluation invert each other: evaluating an
/// interpolant reproduces the table, and interpolating a reduced
/// polynomial's value table reproduces the polynomial. Exhaustive for
/// GF(2) in two variables, random elsewhere.
pub fn check_interpolation_round_trip() -> Result<CheckResult> {
    let mut checked = 0u64;
    let mut failures = 0u64;

    let eval_table = |f: &MultiPoly, nvars: usize| -> Result<Vec<FieldElement>> {
        let spec = f.spec();
        (0..spec.order().pow(nvars as u32))
            .map(|idx| f.evaluate(&point_at(spec, nvars, idx)))
            .collect()
    };

    // Exhaustive: all 16 tables and all 16 reduced polynomials on GF(2)^2.
    let spec = FieldSpec::new(2, 1)?;
    for index in 0..16u64 {
        let values: Vec<FieldElement> = (0..4)
            .map(|i| spec.element_from_index((index >> i) & 1))
            .collect();
        let f = interpolate(&spec, 2, &values)?;
        checked += 1;
        if eval_table(&f, 2)? != values {
            failures += 1;
        }
        let terms = (0..4u64).map(|j| {
            (
                vec![j & 1, (j >> 1) & 1],
                spec.element_from_index((index >> j) & 1),
            )
        });
        let g = MultiPoly::from_terms(&spec, 2, terms)?;
        checked += 1;
        if interpolate(&spec, 2, &eval_table(&g, 2)?)? != g {
            failures += 1;
        }
    }

    // Random for the other small shapes.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, nvars) in [(2u64, 1usize), (3, 1), (3, 2)] {
        let spec = FieldSpec::new(p, 1)?;
        for _ in 0..500 {
            let values = random_table(&spec, nvars, &mut rng);
            let f = interpolate(&spec, nvars, &values)?;
            checked += 1;
            if eval_table(&f, nvars)? != values {
                failures += 1;
            }
            let g = random_reduced_poly(&spec, nvars, &mut rng)?;
            checked += 1;
            if interpolate(&spec, nvars, &eval_table(&g, nvars)?)? != g {
                failures += 1;
            }
        }
    }
    Ok(outcome(
        "interpolation-round-trip",
        failures,
        format!("{checked} round trips; {failures} failures"),
    ))
}

/// Digit sums are subadditive: s(n + n') <= s(n) + s(n') for bases
/// 2, 3, 5 and all n, n' up to 2000.
pub fn check_digit_subadditivity() -> Result<CheckResult> {
    let mut checked = 0u64;
    let mut failures = 0u64;
    for base in [2u64, 3, 5] {
        let sums: Vec<u64> = (0..=4000)
            .map(|n| digit_sum(n, base))
            .collect::<Result<_>>()?;
        for n in 0..=2000usize {
            for n2 in 0..=2000usize {
                checked += 1;
                if sums[n + n2] > sums[n] + sums[n2] {
                    failures += 1;
                }
            }
        }
    }
    Ok(outcome(
        "digit-sum-subadditivity",
        failures,
        format!("{checked} digit-sum pairs; {failures} exceptions"),
    ))
}

/// Runs the whole suite in a fixed order.
pub fn run_all(cap: u64) -> Result<Vec<CheckResult>> {
    Ok(vec![
        check_bound_exhaustive_small_fields(cap)?,
        check_subfield_bounds_gf4(cap)?,
        check_norm_examples(cap)?,
        check_one_missing_examples(cap)?,
        check_digit_degree_oracle(cap)?,
        check_series_vanishing(cap)?,
        check_digit_sum_lower_bound()?,
        check_interpolation_round_trip()?,
        check_digit_subadditivity()?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_ENUMERATION_CAP;

    #[test]
    fn the_whole_suite_passes_and_is_deterministic() {
        let a = run_all(DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(a.len(), 9);
        for check in &a {
            assert!(check.passed, "{}: {}", check.name, check.detail);
        }
        let b = run_all(DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(a, b);
    }
}
