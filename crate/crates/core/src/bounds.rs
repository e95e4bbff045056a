//! Lower bounds on the number of codomain points missed by a polynomial
//! map, with exact-rational reporting and exhaustive verification sweeps.
//!
//! For a non-constant, non-surjective map `f: k^n -> k^n` and a subfield
//! `l` of order `q` with `[k:l] = h`, the number of unattained points is
//! at least `n * h * (q - 1) / deg_l(f)`, where `deg_l` is the degree of
//! `f` viewed as a map of `l`-vector spaces. The classical univariate
//! bound `n(q - 1)/deg(f)` is the case `l = k`.
//!
//! The inequality is certified through a power-series argument: writing
//! `prod_{a in k} (1 - f(a)T) = 1 + sum a_i T^i` for a shifted `f` with
//! `f(0) = 0`, the coefficients `a_i` vanish for all
//! `1 <= i < h(q-1)/deg_l(f)`, which forces enough missed values. Both
//! the coefficient vanishing and the resulting fiber-product congruence
//! are recomputed here verbatim so they can be checked on every example.
//!
//! All comparisons are exact: bounds are rationals over integers, never
//! floating point.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::degrees::deg_l_via_digits;
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{point_at, Degree, MultiPoly};
use crate::polymap::PolyMap;
use crate::{Error, Result};

/// The univariate-style lower bound `n(q - 1)/d` on missed values for a
/// non-surjective map of degree `d` on an `n`-dimensional space over a
/// field of order `q`.
pub fn wan_bound(n: usize, q: u64, d: u64) -> Result<Ratio<u64>> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(Ratio::new(n as u64 * (q - 1), d))
}

/// The subfield refinement `n * h * (q - 1) / deg_l` for maps on an
/// `n`-dimensional space over a degree-`h` extension of a field of order
/// `q`, measured in the subfield degree `deg_l`.
pub fn subfield_bound(n: usize, h: usize, q: u64, deg_l: u64) -> Result<Ratio<u64>> {
    if deg_l == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(Ratio::new(n as u64 * h as u64 * (q - 1), deg_l))
}

/// Outcome of checking the missed-value bound for one map against one
/// subfield. Serializes to a stable JSON object with keys `field`,
/// `subfield`, `n`, `deg`, `deg_l`, `missed`, `bound_num`, `bound_den`,
/// `applicable`, `satisfied`; the bound fields are null for maps the
/// theorem does not cover (constant maps).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    /// Field spec text of k.
    pub field: String,
    /// Subfield cardinality q.
    pub subfield: u64,
    /// Extension degree h = [k : l].
    pub h: usize,
    /// Dimension n (components = variables).
    pub n: usize,
    /// Reduced degree over k.
    pub deg: Degree,
    /// Reduced degree over the subfield, by the digit-sum formula.
    pub deg_l: Degree,
    /// Codomain points with empty preimage.
    pub missed: u64,
    /// n * h * (q-1) / deg_l, when deg_l is finite and positive.
    pub bound: Option<Ratio<u64>>,
    /// Whether the theorem's hypotheses hold: non-constant and
    /// non-surjective.
    pub applicable: bool,
    /// missed >= bound whenever applicable; vacuously true otherwise.
    pub satisfied: bool,
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoundReport", 10)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("subfield", &self.subfield)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("deg", &self.deg)?;
        st.serialize_field("deg_l", &self.deg_l)?;
        st.serialize_field("missed", &self.missed)?;
        st.serialize_field("bound_num", &self.bound.as_ref().map(|b| *b.numer()))?;
        st.serialize_field("bound_den", &self.bound.as_ref().map(|b| *b.denom()))?;
        st.serialize_field("applicable", &self.applicable)?;
        st.serialize_field("satisfied", &self.satisfied)?;
        st.end()
    }
}

/// Subfield degree of a map: the max digit-sum degree over its non-zero
/// components, `-inf` for the zero map. Components must be reduced.
fn map_deg_l(f: &PolyMap, q: u64) -> Result<Degree> {
    let mut best = Degree::NegInfinity;
    for c in f.components() {
        if !c.is_zero() {
            best = best.max(deg_l_via_digits(c, q)?);
        }
    }
    Ok(best)
}

/// Checks the missed-value bound for `f` against the subfield of order
/// `q`, computing the image exhaustively (within `cap`) and the subfield
/// degree by digit sums on the reduced form.
pub fn verify_bound(f: &PolyMap, q: u64, cap: u64) -> Result<BoundReport> {
    let spec = f.spec();
    let (_, h) = spec.subfield_params(q)?;
    let n = f.nvars();
    if f.ncomponents() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: f.ncomponents(),
        });
    }
    let reduced = f.reduced();
    let deg = reduced.degree();
    let deg_l = map_deg_l(&reduced, q)?;
    let image = reduced.image(cap)?;
    let missed = image.missed_count();
    let bound = match deg_l {
        Degree::Finite(dl) if dl >= 1 => Some(subfield_bound(n, h, q, dl)?),
        _ => None,
    };
    let applicable = bound.is_some() && missed > 0;
    let satisfied = match (&bound, applicable) {
        (Some(b), true) => Ratio::from_integer(missed) >= *b,
        _ => true,
    };
    Ok(BoundReport {
        field: spec.to_text(),
        subfield: q,
        h,
        n,
        deg,
        deg_l,
        missed,
        bound,
        applicable,
        satisfied,
    })
}

/// Bound reports for one map across every subfield, plus the maximizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundScan {
    reports: Vec<BoundReport>,
    best: usize,
}

impl BoundScan {
    /// One report per subfield order, ascending.
    pub fn reports(&self) -> &[BoundReport] {
        &self.reports
    }

    /// The report with the largest bound; ties go to the smallest
    /// subfield.
    pub fn best(&self) -> &BoundReport {
        &self.reports[self.best]
    }
}

/// Runs [`verify_bound`] against every subfield of the map's field and
/// selects the strongest bound. Different subfields can genuinely give
/// different bounds, so all reports are retained.
pub fn best_subfield_bound(f: &PolyMap, cap: u64) -> Result<BoundScan> {
    let mut reports = Vec::new();
    for q in f.spec().subfield_orders() {
        reports.push(verify_bound(f, q, cap)?);
    }
    let mut best = 0;
    for (i, r) in reports.iter().enumerate() {
        if r.bound > reports[best].bound {
            best = i;
        }
    }
    Ok(BoundScan { reports, best })
}

/// Multiplies a truncated power series in place by `(1 - b T)`.
fn mul_one_minus_bt(coeffs: &mut [FieldElement], b: &FieldElement) {
    for i in (1..coeffs.len()).rev() {
        let carry = &coeffs[i - 1] * b;
        coeffs[i] = &coeffs[i] - &carry;
    }
}

fn series_one(spec: &FieldSpec, len: usize) -> Vec<FieldElement> {
    let mut coeffs = vec![spec.zero(); len.max(1)];
    coeffs[0] = spec.one();
    coeffs
}

/// Shifts a univariate polynomial so it vanishes at 0, reduces it, and
/// returns it with its subfield degree, validating non-constancy.
fn shifted_reduced(f: &MultiPoly, q: u64) -> Result<(MultiPoly, usize, u64)> {
    let spec = f.spec().clone();
    if f.nvars() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            got: f.nvars(),
        });
    }
    let (_, h) = spec.subfield_params(q)?;
    let at_zero = f.evaluate(&[spec.zero()])?;
    let shift = MultiPoly::constant(&spec, 1, at_zero)?;
    let g = f.sub(&shift)?.reduce(spec.order())?;
    if g.total_degree() < Degree::Finite(1) {
        return Err(Error::ZeroDegree);
    }
    let deg_l = match deg_l_via_digits(&g, q)? {
        Degree::Finite(d) if d >= 1 => d,
        _ => return Err(Error::ZeroDegree),
    };
    Ok((g, h, deg_l))
}

/// Truncation order `ceil(h(q-1)/deg_l)`: coefficients `a_i` with
/// `1 <= i < truncation` are exactly those the vanishing claim covers.
fn truncation_order(h: usize, q: u64, deg_l: u64) -> u64 {
    (h as u64 * (q - 1)).div_ceil(deg_l)
}

/// The leading coefficients of `prod_{a in k} (1 - f(a)T)` for a
/// univariate `f`, shifted so `f(0) = 0`, truncated where the vanishing
/// claim stops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesCheck {
    /// Subfield cardinality q.
    pub q: u64,
    /// Extension degree h.
    pub h: usize,
    /// Subfield degree of the shifted map.
    pub deg_l: u64,
    /// ceil(h(q-1)/deg_l).
    pub truncation: u64,
    /// a_1 ..= a_{truncation-1}; empty when truncation <= 1.
    pub coefficients: Vec<FieldElement>,
    /// Whether every listed coefficient vanishes.
    pub all_zero: bool,
}

impl Serialize for SeriesCheck {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coefficients: Vec<String> =
            self.coefficients.iter().map(FieldElement::to_text).collect();
        let mut st = s.serialize_struct("SeriesCheck", 6)?;
        st.serialize_field("subfield", &self.q)?;
        st.serialize_field("h", &self.h)?;
        st.serialize_field("deg_l", &self.deg_l)?;
        st.serialize_field("truncation", &self.truncation)?;
        st.serialize_field("coefficients", &coefficients)?;
        st.serialize_field("all_zero", &self.all_zero)?;
        st.end()
    }
}

/// Expands `prod_{a in k} (1 - f(a)T)` for a non-constant univariate `f`
/// (first shifted so `f(0) = 0`) and reports the coefficients
/// `a_1 ..= a_{truncation-1}`, which the series argument predicts are all
/// zero. The product runs over all of `k`, so the field order must stay
/// within `cap`.
pub fn elementary_symmetric_series(f: &MultiPoly, q: u64, cap: u64) -> Result<SeriesCheck> {
    let spec = f.spec().clone();
    let (g, h, deg_l) = shifted_reduced(f, q)?;
    if spec.order() > cap {
        return Err(Error::DomainTooLarge {
            points: spec.order() as u128,
            cap,
        });
    }
    let truncation = truncation_order(h, q, deg_l);
    let mut coeffs = series_one(&spec, truncation as usize);
    for a in spec.elements() {
        let value = g.evaluate(&[a])?;
        mul_one_minus_bt(&mut coeffs, &value);
    }
    let coefficients: Vec<FieldElement> = coeffs.into_iter().skip(1).collect();
    let all_zero = coefficients.iter().all(FieldElement::is_zero);
    Ok(SeriesCheck {
        q,
        h,
        deg_l,
        truncation,
        coefficients,
        all_zero,
    })
}

/// Checks the fiber-product congruence behind the bound: with `f`
/// shifted so `f(0) = 0`,
/// `prod_{a not in f(k)} (1 - aT) = prod_{b in f(k)} (1 - bT)^(#fiber - 1)`
/// modulo `T^truncation`, with both sides computed independently from the
/// exhaustive image.
pub fn fiber_series_identity_holds(f: &MultiPoly, q: u64, cap: u64) -> Result<bool> {
    let spec = f.spec().clone();
    let (g, h, deg_l) = shifted_reduced(f, q)?;
    let truncation = truncation_order(h, q, deg_l) as usize;
    let image = PolyMap::new(vec![g])?.image(cap)?;

    let mut lhs = series_one(&spec, truncation);
    for idx in image.missed_indices() {
        let a = point_at(&spec, 1, idx).pop().expect("one coordinate");
        mul_one_minus_bt(&mut lhs, &a);
    }
    let mut rhs = series_one(&spec, truncation);
    for &(idx, count) in image.fibers() {
        let b = point_at(&spec, 1, idx).pop().expect("one coordinate");
        for _ in 1..count {
            mul_one_minus_bt(&mut rhs, &b);
        }
    }
    Ok(lhs == rhs)
}

/// How maps are drawn in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Every function `k^n -> k^n`, enumerated by value table and
    /// interpolated; free of syntactic redundancy.
    AllFunctions,
    /// Uniformly random reduced maps; drawing each reduced coefficient
    /// uniformly is the same as drawing a uniformly random function.
    RandomPolys { count: u64 },
}

impl SweepMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepMode::AllFunctions => "all-functions",
            SweepMode::RandomPolys { .. } => "random-polys",
        }
    }
}

/// Parameters for a verification sweep over maps `k^n -> k^n`.
#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub n: usize,
    pub mode: SweepMode,
    /// Max number of maps an all-functions sweep may enumerate.
    pub budget: u64,
    /// Seed for random-polys mode; each map is drawn from its own RNG
    /// stream, so results do not depend on thread scheduling.
    pub seed: u64,
    /// Check only this subfield; `None` checks every subfield.
    pub subfield: Option<u64>,
    /// Enumeration cap forwarded to image computation.
    pub cap: u64,
}

/// A map whose bound check failed. The expectation is that sweeps find
/// none; any entry is evidence of an implementation bug.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Value-table index (all-functions) or draw index (random).
    pub index: u64,
    /// Reduced component texts of the offending map.
    pub components: Vec<String>,
    pub report: BoundReport,
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Violation", 3)?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field("components", &self.components)?;
        st.serialize_field("report", &self.report)?;
        st.end()
    }
}

/// Aggregate result of a sweep: how many maps were checked, any
/// violations (sorted by map index), and the distribution of slack
/// `missed - bound` per subfield among applicable reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub field: String,
    pub n: usize,
    pub mode: &'static str,
    pub maps_checked: u64,
    /// Subfield cardinalities checked, ascending.
    pub subfields: Vec<u64>,
    pub violations: Vec<Violation>,
    /// ((q, slack), count), sorted; slack is exact.
    pub slack: Vec<((u64, Ratio<i64>), u64)>,
}

impl Serialize for SweepReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct SlackRow {
            subfield: u64,
            slack_num: i64,
            slack_den: i64,
            count: u64,
        }
        let rows: Vec<SlackRow> = self
            .slack
            .iter()
            .map(|&((q, s), count)| SlackRow {
                subfield: q,
                slack_num: *s.numer(),
                slack_den: *s.denom(),
                count,
            })
            .collect();
        let mut st = s.serialize_struct("SweepReport", 7)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("maps_checked", &self.maps_checked)?;
        st.serialize_field("subfields", &self.subfields)?;
        st.serialize_field("violations", &self.violations)?;
        st.serialize_field("slack", &rows)?;
        st.end()
    }
}

fn ratio_i64(r: &Ratio<u64>) -> Ratio<i64> {
    Ratio::new(*r.numer() as i64, *r.denom() as i64)
}

struct SweepAccumulator {
    violations: Vec<Violation>,
    slack: BTreeMap<(u64, Ratio<i64>), u64>,
}

impl SweepAccumulator {
    fn new() -> SweepAccumulator {
        SweepAccumulator {
            violations: Vec::new(),
            slack: BTreeMap::new(),
        }
    }

    fn absorb(&mut self, index: u64, f: &PolyMap, reports: Vec<BoundReport>) {
        for report in reports {
            if report.applicable {
                let bound = report.bound.as_ref().expect("applicable implies bound");
                let slack = Ratio::from_integer(report.missed as i64) - ratio_i64(bound);
                *self.slack.entry((report.subfield, slack)).or_insert(0) += 1;
            }
            if !report.satisfied {
                self.violations.push(Violation {
                    index,
                    components: f
                        .components()
                        .iter()
                        .map(MultiPoly::to_text)
                        .collect(),
                    report,
                });
            }
        }
    }

    fn merge(mut self, other: SweepAccumulator) -> SweepAccumulator {
        self.violations.extend(other.violations);
        for (key, count) in other.slack {
            *self.slack.entry(key).or_insert(0) += count;
        }
        self
    }
}

/// Map with the given value-table index: the table of the function whose
/// outputs, read in domain order, are the base-`q^n` digits of `index`.
fn table_map(spec: &FieldSpec, n: usize, index: u64) -> Result<PolyMap> {
    let domain = spec.order().pow(n as u32);
    let mut rest = index;
    let outputs: Vec<Vec<FieldElement>> = (0..domain)
        .map(|_| {
            let digit = rest % domain;
            rest /= domain;
            point_at(spec, n, digit)
        })
        .collect();
    PolyMap::interpolate_table(spec, n, &outputs)
}

/// Uniformly random reduced map: every coefficient of every reduced
/// monomial drawn uniformly from its own RNG stream.
fn random_map(spec: &FieldSpec, n: usize, seed: u64, index: u64) -> Result<PolyMap> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let q = spec.order();
    let monomials = q.pow(n as u32);
    let components = (0..n)
        .map(|_| {
            let terms = (0..monomials).map(|j| {
                let exps: Vec<u64> = {
                    let mut rest = j;
                    (0..n)
                        .map(|_| {
                            let e = rest % q;
                            rest /= q;
                            e
                        })
                        .collect()
                };
                (exps, spec.element_from_index(rng.gen_range(0..q)))
            });
            MultiPoly::from_terms(spec, n, terms)
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMap::new(components)
}

/// Sweeps maps `k^n -> k^n`, checking the bound for each against the
/// requested subfields. Returns the violation list (expected empty) and
/// the slack distribution. Work is partitioned across threads; the
/// report does not depend on the partitioning.
pub fn exhaustive_bound_sweep(spec: &FieldSpec, options: &SweepOptions) -> Result<SweepReport> {
    let n = options.n;
    let subfields: Vec<u64> = match options.subfield {
        Some(q) => {
            spec.subfield_params(q)?;
            vec![q]
        }
        None => spec.subfield_orders(),
    };
    let required: u128 = match options.mode {
        SweepMode::AllFunctions => {
            let domain = (spec.order() as u128).pow(n as u32);
            domain
                .checked_pow(u32::try_from(domain).unwrap_or(u32::MAX))
                .unwrap_or(u128::MAX)
        }
        SweepMode::RandomPolys { count } => count as u128,
    };
    if required > options.budget as u128 {
        return Err(Error::BudgetExceeded {
            required,
            budget: options.budget,
        });
    }
    let total = required as u64;

    let check_one = |index: u64| -> Result<(PolyMap, Vec<BoundReport>)> {
        let f = match options.mode {
            SweepMode::AllFunctions => table_map(spec, n, index)?,
            SweepMode::RandomPolys { .. } => random_map(spec, n, options.seed, index)?,
        };
        let reports = subfields
            .iter()
            .map(|&q| verify_bound(&f, q, options.cap))
            .collect::<Result<Vec<_>>>()?;
        Ok((f, reports))
    };

    let acc: Result<SweepAccumulator> = (0..total)
        .into_par_iter()
        .try_fold(SweepAccumulator::new, |mut acc, index| {
            let (f, reports) = check_one(index)?;
            acc.absorb(index, &f, reports);
            Ok(acc)
        })
        .try_reduce(SweepAccumulator::new, |a, b| Ok(a.merge(b)));
    let mut acc = acc?;
    acc.violations.sort_by_key(|v| v.index);

    Ok(SweepReport {
        field: spec.to_text(),
        n,
        mode: options.mode.as_str(),
        maps_checked: total,
        subfields,
        violations: acc.violations,
        slack: acc.slack.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_ENUMERATION_CAP;

    const CAP: u64 = DEFAULT_ENUMERATION_CAP;

    fn gf(p: u64, m: usize) -> FieldSpec {
        FieldSpec::new(p, m).unwrap()
    }

    fn map(spec: &FieldSpec, nvars: usize, texts: &[&str]) -> PolyMap {
        PolyMap::new(
            texts
                .iter()
                .map(|t| MultiPoly::parse(t, spec, nvars).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn poly(spec: &FieldSpec, text: &str) -> MultiPoly {
        MultiPoly::parse(text, spec, 1).unwrap()
    }

    #[test]
    fn bound_arithmetic() {
        assert_eq!(wan_bound(2, 3, 2).unwrap(), Ratio::from_integer(2));
        assert_eq!(wan_bound(1, 5, 4).unwrap(), Ratio::from_integer(1));
        assert_eq!(wan_bound(3, 4, 2).unwrap(), Ratio::new(9, 2));
        assert!(matches!(wan_bound(1, 2, 0).unwrap_err(), Error::ZeroDegree));

        assert_eq!(subfield_bound(1, 2, 2, 2).unwrap(), Ratio::from_integer(1));
        assert_eq!(subfield_bound(1, 2, 2, 3).unwrap(), Ratio::new(2, 3));
        for (n, q, d) in [(1usize, 2u64, 1u64), (2, 3, 2), (1, 5, 3)] {
            assert_eq!(
                subfield_bound(n, 1, q, d).unwrap(),
                wan_bound(n, q, d).unwrap()
            );
        }
        assert!(matches!(
            subfield_bound(1, 1, 2, 0).unwrap_err(),
            Error::ZeroDegree
        ));
    }

    #[test]
    fn product_over_nonzero_elements_telescopes() {
        // prod_{a != 0} (1 - aT) = 1 - T^(q-1), the identity the series
        // machinery leans on.
        for (p, m) in [(2u64, 1usize), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let spec = gf(p, m);
            let q = spec.order() as usize;
            let mut coeffs = series_one(&spec, q);
            for a in spec.elements().filter(|a| !a.is_zero()) {
                mul_one_minus_bt(&mut coeffs, &a);
            }
            assert!(coeffs[0].is_one());
            assert!(coeffs[1..q - 1].iter().all(FieldElement::is_zero));
            assert_eq!(coeffs[q - 1], spec.one().negated());
        }
    }

    #[test]
    fn surjective_maps_are_out_of_scope() {
        let k = gf(3, 1);
        let report = verify_bound(&PolyMap::identity(&k, 1).unwrap(), 3, CAP).unwrap();
        assert_eq!(report.missed, 0);
        assert!(!report.applicable);
        assert!(report.satisfied);
        assert_eq!(report.bound, Some(Ratio::from_integer(2)));
    }

    #[test]
    fn constant_maps_have_no_bound() {
        let k = gf(3, 1);
        let report = verify_bound(&map(&k, 1, &["x1^3+2*x1+1"]), 3, CAP).unwrap();
        assert_eq!(report.deg_l, Degree::Finite(0));
        assert_eq!(report.bound, None);
        assert!(!report.applicable);
        assert!(report.satisfied);
        assert_eq!(report.missed, 2);
    }

    #[test]
    fn product_map_meets_its_bound_exactly() {
        let k = gf(3, 1);
        let report = verify_bound(&map(&k, 2, &["x1", "x1*x2"]), 3, CAP).unwrap();
        assert_eq!(report.n, 2);
        assert_eq!(report.deg, Degree::Finite(2));
        assert_eq!(report.deg_l, Degree::Finite(2));
        assert_eq!(report.missed, 2);
        assert_eq!(report.bound, Some(Ratio::from_integer(2)));
        assert!(report.applicable && report.satisfied);
    }

    #[test]
    fn squares_on_gf5_meet_their_bound_exactly() {
        let k = gf(5, 1);
        let report = verify_bound(&map(&k, 1, &["x1^2"]), 5, CAP).unwrap();
        assert_eq!(report.missed, 2);
        assert_eq!(report.bound, Some(Ratio::from_integer(2)));
        assert!(report.applicable && report.satisfied);
    }

    #[test]
    fn cube_map_bounds_agree_across_subfields() {
        let k = gf(2, 2);
        let scan = best_subfield_bound(&map(&k, 1, &["x1^3"]), CAP).unwrap();
        assert_eq!(scan.reports().len(), 2);
        let by_q: Vec<(u64, Degree, Option<Ratio<u64>>)> = scan
            .reports()
            .iter()
            .map(|r| (r.subfield, r.deg_l, r.bound))
            .collect();
        assert_eq!(
            by_q,
            vec![
                (2, Degree::Finite(2), Some(Ratio::from_integer(1))),
                (4, Degree::Finite(3), Some(Ratio::from_integer(1))),
            ]
        );
        // Equal bounds: the tie goes to the smaller subfield.
        assert_eq!(scan.best().subfield, 2);
        assert_eq!(scan.best().missed, 2);
        assert!(scan
            .reports()
            .iter()
            .all(|r| r.bound <= scan.best().bound));
    }

    #[test]
    fn prime_fields_scan_a_single_subfield() {
        let k = gf(5, 1);
        let scan = best_subfield_bound(&map(&k, 1, &["x1^2"]), CAP).unwrap();
        assert_eq!(scan.reports().len(), 1);
        assert_eq!(scan.best().subfield, 5);
    }

    #[test]
    fn report_serializes_to_the_documented_shape() {
        let k = gf(3, 1);
        let report = verify_bound(&map(&k, 2, &["x1", "x1*x2"]), 3, CAP).unwrap();
        assert_eq!(
            serde_json::to_string(&report).unwrap(),
            "{\"field\":\"3^1\",\"subfield\":3,\"n\":2,\"deg\":2,\"deg_l\":2,\
             \"missed\":2,\"bound_num\":2,\"bound_den\":1,\
             \"applicable\":true,\"satisfied\":true}"
        );
        let constant = verify_bound(&map(&k, 1, &["1"]), 3, CAP).unwrap();
        let json = serde_json::to_string(&constant).unwrap();
        assert!(json.contains("\"bound_num\":null,\"bound_den\":null"));
        assert!(json.contains("\"deg\":0"));
    }

    #[test]
    fn identity_series_vanishes_up_to_the_telescope() {
        for (p, m) in [(2u64, 1usize), (3, 1), (5, 1), (2, 2)] {
            let spec = gf(p, m);
            let q = spec.order();
            let check = elementary_symmetric_series(&poly(&spec, "x1"), q, CAP).unwrap();
            assert_eq!(check.truncation, q - 1);
            assert_eq!(check.coefficients.len(), (q - 2) as usize);
            assert!(check.all_zero);
        }
    }

    #[test]
    fn square_series_on_gf5() {
        let k = gf(5, 1);
        let check = elementary_symmetric_series(&poly(&k, "x1^2"), 5, CAP).unwrap();
        assert_eq!(check.deg_l, 2);
        assert_eq!(check.truncation, 2);
        // a_1 = -(0 + 1 + 4 + 4 + 1) = -10 = 0 mod 5.
        assert_eq!(check.coefficients.len(), 1);
        assert!(check.all_zero);
    }

    #[test]
    fn cube_series_on_gf4_is_vacuous_over_gf2() {
        let k = gf(2, 2);
        let check = elementary_symmetric_series(&poly(&k, "x1^3"), 2, CAP).unwrap();
        assert_eq!((check.h, check.deg_l, check.truncation), (2, 2, 1));
        assert!(check.coefficients.is_empty());
        assert!(check.all_zero);
    }

    #[test]
    fn series_shifts_away_the_constant_term() {
        let k = gf(5, 1);
        let shifted = elementary_symmetric_series(&poly(&k, "x1+3"), 5, CAP).unwrap();
        let plain = elementary_symmetric_series(&poly(&k, "x1"), 5, CAP).unwrap();
        assert_eq!(shifted, plain);
    }

    #[test]
    fn series_rejects_constants() {
        let k = gf(5, 1);
        assert!(matches!(
            elementary_symmetric_series(&poly(&k, "3"), 5, CAP).unwrap_err(),
            Error::ZeroDegree
        ));
        // Constant as a function, not just as a polynomial.
        assert!(matches!(
            elementary_symmetric_series(&poly(&k, "x1^5+4*x1+1"), 5, CAP).unwrap_err(),
            Error::ZeroDegree
        ));
    }

    #[test]
    fn fiber_identity_holds_for_every_function_on_gf3() {
        let k = gf(3, 1);
        for index in 0..27u64 {
            let f = table_map(&k, 1, index).unwrap();
            if f.is_constant() {
                continue;
            }
            let component = f.components()[0].clone();
            assert!(
                fiber_series_identity_holds(&component, 3, CAP).unwrap(),
                "table {index}"
            );
        }
    }

    #[test]
    fn fiber_identity_holds_on_gf4_over_both_subfields() {
        let k = gf(2, 2);
        for index in 0..256u64 {
            let f = table_map(&k, 1, index).unwrap();
            if f.is_constant() {
                continue;
            }
            let component = f.components()[0].clone();
            for q in [2, 4] {
                assert!(
                    fiber_series_identity_holds(&component, q, CAP).unwrap(),
                    "table {index}, subfield {q}"
                );
            }
        }
    }

    #[test]
    fn exhaustive_sweep_over_gf2_and_gf3() {
        let k2 = gf(2, 1);
        let report = exhaustive_bound_sweep(
            &k2,
            &SweepOptions {
                n: 1,
                mode: SweepMode::AllFunctions,
                budget: 1 << 20,
                seed: 0,
                subfield: None,
                cap: CAP,
            },
        )
        .unwrap();
        assert_eq!(report.maps_checked, 4);
        assert!(report.violations.is_empty());

        let k3 = gf(3, 1);
        let report = exhaustive_bound_sweep(
            &k3,
            &SweepOptions {
                n: 1,
                mode: SweepMode::AllFunctions,
                budget: 1 << 20,
                seed: 0,
                subfield: None,
                cap: CAP,
            },
        )
        .unwrap();
        assert_eq!(report.maps_checked, 27);
        assert!(report.violations.is_empty());
        assert_eq!(report.subfields, vec![3]);
        let counted: u64 = report.slack.iter().map(|&(_, c)| c).sum();
        assert!(counted > 0);
    }

    #[test]
    fn maps_missing_one_value_of_gf3_have_subfield_degree_two() {
        let k = gf(3, 1);
        let mut seen = 0;
        for index in 0..27u64 {
            let f = table_map(&k, 1, index).unwrap();
            let report = verify_bound(&f, 3, CAP).unwrap();
            if report.missed == 1 {
                seen += 1;
                assert_eq!(report.deg_l, Degree::Finite(2), "table {index}");
            }
        }
        // 3 choices of missed value times |image|^3 - (onto corrections):
        // functions onto a fixed 2-element set: 2^3 - 2 = 6; 3 target
        // pairs and 3 missed points give 18.
        assert_eq!(seen, 18);
    }

    #[test]
    fn sweep_budget_is_enforced() {
        let k = gf(2, 2);
        let err = exhaustive_bound_sweep(
            &k,
            &SweepOptions {
                n: 1,
                mode: SweepMode::AllFunctions,
                budget: 100,
                seed: 0,
                subfield: None,
                cap: CAP,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 100, .. }));
    }

    #[test]
    fn random_sweeps_are_deterministic_in_the_seed() {
        let k = gf(3, 2);
        let options = SweepOptions {
            n: 1,
            mode: SweepMode::RandomPolys { count: 40 },
            budget: 1 << 20,
            seed: 12345,
            subfield: None,
            cap: CAP,
        };
        let a = exhaustive_bound_sweep(&k, &options).unwrap();
        let b = exhaustive_bound_sweep(&k, &options).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.maps_checked, 40);
        assert!(a.violations.is_empty());
        assert_eq!(a.subfields, vec![3, 9]);
        let c = exhaustive_bound_sweep(
            &k,
            &SweepOptions {
                seed: 54321,
                ..options
            },
        )
        .unwrap();
        // Different draws almost surely change the slack histogram.
        assert_ne!(a.slack, c.slack);
    }

    #[test]
    fn sweep_reports_serialize_stably() {
        // Applicable maps on GF(3) are exactly those missing one value:
        // 18 of them, all with deg_l = 2, so bound 1 and slack 0.
        let k = gf(3, 1);
        let options = SweepOptions {
            n: 1,
            mode: SweepMode::AllFunctions,
            budget: 1 << 10,
            seed: 0,
            subfield: Some(3),
            cap: CAP,
        };
        let report = exhaustive_bound_sweep(&k, &options).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            json,
            "{\"field\":\"3^1\",\"n\":1,\"mode\":\"all-functions\",\
             \"maps_checked\":27,\"subfields\":[3],\"violations\":[],\
             \"slack\":[{\"subfield\":3,\"slack_num\":0,\"slack_den\":1,\"count\":18}]}"
        );
    }
}
