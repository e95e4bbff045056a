//! Degrees of polynomial maps measured over a subfield.
//!
//! Let `k` be a field of order `q^h` and `l` its subfield of order `q`. A
//! reduced polynomial `f` over `k` in `n` variables induces a map
//! `l^{nh} -> l^{mh}` after choosing an `l`-basis of `k`, and that map has
//! its own reduced degree over `l`. The degree is basis independent and is
//! computed combinatorially: for a monomial `c * x1^{e_1} * ... * xn^{e_n}`
//! it equals the sum of the base-`q` digit sums of the exponents, and for a
//! general reduced polynomial the maximum over its monomials.
//!
//! [`deg_l_via_digits`] implements the digit-sum formula. [`deg_l_oracle`]
//! recomputes the same quantity from first principles, by expanding each
//! coordinate through a basis and interpolating the resulting function
//! tables over the subfield; it exists so the formula can be checked
//! against an independent computation.

use crate::field::{FieldElement, SubfieldIso};
use crate::poly::{interpolate, point_at, Degree};
use crate::polymap::PolyMap;
use crate::poly::MultiPoly;
use crate::{Error, Result};

/// Sum of the digits of `n` written in the given base.
pub fn digit_sum(n: u64, base: u64) -> Result<u64> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    let mut n = n;
    let mut sum = 0;
    while n > 0 {
        sum += n % base;
        n /= base;
    }
    Ok(sum)
}

/// Whether `q^h - 1 | m` implies `digit_sum(m, q) >= h * (q - 1)`; always
/// true, but checked rather than assumed. Requires `q >= 2`, `h >= 1`,
/// `m >= 1`.
pub fn check_digit_bound(q: u64, h: u32, m: u64) -> Result<bool> {
    if q < 2 {
        return Err(Error::InvalidBase(q));
    }
    debug_assert!(h >= 1 && m >= 1);
    let divides = match q.checked_pow(h) {
        // q^h - 1 > m for any representable m once q^h overflows u64.
        None => false,
        Some(qh) => m.is_multiple_of(qh - 1),
    };
    Ok(!divides || digit_sum(m, q)? >= u64::from(h) * (q - 1))
}

/// Degree over the subfield of order `q` of a polynomial reduced over its
/// own field: the maximum over monomials of the summed base-`q` digit sums
/// of the exponents.
///
/// Errors: [`Error::ZeroPolynomial`] for the zero polynomial (its degree
/// is not a finite number), [`Error::NotReduced`] if any exponent reaches
/// the field order.
pub fn deg_l_via_digits(f: &MultiPoly, q: u64) -> Result<Degree> {
    let spec = f.spec();
    spec.subfield_params(q)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let order = spec.order();
    let mut best = 0;
    for (exps, _) in f.terms() {
        let mut total = 0;
        for &e in exps {
            if e >= order {
                return Err(Error::NotReduced { exponent: e, order });
            }
            total += digit_sum(e, q)?;
        }
        best = best.max(total);
    }
    Ok(Degree::Finite(best))
}

/// First-principles subfield degree of a polynomial map: decompose inputs
/// and outputs through the power basis of the degree-`h` extension,
/// tabulate the induced map `l^{nh} -> l^{mh}` pointwise, interpolate each
/// coordinate over `l`, and take the maximum total degree. The zero map
/// has degree `-inf`; constants have degree 0.
///
/// The table has `q^{nh}` rows, so the domain must stay within `cap`.
pub fn deg_l_oracle(f: &PolyMap, q: u64, cap: u64) -> Result<Degree> {
    let iso = SubfieldIso::new(f.spec(), q)?;
    deg_l_oracle_with_iso(f, &iso, cap)
}

/// [`deg_l_oracle`] with a caller-chosen basis decomposition, used to
/// check that the degree does not depend on the basis.
pub fn deg_l_oracle_with_iso(f: &PolyMap, iso: &SubfieldIso, cap: u64) -> Result<Degree> {
    if iso.ambient() != f.spec() {
        return Err(Error::MixedFields);
    }
    let sub = iso.subfield().clone();
    let q = sub.order();
    let h = iso.h();
    let n = f.nvars();
    let m = f.ncomponents();
    let subvars = n * h;
    let rows = (q as u128).checked_pow(subvars as u32).ok_or(
        Error::DomainTooLarge {
            points: u128::MAX,
            cap,
        },
    )?;
    if rows > cap as u128 {
        return Err(Error::DomainTooLarge { points: rows, cap });
    }

    let mut tables: Vec<Vec<FieldElement>> = vec![Vec::with_capacity(rows as usize); m * h];
    for idx in 0..rows as u64 {
        let subpoint = point_at(&sub, subvars, idx);
        let point: Vec<FieldElement> = subpoint
            .chunks(h)
            .map(|parts| iso.compose(parts))
            .collect::<Result<_>>()?;
        let out = f.evaluate(&point)?;
        for (j, y) in out.iter().enumerate() {
            for (t, part) in iso.decompose(y)?.into_iter().enumerate() {
                tables[j * h + t].push(part);
            }
        }
    }

    let mut best = Degree::NegInfinity;
    for table in &tables {
        let g = interpolate(&sub, subvars, table)?;
        best = best.max(g.total_degree());
    }
    Ok(best)
}
