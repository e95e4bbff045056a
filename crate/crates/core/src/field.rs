//! Arithmetic in `GF(p^m)`: deterministic field construction, element
//! arithmetic, subfield structure, Frobenius and norm maps, and the
//! vector-space decomposition of a field over a subfield.
//!
//! A field is described by a [`FieldSpec`]: characteristic `p`, extension
//! degree `m`, and a monic irreducible modulus of degree `m` over `GF(p)`.
//! Elements are coefficient vectors in the power basis of the modulus root,
//! little-endian. When no modulus is supplied, the canonical one is chosen:
//! the monic irreducible whose coefficient vector `(c0, c1, ..., c_{m-1})`
//! is lexicographically smallest with the constant term compared first.
//! Canonical moduli make element encodings reproducible across runs.
//!
//! Elements are enumerated in odometer order on coefficient vectors, so the
//! element with index `i` has coefficients equal to the base-`p` digits of
//! `i`, least significant first. Index 0 is the zero element, index 1 is one.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::linalg::{mul_mod, GfpMatrix, GfpSolver};
use crate::{Error, Result};

const DIGIT_CHARS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

fn digit_value(ch: char) -> Option<u64> {
    match ch {
        '0'..='9' => Some(ch as u64 - '0' as u64),
        'a'..='z' => Some(ch as u64 - 'a' as u64 + 10),
        _ => None,
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut i = 3u64;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 2;
    }
    true
}

fn order_u64(p: u64, m: usize) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..m {
        acc = acc.checked_mul(p).ok_or(Error::DomainTooLarge {
            points: (p as u128).saturating_pow(m as u32),
            cap: u64::MAX,
        })?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Univariate polynomials over GF(p), used only for modulus bookkeeping.
// Little-endian coefficient vectors with the leading coefficient last.
// ---------------------------------------------------------------------------

fn upoly_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo the monic polynomial `b`.
fn upoly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    debug_assert_eq!(*b.last().unwrap(), 1);
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= db {
        return upoly_trim(r);
    }
    for i in (db..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        r[i] = 0;
        for j in 0..db {
            r[i - db + j] = (r[i - db + j] + p - mul_mod(c, b[j], p)) % p;
        }
    }
    r.truncate(db.max(1));
    upoly_trim(r)
}

fn upoly_is_zero(v: &[u64]) -> bool {
    v.iter().all(|&c| c == 0)
}

/// Monic polynomial of degree `d` whose non-leading coefficients are the
/// base-p digits of `i` with the constant term as the most significant
/// digit, so increasing `i` walks the coefficient vectors in lex order.
fn monic_by_rank(p: u64, d: usize, i: u64) -> Vec<u64> {
    let mut out = vec![0u64; d + 1];
    let mut rest = i;
    for j in (0..d).rev() {
        out[j] = rest % p;
        rest /= p;
    }
    out[d] = 1;
    out
}

fn pow_u64(base: u64, exp: usize) -> u64 {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// All monic irreducibles over GF(p) of degree `1..=dmax`, ordered by degree
/// and then lexicographically on the coefficient vector (constant term
/// first). Built by sieving: a polynomial is kept iff no kept polynomial of
/// at most half its degree divides it.
fn monic_irreducibles(p: u64, dmax: usize) -> Vec<Vec<u64>> {
    let mut irr: Vec<Vec<u64>> = Vec::new();
    for d in 1..=dmax {
        let count = pow_u64(p, d);
        for i in 0..count {
            let cand = monic_by_rank(p, d, i);
            let reducible = irr
                .iter()
                .filter(|g| g.len() - 1 <= d / 2)
                .any(|g| upoly_is_zero(&upoly_rem(&cand, g, p)));
            if !reducible {
                irr.push(cand);
            }
        }
    }
    irr
}

/// Smallest-degree, lex-smallest monic irreducible factor of `f`, or `None`
/// when `f` is irreducible. `f` must be monic of degree >= 1.
fn smallest_irreducible_factor(f: &[u64], p: u64) -> Option<Vec<u64>> {
    let d = f.len() - 1;
    if d <= 1 {
        return None;
    }
    monic_irreducibles(p, d / 2)
        .into_iter()
        .find(|g| upoly_is_zero(&upoly_rem(f, g, p)))
}

/// Non-leading coefficients of the canonical modulus for GF(p^m).
fn canonical_modulus(p: u64, m: usize) -> Vec<u64> {
    let divisors = monic_irreducibles(p, m / 2);
    let count = pow_u64(p, m);
    for i in 0..count {
        let cand = monic_by_rank(p, m, i);
        let reducible = divisors
            .iter()
            .any(|g| upoly_is_zero(&upoly_rem(&cand, g, p)));
        if !reducible {
            let mut c = cand;
            c.pop();
            return c;
        }
    }
    unreachable!("an irreducible of every degree exists over GF(p)")
}

fn format_upoly(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (e, c) {
            (0, _) => format!("{c}"),
            (1, 1) => "t".to_string(),
            (1, _) => format!("{c}t"),
            (_, 1) => format!("t^{e}"),
            (_, _) => format!("{c}t^{e}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

// ---------------------------------------------------------------------------
// FieldSpec
// ---------------------------------------------------------------------------

struct SpecInner {
    p: u64,
    m: usize,
    order: u64,
    /// Non-leading modulus coefficients c0..c_{m-1}; the leading one is 1.
    modulus: Vec<u64>,
    canonical: bool,
}

/// Description of a finite field `GF(p^m)`. Cheap to clone; two specs are
/// compatible for arithmetic iff they have the same `p`, `m`, and modulus.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<SpecInner>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.m == other.inner.m
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.p.hash(state);
        self.inner.m.hash(state);
        self.inner.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({})", self.to_text())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FieldSpec {
    /// GF(p^m) with the canonical modulus.
    pub fn new(p: u64, m: usize) -> Result<FieldSpec> {
        Self::validate_pm(p, m)?;
        let order = order_u64(p, m)?;
        let modulus = canonical_modulus(p, m);
        Ok(FieldSpec {
            inner: Arc::new(SpecInner {
                p,
                m,
                order,
                modulus,
                canonical: true,
            }),
        })
    }

    /// GF(p^m) with an explicit modulus, given as all `m + 1` coefficients
    /// from the constant term up. The polynomial must be monic (after
    /// reduction mod p) and irreducible.
    pub fn with_modulus(p: u64, m: usize, coeffs: &[u64]) -> Result<FieldSpec> {
        Self::validate_pm(p, m)?;
        let order = order_u64(p, m)?;
        if coeffs.len() != m + 1 {
            return Err(Error::BadModulus { expected: m });
        }
        let reduced: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
        if reduced[m] != 1 {
            return Err(Error::BadModulus { expected: m });
        }
        if let Some(factor) = smallest_irreducible_factor(&reduced, p) {
            return Err(Error::ReducibleModulus {
                factor: format_upoly(&factor),
            });
        }
        let mut modulus = reduced;
        modulus.pop();
        let canonical = modulus == canonical_modulus(p, m);
        Ok(FieldSpec {
            inner: Arc::new(SpecInner {
                p,
                m,
                order,
                modulus,
                canonical,
            }),
        })
    }

    fn validate_pm(p: u64, m: usize) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if m == 0 {
            return Err(Error::BadModulus { expected: 0 });
        }
        Ok(())
    }

    /// Parses `"p^m"` (canonical modulus), `"p"` (prime field), or
    /// `"p^m/c0,c1,...,cm"` (explicit modulus coefficients).
    pub fn parse_text(text: &str) -> Result<FieldSpec> {
        let bad = || Error::FieldSpecFormat(text.to_string());
        let s = text.trim();
        let (head, modulus) = match s.split_once('/') {
            Some((h, rest)) => (h, Some(rest)),
            None => (s, None),
        };
        let (p_str, m_str) = match head.split_once('^') {
            Some((p, m)) => (p, m),
            None => (head, "1"),
        };
        let p: u64 = p_str.parse().map_err(|_| bad())?;
        let m: usize = m_str.parse().map_err(|_| bad())?;
        match modulus {
            None => FieldSpec::new(p, m),
            Some(list) => {
                let coeffs = list
                    .split(',')
                    .map(|c| c.trim().parse::<u64>().map_err(|_| bad()))
                    .collect::<Result<Vec<u64>>>()?;
                FieldSpec::with_modulus(p, m, &coeffs)
            }
        }
    }

    /// `"p^m"` when the modulus is canonical, otherwise the explicit form.
    pub fn to_text(&self) -> String {
        if self.inner.canonical {
            format!("{}^{}", self.inner.p, self.inner.m)
        } else {
            let coeffs: Vec<String> = self.modulus().iter().map(u64::to_string).collect();
            format!("{}^{}/{}", self.inner.p, self.inner.m, coeffs.join(","))
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> usize {
        self.inner.m
    }

    /// Number of elements, p^m.
    pub fn order(&self) -> u64 {
        self.inner.order
    }

    /// All `m + 1` modulus coefficients from the constant term up.
    pub fn modulus(&self) -> Vec<u64> {
        let mut v = self.inner.modulus.clone();
        v.push(1);
        v
    }

    pub fn is_canonical_modulus(&self) -> bool {
        self.inner.canonical
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            spec: self.clone(),
            coeffs: vec![0; self.inner.m],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_residue(1)
    }

    /// Constant element of the prime subfield.
    pub fn from_residue(&self, r: u64) -> FieldElement {
        let mut coeffs = vec![0; self.inner.m];
        coeffs[0] = r % self.inner.p;
        FieldElement {
            spec: self.clone(),
            coeffs,
        }
    }

    /// Element from explicit coefficients (little-endian, length `m`);
    /// entries are reduced mod p.
    pub fn element(&self, coeffs: Vec<u64>) -> Result<FieldElement> {
        if coeffs.len() != self.inner.m {
            return Err(Error::ElementLength {
                expected: self.inner.m,
                got: coeffs.len(),
            });
        }
        let p = self.inner.p;
        Ok(FieldElement {
            spec: self.clone(),
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        })
    }

    /// The element whose coefficients are the base-p digits of `index`.
    pub fn element_from_index(&self, index: u64) -> FieldElement {
        debug_assert!(index < self.inner.order);
        let p = self.inner.p;
        let mut coeffs = vec![0; self.inner.m];
        let mut rest = index;
        for c in coeffs.iter_mut() {
            *c = rest % p;
            rest /= p;
        }
        FieldElement {
            spec: self.clone(),
            coeffs,
        }
    }

    /// Position of `x` in enumeration order.
    pub fn index_of(&self, x: &FieldElement) -> u64 {
        debug_assert_eq!(&x.spec, self);
        let p = self.inner.p;
        x.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + c)
    }

    /// All elements in odometer order: 0 first, 1 second.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.order).map(move |i| self.element_from_index(i))
    }

    /// Orders of all subfields, ascending; includes p and p^m.
    pub fn subfield_orders(&self) -> Vec<u64> {
        (1..=self.inner.m)
            .filter(|d| self.inner.m.is_multiple_of(*d))
            .map(|d| pow_u64(self.inner.p, d))
            .collect()
    }

    /// For a subfield order q = p^d with d | m, returns (d, h) with dh = m.
    pub fn subfield_params(&self, q: u64) -> Result<(usize, usize)> {
        let p = self.inner.p;
        let m = self.inner.m;
        let err = Error::InvalidSubfieldOrder { q, p, m };
        if q < 2 || !q.is_multiple_of(p) {
            return Err(err);
        }
        let mut d = 0usize;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            d += 1;
        }
        if rest != 1 || d == 0 || !m.is_multiple_of(d) {
            return Err(err);
        }
        Ok((d, m / d))
    }

    /// The q elements fixed by x -> x^q, in enumeration order.
    pub fn subfield_elements(&self, q: u64) -> Result<Vec<FieldElement>> {
        self.subfield_params(q)?;
        Ok(self
            .elements()
            .filter(|x| x.pow(q) == *x)
            .collect())
    }

    /// A standalone GF(q) with its own canonical modulus.
    pub fn subfield_spec(&self, q: u64) -> Result<FieldSpec> {
        let (d, _) = self.subfield_params(q)?;
        FieldSpec::new(self.inner.p, d)
    }

    /// Parses the element text format: a little-endian digit string in base
    /// p (digits 0-9 then a-z), or comma-separated decimal residues when p
    /// does not fit in one digit. Strings shorter than `m` digits are
    /// padded with zeros at the high end.
    pub fn element_from_text(&self, text: &str) -> Result<FieldElement> {
        let p = self.inner.p;
        let m = self.inner.m;
        let mut coeffs: Vec<u64> = Vec::new();
        if text.is_empty() {
            return Err(Error::Syntax {
                position: 0,
                message: "empty element literal".to_string(),
            });
        }
        if text.contains(',') {
            let parts = text.split(',').count();
            if parts > m {
                return Err(Error::ElementLength {
                    expected: m,
                    got: parts,
                });
            }
            let mut offset = 0usize;
            for part in text.split(',') {
                let c: u64 = part.trim().parse().map_err(|_| Error::Syntax {
                    position: offset,
                    message: format!("bad residue \"{part}\""),
                })?;
                if c >= p {
                    return Err(Error::Syntax {
                        position: offset,
                        message: format!("residue {c} out of range for characteristic {p}"),
                    });
                }
                coeffs.push(c);
                offset += part.len() + 1;
            }
        } else {
            let chars = text.chars().count();
            if chars > m {
                return Err(Error::ElementLength {
                    expected: m,
                    got: chars,
                });
            }
            for (pos, ch) in text.char_indices() {
                let c = digit_value(ch).ok_or_else(|| Error::Syntax {
                    position: pos,
                    message: format!("invalid digit '{ch}'"),
                })?;
                if c >= p {
                    return Err(Error::Syntax {
                        position: pos,
                        message: format!("digit '{ch}' out of range for characteristic {p}"),
                    });
                }
                coeffs.push(c);
            }
        }
        coeffs.resize(m, 0);
        self.element(coeffs)
    }
}

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

/// Element of a [`FieldSpec`], as a little-endian coefficient vector in the
/// power basis of the modulus root. Equal elements have equal vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    spec: FieldSpec,
    coeffs: Vec<u64>,
}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.spec.inner.p.hash(state);
        self.spec.inner.m.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.to_text(), self.spec.to_text())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// Enumeration order; only meaningful within one field.
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.spec, other.spec);
        self.coeffs.iter().rev().cmp(other.coeffs.iter().rev())
    }
}

impl FieldElement {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn require_same_spec(&self, other: &FieldElement) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn checked_add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.require_same_spec(rhs)?;
        let p = self.spec.inner.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(FieldElement {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    pub fn checked_sub(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.require_same_spec(rhs)?;
        let p = self.spec.inner.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        Ok(FieldElement {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    pub fn checked_mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.require_same_spec(rhs)?;
        let spec = &self.spec.inner;
        let p = spec.p;
        let m = spec.m;
        if m == 1 {
            return Ok(FieldElement {
                spec: self.spec.clone(),
                coeffs: vec![mul_mod(self.coeffs[0], rhs.coeffs[0], p)],
            });
        }
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        // Fold t^i for i >= m back down using t^m = -(c_{m-1} t^{m-1} + ... + c0).
        for i in (m..2 * m - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &mj) in spec.modulus.iter().enumerate() {
                prod[i - m + j] = (prod[i - m + j] + p - mul_mod(c, mj, p)) % p;
            }
        }
        prod.truncate(m);
        Ok(FieldElement {
            spec: self.spec.clone(),
            coeffs: prod,
        })
    }

    pub fn negated(&self) -> FieldElement {
        let p = self.spec.inner.p;
        FieldElement {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        }
    }

    /// Scalar multiple by a prime-field residue.
    pub fn mul_residue(&self, r: u64) -> FieldElement {
        let p = self.spec.inner.p;
        let r = r % p;
        FieldElement {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|&c| mul_mod(c, r, p)).collect(),
        }
    }

    /// Square-and-multiply exponentiation; `x.pow(0)` is 1.
    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut acc = self.spec.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base).unwrap();
            }
            base = base.checked_mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, computed as x^(q-2).
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.spec.order() - 2))
    }

    /// x^q for a subfield order q; the generator of the automorphisms
    /// fixing that subfield.
    pub fn frobenius(&self, q: u64) -> Result<FieldElement> {
        self.spec.subfield_params(q)?;
        Ok(self.pow(q))
    }

    /// Product of the conjugates x^(q^s) for 0 <= s < h, equal to
    /// x^((q^h - 1)/(q - 1)); lands in the q-subfield and vanishes only at 0.
    pub fn norm_to(&self, q: u64) -> Result<FieldElement> {
        let (_, h) = self.spec.subfield_params(q)?;
        let mut acc = self.spec.one();
        let mut conjugate = self.clone();
        for _ in 0..h {
            acc = acc.checked_mul(&conjugate)?;
            conjugate = conjugate.pow(q);
        }
        debug_assert!(acc.in_subfield(q).unwrap());
        Ok(acc)
    }

    /// Whether x^q = x.
    pub fn in_subfield(&self, q: u64) -> Result<bool> {
        self.spec.subfield_params(q)?;
        Ok(self.pow(q) == *self)
    }

    /// Little-endian digit string (base p), or comma-separated residues
    /// when p needs more than one digit character.
    pub fn to_text(&self) -> String {
        let p = self.spec.inner.p;
        if p as usize <= DIGIT_CHARS.len() {
            self.coeffs
                .iter()
                .map(|&c| DIGIT_CHARS[c as usize] as char)
                .collect()
        } else {
            let parts: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
            parts.join(",")
        }
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("mixed-field arithmetic")
            }
        }

        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).expect("mixed-field arithmetic")
            }
        }

        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$checked(rhs).expect("mixed-field arithmetic")
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.negated()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.negated()
    }
}

// ---------------------------------------------------------------------------
// Subfield embedding and decomposition
// ---------------------------------------------------------------------------

fn eval_residue_poly(coeffs: &[u64], x: &FieldElement) -> FieldElement {
    let spec = x.spec();
    let mut acc = spec.zero();
    for &c in coeffs.iter().rev() {
        acc = &(&acc * x) + &spec.from_residue(c);
    }
    acc
}

/// Identification of a standalone GF(q) with the q-subfield of an ambient
/// field: the standalone generator is sent to the first root (in ambient
/// enumeration order) of its modulus.
#[derive(Debug, Clone)]
pub struct SubfieldEmbedding {
    ambient: FieldSpec,
    sub: FieldSpec,
    /// Powers root^0 .. root^{d-1} as ambient elements.
    root_powers: Vec<FieldElement>,
    solver: GfpSolver,
}

impl SubfieldEmbedding {
    pub fn new(ambient: &FieldSpec, q: u64) -> Result<SubfieldEmbedding> {
        let (d, _) = ambient.subfield_params(q)?;
        let sub = FieldSpec::new(ambient.characteristic(), d)?;
        let sub_modulus = sub.modulus();
        let root = ambient
            .elements()
            .find(|x| eval_residue_poly(&sub_modulus, x).is_zero())
            .expect("a degree-d irreducible splits in every extension of degree divisible by d");
        let mut root_powers = Vec::with_capacity(d);
        let mut acc = ambient.one();
        for _ in 0..d {
            root_powers.push(acc.clone());
            acc = &acc * &root;
        }
        let columns: Vec<Vec<u64>> = root_powers.iter().map(|x| x.coeffs().to_vec()).collect();
        let matrix = GfpMatrix::from_columns(ambient.characteristic(), ambient.degree(), &columns);
        let solver = GfpSolver::new(&matrix);
        debug_assert_eq!(solver.rank(), d);
        Ok(SubfieldEmbedding {
            ambient: ambient.clone(),
            sub,
            root_powers,
            solver,
        })
    }

    pub fn ambient(&self) -> &FieldSpec {
        &self.ambient
    }

    pub fn subfield(&self) -> &FieldSpec {
        &self.sub
    }

    /// Standalone subfield element -> ambient element.
    pub fn lift(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.spec() != &self.sub {
            return Err(Error::MixedFields);
        }
        let mut acc = self.ambient.zero();
        for (i, &c) in x.coeffs().iter().enumerate() {
            acc = &acc + &self.root_powers[i].mul_residue(c);
        }
        Ok(acc)
    }

    /// Ambient element -> standalone subfield element; errors when the
    /// element lies outside the subfield.
    pub fn project(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.spec() != &self.ambient {
            return Err(Error::MixedFields);
        }
        let coords = self.solver.solve(x.coeffs()).ok_or(Error::NotInSubfield)?;
        self.sub.element(coords)
    }
}

/// l-linear identification of an ambient field k with l^h for a subfield l
/// of order q, via an l-basis of k (the power basis of the modulus root by
/// default). `decompose` and `compose` are mutually inverse bijections.
#[derive(Debug, Clone)]
pub struct SubfieldIso {
    embedding: SubfieldEmbedding,
    basis: Vec<FieldElement>,
    d: usize,
    h: usize,
    inverse: GfpMatrix,
}

impl SubfieldIso {
    /// Power basis 1, t, ..., t^{h-1} of the ambient modulus root t.
    pub fn new(ambient: &FieldSpec, q: u64) -> Result<SubfieldIso> {
        let (_, h) = ambient.subfield_params(q)?;
        let t = if ambient.degree() == 1 {
            ambient.one()
        } else {
            ambient.element_from_index(ambient.characteristic())
        };
        let mut basis = Vec::with_capacity(h);
        let mut acc = ambient.one();
        for _ in 0..h {
            basis.push(acc.clone());
            acc = &acc * &t;
        }
        Self::with_basis(ambient, q, basis)
    }

    /// Same identification through an arbitrary l-basis of k.
    pub fn with_basis(ambient: &FieldSpec, q: u64, basis: Vec<FieldElement>) -> Result<SubfieldIso> {
        let (d, h) = ambient.subfield_params(q)?;
        if basis.len() != h {
            return Err(Error::ArityMismatch {
                expected: h,
                got: basis.len(),
            });
        }
        for b in &basis {
            if b.spec() != ambient {
                return Err(Error::MixedFields);
            }
        }
        let embedding = SubfieldEmbedding::new(ambient, q)?;
        let mut columns = Vec::with_capacity(d * h);
        for b in &basis {
            for root_power in &embedding.root_powers {
                columns.push((b * root_power).coeffs().to_vec());
            }
        }
        let matrix = GfpMatrix::from_columns(ambient.characteristic(), ambient.degree(), &columns);
        let inverse = matrix.inverse().ok_or(Error::SingularBasis)?;
        Ok(SubfieldIso {
            embedding,
            basis,
            d,
            h,
            inverse,
        })
    }

    pub fn ambient(&self) -> &FieldSpec {
        self.embedding.ambient()
    }

    /// The standalone GF(q) on the l side.
    pub fn subfield(&self) -> &FieldSpec {
        self.embedding.subfield()
    }

    pub fn q(&self) -> u64 {
        self.subfield().order()
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn embedding(&self) -> &SubfieldEmbedding {
        &self.embedding
    }

    /// Coordinates of x in the basis: h standalone subfield elements.
    pub fn decompose(&self, x: &FieldElement) -> Result<Vec<FieldElement>> {
        if x.spec() != self.ambient() {
            return Err(Error::MixedFields);
        }
        let coords = self.inverse.mul_vec(x.coeffs());
        let sub = self.subfield().clone();
        coords
            .chunks(self.d)
            .map(|chunk| sub.element(chunk.to_vec()))
            .collect()
    }

    /// Inverse of `decompose`: sum of basis_j * lift(parts_j).
    pub fn compose(&self, parts: &[FieldElement]) -> Result<FieldElement> {
        if parts.len() != self.h {
            return Err(Error::ArityMismatch {
                expected: self.h,
                got: parts.len(),
            });
        }
        let mut acc = self.ambient().zero();
        for (b, part) in self.basis.iter().zip(parts) {
            acc = &acc + &(b * &self.embedding.lift(part)?);
        }
        Ok(acc)
    }
}
