//! Sparse multivariate polynomials over a finite field: construction,
//! arithmetic, evaluation, reduction modulo `x_i^q - x_i`, degrees, a text
//! grammar, and interpolation from value tables.
//!
//! Reduction uses the exponent rule `e -> ((e - 1) mod (q - 1)) + 1` for
//! `e >= 1`, the closed form of repeatedly replacing `x_i^q` by `x_i`. The
//! reduced representative has every per-variable exponent at most `q - 1`,
//! induces the same function on the field, and is unique for that function,
//! which is what makes interpolation from a value table well defined.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{inv_mod, mul_mod};
use crate::{Error, Result};

/// Total degree of a polynomial: a nonnegative integer, or the distinguished
/// value for the zero polynomial (smaller than every finite degree).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u64),
}

impl Degree {
    pub fn as_finite(self) -> Option<u64> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Degree::Finite(_))
    }
}

impl From<u64> for Degree {
    fn from(d: u64) -> Degree {
        Degree::Finite(d)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl serde::Serialize for Degree {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::NegInfinity => serializer.serialize_str("-inf"),
            Degree::Finite(d) => serializer.serialize_u64(*d),
        }
    }
}

/// Multivariate polynomial in `nvars` variables over a fixed field, stored
/// as a map from exponent vectors to nonzero coefficients. The zero
/// polynomial is the empty map.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    spec: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Vec<u64>, FieldElement>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({} over {})", self.to_text(), self.spec)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl MultiPoly {
    pub fn zero(spec: &FieldSpec, nvars: usize) -> MultiPoly {
        MultiPoly {
            spec: spec.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(spec: &FieldSpec, nvars: usize, value: FieldElement) -> Result<MultiPoly> {
        Self::monomial(spec, nvars, vec![0; nvars], value)
    }

    pub fn monomial(
        spec: &FieldSpec,
        nvars: usize,
        exponents: Vec<u64>,
        coeff: FieldElement,
    ) -> Result<MultiPoly> {
        if coeff.spec() != spec {
            return Err(Error::MixedFields);
        }
        if exponents.len() != nvars {
            return Err(Error::ArityMismatch {
                expected: nvars,
                got: exponents.len(),
            });
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponents, coeff);
        }
        Ok(MultiPoly {
            spec: spec.clone(),
            nvars,
            terms,
        })
    }

    /// The variable `x<index>`, 1-based.
    pub fn variable(spec: &FieldSpec, nvars: usize, index: usize) -> Result<MultiPoly> {
        if index == 0 || index > nvars {
            return Err(Error::VariableOutOfRange { index, nvars });
        }
        let mut exps = vec![0; nvars];
        exps[index - 1] = 1;
        Self::monomial(spec, nvars, exps, spec.one())
    }

    /// Sums an arbitrary term list, combining duplicates and dropping zeros.
    pub fn from_terms<I>(spec: &FieldSpec, nvars: usize, terms: I) -> Result<MultiPoly>
    where
        I: IntoIterator<Item = (Vec<u64>, FieldElement)>,
    {
        let mut poly = MultiPoly::zero(spec, nvars);
        for (exps, coeff) in terms {
            if coeff.spec() != spec {
                return Err(Error::MixedFields);
            }
            if exps.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: exps.len(),
                });
            }
            poly.add_term(exps, coeff);
        }
        Ok(poly)
    }

    fn add_term(&mut self, exps: Vec<u64>, coeff: FieldElement) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms as (exponent vector, coefficient), in exponent-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u64], &FieldElement)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Coefficient of the given monomial; zero when absent.
    pub fn coefficient(&self, exponents: &[u64]) -> FieldElement {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(|| self.spec.zero())
    }

    fn require_compatible(&self, rhs: &MultiPoly) -> Result<()> {
        if self.spec != rhs.spec {
            return Err(Error::MixedFields);
        }
        if self.nvars != rhs.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: rhs.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &MultiPoly) -> Result<MultiPoly> {
        self.require_compatible(rhs)?;
        let mut out = self.clone();
        for (exps, coeff) in &rhs.terms {
            out.add_term(exps.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn negated(&self) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.negated()))
            .collect();
        MultiPoly {
            spec: self.spec.clone(),
            nvars: self.nvars,
            terms,
        }
    }

    pub fn sub(&self, rhs: &MultiPoly) -> Result<MultiPoly> {
        self.add(&rhs.negated())
    }

    pub fn mul(&self, rhs: &MultiPoly) -> Result<MultiPoly> {
        self.require_compatible(rhs)?;
        let mut out = MultiPoly::zero(&self.spec, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u64> = ea
                    .iter()
                    .zip(eb)
                    .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                    .collect();
                out.add_term(exps, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &FieldElement) -> Result<MultiPoly> {
        if c.spec() != &self.spec {
            return Err(Error::MixedFields);
        }
        if c.is_zero() {
            return Ok(MultiPoly::zero(&self.spec, self.nvars));
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, a)| (e.clone(), a * c))
            .collect();
        Ok(MultiPoly {
            spec: self.spec.clone(),
            nvars: self.nvars,
            terms,
        })
    }

    /// `f^q` for `q` a subfield order: in characteristic p, raising to a
    /// power of p distributes over sums, so each term maps to its q-th
    /// power individually.
    pub fn frobenius_power(&self, q: u64) -> Result<MultiPoly> {
        self.spec.subfield_params(q)?;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let exps: Vec<u64> = e
                    .iter()
                    .map(|&a| a.checked_mul(q).expect("exponent overflow"))
                    .collect();
                (exps, c.pow(q))
            })
            .collect();
        Ok(MultiPoly {
            spec: self.spec.clone(),
            nvars: self.nvars,
            terms,
        })
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        for x in point {
            if x.spec() != &self.spec {
                return Err(Error::MixedFields);
            }
        }
        let mut acc = self.spec.zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (x, &e) in point.iter().zip(exps) {
                if e > 0 {
                    term = &term * &x.pow(e);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Max over terms of the exponent sum; the zero polynomial has no
    /// finite degree.
    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|e| Degree::Finite(e.iter().sum()))
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    /// Canonical representative modulo `(x_i^q - x_i)`: every exponent
    /// `e >= 1` becomes `((e - 1) mod (q - 1)) + 1`, and collided monomials
    /// are combined. Same induced function on a field of q elements.
    pub fn reduce(&self, q: u64) -> Result<MultiPoly> {
        if q < 2 {
            return Err(Error::InvalidBase(q));
        }
        let mut out = MultiPoly::zero(&self.spec, self.nvars);
        for (exps, coeff) in &self.terms {
            let reduced: Vec<u64> = exps
                .iter()
                .map(|&e| if e == 0 { 0 } else { (e - 1) % (q - 1) + 1 })
                .collect();
            out.add_term(reduced, coeff.clone());
        }
        Ok(out)
    }

    /// Total degree of the reduced representative: the least degree of any
    /// polynomial inducing the same function on a field of q elements.
    pub fn reduced_degree(&self, q: u64) -> Result<Degree> {
        Ok(self.reduce(q)?.total_degree())
    }

    /// Canonical text: graded-lex descending terms joined by `+`, factors
    /// joined by `*`, unit coefficients omitted next to variables.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return self.spec.zero().to_text();
        }
        let mut entries: Vec<(&Vec<u64>, &FieldElement)> = self.terms.iter().collect();
        entries.sort_by(|(ea, _), (eb, _)| {
            let (da, db) = (ea.iter().sum::<u64>(), eb.iter().sum::<u64>());
            db.cmp(&da).then_with(|| eb.cmp(ea))
        });
        let mut parts = Vec::with_capacity(entries.len());
        for (exps, coeff) in entries {
            let mut factors = Vec::new();
            if !coeff.is_one() || exps.iter().all(|&e| e == 0) {
                factors.push(coeff.to_text());
            }
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join("+")
    }

    /// Parses the term grammar: terms joined by `+`, each term a `*`-joined
    /// product of factors, a factor being `x<i>` with an optional `^<exp>`
    /// or a coefficient literal in the element text format. Whitespace is
    /// insignificant.
    pub fn parse(text: &str, spec: &FieldSpec, nvars: usize) -> Result<MultiPoly> {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            spec,
            nvars,
        }
        .parse_poly()
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    spec: &'a FieldSpec,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn syntax(&self, pos: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse_poly(mut self) -> Result<MultiPoly> {
        let mut poly = MultiPoly::zero(self.spec, self.nvars);
        loop {
            let term = self.parse_term()?;
            poly = poly.add(&term)?;
            match self.peek() {
                None => return Ok(poly),
                Some(b'+') => {
                    self.pos += 1;
                }
                Some(ch) => {
                    return Err(self.syntax(self.pos, format!("unexpected '{}'", ch as char)))
                }
            }
        }
    }

    fn parse_term(&mut self) -> Result<MultiPoly> {
        let mut coeff = self.spec.one();
        let mut exps = vec![0u64; self.nvars];
        loop {
            let (c, e) = self.parse_factor()?;
            coeff = &coeff * &c;
            for (acc, add) in exps.iter_mut().zip(&e) {
                *acc = acc
                    .checked_add(*add)
                    .ok_or_else(|| self.syntax(self.pos, "exponent overflow"))?;
            }
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        MultiPoly::monomial(self.spec, self.nvars, exps, coeff)
    }

    /// One factor, returned as (coefficient, exponent vector).
    fn parse_factor(&mut self) -> Result<(FieldElement, Vec<u64>)> {
        let mut exps = vec![0u64; self.nvars];
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                let index = self.parse_decimal("variable index")?;
                if index == 0 || index > self.nvars as u64 {
                    return Err(Error::VariableOutOfRange {
                        index: index as usize,
                        nvars: self.nvars,
                    });
                }
                let mut exp = 1u64;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    exp = self.parse_decimal("exponent")?;
                    if exp > u32::MAX as u64 {
                        return Err(self.syntax(start, "exponent too large"));
                    }
                }
                exps[index as usize - 1] = exp;
                Ok((self.spec.one(), exps))
            }
            Some(ch) if ch.is_ascii_alphanumeric() => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b',')
                {
                    self.pos += 1;
                }
                let literal = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let value = self.spec.element_from_text(literal).map_err(|e| match e {
                    Error::Syntax { position, message } => Error::Syntax {
                        position: start + position,
                        message,
                    },
                    other => Error::Syntax {
                        position: start,
                        message: other.to_string(),
                    },
                })?;
                Ok((value, exps))
            }
            Some(ch) => Err(self.syntax(self.pos, format!("unexpected '{}'", ch as char))),
            None => Err(self.syntax(self.pos, "expected a term")),
        }
    }

    fn parse_decimal(&mut self, what: &str) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax(start, format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.syntax(start, format!("{what} out of range")))
    }
}

// ---------------------------------------------------------------------------
// Point encoding and interpolation
// ---------------------------------------------------------------------------

/// Index of a point of spec^n in enumeration order; the first coordinate is
/// the least significant digit.
pub fn point_index(spec: &FieldSpec, point: &[FieldElement]) -> u64 {
    let q = spec.order();
    point
        .iter()
        .rev()
        .fold(0u64, |acc, x| acc * q + spec.index_of(x))
}

/// Inverse of [`point_index`].
pub fn point_at(spec: &FieldSpec, nvars: usize, index: u64) -> Vec<FieldElement> {
    let q = spec.order();
    let mut rest = index;
    (0..nvars)
        .map(|_| {
            let x = spec.element_from_index(rest % q);
            rest /= q;
            x
        })
        .collect()
}

/// Number of points of spec^n, or an error that reports the table size
/// mismatch against `got`.
fn expect_table_len(spec: &FieldSpec, nvars: usize, got: usize) -> Result<u64> {
    let expected = (spec.order() as u128)
        .checked_pow(nvars as u32)
        .filter(|&n| n <= u64::MAX as u128)
        .map(|n| n as u64)
        .ok_or(Error::IncompleteTable {
            expected: u64::MAX,
            got: got as u64,
        })?;
    if got as u64 != expected {
        return Err(Error::IncompleteTable {
            expected,
            got: got as u64,
        });
    }
    Ok(expected)
}

/// Binomial coefficient mod p by splitting both arguments into base-p
/// digits; each digit pair contributes an ordinary small binomial.
fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        let mut num = 1u64;
        let mut den = 1u64;
        for j in 0..kd {
            num = mul_mod(num, nd - j, p);
            den = mul_mod(den, j + 1, p);
        }
        acc = mul_mod(acc, mul_mod(num, inv_mod(den, p), p), p);
        n /= p;
        k /= p;
    }
    acc
}

/// The indicator of `x_var = c`: the expansion of `1 - (x_var - c)^(q-1)`,
/// which is 1 at `c` and 0 at every other field point.
fn indicator_poly(spec: &FieldSpec, nvars: usize, var: usize, c: &FieldElement) -> MultiPoly {
    let p = spec.characteristic();
    let q = spec.order();
    let neg_c = c.negated();
    let mut power = spec.one();
    let mut powers = Vec::with_capacity(q as usize);
    for _ in 0..q {
        powers.push(power.clone());
        power = &power * &neg_c;
    }
    let mut terms: Vec<(Vec<u64>, FieldElement)> = Vec::with_capacity(q as usize + 1);
    terms.push((vec![0; nvars], spec.one()));
    for j in 0..q {
        let binom = binomial_mod_p(q - 1, j, p);
        let coeff = powers[(q - 1 - j) as usize].mul_residue(binom).negated();
        let mut exps = vec![0; nvars];
        exps[var] = j;
        terms.push((exps, coeff));
    }
    MultiPoly::from_terms(spec, nvars, terms).unwrap()
}

/// The unique reduced polynomial inducing the given total value table,
/// indexed by [`point_index`]. Built from shifted indicator products.
pub fn interpolate(spec: &FieldSpec, nvars: usize, values: &[FieldElement]) -> Result<MultiPoly> {
    expect_table_len(spec, nvars, values.len())?;
    for v in values {
        if v.spec() != spec {
            return Err(Error::MixedFields);
        }
    }
    let mut out = MultiPoly::zero(spec, nvars);
    for (idx, value) in values.iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        let point = point_at(spec, nvars, idx as u64);
        let mut fc = MultiPoly::constant(spec, nvars, value.clone())?;
        for (var, c) in point.iter().enumerate() {
            fc = fc.mul(&indicator_poly(spec, nvars, var, c))?;
        }
        out = out.add(&fc)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64, m: usize) -> FieldSpec {
        FieldSpec::new(p, m).unwrap()
    }

    fn random_poly(
        rng: &mut ChaCha8Rng,
        spec: &FieldSpec,
        nvars: usize,
        max_exp: u64,
        max_terms: usize,
    ) -> MultiPoly {
        let nterms = rng.gen_range(0..=max_terms);
        let terms = (0..nterms).map(|_| {
            let exps: Vec<u64> = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
            let coeff = spec.element_from_index(rng.gen_range(0..spec.order()));
            (exps, coeff)
        });
        MultiPoly::from_terms(spec, nvars, terms).unwrap()
    }

    #[test]
    fn parse_basic_forms() {
        let k = gf(3, 1);
        let f = MultiPoly::parse("x1^2*x2 + 2", &k, 2).unwrap();
        assert_eq!(f.term_count(), 2);
        assert_eq!(f.coefficient(&[2, 1]), k.one());
        assert_eq!(f.coefficient(&[0, 0]), k.from_residue(2));

        let k2 = gf(2, 1);
        assert!(MultiPoly::parse("x1 + x1", &k2, 1).unwrap().is_zero());

        let k4 = gf(2, 2);
        let g = MultiPoly::parse("01*x1^3 + 11", &k4, 1).unwrap();
        assert_eq!(g.coefficient(&[3]), k4.element(vec![0, 1]).unwrap());
        assert_eq!(g.coefficient(&[0]), k4.element(vec![1, 1]).unwrap());
    }

    #[test]
    fn parse_errors() {
        let k = gf(3, 1);
        assert!(matches!(
            MultiPoly::parse("x3", &k, 2).unwrap_err(),
            Error::VariableOutOfRange { index: 3, nvars: 2 }
        ));
        assert!(matches!(
            MultiPoly::parse("x0", &k, 2).unwrap_err(),
            Error::VariableOutOfRange { index: 0, nvars: 2 }
        ));
        assert!(matches!(
            MultiPoly::parse("", &k, 1).unwrap_err(),
            Error::Syntax { .. }
        ));
        assert!(matches!(
            MultiPoly::parse("x1 +", &k, 1).unwrap_err(),
            Error::Syntax { .. }
        ));
        assert!(matches!(
            MultiPoly::parse("x1 x2", &k, 2).unwrap_err(),
            Error::Syntax { .. }
        ));
        // Position points at the offending byte.
        match MultiPoly::parse("x1 + 5", &k, 1).unwrap_err() {
            Error::Syntax { position, .. } => assert_eq!(position, 5),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn format_is_canonical_and_parse_round_trips() {
        let k = gf(3, 1);
        let f = MultiPoly::parse("2 + x2*x1^2 + x1", &k, 2).unwrap();
        assert_eq!(f.to_text(), "x1^2*x2+x1+2");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let spec = [gf(2, 1), gf(3, 1), gf(2, 2), gf(5, 1)]
                [rng.gen_range(0..4usize)]
            .clone();
            let nvars = rng.gen_range(1..=3usize);
            let f = random_poly(&mut rng, &spec, nvars, 6, 5);
            let text = f.to_text();
            let back = MultiPoly::parse(&text, &spec, nvars).unwrap();
            assert_eq!(back, f, "round trip of {text}");
        }
    }

    #[test]
    fn zero_polynomial_formats_as_zero_element() {
        let k4 = gf(2, 2);
        let z = MultiPoly::zero(&k4, 2);
        assert_eq!(z.to_text(), "00");
        assert!(MultiPoly::parse("00", &k4, 2).unwrap().is_zero());
    }

    #[test]
    fn evaluate_examples() {
        let k = gf(3, 1);
        let zero = MultiPoly::zero(&k, 2);
        let pt = vec![k.from_residue(1), k.from_residue(2)];
        assert!(zero.evaluate(&pt).unwrap().is_zero());

        let f = MultiPoly::parse("x1^2", &k, 1).unwrap();
        assert_eq!(
            f.evaluate(&[k.from_residue(2)]).unwrap(),
            k.from_residue(1)
        );

        assert!(matches!(
            f.evaluate(&pt).unwrap_err(),
            Error::ArityMismatch { expected: 1, got: 2 }
        ));
        let other = gf(2, 1).one();
        assert!(matches!(
            f.evaluate(&[other]).unwrap_err(),
            Error::MixedFields
        ));
    }

    #[test]
    fn evaluate_agrees_with_naive_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let spec = [gf(2, 1), gf(3, 1), gf(2, 2)][rng.gen_range(0..3usize)].clone();
            let nvars = rng.gen_range(1..=2usize);
            let f = random_poly(&mut rng, &spec, nvars, 5, 4);
            let point: Vec<FieldElement> = (0..nvars)
                .map(|_| spec.element_from_index(rng.gen_range(0..spec.order())))
                .collect();
            // Naive evaluator: repeated multiplication, no pow.
            let mut naive = spec.zero();
            for (exps, coeff) in f.terms() {
                let mut term = coeff.clone();
                for (x, &e) in point.iter().zip(exps) {
                    for _ in 0..e {
                        term = &term * x;
                    }
                }
                naive = &naive + &term;
            }
            assert_eq!(f.evaluate(&point).unwrap(), naive);
        }
    }

    #[test]
    fn total_degree_cases() {
        let k = gf(3, 1);
        assert_eq!(MultiPoly::zero(&k, 2).total_degree(), Degree::NegInfinity);
        let f = MultiPoly::parse("x1^2*x2", &k, 2).unwrap();
        assert_eq!(f.total_degree(), Degree::Finite(3));
        let c = MultiPoly::constant(&k, 2, k.from_residue(2)).unwrap();
        assert_eq!(c.total_degree(), Degree::Finite(0));
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn reduce_examples() {
        let k2 = gf(2, 1);
        let f = MultiPoly::parse("x1^2", &k2, 1).unwrap();
        assert_eq!(f.reduce(2).unwrap().to_text(), "x1");
        let g = MultiPoly::parse("x1^3", &k2, 1).unwrap();
        assert_eq!(g.reduce(2).unwrap().to_text(), "x1");

        let k3 = gf(3, 1);
        let h = MultiPoly::parse("x1^3 + 2*x1", &k3, 1).unwrap();
        assert!(h.reduce(3).unwrap().is_zero());
        assert_eq!(h.reduced_degree(3).unwrap(), Degree::NegInfinity);

        let k4 = gf(2, 2);
        let c = MultiPoly::parse("x1^3", &k4, 1).unwrap();
        assert_eq!(c.reduced_degree(4).unwrap(), Degree::Finite(3));

        let m = MultiPoly::parse("x1^4*x2", &k3, 2).unwrap();
        assert_eq!(m.reduced_degree(3).unwrap(), Degree::Finite(3));
    }

    #[test]
    fn reduce_preserves_the_induced_function() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for spec in [gf(2, 1), gf(3, 1), gf(2, 2), gf(5, 1)] {
            let q = spec.order();
            for nvars in 1..=2usize {
                for _ in 0..25 {
                    let f = random_poly(&mut rng, &spec, nvars, 3 * q, 5);
                    let r = f.reduce(q).unwrap();
                    for (e, _) in r.terms() {
                        assert!(e.iter().all(|&x| x < q));
                    }
                    for idx in 0..q.pow(nvars as u32) {
                        let pt = point_at(&spec, nvars, idx);
                        assert_eq!(f.evaluate(&pt).unwrap(), r.evaluate(&pt).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_degree_is_bounded_and_subadditive() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for spec in [gf(2, 1), gf(3, 1), gf(2, 2)] {
            let q = spec.order();
            for _ in 0..50 {
                let f = random_poly(&mut rng, &spec, 2, 3 * q, 4);
                let g = random_poly(&mut rng, &spec, 2, 3 * q, 4);
                let df = f.reduced_degree(q).unwrap();
                let dg = g.reduced_degree(q).unwrap();
                if let Degree::Finite(d) = df {
                    assert!(d <= (q - 1) * 2);
                }
                let dsum = f.add(&g).unwrap().reduced_degree(q).unwrap();
                assert!(dsum <= df.max(dg));
                if df != dg {
                    assert_eq!(dsum, df.max(dg));
                }
            }
        }
    }

    #[test]
    fn point_encoding_round_trip() {
        let k = gf(3, 1);
        for idx in 0..27u64 {
            let pt = point_at(&k, 3, idx);
            assert_eq!(point_index(&k, &pt), idx);
        }
        // x1 is the least significant coordinate.
        let pt = point_at(&k, 2, 5);
        assert_eq!(pt[0], k.from_residue(2));
        assert_eq!(pt[1], k.from_residue(1));
    }

    #[test]
    fn interpolate_identity_and_constants() {
        let k = gf(3, 1);
        let table: Vec<FieldElement> = k.elements().collect();
        let f = interpolate(&k, 1, &table).unwrap();
        assert_eq!(f.to_text(), "x1");

        let c = k.from_residue(2);
        let table = vec![c.clone(); 9];
        let g = interpolate(&k, 2, &table).unwrap();
        assert_eq!(g, MultiPoly::constant(&k, 2, c).unwrap());
    }

    #[test]
    fn interpolate_reproduces_random_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let k = gf(2, 1);
        for _ in 0..20 {
            let table: Vec<FieldElement> = (0..4)
                .map(|_| k.element_from_index(rng.gen_range(0..2)))
                .collect();
            let f = interpolate(&k, 2, &table).unwrap();
            for idx in 0..4u64 {
                let pt = point_at(&k, 2, idx);
                assert_eq!(f.evaluate(&pt).unwrap(), table[idx as usize]);
            }
        }
    }

    #[test]
    fn interpolate_matches_reduce_on_random_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for spec in [gf(2, 1), gf(3, 1), gf(2, 2)] {
            let q = spec.order();
            for nvars in 1..=2usize {
                for _ in 0..20 {
                    let f = random_poly(&mut rng, &spec, nvars, 2 * q, 5);
                    let table: Vec<FieldElement> = (0..q.pow(nvars as u32))
                        .map(|idx| f.evaluate(&point_at(&spec, nvars, idx)).unwrap())
                        .collect();
                    assert_eq!(
                        interpolate(&spec, nvars, &table).unwrap(),
                        f.reduce(q).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn interpolation_is_a_bijection_for_gf2_two_vars() {
        let k = gf(2, 1);
        let mut seen = std::collections::BTreeSet::new();
        for bits in 0..16u64 {
            let table: Vec<FieldElement> = (0..4)
                .map(|i| k.element_from_index((bits >> i) & 1))
                .collect();
            let f = interpolate(&k, 2, &table).unwrap();
            for (e, _) in f.terms() {
                assert!(e.iter().all(|&x| x <= 1));
            }
            seen.insert(f.to_text());
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn incomplete_tables_are_rejected() {
        let k = gf(3, 1);
        let short = vec![k.zero(); 8];
        assert!(matches!(
            interpolate(&k, 2, &short).unwrap_err(),
            Error::IncompleteTable { expected: 9, got: 8 }
        ));
    }

    #[test]
    fn binomials_mod_p() {
        assert_eq!(binomial_mod_p(3, 1, 2), 1);
        assert_eq!(binomial_mod_p(3, 2, 2), 1);
        assert_eq!(binomial_mod_p(4, 2, 2), 0);
        assert_eq!(binomial_mod_p(8, 3, 3), binom_naive(8, 3) % 3);
        for n in 0..12u64 {
            for k in 0..=n {
                for p in [2u64, 3, 5] {
                    assert_eq!(binomial_mod_p(n, k, p), binom_naive(n, k) % p);
                }
            }
        }
    }

    fn binom_naive(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let mut acc = 1u128;
        for j in 0..k {
            acc = acc * (n - j) as u128 / (j + 1) as u128;
        }
        acc as u64
    }

    #[test]
    fn frobenius_power_is_the_qth_power() {
        let k4 = gf(2, 2);
        let t = k4.element(vec![0, 1]).unwrap();
        let f = MultiPoly::from_terms(
            &k4,
            2,
            vec![(vec![1, 0], t.clone()), (vec![0, 1], k4.one())],
        )
        .unwrap();
        let g = f.frobenius_power(2).unwrap();
        // (t x1 + x2)^2 = t^2 x1^2 + x2^2 in characteristic 2
        assert_eq!(g, f.mul(&f).unwrap());
        assert_eq!(g.coefficient(&[2, 0]), &t * &t);
    }

    proptest! {
        #[test]
        fn prop_parse_format_round_trip(
            terms in proptest::collection::vec(
                (proptest::collection::vec(0u64..5, 2), 0u64..3),
                0..6
            )
        ) {
            let spec = FieldSpec::new(3, 1).unwrap();
            let poly = MultiPoly::from_terms(
                &spec,
                2,
                terms
                    .into_iter()
                    .map(|(e, c)| (e, spec.from_residue(c))),
            )
            .unwrap();
            let text = poly.to_text();
            let back = MultiPoly::parse(&text, &spec, 2).unwrap();
            prop_assert_eq!(back, poly);
        }
    }
}
