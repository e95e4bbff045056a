//! Constructors for two families of maps that meet the missed-value
//! bound with equality, each self-verified after construction.
//!
//! The norm family misses exactly `q - 1` points with degree `n`: the
//! first `n - 1` coordinates pass through, and the last is `x_n * g`
//! where `g` is the degree-`(n-1)` norm form of `GF(q^{n-1})/GF(q)` in
//! the first `n - 1` variables. Since `g` vanishes only at the origin,
//! the missed set is exactly `{0}^{n-1} x GF(q)^*`.
//!
//! The one-missing family misses exactly one point and is as inefficient
//! as possible: redirect the zero point to its enumeration successor and
//! fix everything else. Any map missing exactly one value must have the
//! maximal reduced degree `n(q - 1)`, and the constructed interpolant
//! attains it.

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::bounds::{verify_bound, BoundReport};
use crate::field::{FieldElement, FieldSpec, SubfieldEmbedding, SubfieldIso};
use crate::poly::{point_at, Degree, MultiPoly};
use crate::polymap::PolyMap;
use crate::{Error, Result};

/// Splits a prime power into (prime, exponent).
fn prime_power(q: u64) -> Result<(u64, usize)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = q;
    let mut c = 2;
    while c * c <= q {
        if q.is_multiple_of(c) {
            p = c;
            break;
        }
        c += 1;
    }
    let mut d = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        d += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, d))
}

/// How an artifact's claims were checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    /// Image recomputed exhaustively and bound re-checked.
    Checked(BoundReport),
    /// Domain too large for the cap; construction is still exact, only
    /// the exhaustive re-check was skipped.
    Skipped { points: u128, cap: u64 },
}

/// A constructed extremal map together with what it claims and an
/// independent re-verification of those claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleArtifact {
    pub map: PolyMap,
    pub claimed_missed: u64,
    pub claimed_degree: Degree,
    pub verification: Verification,
}

impl Serialize for ExampleArtifact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let components: Vec<String> = self
            .map
            .components()
            .iter()
            .map(MultiPoly::to_text)
            .collect();
        let (report, skipped) = match &self.verification {
            Verification::Checked(r) => (Some(r), None),
            Verification::Skipped { points, cap } => (None, Some((*points, *cap))),
        };
        #[derive(serde::Serialize)]
        struct Skipped {
            points: u128,
            cap: u64,
        }
        let mut st = s.serialize_struct("ExampleArtifact", 6)?;
        st.serialize_field("field", &self.map.spec().to_text())?;
        st.serialize_field("components", &components)?;
        st.serialize_field("claimed_missed", &self.claimed_missed)?;
        st.serialize_field("claimed_degree", &self.claimed_degree)?;
        st.serialize_field("verification", &report)?;
        st.serialize_field(
            "skipped",
            &skipped.map(|(points, cap)| Skipped { points, cap }),
        )?;
        st.end()
    }
}

fn checked_or_skipped(map: &PolyMap, q: u64, cap: u64) -> Result<Verification> {
    let points = (q as u128).pow(map.nvars() as u32);
    if points > cap as u128 {
        return Ok(Verification::Skipped { points, cap });
    }
    Ok(Verification::Checked(verify_bound(map, q, cap)?))
}

/// The norm-form map on `GF(q)^n`: pass through the first `n - 1`
/// coordinates and send the last to `x_n * g`, where `g` is the norm
/// form of `GF(q^{n-1})/GF(q)` on the power basis `1, t, ..., t^{n-2}`.
/// Misses exactly the `q - 1` points `(0, ..., 0, a)` with `a != 0`, with
/// total degree `n`: the bound `n(q-1)/deg` is met with equality.
///
/// Requires `n >= 2`; `n = 1` admits no norm coordinate.
pub fn norm_example(q: u64, n: usize, cap: u64) -> Result<ExampleArtifact> {
    let (p, d) = prime_power(q)?;
    if n < 2 {
        return Err(Error::NoSuchExample { q, n });
    }
    let big = FieldSpec::new(p, d * (n - 1))?;
    let iso = SubfieldIso::new(&big, q)?;

    // The norm form: the product of the Galois conjugates of the generic
    // linear form x1*v1 + ... + x_{n-1}*v_{n-1}. Conjugation acts on the
    // coefficients only, so every factor is linear and the product is
    // homogeneous of degree n - 1.
    let nf = n - 1;
    let mut coeffs: Vec<FieldElement> = iso.basis().to_vec();
    let mut norm_form = MultiPoly::constant(&big, nf, big.one())?;
    for _ in 0..nf {
        let factor = MultiPoly::from_terms(
            &big,
            nf,
            coeffs.iter().enumerate().map(|(i, v)| {
                let mut exps = vec![0u64; nf];
                exps[i] = 1;
                (exps, v.clone())
            }),
        )?;
        norm_form = norm_form.mul(&factor)?;
        for v in &mut coeffs {
            *v = v.frobenius(q)?;
        }
    }

    // Norms land in the ground field; check, never assume, then project
    // the coefficients down.
    let sub = big.subfield_spec(q)?;
    let embedding = SubfieldEmbedding::new(&big, q)?;
    let mut projected = Vec::with_capacity(norm_form.term_count());
    for (exps, c) in norm_form.terms() {
        if !c.in_subfield(q)? {
            return Err(Error::NotInSubfield);
        }
        debug_assert_eq!(exps.iter().sum::<u64>(), nf as u64);
        let mut exps = exps.to_vec();
        exps.push(0);
        projected.push((exps, embedding.project(c)?));
    }
    let g = MultiPoly::from_terms(&sub, n, projected)?;

    let mut components: Vec<MultiPoly> = (1..n)
        .map(|i| MultiPoly::variable(&sub, n, i))
        .collect::<Result<_>>()?;
    components.push(g.mul(&MultiPoly::variable(&sub, n, n)?)?);
    let map = PolyMap::new(components)?;

    let verification = checked_or_skipped(&map, q, cap)?;
    if let Verification::Checked(_) = &verification {
        // The missed set is exactly the punctured last axis.
        let image = map.reduced().image(cap)?;
        let expected: Vec<u64> = (1..q).map(|a| a * q.pow(nf as u32)).collect();
        debug_assert_eq!(image.missed_indices(), expected);
    }
    Ok(ExampleArtifact {
        map,
        claimed_missed: q - 1,
        claimed_degree: Degree::Finite(n as u64),
        verification,
    })
}

/// The map on `GF(q)^n` that redirects the zero point to its enumeration
/// successor and fixes every other point: it misses exactly the zero
/// point, and its reduced interpolant has the maximal possible degree
/// `n(q - 1)`.
///
/// For `q = 2, n = 1` every map missing exactly one value is constant,
/// so no such example exists.
pub fn one_missing_example(q: u64, n: usize, cap: u64) -> Result<ExampleArtifact> {
    let (p, d) = prime_power(q)?;
    if n == 0 || (q == 2 && n == 1) {
        return Err(Error::NoSuchExample { q, n });
    }
    let spec = FieldSpec::new(p, d)?;
    let domain = (q as u128).pow(n as u32);
    if domain > cap as u128 {
        return Err(Error::DomainTooLarge {
            points: domain,
            cap,
        });
    }
    let outputs: Vec<Vec<FieldElement>> = (0..domain as u64)
        .map(|idx| point_at(&spec, n, if idx == 0 { 1 } else { idx }))
        .collect();
    let map = PolyMap::interpolate_table(&spec, n, &outputs)?;
    let verification = checked_or_skipped(&map, q, cap)?;
    Ok(ExampleArtifact {
        map,
        claimed_missed: 1,
        claimed_degree: Degree::Finite(n as u64 * (q - 1)),
        verification,
    })
}
