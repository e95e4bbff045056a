//! Vector-valued polynomial maps `f: k^n -> k^m`: evaluation, degrees, and
//! exhaustively computed images with exact fiber statistics.
//!
//! Image computation enumerates every domain point, so it is gated by an
//! explicit cap and errors rather than truncating: a partial image would
//! silently corrupt every missed-value count built on top of it.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::field::{FieldElement, FieldSpec};
use crate::poly::{point_at, point_index, Degree, MultiPoly};
use crate::{Error, Result};

/// Domain sizes at and above which image enumeration is partitioned across
/// the rayon thread pool. Results do not depend on the partitioning.
const PARALLEL_THRESHOLD: u64 = 1 << 13;

/// A polynomial map given by component polynomials sharing one field and
/// one variable count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    spec: FieldSpec,
    nvars: usize,
    components: Vec<MultiPoly>,
}

impl PolyMap {
    pub fn new(components: Vec<MultiPoly>) -> Result<PolyMap> {
        let first = components.first().ok_or(Error::ArityMismatch {
            expected: 1,
            got: 0,
        })?;
        let spec = first.spec().clone();
        let nvars = first.nvars();
        for c in &components {
            if c.spec() != &spec {
                return Err(Error::MixedFields);
            }
            if c.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: c.nvars(),
                });
            }
        }
        Ok(PolyMap {
            spec,
            nvars,
            components,
        })
    }

    /// The identity map on spec^n.
    pub fn identity(spec: &FieldSpec, n: usize) -> Result<PolyMap> {
        let components = (1..=n)
            .map(|i| MultiPoly::variable(spec, n, i))
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(components)
    }

    /// The unique reduced map inducing a value table: `outputs[i]` is the
    /// image of the domain point with index `i`, and every output row has
    /// the same length. Each coordinate is interpolated separately.
    pub fn interpolate_table(
        spec: &FieldSpec,
        nvars: usize,
        outputs: &[Vec<FieldElement>],
    ) -> Result<PolyMap> {
        let ncoords = outputs.first().map(Vec::len).unwrap_or(0);
        if ncoords == 0 {
            return Err(Error::ArityMismatch {
                expected: 1,
                got: 0,
            });
        }
        for row in outputs {
            if row.len() != ncoords {
                return Err(Error::ArityMismatch {
                    expected: ncoords,
                    got: row.len(),
                });
            }
        }
        let components = (0..ncoords)
            .map(|j| {
                let column: Vec<FieldElement> =
                    outputs.iter().map(|row| row[j].clone()).collect();
                crate::poly::interpolate(spec, nvars, &column)
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(components)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ncomponents(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.components
            .iter()
            .map(|c| c.evaluate(point))
            .collect()
    }

    /// Max total degree over the components.
    pub fn degree(&self) -> Degree {
        self.components
            .iter()
            .map(MultiPoly::total_degree)
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    /// Componentwise reduction modulo `(x_i^q - x_i)` for q the field order.
    pub fn reduced(&self) -> PolyMap {
        let q = self.spec.order();
        PolyMap {
            spec: self.spec.clone(),
            nvars: self.nvars,
            components: self
                .components
                .iter()
                .map(|c| c.reduce(q).expect("field order is at least 2"))
                .collect(),
        }
    }

    /// Max degree over the components of the reduced map: the least degree
    /// among all maps inducing the same function.
    pub fn reduced_degree(&self) -> Degree {
        self.reduced().degree()
    }

    /// Whether the induced function is constant; decided on the reduced
    /// form, since e.g. `x^q - x` induces the zero function.
    pub fn is_constant(&self) -> bool {
        self.reduced_degree() <= Degree::Finite(0)
    }

    fn eval_index(&self, idx: u64) -> u64 {
        let point = point_at(&self.spec, self.nvars, idx);
        let out: Vec<FieldElement> = self
            .components
            .iter()
            .map(|c| c.evaluate(&point).expect("validated map evaluation"))
            .collect();
        point_index(&self.spec, &out)
    }

    /// Exhaustive image with fiber counts. Both the domain (q^n points to
    /// evaluate) and the codomain (q^m points classified as hit or missed)
    /// must stay within `cap`.
    pub fn image(&self, cap: u64) -> Result<ImageResult> {
        let q = self.spec.order() as u128;
        let domain = q.pow(self.nvars as u32);
        let codomain = q.pow(self.components.len() as u32);
        for points in [domain, codomain] {
            if points > cap as u128 {
                return Err(Error::DomainTooLarge { points, cap });
            }
        }
        let domain = domain as u64;
        let counts: HashMap<u64, u64> = if domain >= PARALLEL_THRESHOLD {
            (0..domain)
                .into_par_iter()
                .fold(HashMap::new, |mut acc, idx| {
                    *acc.entry(self.eval_index(idx)).or_insert(0) += 1;
                    acc
                })
                .reduce(HashMap::new, |mut a, b| {
                    for (k, v) in b {
                        *a.entry(k).or_insert(0) += v;
                    }
                    a
                })
        } else {
            let mut acc = HashMap::new();
            for idx in 0..domain {
                *acc.entry(self.eval_index(idx)).or_insert(0) += 1;
            }
            acc
        };
        let mut fibers: Vec<(u64, u64)> = counts.into_iter().collect();
        fibers.sort_unstable();
        Ok(ImageResult {
            spec: self.spec.clone(),
            ncoords: self.components.len(),
            domain_size: domain,
            codomain_size: codomain as u64,
            fibers,
        })
    }
}

/// Exact image data of a polynomial map: which codomain points are hit and
/// how often. Points are stored as codomain indices; decoding helpers
/// return coordinate tuples in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageResult {
    spec: FieldSpec,
    ncoords: usize,
    domain_size: u64,
    codomain_size: u64,
    /// (codomain point index, preimage count), ascending.
    fibers: Vec<(u64, u64)>,
}

impl ImageResult {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn ncoords(&self) -> usize {
        self.ncoords
    }

    pub fn domain_size(&self) -> u64 {
        self.domain_size
    }

    pub fn codomain_size(&self) -> u64 {
        self.codomain_size
    }

    pub fn image_size(&self) -> u64 {
        self.fibers.len() as u64
    }

    pub fn missed_count(&self) -> u64 {
        self.codomain_size - self.image_size()
    }

    pub fn is_surjective(&self) -> bool {
        self.missed_count() == 0
    }

    /// (codomain index, preimage count) pairs, ascending by index; the
    /// counts sum to the domain size.
    pub fn fibers(&self) -> &[(u64, u64)] {
        &self.fibers
    }

    pub fn fiber_count(&self, codomain_index: u64) -> u64 {
        match self.fibers.binary_search_by_key(&codomain_index, |f| f.0) {
            Ok(i) => self.fibers[i].1,
            Err(_) => 0,
        }
    }

    pub fn image_indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.fibers.iter().map(|&(i, _)| i)
    }

    /// Codomain indices never hit, ascending.
    pub fn missed_indices(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.missed_count() as usize);
        let mut hit = self.fibers.iter().peekable();
        for idx in 0..self.codomain_size {
            match hit.peek() {
                Some(&&(h, _)) if h == idx => {
                    hit.next();
                }
                _ => out.push(idx),
            }
        }
        out
    }

    pub fn point(&self, codomain_index: u64) -> Vec<FieldElement> {
        point_at(&self.spec, self.ncoords, codomain_index)
    }

    pub fn missed_points(&self) -> Vec<Vec<FieldElement>> {
        self.missed_indices()
            .into_iter()
            .map(|i| self.point(i))
            .collect()
    }
}
