//! Membership in the uniform family: graphs all of whose star-factors have
//! the same weight, first under the all-ones weighting and then under an
//! arbitrary strictly positive one.
//!
//! Also home to two cheap structural detectors. Each finds a configuration
//! that rules a graph out of the uniform family; neither is ever used as a
//! substitute for enumeration when deciding membership.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::WeightingError;
use crate::factors::{has_star_factor, StarFactor, StarFactors};
use crate::graph::{Edge, Graph, Vertex};

/// A strictly positive rational value on every edge of a host graph,
/// aligned with [`Graph::edges`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weighting {
    edges: Vec<Edge>,
    values: Vec<BigRational>,
}

impl Weighting {
    pub fn constant(g: &Graph, value: BigRational) -> Result<Self, WeightingError> {
        let m = g.size();
        Weighting::new(g, vec![value; m])
    }

    pub fn ones(g: &Graph) -> Self {
        Weighting::constant(g, BigRational::one()).expect("one is positive")
    }

    /// `values[i]` weighs the `i`-th edge of [`Graph::edges`].
    pub fn new(g: &Graph, values: Vec<BigRational>) -> Result<Self, WeightingError> {
        let edges = g.edges();
        if values.len() != edges.len() {
            return Err(WeightingError::WrongLength { expected: edges.len(), got: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !v.is_positive()) {
            return Err(WeightingError::NonPositive(edges[i]));
        }
        Ok(Weighting { edges, values })
    }

    pub fn from_integers(g: &Graph, values: &[i64]) -> Result<Self, WeightingError> {
        Weighting::new(g, values.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
    }

    pub fn get(&self, e: Edge) -> Option<&BigRational> {
        self.edges.binary_search(&e).ok().map(|i| &self.values[i])
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn scaled(&self, c: &BigRational) -> Result<Self, WeightingError> {
        if !c.is_positive() {
            return Err(WeightingError::NonPositive(self.edges.first().copied().unwrap_or(Edge(0, 0))));
        }
        Ok(Weighting { edges: self.edges.clone(), values: self.values.iter().map(|v| v * c).collect() })
    }
}

pub fn weight_of(factor: &StarFactor, w: &Weighting) -> Result<BigRational, WeightingError> {
    factor
        .edges()
        .iter()
        .try_fold(BigRational::zero(), |acc, &e| w.get(e).map(|v| acc + v).ok_or(WeightingError::MissingEdge(e)))
}

/// Distinct factor weights under `w`, ascending. Empty iff `g` has no
/// star-factor.
pub fn weight_spectrum(g: &Graph, w: &Weighting) -> Result<Vec<BigRational>, WeightingError> {
    let mut spectrum = BTreeSet::new();
    for f in StarFactors::new(g, None) {
        spectrum.insert(weight_of(&f, w)?);
    }
    Ok(spectrum.into_iter().collect())
}

/// Whether every star-factor has the same `w`-weight; on failure, two
/// factors of different weight.
pub fn is_uniform_weighted(
    g: &Graph,
    w: &Weighting,
) -> Result<(bool, Option<(StarFactor, StarFactor)>), WeightingError> {
    if w.edges.len() != g.size() {
        return Err(WeightingError::WrongLength { expected: g.size(), got: w.edges.len() });
    }
    let mut first: Option<(StarFactor, BigRational)> = None;
    for f in StarFactors::new(g, None) {
        let wt = weight_of(&f, w)?;
        match &first {
            None => first = Some((f, wt)),
            Some((f0, w0)) if *w0 != wt => return Ok((false, Some((f0.clone(), f)))),
            Some(_) => {}
        }
    }
    Ok((true, None))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformityReport {
    pub factor_exists: bool,
    pub uniform: bool,
    /// Distinct factor sizes seen, ascending. Complete only when the
    /// enumeration ran to the end.
    pub spectrum: Vec<usize>,
    /// Present only after a complete enumeration.
    pub factor_count: Option<u64>,
    pub witness: Option<(StarFactor, StarFactor)>,
}

/// Uniformity under the all-ones weighting, stopping at the second
/// distinct factor size.
pub fn is_uniform(g: &Graph) -> UniformityReport {
    uniformity_report(g, false)
}

/// As [`is_uniform`]; `full` forces a complete enumeration so the
/// spectrum and factor count are exact.
pub fn uniformity_report(g: &Graph, full: bool) -> UniformityReport {
    let n = g.order();
    let mut stream = StarFactors::new(g, None);
    let mut spectrum = BTreeSet::new();
    let mut count = 0u64;
    let mut first: Option<(StarFactor, usize)> = None;
    let mut witness = None;
    while stream.advance() {
        count += 1;
        let size = n - stream.component_count();
        spectrum.insert(size);
        match &first {
            None => first = Some((stream.current(), size)),
            Some((f0, s0)) if *s0 != size && witness.is_none() => {
                witness = Some((f0.clone(), stream.current()));
                if !full {
                    break;
                }
            }
            Some(_) => {}
        }
    }
    let finished = witness.is_none() || full;
    UniformityReport {
        factor_exists: count > 0,
        uniform: witness.is_none(),
        spectrum: spectrum.into_iter().collect(),
        factor_count: finished.then_some(count),
        witness,
    }
}

/// A triangle with two degree-two corners whose third corner carries a
/// pendant leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma2Witness {
    pub triangle: [Vertex; 3],
    pub stem: Vertex,
    pub leaf: Vertex,
}

/// Finds a triangle whose two other corners have degree two and whose
/// remaining corner is a stem. Such a graph has star-factors of two
/// different sizes: hang both degree-two corners on the stem, or pair them
/// with each other.
///
/// Graphs with isolated vertices have no star-factor at all and never
/// produce a witness.
pub fn lemma2_witness(g: &Graph) -> Option<Lemma2Witness> {
    if !has_star_factor(g) {
        return None;
    }
    for t in g.triangles() {
        for i in 0..3 {
            let (a, b, c) = (t[i], t[(i + 1) % 3], t[(i + 2) % 3]);
            if g.degree(b) == 2 && g.degree(c) == 2 {
                if let Some(leaf) = g.neighbors(a).find(|&u| g.degree(u) == 1) {
                    return Some(Lemma2Witness { triangle: t, stem: a, leaf });
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma3Violation {
    pub triangle: [Vertex; 3],
    /// The only corner of degree at least three.
    pub hub: Vertex,
    /// A neighbour of the hub off the triangle that is not a stem.
    pub neighbor: Vertex,
}

/// Finds a triangle with exactly one corner of degree at least three whose
/// off-triangle neighbour is not a stem. Uniform graphs never contain one:
/// stripping that neighbour down to its edge to the hub produces the
/// configuration of [`lemma2_witness`] without isolating anything.
///
/// Graphs with isolated vertices never produce a violation.
pub fn lemma3_violation(g: &Graph) -> Option<Lemma3Violation> {
    if !has_star_factor(g) {
        return None;
    }
    for t in g.triangles() {
        let big: Vec<Vertex> = t.iter().copied().filter(|&v| g.degree(v) >= 3).collect();
        let [hub] = big[..] else { continue };
        let on_triangle = t.iter().fold(0u64, |m, &v| m | 1 << v);
        for x in crate::graph::bits(g.neighbor_mask(hub) & !on_triangle) {
            if !g.is_stem(x) {
                return Some(Lemma3Violation { triangle: t, hub, neighbor: x });
            }
        }
    }
    None
}
