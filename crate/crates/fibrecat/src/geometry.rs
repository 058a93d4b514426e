//! Exact barycentric geometry: points of `|K|` and `|K x K|`, open-set
//! predicates, and deterministic rational samplers.

use crate::complex::{ComplexError, SimplicialComplex};
use crate::linalg::Rat;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::Arc;

/// A point of `|K|`: exact nonnegative rational weights summing to 1,
/// stored sparsely over the support (the vertices with positive weight).
/// The support is always a simplex of the ambient complex.
#[derive(Clone, PartialEq, Eq)]
pub struct BaryPoint {
    weights: Vec<(u32, Rat)>,
}

impl fmt::Debug for BaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (v, w)) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}:{w}")?;
        }
        write!(f, "]")
    }
}

impl BaryPoint {
    /// Builds a point from vertex weights, dropping zeros and checking the
    /// barycentric invariants against `k`.
    pub fn new(k: &SimplicialComplex, weights: Vec<(u32, Rat)>) -> Result<Self, ComplexError> {
        let mut support: Vec<(u32, Rat)> = Vec::with_capacity(weights.len());
        let mut total = Rat::zero();
        for (v, w) in weights {
            if v as usize >= k.vertex_count() {
                return Err(ComplexError::UnknownVertex(v));
            }
            if w < Rat::zero() {
                return Err(ComplexError::InvalidBarycentric("negative weight"));
            }
            if w.is_zero() {
                continue;
            }
            total += &w;
            support.push((v, w));
        }
        support.sort_by_key(|e| e.0);
        if support.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(ComplexError::InvalidBarycentric("repeated vertex"));
        }
        if !total.is_one() {
            return Err(ComplexError::InvalidBarycentric("weights do not sum to 1"));
        }
        let vs: Vec<u32> = support.iter().map(|e| e.0).collect();
        if !k.contains(&vs) {
            return Err(ComplexError::UnknownSimplex(vs));
        }
        Ok(BaryPoint { weights: support })
    }

    /// The vertex point at `v`.
    pub fn vertex(k: &SimplicialComplex, v: u32) -> Result<Self, ComplexError> {
        if (v as usize) < k.vertex_count() && k.contains(&[v]) {
            Ok(BaryPoint {
                weights: vec![(v, Rat::one())],
            })
        } else {
            Err(ComplexError::UnknownVertex(v))
        }
    }

    pub fn support(&self) -> Vec<u32> {
        self.weights.iter().map(|e| e.0).collect()
    }

    pub fn weights(&self) -> &[(u32, Rat)] {
        &self.weights
    }

    /// Weight of `v`, zero when `v` is outside the support.
    pub fn weight(&self, v: u32) -> Rat {
        match self.weights.binary_search_by_key(&v, |e| e.0) {
            Ok(i) => self.weights[i].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    /// `(1-t) a + t b`; the segment must be carried by a simplex, i.e. the
    /// union of the supports must itself be a simplex of `k`.
    pub fn convex(
        k: &SimplicialComplex,
        a: &BaryPoint,
        b: &BaryPoint,
        t: &Rat,
    ) -> Result<BaryPoint, ComplexError> {
        let s = Rat::one() - t;
        let mut merged: Vec<(u32, Rat)> = Vec::with_capacity(a.weights.len() + b.weights.len());
        let (mut i, mut j) = (0, 0);
        while i < a.weights.len() || j < b.weights.len() {
            if j >= b.weights.len() || (i < a.weights.len() && a.weights[i].0 < b.weights[j].0) {
                merged.push((a.weights[i].0, &s * &a.weights[i].1));
                i += 1;
            } else if i >= a.weights.len() || b.weights[j].0 < a.weights[i].0 {
                merged.push((b.weights[j].0, t * &b.weights[j].1));
                j += 1;
            } else {
                merged.push((a.weights[i].0, &s * &a.weights[i].1 + t * &b.weights[j].1));
                i += 1;
                j += 1;
            }
        }
        let carrier: Vec<u32> = merged.iter().map(|e| e.0).collect();
        if !k.contains(&carrier) {
            return Err(ComplexError::UnknownSimplex(carrier));
        }
        BaryPoint::new(k, merged)
    }

    /// The `L^1` distance between two points' weight vectors.
    pub fn l1_distance(a: &BaryPoint, b: &BaryPoint) -> Rat {
        let mut acc = Rat::zero();
        let (mut i, mut j) = (0, 0);
        while i < a.weights.len() || j < b.weights.len() {
            if j >= b.weights.len() || (i < a.weights.len() && a.weights[i].0 < b.weights[j].0) {
                acc += a.weights[i].1.clone();
                i += 1;
            } else if i >= a.weights.len() || b.weights[j].0 < a.weights[i].0 {
                acc += b.weights[j].1.clone();
                j += 1;
            } else {
                let d = &a.weights[i].1 - &b.weights[j].1;
                acc += if d < Rat::zero() { -d } else { d };
                i += 1;
                j += 1;
            }
        }
        acc
    }
}

/// A point of `|K| x |K|`; both coordinates live in the same complex.
#[derive(Clone, PartialEq, Eq)]
pub struct ProductPoint {
    pub first: BaryPoint,
    pub second: BaryPoint,
}

impl fmt::Debug for ProductPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.first, self.second)
    }
}

impl ProductPoint {
    pub fn new(first: BaryPoint, second: BaryPoint) -> Self {
        ProductPoint { first, second }
    }

    pub fn diagonal(x: BaryPoint) -> Self {
        ProductPoint {
            first: x.clone(),
            second: x,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.first == self.second
    }
}

/// Structural facts a region constructor can certify about its relation
/// to the diagonal. `None` means unknown.
#[derive(Clone, Copy, Default, Debug)]
pub struct RegionFacts {
    /// The region contains the whole diagonal.
    pub contains_diagonal: Option<bool>,
    /// The region misses the diagonal entirely.
    pub diagonal_disjoint: Option<bool>,
    /// `(a,b)` in the region implies `(b,b)` is too.
    pub closed_under_diag_proj: Option<bool>,
}

/// An open set given by an exact, pure membership predicate plus a
/// symbolic tag for reports.
#[derive(Clone)]
pub struct Region<P> {
    tag: String,
    facts: RegionFacts,
    pred: Arc<dyn Fn(&P) -> bool + Send + Sync>,
}

impl<P> fmt::Debug for Region<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Region({})", self.tag)
    }
}

impl<P> Region<P> {
    pub fn new(
        tag: impl Into<String>,
        facts: RegionFacts,
        pred: impl Fn(&P) -> bool + Send + Sync + 'static,
    ) -> Self {
        Region {
            tag: tag.into(),
            facts,
            pred: Arc::new(pred),
        }
    }

    pub fn contains(&self, p: &P) -> bool {
        (self.pred)(p)
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn facts(&self) -> RegionFacts {
        self.facts
    }

    pub fn union(a: &Region<P>, b: &Region<P>) -> Region<P>
    where
        P: 'static,
    {
        let (pa, pb) = (a.pred.clone(), b.pred.clone());
        let facts = RegionFacts {
            contains_diagonal: or_fact(a.facts.contains_diagonal, b.facts.contains_diagonal),
            diagonal_disjoint: and_fact(a.facts.diagonal_disjoint, b.facts.diagonal_disjoint),
            closed_under_diag_proj: and_fact(
                a.facts.closed_under_diag_proj,
                b.facts.closed_under_diag_proj,
            ),
        };
        Region::new(format!("({}) ∪ ({})", a.tag, b.tag), facts, move |p| {
            pa(p) || pb(p)
        })
    }

    pub fn intersection(a: &Region<P>, b: &Region<P>) -> Region<P>
    where
        P: 'static,
    {
        let (pa, pb) = (a.pred.clone(), b.pred.clone());
        let facts = RegionFacts {
            contains_diagonal: and_fact(a.facts.contains_diagonal, b.facts.contains_diagonal),
            diagonal_disjoint: or_fact(a.facts.diagonal_disjoint, b.facts.diagonal_disjoint),
            closed_under_diag_proj: None,
        };
        Region::new(format!("({}) ∩ ({})", a.tag, b.tag), facts, move |p| {
            pa(p) && pb(p)
        })
    }

    /// Preimage under a map that fixes the diagonal pointwise and commutes
    /// with the second projection (all maps used here do).
    pub fn preimage(
        tag: impl Into<String>,
        map: Arc<dyn Fn(&P) -> P + Send + Sync>,
        inner: &Region<P>,
    ) -> Region<P>
    where
        P: 'static,
    {
        let pred = inner.pred.clone();
        Region::new(tag, inner.facts, move |p| pred(&map(p)))
    }
}

fn or_fact(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(true), _) | (_, Some(true)) => Some(true),
        (Some(false), Some(false)) => Some(false),
        _ => None,
    }
}

fn and_fact(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(true), Some(true)) => Some(true),
        (Some(false), _) | (_, Some(false)) => Some(false),
        _ => None,
    }
}

/// The open star of a vertex: all points with positive weight at `v`.
pub fn star_neighborhood(k: &SimplicialComplex, v: u32) -> Result<Region<BaryPoint>, ComplexError> {
    if (v as usize) >= k.vertex_count() {
        return Err(ComplexError::UnknownVertex(v));
    }
    Ok(Region::new(
        format!("star({})", k.label(v)),
        RegionFacts::default(),
        move |x: &BaryPoint| x.weight(v) > Rat::zero(),
    ))
}

/// Deterministic rational point in the open simplex `sigma`: all weights
/// positive. The same `(sigma, seed)` always yields the same point.
pub fn random_point(
    k: &SimplicialComplex,
    sigma: &[u32],
    seed: u64,
) -> Result<BaryPoint, ComplexError> {
    if !k.contains(sigma) {
        return Err(ComplexError::UnknownSimplex(sigma.to_vec()));
    }
    let mut h: u64 = 0xcbf29ce484222325;
    for v in sigma {
        h ^= *v as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ h);
    Ok(random_point_with(k, sigma, &mut rng))
}

/// Same sampler, driven by a caller-supplied generator.
pub fn random_point_with(k: &SimplicialComplex, sigma: &[u32], rng: &mut impl Rng) -> BaryPoint {
    let nums: Vec<i64> = sigma.iter().map(|_| rng.gen_range(1..=64)).collect();
    let total: i64 = nums.iter().sum();
    let weights = sigma
        .iter()
        .zip(nums)
        .map(|(v, n)| (*v, Rat::new(n.into(), total.into())))
        .collect();
    BaryPoint::new(k, weights).expect("positive weights over a simplex")
}
