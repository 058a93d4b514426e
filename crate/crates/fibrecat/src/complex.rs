//! Finite abstract simplicial complexes with a fixed total vertex order,
//! the staircase triangulation of a product, and the simplicial diagonal.
//!
//! Vertices are internal indices `0..n` in the order fixed at
//! construction; every orientation sign downstream derives from this
//! order. Simplices are stored as strictly ascending index vectors and
//! the simplex family is closed under taking faces.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("facet {0:?} repeats a vertex")]
    MalformedSimplex(Vec<i64>),
    #[error("empty facet list")]
    EmptyComplex,
    #[error("empty facet")]
    EmptyFacet,
    #[error("unknown vertex {0}")]
    UnknownVertex(u32),
    #[error("{0:?} is not a simplex of the complex")]
    UnknownSimplex(Vec<u32>),
    #[error("invalid barycentric data: {0}")]
    InvalidBarycentric(&'static str),
}

/// A finite simplicial complex: ordered vertex labels plus the family of
/// simplices (ascending vertex-index vectors) closed under subsets.
#[derive(Clone)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    /// `by_dim[k]` lists the `k`-simplices in lexicographic order.
    by_dim: Vec<Vec<Vec<u32>>>,
    index: HashMap<Vec<u32>, (usize, usize)>,
    facets: Vec<Vec<u32>>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertices", &self.labels.len())
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

impl SimplicialComplex {
    fn from_indexed_facets(
        labels: Vec<String>,
        facets: Vec<Vec<u32>>,
    ) -> Result<SimplicialComplex, ComplexError> {
        let mut index: HashMap<Vec<u32>, (usize, usize)> = HashMap::new();
        let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
        for facet in &facets {
            let m = facet.len();
            // every nonempty subset, via bitmask
            for mask in 1u32..(1 << m) {
                let mut face: Vec<u32> = Vec::with_capacity(mask.count_ones() as usize);
                for (i, v) in facet.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        face.push(*v);
                    }
                }
                let dim = face.len() - 1;
                if index.contains_key(&face) {
                    continue;
                }
                while by_dim.len() <= dim {
                    by_dim.push(Vec::new());
                }
                by_dim[dim].push(face.clone());
                index.insert(face, (dim, 0));
            }
        }
        for simps in by_dim.iter_mut() {
            simps.sort();
        }
        for (dim, simps) in by_dim.iter().enumerate() {
            for (i, s) in simps.iter().enumerate() {
                index.insert(s.clone(), (dim, i));
            }
        }
        // keep only maximal faces as facets
        let mut maximal: Vec<Vec<u32>> = Vec::new();
        for f in &facets {
            let covered = facets
                .iter()
                .any(|g| g.len() > f.len() && f.iter().all(|v| g.contains(v)));
            if !covered && !maximal.contains(f) {
                maximal.push(f.clone());
            }
        }
        maximal.sort();
        Ok(SimplicialComplex {
            labels,
            by_dim,
            index,
            facets: maximal,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Dimension of the complex (max simplex cardinality minus one).
    pub fn dimension(&self) -> usize {
        self.by_dim.len() - 1
    }

    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    /// The `k`-simplices, each a strictly ascending vertex-index vector.
    pub fn simplices(&self, k: usize) -> &[Vec<u32>] {
        if k < self.by_dim.len() {
            &self.by_dim[k]
        } else {
            &[]
        }
    }

    pub fn simplex_count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        self.index.contains_key(simplex)
    }

    /// Index of a simplex within its dimension's ordered list.
    pub fn simplex_id(&self, simplex: &[u32]) -> Option<(usize, usize)> {
        self.index.get(simplex).copied()
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(|s| s.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, n)| if k % 2 == 0 { *n as i64 } else { -(*n as i64) })
            .sum()
    }

    /// All simplices of all dimensions, flattened (dimension, index) order.
    pub fn all_simplices(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.by_dim.iter().flatten()
    }
}

/// Builds the closure of a facet family. Vertex order is the order of
/// first appearance in the facet stream, vertices within one facet taken
/// in numeric order.
pub fn build_complex(facets: &[Vec<i64>]) -> Result<SimplicialComplex, ComplexError> {
    if facets.is_empty() {
        return Err(ComplexError::EmptyComplex);
    }
    let mut order: Vec<i64> = Vec::new();
    let mut seen: HashMap<i64, u32> = HashMap::new();
    for facet in facets {
        if facet.is_empty() {
            return Err(ComplexError::EmptyFacet);
        }
        let mut sorted = facet.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::MalformedSimplex(facet.clone()));
        }
        for v in sorted {
            seen.entry(v).or_insert_with(|| {
                order.push(v);
                (order.len() - 1) as u32
            });
        }
    }
    let labels: Vec<String> = order.iter().map(|v| v.to_string()).collect();
    let indexed: Vec<Vec<u32>> = facets
        .iter()
        .map(|f| {
            let mut idx: Vec<u32> = f.iter().map(|v| seen[v]).collect();
            idx.sort_unstable();
            idx
        })
        .collect();
    SimplicialComplex::from_indexed_facets(labels, indexed)
}

/// The staircase (monotone-chain) triangulation of `|K| x |L|` together
/// with the vertex pairing. Product vertices are all pairs `(i, j)` in
/// lexicographic order, so the pair `(i, j)` has index `i * nL + j`.
pub struct ProductComplex {
    pub complex: SimplicialComplex,
    left_n: u32,
    right_n: u32,
}

impl ProductComplex {
    pub fn vertex(&self, i: u32, j: u32) -> u32 {
        debug_assert!(i < self.left_n && j < self.right_n);
        i * self.right_n + j
    }

    pub fn vertex_pair(&self, v: u32) -> (u32, u32) {
        (v / self.right_n, v % self.right_n)
    }

    /// Image of a base simplex under the simplicial diagonal `v -> (v,v)`.
    /// Only meaningful for products of a complex with itself.
    pub fn diagonal_simplex(&self, simplex: &[u32]) -> Vec<u32> {
        simplex.iter().map(|v| self.vertex(*v, *v)).collect()
    }
}

/// Builds the staircase triangulation of the product: top simplices are
/// the maximal monotone staircases inside `sigma x tau` over all facet
/// pairs, and the family is closed under faces. The diagonal image of a
/// simplex is itself a simplex of this triangulation.
pub fn product_complex(k: &SimplicialComplex, l: &SimplicialComplex) -> ProductComplex {
    let nl = l.vertex_count() as u32;
    let mut labels = Vec::with_capacity(k.vertex_count() * l.vertex_count());
    for i in 0..k.vertex_count() as u32 {
        for j in 0..nl {
            labels.push(format!("({},{})", k.label(i), l.label(j)));
        }
    }
    let mut tops: Vec<Vec<u32>> = Vec::new();
    for sigma in k.facets() {
        for tau in l.facets() {
            staircases(sigma, tau, nl, &mut tops);
        }
    }
    let complex = SimplicialComplex::from_indexed_facets(labels, tops)
        .expect("staircase facets are well-formed");
    ProductComplex {
        complex,
        left_n: k.vertex_count() as u32,
        right_n: nl,
    }
}

/// Enumerates maximal monotone lattice paths through `sigma x tau`.
fn staircases(sigma: &[u32], tau: &[u32], nl: u32, out: &mut Vec<Vec<u32>>) {
    let mut path: Vec<u32> = Vec::with_capacity(sigma.len() + tau.len() - 1);
    fn step(
        i: usize,
        j: usize,
        sigma: &[u32],
        tau: &[u32],
        nl: u32,
        path: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        path.push(sigma[i] * nl + tau[j]);
        if i == sigma.len() - 1 && j == tau.len() - 1 {
            out.push(path.clone());
        } else {
            if i + 1 < sigma.len() {
                step(i + 1, j, sigma, tau, nl, path, out);
            }
            if j + 1 < tau.len() {
                step(i, j + 1, sigma, tau, nl, path, out);
            }
        }
        path.pop();
    }
    step(0, 0, sigma, tau, nl, &mut path, out);
}

/// Handle for the diagonal `K -> K x K`, `v -> (v, v)`.
pub struct DiagonalMap {
    product: Arc<ProductComplex>,
}

impl DiagonalMap {
    pub fn new(product: Arc<ProductComplex>) -> Self {
        DiagonalMap { product }
    }

    pub fn vertex_image(&self, v: u32) -> u32 {
        self.product.vertex(v, v)
    }

    pub fn simplex_image(&self, simplex: &[u32]) -> Vec<u32> {
        self.product.diagonal_simplex(simplex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle3() -> SimplicialComplex {
        build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn closure_of_circle() {
        let k = circle3();
        assert_eq!(k.f_vector(), vec![3, 3]);
        assert_eq!(k.dimension(), 1);
        assert!(k.contains(&[0]));
        assert!(k.contains(&[1, 2]));
        assert!(!k.contains(&[0, 1, 2]));
    }

    #[test]
    fn single_point() {
        let k = build_complex(&[vec![0]]).unwrap();
        assert_eq!(k.f_vector(), vec![1]);
        assert_eq!(k.dimension(), 0);
    }

    #[test]
    fn boundary_of_tetrahedron_by_enumeration() {
        // oracle: enumerate subsets of {0,1,2,3} of size <= 3 by brute force
        let facets: Vec<Vec<i64>> =
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
        let k = build_complex(&facets).unwrap();
        let mut expected = vec![0usize; 3];
        for mask in 1u32..16 {
            let size = mask.count_ones() as usize;
            if size <= 3 {
                expected[size - 1] += 1;
            }
        }
        assert_eq!(k.f_vector(), expected);
        assert_eq!(k.f_vector(), vec![4, 6, 4]);
        assert_eq!(k.euler_characteristic(), 2);
    }

    #[test]
    fn duplicate_vertex_in_facet_is_rejected() {
        let err = build_complex(&[vec![0, 0, 1]]).unwrap_err();
        assert_eq!(err, ComplexError::MalformedSimplex(vec![0, 0, 1]));
    }

    #[test]
    fn vertex_order_first_appearance_then_numeric() {
        let k = build_complex(&[vec![5, 2], vec![1, 2]]).unwrap();
        assert_eq!(k.label(0), "2");
        assert_eq!(k.label(1), "5");
        assert_eq!(k.label(2), "1");
    }

    #[test]
    fn point_times_point_is_point() {
        let p = build_complex(&[vec![0]]).unwrap();
        let prod = product_complex(&p, &p);
        assert_eq!(prod.complex.f_vector(), vec![1]);
    }

    #[test]
    fn edge_times_edge_is_split_square() {
        // oracle: monotone chains in a 2x2 grid; two maximal staircases
        let e = build_complex(&[vec![0, 1]]).unwrap();
        let prod = product_complex(&e, &e);
        assert_eq!(prod.complex.f_vector(), vec![4, 5, 2]);
        let d = prod.complex.dimension();
        assert_eq!(d, 2);
        assert_eq!(prod.complex.euler_characteristic(), 1);
    }

    #[test]
    fn circle_times_point_is_circle() {
        let s1 = circle3();
        let p = build_complex(&[vec![0]]).unwrap();
        let prod = product_complex(&s1, &p);
        assert_eq!(prod.complex.f_vector(), s1.f_vector());
    }

    #[test]
    fn product_euler_characteristic_multiplies() {
        let s1 = circle3();
        let e = build_complex(&[vec![0, 1]]).unwrap();
        let s1xe = product_complex(&s1, &e);
        assert_eq!(
            s1xe.complex.euler_characteristic(),
            s1.euler_characteristic() * e.euler_characteristic()
        );
    }

    #[test]
    fn diagonal_image_is_isomorphic_subcomplex() {
        let k = circle3();
        let prod = Arc::new(product_complex(&k, &k));
        let diag = DiagonalMap::new(prod.clone());
        assert_eq!(diag.vertex_image(0), prod.vertex(0, 0));
        for dim in 0..=k.dimension() {
            for s in k.simplices(dim) {
                let image = diag.simplex_image(s);
                assert!(
                    prod.complex.contains(&image),
                    "diagonal image {image:?} missing from product"
                );
            }
        }
        // injectivity on vertices makes the image a copy of K
        let edge_image = diag.simplex_image(&[0, 1]);
        assert!(edge_image.windows(2).all(|w| w[0] < w[1]));
    }
}
