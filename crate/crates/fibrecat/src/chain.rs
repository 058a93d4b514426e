//! Simplicial chain algebra: boundary matrices, field Betti numbers,
//! integral homology via Smith normal form, cochain calculus with the
//! front/back-face cup product, and per-degree cohomology bases with a
//! canonical reduction map.

use crate::complex::SimplicialComplex;
use crate::linalg::{
    rank, smith_normal_form, Echelon, Field, Inserted, Int, Scalar, SmithForm, SparseVec,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("degree {0} out of range 1..={1}")]
    DegreeOutOfRange(usize, usize),
    #[error("integer coefficients are unsupported here; use integer_homology")]
    UnsupportedCoefficients,
    #[error("cochain of degree {0} is not a cocycle")]
    NotACocycle(usize),
    #[error("cochain degrees or fields do not match")]
    Mismatch,
}

/// Coefficient choice exposed by the chain-level operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Field(Field),
    Integers,
}

/// Signed incidence triplets `(face_row, simplex_col, sign)` of the
/// boundary operator from `k`-chains to `(k-1)`-chains: the column of a
/// simplex `[v0..vk]` has entry `(-1)^i` at its `i`-th face.
pub fn boundary_matrix(
    k: &SimplicialComplex,
    degree: usize,
) -> Result<Vec<(usize, usize, i8)>, ChainError> {
    if degree < 1 || degree > k.dimension() {
        return Err(ChainError::DegreeOutOfRange(degree, k.dimension()));
    }
    let mut entries = Vec::new();
    for (col, simplex) in k.simplices(degree).iter().enumerate() {
        for (row, sign) in faces_with_signs(k, simplex) {
            entries.push((row, col, sign));
        }
    }
    Ok(entries)
}

/// The faces of a simplex with their alternating signs and row indices.
fn faces_with_signs<'a>(
    k: &'a SimplicialComplex,
    simplex: &'a [u32],
) -> impl Iterator<Item = (usize, i8)> + 'a {
    let dim = simplex.len() - 1;
    (0..=dim).map(move |i| {
        let mut face: Vec<u32> = Vec::with_capacity(dim);
        face.extend_from_slice(&simplex[..i]);
        face.extend_from_slice(&simplex[i + 1..]);
        let (_, row) = k.simplex_id(&face).expect("closure guarantees faces");
        let sign = if i % 2 == 0 { 1 } else { -1 };
        (row, sign)
    })
}

fn boundary_columns(k: &SimplicialComplex, degree: usize, field: Field) -> Vec<SparseVec> {
    let mut cols = vec![SparseVec::new(); k.simplex_count(degree)];
    for (row, col, sign) in boundary_matrix(k, degree).expect("degree checked by caller") {
        cols[col].push((row, field.from_int(sign as i64)));
    }
    for c in cols.iter_mut() {
        c.sort_by_key(|e| e.0);
    }
    cols
}

/// Betti numbers `b_0..b_dim` over a field.
pub fn betti_numbers(
    k: &SimplicialComplex,
    coefficients: Coefficients,
) -> Result<Vec<usize>, ChainError> {
    let field = match coefficients {
        Coefficients::Field(f) => f,
        Coefficients::Integers => return Err(ChainError::UnsupportedCoefficients),
    };
    let dim = k.dimension();
    let mut ranks = vec![0usize; dim + 2];
    for degree in 1..=dim {
        let cols = boundary_columns(k, degree, field);
        ranks[degree] = rank(field, k.simplex_count(degree - 1), &cols);
    }
    Ok((0..=dim)
        .map(|d| k.simplex_count(d) - ranks[d] - ranks[d + 1])
        .collect())
}

/// One integral homology group: free rank plus torsion coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<Int>,
}

/// Integral homology in all degrees from Smith normal forms of the
/// boundary matrices.
pub fn integer_homology(k: &SimplicialComplex) -> Vec<HomologyGroup> {
    let dim = k.dimension();
    let mut forms: Vec<SmithForm> = Vec::with_capacity(dim + 1);
    for degree in 1..=dim {
        let entries: Vec<(usize, usize, Int)> = boundary_matrix(k, degree)
            .expect("degree in range")
            .into_iter()
            .map(|(r, c, s)| (r, c, Int::from(s)))
            .collect();
        forms.push(smith_normal_form(
            k.simplex_count(degree - 1),
            k.simplex_count(degree),
            &entries,
        ));
    }
    (0..=dim)
        .map(|d| {
            let rank_d = if d >= 1 { forms[d - 1].rank() } else { 0 };
            let rank_d1 = if d < dim { forms[d].rank() } else { 0 };
            let torsion = if d < dim {
                forms[d].torsion()
            } else {
                Vec::new()
            };
            HomologyGroup {
                rank: k.simplex_count(d) - rank_d - rank_d1,
                torsion,
            }
        })
        .collect()
}

/// A simplicial cochain: sparse values over the `degree`-simplices.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub degree: usize,
    pub entries: SparseVec,
}

impl Cochain {
    pub fn zero(degree: usize) -> Self {
        Cochain {
            degree,
            entries: SparseVec::new(),
        }
    }

    pub fn value(&self, field: Field, idx: usize) -> Scalar {
        match self.entries.binary_search_by_key(&idx, |e| e.0) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => field.zero(),
        }
    }
}

/// The unit 0-cochain: 1 on every vertex.
pub fn unit_cocycle(k: &SimplicialComplex, field: Field) -> Cochain {
    let entries = (0..k.simplex_count(0)).map(|i| (i, field.one())).collect();
    Cochain { degree: 0, entries }
}

/// The simplicial coboundary (transpose of the boundary with the same
/// signs).
pub fn coboundary(k: &SimplicialComplex, field: Field, c: &Cochain) -> Cochain {
    let degree = c.degree + 1;
    if degree > k.dimension() {
        return Cochain::zero(degree);
    }
    let mut entries = SparseVec::new();
    for (col, simplex) in k.simplices(degree).iter().enumerate() {
        let mut acc = field.zero();
        for (row, sign) in faces_with_signs(k, simplex) {
            let v = c.value(field, row);
            if !v.is_zero() {
                let signed = if sign > 0 { v } else { v.neg() };
                acc = acc.add(&signed);
            }
        }
        if !acc.is_zero() {
            entries.push((col, acc));
        }
    }
    Cochain { degree, entries }
}

pub fn is_cocycle(k: &SimplicialComplex, field: Field, c: &Cochain) -> bool {
    coboundary(k, field, c).entries.is_empty()
}

/// Front-face/back-face product of cochains with respect to the fixed
/// vertex order:
/// `(a ∪ b)([v0..v_{p+q}]) = a([v0..v_p]) * b([v_p..v_{p+q}])`.
/// Both inputs must be cocycles; the output then is one too.
pub fn cup_product(
    k: &SimplicialComplex,
    field: Field,
    a: &Cochain,
    b: &Cochain,
) -> Result<Cochain, ChainError> {
    if !is_cocycle(k, field, a) {
        return Err(ChainError::NotACocycle(a.degree));
    }
    if !is_cocycle(k, field, b) {
        return Err(ChainError::NotACocycle(b.degree));
    }
    Ok(cup_product_unchecked(k, field, a, b))
}

/// Cochain-level cup product without the cocycle validation; used
/// internally where inputs are basis representatives.
pub fn cup_product_unchecked(
    k: &SimplicialComplex,
    field: Field,
    a: &Cochain,
    b: &Cochain,
) -> Cochain {
    let degree = a.degree + b.degree;
    if degree > k.dimension() {
        return Cochain::zero(degree);
    }
    let p = a.degree;
    let mut entries = SparseVec::new();
    for (col, simplex) in k.simplices(degree).iter().enumerate() {
        let front = &simplex[..=p];
        let back = &simplex[p..];
        let (_, fi) = k.simplex_id(front).expect("front face");
        let av = a.value(field, fi);
        if av.is_zero() {
            continue;
        }
        let (_, bi) = k.simplex_id(back).expect("back face");
        let bv = b.value(field, bi);
        if bv.is_zero() {
            continue;
        }
        entries.push((col, av.mul(&bv)));
    }
    Cochain { degree, entries }
}

/// Per-degree cohomology data: representative cocycles together with a
/// reduction sending any cocycle to its coordinates in the basis modulo
/// coboundaries.
pub struct CohomologyBasis {
    pub field: Field,
    degrees: Vec<DegreeData>,
}

struct DegreeData {
    representatives: Vec<Cochain>,
    image: Echelon,
    reps: Echelon,
}

impl CohomologyBasis {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .map(|d| d.representatives.len())
            .collect()
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn representatives(&self, degree: usize) -> &[Cochain] {
        if degree < self.degrees.len() {
            &self.degrees[degree].representatives
        } else {
            &[]
        }
    }

    /// Coordinates of a cocycle in the degree basis, modulo coboundaries.
    /// A coboundary reduces to all zeros. Fails on non-cocycles.
    pub fn reduce(&self, k: &SimplicialComplex, c: &Cochain) -> Result<Vec<Scalar>, ChainError> {
        if c.degree >= self.degrees.len() {
            if is_cocycle(k, self.field, c) && c.entries.is_empty() {
                return Ok(Vec::new());
            }
            return Err(ChainError::NotACocycle(c.degree));
        }
        let data = &self.degrees[c.degree];
        let reduced = data.image.reduce(&c.entries);
        match data.reps.coordinates(&reduced) {
            Some(coords) => Ok(coords),
            None => Err(ChainError::NotACocycle(c.degree)),
        }
    }
}

/// Computes representatives and reduction data in every degree.
pub fn cohomology_basis(k: &SimplicialComplex, field: Field) -> CohomologyBasis {
    let dim = k.dimension();
    // coboundary columns per degree: image of delta^{d} lives in C^{d+1}
    let mut degrees: Vec<DegreeData> = Vec::with_capacity(dim + 1);
    let mut coboundary_cols: Vec<Vec<SparseVec>> = Vec::with_capacity(dim + 1);
    for d in 0..=dim {
        // column for each d-simplex: its coboundary in C^{d+1}
        let n_up = if d < dim { k.simplex_count(d + 1) } else { 0 };
        let mut cols = vec![SparseVec::new(); k.simplex_count(d)];
        if d < dim {
            for (row, col, sign) in boundary_matrix(k, d + 1).expect("in range") {
                // boundary entry (face=row, simplex=col) transposes to
                // coboundary entry (row=col simplex, col=row face)
                cols[row].push((col, field.from_int(sign as i64)));
            }
            for c in cols.iter_mut() {
                c.sort_by_key(|e| e.0);
            }
        }
        let _ = n_up;
        coboundary_cols.push(cols);
    }
    for d in 0..=dim {
        let n_d = k.simplex_count(d);
        // image of delta^{d-1} inside C^d
        let mut image = Echelon::new(field, n_d);
        if d >= 1 {
            for col in &coboundary_cols[d - 1] {
                image.insert(col);
            }
        }
        // kernel of delta^d, streamed; representatives reduced mod image
        let height_up = if d < dim { k.simplex_count(d + 1) } else { 0 };
        let mut reducer = Echelon::with_tracking(field, height_up, n_d);
        let mut reps = Echelon::new(field, n_d);
        for col in &coboundary_cols[d] {
            if let Inserted::Kernel(comp) = reducer.insert(col) {
                let reduced = image.reduce(&comp);
                if !reduced.is_empty() {
                    reps.insert(&reduced);
                }
            }
        }
        // canonical representatives are the fully reduced pivot columns
        let representatives: Vec<Cochain> = reps
            .basis()
            .iter()
            .map(|b| Cochain {
                degree: d,
                entries: b.clone(),
            })
            .collect();
        degrees.push(DegreeData {
            representatives,
            image,
            reps,
        });
    }
    CohomologyBasis { field, degrees }
}
