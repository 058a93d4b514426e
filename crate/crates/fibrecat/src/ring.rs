//! Graded cohomology rings with structure constants, cup length, the
//! Künneth tensor-square ring with Koszul signs, the zero-divisor ideal
//! `I = ker Δ*`, and the zero-divisor cup length computed along two
//! independent routes (tensor ring vs. triangulated product) that must
//! agree.

use crate::chain::{
    cohomology_basis, cup_product_unchecked, unit_cocycle, Cochain, CohomologyBasis,
};
use crate::complex::{product_complex, ProductComplex, SimplicialComplex};
use crate::linalg::{Echelon, Field, Inserted, Scalar, SparseVec};
use crate::report::CheckResult;
use serde::{Deserialize, Serialize};

/// A finite graded ring over a field, given by per-degree bases and a
/// full multiplication table of structure constants.
pub struct GradedRing {
    pub field: Field,
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    /// `table[a][b]` = coordinates of `e_a * e_b` in degree
    /// `deg(a) + deg(b)`; empty vector when the product degree exceeds the
    /// top degree.
    table: Vec<Vec<Vec<Scalar>>>,
    offsets: Vec<usize>,
    unit: Vec<Scalar>,
}

impl GradedRing {
    pub fn new(
        field: Field,
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Self {
        let mut offsets = Vec::with_capacity(dims.len());
        let mut acc = 0;
        for d in &dims {
            offsets.push(acc);
            acc += d;
        }
        GradedRing {
            field,
            dims,
            labels,
            table,
            offsets,
            unit,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn label(&self, degree: usize, i: usize) -> &str {
        &self.labels[degree][i]
    }

    pub fn global_index(&self, degree: usize, i: usize) -> usize {
        self.offsets[degree] + i
    }

    /// Coordinates of the unit in degree 0.
    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Product of basis elements as degree-(d1+d2) coordinates.
    pub fn basis_product(&self, d1: usize, i1: usize, d2: usize, i2: usize) -> &[Scalar] {
        &self.table[self.global_index(d1, i1)][self.global_index(d2, i2)]
    }

    /// Product of two homogeneous coordinate vectors.
    pub fn product(&self, d1: usize, a: &[Scalar], d2: usize, b: &[Scalar]) -> Vec<Scalar> {
        let target = d1 + d2;
        if target > self.top_degree() {
            return Vec::new();
        }
        let mut out = vec![self.field.zero(); self.dims[target]];
        for (i1, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (i2, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let coef = ca.mul(cb);
                for (j, s) in self.basis_product(d1, i1, d2, i2).iter().enumerate() {
                    if !s.is_zero() {
                        out[j] = out[j].add(&coef.mul(s));
                    }
                }
            }
        }
        out
    }

    /// Checks unit laws, associativity and graded commutativity on all
    /// basis products.
    pub fn verify_axioms(&self) -> Vec<CheckResult> {
        let mut checks = Vec::new();
        let mut unit_ok = true;
        let mut unit_witness = String::new();
        for d in 0..=self.top_degree() {
            for i in 0..self.dims[d] {
                let mut e = vec![self.field.zero(); self.dims[d]];
                e[i] = self.field.one();
                let left = self.product(0, &self.unit, d, &e);
                let right = self.product(d, &e, 0, &self.unit);
                if left != e || right != e {
                    unit_ok = false;
                    unit_witness = format!("unit law fails on {}", self.label(d, i));
                }
            }
        }
        checks.push(if unit_ok {
            CheckResult::pass("ring_unit_laws")
        } else {
            CheckResult::fail("ring_unit_laws", unit_witness)
        });
        let mut assoc = CheckResult::pass("ring_associativity");
        'assoc: for d1 in 0..=self.top_degree() {
            for d2 in 0..=self.top_degree() - d1 {
                for d3 in 0..=self.top_degree() - d1 - d2 {
                    for i1 in 0..self.dims[d1] {
                        for i2 in 0..self.dims[d2] {
                            for i3 in 0..self.dims[d3] {
                                let ab = self.basis_product(d1, i1, d2, i2).to_vec();
                                let bc = self.basis_product(d2, i2, d3, i3).to_vec();
                                let mut e3 = vec![self.field.zero(); self.dims[d3]];
                                e3[i3] = self.field.one();
                                let mut e1 = vec![self.field.zero(); self.dims[d1]];
                                e1[i1] = self.field.one();
                                let left = self.product(d1 + d2, &ab, d3, &e3);
                                let right = self.product(d1, &e1, d2 + d3, &bc);
                                if left != right {
                                    assoc = CheckResult::fail(
                                        "ring_associativity",
                                        format!(
                                            "degrees ({d1},{d2},{d3}) indices ({i1},{i2},{i3})"
                                        ),
                                    );
                                    break 'assoc;
                                }
                            }
                        }
                    }
                }
            }
        }
        checks.push(assoc);
        let mut comm = CheckResult::pass("ring_graded_commutativity");
        'comm: for d1 in 0..=self.top_degree() {
            for d2 in 0..=self.top_degree() - d1 {
                for i1 in 0..self.dims[d1] {
                    for i2 in 0..self.dims[d2] {
                        let ab = self.basis_product(d1, i1, d2, i2);
                        let ba = self.basis_product(d2, i2, d1, i1);
                        let sign = if d1 * d2 % 2 == 0 { 1 } else { -1 };
                        let ok = ab
                            .iter()
                            .zip(ba)
                            .all(|(x, y)| *x == y.mul(&self.field.from_int(sign)));
                        if !ok {
                            comm = CheckResult::fail(
                                "ring_graded_commutativity",
                                format!("degrees ({d1},{d2}) indices ({i1},{i2})"),
                            );
                            break 'comm;
                        }
                    }
                }
            }
        }
        checks.push(comm);
        checks
    }
}

/// A cohomology ring together with the cocycle basis it was built from.
pub struct RingWithBasis {
    pub basis: CohomologyBasis,
    pub ring: GradedRing,
}

/// Builds `H^*(K; R)` as a graded ring: structure constants come from
/// cup products of basis representatives reduced in the basis.
pub fn cohomology_ring(k: &SimplicialComplex, field: Field) -> RingWithBasis {
    let basis = cohomology_basis(k, field);
    let dims = basis.dims();
    let top = dims.len() - 1;
    let labels: Vec<Vec<String>> = dims
        .iter()
        .enumerate()
        .map(|(d, n)| (0..*n).map(|i| format!("h{d}_{i}")).collect())
        .collect();
    let total: usize = dims.iter().sum();
    let mut table = vec![vec![Vec::new(); total]; total];
    let mut offsets = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for d in &dims {
        offsets.push(acc);
        acc += d;
    }
    for d1 in 0..=top {
        for (i1, a) in basis.representatives(d1).iter().enumerate() {
            for d2 in 0..=top - d1 {
                for (i2, b) in basis.representatives(d2).iter().enumerate() {
                    let product = cup_product_unchecked(k, field, a, b);
                    let coords = basis.reduce(k, &product).expect("product of cocycles");
                    table[offsets[d1] + i1][offsets[d2] + i2] = coords;
                }
            }
        }
    }
    let unit_coords = basis
        .reduce(k, &unit_cocycle(k, field))
        .expect("unit cocycle");
    let ring = GradedRing::new(field, dims, labels, table, unit_coords);
    RingWithBasis { basis, ring }
}

/// A per-degree spanning set of ring elements.
#[derive(Clone, Debug)]
pub struct Ideal {
    /// `spans[d]` = coordinate vectors spanning the degree-`d` slice.
    pub spans: Vec<Vec<Vec<Scalar>>>,
}

impl Ideal {
    pub fn is_zero(&self) -> bool {
        self.spans.iter().all(|s| s.is_empty())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spans.iter().map(|s| s.len()).collect()
    }
}

/// Row-reduces a list of same-degree coordinate vectors into a basis.
fn span_basis(field: Field, dim: usize, vectors: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let mut ech = Echelon::new(field, dim);
    for v in vectors {
        ech.insert(&dense_to_sparse(&v));
    }
    ech.basis()
        .iter()
        .map(|col| {
            let mut dense = vec![field.zero(); dim];
            for (i, s) in col {
                dense[*i] = s.clone();
            }
            dense
        })
        .collect()
}

fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| (i, s.clone()))
        .collect()
}

/// The span of all positive-degree basis elements.
pub fn positive_ideal(ring: &GradedRing) -> Ideal {
    let mut spans = vec![Vec::new(); ring.top_degree() + 1];
    for (d, span) in spans.iter_mut().enumerate().skip(1) {
        for i in 0..ring.dims()[d] {
            let mut e = vec![ring.field.zero(); ring.dims()[d]];
            e[i] = ring.field.one();
            span.push(e);
        }
    }
    Ideal { spans }
}

/// Span of all products of elements of `a` and `b`, degreewise.
pub fn span_product(ring: &GradedRing, a: &Ideal, b: &Ideal) -> Ideal {
    let top = ring.top_degree();
    let mut collected: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); top + 1];
    for (d1, sa) in a.spans.iter().enumerate() {
        if sa.is_empty() {
            continue;
        }
        for (d2, sb) in b.spans.iter().enumerate() {
            if sb.is_empty() || d1 + d2 > top {
                continue;
            }
            for x in sa {
                for y in sb {
                    let p = ring.product(d1, x, d2, y);
                    if p.iter().any(|s| !s.is_zero()) {
                        collected[d1 + d2].push(p);
                    }
                }
            }
        }
    }
    let spans = collected
        .into_iter()
        .enumerate()
        .map(|(d, vs)| span_basis(ring.field, ring.dims()[d], vs))
        .collect();
    Ideal { spans }
}

/// Largest `m` with the `m`-th span power of `ideal` nonzero; 0 when the
/// ideal itself vanishes. Bilinearity makes span products exact, and the
/// bounded grading terminates the loop.
pub fn ideal_cup_length(ring: &GradedRing, ideal: &Ideal) -> usize {
    if ideal.is_zero() {
        return 0;
    }
    let mut power = ideal.clone();
    let mut m = 1;
    loop {
        let next = span_product(ring, &power, ideal);
        if next.is_zero() {
            return m;
        }
        power = next;
        m += 1;
    }
}

/// Cup length: longest nonzero product of positive-degree elements.
pub fn cup_length(ring: &GradedRing) -> usize {
    ideal_cup_length(ring, &positive_ideal(ring))
}

/// A degreewise linear map between graded rings, stored as columns over
/// the source basis.
pub struct DegreeMap {
    /// `columns[d][i]` = image coordinates (in the target's degree `d`)
    /// of the `i`-th source basis element of degree `d`.
    pub columns: Vec<Vec<Vec<Scalar>>>,
    pub target_dims: Vec<usize>,
}

impl DegreeMap {
    pub fn apply(&self, field: Field, degree: usize, v: &[Scalar]) -> Vec<Scalar> {
        let tdim = self.target_dims.get(degree).copied().unwrap_or(0);
        let mut out = vec![field.zero(); tdim];
        if degree >= self.columns.len() {
            return out;
        }
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, s) in self.columns[degree][i].iter().enumerate() {
                if !s.is_zero() {
                    out[j] = out[j].add(&c.mul(s));
                }
            }
        }
        out
    }
}

/// Degreewise kernel of a linear map out of `source`. The kernel of a
/// ring map is an ideal, so the result feeds [`ideal_cup_length`].
pub fn kernel_ideal(source: &GradedRing, map: &DegreeMap) -> Ideal {
    let field = source.field;
    let mut spans = Vec::with_capacity(source.top_degree() + 1);
    for d in 0..=source.top_degree() {
        let n = source.dims()[d];
        let tdim = map.target_dims.get(d).copied().unwrap_or(0);
        let mut ech = Echelon::with_tracking(field, tdim, n);
        let mut kernel = Vec::new();
        for i in 0..n {
            let col = dense_to_sparse(&map.columns[d][i]);
            if let Inserted::Kernel(comp) = ech.insert(&col) {
                let mut dense = vec![field.zero(); n];
                for (j, s) in comp {
                    dense[j] = s;
                }
                kernel.push(dense);
            }
        }
        spans.push(kernel);
    }
    Ideal { spans }
}

/// Pair enumeration backing the tensor square: all `(d1, i1, d2, i2)`
/// grouped by total degree, in a fixed deterministic order.
pub fn tensor_pairs(ring: &GradedRing) -> Vec<Vec<(usize, usize, usize, usize)>> {
    let top = ring.top_degree();
    let mut pairs: Vec<Vec<(usize, usize, usize, usize)>> = vec![Vec::new(); 2 * top + 1];
    for total in 0..=2 * top {
        for d1 in 0..=top.min(total) {
            let d2 = total - d1;
            if d2 > top {
                continue;
            }
            for i1 in 0..ring.dims()[d1] {
                for i2 in 0..ring.dims()[d2] {
                    pairs[total].push((d1, i1, d2, i2));
                }
            }
        }
    }
    pairs
}

/// The Künneth tensor square `H ⊗ H` with the sign rule
/// `(a ⊗ b)(c ⊗ d) = (-1)^{|b||c|} (ac ⊗ bd)`, graded by total degree.
pub fn tensor_square(ring: &GradedRing) -> GradedRing {
    tensor_square_with_sign(ring, true)
}

/// Internal variant allowing the Koszul sign to be dropped; exists so the
/// verification suites can demonstrate the sign is load-bearing.
pub fn tensor_square_with_sign(ring: &GradedRing, koszul: bool) -> GradedRing {
    let field = ring.field;
    let top = ring.top_degree();
    let pairs = tensor_pairs(ring);
    let dims: Vec<usize> = pairs.iter().map(|p| p.len()).collect();
    let labels: Vec<Vec<String>> = pairs
        .iter()
        .map(|ps| {
            ps.iter()
                .map(|(d1, i1, d2, i2)| {
                    format!("{}⊗{}", ring.label(*d1, *i1), ring.label(*d2, *i2))
                })
                .collect()
        })
        .collect();
    let total: usize = dims.iter().sum();
    let mut offsets = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for d in &dims {
        offsets.push(acc);
        acc += d;
    }
    let mut position = std::collections::HashMap::new();
    for (td, ps) in pairs.iter().enumerate() {
        for (i, key) in ps.iter().enumerate() {
            position.insert(*key, (td, i));
        }
    }
    let mut table = vec![vec![Vec::new(); total]; total];
    for (ta, pa) in pairs.iter().enumerate() {
        for (ia, (a1, i1, a2, i2)) in pa.iter().enumerate() {
            for (tb, pb) in pairs.iter().enumerate() {
                if ta + tb > 2 * top {
                    continue;
                }
                for (ib, (b1, j1, b2, j2)) in pb.iter().enumerate() {
                    let mut out = vec![field.zero(); dims[ta + tb]];
                    if a1 + b1 <= top && a2 + b2 <= top {
                        let left = ring.basis_product(*a1, *i1, *b1, *j1);
                        let right = ring.basis_product(*a2, *i2, *b2, *j2);
                        let sign = if koszul && (a2 * b1) % 2 == 1 { -1 } else { 1 };
                        let sign = field.from_int(sign);
                        for (l, cl) in left.iter().enumerate() {
                            if cl.is_zero() {
                                continue;
                            }
                            for (r, cr) in right.iter().enumerate() {
                                if cr.is_zero() {
                                    continue;
                                }
                                let (td, pos) = position[&(a1 + b1, l, a2 + b2, r)];
                                debug_assert_eq!(td, ta + tb);
                                out[pos] = out[pos].add(&sign.mul(&cl.mul(cr)));
                            }
                        }
                    }
                    table[offsets[ta] + ia][offsets[tb] + ib] = out;
                }
            }
        }
    }
    let mut unit = vec![field.zero(); dims[0]];
    for (pos, (_, i1, _, i2)) in pairs[0].iter().enumerate() {
        unit[pos] = ring.unit()[*i1].mul(&ring.unit()[*i2]);
    }
    GradedRing::new(field, dims, labels, table, unit)
}

/// The multiplication map `H ⊗ H -> H`, `a ⊗ b -> ab`: the Künneth model
/// of restriction along the diagonal.
pub fn multiplication_map(ring: &GradedRing, tensor: &GradedRing) -> DegreeMap {
    let field = ring.field;
    let pairs = tensor_pairs(ring);
    let top = ring.top_degree();
    let mut columns = Vec::with_capacity(tensor.top_degree() + 1);
    for (td, ps) in pairs.iter().enumerate() {
        let tdim = ring.dims().get(td).copied().unwrap_or(0);
        let mut cols = Vec::with_capacity(ps.len());
        for (d1, i1, d2, i2) in ps {
            if td <= top {
                cols.push(ring.basis_product(*d1, *i1, *d2, *i2).to_vec());
            } else {
                cols.push(vec![field.zero(); tdim]);
            }
        }
        columns.push(cols);
    }
    let target_dims: Vec<usize> = (0..=tensor.top_degree())
        .map(|d| ring.dims().get(d).copied().unwrap_or(0))
        .collect();
    DegreeMap {
        columns,
        target_dims,
    }
}

/// Zero-divisor ideal: kernel of the multiplication map on the tensor
/// square. Returns the tensor ring along with the ideal inside it.
pub fn zero_divisor_ideal(ring: &GradedRing) -> (GradedRing, Ideal) {
    let tensor = tensor_square(ring);
    let map = multiplication_map(ring, &tensor);
    let ideal = kernel_ideal(&tensor, &map);
    (tensor, ideal)
}

/// Zero-divisor cup length via the Künneth tensor ring.
pub fn zero_divisor_cup_length(k: &SimplicialComplex, field: Field) -> usize {
    let rb = cohomology_ring(k, field);
    let (tensor, ideal) = zero_divisor_ideal(&rb.ring);
    ideal_cup_length(&tensor, &ideal)
}

/// Zero-divisor cup length computed honestly inside the staircase
/// triangulation of `K x K`: the cup length of
/// `ker(Δ*: H*(K x K) -> H*(K))` in the product's own cohomology ring.
/// Must agree with [`zero_divisor_cup_length`] on every complex.
pub fn zcl_via_product_complex(k: &SimplicialComplex, field: Field) -> usize {
    let prod = product_complex(k, k);
    zcl_in_product(k, &prod, field)
}

/// Same as [`zcl_via_product_complex`] with a prebuilt product complex.
pub fn zcl_in_product(k: &SimplicialComplex, prod: &ProductComplex, field: Field) -> usize {
    let base = cohomology_ring(k, field);
    let prod_ring = cohomology_ring(&prod.complex, field);
    let map = diagonal_restriction_map(k, prod, &prod_ring, &base);
    let ideal = kernel_ideal(&prod_ring.ring, &map);
    ideal_cup_length(&prod_ring.ring, &ideal)
}

/// The map `Δ*: H*(K x K) -> H*(K)` induced by the simplicial diagonal:
/// pull back each product basis cocycle along `v -> (v, v)` and reduce
/// it in the base cohomology basis.
pub fn diagonal_restriction_map(
    k: &SimplicialComplex,
    prod: &ProductComplex,
    prod_ring: &RingWithBasis,
    base: &RingWithBasis,
) -> DegreeMap {
    let field = prod_ring.ring.field;
    let mut columns = Vec::with_capacity(prod_ring.ring.top_degree() + 1);
    for d in 0..=prod_ring.ring.top_degree() {
        let mut cols = Vec::new();
        for rep in prod_ring.basis.representatives(d) {
            let pulled = pullback_along_diagonal(k, prod, field, rep);
            let coords = base
                .basis
                .reduce(k, &pulled)
                .expect("diagonal pullback of a cocycle is a cocycle");
            cols.push(coords);
        }
        columns.push(cols);
    }
    let target_dims: Vec<usize> = (0..=prod_ring.ring.top_degree())
        .map(|d| base.ring.dims().get(d).copied().unwrap_or(0))
        .collect();
    DegreeMap {
        columns,
        target_dims,
    }
}

/// `(Δ* α)(σ) = α(Δσ)`; the diagonal embeds simplices order-preservingly,
/// so no signs appear.
fn pullback_along_diagonal(
    k: &SimplicialComplex,
    prod: &ProductComplex,
    field: Field,
    alpha: &Cochain,
) -> Cochain {
    let degree = alpha.degree;
    if degree > k.dimension() {
        return Cochain::zero(degree);
    }
    let mut entries = SparseVec::new();
    for (i, simplex) in k.simplices(degree).iter().enumerate() {
        let image = prod.diagonal_simplex(simplex);
        if let Some((_, j)) = prod.complex.simplex_id(&image) {
            let v = alpha.value(field, j);
            if !v.is_zero() {
                entries.push((i, v));
            }
        }
    }
    Cochain { degree, entries }
}

/// Per-field invariant bundle in the shape of the report schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldInvariants {
    pub field: String,
    pub betti: Vec<usize>,
    pub cup_length: usize,
    pub zcl_tensor: usize,
    pub zcl_product: usize,
    pub tcm_lower_bound: usize,
}

/// Lower-bound report over a list of fields.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TcBoundReport {
    pub complex: String,
    pub fields: Vec<FieldInvariants>,
    pub max_zcl: usize,
    pub tc_lower_bound: usize,
    pub tcm_lower_bound: usize,
    pub bracket: String,
}

/// Computes Betti numbers, cup length and both zero-divisor cup lengths
/// for each field, plus the TC/TCM lower bounds `zcl + 1` and the
/// monoidal bracket `TC <= TCM <= TC + 1`.
pub fn tc_lower_bound_report(name: &str, k: &SimplicialComplex, fields: &[Field]) -> TcBoundReport {
    let prod = product_complex(k, k);
    let mut out = Vec::new();
    for field in fields {
        let rb = cohomology_ring(k, *field);
        let betti = rb.ring.dims().to_vec();
        let cuplen = cup_length(&rb.ring);
        let (tensor, ideal) = zero_divisor_ideal(&rb.ring);
        let zcl_tensor = ideal_cup_length(&tensor, &ideal);
        let zcl_product = zcl_in_product(k, &prod, *field);
        out.push(FieldInvariants {
            field: field.name(),
            betti,
            cup_length: cuplen,
            zcl_tensor,
            zcl_product,
            tcm_lower_bound: zcl_tensor + 1,
        });
    }
    let max_zcl = out.iter().map(|f| f.zcl_tensor).max().unwrap_or(0);
    TcBoundReport {
        complex: name.to_string(),
        fields: out,
        max_zcl,
        tc_lower_bound: max_zcl + 1,
        tcm_lower_bound: max_zcl + 1,
        bracket: "tc <= tcm <= tc + 1".to_string(),
    }
}
