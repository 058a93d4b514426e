//! Exact linear algebra: scalars over `Q` and `F_p`, a sparse column
//! echelon reducer, and a dense integer Smith normal form.
//!
//! Everything here is exact; there is no floating point anywhere in the
//! crate. Matrices stay small enough on the supported complexes that a
//! dense Smith form and a sparse-column Gauss reducer are sufficient.
//! The reducer is the seam to replace if a sparse backend is ever needed.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::HashMap;
use thiserror::Error;

/// Exact rational number used for all geometric coordinates.
pub type Rat = BigRational;
/// Arbitrary-precision integer used for Smith normal forms.
pub type Int = BigInt;

/// Shorthand for a small rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("unknown field spec `{0}` (expected q, f<p> or fp:<p>)")]
    UnknownSpec(String),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
}

/// A coefficient field: the rationals or a prime field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Parses `q`, `f2`, `f3`, ... or `fp:<p>`.
    pub fn parse(spec: &str) -> Result<Field, FieldError> {
        let s = spec.trim().to_ascii_lowercase();
        if s == "q" {
            return Ok(Field::Rational);
        }
        let digits = s
            .strip_prefix("fp:")
            .or_else(|| s.strip_prefix('f'))
            .ok_or_else(|| FieldError::UnknownSpec(spec.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| FieldError::UnknownSpec(spec.to_string()))?;
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// Canonical name used in reports: `q`, `f2`, `f3`, ...
    pub fn name(&self) -> String {
        match self {
            Field::Rational => "q".to_string(),
            Field::Prime(p) => format!("f{p}"),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rat::zero()),
            Field::Prime(p) => Scalar::Fp {
                value: 0,
                modulus: *p,
            },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(rat_int(n)),
            Field::Prime(p) => Scalar::Fp {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element; `Fp` values are kept reduced to `[0, p)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Q(Rat),
    Fp { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (
                Scalar::Fp {
                    value: a,
                    modulus: p,
                },
                Scalar::Fp {
                    value: b,
                    modulus: q,
                },
            ) => {
                assert_eq!(p, q, "mixed moduli");
                Scalar::Fp {
                    value: (a + b) % p,
                    modulus: *p,
                }
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { value, modulus } => Scalar::Fp {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (
                Scalar::Fp {
                    value: a,
                    modulus: p,
                },
                Scalar::Fp {
                    value: b,
                    modulus: q,
                },
            ) => {
                assert_eq!(p, q, "mixed moduli");
                Scalar::Fp {
                    value: (a * b) % p,
                    modulus: *p,
                }
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Q(a.recip())
            }
            Scalar::Fp { value, modulus } => {
                assert!(*value != 0, "inverse of zero");
                Scalar::Fp {
                    value: mod_pow(*value, modulus - 2, *modulus),
                    modulus: *modulus,
                }
            }
        }
    }

    /// Render for witnesses and labels.
    pub fn display(&self) -> String {
        match self {
            Scalar::Q(r) => r.to_string(),
            Scalar::Fp { value, .. } => value.to_string(),
        }
    }
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Sparse column: sorted `(row, value)` pairs with nonzero values.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Dense-to-sparse gather keeping only nonzeros, sorted by row.
fn gather(ws: &[Scalar], touched: &mut Vec<usize>) -> SparseVec {
    touched.sort_unstable();
    touched.dedup();
    let mut out = Vec::new();
    for &r in touched.iter() {
        if !ws[r].is_zero() {
            out.push((r, ws[r].clone()));
        }
    }
    out
}

/// Outcome of feeding one column into an [`Echelon`].
pub enum Inserted {
    /// The column was independent and became a new pivot.
    Pivot,
    /// The column reduced to zero; when tracking is on, the payload is the
    /// kernel combination of original columns that witnesses it.
    Kernel(SparseVec),
}

/// Incremental column reducer keeping a full reduced column echelon form:
/// every pivot row has value 1 in exactly one stored column and 0 in all
/// others. Optionally tracks companion columns so that kernel vectors of
/// the fed matrix can be read off.
pub struct Echelon {
    field: Field,
    height: usize,
    cols: Vec<SparseVec>,
    comps: Vec<SparseVec>,
    pivot_rows: Vec<usize>,
    row_to_col: HashMap<usize, usize>,
    fed: usize,
    track: bool,
    ws: Vec<Scalar>,
    cws: Vec<Scalar>,
}

impl Echelon {
    pub fn new(field: Field, height: usize) -> Self {
        Echelon {
            field,
            height,
            cols: Vec::new(),
            comps: Vec::new(),
            pivot_rows: Vec::new(),
            row_to_col: HashMap::new(),
            fed: 0,
            track: false,
            ws: vec![field.zero(); height],
            cws: Vec::new(),
        }
    }

    /// Like [`Echelon::new`] but records column companions; `width` is the
    /// number of columns that will be fed.
    pub fn with_tracking(field: Field, height: usize, width: usize) -> Self {
        let mut e = Echelon::new(field, height);
        e.track = true;
        e.cws = vec![field.zero(); width];
        e
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivot_rows
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.cols
    }

    /// Feeds one column; returns whether it became a pivot or a kernel
    /// witness.
    pub fn insert(&mut self, column: &SparseVec) -> Inserted {
        let mut touched: Vec<usize> = Vec::with_capacity(column.len());
        for (r, v) in column {
            self.ws[*r] = v.clone();
            touched.push(*r);
        }
        let mut ctouched: Vec<usize> = Vec::new();
        if self.track {
            self.cws[self.fed] = self.field.one();
            ctouched.push(self.fed);
        }
        // Single elimination pass; valid because stored columns are in full
        // reduced form (zero at every other pivot row).
        for p in 0..self.cols.len() {
            let prow = self.pivot_rows[p];
            if self.ws[prow].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut self.ws[prow], self.field.zero());
            for (r, a) in &self.cols[p] {
                if *r == prow {
                    continue;
                }
                self.ws[*r] = self.ws[*r].sub(&c.mul(a));
                touched.push(*r);
            }
            if self.track {
                for (r, a) in &self.comps[p] {
                    self.cws[*r] = self.cws[*r].sub(&c.mul(a));
                    ctouched.push(*r);
                }
            }
        }
        let reduced = gather(&self.ws, &mut touched);
        for &r in &touched {
            self.ws[r] = self.field.zero();
        }
        self.fed += 1;
        if reduced.is_empty() {
            let comp = if self.track {
                let out = gather(&self.cws, &mut ctouched);
                for &r in &ctouched {
                    self.cws[r] = self.field.zero();
                }
                out
            } else {
                SparseVec::new()
            };
            return Inserted::Kernel(comp);
        }
        let comp = if self.track {
            let out = gather(&self.cws, &mut ctouched);
            for &r in &ctouched {
                self.cws[r] = self.field.zero();
            }
            out
        } else {
            SparseVec::new()
        };
        self.add_pivot(reduced, comp);
        Inserted::Pivot
    }

    fn add_pivot(&mut self, mut col: SparseVec, mut comp: SparseVec) {
        let prow = col.last().expect("nonempty").0;
        let norm = col.last().unwrap().1.inv();
        for (_, v) in col.iter_mut() {
            *v = v.mul(&norm);
        }
        for (_, v) in comp.iter_mut() {
            *v = v.mul(&norm);
        }
        // Clear the new pivot row from all previously stored columns so the
        // full reduced form is preserved.
        for q in 0..self.cols.len() {
            let coef = match self.cols[q].binary_search_by_key(&prow, |e| e.0) {
                Ok(pos) => self.cols[q][pos].1.clone(),
                Err(_) => continue,
            };
            self.cols[q] = sparse_axpy(&self.cols[q], &coef.neg(), &col);
            if self.track {
                self.comps[q] = sparse_axpy(&self.comps[q], &coef.neg(), &comp);
            }
        }
        self.row_to_col.insert(prow, self.cols.len());
        self.pivot_rows.push(prow);
        self.cols.push(col);
        self.comps.push(comp);
    }

    /// Canonical representative of `v` modulo the span of the stored
    /// columns (all pivot-row entries eliminated). Does not modify `self`.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut ws = vec![self.field.zero(); self.height];
        let mut touched: Vec<usize> = Vec::with_capacity(v.len());
        for (r, val) in v {
            ws[*r] = val.clone();
            touched.push(*r);
        }
        for p in 0..self.cols.len() {
            let prow = self.pivot_rows[p];
            if ws[prow].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut ws[prow], self.field.zero());
            for (r, a) in &self.cols[p] {
                if *r == prow {
                    continue;
                }
                ws[*r] = ws[*r].sub(&c.mul(a));
                touched.push(*r);
            }
        }
        gather(&ws, &mut touched)
    }

    /// Coordinates of `v` in the stored basis, in insertion order, or
    /// `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let mut coords = vec![self.field.zero(); self.cols.len()];
        let mut residual = v.clone();
        for (p, prow) in self.pivot_rows.iter().enumerate() {
            if let Ok(pos) = residual.binary_search_by_key(prow, |e| e.0) {
                let c = residual[pos].1.clone();
                residual = sparse_axpy(&residual, &c.neg(), &self.cols[p]);
                coords[p] = c;
            }
        }
        if residual.is_empty() {
            Some(coords)
        } else {
            None
        }
    }

    /// Whether `v` lies in the span of the stored columns.
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// `x + c*y` on sorted sparse vectors.
pub fn sparse_axpy(x: &SparseVec, c: &Scalar, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i >= x.len() || y[j].0 < x[i].0 {
            let v = c.mul(&y[j].1);
            if !v.is_zero() {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = x[i].1.add(&c.mul(&y[j].1));
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_scale(x: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    x.iter().map(|(r, v)| (*r, v.mul(c))).collect()
}

/// Rank of a sparse matrix given by columns.
pub fn rank(field: Field, height: usize, columns: &[SparseVec]) -> usize {
    let mut ech = Echelon::new(field, height);
    for c in columns {
        ech.insert(c);
    }
    ech.rank()
}

/// Nonzero diagonal of a Smith normal form, with the divisibility chain
/// `d1 | d2 | ...` and all entries positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<Int>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Diagonal entries `> 1`, i.e. the torsion coefficients.
    pub fn torsion(&self) -> Vec<Int> {
        self.diagonal
            .iter()
            .filter(|d| **d > Int::one())
            .cloned()
            .collect()
    }
}

/// Dense integer Smith normal form from triplets. Intended for the small
/// boundary matrices of the bundled complexes.
pub fn smith_normal_form(rows: usize, cols: usize, entries: &[(usize, usize, Int)]) -> SmithForm {
    let mut a = vec![vec![Int::zero(); cols]; rows];
    for (i, j, v) in entries {
        a[*i][*j] = v.clone();
    }
    let mut diagonal = Vec::new();
    let mut k = 0usize;
    while k < rows.min(cols) {
        let Some((pi, pj)) = min_abs_nonzero(&a, k) else {
            break;
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        loop {
            let mut clean = true;
            for i in k + 1..rows {
                if !a[i][k].is_zero() {
                    let q = &a[i][k] / &a[k][k];
                    for j in k..cols {
                        let sub = &q * &a[k][j];
                        a[i][j] -= sub;
                    }
                    if !a[i][k].is_zero() {
                        a.swap(k, i);
                        clean = false;
                    }
                }
            }
            for j in k + 1..cols {
                if !a[k][j].is_zero() {
                    let q = &a[k][j] / &a[k][k];
                    for row in a.iter_mut().take(rows).skip(k) {
                        let sub = &q * &row[k];
                        row[j] -= sub;
                    }
                    if !a[k][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(k, j);
                        }
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let mut fixed = true;
            'search: for i in k + 1..rows {
                for j in k + 1..cols {
                    if (&a[i][j] % &a[k][k]) != Int::zero() {
                        for jj in k..cols {
                            let add = a[i][jj].clone();
                            a[k][jj] += add;
                        }
                        fixed = false;
                        break 'search;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if a[k][k].is_negative() {
            for j in k..cols {
                a[k][j] = -a[k][j].clone();
            }
        }
        diagonal.push(a[k][k].clone());
        k += 1;
    }
    SmithForm { diagonal }
}

fn min_abs_nonzero(a: &[Vec<Int>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(k) {
        for (j, v) in row.iter().enumerate().skip(k) {
            if v.is_zero() {
                continue;
            }
            match &best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if v.abs() < a[*bi][*bj].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Q(rat(n, d))
    }

    #[test]
    fn field_parsing() {
        assert_eq!(Field::parse("q").unwrap(), Field::Rational);
        assert_eq!(Field::parse("f2").unwrap(), Field::Prime(2));
        assert_eq!(Field::parse("fp:7").unwrap(), Field::Prime(7));
        assert_eq!(Field::parse("f4"), Err(FieldError::NotPrime(4)));
        assert!(Field::parse("r").is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::Prime(7);
        for n in 1..7 {
            let x = f.from_int(n);
            assert_eq!(x.mul(&x.inv()), f.one());
        }
    }

    #[test]
    fn echelon_rank_and_kernel() {
        // columns of [[1,2,3],[2,4,6],[1,0,1]] transposed into column form
        let cols: Vec<SparseVec> = vec![
            vec![(0, q(1, 1)), (1, q(2, 1)), (2, q(1, 1))],
            vec![(0, q(2, 1)), (1, q(4, 1))],
            vec![(0, q(3, 1)), (1, q(6, 1)), (2, q(1, 1))],
        ];
        let mut ech = Echelon::with_tracking(Field::Rational, 3, 3);
        let mut kernels = Vec::new();
        for c in &cols {
            if let Inserted::Kernel(comp) = ech.insert(c) {
                kernels.push(comp);
            }
        }
        assert_eq!(ech.rank(), 2);
        assert_eq!(kernels.len(), 1);
        // verify the kernel combination really vanishes
        let comp = &kernels[0];
        let mut acc: SparseVec = Vec::new();
        for (j, c) in comp {
            acc = sparse_axpy(&acc, c, &cols[*j]);
        }
        assert!(acc.is_empty());
    }

    #[test]
    fn echelon_reduce_is_idempotent_and_kills_span() {
        let f = Field::Prime(5);
        let cols: Vec<SparseVec> = vec![
            vec![(0, f.from_int(1)), (2, f.from_int(3))],
            vec![(1, f.from_int(2)), (2, f.from_int(1))],
        ];
        let mut ech = Echelon::new(f, 3);
        for c in &cols {
            ech.insert(c);
        }
        let v = sparse_axpy(&cols[0], &f.from_int(3), &cols[1]);
        assert!(ech.reduce(&v).is_empty());
        let w: SparseVec = vec![(0, f.from_int(1)), (1, f.from_int(1))];
        let r = ech.reduce(&w);
        assert_eq!(ech.reduce(&r), r);
    }

    #[test]
    fn coordinates_roundtrip() {
        let f = Field::Rational;
        let cols: Vec<SparseVec> = vec![
            vec![(0, q(1, 1)), (1, q(1, 1))],
            vec![(1, q(1, 1)), (2, q(1, 1))],
        ];
        let mut ech = Echelon::new(f, 3);
        for c in &cols {
            ech.insert(c);
        }
        let v = sparse_axpy(&cols[0], &q(-2, 1), &cols[1]);
        let coords = ech.coordinates(&v).unwrap();
        let mut acc: SparseVec = Vec::new();
        for (p, c) in coords.iter().enumerate() {
            acc = sparse_axpy(&acc, c, &ech.basis()[p]);
        }
        assert_eq!(acc, v);
        let outside: SparseVec = vec![(0, q(1, 1))];
        assert!(ech.coordinates(&outside).is_none());
    }

    #[test]
    fn smith_form_example() {
        // diag(2,6,12) has SNF diag(2,6,12) already; a shuffled variant:
        let entries = vec![
            (0, 0, Int::from(2)),
            (0, 1, Int::from(4)),
            (1, 0, Int::from(4)),
            (1, 1, Int::from(2)),
        ];
        let snf = smith_normal_form(2, 2, &entries);
        assert_eq!(snf.diagonal, vec![Int::from(2), Int::from(6)]);
    }

    #[test]
    fn smith_form_divisibility_chain() {
        let entries = vec![
            (0, 0, Int::from(-6)),
            (0, 1, Int::from(111)),
            (0, 2, Int::from(-36)),
            (0, 3, Int::from(6)),
            (1, 0, Int::from(5)),
            (1, 1, Int::from(-672)),
            (1, 2, Int::from(210)),
            (1, 3, Int::from(74)),
            (2, 1, Int::from(-255)),
            (2, 2, Int::from(81)),
            (2, 3, Int::from(24)),
            (3, 0, Int::from(-7)),
            (3, 1, Int::from(255)),
            (3, 2, Int::from(-81)),
            (3, 3, Int::from(-10)),
        ];
        let snf = smith_normal_form(4, 4, &entries);
        assert_eq!(
            snf.diagonal,
            vec![Int::from(1), Int::from(3), Int::from(21)]
        );
        for w in snf.diagonal.windows(2) {
            assert_eq!(&w[1] % &w[0], Int::zero());
        }
    }
}
