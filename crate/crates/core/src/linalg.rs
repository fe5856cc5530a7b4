//! Exact sparse linear algebra over the rationals.
//!
//! Matrices are stored as sparse rows. Rank, kernel and column-space
//! computations clear denominators row by row and run a fraction-free
//! elimination over the integers, keeping every row primitive (content
//! divided out) so entries stay small on the structured, integer-like
//! matrices produced by the Dirac complexes. Pivots are chosen column by
//! column; inside a column the entry of smallest bit-length wins, ties going
//! to the smallest row index, so bases are reproducible.
//!
//! A dense Bareiss elimination is kept alongside for determinants and as an
//! independent rank route.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{bit_length, Q};

/// A sparse vector: index to nonzero value.
pub type SparseVec = BTreeMap<usize, Q>;

type IntRow = Vec<(usize, BigInt)>;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn scalar(n: usize, value: &Q) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, value.clone());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Q>> =
            rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect();
        Self::from_dense(&dense)
    }

    /// Matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (&r, v) in col {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.keys().all(|&c| c < cols)));
        RationalMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.data[r].get(&c).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    /// `self[r][c] += v`, dropping the entry when it cancels.
    pub fn add_to(&mut self, r: usize, c: usize, v: &Q) {
        if v.is_zero() {
            return;
        }
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        add_into(&mut self.data[r], c, v);
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn column(&self, c: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| row.get(&c).map(|v| (r, v.clone())))
            .collect()
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (&c, v) in row {
                t.data[c].insert(r, v.clone());
            }
        }
        t
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c)).collect()).collect()
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let acc = &mut out.data[r];
            for (&k, a) in row {
                for (&c, b) in &other.data[k] {
                    add_into(acc, c, &(a * b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut s = Q::zero();
            if row.len() < v.len() {
                for (c, a) in row {
                    if let Some(b) = v.get(c) {
                        s += a * b;
                    }
                }
            } else {
                for (c, b) in v {
                    if let Some(a) = row.get(c) {
                        s += a * b;
                    }
                }
            }
            if !s.is_zero() {
                out.insert(r, s);
            }
        }
        out
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        self.axpy(&Q::one(), other)
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        self.axpy(&-Q::one(), other)
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: &Q, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut out = self.clone();
        if a.is_zero() {
            return out;
        }
        for (r, row) in other.data.iter().enumerate() {
            for (&c, v) in row {
                add_into(&mut out.data[r], c, &(a * v));
            }
        }
        out
    }

    pub fn scale(&self, a: &Q) -> RationalMatrix {
        if a.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(&c, v)| (c, v * a)).collect())
            .collect();
        RationalMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Kronecker product, row index `i * other.rows + k`.
    pub fn kron(&self, other: &RationalMatrix) -> RationalMatrix {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (&j, a) in row {
                for (k, orow) in other.data.iter().enumerate() {
                    for (&l, b) in orow {
                        out.data[i * other.rows + k].insert(j * other.cols + l, a * b);
                    }
                }
            }
        }
        out
    }

    /// Block matrix `[self | other]`.
    pub fn hstack(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = self.clone();
        out.cols += other.cols;
        for (r, row) in other.data.iter().enumerate() {
            for (&c, v) in row {
                out.data[r].insert(self.cols + c, v.clone());
            }
        }
        out
    }

    /// Block matrix `[self ; other]`.
    pub fn vstack(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut out = self.clone();
        out.rows += other.rows;
        out.data.extend(other.data.iter().cloned());
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> RationalMatrix {
        RationalMatrix { rows: rows.len(), cols: self.cols, data: rows.iter().map(|&r| self.data[r].clone()).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    /// `uᵀ · self · v`.
    pub fn bilinear(&self, u: &SparseVec, v: &SparseVec) -> Q {
        let mv = self.mul_vec(v);
        dot(u, &mv)
    }

    pub fn is_scalar(&self) -> Option<Q> {
        if self.rows != self.cols {
            return None;
        }
        if self.rows == 0 {
            return Some(Q::zero());
        }
        let c = self.get(0, 0);
        (*self == Self::scalar(self.rows, &c)).then_some(c)
    }

    pub fn rank(&self) -> usize {
        forward_eliminate(int_rows(&self.data)).len()
    }

    /// Column indices of a maximal independent set of columns (the pivot
    /// columns of the row echelon form).
    pub fn pivot_columns(&self) -> Vec<usize> {
        forward_eliminate(int_rows(&self.data)).iter().map(|r| r[0].0).collect()
    }

    /// Reduced row echelon form as rational rows with unit pivots, together
    /// with the pivot columns.
    pub fn rref(&self) -> (Vec<SparseVec>, Vec<usize>) {
        let echelon = forward_eliminate(int_rows(&self.data));
        let mut rows: Vec<SparseVec> = echelon
            .iter()
            .map(|r| {
                let lead = Q::from_integer(r[0].1.clone());
                r.iter().map(|(c, v)| (*c, Q::from_integer(v.clone()) / &lead)).collect()
            })
            .collect();
        let pivots: Vec<usize> = echelon.iter().map(|r| r[0].0).collect();
        for i in (0..rows.len()).rev() {
            let (done, rest) = rows.split_at_mut(i);
            let pivot_row = &rest[0];
            let pc = pivots[i];
            for row in done.iter_mut() {
                if let Some(f) = row.get(&pc).cloned() {
                    for (&c, v) in pivot_row {
                        add_into(row, c, &(-(&f * v)));
                    }
                }
            }
        }
        (rows, pivots)
    }

    pub fn kernel(&self) -> Subspace {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut free_pos = vec![usize::MAX; self.cols];
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        for (k, &f) in free.iter().enumerate() {
            free_pos[f] = k;
        }
        let mut vecs: Vec<SparseVec> =
            free.iter().map(|&f| std::iter::once((f, Q::one())).collect()).collect();
        for (row, &pc) in rref.iter().zip(&pivots) {
            for (&c, v) in row {
                if c != pc {
                    vecs[free_pos[c]].insert(pc, -v.clone());
                }
            }
        }
        Subspace::from_basis_unchecked(self.cols, vecs)
    }

    /// Column space, spanned by the pivot columns of `self`.
    pub fn image(&self) -> Subspace {
        let pivots = self.pivot_columns();
        let t = self.transpose();
        let vecs = pivots.into_iter().map(|c| t.data[c].clone()).collect();
        Subspace::from_basis_unchecked(self.rows, vecs)
    }

    /// Matrix of `self` restricted to an invariant subspace, in the
    /// subspace's basis. Errors when the subspace is not invariant.
    pub fn restrict_to(&self, s: &Subspace) -> Result<RationalMatrix> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.cols, s.ambient_dim());
        let coords = Coordinatizer::new(s.vectors())?;
        let mut out = Self::zeros(s.dim(), s.dim());
        for (j, b) in s.vectors().iter().enumerate() {
            let image = self.mul_vec(b);
            let c = coords.coordinates(&image).ok_or(Error::NotInvariant)?;
            for (i, v) in c.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Option<RationalMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let (rref, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for (i, row) in rref.iter().enumerate() {
            for (&c, v) in row.range(n..) {
                inv.set(i, c - n, v.clone());
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial `det(t·I − self)`, coefficients from the
    /// constant term upward (monic, length `n + 1`). Hessenberg reduction.
    pub fn char_poly(&self) -> Vec<Q> {
        assert_eq!(self.rows, self.cols, "char_poly needs a square matrix");
        char_poly_hessenberg(self.to_dense())
    }

    /// Determinant via dense Bareiss elimination.
    pub fn determinant(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let (scale, ints) = dense_integer(self);
        let (_, det) = bareiss(ints);
        Q::new(det, scale.pow(self.rows as u32))
    }

    /// Rank via dense Bareiss elimination; independent of [`Self::rank`].
    pub fn bareiss_rank(&self) -> usize {
        let (_, ints) = dense_integer(self);
        bareiss(ints).0
    }

    /// Rational eigenvalues with algebraic multiplicities.
    ///
    /// The matrix is scaled to an integer matrix `L·A`; its rational
    /// eigenvalues are integers bounded by the maximal absolute row sum, so
    /// a finite scan of the characteristic polynomial finds all of them.
    pub fn rational_eigenvalues(&self) -> Result<Spectrum> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut lcm = BigInt::one();
        for row in &self.data {
            for v in row.values() {
                lcm = lcm.lcm(v.denom());
            }
        }
        let scaled = self.scale(&Q::from_integer(lcm.clone()));
        let bound = scaled
            .data
            .iter()
            .map(|row| row.values().fold(BigInt::zero(), |acc, v| acc + v.numer().abs()))
            .max()
            .unwrap_or_default();
        let bound: i64 = i64::try_from(&bound)
            .ok()
            .filter(|b| *b <= 1_000_000)
            .ok_or(Error::EigenvalueBoundTooLarge)?;
        let mut poly = scaled.char_poly();
        let mut eigenvalues = Vec::new();
        for k in -bound..=bound {
            if poly.len() <= 1 {
                break;
            }
            let root = Q::from_integer(k.into());
            let mut mult = 0;
            while poly.len() > 1 && eval_poly(&poly, &root).is_zero() {
                poly = deflate(&poly, &root);
                mult += 1;
            }
            if mult > 0 {
                eigenvalues.push((root / Q::from_integer(lcm.clone()), mult));
            }
        }
        debug_assert_eq!(eigenvalues.iter().map(|e| e.1).sum::<usize>() + poly.len() - 1, n);
        Ok(Spectrum { eigenvalues, residual: poly })
    }
}

/// Rational part of a spectrum. `residual` is the (monic, scaled) factor of
/// the characteristic polynomial without rational roots; it is `[1]` when
/// every eigenvalue is rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub eigenvalues: Vec<(Q, usize)>,
    pub residual: Vec<Q>,
}

impl Spectrum {
    pub fn is_fully_rational(&self) -> bool {
        self.residual.len() == 1
    }
}

pub fn dot(u: &SparseVec, v: &SparseVec) -> Q {
    let (small, large) = if u.len() <= v.len() { (u, v) } else { (v, u) };
    small.iter().filter_map(|(k, a)| large.get(k).map(|b| a * b)).sum()
}

pub(crate) fn add_into(v: &mut SparseVec, c: usize, x: &Q) {
    if x.is_zero() {
        return;
    }
    match v.entry(c) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(x.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += x;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub fn scale_vec(v: &SparseVec, a: &Q) -> SparseVec {
    if a.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&k, x)| (k, x * a)).collect()
}

pub fn axpy_vec(y: &mut SparseVec, a: &Q, x: &SparseVec) {
    for (&k, v) in x {
        add_into(y, k, &(a * v));
    }
}

pub fn eval_poly(coeffs: &[Q], x: &Q) -> Q {
    coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

/// Divides by `(t − root)`; `root` must be a root.
fn deflate(coeffs: &[Q], root: &Q) -> Vec<Q> {
    let n = coeffs.len() - 1;
    let mut out = vec![Q::zero(); n];
    let mut carry = Q::zero();
    for k in (0..n).rev() {
        carry = &coeffs[k + 1] + carry * root;
        out[k] = carry.clone();
    }
    out
}

fn char_poly_hessenberg(mut h: Vec<Vec<Q>>) -> Vec<Q> {
    let n = h.len();
    // Reduce to upper Hessenberg form by similarity transforms.
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let pivot = h[m][m - 1].clone();
        for i in m + 1..n {
            if h[i][m - 1].is_zero() {
                continue;
            }
            let u = &h[i][m - 1] / &pivot;
            for j in 0..n {
                let t = &u * &h[m][j];
                h[i][j] -= t;
            }
            for row in h.iter_mut() {
                let t = &u * &row[i];
                row[m] += t;
            }
        }
    }
    // Recurrence for the characteristic polynomials of leading blocks.
    let mut polys: Vec<Vec<Q>> = vec![vec![Q::one()]];
    for m in 1..=n {
        let mut p = vec![Q::zero(); m + 1];
        let prev = &polys[m - 1];
        for (k, c) in prev.iter().enumerate() {
            p[k + 1] += c;
            p[k] -= &h[m - 1][m - 1] * c;
        }
        let mut t = Q::one();
        for i in 1..m {
            t *= &h[m - i][m - i - 1];
            let f = &t * &h[m - i - 1][m - 1];
            if f.is_zero() {
                continue;
            }
            for (k, c) in polys[m - i - 1].iter().enumerate() {
                p[k] -= &f * c;
            }
        }
        polys.push(p);
    }
    polys.pop().unwrap()
}

fn dense_integer(m: &RationalMatrix) -> (BigInt, Vec<Vec<BigInt>>) {
    let mut lcm = BigInt::one();
    for row in &m.data {
        for v in row.values() {
            lcm = lcm.lcm(v.denom());
        }
    }
    let ints = (0..m.rows)
        .map(|r| {
            (0..m.cols)
                .map(|c| {
                    let v = m.get(r, c);
                    v.numer() * (&lcm / v.denom())
                })
                .collect()
        })
        .collect();
    (lcm, ints)
}

/// Dense Bareiss elimination. Returns the rank and, for square input, the
/// determinant (zero when singular).
fn bareiss(mut a: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut sign = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    let det = if rows == cols && rank == rows { sign * prev } else { BigInt::zero() };
    (rank, det)
}

fn int_rows(rows: &[SparseVec]) -> Vec<IntRow> {
    rows.iter().map(primitive_row).collect()
}

fn primitive_row(row: &SparseVec) -> IntRow {
    let mut lcm = BigInt::one();
    for v in row.values() {
        lcm = lcm.lcm(v.denom());
    }
    let mut out: IntRow = row.iter().map(|(&c, v)| (c, v.numer() * (&lcm / v.denom()))).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `p·row − a·pivot`, made primitive.
fn combine(p: &BigInt, row: &IntRow, a: &BigInt, pivot: &IntRow) -> IntRow {
    let mut out = IntRow::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, p * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(a * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, p * &row[i - 1].1 - a * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    make_primitive(&mut out);
    out
}

/// Row echelon form; returned rows are sorted by leading column.
fn forward_eliminate(rows: Vec<IntRow>) -> Vec<IntRow> {
    let mut buckets: BTreeMap<usize, Vec<(usize, IntRow)>> = BTreeMap::new();
    for (id, row) in rows.into_iter().enumerate() {
        if let Some(&(c, _)) = row.first() {
            buckets.entry(c).or_default().push((id, row));
        }
    }
    let mut out = Vec::new();
    while let Some((_, mut cands)) = buckets.pop_first() {
        let best = cands
            .iter()
            .enumerate()
            .min_by_key(|(_, (id, row))| (row[0].1.bits(), *id))
            .map(|(k, _)| k)
            .unwrap();
        let (_, pivot) = cands.swap_remove(best);
        let p = pivot[0].1.clone();
        for (id, row) in cands {
            let a = &row[0].1;
            let g = p.gcd(a);
            let reduced = combine(&(&p / &g), &row, &(a / &g), &pivot);
            if let Some(&(c, _)) = reduced.first() {
                buckets.entry(c).or_default().push((id, reduced));
            }
        }
        out.push(pivot);
    }
    out
}

/// Expresses vectors in a fixed independent family by incremental
/// elimination with tracked combinations.
pub struct Coordinatizer {
    k: usize,
    /// pivot column -> (reduced row with unit pivot, combination of inputs)
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
}

impl Coordinatizer {
    pub fn new(basis: &[SparseVec]) -> Result<Self> {
        let mut c = Coordinatizer { k: basis.len(), rows: BTreeMap::new() };
        for (i, b) in basis.iter().enumerate() {
            let combo: SparseVec = std::iter::once((i, Q::one())).collect();
            let (r, combo) = c.reduce(b.clone(), combo);
            let Some((&lead, lv)) = r.iter().next() else {
                return Err(Error::DependentBasis);
            };
            let inv = lv.recip();
            c.rows.insert(lead, (scale_vec(&r, &inv), scale_vec(&combo, &inv)));
        }
        Ok(c)
    }

    fn reduce(&self, mut v: SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        for (pc, (row, rc)) in &self.rows {
            if let Some(f) = v.get(pc).cloned() {
                axpy_vec(&mut v, &-f.clone(), row);
                axpy_vec(&mut combo, &-f, rc);
            }
        }
        (v, combo)
    }

    /// Coefficients `c` with `Σ c_i b_i = v`, or `None` when `v` is outside
    /// the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Q>> {
        let (r, combo) = self.reduce(v.clone(), SparseVec::new());
        if !r.is_empty() {
            return None;
        }
        let mut out = vec![Q::zero(); self.k];
        for (i, c) in combo {
            out[i] = -c;
        }
        Some(out)
    }
}

/// Greedy independent-subset builder over sparse vectors.
#[derive(Default)]
struct IncrementalEchelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl IncrementalEchelon {
    fn reduce(&self, mut v: SparseVec) -> SparseVec {
        for (pc, row) in &self.rows {
            if let Some(f) = v.get(pc).cloned() {
                axpy_vec(&mut v, &-f, row);
            }
        }
        v
    }

    fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v.clone());
        let Some((&lead, lv)) = r.iter().next() else { return false };
        let inv = lv.recip();
        self.rows.insert(lead, scale_vec(&r, &inv));
        true
    }

    fn len(&self) -> usize {
        self.rows.len()
    }
}

/// A linear subspace of `Q^ambient` with an independent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| std::iter::once((i, Q::one())).collect()).collect();
        Subspace { ambient, basis }
    }

    pub(crate) fn from_basis_unchecked(ambient: usize, basis: Vec<SparseVec>) -> Self {
        Subspace { ambient, basis }
    }

    /// Errors when the vectors are dependent.
    pub fn from_independent(ambient: usize, basis: Vec<SparseVec>) -> Result<Self> {
        let mut e = IncrementalEchelon::default();
        for b in &basis {
            if !e.insert(b) {
                return Err(Error::DependentBasis);
            }
        }
        Ok(Subspace { ambient, basis })
    }

    /// Span of arbitrary vectors; keeps the first vectors that extend the
    /// span, in order.
    pub fn span(ambient: usize, vectors: &[SparseVec]) -> Self {
        let mut e = IncrementalEchelon::default();
        let basis = vectors.iter().filter(|v| e.insert(v)).cloned().collect();
        Subspace { ambient, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.basis
    }

    /// Basis as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_columns(self.ambient, &self.basis)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut e = IncrementalEchelon::default();
        for b in &self.basis {
            e.insert(b);
        }
        e.reduce(v.clone()).is_empty()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient);
        let mut e = IncrementalEchelon::default();
        for b in &self.basis {
            e.insert(b);
        }
        other.basis.iter().all(|v| e.reduce(v.clone()).is_empty())
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let all: Vec<SparseVec> = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Subspace::span(self.ambient, &all))
    }

    /// True when the sum of the given subspaces is direct.
    pub fn is_direct_sum(parts: &[&Subspace]) -> bool {
        let mut e = IncrementalEchelon::default();
        let total: usize = parts.iter().map(|p| p.dim()).sum();
        for p in parts {
            for b in &p.basis {
                e.insert(b);
            }
        }
        e.len() == total
    }

    /// Exact intersection via the kernel of `[U | −V]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        let u = self.basis_matrix();
        let v = other.basis_matrix().scale(&-Q::one());
        let k = u.hstack(&v).kernel();
        let du = self.dim();
        let vecs = k
            .vectors()
            .iter()
            .map(|coef| {
                let mut out = SparseVec::new();
                for (&i, c) in coef.range(..du) {
                    axpy_vec(&mut out, c, &self.basis[i]);
                }
                out
            })
            .collect();
        Ok(Subspace { ambient: self.ambient, basis: vecs })
    }

    /// Complement of `image` inside `self` chosen by echelon selection over
    /// the basis of `self`. Errors unless `image ⊆ self`.
    pub fn quotient_basis(&self, image: &Subspace) -> Result<Subspace> {
        if self.ambient != image.ambient {
            return Err(Error::AmbientMismatch(self.ambient, image.ambient));
        }
        if !self.contains_subspace(image) {
            return Err(Error::NotContained);
        }
        let mut e = IncrementalEchelon::default();
        for b in &image.basis {
            e.insert(b);
        }
        let basis = self.basis.iter().filter(|v| e.insert(v)).cloned().collect();
        Ok(Subspace { ambient: self.ambient, basis })
    }

    /// Kernel of `op` restricted to this subspace, as a subspace of the
    /// ambient space.
    pub fn kernel_of(&self, op: &RationalMatrix) -> Subspace {
        let image_cols: Vec<SparseVec> = self.basis.iter().map(|b| op.mul_vec(b)).collect();
        let m = RationalMatrix::from_columns(op.rows(), &image_cols);
        let k = m.kernel();
        let vecs = k
            .vectors()
            .iter()
            .map(|coef| {
                let mut out = SparseVec::new();
                for (&i, c) in coef {
                    axpy_vec(&mut out, c, &self.basis[i]);
                }
                out
            })
            .collect();
        Subspace { ambient: self.ambient, basis: vecs }
    }
}

/// Pivots of a symmetric Gaussian elimination (`LDLᵀ` with diagonal
/// pivoting). All pivots are positive iff the matrix is positive definite.
/// When only zero diagonal entries remain, a `0` pivot is reported for each
/// remaining index if the remainder vanishes (semidefinite), or a single `0`
/// followed by nothing when an off-diagonal entry survives (indefinite).
pub fn symmetric_pivots(g: &RationalMatrix) -> Vec<Q> {
    assert!(g.is_symmetric(), "symmetric_pivots needs a symmetric matrix");
    let mut a = g.to_dense();
    let n = a.len();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let choice = remaining.iter().position(|&i| !a[i][i].is_zero());
        let Some(pos) = choice else {
            let off = remaining.iter().any(|&i| remaining.iter().any(|&j| !a[i][j].is_zero()));
            if off {
                pivots.push(Q::zero());
            } else {
                pivots.extend(remaining.iter().map(|_| Q::zero()));
            }
            break;
        };
        let p = remaining.remove(pos);
        let d = a[p][p].clone();
        for &i in &remaining {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &j in &remaining {
                let t = &f * &a[p][j];
                a[i][j] -= t;
            }
        }
        pivots.push(d);
    }
    pivots
}

pub fn is_positive_definite(g: &RationalMatrix) -> bool {
    let p = symmetric_pivots(g);
    p.len() == g.rows() && p.iter().all(|x| x.is_positive())
}

/// Bit-length statistic used in diagnostics.
pub fn max_entry_bits(m: &RationalMatrix) -> u64 {
    m.data.iter().flat_map(|r| r.values()).map(bit_length).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, q};

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, v)| (i, q(v))).collect()
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        assert_eq!(RationalMatrix::zeros(3, 3).kernel().dim(), 3);
        assert_eq!(RationalMatrix::identity(3).kernel().dim(), 0);
    }

    #[test]
    fn kernel_of_rank_one_two_by_two() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&sv(&[(0, 2), (1, -1)])));
        assert!(m.mul_vec(&k.vectors()[0]).is_empty());
    }

    #[test]
    fn intersections() {
        let s = Subspace::span(3, &[sv(&[(0, 1), (1, 1)]), sv(&[(2, 1)])]);
        let same = Subspace::span(3, &[sv(&[(0, 2), (1, 2), (2, 1)]), sv(&[(2, 3)])]);
        let both = s.intersect(&same).unwrap();
        assert!(both.same_as(&s));
        let e1 = Subspace::span(2, &[sv(&[(0, 1)])]);
        let e2 = Subspace::span(2, &[sv(&[(1, 1)])]);
        assert_eq!(e1.intersect(&e2).unwrap().dim(), 0);
        assert!(matches!(e1.intersect(&Subspace::zero(3)), Err(Error::AmbientMismatch(2, 3))));
    }

    #[test]
    fn constructed_intersection_in_dimension_four() {
        // common part span(a, b); U adds c, V adds d.
        let a = sv(&[(0, 1), (1, 2), (3, -1)]);
        let b = sv(&[(1, 1), (2, 3)]);
        let c = sv(&[(0, 5), (2, 1)]);
        let d = sv(&[(0, 1), (1, 1), (2, 1), (3, 1)]);
        let mut c2 = c.clone();
        axpy_vec(&mut c2, &q(3), &a);
        let u = Subspace::span(4, &[c2, a.clone(), b.clone()]);
        let v = Subspace::span(4, &[b.clone(), d, a.clone()]);
        let w = u.intersect(&v).unwrap();
        assert_eq!(w.dim(), 2);
        assert!(w.same_as(&Subspace::span(4, &[a, b])));
    }

    #[test]
    fn quotient_cases() {
        let k = Subspace::span(3, &[sv(&[(0, 1)]), sv(&[(1, 1)])]);
        assert!(k.quotient_basis(&Subspace::zero(3)).unwrap().same_as(&k));
        assert_eq!(k.quotient_basis(&k).unwrap().dim(), 0);
        // staircase: Ker = span(e1, e2, e3), Im = span(e1 + e2)
        let full = Subspace::full(3);
        let im = Subspace::span(3, &[sv(&[(0, 1), (1, 1)])]);
        let qb = full.quotient_basis(&im).unwrap();
        assert_eq!(qb.dim(), 2);
        assert!(Subspace::is_direct_sum(&[&qb, &im]));
        let outside = Subspace::span(3, &[sv(&[(2, 1)])]);
        assert!(matches!(k.quotient_basis(&outside), Err(Error::NotContained)));
    }

    #[test]
    fn pivots_certify_definiteness() {
        assert_eq!(symmetric_pivots(&RationalMatrix::identity(3)), vec![q(1); 3]);
        let indefinite = RationalMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        assert!(symmetric_pivots(&indefinite).iter().any(|p| p < &q(0)));
        assert!(!is_positive_definite(&indefinite));
        let hyperbolic = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(symmetric_pivots(&hyperbolic), vec![q(0)]);
        let m = RationalMatrix::from_i64(&[&[2, 1], &[1, 2]]);
        assert_eq!(symmetric_pivots(&m), vec![q(2), frac(3, 2)]);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = RationalMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RationalMatrix::identity(2));
        assert_eq!(m.determinant(), q(1));
        assert!(RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let half = RationalMatrix::from_dense(&[vec![frac(1, 2), q(0)], vec![q(0), frac(1, 3)]]);
        assert_eq!(half.determinant(), frac(1, 6));
    }

    #[test]
    fn characteristic_polynomial_and_eigenvalues() {
        let m = RationalMatrix::from_i64(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, -3]]);
        // (t-2)^2 (t+3) = t^3 - t^2 - 8t + 12
        assert_eq!(m.char_poly(), vec![q(12), q(-8), q(-1), q(1)]);
        let s = m.rational_eigenvalues().unwrap();
        assert_eq!(s.eigenvalues, vec![(q(-3), 1), (q(2), 2)]);
        assert!(s.is_fully_rational());
        let rot = RationalMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let s = rot.rational_eigenvalues().unwrap();
        assert!(s.eigenvalues.is_empty());
        assert_eq!(s.residual, vec![q(1), q(0), q(1)]);
        let h = RationalMatrix::from_dense(&[vec![frac(1, 2), q(0)], vec![q(0), frac(-1, 2)]]);
        let s = h.rational_eigenvalues().unwrap();
        assert_eq!(s.eigenvalues, vec![(frac(-1, 2), 1), (frac(1, 2), 1)]);
    }

    #[test]
    fn restriction_to_invariant_subspace() {
        let m = RationalMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 5]]);
        let s = Subspace::span(3, &[sv(&[(0, 1)]), sv(&[(1, 1)])]);
        let r = m.restrict_to(&s).unwrap();
        assert_eq!(r, RationalMatrix::from_i64(&[&[1, 1], &[0, 1]]));
        let not_inv = Subspace::span(3, &[sv(&[(1, 1)])]);
        assert!(matches!(m.restrict_to(&not_inv), Err(Error::NotInvariant)));
    }

    #[test]
    fn kron_and_stack_shapes() {
        let a = RationalMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let i = RationalMatrix::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.get(2, 0), q(3));
        assert_eq!(k.get(3, 1), q(3));
        assert_eq!(k.get(1, 2), q(0));
        assert_eq!(a.hstack(&i).cols(), 4);
        assert_eq!(a.vstack(&i).rows(), 4);
    }
}
