//! The Lie superalgebra gl(m|n): matrix-unit basis, grading, super bracket,
//! supertrace form, root data and quadratic Casimir.
//!
//! Matrix units `E_kl` use 1-based indices `1 <= k, l <= m + n`, so that
//! `E_kl` here is exactly the `E_{kl}` of the usual notation. The odd part
//! splits into `g+ = span{E_ik : i <= m < k}` and `g- = span{E_ki}`; the
//! `a`-th odd pair (0-based) is `∂_a = E_ik`, `x_a = E_ki` with
//! `a = (i - 1) n + (k - m) - 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::scalar::{frac, half, q, sign, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixUnit {
    pub row: usize,
    pub col: usize,
}

#[allow(non_snake_case)]
pub const fn E(row: usize, col: usize) -> MatrixUnit {
    MatrixUnit { row, col }
}

impl fmt::Display for MatrixUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.row < 10 && self.col < 10 {
            write!(f, "E{}{}", self.row, self.col)
        } else {
            write!(f, "E{},{}", self.row, self.col)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_bit(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.is_odd() ^ rhs.is_odd())
    }
}

/// Which summand of `g = g0 ⊕ g+ ⊕ g-` a matrix unit lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sector {
    Even,
    Plus,
    Minus,
}

/// A weight: its values on `E_11, …, E_{m+n,m+n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn zero(len: usize) -> Self {
        Weight(vec![Q::zero(); len])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| q(x)).collect())
    }

    /// `ε_k` (1-based).
    pub fn epsilon(len: usize, k: usize) -> Self {
        let mut w = Self::zero(len);
        w.0[k - 1] = Q::one();
        w
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }

    /// Value on the diagonal unit `E_kk` (1-based).
    pub fn at(&self, k: usize) -> &Q {
        &self.0[k - 1]
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// A finite linear combination of matrix units.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperElement {
    terms: BTreeMap<MatrixUnit, Q>,
}

impl SuperElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(u: MatrixUnit) -> Self {
        Self::term(u, Q::one())
    }

    pub fn term(u: MatrixUnit, c: Q) -> Self {
        let mut s = Self::zero();
        s.add_term(u, &c);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MatrixUnit, Q)>) -> Self {
        let mut s = Self::zero();
        for (u, c) in terms {
            s.add_term(u, &c);
        }
        s
    }

    pub fn add_term(&mut self, u: MatrixUnit, c: &Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(u).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&u);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MatrixUnit, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, u: MatrixUnit) -> Q {
        self.terms.get(&u).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> SuperElement {
        Self::from_terms(self.terms.iter().map(|(u, v)| (*u, v * c)))
    }

    pub fn add(&self, other: &SuperElement) -> SuperElement {
        let mut s = self.clone();
        for (u, c) in &other.terms {
            s.add_term(*u, c);
        }
        s
    }

    pub fn sub(&self, other: &SuperElement) -> SuperElement {
        self.add(&other.scale(&-Q::one()))
    }

    /// `Some(p)` when every support unit has parity `p` (zero is even).
    pub fn parity(&self, ctx: &AlgebraContext) -> Option<Parity> {
        let mut it = self.terms.keys().map(|&u| ctx.parity(u));
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }
}

impl fmt::Display for SuperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(u, c)| if c.is_one() { u.to_string() } else { format!("{c}*{u}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Positive roots and ρ-shifts for the standard Borel subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub even_positive: Vec<Weight>,
    pub odd_positive: Vec<Weight>,
    pub rho0: Weight,
    pub rho1: Weight,
    pub rho: Weight,
    /// `beta[a]` is the weight of `∂_a`.
    pub beta: Vec<Weight>,
}

/// A quadratic element `Σ c · u v` of `U(g)`, kept as ordered factor pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticCasimir {
    pub terms: Vec<(MatrixUnit, MatrixUnit, Q)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraContext {
    m: usize,
    n: usize,
    roots: RootDatum,
    pbw_order: Vec<MatrixUnit>,
    pbw_rank: Vec<u16>,
}

impl AlgebraContext {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidRank(m, n));
        }
        let size = m + n;
        let eps = |k| Weight::epsilon(size, k);
        let mut even_positive = Vec::new();
        for i in 1..=size {
            for j in i + 1..=size {
                if (i <= m) == (j <= m) {
                    even_positive.push(&eps(i) - &eps(j));
                }
            }
        }
        let mut beta = Vec::with_capacity(m * n);
        for i in 1..=m {
            for k in m + 1..=size {
                beta.push(&eps(i) - &eps(k));
            }
        }
        let half_sum = |ws: &[Weight]| {
            ws.iter().fold(Weight::zero(size), |acc, w| &acc + w).scale(&half())
        };
        let rho0 = half_sum(&even_positive);
        let rho1 = half_sum(&beta);
        let rho = &rho0 - &rho1;
        let roots = RootDatum { even_positive, odd_positive: beta.clone(), rho0, rho1, rho, beta };

        let mut ctx = AlgebraContext { m, n, roots, pbw_order: Vec::new(), pbw_rank: Vec::new() };
        // PBW order: g-, then h0, then even root vectors, then g+.
        let mut order: Vec<MatrixUnit> = (0..m * n).map(|a| ctx.x_unit(a)).collect();
        order.extend((1..=size).map(|k| E(k, k)));
        order.extend(ctx.basis().into_iter().filter(|u| u.row != u.col && ctx.sector(*u) == Sector::Even));
        order.extend((0..m * n).map(|a| ctx.d_unit(a)));
        let mut rank = vec![0u16; size * size];
        for (r, u) in order.iter().enumerate() {
            rank[ctx.index(*u)] = r as u16;
        }
        ctx.pbw_order = order;
        ctx.pbw_rank = rank;
        Ok(ctx)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `m + n`.
    pub fn size(&self) -> usize {
        self.m + self.n
    }

    /// `(m + n)^2`.
    pub fn dim(&self) -> usize {
        self.size() * self.size()
    }

    /// Number of `∂/x` pairs, `mn`.
    pub fn odd_dim(&self) -> usize {
        self.m * self.n
    }

    pub fn label(&self) -> String {
        format!("{}|{}", self.m, self.n)
    }

    pub fn roots(&self) -> &RootDatum {
        &self.roots
    }

    /// Parity of the standard basis vector `e_k` of `C^{m|n}`.
    pub fn index_parity(&self, k: usize) -> Parity {
        Parity::from_bit(k > self.m)
    }

    pub fn parity(&self, u: MatrixUnit) -> Parity {
        self.index_parity(u.row) + self.index_parity(u.col)
    }

    pub fn sector(&self, u: MatrixUnit) -> Sector {
        match (u.row <= self.m, u.col <= self.m) {
            (true, true) | (false, false) => Sector::Even,
            (true, false) => Sector::Plus,
            (false, true) => Sector::Minus,
        }
    }

    /// All matrix units, row-major.
    pub fn basis(&self) -> Vec<MatrixUnit> {
        let s = self.size();
        (1..=s).flat_map(|k| (1..=s).map(move |l| E(k, l))).collect()
    }

    pub fn even_basis(&self) -> Vec<MatrixUnit> {
        self.basis().into_iter().filter(|u| self.sector(*u) == Sector::Even).collect()
    }

    pub fn index(&self, u: MatrixUnit) -> usize {
        (u.row - 1) * self.size() + (u.col - 1)
    }

    pub fn unit(&self, index: usize) -> MatrixUnit {
        E(index / self.size() + 1, index % self.size() + 1)
    }

    /// `(i, k)` with `i <= m < k` for the 0-based odd index `a`.
    pub fn odd_pair(&self, a: usize) -> (usize, usize) {
        assert!(a < self.odd_dim(), "odd index {a} out of range");
        (a / self.n + 1, self.m + a % self.n + 1)
    }

    /// 0-based odd index of `(i, k)`, `i <= m < k`.
    pub fn odd_index(&self, i: usize, k: usize) -> usize {
        assert!(i >= 1 && i <= self.m && k > self.m && k <= self.size());
        (i - 1) * self.n + (k - self.m) - 1
    }

    /// `∂_a = E_ik`.
    pub fn d_unit(&self, a: usize) -> MatrixUnit {
        let (i, k) = self.odd_pair(a);
        E(i, k)
    }

    /// `x_a = E_ki`.
    pub fn x_unit(&self, a: usize) -> MatrixUnit {
        let (i, k) = self.odd_pair(a);
        E(k, i)
    }

    /// Sector and odd index of an odd unit.
    pub fn classify_odd(&self, u: MatrixUnit) -> Option<(Sector, usize)> {
        match self.sector(u) {
            Sector::Even => None,
            Sector::Plus => Some((Sector::Plus, self.odd_index(u.row, u.col))),
            Sector::Minus => Some((Sector::Minus, self.odd_index(u.col, u.row))),
        }
    }

    /// The weight `ε_k − ε_l` of `E_kl` under `h0`.
    pub fn unit_weight(&self, u: MatrixUnit) -> Weight {
        let s = self.size();
        &Weight::epsilon(s, u.row) - &Weight::epsilon(s, u.col)
    }

    pub fn pbw_order(&self) -> &[MatrixUnit] {
        &self.pbw_order
    }

    pub fn pbw_rank(&self, u: MatrixUnit) -> u16 {
        self.pbw_rank[self.index(u)]
    }

    /// Super bracket of two matrix units:
    /// `[E_ij, E_kl] = δ_jk E_il − (−1)^{|E_ij||E_kl|} δ_li E_kj`.
    pub fn bracket_units(&self, a: MatrixUnit, b: MatrixUnit) -> SuperElement {
        let mut out = SuperElement::zero();
        if a.col == b.row {
            out.add_term(E(a.row, b.col), &Q::one());
        }
        if b.col == a.row {
            let s = sign(self.parity(a).is_odd() && self.parity(b).is_odd());
            out.add_term(E(b.row, a.col), &-s);
        }
        out
    }

    /// Bilinear extension of [`Self::bracket_units`].
    pub fn super_bracket(&self, x: &SuperElement, y: &SuperElement) -> SuperElement {
        let mut out = SuperElement::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let c = ca * cb;
                for (u, v) in self.bracket_units(*a, *b).terms() {
                    out.add_term(*u, &(&c * v));
                }
            }
        }
        out
    }

    /// Ordinary matrix product of two elements of `gl(m+n)`.
    pub fn matrix_product(&self, x: &SuperElement, y: &SuperElement) -> SuperElement {
        let mut out = SuperElement::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                if a.col == b.row {
                    out.add_term(E(a.row, b.col), &(ca * cb));
                }
            }
        }
        out
    }

    /// `str A = Σ_{i<=m} a_ii − Σ_{j>m} a_jj`.
    pub fn supertrace(&self, x: &SuperElement) -> Q {
        x.terms()
            .filter(|(u, _)| u.row == u.col)
            .map(|(u, c)| if u.row <= self.m { c.clone() } else { -c.clone() })
            .sum()
    }

    /// `B(X, Y) = ½ str(XY)`.
    pub fn form_b(&self, x: &SuperElement, y: &SuperElement) -> Q {
        self.supertrace(&self.matrix_product(x, y)) * half()
    }

    pub fn form_b_units(&self, a: MatrixUnit, b: MatrixUnit) -> Q {
        if a.col == b.row && a.row == b.col {
            if a.row <= self.m {
                half()
            } else {
                -half()
            }
        } else {
            Q::zero()
        }
    }

    /// Pairs `(W_k, W^k)` with `W_k` the even matrix units and `W^k` the
    /// B-dual basis of `g0`, obtained by inverting the Gram matrix of `B`
    /// restricted to `g0`.
    pub fn dual_basis_g0(&self) -> Vec<(MatrixUnit, SuperElement)> {
        let basis = self.even_basis();
        let k = basis.len();
        let mut gram = RationalMatrix::zeros(k, k);
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                gram.set(i, j, self.form_b_units(*a, *b));
            }
        }
        let inv = gram.inverse().expect("B is nondegenerate on g0");
        // B(W_j, Σ_i c_ik W_i) = δ_jk  ⇔  gram · C = I.
        basis
            .iter()
            .enumerate()
            .map(|(kk, w)| {
                let dual = SuperElement::from_terms((0..k).map(|i| (basis[i], inv.get(i, kk))));
                (*w, dual)
            })
            .collect()
    }

    /// `Ω_g = Σ W_k W^k + 2 Σ_a (x_a ∂_a − ∂_a x_a)`.
    pub fn casimir_g(&self) -> QuadraticCasimir {
        let mut terms = Vec::new();
        for (w, dual) in self.dual_basis_g0() {
            for (u, c) in dual.terms() {
                terms.push((w, *u, c.clone()));
            }
        }
        for a in 0..self.odd_dim() {
            terms.push((self.x_unit(a), self.d_unit(a), q(2)));
            terms.push((self.d_unit(a), self.x_unit(a), q(-2)));
        }
        QuadraticCasimir { terms }
    }

    /// `Ω_{g0} = Σ W_k W^k` as ordered pairs.
    pub fn casimir_g0(&self) -> QuadraticCasimir {
        let mut terms = Vec::new();
        for (w, dual) in self.dual_basis_g0() {
            for (u, c) in dual.terms() {
                terms.push((w, *u, c.clone()));
            }
        }
        QuadraticCasimir { terms }
    }

    /// Matrix of `ad X` on `g1` in the ordered basis `(∂_1..∂_mn, x_1..x_mn)`.
    pub fn ad_on_odd(&self, x: &SuperElement) -> RationalMatrix {
        let r = self.odd_dim();
        let mut m = RationalMatrix::zeros(2 * r, 2 * r);
        let odd_basis: Vec<MatrixUnit> =
            (0..r).map(|a| self.d_unit(a)).chain((0..r).map(|a| self.x_unit(a))).collect();
        for (j, b) in odd_basis.iter().enumerate() {
            let image = self.super_bracket(x, &SuperElement::unit(*b));
            for (u, c) in image.terms() {
                let (sector, a) = self.classify_odd(*u).expect("[g0, g1] ⊆ g1");
                let row = if sector == Sector::Plus { a } else { r + a };
                m.add_to(row, j, c);
            }
        }
        m
    }

    /// Trace of the adjoint action of `Ω_{g0}` on `g1`.
    pub fn g0_casimir_trace_on_odd(&self) -> Q {
        let mut total = RationalMatrix::zeros(2 * self.odd_dim(), 2 * self.odd_dim());
        for (w, dual) in self.dual_basis_g0() {
            let aw = self.ad_on_odd(&SuperElement::unit(w));
            let ad = self.ad_on_odd(&dual);
            total = total.add(&aw.mul(&ad));
        }
        (0..total.rows()).map(|i| total.get(i, i)).sum()
    }

    /// Eigenvalue of `Ω_{g0} = Σ W_k W^k` on an irreducible `g0`-module of
    /// highest weight `mu`:
    /// `Σ_i 2 s_i μ_i^2 + Σ_{i<j same block} 2 s_i (μ_i − μ_j)` with
    /// `s_i = ±1` the sign of `B` on the block.
    pub fn g0_casimir_on_highest_weight(&self, mu: &Weight) -> Q {
        let s = self.size();
        let sgn = |i: usize| if i <= self.m { q(2) } else { q(-2) };
        let mut total = Q::zero();
        for i in 1..=s {
            total += sgn(i) * mu.at(i) * mu.at(i);
            for j in i + 1..=s {
                if (i <= self.m) == (j <= self.m) {
                    total += sgn(i) * (mu.at(i) - mu.at(j));
                }
            }
        }
        total
    }

    /// Weyl dimension formula for `gl(m) ⊕ gl(n)`.
    pub fn g0_dimension(&self, mu: &Weight) -> Q {
        let s = self.size();
        let mut d = Q::one();
        for i in 1..=s {
            for j in i + 1..=s {
                if (i <= self.m) == (j <= self.m) {
                    d *= (mu.at(i) - mu.at(j) + q((j - i) as i64)) / q((j - i) as i64);
                }
            }
        }
        d
    }

    /// Closed form of `ρ1(E_kk)`: `n/2` for `k <= m`, `−m/2` otherwise.
    pub fn rho1_closed_form(&self) -> Weight {
        Weight(
            (1..=self.size())
                .map(|k| if k <= self.m { frac(self.n as i64, 2) } else { frac(-(self.m as i64), 2) })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(m: usize, n: usize) -> AlgebraContext {
        AlgebraContext::new(m, n).unwrap()
    }

    /// Brute-force super commutator from explicit square matrices.
    fn matrix_oracle(c: &AlgebraContext, a: MatrixUnit, b: MatrixUnit) -> Vec<Vec<i64>> {
        let s = c.size();
        let mut ma = vec![vec![0i64; s]; s];
        let mut mb = vec![vec![0i64; s]; s];
        ma[a.row - 1][a.col - 1] = 1;
        mb[b.row - 1][b.col - 1] = 1;
        let mul = |x: &Vec<Vec<i64>>, y: &Vec<Vec<i64>>| {
            let mut z = vec![vec![0i64; s]; s];
            for i in 0..s {
                for j in 0..s {
                    for k in 0..s {
                        z[i][j] += x[i][k] * y[k][j];
                    }
                }
            }
            z
        };
        let ab = mul(&ma, &mb);
        let ba = mul(&mb, &ma);
        let sg = if c.parity(a).is_odd() && c.parity(b).is_odd() { -1 } else { 1 };
        (0..s).map(|i| (0..s).map(|j| ab[i][j] - sg * ba[i][j]).collect()).collect()
    }

    #[test]
    fn bracket_matches_matrix_oracle() {
        for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let c = ctx(m, n);
            for a in c.basis() {
                for b in c.basis() {
                    let got = c.bracket_units(a, b);
                    let want = matrix_oracle(&c, a, b);
                    for u in c.basis() {
                        assert_eq!(got.coefficient(u), q(want[u.row - 1][u.col - 1]), "[{a},{b}] at {u}");
                    }
                }
            }
        }
    }

    #[test]
    fn gl11_brackets() {
        let c = ctx(1, 1);
        assert_eq!(c.bracket_units(E(1, 2), E(2, 1)), SuperElement::from_terms([(E(1, 1), q(1)), (E(2, 2), q(1))]));
        assert!(c.bracket_units(E(1, 2), E(1, 2)).is_zero());
        assert_eq!(c.bracket_units(E(1, 1), E(2, 1)), SuperElement::term(E(2, 1), q(-1)));
    }

    #[test]
    fn supertrace_values() {
        let c = ctx(1, 1);
        assert_eq!(c.supertrace(&SuperElement::unit(E(1, 1))), q(1));
        assert_eq!(c.supertrace(&SuperElement::unit(E(2, 2))), q(-1));
        let c = ctx(2, 1);
        let x = SuperElement::unit(E(1, 1)).add(&SuperElement::unit(E(3, 3)));
        assert_eq!(c.supertrace(&x), q(0));
    }

    #[test]
    fn form_b_values() {
        let c = ctx(1, 1);
        let e = |k, l| SuperElement::unit(E(k, l));
        assert_eq!(c.form_b(&e(1, 1), &e(1, 1)), frac(1, 2));
        assert_eq!(c.form_b(&e(1, 1), &e(2, 2)), q(0));
        for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let c = ctx(m, n);
            for a in c.basis() {
                for b in c.basis() {
                    assert_eq!(c.form_b(&SuperElement::unit(a), &SuperElement::unit(b)), c.form_b_units(a, b));
                }
            }
            for i in 0..c.odd_dim() {
                for j in 0..c.odd_dim() {
                    let want = if i == j { frac(1, 2) } else { q(0) };
                    let d = SuperElement::unit(c.d_unit(i));
                    let x = SuperElement::unit(c.x_unit(j));
                    assert_eq!(c.form_b(&d, &x), want);
                }
            }
        }
    }

    #[test]
    fn odd_index_flattening() {
        let c = ctx(2, 3);
        let mut seen = vec![false; c.odd_dim()];
        for i in 1..=2 {
            for k in 3..=5 {
                let a = c.odd_index(i, k);
                // 1-based flat index (i-1) n + (k-m)
                assert_eq!(a + 1, (i - 1) * 3 + (k - 2));
                assert_eq!(c.odd_pair(a), (i, k));
                assert!(!seen[a]);
                seen[a] = true;
                assert_eq!(c.sector(c.d_unit(a)), Sector::Plus);
                assert_eq!(c.sector(c.x_unit(a)), Sector::Minus);
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }

    #[test]
    fn partition_and_parity() {
        let c = ctx(2, 2);
        let mut counts = [0; 3];
        for u in c.basis() {
            let even_rule = (u.row <= 2 && u.col <= 2) || (u.row > 2 && u.col > 2);
            assert_eq!(c.parity(u) == Parity::Even, even_rule);
            counts[match c.sector(u) {
                Sector::Even => 0,
                Sector::Plus => 1,
                Sector::Minus => 2,
            }] += 1;
        }
        assert_eq!(counts, [8, 4, 4]);
    }

    #[test]
    fn dual_basis_examples() {
        let c = ctx(1, 1);
        let duals = c.dual_basis_g0();
        assert_eq!(duals[0], (E(1, 1), SuperElement::term(E(1, 1), q(2))));
        assert_eq!(duals[1], (E(2, 2), SuperElement::term(E(2, 2), q(-2))));
        let c = ctx(2, 1);
        let d = c.dual_basis_g0().into_iter().find(|(w, _)| *w == E(1, 2)).unwrap().1;
        assert_eq!(d, SuperElement::term(E(2, 1), q(2)));
        for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let c = ctx(m, n);
            let pairs = c.dual_basis_g0();
            for (wj, _) in &pairs {
                for (wk, dk) in &pairs {
                    let want = if wj == wk { q(1) } else { q(0) };
                    assert_eq!(c.form_b(&SuperElement::unit(*wj), dk), want);
                }
            }
        }
    }

    #[test]
    fn rho_values() {
        let c = ctx(2, 1);
        assert_eq!(c.roots().rho1, Weight(vec![frac(1, 2), frac(1, 2), q(-1)]));
        for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)] {
            let c = ctx(m, n);
            assert_eq!(c.roots().rho1, c.rho1_closed_form());
            let r = c.roots();
            assert_eq!(r.rho, &r.rho0 - &r.rho1);
        }
    }

    #[test]
    fn beta_is_weight_of_d() {
        for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let c = ctx(m, n);
            for a in 0..c.odd_dim() {
                let d = SuperElement::unit(c.d_unit(a));
                for k in 1..=c.size() {
                    let h = SuperElement::unit(E(k, k));
                    let lhs = c.super_bracket(&h, &d);
                    assert_eq!(lhs, d.scale(c.roots().beta[a].at(k)));
                }
            }
        }
    }

    #[test]
    fn pbw_order_is_a_permutation() {
        let c = ctx(2, 2);
        let mut ranks: Vec<u16> = c.basis().into_iter().map(|u| c.pbw_rank(u)).collect();
        ranks.sort_unstable();
        assert_eq!(ranks, (0..16).collect::<Vec<u16>>());
        assert_eq!(c.pbw_order()[0], c.x_unit(0));
        assert_eq!(*c.pbw_order().last().unwrap(), c.d_unit(3));
    }

    #[test]
    fn rejects_degenerate_rank() {
        assert_eq!(AlgebraContext::new(0, 1), Err(Error::InvalidRank(0, 1)));
    }
}
