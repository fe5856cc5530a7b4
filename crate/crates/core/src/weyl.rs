//! The Weyl algebra `W(g1)` on generators `∂_a, x_a` (`a < mn`) with
//! `[∂_a, x_b] = δ_ab`, realised as differential operators with polynomial
//! coefficients, together with the symmetrisation map on quadratics, the
//! morphism `α: g0 → W(g1)`, the Weil module `C[x_1..x_mn]` and its
//! contravariant form.
//!
//! Elements are stored in normal order, every `x` to the left of every `∂`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{AlgebraContext, MatrixUnit, Parity, Sector, SuperElement};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::scalar::{binomial, factorial, frac, half, q, Q};

/// Dense exponent vector over the `mn` odd variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
    pub fn zero(nvars: usize) -> Self {
        Exponents(vec![0; nvars])
    }

    pub fn unit(nvars: usize, a: usize) -> Self {
        let mut e = Self::zero(nvars);
        e.0[a] = 1;
        e
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn plus(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_minus(&self, other: &Exponents) -> Option<Exponents> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Exponents)
    }

    /// `Π_k q_k!`.
    pub fn factorial_product(&self) -> BigInt {
        self.0.iter().map(|&e| factorial(e)).product()
    }
}

/// A generator of `W(g1)`: `D(a)` is `∂_a`, `X(a)` is `x_a` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OddGen {
    D(usize),
    X(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    nvars: usize,
    terms: BTreeMap<(Exponents, Exponents), Q>,
}

impl WeylElement {
    pub fn zero(nvars: usize) -> Self {
        WeylElement { nvars, terms: BTreeMap::new() }
    }

    pub fn scalar(nvars: usize, c: Q) -> Self {
        Self::monomial(Exponents::zero(nvars), Exponents::zero(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::scalar(nvars, Q::one())
    }

    /// `c · x^a ∂^b`.
    pub fn monomial(a: Exponents, b: Exponents, c: Q) -> Self {
        assert_eq!(a.0.len(), b.0.len());
        let mut w = Self::zero(a.0.len());
        w.add_term(a, b, &c);
        w
    }

    pub fn generator(nvars: usize, g: OddGen) -> Self {
        match g {
            OddGen::X(a) => Self::monomial(Exponents::unit(nvars, a), Exponents::zero(nvars), Q::one()),
            OddGen::D(a) => Self::monomial(Exponents::zero(nvars), Exponents::unit(nvars, a), Q::one()),
        }
    }

    pub fn x(nvars: usize, a: usize) -> Self {
        Self::generator(nvars, OddGen::X(a))
    }

    pub fn d(nvars: usize, a: usize) -> Self {
        Self::generator(nvars, OddGen::D(a))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, a: Exponents, b: Exponents, c: &Q) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let e = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Exponents, Exponents), &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &WeylElement) -> WeylElement {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> WeylElement {
        let mut out = Self::zero(self.nvars);
        for ((a, b), v) in &self.terms {
            out.add_term(a.clone(), b.clone(), &(v * c));
        }
        out
    }

    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        weyl_mul(self, other)
    }

    /// `[self, other]_W`.
    pub fn commutator(&self, other: &WeylElement) -> WeylElement {
        self.mul(other).sub(&other.mul(self))
    }

    /// The constant when the element is a scalar.
    pub fn as_scalar(&self) -> Option<Q> {
        let zero = Exponents::zero(self.nvars);
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&(zero.clone(), zero)).cloned(),
            _ => None,
        }
    }

    /// Highest total degree in `x` and `∂` together.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a.degree() + b.degree()).max()
    }
}

fn fmt_monomial(a: &Exponents, b: &Exponents) -> String {
    let mut parts = Vec::new();
    for (sym, e) in [("x", a), ("d", b)] {
        for (i, &k) in e.0.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(format!("{sym}{}", i + 1)),
                _ => parts.push(format!("{sym}{}^{k}", i + 1)),
            }
        }
    }
    parts.join("*")
}

fn fmt_signed_terms<'a>(terms: impl Iterator<Item = (String, &'a Q)>) -> String {
    let mut out = String::new();
    for (mono, c) in terms {
        let mag = c.abs().to_string();
        let body = if mono.is_empty() { mag } else { format!("{mag}*{mono}") };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Plain-text rendering, terms sorted by descending `(a, b)`, coefficients as
/// exact fractions: `-1*x1*d1 - 1/2`.
impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = fmt_signed_terms(self.terms.iter().rev().map(|((a, b), c)| (fmt_monomial(a, b), c)));
        f.write_str(&s)
    }
}

/// Normal-ordered product, using
/// `∂^b x^c = Σ_{k <= b, c} Π_i C(b_i, k_i) C(c_i, k_i) k_i! · x^{c−k} ∂^{b−k}`.
pub fn weyl_mul(u: &WeylElement, v: &WeylElement) -> WeylElement {
    assert_eq!(u.nvars, v.nvars, "Weyl algebras differ");
    let n = u.nvars;
    let mut out = WeylElement::zero(n);
    for ((a, b), cu) in &u.terms {
        for ((c, d), cv) in &v.terms {
            let coeff = cu * cv;
            let mut k = vec![0u32; n];
            loop {
                let mut weight = BigInt::one();
                for i in 0..n {
                    weight *= BigInt::from(binomial(b.0[i] as usize, k[i] as usize))
                        * BigInt::from(binomial(c.0[i] as usize, k[i] as usize))
                        * factorial(k[i]);
                }
                let kk = Exponents(k.clone());
                let x_part = a.plus(&c.checked_minus(&kk).unwrap());
                let d_part = b.checked_minus(&kk).unwrap().plus(d);
                out.add_term(x_part, d_part, &(&coeff * Q::from_integer(weight)));
                // odometer over 0 <= k_i <= min(b_i, c_i)
                let mut i = 0;
                while i < n {
                    if k[i] < b.0[i].min(c.0[i]) {
                        k[i] += 1;
                        break;
                    }
                    k[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }
    out
}

/// A polynomial in `x_1..x_mn`, an element of the Weil module `M(g1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, Q>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(Exponents::zero(nvars), Q::one())
    }

    pub fn monomial(q: Exponents, c: Q) -> Self {
        let mut p = Self::zero(q.0.len());
        p.add_term(q, &c);
        p
    }

    pub fn add_term(&mut self, q: Exponents, c: &Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(q.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&q);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, q: &Exponents) -> Q {
        self.terms.get(q).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (q, c) in &other.terms {
            out.add_term(q.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (q, v) in &self.terms {
            out.add_term(q.clone(), &(v * c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = Exponents::zero(self.nvars);
        let s = fmt_signed_terms(self.terms.iter().rev().map(|(a, c)| (fmt_monomial(a, &zero), c)));
        f.write_str(&s)
    }
}

/// Action of `W(g1)` on `C[x]`: `x_a` multiplies, `∂_a` differentiates.
pub fn weil_action(w: &WeylElement, f: &Polynomial) -> Polynomial {
    assert_eq!(w.nvars, f.nvars);
    let mut out = Polynomial::zero(f.nvars);
    for ((a, b), cw) in &w.terms {
        for (qv, cf) in &f.terms {
            let Some(rest) = qv.checked_minus(b) else { continue };
            let falling: BigInt = qv.factorial_product() / rest.factorial_product();
            out.add_term(rest.plus(a), &(cw * cf * Q::from_integer(falling)));
        }
    }
    out
}

/// `⟨x^p, x^q⟩_M = Π p_k!` when `p = q`, else `0`, extended bilinearly.
pub fn form_m(f: &Polynomial, g: &Polynomial) -> Q {
    f.terms
        .iter()
        .filter_map(|(p, a)| g.terms.get(p).map(|b| a * b * Q::from_integer(p.factorial_product())))
        .sum()
}

/// The homogeneous degree-`i` part of the Weil module.
#[derive(Clone, Debug)]
pub struct WeilSlice {
    degree: usize,
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
}

impl WeilSlice {
    pub fn new(nvars: usize, degree: usize) -> Self {
        let mut monomials = Vec::with_capacity(binomial(nvars + degree - 1, degree).max(1));
        let mut cur = vec![0u32; nvars];
        fn fill(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponents>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(Exponents(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                fill(pos + 1, left - e, cur, out);
            }
        }
        if nvars > 0 {
            fill(0, degree as u32, &mut cur, &mut monomials);
        } else if degree == 0 {
            monomials.push(Exponents(Vec::new()));
        }
        let index = monomials.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        WeilSlice { degree, monomials, index }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.degree % 2 == 1)
    }

    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    pub fn position(&self, e: &Exponents) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Diagonal Gram matrix of `⟨·,·⟩_M` on this slice.
    pub fn gram(&self) -> RationalMatrix {
        let mut g = RationalMatrix::zeros(self.len(), self.len());
        for (i, e) in self.monomials.iter().enumerate() {
            g.set(i, i, Q::from_integer(e.factorial_product()));
        }
        g
    }

    /// Matrix of a Weyl element mapping this slice into `target`. Panics if
    /// an image leaves `target`.
    pub fn matrix_of(&self, w: &WeylElement, target: &WeilSlice) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(target.len(), self.len());
        for (j, e) in self.monomials.iter().enumerate() {
            let img = weil_action(w, &Polynomial::monomial(e.clone(), Q::one()));
            for (qv, c) in img.terms() {
                let i = target.position(qv).expect("image outside the target slice");
                m.set(i, j, c.clone());
            }
        }
        m
    }
}

/// A formal element of `S^2(g1)`: `Σ c · (g g')` with `g g' = g' g`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymQuadratic {
    pub terms: Vec<(OddGen, OddGen, Q)>,
}

impl SymQuadratic {
    pub fn single(g: OddGen, h: OddGen) -> Self {
        SymQuadratic { terms: vec![(g, h, Q::one())] }
    }
}

/// Symmetrisation `σ(g h) = ½ (g h + h g)` on quadratics.
pub fn sigma_quadratic(p: &SymQuadratic, nvars: usize) -> WeylElement {
    let mut out = WeylElement::zero(nvars);
    for (g, h, c) in &p.terms {
        let gw = WeylElement::generator(nvars, *g);
        let hw = WeylElement::generator(nvars, *h);
        let sym = gw.mul(&hw).add(&hw.mul(&gw)).scale(&(c * half()));
        out = out.add(&sym);
    }
    out
}

/// Matrix of `ad_W(w)` on `g1 = span(∂_1..∂_mn, x_1..x_mn)`, in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpMatrix(pub RationalMatrix);

impl SpMatrix {
    /// Gram matrix of `B` on `g1` in the basis `(∂, x)`:
    /// `B(∂_i, x_j) = ½ δ_ij = −B(x_j, ∂_i)`.
    pub fn symplectic_gram(nvars: usize) -> RationalMatrix {
        let mut j = RationalMatrix::zeros(2 * nvars, 2 * nvars);
        for i in 0..nvars {
            j.set(i, nvars + i, half());
            j.set(nvars + i, i, -half());
        }
        j
    }

    /// `Xᵀ J + J X = 0`.
    pub fn preserves_form(&self) -> bool {
        let n = self.0.rows() / 2;
        let j = Self::symplectic_gram(n);
        self.0.transpose().mul(&j).add(&j.mul(&self.0)).is_zero()
    }
}

fn odd_basis(nvars: usize) -> Vec<OddGen> {
    (0..nvars).map(OddGen::D).chain((0..nvars).map(OddGen::X)).collect()
}

pub fn sp_matrix_of(w: &WeylElement) -> Result<SpMatrix> {
    if w.terms().any(|((a, b), _)| {
        let d = a.degree() + b.degree();
        d != 0 && d != 2
    }) {
        return Err(Error::NotQuadratic(w.to_string()));
    }
    let n = w.nvars;
    let basis = odd_basis(n);
    let mut m = RationalMatrix::zeros(2 * n, 2 * n);
    for (j, g) in basis.iter().enumerate() {
        let image = w.commutator(&WeylElement::generator(n, *g));
        for ((a, b), c) in image.terms() {
            let row = match (a.degree(), b.degree()) {
                (0, 1) => b.0.iter().position(|&e| e == 1).unwrap(),
                (1, 0) => n + a.0.iter().position(|&e| e == 1).unwrap(),
                _ => return Err(Error::NotQuadratic(w.to_string())),
            };
            m.set(row, j, c.clone());
        }
    }
    Ok(SpMatrix(m))
}

fn require_even(ctx: &AlgebraContext, x: &SuperElement) -> Result<()> {
    if x.terms().all(|(u, _)| ctx.sector(*u) == Sector::Even) {
        Ok(())
    } else {
        Err(Error::NotEven(x.to_string()))
    }
}

fn odd_element(ctx: &AlgebraContext, g: OddGen) -> SuperElement {
    match g {
        OddGen::D(a) => SuperElement::unit(ctx.d_unit(a)),
        OddGen::X(a) => SuperElement::unit(ctx.x_unit(a)),
    }
}

/// `B(X, [g, h])` for odd generators.
fn b_bracket(ctx: &AlgebraContext, x: &SuperElement, g: OddGen, h: OddGen) -> Q {
    let br = ctx.super_bracket(&odd_element(ctx, g), &odd_element(ctx, h));
    ctx.form_b(x, &br)
}

/// The morphism `α: g0 → W(g1)`:
///
/// `α(X) = Σ_{i,j} (B(X,[∂_i,∂_j]) x_i x_j + B(X,[x_i,x_j]) ∂_i ∂_j)
///        − Σ_{i,j} 2 B(X,[x_i,∂_j]) x_j ∂_i − Σ_i B(X,[∂_i,x_i])`.
pub fn alpha(ctx: &AlgebraContext, x: &SuperElement) -> Result<WeylElement> {
    require_even(ctx, x)?;
    let n = ctx.odd_dim();
    let mut out = WeylElement::zero(n);
    for i in 0..n {
        for j in 0..n {
            let dd = b_bracket(ctx, x, OddGen::D(i), OddGen::D(j));
            if !dd.is_zero() {
                out = out.add(&WeylElement::x(n, i).mul(&WeylElement::x(n, j)).scale(&dd));
            }
            let xx = b_bracket(ctx, x, OddGen::X(i), OddGen::X(j));
            if !xx.is_zero() {
                out = out.add(&WeylElement::d(n, i).mul(&WeylElement::d(n, j)).scale(&xx));
            }
        }
    }
    Ok(out.add(&alpha_1(ctx, x)?).add(&WeylElement::scalar(n, alpha_2(ctx, x)?)))
}

/// Quadratic part `α_1(X) = −Σ_{i,j} 2 B(X,[x_i,∂_j]) x_j ∂_i`.
pub fn alpha_1(ctx: &AlgebraContext, x: &SuperElement) -> Result<WeylElement> {
    require_even(ctx, x)?;
    let n = ctx.odd_dim();
    let mut out = WeylElement::zero(n);
    for i in 0..n {
        for j in 0..n {
            let c = b_bracket(ctx, x, OddGen::X(i), OddGen::D(j)) * q(-2);
            out.add_term(Exponents::unit(n, j), Exponents::unit(n, i), &c);
        }
    }
    Ok(out)
}

/// Constant part `α_2(X) = −Σ_i B(X,[∂_i,x_i])`.
pub fn alpha_2(ctx: &AlgebraContext, x: &SuperElement) -> Result<Q> {
    require_even(ctx, x)?;
    Ok(-(0..ctx.odd_dim()).map(|i| b_bracket(ctx, x, OddGen::D(i), OddGen::X(i))).sum::<Q>())
}

/// `C = Σ_k α(W_k) α(W^k)`. Errors if the sum has nonconstant terms.
pub fn casimir_constant(ctx: &AlgebraContext) -> Result<Q> {
    let n = ctx.odd_dim();
    let mut total = WeylElement::zero(n);
    for (w, dual) in ctx.dual_basis_g0() {
        let aw = alpha(ctx, &SuperElement::unit(w))?;
        let ad = alpha(ctx, &dual)?;
        total = total.add(&aw.mul(&ad));
    }
    total.as_scalar().ok_or_else(|| Error::NotScalar(total.to_string()))
}

/// Second route to `C`: one eighth of the supertrace of `ad Ω_{g0}` on the
/// purely odd space `g1`, i.e. `−⅛ tr(Ω_{g0}|g1)`.
pub fn casimir_constant_trace_route(ctx: &AlgebraContext) -> Q {
    -ctx.g0_casimir_trace_on_odd() * frac(1, 8)
}

/// `[X, x_a]` for `X ∈ g0`, as a linear polynomial in the `x` variables.
pub fn adjoint_on_generator(ctx: &AlgebraContext, x: &SuperElement, a: usize) -> Result<Polynomial> {
    require_even(ctx, x)?;
    let n = ctx.odd_dim();
    let image = ctx.super_bracket(x, &SuperElement::unit(ctx.x_unit(a)));
    let mut p = Polynomial::zero(n);
    for (u, c) in image.terms() {
        match ctx.classify_odd(*u) {
            Some((Sector::Minus, b)) => p.add_term(Exponents::unit(n, b), c),
            _ => unreachable!("[g0, g-] ⊆ g-"),
        }
    }
    Ok(p)
}

/// Adjoint action of `X ∈ g0` on `C[x] ≅ S(g-)`, extended from the
/// generators as a derivation.
pub fn adjoint_action(ctx: &AlgebraContext, x: &SuperElement, f: &Polynomial) -> Result<Polynomial> {
    let n = ctx.odd_dim();
    let images: Vec<Polynomial> = (0..n).map(|a| adjoint_on_generator(ctx, x, a)).collect::<Result<_>>()?;
    let mut out = Polynomial::zero(n);
    for (qv, c) in f.terms() {
        for (a, img) in images.iter().enumerate() {
            if qv.0[a] == 0 || img.is_zero() {
                continue;
            }
            let rest = qv.checked_minus(&Exponents::unit(n, a)).unwrap();
            let factor = c * q(qv.0[a] as i64);
            for (e, v) in img.terms() {
                out.add_term(rest.plus(e), &(&factor * v));
            }
        }
    }
    Ok(out)
}

/// Matrix of the adjoint action of a `g0` unit on a Weil slice.
pub fn adjoint_slice_matrix(ctx: &AlgebraContext, u: MatrixUnit, slice: &WeilSlice) -> Result<RationalMatrix> {
    let x = SuperElement::unit(u);
    let mut m = RationalMatrix::zeros(slice.len(), slice.len());
    for (j, e) in slice.monomials().iter().enumerate() {
        let img = adjoint_action(ctx, &x, &Polynomial::monomial(e.clone(), Q::one()))?;
        for (qv, c) in img.terms() {
            m.set(slice.position(qv).expect("degree preserved"), j, c.clone());
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::E;

    fn ctx(m: usize, n: usize) -> AlgebraContext {
        AlgebraContext::new(m, n).unwrap()
    }

    fn x1_pow(k: u32) -> Polynomial {
        Polynomial::monomial(Exponents(vec![k]), Q::one())
    }

    #[test]
    fn canonical_commutation() {
        let d = WeylElement::d(1, 0);
        let x = WeylElement::x(1, 0);
        let dx = d.mul(&x);
        assert_eq!(dx.to_string(), "1*x1*d1 + 1");
        assert_eq!(dx.sub(&x.mul(&d)), WeylElement::one(1));
        let x2 = WeylElement::x(2, 1);
        let x1 = WeylElement::x(2, 0);
        assert_eq!(x1.mul(&x2), x2.mul(&x1));
    }

    #[test]
    fn euler_operator_square() {
        let e = WeylElement::x(1, 0).mul(&WeylElement::d(1, 0));
        let sq = e.mul(&e);
        let want = WeylElement::monomial(Exponents(vec![2]), Exponents(vec![2]), q(1)).add(&e);
        assert_eq!(sq, want);
        // independent check on monomials: (x∂)^2 x^k = k^2 x^k
        for k in 0..6u32 {
            let img = weil_action(&sq, &x1_pow(k));
            assert_eq!(img, x1_pow(k).scale(&q((k * k) as i64)));
        }
    }

    #[test]
    fn sigma_table() {
        let n = 2;
        let s = |g, h| sigma_quadratic(&SymQuadratic::single(g, h), n);
        assert_eq!(s(OddGen::D(0), OddGen::X(1)), WeylElement::x(n, 1).mul(&WeylElement::d(n, 0)));
        let want = WeylElement::x(n, 0).mul(&WeylElement::d(n, 0)).add(&WeylElement::scalar(n, half()));
        assert_eq!(s(OddGen::D(0), OddGen::X(0)), want);
        assert_eq!(s(OddGen::X(0), OddGen::X(1)), WeylElement::x(n, 0).mul(&WeylElement::x(n, 1)));
        // σ(∂_i x_j) = ∂_i x_j − ½ δ_ij
        for i in 0..n {
            for j in 0..n {
                let lhs = s(OddGen::D(i), OddGen::X(j));
                let mut rhs = WeylElement::d(n, i).mul(&WeylElement::x(n, j));
                if i == j {
                    rhs = rhs.sub(&WeylElement::scalar(n, half()));
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn rendering() {
        let c = ctx(1, 1);
        let a = alpha(&c, &SuperElement::unit(E(1, 1))).unwrap();
        assert_eq!(a.to_string(), "-1*x1*d1 - 1/2");
        assert_eq!(WeylElement::zero(2).to_string(), "0");
        let w = WeylElement::monomial(Exponents(vec![2, 0]), Exponents(vec![0, 1]), frac(3, 2));
        assert_eq!(w.to_string(), "3/2*x1^2*d2");
    }

    #[test]
    fn alpha_gl11() {
        let c = ctx(1, 1);
        let a11 = alpha(&c, &SuperElement::unit(E(1, 1))).unwrap();
        let a22 = alpha(&c, &SuperElement::unit(E(2, 2))).unwrap();
        let n = WeylElement::x(1, 0).mul(&WeylElement::d(1, 0));
        assert_eq!(a11, n.add(&WeylElement::scalar(1, half())).scale(&q(-1)));
        assert_eq!(a22, n.add(&WeylElement::scalar(1, half())));
        assert!(matches!(alpha(&c, &SuperElement::unit(E(1, 2))), Err(Error::NotEven(_))));
        assert_eq!(weil_action(&a11, &Polynomial::one(1)), Polynomial::one(1).scale(&frac(-1, 2)));
    }

    #[test]
    fn sp_matrix_families() {
        let n = 2;
        let r = n;
        for i in 0..n {
            for j in 0..n {
                let m = sp_matrix_of(&sigma_quadratic(&SymQuadratic::single(OddGen::X(i), OddGen::X(j)), n)).unwrap();
                let mut want = RationalMatrix::zeros(2 * r, 2 * r);
                want.add_to(r + i, j, &q(-1));
                want.add_to(r + j, i, &q(-1));
                assert_eq!(m.0, want);
                assert!(m.preserves_form());

                let m = sp_matrix_of(&sigma_quadratic(&SymQuadratic::single(OddGen::D(i), OddGen::D(j)), n)).unwrap();
                let mut want = RationalMatrix::zeros(2 * r, 2 * r);
                want.add_to(i, r + j, &q(1));
                want.add_to(j, r + i, &q(1));
                assert_eq!(m.0, want);
                assert!(m.preserves_form());

                let m = sp_matrix_of(&sigma_quadratic(&SymQuadratic::single(OddGen::D(i), OddGen::X(j)), n)).unwrap();
                let mut want = RationalMatrix::zeros(2 * r, 2 * r);
                want.add_to(i, j, &q(-1));
                want.add_to(r + j, r + i, &q(1));
                assert_eq!(m.0, want);
                assert!(m.preserves_form());
            }
        }
        let cubic = WeylElement::x(1, 0).mul(&WeylElement::x(1, 0)).mul(&WeylElement::d(1, 0));
        assert!(matches!(sp_matrix_of(&cubic), Err(Error::NotQuadratic(_))));
    }

    #[test]
    fn alpha_implements_adjoint_action_on_odd_part() {
        for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let c = ctx(m, n);
            for u in c.even_basis() {
                let x = SuperElement::unit(u);
                let sp = sp_matrix_of(&alpha(&c, &x).unwrap()).unwrap();
                assert_eq!(sp.0, c.ad_on_odd(&x), "{u}");
            }
        }
    }

    #[test]
    fn casimir_constant_values() {
        assert_eq!(casimir_constant(&ctx(1, 1)).unwrap(), q(0));
        for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
            let c = ctx(m, n);
            let value = casimir_constant(&c).unwrap();
            assert_eq!(value, casimir_constant_trace_route(&c), "gl({m}|{n})");
            // evaluation on the vacuum: Σ α_2(W_k) α_2(W^k) = mn(n−m)/2
            assert_eq!(value, frac((m * n) as i64 * (n as i64 - m as i64), 2));
        }
    }

    #[test]
    fn weil_action_basics() {
        let d = WeylElement::d(1, 0);
        assert_eq!(weil_action(&d, &x1_pow(2)), x1_pow(1).scale(&q(2)));
        let e = WeylElement::x(1, 0).mul(&d);
        for k in 0..5 {
            assert_eq!(weil_action(&e, &x1_pow(k)), x1_pow(k).scale(&q(k as i64)));
        }
    }

    #[test]
    fn form_m_values() {
        let p = |v: Vec<u32>| Polynomial::monomial(Exponents(v), Q::one());
        assert_eq!(form_m(&Polynomial::one(2), &Polynomial::one(2)), q(1));
        assert_eq!(form_m(&p(vec![2, 0]), &p(vec![2, 0])), q(2));
        assert_eq!(form_m(&p(vec![1, 1]), &p(vec![1, 1])), q(1));
        assert_eq!(form_m(&p(vec![2, 0]), &p(vec![1, 1])), q(0));
    }

    #[test]
    fn slice_sizes() {
        for nvars in 1..5 {
            for deg in 0..7 {
                let s = WeilSlice::new(nvars, deg);
                assert_eq!(s.len(), binomial(nvars + deg - 1, deg));
                assert!(s.monomials().iter().all(|e| e.degree() as usize == deg));
            }
        }
    }

    #[test]
    fn adjoint_action_on_gl21_odd_minus() {
        let c = ctx(2, 1);
        // [E12, x_1] = [E12, E31] = −E32 = −x_2
        let p = adjoint_on_generator(&c, &SuperElement::unit(E(1, 2)), 0).unwrap();
        assert_eq!(p, Polynomial::monomial(Exponents(vec![0, 1]), q(-1)));
    }
}
