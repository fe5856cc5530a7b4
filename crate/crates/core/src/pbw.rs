//! Normal forms in `U(g) ⊗ W(g1)`.
//!
//! The `U(g)` factor is written in the super-PBW basis: words of matrix units
//! sorted by [`AlgebraContext::pbw_rank`], odd units appearing at most once.
//! The Weyl factor is treated as even, so `(u ⊗ w)(u' ⊗ w') = uu' ⊗ ww'`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraContext, MatrixUnit, SuperElement};
use crate::error::Result;
use crate::scalar::{half, q, sign, Q};
use crate::weyl::{alpha, casimir_constant, weyl_mul, Exponents, WeylElement};

/// `(PBW word as ranks, x-exponents, ∂-exponents)`.
pub type TensorKey = (Vec<u16>, Exponents, Exponents);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    nvars: usize,
    terms: BTreeMap<TensorKey, Q>,
}

impl TensorElement {
    pub fn zero(nvars: usize) -> Self {
        TensorElement { nvars, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, key: TensorKey, c: &Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorKey, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> TensorElement {
        let mut out = Self::zero(self.nvars);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    /// Renders with the help of the context that fixed the PBW order.
    pub fn render(&self, ctx: &AlgebraContext) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let order = ctx.pbw_order();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((word, a, b), c)| {
                let u = if word.is_empty() {
                    "1".to_string()
                } else {
                    word.iter().map(|&r| order[r as usize].to_string()).collect::<Vec<_>>().join("*")
                };
                let w = WeylElement::monomial(a.clone(), b.clone(), Q::one()).to_string();
                format!("({c})*{u}⊗{w}")
            })
            .collect();
        parts.join(" + ")
    }
}

/// Word in PBW ranks mapped to its ordered expansion.
type NormalForms = HashMap<Vec<u16>, Vec<(Vec<u16>, Q)>>;

/// Straightening engine bound to one algebra; memoizes word normal forms.
pub struct PbwEngine<'a> {
    ctx: &'a AlgebraContext,
    memo: RefCell<NormalForms>,
}

impl<'a> PbwEngine<'a> {
    pub fn new(ctx: &'a AlgebraContext) -> Self {
        PbwEngine { ctx, memo: RefCell::new(HashMap::new()) }
    }

    pub fn ctx(&self) -> &AlgebraContext {
        self.ctx
    }

    fn nvars(&self) -> usize {
        self.ctx.odd_dim()
    }

    fn unit_of(&self, rank: u16) -> MatrixUnit {
        self.ctx.pbw_order()[rank as usize]
    }

    fn is_odd(&self, rank: u16) -> bool {
        self.ctx.parity(self.unit_of(rank)).is_odd()
    }

    /// PBW normal form of an arbitrary word, using
    /// `ab = (−1)^{|a||b|} ba + [a,b]` and `aa = ½[a,a]` for odd `a`.
    pub fn straighten(&self, word: &[u16]) -> Vec<(Vec<u16>, Q)> {
        if let Some(hit) = self.memo.borrow().get(word) {
            return hit.clone();
        }
        let bad = (0..word.len().saturating_sub(1))
            .find(|&i| word[i] > word[i + 1] || (word[i] == word[i + 1] && self.is_odd(word[i])));
        let result = match bad {
            None => vec![(word.to_vec(), Q::one())],
            Some(i) => {
                let (a, b) = (word[i], word[i + 1]);
                let mut acc: BTreeMap<Vec<u16>, Q> = BTreeMap::new();
                let mut push = |w: Vec<u16>, c: Q| {
                    let e = acc.entry(w).or_insert_with(Q::zero);
                    *e += c;
                };
                let bracket = self.ctx.bracket_units(self.unit_of(a), self.unit_of(b));
                let bracket_factor = if a == b {
                    half()
                } else {
                    let s = sign(self.is_odd(a) && self.is_odd(b));
                    let mut swapped = word.to_vec();
                    swapped.swap(i, i + 1);
                    for (w, c) in self.straighten(&swapped) {
                        push(w, &s * c);
                    }
                    Q::one()
                };
                for (u, c) in bracket.terms() {
                    let mut w = word[..i].to_vec();
                    w.push(self.ctx.pbw_rank(*u));
                    w.extend_from_slice(&word[i + 2..]);
                    let factor = &bracket_factor * c;
                    for (w2, c2) in self.straighten(&w) {
                        push(w2, &factor * c2);
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
        };
        self.memo.borrow_mut().insert(word.to_vec(), result.clone());
        result
    }

    /// `u_1 ⋯ u_k ⊗ 1` in normal form.
    pub fn word(&self, units: &[MatrixUnit]) -> TensorElement {
        let ranks: Vec<u16> = units.iter().map(|u| self.ctx.pbw_rank(*u)).collect();
        let zero = Exponents::zero(self.nvars());
        let mut out = TensorElement::zero(self.nvars());
        for (w, c) in self.straighten(&ranks) {
            out.add_term((w, zero.clone(), zero.clone()), &c);
        }
        out
    }

    /// `X ⊗ w` for `X` linear in `g`.
    pub fn simple_tensor(&self, x: &SuperElement, w: &WeylElement) -> TensorElement {
        let mut out = TensorElement::zero(self.nvars());
        for (u, cu) in x.terms() {
            let r = self.ctx.pbw_rank(*u);
            for ((a, b), cw) in w.terms() {
                out.add_term((vec![r], a.clone(), b.clone()), &(cu * cw));
            }
        }
        out
    }

    /// `1 ⊗ w`.
    pub fn weyl(&self, w: &WeylElement) -> TensorElement {
        let mut out = TensorElement::zero(self.nvars());
        for ((a, b), c) in w.terms() {
            out.add_term((Vec::new(), a.clone(), b.clone()), c);
        }
        out
    }

    pub fn one(&self) -> TensorElement {
        self.weyl(&WeylElement::one(self.nvars()))
    }

    pub fn mul(&self, u: &TensorElement, v: &TensorElement) -> TensorElement {
        let n = self.nvars();
        let mut out = TensorElement::zero(n);
        for ((w1, a1, b1), c1) in &u.terms {
            let left = WeylElement::monomial(a1.clone(), b1.clone(), Q::one());
            for ((w2, a2, b2), c2) in &v.terms {
                let right = WeylElement::monomial(a2.clone(), b2.clone(), Q::one());
                let weyl = weyl_mul(&left, &right);
                let mut word = w1.clone();
                word.extend_from_slice(w2);
                let c = c1 * c2;
                for (w, cw) in self.straighten(&word) {
                    let cc = &c * cw;
                    for ((a, b), cwe) in weyl.terms() {
                        out.add_term((w.clone(), a.clone(), b.clone()), &(&cc * cwe));
                    }
                }
            }
        }
        out
    }

    /// Plain commutator `uv − vu`.
    pub fn commutator(&self, u: &TensorElement, v: &TensorElement) -> TensorElement {
        self.mul(u, v).sub(&self.mul(v, u))
    }

    /// `X_Δ = X ⊗ 1 + 1 ⊗ α(X)`.
    pub fn diagonal_embed(&self, x: &SuperElement) -> Result<TensorElement> {
        let a = alpha(self.ctx, x)?;
        Ok(self.simple_tensor(x, &WeylElement::one(self.nvars())).add(&self.weyl(&a)))
    }

    /// `D = 2 Σ_a (∂_a ⊗ x_a − x_a ⊗ ∂_a)`.
    pub fn dirac_element(&self) -> TensorElement {
        let n = self.nvars();
        let mut out = TensorElement::zero(n);
        for a in 0..n {
            let d = SuperElement::unit(self.ctx.d_unit(a));
            let x = SuperElement::unit(self.ctx.x_unit(a));
            out = out
                .add(&self.simple_tensor(&d, &WeylElement::x(n, a)))
                .sub(&self.simple_tensor(&x, &WeylElement::d(n, a)));
        }
        out.scale(&q(2))
    }

    /// `Ω_g ⊗ 1`.
    pub fn casimir_g(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.nvars());
        for (u, v, c) in self.ctx.casimir_g().terms {
            out = out.add(&self.word(&[u, v]).scale(&c));
        }
        out
    }

    /// `Ω_{g0Δ} = Σ_k (W_k W^k ⊗ 1 + W_k ⊗ α(W^k) + W^k ⊗ α(W_k) + 1 ⊗ α(W_k) α(W^k))`.
    pub fn omega_g0_delta(&self) -> Result<TensorElement> {
        let n = self.nvars();
        let one = WeylElement::one(n);
        let mut out = TensorElement::zero(n);
        for (w, dual) in self.ctx.dual_basis_g0() {
            let wk = SuperElement::unit(w);
            let aw = alpha(self.ctx, &wk)?;
            let ad = alpha(self.ctx, &dual)?;
            let uu = self.mul(&self.simple_tensor(&wk, &one), &self.simple_tensor(&dual, &one));
            out = out
                .add(&uu)
                .add(&self.simple_tensor(&wk, &ad))
                .add(&self.simple_tensor(&dual, &aw))
                .add(&self.weyl(&aw.mul(&ad)));
        }
        Ok(out)
    }

    /// Normal-form comparison of `D²` with `−Ω_g ⊗ 1 + Ω_{g0Δ} − C`.
    pub fn verify_d_squared(&self) -> Result<D2Report> {
        let d = self.dirac_element();
        let lhs = self.mul(&d, &d);
        let c = casimir_constant(self.ctx)?;
        let rhs = self.omega_g0_delta()?.sub(&self.casimir_g()).sub(&self.one().scale(&c));
        let difference = lhs.sub(&rhs);
        Ok(D2Report {
            identity: "D^2 = -Omega_g(x)1 + Omega_g0Delta - C".into(),
            lhs_terms: lhs.len(),
            rhs_terms: rhs.len(),
            equal: difference.is_zero(),
            difference: difference.render(self.ctx),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D2Report {
    pub identity: String,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    pub difference: String,
    pub equal: bool,
}

impl fmt::Display for D2Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: lhs {} terms, rhs {} terms, equal = {}", self.identity, self.lhs_terms, self.rhs_terms, self.equal)
    }
}
