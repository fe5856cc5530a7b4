//! Finite-dimensional `Z2`-graded modules given by explicit generator
//! matrices, their contravariant forms, Casimir spectra and `g0`-types.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use num_traits::{One, Signed, Zero};

use crate::algebra::{AlgebraContext, MatrixUnit, Parity, Sector, SuperElement, Weight, E};
use crate::error::{Error, Result};
use crate::linalg::{axpy_vec, is_positive_definite, symmetric_pivots, Coordinatizer, RationalMatrix, SparseVec, Subspace};
use crate::scalar::{sign, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleData {
    ctx: AlgebraContext,
    label: String,
    parity: Vec<Parity>,
    weights: Vec<Weight>,
    action: Vec<RationalMatrix>,
    gram: RationalMatrix,
    g0_only: bool,
}

impl ModuleData {
    /// Assembles a module from raw data. `action` is indexed by
    /// [`AlgebraContext::index`]. Only shapes are checked here; use
    /// [`ModuleData::check_representation`] and friends for the rest.
    pub fn from_parts(
        ctx: &AlgebraContext,
        label: impl Into<String>,
        parity: Vec<Parity>,
        weights: Vec<Weight>,
        action: Vec<RationalMatrix>,
        gram: RationalMatrix,
    ) -> Result<Self> {
        let dim = parity.len();
        let shapes_ok = weights.len() == dim
            && action.len() == ctx.dim()
            && action.iter().all(|a| a.rows() == dim && a.cols() == dim)
            && gram.rows() == dim
            && gram.cols() == dim;
        if !shapes_ok {
            return Err(Error::DimensionMismatch("module data shapes".into()));
        }
        Ok(ModuleData { ctx: ctx.clone(), label: label.into(), parity, weights, action, gram, g0_only: false })
    }

    pub fn trivial(ctx: &AlgebraContext) -> Self {
        ModuleData {
            ctx: ctx.clone(),
            label: "triv".into(),
            parity: vec![Parity::Even],
            weights: vec![Weight::zero(ctx.size())],
            action: vec![RationalMatrix::zeros(1, 1); ctx.dim()],
            gram: RationalMatrix::identity(1),
            g0_only: false,
        }
    }

    /// `C^{m|n}` with `E_kl` acting as the matrix unit.
    pub fn natural(ctx: &AlgebraContext) -> Self {
        let s = ctx.size();
        let action = ctx
            .basis()
            .into_iter()
            .map(|u| {
                let mut a = RationalMatrix::zeros(s, s);
                a.set(u.row - 1, u.col - 1, Q::one());
                a
            })
            .collect();
        ModuleData {
            ctx: ctx.clone(),
            label: "nat".into(),
            parity: (1..=s).map(|k| ctx.index_parity(k)).collect(),
            weights: (1..=s).map(|k| Weight::epsilon(s, k)).collect(),
            action,
            gram: RationalMatrix::identity(s),
            g0_only: false,
        }
    }

    /// `X(v ⊗ w) = Xv ⊗ w + (−1)^{|X||v|} v ⊗ Xw`, with the product form.
    pub fn tensor(a: &ModuleData, b: &ModuleData) -> Result<Self> {
        if a.ctx != b.ctx {
            return Err(Error::ContextMismatch(a.ctx.label(), b.ctx.label()));
        }
        let ctx = &a.ctx;
        let ib = RationalMatrix::identity(b.dim());
        let signs = |odd: bool| {
            let mut s = RationalMatrix::zeros(a.dim(), a.dim());
            for (i, p) in a.parity.iter().enumerate() {
                s.set(i, i, sign(odd && p.is_odd()));
            }
            s
        };
        let (s_even, s_odd) = (signs(false), signs(true));
        let action = ctx
            .basis()
            .into_iter()
            .map(|u| {
                let i = ctx.index(u);
                let s = if ctx.parity(u).is_odd() { &s_odd } else { &s_even };
                a.action[i].kron(&ib).add(&s.kron(&b.action[i]))
            })
            .collect();
        let mut parity = Vec::with_capacity(a.dim() * b.dim());
        let mut weights = Vec::with_capacity(a.dim() * b.dim());
        for (pa, wa) in a.parity.iter().zip(&a.weights) {
            for (pb, wb) in b.parity.iter().zip(&b.weights) {
                parity.push(*pa + *pb);
                weights.push(wa + wb);
            }
        }
        Ok(ModuleData {
            ctx: ctx.clone(),
            label: format!("tensor({},{})", a.label, b.label),
            parity,
            weights,
            action,
            gram: a.gram.kron(&b.gram),
            g0_only: a.g0_only || b.g0_only,
        })
    }

    /// `X·f = −(−1)^{|X||f|} f∘X` on the dual basis, with the inverse form.
    pub fn dual(a: &ModuleData) -> Self {
        let ctx = &a.ctx;
        let dim = a.dim();
        let action = ctx
            .basis()
            .into_iter()
            .map(|u| {
                let x = &a.action[ctx.index(u)];
                let odd = ctx.parity(u).is_odd();
                let mut out = RationalMatrix::zeros(dim, dim);
                for (j, row) in x.row_vectors().iter().enumerate() {
                    let s = -sign(odd && a.parity[j].is_odd());
                    for (i, v) in row {
                        out.set(*i, j, &s * v);
                    }
                }
                out
            })
            .collect();
        ModuleData {
            ctx: ctx.clone(),
            label: format!("dual({})", a.label),
            parity: a.parity.clone(),
            weights: a.weights.iter().map(|w| -w).collect(),
            action,
            gram: a.gram.inverse().expect("forms are nondegenerate").transpose(),
            g0_only: a.g0_only,
        }
    }

    /// One-dimensional even `g0`-module `C_w`. The weight must be constant
    /// on each diagonal block, otherwise `[E_kl, E_lk]` cannot act by zero.
    pub fn character(ctx: &AlgebraContext, w: &Weight) -> Result<Self> {
        let m = ctx.m();
        let s = ctx.size();
        let valid = w.coords().len() == s && (1..s).all(|k| (k == m) || w.at(k) == w.at(k + 1));
        if !valid {
            return Err(Error::InvalidCharacter(w.to_string()));
        }
        let action = ctx
            .basis()
            .into_iter()
            .map(|u| if u.row == u.col { RationalMatrix::scalar(1, w.at(u.row)) } else { RationalMatrix::zeros(1, 1) })
            .collect();
        Ok(ModuleData {
            ctx: ctx.clone(),
            label: format!("C{w}"),
            parity: vec![Parity::Even],
            weights: vec![w.clone()],
            action,
            gram: RationalMatrix::identity(1),
            g0_only: true,
        })
    }

    /// Restriction to a `g`-stable (or `g0`-stable, for `g0`-only modules)
    /// subspace spanned by weight and parity homogeneous vectors.
    pub fn submodule(&self, s: &Subspace, label: impl Into<String>) -> Result<Self> {
        let units: Vec<MatrixUnit> = if self.g0_only { self.ctx.even_basis() } else { self.ctx.basis() };
        let mut action = vec![RationalMatrix::zeros(s.dim(), s.dim()); self.ctx.dim()];
        for u in units {
            action[self.ctx.index(u)] = self.action[self.ctx.index(u)].restrict_to(s)?;
        }
        let b = s.basis_matrix();
        let gram = b.transpose().mul(&self.gram).mul(&b);
        let mut parity = Vec::with_capacity(s.dim());
        let mut weights = Vec::with_capacity(s.dim());
        for v in s.vectors() {
            let lead = *v.keys().next().ok_or(Error::DependentBasis)?;
            if v.keys().any(|&k| self.parity[k] != self.parity[lead] || self.weights[k] != self.weights[lead]) {
                return Err(Error::DimensionMismatch("submodule basis vector is not homogeneous".into()));
            }
            parity.push(self.parity[lead]);
            weights.push(self.weights[lead].clone());
        }
        Ok(ModuleData { ctx: self.ctx.clone(), label: label.into(), parity, weights, action, gram, g0_only: self.g0_only })
    }

    pub fn with_gram(mut self, gram: RationalMatrix) -> Self {
        assert_eq!(gram.rows(), self.dim());
        self.gram = gram;
        self
    }

    pub fn ctx(&self) -> &AlgebraContext {
        &self.ctx
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    pub fn is_g0_only(&self) -> bool {
        self.g0_only
    }

    pub fn action(&self, u: MatrixUnit) -> &RationalMatrix {
        &self.action[self.ctx.index(u)]
    }

    /// Action of a general element of `g`.
    pub fn act(&self, x: &SuperElement) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.dim(), self.dim());
        for (u, c) in x.terms() {
            out = out.axpy(c, self.action(*u));
        }
        out
    }

    fn generators(&self) -> Vec<MatrixUnit> {
        if self.g0_only {
            self.ctx.even_basis()
        } else {
            self.ctx.basis()
        }
    }

    /// Basis pairs on which `ρ([X,Y]) = ρ(X)ρ(Y) − (−1)^{|X||Y|} ρ(Y)ρ(X)` fails.
    pub fn representation_failures(&self) -> Vec<(MatrixUnit, MatrixUnit)> {
        let gens = self.generators();
        let mut out = Vec::new();
        for &a in &gens {
            for &b in &gens {
                let s = sign(self.ctx.parity(a).is_odd() && self.ctx.parity(b).is_odd());
                let (xa, xb) = (self.action(a), self.action(b));
                let lhs = self.act(&self.ctx.bracket_units(a, b));
                let rhs = xa.mul(xb).sub(&xb.mul(xa).scale(&s));
                if lhs != rhs {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn check_representation(&self) -> Result<()> {
        match self.representation_failures().first() {
            None => Ok(()),
            Some((a, b)) => Err(Error::NotARepresentation(a.to_string(), b.to_string())),
        }
    }

    /// `E_kk` acts diagonally with the recorded weights.
    pub fn weight_property(&self) -> bool {
        (1..=self.ctx.size()).all(|k| {
            let h = self.action(E(k, k));
            let diag_ok = (0..self.dim()).all(|v| h.get(v, v) == *self.weights[v].at(k));
            diag_ok && h.nnz() == (0..self.dim()).filter(|&v| !self.weights[v].at(k).is_zero()).count()
        })
    }

    /// Odd generators flip parity, even ones preserve it.
    pub fn parity_property(&self) -> bool {
        self.generators().into_iter().all(|u| {
            let p = self.ctx.parity(u);
            self.action(u)
                .row_vectors()
                .iter()
                .enumerate()
                .all(|(i, row)| row.keys().all(|&j| self.parity[i] == self.parity[j] + p))
        })
    }

    /// Generators violating `G ρ(E_kl) = ρ(E_lk)ᵀ G`.
    pub fn contravariance_failures(&self) -> Vec<MatrixUnit> {
        self.generators()
            .into_iter()
            .filter(|u| {
                let lhs = self.gram.mul(self.action(*u));
                let rhs = self.action(E(u.col, u.row)).transpose().mul(&self.gram);
                lhs != rhs
            })
            .collect()
    }

    pub fn validate_unitary(&self) -> UnitarityReport {
        let contravariance_failures: Vec<String> = self.contravariance_failures().iter().map(|u| u.to_string()).collect();
        let symmetric = self.gram.is_symmetric();
        let pivots = if symmetric { symmetric_pivots(&self.gram) } else { Vec::new() };
        let positive_definite = symmetric && is_positive_definite(&self.gram);
        let weight_orthogonal = self
            .gram
            .row_vectors()
            .iter()
            .enumerate()
            .all(|(i, row)| row.keys().all(|&j| self.weights[i] == self.weights[j]));
        let passed = contravariance_failures.is_empty() && positive_definite && weight_orthogonal;
        UnitarityReport {
            module: self.label.clone(),
            contravariance_failures,
            pivots,
            positive_definite,
            weight_orthogonal,
            passed,
        }
    }

    /// Matrix of `Ω_g`.
    pub fn casimir_action(&self) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.dim(), self.dim());
        for (u, v, c) in self.ctx.casimir_g().terms {
            out = out.axpy(&c, &self.action(u).mul(self.action(v)));
        }
        out
    }

    pub fn casimir_eigenvalues(&self) -> Result<CasimirSpectrum> {
        let omega = self.casimir_action();
        let spectrum = omega.rational_eigenvalues()?;
        if !spectrum.is_fully_rational() {
            return Err(Error::IrrationalEigenvalues(self.label.clone()));
        }
        Ok(CasimirSpectrum { scalar: omega.is_scalar().is_some(), eigenvalues: spectrum.eigenvalues })
    }

    /// The scalar by which `Ω_g` acts.
    pub fn casimir_scalar(&self) -> Result<Q> {
        if self.dim() == 0 {
            return Ok(Q::zero());
        }
        self.casimir_action().is_scalar().ok_or_else(|| Error::NonScalarCasimir(self.label.clone()))
    }

    /// Index groups of basis vectors sharing weight and parity.
    fn homogeneous_groups(&self) -> Vec<Vec<usize>> {
        let mut groups: BTreeMap<(Weight, bool), Vec<usize>> = BTreeMap::new();
        for (i, (w, p)) in self.weights.iter().zip(&self.parity).enumerate() {
            groups.entry((w.clone(), p.is_odd())).or_default().push(i);
        }
        groups.into_values().collect()
    }

    /// Splits the module into generalized eigenspaces of `Ω_g`. Eigenvalues
    /// that are not rational are left out and reported in the diagnostic.
    pub fn eigenblocks(&self) -> Result<BlockSplit> {
        let omega = self.casimir_action();
        let spectrum = omega.rational_eigenvalues()?;
        let groups = self.homogeneous_groups();
        let mut blocks = Vec::new();
        for (lambda, mult) in &spectrum.eigenvalues {
            let shifted = omega.sub(&RationalMatrix::scalar(self.dim(), lambda));
            let mut power = RationalMatrix::identity(self.dim());
            for _ in 0..*mult {
                power = power.mul(&shifted);
            }
            let mut basis = Vec::new();
            for g in &groups {
                let sub = power.select_rows(g).transpose().select_rows(g).transpose();
                for v in sub.kernel().vectors() {
                    basis.push(v.iter().map(|(k, c)| (g[*k], c.clone())).collect::<SparseVec>());
                }
            }
            if basis.len() != *mult {
                return Err(Error::DimensionMismatch(format!("generalized eigenspace of {lambda} has dim {} != {mult}", basis.len())));
            }
            let space = Subspace::from_independent(self.dim(), basis)?;
            let label = if spectrum.eigenvalues.len() == 1 { self.label.clone() } else { format!("{}[Omega={lambda}]", self.label) };
            blocks.push(EigenBlock { eigenvalue: lambda.clone(), module: self.submodule(&space, label)? });
        }
        let skipped_dim = spectrum.residual.len().saturating_sub(1);
        let diagnostic = (skipped_dim > 0).then(|| {
            let coeffs: Vec<String> = spectrum.residual.iter().map(|c| c.to_string()).collect();
            format!("skipped {skipped_dim} dimensions with irrational Casimir eigenvalues; residual factor coefficients [{}]", coeffs.join(", "))
        });
        Ok(BlockSplit { blocks, skipped_dim, diagnostic })
    }

    /// Even part of the action as a [`G0Action`].
    pub fn g0_action(&self) -> G0Action {
        G0Action::new(self.dim(), self.ctx.even_basis().into_iter().map(|u| (u, self.action(u).clone())).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitarityReport {
    pub module: String,
    pub contravariance_failures: Vec<String>,
    pub pivots: Vec<Q>,
    pub positive_definite: bool,
    pub weight_orthogonal: bool,
    pub passed: bool,
}

impl UnitarityReport {
    /// First nonpositive pivot, if any.
    pub fn pivot_witness(&self) -> Option<(usize, &Q)> {
        self.pivots.iter().enumerate().find(|(_, p)| !p.is_positive())
    }
}

impl fmt::Display for UnitarityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.module)?;
        if self.passed {
            return f.write_str("unitary");
        }
        if !self.contravariance_failures.is_empty() {
            write!(f, "contravariance fails on {}; ", self.contravariance_failures.join(","))?;
        }
        if let Some((i, p)) = self.pivot_witness() {
            write!(f, "pivot {i} is {p}; ")?;
        }
        if !self.weight_orthogonal {
            f.write_str("form pairs distinct weights; ")?;
        }
        f.write_str("not unitary")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirSpectrum {
    pub eigenvalues: Vec<(Q, usize)>,
    pub scalar: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenBlock {
    pub eigenvalue: Q,
    pub module: ModuleData,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSplit {
    pub blocks: Vec<EigenBlock>,
    pub skipped_dim: usize,
    pub diagnostic: Option<String>,
}

/// A module whose contravariant form has been validated positive definite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitaryModule(ModuleData);

impl UnitaryModule {
    pub fn new(m: ModuleData) -> Result<Self> {
        let report = m.validate_unitary();
        if report.passed {
            Ok(UnitaryModule(m))
        } else {
            Err(Error::NotUnitary(report.to_string()))
        }
    }

    pub fn into_inner(self) -> ModuleData {
        self.0
    }
}

impl Deref for UnitaryModule {
    type Target = ModuleData;
    fn deref(&self) -> &ModuleData {
        &self.0
    }
}

/// Parses `triv`, `nat`, `dual(S)` and `tensor(S,S)`.
pub fn parse_module(ctx: &AlgebraContext, spec: &str) -> Result<ModuleData> {
    let mut p = SpecParser { src: spec, pos: 0 };
    let m = p.expr(ctx)?;
    p.skip_ws();
    if p.pos != spec.len() {
        return Err(p.fail("trailing input"));
    }
    Ok(m)
}

struct SpecParser<'s> {
    src: &'s str,
    pos: usize,
}

impl SpecParser<'_> {
    fn fail(&self, reason: &str) -> Error {
        Error::ParseModule { input: self.src.to_string(), reason: format!("{reason} at offset {}", self.pos) }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.fail(&format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn expr(&mut self, ctx: &AlgebraContext) -> Result<ModuleData> {
        match self.ident() {
            "triv" => Ok(ModuleData::trivial(ctx)),
            "nat" => Ok(ModuleData::natural(ctx)),
            "dual" => {
                self.expect('(')?;
                let inner = self.expr(ctx)?;
                self.expect(')')?;
                Ok(ModuleData::dual(&inner))
            }
            "tensor" => {
                self.expect('(')?;
                let a = self.expr(ctx)?;
                self.expect(',')?;
                let b = self.expr(ctx)?;
                self.expect(')')?;
                ModuleData::tensor(&a, &b)
            }
            "" => Err(self.fail("expected a module name")),
            other => {
                let msg = format!("unknown module '{other}'");
                Err(self.fail(&msg))
            }
        }
    }
}

/// An action of `g0` on a coordinate space, one matrix per even matrix unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G0Action {
    dim: usize,
    ops: Vec<(MatrixUnit, RationalMatrix)>,
}

impl G0Action {
    pub fn new(dim: usize, ops: Vec<(MatrixUnit, RationalMatrix)>) -> Self {
        assert!(ops.iter().all(|(_, a)| a.rows() == dim && a.cols() == dim));
        G0Action { dim, ops }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn op(&self, u: MatrixUnit) -> &RationalMatrix {
        &self.ops.iter().find(|(v, _)| *v == u).expect("unit is part of the action").1
    }

    pub fn ops(&self) -> &[(MatrixUnit, RationalMatrix)] {
        &self.ops
    }

    /// Action on a stable subspace, in its basis.
    pub fn restrict(&self, s: &Subspace) -> Result<G0Action> {
        let ops = self.ops.iter().map(|(u, a)| Ok((*u, a.restrict_to(s)?))).collect::<Result<_>>()?;
        Ok(G0Action { dim: s.dim(), ops })
    }

    /// Induced action on `ker / im`, realised on an echelon complement of
    /// `im` in `ker`. Returns the complement together with the action.
    pub fn quotient(&self, ker: &Subspace, im: &Subspace) -> Result<(Subspace, G0Action)> {
        let complement = ker.quotient_basis(im)?;
        let all: Vec<SparseVec> = im.vectors().iter().chain(complement.vectors()).cloned().collect();
        let coords = Coordinatizer::new(&all)?;
        let skip = im.dim();
        let k = complement.dim();
        let mut ops = Vec::with_capacity(self.ops.len());
        for (u, a) in &self.ops {
            let mut m = RationalMatrix::zeros(k, k);
            for (j, v) in complement.vectors().iter().enumerate() {
                let c = coords.coordinates(&a.mul_vec(v)).ok_or(Error::NotInvariant)?;
                for (i, x) in c.into_iter().skip(skip).enumerate() {
                    m.set(i, j, x);
                }
            }
            ops.push((*u, m));
        }
        Ok((complement, G0Action { dim: k, ops }))
    }

    /// Matrix of `Ω_{g0} = Σ W_k W^k`.
    pub fn casimir(&self, ctx: &AlgebraContext) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.dim, self.dim);
        for (w, dual) in ctx.dual_basis_g0() {
            let mut d = RationalMatrix::zeros(self.dim, self.dim);
            for (u, c) in dual.terms() {
                d = d.axpy(c, self.op(*u));
            }
            out = out.add(&self.op(w).mul(&d));
        }
        out
    }
}

/// An irreducible constituent type with its space of highest weight vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G0Type {
    pub weight: Weight,
    pub multiplicity: usize,
    pub highest_vectors: Subspace,
}

fn lift(s: &Subspace, coeffs: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, c) in coeffs {
        axpy_vec(&mut out, c, &s.vectors()[*i]);
    }
    out
}

/// Highest weights of the `g0 = gl(m) ⊕ gl(n)` constituents, read off the
/// joint kernel of the positive even root vectors. The dimension count is
/// checked with the Weyl dimension formula.
pub fn decompose_g0(ctx: &AlgebraContext, action: &G0Action) -> Result<Vec<G0Type>> {
    let dim = action.dim();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let raising: Vec<&RationalMatrix> = ctx
        .even_basis()
        .into_iter()
        .filter(|u| u.row < u.col && ctx.sector(*u) == Sector::Even)
        .map(|u| action.op(u))
        .collect();
    let top = raising.iter().fold(None::<RationalMatrix>, |acc, m| Some(match acc {
        None => (*m).clone(),
        Some(a) => a.vstack(m),
    }));
    let cartan: Vec<&RationalMatrix> = (1..=ctx.size()).map(|k| action.op(E(k, k))).collect();
    let pieces = if cartan.iter().all(|h| is_diagonal(h)) {
        diagonal_pieces(dim, &cartan, top.as_ref())?
    } else {
        let kernel = match top {
            Some(t) => t.kernel(),
            None => Subspace::full(dim),
        };
        refine_pieces(dim, &cartan, kernel)?
    };
    let types: Vec<G0Type> = pieces
        .into_iter()
        .map(|(c, s)| G0Type { weight: Weight(c), multiplicity: s.dim(), highest_vectors: s })
        .collect();
    let total: Q = types.iter().map(|t| ctx.g0_dimension(&t.weight) * Q::from_integer(t.multiplicity.into())).sum();
    if total != Q::from_integer(dim.into()) {
        return Err(Error::DimensionMismatch(format!("constituents account for {total} of {dim} dimensions")));
    }
    Ok(types)
}

fn is_diagonal(m: &RationalMatrix) -> bool {
    m.row_vectors().iter().enumerate().all(|(i, row)| row.keys().all(|&j| j == i))
}

/// Weight-by-weight kernels when the Cartan matrices are diagonal.
fn diagonal_pieces(dim: usize, cartan: &[&RationalMatrix], top: Option<&RationalMatrix>) -> Result<Vec<(Vec<Q>, Subspace)>> {
    let mut groups: BTreeMap<Vec<Q>, Vec<usize>> = BTreeMap::new();
    for v in 0..dim {
        groups.entry(cartan.iter().map(|h| h.get(v, v)).collect()).or_default().push(v);
    }
    let top_t = top.map(|t| t.transpose());
    let mut out = Vec::new();
    for (w, idx) in groups {
        let vecs: Vec<SparseVec> = match &top_t {
            None => idx.iter().map(|&i| [(i, Q::one())].into_iter().collect()).collect(),
            Some(t) => {
                let cols = t.select_rows(&idx).transpose();
                cols.kernel().vectors().iter().map(|k| k.iter().map(|(j, c)| (idx[*j], c.clone())).collect()).collect()
            }
        };
        if !vecs.is_empty() {
            out.push((w, Subspace::from_independent(dim, vecs)?));
        }
    }
    Ok(out)
}

/// Joint Cartan eigenspaces inside the space of highest weight vectors.
fn refine_pieces(dim: usize, cartan: &[&RationalMatrix], kernel: Subspace) -> Result<Vec<(Vec<Q>, Subspace)>> {
    let mut pieces: Vec<(Vec<Q>, Subspace)> = vec![(Vec::new(), kernel)];
    for h in cartan {
        let mut next = Vec::new();
        for (coords, space) in pieces {
            if space.dim() == 0 {
                continue;
            }
            let local = h.restrict_to(&space)?;
            let spectrum = local.rational_eigenvalues()?;
            let mut found = 0;
            for (lambda, _) in spectrum.eigenvalues {
                let eig = local.sub(&RationalMatrix::scalar(space.dim(), &lambda)).kernel();
                found += eig.dim();
                let vecs: Vec<SparseVec> = eig.vectors().iter().map(|c| lift(&space, c)).collect();
                let mut c = coords.clone();
                c.push(lambda);
                next.push((c, Subspace::from_independent(dim, vecs)?));
            }
            if found != space.dim() {
                return Err(Error::DimensionMismatch("Cartan action on highest weight vectors is not semisimple".into()));
            }
        }
        pieces = next;
    }
    Ok(pieces.into_iter().filter(|(_, s)| s.dim() > 0).collect())
}

/// Types as a sorted multiset.
pub fn type_multiset(types: &[G0Type]) -> BTreeMap<Weight, usize> {
    let mut out = BTreeMap::new();
    for t in types {
        *out.entry(t.weight.clone()).or_insert(0) += t.multiplicity;
    }
    out
}

/// Every weight in the multiset shifted by `w`.
pub fn shift_multiset(types: &BTreeMap<Weight, usize>, w: &Weight) -> BTreeMap<Weight, usize> {
    types.iter().map(|(k, v)| (k + w, *v)).collect()
}
