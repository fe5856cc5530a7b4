//! Per-degree matrices of `d`, `δ`, `D` and the diagonal `g0`-action on
//! `V ⊗ M(g1)`, harmonic spaces and the Casimir-level infinitesimal
//! character check.
//!
//! The basis of `V ⊗ M^i` is `v ⊗ x^q` with index `v · |M^i| + j`, matching
//! [`RationalMatrix::kron`].

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{AlgebraContext, MatrixUnit, Parity, SuperElement, Weight};
use crate::error::Result;
use crate::linalg::{RationalMatrix, SparseVec, Subspace};
use crate::rep::{decompose_g0, type_multiset, G0Action, G0Type, ModuleData, UnitaryModule};
use crate::scalar::{q, Q};
use crate::weyl::{adjoint_slice_matrix, alpha, casimir_constant, WeilSlice, WeylElement};

/// Slices and cached Weyl data for one module, up to a maximal degree.
pub struct DiracComplex<'a> {
    module: &'a ModuleData,
    slices: Vec<WeilSlice>,
    alphas: Vec<(MatrixUnit, WeylElement)>,
    max_degree: usize,
}

impl<'a> DiracComplex<'a> {
    /// Prepares slices `0..=max_degree + 2`, enough for every operator that
    /// starts in degrees `<= max_degree + 1`.
    pub fn new(module: &'a ModuleData, max_degree: usize) -> Result<Self> {
        let ctx = module.ctx();
        let nv = ctx.odd_dim();
        let slices = (0..=max_degree + 2).map(|i| WeilSlice::new(nv, i)).collect();
        let alphas = ctx
            .even_basis()
            .into_iter()
            .map(|u| Ok((u, alpha(ctx, &SuperElement::unit(u))?)))
            .collect::<Result<_>>()?;
        Ok(DiracComplex { module, slices, alphas, max_degree })
    }

    pub fn module(&self) -> &ModuleData {
        self.module
    }

    pub fn ctx(&self) -> &AlgebraContext {
        self.module.ctx()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn slice(&self, i: usize) -> &WeilSlice {
        &self.slices[i]
    }

    pub fn slice_dim(&self, i: usize) -> usize {
        self.module.dim() * self.slices[i].len()
    }

    fn nv(&self) -> usize {
        self.ctx().odd_dim()
    }

    /// `d_i = Σ_a ρ(∂_a) ⊗ x_a : V⊗M^i → V⊗M^{i+1}`.
    pub fn d(&self, i: usize) -> RationalMatrix {
        let ctx = self.ctx();
        let mut out = RationalMatrix::zeros(self.slice_dim(i + 1), self.slice_dim(i));
        for a in 0..self.nv() {
            let mx = self.slices[i].matrix_of(&WeylElement::x(self.nv(), a), &self.slices[i + 1]);
            out = out.add(&self.module.action(ctx.d_unit(a)).kron(&mx));
        }
        out
    }

    /// `δ_i = Σ_a ρ(x_a) ⊗ ∂_a : V⊗M^i → V⊗M^{i−1}`; zero rows for `i = 0`.
    pub fn delta(&self, i: usize) -> RationalMatrix {
        if i == 0 {
            return RationalMatrix::zeros(0, self.slice_dim(0));
        }
        let ctx = self.ctx();
        let mut out = RationalMatrix::zeros(self.slice_dim(i - 1), self.slice_dim(i));
        for a in 0..self.nv() {
            let md = self.slices[i].matrix_of(&WeylElement::d(self.nv(), a), &self.slices[i - 1]);
            out = out.add(&self.module.action(ctx.x_unit(a)).kron(&md));
        }
        out
    }

    /// `D = 2(d − δ)` out of degree `i`, the `i+1` block stacked over the
    /// `i−1` block.
    pub fn dirac(&self, i: usize) -> RationalMatrix {
        self.d(i).scale(&q(2)).vstack(&self.delta(i).scale(&q(-2)))
    }

    /// Degree-preserving component of `D²` on degree `i`:
    /// `−4(d_{i−1} δ_i + δ_{i+1} d_i)`.
    pub fn d_squared(&self, i: usize) -> RationalMatrix {
        let mut out = self.delta(i + 1).mul(&self.d(i));
        if i > 0 {
            out = out.add(&self.d(i - 1).mul(&self.delta(i)));
        }
        out.scale(&q(-4))
    }

    fn alpha_of(&self, u: MatrixUnit) -> &WeylElement {
        &self.alphas.iter().find(|(v, _)| *v == u).expect("even unit").1
    }

    fn alpha_element(&self, x: &SuperElement) -> WeylElement {
        let mut out = WeylElement::zero(self.nv());
        for (u, c) in x.terms() {
            out = out.add(&self.alpha_of(*u).scale(c));
        }
        out
    }

    fn weil_matrix(&self, w: &WeylElement, i: usize) -> RationalMatrix {
        self.slices[i].matrix_of(w, &self.slices[i])
    }

    /// `X_Δ = ρ(X) ⊗ 1 + 1 ⊗ α(X)` on degree `i` for every even unit.
    pub fn g0_action(&self, i: usize) -> G0Action {
        let iv = RationalMatrix::identity(self.module.dim());
        let im = RationalMatrix::identity(self.slices[i].len());
        let ops = self
            .alphas
            .iter()
            .map(|(u, a)| (*u, self.module.action(*u).kron(&im).add(&iv.kron(&self.weil_matrix(a, i)))))
            .collect();
        G0Action::new(self.slice_dim(i), ops)
    }

    /// `ρ(X) ⊗ 1 + 1 ⊗ ad(X)` on `V ⊗ S^i(g-)`, the model in which `g±`
    /// (co)homology carries its natural `g0`-action.
    pub fn adjoint_model_action(&self, i: usize) -> Result<G0Action> {
        let iv = RationalMatrix::identity(self.module.dim());
        let im = RationalMatrix::identity(self.slices[i].len());
        let ops = self
            .ctx()
            .even_basis()
            .into_iter()
            .map(|u| Ok((u, self.module.action(u).kron(&im).add(&iv.kron(&adjoint_slice_matrix(self.ctx(), u, &self.slices[i])?)))))
            .collect::<Result<_>>()?;
        Ok(G0Action::new(self.slice_dim(i), ops))
    }

    /// `Ω_{g0Δ}` on degree `i` as the Casimir of the diagonal action.
    pub fn omega_g0_delta(&self, i: usize) -> RationalMatrix {
        self.g0_action(i).casimir(self.ctx())
    }

    /// `Σ_k (W_k W^k ⊗ 1 + W_k ⊗ α(W^k) + W^k ⊗ α(W_k) + 1 ⊗ α(W_k) α(W^k))`
    /// assembled term by term.
    pub fn omega_g0_delta_cross_terms(&self, i: usize) -> RationalMatrix {
        let iv = RationalMatrix::identity(self.module.dim());
        let im = RationalMatrix::identity(self.slices[i].len());
        let mut out = RationalMatrix::zeros(self.slice_dim(i), self.slice_dim(i));
        for (w, dual) in self.ctx().dual_basis_g0() {
            let rw = self.module.action(w);
            let rd = self.module.act(&dual);
            let aw = self.alpha_of(w);
            let ad = self.alpha_element(&dual);
            out = out
                .add(&rw.mul(&rd).kron(&im))
                .add(&rw.kron(&self.weil_matrix(&ad, i)))
                .add(&rd.kron(&self.weil_matrix(aw, i)))
                .add(&iv.kron(&self.weil_matrix(&aw.mul(&ad), i)));
        }
        out
    }

    /// `Ω_g ⊗ 1` on degree `i`.
    pub fn omega_g(&self, i: usize) -> RationalMatrix {
        self.module.casimir_action().kron(&RationalMatrix::identity(self.slices[i].len()))
    }

    /// Gram matrix of `⟨·,·⟩_V ⊗ ⟨·,·⟩_M` on degree `i`.
    pub fn gram(&self, i: usize) -> RationalMatrix {
        self.module.gram().kron(&self.slices[i].gram())
    }

    /// Weights of the basis `v ⊗ x^q` under the diagonal action.
    pub fn basis_weights(&self, i: usize) -> Vec<Weight> {
        let ctx = self.ctx();
        let shift = -&ctx.roots().rho1;
        let mut out = Vec::with_capacity(self.slice_dim(i));
        for wv in self.module.weights() {
            for e in self.slices[i].monomials() {
                let mut w = wv + &shift;
                for (a, &k) in e.0.iter().enumerate() {
                    w = &w - &ctx.roots().beta[a].scale(&q(k as i64));
                }
                out.push(w);
            }
        }
        out
    }

    /// `Ker d_i ∩ Ker δ_i`.
    pub fn harmonic_subspace(&self, i: usize) -> Result<Subspace> {
        let kd = self.d(i).kernel();
        if i == 0 || kd.dim() == 0 {
            return Ok(kd);
        }
        Ok(kd.kernel_of(&self.delta(i)))
    }
}

/// The kind of a per-degree operator family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    D,
    Delta,
    Dirac,
    G0Action(MatrixUnit),
    OmegaG0Delta,
    OmegaG,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedOperator {
    pub kind: OperatorKind,
    /// `blocks[i]` starts in degree `i`.
    pub blocks: Vec<RationalMatrix>,
}

/// Every operator family on degrees `0..=max_degree`.
pub fn build_graded_operators(module: &ModuleData, max_degree: usize) -> Result<Vec<GradedOperator>> {
    let cx = DiracComplex::new(module, max_degree)?;
    let degrees: Vec<usize> = (0..=max_degree).collect();
    let family = |kind: OperatorKind, f: &(dyn Fn(usize) -> RationalMatrix + Sync)| GradedOperator {
        kind,
        blocks: degrees.par_iter().map(|&i| f(i)).collect(),
    };
    let mut out = vec![
        family(OperatorKind::D, &|i| cx.d(i)),
        family(OperatorKind::Delta, &|i| cx.delta(i)),
        family(OperatorKind::Dirac, &|i| cx.dirac(i)),
        family(OperatorKind::OmegaG0Delta, &|i| cx.omega_g0_delta(i)),
        family(OperatorKind::OmegaG, &|i| cx.omega_g(i)),
    ];
    let actions: Vec<G0Action> = degrees.par_iter().map(|&i| cx.g0_action(i)).collect();
    for u in module.ctx().even_basis() {
        out.push(GradedOperator { kind: OperatorKind::G0Action(u), blocks: actions.iter().map(|a| a.op(u).clone()).collect() });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicSpace {
    pub degree: usize,
    pub basis: Subspace,
    pub g0_types: Vec<G0Type>,
    pub parity: Parity,
}

impl HarmonicSpace {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn type_multiset(&self) -> BTreeMap<Weight, usize> {
        type_multiset(&self.g0_types)
    }
}

fn harmonic_space(cx: &DiracComplex, i: usize) -> Result<HarmonicSpace> {
    let basis = cx.harmonic_subspace(i)?;
    let action = cx.g0_action(i).restrict(&basis)?;
    let g0_types = decompose_g0(cx.ctx(), &action)?;
    Ok(HarmonicSpace { degree: i, basis, g0_types, parity: Parity::from_bit(i % 2 == 1) })
}

/// Harmonic space of degree `i`.
pub fn harmonics(module: &UnitaryModule, i: usize) -> Result<HarmonicSpace> {
    harmonic_space(&DiracComplex::new(module, i)?, i)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: usize,
    pub slice_dim: usize,
    pub harmonic_dim: usize,
    pub g0_types: BTreeMap<Weight, usize>,
    /// Harmonics are orthogonal to `Im d_{i−1}` and `Im δ_{i+1}`.
    pub orthogonal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiracCohomologyReport {
    pub module: String,
    pub block_eigenvalue: Option<Q>,
    pub degrees: Vec<DegreeReport>,
    pub hplus_dim: usize,
    pub hminus_dim: usize,
}

impl DiracCohomologyReport {
    pub fn all_orthogonal(&self) -> bool {
        self.degrees.iter().all(|d| d.orthogonal)
    }
}

fn orthogonal_to(gram: &RationalMatrix, basis: &Subspace, cols: &RationalMatrix) -> bool {
    if basis.dim() == 0 || cols.cols() == 0 || cols.rows() == 0 {
        return true;
    }
    basis.basis_matrix().transpose().mul(gram).mul(cols).is_zero()
}

/// Degree-by-degree Dirac cohomology of a unitary module.
pub fn dirac_cohomology(module: &UnitaryModule, max_degree: usize) -> Result<DiracCohomologyReport> {
    let cx = DiracComplex::new(module, max_degree)?;
    let degrees = (0..=max_degree)
        .into_par_iter()
        .map(|i| {
            let h = harmonic_space(&cx, i)?;
            let g = cx.gram(i);
            let mut orthogonal = orthogonal_to(&g, &h.basis, &cx.delta(i + 1));
            if i > 0 {
                orthogonal &= orthogonal_to(&g, &h.basis, &cx.d(i - 1));
            }
            Ok(DegreeReport {
                degree: i,
                slice_dim: cx.slice_dim(i),
                harmonic_dim: h.dim(),
                g0_types: h.type_multiset(),
                orthogonal,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let hplus_dim = degrees.iter().filter(|d| d.degree % 2 == 0).map(|d| d.harmonic_dim).sum();
    let hminus_dim = degrees.iter().filter(|d| d.degree % 2 == 1).map(|d| d.harmonic_dim).sum();
    Ok(DiracCohomologyReport {
        module: module.label().to_string(),
        block_eigenvalue: module.casimir_action().is_scalar(),
        degrees,
        hplus_dim,
        hminus_dim,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeCheck {
    pub weight: Weight,
    pub multiplicity: usize,
    pub eigenvalue: Q,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfCharDegree {
    pub degree: usize,
    /// `Ω_{g0Δ}` restricted to the harmonics equals `(c_V + C)·I`.
    pub restriction_scalar: bool,
    pub types: Vec<TypeCheck>,
}

/// `Ω_{g0Δ} − (c_V + C)` on the highest weight vectors of one type lying
/// in `Im d ⊕ Im δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeControl {
    pub degree: usize,
    pub weight: Weight,
    pub determinant: Q,
    pub invertible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfCharReport {
    pub module: String,
    pub casimir_value: Q,
    pub constant_c: Q,
    pub target: Q,
    pub degrees: Vec<InfCharDegree>,
    pub negative_control: Option<NegativeControl>,
    pub passed: bool,
}

/// On every harmonic slice `Ω_{g0Δ}` must act by `c_V + C`.
pub fn infinitesimal_character_check(module: &UnitaryModule, max_degree: usize) -> Result<InfCharReport> {
    let ctx = module.ctx();
    let c_v = module.casimir_scalar()?;
    let c = casimir_constant(ctx)?;
    let target = &c_v + &c;
    let cx = DiracComplex::new(module, max_degree)?;
    let degrees = (0..=max_degree)
        .into_par_iter()
        .map(|i| {
            let h = harmonic_space(&cx, i)?;
            let restricted = cx.omega_g0_delta(i).restrict_to(&h.basis)?;
            let restriction_scalar = restricted == RationalMatrix::scalar(h.dim(), &target);
            let types = h
                .g0_types
                .iter()
                .map(|t| {
                    let eigenvalue = ctx.g0_casimir_on_highest_weight(&t.weight);
                    TypeCheck { weight: t.weight.clone(), multiplicity: t.multiplicity, passed: eigenvalue == target, eigenvalue }
                })
                .collect();
            Ok(InfCharDegree { degree: i, restriction_scalar, types })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut negative_control = None;
    for i in 0..=max_degree {
        let mut gens: Vec<SparseVec> = cx.delta(i + 1).columns();
        if i > 0 {
            gens.extend(cx.d(i - 1).columns());
        }
        let complement = Subspace::span(cx.slice_dim(i), &gens);
        if complement.dim() == 0 {
            continue;
        }
        let action = cx.g0_action(i).restrict(&complement)?;
        let types = decompose_g0(ctx, &action)?;
        let Some(t) = types.first() else { continue };
        let shifted = action.casimir(ctx).sub(&RationalMatrix::scalar(complement.dim(), &target));
        let determinant = shifted.restrict_to(&t.highest_vectors)?.determinant();
        negative_control = Some(NegativeControl {
            degree: i,
            weight: t.weight.clone(),
            invertible: !determinant.is_zero(),
            determinant,
        });
        break;
    }
    let passed = degrees.iter().all(|d| d.restriction_scalar && d.types.iter().all(|t| t.passed))
        && negative_control.as_ref().is_none_or(|n| n.invertible);
    Ok(InfCharReport {
        module: module.label().to_string(),
        casimir_value: c_v,
        constant_c: c,
        target,
        degrees,
        negative_control,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCertificate {
    pub degree: usize,
    /// Distinct `Ω_{g0}` eigenvalues of the `g0`-types of the whole slice.
    pub candidate_eigenvalues: Vec<Q>,
    /// `c_V + C` is not among them, so the harmonics vanish.
    pub excluded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub target: Q,
    pub scanned_to: usize,
    /// Least `i0` with every scanned degree `>= i0` certified, if any.
    pub bound: Option<usize>,
    pub certificates: Vec<BoundCertificate>,
}

impl VanishingReport {
    pub fn describe(&self) -> String {
        match self.bound {
            Some(b) => format!("harmonics vanish in degrees {b}..={}", self.scanned_to),
            None => format!("no bound found up to {}", self.scanned_to),
        }
    }
}

/// Scans degrees upward for slices whose `g0`-types all miss the
/// eigenvalue `c_V + C`.
pub fn vanishing_bound(module: &ModuleData, max_degree: usize) -> Result<VanishingReport> {
    let ctx = module.ctx();
    let target = module.casimir_scalar()? + casimir_constant(ctx)?;
    let cx = DiracComplex::new(module, max_degree)?;
    let certificates = (0..=max_degree)
        .into_par_iter()
        .map(|i| {
            let types = decompose_g0(ctx, &cx.g0_action(i))?;
            let mut values: Vec<Q> = types.iter().map(|t| ctx.g0_casimir_on_highest_weight(&t.weight)).collect();
            values.sort();
            values.dedup();
            let excluded = !values.contains(&target);
            Ok(BoundCertificate { degree: i, candidate_eigenvalues: values, excluded })
        })
        .collect::<Result<Vec<_>>>()?;
    let bound = match certificates.iter().rposition(|c| !c.excluded) {
        None => Some(0),
        Some(k) if k == max_degree => None,
        Some(k) => Some(k + 1),
    };
    Ok(VanishingReport { target, scanned_to: max_degree, bound, certificates })
}

/// Per-degree operator identities on `V ⊗ M^{<=N}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorChecks {
    /// `⟨d_i u, w⟩ = ⟨u, δ_{i+1} w⟩` for `i < N`.
    pub adjoint: Vec<bool>,
    /// `⟨Dv, w⟩ + ⟨v, Dw⟩ = 0` on the whole window.
    pub dirac_skew: bool,
    /// `d_{i+1} d_i = 0` and `δ_{i−1} δ_i = 0`.
    pub nilpotent: Vec<bool>,
    /// `[X_Δ, d] = [X_Δ, δ] = 0` for every even unit.
    pub equivariant: Vec<bool>,
    /// `D²` equals `−c_V − C + Ω_{g0Δ}` on each slice, when `Ω_g` is scalar.
    pub d_squared: Option<Vec<bool>>,
    /// The symmetric dual-pair form of `Ω_{g0Δ}` equals the Casimir of the
    /// diagonal action.
    pub omega_forms_agree: Vec<bool>,
}

impl OperatorChecks {
    pub fn passed(&self) -> bool {
        let all = |v: &[bool]| v.iter().all(|&b| b);
        all(&self.adjoint)
            && self.dirac_skew
            && all(&self.nilpotent)
            && all(&self.equivariant)
            && self.d_squared.as_deref().is_none_or(all)
            && all(&self.omega_forms_agree)
    }
}

/// Full `D` on the window `⊕_{i<=N} V⊗M^i`, blocks leaving it dropped.
pub fn window_dirac(cx: &DiracComplex, max_degree: usize) -> RationalMatrix {
    let offsets: Vec<usize> = (0..=max_degree + 1).scan(0, |acc, i| {
        let o = *acc;
        *acc += cx.slice_dim(i);
        Some(o)
    }).collect();
    let total = offsets[max_degree + 1];
    let mut out = RationalMatrix::zeros(total, total);
    for i in 0..=max_degree {
        if i < max_degree {
            let d = cx.d(i);
            for (r, row) in d.row_vectors().iter().enumerate() {
                for (c, v) in row {
                    out.set(offsets[i + 1] + r, offsets[i] + c, v * q(2));
                }
            }
        }
        if i > 0 {
            let dl = cx.delta(i);
            for (r, row) in dl.row_vectors().iter().enumerate() {
                for (c, v) in row {
                    out.set(offsets[i - 1] + r, offsets[i] + c, v * q(-2));
                }
            }
        }
    }
    out
}

fn window_gram(cx: &DiracComplex, max_degree: usize) -> RationalMatrix {
    let mut g = RationalMatrix::zeros(0, 0);
    for i in 0..=max_degree {
        let gi = cx.gram(i);
        let top = g.hstack(&RationalMatrix::zeros(g.rows(), gi.cols()));
        let bottom = RationalMatrix::zeros(gi.rows(), g.cols()).hstack(&gi);
        g = top.vstack(&bottom);
    }
    g
}

pub fn operator_checks(module: &ModuleData, max_degree: usize) -> Result<OperatorChecks> {
    let ctx = module.ctx();
    let cx = DiracComplex::new(module, max_degree)?;
    let scalar = module.casimir_action().is_scalar();
    let c = casimir_constant(ctx)?;
    let per_degree = (0..=max_degree)
        .into_par_iter()
        .map(|i| {
            let d_i = cx.d(i);
            let d_next = cx.d(i + 1);
            let delta_i = cx.delta(i);
            let delta_next = cx.delta(i + 1);
            let adjoint = d_i.transpose().mul(&cx.gram(i + 1)) == cx.gram(i).mul(&delta_next);
            let mut nilpotent = d_next.mul(&d_i).is_zero();
            if i > 1 {
                nilpotent &= cx.delta(i - 1).mul(&delta_i).is_zero();
            }
            let (a_i, a_next) = (cx.g0_action(i), cx.g0_action(i + 1));
            let equivariant = ctx.even_basis().into_iter().all(|u| {
                let ok_d = a_next.op(u).mul(&d_i) == d_i.mul(a_i.op(u));
                let ok_delta = i == 0 || {
                    let a_prev = cx.g0_action(i - 1);
                    a_prev.op(u).mul(&delta_i) == delta_i.mul(a_i.op(u))
                };
                ok_d && ok_delta
            });
            let omega = cx.omega_g0_delta(i);
            let d_squared = scalar.as_ref().map(|cv| {
                let rhs = omega.sub(&RationalMatrix::scalar(cx.slice_dim(i), &(cv + &c)));
                cx.d_squared(i) == rhs && cx.omega_g(i).add(&rhs) == omega.sub(&RationalMatrix::scalar(cx.slice_dim(i), &c))
            });
            let omega_forms_agree = cx.omega_g0_delta_cross_terms(i) == omega;
            (adjoint, nilpotent, equivariant, d_squared, omega_forms_agree)
        })
        .collect::<Vec<_>>();
    let dw = window_dirac(&cx, max_degree);
    let gw = window_gram(&cx, max_degree);
    let dirac_skew = dw.transpose().mul(&gw).add(&gw.mul(&dw)).is_zero();
    Ok(OperatorChecks {
        adjoint: per_degree.iter().take(max_degree).map(|p| p.0).collect(),
        dirac_skew,
        nilpotent: per_degree.iter().map(|p| p.1).collect(),
        equivariant: per_degree.iter().map(|p| p.2).collect(),
        d_squared: scalar.map(|_| per_degree.iter().map(|p| p.3.unwrap()).collect()),
        omega_forms_agree: per_degree.iter().map(|p| p.4).collect(),
    })
}

/// `Ker D²_i = Ker D_i = Ker d_i ∩ Ker δ_i` and `V⊗M^i = Ker D²_i ⊕ Im D²_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelChecks {
    pub degree: usize,
    pub kernel_d_squared: usize,
    pub kernel_dirac: usize,
    pub harmonic: usize,
    pub rank_d_squared: usize,
    pub equalities: bool,
    pub direct_sum: bool,
    pub self_adjoint: bool,
}

pub fn kernel_checks(module: &ModuleData, i: usize) -> Result<KernelChecks> {
    let cx = DiracComplex::new(module, i)?;
    let d2 = cx.d_squared(i);
    let k2 = d2.kernel();
    let kd = cx.dirac(i).kernel();
    let h = cx.harmonic_subspace(i)?;
    let im2 = d2.image();
    let g = cx.gram(i);
    let direct_sum = k2.dim() + im2.dim() == cx.slice_dim(i) && Subspace::is_direct_sum(&[&k2, &im2]);
    Ok(KernelChecks {
        degree: i,
        kernel_d_squared: k2.dim(),
        kernel_dirac: kd.dim(),
        harmonic: h.dim(),
        rank_d_squared: im2.dim(),
        equalities: k2.same_as(&kd) && kd.same_as(&h),
        direct_sum,
        self_adjoint: g.mul(&d2).is_symmetric(),
    })
}

/// `Ker D / (Ker D ∩ Im D)` on a degree window, split by degree parity.
/// Meant for modules without a positive form; no claim is made that the
/// window is large enough.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowReport {
    pub max_degree: usize,
    pub kernel_dim: [usize; 2],
    pub kernel_cap_image_dim: [usize; 2],
    pub quotient_dim: [usize; 2],
}

pub fn dirac_cohomology_window(module: &ModuleData, max_degree: usize) -> Result<WindowReport> {
    let cx = DiracComplex::new(module, max_degree + 1)?;
    let full = window_dirac(&cx, max_degree + 1);
    let offsets: Vec<usize> = (0..=max_degree + 1).scan(0, |acc, i| {
        let o = *acc;
        *acc += cx.slice_dim(i);
        Some(o)
    }).collect();
    let window = offsets[max_degree + 1];
    let parity_cols = |p: usize, top: usize| -> Vec<usize> {
        (0..=top).filter(|i| i % 2 == p).flat_map(|i| offsets[i]..offsets[i] + cx.slice_dim(i)).collect()
    };
    let ft = full.transpose();
    let mut kernel_dim = [0; 2];
    let mut cap = [0; 2];
    for p in 0..2 {
        // kernel of D on parity-p degrees <= N, all output rows included
        let cols = parity_cols(p, max_degree);
        let sub = ft.select_rows(&cols).transpose();
        let kernel: Vec<SparseVec> = sub.kernel().vectors().iter().map(|v| v.iter().map(|(k, c)| (cols[*k], c.clone())).collect()).collect();
        let kernel = Subspace::from_independent(window, kernel.into_iter().map(|v| truncate(&v, window)).collect())?;
        // D applied to the opposite parity in degrees <= N−1 stays in the window
        let src = if max_degree == 0 { Vec::new() } else { parity_cols(1 - p, max_degree - 1) };
        let image_vecs: Vec<SparseVec> = src.iter().map(|&c| truncate(&ft.row(c).clone(), window)).collect();
        let image = Subspace::span(window, &image_vecs);
        kernel_dim[p] = kernel.dim();
        cap[p] = kernel.intersect(&image)?.dim();
    }
    Ok(WindowReport {
        max_degree,
        kernel_dim,
        kernel_cap_image_dim: cap,
        quotient_dim: [kernel_dim[0] - cap[0], kernel_dim[1] - cap[1]],
    })
}

fn truncate(v: &SparseVec, len: usize) -> SparseVec {
    v.range(..len).map(|(k, c)| (*k, c.clone())).collect()
}

/// Checks that a one-dimensional vector is nonzero, used by tests that pick
/// witnesses.
pub fn is_nonzero(v: &SparseVec) -> bool {
    v.values().any(|c| !c.is_zero())
}

/// `Ω_{g0Δ}` in the orthonormal form for `gl(1|1)`:
/// `Σ_k (W_k² ⊗ 1 + 2 W_k ⊗ α(W_k) + 1 ⊗ α(W_k)²)` with `W = (√2 E11, i√2 E22)`,
/// which has rational coefficients after expanding the squares.
pub fn omega_g0_delta_orthonormal_gl11(cx: &DiracComplex, i: usize) -> RationalMatrix {
    use crate::algebra::E;
    let iv = RationalMatrix::identity(cx.module().dim());
    let im = RationalMatrix::identity(cx.slice(i).len());
    let mut out = RationalMatrix::zeros(cx.slice_dim(i), cx.slice_dim(i));
    for (u, s) in [(E(1, 1), q(2)), (E(2, 2), q(-2))] {
        let r = cx.module().action(u);
        let a = cx.weil_matrix(cx.alpha_of(u), i);
        let term = r.mul(r).kron(&im).add(&r.kron(&a).scale(&q(2))).add(&iv.kron(&a.mul(&a)));
        out = out.add(&term.scale(&s));
    }
    out
}

/// Total harmonic dimension in the window, used to compare against the
/// slow path.
pub fn harmonic_total(report: &DiracCohomologyReport) -> usize {
    report.degrees.iter().map(|d| d.harmonic_dim).sum()
}

/// Weight of `e ⊗ 1` under the diagonal action: `wt(e) − ρ1`.
pub fn vacuum_weight(ctx: &AlgebraContext, w: &Weight) -> Weight {
    w - &ctx.roots().rho1
}
