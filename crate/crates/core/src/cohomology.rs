//! `H^i(g+, V)` from the `d`-complex and `H_i(g-, V)` from the `δ`-complex
//! on `V ⊗ S^i(g-)`, the Hodge decomposition and the `−ρ1` twist.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::Weight;
use crate::dirac::{kernel_checks, DiracComplex};
use crate::error::Result;
use crate::linalg::{RationalMatrix, Subspace};
use crate::rep::{decompose_g0, shift_multiset, type_multiset, ModuleData, UnitaryModule};

/// One degree of `H^i(g+, V)` or `H_i(g-, V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologySlice {
    pub degree: usize,
    pub dim: usize,
    pub kernel_dim: usize,
    /// Rank of the incoming differential.
    pub boundary_rank: usize,
    /// Highest weights under `ρ ⊗ 1 + 1 ⊗ ad`, computed on an echelon
    /// complement of the boundaries.
    pub types: BTreeMap<Weight, usize>,
    /// The same multiset computed on harmonic representatives, when the
    /// module has a positive contravariant form.
    pub harmonic_types: Option<BTreeMap<Weight, usize>>,
}

impl CohomologySlice {
    /// Both computations of the types agree (vacuously true without lifts).
    pub fn well_defined(&self) -> bool {
        self.harmonic_types.as_ref().is_none_or(|h| *h == self.types)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Direction {
    Plus,
    Minus,
}

fn slice_of(cx: &DiracComplex, i: usize, dir: Direction, unitary: bool) -> Result<CohomologySlice> {
    let (outgoing, incoming) = match dir {
        Direction::Plus => (cx.d(i), if i == 0 { RationalMatrix::zeros(cx.slice_dim(0), 0) } else { cx.d(i - 1) }),
        Direction::Minus => (cx.delta(i), cx.delta(i + 1)),
    };
    let ker = outgoing.kernel();
    let im = incoming.image();
    let action = cx.adjoint_model_action(i)?;
    let (_, quotient) = action.quotient(&ker, &im)?;
    let types = type_multiset(&decompose_g0(cx.ctx(), &quotient)?);
    let harmonic_types = if unitary {
        let h = cx.harmonic_subspace(i)?;
        Some(type_multiset(&decompose_g0(cx.ctx(), &action.restrict(&h)?)?))
    } else {
        None
    };
    Ok(CohomologySlice {
        degree: i,
        dim: ker.dim() - im.dim(),
        kernel_dim: ker.dim(),
        boundary_rank: im.dim(),
        types,
        harmonic_types,
    })
}

fn is_unitary(module: &ModuleData) -> bool {
    module.validate_unitary().passed
}

/// `H^i(g+, V) = Ker d_i / Im d_{i−1}`.
pub fn g_plus_cohomology(module: &ModuleData, i: usize) -> Result<CohomologySlice> {
    slice_of(&DiracComplex::new(module, i)?, i, Direction::Plus, is_unitary(module))
}

/// `H_i(g-, V) = Ker δ_i / Im δ_{i+1}`.
pub fn g_minus_homology(module: &ModuleData, i: usize) -> Result<CohomologySlice> {
    slice_of(&DiracComplex::new(module, i)?, i, Direction::Minus, is_unitary(module))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub module: String,
    pub cohomology: Vec<CohomologySlice>,
    pub homology: Vec<CohomologySlice>,
}

impl CohomologyReport {
    pub fn cohomology_dims(&self) -> Vec<usize> {
        self.cohomology.iter().map(|s| s.dim).collect()
    }

    pub fn homology_dims(&self) -> Vec<usize> {
        self.homology.iter().map(|s| s.dim).collect()
    }
}

/// Both complexes on degrees `0..=max_degree`.
pub fn cohomology_report(module: &ModuleData, max_degree: usize, with_homology: bool) -> Result<CohomologyReport> {
    let cx = DiracComplex::new(module, max_degree)?;
    let unitary = is_unitary(module);
    let run = |dir| (0..=max_degree).into_par_iter().map(|i| slice_of(&cx, i, dir, unitary)).collect::<Result<Vec<_>>>();
    Ok(CohomologyReport {
        module: module.label().to_string(),
        cohomology: run(Direction::Plus)?,
        homology: if with_homology { run(Direction::Minus)? } else { Vec::new() },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeDegree {
    pub degree: usize,
    pub slice_dim: usize,
    pub harmonic_dim: usize,
    pub rank_d_in: usize,
    pub rank_delta_in: usize,
    /// `dim = dim Harm + rank d_{i−1} + rank δ_{i+1}`.
    pub dimension_identity: bool,
    /// The stacked bases of the three summands are independent.
    pub direct_sum: bool,
    /// `Harm ⊥ Im d`, `Harm ⊥ Im δ`, `Im d ⊥ Im δ`.
    pub orthogonal: [bool; 3],
    /// `Ker d = Harm ⊕ Im d`.
    pub kernel_d_split: bool,
    /// `Ker δ = Harm ⊕ Im δ`.
    pub kernel_delta_split: bool,
    /// `Ker D² = Ker D = Ker d ∩ Ker δ`.
    pub kernel_equalities: bool,
    /// `V⊗M^i = Ker D² ⊕ Im D²`.
    pub laplacian_split: bool,
    /// `rank δ_{i+1} = rank d_i`.
    pub rank_duality: bool,
}

impl HodgeDegree {
    pub fn passed(&self) -> bool {
        self.dimension_identity
            && self.direct_sum
            && self.orthogonal.iter().all(|&b| b)
            && self.kernel_d_split
            && self.kernel_delta_split
            && self.kernel_equalities
            && self.laplacian_split
            && self.rank_duality
    }

    fn counterexample(&self) -> Option<String> {
        if self.passed() {
            return None;
        }
        Some(format!("degree {}: {:?}", self.degree, self))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeReport {
    pub module: String,
    pub degrees: Vec<HodgeDegree>,
    pub passed: bool,
    pub counterexamples: Vec<String>,
}

fn pairing_vanishes(g: &RationalMatrix, a: &Subspace, b: &Subspace) -> bool {
    if a.dim() == 0 || b.dim() == 0 {
        return true;
    }
    a.basis_matrix().transpose().mul(g).mul(&b.basis_matrix()).is_zero()
}

fn direct_sum_equals(whole: &Subspace, a: &Subspace, b: &Subspace) -> Result<bool> {
    Ok(Subspace::is_direct_sum(&[a, b]) && a.sum(b)?.same_as(whole))
}

/// Hodge decomposition `V⊗M^i = Harm_i ⊕ Im d_{i−1} ⊕ Im δ_{i+1}` for
/// `i < max_degree`, with all certificates.
pub fn hodge_verify(module: &UnitaryModule, max_degree: usize) -> Result<HodgeReport> {
    let cx = DiracComplex::new(module, max_degree)?;
    let degrees = (0..max_degree)
        .into_par_iter()
        .map(|i| {
            let g = cx.gram(i);
            let d_i = cx.d(i);
            let delta_i = cx.delta(i);
            let ker_d = d_i.kernel();
            let ker_delta = delta_i.kernel();
            let harm = ker_d.intersect(&ker_delta)?;
            let im_d = if i == 0 { Subspace::zero(cx.slice_dim(0)) } else { cx.d(i - 1).image() };
            let delta_next = cx.delta(i + 1);
            let im_delta = delta_next.image();
            let n = cx.slice_dim(i);
            let kc = kernel_checks(module, i)?;
            Ok(HodgeDegree {
                degree: i,
                slice_dim: n,
                harmonic_dim: harm.dim(),
                rank_d_in: im_d.dim(),
                rank_delta_in: im_delta.dim(),
                dimension_identity: n == harm.dim() + im_d.dim() + im_delta.dim(),
                direct_sum: Subspace::is_direct_sum(&[&harm, &im_d, &im_delta]),
                orthogonal: [
                    pairing_vanishes(&g, &harm, &im_d),
                    pairing_vanishes(&g, &harm, &im_delta),
                    pairing_vanishes(&g, &im_d, &im_delta),
                ],
                kernel_d_split: direct_sum_equals(&ker_d, &harm, &im_d)?,
                kernel_delta_split: direct_sum_equals(&ker_delta, &harm, &im_delta)?,
                kernel_equalities: kc.equalities && kc.harmonic == harm.dim(),
                laplacian_split: kc.direct_sum,
                rank_duality: delta_next.rank() == d_i.rank(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let counterexamples: Vec<String> = degrees.iter().filter_map(|d| d.counterexample()).collect();
    Ok(HodgeReport { module: module.label().to_string(), passed: counterexamples.is_empty(), degrees, counterexamples })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistDegree {
    pub degree: usize,
    pub harmonic_types: BTreeMap<Weight, usize>,
    /// `types(H^i(g+, V)) − ρ1`.
    pub cohomology_shifted: BTreeMap<Weight, usize>,
    /// `types(H_i(g-, V)) − ρ1`.
    pub homology_shifted: BTreeMap<Weight, usize>,
}

impl TwistDegree {
    pub fn matches(&self) -> bool {
        self.harmonic_types == self.cohomology_shifted && self.harmonic_types == self.homology_shifted
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistReport {
    pub module: String,
    pub degrees: Vec<TwistDegree>,
    /// `(dim H_D^+, dim H_D^−)` summed over the scanned degrees.
    pub dirac_totals: (usize, usize),
    /// Cohomology dimensions summed over even and odd degrees.
    pub cohomology_totals: (usize, usize),
    pub twisted_match: bool,
}

/// Compares `g0`-types of the harmonics (diagonal action) with those of
/// `g±` (co)homology (adjoint action) shifted by `−ρ1`.
pub fn twist_compare(module: &UnitaryModule, max_degree: usize) -> Result<TwistReport> {
    let cx = DiracComplex::new(module, max_degree)?;
    let ctx = module.ctx();
    let shift = -&ctx.roots().rho1;
    let degrees = (0..=max_degree)
        .into_par_iter()
        .map(|i| {
            let h = cx.harmonic_subspace(i)?;
            let harmonic_types = type_multiset(&decompose_g0(ctx, &cx.g0_action(i).restrict(&h)?)?);
            let up = slice_of(&cx, i, Direction::Plus, false)?;
            let down = slice_of(&cx, i, Direction::Minus, false)?;
            Ok(TwistDegree {
                degree: i,
                harmonic_types,
                cohomology_shifted: shift_multiset(&up.types, &shift),
                homology_shifted: shift_multiset(&down.types, &shift),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = |parity: usize, f: &dyn Fn(&TwistDegree) -> usize| -> usize {
        degrees.iter().filter(|d| d.degree % 2 == parity).map(f).sum()
    };
    let hd = |d: &TwistDegree| d.harmonic_types.values().sum::<usize>();
    let hc = |d: &TwistDegree| d.cohomology_shifted.values().sum::<usize>();
    let dirac_totals = (total(0, &hd), total(1, &hd));
    let cohomology_totals = (total(0, &hc), total(1, &hc));
    Ok(TwistReport {
        module: module.label().to_string(),
        twisted_match: degrees.iter().all(|d| d.matches()),
        degrees,
        dirac_totals,
        cohomology_totals,
    })
}

/// `Σ_{i<=b} (−1)^i dim C^i = Σ_{i<=b} (−1)^i dim H^i + (−1)^b rank d_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub top: usize,
    pub chain_alternating: i64,
    pub cohomology_alternating: i64,
    pub top_rank: usize,
    pub consistent: bool,
}

pub fn euler_check(module: &ModuleData, top: usize) -> Result<EulerReport> {
    let cx = DiracComplex::new(module, top)?;
    let sgn = |i: usize| if i % 2 == 0 { 1i64 } else { -1 };
    let ranks: Vec<usize> = (0..=top).into_par_iter().map(|i| cx.d(i).rank()).collect();
    let mut chain = 0i64;
    let mut coh = 0i64;
    for i in 0..=top {
        let dim = cx.slice_dim(i);
        let kernel = dim - ranks[i];
        let boundaries = if i == 0 { 0 } else { ranks[i - 1] };
        chain += sgn(i) * dim as i64;
        coh += sgn(i) * (kernel - boundaries) as i64;
    }
    let top_rank = ranks[top];
    Ok(EulerReport {
        top,
        chain_alternating: chain,
        cohomology_alternating: coh,
        top_rank,
        consistent: chain == coh + sgn(top) * top_rank as i64,
    })
}
