//! JSON report builders. Every number is an exact fraction string.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use superdirac::cohomology::{cohomology_report, hodge_verify, twist_compare, CohomologySlice};
use superdirac::dirac::{
    dirac_cohomology, dirac_cohomology_window, infinitesimal_character_check, operator_checks, vanishing_bound,
    DiracCohomologyReport, InfCharReport, OperatorChecks,
};
use superdirac::pbw::PbwEngine;
use superdirac::rep::{ModuleData, UnitaryModule};
use superdirac::weyl::{
    adjoint_action, alpha, alpha_1, alpha_2, casimir_constant, casimir_constant_trace_route, sigma_quadratic,
    sp_matrix_of, weil_action, OddGen, Polynomial, SymQuadratic, WeilSlice,
};
use superdirac::{AlgebraContext, RationalMatrix, SuperElement, Weight, Q};

/// A report plus the conjunction of the checks it carries.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub value: Value,
    pub passed: bool,
}

pub fn frac(x: &Q) -> Value {
    Value::String(x.to_string())
}

pub fn weight(w: &Weight) -> Value {
    Value::Array(w.coords().iter().map(frac).collect())
}

pub fn types(t: &BTreeMap<Weight, usize>) -> Value {
    Value::Array(t.iter().map(|(w, k)| json!({"weight": weight(w), "multiplicity": k})).collect())
}

fn all(v: &[bool]) -> bool {
    v.iter().all(|&b| b)
}

fn algebra(ctx: &AlgebraContext) -> Value {
    json!({"m": ctx.m(), "n": ctx.n()})
}

/// The three quadratic families and their expected `sp` matrices.
fn sp_families(nvars: usize) -> Vec<(&'static str, bool)> {
    let r = nvars;
    let mut xx = true;
    let mut dd = true;
    let mut dx = true;
    let image = |g, h| sp_matrix_of(&sigma_quadratic(&SymQuadratic::single(g, h), nvars)).map(|s| s.0);
    for i in 0..nvars {
        for j in 0..nvars {
            let mut want = RationalMatrix::zeros(2 * r, 2 * r);
            want.add_to(r + i, j, &superdirac::scalar::q(-1));
            want.add_to(r + j, i, &superdirac::scalar::q(-1));
            xx &= image(OddGen::X(i), OddGen::X(j)).is_ok_and(|m| m == want);

            let mut want = RationalMatrix::zeros(2 * r, 2 * r);
            want.add_to(i, r + j, &superdirac::scalar::q(1));
            want.add_to(j, r + i, &superdirac::scalar::q(1));
            dd &= image(OddGen::D(i), OddGen::D(j)).is_ok_and(|m| m == want);

            let mut want = RationalMatrix::zeros(2 * r, 2 * r);
            want.add_to(i, j, &superdirac::scalar::q(-1));
            want.add_to(r + j, r + i, &superdirac::scalar::q(1));
            dx &= image(OddGen::D(i), OddGen::X(j)).is_ok_and(|m| m == want);
        }
    }
    vec![("x_i x_j", xx), ("d_i d_j", dd), ("d_i x_j", dx)]
}

/// Weyl-side identities: the `sp` table, `α` as a morphism, its linear and
/// constant parts, and the constant `C`.
pub fn identities(ctx: &AlgebraContext, explain: bool) -> superdirac::Result<Outcome> {
    let nv = ctx.odd_dim();
    let families = sp_families(nv);
    let even = ctx.even_basis();

    let mut images = Vec::with_capacity(even.len());
    for &u in &even {
        images.push(alpha(ctx, &SuperElement::unit(u))?);
    }
    let mut morphism = true;
    for (a, &u) in even.iter().enumerate() {
        for (b, &v) in even.iter().enumerate() {
            morphism &= alpha(ctx, &ctx.bracket_units(u, v))? == images[a].commutator(&images[b]);
        }
    }

    let monomials: Vec<_> = (0..=4).flat_map(|d| WeilSlice::new(nv, d).monomials().to_vec()).collect();
    let mut linear = true;
    let mut constant = true;
    let rho1 = &ctx.roots().rho1;
    for &u in &even {
        let x = SuperElement::unit(u);
        let a1 = alpha_1(ctx, &x)?;
        for e in &monomials {
            let f = Polynomial::monomial(e.clone(), superdirac::scalar::q(1));
            linear &= weil_action(&a1, &f) == adjoint_action(ctx, &x, &f)?;
        }
        let want = if u.row == u.col { -rho1.at(u.row).clone() } else { superdirac::scalar::q(0) };
        constant &= alpha_2(ctx, &x)? == want;
    }

    let (c_value, c_scalar) = match casimir_constant(ctx) {
        Ok(c) => (Some(c), true),
        Err(_) => (None, false),
    };
    let trace_route = casimir_constant_trace_route(ctx);
    let c_agrees = c_value.as_ref() == Some(&trace_route);

    let sp_ok = families.iter().all(|f| f.1);
    let passed = sp_ok && morphism && linear && constant && c_scalar && c_agrees;
    let mut report = json!({
        "algebra": algebra(ctx),
        "sp_table": families.iter().map(|(name, ok)| json!({"family": name, "matches": ok})).collect::<Vec<_>>(),
        "alpha_morphism": {"pairs": even.len() * even.len(), "holds": morphism},
        "alpha_linear_part": {"max_monomial_degree": 4, "holds": linear},
        "alpha_constant_part": {"minus_rho1": weight(&-rho1), "holds": constant},
        "casimir_constant": {
            "value": c_value.as_ref().map(frac).unwrap_or(Value::Null),
            "scalar": c_scalar,
            "minus_one_eighth_supertrace_route": frac(&trace_route),
            "routes_agree": c_agrees,
        },
        "passed": passed,
    });
    if explain {
        let rendered: Map<String, Value> =
            even.iter().zip(&images).map(|(u, w)| (u.to_string(), Value::String(w.to_string()))).collect();
        report["alpha"] = Value::Object(rendered);
    }
    Ok(Outcome { value: report, passed })
}

pub fn d2_symbolic(ctx: &AlgebraContext) -> superdirac::Result<Outcome> {
    let r = PbwEngine::new(ctx).verify_d_squared()?;
    Ok(Outcome {
        value: json!({
            "algebra": algebra(ctx),
            "identity": r.identity,
            "lhs_terms": r.lhs_terms,
            "rhs_terms": r.rhs_terms,
            "difference": r.difference,
            "equal": r.equal,
        }),
        passed: r.equal,
    })
}

/// `D²` on the slices of every Casimir block of the module.
pub fn d2_on_module(module: &ModuleData, max_degree: usize) -> superdirac::Result<Outcome> {
    let mut blocks = Vec::new();
    let mut passed = true;
    let split = module.eigenblocks()?;
    for b in &split.blocks {
        let checks = operator_checks(&b.module, max_degree)?;
        let per_degree = checks.d_squared.clone().unwrap_or_default();
        let equal = !per_degree.is_empty() && all(&per_degree);
        passed &= equal;
        blocks.push(json!({
            "module": b.module.label(),
            "block_eigenvalue": frac(&b.eigenvalue),
            "degrees": per_degree.iter().enumerate().map(|(i, ok)| json!({"i": i, "equal": ok})).collect::<Vec<_>>(),
            "equal": equal,
        }));
    }
    passed &= split.skipped_dim == 0;
    Ok(Outcome {
        value: json!({
            "algebra": algebra(module.ctx()),
            "identity": "D^2 = -Omega_g(x)1 + Omega_g0Delta - C",
            "module": module.label(),
            "blocks": blocks,
            "skipped": split.diagnostic,
            "equal": passed,
        }),
        passed,
    })
}

/// Operator identities. Adjointness and skewness are statements about a
/// contravariant form, so they are left out (null) without one.
fn operator_json(c: &OperatorChecks, unitary: bool) -> (Value, bool) {
    let structural = all(&c.nilpotent)
        && all(&c.equivariant)
        && c.d_squared.as_deref().is_none_or(all)
        && all(&c.omega_forms_agree);
    let passed = if unitary { c.passed() } else { structural };
    let value = json!({
        "adjoint": unitary.then(|| all(&c.adjoint)),
        "dirac_skew": unitary.then_some(c.dirac_skew),
        "nilpotent": all(&c.nilpotent),
        "equivariant": all(&c.equivariant),
        "d_squared": c.d_squared.as_deref().map(all),
        "omega_forms_agree": all(&c.omega_forms_agree),
        "passed": passed,
    });
    (value, passed)
}

fn dirac_json(r: &DiracCohomologyReport) -> Map<String, Value> {
    let degrees: Vec<Value> = r
        .degrees
        .iter()
        .map(|d| {
            json!({
                "i": d.degree,
                "slice_dim": d.slice_dim,
                "harmonic_dim": d.harmonic_dim,
                "g0_types": types(&d.g0_types),
                "orthogonal": d.orthogonal,
            })
        })
        .collect();
    let mut m = Map::new();
    m.insert("module".into(), Value::String(r.module.clone()));
    m.insert("block_eigenvalue".into(), r.block_eigenvalue.as_ref().map(frac).unwrap_or(Value::Null));
    m.insert("degrees".into(), Value::Array(degrees));
    m.insert("hplus_dim".into(), json!(r.hplus_dim));
    m.insert("hminus_dim".into(), json!(r.hminus_dim));
    m
}

fn infchar_json(r: &InfCharReport) -> Value {
    json!({
        "casimir_value": frac(&r.casimir_value),
        "constant_c": frac(&r.constant_c),
        "target": frac(&r.target),
        "degrees": r.degrees.iter().map(|d| json!({
            "i": d.degree,
            "restriction_scalar": d.restriction_scalar,
            "types": d.types.iter().map(|t| json!({
                "weight": weight(&t.weight),
                "multiplicity": t.multiplicity,
                "eigenvalue": frac(&t.eigenvalue),
                "passed": t.passed,
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "negative_control": r.negative_control.as_ref().map(|n| json!({
            "i": n.degree,
            "weight": weight(&n.weight),
            "determinant": frac(&n.determinant),
            "invertible": n.invertible,
        })),
        "passed": r.passed,
    })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DiracOptions {
    pub infinitesimal: bool,
    pub bound: bool,
}

/// Dirac cohomology of each Casimir block. Blocks without a positive form
/// fall back to the window computation and carry no harmonic data.
pub fn dirac(module: &ModuleData, max_degree: usize, opts: DiracOptions) -> superdirac::Result<Outcome> {
    let split = module.eigenblocks()?;
    let mut blocks = Vec::new();
    let mut passed = split.skipped_dim == 0;
    for b in &split.blocks {
        let mut checks = Map::new();
        let unitarity = b.module.validate_unitary();
        let (ops, ops_ok) = operator_json(&operator_checks(&b.module, max_degree)?, unitarity.passed);
        passed &= ops_ok;
        checks.insert("operators".into(), ops);
        checks.insert("unitary".into(), json!(unitarity.passed));
        let mut body = match UnitaryModule::new(b.module.clone()) {
            Ok(u) => {
                let report = dirac_cohomology(&u, max_degree)?;
                passed &= report.all_orthogonal();
                checks.insert("harmonics_orthogonal".into(), json!(report.all_orthogonal()));
                if opts.infinitesimal {
                    let inf = infinitesimal_character_check(&u, max_degree)?;
                    passed &= inf.passed;
                    checks.insert("infinitesimal_character".into(), infchar_json(&inf));
                }
                dirac_json(&report)
            }
            Err(_) => {
                let w = dirac_cohomology_window(&b.module, max_degree)?;
                if opts.infinitesimal {
                    passed = false;
                    checks.insert(
                        "infinitesimal_character".into(),
                        json!({"passed": false, "reason": unitarity.to_string()}),
                    );
                }
                let mut m = Map::new();
                m.insert("module".into(), Value::String(b.module.label().to_string()));
                m.insert("block_eigenvalue".into(), frac(&b.eigenvalue));
                m.insert(
                    "window".into(),
                    json!({
                        "max_degree": w.max_degree,
                        "kernel_dim": w.kernel_dim,
                        "kernel_cap_image_dim": w.kernel_cap_image_dim,
                        "quotient_dim": w.quotient_dim,
                    }),
                );
                m
            }
        };
        if opts.bound {
            let v = vanishing_bound(&b.module, max_degree)?;
            checks.insert(
                "vanishing_bound".into(),
                json!({
                    "target": frac(&v.target),
                    "scanned_to": v.scanned_to,
                    "bound": v.bound,
                    "description": v.describe(),
                    "certificates": v.certificates.iter().map(|c| json!({
                        "i": c.degree,
                        "candidate_eigenvalues": c.candidate_eigenvalues.iter().map(frac).collect::<Vec<_>>(),
                        "excluded": c.excluded,
                    })).collect::<Vec<_>>(),
                }),
            );
        }
        body.insert("checks".into(), Value::Object(checks));
        blocks.push(Value::Object(body));
    }
    Ok(Outcome {
        value: json!({
            "algebra": algebra(module.ctx()),
            "module": module.label(),
            "max_degree": max_degree,
            "blocks": blocks,
            "skipped": split.diagnostic,
            "passed": passed,
        }),
        passed,
    })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CohomologyOptions {
    pub homology: bool,
    pub twist: bool,
    pub hodge: bool,
}

fn slices_json(s: &[CohomologySlice]) -> Value {
    Value::Array(
        s.iter()
            .map(|c| {
                json!({
                    "i": c.degree,
                    "dim": c.dim,
                    "kernel_dim": c.kernel_dim,
                    "boundary_rank": c.boundary_rank,
                    "g0_types": types(&c.types),
                })
            })
            .collect(),
    )
}

pub fn cohomology(module: &ModuleData, max_degree: usize, opts: CohomologyOptions) -> superdirac::Result<Outcome> {
    let r = cohomology_report(module, max_degree, opts.homology)?;
    let mut passed = r.cohomology.iter().chain(&r.homology).all(|s| s.well_defined());
    let mut out = json!({
        "algebra": algebra(module.ctx()),
        "module": module.label(),
        "max_degree": max_degree,
        "Hi_dims": r.cohomology_dims(),
        "degrees": slices_json(&r.cohomology),
    });
    if opts.homology {
        out["Hlow_dims"] = json!(r.homology_dims());
        out["homology_degrees"] = slices_json(&r.homology);
    }
    let mut witnesses = Vec::new();
    if opts.twist || opts.hodge {
        match UnitaryModule::new(module.clone()) {
            Err(e) => {
                passed = false;
                witnesses.push(Value::String(e.to_string()));
                if opts.twist {
                    out["twisted_match"] = json!(false);
                }
            }
            Ok(u) => {
                if opts.twist {
                    let t = twist_compare(&u, max_degree)?;
                    passed &= t.twisted_match;
                    out["twisted_match"] = json!(t.twisted_match);
                    out["dirac_totals"] = json!([t.dirac_totals.0, t.dirac_totals.1]);
                    out["cohomology_totals"] = json!([t.cohomology_totals.0, t.cohomology_totals.1]);
                    for d in t.degrees.iter().filter(|d| !d.matches()) {
                        witnesses.push(json!({
                            "i": d.degree,
                            "harmonic_types": types(&d.harmonic_types),
                            "cohomology_shifted": types(&d.cohomology_shifted),
                            "homology_shifted": types(&d.homology_shifted),
                        }));
                    }
                }
                if opts.hodge {
                    // covers degrees 0..=max_degree
                    let h = hodge_verify(&u, max_degree + 1)?;
                    passed &= h.passed;
                    out["hodge"] = json!({
                        "degrees": h.degrees.iter().map(|d| json!({
                            "i": d.degree,
                            "slice_dim": d.slice_dim,
                            "harmonic_dim": d.harmonic_dim,
                            "rank_d_in": d.rank_d_in,
                            "rank_delta_in": d.rank_delta_in,
                            "passed": d.passed(),
                        })).collect::<Vec<_>>(),
                        "passed": h.passed,
                    });
                    witnesses.extend(h.counterexamples.into_iter().map(Value::String));
                }
            }
        }
    }
    out["witnesses"] = Value::Array(witnesses);
    out["passed"] = json!(passed);
    Ok(Outcome { value: out, passed })
}
