//! Acceptance suite: twelve criteria at exact equality, one line each.
//!
//! Two criteria are stated in a form that is false as written (a sign in
//! one matrix family, trace versus supertrace in the constant). They are
//! checked literally and reported as FAIL. The target still succeeds when
//! the failure has exactly the analysed shape and the corrected statement
//! holds; any other failure makes it exit nonzero.

use std::time::{Duration, Instant};

use superdirac::algebra::{AlgebraContext, MatrixUnit, Sector, SuperElement, E};
use superdirac::cohomology::{hodge_verify, twist_compare};
use superdirac::dirac::{
    dirac_cohomology, infinitesimal_character_check, vanishing_bound, window_dirac, DiracComplex,
};
use superdirac::linalg::RationalMatrix;
use superdirac::pbw::PbwEngine;
use superdirac::rep::{ModuleData, UnitaryModule};
use superdirac::scalar::{frac, q, Q};
use superdirac::weyl::{
    adjoint_action, alpha, alpha_1, alpha_2, casimir_constant, sigma_quadratic, sp_matrix_of, weil_action, Exponents,
    OddGen, Polynomial, SpMatrix, SymQuadratic, WeilSlice,
};
use superdirac::Weight;
use superdirac_cli::{canonical, regress};

const RANKS: [(usize, usize); 4] = [(1, 1), (2, 1), (1, 2), (2, 2)];

struct Verdict {
    pass: bool,
    /// Failure of the literal statement with exactly the analysed shape.
    analysed: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict { pass, analysed: false, detail: detail.into() }
    }
}

fn ctx(m: usize, n: usize) -> AlgebraContext {
    AlgebraContext::new(m, n).unwrap()
}

// ---- dense supermatrix oracle ----

type Dense = Vec<Vec<Q>>;

fn dense_zero(s: usize) -> Dense {
    vec![vec![q(0); s]; s]
}

fn dense_of(s: usize, x: &SuperElement) -> Dense {
    let mut d = dense_zero(s);
    for (u, c) in x.terms() {
        d[u.row - 1][u.col - 1] += c;
    }
    d
}

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let s = a.len();
    let mut out = dense_zero(s);
    for i in 0..s {
        for k in 0..s {
            if a[i][k] == q(0) {
                continue;
            }
            for j in 0..s {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn odd_index(m: usize, k: usize) -> bool {
    k > m
}

fn unit_parity(m: usize, u: MatrixUnit) -> bool {
    odd_index(m, u.row) != odd_index(m, u.col)
}

/// `[A, B] = AB − (−1)^{|A||B|} BA` for homogeneous matrix units.
fn oracle_bracket(m: usize, s: usize, a: MatrixUnit, b: MatrixUnit) -> Dense {
    let da = dense_of(s, &SuperElement::unit(a));
    let db = dense_of(s, &SuperElement::unit(b));
    let ab = dense_mul(&da, &db);
    let ba = dense_mul(&db, &da);
    let sgn = if unit_parity(m, a) && unit_parity(m, b) { q(-1) } else { q(1) };
    ab.iter().zip(&ba).map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x - &sgn * y).collect()).collect()
}

/// `½ str(XY)`.
fn oracle_form(m: usize, x: &Dense, y: &Dense) -> Q {
    let p = dense_mul(x, y);
    let mut t = q(0);
    for (k, row) in p.iter().enumerate() {
        if odd_index(m, k + 1) {
            t -= &row[k];
        } else {
            t += &row[k];
        }
    }
    t * frac(1, 2)
}

fn sign(neg: bool) -> Q {
    if neg {
        q(-1)
    } else {
        q(1)
    }
}

// ---- 1 ----

fn structure_suite() -> Verdict {
    let mut checked = 0usize;
    for (m, n) in RANKS {
        let c = ctx(m, n);
        let s = m + n;
        let basis = c.basis();
        for &a in &basis {
            for &b in &basis {
                let br = c.bracket_units(a, b);
                if dense_of(s, &br) != oracle_bracket(m, s, a, b) {
                    return Verdict::new(false, format!("gl({m}|{n}) bracket [{a},{b}] disagrees with matrices"));
                }
                let (da, db) = (dense_of(s, &SuperElement::unit(a)), dense_of(s, &SuperElement::unit(b)));
                let bab = c.form_b_units(a, b);
                if bab != oracle_form(m, &da, &db) {
                    return Verdict::new(false, format!("gl({m}|{n}) B({a},{b}) disagrees with half the supertrace"));
                }
                let pa = unit_parity(m, a);
                let pb = unit_parity(m, b);
                if bab != sign(pa && pb) * c.form_b_units(b, a) {
                    return Verdict::new(false, format!("gl({m}|{n}) B not supersymmetric on {a},{b}"));
                }
                for &u in &basis {
                    let x = SuperElement::unit(a);
                    let y = SuperElement::unit(b);
                    let z = SuperElement::unit(u);
                    let pc = unit_parity(m, u);
                    let t1 = c.super_bracket(&x, &c.super_bracket(&y, &z)).scale(&sign(pa && pc));
                    let t2 = c.super_bracket(&y, &c.super_bracket(&z, &x)).scale(&sign(pb && pa));
                    let t3 = c.super_bracket(&z, &c.super_bracket(&x, &y)).scale(&sign(pc && pb));
                    if !t1.add(&t2).add(&t3).is_zero() {
                        return Verdict::new(false, format!("gl({m}|{n}) super Jacobi fails on {a},{b},{u}"));
                    }
                    if c.form_b(&c.super_bracket(&x, &y), &z) != c.form_b(&x, &c.super_bracket(&y, &z)) {
                        return Verdict::new(false, format!("gl({m}|{n}) B not invariant on {a},{b},{u}"));
                    }
                    checked += 1;
                }
            }
        }
        for i in 0..c.odd_dim() {
            for j in 0..c.odd_dim() {
                let want = if i == j { frac(1, 2) } else { q(0) };
                if c.form_b_units(c.d_unit(i), c.x_unit(j)) != want {
                    return Verdict::new(false, format!("gl({m}|{n}) B(d_{i}, x_{j}) != {want}"));
                }
            }
        }
    }
    Verdict::new(true, format!("{checked} basis triples, B(d_i,x_j) = delta_ij/2"))
}

// ---- 2 ----

fn unit_matrix(size: usize, entries: &[(usize, usize, i64)]) -> RationalMatrix {
    let mut mtx = RationalMatrix::zeros(size, size);
    for &(r, c, v) in entries {
        mtx.add_to(r, c, &q(v));
    }
    mtx
}

fn sp_families() -> Verdict {
    let mut mismatches = [0usize; 3];
    let mut corrected_ok = true;
    let mut literal_third_symplectic = false;
    let mut pairs = 0usize;
    for (m, n) in RANKS {
        let r = m * n;
        let image = |g, h| sp_matrix_of(&sigma_quadratic(&SymQuadratic::single(g, h), r)).unwrap().0;
        for i in 0..r {
            for j in 0..r {
                pairs += 1;
                let xx = unit_matrix(2 * r, &[(r + i, j, -1), (r + j, i, -1)]);
                let dd = unit_matrix(2 * r, &[(i, r + j, 1), (j, r + i, 1)]);
                let dx_literal = unit_matrix(2 * r, &[(i, j, -1), (r + j, r + i, -1)]);
                let dx_corrected = unit_matrix(2 * r, &[(i, j, -1), (r + j, r + i, 1)]);
                mismatches[0] += usize::from(image(OddGen::X(i), OddGen::X(j)) != xx);
                mismatches[1] += usize::from(image(OddGen::D(i), OddGen::D(j)) != dd);
                let dx = image(OddGen::D(i), OddGen::X(j));
                mismatches[2] += usize::from(dx != dx_literal);
                corrected_ok &= dx == dx_corrected;
                literal_third_symplectic |= SpMatrix(dx_literal).preserves_form();
            }
        }
    }
    let pass = mismatches == [0, 0, 0];
    let analysed = mismatches[0] == 0 && mismatches[1] == 0 && mismatches[2] == pairs && corrected_ok && !literal_third_symplectic;
    let detail = format!(
        "{pairs} pairs per family; mismatches x_i x_j {}, d_i d_j {}, d_i x_j {}; \
         literal d_i x_j matrix -E_ij - E_(r+j,r+i) is never symplectic; \
         true image -E_ij + E_(r+j,r+i) matches on all pairs: {corrected_ok}",
        mismatches[0], mismatches[1], mismatches[2]
    );
    Verdict { pass, analysed: !pass && analysed, detail }
}

// ---- 3 ----

fn rho1_oracle(m: usize, n: usize) -> Weight {
    // half the sum of ε_i − ε_k over i <= m < k
    let mut w = vec![q(0); m + n];
    for wi in w.iter_mut().take(m) {
        *wi = frac(n as i64, 2);
    }
    for wk in w.iter_mut().skip(m) {
        *wk = frac(-(m as i64), 2);
    }
    Weight(w)
}

/// `[X, f]` for `f` a polynomial in the `x_a`, by the derivation rule.
fn bracket_oracle(c: &AlgebraContext, u: MatrixUnit, f: &Polynomial) -> Polynomial {
    let nv = c.odd_dim();
    let mut out = Polynomial::zero(nv);
    for (e, coeff) in f.terms() {
        for a in 0..nv {
            let Some(lower) = e.checked_minus(&Exponents::unit(nv, a)) else { continue };
            let ea = q(i64::from(e.0[a]));
            for (v, cv) in c.bracket_units(u, c.x_unit(a)).terms() {
                let (sector, b) = c.classify_odd(*v).unwrap();
                assert_eq!(sector, Sector::Minus);
                out.add_term(lower.plus(&Exponents::unit(nv, b)), &(coeff * &ea * cv));
            }
        }
    }
    out
}

fn alpha_suite() -> Verdict {
    let mut pairs = 0usize;
    let mut monomials_checked = 0usize;
    for (m, n) in RANKS {
        let c = ctx(m, n);
        let even = c.even_basis();
        let images: Vec<_> = even.iter().map(|u| alpha(&c, &SuperElement::unit(*u)).unwrap()).collect();
        for (a, &u) in even.iter().enumerate() {
            for (b, &v) in even.iter().enumerate() {
                pairs += 1;
                if alpha(&c, &c.bracket_units(u, v)).unwrap() != images[a].commutator(&images[b]) {
                    return Verdict::new(false, format!("gl({m}|{n}) alpha([{u},{v}]) != [alpha {u}, alpha {v}]"));
                }
            }
        }
        let nv = c.odd_dim();
        let monos: Vec<_> = (0..=4).flat_map(|d| WeilSlice::new(nv, d).monomials().to_vec()).collect();
        let rho1 = rho1_oracle(m, n);
        for &u in &even {
            let x = SuperElement::unit(u);
            let a1 = alpha_1(&c, &x).unwrap();
            for e in &monos {
                let f = Polynomial::monomial(e.clone(), q(1));
                let lhs = weil_action(&a1, &f);
                if lhs != bracket_oracle(&c, u, &f) || lhs != adjoint_action(&c, &x, &f).unwrap() {
                    return Verdict::new(false, format!("gl({m}|{n}) linear part of alpha({u}) wrong on x^{:?}", e.0));
                }
                monomials_checked += 1;
            }
            let want = if u.row == u.col { -rho1.at(u.row).clone() } else { q(0) };
            if alpha_2(&c, &x).unwrap() != want {
                return Verdict::new(false, format!("gl({m}|{n}) constant part of alpha({u}) != {want}"));
            }
        }
    }
    Verdict::new(true, format!("{pairs} bracket pairs, {monomials_checked} (generator, monomial) actions, constant part -rho1"))
}

// ---- 4 ----

/// `tr(Ω0 | g1)` with `Ω0 = Σ_{i,j same block} 2 s_j E_ij E_ji` acting by
/// dense commutators on the odd matrix units.
fn omega0_trace_oracle(m: usize, n: usize) -> Q {
    let s = m + n;
    let c = ctx(m, n);
    let odd: Vec<MatrixUnit> = c.basis().into_iter().filter(|u| unit_parity(m, *u)).collect();
    let mut total = q(0);
    for &t in &odd {
        // coefficient of t in Ω0 · t
        let dt = dense_of(s, &SuperElement::unit(t));
        let mut acc = dense_zero(s);
        for i in 1..=s {
            for j in 1..=s {
                if odd_index(m, i) != odd_index(m, j) {
                    continue;
                }
                let coeff = if odd_index(m, j) { q(-2) } else { q(2) };
                let ej = dense_of(s, &SuperElement::unit(E(j, i)));
                let ei = dense_of(s, &SuperElement::unit(E(i, j)));
                let inner = sub(&dense_mul(&ej, &dt), &dense_mul(&dt, &ej));
                let outer = sub(&dense_mul(&ei, &inner), &dense_mul(&inner, &ei));
                for (r, row) in outer.iter().enumerate() {
                    for (k, v) in row.iter().enumerate() {
                        acc[r][k] += &coeff * v;
                    }
                }
            }
        }
        total += &acc[t.row - 1][t.col - 1];
    }
    total
}

fn sub(a: &Dense, b: &Dense) -> Dense {
    a.iter().zip(b).map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x - y).collect()).collect()
}

fn constant_c() -> Verdict {
    let mut literal_fail = Vec::new();
    let mut supertrace_ok = true;
    let mut closed_ok = true;
    let mut parts = Vec::new();
    for (m, n) in RANKS {
        let c = ctx(m, n);
        let value = match casimir_constant(&c) {
            Ok(v) => v,
            Err(e) => return Verdict::new(false, format!("gl({m}|{n}): {e}")),
        };
        let tr = omega0_trace_oracle(m, n);
        if tr != c.g0_casimir_trace_on_odd() {
            return Verdict::new(false, format!("gl({m}|{n}) trace oracle {tr} disagrees with the engine"));
        }
        if value != &tr * frac(1, 8) {
            literal_fail.push(format!("gl({m}|{n})"));
        }
        // g1 is purely odd, so its supertrace is minus the trace
        supertrace_ok &= value == -&tr * frac(1, 8);
        closed_ok &= value == frac((m * n) as i64 * (n as i64 - m as i64), 2);
        parts.push(format!("gl({m}|{n}) C={value} tr={tr}"));
    }
    let gl11_zero = casimir_constant(&ctx(1, 1)).unwrap() == q(0);
    let pass = literal_fail.is_empty() && gl11_zero;
    let analysed = gl11_zero && supertrace_ok && closed_ok && literal_fail == ["gl(2|1)", "gl(1|2)"];
    let detail = format!(
        "{}; C = tr/8 fails for [{}]; C = str/8 = -tr/8 = mn(n-m)/2 holds for all: {}; gl(1|1) C = 0: {gl11_zero}",
        parts.join(", "),
        literal_fail.join(", "),
        supertrace_ok && closed_ok
    );
    Verdict { pass, analysed: !pass && analysed, detail }
}

// ---- 5 ----

fn d_squared() -> Verdict {
    let mut symbolic = Vec::new();
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (1, 3)] {
        let c = ctx(m, n);
        let r = PbwEngine::new(&c).verify_d_squared().unwrap();
        if !r.equal {
            return Verdict::new(false, format!("gl({m}|{n}) symbolic difference {}", r.difference));
        }
        symbolic.push(format!("gl({m}|{n})"));
    }
    for (m, n) in RANKS {
        let c = ctx(m, n);
        let nat = ModuleData::natural(&c);
        let cv = q(2 * (m as i64 - n as i64));
        let cc = frac((m * n) as i64 * (n as i64 - m as i64), 2);
        let cx = DiracComplex::new(&nat, 6).unwrap();
        for i in 0..=6 {
            let rhs = cx.omega_g0_delta(i).sub(&RationalMatrix::scalar(cx.slice_dim(i), &(&cv + &cc)));
            // D² restricted to degree i from the blocks of D
            let mut d2 = RationalMatrix::zeros(cx.slice_dim(i), cx.slice_dim(i));
            let up = cx.d(i).scale(&q(2));
            let back = cx.delta(i + 1).scale(&q(-2));
            d2 = d2.add(&back.mul(&up));
            if i > 0 {
                d2 = d2.add(&cx.d(i - 1).scale(&q(2)).mul(&cx.delta(i).scale(&q(-2))));
            }
            if d2 != rhs {
                return Verdict::new(false, format!("gl({m}|{n}) nat slice {i}: D^2 != Omega_g0Delta - c_V - C"));
            }
        }
    }
    Verdict::new(true, format!("symbolic for {}; natural slices i <= 6 for all four", symbolic.join(" ")))
}

// ---- 6 ----

/// `Ω = Σ_{i,j} 2 (−1)^{|j|} ρ(E_ij) ρ(E_ji)`.
fn casimir_oracle(module: &ModuleData) -> RationalMatrix {
    let c = module.ctx();
    let s = c.size();
    let mut out = RationalMatrix::zeros(module.dim(), module.dim());
    for i in 1..=s {
        for j in 1..=s {
            let coeff = if j > c.m() { q(-2) } else { q(2) };
            out = out.add(&module.action(E(i, j)).mul(module.action(E(j, i))).scale(&coeff));
        }
    }
    out
}

fn casimir_centrality() -> Verdict {
    let mut count = 0;
    for (m, n) in RANKS {
        let c = ctx(m, n);
        let nat = ModuleData::natural(&c);
        let two = ModuleData::tensor(&nat, &nat).unwrap();
        for module in [&nat, &two] {
            let omega = casimir_oracle(module);
            if omega != module.casimir_action() {
                return Verdict::new(false, format!("gl({m}|{n}) {} Casimir disagrees with oracle", module.label()));
            }
            for u in c.basis() {
                let a = module.action(u);
                if !omega.mul(a).sub(&a.mul(&omega)).is_zero() {
                    return Verdict::new(false, format!("gl({m}|{n}) {}: [Omega, {u}] != 0", module.label()));
                }
                count += 1;
            }
        }
        if casimir_oracle(&nat) != RationalMatrix::scalar(nat.dim(), &q(2 * (m as i64 - n as i64))) {
            return Verdict::new(false, format!("gl({m}|{n}) natural Casimir != 2(m-n)"));
        }
    }
    Verdict::new(true, format!("{count} generator commutators vanish"))
}

// ---- 7 ----

fn block_diagonal(parts: &[RationalMatrix]) -> RationalMatrix {
    let total: usize = parts.iter().map(|p| p.rows()).sum();
    let mut out = RationalMatrix::zeros(total, total);
    let mut off = 0;
    for p in parts {
        for (r, row) in p.row_vectors().iter().enumerate() {
            for (c, v) in row {
                out.set(off + r, off + c, v.clone());
            }
        }
        off += p.rows();
    }
    out
}

fn hodge_fixtures() -> Vec<ModuleData> {
    let mut out: Vec<ModuleData> = RANKS.iter().map(|&(m, n)| ModuleData::natural(&ctx(m, n))).collect();
    let c = ctx(1, 1);
    let nat = ModuleData::natural(&c);
    out.push(ModuleData::tensor(&nat, &nat).unwrap());
    out
}

fn unitarity_and_adjointness() -> Verdict {
    let mut validated = 0;
    for (m, n) in RANKS {
        let c = ctx(m, n);
        let nat = ModuleData::natural(&c);
        let two = ModuleData::tensor(&nat, &nat).unwrap();
        let three = ModuleData::tensor(&two, &nat).unwrap();
        for module in [ModuleData::trivial(&c), nat, two, three] {
            let r = module.validate_unitary();
            if !r.passed {
                return Verdict::new(false, r.to_string());
            }
            validated += 1;
        }
        for b in ModuleData::tensor(&ModuleData::natural(&c), &ModuleData::natural(&c)).unwrap().eigenblocks().unwrap().blocks {
            let r = b.module.validate_unitary();
            if !r.passed {
                return Verdict::new(false, r.to_string());
            }
            validated += 1;
        }
    }
    let mut pairs = 0usize;
    let mut modules: Vec<ModuleData> = RANKS.iter().map(|&(m, n)| ModuleData::trivial(&ctx(m, n))).collect();
    modules.extend(hodge_fixtures());
    for module in &modules {
        let cx = DiracComplex::new(module, 6).unwrap();
        for i in 0..=6 {
            let (g, gn) = (cx.gram(i), cx.gram(i + 1));
            let (d, dl) = (cx.d(i), cx.delta(i + 1));
            // ⟨d e_a, e_b⟩ = (dᵀ G_{i+1})_{ab}, ⟨e_a, δ e_b⟩ = (G_i δ)_{ab}
            let lhs = d.transpose().mul(&gn);
            let rhs = g.mul(&dl);
            for a in 0..cx.slice_dim(i) {
                for b in 0..cx.slice_dim(i + 1) {
                    if lhs.get(a, b) != rhs.get(a, b) {
                        return Verdict::new(false, format!("{} degree {i}: <d e{a}, e{b}> != <e{a}, delta e{b}>", module.label()));
                    }
                    pairs += 1;
                }
            }
        }
        let dw = window_dirac(&cx, 6);
        let gw = block_diagonal(&(0..=6).map(|i| cx.gram(i)).collect::<Vec<_>>());
        if !dw.transpose().mul(&gw).add(&gw.mul(&dw)).is_zero() {
            return Verdict::new(false, format!("{}: <Dv,w> + <v,Dw> != 0", module.label()));
        }
    }
    Verdict::new(true, format!("{validated} modules unitary; {pairs} basis pairs adjoint; D skew on {} windows", modules.len()))
}

// ---- 8 ----

fn hodge_suite() -> Verdict {
    let mut degrees = 0;
    for module in hodge_fixtures() {
        let label = format!("gl({}|{}) {}", module.ctx().m(), module.ctx().n(), module.label());
        let u = UnitaryModule::new(module).unwrap();
        let report = hodge_verify(&u, 6).unwrap();
        if !report.passed || report.degrees.len() != 6 {
            return Verdict::new(false, format!("{label}: {:?}", report.counterexamples));
        }
        let cx = DiracComplex::new(&u, 6).unwrap();
        for i in 0..=5 {
            let harm = cx.slice_dim(i) - cx.d(i).vstack(&cx.delta(i)).bareiss_rank();
            let im_d = if i == 0 { 0 } else { cx.d(i - 1).bareiss_rank() };
            let im_delta = cx.delta(i + 1).bareiss_rank();
            if cx.slice_dim(i) != harm + im_d + im_delta || harm != report.degrees[i].harmonic_dim {
                return Verdict::new(false, format!("{label} degree {i}: {} != {harm} + {im_d} + {im_delta}", cx.slice_dim(i)));
            }
            degrees += 1;
        }
    }
    Verdict::new(true, format!("{degrees} (module, degree) slices decompose"))
}

// ---- 9 ----

fn twist_suite() -> Verdict {
    let mut parts = Vec::new();
    for module in hodge_fixtures() {
        let label = format!("gl({}|{}) {}", module.ctx().m(), module.ctx().n(), module.label());
        let u = UnitaryModule::new(module).unwrap();
        let t = twist_compare(&u, 5).unwrap();
        if let Some(d) = t.degrees.iter().find(|d| !d.matches()) {
            return Verdict::new(false, format!("{label} degree {}: {:?}", d.degree, d));
        }
        parts.push(format!("{label} H_D = {}+{}", t.dirac_totals.0, t.dirac_totals.1));
    }
    Verdict::new(true, parts.join(", "))
}

// ---- 10 ----

fn infinitesimal_character() -> Verdict {
    let mut fixtures = 0;
    for module in hodge_fixtures() {
        let (m, n) = (module.ctx().m(), module.ctx().n());
        let cc = frac((m * n) as i64 * (n as i64 - m as i64), 2);
        for block in module.eigenblocks().unwrap().blocks {
            let label = format!("gl({m}|{n}) {}", block.module.label());
            let cv = casimir_oracle(&block.module).is_scalar().expect("blocks carry a scalar Casimir");
            let u = UnitaryModule::new(block.module).unwrap();
            let r = infinitesimal_character_check(&u, 6).unwrap();
            if r.target != &cv + &cc {
                return Verdict::new(false, format!("{label}: target {} != {}", r.target, &cv + &cc));
            }
            if !r.passed {
                return Verdict::new(false, format!("{label}: harmonic slices do not all act by {}", r.target));
            }
            match &r.negative_control {
                Some(nc) if nc.invertible => {}
                other => return Verdict::new(false, format!("{label}: negative control {other:?}")),
            }
            fixtures += 1;
        }
    }
    Verdict::new(true, format!("{fixtures} fixtures act by c_V + C on harmonics; each negative control misses it"))
}

// ---- 11 ----

fn binomial_oracle(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn trivial_module() -> Verdict {
    for (m, n) in RANKS {
        let c = ctx(m, n);
        let triv = ModuleData::trivial(&c);
        let cx = DiracComplex::new(&triv, 8).unwrap();
        for i in 0..=8 {
            if !cx.d(i).is_zero() || !cx.delta(i).is_zero() || !cx.dirac(i).is_zero() {
                return Verdict::new(false, format!("gl({m}|{n}) triv degree {i}: operators nonzero"));
            }
        }
        let u = UnitaryModule::new(triv.clone()).unwrap();
        let report = dirac_cohomology(&u, 8).unwrap();
        let mn = m * n;
        for d in &report.degrees {
            let want = binomial_oracle(mn + d.degree - 1, d.degree);
            if d.harmonic_dim != want {
                return Verdict::new(false, format!("gl({m}|{n}) degree {}: dim {} != {want}", d.degree, d.harmonic_dim));
            }
        }
        let b = vanishing_bound(&triv, 8).unwrap();
        if b.bound.is_some() || !b.describe().starts_with("no bound") {
            return Verdict::new(false, format!("gl({m}|{n}) vanishing bound: {}", b.describe()));
        }
    }
    Verdict::new(true, "d = delta = D = 0, dim H_D^i = C(mn+i-1, i) for i <= 8, no vanishing bound")
}

// ---- 12 ----

fn regression() -> Verdict {
    let results = regress::run(&regress::default_dir(), false).unwrap();
    for r in &results {
        if !r.identical || !r.checks_passed {
            return Verdict::new(false, format!("{}: identical {} checks {} {:?}", r.name, r.identical, r.checks_passed, r.note));
        }
        let stored = std::fs::read_to_string(regress::default_dir().join(&r.name)).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&stored).unwrap();
        if canonical(&parsed).unwrap() != stored {
            return Verdict::new(false, format!("{} does not round-trip", r.name));
        }
    }
    Verdict::new(true, format!("{} fixtures re-derived byte-identical", results.len()))
}

fn main() {
    type Criterion = (u32, &'static str, Duration, fn() -> Verdict);
    let criteria: [Criterion; 12] = [
        (1, "structure suite", Duration::from_secs(10), structure_suite),
        (2, "sp matrix families", Duration::from_secs(60), sp_families),
        (3, "alpha morphism, linear and constant parts", Duration::from_secs(60), alpha_suite),
        (4, "constant C", Duration::from_secs(60), constant_c),
        (5, "D^2 identity", Duration::from_secs(120), d_squared),
        (6, "Casimir centrality", Duration::from_secs(60), casimir_centrality),
        (7, "unitarity and adjointness", Duration::from_secs(300), unitarity_and_adjointness),
        (8, "Hodge decomposition", Duration::from_secs(300), hodge_suite),
        (9, "twist isomorphism", Duration::from_secs(300), twist_suite),
        (10, "infinitesimal character", Duration::from_secs(300), infinitesimal_character),
        (11, "trivial module", Duration::from_secs(120), trivial_module),
        (12, "regression fixtures", Duration::from_secs(600), regression),
    ];
    let mut passed = 0;
    let mut analysed = 0;
    let mut unexpected = Vec::new();
    for (id, name, budget, f) in criteria {
        let start = Instant::now();
        let mut v = f();
        let elapsed = start.elapsed();
        if elapsed > budget {
            v.pass = false;
            v.analysed = false;
            v.detail = format!("over budget {budget:?}; {}", v.detail);
        }
        let status = if v.pass {
            passed += 1;
            "PASS"
        } else if v.analysed {
            analysed += 1;
            "FAIL"
        } else {
            unexpected.push(id);
            "FAIL"
        };
        let note = if !v.pass && v.analysed { " (literal statement false; corrected form holds)" } else { "" };
        println!("criterion {id:>2} {status} {name}{note} [{:.2}s]: {}", elapsed.as_secs_f64(), v.detail);
    }
    println!("acceptance: {passed} passed, {analysed} failed as analysed, {} failed unexpectedly", unexpected.len());
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
