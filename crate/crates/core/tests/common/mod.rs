//! Shared generators, oracles and the acceptance criteria, used by several test targets.
#![allow(dead_code)]

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use versuper::catalog::{self, PStructure};
use versuper::classify::{enumerate_superstructures, DEFAULT_BUDGET};
use versuper::envelop::torsion::{rank_one_case, rank_two_case, CokernelShape};
use versuper::envelop::{
    build_rewrite, confluence_check, dims_oracle, graded_dims, hilbert_closed_form, parse_poly, presentation_check, Flavor,
    Presentation, DEFAULT_WORD_BUDGET,
};
use versuper::io::PresentationSpec;
use versuper::mixed::lift::apply_correction;
use versuper::mixed::{
    check_operadic, is_genuine, lift_step, lift_to, reduce, standard_d, JacobiForm, LiftStatus,
    MixedLieAlgebra,
};
use versuper::scalars::matrix::subspace;
use versuper::scalars::{FieldScalar, GaloisField, Matrix, Scalar, TruncRing, Vector};
use versuper::supermod::{braiding_h, decompose, standard, HModule, SuperDim, SuperHModule};
use versuper::verlie::{
    alternator_analysis, check_operadic_axioms, check_pbw_condition, check_restricted, check_superalgebra, gl,
    VerLieAlgebra,
};

pub const GF2: GaloisField = GaloisField::GF2;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(rng: &mut impl Rng, f: GaloisField) -> FieldScalar {
    f.element(rng.gen_range(0..f.order() as u16)).unwrap()
}

pub fn random_vector(rng: &mut impl Rng, f: GaloisField, n: usize) -> Vector {
    (0..n).map(|_| random_scalar(rng, f)).collect()
}

pub fn random_invertible(rng: &mut impl Rng, f: GaloisField, n: usize) -> Matrix<FieldScalar> {
    loop {
        let data = (0..n * n).map(|_| random_scalar(rng, f)).collect();
        let m = Matrix::from_rows(f, n, n, data).unwrap();
        if m.inverse().is_some() {
            return m;
        }
    }
}

pub fn random_superdim(rng: &mut impl Rng, max_total: usize) -> SuperDim {
    loop {
        let m2 = rng.gen_range(0..=max_total / 2);
        let rest = max_total - 2 * m2;
        let m0 = rng.gen_range(0..=rest);
        let m1 = rng.gen_range(0..=rest - m0);
        if m0 + m1 + m2 > 0 {
            return SuperDim::new(m0, m1, m2);
        }
    }
}

/// A random module of the given superdimension in a random basis, with V0 and
/// V1 handed over as redundant spanning sets.
pub fn random_module(rng: &mut impl Rng, f: GaloisField, sd: SuperDim) -> SuperHModule {
    let n = sd.total();
    let p = random_invertible(rng, f, n);
    let m = standard(f, sd).transform(&p).unwrap();
    let mut spread = |basis: &[Vector]| -> Vec<Vector> {
        let mut out = basis.to_vec();
        for _ in 0..rng.gen_range(0..3) {
            let mut v = vec![f.zero(); n];
            for b in basis {
                let c = random_scalar(rng, f);
                for (x, y) in v.iter_mut().zip(b) {
                    *x += c * *y;
                }
            }
            out.insert(rng.gen_range(0..=out.len()), v);
        }
        out
    };
    let (v0, v1) = (spread(m.v0()), spread(m.v1()));
    SuperHModule::new(m.d().clone(), v0, v1).unwrap()
}

/// Verdict of one acceptance criterion.
pub struct Verdict {
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict { pass, detail: detail.into() }
    }
}

fn kernel_dim(m: &HModule) -> usize {
    m.kernel().len()
}

/// Checks a decomposition of `v` against the expected superdimension, exactly.
pub fn decomposition_errors(v: &SuperHModule, expected: SuperDim) -> Vec<String> {
    let mut errs = Vec::new();
    let (f, n) = (v.field(), v.dim());
    let dec = decompose(v).unwrap();
    let sd = dec.superdim;
    if sd != expected {
        errs.push(format!("superdim {sd} != {expected}"));
    }
    let rank_d = v.d().rank();
    if sd.m0 + sd.m1 + 2 * sd.m2 != n
        || kernel_dim(v.module()) != sd.m0 + sd.m1 + sd.m2
        || rank_d != sd.m2
        || v.v0().len() != sd.m0 + sd.m2
        || v.v1().len() != sd.m1 + sd.m2
        || sd.forgetful() != (sd.m0 + sd.m1, rank_d)
    {
        errs.push(format!("dimension identities fail for {sd}"));
    }
    let c = &dec.change_of_basis;
    let Some(cinv) = c.inverse() else {
        errs.push("change of basis not invertible".into());
        return errs;
    };
    let std = standard(f, sd);
    // Reconstruct D entrywise from the standard form.
    if c.mul(std.d()).mul(&cinv) != *v.d() {
        errs.push("C D_std C^-1 != D".into());
    }
    for i in 0..2 {
        let mapped: Vec<Vector> = std.part(i).iter().map(|x| c.mul_vec(x)).collect();
        if !subspace::equal(f, n, &mapped, v.part(i)) {
            errs.push(format!("C V{i}_std != V{i}"));
        }
    }
    errs
}

/// 500 random modules over GF(2) and GF(4) of dimension at most 8.
pub fn criterion1() -> Verdict {
    let mut r = rng(1);
    let mut failures = Vec::new();
    for i in 0..500 {
        let f = if i % 2 == 0 { GaloisField::GF2 } else { GaloisField::GF4 };
        let sd = random_superdim(&mut r, 8);
        let v = random_module(&mut r, f, sd);
        let errs = decomposition_errors(&v, sd);
        if !errs.is_empty() {
            failures.push(format!("#{i} {sd}: {}", errs.join("; ")));
        }
    }
    Verdict::new(failures.is_empty(), format!("500 modules, {} failures {:?}", failures.len(), failures.first()))
}

/// Every square-zero operator on GF(2)^n.
pub fn square_zero_operators(n: usize) -> Vec<Matrix<FieldScalar>> {
    let f = GF2;
    let mut out = Vec::new();
    for bits in 0u32..1 << (n * n) {
        let data = (0..n * n).map(|i| f.element(((bits >> i) & 1) as u16).unwrap()).collect();
        let m = Matrix::from_rows(f, n, n, data).unwrap();
        if m.mul(&m).is_zero() {
            out.push(m);
        }
    }
    out
}

fn tensor_d(a: &Matrix<FieldScalar>, b: &Matrix<FieldScalar>) -> Matrix<FieldScalar> {
    let f = a.field();
    a.kron(&Matrix::identity(f, b.rows())).add(&Matrix::identity(f, a.rows()).kron(b))
}

/// σ_{W,V} σ_{V,W} = 1 and σ D_{V⊗W} = D_{W⊗V} σ.
pub fn braiding_ok(v: &HModule, w: &HModule) -> bool {
    let s = braiding_h(v, w);
    let back = braiding_h(w, v);
    let n = v.dim() * w.dim();
    back.mul(&s) == Matrix::identity(GF2, n) && s.mul(&tensor_d(v.d(), w.d())) == tensor_d(w.d(), v.d()).mul(&s)
}

/// Superdimensions of total at most `max`.
pub fn superdims_upto(max: usize) -> Vec<SuperDim> {
    let mut out = Vec::new();
    for m2 in 0..=max / 2 {
        for m0 in 0..=max - 2 * m2 {
            for m1 in 0..=max - 2 * m2 - m0 {
                if m0 + m1 + m2 > 0 {
                    out.push(SuperDim::new(m0, m1, m2));
                }
            }
        }
    }
    out
}

/// Whether σ carries (V⊗W)_m into (W⊗V)_m for both m.
pub fn braiding_preserves_grading(v: &SuperHModule, w: &SuperHModule) -> bool {
    let vw = versuper::supermod::tensor(v, w).unwrap();
    let wv = versuper::supermod::tensor(w, v).unwrap();
    let s = versuper::supermod::braiding(v, w);
    let n = vw.dim();
    (0..2).all(|m| vw.part(m).iter().all(|x| subspace::contains(GF2, n, wv.part(m), &s.mul_vec(x))))
}

/// Braiding over GF(2): every square-zero operator of dim at most 4 against every
/// isomorphism class of dim at most 4, in both orders, plus all super pairs.
pub fn criterion2() -> Verdict {
    let raw: Vec<HModule> = (1..=4).flat_map(square_zero_operators).map(|d| HModule::new(d).unwrap()).collect();
    let classes: Vec<SuperHModule> = superdims_upto(4).into_iter().map(|sd| standard(GF2, sd)).collect();
    let mut pairs = 0;
    let mut bad = 0;
    for v in &raw {
        for c in &classes {
            pairs += 2;
            bad += usize::from(!braiding_ok(v, c.module())) + usize::from(!braiding_ok(c.module(), v));
        }
    }
    let mut graded_bad = 0;
    for a in &classes {
        for b in &classes {
            pairs += 1;
            graded_bad += usize::from(!braiding_preserves_grading(a, b));
        }
    }
    Verdict::new(
        bad == 0 && graded_bad == 0,
        format!("{} raw operators x {} classes, {pairs} pairs, {bad} involution/equivariance failures, {graded_bad} grading failures", raw.len(), classes.len()),
    )
}

/// Superdimension of V⊗V* by Künneth: k_i⊗k_j = k_{i+j}, k⊗P = P, P⊗P = 2P.
pub fn gl_kunneth(n0: usize, n1: usize, n2: usize) -> SuperDim {
    SuperDim::new(n0 * n0 + n1 * n1, 2 * n0 * n1, 2 * n2 * (n0 + n1) + 2 * n2 * n2)
}

pub fn criterion3() -> Verdict {
    let mut failures = Vec::new();
    let mut formula_differs = Vec::new();
    for n0 in 0..=2 {
        for n1 in 0..=2 {
            for n2 in 0..=2 {
                if n0 + n1 + n2 == 0 {
                    continue;
                }
                let g = gl(GF2, n0, n1, n2);
                let op = check_operadic_axioms(&g.algebra).passed();
                let pbw = check_pbw_condition(&g.algebra);
                let sup = check_superalgebra(&g.algebra, &g.structure).passed();
                let sd = decompose(&g.structure.module(&g.algebra).unwrap()).unwrap().superdim;
                let oracle = gl_kunneth(n0, n1, n2);
                if !(op && pbw && sup && sd == oracle) {
                    failures.push(format!("({n0},{n1},{n2}) op={op} pbw={pbw} super={sup} sd={sd} oracle={oracle}"));
                }
                if versuper::verlie::gl_formula_superdim(n0, n1, n2) != sd {
                    formula_differs.push(format!("({n0},{n1},{n2})"));
                }
            }
        }
    }
    Verdict::new(
        failures.is_empty(),
        format!(
            "26 instances, failures {:?}; closed formula differs from decomposition (m2 = 2n2(n0+n1+n2)) at {} instances with n2 > 0",
            failures,
            formula_differs.len()
        ),
    )
}

pub fn criterion4() -> Verdict {
    let nwa = alternator_analysis(&catalog::nwa_i().unwrap());
    let g = gl(GF2, 1, 0, 1);
    let glr = alternator_analysis(&g.algebra);
    let pass = !nwa.is_weakly_alternating && glr.is_weakly_alternating && !glr.is_skew_symmetric;
    Verdict::new(
        pass,
        format!(
            "nwa(i) weakly alternating = {}, E dim {}; gl(1+P) weakly alternating = {}, skew-symmetric = {}",
            nwa.is_weakly_alternating,
            nwa.e_dim(),
            glr.is_weakly_alternating,
            glr.is_skew_symmetric
        ),
    )
}

/// A presentation spec with images over the basis of L.
pub fn presentation_from(spec: &PresentationSpec, basis: &[&str]) -> Presentation {
    let basis: Vec<String> = basis.iter().map(|s| s.to_string()).collect();
    let names: Vec<String> = spec.generators.iter().map(|g| g.name.clone()).collect();
    Presentation {
        generators: names.clone(),
        images: spec.generators.iter().map(|g| parse_poly(GF2, &basis, &g.image).unwrap()).collect(),
        relations: spec.relations.iter().map(|r| parse_poly(GF2, &names, r).unwrap()).collect(),
    }
}

pub fn lambdas(row: usize) -> Vec<u16> {
    if catalog::row_has_lambda(row) {
        vec![0, 1]
    } else {
        vec![0]
    }
}

pub const DEGREE: usize = 6;

/// PBW for every row of the 1+P table and the nine listed presentations.
pub fn criterion5() -> Verdict {
    let mut failures = Vec::new();
    let mut cases = 0;
    let pure = SuperDim::new(0, 1, 1);
    for row in 1..=13 {
        for lambda in lambdas(row) {
            let l = catalog::one_plus_p(row, lambda).unwrap();
            let alphas = catalog::row_alphas(row);
            if alphas.is_empty() {
                // No super-structure: the plain algebra still has PBW.
                cases += 1;
                let rs = build_rewrite(&l, None, None, Flavor::Plain).unwrap();
                let want = hilbert_closed_form(Flavor::Plain, SuperDim::new(1, 0, 1), DEGREE);
                if !confluence_check(&rs, true).passed() || graded_dims(&rs, DEGREE) != want {
                    failures.push(format!("row {row} lambda {lambda} plain"));
                }
            }
            for &alpha in alphas {
                cases += 1;
                let s = catalog::one_plus_p_structure(&l, alpha).unwrap();
                let ok = build_rewrite(&l, Some(&s), None, Flavor::Super).is_ok_and(|rs| {
                    confluence_check(&rs, true).passed()
                        && graded_dims(&rs, DEGREE) == hilbert_closed_form(Flavor::Super, pure, DEGREE)
                });
                if !ok {
                    failures.push(format!("row {row} lambda {lambda} alpha {alpha}"));
                }
            }
        }
    }
    let mut presented = 0;
    for row in catalog::PRESENTED_ROWS {
        for lambda in lambdas(row) {
            for &alpha in catalog::row_alphas(row) {
                let spec = catalog::table_presentation(row, lambda, alpha).unwrap();
                let l = catalog::one_plus_p(row, lambda).unwrap();
                let s = catalog::one_plus_p_structure(&l, alpha).unwrap();
                let rs = build_rewrite(&l, Some(&s), None, Flavor::Super).unwrap();
                let p = presentation_from(&spec, &["y'", "x", "y"]);
                let span = if p.generators.len() < 3 { DEGREE / 2 } else { DEGREE };
                presented += 1;
                let report = presentation_check(&rs, &p, DEGREE, span, DEFAULT_WORD_BUDGET).unwrap();
                if !report.passed() {
                    failures.push(format!("presentation row {row} lambda {lambda} alpha {alpha}: {report:?}"));
                }
            }
        }
    }
    Verdict::new(
        failures.is_empty(),
        format!("{cases} algebra cases, {presented} presentation instances over 9 rows, failures {failures:?}"),
    )
}

pub fn criterion6() -> Verdict {
    let examples = catalog::restricted_examples().unwrap();
    let mut failures = Vec::new();
    let mut superdims = Vec::new();
    for (name, l, s, r, _) in &examples {
        let sd = decompose(&s.module(l).unwrap()).unwrap().superdim;
        superdims.push(format!("{name}{sd}"));
        let ok = check_restricted(l, s, r).unwrap().passed()
            && build_rewrite(l, Some(s), Some(r), Flavor::Restricted).is_ok_and(|rs| {
                confluence_check(&rs, true).passed()
                    && graded_dims(&rs, DEGREE) == hilbert_closed_form(Flavor::Restricted, sd, DEGREE)
            });
        if !ok {
            failures.push(name.clone());
        }
    }
    let classical = examples.iter().any(|(_, l, s, ..)| decompose(&s.module(l).unwrap()).unwrap().superdim.m2 == 0);
    let pure = examples.iter().any(|(_, l, s, ..)| {
        let sd = decompose(&s.module(l).unwrap()).unwrap().superdim;
        sd.m0 + sd.m1 == 0
    });
    let mixed = examples.iter().any(|(_, l, s, ..)| {
        let sd = decompose(&s.module(l).unwrap()).unwrap().superdim;
        sd.m2 > 0 && sd.m0 + sd.m1 > 0
    });
    let pass = failures.is_empty() && examples.len() >= 5 && classical && pure && mixed;
    Verdict::new(pass, format!("{} algebras {:?}, failures {failures:?}", examples.len(), superdims))
}

pub fn criterion7() -> Verdict {
    let l = catalog::coun_reduction().unwrap();
    let r = dims_oracle(&l, None, None, Flavor::Plain, 2, DEFAULT_WORD_BUDGET).unwrap();
    let pass = r.series[1] == 1 && (l.dim() as u64) == 2 && !check_pbw_condition(&l);
    Verdict::new(pass, format!("degree-1 dimension {} for dim L = {}, series {:?}", r.series[1], l.dim(), r.series))
}

/// The orbit counts as listed with the classification.
pub fn listed_orbit_count(row: usize) -> usize {
    catalog::row_alphas(row).len()
}

/// Listed counts for 2·1+P as (λ, m0, m1, count); the λ = 0, (1,1,1) entry is 2 + 2.
pub const LISTED_TWO_ONE_P: [(u16, usize, usize, usize); 4] = [(0, 0, 2, 4), (0, 1, 1, 4), (1, 0, 2, 0), (1, 1, 1, 2)];

pub fn criterion8() -> Verdict {
    let mut literal = Vec::new();
    let mut derived_bad = Vec::new();
    for row in 1..=13 {
        for lambda in lambdas(row) {
            let l = catalog::one_plus_p(row, lambda).unwrap();
            let got = enumerate_superstructures(&l, 0, 1, DEFAULT_BUDGET).unwrap().len();
            if got != listed_orbit_count(row) {
                literal.push(format!("row {row} lambda {lambda}: {got} vs listed {}", listed_orbit_count(row)));
            }
            if got != catalog::table_orbit_count(row, lambda) {
                derived_bad.push(format!("row {row} lambda {lambda}"));
            }
        }
    }
    let nwa = enumerate_superstructures(&catalog::nwa_i().unwrap(), 0, 1, DEFAULT_BUDGET).unwrap().len();
    if nwa != 0 {
        literal.push(format!("nwa(i): {nwa}"));
        derived_bad.push("nwa(i)".into());
    }
    for (i, &(lambda, m0, m1, listed)) in LISTED_TWO_ONE_P.iter().enumerate() {
        let l = catalog::two_one_plus_p(lambda).unwrap();
        let got = enumerate_superstructures(&l, m0, m1, DEFAULT_BUDGET).unwrap().len();
        if got != listed {
            literal.push(format!("2·1+P lambda {lambda} ({m0},{m1},1): {got} vs listed {listed}"));
        }
        if got != catalog::TWO_ONE_P_ORBITS[i].3 {
            derived_bad.push(format!("2·1+P lambda {lambda} ({m0},{m1})"));
        }
    }
    let pass = literal.is_empty();
    let note = if pass {
        String::new()
    } else {
        " (GF(2) identifies structures the listing keeps apart: row 3 at lambda 0 has the automorphism x -> x + y', \
         and on 2·1+P the Arf invariant and GL2 merge the listed cases; every listed structure is valid and lands in a computed orbit)"
            .to_string()
    };
    Verdict::new(
        pass,
        format!("literal mismatches {literal:?}; brute-force counts agree with pinned GF(2) values: {}{note}", derived_bad.is_empty()),
    )
}

/// L(λ) obstruction at order 2 and the named residues along the certificate.
pub fn l_lambda_obstruction(lambda: u16, odd: bool) -> (LiftStatus, u32, Option<(Vec<(String, FieldScalar, FieldScalar)>, FieldScalar)>) {
    let l = catalog::l_lambda(lambda).unwrap();
    let s = if odd { catalog::l_lambda_odd(&l) } else { catalog::l_lambda_even(&l) }.unwrap();
    let target = if lambda == 1 { 2 } else { 4 };
    let r = lift_to(&l, &s, target, versuper::mixed::DEFAULT_LIFT_BUDGET).unwrap();
    (r.status, r.achieved_order, r.obstruction.map(|o| (o.equations, o.residue)))
}

/// The certificate is a chain of zero-residue equations closed by E2(z,z)^w with residue 1.
pub fn hand_chain_matches(eqs: &[(String, FieldScalar, FieldScalar)], residue: FieldScalar) -> bool {
    let nonzero: Vec<&String> = eqs.iter().filter(|(_, _, r)| !r.is_zero()).map(|(n, _, _)| n).collect();
    residue == GF2.one() && nonzero == vec!["E2(z,z)^w"]
}

pub fn criterion9() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut naive_ok = true;
    for kind in [PStructure::Abelian, PStructure::PrimeBracket, PStructure::Square] {
        let l = catalog::p_algebra(kind).unwrap();
        let s = versuper::verlie::SuperStructure::pure(&l);
        let r = lift_to(&l, &s, 4, versuper::mixed::DEFAULT_LIFT_BUDGET).unwrap();
        ok &= r.status == LiftStatus::Lifted && r.achieved_order == 4;
        naive_ok &= r.naive_lift_works;
        notes.push(format!("P {kind:?}: {:?} to {} naive {}", r.status, r.achieved_order, r.naive_lift_works));
    }
    for odd in [false, true] {
        let (status, achieved, cert) = l_lambda_obstruction(1, odd);
        let chain = cert.as_ref().is_some_and(|(e, r)| hand_chain_matches(e, *r));
        ok &= status == LiftStatus::Obstructed && achieved == 1 && chain;
        notes.push(format!("L(1) {}: {status:?} at order {} chain {chain}", if odd { "m1=1" } else { "m0=1" }, achieved + 1));
    }
    let (status, achieved, _) = l_lambda_obstruction(0, false);
    ok &= status == LiftStatus::Lifted && achieved == 4;
    notes.push(format!("L(0): {status:?} to {achieved}"));
    let pass = ok && naive_ok;
    let note = if ok && !naive_ok {
        "; every lift exists, but the constant lifts of the two non-abelian P structures fail and need a correction: \
         for [x,x] = x' the d-action axiom fails at R/t^2 (d[z,z] = tw) and (ss) at R/t^3 (2[z,z] = 2w while [w,w] = 0); \
         for [x',x] = x' (ss) fails at R/t^3 on (w,z)"
    } else {
        ""
    };
    Verdict::new(pass, format!("{}{note}", notes.join("; ")))
}

/// A random operadic algebra on a standard module of dim at most 4, from sparse symmetric cubes.
pub fn random_operadic(rng: &mut impl Rng) -> (SuperDim, VerLieAlgebra) {
    loop {
        let sd = random_superdim(rng, 4);
        let m = standard(GF2, sd).module().clone();
        let n = m.dim();
        let mut cube = vec![GF2.zero(); n * n * n];
        for _ in 0..rng.gen_range(0..=3) {
            let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            cube[(i * n + j) * n + k] += GF2.one();
            if i != j && rng.gen_bool(0.8) {
                cube[(j * n + i) * n + k] += GF2.one();
            }
        }
        let l = VerLieAlgebra::new(m, cube).unwrap();
        if check_operadic_axioms(&l).passed() {
            return (sd, l);
        }
    }
}

pub struct EquivalenceSample {
    pub algebra: MixedLieAlgebra,
    pub genuine: bool,
    pub pbw: bool,
}

/// A random mixed algebra over R/t² passing the operadic axioms: a random
/// operadic reduction plus a random order-1 correction from the solution torsor.
pub fn random_mixed_r2(rng: &mut impl Rng) -> EquivalenceSample {
    let ring = TruncRing::new(GF2, 2).unwrap();
    loop {
        let (sd, l) = random_operadic(rng);
        let d = standard_d(ring, sd);
        let entries: Vec<_> = l.entries().into_iter().map(|(i, j, k, c)| (i, j, k, ring.lift(c))).collect();
        let Ok(cand) = MixedLieAlgebra::from_entries(d, &entries) else { continue };
        if cand.residue_algebra().unwrap().d() != l.d() {
            continue;
        }
        let step = lift_step(&cand, 1, None).unwrap();
        let Some(mut corr) = step.particular.clone() else { continue };
        for k in &step.kernel {
            if rng.gen_bool(0.5) {
                for (c, x) in corr.iter_mut().zip(k) {
                    *c += *x;
                }
            }
        }
        let g = apply_correction(&cand, 1, &corr).unwrap();
        if !check_operadic(&g, JacobiForm::Braided).passed() {
            continue;
        }
        let genuine = is_genuine(&g).unwrap().expect("standard d decides genuineness");
        let pbw = reduce(&g).unwrap().pbw();
        return EquivalenceSample { algebra: g, genuine, pbw };
    }
}

pub struct EquivalenceTally {
    pub total: usize,
    pub agree: usize,
    pub genuine_without_pbw: usize,
    pub pbw_without_genuine: usize,
    pub distinct: usize,
}

pub fn equivalence_tally(seed: u64, total: usize) -> EquivalenceTally {
    let mut r = rng(seed);
    let mut t = EquivalenceTally { total, agree: 0, genuine_without_pbw: 0, pbw_without_genuine: 0, distinct: 0 };
    let mut seen = HashSet::new();
    for _ in 0..total {
        let s = random_mixed_r2(&mut r);
        seen.insert(format!("{:?}{:?}", s.algebra.d(), s.algebra.cube()));
        match (s.genuine, s.pbw) {
            (a, b) if a == b => t.agree += 1,
            (true, false) => t.genuine_without_pbw += 1,
            _ => t.pbw_without_genuine += 1,
        }
    }
    t.distinct = seen.len();
    t
}

pub fn criterion10() -> Verdict {
    let t = equivalence_tally(10, 200);
    Verdict::new(
        t.agree == t.total,
        format!(
            "{}/{} agree ({} distinct algebras); genuine without PBW {}, PBW without genuine {}. \
             Known false as stated: [v,v] = t u on span(u,v), dv = tv, is operadic with PBW reduction but not genuine, \
             and over R/t^2 the condition 2[u,u] = 0 is vacuous",
            t.agree, t.total, t.distinct, t.genuine_without_pbw, t.pbw_without_genuine
        ),
    )
}

/// Size of the submodule of (R/t^N)^rows spanned by `relations`, by closure.
pub fn span_size(ring: TruncRing, rows: usize, relations: &[Vec<versuper::scalars::TruncScalar>]) -> usize {
    let elements: Vec<_> = {
        let n = ring.order();
        let (ab, bb) = (n.div_ceil(2), n / 2);
        let mut v = Vec::new();
        for a in 0..1u64 << ab {
            for b in 0..1u64 << bb {
                v.push(ring.from_parts(a, b).unwrap());
            }
        }
        v
    };
    let mut span: HashSet<Vec<(u64, u64)>> = HashSet::new();
    let zero = vec![ring.zero(); rows];
    let key = |v: &[versuper::scalars::TruncScalar]| v.iter().map(|x| x.parts()).collect::<Vec<_>>();
    span.insert(key(&zero));
    let mut current = vec![zero];
    for r in relations {
        let mut next = Vec::new();
        for base in &current {
            for c in &elements {
                let v: Vec<_> = base.iter().zip(r).map(|(x, y)| *x + *c * *y).collect();
                if span.insert(key(&v)) {
                    next.push(v);
                }
            }
        }
        current.extend(next);
    }
    span.len()
}

/// Size of a cokernel shape over R/t^N with residue field GF(2).
pub fn shape_size(order: u32, s: &CokernelShape) -> usize {
    let free = 1usize << (order as usize * s.free_rank);
    free << s.torsion.iter().sum::<u32>() as usize
}

pub fn criterion11() -> Verdict {
    let ring = TruncRing::new(GF2, 4).unwrap();
    let one = rank_one_case(ring).unwrap();
    let two = rank_two_case(ring).unwrap();
    let want_one_sym = CokernelShape { free_rank: 0, torsion: vec![2] };
    let want_one_red = CokernelShape { free_rank: 0, torsion: vec![] };
    let want_two = CokernelShape { free_rank: 2, torsion: vec![] };
    let pass = one.symmetric_square == want_one_sym
        && one.reduced_square == want_one_red
        && two.symmetric_square == want_two
        && two.reduced_square == want_two;
    Verdict::new(
        pass,
        format!(
            "R: S^2 {:?}, reduced {:?}; S: S^2 {:?}, reduced {:?}",
            one.symmetric_square, one.reduced_square, two.symmetric_square, two.reduced_square
        ),
    )
}

pub fn all_criteria() -> Vec<(usize, fn() -> Verdict)> {
    vec![
        (1, criterion1 as fn() -> Verdict),
        (2, criterion2),
        (3, criterion3),
        (4, criterion4),
        (5, criterion5),
        (6, criterion6),
        (7, criterion7),
        (8, criterion8),
        (9, criterion9),
        (10, criterion10),
        (11, criterion11),
    ]
}

/// Criteria whose literal statement is known not to hold; see the verdict details.
pub const KNOWN_FAILING: [usize; 3] = [8, 9, 10];
