mod common;

use std::collections::BTreeMap;

use common::{l_lambda_obstruction, rng, GF2};
use versuper::catalog::{self, p_naive_lift, PStructure};
use versuper::mixed::{
    check_mixed, check_operadic, counterexample_coun, gl_mixed, is_genuine, jacobi_residue, lift_step, lift_to, reduce,
    standard_d, JacobiForm, LiftStatus, MixedLieAlgebra, DEFAULT_LIFT_BUDGET,
};
use versuper::scalars::matrix::subspace;
use versuper::scalars::{Matrix, Scalar, TruncRing, TruncScalar};
use versuper::supermod::SuperDim;
use versuper::verlie::{gl, SuperStructure, VerLieAlgebra};

type Tensor = BTreeMap<(usize, usize, usize), TruncScalar>;

// s(a⊗b) = b⊗a - db⊗da on positions (p, p+1) of a basis tensor.
fn braid(g: &MixedLieAlgebra, m: &Tensor, p: usize) -> Tensor {
    let (ring, n, d) = (g.ring(), g.dim(), g.d());
    let mut out = Tensor::new();
    let mut add = |key: [usize; 3], c: TruncScalar| {
        *out.entry((key[0], key[1], key[2])).or_insert(ring.zero()) += c;
    };
    for (&(a, b, c), &x) in m {
        let idx = [a, b, c];
        let (l, r) = (idx[p], idx[p + 1]);
        let mut swapped = idx;
        swapped[p] = r;
        swapped[p + 1] = l;
        add(swapped, x);
        // - dr ⊗ dl
        for q in 0..n {
            for s in 0..n {
                let coef = d[(q, r)] * d[(s, l)];
                if !coef.is_zero() {
                    let mut k = idx;
                    k[p] = q;
                    k[p + 1] = s;
                    add(k, -(x * coef));
                }
            }
        }
    }
    out
}

/// [[,],] ∘ (1 + s₁s₂ + s₂s₁) on e_i⊗e_j⊗e_k, by explicit tensor manipulation.
fn braided_jacobi_oracle(g: &MixedLieAlgebra, i: usize, j: usize, k: usize) -> Vec<TruncScalar> {
    let ring = g.ring();
    let start = Tensor::from([((i, j, k), ring.one())]);
    let t1 = braid(g, &braid(g, &start, 1), 0);
    let t2 = braid(g, &braid(g, &start, 0), 1);
    let mut out = vec![ring.zero(); g.dim()];
    for m in [&start, &t1, &t2] {
        for (&(a, b, c), &x) in m {
            let r = g.bracket(&g.basis_bracket(a, b), &g.unit(c));
            for (o, y) in out.iter_mut().zip(r) {
                *o += x * y;
            }
        }
    }
    out
}

fn is_zero(v: &[TruncScalar]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
}

#[test]
fn braided_jacobi_matches_tensor_oracle_on_gl() {
    let ring = TruncRing::new(GF2, 5).unwrap();
    for (n0, n1, n2) in [(1, 1, 0), (0, 0, 1), (1, 0, 1)] {
        let g = gl_mixed(ring, n0, n1, n2).unwrap();
        for (i, j, k) in triples(g.dim()) {
            let want = braided_jacobi_oracle(&g, i, j, k);
            assert!(is_zero(&want), "gl({n0},{n1},{n2}) ({i},{j},{k})");
            assert_eq!(jacobi_residue(&g, JacobiForm::Braided, &g.unit(i), &g.unit(j), &g.unit(k)), want);
        }
        assert!(check_operadic(&g, JacobiForm::Braided).passed());
    }
}

#[test]
fn braided_jacobi_matches_tensor_oracle_on_random_lifts() {
    let mut r = rng(41);
    for _ in 0..30 {
        let s = common::random_mixed_r2(&mut r);
        let g = &s.algebra;
        for (i, j, k) in triples(g.dim()) {
            let want = braided_jacobi_oracle(g, i, j, k);
            assert_eq!(jacobi_residue(g, JacobiForm::Braided, &g.unit(i), &g.unit(j), &g.unit(k)), want);
        }
    }
}

#[test]
fn printed_jacobi_forms_fail_on_gl() {
    let ring = TruncRing::new(GF2, 6).unwrap();
    let jacobi_failures = |g: &MixedLieAlgebra, form| check_operadic(g, form).check("jacobi").unwrap().failures;
    for ((n0, n1, n2), short, long) in [((1, 1, 0), 12, 0), ((0, 0, 1), 12, 0), ((1, 0, 1), 156, 81), ((0, 1, 1), 156, 81)] {
        let g = gl_mixed(ring, n0, n1, n2).unwrap();
        assert_eq!(jacobi_failures(&g, JacobiForm::Short), short, "gl({n0},{n1},{n2}) short");
        assert_eq!(jacobi_failures(&g, JacobiForm::Long), long, "gl({n0},{n1},{n2}) long");
        assert_eq!(jacobi_failures(&g, JacobiForm::Braided), 0);
    }
}

#[test]
fn check_mixed_examples() {
    let ring = TruncRing::new(GF2, 4).unwrap();
    for (n0, n1, n2) in [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 0, 1)] {
        // With n2 > 0, d on End(V) is not in standard form; genuineness is then read off Ker(d - t) directly.
        let g = gl_mixed(ring, n0, n1, n2).unwrap();
        match check_mixed(&g) {
            Ok(r) => assert!(n2 == 0 && r.passed()),
            Err(_) => assert!(n2 > 0),
        }
        assert!(check_operadic(&g, JacobiForm::Braided).passed());
        assert_eq!(is_genuine(&g).unwrap(), Some(true), "gl({n0},{n1},{n2})");
    }
    let coun = counterexample_coun(ring).unwrap();
    let r = check_mixed(&coun).unwrap();
    assert!(r.operadic_passed() && r.genuine() == Some(false));
    let w = r.first_failure().unwrap();
    assert_eq!((w.axiom.as_str(), w.inputs.clone()), ("genuineness", vec!["v".to_string()]));
}

#[test]
fn constant_lifts_of_p() {
    let failures = |kind, order| {
        let r = check_mixed(&p_naive_lift(kind, order).unwrap()).unwrap();
        r.checks.iter().filter(|c| c.failures > 0).map(|c| c.axiom.clone()).collect::<Vec<_>>()
    };
    for order in 2..=4 {
        assert!(failures(PStructure::Abelian, order).is_empty());
    }
    assert!(failures(PStructure::PrimeBracket, 2).is_empty());
    assert_eq!(failures(PStructure::PrimeBracket, 3), vec!["ss", "jacobi", "daction"]);
    assert_eq!(failures(PStructure::Square, 2), vec!["daction"]);
    assert_eq!(failures(PStructure::Square, 3), vec!["ss", "daction"]);

    let r = check_mixed(&p_naive_lift(PStructure::Square, 3).unwrap()).unwrap();
    let w = &r.check("ss").unwrap().witnesses[0];
    assert_eq!(w.inputs, vec!["z", "z"]);
    // 2[z, z] - [w, w] = 2w.
    let ring = TruncRing::new(GF2, 3).unwrap();
    assert_eq!(w.residue, vec![ring.from_int(2), ring.zero()]);
}

#[test]
fn every_p_structure_lifts() {
    let v = common::criterion9();
    assert!(!v.pass);
    for kind in [PStructure::Abelian, PStructure::PrimeBracket, PStructure::Square] {
        let l = catalog::p_algebra(kind).unwrap();
        let r = lift_to(&l, &SuperStructure::pure(&l), 4, DEFAULT_LIFT_BUDGET).unwrap();
        assert_eq!((r.status, r.achieved_order), (LiftStatus::Lifted, 4), "{kind:?}");
        assert_eq!(r.naive_lift_works, kind == PStructure::Abelian);
        let g = r.lifted.unwrap();
        assert!(check_mixed(&g).unwrap().passed());
    }
}

#[test]
fn l_lambda_obstruction_chain() {
    for (odd, letter) in [(false, "u"), (true, "v")] {
        let (status, achieved, cert) = l_lambda_obstruction(1, odd);
        assert_eq!((status, achieved), (LiftStatus::Obstructed, 1));
        let (eqs, residue) = cert.unwrap();
        assert!(common::hand_chain_matches(&eqs, residue));
        let names: Vec<&str> = eqs.iter().map(|(n, _, _)| n.as_str()).collect();
        for want in [
            format!("D2(w,{letter})^{letter}"),
            "D2(w,z)^w".to_string(),
            format!("D2({letter},z)^{letter}"),
            format!("E2({letter},z)^{letter}"),
            format!("D3({letter},z,z)^{letter}"),
            "E2(z,z)^w".to_string(),
        ] {
            assert!(names.contains(&want.as_str()), "missing {want} in {names:?}");
        }
    }
    let (status, achieved, cert) = l_lambda_obstruction(0, false);
    assert_eq!((status, achieved), (LiftStatus::Lifted, 4));
    assert!(cert.is_none());
}

#[test]
fn lift_step_on_abelian_candidate() {
    let cand = p_naive_lift(PStructure::Abelian, 2).unwrap();
    let step = lift_step(&cand, 1, None).unwrap();
    assert!(step.solvable());
    assert!(step.residues.iter().all(|r| r.is_zero()));
    assert!(step.named_particular().unwrap().is_empty());
    assert_eq!(step.unknowns.len(), 8);
    assert!(lift_step(&cand, 2, None).is_err());

    let sq = p_naive_lift(PStructure::Square, 2).unwrap();
    let step = lift_step(&sq, 1, None).unwrap();
    // The d-action block: d[z,z] - [w,z] - [z,w] + t[w,w] = tw is the only nonzero residue.
    assert_eq!(step.residue("E2(z,z)^w"), Some(GF2.one()));
    assert_eq!(step.residues.iter().filter(|r| !r.is_zero()).count(), 1);
    assert!(step.solvable());
}

#[test]
fn reduce_matches_finite_gl() {
    let ring = TruncRing::new(GF2, 4).unwrap();
    for (n0, n1, n2) in [(1, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1)] {
        let red = reduce(&gl_mixed(ring, n0, n1, n2).unwrap()).unwrap();
        let g = gl(GF2, n0, n1, n2);
        let n = g.algebra.dim();
        assert_eq!(red.algebra, g.algebra, "gl({n0},{n1},{n2})");
        assert!(subspace::equal(GF2, n, &red.v0, &g.structure.v0));
        assert!(subspace::equal(GF2, n, &red.v1, &g.structure.v1));
        let s = red.structure.unwrap();
        for y in &s.v1 {
            assert_eq!(s.q(&red.algebra, y), g.structure.q(&g.algebra, y));
        }
    }
    assert!(reduce(&gl_mixed(TruncRing::new(GF2, 1).unwrap(), 1, 0, 0).unwrap()).is_err());
}

fn matrix_of(cols: &[Vec<versuper::scalars::FieldScalar>]) -> Matrix<versuper::scalars::FieldScalar> {
    Matrix::from_cols(GF2, cols.len(), cols).unwrap()
}

#[test]
fn reduction_after_lift_recovers_input() {
    let mut cases: Vec<(VerLieAlgebra, SuperStructure)> = Vec::new();
    for kind in [PStructure::Abelian, PStructure::PrimeBracket, PStructure::Square] {
        let l = catalog::p_algebra(kind).unwrap();
        let s = SuperStructure::pure(&l);
        cases.push((l, s));
    }
    let l0 = catalog::l_lambda(0).unwrap();
    cases.push((l0.clone(), catalog::l_lambda_even(&l0).unwrap()));
    cases.push((l0.clone(), catalog::l_lambda_odd(&l0).unwrap()));
    for row in [1, 7, 8] {
        let l = catalog::one_plus_p(row, 0).unwrap();
        let s = catalog::one_plus_p_structure(&l, 1).unwrap();
        cases.push((l, s));
    }
    for (l, s) in cases {
        let r = lift_to(&l, &s, 4, DEFAULT_LIFT_BUDGET).unwrap();
        if r.status != LiftStatus::Lifted {
            continue;
        }
        let p = matrix_of(&r.basis_change);
        let red = reduce(&r.lifted.unwrap()).unwrap();
        assert_eq!(red.algebra, l.transform(&p).unwrap());
        let n = l.dim();
        let moved = |vs: &[Vec<_>]| vs.iter().map(|v| p.mul_vec(v)).collect::<Vec<_>>();
        assert!(subspace::equal(GF2, n, &moved(&red.v0), &s.v0));
        assert!(subspace::equal(GF2, n, &moved(&red.v1), &s.v1));
        let rs = red.structure.unwrap();
        for y in &rs.v1 {
            assert_eq!(p.mul_vec(&rs.q(&red.algebra, y).unwrap()), s.q(&l, &p.mul_vec(y)).unwrap());
        }
    }
}

/// span(u, v) with du = 0, dv = tv and [v, v] = tu.
fn tu_example(order: u32) -> MixedLieAlgebra {
    let ring = TruncRing::new(GF2, order).unwrap();
    let d = standard_d(ring, SuperDim::new(1, 1, 0));
    MixedLieAlgebra::from_entries(d, &[(1, 1, 0, ring.t())]).unwrap()
}

#[test]
fn operadic_pbw_but_not_genuine() {
    for order in 3..=5 {
        let g = tu_example(order);
        assert!(check_operadic(&g, JacobiForm::Braided).passed());
        assert_eq!(is_genuine(&g).unwrap(), Some(false));
        let red = reduce(&g).unwrap();
        assert!(red.algebra.is_abelian() && red.pbw());
    }
}

#[test]
fn equivalence_tally_is_explained() {
    let v = common::criterion10();
    assert!(!v.pass);
    let t = common::equivalence_tally(10, 200);
    assert_eq!((t.agree, t.genuine_without_pbw, t.pbw_without_genuine), (149, 10, 41));
    let mut r = rng(10);
    for _ in 0..200 {
        let s = common::random_mixed_r2(&mut r);
        let red = reduce(&s.algebra).unwrap();
        match (s.genuine, s.pbw) {
            (true, false) => {
                // The reduced algebra has x with x' = 0 and [x, x] != 0.
                let x = versuper::verlie::pbw_witness(&red.algebra).unwrap();
                assert!(!subspace::contains(GF2, x.len(), &[], &red.algebra.bracket(&x, &x)));
            }
            (false, true) => {
                let report = check_mixed(&s.algebra).unwrap();
                assert_eq!(report.genuine(), Some(false));
            }
            _ => {}
        }
    }
}
