mod common;

use common::{random_operadic, random_scalar, random_vector, rng, GF2};
use rand::Rng;
use versuper::catalog;
use versuper::io::Loaded;
use versuper::scalars::matrix::{is_zero_vec, subspace, unit_vec, zero_vec};
use versuper::scalars::{GaloisField, Vector};
use versuper::supermod::{decompose, SuperDim};
use versuper::verlie::{
    alternator_analysis, check_classical, check_operadic_axioms, check_pbw_condition, check_restricted,
    check_superalgebra, cohomology_superalgebra, derivation_residue, gl, gl_formula_superdim, jacobi_residue,
    q_action_residue, q_prime_residue, skew_residue, RestrictedStructure, SuperStructure, VerLieAlgebra,
};

#[test]
fn gl_up_to_two() {
    let v = common::criterion3();
    assert!(v.pass, "{}", v.detail);
}

#[test]
fn alternator_examples() {
    let v = common::criterion4();
    assert!(v.pass, "{}", v.detail);
}

#[test]
fn gl_examples() {
    let sd = |n0, n1, n2| {
        let g = gl(GF2, n0, n1, n2);
        decompose(&g.structure.module(&g.algebra).unwrap()).unwrap().superdim
    };
    assert_eq!(sd(1, 1, 0), SuperDim::new(2, 2, 0));
    assert_eq!(gl_formula_superdim(1, 1, 0), SuperDim::new(2, 2, 0));
    let g = gl(GF2, 1, 0, 0);
    assert!(g.algebra.is_abelian());
    assert_eq!(sd(1, 0, 0), SuperDim::new(1, 0, 0));
    // End(P) has dimension 4; the closed formula's total is 2.
    assert_eq!(sd(0, 0, 1), SuperDim::new(0, 0, 2));
    assert_eq!(gl_formula_superdim(0, 0, 1).total(), 2);
    for (n0, n1, n2) in [(1, 0, 1), (0, 1, 1), (1, 1, 1), (2, 0, 1)] {
        let n = n0 + n1 + 2 * n2;
        assert_eq!(sd(n0, n1, n2).total(), n * n);
        assert_eq!(sd(n0, n1, n2), common::gl_kunneth(n0, n1, n2));
    }
}

#[test]
fn gl_over_gf4_passes() {
    let f = GaloisField::GF4;
    for (n0, n1, n2) in [(1, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1)] {
        let g = gl(f, n0, n1, n2);
        assert!(check_operadic_axioms(&g.algebra).passed());
        assert!(check_pbw_condition(&g.algebra));
        assert!(check_superalgebra(&g.algebra, &g.structure).passed());
    }
}

#[test]
fn operadic_examples() {
    let l = VerLieAlgebra::abelian(versuper::supermod::standard(GF2, SuperDim::new(1, 1, 1)).module().clone());
    assert!(check_operadic_axioms(&l).passed());
    assert!(check_operadic_axioms(&catalog::nwa_i().unwrap()).passed());
}

#[test]
fn perturbed_gl_fails_with_witness() {
    let g = gl(GF2, 1, 0, 1).algebra;
    let n = g.dim();
    let mut r = rng(3);
    for _ in 0..20 {
        let (i, j, k) = (r.gen_range(0..n), r.gen_range(0..n), r.gen_range(0..n));
        let c = g.constant(i, j, k) + GF2.one();
        let bad = g.with_constant(i, j, k, c);
        let report = check_operadic_axioms(&bad);
        let w = report.first_failure().unwrap_or_else(|| panic!("flip at ({i},{j},{k}) still passes"));
        let again = match w.axiom.as_str() {
            "skew" => skew_residue(&bad, &w.inputs[0], &w.inputs[1]),
            "derivation" => derivation_residue(&bad, &w.inputs[0], &w.inputs[1]),
            "jacobi" => jacobi_residue(&bad, &w.inputs[0], &w.inputs[1], &w.inputs[2]),
            other => panic!("unexpected axiom {other}"),
        };
        assert_eq!(again, w.residue);
        assert!(!is_zero_vec(&again));
    }
}

#[test]
fn pbw_condition_examples() {
    let l = VerLieAlgebra::abelian(versuper::supermod::standard(GF2, SuperDim::new(2, 0, 1)).module().clone());
    assert!(check_pbw_condition(&l));
    // Ker D = span(x, y') and every bracket inside it vanishes.
    assert!(check_pbw_condition(&catalog::nwa_i().unwrap()));
    let coun = catalog::coun_reduction().unwrap();
    assert!(!check_pbw_condition(&coun));
    assert_eq!(versuper::verlie::pbw_witness(&coun), Some(vec![GF2.zero(), GF2.one()]));
}

#[test]
fn alternator_reports() {
    let nwa = alternator_analysis(&catalog::nwa_i().unwrap());
    assert!(!nwa.is_weakly_alternating);
    assert_eq!(nwa.e_dim(), 1);
    // The class of x = [y, y].
    assert_eq!(nwa.e_basis, vec![unit_vec(GF2, 3, 1)]);
    let ab = alternator_analysis(&VerLieAlgebra::abelian(versuper::supermod::standard(GF2, SuperDim::new(1, 0, 1)).module().clone()));
    assert!(ab.is_alternating && ab.is_skew_symmetric && ab.is_weakly_alternating);
    assert_eq!(ab.e_dim(), 0);
    for (n0, n1, n2) in [(1, 0, 1), (0, 1, 1), (0, 0, 2), (1, 1, 1)] {
        let r = alternator_analysis(&gl(GF2, n0, n1, n2).algebra);
        assert!(r.is_weakly_alternating && !r.is_skew_symmetric, "gl({n0},{n1},{n2})");
    }
    // gl(P): Im D = span(1, E01) is commutative, so the algebra is skew-symmetric.
    assert!(alternator_analysis(&gl(GF2, 0, 0, 1).algebra).is_skew_symmetric);
}

#[test]
fn alternator_classes_are_cocycles() {
    let mut r = rng(11);
    for _ in 0..100 {
        let (_, l) = random_operadic(&mut r);
        let a = alternator_analysis(&l);
        let (f, n) = (l.field(), l.dim());
        let im = l.module().image();
        for e in &a.e_basis {
            assert!(is_zero_vec(&l.prime(e)));
        }
        let all: Vec<Vector> = a.e_basis.iter().chain(&im).cloned().collect();
        assert_eq!(subspace::rank(f, n, &all), a.e_dim() + im.len());
        // [h, h] is a cocycle for any h, by the derivation axiom.
        let x = random_vector(&mut r, f, n);
        assert!(is_zero_vec(&l.prime(&l.bracket(&x, &x))));
    }
}

fn one_plus_p_structure(row: usize, alpha: u16) -> (VerLieAlgebra, SuperStructure) {
    let l = catalog::one_plus_p(row, 0).unwrap();
    let s = catalog::one_plus_p_structure(&l, alpha).unwrap();
    (l, s)
}

#[test]
fn superalgebra_examples() {
    let (l, s) = one_plus_p_structure(1, 1);
    assert!(check_superalgebra(&l, &s).passed());
    for lambda in [0, 1] {
        for alpha in [0, 1] {
            let l = catalog::one_plus_p(2, lambda).unwrap();
            let s = catalog::one_plus_p_structure(&l, alpha).unwrap();
            let report = check_superalgebra(&l, &s);
            assert!(!report.passed());
        }
    }
    let (l, s) = one_plus_p_structure(13, 1);
    assert!(!check_superalgebra(&l, &s).passed());
    let (l, s) = one_plus_p_structure(13, 0);
    assert!(check_superalgebra(&l, &s).passed());
}

#[test]
fn restricted_examples() {
    for (name, l, s, r, _) in catalog::restricted_examples().unwrap() {
        assert!(check_superalgebra(&l, &s).passed(), "{name}");
        assert!(check_restricted(&l, &s, &r).unwrap().passed(), "{name}");
    }
    // Abelian with Q0 = 0.
    let m = versuper::supermod::standard(GF2, SuperDim::new(2, 0, 0));
    let l = VerLieAlgebra::abelian(m.module().clone());
    let s = SuperStructure::pure(&l);
    let zero = RestrictedStructure { q0: vec![zero_vec(GF2, 2); s.v0.len()] };
    assert!(check_restricted(&l, &s, &zero).unwrap().passed());
    // P with [x, x] = x': Q0(x') must be [x, x] = x'.
    let l = catalog::p_algebra(catalog::PStructure::Square).unwrap();
    let s = SuperStructure::pure(&l);
    let wrong = RestrictedStructure { q0: vec![zero_vec(GF2, 2)] };
    assert!(!check_restricted(&l, &s, &wrong).unwrap().passed());
}

#[test]
fn cohomology_examples() {
    // Pure L: the induced algebra has no odd part.
    let l = catalog::p_algebra(catalog::PStructure::Square).unwrap();
    let (h, hs) = cohomology_superalgebra(&l, &SuperStructure::pure(&l)).unwrap();
    assert_eq!(h.dim(), 0);
    assert!(hs.v1.is_empty());

    for (n0, n1, n2) in [(1, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)] {
        let g = gl(GF2, n0, n1, n2);
        let sd = decompose(&g.structure.module(&g.algebra).unwrap()).unwrap().superdim;
        let (h, hs) = cohomology_superalgebra(&g.algebra, &g.structure).unwrap();
        assert_eq!(h.dim(), sd.m0 + sd.m1);
        assert!(h.d().is_zero());
        assert!(check_operadic_axioms(&h).passed());
        assert!(check_superalgebra(&h, &hs).passed());
        assert!(check_classical(&h, &hs).unwrap().passed());
    }
    let nwa = catalog::nwa_i().unwrap();
    let s = SuperStructure::pure(&nwa);
    assert!(cohomology_superalgebra(&nwa, &s).unwrap_err().to_string().contains("weakly alternating"));
}

fn verlie_catalog() -> Vec<(String, VerLieAlgebra, Option<SuperStructure>)> {
    catalog::all()
        .unwrap()
        .into_iter()
        .filter_map(|f| match f.load().unwrap() {
            Loaded::Verlie { algebra, structure, .. } => Some((f.name, algebra, structure)),
            _ => None,
        })
        .collect()
}

fn random_in(r: &mut impl Rng, l: &VerLieAlgebra, basis: &[Vector]) -> Vector {
    let mut v = zero_vec(l.field(), l.dim());
    for b in basis {
        let c = random_scalar(r, l.field());
        for (x, y) in v.iter_mut().zip(b) {
            *x += c * *y;
        }
    }
    v
}

fn random_vector_checks(name: &str, l: &VerLieAlgebra, s: Option<&SuperStructure>, r: &mut impl Rng) {
    let (f, n) = (l.field(), l.dim());
    if check_operadic_axioms(l).passed() {
        for _ in 0..200 {
            let (x, y, z) = (random_vector(r, f, n), random_vector(r, f, n), random_vector(r, f, n));
            assert!(is_zero_vec(&skew_residue(l, &x, &y)), "{name}: skew");
            assert!(is_zero_vec(&derivation_residue(l, &x, &y)), "{name}: derivation");
            assert!(is_zero_vec(&jacobi_residue(l, &x, &y, &z)), "{name}: jacobi");
        }
    }
    let Some(s) = s else { return };
    if !check_superalgebra(l, s).passed() {
        return;
    }
    let q = s.q_map();
    for _ in 0..200 {
        let x = random_vector(r, f, n);
        let (y1, y2) = (random_in(r, l, &s.v1), random_in(r, l, &s.v1));
        assert!(is_zero_vec(&q_prime_residue(l, &q, &x).unwrap()), "{name}: Q(x') = [x,x]");
        assert!(is_zero_vec(&q_action_residue(l, &q, &y1, &x).unwrap()), "{name}: [Q(y),x] = [y,[y,x]]");
        let sum: Vector = y1.iter().zip(&y2).map(|(a, b)| *a + *b).collect();
        let polar: Vector = q
            .eval(l, &sum)
            .unwrap()
            .iter()
            .zip(q.eval(l, &y1).unwrap())
            .zip(q.eval(l, &y2).unwrap())
            .map(|((a, b), c)| *a - b - c)
            .collect();
        assert_eq!(polar, l.bracket(&y1, &y2), "{name}: polarization");
    }
}

#[test]
fn basis_reductions_agree_with_random_vectors() {
    let mut r = rng(5);
    for (name, l, s) in verlie_catalog() {
        random_vector_checks(&name, &l, s.as_ref(), &mut r);
    }
    for (n0, n1, n2) in [(1, 0, 1), (0, 1, 1), (1, 1, 0)] {
        let g = gl(GaloisField::GF4, n0, n1, n2);
        random_vector_checks("gl over GF(4)", &g.algebra, Some(&g.structure), &mut r);
    }
}

#[test]
fn classical_evaluator_agrees() {
    let mut r = rng(9);
    for (n0, n1) in [(1, 1), (2, 0), (0, 2), (2, 1), (1, 2)] {
        let g = gl(GF2, n0, n1, 0);
        assert!(check_superalgebra(&g.algebra, &g.structure).passed());
        assert!(check_classical(&g.algebra, &g.structure).unwrap().passed());
    }
    let mut checked = 0;
    let mut valid = 0;
    while checked < 300 {
        let (sd, l) = random_operadic(&mut r);
        if sd.m2 != 0 {
            continue;
        }
        let n = l.dim();
        // A random splitting L = V0 ⊕ V1 and random values of Q on V1.
        let p = common::random_invertible(&mut r, GF2, n);
        let cols = p.columns();
        let k = r.gen_range(0..=n);
        let v1: Vec<Vector> = cols[k..].to_vec();
        let q1 = v1.iter().map(|_| random_vector(&mut r, GF2, n)).collect();
        let s = SuperStructure::new(cols[..k].to_vec(), v1, q1).unwrap();
        let a = check_superalgebra(&l, &s).passed();
        let b = check_classical(&l, &s).unwrap().passed();
        assert_eq!(a, b, "{l:?} {s:?}");
        checked += 1;
        valid += usize::from(a);
    }
    assert!(valid > 0 && valid < checked, "both outcomes should occur ({valid}/{checked})");
}
