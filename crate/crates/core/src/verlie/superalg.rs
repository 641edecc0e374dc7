//! Super-structures, squaring maps and restricted structures.

use serde::Serialize;

use super::report::{AxiomCheck, AxiomReport};
use super::{alternator_analysis, VerLieAlgebra};
use crate::error::{Error, Result};
use crate::scalars::matrix::{add_vec, axpy, is_zero_vec, subspace, unit_vec, zero_vec};
use crate::scalars::{FieldScalar, Matrix, Scalar, Vector};
use crate::supermod::{adapted_basis, HModule, SuperHModule};

/// A quadratic map known on a basis of a subspace of Ker D, extended by
/// Q(Σ λ_i e_i) = Σ λ_i² Q(e_i) + Σ_{i<j} λ_i λ_j [e_i, e_j].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadraticMap {
    pub basis: Vec<Vector>,
    pub values: Vec<Vector>,
}

impl QuadraticMap {
    /// Value at `y`, or `None` when `y` is outside the span of the basis.
    pub fn eval(&self, l: &VerLieAlgebra, y: &[FieldScalar]) -> Option<Vector> {
        let (f, n) = (l.field(), l.dim());
        let lambda = subspace::coordinates(f, n, &self.basis, y)?;
        let mut out = zero_vec(f, n);
        for (i, li) in lambda.iter().enumerate() {
            if li.is_zero() {
                continue;
            }
            axpy(&mut out, *li * *li, &self.values[i]);
            for j in i + 1..lambda.len() {
                if !lambda[j].is_zero() {
                    axpy(&mut out, *li * lambda[j], &l.bracket(&self.basis[i], &self.basis[j]));
                }
            }
        }
        Some(out)
    }
}

/// Subspaces V0, V1 of a Lie algebra together with Q on the stored basis of V1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuperStructure {
    pub v0: Vec<Vector>,
    pub v1: Vec<Vector>,
    pub q1: Vec<Vector>,
}

impl SuperStructure {
    pub fn new(v0: Vec<Vector>, v1: Vec<Vector>, q1: Vec<Vector>) -> Result<Self> {
        if q1.len() != v1.len() {
            return Err(Error::malformed(format!("{} values of Q for {} basis vectors of V1", q1.len(), v1.len())));
        }
        Ok(SuperStructure { v0, v1, q1 })
    }

    /// V1 = Im D ⊕ span(c) with Q forced on Im D by Q(h') = [h, h] and given on `c`.
    pub fn from_complement(l: &VerLieAlgebra, v0: Vec<Vector>, c: Vec<Vector>, qc: Vec<Vector>) -> Result<Self> {
        if c.len() != qc.len() {
            return Err(Error::malformed("one value of Q is needed per complement vector"));
        }
        let h = subspace::complement_units(l.field(), l.dim(), &l.module().kernel());
        let mut v1: Vec<Vector> = h.iter().map(|x| l.prime(x)).collect();
        let mut q1: Vec<Vector> = h.iter().map(|x| l.bracket(x, x)).collect();
        v1.extend(c);
        q1.extend(qc);
        Self::new(v0, v1, q1)
    }

    /// The pure structure V0 = Ker D, V1 = Im D.
    pub fn pure(l: &VerLieAlgebra) -> Self {
        Self::from_complement(l, l.module().kernel(), Vec::new(), Vec::new()).expect("no complement data")
    }

    pub fn q_map(&self) -> QuadraticMap {
        QuadraticMap { basis: self.v1.clone(), values: self.q1.clone() }
    }

    pub fn q(&self, l: &VerLieAlgebra, y: &[FieldScalar]) -> Option<Vector> {
        self.q_map().eval(l, y)
    }

    pub fn module(&self, l: &VerLieAlgebra) -> Result<SuperHModule> {
        SuperHModule::new(l.d().clone(), self.v0.clone(), self.v1.clone())
    }

    pub fn part(&self, i: usize) -> &[Vector] {
        if i % 2 == 0 {
            &self.v0
        } else {
            &self.v1
        }
    }
}

/// Q(x') + [x, x].
pub fn q_prime_residue(l: &VerLieAlgebra, q: &QuadraticMap, x: &[FieldScalar]) -> Option<Vector> {
    Some(add_vec(&q.eval(l, &l.prime(x))?, &l.bracket(x, x)))
}

/// [Q(y), x] - [y, [y, x]].
pub fn q_action_residue(l: &VerLieAlgebra, q: &QuadraticMap, y: &[FieldScalar], x: &[FieldScalar]) -> Option<Vector> {
    let lhs = l.bracket(&q.eval(l, y)?, x);
    Some(add_vec(&lhs, &l.bracket(y, &l.bracket(y, x))))
}

fn units(l: &VerLieAlgebra) -> Vec<Vector> {
    (0..l.dim()).map(|i| unit_vec(l.field(), l.dim(), i)).collect()
}

fn grading_check(l: &VerLieAlgebra, s: &SuperStructure) -> AxiomCheck {
    let (f, n) = (l.field(), l.dim());
    let mut grading = AxiomCheck::new("grading");
    for i in 0..2 {
        for j in 0..2 {
            let target = s.part(i + j);
            for x in s.part(i) {
                for y in s.part(j) {
                    let b = l.bracket(x, y);
                    if subspace::contains(f, n, target, &b) {
                        grading.pass();
                    } else {
                        grading.fail(vec![x.clone(), y.clone()]);
                    }
                }
            }
        }
    }
    grading
}

/// Checks the axioms of a Lie superalgebra in Ver4+(k).
///
/// (a) Q(x') = [x, x] is checked on a basis of L: the difference is
/// Frobenius-semilinear since its polar form [x', y'] - [x, y] - [y, x]
/// vanishes by skew-symmetry. (c) [Q(y), x] = [y, [y, x]] is checked on
/// (basis of V1) × (basis of L): its polar form in y is a Jacobi identity.
/// The polarization axiom holds by construction of Q.
pub fn check_superalgebra(l: &VerLieAlgebra, s: &SuperStructure) -> AxiomReport {
    let (f, n) = (l.field(), l.dim());
    let mut structure = AxiomCheck::new("superstructure");
    let valid = s.q1.len() == s.v1.len()
        && s.v0.iter().chain(&s.v1).chain(&s.q1).all(|v| v.len() == n)
        && subspace::rank(f, n, &s.v1) == s.v1.len()
        && s.module(l).is_ok();
    if !valid {
        structure.fail(Vec::new());
        return AxiomReport { checks: vec![structure] };
    }
    structure.pass();
    let grading = grading_check(l, s);

    let mut values = AxiomCheck::new("q_values");
    for (y, qy) in s.v1.iter().zip(&s.q1) {
        if subspace::contains(f, n, &s.v0, qy) {
            values.pass();
        } else {
            values.fail(vec![y.clone(), qy.clone()]);
        }
    }

    let q = s.q_map();
    let basis = units(l);
    let mut q_prime = AxiomCheck::new("q_prime");
    for x in &basis {
        let r = q_prime_residue(l, &q, x).expect("Im D lies in V1");
        q_prime.record(vec![x.clone()], r);
    }
    let mut q_action = AxiomCheck::new("q_action");
    for y in &s.v1 {
        for x in &basis {
            let r = q_action_residue(l, &q, y, x).expect("y lies in V1");
            q_action.record(vec![y.clone(), x.clone()], r);
        }
    }
    AxiomReport { checks: vec![structure, grading, values, q_prime, q_action] }
}

/// The values Q0 of the extension of Q on the stored basis of V0.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RestrictedStructure {
    pub q0: Vec<Vector>,
}

impl RestrictedStructure {
    /// Q on all of Ker D, from Q0 on V0 and Q on the part of the V1 basis outside V0.
    pub fn q_map(&self, l: &VerLieAlgebra, s: &SuperStructure) -> QuadraticMap {
        let (f, n) = (l.field(), l.dim());
        let mut basis = s.v0.clone();
        let mut values = self.q0.clone();
        let extra = subspace::extend_basis(f, n, &s.v0, &s.v1);
        let q1 = s.q_map();
        for y in extra {
            values.push(q1.eval(l, &y).expect("from V1"));
            basis.push(y);
        }
        QuadraticMap { basis, values }
    }
}

/// Checks a restricted structure: Q maps V0 to V0, extends Q on V1,
/// [x, x] = Q(x') on a basis of L and [Q(x), y] = [x, [x, y]] for x in
/// a basis of V0 and y in a basis of L. Additivity on V0 holds by construction.
pub fn check_restricted(l: &VerLieAlgebra, s: &SuperStructure, r: &RestrictedStructure) -> Result<AxiomReport> {
    let base = check_superalgebra(l, s);
    if !base.passed() {
        return Err(Error::domain(format!(
            "super-structure fails {:?}; restricted structures need a Lie superalgebra",
            base.failed_axioms()
        )));
    }
    let (f, n) = (l.field(), l.dim());
    if r.q0.len() != s.v0.len() || r.q0.iter().any(|v| v.len() != n) {
        return Err(Error::malformed(format!("Q0 needs {} vectors of length {n}", s.v0.len())));
    }
    let mut values = AxiomCheck::new("q0_values");
    for (x, qx) in s.v0.iter().zip(&r.q0) {
        if subspace::contains(f, n, &s.v0, qx) {
            values.pass();
        } else {
            values.fail(vec![x.clone(), qx.clone()]);
        }
    }
    let q = r.q_map(l, s);
    let q1 = s.q_map();
    let mut extension = AxiomCheck::new("extends_q");
    for y in &s.v1 {
        extension.record(vec![y.clone()], add_vec(&q.eval(l, y).expect("V1 ⊆ Ker D"), &q1.eval(l, y).expect("in V1")));
    }
    let basis = units(l);
    let mut q_prime = AxiomCheck::new("q_prime");
    for x in &basis {
        q_prime.record(vec![x.clone()], q_prime_residue(l, &q, x).expect("Im D ⊆ Ker D"));
    }
    let mut q_action = AxiomCheck::new("q_action_even");
    for x in &s.v0 {
        for y in &basis {
            q_action.record(vec![x.clone(), y.clone()], q_action_residue(l, &q, x, y).expect("x in Ker D"));
        }
    }
    Ok(AxiomReport { checks: vec![values, extension, q_prime, q_action] })
}

/// Independent evaluator for classical Lie superalgebras (D = 0), scanning all
/// vectors instead of relying on the basis reductions. Limited to 4096 vectors.
pub fn check_classical(l: &VerLieAlgebra, s: &SuperStructure) -> Result<AxiomReport> {
    let (f, n) = (l.field(), l.dim());
    if !l.d().is_zero() {
        return Err(Error::domain("classical check needs D = 0"));
    }
    if f.order().checked_pow(n as u32).map_or(true, |c| c > 4096) {
        return Err(Error::resource("too many vectors for an exhaustive classical check", None));
    }
    let mut direct = AxiomCheck::new("direct_sum");
    let ok = subspace::rank(f, n, &s.v0) + subspace::rank(f, n, &s.v1) == n
        && subspace::rank(f, n, &subspace::sum(f, n, &s.v0, &s.v1)) == n;
    if ok {
        direct.pass();
    } else {
        direct.fail(Vec::new());
        return Ok(AxiomReport { checks: vec![direct] });
    }
    let all = subspace::elements(f, n, &units(l));
    let odd = subspace::elements(f, n, &s.v1);
    let mut alternating = AxiomCheck::new("alternating");
    for x in &all {
        alternating.record(vec![x.clone()], l.bracket(x, x));
    }
    let basis = units(l);
    let mut jacobi = AxiomCheck::new("jacobi");
    for x in &basis {
        for y in &basis {
            for z in &basis {
                let r = [l.bracket(&l.bracket(x, y), z), l.bracket(&l.bracket(y, z), x), l.bracket(&l.bracket(z, x), y)]
                    .iter()
                    .fold(zero_vec(f, n), |acc, t| add_vec(&acc, t));
                jacobi.record(vec![x.clone(), y.clone(), z.clone()], r);
            }
        }
    }
    let grading = grading_check(l, s);
    let q = s.q_map();
    let mut polar = AxiomCheck::new("polarization");
    let mut action = AxiomCheck::new("q_action");
    let mut values = AxiomCheck::new("q_values");
    for y in &odd {
        let qy = q.eval(l, y).expect("odd vector");
        if subspace::contains(f, n, &s.v0, &qy) {
            values.pass();
        } else {
            values.fail(vec![y.clone()]);
        }
        for z in &odd {
            let lhs = add_vec(&add_vec(&q.eval(l, &add_vec(y, z)).expect("odd"), &qy), &q.eval(l, z).expect("odd"));
            polar.record(vec![y.clone(), z.clone()], add_vec(&lhs, &l.bracket(y, z)));
        }
        for x in &all {
            let r = add_vec(&l.bracket(&qy, x), &l.bracket(y, &l.bracket(y, x)));
            action.record(vec![y.clone(), x.clone()], r);
        }
    }
    Ok(AxiomReport { checks: vec![direct, alternating, jacobi, grading, values, polar, action] })
}

/// The classical Lie superalgebra induced on H(L) = Ker D / Im D.
///
/// Basis: the b0 block then the b1 block of the adapted basis. Needs L weakly
/// alternating, so that Q maps Im D into Im D and descends.
pub fn cohomology_superalgebra(l: &VerLieAlgebra, s: &SuperStructure) -> Result<(VerLieAlgebra, SuperStructure)> {
    if !alternator_analysis(l).is_weakly_alternating {
        return Err(Error::domain("L is not weakly alternating, so Q does not descend to cohomology"));
    }
    let (f, n) = (l.field(), l.dim());
    let ab = adapted_basis(l.module(), &s.v0, &s.v1);
    let (m0, m1, m2) = (ab.b0.len(), ab.b1.len(), ab.a.len());
    let m = m0 + m1;
    let mut basis = ab.a.clone();
    basis.extend(ab.b0.iter().cloned());
    basis.extend(ab.b1.iter().cloned());
    let b: Vec<Vector> = ab.b0.iter().chain(&ab.b1).cloned().collect();
    // Coordinates of a cocycle modulo Im D in the b basis.
    let reduce = |v: &Vector| -> Result<Vector> {
        let c = subspace::coordinates(f, n, &basis, v)
            .ok_or_else(|| Error::domain("bracket of cocycles left Ker D; operadic axioms fail"))?;
        Ok(c[m2..].to_vec())
    };
    let mut cube = Vec::with_capacity(m * m * m);
    for x in &b {
        for y in &b {
            cube.extend(reduce(&l.bracket(x, y))?);
        }
    }
    let q = s.q_map();
    let q1 = ab.b1.iter().map(|y| reduce(&q.eval(l, y).expect("b1 ⊆ V1"))).collect::<Result<Vec<_>>>()?;
    let h = VerLieAlgebra::new(HModule::new(Matrix::zeros(f, m, m))?, cube)?;
    let v0 = (0..m0).map(|i| unit_vec(f, m, i)).collect();
    let v1 = (m0..m).map(|i| unit_vec(f, m, i)).collect();
    Ok((h, SuperStructure::new(v0, v1, q1)?))
}

impl SuperStructure {
    /// Whether all stored Q values vanish.
    pub fn q_is_zero(&self) -> bool {
        self.q1.iter().all(|v| is_zero_vec(v))
    }
}
