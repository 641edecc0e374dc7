//! Exhaustive enumeration of super-structures and restricted extensions up to automorphism.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::matrix::subspace;
use crate::scalars::{FieldScalar, GaloisField, Matrix, Vector};
use crate::supermod::{decompose, SuperDim};
use crate::verlie::{
    alternator_analysis, check_restricted, check_superalgebra, RestrictedStructure, SuperStructure, VerLieAlgebra,
};

/// Default cap on the number of candidates any single scan may visit.
pub const DEFAULT_BUDGET: usize = 1 << 22;

/// Largest algebra the exhaustive searches accept.
pub const MAX_DIM: usize = 5;

fn guard(l: &VerLieAlgebra) -> Result<()> {
    if l.dim() > MAX_DIM || l.field().degree() > 2 {
        return Err(Error::resource(
            format!("classification needs dim <= {MAX_DIM} over GF(2) or GF(4), got dim {} over GF(2^{})", l.dim(), l.field().degree()),
            None,
        ));
    }
    Ok(())
}

fn checked_pow(q: usize, e: usize, budget: usize, what: &str) -> Result<usize> {
    let mut total = 1usize;
    for _ in 0..e {
        total = total.checked_mul(q).filter(|&t| t <= budget).ok_or_else(|| {
            Error::resource(format!("{what}: {q}^{e} candidates exceed the budget {budget}"), None)
        })?;
    }
    Ok(total)
}

/// All vectors of `span(basis)`, in a fixed order.
fn span_elements(field: GaloisField, n: usize, basis: &[Vector]) -> Vec<Vector> {
    let elems: Vec<FieldScalar> = field.elements().collect();
    let mut out = vec![vec![field.zero(); n]];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * elems.len());
        for v in &out {
            for c in &elems {
                let mut w = v.clone();
                for (x, y) in w.iter_mut().zip(b) {
                    *x += *c * *y;
                }
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Every k-dimensional subspace of field^m, as RREF row bases.
pub fn subspaces(field: GaloisField, m: usize, k: usize) -> Vec<Vec<Vector>> {
    fn pivot_sets(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for p in start..m {
            cur.push(p);
            pivot_sets(m, k, p + 1, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    pivot_sets(m, k, 0, &mut Vec::new(), &mut sets);
    let elems: Vec<FieldScalar> = field.elements().collect();
    let mut out = Vec::new();
    for pivots in sets {
        // Free slots: (row, col) with col > pivot(row) and col not a pivot.
        let free: Vec<(usize, usize)> =
            (0..k).flat_map(|r| (pivots[r] + 1..m).filter(|c| !pivots.contains(c)).map(move |c| (r, c))).collect();
        let total = elems.len().pow(free.len() as u32);
        for mut code in 0..total {
            let mut rows = vec![vec![field.zero(); m]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = field.one();
            }
            for &(r, c) in &free {
                rows[r][c] = elems[code % elems.len()];
                code /= elems.len();
            }
            out.push(rows);
        }
    }
    out
}

/// Basis of the matrices commuting with D.
fn centralizer_basis(l: &VerLieAlgebra) -> Vec<Matrix<FieldScalar>> {
    let (f, n) = (l.field(), l.dim());
    let d = l.d();
    // Column r*n+s of the system is X = E_rs; rows are the entries of DX - XD.
    let mut cols = Vec::with_capacity(n * n);
    for r in 0..n {
        for s in 0..n {
            let mut x = Matrix::zeros(f, n, n);
            x[(r, s)] = f.one();
            cols.push(d.mul(&x).sub(&x.mul(d)).entries().to_vec());
        }
    }
    let system = Matrix::from_cols(f, n * n, &cols).expect("n*n entries");
    system
        .kernel()
        .into_iter()
        .map(|k| Matrix::from_rows(f, n, n, k).expect("n*n entries"))
        .collect()
}

fn preserves_bracket(l: &VerLieAlgebra, g: &Matrix<FieldScalar>) -> bool {
    let n = l.dim();
    let cols = g.columns();
    (0..n).all(|i| (0..n).all(|j| g.mul_vec(&l.basis_bracket(i, j)) == l.bracket(&cols[i], &cols[j])))
}

/// All automorphisms of L: invertible maps commuting with D and preserving the bracket.
///
/// The search runs over the centralizer of D, which is a subspace of End(L).
pub fn automorphisms(l: &VerLieAlgebra, budget: usize) -> Result<Vec<Matrix<FieldScalar>>> {
    guard(l)?;
    let (f, n) = (l.field(), l.dim());
    let basis = centralizer_basis(l);
    checked_pow(f.order(), basis.len(), budget, "automorphism search")?;
    let flat: Vec<Vector> = basis.iter().map(|m| m.entries().to_vec()).collect();
    let mut out = Vec::new();
    for entries in span_elements(f, n * n, &flat) {
        let g = Matrix::from_rows(f, n, n, entries).expect("n*n entries");
        if g.rank() == n && preserves_bracket(l, &g) {
            out.push(g);
        }
    }
    Ok(out)
}

/// One isomorphism class of super-structures.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureOrbit {
    pub representative: SuperStructure,
    pub superdim: SuperDim,
    pub orbit_size: usize,
    pub stabilizer_size: usize,
}

fn encode(out: &mut Vec<u16>, vs: &[Vector]) {
    out.push(vs.len() as u16);
    for v in vs {
        out.extend(v.iter().map(|x| x.value()));
    }
}

/// Canonical form: RREF bases of V0 and V1 with Q evaluated on the RREF basis of V1.
fn canonical(l: &VerLieAlgebra, s: &SuperStructure) -> (Vec<u16>, SuperStructure) {
    let (f, n) = (l.field(), l.dim());
    let v0 = subspace::rref_basis(f, n, &s.v0);
    let v1 = subspace::rref_basis(f, n, &s.v1);
    let q = s.q_map();
    let q1: Vec<Vector> = v1.iter().map(|y| q.eval(l, y).expect("V1 basis")).collect();
    let mut key = Vec::new();
    encode(&mut key, &v0);
    encode(&mut key, &v1);
    encode(&mut key, &q1);
    (key, SuperStructure { v0, v1, q1 })
}

/// g·S: subspaces moved by g and Q conjugated, Q'(y) = g Q(g⁻¹ y).
pub fn transform_structure(g: &Matrix<FieldScalar>, s: &SuperStructure) -> SuperStructure {
    let v0: Vec<Vector> = s.v0.iter().map(|v| g.mul_vec(v)).collect();
    let v1: Vec<Vector> = s.v1.iter().map(|v| g.mul_vec(v)).collect();
    // Q'(g y) = g Q(y) on the moved basis.
    let q1 = s.q1.iter().map(|v| g.mul_vec(v)).collect();
    SuperStructure { v0, v1, q1 }
}

/// The canonical key of a structure, usable for equality up to basis choice.
pub fn structure_key(l: &VerLieAlgebra, s: &SuperStructure) -> Vec<u16> {
    canonical(l, s).0
}

/// An automorphism carrying `a` to `b`, if one exists among `auts`.
pub fn intertwiner(
    l: &VerLieAlgebra,
    auts: &[Matrix<FieldScalar>],
    a: &SuperStructure,
    b: &SuperStructure,
) -> Option<Matrix<FieldScalar>> {
    let target = structure_key(l, b);
    auts.iter().find(|g| structure_key(l, &transform_structure(g, a)) == target).cloned()
}

/// Groups structures into orbits under `auts`, with least-key representatives.
pub fn orbits(l: &VerLieAlgebra, auts: &[Matrix<FieldScalar>], structures: &[SuperStructure]) -> Result<Vec<StructureOrbit>> {
    let mut seen: BTreeSet<Vec<u16>> = BTreeSet::new();
    let mut out = Vec::new();
    for s in structures {
        let (key, _) = canonical(l, s);
        if seen.contains(&key) {
            continue;
        }
        let mut orbit: HashMap<Vec<u16>, SuperStructure> = HashMap::new();
        let mut stabilizer = 0;
        for g in auts {
            let (k, c) = canonical(l, &transform_structure(g, s));
            if k == key {
                stabilizer += 1;
            }
            orbit.entry(k).or_insert(c);
        }
        let rep = orbit.iter().min_by(|a, b| a.0.cmp(b.0)).map(|(_, c)| c.clone()).expect("identity");
        let superdim = decompose(&rep.module(l)?)?.superdim;
        seen.extend(orbit.keys().cloned());
        out.push(StructureOrbit { representative: rep, superdim, orbit_size: orbit.len(), stabilizer_size: stabilizer });
    }
    out.sort_by(|a, b| structure_key(l, &a.representative).cmp(&structure_key(l, &b.representative)));
    Ok(out)
}

/// Every super-structure of superdimension (m0, m1, m2) passing the axioms, before grouping.
pub fn all_superstructures(l: &VerLieAlgebra, m0: usize, m1: usize, budget: usize) -> Result<Vec<SuperStructure>> {
    guard(l)?;
    let (f, n) = (l.field(), l.dim());
    let ker = l.module().kernel();
    let im = l.module().image();
    let c = subspace::extend_basis(f, n, &im, &ker);
    if m0 + m1 != c.len() {
        return Err(Error::usage(format!("m0 + m1 = {} but the cohomology has dimension {}", m0 + m1, c.len())));
    }
    let alt = alternator_analysis(l);
    let lift = |rows: &Vec<Vector>| -> Vec<Vector> {
        rows.iter()
            .map(|r| {
                let mut v = vec![f.zero(); n];
                for (coef, cv) in r.iter().zip(&c) {
                    for (x, y) in v.iter_mut().zip(cv) {
                        *x += *coef * *y;
                    }
                }
                v
            })
            .collect()
    };
    let mut out = Vec::new();
    let mut visited = 0usize;
    for r0 in subspaces(f, c.len(), m0) {
        let mut v0 = im.clone();
        v0.extend(lift(&r0));
        // The alternator image must lie in the even part.
        if !subspace::contains_all(f, n, &v0, &alt.e_basis) {
            continue;
        }
        for r1 in subspaces(f, c.len(), m1) {
            let comp = lift(&r1);
            let mut v1 = im.clone();
            v1.extend(comp.iter().cloned());
            let mut both = v0.clone();
            both.extend(comp.iter().cloned());
            if subspace::rank(f, n, &both) != ker.len() {
                continue;
            }
            let values = span_elements(f, n, &v0);
            let count = checked_pow(values.len(), comp.len(), budget, "Q1 scan")?;
            visited = visited.saturating_add(count);
            if visited > budget {
                return Err(Error::resource(format!("super-structure scan exceeds the budget {budget}"), None));
            }
            for mut code in 0..count {
                let qc: Vec<Vector> = (0..comp.len())
                    .map(|_| {
                        let v = values[code % values.len()].clone();
                        code /= values.len();
                        v
                    })
                    .collect();
                let s = SuperStructure::from_complement(l, v0.clone(), comp.clone(), qc)?;
                if check_superalgebra(l, &s).passed() {
                    out.push(s);
                }
            }
        }
    }
    Ok(out)
}

/// Super-structures of superdimension (m0, m1, ·) up to automorphisms of L.
pub fn enumerate_superstructures(l: &VerLieAlgebra, m0: usize, m1: usize, budget: usize) -> Result<Vec<StructureOrbit>> {
    let all = all_superstructures(l, m0, m1, budget)?;
    if all.is_empty() {
        return Ok(Vec::new());
    }
    let auts = automorphisms(l, budget)?;
    orbits(l, &auts, &all)
}

/// One class of restricted extensions of a fixed super-structure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RestrictedOrbit {
    pub representative: RestrictedStructure,
    pub orbit_size: usize,
    pub stabilizer_size: usize,
}

/// All Q0 extending S to a restricted structure, grouped by the stabilizer of S.
pub fn enumerate_restricted(l: &VerLieAlgebra, s: &SuperStructure, budget: usize) -> Result<Vec<RestrictedOrbit>> {
    guard(l)?;
    let base = check_superalgebra(l, s);
    if !base.passed() {
        return Err(Error::domain(format!("super-structure fails {:?}", base.failed_axioms())));
    }
    let (f, n) = (l.field(), l.dim());
    let values = span_elements(f, n, &s.v0);
    let count = checked_pow(values.len(), s.v0.len(), budget, "Q0 scan")?;
    let mut valid = Vec::new();
    for mut code in 0..count {
        let q0: Vec<Vector> = (0..s.v0.len())
            .map(|_| {
                let v = values[code % values.len()].clone();
                code /= values.len();
                v
            })
            .collect();
        let r = RestrictedStructure { q0 };
        if check_restricted(l, s, &r)?.passed() {
            valid.push(r);
        }
    }
    let skey = structure_key(l, s);
    let stab: Vec<(Matrix<FieldScalar>, Matrix<FieldScalar>)> = automorphisms(l, budget)?
        .into_iter()
        .filter(|g| structure_key(l, &transform_structure(g, s)) == skey)
        .map(|g| {
            let inv = g.inverse().expect("automorphisms are invertible");
            (g, inv)
        })
        .collect();
    let v0 = subspace::rref_basis(f, n, &s.v0);
    // g·Q0 on a list of vectors: x ↦ g Q(g⁻¹ x).
    let moved = |r: &RestrictedStructure, g: &Matrix<FieldScalar>, inv: &Matrix<FieldScalar>, on: &[Vector]| -> Vec<Vector> {
        let q = r.q_map(l, s);
        on.iter().map(|x| g.mul_vec(&q.eval(l, &inv.mul_vec(x)).expect("g preserves V0"))).collect()
    };
    let key_of = |vals: &[Vector]| {
        let mut key = Vec::new();
        encode(&mut key, vals);
        key
    };
    let mut seen: BTreeSet<Vec<u16>> = BTreeSet::new();
    let mut out = Vec::new();
    for r in &valid {
        let key = key_of(&moved(r, &stab[0].0, &stab[0].1, &v0));
        if seen.contains(&key) {
            continue;
        }
        let mut orbit: BTreeSet<Vec<u16>> = BTreeSet::new();
        let mut stabilizer = 0;
        let mut best: Option<(Vec<u16>, RestrictedStructure)> = None;
        for (g, inv) in &stab {
            let k = key_of(&moved(r, g, inv, &v0));
            if k == key {
                stabilizer += 1;
            }
            if best.as_ref().is_none_or(|(bk, _)| k < *bk) {
                best = Some((k.clone(), RestrictedStructure { q0: moved(r, g, inv, &s.v0) }));
            }
            orbit.insert(k);
        }
        seen.extend(orbit.iter().cloned());
        let (_, representative) = best.expect("identity is in the stabilizer");
        out.push(RestrictedOrbit { representative, orbit_size: orbit.len(), stabilizer_size: stabilizer });
    }
    Ok(out)
}
