//! Mixed Lie superalgebras over R/t^N.
//!
//! The data is a free module with an endomorphism d, d(d - t) = 0, and a bracket.
//! With the normalization 2t⁻² = 1 and 2t⁻¹ = t the operadic axioms read
//!
//! ```text
//! [x, y] + [y, x] - [dy, dx] = 0
//! J - [[dz,dx],y] - [[dz,x],dy] - [[y,dz],dx] - [[dy,z],dx] + t[[dz,dx],dy] + t[[dy,dz],dx] = 0
//! d[x, y] - [dx, y] - [x, dy] + t[dx, dy] = 0
//! ```
//!
//! where J = [[x,y],z] + [[z,x],y] + [[y,z],x]. The Jacobi identity is the
//! expansion of [[,],] ∘ (1 + s₁s₂ + s₂s₁) for the braiding s(x⊗y) = y⊗x - dy⊗dx
//! read off from the first axiom. Genuineness asks [y, y] ∈ 2𝔤 whenever dy = ty.

pub mod lift;

pub use lift::{lift_step, lift_to, DEFAULT_LIFT_BUDGET, LiftReport, LiftStatus, LiftStep, Obstruction, TorsorLevel};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::matrix::{axpy, is_zero_vec, subspace, zero_vec};
use crate::scalars::{FieldScalar, Matrix, Scalar, TruncRing, TruncScalar, Vector};
use crate::supermod::{HModule, SuperDim};
use crate::verlie::{check_pbw_condition, SuperStructure, VerLieAlgebra};

/// Vectors over R/t^N.
pub type TruncVector = Vec<TruncScalar>;

fn tzero(ring: TruncRing, n: usize) -> TruncVector {
    vec![ring.zero(); n]
}

fn tunit(ring: TruncRing, n: usize, i: usize) -> TruncVector {
    let mut v = tzero(ring, n);
    v[i] = ring.one();
    v
}

/// Role of a basis vector when d is in standard form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    /// du = 0.
    Even,
    /// dv = tv.
    Odd,
    /// dz = w for the partner w.
    Top(usize),
    /// dw = tw, hit by the partner z.
    Bottom(usize),
}

/// Structure constants over R/t^N on a module with d(d - t) = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedLieAlgebra {
    ring: TruncRing,
    d: Matrix<TruncScalar>,
    cube: Vec<TruncScalar>,
    sparse: Vec<Vec<(usize, TruncScalar)>>,
}

impl MixedLieAlgebra {
    pub fn new(d: Matrix<TruncScalar>, cube: Vec<TruncScalar>) -> Result<Self> {
        let ring = d.ring();
        let n = d.rows();
        if d.cols() != n {
            return Err(Error::malformed(format!("d is {}x{}, not square", d.rows(), d.cols())));
        }
        if cube.len() != n * n * n {
            return Err(Error::malformed(format!("bracket cube has {} entries, expected {}", cube.len(), n * n * n)));
        }
        if cube.iter().any(|c| c.ring() != ring) {
            return Err(Error::malformed("bracket entries over a different ring"));
        }
        let mut t_id = Matrix::zeros(ring, n, n);
        for i in 0..n {
            t_id[(i, i)] = ring.t();
        }
        if !d.mul(&d.sub(&t_id)).is_zero() {
            return Err(Error::malformed("d(d - t) != 0"));
        }
        let sparse = (0..n * n)
            .map(|p| (0..n).filter_map(|k| Some((k, cube[p * n + k])).filter(|(_, c)| !c.is_zero())).collect())
            .collect();
        Ok(MixedLieAlgebra { ring, d, cube, sparse })
    }

    pub fn abelian(d: Matrix<TruncScalar>) -> Result<Self> {
        let n = d.rows();
        let zero = d.ring().zero();
        Self::new(d, vec![zero; n * n * n])
    }

    /// Builds from sparse entries (i, j, k, c) meaning c_{ij}^k = c. Repeated entries add up.
    pub fn from_entries(d: Matrix<TruncScalar>, entries: &[(usize, usize, usize, TruncScalar)]) -> Result<Self> {
        let n = d.rows();
        let mut cube = vec![d.ring().zero(); n * n * n];
        for &(i, j, k, c) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::malformed(format!("bracket index ({i},{j},{k}) out of range for dim {n}")));
            }
            cube[(i * n + j) * n + k] += c;
        }
        Self::new(d, cube)
    }

    pub fn ring(&self) -> TruncRing {
        self.ring
    }

    pub fn order(&self) -> u32 {
        self.ring.order()
    }

    pub fn dim(&self) -> usize {
        self.d.rows()
    }

    pub fn d(&self) -> &Matrix<TruncScalar> {
        &self.d
    }

    pub fn cube(&self) -> &[TruncScalar] {
        &self.cube
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> TruncScalar {
        let n = self.dim();
        self.cube[(i * n + j) * n + k]
    }

    /// Nonzero structure constants as (i, j, k, c), in index order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, TruncScalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for (p, row) in self.sparse.iter().enumerate() {
            for &(k, c) in row {
                out.push((p / n, p % n, k, c));
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> TruncVector {
        tunit(self.ring, self.dim(), i)
    }

    pub fn apply_d(&self, x: &[TruncScalar]) -> TruncVector {
        self.d.mul_vec(x)
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> TruncVector {
        let n = self.dim();
        self.cube[(i * n + j) * n..(i * n + j + 1) * n].to_vec()
    }

    pub fn bracket(&self, x: &[TruncScalar], y: &[TruncScalar]) -> TruncVector {
        let n = self.dim();
        let mut out = tzero(self.ring, n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = *a * *b;
                for &(k, c) in &self.sparse[i * n + j] {
                    out[k] += ab * c;
                }
            }
        }
        out
    }

    /// The same constants read in R/t^order: truncated when smaller, constant representatives when larger.
    pub fn with_order(&self, order: u32) -> Result<MixedLieAlgebra> {
        let ring = self.ring.with_order(order)?;
        let d = self.d.map(ring, |x| x.with_order(order).expect("ring exists"));
        let cube = self.cube.iter().map(|x| x.with_order(order).expect("ring exists")).collect();
        MixedLieAlgebra::new(d, cube)
    }

    /// Reduction modulo t as an operadic Lie algebra in Ver4+.
    pub fn residue_algebra(&self) -> Result<VerLieAlgebra> {
        let f = self.ring.field();
        let d = self.d.map(f, |x| x.residue());
        VerLieAlgebra::new(HModule::new(d)?, self.cube.iter().map(|x| x.residue()).collect())
    }

    /// Per-index roles when d is in standard form, `None` otherwise.
    pub fn block_kinds(&self) -> Option<Vec<BlockKind>> {
        block_kinds(&self.d)
    }

    pub fn is_standard(&self) -> bool {
        self.block_kinds().is_some()
    }

    /// Names u, v, z, w (numbered when repeated) in standard form, e0, e1, ... otherwise.
    pub fn basis_names(&self) -> Vec<String> {
        match self.block_kinds() {
            Some(kinds) => kind_names(&kinds),
            None => (0..self.dim()).map(|i| format!("e{i}")).collect(),
        }
    }
}

impl Serialize for MixedLieAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let d: Vec<&[TruncScalar]> = (0..self.dim()).map(|i| self.d.row(i)).collect();
        let mut st = s.serialize_struct("MixedLieAlgebra", 4)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("basis_names", &self.basis_names())?;
        st.serialize_field("d", &d)?;
        st.serialize_field("bracket", &self.entries())?;
        st.end()
    }
}

/// Detects d in standard form: every column is 0, t e_i, or e_j with column j equal to t e_j.
pub fn block_kinds(d: &Matrix<TruncScalar>) -> Option<Vec<BlockKind>> {
    let ring = d.ring();
    let n = d.rows();
    let support = |j: usize| -> Vec<(usize, TruncScalar)> {
        (0..n).filter_map(|i| Some((i, d[(i, j)])).filter(|(_, c)| !c.is_zero())).collect()
    };
    let mut kinds = vec![BlockKind::Even; n];
    for (j, kind) in kinds.iter_mut().enumerate() {
        match support(j).as_slice() {
            [] => {}
            [(i, c)] if *i == j && *c == ring.t() => *kind = BlockKind::Odd,
            [(i, c)] if *i != j && *c == ring.one() && support(*i) == [(*i, ring.t())] => *kind = BlockKind::Top(*i),
            _ => return None,
        }
    }
    for z in 0..n {
        if let BlockKind::Top(w) = kinds[z] {
            if kinds[w] != BlockKind::Odd {
                return None;
            }
            kinds[w] = BlockKind::Bottom(z);
        }
    }
    Some(kinds)
}

fn kind_names(kinds: &[BlockKind]) -> Vec<String> {
    let letter = |k: &BlockKind| match k {
        BlockKind::Even => 'u',
        BlockKind::Odd => 'v',
        BlockKind::Top(_) => 'z',
        BlockKind::Bottom(_) => 'w',
    };
    let count = |c: char| kinds.iter().filter(|k| letter(k) == c).count();
    let mut seen = std::collections::HashMap::new();
    let mut names = vec![String::new(); kinds.len()];
    // Pairs share their number, taken from the order of the z's.
    for (i, k) in kinds.iter().enumerate() {
        let c = letter(k);
        if c == 'w' {
            continue;
        }
        let idx = seen.entry(c).or_insert(0usize);
        *idx += 1;
        names[i] = if count(c) > 1 { format!("{c}{idx}") } else { c.to_string() };
        if let BlockKind::Top(w) = k {
            names[*w] = if count(c) > 1 { format!("w{idx}") } else { "w".to_string() };
        }
    }
    names
}

/// d in standard form for the index layout of `standard(sd)`: w's, u's, v's, then z's with dz_ℓ = w_ℓ.
pub fn standard_d(ring: TruncRing, sd: SuperDim) -> Matrix<TruncScalar> {
    let n = sd.total();
    let mut d = Matrix::zeros(ring, n, n);
    for l in 0..sd.m2 {
        d[(l, l)] = ring.t();
        d[(l, sd.m2 + sd.m0 + sd.m1 + l)] = ring.one();
    }
    for j in 0..sd.m1 {
        let v = sd.m2 + sd.m0 + j;
        d[(v, v)] = ring.t();
    }
    d
}

/// Which Jacobi identity to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum JacobiForm {
    /// [[,],] ∘ (1 + s₁s₂ + s₂s₁) for the braiding s(x⊗y) = y⊗x - 2t⁻² dy⊗dx, expanded.
    Braided,
    /// J + [[dx,y],dz] + [[dz,x],dy] + [[dy,z],dx], as printed next to the lifting equations.
    Short,
    /// J - 2t⁻²([[dz,dx],y] + [[dz,x],dy] + [[dy,z],dx] + [[y,dz],dx]), as printed with the definition.
    Long,
}

fn sum(ring: TruncRing, n: usize, terms: &[TruncVector], signs: &[i64]) -> TruncVector {
    let mut out = tzero(ring, n);
    for (t, s) in terms.iter().zip(signs) {
        let c = ring.from_int(*s);
        for (o, x) in out.iter_mut().zip(t) {
            *o += c * *x;
        }
    }
    out
}

/// [x, y] + [y, x] - [dy, dx].
pub fn ss_residue(g: &MixedLieAlgebra, x: &[TruncScalar], y: &[TruncScalar]) -> TruncVector {
    let terms = [g.bracket(x, y), g.bracket(y, x), g.bracket(&g.apply_d(y), &g.apply_d(x))];
    sum(g.ring, g.dim(), &terms, &[1, 1, -1])
}

/// d[x, y] - [dx, y] - [x, dy] + t[dx, dy].
pub fn daction_residue(g: &MixedLieAlgebra, x: &[TruncScalar], y: &[TruncScalar]) -> TruncVector {
    let (dx, dy) = (g.apply_d(x), g.apply_d(y));
    let tdxdy: TruncVector = g.bracket(&dx, &dy).iter().map(|c| *c * g.ring.t()).collect();
    let terms = [g.apply_d(&g.bracket(x, y)), g.bracket(&dx, y), g.bracket(x, &dy), tdxdy];
    sum(g.ring, g.dim(), &terms, &[1, -1, -1, 1])
}

/// Left side of the chosen Jacobi identity.
///
/// The braided form is J - [[dz,dx],y] - [[dz,x],dy] - [[y,dz],dx] - [[dy,z],dx]
/// + t[[dz,dx],dy] + t[[dy,dz],dx], with J = [[x,y],z] + [[z,x],y] + [[y,z],x].
pub fn jacobi_residue(g: &MixedLieAlgebra, form: JacobiForm, x: &[TruncScalar], y: &[TruncScalar], z: &[TruncScalar]) -> TruncVector {
    let b = |p: &[TruncScalar], q: &[TruncScalar]| g.bracket(p, q);
    let (dx, dy, dz) = (g.apply_d(x), g.apply_d(y), g.apply_d(z));
    let mut terms = vec![b(&b(x, y), z), b(&b(z, x), y), b(&b(y, z), x)];
    let signs: &[i64] = match form {
        JacobiForm::Braided => {
            let t = g.ring.t();
            let scaled = |v: TruncVector| v.into_iter().map(|c| c * t).collect::<TruncVector>();
            terms.extend([
                b(&b(&dz, &dx), y),
                b(&b(&dz, x), &dy),
                b(&b(y, &dz), &dx),
                b(&b(&dy, z), &dx),
                scaled(b(&b(&dz, &dx), &dy)),
                scaled(b(&b(&dy, &dz), &dx)),
            ]);
            &[1, 1, 1, -1, -1, -1, -1, 1, 1]
        }
        JacobiForm::Short => {
            terms.extend([b(&b(&dx, y), &dz), b(&b(&dz, x), &dy), b(&b(&dy, z), &dx)]);
            &[1, 1, 1, 1, 1, 1]
        }
        JacobiForm::Long => {
            terms.extend([b(&b(&dz, &dx), y), b(&b(&dz, x), &dy), b(&b(&dy, z), &dx), b(&b(y, &dz), &dx)]);
            &[1, 1, 1, -1, -1, -1, -1]
        }
    };
    sum(g.ring, g.dim(), &terms, signs)
}

/// The braided Jacobi form modulo t, on the residue algebra.
pub fn braided_jacobi_bar(l: &VerLieAlgebra, x: &[FieldScalar], y: &[FieldScalar], z: &[FieldScalar]) -> Vector {
    let b = |p: &[FieldScalar], q: &[FieldScalar]| l.bracket(p, q);
    let (dx, dy, dz) = (l.prime(x), l.prime(y), l.prime(z));
    let terms = [
        b(&b(x, y), z),
        b(&b(z, x), y),
        b(&b(y, z), x),
        b(&b(&dz, &dx), y),
        b(&b(&dz, x), &dy),
        b(&b(y, &dz), &dx),
        b(&b(&dy, z), &dx),
    ];
    terms.iter().fold(zero_vec(l.field(), l.dim()), |acc, t| acc.iter().zip(t).map(|(a, c)| *a + *c).collect())
}

/// True when every coordinate is divisible by t² (by t^N when N < 2).
pub fn divisible_by_two(v: &[TruncScalar]) -> bool {
    v.iter().all(|c| c.valuation().is_none_or(|e| e >= 2))
}

/// A failing tuple of basis vectors together with the residue.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixedWitness {
    pub axiom: String,
    pub inputs: Vec<String>,
    pub residue: TruncVector,
}

/// Outcome of one axiom over the tuples it was evaluated on.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixedCheck {
    pub axiom: String,
    pub tuples_checked: usize,
    pub failures: usize,
    pub witnesses: Vec<MixedWitness>,
}

const MAX_WITNESSES: usize = 8;

impl MixedCheck {
    fn new(axiom: &str) -> Self {
        MixedCheck { axiom: axiom.to_string(), tuples_checked: 0, failures: 0, witnesses: Vec::new() }
    }

    fn record(&mut self, ok: bool, inputs: impl FnOnce() -> Vec<String>, residue: TruncVector) {
        self.tuples_checked += 1;
        if ok {
            return;
        }
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(MixedWitness { axiom: self.axiom.clone(), inputs: inputs(), residue });
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Results of [`check_mixed`] or [`check_operadic`].
#[derive(Clone, Debug, PartialEq, Serialize, Default)]
pub struct MixedReport {
    pub checks: Vec<MixedCheck>,
}

impl MixedReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(MixedCheck::passed)
    }

    pub fn check(&self, axiom: &str) -> Option<&MixedCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    /// All axioms except genuineness hold.
    pub fn operadic_passed(&self) -> bool {
        self.checks.iter().filter(|c| c.axiom != "genuineness").all(MixedCheck::passed)
    }

    pub fn genuine(&self) -> Option<bool> {
        self.check("genuineness").map(MixedCheck::passed)
    }

    pub fn first_failure(&self) -> Option<&MixedWitness> {
        self.checks.iter().find_map(|c| c.witnesses.first())
    }
}

/// The operadic axioms on all basis pairs and triples, for any d.
pub fn check_operadic(g: &MixedLieAlgebra, form: JacobiForm) -> MixedReport {
    let n = g.dim();
    let names = g.basis_names();
    let units: Vec<TruncVector> = (0..n).map(|i| g.unit(i)).collect();
    let mut ss = MixedCheck::new("ss");
    let mut daction = MixedCheck::new("daction");
    let mut jacobi = MixedCheck::new("jacobi");
    for i in 0..n {
        for j in 0..n {
            let tuple = || vec![names[i].clone(), names[j].clone()];
            let r = ss_residue(g, &units[i], &units[j]);
            ss.record(is_zero_vec(&r), tuple, r);
            let r = daction_residue(g, &units[i], &units[j]);
            daction.record(is_zero_vec(&r), tuple, r);
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = jacobi_residue(g, form, &units[i], &units[j], &units[k]);
                jacobi.record(is_zero_vec(&r), || vec![names[i].clone(), names[j].clone(), names[k].clone()], r);
            }
        }
    }
    MixedReport { checks: vec![ss, jacobi, daction] }
}

/// Operadic axioms plus genuineness on the basis of Ker(d - t). Requires d in standard form.
///
/// On Ker(d - t) we have [y,z] + [z,y] = [dz,dy] = 2[z,y], so checking a basis suffices.
pub fn check_mixed(g: &MixedLieAlgebra) -> Result<MixedReport> {
    let kinds = g.block_kinds().ok_or_else(|| Error::usage("d is not in standard form"))?;
    let mut report = check_operadic(g, JacobiForm::Braided);
    let names = g.basis_names();
    let mut genuine = MixedCheck::new("genuineness");
    for (i, k) in kinds.iter().enumerate() {
        if matches!(k, BlockKind::Odd | BlockKind::Bottom(_)) {
            let y = g.unit(i);
            let r = g.bracket(&y, &y);
            genuine.record(divisible_by_two(&r), || vec![names[i].clone()], r);
        }
    }
    report.checks.push(genuine);
    Ok(report)
}

// Elements of Ker(d - t) whose residues span V1: basis vectors in standard form,
// otherwise t⁻¹dk for lifts k of Ker D and dh for a complement h of Ker D.
// The second route is exact only modulo t^(N-1).
fn kernel_d_minus_t(g: &MixedLieAlgebra) -> Result<(Vec<TruncVector>, bool)> {
    if let Some(kinds) = g.block_kinds() {
        let ys = kinds
            .iter()
            .enumerate()
            .filter(|(_, k)| matches!(k, BlockKind::Odd | BlockKind::Bottom(_)))
            .map(|(i, _)| g.unit(i))
            .collect();
        return Ok((ys, true));
    }
    if g.order() < 2 {
        return Err(Error::usage("d is not in standard form and N < 2"));
    }
    let ring = g.ring;
    let f = ring.field();
    let n = g.dim();
    let bar = g.residue_algebra()?;
    let kernel = bar.module().kernel();
    let mut ys = Vec::new();
    for k in &kernel {
        let lift: TruncVector = k.iter().map(|c| ring.lift(*c)).collect();
        let y = g
            .apply_d(&lift)
            .iter()
            .map(|c| c.div_t().and_then(|q| q.with_order(ring.order())))
            .collect::<Result<TruncVector>>()?;
        ys.push(y);
    }
    for h in subspace::complement_units(f, n, &kernel) {
        let lift: TruncVector = h.iter().map(|c| ring.lift(*c)).collect();
        ys.push(g.apply_d(&lift));
    }
    Ok((ys, false))
}

/// Genuineness, or `None` when it cannot be decided at this truncation.
pub fn is_genuine(g: &MixedLieAlgebra) -> Result<Option<bool>> {
    let (ys, exact) = kernel_d_minus_t(g)?;
    if !exact && g.order() < 3 {
        return Ok(None);
    }
    Ok(Some(ys.iter().all(|y| divisible_by_two(&g.bracket(y, y)))))
}

/// The mod-t reduction with its induced super-structure.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub algebra: VerLieAlgebra,
    pub v0: Vec<Vector>,
    pub v1: Vec<Vector>,
    pub genuine: Option<bool>,
    /// Present when the algebra is genuine and N is large enough to read off t⁻²[y, y] mod t.
    pub structure: Option<SuperStructure>,
}

impl Reduction {
    pub fn pbw(&self) -> bool {
        check_pbw_condition(&self.algebra)
    }
}

// Vectors Σ λ_i k_i such that Σ λ_i vals_i lies in span(target).
fn preimage(f: crate::scalars::GaloisField, n: usize, ks: &[Vector], vals: &[Vector], target: &[Vector]) -> Vec<Vector> {
    let cols: Vec<Vector> = vals.iter().chain(target).cloned().collect();
    if cols.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_cols(f, n, &cols).expect("columns of length n");
    let mut out = Vec::new();
    for lam in m.kernel() {
        let mut v = zero_vec(f, n);
        for (i, k) in ks.iter().enumerate() {
            axpy(&mut v, lam[i], k);
        }
        out.push(v);
    }
    subspace::rref_basis(f, n, &out)
}

/// Reduction modulo t: D, V0 and V1 through the idempotent ē(v) = t⁻¹dṽ mod t, and Q̄(y) = t⁻²[y, y] mod t.
pub fn reduce(g: &MixedLieAlgebra) -> Result<Reduction> {
    let ring = g.ring;
    if ring.order() < 2 {
        return Err(Error::usage("the reduction needs N >= 2 to see t⁻¹d"));
    }
    let f = ring.field();
    let n = g.dim();
    let algebra = g.residue_algebra()?;
    let kernel = algebra.module().kernel();
    let image = algebra.module().image();
    let mut e = Vec::new();
    for k in &kernel {
        let lift: TruncVector = k.iter().map(|c| ring.lift(*c)).collect();
        let v = g
            .apply_d(&lift)
            .iter()
            .map(|c| c.div_t().map(|q| q.residue()))
            .collect::<Result<Vector>>()?;
        e.push(v);
    }
    let e_minus: Vec<Vector> = e.iter().zip(&kernel).map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x - *y).collect()).collect();
    let v0 = preimage(f, n, &kernel, &e, &image);
    let v1 = preimage(f, n, &kernel, &e_minus, &image);
    let genuine = is_genuine(g)?;
    let mut structure = None;
    let (ys, exact) = kernel_d_minus_t(g)?;
    let readable = if exact { ring.order() >= 3 } else { ring.order() >= 4 };
    if genuine == Some(true) && readable {
        let mut basis: Vec<Vector> = Vec::new();
        let mut q1 = Vec::new();
        for y in &ys {
            let ybar: Vector = y.iter().map(|c| c.residue()).collect();
            let mut trial = basis.clone();
            trial.push(ybar.clone());
            if subspace::rank(f, n, &trial) == trial.len() {
                let q = g.bracket(y, y).iter().map(|c| c.div_t_pow(2).map(|x| x.residue())).collect::<Result<Vector>>()?;
                basis.push(ybar);
                q1.push(q);
            }
        }
        if !subspace::equal(f, n, &basis, &v1) {
            return Err(Error::domain("lifts in Ker(d - t) do not span V1"));
        }
        structure = Some(SuperStructure::new(v0.clone(), basis, q1)?);
    }
    Ok(Reduction { algebra, v0, v1, genuine, structure })
}

/// gl(n0|n1|n2) over R/t^N: End(V) with d_A f = df + fd - t dfd and [x, y] = xy - yx + d_A(y) d_A(x).
///
/// V has the standard layout of [`standard_d`]; E_rs sits at index r*n + s.
pub fn gl_mixed(ring: TruncRing, n0: usize, n1: usize, n2: usize) -> Result<MixedLieAlgebra> {
    let dv = standard_d(ring, SuperDim::new(n0, n1, n2));
    let n = dv.rows();
    let big = n * n;
    let t = ring.t();
    let unit = |i: usize| {
        let mut m = Matrix::zeros(ring, n, n);
        m[(i / n, i % n)] = ring.one();
        m
    };
    let d_a = |x: &Matrix<TruncScalar>| {
        let dxd = dv.mul(x).mul(&dv).map(ring, |c| c * t);
        dv.mul(x).add(&x.mul(&dv)).sub(&dxd)
    };
    let units: Vec<Matrix<TruncScalar>> = (0..big).map(unit).collect();
    let primes: Vec<Matrix<TruncScalar>> = units.iter().map(d_a).collect();
    let mut d = Matrix::zeros(ring, big, big);
    for (j, p) in primes.iter().enumerate() {
        for (i, c) in p.entries().iter().enumerate() {
            d[(i, j)] = *c;
        }
    }
    let mut cube = Vec::with_capacity(big * big * big);
    for i in 0..big {
        for j in 0..big {
            let (x, y) = (&units[i], &units[j]);
            let b = x.mul(y).sub(&y.mul(x)).add(&primes[j].mul(&primes[i]));
            cube.extend_from_slice(b.entries());
        }
    }
    MixedLieAlgebra::new(d, cube)
}

/// The example with basis x, y, dx = 0, dy = ty and [y, y] = x: operadic but not genuine.
pub fn counterexample_coun(ring: TruncRing) -> Result<MixedLieAlgebra> {
    let mut d = Matrix::zeros(ring, 2, 2);
    d[(1, 1)] = ring.t();
    MixedLieAlgebra::from_entries(d, &[(1, 1, 0, ring.one())])
}
