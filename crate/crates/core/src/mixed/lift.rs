//! Order-by-order lifting of a Lie superalgebra in Ver4+ to R/t^N.
//!
//! A candidate C̃ over R/t^(n+1) that satisfies the axioms modulo t^n is
//! corrected to C̃ + t^n F. The residues of (ss), (jacobi), (daction) divided
//! by t^n give the blocks D2, D3, E2; genuineness gives the block YY. Modulo t
//! they are affine in F, so the corrections form an affine space over k.

use serde::Serialize;

use super::{
    braided_jacobi_bar, block_kinds, daction_residue, jacobi_residue, kind_names, ss_residue, standard_d, BlockKind, JacobiForm,
    MixedLieAlgebra, TruncVector,
};
use crate::error::{Error, Result};
use crate::scalars::matrix::unit_vec;
use crate::scalars::{solve_linear, FieldScalar, GaloisField, Matrix, Scalar, TruncRing, TruncScalar, Vector};
use crate::supermod::{decompose, HModule, SuperDim};
use crate::verlie::{
    check_superalgebra, derivation_residue, skew_residue, SuperStructure, VerLieAlgebra,
};

/// A sparse vector over k with named coordinates.
pub type NamedVector = Vec<(String, FieldScalar)>;

/// A left-null combination of equations whose right-hand sides do not cancel.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Obstruction {
    /// The truncation order that could not be reached.
    pub order: u32,
    pub blocks: Vec<String>,
    /// Equations with their weights in the combination and their constant residues.
    pub equations: Vec<(String, FieldScalar, FieldScalar)>,
    /// Σ weight · residue, nonzero.
    pub residue: FieldScalar,
}

/// The linear system of one step and its outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiftStep {
    /// Lifting from R/t^n to R/t^(n+1).
    pub n: u32,
    pub unknowns: Vec<String>,
    pub equations: Vec<String>,
    /// Constant residues, one per equation.
    pub residues: Vec<FieldScalar>,
    pub matrix: Vec<Vector>,
    pub particular: Option<Vector>,
    pub kernel: Vec<Vector>,
    pub obstruction: Option<Obstruction>,
}

impl LiftStep {
    pub fn solvable(&self) -> bool {
        self.particular.is_some()
    }

    /// The residue of a named equation.
    pub fn residue(&self, name: &str) -> Option<FieldScalar> {
        self.equations.iter().position(|e| e == name).map(|i| self.residues[i])
    }

    /// Row of the named equation as (unknown, coefficient) pairs.
    pub fn row(&self, name: &str) -> Option<NamedVector> {
        let i = self.equations.iter().position(|e| e == name)?;
        Some(named(&self.unknowns, &self.matrix[i]))
    }

    pub fn named_particular(&self) -> Option<NamedVector> {
        self.particular.as_ref().map(|p| named(&self.unknowns, p))
    }
}

fn named(names: &[String], v: &[FieldScalar]) -> NamedVector {
    names.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(n, c)| (n.clone(), *c)).collect()
}

fn tuple_name(block: &str, names: &[String], idx: &[usize], k: &str) -> String {
    let args: Vec<&str> = idx.iter().map(|i| names[*i].as_str()).collect();
    format!("{block}({})^{k}", args.join(","))
}

/// Unknown F_{ij}^k of the correction.
pub fn unknown_name(names: &[String], i: usize, j: usize, k: usize) -> String {
    format!("F({},{})^{}", names[i], names[j], names[k])
}

fn divide(v: &[TruncScalar], n: u32, what: &str) -> Result<Vector> {
    v.iter()
        .map(|c| {
            if c.valuation().is_some_and(|e| e < n) {
                return Err(Error::usage(format!("{what} residue {c:?} is not divisible by t^{n}")));
            }
            Ok(if n == 0 { c.residue() } else { c.div_t_pow(n)?.residue() })
        })
        .collect()
}

fn single(module: &HModule, n: usize, idx: usize) -> VerLieAlgebra {
    let f = module.field();
    let mut cube = vec![f.zero(); n * n * n];
    cube[idx] = f.one();
    VerLieAlgebra::new(module.clone(), cube).expect("cube of the right size")
}

fn sum_algebra(a: &VerLieAlgebra, b: &VerLieAlgebra) -> VerLieAlgebra {
    let cube = a.cube().iter().zip(b.cube()).map(|(x, y)| *x + *y).collect();
    VerLieAlgebra::new(a.module().clone(), cube).expect("same shape")
}

/// One lifting step.
///
/// `candidate` lives over R/t^(n+1) with d in standard form and satisfies the
/// axioms modulo t^n. `q` lists Q̄(e_i) for the indices spanning Ker(d - t);
/// `None` drops the genuineness block altogether.
pub fn lift_step(candidate: &MixedLieAlgebra, n: u32, q: Option<&[(usize, Vector)]>) -> Result<LiftStep> {
    if n == 0 || candidate.order() != n + 1 {
        return Err(Error::usage(format!("candidate over R/t^{} cannot be a step from order {n}", candidate.order())));
    }
    let kinds = block_kinds(candidate.d()).ok_or_else(|| Error::usage("d is not in standard form"))?;
    let dim = candidate.dim();
    let names = kind_names(&kinds);
    let bar = candidate.residue_algebra()?;
    let module = bar.module().clone();
    let f = bar.field();
    let units: Vec<TruncVector> = (0..dim).map(|i| candidate.unit(i)).collect();
    let ebar: Vec<Vector> = (0..dim).map(|i| unit_vec(f, dim, i)).collect();
    let ys: Vec<usize> = (0..dim).filter(|i| matches!(kinds[*i], BlockKind::Odd | BlockKind::Bottom(_))).collect();

    let mut equations = Vec::new();
    let mut residues = Vec::new();
    // Linear part as closures over a single-entry algebra F, evaluated per unknown.
    let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).collect();
    let triples: Vec<(usize, usize, usize)> =
        pairs.iter().flat_map(|&(i, j)| (0..dim).map(move |k| (i, j, k))).collect();
    for &(i, j) in &pairs {
        let r = divide(&ss_residue(candidate, &units[i], &units[j]), n, "ss")?;
        for k in 0..dim {
            equations.push(tuple_name("D2", &names, &[i, j], &names[k]));
            residues.push(r[k]);
        }
    }
    for &(i, j) in &pairs {
        let r = divide(&daction_residue(candidate, &units[i], &units[j]), n, "daction")?;
        for k in 0..dim {
            equations.push(tuple_name("E2", &names, &[i, j], &names[k]));
            residues.push(r[k]);
        }
    }
    for &(i, j, l) in &triples {
        let r = divide(&jacobi_residue(candidate, JacobiForm::Braided, &units[i], &units[j], &units[l]), n, "jacobi")?;
        for k in 0..dim {
            equations.push(tuple_name("D3", &names, &[i, j, l], &names[k]));
            residues.push(r[k]);
        }
    }
    let yy_active = q.is_some() && n <= 2;
    if let (Some(q), true) = (q, yy_active) {
        for &y in &ys {
            let b = candidate.bracket(&units[y], &units[y]);
            let mut r = divide(&b, n, "genuineness")?;
            if n == 2 {
                let qy = q
                    .iter()
                    .find(|(i, _)| *i == y)
                    .map(|(_, v)| v)
                    .ok_or_else(|| Error::usage(format!("no value of Q given for {}", names[y])))?;
                for k in 0..dim {
                    r[k] -= qy[k];
                }
            }
            for k in 0..dim {
                equations.push(tuple_name("YY", &names, &[y], &names[k]));
                residues.push(r[k]);
            }
        }
    }

    let n_unknowns = dim * dim * dim;
    let mut unknowns = Vec::with_capacity(n_unknowns);
    let mut columns = Vec::with_capacity(n_unknowns);
    let jac_bar: Vec<Vector> = triples.iter().map(|&(i, j, l)| braided_jacobi_bar(&bar, &ebar[i], &ebar[j], &ebar[l])).collect();
    for idx in 0..n_unknowns {
        let (i, j, k) = (idx / (dim * dim), (idx / dim) % dim, idx % dim);
        unknowns.push(unknown_name(&names, i, j, k));
        let fa = single(&module, dim, idx);
        let both = sum_algebra(&bar, &fa);
        let mut col = Vec::with_capacity(equations.len());
        for &(a, b) in &pairs {
            col.extend(skew_residue(&fa, &ebar[a], &ebar[b]));
        }
        for &(a, b) in &pairs {
            col.extend(derivation_residue(&fa, &ebar[a], &ebar[b]));
        }
        for (t, &(a, b, c)) in triples.iter().enumerate() {
            let whole = braided_jacobi_bar(&both, &ebar[a], &ebar[b], &ebar[c]);
            let pure = braided_jacobi_bar(&fa, &ebar[a], &ebar[b], &ebar[c]);
            col.extend((0..dim).map(|k| whole[k] - jac_bar[t][k] - pure[k]));
        }
        if yy_active {
            for &y in &ys {
                col.extend(fa.bracket(&ebar[y], &ebar[y]));
            }
        }
        columns.push(col);
    }
    let a = Matrix::from_cols(f, equations.len(), &columns)?;
    let rhs: Vector = residues.iter().map(|r| -*r).collect();
    let matrix: Vec<Vector> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
    let (particular, kernel, obstruction) = match solve_linear(&a, &rhs)? {
        Some(sol) => (Some(sol.particular), sol.kernel, None),
        None => (None, Vec::new(), Some(certificate(&a, &equations, &residues, n + 1))),
    };
    Ok(LiftStep { n, unknowns, equations, residues, matrix, particular, kernel, obstruction })
}

// y with yᵀA = 0 and yᵀr != 0; some basis vector of the left kernel works when the system is inconsistent.
fn certificate(a: &Matrix<FieldScalar>, equations: &[String], residues: &[FieldScalar], order: u32) -> Obstruction {
    let f = a.field();
    let left = a.transpose().kernel();
    let dot = |y: &Vector| y.iter().zip(residues).fold(f.zero(), |acc, (p, q)| acc + *p * *q);
    let mut best: Option<Vector> = None;
    for y in left {
        if !dot(&y).is_zero() {
            let weight = y.iter().filter(|c| !c.is_zero()).count();
            if best.as_ref().is_none_or(|b| weight < b.iter().filter(|c| !c.is_zero()).count()) {
                best = Some(y);
            }
        }
    }
    let y = best.expect("inconsistent system has a certificate");
    let mut blocks: Vec<String> = Vec::new();
    let mut eqs = Vec::new();
    for (i, c) in y.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let block = equations[i].split('(').next().unwrap_or_default().to_string();
        if !blocks.contains(&block) {
            blocks.push(block);
        }
        eqs.push((equations[i].clone(), *c, residues[i]));
    }
    Obstruction { order, blocks, equations: eqs, residue: dot(&y) }
}

/// C̃ + t^n F for a correction indexed like the unknowns of [`lift_step`].
pub fn apply_correction(candidate: &MixedLieAlgebra, n: u32, correction: &[FieldScalar]) -> Result<MixedLieAlgebra> {
    let ring = candidate.ring();
    if correction.len() != candidate.cube().len() {
        return Err(Error::usage("correction has the wrong number of entries"));
    }
    let cube = candidate
        .cube()
        .iter()
        .zip(correction)
        .map(|(c, x)| *c + ring.lift(*x).mul_t_pow(n))
        .collect();
    MixedLieAlgebra::new(candidate.d().clone(), cube)
}

/// Outcome classes of [`lift_to`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftStatus {
    Lifted,
    Obstructed,
    ExhaustedSearch,
}

/// Particular correction and kernel basis found at one order along the returned path.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorsorLevel {
    /// The order reached by this correction.
    pub order: u32,
    pub particular: NamedVector,
    pub kernel: Vec<NamedVector>,
    /// The element actually used.
    pub chosen: NamedVector,
}

/// Result of [`lift_to`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiftReport {
    pub target_order: u32,
    pub achieved_order: u32,
    pub status: LiftStatus,
    /// True when every element of every torsor met was tried.
    pub exhaustive: bool,
    pub nodes: usize,
    pub obstruction: Option<Obstruction>,
    pub torsor: Vec<TorsorLevel>,
    /// Columns are the standard basis (w, u, v, z) in the input coordinates.
    pub basis_change: Vec<Vector>,
    pub basis_names: Vec<String>,
    /// Whether the constant lift already satisfies every step without correction.
    pub naive_lift_works: bool,
    pub lifted: Option<MixedLieAlgebra>,
}

struct Search<'a> {
    ring_field: GaloisField,
    sd: SuperDim,
    target: u32,
    q: &'a [(usize, Vector)],
    budget: usize,
    nodes: usize,
    exhausted_budget: bool,
    best_order: u32,
    best_path: Vec<TorsorLevel>,
    obstruction: Option<Obstruction>,
}

// All elements p + Σ c_i k_i, particular first.
fn torsor_elements(field: GaloisField, p: &[FieldScalar], kernel: &[Vector], index: u64) -> Vector {
    let q = field.order() as u64;
    let mut v = p.to_vec();
    let mut rest = index;
    for k in kernel {
        let c = (rest % q) as u16;
        rest /= q;
        if c != 0 {
            let c = field.element(c).expect("in range");
            for (x, y) in v.iter_mut().zip(k) {
                *x += c * *y;
            }
        }
    }
    v
}

impl Search<'_> {
    // Tries to extend `current` (over R/t^n) to the target. Returns the lift on success.
    fn extend(&mut self, current: &MixedLieAlgebra, n: u32, path: &mut Vec<TorsorLevel>) -> Result<Option<MixedLieAlgebra>> {
        if n > self.best_order {
            self.best_order = n;
            self.best_path = path.clone();
        }
        if n >= self.target {
            return Ok(Some(current.clone()));
        }
        if self.nodes >= self.budget {
            self.exhausted_budget = true;
            return Ok(None);
        }
        self.nodes += 1;
        let ring = TruncRing::new(self.ring_field, n + 1)?;
        let cube = current.cube().iter().map(|c| c.with_order(n + 1)).collect::<Result<Vec<_>>>()?;
        let candidate = MixedLieAlgebra::new(standard_d(ring, self.sd), cube)?;
        let step = lift_step(&candidate, n, Some(self.q))?;
        let Some(p) = step.particular.clone() else {
            let ob = step.obstruction.clone().expect("unsolvable step carries a certificate");
            if self.obstruction.as_ref().is_none_or(|o| o.order <= ob.order) {
                self.obstruction = Some(ob);
            }
            return Ok(None);
        };
        let f = self.ring_field;
        let count = (f.order() as u64).checked_pow(step.kernel.len() as u32).unwrap_or(u64::MAX);
        for index in 0..count {
            let choice = torsor_elements(f, &p, &step.kernel, index);
            let next = apply_correction(&candidate, n, &choice)?;
            path.push(TorsorLevel {
                order: n + 1,
                particular: named(&step.unknowns, &p),
                kernel: step.kernel.iter().map(|k| named(&step.unknowns, k)).collect(),
                chosen: named(&step.unknowns, &choice),
            });
            let found = self.extend(&next, n + 1, path)?;
            path.pop();
            if found.is_some() {
                return Ok(found);
            }
            if self.exhausted_budget {
                return Ok(None);
            }
            if index + 1 < count && self.nodes >= self.budget {
                self.exhausted_budget = true;
                return Ok(None);
            }
        }
        Ok(None)
    }
}

/// Default number of lifting steps tried by [`lift_to`].
pub const DEFAULT_LIFT_BUDGET: usize = 4096;

/// Lifts (L, S) to R/t^target.
///
/// The super-structure is first put in standard form; the mixed module is then
/// m0 R0 ⊕ m1 R1 ⊕ m2 S with d hard-coded. The search is depth first over the
/// affine spaces of corrections, particular solution first.
pub fn lift_to(l: &VerLieAlgebra, s: &SuperStructure, target: u32, budget: usize) -> Result<LiftReport> {
    let report = check_superalgebra(l, s);
    if !report.passed() {
        return Err(Error::domain(format!("input is not a Lie superalgebra: fails {:?}", report.failed_axioms())));
    }
    if target == 0 {
        return Err(Error::usage("target order must be at least 1"));
    }
    let f = l.field();
    TruncRing::new(f, target)?;
    let dec = decompose(&s.module(l)?)?;
    let p = dec.change_of_basis.clone();
    let pinv = p.inverse().expect("adapted basis is a basis");
    let std = l.transform(&p)?;
    let sd = dec.superdim;
    let dim = l.dim();

    // Q on the Ker(d - t) indices: w_ℓ (from h_ℓ) and the v's.
    let mut q = Vec::new();
    for lidx in 0..sd.m2 {
        let h = unit_vec(f, dim, sd.m2 + sd.m0 + sd.m1 + lidx);
        q.push((lidx, std.bracket(&h, &h)));
    }
    for j in 0..sd.m1 {
        let col = p.col(sd.m2 + sd.m0 + j);
        let value = s.q(l, &col).ok_or_else(|| Error::domain("Q undefined on V1 basis vector"))?;
        q.push((sd.m2 + sd.m0 + j, pinv.mul_vec(&value)));
    }

    let ring1 = TruncRing::new(f, 1)?;
    let d1 = standard_d(ring1, sd);
    let cube1 = std.cube().iter().map(|c| ring1.lift(*c)).collect();
    let start = MixedLieAlgebra::new(d1, cube1)?;
    let mut search = Search {
        ring_field: f,
        sd,
        target,
        q: &q,
        budget,
        nodes: 0,
        exhausted_budget: false,
        best_order: 1,
        best_path: Vec::new(),
        obstruction: None,
    };
    let mut path = Vec::new();
    let lifted = search.extend(&start, 1, &mut path)?;
    let names = kind_names(&block_kinds(&standard_d(TruncRing::new(f, 2)?, sd)).expect("standard"));
    let (status, torsor) = match &lifted {
        Some(_) => (LiftStatus::Lifted, search.best_path.clone()),
        None => {
            let at_two = search.obstruction.as_ref().is_some_and(|o| o.order == 2);
            let status = if at_two || !search.exhausted_budget {
                LiftStatus::Obstructed
            } else {
                LiftStatus::ExhaustedSearch
            };
            (status, search.best_path.clone())
        }
    };
    let naive_lift_works = lifted.is_some() && torsor.iter().all(|t| t.chosen.is_empty());
    Ok(LiftReport {
        target_order: target,
        achieved_order: search.best_order,
        status,
        exhaustive: !search.exhausted_budget,
        nodes: search.nodes,
        obstruction: if lifted.is_some() { None } else { search.obstruction },
        torsor,
        basis_change: p.columns(),
        basis_names: names,
        naive_lift_works,
        lifted,
    })
}
