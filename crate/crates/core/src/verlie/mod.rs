//! Lie algebras in Ver4+(k) given by structure constants.
//!
//! The operadic axioms are the braided skew-symmetry, the six-term Jacobi
//! identity and the twisted Leibniz rule for D:
//!
//! ```text
//! [x, y] = [y, x] + [y', x']
//! [[x,y],z] + [[z,x],y] + [[y,z],x] + [[x',y],z'] + [[z',x],y'] + [[y',z],x'] = 0
//! [x, y]' = [x', y] + [x, y']
//! ```
//!
//! All three are multilinear, so checking them on basis tuples is complete.

mod gl;
mod report;
mod superalg;

pub use gl::{gl, gl_formula_superdim, GlAlgebra};
pub use report::{AxiomCheck, AxiomReport, Witness};
pub use superalg::{
    check_classical, check_restricted, check_superalgebra, cohomology_superalgebra, q_action_residue, q_prime_residue, QuadraticMap,
    RestrictedStructure, SuperStructure,
};

use crate::error::{Error, Result};
use crate::scalars::matrix::{add_vec, axpy, is_zero_vec, subspace, unit_vec, zero_vec};
use crate::scalars::{FieldScalar, GaloisField, Matrix, Scalar, Vector};
use crate::supermod::HModule;

/// A bracket on an H-module, stored as a dense cube c[i][j][k] with [e_i, e_j] = Σ_k c[i][j][k] e_k.
#[derive(Clone, Debug, PartialEq)]
pub struct VerLieAlgebra {
    module: HModule,
    cube: Vec<FieldScalar>,
    // Nonzero entries of each [e_i, e_j], for fast sparse evaluation.
    sparse: Vec<Vec<(usize, FieldScalar)>>,
    // Columns of D.
    primes: Vec<Vector>,
}

impl VerLieAlgebra {
    pub fn new(module: HModule, cube: Vec<FieldScalar>) -> Result<Self> {
        let n = module.dim();
        if cube.len() != n * n * n {
            return Err(Error::malformed(format!("bracket cube has {} entries, expected {}", cube.len(), n * n * n)));
        }
        if cube.iter().any(|c| c.field() != module.field()) {
            return Err(Error::malformed("bracket entries over a different field"));
        }
        let sparse = (0..n * n)
            .map(|p| (0..n).filter_map(|k| Some((k, cube[p * n + k])).filter(|(_, c)| !c.is_zero())).collect())
            .collect();
        let primes = module.d().columns();
        Ok(VerLieAlgebra { module, cube, sparse, primes })
    }

    pub fn abelian(module: HModule) -> Self {
        let n = module.dim();
        let zero = module.field().zero();
        Self::new(module, vec![zero; n * n * n]).expect("cube of the right size")
    }

    /// Builds from sparse entries (i, j, k, c) meaning c_{ij}^k = c. Repeated entries add up.
    pub fn from_entries(module: HModule, entries: &[(usize, usize, usize, FieldScalar)]) -> Result<Self> {
        let n = module.dim();
        let mut cube = vec![module.field().zero(); n * n * n];
        for &(i, j, k, c) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::malformed(format!("bracket index ({i},{j},{k}) out of range for dim {n}")));
            }
            cube[(i * n + j) * n + k] += c;
        }
        Self::new(module, cube)
    }

    pub fn module(&self) -> &HModule {
        &self.module
    }

    pub fn field(&self) -> GaloisField {
        self.module.field()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn d(&self) -> &Matrix<FieldScalar> {
        self.module.d()
    }

    pub fn cube(&self) -> &[FieldScalar] {
        &self.cube
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> FieldScalar {
        let n = self.dim();
        self.cube[(i * n + j) * n + k]
    }

    /// Nonzero structure constants as (i, j, k, c), in index order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, FieldScalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for (p, row) in self.sparse.iter().enumerate() {
            for &(k, c) in row {
                out.push((p / n, p % n, k, c));
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.sparse.iter().all(|r| r.is_empty())
    }

    pub fn prime(&self, x: &[FieldScalar]) -> Vector {
        let mut out = zero_vec(self.field(), self.dim());
        for (i, c) in x.iter().enumerate() {
            axpy(&mut out, *c, &self.primes[i]);
        }
        out
    }

    pub fn basis_prime(&self, i: usize) -> &[FieldScalar] {
        &self.primes[i]
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        let n = self.dim();
        self.cube[(i * n + j) * n..(i * n + j + 1) * n].to_vec()
    }

    /// [x, y] by bilinearity.
    pub fn bracket(&self, x: &[FieldScalar], y: &[FieldScalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(self.field(), n);
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

    /// The algebra in a new basis; column j of `p` is the j-th new basis vector in old coordinates.
    pub fn transform(&self, p: &Matrix<FieldScalar>) -> Result<VerLieAlgebra> {
        let n = self.dim();
        let inv = p.inverse().ok_or_else(|| Error::usage("change of basis is not invertible"))?;
        let d = inv.mul(self.d()).mul(p);
        let cols = p.columns();
        let mut cube = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                cube.extend(inv.mul_vec(&self.bracket(&cols[i], &cols[j])));
            }
        }
        VerLieAlgebra::new(HModule::new(d)?, cube)
    }

    /// Copy with one structure constant replaced.
    pub fn with_constant(&self, i: usize, j: usize, k: usize, c: FieldScalar) -> VerLieAlgebra {
        let n = self.dim();
        let mut cube = self.cube.clone();
        cube[(i * n + j) * n + k] = c;
        VerLieAlgebra::new(self.module.clone(), cube).expect("same shape")
    }

    fn unit(&self, i: usize) -> Vector {
        unit_vec(self.field(), self.dim(), i)
    }
}

/// [x, y] - [y, x] - [y', x'].
pub fn skew_residue(l: &VerLieAlgebra, x: &[FieldScalar], y: &[FieldScalar]) -> Vector {
    let mut r = l.bracket(x, y);
    let yx = l.bracket(y, x);
    let tw = l.bracket(&l.prime(y), &l.prime(x));
    for k in 0..r.len() {
        r[k] = r[k] - yx[k] - tw[k];
    }
    r
}

/// Left side of the six-term Jacobi identity.
pub fn jacobi_residue(l: &VerLieAlgebra, x: &[FieldScalar], y: &[FieldScalar], z: &[FieldScalar]) -> Vector {
    let (xp, yp, zp) = (l.prime(x), l.prime(y), l.prime(z));
    let terms = [
        l.bracket(&l.bracket(x, y), z),
        l.bracket(&l.bracket(z, x), y),
        l.bracket(&l.bracket(y, z), x),
        l.bracket(&l.bracket(&xp, y), &zp),
        l.bracket(&l.bracket(&zp, x), &yp),
        l.bracket(&l.bracket(&yp, z), &xp),
    ];
    terms.iter().fold(zero_vec(l.field(), l.dim()), |acc, t| add_vec(&acc, t))
}

/// [x, y]' - [x', y] - [x, y'].
pub fn derivation_residue(l: &VerLieAlgebra, x: &[FieldScalar], y: &[FieldScalar]) -> Vector {
    let mut r = l.prime(&l.bracket(x, y));
    let a = l.bracket(&l.prime(x), y);
    let b = l.bracket(x, &l.prime(y));
    for k in 0..r.len() {
        r[k] = r[k] - a[k] - b[k];
    }
    r
}

/// Checks the three operadic axioms on all basis tuples.
pub fn check_operadic_axioms(l: &VerLieAlgebra) -> AxiomReport {
    let n = l.dim();
    let units: Vec<Vector> = (0..n).map(|i| l.unit(i)).collect();
    let mut skew = AxiomCheck::new("skew");
    let mut jacobi = AxiomCheck::new("jacobi");
    let mut leibniz = AxiomCheck::new("derivation");
    for i in 0..n {
        for j in 0..n {
            skew.record(vec![units[i].clone(), units[j].clone()], skew_residue(l, &units[i], &units[j]));
            leibniz.record(vec![units[i].clone(), units[j].clone()], derivation_residue(l, &units[i], &units[j]));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = jacobi_residue(l, &units[i], &units[j], &units[k]);
                jacobi.record_with(|| vec![units[i].clone(), units[j].clone(), units[k].clone()], r);
            }
        }
    }
    AxiomReport { checks: vec![skew, jacobi, leibniz] }
}

/// A vector x with x' = 0 and [x, x] != 0, if one exists.
///
/// On Ker D the alternator is Frobenius-semilinear ([x,y] + [y,x] = [x',y'] = 0),
/// so it vanishes on Ker D iff it vanishes on a basis.
pub fn pbw_witness(l: &VerLieAlgebra) -> Option<Vector> {
    l.module().kernel().into_iter().find(|x| !is_zero_vec(&l.bracket(x, x)))
}

/// The PBW condition: [x, x] = 0 whenever x' = 0.
pub fn check_pbw_condition(l: &VerLieAlgebra) -> bool {
    pbw_witness(l).is_none()
}

/// Result of [`alternator_analysis`].
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct AlternatorReport {
    pub is_alternating: bool,
    pub is_weakly_alternating: bool,
    pub is_skew_symmetric: bool,
    /// Representatives in Ker D of a basis of E(L) ⊆ Ker D / Im D.
    pub e_basis: Vec<Vector>,
}

impl AlternatorReport {
    pub fn e_dim(&self) -> usize {
        self.e_basis.len()
    }
}

/// Alternator x ↦ [x, x] and its image E(L) in the cohomology.
///
/// The reduced alternator is Frobenius-semilinear on L / Ker D and k is perfect,
/// so E(L) is spanned by the values on a basis of a complement of Ker D.
pub fn alternator_analysis(l: &VerLieAlgebra) -> AlternatorReport {
    let (f, n) = (l.field(), l.dim());
    let mut is_skew_symmetric = true;
    'outer: for i in 0..n {
        for j in i + 1..n {
            if !is_zero_vec(&add_vec(&l.basis_bracket(i, j), &l.basis_bracket(j, i))) {
                is_skew_symmetric = false;
                break 'outer;
            }
        }
    }
    let diagonal_zero = (0..n).all(|i| is_zero_vec(&l.basis_bracket(i, i)));
    let ker = l.module().kernel();
    let im = l.module().image();
    let h = subspace::complement_units(f, n, &ker);
    let values: Vec<Vector> = h.iter().map(|x| l.bracket(x, x)).collect();
    let e_basis = subspace::extend_basis(f, n, &im, &values);
    AlternatorReport {
        is_alternating: is_skew_symmetric && diagonal_zero,
        is_weakly_alternating: e_basis.is_empty(),
        is_skew_symmetric,
        e_basis,
    }
}
