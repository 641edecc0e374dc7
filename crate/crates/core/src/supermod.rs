//! Finite super H-modules over GF(2^m), where H = k[D]/(D^2).
//!
//! A super-structure is a pair of subspaces V0, V1 with V0 + V1 = Ker D and
//! V0 ∩ V1 = Im D. Every such module is a sum of copies of k0, k1 and P = H,
//! counted by the superdimension (m0, m1, m2).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::matrix::{subspace, unit_vec, zero_vec};
use crate::scalars::{FieldScalar, GaloisField, Matrix, Scalar, Vector};

/// Multiplicities of k0, k1 and P.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SuperDim {
    pub m0: usize,
    pub m1: usize,
    pub m2: usize,
}

impl SuperDim {
    pub const fn new(m0: usize, m1: usize, m2: usize) -> Self {
        SuperDim { m0, m1, m2 }
    }

    pub fn total(self) -> usize {
        self.m0 + self.m1 + 2 * self.m2
    }

    /// Dimension of the underlying H-module data (n1, n2) = (free part of Ker D/Im D, rank D).
    pub fn forgetful(self) -> (usize, usize) {
        (self.m0 + self.m1, self.m2)
    }

    /// Superdimension of a tensor product, by the Künneth formula.
    pub fn tensor(self, other: SuperDim) -> SuperDim {
        let m0 = self.m0 * other.m0 + self.m1 * other.m1;
        let m1 = self.m0 * other.m1 + self.m1 * other.m0;
        let total = self.total() * other.total();
        SuperDim { m0, m1, m2: (total - m0 - m1) / 2 }
    }
}

impl fmt::Display for SuperDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m0, self.m1, self.m2)
    }
}

/// A finite H-module: a square-zero operator D on GF(2^m)^n.
#[derive(Clone, Debug, PartialEq)]
pub struct HModule {
    d: Matrix<FieldScalar>,
}

impl HModule {
    pub fn new(d: Matrix<FieldScalar>) -> Result<Self> {
        if d.rows() != d.cols() {
            return Err(Error::malformed(format!("D is {}x{}, not square", d.rows(), d.cols())));
        }
        if !d.mul(&d).is_zero() {
            return Err(Error::malformed("D^2 != 0"));
        }
        Ok(HModule { d })
    }

    pub fn field(&self) -> GaloisField {
        self.d.field()
    }

    pub fn dim(&self) -> usize {
        self.d.rows()
    }

    pub fn d(&self) -> &Matrix<FieldScalar> {
        &self.d
    }

    pub fn apply(&self, v: &[FieldScalar]) -> Vector {
        self.d.mul_vec(v)
    }

    pub fn kernel(&self) -> Vec<Vector> {
        self.d.kernel()
    }

    pub fn image(&self) -> Vec<Vector> {
        self.d.column_basis()
    }
}

/// An H-module with a super-structure (V0, V1), both stored as spanning lists.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperHModule {
    module: HModule,
    v0: Vec<Vector>,
    v1: Vec<Vector>,
}

impl SuperHModule {
    /// Builds and validates a super H-module.
    pub fn new(d: Matrix<FieldScalar>, v0: Vec<Vector>, v1: Vec<Vector>) -> Result<Self> {
        let m = Self::new_unchecked(HModule::new(d)?, v0, v1)?;
        m.validate()?;
        Ok(m)
    }

    /// Builds without checking the super-structure identities (vector lengths are still checked).
    pub fn new_unchecked(module: HModule, v0: Vec<Vector>, v1: Vec<Vector>) -> Result<Self> {
        let n = module.dim();
        if v0.iter().chain(&v1).any(|v| v.len() != n) {
            return Err(Error::malformed(format!("subspace vector of wrong length (module has dim {n})")));
        }
        let field = module.field();
        let v0 = subspace::independent_subset(field, n, &v0);
        let v1 = subspace::independent_subset(field, n, &v1);
        Ok(SuperHModule { module, v0, v1 })
    }

    /// Checks Im D ⊆ V0, V1 ⊆ Ker D, V0 ∩ V1 = Im D and V0 + V1 = Ker D.
    pub fn validate(&self) -> Result<()> {
        let (f, n) = (self.field(), self.dim());
        let ker = self.module.kernel();
        let im = self.module.image();
        if !subspace::contains_all(f, n, &ker, &self.v0) || !subspace::contains_all(f, n, &ker, &self.v1) {
            return Err(Error::malformed("V0 and V1 must lie in Ker D"));
        }
        if !subspace::contains_all(f, n, &self.v0, &im) || !subspace::contains_all(f, n, &self.v1, &im) {
            return Err(Error::malformed("Im D must lie in V0 and in V1"));
        }
        if subspace::rank(f, n, &subspace::sum(f, n, &self.v0, &self.v1)) != ker.len() {
            return Err(Error::malformed("V0 + V1 != Ker D"));
        }
        if subspace::intersection(f, n, &self.v0, &self.v1).len() != im.len() {
            return Err(Error::malformed("V0 ∩ V1 != Im D"));
        }
        Ok(())
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

    pub fn v0(&self) -> &[Vector] {
        &self.v0
    }

    pub fn v1(&self) -> &[Vector] {
        &self.v1
    }

    /// Subspace V_i for i in {0, 1}.
    pub fn part(&self, i: usize) -> &[Vector] {
        if i % 2 == 0 {
            &self.v0
        } else {
            &self.v1
        }
    }

    /// Superdimension read off from ranks.
    pub fn superdim(&self) -> SuperDim {
        let m2 = self.module.image().len();
        SuperDim { m0: self.v0.len() - m2, m1: self.v1.len() - m2, m2 }
    }

    /// The same module in a new basis; column j of `p` is the j-th new basis vector in old coordinates.
    pub fn transform(&self, p: &Matrix<FieldScalar>) -> Result<SuperHModule> {
        let inv = p.inverse().ok_or_else(|| Error::usage("change of basis is not invertible"))?;
        let d = inv.mul(self.d()).mul(p);
        let map = |vs: &[Vector]| vs.iter().map(|v| inv.mul_vec(v)).collect::<Vec<_>>();
        Ok(SuperHModule { module: HModule { d }, v0: map(&self.v0), v1: map(&self.v1) })
    }
}

/// The block module m0 k0 ⊕ m1 k1 ⊕ m2 P in the basis (a, b0, b1, h) with D h_i = a_i.
pub fn standard(field: GaloisField, sd: SuperDim) -> SuperHModule {
    let n = sd.total();
    let mut d = Matrix::zeros(field, n, n);
    let h0 = sd.m2 + sd.m0 + sd.m1;
    for i in 0..sd.m2 {
        d[(i, h0 + i)] = field.one();
    }
    let a: Vec<Vector> = (0..sd.m2).map(|i| unit_vec(field, n, i)).collect();
    let mut v0 = a.clone();
    v0.extend((0..sd.m0).map(|i| unit_vec(field, n, sd.m2 + i)));
    let mut v1 = a;
    v1.extend((0..sd.m1).map(|i| unit_vec(field, n, sd.m2 + sd.m0 + i)));
    SuperHModule { module: HModule { d }, v0, v1 }
}

/// An adapted basis (a, b0, b1, h): a spans Im D, a ∪ b0 spans V0, a ∪ b1 spans V1 and D h_i = a_i.
#[derive(Clone, Debug, PartialEq)]
pub struct AdaptedBasis {
    pub a: Vec<Vector>,
    pub b0: Vec<Vector>,
    pub b1: Vec<Vector>,
    pub h: Vec<Vector>,
}

impl AdaptedBasis {
    pub fn superdim(&self) -> SuperDim {
        SuperDim { m0: self.b0.len(), m1: self.b1.len(), m2: self.a.len() }
    }

    /// All basis vectors in the standard order.
    pub fn vectors(&self) -> Vec<Vector> {
        self.a.iter().chain(&self.b0).chain(&self.b1).chain(&self.h).cloned().collect()
    }

    /// Change-of-basis matrix from standard coordinates to the module's coordinates.
    pub fn matrix(&self, field: GaloisField, n: usize) -> Matrix<FieldScalar> {
        Matrix::from_cols(field, n, &self.vectors()).expect("adapted vectors have module length")
    }
}

/// Result of [`decompose`].
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub superdim: SuperDim,
    pub basis: AdaptedBasis,
    /// Columns are the adapted basis; maps standard(superdim) isomorphically onto the input.
    pub change_of_basis: Matrix<FieldScalar>,
}

/// Splits a super H-module into indecomposables.
///
/// Choices are made greedily: the complement of Ker D from unit vectors, the
/// complements of Im D from the stored bases of V0 and V1, lowest index first.
pub fn decompose(v: &SuperHModule) -> Result<Decomposition> {
    v.validate()?;
    let basis = adapted_basis(v.module(), v.v0(), v.v1());
    let change_of_basis = basis.matrix(v.field(), v.dim());
    Ok(Decomposition { superdim: basis.superdim(), basis, change_of_basis })
}

/// Adapted basis for given (already validated) V0, V1.
pub fn adapted_basis(m: &HModule, v0: &[Vector], v1: &[Vector]) -> AdaptedBasis {
    let (f, n) = (m.field(), m.dim());
    let h = subspace::complement_units(f, n, &m.kernel());
    let a: Vec<Vector> = h.iter().map(|x| m.apply(x)).collect();
    let b0 = subspace::extend_basis(f, n, &a, v0);
    let b1 = subspace::extend_basis(f, n, &a, v1);
    AdaptedBasis { a, b0, b1, h }
}

/// Tensor product with D = D⊗1 + 1⊗D and V_m = Σ_{i+j=m} V_i⊗W_j + Im D.
///
/// Basis vector e_i ⊗ f_j has index i * dim(W) + j.
pub fn tensor(v: &SuperHModule, w: &SuperHModule) -> Result<SuperHModule> {
    let field = v.field();
    if w.field() != field {
        return Err(Error::usage("tensor factors live over different fields"));
    }
    let d = v.d().kron(&Matrix::identity(field, w.dim())).add(&Matrix::identity(field, v.dim()).kron(w.d()));
    let module = HModule { d };
    let n = v.dim() * w.dim();
    let kron_vec = |x: &Vector, y: &Vector| -> Vector {
        let mut out = zero_vec(field, n);
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                out[i * y.len() + j] = *a * *b;
            }
        }
        out
    };
    let part = |m: usize| -> Vec<Vector> {
        let mut vecs = module.image();
        for i in 0..2 {
            for x in v.part(i) {
                for y in w.part((m + i) % 2) {
                    vecs.push(kron_vec(x, y));
                }
            }
        }
        subspace::independent_subset(field, n, &vecs)
    };
    let (v0, v1) = (part(0), part(1));
    Ok(SuperHModule { module, v0, v1 })
}

/// Matrix of σ: v⊗w ↦ w⊗v + Dw⊗Dv, from V⊗W to W⊗V.
pub fn braiding(v: &SuperHModule, w: &SuperHModule) -> Matrix<FieldScalar> {
    braiding_h(v.module(), w.module())
}

/// The braiding only depends on the H-module structure.
pub fn braiding_h(v: &HModule, w: &HModule) -> Matrix<FieldScalar> {
    let field = v.field();
    let (nv, nw) = (v.dim(), w.dim());
    let mut s = Matrix::zeros(field, nv * nw, nv * nw);
    for i in 0..nv {
        for j in 0..nw {
            let col = i * nw + j;
            s[(j * nv + i, col)] += field.one();
            for k in 0..nw {
                let dw = w.d()[(k, j)];
                if dw.is_zero() {
                    continue;
                }
                for l in 0..nv {
                    let dv = v.d()[(l, i)];
                    if !dv.is_zero() {
                        s[(k * nv + l, col)] += dw * dv;
                    }
                }
            }
        }
    }
    s
}
