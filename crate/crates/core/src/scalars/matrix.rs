//! Dense matrices over a scalar ring, with exact Gaussian elimination over GF(2^m).

use std::fmt;

use super::field::{FieldScalar, GaloisField};
use super::Scalar;
use crate::error::{Error, Result};

/// Column vector over GF(2^m).
pub type Vector = Vec<FieldScalar>;

/// A dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<S: Scalar> {
    ring: S::Ring,
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(ring: S::Ring, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, data: vec![S::zero(ring); rows * cols] }
    }

    pub fn identity(ring: S::Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m[(i, i)] = S::one(ring);
        }
        m
    }

    pub fn from_rows(ring: S::Ring, rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::usage(format!("{} entries do not fill a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { ring, rows, cols, data })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(ring: S::Ring, rows: usize, cols: &[Vec<S>]) -> Result<Self> {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::usage(format!("column {j} has length {} instead of {rows}", c.len())));
            }
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> S::Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<S>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero(self.ring);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += *a * *b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| *a + *b).collect();
        Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| *a - *b).collect();
        Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data }
    }

    pub fn map<T: Scalar>(&self, ring: T::Ring, f: impl Fn(S) -> T) -> Matrix<T> {
        Matrix { ring, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix<S>) -> Matrix<S> {
        let mut out = Self::zeros(self.ring, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.rows != other.rows {
            return Err(Error::usage(format!("cannot join {} rows with {} rows", self.rows, other.rows)));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Matrix::from_cols(self.ring, self.rows, &cols)
    }
}

impl<S: Scalar> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S: Scalar> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form with pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix<FieldScalar>,
    pub pivots: Vec<usize>,
}

/// Outcome of [`solve_linear`]: a particular solution and a basis of the homogeneous kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub particular: Vector,
    pub kernel: Vec<Vector>,
}

impl Matrix<FieldScalar> {
    pub fn field(&self) -> GaloisField {
        self.ring
    }

    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m[(r, c)].inverse().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)] * inv;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m[(i, c)];
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m[(r, j)];
                    if !v.is_zero() {
                        m[(i, j)] -= f * v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the null space {v : A v = 0}.
    pub fn kernel(&self) -> Vec<Vector> {
        let e = self.echelon();
        let field = self.ring;
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![field.zero(); self.cols];
                v[f] = field.one();
                for (r, &p) in e.pivots.iter().enumerate() {
                    v[p] = -e.reduced[(r, f)];
                }
                v
            })
            .collect()
    }

    /// Independent columns chosen greedily in column order.
    pub fn column_basis(&self) -> Vec<Vector> {
        self.echelon().pivots.iter().map(|&c| self.col(c)).collect()
    }

    pub fn inverse(&self) -> Option<Matrix<FieldScalar>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hcat(&Matrix::identity(self.ring, n)).ok()?;
        let e = aug.echelon();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.ring, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = e.reduced[(i, n + j)];
            }
        }
        Some(inv)
    }
}

/// Solve A s = b exactly over GF(2^m).
///
/// Returns `Ok(None)` when the system is inconsistent, otherwise a particular
/// solution (free variables set to zero) together with a kernel basis.
pub fn solve_linear(a: &Matrix<FieldScalar>, b: &[FieldScalar]) -> Result<Option<Solution>> {
    if b.len() != a.rows() {
        return Err(Error::usage(format!("right-hand side has length {} but matrix has {} rows", b.len(), a.rows())));
    }
    let field = a.field();
    let aug = a.hcat(&Matrix::from_cols(field, a.rows(), &[b.to_vec()])?)?;
    let e = aug.echelon();
    if e.pivots.last() == Some(&a.cols()) {
        return Ok(None);
    }
    let mut particular = vec![field.zero(); a.cols()];
    for (r, &p) in e.pivots.iter().enumerate() {
        particular[p] = e.reduced[(r, a.cols())];
    }
    Ok(Some(Solution { particular, kernel: a.kernel() }))
}

pub fn zero_vec(field: GaloisField, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vec(field: GaloisField, n: usize, i: usize) -> Vector {
    let mut v = zero_vec(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vec<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add_vec<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

pub fn sub_vec<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| *x - *y).collect()
}

pub fn scale_vec<S: Scalar>(c: S, a: &[S]) -> Vec<S> {
    a.iter().map(|x| c * *x).collect()
}

/// `acc += c * v`.
pub fn axpy<S: Scalar>(acc: &mut [S], c: S, v: &[S]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * *x;
        }
    }
}

/// Helpers for subspaces of GF(2^m)^n given by spanning lists of column vectors.
pub mod subspace {
    use super::*;

    fn as_matrix(field: GaloisField, n: usize, vecs: &[Vector]) -> Matrix<FieldScalar> {
        Matrix::from_cols(field, n, vecs).expect("vector length matches ambient dimension")
    }

    pub fn rank(field: GaloisField, n: usize, vecs: &[Vector]) -> usize {
        if vecs.is_empty() {
            return 0;
        }
        as_matrix(field, n, vecs).rank()
    }

    /// A basis of the span, taken greedily from `vecs` in order.
    pub fn independent_subset(field: GaloisField, n: usize, vecs: &[Vector]) -> Vec<Vector> {
        if vecs.is_empty() {
            return Vec::new();
        }
        as_matrix(field, n, vecs).column_basis()
    }

    /// The canonical basis of the span: nonzero rows of the RREF of the transposed list.
    pub fn rref_basis(field: GaloisField, n: usize, vecs: &[Vector]) -> Vec<Vector> {
        if vecs.is_empty() {
            return Vec::new();
        }
        let e = as_matrix(field, n, vecs).transpose().echelon();
        (0..e.pivots.len()).map(|r| e.reduced.row(r).to_vec()).collect()
    }

    pub fn contains(field: GaloisField, n: usize, basis: &[Vector], v: &[FieldScalar]) -> bool {
        if is_zero_vec(v) {
            return true;
        }
        let mut all = basis.to_vec();
        all.push(v.to_vec());
        rank(field, n, &all) == rank(field, n, basis)
    }

    pub fn contains_all(field: GaloisField, n: usize, basis: &[Vector], vs: &[Vector]) -> bool {
        let mut all = basis.to_vec();
        all.extend(vs.iter().cloned());
        rank(field, n, &all) == rank(field, n, basis)
    }

    pub fn equal(field: GaloisField, n: usize, a: &[Vector], b: &[Vector]) -> bool {
        rank(field, n, a) == rank(field, n, b) && contains_all(field, n, a, b)
    }

    /// Coordinates of `v` in an independent list `basis`, if `v` lies in its span.
    pub fn coordinates(field: GaloisField, n: usize, basis: &[Vector], v: &[FieldScalar]) -> Option<Vector> {
        if basis.is_empty() {
            return is_zero_vec(v).then(Vec::new);
        }
        let a = as_matrix(field, n, basis);
        solve_linear(&a, v).expect("dimensions agree").map(|s| s.particular)
    }

    /// Vectors from `candidates`, chosen greedily, that extend `base` to a basis of span(base, candidates).
    pub fn extend_basis(field: GaloisField, n: usize, base: &[Vector], candidates: &[Vector]) -> Vec<Vector> {
        let mut current = base.to_vec();
        let mut r = rank(field, n, &current);
        let mut added = Vec::new();
        for c in candidates {
            current.push(c.clone());
            let r2 = rank(field, n, &current);
            if r2 > r {
                r = r2;
                added.push(c.clone());
            } else {
                current.pop();
            }
        }
        added
    }

    /// Extension of `base` by standard unit vectors to a basis of the whole space.
    pub fn complement_units(field: GaloisField, n: usize, base: &[Vector]) -> Vec<Vector> {
        let units: Vec<Vector> = (0..n).map(|i| unit_vec(field, n, i)).collect();
        extend_basis(field, n, base, &units)
    }

    pub fn sum(field: GaloisField, n: usize, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
        let mut all = a.to_vec();
        all.extend(b.iter().cloned());
        independent_subset(field, n, &all)
    }

    pub fn intersection(field: GaloisField, n: usize, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
        let a = independent_subset(field, n, a);
        let b = independent_subset(field, n, b);
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        // x = sum(alpha_i a_i) = sum(beta_j b_j)
        let mut cols = a.clone();
        cols.extend(b.iter().map(|v| v.iter().map(|x| -*x).collect::<Vector>()));
        let kernel = as_matrix(field, n, &cols).kernel();
        let vecs: Vec<Vector> = kernel
            .iter()
            .map(|k| {
                let mut x = zero_vec(field, n);
                for (c, v) in k[..a.len()].iter().zip(&a) {
                    axpy(&mut x, *c, v);
                }
                x
            })
            .collect();
        independent_subset(field, n, &vecs)
    }

    /// All vectors of the span of `basis`, in lexicographic order of coefficients.
    pub fn elements(field: GaloisField, n: usize, basis: &[Vector]) -> Vec<Vector> {
        let q = field.order();
        let total = q.pow(basis.len() as u32);
        (0..total)
            .map(|mut idx| {
                let mut x = zero_vec(field, n);
                for b in basis {
                    let c = field.element((idx % q) as u16).expect("digit below field order");
                    idx /= q;
                    axpy(&mut x, c, b);
                }
                x
            })
            .collect()
    }
}
