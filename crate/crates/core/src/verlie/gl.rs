use super::{SuperStructure, VerLieAlgebra};
use crate::scalars::matrix::subspace;
use crate::scalars::{FieldScalar, GaloisField, Matrix, Vector};
use crate::supermod::{standard, HModule, SuperDim, SuperHModule};

/// gl(V) for V = standard(n0, n1, n2): the algebra, its super-structure and V itself.
#[derive(Clone, Debug)]
pub struct GlAlgebra {
    pub algebra: VerLieAlgebra,
    pub structure: SuperStructure,
    pub base: SuperHModule,
}

/// The superdimension triple (n0²+n1², 2n0n1, n2(2n0+2n1+n2)) exactly as printed in the literature.
///
/// Its total is not (n0+n1+2n2)² once n2 > 0; direct decomposition gives
/// m2 = 2 n2 (n0+n1+n2) instead.
pub fn gl_formula_superdim(n0: usize, n1: usize, n2: usize) -> SuperDim {
    SuperDim::new(n0 * n0 + n1 * n1, 2 * n0 * n1, n2 * (2 * n0 + 2 * n1 + n2))
}

fn flatten(m: &Matrix<FieldScalar>) -> Vector {
    m.entries().to_vec()
}

fn unflatten(field: GaloisField, n: usize, v: &[FieldScalar]) -> Matrix<FieldScalar> {
    Matrix::from_rows(field, n, n, v.to_vec()).expect("n*n entries")
}

/// gl(n0|n1|n2) over `field`: End(V) with D f = D∘f + f∘D, bracket
/// [x, y] = xy - yx + y'x' and Q(y) = y² on the odd part.
///
/// The basis of End(V) is the matrix units E_rs (sending e_s to e_r) at index r*n + s.
pub fn gl(field: GaloisField, n0: usize, n1: usize, n2: usize) -> GlAlgebra {
    let base = standard(field, SuperDim::new(n0, n1, n2));
    let n = base.dim();
    let dv = base.d().clone();
    let big = n * n;
    let unit = |i: usize| {
        let mut m = Matrix::zeros(field, n, n);
        m[(i / n, i % n)] = field.one();
        m
    };
    let dgl = |f: &Matrix<FieldScalar>| dv.mul(f).add(&f.mul(&dv));

    let mut d = Matrix::zeros(field, big, big);
    let units: Vec<Matrix<FieldScalar>> = (0..big).map(unit).collect();
    let primes: Vec<Matrix<FieldScalar>> = units.iter().map(dgl).collect();
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
            cube.extend(flatten(&b));
        }
    }
    let module = HModule::new(d).expect("D_gl squares to zero");
    let algebra = VerLieAlgebra::new(module, cube).expect("cube has n^6 entries");

    // Cohomology representatives: matrix units between the b-blocks (Künneth).
    let sd = base.superdim();
    let b_block = sd.m2..sd.m2 + sd.m0 + sd.m1;
    let parity = |r: usize| usize::from(r >= sd.m2 + sd.m0);
    let im = algebra.module().image();
    let (mut v0, mut v1) = (im.clone(), im);
    for r in b_block.clone() {
        for s in b_block.clone() {
            let e = flatten(&units[r * n + s]);
            if parity(r) == parity(s) {
                v0.push(e);
            } else {
                v1.push(e);
            }
        }
    }
    let v0 = subspace::independent_subset(field, big, &v0);
    let v1 = subspace::independent_subset(field, big, &v1);
    let q1 = v1
        .iter()
        .map(|y| {
            let m = unflatten(field, n, y);
            flatten(&m.mul(&m))
        })
        .collect();
    let structure = SuperStructure::new(v0, v1, q1).expect("one value per vector");
    GlAlgebra { algebra, structure, base }
}
