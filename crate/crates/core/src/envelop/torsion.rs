//! Torsion in degree two of S𝔤 for the indecomposable lattices 𝔤 = R and 𝔤 = S.
//!
//! Everything is computed over R/t^N with the Smith form of a relation
//! matrix. These are fixed base cases, not a general torsion algorithm.

use serde::Serialize;

use crate::error::Result;
use crate::scalars::{Matrix, TruncRing, TruncScalar};

/// The cokernel R^rows / (relations) as free rank plus cyclic torsion R/t^e.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CokernelShape {
    pub free_rank: usize,
    pub torsion: Vec<u32>,
}

/// Valuations of the Smith diagonal, sorted, `None` for zero entries.
pub fn smith_valuations(m: &Matrix<TruncScalar>) -> Vec<Option<u32>> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let ring = a.ring();
    let n = ring.order();
    let mut diag = Vec::new();
    for k in 0..rows.min(cols) {
        let best = (k..rows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .filter_map(|(i, j)| a[(i, j)].valuation().map(|v| (v, i, j)))
            .min();
        let Some((v, pi, pj)) = best else {
            diag.extend((k..rows.min(cols)).map(|_| None));
            break;
        };
        for j in 0..cols {
            let tmp = a[(k, j)];
            a[(k, j)] = a[(pi, j)];
            a[(pi, j)] = tmp;
        }
        for i in 0..rows {
            let tmp = a[(i, k)];
            a[(i, k)] = a[(i, pj)];
            a[(i, pj)] = tmp;
        }
        let unit = lift_quotient(a[(k, k)], v, n).inverse().expect("pivot over t^v is a unit");
        for i in 0..rows {
            if i != k && a[(i, k)].valuation().is_some() {
                let f = lift_quotient(a[(i, k)], v, n) * unit;
                for j in 0..cols {
                    let x = a[(k, j)];
                    a[(i, j)] -= f * x;
                }
            }
        }
        for j in 0..cols {
            if j != k && a[(k, j)].valuation().is_some() {
                let f = lift_quotient(a[(k, j)], v, n) * unit;
                for i in 0..rows {
                    let x = a[(i, k)];
                    a[(i, j)] -= f * x;
                }
            }
        }
        diag.push(Some(v));
    }
    diag.sort_by_key(|v| v.unwrap_or(u32::MAX));
    diag
}

// Some x with x t^v = e, for e of valuation at least v.
fn lift_quotient(e: TruncScalar, v: u32, n: u32) -> TruncScalar {
    if v == 0 {
        return e;
    }
    e.div_t_pow(v).and_then(|q| q.with_order(n)).expect("valuation at least v")
}

/// Shape of R^rows modulo the span of the given relation vectors.
pub fn cokernel_shape(ring: TruncRing, rows: usize, relations: &[Vec<TruncScalar>]) -> Result<CokernelShape> {
    let m = Matrix::from_cols(ring, rows, relations)?;
    let diag = smith_valuations(&m);
    let mut shape = CokernelShape { free_rank: rows - diag.len(), torsion: Vec::new() };
    for v in diag {
        match v {
            None => shape.free_rank += 1,
            Some(0) => {}
            Some(e) => shape.torsion.push(e),
        }
    }
    Ok(shape)
}

/// The scalar 2t⁻², which is 1 under the normalization t² = 2.
pub fn two_over_t_squared(ring: TruncRing) -> TruncScalar {
    ring.one()
}

/// Degree-two relations x⊗y - y⊗x + 2t⁻² dy⊗dx of the abelian lattice with differential `d`.
///
/// Coordinates on 𝔤⊗𝔤 are i·n + j. All ordered pairs, diagonal included, are listed.
pub fn degree_two_relations(d: &Matrix<TruncScalar>) -> Vec<Vec<TruncScalar>> {
    let ring = d.ring();
    let n = d.rows();
    let c = two_over_t_squared(ring);
    let mut rels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut r = vec![ring.zero(); n * n];
            r[i * n + j] += ring.one();
            r[j * n + i] -= ring.one();
            for p in 0..n {
                for q in 0..n {
                    r[p * n + q] += c * d[(p, j)] * d[(q, i)];
                }
            }
            rels.push(r);
        }
    }
    rels
}

/// y⊗y for each given vector.
pub fn squares(vectors: &[Vec<TruncScalar>]) -> Vec<Vec<TruncScalar>> {
    vectors
        .iter()
        .map(|y| y.iter().flat_map(|a| y.iter().map(move |b| *a * *b)).collect())
        .collect()
}

/// Degree-two shapes of S𝔤 and of the reduced algebra for one lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionCase {
    pub symmetric_square: CokernelShape,
    pub reduced_square: CokernelShape,
}

fn case(ring: TruncRing, d: Matrix<TruncScalar>, odd: Vec<Vec<TruncScalar>>) -> Result<TorsionCase> {
    let n = d.rows();
    let mut rels = degree_two_relations(&d);
    let symmetric_square = cokernel_shape(ring, n * n, &rels)?;
    // q(y) = [y, y]/2 vanishes for the abelian bracket.
    rels.extend(squares(&odd));
    let reduced_square = cokernel_shape(ring, n * n, &rels)?;
    Ok(TorsionCase { symmetric_square, reduced_square })
}

/// 𝔤 = R with d = t; Ker(d - t) is spanned by z.
pub fn rank_one_case(ring: TruncRing) -> Result<TorsionCase> {
    let d = Matrix::from_rows(ring, 1, 1, vec![ring.t()])?;
    case(ring, d, vec![vec![ring.one()]])
}

/// 𝔤 = S with du = v, dv = tv, basis (u, v); Ker(d - t) is spanned by v.
pub fn rank_two_case(ring: TruncRing) -> Result<TorsionCase> {
    let d = Matrix::from_rows(ring, 2, 2, vec![ring.zero(), ring.zero(), ring.one(), ring.t()])?;
    case(ring, d, vec![vec![ring.zero(), ring.one()]])
}

/// 𝔤 = S with only the two printed relations uv - vu + 2t⁻¹v² and 2v².
pub fn rank_two_printed_relations(ring: TruncRing) -> Result<TorsionCase> {
    let (o, z, t) = (ring.one(), ring.zero(), ring.t());
    let two = ring.from_int(2);
    // Coordinates uu, uv, vu, vv; 2t⁻¹ = t.
    let mut rels = vec![vec![z, o, -o, t], vec![z, z, z, two]];
    let symmetric_square = cokernel_shape(ring, 4, &rels)?;
    rels.push(vec![z, z, z, o]);
    let reduced_square = cokernel_shape(ring, 4, &rels)?;
    Ok(TorsionCase { symmetric_square, reduced_square })
}
