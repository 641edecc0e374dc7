//! Independent dimension oracle: linear algebra in the truncated tensor algebra.
//!
//! No rewriting and no adapted basis is involved. The ideal is cut off at
//! total degree M, row-reduced, and M is raised until the filtration
//! dimensions repeat.

use std::collections::HashMap;

use serde::Serialize;

use super::{Flavor, HilbertSeries, NcPoly, Word};
use crate::error::{Error, Result};
use crate::scalars::{FieldScalar, Scalar};
use crate::verlie::{RestrictedStructure, SuperStructure, VerLieAlgebra};

/// Default cap on the number of words of length at most M.
pub const DEFAULT_WORD_BUDGET: usize = 1 << 21;

/// How far past the target degree the auxiliary bound may grow.
const MAX_EXTRA_DEGREE: usize = 8;

type Row = Vec<(u64, FieldScalar)>;

/// Words are keyed so that integer order is deglex order.
#[derive(Clone, Debug)]
struct Keys {
    n: u64,
    offsets: Vec<u64>,
}

impl Keys {
    fn new(n: usize, max_len: usize) -> Option<Keys> {
        let n = n as u64;
        let mut offsets = vec![0u64];
        let mut power = 1u64;
        for _ in 0..=max_len {
            let last = *offsets.last().unwrap();
            offsets.push(last.checked_add(power)?);
            power = power.checked_mul(n.max(1))?;
        }
        Some(Keys { n, offsets })
    }

    fn count_upto(&self, len: usize) -> u64 {
        self.offsets[len + 1]
    }

    fn key(&self, len: usize, value: u64) -> u64 {
        self.offsets[len] + value
    }

    fn value(&self, w: &[u8]) -> u64 {
        w.iter().fold(0, |acc, g| acc * self.n + *g as u64)
    }

    fn len_of(&self, key: u64) -> usize {
        self.offsets.partition_point(|&o| o <= key) - 1
    }

    fn word(&self, key: u64) -> Word {
        let len = self.len_of(key);
        let mut value = key - self.offsets[len];
        let mut letters = vec![0u8; len];
        for slot in letters.iter_mut().rev() {
            *slot = (value % self.n) as u8;
            value /= self.n;
        }
        Word(letters)
    }
}

fn word_count_upto(n: usize, len: usize) -> Option<u64> {
    Keys::new(n, len).map(|k| k.count_upto(len))
}

/// Row-reduced span of the cut-off ideal, keyed by leading word.
#[derive(Clone, Debug)]
pub struct IdealEchelon {
    keys: Keys,
    pivots: HashMap<u64, Row>,
    /// Largest total degree of the products u·g·v included.
    pub max_aux_degree: usize,
    /// Whether the filtration dimensions repeated for two consecutive bounds.
    pub stabilized: bool,
}

impl IdealEchelon {
    /// dim of the quotient's filtration piece F_d for d = 0..=max_degree.
    pub fn filtration_dims(&self, max_degree: usize) -> Vec<u64> {
        let mut lead_counts = vec![0u64; max_degree + 1];
        for &k in self.pivots.keys() {
            let len = self.keys.len_of(k);
            if len <= max_degree {
                lead_counts[len] += 1;
            }
        }
        let mut acc = 0;
        (0..=max_degree)
            .map(|d| {
                acc += lead_counts[d];
                self.keys.count_upto(d) - acc
            })
            .collect()
    }

    pub fn is_leading(&self, w: &Word) -> bool {
        self.pivots.contains_key(&self.keys.key(w.len(), self.keys.value(&w.0)))
    }

    /// Words of length at most `max_degree` that lead no element of the ideal.
    pub fn standard_words(&self, max_degree: usize) -> Vec<Word> {
        (0..self.keys.count_upto(max_degree))
            .filter(|k| !self.pivots.contains_key(k))
            .map(|k| self.keys.word(k))
            .collect()
    }
}

fn reduce(pivots: &HashMap<u64, Row>, mut row: Row) -> Row {
    while let Some(&(lead, c)) = row.first() {
        let Some(p) = pivots.get(&lead) else { break };
        row = subtract_scaled(&row, p, c);
    }
    row
}

// a - c·b for rows sorted by descending key.
fn subtract_scaled(a: &Row, b: &Row, c: FieldScalar) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 > b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 > a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(b[j].1 * c)));
            j += 1;
        } else {
            let v = a[i].1 - b[j].1 * c;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

struct Relation {
    degree: usize,
    terms: Vec<(usize, u64, FieldScalar)>,
}

/// Echelonizes {u·g·v} for growing total degree until the filtration up to
/// `max_degree` stops changing.
pub fn ideal_echelon(
    n_gens: usize,
    relations: &[NcPoly],
    max_degree: usize,
    word_budget: usize,
) -> Result<IdealEchelon> {
    let rel_degree = relations.iter().filter_map(NcPoly::degree).max().unwrap_or(0);
    let start = max_degree.max(rel_degree);
    let feasible = |m: usize| word_count_upto(n_gens, m).is_some_and(|c| c <= word_budget as u64);
    if !feasible(start + 1) {
        let max_ok = (0..=start).rev().find(|&d| feasible(d.max(rel_degree) + 1));
        return Err(Error::resource(
            format!("{n_gens} generators to degree {} exceed the word budget {word_budget}", start + 1),
            max_ok,
        ));
    }
    let keys = Keys::new(n_gens, start + MAX_EXTRA_DEGREE).ok_or_else(|| Error::resource("word keys overflow", None))?;
    let rels: Vec<Relation> = relations
        .iter()
        .filter(|r| !r.is_zero())
        .map(|r| Relation {
            degree: r.degree().unwrap_or(0),
            terms: r.terms().map(|(w, c)| (w.len(), keys.value(&w.0), *c)).collect(),
        })
        .collect();
    let n = n_gens as u64;
    let pow = |e: usize| n.pow(e as u32);
    let mut pivots: HashMap<u64, Row> = HashMap::new();
    let add_degree = |pivots: &mut HashMap<u64, Row>, m: usize| {
        for r in rels.iter().filter(|r| r.degree <= m) {
            let extra = m - r.degree;
            for lu in 0..=extra {
                let lv = extra - lu;
                for u in 0..pow(lu) {
                    for v in 0..pow(lv) {
                        let mut row: Row = r
                            .terms
                            .iter()
                            .map(|&(lw, w, c)| (keys.key(lu + lw + lv, (u * pow(lw) + w) * pow(lv) + v), c))
                            .collect();
                        row.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                        let row = reduce(pivots, row);
                        if let Some(&(lead, c)) = row.first() {
                            let inv = c.inverse().expect("nonzero lead");
                            pivots.insert(lead, row.into_iter().map(|(k, x)| (k, x * inv)).collect());
                        }
                    }
                }
            }
        }
    };
    for m in 0..=start {
        add_degree(&mut pivots, m);
    }
    let mut echelon = IdealEchelon { keys: keys.clone(), pivots, max_aux_degree: start, stabilized: false };
    let mut previous = echelon.filtration_dims(max_degree);
    for m in start + 1..=start + MAX_EXTRA_DEGREE {
        if !feasible(m) {
            break;
        }
        add_degree(&mut echelon.pivots, m);
        echelon.max_aux_degree = m;
        let dims = echelon.filtration_dims(max_degree);
        if dims == previous {
            echelon.stabilized = true;
            break;
        }
        previous = dims;
    }
    Ok(echelon)
}

/// Defining relations of U(L), U_super(L) or U_res(L) on the given basis of L.
///
/// All ordered basis pairs, diagonal included, give
/// e_i e_j - e_j e_i - e_j' e_i' - [e_i, e_j]; the flavor adds y² - Q(y).
pub fn oracle_relations(
    l: &VerLieAlgebra,
    s: Option<&SuperStructure>,
    r: Option<&RestrictedStructure>,
    flavor: Flavor,
) -> Result<Vec<NcPoly>> {
    let (f, n) = (l.field(), l.dim());
    let unit = |g: usize| NcPoly::monomial(f.one(), Word::letter(g));
    let mut rels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut p = unit(i).mul(&unit(j)).add(&unit(j).mul(&unit(i)).scale(-f.one()));
            let (pi, pj) = (NcPoly::linear(f, l.basis_prime(i)), NcPoly::linear(f, l.basis_prime(j)));
            p.add_assign(&pj.mul(&pi).scale(-f.one()));
            p.add_assign(&NcPoly::linear(f, &l.basis_bracket(i, j)).scale(-f.one()));
            rels.push(p);
        }
    }
    let mut squares = |q: crate::verlie::QuadraticMap, domain: Vec<Vec<FieldScalar>>| -> Result<()> {
        for y in domain {
            let qy = q.eval(l, &y).ok_or_else(|| Error::domain("Q is not defined on the required subspace"))?;
            let ly = NcPoly::linear(f, &y);
            rels.push(ly.mul(&ly).add(&NcPoly::linear(f, &qy).scale(-f.one())));
        }
        Ok(())
    };
    match flavor {
        Flavor::Plain => {}
        Flavor::Super => {
            let s = s.ok_or_else(|| Error::usage("super flavor needs a super-structure"))?;
            squares(s.q_map(), s.v1.clone())?;
        }
        Flavor::Restricted => {
            let s = s.ok_or_else(|| Error::usage("restricted flavor needs a super-structure"))?;
            let r = r.ok_or_else(|| Error::usage("restricted flavor needs Q0"))?;
            squares(r.q_map(l, s), l.module().kernel())?;
        }
    }
    Ok(rels)
}

/// Result of [`dims_oracle`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleResult {
    /// Graded dimensions of the associated graded algebra.
    pub series: HilbertSeries,
    /// dim F_d for the degree filtration.
    pub filtration: Vec<u64>,
    pub max_aux_degree: usize,
    pub stabilized: bool,
}

/// Graded dimensions up to degree `max_degree`, computed without rewriting.
pub fn dims_oracle(
    l: &VerLieAlgebra,
    s: Option<&SuperStructure>,
    r: Option<&RestrictedStructure>,
    flavor: Flavor,
    max_degree: usize,
    word_budget: usize,
) -> Result<OracleResult> {
    let rels = oracle_relations(l, s, r, flavor)?;
    let e = ideal_echelon(l.dim(), &rels, max_degree, word_budget)?;
    let filtration = e.filtration_dims(max_degree);
    let series = filtration.iter().enumerate().map(|(d, &x)| if d == 0 { x } else { x - filtration[d - 1] }).collect();
    Ok(OracleResult { series, filtration, max_aux_degree: e.max_aux_degree, stabilized: e.stabilized })
}
