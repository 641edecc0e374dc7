//! Enveloping algebras U(L), U_super(L) and U_res(L) as rewriting systems.
//!
//! Generators are an adapted basis ordered a < b < c < h, where the a_i span
//! Im D, b completes them to V0, c completes them to V1 and h'_i = a_i.
//! Words are ordered degree-lexicographically. The relation
//! e_j e_i - σ(e_j ⊗ e_i) - [e_j, e_i] = 0 with σ(v⊗w) = w⊗v + w'⊗v' gives,
//! for j > i, the rule
//!
//! ```text
//! e_j e_i -> e_i e_j + e_i' e_j' + [e_j, e_i]
//! ```
//!
//! and on the diagonal a_i a_i -> [h_i, h_i]. Every right side is smaller
//! than its left side because primes land in the minimal a-block.

mod oracle;
mod poly;
mod presentation;
pub mod torsion;

pub use oracle::{dims_oracle, ideal_echelon, oracle_relations, IdealEchelon, OracleResult, DEFAULT_WORD_BUDGET};
pub use poly::{NcPoly, Word};
pub use presentation::{irreducible_words, parse_poly, presentation_check, Presentation, PresentationReport};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::matrix::is_zero_vec;
use crate::scalars::{FieldScalar, GaloisField, Matrix, Vector};
use crate::supermod::{adapted_basis, SuperDim};
use crate::verlie::{
    check_operadic_axioms, check_restricted, check_superalgebra, pbw_witness, RestrictedStructure, SuperStructure,
    VerLieAlgebra,
};

/// Which quotient of the tensor algebra is presented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Plain,
    Super,
    Restricted,
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Flavor::Plain),
            "super" => Ok(Flavor::Super),
            "restricted" => Ok(Flavor::Restricted),
            other => Err(Error::usage(format!("unknown flavor {other:?}"))),
        }
    }
}

/// Graded dimensions, coefficient d being the dimension in degree d.
pub type HilbertSeries = Vec<u64>;

/// Oriented relations on an adapted basis.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    field: GaloisField,
    flavor: Flavor,
    superdim: SuperDim,
    generators: Vec<Vector>,
    names: Vec<String>,
    // Coordinates change from the algebra's basis to generator coordinates.
    to_generators: Matrix<FieldScalar>,
    rules: Vec<Option<NcPoly>>,
}

impl RewriteSystem {
    pub fn field(&self) -> GaloisField {
        self.field
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn superdim(&self) -> SuperDim {
        self.superdim
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Generator vectors in the coordinates of the algebra.
    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rule(&self, j: usize, i: usize) -> Option<&NcPoly> {
        self.rules[j * self.len() + i].as_ref()
    }

    /// All rules as (left word, right side).
    pub fn rules(&self) -> Vec<(Word, NcPoly)> {
        let n = self.len();
        (0..n * n)
            .filter_map(|p| self.rules[p].clone().map(|r| (Word(vec![(p / n) as u8, (p % n) as u8]), r)))
            .collect()
    }

    /// A vector of the algebra as a degree-one element of U.
    pub fn embed(&self, v: &[FieldScalar]) -> NcPoly {
        NcPoly::linear(self.field, &self.to_generators.mul_vec(v))
    }

    fn redex(&self, w: &Word) -> Option<usize> {
        let n = self.len();
        w.0.windows(2).position(|p| self.rules[p[0] as usize * n + p[1] as usize].is_some())
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.redex(w).is_none()
    }

    /// Normal form, reducing the largest remaining word at its leftmost redex.
    pub fn normal_form(&self, p: &NcPoly) -> NcPoly {
        self.normal_form_counted(p).0
    }

    /// Normal form together with the number of rewriting steps taken.
    pub fn normal_form_counted(&self, p: &NcPoly) -> (NcPoly, usize) {
        let n = self.len();
        let mut work = p.clone();
        let mut done = NcPoly::zero(self.field);
        let mut steps = 0;
        while let Some((w, c)) = work.pop_leading() {
            match self.redex(&w) {
                None => done.add_term(w, c),
                Some(pos) => {
                    steps += 1;
                    let rhs = self.rules[w.0[pos] as usize * n + w.0[pos + 1] as usize].as_ref().expect("redex has a rule");
                    let u = Word(w.0[..pos].to_vec());
                    let v = Word(w.0[pos + 2..].to_vec());
                    work.add_assign(&rhs.sandwich(&u, &v).scale(c));
                }
            }
        }
        (done, steps)
    }

    /// Normal form under a step budget; running out means the termination invariant broke.
    pub fn normal_form_fueled(&self, p: &NcPoly, fuel: usize) -> Result<NcPoly> {
        let n = self.len();
        let mut work = p.clone();
        let mut done = NcPoly::zero(self.field);
        let mut steps = 0;
        while let Some((w, c)) = work.pop_leading() {
            match self.redex(&w) {
                None => done.add_term(w, c),
                Some(pos) => {
                    steps += 1;
                    if steps > fuel {
                        return Err(Error::resource(format!("normal form exceeded {fuel} steps"), None));
                    }
                    let rhs = self.rules[w.0[pos] as usize * n + w.0[pos + 1] as usize].as_ref().expect("redex has a rule");
                    work.add_assign(&rhs.sandwich(&Word(w.0[..pos].to_vec()), &Word(w.0[pos + 2..].to_vec())).scale(c));
                }
            }
        }
        Ok(done)
    }

    /// Step budget |w|²·n² for reducing a single word of length `len`.
    pub fn fuel_for(&self, len: usize) -> usize {
        (len * len * self.len() * self.len()).max(1)
    }

    /// Product of two elements, in normal form.
    pub fn multiply(&self, x: &NcPoly, y: &NcPoly) -> NcPoly {
        self.normal_form(&x.mul(y))
    }
}

fn names_for(sd: SuperDim) -> Vec<String> {
    let mut names = Vec::new();
    names.extend((1..=sd.m2).map(|i| format!("a{i}")));
    names.extend((1..=sd.m0).map(|i| format!("b{i}")));
    names.extend((1..=sd.m1).map(|i| format!("c{i}")));
    names.extend((1..=sd.m2).map(|i| format!("h{i}")));
    names
}

/// Builds the rewriting system after checking the axioms the flavor needs.
pub fn build_rewrite(
    l: &VerLieAlgebra,
    s: Option<&SuperStructure>,
    r: Option<&RestrictedStructure>,
    flavor: Flavor,
) -> Result<RewriteSystem> {
    let operadic = check_operadic_axioms(l);
    if !operadic.passed() {
        return Err(Error::domain(format!("operadic axioms fail: {:?}", operadic.failed_axioms())));
    }
    if let Some(x) = pbw_witness(l) {
        return Err(Error::domain(format!("PBW condition fails: [x,x] != 0 for x = {x:?} in Ker D")));
    }
    match flavor {
        Flavor::Plain => {}
        Flavor::Super => {
            let s = s.ok_or_else(|| Error::usage("super flavor needs a super-structure"))?;
            let report = check_superalgebra(l, s);
            if !report.passed() {
                return Err(Error::domain(format!("super axioms fail: {:?}", report.failed_axioms())));
            }
        }
        Flavor::Restricted => {
            let s = s.ok_or_else(|| Error::usage("restricted flavor needs a super-structure"))?;
            let r = r.ok_or_else(|| Error::usage("restricted flavor needs Q0"))?;
            let report = check_restricted(l, s, r)?;
            if !report.passed() {
                return Err(Error::domain(format!("restricted axioms fail: {:?}", report.failed_axioms())));
            }
        }
    }
    build_rewrite_unchecked(l, s, r, flavor)
}

/// Builds the rewriting system without checking axioms; used to exhibit failures.
pub fn build_rewrite_unchecked(
    l: &VerLieAlgebra,
    s: Option<&SuperStructure>,
    r: Option<&RestrictedStructure>,
    flavor: Flavor,
) -> Result<RewriteSystem> {
    let (f, n) = (l.field(), l.dim());
    if n > 250 {
        return Err(Error::resource("too many generators for byte words", Some(250)));
    }
    let pure = SuperStructure::pure(l);
    let s_eff = match (flavor, s) {
        (Flavor::Plain, _) => &pure,
        (_, Some(s)) => s,
        (_, None) => return Err(Error::usage("flavor needs a super-structure")),
    };
    let ab = adapted_basis(l.module(), &s_eff.v0, &s_eff.v1);
    let sd = ab.superdim();
    if sd.total() != n {
        return Err(Error::malformed("super-structure does not give an adapted basis of L"));
    }
    let generators = ab.vectors();
    let p = ab.matrix(f, n);
    let to_generators = p.inverse().ok_or_else(|| Error::malformed("adapted basis is singular"))?;
    let lin = |v: &Vector| NcPoly::linear(f, &to_generators.mul_vec(v));
    let mut rules: Vec<Option<NcPoly>> = vec![None; n * n];
    for j in 0..n {
        for i in 0..j {
            let (ej, ei) = (&generators[j], &generators[i]);
            let mut rhs = NcPoly::monomial(f.one(), Word(vec![i as u8, j as u8]));
            let (pi, pj) = (l.prime(ei), l.prime(ej));
            if !is_zero_vec(&pi) && !is_zero_vec(&pj) {
                rhs.add_assign(&lin(&pi).mul(&lin(&pj)));
            }
            rhs.add_assign(&lin(&l.bracket(ej, ei)));
            rules[j * n + i] = Some(rhs);
        }
    }
    let m2 = sd.m2;
    let h0 = n - m2;
    for i in 0..m2 {
        let h = &generators[h0 + i];
        rules[i * n + i] = Some(lin(&l.bracket(h, h)));
    }
    let b_range = m2..m2 + sd.m0;
    let c_range = m2 + sd.m0..m2 + sd.m0 + sd.m1;
    match flavor {
        Flavor::Plain => {}
        Flavor::Super => {
            let q = s_eff.q_map();
            for g in c_range {
                let v = q.eval(l, &generators[g]).expect("c lies in V1");
                rules[g * n + g] = Some(lin(&v));
            }
        }
        Flavor::Restricted => {
            let r = r.ok_or_else(|| Error::usage("restricted flavor needs Q0"))?;
            let q = r.q_map(l, s_eff);
            for g in b_range.chain(c_range) {
                let v = q.eval(l, &generators[g]).expect("b and c lie in Ker D");
                rules[g * n + g] = Some(lin(&v));
            }
        }
    }
    for (p, rule) in rules.iter().enumerate() {
        if let Some(rhs) = rule {
            let lhs = Word(vec![(p / n) as u8, (p % n) as u8]);
            if rhs.leading().is_some_and(|(w, _)| *w >= lhs) {
                return Err(Error::malformed(format!("rule {lhs:?} -> {rhs:?} does not decrease")));
            }
        }
    }
    Ok(RewriteSystem { field: f, flavor, superdim: sd, generators, names: names_for(sd), to_generators, rules })
}

/// A failing overlap: both ways of reducing `word` end in different normal forms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmbiguityWitness {
    pub word: Vec<String>,
    pub left: String,
    pub right: String,
}

/// Outcome of [`confluence_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfluenceReport {
    pub status: String,
    pub ambiguities_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_witness: Option<AmbiguityWitness>,
    pub failures: usize,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn render(rs: &RewriteSystem, p: &NcPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = p
        .terms()
        .rev()
        .map(|(w, c)| {
            let word = if w.is_empty() {
                "1".to_string()
            } else {
                w.0.iter().map(|g| rs.names[*g as usize].clone()).collect::<Vec<_>>().join("*")
            };
            if c.value() == 1 {
                word
            } else {
                format!("{}*{word}", c.value())
            }
        })
        .collect();
    parts.join(" + ")
}

impl RewriteSystem {
    /// Human-readable form of an element in generator names.
    pub fn render(&self, p: &NcPoly) -> String {
        render(self, p)
    }
}

/// Resolves every overlap e_k e_j e_i in which both e_k e_j and e_j e_i are left sides.
///
/// Passing certifies, by the diamond lemma, that irreducible words form a basis.
/// With `certify` all ambiguities are examined; otherwise the check stops at the first failure.
pub fn confluence_check(rs: &RewriteSystem, certify: bool) -> ConfluenceReport {
    let n = rs.len();
    let f = rs.field;
    let mut checked = 0;
    let mut failures = 0;
    let mut witness = None;
    'scan: for k in 0..n {
        for j in 0..n {
            let Some(left_rule) = rs.rule(k, j) else { continue };
            for i in 0..n {
                let Some(right_rule) = rs.rule(j, i) else { continue };
                checked += 1;
                let left = rs.normal_form(&left_rule.mul(&NcPoly::monomial(f.one(), Word::letter(i))));
                let right = rs.normal_form(&NcPoly::monomial(f.one(), Word::letter(k)).mul(right_rule));
                if left != right {
                    failures += 1;
                    if witness.is_none() {
                        witness = Some(AmbiguityWitness {
                            word: [k, j, i].iter().map(|g| rs.names[*g].clone()).collect(),
                            left: rs.render(&left),
                            right: rs.render(&right),
                        });
                    }
                    if !certify {
                        break 'scan;
                    }
                }
            }
        }
    }
    ConfluenceReport {
        status: if failures == 0 { "pass" } else { "fail" }.into(),
        ambiguities_checked: checked,
        failure_witness: witness,
        failures,
    }
}

/// Number of irreducible words in each degree 0..=max_degree.
pub fn graded_dims(rs: &RewriteSystem, max_degree: usize) -> HilbertSeries {
    let n = rs.len();
    let mut series = vec![1u64];
    if max_degree == 0 {
        return series;
    }
    let mut ending: Vec<u64> = vec![1; n];
    series.push(n as u64);
    for _ in 2..=max_degree {
        let next: Vec<u64> = (0..n).map(|g| (0..n).filter(|&p| rs.rule(p, g).is_none()).map(|p| ending[p]).sum()).collect();
        series.push(next.iter().sum());
        ending = next;
    }
    series
}

/// Coefficients of (1+q)^e (1-q)^(-f) up to q^max_degree.
pub fn series_product(e: usize, f: usize, max_degree: usize) -> HilbertSeries {
    let mut coeffs = vec![0u64; max_degree + 1];
    coeffs[0] = 1;
    for _ in 0..e {
        for d in (1..=max_degree).rev() {
            coeffs[d] += coeffs[d - 1];
        }
    }
    for _ in 0..f {
        for d in 1..=max_degree {
            coeffs[d] += coeffs[d - 1];
        }
    }
    coeffs
}

/// The closed form the PBW theorem predicts for each flavor.
pub fn hilbert_closed_form(flavor: Flavor, sd: SuperDim, max_degree: usize) -> HilbertSeries {
    match flavor {
        Flavor::Plain => series_product(sd.m2, sd.m0 + sd.m1 + sd.m2, max_degree),
        Flavor::Super => series_product(sd.m1 + sd.m2, sd.m0 + sd.m2, max_degree),
        Flavor::Restricted => series_product(sd.m0 + sd.m1 + sd.m2, sd.m2, max_degree),
    }
}

/// Outcome of [`centrality_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CentralityReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CentralityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks in U(L) that c² - Q(c) commutes with every generator, for c in the c-block.
pub fn centrality_check(l: &VerLieAlgebra, s: &SuperStructure) -> Result<CentralityReport> {
    let u = build_rewrite(l, None, None, Flavor::Plain)?;
    let f = l.field();
    let ab = adapted_basis(l.module(), &s.v0, &s.v1);
    let q = s.q_map();
    let mut report = CentralityReport { checked: 0, failures: Vec::new() };
    for c in &ab.b1 {
        let cc = u.embed(c);
        let qc = q.eval(l, c).ok_or_else(|| Error::domain("complement vector outside V1"))?;
        let z = cc.mul(&cc).add(&u.embed(&qc));
        for g in 0..u.len() {
            let x = NcPoly::monomial(f.one(), Word::letter(g));
            let comm = u.normal_form(&z.mul(&x).add(&x.mul(&z)));
            report.checked += 1;
            if !comm.is_zero() {
                report.failures.push(format!("[c^2 - Q(c), {}] = {}", u.names[g], u.render(&comm)));
            }
        }
    }
    Ok(report)
}
