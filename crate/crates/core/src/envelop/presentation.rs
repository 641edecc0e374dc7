//! Checking a small presentation A = k⟨gens⟩/(relations) against U.
//!
//! φ: A → U sends each generator to a given element. The check asks that φ
//! kill the relations, that the standard monomials of A up to some degree map
//! to independent elements, and that their images span the low-degree part of U.

use std::collections::BTreeMap;

use serde::Serialize;

use super::oracle::ideal_echelon;
use super::{NcPoly, RewriteSystem, Word};
use crate::error::{Error, Result};
use crate::scalars::matrix::subspace;
use crate::scalars::{FieldScalar, GaloisField};

/// Generators, their images in U and the relations of A.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<String>,
    /// Images as polynomials in the basis letters of L.
    pub images: Vec<NcPoly>,
    /// Relations as polynomials in the generators of A.
    pub relations: Vec<NcPoly>,
}

/// Outcome of [`presentation_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PresentationReport {
    pub relations_respected: bool,
    pub standard_monomials: usize,
    pub injective: bool,
    pub injective_upto: usize,
    pub spans: bool,
    pub spans_upto: usize,
    pub oracle_stabilized: bool,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.relations_respected && self.injective && self.spans
    }
}

fn substitute(rs: &RewriteSystem, p: &NcPoly, images: &[NcPoly]) -> NcPoly {
    let f = rs.field();
    let mut total = NcPoly::zero(f);
    for (w, c) in p.terms() {
        let mut acc = NcPoly::one(f);
        for g in &w.0 {
            acc = rs.multiply(&acc, &images[*g as usize]);
        }
        total.add_assign(&acc.scale(*c));
    }
    total
}

impl RewriteSystem {
    /// A polynomial in the basis letters of L, as a normal form in U.
    pub fn from_basis_poly(&self, p: &NcPoly) -> NcPoly {
        let f = self.field();
        let letters: Vec<NcPoly> = (0..self.len())
            .map(|g| {
                let mut e = vec![f.zero(); self.len()];
                e[g] = f.one();
                self.embed(&e)
            })
            .collect();
        substitute(self, p, &letters)
    }
}

fn rank_of(field: GaloisField, polys: &[NcPoly], columns: &BTreeMap<Word, usize>) -> usize {
    let vecs: Vec<Vec<FieldScalar>> = polys
        .iter()
        .map(|p| {
            let mut v = vec![field.zero(); columns.len()];
            for (w, c) in p.terms() {
                v[columns[w]] = *c;
            }
            v
        })
        .collect();
    subspace::rank(field, columns.len(), &vecs)
}

/// Compares A with U through φ.
pub fn presentation_check(
    rs: &RewriteSystem,
    p: &Presentation,
    max_degree: usize,
    span_degree: usize,
    word_budget: usize,
) -> Result<PresentationReport> {
    let f = rs.field();
    if p.images.len() != p.generators.len() {
        return Err(Error::malformed("one image per generator is required"));
    }
    let images: Vec<NcPoly> = p.images.iter().map(|q| rs.from_basis_poly(q)).collect();
    let relations_respected = p.relations.iter().all(|r| substitute(rs, r, &images).is_zero());

    let echelon = ideal_echelon(p.generators.len(), &p.relations, max_degree, word_budget)?;
    let standard = echelon.standard_words(max_degree);
    let mapped: Vec<NcPoly> = standard.iter().map(|w| substitute(rs, &NcPoly::monomial(f.one(), w.clone()), &images)).collect();

    let low_words: Vec<Word> = irreducible_words(rs, span_degree);
    let mut columns = BTreeMap::new();
    for w in mapped.iter().flat_map(|q| q.terms().map(|(w, _)| w.clone())).chain(low_words.iter().cloned()) {
        let next = columns.len();
        columns.entry(w).or_insert(next);
    }
    let image_rank = rank_of(f, &mapped, &columns);
    let injective = image_rank == mapped.len();
    let mut with_low = mapped.clone();
    with_low.extend(low_words.iter().map(|w| NcPoly::monomial(f.one(), w.clone())));
    let spans = rank_of(f, &with_low, &columns) == image_rank;
    Ok(PresentationReport {
        relations_respected,
        standard_monomials: standard.len(),
        injective,
        injective_upto: max_degree,
        spans,
        spans_upto: span_degree,
        oracle_stabilized: echelon.stabilized,
    })
}

/// Irreducible words of length at most `max_degree`.
pub fn irreducible_words(rs: &RewriteSystem, max_degree: usize) -> Vec<Word> {
    let mut all = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..rs.len() {
                let mut v = w.0.clone();
                v.push(g as u8);
                let v = Word(v);
                let ok = match w.0.last() {
                    Some(&last) => rs.rule(last as usize, g).is_none(),
                    None => true,
                };
                if ok {
                    next.push(v);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Parses expressions such as `x^4 + y'^2 + y'` or `xy - yx - (y')^2`.
///
/// Generator names are matched greedily, longest first. A leading integer is
/// a coefficient given by its field-element encoding; signs are kept.
pub fn parse_poly(field: GaloisField, names: &[String], text: &str) -> Result<NcPoly> {
    let mut sorted: Vec<(usize, &String)> = names.iter().enumerate().collect();
    sorted.sort_by_key(|(_, s)| std::cmp::Reverse(s.len()));
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut parser = Parser { field, names: sorted, chars, pos: 0 };
    let p = parser.expr()?;
    if parser.pos != parser.chars.len() {
        return Err(Error::malformed(format!("unexpected input at {} in {text:?}", parser.pos)));
    }
    Ok(p)
}

struct Parser<'a> {
    field: GaloisField,
    names: Vec<(usize, &'a String)>,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<NcPoly> {
        let mut total = NcPoly::zero(self.field);
        let mut sign = self.field.one();
        if let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            if c == '-' {
                sign = -sign;
            }
        }
        loop {
            total.add_assign(&self.term()?.scale(sign));
            match self.peek() {
                Some('+') => sign = self.field.one(),
                Some('-') => sign = -self.field.one(),
                _ => return Ok(total),
            }
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Option<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect::<String>().parse().ok()).flatten()
    }

    fn term(&mut self) -> Result<NcPoly> {
        let mut acc = NcPoly::one(self.field);
        if let Some(c) = self.number() {
            let c = self.field.element(c as u16)?;
            acc = acc.scale(c);
        }
        let mut factors = 0;
        loop {
            if self.peek() == Some('*') {
                self.pos += 1;
            }
            let base = match self.peek() {
                Some('(') => {
                    self.pos += 1;
                    let inner = self.expr()?;
                    if self.peek() != Some(')') {
                        return Err(Error::malformed("missing ')'"));
                    }
                    self.pos += 1;
                    inner
                }
                _ => match self.name() {
                    Some(g) => NcPoly::monomial(self.field.one(), Word::letter(g)),
                    None => break,
                },
            };
            let mut power = 1;
            if self.peek() == Some('^') {
                self.pos += 1;
                power = self.number().ok_or_else(|| Error::malformed("exponent expected after '^'"))?;
            }
            for _ in 0..power {
                acc = acc.mul(&base);
            }
            factors += 1;
        }
        if factors == 0 && self.pos > 0 && !self.chars[self.pos - 1].is_ascii_digit() {
            return Err(Error::malformed(format!("term expected at {}", self.pos)));
        }
        Ok(acc)
    }

    fn name(&mut self) -> Option<usize> {
        let rest: String = self.chars[self.pos..].iter().collect();
        let (g, s) = self.names.iter().find(|(_, s)| rest.starts_with(s.as_str()))?;
        self.pos += s.chars().count();
        Some(*g)
    }
}
