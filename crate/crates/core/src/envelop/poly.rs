//! Words and noncommutative polynomials in degree-lexicographic order.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::{FieldScalar, GaloisField, Scalar};

/// A word in the generators, compared by length first and then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: usize) -> Self {
        Word(vec![g as u8])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| format!("g{g}")).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// A noncommutative polynomial with coefficients in GF(2^m).
#[derive(Clone, PartialEq, Eq)]
pub struct NcPoly {
    field: GaloisField,
    terms: BTreeMap<Word, FieldScalar>,
}

impl NcPoly {
    pub fn zero(field: GaloisField) -> Self {
        NcPoly { field, terms: BTreeMap::new() }
    }

    pub fn one(field: GaloisField) -> Self {
        Self::monomial(field.one(), Word::empty())
    }

    pub fn monomial(c: FieldScalar, w: Word) -> Self {
        let mut p = NcPoly::zero(c.field());
        p.add_term(w, c);
        p
    }

    /// Σ v_g · g as a degree-one polynomial.
    pub fn linear(field: GaloisField, v: &[FieldScalar]) -> Self {
        let mut p = NcPoly::zero(field);
        for (g, c) in v.iter().enumerate() {
            p.add_term(Word::letter(g), *c);
        }
        p
    }

    pub fn field(&self) -> GaloisField {
        self.field
    }

    pub fn add_term(&mut self, w: Word, c: FieldScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                let v = *e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &NcPoly) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), *c);
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut p = self.clone();
        p.add_assign(other);
        p
    }

    pub fn scale(&self, c: FieldScalar) -> NcPoly {
        let mut p = NcPoly::zero(self.field);
        if c.is_zero() {
            return p;
        }
        for (w, d) in &self.terms {
            p.terms.insert(w.clone(), *d * c);
        }
        p
    }

    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut p = NcPoly::zero(self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                p.add_term(u.concat(v), *a * *b);
            }
        }
        p
    }

    /// u · self · v for words u, v.
    pub fn sandwich(&self, u: &Word, v: &Word) -> NcPoly {
        let mut p = NcPoly::zero(self.field);
        for (w, c) in &self.terms {
            p.terms.insert(u.concat(w).concat(v), *c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &FieldScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> FieldScalar {
        self.terms.get(w).copied().unwrap_or(self.field.zero())
    }

    pub fn leading(&self) -> Option<(&Word, &FieldScalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading().map(|(w, _)| w.len())
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Word, FieldScalar)> {
        self.terms.pop_last()
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(w, c)| format!("{c:?}*{w:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
