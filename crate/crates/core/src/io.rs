//! JSON algebra files.
//!
//! One schema covers super H-modules, Lie algebras in Ver₄⁺ and mixed Lie
//! algebras, told apart by `kind`. Field elements are written as their packed
//! integer encoding; elements of R/t^N as triples `[a, b, N]` meaning a + b t.
//! Key order is fixed by the struct layout, so serializing is byte-stable.

use serde::{Deserialize, Serialize};

use crate::envelop::{parse_poly, Presentation};
use crate::envelop::{Flavor, NcPoly};
use crate::error::{Error, Result};
use crate::mixed::{LiftStatus, MixedLieAlgebra};
use crate::scalars::{FieldScalar, GaloisField, Matrix, TruncRing, TruncScalar, Vector};
use crate::supermod::{HModule, SuperDim, SuperHModule};
use crate::verlie::{RestrictedStructure, SuperStructure, VerLieAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Module,
    Verlie,
    Mixed,
}

/// A scalar as written in a file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coef {
    Field(u16),
    Trunc([u64; 3]),
}

/// `[i, j, k, c]`: the coefficient of e_k in [e_i, e_j] is c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry(pub usize, pub usize, pub usize, pub Coef);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureData {
    pub v0: Vec<Vec<u16>>,
    pub v1: Vec<Vec<u16>>,
    /// Q on the listed basis of V1; omitted for modules.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub q1: Vec<Vec<u16>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub name: String,
    /// Image in U, written in the basis names of the algebra.
    pub image: String,
}

/// A small presentation k⟨generators⟩/(relations) of the enveloping algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationSpec {
    pub flavor: Flavor,
    pub generators: Vec<Generator>,
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertExpect {
    pub flavor: Flavor,
    /// Graded dimensions from degree 0 on.
    pub series: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftExpect {
    pub order: u32,
    pub status: LiftStatus,
    pub achieved_order: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub naive_lift_works: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitExpect {
    pub m0: usize,
    pub m1: usize,
    pub count: usize,
}

/// Expected outcomes, read only by the self-test runner.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub superdim: Option<[usize; 3]>,
    /// Every axiom suite that applies to the file passes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pbw_condition: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weakly_alternating: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skew_symmetric: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genuine: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<HilbertExpect>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub confluent: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orbits: Vec<OrbitExpect>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift: Option<LiftExpect>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub kind: Kind,
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub field: GaloisField,
    /// Truncation order N of R/t^N, mixed files only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    pub basis: Vec<String>,
    /// D (or d) by rows.
    pub d: Vec<Vec<Coef>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bracket: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureData>,
    /// Q0 on the listed basis of V0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restricted: Option<Vec<Vec<u16>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
}

/// The typed content of a file.
#[derive(Clone, Debug)]
pub enum Loaded {
    Module(SuperHModule),
    Verlie {
        algebra: VerLieAlgebra,
        structure: Option<SuperStructure>,
        restricted: Option<RestrictedStructure>,
    },
    Mixed(MixedLieAlgebra),
}

fn encode_vec(v: &[FieldScalar]) -> Vec<u16> {
    v.iter().map(|x| x.value()).collect()
}

fn encode_vecs(vs: &[Vector]) -> Vec<Vec<u16>> {
    vs.iter().map(|v| encode_vec(v)).collect()
}

fn field_coef(c: Coef, field: GaloisField) -> Result<FieldScalar> {
    match c {
        Coef::Field(x) => field.element(x),
        Coef::Trunc(_) => Err(Error::malformed("expected a field element, found a triple")),
    }
}

fn trunc_coef(c: Coef, ring: TruncRing) -> Result<TruncScalar> {
    match c {
        Coef::Trunc([a, b, n]) if n == u64::from(ring.order()) => ring.from_parts(a, b),
        Coef::Trunc([_, _, n]) => Err(Error::malformed(format!("scalar of order {n} in a file of order {}", ring.order()))),
        Coef::Field(_) => Err(Error::malformed("expected a triple [a, b, N]")),
    }
}

fn trunc_encode(x: TruncScalar) -> Coef {
    let (a, b) = x.parts();
    Coef::Trunc([a, b, u64::from(x.order())])
}

impl AlgebraFile {
    fn skeleton(kind: Kind, name: &str, field: GaloisField, basis: Vec<String>) -> Self {
        AlgebraFile {
            kind,
            name: name.to_string(),
            description: String::new(),
            field,
            order: None,
            basis,
            d: Vec::new(),
            bracket: Vec::new(),
            structure: None,
            restricted: None,
            presentation: None,
            expect: None,
        }
    }

    pub fn from_module(name: &str, m: &SuperHModule, basis: Vec<String>) -> Self {
        let mut file = Self::skeleton(Kind::Module, name, m.field(), basis);
        file.d = field_rows(m.d());
        file.structure = Some(StructureData { v0: encode_vecs(m.v0()), v1: encode_vecs(m.v1()), q1: Vec::new() });
        file
    }

    pub fn from_verlie(
        name: &str,
        l: &VerLieAlgebra,
        s: Option<&SuperStructure>,
        r: Option<&RestrictedStructure>,
        basis: Vec<String>,
    ) -> Self {
        let mut file = Self::skeleton(Kind::Verlie, name, l.field(), basis);
        file.d = field_rows(l.d());
        file.bracket = l.entries().into_iter().map(|(i, j, k, c)| BracketEntry(i, j, k, Coef::Field(c.value()))).collect();
        file.structure =
            s.map(|s| StructureData { v0: encode_vecs(&s.v0), v1: encode_vecs(&s.v1), q1: encode_vecs(&s.q1) });
        file.restricted = r.map(|r| encode_vecs(&r.q0));
        file
    }

    pub fn from_mixed(name: &str, g: &MixedLieAlgebra) -> Self {
        let ring = g.ring();
        let mut file = Self::skeleton(Kind::Mixed, name, ring.field(), g.basis_names());
        file.order = Some(ring.order());
        let d = g.d();
        file.d = (0..d.rows()).map(|i| d.row(i).iter().map(|x| trunc_encode(*x)).collect()).collect();
        file.bracket = g.entries().into_iter().map(|(i, j, k, c)| BracketEntry(i, j, k, trunc_encode(c))).collect();
        file
    }

    pub fn with_description(mut self, text: &str) -> Self {
        self.description = text.to_string();
        self
    }

    pub fn with_presentation(mut self, p: PresentationSpec) -> Self {
        self.presentation = Some(p);
        self
    }

    pub fn with_expect(mut self, e: Expect) -> Self {
        self.expect = Some(e);
        self
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::malformed(format!("algebra file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra files serialize") + "\n"
    }

    fn dim(&self) -> Result<usize> {
        let n = self.basis.len();
        if self.d.len() != n || self.d.iter().any(|r| r.len() != n) {
            return Err(Error::malformed(format!("d must be {n}x{n} to match the basis")));
        }
        Ok(n)
    }

    fn field_matrix(&self, n: usize) -> Result<Matrix<FieldScalar>> {
        let data = self.d.iter().flatten().map(|c| field_coef(*c, self.field)).collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(self.field, n, n, data)
    }

    fn vectors(&self, vs: &[Vec<u16>], n: usize) -> Result<Vec<Vector>> {
        vs.iter()
            .map(|v| {
                if v.len() != n {
                    return Err(Error::malformed(format!("vector of length {} in dimension {n}", v.len())));
                }
                v.iter().map(|x| self.field.element(*x)).collect()
            })
            .collect()
    }

    fn check_entry(&self, e: &BracketEntry, n: usize) -> Result<()> {
        if e.0 >= n || e.1 >= n || e.2 >= n {
            return Err(Error::malformed(format!("bracket index out of range in {:?}", (e.0, e.1, e.2))));
        }
        Ok(())
    }

    /// Builds the typed objects, validating shapes and ranges.
    pub fn load(&self) -> Result<Loaded> {
        let n = self.dim()?;
        match self.kind {
            Kind::Module => {
                let s = self.structure.as_ref().ok_or_else(|| Error::malformed("module files need v0 and v1"))?;
                let m = SuperHModule::new(self.field_matrix(n)?, self.vectors(&s.v0, n)?, self.vectors(&s.v1, n)?)?;
                Ok(Loaded::Module(m))
            }
            Kind::Verlie => {
                let module = HModule::new(self.field_matrix(n)?)?;
                let mut entries = Vec::new();
                for e in &self.bracket {
                    self.check_entry(e, n)?;
                    entries.push((e.0, e.1, e.2, field_coef(e.3, self.field)?));
                }
                let algebra = VerLieAlgebra::from_entries(module, &entries)?;
                let structure = match &self.structure {
                    Some(s) => Some(SuperStructure::new(
                        self.vectors(&s.v0, n)?,
                        self.vectors(&s.v1, n)?,
                        self.vectors(&s.q1, n)?,
                    )?),
                    None => None,
                };
                let restricted = match &self.restricted {
                    Some(q0) => {
                        if structure.is_none() {
                            return Err(Error::malformed("a restricted block needs a structure block"));
                        }
                        Some(RestrictedStructure { q0: self.vectors(q0, n)? })
                    }
                    None => None,
                };
                Ok(Loaded::Verlie { algebra, structure, restricted })
            }
            Kind::Mixed => {
                let order = self.order.ok_or_else(|| Error::malformed("mixed files need an order"))?;
                let ring = TruncRing::new(self.field, order)?;
                let data = self.d.iter().flatten().map(|c| trunc_coef(*c, ring)).collect::<Result<Vec<_>>>()?;
                let d = Matrix::from_rows(ring, n, n, data)?;
                let mut entries = Vec::new();
                for e in &self.bracket {
                    self.check_entry(e, n)?;
                    entries.push((e.0, e.1, e.2, trunc_coef(e.3, ring)?));
                }
                Ok(Loaded::Mixed(MixedLieAlgebra::from_entries(d, &entries)?))
            }
        }
    }

    /// The presentation with generator images and relations parsed.
    pub fn presentation(&self) -> Result<Option<Presentation>> {
        let Some(p) = &self.presentation else {
            return Ok(None);
        };
        let names: Vec<String> = p.generators.iter().map(|g| g.name.clone()).collect();
        let images = p.generators.iter().map(|g| parse_poly(self.field, &self.basis, &g.image)).collect::<Result<Vec<NcPoly>>>()?;
        let relations = p.relations.iter().map(|r| parse_poly(self.field, &names, r)).collect::<Result<Vec<NcPoly>>>()?;
        Ok(Some(Presentation { generators: names, images, relations }))
    }
}

fn field_rows(d: &Matrix<FieldScalar>) -> Vec<Vec<Coef>> {
    (0..d.rows()).map(|i| d.row(i).iter().map(|x| Coef::Field(x.value())).collect()).collect()
}

impl Expect {
    pub fn superdim_of(sd: SuperDim) -> [usize; 3] {
        [sd.m0, sd.m1, sd.m2]
    }
}
