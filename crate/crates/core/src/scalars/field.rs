//! Arithmetic in GF(2^m) for 1 <= m <= 8.
//!
//! Elements are bit-packed polynomials over GF(2) reduced modulo a fixed
//! Conway polynomial of degree m, so the packed integer is a canonical
//! encoding of the element.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use super::Scalar;
use crate::error::{Error, Result};

/// Conway polynomials over GF(2), indexed by degree (bit i = coefficient of x^i).
const CONWAY: [u16; 9] = [0, 0b11, 0b111, 0b1011, 0b1_0011, 0b10_0101, 0b101_1011, 0b1000_0011, 0b1_0001_1101];

/// Largest supported extension degree.
pub const MAX_DEGREE: u8 = 8;

/// The finite field GF(2^degree).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "FieldSpec", into = "FieldSpec")]
pub struct GaloisField {
    degree: u8,
}

/// On-disk form of a field: `{"char": 2, "degree": m}`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct FieldSpec {
    #[serde(rename = "char")]
    pub characteristic: u32,
    pub degree: u8,
}

impl TryFrom<FieldSpec> for GaloisField {
    type Error = Error;

    fn try_from(spec: FieldSpec) -> Result<Self> {
        if spec.characteristic != 2 {
            return Err(Error::usage(format!("characteristic {} is not supported", spec.characteristic)));
        }
        GaloisField::new(spec.degree)
    }
}

impl From<GaloisField> for FieldSpec {
    fn from(f: GaloisField) -> Self {
        FieldSpec { characteristic: 2, degree: f.degree }
    }
}

impl GaloisField {
    pub const GF2: GaloisField = GaloisField { degree: 1 };
    pub const GF4: GaloisField = GaloisField { degree: 2 };

    pub fn new(degree: u8) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::usage(format!("extension degree {degree} outside 1..={MAX_DEGREE}")));
        }
        Ok(GaloisField { degree })
    }

    pub fn degree(self) -> u8 {
        self.degree
    }

    pub fn order(self) -> usize {
        1 << self.degree
    }

    pub fn modulus(self) -> u16 {
        CONWAY[self.degree as usize]
    }

    pub fn zero(self) -> FieldScalar {
        FieldScalar { value: 0, field: self }
    }

    pub fn one(self) -> FieldScalar {
        FieldScalar { value: 1, field: self }
    }

    /// The class of `x`, a generator of the multiplicative group for the Conway modulus.
    pub fn generator(self) -> FieldScalar {
        if self.degree == 1 {
            self.one()
        } else {
            FieldScalar { value: 0b10, field: self }
        }
    }

    pub fn element(self, value: u16) -> Result<FieldScalar> {
        if (value as usize) >= self.order() {
            return Err(Error::usage(format!("{value} is not an element of GF(2^{})", self.degree)));
        }
        Ok(FieldScalar { value, field: self })
    }

    /// All field elements in increasing packed order.
    pub fn elements(self) -> impl Iterator<Item = FieldScalar> {
        (0..self.order() as u16).map(move |value| FieldScalar { value, field: self })
    }
}

/// An element of GF(2^m).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    value: u16,
    field: GaloisField,
}

impl FieldScalar {
    pub fn value(self) -> u16 {
        self.value
    }

    pub fn field(self) -> GaloisField {
        self.field
    }

    /// The Frobenius map x -> x^2.
    pub fn frobenius(self) -> FieldScalar {
        self * self
    }

    pub fn pow(self, mut e: u64) -> FieldScalar {
        let mut base = self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<FieldScalar> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.field.order() as u64 - 2))
        }
    }

    /// Square root, the inverse of Frobenius.
    pub fn sqrt(self) -> FieldScalar {
        // x^(2^(m-1)) squares to x^(2^m) = x.
        let mut r = self;
        for _ in 1..self.field.degree {
            r = r * r;
        }
        r
    }
}

fn clmul_reduce(a: u16, b: u16, field: GaloisField) -> u16 {
    let mut acc: u32 = 0;
    let (a, mut b) = (a as u32, b as u32);
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    let m = field.degree as u32;
    let modulus = field.modulus() as u32;
    for bit in (m..=2 * m).rev() {
        if acc & (1 << bit) != 0 {
            acc ^= modulus << (bit - m);
        }
    }
    acc as u16
}

impl Add for FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: FieldScalar) -> FieldScalar {
        debug_assert_eq!(self.field, rhs.field);
        FieldScalar { value: self.value ^ rhs.value, field: self.field }
    }
}

impl Sub for FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: FieldScalar) -> FieldScalar {
        self + rhs
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        self
    }
}

impl Mul for FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: FieldScalar) -> FieldScalar {
        debug_assert_eq!(self.field, rhs.field);
        FieldScalar { value: clmul_reduce(self.value, rhs.value, self.field), field: self.field }
    }
}

impl Div for FieldScalar {
    type Output = FieldScalar;
    fn div(self, rhs: FieldScalar) -> FieldScalar {
        self * rhs.inverse().expect("division by zero in GF(2^m)")
    }
}

impl AddAssign for FieldScalar {
    fn add_assign(&mut self, rhs: FieldScalar) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldScalar {
    fn sub_assign(&mut self, rhs: FieldScalar) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldScalar {
    fn mul_assign(&mut self, rhs: FieldScalar) {
        *self = *self * rhs;
    }
}

/// Serialized as the bit-packed coefficient integer; the field is carried by the enclosing record.
impl Serialize for FieldScalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u16(self.value)
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{}@GF{}", self.value, self.field.order())
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Scalar for FieldScalar {
    type Ring = GaloisField;

    fn ring(&self) -> GaloisField {
        self.field
    }

    fn zero(ring: GaloisField) -> Self {
        ring.zero()
    }

    fn one(ring: GaloisField) -> Self {
        ring.one()
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }
}
