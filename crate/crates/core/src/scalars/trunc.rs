//! Truncations R/t^N of the ramified quadratic extension R of the Witt vectors.
//!
//! The uniformizer is normalized so that t^2 = 2 exactly. An element is stored
//! as `a + b t`. Over k = GF(2) we have R = Z_2[sqrt 2], so `a` is an integer
//! modulo 2^ceil(N/2) and `b` an integer modulo 2^floor(N/2). Over a larger
//! residue field only N <= 2 is available, where R/t^2 = k[t]/(t^2) and both
//! components are field elements.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use super::field::{FieldScalar, GaloisField};
use super::Scalar;
use crate::error::{Error, Result};

/// Highest truncation order supported over GF(2).
pub const MAX_ORDER: u32 = 60;

/// The ring R/t^N over a given residue field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TruncRing {
    order: u32,
    field: GaloisField,
}

impl TruncRing {
    pub fn new(field: GaloisField, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::usage("truncation order must be at least 1"));
        }
        if field.degree() > 1 && order > 2 {
            return Err(Error::usage(format!(
                "R/t^{order} is only available over GF(2); GF(2^{}) supports order <= 2",
                field.degree()
            )));
        }
        if order > MAX_ORDER {
            return Err(Error::usage(format!("truncation order {order} exceeds {MAX_ORDER}")));
        }
        Ok(TruncRing { order, field })
    }

    pub fn order(self) -> u32 {
        self.order
    }

    pub fn field(self) -> GaloisField {
        self.field
    }

    fn a_bits(self) -> u32 {
        self.order.div_ceil(2)
    }

    fn b_bits(self) -> u32 {
        self.order / 2
    }

    fn integral(self) -> bool {
        self.field.degree() == 1
    }

    fn normalize(self, a: u64, b: u64) -> TruncScalar {
        if self.integral() {
            TruncScalar { a: a & mask(self.a_bits()), b: b & mask(self.b_bits()), ring: self }
        } else {
            let b = if self.order >= 2 { b } else { 0 };
            TruncScalar { a, b, ring: self }
        }
    }

    pub fn zero(self) -> TruncScalar {
        TruncScalar { a: 0, b: 0, ring: self }
    }

    pub fn one(self) -> TruncScalar {
        self.normalize(1, 0)
    }

    /// The uniformizer t.
    pub fn t(self) -> TruncScalar {
        self.normalize(0, 1)
    }

    /// The image of an integer.
    pub fn from_int(self, n: i64) -> TruncScalar {
        if self.integral() {
            self.normalize(n as u64, 0)
        } else {
            // Over k[t]/(t^2) the integer 2 = t^2 vanishes.
            self.normalize((n.rem_euclid(2)) as u64, 0)
        }
    }

    /// Build `a + b t` from raw components; fails if they are out of range.
    pub fn from_parts(self, a: u64, b: u64) -> Result<TruncScalar> {
        let x = if self.integral() {
            self.normalize(a, b)
        } else {
            let q = self.field.order() as u64;
            if a >= q || b >= q {
                return Err(Error::usage(format!("({a}, {b}) are not elements of GF(2^{})", self.field.degree())));
            }
            self.normalize(a, b)
        };
        if x.a != a || x.b != b {
            return Err(Error::usage(format!("({a}, {b}) is not reduced for R/t^{}", self.order)));
        }
        Ok(x)
    }

    /// The Teichmuller-free constant lift of a residue: the representative with b = 0.
    pub fn lift(self, x: FieldScalar) -> TruncScalar {
        debug_assert_eq!(x.field(), self.field);
        self.normalize(x.value() as u64, 0)
    }

    pub fn with_order(self, order: u32) -> Result<TruncRing> {
        TruncRing::new(self.field, order)
    }
}

fn mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// An element `a + b t` of R/t^N.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncScalar {
    a: u64,
    b: u64,
    ring: TruncRing,
}

impl TruncScalar {
    pub fn parts(self) -> (u64, u64) {
        (self.a, self.b)
    }

    pub fn ring(self) -> TruncRing {
        self.ring
    }

    pub fn order(self) -> u32 {
        self.ring.order
    }

    /// Reduction modulo t, a ring map onto the residue field.
    pub fn residue(self) -> FieldScalar {
        let v = if self.ring.integral() { self.a & 1 } else { self.a };
        self.ring.field.element(v as u16).expect("residue in range")
    }

    pub fn is_divisible_by_t(self) -> bool {
        self.residue().is_zero()
    }

    /// The t-adic valuation, `None` for zero.
    pub fn valuation(self) -> Option<u32> {
        if self.a == 0 && self.b == 0 {
            return None;
        }
        if self.ring.integral() {
            let va = if self.a == 0 { u32::MAX } else { 2 * self.a.trailing_zeros() };
            let vb = if self.b == 0 { u32::MAX } else { 2 * self.b.trailing_zeros() + 1 };
            Some(va.min(vb))
        } else if self.a != 0 {
            Some(0)
        } else {
            Some(1)
        }
    }

    /// The unique y in R/t^(N-1) with t y = x. Requires x divisible by t and N >= 2.
    pub fn div_t(self) -> Result<TruncScalar> {
        if !self.is_divisible_by_t() {
            return Err(Error::domain(format!("{self:?} is not divisible by t")));
        }
        if self.ring.order < 2 {
            return Err(Error::domain("cannot divide by t in R/t"));
        }
        let ring = TruncRing { order: self.ring.order - 1, field: self.ring.field };
        if ring.integral() {
            // a + b t = t (b + (a/2) t) since 2 = t^2.
            Ok(ring.normalize(self.b, self.a >> 1))
        } else {
            Ok(ring.normalize(self.b, 0))
        }
    }

    /// Divide by t^n and return the result in R/t^(N-n).
    pub fn div_t_pow(self, n: u32) -> Result<TruncScalar> {
        let mut x = self;
        for _ in 0..n {
            x = x.div_t()?;
        }
        Ok(x)
    }

    /// Multiply by t^n (staying in the same ring).
    pub fn mul_t_pow(self, n: u32) -> TruncScalar {
        let mut x = self;
        let t = self.ring.t();
        for _ in 0..n {
            x = x * t;
        }
        x
    }

    /// Inverse of a unit, by Newton iteration from the inverse of the residue.
    pub fn inverse(self) -> Option<TruncScalar> {
        let r = self.residue().inverse()?;
        let ring = self.ring;
        let two = ring.from_int(2);
        let mut x = ring.lift(r);
        for _ in 0..=ring.order.ilog2() + 1 {
            x = x * (two - self * x);
        }
        debug_assert!(self * x == ring.one());
        Some(x)
    }

    /// Reinterpret in R/t^order: truncation when smaller, constant representative when larger.
    pub fn with_order(self, order: u32) -> Result<TruncScalar> {
        let ring = self.ring.with_order(order)?;
        Ok(ring.normalize(self.a, self.b))
    }
}

impl Add for TruncScalar {
    type Output = TruncScalar;
    fn add(self, rhs: TruncScalar) -> TruncScalar {
        debug_assert_eq!(self.ring, rhs.ring);
        if self.ring.integral() {
            self.ring.normalize(self.a.wrapping_add(rhs.a), self.b.wrapping_add(rhs.b))
        } else {
            self.ring.normalize(self.a ^ rhs.a, self.b ^ rhs.b)
        }
    }
}

impl Neg for TruncScalar {
    type Output = TruncScalar;
    fn neg(self) -> TruncScalar {
        if self.ring.integral() {
            self.ring.normalize(self.a.wrapping_neg(), self.b.wrapping_neg())
        } else {
            self
        }
    }
}

impl Sub for TruncScalar {
    type Output = TruncScalar;
    fn sub(self, rhs: TruncScalar) -> TruncScalar {
        self + (-rhs)
    }
}

impl Mul for TruncScalar {
    type Output = TruncScalar;
    fn mul(self, rhs: TruncScalar) -> TruncScalar {
        debug_assert_eq!(self.ring, rhs.ring);
        if self.ring.integral() {
            // (a + b t)(c + e t) = ac + 2be + (ae + bc) t
            let a = self.a.wrapping_mul(rhs.a).wrapping_add(self.b.wrapping_mul(rhs.b).wrapping_mul(2));
            let b = self.a.wrapping_mul(rhs.b).wrapping_add(self.b.wrapping_mul(rhs.a));
            self.ring.normalize(a, b)
        } else {
            let f = self.ring.field;
            let el = |v: u64| f.element(v as u16).expect("component in range");
            let a = el(self.a) * el(rhs.a);
            let b = el(self.a) * el(rhs.b) + el(self.b) * el(rhs.a);
            self.ring.normalize(a.value() as u64, b.value() as u64)
        }
    }
}

impl AddAssign for TruncScalar {
    fn add_assign(&mut self, rhs: TruncScalar) {
        *self = *self + rhs;
    }
}

impl SubAssign for TruncScalar {
    fn sub_assign(&mut self, rhs: TruncScalar) {
        *self = *self - rhs;
    }
}

impl MulAssign for TruncScalar {
    fn mul_assign(&mut self, rhs: TruncScalar) {
        *self = *self * rhs;
    }
}

impl fmt::Debug for TruncScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.ring.order)
    }
}

impl serde::Serialize for TruncScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.a, self.b, self.ring.order).serialize(s)
    }
}

impl Scalar for TruncScalar {
    type Ring = TruncRing;

    fn ring(&self) -> TruncRing {
        self.ring
    }

    fn zero(ring: TruncRing) -> Self {
        ring.zero()
    }

    fn one(ring: TruncRing) -> Self {
        ring.one()
    }

    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}
