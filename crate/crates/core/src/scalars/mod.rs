//! Exact scalars: GF(2^m) and truncations of the ramified quadratic extension of W(k).

pub mod field;
pub mod matrix;
pub mod trunc;

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

pub use field::{FieldScalar, GaloisField};
pub use matrix::{solve_linear, Matrix, Solution, Vector};
pub use trunc::{TruncRing, TruncScalar};

/// Common interface of the two scalar types, enough for generic matrix code.
pub trait Scalar:
    Copy
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    /// The ambient ring, carried by value so zero and one can be built without an element.
    type Ring: Copy + PartialEq + Debug;

    fn ring(&self) -> Self::Ring;
    fn zero(ring: Self::Ring) -> Self;
    fn one(ring: Self::Ring) -> Self;
    fn is_zero(&self) -> bool;
}
