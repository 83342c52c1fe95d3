//! Exact coefficient fields.

use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rationals.
pub type Q = num_rational::BigRational;

/// A field with exact arithmetic.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
{
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// The value as a small integer, if it is one.
    fn to_i64(&self) -> Option<i64>;
}

impl Scalar for Q {
    const NAME: &'static str = "q";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        Q::from_integer(BigInt::from(n))
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        let n = self.numer();
        if n.abs() > BigInt::from(i64::MAX) {
            return None;
        }
        num_traits::ToPrimitive::to_i64(n)
    }
}

/// The field with two elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf2(pub bool);

impl Gf2 {
    pub const ZERO: Gf2 = Gf2(false);
    pub const ONE: Gf2 = Gf2(true);
}

impl fmt::Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

impl Add for Gf2 {
    type Output = Gf2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf2 {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Gf2) {
        self.0 ^= rhs.0;
    }
}

impl Sub for Gf2 {
    type Output = Gf2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Mul for Gf2 {
    type Output = Gf2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

impl Neg for Gf2 {
    type Output = Gf2;
    fn neg(self) -> Gf2 {
        self
    }
}

impl Scalar for Gf2 {
    const NAME: &'static str = "gf2";

    fn zero() -> Self {
        Gf2::ZERO
    }
    fn one() -> Self {
        Gf2::ONE
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn from_i64(n: i64) -> Self {
        Gf2(n.rem_euclid(2) == 1)
    }
    fn inv(&self) -> Option<Self> {
        self.0.then_some(Gf2::ONE)
    }
    fn to_i64(&self) -> Option<i64> {
        Some(self.0 as i64)
    }
}
