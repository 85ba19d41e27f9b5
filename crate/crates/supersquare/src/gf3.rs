//! The field with three elements.
//!
//! All arithmetic in this crate is exact residue arithmetic mod 3. Values are
//! kept reduced to {0, 1, 2}; `2` prints as `-1` nowhere, display is the plain
//! residue.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// A residue mod 3.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct F3(u8);

pub const ZERO: F3 = F3(0);
pub const ONE: F3 = F3(1);
pub const TWO: F3 = F3(2);

/// The inverse of 2 mod 3. Stands in for 1/2 wherever a formula divides by 2.
pub const HALF: F3 = TWO;

impl F3 {
    pub fn new(v: u8) -> Self {
        F3(v % 3)
    }

    pub fn from_i64(v: i64) -> Self {
        F3(v.rem_euclid(3) as u8)
    }

    pub fn val(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Multiplicative inverse; panics on zero (every nonzero element is its
    /// own inverse in GF(3)).
    pub fn inv(self) -> Self {
        assert!(self.0 != 0, "inverse of zero in GF(3)");
        self
    }

    /// Canonical symmetric lift to {-1, 0, 1}.
    pub fn lift(self) -> i64 {
        match self.0 {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    /// The sign (-1)^e as a field element.
    pub fn neg_one_pow(e: u8) -> Self {
        if e % 2 == 0 {
            ONE
        } else {
            TWO
        }
    }
}

impl Add for F3 {
    type Output = F3;
    fn add(self, rhs: F3) -> F3 {
        F3((self.0 + rhs.0) % 3)
    }
}

impl Sub for F3 {
    type Output = F3;
    fn sub(self, rhs: F3) -> F3 {
        F3((3 + self.0 - rhs.0) % 3)
    }
}

impl Mul for F3 {
    type Output = F3;
    fn mul(self, rhs: F3) -> F3 {
        F3((self.0 * rhs.0) % 3)
    }
}

impl Neg for F3 {
    type Output = F3;
    fn neg(self) -> F3 {
        F3((3 - self.0) % 3)
    }
}

impl AddAssign for F3 {
    fn add_assign(&mut self, rhs: F3) {
        *self = *self + rhs;
    }
}

impl SubAssign for F3 {
    fn sub_assign(&mut self, rhs: F3) {
        *self = *self - rhs;
    }
}

impl MulAssign for F3 {
    fn mul_assign(&mut self, rhs: F3) {
        *self = *self * rhs;
    }
}

impl fmt::Debug for F3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for F3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<i64> for F3 {
    fn from(v: i64) -> Self {
        F3::from_i64(v)
    }
}

/// Parity of a homogeneous element of a superspace.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// (-1)^(|a||b|) as a field element.
    pub fn koszul(a: Parity, b: Parity) -> F3 {
        if a == Parity::Odd && b == Parity::Odd {
            TWO
        } else {
            ONE
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_tables() {
        // addition and multiplication are those of GF(3)
        for a in 0..3u8 {
            for b in 0..3u8 {
                assert_eq!((F3::new(a) + F3::new(b)).val(), (a + b) % 3);
                assert_eq!((F3::new(a) * F3::new(b)).val(), (a * b) % 3);
            }
        }
        // every nonzero element is invertible
        for a in 1..3u8 {
            assert_eq!(F3::new(a) * F3::new(a).inv(), ONE);
        }
        assert_eq!(HALF * TWO, ONE);
        assert_eq!(F3::from_i64(-1), TWO);
        assert_eq!(F3::from_i64(-4), TWO);
    }

    #[test]
    fn parity_rules() {
        assert_eq!(Parity::Even.add(Parity::Odd), Parity::Odd);
        assert_eq!(Parity::Odd.add(Parity::Odd), Parity::Even);
        assert_eq!(Parity::koszul(Parity::Odd, Parity::Odd), TWO);
        assert_eq!(Parity::koszul(Parity::Even, Parity::Odd), ONE);
    }
}
