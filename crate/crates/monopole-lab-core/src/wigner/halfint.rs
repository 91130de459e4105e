//! Exact half-integer arithmetic for angular-momentum bookkeeping.
//!
//! Angular momenta j, projections m, spin weights σ, λ and the charge
//! product k = eg all live on the lattice ℤ/2.  Storing the *doubled*
//! value as an integer makes every index computation exact: validity of
//! (j, m) pairs, parity factors (−1)^{j−m}, and admissibility sets are
//! decided without any floating-point comparison.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A half-integer n/2 stored exactly as its doubled value n ∈ ℤ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt {
    doubled: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };
    pub const HALF: HalfInt = HalfInt { doubled: 1 };
    pub const ONE: HalfInt = HalfInt { doubled: 2 };

    /// Value n/2 from its doubled numerator n.
    pub const fn from_doubled(doubled: i32) -> Self {
        HalfInt { doubled }
    }

    /// Exact integer value n.
    pub const fn from_int(n: i32) -> Self {
        HalfInt { doubled: 2 * n }
    }

    /// The doubled value 2x (always an exact integer).
    pub const fn doubled(self) -> i32 {
        self.doubled
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.doubled) / 2.0
    }

    /// True when the value lies in ℤ (doubled value even).
    pub const fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    /// The integer value, or None for genuine half-odd values.
    pub const fn as_integer(self) -> Option<i32> {
        if self.doubled % 2 == 0 {
            Some(self.doubled / 2)
        } else {
            None
        }
    }

    pub const fn abs(self) -> Self {
        HalfInt {
            doubled: self.doubled.abs(),
        }
    }

    pub const fn is_negative(self) -> bool {
        self.doubled < 0
    }

    /// Recovers a half-integer from a float when 2x is an integer to
    /// within `tol`; used to classify raw user input (e.g. a charge
    /// that must sit on the lattice ℤ/2 to be admissible).
    pub fn try_from_f64(x: f64, tol: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        let d = 2.0 * x;
        let n = d.round();
        if (d - n).abs() <= tol && n.abs() <= i32::MAX as f64 {
            Some(HalfInt { doubled: n as i32 })
        } else {
            None
        }
    }

    /// (−1)^x for integer x; panics on half-odd input, where the power is
    /// not a real sign and the caller must use [`phase_i_pow`] instead.
    pub fn parity_sign(self) -> f64 {
        match self.as_integer() {
            Some(n) => {
                if n.rem_euclid(2) == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
            None => panic!("parity sign of half-odd value {self}"),
        }
    }

    /// e^{iπx} = i^{2x}, exact on the lattice: returns (re, im) from
    /// {±1, ±i}.  This is the phase written (−1)^x for half-integer x.
    pub fn phase_i_pow(self) -> (f64, f64) {
        match self.doubled.rem_euclid(4) {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            doubled: self.doubled + rhs.doubled,
        }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            doubled: self.doubled - rhs.doubled,
        }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt {
            doubled: -self.doubled,
        }
    }
}

impl Mul<i32> for HalfInt {
    type Output = HalfInt;
    fn mul(self, rhs: i32) -> HalfInt {
        HalfInt {
            doubled: self.doubled * rhs,
        }
    }
}

impl From<i32> for HalfInt {
    fn from(n: i32) -> Self {
        HalfInt::from_int(n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

// Debug renders like Display ("3/2" rather than "HalfInt { doubled: 3 }"),
// which keeps assertion messages and serialized reports readable.
impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
