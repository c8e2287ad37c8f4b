//! Exact unit gains of the form `exp(iπ·num/den)`.
//!
//! Angles are kept as reduced fractions of π with `0 <= num < 2·den`, so
//! equality of gains is equality of the stored pair. Everything that has to
//! be decided exactly (balance, cycle types) is decided on these integers.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AngleError {
    #[error("malformed angle {0:?}, expected <num>/<den>")]
    Malformed(String),
    #[error("angle denominator must be positive")]
    ZeroDenominator,
    #[error("angle arithmetic overflowed")]
    Overflow,
}

/// The unit complex number `exp(iπ·num/den)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GainAngle {
    num: i64,
    den: i64,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl GainAngle {
    /// Gain 1.
    pub const ONE: GainAngle = GainAngle { num: 0, den: 1 };
    /// Gain -1.
    pub const MINUS_ONE: GainAngle = GainAngle { num: 1, den: 1 };
    /// Gain i.
    pub const I: GainAngle = GainAngle { num: 1, den: 2 };

    /// Builds `exp(iπ·num/den)` and normalizes it. `den` may be negative but not zero.
    pub fn new(num: i64, den: i64) -> Result<Self, AngleError> {
        if den == 0 {
            return Err(AngleError::ZeroDenominator);
        }
        Self::from_wide(num as i128, den as i128)
    }

    fn from_wide(mut num: i128, mut den: i128) -> Result<Self, AngleError> {
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = gcd(num, den).max(1);
        num /= g;
        den /= g;
        let num = num.rem_euclid(2 * den);
        // reducing modulo 2·den may expose a further common factor (e.g. 4/2 -> 0/2)
        let g = gcd(num, den).max(1);
        let (num, den) = (num / g, den / g);
        Ok(GainAngle {
            num: i64::try_from(num).map_err(|_| AngleError::Overflow)?,
            den: i64::try_from(den).map_err(|_| AngleError::Overflow)?,
        })
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_one(self) -> bool {
        self.num == 0
    }

    /// Gain of the product `self · other`.
    pub fn checked_add(self, other: GainAngle) -> Result<GainAngle, AngleError> {
        let (a, b) = (self.num as i128, self.den as i128);
        let (c, d) = (other.num as i128, other.den as i128);
        let g = gcd(b, d);
        let l = b / g * d;
        Self::from_wide(a * (l / b) + c * (l / d), l)
    }

    pub fn checked_sub(self, other: GainAngle) -> Result<GainAngle, AngleError> {
        self.checked_add(-other)
    }

    /// Multiplies the gain by `(-1)^k`.
    pub fn times_sign_power(self, k: u64) -> GainAngle {
        if k % 2 == 0 {
            self
        } else {
            self + GainAngle::MINUS_ONE
        }
    }

    /// The angle in radians, in `[0, 2π)`.
    pub fn radians(self) -> f64 {
        std::f64::consts::PI * self.num as f64 / self.den as f64
    }

    /// Sign of the real part, decided exactly from the quadrant.
    pub fn real_part_sign(self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        // angle t = num/den in [0, 2); cos(πt) > 0 on [0, 1/2) ∪ (3/2, 2)
        let twice = 2 * self.num as i128;
        let den = self.den as i128;
        if twice < den {
            Greater
        } else if twice == den || twice == 3 * den {
            Equal
        } else if twice < 3 * den {
            Less
        } else {
            Greater
        }
    }

    /// Complex value; multiples of π/2 are produced exactly.
    pub fn to_complex(self) -> Complex64 {
        match (self.num, self.den) {
            (0, 1) => Complex64::new(1.0, 0.0),
            (1, 1) => Complex64::new(-1.0, 0.0),
            (1, 2) => Complex64::new(0.0, 1.0),
            (3, 2) => Complex64::new(0.0, -1.0),
            _ => {
                let (s, c) = self.radians().sin_cos();
                Complex64::new(c, s)
            }
        }
    }
}

impl Default for GainAngle {
    fn default() -> Self {
        GainAngle::ONE
    }
}

/// Inverse gain, i.e. the complex conjugate.
impl Neg for GainAngle {
    type Output = GainAngle;
    fn neg(self) -> GainAngle {
        if self.num == 0 {
            self
        } else {
            GainAngle {
                num: 2 * self.den - self.num,
                den: self.den,
            }
        }
    }
}

/// Gain multiplication. Panics if the common denominator leaves `i64`;
/// use [`GainAngle::checked_add`] for untrusted angles.
impl Add for GainAngle {
    type Output = GainAngle;
    fn add(self, rhs: GainAngle) -> GainAngle {
        self.checked_add(rhs)
            .expect("gain angle denominator overflow")
    }
}

impl Sub for GainAngle {
    type Output = GainAngle;
    fn sub(self, rhs: GainAngle) -> GainAngle {
        self + (-rhs)
    }
}

impl fmt::Display for GainAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for GainAngle {
    type Err = AngleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || AngleError::Malformed(s.to_string());
        let (num, den) = s.split_once('/').ok_or_else(malformed)?;
        let num: i64 = num.parse().map_err(|_| malformed())?;
        let den: i64 = den.parse().map_err(|_| malformed())?;
        GainAngle::new(num, den)
    }
}

impl serde::Serialize for GainAngle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
