//! Exact dyadic rotation angles.
//!
//! Every rotation the synthesis emits is `k·π/2^j`, so angles are kept as a
//! reduced dyadic fraction of π. Sums are exact and a zero rotation is a
//! structural fact rather than a floating-point threshold.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported `log2` of the denominator.
pub const MAX_LOG2_DENOMINATOR: u32 = 60;

/// An angle `numerator / 2^log2_denominator · π`, reduced into `(-π, π]`.
///
/// The representation is canonical: the numerator is odd unless the angle is
/// zero, in which case the denominator exponent is also zero. Two angles are
/// therefore equal exactly when their fields are equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Angle {
    numerator: i64,
    log2_denominator: u32,
}

impl Angle {
    pub const ZERO: Angle = Angle {
        numerator: 0,
        log2_denominator: 0,
    };

    pub const PI: Angle = Angle {
        numerator: 1,
        log2_denominator: 0,
    };

    pub fn new(numerator: i64, log2_denominator: u32) -> Result<Angle> {
        Self::canonical(i128::from(numerator), log2_denominator)
    }

    /// `π / 2^k`.
    pub fn pi_over_pow2(k: u32) -> Result<Angle> {
        Self::new(1, k)
    }

    fn canonical(numerator: i128, log2_denominator: u32) -> Result<Angle> {
        // Anything past this cannot be represented by the i128 modulus below.
        if log2_denominator > 120 {
            return Err(Error::AnglePrecision(log2_denominator));
        }
        let half_turn = 1i128 << log2_denominator;
        let full_turn = half_turn << 1;
        let mut num = numerator.rem_euclid(full_turn);
        if num > half_turn {
            num -= full_turn;
        }
        let mut k = log2_denominator;
        if num == 0 {
            return Ok(Angle::ZERO);
        }
        while k > 0 && num % 2 == 0 {
            num /= 2;
            k -= 1;
        }
        if k > MAX_LOG2_DENOMINATOR {
            return Err(Error::AnglePrecision(k));
        }
        Ok(Angle {
            numerator: num as i64,
            log2_denominator: k,
        })
    }

    pub fn numerator(self) -> i64 {
        self.numerator
    }

    pub fn log2_denominator(self) -> u32 {
        self.log2_denominator
    }

    pub fn is_zero(self) -> bool {
        self.numerator == 0
    }

    pub fn radians(self) -> f64 {
        std::f64::consts::PI * self.numerator as f64 / (self.log2_denominator as f64).exp2()
    }
}

impl Default for Angle {
    fn default() -> Self {
        Angle::ZERO
    }
}

impl Add for Angle {
    type Output = Angle;

    fn add(self, rhs: Angle) -> Angle {
        let k = self.log2_denominator.max(rhs.log2_denominator);
        let a = i128::from(self.numerator) << (k - self.log2_denominator);
        let b = i128::from(rhs.numerator) << (k - rhs.log2_denominator);
        // Both inputs are canonical, so the result never needs a finer denominator.
        Self::canonical(a + b, k).expect("sum of canonical angles is representable")
    }
}

impl Neg for Angle {
    type Output = Angle;

    fn neg(self) -> Angle {
        Self::canonical(-i128::from(self.numerator), self.log2_denominator)
            .expect("negation of a canonical angle is representable")
    }
}

impl Sub for Angle {
    type Output = Angle;

    fn sub(self, rhs: Angle) -> Angle {
        self + (-rhs)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Angle({self})")
    }
}

/// Formats as an OpenQASM-compatible symbolic expression: `0`, `pi`, `pi/4`,
/// `-3*pi/8`.
impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.numerator == 0 {
            return f.write_str("0");
        }
        if self.numerator < 0 {
            f.write_str("-")?;
        }
        let magnitude = self.numerator.unsigned_abs();
        if magnitude != 1 {
            write!(f, "{magnitude}*")?;
        }
        f.write_str("pi")?;
        if self.log2_denominator > 0 {
            write!(f, "/{}", 1u64 << self.log2_denominator)?;
        }
        Ok(())
    }
}

/// Parses `[-][N*]pi[/D]` or `0`, where `D` is a power of two.
impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Angle> {
        let syntax = || Error::AngleSyntax(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (negative, body) = match compact.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, compact.strip_prefix('+').unwrap_or(&compact)),
        };
        if body == "0" {
            return Ok(Angle::ZERO);
        }
        let (multiplier, rest) = match body.split_once('*') {
            Some((lhs, rhs)) => (parse_digits(lhs).ok_or_else(syntax)?, rhs),
            None => (1, body),
        };
        let rest = rest.strip_prefix("pi").ok_or_else(syntax)?;
        let log2_denominator = if rest.is_empty() {
            0
        } else {
            let denominator = rest
                .strip_prefix('/')
                .and_then(parse_digits)
                .ok_or_else(syntax)?;
            if denominator == 0 || !denominator.is_power_of_two() {
                return Err(syntax());
            }
            denominator.trailing_zeros()
        };
        let numerator = i128::from(multiplier);
        Self::canonical(if negative { -numerator } else { numerator }, log2_denominator)
    }
}

fn parse_digits(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}
