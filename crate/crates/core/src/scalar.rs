//! Numeric backends.
//!
//! Every quantity in the calculus is generic over [`Scalar`]. Two
//! implementations exist: [`Rational`] (arbitrary precision, exact
//! comparisons) and `f64` (fast, compared with fixed absolute tolerances).
//! A value's mode is part of its type, so the two never mix silently;
//! conversion goes through [`crate::MassFunction::to_float`] and friends.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

/// Absolute tolerance for float normalization, nonnegativity and equality.
pub const FLOAT_TOLERANCE: f64 = 1e-9;
/// Float denominators below this count as zero when conditioning.
pub const FLOAT_DENOMINATOR_FLOOR: f64 = 1e-12;
/// Bucket width used when float values serve as exact keys.
pub const FLOAT_BUCKET: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericMode {
    Rational,
    Float,
}

impl fmt::Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericMode::Rational => f.write_str("rational"),
            NumericMode::Float => f.write_str("float"),
        }
    }
}

/// Weight of a count vector under a multinomial law, prepared for a fixed
/// number of draws and fixed cell probabilities.
pub type MultinomialWeight<S> = Box<dyn Fn(&[usize]) -> S + Send + Sync>;

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: NumericMode;

    /// Totally ordered stand-in for the value, used to bucket sums.
    type Key: Ord + Clone + Send + Sync + fmt::Debug;

    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;

    /// Counts as zero (exactly zero for rationals).
    fn is_negligible(&self) -> bool;
    /// Strictly below zero, beyond tolerance.
    fn is_negative_beyond_tolerance(&self) -> bool;
    /// Equal (exactly for rationals).
    fn same(&self, other: &Self) -> bool;
    /// `self >= other`, with tolerance slack in float mode.
    fn at_least(&self, other: &Self) -> bool;
    /// Too small to divide by.
    fn vanishes_as_denominator(&self) -> bool;

    fn key(&self) -> Self::Key;

    fn multinomial(n: usize, probs: &[Self]) -> MultinomialWeight<Self>;

    fn is_positive(&self) -> bool {
        !self.is_negligible() && !self.is_negative_beyond_tolerance()
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self>>(items: I) -> Self {
        items
            .into_iter()
            .fold(Self::zero(), |acc, x| acc + x.clone())
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }
}

impl Scalar for Rational {
    const MODE: NumericMode = NumericMode::Rational;
    type Key = Rational;

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn is_negative_beyond_tolerance(&self) -> bool {
        Signed::is_negative(self)
    }

    fn same(&self, other: &Self) -> bool {
        self == other
    }

    fn at_least(&self, other: &Self) -> bool {
        self >= other
    }

    fn vanishes_as_denominator(&self) -> bool {
        self.is_zero()
    }

    fn key(&self) -> Self::Key {
        self.clone()
    }

    fn multinomial(n: usize, probs: &[Self]) -> MultinomialWeight<Self> {
        let mut factorials = Vec::with_capacity(n + 1);
        factorials.push(BigInt::one());
        for i in 1..=n {
            let next = &factorials[i - 1] * BigInt::from(i);
            factorials.push(next);
        }
        let powers: Vec<Vec<Rational>> = probs
            .iter()
            .map(|p| {
                let mut row = Vec::with_capacity(n + 1);
                row.push(Rational::one());
                for c in 1..=n {
                    let next = &row[c - 1] * p;
                    row.push(next);
                }
                row
            })
            .collect();
        Box::new(move |counts: &[usize]| {
            let mut denom = BigInt::one();
            for &c in counts {
                denom *= &factorials[c];
            }
            let coefficient = Rational::from_integer(&factorials[n] / denom);
            counts
                .iter()
                .zip(&powers)
                .fold(coefficient, |acc, (&c, row)| acc * &row[c])
        })
    }
}

impl Scalar for f64 {
    const MODE: NumericMode = NumericMode::Float;
    type Key = i64;

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self) -> bool {
        self.abs() <= FLOAT_TOLERANCE
    }

    fn is_negative_beyond_tolerance(&self) -> bool {
        *self < -FLOAT_TOLERANCE
    }

    fn same(&self, other: &Self) -> bool {
        (self - other).abs() <= FLOAT_TOLERANCE
    }

    fn at_least(&self, other: &Self) -> bool {
        *self >= other - FLOAT_TOLERANCE
    }

    fn vanishes_as_denominator(&self) -> bool {
        self.abs() < FLOAT_DENOMINATOR_FLOOR
    }

    fn key(&self) -> Self::Key {
        (self / FLOAT_BUCKET).round() as i64
    }

    fn multinomial(n: usize, probs: &[Self]) -> MultinomialWeight<Self> {
        let mut ln_factorial = Vec::with_capacity(n + 1);
        ln_factorial.push(0.0f64);
        for i in 1..=n {
            let next = ln_factorial[i - 1] + (i as f64).ln();
            ln_factorial.push(next);
        }
        let ln_probs: Vec<f64> = probs.iter().map(|p| p.ln()).collect();
        Box::new(move |counts: &[usize]| {
            let mut log_weight = ln_factorial[n];
            for (&c, &lp) in counts.iter().zip(&ln_probs) {
                if c == 0 {
                    continue;
                }
                if lp == f64::NEG_INFINITY {
                    return 0.0;
                }
                log_weight += c as f64 * lp - ln_factorial[c];
            }
            log_weight.exp()
        })
    }
}

/// Parse `"p/q"`, an integer, or a terminating decimal such as `"0.125"` or
/// `"2.5e-3"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    parse_decimal(text)
}

fn parse_decimal(text: &str) -> Option<Rational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numerator: BigInt = all_digits.parse().ok()?;
    if negative {
        numerator = -numerator;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(numerator * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numerator, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Canonical text form `p/q` with `gcd(p, q) = 1` and `q > 0`.
pub fn format_rational(r: &Rational) -> String {
    // BigRational is kept reduced with a positive denominator.
    debug_assert!(r.numer().gcd(r.denom()).is_one() || r.numer().is_zero());
    format!("{}/{}", r.numer(), r.denom())
}

/// Shorthand for building exact constants.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}
