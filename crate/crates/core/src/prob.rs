use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A probability weight `(p1, p2)` with rational entries, `p1 + p2 = 1`.
///
/// Stored over a common denominator: `p1 = a / q`, `p2 = b / q` with
/// `a + b = q` and `gcd(a, q) = 1`. Weights at rank `n` are then integers over `q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProbabilityPair {
    a: BigInt,
    b: BigInt,
    q: BigInt,
}

impl ProbabilityPair {
    /// The pair `(p1, 1 - p1)`.
    pub fn new(p1: BigRational) -> Result<Self> {
        if !p1.is_positive() || p1 >= BigRational::one() {
            return Err(Error::InvalidProbability(format!(
                "p1 = {p1} must lie strictly between 0 and 1"
            )));
        }
        let q = p1.denom().clone();
        let a = p1.numer().clone();
        let b = &q - &a;
        Ok(ProbabilityPair { a, b, q })
    }

    pub fn from_pair(p1: BigRational, p2: BigRational) -> Result<Self> {
        if &p1 + &p2 != BigRational::one() {
            return Err(Error::InvalidProbability(format!("{p1} + {p2} != 1")));
        }
        Self::new(p1)
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidProbability("zero denominator".into()));
        }
        Self::new(BigRational::new(num.into(), den.into()))
    }

    /// `(1/2, 1/2)`.
    pub fn uniform() -> Self {
        Self::from_ratio(1, 2).expect("1/2 is a valid probability")
    }

    pub fn p1(&self) -> BigRational {
        BigRational::new(self.a.clone(), self.q.clone())
    }

    pub fn p2(&self) -> BigRational {
        BigRational::new(self.b.clone(), self.q.clone())
    }

    /// Numerator of `p1` over the common denominator.
    pub fn num1(&self) -> &BigInt {
        &self.a
    }

    /// Numerator of `p2` over the common denominator.
    pub fn num2(&self) -> &BigInt {
        &self.b
    }

    pub fn denom(&self) -> &BigInt {
        &self.q
    }

    /// `(p2, p1)`.
    pub fn swapped(&self) -> Self {
        ProbabilityPair {
            a: self.b.clone(),
            b: self.a.clone(),
            q: self.q.clone(),
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.a == self.b
    }

    /// True when `p1 > p2`.
    pub fn needs_reflection(&self) -> bool {
        self.a > self.b
    }

    /// The pair with `p1 <= p2`, plus whether a swap was applied.
    pub fn normalized(&self) -> (Self, bool) {
        if self.needs_reflection() {
            (self.swapped(), true)
        } else {
            (self.clone(), false)
        }
    }
}

impl fmt::Display for ProbabilityPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p1(), self.p2())
    }
}

impl FromStr for ProbabilityPair {
    type Err = Error;

    /// Parses `p1` written as `num/den` (or an integer-free `num` is rejected).
    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_rational(s)?)
    }
}

/// Parses `"num/den"` or `"num"` into an exact rational. Decimal points are refused.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.contains('.') || s.contains('e') || s.contains('E') {
        return Err(Error::Parse(format!(
            "'{s}': probabilities must be exact rationals such as 1/3"
        )));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in '{s}'")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in '{s}'")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(BigRational::new(num, den))
}

/// Renders `x` rounded half away from zero to `digits` decimals.
pub fn decimal_string(x: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = x * BigRational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let neg = rounded.is_negative();
    let (int, frac) = rounded.abs().div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!(
        "{sign}{int}.{frac:0>width$}",
        frac = frac.to_string(),
        width = digits as usize
    )
}

/// `num/den` rendering that keeps integers as `num/1`.
pub fn exact_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}
