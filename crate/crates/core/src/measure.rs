//! Measures of intervals under `μ_p`.
//!
//! Closed forms: `c_i = μ_p([0, d_i])` and the exact measure of every basic
//! interval of a level, computed from the weights of the two points whose
//! cylinders meet it. The cylinder oracle brackets `μ_p([a, b])` by descending
//! the binary address tree, independently of both closed forms.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{FieldElement, PisotField};
use crate::error::{Error, Result};
use crate::levels::Level;
use crate::prob::{parse_rational, ProbabilityPair};

/// Deepest address tree the oracle will walk.
pub const MAX_ORACLE_DEPTH: u32 = 48;
/// Node budget for one oracle query.
pub const DEFAULT_NODE_CAP: usize = 20_000_000;

/// `c_0 = 1` and `c_i = μ_p([0, d_i])` for `1 <= i <= m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixMeasures {
    c: Vec<BigRational>,
}

impl PrefixMeasures {
    pub fn new(m: usize, p: &ProbabilityPair) -> Self {
        let (p1, p2) = (p.p1(), p.p2());
        let denom = BigRational::one() - &p1 * p2.pow(m as i32 - 1);
        let mut c = vec![BigRational::one()];
        for i in 1..=m {
            c.push(BigRational::one() - p2.pow((m + 1 - i) as i32) / &denom);
        }
        PrefixMeasures { c }
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    /// `c_i`, with `c_0 = 1`.
    pub fn get(&self, i: usize) -> &BigRational {
        &self.c[i]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.c[1..]
    }

    /// `min(c_m, 1 - c_1)`: the lower sandwich constant valid for every triple.
    pub fn sandwich_constant(&self) -> BigRational {
        let m = self.degree();
        let a = self.c[m].clone();
        let b = BigRational::one() - &self.c[1];
        if a < b {
            a
        } else {
            b
        }
    }
}

pub fn prefix_measures(m: usize, p: &ProbabilityPair) -> PrefixMeasures {
    PrefixMeasures::new(m, p)
}

fn interval_measure_with(level: &Level, c: &PrefixMeasures, j: usize) -> BigRational {
    let t = level.label(j).index();
    let mut mu = level.weight(j) * c.get(t);
    if j > 0 {
        let s = level.label(j - 1).index();
        mu += level.weight(j - 1) * (BigRational::one() - c.get(s));
    }
    mu
}

/// `μ_p([a_{n,j}, a_{n,j+1}])`.
pub fn basic_interval_measure(level: &Level, j: usize) -> Result<BigRational> {
    let len = level.num_points() - 1;
    if j >= len {
        return Err(Error::IndexOutOfRange { index: j, len });
    }
    let c = PrefixMeasures::new(level.m(), level.prob());
    Ok(interval_measure_with(level, &c, j))
}

/// Measures of all basic intervals of the level, left to right.
pub fn basic_interval_measures(level: &Level) -> Vec<BigRational> {
    let c = PrefixMeasures::new(level.m(), level.prob());
    (0..level.num_points() - 1)
        .map(|j| interval_measure_with(level, &c, j))
        .collect()
}

/// Largest `max(ρ_j, 1/ρ_j)` with `ρ_j = μ(I_j) / μ(I_{j+1})` over adjacent basic intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioScan {
    pub n: u32,
    pub max_ratio: BigRational,
    pub argmax_index: usize,
}

pub fn interval_ratio_scan(level: &Level) -> Result<RatioScan> {
    if level.num_points() < 3 {
        return Err(Error::LevelTooSmall {
            n: level.rank(),
            points: level.num_points(),
            needed: 3,
        });
    }
    let mu = basic_interval_measures(level);
    let mut best = BigRational::zero();
    let mut argmax = 0;
    for j in 0..mu.len() - 1 {
        let r = &mu[j] / &mu[j + 1];
        let r = if r < BigRational::one() { r.recip() } else { r };
        if r > best {
            best = r;
            argmax = j;
        }
    }
    Ok(RatioScan {
        n: level.rank(),
        max_ratio: best,
        argmax_index: argmax,
    })
}

/// Certified bounds on the measure of an interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureBracket {
    pub lower: BigRational,
    pub upper: BigRational,
    pub depth: u32,
}

impl MeasureBracket {
    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }
}

/// Brackets `μ_p([a, b])` with the cylinders `S_I([0,1])`, `|I| = depth`.
pub fn cylinder_bounds(
    field: &PisotField,
    p: &ProbabilityPair,
    a: &FieldElement,
    b: &FieldElement,
    depth: u32,
) -> Result<MeasureBracket> {
    let one = BigInt::one();
    cylinder_bounds_scaled(field, p, a, b, &one, depth, DEFAULT_NODE_CAP)
}

/// Brackets `μ_p([a / den, b / den])`.
pub fn cylinder_bounds_scaled(
    field: &PisotField,
    p: &ProbabilityPair,
    a: &FieldElement,
    b: &FieldElement,
    den: &BigInt,
    depth: u32,
    node_cap: usize,
) -> Result<MeasureBracket> {
    if depth == 0 || depth > MAX_ORACLE_DEPTH {
        return Err(Error::ResourceCap {
            what: "oracle depth",
            needed: depth.to_string(),
            cap: MAX_ORACLE_DEPTH as usize,
        });
    }
    if !den.is_positive() {
        return Err(Error::InvalidInterval(
            "denominator must be positive".into(),
        ));
    }
    let m = field.degree();
    let zero = FieldElement::zero(m);
    let den_one = FieldElement::integer(1, m).mul_int(den);
    if field.try_compare(a, b)? != Ordering::Less
        || field.try_compare(a, &zero)? == Ordering::Less
        || field.try_compare(b, &den_one)? == Ordering::Greater
    {
        return Err(Error::InvalidInterval(format!(
            "need 0 <= a < b <= 1, got [{a}, {b}] / {den}"
        )));
    }

    let q = p.denom();
    let q_pow: Vec<BigInt> = std::iter::successors(Some(BigInt::one()), |x| Some(x * q))
        .take(depth as usize + 1)
        .collect();
    let step = field.gap_alphabet().get(1).clone();
    let mut lower = BigInt::zero();
    let mut upper = BigInt::zero();
    let mut visited = 0usize;
    // (left end S_I(0), |I|, numerator of p_I over q^|I|)
    let mut stack = vec![(zero, 0u32, BigInt::one())];
    while let Some((x, k, w)) = stack.pop() {
        visited += 1;
        if visited > node_cap {
            return Err(Error::ResourceCap {
                what: "oracle nodes",
                needed: format!("> {node_cap}"),
                cap: node_cap,
            });
        }
        let left = x.mul_int(den);
        let right = (&x + &FieldElement::beta_inverse_power(k, m)).mul_int(den);
        if field.try_compare(&right, a)? == Ordering::Less
            || field.try_compare(&left, b)? == Ordering::Greater
        {
            continue;
        }
        let mass = &w * &q_pow[(depth - k) as usize];
        if field.try_compare(a, &left)? != Ordering::Greater
            && field.try_compare(&right, b)? != Ordering::Greater
        {
            lower += &mass;
            upper += &mass;
            continue;
        }
        if k == depth {
            upper += &mass;
            continue;
        }
        let shifted = &x + &FieldElement::new(step.coeffs(), k + 1, m);
        stack.push((shifted, k + 1, &w * p.num2()));
        stack.push((x, k + 1, w * p.num1()));
    }
    let total = &q_pow[depth as usize];
    Ok(MeasureBracket {
        lower: BigRational::new(lower, total.clone()),
        upper: BigRational::new(upper, total.clone()),
        depth,
    })
}

/// Bracket on `μ(B(x, 2r)) / μ(B(x, r))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallProbe {
    pub inner: MeasureBracket,
    pub outer: MeasureBracket,
    pub lower: BigRational,
    /// `None` when the inner ball has zero certified mass at this depth.
    pub upper: Option<BigRational>,
}

impl BallProbe {
    fn from_brackets(inner: MeasureBracket, outer: MeasureBracket) -> Self {
        let lower = &outer.lower / &inner.upper;
        let upper = (!inner.lower.is_zero()).then(|| &outer.upper / &inner.lower);
        BallProbe {
            inner,
            outer,
            lower,
            upper,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        self.upper.is_none()
    }
}

fn clamp_to_unit(field: &PisotField, x: FieldElement, den: &BigInt) -> FieldElement {
    let m = field.degree();
    let zero = FieldElement::zero(m);
    let top = FieldElement::integer(1, m).mul_int(den);
    if field.compare(&x, &zero) == Ordering::Less {
        zero
    } else if field.compare(&x, &top) == Ordering::Greater {
        top
    } else {
        x
    }
}

/// Probes the doubling ratio at center `x` and radius `r`; balls are clipped to `[0, 1]`.
pub fn ball_ratio_probe(
    field: &PisotField,
    p: &ProbabilityPair,
    center: &FieldElement,
    radius: &FieldElement,
    depth: u32,
) -> Result<BallProbe> {
    let one = BigInt::one();
    let twice = radius.mul_int(&BigInt::from(2));
    let ball = |r: &FieldElement| {
        (
            clamp_to_unit(field, center - r, &one),
            clamp_to_unit(field, center + r, &one),
        )
    };
    let (a1, b1) = ball(radius);
    let (a2, b2) = ball(&twice);
    let inner = cylinder_bounds_scaled(field, p, &a1, &b1, &one, depth, DEFAULT_NODE_CAP)?;
    let outer = cylinder_bounds_scaled(field, p, &a2, &b2, &one, depth, DEFAULT_NODE_CAP)?;
    Ok(BallProbe::from_brackets(inner, outer))
}

/// Probe whose inner ball is exactly `[lo, hi]` (center at the midpoint).
pub fn ball_ratio_probe_on(
    field: &PisotField,
    p: &ProbabilityPair,
    lo: &FieldElement,
    hi: &FieldElement,
    depth: u32,
) -> Result<BallProbe> {
    // Work over the denominator 2: the inner ball is [2lo, 2hi]/2 and the
    // doubled ball is [3lo - hi, 3hi - lo]/2.
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let a1 = lo.mul_int(&two);
    let b1 = hi.mul_int(&two);
    let a2 = clamp_to_unit(field, &lo.mul_int(&three) - hi, &two);
    let b2 = clamp_to_unit(field, &hi.mul_int(&three) - lo, &two);
    let inner = cylinder_bounds_scaled(field, p, &a1, &b1, &two, depth, DEFAULT_NODE_CAP)?;
    let outer = cylinder_bounds_scaled(field, p, &a2, &b2, &two, depth, DEFAULT_NODE_CAP)?;
    Ok(BallProbe::from_brackets(inner, outer))
}

/// An interval endpoint written for the command line.
///
/// Accepted forms: a rational (`0`, `1`, `1/2`), a β-adic digit string
/// `0.d_1 d_2 ...` with digits 0/1, a letter `dJ`, or `R*ATOM` for a rational
/// multiple of a digit string or letter. The value is `numerator / den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endpoint {
    pub numerator: FieldElement,
    pub den: BigInt,
}

impl Endpoint {
    pub fn parse(s: &str, m: usize) -> Result<Endpoint> {
        let s = s.trim();
        let bad = |why: &str| Error::Parse(format!("endpoint '{s}': {why}"));
        let (coef, atom) = match s.split_once('*') {
            Some((c, a)) => (parse_rational(c)?, a.trim()),
            None => (BigRational::one(), s),
        };
        let value = if let Some(j) = atom.strip_prefix('d') {
            let j: usize = j.parse().map_err(|_| bad("letter index"))?;
            if j > m {
                return Err(bad(&format!("letter d{j} needs j <= {m}")));
            }
            crate::algebra::GapAlphabet::new(m).get(j).clone()
        } else if let Some(digits) = atom.strip_prefix("0.") {
            let digits: Vec<u32> = digits
                .chars()
                .map(|ch| match ch {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(bad("digits must be 0 or 1")),
                })
                .collect::<Result<_>>()?;
            FieldElement::from_digits(&digits, m)
        } else if !s.contains('*') {
            let r = parse_rational(atom)?;
            return Ok(Endpoint {
                numerator: FieldElement::integer(1, m).mul_int(r.numer()),
                den: r.denom().clone(),
            });
        } else {
            return Err(bad("expected dJ or 0.digits after '*'"));
        };
        if coef.is_negative() {
            return Err(bad("negative coefficient"));
        }
        Ok(Endpoint {
            numerator: value.mul_int(coef.numer()),
            den: coef.denom().clone(),
        })
    }
}

/// Oracle query on two parsed endpoints.
pub fn cylinder_bounds_endpoints(
    field: &PisotField,
    p: &ProbabilityPair,
    a: &Endpoint,
    b: &Endpoint,
    depth: u32,
) -> Result<MeasureBracket> {
    let den = num_integer::Integer::lcm(&a.den, &b.den);
    let na = a.numerator.mul_int(&(&den / &a.den));
    let nb = b.numerator.mul_int(&(&den / &b.den));
    cylinder_bounds_scaled(field, p, &na, &nb, &den, depth, DEFAULT_NODE_CAP)
}
