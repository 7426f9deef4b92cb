use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::MathError;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Build a rational from a small numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact ring operations shared by every matrix entry type.
///
/// All three entry types (Gaussian rationals, Laurent series in ε and
/// polynomials in the boost velocity) are algebras over the Gaussian
/// rationals, so scalar embedding and scaling are part of the contract.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_scalar(c: GaussianRational) -> Self;
    fn scale(&self, c: &GaussianRational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Rings where every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

/// Integral domains with exact division (`None` when the quotient does not exist).
pub trait ExactDiv: Ring {
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
}

/// Complex number with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn int(n: i64) -> Self {
        Self::real(Rational::from_integer(BigInt::from(n)))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::real(rat(num, den))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        Self {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }
    fn one() -> Self {
        Self {
            re: Rational::one(),
            im: Rational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        Self {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Self {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Self::real(&self.re * &o.re);
        }
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg_ref(&self) -> Self {
        Self {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
    fn from_scalar(c: GaussianRational) -> Self {
        c
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        self.mul_ref(c)
    }
}

impl Field for GaussianRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Self::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Some(Self {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
}

impl ExactDiv for GaussianRational {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        divisor.inv().map(|d| self.mul_ref(&d))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$inner(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                self.$inner(rhs)
            }
        }
    };
}
forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Div for GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the primitive numeric types.
    fn div(self, rhs: GaussianRational) -> GaussianRational {
        self.mul_ref(&rhs.inv().expect("division by zero Gaussian rational"))
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        self.neg_ref()
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders as `a/b`, `c/d*i` or `a/b+c/d*i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", fmt_rational(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(
            f,
            "{}{}{}*i",
            fmt_rational(&self.re),
            sign,
            fmt_rational(&self.im.abs())
        )
    }
}

fn parse_rational(s: &str) -> Result<Rational, MathError> {
    let s = s.trim();
    let bad = || MathError::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses the forms produced by `Display`, plus a bare `i` / `-i`.
impl FromStr for GaussianRational {
    type Err = MathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(MathError::Parse("empty scalar".into()));
        }
        let imag_part = |t: &str| -> Result<Rational, MathError> {
            let body = t.strip_suffix('i').unwrap();
            let body = body.strip_suffix('*').unwrap_or(body);
            match body {
                "" | "+" => Ok(Rational::one()),
                "-" => Ok(-Rational::one()),
                b => parse_rational(b),
            }
        };
        if !s.ends_with('i') {
            return Ok(Self::real(parse_rational(&s)?));
        }
        // split at the last sign that is not the leading one
        let split = s
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) => Ok(Self::new(parse_rational(&s[..k])?, imag_part(&s[k..])?)),
            None => Ok(Self::new(Rational::zero(), imag_part(&s)?)),
        }
    }
}
