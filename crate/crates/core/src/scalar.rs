//! Complex scalars with two interchangeable backends.
//!
//! [`GaussianRational`] is exact: both parts are arbitrary-precision
//! rationals and every ring operation is closed without rounding.
//! [`Complex64`] is the binary64 backend used for coins with irrational
//! entries. Code is generic over [`Scalar`], so a single computation can
//! never mix the two.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::dd::{CDd, Dd};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(Error::Format(format!("unknown backend {other:?}"))),
        }
    }
}

/// Field operations shared by both numeric backends.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;

    /// `re² + im²`, carried as a scalar with zero imaginary part.
    fn norm_sqr(&self) -> Self;

    /// Square root of a nonnegative real, when it is representable.
    fn real_sqrt(&self) -> Option<Self>;

    /// Orders two real values; `None` if either has an imaginary part.
    fn cmp_real(&self, other: &Self) -> Option<Ordering>;

    fn to_complex64(&self) -> Complex64;

    /// Encodes as a `[re, im]` pair of JSON values.
    fn encode(&self) -> [Value; 2];

    /// Encodes the real part alone.
    fn encode_real(&self) -> Value;

    fn decode(re: &Value, im: &Value) -> Result<Self>;

    fn decode_real(v: &Value) -> Result<Self>;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_rational(&BigRational::new(numer.into(), denom.into()))
    }

    /// `self += a * b`.
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += &(a.clone() * b);
    }

    fn modulus(&self) -> f64 {
        self.to_complex64().norm()
    }

    /// Double-double value, exact where the backend allows it.
    fn to_cdd(&self) -> CDd {
        CDd::from(self.to_complex64())
    }
}

/// A complex number with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self::real(&self.re * &rhs.re);
        }
        Self {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<'a> Add<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn add(mut self, rhs: &'a Self) -> Self {
        self += rhs;
        self
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<'a> Sub<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn sub(mut self, rhs: &'a Self) -> Self {
        self -= rhs;
        self
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        self.mul_ref(rhs)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'a GaussianRational) -> GaussianRational {
        self.mul_ref(rhs)
    }
}

impl Div for GaussianRational {
    type Output = Self;

    /// Panics on division by zero, like `BigRational`.
    fn div(self, rhs: Self) -> Self {
        if rhs.im.is_zero() {
            return Self {
                re: self.re / &rhs.re,
                im: self.im / &rhs.re,
            };
        }
        let denom = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        let num = self.mul_ref(&rhs.conj());
        Self {
            re: num.re / &denom,
            im: num.im / &denom,
        }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<'a> AddAssign<&'a GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &'a Self) {
        self.re += &rhs.re;
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl<'a> SubAssign<&'a GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &'a Self) {
        self.re -= &rhs.re;
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}

impl Scalar for GaussianRational {
    const BACKEND: Backend = Backend::Exact;

    fn zero() -> Self {
        Self::real(BigRational::zero())
    }

    fn one() -> Self {
        Self::real(BigRational::one())
    }

    fn from_i64(n: i64) -> Self {
        Self::real(BigRational::from_integer(n.into()))
    }

    fn from_rational(r: &BigRational) -> Self {
        Self::real(r.clone())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    fn norm_sqr(&self) -> Self {
        Self::real(&self.re * &self.re + &self.im * &self.im)
    }

    fn real_sqrt(&self) -> Option<Self> {
        if !self.im.is_zero() || self.re.is_negative() {
            return None;
        }
        let numer = exact_isqrt(self.re.numer())?;
        let denom = exact_isqrt(self.re.denom())?;
        Some(Self::real(BigRational::new(numer, denom)))
    }

    fn cmp_real(&self, other: &Self) -> Option<Ordering> {
        if self.im.is_zero() && other.im.is_zero() {
            Some(self.re.cmp(&other.re))
        } else {
            None
        }
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn encode(&self) -> [Value; 2] {
        [encode_rational(&self.re), encode_rational(&self.im)]
    }

    fn encode_real(&self) -> Value {
        encode_rational(&self.re)
    }

    fn decode(re: &Value, im: &Value) -> Result<Self> {
        Ok(Self::new(decode_exact_part(re)?, decode_exact_part(im)?))
    }

    fn decode_real(v: &Value) -> Result<Self> {
        decode_exact_part(v).map(Self::real)
    }

    fn to_cdd(&self) -> CDd {
        CDd::new(rational_to_dd(&self.re), rational_to_dd(&self.im))
    }

    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += &a.mul_ref(b);
    }
}

impl Scalar for Complex64 {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn norm_sqr(&self) -> Self {
        Complex64::new(Complex64::norm_sqr(self), 0.0)
    }

    fn real_sqrt(&self) -> Option<Self> {
        (self.im == 0.0 && self.re >= 0.0).then(|| Complex64::new(self.re.sqrt(), 0.0))
    }

    fn cmp_real(&self, other: &Self) -> Option<Ordering> {
        if self.im == 0.0 && other.im == 0.0 {
            self.re.partial_cmp(&other.re)
        } else {
            None
        }
    }

    fn to_complex64(&self) -> Complex64 {
        *self
    }

    fn encode(&self) -> [Value; 2] {
        [encode_f64(self.re), encode_f64(self.im)]
    }

    fn encode_real(&self) -> Value {
        encode_f64(self.re)
    }

    fn decode(re: &Value, im: &Value) -> Result<Self> {
        Ok(Complex64::new(
            decode_float_part(re)?,
            decode_float_part(im)?,
        ))
    }

    fn decode_real(v: &Value) -> Result<Self> {
        decode_float_part(v).map(|re| Complex64::new(re, 0.0))
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.abs() < 9.007_199_254_740_992e15 && d < 9.007_199_254_740_992e15 {
            return n / d;
        }
    }
    r.to_f64().unwrap_or(f64::NAN)
}

fn rational_to_dd(r: &BigRational) -> Dd {
    const EXACT: f64 = 9.007_199_254_740_992e15;
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.abs() < EXACT && d < EXACT {
            return Dd::new(n) / Dd::new(d);
        }
    }
    Dd::new(rational_to_f64(r))
}

/// Always `num/den`, including integers (`2/1`).
pub fn encode_rational(r: &BigRational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

fn encode_f64(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn decode_exact_part(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(_) => Err(Error::BackendMismatch {
            expected: Backend::Exact,
            found: Backend::Float,
        }),
        other => Err(Error::Format(format!(
            "expected a rational string, got {other}"
        ))),
    }
}

fn decode_float_part(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(n.to_string())),
        Value::String(_) => Err(Error::BackendMismatch {
            expected: Backend::Float,
            found: Backend::Exact,
        }),
        other => Err(Error::Format(format!("expected a number, got {other}"))),
    }
}

/// Parses `a/b`, an integer, or a finite decimal (`0.25`, `-1.5e-3`)
/// into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = all_digits.parse().map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Parses a real value for the given backend: exact backends take a
/// rational literal, float backends any `f64` literal or `p/q` form.
pub fn parse_real<S: Scalar>(s: &str) -> Result<S> {
    match S::BACKEND {
        Backend::Exact => parse_rational(s).map(|r| S::from_rational(&r)),
        Backend::Float => {
            if s.contains('/') {
                parse_rational(s).map(|r| S::from_rational(&r))
            } else {
                let x: f64 = s.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
                if !x.is_finite() {
                    return Err(Error::Parse(s.to_string()));
                }
                S::decode_real(&encode_f64(x))
            }
        }
    }
}
