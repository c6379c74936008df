//! Gaussian rationals `a + b i` with `a, b` in Q.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRat::new(rat(re, 1), rat(im, 1))
    }

    /// `(re_n / re_d) + (im_n / im_d) i`
    pub fn from_fracs(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> Self {
        GaussRat::new(rat(re_n, re_d), rat(im_n, im_d))
    }

    pub fn real(n: i64) -> Self {
        GaussRat::from_ints(n, 0)
    }

    pub fn i() -> Self {
        GaussRat::from_ints(0, 1)
    }

    pub fn zero() -> Self {
        GaussRat::from_ints(0, 0)
    }

    pub fn one() -> Self {
        GaussRat::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRat::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussRat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `i^e`
    pub fn i_pow(e: u32) -> Self {
        match e % 4 {
            0 => GaussRat::one(),
            1 => GaussRat::i(),
            2 => GaussRat::real(-1),
            _ => GaussRat::from_ints(0, -1),
        }
    }

    /// Principal square root (non-negative real part, and non-negative
    /// imaginary part on the negative real axis) when it is again a Gaussian
    /// rational.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(GaussRat::zero());
        }
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let two = rat(2, 1);
        let re = rational_sqrt(&((&modulus + &self.re) / &two))?;
        let mut im = rational_sqrt(&((&modulus - &self.re) / &two))?;
        if self.im.is_negative() {
            im = -im;
        }
        Some(GaussRat::new(re, im))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::real(n)
    }
}

macro_rules! gauss_binop {
    ($tr:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $tr<&GaussRat> for &GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: &GaussRat) -> GaussRat {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $tr<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: GaussRat) -> GaussRat {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: &GaussRat) -> GaussRat {
                (&self).$method(rhs)
            }
        }
        impl $tr<GaussRat> for &GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: GaussRat) -> GaussRat {
                self.$method(&rhs)
            }
        }
    };
}

gauss_binop!(Add, add, |a, b| GaussRat::new(&a.re + &b.re, &a.im + &b.im));
gauss_binop!(Sub, sub, |a, b| GaussRat::new(&a.re - &b.re, &a.im - &b.im));
gauss_binop!(Mul, mul, |a, b| GaussRat::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));
gauss_binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division by zero Gaussian rational"));

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, -&self.im)
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        // finite decimal, kept exact
        let neg = int.trim_start().starts_with('-');
        let int_abs = int.trim().trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if int_abs.is_empty() { "0" } else { int_abs }, frac);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = s.trim().parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

impl FromStr for GaussRat {
    type Err = Error;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`, with `a`, `b` integers,
    /// fractions `p/q` or finite decimals.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty complex literal".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(GaussRat::new(parse_rational(&s)?, BigRational::zero()));
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im = match im_part {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.trim_start_matches('+'))?,
        };
        let re = if re_part.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(re_part)?
        };
        Ok(GaussRat::new(re, im))
    }
}

// JSON form: {"re": [num, den], "im": [num, den]}; integers outside i64 are
// written as decimal strings.

fn int_to_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

fn int_from_json(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

pub(crate) fn rational_to_json(q: &BigRational) -> serde_json::Value {
    serde_json::Value::Array(vec![int_to_json(q.numer()), int_to_json(q.denom())])
}

pub(crate) fn rational_from_json(v: &serde_json::Value) -> Option<BigRational> {
    let arr = v.as_array()?;
    if arr.len() != 2 {
        return None;
    }
    let n = int_from_json(&arr[0])?;
    let d = int_from_json(&arr[1])?;
    (!d.is_zero()).then(|| BigRational::new(n, d))
}

impl GaussRat {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "re": rational_to_json(&self.re), "im": rational_to_json(&self.im) })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Self> {
        Some(GaussRat::new(
            rational_from_json(v.get("re")?)?,
            rational_from_json(v.get("im")?)?,
        ))
    }
}

impl Serialize for GaussRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        GaussRat::from_json(&v)
            .ok_or_else(|| serde::de::Error::custom("malformed Gaussian rational"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_minus_25_is_5i() {
        let w = GaussRat::real(-25);
        assert_eq!(w.sqrt_exact(), Some(GaussRat::from_ints(0, 5)));
    }

    #[test]
    fn sqrt_of_3_plus_4i() {
        let w = GaussRat::from_ints(3, 4);
        assert_eq!(w.sqrt_exact(), Some(GaussRat::from_ints(2, 1)));
        let w = GaussRat::from_ints(3, -4);
        assert_eq!(w.sqrt_exact(), Some(GaussRat::from_ints(2, -1)));
    }

    #[test]
    fn non_square_has_no_exact_root() {
        assert_eq!(GaussRat::real(-2).sqrt_exact(), None);
        assert_eq!(GaussRat::from_ints(1, 1).sqrt_exact(), None);
    }

    #[test]
    fn division_is_exact() {
        let a = GaussRat::real(-16);
        let b = GaussRat::from_ints(0, 5);
        assert_eq!(&a / &b, GaussRat::from_fracs(0, 1, 16, 5));
    }

    #[test]
    fn parses_literals() {
        let cases = [
            ("5i", GaussRat::from_ints(0, 5)),
            ("3", GaussRat::real(3)),
            ("i", GaussRat::i()),
            ("-i", GaussRat::from_ints(0, -1)),
            ("1/2-3/4i", GaussRat::from_fracs(1, 2, -3, 4)),
            ("-2+i", GaussRat::from_ints(-2, 1)),
            ("0.25", GaussRat::from_fracs(1, 4, 0, 1)),
            ("-1.5-0.5i", GaussRat::from_fracs(-3, 2, -1, 2)),
        ];
        for (s, want) in cases {
            assert_eq!(s.parse::<GaussRat>().unwrap(), want, "{s}");
        }
        assert!("".parse::<GaussRat>().is_err());
        assert!("1/0".parse::<GaussRat>().is_err());
        assert!("abc".parse::<GaussRat>().is_err());
    }

    #[test]
    fn display_roundtrips_through_parse() {
        for g in [
            GaussRat::from_fracs(16, 5, -12, 5),
            GaussRat::from_ints(0, 5),
            GaussRat::from_fracs(-1, 3, 0, 1),
        ] {
            assert_eq!(g.to_string().parse::<GaussRat>().unwrap(), g);
        }
    }

    #[test]
    fn json_form_is_pairs() {
        let g = GaussRat::from_fracs(0, 1, 16, 5);
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v, serde_json::json!({"re": [0, 1], "im": [16, 5]}));
        let back: GaussRat = serde_json::from_value(v).unwrap();
        assert_eq!(back, g);
    }
}
