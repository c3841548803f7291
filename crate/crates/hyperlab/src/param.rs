//! Parameter values: exact rationals where exactness matters, complex
//! doubles otherwise. No mixed mode: a computation is either exact all the
//! way or numeric all the way.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

/// A series parameter: exact rational or finite complex double.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Exact(BigRational),
    Num(Complex64),
}

impl ParamValue {
    pub fn rational(num: i64, den: i64) -> Self {
        ParamValue::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn integer(n: i64) -> Self {
        ParamValue::Exact(BigRational::from(BigInt::from(n)))
    }

    pub fn complex(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::Usage("complex parameter must be finite".into()));
        }
        Ok(ParamValue::Num(Complex64::new(re, im)))
    }

    pub fn as_complex(&self) -> Complex64 {
        match self {
            ParamValue::Exact(r) => Complex64::new(rational_to_f64(r), 0.0),
            ParamValue::Num(z) => *z,
        }
    }

    pub fn as_exact(&self) -> Result<BigRational> {
        match self {
            ParamValue::Exact(r) => Ok(r.clone()),
            ParamValue::Num(_) => Err(Error::Usage(
                "exact rational parameter required on this path".into(),
            )),
        }
    }

    /// True when the value is an integer <= 0 (a pole of 1/(c)_n).
    pub fn is_nonpositive_integer(&self) -> bool {
        match self {
            ParamValue::Exact(r) => r.is_integer() && !r.is_positive(),
            ParamValue::Num(z) => {
                z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
            }
        }
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Exact(r) => write!(f, "{r}"),
            ParamValue::Num(z) => write!(f, "{z}"),
        }
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse "p/q" or an integer string into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim())
            .map_err(|_| Error::Usage(format!("bad rational numerator in {s:?}")))?;
        let q = BigInt::from_str(q.trim())
            .map_err(|_| Error::Usage(format!("bad rational denominator in {s:?}")))?;
        if q.is_zero() {
            return Err(Error::Usage(format!("zero denominator in {s:?}")));
        }
        Ok(BigRational::new(p, q))
    } else {
        let p = BigInt::from_str(s).map_err(|_| {
            Error::Usage(format!(
                "expected an exact rational like \"4/3\" or \"2\", got {s:?}"
            ))
        })?;
        Ok(BigRational::from(p))
    }
}

/// The five E2 parameters (a, b, b', c, c') as exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSet {
    pub a: BigRational,
    pub b: BigRational,
    pub bp: BigRational,
    pub c: BigRational,
    pub cp: BigRational,
}

impl ParamSet {
    pub fn new(a: BigRational, b: BigRational, bp: BigRational, c: BigRational, cp: BigRational) -> Self {
        ParamSet { a, b, bp, c, cp }
    }

    /// The parameters of the special system: (4/3, 2/3, 2/3, 4/3, 4/3).
    pub fn special() -> Self {
        ParamSet::new(rat(4, 3), rat(2, 3), rat(2, 3), rat(4, 3), rat(4, 3))
    }
}
