//! Exact rational arithmetic used by every enumerated quantity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

pub type Frac = BigRational;

/// `num / den` as an exact rational.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Frac {
    BigRational::new(num.into(), den.into())
}

pub fn int(n: impl Into<BigInt>) -> Frac {
    BigRational::from_integer(n.into())
}

pub fn zero() -> Frac {
    Frac::zero()
}

pub fn one() -> Frac {
    Frac::one()
}

pub fn pow(base: &Frac, exp: u32) -> Frac {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn to_f64(x: &Frac) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn factorial(q: usize) -> u64 {
    (1..=q as u64).product()
}

/// JSON form of an exact rational: `{"num": .., "den": .., "approx": ..}`.
/// Numerator and denominator are emitted as exact JSON integers of any size.
#[derive(Debug, Clone, PartialEq)]
pub struct FracJson(pub Frac);

impl Serialize for FracJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let num: serde_json::Number = self.0.numer().to_string().parse().map_err(serde::ser::Error::custom)?;
        let den: serde_json::Number = self.0.denom().to_string().parse().map_err(serde::ser::Error::custom)?;
        let mut st = s.serialize_struct("Frac", 3)?;
        st.serialize_field("num", &num)?;
        st.serialize_field("den", &den)?;
        st.serialize_field("approx", &to_f64(&self.0))?;
        st.end()
    }
}

impl From<Frac> for FracJson {
    fn from(f: Frac) -> Self {
        FracJson(f)
    }
}
