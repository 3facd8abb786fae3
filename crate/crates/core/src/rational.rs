//! Exact rationals and their report renderings.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    BigRational::new(num.into(), den.into())
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    BigRational::from_integer(n.into())
}

/// Decimal rendering with `sig` significant digits, rounded half to even.
pub fn to_decimal(x: &Rational, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let a = x.abs();
    let (n, d) = (a.numer().clone(), a.denom().clone());
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e = n.to_string().len() as i64 - d.to_string().len() as i64;
    let ten = BigInt::from(10);
    let pow = |k: i64| -> BigInt { num_traits::pow(ten.clone(), k as usize) };
    let ge = |e: i64| -> bool {
        // a >= 10^e
        if e >= 0 { n >= &d * pow(e) } else { &n * pow(-e) >= d }
    };
    while !ge(e) {
        e -= 1;
    }
    while ge(e + 1) {
        e += 1;
    }
    // scaled = a * 10^(sig-1-e), rounded half-even to an integer
    let shift = sig as i64 - 1 - e;
    let (sn, sd) = if shift >= 0 { (&n * pow(shift), d.clone()) } else { (n.clone(), &d * pow(-shift)) };
    let (q, r) = sn.div_rem(&sd);
    let twice = &r * 2;
    let mut m = q;
    if twice > sd || (twice == sd && m.is_odd()) {
        m += 1;
    }
    let mut shift = shift;
    if m.to_string().len() > sig {
        // rounding carried into a new digit
        m /= 10;
        shift -= 1;
    }
    let digits = m.to_string();
    let mut s = if shift <= 0 {
        format!("{}{}", digits, "0".repeat((-shift) as usize))
    } else if (shift as usize) < digits.len() {
        let (i, f) = digits.split_at(digits.len() - shift as usize);
        format!("{i}.{f}")
    } else {
        format!("0.{}{}", "0".repeat(shift as usize - digits.len()), digits)
    };
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if neg {
        s.insert(0, '-');
    }
    s
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// A reported quantity: a rational, `+inf`, or vacuous (empty optimization).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Finite(Rational),
    Infinite,
    Vacuous,
}

impl Value {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Value::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Value::Finite(r) => r.is_positive(),
            Value::Infinite => true,
            Value::Vacuous => false,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Value::Finite(r) => to_decimal(r, 12),
            Value::Infinite => "inf".into(),
            Value::Vacuous => "vacuous".into(),
        }
    }
}

/// Serde wrapper writing a rational as `{"num": "..", "den": ".."}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &self.0.numer().to_string())?;
        st.serialize_field("den", &self.0.denom().to_string())?;
        st.end()
    }
}

#[derive(Deserialize)]
struct RawRational {
    num: String,
    den: String,
}

impl RawRational {
    fn into_rational<E: serde::de::Error>(self) -> Result<Rational, E> {
        let num: BigInt = self.num.parse().map_err(E::custom)?;
        let den: BigInt = self.den.parse().map_err(E::custom)?;
        if den.is_zero() {
            return Err(E::custom("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        RawRational::deserialize(d)?.into_rational().map(Exact)
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Finite(r) => Exact(r.clone()).serialize(s),
            Value::Infinite => s.serialize_str("inf"),
            Value::Vacuous => s.serialize_str("vacuous"),
        }
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Tag(String),
            Num(RawRational),
        }
        match Raw::deserialize(d)? {
            Raw::Tag(t) if t == "inf" => Ok(Value::Infinite),
            Raw::Tag(t) if t == "vacuous" => Ok(Value::Vacuous),
            Raw::Tag(t) => Err(serde::de::Error::custom(format!("unknown value tag {t:?}"))),
            Raw::Num(r) => r.into_rational().map(Value::Finite),
        }
    }
}

/// `serialize_with` helper for plain rational fields.
pub fn serialize_rational<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    Exact(x.clone()).serialize(s)
}

pub fn serialize_opt_rational<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    x.clone().map(Exact).serialize(s)
}

/// Exact comparison `x <= n^(a/b)` for non-negative rational `x` and integer `n`.
pub fn le_rational_power(x: &Rational, n: u64, a: u32, b: u32) -> bool {
    if x.is_negative() {
        return true;
    }
    // x^b <= n^a   with x = p/q:  p^b <= n^a q^b
    let p = x.numer().to_biguint().unwrap();
    let q = x.denom().to_biguint().unwrap();
    num_traits::pow(p, b as usize) <= num_traits::pow(BigUint::from(n), a as usize) * num_traits::pow(q, b as usize)
}

/// Exact comparison `x < n^(a/b)`.
pub fn lt_rational_power(x: &Rational, n: u64, a: u32, b: u32) -> bool {
    if x.is_negative() {
        return true;
    }
    let p = x.numer().to_biguint().unwrap();
    let q = x.denom().to_biguint().unwrap();
    num_traits::pow(p, b as usize) < num_traits::pow(BigUint::from(n), a as usize) * num_traits::pow(q, b as usize)
}

/// A positive exponent written as a fraction `num/den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exponent {
    pub num: u32,
    pub den: u32,
}

impl Exponent {
    pub const fn new(num: u32, den: u32) -> Self {
        Exponent { num, den }
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Parses a decimal string such as `2.75` exactly.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let (i, f) = s.split_once('.').unwrap_or((s, ""));
        if i.is_empty() && f.is_empty() {
            return None;
        }
        let den = 10u32.checked_pow(f.len() as u32)?;
        let i: u32 = if i.is_empty() { 0 } else { i.parse().ok()? };
        let f: u32 = if f.is_empty() { 0 } else { f.parse().ok()? };
        let num = i.checked_mul(den)?.checked_add(f)?;
        let g = num.gcd(&den).max(1);
        Some(Exponent { num: num / g, den: den / g })
    }
}

pub fn one() -> Rational {
    Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&ratio(1, 6), 12), "0.166666666667");
        assert_eq!(to_decimal(&ratio(7, 3), 12), "2.33333333333");
        assert_eq!(to_decimal(&int(105), 12), "105");
        assert_eq!(to_decimal(&ratio(-1, 8), 12), "-0.125");
        assert_eq!(to_decimal(&ratio(1, 1000), 3), "0.001");
        // half-even: 0.125 at 2 digits -> 0.12, 0.375 -> 0.38
        assert_eq!(to_decimal(&ratio(1, 8), 2), "0.12");
        assert_eq!(to_decimal(&ratio(3, 8), 2), "0.38");
        assert_eq!(to_decimal(&ratio(999999, 1000000), 3), "1");
        assert_eq!(to_decimal(&int(123456), 3), "123000");
    }

    #[test]
    fn value_json_round_trip() {
        for v in [Value::Finite(ratio(-5, 12)), Value::Infinite, Value::Vacuous] {
            let s = serde_json::to_string(&v).unwrap();
            let back: Value = serde_json::from_str(&s).unwrap();
            assert_eq!(back, v);
        }
        assert_eq!(serde_json::to_string(&Value::Finite(ratio(2, 4))).unwrap(), r#"{"num":"1","den":"2"}"#);
    }

    #[test]
    fn exact_powers() {
        let e = Exponent::parse("0.9").unwrap();
        assert_eq!(e, Exponent::new(9, 10));
        assert_eq!(Exponent::parse("2.75").unwrap(), Exponent::new(11, 4));
        assert_eq!(Exponent::parse("4.55").unwrap(), Exponent::new(91, 20));
        // 2^0.9 = 1.866...
        assert!(le_rational_power(&ratio(186, 100), 2, 9, 10));
        assert!(!le_rational_power(&ratio(187, 100), 2, 9, 10));
        assert!(le_rational_power(&int(4), 4, 1, 1));
        assert!(!lt_rational_power(&int(4), 4, 1, 1));
    }
}
