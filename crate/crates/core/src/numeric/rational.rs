//! Big-rational helpers. The value type itself is `num_rational::BigRational`,
//! which keeps numerator and denominator coprime with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// Canonical `p/q` string; integers are written with denominator 1 omitted.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Ratio of huge integers: scale down by shifting both parts.
        let n = q.numer();
        let d = q.denom();
        let shift = n.bits().max(d.bits()).saturating_sub(1000);
        let n = n >> shift;
        let d = d >> shift;
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

/// Prime divisors of |n| in increasing order (trial division).
pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let two = BigInt::from(2);
    if n.is_zero() {
        return out;
    }
    let mut p = two.clone();
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            out.push(p.clone());
            while n.is_multiple_of(&p) {
                n /= &p;
            }
        }
        p += if p == two { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u32) -> u32 {
    prime_divisors(&BigInt::from(n))
        .into_iter()
        .fold(n, |acc, p| {
            let p = p.to_u32().expect("prime of u32 fits");
            acc / p * (p - 1)
        })
}

pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-2/18").unwrap(), rat(-1, 9));
        assert_eq!(format_rational(&rat(-2, 18)), "-1/9");
        assert_eq!(format_rational(&int(4)), "4");
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn primes_and_phi() {
        let ps: Vec<_> = prime_divisors(&BigInt::from(360)).into_iter().collect();
        assert_eq!(ps, vec![BigInt::from(2), BigInt::from(3), BigInt::from(5)]);
        assert!(prime_divisors(&BigInt::from(1)).is_empty());
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(24), 8);
    }

    #[test]
    fn huge_to_f64() {
        let big = BigInt::from(3) << 2000u32;
        let q = BigRational::new(big.clone() + 1, big);
        assert!((to_f64(&q) - 1.0).abs() < 1e-12);
    }
}
