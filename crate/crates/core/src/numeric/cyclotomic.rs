//! Exact arithmetic in the cyclotomic field Q(ζ_n).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(n)-1}, reduced modulo
//! the n-th cyclotomic polynomial Φ_n, so equal field elements of the same
//! order have identical coefficient vectors.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::rational::{format_rational, int, to_f64, Rational};
use crate::error::{Error, Result};

/// Per-order tables: Φ_n and the reductions of ζ^k for 0 ≤ k < n.
#[derive(Debug)]
struct FieldTables {
    /// Coefficients of Φ_n, low degree first; monic.
    phi_poly: Vec<i64>,
    /// `powers[k]` = ζ^k in the power basis.
    powers: Vec<Vec<i64>>,
}

impl FieldTables {
    fn degree(&self) -> usize {
        self.phi_poly.len() - 1
    }
}

fn tables(order: u32) -> Arc<FieldTables> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FieldTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&order) {
        return t.clone();
    }
    let t = Arc::new(build_tables(order));
    cache.lock().unwrap().insert(order, t.clone());
    t
}

/// Φ_n via x^n - 1 = Π_{d | n} Φ_d.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (dn..num.len()).rev() {
        let c = rem[i];
        if c != 0 {
            quot[i - dn] = c;
            for (j, &dj) in den.iter().enumerate() {
                rem[i - dn + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

fn build_tables(order: u32) -> FieldTables {
    let phi_poly = cyclotomic_polynomial(order);
    let deg = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(order as usize);
    let mut cur = vec![0i64; deg];
    cur[0] = 1;
    for _ in 0..order {
        powers.push(cur.clone());
        // multiply by x, reduce the overflow coefficient with Φ_n
        let top = cur[deg - 1];
        let mut next = vec![0i64; deg];
        next[1..deg].copy_from_slice(&cur[..(deg - 1)]);
        if top != 0 {
            for j in 0..deg {
                next[j] -= top * phi_poly[j];
            }
        }
        cur = next;
    }
    FieldTables { phi_poly, powers }
}

/// An exact element of Q(ζ_n), ζ_n = e^{2πi/n}.
#[derive(Clone, Debug, Eq)]
pub struct CyclotomicValue {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicValue {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "order must be positive");
        let deg = tables(order).degree();
        CyclotomicValue {
            order,
            coeffs: vec![Rational::zero(); deg],
        }
    }

    pub fn from_rational(order: u32, q: Rational) -> Self {
        let mut v = Self::zero(order);
        v.coeffs[0] = q;
        v
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rational(order, int(n))
    }

    /// ζ_n^k for any integer k.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let t = tables(order);
        let k = k.rem_euclid(order as i64) as usize;
        CyclotomicValue {
            order,
            coeffs: t.powers[k].iter().map(|&c| int(c)).collect(),
        }
    }

    /// Builds Σ c_k ζ^k from arbitrary (unreduced) exponents.
    pub fn from_exponents<I>(order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let t = tables(order);
        let mut coeffs = vec![Rational::zero(); t.degree()];
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            let k = k.rem_euclid(order as i64) as usize;
            for (slot, &p) in coeffs.iter_mut().zip(&t.powers[k]) {
                if p != 0 {
                    *slot += &c * int(p);
                }
            }
        }
        CyclotomicValue { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the element is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in Q(ζ_m); `m` must be a multiple of the order.
    pub fn lift(&self, m: u32) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(self.order) {
            return Err(Error::OrderMismatch(self.order, m));
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let step = (m / self.order) as i64;
        Ok(Self::from_exponents(
            m,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (k as i64 * step, c.clone())),
        ))
    }

    /// Image under the Galois automorphism ζ ↦ ζ^k, gcd(k, n) = 1.
    pub fn galois(&self, k: i64) -> Self {
        debug_assert_eq!(k.gcd(&(self.order as i64)), 1);
        Self::from_exponents(
            self.order,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| (j as i64 * k, c.clone())),
        )
    }

    /// Complex conjugation, ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// x + conj(x) = 0.
    pub fn is_purely_imaginary(&self) -> bool {
        self.checked_add(&self.conj()).unwrap().is_zero()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(CyclotomicValue {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Same-order product, canonically reduced.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        let t = tables(self.order);
        let deg = t.degree();
        let nz_a: Vec<_> = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let nz_b: Vec<_> = other.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if nz_a.is_empty() || nz_b.is_empty() {
            return Ok(Self::zero(self.order));
        }
        let mut prod = vec![Rational::zero(); 2 * deg - 1];
        for &(i, a) in &nz_a {
            for &(j, b) in &nz_b {
                prod[i + j] += a * b;
            }
        }
        for i in (deg..prod.len()).rev() {
            if prod[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut prod[i]);
            for j in 0..deg {
                let p = t.phi_poly[j];
                if p != 0 {
                    prod[i - deg + j] -= &c * int(p);
                }
            }
        }
        prod.truncate(deg);
        Ok(CyclotomicValue {
            order: self.order,
            coeffs: prod,
        })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CyclotomicValue {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse: the product of the nontrivial Galois
    /// conjugates divided by the (rational) norm.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.order, q.recip()));
        }
        let n = self.order as i64;
        let mut cofactor = Self::one(self.order);
        for k in 2..n {
            if k.gcd(&n) == 1 {
                cofactor = cofactor.checked_mul(&self.galois(k))?;
            }
        }
        let norm = self
            .checked_mul(&cofactor)?
            .as_rational()
            .expect("field norm is rational");
        Ok(cofactor.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inverse()?)
    }

    /// Field trace down to Q.
    pub fn trace(&self) -> Rational {
        let n = self.order as i64;
        (1..=n.max(1))
            .filter(|k| k.gcd(&n) == 1)
            .map(|k| self.galois(k).coeffs[0].clone())
            .fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Double-precision embedding ζ ↦ e^{2πi/n}.
    pub fn to_c64(&self) -> (f64, f64) {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold((0.0, 0.0), |(re, im), (k, c)| {
                let ang = std::f64::consts::TAU * k as f64 / n;
                let c = to_f64(c);
                (re + c * ang.cos(), im + c * ang.sin())
            })
    }

    /// Largest coefficient denominator; the element lies in Z[ζ][1/d].
    pub fn common_denominator(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl PartialEq for CyclotomicValue {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let m = lcm_order(self.order, other.order);
        self.lift(m).unwrap().coeffs == other.lift(m).unwrap().coeffs
    }
}

pub fn lcm_order(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

fn aligned(a: &CyclotomicValue, b: &CyclotomicValue) -> (CyclotomicValue, CyclotomicValue) {
    if a.order == b.order {
        (a.clone(), b.clone())
    } else {
        let m = lcm_order(a.order, b.order);
        (a.lift(m).unwrap(), b.lift(m).unwrap())
    }
}

/// Spec-level product: operands must already share an order.
pub fn cyclo_mul(a: &CyclotomicValue, b: &CyclotomicValue) -> Result<CyclotomicValue> {
    a.checked_mul(b)
}

pub fn cyclo_conj(a: &CyclotomicValue) -> CyclotomicValue {
    a.conj()
}

// Operator impls lift mixed orders to the lcm field.

impl Add for &CyclotomicValue {
    type Output = CyclotomicValue;
    fn add(self, rhs: Self) -> CyclotomicValue {
        if self.order == rhs.order {
            return self.checked_add(rhs).unwrap();
        }
        let (a, b) = aligned(self, rhs);
        a.checked_add(&b).unwrap()
    }
}

impl Sub for &CyclotomicValue {
    type Output = CyclotomicValue;
    fn sub(self, rhs: Self) -> CyclotomicValue {
        self + &(-rhs)
    }
}

impl Mul for &CyclotomicValue {
    type Output = CyclotomicValue;
    fn mul(self, rhs: Self) -> CyclotomicValue {
        if self.order == rhs.order {
            return self.checked_mul(rhs).unwrap();
        }
        let (a, b) = aligned(self, rhs);
        a.checked_mul(&b).unwrap()
    }
}

impl Neg for &CyclotomicValue {
    type Output = CyclotomicValue;
    fn neg(self) -> CyclotomicValue {
        CyclotomicValue {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CyclotomicValue {
            type Output = CyclotomicValue;
            fn $m(self, rhs: Self) -> CyclotomicValue {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CyclotomicValue {
    type Output = CyclotomicValue;
    fn neg(self) -> CyclotomicValue {
        -&self
    }
}

impl std::iter::Sum for CyclotomicValue {
    fn sum<I: Iterator<Item = Self>>(mut iter: I) -> Self {
        let first = iter.next().unwrap_or_else(|| Self::zero(1));
        iter.fold(first, |acc, x| &acc + &x)
    }
}

impl fmt::Display for CyclotomicValue {
    /// `c0 + c1*z^1 + …` with z = ζ_n; rationals print bare.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format_rational(c),
                _ if c.is_one() => format!("z{}^{}", self.order, k),
                _ => format!("{}*z{}^{}", format_rational(c), self.order, k),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Serialize for CyclotomicValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CyclotomicValue", 3)?;
        st.serialize_field("exact", &self.to_string())?;
        st.serialize_field("order", &self.order)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        st.serialize_field("coefficients", &coeffs)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::rat;

    fn z(n: u32, k: i64) -> CyclotomicValue {
        CyclotomicValue::zeta_pow(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn root_of_unity_identities() {
        assert_eq!(cyclo_mul(&z(3, 1), &z(3, 2)).unwrap(), CyclotomicValue::one(3));
        let a = &CyclotomicValue::one(5) + &z(5, 1);
        assert!(cyclo_mul(&a, &CyclotomicValue::zero(5)).unwrap().is_zero());
        let d = &z(3, 1) - &z(3, 2);
        assert_eq!(&d * &d, CyclotomicValue::from_int(3, -3));
        // Σ_{k<n} ζ^k = 0
        let s: CyclotomicValue = (0..7).map(|k| z(7, k)).sum();
        assert!(s.is_zero());
    }

    #[test]
    fn order_mismatch_is_an_error() {
        assert_eq!(
            cyclo_mul(&z(3, 1), &z(5, 1)),
            Err(Error::OrderMismatch(3, 5))
        );
        // operators lift to Q(ζ_15)
        let p = &z(3, 1) * &z(5, 1);
        assert_eq!(p, z(15, 5 + 3));
    }

    #[test]
    fn conjugation() {
        assert_eq!(cyclo_conj(&z(5, 1)), z(5, 4));
        let q = CyclotomicValue::from_rational(5, rat(7, 3));
        assert_eq!(q.conj(), q);
        let d = &z(3, 1) - &z(3, 2);
        assert_eq!(d.conj(), -&d);
        assert!(d.is_purely_imaginary());
        assert!(!d.is_real());
    }

    #[test]
    fn inverse_and_trace() {
        let d = &z(9, 1) - &z(9, 8);
        let inv = d.inverse().unwrap();
        assert_eq!(&d * &inv, CyclotomicValue::one(9));
        assert_eq!(CyclotomicValue::zero(4).inverse(), Err(Error::DivisionByZero));
        assert_eq!(z(5, 1).trace(), int(-1));
        assert_eq!(CyclotomicValue::from_int(7, 2).trace(), int(12));
    }

    #[test]
    fn lift_and_equality() {
        let a = z(4, 1);
        let b = a.lift(8).unwrap();
        assert_eq!(b, z(8, 2));
        assert_eq!(a, b);
        assert!(a.lift(6).is_err());
        assert_eq!(z(2, 1), CyclotomicValue::from_int(1, -1));
    }

    #[test]
    fn display() {
        assert_eq!(CyclotomicValue::from_rational(3, rat(-1, 9)).to_string(), "-1/9");
        assert_eq!(z(5, 2).to_string(), "z5^2");
        assert_eq!(CyclotomicValue::zero(5).to_string(), "0");
    }
}
