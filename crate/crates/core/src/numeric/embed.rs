//! Multi-precision complex embedding of cyclotomic values.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::Zero;

use super::cyclotomic::CyclotomicValue;
use super::rational::Rational;

const RM: RoundingMode = RoundingMode::ToEven;

/// Complex number with `precision` mantissa bits in each component.
#[derive(Clone, Debug)]
pub struct BigFloatComplex {
    pub re: BigFloat,
    pub im: BigFloat,
    pub precision: usize,
}

fn consts() -> Consts {
    Consts::new().expect("constant cache allocation")
}

pub fn rational_to_bigfloat(q: &Rational, p: usize) -> BigFloat {
    let mut cc = consts();
    let num = BigFloat::parse(&q.numer().to_string(), Radix::Dec, p, RM, &mut cc);
    let den = BigFloat::parse(&q.denom().to_string(), Radix::Dec, p, RM, &mut cc);
    num.div(&den, p, RM)
}

pub fn bigfloat_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let mut cc = consts();
    x.format(Radix::Dec, RM, &mut cc)
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .unwrap_or(f64::NAN)
}

/// Decimal scientific string with `digits` significant digits.
pub fn bigfloat_to_string(x: &BigFloat, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 8;
    let mut cc = consts();
    let mut y = x.clone();
    let _ = y.set_precision(bits.max(64), RM);
    let s = y.format(Radix::Dec, RM, &mut cc).unwrap_or_else(|_| "NaN".into());
    truncate_mantissa(&s, digits)
}

fn truncate_mantissa(s: &str, digits: usize) -> String {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    };
    let (sign, mant) = match mant.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mant),
    };
    // mantissa is d.ddddd; keep `digits` significant digits
    let mut out = String::new();
    let mut kept = 0;
    for ch in mant.chars() {
        if ch == '.' {
            out.push(ch);
            continue;
        }
        if kept == digits {
            break;
        }
        out.push(ch);
        kept += 1;
    }
    format!("{sign}{}{exp}", out.trim_end_matches('.'))
}

impl BigFloatComplex {
    pub fn zero(precision: usize) -> Self {
        BigFloatComplex {
            re: BigFloat::from_word(0, precision),
            im: BigFloat::from_word(0, precision),
            precision,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.precision.min(o.precision);
        BigFloatComplex {
            re: self.re.add(&o.re, p, RM),
            im: self.im.add(&o.im, p, RM),
            precision: p,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.precision.min(o.precision);
        BigFloatComplex {
            re: self.re.sub(&o.re, p, RM),
            im: self.im.sub(&o.im, p, RM),
            precision: p,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.precision.min(o.precision);
        let w = p + 16;
        let re = self.re.mul(&o.re, w, RM).sub(&self.im.mul(&o.im, w, RM), p, RM);
        let im = self.re.mul(&o.im, w, RM).add(&self.im.mul(&o.re, w, RM), p, RM);
        BigFloatComplex { re, im, precision: p }
    }

    pub fn conj(&self) -> Self {
        BigFloatComplex {
            re: self.re.clone(),
            im: self.im.neg(),
            precision: self.precision,
        }
    }

    /// max(|re|, |im|) as an f64 magnitude proxy.
    pub fn abs_max_f64(&self) -> f64 {
        bigfloat_to_f64(&self.re).abs().max(bigfloat_to_f64(&self.im).abs())
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (bigfloat_to_f64(&self.re), bigfloat_to_f64(&self.im))
    }
}

/// Embeds `a` via ζ_n ↦ e^{2πi/n} with `precision_bits` (≥ 53) of precision.
///
/// Intermediate sums carry extra guard bits sized to the coefficients so that
/// cancellation between terms does not eat into the requested precision.
pub fn cyclo_embed(a: &CyclotomicValue, precision_bits: usize) -> BigFloatComplex {
    let p = precision_bits.max(53);
    let coeff_bits = a
        .coefficients()
        .iter()
        .map(|c| c.numer().bits().max(c.denom().bits()) as usize)
        .max()
        .unwrap_or(0);
    let w = p + 64 + 2 * coeff_bits;
    let mut cc = consts();
    let two_pi = cc.pi(w, RM).mul(&BigFloat::from_word(2, w), w, RM);
    let n = BigFloat::from_u32(a.order(), w);
    let mut re = BigFloat::from_word(0, w);
    let mut im = BigFloat::from_word(0, w);
    for (k, c) in a.coefficients().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = rational_to_bigfloat(c, w);
        if k == 0 {
            re = re.add(&c, w, RM);
            continue;
        }
        let ang = two_pi.mul(&BigFloat::from_u64(k as u64, w), w, RM).div(&n, w, RM);
        re = re.add(&c.mul(&ang.cos(w, RM, &mut cc), w, RM), w, RM);
        im = im.add(&c.mul(&ang.sin(w, RM, &mut cc), w, RM), w, RM);
    }
    let _ = re.set_precision(p, RM);
    let _ = im.set_precision(p, RM);
    BigFloatComplex { re, im, precision: p }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::rat;

    #[test]
    fn embeds_simple_values() {
        let i = cyclo_embed(&CyclotomicValue::zeta_pow(4, 1), 64).to_c64();
        assert!(i.0.abs() < 1e-18 && (i.1 - 1.0).abs() < 1e-18);
        let h = cyclo_embed(&CyclotomicValue::from_rational(7, rat(1, 2)), 64).to_c64();
        assert_eq!(h, (0.5, 0.0));
        let d = &CyclotomicValue::zeta_pow(3, 1) - &CyclotomicValue::zeta_pow(3, 2);
        let v = cyclo_embed(&d, 128).to_c64();
        assert!(v.0.abs() < 1e-30);
        assert!((v.1 - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn fifty_digit_string() {
        let d = &CyclotomicValue::zeta_pow(3, 1) - &CyclotomicValue::zeta_pow(3, 2);
        let v = cyclo_embed(&d, 180);
        let s = bigfloat_to_string(&v.im, 50);
        assert!(s.starts_with("1.732050807568877293527446341505872366942805253810"), "{s}");
    }
}
