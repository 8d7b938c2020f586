//! Delocalized eta terms of the Dirac operator D = −i d/dx on the
//! Z-covering R → S¹, with fundamental domain [0, 1].
//!
//! The kernel of D·e^{−tD²} on R is i(x−y)/(2t√(4πt))·e^{−(x−y)²/4t}. Pairing
//! the deck translation by n against the kernel and integrating
//! (1/√π)∫₀^∞ ∫₀¹ … dx dt/√t gives i/(πn), so η over a subset X ⊂ N is
//! (i/π)·Σ_{n∈X} 1/n whenever that sum converges.

mod family;
pub mod quadrature;

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

pub use family::{Certificate, SubsetFamily};

use crate::error::{Error, Result};
use crate::numeric::rational::{format_rational, rat, to_f64, Rational};
use quadrature::{integrate, integrate_to_infinity, Integral};

/// Tolerances and regime split for the heat-kernel quadrature.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Boundary between the small-t and large-t pieces of the t-integral.
    pub t_split: f64,
    pub max_subdivisions: usize,
    pub precision_bits: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            t_split: 1.0,
            max_subdivisions: 2000,
            precision_bits: 53,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::invalid("tolerances must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::invalid("max_subdivisions must be at least 1"));
        }
        if self.t_split.is_nan() || self.t_split <= 0.0 {
            return Err(Error::invalid("t_split must be positive"));
        }
        if self.precision_bits < 53 {
            return Err(Error::invalid("precision_bits must be at least 53"));
        }
        Ok(())
    }
}

/// coeff · π^pi_power · i^i_power with a rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiMonomial {
    pub coeff: Rational,
    pub pi_power: i32,
    pub i_power: u8,
}

impl PiMonomial {
    /// coeff · i/π, the shape of every circle eta value.
    pub fn i_over_pi(coeff: Rational) -> Self {
        PiMonomial {
            coeff,
            pi_power: -1,
            i_power: 1,
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        let mag = to_f64(&self.coeff) * PI.powi(self.pi_power);
        match self.i_power % 4 {
            0 => Complex64::new(mag, 0.0),
            1 => Complex64::new(0.0, mag),
            2 => Complex64::new(-mag, 0.0),
            _ => Complex64::new(0.0, -mag),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let coeff = &self.coeff * q;
        if coeff.is_zero() {
            return PiMonomial {
                coeff,
                pi_power: 0,
                i_power: 0,
            };
        }
        PiMonomial { coeff, ..self.clone() }
    }
}

impl Serialize for PiMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PiMonomial", 4)?;
        st.serialize_field("exact", &self.to_string())?;
        st.serialize_field("rational_coeff", &format_rational(&self.coeff))?;
        st.serialize_field("pi_power", &self.pi_power)?;
        st.serialize_field("i_power", &self.i_power)?;
        st.end()
    }
}

impl std::fmt::Display for PiMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "0");
        }
        let mut s = format!("({})", format_rational(&self.coeff));
        if !self.i_power.is_multiple_of(4) {
            s.push_str(&format!("*I^{}", self.i_power % 4));
        }
        match self.pi_power {
            0 => {}
            1 => s.push_str("*pi"),
            -1 => s.push_str("/pi"),
            p if p > 0 => s.push_str(&format!("*pi^{p}")),
            p => s.push_str(&format!("/pi^{}", -p)),
        }
        write!(f, "{s}")
    }
}

/// Kernel of D·exp(−tD²) on R at (x, y).
pub fn kernel_value(x: f64, y: f64, t: f64) -> Result<Complex64> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::invalid(format!("kernel needs t > 0, got {t}")));
    }
    let d = x - y;
    let im = d / (2.0 * t * (4.0 * PI * t).sqrt()) * (-d * d / (4.0 * t)).exp();
    Ok(Complex64::new(0.0, im))
}

/// Exact value of a single term, i/(πn).
pub fn eta_term_exact(n: u64) -> PiMonomial {
    PiMonomial::i_over_pi(rat(1, n as i64))
}

/// A numerically integrated term.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EtaTerm {
    pub n: i64,
    pub re: f64,
    pub im: f64,
    pub error: f64,
}

impl EtaTerm {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Order of the iterated integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegrationOrder {
    /// Outer t, inner x.
    TimeOuter,
    /// Outer x, inner t.
    SpaceOuter,
}

/// (1/√π)·k(x+n, x, t)/√t, the integrand of the n-th term. The deck
/// translation acts on the first kernel argument.
fn term_integrand(n: f64, x: f64, t: f64) -> f64 {
    kernel_value(x + n, x, t).map(|k| k.im / (PI * t).sqrt()).unwrap_or(0.0)
}

/// ∫₀^∞ g(t) dt for the integrand above, in the variable s = n²/(4t),
/// split at s = n²/(4·t_split).
fn time_integral(n: f64, x: f64, cfg: &QuadratureConfig) -> Result<Integral> {
    let in_s = |s: f64| {
        if s <= 0.0 {
            return 0.0;
        }
        let t = n * n / (4.0 * s);
        term_integrand(n, x, t) * n * n / (4.0 * s * s)
    };
    let s_split = n * n / (4.0 * cfg.t_split);
    // large-t piece: s ∈ (0, s_split]
    let head = integrate(in_s, 0.0, s_split, cfg.abs_tol / 2.0, cfg.rel_tol, cfg.max_subdivisions)?;
    // small-t piece: s ∈ [s_split, ∞)
    let tail = integrate_to_infinity(in_s, s_split, cfg.abs_tol / 2.0, cfg.rel_tol, cfg.max_subdivisions)?;
    Ok(Integral {
        value: head.value + tail.value,
        error: head.error + tail.error,
        subdivisions: head.subdivisions + tail.subdivisions,
    })
}

/// Full quadrature of the term for deck element n ≠ 0 in the given order.
pub fn eta_term_ordered(n: i64, cfg: &QuadratureConfig, order: IntegrationOrder) -> Result<EtaTerm> {
    if n == 0 {
        return Err(Error::invalid("deck element must be nonzero"));
    }
    cfg.validate()?;
    let nf = n as f64;
    let failure = std::cell::Cell::new(None::<Error>);
    let record = |e: Error| {
        failure.set(Some(e));
        f64::NAN
    };
    let (value, error) = match order {
        IntegrationOrder::TimeOuter => {
            // the x-integral over [0, 1] is taken inside, at each t
            let in_s = |s: f64| {
                if s <= 0.0 {
                    return 0.0;
                }
                let t = nf * nf / (4.0 * s);
                let jac = nf * nf / (4.0 * s * s);
                match integrate(|x| term_integrand(nf, x, t), 0.0, 1.0, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions) {
                    Ok(r) => r.value * jac,
                    Err(e) => record(e),
                }
            };
            let s_split = nf * nf / (4.0 * cfg.t_split);
            let head = integrate(in_s, 0.0, s_split, cfg.abs_tol / 2.0, cfg.rel_tol, cfg.max_subdivisions)?;
            let tail = integrate_to_infinity(in_s, s_split, cfg.abs_tol / 2.0, cfg.rel_tol, cfg.max_subdivisions)?;
            (head.value + tail.value, head.error + tail.error)
        }
        IntegrationOrder::SpaceOuter => {
            let r = integrate(
                |x| match time_integral(nf, x, cfg) {
                    Ok(r) => r.value,
                    Err(e) => record(e),
                },
                0.0,
                1.0,
                cfg.abs_tol,
                cfg.rel_tol,
                cfg.max_subdivisions,
            )?;
            (r.value, r.error)
        }
    };
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(EtaTerm {
        n,
        re: 0.0,
        im: value,
        error,
    })
}

/// Full quadrature, t outermost.
pub fn eta_term(n: i64, cfg: &QuadratureConfig) -> Result<EtaTerm> {
    eta_term_ordered(n, cfg, IntegrationOrder::TimeOuter)
}

/// How per-term values are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TermMode {
    ClosedForm,
    Audit,
}

/// Convergence verdict for η over a subset family.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Convergent {
        /// Exact value when known.
        exact: Option<PiMonomial>,
        re: f64,
        im: f64,
        certificate: String,
    },
    Divergent {
        certificate: String,
    },
    Unknown {
        note: String,
    },
}

impl Verdict {
    fn convergent_exact(v: PiMonomial, certificate: String) -> Self {
        let c = v.to_c64();
        Verdict::Convergent {
            exact: Some(v),
            re: c.re,
            im: c.im,
            certificate,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, Verdict::Divergent { .. })
    }

    pub fn is_convergent(&self) -> bool {
        matches!(self, Verdict::Convergent { .. })
    }
}

/// One checkpoint of the running sum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartialSum {
    pub terms_used: usize,
    pub re: f64,
    pub im: f64,
    /// Exact (i/π)·Σ1/n while the harmonic-type coefficient stays small.
    pub exact: Option<PiMonomial>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EtaReport {
    pub verdict: Verdict,
    pub mode: TermMode,
    pub terms_used: usize,
    pub partial_sums: Vec<PartialSum>,
    pub per_term_errors: Vec<f64>,
}

impl EtaReport {
    pub fn final_sum(&self) -> Option<&PartialSum> {
        self.partial_sums.last()
    }
}

/// Exact partial sums are carried up to this many terms.
pub const EXACT_TERM_LIMIT: usize = 2000;

fn is_checkpoint(m: usize) -> bool {
    if m <= 10 {
        return true;
    }
    let mut p = 1;
    while p * 10 <= m {
        p *= 10;
    }
    m.is_multiple_of(p)
}

/// Partial sums of η over the first `max_terms` elements of X.
pub fn eta_partial(
    family: &SubsetFamily,
    max_terms: usize,
    cfg: &QuadratureConfig,
    mode: TermMode,
) -> Result<EtaReport> {
    if max_terms == 0 {
        return Err(Error::invalid("max_terms must be ≥ 1"));
    }
    cfg.validate()?;
    let elements: Vec<u64> = family.elements().take(max_terms).collect();
    if elements.first() == Some(&0) || elements.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(format!("{family} does not list increasing positive integers")));
    }
    let terms: Vec<EtaTerm> = match mode {
        TermMode::ClosedForm => elements
            .iter()
            .map(|&n| EtaTerm {
                n: n as i64,
                re: 0.0,
                im: 1.0 / (PI * n as f64),
                error: 0.0,
            })
            .collect(),
        TermMode::Audit => elements
            .par_iter()
            .map(|&n| eta_term(n as i64, cfg))
            .collect::<Result<Vec<_>>>()?,
    };
    let mut partial_sums = Vec::new();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut exact = Some(Rational::zero());
    // Kahan-compensated imaginary part
    let mut comp = 0.0;
    for (i, term) in terms.iter().enumerate() {
        let y = term.im - comp;
        let s = acc.im + y;
        comp = (s - acc.im) - y;
        acc = Complex64::new(acc.re + term.re, s);
        if i + 1 > EXACT_TERM_LIMIT {
            exact = None;
        }
        if let Some(e) = exact.as_mut() {
            *e += rat(1, term.n);
        }
        let m = i + 1;
        if is_checkpoint(m) || m == terms.len() {
            partial_sums.push(PartialSum {
                terms_used: m,
                re: acc.re,
                im: acc.im,
                exact: exact
                    .as_ref()
                    .filter(|_| mode == TermMode::ClosedForm)
                    .map(|c| PiMonomial::i_over_pi(c.clone())),
            });
        }
    }
    if terms.is_empty() {
        partial_sums.push(PartialSum {
            terms_used: 0,
            re: 0.0,
            im: 0.0,
            exact: Some(PiMonomial::i_over_pi(Rational::zero())),
        });
    }
    Ok(EtaReport {
        verdict: classify_convergence(family),
        mode,
        terms_used: terms.len(),
        partial_sums,
        per_term_errors: terms.iter().map(|t| t.error).collect(),
    })
}

/// Symbolic convergence decision; partial sums never decide divergence.
pub fn classify_convergence(family: &SubsetFamily) -> Verdict {
    match family {
        SubsetFamily::Finite(xs) => {
            let coeff = xs.iter().fold(Rational::zero(), |acc, &n| acc + rat(1, n as i64));
            Verdict::convergent_exact(
                PiMonomial::i_over_pi(coeff),
                format!("finite set of {} elements: closed-form sum", xs.len()),
            )
        }
        SubsetFamily::ArithmeticProgression { a, d } => Verdict::Divergent {
            certificate: format!(
                "harmonic comparison: 1/({a}+{d}k) ≥ 1/({}(k+1)) for k ≥ 0, and Σ1/(k+1) diverges",
                a + d
            ),
        },
        SubsetFamily::IndexGeometric { base } => {
            let b = *base as i64;
            Verdict::convergent_exact(
                PiMonomial::i_over_pi(rat(b, b - 1)),
                format!("ratio test: consecutive terms have ratio 1/{base} < 1; Σ {base}^(-k) = {b}/{}", b - 1),
            )
        }
        SubsetFamily::Primes => Verdict::Divergent {
            certificate: "Euler: Σ_p 1/p ≥ ln ln N − 1 for N ≥ 3, unbounded".into(),
        },
        SubsetFamily::Custom { certificate, name, .. } => match certificate {
            Some(Certificate::Convergent { reason, value }) => match value {
                Some(v) => Verdict::convergent_exact(v.clone(), reason.clone()),
                None => Verdict::Convergent {
                    exact: None,
                    re: f64::NAN,
                    im: f64::NAN,
                    certificate: reason.clone(),
                },
            },
            Some(Certificate::Divergent { reason }) => Verdict::Divergent {
                certificate: reason.clone(),
            },
            None => Verdict::Unknown {
                note: format!("custom family {name:?} carries no certificate; see partial sums"),
            },
        },
    }
}

/// Multiplies a circle value by Â(M) for the product M^{4k} × S¹.
pub fn product_with_ahat(value: &PiMonomial, ahat: &Rational) -> PiMonomial {
    value.scale(ahat)
}

/// Same scaling applied to a verdict.
pub fn verdict_with_ahat(verdict: &Verdict, ahat: &Rational) -> Verdict {
    if ahat.is_zero() {
        return Verdict::convergent_exact(
            PiMonomial::i_over_pi(Rational::zero()).scale(ahat),
            "Â(M) = 0 kills every term".into(),
        );
    }
    match verdict {
        Verdict::Convergent { exact, re, im, certificate } => {
            let f = to_f64(ahat);
            Verdict::Convergent {
                exact: exact.as_ref().map(|v| v.scale(ahat)),
                re: re * f,
                im: im * f,
                certificate: format!("{certificate}; scaled by Â = {}", format_rational(ahat)),
            }
        }
        Verdict::Divergent { certificate } => Verdict::Divergent {
            certificate: format!("{certificate}; nonzero Â = {} preserves divergence", format_rational(ahat)),
        },
        Verdict::Unknown { note } => Verdict::Unknown { note: note.clone() },
    }
}

/// The Basel-type certificate for the squares family.
pub fn squares_certificate() -> Certificate {
    Certificate::Convergent {
        reason: "comparison with Σ1/n² = π²/6".into(),
        value: Some(PiMonomial {
            coeff: rat(1, 6),
            pi_power: 1,
            i_power: 1,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn kernel_properties() {
        assert_eq!(kernel_value(0.3, 0.3, 0.5).unwrap(), Complex64::new(0.0, 0.0));
        let a = kernel_value(1.7, 0.2, 0.3).unwrap();
        let b = kernel_value(0.2, 1.7, 0.3).unwrap();
        assert_eq!(a, -b);
        assert!(kernel_value(0.0, 1.0, 0.0).is_err());
        assert!(kernel_value(0.0, 1.0, -1.0).is_err());
        // x − y = 1, t = 1/4: i·1/((1/2)·√π)·e^{-1}
        let k = kernel_value(1.0, 0.0, 0.25).unwrap();
        let expected = 2.0 / PI.sqrt() * (-1.0f64).exp();
        assert!((k.im - expected).abs() < 1e-15 * expected);
        assert_eq!(k.re, 0.0);
    }

    #[test]
    fn kernel_matches_derivative_of_heat_kernel() {
        // −i ∂_x of (4πt)^{-1/2} e^{−(x−y)²/4t}, central differences
        let heat = |x: f64, y: f64, t: f64| (-(x - y).powi(2) / (4.0 * t)).exp() / (4.0 * PI * t).sqrt();
        for &(x, y, t) in &[(0.3, -0.4, 0.7), (2.0, 0.5, 1.3), (-1.0, 0.2, 0.2)] {
            let h = 1e-5;
            let d = (heat(x + h, y, t) - heat(x - h, y, t)) / (2.0 * h);
            let k = kernel_value(x, y, t).unwrap();
            assert!((k.im - (-d)).abs() < 1e-8, "{x} {y} {t}");
        }
    }

    #[test]
    fn terms_match_closed_form() {
        for n in [1i64, 2, 10] {
            let t = eta_term(n, &cfg()).unwrap();
            let exact = 1.0 / (PI * n as f64);
            assert!((t.im - exact).abs() < 1e-9, "n={n}: {}", t.im);
            assert!(t.re.abs() < cfg().abs_tol);
        }
        assert!(eta_term(0, &cfg()).is_err());
        let neg = eta_term(-3, &cfg()).unwrap();
        assert!((neg.im + eta_term(3, &cfg()).unwrap().im).abs() < 1e-12);
    }

    #[test]
    fn fubini_swap() {
        for n in [1i64, 3] {
            let a = eta_term_ordered(n, &cfg(), IntegrationOrder::TimeOuter).unwrap();
            let b = eta_term_ordered(n, &cfg(), IntegrationOrder::SpaceOuter).unwrap();
            assert!((a.im - b.im).abs() < 1e-11, "{} vs {}", a.im, b.im);
        }
    }

    #[test]
    fn finite_sums() {
        let r = eta_partial(&SubsetFamily::finite(vec![1, 2, 3]).unwrap(), 10, &cfg(), TermMode::ClosedForm).unwrap();
        let last = r.final_sum().unwrap();
        assert_eq!(last.exact, Some(PiMonomial::i_over_pi(rat(11, 6))));
        assert!((last.im - 11.0 / (6.0 * PI)).abs() < 1e-15);
        let e = eta_partial(&SubsetFamily::finite(vec![]).unwrap(), 5, &cfg(), TermMode::ClosedForm).unwrap();
        assert_eq!(e.terms_used, 0);
        assert_eq!(e.final_sum().unwrap().im, 0.0);
        assert!(eta_partial(&SubsetFamily::Primes, 0, &cfg(), TermMode::ClosedForm).is_err());
    }

    #[test]
    fn geometric_limit() {
        let fam = SubsetFamily::IndexGeometric { base: 2 };
        match classify_convergence(&fam) {
            Verdict::Convergent { exact, .. } => {
                assert_eq!(exact, Some(PiMonomial::i_over_pi(rat(2, 1))));
            }
            v => panic!("{v:?}"),
        }
        let r = eta_partial(&fam, 40, &cfg(), TermMode::ClosedForm).unwrap();
        assert!((r.final_sum().unwrap().im - 2.0 / PI).abs() < 1e-11);
    }

    #[test]
    fn verdicts() {
        assert!(classify_convergence(&SubsetFamily::ArithmeticProgression { a: 1, d: 1 }).is_divergent());
        assert!(classify_convergence(&SubsetFamily::Primes).is_divergent());
        match classify_convergence(&SubsetFamily::finite(vec![7]).unwrap()) {
            Verdict::Convergent { exact, .. } => assert_eq!(exact, Some(PiMonomial::i_over_pi(rat(1, 7)))),
            v => panic!("{v:?}"),
        }
        let sq = SubsetFamily::squares();
        assert!(matches!(classify_convergence(&sq), Verdict::Unknown { .. }));
        let sq = sq.with_certificate(squares_certificate());
        assert!(classify_convergence(&sq).is_convergent());
    }

    #[test]
    fn divergence_witness() {
        let r = eta_partial(&SubsetFamily::ArithmeticProgression { a: 1, d: 1 }, 1000, &cfg(), TermMode::ClosedForm).unwrap();
        for ps in &r.partial_sums {
            if [100, 1000].contains(&ps.terms_used) {
                assert!(ps.im > 0.9 / PI * (ps.terms_used as f64).ln());
            }
        }
        // sums are monotone for a single-sign family
        assert!(r.partial_sums.windows(2).all(|w| w[1].im >= w[0].im));
    }

    #[test]
    fn ahat_scaling() {
        let v = PiMonomial::i_over_pi(rat(1, 1));
        assert_eq!(product_with_ahat(&v, &rat(2, 1)), PiMonomial::i_over_pi(rat(2, 1)));
        assert!(product_with_ahat(&v, &rat(0, 1)).coeff.is_zero());
        let d = classify_convergence(&SubsetFamily::Primes);
        assert!(verdict_with_ahat(&d, &rat(3, 1)).is_divergent());
        assert!(verdict_with_ahat(&d, &rat(0, 1)).is_convergent());
    }

    #[test]
    fn monomial_display() {
        assert_eq!(PiMonomial::i_over_pi(rat(11, 6)).to_string(), "(11/6)*I^1/pi");
        let c = PiMonomial::i_over_pi(rat(11, 6)).to_c64();
        assert!((c.im - 11.0 / (6.0 * PI)).abs() < 1e-15);
    }
}
