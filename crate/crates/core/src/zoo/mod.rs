//! Infinite example groups with canonical normal forms: cyclic groups,
//! direct products, lamplighters (⊕_Z Z/n) ⋊ Z, Γ = Q ⋊ (⊕_{i∈Z} Z) and the
//! HNN extension G of Γ along the index shift of ⊕_{i∈Z} Z.
//!
//! In Γ the basis vector e_i acts on Q by multiplication with p(|i|), where
//! p(0) = 2, p(1) = 3, p(2) = 5, … In G the stable letter satisfies
//! t·a·t⁻¹ = α(a) for a ∈ A = ⊕ Z, with α(e_i) = e_{i+1}.

mod ball;
mod hnn;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

pub use ball::{
    a_length, class_ball, class_ball_brute_force, class_ball_capped, class_intersect_integers, class_key, growth_classify, induce_rho_zoo,
    kernel_slice, kernel_slice_capped, ClassBall, GrowthReport, GrowthVerdict, DEFAULT_CAP, MAX_BALL_ELEMENTS,
};
pub use hnn::HnnElem;

use crate::error::{Error, Result};
use crate::numeric::rational::{format_rational, parse_rational, Rational};

/// The supported groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZooGroup {
    Cyclic(u64),
    Product(Box<ZooGroup>, Box<ZooGroup>),
    Lamplighter(u32),
    QSemidirect,
    HnnShift,
}

/// An element of Γ = Q ⋊ A: the pair (q, λ) with zero entries of λ omitted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QElem {
    pub q: Rational,
    pub lambda: BTreeMap<i64, i64>,
}

/// An element of a lamplighter: finitely many lit lamps and a shift.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LampElem {
    pub lamps: BTreeMap<i64, u32>,
    pub shift: i64,
}

/// A group element in canonical normal form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    Cyclic(u64),
    Pair(Box<GroupElement>, Box<GroupElement>),
    Lamp(LampElem),
    Q(QElem),
    Hnn(HnnElem),
}

/// One letter of an input word, with an integer power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    Identity,
    /// k-th power of the cyclic generator.
    Cyclic(i64),
    Lamp { pos: i64, power: i64 },
    Shift(i64),
    Q(Rational),
    E { index: i64, power: i64 },
    T(i64),
    Left(Box<Letter>),
    Right(Box<Letter>),
}

static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();

fn small_primes() -> &'static [u64] {
    PRIMES.get_or_init(|| {
        let limit = 40_000usize;
        let mut sieve = vec![true; limit];
        let mut out = Vec::new();
        for i in 2..limit {
            if sieve[i] {
                out.push(i as u64);
                (i * i..limit).step_by(i).for_each(|j| sieve[j] = false);
            }
        }
        out
    })
}

/// p(k): the k-th prime, 0-based, so p(0) = 2.
pub fn nth_prime(k: u64) -> u64 {
    let table = small_primes();
    if let Some(&p) = table.get(k as usize) {
        return p;
    }
    let mut count = table.len() as u64 - 1;
    let mut c = *table.last().unwrap();
    while count < k {
        c += 2;
        if table.iter().take_while(|&&p| p * p <= c).all(|&p| !c.is_multiple_of(p)) {
            count += 1;
        }
    }
    c
}

/// m(λ) = Π p(|i|)^{λ_i}.
pub fn multiplier(lambda: &BTreeMap<i64, i64>) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (&i, &v) in lambda {
        let p = BigInt::from(nth_prime(i.unsigned_abs()));
        let pk = num_traits::pow(p, v.unsigned_abs() as usize);
        if v > 0 {
            num *= pk;
        } else {
            den *= pk;
        }
    }
    Rational::new(num, den)
}

pub(crate) fn add_maps(a: &BTreeMap<i64, i64>, b: &BTreeMap<i64, i64>, sign: i64) -> BTreeMap<i64, i64> {
    let mut out = a.clone();
    for (&k, &v) in b {
        let e = out.entry(k).or_insert(0);
        *e += sign * v;
        if *e == 0 {
            out.remove(&k);
        }
    }
    out
}

pub(crate) fn shift_map(a: &BTreeMap<i64, i64>, by: i64) -> BTreeMap<i64, i64> {
    a.iter().map(|(&k, &v)| (k + by, v)).collect()
}

impl QElem {
    pub fn identity() -> Self {
        QElem {
            q: Rational::zero(),
            lambda: BTreeMap::new(),
        }
    }

    pub fn rational(q: Rational) -> Self {
        QElem {
            q,
            lambda: BTreeMap::new(),
        }
    }

    pub fn basis(index: i64, power: i64) -> Self {
        let mut lambda = BTreeMap::new();
        if power != 0 {
            lambda.insert(index, power);
        }
        QElem {
            q: Rational::zero(),
            lambda,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.q.is_zero() && self.lambda.is_empty()
    }

    /// True for elements of the normal subgroup Q.
    pub fn in_kernel(&self) -> bool {
        self.lambda.is_empty()
    }

    /// (q, λ)(q′, λ′) = (q + m(λ)q′, λ + λ′).
    pub fn mul(&self, other: &QElem) -> QElem {
        let q = if other.q.is_zero() {
            self.q.clone()
        } else {
            &self.q + multiplier(&self.lambda) * &other.q
        };
        QElem {
            q,
            lambda: add_maps(&self.lambda, &other.lambda, 1),
        }
    }

    pub fn inverse(&self) -> QElem {
        QElem {
            q: -&self.q / multiplier(&self.lambda),
            lambda: self.lambda.iter().map(|(&k, &v)| (k, -v)).collect(),
        }
    }

    fn tokens(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.q.is_zero() {
            out.push(format!("q:{}", format_rational(&self.q)));
        }
        out.extend(self.lambda.iter().map(|(&i, &v)| power_token(format!("e:{i}"), v)));
        out
    }
}

fn power_token(base: String, power: i64) -> String {
    if power == 1 {
        base
    } else {
        format!("{base}^{power}")
    }
}

impl LampElem {
    fn tokens(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .lamps
            .iter()
            .map(|(&k, &v)| power_token(format!("lamp:{k}"), v as i64))
            .collect();
        if self.shift != 0 {
            out.push(power_token("s".into(), self.shift));
        }
        out
    }
}

impl GroupElement {
    fn tokens(&self) -> Vec<String> {
        match self {
            GroupElement::Cyclic(0) => vec![],
            GroupElement::Cyclic(k) => vec![format!("c:{k}")],
            GroupElement::Pair(a, b) => a
                .tokens()
                .into_iter()
                .map(|t| format!("L.{t}"))
                .chain(b.tokens().into_iter().map(|t| format!("R.{t}")))
                .collect(),
            GroupElement::Lamp(l) => l.tokens(),
            GroupElement::Q(x) => x.tokens(),
            GroupElement::Hnn(w) => w.tokens(),
        }
    }

    /// The Q-coordinate if this element lies in Q ⊂ Γ (or Q ⊂ G).
    pub fn kernel_rational(&self) -> Option<&Rational> {
        match self {
            GroupElement::Q(x) if x.in_kernel() => Some(&x.q),
            GroupElement::Hnn(w) if w.tail.is_empty() && w.head.in_kernel() => Some(&w.head.q),
            _ => None,
        }
    }
}

/// Normal forms print as words that parse back to the same element.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.tokens();
        if t.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", t.join(" "))
        }
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for ZooGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZooGroup::Cyclic(n) => write!(f, "cyclic:{n}"),
            ZooGroup::Product(a, b) => write!(f, "product({a},{b})"),
            ZooGroup::Lamplighter(n) => write!(f, "lamplighter:{n}"),
            ZooGroup::QSemidirect => write!(f, "qsemidirect"),
            ZooGroup::HnnShift => write!(f, "hnn"),
        }
    }
}

impl Serialize for ZooGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn parse_int(s: &str, what: &str) -> Result<i64> {
    s.trim()
        .parse()
        .map_err(|_| Error::invalid(format!("bad {what} {s:?}")))
}

impl Letter {
    /// Parses one token such as `lamp:0`, `q:5/6`, `e:3^-1`, `t`, `T`, `s^2`,
    /// `c:4`, `g` or `L.g`.
    pub fn parse(token: &str) -> Result<Letter> {
        let token = token.trim();
        if let Some(rest) = token.strip_prefix("L.") {
            return Ok(Letter::Left(Box::new(Letter::parse(rest)?)));
        }
        if let Some(rest) = token.strip_prefix("R.") {
            return Ok(Letter::Right(Box::new(Letter::parse(rest)?)));
        }
        let (base, power) = match token.rsplit_once('^') {
            Some((b, p)) => (b, parse_int(p, "power")?),
            None => (token, 1),
        };
        let (kind, arg) = base.split_once(':').unwrap_or((base, ""));
        let letter = match (kind, arg) {
            ("1", "") => Letter::Identity,
            ("g", "") => Letter::Cyclic(power),
            ("c", k) => Letter::Cyclic(parse_int(k, "residue")?.checked_mul(power).ok_or_else(overflow)?),
            ("lamp", k) => Letter::Lamp {
                pos: parse_int(k, "lamp position")?,
                power,
            },
            ("s", "") => Letter::Shift(power),
            ("q", r) => Letter::Q(parse_rational(r)? * Rational::from_integer(power.into())),
            ("e", k) => Letter::E {
                index: parse_int(k, "basis index")?,
                power,
            },
            ("t", "") => Letter::T(power),
            ("T", "") => Letter::T(-power),
            _ => return Err(Error::invalid(format!("unknown letter {token:?}"))),
        };
        Ok(letter)
    }
}

fn overflow() -> Error {
    Error::invalid("letter power overflows")
}

/// Splits on whitespace and `*`.
pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
    s.split(|c: char| c.is_whitespace() || c == '*')
        .filter(|t| !t.is_empty())
        .map(Letter::parse)
        .collect()
}

impl ZooGroup {
    /// Parses `cyclic:N`, `lamplighter:N`, `qsemidirect` (or `gamma`), `hnn`
    /// and `product(A,B)`.
    pub fn parse(s: &str) -> Result<ZooGroup> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            let mut depth = 0;
            for (i, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => {
                        return Ok(ZooGroup::Product(
                            Box::new(ZooGroup::parse(&inner[..i])?),
                            Box::new(ZooGroup::parse(&inner[i + 1..])?),
                        ))
                    }
                    _ => {}
                }
            }
            return Err(Error::invalid(format!("product needs two factors: {s:?}")));
        }
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        let positive = |a: &str| -> Result<u64> {
            a.trim()
                .parse::<u64>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::invalid(format!("bad order in {s:?}")))
        };
        match kind {
            "cyclic" | "z" => Ok(ZooGroup::Cyclic(positive(arg)?)),
            "lamplighter" | "lamp" => {
                let n = positive(arg)?;
                if n < 2 || n > u32::MAX as u64 {
                    return Err(Error::invalid("lamplighter needs n ≥ 2"));
                }
                Ok(ZooGroup::Lamplighter(n as u32))
            }
            "qsemidirect" | "gamma" if arg.is_empty() => Ok(ZooGroup::QSemidirect),
            "hnn" if arg.is_empty() => Ok(ZooGroup::HnnShift),
            _ => Err(Error::invalid(format!("unknown group {s:?}"))),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            ZooGroup::Cyclic(_) => GroupElement::Cyclic(0),
            ZooGroup::Product(a, b) => GroupElement::Pair(Box::new(a.identity()), Box::new(b.identity())),
            ZooGroup::Lamplighter(_) => GroupElement::Lamp(LampElem {
                lamps: BTreeMap::new(),
                shift: 0,
            }),
            ZooGroup::QSemidirect => GroupElement::Q(QElem::identity()),
            ZooGroup::HnnShift => GroupElement::Hnn(HnnElem::identity()),
        }
    }

    /// Whether `x` is an element of this group.
    pub fn contains(&self, x: &GroupElement) -> bool {
        match (self, x) {
            (ZooGroup::Cyclic(n), GroupElement::Cyclic(k)) => k < n,
            (ZooGroup::Product(a, b), GroupElement::Pair(x, y)) => a.contains(x) && b.contains(y),
            (ZooGroup::Lamplighter(n), GroupElement::Lamp(l)) => l.lamps.values().all(|&v| v > 0 && v < *n),
            (ZooGroup::QSemidirect, GroupElement::Q(_)) | (ZooGroup::HnnShift, GroupElement::Hnn(_)) => true,
            _ => false,
        }
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("{x} is not an element of {self}")))
        }
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        match (self, x, y) {
            (ZooGroup::Cyclic(n), GroupElement::Cyclic(a), GroupElement::Cyclic(b)) => {
                GroupElement::Cyclic(((*a as u128 + *b as u128) % *n as u128) as u64)
            }
            (ZooGroup::Product(ga, gb), GroupElement::Pair(a1, b1), GroupElement::Pair(a2, b2)) => GroupElement::Pair(
                Box::new(ga.mul_unchecked(a1, a2)),
                Box::new(gb.mul_unchecked(b1, b2)),
            ),
            (ZooGroup::Lamplighter(n), GroupElement::Lamp(f), GroupElement::Lamp(g)) => {
                let mut lamps = f.lamps.clone();
                for (&k, &v) in &g.lamps {
                    let e = lamps.entry(k + f.shift).or_insert(0);
                    *e = (*e + v) % n;
                    if *e == 0 {
                        lamps.remove(&(k + f.shift));
                    }
                }
                GroupElement::Lamp(LampElem {
                    lamps,
                    shift: f.shift + g.shift,
                })
            }
            (ZooGroup::QSemidirect, GroupElement::Q(a), GroupElement::Q(b)) => GroupElement::Q(a.mul(b)),
            (ZooGroup::HnnShift, GroupElement::Hnn(a), GroupElement::Hnn(b)) => GroupElement::Hnn(a.mul(b)),
            _ => unreachable!("membership checked by caller"),
        }
    }

    pub fn inverse(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        Ok(self.inverse_unchecked(x))
    }

    pub(crate) fn inverse_unchecked(&self, x: &GroupElement) -> GroupElement {
        match (self, x) {
            (ZooGroup::Cyclic(n), GroupElement::Cyclic(a)) => GroupElement::Cyclic((n - a) % n),
            (ZooGroup::Product(ga, gb), GroupElement::Pair(a, b)) => {
                GroupElement::Pair(Box::new(ga.inverse_unchecked(a)), Box::new(gb.inverse_unchecked(b)))
            }
            (ZooGroup::Lamplighter(n), GroupElement::Lamp(f)) => GroupElement::Lamp(LampElem {
                lamps: f.lamps.iter().map(|(&k, &v)| (k - f.shift, n - v)).collect(),
                shift: -f.shift,
            }),
            (ZooGroup::QSemidirect, GroupElement::Q(a)) => GroupElement::Q(a.inverse()),
            (ZooGroup::HnnShift, GroupElement::Hnn(a)) => GroupElement::Hnn(a.inverse()),
            _ => unreachable!("membership checked by caller"),
        }
    }

    /// g·h·g⁻¹.
    pub fn conjugate(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.conjugate_unchecked(g, h))
    }

    pub(crate) fn conjugate_unchecked(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.mul_unchecked(&self.mul_unchecked(g, h), &self.inverse_unchecked(g))
    }

    pub fn pow(&self, x: &GroupElement, k: i64) -> Result<GroupElement> {
        let base = if k < 0 { self.inverse(x)? } else { x.clone() };
        self.check(&base)?;
        let mut acc = self.identity();
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_unchecked(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul_unchecked(&sq, &sq);
            }
        }
        Ok(acc)
    }

    /// The element denoted by a single letter.
    pub fn letter(&self, letter: &Letter) -> Result<GroupElement> {
        let mismatch = || Error::invalid(format!("letter {letter:?} does not belong to {self}"));
        match (self, letter) {
            (_, Letter::Identity) => Ok(self.identity()),
            (ZooGroup::Cyclic(n), Letter::Cyclic(k)) => Ok(GroupElement::Cyclic(k.rem_euclid(*n as i64) as u64)),
            (ZooGroup::Product(a, b), Letter::Left(l)) => {
                Ok(GroupElement::Pair(Box::new(a.letter(l)?), Box::new(b.identity())))
            }
            (ZooGroup::Product(a, b), Letter::Right(l)) => {
                Ok(GroupElement::Pair(Box::new(a.identity()), Box::new(b.letter(l)?)))
            }
            (ZooGroup::Lamplighter(n), Letter::Lamp { pos, power }) => {
                let v = power.rem_euclid(*n as i64) as u32;
                let lamps = if v == 0 { BTreeMap::new() } else { BTreeMap::from([(*pos, v)]) };
                Ok(GroupElement::Lamp(LampElem { lamps, shift: 0 }))
            }
            (ZooGroup::Lamplighter(_), Letter::Shift(k)) => Ok(GroupElement::Lamp(LampElem {
                lamps: BTreeMap::new(),
                shift: *k,
            })),
            (ZooGroup::QSemidirect, Letter::Q(q)) => Ok(GroupElement::Q(QElem::rational(q.clone()))),
            (ZooGroup::QSemidirect, Letter::E { index, power }) => Ok(GroupElement::Q(QElem::basis(*index, *power))),
            (ZooGroup::HnnShift, Letter::Q(q)) => Ok(GroupElement::Hnn(HnnElem::from_base(QElem::rational(q.clone())))),
            (ZooGroup::HnnShift, Letter::E { index, power }) => {
                Ok(GroupElement::Hnn(HnnElem::from_base(QElem::basis(*index, *power))))
            }
            (ZooGroup::HnnShift, Letter::T(k)) => Ok(GroupElement::Hnn(HnnElem::stable(*k))),
            _ => Err(mismatch()),
        }
    }

    /// Multiplies out a word and returns its normal form.
    pub fn normalize(&self, word: &[Letter]) -> Result<GroupElement> {
        word.iter().try_fold(self.identity(), |acc, l| {
            let x = self.letter(l)?;
            Ok(self.mul_unchecked(&acc, &x))
        })
    }

    /// Parses and normalizes a compact element string such as `q:5/6 e:0`.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        self.normalize(&parse_word(s)?)
    }

    /// The canonical generating set: {g} for cyclic groups, {lamp:0, s} for
    /// lamplighters, {q:1, e:0, t} for Γ and G, factor-wise for products.
    pub fn generators(&self) -> Vec<GroupElement> {
        let gen = |s: &str| self.parse_element(s).expect("canonical generator");
        match self {
            ZooGroup::Cyclic(_) => vec![gen("g")],
            ZooGroup::Product(a, b) => a
                .generators()
                .into_iter()
                .map(|x| GroupElement::Pair(Box::new(x), Box::new(b.identity())))
                .chain(
                    b.generators()
                        .into_iter()
                        .map(|y| GroupElement::Pair(Box::new(a.identity()), Box::new(y))),
                )
                .collect(),
            ZooGroup::Lamplighter(_) => vec![gen("lamp:0"), gen("s")],
            ZooGroup::QSemidirect => vec![gen("q:1"), gen("e:0")],
            ZooGroup::HnnShift => vec![gen("q:1"), gen("e:0"), gen("t")],
        }
    }

    /// Generators followed by their inverses, duplicates removed.
    pub fn symmetric_generators(&self) -> Vec<GroupElement> {
        let mut out = Vec::new();
        for g in self.generators() {
            for x in [g.clone(), self.inverse_unchecked(&g)] {
                if !out.contains(&x) && x != self.identity() {
                    out.push(x);
                }
            }
        }
        out
    }
}

/// True iff (q, 0) is conjugate to 1 ∈ Q, i.e. q > 0.
pub fn conjugate_of_one_test(x: &GroupElement) -> Result<bool> {
    x.kernel_rational()
        .map(|q| q.is_positive())
        .ok_or_else(|| Error::invalid(format!("{x} is not in the Q kernel; test not applicable")))
}
