//! Conjugacy-class balls {w·h·w⁻¹ : |w| ≤ r}, growth estimates and class keys.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{GroupElement, HnnElem, LampElem, QElem, ZooGroup};
use crate::chars::RhoVector;
use crate::error::{Error, Result};
use crate::numeric::rational::Rational;
use crate::numeric::CyclotomicValue;

/// Largest radius accepted unless a caller raises it explicitly.
pub const DEFAULT_CAP: usize = 12;

/// Breadth-first enumeration stops with an error beyond this many states.
pub const MAX_BALL_ELEMENTS: usize = 2_000_000;

/// Class elements reached with conjugators of length ≤ `radius`, each with
/// the length of its shortest conjugator.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassBall {
    pub group: ZooGroup,
    pub center: GroupElement,
    pub radius: usize,
    pub elements: BTreeMap<GroupElement, usize>,
}

#[derive(Serialize)]
struct BallEntry<'a> {
    element: &'a GroupElement,
    word_length: usize,
}

impl Serialize for ClassBall {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ClassBall", 5)?;
        st.serialize_field("group", &self.group)?;
        st.serialize_field("center", &self.center)?;
        st.serialize_field("radius", &self.radius)?;
        st.serialize_field("counts", &self.counts())?;
        st.serialize_field("elements", &self.entries().iter().map(|(e, l)| BallEntry { element: e, word_length: *l }).collect::<Vec<_>>())?;
        st.end()
    }
}

impl ClassBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.elements.contains_key(x)
    }

    /// Cumulative sizes |ball(r)| for r = 0..=radius.
    pub fn counts(&self) -> Vec<usize> {
        let mut per = vec![0usize; self.radius + 1];
        for &l in self.elements.values() {
            per[l] += 1;
        }
        per.iter()
            .scan(0, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect()
    }

    /// Entries ordered by word length, then by normal form.
    pub fn entries(&self) -> Vec<(&GroupElement, usize)> {
        let mut v: Vec<_> = self.elements.iter().map(|(e, &l)| (e, l)).collect();
        v.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(b.0)));
        v
    }

    /// `normal_form<TAB>word_length` lines with a header.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("normal_form\tword_length\n");
        for (e, l) in self.entries() {
            out.push_str(&format!("{e}\t{l}\n"));
        }
        out
    }
}

/// Breadth-first closure from `start`; `expand(state, level)` lists the
/// neighbours of a state first reached at `level`. Frontiers are expanded in
/// parallel and merged in frontier order, so the result is deterministic.
fn bfs<S, F>(start: S, radius: usize, expand: F) -> Result<BTreeMap<S, usize>>
where
    S: Clone + Ord + Send + Sync,
    F: Fn(&S, usize) -> Vec<S> + Sync,
{
    let mut seen = BTreeMap::from([(start.clone(), 0usize)]);
    let mut frontier = vec![start];
    for level in 0..radius {
        let next: Vec<Vec<S>> = frontier.par_iter().map(|s| expand(s, level)).collect();
        frontier = Vec::new();
        for s in next.into_iter().flatten() {
            if !seen.contains_key(&s) {
                seen.insert(s.clone(), level + 1);
                frontier.push(s);
            }
        }
        if seen.len() > MAX_BALL_ELEMENTS {
            return Err(Error::BallTooLarge {
                radius: level + 1,
                limit: MAX_BALL_ELEMENTS,
            });
        }
        if frontier.is_empty() {
            break;
        }
    }
    Ok(seen)
}

pub fn class_ball(g: &ZooGroup, h: &GroupElement, radius: usize) -> Result<ClassBall> {
    class_ball_capped(g, h, radius, DEFAULT_CAP)
}

/// {w·h·w⁻¹ : |w| ≤ radius} in the canonical word metric.
///
/// Γ is not finitely generated, so for [`ZooGroup::QSemidirect`] the
/// conjugators are words in {q:1, e:0, t} of G with t-exponent sum 0, and
/// only conjugates lying in Γ are kept. For h in the Q kernel this is
/// computed by [`kernel_slice`].
pub fn class_ball_capped(g: &ZooGroup, h: &GroupElement, radius: usize, cap: usize) -> Result<ClassBall> {
    if radius > cap {
        return Err(Error::CapExceeded { radius, cap });
    }
    if !g.contains(h) {
        return Err(Error::GroupMismatch(format!("{h} is not an element of {g}")));
    }
    let elements = match (g, h) {
        (ZooGroup::QSemidirect, GroupElement::Q(x)) if x.in_kernel() => kernel_conjugates(&x.q, radius),
        (ZooGroup::QSemidirect, GroupElement::Q(x)) => gamma_ball(x, radius)?,
        _ => {
            let gens: Vec<(GroupElement, GroupElement)> = g
                .symmetric_generators()
                .into_iter()
                .map(|s| {
                    let inv = g.inverse_unchecked(&s);
                    (s, inv)
                })
                .collect();
            bfs(h.clone(), radius, |x, _| {
                gens.iter()
                    .map(|(s, si)| g.mul_unchecked(&g.mul_unchecked(s, x), si))
                    .collect()
            })?
        }
    };
    Ok(ClassBall {
        group: g.clone(),
        center: h.clone(),
        radius,
        elements,
    })
}

/// Breadth-first enumeration without the kernel shortcut; the reference
/// against which [`kernel_slice`] is checked.
pub fn class_ball_brute_force(g: &ZooGroup, h: &GroupElement, radius: usize) -> Result<ClassBall> {
    match (g, h) {
        (ZooGroup::QSemidirect, GroupElement::Q(x)) => Ok(ClassBall {
            group: g.clone(),
            center: h.clone(),
            radius,
            elements: gamma_ball(x, radius)?,
        }),
        _ => class_ball_capped(g, h, radius, usize::MAX),
    }
}

fn gamma_ball(h: &QElem, radius: usize) -> Result<BTreeMap<GroupElement, usize>> {
    let g = ZooGroup::HnnShift;
    let gens: Vec<(HnnElem, HnnElem, i64)> = g
        .symmetric_generators()
        .into_iter()
        .map(|s| match s {
            GroupElement::Hnn(w) => {
                let e = w.t_exponent();
                (w.clone(), w.inverse(), e)
            }
            _ => unreachable!(),
        })
        .collect();
    let start = (HnnElem::from_base(h.clone()), 0i64);
    let states = bfs(start, radius, |(x, d), level| {
        // the exponent sum must be able to return to 0 in the remaining steps
        let remaining = (radius - level - 1) as i64;
        gens.iter()
            .filter(|(_, _, e)| (d + e).abs() <= remaining)
            .map(|(s, si, e)| (s.mul(x).mul(si), d + e))
            .collect()
    })?;
    let mut out = BTreeMap::new();
    for ((x, d), l) in states {
        if d == 0 && x.tail.is_empty() {
            let e = out.entry(GroupElement::Q(x.head)).or_insert(l);
            *e = (*e).min(l);
        }
    }
    Ok(out)
}

/// Word length in {e:0, t} of (0, λ) ∈ A ⊂ G: one letter per unit of λ plus
/// a round trip of t-letters from index 0 over the support.
pub fn a_length(lambda: &BTreeMap<i64, i64>) -> usize {
    let lo = lambda.keys().next().map_or(0, |&k| k.min(0));
    let hi = lambda.keys().next_back().map_or(0, |&k| k.max(0));
    let units: u64 = lambda.values().map(|v| v.unsigned_abs()).sum();
    units as usize + 2 * (hi - lo) as usize
}

/// All λ with [`a_length`] ≤ radius.
fn a_ball(radius: usize) -> Vec<BTreeMap<i64, i64>> {
    fn fill(pos: i64, hi: i64, budget: usize, tight: (i64, i64), cur: &mut Vec<(i64, i64)>, out: &mut Vec<BTreeMap<i64, i64>>) {
        if pos > hi {
            out.push(cur.iter().copied().filter(|&(_, v)| v != 0).collect());
            return;
        }
        // the window ends must be occupied unless they are the origin
        let must = (pos == tight.0 && pos < 0) || (pos == tight.1 && pos > 0);
        let b = budget as i64;
        for v in -b..=b {
            if v == 0 && must {
                continue;
            }
            cur.push((pos, v));
            fill(pos + 1, hi, budget - v.unsigned_abs() as usize, tight, cur, out);
            cur.pop();
        }
    }
    let half = (radius / 2) as i64;
    let mut out = Vec::new();
    for lo in -half..=0 {
        for hi in 0..=half {
            let travel = 2 * (hi - lo) as usize;
            if travel > radius {
                continue;
            }
            fill(lo, hi, radius - travel, (lo, hi), &mut Vec::new(), &mut out);
        }
    }
    out
}

fn kernel_conjugates(q: &Rational, radius: usize) -> BTreeMap<GroupElement, usize> {
    let mut out = BTreeMap::new();
    if q.is_zero() {
        out.insert(GroupElement::Q(QElem::identity()), 0);
        return out;
    }
    for lambda in a_ball(radius) {
        let l = a_length(&lambda);
        let x = GroupElement::Q(QElem::rational(super::multiplier(&lambda) * q));
        let e = out.entry(x).or_insert(l);
        *e = (*e).min(l);
    }
    out
}

/// The conjugates of (q, 0) that lie in Γ, within conjugator length `radius`.
///
/// A conjugator whose reduced form contains t leaves a reduced word
/// t^ε·(q, 0)·t^{−ε} in the middle, so only conjugators in Γ land in Γ; their
/// conjugates are (m(λ)·q, 0), and the shortest word for an element of Γ
/// with A-part λ has length [`a_length`]`(λ)` (drop the q-letters, then read
/// the rest in the wreath product Z ≀ Z). In Γ and in G the result is
/// therefore the same set, with entries in G's normal form for `HnnShift`.
pub fn kernel_slice(g: &ZooGroup, q: &Rational, radius: usize) -> Result<ClassBall> {
    kernel_slice_capped(g, q, radius, DEFAULT_CAP)
}

pub fn kernel_slice_capped(g: &ZooGroup, q: &Rational, radius: usize, cap: usize) -> Result<ClassBall> {
    if radius > cap {
        return Err(Error::CapExceeded { radius, cap });
    }
    let lift = |x: GroupElement| match (g, x) {
        (ZooGroup::HnnShift, GroupElement::Q(x)) => Ok(GroupElement::Hnn(HnnElem::from_base(x))),
        (ZooGroup::QSemidirect, x) => Ok(x),
        _ => Err(Error::invalid(format!("{g} has no Q kernel"))),
    };
    let elements = kernel_conjugates(q, radius)
        .into_iter()
        .map(|(x, l)| Ok((lift(x)?, l)))
        .collect::<Result<_>>()?;
    Ok(ClassBall {
        group: g.clone(),
        center: lift(GroupElement::Q(QElem::rational(q.clone())))?,
        radius,
        elements,
    })
}

/// Positive integers k with (k, 0) in the ball around 1 ∈ Q.
pub fn class_intersect_integers(g: &ZooGroup, radius: usize) -> Result<Vec<BigInt>> {
    if !matches!(g, ZooGroup::QSemidirect | ZooGroup::HnnShift) {
        return Err(Error::invalid(format!("{g} has no Q kernel")));
    }
    let ball = kernel_slice(g, &Rational::one(), radius)?;
    let mut out: Vec<BigInt> = ball
        .elements
        .keys()
        .filter_map(GroupElement::kernel_rational)
        .filter(|q| q.is_integer())
        .map(|q| q.to_integer())
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GrowthVerdict {
    /// Estimated degree of polynomial growth.
    Polynomial { degree: f64 },
    /// Estimated exponential rate, counts ~ exp(rate·r).
    Exponential { rate: f64 },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub verdict: GrowthVerdict,
    /// |ball(r)| for r = 0..=max_radius.
    pub counts: Vec<usize>,
    pub window: (usize, usize),
    pub loglog_slope: f64,
    pub loglog_rms: f64,
    pub semilog_rate: f64,
    pub semilog_rms: f64,
    pub min_step_ratio: f64,
}

/// Least squares y ≈ a + b·x; returns (b, rms residual).
fn fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let b = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let a = my - b * mx;
    let rms = (xs.iter().zip(ys).map(|(x, y)| (y - a - b * x).powi(2)).sum::<f64>() / n).sqrt();
    (b, rms)
}

/// Fits log|ball(r)| against log r and against r on [max_radius/2, max_radius].
///
/// Exponential: every step in the window grows by ≥ 1.5, the log-counts have
/// no concave kink beyond 0.05, and the semi-log fit is at least as good as
/// the log-log fit. Polynomial: the local log-log slopes stay within ±0.25 of
/// the fitted slope. Otherwise inconclusive.
pub fn growth_classify(g: &ZooGroup, h: &GroupElement, max_radius: usize) -> Result<GrowthReport> {
    let ball = class_ball(g, h, max_radius)?;
    let counts = ball.counts();
    let lo = (max_radius / 2).max(1);
    let hi = max_radius;
    let rs: Vec<usize> = (lo..=hi).collect();
    let logc: Vec<f64> = rs.iter().map(|&r| (counts[r] as f64).ln()).collect();
    let logr: Vec<f64> = rs.iter().map(|&r| (r as f64).ln()).collect();
    let rf: Vec<f64> = rs.iter().map(|&r| r as f64).collect();
    let (slope, ll_rms) = fit(&logr, &logc);
    let (rate, sl_rms) = fit(&rf, &logc);
    let ratios: Vec<f64> = rs
        .windows(2)
        .map(|w| counts[w[1]] as f64 / counts[w[0]] as f64)
        .collect();
    let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let min_ratio = if min_ratio.is_finite() { min_ratio } else { 1.0 };
    let convex = logc.windows(3).all(|w| w[2] - 2.0 * w[1] + w[0] >= -0.05);
    let local: Vec<f64> = (0..rs.len().saturating_sub(1))
        .map(|i| (logc[i + 1] - logc[i]) / (logr[i + 1] - logr[i]))
        .collect();
    let verdict = if rs.len() < 2 {
        GrowthVerdict::Inconclusive
    } else if min_ratio >= 1.5 && convex && sl_rms <= ll_rms {
        GrowthVerdict::Exponential { rate }
    } else if local.iter().all(|s| (s - slope).abs() <= 0.25) {
        GrowthVerdict::Polynomial { degree: slope }
    } else {
        GrowthVerdict::Inconclusive
    };
    Ok(GrowthReport {
        verdict,
        counts,
        window: (lo, hi),
        loglog_slope: slope,
        loglog_rms: ll_rms,
        semilog_rate: rate,
        semilog_rms: sl_rms,
        min_step_ratio: min_ratio,
    })
}

/// A canonical representative of the conjugacy class of `x`, where one is
/// known: all of a cyclic group, lamplighter elements with zero shift
/// (classes are the translates), and elements of the Q kernel in Γ and G
/// (classes meet Q in Q_{>0} or Q_{<0}).
pub fn class_key(g: &ZooGroup, x: &GroupElement) -> Option<GroupElement> {
    match (g, x) {
        (ZooGroup::Cyclic(_), GroupElement::Cyclic(_)) => Some(x.clone()),
        (ZooGroup::Product(ga, gb), GroupElement::Pair(a, b)) => Some(GroupElement::Pair(
            Box::new(class_key(ga, a)?),
            Box::new(class_key(gb, b)?),
        )),
        (ZooGroup::Lamplighter(_), GroupElement::Lamp(l)) if l.shift == 0 => {
            let base = l.lamps.keys().next().copied().unwrap_or(0);
            Some(GroupElement::Lamp(LampElem {
                lamps: l.lamps.iter().map(|(&k, &v)| (k - base, v)).collect(),
                shift: 0,
            }))
        }
        (ZooGroup::QSemidirect | ZooGroup::HnnShift, _) => {
            let q = x.kernel_rational()?;
            let sign = if q.is_zero() {
                Rational::zero()
            } else if q.is_positive() {
                Rational::one()
            } else {
                -Rational::one()
            };
            Some(match g {
                ZooGroup::QSemidirect => GroupElement::Q(QElem::rational(sign)),
                _ => GroupElement::Hnn(HnnElem::from_base(QElem::rational(sign))),
            })
        }
        _ => None,
    }
}

/// Induction of ρ from Z/n into a zoo group along k ↦ image^k. Returns the
/// class keys meeting the image with their induced values; every other
/// class receives 0.
pub fn induce_rho_zoo(
    g: &ZooGroup,
    image: &GroupElement,
    rho: &RhoVector,
) -> Result<Vec<(GroupElement, CyclotomicValue)>> {
    let src = rho.group();
    let n = src
        .cyclic_order()
        .ok_or_else(|| Error::invalid("zoo induction needs a cyclic source"))? as i64;
    let id = g.identity();
    let powers: Vec<GroupElement> = (0..n).map(|k| g.pow(image, k)).collect::<Result<_>>()?;
    if g.pow(image, n)? != id || powers.iter().skip(1).any(|p| *p == id) {
        return Err(Error::invalid(format!("{image} does not have order {n}")));
    }
    let mut out: BTreeMap<GroupElement, CyclotomicValue> = BTreeMap::new();
    for c in 0..src.num_classes() {
        let k = src.class_representative(c);
        let x = &powers[k];
        let key = class_key(g, x)
            .ok_or_else(|| Error::invalid(format!("no decidable class key for {x} in {g}")))?;
        let v = rho.value(c);
        let slot = out.entry(key).or_insert_with(|| CyclotomicValue::zero(v.order()));
        *slot = &*slot + v;
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::FiniteGroup;
    use crate::numeric::rational::rat;
    use std::sync::Arc;

    fn el(g: &ZooGroup, s: &str) -> GroupElement {
        g.parse_element(s).unwrap()
    }

    #[test]
    fn lamplighter_lamp_ball() {
        let g = ZooGroup::Lamplighter(2);
        let h = el(&g, "lamp:0");
        for r in 0..6 {
            let b = class_ball(&g, &h, r).unwrap();
            assert_eq!(b.len(), 2 * r + 1);
            for k in -(r as i64)..=r as i64 {
                assert!(b.contains(&el(&g, &format!("lamp:{k}"))));
            }
        }
    }

    #[test]
    fn cyclic_classes_are_points() {
        let g = ZooGroup::Cyclic(7);
        let b = class_ball(&g, &el(&g, "c:3"), 5).unwrap();
        assert_eq!(b.len(), 1);
        let rep = growth_classify(&g, &el(&g, "c:3"), 8).unwrap();
        assert_eq!(rep.verdict, GrowthVerdict::Polynomial { degree: 0.0 });
    }

    #[test]
    fn cap_is_enforced() {
        let g = ZooGroup::Cyclic(3);
        assert_eq!(
            class_ball(&g, &g.identity(), 13).unwrap_err(),
            Error::CapExceeded { radius: 13, cap: 12 }
        );
        assert!(class_ball_capped(&g, &g.identity(), 13, 20).is_ok());
    }

    #[test]
    fn hnn_ball_reaches_small_integers() {
        let g = ZooGroup::HnnShift;
        let b = class_ball(&g, &el(&g, "q:1"), 6).unwrap();
        for k in ["q:1", "q:2", "q:3"] {
            assert!(b.contains(&el(&g, k)), "{k}");
        }
    }

    #[test]
    fn kernel_conjugates_are_positive() {
        for g in [ZooGroup::QSemidirect, ZooGroup::HnnShift] {
            let b = class_ball(&g, &el(&g, "q:1"), 5).unwrap();
            for x in b.elements.keys() {
                if let Some(q) = x.kernel_rational() {
                    assert!(q.is_positive(), "{x}");
                }
            }
            let ints = class_intersect_integers(&g, 4).unwrap();
            assert!(ints.contains(&BigInt::from(1)) && ints.contains(&BigInt::from(2)));
            assert!(ints.iter().all(|k| k.is_positive()));
            assert_eq!(class_intersect_integers(&g, 0).unwrap(), vec![BigInt::from(1)]);
        }
        assert!(class_intersect_integers(&ZooGroup::Cyclic(3), 2).is_err());
    }

    #[test]
    fn kernel_slice_matches_bfs() {
        let h = ZooGroup::HnnShift;
        let full = class_ball(&h, &el(&h, "q:1"), 7).unwrap();
        let in_gamma: BTreeMap<GroupElement, usize> = full
            .elements
            .iter()
            .filter(|(x, _)| matches!(x, GroupElement::Hnn(w) if w.tail.is_empty()))
            .map(|(x, &l)| (x.clone(), l))
            .collect();
        assert_eq!(kernel_slice(&h, &Rational::one(), 7).unwrap().elements, in_gamma);

        let g = ZooGroup::QSemidirect;
        let q = Rational::new(3.into(), 4.into());
        let states = gamma_ball(&QElem::rational(q.clone()), 7).unwrap();
        assert_eq!(kernel_slice(&g, &q, 7).unwrap().elements, states);
        assert_eq!(class_ball(&g, &el(&g, "q:3/4"), 7).unwrap().elements, states);
    }

    #[test]
    fn a_lengths() {
        assert_eq!(a_length(&BTreeMap::new()), 0);
        assert_eq!(a_length(&BTreeMap::from([(0, -3)])), 3);
        assert_eq!(a_length(&BTreeMap::from([(2, 1)])), 5);
        assert_eq!(a_length(&BTreeMap::from([(-1, 1), (2, 1)])), 8);
        assert!(a_ball(6).iter().all(|l| a_length(l) <= 6));
    }

    #[test]
    fn growth_verdicts() {
        let g = ZooGroup::Lamplighter(2);
        let lamp = growth_classify(&g, &el(&g, "lamp:0"), 10).unwrap();
        match lamp.verdict {
            GrowthVerdict::Polynomial { degree } => assert!((0.75..=1.25).contains(&degree), "{degree}"),
            v => panic!("{v:?}"),
        }
        let shift = growth_classify(&g, &el(&g, "s"), 10).unwrap();
        assert!(matches!(shift.verdict, GrowthVerdict::Exponential { .. }), "{shift:?}");
    }

    #[test]
    fn monotone_and_tsv() {
        let g = ZooGroup::Lamplighter(3);
        let h = el(&g, "lamp:0 lamp:2^2");
        let small = class_ball(&g, &h, 2).unwrap();
        let big = class_ball(&g, &h, 3).unwrap();
        assert!(small.elements.keys().all(|x| big.contains(x)));
        let tsv = small.to_tsv();
        assert!(tsv.starts_with("normal_form\tword_length\nlamp:0 lamp:2^2\t0\n"));
        assert_eq!(tsv.lines().count(), small.len() + 1);
    }

    #[test]
    fn induction_into_lamplighter() {
        let g = ZooGroup::Lamplighter(3);
        let z3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let rho = RhoVector::new(
            z3.clone(),
            [rat(1, 2), rat(1, 3), rat(1, 5)]
                .into_iter()
                .map(|q| CyclotomicValue::from_rational(3, q))
                .collect(),
        )
        .unwrap();
        let out = induce_rho_zoo(&g, &el(&g, "lamp:4"), &rho).unwrap();
        assert_eq!(out.len(), 3);
        assert_eq!(out[0].0, g.identity());
        assert_eq!(out[0].1.as_rational(), Some(rat(1, 2)));
        let lamp2 = out.iter().find(|(k, _)| *k == el(&g, "lamp:0^2")).unwrap();
        assert_eq!(lamp2.1.as_rational(), Some(rat(1, 5)));
        assert!(induce_rho_zoo(&g, &el(&g, "s"), &rho).is_err());
        assert!(induce_rho_zoo(&ZooGroup::Lamplighter(2), &el(&ZooGroup::Lamplighter(2), "lamp:0"), &rho).is_err());
    }
}
