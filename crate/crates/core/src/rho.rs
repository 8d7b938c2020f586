//! Induction of rho data along subgroup inclusions, the L²-rho identity for
//! cyclic groups, and the denominator rings used for rationality checks.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::chars::{fourier_eta, FiniteGroup, RhoVector, VirtualRep};
use crate::error::{Error, Result};
use crate::numeric::cyclotomic::lcm_order;
use crate::numeric::rational::prime_divisors;
use crate::numeric::{CyclotomicValue, Rational};

/// An injective homomorphism `sub → target` given on elements.
#[derive(Clone, Debug)]
pub struct SubgroupInclusion {
    sub: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl SubgroupInclusion {
    pub fn new(sub: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != sub.order() {
            return Err(Error::invalid("map must list an image for every element"));
        }
        if map.iter().any(|&x| x >= target.order()) {
            return Err(Error::invalid("image out of range"));
        }
        for a in 0..sub.order() {
            for b in 0..sub.order() {
                if map[sub.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::invalid(format!(
                        "not a homomorphism at ({}, {})",
                        sub.label(a),
                        sub.label(b)
                    )));
                }
            }
        }
        let distinct: BTreeSet<_> = map.iter().collect();
        if distinct.len() != map.len() {
            return Err(Error::invalid("map is not injective"));
        }
        Ok(SubgroupInclusion { sub, target, map })
    }

    /// Cyclic(n) → target sending the generator 1 to `image`.
    pub fn from_generator(sub: Arc<FiniteGroup>, target: Arc<FiniteGroup>, image: usize) -> Result<Self> {
        let n = sub
            .cyclic_order()
            .ok_or_else(|| Error::invalid("generator form needs a cyclic source"))?;
        if image >= target.order() {
            return Err(Error::invalid("image out of range"));
        }
        let mut map = Vec::with_capacity(n as usize);
        let mut x = target.identity();
        for _ in 0..n {
            map.push(x);
            x = target.mul(x, image);
        }
        Self::new(sub, target, map)
    }

    pub fn sub(&self) -> &Arc<FiniteGroup> {
        &self.sub
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn image(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SubgroupInclusion) -> Result<SubgroupInclusion> {
        if *self.target != *other.sub {
            return Err(Error::GroupMismatch("inclusions do not compose".into()));
        }
        let map = self.map.iter().map(|&a| other.map[a]).collect();
        SubgroupInclusion::new(self.sub.clone(), other.target.clone(), map)
    }
}

/// ρ_{⟨g⟩}(j_* x) = Σ over sub-classes ⟨γ⟩ ⊆ j⁻¹(⟨g⟩) of ρ_{⟨γ⟩}(x).
pub fn induce_rho(j: &SubgroupInclusion, rho: &RhoVector) -> Result<RhoVector> {
    if **rho.group() != *j.sub {
        return Err(Error::GroupMismatch("rho vector is not over the source group".into()));
    }
    let order = rho
        .values()
        .iter()
        .map(CyclotomicValue::order)
        .fold(j.target.exponent(), lcm_order);
    let mut out = vec![CyclotomicValue::zero(order); j.target.num_classes()];
    for (c, value) in rho.values().iter().enumerate() {
        let rep = j.sub.class_representative(c);
        let tc = j.target.class_of(j.map[rep]);
        out[tc] = &out[tc] + value;
    }
    RhoVector::new(j.target.clone(), out)
}

/// ρ₍₂₎ through the delocalized values of a cyclic group: −Σ_{h≠1} ρ_h.
pub fn rho2_from_delocalized(rho: &RhoVector) -> CyclotomicValue {
    let id = rho.group().identity_class();
    let order = rho.values()[0].order();
    -rho.values()
        .iter()
        .enumerate()
        .filter(|&(c, _)| c != id)
        .fold(CyclotomicValue::zero(order), |acc, (_, v)| &acc + v)
}

/// The same quantity via the twist −triv + (1/n)·regular.
pub fn rho2_via_twist(rho: &RhoVector) -> Result<CyclotomicValue> {
    fourier_eta(&VirtualRep::l2_twist(rho.group().clone()), rho)
}

/// An element order, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementOrder {
    Finite(u64),
    Infinite,
}

impl std::str::FromStr for ElementOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(ElementOrder::Infinite),
            t => t
                .parse::<u64>()
                .ok()
                .filter(|&n| n > 0)
                .map(ElementOrder::Finite)
                .ok_or_else(|| Error::invalid(format!("bad order {s:?}"))),
        }
    }
}

/// Z[1/N]: the subring of Q generated by Z and the inverses of `prime_support`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DenominatorRing {
    #[serde(serialize_with = "ser_primes")]
    prime_support: BTreeSet<BigInt>,
}

fn ser_primes<S: serde::Serializer>(p: &BTreeSet<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(|x| x.to_string()))
}

impl DenominatorRing {
    pub fn integers() -> Self {
        Self::default()
    }

    pub fn prime_support(&self) -> &BTreeSet<BigInt> {
        &self.prime_support
    }

    /// Adjoins 1/n.
    pub fn with_inverse(mut self, n: u64) -> Self {
        self.prime_support.extend(prime_divisors(&BigInt::from(n)));
        self
    }

    pub fn contains(&self, q: &Rational) -> bool {
        ring_contains(self, q)
    }
}

impl fmt::Display for DenominatorRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prime_support.is_empty() {
            return write!(f, "Z");
        }
        let n: BigInt = self.prime_support.iter().product();
        write!(f, "Z[1/{n}]")
    }
}

/// Smallest subring of Q containing Z and 1/o for each finite order o;
/// infinite orders contribute nothing.
pub fn ring_from_orders(orders: &[ElementOrder]) -> DenominatorRing {
    orders.iter().fold(DenominatorRing::integers(), |r, o| match o {
        ElementOrder::Finite(n) => r.with_inverse(*n),
        ElementOrder::Infinite => r,
    })
}

pub fn ring_contains(ring: &DenominatorRing, q: &Rational) -> bool {
    let mut d = q.denom().clone();
    for p in &ring.prime_support {
        while (&d % p).is_zero() {
            d /= p;
        }
    }
    d.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, rat};

    fn cyc(n: u32) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    fn rho(g: &Arc<FiniteGroup>, vals: &[Rational]) -> RhoVector {
        let o = g.exponent();
        RhoVector::new(
            g.clone(),
            vals.iter().map(|q| CyclotomicValue::from_rational(o, q.clone())).collect(),
        )
        .unwrap()
    }

    fn q(g: &RhoVector, c: usize) -> Rational {
        g.value(c).as_rational().unwrap()
    }

    #[test]
    fn induce_z2_into_z4() {
        let j = SubgroupInclusion::from_generator(cyc(2), cyc(4), 2).unwrap();
        let r = induce_rho(&j, &rho(&cyc(2), &[rat(3, 5), rat(-2, 7)])).unwrap();
        assert_eq!(q(&r, 0), rat(3, 5));
        assert_eq!(q(&r, 2), rat(-2, 7));
        assert_eq!(q(&r, 1), int(0));
        assert_eq!(q(&r, 3), int(0));
    }

    #[test]
    fn induce_z3_into_s3() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        // a 3-cycle: class of size 2
        let three_cycle = (0..6).find(|&a| s3.element_order(a) == 3).unwrap();
        let j = SubgroupInclusion::from_generator(cyc(3), s3.clone(), three_cycle).unwrap();
        let r = induce_rho(&j, &rho(&cyc(3), &[rat(1, 2), rat(1, 3), rat(1, 5)])).unwrap();
        let tc = s3.class_of(three_cycle);
        let transp = s3.class_of((0..6).find(|&a| s3.element_order(a) == 2).unwrap());
        assert_eq!(q(&r, tc), rat(1, 3) + rat(1, 5));
        assert_eq!(q(&r, transp), int(0));
        assert_eq!(q(&r, 0), rat(1, 2));
    }

    #[test]
    fn identity_inclusion_and_validation() {
        let g = cyc(5);
        let id = SubgroupInclusion::from_generator(g.clone(), g.clone(), 1).unwrap();
        let x = rho(&g, &[int(1), int(2), int(3), int(4), int(5)]);
        assert_eq!(induce_rho(&id, &x).unwrap(), x);
        // 1 ↦ 1 from Z/2 into Z/4 is not a homomorphism
        assert!(SubgroupInclusion::from_generator(cyc(2), cyc(4), 1).is_err());
        // 1 ↦ 0 is not injective
        assert!(SubgroupInclusion::from_generator(cyc(3), cyc(3), 0).is_err());
    }

    #[test]
    fn rho2_examples() {
        let g = cyc(3);
        let x = rho(&g, &[int(5), int(0), int(0)]);
        assert!(rho2_from_delocalized(&x).is_zero());
        let x = rho(&g, &[int(0), rat(-1, 9), rat(-1, 9)]);
        assert_eq!(rho2_from_delocalized(&x).as_rational(), Some(rat(2, 9)));
        assert_eq!(rho2_via_twist(&x).unwrap(), rho2_from_delocalized(&x));
    }

    #[test]
    fn rings() {
        use ElementOrder::*;
        let r = ring_from_orders(&[Finite(3), Finite(5)]);
        assert_eq!(
            r.prime_support().iter().cloned().collect::<Vec<_>>(),
            vec![BigInt::from(3), BigInt::from(5)]
        );
        assert!(ring_contains(&r, &rat(7, 15)));
        assert!(!ring_contains(&r, &rat(1, 2)));
        assert!(ring_contains(&r, &int(-12)));
        let z = ring_from_orders(&[Infinite]);
        assert!(z.prime_support().is_empty());
        assert_eq!(z.to_string(), "Z");
        let r6 = ring_from_orders(&[Finite(2), Finite(3)]).with_inverse(2);
        assert_eq!(r6.prime_support().len(), 2);
        assert_eq!(r6.to_string(), "Z[1/6]");
        assert!(ring_contains(&r, &rat(4, 675)));
        assert_eq!("inf".parse::<ElementOrder>().unwrap(), Infinite);
        assert!("0".parse::<ElementOrder>().is_err());
    }
}
