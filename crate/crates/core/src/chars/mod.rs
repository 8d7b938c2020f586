//! Class functions, virtual characters and rho vectors on finite groups,
//! together with the τ-orbit rank formulas and the Fourier/pairing maps.

mod group;

use std::sync::Arc;

use serde::Serialize;

pub use group::{FiniteGroup, GroupDescriptor, TableInput};

use crate::error::{Error, Result};
use crate::numeric::{CyclotomicValue, Rational};

/// Which of Class⁺₀ / Class⁻₀ (or R⁺₀ / R⁻₀) is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Plus,
    Minus,
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Parity::Plus),
            "minus" | "-" => Ok(Parity::Minus),
            _ => Err(Error::invalid(format!("parity must be plus or minus, got {s:?}"))),
        }
    }
}

/// Symmetry of a class vector under τ, computed exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParityFlags {
    pub symmetric: bool,
    pub antisymmetric: bool,
}

fn parity_flags(group: &FiniteGroup, values: &[CyclotomicValue]) -> ParityFlags {
    let mut symmetric = true;
    let mut antisymmetric = true;
    for (c, v) in values.iter().enumerate() {
        let w = &values[group.tau(c)];
        symmetric &= v == w;
        antisymmetric &= (v + w).is_zero();
    }
    ParityFlags {
        symmetric,
        antisymmetric,
    }
}

fn normalize_values(
    group: &FiniteGroup,
    values: Vec<CyclotomicValue>,
) -> Result<Vec<CyclotomicValue>> {
    if values.len() != group.num_classes() {
        return Err(Error::invalid(format!(
            "expected {} class values, got {}",
            group.num_classes(),
            values.len()
        )));
    }
    let order = values
        .iter()
        .map(CyclotomicValue::order)
        .fold(group.exponent(), crate::numeric::cyclotomic::lcm_order);
    values.into_iter().map(|v| v.lift(order)).collect()
}

/// A function on conjugacy classes, values indexed by class.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<CyclotomicValue>,
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<CyclotomicValue>) -> Result<Self> {
        let values = normalize_values(&group, values)?;
        Ok(ClassFunction { group, values })
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let values = vec![CyclotomicValue::zero(group.exponent()); group.num_classes()];
        ClassFunction { group, values }
    }

    pub fn from_ints(group: Arc<FiniteGroup>, values: &[i64]) -> Result<Self> {
        let order = group.exponent();
        Self::new(
            group,
            values.iter().map(|&v| CyclotomicValue::from_int(order, v)).collect(),
        )
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[CyclotomicValue] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CyclotomicValue {
        &self.values[class]
    }

    pub fn at_identity(&self) -> &CyclotomicValue {
        &self.values[self.group.identity_class()]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CyclotomicValue::is_zero)
    }

    pub fn parity(&self) -> ParityFlags {
        parity_flags(&self.group, &self.values)
    }

    /// Membership in Class⁺₀ (parity plus) or Class⁻₀ (parity minus).
    pub fn in_class0(&self, parity: Parity) -> bool {
        let flags = self.parity();
        self.at_identity().is_zero()
            && match parity {
                Parity::Plus => flags.symmetric,
                Parity::Minus => flags.antisymmetric,
            }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_group(&self.group, &other.group)?;
        Self::new(
            self.group.clone(),
            self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn scale(&self, c: &CyclotomicValue) -> Self {
        ClassFunction::new(self.group.clone(), self.values.iter().map(|v| v * c).collect())
            .expect("same shape")
    }
}

/// Delocalized rho data ρ_{⟨h⟩}, indexed by class. The identity slot holds
/// the L²-part.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoVector {
    group: Arc<FiniteGroup>,
    values: Vec<CyclotomicValue>,
}

impl RhoVector {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<CyclotomicValue>) -> Result<Self> {
        let values = normalize_values(&group, values)?;
        Ok(RhoVector { group, values })
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let values = vec![CyclotomicValue::zero(group.exponent()); group.num_classes()];
        RhoVector { group, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[CyclotomicValue] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CyclotomicValue {
        &self.values[class]
    }

    pub fn parity(&self) -> ParityFlags {
        parity_flags(&self.group, &self.values)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_group(&self.group, &other.group)?;
        Self::new(
            self.group.clone(),
            self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn scale(&self, c: &CyclotomicValue) -> Self {
        RhoVector::new(self.group.clone(), self.values.iter().map(|v| v * c).collect())
            .expect("same shape")
    }

    /// Multi-precision numeric view of the vector.
    pub fn embed(&self, precision_bits: usize) -> Vec<crate::numeric::BigFloatComplex> {
        self.values
            .iter()
            .map(|v| crate::numeric::cyclo_embed(v, precision_bits))
            .collect()
    }
}

/// A virtual representation given by its character; for cyclic groups the
/// multiplicities of the irreducibles χ_k(h) = ζ^{kh} are kept when known.
#[derive(Clone, Debug, PartialEq)]
pub struct VirtualRep {
    character: ClassFunction,
    multiplicities: Option<Vec<Rational>>,
}

impl VirtualRep {
    pub fn from_character(character: ClassFunction) -> Self {
        VirtualRep {
            character,
            multiplicities: None,
        }
    }

    /// Σ_k m_k χ_k on Cyclic(n); Θ applied to a multiplicity vector.
    pub fn cyclic_from_multiplicities(
        group: Arc<FiniteGroup>,
        multiplicities: Vec<Rational>,
    ) -> Result<Self> {
        let n = group
            .cyclic_order()
            .ok_or_else(|| Error::invalid("multiplicity form needs a cyclic group"))?;
        if multiplicities.len() != n as usize {
            return Err(Error::invalid("need one multiplicity per irreducible"));
        }
        let values = (0..n as i64)
            .map(|h| {
                CyclotomicValue::from_exponents(
                    n,
                    multiplicities
                        .iter()
                        .enumerate()
                        .map(|(k, m)| (k as i64 * h, m.clone())),
                )
            })
            .collect();
        Ok(VirtualRep {
            character: ClassFunction::new(group, values)?,
            multiplicities: Some(multiplicities),
        })
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let one = vec![CyclotomicValue::one(group.exponent()); group.num_classes()];
        Self::from_character(ClassFunction::new(group, one).unwrap())
    }

    /// Character |G| at the identity, 0 elsewhere.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let order = group.exponent();
        let values = (0..group.num_classes())
            .map(|c| {
                if c == group.identity_class() {
                    CyclotomicValue::from_int(order, group.order() as i64)
                } else {
                    CyclotomicValue::zero(order)
                }
            })
            .collect();
        Self::from_character(ClassFunction::new(group, values).unwrap())
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        Self::from_character(ClassFunction::zero(group))
    }

    /// −triv + (1/|G|)·regular: character 0 at 1 and −1 elsewhere.
    pub fn l2_twist(group: Arc<FiniteGroup>) -> Self {
        let n = group.order() as i64;
        let reg = Self::regular(group.clone());
        let triv = Self::trivial(group.clone());
        let order = group.exponent();
        let scale = CyclotomicValue::from_rational(order, crate::numeric::rational::rat(1, n));
        let ch = reg
            .character
            .scale(&scale)
            .add(&triv.character.scale(&CyclotomicValue::from_int(order, -1)))
            .unwrap();
        Self::from_character(ch)
    }

    pub fn character(&self) -> &ClassFunction {
        &self.character
    }

    pub fn multiplicities(&self) -> Option<&[Rational]> {
        self.multiplicities.as_deref()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.character.group()
    }

    /// χ(1).
    pub fn virtual_dimension(&self) -> &CyclotomicValue {
        self.character.at_identity()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let multiplicities = match (&self.multiplicities, &other.multiplicities) {
            (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            _ => None,
        };
        Ok(VirtualRep {
            character: self.character.add(&other.character)?,
            multiplicities,
        })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let c = CyclotomicValue::from_rational(1, q.clone());
        VirtualRep {
            character: self.character.scale(&c),
            multiplicities: self
                .multiplicities
                .as_ref()
                .map(|m| m.iter().map(|x| x * q).collect()),
        }
    }
}

fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GroupMismatch(format!(
            "{:?} vs {:?}",
            short(a.descriptor()),
            short(b.descriptor())
        )))
    }
}

fn short(d: &GroupDescriptor) -> String {
    match d {
        GroupDescriptor::Cyclic(n) => format!("Cyclic({n})"),
        GroupDescriptor::ExplicitTable { elements, .. } => format!("Table(|G|={})", elements.len()),
    }
}

/// Orbits of τ on classes, each sorted, listed by least class index. The
/// identity class is the first orbit.
pub fn tau_orbits(group: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut seen = vec![false; group.num_classes()];
    let mut out = Vec::new();
    for c in 0..group.num_classes() {
        if seen[c] {
            continue;
        }
        let t = group.tau(c);
        seen[c] = true;
        seen[t] = true;
        if t == c {
            out.push(vec![c]);
        } else {
            out.push(vec![c.min(t), c.max(t)]);
        }
    }
    out
}

/// Basis of Class⁺₀ (indicator of ⟨g⟩ ∪ ⟨g⁻¹⟩ per nontrivial τ-orbit) or
/// Class⁻₀ (+1 on ⟨g⟩, −1 on ⟨g⁻¹⟩ per orbit of size two).
pub fn class_space_basis(group: &Arc<FiniteGroup>, parity: Parity) -> Vec<ClassFunction> {
    let id = group.identity_class();
    tau_orbits(group)
        .into_iter()
        .filter(|orbit| orbit[0] != id)
        .filter(|orbit| parity == Parity::Plus || orbit.len() == 2)
        .map(|orbit| {
            let mut vals = vec![0i64; group.num_classes()];
            match parity {
                Parity::Plus => orbit.iter().for_each(|&c| vals[c] = 1),
                Parity::Minus => {
                    vals[orbit[0]] = 1;
                    vals[orbit[1]] = -1;
                }
            }
            ClassFunction::from_ints(group.clone(), &vals).unwrap()
        })
        .collect()
}

/// Number of τ-orbits on nontrivial classes.
pub fn rank_plus(group: &FiniteGroup) -> usize {
    tau_orbits(group).len() - 1
}

/// Variant counting the identity orbit as well.
pub fn rank_plus_with_identity(group: &FiniteGroup) -> usize {
    tau_orbits(group).len()
}

/// Number of τ-orbits of classes with ⟨h⟩ ≠ ⟨h⁻¹⟩.
pub fn rank_minus(group: &FiniteGroup) -> usize {
    tau_orbits(group).iter().filter(|o| o.len() == 2).count()
}

/// φ ∈ R⁺₀ / R⁻₀: χ(1) = 0 and χ(h) = ±χ(h⁻¹).
pub fn is_in_r0(phi: &VirtualRep, parity: Parity) -> bool {
    phi.character.in_class0(parity)
}

/// η_φ = Σ_{⟨h⟩} χ_φ(h) ρ_{⟨h⟩}.
///
/// When the multiplicities over the irreducibles of a cyclic group are known,
/// the sum is evaluated irreducible by irreducible instead, Σ_k m_k Σ_h ζ^{kh} ρ_h.
pub fn fourier_eta(phi: &VirtualRep, rho: &RhoVector) -> Result<CyclotomicValue> {
    same_group(phi.group(), &rho.group)?;
    if let (Some(m), Some(n)) = (phi.multiplicities(), rho.group.cyclic_order()) {
        // Σ_k m_k Σ_h ζ^{kh} ρ_h, collected by exponent of ζ and reduced once
        let order = rho.values.first().map_or(n, CyclotomicValue::order);
        let (len, step) = (order as usize, (order / n) as usize);
        let mut by_exponent = vec![Rational::from_integer(0.into()); len];
        for (k, mk) in m.iter().enumerate() {
            if num_traits::Zero::is_zero(mk) {
                continue;
            }
            for (h, r) in rho.values.iter().enumerate() {
                for (i, c) in r.coefficients().iter().enumerate() {
                    if !num_traits::Zero::is_zero(c) {
                        by_exponent[(i + k * h * step) % len] += mk * c;
                    }
                }
            }
        }
        return Ok(CyclotomicValue::from_exponents(
            order,
            by_exponent.into_iter().enumerate().map(|(e, c)| (e as i64, c)),
        ));
    }
    Ok(weighted_sum(phi.character.values(), rho.values()))
}

/// Φ(f)(ρ) = Σ_{⟨h⟩} ρ_{⟨h⟩} f(⟨h⟩).
pub fn pair_phi(f: &ClassFunction, rho: &RhoVector) -> Result<CyclotomicValue> {
    same_group(&f.group, &rho.group)?;
    Ok(weighted_sum(f.values(), rho.values()))
}

fn weighted_sum(a: &[CyclotomicValue], b: &[CyclotomicValue]) -> CyclotomicValue {
    let order = a.first().map(|v| v.order()).unwrap_or(1);
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(CyclotomicValue::zero(order), |acc, (x, y)| &acc + &(x * y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, rat};

    fn cyc(n: u32) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    fn rho_of(g: &Arc<FiniteGroup>, vals: &[Rational]) -> RhoVector {
        let o = g.exponent();
        RhoVector::new(
            g.clone(),
            vals.iter().map(|q| CyclotomicValue::from_rational(o, q.clone())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn orbits() {
        assert_eq!(tau_orbits(&cyc(4)), vec![vec![0], vec![1, 3], vec![2]]);
        assert_eq!(tau_orbits(&cyc(2)), vec![vec![0], vec![1]]);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(tau_orbits(&s3), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn bases_and_ranks() {
        let c5 = cyc(5);
        let plus = class_space_basis(&c5, Parity::Plus);
        assert_eq!(plus.len(), 2);
        assert_eq!(plus[0], ClassFunction::from_ints(c5.clone(), &[0, 1, 0, 0, 1]).unwrap());
        let minus = class_space_basis(&c5, Parity::Minus);
        assert_eq!(minus.len(), 2);
        assert_eq!(minus[0], ClassFunction::from_ints(c5.clone(), &[0, 1, 0, 0, -1]).unwrap());
        assert!(class_space_basis(&cyc(2), Parity::Minus).is_empty());
        assert_eq!((rank_plus(&c5), rank_minus(&c5)), (2, 2));
        assert_eq!((rank_plus(&cyc(2)), rank_minus(&cyc(2))), (1, 0));
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!((rank_plus(&s3), rank_minus(&s3)), (2, 0));
        assert_eq!(rank_plus_with_identity(&s3), 3);
        for f in plus {
            assert!(f.in_class0(Parity::Plus));
        }
        for f in minus {
            assert!(f.in_class0(Parity::Minus));
        }
    }

    #[test]
    fn r0_membership() {
        for n in [2u32, 3, 7, 12] {
            let g = cyc(n);
            assert!(is_in_r0(&VirtualRep::l2_twist(g.clone()), Parity::Plus));
            assert!(is_in_r0(&VirtualRep::zero(g.clone()), Parity::Plus));
            assert!(is_in_r0(&VirtualRep::zero(g.clone()), Parity::Minus));
            assert!(!is_in_r0(&VirtualRep::trivial(g.clone()), Parity::Plus));
            assert!(!is_in_r0(&VirtualRep::trivial(g), Parity::Minus));
        }
    }

    #[test]
    fn fourier_examples() {
        let g = cyc(3);
        let rho = rho_of(&g, &[rat(1, 2), rat(-1, 9), rat(5, 7)]);
        let sum = CyclotomicValue::from_rational(3, rat(1, 2) + rat(-1, 9) + rat(5, 7));
        assert_eq!(fourier_eta(&VirtualRep::trivial(g.clone()), &rho).unwrap(), sum);
        let reg = fourier_eta(&VirtualRep::regular(g.clone()), &rho).unwrap();
        assert_eq!(reg, CyclotomicValue::from_rational(3, rat(3, 2)));
        let tw = fourier_eta(&VirtualRep::l2_twist(g.clone()), &rho).unwrap();
        assert_eq!(tw, CyclotomicValue::from_rational(3, rat(1, 9) - rat(5, 7)));
        // multiplicity route for the regular representation
        let reg_m =
            VirtualRep::cyclic_from_multiplicities(g.clone(), vec![int(1), int(1), int(1)]).unwrap();
        assert_eq!(reg_m.character(), VirtualRep::regular(g.clone()).character());
        assert_eq!(fourier_eta(&reg_m, &rho).unwrap(), reg);
        let other = rho_of(&cyc(4), &[int(0), int(0), int(0), int(0)]);
        assert!(matches!(
            fourier_eta(&VirtualRep::trivial(g), &other),
            Err(Error::GroupMismatch(_))
        ));
    }

    #[test]
    fn pairing_examples() {
        let g = cyc(5);
        let vals: Vec<Rational> = (0..5).map(|k| rat(k + 1, 11)).collect();
        let rho = rho_of(&g, &vals);
        assert!(pair_phi(&ClassFunction::zero(g.clone()), &rho).unwrap().is_zero());
        let kappa = &class_space_basis(&g, Parity::Plus)[0];
        assert_eq!(
            pair_phi(kappa, &rho).unwrap(),
            CyclotomicValue::from_rational(5, &vals[1] + &vals[4])
        );
        let minus = &class_space_basis(&g, Parity::Minus)[0];
        assert_eq!(
            pair_phi(minus, &rho).unwrap(),
            CyclotomicValue::from_rational(5, &vals[1] - &vals[4])
        );
    }

    #[test]
    fn parity_flags_on_vectors() {
        let g = cyc(5);
        let z = |k| CyclotomicValue::zeta_pow(5, k);
        let sym = RhoVector::new(g.clone(), vec![z(0), z(1), z(2), z(2), z(1)]).unwrap();
        assert_eq!(sym.parity(), ParityFlags { symmetric: true, antisymmetric: false });
        let zero = RhoVector::zero(g);
        assert_eq!(zero.parity(), ParityFlags { symmetric: true, antisymmetric: true });
    }
}
