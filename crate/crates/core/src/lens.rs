//! Rho data of lens spaces L(n; a₁, …, a_k) over Z/n, n odd.
//!
//! The delocalized value at g^j is the equivariant defect
//! `(1/n) · Π_l 1/(ω^{j·a_l} − ω^{−j·a_l})`, with ω = ζ_n^{(n+1)/2} the square
//! root of ζ_n inside Q(ζ_n). The identity slot is 0.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::chars::{class_space_basis, fourier_eta, pair_phi, ClassFunction, FiniteGroup, Parity, RhoVector, VirtualRep};
use crate::error::{Error, Result};
use crate::numeric::linalg;
use crate::numeric::rational::{rat, Rational};
use crate::numeric::CyclotomicValue;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LensSpace {
    n: u32,
    weights: Vec<i64>,
}

impl LensSpace {
    pub fn new(n: u32, weights: Vec<i64>) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::invalid(format!("lens order must be odd and ≥ 3, got {n}")));
        }
        if weights.is_empty() {
            return Err(Error::invalid("lens space needs at least one weight"));
        }
        let nn = n as i64;
        let weights: Vec<i64> = weights.into_iter().map(|a| a.rem_euclid(nn)).collect();
        if let Some(a) = weights.iter().find(|a| a.gcd(&nn) != 1) {
            return Err(Error::invalid(format!("weight {a} is not coprime to {n}")));
        }
        Ok(LensSpace { n, weights })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn k(&self) -> usize {
        self.weights.len()
    }

    pub fn dim(&self) -> usize {
        2 * self.k() - 1
    }

    /// dim mod 4 ∈ {1, 3}; 3 ↔ τ-symmetric data, 1 ↔ τ-antisymmetric.
    pub fn dim_mod4(&self) -> usize {
        self.dim() % 4
    }

    pub fn expected_parity(&self) -> Parity {
        if self.k().is_multiple_of(2) {
            Parity::Plus
        } else {
            Parity::Minus
        }
    }

    pub fn group(&self) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(self.n).expect("n ≥ 3"))
    }
}

impl std::fmt::Display for LensSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let w: Vec<String> = self.weights.iter().map(|a| a.to_string()).collect();
        write!(f, "L({};{})", self.n, w.join(","))
    }
}

/// 1/(ω^m − ω^{−m}) for m = 0..n (slot 0 unused).
fn defect_factors(n: u32) -> Arc<Vec<CyclotomicValue>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<CyclotomicValue>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let half = (n as i64 + 1) / 2;
    let factors: Vec<CyclotomicValue> = (0..n as i64)
        .map(|m| {
            if m == 0 {
                return CyclotomicValue::zero(n);
            }
            let d = &CyclotomicValue::zeta_pow(n, m * half) - &CyclotomicValue::zeta_pow(n, -m * half);
            d.inverse().expect("ω^m ≠ ω^{-m} for m ≢ 0")
        })
        .collect();
    let t = Arc::new(factors);
    cache.lock().unwrap().insert(n, t.clone());
    t
}

/// The delocalized rho vector with the default normalization.
pub fn lens_delocalized_rho(lens: &LensSpace) -> RhoVector {
    lens_delocalized_rho_scaled(lens, &rat(1, 1))
}

/// Same, multiplied by an overall normalization constant.
pub fn lens_delocalized_rho_scaled(lens: &LensSpace, scale: &Rational) -> RhoVector {
    let n = lens.n;
    let nn = n as i64;
    let factors = defect_factors(n);
    let prefactor = scale * rat(1, nn);
    let values = (0..nn)
        .map(|j| {
            if j == 0 {
                return CyclotomicValue::zero(n);
            }
            lens.weights
                .iter()
                .map(|&a| &factors[(j * a).rem_euclid(nn) as usize])
                .fold(CyclotomicValue::one(n), |acc, f| &acc * f)
                .scale(&prefactor)
        })
        .collect();
    RhoVector::new(lens.group(), values).expect("one value per class")
}

/// ρ_φ(L) = Σ_h χ_φ(h) ρ_h(L).
pub fn lens_twisted_rho(lens: &LensSpace, phi: &VirtualRep) -> Result<CyclotomicValue> {
    match phi.group().cyclic_order() {
        Some(m) if m == lens.n => {}
        Some(m) => return Err(Error::OrderMismatch(m, lens.n)),
        None => return Err(Error::GroupMismatch("twist must be over Z/n".into())),
    }
    fourier_eta(phi, &lens_delocalized_rho(lens))
}

/// All weight multisets of size k over the units mod n, each sorted
/// ascending, in lexicographic order.
pub fn weight_multisets(n: u32, k: usize) -> Vec<Vec<i64>> {
    let units: Vec<i64> = (1..n as i64).filter(|a| a.gcd(&(n as i64)) == 1).collect();
    let mut out = Vec::new();
    fn rec(units: &[i64], start: usize, k: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..units.len() {
            cur.push(units[i]);
            rec(units, i, k, cur, out);
            cur.pop();
        }
    }
    rec(&units, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Outcome of a nonvanishing search.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found {
        lens: LensSpace,
        value: CyclotomicValue,
        candidates_tried: usize,
    },
    NotFound {
        candidates_tried: usize,
    },
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }
}

fn check_parity_k(parity: Parity, k: usize) -> bool {
    match parity {
        Parity::Plus => k.is_multiple_of(2),
        Parity::Minus => k % 2 == 1,
    }
}

/// Searches lens spaces L(n; a⃗), k ∈ `k_range`, for Φ(f)(ρ_L) ≠ 0.
///
/// Candidates are weight multisets (the rho vector is symmetric in the
/// weights), ordered by k and then lexicographically; at most
/// `weight_budget` are evaluated. The first hit in that order is returned.
pub fn search_nonvanishing(
    n: u32,
    parity: Parity,
    f: &ClassFunction,
    k_range: std::ops::RangeInclusive<usize>,
    weight_budget: usize,
) -> Result<SearchOutcome> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::invalid("n must be odd and ≥ 3"));
    }
    if f.group().cyclic_order() != Some(n) {
        return Err(Error::GroupMismatch(format!("class function is not over Z/{n}")));
    }
    if f.is_zero() {
        return Err(Error::invalid("class function must be nonzero"));
    }
    if !f.in_class0(parity) {
        return Err(Error::invalid(format!("class function is not in Class{}0", sign(parity))));
    }
    let ks: Vec<usize> = k_range.filter(|&k| k >= 1 && check_parity_k(parity, k)).collect();
    if ks.is_empty() {
        return Err(Error::invalid(format!(
            "no k in range compatible with parity {} (plus needs even k, minus odd k)",
            sign(parity)
        )));
    }
    let candidates: Vec<Vec<i64>> = ks
        .iter()
        .flat_map(|&k| weight_multisets(n, k))
        .take(weight_budget)
        .collect();
    let hit = candidates.par_iter().enumerate().find_map_first(|(i, w)| {
        let lens = LensSpace::new(n, w.clone()).ok()?;
        let value = pair_phi(f, &lens_delocalized_rho(&lens)).ok()?;
        (!value.is_zero()).then_some((i, lens, value))
    });
    Ok(match hit {
        Some((i, lens, value)) => SearchOutcome::Found {
            lens,
            value,
            candidates_tried: i + 1,
        },
        None => SearchOutcome::NotFound {
            candidates_tried: candidates.len(),
        },
    })
}

fn sign(p: Parity) -> &'static str {
    match p {
        Parity::Plus => "+",
        Parity::Minus => "-",
    }
}

/// Pairing matrix: one row per lens space, one column per Class±₀ basis function.
pub fn pairing_matrix(n: u32, parity: Parity, family: &[Vec<i64>]) -> Result<Vec<Vec<CyclotomicValue>>> {
    let group = Arc::new(FiniteGroup::cyclic(n)?);
    let basis = class_space_basis(&group, parity);
    family
        .par_iter()
        .map(|w| {
            let lens = LensSpace::new(n, w.clone())?;
            let rho = lens_delocalized_rho(&lens);
            basis.iter().map(|b| pair_phi(b, &rho)).collect()
        })
        .collect()
}

/// Exact rank of the pairing matrix of `family` (weight tuples of length k).
pub fn span_rank(n: u32, parity: Parity, k: usize, family: &[Vec<i64>]) -> Result<usize> {
    if !check_parity_k(parity, k) {
        return Err(Error::invalid(format!(
            "k = {k} incompatible with parity {}",
            sign(parity)
        )));
    }
    if let Some(w) = family.iter().find(|w| w.len() != k) {
        return Err(Error::invalid(format!("weight tuple {w:?} does not have length {k}")));
    }
    if family.is_empty() {
        return Ok(0);
    }
    Ok(linalg::rank(&pairing_matrix(n, parity, family)?))
}

/// Integer-valued virtual characters of Z/n with χ(1) = 0: for each divisor
/// d < n, the Galois-orbit sum ψ_d = Σ_{gcd(k,n)=d} χ_k minus dim(ψ_d)·triv.
/// These span the lattice of such characters.
pub fn integral_r0_generators(n: u32) -> Vec<VirtualRep> {
    let group = Arc::new(FiniteGroup::cyclic(n).expect("n ≥ 1"));
    (1..n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| {
            let mut m = vec![rat(0, 1); n as usize];
            let mut dim = 0;
            for k in 0..n {
                if k.gcd(&n) == d {
                    m[k as usize] = rat(1, 1);
                    dim += 1;
                }
            }
            m[0] = rat(-dim, 1);
            VirtualRep::cyclic_from_multiplicities(group.clone(), m).expect("length n")
        })
        .collect()
}
