use std::sync::Arc;

use proptest::prelude::*;

use etarho::chars::{
    class_space_basis, fourier_eta, is_in_r0, pair_phi, rank_minus, rank_plus, tau_orbits, ClassFunction,
    FiniteGroup, Parity, RhoVector, VirtualRep,
};
use etarho::numeric::rational::rat;
use etarho::numeric::{linalg, CyclotomicValue};

fn cyc(n: u32) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(n).unwrap())
}

fn rho_from(g: &Arc<FiniteGroup>, coeffs: &[(i64, i64)]) -> RhoVector {
    let n = g.exponent();
    let values = (0..g.num_classes())
        .map(|c| {
            CyclotomicValue::from_exponents(
                n,
                (0..n as usize).map(|k| {
                    let (p, q) = coeffs[(c * 7 + k) % coeffs.len()];
                    (k as i64, rat(p, q))
                }),
            )
        })
        .collect();
    RhoVector::new(g.clone(), values).unwrap()
}

fn multiplicities(n: u32, m: &[(i64, i64)]) -> Vec<etarho::numeric::Rational> {
    (0..n as usize).map(|k| rat(m[k % m.len()].0, m[k % m.len()].1)).collect()
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 1..12)
}

#[test]
fn class_space_dimensions_add_up() {
    let mut groups: Vec<Arc<FiniteGroup>> = (1..=30).map(cyc).collect();
    groups.push(Arc::new(FiniteGroup::symmetric(3).unwrap()));
    groups.push(Arc::new(FiniteGroup::symmetric(4).unwrap()));
    for g in groups {
        for c in 0..g.num_classes() {
            assert_eq!(g.tau(g.tau(c)), c);
        }
        assert!(tau_orbits(&g).iter().all(|o| o.len() == 1 || o.len() == 2));
        let plus = class_space_basis(&g, Parity::Plus);
        let minus = class_space_basis(&g, Parity::Minus);
        let rows: Vec<Vec<CyclotomicValue>> = plus.iter().chain(&minus).map(|f| f.values().to_vec()).collect();
        let rank = if rows.is_empty() { 0 } else { linalg::rank(&rows) };
        assert_eq!(rank, g.num_classes() - 1);
        assert_eq!(plus.len(), rank_plus(&g));
        assert_eq!(minus.len(), rank_minus(&g));
        for f in &plus {
            assert!(f.in_class0(Parity::Plus));
        }
        for f in &minus {
            assert!(f.in_class0(Parity::Minus));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fourier_eta_is_bilinear_and_matches_pairing(
        n in 1u32..=24, m1 in coeffs(), m2 in coeffs(), r1 in coeffs(), r2 in coeffs(), s in -5i64..=5,
    ) {
        let g = cyc(n);
        let p1 = VirtualRep::cyclic_from_multiplicities(g.clone(), multiplicities(n, &m1)).unwrap();
        let p2 = VirtualRep::cyclic_from_multiplicities(g.clone(), multiplicities(n, &m2)).unwrap();
        let x = rho_from(&g, &r1);
        let y = rho_from(&g, &r2);
        let f = |p: &VirtualRep, r: &RhoVector| fourier_eta(p, r).unwrap();
        prop_assert_eq!(f(&p1, &x), pair_phi(p1.character(), &x).unwrap());
        let sum = p1.add(&p2).unwrap();
        prop_assert_eq!(f(&sum, &x), &f(&p1, &x) + &f(&p2, &x));
        let xy = x.add(&y).unwrap();
        prop_assert_eq!(f(&p1, &xy), &f(&p1, &x) + &f(&p1, &y));
        let scaled = p1.scale(&rat(s, 1));
        prop_assert_eq!(f(&scaled, &x), f(&p1, &x).scale(&rat(s, 1)));
    }

    #[test]
    fn opposite_parities_are_orthogonal(n in 2u32..=24, m in coeffs(), r in coeffs()) {
        let g = cyc(n);
        // symmetrize χ and antisymmetrize ρ
        let base = VirtualRep::cyclic_from_multiplicities(g.clone(), multiplicities(n, &m)).unwrap();
        let ch = base.character();
        let vals: Vec<CyclotomicValue> = (0..n as usize)
            .map(|c| if c == 0 { CyclotomicValue::zero(n) } else { ch.value(c) + ch.value(g.tau(c)) })
            .collect();
        let phi = VirtualRep::from_character(ClassFunction::new(g.clone(), vals).unwrap());
        prop_assert!(is_in_r0(&phi, Parity::Plus));
        let x = rho_from(&g, &r);
        let anti: Vec<CyclotomicValue> = (0..n as usize).map(|c| x.value(c) - x.value(g.tau(c))).collect();
        let rho = RhoVector::new(g.clone(), anti).unwrap();
        prop_assert!(rho.parity().antisymmetric);
        prop_assert!(fourier_eta(&phi, &rho).unwrap().is_zero());
    }
}

#[test]
fn test_characters_have_full_rank() {
    for n in 1..=24u32 {
        let g = cyc(n);
        let rows: Vec<Vec<CyclotomicValue>> = (1..=n / 2)
            .map(|k| {
                let mut m = vec![rat(0, 1); n as usize];
                m[0] = rat(-2, 1);
                m[k as usize] += rat(1, 1);
                m[((n - k) % n) as usize] += rat(1, 1);
                let phi = VirtualRep::cyclic_from_multiplicities(g.clone(), m).unwrap();
                assert!(is_in_r0(&phi, Parity::Plus));
                phi.character().values().to_vec()
            })
            .collect();
        let rank = if rows.is_empty() { 0 } else { linalg::rank(&rows) };
        assert_eq!(rank, rank_plus(&g), "n = {n}");
    }
}
