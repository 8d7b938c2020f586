use nalgebra::DMatrix;
use proptest::prelude::*;

use etarho::numeric::rational::rat;
use etarho::numeric::{cyclo_conj, cyclo_embed, linalg, CyclotomicValue};

fn element(n: u32) -> impl Strategy<Value = CyclotomicValue> {
    prop::collection::vec((-20i64..=20, 1i64..=6), n as usize).prop_map(move |cs| {
        CyclotomicValue::from_exponents(n, cs.into_iter().enumerate().map(|(k, (p, q))| (k as i64, rat(p, q))))
    })
}

fn triple() -> impl Strategy<Value = (CyclotomicValue, CyclotomicValue, CyclotomicValue)> {
    (1u32..=24).prop_flat_map(|n| (element(n), element(n), element(n)))
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    let scale = 1.0 + a.0.abs() + a.1.abs();
    (a.0 - b.0).abs() + (a.1 - b.1).abs() <= 1e-9 * scale
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, CyclotomicValue::one(a.order()));
        }
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism((a, b, _c) in triple()) {
        prop_assert_eq!(cyclo_conj(&cyclo_conj(&a)), a.clone());
        prop_assert_eq!(cyclo_conj(&(&a * &b)), &cyclo_conj(&a) * &cyclo_conj(&b));
        prop_assert!((&a - &cyclo_conj(&a)).is_purely_imaginary());
        prop_assert!((&a + &cyclo_conj(&a)).is_real());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn embedding_is_multiplicative((a, b, _c) in triple()) {
        let ea = cyclo_embed(&a, 128);
        let eb = cyclo_embed(&b, 128);
        let prod = cyclo_embed(&(&a * &b), 128).to_c64();
        prop_assert!(close(prod, ea.mul(&eb).to_c64()), "{:?} vs {:?}", prod, ea.mul(&eb).to_c64());
        let (re, im) = a.to_c64();
        prop_assert!(close(ea.to_c64(), (re, im)));
    }
}

/// Complex rank through the real 2×2 block form and singular values.
fn float_rank(rows: &[Vec<CyclotomicValue>]) -> usize {
    let (m, k) = (rows.len(), rows[0].len());
    let mut real = DMatrix::<f64>::zeros(2 * m, 2 * k);
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let (re, im) = x.to_c64();
            real[(2 * i, 2 * j)] = re;
            real[(2 * i, 2 * j + 1)] = -im;
            real[(2 * i + 1, 2 * j)] = im;
            real[(2 * i + 1, 2 * j + 1)] = re;
        }
    }
    let sv = real.singular_values();
    let top = sv.max();
    sv.iter().filter(|&&s| s > 1e-9 * top.max(1.0)).count() / 2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_rank_matches_singular_values(
        n in 1u32..=12,
        shape in (1usize..=4, 1usize..=4),
        seed in prop::collection::vec((-3i64..=3, 0i64..12), 16),
        dup in any::<bool>(),
    ) {
        let (m, k) = shape;
        let mut rows: Vec<Vec<CyclotomicValue>> = (0..m)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let (c, e) = seed[(i * 4 + j) % 16];
                        &CyclotomicValue::zeta_pow(n, e) * &CyclotomicValue::from_int(n, c)
                    })
                    .collect()
            })
            .collect();
        if dup && m > 1 {
            // force a dependency: last row = ζ·first row
            let z = CyclotomicValue::zeta_pow(n, 1);
            rows[m - 1] = rows[0].iter().map(|x| &z * x).collect();
        }
        prop_assert_eq!(linalg::rank(&rows), float_rank(&rows));
    }
}
