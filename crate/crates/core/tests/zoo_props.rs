use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use etarho::verify::random_word;
use etarho::zoo::{class_ball, conjugate_of_one_test, growth_classify, GroupElement, Letter, ZooGroup};

fn variants() -> Vec<ZooGroup> {
    vec![
        ZooGroup::Cyclic(7),
        ZooGroup::Lamplighter(2),
        ZooGroup::Lamplighter(3),
        ZooGroup::QSemidirect,
        ZooGroup::HnnShift,
        ZooGroup::parse("product(lamplighter:2,qsemidirect)").unwrap(),
    ]
}

#[test]
fn normal_forms_are_sound() {
    for (v, g) in variants().into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(17 + v as u64);
        for _ in 0..10_000 {
            let u = random_word(&g, &mut rng, 10);
            let w = random_word(&g, &mut rng, 10);
            let uw: Vec<Letter> = u.iter().chain(&w).cloned().collect();
            let nu = g.normalize(&u).unwrap();
            let nw = g.normalize(&w).unwrap();
            assert_eq!(g.normalize(&uw).unwrap(), g.mul(&nu, &nw).unwrap(), "{g}");
            assert_eq!(g.mul(&nu, &g.inverse(&nu).unwrap()).unwrap(), g.identity());
            assert_eq!(g.parse_element(&nu.to_string()).unwrap(), nu, "{g}: {nu}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn britton_reduction_leaves_no_pinch(seed in any::<u64>(), len in 0usize..40) {
        let g = ZooGroup::HnnShift;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word = random_word(&g, &mut rng, len);
        let stable: i64 = word.iter().map(|l| if let Letter::T(k) = l { k.abs() } else { 0 }).sum();
        let exponent: i64 = word.iter().map(|l| if let Letter::T(k) = l { *k } else { 0 }).sum();
        match g.normalize(&word).unwrap() {
            GroupElement::Hnn(w) => {
                prop_assert!(!w.has_pinch());
                prop_assert!(w.t_length() as i64 <= stable);
                prop_assert_eq!(w.t_exponent(), exponent);
            }
            other => prop_assert!(false, "unexpected {}", other),
        }
    }
}

#[test]
fn balls_grow_monotonically_and_reproducibly() {
    let cases = [
        (ZooGroup::Lamplighter(2), "lamp:0", 6),
        (ZooGroup::Lamplighter(2), "s", 5),
        (ZooGroup::QSemidirect, "q:1", 6),
        (ZooGroup::HnnShift, "q:1", 4),
        (ZooGroup::Cyclic(5), "c:2", 3),
    ];
    for (g, h, r) in cases {
        let h = g.parse_element(h).unwrap();
        let mut prev: Option<etarho::zoo::ClassBall> = None;
        for radius in 0..=r {
            let ball = class_ball(&g, &h, radius).unwrap();
            if let Some(p) = &prev {
                assert!(p.elements.keys().all(|x| ball.contains(x)), "{g} radius {radius}");
                assert_eq!(&ball.counts()[..p.counts().len()], &p.counts()[..]);
            }
            prev = Some(ball);
        }
    }
    let g = ZooGroup::Lamplighter(2);
    let h = g.parse_element("lamp:0").unwrap();
    assert_eq!(growth_classify(&g, &h, 8).unwrap(), growth_classify(&g, &h, 8).unwrap());
}

#[test]
fn kernel_conjugates_of_one_are_positive() {
    for g in [ZooGroup::QSemidirect, ZooGroup::HnnShift] {
        let one = g.parse_element("q:1").unwrap();
        let ball = class_ball(&g, &one, 5).unwrap();
        for x in ball.elements.keys() {
            if let Ok(ok) = conjugate_of_one_test(x) {
                assert!(ok, "{g}: {x}");
            }
        }
    }
}
