use std::collections::HashMap;

use proptest::prelude::*;

use dimerweb::poly::{rat, Monomial, Polynomial, Rational};
use dimerweb::web::Web;

const VARS: [&str; 3] = ["a", "b", "c"];

fn poly() -> impl Strategy<Value = Polynomial> {
    let term = (-5i64..=5, 1i64..=3, prop::collection::vec(0u32..3, 3));
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(n, d, exps)| {
                let m = Monomial::from_pairs(VARS.iter().copied().zip(exps));
                Polynomial::term(rat(n, d), m)
            })
            .sum()
    })
}

fn point() -> impl Strategy<Value = HashMap<String, Rational>> {
    prop::collection::vec((-4i64..=4, 1i64..=3), 3)
        .prop_map(|v| VARS.iter().zip(v).map(|(x, (n, d))| (x.to_string(), rat(n, d))).collect())
}

proptest! {
    #[test]
    fn ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(Polynomial::parse(&p.canonical_string()).unwrap(), p);
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(), q in poly(), at in point()) {
        let (x, y) = (p.evaluate(&at).unwrap(), q.evaluate(&at).unwrap());
        prop_assert_eq!((&p + &q).evaluate(&at).unwrap(), &x + &y);
        prop_assert_eq!((&p * &q).evaluate(&at).unwrap(), &x * &y);
    }

    #[test]
    fn reduction_ignores_order(seed in any::<u64>(), loops in 0u32..3) {
        use rand::SeedableRng;
        let square = Web::parse("web n=4; b v1(1,v2,v4); w v2(2,v3,v1); b v3(3,v4,v2); w v4(4,v1,v3)").unwrap();
        let w = square.with_loops(loops);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(w.reduce_random(&mut rng), w.reduce());
    }
}
