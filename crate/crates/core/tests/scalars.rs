use flk_core::scalars::field::{check_primitive_root, multiplicative_order};
use flk_core::scalars::localized::s_generator;
use flk_core::scalars::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_laurent(rng: &mut ChaCha8Rng) -> Laurent {
    let low = rng.gen_range(-4..=4);
    let len = rng.gen_range(0..6);
    let c: Vec<i64> = (0..len).map(|_| rng.gen_range(-5..=5)).collect();
    Laurent::from_ints(low, &c)
}

fn check_hom<F: Field>(f: &F, pairs: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        let a = random_laurent(&mut rng);
        let b = random_laurent(&mut rng);
        let (sa, sb) = (f.specialize(&a).unwrap(), f.specialize(&b).unwrap());
        assert_eq!(f.specialize(&a.add(&b)).unwrap(), f.add(&sa, &sb), "{} sum", f.label());
        assert_eq!(f.specialize(&a.mul(&b)).unwrap(), f.mul(&sa, &sb), "{} product", f.label());
    }
}

#[test]
fn specialization_is_a_ring_homomorphism() {
    check_hom(&Cyclotomic::new(3).unwrap(), 4000, 1);
    check_hom(&Cyclotomic::new(5).unwrap(), 2000, 2);
    check_hom(&PrimeField::new(7, 3).unwrap(), 2000, 3);
    check_hom(&ExtField::new(5, 2, 3).unwrap(), 2000, 4);
}

/// `[n choose k]` at `zeta` via the q-Pascal rule evaluated in the field,
/// never forming a quotient.
fn pascal<F: Field>(f: &F, n: usize, k: usize) -> F::Elem {
    let mut t = vec![vec![f.zero(); n + 1]; n + 1];
    for m in 0..=n {
        t[m][0] = f.one();
        for j in 1..=m {
            let a = f.mul(&f.zeta_pow(-(j as i64)), &t[m - 1][j]);
            let b = f.mul(&f.zeta_pow((m - j) as i64), &t[m - 1][j - 1]);
            t[m][j] = f.add(&a, &b);
        }
    }
    t[n][k].clone()
}

#[test]
fn binomials_against_pascal() {
    let f3 = Cyclotomic::new(3).unwrap();
    let f5 = Cyclotomic::new(5).unwrap();
    for n in 0..9usize {
        for k in 0..=n {
            let b = q_binomial(n as i64, k as u32, 1);
            assert_eq!(f3.specialize(&b).unwrap(), pascal(&f3, n, k), "[{n} choose {k}] at ell=3");
            assert_eq!(f5.specialize(&b).unwrap(), pascal(&f5, n, k), "[{n} choose {k}] at ell=5");
        }
    }
    assert_eq!(q_binomial(2, 1, 1), q_integer(2, 1));
    assert!(f3.is_zero(&f3.specialize(&q_binomial(3, 1, 1)).unwrap()));
}

#[test]
fn quantum_integer_examples() {
    assert_eq!(q_integer(2, 1), Laurent::from_ints(-1, &[1, 0, 1]));
    assert_eq!(q_integer(1, 3), Laurent::one());
    let f = Cyclotomic::new(3).unwrap();
    assert!(f.is_zero(&f.q_integer(3, 1)));
    for n in 0..6 {
        assert_eq!(q_integer(n, 1).bar(), q_integer(n, 1));
    }
}

#[test]
fn lucas_vanishing() {
    for ell in [3u32, 5, 7] {
        let f = Cyclotomic::new(ell).unwrap();
        for a in 0..ell as i64 {
            for b in 0..ell as i64 {
                let v = f.specialize(&q_binomial(a + b, a as u32, 1)).unwrap();
                if a + b >= ell as i64 {
                    assert!(f.is_zero(&v), "ell={ell} a={a} b={b}");
                } else {
                    assert!(!f.is_zero(&v), "ell={ell} a={a} b={b}");
                }
            }
        }
    }
}

#[test]
fn localized_denominators_specialize() {
    for ell in [3u32, 5, 7] {
        let f = Cyclotomic::new(ell).unwrap();
        for k in [2, 3] {
            if ell == 3 && k == 3 {
                continue;
            }
            let s = f.specialize(&s_generator(k)).unwrap();
            assert!(!f.is_zero(&s));
        }
        let x = LocalizedScalar::from_ratfunc(&RatFunc::new(Laurent::one(), s_generator(2))).unwrap();
        let v = f.specialize_localized(&x).unwrap();
        assert!(f.is_one(&f.mul(&v, &f.specialize(&s_generator(2)).unwrap())));
    }
    // (q^3 - q^-3) vanishes at a cube root of unity.
    let f = Cyclotomic::new(3).unwrap();
    let x = LocalizedScalar::from_ratfunc(&RatFunc::new(Laurent::one(), s_generator(3))).unwrap();
    assert!(f.specialize_localized(&x).is_err());
}

#[test]
fn finite_fields() {
    assert_eq!(multiplicative_order(7, 3), Some(1));
    assert_eq!(multiplicative_order(2, 5), Some(4));
    for (p, n, ell) in [(2u64, 2u32, 3u32), (5, 2, 3), (2, 4, 5), (3, 4, 5)] {
        let f = ExtField::new(p, n, ell).unwrap();
        assert!(check_primitive_root(&f));
        let mut rng = ChaCha8Rng::seed_from_u64(p * 100 + n as u64);
        for _ in 0..50 {
            let a = f.random(&mut rng);
            if !f.is_zero(&a) {
                assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            }
        }
    }
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in prop::collection::vec(-6i64..6, 0..5), b in prop::collection::vec(-6i64..6, 0..5),
                           c in prop::collection::vec(-6i64..6, 0..5), la in -3i64..3, lb in -3i64..3, lc in -3i64..3) {
        let (a, b, c) = (Laurent::from_ints(la, &a), Laurent::from_ints(lb, &b), Laurent::from_ints(lc, &c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn canonical_text_roundtrip(a in prop::collection::vec(-9i64..9, 0..6), low in -5i64..5, den in 1i64..7) {
        let l = Laurent::from_ints(low, &a).scale(&Q::new(1.into(), den.into()));
        let s = l.to_canonical_string();
        prop_assert_eq!(Laurent::parse_canonical(&s).unwrap(), l);
    }

    #[test]
    fn ratfunc_field_axioms(a in prop::collection::vec(-4i64..4, 1..4), b in prop::collection::vec(-4i64..4, 1..4)) {
        let x = RatFunc::new(Laurent::from_ints(0, &a), q_integer(2, 1));
        let y = RatFunc::new(Laurent::from_ints(-1, &b), q_integer(3, 1));
        prop_assert_eq!(x.add(&y).sub(&y), x.clone());
        if !y.is_zero() {
            prop_assert_eq!(x.mul(&y).div(&y), x);
        }
    }
}
