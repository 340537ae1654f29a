use std::sync::Arc;

use flk_core::genericuq::Side;
use flk_core::kernelalg::*;
use flk_core::rootdata::RootType;
use flk_core::scalars::{q_binomial, Field, FieldOps, PrimeField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f7() -> PrimeField {
    PrimeField::new(7, 3).unwrap()
}

#[test]
fn zeta_binomials_match_laurent_specialization() {
    let f = f7();
    let b = ZetaBinomials::new(&f, 40, 12);
    for n in -15i64..25 {
        for t in 0..=12u32 {
            let want = f.specialize(&q_binomial(n, t, 1)).unwrap();
            assert_eq!(b.get(&f, n, t), want, "[{n}, {t}]");
        }
    }
}

#[test]
fn zeta_binomials_are_periodic_modulo_the_bound() {
    // Values on weights only depend on the weight modulo p^r ell.
    let f = f7();
    let b = ZetaBinomials::new(&f, 100, 20);
    for n in -40i64..40 {
        for t in 0..21u32 {
            assert_eq!(b.get(&f, n, t), b.get(&f, n + 21, t), "[{n}, {t}]");
            if t < 3 {
                assert_eq!(b.get(&f, n, t), b.get(&f, n + 3, t));
            }
        }
    }
}

#[test]
fn dimensions() {
    let f = f7();
    assert_eq!(RankOneKernel::build(Kind::G, 1, f.clone()).unwrap().dim(), 9261);
    assert_eq!(RankOneKernel::build(Kind::Root(0, Side::F), 1, f.clone()).unwrap().dim(), 21);
    assert_eq!(RankOneKernel::build(Kind::BMinus, 1, f.clone()).unwrap().dim(), 441);
    assert_eq!(RankOneKernel::build(Kind::G, 0, f.clone()).unwrap().dim(), 27);
    let c = flk_core::scalars::Cyclotomic::new(3).unwrap();
    assert!(RankOneKernel::build(Kind::G, 1, c).is_err());
}

fn factorial_at_zeta(f: &PrimeField, n: u32) -> u64 {
    (1..=n as i64).fold(f.one(), |acc, s| f.mul(&acc, &f.q_integer(s, 1)))
}

#[test]
fn rank_zero_matches_the_pbw_engine() {
    // F^{(a)} e_c E^{(b)} = F^a (1/ell sum_j zeta^{-cj} K^j) E^b / ([a]! [b]!).
    let f = f7();
    let z = Arc::new(ZetaData::new(RootType::A1, None, f.clone()).unwrap());
    let pbw = KernelAlgebra::build(Kind::G, 0, z).unwrap();
    let div = RankOneKernel::build(Kind::G, 0, f.clone()).unwrap();
    let third = f.inv(&f.from_i64(3)).unwrap();
    let phi = |x: &DElem<u64>| -> Elem<u64> {
        let mut out: Elem<u64> = Elem::new();
        for (m, c) in x {
            let s = f.div(&f.mul(c, &third), &f.mul(&factorial_at_zeta(&f, m.f), &factorial_at_zeta(&f, m.e)));
            for j in 0..3u32 {
                let key = Mono { f: vec![m.f], k: vec![j], e: vec![m.e] };
                let v = f.mul(&s, &f.zeta_pow(-(m.c as i64) * j as i64));
                let t = out.get(&key).map(|x| f.add(x, &v)).unwrap_or(v);
                if f.is_zero(&t) {
                    out.remove(&key);
                } else {
                    out.insert(key, t);
                }
            }
        }
        out
    };
    for &x in &div.basis {
        for &y in &div.basis {
            let xy = div.multiply(&div.mono_elem(x), &div.mono_elem(y));
            let want = pbw.multiply(&phi(&div.mono_elem(x)), &phi(&div.mono_elem(y)));
            assert_eq!(phi(&xy), want, "{x:?} * {y:?}");
        }
    }
    assert_eq!(phi(&div.one()), pbw.one());
}

#[test]
fn higher_kernel_is_associative() {
    let f = f7();
    let alg = RankOneKernel::build(Kind::G, 1, f).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let pick = |rng: &mut ChaCha8Rng| alg.mono_elem(alg.basis[rng.gen_range(0..alg.dim())]);
        let (x, y, w) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let l = alg.multiply(&alg.multiply(&x, &y), &w);
        let r = alg.multiply(&x, &alg.multiply(&y, &w));
        assert_eq!(l, r);
    }
    // Generators against each other, where the collection formula matters most.
    let gens: Vec<DElem<u64>> = alg.generators().into_iter().take(4).map(|g| alg.left_gen(g, &alg.one())).collect();
    for x in &gens {
        for y in &gens {
            for w in &gens {
                let l = alg.multiply(&alg.multiply(x, y), w);
                let r = alg.multiply(x, &alg.multiply(y, w));
                assert_eq!(l, r);
            }
        }
    }
}

#[test]
fn higher_kernel_relations() {
    let f = f7();
    let alg = RankOneKernel::build(Kind::G, 1, f.clone()).unwrap();
    let one = alg.one();
    let g = |x| alg.left_gen(x, &one);
    let e = g(AlgGen::EDiv(0, 1));
    let ff = g(AlgGen::FDiv(0, 1));
    let k = g(AlgGen::K(0));
    let kinv = alg.multiply(&k, &k);
    // [E, F] = (K - K^{-1}) / (zeta - zeta^{-1}).
    let ef = alg.multiply(&e, &ff);
    let fe = alg.multiply(&ff, &e);
    let scale = f.inv(&f.sub(&f.zeta(), &f.zeta_pow(-1))).unwrap();
    for m in alg.basis.iter().filter(|m| m.f == 0 && m.e == 0) {
        let lhs = f.sub(ef.get(m).unwrap_or(&0), fe.get(m).unwrap_or(&0));
        let rhs = f.mul(&scale, &f.sub(k.get(m).unwrap_or(&0), kinv.get(m).unwrap_or(&0)));
        assert_eq!(lhs, rhs, "{m:?}");
    }
    // E^3 = 0 while E^{(3)} survives, and (E^{(3)})^7 = 0.
    let e3 = alg.multiply(&alg.multiply(&e, &e), &e);
    assert!(e3.is_empty());
    let ed = g(AlgGen::EDiv(0, 3));
    assert!(!ed.is_empty());
    let mut p = one.clone();
    for i in 0..7 {
        assert_eq!(p.is_empty(), i == 7);
        p = alg.multiply(&ed, &p);
    }
    assert!(p.is_empty());
}

#[test]
fn root_subalgebra_is_truncated_polynomial_ring() {
    let f = f7();
    let alg = RankOneKernel::build(Kind::Root(0, Side::F), 1, f.clone()).unwrap();
    let one = alg.one();
    let y = alg.left_gen(AlgGen::FDiv(0, 1), &one);
    let x = alg.left_gen(AlgGen::FDiv(0, 3), &one);
    assert_eq!(alg.multiply(&x, &y), alg.multiply(&y, &x));
    let pow = |a: &DElem<u64>, n: u32| (0..n).fold(one.clone(), |acc, _| alg.multiply(a, &acc));
    assert!(pow(&y, 3).is_empty());
    assert!(pow(&x, 7).is_empty());
    assert!(!pow(&x, 6).is_empty());
    // Y^i X^j for i < 3, j < 7 are linearly independent, hence a basis.
    let mut basis = flk_core::linalg::EchelonBasis::new(alg.dim());
    for i in 0..3 {
        for j in 0..7 {
            let v = alg.multiply(&pow(&y, i), &pow(&x, j));
            let mut dense = vec![0u64; alg.dim()];
            for (m, c) in v {
                dense[alg.index[&m]] = c;
            }
            assert!(basis.insert(&f, &dense));
        }
    }
    assert_eq!(basis.len(), 21);
}

#[test]
fn higher_integrals() {
    let f = f7();
    let root = RankOneKernel::build(Kind::Root(0, Side::F), 1, f.clone()).unwrap();
    let inv = root.left_invariants();
    assert_eq!(inv.len(), 1);
    assert_eq!(inv[0].keys().collect::<Vec<_>>(), vec![&DMono { f: 20, c: 0, e: 0 }]);
    let g = RankOneKernel::build(Kind::G, 1, f.clone()).unwrap();
    let inv = g.left_invariants();
    assert_eq!(inv.len(), 1);
    // Weight 2(p ell - 1) = 40 = 19 mod 21.
    assert_eq!(inv[0].keys().collect::<Vec<_>>(), vec![&DMono { f: 20, c: 19, e: 20 }]);
    let b = RankOneKernel::build(Kind::BMinus, 1, f).unwrap();
    let inv = b.left_invariants();
    assert_eq!(inv.len(), 1);
    assert_eq!(inv[0].keys().collect::<Vec<_>>(), vec![&DMono { f: 20, c: 19, e: 0 }]);
}
