use std::sync::Arc;

use flk_core::genericuq::words::poly_mul;
use flk_core::genericuq::{GenericUq, Mixed, Pbw, Side};
use flk_core::kernelalg::*;
use flk_core::rootdata::{RootDatum, RootType};
use flk_core::scalars::{Cyclotomic, Field, FieldOps, PrimeField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zdata<F: Field>(t: RootType, f: F) -> Arc<ZetaData<F>> {
    Arc::new(ZetaData::new(t, None, f).unwrap())
}

#[test]
fn specialized_leading_coefficients() {
    for t in [RootType::A2, RootType::B2] {
        let f = Cyclotomic::new(3).unwrap();
        let z = zdata(t, f.clone());
        let g = &z.order.gammas;
        for side in [Side::E, Side::F] {
            for i in 0..z.n() {
                for j in i + 1..z.n() {
                    let e = z.table.entry(side, i, j).unwrap();
                    assert_eq!(e.leading, f.zeta_pow(z.datum.inner(&g[i], &g[j])));
                }
            }
        }
        assert!(tables_mirror(&z));
    }
    // Simply laced tails carry no denominators at all.
    let z = zdata(RootType::A2, PrimeField::new(7, 3).unwrap());
    for e in &z.generic_table.e_entries {
        for (_, c) in &e.tail {
            assert_eq!(c.exponents(), [0, 0]);
        }
    }
    let b2 = zdata(RootType::B2, PrimeField::new(7, 3).unwrap());
    assert!(tables_mirror(&b2));
}

#[test]
fn dimensions() {
    let f = PrimeField::new(7, 3).unwrap();
    let a1 = zdata(RootType::A1, f.clone());
    let a2 = zdata(RootType::A2, f.clone());
    assert_eq!(KernelAlgebra::build(Kind::G, 0, a1.clone()).unwrap().dim(), 27);
    assert_eq!(KernelAlgebra::build(Kind::UMinus, 0, a2.clone()).unwrap().dim(), 27);
    assert_eq!(KernelAlgebra::build(Kind::BMinus, 0, a2.clone()).unwrap().dim(), 243);
    assert_eq!(KernelAlgebra::build(Kind::G, 0, a2.clone()).unwrap().dim(), 6561);
    for m in 1..=3 {
        assert_eq!(KernelAlgebra::build(Kind::Am(m), 0, a2.clone()).unwrap().dim(), 3usize.pow(m as u32));
    }
    assert_eq!(KernelAlgebra::build(Kind::Root(1, Side::F), 0, a2.clone()).unwrap().dim(), 3);
    let c = zdata(RootType::A1, Cyclotomic::new(3).unwrap());
    assert!(matches!(KernelAlgebra::build(Kind::G, 1, c), Err(flk_core::Error::Config(_))));
}

#[test]
fn truncated_products_match_generic_expansion() {
    let f = Cyclotomic::new(3).unwrap();
    for t in [RootType::A2, RootType::B2] {
        let datum = RootDatum::new(t);
        let word = datum.default_w0_word();
        let pbw = Pbw::new(GenericUq::with_height_bound(datum, 7), &word).unwrap();
        let z = Arc::new(ZetaData::from_pbw(&pbw, f.clone()).unwrap());
        let half = HalfAlgebra::new(z.clone(), Side::F);
        let basis = half.basis(&(0..z.n()).collect::<Vec<_>>());
        let gammas = z.order.gammas.clone();
        let ht = |a: &[u32]| -> i64 { flk_core::genericuq::pbw::exps_weight(&gammas, a).iter().sum() };
        let mut checked = 0;
        for a in &basis {
            for b in &basis {
                if ht(a) + ht(b) > 7 || ht(a) == 0 || ht(b) == 0 {
                    continue;
                }
                let p = poly_mul(&pbw.monomial(Side::F, a).unwrap(), &pbw.monomial(Side::F, b).unwrap());
                let generic = pbw.expand(Side::F, &p).unwrap();
                let mut expect = SVec::new();
                for (m, c) in generic {
                    if m.iter().all(|&x| x < 3) {
                        let c = f.specialize_ratfunc(&c).unwrap();
                        if !f.is_zero(&c) {
                            expect.insert(m, c);
                        }
                    }
                }
                assert_eq!(half.mul_mono(a, b), expect, "{t} {a:?} {b:?}");
                checked += 1;
            }
        }
        assert!(checked > 20);
        // Root vectors through the simple generators agree with the basis.
        for k in 0..z.n() {
            let mut unit = vec![0; z.n()];
            unit[k] = 1;
            let v = half.eval_word_poly(&z.f_roots[k]);
            assert_eq!(v.len(), 1);
            assert_eq!(v.get(&unit), Some(&f.one()));
        }
    }
}

#[test]
fn e_times_f_matches_generic_normal_order() {
    let f = Cyclotomic::new(3).unwrap();
    let datum = RootDatum::new(RootType::A2);
    let word = datum.default_w0_word();
    let pbw = Pbw::new(GenericUq::with_height_bound(datum, 6), &word).unwrap();
    let z = Arc::new(ZetaData::from_pbw(&pbw, f.clone()).unwrap());
    let g = KernelAlgebra::build(Kind::G, 0, z.clone()).unwrap();
    let ell = 3i64;
    for m in g.basis.iter().filter(|m| m.k.iter().all(|&x| x == 0) && m.e.iter().all(|&x| x == 0)) {
        let h: u32 = m.f.iter().sum();
        if h > 3 {
            continue;
        }
        for i in 0..2 {
            let fm = pbw.monomial(Side::F, &m.f).unwrap();
            let x = pbw.uq.mul(&Mixed::e(2, i), &Mixed::from_f_poly(2, &fm)).unwrap();
            let mut expect = Elem::new();
            for (a, mu, b, c) in pbw.expand_mixed(&x).unwrap() {
                if a.iter().chain(&b).any(|&x| x >= 3) {
                    continue;
                }
                let k: Vec<u32> = mu.iter().map(|x| x.rem_euclid(ell) as u32).collect();
                let c = f.specialize_ratfunc(&c).unwrap();
                let key = Mono { f: a, k, e: b };
                let s = match expect.get(&key) {
                    Some(y) => f.add(y, &c),
                    None => c,
                };
                if f.is_zero(&s) {
                    expect.remove(&key);
                } else {
                    expect.insert(key, s);
                }
            }
            assert_eq!(g.left_gen_mono(AlgGen::E(i), m), expect, "E{} * {m:?}", i + 1);
        }
    }
}

fn check_basis_roundtrip<F: Field>(alg: &KernelAlgebra<F>, limit: usize) {
    let step = (alg.dim() / limit).max(1);
    for m in alg.basis.iter().step_by(step) {
        assert_eq!(alg.apply_mono(m, &alg.one()), alg.mono_elem(m), "{}: {m:?}", alg.kind);
    }
}

#[test]
fn basis_monomials_are_products_of_generators() {
    let f = PrimeField::new(7, 3).unwrap();
    for t in [RootType::A1, RootType::A2, RootType::B2] {
        let z = zdata(t, f.clone());
        for kind in [Kind::UMinus, Kind::UPlus, Kind::BMinus, Kind::BPlus, Kind::G] {
            let alg = KernelAlgebra::build(kind, 0, z.clone()).unwrap();
            check_basis_roundtrip(&alg, 300);
        }
    }
}

#[test]
fn associativity() {
    let f = PrimeField::new(7, 3).unwrap();
    // Exhaustive for the small algebras.
    let a1 = zdata(RootType::A1, f.clone());
    let a2 = zdata(RootType::A2, f.clone());
    for alg in [
        KernelAlgebra::build(Kind::G, 0, a1.clone()).unwrap(),
        KernelAlgebra::build(Kind::UMinus, 0, a2.clone()).unwrap(),
        KernelAlgebra::build(Kind::UPlus, 0, a2.clone()).unwrap(),
    ] {
        let d = alg.dim();
        let mut triples = Vec::new();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    triples.push((a, b, c));
                }
            }
        }
        alg.check_associative(&triples).unwrap();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (kind, count) in [(Kind::BMinus, 1000), (Kind::G, 150)] {
        let alg = KernelAlgebra::build(kind, 0, a2.clone()).unwrap();
        let d = alg.dim();
        let triples: Vec<_> = (0..count).map(|_| (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d))).collect();
        alg.check_associative(&triples).unwrap();
    }
    let b2 = zdata(RootType::B2, f.clone());
    let alg = KernelAlgebra::build(Kind::UMinus, 0, b2).unwrap();
    let d = alg.dim();
    let triples: Vec<_> = (0..1000).map(|_| (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d))).collect();
    alg.check_associative(&triples).unwrap();
}

#[test]
fn weights_are_additive() {
    let f = PrimeField::new(7, 3).unwrap();
    let z = zdata(RootType::B2, f);
    let alg = KernelAlgebra::build(Kind::UPlus, 0, z).unwrap();
    for a in &alg.basis {
        for b in alg.basis.iter().step_by(7) {
            let p = alg.multiply(&alg.mono_elem(a), &alg.mono_elem(b));
            let w: Vec<i64> = alg.mono_weight(a).iter().zip(alg.mono_weight(b)).map(|(x, y)| x + y).collect();
            for m in p.keys() {
                assert_eq!(alg.mono_weight(m), w);
            }
        }
    }
}

#[test]
fn collection_examples() {
    let f = Cyclotomic::new(3).unwrap();
    let z = zdata(RootType::A2, f.clone());
    let alg = KernelAlgebra::build(Kind::UMinus, 0, z.clone()).unwrap();
    for k in 0..3 {
        let x = alg.gen_elem(AlgGen::FRoot(k));
        let x2 = alg.multiply(&x, &x);
        let mut m = alg.unit_mono();
        m.f[k] = 2;
        assert_eq!(x2, alg.mono_elem(&m));
        assert!(alg.multiply(&x2, &x).is_empty());
    }
    // [E_i, F_j] = delta_ij (K_i - K_i^{-1}) / (zeta_i - zeta_i^{-1}).
    let g = KernelAlgebra::build(Kind::G, 0, z.clone()).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let e = g.gen_elem(AlgGen::E(i));
            let fj = g.gen_elem(AlgGen::F(j));
            let mut c = g.multiply(&e, &fj);
            for (m, v) in g.multiply(&fj, &e) {
                let s = f.sub(c.get(&m).unwrap_or(&f.zero()), &v);
                if f.is_zero(&s) {
                    c.remove(&m);
                } else {
                    c.insert(m, s);
                }
            }
            if i != j {
                assert!(c.is_empty());
                continue;
            }
            let d = f.sub(&f.zeta(), &f.inv(&f.zeta()).unwrap());
            let inv = f.inv(&d).unwrap();
            let mut kp = g.unit_mono();
            kp.k[i] = 1;
            let mut km = g.unit_mono();
            km.k[i] = 2;
            let mut expect = Elem::new();
            expect.insert(kp, inv.clone());
            expect.insert(km, f.neg(&inv));
            assert_eq!(c, expect);
        }
    }
}

#[test]
fn integrals_span_invariants() {
    let f = PrimeField::new(7, 3).unwrap();
    for t in [RootType::A1, RootType::A2, RootType::B2] {
        let z = zdata(t, f.clone());
        for m in 1..=z.n() {
            let alg = KernelAlgebra::build(Kind::Am(m), 0, z.clone()).unwrap();
            let rep = socle_check(&alg).unwrap();
            assert!(rep.spanned_by_integral, "{t} m={m}");
            assert_eq!(integral(&alg).unwrap().mono.f.iter().filter(|&&x| x == 2).count(), m);
        }
    }
}

#[test]
fn normality() {
    let f = PrimeField::new(7, 3).unwrap();
    for t in [RootType::A2, RootType::B2] {
        let z = zdata(t, f.clone());
        for m in 1..z.n() {
            assert!(normality_check(&z, m).unwrap(), "{t} m={m}");
        }
    }
}

#[test]
fn omega_mirrors_kinds() {
    let f = PrimeField::new(7, 3).unwrap();
    let z = zdata(RootType::A2, f);
    let um = KernelAlgebra::build(Kind::UMinus, 0, z).unwrap();
    let up = omega_algebra(&um).unwrap();
    assert_eq!(up.kind, Kind::UPlus);
    assert_eq!(omega_algebra(&up).unwrap().kind, Kind::UMinus);
    assert_eq!(up.dim(), um.dim());
    for k in [Kind::BMinus, Kind::Am(2), Kind::Root(1, Side::F), Kind::G] {
        assert_eq!(k.omega().omega(), k);
    }
    for s in ["g", "b-", "b+", "u-", "u+", "Am:2", "root:2:-", "root:1:+"] {
        assert_eq!(s.parse::<Kind>().unwrap().to_string(), s);
    }
}

#[test]
fn borel_and_full_integrals_carry_the_two_rho_character() {
    let f = PrimeField::new(7, 3).unwrap();
    for t in [RootType::A1, RootType::A2] {
        let z = zdata(t, f.clone());
        let rank = z.rank();
        // Character of 2(ell-1)rho in zeta-exponents: 2(ell-1) d_i.
        let two_rho: Vec<i64> = (0..rank).map(|i| (4 * z.datum.d[i] as i64).rem_euclid(3)).collect();
        for (kind, expect) in [(Kind::BMinus, two_rho.clone()), (Kind::G, two_rho.clone()), (Kind::BPlus, vec![0; rank])] {
            let alg = KernelAlgebra::build(kind.clone(), 0, z.clone()).unwrap();
            let inv = alg.left_invariants().unwrap();
            assert_eq!(inv.len(), 1, "{t} {kind}");
            let chi = torus_character(&alg, &inv[0]).unwrap();
            let chi: Vec<i64> = chi.iter().map(|c| c.rem_euclid(3)).collect();
            assert_eq!(chi, expect, "{t} {kind}");
        }
    }
}
