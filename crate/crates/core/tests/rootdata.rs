use std::collections::BTreeSet;

use flk_core::rootdata::*;
use flk_core::scalars::Q;
use proptest::prelude::*;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Explicit Euclidean realizations: simple roots as integer vectors with the
/// standard dot product, scaled so short roots have squared length 2.
fn euclidean(t: RootType) -> Vec<Vec<i64>> {
    match t {
        RootType::A1 => vec![vec![1, -1]],
        RootType::A2 => vec![vec![1, -1, 0], vec![0, 1, -1]],
        // B2 with short roots e_i scaled: long e1-e2 has length 4 after scaling
        // by sqrt(2); use the lattice (x, y) with form 2(x1 x2 + y1 y2).
        RootType::B2 => vec![vec![1, -1], vec![0, 1]],
        // G2 inside x+y+z = 0, short roots e_i - e_j.
        RootType::G2 => vec![vec![0, 1, -1], vec![1, -2, 1]],
        RootType::A3 => vec![vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![0, 0, 1, -1]],
    }
}

fn euclid_scale(t: RootType) -> i64 {
    if t == RootType::B2 {
        2
    } else {
        1
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn reflect(a: &[i64], v: &[i64]) -> Vec<i64> {
    let c = 2 * dot(v, a) / dot(a, a);
    v.iter().zip(a).map(|(x, y)| x - c * y).collect()
}

/// The root system as the orbit of the simple roots in the realization.
fn euclidean_roots(t: RootType) -> BTreeSet<Vec<i64>> {
    let simple = euclidean(t);
    let mut seen: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    loop {
        let mut new = seen.clone();
        for r in &seen {
            for a in &simple {
                new.insert(reflect(a, r));
            }
        }
        if new.len() == seen.len() {
            return seen;
        }
        seen = new;
    }
}

#[test]
fn datum_matches_euclidean_realization() {
    for t in RootType::all() {
        let d = RootDatum::new(t);
        d.check_invariants().unwrap();
        let simple = euclidean(t);
        let s = euclid_scale(t);
        for i in 0..d.rank {
            for j in 0..d.rank {
                assert_eq!(d.pairing[i][j], s * dot(&simple[i], &simple[j]), "{t} pairing");
            }
        }
        let roots = euclidean_roots(t);
        assert_eq!(roots.len(), 2 * d.num_positive_roots(), "{t} root count");
        for r in &d.positive_roots {
            let mut e = vec![0; simple[0].len()];
            for (c, a) in r.iter().zip(&simple) {
                for (x, y) in e.iter_mut().zip(a) {
                    *x += c * y;
                }
            }
            assert!(roots.contains(&e), "{t}: {r:?} not a root");
        }
    }
}

#[test]
fn examples() {
    let a1 = RootDatum::new(RootType::A1);
    assert_eq!(a1.num_positive_roots(), 1);
    assert_eq!(a1.highest_root, vec![1]);
    assert_eq!(a1.norm2(&[1]), 2);

    let a2 = RootDatum::new(RootType::A2);
    let pos: BTreeSet<_> = a2.positive_roots.iter().cloned().collect();
    assert_eq!(pos, [vec![1, 0], vec![0, 1], vec![1, 1]].into_iter().collect());
    assert_eq!(a2.highest_root, vec![1, 1]);

    let b2 = RootDatum::new(RootType::B2);
    assert_eq!(b2.num_positive_roots(), 4);
    for r in &b2.positive_roots {
        assert!(b2.norm2(r) == 2 || b2.norm2(r) == 4);
    }
    assert_eq!(b2.cartan, vec![vec![2, -2], vec![-1, 2]]);
    // The highest root is long; alpha_1 + alpha_2 is short in B2.
    assert_eq!(b2.highest_root, vec![1, 2]);
    assert!(b2.is_long(&b2.highest_root));
    assert!(!b2.is_long(&[1, 1]));

    let g2 = RootDatum::new(RootType::G2);
    assert_eq!(g2.highest_root, vec![3, 2]);
    assert_eq!(g2.cartan, vec![vec![2, -1], vec![-3, 2]]);
}

#[test]
fn weyl_examples() {
    let a2 = RootDatum::new(RootType::A2);
    assert_eq!(a2.weyl_apply(&[0], &[1, 0]), vec![-1, 0]);
    assert_eq!(a2.weyl_apply(&[0], &[0, 1]), vec![1, 1]);
    for t in RootType::all() {
        let d = RootDatum::new(t);
        let w0 = d.default_w0_word();
        let img = d.weyl_apply_q(&w0, &d.rho);
        let neg: Vec<Q> = d.rho.iter().map(|x| -x).collect();
        assert_eq!(img, neg, "{t}: w0(rho) = -rho");
    }
}

/// Brute force: all words of length N whose product sends every positive root
/// to a negative root.
fn brute_force_w0_words(d: &RootDatum) -> BTreeSet<Vec<usize>> {
    let n = d.num_positive_roots();
    let mut out = BTreeSet::new();
    let total = d.rank.pow(n as u32);
    for mut code in 0..total {
        let mut w = Vec::with_capacity(n);
        for _ in 0..n {
            w.push(code % d.rank);
            code /= d.rank;
        }
        if d.positive_roots.iter().all(|r| d.weyl_apply(&w, r).iter().all(|&c| c <= 0)) {
            out.insert(w);
        }
    }
    out
}

#[test]
fn reduced_words_match_brute_force() {
    let expected = [(RootType::A1, 1), (RootType::A2, 2), (RootType::B2, 2), (RootType::G2, 2), (RootType::A3, 16)];
    for (t, count) in expected {
        let d = RootDatum::new(t);
        let words = d.all_reduced_w0_words();
        assert_eq!(words.len(), count, "{t}");
        let set: BTreeSet<_> = words.iter().cloned().collect();
        assert_eq!(set, brute_force_w0_words(&d), "{t}");
    }
}

#[test]
fn convex_order_examples() {
    let a1 = RootDatum::new(RootType::A1);
    assert_eq!(ConvexOrder::new(&a1, &[0]).unwrap().gammas, vec![vec![1]]);
    let a2 = RootDatum::new(RootType::A2);
    let o = ConvexOrder::new(&a2, &parse_word("1,2,1", 2).unwrap()).unwrap();
    assert_eq!(o.gammas, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
    let o = ConvexOrder::new(&a2, &parse_word("2,1,2", 2).unwrap()).unwrap();
    assert_eq!(o.gammas, vec![vec![0, 1], vec![1, 1], vec![1, 0]]);
    assert!(ConvexOrder::new(&a2, &[0, 0, 1]).is_err());
    assert!(ConvexOrder::new(&a2, &[0, 1]).is_err());
}

#[test]
fn every_order_is_convex() {
    for t in RootType::all() {
        let d = RootDatum::new(t);
        for w in d.all_reduced_w0_words() {
            let o = ConvexOrder::new(&d, &w).unwrap();
            assert!(o.is_convex(), "{t} {}", format_word(&w));
            let set: BTreeSet<_> = o.gammas.iter().cloned().collect();
            let pos: BTreeSet<_> = d.positive_roots.iter().cloned().collect();
            assert_eq!(set, pos);
        }
    }
}

#[test]
fn functional_examples() {
    for t in RootType::all() {
        let d = RootDatum::new(t);
        let o = ConvexOrder::new(&d, &d.default_w0_word()).unwrap();
        let f0 = order_functional(&d, &o, 0).unwrap();
        let neg: Vec<Q> = d.rho.iter().map(|x| -x).collect();
        assert_eq!(f0.vector, neg);
        let fnn = order_functional(&d, &o, o.len()).unwrap();
        assert_eq!(fnn.vector, d.rho);
    }
    let a2 = RootDatum::new(RootType::A2);
    let o = ConvexOrder::new(&a2, &[0, 1, 0]).unwrap();
    // varpi_1 - 2 varpi_2 in simple-root coordinates.
    let v = a2.weight_to_root_coords(&[1, -2]);
    assert!(a2.inner_qr(&v, &[1, 0]) > q(0));
    assert!(a2.inner_qr(&v, &[1, 1]) < q(0));
    assert!(a2.inner_qr(&v, &[0, 1]) < q(0));
    assert!(check_sign_pattern(&a2, &o, 1, &v));
    let f1 = order_functional(&a2, &o, 1).unwrap();
    assert!(check_sign_pattern(&a2, &o, 1, &f1.vector));
}

#[test]
fn flip_construction_is_honored() {
    for t in RootType::all() {
        let d = RootDatum::new(t);
        for w in d.all_reduced_w0_words() {
            let o = ConvexOrder::new(&d, &w).unwrap();
            for m in 0..o.len() {
                let cur = order_functional(&d, &o, m).unwrap();
                let next = order_functional(&d, &o, m + 1).unwrap();
                let flipped: BTreeSet<Vec<i64>> =
                    cur.positive_system.iter().map(|r| d.reflect_in(&o.gammas[m], r)).collect();
                assert_eq!(flipped, next.positive_system, "{t} m={m}");
            }
        }
    }
}

proptest! {
    #[test]
    fn sign_pattern_for_every_order(ti in 0usize..5, wi in 0usize..16, m in 0usize..7) {
        let t = RootType::all()[ti];
        let d = RootDatum::new(t);
        let words = d.all_reduced_w0_words();
        let w = &words[wi % words.len()];
        let o = ConvexOrder::new(&d, w).unwrap();
        let m = m % (o.len() + 1);
        let f = order_functional(&d, &o, m).unwrap();
        prop_assert!(check_sign_pattern(&d, &o, m, &f.vector));
        // The total refinement is a strict order on distinct roots.
        for x in &d.positive_roots {
            for y in &d.positive_roots {
                if x != y {
                    prop_assert_ne!(f.compare(&d, x, y), std::cmp::Ordering::Equal);
                }
            }
        }
    }

    #[test]
    fn reflections_preserve_the_form(ti in 0usize..5, j in 0usize..3, a in 0usize..6, b in 0usize..6) {
        let d = RootDatum::new(RootType::all()[ti]);
        let j = j % d.rank;
        let x = &d.positive_roots[a % d.num_positive_roots()];
        let y = &d.positive_roots[b % d.num_positive_roots()];
        prop_assert_eq!(d.inner(&d.reflect_root(j, x), &d.reflect_root(j, y)), d.inner(x, y));
        prop_assert!(d.is_root(&d.reflect_root(j, x)));
    }
}
