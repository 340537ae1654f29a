use flk_core::genericuq::Side;
use flk_core::inject::*;
use flk_core::kernelalg::{KernelAlgebra, Kind, RankOneKernel};
use proptest::prelude::*;
use flk_core::qmodules::*;
use flk_core::rootdata::RootType;
use flk_core::scalars::PrimeField;

fn ctx(t: RootType, ell: u32) -> ModContext<PrimeField> {
    let p = if ell == 3 { 7 } else { 11 };
    ModContext::new(t, None, PrimeField::new(p, ell).unwrap(), 0).unwrap()
}

fn ctx_r1() -> ModContext<PrimeField> {
    ModContext::new(RootType::A1, None, PrimeField::new(7, 3).unwrap(), 1).unwrap()
}

fn mk(c: &ModContext<PrimeField>, s: &str) -> WeightedModule<PrimeField> {
    realize(c, &s.parse().unwrap()).unwrap()
}

fn algebra(c: &ModContext<PrimeField>, kind: Kind) -> RegularRep<u64> {
    let a = KernelAlgebra::build(kind, 0, c.z.clone()).unwrap();
    RegularRep::from_kernel(&a).unwrap()
}

const A1_CORPUS: &[&str] = &[
    "trivial",
    "simple(1)",
    "simple(2)",
    "verma(0)",
    "verma(1)",
    "coverma(1)",
    "dual(verma(2))",
    "tensor(simple(1),simple(1))",
    "tensor(simple(1),simple(2))",
    "randsub(verma(1),3)",
    "quot(verma(0),5)",
    "quot(coverma(1),2)",
    "sum(simple(2),trivial)",
    "simple(4)",
    "tensor(simple(4),simple(1))",
    "mixsub(sum(verma(0),verma(3)),0)",
    "mixsub(sum(verma(1),coverma(1)),4)",
];

#[test]
fn nakayama_examples() {
    let c = ctx(RootType::A1, 3);
    let root = Kind::Root(0, Side::F);
    let k = free_over_local(&c, &root, &mk(&c, "trivial")).unwrap();
    assert!(!k.verdict && k.top_dim == 1 && k.dim_a == 3);
    let z = free_over_local(&c, &root, &mk(&c, "verma(1)")).unwrap();
    assert_eq!((z.verdict, z.rank), (true, Some(1)));

    let c2 = ctx(RootType::A2, 3);
    for lam in ["[0,0]", "[1,2]"] {
        let z = mk(&c2, &format!("verma({lam})"));
        let rep = free_over_local(&c2, &Kind::Am(2), &z).unwrap();
        assert_eq!(rep.rank, Some(3));
        assert_eq!(weight_basis_over_am(&c2, &z, 2).unwrap().unwrap().len(), 3);
    }
}

#[test]
fn root_freeness_examples() {
    let c = ctx(RootType::A1, 3);
    for r in RootRef::all(&c) {
        assert!(!free_over_root(&c, &mk(&c, "trivial"), r).unwrap().verdict);
        assert!(free_over_root(&c, &mk(&c, "simple(2)"), r).unwrap().verdict);
    }
    let st = mk(&c, "simple(2)");
    assert_eq!(root_top_power(&c, &st, RootRef { k: 0, side: Side::F }).unwrap().rank(c.field()), 1);
    let c2 = ctx(RootType::B2, 3);
    let z = mk(&c2, "verma([1,0])");
    for r in RootRef::positive(&c2, Side::F) {
        assert!(free_over_root(&c2, &z, r).unwrap().verdict, "{}", r.label(&c2));
    }
}

#[test]
fn split_test_examples() {
    let c = ctx(RootType::A1, 3);
    let root = algebra(&c, Kind::Root(0, Side::F));
    assert!(!projective_split_test(&c, &root, &mk(&c, "trivial"), DEFAULT_BUDGET).unwrap());
    assert!(projective_split_test(&c, &root, &mk(&c, "verma(0)"), DEFAULT_BUDGET).unwrap());
    let g = algebra(&c, Kind::G);
    assert!(projective_split_test(&c, &g, &mk(&c, "simple(2)"), DEFAULT_BUDGET).unwrap());
    assert!(!projective_split_test(&c, &g, &mk(&c, "simple(1)"), DEFAULT_BUDGET).unwrap());
    assert!(projective_split_test(&c, &g, &mk(&c, "tensor(simple(2),simple(1))"), DEFAULT_BUDGET).unwrap());
    assert!(matches!(projective_split_test(&c, &g, &mk(&c, "verma(0)"), 10), Err(flk_core::Error::Budget(_))));
}

/// The literal splitting agrees with the trace criterion over the Hopf
/// kernels and with Nakayama over the local ones.
#[test]
fn oracles_agree_on_a1() {
    for ell in [3, 5] {
        let c = ctx(RootType::A1, ell);
        let g = algebra(&c, Kind::G);
        let bm = algebra(&c, Kind::BMinus);
        let bp = algebra(&c, Kind::BPlus);
        let um = algebra(&c, Kind::UMinus);
        let mut seen = [0usize; 2];
        for s in A1_CORPUS {
            let m = mk(&c, s);
            let h = higman_projective(&c, &m, HopfKind::G).unwrap();
            assert_eq!(projective_split_test(&c, &g, &m, usize::MAX).unwrap(), h, "{s} ell={ell}");
            seen[h as usize] += 1;
            let mm = restrict(&m, Side::F);
            let hb = higman_projective(&c, &mm, HopfKind::BMinus).unwrap();
            assert_eq!(projective_split_test(&c, &bm, &mm, usize::MAX).unwrap(), hb, "{s}");
            let nak = free_over_local(&c, &Kind::UMinus, &mm).unwrap().verdict;
            assert_eq!(projective_split_test(&c, &um, &mm, usize::MAX).unwrap(), nak, "{s}");
            assert_eq!(nak, hb, "{s}");
            let mp = restrict(&m, Side::E);
            let hp = higman_projective(&c, &mp, HopfKind::BPlus).unwrap();
            assert_eq!(projective_split_test(&c, &bp, &mp, usize::MAX).unwrap(), hp, "{s}");
        }
        assert!(seen[0] > 0 && seen[1] > 0, "ell={ell}: {seen:?}");
    }
}

#[test]
fn oracles_agree_on_a2_borels() {
    let c = ctx(RootType::A2, 3);
    let bm = algebra(&c, Kind::BMinus);
    let bp = algebra(&c, Kind::BPlus);
    for s in ["trivial", "simple([1,0])", "simple([2,2])", "coverma([0,1])", "randsub(verma([1,1]),2)"] {
        let m = mk(&c, s);
        for (side, kind, alg) in [(Side::F, HopfKind::BMinus, &bm), (Side::E, HopfKind::BPlus, &bp)] {
            let mr = restrict(&m, side);
            let h = higman_projective(&c, &mr, kind).unwrap();
            assert_eq!(projective_split_test(&c, alg, &mr, usize::MAX).unwrap(), h, "{s} {kind}");
            let unip = if side == Side::F { Kind::UMinus } else { Kind::UPlus };
            assert_eq!(free_over_local(&c, &unip, &mr).unwrap().verdict, h, "{s} {kind}");
        }
    }
}

#[test]
fn higher_kernel_oracles() {
    let c = ctx_r1();
    let field = c.field().clone();
    let root = RegularRep::from_rank_one(&RankOneKernel::build(Kind::Root(0, Side::F), 1, field.clone()).unwrap());
    let bm = RegularRep::from_rank_one(&RankOneKernel::build(Kind::BMinus, 1, field).unwrap());
    for s in ["trivial", "simple(4)", "simple(20)", "verma(2)", "tensor(simple(1),simple(3))", "quot(verma(5),1)"] {
        let m = mk(&c, s);
        let mm = restrict(&m, Side::F);
        let nak = free_over_root(&c, &mm, RootRef { k: 0, side: Side::F }).unwrap().verdict;
        assert_eq!(projective_split_test(&c, &root, &mm, usize::MAX).unwrap(), nak, "{s}");
        let hb = higman_projective(&c, &mm, HopfKind::BMinus).unwrap();
        assert_eq!(nak, hb, "{s}");
        if m.dim <= 8 {
            assert_eq!(projective_split_test(&c, &bm, &mm, usize::MAX).unwrap(), hb, "{s}");
        }
    }
    assert!(higman_projective(&c, &mk(&c, "simple(20)"), HopfKind::G).unwrap());
    assert!(!higman_projective(&c, &mk(&c, "simple(2)"), HopfKind::G).unwrap());
    assert!(!higman_projective(&c, &mk(&c, "trivial"), HopfKind::G).unwrap());
}

#[test]
fn root_criterion_records() {
    let c = ctx(RootType::A1, 3);
    let k = verify_root_criterion(&c, &mk(&c, "trivial")).unwrap();
    assert!(!k.criterion && !k.oracle["g"] && k.agree);
    let st = verify_root_criterion(&c, &mk(&c, "simple(2)")).unwrap();
    assert!(st.criterion && st.oracle["g"] && st.agree);
    assert_eq!(st.per_root.len(), 2);
    let mixed = verify_root_criterion(&c, &mk(&c, "mixsub(sum(verma(0),verma(3)),0)")).unwrap();
    assert!(!mixed.graded && mixed.agree);
    let line = st.to_json();
    assert!(line.starts_with("{\"check\":\"root-criterion\",\"spec\":\"simple(2)\""), "{line}");
}

#[test]
fn borel_and_reduction_records() {
    let c = ctx(RootType::A2, 3);
    let z = mk(&c, "verma([1,0])");
    let rec = verify_borel_criterion(&c, &z, Side::F).unwrap();
    assert!(rec.criterion && rec.agree);
    let rec = verify_borel_criterion(&c, &mk(&c, "trivial"), Side::E).unwrap();
    assert!(!rec.criterion && rec.agree);
    let st = verify_reduction_borel(&c, &mk(&c, "simple([2,2])")).unwrap();
    assert!(st.criterion && st.oracle["g"] && st.agree);
    let k = verify_reduction_borel(&c, &mk(&c, "trivial")).unwrap();
    assert!(!k.criterion && !k.oracle["g"] && !k.oracle["b-"] && !k.oracle["b+"]);
    let end = verify_reduction_borel(&c, &mk(&c, "tensor(simple([1,0]),dual(simple([1,0])))")).unwrap();
    assert!(end.agree);
}

#[test]
fn skeletons() {
    let c = ctx(RootType::A2, 3);
    let k = support_skeleton(&c, &mk(&c, "trivial"), Side::F).unwrap();
    assert_eq!(k.roots_in_skeleton.len(), 3);
    assert!(support_skeleton(&c, &mk(&c, "simple([2,2])"), Side::F).unwrap().is_empty());
    let m = mk(&c, "randsub(verma([0,1]),7)");
    let sk = support_skeleton(&c, &m, Side::F).unwrap();
    let borel = verify_borel_criterion(&c, &m, Side::F).unwrap();
    assert_eq!(sk.is_empty(), borel.oracle["b-"]);
}

#[test]
fn highest_root_on_a2_simples() {
    let c = ctx(RootType::A2, 3);
    assert_eq!(c.z.order.gammas[highest_root_index(&c)], vec![1, 1]);
    for a in 0..3 {
        for b in 0..3 {
            let rec = highest_root_test(&c, &mk(&c, &format!("simple([{a},{b}])"))).unwrap();
            assert!(rec.pass, "{rec:?}");
            assert_eq!(rec.injective, a == 2 && b == 2);
        }
    }
}

#[test]
fn restriction_errors() {
    let c = ctx(RootType::A1, 3);
    let m = restrict(&mk(&c, "verma(0)"), Side::F);
    assert!(higman_projective(&c, &m, HopfKind::G).is_err());
    assert!(higman_projective(&c, &m, HopfKind::BPlus).is_err());
    assert!(free_over_local(&c, &Kind::G, &m).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reports_are_consistent(lam in 0i64..6, mu in 0i64..3, seed in 0u64..50, which in 0usize..4) {
        let c = ctx(RootType::A1, 3);
        let s = match which {
            0 => format!("randsub(verma({lam}),{seed})"),
            1 => format!("quot(coverma({lam}),{seed})"),
            2 => format!("tensor(simple({mu}),quot(verma({lam}),{seed}))"),
            _ => format!("mixsub(sum(verma({lam}),coverma({mu})),{seed})"),
        };
        let m = mk(&c, &s);
        for r in RootRef::all(&c) {
            let rep = free_over_root(&c, &m, r).unwrap();
            prop_assert_eq!(rep.verdict, rep.dim_m == rep.dim_a * rep.top_dim);
        }
        // Injective over the whole kernel forces freeness over every root,
        // with or without X-weights.
        let rec = verify_root_criterion(&c, &m).unwrap();
        prop_assert!(rec.agree, "{:?}", rec);
        if rec.oracle["g"] {
            prop_assert!(rec.per_root.values().all(|v| *v));
        }
    }
}
