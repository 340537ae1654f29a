use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::genericuq::Side;
use crate::kernelalg::{AlgGen, Mono};
use crate::linalg::EchelonBasis;
use crate::scalars::{Field, FieldOps};

use super::module::{gen_side, LiftFlags, ModContext, WeightedModule};
use super::sparse::SparseMat;

fn full_flags() -> LiftFlags {
    LiftFlags { torus_compatible: true, borel_minus: true, borel_plus: true, full_u: true }
}

fn sub_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// The one dimensional module of weight `lambda`; it carries both Borel
/// structures, and the full structure exactly when the relations hold.
pub fn onedim<F: Field>(ctx: &ModContext<F>, lambda: &[i64]) -> Result<WeightedModule<F>> {
    check_weight(ctx, lambda)?;
    let ops = ctx.full_gens().into_iter().map(|g| (g, SparseMat::zero(1, 1))).collect();
    let mut m = WeightedModule {
        dim: 1,
        weights: vec![lambda.to_vec()],
        ops,
        flags: LiftFlags { torus_compatible: true, borel_minus: true, borel_plus: true, full_u: true },
        provenance: format!("onedim({})", fmt_weight(lambda)),
    };
    if m.check_relations(ctx).is_err() {
        m.flags.full_u = false;
    }
    Ok(m)
}

pub fn trivial<F: Field>(ctx: &ModContext<F>) -> Result<WeightedModule<F>> {
    let mut m = onedim(ctx, &vec![0; ctx.rank()])?;
    m.provenance = "trivial".into();
    Ok(m)
}

fn check_weight<F: Field>(ctx: &ModContext<F>, lambda: &[i64]) -> Result<()> {
    if lambda.len() != ctx.rank() {
        return Err(Error::Module(format!("weight {lambda:?} needs {} coordinates", ctx.rank())));
    }
    Ok(())
}

pub fn fmt_weight(lambda: &[i64]) -> String {
    if lambda.len() == 1 {
        lambda[0].to_string()
    } else {
        format!("[{}]", lambda.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// The baby Verma module `Z_r(lambda)`: the negative part acting on itself,
/// the highest weight vector at index 0.
pub fn verma<F: Field>(ctx: &ModContext<F>, lambda: &[i64]) -> Result<WeightedModule<F>> {
    check_weight(ctx, lambda)?;
    let f = ctx.field();
    let mut m = if ctx.r >= 1 {
        let b = ctx.bound;
        let weights = (0..b as i64).map(|a| vec![lambda[0] - 2 * a]).collect();
        let ell = ctx.ell();
        let mut ops = BTreeMap::new();
        for n in [1, ell] {
            let fm = SparseMat::from_triples(
                f,
                b as usize,
                b as usize,
                (0..b).filter(|a| a + n < b).map(|a| ((a + n) as usize, a as usize, ctx.qbinom((a + n) as i64, n))),
            );
            let em = SparseMat::from_triples(
                f,
                b as usize,
                b as usize,
                (n..b).map(|a| ((a - n) as usize, a as usize, ctx.qbinom(lambda[0] - a as i64 + n as i64, n))),
            );
            let (gf, ge) = if n == 1 { (AlgGen::F(0), AlgGen::E(0)) } else { (AlgGen::FDiv(0, n), AlgGen::EDiv(0, n)) };
            ops.insert(gf, fm);
            ops.insert(ge, em);
        }
        WeightedModule { dim: b as usize, weights, ops, flags: full_flags(), provenance: String::new() }
    } else {
        let z = &ctx.z;
        let eng = ctx.engine();
        let all: Vec<usize> = (0..ctx.n()).collect();
        let basis = eng.fhalf.basis(&all);
        let index: BTreeMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let dim = basis.len();
        let weights =
            basis.iter().map(|a| sub_vec(lambda, &ctx.datum().root_to_weight(&z.exps_root_weight(a)))).collect();
        let mut ops = BTreeMap::new();
        for i in 0..ctx.rank() {
            let mut ft = Vec::new();
            let mut et = Vec::new();
            for (j, a) in basis.iter().enumerate() {
                for (b, c) in eng.fhalf.mul_root(z.simple_pos[i], a).iter() {
                    ft.push((index[b], j, c.clone()));
                }
                let mono = Mono { f: a.clone(), k: vec![0; ctx.rank()], e: vec![0; ctx.n()] };
                for (m2, c) in eng.left_gen_mono(AlgGen::E(i), &mono) {
                    if m2.e.iter().any(|&x| x > 0) {
                        continue;
                    }
                    let mu: Vec<i64> = m2.k.iter().map(|&x| x as i64).collect();
                    et.push((index[&m2.f], j, f.mul(&c, &ctx.zeta_pair(lambda, &mu))));
                }
            }
            ops.insert(AlgGen::F(i), SparseMat::from_triples(f, dim, dim, ft));
            ops.insert(AlgGen::E(i), SparseMat::from_triples(f, dim, dim, et));
        }
        WeightedModule { dim, weights, ops, flags: full_flags(), provenance: String::new() }
    };
    m.provenance = format!("verma({})", fmt_weight(lambda));
    Ok(m)
}

/// The coinduced module `Z'_r(lambda)` as functions on the positive PBW
/// basis, `(h f)(x) = f(x h)`, with `f(F^a K_mu E^b) = delta_{a,0}
/// lambda(K_mu) f(E^b)`. The function dual to `1` has weight `lambda`.
pub fn coverma<F: Field>(ctx: &ModContext<F>, lambda: &[i64]) -> Result<WeightedModule<F>> {
    check_weight(ctx, lambda)?;
    let f = ctx.field();
    let mut m = if ctx.r >= 1 {
        let b = ctx.bound;
        let weights = (0..b as i64).map(|x| vec![lambda[0] - 2 * x]).collect();
        let ell = ctx.ell();
        let mut ops = BTreeMap::new();
        for n in [1, ell] {
            let em = SparseMat::from_triples(
                f,
                b as usize,
                b as usize,
                (n..b).map(|x| ((x - n) as usize, x as usize, ctx.qbinom(x as i64, n))),
            );
            let fm = SparseMat::from_triples(
                f,
                b as usize,
                b as usize,
                (0..b).filter(|x| x + n < b).map(|x| ((x + n) as usize, x as usize, ctx.qbinom(lambda[0] - x as i64, n))),
            );
            let (gf, ge) = if n == 1 { (AlgGen::F(0), AlgGen::E(0)) } else { (AlgGen::FDiv(0, n), AlgGen::EDiv(0, n)) };
            ops.insert(gf, fm);
            ops.insert(ge, em);
        }
        WeightedModule { dim: b as usize, weights, ops, flags: full_flags(), provenance: String::new() }
    } else {
        let z = &ctx.z;
        let eng = ctx.engine();
        let all: Vec<usize> = (0..ctx.n()).collect();
        let basis = eng.ehalf.basis(&all);
        let index: BTreeMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let dim = basis.len();
        let weights =
            basis.iter().map(|b| sub_vec(lambda, &ctx.datum().root_to_weight(&z.exps_root_weight(b)))).collect();
        let mut ops = BTreeMap::new();
        let zero_f = vec![0u32; ctx.n()];
        for i in 0..ctx.rank() {
            let mut unit = vec![0u32; ctx.n()];
            unit[z.simple_pos[i]] = 1;
            let mut et = Vec::new();
            let mut ft = Vec::new();
            let fi = eng.mono_elem(&Mono { f: unit.clone(), k: vec![0; ctx.rank()], e: zero_f.clone() });
            for (row, bp) in basis.iter().enumerate() {
                for (b2, c) in eng.ehalf.mul_mono(bp, &unit) {
                    et.push((row, index[&b2], c));
                }
                let x = Mono { f: zero_f.clone(), k: vec![0; ctx.rank()], e: bp.clone() };
                for (m2, c) in eng.apply_mono(&x, &fi) {
                    if m2.f.iter().any(|&a| a > 0) {
                        continue;
                    }
                    let mu: Vec<i64> = m2.k.iter().map(|&x| x as i64).collect();
                    ft.push((row, index[&m2.e], f.mul(&c, &ctx.zeta_pair(lambda, &mu))));
                }
            }
            ops.insert(AlgGen::E(i), SparseMat::from_triples(f, dim, dim, et));
            ops.insert(AlgGen::F(i), SparseMat::from_triples(f, dim, dim, ft));
        }
        WeightedModule { dim, weights, ops, flags: full_flags(), provenance: String::new() }
    };
    m.provenance = format!("coverma({})", fmt_weight(lambda));
    Ok(m)
}

fn sign<F: FieldOps>(f: &F, n: u32, x: F::Elem) -> F::Elem {
    if n % 2 == 1 {
        f.neg(&x)
    } else {
        x
    }
}

/// The dual through the antipode: `h` acts by the transpose of `S(h)`.
pub fn dual<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>) -> Result<WeightedModule<F>> {
    let f = ctx.field();
    let mut ops = BTreeMap::new();
    for (&g, x) in &m.ops {
        let y = match g {
            // S(E_i) = -K_i^{-1} E_i
            AlgGen::E(i) => x.scale_rows(f, &m.k_diag(ctx, i, -1)).scale(f, &f.neg(&f.one())),
            // S(F_i) = -F_i K_i
            AlgGen::F(i) => x.scale_cols(f, &m.k_diag(ctx, i, 1)).scale(f, &f.neg(&f.one())),
            // S(E^{(n)}) = (-1)^n zeta^{n(n-1)} K^{-n} E^{(n)}
            AlgGen::EDiv(i, n) => {
                let c = sign(f, n, f.zeta_pow((n * (n - 1)) as i64));
                x.scale_rows(f, &m.k_diag(ctx, i, -(n as i64))).scale(f, &c)
            }
            // S(F^{(n)}) = (-1)^n zeta^{-n(n-1)} F^{(n)} K^n
            AlgGen::FDiv(i, n) => {
                let c = sign(f, n, f.zeta_pow(-((n * (n - 1)) as i64)));
                x.scale_cols(f, &m.k_diag(ctx, i, n as i64)).scale(f, &c)
            }
            other => return Err(Error::Module(format!("cannot dualize the action of {other:?}"))),
        };
        ops.insert(g, y.transpose());
    }
    let weights = m
        .weights
        .iter()
        .map(|w| {
            let neg: Vec<i64> = w.iter().map(|x| -x).collect();
            if m.graded() {
                neg
            } else {
                ctx.class_rep(&neg)
            }
        })
        .collect();
    Ok(WeightedModule { dim: m.dim, weights, ops, flags: m.flags, provenance: format!("dual({})", m.provenance) })
}

fn and_flags(a: LiftFlags, b: LiftFlags) -> LiftFlags {
    LiftFlags {
        torus_compatible: a.torus_compatible && b.torus_compatible,
        borel_minus: a.borel_minus && b.borel_minus,
        borel_plus: a.borel_plus && b.borel_plus,
        full_u: a.full_u && b.full_u,
    }
}

/// Tensor product through the coproduct; basis index `i * dim N + j`.
pub fn tensor<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, n: &WeightedModule<F>) -> Result<WeightedModule<F>> {
    let f = ctx.field();
    let im = SparseMat::identity(f, m.dim);
    let in_ = SparseMat::identity(f, n.dim);
    let mut ops = BTreeMap::new();
    for (&g, x) in &m.ops {
        let Some(y) = n.ops.get(&g) else { continue };
        let op = match g {
            AlgGen::E(i) => x.kron(f, &in_).add(f, &SparseMat::diagonal(f, m.k_diag(ctx, i, 1)).kron(f, y)),
            AlgGen::F(i) => x.kron(f, &SparseMat::diagonal(f, n.k_diag(ctx, i, -1))).add(f, &im.kron(f, y)),
            // sum_k zeta^{k(n-k)} E^{(k)} K^{n-k} (x) E^{(n-k)}
            AlgGen::EDiv(i, nn) => {
                let mut acc = SparseMat::zero(m.dim * n.dim, m.dim * n.dim);
                for k in 0..=nn {
                    let left = m.div_op(ctx, Side::E, i, k)?.scale_cols(f, &m.k_diag(ctx, i, (nn - k) as i64));
                    let right = n.div_op(ctx, Side::E, i, nn - k)?;
                    let c = f.zeta_pow((k * (nn - k)) as i64);
                    acc = acc.lin_comb(f, &f.one(), &left.kron(f, &right), &c);
                }
                acc
            }
            // sum_k zeta^{-k(n-k)} F^{(k)} (x) K^{-k} F^{(n-k)}
            AlgGen::FDiv(i, nn) => {
                let mut acc = SparseMat::zero(m.dim * n.dim, m.dim * n.dim);
                for k in 0..=nn {
                    let left = m.div_op(ctx, Side::F, i, k)?;
                    let right = n.div_op(ctx, Side::F, i, nn - k)?.scale_rows(f, &n.k_diag(ctx, i, -(k as i64)));
                    let c = f.zeta_pow(-((k * (nn - k)) as i64));
                    acc = acc.lin_comb(f, &f.one(), &left.kron(f, &right), &c);
                }
                acc
            }
            other => return Err(Error::Module(format!("cannot tensor the action of {other:?}"))),
        };
        ops.insert(g, op);
    }
    let flags = and_flags(m.flags, n.flags);
    let mut weights = Vec::with_capacity(m.dim * n.dim);
    for a in &m.weights {
        for b in &n.weights {
            let w: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            weights.push(if flags.torus_compatible { w } else { ctx.class_rep(&w) });
        }
    }
    Ok(WeightedModule {
        dim: m.dim * n.dim,
        weights,
        ops,
        flags,
        provenance: format!("tensor({},{})", m.provenance, n.provenance),
    })
}

pub fn sum<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, n: &WeightedModule<F>) -> Result<WeightedModule<F>> {
    let mut ops = BTreeMap::new();
    for (&g, x) in &m.ops {
        if let Some(y) = n.ops.get(&g) {
            ops.insert(g, x.direct_sum(y));
        }
    }
    let flags = and_flags(m.flags, n.flags);
    let weights = m
        .weights
        .iter()
        .chain(&n.weights)
        .map(|w| if flags.torus_compatible { w.clone() } else { ctx.class_rep(w) })
        .collect();
    Ok(WeightedModule { dim: m.dim + n.dim, weights, ops, flags, provenance: format!("sum({},{})", m.provenance, n.provenance) })
}

/// `M (x) lambda` for `lambda` in `ell X`.
pub fn twist<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, lambda: &[i64]) -> Result<WeightedModule<F>> {
    check_weight(ctx, lambda)?;
    if lambda.iter().any(|x| x.rem_euclid(ctx.ell() as i64) != 0) {
        return Err(Error::Module(format!("twist weight {lambda:?} is not in ell X")));
    }
    let mut out = tensor(ctx, m, &onedim(ctx, lambda)?)?;
    out.provenance = format!("twist({},{})", m.provenance, fmt_weight(lambda));
    Ok(out)
}

/// Keeps the action of one half, as a module over that Borel subalgebra.
pub fn restrict<F: Field>(m: &WeightedModule<F>, side: Side) -> WeightedModule<F> {
    let ops = m.ops.iter().filter(|(g, _)| gen_side(**g) == Some(side)).map(|(g, x)| (*g, x.clone())).collect();
    let mut flags = m.flags;
    flags.full_u = false;
    flags.borel_minus = side == Side::F && (m.flags.borel_minus || m.flags.full_u);
    flags.borel_plus = side == Side::E && (m.flags.borel_plus || m.flags.full_u);
    WeightedModule { dim: m.dim, weights: m.weights.clone(), ops, flags, provenance: m.provenance.clone() }
}

/// Splits a vector into components supported on single weights (or
/// torus classes when `by_class`).
fn components<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, v: &[F::Elem], by_class: bool) -> Vec<Vec<F::Elem>> {
    let f = ctx.field();
    let mut parts: BTreeMap<Vec<i64>, Vec<F::Elem>> = BTreeMap::new();
    for (i, c) in v.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        let key = if by_class { ctx.k_class(&m.weights[i]) } else { m.weights[i].clone() };
        parts.entry(key).or_insert_with(|| vec![f.zero(); v.len()])[i] = c.clone();
    }
    parts.into_values().collect()
}

/// The submodule generated by `seeds`, as an echelon basis of torus
/// homogeneous vectors.
pub fn closure<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, seeds: &[Vec<F::Elem>]) -> EchelonBasis<F::Elem> {
    let f = ctx.field();
    let mut basis = EchelonBasis::new(m.dim);
    let mut queue = VecDeque::new();
    for s in seeds {
        for c in components(ctx, m, s, true) {
            if basis.insert(f, &c) {
                queue.push_back(c);
            }
        }
    }
    while let Some(v) = queue.pop_front() {
        for x in m.ops.values() {
            let w = x.apply(f, &v);
            if basis.insert(f, &w) {
                queue.push_back(w);
            }
        }
    }
    basis
}

/// Whether a torus-homogeneous subspace is also `X`-graded; if so returns
/// an echelon basis of weight vectors.
fn graded_basis<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, w: &EchelonBasis<F::Elem>) -> Option<EchelonBasis<F::Elem>> {
    let f = ctx.field();
    let mut out = EchelonBasis::new(m.dim);
    for row in w.rows() {
        for c in components(ctx, m, row, false) {
            if !w.contains(f, &c) {
                return None;
            }
            out.insert(f, &c);
        }
    }
    Some(out)
}

/// The submodule spanned by a module-stable subspace.
pub fn submodule<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, w: &EchelonBasis<F::Elem>, name: String) -> Result<WeightedModule<F>> {
    let f = ctx.field();
    let (w, graded) = match (m.graded(), graded_basis(ctx, m, w)) {
        (true, Some(g)) => (g, true),
        _ => (w.clone(), false),
    };
    let dim = w.len();
    let weights = w
        .pivots()
        .iter()
        .map(|&p| if graded { m.weights[p].clone() } else { ctx.class_rep(&m.weights[p]) })
        .collect();
    let mut ops = BTreeMap::new();
    for (&g, x) in &m.ops {
        let mut t = Vec::new();
        for (j, row) in w.rows().iter().enumerate() {
            let img = x.apply(f, row);
            let coords = w
                .coordinates(f, &img)
                .ok_or_else(|| Error::Module(format!("{name}: subspace is not stable under {g:?}")))?;
            for (i, c) in coords.into_iter().enumerate() {
                t.push((i, j, c));
            }
        }
        ops.insert(g, SparseMat::from_triples(f, dim, dim, t));
    }
    let mut flags = m.flags;
    flags.torus_compatible = graded;
    Ok(WeightedModule { dim, weights, ops, flags, provenance: name })
}

/// `M / W` on the complement of the pivot coordinates of `W`.
pub fn quotient<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, w: &EchelonBasis<F::Elem>, name: String) -> Result<WeightedModule<F>> {
    let f = ctx.field();
    let (w, graded) = match (m.graded(), graded_basis(ctx, m, w)) {
        (true, Some(g)) => (g, true),
        _ => (w.clone(), false),
    };
    let piv: BTreeSet<usize> = w.pivots().iter().copied().collect();
    let keep: Vec<usize> = (0..m.dim).filter(|i| !piv.contains(i)).collect();
    let mut pos = vec![usize::MAX; m.dim];
    for (k, &i) in keep.iter().enumerate() {
        pos[i] = k;
    }
    let dim = keep.len();
    let weights = keep.iter().map(|&i| if graded { m.weights[i].clone() } else { ctx.class_rep(&m.weights[i]) }).collect();
    let mut ops = BTreeMap::new();
    for (&g, x) in &m.ops {
        let mut t = Vec::new();
        for (j, &src) in keep.iter().enumerate() {
            let mut e = vec![f.zero(); m.dim];
            e[src] = f.one();
            let img = w.reduce(f, &x.apply(f, &e));
            for (i, c) in img.into_iter().enumerate() {
                if !f.is_zero(&c) {
                    debug_assert!(pos[i] != usize::MAX);
                    t.push((pos[i], j, c));
                }
            }
        }
        ops.insert(g, SparseMat::from_triples(f, dim, dim, t));
    }
    let mut flags = m.flags;
    flags.torus_compatible = graded;
    Ok(WeightedModule { dim, weights, ops, flags, provenance: name })
}

fn random_vector<F: Field>(ctx: &ModContext<F>, dim: usize, support: &[usize], rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
    let f = ctx.field();
    loop {
        let mut v = vec![f.zero(); dim];
        for &i in support {
            v[i] = f.random(rng);
        }
        if v.iter().any(|c| !f.is_zero(c)) {
            return v;
        }
    }
}

/// A seeded random weight vector: a uniformly chosen weight, then random
/// coordinates on its weight space.
pub fn random_weight_vector<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, seed: u64) -> Vec<F::Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let distinct: BTreeSet<&Vec<i64>> = m.weights.iter().collect();
    let distinct: Vec<&Vec<i64>> = distinct.into_iter().collect();
    let w = distinct[rng.gen_range(0..distinct.len())].clone();
    let support: Vec<usize> = (0..m.dim).filter(|&i| m.weights[i] == w).collect();
    random_vector(ctx, m.dim, &support, &mut rng)
}

pub fn randsub<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, seed: u64) -> Result<WeightedModule<F>> {
    let v = random_weight_vector(ctx, m, seed);
    let w = closure(ctx, m, &[v]);
    submodule(ctx, m, &w, format!("randsub({},{seed})", m.provenance))
}

pub fn quot<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, seed: u64) -> Result<WeightedModule<F>> {
    let v = random_weight_vector(ctx, m, seed);
    let w = closure(ctx, m, &[v]);
    quotient(ctx, m, &w, format!("quot({},{seed})", m.provenance))
}

/// The submodule generated by a seeded random vector with nonzero
/// coordinates on a whole torus class, preferring classes that contain several `X`-weights; the
/// result is in general not `X`-graded.
pub fn mixsub<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, seed: u64) -> Result<WeightedModule<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classes: BTreeMap<Vec<i64>, BTreeSet<Vec<i64>>> = BTreeMap::new();
    for w in &m.weights {
        classes.entry(ctx.k_class(w)).or_default().insert(w.clone());
    }
    let mixed: Vec<&Vec<i64>> = classes.iter().filter(|(_, ws)| ws.len() > 1).map(|(c, _)| c).collect();
    let pool: Vec<&Vec<i64>> = if mixed.is_empty() { classes.keys().collect() } else { mixed };
    let class = pool[rng.gen_range(0..pool.len())].clone();
    let support: Vec<usize> = (0..m.dim).filter(|&i| ctx.k_class(&m.weights[i]) == class).collect();
    let f = ctx.field();
    let mut v = vec![f.zero(); m.dim];
    for &i in &support {
        v[i] = loop {
            let c = f.random(&mut rng);
            if !f.is_zero(&c) {
                break c;
            }
        };
    }
    let w = closure(ctx, m, &[v]);
    submodule(ctx, m, &w, format!("mixsub({},{seed})", m.provenance))
}
