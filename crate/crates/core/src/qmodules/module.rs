use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::genericuq::Side;
use crate::kernelalg::{AlgGen, KernelAlgebra, ZetaBinomials, ZetaData};
use crate::rootdata::{RootDatum, RootType};
use crate::scalars::{q_binomial, Field};

use super::sparse::SparseMat;

/// Root datum, field and level shared by all modules of one computation.
#[derive(Debug)]
pub struct ModContext<F: Field> {
    pub z: Arc<ZetaData<F>>,
    pub r: u32,
    /// `p^r ell`.
    pub bound: u32,
    engine: OnceLock<KernelAlgebra<F>>,
    binom: ZetaBinomials<F::Elem>,
}

impl<F: Field> ModContext<F> {
    pub fn new(t: RootType, word: Option<&[usize]>, field: F, r: u32) -> Result<Self> {
        let z = Arc::new(ZetaData::new(t, word, field)?);
        Self::from_zeta(z, r)
    }

    pub fn from_zeta(z: Arc<ZetaData<F>>, r: u32) -> Result<Self> {
        let p = z.field.characteristic();
        if r >= 1 {
            if p == 0 {
                return Err(Error::Config("higher kernels need positive characteristic".into()));
            }
            if z.datum.type_label != RootType::A1 {
                return Err(Error::Config("higher kernels are implemented for A1 only".into()));
            }
            if r > 1 {
                return Err(Error::Config("only r <= 1 is supported".into()));
            }
        }
        let bound = (p.max(1) as u32).pow(r) * z.ell();
        let binom = ZetaBinomials::new(&z.field, 2 * bound as usize + 1, bound as usize);
        Ok(ModContext { z, r, bound, engine: OnceLock::new(), binom })
    }

    pub fn field(&self) -> &F {
        &self.z.field
    }

    pub fn datum(&self) -> &RootDatum {
        &self.z.datum
    }

    pub fn rank(&self) -> usize {
        self.z.rank()
    }

    pub fn ell(&self) -> u32 {
        self.z.ell()
    }

    /// Number of positive roots.
    pub fn n(&self) -> usize {
        self.z.n()
    }

    pub fn engine(&self) -> &KernelAlgebra<F> {
        self.engine.get_or_init(|| KernelAlgebra::engine(self.z.clone()))
    }

    /// `[n, t]` at `zeta` for `t < bound`.
    pub fn qbinom(&self, n: i64, t: u32) -> F::Elem {
        self.binom.get_periodic(self.field(), n, t, self.bound)
    }

    /// The ops present in a module carrying both halves.
    pub fn full_gens(&self) -> Vec<AlgGen> {
        let mut g: Vec<AlgGen> = (0..self.rank()).map(AlgGen::E).chain((0..self.rank()).map(AlgGen::F)).collect();
        if self.r >= 1 {
            g.push(AlgGen::EDiv(0, self.ell()));
            g.push(AlgGen::FDiv(0, self.ell()));
        }
        g
    }

    pub fn side_gens(&self, side: Side) -> Vec<AlgGen> {
        self.full_gens().into_iter().filter(|g| gen_side(*g) == Some(side)).collect()
    }

    /// Weight of a generator in fundamental coordinates.
    pub fn gen_weight(&self, g: AlgGen) -> Vec<i64> {
        let d = self.datum();
        let neg = |v: Vec<i64>| v.into_iter().map(|x| -x).collect();
        match g {
            AlgGen::E(i) => d.root_to_weight(&d.simple_root(i)),
            AlgGen::F(i) => neg(d.root_to_weight(&d.simple_root(i))),
            AlgGen::EDiv(i, n) => d.root_to_weight(&d.simple_root(i)).into_iter().map(|x| x * n as i64).collect(),
            AlgGen::FDiv(i, n) => d.root_to_weight(&d.simple_root(i)).into_iter().map(|x| -x * n as i64).collect(),
            AlgGen::ERoot(k) => d.root_to_weight(&self.z.order.gammas[k]),
            AlgGen::FRoot(k) => neg(d.root_to_weight(&self.z.order.gammas[k])),
            AlgGen::K(_) | AlgGen::Idem(_) => vec![0; self.rank()],
        }
    }

    /// `zeta^{(lambda, beta)}` for a weight `lambda` and a root-lattice
    /// element `beta` in simple-root coordinates.
    pub fn zeta_pair(&self, lambda: &[i64], beta: &[i64]) -> F::Elem {
        self.field().zeta_pow(self.datum().pair_weight_root(lambda, beta))
    }

    /// The class of a weight modulo `ell` as seen by the torus `K_i`:
    /// weights whose `zeta^{d_i lambda_i}` agree.
    pub fn k_class(&self, lambda: &[i64]) -> Vec<i64> {
        let ell = self.ell() as i64;
        lambda.iter().zip(&self.datum().d).map(|(&x, &d)| (x * d).rem_euclid(ell)).collect()
    }

    /// Canonical representative in `[0, ell)` of the weight class, in
    /// fundamental coordinates.
    pub fn class_rep(&self, lambda: &[i64]) -> Vec<i64> {
        let ell = self.ell() as i64;
        lambda.iter().map(|x| x.rem_euclid(ell)).collect()
    }

    /// `[n]_{zeta^d}!` at `zeta`.
    pub fn q_factorial(&self, n: u32, d: i64) -> F::Elem {
        let f = self.field();
        (1..=n as i64).fold(f.one(), |acc, s| f.mul(&acc, &f.q_integer(s, d)))
    }

    pub fn q_binomial_d(&self, n: i64, t: u32, d: i64) -> F::Elem {
        self.field().specialize(&q_binomial(n, t, d)).expect("q-binomials specialize")
    }

    /// Whether `lambda` lies in `p^r ell X`.
    pub fn in_bound_lattice(&self, lambda: &[i64]) -> bool {
        lambda.iter().all(|x| x.rem_euclid(self.bound as i64) == 0)
    }
}

pub fn gen_side(g: AlgGen) -> Option<Side> {
    match g {
        AlgGen::E(_) | AlgGen::EDiv(..) | AlgGen::ERoot(_) => Some(Side::E),
        AlgGen::F(_) | AlgGen::FDiv(..) | AlgGen::FRoot(_) => Some(Side::F),
        _ => None,
    }
}

/// Which structures a module is known to carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct LiftFlags {
    /// Weights are genuine `X`-weights, not only torus classes.
    pub torus_compatible: bool,
    pub borel_minus: bool,
    pub borel_plus: bool,
    pub full_u: bool,
}

pub type Character = BTreeMap<Vec<i64>, usize>;

/// A finite dimensional module given by generator matrices on a basis of
/// weight vectors. When `flags.torus_compatible` is false the weights are
/// only class representatives modulo `ell`.
#[derive(Clone, Debug)]
pub struct WeightedModule<F: Field> {
    pub dim: usize,
    pub weights: Vec<Vec<i64>>,
    pub ops: BTreeMap<AlgGen, SparseMat<F::Elem>>,
    pub flags: LiftFlags,
    pub provenance: String,
}

impl<F: Field> WeightedModule<F> {
    pub fn graded(&self) -> bool {
        self.flags.torus_compatible
    }

    pub fn op(&self, g: AlgGen) -> Result<&SparseMat<F::Elem>> {
        self.ops.get(&g).ok_or_else(|| Error::Module(format!("{g:?} does not act on {}", self.provenance)))
    }

    pub fn has_side(&self, side: Side) -> bool {
        self.ops.keys().any(|g| gen_side(*g) == Some(side))
    }

    /// Torus class of each basis vector.
    pub fn classes(&self, ctx: &ModContext<F>) -> Vec<Vec<i64>> {
        self.weights.iter().map(|w| ctx.k_class(w)).collect()
    }

    /// `K_i` eigenvalue of each basis vector.
    pub fn k_diag(&self, ctx: &ModContext<F>, i: usize, power: i64) -> Vec<F::Elem> {
        let d = ctx.datum().d[i];
        self.weights.iter().map(|w| ctx.field().zeta_pow(power * d * w[i])).collect()
    }

    pub fn character(&self) -> Option<Character> {
        if !self.graded() {
            return None;
        }
        let mut c = Character::new();
        for w in &self.weights {
            *c.entry(w.clone()).or_insert(0) += 1;
        }
        Some(c)
    }

    /// Root vector `X_{gamma_k}` through its expression in simple generators.
    pub fn root_op(&self, ctx: &ModContext<F>, side: Side, k: usize) -> Result<SparseMat<F::Elem>> {
        let f = ctx.field();
        let poly = match side {
            Side::E => &ctx.z.e_roots[k],
            Side::F => &ctx.z.f_roots[k],
        };
        let mut acc = SparseMat::zero(self.dim, self.dim);
        for (w, c) in poly {
            let mut m = SparseMat::identity(f, self.dim);
            for &i in w.iter() {
                let g = match side {
                    Side::E => AlgGen::E(i as usize),
                    Side::F => AlgGen::F(i as usize),
                };
                m = m.mul(f, self.op(g)?);
            }
            acc = acc.lin_comb(f, &f.one(), &m, c);
        }
        Ok(acc)
    }

    /// The action of any kernel algebra generator.
    pub fn gen_action(&self, ctx: &ModContext<F>, g: AlgGen) -> Result<SparseMat<F::Elem>> {
        let f = ctx.field();
        match g {
            AlgGen::E(_) | AlgGen::F(_) => self.op(g).cloned(),
            AlgGen::K(i) => Ok(SparseMat::diagonal(f, self.k_diag(ctx, i, 1))),
            AlgGen::ERoot(k) => self.root_op(ctx, Side::E, k),
            AlgGen::FRoot(k) => self.root_op(ctx, Side::F, k),
            AlgGen::EDiv(i, n) => self.div_op(ctx, Side::E, i, n),
            AlgGen::FDiv(i, n) => self.div_op(ctx, Side::F, i, n),
            AlgGen::Idem(c) => {
                if !self.graded() && ctx.r > 0 {
                    return Err(Error::Module(format!("{}: torus idempotents need X-weights", self.provenance)));
                }
                let b = ctx.bound as i64;
                let d = self
                    .weights
                    .iter()
                    .map(|w| if w[0].rem_euclid(b) == c as i64 { f.one() } else { f.zero() })
                    .collect();
                Ok(SparseMat::diagonal(f, d))
            }
        }
    }

    /// Divided power `X_i^{(n)}` for `n < bound`.
    pub fn div_op(&self, ctx: &ModContext<F>, side: Side, i: usize, n: u32) -> Result<SparseMat<F::Elem>> {
        let f = ctx.field();
        let ell = ctx.ell();
        let d = ctx.datum().d[i];
        let (g1, gl) = match side {
            Side::E => (AlgGen::E(i), AlgGen::EDiv(i, ell)),
            Side::F => (AlgGen::F(i), AlgGen::FDiv(i, ell)),
        };
        let (n0, n1) = (n % ell, n / ell);
        if n1 > 0 && ctx.r == 0 {
            return Ok(SparseMat::zero(self.dim, self.dim));
        }
        let inv0 = f.inv(&ctx.q_factorial(n0, d)).expect("[n]! is a unit below ell");
        let mut m = self.op(g1)?.pow(f, n0).scale(f, &inv0);
        if n1 > 0 {
            let fact = (1..=n1 as i64).fold(f.one(), |a, s| f.mul(&a, &f.from_i64(s)));
            let inv1 = f.inv(&fact).ok_or_else(|| Error::Config("divided power order reaches p^2 ell".into()))?;
            m = m.mul(f, &self.op(gl)?.pow(f, n1)).scale(f, &inv1);
        }
        Ok(m)
    }

    /// Checks that every generator maps weight spaces to the right weight
    /// spaces (torus classes for non-graded modules).
    pub fn check_grading(&self, ctx: &ModContext<F>) -> Result<()> {
        for (g, m) in &self.ops {
            let gw = ctx.gen_weight(*g);
            for (j, col) in m.cols.iter().enumerate() {
                let target: Vec<i64> = self.weights[j].iter().zip(&gw).map(|(a, b)| a + b).collect();
                for (i, _) in col {
                    let ok = if self.graded() {
                        self.weights[*i] == target
                    } else {
                        ctx.k_class(&self.weights[*i]) == ctx.k_class(&target)
                    };
                    if !ok {
                        return Err(Error::Module(format!(
                            "{}: {g:?} maps weight {:?} to {:?}",
                            self.provenance, self.weights[j], self.weights[*i]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks the defining relations of the halves and algebras named by the
    /// flags.
    pub fn check_relations(&self, ctx: &ModContext<F>) -> Result<()> {
        self.check_grading(ctx)?;
        if self.flags.borel_minus || self.flags.full_u {
            self.check_half(ctx, Side::F)?;
        }
        if self.flags.borel_plus || self.flags.full_u {
            self.check_half(ctx, Side::E)?;
        }
        if self.flags.full_u {
            self.check_mixed(ctx)?;
        }
        Ok(())
    }

    fn fail(&self, what: &str) -> Error {
        Error::Module(format!("{}: relation {what} fails", self.provenance))
    }

    fn check_half(&self, ctx: &ModContext<F>, side: Side) -> Result<()> {
        let f = ctx.field();
        let d = ctx.datum();
        let x = |i: usize| match side {
            Side::E => self.op(AlgGen::E(i)),
            Side::F => self.op(AlgGen::F(i)),
        };
        for i in 0..d.rank {
            for j in 0..d.rank {
                if i == j {
                    continue;
                }
                let n = (1 - d.cartan[j][i]) as u32;
                let mut acc = SparseMat::zero(self.dim, self.dim);
                for s in 0..=n {
                    let c = ctx.q_binomial_d(n as i64, s, d.d[i]);
                    let c = if s % 2 == 1 { f.neg(&c) } else { c };
                    let term = x(i)?.pow(f, n - s).mul(f, x(j)?).mul(f, &x(i)?.pow(f, s));
                    acc = acc.lin_comb(f, &f.one(), &term, &c);
                }
                if !acc.is_zero() {
                    return Err(self.fail(&format!("q-Serre ({i},{j}) on {side:?}")));
                }
            }
        }
        for k in 0..ctx.n() {
            if !self.root_op(ctx, side, k)?.pow(f, ctx.ell()).is_zero() {
                return Err(self.fail(&format!("root vector {} to the ell on {side:?}", k + 1)));
            }
        }
        if ctx.r >= 1 {
            let (g1, gl) = match side {
                Side::E => (AlgGen::E(0), AlgGen::EDiv(0, ctx.ell())),
                Side::F => (AlgGen::F(0), AlgGen::FDiv(0, ctx.ell())),
            };
            let a = self.op(g1)?;
            let b = self.op(gl)?;
            if a.mul(f, b) != b.mul(f, a) {
                return Err(self.fail("commutation of divided powers"));
            }
            let p = f.characteristic() as u32;
            if !b.pow(f, p).is_zero() {
                return Err(self.fail("nilpotency of the divided power"));
            }
        }
        Ok(())
    }

    fn check_mixed(&self, ctx: &ModContext<F>) -> Result<()> {
        let f = ctx.field();
        let d = ctx.datum();
        for i in 0..d.rank {
            for j in 0..d.rank {
                let e = self.op(AlgGen::E(i))?;
                let ff = self.op(AlgGen::F(j))?;
                let comm = e.mul(f, ff).sub(f, &ff.mul(f, e));
                let want = if i == j {
                    let zi = f.zeta_pow(d.d[i]);
                    let den = f.inv(&f.sub(&zi, &f.inv(&zi).unwrap())).unwrap();
                    let diag: Vec<F::Elem> = self
                        .k_diag(ctx, i, 1)
                        .iter()
                        .zip(self.k_diag(ctx, i, -1))
                        .map(|(a, b)| f.mul(&den, &f.sub(a, &b)))
                        .collect();
                    SparseMat::diagonal(f, diag)
                } else {
                    SparseMat::zero(self.dim, self.dim)
                };
                if comm != want {
                    return Err(self.fail(&format!("[E_{}, F_{}]", i + 1, j + 1)));
                }
            }
        }
        if ctx.r >= 1 {
            if !self.graded() {
                return Err(Error::Module("higher kernels need graded modules".into()));
            }
            let ell = ctx.ell();
            for (n, a) in [(1, ell), (ell, 1), (ell, ell), (ell + 1, ell + 2)] {
                let lhs = self.div_op(ctx, Side::E, 0, n)?.mul(f, &self.div_op(ctx, Side::F, 0, a)?);
                let mut rhs = SparseMat::zero(self.dim, self.dim);
                for t in 0..=n.min(a) {
                    let fm = self.div_op(ctx, Side::F, 0, a - t)?;
                    let em = self.div_op(ctx, Side::E, 0, n - t)?;
                    // [K; 2t-n-a, t] on the weight after E^{(n-t)}.
                    let shift = 2 * t as i64 - n as i64 - a as i64;
                    let diag: Vec<F::Elem> =
                        self.weights.iter().map(|w| ctx.qbinom(w[0] + shift, t)).collect();
                    let term = fm.mul(f, &em.scale_rows(f, &diag));
                    rhs = rhs.add(f, &term);
                }
                if lhs != rhs {
                    return Err(self.fail(&format!("E^({n}) F^({a}) commutation")));
                }
            }
        }
        Ok(())
    }

    /// Text bundle: dimension, weights, then one row-major matrix per
    /// generator with canonical scalar serialization.
    pub fn to_text(&self, f: &F) -> String {
        let mut s = format!("dim {}\n", self.dim);
        for w in &self.weights {
            s.push_str(&format!("{}\n", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")));
        }
        for (g, m) in &self.ops {
            s.push_str(&format!("op {g:?}\n"));
            let dense = m.to_dense(f);
            for i in 0..self.dim {
                let row: Vec<String> = (0..self.dim).map(|j| f.elem_to_string(dense.get(i, j))).collect();
                s.push_str(&row.join(" "));
                s.push('\n');
            }
        }
        s
    }
}
