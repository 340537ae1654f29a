use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::genericuq::{Exps, Side};
use crate::linalg::{nullspace, Matrix};
use crate::scalars::{Field, FieldOps};

use super::half::{HalfAlgebra, SVec};
use super::table::ZetaData;

/// Which subalgebra of the small quantum group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    UMinus,
    UPlus,
    BMinus,
    BPlus,
    G,
    /// Spanned by monomials in the first `m` negative root vectors.
    Am(usize),
    /// The positive counterpart of `Am`.
    AmPlus(usize),
    /// Generated by the single root vector at position `k` of the order.
    Root(usize, Side),
    TorusExt(Box<Kind>),
}

impl Kind {
    pub fn is_local(&self) -> bool {
        matches!(self, Kind::UMinus | Kind::UPlus | Kind::Am(_) | Kind::AmPlus(_) | Kind::Root(..))
    }

    pub fn omega(&self) -> Kind {
        match self {
            Kind::UMinus => Kind::UPlus,
            Kind::UPlus => Kind::UMinus,
            Kind::BMinus => Kind::BPlus,
            Kind::BPlus => Kind::BMinus,
            Kind::G => Kind::G,
            Kind::Am(m) => Kind::AmPlus(*m),
            Kind::AmPlus(m) => Kind::Am(*m),
            Kind::Root(k, Side::E) => Kind::Root(*k, Side::F),
            Kind::Root(k, Side::F) => Kind::Root(*k, Side::E),
            Kind::TorusExt(k) => Kind::TorusExt(Box::new(k.omega())),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::UMinus => write!(f, "u-"),
            Kind::UPlus => write!(f, "u+"),
            Kind::BMinus => write!(f, "b-"),
            Kind::BPlus => write!(f, "b+"),
            Kind::G => write!(f, "g"),
            Kind::Am(m) => write!(f, "Am:{m}"),
            Kind::AmPlus(m) => write!(f, "Am+:{m}"),
            Kind::Root(k, Side::F) => write!(f, "root:{}:-", k + 1),
            Kind::Root(k, Side::E) => write!(f, "root:{}:+", k + 1),
            Kind::TorusExt(k) => write!(f, "T{k}"),
        }
    }
}

impl FromStr for Kind {
    type Err = Error;

    /// Roots in `root:<k>:<side>` are 1-based positions in the convex order.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { pos: 0, msg: format!("unknown algebra descriptor '{s}'") };
        Ok(match s {
            "u-" => Kind::UMinus,
            "u+" => Kind::UPlus,
            "b-" => Kind::BMinus,
            "b+" => Kind::BPlus,
            "g" => Kind::G,
            _ => {
                if let Some(rest) = s.strip_prefix("Am+:") {
                    Kind::AmPlus(rest.parse().map_err(|_| bad())?)
                } else if let Some(rest) = s.strip_prefix("Am:") {
                    Kind::Am(rest.parse().map_err(|_| bad())?)
                } else if let Some(rest) = s.strip_prefix("root:") {
                    let (k, side) = rest.split_once(':').ok_or_else(bad)?;
                    let k: usize = k.parse().map_err(|_| bad())?;
                    if k == 0 {
                        return Err(bad());
                    }
                    let side = match side {
                        "-" | "f" | "minus" => Side::F,
                        "+" | "e" | "plus" => Side::E,
                        _ => return Err(bad()),
                    };
                    Kind::Root(k - 1, side)
                } else if let Some(rest) = s.strip_prefix('T') {
                    Kind::TorusExt(Box::new(rest.parse()?))
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

/// Basis monomial `F^f K^k E^e` (non-divided root vectors, torus exponents
/// taken mod `ell`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub f: Exps,
    pub k: Vec<u32>,
    pub e: Exps,
}

pub type Elem<E> = BTreeMap<Mono, E>;

fn add_term<F: FieldOps>(f: &F, v: &mut Elem<F::Elem>, m: Mono, c: F::Elem) {
    if f.is_zero(&c) {
        return;
    }
    match v.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = f.add(o.get(), &c);
            if f.is_zero(&s) {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Algebra generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgGen {
    E(usize),
    F(usize),
    K(usize),
    ERoot(usize),
    FRoot(usize),
    /// Divided powers `E_i^{(n)}`, `F_i^{(n)}` (rank one higher kernels).
    EDiv(usize, u32),
    FDiv(usize, u32),
    /// Torus idempotent of weight `c` modulo the kernel's bound.
    Idem(u32),
}

type EPastF<E> = Vec<(Exps, Vec<i64>, E)>;

#[derive(Debug)]
pub struct KernelAlgebra<F: Field> {
    pub kind: Kind,
    pub r: u32,
    pub z: Arc<ZetaData<F>>,
    pub fhalf: Arc<HalfAlgebra<F>>,
    pub ehalf: Arc<HalfAlgebra<F>>,
    pub f_roots: Vec<usize>,
    pub e_roots: Vec<usize>,
    pub torus: bool,
    pub basis: Vec<Mono>,
    pub index: HashMap<Mono, usize>,
    e_past_f: RwLock<HashMap<(usize, Exps), Arc<EPastF<F::Elem>>>>,
    matrices: RwLock<HashMap<AlgGen, Arc<Vec<Vec<(usize, F::Elem)>>>>>,
}

impl<F: Field> KernelAlgebra<F> {
    /// Builds the algebra for `r = 0`; higher kernels are handled by the
    /// rank one construction in `higher`.
    pub fn build(kind: Kind, r: u32, z: Arc<ZetaData<F>>) -> Result<Self> {
        let halves = (Arc::new(HalfAlgebra::new(z.clone(), Side::F)), Arc::new(HalfAlgebra::new(z.clone(), Side::E)));
        Self::build_with(kind, r, z, halves)
    }

    /// Shares the half-algebra caches between several kernels.
    pub fn build_with(
        kind: Kind,
        r: u32,
        z: Arc<ZetaData<F>>,
        halves: (Arc<HalfAlgebra<F>>, Arc<HalfAlgebra<F>>),
    ) -> Result<Self> {
        if r >= 1 {
            if z.field.characteristic() == 0 {
                return Err(Error::Config("higher kernels need positive characteristic".into()));
            }
            return Err(Error::Config(
                "higher kernels are only available through the rank one construction".into(),
            ));
        }
        let n = z.n();
        let all: Vec<usize> = (0..n).collect();
        let (f_roots, e_roots, torus) = Self::shape(&kind, n, &all)?;
        let rank = z.rank();
        let ell = z.ell();
        let (fhalf, ehalf) = halves;
        let fb = fhalf.basis(&f_roots);
        let eb = ehalf.basis(&e_roots);
        let mut ks = vec![vec![0u32; rank]];
        if torus {
            for i in 0..rank {
                let mut next = Vec::new();
                for k in &ks {
                    for x in 0..ell {
                        let mut k2 = k.clone();
                        k2[i] = x;
                        next.push(k2);
                    }
                }
                ks = next;
            }
        }
        let mut basis = Vec::with_capacity(fb.len() * ks.len() * eb.len());
        for f in &fb {
            for k in &ks {
                for e in &eb {
                    basis.push(Mono { f: f.clone(), k: k.clone(), e: e.clone() });
                }
            }
        }
        basis.sort();
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(KernelAlgebra {
            kind,
            r,
            z,
            fhalf,
            ehalf,
            f_roots,
            e_roots,
            torus,
            basis,
            index,
            e_past_f: RwLock::new(HashMap::new()),
            matrices: RwLock::new(HashMap::new()),
        })
    }

    /// The multiplication engine of `u_zeta(g)` without an enumerated basis,
    /// for computing products whose support is known to be small.
    pub fn engine(z: Arc<ZetaData<F>>) -> Self {
        let n = z.n();
        KernelAlgebra {
            kind: Kind::G,
            r: 0,
            fhalf: Arc::new(HalfAlgebra::new(z.clone(), Side::F)),
            ehalf: Arc::new(HalfAlgebra::new(z.clone(), Side::E)),
            f_roots: (0..n).collect(),
            e_roots: (0..n).collect(),
            torus: true,
            basis: Vec::new(),
            index: HashMap::new(),
            z,
            e_past_f: RwLock::new(HashMap::new()),
            matrices: RwLock::new(HashMap::new()),
        }
    }

    fn shape(kind: &Kind, n: usize, all: &[usize]) -> Result<(Vec<usize>, Vec<usize>, bool)> {
        Ok(match kind {
            Kind::UMinus => (all.to_vec(), vec![], false),
            Kind::UPlus => (vec![], all.to_vec(), false),
            Kind::BMinus => (all.to_vec(), vec![], true),
            Kind::BPlus => (vec![], all.to_vec(), true),
            Kind::G => (all.to_vec(), all.to_vec(), true),
            Kind::Am(m) | Kind::AmPlus(m) => {
                if *m == 0 || *m > n {
                    return Err(Error::Config(format!("A_m needs 1 <= m <= {n}, got {m}")));
                }
                let r: Vec<usize> = (0..*m).collect();
                if matches!(kind, Kind::Am(_)) {
                    (r, vec![], false)
                } else {
                    (vec![], r, false)
                }
            }
            Kind::Root(k, side) => {
                if *k >= n {
                    return Err(Error::Config(format!("root position {} out of range", k + 1)));
                }
                match side {
                    Side::F => (vec![*k], vec![], false),
                    Side::E => (vec![], vec![*k], false),
                }
            }
            Kind::TorusExt(inner) => {
                if matches!(**inner, Kind::TorusExt(_) | Kind::G) {
                    return Err(Error::Config(format!("cannot extend {inner} by the torus")));
                }
                let (f, e, _) = Self::shape(inner, n, all)?;
                (f, e, true)
            }
        })
    }

    pub fn field(&self) -> &F {
        &self.z.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.z.rank()
    }

    fn all_f(&self) -> bool {
        self.f_roots.len() == self.z.n()
    }

    fn all_e(&self) -> bool {
        self.e_roots.len() == self.z.n()
    }

    /// Distinguished algebra generators.
    pub fn generators(&self) -> Vec<AlgGen> {
        let mut g = Vec::new();
        if self.all_f() {
            g.extend((0..self.rank()).map(AlgGen::F));
        } else {
            g.extend(self.f_roots.iter().map(|&k| AlgGen::FRoot(k)));
        }
        if self.all_e() {
            g.extend((0..self.rank()).map(AlgGen::E));
        } else {
            g.extend(self.e_roots.iter().map(|&k| AlgGen::ERoot(k)));
        }
        if self.torus {
            g.extend((0..self.rank()).map(AlgGen::K));
        }
        g
    }

    /// Counit of a generator.
    pub fn counit(&self, g: AlgGen) -> F::Elem {
        match g {
            AlgGen::K(_) => self.field().one(),
            _ => self.field().zero(),
        }
    }

    pub fn one(&self) -> Elem<F::Elem> {
        let mut v = Elem::new();
        v.insert(self.unit_mono(), self.field().one());
        v
    }

    pub fn unit_mono(&self) -> Mono {
        Mono { f: vec![0; self.z.n()], k: vec![0; self.rank()], e: vec![0; self.z.n()] }
    }

    pub fn mono_elem(&self, m: &Mono) -> Elem<F::Elem> {
        let mut v = Elem::new();
        v.insert(m.clone(), self.field().one());
        v
    }

    /// `K_mu` with `mu` in simple-root coordinates, reduced mod `ell`.
    fn k_add(&self, k: &[u32], mu: &[i64]) -> Vec<u32> {
        let ell = self.z.ell() as i64;
        k.iter().zip(mu).map(|(&a, &b)| (a as i64 + b).rem_euclid(ell) as u32).collect()
    }

    fn contains_gen(&self, g: AlgGen) -> bool {
        match g {
            AlgGen::F(_) => self.all_f(),
            AlgGen::E(_) => self.all_e(),
            AlgGen::K(_) => self.torus,
            AlgGen::FRoot(k) => self.f_roots.contains(&k),
            AlgGen::ERoot(k) => self.e_roots.contains(&k),
            AlgGen::EDiv(..) | AlgGen::FDiv(..) | AlgGen::Idem(_) => false,
        }
    }

    /// Left multiplication of a basis monomial by a generator.
    pub fn left_gen_mono(&self, g: AlgGen, m: &Mono) -> Elem<F::Elem> {
        let f = self.field();
        let z = &self.z;
        let mut out = Elem::new();
        match g {
            AlgGen::F(i) => return self.left_gen_mono(AlgGen::FRoot(z.simple_pos[i]), m),
            AlgGen::FRoot(k) => {
                for (a, c) in self.fhalf.mul_root(k, &m.f).iter() {
                    add_term(f, &mut out, Mono { f: a.clone(), k: m.k.clone(), e: m.e.clone() }, c.clone());
                }
            }
            AlgGen::K(i) => {
                let wt = z.exps_root_weight(&m.f);
                let c = f.zeta_pow(-z.datum.inner(&z.datum.simple_root(i), &wt));
                let mut unit = vec![0i64; self.rank()];
                unit[i] = 1;
                add_term(f, &mut out, Mono { f: m.f.clone(), k: self.k_add(&m.k, &unit), e: m.e.clone() }, c);
            }
            AlgGen::ERoot(k) if self.f_roots.is_empty() => {
                let kmu: Vec<i64> = m.k.iter().map(|&x| x as i64).collect();
                let c0 = f.zeta_pow(-z.datum.inner(&kmu, &z.order.gammas[k]));
                for (b, c) in self.ehalf.mul_root(k, &m.e).iter() {
                    add_term(f, &mut out, Mono { f: m.f.clone(), k: m.k.clone(), e: b.clone() }, f.mul(&c0, c));
                }
            }
            AlgGen::E(i) if self.f_roots.is_empty() => {
                return self.left_gen_mono(AlgGen::ERoot(z.simple_pos[i]), m);
            }
            AlgGen::E(i) => {
                let kmu: Vec<i64> = m.k.iter().map(|&x| x as i64).collect();
                let c0 = f.zeta_pow(-z.datum.inner(&kmu, &z.datum.simple_root(i)));
                for (b, c) in self.ehalf.mul_root(z.simple_pos[i], &m.e).iter() {
                    add_term(f, &mut out, Mono { f: m.f.clone(), k: m.k.clone(), e: b.clone() }, f.mul(&c0, c));
                }
                for (a, nu, c) in self.e_past_f(i, &m.f).iter() {
                    add_term(f, &mut out, Mono { f: a.clone(), k: self.k_add(&m.k, nu), e: m.e.clone() }, c.clone());
                }
            }
            AlgGen::EDiv(..) | AlgGen::FDiv(..) | AlgGen::Idem(_) => {
                panic!("{g:?} is not available in the small quantum group")
            }
            AlgGen::ERoot(k) => {
                // Through the simple generators.
                let mut acc = Elem::new();
                for (w, c) in &z.e_roots[k] {
                    let mut v = self.mono_elem(m);
                    for &i in w.iter().rev() {
                        v = self.left_gen(AlgGen::E(i as usize), &v);
                    }
                    for (mm, c2) in v {
                        add_term(f, &mut acc, mm, f.mul(c, &c2));
                    }
                }
                return acc;
            }
        }
        out
    }

    /// `E_i F^a = F^a E_i + sum c F^{a'} K_nu`; returns the sum.
    fn e_past_f(&self, i: usize, a: &[u32]) -> Arc<EPastF<F::Elem>> {
        if let Some(v) = self.e_past_f.read().unwrap().get(&(i, a.to_vec())) {
            return v.clone();
        }
        let f = self.field();
        let z = &self.z;
        let n = z.n();
        let mut letters = Vec::new();
        for (s, &x) in a.iter().enumerate() {
            for _ in 0..x {
                letters.push(s);
            }
        }
        let mut acc: BTreeMap<(Exps, Vec<i64>), F::Elem> = BTreeMap::new();
        let ell = z.ell() as i64;
        for t in 0..letters.len() {
            let mut prefix = vec![0u32; n];
            for &s in &letters[..t] {
                prefix[s] += 1;
            }
            let mut suffix = vec![0u32; n];
            for &s in &letters[t + 1..] {
                suffix[s] += 1;
            }
            let swt = z.exps_root_weight(&suffix);
            for (a2, nu, c) in &z.ef[i][letters[t]] {
                // K_nu F^suffix = zeta^{-(nu, wt suffix)} F^suffix K_nu.
                let c = f.mul(c, &f.zeta_pow(-z.datum.inner(nu, &swt)));
                let mid = self.fhalf.mul_mono(a2, &suffix);
                let mut prod = SVec::new();
                for (b, cb) in mid {
                    for (b2, cb2) in self.fhalf.mul_mono(&prefix, &b) {
                        super::half::svec_add_term(f, &mut prod, b2, f.mul(&cb, &cb2));
                    }
                }
                let nu_mod: Vec<i64> = nu.iter().map(|x| x.rem_euclid(ell)).collect();
                for (b, cb) in prod {
                    let key = (b, nu_mod.clone());
                    let v = f.mul(&c, &cb);
                    let s = match acc.get(&key) {
                        Some(x) => f.add(x, &v),
                        None => v,
                    };
                    if f.is_zero(&s) {
                        acc.remove(&key);
                    } else {
                        acc.insert(key, s);
                    }
                }
            }
        }
        let v: Arc<EPastF<F::Elem>> = Arc::new(acc.into_iter().map(|((b, nu), c)| (b, nu, c)).collect());
        self.e_past_f.write().unwrap().insert((i, a.to_vec()), v.clone());
        v
    }

    pub fn left_gen(&self, g: AlgGen, x: &Elem<F::Elem>) -> Elem<F::Elem> {
        let f = self.field();
        let mut out = Elem::new();
        for (m, c) in x {
            for (m2, c2) in self.left_gen_mono(g, m) {
                add_term(f, &mut out, m2, f.mul(c, &c2));
            }
        }
        out
    }

    fn left_root(&self, side: Side, k: usize, x: &Elem<F::Elem>) -> Elem<F::Elem> {
        match side {
            Side::F => self.left_gen(AlgGen::FRoot(k), x),
            Side::E => self.left_gen(AlgGen::ERoot(k), x),
        }
    }

    /// `m * y` for a basis monomial `m`.
    pub fn apply_mono(&self, m: &Mono, y: &Elem<F::Elem>) -> Elem<F::Elem> {
        let mut v = y.clone();
        for s in (0..m.e.len()).rev() {
            for _ in 0..m.e[s] {
                v = self.left_root(Side::E, s, &v);
            }
        }
        for i in 0..m.k.len() {
            for _ in 0..m.k[i] {
                v = self.left_gen(AlgGen::K(i), &v);
            }
        }
        for s in (0..m.f.len()).rev() {
            for _ in 0..m.f[s] {
                v = self.left_root(Side::F, s, &v);
            }
        }
        v
    }

    pub fn multiply(&self, x: &Elem<F::Elem>, y: &Elem<F::Elem>) -> Elem<F::Elem> {
        let f = self.field();
        let mut out = Elem::new();
        for (m, c) in x {
            for (m2, c2) in self.apply_mono(m, y) {
                add_term(f, &mut out, m2, f.mul(c, &c2));
            }
        }
        out
    }

    pub fn gen_elem(&self, g: AlgGen) -> Elem<F::Elem> {
        self.left_gen(g, &self.one())
    }

    /// Whether every term lies in the algebra's basis.
    pub fn contains(&self, x: &Elem<F::Elem>) -> bool {
        x.keys().all(|m| self.index.contains_key(m))
    }

    /// Left multiplication matrix of a generator, as sparse columns.
    pub fn gen_matrix(&self, g: AlgGen) -> Result<Arc<Vec<Vec<(usize, F::Elem)>>>> {
        if !self.contains_gen(g) {
            return Err(Error::Config(format!("{g:?} is not a generator of {}", self.kind)));
        }
        if let Some(m) = self.matrices.read().unwrap().get(&g) {
            return Ok(m.clone());
        }
        let mut cols = Vec::with_capacity(self.dim());
        for m in &self.basis {
            let mut col = Vec::new();
            for (m2, c) in self.left_gen_mono(g, m) {
                let j = *self.index.get(&m2).ok_or_else(|| {
                    Error::Inconsistent(format!("{g:?} maps {m:?} outside {}", self.kind))
                })?;
                col.push((j, c));
            }
            col.sort_by_key(|p| p.0);
            cols.push(col);
        }
        let cols = Arc::new(cols);
        self.matrices.write().unwrap().insert(g, cols.clone());
        Ok(cols)
    }

    pub fn to_dense(&self, x: &Elem<F::Elem>) -> Vec<F::Elem> {
        let f = self.field();
        let mut v = vec![f.zero(); self.dim()];
        for (m, c) in x {
            v[self.index[m]] = c.clone();
        }
        v
    }

    pub fn from_dense(&self, v: &[F::Elem]) -> Elem<F::Elem> {
        let f = self.field();
        let mut out = Elem::new();
        for (i, c) in v.iter().enumerate() {
            if !f.is_zero(c) {
                out.insert(self.basis[i].clone(), c.clone());
            }
        }
        out
    }

    /// Weight of a basis monomial in simple-root coordinates.
    pub fn mono_weight(&self, m: &Mono) -> Vec<i64> {
        let fw = self.z.exps_root_weight(&m.f);
        let ew = self.z.exps_root_weight(&m.e);
        ew.iter().zip(&fw).map(|(a, b)| a - b).collect()
    }

    /// The product of top powers of the root vectors of a local algebra.
    pub fn top_monomial(&self) -> Mono {
        let top = self.z.ell() - 1;
        let mut m = self.unit_mono();
        for &k in &self.f_roots {
            m.f[k] = top;
        }
        for &k in &self.e_roots {
            m.e[k] = top;
        }
        m
    }

    /// Left invariants `{x : g x = eps(g) x}`; the candidates are restricted
    /// to monomials with full F-part when the F-part is present, which
    /// contains every left invariant because the algebra is free over its
    /// F-part with the F-part acting on the left.
    pub fn left_invariants(&self) -> Result<Vec<Elem<F::Elem>>> {
        let ftop = {
            let mut t = vec![0u32; self.z.n()];
            for &k in &self.f_roots {
                t[k] = self.z.ell() - 1;
            }
            t
        };
        let cands: Vec<&Mono> = if self.f_roots.is_empty() {
            self.basis.iter().collect()
        } else {
            self.basis.iter().filter(|m| m.f == ftop).collect()
        };
        let images = |m: &Mono| -> Vec<Elem<F::Elem>> {
            self.generators()
                .into_iter()
                .map(|g| {
                    let mut v = self.left_gen_mono(g, m);
                    add_term(self.field(), &mut v, m.clone(), self.field().neg(&self.counit(g)));
                    v
                })
                .collect()
        };
        self.invariant_solve(&cands, images)
    }

    /// Right invariants `{x : x g = eps(g) x}`.
    pub fn right_invariants(&self) -> Result<Vec<Elem<F::Elem>>> {
        let gens: Vec<(AlgGen, Elem<F::Elem>)> = self.generators().into_iter().map(|g| (g, self.gen_elem(g))).collect();
        let cands: Vec<&Mono> = self.basis.iter().collect();
        let images = |m: &Mono| -> Vec<Elem<F::Elem>> {
            gens.iter()
                .map(|(g, ge)| {
                    let mut v = self.apply_mono(m, ge);
                    add_term(self.field(), &mut v, m.clone(), self.field().neg(&self.counit(*g)));
                    v
                })
                .collect()
        };
        self.invariant_solve(&cands, images)
    }

    fn invariant_solve(
        &self,
        cands: &[&Mono],
        images: impl Fn(&Mono) -> Vec<Elem<F::Elem>>,
    ) -> Result<Vec<Elem<F::Elem>>> {
        let f = self.field();
        let mut row_index: HashMap<(usize, Mono), usize> = HashMap::new();
        let mut entries: Vec<(usize, usize, F::Elem)> = Vec::new();
        for (j, m) in cands.iter().enumerate() {
            for (g, img) in images(m).into_iter().enumerate() {
                for (m2, c) in img {
                    let len = row_index.len();
                    let r = *row_index.entry((g, m2)).or_insert(len);
                    entries.push((r, j, c));
                }
            }
        }
        let mut mat = Matrix::filled(row_index.len(), cands.len(), f.zero());
        for (r, j, c) in entries {
            let s = f.add(mat.get(r, j), &c);
            mat.set(r, j, s);
        }
        let ns = if row_index.is_empty() {
            (0..cands.len())
                .map(|j| {
                    let mut v = vec![f.zero(); cands.len()];
                    v[j] = f.one();
                    v
                })
                .collect()
        } else {
            nullspace(f, &mat)
        };
        Ok(ns
            .into_iter()
            .map(|v| {
                let mut e = Elem::new();
                for (j, c) in v.into_iter().enumerate() {
                    add_term(f, &mut e, cands[j].clone(), c);
                }
                e
            })
            .collect())
    }

    /// Whether the `n`-dimensional algebra's multiplication is associative on
    /// the given triples of basis indices.
    pub fn check_associative(&self, triples: &[(usize, usize, usize)]) -> Result<()> {
        for &(a, b, c) in triples {
            let x = self.mono_elem(&self.basis[a]);
            let y = self.mono_elem(&self.basis[b]);
            let w = self.mono_elem(&self.basis[c]);
            let l = self.multiply(&self.multiply(&x, &y), &w);
            let r = self.multiply(&x, &self.multiply(&y, &w));
            if l != r {
                return Err(Error::Inconsistent(format!(
                    "{}: multiplication is not associative on basis elements {a}, {b}, {c}",
                    self.kind
                )));
            }
        }
        Ok(())
    }
}
