//! Rank one kernels with divided powers, `U_zeta(G_r)` for `sl_2`.
//!
//! Basis `F^{(a)} e_c E^{(b)}` with `a, b < p^r ell` and `e_c` the torus
//! idempotent of weights congruent to `c` modulo `p^r ell`. Multiplication
//! uses
//!
//! `E^{(n)} F^{(a)} = sum_t F^{(a-t)} [K; 2t-n-a, t] E^{(n-t)}`
//!
//! together with `e_c F^{(a)} = F^{(a)} e_{c+2a}` and
//! `E^{(b)} e_c = e_{c+2b} E^{(b)}`. The element `[K; s, t]` acts on weight
//! `c` by the q-binomial `[c+s, t]` at `zeta`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::genericuq::Side;
use crate::linalg::{nullspace, Matrix};
use crate::scalars::{Field, FieldOps};

use super::algebra::{AlgGen, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DMono {
    pub f: u32,
    pub c: u32,
    pub e: u32,
}

pub type DElem<E> = BTreeMap<DMono, E>;

fn add_term<F: FieldOps>(f: &F, v: &mut DElem<F::Elem>, m: DMono, c: F::Elem) {
    if f.is_zero(&c) {
        return;
    }
    let s = match v.get(&m) {
        Some(x) => f.add(x, &c),
        None => c,
    };
    if f.is_zero(&s) {
        v.remove(&m);
    } else {
        v.insert(m, s);
    }
}

/// Symmetric q-binomials `[n, t]` at `zeta` for `0 <= n < limit` by the
/// q-Pascal rule, extended to negative `n` by `[-m, t] = (-1)^t [m+t-1, t]`.
#[derive(Clone, Debug)]
pub struct ZetaBinomials<E> {
    table: Vec<Vec<E>>,
    tmax: usize,
}

impl<E: Clone> ZetaBinomials<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, limit: usize, tmax: usize) -> Self {
        let mut table: Vec<Vec<E>> = Vec::with_capacity(limit);
        for n in 0..limit {
            let mut row = vec![field.zero(); tmax + 1];
            row[0] = field.one();
            if n > 0 {
                for t in 1..=tmax.min(n) {
                    let prev = &table[n - 1];
                    let a = field.mul(&field.zeta_pow(-(t as i64)), &prev[t]);
                    let b = field.mul(&field.zeta_pow(n as i64 - t as i64), &prev[t - 1]);
                    row[t] = field.add(&a, &b);
                }
            }
            table.push(row);
        }
        ZetaBinomials { table, tmax }
    }

    pub fn get<F: FieldOps<Elem = E>>(&self, field: &F, n: i64, t: u32) -> E {
        let t = t as usize;
        assert!(t <= self.tmax, "q-binomial order {t} beyond table");
        if n >= 0 {
            if n as usize >= self.table.len() {
                panic!("q-binomial [{n}, {t}] beyond table");
            }
            return self.table[n as usize][t].clone();
        }
        let m = (-n) as usize + t - 1;
        assert!(m < self.table.len(), "q-binomial [{n}, {t}] beyond table");
        let v = self.table[m][t].clone();
        if t % 2 == 1 {
            field.neg(&v)
        } else {
            v
        }
    }
}

impl<E: Clone> ZetaBinomials<E> {
    /// `[n, t]` using periodicity of the values in `n` modulo `period`,
    /// valid for `t < period` when `period = p^r ell`.
    pub fn get_periodic<F: FieldOps<Elem = E>>(&self, field: &F, n: i64, t: u32, period: u32) -> E {
        assert!(t < period);
        self.get(field, n.rem_euclid(period as i64), t)
    }
}

#[derive(Debug)]
pub struct RankOneKernel<F: Field> {
    pub kind: Kind,
    pub r: u32,
    pub field: F,
    /// `p^r ell`.
    pub bound: u32,
    pub has_f: bool,
    pub has_e: bool,
    pub torus: bool,
    pub basis: Vec<DMono>,
    pub index: HashMap<DMono, usize>,
    binom: ZetaBinomials<F::Elem>,
}

impl<F: Field> RankOneKernel<F> {
    pub fn build(kind: Kind, r: u32, field: F) -> Result<Self> {
        let ell = field.ell();
        if ell < 3 || ell % 2 == 0 {
            return Err(Error::Config(format!("ell = {ell} must be odd and at least 3")));
        }
        let p = field.characteristic();
        if r >= 1 && p == 0 {
            return Err(Error::Config("higher kernels need positive characteristic".into()));
        }
        let bound = (p.max(1) as u32).pow(r) * ell;
        let (has_f, has_e, torus) = match &kind {
            Kind::UMinus | Kind::Am(1) | Kind::Root(0, Side::F) => (true, false, false),
            Kind::UPlus | Kind::AmPlus(1) | Kind::Root(0, Side::E) => (false, true, false),
            Kind::BMinus => (true, false, true),
            Kind::BPlus => (false, true, true),
            Kind::G => (true, true, true),
            other => return Err(Error::Config(format!("{other} is not a rank one kernel"))),
        };
        let fr = if has_f { bound } else { 1 };
        let er = if has_e { bound } else { 1 };
        let cr = if torus { bound } else { 1 };
        let mut basis = Vec::with_capacity((fr * er * cr) as usize);
        for f in 0..fr {
            for c in 0..cr {
                for e in 0..er {
                    basis.push(DMono { f, c, e });
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let binom = ZetaBinomials::new(&field, 4 * bound as usize, bound as usize);
        Ok(RankOneKernel { kind, r, field, bound, has_f, has_e, torus, basis, index, binom })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `[n, t]` at `zeta`.
    pub fn qbinom(&self, n: i64, t: u32) -> F::Elem {
        self.binom.get(&self.field, n, t)
    }

    /// The divided power orders `p^i ell` for `i < r`, preceded by `1`.
    pub fn div_orders(&self) -> Vec<u32> {
        let p = self.field.characteristic().max(1) as u32;
        let mut v = vec![1];
        for i in 0..self.r {
            v.push(p.pow(i) * self.field.ell());
        }
        v
    }

    pub fn generators(&self) -> Vec<AlgGen> {
        let mut g = Vec::new();
        if self.has_f {
            g.extend(self.div_orders().into_iter().map(|n| AlgGen::FDiv(0, n)));
        }
        if self.has_e {
            g.extend(self.div_orders().into_iter().map(|n| AlgGen::EDiv(0, n)));
        }
        if self.torus {
            g.extend((0..self.bound).map(AlgGen::Idem));
        }
        g
    }

    pub fn counit(&self, g: AlgGen) -> F::Elem {
        match g {
            AlgGen::Idem(0) | AlgGen::K(_) => self.field.one(),
            _ => self.field.zero(),
        }
    }

    pub fn one(&self) -> DElem<F::Elem> {
        let f = &self.field;
        let mut v = DElem::new();
        if self.torus {
            for c in 0..self.bound {
                v.insert(DMono { f: 0, c, e: 0 }, f.one());
            }
        } else {
            v.insert(DMono { f: 0, c: 0, e: 0 }, f.one());
        }
        v
    }

    fn wrap(&self, c: i64) -> u32 {
        if self.torus {
            c.rem_euclid(self.bound as i64) as u32
        } else {
            0
        }
    }

    fn checked(&self, m: DMono, c: F::Elem, out: &mut DElem<F::Elem>) {
        if m.f >= self.bound || m.e >= self.bound {
            assert!(self.field.is_zero(&c), "divided power beyond the bound with nonzero coefficient");
            return;
        }
        add_term(&self.field, out, m, c);
    }

    /// Left multiplication of a basis monomial by a generator.
    pub fn left_gen_mono(&self, g: AlgGen, m: DMono) -> DElem<F::Elem> {
        let f = &self.field;
        let mut out = DElem::new();
        match g {
            AlgGen::F(_) | AlgGen::FRoot(_) => return self.left_gen_mono(AlgGen::FDiv(0, 1), m),
            AlgGen::E(_) | AlgGen::ERoot(_) => return self.left_gen_mono(AlgGen::EDiv(0, 1), m),
            AlgGen::FDiv(_, n) => {
                let c = self.qbinom(m.f as i64 + n as i64, n);
                self.checked(DMono { f: m.f + n, ..m }, c, &mut out);
            }
            AlgGen::Idem(d) => {
                if self.wrap(d as i64 + 2 * m.f as i64) == m.c {
                    out.insert(m, f.one());
                }
            }
            AlgGen::K(_) => {
                out.insert(m, f.zeta_pow(m.c as i64 - 2 * m.f as i64));
            }
            AlgGen::EDiv(_, n) => {
                let tmax = if self.has_f { n.min(m.f) } else { 0 };
                for t in 0..=tmax {
                    let k = n - t;
                    let c2 = self.wrap(m.c as i64 + 2 * k as i64);
                    let mut coeff = self.qbinom(k as i64 + m.e as i64, m.e);
                    if t > 0 {
                        // [K; 2t-n-a, t] on weight c2.
                        let w = c2 as i64 + 2 * t as i64 - n as i64 - m.f as i64;
                        coeff = f.mul(&coeff, &self.qbinom(w, t));
                    }
                    self.checked(DMono { f: m.f - t, c: c2, e: k + m.e }, coeff, &mut out);
                }
            }
        }
        out
    }

    pub fn left_gen(&self, g: AlgGen, x: &DElem<F::Elem>) -> DElem<F::Elem> {
        let f = &self.field;
        let mut out = DElem::new();
        for (m, c) in x {
            for (m2, c2) in self.left_gen_mono(g, *m) {
                add_term(f, &mut out, m2, f.mul(c, &c2));
            }
        }
        out
    }

    /// `m * y` for a basis monomial `m`.
    pub fn apply_mono(&self, m: DMono, y: &DElem<F::Elem>) -> DElem<F::Elem> {
        let mut v = y.clone();
        if m.e > 0 {
            v = self.left_gen(AlgGen::EDiv(0, m.e), &v);
        }
        if self.torus {
            v = self.left_gen(AlgGen::Idem(m.c), &v);
        }
        if m.f > 0 {
            v = self.left_gen(AlgGen::FDiv(0, m.f), &v);
        }
        v
    }

    pub fn multiply(&self, x: &DElem<F::Elem>, y: &DElem<F::Elem>) -> DElem<F::Elem> {
        let f = &self.field;
        let mut out = DElem::new();
        for (m, c) in x {
            for (m2, c2) in self.apply_mono(*m, y) {
                add_term(f, &mut out, m2, f.mul(c, &c2));
            }
        }
        out
    }

    pub fn mono_elem(&self, m: DMono) -> DElem<F::Elem> {
        let mut v = DElem::new();
        v.insert(m, self.field.one());
        v
    }

    /// Left multiplication matrix of a generator as sparse columns.
    pub fn gen_matrix(&self, g: AlgGen) -> Vec<Vec<(usize, F::Elem)>> {
        self.basis
            .iter()
            .map(|m| {
                let mut col: Vec<(usize, F::Elem)> =
                    self.left_gen_mono(g, *m).into_iter().map(|(m2, c)| (self.index[&m2], c)).collect();
                col.sort_by_key(|p| p.0);
                col
            })
            .collect()
    }

    /// Left invariants; candidates have top F-part when F is present.
    pub fn left_invariants(&self) -> Vec<DElem<F::Elem>> {
        let f = &self.field;
        let top = self.bound - 1;
        let cands: Vec<DMono> =
            self.basis.iter().copied().filter(|m| !self.has_f || m.f == top).collect();
        let gens = self.generators();
        let mut rows: HashMap<(usize, DMono), usize> = HashMap::new();
        let mut entries = Vec::new();
        for (j, m) in cands.iter().enumerate() {
            for (gi, g) in gens.iter().enumerate() {
                let mut v = self.left_gen_mono(*g, *m);
                add_term(f, &mut v, *m, f.neg(&self.counit(*g)));
                for (m2, c) in v {
                    let len = rows.len();
                    let r = *rows.entry((gi, m2)).or_insert(len);
                    entries.push((r, j, c));
                }
            }
        }
        let mut mat = Matrix::filled(rows.len().max(1), cands.len(), f.zero());
        for (r, j, c) in entries {
            let s = f.add(mat.get(r, j), &c);
            mat.set(r, j, s);
        }
        nullspace(f, &mat)
            .into_iter()
            .map(|v| {
                let mut e = DElem::new();
                for (j, c) in v.into_iter().enumerate() {
                    add_term(f, &mut e, cands[j], c);
                }
                e
            })
            .collect()
    }
}
