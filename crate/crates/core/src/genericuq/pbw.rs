//! Root vectors, PBW expansions, the commutation table between root vectors
//! and the comultiplication of root vectors.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{inverse, mat_vec, Matrix};
use crate::rootdata::{ConvexOrder, Root, RootDatum};
use crate::scalars::{LocalizedScalar, RatFunc, RatFuncField};

use super::algebra::{qpow, GenericUq};
use super::mixed::{Mixed, Tri};
use super::words::{kostant_partition, poly_from_word, poly_mul, word_weight, Poly, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    E,
    F,
}

/// Exponent vector of a PBW monomial `X_{gamma_1}^{a_1} ... X_{gamma_N}^{a_N}`.
pub type Exps = Vec<u32>;

/// A PBW expansion: exponent vector to coefficient.
pub type Expansion = BTreeMap<Exps, RatFunc>;

#[derive(Debug)]
struct WeightPbw {
    monomials: Vec<Exps>,
    /// Maps quotient coordinates to PBW coordinates.
    inverse: Matrix<RatFunc>,
}

/// All exponent vectors `a` with `sum a_i gamma_i = nu`.
pub fn monomials_of_weight(gammas: &[Root], nu: &[i64]) -> Vec<Exps> {
    fn rec(gammas: &[Root], k: usize, rest: &mut Vec<i64>, cur: &mut Exps, out: &mut Vec<Exps>) {
        if k == gammas.len() {
            if rest.iter().all(|&c| c == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let g = &gammas[k];
        let mut a = 0;
        loop {
            cur.push(a);
            rec(gammas, k + 1, rest, cur, out);
            cur.pop();
            if !g.iter().zip(rest.iter()).all(|(x, y)| x <= y) {
                break;
            }
            for (x, y) in rest.iter_mut().zip(g) {
                *x -= y;
            }
            a += 1;
        }
        for (x, y) in rest.iter_mut().zip(g) {
            *x += y * a as i64;
        }
    }
    let mut out = Vec::new();
    rec(gammas, 0, &mut nu.to_vec(), &mut Vec::new(), &mut out);
    out
}

pub fn exps_weight(gammas: &[Root], a: &[u32]) -> Vec<i64> {
    let mut w = vec![0; gammas[0].len()];
    for (g, &x) in gammas.iter().zip(a) {
        for (wi, gi) in w.iter_mut().zip(g) {
            *wi += gi * x as i64;
        }
    }
    w
}

fn unit(n: usize, i: usize) -> Exps {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// The generic algebra together with a convex order and its root vectors.
#[derive(Debug)]
pub struct Pbw {
    pub uq: GenericUq,
    pub order: ConvexOrder,
    e_roots: Vec<Poly>,
    f_roots: Vec<Poly>,
    mono_cache: RefCell<HashMap<(Side, Exps), Arc<Poly>>>,
    weight_cache: RefCell<HashMap<(Side, Vec<i64>), Arc<WeightPbw>>>,
    word_cache: RefCell<HashMap<(Side, Word), Arc<Expansion>>>,
}

impl Pbw {
    pub fn new(uq: GenericUq, word: &[usize]) -> Result<Self> {
        let order = ConvexOrder::new(&uq.datum, word)?;
        let mut e_roots = Vec::new();
        let mut f_roots = Vec::new();
        let r = uq.rank();
        for k in 0..order.len() {
            let b = order.w0_word[k];
            let e = uq.braid_word_apply(&order.prefix_words[k], false, &Mixed::e(r, b))?;
            let f = uq.braid_word_apply(&order.prefix_words[k], false, &Mixed::f(r, b))?;
            let e = e.as_e_poly().ok_or_else(|| {
                Error::Inconsistent(format!("root vector E_{} leaves the positive part", k + 1))
            })?;
            let f = f.as_f_poly().ok_or_else(|| {
                Error::Inconsistent(format!("root vector F_{} leaves the negative part", k + 1))
            })?;
            e_roots.push(e);
            f_roots.push(f);
        }
        Ok(Pbw {
            uq,
            order,
            e_roots,
            f_roots,
            mono_cache: RefCell::default(),
            weight_cache: RefCell::default(),
            word_cache: RefCell::default(),
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.uq.datum
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn gammas(&self) -> &[Root] {
        &self.order.gammas
    }

    /// Canonical word form of `E_{gamma_k}` or `F_{gamma_k}`.
    pub fn root_vector(&self, side: Side, k: usize) -> &Poly {
        match side {
            Side::E => &self.e_roots[k],
            Side::F => &self.f_roots[k],
        }
    }

    pub fn root_vector_mixed(&self, side: Side, k: usize) -> Mixed {
        let r = self.uq.rank();
        match side {
            Side::E => Mixed::from_e_poly(r, &self.e_roots[k]),
            Side::F => Mixed::from_f_poly(r, &self.f_roots[k]),
        }
    }

    /// Canonical word form of a PBW monomial (non-divided powers).
    pub fn monomial(&self, side: Side, a: &[u32]) -> Result<Arc<Poly>> {
        let key = (side, a.to_vec());
        if let Some(p) = self.mono_cache.borrow().get(&key) {
            return Ok(p.clone());
        }
        let p = match a.iter().rposition(|&x| x > 0) {
            None => poly_from_word(vec![]),
            Some(last) => {
                let mut b = a.to_vec();
                b[last] -= 1;
                let head = self.monomial(side, &b)?;
                self.uq.quotient.canonical(&poly_mul(&head, self.root_vector(side, last)))?
            }
        };
        let p = Arc::new(p);
        self.mono_cache.borrow_mut().insert(key, p.clone());
        Ok(p)
    }

    fn weight_pbw(&self, side: Side, nu: &[i64]) -> Result<Arc<WeightPbw>> {
        let key = (side, nu.to_vec());
        if let Some(w) = self.weight_cache.borrow().get(&key) {
            return Ok(w.clone());
        }
        let monomials = monomials_of_weight(self.gammas(), nu);
        let dim = self.uq.quotient.component(nu)?.dim();
        if monomials.len() != dim {
            return Err(Error::Inconsistent(format!(
                "weight {nu:?}: {} PBW monomials but quotient dimension {dim}",
                monomials.len()
            )));
        }
        let mut cols = Vec::with_capacity(dim);
        for a in &monomials {
            cols.push(self.uq.quotient.coordinates(nu, &*self.monomial(side, a)?)?);
        }
        let m = Matrix::from_rows(dim, cols).transpose();
        let inv = inverse(&RatFuncField, &m)
            .ok_or_else(|| Error::Inconsistent(format!("PBW monomials of weight {nu:?} are dependent")))?;
        let w = Arc::new(WeightPbw { monomials, inverse: inv });
        self.weight_cache.borrow_mut().insert(key, w.clone());
        Ok(w)
    }

    /// PBW expansion of a word polynomial on one side.
    pub fn expand(&self, side: Side, p: &Poly) -> Result<Expansion> {
        let rank = self.uq.rank();
        let mut by_weight: BTreeMap<Vec<i64>, Poly> = BTreeMap::new();
        for (w, c) in p {
            by_weight.entry(word_weight(rank, w)).or_default().insert(w.clone(), c.clone());
        }
        let mut out = Expansion::new();
        for (nu, part) in by_weight {
            let wp = self.weight_pbw(side, &nu)?;
            let coords = self.uq.quotient.coordinates(&nu, &part)?;
            let x = mat_vec(&RatFuncField, &wp.inverse, &coords);
            for (a, c) in wp.monomials.iter().zip(x) {
                if !c.is_zero() {
                    out.insert(a.clone(), c);
                }
            }
        }
        Ok(out)
    }

    /// PBW expansion of a single word, cached.
    pub fn expand_word(&self, side: Side, w: &[u8]) -> Result<Arc<Expansion>> {
        let key = (side, w.to_vec());
        if let Some(e) = self.word_cache.borrow().get(&key) {
            return Ok(e.clone());
        }
        let e = Arc::new(self.expand(side, &poly_from_word(w.to_vec()))?);
        self.word_cache.borrow_mut().insert(key, e.clone());
        Ok(e)
    }

    /// Triangular PBW expansion `F^a K_mu E^b` of a mixed element.
    pub fn expand_mixed(&self, x: &Mixed) -> Result<Vec<(Exps, Vec<i64>, Exps, RatFunc)>> {
        let mut acc: BTreeMap<(Exps, Vec<i64>, Exps), RatFunc> = BTreeMap::new();
        for (t, c) in &x.terms {
            let fe = self.expand_word(Side::F, &t.f)?;
            let ee = self.expand_word(Side::E, &t.e)?;
            for (fa, fc) in fe.iter() {
                let cf = c.mul(fc);
                for (ea, ec) in ee.iter() {
                    let key = (fa.clone(), t.k.clone(), ea.clone());
                    let v = acc.entry(key).or_insert_with(RatFunc::zero);
                    *v = v.add(&cf.mul(ec));
                }
            }
        }
        Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, k, b), c)| (a, k, b, c)).collect())
    }

    /// `x_i x_j` for two root vectors, expanded.
    pub fn expand_product(&self, side: Side, i: usize, j: usize) -> Result<Expansion> {
        let p = self.uq.quotient.canonical(&poly_mul(self.root_vector(side, i), self.root_vector(side, j)))?;
        self.expand(side, &p)
    }

    /// Whether the permuted monomials of every weight of height at most
    /// `max_height` form a basis of their component.
    pub fn reorder_basis_check(&self, sigma: &[usize], max_height: i64) -> Result<bool> {
        let rank = self.uq.rank();
        let gammas: Vec<Root> = sigma.iter().map(|&s| self.gammas()[s].clone()).collect();
        for h in 1..=max_height {
            for nu in weights_of_height(rank, h) {
                let monos = monomials_of_weight(&gammas, &nu);
                if monos.len() != kostant_partition(self.datum(), &nu) {
                    return Ok(false);
                }
                let dim = self.uq.quotient.component(&nu)?.dim();
                let mut rows = Vec::new();
                for a in &monos {
                    let mut p = poly_from_word(vec![]);
                    for (k, &x) in a.iter().enumerate() {
                        for _ in 0..x {
                            p = poly_mul(&p, &self.e_roots[sigma[k]]);
                        }
                    }
                    rows.push(self.uq.quotient.coordinates(&nu, &self.uq.quotient.canonical(&p)?)?);
                }
                if rows.is_empty() {
                    continue;
                }
                let m = Matrix::from_rows(dim, rows);
                if crate::linalg::rank(&RatFuncField, &m) != monos.len() || monos.len() != dim {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `Delta(E_{gamma_m})` with `Delta(E_i) = E_i (x) 1 + K_i (x) E_i`, as
    /// terms `(mu, a, b, c)` meaning `c K_mu E^a (x) E^b`.
    pub fn comultiply_e(&self, m: usize) -> Result<Vec<(Vec<i64>, Exps, Exps, RatFunc)>> {
        let rank = self.uq.rank();
        let datum = self.datum();
        let mut total: BTreeMap<(Vec<i64>, Word, Word), RatFunc> = BTreeMap::new();
        for (w, c) in self.root_vector(Side::E, m) {
            let mut terms: BTreeMap<(Vec<i64>, Word, Word), RatFunc> = BTreeMap::new();
            terms.insert((vec![0; rank], vec![], vec![]), c.clone());
            for &i in w {
                let ai = datum.simple_root(i as usize);
                let mut next: BTreeMap<(Vec<i64>, Word, Word), RatFunc> = BTreeMap::new();
                for ((mu, l, r), c) in terms {
                    let mut l1 = l.clone();
                    l1.push(i);
                    add_to(&mut next, (mu.clone(), l1, r.clone()), c.clone());
                    // (K_mu l (x) r)(K_i (x) E_i) = q^{-(alpha_i, wt l)} K_{mu+alpha_i} l (x) r E_i
                    let x = datum.inner(&ai, &word_weight(rank, &l));
                    let mu2: Vec<i64> = mu.iter().zip(&ai).map(|(a, b)| a + b).collect();
                    let mut r1 = r.clone();
                    r1.push(i);
                    add_to(&mut next, (mu2, l, r1), c.mul(&qpow(-x)));
                }
                terms = next;
            }
            for (k, v) in terms {
                add_to(&mut total, k, v);
            }
        }
        let mut out: BTreeMap<(Vec<i64>, Exps, Exps), RatFunc> = BTreeMap::new();
        for ((mu, l, r), c) in total {
            let le = self.expand_word(Side::E, &l)?;
            let re = self.expand_word(Side::E, &r)?;
            for (a, ca) in le.iter() {
                for (b, cb) in re.iter() {
                    add_to(&mut out, (mu.clone(), a.clone(), b.clone()), c.mul(ca).mul(cb));
                }
            }
        }
        Ok(out.into_iter().map(|((mu, a, b), c)| (mu, a, b, c)).collect())
    }

    /// Whether `Delta(E_{gamma_m}) in V_m (x) W_m`: left factors supported on
    /// `gamma_1..gamma_m`, right factors on `gamma_m..gamma_N` (0-based `m`).
    pub fn coideal_membership(&self, m: usize) -> Result<bool> {
        let n = self.n();
        Ok(self.comultiply_e(m)?.iter().all(|(_, a, b, _)| {
            a.iter().enumerate().all(|(s, &x)| x == 0 || s <= m) && b.iter().enumerate().all(|(s, &x)| x == 0 || s >= m)
        }) && m < n)
    }

    /// `[E_i, F_{gamma_k}]` (simple `E_i`) as terms `(a, mu, c)`: `c F^a K_mu`.
    pub fn commutator_e_simple_f_root(&self, i: usize, k: usize) -> Result<Vec<(Exps, Vec<i64>, RatFunc)>> {
        let r = self.uq.rank();
        let e = Mixed::e(r, i);
        let f = self.root_vector_mixed(Side::F, k);
        let c = self.uq.mul(&e, &f)?.sub(&self.uq.mul(&f, &e)?);
        let mut out = Vec::new();
        for (a, mu, b, coeff) in self.expand_mixed(&c)? {
            if b.iter().any(|&x| x != 0) {
                return Err(Error::Inconsistent(format!("[E{}, F_gamma{}] has an E-part", i + 1, k + 1)));
            }
            out.push((a, mu, coeff));
        }
        Ok(out)
    }

    /// `[E_{gamma_k}, F_i]` as terms `(mu, b, c)`: `c K_mu E^b`.
    pub fn commutator_e_root_f_simple(&self, k: usize, i: usize) -> Result<Vec<(Vec<i64>, Exps, RatFunc)>> {
        let r = self.uq.rank();
        let f = Mixed::f(r, i);
        let e = self.root_vector_mixed(Side::E, k);
        let c = self.uq.mul(&e, &f)?.sub(&self.uq.mul(&f, &e)?);
        let mut out = Vec::new();
        for (a, mu, b, coeff) in self.expand_mixed(&c)? {
            if a.iter().any(|&x| x != 0) {
                return Err(Error::Inconsistent(format!("[E_gamma{}, F{}] has an F-part", k + 1, i + 1)));
            }
            out.push((mu, b, coeff));
        }
        Ok(out)
    }

    /// The scalar `c` with `omega(E_{gamma_k}) = c F_{gamma_k}`.
    pub fn omega_scalar(&self, k: usize) -> Result<RatFunc> {
        let om = self.uq.omega(&self.root_vector_mixed(Side::E, k))?;
        let p = om.as_f_poly().ok_or_else(|| Error::Inconsistent("omega(E) is not in U^-".into()))?;
        let fk = self.root_vector(Side::F, k);
        let (w, c0) = fk.iter().next().ok_or_else(|| Error::Internal("zero root vector".into()))?;
        let c = p.get(w).cloned().unwrap_or_else(RatFunc::zero).div(c0);
        for (w, x) in fk {
            let y = p.get(w).cloned().unwrap_or_else(RatFunc::zero);
            if y != x.mul(&c) {
                return Err(Error::Inconsistent(format!("omega(E_gamma{}) is not a multiple of F_gamma{}", k + 1, k + 1)));
            }
        }
        if p.len() != fk.len() {
            return Err(Error::Inconsistent(format!("omega(E_gamma{}) has extra terms", k + 1)));
        }
        Ok(c)
    }
}

fn add_to<K: Ord>(m: &mut BTreeMap<K, RatFunc>, k: K, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    match m.entry(k) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get().add(&c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Nonnegative integer vectors of length `rank` summing to `h`.
pub fn weights_of_height(rank: usize, h: i64) -> Vec<Vec<i64>> {
    if rank == 1 {
        return vec![vec![h]];
    }
    let mut out = Vec::new();
    for x in 0..=h {
        for mut rest in weights_of_height(rank - 1, h - x) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// `X_{gamma_i} X_{gamma_j} = leading X_{gamma_j} X_{gamma_i} + sum tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureEntry {
    pub i: usize,
    pub j: usize,
    pub leading: LocalizedScalar,
    pub tail: Vec<(Exps, LocalizedScalar)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    pub type_label: crate::rootdata::RootType,
    pub w0_word: Vec<usize>,
    pub e_entries: Vec<StructureEntry>,
    pub f_entries: Vec<StructureEntry>,
    /// `omega(E_gamma) = omega_scalars[k] F_gamma`.
    pub omega_scalars: Vec<LocalizedScalar>,
}

impl StructureTable {
    pub fn entry(&self, side: Side, i: usize, j: usize) -> Option<&StructureEntry> {
        let v = match side {
            Side::E => &self.e_entries,
            Side::F => &self.f_entries,
        };
        v.iter().find(|e| e.i == i && e.j == j)
    }
}

fn localize(pair: (usize, usize), r: &RatFunc, datum: &RootDatum) -> Result<LocalizedScalar> {
    let l = LocalizedScalar::from_ratfunc(r).ok_or_else(|| {
        Error::StructureCheck(format!("pair ({},{}): coefficient {r} is outside the localization", pair.0 + 1, pair.1 + 1))
    })?;
    if !l.in_ring(datum.denominator_set()) {
        return Err(Error::StructureCheck(format!(
            "pair ({},{}): denominator of {l} not allowed for type {}",
            pair.0 + 1,
            pair.1 + 1,
            datum.type_label
        )));
    }
    Ok(l)
}

impl Pbw {
    /// One side's entry for `i < j`, computed directly by PBW expansion and
    /// checked against the leading-coefficient and support invariants.
    pub fn structure_entry(&self, side: Side, i: usize, j: usize) -> Result<StructureEntry> {
        let datum = self.datum();
        let n = self.n();
        let z = self.expand_product(side, j, i)?;
        let ij = {
            let mut v = unit(n, i);
            v[j] = 1;
            v
        };
        let lead = z.get(&ij).cloned().ok_or_else(|| {
            Error::StructureCheck(format!("pair ({},{}): reversed product lacks the ordered monomial", i + 1, j + 1))
        })?;
        let leading = lead.inv().unwrap();
        let expected = qpow(datum.inner(&self.gammas()[i], &self.gammas()[j]));
        if leading != expected {
            return Err(Error::StructureCheck(format!(
                "pair ({},{}): leading coefficient {leading}, expected {expected}",
                i + 1,
                j + 1
            )));
        }
        let mut tail = Vec::new();
        for (a, c) in &z {
            if *a == ij {
                continue;
            }
            if a.iter().enumerate().any(|(s, &x)| x > 0 && !(i < s && s < j)) {
                return Err(Error::StructureCheck(format!(
                    "pair ({},{}): tail monomial {a:?} outside the open interval",
                    i + 1,
                    j + 1
                )));
            }
            tail.push((a.clone(), localize((i, j), &c.mul(&leading).neg(), datum)?));
        }
        Ok(StructureEntry { i, j, leading: localize((i, j), &leading, datum)?, tail })
    }

    /// The full table. The F-side is transported from the E-side by `omega`
    /// and compared against a direct computation.
    pub fn structure_table(&self) -> Result<StructureTable> {
        let n = self.n();
        let datum = self.datum();
        let mut e_entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e_entries.push(self.structure_entry(Side::E, i, j)?);
            }
        }
        let mut cs = Vec::new();
        for k in 0..n {
            cs.push(self.omega_scalar(k)?);
        }
        let mut f_entries = Vec::new();
        for e in &e_entries {
            // omega(E_i E_j) = c_i c_j F_i F_j, so a tail coefficient t_a
            // becomes t_a prod c_s^{a_s} / (c_i c_j).
            let cij = cs[e.i].mul(&cs[e.j]);
            let mut tail = Vec::new();
            for (a, t) in &e.tail {
                let mut c = t.to_ratfunc().div(&cij);
                for (s, &x) in a.iter().enumerate() {
                    for _ in 0..x {
                        c = c.mul(&cs[s]);
                    }
                }
                tail.push((a.clone(), localize((e.i, e.j), &c, datum)?));
            }
            let fe = StructureEntry { i: e.i, j: e.j, leading: e.leading.clone(), tail };
            let direct = self.structure_entry(Side::F, e.i, e.j)?;
            if direct != fe {
                return Err(Error::StructureCheck(format!(
                    "pair ({},{}): F-side table differs from the omega image of the E-side",
                    e.i + 1,
                    e.j + 1
                )));
            }
            f_entries.push(fe);
        }
        let omega_scalars = cs.iter().map(|c| localize((0, 0), c, datum)).collect::<Result<Vec<_>>>()?;
        Ok(StructureTable {
            type_label: datum.type_label,
            w0_word: self.order.w0_word.clone(),
            e_entries,
            f_entries,
            omega_scalars,
        })
    }
}

/// `x` as a single triangular monomial with coefficient one.
pub fn tri_monomial(f: Word, k: Vec<i64>, e: Word) -> Mixed {
    Mixed::monomial(Tri::new(f, k, e), RatFunc::one())
}
