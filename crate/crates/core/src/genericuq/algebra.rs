//! Multiplication of triangular elements, Lusztig's braid automorphisms and
//! the (anti-)automorphisms `omega` and `tau`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rootdata::RootDatum;
use crate::scalars::{q_factorial, q_integer, Laurent, RatFunc};

use super::mixed::{Mixed, Tri};
use super::words::{word_weight, Word, WordQuotient};

/// A generator symbol of `U_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    E(usize),
    F(usize),
    /// `K_i^{+1}` or `K_i^{-1}`.
    K(usize, i8),
}

pub fn qpow(e: i64) -> RatFunc {
    RatFunc::from_laurent(Laurent::q_pow(e))
}

type TermList = Vec<(Tri, RatFunc)>;

/// The generic quantum group over `Q(q)` for one root datum.
#[derive(Debug)]
pub struct GenericUq {
    pub datum: RootDatum,
    pub quotient: WordQuotient,
    ef_cache: RefCell<HashMap<(Word, Word), Arc<TermList>>>,
    braid_cache: RefCell<HashMap<(usize, bool, bool, Word), Arc<Mixed>>>,
}

/// Default height bound: enough for every product of two root vectors.
pub fn default_height_bound(datum: &RootDatum) -> i64 {
    let mut hs: Vec<i64> = datum.positive_roots.iter().map(|r| r.iter().sum()).collect();
    hs.sort_unstable();
    let top = hs[hs.len() - 1];
    let two = if hs.len() > 1 { top + hs[hs.len() - 2] } else { 2 * top };
    (top + 2).max(two)
}

impl GenericUq {
    pub fn new(datum: RootDatum) -> Self {
        let h = default_height_bound(&datum);
        Self::with_height_bound(datum, h)
    }

    pub fn with_height_bound(datum: RootDatum, height_bound: i64) -> Self {
        let quotient = WordQuotient::new(&datum, height_bound);
        GenericUq { datum, quotient, ef_cache: RefCell::default(), braid_cache: RefCell::default() }
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    fn zero_k(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    fn alpha(&self, i: usize) -> Vec<i64> {
        self.datum.simple_root(i)
    }

    fn e_weight(&self, w: &[u8]) -> Vec<i64> {
        word_weight(self.rank(), w)
    }

    fn f_weight(&self, w: &[u8]) -> Vec<i64> {
        word_weight(self.rank(), w).iter().map(|x| -x).collect()
    }

    /// `q_i - q_i^{-1}` inverted.
    fn inv_qi_diff(&self, i: usize) -> RatFunc {
        let d = self.datum.d[i];
        RatFunc::from_laurent(Laurent::q_pow(d).sub(&Laurent::q_pow(-d))).inv().unwrap()
    }

    /// Normal-ordered product of an E-word by an F-word (raw words).
    fn ef(&self, e: &[u8], f: &[u8]) -> Arc<TermList> {
        let key = (e.to_vec(), f.to_vec());
        if let Some(r) = self.ef_cache.borrow().get(&key) {
            return r.clone();
        }
        let res = if e.is_empty() || f.is_empty() {
            let mut e2 = e.to_vec();
            if f.is_empty() {
                vec![(Tri::new(vec![], self.zero_k(), std::mem::take(&mut e2)), RatFunc::one())]
            } else {
                vec![(Tri::new(f.to_vec(), self.zero_k(), vec![]), RatFunc::one())]
            }
        } else {
            let i = *e.last().unwrap() as usize;
            let head = &e[..e.len() - 1];
            // E_i f = f E_i + sum_p f_{<p} [E_i, F_i] f_{>p}.
            let mut step: TermList = vec![(Tri::new(f.to_vec(), self.zero_k(), vec![i as u8]), RatFunc::one())];
            let inv = self.inv_qi_diff(i);
            let ai = self.alpha(i);
            for p in 0..f.len() {
                if f[p] as usize != i {
                    continue;
                }
                let x = self.datum.inner(&ai, &self.f_weight(&f[p + 1..]));
                let mut fw = f[..p].to_vec();
                fw.extend_from_slice(&f[p + 1..]);
                let mneg: Vec<i64> = ai.iter().map(|c| -c).collect();
                step.push((Tri::new(fw.clone(), ai.clone(), vec![]), qpow(x).mul(&inv)));
                step.push((Tri::new(fw, mneg, vec![]), qpow(-x).mul(&inv).neg()));
            }
            let mut acc: HashMap<Tri, RatFunc> = HashMap::new();
            for (t, c) in step {
                for (t3, c3) in self.ef(head, &t.f).iter() {
                    // (f3 K_nu e3) K_mu e = q^{-(mu, wt e3)} f3 K_{nu+mu} e3 e
                    let x = self.datum.inner(&t.k, &self.e_weight(&t3.e));
                    let k: Vec<i64> = t3.k.iter().zip(&t.k).map(|(a, b)| a + b).collect();
                    let mut ew = t3.e.clone();
                    ew.extend_from_slice(&t.e);
                    let coeff = c.mul(c3).mul(&qpow(-x));
                    let tri = Tri::new(t3.f.clone(), k, ew);
                    let entry = acc.entry(tri).or_insert_with(RatFunc::zero);
                    *entry = entry.add(&coeff);
                }
            }
            let mut v: TermList = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            v.sort_by(|a, b| a.0.cmp(&b.0));
            v
        };
        let res = Arc::new(res);
        self.ef_cache.borrow_mut().insert(key, res.clone());
        res
    }

    /// Product of raw triangular elements, without canonicalization.
    pub fn mul_raw(&self, a: &Mixed, b: &Mixed) -> Mixed {
        let mut out = Mixed::zero();
        for (t1, c1) in &a.terms {
            for (t2, c2) in &b.terms {
                let c12 = c1.mul(c2);
                for (t3, c3) in self.ef(&t1.e, &t2.f).iter() {
                    // f1 K_mu1 (f3 K_nu e3) K_mu2 e2
                    let x = self.datum.inner(&t1.k, &self.f_weight(&t3.f))
                        - self.datum.inner(&t2.k, &self.e_weight(&t3.e));
                    let mut fw = t1.f.clone();
                    fw.extend_from_slice(&t3.f);
                    let mut ew = t3.e.clone();
                    ew.extend_from_slice(&t2.e);
                    let k: Vec<i64> = (0..self.rank()).map(|r| t1.k[r] + t3.k[r] + t2.k[r]).collect();
                    out.add_term(Tri::new(fw, k, ew), c12.mul(c3).mul(&qpow(x)));
                }
            }
        }
        out
    }

    /// Reduces both word sides modulo the Serre relations.
    pub fn canonical(&self, a: &Mixed) -> Result<Mixed> {
        let mut out = Mixed::zero();
        for (t, c) in &a.terms {
            let cf = self.quotient.canonical_word(&t.f)?;
            let ce = self.quotient.canonical_word(&t.e)?;
            for (fw, fc) in cf.iter() {
                let cfc = c.mul(fc);
                for (ew, ec) in ce.iter() {
                    out.add_term(Tri::new(fw.clone(), t.k.clone(), ew.clone()), cfc.mul(ec));
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, a: &Mixed, b: &Mixed) -> Result<Mixed> {
        self.canonical(&self.mul_raw(a, b))
    }

    pub fn gen(&self, g: Gen) -> Mixed {
        let r = self.rank();
        match g {
            Gen::E(i) => Mixed::e(r, i),
            Gen::F(i) => Mixed::f(r, i),
            Gen::K(i, s) => {
                let mut k = vec![0; r];
                k[i] = s as i64;
                Mixed::k(k)
            }
        }
    }

    /// Triangular canonical form of a product of generators.
    pub fn normal_order(&self, word: &[Gen]) -> Result<Mixed> {
        let mut acc = Mixed::one(self.rank());
        for &g in word {
            acc = self.mul(&acc, &self.gen(g))?;
        }
        Ok(acc)
    }

    /// `X_i^{(n)}` on one side as a word polynomial element.
    fn divided_power(&self, side_e: bool, i: usize, n: i64) -> Mixed {
        let w = vec![i as u8; n as usize];
        let c = RatFunc::from_laurent(q_factorial(n as u32, self.datum.d[i])).inv().unwrap();
        let t = if side_e { Tri::new(vec![], self.zero_k(), w) } else { Tri::new(w, self.zero_k(), vec![]) };
        Mixed::monomial(t, c)
    }

    /// Image of a single generator `E_j` (`side_e`) or `F_j` under `T_i` or
    /// `T_i^{-1}`.
    fn braid_generator(&self, i: usize, inverse: bool, side_e: bool, j: usize) -> Result<Mixed> {
        let r = self.rank();
        let mut ki = vec![0; r];
        ki[i] = 1;
        let kinv: Vec<i64> = ki.iter().map(|x| -x).collect();
        if i == j {
            // T_i(E_i) = -F_i K_i, T_i(F_i) = -K_i^{-1} E_i,
            // T_i^{-1}(E_i) = -K_i^{-1} F_i, T_i^{-1}(F_i) = -E_i K_i.
            let m = match (inverse, side_e) {
                (false, true) => self.mul(&Mixed::f(r, i), &Mixed::k(ki))?,
                (false, false) => self.mul(&Mixed::k(kinv), &Mixed::e(r, i))?,
                (true, true) => self.mul(&Mixed::k(kinv), &Mixed::f(r, i))?,
                (true, false) => self.mul(&Mixed::e(r, i), &Mixed::k(ki))?,
            };
            return Ok(m.scale(&RatFunc::one().neg()));
        }
        let a = -self.datum.cartan[j][i];
        let di = self.datum.d[i];
        let xj = if side_e { Mixed::e(r, j) } else { Mixed::f(r, j) };
        let mut out = Mixed::zero();
        for s in 0..=a {
            let sign = if s % 2 == 0 { RatFunc::one() } else { RatFunc::one().neg() };
            // E-side: q_i^{-s}, F-side: q_i^{s}.
            let c = sign.mul(&qpow(if side_e { -s * di } else { s * di }));
            let (left, right) = match (side_e, inverse) {
                (true, false) => (a - s, s),
                (true, true) => (s, a - s),
                (false, false) => (s, a - s),
                (false, true) => (a - s, s),
            };
            let term = self.mul(
                &self.mul(&self.divided_power(side_e, i, left), &xj)?,
                &self.divided_power(side_e, i, right),
            )?;
            out = out.add(&term.scale(&c));
        }
        Ok(out)
    }

    /// Image of a raw word of one side under `T_i^{\pm 1}`, cached.
    fn braid_word(&self, i: usize, inverse: bool, side_e: bool, w: &[u8]) -> Result<Arc<Mixed>> {
        let key = (i, inverse, side_e, w.to_vec());
        if let Some(m) = self.braid_cache.borrow().get(&key) {
            return Ok(m.clone());
        }
        let m = if w.is_empty() {
            Mixed::one(self.rank())
        } else if w.len() == 1 {
            self.braid_generator(i, inverse, side_e, w[0] as usize)?
        } else {
            let head = self.braid_word(i, inverse, side_e, &w[..w.len() - 1])?;
            let last = self.braid_word(i, inverse, side_e, &w[w.len() - 1..])?;
            self.mul(&head, &last)?
        };
        let m = Arc::new(m);
        self.braid_cache.borrow_mut().insert(key, m.clone());
        Ok(m)
    }

    /// `T_i(x)` (or `T_i^{-1}(x)`), with Jantzen's conventions.
    pub fn braid(&self, i: usize, inverse: bool, x: &Mixed) -> Result<Mixed> {
        let mut out = Mixed::zero();
        for (t, c) in &x.terms {
            let fi = self.braid_word(i, inverse, false, &t.f)?;
            let k = self.datum.reflect_root(i, &t.k);
            let ei = self.braid_word(i, inverse, true, &t.e)?;
            let prod = self.mul(&self.mul(&fi, &Mixed::k(k))?, &ei)?;
            out = out.add(&prod.scale(c));
        }
        Ok(out)
    }

    /// `T_w(x)` for `w = s_{w_1} ... s_{w_k}`.
    pub fn braid_word_apply(&self, word: &[usize], inverse: bool, x: &Mixed) -> Result<Mixed> {
        let mut y = x.clone();
        if inverse {
            // T_w^{-1} = T_{w_k}^{-1} ... T_{w_1}^{-1}
            for &i in word {
                y = self.braid(i, true, &y)?;
            }
        } else {
            for &i in word.iter().rev() {
                y = self.braid(i, false, &y)?;
            }
        }
        Ok(y)
    }

    /// The anti-automorphism fixing `E_i`, `F_i` and inverting `K_i`.
    pub fn tau(&self, x: &Mixed) -> Result<Mixed> {
        let r = self.rank();
        let mut out = Mixed::zero();
        for (t, c) in &x.terms {
            let mut e: Word = t.e.clone();
            e.reverse();
            let mut f: Word = t.f.clone();
            f.reverse();
            let left = Mixed::monomial(Tri::new(vec![], vec![0; r], e), RatFunc::one());
            let mid = Mixed::k(t.k.iter().map(|x| -x).collect());
            let right = Mixed::monomial(Tri::new(f, vec![0; r], vec![]), RatFunc::one());
            out = out.add(&self.mul(&self.mul(&left, &mid)?, &right)?.scale(c));
        }
        Ok(out)
    }

    /// The automorphism `E_i <-> F_i`, `K_i -> K_i^{-1}`.
    pub fn omega(&self, x: &Mixed) -> Result<Mixed> {
        let r = self.rank();
        let mut out = Mixed::zero();
        for (t, c) in &x.terms {
            let left = Mixed::monomial(Tri::new(vec![], vec![0; r], t.f.clone()), RatFunc::one());
            let mid = Mixed::k(t.k.iter().map(|x| -x).collect());
            let right = Mixed::monomial(Tri::new(t.e.clone(), vec![0; r], vec![]), RatFunc::one());
            out = out.add(&self.mul(&self.mul(&left, &mid)?, &right)?.scale(c));
        }
        Ok(out)
    }

    /// Bi-weight `(E-weight, F-weight)` check: every term has the same total weight.
    pub fn weight(&self, x: &Mixed) -> Option<Vec<i64>> {
        let mut w: Option<Vec<i64>> = None;
        for t in x.terms.keys() {
            let tw: Vec<i64> =
                self.e_weight(&t.e).iter().zip(self.f_weight(&t.f)).map(|(a, b)| a + b).collect();
            match &w {
                None => w = Some(tw),
                Some(v) if *v != tw => return None,
                _ => {}
            }
        }
        w.or_else(|| Some(self.zero_k()))
    }

    /// Checks the defining relations on all generator pairs.
    pub fn check_defining_relations(&self) -> Result<()> {
        let r = self.rank();
        for i in 0..r {
            for j in 0..r {
                let ef = self.normal_order(&[Gen::E(i), Gen::F(j)])?;
                let fe = self.normal_order(&[Gen::F(j), Gen::E(i)])?;
                let comm = ef.sub(&fe);
                let expected = if i == j {
                    let mut kp = vec![0; r];
                    kp[i] = 1;
                    let km: Vec<i64> = kp.iter().map(|x| -x).collect();
                    Mixed::k(kp).sub(&Mixed::k(km)).scale(&self.inv_qi_diff(i))
                } else {
                    Mixed::zero()
                };
                if comm != expected {
                    return Err(Error::Inconsistent(format!("[E{}, F{}] relation", i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }
}

/// `[n]_{q^d}` as a rational function.
pub fn q_int_rf(n: i64, d: i64) -> RatFunc {
    RatFunc::from_laurent(q_integer(n, d))
}
