//! One triangular half of the small quantum group: PBW monomials with all
//! exponents below `ell`, multiplied by collection with the specialized table.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::genericuq::{Exps, Side};
use crate::scalars::{Field, FieldOps};

use super::table::ZetaData;

/// Sparse linear combination of PBW monomials.
pub type SVec<E> = BTreeMap<Exps, E>;

pub fn svec_add_term<F: FieldOps>(f: &F, v: &mut SVec<F::Elem>, k: Exps, c: F::Elem) {
    if f.is_zero(&c) {
        return;
    }
    match v.entry(k) {
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

#[derive(Debug)]
pub struct HalfAlgebra<F: Field> {
    pub z: Arc<ZetaData<F>>,
    pub side: Side,
    pub bound: u32,
    cache: RwLock<HashMap<(usize, Exps), Arc<SVec<F::Elem>>>>,
}

impl<F: Field> HalfAlgebra<F> {
    pub fn new(z: Arc<ZetaData<F>>, side: Side) -> Self {
        let bound = z.ell();
        HalfAlgebra { z, side, bound, cache: RwLock::new(HashMap::new()) }
    }

    pub fn n(&self) -> usize {
        self.z.n()
    }

    pub fn one(&self) -> SVec<F::Elem> {
        let mut v = SVec::new();
        v.insert(vec![0; self.n()], self.z.field.one());
        v
    }

    pub fn top(&self) -> Exps {
        vec![self.bound - 1; self.n()]
    }

    /// `X_{gamma_k} * X^a`.
    pub fn mul_root(&self, k: usize, a: &[u32]) -> Arc<SVec<F::Elem>> {
        if let Some(v) = self.cache.read().unwrap().get(&(k, a.to_vec())) {
            return v.clone();
        }
        let v = Arc::new(self.mul_root_uncached(k, a));
        self.cache.write().unwrap().insert((k, a.to_vec()), v.clone());
        v
    }

    fn mul_root_uncached(&self, k: usize, a: &[u32]) -> SVec<F::Elem> {
        let f = &self.z.field;
        let mut out = SVec::new();
        let p = a.iter().position(|&x| x > 0);
        match p {
            Some(p) if p < k => {
                // X_p X_k = lead X_k X_p + tail, so
                // X_k X_p = lead^{-1} (X_p X_k - tail).
                let ent = self.z.table.entry(self.side, p, k).expect("table entry");
                let inv = f.inv(&ent.leading).expect("leading coefficient is a unit");
                let mut rest = a.to_vec();
                rest[p] -= 1;
                for (b, c) in self.mul_root(k, &rest).iter() {
                    let c = f.mul(&inv, c);
                    for (b2, c2) in self.mul_root(p, b).iter() {
                        svec_add_term(f, &mut out, b2.clone(), f.mul(&c, c2));
                    }
                }
                let ninv = f.neg(&inv);
                for (t, c) in &ent.tail {
                    let c = f.mul(&ninv, c);
                    for (b, c2) in self.mul_mono(t, &rest) {
                        svec_add_term(f, &mut out, b, f.mul(&c, &c2));
                    }
                }
            }
            _ => {
                if a[k] + 1 < self.bound {
                    let mut b = a.to_vec();
                    b[k] += 1;
                    out.insert(b, f.one());
                }
            }
        }
        out
    }

    /// `X^t * X^b`.
    pub fn mul_mono(&self, t: &[u32], b: &[u32]) -> SVec<F::Elem> {
        let f = &self.z.field;
        let mut v = SVec::new();
        v.insert(b.to_vec(), f.one());
        for s in (0..t.len()).rev() {
            for _ in 0..t[s] {
                v = self.left_root(s, &v);
            }
        }
        v
    }

    pub fn left_root(&self, k: usize, v: &SVec<F::Elem>) -> SVec<F::Elem> {
        let f = &self.z.field;
        let mut out = SVec::new();
        for (b, c) in v {
            for (b2, c2) in self.mul_root(k, b).iter() {
                svec_add_term(f, &mut out, b2.clone(), f.mul(c, c2));
            }
        }
        out
    }

    pub fn mul(&self, x: &SVec<F::Elem>, y: &SVec<F::Elem>) -> SVec<F::Elem> {
        let f = &self.z.field;
        let mut out = SVec::new();
        for (t, c) in x {
            for (b, c2) in y {
                for (m, c3) in self.mul_mono(t, b) {
                    svec_add_term(f, &mut out, m, f.mul(&f.mul(c, c2), &c3));
                }
            }
        }
        out
    }

    /// Left multiplication by the simple generator `X_i`.
    pub fn left_simple(&self, i: usize, v: &SVec<F::Elem>) -> SVec<F::Elem> {
        self.left_root(self.z.simple_pos[i], v)
    }

    /// Evaluates a word polynomial in the simple generators.
    pub fn eval_word_poly(&self, p: &[(Vec<u8>, F::Elem)]) -> SVec<F::Elem> {
        let f = &self.z.field;
        let mut out = SVec::new();
        for (w, c) in p {
            let mut v = self.one();
            for &i in w.iter().rev() {
                v = self.left_simple(i as usize, &v);
            }
            for (m, c2) in v {
                svec_add_term(f, &mut out, m, f.mul(c, &c2));
            }
        }
        out
    }

    /// All monomials with exponents below the bound, supported on `roots`.
    pub fn basis(&self, roots: &[usize]) -> Vec<Exps> {
        let n = self.n();
        let mut out = vec![vec![0u32; n]];
        for &k in roots {
            let mut next = Vec::new();
            for m in &out {
                for x in 0..self.bound {
                    let mut m2 = m.clone();
                    m2[k] = x;
                    next.push(m2);
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}
