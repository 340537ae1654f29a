use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::rootdata::RootDatum;
use crate::scalars::{q_binomial, FieldOps, RatFunc, RatFuncField};

/// A word in the simple generators of one side (`E_{w_1} ... E_{w_k}` or the
/// same with `F`), letters 0-based.
pub type Word = Vec<u8>;

/// A linear combination of words of one side.
pub type Poly = BTreeMap<Word, RatFunc>;

pub fn poly_add_term(p: &mut Poly, w: Word, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&w) {
        Some(x) => {
            *x = x.add(&c);
            if x.is_zero() {
                p.remove(&w);
            }
        }
        None => {
            p.insert(w, c);
        }
    }
}

pub fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (w, c) in b {
        poly_add_term(&mut out, w.clone(), c.clone());
    }
    out
}

pub fn poly_scale(a: &Poly, c: &RatFunc) -> Poly {
    if c.is_zero() {
        return Poly::new();
    }
    a.iter().map(|(w, x)| (w.clone(), x.mul(c))).collect()
}

/// Concatenation product (no reduction).
pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            poly_add_term(&mut out, w, ca.mul(cb));
        }
    }
    out
}

pub fn poly_from_word(w: Word) -> Poly {
    let mut p = Poly::new();
    p.insert(w, RatFunc::one());
    p
}

pub fn word_weight(rank: usize, w: &[u8]) -> Vec<i64> {
    let mut v = vec![0; rank];
    for &i in w {
        v[i as usize] += 1;
    }
    v
}

/// All words with the given letter multiplicities, lexicographically.
pub fn words_of_weight(nu: &[i64]) -> Vec<Word> {
    fn rec(counts: &mut Vec<i64>, cur: &mut Word, out: &mut Vec<Word>) {
        if counts.iter().all(|&c| c == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                cur.push(i as u8);
                rec(counts, cur, out);
                cur.pop();
                counts[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut nu.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Number of ways to write `nu` as an unordered sum of positive roots.
pub fn kostant_partition(datum: &RootDatum, nu: &[i64]) -> usize {
    fn rec(roots: &[Vec<i64>], start: usize, rest: &mut Vec<i64>) -> usize {
        if rest.iter().all(|&c| c == 0) {
            return 1;
        }
        let mut total = 0;
        for k in start..roots.len() {
            let r = &roots[k];
            if r.iter().zip(rest.iter()).all(|(a, b)| a <= b) {
                for (x, a) in rest.iter_mut().zip(r) {
                    *x -= a;
                }
                total += rec(roots, k, rest);
                for (x, a) in rest.iter_mut().zip(r) {
                    *x += a;
                }
            }
        }
        total
    }
    if nu.iter().any(|&c| c < 0) {
        return 0;
    }
    rec(&datum.positive_roots, 0, &mut nu.to_vec())
}

/// The quantum Serre relators, one for each ordered pair `i != j`:
/// `sum_r (-1)^r [1-a choose r]_{q_i} X_i^{1-a-r} X_j X_i^r` with
/// `a = <alpha_j, alpha_i^vee>`. The same polynomials serve both sides.
pub fn serre_relations(datum: &RootDatum) -> Vec<(Vec<i64>, Poly)> {
    let mut out = Vec::new();
    for i in 0..datum.rank {
        for j in 0..datum.rank {
            if i == j {
                continue;
            }
            let a = datum.cartan[j][i];
            let n = 1 - a;
            let mut p = Poly::new();
            for r in 0..=n {
                let mut w = vec![i as u8; (n - r) as usize];
                w.push(j as u8);
                w.extend(std::iter::repeat(i as u8).take(r as usize));
                let mut c = q_binomial(n, r as u32, datum.d[i]);
                if r % 2 == 1 {
                    c = c.neg();
                }
                poly_add_term(&mut p, w, RatFunc::from_laurent(c));
            }
            let mut wt = vec![0; datum.rank];
            wt[i] = n;
            wt[j] = 1;
            out.push((wt, p));
        }
    }
    out
}

/// The span of the two-sided Serre ideal inside one weight space of the free
/// algebra, in reduced echelon form.
#[derive(Debug)]
pub struct Component {
    pub words: Vec<Word>,
    pub index: HashMap<Word, usize>,
    pub ideal: EchelonBasis<RatFunc>,
    /// Indices of words not hit by a pivot: a basis of the quotient.
    pub normal: Vec<usize>,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal_words(&self) -> Vec<Word> {
        self.normal.iter().map(|&i| self.words[i].clone()).collect()
    }
}

/// Canonical forms of word polynomials modulo the Serre relations, computed
/// one weight component at a time and cached.
#[derive(Debug)]
pub struct WordQuotient {
    rank: usize,
    relators: Vec<(Vec<i64>, Poly)>,
    height_bound: i64,
    components: RefCell<HashMap<Vec<i64>, Arc<Component>>>,
    word_cache: RefCell<HashMap<Word, Arc<Poly>>>,
}

impl WordQuotient {
    pub fn new(datum: &RootDatum, height_bound: i64) -> Self {
        WordQuotient {
            rank: datum.rank,
            relators: serre_relations(datum),
            height_bound,
            components: RefCell::new(HashMap::new()),
            word_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn height_bound(&self) -> i64 {
        self.height_bound
    }

    pub fn relators(&self) -> &[(Vec<i64>, Poly)] {
        &self.relators
    }

    pub fn component(&self, nu: &[i64]) -> Result<Arc<Component>> {
        if let Some(c) = self.components.borrow().get(nu) {
            return Ok(c.clone());
        }
        let h: i64 = nu.iter().sum();
        if h > self.height_bound {
            return Err(Error::HeightBound { height: h as u32, bound: self.height_bound as u32 });
        }
        let mut words = words_of_weight(nu);
        // Larger words first, so that they become pivots and the quotient
        // basis consists of the lexicographically smaller words.
        words.reverse();
        let index: HashMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let f = RatFuncField;
        let mut ideal = EchelonBasis::new(words.len());
        for (rw, rel) in &self.relators {
            let rest: Vec<i64> = nu.iter().zip(rw).map(|(a, b)| a - b).collect();
            if rest.iter().any(|&c| c < 0) {
                continue;
            }
            // u * rel * v with wt(u) + wt(v) = rest.
            for split in sub_weights(&rest) {
                let other: Vec<i64> = rest.iter().zip(&split).map(|(a, b)| a - b).collect();
                for u in words_of_weight(&split) {
                    for v in words_of_weight(&other) {
                        let mut vec = vec![f.zero(); words.len()];
                        for (w, c) in rel {
                            let mut full = u.clone();
                            full.extend_from_slice(w);
                            full.extend_from_slice(&v);
                            vec[index[&full]] = c.clone();
                        }
                        ideal.insert(&f, &vec);
                    }
                }
            }
        }
        let pivots: std::collections::HashSet<usize> = ideal.pivots().iter().copied().collect();
        let normal: Vec<usize> = (0..words.len()).filter(|i| !pivots.contains(i)).collect();
        let comp = Arc::new(Component { words, index, ideal, normal });
        self.components.borrow_mut().insert(nu.to_vec(), comp.clone());
        Ok(comp)
    }

    /// Basis of the weight-`nu` part of the quotient, as normal words.
    pub fn weight_basis(&self, nu: &[i64]) -> Result<Vec<Word>> {
        Ok(self.component(nu)?.normal_words())
    }

    /// Canonical form of a single word.
    pub fn canonical_word(&self, w: &[u8]) -> Result<Arc<Poly>> {
        if let Some(p) = self.word_cache.borrow().get(w) {
            return Ok(p.clone());
        }
        let nu = word_weight(self.rank, w);
        let comp = self.component(&nu)?;
        let f = RatFuncField;
        let mut v = vec![f.zero(); comp.words.len()];
        v[comp.index[w]] = f.one();
        let r = comp.ideal.reduce(&f, &v);
        let mut p = Poly::new();
        for (i, c) in r.into_iter().enumerate() {
            if !c.is_zero() {
                p.insert(comp.words[i].clone(), c);
            }
        }
        let p = Arc::new(p);
        self.word_cache.borrow_mut().insert(w.to_vec(), p.clone());
        Ok(p)
    }

    pub fn canonical(&self, p: &Poly) -> Result<Poly> {
        let mut out = Poly::new();
        for (w, c) in p {
            for (nw, nc) in self.canonical_word(w)?.iter() {
                poly_add_term(&mut out, nw.clone(), c.mul(nc));
            }
        }
        Ok(out)
    }

    /// Coordinates of a weight-homogeneous canonical polynomial in the
    /// quotient basis of its component.
    pub fn coordinates(&self, nu: &[i64], p: &Poly) -> Result<Vec<RatFunc>> {
        let comp = self.component(nu)?;
        let canon = self.canonical(p)?;
        let mut out = vec![RatFunc::zero(); comp.normal.len()];
        for (k, &i) in comp.normal.iter().enumerate() {
            if let Some(c) = canon.get(&comp.words[i]) {
                out[k] = c.clone();
            }
        }
        if canon.keys().any(|w| word_weight(self.rank, w) != nu) {
            return Err(Error::Internal("polynomial is not homogeneous".into()));
        }
        Ok(out)
    }
}

/// All vectors `0 <= s <= v` componentwise.
pub fn sub_weights(v: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &c in v {
        let mut next = Vec::new();
        for prefix in &out {
            for x in 0..=c {
                let mut p = prefix.clone();
                p.push(x);
                next.push(p);
            }
        }
        out = next;
    }
    out
}
