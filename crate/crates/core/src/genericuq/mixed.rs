//! Elements of `U_q` in triangular form `F-word * K_mu * E-word`.

use std::collections::BTreeMap;
use std::fmt;

use crate::rootdata::format_root;
use crate::scalars::RatFunc;

use super::words::{Poly, Word};

/// The monomial `F_{f_1} ... F_{f_k} K_mu E_{e_1} ... E_{e_m}`, with
/// `K_mu = prod K_i^{mu_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tri {
    pub f: Word,
    pub k: Vec<i64>,
    pub e: Word,
}

impl Tri {
    pub fn new(f: Word, k: Vec<i64>, e: Word) -> Self {
        Tri { f, k, e }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Mixed {
    pub terms: BTreeMap<Tri, RatFunc>,
}

impl Mixed {
    pub fn zero() -> Self {
        Mixed::default()
    }

    pub fn monomial(t: Tri, c: RatFunc) -> Self {
        let mut m = Mixed::zero();
        m.add_term(t, c);
        m
    }

    pub fn one(rank: usize) -> Self {
        Mixed::monomial(Tri::new(vec![], vec![0; rank], vec![]), RatFunc::one())
    }

    pub fn e(rank: usize, i: usize) -> Self {
        Mixed::monomial(Tri::new(vec![], vec![0; rank], vec![i as u8]), RatFunc::one())
    }

    pub fn f(rank: usize, i: usize) -> Self {
        Mixed::monomial(Tri::new(vec![i as u8], vec![0; rank], vec![]), RatFunc::one())
    }

    pub fn k(mu: Vec<i64>) -> Self {
        Mixed::monomial(Tri::new(vec![], mu, vec![]), RatFunc::one())
    }

    pub fn from_e_poly(rank: usize, p: &Poly) -> Self {
        let mut m = Mixed::zero();
        for (w, c) in p {
            m.add_term(Tri::new(vec![], vec![0; rank], w.clone()), c.clone());
        }
        m
    }

    pub fn from_f_poly(rank: usize, p: &Poly) -> Self {
        let mut m = Mixed::zero();
        for (w, c) in p {
            m.add_term(Tri::new(w.clone(), vec![0; rank], vec![]), c.clone());
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: Tri, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn add(&self, o: &Mixed) -> Mixed {
        let mut out = self.clone();
        for (t, c) in &o.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Mixed) -> Mixed {
        self.add(&o.scale(&RatFunc::one().neg()))
    }

    pub fn scale(&self, c: &RatFunc) -> Mixed {
        if c.is_zero() {
            return Mixed::zero();
        }
        Mixed { terms: self.terms.iter().map(|(t, x)| (t.clone(), x.mul(c))).collect() }
    }

    /// The E-side polynomial, if the element has no F or K part.
    pub fn as_e_poly(&self) -> Option<Poly> {
        let mut p = Poly::new();
        for (t, c) in &self.terms {
            if !t.f.is_empty() || t.k.iter().any(|&x| x != 0) {
                return None;
            }
            p.insert(t.e.clone(), c.clone());
        }
        Some(p)
    }

    /// The F-side polynomial, if the element has no E or K part.
    pub fn as_f_poly(&self) -> Option<Poly> {
        let mut p = Poly::new();
        for (t, c) in &self.terms {
            if !t.e.is_empty() || t.k.iter().any(|&x| x != 0) {
                return None;
            }
            p.insert(t.f.clone(), c.clone());
        }
        Some(p)
    }
}

fn fmt_word(f: &mut fmt::Formatter<'_>, sym: char, w: &[u8]) -> fmt::Result {
    for &i in w {
        write!(f, "{sym}{}", i + 1)?;
    }
    Ok(())
}

impl fmt::Display for Mixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (t, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            fmt_word(f, 'F', &t.f)?;
            if t.k.iter().any(|&x| x != 0) {
                write!(f, "K[{}]", format_root(&t.k))?;
            }
            fmt_word(f, 'E', &t.e)?;
        }
        Ok(())
    }
}
