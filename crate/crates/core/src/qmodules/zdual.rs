use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linalg::{nullspace, rank, Matrix};
use crate::scalars::Field;

use super::construct::{coverma, dual, verma};
use super::module::{ModContext, WeightedModule};

/// Basis of the module maps `M -> N`, each as a dense `dim N x dim M`
/// matrix. Maps are weight preserving (torus classes for non-graded
/// modules), and only operators acting on both modules are imposed.
pub fn hom_space<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, n: &WeightedModule<F>) -> Vec<Matrix<F::Elem>> {
    let f = ctx.field();
    let graded = m.graded() && n.graded();
    let key = |w: &Vec<i64>| if graded { w.clone() } else { ctx.k_class(w) };
    let mut unknowns: HashMap<(usize, usize), usize> = HashMap::new();
    let mut list = Vec::new();
    for i in 0..n.dim {
        for j in 0..m.dim {
            if key(&n.weights[i]) == key(&m.weights[j]) {
                unknowns.insert((i, j), list.len());
                list.push((i, j));
            }
        }
    }
    let mut rows: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut entries = Vec::new();
    for (gi, (g, xm)) in m.ops.iter().enumerate() {
        let Some(xn) = n.ops.get(g) else { continue };
        // (T X_M)[i][j] = sum_k T[i][k] X_M[k][j]
        for (j, col) in xm.cols.iter().enumerate() {
            for (k, c) in col {
                for i in 0..n.dim {
                    if let Some(&u) = unknowns.get(&(i, *k)) {
                        let len = rows.len();
                        let r = *rows.entry((gi, i, j)).or_insert(len);
                        entries.push((r, u, c.clone()));
                    }
                }
            }
        }
        // -(X_N T)[i][j] = -sum_k X_N[i][k] T[k][j]
        for (k, col) in xn.cols.iter().enumerate() {
            for (i, c) in col {
                for j in 0..m.dim {
                    if let Some(&u) = unknowns.get(&(k, j)) {
                        let len = rows.len();
                        let r = *rows.entry((gi, *i, j)).or_insert(len);
                        entries.push((r, u, f.neg(c)));
                    }
                }
            }
        }
    }
    let mut mat = Matrix::filled(rows.len().max(1), list.len(), f.zero());
    for (r, u, c) in entries {
        let s = f.add(mat.get(r, u), &c);
        mat.set(r, u, s);
    }
    let sols = if list.is_empty() { Vec::new() } else { nullspace(f, &mat) };
    sols.into_iter()
        .map(|v| {
            let mut t = Matrix::filled(n.dim, m.dim, f.zero());
            for (u, c) in v.into_iter().enumerate() {
                let (i, j) = list[u];
                t.set(i, j, c);
            }
            t
        })
        .collect()
}

/// An explicit isomorphism `M -> N` if one is found among random
/// combinations of a basis of module maps.
pub fn find_isomorphism<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, n: &WeightedModule<F>, seed: u64) -> Option<Matrix<F::Elem>> {
    if m.dim != n.dim || (m.graded() && n.graded() && m.character() != n.character()) {
        return None;
    }
    let f = ctx.field();
    let homs = hom_space(ctx, m, n);
    if homs.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..8 {
        let mut t = Matrix::filled(n.dim, m.dim, f.zero());
        for (k, h) in homs.iter().enumerate() {
            let c = if attempt == 0 && k == 0 { f.one() } else if attempt == 0 { f.zero() } else { f.random(&mut rng) };
            for i in 0..n.dim {
                for j in 0..m.dim {
                    let v = f.add(t.get(i, j), &f.mul(&c, h.get(i, j)));
                    t.set(i, j, v);
                }
            }
        }
        if rank(f, &t) == m.dim {
            return Some(t);
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Identification {
    pub character_match: bool,
    pub isomorphic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ZdualReport {
    pub lambda: Vec<i64>,
    /// `2(p^r ell - 1) rho - lambda`.
    pub mu: Vec<i64>,
    pub dual_verma_vs_verma: Identification,
    pub dual_verma_vs_coverma: Identification,
    pub dual_coverma_vs_verma: Identification,
    pub dual_coverma_vs_coverma: Identification,
}

impl ZdualReport {
    /// `Z(lambda)^* = Z'(mu)` and `Z'(lambda)^* = Z(mu)`.
    pub fn hat_swapped(&self) -> bool {
        self.dual_verma_vs_coverma.isomorphic && self.dual_coverma_vs_verma.isomorphic
    }

    /// `Z(lambda)^* = Z(mu)` and `Z'(lambda)^* = Z'(mu)`.
    pub fn hat_preserved(&self) -> bool {
        self.dual_verma_vs_verma.isomorphic && self.dual_coverma_vs_coverma.isomorphic
    }
}

fn identify<F: Field>(ctx: &ModContext<F>, a: &WeightedModule<F>, b: &WeightedModule<F>) -> Identification {
    Identification { character_match: a.character() == b.character(), isomorphic: find_isomorphism(ctx, a, b, 1).is_some() }
}

/// Compares the duals of `Z(lambda)` and `Z'(lambda)` with both modules at
/// `2(p^r ell - 1) rho - lambda`.
pub fn zdual_check<F: Field>(ctx: &ModContext<F>, lambda: &[i64]) -> Result<ZdualReport> {
    let top = 2 * (ctx.bound as i64 - 1);
    let mu: Vec<i64> = lambda.iter().map(|x| top - x).collect();
    let dz = dual(ctx, &verma(ctx, lambda)?)?;
    let dzp = dual(ctx, &coverma(ctx, lambda)?)?;
    let z = verma(ctx, &mu)?;
    let zp = coverma(ctx, &mu)?;
    Ok(ZdualReport {
        lambda: lambda.to_vec(),
        mu,
        dual_verma_vs_verma: identify(ctx, &dz, &z),
        dual_verma_vs_coverma: identify(ctx, &dz, &zp),
        dual_coverma_vs_verma: identify(ctx, &dzp, &z),
        dual_coverma_vs_coverma: identify(ctx, &dzp, &zp),
    })
}
