use crate::genericuq::Side;
use crate::linalg::EchelonBasis;
use crate::rootdata::RootDatum;
use crate::scalars::{Field, Q};

use super::module::{Character, ModContext, WeightedModule};
use super::sparse::SparseMat;

/// Weights of the PBW monomials of the negative part, as positive
/// root-lattice weights in fundamental coordinates.
pub fn unipotent_character<F: Field>(ctx: &ModContext<F>) -> Character {
    let d = ctx.datum();
    let mut out = Character::new();
    out.insert(vec![0; ctx.rank()], 1);
    for g in &ctx.z.order.gammas {
        let gw = d.root_to_weight(g);
        let mut next = Character::new();
        for (w, c) in &out {
            for a in 0..ctx.bound as i64 {
                let w2: Vec<i64> = w.iter().zip(&gw).map(|(x, y)| x + a * y).collect();
                *next.entry(w2).or_insert(0) += c;
            }
        }
        out = next;
    }
    out
}

/// Character of `Z_r(lambda)` (equal to that of `Z'_r(lambda)`).
pub fn verma_character<F: Field>(ctx: &ModContext<F>, lambda: &[i64]) -> Character {
    unipotent_character(ctx)
        .into_iter()
        .map(|(w, c)| (lambda.iter().zip(&w).map(|(a, b)| a - b).collect(), c))
        .collect()
}

pub fn tensor_character(a: &Character, b: &Character) -> Character {
    let mut out = Character::new();
    for (x, m) in a {
        for (y, n) in b {
            let w: Vec<i64> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            *out.entry(w).or_insert(0) += m * n;
        }
    }
    out
}

fn height(d: &RootDatum, w: &[i64]) -> Q {
    d.weight_to_root_coords(w).into_iter().fold(Q::from_integer(0.into()), |a, b| a + b)
}

/// Decomposes a character as a nonnegative integer combination of baby
/// Verma characters. A weight of maximal height can only be the highest
/// weight of a summand, so peeling from the top is exact.
pub fn verma_decomposition<F: Field>(ctx: &ModContext<F>, ch: &Character) -> Option<Vec<(Vec<i64>, usize)>> {
    let d = ctx.datum();
    let u = unipotent_character(ctx);
    let mut rest: std::collections::BTreeMap<Vec<i64>, i64> = ch.iter().map(|(w, c)| (w.clone(), *c as i64)).collect();
    let mut out = Vec::new();
    loop {
        rest.retain(|_, c| *c != 0);
        if rest.values().any(|c| *c < 0) {
            return None;
        }
        let Some(top) = rest.keys().max_by(|a, b| height(d, a).cmp(&height(d, b)).then_with(|| a.cmp(b))).cloned() else {
            return Some(out);
        };
        let mult = rest[&top];
        for (w, c) in &u {
            let key: Vec<i64> = top.iter().zip(w).map(|(a, b)| a - b).collect();
            *rest.entry(key).or_insert(0) -= mult * *c as i64;
        }
        out.push((top, mult as usize));
    }
}

/// Whether the character of `m` lies in the nonnegative integer span of
/// baby Verma characters; `None` for modules without an `X`-grading.
pub fn verma_character_test<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>) -> Option<bool> {
    m.character().map(|ch| verma_decomposition(ctx, &ch).is_some())
}

/// `F_{gamma_1}^{(top)} ... F_{gamma_m}^{(top)}` acting on `m`.
pub fn integral_op<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, roots: usize) -> crate::error::Result<SparseMat<F::Elem>> {
    let f = ctx.field();
    if ctx.r >= 1 {
        return m.div_op(ctx, Side::F, 0, ctx.bound - 1);
    }
    let mut acc = SparseMat::identity(f, m.dim);
    for k in 0..roots {
        acc = acc.mul(f, &m.root_op(ctx, Side::F, k)?.pow(f, ctx.ell() - 1));
    }
    Ok(acc)
}

/// Weight vectors forming a basis of `m` over `A_m`, chosen so that their
/// images under the integral are independent; `None` when `m` is not free.
pub fn weight_basis_over_am<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, roots: usize) -> crate::error::Result<Option<Vec<Vec<F::Elem>>>> {
    let f = ctx.field();
    let int = integral_op(ctx, m, roots)?;
    let mut images = EchelonBasis::new(m.dim);
    let mut chosen = Vec::new();
    for j in 0..m.dim {
        let mut e = vec![f.zero(); m.dim];
        e[j] = f.one();
        if images.insert(f, &int.apply(f, &e)) {
            chosen.push(e);
        }
    }
    let dim_a = (ctx.bound as usize).pow(roots as u32);
    Ok(if chosen.len() * dim_a == m.dim { Some(chosen) } else { None })
}
