use serde::Serialize;

use crate::error::{Error, Result};
use crate::genericuq::Side;
use crate::kernelalg::Kind;
use crate::qmodules::{ModContext, SparseMat, WeightedModule};
use crate::rootdata::format_root;
use crate::scalars::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub algebra: String,
    pub dim_a: usize,
    pub dim_m: usize,
    /// `dim M / rad(A) M`.
    pub top_dim: usize,
    pub verdict: bool,
    /// Rank of `M` as a free module, when it is free.
    pub rank: Option<usize>,
}

/// A positive root `gamma_k` of the convex order, taken on the `E` side or
/// negated on the `F` side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootRef {
    pub k: usize,
    pub side: Side,
}

impl RootRef {
    pub fn label<F: Field>(&self, ctx: &ModContext<F>) -> String {
        let g = &ctx.z.order.gammas[self.k];
        match self.side {
            Side::E => format_root(g),
            Side::F => format_root(&g.iter().map(|x| -x).collect::<Vec<_>>()),
        }
    }

    /// All of `Phi`, negative roots first.
    pub fn all<F: Field>(ctx: &ModContext<F>) -> Vec<RootRef> {
        let mut v = RootRef::positive(ctx, Side::F);
        v.extend(RootRef::positive(ctx, Side::E));
        v
    }

    pub fn positive<F: Field>(ctx: &ModContext<F>, side: Side) -> Vec<RootRef> {
        (0..ctx.n()).map(|k| RootRef { k, side }).collect()
    }
}

/// Operators generating the radical of a local kernel algebra, acting on
/// `m`, together with the dimension of the algebra.
fn radical_ops<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, kind: &Kind) -> Result<(Vec<SparseMat<F::Elem>>, usize)> {
    let bound = ctx.bound as usize;
    if ctx.r >= 1 {
        let side = match kind {
            Kind::UMinus | Kind::Am(1) | Kind::Root(0, Side::F) => Side::F,
            Kind::UPlus | Kind::AmPlus(1) | Kind::Root(0, Side::E) => Side::E,
            other => return Err(Error::Config(format!("{other} is not a local rank one kernel"))),
        };
        let ops = vec![m.div_op(ctx, side, 0, 1)?, m.div_op(ctx, side, 0, ctx.ell())?];
        return Ok((ops, bound));
    }
    let roots = |side: Side, upto: usize| -> Result<Vec<SparseMat<F::Elem>>> {
        (0..upto).map(|k| m.root_op(ctx, side, k)).collect()
    };
    let n = ctx.n();
    let ell = ctx.ell() as usize;
    match kind {
        Kind::UMinus => Ok((roots(Side::F, n)?, ell.pow(n as u32))),
        Kind::UPlus => Ok((roots(Side::E, n)?, ell.pow(n as u32))),
        Kind::Am(j) if *j <= n => Ok((roots(Side::F, *j)?, ell.pow(*j as u32))),
        Kind::AmPlus(j) if *j <= n => Ok((roots(Side::E, *j)?, ell.pow(*j as u32))),
        Kind::Root(k, side) if *k < n => Ok((vec![m.root_op(ctx, *side, *k)?], ell)),
        other => Err(Error::Config(format!("{other} is not a local kernel algebra"))),
    }
}

/// Nakayama test over a local algebra: `M` is free iff
/// `dim M = dim A * dim(M / rad(A) M)`.
pub fn free_over_local<F: Field>(ctx: &ModContext<F>, kind: &Kind, m: &WeightedModule<F>) -> Result<FreenessReport> {
    let (ops, dim_a) = radical_ops(ctx, m, kind)?;
    let cols = ops.into_iter().flat_map(|x| x.cols).collect();
    let rad = SparseMat { rows: m.dim, cols }.rank(ctx.field());
    let top_dim = m.dim - rad;
    let verdict = m.dim == dim_a * top_dim;
    Ok(FreenessReport {
        algebra: kind_label(ctx, kind),
        dim_a,
        dim_m: m.dim,
        top_dim,
        verdict,
        rank: verdict.then_some(top_dim),
    })
}

fn kind_label<F: Field>(ctx: &ModContext<F>, kind: &Kind) -> String {
    match kind {
        Kind::Root(k, side) => format!("root({})", RootRef { k: *k, side: *side }.label(ctx)),
        other if ctx.r > 0 => format!("{other}:r{}", ctx.r),
        other => other.to_string(),
    }
}

/// The top divided power of a root vector, `X^{(p^r ell - 1)}`, on `m`.
pub fn root_top_power<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, root: RootRef) -> Result<SparseMat<F::Elem>> {
    if ctx.r >= 1 {
        return m.div_op(ctx, root.side, 0, ctx.bound - 1);
    }
    Ok(m.root_op(ctx, root.side, root.k)?.pow(ctx.field(), ctx.ell() - 1))
}

/// Freeness over the root subalgebra of `root`, by Nakayama, checked
/// against the rank of the top power of the root vector.
pub fn free_over_root<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, root: RootRef) -> Result<FreenessReport> {
    let rep = free_over_local(ctx, &Kind::Root(root.k, root.side), m)?;
    let top = root_top_power(ctx, m, root)?.rank(ctx.field());
    let shortcut = ctx.bound as usize * top == m.dim;
    if shortcut != rep.verdict {
        return Err(Error::Internal(format!(
            "freeness of {} over {}: Nakayama says {}, the top power says {}",
            m.provenance, rep.algebra, rep.verdict, shortcut
        )));
    }
    Ok(rep)
}
