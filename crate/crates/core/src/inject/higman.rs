//! Projectivity over the Hopf kernels through the trace criterion: `M` is
//! projective iff `id_M` lies in `Lambda . End(M)` for a left integral
//! `Lambda`, with `End(M) = M (x) M^*` under the adjoint action.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genericuq::Side;
use crate::linalg::EchelonBasis;
use crate::qmodules::{dual, restrict, tensor, ModContext, SparseMat, WeightedModule};
use crate::scalars::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum HopfKind {
    G,
    BMinus,
    BPlus,
}

impl fmt::Display for HopfKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HopfKind::G => "g",
            HopfKind::BMinus => "b-",
            HopfKind::BPlus => "b+",
        })
    }
}

/// The factors of the top monomial on one side, listed in the order they
/// act on a vector (rightmost factor first).
fn top_factors<F: Field>(ctx: &ModContext<F>, n: &WeightedModule<F>, side: Side) -> Result<Vec<SparseMat<F::Elem>>> {
    if ctx.r >= 1 {
        return Ok(vec![n.div_op(ctx, side, 0, ctx.bound - 1)?]);
    }
    let mut out = Vec::new();
    for k in (0..ctx.n()).rev() {
        let x = n.root_op(ctx, side, k)?;
        for _ in 1..ctx.ell() {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// Restriction of `m` to the Hopf kernel, or an error if `m` does not
/// carry that structure.
pub fn restrict_to<F: Field>(m: &WeightedModule<F>, kind: HopfKind) -> Result<WeightedModule<F>> {
    let ok = match kind {
        HopfKind::G => m.flags.full_u,
        HopfKind::BMinus => m.flags.full_u || m.flags.borel_minus,
        HopfKind::BPlus => m.flags.full_u || m.flags.borel_plus,
    };
    if !ok {
        return Err(Error::Module(format!("{} is not a module over u({kind})", m.provenance)));
    }
    Ok(match kind {
        HopfKind::G => m.clone(),
        HopfKind::BMinus => restrict(m, Side::F),
        HopfKind::BPlus => restrict(m, Side::E),
    })
}

/// Whether `m` is projective (equivalently injective) over `u(g)`,
/// `u(b-)` or `u(b+)`, or their higher analogues when `ctx.r = 1`.
///
/// The integrals are `F^top e_chi E^top`, `F^top e_chi` and `e_0 E^top`
/// with `chi` the class of `2(p^r ell - 1) rho`. Since `id` has weight zero,
/// only the component of `End(M)` of weight `-wt(Lambda)` matters, and on
/// it the idempotent acts as the identity.
pub fn higman_projective<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, kind: HopfKind) -> Result<bool> {
    if ctx.r >= 1 && !m.graded() {
        return Err(Error::Module(format!("{}: higher kernels need X-weights", m.provenance)));
    }
    let f = ctx.field();
    let m = restrict_to(m, kind)?;
    if m.dim == 0 {
        return Ok(true);
    }
    let n = tensor(ctx, &m, &dual(ctx, &m)?)?;
    let top = 2 * (ctx.bound as i64 - 1);
    let rank = ctx.rank();
    let (mut factors, dom) = match kind {
        HopfKind::G => (top_factors(ctx, &n, Side::E)?, vec![0; rank]),
        HopfKind::BMinus => (Vec::new(), vec![top; rank]),
        HopfKind::BPlus => (top_factors(ctx, &n, Side::E)?, vec![-top; rank]),
    };
    if kind != HopfKind::BPlus {
        factors.extend(top_factors(ctx, &n, Side::F)?);
    }
    let same = |a: &[i64], b: &[i64]| if n.graded() { a == b } else { ctx.k_class(a) == ctx.k_class(b) };
    let zero = vec![0; rank];
    let domain: Vec<usize> = (0..n.dim).filter(|&j| same(&n.weights[j], &dom)).collect();
    let targets: Vec<usize> = (0..n.dim).filter(|&j| same(&n.weights[j], &zero)).collect();
    let mut block = SparseMat { rows: n.dim, cols: domain.iter().map(|&j| vec![(j, f.one())]).collect() };
    for x in &factors {
        block = x.mul(f, &block);
    }
    let pos: std::collections::HashMap<usize, usize> = targets.iter().enumerate().map(|(a, &j)| (j, a)).collect();
    let mut span = EchelonBasis::new(targets.len());
    for col in &block.cols {
        let mut v = vec![f.zero(); targets.len()];
        for (i, c) in col {
            let a = pos.get(i).ok_or_else(|| Error::Internal("integral leaves the zero weight space".into()))?;
            v[*a] = c.clone();
        }
        span.insert(f, &v);
    }
    let mut id = vec![f.zero(); targets.len()];
    for i in 0..m.dim {
        id[pos[&(i * m.dim + i)]] = f.one();
    }
    Ok(span.contains(f, &id))
}
