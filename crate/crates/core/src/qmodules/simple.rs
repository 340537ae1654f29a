use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::genericuq::Side;
use crate::linalg::{nullspace, EchelonBasis, Matrix};
use crate::scalars::Field;

use super::construct::{closure, fmt_weight, quotient, verma};
use super::module::{gen_side, ModContext, WeightedModule};

/// Span of the functionals `delta_top o X` for words `X` in the raising
/// operators, where `delta_top` is the coordinate of basis vector `top`.
pub fn raising_functionals<F: Field>(ctx: &ModContext<F>, m: &WeightedModule<F>, top: usize) -> EchelonBasis<F::Elem> {
    let f = ctx.field();
    let raising: Vec<_> = m.ops.iter().filter(|(g, _)| gen_side(**g) == Some(Side::E)).map(|(_, x)| x).collect();
    let mut basis = EchelonBasis::new(m.dim);
    let mut delta = vec![f.zero(); m.dim];
    delta[top] = f.one();
    basis.insert(f, &delta);
    let mut queue = VecDeque::from([delta]);
    while let Some(phi) = queue.pop_front() {
        for x in &raising {
            let psi = x.apply_left(f, &phi);
            if basis.insert(f, &psi) {
                queue.push_back(psi);
            }
        }
    }
    basis
}

/// The simple head `L(lambda)` of the baby Verma module: the quotient by
/// the common kernel of the raising functionals. The result is certified:
/// it is generated by its highest weight vector and the raising functionals
/// separate its points, so every nonzero submodule contains the highest
/// weight vector.
pub fn simple<F: Field>(ctx: &ModContext<F>, lambda: &[i64]) -> Result<WeightedModule<F>> {
    let f = ctx.field();
    let z = verma(ctx, lambda)?;
    let phi = raising_functionals(ctx, &z, 0);
    let mat = Matrix::from_rows(z.dim, phi.rows().to_vec());
    let mut rad = EchelonBasis::new(z.dim);
    for v in nullspace(f, &mat) {
        rad.insert(f, &v);
    }
    let l = quotient(ctx, &z, &rad, format!("simple({})", fmt_weight(lambda)))?;
    certify_simple(ctx, &l)?;
    Ok(l)
}

/// Checks the two conditions above for a module whose basis vector 0 is a
/// highest weight vector.
pub fn certify_simple<F: Field>(ctx: &ModContext<F>, l: &WeightedModule<F>) -> Result<()> {
    let f = ctx.field();
    let mut e0 = vec![f.zero(); l.dim];
    e0[0] = f.one();
    if closure(ctx, l, &[e0]).len() != l.dim {
        return Err(Error::Module(format!("{}: not generated by the highest weight vector", l.provenance)));
    }
    if raising_functionals(ctx, l, 0).len() != l.dim {
        return Err(Error::Module(format!("{}: raising functionals do not separate points", l.provenance)));
    }
    Ok(())
}
