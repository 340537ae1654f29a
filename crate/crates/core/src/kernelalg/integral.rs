use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::scalars::Field;

use super::algebra::{Elem, Kind, KernelAlgebra, Mono};
use super::table::ZetaData;

/// The product of top powers of the first `m` negative root vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralElement {
    pub m: usize,
    pub mono: Mono,
}

pub fn integral<F: Field>(alg: &KernelAlgebra<F>) -> Result<IntegralElement> {
    match alg.kind {
        Kind::Am(m) | Kind::AmPlus(m) => Ok(IntegralElement { m, mono: alg.top_monomial() }),
        Kind::UMinus | Kind::UPlus | Kind::Root(..) => {
            Ok(IntegralElement { m: alg.f_roots.len().max(alg.e_roots.len()), mono: alg.top_monomial() })
        }
        _ => Err(Error::Config(format!("{} is not one of the local algebras", alg.kind))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleReport {
    pub left_dim: usize,
    pub right_dim: usize,
    pub spanned_by_integral: bool,
}

/// Solves for the left and right invariants of a local algebra and compares
/// them with the integral.
pub fn socle_check<F: Field>(alg: &KernelAlgebra<F>) -> Result<SocleReport> {
    let int = integral(alg)?;
    let left = alg.left_invariants()?;
    let right = alg.right_invariants()?;
    let is_int = |v: &Elem<F::Elem>| v.len() == 1 && v.contains_key(&int.mono);
    let spanned = left.len() == 1 && right.len() == 1 && is_int(&left[0]) && is_int(&right[0]);
    if left.len() != 1 || right.len() != 1 {
        return Err(Error::Inconsistent(format!(
            "{}: invariants of dimension {} (left) and {} (right); expected 1",
            alg.kind,
            left.len(),
            right.len()
        )));
    }
    Ok(SocleReport { left_dim: left.len(), right_dim: right.len(), spanned_by_integral: spanned })
}

/// `A_m` is normal in `A_{m+1}`: the left and right ideals of `A_{m+1}`
/// generated by the augmentation ideal of `A_m` coincide.
pub fn normality_check<F: Field>(z: &Arc<ZetaData<F>>, m: usize) -> Result<bool> {
    let n = z.n();
    if m == 0 || m >= n {
        return Err(Error::Config(format!("normality needs 1 <= m < {n}, got {m}")));
    }
    let big = KernelAlgebra::build(Kind::Am(m + 1), 0, z.clone())?;
    let small = KernelAlgebra::build_with(Kind::Am(m), 0, z.clone(), (big.fhalf.clone(), big.ehalf.clone()))?;
    let f = big.field();
    let unit = small.unit_mono();
    let aug: Vec<Elem<F::Elem>> = small.basis.iter().filter(|x| **x != unit).map(|x| small.mono_elem(x)).collect();
    let mut left = EchelonBasis::new(big.dim());
    let mut right = EchelonBasis::new(big.dim());
    for b in &big.basis {
        let be = big.mono_elem(b);
        for a in &aug {
            let l = big.multiply(&be, a);
            let r = big.multiply(a, &be);
            if !big.contains(&l) || !big.contains(&r) {
                return Err(Error::Inconsistent(format!("A_{} is not closed under multiplication", m + 1)));
            }
            left.insert(f, &big.to_dense(&l));
            right.insert(f, &big.to_dense(&r));
        }
    }
    if left.len() != right.len() {
        return Ok(false);
    }
    Ok(left.rows().iter().all(|v| right.contains(f, v)))
}

/// The algebra mirrored by `omega`.
pub fn omega_algebra<F: Field>(alg: &KernelAlgebra<F>) -> Result<KernelAlgebra<F>> {
    KernelAlgebra::build_with(alg.kind.omega(), alg.r, alg.z.clone(), (alg.fhalf.clone(), alg.ehalf.clone()))
}

/// Whether the F-side specialized table is the `omega` image of the E-side
/// one: tails transform by `prod c_s^{a_s} / (c_i c_j)`.
pub fn tables_mirror<F: Field>(z: &ZetaData<F>) -> bool {
    let f = &z.field;
    z.table.e.iter().all(|(&(i, j), e)| {
        let Some(fe) = z.table.f.get(&(i, j)) else { return false };
        if fe.leading != e.leading || fe.tail.len() != e.tail.len() {
            return false;
        }
        let cij = f.mul(&z.table.omega[i], &z.table.omega[j]);
        e.tail.iter().zip(&fe.tail).all(|((a, t), (b, u))| {
            let mut c = f.div(t, &cij);
            for (s, &x) in a.iter().enumerate() {
                c = f.mul(&c, &f.pow(&z.table.omega[s], x as u64));
            }
            a == b && c == *u
        })
    })
}

/// For an element `sum c_mu F^a K^mu E^b` with fixed `a`, `b` whose torus
/// part is an idempotent `e_chi` up to scale, the exponents `c_i` with
/// `chi(K_i) = zeta^{c_i}`.
pub fn torus_character<F: Field>(alg: &KernelAlgebra<F>, x: &Elem<F::Elem>) -> Option<Vec<i64>> {
    let f = alg.field();
    let ell = alg.z.ell() as i64;
    let (m0, c0) = x.iter().next()?;
    if x.keys().any(|m| m.f != m0.f || m.e != m0.e) || x.len() != ell.pow(alg.rank() as u32) as usize {
        return None;
    }
    let mut chi = Vec::new();
    for i in 0..alg.rank() {
        let mut m1 = m0.clone();
        m1.k[i] = (m1.k[i] + 1) % ell as u32;
        let ratio = f.div(c0, x.get(&m1)?);
        chi.push((0..ell).find(|&e| f.zeta_pow(e) == ratio)?);
    }
    // Verify every coefficient.
    for (m, c) in x {
        let e: i64 = (0..alg.rank()).map(|i| chi[i] * (m.k[i] as i64 - m0.k[i] as i64)).sum();
        if f.mul(c, &f.zeta_pow(e)) != *c0 {
            return None;
        }
    }
    Some(chi)
}
