use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernelalg::{AlgGen, KernelAlgebra, Kind, ZetaData};
use crate::linalg::{nullspace, EchelonBasis, Matrix};
use crate::rootdata::{format_root, height};
use crate::scalars::{Field, FieldOps};

/// Default cap on `dim P_n` during a resolution.
pub const DEFAULT_RESOLUTION_BUDGET: usize = 20_000;

/// Generator weights (simple-root coordinates) of each step of a minimal
/// free resolution of the trivial module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedBetti {
    pub algebra: String,
    pub degrees: Vec<Vec<Vec<i64>>>,
}

impl GradedBetti {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.len()).collect()
    }

    /// One line per degree: `n betti weights...`.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        for (n, ws) in self.degrees.iter().enumerate() {
            let labels: Vec<String> = ws.iter().map(|w| format_root(w)).collect();
            s.push_str(&format!("{n}\t{}\t{}\n", ws.len(), labels.join(" ")));
        }
        s
    }
}

type Col<E> = Vec<(usize, E)>;

/// Left multiplication by each basis monomial, as sparse columns.
fn left_mult_tables<F: Field>(alg: &KernelAlgebra<F>) -> Vec<Vec<Col<F::Elem>>> {
    alg.basis
        .iter()
        .map(|b| {
            alg.basis
                .iter()
                .map(|y| {
                    let mut col: Col<F::Elem> =
                        alg.apply_mono(b, &alg.mono_elem(y)).into_iter().map(|(m, c)| (alg.index[&m], c)).collect();
                    col.sort_by_key(|p| p.0);
                    col
                })
                .collect()
        })
        .collect()
}

fn gen_root_weight<F: Field>(alg: &KernelAlgebra<F>, g: AlgGen) -> Vec<i64> {
    let z = &alg.z;
    let neg = |v: Vec<i64>| v.into_iter().map(|x| -x).collect();
    match g {
        AlgGen::E(i) => z.datum.simple_root(i),
        AlgGen::F(i) => neg(z.datum.simple_root(i)),
        AlgGen::ERoot(k) => z.order.gammas[k].clone(),
        AlgGen::FRoot(k) => neg(z.order.gammas[k].clone()),
        _ => vec![0; alg.rank()],
    }
}

fn add_weights(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A minimal graded free resolution of `k` over a local kernel algebra, up
/// to homological degree `n_max`. Each step covers the kernel of the
/// previous differential by a homogeneous complement of its radical.
pub fn minimal_resolution<F: Field>(alg: &KernelAlgebra<F>, n_max: usize, budget: usize) -> Result<GradedBetti> {
    if !alg.kind.is_local() {
        return Err(Error::Config(format!("{} is not local", alg.kind)));
    }
    let f = alg.field();
    let da = alg.dim();
    let unit = alg.index[&alg.unit_mono()];
    let bw: Vec<Vec<i64>> = alg.basis.iter().map(|m| alg.mono_weight(m)).collect();
    let lmul = left_mult_tables(alg);
    let rad_gens: Vec<Vec<Col<F::Elem>>> =
        alg.generators().into_iter().map(|g| alg.gen_matrix(g).map(|m| (*m).clone())).collect::<Result<_>>()?;

    let mut degrees: Vec<Vec<Vec<i64>>> = vec![vec![vec![0; alg.rank()]]];
    // Kernel of the augmentation: every non-unit monomial.
    let mut kernel: Vec<(Vec<i64>, Vec<F::Elem>)> = (0..da)
        .filter(|&b| b != unit)
        .map(|b| {
            let mut v = vec![f.zero(); da];
            v[b] = f.one();
            (bw[b].clone(), v)
        })
        .collect();
    let mut gen_w: Vec<Vec<i64>> = degrees[0].clone();
    for n in 1..=n_max {
        let dim_prev = gen_w.len() * da;
        // Minimal generators of the kernel, weight by weight.
        let mut by_weight: BTreeMap<Vec<i64>, Vec<Vec<F::Elem>>> = BTreeMap::new();
        for (w, v) in &kernel {
            by_weight.entry(w.clone()).or_default().push(v.clone());
        }
        let mut rad: BTreeMap<Vec<i64>, EchelonBasis<F::Elem>> = BTreeMap::new();
        for (w, vs) in &by_weight {
            for v in vs {
                for (gm, g) in rad_gens.iter().zip(alg.generators()) {
                    let out = apply_blockwise(f, gm, v, da);
                    if out.iter().all(|c| f.is_zero(c)) {
                        continue;
                    }
                    let gw = gen_root_weight(alg, g);
                    rad.entry(add_weights(w, &gw)).or_insert_with(|| EchelonBasis::new(dim_prev)).insert(f, &out);
                }
            }
        }
        let mut new_gens: Vec<(Vec<i64>, Vec<F::Elem>)> = Vec::new();
        for (w, vs) in &by_weight {
            let mut span = rad.remove(w).unwrap_or_else(|| EchelonBasis::new(dim_prev));
            for v in vs {
                if span.insert(f, v) {
                    new_gens.push((w.clone(), v.clone()));
                }
            }
        }
        for (_, v) in &new_gens {
            if (0..gen_w.len()).any(|s| !f.is_zero(&v[s * da + unit])) {
                return Err(Error::Internal("a differential has a unit entry".into()));
            }
        }
        degrees.push(new_gens.iter().map(|(w, _)| w.clone()).collect());
        if n == n_max {
            break;
        }
        let dim_next = new_gens.len() * da;
        if dim_next > budget {
            return Err(Error::Budget(format!("resolution step {n} has dimension {dim_next}")));
        }
        // Kernel of d_n, computed inside each weight space.
        let mut cols_by_weight: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        let mut images: Vec<Vec<F::Elem>> = Vec::with_capacity(dim_next);
        for (s, (w, k)) in new_gens.iter().enumerate() {
            for b in 0..da {
                cols_by_weight.entry(add_weights(w, &bw[b])).or_default().push(s * da + b);
                images.push(apply_blockwise(f, &lmul[b], k, da));
            }
        }
        let prev_w: Vec<Vec<i64>> = (0..dim_prev).map(|i| add_weights(&gen_w[i / da], &bw[i % da])).collect();
        let mut next_kernel = Vec::new();
        for (w, cols) in &cols_by_weight {
            let rows: Vec<usize> = (0..dim_prev).filter(|&i| &prev_w[i] == w).collect();
            let mat = Matrix::from_fn(rows.len(), cols.len(), |i, j| images[cols[j]][rows[i]].clone());
            for z in nullspace(f, &mat) {
                let mut v = vec![f.zero(); dim_next];
                for (j, c) in cols.iter().zip(z) {
                    v[*j] = c;
                }
                next_kernel.push((w.clone(), v));
            }
        }
        kernel = next_kernel;
        gen_w = new_gens.into_iter().map(|(w, _)| w).collect();
    }
    for (n, ws) in degrees.iter().enumerate() {
        if ws.iter().any(|w| height(w).unsigned_abs() < n as u64) {
            return Err(Error::Internal(format!("a degree {n} generator has height below {n}")));
        }
    }
    Ok(GradedBetti { algebra: alg.kind.to_string(), degrees })
}

/// Applies an algebra element, given by its left multiplication columns, to
/// each `A`-component of a vector in `A^t`.
fn apply_blockwise<E: Clone>(f: &impl FieldOps<Elem = E>, cols: &[Col<E>], v: &[E], da: usize) -> Vec<E> {
    let mut out = vec![f.zero(); v.len()];
    for (base, chunk) in v.chunks(da).enumerate() {
        for (y, c) in chunk.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (i, a) in &cols[y] {
                let o = &mut out[base * da + i];
                *o = f.add(o, &f.mul(c, a));
            }
        }
    }
    out
}

/// `mu` (simple-root coordinates) lies in `ell X`.
pub fn in_ell_lattice<F: Field>(z: &ZetaData<F>, mu: &[i64]) -> bool {
    let ell = z.ell() as i64;
    z.datum.root_to_weight(mu).iter().all(|x| x.rem_euclid(ell) == 0)
}

/// Every `K_i` acts trivially on the weight `mu`.
pub fn torus_acts_trivially<F: Field>(z: &ZetaData<F>, mu: &[i64]) -> bool {
    let f = &z.field;
    (0..z.rank()).all(|i| f.zeta_pow(z.datum.inner(mu, &z.datum.simple_root(i))) == f.one())
}

/// `dim H^n(u(b), k)` for `n <= n_max`: generators of the resolution over
/// the nilpotent part whose weight is torus invariant.
pub fn borel_cohomology_dims<F: Field>(z: &std::sync::Arc<ZetaData<F>>, kind: Kind, n_max: usize) -> Result<Vec<usize>> {
    if !matches!(kind, Kind::UPlus | Kind::UMinus) {
        return Err(Error::Config(format!("{kind} is not a nilpotent part")));
    }
    let alg = KernelAlgebra::build(kind, 0, z.clone())?;
    let res = minimal_resolution(&alg, n_max, DEFAULT_RESOLUTION_BUDGET)?;
    Ok(res.degrees.iter().map(|ws| ws.iter().filter(|w| in_ell_lattice(z, w)).count()).collect())
}
