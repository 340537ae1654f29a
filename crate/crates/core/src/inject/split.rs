use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::kernelalg::{AlgGen, KernelAlgebra, RankOneKernel};
use crate::linalg::{inverse, EchelonBasis, Matrix};
use crate::qmodules::{ModContext, SparseMat, WeightedModule};
use crate::scalars::{Field, FieldOps};

/// Default cap on `dim A * dim M * t` for the literal split test.
pub const DEFAULT_BUDGET: usize = 200_000;

/// The left regular representation of a kernel algebra on its own basis,
/// given by its generators.
#[derive(Clone, Debug)]
pub struct RegularRep<E> {
    pub label: String,
    pub dim: usize,
    pub gens: Vec<(AlgGen, SparseMat<E>, E)>,
    pub one: Vec<E>,
    pub local: bool,
}

impl<E: Clone + PartialEq> RegularRep<E> {
    pub fn from_kernel<F: Field<Elem = E>>(a: &KernelAlgebra<F>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in a.generators() {
            let cols = a.gen_matrix(g)?;
            gens.push((g, SparseMat { rows: a.dim(), cols: (*cols).clone() }, a.counit(g)));
        }
        Ok(RegularRep { label: a.kind.to_string(), dim: a.dim(), gens, one: a.to_dense(&a.one()), local: a.kind.is_local() })
    }

    pub fn from_rank_one<F: Field<Elem = E>>(a: &RankOneKernel<F>) -> Self {
        let f = &a.field;
        let gens = a
            .generators()
            .into_iter()
            .map(|g| (g, SparseMat { rows: a.dim(), cols: a.gen_matrix(g) }, a.counit(g)))
            .collect();
        let mut one = vec![f.zero(); a.dim()];
        for (m, c) in a.one() {
            one[a.index[&m]] = c;
        }
        RegularRep { label: format!("{}:r{}", a.kind, a.r), dim: a.dim(), gens, one, local: a.kind.is_local() }
    }
}

fn unit<F: FieldOps>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

/// The `A`-submodule generated by `seeds`.
fn generated<F: FieldOps>(f: &F, acts: &[SparseMat<F::Elem>], dim: usize, seeds: &[Vec<F::Elem>]) -> EchelonBasis<F::Elem> {
    let mut basis = EchelonBasis::new(dim);
    let mut queue: Vec<Vec<F::Elem>> = Vec::new();
    for s in seeds {
        if basis.insert(f, s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for x in acts {
            let w = x.apply(f, &v);
            if basis.insert(f, &w) {
                queue.push(w);
            }
        }
    }
    basis
}

/// Generators of `M` as an `A`-module: a complement of `rad(A) M` for local
/// algebras, otherwise a greedy spanning set pruned to an irredundant one.
pub fn cover_generators<F: FieldOps>(f: &F, alg: &RegularRep<F::Elem>, acts: &[SparseMat<F::Elem>], dim: usize) -> Vec<Vec<F::Elem>> {
    if alg.local {
        let mut rad = EchelonBasis::new(dim);
        for ((_, _, eps), x) in alg.gens.iter().zip(acts) {
            for j in 0..dim {
                let mut v = x.apply(f, &unit(f, dim, j));
                v[j] = f.sub(&v[j], eps);
                rad.insert(f, &v);
            }
        }
        let mut out = Vec::new();
        for j in 0..dim {
            let e = unit(f, dim, j);
            if rad.insert(f, &e) {
                out.push(e);
            }
        }
        return out;
    }
    let mut chosen: Vec<Vec<F::Elem>> = Vec::new();
    let mut span = EchelonBasis::new(dim);
    for j in 0..dim {
        let e = unit(f, dim, j);
        if !span.contains(f, &e) {
            chosen.push(e);
            span = generated(f, acts, dim, &chosen);
        }
    }
    let mut i = 0;
    while i < chosen.len() {
        let rest: Vec<Vec<F::Elem>> = chosen.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, v)| v.clone()).collect();
        if generated(f, acts, dim, &rest).len() == dim {
            chosen = rest;
        } else {
            i += 1;
        }
    }
    chosen
}

/// The `A`-linear map `A -> M` sending `1` to `m`, as a `dim M x dim A`
/// matrix.
fn orbit_map<F: FieldOps>(f: &F, alg: &RegularRep<F::Elem>, acts: &[SparseMat<F::Elem>], m: &[F::Elem]) -> Result<Matrix<F::Elem>> {
    let mut basis = EchelonBasis::new(alg.dim);
    let mut pairs: Vec<(Vec<F::Elem>, Vec<F::Elem>)> = Vec::new();
    let mut queue = vec![(alg.one.clone(), m.to_vec())];
    basis.insert(f, &alg.one);
    pairs.push(queue[0].clone());
    while let Some((a, v)) = queue.pop() {
        for ((_, l, _), x) in alg.gens.iter().zip(acts) {
            let a2 = l.apply(f, &a);
            if basis.insert(f, &a2) {
                let v2 = x.apply(f, &v);
                pairs.push((a2.clone(), v2.clone()));
                queue.push((a2, v2));
            }
        }
    }
    if pairs.len() != alg.dim {
        return Err(Error::Internal(format!("generators of {} do not generate it", alg.label)));
    }
    let amat = Matrix::from_fn(alg.dim, alg.dim, |i, j| pairs[j].0[i].clone());
    let img = Matrix::from_fn(m.len(), alg.dim, |i, j| pairs[j].1[i].clone());
    let inv = inverse(f, &amat).ok_or_else(|| Error::Internal("orbit vectors are dependent".into()))?;
    Ok(crate::linalg::mat_mul(f, &img, &inv))
}

type SparseRow<E> = Vec<(usize, E)>;

/// Incremental sparse elimination for `A x = b`.
struct SparseSystem<F: FieldOps> {
    pivots: HashMap<usize, (SparseRow<F::Elem>, F::Elem)>,
    consistent: bool,
}

impl<F: FieldOps> SparseSystem<F> {
    fn new() -> Self {
        SparseSystem { pivots: HashMap::new(), consistent: true }
    }

    fn add(&mut self, f: &F, mut row: SparseRow<F::Elem>, mut rhs: F::Elem) {
        row.retain(|(_, c)| !f.is_zero(c));
        row.sort_by_key(|p| p.0);
        loop {
            let Some(&(lead, ref c)) = row.first() else {
                if !f.is_zero(&rhs) {
                    self.consistent = false;
                }
                return;
            };
            match self.pivots.get(&lead) {
                None => {
                    let inv = f.inv(c).unwrap();
                    let row = row.into_iter().map(|(j, x)| (j, f.mul(&x, &inv))).collect();
                    self.pivots.insert(lead, (row, f.mul(&rhs, &inv)));
                    return;
                }
                Some((prow, prhs)) => {
                    let c = c.clone();
                    row = sub_rows(f, &row, &c, prow);
                    rhs = f.sub(&rhs, &f.mul(&c, prhs));
                }
            }
        }
    }
}

fn sub_rows<F: FieldOps>(f: &F, a: &[(usize, F::Elem)], c: &F::Elem, b: &[(usize, F::Elem)]) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.neg(&f.mul(c, &b[j].1))));
            j += 1;
        } else {
            let x = f.sub(&a[i].1, &f.mul(c, &b[j].1));
            if !f.is_zero(&x) {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Whether `M` is projective over `A`: builds a cover `A^t -> M` and
/// solves for an `A`-linear section, imposing linearity on the algebra
/// generators only.
pub fn projective_split_test<F: Field>(
    ctx: &ModContext<F>,
    alg: &RegularRep<F::Elem>,
    m: &WeightedModule<F>,
    budget: usize,
) -> Result<bool> {
    let f = ctx.field();
    let acts: Vec<SparseMat<F::Elem>> = alg.gens.iter().map(|(g, _, _)| m.gen_action(ctx, *g)).collect::<Result<_>>()?;
    let dm = m.dim;
    if dm == 0 {
        return Ok(true);
    }
    let gens = cover_generators(f, alg, &acts, dm);
    let t = gens.len();
    let da = alg.dim;
    if da * dm * t > budget {
        return Err(Error::Budget(format!("split test over {} needs {} unknowns", alg.label, da * dm * t)));
    }
    let mut pmat = Vec::with_capacity(t);
    for g in &gens {
        pmat.push(orbit_map(f, alg, &acts, g)?);
    }
    // S has t * dim A rows and dim M columns; unknown (r, c) is r * dm + c.
    let var = |r: usize, c: usize| r * dm + c;
    let mut sys = SparseSystem::<F>::new();
    for (gi, (_, l, _)) in alg.gens.iter().enumerate() {
        let lrows = rows_of(l);
        let x = &acts[gi];
        for s in 0..t {
            for r in 0..da {
                for c in 0..dm {
                    let mut row = Vec::new();
                    for (r2, a) in &lrows[r] {
                        row.push((var(s * da + r2, c), a.clone()));
                    }
                    for (c2, a) in &x.cols[c] {
                        row.push((var(s * da + r, *c2), f.neg(a)));
                    }
                    merge_duplicates(f, &mut row);
                    sys.add(f, row, f.zero());
                }
            }
        }
    }
    for i in 0..dm {
        for c in 0..dm {
            let mut row = Vec::new();
            for (s, p) in pmat.iter().enumerate() {
                for r in 0..da {
                    let a = p.get(i, r);
                    if !f.is_zero(a) {
                        row.push((var(s * da + r, c), a.clone()));
                    }
                }
            }
            sys.add(f, row, if i == c { f.one() } else { f.zero() });
            if !sys.consistent {
                return Ok(false);
            }
        }
    }
    Ok(sys.consistent)
}

fn rows_of<E: Clone>(x: &SparseMat<E>) -> Vec<Vec<(usize, E)>> {
    let mut rows = vec![Vec::new(); x.rows];
    for (j, col) in x.cols.iter().enumerate() {
        for (i, c) in col {
            rows[*i].push((j, c.clone()));
        }
    }
    rows
}

fn merge_duplicates<F: FieldOps>(f: &F, row: &mut SparseRow<F::Elem>) {
    row.sort_by_key(|p| p.0);
    let mut out: SparseRow<F::Elem> = Vec::with_capacity(row.len());
    for (j, c) in row.drain(..) {
        match out.last_mut() {
            Some((k, d)) if *k == j => *d = f.add(d, &c),
            _ => out.push((j, c)),
        }
    }
    out.retain(|(_, c)| !f.is_zero(c));
    *row = out;
}
