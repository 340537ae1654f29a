//! Dense exact linear algebra over any [`FieldOps`] implementation.
//!
//! Matrices act on column vectors. Row-reduction is the workhorse: rank,
//! kernels, solving and subspace operations all go through [`rref`].

use crate::scalars::FieldOps;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, e: E) -> Self {
        Matrix { rows, cols, data: vec![e; rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: E) {
        self.data[i * self.cols + j] = e;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [E] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn map<T: Clone>(&self, f: impl Fn(&E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

pub fn zeros<F: FieldOps>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, f.zero())
}

pub fn identity<F: FieldOps>(f: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
}

pub fn is_zero_matrix<F: FieldOps>(f: &F, m: &Matrix<F::Elem>) -> bool {
    m.data.iter().all(|x| f.is_zero(x))
}

pub fn mat_mul<F: FieldOps>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in product");
    let mut out = zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if f.is_zero(y) {
                    continue;
                }
                let idx = i * out.cols + j;
                out.data[idx] = f.add(&out.data[idx], &f.mul(x, y));
            }
        }
    }
    out
}

pub fn mat_add<F: FieldOps>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect() }
}

pub fn mat_sub<F: FieldOps>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| f.sub(x, y)).collect() }
}

pub fn mat_scale<F: FieldOps>(f: &F, c: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    a.map(|x| f.mul(c, x))
}

pub fn mat_vec<F: FieldOps>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            let mut acc = f.zero();
            for (x, y) in a.row(i).iter().zip(v) {
                if !f.is_zero(x) && !f.is_zero(y) {
                    acc = f.add(&acc, &f.mul(x, y));
                }
            }
            acc
        })
        .collect()
}

/// `v^T A` as a row vector.
pub fn vec_mat<F: FieldOps>(f: &F, v: &[F::Elem], a: &Matrix<F::Elem>) -> Vec<F::Elem> {
    assert_eq!(a.rows, v.len());
    let mut out = vec![f.zero(); a.cols];
    for (i, x) in v.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in a.row(i).iter().enumerate() {
            if !f.is_zero(y) {
                out[j] = f.add(&out[j], &f.mul(x, y));
            }
        }
    }
    out
}

pub fn vec_add<F: FieldOps>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn vec_scale<F: FieldOps>(f: &F, c: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|x| f.mul(c, x)).collect()
}

pub fn vec_is_zero<F: FieldOps>(f: &F, a: &[F::Elem]) -> bool {
    a.iter().all(|x| f.is_zero(x))
}

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref_in_place<F: FieldOps>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
        for j in c..cols {
            let idx = r * cols + j;
            if !f.is_zero(&m.data[idx]) {
                m.data[idx] = f.mul(&m.data[idx], &inv);
            }
        }
        let pivot_row: Vec<F::Elem> = m.row(r)[c..].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for (k, pv) in pivot_row.iter().enumerate() {
                if f.is_zero(pv) {
                    continue;
                }
                let idx = i * cols + c + k;
                m.data[idx] = f.sub(&m.data[idx], &f.mul(&factor, pv));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rref<F: FieldOps>(f: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut m = m.clone();
    let p = rref_in_place(f, &mut m);
    (m, p)
}

pub fn rank<F: FieldOps>(f: &F, m: &Matrix<F::Elem>) -> usize {
    rref(f, m).1.len()
}

/// A basis (as column vectors) of `{x : A x = 0}`.
pub fn nullspace<F: FieldOps>(f: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = rref(f, a);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); a.cols];
            v[fc] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, fc));
            }
            v
        })
        .collect()
}

/// A basis of `{y : y^T A = 0}`.
pub fn left_nullspace<F: FieldOps>(f: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    nullspace(f, &a.transpose())
}

/// Some solution of `A x = b`, or `None` when the system is inconsistent.
pub fn solve<F: FieldOps>(f: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let bm = Matrix::from_fn(b.len(), 1, |i, _| b[i].clone());
    solve_many(f, a, &bm).map(|x| x.column(0))
}

/// Some `X` with `A X = B`, or `None`.
pub fn solve_many<F: FieldOps>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert_eq!(a.rows, b.rows);
    let aug = a.hstack(b);
    let (r, pivots) = rref(f, &aug);
    if pivots.iter().any(|&p| p >= a.cols) {
        return None;
    }
    let mut x = zeros(f, a.cols, b.cols);
    for (i, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, r.get(i, a.cols + j).clone());
        }
    }
    Some(x)
}

pub fn inverse<F: FieldOps>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if a.rows != a.cols {
        return None;
    }
    let x = solve_many(f, a, &identity(f, a.rows))?;
    if rank(f, a) == a.rows {
        Some(x)
    } else {
        None
    }
}

/// Row-reduced basis of the span of `vectors`.
pub fn span_basis<F: FieldOps>(f: &F, dim: usize, vectors: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(dim, vectors.to_vec());
    let (r, p) = rref(f, &m);
    (0..p.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Intersection of two subspaces given by spanning sets.
pub fn intersect<F: FieldOps>(
    f: &F,
    dim: usize,
    a: &[Vec<F::Elem>],
    b: &[Vec<F::Elem>],
) -> Vec<Vec<F::Elem>> {
    let a = span_basis(f, dim, a);
    let b = span_basis(f, dim, b);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve sum x_i a_i = sum y_j b_j.
    let mut cols = a.clone();
    cols.extend(b.iter().map(|v| v.iter().map(|x| f.neg(x)).collect()));
    let m = Matrix::from_rows(dim, cols).transpose();
    let ker = nullspace(f, &m);
    let vs: Vec<Vec<F::Elem>> = ker
        .iter()
        .map(|k| {
            let mut v = vec![f.zero(); dim];
            for (i, ai) in a.iter().enumerate() {
                if !f.is_zero(&k[i]) {
                    v = vec_add(f, &v, &vec_scale(f, &k[i], ai));
                }
            }
            v
        })
        .collect();
    span_basis(f, dim, &vs)
}

/// Incremental echelon basis, used for spans built one vector at a time.
#[derive(Clone, Debug)]
pub struct EchelonBasis<E> {
    dim: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> EchelonBasis<E> {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The residue of `v` after reduction against the basis.
    pub fn reduce<F: FieldOps<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        v
    }

    pub fn contains<F: FieldOps<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        vec_is_zero(f, &self.reduce(f, v))
    }

    /// Adds `v`; returns `true` if the span grew.
    pub fn insert<F: FieldOps<Elem = E>>(&mut self, f: &F, v: &[E]) -> bool {
        let r = self.reduce(f, v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]).unwrap();
        let r: Vec<E> = r.iter().map(|x| f.mul(x, &inv)).collect();
        // Keep the basis fully reduced at pivot columns.
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    /// Coordinates of `v` in terms of the stored rows (requires membership).
    pub fn coordinates<F: FieldOps<Elem = E>>(&self, f: &F, v: &[E]) -> Option<Vec<E>> {
        let coords: Vec<E> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = vec![f.zero(); self.dim];
        for (c, row) in coords.iter().zip(&self.rows) {
            if !f.is_zero(c) {
                w = vec_add(f, &w, &vec_scale(f, c, row));
            }
        }
        if w.iter().zip(v).all(|(a, b)| a == b) {
            Some(coords)
        } else {
            None
        }
    }
}
