use crate::linalg::{rank, Matrix};
use crate::scalars::FieldOps;

/// Sparse matrix stored by columns: `cols[j]` lists `(i, a_ij)` with `i`
/// increasing and no zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat<E> {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, E)>>,
}

fn push_sorted<F: FieldOps>(f: &F, acc: &mut std::collections::BTreeMap<usize, F::Elem>, i: usize, c: F::Elem) {
    if f.is_zero(&c) {
        return;
    }
    let s = match acc.get(&i) {
        Some(x) => f.add(x, &c),
        None => c,
    };
    if f.is_zero(&s) {
        acc.remove(&i);
    } else {
        acc.insert(i, s);
    }
}

impl<E: Clone + PartialEq> SparseMat<E> {
    pub fn zero(rows: usize, ncols: usize) -> Self {
        SparseMat { rows, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity<F: FieldOps<Elem = E>>(f: &F, n: usize) -> Self {
        SparseMat { rows: n, cols: (0..n).map(|i| vec![(i, f.one())]).collect() }
    }

    pub fn diagonal<F: FieldOps<Elem = E>>(f: &F, d: Vec<E>) -> Self {
        let n = d.len();
        let cols = d.into_iter().enumerate().map(|(i, c)| if f.is_zero(&c) { vec![] } else { vec![(i, c)] }).collect();
        SparseMat { rows: n, cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Builds from `(row, col, value)` triples, summing duplicates.
    pub fn from_triples<F: FieldOps<Elem = E>>(f: &F, rows: usize, ncols: usize, t: impl IntoIterator<Item = (usize, usize, E)>) -> Self {
        let mut acc: Vec<std::collections::BTreeMap<usize, E>> = vec![Default::default(); ncols];
        for (i, j, c) in t {
            push_sorted(f, &mut acc[j], i, c);
        }
        SparseMat { rows, cols: acc.into_iter().map(|m| m.into_iter().collect()).collect() }
    }

    pub fn get<F: FieldOps<Elem = E>>(&self, f: &F, i: usize, j: usize) -> E {
        match self.cols[j].binary_search_by_key(&i, |p| p.0) {
            Ok(k) => self.cols[j][k].1.clone(),
            Err(_) => f.zero(),
        }
    }

    pub fn apply<F: FieldOps<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut out = vec![f.zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (i, c) in &self.cols[j] {
                out[*i] = f.add(&out[*i], &f.mul(c, x));
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_left<F: FieldOps<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        self.cols
            .iter()
            .map(|col| {
                let mut s = f.zero();
                for (i, c) in col {
                    if !f.is_zero(&v[*i]) {
                        s = f.add(&s, &f.mul(&v[*i], c));
                    }
                }
                s
            })
            .collect()
    }

    /// `self * other`.
    pub fn mul<F: FieldOps<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.ncols(), other.rows, "dimension mismatch in product");
        let cols = other
            .cols
            .iter()
            .map(|bcol| {
                let mut acc = std::collections::BTreeMap::new();
                for (k, b) in bcol {
                    for (i, a) in &self.cols[*k] {
                        push_sorted(f, &mut acc, *i, f.mul(a, b));
                    }
                }
                acc.into_iter().collect()
            })
            .collect();
        SparseMat { rows: self.rows, cols }
    }

    pub fn add<F: FieldOps<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.lin_comb(f, &f.one(), other, &f.one())
    }

    pub fn sub<F: FieldOps<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.lin_comb(f, &f.one(), other, &f.neg(&f.one()))
    }

    /// `a * self + b * other`.
    pub fn lin_comb<F: FieldOps<Elem = E>>(&self, f: &F, a: &E, other: &Self, b: &E) -> Self {
        assert_eq!((self.rows, self.ncols()), (other.rows, other.ncols()));
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(x, y)| {
                let mut acc = std::collections::BTreeMap::new();
                for (i, c) in x {
                    push_sorted(f, &mut acc, *i, f.mul(a, c));
                }
                for (i, c) in y {
                    push_sorted(f, &mut acc, *i, f.mul(b, c));
                }
                acc.into_iter().collect()
            })
            .collect();
        SparseMat { rows: self.rows, cols }
    }

    pub fn scale<F: FieldOps<Elem = E>>(&self, f: &F, a: &E) -> Self {
        if f.is_zero(a) {
            return Self::zero(self.rows, self.ncols());
        }
        let cols = self.cols.iter().map(|c| c.iter().map(|(i, x)| (*i, f.mul(a, x))).collect()).collect();
        SparseMat { rows: self.rows, cols }
    }

    /// Scales row `i` by `d[i]` (left multiplication by a diagonal matrix).
    pub fn scale_rows<F: FieldOps<Elem = E>>(&self, f: &F, d: &[E]) -> Self {
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|(i, x)| (*i, f.mul(&d[*i], x))).filter(|(_, x)| !f.is_zero(x)).collect())
            .collect();
        SparseMat { rows: self.rows, cols }
    }

    /// Scales column `j` by `d[j]`.
    pub fn scale_cols<F: FieldOps<Elem = E>>(&self, f: &F, d: &[E]) -> Self {
        let cols = self
            .cols
            .iter()
            .zip(d)
            .map(|(c, s)| c.iter().map(|(i, x)| (*i, f.mul(s, x))).filter(|(_, x)| !f.is_zero(x)).collect())
            .collect();
        SparseMat { rows: self.rows, cols }
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<Vec<(usize, E)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                cols[*i].push((j, c.clone()));
            }
        }
        SparseMat { rows: self.ncols(), cols }
    }

    /// Kronecker product, with index `i * b.rows + k`.
    pub fn kron<F: FieldOps<Elem = E>>(&self, f: &F, b: &Self) -> Self {
        let mut cols = Vec::with_capacity(self.ncols() * b.ncols());
        for acol in &self.cols {
            for bcol in &b.cols {
                let mut col = Vec::with_capacity(acol.len() * bcol.len());
                for (i, x) in acol {
                    for (k, y) in bcol {
                        col.push((i * b.rows + k, f.mul(x, y)));
                    }
                }
                cols.push(col);
            }
        }
        SparseMat { rows: self.rows * b.rows, cols }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, b: &Self) -> Self {
        let mut cols = self.cols.clone();
        for col in &b.cols {
            cols.push(col.iter().map(|(i, c)| (i + self.rows, c.clone())).collect());
        }
        SparseMat { rows: self.rows + b.rows, cols }
    }

    pub fn pow<F: FieldOps<Elem = E>>(&self, f: &F, n: u32) -> Self {
        let mut out = Self::identity(f, self.rows);
        for _ in 0..n {
            out = self.mul(f, &out);
        }
        out
    }

    pub fn to_dense<F: FieldOps<Elem = E>>(&self, f: &F) -> Matrix<E> {
        let mut m = Matrix::filled(self.rows, self.ncols(), f.zero());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                m.set(*i, j, c.clone());
            }
        }
        m
    }

    pub fn from_dense<F: FieldOps<Elem = E>>(f: &F, m: &Matrix<E>) -> Self {
        let cols = (0..m.cols())
            .map(|j| (0..m.rows()).filter(|&i| !f.is_zero(m.get(i, j))).map(|i| (i, m.get(i, j).clone())).collect())
            .collect();
        SparseMat { rows: m.rows(), cols }
    }

    pub fn rank<F: FieldOps<Elem = E>>(&self, f: &F) -> usize {
        if self.is_zero() {
            return 0;
        }
        rank(f, &self.to_dense(f))
    }

    /// Restriction to the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.rows];
        for (k, &i) in rows.iter().enumerate() {
            pos[i] = k;
        }
        let cols = cols
            .iter()
            .map(|&j| self.cols[j].iter().filter(|(i, _)| pos[*i] != usize::MAX).map(|(i, c)| (pos[*i], c.clone())).collect())
            .collect();
        SparseMat { rows: rows.len(), cols }
    }
}
