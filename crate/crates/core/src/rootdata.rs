//! Root systems of small rank, reduced expressions of the longest Weyl group
//! element, the induced convex orderings of the positive roots, and linear
//! functionals separating an initial segment of such an ordering.
//!
//! Roots are integer vectors in the basis of simple roots. Vectors of the
//! ambient Euclidean space are rational vectors in the same basis. Weights are
//! kept in the basis of fundamental weights. Words in the simple reflections
//! are 0-based internally; [`parse_word`] and [`format_word`] convert to and
//! from the 1-based text form used on the command line.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalars::{DenominatorSet, Q};

pub type Root = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootType {
    A1,
    A2,
    B2,
    G2,
    A3,
}

impl RootType {
    pub fn all() -> [RootType; 5] {
        [RootType::A1, RootType::A2, RootType::B2, RootType::G2, RootType::A3]
    }

    pub fn label(&self) -> &'static str {
        match self {
            RootType::A1 => "A1",
            RootType::A2 => "A2",
            RootType::B2 => "B2",
            RootType::G2 => "G2",
            RootType::A3 => "A3",
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            RootType::A1 => 1,
            RootType::A2 | RootType::B2 | RootType::G2 => 2,
            RootType::A3 => 3,
        }
    }

    /// Whether structure-constant jobs for this type count as long-running.
    pub fn is_long_running(&self) -> bool {
        matches!(self, RootType::G2)
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A1" => Ok(RootType::A1),
            "A2" => Ok(RootType::A2),
            "B2" => Ok(RootType::B2),
            "G2" => Ok(RootType::G2),
            "A3" => Ok(RootType::A3),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub type_label: RootType,
    pub rank: usize,
    /// `pairing[i][j] = (alpha_i, alpha_j)`, short roots of squared length 2.
    pub pairing: Vec<Vec<i64>>,
    /// `cartan[i][j] = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)`.
    pub cartan: Vec<Vec<i64>>,
    /// `d[i] = (alpha_i, alpha_i) / 2`.
    pub d: Vec<i64>,
    /// Sorted by height, then lexicographically.
    pub positive_roots: Vec<Root>,
    /// Fundamental weights in simple-root coordinates.
    pub fundamental_weights: Vec<Vec<Q>>,
    /// Half-sum of positive roots, simple-root coordinates.
    pub rho: Vec<Q>,
    pub highest_root: Root,
    pub coxeter_number: u32,
}

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

impl RootDatum {
    pub fn new(t: RootType) -> Self {
        let pairing: Vec<Vec<i64>> = match t {
            RootType::A1 => vec![vec![2]],
            RootType::A2 => vec![vec![2, -1], vec![-1, 2]],
            // alpha_1 long, alpha_2 short.
            RootType::B2 => vec![vec![4, -2], vec![-2, 2]],
            // alpha_1 short, alpha_2 long.
            RootType::G2 => vec![vec![2, -3], vec![-3, 6]],
            RootType::A3 => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        };
        let rank = pairing.len();
        let d: Vec<i64> = (0..rank).map(|i| pairing[i][i] / 2).collect();
        let cartan: Vec<Vec<i64>> =
            (0..rank).map(|i| (0..rank).map(|j| 2 * pairing[i][j] / pairing[j][j]).collect()).collect();
        let coxeter_number = match t {
            RootType::A1 => 2,
            RootType::A2 => 3,
            RootType::B2 | RootType::A3 => 4,
            RootType::G2 => 6,
        };
        let mut datum = RootDatum {
            type_label: t,
            rank,
            pairing,
            cartan,
            d,
            positive_roots: Vec::new(),
            fundamental_weights: Vec::new(),
            rho: Vec::new(),
            highest_root: Vec::new(),
            coxeter_number,
        };
        datum.positive_roots = datum.reflection_closure();
        datum.highest_root = datum.positive_roots.last().unwrap().clone();
        datum.rho = (0..rank)
            .map(|i| datum.positive_roots.iter().map(|r| qi(r[i])).sum::<Q>() / qi(2))
            .collect();
        datum.fundamental_weights = datum.compute_fundamental_weights();
        datum
    }

    /// Positive roots as the positive part of the orbit of the simple roots.
    fn reflection_closure(&self) -> Vec<Root> {
        let mut seen: BTreeSet<Root> = (0..self.rank).map(|i| self.simple_root(i)).collect();
        let mut frontier: Vec<Root> = seen.iter().cloned().collect();
        while let Some(r) = frontier.pop() {
            for j in 0..self.rank {
                let s = self.reflect_root(j, &r);
                if seen.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
        let mut pos: Vec<Root> = seen.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
        pos.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
        pos
    }

    fn compute_fundamental_weights(&self) -> Vec<Vec<Q>> {
        // varpi_i = sum_k c_k alpha_k with <varpi_i, alpha_j^vee> = delta_ij,
        // i.e. c^T A = e_i where A is the Cartan matrix.
        let n = self.rank;
        let a: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| qi(self.cartan[i][j])).collect()).collect();
        (0..n)
            .map(|i| {
                // Solve sum_k c_k a[k][j] = delta_ij by Gaussian elimination on A^T.
                let mut m: Vec<Vec<Q>> = (0..n)
                    .map(|j| {
                        let mut row: Vec<Q> = (0..n).map(|k| a[k][j].clone()).collect();
                        row.push(if i == j { qi(1) } else { qi(0) });
                        row
                    })
                    .collect();
                for c in 0..n {
                    let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("Cartan matrix is invertible");
                    m.swap(c, p);
                    let inv = m[c][c].recip();
                    for x in m[c].iter_mut() {
                        *x *= &inv;
                    }
                    for r in 0..n {
                        if r != c && !m[r][c].is_zero() {
                            let f = m[r][c].clone();
                            let pivot = m[c].clone();
                            for (x, y) in m[r].iter_mut().zip(&pivot) {
                                *x -= &f * y;
                            }
                        }
                    }
                }
                m.iter().map(|row| row[n].clone()).collect()
            })
            .collect()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut r = vec![0; self.rank];
        r[i] = 1;
        r
    }

    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|p| p.as_slice() == r)
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        let neg: Root = r.iter().map(|x| -x).collect();
        self.root_index(r).is_some() || self.root_index(&neg).is_some()
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] * self.pairing[i][j] * b[j];
            }
        }
        s
    }

    pub fn inner_q(&self, a: &[Q], b: &[Q]) -> Q {
        let mut s = Q::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += &a[i] * qi(self.pairing[i][j]) * &b[j];
            }
        }
        s
    }

    /// `(v, r)` for a rational vector and an integer root.
    pub fn inner_qr(&self, v: &[Q], r: &[i64]) -> Q {
        let rq: Vec<Q> = r.iter().map(|&x| qi(x)).collect();
        self.inner_q(v, &rq)
    }

    /// Squared length `(r, r)`.
    pub fn norm2(&self, r: &[i64]) -> i64 {
        self.inner(r, r)
    }

    /// `d_r = (r, r) / 2`.
    pub fn d_root(&self, r: &[i64]) -> i64 {
        self.norm2(r) / 2
    }

    pub fn is_long(&self, r: &[i64]) -> bool {
        let max = (0..self.rank).map(|i| self.pairing[i][i]).max().unwrap();
        self.norm2(r) == max
    }

    pub fn reflect_root(&self, j: usize, v: &[i64]) -> Root {
        let c = 2 * self.inner(v, &self.simple_root(j)) / self.pairing[j][j];
        let mut out = v.to_vec();
        out[j] -= c;
        out
    }

    pub fn reflect_q(&self, j: usize, v: &[Q]) -> Vec<Q> {
        let aj = self.simple_root(j);
        let c = qi(2) * self.inner_qr(v, &aj) / qi(self.pairing[j][j]);
        let mut out = v.to_vec();
        out[j] -= c;
        out
    }

    /// Reflection in an arbitrary root `b`: `v - <v, b^vee> b`.
    pub fn reflect_in(&self, b: &[i64], v: &[i64]) -> Root {
        let c = 2 * self.inner(v, b) / self.norm2(b);
        v.iter().zip(b).map(|(x, y)| x - c * y).collect()
    }

    /// `s_{w_1} ... s_{w_k}(v)`: the last letter acts first.
    pub fn weyl_apply(&self, word: &[usize], v: &[i64]) -> Root {
        word.iter().rev().fold(v.to_vec(), |acc, &j| self.reflect_root(j, &acc))
    }

    pub fn weyl_apply_q(&self, word: &[usize], v: &[Q]) -> Vec<Q> {
        word.iter().rev().fold(v.to_vec(), |acc, &j| self.reflect_q(j, &acc))
    }

    /// Fundamental-weight coordinates of an integral vector in root coordinates.
    pub fn root_to_weight(&self, r: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|j| (0..self.rank).map(|i| r[i] * self.cartan[i][j]).sum()).collect()
    }

    /// `(lambda, r)` for a weight in fundamental coordinates.
    pub fn pair_weight_root(&self, lambda: &[i64], r: &[i64]) -> i64 {
        (0..self.rank).map(|j| r[j] * lambda[j] * self.d[j]).sum()
    }

    /// `<lambda, r^vee>` for a weight in fundamental coordinates.
    pub fn coroot_pairing(&self, lambda: &[i64], r: &[i64]) -> i64 {
        2 * self.pair_weight_root(lambda, r) / self.norm2(r)
    }

    /// Simple-root coordinates of a weight given in fundamental coordinates.
    pub fn weight_to_root_coords(&self, lambda: &[i64]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.rank];
        for (i, &c) in lambda.iter().enumerate() {
            for (k, x) in self.fundamental_weights[i].iter().enumerate() {
                out[k] += qi(c) * x;
            }
        }
        out
    }

    /// `rho` in fundamental coordinates: all ones.
    pub fn rho_weight(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    /// The allowed denominators of structure constants for this type.
    pub fn denominator_set(&self) -> DenominatorSet {
        match self.type_label {
            RootType::A1 | RootType::A2 | RootType::A3 => DenominatorSet::Trivial,
            RootType::B2 => DenominatorSet::Two,
            RootType::G2 => DenominatorSet::TwoThree,
        }
    }

    /// Length of the longest element, i.e. the number of positive roots.
    pub fn w0_length(&self) -> usize {
        self.positive_roots.len()
    }

    /// Every reduced expression of the longest element, lexicographically.
    pub fn all_reduced_w0_words(&self) -> Vec<Vec<usize>> {
        let n = self.w0_length();
        let mut out = Vec::new();
        let mut word = Vec::new();
        self.extend_reduced(&mut word, n, &mut out);
        out
    }

    fn extend_reduced(&self, word: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if word.len() == n {
            out.push(word.clone());
            return;
        }
        for i in 0..self.rank {
            // l(w s_i) > l(w) iff w(alpha_i) > 0.
            let img = self.weyl_apply(word, &self.simple_root(i));
            if img.iter().all(|&c| c >= 0) {
                word.push(i);
                self.extend_reduced(word, n, out);
                word.pop();
            }
        }
    }

    /// The lexicographically first reduced expression of `w0`.
    pub fn default_w0_word(&self) -> Vec<usize> {
        self.all_reduced_w0_words().into_iter().next().unwrap()
    }

    pub fn check_invariants(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Inconsistent(m));
        for r in &self.positive_roots {
            let n = self.norm2(r);
            let min = (0..self.rank).map(|i| self.pairing[i][i]).min().unwrap();
            if n == min && n != 2 {
                return fail(format!("short root {r:?} has squared length {n}"));
            }
        }
        for i in 0..self.rank {
            for j in 0..self.rank {
                if self.cartan[i][j] * self.pairing[j][j] != 2 * self.pairing[i][j] {
                    return fail(format!("Cartan entry ({i},{j}) inconsistent"));
                }
            }
        }
        let expected = match self.type_label {
            RootType::A1 => 1,
            RootType::A2 => 3,
            RootType::B2 => 4,
            RootType::G2 | RootType::A3 => 6,
        };
        if self.positive_roots.len() != expected {
            return fail(format!("{} positive roots, expected {expected}", self.positive_roots.len()));
        }
        Ok(())
    }
}

pub fn height(r: &[i64]) -> i64 {
    r.iter().sum()
}

/// Human-readable root, e.g. `a1+2a2`.
pub fn format_root(r: &[i64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in r.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else if parts.is_empty() { "" } else { "+" };
        let mag = c.abs();
        if mag == 1 {
            parts.push(format!("{sign}a{}", i + 1));
        } else {
            parts.push(format!("{sign}{mag}a{}", i + 1));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.concat()
    }
}

/// Parses `1,2,1` into the 0-based word `[0, 1, 0]`.
pub fn parse_word(s: &str, rank: usize) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let i: usize = t.parse().map_err(|_| Error::InvalidWord(format!("bad letter `{t}`")))?;
            if i == 0 || i > rank {
                return Err(Error::InvalidWord(format!("letter {i} out of range 1..={rank}")));
            }
            Ok(i - 1)
        })
        .collect()
}

pub fn format_word(w: &[usize]) -> String {
    w.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "type {}  rank {}  N {}  h {}", self.type_label, self.rank, self.w0_length(), self.coxeter_number)?;
        writeln!(f, "cartan")?;
        for row in &self.cartan {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "  {}", cells.join(""))?;
        }
        writeln!(f, "positive roots")?;
        writeln!(f, "  {:<4} {:<10} {:>6} {:>6}", "#", "root", "(r,r)", "height")?;
        for (i, r) in self.positive_roots.iter().enumerate() {
            writeln!(f, "  {:<4} {:<10} {:>6} {:>6}", i + 1, format_root(r), self.norm2(r), height(r))?;
        }
        write!(f, "highest root {}", format_root(&self.highest_root))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexOrder {
    pub w0_word: Vec<usize>,
    pub gammas: Vec<Root>,
    /// `prefix_words[i]` is `s_{beta_1} ... s_{beta_{i}}` (0-based: the first `i` letters).
    pub prefix_words: Vec<Vec<usize>>,
}

impl ConvexOrder {
    pub fn new(datum: &RootDatum, word: &[usize]) -> Result<Self> {
        let n = datum.w0_length();
        if word.len() != n {
            return Err(Error::InvalidWord(format!(
                "word {} has length {}, expected {n}",
                format_word(word),
                word.len()
            )));
        }
        if let Some(&bad) = word.iter().find(|&&i| i >= datum.rank) {
            return Err(Error::InvalidWord(format!("letter {} out of range", bad + 1)));
        }
        let mut gammas = Vec::with_capacity(n);
        let mut prefix_words = Vec::with_capacity(n);
        for i in 0..n {
            let w = word[..i].to_vec();
            let g = datum.weyl_apply(&w, &datum.simple_root(word[i]));
            if g.iter().any(|&c| c < 0) {
                return Err(Error::InvalidWord(format!("{} is not reduced", format_word(word))));
            }
            gammas.push(g);
            prefix_words.push(w);
        }
        let set: BTreeSet<&Root> = gammas.iter().collect();
        if set.len() != n || gammas.iter().any(|g| datum.root_index(g).is_none()) {
            return Err(Error::InvalidWord(format!("{} is not an expression of w0", format_word(word))));
        }
        Ok(ConvexOrder { w0_word: word.to_vec(), gammas, prefix_words })
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// Position of a positive root in the ordering.
    pub fn position(&self, r: &[i64]) -> Option<usize> {
        self.gammas.iter().position(|g| g.as_slice() == r)
    }

    /// `gamma_i + gamma_j = gamma_l` with `i < j` forces `i < l < j`.
    pub fn is_convex(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                let s: Root = self.gammas[i].iter().zip(&self.gammas[j]).map(|(a, b)| a + b).collect();
                if let Some(l) = self.position(&s) {
                    if !(i < l && l < j) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderFunctional {
    pub m: usize,
    /// Simple-root coordinates.
    pub vector: Vec<Q>,
    /// `{gamma in Phi : (v, gamma) > 0}`.
    pub positive_system: BTreeSet<Root>,
}

impl OrderFunctional {
    pub fn value(&self, datum: &RootDatum, r: &[i64]) -> Q {
        datum.inner_qr(&self.vector, r)
    }

    /// `x <= y` iff `(v, x) <= (v, y)`, ties broken lexicographically.
    pub fn compare(&self, datum: &RootDatum, x: &[i64], y: &[i64]) -> Ordering {
        self.value(datum, x).cmp(&self.value(datum, y)).then_with(|| x.cmp(y))
    }
}

fn all_roots(datum: &RootDatum) -> Vec<Root> {
    let mut v = datum.positive_roots.clone();
    v.extend(datum.positive_roots.iter().map(|r| r.iter().map(|x| -x).collect::<Root>()));
    v
}

/// Checks that `(v, gamma_i) > 0` exactly for `i < m`, `< 0` after, and that
/// `v` vanishes on no root.
pub fn check_sign_pattern(datum: &RootDatum, order: &ConvexOrder, m: usize, v: &[Q]) -> bool {
    order.gammas.iter().enumerate().all(|(i, g)| {
        let x = datum.inner_qr(v, g);
        if i < m {
            x.is_positive()
        } else {
            x.is_negative()
        }
    }) && all_roots(datum).iter().all(|r| !datum.inner_qr(v, r).is_zero())
}

/// Positive systems `P_0 = Phi^-`, `P_{k+1} = s_{gamma_{k+1}}(P_k)` for
/// `k < m`; returns `P_m`.
pub fn flipped_positive_system(datum: &RootDatum, order: &ConvexOrder, m: usize) -> BTreeSet<Root> {
    let mut p: BTreeSet<Root> =
        datum.positive_roots.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    for g in &order.gammas[..m] {
        p = p.iter().map(|r| datum.reflect_in(g, r)).collect();
    }
    p
}

/// A functional positive on `gamma_1..gamma_m` and negative on the remaining
/// positive roots, built as the half-sum of the flipped positive system.
pub fn order_functional(datum: &RootDatum, order: &ConvexOrder, m: usize) -> Result<OrderFunctional> {
    let n = order.len();
    if m > n {
        return Err(Error::Config(format!("m = {m} exceeds N = {n}")));
    }
    let p = flipped_positive_system(datum, order, m);
    let mut v = vec![Q::zero(); datum.rank];
    for r in &p {
        for (x, &c) in v.iter_mut().zip(r) {
            *x += qi(c);
        }
    }
    for x in v.iter_mut() {
        *x /= qi(2);
    }
    if !check_sign_pattern(datum, order, m, &v) {
        return Err(Error::Internal(format!("order functional for m = {m} fails its sign pattern")));
    }
    let positive_system: BTreeSet<Root> =
        all_roots(datum).into_iter().filter(|r| datum.inner_qr(&v, r).is_positive()).collect();
    if positive_system != p {
        return Err(Error::Internal("positive system of the functional differs from the flip".into()));
    }
    Ok(OrderFunctional { m, vector: v, positive_system })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_basics() {
        let d = RootDatum::new(RootType::A2);
        assert_eq!(d.positive_roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(d.highest_root, vec![1, 1]);
        assert_eq!(d.reflect_root(0, &[0, 1]), vec![1, 1]);
        assert_eq!(d.reflect_root(0, &[1, 0]), vec![-1, 0]);
        assert_eq!(d.rho, vec![qi(1), qi(1)]);
    }

    #[test]
    fn fundamental_weights_are_dual() {
        for t in RootType::all() {
            let d = RootDatum::new(t);
            for i in 0..d.rank {
                for j in 0..d.rank {
                    let aj = d.simple_root(j);
                    let c = qi(2) * d.inner_qr(&d.fundamental_weights[i], &aj) / qi(d.norm2(&aj));
                    assert_eq!(c, qi((i == j) as i64));
                }
            }
        }
    }

    #[test]
    fn word_text() {
        assert_eq!(parse_word("1,2,1", 2).unwrap(), vec![0, 1, 0]);
        assert!(parse_word("1,3", 2).is_err());
        assert_eq!(format_word(&[0, 1, 0]), "1,2,1");
    }
}
