use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::laurent::{poly_divrem, q_int_const, rational_to_string, Laurent, Q};
use super::localized::LocalizedScalar;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Arithmetic in a field. Elements are plain values; the field value carries
/// whatever context (modulus, cyclotomic polynomial) the operations need.
pub trait FieldOps: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn elem_to_string(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }

    fn pow(&self, a: &Self::Elem, n: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }
}

/// A field containing a distinguished primitive `ell`-th root of unity `zeta`.
pub trait Field: FieldOps {
    fn ell(&self) -> u32;
    fn characteristic(&self) -> u64;
    /// Short label, e.g. `cyclo(3)` or `F(7^1)`.
    fn label(&self) -> String;
    fn from_rational(&self, q: &Q) -> Option<Self::Elem>;
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::Elem;

    fn zeta_pow(&self, e: i64) -> Self::Elem;

    fn zeta(&self) -> Self::Elem {
        self.zeta_pow(1)
    }

    /// The specialization `q -> zeta` on Laurent polynomials.
    fn specialize(&self, l: &Laurent) -> Result<Self::Elem> {
        let mut acc = self.zero();
        for (i, c) in l.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = self.from_rational(c).ok_or_else(|| {
                Error::VanishingDenominator(format!("coefficient {c} of {l} in {}", self.label()))
            })?;
            acc = self.add(&acc, &self.mul(&c, &self.zeta_pow(l.low() + i as i64)));
        }
        Ok(acc)
    }

    fn specialize_ratfunc(&self, r: &RatFunc) -> Result<Self::Elem> {
        let d = self.specialize(r.denominator())?;
        let inv = self
            .inv(&d)
            .ok_or_else(|| Error::VanishingDenominator(format!("{r} at zeta in {}", self.label())))?;
        Ok(self.mul(&self.specialize(r.numerator())?, &inv))
    }

    fn specialize_localized(&self, x: &LocalizedScalar) -> Result<Self::Elem> {
        let d = self.specialize(&x.denominator())?;
        let inv = self
            .inv(&d)
            .ok_or_else(|| Error::VanishingDenominator(format!("{x} at zeta in {}", self.label())))?;
        Ok(self.mul(&self.specialize(x.numerator())?, &inv))
    }

    /// `[n]_{zeta^d}`.
    fn q_integer(&self, n: i64, d: i64) -> Self::Elem {
        self.specialize(&super::laurent::q_integer(n, d)).expect("integral")
    }
}

/// The field `Q(q)` used by the generic computations.
#[derive(Clone, Debug, Default)]
pub struct RatFuncField;

impl FieldOps for RatFuncField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::zero()
    }
    fn one(&self) -> RatFunc {
        RatFunc::one()
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.add(b)
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        a.neg()
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.mul(b)
    }
    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        a.inv()
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> RatFunc {
        RatFunc::from_laurent(Laurent::from_int(n))
    }
    fn elem_to_string(&self, a: &RatFunc) -> String {
        a.to_string()
    }
}

/// Cyclotomic field `Q(zeta_ell) = Q[x]/Phi_ell(x)`, `zeta = x`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    ell: u32,
    /// `Phi_ell`, ascending coefficients, monic.
    phi: Vec<Q>,
    zeta_powers: Vec<Vec<Q>>,
}

pub fn cyclotomic_polynomial(n: u32) -> Vec<Q> {
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut p = vec![Q::zero(); n as usize + 1];
    p[0] = -Q::one();
    p[n as usize] = Q::one();
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = poly_divrem(&p, &cyclotomic_polynomial(d));
            debug_assert!(r.iter().all(|c| c.is_zero()));
            p = q;
        }
    }
    p
}

impl Cyclotomic {
    pub fn new(ell: u32) -> Result<Self> {
        if ell < 2 {
            return Err(Error::Config(format!("ell = {ell} must be at least 2")));
        }
        let phi = cyclotomic_polynomial(ell);
        let deg = phi.len() - 1;
        let mut f = Cyclotomic { ell, phi, zeta_powers: Vec::new() };
        let mut x = vec![Q::zero(); deg];
        x[0] = Q::one();
        let mut powers = Vec::with_capacity(ell as usize);
        let mut gen = vec![Q::zero(); deg];
        if deg > 1 {
            gen[1] = Q::one();
        } else {
            // Phi_2 = x + 1: zeta = -1.
            gen[0] = -f.phi[0].clone();
        }
        for _ in 0..ell {
            powers.push(x.clone());
            x = f.mul_raw(&x, &gen);
        }
        f.zeta_powers = powers;
        Ok(f)
    }

    fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    fn reduce(&self, mut v: Vec<Q>) -> Vec<Q> {
        let deg = self.degree();
        if v.len() > deg {
            let (_, r) = poly_divrem(&v, &self.phi);
            v = r;
        }
        v.resize(deg, Q::zero());
        v
    }

    fn mul_raw(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        self.reduce(out)
    }
}

impl FieldOps for Cyclotomic {
    type Elem = Vec<Q>;

    fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.degree()]
    }
    fn one(&self) -> Vec<Q> {
        let mut v = self.zero();
        v[0] = Q::one();
        v
    }
    fn add(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn neg(&self, a: &Vec<Q>) -> Vec<Q> {
        a.iter().map(|x| -x).collect()
    }
    fn sub(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    fn mul(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        // Fast paths for rational scalars.
        if a[1..].iter().all(|x| x.is_zero()) {
            return b.iter().map(|y| y * &a[0]).collect();
        }
        if b[1..].iter().all(|x| x.is_zero()) {
            return a.iter().map(|x| x * &b[0]).collect();
        }
        self.mul_raw(a, b)
    }
    fn inv(&self, a: &Vec<Q>) -> Option<Vec<Q>> {
        if self.is_zero(a) {
            return None;
        }
        // Extended Euclid: find u with a*u = 1 mod phi.
        let (mut r0, mut r1) = (self.phi.clone(), trim(a.clone()));
        let (mut s0, mut s1) = (vec![Q::zero()], vec![Q::one()]);
        while !(r1.len() == 1) {
            let (q, r) = poly_divrem(&r0, &r1);
            let r = trim(r);
            let qs = poly_mul(&q, &s1);
            let s2 = poly_sub(&s0, &qs);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = trim(s2);
            if r1.is_empty() {
                return None;
            }
        }
        let c = r1[0].recip();
        let u: Vec<Q> = s1.iter().map(|x| x * &c).collect();
        Some(self.reduce(u))
    }
    fn is_zero(&self, a: &Vec<Q>) -> bool {
        a.iter().all(|x| x.is_zero())
    }
    fn from_i64(&self, n: i64) -> Vec<Q> {
        let mut v = self.zero();
        v[0] = q_int_const(n);
        v
    }
    fn elem_to_string(&self, a: &Vec<Q>) -> String {
        let parts: Vec<String> = a.iter().map(rational_to_string).collect();
        format!("[{}]", parts.join(","))
    }
}

fn trim(mut v: Vec<Q>) -> Vec<Q> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) - b.get(i).cloned().unwrap_or_else(Q::zero))
        .collect()
}

impl Field for Cyclotomic {
    fn ell(&self) -> u32 {
        self.ell
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn label(&self) -> String {
        format!("cyclo({})", self.ell)
    }
    fn from_rational(&self, q: &Q) -> Option<Vec<Q>> {
        let mut v = self.zero();
        v[0] = q.clone();
        Some(v)
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> Vec<Q> {
        (0..self.degree()).map(|_| q_int_const(rng.gen_range(-3..=3))).collect()
    }
    fn zeta_pow(&self, e: i64) -> Vec<Q> {
        self.zeta_powers[e.rem_euclid(self.ell as i64) as usize].clone()
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `p` modulo `ell`.
pub fn multiplicative_order(p: u64, ell: u64) -> Option<u32> {
    if ell.gcd(&p) != 1 {
        return None;
    }
    let mut x = p % ell;
    for n in 1..=ell {
        if x == 1 % ell {
            return Some(n as u32);
        }
        x = x * p % ell;
    }
    None
}

/// The prime field `F_p` with `ell | p - 1`.
#[derive(Clone, Debug)]
pub struct PrimeField {
    p: u64,
    ell: u32,
    zeta_powers: Vec<u64>,
}

impl PrimeField {
    pub fn new(p: u64, ell: u32) -> Result<Self> {
        if !is_prime(p) || p > (1 << 31) {
            return Err(Error::Config(format!("p = {p} must be a prime below 2^31")));
        }
        if (p - 1) % ell as u64 != 0 {
            return Err(Error::Config(format!("F_{p} has no primitive {ell}-th root of unity")));
        }
        let ldivs = prime_divisors(ell as u64);
        let mut zeta = None;
        for x in 2..p {
            let z = mod_pow(x, (p - 1) / ell as u64, p);
            if ldivs.iter().all(|&d| mod_pow(z, ell as u64 / d, p) != 1) {
                zeta = Some(z);
                break;
            }
        }
        let zeta = zeta.ok_or_else(|| Error::Config(format!("no primitive root of order {ell} mod {p}")))?;
        let zeta_powers = (0..ell).map(|e| mod_pow(zeta, e as u64, p)).collect();
        Ok(PrimeField { p, ell, zeta_powers })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl FieldOps for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(mod_pow(*a, self.p - 2, self.p))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn elem_to_string(&self, a: &u64) -> String {
        a.to_string()
    }
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

impl Field for PrimeField {
    fn ell(&self) -> u32 {
        self.ell
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn label(&self) -> String {
        format!("F({}^1)", self.p)
    }
    fn from_rational(&self, q: &Q) -> Option<u64> {
        let d = bigint_mod(q.denom(), self.p);
        let n = bigint_mod(q.numer(), self.p);
        self.inv(&d).map(|di| self.mul(&n, &di))
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn zeta_pow(&self, e: i64) -> u64 {
        self.zeta_powers[e.rem_euclid(self.ell as i64) as usize]
    }
}

/// `F_{p^n}` for `n >= 2`, as `F_p[x]/f(x)` with `f` the lexicographically
/// first monic irreducible polynomial of degree `n`.
#[derive(Clone, Debug)]
pub struct ExtField {
    p: u64,
    n: usize,
    ell: u32,
    /// Monic modulus, ascending, length `n + 1`.
    modulus: Vec<u64>,
    zeta_powers: Vec<Vec<u64>>,
}

impl ExtField {
    pub fn new(p: u64, n: u32, ell: u32) -> Result<Self> {
        if !is_prime(p) || p > 1 << 20 {
            return Err(Error::Config(format!("p = {p} must be a small prime")));
        }
        if n < 2 {
            return Err(Error::Config("use PrimeField for n = 1".into()));
        }
        let q = p.checked_pow(n).filter(|&q| q < 1 << 24).ok_or_else(|| {
            Error::Config(format!("F_{p}^{n} is too large for the extension-field backend"))
        })?;
        if (q - 1) % ell as u64 != 0 {
            return Err(Error::Config(format!("F_{p}^{n} has no primitive {ell}-th root of unity")));
        }
        let n = n as usize;
        let mut f = ExtField { p, n, ell, modulus: Vec::new(), zeta_powers: Vec::new() };
        f.modulus = f.find_irreducible();
        let ldivs = prime_divisors(ell as u64);
        let mut zeta = None;
        for idx in 1..q {
            let x = f.index_to_elem(idx);
            let z = f.pow(&x, (q - 1) / ell as u64);
            if ldivs.iter().all(|&d| !f.is_one(&f.pow(&z, ell as u64 / d))) {
                zeta = Some(z);
                break;
            }
        }
        let zeta = zeta.ok_or_else(|| Error::Config("no primitive root found".into()))?;
        let mut powers = Vec::new();
        let mut x = f.one();
        for _ in 0..ell {
            powers.push(x.clone());
            x = f.mul(&x, &zeta);
        }
        f.zeta_powers = powers;
        Ok(f)
    }

    fn index_to_elem(&self, mut idx: u64) -> Vec<u64> {
        let mut v = vec![0; self.n];
        for c in v.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        v
    }

    fn find_irreducible(&self) -> Vec<u64> {
        let p = self.p;
        let count = p.pow(self.n as u32);
        for idx in 0..count {
            let mut f = self.index_to_elem(idx);
            f.push(1);
            if f[0] == 0 {
                continue;
            }
            if poly_irreducible_mod_p(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let p = self.p;
        let n = self.n;
        for i in (n..v.len()).rev() {
            let c = v[i];
            if c == 0 {
                continue;
            }
            for j in 0..n {
                let t = c * self.modulus[j] % p;
                v[i - n + j] = (v[i - n + j] + p - t) % p;
            }
            v[i] = 0;
        }
        v.truncate(n);
        v.resize(n, 0);
        v
    }
}

fn poly_mod_p(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let inv = mod_pow(m[dm], p - 2, p);
    while r.len() > dm {
        let c = r.pop().unwrap() * inv % p;
        if c != 0 {
            let off = r.len() - dm;
            for j in 0..dm {
                r[off + j] = (r[off + j] + p - c * m[j] % p) % p;
            }
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn poly_mulmod_p(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_mod_p(&out, m, p)
}

fn poly_gcd_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while b.last() == Some(&0) {
        b.pop();
    }
    while !b.is_empty() {
        let r = poly_mod_p(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_irreducible_mod_p(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    // x^{p^i} mod f for i = 1..n/2; gcd(x^{p^i} - x, f) must be 1.
    let mut xp = vec![0, 1];
    for _ in 1..=n / 2 {
        let mut acc = vec![1u64];
        let mut base = xp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod_p(&acc, &base, f, p);
            }
            base = poly_mulmod_p(&base, &base, f, p);
            e >>= 1;
        }
        xp = acc;
        let mut h = xp.clone();
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        while h.last() == Some(&0) {
            h.pop();
        }
        let g = poly_gcd_p(f, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FieldOps for ExtField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.n]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let mut out = vec![0u64; 2 * self.n - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.reduce(out)
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        let q = self.p.pow(self.n as u32);
        Some(self.pow(a, q - 2))
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }
    fn from_i64(&self, n: i64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = n.rem_euclid(self.p as i64) as u64;
        v
    }
    fn elem_to_string(&self, a: &Vec<u64>) -> String {
        let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl Field for ExtField {
    fn ell(&self) -> u32 {
        self.ell
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn label(&self) -> String {
        format!("F({}^{})", self.p, self.n)
    }
    fn from_rational(&self, q: &Q) -> Option<Vec<u64>> {
        let d = bigint_mod(q.denom(), self.p);
        if d == 0 {
            return None;
        }
        let n = bigint_mod(q.numer(), self.p);
        let di = mod_pow(d, self.p - 2, self.p);
        let mut v = self.zero();
        v[0] = n * di % self.p;
        Some(v)
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> Vec<u64> {
        (0..self.n).map(|_| rng.gen_range(0..self.p)).collect()
    }
    fn zeta_pow(&self, e: i64) -> Vec<u64> {
        self.zeta_powers[e.rem_euclid(self.ell as i64) as usize].clone()
    }
}

/// Checks that `zeta` is a primitive `ell`-th root of unity in `f`.
pub fn check_primitive_root<F: Field>(f: &F) -> bool {
    let z = f.zeta();
    let ell = f.ell() as u64;
    f.is_one(&f.pow(&z, ell)) && (1..ell).all(|j| !f.is_one(&f.pow(&z, j)))
}

/// Numerator of a rational, reduced to `i64` when it fits (used in reports).
pub fn small_rational(q: &Q) -> Option<(i64, i64)> {
    Some((q.numer().to_i64()?, q.denom().to_i64()?)).filter(|_| !q.denom().is_negative())
}
