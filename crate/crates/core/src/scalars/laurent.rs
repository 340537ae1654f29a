use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q_int_const(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A Laurent polynomial `sum_i c_i q^(low + i)` with rational coefficients.
///
/// Canonical form: no leading or trailing zero coefficients; zero is the empty
/// coefficient list with `low = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Laurent {
    low: i64,
    coeffs: Vec<Q>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::from_parts(0, vec![c])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(q_int_const(n))
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(Q::one(), e)
    }

    pub fn monomial(c: Q, e: i64) -> Self {
        Self::from_parts(e, vec![c])
    }

    pub fn from_parts(low: i64, coeffs: Vec<Q>) -> Self {
        let mut l = Laurent { low, coeffs };
        l.normalize();
        l
    }

    /// Builds from integer coefficients, lowest exponent first.
    pub fn from_ints(low: i64, coeffs: &[i64]) -> Self {
        Self::from_parts(low, coeffs.iter().map(|&c| q_int_const(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> Q {
        let i = e - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Q::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Returns `Some((c, e))` when the polynomial is a single term `c q^e`.
    pub fn as_monomial(&self) -> Option<(Q, i64)> {
        if self.coeffs.len() == 1 {
            Some((self.coeffs[0].clone(), self.low))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let mut coeffs = vec![Q::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.low - low) as usize + i] += c;
        }
        Laurent::from_parts(low, coeffs)
    }

    pub fn neg(&self) -> Laurent {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Laurent::from_parts(self.low + other.low, coeffs)
    }

    pub fn scale(&self, c: &Q) -> Laurent {
        Laurent::from_parts(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn shift(&self, e: i64) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent { low: self.low + e, coeffs: self.coeffs.clone() }
    }

    pub fn pow(&self, n: u32) -> Laurent {
        let mut acc = Laurent::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The substitution `q -> q^-1`.
    pub fn bar(&self) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        Laurent::from_parts(-self.high(), c)
    }

    /// The substitution `q -> q^d`.
    pub fn substitute_power(&self, d: i64) -> Laurent {
        assert!(d >= 1);
        if self.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![Q::zero(); (self.coeffs.len() - 1) * d as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * d as usize] = c.clone();
        }
        Laurent::from_parts(self.low * d, coeffs)
    }

    /// Exact division. Returns `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Laurent) -> Option<Laurent> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let (quot, rem) = poly_divrem(&self.coeffs, &other.coeffs);
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Laurent::from_parts(self.low - other.low, quot))
    }

    /// Evaluates at a rational point.
    pub fn eval_rational(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc * rational_pow(x, self.low)
    }

    /// Canonical text form `low:c0,c1,...`; rationals print as `n` or `n/d`.
    pub fn to_canonical_string(&self) -> String {
        let body: Vec<String> = self.coeffs.iter().map(rational_to_string).collect();
        format!("{}:{}", self.low, body.join(","))
    }

    pub fn parse_canonical(s: &str) -> Result<Laurent> {
        let (low, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Format(format!("missing ':' in scalar `{s}`")))?;
        let low: i64 = low
            .trim()
            .parse()
            .map_err(|_| Error::Format(format!("bad exponent in `{s}`")))?;
        let mut coeffs = Vec::new();
        if !body.trim().is_empty() {
            for tok in body.split(',') {
                coeffs.push(parse_rational(tok.trim())?);
            }
        }
        let l = Laurent { low, coeffs };
        let mut canon = l.clone();
        canon.normalize();
        if canon != l {
            return Err(Error::Format(format!("scalar `{s}` is not in canonical form")));
        }
        Ok(l)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + i as i64;
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !a.is_one() || e == 0;
            if show_coeff {
                write!(f, "{}", rational_to_string(&a))?;
            }
            match e {
                0 => {}
                1 => write!(f, "{}q", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}q^{}", if show_coeff { "*" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}

pub fn rational_to_string(c: &Q) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::Format(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn rational_pow(x: &Q, e: i64) -> Q {
    let mut acc = Q::one();
    let base = if e < 0 { x.recip() } else { x.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Polynomial division over `Q`; coefficient vectors are ascending.
pub fn poly_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let b_deg = b.iter().rposition(|c| !c.is_zero()).expect("division by zero polynomial");
    let mut rem: Vec<Q> = a.to_vec();
    if a.len() <= b_deg {
        return (vec![], rem);
    }
    let mut quot = vec![Q::zero(); a.len() - b_deg];
    let lead_inv = b[b_deg].recip();
    for i in (b_deg..a.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let factor = &rem[i] * &lead_inv;
        for j in 0..=b_deg {
            let t = &factor * &b[j];
            rem[i - b_deg + j] -= t;
        }
        quot[i - b_deg] = factor;
    }
    rem.truncate(b_deg);
    (quot, rem)
}

/// `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`, defined for all integers `n`.
pub fn q_integer(n: i64, d: i64) -> Laurent {
    assert!(d >= 1, "q-integer base exponent must be positive");
    if n == 0 {
        return Laurent::zero();
    }
    let m = n.abs();
    // q^{d(m-1)} + q^{d(m-3)} + ... + q^{-d(m-1)}
    let span = (2 * d * (m - 1) + 1) as usize;
    let mut coeffs = vec![Q::zero(); span];
    for k in 0..m {
        coeffs[(2 * d * k) as usize] = Q::one();
    }
    let l = Laurent::from_parts(-d * (m - 1), coeffs);
    if n < 0 {
        l.neg()
    } else {
        l
    }
}

/// `[n]_{q^d}!`
pub fn q_factorial(n: u32, d: i64) -> Laurent {
    (1..=n as i64).fold(Laurent::one(), |acc, k| acc.mul(&q_integer(k, d)))
}

/// Gaussian binomial `[n choose t]_{q^d}` for any integer `n` and `t >= 0`.
pub fn q_binomial(n: i64, t: u32, d: i64) -> Laurent {
    let mut num = Laurent::one();
    for s in 0..t as i64 {
        num = num.mul(&q_integer(n - s, d));
    }
    let den = q_factorial(t, d);
    num.div_exact(&den)
        .unwrap_or_else(|| panic!("q-binomial [{n} choose {t}] division not exact"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_integers() {
        assert_eq!(q_integer(2, 1), Laurent::from_ints(-1, &[1, 0, 1]));
        assert_eq!(q_integer(1, 3), Laurent::one());
        assert_eq!(q_integer(-2, 1), Laurent::from_ints(-1, &[-1, 0, -1]));
        assert!(q_integer(0, 2).is_zero());
        // [3]_q = q^-2 + 1 + q^2
        assert_eq!(q_integer(3, 1), Laurent::from_ints(-2, &[1, 0, 1, 0, 1]));
    }

    #[test]
    fn binomials() {
        assert_eq!(q_binomial(2, 1, 1), q_integer(2, 1));
        // [4 choose 2] = q^-4 + q^-2 + 2 + q^2 + q^4
        assert_eq!(q_binomial(4, 2, 1), Laurent::from_ints(-4, &[1, 0, 1, 0, 2, 0, 1, 0, 1]));
        assert!(q_binomial(3, 4, 1).is_zero());
        // [-1 choose t] = (-1)^t
        assert_eq!(q_binomial(-1, 3, 1), Laurent::from_int(-1));
    }

    #[test]
    fn division_and_bar() {
        let a = q_integer(6, 1);
        let b = q_integer(3, 1);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q.mul(&b), a);
        assert!(q_integer(3, 1).div_exact(&q_integer(2, 1)).is_none());
        let x = Laurent::from_ints(-2, &[1, 5, 0, 3]);
        assert_eq!(x.bar().bar(), x);
        assert_eq!(q_integer(5, 2).bar(), q_integer(5, 2));
    }

    #[test]
    fn canonical_text_roundtrip() {
        let x = Laurent::from_parts(-3, vec![Q::new(1.into(), 2.into()), Q::zero(), q_int_const(-7)]);
        let s = x.to_canonical_string();
        assert_eq!(s, "-3:1/2,0,-7");
        assert_eq!(Laurent::parse_canonical(&s).unwrap(), x);
        assert_eq!(Laurent::zero().to_canonical_string(), "0:");
        assert!(Laurent::parse_canonical("0:0,1").is_err());
    }
}
