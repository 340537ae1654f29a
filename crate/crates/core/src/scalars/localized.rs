use std::fmt;

use super::laurent::Laurent;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Which denominators a structure constant may carry, by root system type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DenominatorSet {
    /// `S = {1}` (simply laced types).
    Trivial,
    /// `S` generated by `q^2 - q^-2`.
    Two,
    /// `S` generated by `q^2 - q^-2` and `q^3 - q^-3`.
    TwoThree,
}

impl DenominatorSet {
    pub fn allows(&self, exps: [u32; 2]) -> bool {
        match self {
            DenominatorSet::Trivial => exps == [0, 0],
            DenominatorSet::Two => exps[1] == 0,
            DenominatorSet::TwoThree => true,
        }
    }
}

/// `q^2 - q^-2` for `k = 2`, `q^3 - q^-3` for `k = 3`.
pub fn s_generator(k: i64) -> Laurent {
    let mut c = vec![0i64; (2 * k + 1) as usize];
    c[0] = -1;
    c[(2 * k) as usize] = 1;
    Laurent::from_ints(-k, &c)
}

/// An element `num / ((q^2-q^-2)^a (q^3-q^-3)^b)` of the localization.
///
/// Canonical form: `(a, b)` is the smallest exponent pair (by `a + b`, then
/// `a`) for which the numerator is a Laurent polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LocalizedScalar {
    num: Laurent,
    exps: [u32; 2],
}

impl LocalizedScalar {
    pub fn from_laurent(l: Laurent) -> Self {
        LocalizedScalar { num: l, exps: [0, 0] }
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn exponents(&self) -> [u32; 2] {
        self.exps
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn denominator(&self) -> Laurent {
        s_generator(2).pow(self.exps[0]).mul(&s_generator(3).pow(self.exps[1]))
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::new(self.num.clone(), self.denominator())
    }

    /// Writes a rational function over the smallest admissible denominator,
    /// or returns `None` when no product of `q^2-q^-2`, `q^3-q^-3` clears it.
    pub fn from_ratfunc(r: &RatFunc) -> Option<Self> {
        if r.is_laurent() {
            return Some(Self::from_laurent(r.numerator().clone()));
        }
        let bound = r.denominator().high().max(1) as u32;
        let mut best: Option<LocalizedScalar> = None;
        for total in 1..=2 * bound {
            for a in 0..=total {
                let b = total - a;
                if a > bound || b > bound {
                    continue;
                }
                let d = s_generator(2).pow(a).mul(&s_generator(3).pow(b));
                let prod = r.mul_laurent(&d);
                if let Some(l) = prod.as_laurent() {
                    best = Some(LocalizedScalar { num: l.clone(), exps: [a, b] });
                    break;
                }
            }
            if best.is_some() {
                break;
            }
        }
        best
    }

    pub fn in_ring(&self, allowed: DenominatorSet) -> bool {
        allowed.allows(self.exps)
    }

    /// Canonical text form `<laurent>|a,b`.
    pub fn to_canonical_string(&self) -> String {
        format!("{}|{},{}", self.num.to_canonical_string(), self.exps[0], self.exps[1])
    }

    pub fn parse_canonical(s: &str) -> Result<Self> {
        let (l, e) = s
            .split_once('|')
            .ok_or_else(|| Error::Format(format!("missing '|' in localized scalar `{s}`")))?;
        let num = Laurent::parse_canonical(l)?;
        let (a, b) = e
            .split_once(',')
            .ok_or_else(|| Error::Format(format!("bad exponent pair in `{s}`")))?;
        let a: u32 = a.trim().parse().map_err(|_| Error::Format(format!("bad exponent in `{s}`")))?;
        let b: u32 = b.trim().parse().map_err(|_| Error::Format(format!("bad exponent in `{s}`")))?;
        let x = LocalizedScalar { num, exps: [a, b] };
        let canon = Self::from_ratfunc(&x.to_ratfunc())
            .ok_or_else(|| Error::Format(format!("`{s}` is not in the localization")))?;
        if canon != x {
            return Err(Error::Format(format!("localized scalar `{s}` is not canonical")));
        }
        Ok(x)
    }
}

impl fmt::Display for LocalizedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exps {
            [0, 0] => write!(f, "{}", self.num),
            [a, 0] => write!(f, "({}) / (q^2-q^-2)^{}", self.num, a),
            [0, b] => write!(f, "({}) / (q^3-q^-3)^{}", self.num, b),
            [a, b] => write!(f, "({}) / ((q^2-q^-2)^{} (q^3-q^-3)^{})", self.num, a, b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::laurent::q_integer;

    #[test]
    fn denominators_detected() {
        let r = RatFunc::new(Laurent::one(), s_generator(2));
        let l = LocalizedScalar::from_ratfunc(&r).unwrap();
        assert_eq!(l.exponents(), [1, 0]);
        assert!(l.in_ring(DenominatorSet::Two));
        assert!(!l.in_ring(DenominatorSet::Trivial));
        // 1/[2] = (q - q^-1)/(q^2 - q^-2)
        let r = RatFunc::new(Laurent::one(), q_integer(2, 1));
        let l = LocalizedScalar::from_ratfunc(&r).unwrap();
        assert_eq!(l.exponents(), [1, 0]);
        assert_eq!(l.to_ratfunc(), r);
        // 1/[5] is not in the localization
        let r = RatFunc::new(Laurent::one(), q_integer(5, 1));
        assert!(LocalizedScalar::from_ratfunc(&r).is_none());
    }

    #[test]
    fn canonical_roundtrip() {
        let r = RatFunc::new(Laurent::from_ints(0, &[3, 1]), s_generator(3));
        let l = LocalizedScalar::from_ratfunc(&r).unwrap();
        let s = l.to_canonical_string();
        assert_eq!(LocalizedScalar::parse_canonical(&s).unwrap(), l);
    }
}
