use std::fmt;

use num_traits::{One, Zero};

use super::laurent::{poly_divrem, Laurent, Q};

/// An element of `Q(q)` kept in lowest terms.
///
/// The denominator is a polynomial in `q` with nonzero constant term and
/// leading coefficient one; any power of `q` lives in the numerator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Laurent,
    den: Laurent,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Laurent::zero(), den: Laurent::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Laurent::one(), den: Laurent::one() }
    }

    pub fn from_laurent(l: Laurent) -> Self {
        RatFunc { num: l, den: Laurent::one() }
    }

    pub fn new(num: Laurent, den: Laurent) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        // Move powers of q into the numerator.
        let shift = den.low();
        let den_poly = den.shift(-shift);
        let num = num.shift(-shift);
        let g = poly_gcd(den_poly.coeffs(), &strip_low(&num));
        let gl = Laurent::from_parts(0, g);
        let num = num.div_exact(&gl).expect("gcd divides numerator");
        let den_poly = den_poly.div_exact(&gl).expect("gcd divides denominator");
        let lead = den_poly.coeffs().last().unwrap().clone();
        let inv = lead.recip();
        RatFunc { num: num.scale(&inv), den: den_poly.scale(&inv) }
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn denominator(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&Laurent> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_laurent(self.num.mul(&o.num));
        }
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn mul_laurent(&self, l: &Laurent) -> RatFunc {
        self.mul(&RatFunc::from_laurent(l.clone()))
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, o: &RatFunc) -> RatFunc {
        self.mul(&o.inv().expect("division by zero rational function"))
    }

    /// The substitution `q -> q^-1`.
    pub fn bar(&self) -> RatFunc {
        RatFunc::new(self.num.bar(), self.den.bar())
    }

    /// Evaluates at a rational point; `None` if the denominator vanishes there.
    pub fn eval_rational(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval_rational(x) / d)
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

fn strip_low(l: &Laurent) -> Vec<Q> {
    l.coeffs().to_vec()
}

/// Monic gcd of two polynomials over `Q` (ascending coefficient vectors).
pub fn poly_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let trim = |v: &[Q]| -> Vec<Q> {
        let mut v = v.to_vec();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let mut a = trim(a);
    let mut b = trim(b);
    while !b.is_empty() {
        let (_, r) = poly_divrem(&a, &b);
        a = b;
        b = trim(&r);
    }
    if a.is_empty() {
        return vec![Q::one()];
    }
    let inv = a.last().unwrap().recip();
    a.iter().map(|c| c * &inv).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::laurent::q_integer;

    #[test]
    fn lowest_terms() {
        // (q^2 - q^-2) / (q - q^-1) = q + q^-1
        let num = Laurent::from_ints(-2, &[-1, 0, 0, 0, 1]);
        let den = Laurent::from_ints(-1, &[-1, 0, 1]);
        let r = RatFunc::new(num, den);
        assert_eq!(r.as_laurent().unwrap(), &q_integer(2, 1));
    }

    #[test]
    fn field_ops() {
        let a = RatFunc::new(Laurent::one(), q_integer(2, 1));
        let b = RatFunc::new(Laurent::q_pow(1), q_integer(3, 1));
        let s = a.add(&b);
        assert_eq!(s.sub(&b), a);
        assert_eq!(a.mul(&b).div(&b), a);
        assert_eq!(a.mul(&a.inv().unwrap()), RatFunc::one());
        assert_eq!(a.bar(), a);
    }
}
