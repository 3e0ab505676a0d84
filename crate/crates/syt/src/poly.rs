//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients ascending by degree; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Polynomial::new(vec![c])
    }

    /// Convenience: integer coefficients, ascending degree.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| BigRational::from(BigInt::from(c))).collect())
    }

    /// The variable itself.
    pub fn var() -> Self {
        Polynomial::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> BigRational {
        self.coeffs.get(power).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from(BigInt::from(x)))
    }

    pub fn scale(&self, s: &BigRational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Euclidean division: (quotient, remainder) with deg rem < deg divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dlead = divisor.leading().unwrap().clone();
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(ddeg)];
        while rem.len() > ddeg {
            let rdeg = rem.len() - 1;
            let factor = rem.last().unwrap() / &dlead;
            if !factor.is_zero() {
                for (t, dc) in divisor.coeffs.iter().enumerate() {
                    let idx = rdeg - ddeg + t;
                    rem[idx] = &rem[idx] - &factor * dc;
                }
                quot[rdeg - ddeg] = factor;
            }
            rem.pop();
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Monic gcd over the rationals.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            // keep coefficients small: make the new divisor monic
            b = match r.leading() {
                Some(lead) => r.scale(&lead.recip()),
                None => Polynomial::zero(),
            };
        }
        match a.leading() {
            Some(lead) => a.scale(&lead.recip()),
            None => Polynomial::zero(),
        }
    }

    /// Positive rational `c` with `self = c * P`, `P` a primitive integer
    /// polynomial (integer coefficients with gcd 1, sign of `self` kept).
    /// Zero polynomial has content zero.
    pub fn rational_content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut lcm_den = BigInt::one();
        for c in &self.coeffs {
            lcm_den = lcm_den.lcm(c.denom());
        }
        let mut gcd_num = BigInt::zero();
        for c in &self.coeffs {
            gcd_num = gcd_num.gcd(&(c.numer() * &lcm_den / c.denom()));
        }
        BigRational::new(gcd_num, lcm_den)
    }

    /// `self / rational_content()`: primitive integer coefficients.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        self.scale(&self.rational_content().recip())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|t| self.coeff(t) + rhs.coeff(t)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|t| self.coeff(t) - rhs.coeff(t)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (s, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, b) in rhs.coeffs.iter().enumerate() {
                out[s + t] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    /// Expanded form in the variable `n`, descending powers:
    /// `15*n^2 - 21*n + 6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for p in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[p];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match p {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "n")?,
                1 => write!(f, "{mag}*n")?,
                _ if unit => write!(f, "n^{p}")?,
                _ => write!(f, "{mag}*n^{p}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_ints(coeffs)
    }

    #[test]
    fn canonical_strips_trailing_zeros() {
        assert_eq!(poly(&[1, 2, 0, 0]), poly(&[1, 2]));
        assert!(poly(&[0]).is_zero());
        assert_eq!(poly(&[0]).degree(), None);
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = poly(&[2, 0, -3, 1]);
        let b = poly(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let shared = poly(&[-1, 2]); // 2n - 1
        let a = &shared * &poly(&[3, 1]);
        let b = &shared * &poly(&[5, 0, 2]);
        let g = a.gcd(&b);
        // monic: n - 1/2
        assert_eq!(g, shared.scale(&BigRational::new(1.into(), 2.into())));
    }

    #[test]
    fn content_and_primitive() {
        let p = poly(&[6, -9, 12]);
        assert_eq!(p.rational_content(), BigRational::from(BigInt::from(3)));
        assert_eq!(p.primitive_part(), poly(&[2, -3, 4]));

        let q = poly(&[6, -9, 12]).scale(&BigRational::new(1.into(), 10.into()));
        assert_eq!(q.rational_content(), BigRational::new(3.into(), 10.into()));
        assert_eq!(q.primitive_part(), poly(&[2, -3, 4]));
    }

    #[test]
    fn display_matches_expected_syntax() {
        assert_eq!(poly(&[6, -21, 15]).to_string(), "15*n^2 - 21*n + 6");
        assert_eq!(poly(&[-1, 2]).to_string(), "2*n - 1");
        assert_eq!(poly(&[3]).to_string(), "3");
        assert_eq!(poly(&[0, 1]).to_string(), "n");
        assert_eq!(poly(&[0, -1, 1]).to_string(), "n^2 - n");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn ring_identities(a in prop::collection::vec(-20i64..20, 0..6),
                           b in prop::collection::vec(-20i64..20, 0..6),
                           c in prop::collection::vec(-20i64..20, 0..6)) {
            let (a, b, c) = (poly(&a), poly(&b), poly(&c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn div_rem_identity(a in prop::collection::vec(-20i64..20, 0..7),
                            b in prop::collection::vec(-20i64..20, 1..5)) {
            let a = poly(&a);
            let b = poly(&b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.is_zero() || r.degree() < b.degree());
        }
    }
}
