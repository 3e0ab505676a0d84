//! Rational functions of one variable in canonical form.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// A ratio of integer-coefficient polynomials in canonical form:
/// num and den coprime as polynomials, their integer contents coprime, and
/// the denominator's leading coefficient positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

/// Value of a rational function at n -> infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Limit {
    Finite(BigRational),
    Divergent,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidPartition("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RationalFunction { num: Polynomial::zero(), den: Polynomial::one() });
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        // factor the rational scalar out of both primitive parts and reduce it
        let cn = num.rational_content();
        let cd = den.rational_content();
        let scalar = cn / cd; // positive, reduced
        let mut num = num.primitive_part().scale(&BigRational::from(scalar.numer().clone()));
        let mut den = den.primitive_part().scale(&BigRational::from(scalar.denom().clone()));
        if den.leading().unwrap().is_negative() {
            num = -&num;
            den = -&den;
        }
        Ok(RationalFunction { num, den })
    }

    pub fn constant(c: BigRational) -> Self {
        RationalFunction::new(Polynomial::constant(c), Polynomial::one()).unwrap()
    }

    pub fn zero() -> Self {
        RationalFunction::constant(BigRational::zero())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// None when the denominator vanishes at `x`.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn eval_int(&self, x: i64) -> Option<BigRational> {
        self.eval(&BigRational::from(BigInt::from(x)))
    }

    /// Degree comparison: 0 when deg num < deg den, leading-coefficient
    /// ratio when equal, divergent otherwise.
    pub fn limit_at_infinity(&self) -> Limit {
        if self.num.is_zero() {
            return Limit::Finite(BigRational::zero());
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        match dn.cmp(&dd) {
            std::cmp::Ordering::Less => Limit::Finite(BigRational::zero()),
            std::cmp::Ordering::Equal => Limit::Finite(
                self.num.leading().unwrap() / self.den.leading().unwrap(),
            ),
            std::cmp::Ordering::Greater => Limit::Divergent,
        }
    }

    /// Expansion at infinity: the constant term and the coefficients of
    /// n^-1 .. n^-order. Errors when the function diverges.
    pub fn series_in_inverse_n(&self, order: usize) -> Result<InverseSeries> {
        if self.num.is_zero() {
            return Ok(InverseSeries {
                constant: BigRational::zero(),
                coeffs: vec![BigRational::zero(); order],
            });
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        if dn > dd {
            return Err(Error::DivergesAtInfinity);
        }
        let shift = dd - dn;
        // substitute n = 1/t: f = t^shift * rev(num)(t) / rev(den)(t)
        let num_rev: Vec<BigRational> = self.num.coeffs().iter().rev().cloned().collect();
        let den_rev: Vec<BigRational> = self.den.coeffs().iter().rev().cloned().collect();
        // power series division to order `order`
        let terms = order + 1;
        let mut series = vec![BigRational::zero(); terms];
        let d0 = den_rev[0].clone();
        for s in 0..terms {
            let mut acc = num_rev.get(s).cloned().unwrap_or_else(BigRational::zero);
            for t in 1..=s {
                if let Some(dc) = den_rev.get(t) {
                    acc -= dc * &series[s - t];
                }
            }
            series[s] = acc / &d0;
        }
        // multiply by t^shift
        let mut shifted = vec![BigRational::zero(); terms];
        for s in 0..terms {
            if s + shift < terms {
                shifted[s + shift] = series[s].clone();
            }
        }
        Ok(InverseSeries { constant: shifted[0].clone(), coeffs: shifted[1..].to_vec() })
    }
}

/// Truncated expansion of a rational function at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSeries {
    pub constant: BigRational,
    /// coeffs[s] multiplies n^-(s+1)
    pub coeffs: Vec<BigRational>,
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            return write!(f, "{}", self.num);
        }
        let num_s = self.num.to_string();
        let den_s = self.den.to_string();
        let wrap = |s: &str| {
            if s.contains(' ') {
                format!("({s})")
            } else {
                s.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&num_s), wrap(&den_s))
    }
}

impl Polynomial {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.coeff(0).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_ints(coeffs)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonicalization_reduces_and_scales() {
        // (2n^2 - 2) / (4n + 4) = (n - 1)/2
        let f = RationalFunction::new(poly(&[-2, 0, 2]), poly(&[4, 4])).unwrap();
        assert_eq!(f.num(), &poly(&[-1, 1]));
        assert_eq!(f.den(), &poly(&[2]));

        // sign moves to the numerator
        let f = RationalFunction::new(poly(&[3]), poly(&[1, -2])).unwrap();
        assert_eq!(f.num(), &poly(&[-3]));
        assert_eq!(f.den(), &poly(&[-1, 2]));

        // contents stay coprime but are not forced to one
        let f = RationalFunction::new(poly(&[0, 5]), poly(&[9])).unwrap();
        assert_eq!(f.num(), &poly(&[0, 5]));
        assert_eq!(f.den(), &poly(&[9]));
    }

    #[test]
    fn limit_examples() {
        let f = RationalFunction::new(poly(&[3]), poly(&[-1, 2])).unwrap();
        assert_eq!(f.limit_at_infinity(), Limit::Finite(rat(0, 1)));

        let f = RationalFunction::new(poly(&[-2, 2]), poly(&[-1, 3])).unwrap();
        assert_eq!(f.limit_at_infinity(), Limit::Finite(rat(2, 3)));

        let f = RationalFunction::new(poly(&[1, 0, 1]), poly(&[1, 1])).unwrap();
        assert_eq!(f.limit_at_infinity(), Limit::Divergent);
    }

    #[test]
    fn series_examples() {
        // 3/(2n-1) = 3/2 n^-1 + 3/4 n^-2 + 3/8 n^-3 + ...
        let f = RationalFunction::new(poly(&[3]), poly(&[-1, 2])).unwrap();
        let s = f.series_in_inverse_n(3).unwrap();
        assert_eq!(s.constant, rat(0, 1));
        assert_eq!(s.coeffs, vec![rat(3, 2), rat(3, 4), rat(3, 8)]);

        let one = RationalFunction::constant(rat(1, 1));
        let s = one.series_in_inverse_n(3).unwrap();
        assert_eq!(s.constant, rat(1, 1));
        assert!(s.coeffs.iter().all(|c| c.is_zero()));

        let f = RationalFunction::new(poly(&[1, 0, 1]), poly(&[1, 1])).unwrap();
        assert!(matches!(f.series_in_inverse_n(2), Err(Error::DivergesAtInfinity)));
    }

    #[test]
    fn display_matches_expected_syntax() {
        let f = RationalFunction::new(poly(&[3]), poly(&[-1, 2])).unwrap();
        assert_eq!(f.to_string(), "3/(2*n - 1)");
        // shared content 3 is stripped during canonicalization
        let f = RationalFunction::new(poly(&[6, -21, 15]), poly(&[6, -27, 27])).unwrap();
        assert_eq!(f.to_string(), "(5*n^2 - 7*n + 2)/(9*n^2 - 9*n + 2)");
        assert_eq!(RationalFunction::constant(rat(1, 1)).to_string(), "1");
        assert_eq!(RationalFunction::constant(rat(1, 4)).to_string(), "1/4");
    }

    #[test]
    fn eval_at_pole_is_none() {
        let f = RationalFunction::new(poly(&[3]), poly(&[-1, 1])).unwrap();
        assert!(f.eval_int(1).is_none());
        assert_eq!(f.eval_int(2), Some(rat(3, 1)));
    }
}
