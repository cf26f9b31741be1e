//! Exact rational functions in `δ` over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

/// `num / den` in lowest terms: the polynomials are coprime over Q, the
/// denominator has positive leading coefficient, and the integer contents of
/// numerator and denominator are coprime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunction { num, den: Poly::one() };
        }
        let (mut num, mut den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.degree().unwrap_or(0) > 0 {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            } else {
                (num, den)
            }
        };
        let mut c = num.content().gcd(&den.content());
        if den.lead().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::normalized(Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()))
    }

    pub fn delta() -> Self {
        Self::from_poly(Poly::delta())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }

    /// Exact value at `δ = d`; errors if the denominator vanishes there.
    pub fn eval_at(&self, d: &BigRational) -> Result<BigRational> {
        let den = self.den.eval(d);
        if den.is_zero() {
            return Err(Error::Pole(d.to_string()));
        }
        Ok(self.num.eval(d) / den)
    }

    /// Re-run normalization (idempotent on values built through the public API).
    pub fn renormalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    pub fn from_parts_unchecked(num: Poly, den: Poly) -> Self {
        RationalFunction { num, den }
    }
}

impl From<i64> for RationalFunction {
    fn from(v: i64) -> Self {
        Self::from_poly(Poly::constant(BigInt::from(v)))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::from_poly(Poly::zero());
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let wrap = |p: &Poly| {
                if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                    format!("({p})")
                } else {
                    p.to_string()
                }
            };
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_i64s(cs)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn eval_examples() {
        let f = RationalFunction::from_poly(p(&[-1, 0, 1]));
        assert_eq!(f.eval_at(&q(2, 1)).unwrap(), q(3, 1));
        let inv = RationalFunction::delta().inv().unwrap();
        assert_eq!(inv.eval_at(&q(5, 2)).unwrap(), q(2, 5));
        let g = RationalFunction::from_poly(p(&[0, 0, -1, 0, 1]));
        assert_eq!(g.eval_at(&q(2, 1)).unwrap(), q(12, 1));
        assert!(matches!(inv.eval_at(&q(0, 1)), Err(Error::Pole(_))));
    }

    #[test]
    fn normal_form() {
        // (2δ^2 - 2) / (-4δ - 4) = -(δ - 1)/2
        let f = RationalFunction::new(p(&[-2, 0, 2]), p(&[-4, -4])).unwrap();
        assert_eq!(f.numer(), &p(&[1, -1]));
        assert_eq!(f.denom(), &p(&[2]));
        assert!(RationalFunction::new(p(&[1]), Poly::zero()).is_err());
    }

    fn arb_rf() -> impl Strategy<Value = RationalFunction> {
        (
            prop::collection::vec(-9i64..9, 0..4),
            prop::collection::vec(-9i64..9, 1..4),
        )
            .prop_filter_map("zero den", |(n, d)| RationalFunction::new(p(&n), p(&d)).ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_laws(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if let Some(ai) = a.inv() {
                prop_assert_eq!(&a * &ai, RationalFunction::from(1));
            }
        }

        #[test]
        fn normalization_idempotent(a in arb_rf()) {
            prop_assert_eq!(a.renormalize(), a);
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_rf(), b in arb_rf(), x in 2i64..7) {
            let d = q(x, 1);
            if let (Ok(va), Ok(vb)) = (a.eval_at(&d), b.eval_at(&d)) {
                prop_assert_eq!((&a * &b).eval_at(&d).unwrap(), &va * &vb);
                prop_assert_eq!((&a + &b).eval_at(&d).unwrap(), va + vb);
            }
        }
    }
}
