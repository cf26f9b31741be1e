//! Dense integer-coefficient polynomials in the loop parameter.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Ascending coefficient list with no trailing zeros; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The indeterminate `δ`.
    pub fn delta() -> Self {
        Poly::monomial(BigInt::one(), 1)
    }

    pub fn monomial(c: BigInt, deg: usize) -> Self {
        let mut v = vec![BigInt::zero(); deg + 1];
        v[deg] = c;
        Poly::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Non-negative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero());
                    a / c
                })
                .collect(),
        )
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.lead().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Pseudo-remainder: `lc(d)^(deg n - deg d + 1) * n mod d`.
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lc = d.lead().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let top = r.pop().unwrap();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (i, dc) in d.coeffs[..dd].iter().enumerate() {
                r[k + i] -= &top * dc;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Poly::from_coeffs(r)
    }

    /// Polynomial gcd over Z by the primitive remainder sequence; the result is
    /// primitive with positive leading coefficient (or zero if both inputs are).
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// Exact quotient `self / d` over Z, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let lc = d.lead().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = r[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (qc, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &qc * dc;
            }
            q[k] = qc;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(Poly::from_coeffs(q))
        } else {
            None
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        Poly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = d == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "{}δ", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}δ^{d}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_i64s(cs)
    }

    #[test]
    fn trims_and_displays() {
        assert_eq!(p(&[1, 0, 0]), p(&[1]));
        assert_eq!(p(&[-1, 0, 1]).to_string(), "δ^2 - 1");
        assert_eq!(p(&[0, -2]).to_string(), "-2*δ");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn gcd_of_products() {
        // (δ-1)(δ+2) and (δ-1)(δ^2+1)
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[1, 0, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[6, 4]).gcd(&p(&[9, 6])), p(&[3, 2]));
        assert_eq!(p(&[2]).gcd(&p(&[0, 3])), p(&[1]));
    }

    #[test]
    fn exact_division() {
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        assert_eq!(a.div_exact(&p(&[2, 1])), Some(p(&[-1, 1])));
        assert_eq!(a.div_exact(&p(&[3, 1])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[2])), Some(p(&[1, 2])));
        assert_eq!(p(&[1, 4]).div_exact(&p(&[2])), None);
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-20i64..20, 0..5).prop_map(|v| Poly::from_i64s(&v))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assume!(!c.is_zero());
            let x = &a * &c;
            let y = &b * &c;
            let g = x.gcd(&y);
            if !g.is_zero() {
                prop_assert!(x.div_exact(&g).is_some());
                prop_assert!(y.div_exact(&g).is_some());
                // common factor survives
                prop_assert!(g.div_exact(&c.primitive_part()).is_some());
            }
        }

        #[test]
        fn product_divides_exactly(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }
    }
}
