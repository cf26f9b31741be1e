//! Exact coefficients: integer polynomials in `δ`, rational functions, fixed
//! rational values, and the quantum integers.

mod poly;
mod ratfunc;

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

pub use poly::Poly;
pub use ratfunc::RationalFunction;

use crate::error::{Error, Result};

/// Coefficient field for diagram spans. Every implementor is a real field,
/// so conjugation is the identity.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    /// Sign when the value is a number; `None` for symbolic values.
    fn signum(&self) -> Option<Ordering>;
    /// `{"num": [...], "den": [...]}` with integer strings.
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        rhs.inv().map(|i| self.clone() * i).ok_or(Error::DivisionByZero)
    }

    /// Division that is expected to be exact in the underlying ring
    /// (integers, polynomials); falls back to field division otherwise.
    fn exact_div(&self, rhs: &Self) -> Result<Self> {
        self.div(rhs)
    }

    fn from_rational(q: BigRational) -> Self;

    /// `(a, s)` with `m = a / s` and integer `a`, when the entries are
    /// numbers. Lets elimination run on plain integers.
    fn clear_denominators(_m: &[Vec<Self>]) -> Option<(Vec<Vec<BigInt>>, BigInt)> {
        None
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn signum(&self) -> Option<Ordering> {
        Some(if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        })
    }
    fn to_json(&self) -> Value {
        json!({"num": [self.numer().to_string()], "den": [self.denom().to_string()]})
    }
    fn from_json(v: &Value) -> Result<Self> {
        let f = rational_function_from_json(v)?;
        match (f.numer().degree(), f.denom().degree()) {
            (None, _) => Ok(Zero::zero()),
            (Some(0), Some(0)) => Ok(BigRational::new(
                f.numer().coeffs()[0].clone(),
                f.denom().coeffs()[0].clone(),
            )),
            _ => Err(Error::Parse(format!("expected a rational constant, got {f}"))),
        }
    }
    fn from_rational(q: BigRational) -> Self {
        q
    }
    fn clear_denominators(m: &[Vec<Self>]) -> Option<(Vec<Vec<BigInt>>, BigInt)> {
        let scale = m.iter().flatten().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let a = m
            .iter()
            .map(|r| r.iter().map(|x| x.numer() * (&scale / x.denom())).collect())
            .collect();
        Some((a, scale))
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self> {
        if self.is_integer() && rhs.is_integer() && !Zero::is_zero(rhs) {
            let (q, r) = self.numer().div_rem(rhs.numer());
            if Zero::is_zero(&r) {
                return Ok(BigRational::from_integer(q));
            }
        }
        Scalar::div(self, rhs)
    }
}

impl Scalar for RationalFunction {
    fn zero() -> Self {
        RationalFunction::from(0)
    }
    fn one() -> Self {
        RationalFunction::from(1)
    }
    fn from_i64(v: i64) -> Self {
        RationalFunction::from(v)
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        RationalFunction::inv(self)
    }
    fn from_rational(q: BigRational) -> Self {
        RationalFunction::from_rational(&q)
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self> {
        if self.is_polynomial() && rhs.is_polynomial() {
            if let Some(q) = self.numer().div_exact(rhs.numer()) {
                return Ok(RationalFunction::from_poly(q));
            }
        }
        Scalar::div(self, rhs)
    }
    fn signum(&self) -> Option<Ordering> {
        None
    }
    fn to_json(&self) -> Value {
        let enc = |p: &Poly| -> Vec<String> {
            if p.is_zero() {
                vec!["0".to_string()]
            } else {
                p.coeffs().iter().map(|c| c.to_string()).collect()
            }
        };
        json!({"num": enc(self.numer()), "den": enc(self.denom())})
    }
    fn from_json(v: &Value) -> Result<Self> {
        rational_function_from_json(v)
    }
}

/// Parse the coefficient JSON encoding back into a rational function.
pub fn rational_function_from_json(v: &Value) -> Result<RationalFunction> {
    let side = |key: &str| -> Result<Poly> {
        let arr = v
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse(format!("missing coefficient field {key:?}")))?;
        arr.iter()
            .map(|c| {
                let s = c.as_str().map(str::to_string).unwrap_or_else(|| c.to_string());
                s.parse::<BigInt>().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Poly::from_coeffs)
    };
    RationalFunction::new(side("num")?, side("den")?)
}

/// Quantum integer `[n]` as a polynomial: `[0]=0, [1]=1, [n+1] = δ[n] - [n-1]`.
pub fn quantum_int(n: usize) -> Poly {
    let mut prev = Poly::zero();
    let mut cur = Poly::one();
    if n == 0 {
        return prev;
    }
    let d = Poly::delta();
    for _ in 1..n {
        let next = &(&d * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Quantum integer `[n]` computed directly in a coefficient field at `δ = delta`.
pub fn quantum_int_at<K: Scalar>(n: usize, delta: &K) -> K {
    let mut prev = K::zero();
    let mut cur = K::one();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = delta.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// How the loop parameter is treated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaMode {
    Symbolic,
    Fixed(BigRational),
}

impl DeltaMode {
    pub fn fixed(n: i64, d: i64) -> Self {
        DeltaMode::Fixed(BigRational::new(n.into(), d.into()))
    }

    pub fn value(&self) -> Option<&BigRational> {
        match self {
            DeltaMode::Symbolic => None,
            DeltaMode::Fixed(v) => Some(v),
        }
    }
}

impl Display for DeltaMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DeltaMode::Symbolic => write!(f, "symbolic"),
            DeltaMode::Fixed(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for DeltaMode {
    type Err = Error;

    /// `"symbolic"`, an integer, or `"p/q"`; fixed values must be non-negative.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("symbolic") {
            return Ok(DeltaMode::Symbolic);
        }
        let bad = || Error::Parse(format!("invalid delta {s:?}; expected \"p/q\" or \"symbolic\""));
        let v = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        if v.is_negative() {
            return Err(Error::Parse(format!("delta must be non-negative, got {v}")));
        }
        Ok(DeltaMode::Fixed(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_int_examples() {
        assert_eq!(quantum_int(0), Poly::zero());
        assert_eq!(quantum_int(1), Poly::one());
        assert_eq!(quantum_int(2), Poly::delta());
        assert_eq!(quantum_int(3), Poly::from_i64s(&[-1, 0, 1]));
        assert_eq!(quantum_int(4), Poly::from_i64s(&[0, -2, 0, 1]));
    }

    #[test]
    fn quantum_int_degenerates_at_two() {
        let two = BigRational::from_i64(2);
        for n in 0..=20 {
            assert_eq!(quantum_int(n).eval(&two), BigRational::from_i64(n as i64));
            assert_eq!(quantum_int_at(n, &two), BigRational::from_i64(n as i64));
        }
    }

    #[test]
    fn quantum_int_routes_agree() {
        let d = BigRational::new(5.into(), 2.into());
        for n in 0..12 {
            assert_eq!(quantum_int(n).eval(&d), quantum_int_at(n, &d));
        }
    }

    #[test]
    fn delta_mode_parsing() {
        assert_eq!("symbolic".parse::<DeltaMode>().unwrap(), DeltaMode::Symbolic);
        assert_eq!("5/2".parse::<DeltaMode>().unwrap(), DeltaMode::fixed(5, 2));
        assert_eq!("3".parse::<DeltaMode>().unwrap(), DeltaMode::fixed(3, 1));
        assert!("-1".parse::<DeltaMode>().is_err());
        assert!("1/0".parse::<DeltaMode>().is_err());
        assert!("x".parse::<DeltaMode>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = RationalFunction::new(Poly::from_i64s(&[-1, 0, 1]), Poly::from_i64s(&[0, 2])).unwrap();
        let v = f.to_json();
        assert_eq!(v, json!({"num": ["-1", "0", "1"], "den": ["0", "2"]}));
        assert_eq!(rational_function_from_json(&v).unwrap(), f);
    }
}
