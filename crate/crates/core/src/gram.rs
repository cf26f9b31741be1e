//! Gram matrices of the diagram form and exact linear algebra over the
//! coefficient field.

#![allow(clippy::needless_range_loop)]

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::coeff::{DeltaMode, RationalFunction, Scalar};
use crate::diagram::{Morphism, PairingDiagram, Tl};
use crate::error::{Error, Result};
use crate::word::Word;

pub type Matrix<K> = Vec<Vec<K>>;

/// Result of fraction-free (Bareiss) row reduction.
#[derive(Clone, Debug)]
pub struct Echelon<K> {
    pub rank: usize,
    /// Determinant when the matrix is square, zero if singular.
    pub determinant: Option<K>,
    /// Pivot columns in order.
    pub pivots: Vec<usize>,
}

/// Bareiss elimination with row pivoting. Every division is exact when the
/// entries lie in a polynomial ring, so symbolic Gram matrices never leave it.
/// Numeric matrices are scaled to integers first.
pub fn bareiss<K: Scalar>(m: &Matrix<K>) -> Echelon<K> {
    if let Some((a, scale)) = K::clear_denominators(m) {
        let ech = bareiss_in(a, BigInt::one(), |x, d| x / d);
        let n = m.len() as u32;
        return Echelon {
            rank: ech.rank,
            determinant: ech.determinant.map(|d| K::from_rational(BigRational::new(d, scale.pow(n)))),
            pivots: ech.pivots,
        };
    }
    bareiss_in(m.clone(), K::one(), |x, d| x.exact_div(d).expect("Bareiss divisor is a previous nonzero pivot"))
}

/// The ring operations elimination needs.
trait Elim: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn neg(self) -> Self;
    /// `a b - c d`
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Self;
}

impl<K: Scalar> Elim for K {
    fn zero() -> Self {
        <K as Scalar>::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn neg(self) -> Self {
        -self
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a.clone() * b.clone() - c.clone() * d.clone()
    }
}

impl Elim for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn neg(self) -> Self {
        -self
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a * b - c * d
    }
}

fn bareiss_in<T: Elim>(mut a: Vec<Vec<T>>, one: T, exact_div: impl Fn(T, &T) -> T) -> Echelon<T> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = one.clone();
    let mut negate = false;
    let mut k = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        if k == rows {
            break;
        }
        let Some(r) = (k..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        if r != k {
            a.swap(r, k);
            negate = !negate;
        }
        let piv = a[k][col].clone();
        for i in k + 1..rows {
            let lead = a[i][col].clone();
            for j in col + 1..cols {
                let num = T::cross(&piv, &a[i][j], &lead, &a[k][j]);
                a[i][j] = exact_div(num, &prev);
            }
            a[i][col] = T::zero();
        }
        prev = piv;
        pivots.push(col);
        k += 1;
    }
    let determinant = (rows == cols).then(|| {
        if k < rows {
            T::zero()
        } else if rows == 0 {
            one
        } else if negate {
            a[rows - 1][cols - 1].clone().neg()
        } else {
            a[rows - 1][cols - 1].clone()
        }
    });
    Echelon { rank: k, determinant, pivots }
}

/// Leading principal minors `Δ_1, ..., Δ_n`, read off as the pivots of
/// Bareiss elimination without row exchanges. Stops at the first vanishing
/// minor (the returned list is then shorter than `n`, ending in zero).
pub fn leading_principal_minors<K: Scalar>(m: &Matrix<K>) -> Vec<K> {
    if let Some((a, scale)) = K::clear_denominators(m) {
        let mut s = BigInt::one();
        return minors_in(a, BigInt::one(), |x, d| x / d)
            .into_iter()
            .map(|x| {
                s *= &scale;
                K::from_rational(BigRational::new(x, s.clone()))
            })
            .collect();
    }
    minors_in(m.clone(), K::one(), |x, d| x.exact_div(d).expect("previous pivot is nonzero"))
}

fn minors_in<T: Elim>(mut a: Vec<Vec<T>>, one: T, exact_div: impl Fn(T, &T) -> T) -> Vec<T> {
    let n = a.len();
    let mut prev = one;
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        let piv = a[k][k].clone();
        minors.push(piv.clone());
        if piv.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = T::cross(&piv, &a[i][j], &a[i][k], &a[k][j]);
                a[i][j] = exact_div(num, &prev);
            }
        }
        prev = piv;
    }
    minors
}

/// Sylvester's criterion for a symmetric matrix: positive definite iff every
/// leading principal minor is positive. `None` when entries are symbolic.
pub fn sylvester_positive_definite<K: Scalar>(m: &Matrix<K>) -> Option<bool> {
    for minor in leading_principal_minors(m) {
        match minor.signum()? {
            Ordering::Greater => {}
            _ => return Some(false),
        }
    }
    Some(true)
}

/// Basis of the right kernel `{x : m x = 0}` by Gauss-Jordan reduction.
pub fn nullspace<K: Scalar>(m: &Matrix<K>) -> Vec<Vec<K>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].inv().unwrap();
        for j in c..cols {
            a[r][j] = a[r][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let v = a[i][j].clone() - f.clone() * a[r][j].clone();
                    a[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![K::zero(); cols];
            v[fc] = K::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][fc].clone();
            }
            v
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct GramReport<K> {
    pub word: Word,
    pub basis_size: usize,
    pub matrix: Matrix<K>,
    pub rank: usize,
    pub determinant: K,
    pub nullspace_basis: Vec<Vec<K>>,
    /// Only decided when the entries are numbers.
    pub positive_definite: Option<bool>,
}

impl<K: Scalar> GramReport<K> {
    pub fn nullity(&self) -> usize {
        self.nullspace_basis.len()
    }

    pub fn to_json(&self, delta: &DeltaMode) -> Value {
        let enc = |rows: &Matrix<K>| -> Vec<Vec<Value>> {
            rows.iter().map(|r| r.iter().map(Scalar::to_json).collect()).collect()
        };
        let mut v = json!({
            "word": self.word.to_string(),
            "delta": delta.to_string(),
            "basis_size": self.basis_size,
            "matrix": enc(&self.matrix),
            "rank": self.rank,
            "determinant": self.determinant.to_json(),
            "nullspace_basis": enc(&self.nullspace_basis),
        });
        if let Some(pd) = self.positive_definite {
            v["positive_definite"] = json!(pd);
        }
        v
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "word {}  basis {}  rank {}  det {}",
            if self.word.is_empty() { "∅".to_string() } else { self.word.to_string() },
            self.basis_size,
            self.rank,
            self.determinant
        );
        if let Some(pd) = self.positive_definite {
            s.push_str(&format!("  positive definite {pd}"));
        }
        s.push('\n');
        for row in &self.matrix {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            s.push_str(&format!("  [{}]\n", cells.join(", ")));
        }
        s
    }

    /// The matrix as CSV, one row per line.
    pub fn to_csv(&self) -> String {
        self.matrix
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .map(|l| l + "\n")
            .collect()
    }
}

/// Gram matrix of `[·,·]_w` on the given elements of the disc space `w`.
pub fn gram_matrix<K: Scalar>(tl: &Tl<K>, w: &Word, basis: &[Morphism<K>]) -> Result<GramReport<K>> {
    for b in basis {
        if &b.color() != w {
            return Err(Error::BoundaryMismatch(format!("basis element of color {} in Gram of {w}", b.color())));
        }
    }
    let matrix: Matrix<K> = basis
        .iter()
        .map(|x| basis.iter().map(|y| tl.inner_product(x, y)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(report_from_matrix(w.clone(), matrix))
}

/// Gram matrix on a list of diagrams (each a basis vector of its own).
pub fn gram_of_diagrams<K: Scalar>(tl: &Tl<K>, w: &Word, diagrams: &[PairingDiagram]) -> Result<GramReport<K>> {
    let basis: Vec<Morphism<K>> = diagrams.iter().cloned().map(Morphism::element).collect();
    gram_matrix(tl, w, &basis)
}

fn report_from_matrix<K: Scalar>(word: Word, matrix: Matrix<K>) -> GramReport<K> {
    let ech = bareiss(&matrix);
    let nullspace_basis = if ech.rank == matrix.len() { Vec::new() } else { nullspace(&matrix) };
    let positive_definite = sylvester_positive_definite(&matrix);
    GramReport {
        word,
        basis_size: matrix.len(),
        rank: ech.rank,
        determinant: ech.determinant.unwrap_or_else(K::zero),
        nullspace_basis,
        positive_definite,
        matrix,
    }
}

/// Gram report of the oriented spanning set of `w`, symbolically.
pub fn symbolic_gram(w: &Word) -> Result<GramReport<RationalFunction>> {
    gram_of_diagrams(&Tl::symbolic(), w, &crate::freext::spanning_set(w))
}

/// Gram report of the oriented spanning set of `w` at a fixed `δ`.
pub fn fixed_gram(w: &Word, delta: &BigRational) -> Result<GramReport<BigRational>> {
    gram_of_diagrams(&Tl::fixed(delta.clone()), w, &crate::freext::spanning_set(w))
}

/// `dim D_w / J_w`: the rank of the form on the spanning set.
pub fn quotient_dim(w: &Word, mode: &DeltaMode) -> Result<usize> {
    Ok(match mode {
        DeltaMode::Symbolic => symbolic_gram(w)?.rank,
        DeltaMode::Fixed(d) => fixed_gram(w, d)?.rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Poly;
    use crate::diagram::{enumerate_oriented_tl, Mode};
    use proptest::prelude::*;

    type Rf = RationalFunction;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n)
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Cofactor-expansion determinant, independent of elimination.
    fn det_cofactor<K: Scalar>(m: &Matrix<K>) -> K {
        let n = m.len();
        if n == 0 {
            return K::one();
        }
        let mut acc = K::zero();
        for c in 0..n {
            let minor: Matrix<K> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = m[0][c].clone() * det_cofactor(&minor);
            acc = if c % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    fn leading_minor<K: Scalar>(m: &Matrix<K>, k: usize) -> Matrix<K> {
        m[..k].iter().map(|r| r[..k].to_vec()).collect()
    }

    #[test]
    fn alternating_four_points_symbolic() {
        let r = symbolic_gram(&w("+-+-")).unwrap();
        let d = Rf::delta();
        let d2 = Rf::from_poly(Poly::from_i64s(&[0, 0, 1]));
        assert_eq!(r.matrix, vec![vec![d2.clone(), d.clone()], vec![d, d2]]);
        assert_eq!(r.determinant, Rf::from_poly(Poly::from_i64s(&[0, 0, -1, 0, 1])));
        assert_eq!(r.rank, 2);
        assert_eq!(r.positive_definite, None);
    }

    #[test]
    fn alternating_four_points_at_two() {
        let r = fixed_gram(&w("+-+-"), &q(2)).unwrap();
        assert_eq!(r.determinant, q(12));
        assert_eq!(r.positive_definite, Some(true));
    }

    #[test]
    fn unbalanced_word_has_empty_gram() {
        let r = symbolic_gram(&w("++")).unwrap();
        assert_eq!(r.basis_size, 0);
        assert_eq!(r.rank, 0);
        assert!(r.matrix.is_empty());
    }

    #[test]
    fn quotient_dim_examples() {
        assert_eq!(quotient_dim(&w("+-+-"), &DeltaMode::fixed(3, 1)).unwrap(), 2);
        assert_eq!(quotient_dim(&w("+--+"), &DeltaMode::fixed(3, 1)).unwrap(), 1);
        assert_eq!(quotient_dim(&w("++"), &DeltaMode::fixed(3, 1)).unwrap(), 0);
        assert_eq!(quotient_dim(&w(""), &DeltaMode::Symbolic).unwrap(), 1);
    }

    #[test]
    fn degenerate_delta_has_a_null_vector() {
        // at δ = 1 the two diagrams on +-+- have equal Gram rows
        let r = fixed_gram(&w("+-+-"), &q(1)).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.nullity(), 1);
        assert_eq!(r.positive_definite, Some(false));
        let tl = Tl::fixed(q(1));
        let basis = enumerate_oriented_tl(&w("+-+-"));
        let mut x = Morphism::<BigRational>::zero(Word::empty(), w("+-+-"), Mode::Oriented);
        for (d, c) in basis.iter().zip(&r.nullspace_basis[0]) {
            x.add_term(d.clone(), c.clone()).unwrap();
        }
        for d in &basis {
            assert_eq!(tl.inner_product(&x, &Morphism::element(d.clone())).unwrap(), q(0));
        }
    }

    #[test]
    fn bareiss_agrees_with_cofactor_and_minors_on_grams() {
        for x in Word::all_up_to(6) {
            let s = symbolic_gram(&x).unwrap();
            assert_eq!(s.determinant, det_cofactor(&s.matrix), "{x}");
            for d in [q(2), BigRational::new(5.into(), 2.into()), q(3)] {
                let f = fixed_gram(&x, &d).unwrap();
                assert_eq!(s.determinant.eval_at(&d).unwrap(), f.determinant, "{x}");
                let minors = leading_principal_minors(&f.matrix);
                for (k, m) in minors.iter().enumerate() {
                    assert_eq!(m, &det_cofactor(&leading_minor(&f.matrix, k + 1)));
                }
            }
        }
    }

    #[test]
    fn symmetric_and_rank_nullity() {
        for x in Word::all_up_to(8) {
            let r = fixed_gram(&x, &q(3)).unwrap();
            for i in 0..r.basis_size {
                for j in 0..r.basis_size {
                    assert_eq!(r.matrix[i][j], r.matrix[j][i]);
                }
            }
            assert_eq!(r.rank + r.nullity(), r.basis_size);
        }
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix<BigRational>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..4, c), r)
                .prop_map(|m| m.into_iter().map(|row| row.into_iter().map(q).collect()).collect())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_kernel(m in arb_matrix()) {
            let cols = m[0].len();
            let ech = bareiss(&m);
            let ns = nullspace(&m);
            prop_assert_eq!(ech.rank + ns.len(), cols);
            for v in &ns {
                for row in &m {
                    let dot = row.iter().zip(v).fold(q(0), |a, (x, y)| a + x * y);
                    prop_assert_eq!(dot, q(0));
                }
            }
            if m.len() == cols {
                prop_assert_eq!(ech.determinant.unwrap(), det_cofactor(&m));
            }
        }
    }
}
