use num_rational::BigRational;
use serde::Serialize;

use crate::coeff::{quantum_int_at, Scalar};
use crate::diagram::{hom_basis, tensor, Mode, Morphism, Tl};
use crate::error::{Error, Result};
use crate::gram::bareiss;
use crate::word::{Sign, Word};

/// A self-adjoint idempotent endomorphism of `word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection<K> {
    word: Word,
    element: Morphism<K>,
}

impl<K: Scalar> Projection<K> {
    /// Checks `p ∘ p = p` and `p* = p`.
    pub fn new(tl: &Tl<K>, element: Morphism<K>) -> Result<Self> {
        if !element.is_endomorphism() {
            return Err(Error::NotProjection(format!(
                "{} -> {} is not an endomorphism",
                element.source(),
                element.target()
            )));
        }
        if tl.compose(&element, &element)? != element {
            return Err(Error::NotProjection("not idempotent".into()));
        }
        if element.star() != element {
            return Err(Error::NotProjection("not self-adjoint".into()));
        }
        Ok(Projection { word: element.source().clone(), element })
    }

    pub(crate) fn new_unchecked(element: Morphism<K>) -> Self {
        Projection { word: element.source().clone(), element }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn element(&self) -> &Morphism<K> {
        &self.element
    }

    pub fn into_element(self) -> Morphism<K> {
        self.element
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(Projection::new_unchecked(tensor(&self.element, &other.element)?))
    }

    /// The same projection viewed in another mode (e.g. inside USTL).
    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        Ok(Projection::new_unchecked(self.element.with_mode(mode)?))
    }
}

/// Jones-Wenzl idempotent `f_n^sign` on the alternating object of length `n`
/// starting with `sign`, by the Wenzl recursion
/// `f_{k+1} = f_k ⊗ 1 - ([k]/[k+1]) (f_k ⊗ 1) e_k (f_k ⊗ 1)`.
pub fn jones_wenzl<K: Scalar>(tl: &Tl<K>, n: usize, sign: Sign) -> Result<Projection<K>> {
    jones_wenzl_in(tl, n, sign, Mode::Oriented)
}

fn jones_wenzl_in<K: Scalar>(tl: &Tl<K>, n: usize, sign: Sign, mode: Mode) -> Result<Projection<K>> {
    let mut f = Morphism::identity(&Word::alternating(sign, n.min(1)), mode);
    for k in 1..n {
        let q_k = quantum_int_at(k, tl.delta());
        let q_next = quantum_int_at(k + 1, tl.delta());
        if q_next.is_zero() {
            return Err(Error::Singular { n: k + 1, delta: tl.delta().to_string() });
        }
        let obj = Word::alternating(sign, k + 1);
        let last = Word::new(vec![obj.get(k)]);
        let lifted = tensor(&f, &Morphism::identity(&last, mode))?;
        let e = Morphism::cup_cap(&obj, k - 1, mode)?;
        let sandwich = tl.compose(&lifted, &tl.compose(&e, &lifted)?)?;
        f = lifted.sub(&sandwich.scale(&q_k.div(&q_next)?))?;
    }
    Ok(Projection::new_unchecked(f))
}

/// Place `f^{ε_i}_{|v_i|}` on every MAS block `v_i` of `v` (block `v_i`
/// starting with `ε_i`) and tensor them together.
pub fn f_vv<K: Scalar>(tl: &Tl<K>, v: &Word) -> Result<Projection<K>> {
    let dec = v.mas_decompose()?;
    let mut acc: Option<Projection<K>> = None;
    for block in &dec.blocks {
        let jw = jones_wenzl(tl, block.len(), block.first().unwrap())?;
        acc = Some(match acc {
            None => jw,
            Some(p) => p.tensor(&jw)?,
        });
    }
    Ok(acc.expect("nonempty word has a block"))
}

/// Rank of `{ p ∘ x ∘ q : x a diagram of Hom(q.word, p.word) }`, the
/// dimension of the compressed hom space between the images of `q` and `p`.
pub fn compressed_hom_rank<K: Scalar>(tl: &Tl<K>, p: &Projection<K>, q: &Projection<K>) -> Result<usize> {
    let mode = p.element().mode();
    if q.element().mode() != mode {
        return Err(Error::BoundaryMismatch("projections in different modes".into()));
    }
    let basis = hom_basis(q.word(), p.word(), mode);
    let rows: Vec<Vec<K>> = basis
        .iter()
        .map(|d| {
            let x = Morphism::from_diagram(q.word().clone(), p.word().clone(), d.clone())?;
            let y = tl.compose(p.element(), &tl.compose(&x, q.element())?)?;
            y.coordinates(&basis)
        })
        .collect::<Result<_>>()?;
    Ok(bareiss(&rows).rank)
}

/// Minimality at a fixed `δ`: the compressed endomorphism space `p End(v) p`
/// is one-dimensional. Fails on inputs that are not projections.
pub fn is_minimal(tl: &Tl<BigRational>, p: &Morphism<BigRational>) -> Result<bool> {
    let p = Projection::new(tl, p.clone())?;
    Ok(compressed_hom_rank(tl, &p, &p)? == 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplesReport {
    pub words: Vec<Word>,
    /// Ordered pairs `(u, v)`, `u != v`, whose compressed hom space was computed.
    pub pairs_checked: usize,
    /// Pairs with a nonzero compressed hom space.
    pub failures: Vec<(Word, Word)>,
}

impl SimplesReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Representatives `∅` and every word of length `1..=max_len`; pairwise
/// non-isomorphism of `f_vv` is checked for words of length at most 3.
pub fn simple_objects(tl: &Tl<BigRational>, max_len: usize) -> Result<SimplesReport> {
    let words: Vec<Word> = Word::all_up_to(max_len).collect();
    let checked: Vec<(Word, Projection<BigRational>)> = words
        .iter()
        .filter(|w| w.len() <= 3)
        .map(|w| {
            let p = if w.is_empty() {
                Projection::new_unchecked(Morphism::identity(w, Mode::Oriented))
            } else {
                f_vv(tl, w)?
            };
            Ok((w.clone(), p))
        })
        .collect::<Result<_>>()?;
    let mut pairs_checked = 0;
    let mut failures = Vec::new();
    for (u, pu) in &checked {
        for (v, pv) in &checked {
            if u == v {
                continue;
            }
            pairs_checked += 1;
            if compressed_hom_rank(tl, pv, pu)? != 0 {
                failures.push((u.clone(), v.clone()));
            }
        }
    }
    Ok(SimplesReport { words, pairs_checked, failures })
}

pub(crate) fn jones_wenzl_unshaded<K: Scalar>(tl: &Tl<K>, n: usize) -> Result<Projection<K>> {
    jones_wenzl_in(tl, n, Sign::Plus, Mode::Unshaded)
}
