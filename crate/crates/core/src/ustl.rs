//! Unshaded Temperley-Lieb and the canonical embedding of the oriented
//! category into it: an oriented diagram is sent to the same pairing with
//! the orientation forgotten.

use num_rational::BigRational;
use num_traits::FromPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coeff::Scalar;
use crate::diagram::{catalan, hom_basis, tensor, Mode, Morphism, PairingDiagram, Tl};
use crate::error::{Error, Result};
use crate::freext::{compressed_hom_rank, f_vv, jones_wenzl_unshaded, Projection};
use crate::sample::{random_morphism, random_word, SeededRng};
use crate::word::{Sign, Word};

/// An element of an unshaded hom space. Colors keep their signs for
/// bookkeeping; the pairings ignore them.
pub type UstlElement<K> = Morphism<K>;

/// The embedding on morphisms: same pairings, orientation dropped.
pub fn forget_orientation<K: Scalar>(x: &Morphism<K>) -> UstlElement<K> {
    x.with_mode(Mode::Unshaded).expect("every oriented pairing is an unshaded pairing")
}

pub fn ustl_dim(w: &Word) -> u64 {
    if w.len() % 2 == 1 {
        0
    } else {
        catalan(w.len() / 2)
    }
}

/// The straight-through unshaded diagram `(-,+) -> (+,-)`, a unitary
/// between the two alternating objects of length 2.
pub fn iso_f_plusminus(delta: &BigRational) -> Result<UstlElement<BigRational>> {
    if *delta < BigRational::from_u8(2).unwrap() {
        return Err(Error::OutOfRange(format!("delta = {delta} is below 2")));
    }
    let source = Word::alternating(Sign::Minus, 2);
    let target = Word::alternating(Sign::Plus, 2);
    let color = target.concat(&source.involution());
    let d = PairingDiagram::new(color, &[(0, 3), (1, 2)], Mode::Unshaded)?;
    Morphism::from_diagram(source, target, d)
}

/// Rank of the compressed hom space between `f_vv(v)` and `f_vv(w)` once
/// both are viewed inside USTL.
pub fn ustl_compressed_rank(tl: &Tl<BigRational>, v: &Word, w: &Word) -> Result<usize> {
    let p = f_vv(tl, v)?.with_mode(Mode::Unshaded)?;
    let q = f_vv(tl, w)?.with_mode(Mode::Unshaded)?;
    compressed_hom_rank(tl, &p, &q)
}

/// Minimality of `f_vv(v)` inside USTL.
pub fn ustl_is_minimal(tl: &Tl<BigRational>, v: &Word) -> Result<bool> {
    Ok(ustl_compressed_rank(tl, v, v)? == 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct UstlSimplesReport {
    pub labels: Vec<usize>,
    /// `(n, compressed End rank)` for each checked label.
    pub end_ranks: Vec<(usize, usize)>,
    pub pairs_checked: usize,
    pub failures: Vec<(usize, usize)>,
}

impl UstlSimplesReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.end_ranks.iter().all(|&(_, r)| r == 1)
    }
}

/// Simple objects of USTL are labelled by strand count. The JW images for
/// `n <= 2` are checked to be minimal and pairwise non-isomorphic.
pub fn ustl_simples(tl: &Tl<BigRational>, max_n: usize) -> Result<UstlSimplesReport> {
    let labels: Vec<usize> = (0..=max_n).collect();
    let checked: Vec<(usize, Projection<BigRational>)> = labels
        .iter()
        .filter(|&&n| n <= 2)
        .map(|&n| Ok((n, jones_wenzl_unshaded(tl, n)?)))
        .collect::<Result<_>>()?;
    let mut end_ranks = Vec::new();
    let mut failures = Vec::new();
    let mut pairs_checked = 0;
    for (n, p) in &checked {
        end_ranks.push((*n, compressed_hom_rank(tl, p, p)?));
        for (m, q) in &checked {
            if n != m {
                pairs_checked += 1;
                if compressed_hom_rank(tl, p, q)? != 0 {
                    failures.push((*n, *m));
                }
            }
        }
    }
    Ok(UstlSimplesReport { labels, end_ranks, pairs_checked, failures })
}

/// Outcome of checking that the embedding commutes with the structure maps.
#[derive(Clone, Debug, Default, Serialize)]
pub struct EmbeddingReport {
    pub injectivity_words: usize,
    pub checks: usize,
    pub failures: Vec<Value>,
}

impl EmbeddingReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failures.push(witness());
        }
    }
}

/// Distinct oriented diagrams stay distinct after forgetting, for every word
/// up to `max_len`.
pub fn check_injectivity(max_len: usize, report: &mut EmbeddingReport) {
    for w in Word::all_up_to(max_len) {
        let basis = hom_basis(&Word::empty(), &w, Mode::Oriented);
        let mut images: Vec<PairingDiagram> =
            basis.iter().map(|d| d.with_mode(Mode::Unshaded).expect("valid")).collect();
        images.sort();
        images.dedup();
        report.injectivity_words += 1;
        report.record(images.len() == basis.len(), || json!({"op": "injectivity", "word": w}));
    }
}

fn diagrams_between<K: Scalar>(u: &Word, v: &Word) -> Vec<Morphism<K>> {
    hom_basis(u, v, Mode::Oriented)
        .into_iter()
        .map(|d| Morphism::from_diagram(u.clone(), v.clone(), d).expect("basis diagram"))
        .collect()
}

fn words_with(max_len: usize) -> Vec<Word> {
    Word::all_up_to(max_len).collect()
}

/// Exhaustive intertwining checks for hom spaces whose disc color has at
/// most `max_len` points.
pub fn check_intertwining_exhaustive<K: Scalar>(tl: &Tl<K>, max_len: usize, report: &mut EmbeddingReport) -> Result<()> {
    let words = words_with(max_len);
    let f = forget_orientation::<K>;
    for u in &words {
        for v in words.iter().filter(|v| u.len() + v.len() <= max_len) {
            let uv = diagrams_between::<K>(u, v);
            if uv.is_empty() {
                continue;
            }
            for x in &uv {
                report.record(f(&x.star()) == f(x).star(), || json!({"op": "star", "diagram": x.to_json()}));
            }
            for w in words.iter().filter(|w| v.len() + w.len() <= max_len) {
                for y in diagrams_between::<K>(v, w) {
                    for x in &uv {
                        let lhs = f(&tl.compose(&y, x)?);
                        let rhs = tl.compose(&f(&y), &f(x))?;
                        report.record(lhs == rhs, || json!({"op": "compose", "f": y.to_json(), "g": x.to_json()}));
                    }
                }
            }
        }
    }
    for w in &words {
        let elems = diagrams_between::<K>(&Word::empty(), w);
        for x in &elems {
            for k in 0..=w.len() {
                report.record(f(&x.rotate(k)?) == f(x).rotate(k)?, || {
                    json!({"op": "rotate", "k": k, "element": x.to_json()})
                });
            }
            for y in &elems {
                let ok = tl.inner_product(x, y)? == tl.inner_product(&f(x), &f(y))?;
                report.record(ok, || json!({"op": "inner_product", "x": x.to_json(), "y": y.to_json()}));
            }
        }
        for w2 in words.iter().filter(|w2| w.len() + w2.len() <= max_len) {
            for y in diagrams_between::<K>(&Word::empty(), w2) {
                for x in &elems {
                    let ok = f(&tensor(x, &y)?) == tensor(&f(x), &f(&y))?;
                    report.record(ok, || json!({"op": "tensor", "f": x.to_json(), "g": y.to_json()}));
                }
            }
        }
    }
    Ok(())
}

/// Random composites `(a ∘ b) ⊗ c` followed by a rotation and an inner
/// product, compared before and after forgetting. Every word involved has
/// at most `max_word` letters.
pub fn check_intertwining_random<K: Scalar>(
    tl: &Tl<K>,
    max_word: usize,
    samples: usize,
    rng: &mut SeededRng,
    report: &mut EmbeddingReport,
) -> Result<()> {
    use rand::Rng;
    let f = forget_orientation::<K>;
    let mut done = 0;
    while done < samples {
        let lens: [usize; 4] = std::array::from_fn(|_| rng.gen_range(0..=max_word));
        let [u, v, w, c] = lens.map(|n| random_word(rng, n));
        let b = random_morphism::<K>(rng, &u, &v, Mode::Oriented, 3);
        let a = random_morphism::<K>(rng, &v, &w, Mode::Oriented, 3);
        let e = random_morphism::<K>(rng, &Word::empty(), &c, Mode::Oriented, 3);
        if a.is_zero() || b.is_zero() || e.is_zero() {
            continue;
        }
        done += 1;
        let composite = tensor(&tl.compose(&a, &b)?, &e)?;
        let k = rng.gen_range(0..=composite.color().len());
        let lhs = f(&composite.rotate(k)?);
        let rhs = tensor(&tl.compose(&f(&a), &f(&b))?, &f(&e))?.rotate(k)?;
        let ok = lhs == rhs && tl.inner_product(&composite, &composite)? == tl.inner_product(&f(&composite), &f(&composite))?;
        report.record(ok, || json!({"op": "random_composite", "a": a.to_json(), "b": b.to_json(), "c": e.to_json(), "k": k}));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::RationalFunction;
    use crate::sample::rng;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn q(n: i64) -> BigRational {
        <BigRational as Scalar>::from_i64(n)
    }

    #[test]
    fn forgetting_the_alternating_basis() {
        let basis = hom_basis(&Word::empty(), &w("+-+-"), Mode::Oriented);
        let images: Vec<_> = basis.iter().map(|d| d.with_mode(Mode::Unshaded).unwrap()).collect();
        assert_eq!(images.len(), 2);
        assert_ne!(images[0], images[1]);
        for (a, b) in basis.iter().zip(&images) {
            assert_eq!(a.partners(), b.partners());
        }
        let unit = Morphism::<BigRational>::identity(&Word::empty(), Mode::Oriented).scale(&q(5));
        let img = forget_orientation(&unit);
        assert_eq!(img.mode(), Mode::Unshaded);
        assert_eq!(img.coefficient(&PairingDiagram::empty(Mode::Unshaded)), q(5));
    }

    #[test]
    fn dims() {
        assert_eq!(ustl_dim(&w("++")), 1);
        assert_eq!(ustl_dim(&w("--")), 1);
        assert_eq!(ustl_dim(&w("+-+-")), 2);
        assert_eq!(ustl_dim(&w("+++")), 0);
        for x in Word::all_up_to(10) {
            assert_eq!(ustl_dim(&x), ustl_dim(&Word::alternating(Sign::Plus, x.len())));
            assert_eq!(ustl_dim(&x), hom_basis(&Word::empty(), &x, Mode::Unshaded).len() as u64);
        }
    }

    #[test]
    fn plus_minus_unitary() {
        let tl = Tl::fixed(q(3));
        let u = iso_f_plusminus(&q(3)).unwrap();
        assert_eq!(u.source(), &w("-+"));
        assert_eq!(u.target(), &w("+-"));
        assert_eq!(tl.compose(&u.star(), &u).unwrap(), Morphism::identity(&w("-+"), Mode::Unshaded));
        assert_eq!(tl.compose(&u, &u.star()).unwrap(), Morphism::identity(&w("+-"), Mode::Unshaded));
        assert!(iso_f_plusminus(&BigRational::new(3.into(), 2.into())).is_err());
        // in the oriented category the two JW images are not isomorphic
        let p = f_vv(&tl, &w("+-")).unwrap();
        let m = f_vv(&tl, &w("-+")).unwrap();
        assert_eq!(compressed_hom_rank(&tl, &p, &m).unwrap(), 0);
        assert_eq!(ustl_compressed_rank(&tl, &w("+-"), &w("-+")).unwrap(), 1);
        assert_eq!(ustl_compressed_rank(&tl, &w("+-+-"), &w("-+-+")).unwrap(), 1);
    }

    #[test]
    fn simples_and_minimality() {
        let tl = Tl::fixed(q(3));
        let r = ustl_simples(&tl, 2).unwrap();
        assert_eq!(r.labels, vec![0, 1, 2]);
        assert_eq!(r.end_ranks, vec![(0, 1), (1, 1), (2, 1)]);
        assert_eq!(r.pairs_checked, 6);
        assert!(r.pass());
        assert!(!ustl_is_minimal(&tl, &w("++")).unwrap());
        assert_eq!(ustl_compressed_rank(&tl, &w("++"), &w("++")).unwrap(), 2);
        assert!(ustl_is_minimal(&tl, &w("+-")).unwrap());
        assert!(ustl_is_minimal(&tl, &w("+")).unwrap());
    }

    #[test]
    fn injective_up_to_eight() {
        let mut r = EmbeddingReport::default();
        check_injectivity(8, &mut r);
        assert!(r.pass());
        assert_eq!(r.injectivity_words, (0..=8).map(|n| 1usize << n).sum::<usize>());
    }

    #[test]
    fn intertwines_structure_maps() {
        let tl = Tl::<RationalFunction>::symbolic();
        let mut r = EmbeddingReport::default();
        check_intertwining_exhaustive(&tl, 6, &mut r).unwrap();
        assert!(r.pass(), "{:?}", r.failures.first());
        assert!(r.checks > 1000, "{}", r.checks);
        let before = r.checks;
        check_intertwining_random(&tl, 3, 100, &mut rng(11), &mut r).unwrap();
        assert_eq!(r.checks, before + 100);
        assert!(r.pass());
    }
}
