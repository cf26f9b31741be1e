use std::collections::HashMap;

use num_rational::BigRational;

use super::*;
use crate::coeff::{Poly, RationalFunction, Scalar};
use crate::sample::{random_morphism, rng};
use crate::word::Word;

type Rf = RationalFunction;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn delta_pow(k: usize) -> Rf {
    Rf::from_poly(Poly::delta().pow(k as u32))
}

fn diag(word: &str, pairs: &[(usize, usize)]) -> PairingDiagram {
    PairingDiagram::new(w(word), pairs, Mode::Oriented).unwrap()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum End {
    Top(usize),
    Mid(usize),
    Bot(usize),
}

/// Composition oracle: walk every strand end to end through the middle row,
/// then count the middle points never reached as closed loops.
fn walk_compose(
    fd: &PairingDiagram,
    gd: &PairingDiagram,
    t: &Word,
    u: &Word,
    v: &Word,
) -> (HashMap<End, End>, usize) {
    let (nt, nu, nv) = (t.len(), u.len(), v.len());
    let f_end = |a: usize| if a < nv { End::Top(a) } else { End::Mid(nv + nu - 1 - a) };
    let g_end = |a: usize| if a < nu { End::Mid(a) } else { End::Bot(nu + nt - 1 - a) };
    let mut f_arc = HashMap::new();
    for (a, &b) in fd.partners().iter().enumerate() {
        f_arc.insert(f_end(a), f_end(b));
    }
    let mut g_arc = HashMap::new();
    for (a, &b) in gd.partners().iter().enumerate() {
        g_arc.insert(g_end(a), g_end(b));
    }
    let mut result = HashMap::new();
    let mut seen_mid = vec![false; nu];
    let starts: Vec<End> = (0..nv).map(End::Top).chain((0..nt).map(End::Bot)).collect();
    for s in starts {
        // from a top end we leave through f, from a bottom end through g
        let mut use_f = matches!(s, End::Top(_));
        let mut cur = s;
        loop {
            let next = if use_f { f_arc[&cur] } else { g_arc[&cur] };
            match next {
                End::Mid(j) => {
                    seen_mid[j] = true;
                    cur = next;
                    use_f = !use_f;
                }
                _ => {
                    result.insert(s, next);
                    break;
                }
            }
        }
    }
    let mut loops = 0;
    for j in 0..nu {
        if seen_mid[j] {
            continue;
        }
        loops += 1;
        let mut cur = End::Mid(j);
        let mut use_f = true;
        loop {
            if let End::Mid(k) = cur {
                seen_mid[k] = true;
            }
            cur = if use_f { f_arc[&cur] } else { g_arc[&cur] };
            use_f = !use_f;
            if cur == End::Mid(j) {
                break;
            }
        }
    }
    (result, loops)
}

/// Read a composite diagram back as a map between rectangle ends.
fn ends_of(d: &PairingDiagram, t: &Word, v: &Word) -> HashMap<End, End> {
    let (nt, nv) = (t.len(), v.len());
    let e = |a: usize| if a < nv { End::Top(a) } else { End::Bot(nv + nt - 1 - a) };
    d.partners().iter().enumerate().map(|(a, &b)| (e(a), e(b))).collect()
}

#[test]
fn composition_agrees_with_strand_walking() {
    let tl = Tl::symbolic();
    let words: Vec<Word> = Word::all_up_to(4).collect();
    let mut checked = 0;
    for t in &words {
        for u in &words {
            if (t.len() + u.len()) % 2 == 1 {
                continue;
            }
            let gs = hom_basis(t, u, Mode::Oriented);
            if gs.is_empty() {
                continue;
            }
            for v in &words {
                if (u.len() + v.len()) % 2 == 1 || u.len() + v.len() > 6 {
                    continue;
                }
                for fd in hom_basis(u, v, Mode::Oriented) {
                    for gd in &gs {
                        let f = Morphism::<Rf>::from_diagram(u.clone(), v.clone(), fd.clone()).unwrap();
                        let g = Morphism::<Rf>::from_diagram(t.clone(), u.clone(), gd.clone()).unwrap();
                        let h = tl.compose(&f, &g).unwrap();
                        let (ends, loops) = walk_compose(&fd, gd, t, u, v);
                        assert_eq!(h.num_terms(), 1);
                        let (d, c) = h.terms().next().unwrap();
                        assert_eq!(ends_of(d, t, v), ends);
                        assert_eq!(c, &delta_pow(loops));
                        d.validate().unwrap();
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 1000, "{checked}");
}

#[test]
fn composition_examples() {
    let tl = Tl::symbolic();
    // identity ∘ x = x
    let x = random_morphism::<Rf>(&mut rng(1), &w("+-"), &w("+--+"), Mode::Oriented, 3);
    assert_eq!(tl.compose(&Morphism::identity(&w("+--+"), Mode::Oriented), &x).unwrap(), x);
    assert_eq!(tl.compose(&x, &Morphism::identity(&w("+-"), Mode::Oriented)).unwrap(), x);

    // cap ∘ cup on one strand pair closes a single loop
    let cup = Morphism::<Rf>::from_diagram(Word::empty(), w("+-"), diag("+-", &[(0, 1)])).unwrap();
    let cap = cup.star();
    assert_eq!(cap.source(), &w("+-"));
    assert_eq!(cap.target(), &Word::empty());
    let s = tl.compose(&cap, &cup).unwrap();
    assert_eq!(s.coefficient(&PairingDiagram::empty(Mode::Oriented)), Rf::delta());

    // e1 ∘ e1 = δ e1
    let e1 = Morphism::<Rf>::cup_cap(&w("+-"), 0, Mode::Oriented).unwrap();
    assert_eq!(tl.compose(&e1, &e1).unwrap(), e1.scale(&Rf::delta()));

    assert!(tl.compose(&e1, &x).is_err());
}

#[test]
fn tensor_examples() {
    let id_p = Morphism::<Rf>::identity(&w("+"), Mode::Oriented);
    let id_m = Morphism::<Rf>::identity(&w("-"), Mode::Oriented);
    assert_eq!(tensor(&id_p, &id_m).unwrap(), Morphism::identity(&w("+-"), Mode::Oriented));

    let x = random_morphism::<Rf>(&mut rng(2), &w("+"), &w("+-+"), Mode::Oriented, 2);
    let unit = Morphism::<Rf>::identity(&Word::empty(), Mode::Oriented);
    assert_eq!(tensor(&x, &unit).unwrap(), x);
    assert_eq!(tensor(&unit, &x).unwrap(), x);

    let cup = Morphism::<Rf>::element(diag("+-", &[(0, 1)]));
    let cc = tensor(&cup, &cup).unwrap();
    assert_eq!(cc, Morphism::element(diag("+-+-", &[(0, 1), (2, 3)])));
}

#[test]
fn star_examples() {
    let a = Morphism::<Rf>::element(diag("+-", &[(0, 1)]));
    assert_eq!(a.star().as_element(), a);
    let e1 = Morphism::<Rf>::element(diag("+-+-", &[(0, 1), (2, 3)]));
    assert_eq!(e1.star().as_element(), e1);
    let x = random_morphism::<Rf>(&mut rng(3), &w("+-+"), &w("+"), Mode::Oriented, 3);
    assert_eq!(x.star().star(), x);
    assert_eq!(x.star().color(), x.color().involution());
}

#[test]
fn rotation_examples() {
    let e1 = Morphism::<Rf>::element(diag("+-+-", &[(0, 1), (2, 3)]));
    assert_eq!(e1.rotate(0).unwrap(), e1);
    assert_eq!(e1.rotate(1).unwrap(), Morphism::element(diag("-+-+", &[(0, 3), (1, 2)])));
    assert_eq!(e1.rotate(4).unwrap(), e1);
    assert!(e1.rotate(5).is_err());
}

#[test]
fn inner_product_examples() {
    let tl = Tl::symbolic();
    let e1 = Morphism::<Rf>::element(diag("+-+-", &[(0, 1), (2, 3)]));
    let e2 = Morphism::<Rf>::element(diag("+-+-", &[(0, 3), (1, 2)]));
    assert_eq!(tl.inner_product(&e1, &e1).unwrap(), delta_pow(2));
    assert_eq!(tl.inner_product(&e1, &e2).unwrap(), Rf::delta());
    let empty = Morphism::<Rf>::element(PairingDiagram::empty(Mode::Oriented));
    assert_eq!(tl.inner_product(&empty, &empty).unwrap(), Rf::one());
    let other = Morphism::<Rf>::element(diag("-+", &[(0, 1)]));
    assert!(tl.inner_product(&e1, &other).is_err());
}

#[test]
fn trace_examples() {
    let tl = Tl::symbolic();
    let id = Morphism::<Rf>::identity(&w("+"), Mode::Oriented);
    for side in [Side::Left, Side::Right] {
        assert_eq!(tl.trace_close(&id, side).unwrap(), Rf::delta());
    }
    // e1 closes to a single loop on either side
    let e1 = Morphism::<Rf>::cup_cap(&w("+-"), 0, Mode::Oriented).unwrap();
    for side in [Side::Left, Side::Right] {
        assert_eq!(tl.trace_close(&e1, side).unwrap(), Rf::delta());
    }
    // f2 = 1 - δ^{-1} e1
    let f2 = Morphism::identity(&w("+-"), Mode::Oriented)
        .sub(&e1.scale(&Rf::delta().inv().unwrap()))
        .unwrap();
    for side in [Side::Left, Side::Right] {
        assert_eq!(tl.trace_close(&f2, side).unwrap(), Rf::from_poly(Poly::from_i64s(&[-1, 0, 1])));
    }
    let x = random_morphism::<Rf>(&mut rng(4), &w("+"), &w("+-+"), Mode::Oriented, 2);
    assert!(tl.trace_close(&x, Side::Left).is_err());
}

#[test]
fn self_pairing_of_a_diagram_counts_strands() {
    let tl = Tl::symbolic();
    for x in Word::all_up_to(8) {
        for d in basis(&x, Mode::Oriented) {
            let e = Morphism::<Rf>::element(d);
            assert_eq!(tl.inner_product(&e, &e).unwrap(), delta_pow(x.len() / 2));
        }
    }
}

#[test]
fn composition_is_associative_on_random_triples() {
    let tl = Tl::fixed(BigRational::from_i64(3));
    let mut r = rng(11);
    for _ in 0..200 {
        let lens: Vec<usize> = (0..4).map(|_| rand::Rng::gen_range(&mut r, 0..=3)).collect();
        let ws: Vec<Word> = lens.iter().map(|&l| crate::sample::random_word(&mut r, l)).collect();
        let h = random_morphism::<BigRational>(&mut r, &ws[0], &ws[1], Mode::Oriented, 3);
        let g = random_morphism::<BigRational>(&mut r, &ws[1], &ws[2], Mode::Oriented, 3);
        let f = random_morphism::<BigRational>(&mut r, &ws[2], &ws[3], Mode::Oriented, 3);
        let left = tl.compose(&tl.compose(&f, &g).unwrap(), &h).unwrap();
        let right = tl.compose(&f, &tl.compose(&g, &h).unwrap()).unwrap();
        assert_eq!(left, right);
        // star reverses composition
        assert_eq!(
            tl.compose(&f, &g).unwrap().star(),
            tl.compose(&g.star(), &f.star()).unwrap()
        );
    }
}

#[test]
fn rotation_invariance_and_sphericality_on_samples() {
    let tl = Tl::symbolic();
    let mut r = rng(12);
    for _ in 0..100 {
        let len = 2 * rand::Rng::gen_range(&mut r, 1..=3usize);
        let x_w = crate::sample::random_word(&mut r, len);
        let x = random_morphism::<Rf>(&mut r, &Word::empty(), &x_w, Mode::Oriented, 4);
        let y = random_morphism::<Rf>(&mut r, &Word::empty(), &x_w, Mode::Oriented, 4);
        let base = tl.inner_product(&x, &y).unwrap();
        for k in 0..=len {
            assert_eq!(tl.inner_product(&x.rotate(k).unwrap(), &y.rotate(k).unwrap()).unwrap(), base);
        }
        let vl = rand::Rng::gen_range(&mut r, 0..=4usize);
        let v = crate::sample::random_word(&mut r, vl);
        let e = random_morphism::<Rf>(&mut r, &v, &v, Mode::Oriented, 4);
        assert_eq!(
            tl.trace_close(&e, Side::Left).unwrap(),
            tl.trace_close(&e, Side::Right).unwrap()
        );
    }
}

#[test]
fn json_round_trip() {
    let x = random_morphism::<Rf>(&mut rng(5), &w("+-"), &w("+--+"), Mode::Oriented, 3)
        .scale(&Rf::delta().inv().unwrap());
    let v = x.to_json();
    assert_eq!(Morphism::<Rf>::from_json(&v).unwrap(), x);
    let u = random_morphism::<BigRational>(&mut rng(6), &w("++"), &w("++"), Mode::Unshaded, 2);
    let uv = u.to_json();
    assert_eq!(uv["mode"], "unshaded");
    assert_eq!(Morphism::<BigRational>::from_json(&uv).unwrap(), u);

    let d = diag("+-+-", &[(0, 1), (2, 3)]);
    let dj = diagram_to_json(&d);
    assert_eq!(dj, serde_json::json!({"word": "+-+-", "pairs": [[0, 1], [2, 3]]}));
    assert_eq!(diagram_from_json(&dj).unwrap(), d);
}
