//! The free oriented extension of Temperley-Lieb: spanning sets built by the
//! MAS overlay recursion, the parity split map, Jones-Wenzl and `f_{vv*}`
//! projections, annular adjoints and simple objects.

mod annular;
mod projection;

use serde::Serialize;

use crate::coeff::Scalar;
use crate::diagram::{enumerate_oriented_tl, noncrossing_matchings, pairs_cross, Mode, PairingDiagram, Tl};
use crate::error::{Error, Result};
use crate::word::{Word, WordClass};

pub use annular::{all_annular_tangles, annular_adjoint_check, AdjointReport, AnnularTangle};
pub use projection::{
    compressed_hom_rank, f_vv, is_minimal, jones_wenzl, simple_objects, Projection, SimplesReport,
};
pub(crate) use projection::jones_wenzl_unshaded;

/// Networkless diagram basis of the disc colored `w`. For the TL instance
/// this is the oriented Temperley-Lieb basis; [`overlay_spanning_set`]
/// rebuilds the same set through the MAS recursion.
pub fn spanning_set(w: &Word) -> Vec<PairingDiagram> {
    enumerate_oriented_tl(w)
}

/// The spanning set assembled from the structure of `w` alone: shaded
/// diagrams on alternating words, planar overlays of the odd and even parts
/// on words that start and end with the same sign, and rotations for every
/// other balanced word. Output is sorted canonically.
pub fn overlay_spanning_set(w: &Word) -> Vec<PairingDiagram> {
    let mut v = overlay_rec(w);
    v.sort();
    v
}

fn overlay_rec(w: &Word) -> Vec<PairingDiagram> {
    match w.classify() {
        WordClass::Empty => vec![PairingDiagram::empty(Mode::Oriented)],
        WordClass::Unbalanced => Vec::new(),
        // every non-crossing matching of an alternating word joins opposite signs
        WordClass::Alternating => noncrossing_matchings(w.len(), &|_, _| true)
            .into_iter()
            .map(|p| PairingDiagram::from_partner(w.clone(), p, Mode::Oriented).expect("alternating word"))
            .collect(),
        WordClass::SameEnds => {
            let (odd, even) = w.mas_parity_split().expect("same-ends balanced words have an even block count");
            let evens = overlay_rec(&even);
            let mut out = Vec::new();
            // odd parts form the outer loop
            for a in overlay_rec(&odd) {
                for b in &evens {
                    if let Some(d) = overlay(w, &a, b).expect("parts carry the parity colors") {
                        out.push(d);
                    }
                }
            }
            out
        }
        WordClass::BalancedOther => {
            let k = w.same_ends_rotation().expect("non-alternating word has equal neighbours");
            let n = w.len();
            let rotated = w.rotate(k).unwrap();
            overlay_rec(&rotated).into_iter().map(|d| d.rotate(n - k).unwrap()).collect()
        }
    }
}

/// A diagram on a same-ends word written as the overlay of its restrictions
/// to the odd- and even-indexed MAS blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlayWitness {
    pub word: Word,
    pub odd_part: PairingDiagram,
    pub even_part: PairingDiagram,
    pub combined: PairingDiagram,
}

/// Positions of `w` lying in odd-indexed (first, third, ...) and
/// even-indexed MAS blocks.
fn parity_positions(w: &Word) -> Result<(Vec<usize>, Vec<usize>)> {
    let dec = w.mas_decompose()?;
    if dec.len() % 2 != 0 {
        return Err(Error::OddBlockCount { word: w.to_string(), blocks: dec.len() });
    }
    let mut odd = Vec::new();
    let mut even = Vec::new();
    for (i, b) in dec.block_of_letter().into_iter().enumerate() {
        if b % 2 == 0 {
            odd.push(i);
        } else {
            even.push(i);
        }
    }
    Ok((odd, even))
}

fn require_same_ends(w: &Word) -> Result<()> {
    if w.classify() != WordClass::SameEnds {
        return Err(Error::Undefined(format!(
            "parity split needs a balanced non-alternating word with equal end signs, got {w}"
        )));
    }
    Ok(())
}

/// Split `x` by MAS parity class. Fails if some pair joins blocks of
/// different parity.
pub fn phi(w: &Word, x: &PairingDiagram) -> Result<OverlayWitness> {
    require_same_ends(w)?;
    if x.color() != w {
        return Err(Error::BoundaryMismatch(format!("diagram on {} given for {w}", x.color())));
    }
    let (odd_pos, even_pos) = parity_positions(w)?;
    let mut class = vec![(false, 0usize); w.len()];
    for (k, &p) in odd_pos.iter().enumerate() {
        class[p] = (false, k);
    }
    for (k, &p) in even_pos.iter().enumerate() {
        class[p] = (true, k);
    }
    let mut odd_partner = vec![0; odd_pos.len()];
    let mut even_partner = vec![0; even_pos.len()];
    for (a, b) in x.pairs() {
        let ((ca, ka), (cb, kb)) = (class[a], class[b]);
        if ca != cb {
            return Err(Error::CrossParity { word: w.to_string(), a, b });
        }
        let target = if ca { &mut even_partner } else { &mut odd_partner };
        target[ka] = kb;
        target[kb] = ka;
    }
    let (w_odd, w_even) = w.mas_parity_split()?;
    Ok(OverlayWitness {
        word: w.clone(),
        odd_part: PairingDiagram::from_partner(w_odd, odd_partner, x.mode())?,
        even_part: PairingDiagram::from_partner(w_even, even_partner, x.mode())?,
        combined: x.clone(),
    })
}

/// Re-embed an odd part and an even part on the points of `w`; `None` when
/// the combined pairing is not planar.
pub fn overlay(w: &Word, odd_part: &PairingDiagram, even_part: &PairingDiagram) -> Result<Option<PairingDiagram>> {
    if w.is_empty() {
        return Ok(if odd_part.is_empty() && even_part.is_empty() {
            Some(PairingDiagram::empty(odd_part.mode()))
        } else {
            None
        });
    }
    require_same_ends(w)?;
    let (w_odd, w_even) = w.mas_parity_split()?;
    if odd_part.color() != &w_odd || even_part.color() != &w_even {
        return Err(Error::BoundaryMismatch(format!(
            "parts colored {} / {} for {w} (expected {w_odd} / {w_even})",
            odd_part.color(),
            even_part.color()
        )));
    }
    let (odd_pos, even_pos) = parity_positions(w)?;
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(w.len() / 2);
    pairs.extend(odd_part.pairs().into_iter().map(|(a, b)| (odd_pos[a], odd_pos[b])));
    pairs.extend(even_part.pairs().into_iter().map(|(a, b)| (even_pos[a], even_pos[b])));
    for (i, &a) in pairs.iter().enumerate() {
        if pairs[i + 1..].iter().any(|&b| pairs_cross(a, b)) {
            return Ok(None);
        }
    }
    PairingDiagram::new(w.clone(), &pairs, odd_part.mode()).map(Some)
}

#[derive(Clone, Debug, Serialize)]
pub struct FormCheck {
    pub word: Word,
    pub pairs_checked: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Check `[X, Y]_w = [X_odd, Y_odd] · [X_even, Y_even]` on every pair of
/// basis diagrams of a same-ends word.
pub fn form_compatibility_check<K: Scalar>(tl: &Tl<K>, w: &Word) -> Result<FormCheck> {
    require_same_ends(w)?;
    let basis = spanning_set(w);
    let split: Vec<OverlayWitness> = basis.iter().map(|x| phi(w, x)).collect::<Result<_>>()?;
    let mut checked = 0;
    for (i, a) in split.iter().enumerate() {
        for (j, b) in split.iter().enumerate() {
            let whole = tl.diagram_inner_product(&a.combined, &b.combined)?;
            let parts = tl.diagram_inner_product(&a.odd_part, &b.odd_part)?
                * tl.diagram_inner_product(&a.even_part, &b.even_part)?;
            checked += 1;
            if whole != parts {
                return Ok(FormCheck {
                    word: w.clone(),
                    pairs_checked: checked,
                    pass: false,
                    witness: Some(format!("[{}, {}]: {whole} vs {parts}", basis[i], basis[j])),
                });
            }
        }
    }
    Ok(FormCheck { word: w.clone(), pairs_checked: checked, pass: true, witness: None })
}
