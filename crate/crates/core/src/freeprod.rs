//! Free-product combinatorics: alternating words over two label sets, and
//! the overlay count that realizes each oriented hom space inside a free
//! product.
//!
//! For a word `w` the realization circle carries one X-point per letter and
//! one h-point `h_ε` at every cyclic split between equal adjacent letters
//! `ε ε`. A realization overlays a pairing `S` of the h-points (each pair
//! joining `h_+` to `h_-`) with an oriented TL diagram `T` on the X-points,
//! jointly non-crossing. The count is the number of distinct `T` that admit
//! some such `S`.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::diagram::{enumerate_oriented_tl, noncrossing_matchings, Mode, PairingDiagram, Tl};
use crate::error::{Error, Result};
use crate::gram::gram_of_diagrams;
use crate::word::{Sign, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A word whose letters alternate between the two factors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlternatingWord {
    letters: Vec<(Side, String)>,
}

impl AlternatingWord {
    pub fn new(letters: Vec<(Side, String)>) -> Result<Self> {
        if let Some(pair) = letters.windows(2).find(|p| p[0].0 == p[1].0) {
            return Err(Error::Parse(format!("letters {} and {} sit on the same side", pair[0].1, pair[1].1)));
        }
        Ok(AlternatingWord { letters })
    }

    pub fn letters(&self) -> &[(Side, String)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "text": self.to_string(),
            "letters": self.letters.iter().map(|(s, l)| json!({"side": s, "label": l})).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for AlternatingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "∅");
        }
        let sep = if self.letters.iter().all(|(_, l)| l.chars().count() == 1) { "" } else { "·" };
        let labels: Vec<&str> = self.letters.iter().map(|(_, l)| l.as_str()).collect();
        write!(f, "{}", labels.join(sep))
    }
}

/// All alternating words of length at most `max_len`, by length, then
/// starting side (left first), then label order.
pub fn sigma0_enumerate(left_labels: &[String], right_labels: &[String], max_len: usize) -> Result<Vec<AlternatingWord>> {
    for l in left_labels.iter().chain(right_labels) {
        if l.is_empty() {
            return Err(Error::Parse("empty simple-object label".into()));
        }
    }
    let labels = |s: Side| match s {
        Side::Left => left_labels,
        Side::Right => right_labels,
    };
    let mut out = vec![AlternatingWord { letters: Vec::new() }];
    for len in 1..=max_len {
        for start in [Side::Left, Side::Right] {
            let mut layer: Vec<Vec<(Side, String)>> = vec![Vec::new()];
            let mut side = start;
            for _ in 0..len {
                layer = layer
                    .into_iter()
                    .flat_map(|prefix| {
                        labels(side).iter().map(move |l| {
                            let mut next = prefix.clone();
                            next.push((side, l.clone()));
                            next
                        })
                    })
                    .collect();
                side = side.other();
            }
            out.extend(layer.into_iter().map(|letters| AlternatingWord { letters }));
        }
    }
    Ok(out)
}

/// Number of alternating words of length exactly `k` over `m` left and `n`
/// right labels.
pub fn sigma0_count(m: u64, n: u64, k: u32) -> u64 {
    if k == 0 {
        return 1;
    }
    let (hi, lo) = (k.div_ceil(2), k / 2);
    m.pow(hi) * n.pow(lo) + n.pow(hi) * m.pow(lo)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CirclePoint {
    /// Letter `index` of the word.
    X { index: usize, sign: Sign },
    /// `h_ε = g_ε ⊗ g_ε` inserted at a split.
    H { sign: Sign },
}

/// The realization circle of a word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizationInstance {
    pub word: Word,
    pub points: Vec<CirclePoint>,
    /// The g-letters read around the circle; each h-point contributes two.
    pub g_sequence: Vec<Sign>,
    /// MAS blocks of `w` read cyclically from the first split (the whole
    /// word when it has no split).
    pub x_blocks: Vec<Word>,
}

impl RealizationInstance {
    pub fn new(w: &Word) -> Self {
        let n = w.len();
        let mut points = Vec::new();
        let mut g_sequence = Vec::new();
        for i in 0..n {
            let s = w.get(i);
            if w.get((i + n - 1) % n) == s {
                points.push(CirclePoint::H { sign: s });
                g_sequence.extend([s, s]);
            }
            points.push(CirclePoint::X { index: i, sign: s });
        }
        let splits: Vec<usize> = (0..n).filter(|&i| w.get((i + n - 1) % n) == w.get(i)).collect();
        let x_blocks = if splits.is_empty() {
            if n == 0 {
                Vec::new()
            } else {
                vec![w.clone()]
            }
        } else {
            (0..splits.len())
                .map(|b| {
                    let start = splits[b];
                    let end = if b + 1 < splits.len() { splits[b + 1] } else { splits[0] + n };
                    Word::new((start..end).map(|i| w.get(i % n)).collect())
                })
                .collect()
        };
        RealizationInstance { word: w.clone(), points, g_sequence, x_blocks }
    }

    /// Whether the g-letters balance, which happens exactly when `w` is
    /// balanced.
    pub fn g_balanced(&self) -> bool {
        let plus = self.g_sequence.iter().filter(|&&s| s == Sign::Plus).count();
        2 * plus == self.g_sequence.len()
    }

    /// Every admissible joint overlay `(S, T)`, as a matching on the circle.
    pub fn overlays(&self) -> Vec<Vec<usize>> {
        let pts = &self.points;
        noncrossing_matchings(pts.len(), &|a, b| match (pts[a], pts[b]) {
            (CirclePoint::H { sign: s }, CirclePoint::H { sign: t }) => s != t,
            (CirclePoint::X { sign: s, .. }, CirclePoint::X { sign: t, .. }) => s != t,
            _ => false,
        })
    }

    /// The distinct `T` parts of the admissible overlays, as oriented
    /// diagrams on `w`.
    pub fn realized_diagrams(&self) -> Vec<PairingDiagram> {
        let x_index: Vec<Option<usize>> = self
            .points
            .iter()
            .map(|p| match p {
                CirclePoint::X { index, .. } => Some(*index),
                CirclePoint::H { .. } => None,
            })
            .collect();
        let mut seen = BTreeSet::new();
        for m in self.overlays() {
            let mut partner = vec![0; self.word.len()];
            for (a, &b) in m.iter().enumerate() {
                if let (Some(i), Some(j)) = (x_index[a], x_index[b]) {
                    partner[i] = j;
                }
            }
            seen.insert(partner);
        }
        seen.into_iter()
            .map(|p| PairingDiagram::from_partner(self.word.clone(), p, Mode::Oriented).expect("projected overlay is an oriented diagram"))
            .collect()
    }
}

pub fn realization_count(w: &Word) -> usize {
    RealizationInstance::new(w).realized_diagrams().len()
}

/// Rank at `δ = 3` of the Gram matrix of the realized diagrams.
pub fn realization_gram_rank(w: &Word) -> Result<usize> {
    let tl = Tl::fixed(BigRational::from_integer(3.into()));
    Ok(gram_of_diagrams(&tl, w, &RealizationInstance::new(w).realized_diagrams())?.rank)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizationRow {
    pub word: Word,
    pub ncp_count: usize,
    pub tl_count: usize,
    #[serde(rename = "match")]
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram_rank: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizationReport {
    pub max_len: usize,
    pub rows: Vec<RealizationRow>,
    pub pass: bool,
}

/// Compare the realization count with the oriented TL count on every
/// balanced word up to `max_len`; with `gram` the realized diagrams must
/// also have full Gram rank at `δ = 3`.
pub fn realization_verify(max_len: usize, gram: bool) -> Result<RealizationReport> {
    let mut rows = Vec::new();
    for w in Word::all_up_to(max_len).filter(|w| w.is_balanced()) {
        let ncp_count = realization_count(&w);
        let tl_count = enumerate_oriented_tl(&w).len();
        let gram_rank = if gram { Some(realization_gram_rank(&w)?) } else { None };
        let matches = ncp_count == tl_count && gram_rank.is_none_or(|r| r == tl_count);
        rows.push(RealizationRow { word: w, ncp_count, tl_count, matches, gram_rank });
    }
    let pass = rows.iter().all(|r| r.matches);
    Ok(RealizationReport { max_len, rows, pass })
}
