use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

/// Which pairs are admissible: oriented diagrams join a `+` point to a `-`
/// point, unshaded diagrams join any two points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Oriented,
    Unshaded,
}

/// A non-crossing perfect matching of the boundary points of a disc colored
/// by a word. Points are numbered clockwise starting right after the marked
/// segment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairingDiagram {
    color: Word,
    partner: Vec<usize>,
    mode: Mode,
}

/// `(i, j)` with `i < j` cross iff exactly one of `k, l` lies strictly between them.
pub fn pairs_cross(a: (usize, usize), b: (usize, usize)) -> bool {
    let (i, j) = if a.0 < a.1 { a } else { (a.1, a.0) };
    let inside = |x: usize| i < x && x < j;
    inside(b.0) != inside(b.1)
}

impl PairingDiagram {
    pub fn new(color: Word, pairs: &[(usize, usize)], mode: Mode) -> Result<Self> {
        let n = color.len();
        let mut partner = vec![usize::MAX; n];
        for &(a, b) in pairs {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidDiagram(format!("bad pair ({a}, {b}) on {n} points")));
            }
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::InvalidDiagram(format!("point reused in pair ({a}, {b})")));
            }
            partner[a] = b;
            partner[b] = a;
        }
        Self::from_partner(color, partner, mode)
    }

    pub fn from_partner(color: Word, partner: Vec<usize>, mode: Mode) -> Result<Self> {
        let d = PairingDiagram { color, partner, mode };
        d.validate()?;
        Ok(d)
    }

    /// Trusted constructor for engine code that preserves the invariants.
    pub(crate) fn from_partner_unchecked(color: Word, partner: Vec<usize>, mode: Mode) -> Self {
        let d = PairingDiagram { color, partner, mode };
        debug_assert!(d.validate().is_ok(), "{d}");
        d
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.color.len();
        if self.partner.len() != n {
            return Err(Error::InvalidDiagram("partner table length differs from color".into()));
        }
        for (i, &j) in self.partner.iter().enumerate() {
            if j >= n || j == i || self.partner[j] != i {
                return Err(Error::InvalidDiagram(format!("point {i} is not properly paired")));
            }
            if self.mode == Mode::Oriented && self.color.get(i) == self.color.get(j) {
                return Err(Error::InvalidDiagram(format!(
                    "oriented pair ({i}, {j}) joins equal signs on {}",
                    self.color
                )));
            }
        }
        let pairs = self.pairs();
        for (x, &a) in pairs.iter().enumerate() {
            for &b in &pairs[x + 1..] {
                if pairs_cross(a, b) {
                    return Err(Error::InvalidDiagram(format!("pairs {a:?} and {b:?} cross")));
                }
            }
        }
        Ok(())
    }

    pub fn empty(mode: Mode) -> Self {
        PairingDiagram { color: Word::empty(), partner: Vec::new(), mode }
    }

    pub fn color(&self) -> &Word {
        &self.color
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    /// Pairs `(min, max)` in increasing order of the smaller endpoint.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i < j)
            .map(|(i, &j)| (i, j))
            .collect()
    }

    /// Same pairing, different admissibility rule. Dropping orientation always
    /// succeeds; adding it fails if some pair joins equal signs.
    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        let d = PairingDiagram { color: self.color.clone(), partner: self.partner.clone(), mode };
        d.validate()?;
        Ok(d)
    }

    /// Same pairing on a recolored boundary of equal length.
    pub fn recolor(&self, color: Word) -> Result<Self> {
        if color.len() != self.len() {
            return Err(Error::BoundaryMismatch(format!(
                "cannot recolor {} points with {color}",
                self.len()
            )));
        }
        Self::from_partner(color, self.partner.clone(), self.mode)
    }

    /// Mirror image: point `i` goes to `n - 1 - i`, on the color `w*`.
    pub fn reflect(&self) -> Self {
        let n = self.len();
        let partner = (0..n).map(|i| n - 1 - self.partner[n - 1 - i]).collect();
        Self::from_partner_unchecked(self.color.involution(), partner, self.mode)
    }

    /// Move the first `k` boundary points to the end: point `i` becomes `i - k mod n`.
    pub fn rotate(&self, k: usize) -> Result<Self> {
        let color = self.color.rotate(k)?;
        let n = self.len();
        if n == 0 {
            return Ok(self.clone());
        }
        let shift = |i: usize| (i + n - k) % n;
        let mut partner = vec![0; n];
        for i in 0..n {
            partner[shift(i)] = shift(self.partner[i]);
        }
        Ok(Self::from_partner_unchecked(color, partner, self.mode))
    }
}

impl PartialOrd for PairingDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: lexicographic on the `(min, max)` pair sequence. For
/// equal point counts this coincides with lexicographic order on partner
/// tables (the first differing point is the smaller end of both its pairs).
impl Ord for PairingDiagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.partner.cmp(&other.partner))
            .then_with(|| self.color.cmp(&other.color))
            .then_with(|| self.mode.cmp(&other.mode))
    }
}

impl fmt::Display for PairingDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", if self.color.is_empty() { "∅".to_string() } else { self.color.to_string() })?;
        for (k, (a, b)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, "}}")
    }
}

type Emit<'a> = dyn FnMut(&mut Vec<usize>, &mut Vec<Vec<usize>>) + 'a;

/// All non-crossing perfect matchings of `n` points in which every pair
/// satisfies `allowed`. Output is in canonical order.
pub fn noncrossing_matchings(n: usize, allowed: &dyn Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    fn rec(
        lo: usize,
        hi: usize,
        allowed: &dyn Fn(usize, usize) -> bool,
        partner: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        k: &mut Emit,
    ) {
        if lo >= hi {
            k(partner, out);
            return;
        }
        let mut j = lo + 1;
        while j < hi {
            if allowed(lo, j) {
                partner[lo] = j;
                partner[j] = lo;
                rec(lo + 1, j, allowed, partner, out, &mut |p, o| {
                    rec(j + 1, hi, allowed, p, o, k)
                });
            }
            j += 2;
        }
    }
    let mut out = Vec::new();
    if n % 2 == 1 {
        return out;
    }
    let mut partner = vec![usize::MAX; n];
    rec(0, n, allowed, &mut partner, &mut out, &mut |p, o| o.push(p.clone()));
    out
}

/// Oriented Temperley-Lieb basis of the disc colored `w`: non-crossing
/// matchings pairing opposite signs.
pub fn enumerate_oriented_tl(w: &Word) -> Vec<PairingDiagram> {
    if !w.is_balanced() {
        return Vec::new();
    }
    let mut v: Vec<_> = noncrossing_matchings(w.len(), &|i, j| w.get(i) != w.get(j))
        .into_iter()
        .map(|p| PairingDiagram::from_partner_unchecked(w.clone(), p, Mode::Oriented))
        .collect();
    v.sort();
    v
}

/// Unshaded basis on `w`: every non-crossing pairing, signs ignored.
pub fn enumerate_unshaded_on(w: &Word) -> Vec<PairingDiagram> {
    let mut v: Vec<_> = noncrossing_matchings(w.len(), &|_, _| true)
        .into_iter()
        .map(|p| PairingDiagram::from_partner_unchecked(w.clone(), p, Mode::Unshaded))
        .collect();
    v.sort();
    v
}

/// Unshaded basis on `n_points` points, colored by the alternating word.
pub fn enumerate_unshaded_tl(n_points: usize) -> Vec<PairingDiagram> {
    enumerate_unshaded_on(&Word::alternating(crate::word::Sign::Plus, n_points))
}

pub fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}
