use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde_json::{json, Value};

use super::pairing::{Mode, PairingDiagram};
use crate::coeff::{RationalFunction, Scalar};
use crate::error::{Error, Result};
use crate::word::Word;

/// A linear combination of diagrams on the color `target · source*`.
///
/// Target point `i` sits at disc index `i`; source point `j` sits at disc
/// index `|target| + |source| - 1 - j`. A morphism with empty source is an
/// element of the disc space of its target color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<K> {
    source: Word,
    target: Word,
    mode: Mode,
    terms: BTreeMap<PairingDiagram, K>,
}

impl<K: Scalar> Morphism<K> {
    pub fn zero(source: Word, target: Word, mode: Mode) -> Self {
        Morphism { source, target, mode, terms: BTreeMap::new() }
    }

    pub fn color(&self) -> Word {
        self.target.concat(&self.source.involution())
    }

    pub fn from_diagram(source: Word, target: Word, d: PairingDiagram) -> Result<Self> {
        let mut m = Self::zero(source, target, d.mode());
        m.add_term(d, K::one())?;
        Ok(m)
    }

    /// Element of the disc space colored `d.color()`.
    pub fn element(d: PairingDiagram) -> Self {
        let target = d.color().clone();
        Self::from_diagram(Word::empty(), target, d).expect("color matches by construction")
    }

    pub fn identity(w: &Word, mode: Mode) -> Self {
        let n = w.len();
        let color = w.concat(&w.involution());
        let partner = (0..2 * n).map(|i| 2 * n - 1 - i).collect();
        let d = PairingDiagram::from_partner_unchecked(color, partner, mode);
        Self::from_diagram(w.clone(), w.clone(), d).unwrap()
    }

    /// The cup-cap `e_i` on strands `i, i+1` of the object `w`; the two
    /// strands must carry opposite signs in oriented mode.
    pub fn cup_cap(w: &Word, i: usize, mode: Mode) -> Result<Self> {
        let n = w.len();
        if i + 1 >= n {
            return Err(Error::OutOfRange(format!("cup-cap e_{i} on {n} strands")));
        }
        let color = w.concat(&w.involution());
        let bottom = |j: usize| 2 * n - 1 - j;
        let mut partner: Vec<usize> = (0..2 * n).map(|k| 2 * n - 1 - k).collect();
        partner[i] = i + 1;
        partner[i + 1] = i;
        partner[bottom(i)] = bottom(i + 1);
        partner[bottom(i + 1)] = bottom(i);
        let d = PairingDiagram::from_partner(color, partner, mode)?;
        Self::from_diagram(w.clone(), w.clone(), d)
    }

    pub fn source(&self) -> &Word {
        &self.source
    }

    pub fn target(&self) -> &Word {
        &self.target
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PairingDiagram, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, d: &PairingDiagram) -> K {
        self.terms.get(d).cloned().unwrap_or_else(K::zero)
    }

    /// Add `c · d`, dropping the term if it cancels.
    pub fn add_term(&mut self, d: PairingDiagram, c: K) -> Result<()> {
        if d.color() != &self.color() || d.mode() != self.mode {
            return Err(Error::BoundaryMismatch(format!(
                "diagram {d} ({:?}) in hom space {} -> {} ({:?})",
                d.mode(),
                self.source,
                self.target,
                self.mode
            )));
        }
        self.add_term_unchecked(d, c);
        Ok(())
    }

    pub(crate) fn add_term_unchecked(&mut self, d: PairingDiagram, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&d) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(d, s);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.mode != other.mode {
            return Err(Error::BoundaryMismatch(format!(
                "{} -> {} vs {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term_unchecked(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-K::one()))
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::zero(self.source.clone(), self.target.clone(), self.mode);
        if c.is_zero() {
            return out;
        }
        for (d, x) in &self.terms {
            out.add_term_unchecked(d.clone(), x.clone() * c.clone());
        }
        out
    }

    /// Reflection: swaps source and target and reflects every diagram.
    /// Coefficients are real, so conjugation is trivial.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.target.clone(), self.source.clone(), self.mode);
        for (d, c) in &self.terms {
            out.add_term_unchecked(d.reflect(), c.clone());
        }
        out
    }

    /// The same vector viewed with a different split of its color into
    /// `target · source*`.
    pub fn reinterpret(&self, source: Word, target: Word) -> Result<Self> {
        if target.concat(&source.involution()) != self.color() {
            return Err(Error::BoundaryMismatch(format!(
                "color {} does not split as {target} · ({source})*",
                self.color()
            )));
        }
        Ok(Morphism { source, target, mode: self.mode, terms: self.terms.clone() })
    }

    /// View as an element of the disc space of its color.
    pub fn as_element(&self) -> Self {
        Morphism {
            source: Word::empty(),
            target: self.color(),
            mode: self.mode,
            terms: self.terms.clone(),
        }
    }

    /// Rotation tangle on the disc: moves the first `k` boundary points to
    /// the end. The result is an element (empty source).
    pub fn rotate(&self, k: usize) -> Result<Self> {
        let color = self.color().rotate(k)?;
        let mut out = Self::zero(Word::empty(), color, self.mode);
        for (d, c) in &self.terms {
            out.add_term_unchecked(d.rotate(k)?, c.clone());
        }
        Ok(out)
    }

    /// Relabel the mode of every diagram (orientation can only be dropped or
    /// re-imposed where valid).
    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        let mut out = Self::zero(self.source.clone(), self.target.clone(), mode);
        for (d, c) in &self.terms {
            out.add_term_unchecked(d.with_mode(mode)?, c.clone());
        }
        Ok(out)
    }

    pub fn map_coeffs<L: Scalar>(&self, f: impl Fn(&K) -> Result<L>) -> Result<Morphism<L>> {
        let mut out = Morphism::zero(self.source.clone(), self.target.clone(), self.mode);
        for (d, c) in &self.terms {
            out.add_term_unchecked(d.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Coordinates against an ordered basis of diagrams; errors if a term
    /// lies outside the basis.
    pub fn coordinates(&self, basis: &[PairingDiagram]) -> Result<Vec<K>> {
        let mut v = vec![K::zero(); basis.len()];
        for (d, c) in &self.terms {
            let idx = basis
                .binary_search(d)
                .map_err(|_| Error::BoundaryMismatch(format!("diagram {d} not in basis")))?;
            v[idx] = c.clone();
        }
        Ok(v)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(d, c)| {
                json!({
                    "pairs": d.pairs().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
                    "coeff": c.to_json(),
                })
            })
            .collect();
        let mut v = json!({
            "source": self.source.to_string(),
            "target": self.target.to_string(),
            "terms": terms,
        });
        if self.mode == Mode::Unshaded {
            v["mode"] = json!("unshaded");
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let word = |key: &str| -> Result<Word> {
            v.get(key)
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse(format!("missing {key:?}")))?
                .parse()
        };
        let source = word("source")?;
        let target = word("target")?;
        let mode = match v.get("mode").and_then(Value::as_str) {
            None | Some("oriented") => Mode::Oriented,
            Some("unshaded") => Mode::Unshaded,
            Some(other) => return Err(Error::Parse(format!("unknown mode {other:?}"))),
        };
        let mut m = Self::zero(source, target, mode);
        let color = m.color();
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"terms\"".into()))?;
        for t in terms {
            let pairs = parse_pairs(t.get("pairs").ok_or_else(|| Error::Parse("missing \"pairs\"".into()))?)?;
            let d = PairingDiagram::new(color.clone(), &pairs, mode)?;
            let c = K::from_json(t.get("coeff").ok_or_else(|| Error::Parse("missing \"coeff\"".into()))?)?;
            m.add_term(d, c)?;
        }
        Ok(m)
    }
}

impl Morphism<RationalFunction> {
    /// Specialize a symbolic morphism at `δ = d`.
    pub fn eval_at(&self, d: &BigRational) -> Result<Morphism<BigRational>> {
        self.map_coeffs(|c| c.eval_at(d))
    }
}

pub(crate) fn parse_pairs(v: &Value) -> Result<Vec<(usize, usize)>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("pairs must be an array".into()))?;
    arr.iter()
        .map(|p| {
            let xs = p.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Parse(format!("bad pair {p}")))?;
            let get = |x: &Value| x.as_u64().map(|u| u as usize).ok_or_else(|| Error::Parse(format!("bad index {x}")));
            Ok((get(&xs[0])?, get(&xs[1])?))
        })
        .collect()
}

/// `{"word": "+-+-", "pairs": [[0,1],[2,3]]}`, with `"mode": "unshaded"` for unshaded diagrams.
pub fn diagram_to_json(d: &PairingDiagram) -> Value {
    let mut v = json!({
        "word": d.color().to_string(),
        "pairs": d.pairs().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
    });
    if d.mode() == Mode::Unshaded {
        v["mode"] = json!("unshaded");
    }
    v
}

pub fn diagram_from_json(v: &Value) -> Result<PairingDiagram> {
    let word: Word = v
        .get("word")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing \"word\"".into()))?
        .parse()?;
    let mode = match v.get("mode").and_then(Value::as_str) {
        None | Some("oriented") => Mode::Oriented,
        Some("unshaded") => Mode::Unshaded,
        Some(other) => return Err(Error::Parse(format!("unknown mode {other:?}"))),
    };
    let pairs = parse_pairs(v.get("pairs").ok_or_else(|| Error::Parse("missing \"pairs\"".into()))?)?;
    PairingDiagram::new(word, &pairs, mode)
}

impl<K: Scalar> fmt::Display for Morphism<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{d}")?;
        }
        Ok(())
    }
}
