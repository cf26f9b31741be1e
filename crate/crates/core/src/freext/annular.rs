use serde::Serialize;

use crate::coeff::Scalar;
use crate::diagram::{basis, Morphism, PairingDiagram, Tl};
use crate::error::{Error, Result};
use crate::sample::SeededRng;
use crate::word::{Sign, Word};

/// The annular tangles realised here: rotations and single cap or cup
/// insertions between adjacent boundary points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AnnularTangle {
    Identity,
    /// Move the first `k` points to the end.
    Rotation(usize),
    /// Join points `pos` and `pos + 1` by an outer arc.
    Cap(usize),
    /// Insert two new adjacent points at `pos` joined by an arc; the first
    /// new point carries `first`.
    Cup { pos: usize, first: Sign },
}

impl AnnularTangle {
    /// Output color for input color `w`.
    pub fn target(&self, w: &Word) -> Result<Word> {
        match *self {
            AnnularTangle::Identity => Ok(w.clone()),
            AnnularTangle::Rotation(k) => w.rotate(k),
            AnnularTangle::Cap(pos) => {
                if pos + 1 >= w.len() {
                    return Err(Error::OutOfRange(format!("cap at {pos} on {w}")));
                }
                if w.get(pos) == w.get(pos + 1) {
                    return Err(Error::InvalidDiagram(format!("cap at {pos} joins equal signs on {w}")));
                }
                let mut s = w.signs().to_vec();
                s.drain(pos..pos + 2);
                Ok(Word::new(s))
            }
            AnnularTangle::Cup { pos, first } => {
                if pos > w.len() {
                    return Err(Error::OutOfRange(format!("cup at {pos} on {w}")));
                }
                let mut s = w.signs().to_vec();
                s.splice(pos..pos, [first, first.flip()]);
                Ok(Word::new(s))
            }
        }
    }

    /// `A#`: reflect the annulus, swapping its two boundaries.
    pub fn adjoint(&self, w: &Word) -> Result<AnnularTangle> {
        Ok(match *self {
            AnnularTangle::Identity => AnnularTangle::Identity,
            AnnularTangle::Rotation(k) => {
                if k > w.len() {
                    return Err(Error::OutOfRange(format!("rotation by {k} on {w}")));
                }
                AnnularTangle::Rotation(w.len() - k)
            }
            AnnularTangle::Cap(pos) => {
                self.target(w)?;
                AnnularTangle::Cup { pos, first: w.get(pos) }
            }
            AnnularTangle::Cup { pos, .. } => AnnularTangle::Cap(pos),
        })
    }

    fn apply_diagram<K: Scalar>(&self, tl: &Tl<K>, d: &PairingDiagram) -> Result<(PairingDiagram, K)> {
        let w = d.color();
        let target = self.target(w)?;
        match *self {
            AnnularTangle::Identity => Ok((d.clone(), K::one())),
            AnnularTangle::Rotation(k) => Ok((d.rotate(k)?, K::one())),
            AnnularTangle::Cap(pos) => {
                let re = |i: usize| if i < pos { i } else { i - 2 };
                let mut partner = vec![usize::MAX; w.len() - 2];
                let mut loops = 0;
                for i in 0..w.len() {
                    if i == pos || i == pos + 1 {
                        continue;
                    }
                    let mut j = d.partner(i);
                    if j == pos || j == pos + 1 {
                        // follow the strand through the cap
                        j = d.partner(if j == pos { pos + 1 } else { pos });
                    }
                    partner[re(i)] = re(j);
                }
                if d.partner(pos) == pos + 1 {
                    loops = 1;
                }
                Ok((PairingDiagram::from_partner(target, partner, d.mode())?, tl.loop_value(loops)))
            }
            AnnularTangle::Cup { pos, .. } => {
                let re = |i: usize| if i < pos { i } else { i + 2 };
                let mut partner = vec![0; w.len() + 2];
                for i in 0..w.len() {
                    partner[re(i)] = re(d.partner(i));
                }
                partner[pos] = pos + 1;
                partner[pos + 1] = pos;
                Ok((PairingDiagram::from_partner(target, partner, d.mode())?, K::one()))
            }
        }
    }

    /// Action on an element of the disc space (empty source).
    pub fn apply<K: Scalar>(&self, tl: &Tl<K>, x: &Morphism<K>) -> Result<Morphism<K>> {
        let w = x.color();
        let mut out = Morphism::zero(Word::empty(), self.target(&w)?, x.mode());
        for (d, c) in x.terms() {
            let (e, s) = self.apply_diagram(tl, d)?;
            out.add_term(e, c.clone() * s)?;
        }
        Ok(out)
    }
}

/// Every rotation, cap and cup insertion applicable to `w`.
pub fn all_annular_tangles(w: &Word) -> Vec<AnnularTangle> {
    let n = w.len();
    let mut v = vec![AnnularTangle::Identity];
    v.extend((0..=n).map(AnnularTangle::Rotation));
    v.extend((0..n.saturating_sub(1)).filter(|&p| w.get(p) != w.get(p + 1)).map(AnnularTangle::Cap));
    for pos in 0..=n {
        for first in [Sign::Plus, Sign::Minus] {
            v.push(AnnularTangle::Cup { pos, first });
        }
    }
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjointReport {
    pub tangle: AnnularTangle,
    pub input: Word,
    pub output: Word,
    pub checked: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Check `[A(X), Y] = [X, A#(Y)]` on `samples` random pairs of basis
/// diagrams (all pairs when `samples` is at least the number of pairs).
pub fn annular_adjoint_check<K: Scalar>(
    tl: &Tl<K>,
    tangle: AnnularTangle,
    w1: &Word,
    samples: usize,
    rng: &mut SeededRng,
) -> Result<AdjointReport> {
    use rand::Rng;
    let w2 = tangle.target(w1)?;
    let adj = tangle.adjoint(w1)?;
    let b1 = basis(w1, crate::diagram::Mode::Oriented);
    let b2 = basis(&w2, crate::diagram::Mode::Oriented);
    let mut report = AdjointReport { tangle, input: w1.clone(), output: w2.clone(), checked: 0, pass: true, witness: None };
    if b1.is_empty() || b2.is_empty() {
        return Ok(report);
    }
    let total = b1.len() * b2.len();
    let picks: Vec<(usize, usize)> = if samples >= total {
        (0..b1.len()).flat_map(|i| (0..b2.len()).map(move |j| (i, j))).collect()
    } else {
        (0..samples).map(|_| (rng.gen_range(0..b1.len()), rng.gen_range(0..b2.len()))).collect()
    };
    for (i, j) in picks {
        let x = Morphism::element(b1[i].clone());
        let y = Morphism::element(b2[j].clone());
        let lhs = tl.inner_product(&tangle.apply(tl, &x)?, &y)?;
        let rhs = tl.inner_product(&x, &adj.apply(tl, &y)?)?;
        report.checked += 1;
        if lhs != rhs {
            report.pass = false;
            report.witness = Some(format!("X={} Y={}: {lhs} vs {rhs}", b1[i], b2[j]));
            break;
        }
    }
    Ok(report)
}
