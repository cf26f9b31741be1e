use num_rational::BigRational;

use super::morphism::Morphism;
use super::pairing::{Mode, PairingDiagram};
use crate::coeff::{RationalFunction, Scalar};
use crate::error::{Error, Result};
use crate::word::Word;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Number of closed loops formed by gluing two matchings of the same point set.
pub fn loops_of_overlay(a: &[usize], b: &[usize]) -> usize {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        uf.union(i, a[i]);
        uf.union(i, b[i]);
    }
    (0..n).filter(|&i| uf.find(i) == i).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Stack the diagram of `f: u -> v` on top of the diagram of `g: t -> u`.
/// Returns the composite diagram on `v · t*` and the number of closed loops.
fn stack(
    fd: &PairingDiagram,
    gd: &PairingDiagram,
    nt: usize,
    nu: usize,
    nv: usize,
    color: &Word,
    mode: Mode,
) -> (PairingDiagram, usize) {
    // nodes: [0, nv) top of f, [nv, nv+nu) middle, [nv+nu, nv+nu+nt) bottom of g
    let total = nv + nu + nt;
    let f_node = |a: usize| if a < nv { a } else { nv + (nv + nu - 1 - a) };
    let g_node = |a: usize| if a < nu { nv + a } else { nv + nu + (nu + nt - 1 - a) };
    let mut uf = UnionFind::new(total);
    for (a, &b) in fd.partners().iter().enumerate() {
        if a < b {
            uf.union(f_node(a), f_node(b));
        }
    }
    for (a, &b) in gd.partners().iter().enumerate() {
        if a < b {
            uf.union(g_node(a), g_node(b));
        }
    }
    let out_index = |node: usize| if node < nv { node } else { nv + nt - 1 - (node - nv - nu) };
    let outer: Vec<usize> = (0..nv).chain(nv + nu..total).collect();
    let mut first_by_root = vec![usize::MAX; total];
    let mut partner = vec![usize::MAX; nv + nt];
    let mut open_root = vec![false; total];
    for &node in &outer {
        let r = uf.find(node);
        open_root[r] = true;
        if first_by_root[r] == usize::MAX {
            first_by_root[r] = node;
        } else {
            let other = first_by_root[r];
            partner[out_index(node)] = out_index(other);
            partner[out_index(other)] = out_index(node);
        }
    }
    let mut loops = 0;
    for m in nv..nv + nu {
        let r = uf.find(m);
        if !open_root[r] {
            open_root[r] = true;
            loops += 1;
        }
    }
    (PairingDiagram::from_partner_unchecked(color.clone(), partner, mode), loops)
}

/// Evaluation context for Temperley-Lieb diagrammatics with loop value `δ`:
/// every closed loop is replaced by the scalar `δ`.
#[derive(Clone, Debug)]
pub struct Tl<K> {
    delta: K,
}

impl Tl<RationalFunction> {
    pub fn symbolic() -> Self {
        Tl { delta: RationalFunction::delta() }
    }
}

impl Tl<BigRational> {
    pub fn fixed(delta: BigRational) -> Self {
        Tl { delta }
    }
}

impl<K: Scalar> Tl<K> {
    pub fn with_delta(delta: K) -> Self {
        Tl { delta }
    }

    pub fn delta(&self) -> &K {
        &self.delta
    }

    pub fn loop_value(&self, loops: usize) -> K {
        self.delta.pow(loops)
    }

    /// `f ∘ g` for `g: t -> u`, `f: u -> v`.
    pub fn compose(&self, f: &Morphism<K>, g: &Morphism<K>) -> Result<Morphism<K>> {
        if f.source() != g.target() {
            return Err(Error::BoundaryMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                f.source(),
                f.target(),
                g.source(),
                g.target()
            )));
        }
        if f.mode() != g.mode() {
            return Err(Error::BoundaryMismatch("mixed oriented and unshaded morphisms".into()));
        }
        let (nt, nu, nv) = (g.source().len(), f.source().len(), f.target().len());
        let mut out = Morphism::zero(g.source().clone(), f.target().clone(), f.mode());
        let color = out.color();
        for (fd, fc) in f.terms() {
            for (gd, gc) in g.terms() {
                let (d, loops) = stack(fd, gd, nt, nu, nv, &color, f.mode());
                out.add_term_unchecked(d, fc.clone() * gc.clone() * self.loop_value(loops));
            }
        }
        Ok(out)
    }

    /// `[x, y]`: close `x` against the mirror image of `y` and weight each
    /// pair of diagrams by `δ^(#loops)`.
    pub fn inner_product(&self, x: &Morphism<K>, y: &Morphism<K>) -> Result<K> {
        if x.color() != y.color() {
            return Err(Error::BoundaryMismatch(format!(
                "inner product of colors {} and {}",
                x.color(),
                y.color()
            )));
        }
        let mut acc = K::zero();
        for (xd, xc) in x.terms() {
            for (yd, yc) in y.terms() {
                acc = acc
                    + xc.clone() * yc.clone() * self.loop_value(loops_of_overlay(xd.partners(), yd.partners()));
            }
        }
        Ok(acc)
    }

    pub fn diagram_inner_product(&self, a: &PairingDiagram, b: &PairingDiagram) -> Result<K> {
        if a.color() != b.color() {
            return Err(Error::BoundaryMismatch(format!("{} vs {}", a.color(), b.color())));
        }
        Ok(self.loop_value(loops_of_overlay(a.partners(), b.partners())))
    }

    /// Markov trace: join every target point to the matching source point
    /// by strands passing to the chosen side.
    pub fn trace_close(&self, x: &Morphism<K>, side: Side) -> Result<K> {
        if !x.is_endomorphism() {
            return Err(Error::BoundaryMismatch(format!(
                "trace of a non-endomorphism {} -> {}",
                x.source(),
                x.target()
            )));
        }
        let n = x.source().len();
        // nested caps centred on the gap between index n-1 and n
        let caps: Vec<usize> = (0..2 * n).map(|i| 2 * n - 1 - i).collect();
        let mut acc = K::zero();
        for (d, c) in x.terms() {
            let loops = match side {
                Side::Right => loops_of_overlay(d.partners(), &caps),
                // the left closure surrounds the marked segment: rotate it
                // into the middle first
                Side::Left => loops_of_overlay(d.rotate(n)?.partners(), &caps),
            };
            acc = acc + c.clone() * self.loop_value(loops);
        }
        Ok(acc)
    }
}

/// Horizontal juxtaposition `f ⊗ g`.
pub fn tensor<K: Scalar>(f: &Morphism<K>, g: &Morphism<K>) -> Result<Morphism<K>> {
    if f.mode() != g.mode() {
        return Err(Error::BoundaryMismatch("mixed oriented and unshaded morphisms".into()));
    }
    let source = f.source().concat(g.source());
    let target = f.target().concat(g.target());
    let (ft, gt, gs) = (f.target().len(), g.target().len(), g.source().len());
    let mut out = Morphism::zero(source, target, f.mode());
    let color = out.color();
    // f's points wrap around g's: f top, g top, g bottom, f bottom
    let f_map = |a: usize| if a < ft { a } else { a + gt + gs };
    let g_map = |a: usize| a + ft;
    for (fd, fc) in f.terms() {
        for (gd, gc) in g.terms() {
            let mut partner = vec![0; color.len()];
            for (a, &b) in fd.partners().iter().enumerate() {
                partner[f_map(a)] = f_map(b);
            }
            for (a, &b) in gd.partners().iter().enumerate() {
                partner[g_map(a)] = g_map(b);
            }
            let d = PairingDiagram::from_partner_unchecked(color.clone(), partner, f.mode());
            out.add_term_unchecked(d, fc.clone() * gc.clone());
        }
    }
    Ok(out)
}
