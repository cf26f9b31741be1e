//! Oriented and unshaded Temperley-Lieb diagrams and the operations of the
//! structural tangles on their spans.

mod engine;
mod morphism;
mod pairing;

pub use engine::{loops_of_overlay, tensor, Side, Tl};
pub use morphism::{diagram_from_json, diagram_to_json, Morphism};
pub use pairing::{
    catalan, enumerate_oriented_tl, enumerate_unshaded_on, enumerate_unshaded_tl, noncrossing_matchings,
    pairs_cross, Mode, PairingDiagram,
};

/// Diagram basis of the hom space `source -> target` in the given mode.
pub fn hom_basis(source: &crate::word::Word, target: &crate::word::Word, mode: Mode) -> Vec<PairingDiagram> {
    let color = target.concat(&source.involution());
    match mode {
        Mode::Oriented => enumerate_oriented_tl(&color),
        Mode::Unshaded => enumerate_unshaded_on(&color),
    }
}

/// Diagram basis of the disc space colored `w`.
pub fn basis(w: &crate::word::Word, mode: Mode) -> Vec<PairingDiagram> {
    hom_basis(&crate::word::Word::empty(), w, mode)
}

#[cfg(test)]
mod tests;
