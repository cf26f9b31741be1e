//! Exact diagrammatics for the free oriented extension of the
//! Temperley-Lieb subfactor planar algebra.
//!
//! The crate is organised bottom-up:
//!
//! * [`word`]: sign words, rotation, and MAS (maximally alternately signed)
//!   decompositions.
//! * [`coeff`]: exact polynomials and rational functions in the loop
//!   parameter `δ`, and quantum integers.
//! * [`diagram`]: oriented and unshaded pairing diagrams, composition with
//!   loop evaluation, tensor, reflection, rotation, inner products, traces.
//! * [`gram`]: Gram matrices, fraction-free elimination, positivity.
//! * [`freext`]: spanning sets by overlay recursion, the parity split map,
//!   Jones-Wenzl idempotents, the `f_{vv*}` projections and minimality.
//! * [`ustl`]: the forgetful embedding into unshaded Temperley-Lieb.
//! * [`freeprod`]: alternating-word enumeration and free-product overlay counts.
//! * [`cli`]: the batch command surface shared by the binary and the C ABI.

pub mod cli;
pub mod coeff;
pub mod diagram;
pub mod error;
pub mod freeprod;
pub mod freext;
pub mod gram;
pub mod sample;
pub mod ustl;
pub mod word;

pub use error::{Error, Result};
