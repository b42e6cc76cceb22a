//! Differential geometry of lightlike loci on mixed type surfaces in
//! Lorentz-Minkowski 3-space.
//!
//! Given a parametrized surface (or frontal) whose lightlike point set is a
//! regular curve, this crate builds the moving frame {e, L, N} along the
//! locus, computes the frame-derivative invariants and their gauge behavior,
//! constructs the osculating and transversal lightlike ruled surfaces and
//! lightcone pedal curves, classifies their singularities (cuspidal edges,
//! swallowtails, cusps, cone degeneration), and measures the contact of the
//! locus with model curves cut out by contact lightcones and lightlike
//! planes. A CLI exposes analysis reports (JSON), mesh/curve export
//! (OBJ/CSV) and a self-verification suite.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod export;
pub mod expr;
pub mod frame;
pub mod jet;
pub mod jetvec;
pub mod minkowski;
pub mod parse;
pub mod pedal;
pub mod report;
pub mod ruled;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
pub use minkowski::{causal_class_plane, causal_class_vector, lorentz_cross, scalar_product};
pub use minkowski::{CausalClass, MVec3};
