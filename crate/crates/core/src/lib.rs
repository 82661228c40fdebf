//! Enumeration and classification of knots in the thickened torus.
//!
//! Diagrams are rotation systems on the torus with an integer winding on
//! every edge and one over/under bit per crossing. The pipeline runs
//! abstract graphs to shadows, shadows to diagrams, diagrams to the Kauffman
//! bracket invariant, and finally Reidemeister-move equivalence.

pub mod census;
pub mod diagram;
pub mod enumerate;
pub mod invariant;
pub mod lattice;
pub mod moves;
pub mod poly;

pub use diagram::{
    canonical_key, decode_diagram, decode_projection, encode_diagram, encode_projection, projection_key,
    CombinatorialMap, DiagramError, Embedding, TkcError, TorusDiagram, TorusProjection, WindingAssignment,
};
pub use enumerate::{AbstractGraph, GraphType, ProjectionRecord, WindingMode};
pub use lattice::Vec2;
pub use poly::XPolynomial;
