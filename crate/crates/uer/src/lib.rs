//! Recognition and construction of unit edge-length rectilinear grid drawings.
//!
//! Two drawing models are supported. In the RF model every edge segment
//! between consecutive drawing vertices (real vertices or crossings) has unit
//! length and every face, including the external one, is a rectangle. The USF
//! model additionally requires every internal face to be a unit square.
//!
//! The crate provides polynomial-time recognizers for several restricted
//! settings, an FPT recognizer for the general RF case parameterized by the
//! number of degree-3 vertices, an independent brute-force oracle used as
//! ground truth in tests, and file/SVG tooling for the `uer` binary.

pub mod candidate;
pub mod corpus;
pub mod drawing;
pub mod graph;
pub mod inner2;
pub mod io;
pub mod iso;
pub mod oracle;
pub mod outcome;
pub mod recognize;
pub mod rf_general;
pub mod rf_restricted;
pub mod svg;
pub mod sweep;
pub mod usf;

pub use drawing::{GridDrawing, GridPoint, Model, PlanarizedDrawing, ValidationReport};
pub use graph::{Graph, RotationSystem, SmoothingMap};
pub use outcome::{Constraints, RecognitionOutcome, RecognitionStats, RejectReason, Verdict};
