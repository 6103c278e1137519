//! Spark complexes, sparks, equivalence, and the fundamental exact sequences.

pub mod complex;
pub mod grid;
pub mod sample;
#[allow(clippy::module_inception)]
pub mod spark;

pub use complex::{AxiomFailure, SparkComplex, ZISubgroup};
pub use grid::{Certificate, CertificateKind, GridReport, NodeValue};
pub use spark::{EdgeForm, Spark, Witness};
