//! Cochain complexes, cohomology, cones and double complexes.

pub mod cochain;
pub mod cohomology;
pub mod cone;
pub mod double;

pub use cochain::{ChainMap, CochainComplex, Coeff};
pub use cohomology::{
    cohomology, descriptors, induced_map, is_acyclic, is_coboundary, CohomologyPresentation, InducedMap,
};
pub use cone::{cone, cone_cohomology, two_step_hypercohomology};
pub use double::{truncate, Block, DoubleComplex, TotalLayout, Truncation};
