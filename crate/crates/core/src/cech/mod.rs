//! Simplicial complexes, covers and the Čech–simplicial spark models.

pub mod cover;
pub mod fixtures;
pub mod hyper;
pub mod level;
pub mod model;
pub mod pullback;
pub mod simplicial;

pub use cover::{dual_block_cover, star_cover, trivial_cover, Cover, CoverDefect};
pub use model::{cech_double_complex, CechModel};
pub use pullback::SparkPullback;
pub use simplicial::{SimplicialComplex, SimplicialMap};
