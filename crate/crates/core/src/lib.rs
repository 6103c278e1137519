//! Exact-arithmetic engine for spark complexes.
//!
//! A spark complex is a triple of cochain complexes `(F, E, I)` with `E ⊂ F`
//! and a map `Ψ: I → F`; sparks are pairs `(a, r)` with `da = e − Ψ(r)`.
//! This crate validates such complexes, decides equivalence of sparks,
//! computes the associated groups, and builds finite Čech–simplicial models
//! over triangulated spaces.

pub mod bundle;
pub mod cech;
pub mod complex;
pub mod error;
pub mod io;
pub mod linalg;
pub mod product;
pub mod quasi;
pub mod spark;

pub use error::{Error, Result};
