//! Analysis of edge-colored graphs encoding PL manifolds.

pub mod canon;
pub mod catalogue;
pub mod classification;
pub mod dipole;
pub mod error;
pub mod fixtures;
pub mod genus;
pub mod graph;
pub mod handles;
pub mod invariants;
pub mod recognition;
pub mod report;
pub mod snf;

pub use canon::{canonical_code, CanonicalCode, CodeFlavor};
pub use error::{GemError, Result};
pub use genus::{genus_all, genus_wrt, CyclicPermutation, GenusReport, HalfInt};
pub use graph::{ColoredGraph, ResidueKey, ResidueTable};
