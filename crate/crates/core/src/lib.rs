//! Homology of weighted quivers and per-vertex homology features.
//!
//! * [`quiver`]: quivers, paths, nondegenerate chains, neighbourhoods.
//! * [`algebra`]: dense matrices with exact (rational) and float rank.
//! * [`homology`]: arrow-level boundary matrix, first homology, and the
//!   full chain complex used to cross-check it.
//! * [`fas`]: Berger–Shor feedback arc sets.
//! * [`features`]: the per-vertex, per-hop feature matrix.
//! * [`ingest`]: file formats and weight recipes.

pub mod algebra;
pub mod error;
pub mod fas;
pub mod features;
pub mod homology;
pub mod ingest;
pub mod quiver;

pub use algebra::{FieldMode, Matrix, Rational};
pub use error::{Error, Result};
pub use fas::{berger_shor, to_dag, FasResult};
pub use features::{feature_matrix, feature_vector, Execution, FeatureConfig, FeatureMatrix};
pub use homology::{build_chain_complex, dim_h1, ChainComplex, Representation};
pub use quiver::{Arrow, NChain, Path, Quiver, QuiverMorphism, WeightedQuiver};
