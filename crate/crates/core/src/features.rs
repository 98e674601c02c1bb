//! Per-vertex homology features.
//!
//! For vertex `v` and hop level `k`, take the vertices within `k` directed
//! hops of `v`, induce the subquiver, make it acyclic with a seeded
//! Berger–Shor pass, and record the dimension of its first homology with
//! scalar coefficients. Stacking these over `k = 1..=H` gives the row for
//! `v`.
//!
//! Each `(v, k)` pair draws its own seed from [`derive_seed`], so the rows
//! can be computed in any order, on any number of threads, with the same
//! result.

use serde::{Deserialize, Serialize};

use crate::algebra::FieldMode;
use crate::error::{Error, Result};
use crate::fas::{berger_shor, FasResult};
use crate::homology::{dim_h1, Representation};
use crate::quiver::{Subquiver, WeightedQuiver};

/// Settings shared by every row of a feature matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureConfig {
    /// Number of hop levels `H`.
    pub hops: usize,
    pub seed: u64,
    pub mode: FieldMode,
}

impl FeatureConfig {
    pub fn new(hops: usize, seed: u64) -> Self {
        FeatureConfig {
            hops,
            seed,
            mode: FieldMode::Exact,
        }
    }

    pub fn with_mode(mut self, mode: FieldMode) -> Self {
        self.mode = mode;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.hops == 0 {
            return Err(Error::Config("number of hops must be at least 1".into()));
        }
        if let FieldMode::Float { tol } = self.mode {
            if !(tol > 0.0) {
                return Err(Error::Config(format!("float tolerance must be positive, got {tol}")));
            }
        }
        Ok(())
    }
}

/// How rows are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    /// Rows on the current rayon pool. Same as `Serial` without the
    /// `parallel` feature.
    #[default]
    Parallel,
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for the acyclic step at vertex `vertex`, hop level `hop`:
/// `mix(mix(mix(seed) ^ vertex) ^ hop)` with the SplitMix64 finalizer.
pub fn derive_seed(seed: u64, vertex: usize, hop: usize) -> u64 {
    mix64(mix64(mix64(seed) ^ vertex as u64) ^ hop as u64)
}

/// Everything computed for one `(vertex, hop)` cell.
#[derive(Debug, Clone)]
pub struct HopRecord {
    pub hop: usize,
    /// Original indices of the neighbourhood vertices, ascending.
    pub neighbourhood: Subquiver,
    pub fas: FasResult,
    pub value: usize,
}

impl HopRecord {
    /// The acyclic subquiver the value was computed on.
    pub fn dag(&self) -> &WeightedQuiver {
        &self.fas.kept
    }
}

/// All hop levels for one vertex, with intermediate results.
pub fn feature_trace(wq: &WeightedQuiver, vertex: usize, config: &FeatureConfig) -> Result<Vec<HopRecord>> {
    config.validate()?;
    let q = wq.quiver();
    if vertex >= q.vertex_count() {
        return Err(Error::Config(format!(
            "vertex {vertex} out of range for {} vertices",
            q.vertex_count()
        )));
    }
    let scalar = Representation::scalar();
    (1..=config.hops)
        .map(|hop| {
            let nearby = q.k_hop_vertices(vertex, hop);
            let (sub, neighbourhood) = wq.induced_subquiver(&nearby);
            let fas = berger_shor(&sub, derive_seed(config.seed, vertex, hop));
            let value = dim_h1(&fas.kept, &scalar, config.mode)?;
            Ok(HopRecord {
                hop,
                neighbourhood,
                fas,
                value,
            })
        })
        .collect()
}

/// The feature row for one vertex.
pub fn feature_vector(wq: &WeightedQuiver, vertex: usize, config: &FeatureConfig) -> Result<Vec<u64>> {
    Ok(feature_trace(wq, vertex, config)?
        .into_iter()
        .map(|r| r.value as u64)
        .collect())
}

/// `N × H` matrix of first-homology dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    hops: usize,
    seed: u64,
    field_mode: String,
    tolerance: Option<f64>,
    /// Row-major values.
    values: Vec<u64>,
}

impl FeatureMatrix {
    pub fn from_rows(rows: Vec<Vec<u64>>, config: &FeatureConfig) -> Result<Self> {
        if rows.iter().any(|r| r.len() != config.hops) {
            return Err(Error::Dimension(format!("every row must have {} entries", config.hops)));
        }
        Ok(FeatureMatrix {
            hops: config.hops,
            seed: config.seed,
            field_mode: config.mode.name().to_string(),
            tolerance: config.mode.tolerance(),
            values: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        if self.hops == 0 {
            0
        } else {
            self.values.len() / self.hops
        }
    }

    pub fn hops(&self) -> usize {
        self.hops
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn field_mode(&self) -> &str {
        &self.field_mode
    }

    pub fn tolerance(&self) -> Option<f64> {
        self.tolerance
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.values[i * self.hops..(i + 1) * self.hops]
    }

    /// Entry for vertex `i` at hop level `k` (1-based, as in `h1..hH`).
    pub fn get(&self, i: usize, k: usize) -> u64 {
        self.values[i * self.hops + k - 1]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Inner product of flattened matrices, the graph kernel value.
    pub fn kernel(&self, other: &FeatureMatrix) -> Result<u128> {
        if (self.rows(), self.hops) != (other.rows(), other.hops) {
            return Err(Error::Dimension(format!(
                "kernel needs equal shapes, got {}x{} and {}x{}",
                self.rows(),
                self.hops,
                other.rows(),
                other.hops
            )));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| a as u128 * b as u128)
            .sum())
    }
}

/// Feature rows for every vertex.
pub fn feature_matrix(wq: &WeightedQuiver, config: &FeatureConfig) -> Result<FeatureMatrix> {
    feature_matrix_with(wq, config, Execution::default())
}

pub fn feature_matrix_with(wq: &WeightedQuiver, config: &FeatureConfig, execution: Execution) -> Result<FeatureMatrix> {
    config.validate()?;
    let n = wq.quiver().vertex_count();
    let rows: Vec<Vec<u64>> = match execution {
        Execution::Serial => (0..n).map(|v| feature_vector(wq, v, config)).collect::<Result<_>>()?,
        Execution::Parallel => parallel_rows(wq, config, n)?,
    };
    FeatureMatrix::from_rows(rows, config)
}

#[cfg(feature = "parallel")]
fn parallel_rows(wq: &WeightedQuiver, config: &FeatureConfig, n: usize) -> Result<Vec<Vec<u64>>> {
    use rayon::prelude::*;
    (0..n)
        .into_par_iter()
        .map(|v| feature_vector(wq, v, config))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_rows(wq: &WeightedQuiver, config: &FeatureConfig, n: usize) -> Result<Vec<Vec<u64>>> {
    (0..n).map(|v| feature_vector(wq, v, config)).collect()
}
