//! Homology of weighted acyclic quivers.
//!
//! Two routes compute the same first homology. The fast route takes the
//! nullity of the arrow-level boundary matrix (one column block per arrow,
//! `-I` at the source and the weight action at the target). The oracle route
//! builds the normalized chain complex of the free category, whose degree-`n`
//! basis is the nondegenerate `n`-chains, and reads off every homology
//! dimension from ranks of its boundary matrices.
//!
//! Coefficients live in a [`Representation`] of the multiplicative weight
//! monoid. Chains are tensored with it coordinate-wise: the chain at basis
//! position `j` occupies matrix columns `j*d .. (j+1)*d`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{FieldMode, Matrix, Rational};
use crate::error::{Error, Result};
use crate::quiver::{NChain, Path, QuiverMorphism, WeightedQuiver};

type ActionFn = dyn Fn(&Rational) -> Matrix<Rational> + Send + Sync;

#[derive(Clone)]
enum Action {
    Scalar,
    Trivial,
    DiagonalPowers(Vec<i32>),
    Custom(Arc<ActionFn>),
}

/// A finite-dimensional representation of the weight monoid: each weight
/// acts by an invertible `dim × dim` matrix.
#[derive(Clone)]
pub struct Representation {
    dim: usize,
    action: Action,
}

impl Representation {
    /// The field acted on by multiplication, `k(w)`.
    pub fn scalar() -> Self {
        Representation {
            dim: 1,
            action: Action::Scalar,
        }
    }

    /// Every weight acts as the identity on `k^dim`.
    pub fn trivial(dim: usize) -> Self {
        Representation {
            dim,
            action: Action::Trivial,
        }
    }

    /// `w` acts as `diag(w^e_1, …, w^e_d)`.
    pub fn diagonal_powers(exponents: Vec<i32>) -> Self {
        Representation {
            dim: exponents.len(),
            action: Action::DiagonalPowers(exponents),
        }
    }

    /// Arbitrary action. It must be multiplicative for the boundary maps to
    /// square to zero; [`build_chain_complex`] checks this.
    pub fn custom(
        dim: usize,
        act: impl Fn(&Rational) -> Matrix<Rational> + Send + Sync + 'static,
    ) -> Self {
        Representation {
            dim,
            action: Action::Custom(Arc::new(act)),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The matrix by which `w` acts, checked for shape and invertibility.
    pub fn act(&self, w: &Rational) -> Result<Matrix<Rational>> {
        let m = match &self.action {
            Action::Scalar => Matrix::from_vec(1, 1, vec![w.clone()])?,
            Action::Trivial => Matrix::identity(self.dim),
            Action::DiagonalPowers(exps) => {
                let mut m = Matrix::zeros(self.dim, self.dim);
                for (i, &e) in exps.iter().enumerate() {
                    if w.is_zero() && e < 0 {
                        return Err(Error::NonInvertibleAction {
                            weight: w.to_string(),
                        });
                    }
                    m[(i, i)] = num_traits::pow::pow(w.clone(), e.unsigned_abs() as usize);
                    if e < 0 {
                        m[(i, i)] = m[(i, i)].recip();
                    }
                }
                m
            }
            Action::Custom(f) => f(w),
        };
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::Dimension(format!(
                "action of {w} is {}x{}, expected {d}x{d}",
                m.rows(),
                m.cols(),
                d = self.dim
            )));
        }
        if m.rank() != self.dim {
            return Err(Error::NonInvertibleAction {
                weight: w.to_string(),
            });
        }
        Ok(m)
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.action {
            Action::Scalar => "scalar".to_string(),
            Action::Trivial => "trivial".to_string(),
            Action::DiagonalPowers(e) => format!("diagonal_powers{e:?}"),
            Action::Custom(_) => "custom".to_string(),
        };
        f.debug_struct("Representation")
            .field("dim", &self.dim)
            .field("action", &kind)
            .finish()
    }
}

/// Memoizes `rep.act` over the weights that occur.
struct ActionCache<'a> {
    rep: &'a Representation,
    cache: HashMap<Rational, Matrix<Rational>>,
}

impl<'a> ActionCache<'a> {
    fn new(rep: &'a Representation) -> Self {
        ActionCache {
            rep,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, w: &Rational) -> Result<&Matrix<Rational>> {
        if !self.cache.contains_key(w) {
            let m = self.rep.act(w)?;
            self.cache.insert(w.clone(), m);
        }
        Ok(&self.cache[w])
    }
}

fn require_acyclic(wq: &WeightedQuiver) -> Result<()> {
    match wq.quiver().find_cycle() {
        Some(cycle) => Err(Error::Cyclic { cycle }),
        None => Ok(()),
    }
}

fn add_block(m: &mut Matrix<Rational>, row: usize, col: usize, block: &Matrix<Rational>, sign: bool) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let x = &block[(i, j)];
            if x.is_zero() {
                continue;
            }
            let slot = &mut m[(row + i, col + j)];
            *slot = if sign { &*slot + x } else { &*slot - x };
        }
    }
}

fn add_identity(m: &mut Matrix<Rational>, row: usize, col: usize, d: usize, sign: bool) {
    let one = Rational::one();
    for i in 0..d {
        let slot = &mut m[(row + i, col + i)];
        *slot = if sign { &*slot + &one } else { &*slot - &one };
    }
}

/// Arrow-level boundary matrix. Rows are `vertex ⊗ M` coordinates, columns
/// `arrow ⊗ M` coordinates; the block for arrow `u` holds `-I` at its source
/// and `act(w(u))` at its target.
pub fn boundary1_matrix(wq: &WeightedQuiver, rep: &Representation) -> Result<Matrix<Rational>> {
    require_acyclic(wq)?;
    let q = wq.quiver();
    let d = rep.dim();
    let mut acts = ActionCache::new(rep);
    let mut m = Matrix::zeros(q.vertex_count() * d, q.arrow_count() * d);
    for (u, arrow) in q.arrows().iter().enumerate() {
        add_identity(&mut m, arrow.source * d, u * d, d, false);
        let act = acts.get(wq.weight(u))?;
        add_block(&mut m, arrow.target * d, u * d, act, true);
    }
    Ok(m)
}

/// Dimension of the first homology, as the nullity of the arrow-level
/// boundary matrix.
pub fn dim_h1(wq: &WeightedQuiver, rep: &Representation, mode: FieldMode) -> Result<usize> {
    let m = boundary1_matrix(wq, rep)?;
    let rank = match mode {
        FieldMode::Exact => m.rank(),
        FieldMode::Float { tol } => m.to_f64().rank_tol(tol),
    };
    Ok(m.cols() - rank)
}

/// Basis of the first homology, as vectors over the `arrow ⊗ M` coordinates.
pub fn h1_kernel_basis(wq: &WeightedQuiver, rep: &Representation) -> Result<Vec<Vec<Rational>>> {
    Ok(boundary1_matrix(wq, rep)?.kernel_basis())
}

/// A truncated normalized chain complex of a weighted acyclic quiver,
/// degrees `0..=n_max`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    quiver: WeightedQuiver,
    rep: Representation,
    ell: Option<usize>,
    /// `chains[n - 1]` is the degree-`n` basis.
    chains: Vec<Vec<NChain>>,
    /// `boundaries[n - 1]` is the boundary out of degree `n`.
    boundaries: Vec<Matrix<Rational>>,
}

impl ChainComplex {
    pub fn n_max(&self) -> usize {
        self.chains.len()
    }

    pub fn ell(&self) -> Option<usize> {
        self.ell
    }

    pub fn quiver(&self) -> &WeightedQuiver {
        &self.quiver
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    /// Number of basis elements in degree `n`, before tensoring with the
    /// coefficients. Degree 0 is the vertex set.
    pub fn basis_len(&self, n: usize) -> usize {
        match n {
            0 => self.quiver.quiver().vertex_count(),
            n => self.chains[n - 1].len(),
        }
    }

    /// Degree-`n` chains for `n >= 1`.
    pub fn chains(&self, n: usize) -> &[NChain] {
        &self.chains[n - 1]
    }

    /// Boundary out of degree `n`, for `1 <= n <= n_max`.
    pub fn boundary(&self, n: usize) -> &Matrix<Rational> {
        &self.boundaries[n - 1]
    }

    /// Dimension of the degree-`n` chain space including coefficients.
    pub fn chain_dim(&self, n: usize) -> usize {
        self.basis_len(n) * self.rep.dim()
    }

    /// Homology dimensions in degrees `0..n_max`.
    ///
    /// The top degree is omitted because the boundary out of degree
    /// `n_max + 1` is not built.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.boundaries.iter().map(|m| m.rank()).collect();
        (0..self.n_max())
            .map(|n| {
                let incoming = if n == 0 { 0 } else { ranks[n - 1] };
                self.chain_dim(n) - incoming - ranks[n]
            })
            .collect()
    }
}

fn chain_index(chains: &[NChain]) -> HashMap<&NChain, usize> {
    chains.iter().enumerate().map(|(i, c)| (c, i)).collect()
}

/// Builds the normalized chain complex up to degree `n_max`, optionally
/// restricted to chains whose composite has length at most `ell`, and
/// checks that consecutive boundaries compose to zero.
pub fn build_chain_complex(
    wq: &WeightedQuiver,
    rep: &Representation,
    n_max: usize,
    ell: Option<usize>,
) -> Result<ChainComplex> {
    require_acyclic(wq)?;
    if n_max == 0 {
        return Err(Error::Config("n_max must be positive".into()));
    }
    let q = wq.quiver();
    let chains: Vec<Vec<NChain>> = (1..=n_max)
        .map(|n| q.enumerate_nchains(n, ell))
        .collect::<Result<_>>()?;
    let d = rep.dim();
    let mut acts = ActionCache::new(rep);
    let mut boundaries = Vec::with_capacity(n_max);

    for n in 1..=n_max {
        let basis = &chains[n - 1];
        let rows = if n == 1 { q.vertex_count() } else { chains[n - 2].len() };
        let mut m = Matrix::zeros(rows * d, basis.len() * d);
        let faces = if n == 1 { HashMap::new() } else { chain_index(&chains[n - 2]) };
        let lookup = |face: NChain| -> usize {
            *faces
                .get(&face)
                .expect("faces of a truncated chain stay within the truncation")
        };
        for (j, chain) in basis.iter().enumerate() {
            let col = j * d;
            let parts = chain.morphisms();
            let first = &parts[0];
            let act = acts.get(&wq.path_weight(first))?;
            if n == 1 {
                add_block(&mut m, first.target() * d, col, act, true);
                add_identity(&mut m, first.source() * d, col, d, false);
                continue;
            }
            // Dropping the first morphism twists the coefficient by its weight.
            let row = lookup(NChain::from_parts(parts[1..].to_vec()));
            add_block(&mut m, row * d, col, act, true);
            for i in 1..n {
                let mut merged: Vec<Path> = Vec::with_capacity(n - 1);
                merged.extend_from_slice(&parts[..i - 1]);
                merged.push(parts[i - 1].then(&parts[i]));
                merged.extend_from_slice(&parts[i + 1..]);
                let row = lookup(NChain::from_parts(merged));
                add_identity(&mut m, row * d, col, d, i % 2 == 0);
            }
            let row = lookup(NChain::from_parts(parts[..n - 1].to_vec()));
            add_identity(&mut m, row * d, col, d, n % 2 == 0);
        }
        boundaries.push(m);
    }

    for n in 2..=n_max {
        if !boundaries[n - 2].mul(&boundaries[n - 1])?.is_zero() {
            return Err(Error::NotAChainComplex { degree: n });
        }
    }

    Ok(ChainComplex {
        quiver: wq.clone(),
        rep: rep.clone(),
        ell,
        chains,
        boundaries,
    })
}

/// Convenience for `build_chain_complex(..).homology_dims()`.
pub fn homology_dims(complex: &ChainComplex) -> Vec<usize> {
    complex.homology_dims()
}

/// Chain map induced by a quiver morphism `f`, a weight map, and a linear
/// map `phi: M -> M'` of coefficients. Returns one matrix per degree
/// `0..=min(n_max)`.
///
/// Preconditions checked: `f` preserves incidence, `w'(f(u)) =
/// weight_map(w(u))` for every arrow, and `phi · act(w) = act'(weight_map(w))
/// · phi` for every arrow weight `w`. Every image chain must lie in the
/// target's (possibly truncated) basis.
pub fn induced_chain_map(
    f: &QuiverMorphism,
    weight_map: &dyn Fn(&Rational) -> Rational,
    phi: &Matrix<Rational>,
    source: &ChainComplex,
    target: &ChainComplex,
) -> Result<Vec<Matrix<Rational>>> {
    let (src_q, tgt_q) = (source.quiver(), target.quiver());
    f.validate(src_q.quiver(), tgt_q.quiver())?;
    let (d, d_prime) = (source.rep.dim(), target.rep.dim());
    if phi.rows() != d_prime || phi.cols() != d {
        return Err(Error::Dimension(format!(
            "coefficient map is {}x{}, expected {d_prime}x{d}",
            phi.rows(),
            phi.cols()
        )));
    }
    let mut src_acts = ActionCache::new(&source.rep);
    let mut tgt_acts = ActionCache::new(&target.rep);
    for (u, &image) in f.arrow_map.iter().enumerate() {
        let w = src_q.weight(u);
        let mapped = weight_map(w);
        if *tgt_q.weight(image) != mapped {
            return Err(Error::Morphism(format!(
                "weight of arrow {u} maps to {mapped}, but its image carries {}",
                tgt_q.weight(image)
            )));
        }
        let left = phi.mul(src_acts.get(w)?)?;
        let right = tgt_acts.get(&mapped)?.mul(phi)?;
        if left != right {
            return Err(Error::Morphism(format!(
                "coefficient map does not intertwine the action of weight {w}"
            )));
        }
    }

    let degrees = source.n_max().min(target.n_max());
    let mut maps = Vec::with_capacity(degrees + 1);
    let mut vertices = Matrix::zeros(target.chain_dim(0), source.chain_dim(0));
    for (v, &image) in f.vertex_map.iter().enumerate() {
        vertices.set_block(image * d_prime, v * d, phi);
    }
    maps.push(vertices);
    for n in 1..=degrees {
        let index = chain_index(target.chains(n));
        let mut m = Matrix::zeros(target.chain_dim(n), source.chain_dim(n));
        for (j, chain) in source.chains(n).iter().enumerate() {
            let image = NChain::from_parts(
                chain
                    .morphisms()
                    .iter()
                    .map(|p| p.map_arrows(&f.arrow_map, &f.vertex_map))
                    .collect(),
            );
            let row = *index.get(&image).ok_or_else(|| {
                Error::Morphism(format!("image of degree-{n} chain {j} is outside the target basis"))
            })?;
            m.set_block(row * d_prime, j * d, phi);
        }
        maps.push(m);
    }
    Ok(maps)
}

/// Checks `∂'_n · f_n = f_{n-1} · ∂_n` for every degree covered by `maps`.
pub fn is_chain_map(source: &ChainComplex, target: &ChainComplex, maps: &[Matrix<Rational>]) -> Result<bool> {
    for n in 1..maps.len() {
        let left = target.boundary(n).mul(&maps[n])?;
        let right = maps[n - 1].mul(source.boundary(n))?;
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}
