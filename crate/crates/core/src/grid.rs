//! Periodic discretization of ℝⁿ.
//!
//! A [`FrequencyGrid`] models the box `[-L/2, L/2)ⁿ` with `N` points per axis
//! together with its dual frequency lattice. Both lattices are stored in
//! centered order: storage index `i` on an axis corresponds to the signed
//! offset `j = i - N/2`, so
//!
//! ```text
//!     x_j = j · Δx,   Δx = L / N
//!     ξ_j = j · Δξ,   Δξ = 2π / L,      j ∈ {-N/2, …, N/2 - 1}
//! ```
//!
//! Multi-dimensional arrays are row-major with axis 0 varying slowest.
//! The offset `-N/2` on any axis is a Nyquist row: its mirror `+N/2` is not
//! part of the lattice (it aliases back to `-N/2`), so symmetry assertions
//! skip those points.
//!
//! Transforms carry physical units so that continuum symbol formulas act
//! unchanged:
//!
//! ```text
//!     forward:  f̂(ξ_j) = Δxⁿ Σ_k f(x_k) e^{-i⟨x_k, ξ_j⟩}
//!     inverse:  f(x_k) = L⁻ⁿ Σ_j f̂(ξ_j) e^{+i⟨x_k, ξ_j⟩}
//! ```

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Cplx, Real};

/// Maximum supported spatial dimension.
pub const MAX_DIM: usize = 3;

/// A lattice point or physical coordinate; entries past `dim` are zero.
pub type Point<T> = [T; MAX_DIM];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid<T> {
    dim: usize,
    points: usize,
    extent: T,
}

impl<T: Real> FrequencyGrid<T> {
    /// Validates and builds a grid of dimension `dim` with `points` samples
    /// per axis on a box of side `extent`.
    pub fn new(dim: usize, points: usize, extent: T) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&dim) {
            return Err(Error::InvalidGrid(format!("dimension must be 1, 2 or 3, got {dim}")));
        }
        if points < 4 || points % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "points per axis must be even and at least 4, got {points}"
            )));
        }
        if !(extent > T::zero()) || !extent.is_finite() {
            return Err(Error::InvalidGrid(format!("extent must be positive, got {extent}")));
        }
        Ok(Self { dim, points, extent })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn extent(&self) -> T {
        self.extent
    }

    /// Number of lattice points, `Nⁿ`.
    pub fn len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Spatial spacing `Δx = L / N`.
    pub fn dx(&self) -> T {
        self.extent / T::from_usize_lossy(self.points)
    }

    /// Frequency spacing `Δξ = 2π / L`.
    pub fn dxi(&self) -> T {
        T::TAU() / self.extent
    }

    /// `ξ_max = πN / L`, the magnitude of the Nyquist frequency.
    pub fn nyquist_radius(&self) -> T {
        T::PI() * T::from_usize_lossy(self.points) / self.extent
    }

    /// Volume of one spatial cell, `Δxⁿ`.
    pub fn cell_volume(&self) -> T {
        self.dx().powi(self.dim as i32)
    }

    /// Volume of the box, `Lⁿ`.
    pub fn volume(&self) -> T {
        self.extent.powi(self.dim as i32)
    }

    /// Signed offset `j = i - N/2` of storage index `i` on one axis.
    #[inline]
    pub fn offset(&self, i: usize) -> i64 {
        i as i64 - (self.points / 2) as i64
    }

    /// Storage index of a signed offset, wrapping periodically.
    #[inline]
    pub fn wrap(&self, j: i64) -> usize {
        let n = self.points as i64;
        (j + n / 2).rem_euclid(n) as usize
    }

    /// Per-axis signed offsets of the flat storage index `k`.
    pub fn offsets(&self, mut k: usize) -> [i64; MAX_DIM] {
        let mut out = [0i64; MAX_DIM];
        for axis in (0..self.dim).rev() {
            out[axis] = self.offset(k % self.points);
            k /= self.points;
        }
        out
    }

    /// Flat storage index of per-axis signed offsets (wrapped periodically).
    pub fn flat_index(&self, offsets: &[i64]) -> usize {
        offsets[..self.dim]
            .iter()
            .fold(0usize, |acc, &j| acc * self.points + self.wrap(j))
    }

    /// Spatial coordinate `x_k` of flat index `k`.
    pub fn spatial_point(&self, k: usize) -> Point<T> {
        self.scaled_point(k, self.dx())
    }

    /// Frequency `ξ_k` of flat index `k`.
    pub fn frequency_point(&self, k: usize) -> Point<T> {
        self.scaled_point(k, self.dxi())
    }

    fn scaled_point(&self, k: usize, step: T) -> Point<T> {
        let offs = self.offsets(k);
        let mut p = [T::zero(); MAX_DIM];
        for axis in 0..self.dim {
            p[axis] = T::from_index(offs[axis]) * step;
        }
        p
    }

    /// Squared lattice norm `Σ j_a²` of the frequency at flat index `k`, in
    /// units of `Δξ²`. Exact integer, used to group lattice radii.
    pub fn squared_offset_norm(&self, k: usize) -> u64 {
        self.offsets(k)[..self.dim]
            .iter()
            .map(|&j| (j * j) as u64)
            .sum()
    }

    /// True when any axis sits at the Nyquist offset `-N/2`.
    pub fn is_nyquist(&self, k: usize) -> bool {
        let nyq = -((self.points / 2) as i64);
        self.offsets(k)[..self.dim].contains(&nyq)
    }

    /// The one-dimensional frequency lattice in storage order.
    pub fn axis_frequencies(&self) -> Vec<T> {
        (0..self.points)
            .map(|i| T::from_index(self.offset(i)) * self.dxi())
            .collect()
    }

    /// The one-dimensional spatial lattice in storage order.
    pub fn axis_coordinates(&self) -> Vec<T> {
        (0..self.points)
            .map(|i| T::from_index(self.offset(i)) * self.dx())
            .collect()
    }

    /// Sorted distinct radii `|ξ|` over the frequency lattice, including 0.
    pub fn lattice_radii(&self) -> Vec<T> {
        let mut squares: Vec<u64> = (0..self.len()).map(|k| self.squared_offset_norm(k)).collect();
        squares.sort_unstable();
        squares.dedup();
        let dxi = self.dxi();
        squares
            .into_iter()
            .map(|s| T::from_u64(s).expect("u64 representable").sqrt() * dxi)
            .collect()
    }
}

impl<T: Real> fmt::Display for FrequencyGrid<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} N={} L={}", self.dim, self.points, self.extent)
    }
}

/// Which lattice a grid function is sampled on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Space,
    Frequency,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Space => "space",
            Domain::Frequency => "frequency",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Space to frequency.
    Forward,
    /// Frequency to space.
    Inverse,
}

/// Scalar complex function on the spatial or frequency lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    grid: FrequencyGrid<T>,
    values: Vec<Cplx<T>>,
    domain: Domain,
}

impl<T: Real> GridFunction<T> {
    pub fn new(grid: FrequencyGrid<T>, values: Vec<Cplx<T>>, domain: Domain) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} values, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(Self { grid, values, domain })
    }

    pub fn zeros(grid: FrequencyGrid<T>, domain: Domain) -> Self {
        Self { grid, values: vec![Cplx::zero(); grid.len()], domain }
    }

    /// Samples `f` at every spatial lattice point.
    pub fn from_space_fn(grid: FrequencyGrid<T>, f: impl Fn(&[T]) -> Cplx<T>) -> Self {
        let values = (0..grid.len())
            .map(|k| f(&grid.spatial_point(k)[..grid.dim()]))
            .collect();
        Self { grid, values, domain: Domain::Space }
    }

    /// Discrete delta: `1/Δxⁿ` at the origin, zero elsewhere.
    pub fn delta(grid: FrequencyGrid<T>) -> Self {
        let mut out = Self::zeros(grid, Domain::Space);
        let origin = grid.flat_index(&[0; MAX_DIM]);
        out.values[origin] = Cplx::new(grid.cell_volume().recip(), T::zero());
        out
    }

    pub fn grid(&self) -> &FrequencyGrid<T> {
        &self.grid
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn values(&self) -> &[Cplx<T>] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Cplx<T>] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Cplx<T>> {
        self.values
    }

    /// Largest pointwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    pub(crate) fn require(&self, domain: Domain, grid: &FrequencyGrid<T>) -> Result<()> {
        if self.grid != *grid {
            return Err(Error::GridMismatch);
        }
        if self.domain != domain {
            return Err(Error::DomainMismatch { expected: domain, found: self.domain });
        }
        Ok(())
    }
}

/// Function on the spatial lattice with values in `X = ℓ_q^d`.
///
/// Values are stored component-major: component `c` occupies
/// `values[c·Nⁿ .. (c+1)·Nⁿ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorGridFunction<T> {
    grid: FrequencyGrid<T>,
    fiber_dim: usize,
    fiber_exponent: T,
    values: Vec<Cplx<T>>,
}

impl<T: Real> VectorGridFunction<T> {
    pub fn new(
        grid: FrequencyGrid<T>,
        fiber_dim: usize,
        fiber_exponent: T,
        values: Vec<Cplx<T>>,
    ) -> Result<Self> {
        if fiber_dim == 0 {
            return Err(Error::InvalidParameter("fiber dimension must be at least 1".into()));
        }
        check_exponent(fiber_exponent)?;
        if values.len() != grid.len() * fiber_dim {
            return Err(Error::InvalidParameter(format!(
                "expected {} values, got {}",
                grid.len() * fiber_dim,
                values.len()
            )));
        }
        Ok(Self { grid, fiber_dim, fiber_exponent, values })
    }

    /// Stacks scalar spatial functions as the components of a vector function.
    pub fn from_components(components: &[GridFunction<T>], fiber_exponent: T) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidParameter("at least one component required".into()))?;
        let grid = *first.grid();
        let mut values = Vec::with_capacity(grid.len() * components.len());
        for c in components {
            c.require(Domain::Space, &grid)?;
            values.extend_from_slice(c.values());
        }
        Self::new(grid, components.len(), fiber_exponent, values)
    }

    pub fn grid(&self) -> &FrequencyGrid<T> {
        &self.grid
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn fiber_exponent(&self) -> T {
        self.fiber_exponent
    }

    pub fn values(&self) -> &[Cplx<T>] {
        &self.values
    }

    pub fn component(&self, c: usize) -> &[Cplx<T>] {
        let len = self.grid.len();
        &self.values[c * len..(c + 1) * len]
    }

    /// Component `c` as a scalar spatial function.
    pub fn component_function(&self, c: usize) -> GridFunction<T> {
        GridFunction { grid: self.grid, values: self.component(c).to_vec(), domain: Domain::Space }
    }

    /// Pointwise fiber norms `‖F(x_k)‖_{ℓ_q}`.
    pub fn fiber_norms(&self) -> Vec<T> {
        let len = self.grid.len();
        let q = self.fiber_exponent;
        (0..len)
            .map(|k| {
                let fiber = (0..self.fiber_dim).map(|c| self.values[c * len + k].norm());
                lp_of_magnitudes(fiber, q, T::one())
            })
            .collect()
    }
}

/// Rejects exponents below 1 (and NaN). `+∞` is accepted.
pub fn check_exponent<T: Real>(p: T) -> Result<()> {
    if p >= T::one() {
        Ok(())
    } else {
        Err(Error::InvalidExponent(p.as_f64()))
    }
}

/// `(Σ |a_k|^p · weight)^{1/p}`, or `max |a_k|` at `p = ∞`. Rescales by the
/// largest magnitude so large `p` does not overflow.
pub(crate) fn lp_of_magnitudes<T: Real>(mags: impl Iterator<Item = T> + Clone, p: T, weight: T) -> T {
    let max = mags.clone().fold(T::zero(), T::max);
    if p.is_infinite() || max == T::zero() {
        return max;
    }
    let sum: T = mags.map(|a| (a / max).powf(p)).sum();
    max * (sum * weight).powf(p.recip())
}

/// Discrete `L^p(ℝⁿ)` / `L^p(ℝⁿ, ℓ_q^d)` norm of a spatial function.
pub trait LpNorm<T> {
    fn lp_norm(&self, p: T) -> Result<T>;
}

impl<T: Real> LpNorm<T> for GridFunction<T> {
    fn lp_norm(&self, p: T) -> Result<T> {
        check_exponent(p)?;
        if self.domain != Domain::Space {
            return Err(Error::DomainMismatch { expected: Domain::Space, found: self.domain });
        }
        Ok(lp_of_magnitudes(self.values.iter().map(|v| v.norm()), p, self.grid.cell_volume()))
    }
}

impl<T: Real> LpNorm<T> for VectorGridFunction<T> {
    fn lp_norm(&self, p: T) -> Result<T> {
        check_exponent(p)?;
        let fibers = self.fiber_norms();
        Ok(lp_of_magnitudes(fibers.iter().copied(), p, self.grid.cell_volume()))
    }
}

/// Free-function form of [`LpNorm::lp_norm`].
pub fn lp_norm<T: Real, F: LpNorm<T>>(f: &F, p: T) -> Result<T> {
    f.lp_norm(p)
}

/// `(L⁻ⁿ Σ_j |f̂(ξ_j)|²)^{1/2}`, which equals the spatial `L²` norm of the
/// inverse transform under the scaling used here.
pub fn frequency_l2_norm<T: Real>(fhat: &GridFunction<T>) -> Result<T> {
    if fhat.domain != Domain::Frequency {
        return Err(Error::DomainMismatch { expected: Domain::Frequency, found: fhat.domain });
    }
    let sum: T = fhat.values.iter().map(|v| v.norm_sqr()).sum();
    Ok((sum / fhat.grid.volume()).sqrt())
}

/// Planned n-dimensional transforms for one grid.
#[derive(Clone)]
pub struct Transformer<T: Real> {
    grid: FrequencyGrid<T>,
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
}

impl<T: Real> fmt::Debug for Transformer<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Transformer").field("grid", &self.grid).finish()
    }
}

impl<T: Real> Transformer<T> {
    pub fn new(grid: FrequencyGrid<T>) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            grid,
            forward: planner.plan_fft_forward(grid.points()),
            inverse: planner.plan_fft_inverse(grid.points()),
        }
    }

    pub fn grid(&self) -> &FrequencyGrid<T> {
        &self.grid
    }

    /// In-place space → frequency transform of centered-order samples.
    pub fn forward_in_place(&self, values: &mut [Cplx<T>]) {
        self.run(values, &*self.forward, self.grid.cell_volume());
    }

    /// In-place frequency → space transform of centered-order samples.
    pub fn inverse_in_place(&self, values: &mut [Cplx<T>]) {
        self.run(values, &*self.inverse, self.grid.volume().recip());
    }

    pub fn transform(&self, f: &GridFunction<T>, direction: Direction) -> Result<GridFunction<T>> {
        let (from, to) = match direction {
            Direction::Forward => (Domain::Space, Domain::Frequency),
            Direction::Inverse => (Domain::Frequency, Domain::Space),
        };
        f.require(from, &self.grid)?;
        let mut values = f.values.clone();
        match direction {
            Direction::Forward => self.forward_in_place(&mut values),
            Direction::Inverse => self.inverse_in_place(&mut values),
        }
        Ok(GridFunction { grid: self.grid, values, domain: to })
    }

    fn run(&self, values: &mut [Cplx<T>], fft: &dyn Fft<T>, scale: T) {
        let n = self.grid.points();
        let half = n / 2;
        let dim = self.grid.dim();
        assert_eq!(values.len(), self.grid.len());
        let mut line = vec![Cplx::zero(); n];
        let mut scratch = vec![Cplx::zero(); fft.get_inplace_scratch_len()];
        for axis in 0..dim {
            let stride = n.pow((dim - 1 - axis) as u32);
            let block = stride * n;
            for start in (0..values.len()).step_by(block) {
                for inner in 0..stride {
                    let base = start + inner;
                    // Centered order → FFT order is a half-length rotation,
                    // and the rotation is its own inverse because N is even.
                    for (i, slot) in line.iter_mut().enumerate() {
                        *slot = values[base + ((i + half) % n) * stride];
                    }
                    fft.process_with_scratch(&mut line, &mut scratch);
                    for (i, v) in line.iter().enumerate() {
                        values[base + ((i + half) % n) * stride] = *v;
                    }
                }
            }
        }
        if scale != T::one() {
            for v in values.iter_mut() {
                *v = *v * scale;
            }
        }
    }
}

/// One-shot transform; plans a fresh [`Transformer`].
pub fn transform<T: Real>(f: &GridFunction<T>, direction: Direction) -> Result<GridFunction<T>> {
    Transformer::new(*f.grid()).transform(f, direction)
}
