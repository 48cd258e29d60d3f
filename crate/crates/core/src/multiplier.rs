//! Fourier multipliers `T_φ f = F⁻¹(φ · F f)` on the discrete torus, spatial
//! rotations and the conjugation average
//!
//! ```text
//!     Q(T_φ) f = ∫ S_{R⁻¹} T_φ S_R f dμ(R),    (S_R f)(x) = f(Rx).
//! ```

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Domain, FrequencyGrid, GridFunction, Transformer, VectorGridFunction, MAX_DIM};
use crate::radialize::project_for_grid;
use crate::rotation::{Rotation, RotationQuadrature};
use crate::scalar::{Cplx, Real};
use crate::symbols::{sample_symbol, SampledSymbol, Symbol};

/// Fourier multiplier bound to one grid, with its samples and FFT plans.
#[derive(Debug, Clone)]
pub struct MultiplierOperator<T: Real> {
    symbol: Symbol<T>,
    samples: SampledSymbol<T>,
    transformer: Transformer<T>,
}

impl<T: Real> MultiplierOperator<T> {
    pub fn new(symbol: Symbol<T>, grid: FrequencyGrid<T>) -> Result<Self> {
        let samples = sample_symbol(&symbol, &grid)?;
        Ok(Self { symbol, samples, transformer: Transformer::new(grid) })
    }

    pub fn from_samples(samples: SampledSymbol<T>) -> Self {
        let grid = *samples.grid();
        Self { symbol: Symbol::Sampled(samples.clone()), samples, transformer: Transformer::new(grid) }
    }

    pub fn symbol(&self) -> &Symbol<T> {
        &self.symbol
    }

    pub fn grid(&self) -> &FrequencyGrid<T> {
        self.samples.grid()
    }

    pub fn samples(&self) -> &SampledSymbol<T> {
        &self.samples
    }

    /// Multiplier with the conjugate symbol.
    pub fn adjoint(&self) -> Self {
        let conj = self.samples.values().iter().map(|v| v.conj()).collect();
        Self::from_samples(SampledSymbol::new(*self.grid(), conj).expect("same length"))
    }

    /// Applies the multiplier to raw spatial samples in place.
    pub fn apply_in_place(&self, values: &mut [Cplx<T>]) {
        self.transformer.forward_in_place(values);
        for (v, s) in values.iter_mut().zip(self.samples.values()) {
            *v = *v * *s;
        }
        self.transformer.inverse_in_place(values);
    }

    pub fn apply(&self, f: &GridFunction<T>) -> Result<GridFunction<T>> {
        f.require(Domain::Space, self.grid())?;
        let mut values = f.values().to_vec();
        self.apply_in_place(&mut values);
        GridFunction::new(*self.grid(), values, Domain::Space)
    }

    /// `(T_φ ⊗ Id_X) F`: the multiplier acts on each component.
    pub fn apply_vector(&self, f: &VectorGridFunction<T>) -> Result<VectorGridFunction<T>> {
        if f.grid() != self.grid() {
            return Err(Error::GridMismatch);
        }
        let len = self.grid().len();
        let mut values = f.values().to_vec();
        values.par_chunks_mut(len).for_each(|c| self.apply_in_place(c));
        VectorGridFunction::new(*self.grid(), f.fiber_dim(), f.fiber_exponent(), values)
    }

    /// Convolution kernel `K = F⁻¹φ` on the spatial lattice.
    pub fn kernel(&self) -> GridFunction<T> {
        let mut values = self.samples.values().to_vec();
        self.transformer.inverse_in_place(&mut values);
        GridFunction::new(*self.grid(), values, Domain::Space).expect("same length")
    }

    /// `Σ |K(x_k)| Δxⁿ`.
    pub fn kernel_l1(&self) -> T {
        let k = self.kernel();
        k.values().iter().map(|v| v.norm()).sum::<T>() * self.grid().cell_volume()
    }

    pub fn positivity(&self, tol: T) -> KernelPositivity {
        KernelPositivity::of_kernel(&self.kernel(), tol)
    }
}

/// How a spatial function is rotated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RotationMode {
    /// Index permutation; only for rotations that preserve the lattice.
    Exact,
    /// Multilinear interpolation; points that leave the box read as zero.
    Interpolated,
}

/// `(S_R f)(x_k) = f(R x_k)`.
pub fn rotate_function<T: Real>(f: &GridFunction<T>, rotation: &Rotation<T>, mode: RotationMode) -> Result<GridFunction<T>> {
    let grid = *f.grid();
    f.require(Domain::Space, &grid)?;
    if rotation.dim() != grid.dim() {
        return Err(Error::InvalidParameter("rotation and grid differ in dimension".into()));
    }
    let src = f.values();
    let values = match mode {
        RotationMode::Exact => {
            let perm = rotation.signed_permutation().ok_or(Error::NotLatticePreserving)?;
            (0..grid.len())
                .map(|k| src[grid.flat_index(&perm.apply(&grid.offsets(k)))])
                .collect()
        }
        RotationMode::Interpolated => (0..grid.len())
            .into_par_iter()
            .map(|k| interpolate(&grid, src, rotation, k))
            .collect(),
    };
    GridFunction::new(grid, values, Domain::Space)
}

fn interpolate<T: Real>(grid: &FrequencyGrid<T>, src: &[Cplx<T>], rotation: &Rotation<T>, k: usize) -> Cplx<T> {
    let n = grid.dim();
    let offsets = grid.offsets(k);
    let mut j = [T::zero(); MAX_DIM];
    for a in 0..n {
        j[a] = T::from_index(offsets[a]);
    }
    // Rotating lattice offsets is the same as rotating points, in units of Δx.
    let u = rotation.apply(&j[..n]);
    let mut base = [0i64; MAX_DIM];
    let mut frac = [T::zero(); MAX_DIM];
    for a in 0..n {
        let fl = u[a].floor();
        base[a] = fl.to_i64().expect("finite coordinate");
        frac[a] = u[a] - fl;
    }
    let half = (grid.points() / 2) as i64;
    let mut acc = Cplx::zero();
    for corner in 0..(1usize << n) {
        let mut weight = T::one();
        let mut idx = [0i64; MAX_DIM];
        for a in 0..n {
            if corner >> a & 1 == 1 {
                weight = weight * frac[a];
                idx[a] = base[a] + 1;
            } else {
                weight = weight * (T::one() - frac[a]);
                idx[a] = base[a];
            }
        }
        let inside = idx[..n].iter().all(|&i| (-half..half).contains(&i));
        if inside && !weight.is_zero() {
            acc = acc + src[grid.flat_index(&idx)] * weight;
        }
    }
    acc
}

/// Spatial inputs accepted by the conjugation average: scalar functions and
/// `X`-valued functions, rotated component by component.
pub trait SpatialField<T: Real>: Sized + Send + Sync {
    fn grid(&self) -> &FrequencyGrid<T>;
    fn values(&self) -> &[Cplx<T>];
    fn map_scalar(&self, f: &(dyn Fn(&GridFunction<T>) -> Result<GridFunction<T>> + Sync)) -> Result<Self>;
    fn with_values(&self, values: Vec<Cplx<T>>) -> Result<Self>;
}

impl<T: Real> SpatialField<T> for GridFunction<T> {
    fn grid(&self) -> &FrequencyGrid<T> {
        GridFunction::grid(self)
    }

    fn values(&self) -> &[Cplx<T>] {
        GridFunction::values(self)
    }

    fn map_scalar(&self, f: &(dyn Fn(&GridFunction<T>) -> Result<GridFunction<T>> + Sync)) -> Result<Self> {
        f(self)
    }

    fn with_values(&self, values: Vec<Cplx<T>>) -> Result<Self> {
        GridFunction::new(*self.grid(), values, self.domain())
    }
}

impl<T: Real> SpatialField<T> for VectorGridFunction<T> {
    fn grid(&self) -> &FrequencyGrid<T> {
        VectorGridFunction::grid(self)
    }

    fn values(&self) -> &[Cplx<T>] {
        VectorGridFunction::values(self)
    }

    fn map_scalar(&self, f: &(dyn Fn(&GridFunction<T>) -> Result<GridFunction<T>> + Sync)) -> Result<Self> {
        let parts = (0..self.fiber_dim())
            .map(|c| f(&self.component_function(c)))
            .collect::<Result<Vec<_>>>()?;
        VectorGridFunction::from_components(&parts, self.fiber_exponent())
    }

    fn with_values(&self, values: Vec<Cplx<T>>) -> Result<Self> {
        VectorGridFunction::new(*self.grid(), self.fiber_dim(), self.fiber_exponent(), values)
    }
}

/// `S_{R⁻¹} T_φ S_R f`.
pub fn conjugated_apply<T: Real, F: SpatialField<T>>(
    op: &MultiplierOperator<T>,
    rotation: &Rotation<T>,
    f: &F,
    mode: RotationMode,
) -> Result<F> {
    if f.grid() != op.grid() {
        return Err(Error::GridMismatch);
    }
    let inverse = rotation.inverse();
    f.map_scalar(&|g| {
        let turned = rotate_function(g, rotation, mode)?;
        let applied = op.apply(&turned)?;
        rotate_function(&applied, &inverse, mode)
    })
}

/// Nodes evaluated concurrently per block; blocks are summed in node order so
/// the result does not depend on the thread count.
const AVERAGE_BLOCK: usize = 32;

/// `Σ_j w_j S_{R_j⁻¹} T_φ S_{R_j} f`.
pub fn average_conjugated<T: Real, F: SpatialField<T>>(
    op: &MultiplierOperator<T>,
    rq: &RotationQuadrature<T>,
    f: &F,
    mode: RotationMode,
) -> Result<F> {
    if rq.dim() != op.grid().dim() {
        return Err(Error::InvalidParameter("rotation rule and grid differ in dimension".into()));
    }
    let mut acc = vec![Cplx::zero(); f.values().len()];
    let pairs: Vec<_> = rq.nodes().iter().zip(rq.weights()).collect();
    for block in pairs.chunks(AVERAGE_BLOCK) {
        let terms = block
            .par_iter()
            .map(|(r, _)| conjugated_apply(op, r, f, mode))
            .collect::<Result<Vec<_>>>()?;
        for (term, (_, &w)) in terms.iter().zip(block) {
            for (a, v) in acc.iter_mut().zip(term.values()) {
                *a = *a + *v * w;
            }
        }
    }
    f.with_values(acc)
}

/// Outcome of a kernel positivity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Positive,
    NotPositive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PositivityReason {
    Positive,
    NegativeKernel,
    ImaginaryResidue,
}

/// `min Re K` and `max |Im K|` with the resulting verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelPositivity {
    pub min_real: f64,
    pub max_imag: f64,
    pub verdict: Verdict,
    pub reason: PositivityReason,
}

impl KernelPositivity {
    pub fn of_kernel<T: Real>(kernel: &GridFunction<T>, tol: T) -> Self {
        let min_real = kernel.values().iter().map(|v| v.re).fold(T::infinity(), T::min);
        let max_imag = kernel.values().iter().map(|v| v.im.abs()).fold(T::zero(), T::max);
        let reason = if min_real < -tol {
            PositivityReason::NegativeKernel
        } else if max_imag > tol {
            PositivityReason::ImaginaryResidue
        } else {
            PositivityReason::Positive
        };
        let verdict = if reason == PositivityReason::Positive { Verdict::Positive } else { Verdict::NotPositive };
        Self { min_real: min_real.as_f64(), max_imag: max_imag.as_f64(), verdict, reason }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSummary {
    pub n: usize,
    pub points: usize,
    pub extent: f64,
}

impl GridSummary {
    pub fn of<T: Real>(grid: &FrequencyGrid<T>) -> Self {
        Self { n: grid.dim(), points: grid.points(), extent: grid.extent().as_f64() }
    }
}

/// Kernel positivity of `φ` and of its radialization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivityReport {
    pub symbol: String,
    pub grid: GridSummary,
    pub min_kernel_original: f64,
    pub min_kernel_radialized: f64,
    pub max_imag_original: f64,
    pub max_imag_radialized: f64,
    pub verdict_original: Verdict,
    pub verdict_radialized: Verdict,
    pub reason_original: PositivityReason,
    pub reason_radialized: PositivityReason,
    pub tol: f64,
}

pub fn positivity_report<T: Real>(
    symbol: &Symbol<T>,
    grid: &FrequencyGrid<T>,
    sphere_order: usize,
    tol: T,
) -> Result<PositivityReport> {
    let original = MultiplierOperator::new(symbol.clone(), *grid)?.positivity(tol);
    let projected = project_for_grid(symbol, grid, sphere_order)?;
    let radialized = MultiplierOperator::new(projected, *grid)?.positivity(tol);
    Ok(PositivityReport {
        symbol: symbol.to_string(),
        grid: GridSummary::of(grid),
        min_kernel_original: original.min_real,
        min_kernel_radialized: radialized.min_real,
        max_imag_original: original.max_imag,
        max_imag_radialized: radialized.max_imag,
        verdict_original: original.verdict,
        verdict_radialized: radialized.verdict,
        reason_original: original.reason,
        reason_radialized: radialized.reason,
        tol: tol.as_f64(),
    })
}
