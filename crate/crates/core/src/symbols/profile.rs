use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::scalar::{Cplx, Real};

/// Profile `φ̇` of a radial symbol `φ(ξ) = φ̇(|ξ|)`.
///
/// Knots start at `r = 0` and increase strictly. Between knots the profile is
/// piecewise linear; beyond the last knot it is held at the final value.
/// Linear interpolation keeps `max |φ̇|` equal to the largest knot value.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile<T> {
    radii: Vec<T>,
    values: Vec<Cplx<T>>,
}

impl<T: Real> RadialProfile<T> {
    pub fn new(radii: Vec<T>, values: Vec<Cplx<T>>) -> Result<Self> {
        validate_radii(&radii)?;
        if radii.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "profile has {} radii but {} values",
                radii.len(),
                values.len()
            )));
        }
        Ok(Self { radii, values })
    }

    /// Knots `r_k = k·Δr` for `k = 0..values.len()`.
    pub fn uniform(spacing: T, values: Vec<Cplx<T>>) -> Result<Self> {
        let spec = ProfileSpec::uniform(spacing, values.len())?;
        Self::new(spec.radii, values)
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }

    pub fn values(&self) -> &[Cplx<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    /// Value at radius `r ≥ 0`.
    pub fn eval(&self, r: T) -> Cplx<T> {
        let upper = self.radii.partition_point(|&x| x <= r);
        if upper == 0 {
            return self.values[0];
        }
        if upper == self.radii.len() {
            return self.values[upper - 1];
        }
        let (r0, r1) = (self.radii[upper - 1], self.radii[upper]);
        let t = (r - r0) / (r1 - r0);
        self.values[upper - 1] * (T::one() - t) + self.values[upper] * t
    }

    /// `max_k |φ̇(r_k)|`, which bounds the profile everywhere.
    pub fn max_abs(&self) -> T {
        self.values.iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }

    /// Largest knot-wise modulus of `self - other`; knots must coincide.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.radii != other.radii {
            return Err(Error::InvalidParameter("profiles use different knots".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max))
    }
}

/// Knot placement for radialized symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSpec<T> {
    radii: Vec<T>,
}

impl<T: Real> ProfileSpec<T> {
    pub fn from_radii(radii: Vec<T>) -> Result<Self> {
        validate_radii(&radii)?;
        Ok(Self { radii })
    }

    /// `count` knots spaced `spacing` apart, starting at zero.
    pub fn uniform(spacing: T, count: usize) -> Result<Self> {
        if !(spacing > T::zero()) || !spacing.is_finite() {
            return Err(Error::InvalidParameter(format!("profile spacing must be positive, got {spacing}")));
        }
        if count == 0 {
            return Err(Error::InvalidParameter("profile needs at least one knot".into()));
        }
        Ok(Self { radii: (0..count).map(|k| T::from_usize_lossy(k) * spacing).collect() })
    }

    /// Default knots for a grid: spacing `Δξ` out to `√n · ξ_max`, merged with
    /// every distinct lattice radius so that sampling the profile on the grid
    /// reproduces knot values without interpolation.
    pub fn for_grid(grid: &FrequencyGrid<T>) -> Self {
        let dxi = grid.dxi();
        let reach = T::from_usize_lossy(grid.dim()).sqrt() * grid.nyquist_radius();
        let count = (reach / dxi).ceil().to_usize().unwrap_or(0) + 1;
        let mut radii: Vec<T> = (0..count).map(|k| T::from_usize_lossy(k) * dxi).collect();
        radii.extend(grid.lattice_radii());
        radii.sort_by(|a, b| a.partial_cmp(b).expect("finite radii"));
        let merge = dxi * T::lit(1e-9);
        radii.dedup_by(|b, a| *b - *a <= merge);
        Self { radii }
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }

    /// Nominal spacing used for kink exclusion windows: the smallest gap.
    pub fn min_spacing(&self) -> T {
        self.radii
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(T::infinity(), T::min)
    }
}

fn validate_radii<T: Real>(radii: &[T]) -> Result<()> {
    match radii.first() {
        None => Err(Error::InvalidParameter("profile needs at least one knot".into())),
        Some(r0) if !r0.is_zero() => Err(Error::InvalidParameter("profile must start at r = 0".into())),
        _ if radii.windows(2).any(|w| !(w[1] > w[0])) || radii.iter().any(|r| !r.is_finite()) => Err(
            Error::InvalidParameter("profile radii must be finite and strictly increasing".into()),
        ),
        _ => Ok(()),
    }
}
