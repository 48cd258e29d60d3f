//! Fourier multipliers on a periodic discretization of ℝⁿ (n ≤ 3).
//!
//! The crate projects an arbitrary multiplier symbol onto the radial ones by
//! averaging over the rotation group,
//!
//! ```text
//!     P(φ)(ξ) = ∫_{SO(n)} φ(R⁻¹ξ) dμ(R),
//! ```
//!
//! and provides the machinery to check the projection numerically: symbol
//! catalogs, Haar quadrature, multiplier operators and their rotation
//! conjugates, `L^p` operator-norm estimates, and kernel positivity.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`, which is what the stated
//! tolerances assume.

pub mod error;
pub mod grid;
pub mod multiplier;
pub mod norms;
pub mod radialize;
pub mod rotation;
pub mod scalar;
pub mod symbols;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Cplx, Real};

pub type FrequencyGrid = grid::FrequencyGrid<f64>;
pub type GridFunction = grid::GridFunction<f64>;
pub type VectorGridFunction = grid::VectorGridFunction<f64>;
pub type Symbol = symbols::Symbol<f64>;
pub type RadialProfile = symbols::RadialProfile<f64>;
pub type ProfileSpec = symbols::ProfileSpec<f64>;
pub type Rotation = rotation::Rotation<f64>;
pub type RotationQuadrature = rotation::RotationQuadrature<f64>;
pub type SphereQuadrature = rotation::SphereQuadrature<f64>;
pub type MultiplierOperator = multiplier::MultiplierOperator<f64>;
pub type NormEstimate = norms::NormEstimate<f64>;

pub type FrequencyGridF32 = grid::FrequencyGrid<f32>;
pub type SymbolF32 = symbols::Symbol<f32>;
pub type MultiplierOperatorF32 = multiplier::MultiplierOperator<f32>;

/// Version string embedded in every emitted artifact.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
