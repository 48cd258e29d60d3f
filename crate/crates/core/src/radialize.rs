//! Projection of a symbol onto the radial symbols,
//!
//! ```text
//!     P(φ)(ξ) = ∫_{SO(n)} φ(R⁻¹ξ) dμ(R).
//! ```
//!
//! For n ≥ 2 the orbit `{R⁻¹ξ}` sweeps the sphere of radius `|ξ|` uniformly,
//! so the default path ([`project`]) evaluates spherical means on a set of
//! radii. [`project_mc`] computes the rotation average literally over a
//! quadrature on SO(n) and serves as an independent check.
//!
//! In dimension one the sphere `{±1}` is the orbit of O(1), not SO(1): the
//! sphere path returns the even part of `φ` while the SO(1) path is the
//! identity.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::rotation::{rotated_symbol, sphere_quadrature, RotationQuadrature, SphereQuadrature};
use crate::scalar::{Cplx, Real};
use crate::symbols::{NamedKind, ProfileSpec, RadialProfile, SampledSymbol, Symbol};
use crate::tolerances::{INDICATOR_SPHERE_ORDER, SMOOTH_SPHERE_ORDER};

fn check_continuous<T: Real>(symbol: &Symbol<T>, sq: &SphereQuadrature<T>) -> Result<()> {
    if !symbol.is_continuous() {
        return Err(Error::Unsupported("sampled"));
    }
    match symbol.dim() {
        Some(d) if d != sq.dim() => Err(Error::InvalidParameter(format!(
            "symbol has dimension {d} but sphere rule has dimension {}",
            sq.dim()
        ))),
        _ => Ok(()),
    }
}

/// `Σ_j w_j φ(r·u_j)` together with `max_j |φ(r·u_j)|`.
fn mean_and_bound<T: Real>(symbol: &Symbol<T>, r: T, sq: &SphereQuadrature<T>) -> Result<(Cplx<T>, T)> {
    let n = sq.dim();
    if r.is_zero() {
        let v = symbol.eval(&[T::zero(); 3][..n])?;
        return Ok((v, v.norm()));
    }
    let mut acc = Cplx::zero();
    let mut bound = T::zero();
    let mut point = [T::zero(); 3];
    for (u, &w) in sq.nodes().iter().zip(sq.weights()) {
        for a in 0..n {
            point[a] = r * u[a];
        }
        let v = symbol.eval(&point[..n])?;
        bound = bound.max(v.norm());
        acc = acc + v * w;
    }
    Ok((acc, bound))
}

/// Mean of `φ` over the sphere of radius `r`; `φ(0)` at `r = 0`.
pub fn spherical_mean<T: Real>(symbol: &Symbol<T>, r: T, sq: &SphereQuadrature<T>) -> Result<Cplx<T>> {
    check_continuous(symbol, sq)?;
    if !(r >= T::zero()) {
        return Err(Error::InvalidParameter(format!("radius must be non-negative, got {r}")));
    }
    let (mean, bound) = mean_and_bound(symbol, r, sq)?;
    debug_assert!(
        mean.norm() <= bound * (T::one() + T::lit(1e-12)) + T::min_positive_value(),
        "convex average exceeded its largest sample"
    );
    Ok(mean)
}

/// Radial profile of `P(φ)` sampled at the knots of `spec`. Knots are
/// processed in parallel; each value depends only on its own radius.
pub fn project<T: Real>(symbol: &Symbol<T>, spec: &ProfileSpec<T>, sq: &SphereQuadrature<T>) -> Result<Symbol<T>> {
    check_continuous(symbol, sq)?;
    let values = spec
        .radii()
        .par_iter()
        .map(|&r| spherical_mean(symbol, r, sq))
        .collect::<Result<Vec<_>>>()?;
    Ok(Symbol::Radial(RadialProfile::new(spec.radii().to_vec(), values)?))
}

/// True when `φ` has jump discontinuities (indicator-type catalog entries).
pub fn has_jumps<T: Real>(symbol: &Symbol<T>) -> bool {
    match symbol {
        Symbol::Named(s) => matches!(
            s.kind(),
            NamedKind::BallIndicator(_) | NamedKind::BoxIndicator(_)
        ) || matches!(s.kind(), NamedKind::BochnerRiesz(d) if d.is_zero()),
        Symbol::Rotated { inner, .. } => has_jumps(inner),
        Symbol::Combination(terms) => terms.iter().any(|(_, s)| has_jumps(s)),
        Symbol::Radial(_) | Symbol::Sampled(_) => false,
    }
}

/// Sphere order used when none is given: more nodes for symbols with jumps.
pub fn default_sphere_order<T: Real>(symbol: &Symbol<T>) -> usize {
    if has_jumps(symbol) {
        INDICATOR_SPHERE_ORDER
    } else {
        SMOOTH_SPHERE_ORDER
    }
}

/// [`project`] with the grid's default knots and the given sphere order.
pub fn project_for_grid<T: Real>(symbol: &Symbol<T>, grid: &FrequencyGrid<T>, order: usize) -> Result<Symbol<T>> {
    project(symbol, &ProfileSpec::for_grid(grid), &sphere_quadrature(grid.dim(), order)?)
}

/// `Σ_j w_j φ(R_j⁻¹ ξ)` at every lattice frequency.
///
/// Sampled symbols are accepted when every node preserves the lattice; the
/// rotated samples are then exact permutations.
pub fn project_mc<T: Real>(
    symbol: &Symbol<T>,
    grid: &FrequencyGrid<T>,
    rq: &RotationQuadrature<T>,
) -> Result<SampledSymbol<T>> {
    if rq.dim() != grid.dim() {
        return Err(Error::InvalidParameter("rotation rule and grid differ in dimension".into()));
    }
    let rotated = rq
        .nodes()
        .iter()
        .map(|r| rotated_symbol(symbol, &r.inverse()))
        .collect::<Result<Vec<_>>>()?;
    let n = grid.dim();
    let values = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let xi = grid.frequency_point(k);
            rotated
                .iter()
                .zip(rq.weights())
                .try_fold(Cplx::zero(), |acc, (s, &w)| Ok(acc + s.eval(&xi[..n])? * w))
        })
        .collect::<Result<Vec<_>>>()?;
    SampledSymbol::new(*grid, values)
}

/// `max_ξ |φ(ξ) − P(φ)(ξ)|` over non-Nyquist lattice frequencies, with
/// `P(φ)(ξ)` taken as the spherical mean at exactly `|ξ|`.
pub fn radial_deviation<T: Real>(symbol: &Symbol<T>, grid: &FrequencyGrid<T>, sq: &SphereQuadrature<T>) -> Result<T> {
    check_continuous(symbol, sq)?;
    let n = grid.dim();
    let mut shells: Vec<u64> = (0..grid.len())
        .filter(|&k| !grid.is_nyquist(k))
        .map(|k| grid.squared_offset_norm(k))
        .collect();
    shells.sort_unstable();
    shells.dedup();
    let dxi = grid.dxi();
    let means: HashMap<u64, Cplx<T>> = shells
        .par_iter()
        .map(|&s| {
            let r = T::from_u64(s).expect("u64 representable").sqrt() * dxi;
            spherical_mean(symbol, r, sq).map(|m| (s, m))
        })
        .collect::<Result<_>>()?;
    (0..grid.len())
        .into_par_iter()
        .filter(|&k| !grid.is_nyquist(k))
        .map(|k| {
            let v = symbol.eval(&grid.frequency_point(k)[..n])?;
            Ok((v - means[&grid.squared_offset_norm(k)]).norm())
        })
        .try_reduce(T::zero, |a, b| Ok(a.max(b)))
}

/// `radial_deviation ≤ tol`.
pub fn is_radial<T: Real>(symbol: &Symbol<T>, grid: &FrequencyGrid<T>, sq: &SphereQuadrature<T>, tol: T) -> Result<bool> {
    Ok(radial_deviation(symbol, grid, sq)? <= tol)
}
