//! Multiplier symbols `φ: ℝⁿ → ℂ`.
//!
//! A [`Symbol`] is either a closed-form catalog entry, a table of samples on a
//! frequency lattice, a radial profile, or something derived from those
//! (a rotation `ξ ↦ φ(Rξ)` or a finite linear combination).

mod catalog;
mod profile;
mod spec;

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

pub use catalog::{canonical_name, make_named_symbol, NamedKind, NamedSymbol, Params};
pub use profile::{ProfileSpec, RadialProfile};
pub use spec::SymbolSpec;

use crate::error::{Error, Result};
use crate::grid::{FrequencyGrid, MAX_DIM};
use crate::rotation::Rotation;
use crate::scalar::{Cplx, Real};

/// Symbol values tabulated on a frequency lattice, in the grid's storage order.
///
/// The table is periodic: a lattice frequency outside the stored index range
/// is wrapped modulo `N` on each axis, as on the discrete torus.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSymbol<T> {
    grid: FrequencyGrid<T>,
    values: Vec<Cplx<T>>,
}

impl<T: Real> SampledSymbol<T> {
    pub fn new(grid: FrequencyGrid<T>, values: Vec<Cplx<T>>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &FrequencyGrid<T> {
        &self.grid
    }

    pub fn values(&self) -> &[Cplx<T>] {
        &self.values
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }

    /// Largest modulus of `self - other` over lattice points, optionally
    /// skipping Nyquist rows.
    pub fn max_abs_diff(&self, other: &Self, skip_nyquist: bool) -> Result<T> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok((0..self.grid.len())
            .filter(|&k| !(skip_nyquist && self.grid.is_nyquist(k)))
            .map(|k| (self.values[k] - other.values[k]).norm())
            .fold(T::zero(), T::max))
    }

    fn lookup(&self, xi: &[T]) -> Result<Cplx<T>> {
        let dim = self.grid.dim();
        if xi.len() < dim {
            return Err(Error::InvalidParameter(format!("expected a point in dimension {dim}")));
        }
        let dxi = self.grid.dxi();
        let mut offsets = [0i64; MAX_DIM];
        for axis in 0..dim {
            let j = (xi[axis] / dxi).round();
            if (xi[axis] - j * dxi).abs() > T::lit(1e-9) * dxi {
                return Err(Error::OffLattice(format!("{:?}", &xi[..dim])));
            }
            offsets[axis] = j.to_i64().ok_or_else(|| Error::OffLattice(format!("{:?}", &xi[..dim])))?;
        }
        Ok(self.values[self.grid.flat_index(&offsets)])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Symbol<T> {
    Named(NamedSymbol<T>),
    Sampled(SampledSymbol<T>),
    Radial(RadialProfile<T>),
    /// `ξ ↦ inner(Rξ)`.
    Rotated { inner: Box<Symbol<T>>, rotation: Rotation<T> },
    /// `ξ ↦ Σ c_i φ_i(ξ)`.
    Combination(Vec<(Cplx<T>, Symbol<T>)>),
}

impl<T: Real> Symbol<T> {
    /// Catalog symbol from a name and parameter map.
    pub fn named(name: &str, params: &Params<T>, dim: usize) -> Result<Self> {
        make_named_symbol(name, params, dim).map(Symbol::Named)
    }

    /// Catalog symbol from a `name:key=val,...` spec string.
    pub fn parse(spec: &str, dim: usize) -> Result<Self> {
        spec.parse::<SymbolSpec>()?.build(dim)
    }

    pub fn linear_combination(terms: Vec<(Cplx<T>, Symbol<T>)>) -> Self {
        Symbol::Combination(terms)
    }

    /// Dimension the symbol is bound to; `None` for radial profiles, which
    /// evaluate in any dimension.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Symbol::Named(s) => Some(s.dim()),
            Symbol::Sampled(s) => Some(s.grid.dim()),
            Symbol::Radial(_) => None,
            Symbol::Rotated { rotation, .. } => Some(rotation.dim()),
            Symbol::Combination(terms) => terms.iter().find_map(|(_, s)| s.dim()),
        }
    }

    /// True unless some part of the symbol is a lattice table.
    pub fn is_continuous(&self) -> bool {
        match self {
            Symbol::Named(_) | Symbol::Radial(_) => true,
            Symbol::Sampled(_) => false,
            Symbol::Rotated { inner, .. } => inner.is_continuous(),
            Symbol::Combination(terms) => terms.iter().all(|(_, s)| s.is_continuous()),
        }
    }

    /// Whether the symbol is radial by construction (not by numerical test).
    pub fn is_radial(&self) -> bool {
        match self {
            Symbol::Named(s) => s.is_radial(),
            Symbol::Radial(_) => true,
            Symbol::Rotated { inner, .. } => inner.is_radial(),
            Symbol::Combination(terms) => terms.iter().all(|(_, s)| s.is_radial()),
            Symbol::Sampled(_) => false,
        }
    }

    /// `φ(ξ)`. Sampled symbols accept only lattice frequencies.
    pub fn eval(&self, xi: &[T]) -> Result<Cplx<T>> {
        match self {
            Symbol::Named(s) => Ok(s.eval(xi)),
            Symbol::Sampled(s) => s.lookup(xi),
            Symbol::Radial(p) => Ok(p.eval(xi.iter().map(|&v| v * v).sum::<T>().sqrt())),
            Symbol::Rotated { inner, rotation } => {
                let n = rotation.dim();
                inner.eval(&rotation.apply(&xi[..n])[..n])
            }
            Symbol::Combination(terms) => terms
                .iter()
                .try_fold(Cplx::zero(), |acc, (c, s)| Ok(acc + *c * s.eval(xi)?)),
        }
    }

    pub fn as_sampled(&self) -> Option<&SampledSymbol<T>> {
        match self {
            Symbol::Sampled(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_radial(&self) -> Option<&RadialProfile<T>> {
        match self {
            Symbol::Radial(p) => Some(p),
            _ => None,
        }
    }
}

impl<T: Real> fmt::Display for Symbol<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Named(s) => write!(f, "{s}"),
            Symbol::Sampled(s) => write!(f, "sampled[{}]", s.grid),
            Symbol::Radial(p) => write!(f, "radial[{} knots]", p.len()),
            Symbol::Rotated { inner, .. } => write!(f, "rotated({inner})"),
            Symbol::Combination(terms) => {
                f.write_str("sum(")?;
                for (i, (c, s)) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "({c})*{s}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl<T> From<NamedSymbol<T>> for Symbol<T> {
    fn from(s: NamedSymbol<T>) -> Self {
        Symbol::Named(s)
    }
}

impl<T> From<RadialProfile<T>> for Symbol<T> {
    fn from(p: RadialProfile<T>) -> Self {
        Symbol::Radial(p)
    }
}

impl<T> From<SampledSymbol<T>> for Symbol<T> {
    fn from(s: SampledSymbol<T>) -> Self {
        Symbol::Sampled(s)
    }
}

/// Evaluates `φ` at every lattice frequency of `grid`. Already-sampled
/// symbols on the same grid are returned unchanged.
pub fn sample_symbol<T: Real>(symbol: &Symbol<T>, grid: &FrequencyGrid<T>) -> Result<SampledSymbol<T>> {
    if let Symbol::Sampled(s) = symbol {
        return if s.grid == *grid { Ok(s.clone()) } else { Err(Error::GridMismatch) };
    }
    if let Some(d) = symbol.dim() {
        if d != grid.dim() {
            return Err(Error::InvalidParameter(format!(
                "symbol has dimension {d} but grid has dimension {}",
                grid.dim()
            )));
        }
    }
    let values = (0..grid.len())
        .into_par_iter()
        .map(|k| symbol.eval(&grid.frequency_point(k)[..grid.dim()]))
        .collect::<Result<Vec<_>>>()?;
    Ok(SampledSymbol { grid: *grid, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radial_profile_evaluates_through_the_norm() {
        let p = RadialProfile::uniform(
            1.0,
            vec![Cplx::new(1.0, 0.0), Cplx::new(0.5, 0.0), Cplx::new(0.0, 0.0)],
        )
        .unwrap();
        let s = Symbol::Radial(p);
        assert_eq!(s.eval(&[1.5, 0.0]).unwrap().re, 0.25);
        assert_eq!(s.eval(&[0.0, 0.9, 1.2]).unwrap().re, 0.25);
        assert_eq!(s.eval(&[3.0, 0.0]).unwrap().re, 0.0);
    }

    #[test]
    fn sampled_lookup() {
        let g = FrequencyGrid::new(2, 8, 8.0).unwrap();
        let heat = Symbol::parse("heat:t=1", 2).unwrap();
        let s = Symbol::Sampled(sample_symbol(&heat, &g).unwrap());
        let dxi = g.dxi();
        let on = [2.0 * dxi, -3.0 * dxi];
        assert_eq!(s.eval(&on).unwrap(), heat.eval(&on).unwrap());
        assert!(matches!(s.eval(&[0.3 * dxi, 0.0]), Err(Error::OffLattice(_))));
        // +N/2 wraps to the stored Nyquist row
        let wrapped = [4.0 * dxi, 0.0];
        assert_eq!(s.eval(&wrapped).unwrap(), heat.eval(&[-4.0 * dxi, 0.0]).unwrap());
    }

    #[test]
    fn sampling_constants_and_idempotence() {
        let g = FrequencyGrid::new(2, 8, 5.0).unwrap();
        let one = Symbol::parse("constant", 2).unwrap();
        let s = sample_symbol(&one, &g).unwrap();
        assert!(s.values().iter().all(|v| *v == Cplx::new(1.0, 0.0)));
        let again = sample_symbol(&Symbol::Sampled(s.clone()), &g).unwrap();
        assert_eq!(again, s);
        let other = FrequencyGrid::new(2, 8, 6.0).unwrap();
        assert_eq!(sample_symbol(&Symbol::Sampled(s), &other).unwrap_err(), Error::GridMismatch);
    }

    #[test]
    fn sampling_matches_direct_evaluation() {
        let g = FrequencyGrid::new(2, 8, 8.0).unwrap();
        let gauss = Symbol::parse("gaussian_aniso", 2).unwrap();
        let s = sample_symbol(&gauss, &g).unwrap();
        for k in 0..g.len() {
            let xi = g.frequency_point(k);
            assert!((s.values()[k] - gauss.eval(&xi[..2]).unwrap()).norm() <= 1e-15);
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let g = FrequencyGrid::new(3, 4, 5.0).unwrap();
        let heat = Symbol::parse("heat:t=1", 2).unwrap();
        assert!(sample_symbol(&heat, &g).is_err());
    }

    #[test]
    fn combination_is_linear() {
        let heat = Symbol::parse("heat:t=1", 2).unwrap();
        let riesz = Symbol::parse("riesz:j=2", 2).unwrap();
        let a = Cplx::new(0.5, -2.0);
        let b = Cplx::new(3.0, 1.0);
        let combo = Symbol::linear_combination(vec![(a, heat.clone()), (b, riesz.clone())]);
        let xi = [0.3, -1.7];
        let expect = a * heat.eval(&xi).unwrap() + b * riesz.eval(&xi).unwrap();
        assert!((combo.eval(&xi).unwrap() - expect).norm() < 1e-15);
        assert_eq!(combo.dim(), Some(2));
    }
}
