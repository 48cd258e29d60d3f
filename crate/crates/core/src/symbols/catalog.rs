//! Closed-form multiplier symbols.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grid::{Point, MAX_DIM};
use crate::scalar::{Cplx, Real};

/// Named parameters of a catalog symbol, e.g. `{"t": 1.0}`.
pub type Params<T> = BTreeMap<String, T>;

#[derive(Debug, Clone, PartialEq)]
pub enum NamedKind<T> {
    /// `c`
    Constant(Cplx<T>),
    /// `exp(-⟨Aξ, ξ⟩)` with `A` symmetric positive definite.
    GaussianAniso([[T; MAX_DIM]; MAX_DIM]),
    /// `exp(-t|ξ|²)`
    Heat(T),
    /// `exp(-t|ξ|)`
    Poisson(T),
    /// `1_{|ξ| ≤ ρ}`
    BallIndicator(T),
    /// `1_{max_i |ξ_i| ≤ a}`
    BoxIndicator(T),
    /// `ξ_j / |ξ|` (zero-based axis), `0` at the origin.
    Riesz(usize),
    /// `(1 - |ξ|²)₊^δ`
    BochnerRiesz(T),
    /// `ξ^α`
    Monomial([u32; MAX_DIM]),
    /// `exp(i⟨a, ξ⟩)`
    Modulation(Point<T>),
}

/// A catalog symbol bound to a dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedSymbol<T> {
    dim: usize,
    kind: NamedKind<T>,
}

impl<T: Real> NamedSymbol<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &NamedKind<T> {
        &self.kind
    }

    /// Canonical catalog id.
    pub fn name(&self) -> &'static str {
        match self.kind {
            NamedKind::Constant(_) => "constant",
            NamedKind::GaussianAniso(_) => "gaussian_aniso",
            NamedKind::Heat(_) => "heat",
            NamedKind::Poisson(_) => "poisson",
            NamedKind::BallIndicator(_) => "ball_indicator",
            NamedKind::BoxIndicator(_) => "box_indicator",
            NamedKind::Riesz(_) => "riesz",
            NamedKind::BochnerRiesz(_) => "bochner_riesz",
            NamedKind::Monomial(_) => "monomial",
            NamedKind::Modulation(_) => "modulation",
        }
    }

    /// Whether the symbol is a function of `|ξ|` alone.
    pub fn is_radial(&self) -> bool {
        match &self.kind {
            NamedKind::Constant(_)
            | NamedKind::Heat(_)
            | NamedKind::Poisson(_)
            | NamedKind::BallIndicator(_)
            | NamedKind::BochnerRiesz(_) => true,
            NamedKind::GaussianAniso(a) => {
                let d = a[0][0];
                (0..self.dim).all(|i| (0..self.dim).all(|j| a[i][j] == if i == j { d } else { T::zero() }))
            }
            NamedKind::Monomial(alpha) => alpha.iter().all(|&e| e == 0),
            NamedKind::Modulation(a) => a.iter().all(|v| v.is_zero()),
            NamedKind::BoxIndicator(_) => self.dim == 1,
            NamedKind::Riesz(_) => false,
        }
    }

    pub fn eval(&self, xi: &[T]) -> Cplx<T> {
        let xi = &xi[..self.dim];
        let real = |v: T| Cplx::new(v, T::zero());
        let norm = || xi.iter().map(|&v| v * v).sum::<T>().sqrt();
        match &self.kind {
            NamedKind::Constant(c) => *c,
            NamedKind::GaussianAniso(a) => {
                let mut q = T::zero();
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        q = q + a[i][j] * xi[i] * xi[j];
                    }
                }
                real((-q).exp())
            }
            NamedKind::Heat(t) => real((-*t * xi.iter().map(|&v| v * v).sum::<T>()).exp()),
            NamedKind::Poisson(t) => real((-*t * norm()).exp()),
            NamedKind::BallIndicator(rho) => real(indicator(norm() <= *rho)),
            NamedKind::BoxIndicator(a) => real(indicator(xi.iter().all(|v| v.abs() <= *a))),
            NamedKind::Riesz(j) => {
                let r = norm();
                if r.is_zero() {
                    Cplx::zero()
                } else {
                    real(xi[*j] / r)
                }
            }
            NamedKind::BochnerRiesz(delta) => {
                let s = T::one() - xi.iter().map(|&v| v * v).sum::<T>();
                if s > T::zero() {
                    real(s.powf(*delta))
                } else {
                    Cplx::zero()
                }
            }
            NamedKind::Monomial(alpha) => {
                real(xi.iter().zip(alpha).map(|(&v, &e)| v.powi(e as i32)).fold(T::one(), |a, b| a * b))
            }
            NamedKind::Modulation(a) => {
                let phase = xi.iter().zip(a).map(|(&v, &s)| v * s).sum::<T>();
                Cplx::new(phase.cos(), phase.sin())
            }
        }
    }

    /// Parameters in the `key=value` form accepted by [`make_named_symbol`].
    pub fn params(&self) -> Vec<(String, T)> {
        let axis = |i: usize| format!("a{}", i + 1);
        match &self.kind {
            NamedKind::Constant(c) if c.im.is_zero() => vec![("c".into(), c.re)],
            NamedKind::Constant(c) => vec![("c".into(), c.re), ("im".into(), c.im)],
            NamedKind::GaussianAniso(a) => {
                let mut out = Vec::new();
                for i in 0..self.dim {
                    for j in i..self.dim {
                        out.push((format!("a{}{}", i + 1, j + 1), a[i][j]));
                    }
                }
                out
            }
            NamedKind::Heat(t) | NamedKind::Poisson(t) => vec![("t".into(), *t)],
            NamedKind::BallIndicator(rho) => vec![("rho".into(), *rho)],
            NamedKind::BoxIndicator(a) => vec![("a".into(), *a)],
            NamedKind::Riesz(j) => vec![("j".into(), T::from_usize_lossy(j + 1))],
            NamedKind::BochnerRiesz(d) => vec![("delta".into(), *d)],
            NamedKind::Monomial(alpha) => (0..self.dim)
                .map(|i| (axis(i), T::from_usize_lossy(alpha[i] as usize)))
                .collect(),
            NamedKind::Modulation(a) => (0..self.dim).map(|i| (axis(i), a[i])).collect(),
        }
    }
}

impl<T: Real> fmt::Display for NamedSymbol<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        for (i, (k, v)) in self.params().iter().enumerate() {
            write!(f, "{}{k}={v}", if i == 0 { ':' } else { ',' })?;
        }
        Ok(())
    }
}

fn indicator<T: Real>(inside: bool) -> T {
    if inside {
        T::one()
    } else {
        T::zero()
    }
}

/// Maps accepted spellings to the canonical catalog id.
pub fn canonical_name(name: &str) -> Option<&'static str> {
    Some(match name {
        "constant" | "const" => "constant",
        "gaussian_aniso" | "gaussaniso" => "gaussian_aniso",
        "heat" => "heat",
        "poisson" => "poisson",
        "ball_indicator" | "ballind" => "ball_indicator",
        "box_indicator" | "boxind" => "box_indicator",
        "riesz" => "riesz",
        "bochner_riesz" | "bochnerriesz" => "bochner_riesz",
        "monomial" => "monomial",
        "modulation" => "modulation",
        _ => return None,
    })
}

struct ParamReader<'a, T> {
    name: &'static str,
    params: &'a Params<T>,
    allowed: Vec<String>,
}

impl<'a, T: Real> ParamReader<'a, T> {
    fn new(name: &'static str, params: &'a Params<T>) -> Self {
        Self { name, params, allowed: Vec::new() }
    }

    fn optional(&mut self, key: &str) -> Option<T> {
        self.allowed.push(key.to_owned());
        self.params.get(key).copied()
    }

    fn required(&mut self, key: &str) -> Result<T> {
        self.optional(key).ok_or_else(|| {
            Error::InvalidParameter(format!("{} requires parameter `{key}`", self.name))
        })
    }

    fn positive(&mut self, key: &str) -> Result<T> {
        let v = self.required(key)?;
        if v > T::zero() && v.is_finite() {
            Ok(v)
        } else {
            Err(Error::InvalidParameter(format!("{}: `{key}` must be positive, got {v}", self.name)))
        }
    }

    fn finish(self) -> Result<()> {
        for key in self.params.keys() {
            if !self.allowed.iter().any(|a| a == key) {
                return Err(Error::InvalidParameter(format!(
                    "{}: unknown parameter `{key}`",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

fn nonnegative_integer<T: Real>(name: &str, key: &str, v: T) -> Result<u32> {
    if v >= T::zero() && v.fract().is_zero() && v < T::lit(64.0) {
        Ok(v.to_u32().expect("small integer"))
    } else {
        Err(Error::InvalidParameter(format!(
            "{name}: `{key}` must be a non-negative integer, got {v}"
        )))
    }
}

/// Builds a catalog symbol in dimension `dim` from its name and parameters.
///
/// | name             | parameters                         |
/// |------------------|------------------------------------|
/// | `constant`       | `c` (default 1), `im` (default 0)  |
/// | `gaussian_aniso` | `aIJ`, `I ≤ J` (default identity)  |
/// | `heat`           | `t > 0`                            |
/// | `poisson`        | `t > 0`                            |
/// | `ball_indicator` | `rho > 0`                          |
/// | `box_indicator`  | `a > 0`                            |
/// | `riesz`          | `j ∈ 1..=n`                        |
/// | `bochner_riesz`  | `delta ≥ 0`                        |
/// | `monomial`       | `a1..an` non-negative integers     |
/// | `modulation`     | `a1..an` real shifts               |
pub fn make_named_symbol<T: Real>(name: &str, params: &Params<T>, dim: usize) -> Result<NamedSymbol<T>> {
    if !(1..=MAX_DIM).contains(&dim) {
        return Err(Error::InvalidParameter(format!("dimension must be 1, 2 or 3, got {dim}")));
    }
    let canon = canonical_name(name).ok_or_else(|| Error::UnknownSymbol(name.to_owned()))?;
    let mut r = ParamReader::new(canon, params);
    let kind = match canon {
        "constant" => {
            let re = r.optional("c").unwrap_or_else(T::one);
            let im = r.optional("im").unwrap_or_else(T::zero);
            NamedKind::Constant(Cplx::new(re, im))
        }
        "gaussian_aniso" => {
            let mut a = [[T::zero(); MAX_DIM]; MAX_DIM];
            for i in 0..dim {
                for j in i..dim {
                    let default = if i == j { T::one() } else { T::zero() };
                    let v = r.optional(&format!("a{}{}", i + 1, j + 1)).unwrap_or(default);
                    a[i][j] = v;
                    a[j][i] = v;
                }
            }
            if !is_positive_definite(&a, dim) {
                return Err(Error::InvalidParameter(
                    "gaussian_aniso: matrix is not symmetric positive definite".into(),
                ));
            }
            NamedKind::GaussianAniso(a)
        }
        "heat" => NamedKind::Heat(r.positive("t")?),
        "poisson" => NamedKind::Poisson(r.positive("t")?),
        "ball_indicator" => NamedKind::BallIndicator(r.positive("rho")?),
        "box_indicator" => NamedKind::BoxIndicator(r.positive("a")?),
        "riesz" => {
            let j = nonnegative_integer(canon, "j", r.required("j")?)? as usize;
            if !(1..=dim).contains(&j) {
                return Err(Error::InvalidParameter(format!("riesz: `j` must lie in 1..={dim}")));
            }
            NamedKind::Riesz(j - 1)
        }
        "bochner_riesz" => {
            let delta = r.required("delta")?;
            if !(delta >= T::zero()) || !delta.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "bochner_riesz: `delta` must be non-negative, got {delta}"
                )));
            }
            NamedKind::BochnerRiesz(delta)
        }
        "monomial" => {
            let mut alpha = [0u32; MAX_DIM];
            for (i, slot) in alpha.iter_mut().enumerate().take(dim) {
                let key = format!("a{}", i + 1);
                if let Some(v) = r.optional(&key) {
                    *slot = nonnegative_integer(canon, &key, v)?;
                }
            }
            NamedKind::Monomial(alpha)
        }
        "modulation" => {
            let mut a = [T::zero(); MAX_DIM];
            for (i, slot) in a.iter_mut().enumerate().take(dim) {
                *slot = r.optional(&format!("a{}", i + 1)).unwrap_or_else(T::zero);
            }
            NamedKind::Modulation(a)
        }
        _ => unreachable!("canonical_name returned an unhandled id"),
    };
    r.finish()?;
    Ok(NamedSymbol { dim, kind })
}

/// Cholesky test on the leading `dim × dim` block.
fn is_positive_definite<T: Real>(a: &[[T; MAX_DIM]; MAX_DIM], dim: usize) -> bool {
    let mut l = [[T::zero(); MAX_DIM]; MAX_DIM];
    for i in 0..dim {
        for j in 0..=i {
            let mut s = a[i][j];
            for k in 0..j {
                s = s - l[i][k] * l[j][k];
            }
            if i == j {
                if !(s > T::zero()) {
                    return false;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    true
}
