//! The rotation group SO(n) for n ≤ 3, its Haar measure, and quadrature
//! rules on SO(n) and on the unit sphere.

use std::fmt;

use num_traits::Zero;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Point, MAX_DIM};
use crate::scalar::{Cplx, Real};
use crate::symbols::{SampledSymbol, Symbol};

type Matrix<T> = [[T; MAX_DIM]; MAX_DIM];

/// Tolerance for `RᵀR = I` and `det R = 1`.
fn orthogonality_tol<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(64.0))
}

/// An element of SO(n), stored as an `n × n` matrix (padded to 3 × 3 with
/// zeros).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation<T> {
    dim: usize,
    m: Matrix<T>,
}

/// A rotation with entries in `{0, ±1}`: `(Rx)_i = sign_i · x_{perm_i}`.
/// Such rotations map the integer lattice onto itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedPermutation {
    pub dim: usize,
    pub perm: [usize; MAX_DIM],
    pub sign: [i64; MAX_DIM],
}

impl SignedPermutation {
    pub fn apply(&self, j: &[i64]) -> [i64; MAX_DIM] {
        let mut out = [0i64; MAX_DIM];
        for i in 0..self.dim {
            out[i] = self.sign[i] * j[self.perm[i]];
        }
        out
    }
}

impl<T: Real> Rotation<T> {
    pub fn identity(dim: usize) -> Self {
        let mut m = [[T::zero(); MAX_DIM]; MAX_DIM];
        for (i, row) in m.iter_mut().enumerate().take(dim) {
            row[i] = T::one();
        }
        Self { dim, m }
    }

    /// Validates orthogonality and unit determinant of an `n × n` row-major
    /// matrix.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let dim = rows.len();
        if !(1..=MAX_DIM).contains(&dim) || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidParameter("rotation must be a square matrix of size 1, 2 or 3".into()));
        }
        let mut m = [[T::zero(); MAX_DIM]; MAX_DIM];
        for i in 0..dim {
            m[i][..dim].copy_from_slice(&rows[i]);
        }
        let r = Self { dim, m };
        let tol = orthogonality_tol::<T>();
        if r.orthogonality_defect() > tol || (r.det() - T::one()).abs() > tol {
            return Err(Error::InvalidParameter("matrix is not a rotation".into()));
        }
        Ok(r)
    }

    /// Counter-clockwise rotation of the plane by `angle`.
    pub fn planar(angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        let mut m = [[T::zero(); MAX_DIM]; MAX_DIM];
        m[0][0] = c;
        m[0][1] = -s;
        m[1][0] = s;
        m[1][1] = c;
        Self { dim: 2, m }
    }

    /// `R_z(α) R_y(β) R_z(γ)`.
    pub fn euler_zyz(alpha: T, beta: T, gamma: T) -> Self {
        let rz = |a: T| {
            let (s, c) = a.sin_cos();
            let mut m = [[T::zero(); MAX_DIM]; MAX_DIM];
            m[0][0] = c;
            m[0][1] = -s;
            m[1][0] = s;
            m[1][1] = c;
            m[2][2] = T::one();
            Self { dim: 3, m }
        };
        let (s, c) = beta.sin_cos();
        let mut my = [[T::zero(); MAX_DIM]; MAX_DIM];
        my[0][0] = c;
        my[0][2] = s;
        my[1][1] = T::one();
        my[2][0] = -s;
        my[2][2] = c;
        rz(alpha).compose(&Self { dim: 3, m: my }).compose(&rz(gamma))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> T {
        self.m[i][j]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.dim).map(|i| self.m[i][..self.dim].to_vec()).collect()
    }

    /// `R x`.
    pub fn apply(&self, x: &[T]) -> Point<T> {
        let mut out = [T::zero(); MAX_DIM];
        for (i, o) in out.iter_mut().enumerate().take(self.dim) {
            *o = (0..self.dim).map(|j| self.m[i][j] * x[j]).sum();
        }
        out
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "composing rotations of different dimension");
        let mut m = [[T::zero(); MAX_DIM]; MAX_DIM];
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[i][j] = (0..self.dim).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        Self { dim: self.dim, m }
    }

    /// `R⁻¹ = Rᵀ`.
    pub fn inverse(&self) -> Self {
        let mut m = [[T::zero(); MAX_DIM]; MAX_DIM];
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[i][j] = self.m[j][i];
            }
        }
        Self { dim: self.dim, m }
    }

    pub fn det(&self) -> T {
        let m = &self.m;
        match self.dim {
            1 => m[0][0],
            2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
            _ => {
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            }
        }
    }

    /// `max |RᵀR − I|`.
    pub fn orthogonality_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let dot: T = (0..self.dim).map(|k| self.m[k][i] * self.m[k][j]).sum();
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// Rotation angle in `[0, 2π)` for planar rotations.
    pub fn planar_angle(&self) -> Option<T> {
        (self.dim == 2).then(|| {
            let a = self.m[1][0].atan2(self.m[0][0]);
            if a < T::zero() {
                a + T::TAU()
            } else {
                a
            }
        })
    }

    /// The lattice action of `R` if every entry is within `1e-12` of
    /// `0` or `±1`.
    pub fn signed_permutation(&self) -> Option<SignedPermutation> {
        let tol = orthogonality_tol::<T>();
        let mut perm = [0usize; MAX_DIM];
        let mut sign = [0i64; MAX_DIM];
        for i in 0..self.dim {
            let mut found = None;
            for j in 0..self.dim {
                let v = self.m[i][j];
                if (v.abs() - T::one()).abs() <= tol {
                    if found.is_some() {
                        return None;
                    }
                    found = Some((j, if v > T::zero() { 1 } else { -1 }));
                } else if v.abs() > tol {
                    return None;
                }
            }
            let (j, s) = found?;
            perm[i] = j;
            sign[i] = s;
        }
        Some(SignedPermutation { dim: self.dim, perm, sign })
    }

    pub fn is_lattice_preserving(&self) -> bool {
        self.signed_permutation().is_some()
    }
}

impl<T: Real> fmt::Display for Rotation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

/// Draws a Haar-distributed rotation: Gram–Schmidt on a Gaussian matrix
/// (which fixes a positive diagonal in the triangular factor), then a column
/// sign flip if the determinant is negative.
pub fn haar_rotation<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Rotation<T>> {
    if !(1..=MAX_DIM).contains(&dim) {
        return Err(Error::InvalidParameter(format!("dimension must be 1, 2 or 3, got {dim}")));
    }
    loop {
        // columns of the Gaussian matrix
        let mut cols = [[0f64; MAX_DIM]; MAX_DIM];
        for col in cols.iter_mut().take(dim) {
            for v in col.iter_mut().take(dim) {
                *v = rng.sample(StandardNormal);
            }
        }
        let mut degenerate = false;
        for j in 0..dim {
            for i in 0..j {
                let proj: f64 = (0..dim).map(|k| cols[j][k] * cols[i][k]).sum();
                for k in 0..dim {
                    cols[j][k] -= proj * cols[i][k];
                }
            }
            let norm = (0..dim).map(|k| cols[j][k] * cols[j][k]).sum::<f64>().sqrt();
            if norm < 1e-8 {
                degenerate = true;
                break;
            }
            for k in 0..dim {
                cols[j][k] /= norm;
            }
        }
        if degenerate {
            continue;
        }
        let mut m = [[T::zero(); MAX_DIM]; MAX_DIM];
        for i in 0..dim {
            for j in 0..dim {
                m[i][j] = T::lit(cols[j][i]);
            }
        }
        let mut r = Rotation { dim, m };
        if r.det() < T::zero() {
            for row in r.m.iter_mut().take(dim) {
                row[0] = -row[0];
            }
        }
        return Ok(r);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureKind {
    Deterministic,
    MonteCarlo,
    /// Uniform measure on the finite group of lattice symmetries.
    LatticeSubgroup,
}

/// Weighted rotations approximating the normalized Haar measure.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationQuadrature<T> {
    nodes: Vec<Rotation<T>>,
    weights: Vec<T>,
    kind: QuadratureKind,
    order: usize,
}

impl<T: Real> RotationQuadrature<T> {
    pub fn new(nodes: Vec<Rotation<T>>, weights: Vec<T>, kind: QuadratureKind, order: usize) -> Result<Self> {
        validate_weights(&weights, nodes.len())?;
        if let Some(first) = nodes.first() {
            if nodes.iter().any(|r| r.dim != first.dim) {
                return Err(Error::InvalidParameter("quadrature nodes of mixed dimension".into()));
            }
        }
        Ok(Self { nodes, weights, kind, order })
    }

    /// The single node `{I}`.
    pub fn identity(dim: usize) -> Self {
        Self { nodes: vec![Rotation::identity(dim)], weights: vec![T::one()], kind: QuadratureKind::Deterministic, order: 1 }
    }

    /// `count` independent Haar samples with equal weights.
    pub fn monte_carlo<R: Rng + ?Sized>(dim: usize, count: usize, rng: &mut R) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidParameter("monte-carlo quadrature needs at least one node".into()));
        }
        let nodes = (0..count).map(|_| haar_rotation(dim, rng)).collect::<Result<Vec<_>>>()?;
        let w = T::from_usize_lossy(count).recip();
        Ok(Self { nodes, weights: vec![w; count], kind: QuadratureKind::MonteCarlo, order: count })
    }

    /// Rotations preserving the cubic lattice: `{1}` for n = 1, the four
    /// quarter turns for n = 2, the 24 rotations of the cube for n = 3.
    pub fn lattice_group(dim: usize) -> Result<Self> {
        let nodes = lattice_rotations(dim)?;
        let w = T::from_usize_lossy(nodes.len()).recip();
        let order = nodes.len();
        Ok(Self { weights: vec![w; order], nodes, kind: QuadratureKind::LatticeSubgroup, order })
    }

    pub fn nodes(&self) -> &[Rotation<T>] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.nodes.first().map_or(0, |r| r.dim)
    }

    pub fn is_lattice_preserving(&self) -> bool {
        self.nodes.iter().all(Rotation::is_lattice_preserving)
    }

    /// `Σ_j w_j g(R_j)`, summed in node order.
    pub fn integrate(&self, g: impl Fn(&Rotation<T>) -> Cplx<T>) -> Cplx<T> {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(Cplx::zero(), |acc, (r, &w)| acc + g(r) * w)
    }
}

/// Deterministic quadrature of order `m` on SO(n).
///
/// * n = 1: the identity.
/// * n = 2: rotations by `2πj/m`, weights `1/m`; exact for `e^{ikθ}`, `|k| < m`.
/// * n = 3: Euler angles `R_z(α)R_y(β)R_z(γ)`, `m` uniform nodes in each of
///   `α, γ` and `m` Gauss–Legendre nodes in `cos β` (`m³` nodes in total).
pub fn so_quadrature<T: Real>(dim: usize, order: usize) -> Result<RotationQuadrature<T>> {
    if order == 0 {
        return Err(Error::InvalidParameter("quadrature order must be at least 1".into()));
    }
    let m = T::from_usize_lossy(order);
    let (nodes, weights) = match dim {
        1 => (vec![Rotation::identity(1)], vec![T::one()]),
        2 => {
            let nodes = (0..order)
                .map(|j| Rotation::planar(T::TAU() * T::from_usize_lossy(j) / m))
                .collect();
            (nodes, vec![m.recip(); order])
        }
        3 => {
            let (gl_x, gl_w) = gauss_legendre(order);
            let mut nodes = Vec::with_capacity(order.pow(3));
            let mut weights = Vec::with_capacity(order.pow(3));
            for a in 0..order {
                let alpha = T::TAU() * T::from_usize_lossy(a) / m;
                for (x, w) in gl_x.iter().zip(&gl_w) {
                    let beta = T::lit(*x).acos();
                    for g in 0..order {
                        let gamma = T::TAU() * T::from_usize_lossy(g) / m;
                        nodes.push(Rotation::euler_zyz(alpha, beta, gamma));
                        weights.push(T::lit(*w / 2.0) / (m * m));
                    }
                }
            }
            (nodes, weights)
        }
        _ => return Err(Error::InvalidParameter(format!("dimension must be 1, 2 or 3, got {dim}"))),
    };
    RotationQuadrature::new(nodes, weights, QuadratureKind::Deterministic, order)
}

fn lattice_rotations<T: Real>(dim: usize) -> Result<Vec<Rotation<T>>> {
    if !(1..=MAX_DIM).contains(&dim) {
        return Err(Error::InvalidParameter(format!("dimension must be 1, 2 or 3, got {dim}")));
    }
    let perms: Vec<Vec<usize>> = match dim {
        1 => vec![vec![0]],
        2 => vec![vec![0, 1], vec![1, 0]],
        _ => vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ],
    };
    let mut out = Vec::new();
    for perm in &perms {
        for signs in 0..(1u32 << dim) {
            let mut m = [[T::zero(); MAX_DIM]; MAX_DIM];
            for i in 0..dim {
                m[i][perm[i]] = if signs >> i & 1 == 1 { -T::one() } else { T::one() };
            }
            let r = Rotation { dim, m };
            if r.det() > T::zero() {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// Weighted unit vectors approximating the normalized surface measure on
/// `S^{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereQuadrature<T> {
    dim: usize,
    order: usize,
    nodes: Vec<Point<T>>,
    weights: Vec<T>,
}

impl<T: Real> SphereQuadrature<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[Point<T>] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ_j w_j f(u_j)`.
    pub fn mean(&self, f: impl Fn(&[T]) -> T) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(u, &w)| w * f(&u[..self.dim]))
            .sum()
    }
}

/// Deterministic quadrature of order `m ≥ 2` on the unit sphere.
///
/// * n = 1: `{+1, −1}`, weights ½.
/// * n = 2: `m` equally spaced angles, weights `1/m`.
/// * n = 3: Gauss–Legendre with `m` nodes in `cos θ` times `2m` equally
///   spaced azimuths; exact for polynomials of degree `< 2m`.
///
/// Node sets are symmetric under `u ↦ −u` whenever the rule allows it (always
/// for n = 1, 3; for even `m` when n = 2), and mirrored nodes are computed by
/// negation so odd integrands cancel to rounding.
pub fn sphere_quadrature<T: Real>(dim: usize, order: usize) -> Result<SphereQuadrature<T>> {
    if order < 2 {
        return Err(Error::InvalidParameter(format!("sphere quadrature order must be at least 2, got {order}")));
    }
    let z = T::zero();
    let (nodes, weights): (Vec<Point<T>>, Vec<T>) = match dim {
        1 => (vec![[T::one(), z, z], [-T::one(), z, z]], vec![T::lit(0.5); 2]),
        2 => {
            let m = T::from_usize_lossy(order);
            let nodes = circle_nodes::<T>(order).into_iter().map(|(c, s)| [c, s, z]).collect();
            (nodes, vec![m.recip(); order])
        }
        3 => {
            let (gl_x, gl_w) = gauss_legendre(order);
            let azimuths = circle_nodes::<T>(2 * order);
            let per = T::from_usize_lossy(2 * order);
            let mut nodes = Vec::with_capacity(gl_x.len() * azimuths.len());
            let mut weights = Vec::with_capacity(nodes.capacity());
            for (x, w) in gl_x.iter().zip(&gl_w) {
                let ct = T::lit(*x);
                let st = T::lit((1.0 - x * x).sqrt());
                for &(c, s) in &azimuths {
                    nodes.push([st * c, st * s, ct]);
                    weights.push(T::lit(*w / 2.0) / per);
                }
            }
            (nodes, weights)
        }
        _ => return Err(Error::InvalidParameter(format!("dimension must be 1, 2 or 3, got {dim}"))),
    };
    validate_weights(&weights, nodes.len())?;
    Ok(SphereQuadrature { dim, order, nodes, weights })
}

/// `(cos, sin)` of `2πj/m`; the second half is the negated first half when
/// `m` is even.
fn circle_nodes<T: Real>(m: usize) -> Vec<(T, T)> {
    let step = T::TAU() / T::from_usize_lossy(m);
    if m % 2 == 1 {
        return (0..m).map(|j| (step * T::from_usize_lossy(j)).sin_cos()).map(|(s, c)| (c, s)).collect();
    }
    let half: Vec<(T, T)> = (0..m / 2)
        .map(|j| {
            let (s, c) = (step * T::from_usize_lossy(j)).sin_cos();
            (c, s)
        })
        .collect();
    half.iter().copied().chain(half.iter().map(|&(c, s)| (-c, -s))).collect()
}

/// Gauss–Legendre nodes (ascending) and weights on `[-1, 1]`, computed by
/// Newton iteration on the three-term recurrence. Symmetric by construction.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pm = if m == 1 { z } else { p1 };
            let pm1 = if m == 1 { 1.0 } else { p0 };
            dp = mf * (z * pm - pm1) / (z * z - 1.0);
            let dz = pm / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let weight = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[m - 1 - i] = z;
        w[i] = weight;
        w[m - 1 - i] = weight;
    }
    if m % 2 == 1 {
        x[m / 2] = 0.0;
    }
    (x, w)
}

fn validate_weights<T: Real>(weights: &[T], nodes: usize) -> Result<()> {
    if weights.len() != nodes || nodes == 0 {
        return Err(Error::InvalidParameter("quadrature needs one positive weight per node".into()));
    }
    if weights.iter().any(|w| !(*w > T::zero())) {
        return Err(Error::InvalidParameter("quadrature weights must be positive".into()));
    }
    let total: T = weights.iter().copied().sum();
    if (total - T::one()).abs() > T::lit(1e-13).max(T::epsilon() * T::from_usize_lossy(nodes)) {
        return Err(Error::InvalidParameter(format!("quadrature weights sum to {total}, not 1")));
    }
    Ok(())
}

/// `ξ ↦ φ(Rξ)`.
///
/// Radial symbols are returned unchanged. Sampled symbols are permuted on
/// the lattice, which requires `R` to be lattice preserving; frequencies that
/// leave the stored index range wrap periodically.
pub fn rotated_symbol<T: Real>(symbol: &Symbol<T>, rotation: &Rotation<T>) -> Result<Symbol<T>> {
    if let Some(d) = symbol.dim() {
        if d != rotation.dim() {
            return Err(Error::InvalidParameter(format!(
                "symbol has dimension {d} but rotation has dimension {}",
                rotation.dim()
            )));
        }
    }
    Ok(match symbol {
        Symbol::Radial(_) => symbol.clone(),
        Symbol::Named(_) => Symbol::Rotated { inner: Box::new(symbol.clone()), rotation: *rotation },
        Symbol::Rotated { inner, rotation: first } => {
            Symbol::Rotated { inner: inner.clone(), rotation: first.compose(rotation) }
        }
        Symbol::Sampled(s) => {
            let perm = rotation.signed_permutation().ok_or(Error::NotLatticePreserving)?;
            let grid = *s.grid();
            let values = (0..grid.len())
                .map(|k| s.values()[grid.flat_index(&perm.apply(&grid.offsets(k)))])
                .collect();
            Symbol::Sampled(SampledSymbol::new(grid, values)?)
        }
        Symbol::Combination(terms) => Symbol::Combination(
            terms
                .iter()
                .map(|(c, s)| Ok((*c, rotated_symbol(s, rotation)?)))
                .collect::<Result<_>>()?,
        ),
    })
}
