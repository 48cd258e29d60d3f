//! `L^p → L^p` norms of multiplier operators.
//!
//! Exact values exist at `p = 2` (largest symbol modulus) and at the
//! endpoints `p ∈ {1, ∞}` (kernel `L¹` mass). Between them the kernel mass is
//! an upper bound and a nonlinear power iteration gives lower bounds.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{check_exponent, lp_of_magnitudes, GridFunction};
use crate::multiplier::{MultiplierOperator, Verdict};
use crate::radialize::project_for_grid;
use crate::scalar::{Cplx, Real};
use crate::symbols::Symbol;
use crate::tolerances::{Tolerances, POWER_MAX_ITERS, POWER_REL_GAIN, POWER_RESTARTS};
use crate::verify::Check;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateKind {
    Exact,
    LowerBound,
    UpperBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMethod {
    /// Largest symbol modulus.
    SymbolSup,
    /// `Σ |K| Δxⁿ`.
    KernelL1,
    PowerIteration,
}

impl NormMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            NormMethod::SymbolSup => "symbol-sup",
            NormMethod::KernelL1 => "kernel-l1",
            NormMethod::PowerIteration => "power-iteration",
        }
    }
}

impl EstimateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EstimateKind::Exact => "exact",
            EstimateKind::LowerBound => "lower-bound",
            EstimateKind::UpperBound => "upper-bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormEstimate<T> {
    pub value: T,
    pub kind: EstimateKind,
    /// `None` for the p-independent kernel bound.
    pub p: Option<T>,
    pub method: NormMethod,
    pub iterations: usize,
    pub trials: usize,
    pub seed: Option<u64>,
}

/// `max_ξ |φ(ξ)|`, the exact `L² → L²` norm.
pub fn norm_p2_exact<T: Real>(op: &MultiplierOperator<T>) -> NormEstimate<T> {
    NormEstimate {
        value: op.samples().max_abs(),
        kind: EstimateKind::Exact,
        p: Some(T::lit(2.0)),
        method: NormMethod::SymbolSup,
        iterations: 0,
        trials: 0,
        seed: None,
    }
}

/// `Σ |K| Δxⁿ`, an upper bound for every `p`.
pub fn norm_upper_kernel<T: Real>(op: &MultiplierOperator<T>) -> NormEstimate<T> {
    NormEstimate {
        value: op.kernel_l1(),
        kind: EstimateKind::UpperBound,
        p: None,
        method: NormMethod::KernelL1,
        iterations: 0,
        trials: 0,
        seed: None,
    }
}

/// The kernel mass is the exact norm at `p = 1` and `p = ∞`.
pub fn norm_endpoint_exact<T: Real>(op: &MultiplierOperator<T>, p: T) -> Result<NormEstimate<T>> {
    if !(p == T::one() || p.is_infinite()) {
        return Err(Error::InvalidExponent(p.as_f64()));
    }
    Ok(NormEstimate { kind: EstimateKind::Exact, p: Some(p), ..norm_upper_kernel(op) })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerOptions {
    /// Random starts in addition to the plane-wave start.
    pub restarts: usize,
    pub max_iters: usize,
    pub rel_gain: f64,
    pub seed: u64,
}

impl Default for PowerOptions {
    fn default() -> Self {
        Self { restarts: POWER_RESTARTS, max_iters: POWER_MAX_ITERS, rel_gain: POWER_REL_GAIN, seed: 0 }
    }
}

/// `sgn(v)·|v|^{e}` up to a positive factor, scaled by `max |v|` to stay finite.
fn dual_direction<T: Real>(v: &[Cplx<T>], e: T) -> Vec<Cplx<T>> {
    let m = v.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    v.iter()
        .map(|z| {
            let r = z.norm();
            if r.is_zero() {
                Cplx::zero()
            } else {
                let rel = r / m;
                *z / r * rel.powf(e)
            }
        })
        .collect()
}

fn weighted_norm<T: Real>(v: &[Cplx<T>], p: T, w: T) -> T {
    lp_of_magnitudes(v.iter().map(|z| z.norm()), p, w)
}

/// Estimates `‖A x_k‖_p` for the iterates of the nonlinear power method from
/// `start`. The sequence is nondecreasing up to rounding.
pub fn power_trace<T: Real>(
    op: &MultiplierOperator<T>,
    adjoint: &MultiplierOperator<T>,
    p: T,
    start: Vec<Cplx<T>>,
    max_iters: usize,
    rel_gain: T,
) -> Result<Vec<T>> {
    let w = op.grid().cell_volume();
    let q = p / (p - T::one());
    let mut x = start;
    let nx = weighted_norm(&x, p, w);
    if nx.is_zero() {
        return Err(Error::InvalidParameter("power iteration needs a nonzero start".into()));
    }
    x.iter_mut().for_each(|v| *v = *v / nx);
    let mut trace: Vec<T> = Vec::with_capacity(max_iters);
    for _ in 0..max_iters.max(1) {
        let mut y = x.clone();
        op.apply_in_place(&mut y);
        let gamma = weighted_norm(&y, p, w);
        let previous = trace.last().copied();
        trace.push(gamma);
        if gamma.is_zero() {
            break;
        }
        if let Some(prev) = previous {
            if gamma - prev <= rel_gain * prev {
                break;
            }
        }
        let mut z = dual_direction(&y, p - T::one());
        adjoint.apply_in_place(&mut z);
        let next = dual_direction(&z, q - T::one());
        let nn = weighted_norm(&next, p, w);
        if nn.is_zero() {
            break;
        }
        x = next.into_iter().map(|v| v / nn).collect();
    }
    Ok(trace)
}

/// Plane wave at a frequency where `|φ|` is largest.
fn plane_wave_start<T: Real>(op: &MultiplierOperator<T>) -> Vec<Cplx<T>> {
    let grid = op.grid();
    let n = grid.dim();
    let (best, _) = op
        .samples()
        .values()
        .iter()
        .enumerate()
        .fold((0, T::neg_infinity()), |(bk, bv), (k, v)| if v.norm() > bv { (k, v.norm()) } else { (bk, bv) });
    let xi = grid.frequency_point(best);
    (0..grid.len())
        .map(|k| {
            let x = grid.spatial_point(k);
            let phase = (0..n).map(|a| x[a] * xi[a]).sum::<T>();
            Cplx::new(phase.cos(), phase.sin())
        })
        .collect()
}

fn random_start<T: Real>(len: usize, seed: u64, stream: u64) -> Vec<Cplx<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..len)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Cplx::new(T::lit(re), T::lit(im))
        })
        .collect()
}

/// Best power-method lower bound over a plane-wave start and
/// `opts.restarts` seeded random starts.
pub fn norm_lower_power<T: Real>(op: &MultiplierOperator<T>, p: T, opts: &PowerOptions) -> Result<NormEstimate<T>> {
    check_exponent(p)?;
    if !(p > T::one()) || p.is_infinite() {
        return Err(Error::InvalidParameter(format!(
            "power iteration needs 1 < p < ∞, got {p}; use the kernel norm at the endpoints"
        )));
    }
    let adjoint = op.adjoint();
    let rel_gain = T::lit(opts.rel_gain);
    let len = op.grid().len();
    let runs = (0..=opts.restarts)
        .into_par_iter()
        .map(|trial| {
            let start = if trial == 0 { plane_wave_start(op) } else { random_start(len, opts.seed, trial as u64) };
            let trace = power_trace(op, &adjoint, p, start, opts.max_iters, rel_gain)?;
            let best = trace.iter().copied().fold(T::zero(), T::max);
            Ok((best, trace.len()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (value, iterations) = runs
        .iter()
        .copied()
        .fold((T::zero(), 0), |(bv, bi), (v, i)| if v > bv { (v, i) } else { (bv, bi) });
    Ok(NormEstimate {
        value,
        kind: EstimateKind::LowerBound,
        p: Some(p),
        method: NormMethod::PowerIteration,
        iterations,
        trials: opts.restarts + 1,
        seed: Some(opts.seed),
    })
}

/// Best available lower bound: exact where a closed form exists, otherwise
/// the power method.
pub fn norm_lower<T: Real>(op: &MultiplierOperator<T>, p: T, opts: &PowerOptions) -> Result<NormEstimate<T>> {
    check_exponent(p)?;
    if p == T::lit(2.0) {
        Ok(norm_p2_exact(op))
    } else if p == T::one() || p.is_infinite() {
        norm_endpoint_exact(op, p)
    } else {
        norm_lower_power(op, p, opts)
    }
}

/// Best available upper bound.
pub fn norm_upper<T: Real>(op: &MultiplierOperator<T>, p: T) -> Result<NormEstimate<T>> {
    check_exponent(p)?;
    if p == T::lit(2.0) {
        Ok(norm_p2_exact(op))
    } else if p == T::one() || p.is_infinite() {
        norm_endpoint_exact(op, p)
    } else {
        Ok(norm_upper_kernel(op))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    Original,
    Radialized,
}

/// One CSV row: `symbol,p,target,method,kind,value,iters,seed`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub symbol: String,
    pub p: f64,
    pub target: Target,
    pub method: NormMethod,
    pub kind: EstimateKind,
    pub value: f64,
    pub iters: usize,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractionOptions {
    pub sphere_order: usize,
    pub power: PowerOptions,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractionReport {
    pub symbol: String,
    pub rows: Vec<ReportRow>,
    /// Hard assertions.
    pub checks: Vec<Check>,
    /// Report-only comparisons of two lower bounds.
    pub observations: Vec<Check>,
}

impl ContractionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn format_p(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

/// Norm estimates for `M_φ` and `M_{P(φ)}` at each `p`, with the contraction
/// checks that exact and bounded values can certify.
pub fn contraction_report<T: Real>(
    symbol: &Symbol<T>,
    grid: &crate::grid::FrequencyGrid<T>,
    ps: &[T],
    opts: &ContractionOptions,
) -> Result<ContractionReport> {
    for &p in ps {
        check_exponent(p)?;
    }
    let tol = &opts.tolerances;
    let name = symbol.to_string();
    let original = MultiplierOperator::new(symbol.clone(), *grid)?;
    let radialized = MultiplierOperator::new(project_for_grid(symbol, grid, opts.sphere_order)?, *grid)?;
    let upper_o = norm_upper_kernel(&original);
    let upper_r = norm_upper_kernel(&radialized);

    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut observations = Vec::new();
    let row = |target, est: &NormEstimate<T>, p: T| ReportRow {
        symbol: name.clone(),
        p: p.as_f64(),
        target,
        method: est.method,
        kind: est.kind,
        value: est.value.as_f64(),
        iters: est.iterations,
        seed: est.seed,
    };

    let sup_o = original.samples().max_abs().as_f64();
    let sup_r = radialized.samples().max_abs().as_f64();
    checks.push(Check::new(
        "contraction-sup",
        sup_r <= sup_o + tol.contraction_sup,
        format!("max|Pφ| = {sup_r:.6e}, max|φ| = {sup_o:.6e}"),
    ));

    for &p in ps {
        let lower_o = norm_lower(&original, p, &opts.power)?;
        let lower_r = norm_lower(&radialized, p, &opts.power)?;
        let upper_po = norm_upper(&original, p)?;
        let upper_pr = norm_upper(&radialized, p)?;
        rows.push(row(Target::Original, &lower_o, p));
        if lower_o.kind != EstimateKind::Exact {
            rows.push(row(Target::Original, &upper_po, p));
        }
        rows.push(row(Target::Radialized, &lower_r, p));
        if lower_r.kind != EstimateKind::Exact {
            rows.push(row(Target::Radialized, &upper_pr, p));
        }
        let (lr, uo) = (lower_r.value.as_f64(), upper_o.value.as_f64());
        checks.push(Check::new(
            format!("lower-radialized-le-upper-original[p={}]", format_p(p.as_f64())),
            lr <= uo * (1.0 + tol.estimate_relative),
            format!("lower(Pφ) = {lr:.6e}, upper(φ) = {uo:.6e}"),
        ));
        let lo = lower_o.value.as_f64();
        observations.push(Check::new(
            format!("lower-radialized-le-lower-original[p={}]", format_p(p.as_f64())),
            lr <= lo * (1.0 + tol.estimate_relative),
            format!("lower(Pφ) = {lr:.6e}, lower(φ) = {lo:.6e}"),
        ));
    }

    if original.positivity(T::lit(tol.positivity)).verdict == Verdict::Positive {
        let n = grid.dim();
        let at_origin = symbol.eval(&[T::zero(); 3][..n])?.norm().as_f64();
        let (uo, ur) = (upper_o.value.as_f64(), upper_r.value.as_f64());
        checks.push(Check::new(
            "positive-kernel-norm-equality",
            (ur - at_origin).abs() <= tol.kernel_at_origin && (uo - at_origin).abs() <= tol.kernel_at_origin,
            format!("upper(Pφ) = {ur:.6e}, upper(φ) = {uo:.6e}, φ(0) = {at_origin:.6e}"),
        ));
    }

    Ok(ContractionReport { symbol: name, rows, checks, observations })
}

/// Spatial function used by probes: seeded complex Gaussian samples.
pub fn random_function<T: Real>(grid: &crate::grid::FrequencyGrid<T>, seed: u64, stream: u64) -> GridFunction<T> {
    GridFunction::new(*grid, random_start(grid.len(), seed, stream), crate::grid::Domain::Space)
        .expect("length matches grid")
}
