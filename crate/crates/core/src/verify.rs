//! The property suite behind `radmult verify`.
//!
//! Each of the twelve criteria produces one or more [`Check`]s; the suite
//! passes when every check passes. All randomness is drawn from ChaCha
//! streams derived from [`VerifyConfig::seed`], so a configuration always
//! reproduces the same report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{
    frequency_l2_norm, transform, Direction, Domain, FrequencyGrid, GridFunction, LpNorm, VectorGridFunction,
};
use crate::multiplier::{average_conjugated, conjugated_apply, MultiplierOperator, RotationMode, Verdict};
use crate::norms::{norm_lower_power, norm_p2_exact, random_function, PowerOptions};
use crate::radialize::{has_jumps, project, project_mc, radial_deviation};
use crate::rotation::{haar_rotation, rotated_symbol, so_quadrature, sphere_quadrature, RotationQuadrature};
use crate::scalar::Cplx;
use crate::symbols::{sample_symbol, ProfileSpec, Symbol};
use crate::tolerances::{Tolerances, ORACLE_SPHERE_ORDER};

/// One pass/fail assertion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(id: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { id: id.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub dim: usize,
    pub points: usize,
    pub extent: f64,
    pub seed: u64,
    pub sphere_order: usize,
    pub indicator_order: usize,
    /// Order of the deterministic rotation rule in interpolation mode.
    pub rot_order: usize,
    /// Grid size for the power-method criteria.
    pub small_points: usize,
    /// Grid size for the three-dimensional conjugation checks.
    pub cube_points: usize,
    pub tolerances: Tolerances,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            dim: 2,
            points: 64,
            extent: 16.0,
            seed: 7,
            sphere_order: 256,
            indicator_order: 4096,
            rot_order: 64,
            small_points: 32,
            cube_points: 16,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub criterion: usize,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub criteria: Vec<CriterionReport>,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const TITLES: [&str; 12] = [
    "projection idempotence",
    "fixed points on radial symbols",
    "radiality of the projection",
    "odd-symbol annihilation",
    "contractivity, exact forms",
    "contractivity, estimate form",
    "positivity preservation",
    "discrete conjugation identity",
    "rotation average vs projection",
    "quadrature convergence",
    "norm-method sanity",
    "vector-valued contraction probe",
];

/// Catalog entries exercised by the suite, as symbol specs.
pub fn reference_catalog() -> Vec<&'static str> {
    vec![
        "constant:c=1",
        "heat:t=1",
        "poisson:t=1",
        "gaussian_aniso:a11=1,a22=4",
        "ball_indicator:rho=1",
        "box_indicator:a=1",
        "riesz:j=1",
        "bochner_riesz:delta=1",
        "monomial:a1=2",
        "modulation:a1=1",
    ]
}

fn sym(spec: &str, dim: usize) -> Result<Symbol<f64>> {
    Symbol::parse(spec, dim)
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn e(v: f64) -> String {
    format!("{v:.3e}")
}

/// Shared state: the reference grid and the projected catalog.
pub struct Suite {
    cfg: VerifyConfig,
    grid: FrequencyGrid<f64>,
    spec: ProfileSpec<f64>,
    catalog: Vec<(String, Symbol<f64>, Symbol<f64>)>,
}

impl Suite {
    pub fn new(cfg: VerifyConfig) -> Result<Self> {
        if cfg.dim != 2 {
            return Err(Error::Unsupported("the verification suite runs in dimension 2"));
        }
        let grid = FrequencyGrid::new(cfg.dim, cfg.points, cfg.extent)?;
        FrequencyGrid::<f64>::new(3, cfg.cube_points, cfg.extent)?;
        FrequencyGrid::<f64>::new(2, cfg.small_points, cfg.extent)?;
        let spec = ProfileSpec::for_grid(&grid);
        let mut catalog = Vec::new();
        for s in reference_catalog() {
            let phi = sym(s, cfg.dim)?;
            let sq = sphere_quadrature(cfg.dim, Self::order_for(&cfg, &phi))?;
            let p = project(&phi, &spec, &sq)?;
            catalog.push((s.to_string(), phi, p));
        }
        Ok(Self { cfg, grid, spec, catalog })
    }

    fn order_for(cfg: &VerifyConfig, phi: &Symbol<f64>) -> usize {
        if has_jumps(phi) {
            cfg.indicator_order
        } else {
            cfg.sphere_order
        }
    }

    fn order(&self, phi: &Symbol<f64>) -> usize {
        Self::order_for(&self.cfg, phi)
    }

    fn projected(&self, spec: &str) -> &(String, Symbol<f64>, Symbol<f64>) {
        self.catalog.iter().find(|(s, _, _)| s == spec).expect("reference catalog entry")
    }

    fn tol(&self) -> &Tolerances {
        &self.cfg.tolerances
    }

    fn small_grid(&self) -> FrequencyGrid<f64> {
        FrequencyGrid::new(2, self.cfg.small_points.min(self.cfg.points), self.cfg.extent).expect("validated")
    }

    pub fn run(&self) -> Result<SuiteReport> {
        let mut criteria = Vec::new();
        for k in 1..=12 {
            criteria.push(CriterionReport { criterion: k, title: TITLES[k - 1], checks: self.criterion(k)? });
        }
        let failures = criteria
            .iter()
            .flat_map(|c| c.checks.iter().filter(|x| !x.passed).map(|x| x.id.clone()))
            .collect();
        Ok(SuiteReport { criteria, failures })
    }

    pub fn criterion(&self, k: usize) -> Result<Vec<Check>> {
        match k {
            1 => self.idempotence(),
            2 => self.fixed_points(),
            3 => self.radiality(),
            4 => self.annihilation(),
            5 => self.contraction_exact(),
            6 => self.contraction_estimate(),
            7 => self.positivity(),
            8 => self.conjugation(),
            9 => self.average_vs_projection(),
            10 => self.convergence(),
            11 => self.norm_sanity(),
            12 => self.vector_probe(),
            _ => Err(Error::InvalidParameter(format!("no criterion {k}"))),
        }
    }

    fn idempotence(&self) -> Result<Vec<Check>> {
        let smooth = ["heat:t=1", "gaussian_aniso:a11=1,a22=4", "poisson:t=1", "bochner_riesz:delta=1"];
        let rough = ["box_indicator:a=1", "ball_indicator:rho=1"];
        let mut out = Vec::new();
        for (list, tol) in [(&smooth[..], self.tol().idempotence_smooth), (&rough[..], self.tol().idempotence_indicator)] {
            for s in list {
                let (_, phi, p) = self.projected(s);
                let sq = sphere_quadrature(self.cfg.dim, self.order(phi))?;
                let pp = project(p, &self.spec, &sq)?;
                let d = pp.as_radial().unwrap().max_abs_diff(p.as_radial().unwrap())?;
                out.push(Check::new(format!("idempotence[{s}]"), d <= tol, format!("‖P(Pφ) − Pφ‖∞ = {}", e(d))));
            }
        }
        Ok(out)
    }

    fn fixed_points(&self) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        let dr = self.grid.dxi();
        for (s, kink) in [("heat:t=1", None), ("poisson:t=1", None), ("ball_indicator:rho=1", Some(1.0))] {
            let (_, phi, p) = self.projected(s);
            let prof = p.as_radial().unwrap();
            let mut d: f64 = 0.0;
            for (&r, v) in prof.radii().iter().zip(prof.values()) {
                if kink.is_some_and(|k: f64| (r - k).abs() <= 2.0 * dr) {
                    continue;
                }
                d = d.max((v - phi.eval(&[r, 0.0])?).norm());
            }
            out.push(Check::new(
                format!("fixed-point[{s}]"),
                d <= self.tol().fixed_point,
                format!("‖Pφ − φ‖∞ = {}", e(d)),
            ));
        }
        Ok(out)
    }

    fn radiality(&self) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        let sq = sphere_quadrature(self.cfg.dim, self.cfg.sphere_order)?;
        let mut r = rng(self.cfg.seed, 3);
        let xmax = self.grid.nyquist_radius();
        let pairs: Vec<_> = (0..20)
            .map(|_| {
                let rot = haar_rotation::<f64, _>(2, &mut r).expect("dimension 2");
                let xi = [r.random_range(-xmax..xmax), r.random_range(-xmax..xmax)];
                (rot, xi)
            })
            .collect();
        for (s, _, p) in &self.catalog {
            let dev = radial_deviation(p, &self.grid, &sq)?;
            out.push(Check::new(
                format!("radial-deviation[{s}]"),
                dev <= self.tol().radiality,
                format!("deviation = {}", e(dev)),
            ));
            let mut d: f64 = 0.0;
            for (rot, xi) in &pairs {
                let turned = rot.apply(xi);
                d = d.max((p.eval(&turned[..2])? - p.eval(xi)?).norm());
            }
            out.push(Check::new(
                format!("haar-invariance[{s}]"),
                d <= self.tol().radiality,
                format!("max |Pφ(Rξ) − Pφ(ξ)| = {}", e(d)),
            ));
        }
        Ok(out)
    }

    fn annihilation(&self) -> Result<Vec<Check>> {
        let (_, _, p) = self.projected("riesz:j=1");
        let m = p.as_radial().unwrap().max_abs();
        Ok(vec![Check::new("annihilation[riesz:j=1]", m <= self.tol().annihilation, format!("‖Pφ‖∞ = {}", e(m)))])
    }

    fn contraction_exact(&self) -> Result<Vec<Check>> {
        let tol = self.tol();
        let mut out = Vec::new();
        for (s, phi, p) in &self.catalog {
            let op = MultiplierOperator::new(phi.clone(), self.grid)?;
            let opp = MultiplierOperator::new(p.clone(), self.grid)?;
            let (a, b) = (opp.samples().max_abs(), op.samples().max_abs());
            out.push(Check::new(
                format!("p2-sup[{s}]"),
                a <= b + tol.contraction_sup,
                format!("max|Pφ| = {}, max|φ| = {}", e(a), e(b)),
            ));
            if op.positivity(tol.positivity).verdict == Verdict::Positive {
                let (ka, kb) = (opp.kernel_l1(), op.kernel_l1());
                out.push(Check::new(
                    format!("endpoint-kernel[{s}]"),
                    ka <= kb * (1.0 + tol.kernel_relative),
                    format!("Σ|K_Pφ|Δxⁿ = {}, Σ|K_φ|Δxⁿ = {}", e(ka), e(kb)),
                ));
                if s == "heat:t=1" {
                    let at0 = phi.eval(&[0.0, 0.0])?.re;
                    out.push(Check::new(
                        format!("endpoint-equality[{s}]"),
                        (ka - at0).abs() <= tol.kernel_at_origin && (kb - at0).abs() <= tol.kernel_at_origin,
                        format!("Σ|K_Pφ|Δxⁿ = {}, Σ|K_φ|Δxⁿ = {}, φ(0) = {}", e(ka), e(kb), e(at0)),
                    ));
                }
            }
        }
        Ok(out)
    }

    fn contraction_estimate(&self) -> Result<Vec<Check>> {
        let grid = self.small_grid();
        let spec = ProfileSpec::for_grid(&grid);
        let opts = PowerOptions { seed: self.cfg.seed, ..Default::default() };
        let mut out = Vec::new();
        for (s, phi, _) in &self.catalog {
            let sq = sphere_quadrature(2, self.order(phi))?;
            let p = project(phi, &spec, &sq)?;
            let upper = MultiplierOperator::new(phi.clone(), grid)?.kernel_l1();
            let opp = MultiplierOperator::new(p, grid)?;
            for exponent in [1.5, 3.0, 4.0] {
                let lower = norm_lower_power(&opp, exponent, &opts)?.value;
                out.push(Check::new(
                    format!("lower-vs-upper[{s},p={exponent}]"),
                    lower <= upper * (1.0 + self.tol().estimate_relative),
                    format!("lower(Pφ) = {}, upper(φ) = {}", e(lower), e(upper)),
                ));
            }
        }
        Ok(out)
    }

    fn positivity(&self) -> Result<Vec<Check>> {
        let tol = self.tol();
        let mut out = Vec::new();
        for s in ["heat:t=1", "gaussian_aniso:a11=1,a22=1"] {
            let phi = sym(s, 2)?;
            let sq = sphere_quadrature(2, self.order(&phi))?;
            let p = project(&phi, &self.spec, &sq)?;
            let op = MultiplierOperator::new(phi, self.grid)?;
            let opp = MultiplierOperator::new(p, self.grid)?;
            let (a, b) = (op.positivity(tol.positivity), opp.positivity(tol.positivity));
            out.push(Check::new(
                format!("positive-verdicts[{s}]"),
                a.verdict == Verdict::Positive && b.verdict == Verdict::Positive,
                format!("min K_φ = {}, min K_Pφ = {}", e(a.min_real), e(b.min_real)),
            ));
            let mut r = rng(self.cfg.seed, 7);
            let mut worst = f64::INFINITY;
            let mut imag: f64 = 0.0;
            for _ in 0..20 {
                let values = (0..self.grid.len()).map(|_| Cplx::new(r.random_range(0.0..1.0), 0.0)).collect();
                let f = GridFunction::new(self.grid, values, Domain::Space)?;
                let g = opp.apply(&f)?;
                for v in g.values() {
                    worst = worst.min(v.re);
                    imag = imag.max(v.im.abs());
                }
            }
            out.push(Check::new(
                format!("nonnegative-output[{s}]"),
                worst >= -tol.nonnegative_output && imag <= tol.nonnegative_output,
                format!("min Re M_Pφ f = {}, max |Im| = {}", e(worst), e(imag)),
            ));
        }
        Ok(out)
    }

    /// Random spatial function whose spectrum vanishes on Nyquist rows.
    fn nyquist_free(grid: &FrequencyGrid<f64>, seed: u64, stream: u64) -> Result<GridFunction<f64>> {
        let mut r = rng(seed, stream);
        let values = (0..grid.len())
            .map(|k| {
                let v = Cplx::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0));
                if grid.is_nyquist(k) {
                    Cplx::new(0.0, 0.0)
                } else {
                    v
                }
            })
            .collect();
        transform(&GridFunction::new(*grid, values, Domain::Frequency)?, Direction::Inverse)
    }

    fn conjugation(&self) -> Result<Vec<Check>> {
        let tol = self.tol().conjugation;
        let cube = FrequencyGrid::new(3, self.cfg.cube_points, self.cfg.extent)?;
        let cases = [(self.grid, "riesz:j=1"), (cube, "gaussian_aniso:a11=1,a22=2,a33=3")];
        let mut out = Vec::new();
        for (grid, s) in cases {
            let n = grid.dim();
            let phi = sym(s, n)?;
            let sampled = Symbol::Sampled(sample_symbol(&phi, &grid)?);
            let group = RotationQuadrature::<f64>::lattice_group(n)?;
            let f = Self::nyquist_free(&grid, self.cfg.seed, 11)?;
            let g = random_function(&grid, self.cfg.seed, 12);
            let parts: Vec<_> = (0..3).map(|c| Self::nyquist_free(&grid, self.cfg.seed, 20 + c)).collect::<Result<_>>()?;
            let fv = VectorGridFunction::from_components(&parts, 2.0)?;
            let gparts: Vec<_> = (0..3).map(|c| random_function(&grid, self.cfg.seed, 30 + c)).collect();
            let gv = VectorGridFunction::from_components(&gparts, 2.0)?;
            let mut worst = [0.0f64; 4];
            for rot in group.nodes() {
                let inv = rot.inverse();
                for (i, base) in [&phi, &sampled].into_iter().enumerate() {
                    let op = MultiplierOperator::new(base.clone(), grid)?;
                    let target = MultiplierOperator::new(rotated_symbol(base, &inv)?, grid)?;
                    let (x, xv) = if i == 0 { (&f, &fv) } else { (&g, &gv) };
                    let lhs = conjugated_apply(&op, rot, x, RotationMode::Exact)?;
                    worst[i] = worst[i].max(lhs.max_abs_diff(&target.apply(x)?));
                    let lv = conjugated_apply(&op, rot, xv, RotationMode::Exact)?;
                    let rv = target.apply_vector(xv)?;
                    let dv = lv.values().iter().zip(rv.values()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                    worst[2 + i] = worst[2 + i].max(dv);
                }
            }
            let labels = ["scalar,named", "scalar,sampled", "vector,named", "vector,sampled"];
            for (label, w) in labels.iter().zip(worst) {
                out.push(Check::new(
                    format!("conjugation[n={n},{label},{} rotations]", group.len()),
                    w <= tol,
                    format!("max difference = {}", e(w)),
                ));
            }
        }
        Ok(out)
    }

    fn average_vs_projection(&self) -> Result<Vec<Check>> {
        let tol = self.tol();
        let mut out = Vec::new();
        let group = RotationQuadrature::<f64>::lattice_group(2)?;
        let f = random_function(&self.grid, self.cfg.seed, 40);
        for s in ["gaussian_aniso:a11=1,a22=4", "monomial:a1=2"] {
            let phi = sym(s, 2)?;
            let op = MultiplierOperator::new(phi.clone(), self.grid)?;
            let avg = average_conjugated(&op, &group, &f, RotationMode::Exact)?;
            let symbol_avg = project_mc(&Symbol::Sampled(op.samples().clone()), &self.grid, &group)?;
            let direct = MultiplierOperator::from_samples(symbol_avg).apply(&f)?;
            let scale = direct.lp_norm(f64::INFINITY)?.max(1.0);
            let d = avg.max_abs_diff(&direct) / scale;
            out.push(Check::new(
                format!("exact-lattice-average[{s}]"),
                d <= tol.average_exact,
                format!("relative max difference = {}", e(d)),
            ));
        }

        let s = "gaussian_aniso:a11=1,a22=4";
        let (_, phi, p) = self.projected(s);
        let op = MultiplierOperator::new(phi.clone(), self.grid)?;
        let rq = so_quadrature(2, self.cfg.rot_order)?;
        let bump = GridFunction::from_space_fn(self.grid, |x| {
            Cplx::new((-(x[0] * x[0] + x[1] * x[1]) / 8.0).exp(), 0.0)
        });
        let q = average_conjugated(&op, &rq, &bump, RotationMode::Interpolated)?;
        let target = MultiplierOperator::new(p.clone(), self.grid)?.apply(&bump)?;
        let diff = GridFunction::new(
            self.grid,
            q.values().iter().zip(target.values()).map(|(a, b)| a - b).collect(),
            Domain::Space,
        )?;
        let rel = diff.lp_norm(2.0)? / target.lp_norm(2.0)?;
        out.push(Check::new(
            format!("interpolated-average[{s},m={}]", self.cfg.rot_order),
            rel <= tol.average_interpolated,
            format!("relative L² difference = {}", e(rel)),
        ));
        Ok(out)
    }

    fn convergence(&self) -> Result<Vec<Check>> {
        let tol = self.tol();
        let phi = sym("gaussian_aniso:a11=1,a22=4", 2)?;
        let oracle = crate::radialize::spherical_mean(&phi, 2.0, &sphere_quadrature(2, ORACLE_SPHERE_ORDER)?)?;
        let errors = [8, 16, 32, 64]
            .iter()
            .map(|&m| Ok((crate::radialize::spherical_mean(&phi, 2.0, &sphere_quadrature(2, m)?)? - oracle).norm()))
            .collect::<Result<Vec<f64>>>()?;
        let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
        let listing = errors.iter().map(|&x| e(x)).collect::<Vec<_>>().join(", ");
        let mut out = vec![
            Check::new("convergence-decreasing[gaussian_aniso,r=2]", decreasing, format!("errors = [{listing}]")),
            Check::new(
                "convergence-final[gaussian_aniso,r=2,m=64]",
                errors[3] <= tol.convergence_final,
                format!("error = {}", e(errors[3])),
            ),
        ];

        let (_, _, p) = self.projected("box_indicator:a=1");
        let prof = p.as_radial().unwrap();
        let dr = self.grid.dxi();
        let kinks = [1.0, 2f64.sqrt()];
        let mut d: f64 = 0.0;
        for (&r, v) in prof.radii().iter().zip(prof.values()) {
            if kinks.iter().any(|k| (r - k).abs() <= 2.0 * dr) {
                continue;
            }
            d = d.max((v.re - square_arc_fraction(1.0, r)).abs().max(v.im.abs()));
        }
        out.push(Check::new(
            format!("box-profile-oracle[m={}]", self.cfg.indicator_order),
            d <= tol.box_oracle,
            format!("max deviation from arc-length fraction = {}", e(d)),
        ));
        Ok(out)
    }

    fn norm_sanity(&self) -> Result<Vec<Check>> {
        let tol = self.tol();
        let grid = self.small_grid();
        let opts = PowerOptions { seed: self.cfg.seed, ..Default::default() };
        let mut out = Vec::new();
        for s in ["heat:t=1", "riesz:j=1"] {
            let op = MultiplierOperator::new(sym(s, 2)?, grid)?;
            let lower = norm_lower_power(&op, 2.0, &opts)?.value;
            let exact = norm_p2_exact(&op).value;
            out.push(Check::new(
                format!("power-p2[{s}]"),
                (lower - exact).abs() <= tol.power_sanity,
                format!("power = {}, sup|φ| = {}", e(lower), e(exact)),
            ));
        }
        let f = random_function(&self.grid, self.cfg.seed, 50);
        let fhat = transform(&f, Direction::Forward)?;
        let back = transform(&fhat, Direction::Inverse)?;
        let scale = f.lp_norm(f64::INFINITY)?;
        let rt = back.max_abs_diff(&f) / scale;
        out.push(Check::new("round-trip", rt <= tol.round_trip, format!("relative max error = {}", e(rt))));
        let (a, b) = (f.lp_norm(2.0)?, frequency_l2_norm(&fhat)?);
        let parseval = (a - b).abs() / a;
        out.push(Check::new("parseval", parseval <= tol.round_trip, format!("relative gap = {}", e(parseval))));
        Ok(out)
    }

    fn vector_probe(&self) -> Result<Vec<Check>> {
        let group = RotationQuadrature::<f64>::lattice_group(2)?;
        let mut out = Vec::new();
        for s in ["gaussian_aniso:a11=1,a22=4", "box_indicator:a=1", "riesz:j=1"] {
            let op = MultiplierOperator::new(sym(s, 2)?, self.grid)?;
            let upper = op.kernel_l1();
            for q in [1.0, 2.0, f64::INFINITY] {
                for p in [2.0, 4.0] {
                    let mut margin = f64::INFINITY;
                    for trial in 0..10u64 {
                        let parts: Vec<_> =
                            (0..3).map(|c| random_function(&self.grid, self.cfg.seed, 100 + 3 * trial + c)).collect();
                        let fv = VectorGridFunction::from_components(&parts, q)?;
                        let qf = average_conjugated(&op, &group, &fv, RotationMode::Exact)?;
                        margin = margin.min(upper * fv.lp_norm(p)? + self.tol().vector_probe - qf.lp_norm(p)?);
                    }
                    out.push(Check::new(
                        format!("vector-probe[{s},q={},p={p}]", if q.is_infinite() { "inf".into() } else { q.to_string() }),
                        margin >= 0.0,
                        format!("smallest margin = {}", e(margin)),
                    ));
                }
            }
        }
        Ok(out)
    }
}

/// Fraction of the circle of radius `r` lying inside `[-a, a]²`.
pub fn square_arc_fraction(a: f64, r: f64) -> f64 {
    if r <= a {
        1.0
    } else if r <= a * 2f64.sqrt() {
        1.0 - 4.0 / std::f64::consts::PI * (a / r).acos()
    } else {
        0.0
    }
}

/// Runs all twelve criteria.
pub fn run_suite(cfg: VerifyConfig) -> Result<SuiteReport> {
    Suite::new(cfg)?.run()
}
