use std::error::Error;

use serde::Serialize;

use radmult::multiplier::{positivity_report, Verdict};
use radmult::norms::{contraction_report, ContractionOptions, PowerOptions};
use radmult::radialize::{default_sphere_order, project, radial_deviation, spherical_mean};
use radmult::rotation::sphere_quadrature;
use radmult::symbols::ProfileSpec;
use radmult::tolerances::ORACLE_SPHERE_ORDER;
use radmult::verify::{reference_catalog, Check, Suite, VerifyConfig};
use radmult::{MultiplierOperator, Symbol};

use crate::config::RunConfig;
use crate::output::{format_exponent, num, write_csv, write_json};

type CmdResult = Result<Outcome, Box<dyn Error>>;

#[derive(Debug, Default)]
pub struct Outcome {
    pub messages: Vec<String>,
    pub failures: Vec<String>,
}

impl Outcome {
    fn record(&mut self, checks: &[Check]) {
        self.failures.extend(checks.iter().filter(|c| !c.passed).map(|c| c.id.clone()));
    }
}

pub fn run(config: &RunConfig) -> CmdResult {
    match config.command {
        "radialize" => radialize(config),
        "norms" => norms(config),
        "positivity" => positivity(config),
        "converge" => converge(config),
        "verify" => verify(config),
        "demo" => demo(config),
        other => unreachable!("unknown command {other}"),
    }
}

#[derive(Serialize)]
struct RadializeSummary {
    symbol: String,
    knots: usize,
    sphere_order: usize,
    deviation_original: f64,
    deviation_radialized: f64,
    sup_original: f64,
    sup_radialized: f64,
    checks: Vec<Check>,
}

fn radialize(config: &RunConfig) -> CmdResult {
    let phi = config.symbol()?;
    let grid = config.frequency_grid()?;
    let order = config.sphere_order(&phi);
    let sq = sphere_quadrature(config.n, order)?;
    let spec = ProfileSpec::for_grid(&grid);
    let p = project(&phi, &spec, &sq)?;
    let profile = p.as_radial().expect("projection is radial");
    let rows: Vec<_> = profile
        .radii()
        .iter()
        .zip(profile.values())
        .map(|(r, v)| vec![num(*r), num(v.re), num(v.im)])
        .collect();
    let csv = write_csv(config, "profile.csv", &["r", "re", "im"], &rows)?;

    let deviation_original = radial_deviation(&phi, &grid, &sq)?;
    let deviation_radialized = radial_deviation(&p, &grid, &sq)?;
    let sup_original = MultiplierOperator::new(phi.clone(), grid)?.samples().max_abs();
    let sup_radialized = MultiplierOperator::new(p.clone(), grid)?.samples().max_abs();
    let tol = &config.tolerances;
    let checks = vec![
        Check::new(
            "radialized-is-radial",
            deviation_radialized <= tol.radiality,
            format!("deviation = {deviation_radialized:.3e}"),
        ),
        Check::new(
            "radialized-sup-le-original-sup",
            sup_radialized <= sup_original + tol.contraction_sup,
            format!("max|Pφ| = {sup_radialized:.6e}, max|φ| = {sup_original:.6e}"),
        ),
    ];
    let summary = RadializeSummary {
        symbol: phi.to_string(),
        knots: profile.len(),
        sphere_order: order,
        deviation_original,
        deviation_radialized,
        sup_original,
        sup_radialized,
        checks,
    };
    let json = write_json(config, "radialize.json", &summary)?;
    let mut outcome = Outcome::default();
    outcome.record(&summary.checks);
    outcome.messages.push(format!(
        "{}: deviation(φ) = {deviation_original:.3e}, deviation(Pφ) = {deviation_radialized:.3e}",
        summary.symbol
    ));
    outcome.messages.push(format!("wrote {} and {}", csv.display(), json.display()));
    Ok(outcome)
}

fn norms(config: &RunConfig) -> CmdResult {
    let phi = config.symbol()?;
    let grid = config.frequency_grid()?;
    let opts = ContractionOptions {
        sphere_order: config.sphere_order(&phi),
        power: PowerOptions { seed: config.seed, ..Default::default() },
        tolerances: config.tolerances.clone(),
    };
    let report = contraction_report(&phi, &grid, &config.p, &opts)?;
    let rows: Vec<_> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.symbol.clone(),
                format_exponent(r.p),
                serde_json::to_value(r.target).map(|v| v.as_str().unwrap_or_default().to_string()).unwrap_or_default(),
                r.method.as_str().to_string(),
                r.kind.as_str().to_string(),
                num(r.value),
                r.iters.to_string(),
                r.seed.map(|s| s.to_string()).unwrap_or_default(),
            ]
        })
        .collect();
    let csv = write_csv(config, "norms.csv", &["symbol", "p", "target", "method", "kind", "value", "iters", "seed"], &rows)?;
    let json = write_json(config, "norms.json", &report)?;
    let mut outcome = Outcome::default();
    outcome.record(&report.checks);
    for c in report.checks.iter().chain(&report.observations) {
        outcome.messages.push(format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.detail));
    }
    outcome.messages.push(format!("wrote {} and {}", csv.display(), json.display()));
    Ok(outcome)
}

fn positivity(config: &RunConfig) -> CmdResult {
    let phi = config.symbol()?;
    let grid = config.frequency_grid()?;
    let report = positivity_report(&phi, &grid, config.sphere_order(&phi), config.tolerances.positivity)?;
    let json = write_json(config, "positivity.json", &report)?;
    let preserved = report.verdict_original != Verdict::Positive || report.verdict_radialized == Verdict::Positive;
    let check = Check::new(
        "positivity-preserved",
        preserved,
        format!("min K_φ = {:.3e}, min K_Pφ = {:.3e}", report.min_kernel_original, report.min_kernel_radialized),
    );
    let mut outcome = Outcome::default();
    outcome.record(std::slice::from_ref(&check));
    outcome.messages.push(format!(
        "{}: original {:?}, radialized {:?}",
        report.symbol, report.verdict_original, report.verdict_radialized
    ));
    outcome.messages.push(format!("wrote {}", json.display()));
    Ok(outcome)
}

fn converge(config: &RunConfig) -> CmdResult {
    let phi = config.symbol()?;
    let r = config.r.expect("radius present for converge");
    let oracle = spherical_mean(&phi, r, &sphere_quadrature(config.n, ORACLE_SPHERE_ORDER)?)?;
    let mut rows = Vec::new();
    let mut outcome = Outcome::default();
    for &m in config.orders.as_deref().unwrap_or_default() {
        let v = spherical_mean(&phi, r, &sphere_quadrature(config.n, m)?)?;
        let err = (v - oracle).norm();
        rows.push(vec![m.to_string(), num(v.re), num(v.im), num(err)]);
        outcome.messages.push(format!("m = {m:>5}: error {err:.3e}"));
    }
    let csv = write_csv(config, "converge.csv", &["order", "re", "im", "error"], &rows)?;
    outcome.messages.push(format!("wrote {}", csv.display()));
    Ok(outcome)
}

fn verify(config: &RunConfig) -> CmdResult {
    let cfg = VerifyConfig {
        dim: config.n,
        points: config.grid,
        extent: config.extent,
        seed: config.seed,
        sphere_order: config.order.unwrap_or(VerifyConfig::default().sphere_order),
        rot_order: config.rot_order,
        tolerances: config.tolerances.clone(),
        ..VerifyConfig::default()
    };
    let report = Suite::new(cfg)?.run()?;
    let mut rows = Vec::new();
    let mut outcome = Outcome::default();
    for c in &report.criteria {
        outcome.record(&c.checks);
        outcome.messages.push(format!(
            "criterion {:>2} {}: {}",
            c.criterion,
            if c.passed() { "PASS" } else { "FAIL" },
            c.title
        ));
        for check in &c.checks {
            rows.push(vec![c.criterion.to_string(), check.id.clone(), check.passed.to_string(), check.detail.clone()]);
        }
    }
    let csv = write_csv(config, "verify.csv", &["criterion", "id", "passed", "detail"], &rows)?;
    let json = write_json(config, "verify.json", &report)?;
    outcome.messages.push(format!("wrote {} and {}", csv.display(), json.display()));
    Ok(outcome)
}

fn demo(config: &RunConfig) -> CmdResult {
    let grid = config.frequency_grid()?;
    let sq_check = sphere_quadrature(2, config.order.unwrap_or(256))?;
    let spec = ProfileSpec::for_grid(&grid);
    let tol = config.tolerances.positivity;
    let mut rows = Vec::new();
    let mut outcome = Outcome::default();
    for s in reference_catalog() {
        let phi = Symbol::parse(s, 2)?;
        let order = config.order.unwrap_or_else(|| default_sphere_order(&phi));
        let p = project(&phi, &spec, &sphere_quadrature(2, order)?)?;
        let op = MultiplierOperator::new(phi.clone(), grid)?;
        let opp = MultiplierOperator::new(p, grid)?;
        let deviation = radial_deviation(&phi, &grid, &sq_check)?;
        let (v, vp) = (op.positivity(tol), opp.positivity(tol));
        rows.push(vec![
            s.to_string(),
            num(deviation),
            num(op.samples().max_abs()),
            num(opp.samples().max_abs()),
            num(op.kernel_l1()),
            num(opp.kernel_l1()),
            format!("{:?}", v.verdict).to_lowercase(),
            format!("{:?}", vp.verdict).to_lowercase(),
        ]);
        outcome.messages.push(format!(
            "{s:<28} deviation {deviation:.2e}  sup {:.4} -> {:.4}  kernel L1 {:.4} -> {:.4}",
            op.samples().max_abs(),
            opp.samples().max_abs(),
            op.kernel_l1(),
            opp.kernel_l1()
        ));
    }
    let header = [
        "symbol",
        "radial_deviation",
        "sup",
        "sup_radialized",
        "kernel_l1",
        "kernel_l1_radialized",
        "verdict",
        "verdict_radialized",
    ];
    let csv = write_csv(config, "demo.csv", &header, &rows)?;
    outcome.messages.push(format!("wrote {}", csv.display()));
    Ok(outcome)
}
