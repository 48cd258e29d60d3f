use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use radmult::radialize::default_sphere_order;
use radmult::tolerances::Tolerances;
use radmult::{FrequencyGrid, Symbol};

use crate::output;

#[derive(Debug, Parser)]
#[command(name = "radmult", version, about = "Radial projection of Fourier multipliers on a discrete torus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Radial profile of the projected symbol and deviation statistics.
    Radialize {
        #[arg(long)]
        symbol: String,
    },
    /// Norm estimates for the symbol and its projection, with contraction checks.
    Norms {
        #[arg(long)]
        symbol: String,
    },
    /// Kernel positivity of the symbol and its projection.
    Positivity {
        #[arg(long)]
        symbol: String,
    },
    /// Spherical-mean error against a high-order rule, per order.
    Converge {
        #[arg(long)]
        symbol: String,
        /// Radius of the sphere.
        #[arg(long, default_value_t = 2.0)]
        r: f64,
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
        orders: Vec<usize>,
    },
    /// Full property suite.
    Verify,
    /// Summary table over the whole catalog in two dimensions.
    Demo,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Spatial dimension.
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,
    /// Points per axis (even).
    #[arg(long, global = true, default_value_t = 64)]
    pub grid: usize,
    /// Side length of the spatial box.
    #[arg(long, global = true, default_value_t = 16.0)]
    pub extent: f64,
    /// Sphere quadrature order; defaults to 256, or 4096 for indicators.
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Order of the deterministic rotation rule.
    #[arg(long = "rot-order", global = true, default_value_t = 64)]
    pub rot_order: usize,
    /// Exponents, comma separated; `inf` is accepted.
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_exponent, default_value = "1,1.5,2,3,4,inf")]
    pub p: Vec<f64>,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Tolerance override, `name=value`; repeatable.
    #[arg(long, global = true, value_parser = parse_tol)]
    pub tol: Vec<(String, f64)>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

fn parse_exponent(s: &str) -> Result<f64, String> {
    let p = match s.trim() {
        "inf" | "infinity" | "∞" => f64::INFINITY,
        t => t.parse::<f64>().map_err(|e| format!("`{t}`: {e}"))?,
    };
    if p >= 1.0 {
        Ok(p)
    } else {
        Err(format!("exponent must be at least 1, got {s}"))
    }
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let value = value.trim().parse::<f64>().map_err(|e| format!("`{value}`: {e}"))?;
    Ok((name.trim().to_string(), value))
}

/// Everything that determines a run's outputs. Serialized into every file.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub symbol: Option<String>,
    pub n: usize,
    pub grid: usize,
    pub extent: f64,
    pub order: Option<usize>,
    pub rot_order: usize,
    #[serde(serialize_with = "serialize_exponents")]
    pub p: Vec<f64>,
    pub seed: u64,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<usize>>,
    #[serde(skip)]
    pub out: PathBuf,
}

fn serialize_exponents<S: serde::Serializer>(p: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(|&v| output::format_exponent(v)))
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> radmult::Result<Self> {
        let c = &cli.common;
        let (command, symbol, r, orders) = match &cli.command {
            Command::Radialize { symbol } => ("radialize", Some(symbol.clone()), None, None),
            Command::Norms { symbol } => ("norms", Some(symbol.clone()), None, None),
            Command::Positivity { symbol } => ("positivity", Some(symbol.clone()), None, None),
            Command::Converge { symbol, r, orders } => ("converge", Some(symbol.clone()), Some(*r), Some(orders.clone())),
            Command::Verify => ("verify", None, None, None),
            Command::Demo => ("demo", None, None, None),
        };
        let mut tolerances = Tolerances::default();
        for (name, value) in &c.tol {
            tolerances.set(name, *value)?;
        }
        let config = Self {
            command,
            symbol,
            n: c.n,
            grid: c.grid,
            extent: c.extent,
            order: c.order,
            rot_order: c.rot_order,
            p: c.p.clone(),
            seed: c.seed,
            tolerances,
            r,
            orders,
            out: c.out.clone(),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> radmult::Result<()> {
        use radmult::Error::InvalidParameter;
        self.frequency_grid()?;
        if let Some(s) = &self.symbol {
            let phi = Symbol::parse(s, self.n)?;
            radmult::rotation::sphere_quadrature::<f64>(self.n, self.sphere_order(&phi))?;
        }
        if self.rot_order == 0 {
            return Err(InvalidParameter("--rot-order must be positive".into()));
        }
        if self.p.is_empty() {
            return Err(InvalidParameter("--p needs at least one exponent".into()));
        }
        if let Some(r) = self.r {
            if !(r >= 0.0) || !r.is_finite() {
                return Err(InvalidParameter(format!("--r must be a non-negative number, got {r}")));
            }
        }
        if let Some(orders) = &self.orders {
            if orders.is_empty() || orders.iter().any(|&m| m < 2) {
                return Err(InvalidParameter("--orders must list orders of at least 2".into()));
            }
        }
        if matches!(self.command, "verify" | "demo") && self.n != 2 {
            return Err(InvalidParameter(format!("`{}` runs in dimension 2", self.command)));
        }
        Ok(())
    }

    pub fn frequency_grid(&self) -> radmult::Result<FrequencyGrid> {
        FrequencyGrid::new(self.n, self.grid, self.extent)
    }

    pub fn symbol(&self) -> radmult::Result<Symbol> {
        Symbol::parse(self.symbol.as_deref().expect("symbol present for this command"), self.n)
    }

    pub fn sphere_order(&self, phi: &Symbol) -> usize {
        self.order.unwrap_or_else(|| default_sphere_order(phi))
    }
}
