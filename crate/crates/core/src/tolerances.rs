//! Named thresholds shared by the library, the verification suite and the
//! command line. Every value can be overridden per run through
//! [`Tolerances::set`].

use serde::Serialize;

use crate::error::{Error, Result};

/// Default sphere quadrature order for smooth symbols.
pub const SMOOTH_SPHERE_ORDER: usize = 256;
/// Default sphere quadrature order for symbols with jumps.
pub const INDICATOR_SPHERE_ORDER: usize = 4096;
/// Order of the reference rule used as a convergence oracle.
pub const ORACLE_SPHERE_ORDER: usize = 4096;

/// Random restarts of the power method (the deterministic plane-wave start
/// comes on top of these).
pub const POWER_RESTARTS: usize = 8;
pub const POWER_MAX_ITERS: usize = 200;
/// Stop once an iteration improves the estimate by less than this fraction.
pub const POWER_REL_GAIN: f64 = 1e-9;

/// A symbol counts as radial when its deviation from its own spherical mean
/// stays below this bound.
pub const RADIAL: f64 = 1e-8;
/// Kernel positivity threshold.
pub const POSITIVITY: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    pub radial: f64,
    pub positivity: f64,
    pub idempotence_smooth: f64,
    pub idempotence_indicator: f64,
    pub fixed_point: f64,
    pub radiality: f64,
    pub annihilation: f64,
    pub contraction_sup: f64,
    pub kernel_relative: f64,
    pub kernel_at_origin: f64,
    pub estimate_relative: f64,
    pub conjugation: f64,
    pub average_exact: f64,
    pub average_interpolated: f64,
    pub convergence_final: f64,
    pub box_oracle: f64,
    pub power_sanity: f64,
    pub round_trip: f64,
    pub vector_probe: f64,
    pub nonnegative_output: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            radial: RADIAL,
            positivity: POSITIVITY,
            idempotence_smooth: 1e-10,
            idempotence_indicator: 1e-3,
            fixed_point: 1e-12,
            radiality: 1e-12,
            annihilation: 1e-14,
            contraction_sup: 1e-12,
            kernel_relative: 1e-6,
            kernel_at_origin: 1e-6,
            estimate_relative: 1e-9,
            conjugation: 1e-12,
            average_exact: 1e-12,
            average_interpolated: 1e-3,
            convergence_final: 1e-10,
            box_oracle: 5e-3,
            power_sanity: 1e-6,
            round_trip: 1e-12,
            vector_probe: 1e-9,
            nonnegative_output: 1e-10,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 20] = [
        "radial",
        "positivity",
        "idempotence_smooth",
        "idempotence_indicator",
        "fixed_point",
        "radiality",
        "annihilation",
        "contraction_sup",
        "kernel_relative",
        "kernel_at_origin",
        "estimate_relative",
        "conjugation",
        "average_exact",
        "average_interpolated",
        "convergence_final",
        "box_oracle",
        "power_sanity",
        "round_trip",
        "vector_probe",
        "nonnegative_output",
    ];

    fn slot(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "radial" => &mut self.radial,
            "positivity" => &mut self.positivity,
            "idempotence_smooth" => &mut self.idempotence_smooth,
            "idempotence_indicator" => &mut self.idempotence_indicator,
            "fixed_point" => &mut self.fixed_point,
            "radiality" => &mut self.radiality,
            "annihilation" => &mut self.annihilation,
            "contraction_sup" => &mut self.contraction_sup,
            "kernel_relative" => &mut self.kernel_relative,
            "kernel_at_origin" => &mut self.kernel_at_origin,
            "estimate_relative" => &mut self.estimate_relative,
            "conjugation" => &mut self.conjugation,
            "average_exact" => &mut self.average_exact,
            "average_interpolated" => &mut self.average_interpolated,
            "convergence_final" => &mut self.convergence_final,
            "box_oracle" => &mut self.box_oracle,
            "power_sanity" => &mut self.power_sanity,
            "round_trip" => &mut self.round_trip,
            "vector_probe" => &mut self.vector_probe,
            "nonnegative_output" => &mut self.nonnegative_output,
            _ => return None,
        })
    }

    /// Overrides one named threshold.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::InvalidParameter(format!("tolerance `{name}` must be a non-negative number")));
        }
        let slot = self
            .slot(name)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown tolerance `{name}`")))?;
        *slot = value;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_is_settable() {
        let mut t = Tolerances::default();
        for name in Tolerances::NAMES {
            t.set(name, 0.5).unwrap();
        }
        assert_eq!(t.radial, 0.5);
        assert_eq!(t.nonnegative_output, 0.5);
        assert!(t.set("nope", 1.0).is_err());
        assert!(t.set("radial", -1.0).is_err());
    }
}
