//! Run configuration, JSON reports and the drivers behind the command-line
//! tool: the acceptance checks, per-map verification, the variety explorer
//! and the fiber tracer.

mod acceptance;
mod commands;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fibergeo::{NewtonConfig, CURVATURE_TOL, FD_STEP, MAX_STEP, NEWTON_TOL};
use crate::morphisms::DEFAULT_SEED;

pub use acceptance::{
    ac10_odd_composite, ac1_exact_identities, ac2_printed_gradient, ac3_determinant,
    ac4_critical_set, ac5_pullback, ac6_minimality, ac7_duality, ac8_global_definedness,
    ac9_radial_invariance, acceptance_checks, printed_gradient_dual, printed_gradient_sphere,
    printed_quadric_poly, report_all, AC6_GRID, TORUS_MIN_CURVATURE,
};
pub use commands::{trace_report, variety_report, verify_report, TraceOutcome, VerifyMode};

/// Environment variable that overrides [`RunConfig::seed`].
pub const SEED_ENV: &str = "MINIMORPH_SEED";
pub const REPORT_SCHEMA: u32 = 1;
pub const ZERO_TOL: f64 = 1e-10;
pub const DEFAULT_H: f64 = 0.02;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub newton_tol: f64,
    pub zero_tol: f64,
    pub curvature_tol: f64,
    /// Grid step for traced patches.
    pub h: f64,
    /// Finite-difference step of the curvature estimator.
    pub fd_h: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    /// Adds wall-clock timings, which makes reports non-reproducible.
    #[serde(default)]
    pub record_timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: DEFAULT_SEED,
            newton_tol: NEWTON_TOL,
            zero_tol: ZERO_TOL,
            curvature_tol: CURVATURE_TOL,
            h: DEFAULT_H,
            fd_h: FD_STEP,
            out: None,
            record_timing: false,
        }
    }
}

impl RunConfig {
    /// Applies `MINIMORPH_SEED` when it is set.
    pub fn with_env_seed(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(SEED_ENV) {
            self.seed = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{SEED_ENV} must be a u64, got `{v}`")))?;
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("newton_tol", self.newton_tol),
            ("zero_tol", self.zero_tol),
            ("curvature_tol", self.curvature_tol),
            ("h", self.h),
            ("fd_h", self.fd_h),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if self.h > MAX_STEP {
            return Err(Error::InvalidArgument(format!(
                "h must not exceed {MAX_STEP}, got {}",
                self.h
            )));
        }
        Ok(())
    }

    pub fn newton(&self) -> NewtonConfig {
        NewtonConfig {
            tol: self.newton_tol,
            ..NewtonConfig::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    /// The identity or property being checked.
    pub identity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub residuals: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Check {
    pub fn new(name: impl Into<String>, identity: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            verdict: Verdict::Skipped,
            identity: identity.into(),
            tolerance: None,
            residuals: BTreeMap::new(),
            details: serde_json::Value::Null,
            elapsed_ms: None,
        }
    }

    pub fn tol(mut self, t: f64) -> Self {
        self.tolerance = Some(t);
        self
    }

    pub fn residual(mut self, key: impl Into<String>, v: f64) -> Self {
        self.residuals.insert(key.into(), v);
        self
    }

    pub fn details(mut self, v: serde_json::Value) -> Self {
        self.details = v;
        self
    }

    pub fn verdict(mut self, ok: bool) -> Self {
        self.verdict = Verdict::from_bool(ok);
        self
    }

    pub fn skipped(mut self, why: impl Into<String>) -> Self {
        self.verdict = Verdict::Skipped;
        self.details = serde_json::json!({ "note": why.into() });
        self
    }

    /// One-line summary, e.g. `AC1 exact-identities: pass (tol 0)`.
    pub fn line(&self) -> String {
        let mut s = format!("{}: {}", self.name, self.verdict);
        if let Some(t) = self.tolerance {
            s.push_str(&format!(" (tol {t:e})"));
        }
        let worst = self
            .residuals
            .iter()
            .map(|(k, v)| format!("{k}={v:.3e}"))
            .collect::<Vec<_>>();
        if !worst.is_empty() {
            s.push_str(" [");
            s.push_str(&worst.join(", "));
            s.push(']');
        }
        s
    }
}

/// Runs `f`, turning an error into a failed check and recording the elapsed
/// time when asked.
pub(crate) fn run_check(
    cfg: &RunConfig,
    name: &str,
    identity: &str,
    f: impl FnOnce() -> Result<Check>,
) -> Check {
    let t0 = Instant::now();
    let mut c = f().unwrap_or_else(|e| {
        Check::new(name, identity)
            .verdict(false)
            .details(serde_json::json!({ "error": e.to_string() }))
    });
    if cfg.record_timing {
        c.elapsed_ms = Some(t0.elapsed().as_secs_f64() * 1e3);
    }
    c
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub all_pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub version: String,
    pub command: String,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub data: serde_json::Value,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: &RunConfig, checks: Vec<Check>) -> Self {
        let count = |v| checks.iter().filter(|c| c.verdict == v).count();
        let summary = Summary {
            passed: count(Verdict::Pass),
            failed: count(Verdict::Fail),
            skipped: count(Verdict::Skipped),
            all_pass: count(Verdict::Fail) == 0,
        };
        Report {
            schema: REPORT_SCHEMA,
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            config: config.clone(),
            checks,
            data: serde_json::Value::Null,
            summary,
            elapsed_ms: None,
        }
    }

    pub fn with_data(mut self, data: serde_json::Value) -> Self {
        self.data = data;
        self
    }

    /// True iff no non-skipped check failed.
    pub fn all_pass(&self) -> bool {
        self.summary.all_pass
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn write(&self, path: &std::path::Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}
