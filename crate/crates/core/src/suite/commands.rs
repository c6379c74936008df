use std::path::Path;

use num_complex::Complex64;
use serde_json::json;

use super::{run_check, Check, Report, RunConfig};
use crate::error::Result;
use crate::fibergeo::{
    annotate_curvature, compactness_diagnostic, curvature_report, project_to_fiber_with,
    trace_patch, write_patch_files, FiberProblem, FiberSample, PatchFiles, SurfacePatch,
    MIN_SINGULAR_VALUE,
};
use crate::fields::check_radial_invariance;
use crate::morphisms::{
    certify_exact, certify_numeric, check_exact_agreement, lookup, pullback_check,
    sample_domain_points, AmbientKind, CERT_SAMPLES, CERT_TOL, PULLBACK_SAMPLES, PULLBACK_TOL,
};
use crate::polyexact::{criticality_det, criticality_det_product, variety_point, Branch, GaussRat};

const AGREEMENT_SAMPLES: usize = 50;
const RADIAL_SAMPLES: usize = 100;
const RADIAL_SCALES: [f64; 3] = [0.5, 2.0, 7.3];
/// Random seeds tried after the canonical one when projecting onto a fiber.
const EXTRA_SEEDS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exact,
    Numeric,
}

/// Identity checks for one catalog entry. Exact mode needs a rational form
/// and fails with `ExactModeUnavailable` otherwise.
pub fn verify_report(name: &str, mode: VerifyMode, cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let spec = lookup(name)?;
    let mut checks = Vec::new();
    match mode {
        VerifyMode::Exact => {
            let cert = certify_exact(&spec)?;
            checks.push(
                Check::new(
                    "exact tension and conformality",
                    "quotient-rule numerators of tau(N/D) and kappa(N/D, N/D) are zero polynomials",
                )
                .tol(0.0)
                .residual(
                    "tension numerator terms",
                    cert.tension_numerator_terms as f64,
                )
                .residual(
                    "conformality numerator terms",
                    cert.conformality_numerator_terms as f64,
                )
                .verdict(cert.pass),
            );
            checks.push(run_check(
                cfg,
                "exact form agreement",
                "the evaluated map equals N/D",
                || {
                    let d = check_exact_agreement(&spec, AGREEMENT_SAMPLES, cfg.seed)?;
                    Ok(
                        Check::new("exact form agreement", "the evaluated map equals N/D")
                            .tol(cfg.zero_tol)
                            .residual("max relative difference", d)
                            .verdict(d <= cfg.zero_tol),
                    )
                },
            ));
        }
        VerifyMode::Numeric => {
            checks.push(run_check(
                cfg,
                "numeric tension and conformality",
                "relative tau and kappa vanish at random domain points",
                || {
                    let r = certify_numeric(&spec, CERT_SAMPLES, CERT_TOL, cfg.seed)?;
                    Ok(Check::new(
                        "numeric tension and conformality",
                        "relative tau and kappa vanish at random domain points",
                    )
                    .tol(CERT_TOL)
                    .residual("max relative tau", r.max_tension)
                    .residual("max relative kappa", r.max_conformality)
                    .verdict(r.pass))
                },
            ));
            checks.push(run_check(
                cfg,
                "pullback",
                "tau(h o phi) = 0 for harmonic test functions h",
                || {
                    let r = pullback_check(&spec, PULLBACK_SAMPLES, PULLBACK_TOL, cfg.seed)?;
                    let mut c =
                        Check::new("pullback", "tau(h o phi) = 0 for harmonic test functions h")
                            .tol(PULLBACK_TOL)
                            .verdict(r.pass);
                    for (h, v) in r.max_tension {
                        c = c.residual(h, v);
                    }
                    Ok(c)
                },
            ));
            if spec.ambient().is_hypersurface() {
                checks.push(run_check(
                    cfg,
                    "radial invariance",
                    "Phi(s x) = Phi(x) for s > 0",
                    || {
                        let mut failures = 0;
                        for x in sample_domain_points(&spec, RADIAL_SAMPLES, cfg.seed)? {
                            if !check_radial_invariance(spec.field(), &x, &RADIAL_SCALES)? {
                                failures += 1;
                            }
                        }
                        Ok(
                            Check::new("radial invariance", "Phi(s x) = Phi(x) for s > 0")
                                .tol(crate::fields::ZERO_TOL)
                                .residual("failures", failures as f64)
                                .verdict(failures == 0),
                        )
                    },
                ));
            }
        }
    }
    let mode = match mode {
        VerifyMode::Exact => "exact",
        VerifyMode::Numeric => "numeric",
    };
    Ok(Report::new(format!("verify {name} --{mode}"), cfg, checks)
        .with_data(json!({ "mode": mode, "spec": spec.summary() })))
}

/// The quintuple over `(b1, b2)` with its constraint residuals, regularity
/// flag and criticality determinant.
pub fn variety_report(
    b1: &GaussRat,
    b2: &GaussRat,
    branch: Branch,
    cfg: &RunConfig,
) -> Result<Report> {
    let q = variety_point(b1, b2, branch)?;
    let res = q.residuals();
    let det = criticality_det(&q);
    let product = criticality_det_product(&q);
    let on_variety = res.iter().all(GaussRat::is_zero);
    let checks = vec![
        Check::new(
            "constraints",
            "a1^2 + b1^2 + b2^2 = 0, a1 a2 = -b2^2, a1 b3 = b1 b2",
        )
        .tol(0.0)
        .residual(
            "nonzero residuals",
            res.iter().filter(|r| !r.is_zero()).count() as f64,
        )
        .verdict(on_variety),
        Check::new(
            "determinant",
            "det [[2a1,b1,b2],[a1,2b1,b2],[a1,b1,2b2]] = 4 a1 b1 b2",
        )
        .tol(0.0)
        .verdict(det == product),
    ];
    let sign = match branch {
        Branch::Plus => "+",
        Branch::Minus => "-",
    };
    Ok(
        Report::new(format!("variety {b1} {b2} {sign}"), cfg, checks).with_data(json!({
            "quintuple": {
                "a1": q.a1.to_string(),
                "a2": q.a2.to_string(),
                "b1": q.b1.to_string(),
                "b2": q.b2.to_string(),
                "b3": q.b3.to_string(),
            },
            "residuals": res.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "regular": q.is_regular(),
            "determinant": det.to_string(),
        })),
    )
}

#[derive(Clone, Debug)]
pub struct TraceOutcome {
    pub report: Report,
    pub patch: Option<SurfacePatch>,
    pub files: Option<PatchFiles>,
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Projects onto `Phi = alpha`, traces a `grid` patch with step `cfg.h`,
/// annotates mean curvature and writes PLY/CSV/JSON into `out` when given.
/// The canonical seed is tried first, then random domain points; every
/// failed seed is listed in the report.
pub fn trace_report(
    name: &str,
    alpha: Complex64,
    grid: (usize, usize),
    out: Option<&Path>,
    cfg: &RunConfig,
) -> Result<TraceOutcome> {
    cfg.validate()?;
    let problem = FiberProblem::new(lookup(name)?, alpha)?;
    let newton = cfg.newton();
    let mut seeds = vec![problem.default_seed()];
    seeds.extend(sample_domain_points(problem.spec(), EXTRA_SEEDS, cfg.seed)?);
    let mut attempts = Vec::new();
    let mut base: Option<FiberSample> = None;
    for s in &seeds {
        match project_to_fiber_with(&problem, s, &newton) {
            Ok(sample) => {
                attempts.push(json!({ "seed": s, "outcome": "converged" }));
                base = Some(sample);
                break;
            }
            Err(e) => attempts.push(json!({ "seed": s, "outcome": e.to_string() })),
        }
    }
    let command = format!(
        "trace {name} --alpha {}{:+}i --grid {}x{} --h {}",
        alpha.re, alpha.im, grid.0, grid.1, cfg.h
    );
    let Some(base) = base else {
        let c = Check::new(
            "projection",
            "Gauss-Newton reaches Phi = alpha on the hypersurface",
        )
        .verdict(false)
        .details(json!({
            "note": "no seed converged; alpha is possibly not attained",
        }));
        let report = Report::new(command, cfg, vec![c]).with_data(json!({ "seeds": attempts }));
        return Ok(TraceOutcome {
            report,
            patch: None,
            files: None,
        });
    };

    let mut patch = trace_patch(&problem, &base, grid, cfg.h, &newton)?;
    annotate_curvature(&problem, &mut patch, cfg.fd_h, &newton);
    let curvature = curvature_report(&patch, cfg.curvature_tol);
    let compact = compactness_diagnostic(&patch);
    let min_sv = patch
        .nodes
        .iter()
        .map(|n| n.sample.min_singular_value)
        .fold(f64::INFINITY, f64::min);
    let fiber_eq = patch
        .nodes
        .iter()
        .filter_map(|n| problem.fiber_equation_residual(&n.sample.point))
        .fold(0.0, f64::max);

    let mut checks = vec![
        Check::new(
            "projection",
            "Gauss-Newton reaches Phi = alpha on the hypersurface",
        )
        .tol(cfg.newton_tol)
        .residual("max residual", patch.max_residual())
        .verdict(patch.max_residual() <= cfg.newton_tol),
        Check::new("patch complete", "every grid node was reached")
            .residual("missing nodes", (grid.0 * grid.1 - patch.len()) as f64)
            .verdict(patch.is_complete()),
        Check::new(
            "regularity",
            "the residual Jacobian has full rank at every node",
        )
        .tol(MIN_SINGULAR_VALUE)
        .residual("min singular value", min_sv)
        .verdict(min_sv >= MIN_SINGULAR_VALUE),
        Check::new("fiber equation", "P(x) - alpha Q(x) = 0 at every node")
            .tol(cfg.zero_tol)
            .residual("max |P - alpha Q|", fiber_eq)
            .verdict(fiber_eq <= cfg.zero_tol),
        Check::new(
            "minimality",
            "mean curvature vanishes under the second-difference estimator",
        )
        .tol(cfg.curvature_tol)
        .residual("max |H|", curvature.max)
        .residual("mean |H|", curvature.mean)
        .residual("estimator failures", curvature.failures as f64)
        .verdict(curvature.verdict),
    ];
    let compact_check = Check::new("compactness", "the fiber stays on a bounded region");
    checks.push(match problem.spec().ambient().kind {
        AmbientKind::Sphere => compact_check
            .residual("diameter", compact.diameter)
            .residual("max constraint violation", compact.max_constraint_violation)
            .verdict(compact.verdict == "bounded"),
        _ => compact_check.skipped(format!(
            "diagnostic only: completeness is not certified numerically ({})",
            compact.verdict
        )),
    });

    let files = match out {
        Some(dir) => Some(write_patch_files(&patch, dir, &file_stem(name))?),
        None => None,
    };
    let report = Report::new(command, cfg, checks).with_data(json!({
        "alpha": [alpha.re, alpha.im],
        "grid": [grid.0, grid.1],
        "seeds": attempts,
        "curvature": curvature,
        "compactness": compact,
        "files": files,
    }));
    Ok(TraceOutcome {
        report,
        patch: Some(patch),
        files,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::suite::Verdict;

    #[test]
    fn verify_modes() {
        let cfg = RunConfig::default();
        let r = verify_report("s4-quadric", VerifyMode::Exact, &cfg).unwrap();
        assert!(r.all_pass(), "{:?}", r.checks);
        assert!(matches!(
            verify_report("phi-odd:d=3,n=2", VerifyMode::Exact, &cfg),
            Err(Error::ExactModeUnavailable(_))
        ));
        let r = verify_report("hopf-dual", VerifyMode::Numeric, &cfg).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.checks.len(), 3);
        assert!(matches!(
            verify_report("nope", VerifyMode::Numeric, &cfg),
            Err(Error::UnknownCatalogEntry(_))
        ));
    }

    #[test]
    fn variety_examples() {
        let cfg = RunConfig::default();
        let g = GaussRat::from_ints;
        let r = variety_report(&g(3, 0), &g(4, 0), Branch::Plus, &cfg).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.data["determinant"], "240i");
        assert_eq!(r.data["regular"], true);
        let r = variety_report(&g(5, 0), &g(12, 0), Branch::Plus, &cfg).unwrap();
        assert_eq!(r.data["quintuple"]["a1"], "13i");
        assert!(matches!(
            variety_report(&g(1, 0), &g(0, 1), Branch::Plus, &cfg),
            Err(Error::DegenerateParameters)
        ));
    }

    #[test]
    fn trace_small_patch() {
        let cfg = RunConfig::default();
        let dir = tempfile::tempdir().unwrap();
        let t = trace_report(
            "s4-quadric",
            Complex64::new(0.0, 5.0),
            (5, 5),
            Some(dir.path()),
            &cfg,
        )
        .unwrap();
        assert!(t.report.all_pass(), "{:?}", t.report.checks);
        assert!(t.files.unwrap().ply.ends_with("s4-quadric.ply"));
        let t = trace_report("h4-quadric", Complex64::new(0.0, 5.0), (3, 3), None, &cfg).unwrap();
        let c = t
            .report
            .checks
            .iter()
            .find(|c| c.name == "compactness")
            .unwrap();
        assert_eq!(c.verdict, Verdict::Skipped);
        assert!(matches!(
            trace_report("s4-quadric", Complex64::new(0.0, 0.0), (3, 3), None, &cfg),
            Err(Error::AlphaZero)
        ));
    }
}
