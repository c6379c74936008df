use minimorph::fibergeo::{
    annotate_curvature, compactness_diagnostic, convergence_study, curvature_report,
    mean_curvature, project_to_fiber, trace_patch, FiberProblem, LevelSet, NewtonConfig,
    TorusControl, CURVATURE_TOL, FD_STEP,
};
use minimorph::morphisms::lookup;
use num_complex::Complex64;

/// Mean-curvature norm of `{x1 = a, x2^2 + x3^2 = c}` in S^4, from the
/// closed form for a product of circles of radii r1, r2 with r1^2 + r2^2 = 1 - a^2.
fn torus_mean_curvature(a: f64, c: f64) -> f64 {
    let r1 = c.sqrt();
    let r2 = (1.0 - a * a - c).sqrt();
    let f = |r: f64| r - 1.0 / (2.0 * r);
    (a * a + f(r1).powi(2) + f(r2).powi(2)).sqrt()
}

fn problem(name: &str) -> FiberProblem {
    FiberProblem::new(lookup(name).unwrap(), Complex64::new(0.0, 5.0)).unwrap()
}

#[test]
fn torus_oracle_sanity() {
    // Clifford torus is minimal
    assert!(torus_mean_curvature(0.0, 0.5).abs() < 1e-15);
    assert!((torus_mean_curvature(0.5, 0.375) - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
}

#[test]
fn torus_estimate_matches_closed_form() {
    for c in [0.2, 0.375, 0.6] {
        let t = TorusControl::new(0.5, c).unwrap();
        let s = project_to_fiber(&t, &t.base_point()).unwrap();
        let (_, hn) = mean_curvature(&t, &s, FD_STEP).unwrap();
        let want = torus_mean_curvature(0.5, c);
        assert!((hn - want).abs() < 1e-4, "c = {c}: {hn} vs {want}");
        assert!(hn > 0.1);
    }
}

#[test]
fn torus_error_shrinks_with_step() {
    let t = TorusControl::new(0.5, 0.375).unwrap();
    let s = project_to_fiber(&t, &t.base_point()).unwrap();
    let want = torus_mean_curvature(0.5, 0.375);
    let study = convergence_study(&t, &s, 0.04, 3).unwrap();
    let errs: Vec<f64> = study.norms.iter().map(|h| (h - want).abs()).collect();
    assert!(errs[1] < errs[0] && errs[2] < errs[1], "{errs:?}");
    // at least first order
    assert!(study.observed_orders[0] > 0.9, "{study:?}");
}

fn full_patch(name: &str) {
    let p = problem(name);
    let cfg = NewtonConfig::default();
    let base = project_to_fiber(&p, &p.default_seed()).unwrap();
    let mut patch = trace_patch(&p, &base, (21, 21), 0.02, &cfg).unwrap();
    assert!(patch.is_complete(), "{:?}", patch.truncated);
    assert!(patch.max_residual() <= 1e-12);
    assert!(patch.max_neighbor_distance <= 0.04);
    assert!(patch.min_frame_overlap >= 0.9);
    for n in &patch.nodes {
        let x = &n.sample.point;
        assert!(p.fiber_equation_residual(x).unwrap() <= 1e-10);
        assert!(n.sample.min_singular_value >= 1e-8);
        assert!(p.residual(x).unwrap()[2].abs() <= 1e-12);
    }
    annotate_curvature(&p, &mut patch, FD_STEP, &cfg);
    let r = curvature_report(&patch, CURVATURE_TOL);
    assert!(r.verdict, "{r:?}");
    let c = compactness_diagnostic(&patch);
    if name.starts_with("s4") {
        assert_eq!(c.verdict, "bounded");
        assert!(c.diameter <= 2.0);
        assert!(patch
            .nodes
            .iter()
            .all(|n| n.sample.point.iter().all(|v| v.abs() <= 1.0)));
    } else {
        assert_eq!(c.verdict, "unbounded-diagnostic");
        assert!(patch
            .nodes
            .iter()
            .all(|n| (n.sample.point[3] - n.sample.point[4]).abs() > 0.0));
    }
}

#[test]
fn s4_fiber_patch_is_minimal() {
    full_patch("s4-quadric");
}

#[test]
fn h4_fiber_patch_is_minimal() {
    full_patch("h4-quadric");
}

#[test]
fn h4_rays_grow_without_hitting_a_boundary() {
    let p = problem("h4-quadric");
    let cfg = NewtonConfig::default();
    let base = project_to_fiber(&p, &p.default_seed()).unwrap();
    let patch = trace_patch(&p, &base, (101, 1), 0.05, &cfg).unwrap();
    assert!(patch.is_complete(), "{:?}", patch.truncated);
    let c = compactness_diagnostic(&patch);
    assert_eq!(c.rays.len(), 2);
    for r in &c.rays {
        assert_eq!(r.norms.len(), 51);
    }
    println!("{c:?}");
}
