use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    align_frame, mean_curvature_with, project_to_fiber_with, FiberSample, Frame, LevelSet,
    NewtonConfig,
};
use crate::error::{Error, Result};

/// A projected node with its frame overlap and distance to its parent node.
type StepResult = Result<(FiberSample, f64, f64)>;

pub const MAX_STEP: f64 = 0.1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridNode {
    pub i: usize,
    pub j: usize,
    pub sample: FiberSample,
}

/// A continuation grid around a base sample. Node `(i, j)` was reached from
/// the centre by steps of length `h` along transported tangent frames.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfacePatch {
    pub label: String,
    pub alpha: Option<[f64; 2]>,
    pub seed_point: Vec<f64>,
    pub lorentzian: bool,
    pub h: f64,
    pub steps: (usize, usize),
    pub center: (usize, usize),
    pub nodes: Vec<GridNode>,
    /// Nodes that could not be reached, with the reason.
    pub truncated: Vec<(usize, usize, String)>,
    pub max_neighbor_distance: f64,
    pub min_frame_overlap: f64,
    pub curvature_step: Option<f64>,
    pub curvature_failures: usize,
}

impl SurfacePatch {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.truncated.is_empty() && self.nodes.len() == self.steps.0 * self.steps.1
    }

    pub fn node(&self, i: usize, j: usize) -> Option<&FiberSample> {
        self.nodes
            .iter()
            .find(|n| n.i == i && n.j == j)
            .map(|n| &n.sample)
    }

    pub fn max_residual(&self) -> f64 {
        self.nodes
            .iter()
            .map(|n| n.sample.residual_norm)
            .fold(0.0, f64::max)
    }

    /// An empty patch, useful as a placeholder when no seed converged.
    pub fn empty(label: impl Into<String>, lorentzian: bool) -> Self {
        SurfacePatch {
            label: label.into(),
            alpha: None,
            seed_point: Vec::new(),
            lorentzian,
            h: 0.0,
            steps: (0, 0),
            center: (0, 0),
            nodes: Vec::new(),
            truncated: Vec::new(),
            max_neighbor_distance: 0.0,
            min_frame_overlap: 1.0,
            curvature_step: None,
            curvature_failures: 0,
        }
    }
}

fn frame_of(s: &FiberSample) -> Frame {
    Frame {
        tangent: s.tangent.clone(),
        normal: s.normal.clone(),
        min_singular_value: s.min_singular_value,
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Grows a `steps.0 x steps.1` grid outward from `base` (placed at the
/// centre) one Manhattan-distance front at a time. Each node is predicted
/// from its neighbour one step closer to the centre, corrected by
/// Gauss-Newton, and given a frame aligned with that neighbour's. Nodes of a
/// front are computed in parallel.
pub fn trace_patch(
    level: &dyn LevelSet,
    base: &FiberSample,
    steps: (usize, usize),
    h: f64,
    cfg: &NewtonConfig,
) -> Result<SurfacePatch> {
    if !(h > 0.0 && h <= MAX_STEP) {
        return Err(Error::InvalidArgument(format!(
            "step h must lie in (0, {MAX_STEP}], got {h}"
        )));
    }
    if steps.0 == 0 || steps.1 == 0 {
        return Err(Error::InvalidArgument(
            "grid must have at least one node per direction".into(),
        ));
    }
    let sig = level.signature();
    let (ni, nj) = steps;
    let center = (ni / 2, nj / 2);
    let idx = |i: usize, j: usize| i * nj + j;
    let mut grid: Vec<Option<FiberSample>> = vec![None; ni * nj];
    grid[idx(center.0, center.1)] = Some(base.clone());
    let mut truncated = Vec::new();
    let mut max_dist = 0.0f64;
    let mut min_overlap = 1.0f64;

    let max_front = center.0.max(ni - 1 - center.0) + center.1.max(nj - 1 - center.1);
    for front in 1..=max_front {
        let mut members = Vec::new();
        for i in 0..ni {
            for j in 0..nj {
                let (a, b) = (i as i64 - center.0 as i64, j as i64 - center.1 as i64);
                if (a.abs() + b.abs()) as usize == front {
                    members.push((i, j, a, b));
                }
            }
        }
        let results: Vec<(usize, usize, StepResult)> = members
            .par_iter()
            .map(|&(i, j, a, b)| {
                // step along the first direction while it dominates
                let (pi, pj, dir, sign) = if a != 0 && a.abs() >= b.abs() {
                    ((i as i64 - a.signum()) as usize, j, 0, a.signum() as f64)
                } else {
                    (i, (j as i64 - b.signum()) as usize, 1, b.signum() as f64)
                };
                let out = match &grid[idx(pi, pj)] {
                    None => Err(Error::InvalidArgument(format!(
                        "predecessor ({pi}, {pj}) missing"
                    ))),
                    Some(prev) => {
                        let t = &prev.tangent[dir];
                        let pred: Vec<f64> = prev
                            .point
                            .iter()
                            .zip(t)
                            .map(|(x, v)| x + sign * h * v)
                            .collect();
                        project_to_fiber_with(level, &pred, cfg).map(|s| {
                            let (f, overlap) = align_frame(&frame_of(&s), &prev.tangent, &sig);
                            let dist = distance(&s.point, &prev.point);
                            (
                                FiberSample {
                                    tangent: f.tangent,
                                    ..s
                                },
                                overlap,
                                dist,
                            )
                        })
                    }
                };
                (i, j, out)
            })
            .collect();
        for (i, j, r) in results {
            match r {
                Ok((s, overlap, dist)) => {
                    min_overlap = min_overlap.min(overlap);
                    max_dist = max_dist.max(dist);
                    grid[idx(i, j)] = Some(s);
                }
                Err(e) => truncated.push((i, j, e.to_string())),
            }
        }
    }

    // distances between all adjacent pairs, not only predecessor links
    for i in 0..ni {
        for j in 0..nj {
            let Some(s) = &grid[idx(i, j)] else { continue };
            for (di, dj) in [(1, 0), (0, 1)] {
                if i + di < ni && j + dj < nj {
                    if let Some(t) = &grid[idx(i + di, j + dj)] {
                        max_dist = max_dist.max(distance(&s.point, &t.point));
                    }
                }
            }
        }
    }

    let nodes = grid
        .into_iter()
        .enumerate()
        .filter_map(|(k, s)| {
            s.map(|sample| GridNode {
                i: k / nj,
                j: k % nj,
                sample,
            })
        })
        .collect();
    Ok(SurfacePatch {
        label: level.label(),
        alpha: level.alpha().map(|a: Complex64| [a.re, a.im]),
        seed_point: base.point.clone(),
        lorentzian: sig.is_lorentzian(),
        h,
        steps,
        center,
        nodes,
        truncated,
        max_neighbor_distance: max_dist,
        min_frame_overlap: min_overlap,
        curvature_step: None,
        curvature_failures: 0,
    })
}

/// Fills in `mean_curvature_norm` at every node (in parallel).
pub fn annotate_curvature(
    level: &dyn LevelSet,
    patch: &mut SurfacePatch,
    fd_h: f64,
    cfg: &NewtonConfig,
) {
    let failures: usize = patch
        .nodes
        .par_iter_mut()
        .map(|n| match mean_curvature_with(level, &n.sample, fd_h, cfg) {
            Ok((_, hn)) => {
                n.sample.mean_curvature_norm = Some(hn);
                0
            }
            Err(_) => {
                n.sample.mean_curvature_norm = None;
                1
            }
        })
        .sum();
    patch.curvature_step = Some(fd_h);
    patch.curvature_failures = failures;
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub samples: usize,
    pub failures: usize,
    pub max: f64,
    pub mean: f64,
    pub step: Option<f64>,
    pub tol: f64,
    pub verdict: bool,
}

/// Summary of annotated curvatures; the verdict needs at least one sample,
/// no failures and `max <= tol`.
pub fn curvature_report(patch: &SurfacePatch, tol: f64) -> CurvatureReport {
    let vals: Vec<f64> = patch
        .nodes
        .iter()
        .filter_map(|n| n.sample.mean_curvature_norm)
        .collect();
    let max = vals.iter().copied().fold(0.0, f64::max);
    let mean = if vals.is_empty() {
        0.0
    } else {
        vals.iter().sum::<f64>() / vals.len() as f64
    };
    CurvatureReport {
        samples: vals.len(),
        failures: patch.curvature_failures,
        max,
        mean,
        step: patch.curvature_step,
        tol,
        verdict: !vals.is_empty() && patch.curvature_failures == 0 && max <= tol,
    }
}

/// Euclidean norms of the nodes along one axis ray from the centre.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RayGrowth {
    pub direction: (i64, i64),
    pub norms: Vec<f64>,
    pub monotone: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompactnessReport {
    pub samples: usize,
    /// "bounded", "unbounded-diagnostic" or "insufficient data".
    pub verdict: String,
    pub max_constraint_violation: f64,
    pub max_abs_coordinate: f64,
    pub diameter: f64,
    pub rays: Vec<RayGrowth>,
    pub note: String,
}

/// On the sphere: confirms `|x| = 1` and reports the diameter. On the
/// hyperboloid: reports coordinate growth along the four axis rays; this is
/// a diagnostic, not a completeness certificate.
pub fn compactness_diagnostic(patch: &SurfacePatch) -> CompactnessReport {
    let pts: Vec<&Vec<f64>> = patch.nodes.iter().map(|n| &n.sample.point).collect();
    if pts.is_empty() {
        return CompactnessReport {
            samples: 0,
            verdict: "insufficient data".into(),
            max_constraint_violation: 0.0,
            max_abs_coordinate: 0.0,
            diameter: 0.0,
            rays: Vec::new(),
            note: "no samples".into(),
        };
    }
    let lorentz = |x: &[f64]| {
        let n = x.len();
        x[..n - 1].iter().map(|v| v * v).sum::<f64>() - x[n - 1] * x[n - 1]
    };
    let euclid = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
    let violation = pts
        .iter()
        .map(|x| {
            if patch.lorentzian {
                (lorentz(x) + 1.0).abs()
            } else {
                (euclid(x) - 1.0).abs()
            }
        })
        .fold(0.0, f64::max);
    let max_abs = pts
        .iter()
        .flat_map(|x| x.iter())
        .map(|v| v.abs())
        .fold(0.0, f64::max);
    let mut diameter = 0.0f64;
    for (k, a) in pts.iter().enumerate() {
        for b in &pts[k + 1..] {
            diameter = diameter.max(distance(a, b));
        }
    }
    let rays: Vec<RayGrowth> = [(1, 0), (-1, 0), (0, 1), (0, -1)]
        .into_iter()
        .filter_map(|(di, dj)| {
            let mut norms = Vec::new();
            let (mut i, mut j) = (patch.center.0 as i64, patch.center.1 as i64);
            while let Some(s) = (i >= 0 && j >= 0)
                .then(|| patch.node(i as usize, j as usize))
                .flatten()
            {
                norms.push(euclid(&s.point).sqrt());
                i += di;
                j += dj;
            }
            (norms.len() > 1).then(|| {
                let monotone = norms.windows(2).all(|w| w[1] >= w[0])
                    || norms.windows(2).all(|w| w[1] <= w[0]);
                RayGrowth {
                    direction: (di, dj),
                    norms,
                    monotone,
                }
            })
        })
        .collect();
    let (verdict, note) = if patch.lorentzian {
        (
            "unbounded-diagnostic".to_string(),
            "coordinate growth along continuation rays is reported as a diagnostic only; completeness is not certified"
                .to_string(),
        )
    } else if violation <= 1e-10 && max_abs <= 1.0 + 1e-12 && diameter <= 2.0 + 1e-12 {
        (
            "bounded".to_string(),
            "all samples lie on the unit sphere".to_string(),
        )
    } else {
        (
            "fail".to_string(),
            "samples leave the unit sphere".to_string(),
        )
    };
    CompactnessReport {
        samples: pts.len(),
        verdict,
        max_constraint_violation: violation,
        max_abs_coordinate: max_abs,
        diameter,
        rays,
        note,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibergeo::{project_to_fiber, FiberProblem, TorusControl};
    use crate::morphisms::lookup;

    fn s4() -> FiberProblem {
        FiberProblem::new(lookup("s4-quadric").unwrap(), Complex64::new(0.0, 5.0)).unwrap()
    }

    #[test]
    fn step_range_enforced() {
        let p = s4();
        let base = project_to_fiber(&p, &p.default_seed()).unwrap();
        let cfg = NewtonConfig::default();
        assert!(trace_patch(&p, &base, (1, 1), 0.0, &cfg).is_err());
        assert!(trace_patch(&p, &base, (1, 1), 0.2, &cfg).is_err());
        let single = trace_patch(&p, &base, (1, 1), 0.05, &cfg).unwrap();
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn small_patch_is_complete_and_consistent() {
        let p = s4();
        let base = project_to_fiber(&p, &p.default_seed()).unwrap();
        let patch = trace_patch(&p, &base, (5, 5), 0.02, &NewtonConfig::default()).unwrap();
        assert!(patch.is_complete());
        assert!(patch.max_residual() <= 1e-12);
        assert!(patch.max_neighbor_distance <= 2.0 * 0.02);
        assert!(patch.min_frame_overlap >= 0.9);
        let c = compactness_diagnostic(&patch);
        assert_eq!(c.verdict, "bounded");
    }

    #[test]
    fn torus_patch_curvature_report_fails_minimality() {
        let t = TorusControl::new(0.5, 0.375).unwrap();
        let base = project_to_fiber(&t, &t.base_point()).unwrap();
        let cfg = NewtonConfig::default();
        let mut patch = trace_patch(&t, &base, (3, 3), 0.05, &cfg).unwrap();
        annotate_curvature(&t, &mut patch, 1e-3, &cfg);
        let r = curvature_report(&patch, 5e-4);
        assert_eq!(r.samples, 9);
        assert!(!r.verdict);
        assert!(r.max > 0.1);
    }

    #[test]
    fn empty_patch_has_insufficient_data() {
        let c = compactness_diagnostic(&SurfacePatch::empty("none", false));
        assert_eq!(c.samples, 0);
        assert_eq!(c.verdict, "insufficient data");
        assert!(!curvature_report(&SurfacePatch::empty("none", false), 1.0).verdict);
    }
}
