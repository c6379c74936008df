//! Fibers `Phi^{-1}(alpha)` of maps on S^4 and H^4 as numerically traced
//! surfaces: Gauss-Newton projection, tangent and normal frames, continuation
//! patches, mean curvature by second differences, and critical-set scans.

mod critical;
mod export;
mod patch;

pub use critical::{critical_scan, CriticalScanReport, KernelLine, CRITICAL_TOL, PLANE_TOL};
pub use export::{patch_to_csv, patch_to_json, patch_to_ply, write_patch_files, PatchFiles};
pub use patch::{
    annotate_curvature, compactness_diagnostic, curvature_report, trace_patch, CompactnessReport,
    CurvatureReport, GridNode, RayGrowth, SurfacePatch, MAX_STEP,
};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::MetricSignature;
use crate::morphisms::{AmbientKind, MorphismSpec};

pub const NEWTON_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 100;
pub const DAMPING: f64 = 0.5;
/// Smallest admissible singular value of the residual Jacobian.
pub const MIN_SINGULAR_VALUE: f64 = 1e-8;
pub const CURVATURE_TOL: f64 = 5e-4;
pub const FD_STEP: f64 = 1e-3;

/// A codimension-3 level set in R^n: two fiber equations plus the
/// hypersurface `<x, x>_G = +-1`. The metric `G` is that of the ambient.
pub trait LevelSet: Sync {
    fn dim(&self) -> usize;
    fn signature(&self) -> MetricSignature;
    /// `false` where the residual cannot be evaluated.
    fn admissible(&self, x: &[f64]) -> bool;
    fn residual(&self, x: &[f64]) -> Result<[f64; 3]>;
    /// Rows are the Euclidean gradients of the three residuals.
    fn jacobian(&self, x: &[f64]) -> Result<DMatrix<f64>>;
    fn label(&self) -> String;
    fn alpha(&self) -> Option<Complex64> {
        None
    }
    /// `|x|^2 = 1` (sphere) or `<x, x>_L = -1` (hyperboloid).
    fn compact(&self) -> bool {
        !self.signature().is_lorentzian()
    }
}

fn constraint(sig: &MetricSignature, x: &[f64]) -> f64 {
    let n2 = sig.inner(x, x);
    if sig.is_lorentzian() {
        n2 + 1.0
    } else {
        n2 - 1.0
    }
}

/// `Phi = alpha` on the hypersurface carrying `spec`.
#[derive(Clone, Debug)]
pub struct FiberProblem {
    spec: MorphismSpec,
    alpha: Complex64,
}

impl FiberProblem {
    pub fn new(spec: MorphismSpec, alpha: Complex64) -> Result<Self> {
        if alpha == Complex64::new(0.0, 0.0) {
            return Err(Error::AlphaZero);
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "alpha must be finite, got {alpha}"
            )));
        }
        let amb = spec.ambient();
        if !matches!(amb.kind, AmbientKind::Sphere | AmbientKind::Hyperbolic) || amb.dimension != 5
        {
            return Err(Error::InvalidArgument(format!(
                "fiber problems need a map on S^4 or H^4, `{}` lives on {amb}",
                spec.name()
            )));
        }
        Ok(FiberProblem { spec, alpha })
    }

    pub fn spec(&self) -> &MorphismSpec {
        &self.spec
    }

    /// `|num(x) - alpha den(x)|` from the exact form, when there is one.
    pub fn fiber_equation_residual(&self, x: &[f64]) -> Option<f64> {
        let r = self.spec.exact_form()?;
        Some((r.num().eval_f64(x) - self.alpha * r.den().eval_f64(x)).norm())
    }

    /// Canonical starting points: `(1,0,0,1,0)/sqrt 2` on the sphere and
    /// `(1,0,0,0,sqrt 2)` on the hyperboloid.
    pub fn default_seed(&self) -> Vec<f64> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        match self.spec.ambient().kind {
            AmbientKind::Hyperbolic => vec![1.0, 0.0, 0.0, 0.0, std::f64::consts::SQRT_2],
            _ => vec![r, 0.0, 0.0, r, 0.0],
        }
    }
}

impl LevelSet for FiberProblem {
    fn dim(&self) -> usize {
        5
    }

    fn signature(&self) -> MetricSignature {
        self.spec.signature()
    }

    fn admissible(&self, x: &[f64]) -> bool {
        self.spec.contains(x)
    }

    fn residual(&self, x: &[f64]) -> Result<[f64; 3]> {
        let v = self.spec.value(x)? - self.alpha;
        Ok([v.re, v.im, constraint(&self.signature(), x)])
    }

    fn jacobian(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        let j = self.spec.jet(x)?;
        let g = j.gradient();
        let sig = self.signature();
        Ok(DMatrix::from_fn(3, 5, |r, k| match r {
            0 => g[k].re,
            1 => g[k].im,
            _ => 2.0 * sig.weight(k) * x[k],
        }))
    }

    fn label(&self) -> String {
        self.spec.name().to_string()
    }

    fn alpha(&self) -> Option<Complex64> {
        Some(self.alpha)
    }
}

/// The torus `{x1 = a, x2^2 + x3^2 = c, |x| = 1}` in S^4: a surface with known,
/// non-zero mean curvature for checking the estimator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusControl {
    pub a: f64,
    pub c: f64,
}

impl TorusControl {
    pub fn new(a: f64, c: f64) -> Result<Self> {
        if !(c > 0.0 && c < 1.0 - a * a) {
            return Err(Error::InvalidArgument(format!(
                "need 0 < c < 1 - a^2, got a = {a}, c = {c}"
            )));
        }
        Ok(TorusControl { a, c })
    }

    /// The point at angle 0 on both circles.
    pub fn base_point(&self) -> Vec<f64> {
        vec![
            self.a,
            self.c.sqrt(),
            0.0,
            (1.0 - self.a * self.a - self.c).sqrt(),
            0.0,
        ]
    }
}

impl LevelSet for TorusControl {
    fn dim(&self) -> usize {
        5
    }

    fn signature(&self) -> MetricSignature {
        MetricSignature::euclidean(5)
    }

    fn admissible(&self, x: &[f64]) -> bool {
        x.iter().all(|v| v.is_finite())
    }

    fn residual(&self, x: &[f64]) -> Result<[f64; 3]> {
        Ok([
            x[0] - self.a,
            x[1] * x[1] + x[2] * x[2] - self.c,
            constraint(&self.signature(), x),
        ])
    }

    #[rustfmt::skip]
    fn jacobian(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        Ok(DMatrix::from_row_slice(3, 5, &[
            1.0, 0.0, 0.0, 0.0, 0.0,
            0.0, 2.0 * x[1], 2.0 * x[2], 0.0, 0.0,
            2.0 * x[0], 2.0 * x[1], 2.0 * x[2], 2.0 * x[3], 2.0 * x[4],
        ]))
    }

    fn label(&self) -> String {
        format!("torus-control:a={},c={}", self.a, self.c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NewtonConfig {
    pub tol: f64,
    pub max_iterations: usize,
    pub damping: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        NewtonConfig {
            tol: NEWTON_TOL,
            max_iterations: MAX_ITERATIONS,
            damping: DAMPING,
        }
    }
}

/// Tangent and normal pairs, orthonormal for the ambient metric; the normals
/// lie inside the hypersurface's tangent space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Frame {
    pub tangent: [Vec<f64>; 2],
    pub normal: [Vec<f64>; 2],
    pub min_singular_value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiberSample {
    pub point: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
    pub tangent: [Vec<f64>; 2],
    pub normal: [Vec<f64>; 2],
    pub min_singular_value: f64,
    pub mean_curvature_norm: Option<f64>,
}

fn norm3(r: &[f64; 3]) -> f64 {
    (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt()
}

/// Gauss-Newton with pseudoinverse steps from `seed`; returns the point, its
/// residual norm and the iteration count.
pub fn gauss_newton(
    level: &dyn LevelSet,
    seed: &[f64],
    cfg: &NewtonConfig,
) -> Result<(Vec<f64>, f64, usize)> {
    if seed.len() != level.dim() {
        return Err(Error::DimensionMismatch {
            expected: level.dim(),
            got: seed.len(),
        });
    }
    if seed.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("seed must be finite".into()));
    }
    let eval = |x: &[f64]| -> Option<f64> {
        if !level.admissible(x) {
            return None;
        }
        level
            .residual(x)
            .ok()
            .map(|r| norm3(&r))
            .filter(|v| v.is_finite())
    };
    let mut x = seed.to_vec();
    let mut r = level.residual(&x)?;
    let mut rn = norm3(&r);
    for it in 0..cfg.max_iterations {
        if rn <= cfg.tol {
            return Ok((x, rn, it));
        }
        let j = level.jacobian(&x)?;
        let pinv = j
            .pseudo_inverse(1e-14)
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let rv = nalgebra::DVector::from_row_slice(&r);
        let dx = pinv * rv;
        let mut t = 1.0;
        let mut accepted = None;
        while t > 1e-12 {
            let trial: Vec<f64> = x.iter().zip(dx.iter()).map(|(a, d)| a - t * d).collect();
            if let Some(n) = eval(&trial) {
                if n < rn || n <= cfg.tol {
                    accepted = Some((trial, n));
                    break;
                }
            }
            t *= cfg.damping;
        }
        let Some((nx, _)) = accepted else {
            return Err(Error::NoConvergence {
                iterations: it + 1,
                residual: rn,
            });
        };
        x = nx;
        r = level.residual(&x)?;
        rn = norm3(&r);
    }
    if rn <= cfg.tol {
        return Ok((x, rn, cfg.max_iterations));
    }
    Err(Error::NoConvergence {
        iterations: cfg.max_iterations,
        residual: rn,
    })
}

fn scaled_sub(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - s * y).collect()
}

fn g_normalize(v: &[f64], sig: &MetricSignature) -> Option<Vec<f64>> {
    let n2 = sig.inner(v, v);
    (n2 > 1e-24).then(|| v.iter().map(|x| x / n2.sqrt()).collect())
}

/// Picks `count` vectors from the coordinate axes, G-orthogonal to `basis`
/// (already G-orthonormal) and to each other, greedily by residual norm.
fn complete(
    basis: &[Vec<f64>],
    count: usize,
    sig: &MetricSignature,
    project: impl Fn(&[f64]) -> Vec<f64>,
) -> Option<Vec<Vec<f64>>> {
    let n = sig.dimension();
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(count);
    for _ in 0..count {
        let best = (0..n)
            .map(|k| {
                let mut v = vec![0.0; n];
                v[k] = 1.0;
                let mut v = project(&v);
                for b in basis.iter().chain(&out) {
                    v = scaled_sub(&v, sig.inner(&v, b), b);
                }
                // second pass for numerical orthogonality
                for b in basis.iter().chain(&out) {
                    v = scaled_sub(&v, sig.inner(&v, b), b);
                }
                let n2 = sig.inner(&v, &v);
                (n2, v)
            })
            .max_by(|a, b| a.0.total_cmp(&b.0))?;
        out.push(g_normalize(&best.1, sig)?);
    }
    Some(out)
}

/// Tangent pair spanning `ker J` and normal pair completing it inside the
/// hypersurface tangent space, both orthonormal for the ambient metric.
pub fn tangent_frame(level: &dyn LevelSet, x: &[f64]) -> Result<Frame> {
    let sig = level.signature();
    let j = level.jacobian(x)?;
    let svd = j.clone().svd(false, true);
    let smin = svd
        .singular_values
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if smin.is_nan() || smin < MIN_SINGULAR_VALUE {
        return Err(Error::RankDeficient(smin));
    }
    let vt = svd.v_t.expect("requested V^T");
    let rows: Vec<Vec<f64>> = (0..vt.nrows())
        .map(|i| vt.row(i).iter().copied().collect())
        .collect();
    // kernel of J: strip the (Euclidean-orthonormal) row space
    let strip_rows = |v: &[f64]| {
        let mut v = v.to_vec();
        for _ in 0..2 {
            for r in &rows {
                let c: f64 = v.iter().zip(r).map(|(a, b)| a * b).sum();
                v = scaled_sub(&v, c, r);
            }
        }
        v
    };
    let tangent = complete(&[], 2, &sig, strip_rows).ok_or(Error::RankDeficient(smin))?;
    let xx = sig.inner(x, x);
    let strip_position = |v: &[f64]| scaled_sub(v, sig.inner(v, x) / xx, x);
    let normal = complete(&tangent, 2, &sig, strip_position).ok_or(Error::RankDeficient(smin))?;
    let [t1, t2]: [Vec<f64>; 2] = tangent.try_into().expect("two tangents");
    let [n1, n2]: [Vec<f64>; 2] = normal.try_into().expect("two normals");
    Ok(Frame {
        tangent: [t1, t2],
        normal: [n1, n2],
        min_singular_value: smin,
    })
}

/// Re-expresses `frame`'s tangent plane in the basis closest to `reference`
/// (projected and re-orthonormalized); returns the aligned frame and the
/// smaller of the two overlaps.
pub fn align_frame(
    frame: &Frame,
    reference: &[Vec<f64>; 2],
    sig: &MetricSignature,
) -> (Frame, f64) {
    let [t1, t2] = &frame.tangent;
    let proj = |v: &[f64]| -> Vec<f64> {
        let (a, b) = (sig.inner(v, t1), sig.inner(v, t2));
        t1.iter().zip(t2).map(|(x, y)| a * x + b * y).collect()
    };
    let e1 = g_normalize(&proj(&reference[0]), sig).unwrap_or_else(|| t1.clone());
    let p2 = proj(&reference[1]);
    let e2 = scaled_sub(&p2, sig.inner(&p2, &e1), &e1);
    let e2 = g_normalize(&e2, sig).unwrap_or_else(|| {
        // fall back to the completion of e1 in the plane
        let c = scaled_sub(t2, sig.inner(t2, &e1), &e1);
        g_normalize(&c, sig).unwrap_or_else(|| t2.clone())
    });
    let overlap = sig
        .inner(&e1, &reference[0])
        .min(sig.inner(&e2, &reference[1]));
    (
        Frame {
            tangent: [e1, e2],
            normal: frame.normal.clone(),
            min_singular_value: frame.min_singular_value,
        },
        overlap,
    )
}

/// Projects `seed` onto the level set and attaches a frame. Fails with
/// `ConvergedToCritical` when the Jacobian at the limit is (nearly) singular.
pub fn project_to_fiber(level: &dyn LevelSet, seed: &[f64]) -> Result<FiberSample> {
    project_to_fiber_with(level, seed, &NewtonConfig::default())
}

pub fn project_to_fiber_with(
    level: &dyn LevelSet,
    seed: &[f64],
    cfg: &NewtonConfig,
) -> Result<FiberSample> {
    let (x, rn, iterations) = gauss_newton(level, seed, cfg)?;
    let frame = match tangent_frame(level, &x) {
        Ok(f) => f,
        Err(Error::RankDeficient(s)) => return Err(Error::ConvergedToCritical(s)),
        Err(e) => return Err(e),
    };
    Ok(FiberSample {
        point: x,
        residual_norm: rn,
        iterations,
        tangent: frame.tangent,
        normal: frame.normal,
        min_singular_value: frame.min_singular_value,
        mean_curvature_norm: None,
    })
}

/// Mean-curvature vector from second differences along the two tangent
/// directions, projected on the normal pair and averaged.
pub fn mean_curvature(level: &dyn LevelSet, s: &FiberSample, h: f64) -> Result<(Vec<f64>, f64)> {
    mean_curvature_with(level, s, h, &NewtonConfig::default())
}

pub fn mean_curvature_with(
    level: &dyn LevelSet,
    s: &FiberSample,
    h: f64,
    cfg: &NewtonConfig,
) -> Result<(Vec<f64>, f64)> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let sig = level.signature();
    let x = &s.point;
    let mut hv = vec![0.0; x.len()];
    for t in &s.tangent {
        let plus: Vec<f64> = x.iter().zip(t).map(|(a, b)| a + h * b).collect();
        let minus: Vec<f64> = x.iter().zip(t).map(|(a, b)| a - h * b).collect();
        let (xp, _, _) = gauss_newton(level, &plus, cfg)?;
        let (xm, _, _) = gauss_newton(level, &minus, cfg)?;
        let d2: Vec<f64> = (0..x.len())
            .map(|k| (xp[k] + xm[k] - 2.0 * x[k]) / (h * h))
            .collect();
        for nu in &s.normal {
            let c = sig.inner(&d2, nu);
            hv.iter_mut().zip(nu).for_each(|(a, b)| *a += 0.5 * c * b);
        }
    }
    let norm = sig.inner(&hv, &hv).max(0.0).sqrt();
    Ok((hv, norm))
}

/// Curvature estimates at successively halved steps and the observed order
/// `log2(|H(h) - H(h/2)| / |H(h/2) - H(h/4)|)` from consecutive triples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceStudy {
    pub steps: Vec<f64>,
    pub norms: Vec<f64>,
    pub observed_orders: Vec<f64>,
}

pub fn convergence_study(
    level: &dyn LevelSet,
    s: &FiberSample,
    h0: f64,
    levels: usize,
) -> Result<ConvergenceStudy> {
    let steps: Vec<f64> = (0..levels).map(|k| h0 / 2f64.powi(k as i32)).collect();
    let vecs: Vec<Vec<f64>> = steps
        .iter()
        .map(|&h| mean_curvature(level, s, h).map(|(v, _)| v))
        .collect::<Result<_>>()?;
    let norms = vecs
        .iter()
        .map(|v| level.signature().inner(v, v).max(0.0).sqrt())
        .collect();
    let diff = |a: &[f64], b: &[f64]| {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    };
    let observed_orders = vecs
        .windows(3)
        .map(|w| (diff(&w[0], &w[1]) / diff(&w[1], &w[2])).log2())
        .collect();
    Ok(ConvergenceStudy {
        steps,
        norms,
        observed_orders,
    })
}
