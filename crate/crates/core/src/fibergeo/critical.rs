use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphisms::{rng_from_seed, sample_points, MorphismSpec};
use crate::polyexact::{criticality_det, Quintuple};

/// Gradient norms at or below this count as critical off the plane.
pub const CRITICAL_TOL: f64 = 1e-10;
/// Required gradient and value bound on the plane `x1 = x2 = x3 = 0`.
pub const PLANE_TOL: f64 = 1e-12;
const PLANE_SAMPLES: usize = 100;
const MIN_SPATIAL_NORM: f64 = 0.1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelLine {
    /// Unit real vector `k` in the `(x1, x2, x3)` factor with `p(t k) = 0` and
    /// `grad p(t k) = 0`.
    pub direction: [f64; 3],
    pub max_gradient: f64,
    pub max_value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalScanReport {
    pub samples: usize,
    pub seed: u64,
    pub violations: usize,
    pub min_gradient_off_plane: f64,
    pub plane_samples: usize,
    pub plane_max_gradient: f64,
    pub plane_max_value: f64,
    pub regular: bool,
    pub determinant: String,
    pub determinant_certificate: String,
    /// Real directions in `(x1, x2, x3)` where the quadric's gradient vanishes.
    /// Points `(t k, z)` are critical off the plane but have measure zero, so
    /// random sampling does not meet them.
    pub kernel_line: Option<KernelLine>,
    pub pass: bool,
}

fn grad_norm(spec: &MorphismSpec, x: &[f64]) -> Result<(f64, f64)> {
    let j = spec.jet(x)?;
    let g = j
        .gradient()
        .iter()
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok((g, j.value().norm()))
}

/// Real null vector of the symmetric coefficient matrix of the quadric, if any.
fn real_kernel(q: &Quintuple) -> Option<[f64; 3]> {
    let f = q.to_f64();
    let a = [
        [f.a1, f.b1, f.b2],
        [f.b1, f.a2 - f.a1, f.b3],
        [f.b2, f.b3, -f.a2],
    ];
    let m = DMatrix::from_fn(6, 3, |r, c| if r < 3 { a[r][c].re } else { a[r - 3][c].im });
    let scale = m.amax().max(1.0);
    let svd = m.svd(false, true);
    let (k, &smin) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))?;
    if smin > 1e-12 * scale {
        return None;
    }
    let v = svd.v_t?.row(k).into_owned();
    Some([v[0], v[1], v[2]])
}

/// Samples the map at random points with `|(x1, x2, x3)| >= 0.1` looking for
/// vanishing gradients, and checks gradient and value on the plane
/// `x1 = x2 = x3 = 0`.
pub fn critical_scan(
    spec: &MorphismSpec,
    n_samples: usize,
    seed: u64,
) -> Result<CriticalScanReport> {
    let q = spec.quintuple().ok_or_else(|| {
        Error::InvalidArgument(format!("`{}` is not built from a quadric", spec.name()))
    })?;
    if spec.n_vars() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            got: spec.n_vars(),
        });
    }
    let lorentzian = spec.ambient().is_lorentzian();
    let project = |x: Vec<f64>| spec.ambient().project(&x);
    let mut rng = rng_from_seed(seed);
    let pts = sample_points(&spec.ambient(), spec.domain(), n_samples, &mut rng, |x| {
        x[..3].iter().map(|v| v * v).sum::<f64>().sqrt() >= MIN_SPATIAL_NORM
    })?;
    let mut violations = 0;
    let mut min_grad = f64::INFINITY;
    for x in &pts {
        let (g, _) = grad_norm(spec, x)?;
        min_grad = min_grad.min(g);
        if g <= CRITICAL_TOL {
            violations += 1;
        }
    }
    let taken = pts.len();

    let mut plane_grad = 0.0f64;
    let mut plane_val = 0.0f64;
    let mut plane_samples = 0;
    for k in 0..PLANE_SAMPLES {
        let th = 2.0 * std::f64::consts::PI * k as f64 / PLANE_SAMPLES as f64;
        let x = if lorentzian {
            let t = 2.0 * th.sin();
            vec![0.0, 0.0, 0.0, t.sinh(), t.cosh()]
        } else {
            vec![0.0, 0.0, 0.0, th.cos(), th.sin()]
        };
        if !spec.contains(&x) {
            continue;
        }
        let (g, v) = grad_norm(spec, &x)?;
        plane_grad = plane_grad.max(g);
        plane_val = plane_val.max(v);
        plane_samples += 1;
    }

    let kernel_line = match real_kernel(q) {
        Some(k) => {
            let (mut mg, mut mv) = (0.0f64, 0.0f64);
            for th in [0.3f64, 1.1, 2.5] {
                let z = if lorentzian {
                    [0.2 * th.cos(), 1.0 + th]
                } else {
                    [th.cos(), th.sin()]
                };
                let x: Vec<f64> = k.iter().map(|v| 0.5 * v).chain(z).collect();
                if let Some(x) = project(x).filter(|x| spec.contains(x)) {
                    let (g, v) = grad_norm(spec, &x)?;
                    mg = mg.max(g);
                    mv = mv.max(v);
                }
            }
            Some(KernelLine {
                direction: k,
                max_gradient: mg,
                max_value: mv,
            })
        }
        None => None,
    };

    let regular = q.is_regular();
    let det = criticality_det(q);
    let determinant_certificate = if regular {
        format!("4 a1 b1 b2 = {det} is non-zero")
    } else {
        "unavailable: 4 a1 b1 b2 = 0".to_string()
    };
    Ok(CriticalScanReport {
        samples: taken,
        seed,
        violations,
        min_gradient_off_plane: min_grad,
        plane_samples,
        plane_max_gradient: plane_grad,
        plane_max_value: plane_val,
        regular,
        determinant: det.to_string(),
        determinant_certificate,
        kernel_line,
        pass: violations == 0
            && plane_samples > 0
            && plane_grad <= PLANE_TOL
            && plane_val <= PLANE_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::lookup;

    #[test]
    fn q0_scan_is_clean_and_reports_kernel_line() {
        let r = critical_scan(&lookup("s4-quadric").unwrap(), 500, 7).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.determinant, "240i");
        let k = r.kernel_line.unwrap();
        // the kernel of the q0 quadric is spanned by (0, 4, -3)
        let d = k.direction;
        assert!((d[0]).abs() < 1e-12 && (d[1] * 3.0 + d[2] * 4.0).abs() < 1e-12);
        assert!(k.max_gradient < 1e-12 && k.max_value < 1e-12);
    }

    #[test]
    fn irregular_quintuple_reports_missing_certificate() {
        let r = critical_scan(&lookup("phi-even:d=2,n=1,b1=0,b2=4").unwrap(), 50, 7).unwrap();
        assert!(!r.regular);
        assert!(r.determinant_certificate.starts_with("unavailable"));
    }
}
