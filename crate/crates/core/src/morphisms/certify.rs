use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{AmbientKind, AmbientSpace, MorphismSpec};
use crate::error::{Error, Result};
use crate::fields::{conformality_of_jets, tension_of_jet, DomainPredicate, Jet2, MetricSignature};
use crate::polyexact::{ratfn_conf_num, ratfn_tension_num};

/// Seed used by every certification run unless overridden.
pub const DEFAULT_SEED: u64 = 20_240_515;
pub const CERT_SAMPLES: usize = 200;
pub const CERT_TOL: f64 = 1e-9;
pub const PULLBACK_SAMPLES: usize = 100;
pub const PULLBACK_TOL: f64 = 1e-8;

const MAX_ATTEMPTS_PER_POINT: usize = 1000;
/// Points where `|phi|` is this small are not "regular" for `Re(1/w)`.
const MIN_VALUE: f64 = 1e-6;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn raw_point(ambient: &AmbientSpace, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n = ambient.dimension;
    let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    match ambient.kind {
        AmbientKind::Euclidean => x,
        AmbientKind::Sphere => {
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            x.iter().map(|v| v / r.max(f64::MIN_POSITIVE)).collect()
        }
        AmbientKind::Hyperbolic | AmbientKind::Lorentzian => {
            let s: f64 = x[..n - 1].iter().map(|v| v * v).sum();
            x[n - 1] = (1.0 + s).sqrt();
            if ambient.kind == AmbientKind::Lorentzian {
                let scale = rng.random_range(0.5..2.0);
                x.iter_mut().for_each(|v| *v *= scale);
            }
            x
        }
    }
}

/// `n` points of `domain` drawn for `ambient`: uniform in the unit box for
/// flat Euclidean space, radially projected onto the sphere, and lifted to
/// the upper hyperboloid (scaled into the cone for flat Lorentzian space).
pub fn sample_points(
    ambient: &AmbientSpace,
    domain: &DomainPredicate,
    n: usize,
    rng: &mut ChaCha8Rng,
    accept: impl Fn(&[f64]) -> bool,
) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0;
    while out.len() < n {
        attempts += 1;
        if attempts > MAX_ATTEMPTS_PER_POINT * n.max(1) {
            return Err(Error::InvalidArgument(format!(
                "could not draw {n} domain points on {ambient} ({} found)",
                out.len()
            )));
        }
        let x = raw_point(ambient, rng);
        if x.iter().all(|v| v.is_finite()) && domain.contains(&x) && accept(&x) {
            out.push(x);
        }
    }
    Ok(out)
}

pub fn sample_domain_points(spec: &MorphismSpec, n: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    let mut rng = rng_from_seed(seed);
    sample_points(&spec.ambient(), spec.domain(), n, &mut rng, |_| true)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactCertificate {
    pub tension_numerator_terms: usize,
    pub conformality_numerator_terms: usize,
    pub pass: bool,
}

/// Both quotient-rule numerators of the exact form vanish identically.
pub fn certify_exact(spec: &MorphismSpec) -> Result<ExactCertificate> {
    let r = spec
        .exact_form()
        .ok_or_else(|| Error::ExactModeUnavailable(spec.name().to_string()))?;
    let sig = spec.signature();
    let t = ratfn_tension_num(r, &sig)?;
    let k = ratfn_conf_num(r, &sig)?;
    Ok(ExactCertificate {
        tension_numerator_terms: t.n_terms(),
        conformality_numerator_terms: k.n_terms(),
        pass: t.is_zero() && k.is_zero(),
    })
}

/// `|tau| / (1 + sum_k |d_kk phi|)`: the tension relative to the size of the
/// terms that cancel in it.
pub fn relative_tension(j: &Jet2, sig: &MetricSignature) -> f64 {
    let scale: f64 = (0..j.dim()).map(|k| j.hessian(k, k).norm()).sum();
    tension_of_jet(j, sig).norm() / (1.0 + scale)
}

/// `|kappa(phi, phi)| / (1 + sum_k |d_k phi|^2)`.
pub fn relative_conformality(j: &Jet2, sig: &MetricSignature) -> f64 {
    let scale: f64 = j.gradient().iter().map(|g| g.norm_sqr()).sum();
    conformality_of_jets(j, j, sig).norm() / (1.0 + scale)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericCertificate {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_tension: f64,
    pub max_conformality: f64,
    pub pass: bool,
}

/// Relative `tau` and `kappa(phi, phi)` at `n` seeded random domain points.
pub fn certify_numeric(
    spec: &MorphismSpec,
    n: usize,
    tol: f64,
    seed: u64,
) -> Result<NumericCertificate> {
    let sig = spec.signature();
    let pts = sample_domain_points(spec, n, seed)?;
    let (mut mt, mut mk) = (0.0f64, 0.0f64);
    for x in &pts {
        let j = spec.jet(x)?;
        mt = mt.max(relative_tension(&j, &sig));
        mk = mk.max(relative_conformality(&j, &sig));
    }
    Ok(NumericCertificate {
        samples: pts.len(),
        seed,
        tol,
        max_tension: mt,
        max_conformality: mk,
        pass: mt <= tol && mk <= tol,
    })
}

/// The harmonic test functions on C used by [`pullback_check`].
pub const PULLBACK_FUNCTIONS: [&str; 5] = ["Re w", "Im w", "Re w^2", "Im w^2", "Re 1/w"];

fn apply_test_function(k: usize, w: &Jet2) -> Jet2 {
    match k {
        0 => w.re(),
        1 => w.im(),
        2 => (w * w).re(),
        3 => (w * w).im(),
        _ => w.recip().re(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PullbackReport {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// Worst relative flat tension of `h o phi`, per test function.
    pub max_tension: Vec<(String, f64)>,
    pub pass: bool,
}

/// Flat tension of `h o phi` for each harmonic `h` in [`PULLBACK_FUNCTIONS`]
/// at `n` regular domain points (`|phi| >= 1e-6`).
pub fn pullback_check(
    spec: &MorphismSpec,
    n: usize,
    tol: f64,
    seed: u64,
) -> Result<PullbackReport> {
    let sig = spec.signature();
    let mut rng = rng_from_seed(seed);
    let pts = sample_points(&spec.ambient(), spec.domain(), n, &mut rng, |x| {
        spec.value(x).is_ok_and(|v| v.norm() >= MIN_VALUE)
    })?;
    let mut worst = [0.0f64; 5];
    for x in &pts {
        let w = spec.jet(x)?;
        for (k, slot) in worst.iter_mut().enumerate() {
            let hj = apply_test_function(k, &w);
            *slot = slot.max(relative_tension(&hj, &sig));
        }
    }
    Ok(PullbackReport {
        samples: pts.len(),
        seed,
        tol,
        max_tension: PULLBACK_FUNCTIONS
            .iter()
            .map(|s| s.to_string())
            .zip(worst)
            .collect(),
        pass: worst.iter().all(|&v| v <= tol),
    })
}

/// Largest `|field - exact| / (1 + |exact|)` over `n` domain points.
pub fn check_exact_agreement(spec: &MorphismSpec, n: usize, seed: u64) -> Result<f64> {
    let r = spec
        .exact_form()
        .ok_or_else(|| Error::ExactModeUnavailable(spec.name().to_string()))?;
    let (num, den) = (r.num().to_numeric(), r.den().to_numeric());
    let mut worst = 0.0f64;
    for x in sample_domain_points(spec, n, seed)? {
        let e = num.eval_real(&x) / den.eval_real(&x);
        let v = spec.value(&x)?;
        worst = worst.max((v - e).norm() / (1.0 + e.norm()));
    }
    Ok(worst)
}

const EIGEN_SAMPLES: usize = 20;
const EIGEN_TOL: f64 = 1e-8;

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= EIGEN_TOL * (1.0 + a.norm().max(b.norm()))
}

/// Numeric eigenfamily test: `tau(phi_i) / phi_i` and
/// `kappa(phi_i, phi_j) / (phi_i phi_j)` must be the same constants at every
/// sampled point.
pub(crate) fn numeric_eigen_check(
    specs: &[MorphismSpec],
    domain: &DomainPredicate,
    sig: &MetricSignature,
) -> Result<()> {
    let ambient = specs[0].ambient();
    let mut rng = rng_from_seed(DEFAULT_SEED);
    let pts = sample_points(&ambient, domain, EIGEN_SAMPLES, &mut rng, |_| true)?;
    let (mut lambda, mut mu): (Option<Complex64>, Option<Complex64>) = (None, None);
    for x in &pts {
        let seeds = Jet2::seed(x);
        let jets: Vec<Jet2> = specs.iter().map(|s| s.field().apply(&seeds)).collect();
        for (i, ji) in jets.iter().enumerate() {
            let vi = ji.value();
            if vi.norm() < MIN_VALUE {
                continue;
            }
            let l = tension_of_jet(ji, sig) / vi;
            match lambda {
                Some(l0) if !close(l0, l) => {
                    return Err(Error::NotEigenfamily(format!(
                        "tau(f{i}) / f{i} is not constant"
                    )));
                }
                None => lambda = Some(l),
                _ => {}
            }
            for (j, jj) in jets.iter().enumerate().skip(i) {
                let vj = jj.value();
                if vj.norm() < MIN_VALUE {
                    continue;
                }
                let m = conformality_of_jets(ji, jj, sig) / (vi * vj);
                match mu {
                    Some(m0) if !close(m0, m) => {
                        return Err(Error::NotEigenfamily(format!(
                            "kappa(f{i}, f{j}) / (f{i} f{j}) is not constant"
                        )));
                    }
                    None => mu = Some(m),
                    _ => {}
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::{hopf, hopf_dual, linear_isotropic_numeric, polynomial_map};
    use crate::polyexact::MultiPoly;

    #[test]
    fn samples_respect_ambient() {
        let h = hopf_dual();
        for x in sample_domain_points(&h, 50, 1).unwrap() {
            assert!((h.ambient().constraint(&x).unwrap()).abs() < 1e-12);
            assert!(x[3] > 0.0);
        }
        let s = hopf();
        for x in sample_domain_points(&s, 50, 1).unwrap() {
            assert!((s.ambient().constraint(&x).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let h = hopf();
        assert_eq!(
            sample_domain_points(&h, 5, 9).unwrap(),
            sample_domain_points(&h, 5, 9).unwrap()
        );
    }

    #[test]
    fn near_isotropic_vector_certifies() {
        let c = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0 + 1e-13)];
        let s = linear_isotropic_numeric(&c).unwrap();
        assert!(certify_numeric(&s, 20, CERT_TOL, 1).unwrap().pass);
    }

    #[test]
    fn non_harmonic_map_fails_certificates() {
        let p = MultiPoly::var(2, 0).pow(2);
        let s = polynomial_map("x1^2", p, AmbientSpace::euclidean(2)).unwrap();
        let cert = certify_numeric(&s, 20, CERT_TOL, 1).unwrap();
        assert!(!cert.pass);
        assert!(cert.max_tension > 0.1);
        assert!(!certify_exact(&s).unwrap().pass);
        assert!(!pullback_check(&s, 20, PULLBACK_TOL, 1).unwrap().pass);
    }

    #[test]
    fn exact_mode_requires_exact_form() {
        let c = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
        let s = linear_isotropic_numeric(&c).unwrap();
        assert!(matches!(
            certify_exact(&s),
            Err(Error::ExactModeUnavailable(_))
        ));
    }
}
