use num_complex::Complex64;

use super::{certify, AmbientKind, AmbientSpace, MorphismSpec};
use crate::error::{Error, Result};
use crate::fields::{DomainPredicate, Jet2, MetricSignature, ScalarField};
use crate::polyexact::{
    detect_eigenvalues, planar_quadratic_conformality, quadric_poly, verify_eigen_pair, GaussRat,
    MultiPoly, Quintuple, RationalFn,
};

/// Numeric isotropy tolerance for `sum c_k^2`.
const ISOTROPY_TOL: f64 = 1e-12;

/// Real-coordinate expressions for `z_1 .. z_n` in `n_real` variables:
/// `z_k = x_{offset+2k} + i x_{offset+2k+1}` (0-based). With `dual_last` the
/// last one becomes `x_{a} - x_{b}` instead.
pub fn complex_coords(n_real: usize, offset: usize, n: usize, dual_last: bool) -> Vec<MultiPoly> {
    assert!(
        offset + 2 * n <= n_real,
        "complex coordinates exceed the real dimension"
    );
    (0..n)
        .map(|k| {
            let re = MultiPoly::var(n_real, offset + 2 * k);
            let im = MultiPoly::var(n_real, offset + 2 * k + 1);
            if dual_last && k + 1 == n {
                &re - &im
            } else {
                &re + &im.scale(&GaussRat::i())
            }
        })
        .collect()
}

fn polynomial_spec(name: &str, ambient: AmbientSpace, p: MultiPoly, degree: i64) -> MorphismSpec {
    let field = ScalarField::polynomial(name, &p);
    MorphismSpec::new(
        name,
        ambient,
        field,
        Some(RationalFn::polynomial(p)),
        degree,
    )
}

/// `phi(x) = sum c_k x_k` on R^n for an exactly isotropic `c`.
pub fn linear_isotropic(c: &[GaussRat]) -> Result<MorphismSpec> {
    let n = c.len();
    if n == 0 || c.iter().all(GaussRat::is_zero) {
        return Err(Error::InvalidArgument(
            "coefficient vector must be non-zero".into(),
        ));
    }
    let s = c.iter().fold(GaussRat::zero(), |acc, ck| &acc + &(ck * ck));
    if !s.is_zero() {
        return Err(Error::NotIsotropic(s.to_string()));
    }
    let p = c
        .iter()
        .enumerate()
        .fold(MultiPoly::zero(n), |acc, (k, ck)| {
            &acc + &MultiPoly::var(n, k).scale(ck)
        });
    Ok(polynomial_spec(
        "linear-isotropic",
        AmbientSpace::euclidean(n),
        p,
        1,
    ))
}

/// Floating-point variant; isotropy is checked to `1e-12` relative.
pub fn linear_isotropic_numeric(c: &[Complex64]) -> Result<MorphismSpec> {
    let n = c.len();
    let norm: f64 = c.iter().map(|z| z.norm_sqr()).sum();
    if n == 0 || norm == 0.0 {
        return Err(Error::InvalidArgument(
            "coefficient vector must be non-zero".into(),
        ));
    }
    let s: Complex64 = c.iter().map(|z| z * z).sum();
    if s.norm() > ISOTROPY_TOL * norm.max(1.0) {
        return Err(Error::NotIsotropic(s.to_string()));
    }
    let coeffs = c.to_vec();
    let field = ScalarField::from_fn(
        "linear-isotropic",
        n,
        DomainPredicate::everywhere(),
        move |x| {
            let mut acc = Jet2::constant(x.len(), Complex64::new(0.0, 0.0));
            for (xk, ck) in x.iter().zip(&coeffs) {
                acc = &acc + &xk.scale(*ck);
            }
            acc
        },
    );
    Ok(MorphismSpec::new(
        "linear-isotropic",
        AmbientSpace::euclidean(n),
        field,
        None,
        1,
    ))
}

/// `a (x1^2 - x2^2) + b x1 x2` on R^2; conformal iff `4a^2 + b^2 = 0`.
pub fn planar_quadratic(a: &GaussRat, b: &GaussRat) -> Result<MorphismSpec> {
    let (_, c) = planar_quadratic_conformality(a, b);
    if !c.is_zero() {
        return Err(Error::NotIsotropic(format!("4a^2 + b^2 = {c}")));
    }
    let p = MultiPoly::from_terms(
        2,
        [
            (vec![2, 0], a.clone()),
            (vec![0, 2], -a),
            (vec![1, 1], b.clone()),
        ],
    );
    Ok(polynomial_spec(
        "planar-quadratic",
        AmbientSpace::euclidean(2),
        p,
        2,
    ))
}

/// The quadric `p` on R^3.
pub fn quadric_p(q: &Quintuple) -> Result<MorphismSpec> {
    check_quintuple(q)?;
    Ok(
        polynomial_spec("quadric", AmbientSpace::euclidean(3), quadric_poly(q, 3), 2)
            .with_quintuple(q.clone()),
    )
}

/// A polynomial map on `ambient` with no certification attached; callers use
/// it to assemble eigenfamilies for [`rational_combination`].
pub fn polynomial_map(name: &str, p: MultiPoly, ambient: AmbientSpace) -> Result<MorphismSpec> {
    if p.n_vars() != ambient.dimension {
        return Err(Error::DimensionMismatch {
            expected: ambient.dimension,
            got: p.n_vars(),
        });
    }
    let degree = p.homogeneous_degree().map(i64::from).unwrap_or(0);
    let field = if ambient.is_lorentzian() {
        ScalarField::polynomial(name, &p)
            .with_domain(DomainPredicate::everywhere().inside_lorentz_cone())
    } else {
        ScalarField::polynomial(name, &p)
    };
    Ok(MorphismSpec::new(
        name,
        ambient,
        field,
        Some(RationalFn::polynomial(p)),
        degree,
    ))
}

fn check_quintuple(q: &Quintuple) -> Result<()> {
    if !q.satisfies_constraints() {
        return Err(Error::ConstraintViolation(q.to_f64().residual_norms()));
    }
    Ok(())
}

/// Validates a homogeneous pair and returns the common degree. A zero `p`
/// is accepted when `allow_zero_p` (the composite maps carry a separate
/// non-constant term).
fn check_pair(p: &MultiPoly, q: &MultiPoly, allow_zero_p: bool) -> Result<u32> {
    if p.n_vars() != q.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: q.n_vars(),
            got: p.n_vars(),
        });
    }
    if q.is_zero() || (p.is_zero() && !allow_zero_p) {
        return Err(Error::InvalidArgument(
            "polynomials must be non-zero".into(),
        ));
    }
    let dq = q.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if dq == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    if p.is_zero() {
        return Ok(dq);
    }
    let dp = p.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if dp != dq {
        return Err(Error::DegreeMismatch(dp, dq));
    }
    if p.linearly_dependent(q) {
        return Err(Error::LinearlyDependent);
    }
    Ok(dq)
}

/// Homogeneous `P_d, Q_d` in `z_1 .. z_n`, realised on R^{2n} with
/// `z_k = x_{2k-1} + i x_{2k}` and certified as an eigenfamily with
/// `lambda = mu = 0`.
pub fn holo_pair(pd: &MultiPoly, qd: &MultiPoly) -> Result<(MorphismSpec, MorphismSpec)> {
    let d = check_pair(pd, qd, false)?;
    let n = pd.n_vars();
    let zs = complex_coords(2 * n, 0, n, false);
    let p = pd.compose(&zs)?;
    let q = qd.compose(&zs)?;
    let sig = MetricSignature::euclidean(2 * n);
    let report = verify_eigen_pair(&p, &q, &GaussRat::zero(), &GaussRat::zero(), &sig)?;
    if !report.holds {
        let what = report.witness.map(|w| w.0).unwrap_or_default();
        return Err(Error::NotEigenfamily(what));
    }
    let amb = AmbientSpace::euclidean(2 * n);
    Ok((
        polynomial_spec(&format!("holo:{pd}"), amb, p, d as i64),
        polynomial_spec(&format!("holo:{qd}"), amb, q, d as i64),
    ))
}

fn composite(
    q: &Quintuple,
    pd: &MultiPoly,
    qd: &MultiPoly,
    d: u32,
    dual: bool,
) -> Result<MorphismSpec> {
    check_quintuple(q)?;
    let deg = check_pair(pd, qd, true)?;
    if deg != d {
        return Err(Error::DegreeMismatch(d, deg));
    }
    let n = qd.n_vars();
    let n_real = 2 * n + 3;
    let zs = complex_coords(n_real, 3, n, dual);
    let p = quadric_poly(q, n_real);
    let pr = pd.compose(&zs)?;
    let qr = qd.compose(&zs)?;
    let family = match (dual, d.is_multiple_of(2)) {
        (false, true) => "phi-even",
        (false, false) => "phi-odd",
        (true, _) => "phi-dual",
    };
    let name = format!("{family}:d={d},n={n}");
    let mut domain = DomainPredicate::everywhere().excluding_zeros(qr.clone());
    let ambient = if dual {
        domain = domain.inside_lorentz_cone();
        AmbientSpace::lorentzian(n_real)
    } else {
        AmbientSpace::euclidean(n_real)
    };
    let spec = if d.is_multiple_of(2) {
        let exact = RationalFn::new(&p.pow(d / 2) + &pr, qr.clone())?;
        let field = ScalarField::rational(&name, &exact).with_domain(domain);
        MorphismSpec::new(&name, ambient, field, Some(exact), 0)
    } else {
        let domain = domain.with_branch_cut(p.clone());
        let (pn, prn, qrn) = (p.to_numeric(), pr.to_numeric(), qr.to_numeric());
        let field = ScalarField::from_fn(&name, n_real, domain, move |x| {
            let root = pn.eval_jet(x).sqrt().powi(d);
            &(&root + &prn.eval_jet(x)) / &qrn.eval_jet(x)
        });
        MorphismSpec::new(&name, ambient, field, None, 0)
    };
    let global = dual && d.is_multiple_of(2) && avoids_cone(&qr);
    Ok(spec.with_quintuple(q.clone()).with_globally_defined(global))
}

/// `(p^{d/2} + P_d(z)) / Q_d(z)` on R^{2n+3}, with `z_k = x_{2k+2} + i x_{2k+3}`.
/// Even `d` carries an exact form; odd `d` uses the principal square root and
/// excludes the cut `p(x) <= 0`.
pub fn composite_phi_hat(
    q: &Quintuple,
    pd: &MultiPoly,
    qd: &MultiPoly,
    d: u32,
) -> Result<MorphismSpec> {
    composite(q, pd, qd, d, false)
}

/// The Lorentzian dual on the cone `<x, x>_L < 0` in R^{2n+3}_1, obtained with
/// `z_n = x_{2n+2} - x_{2n+3}`.
pub fn hyperbolic_dual(
    q: &Quintuple,
    pd: &MultiPoly,
    qd: &MultiPoly,
    d: u32,
) -> Result<MorphismSpec> {
    composite(q, pd, qd, d, true)
}

/// True when `den = c (x_{N-1} - x_N)^m`: on the cone, `x_{N-1} = x_N` would
/// force `<x, x>_L = sum_{k < N-1} x_k^2 >= 0`, so the zero set misses it.
fn avoids_cone(den: &MultiPoly) -> bool {
    let n = den.n_vars();
    if n < 2 {
        return false;
    }
    if den.as_constant().is_some() {
        return true;
    }
    let Some(m) = den.homogeneous_degree() else {
        return false;
    };
    let null = &MultiPoly::var(n, n - 2) - &MultiPoly::var(n, n - 1);
    null.pow(m).linearly_dependent(den)
}

fn require_degree_zero(spec: &MorphismSpec, flat: AmbientKind) -> Result<()> {
    if spec.ambient().kind != flat {
        return Err(Error::InvalidArgument(format!(
            "`{}` lives on {}, expected a flat {:?} ambient",
            spec.name(),
            spec.ambient(),
            flat
        )));
    }
    if spec.degree() != 0 {
        return Err(Error::NotHomogeneousDegreeZero(spec.name().to_string()));
    }
    Ok(())
}

/// Restricts a degree-0 map on R^n to the unit sphere.
pub fn sphere_restriction(spec: &MorphismSpec) -> Result<MorphismSpec> {
    require_degree_zero(spec, AmbientKind::Euclidean)?;
    let mut out = spec.clone();
    out.ambient = AmbientSpace::sphere(spec.ambient().dimension);
    out.field = out
        .field
        .clone()
        .with_domain(spec.domain().clone().excluding_origin());
    Ok(out)
}

/// Restricts a degree-0 map on the Lorentz cone to the hyperboloid.
pub fn hyperbolic_restriction(spec: &MorphismSpec) -> Result<MorphismSpec> {
    require_degree_zero(spec, AmbientKind::Lorentzian)?;
    let mut out = spec.clone();
    out.ambient = AmbientSpace::hyperbolic(spec.ambient().dimension);
    out.field = out
        .field
        .clone()
        .with_domain(spec.domain().clone().inside_lorentz_cone());
    Ok(out)
}

/// `z / w` with `z = x1 + i x2`, `w = x3 + i x4`, on S^3.
pub fn hopf() -> MorphismSpec {
    let zs = complex_coords(4, 0, 2, false);
    let exact = RationalFn::new(zs[0].clone(), zs[1].clone()).expect("non-zero denominator");
    let field = ScalarField::rational("hopf", &exact);
    let flat = MorphismSpec::new("hopf", AmbientSpace::euclidean(4), field, Some(exact), 0);
    sphere_restriction(&flat).expect("degree zero")
}

/// `(x1 + i x2) / (x3 - x4)` on H^3.
pub fn hopf_dual() -> MorphismSpec {
    let zs = complex_coords(4, 0, 2, true);
    let exact = RationalFn::new(zs[0].clone(), zs[1].clone()).expect("non-zero denominator");
    let global = avoids_cone(exact.den());
    let field = ScalarField::rational("hopf-dual", &exact);
    let flat = MorphismSpec::new(
        "hopf-dual",
        AmbientSpace::lorentzian(4),
        field,
        Some(exact),
        0,
    );
    hyperbolic_restriction(&flat)
        .expect("degree zero")
        .with_globally_defined(global)
}

/// `P(phi_1, ..) / Q(phi_1, ..)` for an eigenfamily `phi_i` and homogeneous
/// `P, Q` of equal degree in `u_1 .. u_k`.
pub fn rational_combination(
    specs: &[MorphismSpec],
    p: &MultiPoly,
    q: &MultiPoly,
) -> Result<MorphismSpec> {
    let first = specs
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty family".into()))?;
    let k = specs.len();
    for poly in [p, q] {
        if poly.n_vars() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: poly.n_vars(),
            });
        }
    }
    check_pair(p, q, false)?;
    let ambient = first.ambient();
    if let Some(s) = specs.iter().find(|s| s.ambient() != ambient) {
        return Err(Error::InvalidArgument(format!(
            "`{}` lives on {}, not {}",
            s.name(),
            s.ambient(),
            ambient
        )));
    }
    let sig = ambient.signature();
    let names: Vec<&str> = specs.iter().map(|s| s.name()).collect();
    let name = format!("({p})/({q}) of [{}]", names.join(", "));
    let domain = specs
        .iter()
        .skip(1)
        .fold(first.domain().clone(), |d, s| d.intersect(s.domain()));

    check_eigenfamily(specs, &domain, &sig)?;

    let fields: Vec<ScalarField> = specs.iter().map(|s| s.field().clone()).collect();
    let (pn, qn) = (p.to_numeric(), q.to_numeric());
    let eval_fields = fields.clone();
    let eval = move |x: &[Jet2]| {
        let u: Vec<Jet2> = eval_fields.iter().map(|f| f.apply(x)).collect();
        &pn.eval_jet(&u) / &qn.eval_jet(&u)
    };

    let exact_forms: Option<Vec<&RationalFn>> = specs.iter().map(|s| s.exact_form()).collect();
    let (domain, exact) = match exact_forms {
        Some(forms) => {
            // clear denominators: u_i = N_i / D_i  ->  N_i prod_{j != i} D_j
            let scaled: Vec<MultiPoly> = (0..k)
                .map(|i| {
                    forms
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .fold(forms[i].num().clone(), |acc, (_, f)| &acc * f.den())
                })
                .collect();
            let pc = p.compose(&scaled)?;
            let qc = q.compose(&scaled)?;
            if qc.is_zero() {
                return Err(Error::InvalidArgument(
                    "Q vanishes identically on the family".into(),
                ));
            }
            let domain = domain.excluding_zeros(qc.clone());
            (domain, Some(RationalFn::new(pc, qc)?))
        }
        None => {
            let qv = q.to_numeric();
            let domain = domain.excluding_zeros_of(format!("({q}) of the family"), move |x| {
                let seeds = Jet2::seed_values(x);
                let u: Vec<Jet2> = fields.iter().map(|f| f.apply(&seeds)).collect();
                qv.eval_jet(&u).value()
            });
            (domain, None)
        }
    };
    let field = ScalarField::from_fn(&name, first.n_vars(), domain, eval);
    Ok(MorphismSpec::new(name, ambient, field, exact, 0))
}

fn check_eigenfamily(
    specs: &[MorphismSpec],
    domain: &DomainPredicate,
    sig: &MetricSignature,
) -> Result<()> {
    let polys: Option<Vec<MultiPoly>> = specs
        .iter()
        .map(|s| {
            let r = s.exact_form()?;
            let c = r.den().as_constant()?;
            Some(r.num().scale(&c.inv()?))
        })
        .collect();
    if let Some(polys) = polys {
        return match detect_eigenvalues(&polys, sig)? {
            Some(_) => Ok(()),
            None => Err(Error::NotEigenfamily(
                "no shared (lambda, mu) for the family".into(),
            )),
        };
    }
    certify::numeric_eigen_check(specs, domain, sig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexact::{variety_point, Branch};

    fn g(re: i64, im: i64) -> GaussRat {
        GaussRat::from_ints(re, im)
    }

    fn q0() -> Quintuple {
        variety_point(&g(3, 0), &g(4, 0), Branch::Plus).unwrap()
    }

    fn z(n: usize, k: usize) -> MultiPoly {
        MultiPoly::var(n, k)
    }

    #[test]
    fn linear_isotropic_examples() {
        assert!(linear_isotropic(&[g(1, 0), g(0, 1)]).is_ok());
        assert!(matches!(
            linear_isotropic(&[g(1, 0), g(1, 0)]),
            Err(Error::NotIsotropic(_))
        ));
        let s = linear_isotropic(&[g(3, 0), g(4, 0), g(0, 5)]).unwrap();
        assert_eq!(s.value(&[1.0, 1.0, 1.0]).unwrap(), Complex64::new(7.0, 5.0));
        let c = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
        assert!(linear_isotropic_numeric(&c).is_ok());
        assert!(linear_isotropic_numeric(&[Complex64::new(1.0, 0.0); 2]).is_err());
    }

    #[test]
    fn planar_quadratic_condition() {
        assert!(planar_quadratic(&g(1, 0), &g(0, 2)).is_ok());
        assert!(matches!(
            planar_quadratic(&g(1, 0), &g(1, 0)),
            Err(Error::NotIsotropic(_))
        ));
    }

    #[test]
    fn quadric_values() {
        let s = quadric_p(&q0()).unwrap();
        assert_eq!(s.value(&[1.0, 0.0, 0.0]).unwrap(), Complex64::new(0.0, 5.0));
        let v = s.value(&[0.0, 1.0, 0.0]).unwrap();
        assert!((v - Complex64::new(0.0, -9.0 / 5.0)).norm() < 1e-15);
        let mut bad = q0();
        bad.a1 = &bad.a1 + &GaussRat::one();
        assert!(matches!(
            quadric_p(&bad),
            Err(Error::ConstraintViolation(_))
        ));
    }

    #[test]
    fn holo_pair_examples() {
        let (p, q) = holo_pair(&z(2, 0).pow(2), &z(2, 1).pow(2)).unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(q.n_vars(), 4);
        assert!(matches!(
            holo_pair(&z(2, 0).pow(2), &z(2, 0).pow(2).scale(&g(2, 0))),
            Err(Error::LinearlyDependent)
        ));
        let cubic = &z(2, 0).pow(3) + &z(2, 1).pow(3);
        assert!(holo_pair(&(&z(2, 0).pow(2) * &z(2, 1)), &cubic).is_ok());
        assert!(matches!(
            holo_pair(&z(2, 0), &z(2, 1).pow(2)),
            Err(Error::DegreeMismatch(1, 2))
        ));
        assert!(matches!(
            holo_pair(&(&z(2, 0) + &z(2, 1).pow(2)), &z(2, 1)),
            Err(Error::NotHomogeneous)
        ));
    }

    #[test]
    fn composite_domains() {
        let even = composite_phi_hat(&q0(), &MultiPoly::zero(1), &z(1, 0).pow(2), 2).unwrap();
        assert_eq!(even.name(), "phi-even:d=2,n=1");
        assert!(even.exact_form().is_some());
        assert!(!even.contains(&[1.0, 0.0, 0.0, 0.0, 0.0]));
        let odd = composite_phi_hat(&q0(), &z(2, 0).pow(3), &z(2, 1).pow(3), 3).unwrap();
        assert!(odd.exact_form().is_none());
        assert!(odd.domain().branch_cut().is_some());
        assert!(matches!(
            composite_phi_hat(&q0(), &z(2, 0).pow(2), &z(2, 1).pow(2), 3),
            Err(Error::DegreeMismatch(3, 2))
        ));
    }

    #[test]
    fn seed_value_on_quadric_map() {
        let s = sphere_restriction(
            &composite_phi_hat(&q0(), &MultiPoly::zero(1), &z(1, 0).pow(2), 2).unwrap(),
        )
        .unwrap();
        let r = 0.5f64.sqrt();
        let v = s.value(&[r, 0.0, 0.0, r, 0.0]).unwrap();
        assert!((v - Complex64::new(0.0, 5.0)).norm() < 1e-14);
    }

    #[test]
    fn dual_is_globally_defined_and_excludes_null_points() {
        let s = hyperbolic_dual(&q0(), &MultiPoly::zero(1), &z(1, 0).pow(2), 2).unwrap();
        assert!(s.globally_defined());
        for t in [-2.0, 0.5, 3.0] {
            assert!(!s.contains(&[0.0, 0.0, 0.0, t, t]));
        }
        let odd = hyperbolic_dual(&q0(), &z(2, 0).pow(3), &z(2, 1).pow(3), 3).unwrap();
        assert!(!odd.globally_defined());
    }

    #[test]
    fn restriction_requires_degree_zero() {
        let x1 = linear_isotropic(&[g(1, 0), g(0, 1)]).unwrap();
        assert!(matches!(
            sphere_restriction(&x1),
            Err(Error::NotHomogeneousDegreeZero(_))
        ));
    }

    #[test]
    fn hopf_values() {
        assert_eq!(
            hopf().value(&[1.0, 0.0, 1.0, 0.0]).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let d = hopf_dual();
        // (1, 0, 2, 1) is spacelike, so the formula is checked through the
        // exact form; the restricted map itself rejects the point
        let x = [1.0, 0.0, 2.0, 1.0];
        let r = d.exact_form().unwrap();
        assert_eq!(
            r.num().eval_f64(&x) / r.den().eval_f64(&x),
            Complex64::new(1.0, 0.0)
        );
        assert!(!d.contains(&x));
        let y = [0.5, 0.5, 1.0, 2.0];
        let expect = Complex64::new(0.5, 0.5) / Complex64::new(-1.0, 0.0);
        assert!((d.value(&y).unwrap() - expect).norm() < 1e-15);
        assert!(d.globally_defined());
        assert_eq!(d.domain().excluded_zero_sets().count(), 1);
    }

    #[test]
    fn combination_of_linear_maps_is_hopf_form() {
        let z1 = linear_isotropic(&[g(1, 0), g(0, 1), g(0, 0), g(0, 0)]).unwrap();
        let z2 = linear_isotropic(&[g(0, 0), g(0, 0), g(1, 0), g(0, 1)]).unwrap();
        let r = rational_combination(&[z1.clone(), z2.clone()], &z(2, 0), &z(2, 1)).unwrap();
        let x = [0.3, -0.2, 0.7, 0.1];
        let h = Complex64::new(0.3, -0.2) / Complex64::new(0.7, 0.1);
        assert!((r.value(&x).unwrap() - h).norm() < 1e-14);
        let r2 = rational_combination(&[z1, z2], &z(2, 0).pow(2), &(&z(2, 0) * &z(2, 1))).unwrap();
        assert!((r2.value(&x).unwrap() - h).norm() < 1e-14);
    }

    #[test]
    fn combination_rejects_non_eigenfamily() {
        let amb = AmbientSpace::euclidean(2);
        let a = polynomial_map("x1^2", z(2, 0).pow(2), amb).unwrap();
        let b = polynomial_map("x2", z(2, 1), amb).unwrap();
        assert!(matches!(
            rational_combination(&[a, b], &z(2, 0), &z(2, 1)),
            Err(Error::NotEigenfamily(_))
        ));
    }

    #[test]
    fn combination_of_quadric_pair() {
        let n = 5;
        let amb = AmbientSpace::euclidean(n);
        let p = polynomial_map("p", quadric_poly(&q0(), n), amb).unwrap();
        let zz = complex_coords(n, 3, 1, false)[0].pow(2);
        let qs = polynomial_map("z^2", zz, amb).unwrap();
        let r = rational_combination(&[p, qs], &z(2, 0), &z(2, 1)).unwrap();
        let phi = composite_phi_hat(&q0(), &MultiPoly::zero(1), &z(1, 0).pow(2), 2).unwrap();
        let x = [0.2, -0.4, 0.9, 0.3, -0.6];
        assert!((r.value(&x).unwrap() - phi.value(&x).unwrap()).norm() < 1e-12);
    }
}
