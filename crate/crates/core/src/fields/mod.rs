//! Numeric complex-valued scalar fields on flat R^n or R^n_1, with the
//! tension field and conformality operator computed from second-order jets.

mod domain;
mod jet;

pub use domain::{DomainPredicate, DomainSummary, DOMAIN_EPS};
pub use jet::Jet2;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyexact::{MultiPoly, RationalFn};

/// Default relative tolerance for numeric "is zero" verdicts.
pub const ZERO_TOL: f64 = 1e-10;

/// Flat metric `diag(1, ..., 1)` or `diag(1, ..., 1, -1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MetricSignature {
    dimension: usize,
    lorentzian: bool,
}

impl MetricSignature {
    pub fn new(dimension: usize, lorentzian: bool) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidArgument(
                "metric dimension must be at least 1".into(),
            ));
        }
        Ok(MetricSignature {
            dimension,
            lorentzian,
        })
    }

    pub fn euclidean(dimension: usize) -> Self {
        MetricSignature::new(dimension, false).expect("positive dimension")
    }

    pub fn lorentzian(dimension: usize) -> Self {
        MetricSignature::new(dimension, true).expect("positive dimension")
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_lorentzian(&self) -> bool {
        self.lorentzian
    }

    pub fn weights(&self) -> Vec<f64> {
        let mut w = vec![1.0; self.dimension];
        if self.lorentzian {
            w[self.dimension - 1] = -1.0;
        }
        w
    }

    pub fn weight(&self, k: usize) -> f64 {
        if self.lorentzian && k + 1 == self.dimension {
            -1.0
        } else {
            1.0
        }
    }

    /// `<x, y>` under this signature.
    pub fn inner(&self, x: &[f64], y: &[f64]) -> f64 {
        x.iter()
            .zip(y)
            .enumerate()
            .map(|(k, (a, b))| self.weight(k) * a * b)
            .sum()
    }
}

type JetFn = dyn Fn(&[Jet2]) -> Jet2 + Send + Sync;

/// A complex-valued function of `n_vars` real coordinates together with the
/// set on which it may be evaluated.
#[derive(Clone)]
pub struct ScalarField {
    name: String,
    n_vars: usize,
    eval: Arc<JetFn>,
    domain: DomainPredicate,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("name", &self.name)
            .field("n_vars", &self.n_vars)
            .field("domain", &self.domain)
            .finish()
    }
}

impl ScalarField {
    /// `f` receives one jet per coordinate and must build its result from
    /// jet arithmetic only.
    pub fn from_fn(
        name: impl Into<String>,
        n_vars: usize,
        domain: DomainPredicate,
        f: impl Fn(&[Jet2]) -> Jet2 + Send + Sync + 'static,
    ) -> Self {
        ScalarField {
            name: name.into(),
            n_vars,
            eval: Arc::new(f),
            domain,
        }
    }

    pub fn polynomial(name: impl Into<String>, p: &MultiPoly) -> Self {
        let np = p.to_numeric();
        ScalarField::from_fn(name, p.n_vars(), DomainPredicate::everywhere(), move |x| {
            np.eval_jet(x)
        })
    }

    /// `num / den`, with the zero set of a non-constant denominator excluded.
    pub fn rational(name: impl Into<String>, r: &RationalFn) -> Self {
        let num = r.num().to_numeric();
        let den = r.den().to_numeric();
        let domain = if r.den().as_constant().is_some() {
            DomainPredicate::everywhere()
        } else {
            DomainPredicate::everywhere().excluding_zeros(r.den().clone())
        };
        ScalarField::from_fn(name, r.n_vars(), domain, move |x| {
            &num.eval_jet(x) / &den.eval_jet(x)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn domain(&self) -> &DomainPredicate {
        &self.domain
    }

    pub fn with_domain(mut self, domain: DomainPredicate) -> Self {
        self.domain = domain;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.n_vars && self.domain.contains(x)
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: x.len(),
            });
        }
        if !self.domain.contains(x) {
            return Err(Error::DomainViolation {
                field: self.name.clone(),
                point: x.to_vec(),
            });
        }
        Ok(())
    }

    /// Applies the underlying jet function to caller-supplied jets, without a
    /// domain check. Used to build composite fields.
    pub fn apply(&self, x: &[Jet2]) -> Jet2 {
        (self.eval)(x)
    }

    pub fn jet(&self, x: &[f64]) -> Result<Jet2> {
        self.check(x)?;
        let j = (self.eval)(&Jet2::seed(x));
        if !j.is_finite() {
            return Err(Error::Overflow(self.name.clone()));
        }
        Ok(j)
    }

    pub fn value(&self, x: &[f64]) -> Result<Complex64> {
        self.check(x)?;
        let v = (self.eval)(&Jet2::seed_values(x)).value();
        if !v.is_finite() {
            return Err(Error::Overflow(self.name.clone()));
        }
        Ok(v)
    }
}

fn check_sig(field: &ScalarField, sig: &MetricSignature) -> Result<()> {
    if field.n_vars() != sig.dimension() {
        return Err(Error::DimensionMismatch {
            expected: sig.dimension(),
            got: field.n_vars(),
        });
    }
    Ok(())
}

pub fn eval_jet2(field: &ScalarField, x: &[f64]) -> Result<Jet2> {
    field.jet(x)
}

/// Signature-weighted trace of the Hessian.
pub fn tension(field: &ScalarField, x: &[f64], sig: &MetricSignature) -> Result<Complex64> {
    check_sig(field, sig)?;
    Ok(tension_of_jet(&field.jet(x)?, sig))
}

pub fn tension_of_jet(j: &Jet2, sig: &MetricSignature) -> Complex64 {
    (0..j.dim()).map(|k| j.hessian(k, k) * sig.weight(k)).sum()
}

/// `sum_k w_k (df/dx_k)(dg/dx_k)`, complex-bilinear.
pub fn conformality(
    f: &ScalarField,
    g: &ScalarField,
    x: &[f64],
    sig: &MetricSignature,
) -> Result<Complex64> {
    check_sig(f, sig)?;
    check_sig(g, sig)?;
    let (jf, jg) = (f.jet(x)?, g.jet(x)?);
    Ok(conformality_of_jets(&jf, &jg, sig))
}

/// Symmetric by construction: products are formed as `a*b + b*a` halves so
/// swapping the arguments gives bit-identical results.
pub fn conformality_of_jets(jf: &Jet2, jg: &Jet2, sig: &MetricSignature) -> Complex64 {
    jf.gradient()
        .iter()
        .zip(jg.gradient())
        .enumerate()
        .map(|(k, (a, b))| (a * b + b * a) * (0.5 * sig.weight(k)))
        .sum()
}

/// Metric-raised gradient `w_k dphi/dx_k`.
pub fn grad_complex(
    field: &ScalarField,
    x: &[f64],
    sig: &MetricSignature,
) -> Result<Vec<Complex64>> {
    check_sig(field, sig)?;
    let j = field.jet(x)?;
    Ok(j.gradient()
        .iter()
        .enumerate()
        .map(|(k, g)| g * sig.weight(k))
        .collect())
}

/// True iff `|f(s x) - f(x)| <= 1e-10 (1 + |f(x)|)` for every scale `s`.
pub fn check_radial_invariance(field: &ScalarField, x: &[f64], scales: &[f64]) -> Result<bool> {
    let base = field.value(x)?;
    for &s in scales {
        if s.is_nan() || s <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "scale must be positive, got {s}"
            )));
        }
        let y: Vec<f64> = x.iter().map(|v| v * s).collect();
        let v = field.value(&y)?;
        if (v - base).norm() > ZERO_TOL * (1.0 + base.norm()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|z| <= tol * (1 + scale)`
pub fn is_zero_rel(z: Complex64, scale: f64, tol: f64) -> bool {
    z.norm() <= tol * (1.0 + scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexact::GaussRat;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn x(n: usize, k: usize) -> MultiPoly {
        MultiPoly::var(n, k)
    }

    fn hopf() -> ScalarField {
        let z = &x(4, 0) + &x(4, 1).scale(&GaussRat::i());
        let w = &x(4, 2) + &x(4, 3).scale(&GaussRat::i());
        ScalarField::rational("hopf", &RationalFn::new(z, w).unwrap())
    }

    #[test]
    fn eval_monomial_jet() {
        let f = ScalarField::polynomial("x1^2", &x(2, 0).pow(2));
        let j = eval_jet2(&f, &[3.0, 0.0]).unwrap();
        assert_eq!(j.value(), c(9.0, 0.0));
        assert_eq!(j.gradient(), &[c(6.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(
            j.hessian_matrix(),
            vec![
                vec![c(2.0, 0.0), c(0.0, 0.0)],
                vec![c(0.0, 0.0), c(0.0, 0.0)]
            ]
        );
    }

    #[test]
    fn eval_holomorphic_square() {
        let z = &x(2, 0) + &x(2, 1).scale(&GaussRat::i());
        let f = ScalarField::polynomial("z^2", &z.pow(2));
        let j = eval_jet2(&f, &[1.0, 1.0]).unwrap();
        assert_eq!(j.value(), c(0.0, 2.0));
        assert_eq!(j.gradient(), &[c(2.0, 2.0), c(-2.0, 2.0)]);
    }

    #[test]
    fn hopf_value_and_domain() {
        let h = hopf();
        assert_eq!(h.value(&[1.0, 0.0, 1.0, 0.0]).unwrap(), c(1.0, 0.0));
        assert!(matches!(
            h.jet(&[1.0, 0.0, 0.0, 0.0]),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(
            h.jet(&[1.0, 0.0, 1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tension_examples() {
        let e2 = MetricSignature::euclidean(2);
        let l2 = MetricSignature::lorentzian(2);
        let harmonic = ScalarField::polynomial("h", &(&x(2, 0).pow(2) - &x(2, 1).pow(2)));
        let radial = ScalarField::polynomial("r", &(&x(2, 0).pow(2) + &x(2, 1).pow(2)));
        for pt in [[0.3, -1.2], [2.0, 5.0]] {
            assert_eq!(tension(&harmonic, &pt, &e2).unwrap(), c(0.0, 0.0));
            assert_eq!(tension(&radial, &pt, &e2).unwrap(), c(4.0, 0.0));
            assert_eq!(tension(&radial, &pt, &l2).unwrap(), c(0.0, 0.0));
        }
        assert!(tension(&radial, &[1.0, 1.0], &MetricSignature::euclidean(3)).is_err());
    }

    #[test]
    fn conformality_examples() {
        let e2 = MetricSignature::euclidean(2);
        let iso = ScalarField::polynomial("c.x", &(&x(2, 0) + &x(2, 1).scale(&GaussRat::i())));
        assert_eq!(
            conformality(&iso, &iso, &[0.4, 0.9], &e2).unwrap(),
            c(0.0, 0.0)
        );
        let x1 = ScalarField::polynomial("x1", &x(2, 0));
        let x2 = ScalarField::polynomial("x2", &x(2, 1));
        assert_eq!(
            conformality(&x1, &x2, &[0.4, 0.9], &e2).unwrap(),
            c(0.0, 0.0)
        );

        let l4 = MetricSignature::lorentzian(4);
        let num = ScalarField::polynomial("x1+ix2", &(&x(4, 0) + &x(4, 1).scale(&GaussRat::i())));
        let den = ScalarField::polynomial("x3-x4", &(&x(4, 2) - &x(4, 3)));
        let pt = [0.1, 0.2, 0.3, 0.9];
        assert_eq!(conformality(&num, &num, &pt, &l4).unwrap(), c(0.0, 0.0));
        assert_eq!(conformality(&den, &den, &pt, &l4).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn grad_examples() {
        let e2 = MetricSignature::euclidean(2);
        let f = ScalarField::polynomial("x1x2", &(&x(2, 0) * &x(2, 1)));
        assert_eq!(
            grad_complex(&f, &[2.0, 3.0], &e2).unwrap(),
            vec![c(3.0, 0.0), c(2.0, 0.0)]
        );
        let l2 = MetricSignature::lorentzian(2);
        assert_eq!(
            grad_complex(&f, &[2.0, 3.0], &l2).unwrap(),
            vec![c(3.0, 0.0), c(-2.0, 0.0)]
        );
    }

    #[test]
    fn radial_invariance_examples() {
        let h = hopf();
        assert!(check_radial_invariance(&h, &[1.0, 0.0, 2.0, 0.0], &[3.0]).unwrap());
        let lin = ScalarField::polynomial("x1", &x(2, 0));
        assert!(!check_radial_invariance(&lin, &[1.0, 0.0], &[2.0]).unwrap());
        assert!(check_radial_invariance(&lin, &[1.0, 0.0], &[-1.0]).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let f = ScalarField::polynomial("x^6", &x(1, 0).pow(6));
        assert!(matches!(f.value(&[1e200]), Err(Error::Overflow(_))));
    }

    #[test]
    fn signature_invariants() {
        assert!(MetricSignature::new(0, false).is_err());
        assert_eq!(
            MetricSignature::lorentzian(3).weights(),
            vec![1.0, 1.0, -1.0]
        );
        assert_eq!(MetricSignature::euclidean(3).weights(), vec![1.0, 1.0, 1.0]);
        assert_eq!(
            MetricSignature::lorentzian(2).inner(&[1.0, 2.0], &[1.0, 2.0]),
            -3.0
        );
    }
}
