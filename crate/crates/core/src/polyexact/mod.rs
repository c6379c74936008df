//! Exact polynomial calculus over the Gaussian rationals: flat tension field
//! and conformality operator, quotient-rule numerators, eigenfamily checks,
//! the quadric coefficient variety and Euclidean/Lorentzian dualization.

mod gauss;
mod poly;
mod quintuple;

pub use gauss::{rational_sqrt, GaussRat};
pub use poly::{Exponents, MultiPoly, NumPoly};
pub use quintuple::{
    criticality_det, criticality_det_product, planar_quadratic_conformality, quadric_poly,
    variety_point, variety_point_numeric, Branch, Quintuple, QuintupleF64,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::MetricSignature;

fn check_dim(p: &MultiPoly, sig: &MetricSignature) -> Result<()> {
    if p.n_vars() != sig.dimension() {
        return Err(Error::DimensionMismatch {
            expected: sig.dimension(),
            got: p.n_vars(),
        });
    }
    Ok(())
}

/// Exact `sum_k w_k d^2 p / dx_k^2`.
pub fn poly_tension(p: &MultiPoly, sig: &MetricSignature) -> Result<MultiPoly> {
    check_dim(p, sig)?;
    let mut out = MultiPoly::zero(p.n_vars());
    for (k, w) in sig.weights().into_iter().enumerate() {
        let d2 = p.derivative(k).derivative(k);
        out = if w < 0.0 { &out - &d2 } else { &out + &d2 };
    }
    Ok(out)
}

/// Exact `sum_k w_k (dp/dx_k)(dq/dx_k)`.
pub fn poly_conformality(p: &MultiPoly, q: &MultiPoly, sig: &MetricSignature) -> Result<MultiPoly> {
    check_dim(p, sig)?;
    check_dim(q, sig)?;
    let mut out = MultiPoly::zero(p.n_vars());
    for (k, w) in sig.weights().into_iter().enumerate() {
        let t = &p.derivative(k) * &q.derivative(k);
        out = if w < 0.0 { &out - &t } else { &out + &t };
    }
    Ok(out)
}

/// A quotient `num / den` of polynomials in the same variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFn {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        if num.n_vars() != den.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: num.n_vars(),
                got: den.n_vars(),
            });
        }
        Ok(RationalFn { num, den })
    }

    pub fn polynomial(p: MultiPoly) -> Self {
        let n = p.n_vars();
        RationalFn {
            num: p,
            den: MultiPoly::one(n),
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn n_vars(&self) -> usize {
        self.num.n_vars()
    }

    /// Homogeneity degree `deg(num) - deg(den)` when both are homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let dn = if self.num.is_zero() {
            Some(0)
        } else {
            self.num.homogeneous_degree()
        }?;
        let dd = self.den.homogeneous_degree()?;
        Some(dn as i64 - dd as i64)
    }
}

/// `N` with `tau(P/Q) = N / Q^3` off the zero set of `Q`:
/// `N = tau(P) Q^2 - 2 kappa(P,Q) Q - P tau(Q) Q + 2 P kappa(Q,Q)`.
pub fn ratfn_tension_num(r: &RationalFn, sig: &MetricSignature) -> Result<MultiPoly> {
    let (p, q) = (&r.num, &r.den);
    let tp = poly_tension(p, sig)?;
    let tq = poly_tension(q, sig)?;
    let kpq = poly_conformality(p, q, sig)?;
    let kqq = poly_conformality(q, q, sig)?;
    let two = GaussRat::real(2);
    let a = &tp * &(q * q);
    let b = (&kpq * q).scale(&two);
    let c = &(p * &tq) * q;
    let d = (p * &kqq).scale(&two);
    Ok(&(&(&a - &b) - &c) + &d)
}

/// `M` with `kappa(P/Q, P/Q) = M / Q^4` off the zero set of `Q`:
/// `M = kappa(P,P) Q^2 - 2 P Q kappa(P,Q) + P^2 kappa(Q,Q)`.
pub fn ratfn_conf_num(r: &RationalFn, sig: &MetricSignature) -> Result<MultiPoly> {
    let (p, q) = (&r.num, &r.den);
    let kpp = poly_conformality(p, p, sig)?;
    let kpq = poly_conformality(p, q, sig)?;
    let kqq = poly_conformality(q, q, sig)?;
    let a = &kpp * &(q * q);
    let b = (&(p * q) * &kpq).scale(&GaussRat::real(2));
    let c = &(p * p) * &kqq;
    Ok(&(&a - &b) + &c)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenReport {
    pub lambda: GaussRat,
    pub mu: GaussRat,
    pub holds: bool,
    /// Name and value of the first non-vanishing residual.
    pub witness: Option<(String, MultiPoly)>,
}

/// Checks `tau(f) = lambda f` and `kappa(f, g) = mu f g` for `f, g` in `{p, q}`.
pub fn verify_eigen_pair(
    p: &MultiPoly,
    q: &MultiPoly,
    lambda: &GaussRat,
    mu: &GaussRat,
    sig: &MetricSignature,
) -> Result<EigenReport> {
    verify_eigenfamily(&[p.clone(), q.clone()], lambda, mu, sig)
}

/// Eigenfamily check for any finite family; residual names index the family.
pub fn verify_eigenfamily(
    family: &[MultiPoly],
    lambda: &GaussRat,
    mu: &GaussRat,
    sig: &MetricSignature,
) -> Result<EigenReport> {
    let mut witness = None;
    'outer: for (i, f) in family.iter().enumerate() {
        let r = &poly_tension(f, sig)? - &f.scale(lambda);
        if !r.is_zero() {
            witness = Some((format!("tau(f{i}) - lambda f{i}"), r));
            break;
        }
        for (j, g) in family.iter().enumerate().skip(i) {
            let r = &poly_conformality(f, g, sig)? - &(f * g).scale(mu);
            if !r.is_zero() {
                witness = Some((format!("kappa(f{i}, f{j}) - mu f{i} f{j}"), r));
                break 'outer;
            }
        }
    }
    Ok(EigenReport {
        lambda: lambda.clone(),
        mu: mu.clone(),
        holds: witness.is_none(),
        witness,
    })
}

/// Solves `target = c * base` for a scalar `c`, if possible.
fn scalar_ratio(target: &MultiPoly, base: &MultiPoly) -> Option<GaussRat> {
    if target.is_zero() {
        return Some(GaussRat::zero());
    }
    let (e, c) = base.terms().next()?;
    let ratio = &target.coeff(e) / c;
    (base.scale(&ratio) == *target).then_some(ratio)
}

/// Finds `(lambda, mu)` for which the family is an eigenfamily, if any.
pub fn detect_eigenvalues(
    family: &[MultiPoly],
    sig: &MetricSignature,
) -> Result<Option<(GaussRat, GaussRat)>> {
    let Some(f) = family.iter().find(|f| !f.is_zero()) else {
        return Ok(None);
    };
    let Some(lambda) = scalar_ratio(&poly_tension(f, sig)?, f) else {
        return Ok(None);
    };
    let Some(mu) = scalar_ratio(&poly_conformality(f, f, sig)?, &(f * f)) else {
        return Ok(None);
    };
    let report = verify_eigenfamily(family, &lambda, &mu, sig)?;
    Ok(report.holds.then_some((lambda, mu)))
}

/// Substitutes `x_n -> i x_n` in the last variable: each term is multiplied by
/// `i^e` with `e` the exponent of the last variable.
pub fn dualize(p: &MultiPoly) -> MultiPoly {
    let last = p.n_vars().saturating_sub(1);
    if p.n_vars() == 0 {
        return p.clone();
    }
    p.map_coeffs(|e, c| c * &GaussRat::i_pow(e[last]))
}
