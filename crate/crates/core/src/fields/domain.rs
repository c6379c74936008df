use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::polyexact::{MultiPoly, NumPoly};

/// Relative threshold below which a polynomial value counts as zero for
/// domain membership.
pub const DOMAIN_EPS: f64 = 1e-12;

#[derive(Clone)]
struct Excluded {
    exact: MultiPoly,
    numeric: NumPoly,
}

impl Excluded {
    fn new(p: MultiPoly) -> Self {
        let numeric = p.to_numeric();
        Excluded { exact: p, numeric }
    }

    /// Scale of `|p(x)|` for a polynomial of this degree at `x`.
    fn scale(&self, x: &[f64]) -> f64 {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        (1.0 + r).powi(self.numeric.total_degree() as i32)
    }
}

type PointFn = dyn Fn(&[f64]) -> Complex64 + Send + Sync;

/// A zero set given only by a numeric function (used when a composite
/// denominator is not a polynomial).
#[derive(Clone)]
struct ExcludedFn {
    name: String,
    f: Arc<PointFn>,
}

/// Explicit description of where a field may be evaluated: the complement of
/// the listed zero sets, off the branch cut `p(x) in (-inf, 0]`, optionally
/// inside the Lorentz cone `<x, x>_L < 0` and away from the origin.
#[derive(Clone, Default)]
pub struct DomainPredicate {
    excluded: Vec<Excluded>,
    excluded_fns: Vec<ExcludedFn>,
    branch_cut: Option<Excluded>,
    lorentz_cone: bool,
    exclude_origin: bool,
}

impl DomainPredicate {
    pub fn everywhere() -> Self {
        DomainPredicate::default()
    }

    pub fn excluding_zeros(mut self, p: MultiPoly) -> Self {
        if p.as_constant().is_none_or(|c| c.is_zero()) {
            self.excluded.push(Excluded::new(p));
        }
        self
    }

    /// Excludes points where `|f(x)| <= DOMAIN_EPS` or `f(x)` is not finite.
    /// Checked after every other condition, so `f` may assume them.
    pub fn excluding_zeros_of(
        mut self,
        name: impl Into<String>,
        f: impl Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        self.excluded_fns.push(ExcludedFn {
            name: name.into(),
            f: Arc::new(f),
        });
        self
    }

    pub fn with_branch_cut(mut self, p: MultiPoly) -> Self {
        self.branch_cut = Some(Excluded::new(p));
        self
    }

    pub fn inside_lorentz_cone(mut self) -> Self {
        self.lorentz_cone = true;
        self
    }

    pub fn excluding_origin(mut self) -> Self {
        self.exclude_origin = true;
        self
    }

    /// Points allowed by both predicates.
    pub fn intersect(&self, other: &DomainPredicate) -> DomainPredicate {
        let mut out = self.clone();
        out.excluded.extend(other.excluded.iter().cloned());
        out.excluded_fns.extend(other.excluded_fns.iter().cloned());
        if out.branch_cut.is_none() {
            out.branch_cut = other.branch_cut.clone();
        }
        out.lorentz_cone |= other.lorentz_cone;
        out.exclude_origin |= other.exclude_origin;
        out
    }

    pub fn excluded_zero_sets(&self) -> impl Iterator<Item = &MultiPoly> {
        self.excluded.iter().map(|e| &e.exact)
    }

    pub fn branch_cut(&self) -> Option<&MultiPoly> {
        self.branch_cut.as_ref().map(|e| &e.exact)
    }

    pub fn requires_lorentz_cone(&self) -> bool {
        self.lorentz_cone
    }

    pub fn excludes_origin(&self) -> bool {
        self.exclude_origin
    }

    /// Total: every finite point gets a verdict; non-finite points are outside.
    pub fn contains(&self, x: &[f64]) -> bool {
        if x.iter().any(|v| !v.is_finite()) {
            return false;
        }
        if self.exclude_origin && x.iter().all(|&v| v == 0.0) {
            return false;
        }
        if self.lorentz_cone {
            let n = x.len();
            let norm: f64 = x[..n - 1].iter().map(|v| v * v).sum::<f64>() - x[n - 1] * x[n - 1];
            if norm.is_nan() || norm >= 0.0 {
                return false;
            }
        }
        for e in &self.excluded {
            if e.numeric.eval_real(x).norm() <= DOMAIN_EPS * e.scale(x) {
                return false;
            }
        }
        if let Some(cut) = &self.branch_cut {
            let w = cut.numeric.eval_real(x);
            let eps = DOMAIN_EPS * cut.scale(x);
            if w.im.abs() <= eps && w.re <= eps {
                return false;
            }
        }
        for e in &self.excluded_fns {
            let v = (e.f)(x);
            if !v.is_finite() || v.norm() <= DOMAIN_EPS {
                return false;
            }
        }
        true
    }

    pub fn summary(&self) -> DomainSummary {
        DomainSummary {
            excluded_zero_sets: self.excluded.iter().map(|e| e.exact.to_string()).collect(),
            excluded_functions: self.excluded_fns.iter().map(|e| e.name.clone()).collect(),
            branch_cut: self.branch_cut.as_ref().map(|e| e.exact.to_string()),
            lorentz_cone: self.lorentz_cone,
            exclude_origin: self.exclude_origin,
        }
    }
}

impl fmt::Debug for DomainPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.summary().fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DomainSummary {
    pub excluded_zero_sets: Vec<String>,
    pub excluded_functions: Vec<String>,
    pub branch_cut: Option<String>,
    pub lorentz_cone: bool,
    pub exclude_origin: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexact::GaussRat;

    #[test]
    fn zero_set_exclusion() {
        let d = DomainPredicate::everywhere()
            .excluding_zeros(&MultiPoly::var(2, 0) - &MultiPoly::var(2, 1));
        assert!(d.contains(&[1.0, 2.0]));
        assert!(!d.contains(&[1.5, 1.5]));
        assert!(!d.contains(&[f64::NAN, 1.0]));
    }

    #[test]
    fn constant_nonzero_is_not_a_zero_set() {
        let d = DomainPredicate::everywhere().excluding_zeros(MultiPoly::one(2));
        assert_eq!(d.excluded_zero_sets().count(), 0);
        assert!(d.contains(&[0.0, 0.0]));
    }

    #[test]
    fn branch_cut_excludes_nonpositive_reals() {
        // p = x1 (real-valued): cut is x1 <= 0
        let d = DomainPredicate::everywhere().with_branch_cut(MultiPoly::var(1, 0));
        assert!(d.contains(&[0.5]));
        assert!(!d.contains(&[0.0]));
        assert!(!d.contains(&[-2.0]));
        // p = i x1 never hits the cut except at 0
        let d = DomainPredicate::everywhere()
            .with_branch_cut(MultiPoly::var(1, 0).scale(&GaussRat::i()));
        assert!(d.contains(&[-2.0]));
        assert!(!d.contains(&[0.0]));
    }

    #[test]
    fn function_zero_set() {
        let d = DomainPredicate::everywhere()
            .excluding_zeros_of("x1 - 1", |x| Complex64::new(x[0] - 1.0, 0.0));
        assert!(!d.contains(&[1.0]));
        assert!(d.contains(&[2.0]));
        assert_eq!(d.summary().excluded_functions, vec!["x1 - 1".to_string()]);
    }

    #[test]
    fn lorentz_cone_and_origin() {
        let d = DomainPredicate::everywhere().inside_lorentz_cone();
        assert!(d.contains(&[0.1, 0.2, 1.0]));
        assert!(!d.contains(&[0.0, 1.0, 1.0]));
        assert!(!d.contains(&[1.0, 0.0, 0.5]));
        let o = DomainPredicate::everywhere().excluding_origin();
        assert!(!o.contains(&[0.0, 0.0]));
        assert!(o.contains(&[0.0, 1e-300]));
    }
}
