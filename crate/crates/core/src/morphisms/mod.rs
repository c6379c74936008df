//! Catalog of harmonic morphisms: each map is packaged with its ambient space,
//! a jet-evaluable field, an optional exact rational form and its domain.

mod build;
mod catalog;
mod certify;

pub use build::{
    complex_coords, composite_phi_hat, holo_pair, hopf, hopf_dual, hyperbolic_dual,
    hyperbolic_restriction, linear_isotropic, linear_isotropic_numeric, planar_quadratic,
    polynomial_map, quadric_p, rational_combination, sphere_restriction,
};
pub use catalog::{catalog_names, lookup, CatalogParams};
pub use certify::{
    certify_exact, certify_numeric, check_exact_agreement, pullback_check, relative_conformality,
    relative_tension, rng_from_seed, sample_domain_points, sample_points, ExactCertificate,
    NumericCertificate, PullbackReport, CERT_SAMPLES, CERT_TOL, DEFAULT_SEED, PULLBACK_FUNCTIONS,
    PULLBACK_SAMPLES, PULLBACK_TOL,
};

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::fields::{DomainPredicate, Jet2, MetricSignature, ScalarField};
use crate::polyexact::{Quintuple, RationalFn};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbientKind {
    Euclidean,
    Lorentzian,
    Sphere,
    Hyperbolic,
}

/// Flat space or one of the hypersurfaces `|x|^2 = 1`, `<x, x>_L = -1` inside
/// it; `dimension` is always that of the flat ambient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AmbientSpace {
    pub kind: AmbientKind,
    pub dimension: usize,
}

impl AmbientSpace {
    pub fn euclidean(dimension: usize) -> Self {
        AmbientSpace {
            kind: AmbientKind::Euclidean,
            dimension,
        }
    }

    pub fn lorentzian(dimension: usize) -> Self {
        AmbientSpace {
            kind: AmbientKind::Lorentzian,
            dimension,
        }
    }

    pub fn sphere(dimension: usize) -> Self {
        AmbientSpace {
            kind: AmbientKind::Sphere,
            dimension,
        }
    }

    pub fn hyperbolic(dimension: usize) -> Self {
        AmbientSpace {
            kind: AmbientKind::Hyperbolic,
            dimension,
        }
    }

    pub fn is_lorentzian(&self) -> bool {
        matches!(self.kind, AmbientKind::Lorentzian | AmbientKind::Hyperbolic)
    }

    pub fn is_hypersurface(&self) -> bool {
        matches!(self.kind, AmbientKind::Sphere | AmbientKind::Hyperbolic)
    }

    pub fn signature(&self) -> MetricSignature {
        if self.is_lorentzian() {
            MetricSignature::lorentzian(self.dimension)
        } else {
            MetricSignature::euclidean(self.dimension)
        }
    }

    /// `|x|^2 - 1` on the sphere, `<x, x>_L + 1` on the hyperboloid.
    pub fn constraint(&self, x: &[f64]) -> Option<f64> {
        let n2 = self.signature().inner(x, x);
        match self.kind {
            AmbientKind::Sphere => Some(n2 - 1.0),
            AmbientKind::Hyperbolic => Some(n2 + 1.0),
            _ => None,
        }
    }

    /// Radial projection onto the hypersurface; `None` if `x` has no image
    /// (the origin, or a point outside the cone).
    pub fn project(&self, x: &[f64]) -> Option<Vec<f64>> {
        let n2 = self.signature().inner(x, x);
        let r = match self.kind {
            AmbientKind::Sphere if n2 > 0.0 => n2.sqrt(),
            AmbientKind::Hyperbolic if n2 < 0.0 => (-n2).sqrt(),
            AmbientKind::Euclidean | AmbientKind::Lorentzian => 1.0,
            _ => return None,
        };
        Some(x.iter().map(|v| v / r).collect())
    }
}

impl fmt::Display for AmbientSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dimension;
        match self.kind {
            AmbientKind::Euclidean => write!(f, "R^{n}"),
            AmbientKind::Lorentzian => write!(f, "R^{n}_1"),
            AmbientKind::Sphere => write!(f, "S^{} in R^{n}", n - 1),
            AmbientKind::Hyperbolic => write!(f, "H^{} in R^{n}_1", n - 1),
        }
    }
}

/// A complex-valued map with everything needed to verify it.
#[derive(Clone, Debug)]
pub struct MorphismSpec {
    name: String,
    ambient: AmbientSpace,
    field: ScalarField,
    exact_form: Option<RationalFn>,
    degree: i64,
    quintuple: Option<Quintuple>,
    globally_defined: bool,
}

impl MorphismSpec {
    pub(crate) fn new(
        name: impl Into<String>,
        ambient: AmbientSpace,
        field: ScalarField,
        exact_form: Option<RationalFn>,
        degree: i64,
    ) -> Self {
        let name = name.into();
        MorphismSpec {
            field: field.renamed(name.clone()),
            name,
            ambient,
            exact_form,
            degree,
            quintuple: None,
            globally_defined: false,
        }
    }

    pub(crate) fn with_quintuple(mut self, q: Quintuple) -> Self {
        self.quintuple = Some(q);
        self
    }

    pub(crate) fn with_globally_defined(mut self, g: bool) -> Self {
        self.globally_defined = g;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self.field = self.field.renamed(self.name.clone());
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient(&self) -> AmbientSpace {
        self.ambient
    }

    pub fn signature(&self) -> MetricSignature {
        self.ambient.signature()
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn exact_form(&self) -> Option<&RationalFn> {
        self.exact_form.as_ref()
    }

    /// Homogeneity degree; 0 for maps restricted to a hypersurface.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn domain(&self) -> &DomainPredicate {
        self.field.domain()
    }

    /// The quadric coefficients, for maps built from one.
    pub fn quintuple(&self) -> Option<&Quintuple> {
        self.quintuple.as_ref()
    }

    /// True when the excluded zero sets provably miss the cone, so the map is
    /// defined on all of it.
    pub fn globally_defined(&self) -> bool {
        self.globally_defined
    }

    pub fn n_vars(&self) -> usize {
        self.field.n_vars()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.field.contains(x)
    }

    pub fn value(&self, x: &[f64]) -> Result<Complex64> {
        self.field.value(x)
    }

    pub fn jet(&self, x: &[f64]) -> Result<Jet2> {
        self.field.jet(x)
    }

    pub fn summary(&self) -> SpecSummary {
        SpecSummary {
            name: self.name.clone(),
            ambient: self.ambient.to_string(),
            degree: self.degree,
            exact: self.exact_form.is_some(),
            numerator: self.exact_form.as_ref().map(|r| r.num().to_string()),
            denominator: self.exact_form.as_ref().map(|r| r.den().to_string()),
            domain: self.domain().summary(),
            globally_defined: self.globally_defined,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpecSummary {
    pub name: String,
    pub ambient: String,
    pub degree: i64,
    pub exact: bool,
    pub numerator: Option<String>,
    pub denominator: Option<String>,
    pub domain: crate::fields::DomainSummary,
    pub globally_defined: bool,
}
