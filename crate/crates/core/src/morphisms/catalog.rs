use super::{
    composite_phi_hat, hopf, hopf_dual, hyperbolic_dual, hyperbolic_restriction, linear_isotropic,
    planar_quadratic, quadric_p, sphere_restriction, MorphismSpec,
};
use crate::error::{Error, Result};
use crate::polyexact::{variety_point, Branch, GaussRat, MultiPoly, Quintuple};

/// The entries exercised by the acceptance suite.
pub fn catalog_names() -> Vec<&'static str> {
    vec![
        "linear-isotropic",
        "planar-quadratic",
        "quadric",
        "phi-even:d=2,n=1",
        "phi-even:d=2,n=2",
        "phi-even:d=4,n=2",
        "phi-odd:d=1,n=2",
        "phi-odd:d=3,n=2",
        "phi-dual:d=2,n=1",
        "phi-dual:d=2,n=2",
        "phi-dual:d=3,n=2",
        "sphere-phi:d=3,n=2",
        "hyperbolic-phi:d=2,n=2",
        "s4-quadric",
        "h4-quadric",
        "hopf",
        "hopf-dual",
    ]
}

/// Parameters accepted after the colon in a catalog name, e.g.
/// `phi-odd:d=3,n=2` or `s4-quadric:b1=5,b2=12,branch=-`.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalogParams {
    pub d: Option<u32>,
    pub n: Option<usize>,
    pub b1: GaussRat,
    pub b2: GaussRat,
    pub branch: Branch,
}

impl Default for CatalogParams {
    fn default() -> Self {
        CatalogParams {
            d: None,
            n: None,
            b1: GaussRat::real(3),
            b2: GaussRat::real(4),
            branch: Branch::Plus,
        }
    }
}

impl CatalogParams {
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = CatalogParams::default();
        for kv in s.split(',').map(str::trim).filter(|kv| !kv.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{kv}`")))?;
            let bad = |_| Error::Parse(format!("bad value for `{k}`: `{v}`"));
            match k.trim() {
                "d" => out.d = Some(v.trim().parse().map_err(bad)?),
                "n" => out.n = Some(v.trim().parse().map_err(bad)?),
                "b1" => out.b1 = v.trim().parse()?,
                "b2" => out.b2 = v.trim().parse()?,
                "branch" => out.branch = v.trim().parse()?,
                other => return Err(Error::Parse(format!("unknown parameter `{other}`"))),
            }
        }
        Ok(out)
    }

    pub fn quintuple(&self) -> Result<Quintuple> {
        variety_point(&self.b1, &self.b2, self.branch)
    }

    /// `P_d = z_1^d` (zero when `n = 1`) and `Q_d = z_n^d`.
    pub fn fixture(&self, default_d: u32, default_n: usize) -> Result<(MultiPoly, MultiPoly, u32)> {
        let d = self.d.unwrap_or(default_d);
        let n = self.n.unwrap_or(default_n);
        if d == 0 || n == 0 {
            return Err(Error::InvalidArgument("d and n must be positive".into()));
        }
        let p = if n >= 2 {
            MultiPoly::var(n, 0).pow(d)
        } else {
            MultiPoly::zero(n)
        };
        Ok((p, MultiPoly::var(n, n - 1).pow(d), d))
    }
}

/// Builds a catalog entry by name; the returned spec carries `name` verbatim.
pub fn lookup(name: &str) -> Result<MorphismSpec> {
    let (base, params) = name.split_once(':').unwrap_or((name, ""));
    let params = CatalogParams::parse(params)?;
    let g = GaussRat::from_ints;
    let spec = match base {
        "linear-isotropic" => linear_isotropic(&[g(3, 0), g(4, 0), g(0, 5)])?,
        "planar-quadratic" => planar_quadratic(&g(1, 0), &g(0, 2))?,
        "quadric" => quadric_p(&params.quintuple()?)?,
        "phi-even" | "phi-odd" | "sphere-phi" | "s4-quadric" => {
            let (default_d, default_n) = match base {
                "phi-odd" => (3, 2),
                _ => (2, 1),
            };
            let (p, q, d) = params.fixture(default_d, default_n)?;
            let parity_ok = match base {
                "phi-even" => d % 2 == 0,
                "phi-odd" => d % 2 == 1,
                _ => true,
            };
            if !parity_ok {
                return Err(Error::InvalidArgument(format!(
                    "`{base}` does not admit d = {d}"
                )));
            }
            let spec = composite_phi_hat(&params.quintuple()?, &p, &q, d)?;
            if matches!(base, "sphere-phi" | "s4-quadric") {
                sphere_restriction(&spec)?
            } else {
                spec
            }
        }
        "phi-dual" | "hyperbolic-phi" | "h4-quadric" => {
            let (p, q, d) = params.fixture(2, 1)?;
            let spec = hyperbolic_dual(&params.quintuple()?, &p, &q, d)?;
            if base == "phi-dual" {
                spec
            } else {
                hyperbolic_restriction(&spec)?
            }
        }
        "hopf" => hopf(),
        "hopf-dual" => hopf_dual(),
        _ => return Err(Error::UnknownCatalogEntry(name.to_string())),
    };
    Ok(spec.renamed(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::AmbientKind;

    #[test]
    fn every_listed_name_builds() {
        for name in catalog_names() {
            let s = lookup(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(s.name(), name);
            if s.ambient().is_hypersurface() {
                assert_eq!(s.degree(), 0);
            }
        }
    }

    #[test]
    fn quadric_entries() {
        let s4 = lookup("s4-quadric").unwrap();
        assert_eq!(s4.ambient().kind, AmbientKind::Sphere);
        assert_eq!(s4.n_vars(), 5);
        let h4 = lookup("h4-quadric").unwrap();
        assert_eq!(h4.ambient().kind, AmbientKind::Hyperbolic);
        assert!(h4.globally_defined());
        let other = lookup("s4-quadric:b1=5,b2=12,branch=-").unwrap();
        assert_eq!(other.quintuple().unwrap().a1, GaussRat::from_ints(0, -13));
    }

    #[test]
    fn bad_names() {
        assert!(matches!(lookup("nope"), Err(Error::UnknownCatalogEntry(_))));
        assert!(matches!(
            lookup("phi-even:d=3,n=2"),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(lookup("phi-even:q=1"), Err(Error::Parse(_))));
        assert!(matches!(
            lookup("quadric:b1=1,b2=i"),
            Err(Error::DegenerateParameters)
        ));
    }
}
