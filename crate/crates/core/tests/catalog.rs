use minimorph::fields::check_radial_invariance;
use minimorph::morphisms::{
    catalog_names, certify_exact, certify_numeric, check_exact_agreement, lookup, pullback_check,
    sample_domain_points, CERT_SAMPLES, CERT_TOL, DEFAULT_SEED, PULLBACK_SAMPLES, PULLBACK_TOL,
};

#[test]
fn every_entry_is_a_certified_harmonic_morphism() {
    for name in catalog_names() {
        let spec = lookup(name).unwrap();
        if spec.exact_form().is_some() {
            let c = certify_exact(&spec).unwrap();
            assert!(c.pass, "{name}: {c:?}");
        }
        let c = certify_numeric(&spec, CERT_SAMPLES, CERT_TOL, DEFAULT_SEED).unwrap();
        assert!(c.pass, "{name}: {c:?}");
    }
}

#[test]
fn pullbacks_of_harmonic_functions_are_harmonic() {
    for name in catalog_names() {
        let spec = lookup(name).unwrap();
        let r = pullback_check(&spec, PULLBACK_SAMPLES, PULLBACK_TOL, DEFAULT_SEED).unwrap();
        assert!(r.pass, "{name}: {r:?}");
    }
}

#[test]
fn exact_forms_agree_with_fields() {
    for name in catalog_names() {
        let spec = lookup(name).unwrap();
        if spec.exact_form().is_some() {
            let err = check_exact_agreement(&spec, 50, DEFAULT_SEED).unwrap();
            assert!(err <= 1e-10, "{name}: {err:e}");
        }
    }
}

#[test]
fn restricted_maps_are_radially_invariant() {
    for name in catalog_names() {
        let spec = lookup(name).unwrap();
        if !spec.ambient().is_hypersurface() {
            continue;
        }
        for x in sample_domain_points(&spec, 100, DEFAULT_SEED).unwrap() {
            assert!(
                check_radial_invariance(spec.field(), &x, &[0.5, 2.0, 7.3]).unwrap(),
                "{name} at {x:?}"
            );
        }
    }
}
