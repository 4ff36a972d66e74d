//! Orbit invariance, scale covariance and duality consistency of the
//! classifier over the bundled registry.

mod common;

use std::collections::HashMap;

use common::{config, registry};
use proptest::prelude::*;
use stabform::classify::{classify, orbit_sample, Discriminant, FormType};
use stabform::exterior::hodge_star;
use stabform::exterior::pullback;
use stabform::{LinMap, Matrix, Scalar};

#[test]
fn bundled_registry_verifies() {
    let reg = registry();
    assert!(reg.len() >= 8);
    for entry in reg.entries() {
        assert_eq!(entry.mismatch(), None, "{}", entry.name);
        assert_eq!(entry.form.dim(), entry.dim);
    }
}

#[test]
fn registry_covers_all_seven_types() {
    let mut seen: Vec<FormType> = registry()
        .entries()
        .iter()
        .map(|e| e.report.form_type)
        .filter(|t| *t != FormType::NotStable)
        .collect();
    seen.sort();
    seen.dedup();
    assert_eq!(seen, FormType::ALL[..7].to_vec());
}

#[test]
fn orbit_invariance() {
    for entry in registry().entries() {
        let base = &entry.report;
        for (_, moved) in orbit_sample(&entry.form, 1000 + entry.dim as u64, 25).unwrap() {
            let r = classify(&moved).unwrap();
            assert_eq!(r.form_type, base.form_type, "{}", entry.name);
            assert_eq!(r.stabilizer_dim, base.stabilizer_dim, "{}", entry.name);
            assert_eq!(r.rank, base.rank, "{}", entry.name);
            assert_eq!(r.discriminant, base.discriminant, "{}", entry.name);
        }
    }
}

proptest! {
    #![proptest_config(config(25, 0x5eed_0003))]

    #[test]
    fn scale_covariance(index in 0usize..64, num in -7i64..=7, den in 1i64..=5) {
        prop_assume!(num != 0);
        let entries = registry().entries();
        let entry = &entries[index % entries.len()];
        let c = Scalar::ratio(num, den);
        let r = classify(&entry.form.scale(&c)).unwrap();
        prop_assert_eq!(r.form_type, entry.report.form_type);
        prop_assert_eq!(r.stabilizer_dim, entry.report.stabilizer_dim);
        // Only the sign of λ is compared; its value scales by c⁴.
        prop_assert_eq!(r.discriminant, entry.report.discriminant);
    }
}

#[test]
fn hodge_dual_has_same_type() {
    for entry in registry().entries() {
        let dual = hodge_star(&entry.form);
        let r = classify(&dual).unwrap();
        assert_eq!(r.form_type, entry.report.form_type, "{}", entry.name);
        assert_eq!(r.stable, entry.report.stable, "{}", entry.name);
        assert_eq!(
            r.stabilizer_dim, entry.report.stabilizer_dim,
            "{}",
            entry.name
        );
    }
}

#[test]
fn discriminants_separate_types_within_each_dimension() {
    let mut by_dim: HashMap<usize, HashMap<Discriminant, FormType>> = HashMap::new();
    for entry in registry().entries() {
        let r = &entry.report;
        if r.form_type == FormType::NotStable {
            continue;
        }
        let seen = by_dim.entry(r.n).or_default();
        if let Some(prev) = seen.insert(r.discriminant, r.form_type) {
            assert_eq!(prev, r.form_type, "one discriminant, two types");
        }
    }
    for (dim, seen) in by_dim {
        let expected = if dim == 8 { 3 } else { 2 };
        assert_eq!(seen.len(), expected, "dimension {dim}");
    }
}

#[test]
fn negative_control_is_degenerate_and_unstable() {
    let r = &registry().get("gamma1_padded").unwrap().report;
    assert!(!r.stable);
    assert!(!r.multisymplectic);
    assert_eq!(r.form_type, FormType::NotStable);
}

#[test]
fn omega2_is_the_standard_compact_form_after_reflecting_e7() {
    let mut diag = vec![Scalar::from_int(1); 7];
    diag[6] = Scalar::from_int(-1);
    let g = LinMap::new(Matrix::diagonal(&diag)).unwrap();
    let reflected = pullback(&g, common::form("omega2")).unwrap();
    assert_eq!(&reflected, common::form("g2_standard"));
    assert_eq!(
        registry().get("omega2").unwrap().report.form_type,
        FormType::W1_G2
    );
}
