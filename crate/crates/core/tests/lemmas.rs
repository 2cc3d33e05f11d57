use std::time::Instant;

use coxwitness::algebra::RatElement;
use coxwitness::context::Context;
use coxwitness::lemmas::{induced_from_normalizer, normalize_quasi, property_suites, verify_lemmas};
use coxwitness::{Cyclo, Rational};

#[test]
fn lemma_suite_per_group() {
    for label in ["A1", "A2", "A3", "B2", "B3", "H3", "I2(5)", "I2(8)", "A1xA1", "A2xA1", "D4", "A4", "B4"] {
        let ctx = Context::new(label).unwrap();
        let t = Instant::now();
        let v = verify_lemmas(&ctx, 7).unwrap();
        let failed: Vec<_> = v.checks.failures().map(|c| (c.name.clone(), c.detail.clone())).collect();
        eprintln!("{label}: {} checks in {:?}", v.checks.items().len(), t.elapsed());
        assert!(failed.is_empty(), "{label}: {failed:?}");
    }
}

#[test]
fn a1_quasi_idempotent_normalized() {
    let ctx = Context::new("A1").unwrap();
    let g = &ctx.group;
    let x = RatElement::sum_of(g, &[0, 1]);
    let e = normalize_quasi(g, &x).unwrap();
    assert_eq!(e.coeff(0), &Rational::new(1, 2));
    assert_eq!(e.coeff(1), &Rational::new(1, 2));
    assert!(normalize_quasi(g, &RatElement::basis(g, 1)).is_none());
}

#[test]
fn a2_reflection_shape_is_induced() {
    let ctx = Context::new("A2").unwrap();
    let (e, a) = induced_from_normalizer(&ctx, 0b01).unwrap();
    let ints = |v: &[i64]| v.iter().map(|&k| Cyclo::from_int(k)).collect::<Vec<_>>();
    assert_eq!(e.values(), ints(&[3, -1, 0]).as_slice());
    assert_eq!(a.values(), ints(&[3, 1, 0]).as_slice());
}

#[test]
fn randomized_suites_small() {
    let suites = property_suites(3, 2000).unwrap();
    assert_eq!(suites.len(), 7);
    for s in &suites {
        assert!(s.samples >= 2000);
        assert!(s.passed(), "{}: {:?}", s.name, s.first_failure);
    }
}

#[test]
fn randomized_suites_are_seeded() {
    let a: Vec<_> = property_suites(9, 500).unwrap().iter().map(|s| s.to_json()).collect();
    let b: Vec<_> = property_suites(9, 500).unwrap().iter().map(|s| s.to_json()).collect();
    assert_eq!(a, b);
}

#[test]
fn lemma_report_is_deterministic() {
    let ctx = Context::new("B3").unwrap();
    let a = verify_lemmas(&ctx, 2).unwrap().to_json();
    let b = verify_lemmas(&Context::new("B3").unwrap(), 2).unwrap().to_json();
    assert_eq!(a, b);
}
