use coxwitness::context::Context;
use coxwitness::coxeter::CoxeterGroup;
use coxwitness::report::Verification;
use coxwitness::typea::{
    relative_setup, type_a_components, type_a_parabolics, verify_rel_all, verify_section5, verify_section6,
    verify_theorem_rel,
};
use coxwitness::Error;

fn assert_passed(v: &Verification) {
    let failures: Vec<String> = v.checks.failures().map(|c| format!("{} {:?}", c.name, c.detail)).collect();
    assert!(failures.is_empty(), "{}: {failures:#?}", v.title);
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[test]
fn top_shape_n3_character() {
    let v = verify_section5(3).unwrap();
    assert_passed(&v);
    assert_eq!(v.data["char_E"], serde_json::json!(["2", "0", "-1"]));
    assert_eq!(v.data["dim_E"], 2);
}

#[test]
fn top_shape_all_n() {
    for n in 2..=6 {
        assert_passed(&verify_section5(n).unwrap());
    }
    assert!(verify_section5(7).is_err());
}

#[test]
fn every_partition() {
    for n in 2..=6 {
        for parts in partitions(n, n) {
            let v = verify_section6(&parts).unwrap();
            assert_passed(&v);
        }
    }
    let v = verify_section6(&[2, 2]).unwrap();
    assert_eq!(v.data["dim_E"], "3");
    assert_eq!(v.data["N_lambda"], 2);
    assert!(verify_section6(&[1, 2]).is_err());
}

#[test]
fn components_and_rejection() {
    let b3 = CoxeterGroup::from_label("B3").unwrap();
    assert_eq!(type_a_components(&b3, 0b110).unwrap(), vec![vec![1, 2]]);
    assert!(matches!(type_a_components(&b3, 0b011), Err(Error::NotTypeA(_))));
    let d4 = CoxeterGroup::from_label("D4").unwrap();
    assert!(matches!(type_a_components(&d4, 0b1111), Err(Error::NotTypeA(_))));
    assert_eq!(type_a_components(&d4, 0b1101).unwrap(), vec![vec![0], vec![2], vec![3]]);
}

#[test]
fn b3_flip_is_realized() {
    let ctx = Context::new("B3").unwrap();
    let setup = relative_setup(&ctx, 0b110).unwrap();
    assert_ne!(setup.g[0], 0);
    let v = verify_theorem_rel(&ctx, 0b110).unwrap();
    assert_passed(&v);
}

#[test]
fn b2_single_reflection() {
    let ctx = Context::new("B2").unwrap();
    let v = verify_theorem_rel(&ctx, 0b10).unwrap();
    assert_passed(&v);
    assert_eq!(v.data["phi_trivial_on_N_c"], true);
}

#[test]
fn all_groups_all_type_a_parabolics() {
    for label in ["A3", "A4", "B2", "B3", "B4", "D4", "H3", "I2(3)", "I2(4)", "I2(5)", "I2(6)", "I2(7)", "I2(8)"] {
        let ctx = Context::new(label).unwrap();
        let start = std::time::Instant::now();
        let all = verify_rel_all(&ctx);
        assert_eq!(all.len(), type_a_parabolics(&ctx).len());
        for v in &all {
            eprintln!(
                "{} gen_complement={} phi_trivial={}",
                v.title, v.data["generated_complement"], v.data["phi_trivial_on_N_c"]
            );
            assert_passed(v);
        }
        eprintln!("{label}: {:?}", start.elapsed());
    }
}

#[test]
fn symmetric_groups_have_no_flips() {
    let ctx = Context::new("A4").unwrap();
    for l in type_a_parabolics(&ctx) {
        let setup = relative_setup(&ctx, l).unwrap();
        assert!(setup.g.iter().all(|&x| x == 0), "{l:b}");
    }
    let b2 = Context::new("B2").unwrap();
    let setup = relative_setup(&b2, 0b10).unwrap();
    assert_eq!(setup.h, vec![0]);
    assert_eq!(setup.n_c.len(), 2);
}

#[test]
fn twisted_trace_matches_brute_force() {
    use coxwitness::algebra::RatElement;
    use coxwitness::characters::twisted_module_trace;
    use coxwitness::descent::{DescentAlgebra, SigmaFn};
    use coxwitness::Rational;
    for (label, l) in [("B3", 0b110u32), ("B3", 0b010), ("D4", 0b0111), ("A3", 0b101), ("I2(6)", 0b01)] {
        let g = CoxeterGroup::from_label(label).unwrap();
        let d = DescentAlgebra::parabolic(&g, l);
        let e = d.to_group_algebra(d.solve(&SigmaFn::one()).e(l));
        let wl = g.parabolic(l);
        for y in g.normalizer_of_parabolic(l) {
            let (w, n) = g.split_normalizer(l, y);
            let mut brute = Rational::zero();
            for &x in &wl {
                let image = e.mul(&g, &RatElement::basis(&g, x)).mul_elem_right(&g, w).conj_by(&g, n);
                brute += image.coeff(x);
            }
            assert_eq!(twisted_module_trace(&g, l, &wl, &e, y), brute, "{label} {l:b} {y}");
        }
    }
}
