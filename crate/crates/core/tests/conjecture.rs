use coxwitness::conjecture::{verify_conjecture, verify_shape};
use coxwitness::context::Context;
use coxwitness::Cyclo;

#[test]
fn small_groups_verified() {
    for label in ["A1", "A2", "B2", "A3", "I2(5)", "I2(6)", "B3", "H3", "A4", "D4", "A5", "B4", "I2(8)"] {
        let t = std::time::Instant::now();
        let ctx = Context::new(label).unwrap();
        let rep = verify_conjecture(&ctx, false);
        for s in &rep.shapes {
            assert!(s.verified(), "{label} shape {}", s.shape);
            assert_eq!(s.char_e.degree(), &Cyclo::from_int(ctx.lattice.shapes()[s.shape].preimage_size as i64));
            assert_eq!(s.char_a.degree(), s.char_e.degree());
        }
        eprintln!("{label}: {:?}", t.elapsed());
    }
}

#[test]
fn a1_top_shape_is_sign() {
    let ctx = Context::new("A1").unwrap();
    let top = ctx.lattice.shapes().len() - 1;
    let out = verify_shape(&ctx, top, false);
    let g = &ctx.group;
    assert_eq!(out.char_e, coxwitness::characters::ClassFunction::sign(g));
    assert_eq!(out.char_a, coxwitness::characters::ClassFunction::trivial(g));
    assert_eq!(out.solutions.len(), 1);
    let phi = &out.candidates[0].chars[out.solutions[0][0]];
    assert_eq!(phi.value(g.generator(0)), Cyclo::from_int(-1));
}

#[test]
fn a2_top_shape_has_standard_solution() {
    let ctx = Context::new("A2").unwrap();
    let g = &ctx.group;
    let top = ctx.lattice.shapes().len() - 1;
    let out = verify_shape(&ctx, top, false);
    let c = out.candidates[0].rep;
    assert!(out.solutions.iter().any(|s| out.candidates[0].chars[s[0]].value(g.inv(c)) == Cyclo::zeta(3)
        || out.candidates[0].chars[s[0]].value(g.inv(c)) == Cyclo::root_of_unity(3, 2)));
}
