use coxwitness::algebra::RatElement;
use coxwitness::coxeter::{subset, CoxeterGroup};
use coxwitness::descent::{DescentAlgebra, DescentElement, SigmaFn};
use coxwitness::shapes::Lattice;
use coxwitness::Rational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sigmas(g: &CoxeterGroup) -> Vec<SigmaFn> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut out = vec![SigmaFn::one()];
    out.extend((0..3).map(|_| SigmaFn::random(&mut rng, g.full_set())));
    out
}

#[test]
fn idempotent_decomposition() {
    for label in ["A2", "B2", "A3", "I2(5)"] {
        let g = CoxeterGroup::from_label(label).unwrap();
        let d = DescentAlgebra::new(&g);
        let lat = Lattice::new(&g);
        for sigma in sigmas(&g) {
            let id = d.solve(&sigma);
            let es: Vec<DescentElement> = lat.shapes().iter().map(|s| id.e_shape(s)).collect();
            let total = es.iter().fold(DescentElement::zero(), |a, e| a.add(e));
            assert_eq!(total, DescentElement::x(g.full_set()), "{label}");
            for (a, ea) in es.iter().enumerate() {
                for (b, eb) in es.iter().enumerate() {
                    let p = d.product(ea, eb);
                    if a == b {
                        assert_eq!(&p, ea, "{label} {a}");
                    } else {
                        assert!(p.is_zero(), "{label} {a} {b}");
                    }
                }
            }
            for shape in lat.shapes() {
                let inv = id.sigma_of(&shape.s_lambda).recip().unwrap();
                let el = id.e_shape(shape);
                for &i in &shape.s_lambda {
                    for &j in &shape.s_lambda {
                        assert_eq!(d.product(id.e(i), id.e(j)), id.e(j).scale(&inv), "{label}");
                    }
                    assert_eq!(&d.product(&el, id.e(i)), id.e(i));
                    assert_eq!(d.product(id.e(i), &el), el.scale(&inv));
                }
            }
        }
    }
}

#[test]
fn longest_element_expansion() {
    for label in ["A2", "B3", "H3"] {
        let g = CoxeterGroup::from_label(label).unwrap();
        let d = DescentAlgebra::new(&g);
        let id = d.solve(&SigmaFn::one());
        let mut total = DescentElement::zero();
        for &l in d.subsets() {
            let sign = if l.count_ones() % 2 == 0 { 1 } else { -1 };
            total = total.add(&id.e(l).scale(&Rational::from_int(sign)));
        }
        assert_eq!(d.to_group_algebra(&total), RatElement::basis(&g, g.longest_element()), "{label}");
    }
}

#[test]
fn restriction_lemma() {
    for label in ["A3", "B3"] {
        let g = CoxeterGroup::from_label(label).unwrap();
        let d = DescentAlgebra::new(&g);
        for sigma in sigmas(&g) {
            let full = d.solve(&sigma);
            for l in subset::all_within(g.full_set()) {
                let dl = DescentAlgebra::parabolic(&g, l);
                let sl = d.restrict_sigma(&sigma, l);
                let part = dl.solve(&sl);
                for &j in dl.subsets() {
                    for &i in dl.subsets() {
                        assert_eq!(dl.m(&sl, i, j), d.m(&sigma, i, j));
                    }
                    let xl = d.x_group(l);
                    let lhs = xl.mul(&g, &dl.to_group_algebra(part.e(j)));
                    assert_eq!(lhs, d.to_group_algebra(full.e(j)), "{label} {l:b} {j:b}");
                    assert_eq!(dl.embed(part.e(j)), lhs);
                }
            }
        }
    }
}
