//! Identities of the descent algebra, the Orlik–Solomon algebra, and the
//! characters `E_λ`, `A_λ`: one exhaustive suite per group and seeded
//! randomized suites across groups.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{RatElement, Scalar};
use crate::characters::{
    ideal_character, ideal_rank_lower_bound, induce, linear_characters, twisted_module_trace, ClassFunction,
};
use crate::context::Context;
use crate::coxeter::{subset, CoxeterGroup, Elem, Subset};
use crate::descent::{DescentAlgebra, DescentElement, Idempotents, SigmaFn};
use crate::error::Result;
use crate::os::{OSElement, OrlikSolomon};
use crate::report::{CheckList, Verification};
use crate::scalars::{Cyclo, Rational};

/// Number of random `σ` per group in [`verify_lemmas`].
pub const RANDOM_SIGMAS: usize = 3;

/// Random `σ` whose ideals are also compared at the level of characters.
pub const CHARACTER_SIGMAS: usize = 1;

/// Groups of rank at most three used by the randomized suites.
pub const SMALL_GROUPS: [&str; 10] = ["A1", "A2", "A3", "B2", "B3", "H3", "I2(5)", "I2(8)", "A1xA1", "A2xA1"];

/// Reducible groups used by the product suite.
pub const PRODUCT_GROUPS: [&str; 4] = ["A1xA1", "A2xA1", "B2xA1", "I2(5)xA1"];

/// `e_I^σ` in `ℂW` for every `I`.
pub fn group_idempotents(d: &DescentAlgebra<'_>, id: &Idempotents) -> BTreeMap<Subset, RatElement> {
    d.subsets().iter().map(|&i| (i, d.to_group_algebra(id.e(i)))).collect()
}

/// Rescales a quasi-idempotent `e` with `e² = κe` to the idempotent `e/κ`.
pub fn normalize_quasi(g: &CoxeterGroup, e: &RatElement) -> Option<RatElement> {
    let kappa = e.mul(g, e).ratio_to(e)?;
    Some(e.scale(&kappa.recip().ok()?))
}

fn seeded_sigmas(g: &CoxeterGroup, seed: u64) -> Vec<SigmaFn> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![SigmaFn::one()];
    out.extend((0..RANDOM_SIGMAS).map(|_| SigmaFn::random(&mut rng, g.full_set())));
    out
}

/// Exhaustive checks for one group: the idempotent system for `σ ≡ 1` and
/// random `σ`, the longest-element lemma, restriction, dimensions,
/// induction from normalizers, and the Orlik–Solomon decomposition.
pub fn verify_lemmas(ctx: &Context, seed: u64) -> Result<Verification> {
    let g = &ctx.group;
    let d = ctx.descent();
    let mut checks = CheckList::new();
    let shapes = ctx.lattice.shapes();
    let one = RatElement::one(g);
    let sigmas = seeded_sigmas(g, seed);

    for (k, sigma) in sigmas.iter().enumerate() {
        let tag = if k == 0 { "sigma=1".to_string() } else { format!("random sigma {k}") };
        let id = d.solve(sigma);
        let es = group_idempotents(&d, &id);
        let e_desc: Vec<DescentElement> = shapes.iter().map(|sh| id.e_shape(sh)).collect();
        let total = e_desc.iter().fold(DescentElement::zero(), |acc, e| acc.add(e));
        checks.push(
            format!("{tag}: sum of e_lambda = 1 in the descent algebra"),
            total == DescentElement::x(g.full_set()),
        );
        let mut orthogonal = true;
        for (a, ea) in e_desc.iter().enumerate() {
            for (b, eb) in e_desc.iter().enumerate() {
                let prod = d.product(ea, eb);
                orthogonal &= if a == b { prod == *ea } else { prod.is_zero() };
            }
        }
        checks.push(format!("{tag}: e_lambda e_mu = delta e_lambda in the descent algebra"), orthogonal);
        let mut quasi = true;
        for sh in shapes {
            let inv = id.sigma_of(&sh.s_lambda).recip()?;
            for &i in &sh.s_lambda {
                for &j in &sh.s_lambda {
                    quasi &= d.product(id.e(i), id.e(j)) == id.e(j).scale(&inv);
                }
            }
        }
        checks.push(format!("{tag}: e_I e_J = sigma(lambda)^-1 e_J within a shape"), quasi);
        let e_lambda: Vec<RatElement> = e_desc.iter().map(|e| d.to_group_algebra(e)).collect();
        if k == 0 {
            let total = e_lambda.iter().fold(RatElement::zero(g), |acc, e| acc.add(e));
            checks.push("sum of e_lambda = 1 in C W", total == one);
            let mut orthogonal = true;
            for (a, ea) in e_lambda.iter().enumerate() {
                for (b, eb) in e_lambda.iter().enumerate() {
                    let prod = ea.mul(g, eb);
                    orthogonal &= if a == b { prod == *ea } else { prod.is_zero() };
                }
            }
            checks.push("e_lambda e_mu = delta e_lambda in C W", orthogonal);
            let longest = g.longest_element();
            let mut w0 = RatElement::zero(g);
            let mut w0_side = true;
            for (&j, e) in &es {
                let sign = Rational::from_int(if subset::card(j).is_multiple_of(2) { 1 } else { -1 });
                w0 = w0.add(&e.scale(&sign));
                let jw = conj_subset(g, longest, j).expect("w0 normalizes the simple reflections");
                w0_side &= e.mul_elem_left(g, longest) == e.scale(&sign);
                w0_side &= e.mul_elem_left(g, longest).mul_elem_right(g, longest) == es[&jw];
                w0_side &= e.mul_elem_right(g, longest) == es[&jw].scale(&sign);
            }
            checks.push("w0 = sum (-1)^|L| e_L", w0 == RatElement::basis(g, longest));
            checks.push("w0 e_J = (-1)^|J| e_J, w0 e_J w0 = e_(J^w0), e_J w0 = (-1)^|J| e_(J^w0)", w0_side);
        }

        if k <= CHARACTER_SIGMAS {
            let sigma_independent = shapes
                .iter()
                .zip(&e_lambda)
                .all(|(sh, e)| ideal_character(g, e).map(|chi| chi == ctx.char_e()[sh.id]).unwrap_or(false));
            checks.push(format!("{tag}: character of e_lambda C W is independent of sigma"), sigma_independent);
            let dims_ok = shapes.iter().zip(&e_lambda).all(|(sh, e)| {
                let chi = ideal_character(g, e).expect("idempotent");
                let rank = ideal_rank_lower_bound(g, e);
                chi.degree() == &Cyclo::from_int(sh.preimage_size as i64) && rank == sh.preimage_size
            });
            checks.push(format!("{tag}: dim e_lambda C W = rank = |sh^-1(lambda)|"), dims_ok);
            let ideal_ok = shapes.iter().all(|sh| {
                sh.s_lambda.iter().all(|&i| {
                    let e = es[&i].scale(&id.sigma_of(&sh.s_lambda));
                    ideal_character(g, &e).map(|chi| chi == ctx.char_e()[sh.id]).unwrap_or(false)
                })
            });
            checks.push(format!("{tag}: e_I C W = E_lambda for I in S_lambda"), ideal_ok);
        }

        let mut restrict_ok = true;
        for &l in d.subsets() {
            let dl = DescentAlgebra::parabolic(g, l);
            let sl = d.restrict_sigma(sigma, l);
            let part = dl.solve(&sl);
            let xl = d.x_group(l);
            for &j in dl.subsets() {
                for &i in dl.subsets() {
                    restrict_ok &= dl.m(&sl, i, j) == d.m(sigma, i, j) && part.n(i, j) == id.n(i, j);
                }
                restrict_ok &= xl.mul(g, &dl.to_group_algebra(part.e(j))) == es[&j];
            }
        }
        checks.push(format!("{tag}: restriction to parabolics"), restrict_ok);
    }

    let mut product_ok = true;
    for &a in d.subsets() {
        for &b in d.subsets() {
            let lhs = d.to_group_algebra(&d.product(&DescentElement::x(a), &DescentElement::x(b)));
            product_ok &= lhs == d.x_group(a).mul(g, &d.x_group(b));
        }
    }
    checks.push("descent product = convolution on all basis pairs", product_ok);

    let os = ctx.os();
    let char_e = ctx.char_e();
    let char_a = ctx.char_a();
    let mut sum_e = ClassFunction::zero(g);
    let mut sum_a = ClassFunction::zero(g);
    for sh in shapes {
        sum_e = sum_e.add(&char_e[sh.id])?;
        sum_a = sum_a.add(&char_a[sh.id])?;
        let size = Cyclo::from_int(sh.preimage_size as i64);
        checks.push_with(
            format!("shape {}: dim E = dim A = |sh^-1|", sh.id),
            char_e[sh.id].degree() == &size && char_a[sh.id].degree() == &size,
            || format!("{} {} {}", char_e[sh.id].degree(), char_a[sh.id].degree(), sh.preimage_size),
        );
        let cusp = ctx.lattice.cuspidal_structure(g, sh.id);
        checks.push(format!("shape {}: cuspidal classes match and count", sh.id), cusp.bijective && cusp.counting_ok);
        for &l in &sh.s_lambda {
            let (ind_e, ind_a) = induced_from_normalizer(ctx, l)?;
            checks.push_with(
                format!("shape {} L={}: E_lambda = Ind from N_W(W_L)", sh.id, subset::to_binary(l, g.rank())),
                ind_e == char_e[sh.id],
                || format!("{ind_e} vs {}", char_e[sh.id]),
            );
            checks.push_with(
                format!("shape {} L={}: A_lambda = Ind from N_W(W_X)", sh.id, subset::to_binary(l, g.rank())),
                ind_a == char_a[sh.id],
                || format!("{ind_a} vs {}", char_a[sh.id]),
            );
        }
    }
    checks.push("sum of char E_lambda = regular character", sum_e == ClassFunction::regular(g));
    let full: Vec<u32> = (0..os.dim() as u32).collect();
    checks.push("sum of char A_lambda = character of A", sum_a == os.character(g, &full));
    checks.push("dim A = |W|", os.dim() == g.order());

    let mut order: Vec<usize> = (0..g.reflections().len()).collect();
    order.reverse();
    let alt = OrlikSolomon::with_order(g, &ctx.lattice, order);
    let alt_ok = shapes.iter().all(|sh| alt.character(g, &alt.shape_basis(&ctx.lattice, sh.id)) == char_a[sh.id]);
    checks.push("characters of A_lambda do not depend on the reflection order", alt_ok);

    let mut centralizer_ok = true;
    for c in g.classes().reps().iter().copied() {
        let flat = ctx.lattice.fix_flat(c);
        let z = g.centralizer(c);
        let stab: Vec<Elem> = g.elements().filter(|&w| ctx.lattice.act(g, w, flat) == flat).collect();
        let wx = ctx.lattice.pointwise_stabilizer(g, flat);
        centralizer_ok &= z.iter().all(|x| stab.binary_search(x).is_ok());
        let mut prod: Vec<Elem> =
            z.iter().flat_map(|&a| wx.iter().map(move |&b| (a, b))).map(|(a, b)| g.mul(a, b)).collect();
        prod.sort_unstable();
        prod.dedup();
        centralizer_ok &= prod == stab;
    }
    checks.push("Z_W(c) W_X = N_W(W_X) for X = Fix(c)", centralizer_ok);

    let data = json!({
        "group": g.label(),
        "order": g.order(),
        "shapes": shapes.len(),
        "random_sigmas": RANDOM_SIGMAS,
        "seed": seed.to_string(),
    });
    Ok(Verification { title: format!("lemmas {}", g.label()), checks, data })
}

/// `J^w = w⁻¹ J w` when conjugation by `w` permutes the simple reflections
/// of `J`.
fn conj_subset(g: &CoxeterGroup, w: Elem, j: Subset) -> Option<Subset> {
    let winv = g.inv(w);
    let refl: Vec<Elem> = subset::members(j).map(|s| g.conj(winv, g.generator(s))).collect();
    let mut out = 0;
    for t in refl {
        let s = (0..g.rank()).find(|&s| g.generator(s) == t)?;
        out |= 1 << s;
    }
    Some(out)
}

/// `(Ind_{N_W(W_L)}^W χ_L, Ind_{N_W(W_X)}^W tr_{A_X})` where `χ_L` is the
/// character of `e_L^{σ_L} ℂW_L` under `a·wn = n⁻¹ a w n`.
pub fn induced_from_normalizer(ctx: &Context, l: Subset) -> Result<(ClassFunction, ClassFunction)> {
    let g = &ctx.group;
    let d = ctx.descent();
    let dl = DescentAlgebra::parabolic(g, l);
    let sl = d.restrict_sigma(&SigmaFn::one(), l);
    let e = normalize_quasi(g, &dl.to_group_algebra(dl.solve(&sl).e(l))).expect("quasi-idempotent");
    let normalizer = g.normalizer_of_parabolic(l);
    let wl = g.parabolic(l);
    let traces: HashMap<Elem, Cyclo> =
        normalizer.iter().map(|&y| (y, twisted_module_trace(g, l, &wl, &e, y).to_cyclo())).collect();
    let ind_e = induce(g, &normalizer, |y| traces[&y].clone());
    let flat = ctx.lattice.subset_flat(g, l);
    let os = ctx.os();
    let ind_a = induce(g, &normalizer, |y| Cyclo::from_int(os.flat_trace(y, flat)));
    Ok((ind_e, ind_a))
}

/// Outcome of one randomized suite.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub samples: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult { name, samples: 0, failures: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"name": self.name, "samples": self.samples, "failures": self.failures});
        if let Some(w) = &self.first_failure {
            v["first_failure"] = Value::String(w.clone());
        }
        v
    }
}

struct Pool {
    contexts: Vec<Context>,
}

impl Pool {
    fn new(labels: &[&str]) -> Result<Self> {
        Ok(Pool { contexts: labels.iter().map(|l| Context::new(l)).collect::<Result<_>>()? })
    }

    fn pick<'a, R: Rng>(&'a self, rng: &mut R) -> &'a Context {
        self.contexts.choose(rng).expect("non-empty pool")
    }
}

fn random_subset<R: Rng>(rng: &mut R, of: Subset) -> Subset {
    subset::members(of).filter(|_| rng.gen_bool(0.5)).fold(0, |m, s| m | 1 << s)
}

fn random_elem<R: Rng>(rng: &mut R, g: &CoxeterGroup) -> Elem {
    rng.gen_range(0..g.order() as Elem)
}

/// `x_{K^d} = x_K d`, `m_{I^d J^d} = m_{IJ}`, `e_{L^d} = e_L d`.
pub fn suite_shift(seed: u64, samples: usize) -> Result<SuiteResult> {
    let pool = Pool::new(&SMALL_GROUPS)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteResult::new("shift");
    while out.samples < samples {
        let ctx = pool.pick(&mut rng);
        let g = &ctx.group;
        let d = ctx.descent();
        let sigma = SigmaFn::random(&mut rng, g.full_set());
        let id = d.solve(&sigma);
        let es = group_idempotents(&d, &id);
        for _ in 0..8 {
            let k = random_subset(&mut rng, g.full_set());
            let valid: Vec<Elem> = g.elements().filter(|&x| g.image_of_simple(g.inv(x), k).is_some()).collect();
            let x = *valid.choose(&mut rng).expect("identity is valid");
            let kd = g.image_of_simple(g.inv(x), k).expect("valid shift");
            out.record(d.x_group(kd) == d.x_group(k).mul_elem_right(g, x), || format!("{} K={k:b} d={x}", g.label()));
            for j in subset::all_within(k) {
                let jd = g.image_of_simple(g.inv(x), j).expect("subset of K");
                for i in subset::all_within(j) {
                    let id_ = g.image_of_simple(g.inv(x), i).expect("subset of K");
                    out.record(d.m(&sigma, id_, jd) == d.m(&sigma, i, j), || {
                        format!("{} m I={i:b} J={j:b} d={x}", g.label())
                    });
                }
                out.record(es[&jd] == es[&j].mul_elem_right(g, x), || format!("{} e L={j:b} d={x}", g.label()));
            }
        }
    }
    Ok(out)
}

/// `m^{σ_L} = m^σ`, `n^{σ_L} = n^σ`, `x_L e_J^{σ_L} = e_J^σ`, and
/// `n⁻¹ e_J^{σ_L} n = e_{J^n}^{σ_L}` for `n ∈ N_L`.
pub fn suite_restrict(seed: u64, samples: usize) -> Result<SuiteResult> {
    let pool = Pool::new(&SMALL_GROUPS)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteResult::new("restrict");
    while out.samples < samples {
        let ctx = pool.pick(&mut rng);
        let g = &ctx.group;
        let d = ctx.descent();
        let sigma = SigmaFn::random(&mut rng, g.full_set());
        let id = d.solve(&sigma);
        let es = group_idempotents(&d, &id);
        let l = random_subset(&mut rng, g.full_set());
        let dl = DescentAlgebra::parabolic(g, l);
        let sl = d.restrict_sigma(&sigma, l);
        let part = dl.solve(&sl);
        let local = group_idempotents(&dl, &part);
        let xl = d.x_group(l);
        let n_l = g.n_complement(l);
        for &j in dl.subsets() {
            for &i in dl.subsets() {
                out.record(dl.m(&sl, i, j) == d.m(&sigma, i, j), || format!("{} m L={l:b} I={i:b} J={j:b}", g.label()));
                out.record(part.n(i, j) == id.n(i, j), || format!("{} n L={l:b} I={i:b} J={j:b}", g.label()));
            }
            out.record(xl.mul(g, &local[&j]) == es[&j], || format!("{} x_L e L={l:b} J={j:b}", g.label()));
            for &n in &n_l {
                let jn = g.image_of_simple(g.inv(n), j).expect("n permutes L");
                out.record(local[&j].conj_by(g, n) == local[&jn], || {
                    format!("{} conj L={l:b} J={j:b} n={n}", g.label())
                });
            }
        }
    }
    Ok(out)
}

/// `x_L (a·y) = (x_L a) y` and `(a·y)·y' = a·(y y')` for `a ∈ ℂW_L`.
pub fn suite_nequiv(seed: u64, samples: usize) -> Result<SuiteResult> {
    let pool = Pool::new(&SMALL_GROUPS)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteResult::new("N-equiv");
    let act = |g: &CoxeterGroup, l: Subset, a: &RatElement, y: Elem| {
        let (w, n) = g.split_normalizer(l, y);
        a.mul_elem_right(g, w).conj_by(g, n)
    };
    while out.samples < samples {
        let ctx = pool.pick(&mut rng);
        let g = &ctx.group;
        let d = ctx.descent();
        let l = random_subset(&mut rng, g.full_set());
        let xl = d.x_group(l);
        let wl = g.parabolic(l);
        let normalizer = g.normalizer_of_parabolic(l);
        for _ in 0..10 {
            let mut a = RatElement::zero(g);
            for _ in 0..3 {
                let x = *wl.choose(&mut rng).expect("non-empty");
                a.add_term(x, &Rational::from_int(rng.gen_range(-3..=3)));
            }
            let y = *normalizer.choose(&mut rng).expect("non-empty");
            let y2 = *normalizer.choose(&mut rng).expect("non-empty");
            let ay = act(g, l, &a, y);
            out.record(ay.support().all(|(x, _)| g.in_parabolic(x, l)), || {
                format!("{} stays in W_L L={l:b} y={y}", g.label())
            });
            out.record(xl.mul(g, &ay) == xl.mul(g, &a).mul_elem_right(g, y), || {
                format!("{} embed L={l:b} y={y}", g.label())
            });
            out.record(act(g, l, &ay, y2) == act(g, l, &a, g.mul(y, y2)), || {
                format!("{} action L={l:b} y={y} y'={y2}", g.label())
            });
        }
    }
    Ok(out)
}

/// `e_J^σ = e_{J∩S₁}^σ e_{J∩S₂}^σ` for multiplicative `σ` on `W₁ × W₂`.
pub fn suite_reducible(seed: u64, samples: usize) -> Result<SuiteResult> {
    let pool = Pool::new(&PRODUCT_GROUPS)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteResult::new("reducible");
    while out.samples < samples {
        let ctx = pool.pick(&mut rng);
        let g = &ctx.group;
        let d = ctx.descent();
        let masks = g.diagram().factor_masks();
        let s1 = masks[0];
        let s2 = g.full_set() & !s1;
        let factor = |rng: &mut ChaCha8Rng, of: Subset| {
            let r = SigmaFn::random(rng, of);
            SigmaFn::from_table(
                subset::all_within(of)
                    .into_iter()
                    .map(|j| (j, if j == 0 { Rational::one() } else { r.get(j).clone() })),
            )
            .expect("positive values")
        };
        let (f1, f2) = (factor(&mut rng, s1), factor(&mut rng, s2));
        let sigma = SigmaFn::product_of(&[(s1, f1), (s2, f2)]);
        let es = group_idempotents(&d, &d.solve(&sigma));
        let parts: Vec<BTreeMap<Subset, RatElement>> = [s1, s2]
            .iter()
            .map(|&p| {
                let dp = DescentAlgebra::parabolic(g, p);
                let plain = SigmaFn::from_table(subset::all_within(p).into_iter().map(|j| (j, sigma.get(j).clone())))
                    .expect("positive values");
                group_idempotents(&dp, &dp.solve(&plain))
            })
            .collect();
        for &j in d.subsets() {
            out.record(es[&j] == parts[0][&(j & s1)].mul(g, &parts[1][&(j & s2)]), || format!("{} J={j:b}", g.label()));
        }
    }
    Ok(out)
}

/// `⟨Ind_H^W φ, χ⟩_W = ⟨φ, χ|_H⟩_H` for linear `φ` of centralizers and
/// random class functions `χ`.
pub fn suite_frobenius(seed: u64, samples: usize) -> Result<SuiteResult> {
    let pool = Pool::new(&SMALL_GROUPS)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteResult::new("Frobenius");
    while out.samples < samples {
        let ctx = pool.pick(&mut rng);
        let g = &ctx.group;
        let c = random_elem(&mut rng, g);
        let h = if rng.gen_bool(0.5) { g.centralizer(c) } else { g.parabolic(random_subset(&mut rng, g.full_set())) };
        let chars = linear_characters(g, &h);
        for _ in 0..10 {
            let phi = chars.choose(&mut rng).expect("trivial character");
            let m = g.field_order() as i64 * 2;
            let values: Vec<Cyclo> = (0..g.classes().len())
                .map(|_| {
                    let k = rng.gen_range(0..m);
                    Cyclo::root_of_unity(m as u32, k).scale(&Rational::from_int(rng.gen_range(-4..=4)))
                })
                .collect();
            let chi = ClassFunction::new(g, values)?;
            let ind = induce(g, &h, |x| phi.value(x));
            let lhs = ind.inner(g, &chi)?;
            let rhs = crate::characters::subgroup_inner(g, &h, |x| phi.value(x), &chi);
            out.record(lhs == rhs, || format!("{} c={c}", g.label()));
        }
    }
    Ok(out)
}

/// `w(xy) = w(x) w(y)` on random basis monomials, and `w A_X = A_{w(X)}`.
pub fn suite_os_automorphism(seed: u64, samples: usize) -> Result<SuiteResult> {
    let pool = Pool::new(&SMALL_GROUPS)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteResult::new("OS automorphism");
    while out.samples < samples {
        let ctx = pool.pick(&mut rng);
        let g = &ctx.group;
        let os = ctx.os();
        for _ in 0..20 {
            let w = random_elem(&mut rng, g);
            let x = random_os(&mut rng, os);
            let y = random_os(&mut rng, os);
            let lhs = os.act(w, &os.mul(&x, &y));
            let rhs = os.mul(&os.act(w, &x), &os.act(w, &y));
            out.record(lhs == rhs, || format!("{} w={w}", g.label()));
            let b = rng.gen_range(0..os.dim() as u32);
            let target = ctx.lattice.act(g, w, os.basis_flat(b));
            let image = os.act(w, &os.basis_element(b));
            out.record(image.terms().all(|(k, _)| os.basis_flat(k) == target), || format!("{} w={w} b={b}", g.label()));
        }
    }
    Ok(out)
}

fn random_os<R: Rng>(rng: &mut R, os: &OrlikSolomon) -> OSElement {
    let mut x = OSElement::zero();
    for _ in 0..2 {
        let b = rng.gen_range(0..os.dim() as u32);
        x.add_term(b, &Cyclo::from_int(rng.gen_range(-2..=2)));
    }
    x
}

/// `α_X(nm) = α_X(n) α_X(m)` on the stabilizer of `X`.
pub fn suite_alpha(seed: u64, samples: usize) -> Result<SuiteResult> {
    let pool = Pool::new(&SMALL_GROUPS)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteResult::new("alpha multiplicativity");
    let mut cache: HashMap<(usize, usize), Vec<(Elem, Cyclo)>> = HashMap::new();
    while out.samples < samples {
        let gi = rng.gen_range(0..pool.contexts.len());
        let ctx = &pool.contexts[gi];
        let g = &ctx.group;
        let flat = rng.gen_range(0..ctx.lattice.flats().len());
        let table = cache.entry((gi, flat)).or_insert_with(|| {
            g.elements()
                .filter(|&w| ctx.lattice.act(g, w, flat) == flat)
                .map(|w| (w, ctx.lattice.alpha(g, flat, w).expect("stabilizes X")))
                .collect()
        });
        let values: HashMap<Elem, &Cyclo> = table.iter().map(|(w, a)| (*w, a)).collect();
        for _ in 0..20 {
            let (n, an) = table.choose(&mut rng).expect("identity stabilizes");
            let (m, am) = table.choose(&mut rng).expect("identity stabilizes");
            let nm = g.mul(*n, *m);
            out.record(*values[&nm] == an * am, || format!("{} X={flat} n={n} m={m}", g.label()));
        }
    }
    Ok(out)
}

/// All randomized suites with at least `samples` checks each.
pub fn property_suites(seed: u64, samples: usize) -> Result<Vec<SuiteResult>> {
    type Suite = fn(u64, usize) -> Result<SuiteResult>;
    let suites: [Suite; 7] = [
        suite_shift,
        suite_restrict,
        suite_nequiv,
        suite_reducible,
        suite_frobenius,
        suite_os_automorphism,
        suite_alpha,
    ];
    use rayon::prelude::*;
    suites.par_iter().enumerate().map(|(k, s)| s(seed.wrapping_add(k as u64), samples)).collect()
}
