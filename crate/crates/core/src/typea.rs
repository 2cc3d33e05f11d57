//! Parabolic subgroups whose components are of type `A`: the cycles `c_i`,
//! the elements `b^±`, the idempotents `f^±`, and the extensions of `φ_c`
//! to `Z_W(c)`.

use std::cmp::Reverse;
use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{CycElement, RatElement, Scalar};
use crate::characters::{induce, twisted_module_trace, ClassFunction, LinearCharacter};
use crate::context::Context;
use crate::coxeter::{subset, CoxeterGroup, Elem, Subset};
use crate::descent::{DescentAlgebra, SigmaFn};
use crate::error::{Error, Result};
use crate::linalg::{mod_rank, ModReducer};
use crate::os::OSElement;
use crate::report::{CheckList, Verification};
use crate::scalars::{Cyclo, Rational};

/// Components of `L`, each a path `s_{i,1}, …, s_{i,l_i}` starting at the
/// endpoint with the smaller index, ordered by size descending and then by
/// least generator.
pub fn type_a_components(g: &CoxeterGroup, l: Subset) -> Result<Vec<Vec<usize>>> {
    let m = &g.diagram().matrix;
    let mut seen: Subset = 0;
    let mut comps = Vec::new();
    for s in subset::members(l) {
        if seen >> s & 1 == 1 {
            continue;
        }
        let mut comp = vec![s];
        seen |= 1 << s;
        let mut k = 0;
        while k < comp.len() {
            let a = comp[k];
            k += 1;
            for b in subset::members(l) {
                if m[a][b] >= 3 && seen >> b & 1 == 0 {
                    seen |= 1 << b;
                    comp.push(b);
                }
            }
        }
        comp.sort_unstable();
        let name = comp.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
        let mut degree = vec![0usize; comp.len()];
        for (i, &a) in comp.iter().enumerate() {
            for &b in &comp {
                if a != b && m[a][b] >= 3 {
                    if m[a][b] > 3 {
                        return Err(Error::NotTypeA(format!("{{{name}}} has m({a},{b}) = {}", m[a][b])));
                    }
                    degree[i] += 1;
                }
            }
            if degree[i] > 2 {
                return Err(Error::NotTypeA(format!("{{{name}}} branches at {a}")));
            }
        }
        let start = comp.iter().zip(&degree).find(|(_, &d)| d <= 1).map(|(&a, _)| a).expect("a path has an end");
        let mut path = vec![start];
        while path.len() < comp.len() {
            let last = *path.last().unwrap();
            let next = comp
                .iter()
                .copied()
                .find(|&b| m[last][b] == 3 && !path.contains(&b))
                .expect("components are connected");
            path.push(next);
        }
        comps.push(path);
    }
    comps.sort_by_key(|c| (Reverse(c.len()), c[0].min(*c.last().unwrap())));
    Ok(comps)
}

/// `c = s_l ⋯ s_1` for the path `s_1, …, s_l`.
pub fn path_cycle(g: &CoxeterGroup, path: &[usize]) -> Elem {
    let word: Vec<usize> = path.iter().rev().copied().collect();
    g.from_word(&word).expect("generators of the group")
}

/// `f^+ = n⁻¹ Σ_k φ(c^k) c^{-k}` or `f^- = n⁻¹ Σ_k ε(c^k) φ(c^k) c^{-k}`,
/// where `c` has order `n` and `φ(c^{-1}) = ζ_n`.
pub fn cyclic_idempotent(g: &CoxeterGroup, c: Elem, n: u32, minus: bool) -> CycElement {
    let mut f = CycElement::zero(g);
    let odd = g.sign(c) == -1;
    let scale = Rational::new(1, n as i64);
    for k in 0..n as i64 {
        let mut v = Cyclo::root_of_unity(n, -k).scale(&scale);
        if minus && odd && k % 2 == 1 {
            v = -v;
        }
        f.add_term(g.pow(c, -k), &v);
    }
    f
}

/// `Π f_i^±` over cycles `(c_i, n_i)`.
pub fn product_idempotent(g: &CoxeterGroup, cycles: &[(Elem, u32)], minus: bool) -> CycElement {
    cycles.iter().fold(CycElement::one(g), |acc, &(c, n)| acc.mul(g, &cyclic_idempotent(g, c, n, minus)))
}

/// `Π ⟨c_i⟩` for commuting cycles, with `φ(Π c_i^{k_i}) = Π ζ_{n_i}^{-k_i}`,
/// sorted by element.
pub fn cyclic_product(g: &CoxeterGroup, cycles: &[(Elem, u32)]) -> Vec<(Elem, Cyclo)> {
    let mut out = vec![(g.identity(), Cyclo::one())];
    for &(c, n) in cycles {
        let mut next = Vec::with_capacity(out.len() * n as usize);
        for (x, v) in &out {
            for k in 0..n as i64 {
                next.push((g.mul(*x, g.pow(c, k)), v * &Cyclo::root_of_unity(n, -k)));
            }
        }
        out = next;
    }
    out.sort_by_key(|(x, _)| *x);
    out
}

/// `Ind_H^N(f)` at each element of `N`, for `H ≤ N ≤ W`.
pub fn induce_within(g: &CoxeterGroup, n: &[Elem], h: &[Elem], f: impl Fn(Elem) -> Cyclo) -> Vec<Cyclo> {
    let inh = g.membership(h);
    let vals: HashMap<Elem, Cyclo> = h.iter().map(|&x| (x, f(x))).collect();
    let scale = Rational::new(1, h.len() as i64);
    n.par_iter()
        .map(|&y| {
            let mut acc = Cyclo::zero();
            for &x in n {
                let t = g.mul(g.mul(g.inv(x), y), x);
                if inh[t as usize] {
                    acc += &vals[&t];
                }
            }
            acc.scale(&scale)
        })
        .collect()
}

/// Right action `v·y = n⁻¹ v w n` of `y = wn ∈ N_W(W_L)`.
pub fn twisted_right(g: &CoxeterGroup, l: Subset, v: &CycElement, y: Elem) -> CycElement {
    let (w, n) = g.split_normalizer(l, y);
    v.mul_elem_right(g, w).conj_by(g, n)
}

/// `Π (1 + s_i x_i t)` as coefficients of `t^0, t^1, …`.
fn poly_product(g: &CoxeterGroup, factors: &[(Elem, i64)]) -> Vec<RatElement> {
    let mut coeffs = vec![RatElement::one(g)];
    for &(x, s) in factors {
        let mut next = coeffs.clone();
        next.push(RatElement::zero(g));
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = next[k + 1].add(&c.mul_elem_right(g, x).scale(&Rational::from_int(s)));
        }
        coeffs = next;
    }
    coeffs
}

/// `c_1, …, c_n` in `S_n` with `c_i = s_{i-1} ⋯ s_1`.
pub fn cycle_prefixes(g: &CoxeterGroup, n: usize) -> Vec<Elem> {
    (1..=n).map(|i| path_cycle(g, &(0..i - 1).collect::<Vec<_>>())).collect()
}

/// `b^+(m, k)` for `k = 0..=m`: coefficients of `(1 − c_1 t) ⋯ (1 − c_m t)`.
pub fn b_plus(g: &CoxeterGroup, cs: &[Elem], m: usize) -> Vec<RatElement> {
    let factors: Vec<(Elem, i64)> = cs[..m].iter().map(|&c| (c, -1)).collect();
    poly_product(g, &factors)
}

/// `b^-(m, k)` for `k = 0..=m`: coefficients of
/// `Π_{k=1}^{m} (1 + (−1)^{k−1} d_{m−k+1} t)` with `d_i = c_i⁻¹ = s_1 ⋯ s_{i−1}`.
pub fn b_minus(g: &CoxeterGroup, cs: &[Elem], m: usize) -> Vec<RatElement> {
    let factors: Vec<(Elem, i64)> = (1..=m).map(|k| (g.inv(cs[m - k]), if k % 2 == 1 { 1 } else { -1 })).collect();
    poly_product(g, &factors)
}

fn reduce_rows(rows: &[RatElement], p: u64) -> Option<Vec<Vec<u64>>> {
    rows.iter().map(|r| r.coeffs().iter().map(|c| c.mod_prime(p)).collect()).collect()
}

/// Rank over `F_p` for a split prime, a lower bound for the rational rank.
fn rational_rank_lower_bound(rows: &[RatElement]) -> usize {
    for skip in 0..8 {
        let p = ModReducer::new(1, skip).p;
        if let Some(reduced) = reduce_rows(rows, p) {
            return mod_rank(reduced, p);
        }
    }
    panic!("no prime avoided the denominators")
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn words(g: &CoxeterGroup, elems: &[Elem]) -> Value {
    Value::Array(elems.iter().map(|&x| Value::String(g.word_string(x))).collect())
}

fn cyclo_list(vals: &[Cyclo]) -> String {
    vals.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

fn ctx_for_symmetric(n: usize) -> Result<Context> {
    if !(2..=6).contains(&n) {
        return Err(Error::InvalidArgument(format!("n = {n} must lie in 2..=6")));
    }
    Context::new(&format!("A{}", n - 1))
}

/// Checks for the shape of the Coxeter element of `S_n`.
pub fn verify_section5(n: usize) -> Result<Verification> {
    let ctx = ctx_for_symmetric(n)?;
    let g = &ctx.group;
    let full = g.full_set();
    let d = ctx.descent();
    let e = d.to_group_algebra(ctx.idempotents().e(full));
    let cs = cycle_prefixes(g, n);
    let c = cs[n - 1];
    let mut checks = CheckList::new();

    let bp_prev = b_plus(g, &cs, n - 1);
    let bp_full = b_plus(g, &cs, n);
    for (k, b) in bp_prev.iter().enumerate() {
        let ok = e.mul_elem_right(g, g.pow(c, k as i64)) == e.mul(g, b);
        checks.push(format!("e_n c^{k} = e_n b+({},{k})", n - 1), ok);
    }
    for (k, b) in bp_full.iter().enumerate().take(n).skip(1) {
        checks.push(format!("e_n b+({n},{k}) = 0"), e.mul(g, b).is_zero());
    }

    let mut wk = g.identity();
    for k in 1..n {
        wk = g.mul(wk, cs[k - 1]);
        let below: Subset = (1u32 << (k - 1)) - 1;
        checks.push(format!("w_{k} is longest in <s_1..s_{}>", k.saturating_sub(1)), wk == g.longest_in(below));
        let xk = d.x_group(full & !(1 << (k - 1)));
        let sign = Rational::from_int(if k % 2 == 0 { 1 } else { -1 });
        checks.push(format!("b+({n},{k}) = (-1)^{k} x_{k} w_{k}"), bp_full[k] == xk.mul_elem_right(g, wk).scale(&sign));
        let mut lhs: Vec<Elem> = g.coset_reps(full & !(1 << (k - 1))).iter().map(|&x| g.mul(x, wk)).collect();
        lhs.sort_unstable();
        let mut rhs = Vec::new();
        for combo in k_subsets(n, k) {
            rhs.push(combo.iter().fold(g.identity(), |acc, &i| g.mul(acc, cs[i])));
        }
        let count = rhs.len();
        rhs.sort_unstable();
        rhs.dedup();
        checks.push(format!("W^(S-s_{k}) w_{k} = products of {k} cycles"), lhs == rhs && rhs.len() == count);
    }

    let dim_e = ctx.char_e()[ctx.lattice.shape_of(c).id].degree().to_rational().expect("rational degree");
    let dim_e = dim_e.numer().to_string().parse::<usize>().expect("small dimension");
    let sub = g.parabolic((1u32 << (n - 2)) - 1);
    let mut kernel_rows = Vec::new();
    for (k, b) in bp_prev.iter().enumerate().skip(1) {
        let diff = RatElement::basis(g, g.pow(c, k as i64)).sub(b);
        for &w in &sub {
            kernel_rows.push(diff.mul_elem_right(g, w));
        }
    }
    let kernel_rank = rational_rank_lower_bound(&kernel_rows);
    let expected_kernel = (n - 1) * factorial(n - 1);
    checks.push_with(
        "kernel of e_n is spanned by (c^k - b+(n-1,k)) W_{n-1}",
        kernel_rank == expected_kernel && g.order() - dim_e == expected_kernel,
        || format!("rank {kernel_rank}, expected {expected_kernel}, |W| - dim E_n = {}", g.order() - dim_e),
    );
    let image_rows: Vec<RatElement> = sub.iter().map(|&w| e.mul_elem_right(g, w)).collect();
    let image_rank = rational_rank_lower_bound(&image_rows);
    checks.push_with(
        "e_n W_{n-1} is a basis of E_n",
        image_rank == factorial(n - 1) && dim_e == factorial(n - 1),
        || format!("rank {image_rank}, dim E_n = {dim_e}"),
    );

    let f_plus = cyclic_idempotent(g, c, n as u32, false);
    let f_minus = cyclic_idempotent(g, c, n as u32, true);
    checks.push("f+ is idempotent", f_plus.mul(g, &f_plus) == f_plus);
    checks.push("f- is idempotent", f_minus.mul(g, &f_minus) == f_minus);
    let phi_c = Cyclo::root_of_unity(n as u32, -1);
    checks.push("f+ c = phi(c) f+", f_plus.mul_elem_right(g, c) == f_plus.scale(&phi_c));
    checks.push("e_n f+ is nonzero", !e.to_cyclo().mul(g, &f_plus).is_zero());

    let os = ctx.os();
    let refl = |s: usize| g.reflection_index(g.generator(s)).expect("simple reflection");
    let a_n = os.monomial(&(0..n - 1).map(refl).collect::<Vec<_>>());
    let bm_prev = b_minus(g, &cs, n - 1);
    for (k, b) in bm_prev.iter().enumerate() {
        let ok = os.act(g.pow(c, -(k as i64)), &a_n) == os.act_algebra(b, &a_n);
        checks.push(format!("c^-{k} a_n = b-({},{k}) a_n", n - 1), ok);
    }
    checks.push("f- a_n is nonzero", !os.act_algebra(&f_minus, &a_n).is_zero());

    let cyc: Vec<Elem> =
        (0..n as i64).map(|k| g.pow(c, k)).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let phi = |x: Elem| {
        let k = (0..n as i64).find(|&k| g.pow(c, k) == x).expect("power of c");
        Cyclo::root_of_unity(n as u32, -k)
    };
    let ind = induce(g, &cyc, phi);
    let sh = ctx.lattice.shape_of(c).id;
    let char_e = &ctx.char_e()[sh];
    let char_a = &ctx.char_a()[sh];
    let twisted = ClassFunction::sign(g).mul(&ind).expect("same group");
    checks.push_with("char E_n = Ind(phi)", *char_e == ind, || format!("{char_e} vs {ind}"));
    checks.push_with("char A_n = sign Ind(phi)", *char_a == twisted, || format!("{char_a} vs {twisted}"));
    checks.push("dim E_n = |W : <c>|", dim_e * n == g.order());

    let data = json!({
        "n": n,
        "c": g.word_string(c),
        "dim_E": dim_e,
        "char_E": char_e.to_json(),
        "char_A": char_a.to_json(),
        "kernel_rank": kernel_rank,
    });
    Ok(Verification { title: format!("section5 n={n}"), checks, data })
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Permutation of `{0, …, n−1}` for every element of `S_n`, with `s_j`
/// the transposition `(j, j+1)` and products composing right to left.
fn permutations(g: &CoxeterGroup, n: usize) -> (Vec<Vec<u8>>, HashMap<Vec<u8>, Elem>) {
    let perms: Vec<Vec<u8>> = g
        .elements()
        .map(|w| {
            let mut p: Vec<u8> = (0..n as u8).collect();
            for &s in g.word(w) {
                p.swap(s as usize, s as usize + 1);
            }
            p
        })
        .collect();
    let index = perms.iter().enumerate().map(|(i, p)| (p.clone(), i as Elem)).collect();
    (perms, index)
}

/// Checks for the shape `λ` of `S_n`, `n = |λ|`.
pub fn verify_section6(parts: &[usize]) -> Result<Verification> {
    if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument(format!("{parts:?} is not a partition")));
    }
    let n: usize = parts.iter().sum();
    let ctx = ctx_for_symmetric(n)?;
    let g = &ctx.group;
    let p = parts.len();
    let mut tau = vec![0usize];
    for &part in parts {
        tau.push(tau.last().unwrap() + part);
    }
    let i_lambda: Subset = (1..p).fold(g.full_set(), |acc, i| acc & !(1 << (tau[i] - 1)));
    let blocks: Vec<Elem> = (0..p).map(|i| path_cycle(g, &(tau[i]..tau[i + 1] - 1).collect::<Vec<_>>())).collect();
    let c = g.mul_all(&blocks);
    let mut checks = CheckList::new();
    let sh = ctx.lattice.shape_of(c).id;
    checks.push("c_lambda has the shape of I_lambda", sh == ctx.lattice.shape_of_subset(g, i_lambda).id);

    let cycles: Vec<(Elem, u32)> = blocks.iter().zip(parts).map(|(&b, &m)| (b, m as u32)).collect();
    let z_lambda = cyclic_product(g, &cycles);
    let phi_local: HashMap<Elem, Cyclo> = z_lambda.iter().cloned().collect();
    let local: Vec<Elem> = g.centralizer(c).into_iter().filter(|&x| g.in_parabolic(x, i_lambda)).collect();
    checks.push("Z_{W_lambda}(c) = product of <g_i>", local == z_lambda.iter().map(|(x, _)| *x).collect::<Vec<_>>());

    let n_lambda = g.n_complement(i_lambda);
    let (_, perm_index) = permutations(g, n);
    let mut r = Vec::new();
    for i in 0..p - 1 {
        if parts[i] != parts[i + 1] {
            continue;
        }
        let m = parts[i];
        let mut perm: Vec<u8> = (0..n as u8).collect();
        for j in 0..m {
            perm.swap(tau[i] + j, tau[i + 1] + j);
        }
        let ri = perm_index[&perm];
        checks.push(format!("r_{} lies in N_lambda", i + 1), n_lambda.binary_search(&ri).is_ok());
        checks.push(format!("r_{} centralizes c_lambda", i + 1), g.mul(ri, c) == g.mul(c, ri));
        checks
            .push(format!("r_{} g_{} r_{} = g_{}", i + 1, i + 1, i + 1, i + 2), g.conj(ri, blocks[i]) == blocks[i + 1]);
        r.push(ri);
    }
    let zc = g.centralizer(c);
    checks.push("N_lambda = <r_i>", g.generate(&r) == n_lambda);
    checks.push("N_lambda centralizes c_lambda", n_lambda.iter().all(|&x| zc.binary_search(&x).is_ok()));
    checks.push("|Z_W(c)| = |Z_lambda| |N_lambda|", zc.len() == z_lambda.len() * n_lambda.len());

    let phi_value = |z: Elem| -> Option<Cyclo> {
        let (w, _) = g.split_normalizer(i_lambda, z);
        phi_local.get(&w).cloned()
    };
    let phi = match LinearCharacter::from_fn(g, &zc, |z| phi_value(z).unwrap_or_else(Cyclo::zero)) {
        Ok(phi) => Some(phi),
        Err(err) => {
            checks.push_with("trivial extension of phi_lambda is a character", false, || err.to_string());
            None
        }
    };

    let f_plus = product_idempotent(g, &cycles, false);
    let f_minus = product_idempotent(g, &cycles, true);
    for (k, &ri) in r.iter().enumerate() {
        checks.push(format!("r_{} centralizes f+", k + 1), f_plus.conj_by(g, ri) == f_plus);
        checks.push(format!("r_{} centralizes f-", k + 1), f_minus.conj_by(g, ri) == f_minus);
        let alpha = ctx.lattice.alpha_c(g, c, ri)?;
        checks.push(format!("alpha_lambda(r_{}) = -1", k + 1), alpha == Cyclo::from_int(-1));
    }

    let normalizer = g.normalizer_of_parabolic(i_lambda);
    let wl = g.parabolic(i_lambda);
    let local_d = DescentAlgebra::parabolic(g, i_lambda);
    let e_ii = local_d.to_group_algebra(local_d.solve(&SigmaFn::one()).e(i_lambda));
    let sigma_i = ctx.descent().restrict_sigma(&SigmaFn::one(), i_lambda);
    let quasi = local_d.to_group_algebra(local_d.solve(&sigma_i).e(i_lambda));
    let kappa = quasi.mul(g, &quasi).ratio_to(&quasi).expect("e^sigma is quasi-idempotent");
    let e_sigma = quasi.scale(&kappa.recip()?);
    checks.push("e_I f+ is nonzero", !e_ii.to_cyclo().mul(g, &f_plus).is_zero());
    let mut data = json!({
        "partition": parts,
        "c": g.word_string(c),
        "r": words(g, &r),
        "N_lambda": n_lambda.len(),
        "Z_W(c)": zc.len(),
    });
    if let Some(phi) = &phi {
        let ind_n = induce_within(g, &normalizer, &zc, |z| phi.value(z));
        for (name, e) in [("e_I^I", &e_ii), ("e_I^sigma_I", &e_sigma)] {
            let stable = n_lambda.iter().all(|&x| e.conj_by(g, x) == *e);
            checks.push(format!("N_lambda centralizes {name}"), stable);
            if !stable {
                continue;
            }
            let traces: Vec<Cyclo> =
                normalizer.iter().map(|&y| twisted_module_trace(g, i_lambda, &wl, e, y).to_cyclo()).collect();
            checks.push_with(
                format!("N_W(W_lambda)-character of {name} C W_lambda = Ind(phi_lambda)"),
                traces == ind_n,
                || format!("[{}] vs [{}]", cyclo_list(&traces), cyclo_list(&ind_n)),
            );
        }
        let twist = |z: Elem| {
            let a = ctx.lattice.alpha_c(g, c, z).expect("centralizers stabilize Fix(c)");
            a.scale(&Rational::from_int(g.sign(z)))
        };
        let flat = ctx.lattice.subset_flat(g, i_lambda);
        let os = ctx.os();
        let ind_n_a = induce_within(g, &normalizer, &zc, |z| &twist(z) * &phi.value(z));
        let traces: Vec<Cyclo> = normalizer.iter().map(|&y| Cyclo::from_int(os.flat_trace(y, flat))).collect();
        checks.push_with("N_W(W_lambda)-character of A_X = Ind(sign alpha phi)", traces == ind_n_a, || {
            format!("[{}] vs [{}]", cyclo_list(&traces), cyclo_list(&ind_n_a))
        });
        let ind_e = induce(g, &zc, |z| phi.value(z));
        let ind_a = induce(g, &zc, |z| &twist(z) * &phi.value(z));
        let (char_e, char_a) = (&ctx.char_e()[sh], &ctx.char_a()[sh]);
        checks.push_with("char E_lambda = Ind(phi_lambda)", *char_e == ind_e, || format!("{char_e} vs {ind_e}"));
        checks.push_with("char A_lambda = Ind(sign alpha phi_lambda)", *char_a == ind_a, || {
            format!("{char_a} vs {ind_a}")
        });
        data["dim_E"] = Value::String(char_e.degree().to_string());
        data["char_E"] = char_e.to_json();
        data["char_A"] = char_a.to_json();
        data["phi"] = phi.descriptor(g);
    }
    Ok(Verification { title: format!("section6 lambda={parts:?}"), checks, data })
}

/// Data attached to a parabolic subset `L` whose components are of type `A`.
pub struct RelativeSetup {
    pub subset: Subset,
    pub shape: usize,
    pub components: Vec<Vec<usize>>,
    /// `c_i = s_{i,l} ⋯ s_{i,1}`.
    pub cycles: Vec<Elem>,
    pub c: Elem,
    /// Longest element `w_i` of each component.
    pub longest: Vec<Elem>,
    pub n_l: Vec<Elem>,
    pub local_centralizer: Vec<Elem>,
    pub centralizer: Vec<Elem>,
    pub normalizer: Vec<Elem>,
    /// `r_i` for `i < p`; the identity when `n_i ≠ n_{i+1}` or no element
    /// realizes the swap.
    pub r: Vec<Elem>,
    pub g: Vec<Elem>,
    pub h: Vec<Elem>,
    /// Complement of `Z_{W_L}(c)` in `Z_W(c)`: the image of `N_L` under
    /// `y ↦ (Π w_j over components reversed by y) · y`.
    pub n_c: Vec<Elem>,
    /// For each adjacent pair of components: whether some element of `N_L`
    /// realizes the swap; false when the sizes differ.
    pub swap_realized: Vec<bool>,
    /// Whether `⟨r_i, h_j⟩` is also such a complement.
    pub generated_complement: bool,
    pub checks: CheckList,
}

impl RelativeSetup {
    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    fn cycle_data(&self) -> Vec<(Elem, u32)> {
        self.cycles.iter().zip(&self.components).map(|(&c, comp)| (c, comp.len() as u32 + 1)).collect()
    }
}

/// Image of each generator of `L` under conjugation by `y ∈ N_L`.
fn action_on(g: &CoxeterGroup, y: Elem, l: Subset) -> Vec<(usize, usize)> {
    subset::members(l).map(|s| (s, g.act_root(y, s))).collect()
}

fn permutation_sign(action: &[(usize, usize)]) -> i64 {
    let idx: HashMap<usize, usize> = action.iter().enumerate().map(|(i, &(s, _))| (s, i)).collect();
    let mut seen = vec![false; action.len()];
    let mut sign = 1;
    for start in 0..action.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            len += 1;
            k = idx[&action[k].1];
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

pub fn relative_setup(ctx: &Context, l: Subset) -> Result<RelativeSetup> {
    let g = &ctx.group;
    if !subset::contains(g.full_set(), l) {
        return Err(Error::InvalidArgument(format!("{} is not a set of generators", subset::to_binary(l, g.rank()))));
    }
    let components = type_a_components(g, l)?;
    let p = components.len();
    let cycles: Vec<Elem> = components.iter().map(|comp| path_cycle(g, comp)).collect();
    let c = g.mul_all(&cycles);
    let longest: Vec<Elem> =
        components.iter().map(|comp| g.longest_in(comp.iter().fold(0, |m, &s| m | 1 << s))).collect();
    let mut checks = CheckList::new();
    let shape = ctx.lattice.shape_of(c).id;
    checks.push("Fix(c) = X_L", ctx.lattice.fix_flat(c) == ctx.lattice.subset_flat(g, l));

    let cyc: Vec<(Elem, u32)> = cycles.iter().zip(&components).map(|(&c, comp)| (c, comp.len() as u32 + 1)).collect();
    let product: Vec<Elem> = cyclic_product(g, &cyc).into_iter().map(|(x, _)| x).collect();
    let centralizer = g.centralizer(c);
    let local_centralizer: Vec<Elem> = centralizer.iter().copied().filter(|&x| g.in_parabolic(x, l)).collect();
    checks.push("Z_{W_L}(c) = product of <c_i>", product == local_centralizer);

    let n_l = g.n_complement(l);
    let normalizer = g.normalizer_of_parabolic(l);
    let mut place = HashMap::new();
    for (j, comp) in components.iter().enumerate() {
        for (k, &s) in comp.iter().enumerate() {
            place.insert(s, (j, k));
        }
    }
    let realize = |target: &dyn Fn(usize) -> usize| -> Option<Elem> {
        n_l.iter().copied().find(|&y| subset::members(l).all(|s| g.act_root(y, s) == target(s)))
    };
    let mut r = Vec::new();
    let mut swap_realized = Vec::new();
    for i in 0..p.saturating_sub(1) {
        if components[i].len() != components[i + 1].len() {
            swap_realized.push(false);
            r.push(g.identity());
            continue;
        }
        let target = |s: usize| {
            let (j, k) = place[&s];
            if j == i {
                components[i + 1][k]
            } else if j == i + 1 {
                components[i][k]
            } else {
                s
            }
        };
        let found = realize(&target);
        swap_realized.push(found.is_some());
        let ri = found.unwrap_or(g.identity());
        checks.push(format!("r_{} centralizes c", i + 1), centralizer.binary_search(&ri).is_ok());
        checks.push(format!("r_{} is an involution", i + 1), g.mul(ri, ri) == g.identity());
        r.push(ri);
    }
    let mut gs = Vec::new();
    let mut h = Vec::new();
    for (i, comp) in components.iter().enumerate() {
        let len = comp.len();
        let target = |s: usize| {
            let (j, k) = place[&s];
            if j == i {
                comp[len - 1 - k]
            } else {
                s
            }
        };
        let gi = realize(&target).unwrap_or(g.identity());
        let hi = if gi == g.identity() { gi } else { g.mul(gi, longest[i]) };
        if gi != g.identity() {
            checks.push(format!("g_{} inverts c_{}", i + 1, i + 1), g.conj(gi, cycles[i]) == g.inv(cycles[i]));
            checks.push(format!("g_{} is an involution", i + 1), g.mul(gi, gi) == g.identity());
        }
        checks.push(format!("h_{} centralizes c", i + 1), centralizer.binary_search(&hi).is_ok());
        gs.push(gi);
        h.push(hi);
    }

    let mut n_c: Vec<Elem> = n_l
        .iter()
        .map(|&y| {
            let mut hat = y;
            for comp in components.iter().filter(|comp| comp.len() >= 2) {
                let image = g.act_root(y, comp[0]);
                let (t, k) = place[&image];
                if k == components[t].len() - 1 {
                    hat = g.mul(longest[t], hat);
                }
            }
            hat
        })
        .collect();
    n_c.sort_unstable();
    n_c.dedup();
    let complement_of = |sub: &[Elem]| {
        g.is_subgroup(sub)
            && sub.iter().all(|x| centralizer.binary_search(x).is_ok())
            && sub.iter().filter(|x| local_centralizer.binary_search(x).is_ok()).count() == 1
            && centralizer.len() == local_centralizer.len() * sub.len()
    };
    checks.push("N_c is a subgroup", g.is_subgroup(&n_c));
    checks.push("N_c has the order of N_L", n_c.len() == n_l.len());
    checks.push("N_c is a complement to Z_{W_L}(c) in Z_W(c)", complement_of(&n_c));
    let wl_size = g.parabolic(l).len();
    checks.push(
        "N_c is a complement to W_L in N_W(W_L)",
        n_c.iter().all(|x| normalizer.binary_search(x).is_ok())
            && n_c.iter().filter(|&&x| g.in_parabolic(x, l)).count() == 1
            && normalizer.len() == wl_size * n_c.len(),
    );
    let mut gens: Vec<Elem> = r.clone();
    gens.extend(&h);
    let generated_complement = complement_of(&g.generate(&gens));
    Ok(RelativeSetup {
        subset: l,
        shape,
        components,
        cycles,
        c,
        longest,
        n_l,
        local_centralizer,
        centralizer,
        normalizer,
        r,
        g: gs,
        h,
        n_c,
        swap_realized,
        generated_complement,
        checks,
    })
}

/// The character `φ̃_c` together with all identities relating it to
/// `E_λ` and `A_λ`.
pub fn verify_theorem_rel(ctx: &Context, l: Subset) -> Result<Verification> {
    let setup = relative_setup(ctx, l)?;
    let g = &ctx.group;
    let mut checks = setup.checks.clone();
    let cycles = setup.cycle_data();
    let c = setup.c;
    let local_d = DescentAlgebra::parabolic(g, l);
    let e_ll = local_d.to_group_algebra(local_d.solve(&SigmaFn::one()).e(l));
    let f_plus = product_idempotent(g, &cycles, false);
    let f_minus = product_idempotent(g, &cycles, true);
    let v = e_ll.to_cyclo().mul(g, &f_plus);
    checks.push("e_L^L f_L^+ is nonzero", !v.is_zero());
    let os = ctx.os();
    let a_l = os.monomial(
        &setup
            .components
            .iter()
            .flatten()
            .map(|&s| g.reflection_index(g.generator(s)).expect("simple reflection"))
            .collect::<Vec<_>>(),
    );
    let u: OSElement = os.act_algebra(&f_minus, &a_l);
    checks.push("f_L^- a_L is nonzero", !u.is_zero());
    checks.push("N_L centralizes e_L^L", setup.n_l.iter().all(|&x| e_ll.conj_by(g, x) == e_ll));
    checks.push("N_c centralizes f_L^+", setup.n_c.iter().all(|&x| f_plus.conj_by(g, x) == f_plus));
    checks.push("N_c centralizes f_L^-", setup.n_c.iter().all(|&x| f_minus.conj_by(g, x) == f_minus));

    let zc = &setup.centralizer;
    let line: Option<Vec<Cyclo>> = zc.iter().map(|&z| twisted_right(g, l, &v, z).ratio_to(&v)).collect();
    let phi = line.as_ref().and_then(|vals| {
        let pos: HashMap<Elem, usize> = zc.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        LinearCharacter::from_fn(g, zc, |z| vals[pos[&z]].clone()).ok()
    });
    checks.push("Z_W(c) acts on the line of e_L^L f_L^+ by a linear character", phi.is_some());
    let mut data = json!({
        "parabolic": subset::to_binary(l, g.rank()),
        "components": setup.components,
        "c": g.word_string(c),
        "r": words(g, &setup.r),
        "g": words(g, &setup.g),
        "h": words(g, &setup.h),
        "N_c": words(g, &greedy(g, &setup.n_c)),
        "swap_realized": setup.swap_realized,
        "generated_complement": setup.generated_complement,
        "shape": setup.shape,
    });
    let Some(phi) = phi else {
        return Ok(Verification { title: title(g, l), checks, data });
    };
    let local: HashMap<Elem, Cyclo> = cyclic_product(g, &cycles).into_iter().collect();
    checks.push("phi~ extends phi_c", setup.local_centralizer.iter().all(|&z| phi.value(z) == local[&z]));
    let alpha = |z: Elem| ctx.lattice.alpha_c(g, c, z).expect("centralizers stabilize Fix(c)");
    let twist = |z: Elem| alpha(z).scale(&Rational::from_int(g.sign(z)));
    let psi_ok = zc.iter().all(|&z| os.act(z, &u).ratio_to(&u) == Some(&twist(z) * &phi.value(z)));
    checks.push("Z_W(c) acts on the line of f_L^- a_L by sign alpha_c phi~", psi_ok);

    let sizes = setup.sizes();
    let sign_of = |k: usize| Cyclo::from_int(if k.is_multiple_of(2) { 1 } else { -1 });
    for (i, &ri) in setup.r.iter().enumerate() {
        if ri == g.identity() {
            continue;
        }
        let li = sizes[i];
        checks.push(format!("(e f+) r_{} = e f+", i + 1), twisted_right(g, l, &v, ri) == v);
        checks.push(format!("r_{} (f- a) = (-1)^l f- a", i + 1), os.act(ri, &u) == u.scale(&sign_of(li)));
        checks.push(format!("phi~(r_{}) = 1", i + 1), phi.value(ri).is_one());
    }
    for (i, &hi) in setup.h.iter().enumerate() {
        if hi == g.identity() {
            continue;
        }
        let li = sizes[i];
        checks.push(format!("(e f+) h_{} = (-1)^l e f+", i + 1), twisted_right(g, l, &v, hi) == v.scale(&sign_of(li)));
        checks.push(format!("h_{} (f- a) = f- a", i + 1), os.act(hi, &u) == u);
        checks.push(format!("phi~(h_{}) = (-1)^l", i + 1), phi.value(hi) == sign_of(li));
        checks.push(format!("sign alpha_c (h_{}) = (-1)^l", i + 1), twist(hi) == sign_of(li));
    }
    for (i, &wi) in setup.longest.iter().enumerate() {
        checks.push(
            format!("e_L^L w_{} = (-1)^l e_L^L", i + 1),
            e_ll.mul_elem_right(g, wi) == e_ll.scale(&Rational::from_int(if sizes[i] % 2 == 0 { 1 } else { -1 })),
        );
    }
    let perm_ok = setup.n_l.iter().all(|&n| twist(n) == Cyclo::from_int(permutation_sign(&action_on(g, n, l))));
    checks.push("sign alpha_c on N_L is the sign of the permutation of L", perm_ok);

    let normalizer = &setup.normalizer;
    let wl = g.parabolic(l);
    let ind_n = induce_within(g, normalizer, zc, |z| phi.value(z));
    let traces: Vec<Cyclo> = normalizer.iter().map(|&y| twisted_module_trace(g, l, &wl, &e_ll, y).to_cyclo()).collect();
    checks.push_with("N_W(W_L)-character of e_L^L C W_L = Ind(phi~)", traces == ind_n, || {
        format!("[{}] vs [{}]", cyclo_list(&traces), cyclo_list(&ind_n))
    });
    let flat = ctx.lattice.subset_flat(g, l);
    let ind_n_a = induce_within(g, normalizer, zc, |z| &twist(z) * &phi.value(z));
    let traces_a: Vec<Cyclo> = normalizer.iter().map(|&y| Cyclo::from_int(os.flat_trace(y, flat))).collect();
    checks.push_with("N_W(W_L)-character of A_X = Ind(sign alpha_c phi~)", traces_a == ind_n_a, || {
        format!("[{}] vs [{}]", cyclo_list(&traces_a), cyclo_list(&ind_n_a))
    });

    let dim_local = e_ll.coeff(g.identity()) * &Rational::from(wl.len());
    checks.push(
        "dim e_L^L C W_L = |N_W(W_L) : Z_W(c)| = |W_L : Z_{W_L}(c)|",
        dim_local == Rational::from(normalizer.len() / zc.len())
            && normalizer.len() % zc.len() == 0
            && normalizer.len() * setup.local_centralizer.len() == zc.len() * wl.len(),
    );
    let ind_e = induce(g, zc, |z| phi.value(z));
    let ind_a = induce(g, zc, |z| &twist(z) * &phi.value(z));
    let (char_e, char_a) = (&ctx.char_e()[setup.shape], &ctx.char_a()[setup.shape]);
    checks.push_with("char E_lambda = Ind(phi~)", *char_e == ind_e, || format!("{char_e} vs {ind_e}"));
    checks.push_with("char A_lambda = Ind(sign alpha_c phi~)", *char_a == ind_a, || format!("{char_a} vs {ind_a}"));

    data["phi"] = phi.descriptor(g);
    data["phi_trivial_on_N_c"] = Value::Bool(setup.n_c.iter().all(|&x| phi.value(x).is_one()));
    data["char_E"] = char_e.to_json();
    data["char_A"] = char_a.to_json();
    Ok(Verification { title: title(g, l), checks, data })
}

fn greedy(g: &CoxeterGroup, elems: &[Elem]) -> Vec<Elem> {
    crate::characters::greedy_generators(g, elems)
}

fn title(g: &CoxeterGroup, l: Subset) -> String {
    format!("rel {} L={}", g.label(), subset::to_binary(l, g.rank()))
}

/// One type-`A` subset per shape, the lexicographically least in `S_λ`,
/// for the shapes that have one.
pub fn type_a_parabolics(ctx: &Context) -> Vec<Subset> {
    ctx.lattice
        .shapes()
        .iter()
        .filter_map(|sh| sh.s_lambda.iter().copied().find(|&i| type_a_components(&ctx.group, i).is_ok()))
        .collect()
}

/// [`verify_theorem_rel`] for every subset from [`type_a_parabolics`].
pub fn verify_rel_all(ctx: &Context) -> Vec<Verification> {
    ctx.char_e();
    ctx.char_a();
    ctx.os();
    type_a_parabolics(ctx).par_iter().map(|&l| verify_theorem_rel(ctx, l).expect("type A by construction")).collect()
}
