//! Class functions, characters of right ideals, linear characters of
//! subgroups, and induction.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde_json::{json, Value};

use crate::algebra::{GroupAlgebraElement, Scalar};
use crate::coxeter::{CoxeterGroup, Elem};
use crate::error::{Error, Result};
use crate::linalg::{mod_rank, ModReducer};
use crate::scalars::{Cyclo, Rational};

/// A function on the conjugacy classes of a group, in class-index order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassFunction {
    group: u64,
    values: Vec<Cyclo>,
}

impl ClassFunction {
    pub fn new(g: &CoxeterGroup, values: Vec<Cyclo>) -> Result<Self> {
        if values.len() != g.classes().len() {
            return Err(Error::InvalidArgument(format!("{} values for {} classes", values.len(), g.classes().len())));
        }
        Ok(ClassFunction { group: g.uid(), values })
    }

    /// Evaluates `f` on each class representative.
    pub fn from_fn(g: &CoxeterGroup, f: impl Fn(Elem) -> Cyclo) -> Self {
        ClassFunction { group: g.uid(), values: g.classes().reps().iter().map(|&w| f(w)).collect() }
    }

    pub fn zero(g: &CoxeterGroup) -> Self {
        Self::from_fn(g, |_| Cyclo::zero())
    }

    pub fn trivial(g: &CoxeterGroup) -> Self {
        Self::from_fn(g, |_| Cyclo::one())
    }

    /// `ε(w) = (−1)^{ℓ(w)}`.
    pub fn sign(g: &CoxeterGroup) -> Self {
        Self::from_fn(g, |w| Cyclo::from_int(g.sign(w)))
    }

    /// The regular character `ρ`.
    pub fn regular(g: &CoxeterGroup) -> Self {
        Self::from_fn(g, |w| Cyclo::from_int(if w == 0 { g.order() as i64 } else { 0 }))
    }

    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn at(&self, g: &CoxeterGroup, w: Elem) -> &Cyclo {
        &self.values[g.class_of(w)]
    }

    pub fn degree(&self) -> &Cyclo {
        &self.values[0]
    }

    fn same_group(&self, o: &Self) -> Result<()> {
        if self.group != o.group {
            return Err(Error::InvalidArgument("class functions of different groups".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_group(o)?;
        Ok(ClassFunction { group: self.group, values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_group(o)?;
        Ok(ClassFunction { group: self.group, values: self.values.iter().zip(&o.values).map(|(a, b)| a - b).collect() })
    }

    /// Pointwise product, the character of the tensor product.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_group(o)?;
        Ok(ClassFunction { group: self.group, values: self.values.iter().zip(&o.values).map(|(a, b)| a * b).collect() })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclo::is_zero)
    }

    /// `⟨f, h⟩ = |W|⁻¹ Σ_w f(w) conj(h(w))`.
    pub fn inner(&self, g: &CoxeterGroup, o: &Self) -> Result<Cyclo> {
        self.same_group(o)?;
        let sizes = g.classes().sizes();
        let total: Cyclo = self
            .values
            .iter()
            .zip(&o.values)
            .zip(sizes)
            .map(|((a, b), &n)| (a * &b.conj()).scale(&Rational::from(n)))
            .sum();
        Ok(total.scale(&Rational::new(1, g.order() as i64)))
    }

    /// Values on the elements of a subgroup, in the order given.
    pub fn restrict(&self, g: &CoxeterGroup, h: &[Elem]) -> Vec<Cyclo> {
        h.iter().map(|&x| self.at(g, x).clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.values.iter().map(|v| Value::String(v.to_string())).collect())
    }
}

impl fmt::Display for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Rejects `e` unless `e·e = e`.
pub fn check_idempotent<T: Scalar>(g: &CoxeterGroup, e: &GroupAlgebraElement<T>) -> Result<()> {
    if e.mul(g, e) != *e {
        return Err(Error::NotIdempotent);
    }
    Ok(())
}

/// Character of `W` acting by right multiplication on `eℂW`:
/// `χ(w) = Σ_{g ∈ W} e[g w⁻¹ g⁻¹]`.
pub fn ideal_character<T: Scalar>(g: &CoxeterGroup, e: &GroupAlgebraElement<T>) -> Result<ClassFunction> {
    check_idempotent(g, e)?;
    Ok(ideal_character_unchecked(g, e))
}

/// [`ideal_character`] for an `e` already known to be idempotent.
pub fn ideal_character_unchecked<T: Scalar>(g: &CoxeterGroup, e: &GroupAlgebraElement<T>) -> ClassFunction {
    let cls = g.classes();
    let mut sums = vec![T::zero(); cls.len()];
    for (x, c) in e.support() {
        let k = g.class_of(g.inv(x));
        sums[k] = sums[k].add(c);
    }
    let values = (0..cls.len())
        .map(|k| {
            let z = Rational::from(g.order() / cls.sizes()[k]);
            sums[k].to_cyclo().scale(&z)
        })
        .collect();
    ClassFunction { group: g.uid(), values }
}

/// Character of `N_W(W_L)` on `e ℂW_L` under `a·(wn) = n⁻¹ a w n`, where
/// `y = wn` with `w ∈ W_L`, `n ∈ N_L`. Requires `e ∈ ℂW_L` idempotent and
/// centralized by `N_L`.
pub fn twisted_module_trace<T: Scalar>(
    g: &CoxeterGroup,
    l: crate::coxeter::Subset,
    wl: &[Elem],
    e: &GroupAlgebraElement<T>,
    y: Elem,
) -> T {
    let (w, n) = g.split_normalizer(l, y);
    let ninv = g.inv(n);
    let winv = g.inv(w);
    let mut acc = T::zero();
    for &x in wl {
        // coefficient of x in n⁻¹ (e x w) n is e[(n x n⁻¹) w⁻¹ x⁻¹]
        let t = g.mul(g.mul(g.mul(g.mul(n, x), ninv), winv), g.inv(x));
        let c = e.coeff(t);
        if !c.is_zero() {
            acc = acc.add(c);
        }
    }
    acc
}

/// `dim eℂW` as the rank of `{e·w : w ∈ W}` over `F_p`, a lower bound for
/// the rank over the coefficient field.
pub fn ideal_rank_lower_bound<T: Scalar>(g: &CoxeterGroup, e: &GroupAlgebraElement<T>) -> usize {
    let m = e.coeffs().iter().fold(1u32, |acc, c| acc.lcm(&c.field_order()));
    for skip in 0..8 {
        let red = ModReducer::new(m, skip);
        let reduced: Option<Vec<u64>> = e.coeffs().iter().map(|c| c.reduce(&red)).collect();
        let Some(reduced) = reduced else { continue };
        let rows: Vec<Vec<u64>> = g
            .elements()
            .map(|w| {
                let winv = g.inv(w);
                g.elements().map(|x| reduced[g.mul(x, winv) as usize]).collect()
            })
            .collect();
        return mod_rank(rows, red.p);
    }
    panic!("no prime avoided the denominators")
}

/// A homomorphism `H → ℂ^×` with values `ζ_M^{k(h)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCharacter {
    elems: Vec<Elem>,
    modulus: u32,
    exps: Vec<u32>,
    pos: HashMap<Elem, usize>,
}

impl LinearCharacter {
    fn build(elems: Vec<Elem>, modulus: u32, exps: Vec<u32>) -> Self {
        let pos = elems.iter().enumerate().map(|(i, &h)| (h, i)).collect();
        let mut ch = LinearCharacter { elems, modulus, exps, pos };
        ch.normalize();
        ch
    }

    /// Reduces the modulus to the order of the image.
    fn normalize(&mut self) {
        let g = self.exps.iter().fold(self.modulus, |acc, &k| acc.gcd(&k));
        if g > 1 {
            self.modulus /= g;
            for k in &mut self.exps {
                *k /= g;
            }
        }
    }

    pub fn trivial(elems: &[Elem]) -> Self {
        Self::build(elems.to_vec(), 1, vec![0; elems.len()])
    }

    /// From values that must be roots of unity; checks multiplicativity.
    pub fn from_fn(g: &CoxeterGroup, elems: &[Elem], f: impl Fn(Elem) -> Cyclo) -> Result<Self> {
        let mut raw = Vec::with_capacity(elems.len());
        let mut modulus = 1u32;
        for &h in elems {
            let v = f(h);
            let (n, k) = v.as_root_of_unity().ok_or_else(|| {
                Error::InvalidArgument(format!("value {v} at [{}] is not a root of unity", g.word_string(h)))
            })?;
            modulus = modulus.lcm(&n);
            raw.push((n, k));
        }
        let exps = raw.into_iter().map(|(n, k)| k * (modulus / n)).collect();
        let ch = Self::build(elems.to_vec(), modulus, exps);
        ch.check_multiplicative(g)?;
        Ok(ch)
    }

    /// `φ(ab) = φ(a)φ(b)` on the full multiplication table of `H`.
    pub fn check_multiplicative(&self, g: &CoxeterGroup) -> Result<()> {
        for (i, &a) in self.elems.iter().enumerate() {
            for (j, &b) in self.elems.iter().enumerate() {
                let Some(&ab) = self.pos.get(&g.mul(a, b)) else {
                    return Err(Error::InvalidArgument("domain is not a subgroup".into()));
                };
                if (self.exps[i] + self.exps[j]) % self.modulus != self.exps[ab] {
                    return Err(Error::InvalidArgument(format!(
                        "not multiplicative at [{}], [{}]",
                        g.word_string(a),
                        g.word_string(b)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn contains(&self, h: Elem) -> bool {
        self.pos.contains_key(&h)
    }

    /// `(M, k)` with `φ(h) = ζ_M^k`.
    pub fn exponent(&self, h: Elem) -> (u32, u32) {
        (self.modulus, self.exps[self.pos[&h]])
    }

    pub fn value(&self, h: Elem) -> Cyclo {
        let (m, k) = self.exponent(h);
        Cyclo::root_of_unity(m, k as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.modulus == 1
    }

    /// Pointwise product with a character of the same subgroup.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.elems != o.elems {
            return Err(Error::InvalidArgument("characters of different subgroups".into()));
        }
        let m = self.modulus.lcm(&o.modulus);
        let (a, b) = (m / self.modulus, m / o.modulus);
        let exps = self.exps.iter().zip(&o.exps).map(|(x, y)| (x * a + y * b) % m).collect();
        Ok(Self::build(self.elems.clone(), m, exps))
    }

    /// Restriction to a subgroup of the domain.
    pub fn restrict(&self, sub: &[Elem]) -> Result<Self> {
        let exps = sub
            .iter()
            .map(|h| {
                self.pos
                    .get(h)
                    .map(|&i| self.exps[i])
                    .ok_or_else(|| Error::InvalidArgument("restriction to a non-subgroup".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(Self::build(sub.to_vec(), self.modulus, exps))
    }

    /// Values on a greedy generating set of the domain.
    pub fn descriptor(&self, g: &CoxeterGroup) -> Value {
        let gens = greedy_generators(g, &self.elems);
        Value::Array(
            gens.iter().map(|&h| json!({"element": g.word_string(h), "value": self.value(h).to_string()})).collect(),
        )
    }
}

/// Generators chosen in id order, each outside the span of the earlier ones.
pub fn greedy_generators(g: &CoxeterGroup, elems: &[Elem]) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut span = vec![false; g.order()];
    span[0] = true;
    for &h in elems {
        if span[h as usize] {
            continue;
        }
        gens.push(h);
        for x in g.generate(&gens) {
            span[x as usize] = true;
        }
    }
    gens
}

/// `[H, H]`, the closure of all commutators.
pub fn derived_subgroup(g: &CoxeterGroup, h: &[Elem]) -> Vec<Elem> {
    let mut comms: Vec<Elem> = Vec::new();
    let mut seen = vec![false; g.order()];
    for &a in h {
        for &b in h {
            let c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
            if !seen[c as usize] {
                seen[c as usize] = true;
                comms.push(c);
            }
        }
    }
    g.generate(&comms)
}

/// All linear characters of the subgroup `h`, ordered lexicographically by
/// their values on the greedy generators of `H/[H,H]`, each value read as
/// an exponent of `ζ_M` for the exponent `M` of the quotient.
pub fn linear_characters(g: &CoxeterGroup, h: &[Elem]) -> Vec<LinearCharacter> {
    let mut elems = h.to_vec();
    elems.sort_unstable();
    let derived = derived_subgroup(g, &elems);
    // coset labels of H/[H,H]
    let mut coset = vec![u32::MAX; g.order()];
    let mut reps: Vec<Elem> = Vec::new();
    for &x in &elems {
        if coset[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &d in &derived {
            coset[g.mul(x, d) as usize] = id;
        }
    }
    let q = reps.len();
    let qmul = |a: usize, b: usize| coset[g.mul(reps[a], reps[b]) as usize] as usize;
    let qorder = |a: usize| {
        let mut x = a;
        let mut n = 1u32;
        while x != 0 {
            x = qmul(x, a);
            n += 1;
        }
        n
    };
    // greedy generators of the abelian quotient
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![false; q];
    span[0] = true;
    let mut span_list = vec![0usize];
    for a in 1..q {
        if span[a] {
            continue;
        }
        gens.push(a);
        let mut frontier = span_list.clone();
        while let Some(x) = frontier.pop() {
            let y = qmul(x, a);
            if !span[y] {
                span[y] = true;
                span_list.push(y);
                frontier.push(y);
            }
        }
        // close under all generators again
        let mut stack = span_list.clone();
        while let Some(x) = stack.pop() {
            for &gq in &gens {
                let y = qmul(x, gq);
                if !span[y] {
                    span[y] = true;
                    span_list.push(y);
                    stack.push(y);
                }
            }
        }
    }
    let orders: Vec<u32> = gens.iter().map(|&a| qorder(a)).collect();
    let modulus = orders.iter().fold(1u32, |acc, &o| acc.lcm(&o));
    let mut out = Vec::new();
    let mut choice = vec![0u32; gens.len()];
    loop {
        // assign ζ_M^{choice_i · M / o_i} to generator i and propagate
        let mut qexp = vec![u32::MAX; q];
        qexp[0] = 0;
        let mut stack = vec![0usize];
        let mut ok = true;
        'bfs: while let Some(x) = stack.pop() {
            for (i, &a) in gens.iter().enumerate() {
                let y = qmul(x, a);
                let v = (qexp[x] + choice[i] * (modulus / orders[i])) % modulus;
                if qexp[y] == u32::MAX {
                    qexp[y] = v;
                    stack.push(y);
                } else if qexp[y] != v {
                    ok = false;
                    break 'bfs;
                }
            }
        }
        if ok {
            let exps: Vec<u32> = elems.iter().map(|&x| qexp[coset[x as usize] as usize]).collect();
            let ch = LinearCharacter::build(elems.clone(), modulus.max(1), exps);
            debug_assert!(ch.check_multiplicative(g).is_ok());
            out.push(ch);
        }
        // next choice in lexicographic order
        let mut i = gens.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < orders[i] {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// `Ind_H^W(f)(w) = |H|⁻¹ Σ_{g ∈ W, g⁻¹wg ∈ H} f(g⁻¹wg)`.
pub fn induce(g: &CoxeterGroup, h: &[Elem], f: impl Fn(Elem) -> Cyclo) -> ClassFunction {
    let cls = g.classes();
    let mut sums = vec![Cyclo::zero(); cls.len()];
    for &x in h {
        let k = g.class_of(x);
        sums[k] += &f(x);
    }
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(k, s)| s.scale(&Rational::new((g.order() / cls.sizes()[k]) as i64, h.len() as i64)))
        .collect();
    ClassFunction { group: g.uid(), values }
}

pub fn induce_linear(g: &CoxeterGroup, phi: &LinearCharacter) -> ClassFunction {
    induce(g, phi.elements(), |x| phi.value(x))
}

/// `⟨φ, χ|_H⟩_H`.
pub fn subgroup_inner(g: &CoxeterGroup, h: &[Elem], f: impl Fn(Elem) -> Cyclo, chi: &ClassFunction) -> Cyclo {
    let total: Cyclo = h.iter().map(|&x| &f(x) * &chi.at(g, x).conj()).sum();
    total.scale(&Rational::new(1, h.len() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RatElement;

    fn c(n: i64) -> Cyclo {
        Cyclo::from_int(n)
    }

    #[test]
    fn regular_and_sign() {
        let g = CoxeterGroup::from_label("A1").unwrap();
        let one = RatElement::one(&g);
        assert_eq!(ideal_character(&g, &one).unwrap(), ClassFunction::regular(&g));
        let mut e = RatElement::zero(&g);
        e.set(0, Rational::new(1, 2));
        e.set(1, Rational::new(-1, 2));
        assert_eq!(ideal_character(&g, &e).unwrap(), ClassFunction::sign(&g));
        let mut bad = RatElement::zero(&g);
        bad.set(1, Rational::one());
        assert!(matches!(ideal_character(&g, &bad), Err(Error::NotIdempotent)));
        assert_eq!(ideal_rank_lower_bound(&g, &e), 1);
    }

    #[test]
    fn linear_character_counts() {
        let g = CoxeterGroup::from_label("A2").unwrap();
        let all: Vec<Elem> = g.elements().collect();
        assert_eq!(linear_characters(&g, &all).len(), 2);
        let cyc = g.generate(&[g.from_word(&[0, 1]).unwrap()]);
        assert_eq!(linear_characters(&g, &cyc).len(), 3);
        for label in ["B3", "H3", "A1xA1", "I2(6)"] {
            let g = CoxeterGroup::from_label(label).unwrap();
            for &w in g.classes().reps() {
                let z = g.centralizer(w);
                let chars = linear_characters(&g, &z);
                assert_eq!(chars.len() * derived_subgroup(&g, &z).len(), z.len(), "{label}");
                for ch in &chars {
                    ch.check_multiplicative(&g).unwrap();
                }
                let distinct: std::collections::HashSet<_> = chars.iter().map(|c| c.exps.clone()).collect();
                assert_eq!(distinct.len(), chars.len());
            }
        }
    }

    #[test]
    fn induction_examples() {
        let g = CoxeterGroup::from_label("A2").unwrap();
        let cw = g.from_word(&[1, 0]).unwrap();
        let cyc = g.generate(&[cw]);
        let phi = LinearCharacter::from_fn(&g, &cyc, |x| {
            let k = (0..3).find(|&k| g.pow(g.inv(cw), k) == x).unwrap();
            Cyclo::root_of_unity(3, k)
        })
        .unwrap();
        let ind = induce_linear(&g, &phi);
        assert_eq!(ind.values(), &[c(2), c(0), c(-1)]);
        assert_eq!(ind.inner(&g, &ind).unwrap(), c(1));
        let all: Vec<Elem> = g.elements().collect();
        assert_eq!(induce(&g, &all, |x| ClassFunction::sign(&g).at(&g, x).clone()), ClassFunction::sign(&g));
        assert_eq!(induce(&g, &[0], |_| c(1)), ClassFunction::regular(&g));
        let eps = ClassFunction::sign(&g);
        assert_eq!(eps.mul(&eps).unwrap(), ClassFunction::trivial(&g));
        assert_eq!(ClassFunction::regular(&g).inner(&g, &ClassFunction::trivial(&g)).unwrap(), c(1));
        let h = CoxeterGroup::from_label("A2").unwrap();
        assert!(eps.add(&ClassFunction::sign(&h)).is_err());
    }
}
