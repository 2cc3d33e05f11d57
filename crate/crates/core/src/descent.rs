//! Solomon's descent algebra, the weighted triangular system defining the
//! quasi-idempotents `e_I^σ`, and the idempotents `e_λ^σ`.
//!
//! A [`DescentAlgebra`] is built relative to a parabolic subsystem
//! `(W_L, L)` of an ambient group; with `L = S` it is `Σ(W)` itself. Its
//! group-algebra realizations live in `ℂW` of the ambient group.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use rand::Rng;
use serde_json::{json, Map, Value};

use crate::algebra::RatElement;
use crate::coxeter::{subset, CoxeterGroup, Elem, Subset};
use crate::error::{Error, Result};
use crate::scalars::Rational;
use crate::shapes::Shape;

/// A positive weight on subsets, `σ: 2^S → ℚ_{>0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaFn {
    default: Rational,
    overrides: BTreeMap<Subset, Rational>,
}

impl Default for SigmaFn {
    fn default() -> Self {
        SigmaFn::one()
    }
}

impl SigmaFn {
    /// The constant function `1`.
    pub fn one() -> Self {
        SigmaFn { default: Rational::one(), overrides: BTreeMap::new() }
    }

    pub fn new(default: Rational, overrides: BTreeMap<Subset, Rational>) -> Result<Self> {
        if default.signum() <= 0 {
            return Err(Error::InvalidArgument(format!("sigma default {default} is not positive")));
        }
        if let Some((k, v)) = overrides.iter().find(|(_, v)| v.signum() <= 0) {
            return Err(Error::InvalidArgument(format!("sigma({k:#b}) = {v} is not positive")));
        }
        let overrides = overrides.into_iter().filter(|(_, v)| *v != default).collect();
        Ok(SigmaFn { default, overrides })
    }

    /// An explicit table on the subsets of `of`.
    pub fn from_table(table: impl IntoIterator<Item = (Subset, Rational)>) -> Result<Self> {
        Self::new(Rational::one(), table.into_iter().collect())
    }

    pub fn get(&self, i: Subset) -> &Rational {
        self.overrides.get(&i).unwrap_or(&self.default)
    }

    pub fn is_constant_one(&self) -> bool {
        self.default.is_one() && self.overrides.is_empty()
    }

    /// Values `p/q` with `1 ≤ p, q ≤ 9` on every subset of `of`.
    pub fn random<R: Rng>(rng: &mut R, of: Subset) -> Self {
        let table =
            subset::all_within(of).into_iter().map(|i| (i, Rational::new(rng.gen_range(1..=9), rng.gen_range(1..=9))));
        Self::from_table(table).expect("positive by construction")
    }

    /// `σ(J₁ ⊔ J₂) = σ₁(J₁) σ₂(J₂)` for the factor masks `parts`.
    pub fn product_of(parts: &[(Subset, SigmaFn)]) -> Self {
        let full = parts.iter().fold(0, |m, (p, _)| m | p);
        let table = subset::all_within(full).into_iter().map(|j| {
            let v = parts.iter().fold(Rational::one(), |acc, (p, s)| &acc * s.get(j & p));
            (j, v)
        });
        Self::from_table(table).expect("products of positive values")
    }

    /// Parses `{"default": "1", "overrides": {"0b011": "3/2"}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("sigma: {e}")))?;
        let obj = v.as_object().ok_or_else(|| Error::Parse("sigma: expected an object".into()))?;
        let num = |x: &Value| -> Result<Rational> {
            match x {
                Value::String(s) => s.parse(),
                Value::Number(n) if n.is_i64() => Ok(Rational::from_int(n.as_i64().unwrap_or(0))),
                _ => Err(Error::Parse(format!("sigma: {x} is not an exact number"))),
            }
        };
        let default = obj.get("default").map(num).transpose()?.unwrap_or_else(Rational::one);
        let mut overrides = BTreeMap::new();
        if let Some(o) = obj.get("overrides") {
            let o = o.as_object().ok_or_else(|| Error::Parse("sigma: overrides must be an object".into()))?;
            for (k, x) in o {
                let key = subset::from_binary(k).ok_or_else(|| Error::Parse(format!("sigma: bad subset key {k}")))?;
                overrides.insert(key, num(x)?);
            }
        }
        for k in obj.keys() {
            if k != "default" && k != "overrides" {
                return Err(Error::Parse(format!("sigma: unknown field {k}")));
            }
        }
        Self::new(default, overrides)
    }

    pub fn to_json(&self, rank: usize) -> Value {
        let overrides: Map<String, Value> =
            self.overrides.iter().map(|(k, v)| (subset::to_binary(*k, rank), Value::String(v.to_string()))).collect();
        json!({"default": self.default.to_string(), "overrides": overrides})
    }

    /// Rejects keys outside `of`.
    pub fn check_within(&self, of: Subset, rank: usize) -> Result<()> {
        match self.overrides.keys().find(|&&k| !subset::contains(of, k)) {
            Some(&k) => Err(Error::InvalidArgument(format!(
                "sigma key {} is not a subset of the generators",
                subset::to_binary(k, rank)
            ))),
            None => Ok(()),
        }
    }
}

/// `Σ_I coords[I] x_I`, absent coordinates zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DescentElement {
    coords: BTreeMap<Subset, Rational>,
}

impl DescentElement {
    pub fn zero() -> Self {
        DescentElement::default()
    }

    pub fn x(i: Subset) -> Self {
        let mut coords = BTreeMap::new();
        coords.insert(i, Rational::one());
        DescentElement { coords }
    }

    pub fn coord(&self, i: Subset) -> Rational {
        self.coords.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, &Rational)> {
        self.coords.iter().map(|(k, v)| (*k, v))
    }

    /// Terms in `(cardinality, mask)` order.
    pub fn sorted_terms(&self) -> Vec<(Subset, Rational)> {
        let mut v: Vec<_> = self.coords.iter().map(|(k, c)| (*k, c.clone())).collect();
        v.sort_by_key(|(k, _)| (k.count_ones(), *k));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add_term(&mut self, i: Subset, c: &Rational) {
        let v = self.coords.entry(i).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.coords.remove(&i);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &o.coords {
            out.add_term(*k, v);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DescentElement { coords: self.coords.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn to_json(&self, rank: usize) -> Value {
        let m: Map<String, Value> =
            self.coords.iter().map(|(k, v)| (subset::to_binary(*k, rank), Value::String(v.to_string()))).collect();
        Value::Object(m)
    }
}

impl fmt::Display for DescentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.sorted_terms().iter().map(|(k, v)| format!("({v})x{k:b}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `Σ(W_L)` for a subset `L` of the generators of an ambient group.
pub struct DescentAlgebra<'g> {
    g: &'g CoxeterGroup,
    ambient: Subset,
    subsets: Vec<Subset>,
    index: HashMap<Subset, usize>,
    elems: Vec<Elem>,
    /// `simple_image[w][s]`: index `t` with `w(α_s) = α_t`, if any.
    simple_image: Vec<Vec<Option<u8>>>,
    structure: OnceLock<Vec<Vec<(u16, u32)>>>,
}

/// The solution `e_K^σ = Σ_J n^σ_{JK} x_J` of the triangular system.
#[derive(Clone, Debug)]
pub struct Idempotents {
    pub sigma: SigmaFn,
    pub ambient: Subset,
    e: BTreeMap<Subset, DescentElement>,
}

impl Idempotents {
    /// `e_K^σ`.
    pub fn e(&self, k: Subset) -> &DescentElement {
        &self.e[&k]
    }

    /// `n^σ_{JK}`.
    pub fn n(&self, j: Subset, k: Subset) -> Rational {
        self.e[&k].coord(j)
    }

    /// `σ(λ) = Σ_{I ∈ S_λ} σ(I)`.
    pub fn sigma_of(&self, s_lambda: &[Subset]) -> Rational {
        s_lambda.iter().map(|&i| self.sigma.get(i).clone()).sum()
    }

    /// `e_λ^σ = Σ_{I ∈ S_λ} σ(I) e_I^σ`.
    pub fn e_lambda(&self, s_lambda: &[Subset]) -> DescentElement {
        s_lambda.iter().fold(DescentElement::zero(), |acc, &i| acc.add(&self.e(i).scale(self.sigma.get(i))))
    }

    pub fn e_shape(&self, shape: &Shape) -> DescentElement {
        self.e_lambda(&shape.s_lambda)
    }
}

impl<'g> DescentAlgebra<'g> {
    pub fn new(g: &'g CoxeterGroup) -> Self {
        Self::parabolic(g, g.full_set())
    }

    /// `Σ(W_L)` with basis `x^L_I = Σ_{w ∈ W_L ∩ W^I} w`.
    pub fn parabolic(g: &'g CoxeterGroup, l: Subset) -> Self {
        let subsets = subset::all_within(l);
        let index = subsets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let elems = g.parabolic(l);
        let rank = g.rank();
        let simple_image = elems
            .iter()
            .map(|&w| {
                (0..rank)
                    .map(|s| {
                        let r = g.act_root(w, s);
                        (r < rank).then_some(r as u8)
                    })
                    .collect()
            })
            .collect();
        DescentAlgebra { g, ambient: l, subsets, index, elems, simple_image, structure: OnceLock::new() }
    }

    pub fn group(&self) -> &'g CoxeterGroup {
        self.g
    }

    pub fn ambient(&self) -> Subset {
        self.ambient
    }

    /// All subsets of `L` in `(cardinality, mask)` order.
    pub fn subsets(&self) -> &[Subset] {
        &self.subsets
    }

    /// Elements of `W_L`.
    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    fn pos(&self, i: Subset) -> usize {
        *self.index.get(&i).unwrap_or_else(|| panic!("{i:#b} is not a subset of {:#b}", self.ambient))
    }

    /// `{t : α_t ∈ w(Δ_J)}` when `w(Δ_J) ⊆ Δ`, by position of `w` in `W_L`.
    fn image(&self, wpos: usize, j: Subset) -> Option<Subset> {
        let img = &self.simple_image[wpos];
        subset::members(j).try_fold(0, |acc, s| img[s].map(|t| acc | 1 << t))
    }

    /// `x^L_I` as an element of `ℂW`.
    pub fn x_group(&self, i: Subset) -> RatElement {
        let members: Vec<Elem> = self.elems.iter().copied().filter(|&w| self.g.right_descents(w) & i == 0).collect();
        RatElement::sum_of(self.g, &members)
    }

    /// `Σ_I a_I x^L_I` in `ℂW`.
    pub fn to_group_algebra(&self, a: &DescentElement) -> RatElement {
        let mut out = RatElement::zero(self.g);
        for &w in &self.elems {
            let rd = self.g.right_descents(w);
            let mut c = Rational::zero();
            for (i, v) in a.terms() {
                if rd & i == 0 {
                    c += v;
                }
            }
            if !c.is_zero() {
                out.set(w, c);
            }
        }
        out
    }

    /// `Σ_I a_I x_I` with `x_I` taken in the ambient group, which equals
    /// `x_L · a` computed in `ℂW`.
    pub fn embed(&self, a: &DescentElement) -> RatElement {
        DescentAlgebra::new(self.g).to_group_algebra(a)
    }

    fn structure(&self) -> &Vec<Vec<(u16, u32)>> {
        self.structure.get_or_init(|| {
            let n = self.subsets.len();
            let mut counts: Vec<HashMap<u16, u32>> = vec![HashMap::new(); n * n];
            for (wp, &w) in self.elems.iter().enumerate() {
                let ld = self.g.left_descents(w);
                let rd = self.g.right_descents(w);
                let img = &self.simple_image[wp];
                for (ip, &i) in self.subsets.iter().enumerate() {
                    if ld & i != 0 {
                        continue;
                    }
                    for (jp, &j) in self.subsets.iter().enumerate() {
                        if rd & j != 0 {
                            continue;
                        }
                        let k = subset::members(j)
                            .filter(|&s| img[s].is_some_and(|t| i >> t & 1 == 1))
                            .fold(0, |m, s| m | 1 << s);
                        *counts[ip * n + jp].entry(self.pos(k) as u16).or_insert(0) += 1;
                    }
                }
            }
            counts
                .into_iter()
                .map(|m| {
                    let mut v: Vec<(u16, u32)> = m.into_iter().collect();
                    v.sort_unstable();
                    v
                })
                .collect()
        })
    }

    /// `a_{IJK} = |W_L^{IJK}|`.
    pub fn structure_constant(&self, i: Subset, j: Subset, k: Subset) -> u32 {
        let n = self.subsets.len();
        let kp = self.pos(k) as u16;
        self.structure()[self.pos(i) * n + self.pos(j)].iter().find(|(x, _)| *x == kp).map_or(0, |(_, c)| *c)
    }

    /// Product in `Σ(W_L)` via `x_I x_J = Σ_K a_{IJK} x_K`.
    pub fn product(&self, a: &DescentElement, b: &DescentElement) -> DescentElement {
        let n = self.subsets.len();
        let table = self.structure();
        let mut acc: Vec<Rational> = vec![Rational::zero(); n];
        for (i, ca) in a.terms() {
            let ip = self.pos(i);
            for (j, cb) in b.terms() {
                let c = ca * cb;
                for &(kp, cnt) in &table[ip * n + self.pos(j)] {
                    acc[kp as usize] += &(&c * &Rational::from_int(cnt as i64));
                }
            }
        }
        let mut out = DescentElement::zero();
        for (kp, v) in acc.into_iter().enumerate() {
            if !v.is_zero() {
                out.coords.insert(self.subsets[kp], v);
            }
        }
        out
    }

    /// `m^σ_{JK} = Σ_{w ∈ W_L^K, w(Δ_J) ⊆ Δ} σ(ʷJ)` for `J ⊆ K`, else `0`.
    pub fn m(&self, sigma: &SigmaFn, j: Subset, k: Subset) -> Rational {
        if !subset::contains(k, j) {
            return Rational::zero();
        }
        let mut total = Rational::zero();
        for (wp, &w) in self.elems.iter().enumerate() {
            if self.g.right_descents(w) & k != 0 {
                continue;
            }
            if let Some(img) = self.image(wp, j) {
                total += sigma.get(img);
            }
        }
        total
    }

    /// The full table `(J, K) ↦ m^σ_{JK}` over subsets of `L`.
    pub fn m_matrix(&self, sigma: &SigmaFn) -> BTreeMap<(Subset, Subset), Rational> {
        let mut out = BTreeMap::new();
        for (wp, &w) in self.elems.iter().enumerate() {
            let rd = self.g.right_descents(w);
            for &k in &self.subsets {
                if rd & k != 0 {
                    continue;
                }
                for j in subset::all_within(k) {
                    if let Some(img) = self.image(wp, j) {
                        *out.entry((j, k)).or_insert_with(Rational::zero) += sigma.get(img);
                    }
                }
            }
        }
        out
    }

    /// Solves `x_K = Σ_J m^σ_{JK} e_J^σ` by back-substitution in
    /// `(cardinality, mask)` order.
    pub fn solve(&self, sigma: &SigmaFn) -> Idempotents {
        let m = self.m_matrix(sigma);
        let mut e: BTreeMap<Subset, DescentElement> = BTreeMap::new();
        for &k in &self.subsets {
            let mut rhs = DescentElement::x(k);
            for j in subset::all_within(k) {
                if j == k {
                    continue;
                }
                if let Some(c) = m.get(&(j, k)) {
                    rhs = rhs.sub(&e[&j].scale(c));
                }
            }
            let diag = m[&(k, k)].recip().expect("m_KK is positive");
            e.insert(k, rhs.scale(&diag));
        }
        Idempotents { sigma: sigma.clone(), ambient: self.ambient, e }
    }

    /// `σ_L(I) = m^σ_{IL}` as a function on subsets of `L`.
    pub fn restrict_sigma(&self, sigma: &SigmaFn, l: Subset) -> SigmaFn {
        let table = subset::all_within(l).into_iter().map(|i| (i, self.m(sigma, i, l)));
        SigmaFn::from_table(table).expect("m_IL is positive")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn a1_system() {
        let g = CoxeterGroup::from_label("A1").unwrap();
        let d = DescentAlgebra::new(&g);
        let sigma = SigmaFn::one();
        assert_eq!(d.m(&sigma, 0, 0), q(2, 1));
        assert_eq!(d.m(&sigma, 0, 1), q(1, 1));
        let id = d.solve(&sigma);
        assert_eq!(id.n(0, 1), q(-1, 2));
        assert_eq!(id.n(1, 1), q(1, 1));
        let e0 = d.to_group_algebra(id.e(0));
        assert_eq!(e0.coeffs(), &[q(1, 2), q(1, 2)]);
        let e1 = d.to_group_algebra(id.e(1));
        assert_eq!(e1.coeffs(), &[q(1, 2), q(-1, 2)]);
    }

    #[test]
    fn x_basis_examples() {
        let g = CoxeterGroup::from_label("A2").unwrap();
        let d = DescentAlgebra::new(&g);
        assert_eq!(d.x_group(0b11), RatElement::one(&g));
        assert_eq!(d.x_group(0).weight(), 6);
        let x0 = DescentElement::x(0);
        assert_eq!(d.product(&DescentElement::x(0b11), &x0), x0);
    }

    #[test]
    fn product_matches_convolution_a2() {
        let g = CoxeterGroup::from_label("A2").unwrap();
        let d = DescentAlgebra::new(&g);
        for &i in d.subsets() {
            for &j in d.subsets() {
                let p = d.product(&DescentElement::x(i), &DescentElement::x(j));
                assert_eq!(d.to_group_algebra(&p), d.x_group(i).mul(&g, &d.x_group(j)), "{i} {j}");
            }
        }
    }

    #[test]
    fn m_edge_cases() {
        let g = CoxeterGroup::from_label("B3").unwrap();
        let d = DescentAlgebra::new(&g);
        let sigma = SigmaFn::random(&mut rand::rngs::mock::StepRng::new(3, 7), g.full_set());
        for &j in d.subsets() {
            assert_eq!(&d.m(&sigma, j, g.full_set()), sigma.get(j));
            for &k in d.subsets() {
                if j.count_ones() > k.count_ones() {
                    assert!(d.m(&sigma, j, k).is_zero());
                }
            }
            assert!(d.m(&sigma, j, j).signum() > 0);
        }
        let table = d.m_matrix(&sigma);
        for (&(j, k), v) in &table {
            assert_eq!(*v, d.m(&sigma, j, k));
        }
    }

    #[test]
    fn sigma_json_round_trip() {
        let s = SigmaFn::from_json(r#"{"default": "1", "overrides": {"0b011": "3/2"}}"#).unwrap();
        assert_eq!(s.get(0b011), &q(3, 2));
        assert_eq!(s.get(0b001), &q(1, 1));
        let back = SigmaFn::from_json(&s.to_json(3).to_string()).unwrap();
        assert_eq!(back, s);
        assert!(SigmaFn::from_json(r#"{"default": "-1"}"#).is_err());
        assert!(SigmaFn::from_json(r#"{"overrides": {"0b1": "0"}}"#).is_err());
        assert!(SigmaFn::from_json(r#"{"default": 0.5}"#).is_err());
    }
}
