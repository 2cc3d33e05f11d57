//! The Orlik–Solomon algebra of the reflection arrangement on its
//! no-broken-circuit basis, with the action of `W`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::algebra::GroupAlgebraElement;
use crate::characters::ClassFunction;
use crate::coxeter::{CoxeterGroup, Elem};
use crate::scalars::{Cyclo, Rational};
use crate::shapes::{Lattice, ReflSet};

/// A monomial `a_{t₁}⋯a_{t_p}` as a set of positions in the reflection order,
/// read in increasing position.
pub type Monomial = u64;

/// An element of `A` in the NBC basis: basis index to coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OSElement {
    terms: BTreeMap<u32, Cyclo>,
}

impl OSElement {
    pub fn zero() -> Self {
        OSElement::default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Cyclo)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, b: u32) -> Cyclo {
        self.terms.get(&b).cloned().unwrap_or_else(Cyclo::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, b: u32, c: &Cyclo) {
        let v = self.terms.entry(b).or_insert_with(Cyclo::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(*k, v);
        }
        out
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        OSElement { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// If `self = c · other` with `other ≠ 0`, returns `c`.
    pub fn ratio_to(&self, other: &Self) -> Option<Cyclo> {
        let (&k, base) = other.terms.iter().next()?;
        let c = self.coeff(k).checked_div(base).ok()?;
        if self.terms.len() != other.terms.len() {
            return None;
        }
        other.terms.iter().all(|(b, v)| self.coeff(*b) == v * &c).then_some(c)
    }
}

/// `A(𝒜)` with its NBC basis for a fixed linear order on reflections.
pub struct OrlikSolomon {
    /// `order[p]` is the reflection index at position `p`.
    order: Vec<usize>,
    position: Vec<usize>,
    /// Reflection set of each position, as a [`ReflSet`] over reflection indices.
    basis: Vec<Monomial>,
    /// Flat of each basis monomial.
    basis_flat: Vec<usize>,
    degrees: Vec<usize>,
    /// Normal forms of every subset of size at most the rank.
    normal: HashMap<Monomial, Vec<(u32, i64)>>,
    /// `conj_perm[w][p]`: position of `w t_p w⁻¹`.
    conj_perm: Vec<Vec<u8>>,
    rank: usize,
}

fn refls_of(order: &[usize], m: Monomial) -> ReflSet {
    positions(m).fold(0, |acc, p| acc | 1u64 << order[p])
}

fn positions(m: Monomial) -> impl Iterator<Item = usize> {
    (0..64).filter(move |p| m >> p & 1 == 1)
}

impl OrlikSolomon {
    /// Uses the reflection order of the group (positive roots in
    /// breadth-first order from the simple roots).
    pub fn new(g: &CoxeterGroup, lat: &Lattice) -> Self {
        Self::with_order(g, lat, (0..g.num_positive_roots()).collect())
    }

    /// `order[p]` is the reflection index placed at position `p`.
    pub fn with_order(g: &CoxeterGroup, lat: &Lattice, order: Vec<usize>) -> Self {
        let npos = order.len();
        assert_eq!(npos, g.num_positive_roots());
        let mut position = vec![0; npos];
        for (p, &t) in order.iter().enumerate() {
            position[t] = p;
        }
        let rank = lat.flats().iter().map(|f| f.codim).max().unwrap_or(0);
        let independent = |m: Monomial| lat.flats()[lat.closure(refls_of(&order, m))].codim == m.count_ones() as usize;
        // closure membership as a position mask
        let closure_mask = |m: Monomial| -> Monomial {
            let f = lat.closure(refls_of(&order, m));
            let refls = lat.flats()[f].reflections;
            (0..npos).filter(|&t| refls >> t & 1 == 1).fold(0, |acc, t| acc | 1 << position[t])
        };
        // a set is NBC iff independent and no smaller reflection lies in the
        // closure of any of its tails
        let is_nbc = |m: Monomial| {
            if !independent(m) {
                return false;
            }
            let ps: Vec<usize> = positions(m).collect();
            (0..ps.len()).all(|j| {
                let tail = ps[j..].iter().fold(0u64, |acc, &p| acc | 1 << p);
                let below = (1u64 << ps[j]) - 1;
                closure_mask(tail) & below == 0
            })
        };
        let mut subsets: Vec<Monomial> = Vec::new();
        let mut layer: Vec<Monomial> = vec![0];
        for _ in 0..=rank {
            subsets.extend(layer.iter().copied());
            let mut next = Vec::new();
            for &m in &layer {
                let start = if m == 0 { 0 } else { 64 - m.leading_zeros() as usize };
                for p in start..npos {
                    next.push(m | 1 << p);
                }
            }
            layer = next;
        }
        let mut basis: Vec<Monomial> = subsets.iter().copied().filter(|&m| is_nbc(m)).collect();
        basis.sort_by_key(|&m| (m.count_ones(), positions(m).collect::<Vec<_>>()));
        let basis_index: HashMap<Monomial, u32> = basis.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        let basis_flat = basis.iter().map(|&m| lat.closure(refls_of(&order, m))).collect();
        let mut degrees = vec![0; rank + 1];
        for &m in &basis {
            degrees[m.count_ones() as usize] += 1;
        }
        // straighten every subset, smaller subsets in the order relevant to
        // the recursion are resolved on demand
        let mut normal: HashMap<Monomial, Vec<(u32, i64)>> = HashMap::new();
        fn resolve(
            m: Monomial,
            normal: &mut HashMap<Monomial, Vec<(u32, i64)>>,
            basis_index: &HashMap<Monomial, u32>,
            independent: &dyn Fn(Monomial) -> bool,
            closure_mask: &dyn Fn(Monomial) -> Monomial,
        ) -> Vec<(u32, i64)> {
            if let Some(v) = normal.get(&m) {
                return v.clone();
            }
            let out = if let Some(&b) = basis_index.get(&m) {
                vec![(b, 1)]
            } else if !independent(m) {
                Vec::new()
            } else {
                let ps: Vec<usize> = positions(m).collect();
                let (j, t) = (0..ps.len())
                    .find_map(|j| {
                        let tail = ps[j..].iter().fold(0u64, |acc, &p| acc | 1 << p);
                        let below = closure_mask(tail) & ((1u64 << ps[j]) - 1);
                        (below != 0).then(|| (j, below.trailing_zeros() as usize))
                    })
                    .expect("independent non-NBC sets contain a broken circuit");
                // a_{T'} = Σ_{i≥1} (−1)^{i+1} a_t a_{T'∖T'_i} for the tail T'
                let head = &ps[..j];
                let tail = &ps[j..];
                let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
                for i in 0..tail.len() {
                    let sign_i = if i % 2 == 0 { 1 } else { -1 };
                    let mut word: Vec<usize> = head.to_vec();
                    word.push(t);
                    word.extend(tail.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &p)| p));
                    let Some((sorted, s)) = sort_word(&word) else { continue };
                    for (b, c) in resolve(sorted, normal, basis_index, independent, closure_mask) {
                        *acc.entry(b).or_insert(0) += sign_i * s * c;
                    }
                }
                acc.into_iter().filter(|&(_, c)| c != 0).collect()
            };
            normal.insert(m, out.clone());
            out
        }
        for &m in &subsets {
            resolve(m, &mut normal, &basis_index, &independent, &closure_mask);
        }
        let refl_elems: Vec<Elem> = order.iter().map(|&t| g.reflections()[t]).collect();
        let conj_perm = g
            .elements()
            .map(|w| {
                refl_elems
                    .iter()
                    .map(|&r| position[g.reflection_index(g.conj(w, r)).expect("conjugate of a reflection")] as u8)
                    .collect()
            })
            .collect();
        OrlikSolomon { order, position, basis, basis_flat, degrees, normal, conj_perm, rank }
    }

    /// `dim A^p` for `p = 0..=rank`.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Reflection indices of a basis monomial, in multiplication order.
    pub fn basis_reflections(&self, b: u32) -> Vec<usize> {
        positions(self.basis[b as usize]).map(|p| self.order[p]).collect()
    }

    pub fn basis_flat(&self, b: u32) -> usize {
        self.basis_flat[b as usize]
    }

    pub fn degree_of(&self, b: u32) -> usize {
        self.basis[b as usize].count_ones() as usize
    }

    /// Basis indices spanning `A_X`.
    pub fn flat_basis(&self, flat: usize) -> Vec<u32> {
        (0..self.basis.len() as u32).filter(|&b| self.basis_flat[b as usize] == flat).collect()
    }

    /// `a_{t₁}⋯a_{t_p}` for reflection indices in multiplication order.
    pub fn monomial(&self, refls: &[usize]) -> OSElement {
        let word: Vec<usize> = refls.iter().map(|&t| self.position[t]).collect();
        self.straighten_positions(&word, &Cyclo::one())
    }

    /// The basis element with index `b`.
    pub fn basis_element(&self, b: u32) -> OSElement {
        let mut out = OSElement::zero();
        out.add_term(b, &Cyclo::one());
        out
    }

    fn straighten_positions(&self, word: &[usize], c: &Cyclo) -> OSElement {
        let mut out = OSElement::zero();
        if word.len() > self.rank {
            return out;
        }
        let Some((m, s)) = sort_word(word) else { return out };
        for &(b, k) in &self.normal[&m] {
            out.add_term(b, &c.scale(&Rational::from_int(s * k)));
        }
        out
    }

    /// Normal form of `a_{t₁}⋯a_{t_p}` as integer coefficients on the basis.
    pub fn straighten(&self, refls: &[usize]) -> Vec<(u32, i64)> {
        let word: Vec<usize> = refls.iter().map(|&t| self.position[t]).collect();
        if word.len() > self.rank {
            return Vec::new();
        }
        match sort_word(&word) {
            Some((m, s)) => self.normal[&m].iter().map(|&(b, k)| (b, s * k)).collect(),
            None => Vec::new(),
        }
    }

    pub fn mul(&self, x: &OSElement, y: &OSElement) -> OSElement {
        let mut out = OSElement::zero();
        for (a, ca) in x.terms() {
            let pa: Vec<usize> = positions(self.basis[a as usize]).collect();
            for (b, cb) in y.terms() {
                let mut word = pa.clone();
                word.extend(positions(self.basis[b as usize]));
                out = out.add(&self.straighten_positions(&word, &(ca * cb)));
            }
        }
        out
    }

    /// `w · a_{t₁}⋯a_{t_p} = a_{w t₁ w⁻¹}⋯a_{w t_p w⁻¹}`.
    pub fn act(&self, w: Elem, x: &OSElement) -> OSElement {
        let perm = &self.conj_perm[w as usize];
        let mut out = OSElement::zero();
        for (b, c) in x.terms() {
            let word: Vec<usize> = positions(self.basis[b as usize]).map(|p| perm[p] as usize).collect();
            out = out.add(&self.straighten_positions(&word, c));
        }
        out
    }

    /// `(Σ c_w w) · x`.
    pub fn act_algebra<T: crate::algebra::Scalar>(&self, a: &GroupAlgebraElement<T>, x: &OSElement) -> OSElement {
        let mut out = OSElement::zero();
        for (w, c) in a.support() {
            out = out.add(&self.act(w, x).scale(&c.to_cyclo()));
        }
        out
    }

    /// Coefficient of basis `b` in `w · b`, an integer.
    fn diagonal(&self, w: Elem, b: u32) -> i64 {
        let perm = &self.conj_perm[w as usize];
        let word: Vec<usize> = positions(self.basis[b as usize]).map(|p| perm[p] as usize).collect();
        let Some((m, s)) = sort_word(&word) else { return 0 };
        self.normal[&m].iter().find(|&&(k, _)| k == b).map_or(0, |&(_, c)| s * c)
    }

    /// Trace of `w` on the span of the given basis elements, which must be
    /// a `W`-stable (or at least `w`-stable) sum of pieces `A_X`.
    pub fn trace(&self, w: Elem, span: &[u32]) -> i64 {
        span.iter().map(|&b| self.diagonal(w, b)).sum()
    }

    /// Character of `W` on the span of `basis`, which must be `W`-stable.
    pub fn character(&self, g: &CoxeterGroup, span: &[u32]) -> ClassFunction {
        let values: Vec<Cyclo> = g.classes().reps().par_iter().map(|&w| Cyclo::from_int(self.trace(w, span))).collect();
        ClassFunction::new(g, values).expect("one value per class")
    }

    /// Basis of `A_λ = ⊕_{X ∈ λ} A_X`.
    pub fn shape_basis(&self, lat: &Lattice, shape: usize) -> Vec<u32> {
        (0..self.basis.len() as u32).filter(|&b| lat.flats()[self.basis_flat[b as usize]].shape == shape).collect()
    }

    /// Basis of `A^p`.
    pub fn degree_basis(&self, p: usize) -> Vec<u32> {
        (0..self.basis.len() as u32).filter(|&b| self.degree_of(b) == p).collect()
    }

    /// Trace of `y ∈ N_W(W_X)` on `A_X`.
    pub fn flat_trace(&self, y: Elem, flat: usize) -> i64 {
        self.trace(y, &self.flat_basis(flat))
    }
}

/// Sorts positions, returning the set and the permutation sign, or `None`
/// on a repeat.
fn sort_word(word: &[usize]) -> Option<(Monomial, i64)> {
    let mut v = word.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((v.iter().fold(0, |acc, &p| acc | 1 << p), sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(label: &str) -> (CoxeterGroup, Lattice, OrlikSolomon) {
        let g = CoxeterGroup::from_label(label).unwrap();
        let lat = Lattice::new(&g);
        let os = OrlikSolomon::new(&g, &lat);
        (g, lat, os)
    }

    #[test]
    fn graded_dimensions() {
        let (_, _, os) = build("A1");
        assert_eq!(os.degrees(), &[1, 1]);
        let (_, _, os) = build("A2");
        assert_eq!(os.degrees(), &[1, 3, 2]);
        for label in ["B2", "A3", "B3", "H3", "I2(7)", "A2xA1"] {
            let (g, _, os) = build(label);
            assert_eq!(os.dim(), g.order(), "{label}");
        }
    }

    #[test]
    fn straightening_rules() {
        let (_, _, os) = build("A2");
        assert!(os.straighten(&[0, 0]).is_empty());
        let fwd = os.straighten(&[0, 1]);
        let back = os.straighten(&[1, 0]);
        assert_eq!(fwd.len(), 1);
        assert_eq!(back, vec![(fwd[0].0, -fwd[0].1)]);
        // reflections 0 < 1 < 2 form a circuit; {1, 2} is a broken circuit
        let lhs = os.monomial(&[1, 2]);
        let rhs = os.monomial(&[0, 2]).add(&os.monomial(&[0, 1]).scale(&Cyclo::from_int(-1)));
        assert_eq!(lhs, rhs);
        assert!(os.monomial(&[0, 1, 2]).is_zero());
    }

    #[test]
    fn action_examples() {
        let (g, lat, os) = build("A2");
        let s1 = g.generator(0);
        let a = os.monomial(&[g.reflection_index(s1).unwrap()]);
        assert_eq!(os.act(s1, &a), a);
        assert_eq!(os.act(0, &a), a);
        let top = os.shape_basis(&lat, lat.shapes().len() - 1);
        assert_eq!(top.len(), 2);
        let chi = os.character(&g, &top);
        assert_eq!(chi.values(), &[Cyclo::from_int(2), Cyclo::from_int(0), Cyclo::from_int(-1)]);
        let (g1, _, os1) = build("A1");
        let all: Vec<u32> = os1.degree_basis(1);
        assert_eq!(os1.character(&g1, &all), ClassFunction::trivial(&g1));
        assert_eq!(os1.character(&g1, &os1.degree_basis(0)), ClassFunction::trivial(&g1));
    }
}
