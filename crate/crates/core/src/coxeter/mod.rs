//! Finite Coxeter groups realized as permutation groups of their root
//! systems.
//!
//! Every element is identified with an index into the group's element list.
//! The list is sorted by `(length, lex-least reduced word)`, so index order is
//! the canonical tie-breaking order and index `0` is the identity.

mod classes;
mod cosets;
mod diagram;
mod geometry;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

pub use classes::Classes;
pub use diagram::{CoxeterType, Diagram, MAX_ORDER};

use crate::error::{Error, Result};
use crate::scalars::{Cyclo, Rational};

/// Index of an element in [`CoxeterGroup::elements`] order.
pub type Elem = u32;

/// Subset of `S` as a bitmask over generator indices.
pub type Subset = u32;

pub mod subset {
    use super::Subset;

    pub fn card(s: Subset) -> usize {
        s.count_ones() as usize
    }

    pub fn members(s: Subset) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| s >> i & 1 == 1)
    }

    pub fn contains(outer: Subset, inner: Subset) -> bool {
        inner & !outer == 0
    }

    /// All subsets of `of`, ordered by `(cardinality, bitmask)`.
    pub fn all_within(of: Subset) -> Vec<Subset> {
        let mut out: Vec<Subset> = (0..=of).filter(|&x| contains(of, x)).collect();
        out.sort_by_key(|&x| (x.count_ones(), x));
        out
    }

    /// Writes `rank` binary digits, highest generator first: `0b011`.
    pub fn to_binary(s: Subset, rank: usize) -> String {
        format!("0b{:0width$b}", s, width = rank.max(1))
    }

    pub fn from_binary(text: &str) -> Option<Subset> {
        let digits = text.strip_prefix("0b")?;
        Subset::from_str_radix(digits, 2).ok()
    }
}

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

/// A group element tagged with its group, for the public API that must
/// reject mixing elements of different groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    uid: u64,
    pub id: Elem,
}

/// A finite Coxeter group with its root system and full multiplication table.
pub struct CoxeterGroup {
    uid: u64,
    diagram: Diagram,
    rank: usize,
    npos: usize,
    field_order: u32,
    /// Positive roots in simple-root coordinates, simple roots first, in
    /// breadth-first discovery order.
    roots: Vec<Vec<Cyclo>>,
    /// `gram2[s][t] = 2⟨α_s, α_t⟩`.
    gram2: Vec<Vec<Cyclo>>,
    size: usize,
    perms: Vec<u16>,
    mult: Vec<Elem>,
    inv: Vec<Elem>,
    len: Vec<u32>,
    words: Vec<Vec<u8>>,
    rdes: Vec<Subset>,
    support: Vec<Subset>,
    gens: Vec<Elem>,
    reflections: Vec<Elem>,
    refl_index: Vec<Option<u16>>,
    classes: Classes,
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterGroup({}, order {})", self.diagram, self.size)
    }
}

fn root_key(v: &[Cyclo], m: u32) -> Vec<Rational> {
    v.iter().flat_map(|c| c.coeffs_in(m)).collect()
}

/// `s(β) = β - 2⟨β, α_s⟩ α_s` with `⟨α_s, α_s⟩ = 1`.
fn reflect(gram2: &[Vec<Cyclo>], s: usize, beta: &[Cyclo]) -> Vec<Cyclo> {
    let coef: Cyclo = beta.iter().zip(&gram2[s]).map(|(b, g)| b * g).sum();
    let mut out = beta.to_vec();
    out[s] = &out[s] - &coef;
    out
}

impl CoxeterGroup {
    pub fn from_label(label: &str) -> Result<Self> {
        Ok(Self::new(Diagram::parse(label)?))
    }

    pub fn new(diagram: Diagram) -> Self {
        let rank = diagram.rank();
        let mut field_order = 1u32;
        for row in &diagram.matrix {
            for &m in row {
                if m >= 4 {
                    field_order = num_integer::lcm(field_order, 2 * m);
                }
            }
        }
        let gram2: Vec<Vec<Cyclo>> = (0..rank)
            .map(|s| {
                (0..rank)
                    .map(|t| match diagram.matrix[s][t] {
                        1 => Cyclo::from_int(2),
                        2 => Cyclo::zero(),
                        m => -Cyclo::two_cos_pi_over(m),
                    })
                    .collect()
            })
            .collect();

        // positive roots by closure of Δ under simple reflections
        let mut roots: Vec<Vec<Cyclo>> = Vec::new();
        let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
        for s in 0..rank {
            let mut v = vec![Cyclo::zero(); rank];
            v[s] = Cyclo::one();
            index.insert(root_key(&v, field_order), s);
            roots.push(v);
        }
        let mut head = 0;
        while head < roots.len() {
            let beta = roots[head].clone();
            for s in 0..rank {
                if head == s {
                    continue;
                }
                let img = reflect(&gram2, s, &beta);
                let key = root_key(&img, field_order);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(key) {
                    e.insert(roots.len());
                    roots.push(img);
                }
            }
            head += 1;
        }
        let npos = roots.len();

        let simple_perms: Vec<Vec<u16>> = (0..rank)
            .map(|s| {
                let mut p = vec![0u16; 2 * npos];
                for i in 0..npos {
                    if i == s {
                        p[i] = (i + npos) as u16;
                        p[i + npos] = i as u16;
                        continue;
                    }
                    let img = reflect(&gram2, s, &roots[i]);
                    let j = index[&root_key(&img, field_order)];
                    p[i] = j as u16;
                    p[i + npos] = (j + npos) as u16;
                }
                p
            })
            .collect();

        Self::enumerate(diagram, rank, npos, field_order, roots, gram2, simple_perms)
    }

    fn enumerate(
        diagram: Diagram,
        rank: usize,
        npos: usize,
        field_order: u32,
        roots: Vec<Vec<Cyclo>>,
        gram2: Vec<Vec<Cyclo>>,
        simple_perms: Vec<Vec<u16>>,
    ) -> Self {
        let width = 2 * npos;
        let identity: Vec<u16> = (0..width as u16).collect();
        let mut perms: Vec<Vec<u16>> = vec![identity.clone()];
        let mut lookup: HashMap<Vec<u16>, usize> = HashMap::new();
        lookup.insert(identity[..rank].to_vec(), 0);
        let mut queue = VecDeque::from([0usize]);
        let mut rmul_bfs: Vec<Vec<usize>> = Vec::new();
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(rank);
            for sp in &simple_perms {
                let q: Vec<u16> = sp.iter().map(|&k| perms[i][k as usize]).collect();
                let key = q[..rank].to_vec();
                let j = *lookup.entry(key).or_insert_with(|| {
                    perms.push(q);
                    queue.push_back(perms.len() - 1);
                    perms.len() - 1
                });
                row.push(j);
            }
            if rmul_bfs.len() <= i {
                rmul_bfs.resize(i + 1, Vec::new());
            }
            rmul_bfs[i] = row;
        }
        let size = perms.len();
        assert_eq!(size as u64, diagram.order(), "enumeration disagrees with the order formula");

        let inv_perm = |p: &[u16]| {
            let mut q = vec![0u16; p.len()];
            for (i, &j) in p.iter().enumerate() {
                q[j as usize] = i as u16;
            }
            q
        };
        let inv_bfs: Vec<usize> = perms.iter().map(|p| lookup[&inv_perm(p)[..rank]]).collect();
        let len_bfs: Vec<u32> =
            perms.iter().map(|p| p[..npos].iter().filter(|&&k| k as usize >= npos).count() as u32).collect();
        // s is a left descent of w iff it is a right descent of w⁻¹
        let words_bfs: Vec<Vec<u8>> = (0..size)
            .map(|w0| {
                let mut w = w0;
                let mut word = Vec::new();
                while len_bfs[w] > 0 {
                    let wi = inv_bfs[w];
                    let s = (0..rank).find(|&s| perms[wi][s] as usize >= npos).unwrap();
                    word.push(s as u8);
                    w = inv_bfs[rmul_bfs[wi][s]];
                }
                word
            })
            .collect();

        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by(|&a, &b| (len_bfs[a], &words_bfs[a]).cmp(&(len_bfs[b], &words_bfs[b])));
        let mut new_id = vec![0 as Elem; size];
        for (k, &old) in order.iter().enumerate() {
            new_id[old] = k as Elem;
        }

        let flat_perms: Vec<u16> = order.iter().flat_map(|&o| perms[o].iter().copied()).collect();
        let inv: Vec<Elem> = order.iter().map(|&o| new_id[inv_bfs[o]]).collect();
        let len: Vec<u32> = order.iter().map(|&o| len_bfs[o]).collect();
        let words: Vec<Vec<u8>> = order.iter().map(|&o| words_bfs[o].clone()).collect();
        let rmul: Vec<Vec<Elem>> = order.iter().map(|&o| rmul_bfs[o].iter().map(|&j| new_id[j]).collect()).collect();
        let rdes: Vec<Subset> = (0..size)
            .map(|w| {
                let p = &flat_perms[w * width..w * width + rank];
                (0..rank).filter(|&s| p[s] as usize >= npos).fold(0, |m, s| m | 1 << s)
            })
            .collect();
        let support: Vec<Subset> = words.iter().map(|wd| wd.iter().fold(0, |m, &s| m | 1 << s)).collect();
        let gens: Vec<Elem> = (0..rank).map(|s| rmul[0][s]).collect();

        // a·b = (a·b')·s where b = b'·s and b' precedes b
        let mut mult = vec![0 as Elem; size * size];
        let mut prefix = vec![0 as Elem; size];
        let mut last = vec![0usize; size];
        for b in 1..size {
            let wd = &words[b];
            let s = *wd.last().unwrap() as usize;
            last[b] = s;
            prefix[b] = (0..wd.len() - 1).fold(0 as Elem, |e, k| rmul[e as usize][wd[k] as usize]);
        }
        for a in 0..size {
            let row = &mut mult[a * size..(a + 1) * size];
            row[0] = a as Elem;
            for b in 1..size {
                row[b] = rmul[row[prefix[b] as usize] as usize][last[b]];
            }
        }

        let mut reflections = vec![Elem::MAX; npos];
        for w in 0..size {
            for s in 0..rank {
                let j = flat_perms[w * width + s] as usize;
                if j < npos && reflections[j] == Elem::MAX {
                    let ws = mult[w * size + gens[s] as usize];
                    reflections[j] = mult[ws as usize * size + inv[w] as usize];
                }
            }
        }
        let mut refl_index = vec![None; size];
        for (i, &t) in reflections.iter().enumerate() {
            refl_index[t as usize] = Some(i as u16);
        }

        let mut g = CoxeterGroup {
            uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
            diagram,
            rank,
            npos,
            field_order,
            roots,
            gram2,
            size,
            perms: flat_perms,
            mult,
            inv,
            len,
            words,
            rdes,
            support,
            gens,
            reflections,
            refl_index,
            classes: Classes::default(),
        };
        g.classes = Classes::compute(&g);
        g
    }

    /// Identity of this group instance, distinct for every construction.
    pub fn uid(&self) -> u64 {
        self.uid
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn label(&self) -> &str {
        &self.diagram.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn full_set(&self) -> Subset {
        ((1u64 << self.rank) - 1) as Subset
    }

    pub fn order(&self) -> usize {
        self.size
    }

    /// `N = |Φ⁺|`.
    pub fn num_positive_roots(&self) -> usize {
        self.npos
    }

    /// Order `n` of a cyclotomic field holding all root coordinates.
    pub fn field_order(&self) -> u32 {
        self.field_order
    }

    /// Root `i` for `i < 2N`; root `i + N` is the negative of root `i`.
    pub fn root(&self, i: usize) -> Vec<Cyclo> {
        if i < self.npos {
            self.roots[i].clone()
        } else {
            self.roots[i - self.npos].iter().map(|c| -c).collect()
        }
    }

    pub fn gram2(&self) -> &[Vec<Cyclo>] {
        &self.gram2
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size as Elem
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn generator(&self, s: usize) -> Elem {
        self.gens[s]
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mult[a as usize * self.size + b as usize]
    }

    #[inline]
    /// Row `a` of the multiplication table: `b ↦ a b`.
    pub fn mult_row(&self, a: Elem) -> &[Elem] {
        &self.mult[a as usize * self.size..(a as usize + 1) * self.size]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// `a b a⁻¹`.
    pub fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn mul_all(&self, elems: &[Elem]) -> Elem {
        elems.iter().fold(0, |acc, &e| self.mul(acc, e))
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, a: Elem) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    #[inline]
    pub fn length(&self, a: Elem) -> u32 {
        self.len[a as usize]
    }

    /// `(-1)^ℓ(w)`.
    pub fn sign(&self, a: Elem) -> i64 {
        if self.len[a as usize].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Image of root `i` under `w`.
    #[inline]
    pub fn act_root(&self, w: Elem, i: usize) -> usize {
        let width = 2 * self.npos;
        self.perms[w as usize * width + i] as usize
    }

    pub fn perm(&self, w: Elem) -> &[u16] {
        let width = 2 * self.npos;
        &self.perms[w as usize * width..(w as usize + 1) * width]
    }

    /// `{s : ℓ(ws) < ℓ(w)}`.
    pub fn right_descents(&self, w: Elem) -> Subset {
        self.rdes[w as usize]
    }

    /// `{s : ℓ(sw) < ℓ(w)}`.
    pub fn left_descents(&self, w: Elem) -> Subset {
        self.rdes[self.inv(w) as usize]
    }

    /// Lex-least reduced word, as generator indices.
    pub fn word(&self, w: Elem) -> &[u8] {
        &self.words[w as usize]
    }

    pub fn word_string(&self, w: Elem) -> String {
        self.words[w as usize].iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
    }

    pub fn from_word(&self, word: &[usize]) -> Result<Elem> {
        word.iter().try_fold(0, |acc, &s| {
            if s >= self.rank {
                return Err(Error::InvalidArgument(format!("generator {s} out of range")));
            }
            Ok(self.mul(acc, self.gens[s]))
        })
    }

    /// Generators appearing in any reduced word of `w`.
    pub fn support(&self, w: Elem) -> Subset {
        self.support[w as usize]
    }

    pub fn in_parabolic(&self, w: Elem, i: Subset) -> bool {
        subset::contains(i, self.support[w as usize])
    }

    /// Elements of `W_I` in canonical order.
    pub fn parabolic(&self, i: Subset) -> Vec<Elem> {
        self.elements().filter(|&w| self.in_parabolic(w, i)).collect()
    }

    pub fn longest_element(&self) -> Elem {
        self.size as Elem - 1
    }

    /// Longest element of `W_I`.
    pub fn longest_in(&self, i: Subset) -> Elem {
        *self.parabolic(i).last().unwrap()
    }

    pub fn reflections(&self) -> &[Elem] {
        &self.reflections
    }

    /// Index of `t` in [`Self::reflections`], which matches the index of its
    /// positive root.
    pub fn reflection_index(&self, t: Elem) -> Option<usize> {
        self.refl_index[t as usize].map(usize::from)
    }

    pub fn is_reflection(&self, t: Elem) -> bool {
        self.refl_index[t as usize].is_some()
    }

    pub fn classes(&self) -> &Classes {
        &self.classes
    }

    pub fn class_of(&self, w: Elem) -> usize {
        self.classes.class_of(w)
    }

    pub fn centralizer(&self, w: Elem) -> Vec<Elem> {
        self.elements().filter(|&g| self.mul(g, w) == self.mul(w, g)).collect()
    }

    /// Smallest subgroup containing `gens`, in canonical order.
    pub fn generate(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.size];
        seen[0] = true;
        let mut stack = vec![0 as Elem];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        self.elements().filter(|&w| seen[w as usize]).collect()
    }

    pub fn is_subgroup(&self, h: &[Elem]) -> bool {
        let set = self.membership(h);
        h.contains(&0) && h.iter().all(|&a| h.iter().all(|&b| set[self.mul(a, b) as usize]))
    }

    pub fn membership(&self, h: &[Elem]) -> Vec<bool> {
        let mut set = vec![false; self.size];
        for &x in h {
            set[x as usize] = true;
        }
        set
    }

    pub fn element(&self, word: &[usize]) -> Result<Element> {
        Ok(Element { uid: self.uid, id: self.from_word(word)? })
    }

    fn check(&self, e: &Element) -> Result<Elem> {
        if e.uid != self.uid {
            return Err(Error::InvalidArgument("element belongs to a different group".into()));
        }
        Ok(e.id)
    }

    pub fn wrap(&self, id: Elem) -> Element {
        Element { uid: self.uid, id }
    }

    /// Product of two tagged elements; rejects elements of another group.
    pub fn product(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(self.wrap(self.mul(self.check(a)?, self.check(b)?)))
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        Ok(self.wrap(self.inv(self.check(a)?)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> CoxeterGroup {
        CoxeterGroup::from_label(s).unwrap()
    }

    #[test]
    fn orders_and_roots() {
        for (s, order, npos) in [
            ("A1", 2, 1),
            ("A2", 6, 3),
            ("A3", 24, 6),
            ("B2", 8, 4),
            ("B3", 48, 9),
            ("D4", 192, 12),
            ("H3", 120, 15),
            ("I2(5)", 10, 5),
            ("I2(12)", 24, 12),
            ("A2xA1", 12, 4),
        ] {
            let g = group(s);
            assert_eq!(g.order(), order, "{s}");
            assert_eq!(g.num_positive_roots(), npos, "{s}");
            assert_eq!(g.reflections().len(), npos, "{s}");
            assert_eq!(g.length(g.longest_element()) as usize, npos, "{s}");
        }
    }

    #[test]
    fn reflections_are_distinct_involutions() {
        let g = group("H3");
        let mut seen = std::collections::HashSet::new();
        for &t in g.reflections() {
            assert!(seen.insert(t));
            assert_eq!(g.mul(t, t), 0);
        }
    }

    #[test]
    fn basic_element_ops() {
        let g = group("A2");
        assert_eq!(g.length(0), 0);
        assert!(g.word(0).is_empty());
        let aba = g.from_word(&[0, 1, 0]).unwrap();
        let bab = g.from_word(&[1, 0, 1]).unwrap();
        assert_eq!(aba, bab);
        assert_eq!(g.length(aba), 3);
        assert_eq!(g.word(aba), &[0, 1, 0]);
        assert_eq!(g.right_descents(g.longest_element()), 0b11);
        assert_eq!(g.left_descents(g.generator(1)), 0b10);
    }

    #[test]
    fn negation_commutes_and_lengths_agree() {
        let g = group("B3");
        let n = g.num_positive_roots();
        for w in g.elements() {
            let p = g.perm(w);
            for i in 0..n {
                assert_eq!(p[i + n] as usize, (p[i] as usize + n) % (2 * n));
            }
            assert_eq!(g.length(w), g.length(g.inv(w)));
            assert_eq!(g.word(w).len() as u32, g.length(w));
        }
    }

    #[test]
    fn longest_element_of_b2_is_central() {
        let g = group("B2");
        let w0 = g.longest_element();
        assert_eq!(g.length(w0), 4);
        assert!(g.elements().all(|x| g.mul(x, w0) == g.mul(w0, x)));
        let a1 = group("A1");
        assert_eq!(a1.longest_element(), a1.generator(0));
    }

    #[test]
    fn mixing_groups_is_rejected() {
        let g = group("A2");
        let h = group("A2");
        let a = g.element(&[0]).unwrap();
        let b = h.element(&[1]).unwrap();
        assert!(g.product(&a, &b).is_err());
        assert!(g.product(&a, &g.element(&[1]).unwrap()).is_ok());
    }

    #[test]
    fn simple_reflection_negates_its_root() {
        let g = group("H3");
        for s in 0..3 {
            let img = g.act_root(g.generator(s), s);
            assert_eq!(img, s + g.num_positive_roots());
        }
    }
}
