//! The intersection lattice of the reflection arrangement, its W-orbits
//! (shapes), and the characters `α_X`.

use std::collections::HashMap;

use crate::coxeter::{subset, CoxeterGroup, Elem, Subset};
use crate::error::{Error, Result};
use crate::scalars::Cyclo;

/// Set of reflections, bit `i` for the reflection of positive root `i`.
pub type ReflSet = u64;

/// An element `X` of the intersection lattice, keyed by the reflections
/// fixing it pointwise.
#[derive(Clone, Debug)]
pub struct Flat {
    pub reflections: ReflSet,
    pub codim: usize,
    pub shape: usize,
    /// Basis of `X` in simple-root coordinates.
    pub basis: Vec<Vec<Cyclo>>,
}

#[derive(Clone, Debug)]
pub struct Shape {
    pub id: usize,
    pub codim: usize,
    /// Flat indices of the orbit, ascending.
    pub members: Vec<usize>,
    /// `S_λ = {I : X_I ∈ λ}`, ordered by sorted member lists.
    pub s_lambda: Vec<Subset>,
    /// The lex-least member of `S_λ`.
    pub canonical: Subset,
    /// Conjugacy classes of shape `λ`, ascending.
    pub classes: Vec<usize>,
    /// `|sh⁻¹(λ)|`.
    pub preimage_size: usize,
}

pub struct Lattice {
    flats: Vec<Flat>,
    index: HashMap<ReflSet, usize>,
    elem_flat: Vec<u32>,
    shapes: Vec<Shape>,
    /// Flat ids sorted by number of reflections, for closures.
    by_size: Vec<usize>,
}

/// Generators of `I` as a sorted list, the key for "lex-least".
pub fn lex_key(s: Subset) -> Vec<usize> {
    subset::members(s).collect()
}

impl Lattice {
    pub fn new(g: &CoxeterGroup) -> Self {
        let npos = g.num_positive_roots();
        assert!(npos <= 64, "reflection sets are stored in 64 bits");
        let roots: Vec<Vec<Cyclo>> = (0..npos).map(|i| g.root(i)).collect();
        let mut flats: Vec<Flat> = Vec::new();
        let mut index: HashMap<ReflSet, usize> = HashMap::new();
        let mut elem_flat = vec![0u32; g.order()];
        for w in g.elements() {
            let basis = g.fixed_space(w);
            let mask = (0..npos)
                .filter(|&i| basis.iter().all(|v| g.form2(v, &roots[i]).is_zero()))
                .fold(0 as ReflSet, |m, i| m | 1 << i);
            let id = *index.entry(mask).or_insert_with(|| {
                flats.push(Flat { reflections: mask, codim: g.rank() - basis.len(), shape: 0, basis });
                flats.len() - 1
            });
            elem_flat[w as usize] = id as u32;
        }

        // orbits under the simple reflections
        let mut orbit_of = vec![usize::MAX; flats.len()];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for f in 0..flats.len() {
            if orbit_of[f] != usize::MAX {
                continue;
            }
            let o = orbits.len();
            orbit_of[f] = o;
            let mut members = vec![f];
            let mut stack = vec![f];
            while let Some(x) = stack.pop() {
                for &s in g.generators() {
                    let y = index[&act_on_refls(g, s, flats[x].reflections)];
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = o;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            orbits.push(members);
        }

        let mut s_lambda: Vec<Vec<Subset>> = vec![Vec::new(); orbits.len()];
        for i in subset::all_within(g.full_set()) {
            let f = index[&parabolic_refls(g, i)];
            s_lambda[orbit_of[f]].push(i);
        }
        for (o, list) in s_lambda.iter_mut().enumerate() {
            assert!(!list.is_empty(), "orbit {o} contains no X_I");
            list.sort_by_key(|&i| lex_key(i));
        }
        let mut order: Vec<usize> = (0..orbits.len()).collect();
        order.sort_by_key(|&o| (flats[orbits[o][0]].codim, lex_key(s_lambda[o][0])));

        let mut shapes = Vec::new();
        for (id, &o) in order.iter().enumerate() {
            for &f in &orbits[o] {
                flats[f].shape = id;
            }
            shapes.push(Shape {
                id,
                codim: flats[orbits[o][0]].codim,
                members: orbits[o].clone(),
                canonical: s_lambda[o][0],
                s_lambda: s_lambda[o].clone(),
                classes: Vec::new(),
                preimage_size: 0,
            });
        }
        for w in g.elements() {
            let sh = flats[elem_flat[w as usize] as usize].shape;
            shapes[sh].preimage_size += 1;
        }
        for (c, &rep) in g.classes().reps().iter().enumerate() {
            let sh = flats[elem_flat[rep as usize] as usize].shape;
            shapes[sh].classes.push(c);
        }
        let mut by_size: Vec<usize> = (0..flats.len()).collect();
        by_size.sort_by_key(|&f| (flats[f].reflections.count_ones(), f));
        Lattice { flats, index, elem_flat, shapes, by_size }
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    pub fn flat_id(&self, refls: ReflSet) -> Option<usize> {
        self.index.get(&refls).copied()
    }

    /// `Fix(w)` as a flat id.
    pub fn fix_flat(&self, w: Elem) -> usize {
        self.elem_flat[w as usize] as usize
    }

    /// `X_I = Fix(W_I)` as a flat id.
    pub fn subset_flat(&self, g: &CoxeterGroup, i: Subset) -> usize {
        self.index[&parabolic_refls(g, i)]
    }

    pub fn shape_of(&self, w: Elem) -> &Shape {
        &self.shapes[self.flats[self.fix_flat(w)].shape]
    }

    /// The shape containing `X_I`.
    pub fn shape_of_subset(&self, g: &CoxeterGroup, i: Subset) -> &Shape {
        &self.shapes[self.flats[self.subset_flat(g, i)].shape]
    }

    /// `w(X)` as a flat id.
    pub fn act(&self, g: &CoxeterGroup, w: Elem, flat: usize) -> usize {
        self.index[&act_on_refls(g, w, self.flats[flat].reflections)]
    }

    /// Smallest flat whose reflection set contains `refls`; its codimension
    /// is the rank of `refls`.
    pub fn closure(&self, refls: ReflSet) -> usize {
        *self
            .by_size
            .iter()
            .find(|&&f| self.flats[f].reflections & refls == refls)
            .expect("the center of the arrangement contains every reflection set")
    }

    /// `W_X = {w : X ⊆ Fix(w)}`, sorted.
    pub fn pointwise_stabilizer(&self, g: &CoxeterGroup, flat: usize) -> Vec<Elem> {
        let x = self.flats[flat].reflections;
        g.elements().filter(|&w| self.flats[self.fix_flat(w)].reflections & !x == 0).collect()
    }

    /// `α_X(n) = det(n|_X)`; rejects `n` that does not stabilize `X`.
    pub fn alpha(&self, g: &CoxeterGroup, flat: usize, n: Elem) -> Result<Cyclo> {
        if self.act(g, n, flat) != flat {
            return Err(Error::NotStabilizing(format!("element [{}]", g.word_string(n))));
        }
        g.det_on_subspace(n, &self.flats[flat].basis)
    }

    /// `α_c(z) = det(z|_{Fix(c)})` for `z ∈ Z_W(c)`.
    pub fn alpha_c(&self, g: &CoxeterGroup, c: Elem, z: Elem) -> Result<Cyclo> {
        self.alpha(g, self.fix_flat(c), z)
    }

    /// For shape `λ`: the cuspidal elements of `W_{X_λ}` split into
    /// `W_{X_λ}`-classes, matched with the `W`-classes of shape `λ`.
    pub fn cuspidal_structure(&self, g: &CoxeterGroup, shape: usize) -> CuspidalStructure {
        let sh = &self.shapes[shape];
        let i = sh.canonical;
        let x = self.subset_flat(g, i);
        let wx = g.parabolic(i);
        let cusp: Vec<Elem> = wx.iter().copied().filter(|&w| self.fix_flat(w) == x).collect();
        let mut local_classes: Vec<Vec<Elem>> = Vec::new();
        let mut assigned = vec![false; g.order()];
        for &w in &cusp {
            if assigned[w as usize] {
                continue;
            }
            let mut cls: Vec<Elem> = wx.iter().map(|&y| g.conj(y, w)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &y in &cls {
                assigned[y as usize] = true;
            }
            local_classes.push(cls);
        }
        let mut matching = Vec::new();
        for &c in &sh.classes {
            let hits: Vec<usize> = local_classes
                .iter()
                .enumerate()
                .filter(|(_, cls)| cls.iter().any(|&y| g.class_of(y) == c))
                .map(|(k, _)| k)
                .collect();
            matching.push(hits);
        }
        let normalizer = g.normalizer_of_parabolic(i).len();
        let counting_ok = sh.classes.iter().zip(&matching).all(|(&c, hits)| {
            let inter = wx.iter().filter(|&&y| g.class_of(y) == c).count();
            hits.len() == 1 && g.classes().sizes()[c] * normalizer == g.order() * inter
        });
        let bijective = matching.iter().all(|h| h.len() == 1) && {
            let mut used: Vec<usize> = matching.iter().map(|h| h[0]).collect();
            used.sort_unstable();
            used.dedup();
            used.len() == local_classes.len() && local_classes.len() == sh.classes.len()
        };
        CuspidalStructure { shape, subset: i, cuspidal_classes: local_classes, matching, bijective, counting_ok }
    }
}

#[derive(Clone, Debug)]
pub struct CuspidalStructure {
    pub shape: usize,
    pub subset: Subset,
    /// Cuspidal `W_I`-classes, each sorted.
    pub cuspidal_classes: Vec<Vec<Elem>>,
    /// For each `W`-class of the shape, the cuspidal classes it meets.
    pub matching: Vec<Vec<usize>>,
    pub bijective: bool,
    /// `|C| = |W : N_W(W_X)| · |C ∩ W_X|` for every class `C` of the shape.
    pub counting_ok: bool,
}

/// Reflections of `W_I`: positive roots supported in `I`.
pub fn parabolic_refls(g: &CoxeterGroup, i: Subset) -> ReflSet {
    (0..g.num_positive_roots())
        .filter(|&k| g.root(k).iter().enumerate().all(|(s, c)| c.is_zero() || i >> s & 1 == 1))
        .fold(0, |m, k| m | 1 << k)
}

/// `{w t w⁻¹ : t ∈ refls}` through the root permutation of `w`.
pub fn act_on_refls(g: &CoxeterGroup, w: Elem, refls: ReflSet) -> ReflSet {
    let n = g.num_positive_roots();
    let mut out = 0;
    let mut m = refls;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        out |= 1 << (g.act_root(w, i) % n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(label: &str) -> (CoxeterGroup, Lattice) {
        let g = CoxeterGroup::from_label(label).unwrap();
        let l = Lattice::new(&g);
        (g, l)
    }

    #[test]
    fn a2_shapes() {
        let (g, l) = setup("A2");
        assert_eq!(l.shapes().len(), 3);
        assert_eq!(l.shapes()[0].s_lambda, vec![0]);
        assert_eq!(l.shapes()[0].members.len(), 1);
        let sizes: Vec<usize> = l.shapes().iter().map(|s| s.preimage_size).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(l.shape_of(0).id, 0);
        assert_eq!(l.shape_of(g.generator(0)).codim, 1);
    }

    #[test]
    fn b2_shapes() {
        let (g, l) = setup("B2");
        assert_eq!(l.shapes().len(), 4);
        let codim1: Vec<&Shape> = l.shapes().iter().filter(|s| s.codim == 1).collect();
        assert_eq!(codim1.len(), 2);
        assert_eq!(codim1[0].s_lambda, vec![0b01]);
        assert_eq!(codim1[1].s_lambda, vec![0b10]);
        let top = l.shapes().iter().find(|s| s.codim == 2).unwrap();
        assert_eq!(top.classes.len(), 2);
        let cs = l.cuspidal_structure(&g, top.id);
        assert!(cs.bijective && cs.counting_ok);
    }

    #[test]
    fn shape_is_a_class_function() {
        let (g, l) = setup("H3");
        for w in g.elements() {
            let rep = g.classes().reps()[g.class_of(w)];
            assert_eq!(l.shape_of(w).id, l.shape_of(rep).id);
        }
    }

    #[test]
    fn alpha_examples() {
        let (g, l) = setup("A2");
        let x = l.subset_flat(&g, 0b01);
        for w in g.parabolic(0b01) {
            assert!(l.alpha(&g, x, w).unwrap().is_one());
        }
        let n = g.n_complement(0b01);
        for &m in &n {
            let a = l.alpha(&g, x, m).unwrap();
            assert!((&a * &a).is_one());
        }
        assert!(l.alpha(&g, x, g.generator(1)).is_err());
        let c = g.from_word(&[0, 1]).unwrap();
        assert!(l.alpha_c(&g, c, c).unwrap().is_one());
    }

    #[test]
    fn cuspidal_structure_everywhere() {
        for label in ["A3", "B3", "H3", "I2(6)"] {
            let (g, l) = setup(label);
            let mut total = 0;
            for sh in l.shapes() {
                let cs = l.cuspidal_structure(&g, sh.id);
                assert!(cs.bijective && cs.counting_ok, "{label} shape {}", sh.id);
                total += sh.preimage_size;
            }
            assert_eq!(total, g.order());
        }
    }
}
