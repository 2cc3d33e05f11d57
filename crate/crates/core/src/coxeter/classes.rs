use super::{CoxeterGroup, Elem, Subset};

/// Conjugacy classes, indexed in order of their canonical representative.
#[derive(Clone, Debug, Default)]
pub struct Classes {
    class_of: Vec<u32>,
    reps: Vec<Elem>,
    sizes: Vec<usize>,
}

impl Classes {
    /// Orbit closure under conjugation by the simple reflections.
    pub(super) fn compute(g: &CoxeterGroup) -> Self {
        let mut class_of = vec![u32::MAX; g.order()];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for w in g.elements() {
            if class_of[w as usize] != u32::MAX {
                continue;
            }
            let idx = reps.len() as u32;
            class_of[w as usize] = idx;
            let mut stack = vec![w];
            let mut size = 1;
            while let Some(x) = stack.pop() {
                for &s in g.generators() {
                    let y = g.conj(s, x);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = idx;
                        size += 1;
                        stack.push(y);
                    }
                }
            }
            reps.push(w);
            sizes.push(size);
        }
        Classes { class_of, reps, sizes }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_of(&self, w: Elem) -> usize {
        self.class_of[w as usize] as usize
    }

    /// The `(length, word)`-least member of each class.
    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn members(&self, c: usize) -> Vec<Elem> {
        (0..self.class_of.len() as Elem).filter(|&w| self.class_of[w as usize] as usize == c).collect()
    }
}

impl CoxeterGroup {
    /// `|Z_W(w)|` by orbit-stabilizer.
    pub fn centralizer_order(&self, w: Elem) -> usize {
        self.order() / self.classes().sizes()[self.class_of(w)]
    }

    /// `N_I = {w : w(Δ_I) = Δ_I}`.
    pub fn n_complement(&self, i: Subset) -> Vec<Elem> {
        self.elements()
            .filter(|&w| {
                super::subset::members(i).all(|s| {
                    let j = self.act_root(w, s);
                    j < self.rank() && i >> j & 1 == 1
                })
            })
            .collect()
    }

    /// `N_W(W_I) = {w : w W_I w⁻¹ = W_I}`.
    pub fn normalizer_of_parabolic(&self, i: Subset) -> Vec<Elem> {
        self.elements()
            .filter(|&w| super::subset::members(i).all(|s| self.in_parabolic(self.conj(w, self.generator(s)), i)))
            .collect()
    }

    /// Unique factorization `y = w n` with `w ∈ W_I` and `n ∈ N_I`, for
    /// `y ∈ N_W(W_I)`. `n` is the minimal-length element of `W_I y`.
    pub fn split_normalizer(&self, i: Subset, y: Elem) -> (Elem, Elem) {
        let wi = self.parabolic(i);
        let n = wi.iter().map(|&w| self.mul(w, y)).min_by_key(|&x| (self.length(x), x)).unwrap();
        (self.mul(y, self.inv(n)), n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_classes() {
        let g = CoxeterGroup::from_label("A2").unwrap();
        assert_eq!(g.classes().sizes(), &[1, 3, 2]);
        for w in g.elements() {
            assert_eq!(g.centralizer(w).len() * g.classes().sizes()[g.class_of(w)], g.order());
        }
        let c = g.from_word(&[0, 1]).unwrap();
        assert_eq!(g.centralizer(c), g.generate(&[c]));
        assert_eq!(g.centralizer(c).len(), 3);
    }

    #[test]
    fn class_reps_are_minimal_and_stable() {
        let g = CoxeterGroup::from_label("B3").unwrap();
        let h = CoxeterGroup::from_label("B3").unwrap();
        assert_eq!(g.classes().reps(), h.classes().reps());
        for (c, &r) in g.classes().reps().iter().enumerate() {
            assert_eq!(g.classes().members(c)[0], r);
        }
        assert_eq!(g.classes().len(), 10);
    }

    #[test]
    fn normalizer_factorizes() {
        for label in ["B2", "A3", "B3", "H3"] {
            let g = CoxeterGroup::from_label(label).unwrap();
            for i in 0..=g.full_set() {
                let norm = g.normalizer_of_parabolic(i);
                let ni = g.n_complement(i);
                let wi = g.parabolic(i);
                assert_eq!(norm.len(), wi.len() * ni.len(), "{label} {i:b}");
                let common = ni.iter().filter(|&&n| g.in_parabolic(n, i)).count();
                assert_eq!(common, 1);
                for &y in &norm {
                    let (w, n) = g.split_normalizer(i, y);
                    assert!(g.in_parabolic(w, i) && ni.contains(&n));
                    assert_eq!(g.mul(w, n), y);
                }
            }
        }
        let g = CoxeterGroup::from_label("B2").unwrap();
        assert_eq!(g.n_complement(0).len(), 8);
        assert_eq!(g.n_complement(0b11), vec![0]);
        assert_eq!(g.normalizer_of_parabolic(0b11).len(), 8);
    }
}
