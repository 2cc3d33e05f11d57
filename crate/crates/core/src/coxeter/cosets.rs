use super::{CoxeterGroup, Elem, Subset};

impl CoxeterGroup {
    /// `W^I`, the minimal left coset representatives of `W_I`.
    pub fn coset_reps(&self, i: Subset) -> Vec<Elem> {
        self.elements().filter(|&w| self.right_descents(w) & i == 0).collect()
    }

    /// `W^{IJ} = (W^I)⁻¹ ∩ W^J`.
    pub fn double_coset_reps(&self, i: Subset, j: Subset) -> Vec<Elem> {
        self.elements().filter(|&w| self.left_descents(w) & i == 0 && self.right_descents(w) & j == 0).collect()
    }

    /// `{s ∈ J : w(α_s) ∈ Δ_I}`, so that `w⁻¹(Δ_I) ∩ Δ_J = Δ_K`.
    pub fn intersection_type(&self, w: Elem, i: Subset, j: Subset) -> Subset {
        super::subset::members(j)
            .filter(|&s| {
                let r = self.act_root(w, s);
                r < self.rank() && i >> r & 1 == 1
            })
            .fold(0, |m, s| m | 1 << s)
    }

    /// `W^{IJK}`.
    pub fn refined_double_coset_reps(&self, i: Subset, j: Subset, k: Subset) -> Vec<Elem> {
        self.double_coset_reps(i, j).into_iter().filter(|&w| self.intersection_type(w, i, j) == k).collect()
    }

    /// When `w(Δ_J) ⊆ Δ`, returns `{t : α_t ∈ w(Δ_J)}`.
    pub fn image_of_simple(&self, w: Elem, j: Subset) -> Option<Subset> {
        let mut out = 0;
        for s in super::subset::members(j) {
            let r = self.act_root(w, s);
            if r >= self.rank() {
                return None;
            }
            out |= 1 << r;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::subset;
    use super::*;

    #[test]
    fn coset_counts() {
        let g = CoxeterGroup::from_label("A2").unwrap();
        assert_eq!(g.coset_reps(0b01).len(), 3);
        assert_eq!(g.coset_reps(0b11), vec![0]);
        let ij = g.double_coset_reps(0b01, 0b01);
        let total: usize =
            subset::all_within(0b01).iter().map(|&k| g.refined_double_coset_reps(0b01, 0b01, k).len()).sum();
        assert_eq!(total, ij.len());
    }

    #[test]
    fn index_formula_holds() {
        for label in ["B3", "H3", "A2xA1"] {
            let g = CoxeterGroup::from_label(label).unwrap();
            for i in subset::all_within(g.full_set()) {
                assert_eq!(g.coset_reps(i).len() * g.parabolic(i).len(), g.order());
            }
        }
    }
}
