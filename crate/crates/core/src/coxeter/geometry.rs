use super::{CoxeterGroup, Elem};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalars::Cyclo;

impl CoxeterGroup {
    /// Matrix of `w` on `V = span Δ` in the basis `Δ`; column `s` holds the
    /// coordinates of `w(α_s)`.
    pub fn matrix(&self, w: Elem) -> Vec<Vec<Cyclo>> {
        let r = self.rank();
        let cols: Vec<Vec<Cyclo>> = (0..r).map(|s| self.root(self.act_root(w, s))).collect();
        (0..r).map(|i| (0..r).map(|s| cols[s][i].clone()).collect()).collect()
    }

    /// Basis of `Fix(w)`, as coordinate vectors in the basis `Δ`.
    pub fn fixed_space(&self, w: Elem) -> Vec<Vec<Cyclo>> {
        let mut m = self.matrix(w);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = &row[i] - &Cyclo::one();
        }
        linalg::nullspace(&m, self.rank())
    }

    /// `2⟨u, v⟩` for coordinate vectors in the basis `Δ`.
    pub fn form2(&self, u: &[Cyclo], v: &[Cyclo]) -> Cyclo {
        let g = self.gram2();
        let mut acc = Cyclo::zero();
        for (s, us) in u.iter().enumerate() {
            if us.is_zero() {
                continue;
            }
            for (t, vt) in v.iter().enumerate() {
                if !vt.is_zero() && !g[s][t].is_zero() {
                    acc += &(&(us * &g[s][t]) * vt);
                }
            }
        }
        acc
    }

    /// Determinant of `w` restricted to the span of `basis`, which must be
    /// `w`-stable. The empty basis gives 1.
    pub fn det_on_subspace(&self, w: Elem, basis: &[Vec<Cyclo>]) -> Result<Cyclo> {
        linalg::det_on_subspace(&self.matrix(w), basis)
            .map_err(|_| Error::NotStabilizing(format!("element [{}]", self.word_string(w))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_spaces() {
        let g = CoxeterGroup::from_label("A2").unwrap();
        assert_eq!(g.fixed_space(0).len(), 2);
        let c = g.from_word(&[0, 1]).unwrap();
        assert!(g.fixed_space(c).is_empty());
        assert_eq!(g.fixed_space(g.generator(0)).len(), 1);
        let a1 = CoxeterGroup::from_label("A1").unwrap();
        let s = a1.generator(0);
        let fix = a1.fixed_space(s);
        assert!(fix.is_empty());
        assert!(a1.det_on_subspace(s, &fix).unwrap().is_one());
    }

    #[test]
    fn simple_reflections_negate_their_roots() {
        let g = CoxeterGroup::from_label("H3").unwrap();
        for s in 0..3 {
            let m = g.matrix(g.generator(s));
            for i in 0..3 {
                let expect = if i == s { Cyclo::from_int(-1) } else { Cyclo::zero() };
                assert_eq!(m[i][s], expect);
            }
            assert_eq!(linalg::det(&m), Cyclo::from_int(-1));
        }
    }

    #[test]
    fn rejects_unstable_subspace() {
        let g = CoxeterGroup::from_label("A2").unwrap();
        let line = vec![vec![Cyclo::one(), Cyclo::zero()]];
        assert!(g.det_on_subspace(g.generator(1), &line).is_err());
    }
}
