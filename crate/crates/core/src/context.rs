//! A group together with the structures built from it, computed on first use.

use std::sync::OnceLock;

use crate::algebra::RatElement;
use crate::characters::{ideal_character, ClassFunction};
use crate::coxeter::CoxeterGroup;
use crate::descent::{DescentAlgebra, Idempotents, SigmaFn};
use crate::error::Result;
use crate::os::OrlikSolomon;
use crate::shapes::Lattice;

pub struct Context {
    pub group: CoxeterGroup,
    pub lattice: Lattice,
    os: OnceLock<OrlikSolomon>,
    idempotents: OnceLock<Idempotents>,
    char_e: OnceLock<Vec<ClassFunction>>,
    char_a: OnceLock<Vec<ClassFunction>>,
}

impl Context {
    pub fn new(label: &str) -> Result<Self> {
        Ok(Self::from_group(CoxeterGroup::from_label(label)?))
    }

    pub fn from_group(group: CoxeterGroup) -> Self {
        let lattice = Lattice::new(&group);
        Context {
            group,
            lattice,
            os: OnceLock::new(),
            idempotents: OnceLock::new(),
            char_e: OnceLock::new(),
            char_a: OnceLock::new(),
        }
    }

    pub fn descent(&self) -> DescentAlgebra<'_> {
        DescentAlgebra::new(&self.group)
    }

    pub fn os(&self) -> &OrlikSolomon {
        self.os.get_or_init(|| OrlikSolomon::new(&self.group, &self.lattice))
    }

    /// `e_I` for `σ ≡ 1`.
    pub fn idempotents(&self) -> &Idempotents {
        self.idempotents.get_or_init(|| self.descent().solve(&SigmaFn::one()))
    }

    /// `e_λ` in `ℂW`.
    pub fn e_lambda(&self, shape: usize) -> RatElement {
        let d = self.descent();
        d.to_group_algebra(&self.idempotents().e_shape(&self.lattice.shapes()[shape]))
    }

    /// Characters of `E_λ` for every shape.
    pub fn char_e(&self) -> &[ClassFunction] {
        self.char_e.get_or_init(|| {
            use rayon::prelude::*;
            (0..self.lattice.shapes().len())
                .into_par_iter()
                .map(|s| ideal_character(&self.group, &self.e_lambda(s)).expect("e_λ is idempotent"))
                .collect()
        })
    }

    /// Characters of `A_λ` for every shape.
    pub fn char_a(&self) -> &[ClassFunction] {
        self.char_a.get_or_init(|| {
            let os = self.os();
            (0..self.lattice.shapes().len())
                .map(|s| os.character(&self.group, &os.shape_basis(&self.lattice, s)))
                .collect()
        })
    }
}
