//! Exhaustive search for linear characters `φ_c` of centralizers whose
//! inductions give the characters of `E_λ` and `A_λ` simultaneously.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::characters::{induce, linear_characters, ClassFunction, LinearCharacter};
use crate::context::Context;
use crate::coxeter::Elem;
use crate::scalars::Cyclo;

/// Candidate characters for one class representative `c`, with
/// `Ind(φ)` and `Ind(ε_c α_c φ)` precomputed.
pub struct ClassCandidates {
    pub rep: Elem,
    pub centralizer: Vec<Elem>,
    pub chars: Vec<LinearCharacter>,
    pub ind_e: Vec<ClassFunction>,
    pub ind_a: Vec<ClassFunction>,
}

pub struct ShapeOutcome {
    pub shape: usize,
    pub char_e: ClassFunction,
    pub char_a: ClassFunction,
    pub candidates: Vec<ClassCandidates>,
    /// Character indices per class, one entry per solution, in
    /// lexicographic order.
    pub solutions: Vec<Vec<usize>>,
    /// When no solution exists: `(χ_E − Σ Ind φ, χ_A − Σ Ind εαφ)` for the
    /// all-first candidate tuple.
    pub residual: Option<(ClassFunction, ClassFunction)>,
}

impl ShapeOutcome {
    pub fn verified(&self) -> bool {
        !self.solutions.is_empty()
    }
}

pub struct ConjectureReport {
    pub shapes: Vec<ShapeOutcome>,
}

impl ConjectureReport {
    pub fn verified(&self) -> bool {
        self.shapes.iter().all(ShapeOutcome::verified)
    }
}

/// Candidates for the class representative `c`.
pub fn class_candidates(ctx: &Context, c: Elem) -> ClassCandidates {
    let g = &ctx.group;
    let z = g.centralizer(c);
    let chars = linear_characters(g, &z);
    let twist: Vec<Cyclo> = z
        .iter()
        .map(|&y| {
            let a = ctx.lattice.alpha_c(g, c, y).expect("centralizers stabilize Fix(c)");
            a.scale(&crate::Rational::from_int(g.sign(y)))
        })
        .collect();
    let pos = |y: Elem| z.binary_search(&y).expect("element of the centralizer");
    let ind_e = chars.iter().map(|phi| induce(g, &z, |y| phi.value(y))).collect();
    let ind_a = chars.iter().map(|phi| induce(g, &z, |y| &twist[pos(y)] * &phi.value(y))).collect();
    ClassCandidates { rep: c, centralizer: z, chars, ind_e, ind_a }
}

pub fn verify_shape(ctx: &Context, shape: usize, first: bool) -> ShapeOutcome {
    let g = &ctx.group;
    let sh = &ctx.lattice.shapes()[shape];
    let reps: Vec<Elem> = sh.classes.iter().map(|&k| g.classes().reps()[k]).collect();
    let candidates: Vec<ClassCandidates> = reps.iter().map(|&c| class_candidates(ctx, c)).collect();
    let char_e = ctx.char_e()[shape].clone();
    let char_a = ctx.char_a()[shape].clone();
    let mut solutions = Vec::new();
    let mut choice = Vec::with_capacity(candidates.len());
    search(
        &candidates,
        &ClassFunction::zero(g),
        &ClassFunction::zero(g),
        &char_e,
        &char_a,
        &mut choice,
        &mut solutions,
        first,
    );
    let residual = solutions.is_empty().then(|| {
        let (mut re, mut ra) = (char_e.clone(), char_a.clone());
        for cand in &candidates {
            re = re.sub(&cand.ind_e[0]).expect("same group");
            ra = ra.sub(&cand.ind_a[0]).expect("same group");
        }
        (re, ra)
    });
    ShapeOutcome { shape, char_e, char_a, candidates, solutions, residual }
}

#[allow(clippy::too_many_arguments)]
fn search(
    cands: &[ClassCandidates],
    acc_e: &ClassFunction,
    acc_a: &ClassFunction,
    target_e: &ClassFunction,
    target_a: &ClassFunction,
    choice: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    first: bool,
) {
    if first && !out.is_empty() {
        return;
    }
    let depth = choice.len();
    if depth == cands.len() {
        if acc_e == target_e && acc_a == target_a {
            out.push(choice.clone());
        }
        return;
    }
    let cand = &cands[depth];
    for k in 0..cand.chars.len() {
        let e = acc_e.add(&cand.ind_e[k]).expect("same group");
        let a = acc_a.add(&cand.ind_a[k]).expect("same group");
        choice.push(k);
        search(cands, &e, &a, target_e, target_a, choice, out, first);
        choice.pop();
    }
}

pub fn verify_conjecture(ctx: &Context, first: bool) -> ConjectureReport {
    ctx.char_e();
    ctx.char_a();
    let shapes = (0..ctx.lattice.shapes().len()).into_par_iter().map(|s| verify_shape(ctx, s, first)).collect();
    ConjectureReport { shapes }
}

impl ShapeOutcome {
    pub fn to_json(&self, ctx: &Context) -> Value {
        let g = &ctx.group;
        let classes: Vec<Value> = self.candidates.iter().map(|c| Value::String(g.word_string(c.rep))).collect();
        let solutions: Vec<Value> = self
            .solutions
            .iter()
            .map(|sol| {
                Value::Array(
                    sol.iter()
                        .zip(&self.candidates)
                        .map(|(&k, cand)| json!({"index": k, "values": cand.chars[k].descriptor(g)}))
                        .collect(),
                )
            })
            .collect();
        let mut v = json!({
            "shape": self.shape,
            "classes": classes,
            "candidates": self.candidates.iter().map(|c| c.chars.len()).collect::<Vec<_>>(),
            "solutions": solutions,
            "solution_count": self.solutions.len(),
            "char_E": self.char_e.to_json(),
            "char_A": self.char_a.to_json(),
            "status": if self.verified() { "verified" } else { "failed" },
        });
        if let Some((re, ra)) = &self.residual {
            v["residual_E"] = re.to_json();
            v["residual_A"] = ra.to_json();
        }
        v
    }
}
