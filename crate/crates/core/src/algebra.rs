//! Dense elements of the group algebra `ℂW`, stored as one coefficient per
//! group element.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::coxeter::{CoxeterGroup, Elem};
use crate::linalg::{Field, ModReducer};
use crate::scalars::{Cyclo, Rational};

/// Coefficient rings for group-algebra elements.
pub trait Scalar: Field + Send + Sync + 'static {
    /// `a * b` in `ℂW`.
    fn convolve(g: &CoxeterGroup, a: &[Self], b: &[Self]) -> Vec<Self> {
        convolve_generic(g, a, b)
    }

    fn to_cyclo(&self) -> Cyclo;

    /// Image in `F_p`, when the denominators allow it.
    fn reduce(&self, red: &ModReducer) -> Option<u64>;

    /// Least cyclotomic order holding the value.
    fn field_order(&self) -> u32;
}

fn convolve_generic<T: Scalar>(g: &CoxeterGroup, a: &[T], b: &[T]) -> Vec<T> {
    let n = g.order();
    let bn: Vec<(Elem, &T)> = b.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as Elem, c)).collect();
    let mut out = vec![T::zero(); n];
    for (x, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for &(y, cb) in &bn {
            let z = g.mul(x as Elem, y) as usize;
            out[z] = out[z].add(&ca.mul(cb));
        }
    }
    out
}

impl Scalar for Cyclo {
    fn to_cyclo(&self) -> Cyclo {
        self.clone()
    }

    fn reduce(&self, red: &ModReducer) -> Option<u64> {
        red.cyclo(self)
    }

    fn field_order(&self) -> u32 {
        self.order()
    }
}

impl Scalar for Rational {
    /// Clears denominators and convolves the integer numerators, falling back
    /// to rational arithmetic when an `i128` accumulator could overflow.
    fn convolve(g: &CoxeterGroup, a: &[Self], b: &[Self]) -> Vec<Self> {
        match (scale_to_ints(a), scale_to_ints(b)) {
            (Some((na, da)), Some((nb, db))) => match convolve_ints(g, &na, &nb) {
                Some(prod) => {
                    let den = BigInt::from(da) * BigInt::from(db);
                    prod.into_iter()
                        .map(|v| {
                            if v == 0 {
                                Rational::zero()
                            } else {
                                Rational::from_bigints(BigInt::from(v), den.clone()).expect("nonzero")
                            }
                        })
                        .collect()
                }
                None => convolve_generic(g, a, b),
            },
            _ => convolve_generic(g, a, b),
        }
    }

    fn to_cyclo(&self) -> Cyclo {
        Cyclo::from_rational(self.clone())
    }

    fn reduce(&self, red: &ModReducer) -> Option<u64> {
        red.rational(self)
    }

    fn field_order(&self) -> u32 {
        1
    }
}

/// Numerators over a common denominator, when everything fits in 64 bits.
fn scale_to_ints(v: &[Rational]) -> Option<(Vec<i64>, i64)> {
    let mut den: i64 = 1;
    for c in v {
        if c.is_zero() {
            continue;
        }
        let (_, d) = c.as_small()?;
        den = den.lcm(&d);
        if den > (1 << 40) {
            return None;
        }
    }
    let nums = v
        .iter()
        .map(|c| {
            if c.is_zero() {
                return Some(0);
            }
            let (n, d) = c.as_small()?;
            n.checked_mul(den / d)
        })
        .collect::<Option<Vec<i64>>>()?;
    Some((nums, den))
}

fn convolve_ints(g: &CoxeterGroup, a: &[i64], b: &[i64]) -> Option<Vec<i128>> {
    let n = g.order();
    let amax = a.iter().map(|x| x.unsigned_abs() as u128).max().unwrap_or(0);
    let bmax = b.iter().map(|x| x.unsigned_abs() as u128).max().unwrap_or(0);
    // worst-case accumulated magnitude
    if amax.checked_mul(bmax)?.checked_mul(n as u128)? >= i128::MAX as u128 {
        return None;
    }
    let bn: Vec<(usize, i128)> = b.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c as i128)).collect();
    let rows: Vec<(usize, i128)> =
        a.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c as i128)).collect();
    let chunk = rows.len().div_ceil(rayon::current_num_threads().max(1)).max(16);
    let partials: Vec<Vec<i128>> = rows
        .par_chunks(chunk)
        .map(|part| {
            let mut acc = vec![0i128; n];
            for &(x, ca) in part {
                let row = g.mult_row(x as Elem);
                for &(y, cb) in &bn {
                    acc[row[y] as usize] += ca * cb;
                }
            }
            acc
        })
        .collect();
    let mut out = vec![0i128; n];
    for p in partials {
        for (o, v) in out.iter_mut().zip(p) {
            *o += v;
        }
    }
    Some(out)
}

/// `Σ_w c_w w` with one coefficient slot per element of the ambient group.
#[derive(Clone, PartialEq, Debug)]
pub struct GroupAlgebraElement<T> {
    coeffs: Vec<T>,
}

pub type RatElement = GroupAlgebraElement<Rational>;
pub type CycElement = GroupAlgebraElement<Cyclo>;

impl<T: Scalar> GroupAlgebraElement<T> {
    pub fn zero(g: &CoxeterGroup) -> Self {
        GroupAlgebraElement { coeffs: vec![T::zero(); g.order()] }
    }

    pub fn one(g: &CoxeterGroup) -> Self {
        Self::basis(g, 0)
    }

    pub fn basis(g: &CoxeterGroup, w: Elem) -> Self {
        let mut e = Self::zero(g);
        e.coeffs[w as usize] = T::one();
        e
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        GroupAlgebraElement { coeffs }
    }

    /// `Σ_{w ∈ elems} w`.
    pub fn sum_of(g: &CoxeterGroup, elems: &[Elem]) -> Self {
        let mut e = Self::zero(g);
        for &w in elems {
            e.coeffs[w as usize] = e.coeffs[w as usize].add(&T::one());
        }
        e
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, w: Elem) -> &T {
        &self.coeffs[w as usize]
    }

    pub fn set(&mut self, w: Elem, c: T) {
        self.coeffs[w as usize] = c;
    }

    pub fn add_term(&mut self, w: Elem, c: &T) {
        self.coeffs[w as usize] = self.coeffs[w as usize].add(c);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(T::is_zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (Elem, &T)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as Elem, c))
    }

    pub fn add(&self, o: &Self) -> Self {
        GroupAlgebraElement { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GroupAlgebraElement { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        GroupAlgebraElement {
            coeffs: self.coeffs.iter().map(|a| if a.is_zero() { a.clone() } else { a.mul(c) }).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        GroupAlgebraElement { coeffs: self.coeffs.iter().map(T::neg).collect() }
    }

    pub fn mul(&self, g: &CoxeterGroup, o: &Self) -> Self {
        GroupAlgebraElement { coeffs: T::convolve(g, &self.coeffs, &o.coeffs) }
    }

    /// `self · w`.
    pub fn mul_elem_right(&self, g: &CoxeterGroup, w: Elem) -> Self {
        let mut out = vec![T::zero(); self.coeffs.len()];
        for (x, c) in self.support() {
            out[g.mul(x, w) as usize] = c.clone();
        }
        GroupAlgebraElement { coeffs: out }
    }

    /// `w · self`.
    pub fn mul_elem_left(&self, g: &CoxeterGroup, w: Elem) -> Self {
        let mut out = vec![T::zero(); self.coeffs.len()];
        for (x, c) in self.support() {
            out[g.mul(w, x) as usize] = c.clone();
        }
        GroupAlgebraElement { coeffs: out }
    }

    /// `n⁻¹ · self · n`.
    pub fn conj_by(&self, g: &CoxeterGroup, n: Elem) -> Self {
        let ninv = g.inv(n);
        let mut out = vec![T::zero(); self.coeffs.len()];
        for (x, c) in self.support() {
            out[g.mul(g.mul(ninv, x), n) as usize] = c.clone();
        }
        GroupAlgebraElement { coeffs: out }
    }

    pub fn to_cyclo(&self) -> CycElement {
        GroupAlgebraElement { coeffs: self.coeffs.iter().map(T::to_cyclo).collect() }
    }

    /// If `self = c · other` for a scalar `c` (with `other ≠ 0`), returns `c`.
    pub fn ratio_to(&self, other: &Self) -> Option<T> {
        let (w, base) = other.support().next()?;
        let c = self.coeffs[w as usize].mul(&base.inv());
        let ok = self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| *a == b.mul(&c));
        ok.then_some(c)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl RatElement {
    /// Magnitude of the largest denominator, for diagnostics.
    pub fn max_denominator(&self) -> u64 {
        self.coeffs.iter().filter_map(|c| c.denom().to_u64()).max().unwrap_or(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn a1_relations() {
        let g = CoxeterGroup::from_label("A1").unwrap();
        let x = RatElement::sum_of(&g, &[0, 1]);
        let sq = x.mul(&g, &x);
        assert_eq!(sq, x.scale(&q(2, 1)));
    }

    #[test]
    fn integer_path_matches_generic() {
        let g = CoxeterGroup::from_label("B3").unwrap();
        let mut a = RatElement::zero(&g);
        let mut b = RatElement::zero(&g);
        for w in g.elements() {
            a.set(w, q(w as i64 % 7 - 3, 1 + w as i64 % 5));
            b.set(w, q(2 - w as i64 % 3, 3));
        }
        let fast = a.mul(&g, &b);
        let slow = GroupAlgebraElement::from_coeffs(convolve_generic(&g, a.coeffs(), b.coeffs()));
        assert_eq!(fast, slow);
    }

    #[test]
    fn conjugation_and_ratio() {
        let g = CoxeterGroup::from_label("A2").unwrap();
        let s = g.generator(0);
        let e = RatElement::basis(&g, g.generator(1));
        let c = e.conj_by(&g, s);
        assert_eq!(c, RatElement::basis(&g, g.conj(s, g.generator(1))));
        let twice = c.scale(&q(-3, 2));
        assert_eq!(twice.ratio_to(&c), Some(q(-3, 2)));
        assert_eq!(e.ratio_to(&c), None);
    }
}
