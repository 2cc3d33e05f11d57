//! Exact Gaussian elimination over `Q` and cyclotomic fields, plus rank
//! computation over prime fields.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::scalars::{Cyclo, Rational};

/// The field operations elimination needs.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip().expect("pivot is nonzero")
    }
}

impl Field for Cyclo {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn one() -> Self {
        Cyclo::one()
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.inverse().expect("pivot is nonzero")
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(rows: &mut Vec<Vec<F>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : M x = 0}` for `M` given by rows with `ncols` columns.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = row[free].neg();
        }
        basis.push(v);
    }
    basis
}

pub fn det<F: Field>(square: &[Vec<F>]) -> F {
    let n = square.len();
    let mut m = square.to_vec();
    let mut d = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            m.swap(p, col);
            d = d.neg();
        }
        d = d.mul(&m[col][col]);
        let inv = m[col][col].inv();
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].mul(&inv);
            for j in col..n {
                let t = f.mul(&m[col][j]);
                m[i][j] = m[i][j].sub(&t);
            }
        }
    }
    d
}

/// Solves `x · B = v` for a row vector `x`, where the rows of `B` are
/// linearly independent. Returns `None` when `v` is not in the row space.
pub fn express_in_rows<F: Field>(basis: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
    let k = basis.len();
    let n = v.len();
    // columns of the augmented system are basis vectors, unknowns are x
    let mut rows: Vec<Vec<F>> = (0..n)
        .map(|j| {
            let mut row: Vec<F> = basis.iter().map(|b| b[j].clone()).collect();
            row.push(v[j].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![F::zero(); k];
    for (row, &pc) in rows.iter().zip(&pivots) {
        x[pc] = row[k].clone();
    }
    Some(x)
}

/// Determinant of the linear map `m` restricted to the span of `basis`
/// (rows), which must be `m`-stable. Vectors are columns: `m` acts as
/// `v ↦ m v`.
pub fn det_on_subspace<F: Field>(m: &[Vec<F>], basis: &[Vec<F>]) -> Result<F> {
    let mut restricted = Vec::with_capacity(basis.len());
    for b in basis {
        let image: Vec<F> =
            m.iter().map(|row| row.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc.add(&x.mul(y)))).collect();
        let coords = express_in_rows(basis, &image).ok_or_else(|| Error::NotStabilizing("the map".into()))?;
        restricted.push(coords);
    }
    Ok(det(&restricted))
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A ring homomorphism from the `p`-integral part of `Q(ζ_m)` onto `F_p`,
/// with `p ≡ 1 (mod m)` and `ζ_m` sent to a primitive `m`-th root of unity.
#[derive(Clone, Debug)]
pub struct ModReducer {
    pub p: u64,
    m: u32,
    zeta_pows: Vec<u64>,
}

impl ModReducer {
    /// Uses the `skip`-th largest suitable prime below `2^31`, so that
    /// independent reductions can be cross-checked.
    pub fn new(m: u32, skip: usize) -> Self {
        let m64 = m as u64;
        let mut k = ((1u64 << 31) - 1) / m64;
        let mut seen = 0;
        let p = loop {
            let cand = k * m64 + 1;
            if cand < (1u64 << 31) && is_prime(cand) {
                if seen == skip {
                    break cand;
                }
                seen += 1;
            }
            k -= 1;
        };
        let factors = prime_factors(p - 1);
        let g = (2..p).find(|&g| factors.iter().all(|&q| powmod(g, (p - 1) / q, p) != 1)).expect("F_p has a generator");
        let zeta = powmod(g, (p - 1) / m64, p);
        let zeta_pows = (0..m64).map(|k| powmod(zeta, k, p)).collect();
        ModReducer { p, m, zeta_pows }
    }

    pub fn rational(&self, r: &Rational) -> Option<u64> {
        r.mod_prime(self.p)
    }

    pub fn cyclo(&self, c: &Cyclo) -> Option<u64> {
        assert!(self.m.is_multiple_of(c.order()), "reducer order {} cannot hold Q(ζ_{})", self.m, c.order());
        let step = (self.m / c.order()) as usize;
        let mut acc = 0;
        for (k, coef) in c.coeffs().iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let v = coef.mod_prime(self.p)?;
            acc = (acc + mulmod(v, self.zeta_pows[(k * step) % self.m as usize], self.p)) % self.p;
        }
        Some(acc)
    }
}

/// Rank of a matrix over `F_p`. Consumes the rows.
pub fn mod_rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = powmod(rows[r][col], p - 2, p);
        for x in rows[r].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(prow.iter()).skip(col) {
                if y != 0 {
                    *x = (*x + p - mulmod(f, y, p)) % p;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Lower bound for the rank over `Q(ζ_m)` of a cyclotomic matrix, obtained
/// by reduction modulo a split prime. Entries with a denominator divisible by
/// the prime are never produced at desk scale; if one appears the next prime
/// is tried.
pub fn cyclo_rank_lower_bound(rows: &[Vec<Cyclo>], m: u32) -> usize {
    for skip in 0..8 {
        let red = ModReducer::new(m, skip);
        let reduced: Option<Vec<Vec<u64>>> =
            rows.iter().map(|row| row.iter().map(|c| red.cyclo(c)).collect()).collect();
        if let Some(reduced) = reduced {
            return mod_rank(reduced, red.p);
        }
    }
    panic!("no prime avoided the denominators")
}

/// Field order large enough to hold every entry.
pub fn common_order<'a>(entries: impl IntoIterator<Item = &'a Cyclo>) -> u32 {
    entries.into_iter().fold(1u32, |acc, c| acc.lcm(&c.order()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn rank_and_nullspace_small() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(1), q(0), q(1)]];
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot = row.iter().zip(&ns[0]).fold(q(0), |a, (x, y)| &a + &(x * y));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn determinants() {
        let m = vec![vec![q(2), q(1)], vec![q(7), q(4)]];
        assert_eq!(det(&m), q(1));
        let e: Vec<Vec<Rational>> = Vec::new();
        assert_eq!(det(&e), q(1));
        let z = Cyclo::zeta(3);
        let mc = vec![vec![z.clone(), Cyclo::one()], vec![Cyclo::one(), z.conj()]];
        assert!(det(&mc).is_zero());
    }

    #[test]
    fn det_on_invariant_plane() {
        // swap of the first two coordinates, restricted to span(e1, e2)
        let m = vec![vec![q(0), q(1), q(0)], vec![q(1), q(0), q(0)], vec![q(0), q(0), q(1)]];
        let basis = vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]];
        assert_eq!(det_on_subspace(&m, &basis).unwrap(), q(-1));
        let bad = vec![vec![q(1), q(0), q(0)]];
        assert!(det_on_subspace(&m, &bad).is_err());
    }

    #[test]
    fn modular_reduction_is_a_homomorphism() {
        let red = ModReducer::new(12, 0);
        assert_eq!(red.p % 12, 1);
        let a = Cyclo::new(12, &[(1, Rational::new(2, 3)), (5, q(-1))]).unwrap();
        let b = Cyclo::new(4, &[(0, q(3)), (1, Rational::new(1, 5))]).unwrap();
        let ab = &a * &b;
        let lhs = red.cyclo(&ab).unwrap();
        let rhs = mulmod(red.cyclo(&a).unwrap(), red.cyclo(&b).unwrap(), red.p);
        assert_eq!(lhs, rhs);
        assert_eq!(red.cyclo(&Cyclo::zeta(12).pow(12)).unwrap(), 1);
    }

    #[test]
    fn modular_rank_matches_exact() {
        let rows = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]];
        assert_eq!(mod_rank(rows, 101), 2);
        let z = Cyclo::zeta(5);
        let m = vec![vec![Cyclo::one(), z.clone()], vec![z.clone(), &z * &z]];
        assert_eq!(cyclo_rank_lower_bound(&m, 5), 1);
        assert_eq!(rank(&m), 1);
    }
}
