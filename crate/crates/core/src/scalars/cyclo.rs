use std::collections::HashMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::Error;

/// Cyclotomic polynomial `Φ_n`, low degree first, monic.
pub fn cyclotomic_poly(n: u32) -> Arc<[i64]> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    // x^n - 1 divided by Φ_d for every proper divisor d of n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_poly(d);
            num = exact_div_monic(&num, &div);
        }
    }
    let p: Arc<[i64]> = num.into();
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// Euler's totient, read off as the degree of `Φ_n`.
pub fn phi(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

/// An exact element of the cyclotomic field `Q(ζ_n)`, `ζ_n = e^{2πi/n}`,
/// stored in the power basis `1, ζ, …, ζ^{φ(n)-1}` and always fully reduced
/// modulo `Φ_n`.
///
/// Values that are rational are normalized to order 1, so `is_rational` is a
/// cheap check. Equality between different orders embeds both sides into the
/// field of the least common multiple.
#[derive(Clone)]
pub struct Cyclo {
    order: u32,
    coeffs: Vec<Rational>,
}

/// Reduces a polynomial (low degree first) modulo `Φ_n` in place and
/// truncates it to `φ(n)` coefficients.
fn reduce_mod_phi(poly: &mut Vec<Rational>, n: u32) {
    let f = cyclotomic_poly(n);
    let d = f.len() - 1;
    if poly.len() > d {
        for i in (d..poly.len()).rev() {
            if poly[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[i]);
            for (j, &fj) in f[..d].iter().enumerate() {
                if fj != 0 {
                    let t = &c * &Rational::from_int(fj);
                    poly[i - d + j] -= &t;
                }
            }
        }
    }
    poly.resize(d, Rational::zero());
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Cyclo::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Cyclo::from_rational(Rational::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclo { order: 1, coeffs: vec![r] }
    }

    /// `Σ r_k ζ_order^k`; exponents may be any integers.
    pub fn new(order: u32, terms: &[(i64, Rational)]) -> Result<Self, Error> {
        if order == 0 {
            return Err(Error::InvalidOrder);
        }
        let mut poly = vec![Rational::zero(); order as usize];
        for (k, r) in terms {
            let e = k.rem_euclid(order as i64) as usize;
            poly[e] += r;
        }
        reduce_mod_phi(&mut poly, order);
        Ok(Cyclo { order, coeffs: poly }.normalized())
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        Cyclo::new(n, &[(k, Rational::one())]).expect("order must be positive")
    }

    pub fn zeta(n: u32) -> Self {
        Cyclo::root_of_unity(n, 1)
    }

    /// `2 cos(π/m) = ζ_{2m} + ζ_{2m}^{-1}`.
    pub fn two_cos_pi_over(m: u32) -> Self {
        let n = 2 * m;
        Cyclo::new(n, &[(1, Rational::one()), (-1, Rational::one())]).expect("positive order")
    }

    fn normalized(mut self) -> Self {
        if self.order != 1 && self.coeffs[1..].iter().all(Rational::is_zero) {
            let c = std::mem::take(&mut self.coeffs[0]);
            return Cyclo::from_rational(c);
        }
        self
    }

    /// The order `n` of the field `Q(ζ_n)` this value is currently stored in.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coefficients in the stored field.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Coefficients of `self` in `Q(ζ_m)`; requires `order | m`.
    pub fn coeffs_in(&self, m: u32) -> Vec<Rational> {
        assert!(m.is_multiple_of(self.order), "Q(ζ_{}) does not embed in Q(ζ_{m})", self.order);
        if self.order == m {
            return self.coeffs.clone();
        }
        let step = (m / self.order) as usize;
        let mut poly = vec![Rational::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[k * step] = c.clone();
            }
        }
        reduce_mod_phi(&mut poly, m);
        poly
    }

    fn embed(&self, m: u32) -> Cyclo {
        Cyclo { order: m, coeffs: self.coeffs_in(m) }
    }

    fn common(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        let m = a.order.lcm(&b.order);
        (a.embed(m), b.embed(m))
    }

    pub fn scale(&self, r: &Rational) -> Cyclo {
        if r.is_zero() {
            return Cyclo::zero();
        }
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    fn zip_with(&self, other: &Cyclo, f: impl Fn(&Rational, &Rational) -> Rational) -> Cyclo {
        if self.order == other.order {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
            return Cyclo { order: self.order, coeffs }.normalized();
        }
        if other.order == 1 {
            let mut coeffs = self.coeffs.clone();
            coeffs[0] = f(&self.coeffs[0], &other.coeffs[0]);
            let z = Rational::zero();
            for c in coeffs.iter_mut().skip(1) {
                *c = f(c, &z);
            }
            return Cyclo { order: self.order, coeffs }.normalized();
        }
        if self.order == 1 {
            let z = Rational::zero();
            let mut coeffs: Vec<Rational> = other.coeffs.iter().map(|c| f(&z, c)).collect();
            coeffs[0] = f(&self.coeffs[0], &other.coeffs[0]);
            return Cyclo { order: other.order, coeffs }.normalized();
        }
        let (a, b) = Cyclo::common(self, other);
        a.zip_with(&b, f)
    }

    fn mul_ref(&self, other: &Cyclo) -> Cyclo {
        if self.order == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.order == 1 {
            return self.scale(&other.coeffs[0]);
        }
        if self.order != other.order {
            let (a, b) = Cyclo::common(self, other);
            return a.mul_ref(&b);
        }
        let d = self.coeffs.len();
        let mut poly = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += &(a * b);
                }
            }
        }
        reduce_mod_phi(&mut poly, self.order);
        Cyclo { order: self.order, coeffs: poly }.normalized()
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Φ_n`.
    pub fn inverse(&self) -> Result<Cyclo, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(Cyclo::from_rational(self.coeffs[0].recip()?));
        }
        let f: Vec<Rational> = cyclotomic_poly(self.order).iter().map(|&c| Rational::from_int(c)).collect();
        let (g, s) = poly_inverse_part(&self.coeffs, &f);
        // g is a nonzero constant because Φ_n is irreducible
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip()?;
        let mut s: Vec<Rational> = s.iter().map(|c| c * &ginv).collect();
        reduce_mod_phi(&mut s, self.order);
        Ok(Cyclo { order: self.order, coeffs: s }.normalized())
    }

    pub fn checked_div(&self, other: &Cyclo) -> Result<Cyclo, Error> {
        Ok(self.mul_ref(&other.inverse()?))
    }

    /// Image under the Galois automorphism `ζ_n ↦ ζ_n^k`, `gcd(k, n) = 1`.
    pub fn galois(&self, k: i64) -> Cyclo {
        if self.order == 1 {
            return self.clone();
        }
        let n = self.order as i64;
        assert!(k.gcd(&n) == 1, "ζ ↦ ζ^{k} is not an automorphism of Q(ζ_{n})");
        let mut poly = vec![Rational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(j as i64 * k).rem_euclid(n) as usize] = c.clone();
            }
        }
        reduce_mod_phi(&mut poly, self.order);
        Cyclo { order: self.order, coeffs: poly }.normalized()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Cyclo {
        self.galois(-1)
    }

    pub fn pow(&self, e: u32) -> Cyclo {
        let mut acc = Cyclo::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Tests whether `self` is `ζ_n^k` for some `k`, returning `(n, k)` with
    /// `n` the multiplicative order.
    pub fn as_root_of_unity(&self) -> Option<(u32, u32)> {
        let m = if self.order.is_multiple_of(2) { self.order } else { 2 * self.order };
        for k in 0..m {
            if *self == Cyclo::root_of_unity(m, k as i64) {
                let g = (k as u64).gcd(&(m as u64)) as u32;
                return Some((m / g, k / g));
            }
        }
        None
    }
}

/// Extended Euclid for `a` against the modulus `f`; returns `(gcd, s)` with
/// `s·a ≡ gcd (mod f)`.
fn poly_inverse_part(a: &[Rational], f: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0 = trim(f.to_vec());
    let mut r1 = trim(a.to_vec());
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let lead = b.last().unwrap().recip().expect("trimmed divisor");
    let mut q = vec![Rational::zero(); rem.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = &rem[i + b.len() - 1] * &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &(&c * bj);
        }
        q[i] = c;
    }
    rem.truncate(b.len() - 1);
    (trim(q), trim(rem))
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        if self.order == 1 || other.order == 1 {
            // normalized rationals never live in a larger order
            return false;
        }
        let m = self.order.lcm(&other.order);
        self.coeffs_in(m) == other.coeffs_in(m)
    }
}

impl Eq for Cyclo {}

impl Default for Cyclo {
    fn default() -> Self {
        Cyclo::zero()
    }
}

impl From<Rational> for Cyclo {
    fn from(r: Rational) -> Self {
        Cyclo::from_rational(r)
    }
}

impl From<i64> for Cyclo {
    fn from(n: i64) -> Self {
        Cyclo::from_int(n)
    }
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, o: &Cyclo) -> Cyclo {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        self.zip_with(o, |a, b| a + b)
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, o: &Cyclo) -> Cyclo {
        if o.is_zero() {
            return self.clone();
        }
        self.zip_with(o, |a, b| a - b)
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, o: &Cyclo) -> Cyclo {
        self.mul_ref(o)
    }
}

impl Div for &Cyclo {
    type Output = Cyclo;
    fn div(self, o: &Cyclo) -> Cyclo {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for Cyclo {
            type Output = Cyclo;
            fn $f(self, o: Cyclo) -> Cyclo {
                (&self).$f(&o)
            }
        }
        impl $tr<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $f(self, o: &Cyclo) -> Cyclo {
                (&self).$f(o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, o: &Cyclo) {
        if o.is_zero() {
            return;
        }
        if self.order == o.order {
            for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
                *a += b;
            }
            if self.order != 1 {
                *self = std::mem::take(self).normalized();
            }
        } else {
            *self = &*self + o;
        }
    }
}

impl SubAssign<&Cyclo> for Cyclo {
    fn sub_assign(&mut self, o: &Cyclo) {
        *self = &*self - o;
    }
}

impl Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a Cyclo> for Cyclo {
    fn sum<I: Iterator<Item = &'a Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl fmt::Display for Cyclo {
    /// GAP-style notation: `E(n)^k` stands for `ζ_n^k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let root = match k {
                0 => String::new(),
                1 => format!("E({})", self.order),
                _ => format!("E({})^{}", self.order, k),
            };
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{root}")?,
                _ => write!(f, "{mag}*{root}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<(usize, String)> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.to_string())).collect();
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("coeffs", &coeffs)?;
        m.serialize_entry("order", &self.order)?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: u32,
            coeffs: Vec<(i64, String)>,
        }
        let raw = Raw::deserialize(d)?;
        let terms = raw
            .coeffs
            .iter()
            .map(|(k, c)| c.parse::<Rational>().map(|r| (*k, r)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(de::Error::custom)?;
        Cyclo::new(raw.order, &terms).map_err(de::Error::custom)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(&*cyclotomic_poly(1), &[-1, 1]);
        assert_eq!(&*cyclotomic_poly(2), &[1, 1]);
        assert_eq!(&*cyclotomic_poly(6), &[1, -1, 1]);
        assert_eq!(&*cyclotomic_poly(12), &[1, 0, -1, 0, 1]);
        assert_eq!(phi(24), 8);
        assert_eq!(phi(7), 6);
    }

    #[test]
    fn make_examples() {
        assert_eq!(Cyclo::new(2, &[(1, r(1, 1))]).unwrap(), Cyclo::from_int(-1));
        let s = Cyclo::new(3, &[(0, r(1, 1)), (1, r(1, 1)), (2, r(1, 1))]).unwrap();
        assert!(s.is_zero());
        assert_eq!(Cyclo::new(4, &[(2, r(1, 1))]).unwrap(), Cyclo::from_int(-1));
        assert!(matches!(Cyclo::new(0, &[]), Err(Error::InvalidOrder)));
    }

    #[test]
    fn arith_examples() {
        let z3 = Cyclo::zeta(3);
        assert!((&z3 * &z3.pow(2)).is_one());
        let z4 = Cyclo::zeta(4);
        assert_eq!(&z4 + &z4, Cyclo::new(4, &[(1, r(2, 1))]).unwrap());
        let prim5 = Cyclo::new(5, &[(1, r(1, 1)), (2, r(1, 1)), (3, r(1, 1)), (4, r(1, 1))]).unwrap();
        assert!((&Cyclo::one() + &prim5).is_zero());
        assert!(matches!(Cyclo::one().checked_div(&Cyclo::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn cross_order_equality() {
        // ζ_6 = 1 + ζ_3 since ζ_3 = ζ_6^2 = ζ_6 - 1
        let lhs = Cyclo::zeta(6);
        let rhs = Cyclo::new(3, &[(0, r(1, 1)), (1, r(1, 1))]).unwrap();
        assert_eq!(lhs, rhs);
        // reduction oracle in Q(ζ_6): Φ_6 = x^2 - x + 1, and 1 + ζ_6^2 ≡ ζ_6
        assert_eq!(Cyclo::new(6, &[(0, r(1, 1)), (2, r(1, 1))]).unwrap(), lhs);
        assert_eq!(Cyclo::new(7, &[]).unwrap(), Cyclo::new(5, &[]).unwrap());
        assert_ne!(Cyclo::zeta(3), Cyclo::zeta(3).pow(2));
    }

    #[test]
    fn inverse_and_conjugate() {
        let x = Cyclo::new(8, &[(0, r(1, 1)), (1, r(2, 3)), (3, r(-5, 2))]).unwrap();
        assert!((&x * &x.inverse().unwrap()).is_one());
        let z = Cyclo::zeta(5);
        assert!((&z * &z.conj()).is_one());
        let c = Cyclo::two_cos_pi_over(4);
        assert_eq!(&c * &c, Cyclo::from_int(2));
        assert_eq!(Cyclo::two_cos_pi_over(3), Cyclo::one());
        assert!(Cyclo::two_cos_pi_over(2).is_zero());
    }

    #[test]
    fn root_of_unity_detection() {
        assert_eq!(Cyclo::from_int(-1).as_root_of_unity(), Some((2, 1)));
        assert_eq!(Cyclo::root_of_unity(12, 8).as_root_of_unity(), Some((3, 2)));
        assert_eq!(Cyclo::from_int(2).as_root_of_unity(), None);
    }

    #[test]
    fn json_shape() {
        let x = Cyclo::new(4, &[(1, r(3, 2))]).unwrap();
        let v = serde_json::to_string(&x).unwrap();
        assert_eq!(v, r#"{"coeffs":[[1,"3/2"]],"order":4}"#);
        let back: Cyclo = serde_json::from_str(&v).unwrap();
        assert_eq!(back, x);
        assert_eq!(format!("{}", Cyclo::new(8, &[(0, r(1, 2)), (3, r(-1, 1))]).unwrap()), "1/2 - E(8)^3");
    }
}
