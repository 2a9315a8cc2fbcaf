//! The [`Field`] abstraction and its two implementations: the rationals and
//! finite fields `F_p[t]/(m(t))`.
//!
//! Field operations go through a context value (`&self`) so that finite
//! field elements stay plain integers and the modulus lives in one place.

use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{One, Zero};
use rand::Rng;

use super::rational::{int, is_prime, Rational};
use crate::error::{Error, Result};

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_int(&self, n: i64) -> Rational {
        int(n)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
}

/// Element of a [`FiniteField`]: the base-`p` digits of the integer are the
/// coefficients of the representing polynomial, constant term first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf(pub u64);

const MAX_DEGREE: usize = 16;

/// `F_{p^e}` realised as `F_p[t]/(m(t))` with `m` the first monic irreducible
/// polynomial of degree `e` when coefficients are read from `t^{e-1}` down
/// to the constant term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    e: u32,
    order: u64,
    /// Coefficients `c_0..c_{e-1}` of the monic modulus (leading one implicit).
    modulus: Vec<u64>,
}

impl FiniteField {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        if e == 0 || e as usize > MAX_DEGREE {
            return Err(Error::domain(format!("extension degree {e} outside 1..={MAX_DEGREE}")));
        }
        let order = p
            .checked_pow(e)
            .filter(|&o| o < (1 << 40))
            .ok_or_else(|| Error::size(format!("field order {p}^{e} too large")))?;
        let modulus = if e == 1 {
            vec![0]
        } else {
            least_irreducible(p, e as usize)
        };
        Ok(FiniteField { p, e, order, modulus })
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Modulus coefficients, constant term first, including the leading one.
    pub fn modulus(&self) -> Vec<u64> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.order).map(Gf)
    }

    /// The class of `t`; for `e = 1` this is `1`.
    pub fn gen(&self) -> Gf {
        if self.e == 1 {
            Gf(1)
        } else {
            Gf(self.p)
        }
    }

    /// Smallest element (by encoding) generating the multiplicative group.
    pub fn primitive_element(&self) -> Gf {
        let n = self.order - 1;
        let factors = super::rational::prime_factors(n);
        (1..self.order)
            .map(Gf)
            .find(|g| factors.iter().all(|&f| !self.is_one(&self.pow(g, n / f))))
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, x: &Gf) -> Gf {
        self.pow(x, self.p)
    }

    /// Coordinates in the power basis `1, t, .., t^{e-1}`.
    pub fn coords(&self, x: &Gf) -> Vec<u64> {
        let mut v = x.0;
        (0..self.e)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, c: &[u64]) -> Gf {
        Gf(c.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Gf {
        Gf(rng.gen_range(0..self.order))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Gf {
        Gf(rng.gen_range(1..self.order))
    }

    fn digits(&self, x: u64) -> [u64; MAX_DEGREE] {
        let mut out = [0u64; MAX_DEGREE];
        let mut v = x;
        for d in out.iter_mut().take(self.e as usize) {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    fn pack(&self, d: &[u64]) -> Gf {
        Gf(d[..self.e as usize]
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.p + c))
    }
}

impl Field for FiniteField {
    type Elem = Gf;

    fn zero(&self) -> Gf {
        Gf(0)
    }
    fn one(&self) -> Gf {
        Gf(1)
    }
    fn from_int(&self, n: i64) -> Gf {
        Gf(n.rem_euclid(self.p as i64) as u64)
    }

    fn add(&self, a: &Gf, b: &Gf) -> Gf {
        if self.e == 1 {
            return Gf((a.0 + b.0) % self.p);
        }
        let (x, y) = (self.digits(a.0), self.digits(b.0));
        let mut s = [0u64; MAX_DEGREE];
        for i in 0..self.e as usize {
            s[i] = (x[i] + y[i]) % self.p;
        }
        self.pack(&s)
    }

    fn neg(&self, a: &Gf) -> Gf {
        if self.e == 1 {
            return Gf((self.p - a.0) % self.p);
        }
        let x = self.digits(a.0);
        let mut s = [0u64; MAX_DEGREE];
        for i in 0..self.e as usize {
            s[i] = (self.p - x[i]) % self.p;
        }
        self.pack(&s)
    }

    fn mul(&self, a: &Gf, b: &Gf) -> Gf {
        let p = self.p as u128;
        if self.e == 1 {
            return Gf(((a.0 as u128 * b.0 as u128) % p) as u64);
        }
        let e = self.e as usize;
        let (x, y) = (self.digits(a.0), self.digits(b.0));
        let mut prod = [0u128; 2 * MAX_DEGREE];
        for i in 0..e {
            if x[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = (prod[i + j] + x[i] as u128 * y[j] as u128) % p;
            }
        }
        // t^e = -(c_0 + .. + c_{e-1} t^{e-1})
        for k in (e..2 * e - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.modulus.iter().enumerate() {
                let sub = c * m as u128 % p;
                prod[k - e + i] = (prod[k - e + i] + p - sub) % p;
            }
        }
        let mut out = [0u64; MAX_DEGREE];
        for i in 0..e {
            out[i] = prod[i] as u64;
        }
        self.pack(&out)
    }

    fn inv(&self, a: &Gf) -> Option<Gf> {
        if a.0 == 0 {
            return None;
        }
        Some(self.pow(a, self.order - 2))
    }

    fn is_zero(&self, a: &Gf) -> bool {
        a.0 == 0
    }
}

/// Polynomial remainder of `a` by monic `m` over `F_p`; low degree first.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        // every monic polynomial of degree d
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g: Vec<u64> = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u64, e: usize) -> Vec<u64> {
    // Encoding with c_{e-1} most significant gives lexicographic order read
    // from the t^{e-1} coefficient downwards.
    let count = p.pow(e as u32);
    for code in 0..count {
        let mut f = Vec::with_capacity(e + 1);
        let mut c = code;
        for _ in 0..e {
            f.push(c % p);
            c /= p;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            f.pop();
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn moduli_are_the_least_irreducibles() {
        assert_eq!(FiniteField::new(2, 2).unwrap().modulus(), vec![1, 1, 1]);
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus(), vec![1, 0, 1]);
        assert_eq!(FiniteField::new(2, 3).unwrap().modulus(), vec![1, 1, 0, 1]);
        assert_eq!(FiniteField::new(2, 4).unwrap().modulus(), vec![1, 1, 0, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FiniteField::new(4, 1), Err(Error::Domain(_))));
        assert!(matches!(FiniteField::new(3, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let f = FiniteField::new(5, 3).unwrap();
        for a in 0..5 {
            let x = f.from_int(a);
            assert_eq!(f.frobenius(&x), x);
        }
    }

    #[test]
    fn frobenius_on_f9_generator_is_cube() {
        let f = FiniteField::new(3, 2).unwrap();
        let g = f.primitive_element();
        assert_eq!(f.frobenius(&g), f.mul(&f.mul(&g, &g), &g));
        assert_ne!(f.frobenius(&g), g);
    }

    #[test]
    fn frobenius_has_order_e_on_f16() {
        let f = FiniteField::new(2, 4).unwrap();
        let mut moved = 0;
        for x in f.elements() {
            let mut y = x;
            for _ in 0..4 {
                y = f.frobenius(&y);
            }
            assert_eq!(y, x);
            moved += usize::from(f.frobenius(&x) != x);
        }
        // only F_4 inside F_16 is fixed by x -> x^4, and only F_2 by x -> x^2
        assert_eq!(moved, 14);
    }

    #[test]
    fn field_axioms_spot_check() {
        let mut rng = seeded(7);
        for (p, e) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (2, 4), (3, 3)] {
            let f = FiniteField::new(p, e).unwrap();
            for _ in 0..1000 {
                let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
                assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                );
                assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
                if let Some(ai) = f.inv(&a) {
                    assert_eq!(f.mul(&a, &ai), f.one());
                }
            }
        }
    }

    #[test]
    fn coords_round_trip() {
        let f = FiniteField::new(3, 3).unwrap();
        for x in f.elements() {
            assert_eq!(f.from_coords(&f.coords(&x)), x);
        }
    }
}
