//! Dense univariate polynomials over a [`Field`], constant term first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Rationals};
use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Clone> Poly<T> {
    /// Trailing zeros are stripped, so the zero polynomial has no coefficients.
    pub fn new<F: Field<Elem = T>>(f: &F, mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = T>>(f: &F, c: T) -> Self {
        Self::new(f, vec![c])
    }

    pub fn monomial<F: Field<Elem = T>>(f: &F, deg: usize) -> Self {
        let mut c = vec![f.zero(); deg + 1];
        c[deg] = f.one();
        Poly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn add<F: Field<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(f, c)
    }

    pub fn neg<F: Field<Elem = T>>(&self, f: &F) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    pub fn sub<F: Field<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        self.add(f, &o.neg(f))
    }

    pub fn scale<F: Field<Elem = T>>(&self, f: &F, s: &T) -> Self {
        Self::new(f, self.coeffs.iter().map(|c| f.mul(s, c)).collect())
    }

    pub fn mul<F: Field<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, c)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem<F: Field<Elem = T>>(&self, f: &F, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = f.inv(d.lead().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); r.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = f.mul(r.last().unwrap(), &inv);
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] = f.sub(&r[k + i], &f.mul(&c, dc));
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|x| f.is_zero(x)) {
                r.pop();
            }
        }
        (Self::new(f, q), Self::new(f, r))
    }

    pub fn monic<F: Field<Elem = T>>(&self, f: &F) -> Self {
        match self.lead() {
            Some(l) => self.scale(f, &f.inv(l).unwrap()),
            None => Self::zero(),
        }
    }

    pub fn gcd<F: Field<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(f, &b).1;
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative<F: Field<Elem = T>>(&self, f: &F) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(&f.from_int(i as i64), a))
            .collect();
        Self::new(f, c)
    }

    pub fn eval<F: Field<Elem = T>>(&self, f: &F, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn is_squarefree<F: Field<Elem = T>>(&self, f: &F) -> bool {
        self.gcd(f, &self.derivative(f)).degree() == Some(0)
    }
}

/// Distinct rational roots with multiplicities, by the rational root test on
/// the integer-cleared polynomial.
pub fn rational_roots(p: &Poly<Rational>) -> Vec<(Rational, usize)> {
    let f = Rationals;
    let Some(_) = p.degree() else {
        return Vec::new();
    };
    let mut rest = p.monic(&f);
    let mut roots = Vec::new();
    // strip zero roots first
    let mut zero_mult = 0;
    while rest.coeffs().first().is_some_and(|c| c.is_zero()) {
        rest = rest.divrem(&f, &Poly::monomial(&f, 1)).0;
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
    }
    if rest.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let lcm = rest.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = rest.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect();
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let mut candidates = Vec::new();
    for num in divisors(&a0) {
        for den in divisors(&an) {
            let r = Rational::new(num.clone(), den.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    for r in candidates {
        let x_minus_r = Poly::new(&f, vec![-r.clone(), Rational::one()]);
        let mut mult = 0;
        loop {
            let (q, rem) = rest.divrem(&f, &x_minus_r);
            if !rem.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
    }
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // trial division; only used on the small integers arising in desk-scale
    // eigenvalue problems
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if (n % &i).is_zero() {
            out.push(i.clone());
            let j = n / &i;
            if j != i {
                out.push(j);
            }
        }
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FiniteField;
    use crate::algebra::rational::{frac, int};

    fn qp(c: &[i64]) -> Poly<Rational> {
        Poly::new(&Rationals, c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let f = Rationals;
        let a = qp(&[-1, 0, 1]); // x^2 - 1
        let b = qp(&[1, 1]);
        let (q, r) = a.divrem(&f, &b);
        assert_eq!(q, qp(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&f, &qp(&[-1, 1])), qp(&[-1, 1]));
        assert!(a.is_squarefree(&f));
        assert!(!qp(&[1, 2, 1]).is_squarefree(&f));
    }

    #[test]
    fn roots_of_products() {
        // (2x - 1)(x + 3)^2 x
        let p = qp(&[-1, 2]).mul(&Rationals, &qp(&[3, 1])).mul(&Rationals, &qp(&[3, 1])).mul(&Rationals, &qp(&[0, 1]));
        let roots = rational_roots(&p);
        assert_eq!(roots, vec![(int(0), 1), (int(-3), 2), (frac(1, 2), 1)]);
        assert!(rational_roots(&qp(&[-2, 0, 1])).is_empty());
    }

    #[test]
    fn finite_field_polys() {
        let f = FiniteField::prime(3).unwrap();
        let p = Poly::new(&f, vec![f.from_int(1), f.zero(), f.one()]); // x^2+1 irreducible mod 3
        let (_, r) = p.divrem(&f, &Poly::new(&f, vec![f.from_int(-1), f.one()]));
        assert!(!r.is_zero());
        assert_eq!(p.eval(&f, &f.from_int(1)), f.from_int(2));
    }
}
