//! Bounding the Frobenius centralizer from point counts, with a Fejér-kernel
//! harness that checks the bound on explicit eigenvalue spectra.

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::algebra::rational::{from_big, prime_factors, Rational};
use crate::error::{Error, Result};

/// Upper end of the `J` range accepted by [`verify_spectrum_bound`].
pub const MAX_POINT_COUNT_DEGREE: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountBoundInput {
    pub q: u64,
    pub n: u64,
    pub b: BigInt,
}

impl CountBoundInput {
    pub fn new(q: u64, n: u64, b: BigInt) -> Result<Self> {
        if q < 2 || prime_factors(q).len() != 1 {
            return Err(Error::domain(format!("q = {q} is not a prime power")));
        }
        if n < 2 {
            return Err(Error::domain("n must be >= 2"));
        }
        if !b.is_positive() {
            return Err(Error::domain("b must be positive"));
        }
        Ok(CountBoundInput { q, n, b })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralizerBound {
    #[serde(rename = "N")]
    pub n_terms: u64,
    #[serde(serialize_with = "crate::ser::rat")]
    pub bound: Rational,
    pub vacuous: bool,
}

/// Largest `N` with `q^{(n/2+1)N} < b/3`, and `3b^2/N`.
///
/// Compared as `9 q^{(n+2)N} < b^2`. With no such `N >= 1` the bound is the
/// trivial `b^2` and `vacuous` is set.
pub fn centralizer_bound(input: &CountBoundInput) -> CentralizerBound {
    let b2 = &input.b * &input.b;
    let step = BigInt::from(input.q).pow(input.n as u32 + 2);
    let mut lhs = BigInt::from(9) * &step;
    let mut n_terms = 0u64;
    while lhs < b2 {
        n_terms += 1;
        lhs *= &step;
    }
    if n_terms == 0 {
        return CentralizerBound { n_terms, bound: from_big(b2), vacuous: true };
    }
    CentralizerBound { n_terms, bound: Rational::new(b2 * 3, n_terms.into()), vacuous: false }
}

/// `||g_N||^2 = (2N+1)^2 + 2 sum_{i=1}^{2N} i^2`.
pub fn fejer_norm(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::domain("N must be >= 1"));
    }
    let m = BigInt::from(2 * n);
    let squares = &m * (&m + 1u32) * (&m * 2u32 + 1u32) / 6u32;
    Ok((&m + 1u32) * (&m + 1u32) + squares * 2u32)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Angle {
    #[serde(serialize_with = "crate::ser::rat")]
    pub theta: Rational,
    pub m: u64,
}

/// Frobenius eigenvalue angles `theta_s` in `[0, 1)` with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub angles: Vec<Angle>,
}

impl Spectrum {
    /// Repeated angles are merged.
    pub fn new(angles: Vec<(Rational, u64)>) -> Result<Self> {
        let mut merged: Vec<Angle> = Vec::new();
        for (theta, m) in angles {
            if m == 0 {
                return Err(Error::domain("multiplicities must be >= 1"));
            }
            if theta.is_negative() || theta >= Rational::one() {
                return Err(Error::domain(format!("angle {theta} outside [0, 1)")));
            }
            match merged.iter_mut().find(|a| a.theta == theta) {
                Some(a) => a.m += m,
                None => merged.push(Angle { theta, m }),
            }
        }
        merged.sort_by(|a, b| a.theta.cmp(&b.theta));
        Ok(Spectrum { angles: merged })
    }

    pub fn betti(&self) -> BigInt {
        self.angles.iter().map(|a| BigInt::from(a.m)).sum()
    }

    /// `dim Z = sum m_s^2`.
    pub fn centralizer_dim(&self) -> BigInt {
        self.angles.iter().map(|a| BigInt::from(a.m) * a.m).sum()
    }
}

/// Decimal fixed point with 40 fractional digits, 30 of which are trusted.
mod fixed {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::Zero;

    use crate::algebra::rational::Rational;

    pub const DIGITS: u32 = 40;

    pub fn scale() -> BigInt {
        BigInt::from(10).pow(DIGITS)
    }

    fn atan_inv(x: u64) -> BigInt {
        let x2 = BigInt::from(x * x);
        let mut power = scale() / x;
        let mut sum = BigInt::zero();
        let mut k = 0u64;
        while !power.is_zero() {
            let term = &power / (2 * k + 1);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            power /= &x2;
            k += 1;
        }
        sum
    }

    pub fn two_pi() -> BigInt {
        (atan_inv(5) * 16 - atan_inv(239) * 4) * 2
    }

    /// `(cos 2 pi t, sin 2 pi t)`, scaled.
    pub fn unit_circle(t: &Rational, two_pi: &BigInt) -> (BigInt, BigInt) {
        // reduce to [-1/2, 1/2)
        let num = t.numer();
        let den = t.denom();
        let r = num.mod_floor(den);
        let r = if &r * 2 >= *den { r - den } else { r };
        let s = scale();
        let x = two_pi * r / den;
        let (mut cos, mut sin) = (BigInt::zero(), BigInt::zero());
        // term = x^k / k!
        let mut term = s.clone();
        let mut k = 0u64;
        while !term.is_zero() {
            let acc = if k % 2 == 0 { &mut cos } else { &mut sin };
            if k % 4 < 2 {
                *acc += &term;
            } else {
                *acc -= &term;
            }
            k += 1;
            term = &term * &x / &s / k;
        }
        (cos, sin)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    #[serde(serialize_with = "crate::ser::big")]
    pub b: BigInt,
    /// First `j` where `|sum m_s e(j theta_s)|` exceeds `q^{(n/2+1)j}`.
    pub failed_at_j: Option<u64>,
    pub preconditions_hold: bool,
    #[serde(serialize_with = "crate::ser::big")]
    pub dim_z: BigInt,
    pub bound: CentralizerBound,
    pub holds: bool,
}

/// Checks the point-count constraints for `1 <= j <= J`, then `dim Z <= 3b^2/N`.
///
/// `|S_j|^2 <= q^{(n+2)j} + 10^{-9}` is tested with `S_j` evaluated in 40-digit
/// fixed point. Failing constraints give a report with
/// `preconditions_hold = false` and `holds = false`; a failing bound with
/// passing constraints is a lemma violation.
pub fn verify_spectrum_bound(s: &Spectrum, q: u64, n: u64, j_max: u64) -> Result<SpectrumReport> {
    if j_max == 0 || j_max > MAX_POINT_COUNT_DEGREE {
        return Err(Error::domain(format!("J must lie in 1..={MAX_POINT_COUNT_DEGREE}")));
    }
    let b = s.betti();
    let input = CountBoundInput::new(q, n, b.clone())?;
    let bound = centralizer_bound(&input);
    let dim_z = s.centralizer_dim();
    let sc = fixed::scale();
    let sc2 = &sc * &sc;
    let slack = &sc2 / BigInt::from(10).pow(9u32);
    let step = BigInt::from(q).pow(n as u32 + 2);
    let mut target = BigInt::one();
    let tau = fixed::two_pi();
    let mut failed_at_j = None;
    for j in 1..=j_max {
        target *= &step;
        let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
        for a in &s.angles {
            let (c, si) = fixed::unit_circle(&(&a.theta * Rational::from_integer(j.into())), &tau);
            re += c * a.m;
            im += si * a.m;
        }
        if &re * &re + &im * &im > &target * &sc2 + &slack {
            failed_at_j = Some(j);
            break;
        }
    }
    let preconditions_hold = failed_at_j.is_none();
    let holds = preconditions_hold && from_big(dim_z.clone()) <= bound.bound;
    if preconditions_hold && !holds {
        return Err(Error::LemmaViolation(format!(
            "dim Z = {dim_z} exceeds {} although all point-count constraints hold",
            crate::algebra::rational::format(&bound.bound)
        )));
    }
    Ok(SpectrumReport { b, failed_at_j, preconditions_hold, dim_z, bound, holds })
}

/// `(2N+1)^2 / ||g_N||^2 <= 3/(4N)`, exactly.
pub fn fejer_factor_holds(n: u64) -> Result<bool> {
    let norm = fejer_norm(n)?;
    let lhs = BigInt::from(2 * n + 1).pow(2u32) * 4u32 * n;
    Ok(lhs <= norm * 3u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    fn bound(q: u64, n: u64, b: i64) -> CentralizerBound {
        centralizer_bound(&CountBoundInput::new(q, n, b.into()).unwrap())
    }

    #[test]
    fn bound_examples() {
        let r = bound(2, 2, 1000);
        assert_eq!((r.n_terms, r.bound.clone(), r.vacuous), (4, int(750000), false));
        let r = bound(2, 2, 10);
        assert!(r.vacuous);
        assert_eq!(r.bound, int(100));
        assert_eq!(bound(2, 2, 64).bound, int(6144));
        // odd n: 9 * 2^{5N} < b^2
        assert_eq!(bound(2, 3, 1000).n_terms, 3);
        assert!(CountBoundInput::new(6, 2, 10.into()).is_err());
        assert!(CountBoundInput::new(4, 1, 10.into()).is_err());
    }

    #[test]
    fn strict_inequality_at_equality() {
        // b/3 = 2^{2N} exactly for b = 3 * 4^N
        for k in 1..6u32 {
            let b = 3 * 4i64.pow(k);
            assert_eq!(bound(2, 2, b).n_terms, k as u64 - 1);
        }
    }

    #[test]
    fn fejer_examples() {
        assert_eq!(fejer_norm(1).unwrap(), 19.into());
        assert_eq!(fejer_norm(2).unwrap(), 85.into());
        assert!(fejer_norm(0).is_err());
    }

    #[test]
    fn unit_circle_values() {
        let s = fixed::scale();
        let tau = fixed::two_pi();
        let tol = BigInt::from(10).pow(fixed::DIGITS - 32);
        let close = |a: &BigInt, b: &BigInt| (a - b).abs() <= tol;
        let (c, si) = fixed::unit_circle(&frac(1, 4), &tau);
        assert!(close(&c, &BigInt::zero()) && close(&si, &s));
        let (c, si) = fixed::unit_circle(&frac(1, 2), &tau);
        assert!(close(&c, &-s.clone()) && close(&si, &BigInt::zero()));
        let (c, _) = fixed::unit_circle(&frac(1, 6), &tau);
        assert!(close(&(c * 2), &s));
        for (p, qq) in [(1, 7), (3, 11), (5, 13), (-2, 9)] {
            let (c, si) = fixed::unit_circle(&frac(p, qq), &tau);
            assert!(close(&((&c * &c + &si * &si) / &s), &s));
        }
    }

    #[test]
    fn spectrum_validation() {
        assert!(Spectrum::new(vec![(int(1), 1)]).is_err());
        assert!(Spectrum::new(vec![(frac(1, 2), 0)]).is_err());
        let s = Spectrum::new(vec![(frac(1, 2), 1), (frac(1, 2), 2), (int(0), 1)]).unwrap();
        assert_eq!(s.angles.len(), 2);
        assert_eq!(s.betti(), 4.into());
        assert_eq!(s.centralizer_dim(), 10.into());
    }

    #[test]
    fn single_angle_is_vacuous() {
        let s = Spectrum::new(vec![(int(0), 4)]).unwrap();
        let r = verify_spectrum_bound(&s, 2, 2, 3).unwrap();
        assert!(r.preconditions_hold && r.bound.vacuous && r.holds);
        let s = Spectrum::new(vec![(int(0), 5)]).unwrap();
        let r = verify_spectrum_bound(&s, 2, 2, 3).unwrap();
        assert_eq!(r.failed_at_j, Some(1));
        assert!(!r.holds);
    }
}
