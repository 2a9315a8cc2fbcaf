use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::rational::{binomial, factorial, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumKind {
    RawMiddle,
    Adjoint,
}

/// Multiset of Hodge numbers keyed by the Hodge index `p`.
///
/// For a raw-middle spectrum of an `(n-1)`-dimensional hypersurface the entry
/// at `p` is `h^{p, n-1-p}`. Zero multiplicities are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HodgeSpectrum {
    pub kind: SpectrumKind,
    #[serde(serialize_with = "crate::ser::big_map")]
    pub entries: BTreeMap<i64, BigInt>,
}

impl HodgeSpectrum {
    pub fn new(kind: SpectrumKind, entries: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut map = BTreeMap::new();
        for (p, h) in entries {
            assert!(!h.is_negative(), "Hodge numbers are nonnegative");
            if !h.is_zero() {
                *map.entry(p).or_insert_with(BigInt::zero) += h;
            }
        }
        HodgeSpectrum { kind, entries: map }
    }

    pub fn get(&self, p: i64) -> BigInt {
        self.entries.get(&p).cloned().unwrap_or_default()
    }

    /// Sum of all multiplicities.
    pub fn total(&self) -> BigInt {
        self.entries.values().sum()
    }

    /// `sum_{p>0} h^p`.
    pub fn sum_positive(&self) -> BigInt {
        self.entries.range(1..).map(|(_, h)| h).sum()
    }

    /// `sum_{p>0} p h^p`.
    pub fn weighted_positive(&self) -> BigInt {
        self.entries.range(1..).map(|(p, h)| h * *p).sum()
    }

    /// Piecewise-linear sum of the topmost `y` Hodge numbers: slope `p_max` on
    /// the first `h^{p_max}` units, then the next index down, and so on.
    pub fn t_function(&self, y: &Rational) -> Result<Rational> {
        let total = self.total();
        let (num, den) = (y.numer(), y.denom());
        if num.is_negative() || *num > &total * den {
            return Err(Error::domain(format!(
                "T argument {} outside [0, {}]",
                crate::algebra::rational::format(y),
                total
            )));
        }
        // work in units of 1/den to avoid normalising rationals at each block
        let mut rest = num.clone();
        let mut acc = BigInt::zero();
        for (p, h) in self.entries.iter().rev() {
            if rest.is_zero() {
                break;
            }
            let block = h * den;
            let take = if rest < block { rest.clone() } else { block };
            acc += &take * *p;
            rest -= take;
        }
        Ok(Rational::new(acc, den.clone()))
    }

    /// Slopes of `T` in order of increasing argument, one per unit block.
    pub fn slopes(&self) -> Vec<(i64, BigInt)> {
        self.entries.iter().rev().map(|(p, h)| (*p, h.clone())).collect()
    }
}

/// Precomputed integer polynomials in `d` giving `n! h^{p,q}(d)` for fixed `n`.
///
/// With `u_k = (q+1-k)d + k - n - 1` the inclusion-exclusion term
/// `C(u_k + n, n)` equals `prod_{i=1..n} (u_k + i) / n!` whenever
/// `u_k >= -n`, which holds for every `k <= q+1` and `d >= 2`; the terms with
/// `k > q+1` vanish for `d >= 2`. So each Hodge number is a fixed polynomial
/// in `d`, evaluated here by Horner's rule.
#[derive(Debug, Clone)]
pub struct HodgeEvaluator {
    n: u64,
    n_fact: BigInt,
    // polys[q][j] is the coefficient of d^j in n! h^{n-1-q, q}(d)
    polys: Vec<Vec<BigInt>>,
}

impl HodgeEvaluator {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("hypersurface dimension needs n >= 2, got {n}")));
        }
        let nn = n as usize;
        // esym[k][j] = e_j(b_k + 1, ..., b_k + n) with b_k = k - n - 1
        let esym: Vec<Vec<BigInt>> = (0..=nn)
            .map(|k| {
                let b = k as i64 - n as i64 - 1;
                let mut e = vec![BigInt::zero(); nn + 1];
                e[0] = BigInt::one();
                for i in 1..=nn as i64 {
                    let c = BigInt::from(b + i);
                    for j in (1..=nn).rev() {
                        let t = &e[j - 1] * &c;
                        e[j] += t;
                    }
                }
                e
            })
            .collect();
        let signed_binom: Vec<BigInt> = (0..=nn)
            .map(|k| {
                let c = binomial(n + 1, k as u64);
                if k % 2 == 0 { c } else { -c }
            })
            .collect();
        let polys = (0..nn)
            .map(|q| {
                // prod_i (a d + b_k + i) = sum_j a^j e_{n-j} d^j, a = q+1-k
                let mut coeffs = vec![BigInt::zero(); nn + 1];
                for k in 0..=q + 1 {
                    let a = BigInt::from((q + 1 - k) as u64);
                    let mut apow = BigInt::one();
                    for (j, c) in coeffs.iter_mut().enumerate() {
                        *c += &signed_binom[k] * &apow * &esym[k][nn - j];
                        apow *= &a;
                    }
                }
                coeffs
            })
            .collect();
        Ok(HodgeEvaluator { n, n_fact: factorial(n), polys })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `h^{n-1-q, q}` at degree `d`, indexed by `q`.
    pub fn values(&self, d: u64) -> Result<Vec<BigInt>> {
        if d < 2 {
            return Err(Error::domain(format!("hypersurface degree needs d >= 2, got {d}")));
        }
        self.polys
            .iter()
            .map(|c| {
                let v = c.iter().rev().fold(BigInt::zero(), |acc, x| acc * d + x);
                let (h, r) = v.div_rem(&self.n_fact);
                if !r.is_zero() || h.is_negative() {
                    return Err(Error::Internal(format!("Hodge polynomial gave non-integral value at n={}, d={d}", self.n)));
                }
                Ok(h)
            })
            .collect()
    }

    pub fn spectrum(&self, d: u64) -> Result<HodgeSpectrum> {
        let vals = self.values(d)?;
        let top = self.n as i64 - 1;
        Ok(HodgeSpectrum::new(
            SpectrumKind::RawMiddle,
            vals.into_iter().enumerate().map(|(q, h)| (top - q as i64, h)),
        ))
    }
}

/// Primitive middle Hodge numbers of a smooth degree-`d` hypersurface in
/// `P^n`, i.e. Jacobian-ring monomial counts.
pub fn hypersurface_hodge_numbers(n: u64, d: u64) -> Result<HodgeSpectrum> {
    if d < 2 {
        return Err(Error::domain(format!("hypersurface degree needs d >= 2, got {d}")));
    }
    HodgeEvaluator::new(n)?.spectrum(d)
}

/// Adjoint spectrum of the generalized automorphism group of the middle
/// intersection form: `Sym^2` when the weight `n-1` is odd, `wedge^2` when
/// even, plus a one-dimensional center in degree zero.
pub fn adjoint_spectrum(h: &HodgeSpectrum, n: u64) -> Result<HodgeSpectrum> {
    if h.kind != SpectrumKind::RawMiddle {
        return Err(Error::domain("adjoint spectrum needs a raw-middle input"));
    }
    let w = n as i64 - 1;
    if let Some((&p, _)) = h.entries.iter().find(|(p, _)| **p < 0 || **p > w) {
        return Err(Error::domain(format!("index {p} outside 0..={w} for n={n}")));
    }
    let raw: Vec<BigInt> = (0..=w).map(|p| h.get(p)).collect();
    let conv = self_convolution(&raw);
    let alternating = w % 2 == 1;
    let mut out = Vec::with_capacity(conv.len());
    for (j, c) in conv.into_iter().enumerate() {
        let mut twice = c;
        if j % 2 == 0 {
            let mid = &raw[j / 2];
            if alternating {
                twice += mid;
            } else {
                twice -= mid;
            }
        }
        let (half, r) = twice.div_rem(&BigInt::from(2));
        if !r.is_zero() || half.is_negative() {
            return Err(Error::Internal(format!("odd or negative doubled adjoint Hodge number at index {}", j as i64 - w)));
        }
        out.push((j as i64 - w, half));
    }
    out.push((0, BigInt::one()));
    Ok(HodgeSpectrum::new(SpectrumKind::Adjoint, out))
}

/// `c_j = sum_{a+b=j} v_a v_b` for nonnegative `v`, by packing the vector into
/// one big integer and squaring it.
fn self_convolution(v: &[BigInt]) -> Vec<BigInt> {
    if v.is_empty() {
        return Vec::new();
    }
    let max_bits = v.iter().map(|x| x.bits()).max().unwrap_or(0);
    let len_bits = 64 - (v.len() as u64).leading_zeros() as u64;
    let slot = ((2 * max_bits + len_bits + 1).div_ceil(32)) as usize;
    let mut digits = vec![0u32; slot * v.len()];
    for (i, x) in v.iter().enumerate() {
        let d = x.magnitude().to_u32_digits();
        digits[i * slot..i * slot + d.len()].copy_from_slice(&d);
    }
    let packed = BigUint::new(digits);
    let sq = (&packed * &packed).to_u32_digits();
    (0..2 * v.len() - 1)
        .map(|j| {
            let lo = (j * slot).min(sq.len());
            let hi = ((j + 1) * slot).min(sq.len());
            BigInt::from_biguint(Sign::Plus, BigUint::from_slice(&sq[lo..hi]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    fn spec(kind: SpectrumKind, e: &[(i64, i64)]) -> HodgeSpectrum {
        HodgeSpectrum::new(kind, e.iter().map(|&(p, h)| (p, BigInt::from(h))))
    }

    #[test]
    fn small_hypersurfaces() {
        let raw = SpectrumKind::RawMiddle;
        assert_eq!(hypersurface_hodge_numbers(2, 3).unwrap(), spec(raw, &[(1, 1), (0, 1)]));
        assert_eq!(hypersurface_hodge_numbers(3, 4).unwrap(), spec(raw, &[(2, 1), (1, 19), (0, 1)]));
        assert_eq!(hypersurface_hodge_numbers(2, 4).unwrap(), spec(raw, &[(1, 3), (0, 3)]));
        // quadric surface: primitive middle cohomology is h^{1,1}=1
        assert_eq!(hypersurface_hodge_numbers(3, 2).unwrap(), spec(raw, &[(1, 1)]));
        assert!(matches!(hypersurface_hodge_numbers(1, 3), Err(Error::Domain(_))));
        assert!(matches!(hypersurface_hodge_numbers(3, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn adjoint_examples() {
        let h = hypersurface_hodge_numbers(2, 3).unwrap();
        let a = adjoint_spectrum(&h, 2).unwrap();
        assert_eq!(a, spec(SpectrumKind::Adjoint, &[(1, 1), (0, 2), (-1, 1)]));
        let k3 = adjoint_spectrum(&hypersurface_hodge_numbers(3, 4).unwrap(), 3).unwrap();
        assert_eq!(k3.total(), BigInt::from(211));
        assert_eq!(k3.get(2), BigInt::zero());
        assert_eq!(k3.get(1), BigInt::from(19));
    }

    #[test]
    fn convolution_matches_schoolbook() {
        let v: Vec<BigInt> = [3u64, 0, 7, 123456789, 1].iter().map(|&x| BigInt::from(x)).collect();
        let c = self_convolution(&v);
        for (j, cj) in c.iter().enumerate() {
            let mut s = BigInt::zero();
            for a in 0..v.len() {
                if j >= a && j - a < v.len() {
                    s += &v[a] * &v[j - a];
                }
            }
            assert_eq!(*cj, s, "index {j}");
        }
    }

    #[test]
    fn t_function_examples() {
        let h = spec(SpectrumKind::Adjoint, &[(1, 2), (0, 3), (-1, 2)]);
        assert_eq!(h.t_function(&int(2)).unwrap(), int(2));
        assert_eq!(h.t_function(&int(4)).unwrap(), int(2));
        assert_eq!(h.t_function(&frac(3, 2)).unwrap(), frac(3, 2));
        assert_eq!(h.t_function(&int(7)).unwrap(), int(0));
        assert!(h.t_function(&int(8)).is_err());
        assert!(h.t_function(&int(-1)).is_err());
    }
}
