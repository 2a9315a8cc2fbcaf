use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::rational::{factorial, from_big, int, Rational};
use crate::error::{Error, Result};

pub const MAX_EULERIAN_N: u64 = 600;

/// Eulerian numbers `A(n, p)` (permutations of `1..n` with `p` ascents),
/// their normalisation `alpha_p = A(n,p)/n!` and its autocorrelation
/// `beta_p = sum_{p1 - p2 = p} alpha_{p1} alpha_{p2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerianTable {
    pub n: u64,
    #[serde(rename = "A", serialize_with = "crate::ser::bigs")]
    pub a: Vec<BigInt>,
    #[serde(serialize_with = "crate::ser::rats")]
    pub alpha: Vec<Rational>,
    /// `beta[i]` is `beta_{i - (n-1)}`.
    #[serde(serialize_with = "crate::ser::rats")]
    pub beta: Vec<Rational>,
}

impl EulerianTable {
    pub fn beta_at(&self, p: i64) -> Rational {
        let i = p + self.n as i64 - 1;
        if i < 0 {
            return Rational::zero();
        }
        self.beta.get(i as usize).cloned().unwrap_or_else(Rational::zero)
    }

    /// `sum_p p^2 beta_p`.
    pub fn beta_variance(&self) -> Rational {
        let off = self.n as i64 - 1;
        self.beta
            .iter()
            .enumerate()
            .map(|(i, b)| b * int((i as i64 - off).pow(2)))
            .sum()
    }

    /// Variance of the ascent count.
    pub fn alpha_variance(&self) -> Rational {
        let mean: Rational = self.alpha.iter().enumerate().map(|(p, a)| a * int(p as i64)).sum();
        let second: Rational = self.alpha.iter().enumerate().map(|(p, a)| a * int((p * p) as i64)).sum();
        second - &mean * &mean
    }
}

fn check_range(n: u64) -> Result<()> {
    if !(1..=MAX_EULERIAN_N).contains(&n) {
        return Err(Error::size(format!("Eulerian tables limited to 1 <= n <= {MAX_EULERIAN_N}, got {n}")));
    }
    Ok(())
}

/// Row `A(n, 0..n)` by `A(n,p) = (p+1)A(n-1,p) + (n-p)A(n-1,p-1)`.
fn eulerian_row(n: u64, mut visit: impl FnMut(u64, &[BigInt])) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    visit(1, &row);
    for m in 2..=n {
        let mut next = vec![BigInt::zero(); m as usize];
        for p in 0..m as usize {
            if p < row.len() {
                next[p] += &row[p] * (p as u64 + 1);
            }
            if p >= 1 {
                next[p] += &row[p - 1] * (m - p as u64);
            }
        }
        row = next;
        visit(m, &row);
    }
    row
}

pub fn eulerian(n: u64) -> Result<EulerianTable> {
    check_range(n)?;
    let a = eulerian_row(n, |_, _| {});
    let nf = factorial(n);
    if a.iter().sum::<BigInt>() != nf {
        return Err(Error::Internal(format!("Eulerian row {n} does not sum to n!")));
    }
    let alpha = a.iter().map(|x| Rational::new(x.clone(), nf.clone())).collect();
    let den = &nf * &nf;
    let len = a.len();
    let beta: Vec<Rational> = (0..2 * len - 1)
        .map(|i| {
            let shift = i as i64 - (len as i64 - 1);
            let num: BigInt = (0..len as i64)
                .filter(|p1| (0..len as i64).contains(&(p1 - shift)))
                .map(|p1| &a[p1 as usize] * &a[(p1 - shift) as usize])
                .sum();
            Rational::new(num, den.clone())
        })
        .collect();
    Ok(EulerianTable { n, a, alpha, beta })
}

/// `A(n, p)^2 >= A(n, p-1) A(n, p+1)` across the row.
pub fn is_log_concave(row: &[BigInt]) -> bool {
    row.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

/// Every `n` in range with `beta_0^2 >= 1600 / n`, compared exactly.
pub fn beta0_bound_check(n_min: u64, n_max: u64) -> Result<Vec<u64>> {
    check_range(n_min)?;
    check_range(n_max)?;
    let mut violations = Vec::new();
    eulerian_row(n_max, |m, row| {
        if m < n_min {
            return;
        }
        let nf = factorial(m);
        let sq: BigInt = row.iter().map(|x| x * x).sum();
        let beta0 = from_big(sq) / from_big(&nf * &nf);
        if &beta0 * &beta0 * int(m as i64) >= int(1600) {
            violations.push(m);
        }
    });
    Ok(violations)
}
