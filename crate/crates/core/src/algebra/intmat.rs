//! Square and rectangular matrices over `Z/N`, reduced to diagonal form by
//! invertible row and column operations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

/// Diagonal entries of a matrix over `Z/N` equivalent to `rows`.
///
/// Missing diagonal positions (for rectangular input) are reported as 0.
pub fn diagonalize_mod(rows: &[Vec<u64>], n: u64) -> Vec<u64> {
    assert!(n >= 1, "modulus must be positive");
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    let mut m: Vec<Vec<u64>> = rows.iter().map(|row| row.iter().map(|x| x % n).collect()).collect();
    let sub = |a: u64, b: u64, k: u64| -> u64 {
        // a - k b mod n
        ((a as u128 + n as u128 * n as u128 - (k % n) as u128 * b as u128 % n as u128) % n as u128) as u64
    };
    let mut diag = Vec::new();
    for t in 0..r.min(c) {
        // bring a nonzero entry of the remaining block to (t, t)
        let Some((pi, pj)) = (t..r).flat_map(|i| (t..c).map(move |j| (i, j))).find(|&(i, j)| m[i][j] != 0) else {
            diag.extend(std::iter::repeat(0).take(r.min(c) - t));
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            // clear column t below the pivot by Euclid on rows
            loop {
                let Some(i) = (t + 1..r).filter(|&i| m[i][t] != 0).min_by_key(|&i| m[i][t]) else { break };
                if m[i][t] < m[t][t] || m[t][t] == 0 {
                    m.swap(t, i);
                }
                let p = m[t][t];
                for i in t + 1..r {
                    let k = m[i][t] / p;
                    if k != 0 {
                        for j in t..c {
                            m[i][j] = sub(m[i][j], m[t][j], k);
                        }
                    }
                }
            }
            // then row t right of the pivot by Euclid on columns
            let mut changed = false;
            loop {
                let Some(j) = (t + 1..c).filter(|&j| m[t][j] != 0).min_by_key(|&j| m[t][j]) else { break };
                if m[t][j] < m[t][t] {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
                let p = m[t][t];
                for j in t + 1..c {
                    let k = m[t][j] / p;
                    if k != 0 {
                        for i in t..r {
                            m[i][j] = sub(m[i][j], m[i][t], k);
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        diag.push(m[t][t]);
    }
    diag
}

/// Number of solutions of `A x = 0` over `Z/N`.
pub fn kernel_size_mod(rows: &[Vec<u64>], n: u64) -> BigInt {
    let cols = rows.first().map_or(0, |x| x.len());
    let diag = diagonalize_mod(rows, n);
    let mut size = BigInt::one();
    for j in 0..cols {
        let d = diag.get(j).copied().unwrap_or(0);
        size *= BigInt::from(d.gcd(&n));
    }
    size
}
