use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::field::{Field, FiniteField, Gf};
use crate::algebra::matrix::Matrix;
use crate::algebra::rational::Rational;
use crate::algebra::subspace::{enumerate_subspaces, Subspace};
use crate::error::{Error, Result};
use crate::symplectic::SymplecticSpace;

pub const MAX_CENSUS_FIELD: u64 = 5;
pub const MAX_CENSUS_HALF_DIM: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinalgCensus {
    pub q: u64,
    pub d: usize,
    /// `dim F^1 >= ... >= dim F^w`.
    pub flag_dims: Vec<usize>,
    /// Multiplier `lambda` with `phi^T J phi = lambda J`.
    pub multiplier: u64,
    pub total_flags: u64,
    pub stable_filtrations: u64,
    pub bad_flags: u64,
    #[serde(serialize_with = "crate::ser::rat")]
    pub bad_fraction: Rational,
    /// Bad flags per isomorphism key of the graded pieces; a flag witnessed
    /// by several keys is counted under each.
    pub by_key: BTreeMap<String, u64>,
}

fn validate_flag_dims(d: usize, dims: &[usize]) -> Result<()> {
    let w = dims.len();
    if w == 0 {
        return Err(Error::domain("flag type must have at least one step"));
    }
    if dims.windows(2).any(|p| p[0] < p[1]) || dims.iter().any(|&x| x > 2 * d) {
        return Err(Error::domain("flag dimensions must be nonincreasing and at most 2d"));
    }
    if (0..w).any(|i| dims[i] + dims[w - 1 - i] != 2 * d) {
        return Err(Error::domain("flag type is not self-dual: dim F^i + dim F^{w+1-i} must equal 2d"));
    }
    Ok(())
}

fn isotropic_by_dim(space: &SymplecticSpace<FiniteField>) -> Result<Vec<Vec<Subspace<Gf>>>> {
    let n = space.dim();
    let mut out = vec![vec![Subspace::zero(n)]];
    for k in 1..=space.d {
        out.push(enumerate_subspaces(n, k, &space.field)?.filter(|s| space.is_isotropic(s)).collect());
    }
    Ok(out)
}

/// All self-dual decreasing flags `F^1 ⊇ ... ⊇ F^w` of the given type.
fn self_dual_flags(space: &SymplecticSpace<FiniteField>, iso: &[Vec<Subspace<Gf>>], dims: &[usize]) -> Vec<Vec<Subspace<Gf>>> {
    let f = &space.field;
    let gram = space.gram();
    let w = dims.len();
    let half = w / 2; // F^{w-half+1..w} are the small, isotropic steps
    let small: Vec<usize> = (w - half..w).rev().collect();
    let mut chains: Vec<Vec<Subspace<Gf>>> = vec![vec![]];
    let mut steps = small.clone();
    if w % 2 == 1 {
        steps.push(half);
    }
    for &i in &steps {
        let mut next = Vec::new();
        for chain in &chains {
            for s in &iso[dims[i]] {
                if chain.last().map_or(true, |prev| prev.is_subspace_of(f, s)) {
                    let mut c = chain.clone();
                    c.push(s.clone());
                    next.push(c);
                }
            }
        }
        chains = next;
    }
    chains
        .into_iter()
        .map(|chain| {
            // chain[k] is F^{steps[k]}
            let mut flag = vec![Subspace::zero(space.dim()); w];
            for (k, &i) in steps.iter().enumerate() {
                flag[i] = chain[k].clone();
                flag[w - 1 - i] = chain[k].perp(f, &gram);
            }
            flag
        })
        .collect()
}

/// `phi`-stable chains of isotropic subspaces `0 ⊊ f^1 ⊊ ... ⊊ f^m`, `m >= 1`,
/// completed to the self-dual filtration `f^0 ⊂ ... ⊂ f^{2m+1} = V`.
fn stable_filtrations(space: &SymplecticSpace<FiniteField>, iso: &[Vec<Subspace<Gf>>], phi: &Matrix<Gf>) -> Vec<Vec<Subspace<Gf>>> {
    let f = &space.field;
    let gram = space.gram();
    let stable: Vec<Subspace<Gf>> = iso[1..].iter().flatten().filter(|s| s.is_stable(f, phi)).cloned().collect();
    let mut chains: Vec<Vec<Subspace<Gf>>> = stable.iter().map(|s| vec![s.clone()]).collect();
    let mut out = Vec::new();
    while let Some(chain) = chains.pop() {
        let top = chain.last().unwrap();
        for s in &stable {
            if s.dim() > top.dim() && top.is_subspace_of(f, s) {
                let mut c = chain.clone();
                c.push(s.clone());
                chains.push(c);
            }
        }
        let mut full = vec![Subspace::zero(space.dim())];
        full.extend(chain.iter().cloned());
        full.extend(chain.iter().rev().map(|s| s.perp(f, &gram)));
        full.push(Subspace::full(f, space.dim()));
        out.push(full);
    }
    out
}

/// Matrix of `phi` on `upper / lower`.
fn induced_map(f: &FiniteField, phi: &Matrix<Gf>, lower: &Subspace<Gf>, upper: &Subspace<Gf>) -> Matrix<Gf> {
    let mut basis: Vec<Vec<Gf>> = lower.basis().to_vec();
    let mut span = lower.clone();
    for v in upper.basis() {
        if !span.contains(f, v) {
            basis.push(v.clone());
            span = Subspace::span(f, upper.ambient(), &basis);
        }
    }
    let k = lower.dim();
    let m = Matrix::from_cols(&basis).unwrap();
    let cols: Vec<Vec<Gf>> = basis[k..]
        .iter()
        .map(|c| m.solve(f, &phi.mul_vec(f, c)).expect("phi preserves the filtration")[k..].to_vec())
        .collect();
    Matrix::from_cols(&cols).unwrap()
}

fn graded_key(f: &FiniteField, phi: &Matrix<Gf>, filt: &[Subspace<Gf>]) -> Result<String> {
    let mut dims = Vec::new();
    let mut polys = Vec::new();
    for j in 1..filt.len() {
        let g = filt[j].dim() - filt[j - 1].dim();
        dims.push(g.to_string());
        if g > 0 {
            let cp = induced_map(f, phi, &filt[j - 1], &filt[j]).charpoly(f)?;
            let c: Vec<String> = cp.coeffs().iter().map(|x| x.0.to_string()).collect();
            polys.push(format!("[{}]", c.join(",")));
        }
    }
    Ok(format!("dims=[{}] charpolys=[{}]", dims.join(","), polys.join(",")))
}

/// Induced weight of `F` on every nonzero graded piece equals `sum dim F^p / dim V`.
fn balanced(f: &FiniteField, flag: &[Subspace<Gf>], filt: &[Subspace<Gf>], n: usize) -> bool {
    let global: usize = flag.iter().map(|s| s.dim()).sum();
    (1..filt.len()).all(|j| {
        let g = filt[j].dim() - filt[j - 1].dim();
        if g == 0 {
            return true;
        }
        let local: usize = flag
            .iter()
            .map(|fp| fp.intersection_dim(f, &filt[j]) - fp.intersection_dim(f, &filt[j - 1]))
            .sum();
        local * n == global * g
    })
}

/// Counts self-dual flags of type `flag_dims` in `F_q^{2d}` that are bad for
/// `phi`: some nontrivial `phi`-stable self-dual filtration has every graded
/// piece carrying the global weight of the flag.
pub fn linalg_census(q: u64, d: usize, flag_dims: &[usize], phi: &Matrix<Gf>) -> Result<LinalgCensus> {
    if q > MAX_CENSUS_FIELD || d > MAX_CENSUS_HALF_DIM {
        return Err(Error::size(format!(
            "census limited to q <= {MAX_CENSUS_FIELD} and 2d <= {} (got q = {q}, d = {d})",
            2 * MAX_CENSUS_HALF_DIM
        )));
    }
    let field = FiniteField::prime(q)?;
    let space = SymplecticSpace::new(field.clone(), d)?;
    let n = space.dim();
    validate_flag_dims(d, flag_dims)?;
    if phi.rows() != n || phi.cols() != n {
        return Err(Error::domain(format!("phi must be {n} x {n}")));
    }
    let j = space.gram();
    let lhs = phi.transpose().mul(&field, &j)?.mul(&field, phi)?;
    // <e_1, e_1'> = 1
    let multiplier = lhs.get(0, d).clone();
    if field.is_zero(&multiplier) || lhs != j.scale(&field, &multiplier) {
        return Err(Error::domain("phi is not a symplectic similitude"));
    }
    let iso = isotropic_by_dim(&space)?;
    let flags = self_dual_flags(&space, &iso, flag_dims);
    let filts = stable_filtrations(&space, &iso, phi);
    let keys: Vec<String> = filts.iter().map(|x| graded_key(&field, phi, x)).collect::<Result<_>>()?;
    let mut by_key = BTreeMap::new();
    let mut bad_flags = 0u64;
    for flag in &flags {
        let hit: BTreeSet<&String> = filts.iter().zip(&keys).filter(|(x, _)| balanced(&field, flag, x, n)).map(|(_, k)| k).collect();
        if !hit.is_empty() {
            bad_flags += 1;
        }
        for k in hit {
            *by_key.entry(k.clone()).or_insert(0u64) += 1;
        }
    }
    let total_flags = flags.len() as u64;
    Ok(LinalgCensus {
        q,
        d,
        flag_dims: flag_dims.to_vec(),
        multiplier: multiplier.0,
        total_flags,
        stable_filtrations: filts.len() as u64,
        bad_flags,
        bad_fraction: Rational::new(bad_flags.into(), total_flags.max(1).into()),
        by_key,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> FiniteField {
        FiniteField::prime(q).unwrap()
    }

    #[test]
    fn flag_counts() {
        let f3 = f(3);
        let id2 = Matrix::identity(&f3, 2);
        assert_eq!(linalg_census(3, 1, &[1], &id2).unwrap().total_flags, 4);
        let id4 = Matrix::identity(&f3, 4);
        // Lagrangians of F_3^4
        assert_eq!(linalg_census(3, 2, &[2], &id4).unwrap().total_flags, 40);
        // isotropic line inside its perp: every line
        assert_eq!(linalg_census(3, 2, &[3, 2, 1], &id4).unwrap().total_flags, 40 * 4);
        assert_eq!(linalg_census(3, 2, &[3, 1], &id4).unwrap().total_flags, 40);
    }

    #[test]
    fn rejects_bad_input() {
        let f3 = f(3);
        assert!(linalg_census(3, 2, &[3], &Matrix::identity(&f3, 4)).is_err());
        assert!(linalg_census(7, 1, &[1], &Matrix::identity(&f(7), 2)).is_err());
        let not_sim = Matrix::from_ints(&f3, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 0, 1]]).unwrap();
        assert!(linalg_census(3, 2, &[2], &not_sim).is_err());
    }

    #[test]
    fn irreducible_phi_has_no_bad_flags() {
        let f3 = f(3);
        // x^2 + 1 is irreducible over F_3
        let rot = Matrix::from_ints(&f3, &[vec![0, 2], vec![1, 0]]).unwrap();
        let c = linalg_census(3, 1, &[1], &rot).unwrap();
        assert_eq!(c.stable_filtrations, 0);
        assert_eq!(c.bad_flags, 0);
    }

    #[test]
    fn scalar_phi_d1() {
        let f3 = f(3);
        let c = linalg_census(3, 1, &[1], &Matrix::identity(&f3, 2).scale(&f3, &Gf(2))).unwrap();
        assert_eq!(c.stable_filtrations, 4);
        assert_eq!(c.multiplier, 1);
        assert_eq!(c.bad_flags, 0);
    }
}
