use serde::Serialize;

use super::SymplecticSpace;
use crate::algebra::field::{Field, FiniteField, Gf, Rationals};
use crate::algebra::matrix::Matrix;
use crate::algebra::poly::{rational_roots, Poly};
use crate::algebra::rational::Rational;
use crate::algebra::subspace::{combine, enumerate_subspaces, Subspace};
use crate::error::{Error, Result};

/// Fields on which the search can list candidate subspaces.
pub trait LagrangianField: Field {
    /// Every proper nonzero subspace of `K^d` stable under `c`.
    fn invariant_subspaces(&self, c: &Matrix<Self::Elem>) -> Result<Vec<Subspace<Self::Elem>>>;

    /// Every proper nonzero subspace of `K^n`, when that list is finite and small.
    fn proper_subspaces(&self, n: usize) -> Result<Vec<Subspace<Self::Elem>>>;
}

impl LagrangianField for FiniteField {
    fn invariant_subspaces(&self, c: &Matrix<Gf>) -> Result<Vec<Subspace<Gf>>> {
        Ok(self.proper_subspaces(c.rows())?.into_iter().filter(|u| u.is_stable(self, c)).collect())
    }

    fn proper_subspaces(&self, n: usize) -> Result<Vec<Subspace<Gf>>> {
        let mut out = Vec::new();
        for k in 1..n {
            out.extend(enumerate_subspaces(n, k, self)?);
        }
        Ok(out)
    }
}

impl LagrangianField for Rationals {
    /// Exact only when the characteristic polynomial is squarefree with
    /// rational roots and at most one further irreducible factor of degree
    /// at most 3; otherwise the candidate set is not finite or not computed.
    fn invariant_subspaces(&self, c: &Matrix<Rational>) -> Result<Vec<Subspace<Rational>>> {
        let f = Rationals;
        let d = c.rows();
        let chi = c.charpoly(&f)?;
        let roots = rational_roots(&chi);
        if roots.iter().any(|(_, m)| *m > 1) {
            return Err(Error::Budget("composite map has a repeated rational eigenvalue".into()));
        }
        let mut residual = chi.clone();
        let mut blocks: Vec<Subspace<Rational>> = Vec::new();
        for (lambda, _) in &roots {
            let lin = Poly::new(&f, vec![-lambda.clone(), Rational::from_integer(1.into())]);
            residual = residual.divrem(&f, &lin).0;
            let shifted = c.sub(&f, &Matrix::identity(&f, d).scale(&f, lambda))?;
            blocks.push(Subspace::span(&f, d, &shifted.kernel(&f)));
        }
        match residual.degree() {
            Some(0) => {}
            Some(k) if k <= 3 => {
                // no rational roots and degree <= 3, hence irreducible
                let r = eval_matrix_poly(&f, &residual, c);
                blocks.push(Subspace::span(&f, d, &r.kernel(&f)));
            }
            _ => {
                return Err(Error::Budget(format!(
                    "composite map has an irrational factor of degree {:?}; candidates not enumerated over Q",
                    residual.degree()
                )))
            }
        }
        let b = blocks.len();
        let mut out = Vec::new();
        for mask in 1..(1u64 << b) - 1 {
            let vecs: Vec<Vec<Rational>> = (0..b)
                .filter(|i| mask >> i & 1 == 1)
                .flat_map(|i| blocks[i].basis().to_vec())
                .collect();
            out.push(Subspace::span(&f, d, &vecs));
        }
        Ok(out)
    }

    fn proper_subspaces(&self, _n: usize) -> Result<Vec<Subspace<Rational>>> {
        Err(Error::Budget("subspaces of Q^n cannot be enumerated".into()))
    }
}

fn eval_matrix_poly<F: Field>(f: &F, p: &Poly<F::Elem>, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let n = m.rows();
    p.coeffs().iter().rev().fold(Matrix::zeros(f, n, n), |acc, c| {
        acc.mul(f, m).unwrap().add(f, &Matrix::identity(f, n).scale(f, c)).unwrap()
    })
}

/// Lagrangian subspaces `F_1..F_r` of a standard symplectic space.
#[derive(Debug, Clone)]
pub struct LagrangianTuple<F: Field> {
    pub space: SymplecticSpace<F>,
    pub subspaces: Vec<Subspace<F::Elem>>,
}

impl<F: Field> LagrangianTuple<F> {
    pub fn new(space: SymplecticSpace<F>, subspaces: Vec<Subspace<F::Elem>>) -> Result<Self> {
        for (j, s) in subspaces.iter().enumerate() {
            if !space.is_lagrangian(s) {
                return Err(Error::domain(format!("F_{} is not Lagrangian", j + 1)));
            }
        }
        Ok(LagrangianTuple { space, subspaces })
    }

    pub fn from_bases(space: SymplecticSpace<F>, bases: &[Vec<Vec<F::Elem>>]) -> Result<Self> {
        let n = space.dim();
        for (j, b) in bases.iter().enumerate() {
            if b.iter().any(|v| v.len() != n) {
                return Err(Error::domain(format!("F_{} has vectors of the wrong length", j + 1)));
            }
        }
        let subs = bases.iter().map(|b| Subspace::span(&space.field, n, b)).collect();
        Self::new(space, subs)
    }

    /// `dim(F_j ∩ W) >= dim(W) / 2` for every `j`, `W` proper and nonzero.
    pub fn is_bad(&self, w: &Subspace<F::Elem>) -> bool {
        let f = &self.space.field;
        w.dim() > 0
            && w.dim() < self.space.dim()
            && self.subspaces.iter().all(|fj| 2 * fj.intersection_dim(f, w) >= w.dim())
    }

    fn pairwise_transverse(&self, k: usize) -> bool {
        let f = &self.space.field;
        (0..k).all(|i| (i + 1..k).all(|j| self.subspaces[i].intersection_dim(f, &self.subspaces[j]) == 0))
    }

    /// The `F_j` and their nonzero pairwise intersections.
    fn obvious_candidates(&self) -> Vec<Subspace<F::Elem>> {
        let f = &self.space.field;
        let mut out: Vec<Subspace<F::Elem>> = self.subspaces.clone();
        for i in 0..self.subspaces.len() {
            for j in i + 1..self.subspaces.len() {
                let x = self.subspaces[i].intersection(f, &self.subspaces[j]);
                if x.dim() > 0 {
                    out.push(x);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMethod {
    Structured,
    Candidates,
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome<T> {
    pub witness: Option<Subspace<T>>,
    pub method: SearchMethod,
    pub candidates_tested: usize,
}

/// Looks for a proper nonzero `W` with `dim(F_j ∩ W) >= dim(W)/2` for all `j`.
///
/// With `F_1..F_4` pairwise transverse any such `W` splits as `U ⊕ Φ_3(U)`
/// where `U = W ∩ F_1` is stable under `Φ_4^{-1} Φ_3`, `Φ_k : F_1 -> F_2`
/// being the graph map of `F_k` for the decomposition `V = F_1 ⊕ F_2`; only
/// those candidates are tested. Otherwise the obvious candidates are tried
/// and then, where the field allows, every proper subspace.
pub fn bad_lagrangian_search<F: LagrangianField>(t: &LagrangianTuple<F>) -> Result<SearchOutcome<F::Elem>> {
    let f = &t.space.field;
    let n = t.space.dim();
    let d = t.space.d;
    if t.subspaces.len() < 4 || !t.pairwise_transverse(4) {
        let cands = t.obvious_candidates();
        let tested = cands.len();
        if let Some(w) = cands.into_iter().find(|w| t.is_bad(w)) {
            return Ok(SearchOutcome { witness: Some(w), method: SearchMethod::Candidates, candidates_tested: tested });
        }
        let all = f.proper_subspaces(n)?;
        let tested = tested + all.len();
        let witness = all.into_iter().find(|w| t.is_bad(w));
        return Ok(SearchOutcome { witness, method: SearchMethod::Exhaustive, candidates_tested: tested });
    }
    let b1 = t.subspaces[0].basis().to_vec();
    let b2 = t.subspaces[1].basis().to_vec();
    let mut cols = b1.clone();
    cols.extend(b2.iter().cloned());
    let frame = Matrix::from_cols(&cols)?;
    // coordinates of F_k's basis in the frame, split into F_1 and F_2 parts
    let split = |k: usize| -> Result<(Matrix<F::Elem>, Matrix<F::Elem>)> {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for y in t.subspaces[k].basis() {
            let c = frame.solve(f, y).ok_or_else(|| Error::Internal("F_1 + F_2 does not span".into()))?;
            a.push(c[..d].to_vec());
            b.push(c[d..].to_vec());
        }
        Ok((Matrix::from_cols(&a)?, Matrix::from_cols(&b)?))
    };
    let graph_map = |k: usize| -> Result<Matrix<F::Elem>> {
        let (a, b) = split(k)?;
        let ai = a.inverse(f).ok_or_else(|| Error::Internal(format!("F_{} not transverse to F_2", k + 1)))?;
        b.mul(f, &ai)
    };
    let phi3 = graph_map(2)?;
    let phi4 = graph_map(3)?;
    let phi4_inv = phi4.inverse(f).ok_or_else(|| Error::Internal("F_4 not transverse to F_1".into()))?;
    let composite = phi4_inv.mul(f, &phi3)?;
    let mut tested = 0;
    for u in f.invariant_subspaces(&composite)? {
        tested += 1;
        let mut vecs: Vec<Vec<F::Elem>> = Vec::new();
        for c in u.basis() {
            vecs.push(combine(f, &b1, c, n));
            vecs.push(combine(f, &b2, &phi3.mul_vec(f, c), n));
        }
        let w = Subspace::span(f, n, &vecs);
        if t.is_bad(&w) {
            return Ok(SearchOutcome { witness: Some(w), method: SearchMethod::Structured, candidates_tested: tested });
        }
    }
    Ok(SearchOutcome { witness: None, method: SearchMethod::Structured, candidates_tested: tested })
}

/// Exhaustive scan of every proper nonzero subspace, after trying the `F_j`
/// themselves. Limited to fields of order at most 5 and `2d <= 4`.
pub fn bad_lagrangian_bruteforce(t: &LagrangianTuple<FiniteField>) -> Result<Option<Subspace<Gf>>> {
    let f = &t.space.field;
    if f.order() > 5 || t.space.dim() > 4 {
        return Err(Error::size(format!(
            "brute-force search limited to field order <= 5 and dimension <= 4 (got {}, {})",
            f.order(),
            t.space.dim()
        )));
    }
    if let Some(w) = t.subspaces.iter().find(|w| t.is_bad(w)) {
        return Ok(Some(w.clone()));
    }
    for k in 1..t.space.dim() {
        if let Some(w) = enumerate_subspaces(t.space.dim(), k, f)?.find(|w| t.is_bad(w)) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Every Lagrangian subspace of a small standard symplectic space.
pub fn lagrangians(space: &SymplecticSpace<FiniteField>) -> Result<Vec<Subspace<Gf>>> {
    Ok(enumerate_subspaces(space.dim(), space.d, &space.field)?
        .filter(|s| space.is_isotropic(s))
        .collect())
}

/// `F_1 = <e_i>`, `F_2 = <e_i'>`, `F_3 = <e_i + e_i'>`, `F_4 = <e_i + 2i e_i'>`
/// (1-based `i`), followed by the graph of each symmetric matrix in `extra`
/// (`<e_i + sum_j S_ij e_j'>`).
pub fn standard_tuple<F: Field>(space: SymplecticSpace<F>, extra: &[Matrix<F::Elem>]) -> Result<LagrangianTuple<F>> {
    let d = space.d;
    let f = space.field.clone();
    let graph = |s: &dyn Fn(usize, usize) -> F::Elem| -> Vec<Vec<F::Elem>> {
        (0..d)
            .map(|i| {
                let mut v = space.basis_vector(i, false);
                for j in 0..d {
                    v[d + j] = s(i, j);
                }
                v
            })
            .collect()
    };
    let mut bases = vec![
        (0..d).map(|i| space.basis_vector(i, false)).collect::<Vec<_>>(),
        (0..d).map(|i| space.basis_vector(i, true)).collect(),
        graph(&|i, j| if i == j { f.one() } else { f.zero() }),
        graph(&|i, j| if i == j { f.from_int(2 * (i as i64 + 1)) } else { f.zero() }),
    ];
    for s in extra {
        if s.rows() != d || s.cols() != d || *s != s.transpose() {
            return Err(Error::domain("extra Lagrangians must be graphs of symmetric d x d matrices"));
        }
        bases.push(graph(&|i, j| s.get(i, j).clone()));
    }
    LagrangianTuple::from_bases(space, &bases)
}

/// Symmetric `d x d` matrix `S_ij = ((i+1)(j+1) + i + j) mod 7 + 1` (0-based)
/// whose graph completes [`standard_tuple`] to five Lagrangians with no bad `W`
/// for `d = 2, 3`.
pub fn fifth_graph_matrix<F: Field>(f: &F, d: usize) -> Matrix<F::Elem> {
    let rows = (0..d).map(|i| (0..d).map(|j| ((i + 1) * (j + 1) + i + j) as i64 % 7 + 1).collect()).collect::<Vec<_>>();
    Matrix::from_ints(f, &rows).expect("square")
}
