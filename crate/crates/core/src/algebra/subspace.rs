//! Subspaces stored by their reduced row echelon basis, and exhaustive
//! enumeration of subspaces of small vector spaces over finite fields.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::{Field, FiniteField, Gf};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Largest field order accepted by [`enumerate_subspaces`].
pub const MAX_ENUM_FIELD_ORDER: u64 = 9;
/// Largest ambient dimension accepted by [`enumerate_subspaces`].
pub const MAX_ENUM_DIM: usize = 6;

/// A subspace of `K^n`, canonically represented: two subspaces are equal
/// exactly when their bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace<T> {
    ambient: usize,
    basis: Vec<Vec<T>>,
}

impl<T: Clone> Subspace<T> {
    pub fn span<F: Field<Elem = T>>(f: &F, ambient: usize, vectors: &[Vec<T>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(vectors.to_vec()).expect("vectors share a length");
        assert_eq!(m.cols(), ambient, "vector length must equal the ambient dimension");
        let (r, piv) = m.rref(f);
        Subspace { ambient, basis: (0..piv.len()).map(|i| r.row(i).to_vec()).collect() }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full<F: Field<Elem = T>>(f: &F, ambient: usize) -> Self {
        Self::span(f, ambient, &Matrix::identity(f, ambient).row_vecs())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn basis_matrix<F: Field<Elem = T>>(&self, f: &F) -> Matrix<T> {
        if self.basis.is_empty() {
            return Matrix::zeros(f, 0, self.ambient);
        }
        Matrix::from_rows(self.basis.clone()).unwrap()
    }

    pub fn sum<F: Field<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        Self::span(f, self.ambient, &v)
    }

    pub fn intersection_dim<F: Field<Elem = T>>(&self, f: &F, o: &Self) -> usize {
        self.dim() + o.dim() - self.sum(f, o).dim()
    }

    pub fn intersection<F: Field<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        // x = sum a_i u_i = sum b_j w_j  <=>  (a, -b) in ker [U^T | W^T]
        if self.dim() == 0 || o.dim() == 0 {
            return Self::zero(self.ambient);
        }
        let mut cols = self.basis.clone();
        cols.extend(o.basis.iter().map(|w| w.iter().map(|x| f.neg(x)).collect()));
        let m = Matrix::from_cols(&cols).unwrap();
        let vecs: Vec<Vec<T>> = m
            .kernel(f)
            .into_iter()
            .map(|k| combine(f, &self.basis, &k[..self.dim()], self.ambient))
            .collect();
        Self::span(f, self.ambient, &vecs)
    }

    pub fn contains<F: Field<Elem = T>>(&self, f: &F, v: &[T]) -> bool {
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        Self::span(f, self.ambient, &vs).dim() == self.dim()
    }

    pub fn is_subspace_of<F: Field<Elem = T>>(&self, f: &F, o: &Self) -> bool {
        self.basis.iter().all(|v| o.contains(f, v))
    }

    /// Image under a square matrix acting on column vectors.
    pub fn image<F: Field<Elem = T>>(&self, f: &F, m: &Matrix<T>) -> Self {
        let vs: Vec<Vec<T>> = self.basis.iter().map(|v| m.mul_vec(f, v)).collect();
        Self::span(f, self.ambient, &vs)
    }

    pub fn is_stable<F: Field<Elem = T>>(&self, f: &F, m: &Matrix<T>) -> bool {
        self.basis.iter().all(|v| self.contains(f, &m.mul_vec(f, v)))
    }

    /// Orthogonal complement `{x : v^T G x = 0 for all v}` for a Gram matrix `G`.
    pub fn perp<F: Field<Elem = T>>(&self, f: &F, gram: &Matrix<T>) -> Self {
        if self.dim() == 0 {
            return Self::full(f, self.ambient);
        }
        let rows = self.basis_matrix(f).mul(f, gram).unwrap();
        Self::span(f, self.ambient, &rows.kernel(f))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates<F: Field<Elem = T>>(&self, f: &F, v: &[T]) -> Option<Vec<T>> {
        if self.dim() == 0 {
            return v.iter().all(|x| f.is_zero(x)).then(Vec::new);
        }
        let m = Matrix::from_cols(&self.basis).unwrap();
        m.solve(f, v)
    }
}

/// `sum coeffs[i] * vectors[i]`.
pub fn combine<F: Field>(f: &F, vectors: &[Vec<F::Elem>], coeffs: &[F::Elem], n: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); n];
    for (v, c) in vectors.iter().zip(coeffs) {
        if f.is_zero(c) {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = f.add(o, &f.mul(c, x));
        }
    }
    out
}

/// Gaussian binomial coefficient `[n choose k]_q`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// Iterator over all `k`-dimensional subspaces of `F^n`, each yielded once
/// as its reduced row echelon basis.
pub fn enumerate_subspaces(
    n: usize,
    k: usize,
    field: &FiniteField,
) -> Result<impl Iterator<Item = Subspace<Gf>> + '_> {
    if k > n {
        return Err(Error::domain(format!("subspace dimension {k} exceeds ambient {n}")));
    }
    if field.order() > MAX_ENUM_FIELD_ORDER || n > MAX_ENUM_DIM {
        return Err(Error::size(format!(
            "subspace enumeration limited to field order <= {MAX_ENUM_FIELD_ORDER} and dimension <= {MAX_ENUM_DIM} (got order {}, dimension {n})",
            field.order()
        )));
    }
    Ok(PivotSets::new(n, k).flat_map(move |pivots| fill_free_entries(field, n, pivots)))
}

fn fill_free_entries(
    field: &FiniteField,
    n: usize,
    pivots: Vec<usize>,
) -> impl Iterator<Item = Subspace<Gf>> + '_ {
    // free slots: (row i, column c) with c > pivot_i and c not a pivot
    let slots: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| (p + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
        .collect();
    let q = field.order();
    let total = q.pow(slots.len() as u32);
    (0..total).map(move |mut code| {
        let mut basis = vec![vec![Gf(0); n]; pivots.len()];
        for (i, &p) in pivots.iter().enumerate() {
            basis[i][p] = Gf(1);
        }
        for &(i, c) in &slots {
            basis[i][c] = Gf(code % q);
            code /= q;
        }
        Subspace { ambient: n, basis }
    })
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
struct PivotSets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl PivotSets {
    fn new(n: usize, k: usize) -> Self {
        PivotSets { n, current: Some((0..k).collect()) }
    }
}

impl Iterator for PivotSets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut nxt = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if nxt[i] < self.n - k + i {
                nxt[i] += 1;
                for j in i + 1..k {
                    nxt[j] = nxt[j - 1] + 1;
                }
                self.current = Some(nxt);
                break;
            }
        }
        Some(out)
    }
}
