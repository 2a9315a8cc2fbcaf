//! Dense matrices over any [`Field`], with exact Gaussian elimination.
//!
//! Pivoting always takes the first nonzero entry in the column; no
//! tolerance is involved anywhere.

use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::domain(format!(
                "expected {rows}x{cols} = {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds from row vectors; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::domain("ragged rows"));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Columns given as vectors become the columns of the result.
    pub fn from_cols(cols: &[Vec<T>]) -> Result<Self> {
        Ok(Self::from_rows(cols.to_vec())?.transpose())
    }
}

impl<T: Clone> Matrix<T> {
    pub fn zeros<F: Field<Elem = T>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = T>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn from_ints<F: Field<Elem = T>>(f: &F, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect(),
        )
    }

    pub fn is_zero<F: Field<Elem = T>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    pub fn mul<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec<F: Field<Elem = T>>(&self, f: &F, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn add<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn scale<F: Field<Elem = T>>(&self, f: &F, s: &T) -> Self {
        self.map(|x| f.mul(s, x))
    }

    fn zip_with(&self, other: &Self, mut op: impl FnMut(&T, &T) -> T) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::domain("shape mismatch"));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn pow<F: Field<Elem = T>>(&self, f: &F, mut exp: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::domain("power of a non-square matrix"));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(f, self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(f, &base)?;
            }
            base = base.mul(f, &base)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref<F: Field<Elem = T>>(&self, f: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank<F: Field<Elem = T>>(&self, f: &F) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the right null space `{v : M v = 0}`, one vector per free
    /// column, in increasing order of the free column.
    pub fn kernel<F: Field<Elem = T>>(&self, f: &F) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, fc));
                }
                v
            })
            .collect()
    }

    pub fn inverse<F: Field<Elem = T>>(&self, f: &F) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Self::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    pub fn det<F: Field<Elem = T>>(&self, f: &F) -> Result<T> {
        if !self.is_square() {
            return Err(Error::domain("determinant of a non-square matrix"));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).expect("pivot is nonzero");
            for i in c + 1..n {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Solves `M x = b`, returning one solution if any exists.
    pub fn solve<F: Field<Elem = T>>(&self, f: &F, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Characteristic polynomial `det(xI - M)` via reduction to upper
    /// Hessenberg form.
    pub fn charpoly<F: Field<Elem = T>>(&self, f: &F) -> Result<Poly<T>> {
        if !self.is_square() {
            return Err(Error::domain("characteristic polynomial of a non-square matrix"));
        }
        let n = self.rows;
        let mut h = self.clone();
        // similarity transforms to Hessenberg form
        for c in 0..n.saturating_sub(2) {
            let Some(pr) = (c + 1..n).find(|&i| !f.is_zero(h.get(i, c))) else {
                continue;
            };
            if pr != c + 1 {
                h.swap_rows(pr, c + 1);
                for i in 0..n {
                    h.data.swap(i * n + pr, i * n + c + 1);
                }
            }
            let inv = f.inv(h.get(c + 1, c)).expect("pivot is nonzero");
            for i in c + 2..n {
                if f.is_zero(h.get(i, c)) {
                    continue;
                }
                let factor = f.mul(h.get(i, c), &inv);
                // row_i -= factor * row_{c+1}
                for j in 0..n {
                    let v = f.sub(h.get(i, j), &f.mul(&factor, h.get(c + 1, j)));
                    h.set(i, j, v);
                }
                // col_{c+1} += factor * col_i
                for k in 0..n {
                    let v = f.add(h.get(k, c + 1), &f.mul(&factor, h.get(k, i)));
                    h.set(k, c + 1, v);
                }
            }
        }
        // p_k = charpoly of leading k x k block
        let x = Poly::monomial(f, 1);
        let mut ps: Vec<Poly<T>> = vec![Poly::constant(f, f.one())];
        for k in 0..n {
            let mut pk = x
                .sub(f, &Poly::constant(f, h.get(k, k).clone()))
                .mul(f, &ps[k]);
            let mut prod = f.one();
            for i in (0..k).rev() {
                prod = f.mul(&prod, h.get(i + 1, i));
                let coeff = f.mul(&prod, h.get(i, k));
                pk = pk.sub(f, &ps[i].scale(f, &coeff));
            }
            ps.push(pk);
        }
        Ok(ps.pop().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{FiniteField, Rationals};
    use crate::algebra::rational::int;
    use proptest::prelude::*;

    fn q(rows: &[Vec<i64>]) -> Matrix<crate::algebra::Rational> {
        Matrix::from_ints(&Rationals, rows).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let f = Rationals;
        assert!(Matrix::identity(&f, 3).kernel(&f).is_empty());
        assert_eq!(Matrix::zeros(&f, 2, 3).kernel(&f).len(), 3);
        let k = q(&[vec![1, 2], vec![2, 4]]).kernel(&f);
        assert_eq!(k, vec![vec![int(-2), int(1)]]);
    }

    #[test]
    fn inverse_det_solve() {
        let f = Rationals;
        let m = q(&[vec![2, 1], vec![7, 4]]);
        assert_eq!(m.det(&f).unwrap(), int(1));
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv).unwrap(), Matrix::identity(&f, 2));
        assert_eq!(m.solve(&f, &[int(3), int(11)]).unwrap(), vec![int(1), int(1)]);
        assert!(q(&[vec![1, 2], vec![2, 4]]).inverse(&f).is_none());
        assert!(q(&[vec![1, 2], vec![2, 4]]).solve(&f, &[int(1), int(0)]).is_none());
    }

    #[test]
    fn charpoly_small() {
        let f = Rationals;
        // x^2 - 5x - 2 for [[1,2],[3,4]]
        let cp = q(&[vec![1, 2], vec![3, 4]]).charpoly(&f).unwrap();
        assert_eq!(cp.coeffs(), &[int(-2), int(-5), int(1)]);
        let cp = q(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).charpoly(&f).unwrap();
        assert_eq!(cp.coeffs(), &[int(-1), int(0), int(0), int(1)]);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..4, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_over_q(rows in small_matrix()) {
            let f = Rationals;
            let m = q(&rows);
            let k = m.kernel(&f);
            prop_assert_eq!(m.rank(&f) + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(&f, v).iter().all(|x| f.is_zero(x)));
            }
        }

        #[test]
        fn rank_nullity_over_f5(rows in small_matrix()) {
            let f = FiniteField::prime(5).unwrap();
            let m = Matrix::from_ints(&f, &rows).unwrap();
            let k = m.kernel(&f);
            prop_assert_eq!(m.rank(&f) + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(&f, v).iter().all(|x| f.is_zero(x)));
            }
        }

        #[test]
        fn charpoly_matches_det_at_points(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 4), x in -5i64..6) {
            let f = Rationals;
            let m = q(&rows);
            let cp = m.charpoly(&f).unwrap();
            let shifted = Matrix::identity(&f, 4).scale(&f, &int(x)).sub(&f, &m).unwrap();
            prop_assert_eq!(cp.eval(&f, &int(x)), shifted.det(&f).unwrap());
        }
    }
}
