//! Frobenius-semilinear automorphisms of `F_{p^e}^d` and the dimension of
//! their centralizers.

use serde::Serialize;

use crate::algebra::field::{Field, FiniteField, Gf};
use crate::algebra::matrix::Matrix;
use crate::error::{Error, Result};
use crate::rng::{self, Rng};

/// `phi(v) = M sigma(v)` with `sigma` the entrywise Frobenius.
#[derive(Debug, Clone)]
pub struct SemilinearModule {
    field: FiniteField,
    m: Matrix<Gf>,
}

impl SemilinearModule {
    pub fn new(field: FiniteField, m: Matrix<Gf>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::domain("semilinear matrix must be square"));
        }
        if m.inverse(&field).is_none() {
            return Err(Error::domain("semilinear map must be bijective"));
        }
        Ok(SemilinearModule { field, m })
    }

    /// Uniformly random invertible `M` of size `d`.
    pub fn random(field: FiniteField, d: usize, rng: &mut Rng) -> Self {
        loop {
            let data = (0..d * d).map(|_| field.random(rng)).collect();
            let m = Matrix::from_vec(d, d, data).unwrap();
            if m.inverse(&field).is_some() {
                return SemilinearModule { field, m };
            }
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn matrix(&self) -> &Matrix<Gf> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    /// Conjugate module `g^{-1} phi g`, with matrix `g^{-1} M sigma(g)`.
    pub fn conjugate(&self, g: &Matrix<Gf>) -> Result<Self> {
        let f = &self.field;
        let gi = g.inverse(f).ok_or_else(|| Error::domain("conjugating matrix must be invertible"))?;
        let m = gi.mul(f, &self.m)?.mul(f, &frobenius_matrix(f, g))?;
        Ok(SemilinearModule { field: f.clone(), m })
    }

    pub fn apply(&self, v: &[Gf]) -> Vec<Gf> {
        let s: Vec<Gf> = v.iter().map(|x| self.field.frobenius(x)).collect();
        self.m.mul_vec(&self.field, &s)
    }
}

pub fn frobenius_matrix(f: &FiniteField, m: &Matrix<Gf>) -> Matrix<Gf> {
    m.map(|x| f.frobenius(x))
}

/// `M sigma(M) ... sigma^{e-1}(M)`, the matrix of the linear map `phi^e`.
pub fn phi_power_e(module: &SemilinearModule) -> Matrix<Gf> {
    let f = &module.field;
    let mut acc = module.m.clone();
    let mut twisted = module.m.clone();
    for _ in 1..f.degree() {
        twisted = frobenius_matrix(f, &twisted);
        acc = acc.mul(f, &twisted).unwrap();
    }
    acc
}

/// Basis over `F_p` of `{f : f M = M sigma(f)}`, each element a `d x d` matrix
/// over `F_{p^e}`.
pub fn centralizer_basis_f(module: &SemilinearModule) -> Vec<Matrix<Gf>> {
    let f = &module.field;
    let prime = FiniteField::prime(f.characteristic()).unwrap();
    let d = module.dim();
    let e = f.degree() as usize;
    let unknowns = e * d * d;
    // column k: coordinates of L(b_k) for the F_p-basis b_k = t^c E_{ij}
    let mut cols = Vec::with_capacity(unknowns);
    for i in 0..d {
        for j in 0..d {
            for c in 0..e {
                let b = basis_matrix(f, d, i, j, c);
                let img = module_commutator(module, &b);
                cols.push(flatten_coords(f, &img));
            }
        }
    }
    let system = Matrix::from_cols(&cols).unwrap();
    system
        .kernel(&prime)
        .into_iter()
        .map(|v| unflatten(f, d, &v.iter().map(|x| x.0).collect::<Vec<_>>()))
        .collect()
}

fn basis_matrix(f: &FiniteField, d: usize, i: usize, j: usize, c: usize) -> Matrix<Gf> {
    let mut coords = vec![0u64; f.degree() as usize];
    coords[c] = 1;
    let mut b = Matrix::zeros(f, d, d);
    b.set(i, j, f.from_coords(&coords));
    b
}

/// `f M - M sigma(f)`.
fn module_commutator(module: &SemilinearModule, fm: &Matrix<Gf>) -> Matrix<Gf> {
    let f = &module.field;
    let lhs = fm.mul(f, &module.m).unwrap();
    let rhs = module.m.mul(f, &frobenius_matrix(f, fm)).unwrap();
    lhs.sub(f, &rhs).unwrap()
}

fn flatten_coords(f: &FiniteField, m: &Matrix<Gf>) -> Vec<Gf> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.extend(f.coords(m.get(i, j)).into_iter().map(Gf));
        }
    }
    out
}

fn unflatten(f: &FiniteField, d: usize, v: &[u64]) -> Matrix<Gf> {
    let e = f.degree() as usize;
    let data = v.chunks(e).map(|c| f.from_coords(c)).collect();
    Matrix::from_vec(d, d, data).unwrap()
}

/// `dim_{F_p}` of the centralizer of `phi`.
pub fn centralizer_dim_f(module: &SemilinearModule) -> usize {
    centralizer_basis_f(module).len()
}

/// `dim_E` of the centralizer of the linear map with matrix `a`.
pub fn centralizer_dim_e(field: &FiniteField, a: &Matrix<Gf>) -> usize {
    let d = a.rows();
    let mut cols = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut b = Matrix::zeros(field, d, d);
            b.set(i, j, field.one());
            let img = b.mul(field, a).unwrap().sub(field, &a.mul(field, &b).unwrap()).unwrap();
            cols.push((0..d).flat_map(|r| img.row(r).to_vec()).collect::<Vec<_>>());
        }
    }
    d * d - Matrix::from_cols(&cols).unwrap().rank(field)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralizerReport {
    pub p: u64,
    pub e: u32,
    pub d: usize,
    pub dim_f: usize,
    pub dim_e: usize,
}

/// Checks `dim_F Z(phi) = dim_E Z(phi^e) <= d^2`.
pub fn verify_centralizer_lemma(module: &SemilinearModule) -> Result<CentralizerReport> {
    let f = &module.field;
    let d = module.dim();
    let dim_f = centralizer_dim_f(module);
    let dim_e = centralizer_dim_e(f, &phi_power_e(module));
    let report = CentralizerReport { p: f.characteristic(), e: f.degree(), d, dim_f, dim_e };
    if dim_f != dim_e || dim_f > d * d {
        return Err(Error::LemmaViolation(format!(
            "centralizer dimensions differ: dim_F = {dim_f}, dim_E = {dim_e}, d^2 = {}",
            d * d
        )));
    }
    Ok(report)
}

/// One seeded trial: a random module over `F_{p^e}^d` from stream `index`.
pub fn centralizer_trial(p: u64, e: u32, d: usize, seed: u64, index: u64) -> Result<CentralizerReport> {
    let field = FiniteField::new(p, e)?;
    if d == 0 {
        return Err(Error::domain("dimension must be >= 1"));
    }
    let mut r = rng::split(seed, index);
    verify_centralizer_lemma(&SemilinearModule::random(field, d, &mut r))
}
