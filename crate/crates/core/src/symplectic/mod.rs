//! Standard symplectic spaces, transvections, generation certificates and
//! the search for subspaces meeting many Lagrangians in half their dimension.

mod lagrangian;

pub use lagrangian::{
    bad_lagrangian_bruteforce, bad_lagrangian_search, fifth_graph_matrix, lagrangians, standard_tuple, LagrangianField, LagrangianTuple,
    SearchMethod, SearchOutcome,
};

use serde::Serialize;

use crate::algebra::field::Field;
use crate::algebra::matrix::Matrix;
use crate::algebra::subspace::Subspace;
use crate::error::{Error, Result};

/// `K^{2d}` with basis `e_1..e_d, e_1'..e_d'` and `<e_i, e_i'> = 1`.
#[derive(Debug, Clone)]
pub struct SymplecticSpace<F: Field> {
    pub field: F,
    pub d: usize,
}

impl<F: Field> SymplecticSpace<F> {
    pub fn new(field: F, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("symplectic half-dimension must be >= 1"));
        }
        Ok(SymplecticSpace { field, d })
    }

    pub fn dim(&self) -> usize {
        2 * self.d
    }

    pub fn gram(&self) -> Matrix<F::Elem> {
        let f = &self.field;
        let mut g = Matrix::zeros(f, self.dim(), self.dim());
        for i in 0..self.d {
            g.set(i, self.d + i, f.one());
            g.set(self.d + i, i, f.neg(&f.one()));
        }
        g
    }

    pub fn pairing(&self, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut s = f.zero();
        for i in 0..self.d {
            s = f.add(&s, &f.mul(&x[i], &y[self.d + i]));
            s = f.sub(&s, &f.mul(&x[self.d + i], &y[i]));
        }
        s
    }

    /// Basis vector `e_i` (`primed = false`) or `e_i'`, 0-based.
    pub fn basis_vector(&self, i: usize, primed: bool) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[if primed { self.d + i } else { i }] = self.field.one();
        v
    }

    pub fn is_isotropic(&self, s: &Subspace<F::Elem>) -> bool {
        let b = s.basis();
        b.iter().all(|x| b.iter().all(|y| self.field.is_zero(&self.pairing(x, y))))
    }

    pub fn is_lagrangian(&self, s: &Subspace<F::Elem>) -> bool {
        s.ambient() == self.dim() && s.dim() == self.d && self.is_isotropic(s)
    }

    /// `g^T J g = J`.
    pub fn preserves_form(&self, g: &Matrix<F::Elem>) -> bool {
        let f = &self.field;
        let j = self.gram();
        g.transpose().mul(f, &j).and_then(|m| m.mul(f, g)).map(|m| m == j).unwrap_or(false)
    }
}

/// `x -> x + r <v, x> v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Transvection<T> {
    pub center: Vec<T>,
    pub scale: T,
}

impl<T: Clone> Transvection<T> {
    pub fn apply<F: Field<Elem = T>>(&self, space: &SymplecticSpace<F>, x: &[T]) -> Vec<T> {
        let f = &space.field;
        let c = f.mul(&self.scale, &space.pairing(&self.center, x));
        x.iter().zip(&self.center).map(|(xi, vi)| f.add(xi, &f.mul(&c, vi))).collect()
    }

    pub fn matrix<F: Field<Elem = T>>(&self, space: &SymplecticSpace<F>) -> Matrix<T> {
        let cols: Vec<Vec<T>> = (0..space.dim())
            .map(|j| {
                let mut e = vec![space.field.zero(); space.dim()];
                e[j] = space.field.one();
                self.apply(space, &e)
            })
            .collect();
        Matrix::from_cols(&cols).unwrap()
    }
}

pub fn apply_transvection<F: Field>(space: &SymplecticSpace<F>, t: &Transvection<F::Elem>, x: &[F::Elem]) -> Vec<F::Elem> {
    t.apply(space, x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphCertificate {
    pub connected: bool,
    pub span_dim: usize,
    pub ambient_dim: usize,
    /// Vertex indices of each connected component, in order of first vertex.
    pub components: Vec<Vec<usize>>,
}

impl GraphCertificate {
    /// Connected with full span: the transvections generate a group whose
    /// Zariski closure is all of `Sp(V)`.
    pub fn is_full(&self) -> bool {
        self.connected && self.span_dim == self.ambient_dim
    }
}

/// Pairing graph on `vectors` (edge iff the pairing is nonzero).
pub fn transvection_graph_certificate<F: Field>(space: &SymplecticSpace<F>, vectors: &[Vec<F::Elem>]) -> Result<GraphCertificate> {
    let f = &space.field;
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != space.dim() {
            return Err(Error::domain(format!("vector {i} has length {}, expected {}", v.len(), space.dim())));
        }
        if v.iter().all(|x| f.is_zero(x)) {
            return Err(Error::domain(format!("vector {i} is zero")));
        }
    }
    let n = vectors.len();
    let mut comp = vec![usize::MAX; n];
    let mut components = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut k = 0;
        while k < members.len() {
            let u = members[k];
            for w in 0..n {
                if comp[w] == usize::MAX && !f.is_zero(&space.pairing(&vectors[u], &vectors[w])) {
                    comp[w] = id;
                    members.push(w);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        components.push(members);
    }
    let span_dim = Subspace::span(f, space.dim(), vectors).dim();
    Ok(GraphCertificate { connected: components.len() <= 1, span_dim, ambient_dim: space.dim(), components })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub i: usize,
    pub j: usize,
    pub fixed_dims: (usize, usize),
    pub witnessed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoursatReport {
    pub factors: usize,
    pub factors_certified: Vec<bool>,
    pub pairs: Vec<PairWitness>,
    /// Unordered pairs `i < j` with no witness among the inputs.
    pub missing_pairs: Vec<(usize, usize)>,
    pub all_hypotheses_witnessed: bool,
}

/// Dimension of the fixed space of a unipotent element; domain error if
/// `(u - 1)^{2d} != 0`.
pub fn unipotent_fixed_dim<F: Field>(space: &SymplecticSpace<F>, u: &Matrix<F::Elem>) -> Result<usize> {
    let f = &space.field;
    if u.rows() != space.dim() || !u.is_square() {
        return Err(Error::domain("witness component has the wrong size"));
    }
    let n = u.sub(f, &Matrix::identity(f, space.dim()))?;
    if !n.pow(f, space.dim() as u64)?.is_zero(f) {
        return Err(Error::domain("witness component is not unipotent"));
    }
    Ok(space.dim() - n.rank(f))
}

/// Checks the hypotheses of the algebraic Goursat criterion: each factor
/// has a full transvection certificate, and for each pair of factors some
/// witness has unipotent components with fixed spaces of different
/// dimensions there.
pub fn goursat_witness_check<F: Field>(
    space: &SymplecticSpace<F>,
    per_factor_certs: &[GraphCertificate],
    pair_witnesses: &[(usize, usize, Vec<Matrix<F::Elem>>)],
) -> Result<GoursatReport> {
    let factors = per_factor_certs.len();
    let mut pairs = Vec::new();
    for (i, j, g) in pair_witnesses {
        if *i >= factors || *j >= factors || g.len() != factors {
            return Err(Error::domain(format!("witness for ({i},{j}) does not match {factors} factors")));
        }
        let di = unipotent_fixed_dim(space, &g[*i])?;
        let dj = unipotent_fixed_dim(space, &g[*j])?;
        pairs.push(PairWitness { i: *i, j: *j, fixed_dims: (di, dj), witnessed: di != dj });
    }
    let factors_certified: Vec<bool> = per_factor_certs.iter().map(|c| c.is_full()).collect();
    let missing_pairs: Vec<(usize, usize)> = (0..factors)
        .flat_map(|i| (i + 1..factors).map(move |j| (i, j)))
        .filter(|&(i, j)| !pairs.iter().any(|p| p.witnessed && ((p.i, p.j) == (i, j) || (p.i, p.j) == (j, i))))
        .collect();
    let all_hypotheses_witnessed = factors_certified.iter().all(|&c| c) && missing_pairs.is_empty();
    Ok(GoursatReport { factors, factors_certified, pairs, missing_pairs, all_hypotheses_witnessed })
}
