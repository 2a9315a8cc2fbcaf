//! Formal flat sections of a connection on a disk, their p-adic coefficient
//! growth, and polynomial relations among truncated power series.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::field::Rationals;
use crate::algebra::matrix::Matrix;
use crate::algebra::rational::{self, int, is_prime, Rational};
use crate::error::{Error, Result};

/// Power series `c_0 + c_1 z + ... + c_k z^k` modulo `z^{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncatedSeries {
    #[serde(serialize_with = "crate::ser::rats")]
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Pads with zeros or drops terms so the result has order `order`.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `c z^m`.
    pub fn monomial(c: Rational, m: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if m <= order {
            s.coeffs[m] = c;
        }
        s
    }

    pub fn parse(coeffs: &[String], order: usize) -> Result<Self> {
        let c = coeffs.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(c, order))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> Rational {
        self.coeffs.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order)
    }

    /// Sum, at the smaller of the two orders.
    pub fn add(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        Self { coeffs: (0..=k).map(|m| &self.coeffs[m] + &other.coeffs[m]).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Product, at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        let mut out = vec![Rational::zero(); k + 1];
        for (a, x) in self.coeffs[..=k].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs[..=k - a].iter().enumerate() {
                out[a + b] += x * y;
            }
        }
        Self { coeffs: out }
    }

    /// `d/dz`, which loses one order.
    pub fn derivative(&self) -> Self {
        let k = self.order();
        if k == 0 {
            return Self::zero(0);
        }
        Self { coeffs: (1..=k).map(|m| &self.coeffs[m] * int(m as i64)).collect() }
    }
}

/// `nabla v_i = sum_j A_ij v_j dz` with truncated series entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncatedSeriesConnection {
    a: Vec<Vec<TruncatedSeries>>,
    order: usize,
}

impl TruncatedSeriesConnection {
    pub fn new(a: Vec<Vec<TruncatedSeries>>, order: usize) -> Result<Self> {
        let r = a.len();
        if r == 0 || a.iter().any(|row| row.len() != r) {
            return Err(Error::domain("connection matrix must be square and nonempty"));
        }
        let a = a.into_iter().map(|row| row.into_iter().map(|s| s.truncate(order)).collect()).collect();
        Ok(Self { a, order })
    }

    /// Constant connection matrix.
    pub fn constant(m: &[Vec<Rational>], order: usize) -> Result<Self> {
        let a = m
            .iter()
            .map(|row| row.iter().map(|c| TruncatedSeries::constant(c.clone(), order)).collect())
            .collect();
        Self::new(a, order)
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.a[i][j]
    }
}

/// The formal solution of `d f_i = -sum_j A_ji f_j dz` with `f(0) = init`.
pub fn solve_flat_sections(conn: &TruncatedSeriesConnection, init: &[Rational]) -> Result<Vec<TruncatedSeries>> {
    let (r, k) = (conn.rank(), conn.order());
    if k == 0 {
        return Err(Error::domain("order must be at least 1"));
    }
    if init.len() != r {
        return Err(Error::domain(format!("initial condition has length {}, expected {r}", init.len())));
    }
    let mut f: Vec<Vec<Rational>> = init.iter().map(|c| vec![c.clone()]).collect();
    for m in 0..k {
        let scale = Rational::new(1.into(), (m as i64 + 1).into());
        let next: Vec<Rational> = (0..r)
            .map(|i| {
                let mut s = Rational::zero();
                for (j, fj) in f.iter().enumerate() {
                    let aji = conn.entry(j, i).coeffs();
                    for a in 0..=m {
                        if !aji[a].is_zero() && !fj[m - a].is_zero() {
                            s += &aji[a] * &fj[m - a];
                        }
                    }
                }
                -s * &scale
            })
            .collect();
        for (fi, c) in f.iter_mut().zip(next) {
            fi.push(c);
        }
    }
    Ok(f.into_iter().map(|c| TruncatedSeries::new(c, k)).collect())
}

/// `f_i' + sum_j A_ji f_j` to order `k - 1`; zero exactly for flat `f`.
pub fn flat_residual(conn: &TruncatedSeriesConnection, f: &[TruncatedSeries]) -> Vec<TruncatedSeries> {
    let r = conn.rank();
    (0..r)
        .map(|i| {
            let mut acc = f[i].derivative();
            for (j, fj) in f.iter().enumerate() {
                acc = acc.add(&conn.entry(j, i).mul(fj));
            }
            acc
        })
        .collect()
}

/// Columns are the flat sections through the standard basis vectors.
pub fn fundamental_solutions(conn: &TruncatedSeriesConnection) -> Result<Vec<Vec<TruncatedSeries>>> {
    let r = conn.rank();
    (0..r)
        .map(|c| {
            let init: Vec<Rational> = (0..r).map(|i| if i == c { Rational::one() } else { Rational::zero() }).collect();
            solve_flat_sections(conn, &init)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationProfile {
    pub p: u64,
    /// `(m, val_p(c_m) + ceil(m / (p - 1)))`, with `None` for zero coefficients.
    pub points: Vec<(usize, Option<i64>)>,
    pub min: Option<i64>,
}

pub fn padic_valuation_profile(f: &TruncatedSeries, p: u64) -> Result<ValuationProfile> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let step = p as i64 - 1;
    let points: Vec<(usize, Option<i64>)> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, c)| (m, rational::val(c, p).map(|v| v + (m as i64 + step - 1) / step)))
        .collect();
    let min = points.iter().filter_map(|(_, v)| *v).min();
    Ok(ValuationProfile { p, points, min })
}

/// Homogeneous relations of one degree among truncated series, valid modulo
/// `z^{order + 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationBasis {
    pub degree: u32,
    pub order: usize,
    /// Exponent vectors, in the column order of every relation.
    pub monomials: Vec<Vec<u32>>,
    #[serde(serialize_with = "rat_rows")]
    pub relations: Vec<Vec<Rational>>,
}

fn rat_rows<S: serde::Serializer>(v: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|row| row.iter().map(rational::format).collect::<Vec<_>>()))
}

impl RelationBasis {
    /// Human-readable form of relation `i`, e.g. `x0*x2 - x1^2`.
    pub fn display(&self, i: usize) -> String {
        format_polynomial(&self.monomials, &self.relations[i])
    }
}

/// Exponent vectors of total degree `degree` in `vars` variables, in
/// decreasing lexicographic order.
pub fn monomials(vars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(vars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == vars {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(vars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if vars > 0 {
        rec(vars, degree, &mut Vec::new(), &mut out);
    }
    out
}

fn monomial_value(series: &[TruncatedSeries], exps: &[u32], order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::constant(Rational::one(), order);
    for (s, &e) in series.iter().zip(exps) {
        for _ in 0..e {
            acc = acc.mul(s);
        }
    }
    acc
}

/// `sum_c coeff_c * B^{monomial_c}` modulo `z^{order + 1}`.
pub fn evaluate_relation(series: &[TruncatedSeries], monomials: &[Vec<u32>], coeffs: &[Rational], order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(order);
    for (exps, c) in monomials.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&monomial_value(series, exps, order).scale(c));
        }
    }
    acc
}

/// Kernel of `Q -> Q(B_0, ..., B_N) mod z^{k+1}` on degree-`degree` forms,
/// where `k` is the smallest order among the series.
pub fn truncated_relations(series: &[TruncatedSeries], degree: u32) -> Result<RelationBasis> {
    if series.is_empty() {
        return Err(Error::domain("need at least one series"));
    }
    let order = series.iter().map(TruncatedSeries::order).min().unwrap();
    let monos = monomials(series.len(), degree);
    let columns: Vec<Vec<Rational>> =
        monos.iter().map(|e| monomial_value(series, e, order).coeffs().to_vec()).collect();
    let relations = Matrix::from_cols(&columns)?
        .kernel(&Rationals)
        .into_iter()
        .map(|v| {
            // leading coefficient 1
            let lead = v.iter().find(|c| !c.is_zero()).cloned().unwrap();
            v.into_iter().map(|c| c / &lead).collect()
        })
        .collect();
    Ok(RelationBasis { degree, order, monomials: monos, relations })
}

pub fn format_polynomial(monomials: &[Vec<u32>], coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (exps, c) in monomials.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let vars: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        let mag = c.abs();
        let term = match (mag.is_one(), vars.is_empty()) {
            (true, false) => vars.join("*"),
            (_, true) => rational::format(&mag),
            (false, false) => format!("{}*{}", rational::format(&mag), vars.join("*")),
        };
        let neg = c < &Rational::zero();
        if out.is_empty() {
            out = if neg { format!("-{term}") } else { term };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
