use num_bigint::BigInt;
use serde::Serialize;

use super::datum::{dot, RootDatum, WeylElement};
use super::parabolic::{fiber_codim, is_bad, wpq_enumerate, BadMode, ParabolicPair};
use crate::algebra::rational::{int, Rational};
use crate::error::{Error, Result};
use crate::hodge::{HodgeSpectrum, SpectrumKind};

/// Largest rank swept by [`lw2_harness`].
pub const MAX_LW2_RANK: usize = 4;

/// `{<mu, g> : g in Sigma}` with `0` added `rank` more times, as counts.
pub fn root_hodge_numbers(datum: &RootDatum, mu: &[i64]) -> HodgeSpectrum {
    let mut counts = std::collections::BTreeMap::<i64, BigInt>::new();
    *counts.entry(0).or_default() += datum.rank();
    for g in datum.roots() {
        *counts.entry(dot(mu, g)).or_default() += 1;
    }
    HodgeSpectrum::new(SpectrumKind::Adjoint, counts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lw2Hypothesis {
    pub dim_g_over_q: usize,
    /// Dimension of the Levi factor of `Q`.
    pub a0: usize,
    #[serde(serialize_with = "crate::ser::rat")]
    pub positive_sum: Rational,
    #[serde(serialize_with = "crate::ser::rat")]
    pub top_e: Rational,
    #[serde(serialize_with = "crate::ser::rat")]
    pub top_half_a0_plus_e: Rational,
    pub holds: bool,
}

/// `sum of positive Hodge numbers > T(e) + T(a0/2 + e)`, for `1 <= e <= dim G/Q`.
pub fn lw2_hypothesis(datum: &RootDatum, mu: &[i64], e: usize) -> Result<Lw2Hypothesis> {
    let h = root_hodge_numbers(datum, mu);
    let dim_g_over_q = datum.roots().iter().filter(|g| dot(mu, g) > 0).count();
    if e == 0 || e > dim_g_over_q {
        return Err(Error::domain(format!("e = {e} outside [1, dim G/Q = {dim_g_over_q}]")));
    }
    let a0 = datum.rank() + datum.roots().iter().filter(|g| dot(mu, g) == 0).count();
    let positive_sum = Rational::from_integer(h.weighted_positive());
    let e_r = int(e as i64);
    let top_e = h.t_function(&e_r)?;
    let top_half_a0_plus_e = h.t_function(&(Rational::new(a0.into(), 2.into()) + &e_r))?;
    let holds = positive_sum > &top_e + &top_half_a0_plus_e;
    Ok(Lw2Hypothesis { dim_g_over_q, a0, positive_sum, top_e, top_half_a0_plus_e, holds })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lw2Violation {
    pub dp: Vec<usize>,
    pub mu: Vec<i64>,
    pub w: WeylElement,
    pub codim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lw2Report {
    pub datum: String,
    pub e: usize,
    pub configurations: usize,
    /// Configurations with `e > dim G/Q`.
    pub e_out_of_range: usize,
    pub hypothesis_failed: usize,
    pub hypothesis_held: usize,
    pub bad_checked: usize,
    pub violations: Vec<Lw2Violation>,
}

/// Every `(Delta_P, mu)` with `mu` dominant and entries in `[-bound, bound]`.
pub fn lw2_sweep_configs(datum: &RootDatum, bound: i64) -> Vec<(Vec<usize>, Vec<i64>)> {
    let n = datum.ambient_dim();
    let span = (2 * bound + 1) as usize;
    let mut mus = Vec::new();
    for code in 0..span.pow(n as u32) {
        let mu: Vec<i64> = (0..n).map(|i| (code / span.pow(i as u32) % span) as i64 - bound).collect();
        if datum.simple_roots().iter().all(|a| dot(&mu, a) >= 0) {
            mus.push(mu);
        }
    }
    let mut out = Vec::new();
    for mask in 0..(1usize << datum.rank()) {
        let dp: Vec<usize> = (0..datum.rank()).filter(|i| mask >> i & 1 == 1).collect();
        for mu in &mus {
            out.push((dp.clone(), mu.clone()));
        }
    }
    out
}

/// For each configuration satisfying the hypothesis, every bad `w` in
/// `W_PQ` (aggregate mode) must have fiber codimension greater than `e`.
pub fn lw2_harness(datum: &RootDatum, configs: &[(Vec<usize>, Vec<i64>)], e: usize) -> Result<Lw2Report> {
    if datum.rank() > MAX_LW2_RANK {
        return Err(Error::size(format!("rank {} exceeds {MAX_LW2_RANK}", datum.rank())));
    }
    let mut report = Lw2Report {
        datum: datum.to_string(),
        e,
        configurations: configs.len(),
        e_out_of_range: 0,
        hypothesis_failed: 0,
        hypothesis_held: 0,
        bad_checked: 0,
        violations: Vec::new(),
    };
    for (dp, mu) in configs {
        let pair = ParabolicPair::from_mu(datum, dp, mu.clone())?;
        if e == 0 || e > pair.dim_g_over_q(datum) {
            report.e_out_of_range += 1;
            continue;
        }
        if !lw2_hypothesis(datum, mu, e)?.holds {
            report.hypothesis_failed += 1;
            continue;
        }
        report.hypothesis_held += 1;
        for w in wpq_enumerate(datum, &pair)? {
            if !is_bad(datum, &w, &pair, BadMode::Aggregate)? {
                continue;
            }
            report.bad_checked += 1;
            let codim = fiber_codim(datum, &w, &pair)?;
            if codim <= e {
                report.violations.push(Lw2Violation { dp: pair.dp.clone(), mu: mu.clone(), w, codim });
            }
        }
    }
    Ok(report)
}
