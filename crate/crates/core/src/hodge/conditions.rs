use num_bigint::BigInt;
use serde::Serialize;

use super::spectrum::{adjoint_spectrum, HodgeEvaluator};
use crate::algebra::rational::{binomial, frac, from_big, Rational};
use crate::error::Result;

/// Which formula supplies `dim Y` in the conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuliDimension {
    /// `C(n+d, d-1) - 1`.
    #[default]
    Stated,
    /// `C(n+d, d) - 1`, the dimension of the space of degree-`d` forms modulo scalars.
    ParameterSpace,
}

pub fn moduli_dim(n: u64, d: u64, which: ModuliDimension) -> BigInt {
    match which {
        ModuliDimension::Stated => binomial(n + d, d - 1) - 1,
        ModuliDimension::ParameterSpace => binomial(n + d, d) - 1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub n: u64,
    pub d: u64,
    #[serde(rename = "dimY", serialize_with = "crate::ser::big")]
    pub dim_y: BigInt,
    #[serde(serialize_with = "crate::ser::big")]
    pub h0: BigInt,
    #[serde(serialize_with = "crate::ser::big")]
    pub sum_pos: BigInt,
    #[serde(serialize_with = "crate::ser::big")]
    pub weighted_sum: BigInt,
    /// `T(h0 + dimY)`; `None` when the argument exceeds the spectrum length.
    #[serde(rename = "T1", serialize_with = "opt_rat")]
    pub t1: Option<Rational>,
    /// `T(3/2 h0 + dimY)`; `None` when the argument exceeds the spectrum length.
    #[serde(rename = "T2", serialize_with = "opt_rat")]
    pub t2: Option<Rational>,
    pub weak: bool,
    pub strong: bool,
}

fn opt_rat<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => crate::ser::rat(r, s),
        None => s.serialize_none(),
    }
}

pub fn check_conditions(n: u64, d: u64) -> Result<ConditionReport> {
    check_conditions_with(&HodgeEvaluator::new(n)?, d, ModuliDimension::Stated)
}

pub fn check_conditions_with(ev: &HodgeEvaluator, d: u64, which: ModuliDimension) -> Result<ConditionReport> {
    let n = ev.n();
    let raw = ev.spectrum(d)?;
    let adj = adjoint_spectrum(&raw, n)?;
    let dim_y = moduli_dim(n, d, which);
    let h0 = adj.get(0);
    let sum_pos = adj.sum_positive();
    let weighted_sum = adj.weighted_positive();
    let total = from_big(adj.total());
    let y1 = from_big(&h0 + &dim_y);
    let y2 = from_big(dim_y.clone()) + from_big(h0.clone()) * frac(3, 2);
    let t_at = |y: &Rational| -> Result<Option<Rational>> {
        if *y > total { Ok(None) } else { adj.t_function(y).map(Some) }
    };
    let t1 = t_at(&y1)?;
    let t2 = t_at(&y2)?;
    let weak = sum_pos >= &h0 + &dim_y;
    let strong = match (&t1, &t2) {
        (Some(a), Some(b)) => from_big(weighted_sum.clone()) > a + b,
        _ => false,
    };
    Ok(ConditionReport { n, d, dim_y, h0, sum_pos, weighted_sum, t1, t2, weak, strong })
}

/// One row of the scan: the least `d` with both conditions, and re-checks at
/// `2d, 4d, ...` capped at `d_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub n: u64,
    pub first_d: Option<u64>,
    pub probes: Vec<(u64, bool)>,
    pub holds_for_sampled_larger_d: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub rows: Vec<ScanRow>,
    pub minimal_n: Option<u64>,
}

pub fn scan_row(n: u64, d_max: u64, persistence: u32, which: ModuliDimension) -> Result<ScanRow> {
    let ev = HodgeEvaluator::new(n)?;
    let holds = |d: u64| -> Result<bool> {
        let r = check_conditions_with(&ev, d, which)?;
        Ok(r.weak && r.strong)
    };
    let mut first_d = None;
    for d in 2..=d_max {
        if holds(d)? {
            first_d = Some(d);
            break;
        }
    }
    let mut probes = Vec::new();
    if let Some(d0) = first_d {
        let mut seen = d0;
        for i in 1..=persistence {
            let d = d0.saturating_mul(1u64 << i.min(63)).min(d_max);
            if d <= seen {
                continue;
            }
            seen = d;
            probes.push((d, holds(d)?));
        }
    }
    let holds_for_sampled_larger_d = first_d.map(|_| probes.iter().all(|(_, ok)| *ok));
    Ok(ScanRow { n, first_d, probes, holds_for_sampled_larger_d })
}

/// Sequential scan; callers wanting parallelism map [`scan_row`] themselves
/// and pass the rows to [`ScanSummary::from_rows`].
pub fn scan_n0(ns: impl IntoIterator<Item = u64>, d_max: u64, persistence: u32, which: ModuliDimension) -> Result<ScanSummary> {
    let rows = ns
        .into_iter()
        .map(|n| scan_row(n, d_max, persistence, which))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanSummary::from_rows(rows))
}

impl ScanSummary {
    pub fn from_rows(mut rows: Vec<ScanRow>) -> Self {
        rows.sort_by_key(|r| r.n);
        let minimal_n = rows.iter().filter(|r| r.first_d.is_some()).map(|r| r.n).min();
        ScanSummary { rows, minimal_n }
    }
}
