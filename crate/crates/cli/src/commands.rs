use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};
use lvcert::affq::{com_fiber_census, find_kp_prime, find_place_residue};
use lvcert::algebra::rational::{self, val};
use lvcert::algebra::{Field, Gf, Matrix, Rational, Rationals, Subspace};
use lvcert::flatseries::{
    flat_residual, padic_valuation_profile, solve_flat_sections, truncated_relations, TruncatedSeries,
    TruncatedSeriesConnection,
};
use lvcert::frobcount::{centralizer_bound, verify_spectrum_bound, CountBoundInput, Spectrum};
use lvcert::hodge::{check_conditions_with, scan_row, HodgeEvaluator, ModuliDimension, ScanSummary};
use lvcert::rootfilt::{
    fiber_codim, is_bad, linalg_census, lw2_harness, lw2_sweep_configs, root_lemma_check, wpq_enumerate, BadMode,
    Lw2Report, ParabolicPair, RootDatum,
};
use lvcert::semilinear::centralizer_trial;
use lvcert::symplectic::{
    bad_lagrangian_bruteforce, bad_lagrangian_search, fifth_graph_matrix, standard_tuple,
    transvection_graph_certificate, LagrangianField, LagrangianTuple, SymplecticSpace,
};
use lvcert::{Error, Result};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::input::{self, json_array, json_rational, json_rationals, prime_field, read_json, reduce_rows, zero_based};
use crate::output::{opt, Output, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuliDim {
    /// C(n+d, d-1) - 1
    Stated,
    /// C(n+d, d) - 1
    ParameterSpace,
}

impl From<ModuliDim> for ModuliDimension {
    fn from(m: ModuliDim) -> Self {
        match m {
            ModuliDim::Stated => ModuliDimension::Stated,
            ModuliDim::ParameterSpace => ModuliDimension::ParameterSpace,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Least degree d with both Hodge-spread conditions, for each n in a range.
    HodgeScan {
        #[arg(long, default_value_t = 30)]
        n_min: u64,
        #[arg(long, default_value_t = 80)]
        n_max: u64,
        #[arg(long, default_value_t = 3000)]
        d_max: u64,
        /// Re-checks at 2d, 4d, ... after the first hit.
        #[arg(long, default_value_t = 2)]
        persistence: u32,
        #[arg(long, value_enum, default_value_t = ModuliDim::Stated)]
        moduli_dim: ModuliDim,
    },
    /// Smallest admissible prime for the affine-group construction, and a residue class.
    KpParams {
        #[arg(long)]
        genus: u64,
        #[arg(long, default_value_t = 1)]
        deg_k: u64,
        #[arg(long, default_value_t = 5)]
        orbit_const: u64,
        #[arg(long, value_delimiter = ',')]
        forbidden: Vec<u64>,
    },
    /// Fiber census of the commutator map on Aff(q)^{2s}.
    ComFibers {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: u64,
    },
    /// Seeded trials comparing centralizer dimensions of semilinear modules.
    Centralizer {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 500)]
        trials: u64,
    },
    /// Pairing-graph certificate for the transvections along the given vectors.
    TransvectCert {
        /// CSV, one vector per line.
        #[arg(long)]
        vectors: PathBuf,
        /// Prime field; rationals when absent.
        #[arg(long)]
        field: Option<u64>,
    },
    /// Search for a subspace meeting every Lagrangian in at least half its dimension.
    BadLagrangian {
        /// JSON `{"d": 2, "subspaces": [[row, ...], ...]}`.
        #[arg(long, conflicts_with = "standard", required_unless_present = "standard")]
        tuple: Option<PathBuf>,
        /// The standard five-Lagrangian tuple of this half-dimension.
        #[arg(long)]
        standard: Option<usize>,
        /// Prime field; rationals when absent.
        #[arg(long)]
        field: Option<u64>,
        /// Also run the exhaustive search and compare (finite fields only).
        #[arg(long)]
        brute_force: bool,
    },
    /// Multiplicity bound from point counts, optionally checked on an explicit spectrum.
    FrobBound {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, required_unless_present = "spectrum")]
        b: Option<BigInt>,
        /// JSON `{"angles": [{"theta": "1/8", "m": 2}, ...]}`.
        #[arg(long)]
        spectrum: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        j_max: u64,
    },
    /// Minimal double-coset representatives W_PQ with lengths, codimensions and badness.
    Wpq {
        #[arg(long = "type")]
        datum: String,
        /// One-based simple-root indices.
        #[arg(long, value_delimiter = ',')]
        dp: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        dq: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Option<Vec<i64>>,
    },
    /// Exhaustive check of the codimension bound over (Delta_P, mu) with bounded mu.
    Lw2Sweep {
        #[arg(long = "type")]
        datum: String,
        /// Every e from 1 to |Sigma+| when absent.
        #[arg(long)]
        e: Option<usize>,
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    /// Census of bad self-dual flags for a similitude over a small prime field.
    LinalgCensus {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: usize,
        /// CSV matrix of the similitude.
        #[arg(long)]
        phi: PathBuf,
        /// Defaults to Lagrangian flags.
        #[arg(long, value_delimiter = ',')]
        flag_dims: Option<Vec<usize>>,
    },
    /// Flat sections of a truncated connection and their p-adic valuation profile.
    FlatSolve {
        /// JSON matrix of coefficient arrays, or `{"connection": ..., "init": [...]}`.
        #[arg(long)]
        connection: PathBuf,
        #[arg(long, default_value_t = 200)]
        order: usize,
        #[arg(long, default_value_t = 5)]
        p: u64,
    },
    /// Homogeneous polynomial relations among truncated series.
    Relations {
        /// JSON array of coefficient arrays.
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        degree: u32,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::HodgeScan { .. } => "hodge-scan",
            Command::KpParams { .. } => "kp-params",
            Command::ComFibers { .. } => "com-fibers",
            Command::Centralizer { .. } => "centralizer",
            Command::TransvectCert { .. } => "transvect-cert",
            Command::BadLagrangian { .. } => "bad-lagrangian",
            Command::FrobBound { .. } => "frob-bound",
            Command::Wpq { .. } => "wpq",
            Command::Lw2Sweep { .. } => "lw2-sweep",
            Command::LinalgCensus { .. } => "linalg-census",
            Command::FlatSolve { .. } => "flat-solve",
            Command::Relations { .. } => "relations",
        }
    }
}

/// Everything a subcommand may depend on besides its flags.
pub struct Context {
    pub seed: u64,
    /// Relative input paths are resolved against this directory.
    pub base: PathBuf,
}

pub fn run(cmd: &Command, ctx: &Context) -> Result<Output> {
    match cmd {
        Command::HodgeScan { n_min, n_max, d_max, persistence, moduli_dim } => {
            hodge_scan(*n_min, *n_max, *d_max, *persistence, (*moduli_dim).into())
        }
        Command::KpParams { genus, deg_k, orbit_const, forbidden } => {
            let params = find_kp_prime(*genus, *deg_k, *orbit_const, forbidden)?;
            let residue = find_place_residue(params.q, *orbit_const, *deg_k)?;
            let valid = params.is_valid();
            Ok(Output::json(&json!({ "params": params, "valid": valid, "place_residue": residue }))
                .fail_if(!valid, || "returned parameters fail re-validation".into()))
        }
        Command::ComFibers { q, s } => com_fibers(*q, *s),
        Command::Centralizer { p, e, dim, trials } => centralizer(*p, *e, *dim, *trials, ctx.seed),
        Command::TransvectCert { vectors, field } => transvect_cert(&ctx.base, vectors, *field),
        Command::BadLagrangian { tuple, standard, field, brute_force } => {
            bad_lagrangian(&ctx.base, tuple.as_deref(), *standard, *field, *brute_force)
        }
        Command::FrobBound { q, n, b, spectrum, j_max } => frob_bound(&ctx.base, *q, *n, b.as_ref(), spectrum.as_deref(), *j_max),
        Command::Wpq { datum, dp, dq, mu } => wpq(datum, dp, dq.as_deref(), mu.clone()),
        Command::Lw2Sweep { datum, e, bound } => lw2_sweep(datum, *e, *bound),
        Command::LinalgCensus { q, d, phi, flag_dims } => {
            let f = prime_field(*q)?;
            let rows = reduce_rows(&f, &input::read_rows(&ctx.base, phi)?)?;
            let phi = Matrix::from_rows(rows)?;
            let dims = flag_dims.clone().unwrap_or_else(|| vec![*d]);
            Ok(Output::json(&linalg_census(*q, *d, &dims, &phi)?))
        }
        Command::FlatSolve { connection, order, p } => flat_solve(&ctx.base, connection, *order, *p),
        Command::Relations { series, degree } => relations(&ctx.base, series, *degree),
    }
}

fn hodge_scan(n_min: u64, n_max: u64, d_max: u64, persistence: u32, which: ModuliDimension) -> Result<Output> {
    if n_min < 2 || n_min > n_max || d_max < 2 {
        return Err(Error::Domain("need 2 <= n-min <= n-max and d-max >= 2".into()));
    }
    let rows = (n_min..=n_max)
        .into_par_iter()
        .map(|n| scan_row(n, d_max, persistence, which))
        .collect::<Result<Vec<_>>>()?;
    let summary = ScanSummary::from_rows(rows);
    let hits = summary
        .rows
        .iter()
        .filter_map(|r| r.first_d.map(|d| (r.n, d)))
        .map(|(n, d)| check_conditions_with(&HodgeEvaluator::new(n)?, d, which))
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(vec!["n", "first_d", "holds_for_sampled_larger_d"]);
    for r in &summary.rows {
        table.push(vec![r.n.to_string(), opt(&r.first_d), opt(&r.holds_for_sampled_larger_d)]);
    }
    let value = json!({ "d_max": d_max, "minimal_n": summary.minimal_n, "rows": summary.rows, "hits": hits });
    Ok(Output::json(&value).with_table(table))
}

fn com_fibers(q: u64, s: u64) -> Result<Output> {
    let census = com_fiber_census(q, s)?;
    let mut histogram = BTreeMap::<String, u64>::new();
    let mut table = Table::new(vec!["units", "size"]);
    for (units, size) in &census.fibers {
        *histogram.entry(size.to_string()).or_default() += 1;
        table.push(vec![units.iter().map(u64::to_string).collect::<Vec<_>>().join(";"), size.to_string()]);
    }
    let failure = census.verify().err();
    let value = json!({ "census": census, "fiber_histogram": histogram, "image_size": census.fibers.len() });
    Ok(Output::json(&value).with_table(table).fail_if(failure.is_some(), || failure.unwrap().to_string()))
}

fn centralizer(p: u64, e: u32, dim: usize, trials: u64, seed: u64) -> Result<Output> {
    let results = (0..trials)
        .into_par_iter()
        .map(|i| match centralizer_trial(p, e, dim, seed, i) {
            Ok(r) => Ok((i, Some(r), None)),
            Err(Error::LemmaViolation(msg)) => Ok((i, None, Some(msg))),
            Err(err) => Err(err),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut histogram = BTreeMap::<String, u64>::new();
    let mut failures = Vec::new();
    let mut table = Table::new(vec!["trial", "dim_f", "dim_e", "ok"]);
    let mut max_dim = 0;
    for (i, report, failure) in &results {
        match (report, failure) {
            (Some(r), _) => {
                *histogram.entry(r.dim_f.to_string()).or_default() += 1;
                max_dim = max_dim.max(r.dim_f);
                table.push(vec![i.to_string(), r.dim_f.to_string(), r.dim_e.to_string(), "true".into()]);
            }
            (None, Some(msg)) => {
                failures.push(json!({ "trial": i, "message": msg }));
                table.push(vec![i.to_string(), String::new(), String::new(), "false".into()]);
            }
            (None, None) => unreachable!(),
        }
    }
    let value = json!({
        "p": p, "e": e, "d": dim, "trials": trials, "seed": seed,
        "dim_histogram": histogram, "max_dim": max_dim, "d_squared": dim * dim,
        "failures": failures,
    });
    let n_fail = failures.len();
    Ok(Output::json(&value).with_table(table).fail_if(n_fail > 0, || format!("{n_fail} trials violate the centralizer identity")))
}

fn transvect_cert(base: &Path, vectors: &Path, field: Option<u64>) -> Result<Output> {
    let rows = input::read_rows(base, vectors)?;
    let n = rows.first().map(Vec::len).unwrap_or(0);
    if n == 0 || n % 2 == 1 {
        return Err(Error::Domain("vectors must have a positive even length".into()));
    }
    let cert = match field {
        None => transvection_graph_certificate(&SymplecticSpace::new(Rationals, n / 2)?, &rows)?,
        Some(q) => {
            let f = prime_field(q)?;
            let vs = reduce_rows(&f, &rows)?;
            transvection_graph_certificate(&SymplecticSpace::new(f, n / 2)?, &vs)?
        }
    };
    let full = cert.is_full();
    Ok(Output::json(&json!({ "certificate": cert, "full": full, "field": field_name(field) })))
}

fn field_name(field: Option<u64>) -> String {
    field.map_or("Q".into(), |q| format!("F{q}"))
}

fn subspace_rows<T: Clone + PartialEq>(s: &Subspace<T>, fmt: impl Fn(&T) -> String) -> Vec<Vec<String>> {
    s.basis().iter().map(|v| v.iter().map(&fmt).collect()).collect()
}

fn search_value<F: LagrangianField>(t: &LagrangianTuple<F>, fmt: impl Fn(&F::Elem) -> String) -> Result<Value> {
    let out = bad_lagrangian_search(t)?;
    Ok(json!({
        "witness": out.witness.as_ref().map(|w| subspace_rows(w, &fmt)),
        "method": out.method,
        "candidates_tested": out.candidates_tested,
    }))
}

fn load_tuple<F: Field>(f: F, v: &Value, conv: impl Fn(&Rational) -> Result<F::Elem>) -> Result<LagrangianTuple<F>> {
    let d = v.get("d").and_then(Value::as_u64).ok_or_else(|| Error::Parse("tuple needs an integer \"d\"".into()))?;
    let subs = json_array(v.get("subspaces").unwrap_or(&Value::Null), "subspaces")?;
    let bases = subs
        .iter()
        .map(|s| {
            json_array(s, "a subspace")?
                .iter()
                .map(|row| json_rationals(row, "a basis row")?.iter().map(&conv).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    LagrangianTuple::from_bases(SymplecticSpace::new(f, d as usize)?, &bases)
}

fn bad_lagrangian(base: &Path, tuple: Option<&Path>, standard: Option<usize>, field: Option<u64>, brute_force: bool) -> Result<Output> {
    let tuple_doc = tuple.map(|p| read_json(base, p)).transpose()?;
    let mut value = match field {
        None => {
            if brute_force {
                return Err(Error::Domain("--brute-force needs a finite --field".into()));
            }
            let t = match (&tuple_doc, standard) {
                (Some(v), _) => load_tuple(Rationals, v, |r| Ok(r.clone()))?,
                (None, Some(d)) => standard_tuple(SymplecticSpace::new(Rationals, d)?, &[fifth_graph_matrix(&Rationals, d)])?,
                (None, None) => unreachable!("clap requires one of --tuple, --standard"),
            };
            search_value(&t, rational::format)?
        }
        Some(q) => {
            let f = prime_field(q)?;
            let t = match (&tuple_doc, standard) {
                (Some(v), _) => load_tuple(f.clone(), v, |r| input::reduce(&f, r))?,
                (None, Some(d)) => standard_tuple(SymplecticSpace::new(f.clone(), d)?, &[fifth_graph_matrix(&f, d)])?,
                (None, None) => unreachable!("clap requires one of --tuple, --standard"),
            };
            let mut v = search_value(&t, |x: &Gf| x.0.to_string())?;
            if brute_force {
                let found = bad_lagrangian_bruteforce(&t)?;
                let agrees = found.is_some() == !v["witness"].is_null();
                v["brute_force"] = json!({ "witness": found.map(|w| subspace_rows(&w, |x: &Gf| x.0.to_string())), "agrees": agrees });
            }
            v
        }
    };
    value["field"] = json!(field_name(field));
    let disagree = value.get("brute_force").is_some_and(|b| b["agrees"] == json!(false));
    Ok(Output::json(&value).fail_if(disagree, || "structured and exhaustive searches disagree".into()))
}

fn frob_bound(base: &Path, q: u64, n: u64, b: Option<&BigInt>, spectrum: Option<&Path>, j_max: u64) -> Result<Output> {
    let Some(path) = spectrum else {
        let input = CountBoundInput::new(q, n, b.cloned().expect("clap requires --b without --spectrum"))?;
        return Ok(Output::json(&centralizer_bound(&input)));
    };
    let v = read_json(base, path)?;
    let angles = json_array(v.get("angles").unwrap_or(&Value::Null), "angles")?
        .iter()
        .map(|a| {
            let theta = json_rational(a.get("theta").unwrap_or(&Value::Null))?;
            let m = a.get("m").and_then(Value::as_u64).ok_or_else(|| Error::Parse("angle needs integer \"m\"".into()))?;
            Ok((theta, m))
        })
        .collect::<Result<Vec<_>>>()?;
    let s = Spectrum::new(angles)?;
    if let Some(b) = b {
        if *b != s.betti() {
            return Err(Error::Domain(format!("--b {b} differs from the spectrum's total multiplicity {}", s.betti())));
        }
    }
    let report = verify_spectrum_bound(&s, q, n, j_max)?;
    let mut value = serde_json::to_value(&report.bound).expect("json");
    value["spectrum"] = serde_json::to_value(&report).expect("json");
    Ok(Output::json(&value))
}

fn datum(name: &str) -> Result<RootDatum> {
    name.parse()
}

fn wpq(name: &str, dp: &[usize], dq: Option<&[usize]>, mu: Option<Vec<i64>>) -> Result<Output> {
    let r = datum(name)?;
    let dp = zero_based(dp, r.rank(), "--dp")?;
    let dq = dq.map(|d| zero_based(d, r.rank(), "--dq")).transpose()?;
    let pair = match (dq, mu) {
        (Some(dq), Some(mu)) => ParabolicPair::new(&r, &dp, &dq, mu)?,
        (None, Some(mu)) => ParabolicPair::from_mu(&r, &dp, mu)?,
        (dq, None) => ParabolicPair::with_default_mu(&r, &dp, &dq.unwrap_or_default())?,
    };
    let exact_supported = is_bad(&r, &lvcert::rootfilt::WeylElement::identity(r.ambient_dim()), &pair, BadMode::ExactBlocks).is_ok();
    let mut elements = Vec::new();
    let mut table = Table::new(vec!["w", "length", "codim", "bad_aggregate", "bad_exact", "root_lemma"]);
    let mut lemma_failures = 0;
    for w in wpq_enumerate(&r, &pair)? {
        let lemma = root_lemma_check(&r, &w, &pair)?;
        let codim = fiber_codim(&r, &w, &pair)?;
        let aggregate = is_bad(&r, &w, &pair, BadMode::Aggregate)?;
        let exact = if exact_supported { Some(is_bad(&r, &w, &pair, BadMode::ExactBlocks)?) } else { None };
        lemma_failures += usize::from(!lemma.holds);
        table.push(vec![
            w.to_string(),
            r.length(&w).to_string(),
            codim.to_string(),
            aggregate.to_string(),
            opt(&exact),
            lemma.holds.to_string(),
        ]);
        elements.push(json!({
            "w": w.to_string(), "length": r.length(&w), "codim": codim,
            "bad_aggregate": aggregate, "bad_exact": exact, "root_lemma": lemma,
        }));
    }
    let one_based = |v: &[usize]| v.iter().map(|i| i + 1).collect::<Vec<_>>();
    let value = json!({
        "type": r.to_string(), "dp": one_based(&pair.dp), "dq": one_based(&pair.dq), "mu": pair.mu,
        "dim_g_over_q": pair.dim_g_over_q(&r), "elements": elements,
    });
    Ok(Output::json(&value)
        .with_table(table)
        .fail_if(lemma_failures > 0, || format!("root lemma fails for {lemma_failures} elements")))
}

fn merge_reports(parts: Vec<Lw2Report>, datum: &RootDatum, e: usize) -> Lw2Report {
    let mut out = Lw2Report {
        datum: datum.to_string(),
        e,
        configurations: 0,
        e_out_of_range: 0,
        hypothesis_failed: 0,
        hypothesis_held: 0,
        bad_checked: 0,
        violations: Vec::new(),
    };
    for p in parts {
        out.configurations += p.configurations;
        out.e_out_of_range += p.e_out_of_range;
        out.hypothesis_failed += p.hypothesis_failed;
        out.hypothesis_held += p.hypothesis_held;
        out.bad_checked += p.bad_checked;
        out.violations.extend(p.violations);
    }
    out
}

fn lw2_sweep(name: &str, e: Option<usize>, bound: i64) -> Result<Output> {
    let r = datum(name)?;
    if !(0..=3).contains(&bound) {
        return Err(Error::Domain("--bound must lie in 0..=3".into()));
    }
    let configs = lw2_sweep_configs(&r, bound);
    let es: Vec<usize> = match e {
        Some(e) => vec![e],
        None => (1..=r.positive_roots().len()).collect(),
    };
    let mut reports = Vec::new();
    for e in es {
        let parts = configs
            .par_iter()
            .map(|c| lw2_harness(&r, std::slice::from_ref(c), e))
            .collect::<Result<Vec<_>>>()?;
        reports.push(merge_reports(parts, &r, e));
    }
    let violations: usize = reports.iter().map(|x| x.violations.len()).sum();
    let value = json!({ "type": r.to_string(), "bound": bound, "reports": reports, "violations": violations });
    Ok(Output::json(&value).fail_if(violations > 0, || format!("{violations} counterexamples to the codimension bound")))
}

fn series_from_json(v: &Value, order: Option<usize>) -> Result<TruncatedSeries> {
    let c = json_rationals(v, "a coefficient array")?;
    if c.is_empty() {
        return Err(Error::Parse("empty coefficient array".into()));
    }
    let k = order.unwrap_or(c.len() - 1);
    Ok(TruncatedSeries::new(c, k))
}

fn p_integral(r: &Rational, p: u64) -> bool {
    val(r, p).map_or(true, |v| v >= 0)
}

fn flat_solve(base: &Path, path: &Path, order: usize, p: u64) -> Result<Output> {
    if !rational::is_prime(p) {
        return Err(Error::Domain(format!("--p must be prime, got {p}")));
    }
    let v = read_json(base, path)?;
    let (matrix, init) = match &v {
        Value::Object(m) => (m.get("connection").unwrap_or(&Value::Null), m.get("init")),
        other => (other, None),
    };
    let a = json_array(matrix, "connection")?
        .iter()
        .map(|row| json_array(row, "a connection row")?.iter().map(|c| series_from_json(c, Some(order))).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    let conn = TruncatedSeriesConnection::new(a, order)?;
    let r = conn.rank();
    let inits: Vec<Vec<Rational>> = match init {
        Some(i) => vec![json_rationals(i, "init")?],
        None => (0..r).map(|c| (0..r).map(|i| rational::int(i64::from(i == c))).collect()).collect(),
    };
    let integral = (0..r).all(|i| (0..r).all(|j| conn.entry(i, j).coeffs().iter().all(|c| p_integral(c, p))))
        && inits.iter().flatten().all(|c| p_integral(c, p));
    let mut solutions = Vec::new();
    let mut overall: Option<i64> = None;
    let mut residual_vanishes = true;
    for init in &inits {
        let f = solve_flat_sections(&conn, init)?;
        residual_vanishes &= flat_residual(&conn, &f).iter().all(TruncatedSeries::is_zero);
        let mins = f
            .iter()
            .map(|s| padic_valuation_profile(s, p).map(|x| x.min))
            .collect::<Result<Vec<_>>>()?;
        overall = mins.iter().flatten().copied().chain(overall).min();
        solutions.push(json!({ "init": init.iter().map(rational::format).collect::<Vec<_>>(), "series": f, "profile_min": mins }));
    }
    let bound_holds = integral.then(|| overall.map_or(true, |m| m >= -1));
    let value = json!({
        "order": order, "p": p, "rank": r, "p_integral": integral, "solutions": solutions,
        "profile_min": overall, "residual_vanishes": residual_vanishes, "valuation_bound_holds": bound_holds,
    });
    let failed = !residual_vanishes || bound_holds == Some(false);
    Ok(Output::json(&value).fail_if(failed, || "flat sections fail the residual or valuation check".into()))
}

fn relations(base: &Path, path: &Path, degree: u32) -> Result<Output> {
    let v = read_json(base, path)?;
    let (list, order) = match &v {
        Value::Object(m) => (m.get("series").unwrap_or(&Value::Null), m.get("order").and_then(Value::as_u64)),
        other => (other, None),
    };
    let series = json_array(list, "series")?
        .iter()
        .map(|s| series_from_json(s, order.map(|k| k as usize)))
        .collect::<Result<Vec<_>>>()?;
    let rel = truncated_relations(&series, degree)?;
    let display: Vec<String> = (0..rel.relations.len()).map(|i| rel.display(i)).collect();
    Ok(Output::json(&json!({ "basis": rel, "display": display })))
}
