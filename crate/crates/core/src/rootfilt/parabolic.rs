use std::collections::HashSet;

use serde::Serialize;

use super::datum::{dot, Root, RootDatum, RootType, WeylElement};
use crate::algebra::field::Rationals;
use crate::algebra::matrix::Matrix;
use crate::algebra::rational::int;
use crate::error::{Error, Result};

/// Largest rank accepted by [`wpq_enumerate`] (`|W(B_5)| = 3840`).
pub const MAX_WPQ_RANK: usize = 5;

/// Standard parabolics `P`, `Q` given by subsets of simple-root indices,
/// with `Q` the parabolic of the dominant cocharacter `mu`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParabolicPair {
    pub dp: Vec<usize>,
    pub dq: Vec<usize>,
    pub mu: Vec<i64>,
}

fn normalize(datum: &RootDatum, s: &[usize], label: &str) -> Result<Vec<usize>> {
    let mut v = s.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.iter().any(|&i| i >= datum.rank()) {
        return Err(Error::domain(format!("{label} index out of range for {datum}")));
    }
    Ok(v)
}

impl ParabolicPair {
    /// Checks `<mu, b> = 0` on `dq` and `<mu, a> > 0` on the other simple roots.
    pub fn new(datum: &RootDatum, dp: &[usize], dq: &[usize], mu: Vec<i64>) -> Result<Self> {
        let dp = normalize(datum, dp, "Delta_P")?;
        let dq = normalize(datum, dq, "Delta_Q")?;
        if mu.len() != datum.ambient_dim() {
            return Err(Error::domain(format!("mu needs {} entries for {datum}", datum.ambient_dim())));
        }
        for (i, a) in datum.simple_roots().iter().enumerate() {
            let p = dot(&mu, a);
            if dq.contains(&i) && p != 0 {
                return Err(Error::domain(format!("<mu, alpha_{}> = {p}, must vanish on Delta_Q", i + 1)));
            }
            if !dq.contains(&i) && p <= 0 {
                return Err(Error::domain(format!("<mu, alpha_{}> = {p}, must be positive off Delta_Q", i + 1)));
            }
        }
        Ok(ParabolicPair { dp, dq, mu })
    }

    /// `Delta_Q` read off from a dominant `mu`.
    pub fn from_mu(datum: &RootDatum, dp: &[usize], mu: Vec<i64>) -> Result<Self> {
        if mu.len() != datum.ambient_dim() {
            return Err(Error::domain(format!("mu needs {} entries for {datum}", datum.ambient_dim())));
        }
        let dq: Vec<usize> = datum.simple_roots().iter().enumerate().filter(|(_, a)| dot(&mu, a) == 0).map(|(i, _)| i).collect();
        Self::new(datum, dp, &dq, mu)
    }

    /// Some integral `mu` with the right vanishing pattern for `dq`.
    pub fn with_default_mu(datum: &RootDatum, dp: &[usize], dq: &[usize]) -> Result<Self> {
        let dq_n = normalize(datum, dq, "Delta_Q")?;
        let n = datum.ambient_dim();
        let mut rows: Vec<Vec<_>> = datum.simple_roots().iter().map(|a| a.iter().map(|&x| int(x)).collect()).collect();
        let mut rhs: Vec<_> = (0..datum.rank()).map(|i| int(if dq_n.contains(&i) { 0 } else { 2 })).collect();
        if datum.kind() == RootType::A {
            rows.push(vec![int(1); n]);
            rhs.push(int(0));
        }
        let m = Matrix::from_rows(rows)?;
        let sol = m.solve(&Rationals, &rhs).ok_or_else(|| Error::Internal("simple roots not independent".into()))?;
        let den = sol.iter().fold(num_bigint::BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        let mu = sol
            .iter()
            .map(|x| i64::try_from((x * crate::algebra::rational::from_big(den.clone())).to_integer()).unwrap())
            .collect();
        Self::new(datum, dp, &dq_n, mu)
    }

    /// `Sigma - Sigma_P`: negative roots outside the Levi of `P`.
    pub fn unipotent_of_p(&self, datum: &RootDatum) -> Vec<Root> {
        datum.roots().iter().filter(|r| !datum.is_positive(r) && !datum.in_span_of(r, &self.dp)).cloned().collect()
    }

    /// `Sigma - Sigma_Q = {g : <mu, g> < 0}`.
    pub fn unipotent_of_q(&self, datum: &RootDatum) -> Vec<Root> {
        datum.roots().iter().filter(|r| dot(&self.mu, r) < 0).cloned().collect()
    }

    /// `dim G/Q = #{g : <mu, g> > 0}`.
    pub fn dim_g_over_q(&self, datum: &RootDatum) -> usize {
        datum.roots().iter().filter(|r| dot(&self.mu, r) > 0).count()
    }

    pub fn in_wpq(&self, datum: &RootDatum, w: &WeylElement) -> bool {
        let wi = w.inverse();
        self.dp.iter().all(|&i| datum.is_positive(&wi.act(&datum.simple_roots()[i])))
            && self.dq.iter().all(|&i| datum.is_positive(&w.act(&datum.simple_roots()[i])))
    }

    fn require_wpq(&self, datum: &RootDatum, w: &WeylElement) -> Result<()> {
        if w.perm.len() != datum.ambient_dim() {
            return Err(Error::domain("Weyl element has the wrong size"));
        }
        if !self.in_wpq(datum, w) {
            return Err(Error::domain(format!("{w} is not in W_PQ")));
        }
        Ok(())
    }
}

fn rank_guard(datum: &RootDatum) -> Result<()> {
    if datum.rank() > MAX_WPQ_RANK {
        return Err(Error::size(format!("rank {} exceeds {MAX_WPQ_RANK}", datum.rank())));
    }
    Ok(())
}

/// `{w : w^{-1} Delta_P > 0, w Delta_Q > 0}`, sorted.
pub fn wpq_enumerate(datum: &RootDatum, pair: &ParabolicPair) -> Result<Vec<WeylElement>> {
    rank_guard(datum)?;
    Ok(datum.weyl_group().into_iter().filter(|w| pair.in_wpq(datum, w)).collect())
}

/// The double cosets `W_P w W_Q`, each sorted, by brute-force partition of `W`.
pub fn double_cosets(datum: &RootDatum, dp: &[usize], dq: &[usize]) -> Result<Vec<Vec<WeylElement>>> {
    rank_guard(datum)?;
    let wp = datum.parabolic_subgroup(dp);
    let wq = datum.parabolic_subgroup(dq);
    let mut assigned: HashSet<WeylElement> = HashSet::new();
    let mut out = Vec::new();
    for w in datum.weyl_group() {
        if assigned.contains(&w) {
            continue;
        }
        let mut coset: Vec<WeylElement> = wp
            .iter()
            .flat_map(|p| {
                let pw = p.compose(&w);
                wq.iter().map(move |q| pw.compose(q))
            })
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        coset.sort();
        assigned.extend(coset.iter().cloned());
        out.push(coset);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootLemmaReport {
    pub length: usize,
    /// `#{b in Sigma - Sigma_Q : w b > 0}`.
    pub source_size: usize,
    /// `#{a in Sigma - Sigma_P : w^{-1} a > 0}`.
    pub target_size: usize,
    pub part_i: bool,
    pub part_ii: bool,
    pub bijection: bool,
    pub holds: bool,
}

/// Checks parts (i)-(iii): the two membership equivalences, the bijection
/// `x -> -w x` and that both sets have `l(w)` elements.
pub fn root_lemma_check(datum: &RootDatum, w: &WeylElement, pair: &ParabolicPair) -> Result<RootLemmaReport> {
    pair.require_wpq(datum, w)?;
    let wi = w.inverse();
    let not_p = pair.unipotent_of_p(datum);
    let not_q = pair.unipotent_of_q(datum);
    let in_not_p = |r: &Root| datum.is_positive(&neg(r)) && !datum.in_span_of(r, &pair.dp);
    let in_not_q = |r: &Root| dot(&pair.mu, r) < 0;
    let part_i = not_q.iter().all(|b| datum.is_positive(&w.act(b)) == in_not_p(&neg(&w.act(b))));
    let part_ii = not_p.iter().all(|a| datum.is_positive(&wi.act(a)) == in_not_q(&neg(&wi.act(a))));
    let source: Vec<Root> = not_q.iter().filter(|b| datum.is_positive(&w.act(b))).cloned().collect();
    let target: HashSet<Root> = not_p.iter().filter(|a| datum.is_positive(&wi.act(a))).cloned().collect();
    let image: HashSet<Root> = source.iter().map(|b| neg(&w.act(b))).collect();
    let bijection = image.len() == source.len() && image == target;
    let length = datum.length(w);
    let holds = part_i && part_ii && bijection && source.len() == length && target.len() == length;
    Ok(RootLemmaReport { length, source_size: source.len(), target_size: target.len(), part_i, part_ii, bijection, holds })
}

fn neg(r: &[i64]) -> Root {
    r.iter().map(|x| -x).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BadMode {
    /// `sum_{g in Sigma - Sigma_P} <w mu, g> = 0`.
    Aggregate,
    /// Every Levi block of `P` carries the global weight of `w mu`.
    ExactBlocks,
}

/// Blocks of coordinates cut out by the Levi of `P`. For type C the block
/// joined to the long simple root is symplectic and carries no condition,
/// so it is omitted.
fn levi_blocks(datum: &RootDatum, dp: &[usize]) -> Vec<Vec<usize>> {
    let n = datum.ambient_dim();
    let mut blocks = vec![vec![0]];
    for i in 1..n {
        if dp.contains(&(i - 1)) {
            blocks.last_mut().unwrap().push(i);
        } else {
            blocks.push(vec![i]);
        }
    }
    if datum.kind() == RootType::C && dp.contains(&(datum.rank() - 1)) {
        blocks.pop();
    }
    blocks
}

pub fn is_bad(datum: &RootDatum, w: &WeylElement, pair: &ParabolicPair, mode: BadMode) -> Result<bool> {
    pair.require_wpq(datum, w)?;
    let wmu = w.act(&pair.mu);
    match mode {
        BadMode::Aggregate => Ok(pair.unipotent_of_p(datum).iter().map(|g| dot(&wmu, g)).sum::<i64>() == 0),
        BadMode::ExactBlocks => {
            let (total, count) = match datum.kind() {
                RootType::A => (wmu.iter().sum::<i64>(), wmu.len() as i64),
                RootType::C => (0, 1),
                k => return Err(Error::Unsupported(format!("exact-blocks mode is defined for types A and C, not {k:?}"))),
            };
            Ok(levi_blocks(datum, &pair.dp)
                .iter()
                .all(|b| b.iter().map(|&i| wmu[i]).sum::<i64>() * count == total * b.len() as i64))
        }
    }
}

/// `dim(G/Q) - #X` with `X = {b in Sigma - Sigma_P : <mu, w^{-1} b> > 0}`.
pub fn fiber_codim(datum: &RootDatum, w: &WeylElement, pair: &ParabolicPair) -> Result<usize> {
    pair.require_wpq(datum, w)?;
    let wi = w.inverse();
    let x = pair.unipotent_of_p(datum).iter().filter(|b| dot(&pair.mu, &wi.act(b)) > 0).count();
    Ok(pair.dim_g_over_q(datum) - x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(k: usize) -> RootDatum {
        RootDatum::new(RootType::A, k).unwrap()
    }

    #[test]
    fn pair_validation() {
        let a2 = a(2);
        assert!(ParabolicPair::new(&a2, &[0], &[1], vec![1, 0, 0]).is_ok());
        assert!(ParabolicPair::new(&a2, &[0], &[1], vec![1, 1, 0]).is_err());
        assert!(ParabolicPair::new(&a2, &[3], &[], vec![2, 1, 0]).is_err());
        let p = ParabolicPair::from_mu(&a2, &[], vec![3, 3, -1]).unwrap();
        assert_eq!(p.dq, vec![0]);
        for kind in [RootType::A, RootType::B, RootType::C, RootType::D] {
            let r = RootDatum::new(kind, 3).unwrap();
            for dq in [vec![], vec![0], vec![1, 2], vec![0, 1, 2]] {
                let p = ParabolicPair::with_default_mu(&r, &[], &dq).unwrap();
                assert_eq!(p.dq, dq);
            }
        }
    }

    #[test]
    fn a1_examples() {
        let a1 = a(1);
        let p = ParabolicPair::new(&a1, &[], &[], vec![1, -1]).unwrap();
        let w = wpq_enumerate(&a1, &p).unwrap();
        assert_eq!(w.len(), 2);
        for x in &w {
            assert!(!is_bad(&a1, x, &p, BadMode::Aggregate).unwrap());
            assert!(!is_bad(&a1, x, &p, BadMode::ExactBlocks).unwrap());
        }
        let zero = ParabolicPair::new(&a1, &[], &[0], vec![0, 0]).unwrap();
        let id = WeylElement::identity(2);
        assert!(is_bad(&a1, &id, &zero, BadMode::Aggregate).unwrap());
        assert!(is_bad(&a1, &id, &zero, BadMode::ExactBlocks).unwrap());
    }

    #[test]
    fn a2_double_cosets() {
        let a2 = a(2);
        let p = ParabolicPair::with_default_mu(&a2, &[0], &[1]).unwrap();
        let reps = wpq_enumerate(&a2, &p).unwrap();
        assert_eq!(reps.len(), 2);
        assert_eq!(double_cosets(&a2, &[0], &[1]).unwrap().len(), 2);
        let longest = reps.iter().max_by_key(|w| a2.length(w)).unwrap();
        let r = root_lemma_check(&a2, longest, &p).unwrap();
        assert!(r.holds);
        assert_eq!(r.length, 2);
        let id = root_lemma_check(&a2, &WeylElement::identity(3), &p).unwrap();
        assert_eq!((id.length, id.source_size, id.target_size), (0, 0, 0));
    }

    #[test]
    fn outside_wpq_rejected() {
        let a2 = a(2);
        let p = ParabolicPair::with_default_mu(&a2, &[0], &[]).unwrap();
        let s1 = a2.simple_reflection(0);
        assert!(!p.in_wpq(&a2, &s1));
        assert!(root_lemma_check(&a2, &s1, &p).is_err());
        assert!(fiber_codim(&a2, &s1, &p).is_err());
        let b2 = RootDatum::new(RootType::B, 2).unwrap();
        let p = ParabolicPair::with_default_mu(&b2, &[], &[]).unwrap();
        assert!(matches!(
            is_bad(&b2, &WeylElement::identity(2), &p, BadMode::ExactBlocks),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn codim_identity_and_regular_a2() {
        let a2 = a(2);
        let p = ParabolicPair::new(&a2, &[], &[], vec![2, 1, 0]).unwrap();
        assert_eq!(p.dim_g_over_q(&a2), 3);
        for w in wpq_enumerate(&a2, &p).unwrap() {
            assert_eq!(fiber_codim(&a2, &w, &p).unwrap(), 3 - a2.length(&w));
        }
        assert_eq!(fiber_codim(&a2, &WeylElement::identity(3), &p).unwrap(), 3);
    }
}
