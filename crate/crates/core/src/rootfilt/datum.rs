use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::field::Rationals;
use crate::algebra::matrix::Matrix;
use crate::algebra::rational::int;
use crate::error::{Error, Result};

pub type Root = Vec<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
}

/// A classical root system realised in its standard lattice: `Z^{k+1}` for
/// `A_k`, `Z^k` otherwise.
#[derive(Debug, Clone)]
pub struct RootDatum {
    kind: RootType,
    rank: usize,
    roots: Vec<Root>,
    positive: Vec<Root>,
    simple: Vec<Root>,
    positive_set: HashSet<Root>,
    simple_coords: HashMap<Root, Vec<i64>>,
}

fn unit(n: usize, i: usize, c: i64) -> Root {
    let mut v = vec![0; n];
    v[i] = c;
    v
}

fn add(a: &[i64], b: &[i64]) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[i64]) -> Root {
    a.iter().map(|x| -x).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootDatum {
    pub fn new(kind: RootType, rank: usize) -> Result<Self> {
        let min = if kind == RootType::D { 2 } else { 1 };
        if rank < min {
            return Err(Error::domain(format!("{kind:?}{rank} is not a root system")));
        }
        let n = if kind == RootType::A { rank + 1 } else { rank };
        let e = |i: usize| unit(n, i, 1);
        let mut positive = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                positive.push(add(&e(i), &neg(&e(j))));
                if kind != RootType::A {
                    positive.push(add(&e(i), &e(j)));
                }
            }
            match kind {
                RootType::B => positive.push(e(i)),
                RootType::C => positive.push(unit(n, i, 2)),
                _ => {}
            }
        }
        let mut simple: Vec<Root> = (0..n - 1).map(|i| add(&e(i), &neg(&e(i + 1)))).collect();
        match kind {
            RootType::A => {}
            RootType::B => simple.push(e(n - 1)),
            RootType::C => simple.push(unit(n, n - 1, 2)),
            RootType::D => simple.push(add(&e(n - 2), &e(n - 1))),
        }
        // coordinates of each root in the simple basis
        let cols: Vec<Vec<_>> = simple.iter().map(|s| s.iter().map(|&x| int(x)).collect()).collect();
        let basis = Matrix::from_cols(&cols)?;
        let mut simple_coords = HashMap::new();
        for p in &positive {
            let target: Vec<_> = p.iter().map(|&x| int(x)).collect();
            let c = basis
                .solve(&Rationals, &target)
                .ok_or_else(|| Error::Internal(format!("root {p:?} outside the simple span")))?;
            let c: Vec<i64> = c
                .iter()
                .map(|x| {
                    if x.is_integer() && *x.numer() >= 0.into() {
                        Ok(i64::try_from(x.to_integer()).unwrap())
                    } else {
                        Err(Error::Internal(format!("root {p:?} is not a nonnegative simple combination")))
                    }
                })
                .collect::<Result<_>>()?;
            simple_coords.insert(neg(p), c.iter().map(|x| -x).collect());
            simple_coords.insert(p.clone(), c);
        }
        positive.sort();
        let mut roots: Vec<Root> = positive.iter().cloned().chain(positive.iter().map(|p| neg(p))).collect();
        roots.sort();
        let positive_set = positive.iter().cloned().collect();
        Ok(RootDatum { kind, rank, roots, positive, simple, positive_set, simple_coords })
    }

    pub fn kind(&self) -> RootType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the lattice the roots live in, also `dim T`.
    pub fn ambient_dim(&self) -> usize {
        self.simple[0].len()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.simple
    }

    pub fn is_positive(&self, r: &[i64]) -> bool {
        self.positive_set.contains(r)
    }

    pub fn simple_coords(&self, r: &[i64]) -> Option<&[i64]> {
        self.simple_coords.get(r).map(|v| v.as_slice())
    }

    /// Whether `r` lies in the span of the simple roots indexed by `subset`.
    pub fn in_span_of(&self, r: &[i64], subset: &[usize]) -> bool {
        self.simple_coords(r)
            .map(|c| c.iter().enumerate().all(|(i, &x)| x == 0 || subset.contains(&i)))
            .unwrap_or(false)
    }

    pub fn classical_root_count(kind: RootType, k: usize) -> usize {
        match kind {
            RootType::A => k * (k + 1),
            RootType::B | RootType::C => 2 * k * k,
            RootType::D => 2 * k * (k - 1),
        }
    }

    pub fn weyl_order(&self) -> u64 {
        let k = self.rank as u64;
        let fact: u64 = (1..=k).product();
        match self.kind {
            RootType::A => fact * (k + 1),
            RootType::B | RootType::C => fact << k,
            RootType::D => fact << (k - 1),
        }
    }

    /// Every element of the Weyl group, as (signed) permutations.
    pub fn weyl_group(&self) -> Vec<WeylElement> {
        let n = self.ambient_dim();
        let mut out = Vec::new();
        for perm in permutations(n) {
            if self.kind == RootType::A {
                out.push(WeylElement { perm, signs: vec![1; n] });
                continue;
            }
            for mask in 0..(1u32 << n) {
                if self.kind == RootType::D && mask.count_ones() % 2 == 1 {
                    continue;
                }
                let signs = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                out.push(WeylElement { perm: perm.clone(), signs });
            }
        }
        out
    }

    /// The reflection in the simple root with index `i`.
    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        WeylElement::reflection(&self.simple[i])
    }

    /// `#{a > 0 : w a < 0}`.
    pub fn length(&self, w: &WeylElement) -> usize {
        self.positive.iter().filter(|a| !self.is_positive(&w.act(a))).count()
    }

    /// Subgroup generated by the simple reflections indexed by `subset`.
    pub fn parabolic_subgroup(&self, subset: &[usize]) -> Vec<WeylElement> {
        let gens: Vec<WeylElement> = subset.iter().map(|&i| self.simple_reflection(i)).collect();
        let id = WeylElement::identity(self.ambient_dim());
        let mut seen: HashSet<WeylElement> = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let mut out: Vec<WeylElement> = seen.into_iter().collect();
        out.sort();
        out
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

impl FromStr for RootDatum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let kind = match s.chars().next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => RootType::A,
            Some('B') => RootType::B,
            Some('C') => RootType::C,
            Some('D') => RootType::D,
            _ => return Err(Error::Parse(format!("unknown root system {s:?}"))),
        };
        let rank = s[1..].parse().map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        RootDatum::new(kind, rank)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// `e_i -> signs[i] e_{perm[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeylElement {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement { perm: (0..n).collect(), signs: vec![1; n] }
    }

    /// `v -> v - 2 (v.a)/(a.a) a`; `a` must be a root of a classical system.
    pub fn reflection(a: &[i64]) -> Self {
        let n = a.len();
        let aa = dot(a, a);
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            let img: Vec<i64> = (0..n).map(|j| if i == j { 1 } else { 0 } * aa - 2 * a[i] * a[j]).collect();
            let (j, c) = img.iter().enumerate().find(|(_, c)| **c != 0).unwrap();
            perm[i] = j;
            signs[i] = (c / aa) as i8;
        }
        WeylElement { perm, signs }
    }

    pub fn act(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (i, x) in v.iter().enumerate() {
            out[self.perm[i]] = self.signs[i] as i64 * x;
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.perm.len();
        let perm = (0..n).map(|i| self.perm[other.perm[i]]).collect();
        let signs = (0..n).map(|i| other.signs[i] * self.signs[other.perm[i]]).collect();
        WeylElement { perm, signs }
    }

    pub fn inverse(&self) -> WeylElement {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        WeylElement { perm, signs }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .perm
            .iter()
            .zip(&self.signs)
            .map(|(p, s)| format!("{}{}", if *s < 0 { "-" } else { "" }, p + 1))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (kind, k) in [(RootType::A, 1), (RootType::A, 4), (RootType::B, 2), (RootType::B, 3), (RootType::C, 3), (RootType::D, 4)] {
            let r = RootDatum::new(kind, k).unwrap();
            assert_eq!(r.roots().len(), RootDatum::classical_root_count(kind, k));
            assert_eq!(r.simple_roots().len(), k);
            assert!(r.simple_roots().iter().all(|s| r.is_positive(s)));
            assert_eq!(r.weyl_group().len() as u64, r.weyl_order());
        }
        assert!(RootDatum::new(RootType::D, 1).is_err());
        assert!("E6".parse::<RootDatum>().is_err());
        assert_eq!("c2".parse::<RootDatum>().unwrap().to_string(), "C2");
    }

    #[test]
    fn reflections_and_composition() {
        let c2 = RootDatum::new(RootType::C, 2).unwrap();
        let s1 = c2.simple_reflection(0);
        let s2 = c2.simple_reflection(1);
        assert_eq!(s1.act(&[1, 0]), vec![0, 1]);
        assert_eq!(s2.act(&[1, 1]), vec![1, -1]);
        assert!(s1.compose(&s1).is_identity());
        let w = s1.compose(&s2);
        assert_eq!(w.act(&[3, 5]), s1.act(&s2.act(&[3, 5])));
        assert!(w.compose(&w.inverse()).is_identity());
        assert_eq!(c2.length(&w), 2);
        // longest element is -1
        let w0 = WeylElement { perm: vec![0, 1], signs: vec![-1, -1] };
        assert_eq!(c2.length(&w0), 4);
        let d3 = RootDatum::new(RootType::D, 3).unwrap();
        let s = d3.simple_reflection(2);
        assert_eq!(s.act(&[1, 2, 3]), vec![1, -3, -2]);
    }

    #[test]
    fn parabolic_subgroup_orders() {
        let a3 = RootDatum::new(RootType::A, 3).unwrap();
        assert_eq!(a3.parabolic_subgroup(&[]).len(), 1);
        assert_eq!(a3.parabolic_subgroup(&[0, 2]).len(), 4);
        assert_eq!(a3.parabolic_subgroup(&[0, 1, 2]).len(), 24);
    }
}
