//! The affine group `Aff(q)`, its commutator-product fibers, orbit-size
//! statistics, and the search for the auxiliary prime and Frobenius residue
//! used with Kodaira-Parshin families.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::Rng as _;
use serde::Serialize;

use crate::algebra::intmat::kernel_size_mod;
use crate::algebra::rational::{frac, int, is_prime, mult_order, prime_factors, Rational};
use crate::error::{Error, Result};
use crate::rng::Rng;

/// Default orbit-size threshold.
pub const DEFAULT_ORBIT_CONSTANT: u64 = 5;
/// Largest `|Aff(q)|^{2s}` enumerated by [`com_fiber_census`].
pub const COM_FIBER_BUDGET: u64 = 100_000_000;
/// Largest `N^{2g}` enumerated by [`frobenius_orbit_census`].
pub const ORBIT_CENSUS_BUDGET: u64 = 10_000_000;
/// Search cap for [`find_kp_prime`].
pub const KP_PRIME_CAP: u64 = 1_000_000;

/// The map `x -> a x + b` on `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffElem {
    pub a: u64,
    pub b: u64,
}

/// `Aff(q)` for a prime `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffGroup {
    q: u64,
}

impl AffGroup {
    pub fn new(q: u64) -> Result<Self> {
        if q < 3 || !is_prime(q) {
            return Err(Error::domain(format!("Aff(q) needs a prime q >= 3, got {q}")));
        }
        Ok(AffGroup { q })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn order(&self) -> u64 {
        self.q * (self.q - 1)
    }

    pub fn identity(&self) -> AffElem {
        AffElem { a: 1, b: 0 }
    }

    pub fn elements(&self) -> impl Iterator<Item = AffElem> + '_ {
        (1..self.q).flat_map(move |a| (0..self.q).map(move |b| AffElem { a, b }))
    }

    /// `(g h)(x) = g(h(x))`.
    pub fn compose(&self, g: AffElem, h: AffElem) -> AffElem {
        let q = self.q;
        AffElem { a: g.a * h.a % q, b: (g.a * h.b + g.b) % q }
    }

    pub fn inverse(&self, g: AffElem) -> AffElem {
        let q = self.q;
        let ai = crate::algebra::rational::pow_mod(g.a, q - 2, q);
        AffElem { a: ai, b: (q - ai * g.b % q) % q }
    }

    pub fn apply(&self, g: AffElem, x: u64) -> u64 {
        (g.a * x + g.b) % self.q
    }

    /// `x y x^{-1} y^{-1}`.
    pub fn commutator(&self, x: AffElem, y: AffElem) -> AffElem {
        let c = self.compose(self.compose(x, y), self.compose(self.inverse(x), self.inverse(y)));
        debug_assert_eq!(c.a, 1);
        c
    }

    fn index(&self, g: AffElem) -> usize {
        ((g.a - 1) * self.q + g.b) as usize
    }

    /// Whether the elements generate the whole group, by closure.
    pub fn generates(&self, gens: &[AffElem]) -> bool {
        let mut seen = vec![false; self.order() as usize];
        let id = self.identity();
        seen[self.index(id)] = true;
        let mut stack = vec![id];
        let mut count = 1u64;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.compose(x, g);
                let i = self.index(y);
                if !seen[i] {
                    seen[i] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.order()
    }
}

/// Whether the units `ys` generate `F_q^*`.
pub fn generates_units(q: u64, ys: &[u64]) -> bool {
    // the subgroup generated has order lcm of element orders in a cyclic group
    let l = ys.iter().fold(1u64, |acc, &y| acc.lcm(&mult_order(y, q).unwrap_or(1)));
    l == q - 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComFiberCensus {
    pub q: u64,
    pub s: u64,
    /// Fiber size above each point of the image, keyed by the unit tuple.
    #[serde(serialize_with = "fiber_list")]
    pub fibers: BTreeMap<Vec<u64>, u64>,
    pub expected_fiber: u64,
    pub image_is_generating_tuples: bool,
    pub fibers_uniform: bool,
}

fn fiber_list<S: serde::Serializer>(m: &BTreeMap<Vec<u64>, u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Fiber<'a> {
        units: &'a [u64],
        size: u64,
    }
    s.collect_seq(m.iter().map(|(k, v)| Fiber { units: k, size: *v }))
}

impl ComFiberCensus {
    pub fn image(&self) -> impl Iterator<Item = &Vec<u64>> {
        self.fibers.keys()
    }

    /// Turns a failed check into a lemma-violation error.
    pub fn verify(&self) -> Result<()> {
        if !self.image_is_generating_tuples {
            return Err(Error::LemmaViolation(format!("q={} s={}: image differs from generating tuples", self.q, self.s)));
        }
        if !self.fibers_uniform {
            return Err(Error::LemmaViolation(format!(
                "q={} s={}: fiber sizes differ from {}",
                self.q, self.s, self.expected_fiber
            )));
        }
        Ok(())
    }
}

/// Enumerates `Aff(q)^{2s}`, keeps tuples whose commutator product is a
/// nonzero translation and which generate the group, and tallies them by
/// their image in `(F_q^*)^{2s}`.
pub fn com_fiber_census(q: u64, s: u64) -> Result<ComFiberCensus> {
    let group = AffGroup::new(q)?;
    if s == 0 {
        return Err(Error::domain("need s >= 1"));
    }
    let len = 2 * s as usize;
    let work = (group.order() as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if work > COM_FIBER_BUDGET as u128 {
        return Err(Error::size(format!("|Aff({q})|^{len} = {work} exceeds the enumeration budget {COM_FIBER_BUDGET}")));
    }
    let elems: Vec<AffElem> = group.elements().collect();
    let mut fibers: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    let mut idx = vec![0usize; len];
    loop {
        let tuple: Vec<AffElem> = idx.iter().map(|&i| elems[i]).collect();
        let f = tuple
            .chunks(2)
            .fold(group.identity(), |acc, pair| group.compose(acc, group.commutator(pair[0], pair[1])));
        if f.b != 0 && group.generates(&tuple) {
            *fibers.entry(tuple.iter().map(|g| g.a).collect()).or_insert(0) += 1;
        }
        // odometer
        let mut k = 0;
        while k < len {
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == len {
            break;
        }
    }
    let generating: BTreeSet<Vec<u64>> = unit_tuples(q, len).filter(|t| generates_units(q, t)).collect();
    let image: BTreeSet<Vec<u64>> = fibers.keys().cloned().collect();
    let expected_fiber = q.pow(len as u32 - 1) * (q - 1);
    let fibers_uniform = fibers.values().all(|&c| c == expected_fiber);
    Ok(ComFiberCensus { q, s, image_is_generating_tuples: image == generating, fibers_uniform, fibers, expected_fiber })
}

fn unit_tuples(q: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = (q - 1).pow(len as u32);
    (0..total).map(move |mut code| {
        let mut t = vec![0; len];
        for x in t.iter_mut() {
            *x = code % (q - 1) + 1;
            code /= q - 1;
        }
        t
    })
}

/// Multiset of Frobenius orbit sizes on a finite Galois set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitProfile {
    pub sizes: Vec<u64>,
}

impl OrbitProfile {
    pub fn new(sizes: Vec<u64>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::domain("orbit profile needs at least one orbit and positive sizes"));
        }
        Ok(OrbitProfile { sizes })
    }

    pub fn total(&self) -> u64 {
        self.sizes.iter().sum()
    }
}

/// Fraction of elements lying in orbits of size below `threshold`.
pub fn size_v(profile: &OrbitProfile, threshold: u64) -> Result<Rational> {
    if threshold == 0 {
        return Err(Error::domain("threshold must be >= 1"));
    }
    if profile.sizes.is_empty() {
        return Err(Error::domain("empty orbit profile"));
    }
    let small: u64 = profile.sizes.iter().filter(|&&x| x < threshold).sum();
    Ok(Rational::new(BigInt::from(small), BigInt::from(profile.total())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KpSizeBound {
    #[serde(serialize_with = "crate::ser::rat")]
    pub bound: Rational,
    #[serde(serialize_with = "crate::ser::rat")]
    pub target: Rational,
    pub holds: bool,
}

/// `c 2^{g+1} / (q-1)^g` against `1 / ((g - 1/2)(q-1) + 1)`.
pub fn kp_size_bound(g: u64, q: u64, c: u64) -> Result<KpSizeBound> {
    if g < 2 || q < 3 {
        return Err(Error::domain(format!("need g >= 2 and q >= 3, got g={g}, q={q}")));
    }
    let qm = BigInt::from(q - 1);
    let bound = Rational::new(BigInt::from(c) * BigInt::from(2).pow(g as u32 + 1), qm.pow(g as u32));
    let dq = (int(g as i64) - frac(1, 2)) * Rational::from_integer(qm);
    let target = (dq + int(1)).recip();
    Ok(KpSizeBound { holds: bound < target, bound, target })
}

/// `N^len prod_{p | N} (1 - p^{-len})`, the number of `len`-tuples in `Z/N`
/// generating `Z/N`.
pub fn generating_tuple_count(n: u64, len: u32) -> BigInt {
    let mut count = BigInt::from(n).pow(len);
    for p in prime_factors(n) {
        let pl = BigInt::from(p).pow(len);
        count = count * (&pl - 1u32) / pl;
    }
    count
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KpParams {
    pub g: u64,
    #[serde(rename = "degK")]
    pub deg_k: u64,
    pub c: u64,
    pub q: u64,
    pub forbidden_primes: Vec<u64>,
    pub size_bound: KpSizeBound,
}

impl KpParams {
    /// Re-checks conditions (i) and (iii) and the forbidden-prime filter.
    pub fn is_valid(&self) -> bool {
        kp_prime_ok(self.g, self.deg_k, self.c, &self.forbidden_primes, self.q)
    }
}

fn kp_prime_ok(g: u64, deg_k: u64, c: u64, forbidden: &[u64], q: u64) -> bool {
    if q < 3 || !is_prime(q) {
        return false;
    }
    let m = q - 1;
    if m % 4 == 0 {
        return false;
    }
    let limit = c.saturating_mul(deg_k);
    if prime_factors(m).into_iter().any(|r| r % 2 == 1 && r < limit) {
        return false;
    }
    if forbidden.iter().any(|&f| f > 1 && m % f == 0) {
        return false;
    }
    kp_size_bound(g, q, c).map(|b| b.holds).unwrap_or(false)
}

/// Least prime `q` satisfying the divisibility conditions, avoiding the
/// forbidden primes in `q-1`, and meeting the size inequality.
pub fn find_kp_prime(g: u64, deg_k: u64, c: u64, forbidden_primes: &[u64]) -> Result<KpParams> {
    if g < 2 {
        return Err(Error::domain(format!("genus must be >= 2, got {g}")));
    }
    if deg_k == 0 {
        return Err(Error::domain("field degree must be >= 1"));
    }
    let q = (3..=KP_PRIME_CAP)
        .find(|&q| kp_prime_ok(g, deg_k, c, forbidden_primes, q))
        .ok_or_else(|| Error::NotFound(format!("no admissible prime q <= {KP_PRIME_CAP}")))?;
    let mut forbidden = forbidden_primes.to_vec();
    forbidden.sort_unstable();
    forbidden.dedup();
    Ok(KpParams { g, deg_k, c, q, forbidden_primes: forbidden, size_bound: kp_size_bound(g, q, c)? })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueCheck {
    pub r: u64,
    pub order: u64,
    /// `ceil((r-1)/degK)`, the guaranteed order of `q_v = p^i`, `i <= degK`.
    pub guaranteed_order: u64,
    pub guaranteed_at_least_c: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaceResidue {
    pub q: u64,
    pub a: u64,
    pub checks: Vec<ResidueCheck>,
}

/// A unit `a` mod `q-1` that is a primitive root modulo every odd prime
/// factor of `q-1`, assembled by CRT from the least primitive roots.
pub fn find_place_residue(q: u64, c: u64, deg_k: u64) -> Result<PlaceResidue> {
    if q < 3 || !is_prime(q) {
        return Err(Error::domain(format!("q must be an odd prime, got {q}")));
    }
    if deg_k == 0 {
        return Err(Error::domain("field degree must be >= 1"));
    }
    let m = q - 1;
    let mut residue = 0u64;
    let mut modulus = 1u64;
    let mut checks = Vec::new();
    for r in prime_factors(m) {
        let mut pe = 1;
        while m % (pe * r) == 0 {
            pe *= r;
        }
        let target = if r == 2 {
            1
        } else {
            (2..r).find(|&x| mult_order(x, r) == Some(r - 1)).unwrap_or(1)
        };
        residue = crt(residue, modulus, target, pe);
        modulus *= pe;
    }
    let a = if m == 1 { 0 } else { residue % m };
    for r in prime_factors(m).into_iter().filter(|r| r % 2 == 1) {
        let order = mult_order(a % r, r).unwrap_or(0);
        let guaranteed_order = (r - 1).div_ceil(deg_k);
        checks.push(ResidueCheck { r, order, guaranteed_order, guaranteed_at_least_c: guaranteed_order >= c });
    }
    Ok(PlaceResidue { q, a, checks })
}

fn crt(a1: u64, m1: u64, a2: u64, m2: u64) -> u64 {
    // m1, m2 coprime
    let (a1, m1, a2, m2) = (a1 as i128, m1 as i128, a2 as i128, m2 as i128);
    let e = num_integer::Integer::extended_gcd(&m1, &m2);
    let m = m1 * m2;
    let t = ((a2 - a1) % m2 * e.x % m2 + m2) % m2;
    ((a1 + m1 * t) % m + m) as u64 % m as u64
}

/// Symplectic form on `(Z/N)^{2g}` in the basis `e_1..e_g, f_1..f_g` with
/// `<e_i, f_i> = 1`.
pub fn pairing(g: usize, n: u64, x: &[u64], y: &[u64]) -> u64 {
    let mut s = 0u64;
    for i in 0..g {
        s = (s + x[i] * y[g + i] % n + n - x[g + i] * y[i] % n) % n;
    }
    s
}

fn mat_vec(t: &[Vec<u64>], n: u64, x: &[u64]) -> Vec<u64> {
    t.iter().map(|row| row.iter().zip(x).fold(0, |acc, (a, b)| (acc + a * b) % n)).collect()
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], n: u64) -> Vec<Vec<u64>> {
    let k = b.len();
    let c = b[0].len();
    a.iter()
        .map(|row| (0..c).map(|j| (0..k).fold(0, |acc, l| (acc + row[l] * b[l][j]) % n)).collect())
        .collect()
}

/// Similitude multiplier `lambda` with `<Tx, Ty> = lambda <x, y>`, if any.
pub fn similitude_multiplier(g: usize, n: u64, t: &[Vec<u64>]) -> Option<u64> {
    let dim = 2 * g;
    let col = |j: usize| -> Vec<u64> { t.iter().map(|row| row[j]).collect() };
    let lambda = pairing(g, n, &col(0), &col(g));
    for i in 0..dim {
        for j in 0..dim {
            let mut ei = vec![0; dim];
            ei[i] = 1;
            let mut ej = vec![0; dim];
            ej[j] = 1;
            if pairing(g, n, &col(i), &col(j)) != lambda * pairing(g, n, &ei, &ej) % n {
                return None;
            }
        }
    }
    Some(lambda)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelEntry {
    pub i: u64,
    #[serde(serialize_with = "crate::ser::big")]
    pub size: BigInt,
    /// Whether the hypotheses for the bound `2^g N^g` hold at this `i`.
    pub bound_applies: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitCensus {
    pub g: u64,
    pub n: u64,
    pub multiplier: u64,
    #[serde(serialize_with = "crate::ser::big")]
    pub kernel_bound: BigInt,
    pub kernel_sizes: Vec<KernelEntry>,
    pub small_orbit_mass: u64,
    #[serde(serialize_with = "crate::ser::big")]
    pub mass_bound: BigInt,
}

/// Kernels of `T^i - 1` over `Z/N` for `1 <= i < c` and the number of
/// elements in `T`-orbits of size below `c`.
///
/// The bound `|ker(T^i - 1)| <= 2^g N^g` is asserted only when `4` does not
/// divide `N` and `lambda^i` is not `1` modulo any odd prime factor of `N`.
pub fn frobenius_orbit_census(g: u64, n: u64, t: &[Vec<u64>], c: u64) -> Result<OrbitCensus> {
    let dim = 2 * g as usize;
    if g == 0 || n < 2 {
        return Err(Error::domain("need g >= 1 and N >= 2"));
    }
    if t.len() != dim || t.iter().any(|r| r.len() != dim) {
        return Err(Error::domain(format!("T must be {dim}x{dim}")));
    }
    let cells = (n as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if cells > ORBIT_CENSUS_BUDGET as u128 {
        return Err(Error::size(format!("N^(2g) = {cells} exceeds the census budget {ORBIT_CENSUS_BUDGET}")));
    }
    let t: Vec<Vec<u64>> = t.iter().map(|r| r.iter().map(|x| x % n).collect()).collect();
    if !kernel_size_mod(&t, n).is_one() {
        return Err(Error::domain(format!("T is not invertible mod {n}")));
    }
    let lambda = similitude_multiplier(g as usize, n, &t)
        .ok_or_else(|| Error::domain("T does not preserve the symplectic pairing up to a scalar"))?;
    let odd_primes: Vec<u64> = prime_factors(n).into_iter().filter(|r| r % 2 == 1).collect();
    let kernel_bound = BigInt::from(2u64 * n).pow(g as u32);
    let mut kernel_sizes = Vec::new();
    let mut power = t.clone();
    for i in 1..c {
        let mut shifted = power.clone();
        for (k, row) in shifted.iter_mut().enumerate() {
            row[k] = (row[k] + n - 1) % n;
        }
        let size = kernel_size_mod(&shifted, n);
        let bound_applies = n % 4 != 0
            && odd_primes.iter().all(|&r| crate::algebra::rational::pow_mod(lambda % r, i, r) != 1);
        if bound_applies && size > kernel_bound {
            return Err(Error::LemmaViolation(format!("|ker(T^{i} - 1)| = {size} exceeds 2^g N^g = {kernel_bound}")));
        }
        kernel_sizes.push(KernelEntry { i, size, bound_applies });
        power = mat_mul(&power, &t, n);
    }
    let small_orbit_mass = small_orbit_mass(&t, n, c);
    let mass_bound = BigInt::from(c) * &kernel_bound;
    if kernel_sizes.iter().all(|k| k.bound_applies) && BigInt::from(small_orbit_mass) > mass_bound {
        return Err(Error::LemmaViolation(format!("small-orbit mass {small_orbit_mass} exceeds {mass_bound}")));
    }
    Ok(OrbitCensus { g, n, multiplier: lambda, kernel_bound, kernel_sizes, small_orbit_mass, mass_bound })
}

fn small_orbit_mass(t: &[Vec<u64>], n: u64, c: u64) -> u64 {
    let dim = t.len();
    let total = n.pow(dim as u32);
    let mut count = 0;
    for code in 0..total {
        let mut x = vec![0u64; dim];
        let mut k = code;
        for v in x.iter_mut() {
            *v = k % n;
            k /= n;
        }
        let mut y = x.clone();
        for _ in 1..c {
            y = mat_vec(t, n, &y);
            if y == x {
                count += 1;
                break;
            }
        }
    }
    count
}

/// The similitude `e_i -> e_i, f_i -> lambda f_i`.
pub fn diagonal_similitude(g: usize, n: u64, lambda: u64) -> Vec<Vec<u64>> {
    let dim = 2 * g;
    (0..dim)
        .map(|i| (0..dim).map(|j| if i != j { 0 } else if i < g { 1 % n } else { lambda % n }).collect())
        .collect()
}

/// A random similitude with multiplier `lambda`: the diagonal similitude
/// followed by `steps` random transvections `x -> x + r <v, x> v`.
pub fn random_similitude(g: usize, n: u64, lambda: u64, steps: usize, rng: &mut Rng) -> Vec<Vec<u64>> {
    let dim = 2 * g;
    let mut t = diagonal_similitude(g, n, lambda);
    for _ in 0..steps {
        let v: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..n)).collect();
        let r = rng.gen_range(0..n);
        // transvection matrix: column j is e_j + r <v, e_j> v
        let tv: Vec<Vec<u64>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let mut ej = vec![0; dim];
                        ej[j] = 1;
                        let delta = u64::from(i == j);
                        (delta + r * pairing(g, n, &v, &ej) % n * v[i]) % n
                    })
                    .collect()
            })
            .collect();
        t = mat_mul(&tv, &t, n);
    }
    t
}
