//! Exhaustive ground truth on small finite abelian groups.
//!
//! Everything here works from definitions by enumeration: elements of the
//! group, elements of `End(G)`, the Jacobson radical by the
//! `1 + r·x·s is a unit` quantifier, nilpotency by iterating images. The
//! structural algorithms elsewhere in the crate are tested against it.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::abgroup::{gcd, ulm_kaplansky, CyclicSum, FgAbGroup, PrimaryComponent};
use crate::error::AlgebraError;
use crate::homs::{lu_factorize, BlockMap, Homomorphism};
use crate::matrix::Matrix;

/// Enumeration limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest group order that may be enumerated.
    pub max_order: u64,
    /// Largest endomorphism ring that may be enumerated.
    pub max_end: u64,
    /// Largest number of `(h, g)` hom pairs in composite searches.
    pub max_hom_pairs: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_order: 64,
            max_end: 65_536,
            max_hom_pairs: 65_536,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} has size {size}, above the enumeration bound {bound}")]
    BoundExceeded { what: &'static str, size: u64, bound: u64 },
    #[error("enumeration needs a finite group, got {0}")]
    Infinite(CyclicSum),
    #[error("presentation has {0} generators; at most {MAX_GENS} are supported")]
    TooManyGenerators(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

const MAX_GENS: usize = 8;
type Entries = [u32; MAX_GENS * MAX_GENS];
/// Rings at most this large get a precomputed unit table.
const UNIT_TABLE_LIMIT: u64 = 1 << 18;

/// Elements of a finite presentation in mixed-radix order, as coordinate vectors.
pub fn elements(g: &CyclicSum) -> Vec<Vec<i64>> {
    assert!(g.is_finite(), "element enumeration needs a finite group");
    let mut out = vec![Vec::new()];
    for &o in g.orders() {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..o as i64).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn element_order(g: &CyclicSum, x: &[i64]) -> u64 {
    g.orders()
        .iter()
        .zip(x)
        .map(|(&o, &c)| o / gcd(o, c as u64))
        .fold(1, |acc, k| acc / gcd(acc, k) * k)
}

/// Isomorphism test by census: finite abelian groups are isomorphic iff
/// they have the same number of elements of each order.
pub fn isomorphic_by_census(a: &CyclicSum, b: &CyclicSum) -> bool {
    let census = |g: &CyclicSum| {
        let mut m: BTreeMap<u64, u64> = BTreeMap::new();
        for x in elements(g) {
            *m.entry(element_order(g, &x)).or_default() += 1;
        }
        m
    };
    census(a) == census(b)
}

/// Number of homomorphisms `a → b`: each generator of order `o` may go to
/// any element killed by `o`.
pub fn count_homs(a: &CyclicSum, b: &CyclicSum) -> u64 {
    let elems = elements(b);
    a.orders()
        .iter()
        .map(|&o| {
            elems
                .iter()
                .filter(|y| {
                    o == 0
                        || b.orders()
                            .iter()
                            .zip(y.iter())
                            .all(|(&bo, &c)| (c as u64 * o) % bo == 0)
                })
                .count() as u64
        })
        .product()
}

/// `dim (p^s H)[p] / (p^{s+1} H)[p]`, computed from element sets.
pub fn ulm_kaplansky_by_definition(c: &PrimaryComponent, s: u32) -> usize {
    let g = CyclicSum::new(c.exponents.iter().map(|&e| c.prime.pow(e)).collect()).unwrap();
    let p = c.prime as i64;
    let layer = |t: u32| -> HashSet<Vec<i64>> {
        let mult = p.pow(t);
        elements(&g)
            .into_iter()
            .filter(|x| {
                g.orders()
                    .iter()
                    .zip(x)
                    .all(|(&o, &v)| (v * mult * p) % o as i64 == 0)
            })
            .map(|x| {
                g.orders()
                    .iter()
                    .zip(&x)
                    .map(|(&o, &v)| (v * mult) % o as i64)
                    .collect()
            })
            .collect()
    };
    let (top, bottom) = (layer(s).len(), layer(s + 1).len());
    let mut ratio = top / bottom;
    let mut dim = 0;
    while ratio > 1 {
        ratio /= c.prime as usize;
        dim += 1;
    }
    dim
}

/// All finite abelian groups of order at most `max_order`, in canonical form.
pub fn finite_abelian_groups(max_order: u64) -> Vec<FgAbGroup> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        let mut per_prime: Vec<Vec<Vec<u64>>> = Vec::new();
        for (p, e) in crate::abgroup::factorize(n) {
            per_prime.push(
                partitions(e)
                    .into_iter()
                    .map(|part| part.into_iter().map(|k| p.pow(k)).collect())
                    .collect(),
            );
        }
        let mut combos: Vec<Vec<u64>> = vec![Vec::new()];
        for choices in per_prime {
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    choices.iter().map(move |ch| {
                        let mut d = c.clone();
                        d.extend(ch);
                        d
                    })
                })
                .collect();
        }
        out.extend(
            combos
                .into_iter()
                .map(|orders| FgAbGroup::from_cyclic_orders(0, &orders).unwrap()),
        );
    }
    out
}

/// Abelian `p`-groups of order at most `p^max_exp`, as exponent lists.
pub fn p_group_exponents(max_exp: u32) -> Vec<Vec<u32>> {
    (1..=max_exp).flat_map(partitions).collect()
}

/// Partitions of `n` as ascending lists.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, min: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for k in min..=n {
            acc.push(k);
            go(n - k, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

/// Bijectivity by checking that no nonzero element maps to zero.
pub fn brute_is_bijective(f: &Homomorphism) -> bool {
    assert!(f.is_endomorphism() && f.source().is_finite());
    elements(f.source())
        .iter()
        .skip(1)
        .all(|x| f.apply(x).iter().any(|&c| c != 0))
}

/// Nilpotency by iterating the image set until it stabilises.
pub fn brute_is_nilpotent(f: &Homomorphism) -> bool {
    assert!(f.is_endomorphism() && f.source().is_finite());
    let mut set: HashSet<Vec<i64>> = elements(f.source()).into_iter().collect();
    loop {
        let next: HashSet<Vec<i64>> = set.iter().map(|x| f.apply(x)).collect();
        if next.len() == 1 {
            return next.iter().all(|x| x.iter().all(|&c| c == 0));
        }
        if next.len() == set.len() {
            return false;
        }
        set = next;
    }
}

/// Enumerates `Hom(source, target)` for finite groups.
pub fn enumerate_homs(
    source: &CyclicSum,
    target: &CyclicSum,
    limit: u64,
) -> Result<Vec<Homomorphism>, OracleError> {
    if !target.is_finite() {
        return Err(OracleError::Infinite(target.clone()));
    }
    let mut slots = Vec::new();
    for (i, &b) in target.orders().iter().enumerate() {
        for (j, &a) in source.orders().iter().enumerate() {
            let count = if a == 0 { b } else { gcd(a, b) };
            slots.push((i, j, b / count, count));
        }
    }
    let size = slots
        .iter()
        .try_fold(1u64, |acc, s| acc.checked_mul(s.3))
        .unwrap_or(u64::MAX);
    if size > limit {
        return Err(OracleError::BoundExceeded { what: "hom set", size, bound: limit });
    }
    let mut out = Vec::with_capacity(size as usize);
    for mut idx in 0..size {
        let mut m = Matrix::zeros(target.len(), source.len());
        for &(i, j, step, count) in &slots {
            m.set(i, j, ((idx % count) * step) as i64);
            idx /= count;
        }
        out.push(Homomorphism::new(source.clone(), target.clone(), m)?);
    }
    Ok(out)
}

/// Whether every composite `y → x → y` of homomorphisms is nilpotent,
/// checked over all pairs. `None` when the pair count exceeds the bound or
/// a group is infinite.
pub fn all_composites_nilpotent(x: &CyclicSum, y: &CyclicSum, bounds: &Bounds) -> Option<bool> {
    if !x.is_finite() || !y.is_finite() {
        return None;
    }
    let there = enumerate_homs(y, x, bounds.max_hom_pairs).ok()?;
    let back = enumerate_homs(x, y, bounds.max_hom_pairs).ok()?;
    if (there.len() as u64).saturating_mul(back.len() as u64) > bounds.max_hom_pairs {
        return None;
    }
    for h in &there {
        for g in &back {
            let c = g.compose(h).ok()?;
            if !crate::homs::is_nilpotent(&c).ok()? {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// The endomorphism ring of a finite presentation, with elements indexed
/// by mixed-radix digits of their matrix entries.
#[derive(Debug)]
pub struct EndRing {
    presentation: CyclicSum,
    n: usize,
    orders: Vec<u32>,
    steps: Vec<u32>,
    counts: Vec<u32>,
    size: u64,
    kernel_probes: Vec<[u32; MAX_GENS]>,
    units: OnceLock<Vec<bool>>,
    radical: OnceLock<Vec<bool>>,
}

impl EndRing {
    pub fn new(presentation: &CyclicSum, bounds: &Bounds) -> Result<Self, OracleError> {
        if !presentation.is_finite() {
            return Err(OracleError::Infinite(presentation.clone()));
        }
        let n = presentation.len();
        if n > MAX_GENS {
            return Err(OracleError::TooManyGenerators(n));
        }
        let order = presentation.cardinality().unwrap_or(u64::MAX);
        if order > bounds.max_order {
            return Err(OracleError::BoundExceeded {
                what: "group",
                size: order,
                bound: bounds.max_order,
            });
        }
        let orders: Vec<u32> = presentation.orders().iter().map(|&o| o as u32).collect();
        let mut steps = Vec::with_capacity(n * n);
        let mut counts = Vec::with_capacity(n * n);
        for &oi in &orders {
            for &oj in &orders {
                let c = gcd(oi as u64, oj as u64) as u32;
                steps.push(oi / c);
                counts.push(c);
            }
        }
        let size = counts
            .iter()
            .try_fold(1u64, |acc, &c| acc.checked_mul(c as u64))
            .unwrap_or(u64::MAX);
        if size > bounds.max_end {
            return Err(OracleError::BoundExceeded {
                what: "endomorphism ring",
                size,
                bound: bounds.max_end,
            });
        }
        // A kernel is nontrivial iff it contains an element of prime order.
        let kernel_probes = elements(presentation)
            .into_iter()
            .skip(1)
            .filter(|x| crate::abgroup::is_prime(element_order(presentation, x)))
            .map(|x| {
                let mut a = [0u32; MAX_GENS];
                for (k, v) in x.into_iter().enumerate() {
                    a[k] = v as u32;
                }
                a
            })
            .collect();
        Ok(EndRing {
            presentation: presentation.clone(),
            n,
            orders,
            steps,
            counts,
            size,
            kernel_probes,
            units: OnceLock::new(),
            radical: OnceLock::new(),
        })
    }

    pub fn presentation(&self) -> &CyclicSum {
        &self.presentation
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    fn decode(&self, mut idx: u64) -> Entries {
        let mut e = [0u32; MAX_GENS * MAX_GENS];
        for i in 0..self.n {
            for j in 0..self.n {
                let k = i * self.n + j;
                let c = self.counts[k] as u64;
                e[i * MAX_GENS + j] = (idx % c) as u32 * self.steps[k];
                idx /= c;
            }
        }
        e
    }

    fn encode(&self, e: &Entries) -> u64 {
        let mut idx = 0u64;
        for k in (0..self.n * self.n).rev() {
            let (i, j) = (k / self.n, k % self.n);
            idx = idx * self.counts[k] as u64 + (e[i * MAX_GENS + j] / self.steps[k]) as u64;
        }
        idx
    }

    fn mul_entries(&self, a: &Entries, b: &Entries) -> Entries {
        let mut c = [0u32; MAX_GENS * MAX_GENS];
        for i in 0..self.n {
            let o = self.orders[i] as u64;
            for j in 0..self.n {
                let mut acc = 0u64;
                for k in 0..self.n {
                    acc += a[i * MAX_GENS + k] as u64 * b[k * MAX_GENS + j] as u64;
                }
                c[i * MAX_GENS + j] = (acc % o) as u32;
            }
        }
        c
    }

    fn add_entries(&self, a: &Entries, b: &Entries) -> Entries {
        let mut c = [0u32; MAX_GENS * MAX_GENS];
        for i in 0..self.n {
            let o = self.orders[i];
            for j in 0..self.n {
                let k = i * MAX_GENS + j;
                c[k] = (a[k] + b[k]) % o;
            }
        }
        c
    }

    fn one_plus(&self, a: &Entries) -> Entries {
        let mut c = *a;
        for i in 0..self.n {
            c[i * MAX_GENS + i] = (c[i * MAX_GENS + i] + 1) % self.orders[i];
        }
        c
    }

    fn entries_are_unit(&self, a: &Entries) -> bool {
        self.kernel_probes.iter().all(|x| {
            (0..self.n).any(|i| {
                let s: u64 = (0..self.n)
                    .map(|k| a[i * MAX_GENS + k] as u64 * x[k] as u64)
                    .sum();
                s % self.orders[i] as u64 != 0
            })
        })
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.encode(&self.mul_entries(&self.decode(a), &self.decode(b)))
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.encode(&self.add_entries(&self.decode(a), &self.decode(b)))
    }

    pub fn identity(&self) -> u64 {
        self.encode(&self.one_plus(&[0; MAX_GENS * MAX_GENS]))
    }

    pub fn to_hom(&self, idx: u64) -> Homomorphism {
        let e = self.decode(idx);
        let mut m = Matrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, e[i * MAX_GENS + j] as i64);
            }
        }
        Homomorphism::new(self.presentation.clone(), self.presentation.clone(), m)
            .expect("enumerated entries respect the relations")
    }

    pub fn index_of(&self, f: &Homomorphism) -> Result<u64, AlgebraError> {
        if f.source() != &self.presentation || !f.is_endomorphism() {
            return Err(AlgebraError::IncompatibleGroups);
        }
        let mut e = [0u32; MAX_GENS * MAX_GENS];
        for i in 0..self.n {
            for j in 0..self.n {
                e[i * MAX_GENS + j] = f.matrix().get(i, j) as u32;
            }
        }
        Ok(self.encode(&e))
    }

    fn unit_table(&self) -> Option<&Vec<bool>> {
        (self.size <= UNIT_TABLE_LIMIT).then(|| {
            self.units.get_or_init(|| {
                (0..self.size)
                    .map(|i| self.entries_are_unit(&self.decode(i)))
                    .collect()
            })
        })
    }

    pub fn is_unit(&self, idx: u64) -> bool {
        match self.unit_table() {
            Some(t) => t[idx as usize],
            None => self.entries_are_unit(&self.decode(idx)),
        }
    }

    fn unit_entries(&self, e: &Entries) -> bool {
        match self.unit_table() {
            Some(t) => t[self.encode(e) as usize],
            None => self.entries_are_unit(e),
        }
    }

    pub fn is_nilpotent(&self, idx: u64) -> bool {
        brute_is_nilpotent(&self.to_hom(idx))
    }

    pub fn commutes(&self, a: u64, b: u64) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn units(&self) -> Vec<u64> {
        (0..self.size).filter(|&i| self.is_unit(i)).collect()
    }

    pub fn nilpotents(&self) -> Vec<u64> {
        (0..self.size).filter(|&i| self.is_nilpotent(i)).collect()
    }

    /// Radical membership from the definition: `1 + r·x·s` must be a unit
    /// for all `r, s`. The products `r·x` are deduplicated first, and the
    /// `s = 1` case is scanned up front since it settles most non-members.
    fn radical_by_definition(&self, x: u64) -> bool {
        let xe = self.decode(x);
        if xe.iter().all(|&v| v == 0) {
            return true;
        }
        let mut left: HashSet<u64> = HashSet::new();
        for r in 0..self.size {
            let rx = self.mul_entries(&self.decode(r), &xe);
            if !self.unit_entries(&self.one_plus(&rx)) {
                return false;
            }
            left.insert(self.encode(&rx));
        }
        let mut seen: HashSet<u64> = HashSet::new();
        for &l in &left {
            let le = self.decode(l);
            for s in 0..self.size {
                let prod = self.mul_entries(&le, &self.decode(s));
                if seen.insert(self.encode(&prod)) && !self.unit_entries(&self.one_plus(&prod)) {
                    return false;
                }
            }
        }
        true
    }

    /// Radical membership by left quasi-regularity (`1 − r·x` a unit for
    /// all `r`), a single scan that stays feasible on rings too large to
    /// enumerate squared.
    pub fn radical_contains_by_quasi_regularity(&self, x: u64) -> bool {
        if x == 0 {
            // 1 - r·0 = 1 for every r.
            return true;
        }
        let xe = self.decode(x);
        (0..self.size).all(|r| {
            let rx = self.mul_entries(&self.decode(self.negate(r)), &xe);
            self.unit_entries(&self.one_plus(&rx))
        })
    }

    pub fn negate(&self, a: u64) -> u64 {
        let e = self.decode(a);
        let mut c = [0u32; MAX_GENS * MAX_GENS];
        for i in 0..self.n {
            let o = self.orders[i];
            for j in 0..self.n {
                let k = i * MAX_GENS + j;
                c[k] = (o - e[k]) % o;
            }
        }
        self.encode(&c)
    }

    /// Membership table for `J(End G)`.
    ///
    /// `{x : 1 + r·x·s is a unit for all r, s}` is the largest subset of
    /// `Q = {y : 1 + y is a unit}` closed under multiplication by `R` on
    /// both sides, so it is computed as a greatest fixpoint starting from
    /// `Q`, which avoids the per-element double scan.
    pub fn radical_table(&self) -> &Vec<bool> {
        self.radical.get_or_init(|| {
            let all: Vec<Entries> = (0..self.size).map(|i| self.decode(i)).collect();
            let mut member: Vec<bool> = all.iter().map(|e| self.unit_entries(&self.one_plus(e))).collect();
            loop {
                let mut changed = false;
                for x in 0..all.len() {
                    if !member[x] {
                        continue;
                    }
                    let xe = &all[x];
                    let closed = all.iter().all(|r| {
                        member[self.encode(&self.mul_entries(r, xe)) as usize]
                            && member[self.encode(&self.mul_entries(xe, r)) as usize]
                    });
                    if !closed {
                        member[x] = false;
                        changed = true;
                    }
                }
                if !changed {
                    break member;
                }
            }
        })
    }

    /// Radical membership of one element straight from the definition,
    /// without building the full table.
    pub fn radical_contains_by_definition(&self, x: u64) -> bool {
        self.radical_by_definition(x)
    }

    pub fn radical_contains(&self, x: u64) -> bool {
        self.radical_table()[x as usize]
    }
}

/// Enumerates `End(G)` on the invariant-factor generators of `G`.
pub fn enumerate_end(g: &FgAbGroup, bounds: &Bounds) -> Result<EndRing, OracleError> {
    EndRing::new(&g.generators(), bounds)
}

/// Sorted indices of `J(R)`.
pub fn jacobson_radical(ring: &EndRing) -> Vec<u64> {
    (0..ring.size()).filter(|&x| ring.radical_contains(x)).collect()
}

type RingCache = Mutex<HashMap<CyclicSum, Arc<EndRing>>>;

/// Shared rings so repeated radical queries do not recompute the radical.
pub fn cached_end_ring(presentation: &CyclicSum, bounds: &Bounds) -> Option<Arc<EndRing>> {
    static CACHE: OnceLock<RingCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(presentation) {
        let fits = r.size() <= bounds.max_end
            && presentation.cardinality().is_some_and(|c| c <= bounds.max_order);
        return fits.then(|| r.clone());
    }
    let ring = Arc::new(EndRing::new(presentation, bounds).ok()?);
    cache
        .lock()
        .unwrap()
        .insert(presentation.clone(), ring.clone());
    Some(ring)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiRegularReport {
    pub group: String,
    pub ring_size: u64,
    pub units: usize,
    pub nilpotents: usize,
    pub commuting_pairs: u64,
    pub counterexamples: Vec<String>,
    pub passed: bool,
}

/// For every nilpotent `t`, `1 − t` and `1 + t` are units; for every
/// commuting unit `u` and nilpotent `t`, `u + t` is a unit.
pub fn check_quasi_regular_and_nc(ring: &EndRing) -> QuasiRegularReport {
    let one = ring.identity();
    let units = ring.units();
    let nilpotents = ring.nilpotents();
    let mut counterexamples = Vec::new();
    for &t in &nilpotents {
        if !ring.is_unit(ring.add(one, t)) || !ring.is_unit(ring.add(one, ring.negate(t))) {
            counterexamples.push(format!("1 ± t not a unit for t = {}", ring.to_hom(t)));
        }
    }
    let mut commuting_pairs = 0;
    for &u in &units {
        for &t in &nilpotents {
            if ring.commutes(u, t) {
                commuting_pairs += 1;
                if !ring.is_unit(ring.add(u, t)) {
                    counterexamples.push(format!(
                        "u + t not a unit for u = {}, t = {}",
                        ring.to_hom(u),
                        ring.to_hom(t)
                    ));
                }
            }
        }
    }
    QuasiRegularReport {
        group: ring.presentation().to_string(),
        ring_size: ring.size(),
        units: units.len(),
        nilpotents: nilpotents.len(),
        commuting_pairs,
        passed: counterexamples.is_empty(),
        counterexamples,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NjReport {
    pub prime: u64,
    pub exponents: Vec<u32>,
    pub criterion: bool,
    pub quotient_reduced: bool,
    pub nilpotents_in_radical: bool,
    pub radical_size: usize,
    pub witness: Option<String>,
    pub passed: bool,
}

/// Compares the Ulm–Kaplansky criterion (all `f_s ≤ 1`) with reducedness
/// of `End(H)/J`, and confirms that a reduced quotient forces `N ⊆ J`.
pub fn check_nj_equivalence(c: &PrimaryComponent, bounds: &Bounds) -> Result<NjReport, OracleError> {
    let g = CyclicSum::new(c.exponents.iter().map(|&e| c.prime.pow(e)).collect())?;
    let ring = EndRing::new(&g, bounds)?;
    let top = c.exponents.iter().copied().max().unwrap_or(0);
    let criterion = (0..=top).all(|s| ulm_kaplansky(c, s) <= 1);
    let radical = ring.radical_table();
    let mut witness = None;
    // x + J is nilpotent in R/J iff some power of x lies in J.
    let mut quotient_reduced = true;
    for x in 0..ring.size() {
        if radical[x as usize] {
            continue;
        }
        let mut seen = HashSet::new();
        let mut p = x;
        while seen.insert(p) {
            if radical[p as usize] {
                quotient_reduced = false;
                witness = Some(ring.to_hom(x).to_string());
                break;
            }
            p = ring.mul(p, x);
        }
        if !quotient_reduced {
            break;
        }
    }
    let nilpotents_in_radical = ring.nilpotents().iter().all(|&t| radical[t as usize]);
    Ok(NjReport {
        prime: c.prime,
        exponents: c.exponents.clone(),
        criterion,
        quotient_reduced,
        nilpotents_in_radical,
        radical_size: radical.iter().filter(|&&b| b).count(),
        witness,
        passed: criterion == quotient_reduced && (!quotient_reduced || nilpotents_in_radical),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BcmReport {
    pub groups: [String; 2],
    pub common_direct_factor: bool,
    pub automorphisms: u64,
    pub violations: u64,
    pub counterexample: Option<String>,
    pub passed: bool,
}

/// Without a common direct factor every automorphism of `G ⊕ H` must have
/// invertible diagonal blocks; with one, an automorphism with a
/// non-invertible diagonal block should exist.
pub fn check_bcm(g: &FgAbGroup, h: &FgAbGroup, bounds: &Bounds) -> Result<BcmReport, OracleError> {
    let factors = vec![g.generators(), h.generators()];
    let ring = EndRing::new(&CyclicSum::concat(&factors), bounds)?;
    let common = crate::abgroup::has_common_direct_factor(g, h);
    let (mut automorphisms, mut violations, mut counterexample) = (0, 0, None);
    for idx in 0..ring.size() {
        if !ring.is_unit(idx) {
            continue;
        }
        automorphisms += 1;
        let f = ring.to_hom(idx);
        let blocks = BlockMap::from_flat(factors.clone(), &f)?;
        let diagonal_ok = (0..2).all(|i| brute_is_bijective(blocks.block(i, i)));
        if !diagonal_ok {
            violations += 1;
            if counterexample.is_none() {
                counterexample = Some(f.to_string());
            }
        }
    }
    Ok(BcmReport {
        groups: [g.to_string(), h.to_string()],
        common_direct_factor: common,
        automorphisms,
        violations,
        counterexample,
        passed: if common { violations > 0 } else { violations == 0 },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LuReport {
    pub groups: Vec<String>,
    pub maps: u64,
    pub reducible_automorphisms: u64,
    pub factored: u64,
    pub factorization_failures: u64,
    pub correctly_refused: u64,
    pub wrongly_factored: u64,
    pub passed: bool,
}

/// Every automorphism with invertible diagonal blocks must factor as
/// `L∘U` and recompose exactly; every map with a non-invertible diagonal
/// block must be refused.
pub fn check_lu(groups: &[FgAbGroup], bounds: &Bounds) -> Result<LuReport, OracleError> {
    let factors: Vec<CyclicSum> = groups.iter().map(|g| g.generators()).collect();
    let ring = EndRing::new(&CyclicSum::concat(&factors), bounds)?;
    let mut r = LuReport {
        groups: groups.iter().map(|g| g.to_string()).collect(),
        maps: ring.size(),
        reducible_automorphisms: 0,
        factored: 0,
        factorization_failures: 0,
        correctly_refused: 0,
        wrongly_factored: 0,
        passed: false,
    };
    for idx in 0..ring.size() {
        let f = ring.to_hom(idx);
        let m = BlockMap::from_flat(factors.clone(), &f)?;
        let diagonal_ok = (0..m.size()).all(|i| brute_is_bijective(m.block(i, i)));
        let lu = lu_factorize(&m)?;
        if !diagonal_ok {
            match lu {
                None => r.correctly_refused += 1,
                Some(_) => r.wrongly_factored += 1,
            }
            continue;
        }
        if !ring.is_unit(idx) {
            continue;
        }
        r.reducible_automorphisms += 1;
        match lu {
            Some((l, u))
                if l.compose(&u)? == m
                    && l.is_lower_triangular()
                    && u.is_unit_upper_triangular()
                    && (0..l.size()).all(|i| brute_is_bijective(l.block(i, i))) =>
            {
                r.factored += 1
            }
            _ => r.factorization_failures += 1,
        }
    }
    r.passed = r.factorization_failures == 0 && r.wrongly_factored == 0;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(orders: &[u64]) -> CyclicSum {
        CyclicSum::new(orders.to_vec()).unwrap()
    }

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn ring_sizes() {
        let b = Bounds::default();
        assert_eq!(enumerate_end(&g("Z/4"), &b).unwrap().size(), 4);
        assert_eq!(enumerate_end(&g("Z/2+Z/2"), &b).unwrap().size(), 16);
        assert_eq!(enumerate_end(&g("Z/2+Z/4"), &b).unwrap().size(), 32);
        assert!(matches!(
            enumerate_end(&g("Z/2+Z/2+Z/2+Z/2+Z/2"), &b),
            Err(OracleError::BoundExceeded { .. })
        ));
        assert!(matches!(enumerate_end(&g("Z"), &b), Err(OracleError::Infinite(_))));
    }

    #[test]
    fn radical_table_matches_definition() {
        for orders in [&[4][..], &[2, 2], &[2, 4], &[3, 9], &[2, 2, 4], &[4, 8]] {
            let ring = EndRing::new(&cs(orders), &Bounds::default()).unwrap();
            let table = ring.radical_table();
            for x in 0..ring.size() {
                assert_eq!(table[x as usize], ring.radical_contains_by_definition(x), "{orders:?} {x}");
            }
        }
    }

    #[test]
    fn encode_decode_and_units() {
        let ring = EndRing::new(&cs(&[2, 4]), &Bounds::default()).unwrap();
        for i in 0..ring.size() {
            assert_eq!(ring.index_of(&ring.to_hom(i)).unwrap(), i);
        }
        assert_eq!(ring.units().len(), 8);
        assert!(ring.is_unit(ring.identity()));
    }

    #[test]
    fn radicals() {
        let b = Bounds::default();
        let z4 = EndRing::new(&cs(&[4]), &b).unwrap();
        let j: Vec<Homomorphism> = jacobson_radical(&z4).into_iter().map(|i| z4.to_hom(i)).collect();
        assert_eq!(j, vec![Homomorphism::scalar(&cs(&[4]), 0), Homomorphism::scalar(&cs(&[4]), 2)]);
        let v4 = EndRing::new(&cs(&[2, 2]), &b).unwrap();
        assert_eq!(jacobson_radical(&v4).len(), 1);
        let z5 = EndRing::new(&cs(&[5]), &b).unwrap();
        assert_eq!(jacobson_radical(&z5).len(), 1);
    }

    #[test]
    fn radical_characterisations_agree() {
        let b = Bounds::default();
        for orders in [vec![2, 4], vec![4, 4], vec![2, 2, 4], vec![3, 9], vec![2, 6]] {
            let ring = EndRing::new(&cs(&orders), &b).unwrap();
            for x in 0..ring.size() {
                assert_eq!(
                    ring.radical_contains(x),
                    ring.radical_contains_by_quasi_regularity(x),
                    "{orders:?} {}",
                    ring.to_hom(x)
                );
            }
        }
    }

    #[test]
    fn radical_is_an_ideal() {
        let ring = EndRing::new(&cs(&[2, 8]), &Bounds::default()).unwrap();
        let j = jacobson_radical(&ring);
        for &a in &j {
            for &b in &j {
                assert!(ring.radical_contains(ring.add(a, b)));
            }
            for r in 0..ring.size() {
                assert!(ring.radical_contains(ring.mul(r, a)));
                assert!(ring.radical_contains(ring.mul(a, r)));
            }
        }
    }

    #[test]
    fn census_and_counts() {
        assert!(isomorphic_by_census(&cs(&[6, 4]), &cs(&[2, 12])));
        assert!(!isomorphic_by_census(&cs(&[2, 2, 2]), &cs(&[2, 4])));
        assert!(isomorphic_by_census(&cs(&[5, 7]), &cs(&[35])));
        assert_eq!(count_homs(&cs(&[4]), &cs(&[6])), 2);
        assert_eq!(count_homs(&cs(&[2, 4]), &cs(&[2, 4])), 32);
        assert_eq!(count_homs(&cs(&[0]), &cs(&[5])), 5);
    }

    #[test]
    fn group_enumeration() {
        let groups = finite_abelian_groups(16);
        assert_eq!(groups.iter().filter(|g| g.finite_order() == Some(16)).count(), 5);
        assert_eq!(groups.iter().filter(|g| g.finite_order() == Some(12)).count(), 2);
        assert_eq!(finite_abelian_groups(64).len(), 117);
        assert_eq!(p_group_exponents(6).len(), 1 + 2 + 3 + 5 + 7 + 11);
    }

    #[test]
    fn ulm_kaplansky_definition() {
        let c = PrimaryComponent { prime: 2, exponents: vec![1, 3] };
        assert_eq!(
            (0..4).map(|s| ulm_kaplansky_by_definition(&c, s)).collect::<Vec<_>>(),
            vec![1, 0, 1, 0]
        );
    }

    #[test]
    fn labs() {
        let b = Bounds::default();
        for orders in [vec![4], vec![2, 2], vec![2, 4], vec![3, 9]] {
            let ring = EndRing::new(&cs(&orders), &b).unwrap();
            assert!(check_quasi_regular_and_nc(&ring).passed);
        }
        let nj = |p, e: &[u32]| {
            check_nj_equivalence(&PrimaryComponent { prime: p, exponents: e.to_vec() }, &b).unwrap()
        };
        let r = nj(2, &[1, 2]);
        assert!(r.passed && r.criterion && r.nilpotents_in_radical);
        let r = nj(2, &[1, 1]);
        assert!(r.passed && !r.criterion && !r.quotient_reduced);
        assert!(nj(3, &[2]).passed);
        let r = check_bcm(&g("Z/2"), &g("Z/3"), &b).unwrap();
        assert!(r.passed && r.automorphisms == 2);
        let r = check_bcm(&g("Z/2"), &g("Z/4"), &b).unwrap();
        assert!(r.passed && r.automorphisms == 8);
        let r = check_bcm(&g("Z/2"), &g("Z/2"), &b).unwrap();
        assert!(r.passed && r.counterexample.is_some());
        let r = check_lu(&[g("Z/2"), g("Z/4")], &b).unwrap();
        assert!(r.passed && r.factored == r.reducible_automorphisms && r.factored > 0);
        let r = check_lu(&[g("Z/2"), g("Z/2")], &b).unwrap();
        assert!(r.passed && r.correctly_refused > 0);
    }
}
