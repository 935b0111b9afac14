//! Finitely generated abelian groups in invariant-factor form.
//!
//! [`FgAbGroup`] is the canonical representation (free rank plus invariant
//! factors `d_1 | d_2 | ... | d_k`, every `d_i >= 2`), so two values are equal
//! exactly when the groups are isomorphic. [`CyclicSum`] is a *chosen*
//! decomposition into cyclic summands and is what homomorphism matrices are
//! written against.
//!
//! Group literals use the grammar `Z`, `Z/n`, `0` and `+`-separated sums,
//! e.g. `Z+Z/2+Z/12`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::AlgebraError;
use crate::snf::smith_normal_form;
use crate::Matrix;

/// A direct sum of cyclic groups in a fixed order. Order `0` stands for an
/// infinite cyclic summand `Z`; every other order is at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicSum(Vec<u64>);

impl CyclicSum {
    pub fn new(orders: Vec<u64>) -> Result<Self, AlgebraError> {
        if let Some(&bad) = orders.iter().find(|&&o| o == 1) {
            return Err(AlgebraError::InvalidOrder(bad as i64));
        }
        Ok(CyclicSum(orders))
    }

    pub fn trivial() -> Self {
        CyclicSum(Vec::new())
    }

    /// Orders of the generators, `0` for `Z`.
    pub fn orders(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|&o| o != 0)
    }

    /// Number of elements, `None` when infinite or beyond 64 bits.
    pub fn cardinality(&self) -> Option<u64> {
        self.0
            .iter()
            .try_fold(1u64, |acc, &o| if o == 0 { None } else { acc.checked_mul(o) })
    }

    pub fn concat(parts: &[CyclicSum]) -> CyclicSum {
        CyclicSum(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
    }

    /// The isomorphism class of this sum.
    pub fn canonical(&self) -> FgAbGroup {
        let free = self.0.iter().filter(|&&o| o == 0).count();
        let torsion: Vec<u64> = self.0.iter().copied().filter(|&o| o != 0).collect();
        FgAbGroup::from_cyclic_orders(free, &torsion)
            .expect("orders were validated on construction")
    }
}

/// Canonical form of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FgAbGroup {
    free_rank: usize,
    invariant_factors: Vec<u64>,
}

/// The p-primary part of a finite abelian group: `⊕ Z/p^{r_i}`, `r_1 <= ... <= r_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimaryComponent {
    pub prime: u64,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(u64),
    Infinite,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup::default()
    }

    pub fn integers() -> Self {
        FgAbGroup {
            free_rank: 1,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z/n`; `n = 1` gives the trivial group and `n = 0` gives `Z`.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => FgAbGroup::integers(),
            1 => FgAbGroup::trivial(),
            _ => FgAbGroup {
                free_rank: 0,
                invariant_factors: vec![n],
            },
        }
    }

    /// Canonical form of `Z^free_rank ⊕ ⊕_i Z/orders[i]`.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[u64]) -> Result<Self, AlgebraError> {
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &o in orders {
            if o < 2 {
                return Err(AlgebraError::InvalidOrder(o as i64));
            }
            for (p, e) in factorize(o) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        Ok(FgAbGroup {
            free_rank,
            invariant_factors: assemble_invariant_factors(by_prime)?,
        })
    }

    /// Accepts a list that must already satisfy the divisibility chain.
    pub fn from_invariant_factors(
        free_rank: usize,
        factors: Vec<u64>,
    ) -> Result<Self, AlgebraError> {
        for (i, &d) in factors.iter().enumerate() {
            if d < 2 {
                return Err(AlgebraError::InvalidOrder(d as i64));
            }
            if i + 1 < factors.len() && factors[i + 1] % d != 0 {
                return Err(AlgebraError::InvalidOrder(factors[i + 1] as i64));
            }
        }
        Ok(FgAbGroup {
            free_rank,
            invariant_factors: factors,
        })
    }

    /// Cokernel of an integer matrix: `Z^rows / (column span)`.
    pub fn from_relations(relations: &Matrix) -> Result<Self, AlgebraError> {
        let snf = smith_normal_form(relations)?;
        let diag = snf.diagonal_entries();
        let mut free = relations.rows() - diag.len();
        let mut orders = Vec::new();
        for d in diag {
            match d {
                0 => free += 1,
                1 => {}
                d => orders.push(d as u64),
            }
        }
        FgAbGroup::from_cyclic_orders(free, &orders)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Cyclic means at most one generator: trivial, `Z`, or `Z/n`.
    pub fn is_cyclic(&self) -> bool {
        self.free_rank + self.invariant_factors.len() <= 1
    }

    pub fn order(&self) -> GroupOrder {
        if self.free_rank > 0 {
            GroupOrder::Infinite
        } else {
            GroupOrder::Finite(self.invariant_factors.iter().product())
        }
    }

    /// `|G|` for finite groups.
    pub fn finite_order(&self) -> Option<u64> {
        match self.order() {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::Infinite => None,
        }
    }

    /// Generators in display order: free summands first, then invariant factors.
    pub fn generators(&self) -> CyclicSum {
        let mut orders = vec![0; self.free_rank];
        orders.extend_from_slice(&self.invariant_factors);
        CyclicSum(orders)
    }

    /// Free summands followed by the prime-power summands, grouped by prime
    /// with ascending exponents.
    pub fn primary_generators(&self) -> CyclicSum {
        let mut orders = vec![0; self.free_rank];
        for c in primary_decomposition(self) {
            orders.extend(c.exponents.iter().map(|&e| c.prime.pow(e)));
        }
        CyclicSum(orders)
    }

    /// Sum of the prime exponents of `|G|` (the composition length), for finite `G`.
    pub fn composition_length(&self) -> Option<u32> {
        self.is_finite().then(|| {
            primary_decomposition(self)
                .iter()
                .map(|c| c.exponents.iter().sum::<u32>())
                .sum()
        })
    }

    pub fn torsion_part(&self) -> FgAbGroup {
        FgAbGroup {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }
}

fn assemble_invariant_factors(
    by_prime: BTreeMap<u64, Vec<u32>>,
) -> Result<Vec<u64>, AlgebraError> {
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (i, e) in exps.into_iter().enumerate() {
            let slot = len - 1 - i;
            let pe = p.checked_pow(e).ok_or(AlgebraError::Overflow)?;
            factors[slot] = factors[slot]
                .checked_mul(pe)
                .ok_or(AlgebraError::Overflow)?;
        }
    }
    Ok(factors)
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn primary_decomposition(g: &FgAbGroup) -> Vec<PrimaryComponent> {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &d in &g.invariant_factors {
        for (p, e) in factorize(d) {
            by_prime.entry(p).or_default().push(e);
        }
    }
    by_prime
        .into_iter()
        .map(|(prime, mut exponents)| {
            exponents.sort_unstable();
            PrimaryComponent { prime, exponents }
        })
        .collect()
}

/// Reassembles primary components and a free rank into canonical form.
pub fn reassemble(free_rank: usize, components: &[PrimaryComponent]) -> FgAbGroup {
    let orders: Vec<u64> = components
        .iter()
        .flat_map(|c| c.exponents.iter().map(|&e| c.prime.pow(e)))
        .collect();
    FgAbGroup::from_cyclic_orders(free_rank, &orders).expect("prime powers are valid orders")
}

pub fn direct_sum(groups: &[FgAbGroup]) -> FgAbGroup {
    let free = groups.iter().map(|g| g.free_rank).sum();
    let orders: Vec<u64> = groups
        .iter()
        .flat_map(|g| g.invariant_factors.iter().copied())
        .collect();
    FgAbGroup::from_cyclic_orders(free, &orders).expect("torsion order exceeds 64 bits")
}

pub fn order(g: &FgAbGroup) -> GroupOrder {
    g.order()
}

/// `Hom(G, H)` from `Hom(Z/a, Z/b) = Z/gcd(a,b)`, `Hom(Z, H) = H`, `Hom(Z/a, Z) = 0`.
pub fn hom_group(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    let mut free = 0;
    let mut orders = Vec::new();
    for &a in g.generators().orders() {
        for &b in h.generators().orders() {
            match (a, b) {
                (0, 0) => free += 1,
                (0, b) => orders.push(b),
                (_, 0) => {}
                (a, b) => {
                    let d = gcd(a, b);
                    if d > 1 {
                        orders.push(d);
                    }
                }
            }
        }
    }
    FgAbGroup::from_cyclic_orders(free, &orders).expect("hom group order exceeds 64 bits")
}

/// `f_s = #{r_i > s} - #{r_i > s+1}`.
pub fn ulm_kaplansky(c: &PrimaryComponent, s: u32) -> usize {
    let above = |t: u32| c.exponents.iter().filter(|&&r| r > t).count();
    above(s) - above(s + 1)
}

/// Whether `G` and `H` share an indecomposable summand (`Z` or some `Z/p^r`).
pub fn has_common_direct_factor(g: &FgAbGroup, h: &FgAbGroup) -> bool {
    if g.free_rank >= 1 && h.free_rank >= 1 {
        return true;
    }
    let hp = primary_decomposition(h);
    primary_decomposition(g).iter().any(|cg| {
        hp.iter()
            .filter(|ch| ch.prime == cg.prime)
            .any(|ch| cg.exponents.iter().any(|e| ch.exponents.contains(e)))
    })
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = vec!["Z".to_string(); self.free_rank];
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Display for CyclicSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&o| if o == 0 { "Z".into() } else { format!("Z/{o}") })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Parses a group literal into its summands, keeping their order.
/// `offset` shifts reported columns when the literal is embedded in a larger text.
pub fn parse_cyclic_sum(text: &str, offset: usize) -> Result<CyclicSum, AlgebraError> {
    let err = |column: usize, message: &str| AlgebraError::Literal {
        column: offset + column + 1,
        message: message.to_string(),
    };
    let mut orders = Vec::new();
    let mut start = 0;
    let trimmed_all = text.trim();
    if trimmed_all.is_empty() {
        return Err(err(0, "empty group literal"));
    }
    if trimmed_all == "0" {
        return Ok(CyclicSum::trivial());
    }
    for term in text.split('+') {
        let lead = term.len() - term.trim_start().len();
        let t: String = term.chars().filter(|c| !c.is_whitespace()).collect();
        let col = start + lead;
        start += term.len() + 1;
        if t == "Z" {
            orders.push(0);
        } else if let Some(n) = t.strip_prefix("Z/") {
            let n: u64 = n
                .parse()
                .map_err(|_| err(col, &format!("expected a positive integer after 'Z/', found '{n}'")))?;
            if n < 2 {
                return Err(err(col, &format!("cyclic order {n} is not allowed (need at least 2)")));
            }
            orders.push(n);
        } else if t.is_empty() {
            return Err(err(col, "empty summand"));
        } else {
            return Err(err(col, &format!("expected 'Z' or 'Z/n', found '{t}'")));
        }
    }
    Ok(CyclicSum(orders))
}

impl FromStr for FgAbGroup {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(parse_cyclic_sum(s, 0)?.canonical())
    }
}

impl Serialize for FgAbGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FgAbGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for CyclicSum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CyclicSum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_cyclic_sum(&s, 0).map_err(serde::de::Error::custom)
    }
}

impl From<&FgAbGroup> for CyclicSum {
    fn from(g: &FgAbGroup) -> Self {
        g.generators()
    }
}
