//! Homomorphisms between finitely generated abelian groups.
//!
//! A [`Homomorphism`] is an integer matrix written against chosen cyclic
//! decompositions of its source and target: column `j` holds the image of the
//! `j`-th source generator in target coordinates. Entries are kept reduced
//! modulo the target orders, so structural equality is equality of maps.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abgroup::{gcd, CyclicSum, FgAbGroup};
use crate::error::AlgebraError;
use crate::matrix::{narrow, Matrix};
use crate::oracle::{self, Bounds};
use crate::snf::smith_normal_form;

pub mod block;

pub use block::{lu_factorize, schur_complement, BlockMap};

/// Three-valued answer for predicates that are only decidable within bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl From<bool> for Truth {
    fn from(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHom", into = "RawHom")]
pub struct Homomorphism {
    source: CyclicSum,
    target: CyclicSum,
    matrix: Matrix,
}

#[derive(Serialize, Deserialize)]
struct RawHom {
    source: CyclicSum,
    target: CyclicSum,
    matrix: Vec<Vec<i64>>,
}

impl TryFrom<RawHom> for Homomorphism {
    type Error = AlgebraError;

    fn try_from(raw: RawHom) -> Result<Self, Self::Error> {
        let m = Matrix::from_rows(&raw.matrix, raw.source.len())?;
        Homomorphism::new(raw.source, raw.target, m)
    }
}

impl From<Homomorphism> for RawHom {
    fn from(h: Homomorphism) -> Self {
        RawHom {
            matrix: h.matrix.to_rows(),
            source: h.source,
            target: h.target,
        }
    }
}

fn reduce(x: i64, order: u64) -> i64 {
    if order == 0 {
        x
    } else {
        x.rem_euclid(order as i64)
    }
}

impl Homomorphism {
    /// Validates the relation condition and reduces entries modulo the target orders.
    pub fn new(source: CyclicSum, target: CyclicSum, matrix: Matrix) -> Result<Self, AlgebraError> {
        let expected = (target.len(), source.len());
        if matrix.shape() != expected {
            return Err(AlgebraError::ShapeMismatch {
                expected,
                found: matrix.shape(),
            });
        }
        let mut m = matrix;
        for (i, &b) in target.orders().iter().enumerate() {
            for (j, &a) in source.orders().iter().enumerate() {
                let entry = m.get(i, j);
                let ok = match (a, b) {
                    (0, _) => true,
                    (_, 0) => entry == 0,
                    (a, b) => (reduce(entry, b) as i128 * a as i128) % b as i128 == 0,
                };
                if !ok {
                    return Err(AlgebraError::IllDefined {
                        row: i,
                        col: j,
                        entry,
                        source_order: a,
                        target_order: b,
                    });
                }
                m.set(i, j, reduce(entry, b));
            }
        }
        Ok(Homomorphism {
            source,
            target,
            matrix: m,
        })
    }

    pub fn identity(g: &CyclicSum) -> Self {
        Homomorphism {
            source: g.clone(),
            target: g.clone(),
            matrix: Matrix::identity(g.len()),
        }
    }

    pub fn zero(source: &CyclicSum, target: &CyclicSum) -> Self {
        Homomorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(target.len(), source.len()),
        }
    }

    /// Multiplication by `k` on `g`.
    pub fn scalar(g: &CyclicSum, k: i64) -> Self {
        let mut m = Matrix::zeros(g.len(), g.len());
        for (i, &o) in g.orders().iter().enumerate() {
            m.set(i, i, reduce(k, o));
        }
        Homomorphism {
            source: g.clone(),
            target: g.clone(),
            matrix: m,
        }
    }

    pub fn source(&self) -> &CyclicSum {
        &self.source
    }

    pub fn target(&self) -> &CyclicSum {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Homomorphism) -> Result<Homomorphism, AlgebraError> {
        if self.source != other.target {
            return Err(AlgebraError::IncompatibleGroups);
        }
        let mut m = Matrix::zeros(self.target.len(), other.source.len());
        for (i, &o) in self.target.orders().iter().enumerate() {
            for j in 0..other.source.len() {
                let mut acc: i128 = 0;
                for k in 0..self.source.len() {
                    acc += self.matrix.get(i, k) as i128 * other.matrix.get(k, j) as i128;
                }
                if o != 0 {
                    acc = acc.rem_euclid(o as i128);
                }
                m.set(i, j, narrow(acc)?);
            }
        }
        Ok(Homomorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: m,
        })
    }

    pub fn add(&self, other: &Homomorphism) -> Result<Homomorphism, AlgebraError> {
        if self.source != other.source || self.target != other.target {
            return Err(AlgebraError::IncompatibleGroups);
        }
        let mut m = self.matrix.clone();
        for (i, &o) in self.target.orders().iter().enumerate() {
            for j in 0..self.source.len() {
                let s = self
                    .matrix
                    .get(i, j)
                    .checked_add(other.matrix.get(i, j))
                    .ok_or(AlgebraError::Overflow)?;
                m.set(i, j, reduce(s, o));
            }
        }
        Ok(Homomorphism { matrix: m, ..self.clone() })
    }

    pub fn negate(&self) -> Homomorphism {
        let mut m = self.matrix.clone();
        for (i, &o) in self.target.orders().iter().enumerate() {
            for j in 0..self.source.len() {
                m.set(i, j, reduce(-self.matrix.get(i, j), o));
            }
        }
        Homomorphism { matrix: m, ..self.clone() }
    }

    pub fn sub(&self, other: &Homomorphism) -> Result<Homomorphism, AlgebraError> {
        self.add(&other.negate())
    }

    /// Image of an element given in source coordinates.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.target
            .orders()
            .iter()
            .enumerate()
            .map(|(i, &o)| {
                let v: i128 = (0..self.source.len())
                    .map(|j| self.matrix.get(i, j) as i128 * x[j] as i128)
                    .sum();
                if o == 0 {
                    v as i64
                } else {
                    v.rem_euclid(o as i128) as i64
                }
            })
            .collect()
    }

    pub fn power(&self, k: u32) -> Result<Homomorphism, AlgebraError> {
        if !self.is_endomorphism() {
            return Err(AlgebraError::NotEndomorphism);
        }
        let mut acc = Homomorphism::identity(&self.source);
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    fn require_endo(&self) -> Result<(), AlgebraError> {
        if self.is_endomorphism() {
            Ok(())
        } else {
            Err(AlgebraError::NotEndomorphism)
        }
    }
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {}", self.source, self.target, self.matrix)
    }
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Builds a homomorphism between canonical groups, using their invariant-factor generators.
pub fn make_hom(g: &FgAbGroup, h: &FgAbGroup, matrix: Matrix) -> Result<Homomorphism, AlgebraError> {
    Homomorphism::new(g.generators(), h.generators(), matrix)
}

pub fn compose(f: &Homomorphism, g: &Homomorphism) -> Result<Homomorphism, AlgebraError> {
    f.compose(g)
}

pub fn add(f: &Homomorphism, g: &Homomorphism) -> Result<Homomorphism, AlgebraError> {
    f.add(g)
}

pub fn negate(f: &Homomorphism) -> Homomorphism {
    f.negate()
}

/// `[M | relations]` for an endomorphism: its column span is `im f + relations`.
fn augmented(f: &Homomorphism) -> Matrix {
    let orders = f.source.orders();
    let finite: Vec<usize> = (0..orders.len()).filter(|&i| orders[i] != 0).collect();
    let mut rel = Matrix::zeros(orders.len(), finite.len());
    for (c, &i) in finite.iter().enumerate() {
        rel.set(i, c, orders[i] as i64);
    }
    f.matrix.hconcat(&rel)
}

/// Bijectivity test. A surjective endomorphism of a finitely generated
/// module is injective, so it suffices that `im f + relations` spans
/// everything, which is read off the Smith form of `[M | relations]`.
pub fn is_automorphism(f: &Homomorphism) -> Result<bool, AlgebraError> {
    f.require_endo()?;
    let n = f.source.len();
    let snf = smith_normal_form(&augmented(f))?;
    let diag = snf.diagonal_entries();
    Ok(diag.len() == n && diag.iter().all(|&d| d == 1))
}

/// Inverse of an automorphism, read off the Smith transforms of `[M | relations]`.
pub fn invert(f: &Homomorphism) -> Result<Homomorphism, AlgebraError> {
    f.require_endo()?;
    let n = f.source.len();
    let a = augmented(f);
    let snf = smith_normal_form(&a)?;
    let diag = snf.diagonal_entries();
    if diag.len() != n || diag.iter().any(|&d| d != 1) {
        return Err(AlgebraError::NotInvertible);
    }
    // U·A·V = [I | 0], so A·(V·[I;0]·U) = I; the top rows solve M·X ≡ I.
    let mut pad = Matrix::zeros(a.cols(), n);
    pad.paste(0, 0, &Matrix::identity(n));
    let w = snf.right.mul(&pad)?.mul(&snf.left)?;
    let x = w.submatrix(0, n, 0, n);
    Homomorphism::new(f.source.clone(), f.source.clone(), x)
}

fn free_indices(g: &CyclicSum) -> Vec<usize> {
    (0..g.len()).filter(|&i| g.orders()[i] == 0).collect()
}

/// `f^L = 0` with `L` the composition length of the torsion part.
///
/// On groups with free summands the question is only answered when the
/// free-to-free block of `f` vanishes; then `f` lands in the torsion
/// subgroup and `f^{L+1} = 0` decides it.
pub fn is_nilpotent(f: &Homomorphism) -> Result<bool, AlgebraError> {
    f.require_endo()?;
    let free = free_indices(&f.source);
    if free
        .iter()
        .any(|&i| free.iter().any(|&j| f.matrix.get(i, j) != 0))
    {
        return Err(AlgebraError::Unsupported(
            "nilpotency of an endomorphism with a nonzero free part",
        ));
    }
    let length = f
        .source
        .canonical()
        .torsion_part()
        .composition_length()
        .unwrap_or(0);
    let steps = length + u32::from(!free.is_empty());
    let mut p = f.clone();
    for _ in 1..steps.max(1) {
        if p.is_zero() {
            return Ok(true);
        }
        p = p.compose(f)?;
    }
    Ok(p.is_zero())
}

/// Additive generators of `Hom(source, target)`: one elementary map per
/// pair of cyclic summands whose hom group is nonzero.
pub fn hom_generators(source: &CyclicSum, target: &CyclicSum) -> Vec<Homomorphism> {
    let mut out = Vec::new();
    for (i, &b) in target.orders().iter().enumerate() {
        for (j, &a) in source.orders().iter().enumerate() {
            let entry = match (a, b) {
                (_, 0) if a != 0 => continue,
                (_, 0) | (0, _) => 1,
                (a, b) => {
                    let d = gcd(a, b);
                    if d == 1 {
                        continue;
                    }
                    (b / d) as i64
                }
            };
            let mut m = Matrix::zeros(target.len(), source.len());
            m.set(i, j, entry);
            out.push(Homomorphism {
                source: source.clone(),
                target: target.clone(),
                matrix: m,
            });
        }
    }
    out
}

pub fn end_generators(g: &CyclicSum) -> Vec<Homomorphism> {
    hom_generators(g, g)
}

/// Centrality in the full endomorphism ring. `End(G)` is additively
/// generated by the elementary maps, so commuting with those suffices.
pub fn is_central(f: &Homomorphism) -> Result<bool, AlgebraError> {
    f.require_endo()?;
    for e in end_generators(&f.source) {
        if f.compose(&e)? != e.compose(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn p_valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Radical membership on a finite group through the Ulm layers: `f` lies in
/// `J(End G)` iff for every prime `p` and every `s` it maps
/// `(p^s G)[p]` into `p^{s+1} G`, i.e. induces zero on each layer
/// `(p^s G)[p] / (p^{s+1} G)[p]`.
pub fn in_radical_by_layers(f: &Homomorphism) -> Result<bool, AlgebraError> {
    f.require_endo()?;
    if !f.source.is_finite() {
        return Err(AlgebraError::Unsupported("radical membership on an infinite group"));
    }
    let orders = f.source.orders();
    let mut primes: Vec<u64> = orders
        .iter()
        .flat_map(|&o| crate::abgroup::factorize(o).into_iter().map(|(p, _)| p))
        .collect();
    primes.sort_unstable();
    primes.dedup();
    for p in primes {
        for (i, &oi) in orders.iter().enumerate() {
            let v = p_valuation(oi, p);
            if v == 0 {
                continue;
            }
            // The generator (o_i / p)·e_i spans the top of its layer s = v - 1.
            let scale = (oi / p) as i128;
            let pv = p.pow(v);
            for (k, &ok) in orders.iter().enumerate() {
                let modulus = gcd(pv, ok) as i128;
                let y = (f.matrix.get(k, i) as i128 * scale).rem_euclid(ok as i128);
                if y % modulus != 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Membership in the Jacobson radical of `End(G)`.
///
/// Within the enumeration bounds the answer comes from the brute-force
/// radical; beyond them, finite groups use the Ulm-layer criterion and
/// infinite groups are `Unknown`.
pub fn is_radical(f: &Homomorphism, bounds: &Bounds) -> Result<Truth, AlgebraError> {
    f.require_endo()?;
    if !f.source.is_finite() {
        return Ok(Truth::Unknown);
    }
    if let Some(ring) = oracle::cached_end_ring(&f.source, bounds) {
        let idx = ring.index_of(f)?;
        return Ok(ring.radical_contains(idx).into());
    }
    Ok(in_radical_by_layers(f)?.into())
}
