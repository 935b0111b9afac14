//! Ring-theoretic properties of `End(G)` consumed by the reducibility rules.
//!
//! Every `YES`/`NO` verdict carries a justification that [`RingVerdict::recheck`]
//! can re-derive from the group alone: a structural criterion, or an explicit
//! witness made of homomorphisms.

use serde::{Deserialize, Serialize};

use crate::abgroup::{primary_decomposition, ulm_kaplansky, CyclicSum, FgAbGroup, PrimaryComponent};
use crate::homs::{end_generators, is_automorphism, Homomorphism};
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Justification {
    /// Trivial, `Z`, or `Z/n`: the endomorphism ring is a quotient of `Z`.
    CyclicGroup,
    /// Finite group whose primary components all have strictly increasing exponents.
    NjCriterion { components: Vec<PrimaryComponent> },
    /// Two endomorphisms that do not commute.
    NonCommutingPair { a: Homomorphism, b: Homomorphism },
    /// `t` squares to zero while `1 + r·t·s` is not an automorphism, so `t ∉ J`.
    NilpotentOutsideRadical {
        t: Homomorphism,
        r: Homomorphism,
        s: Homomorphism,
    },
    /// Free and torsion summands together, with no witness available.
    MixedGroup,
    NoRuleApplies,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingVerdict {
    pub status: Status,
    pub justification: Justification,
}

impl RingVerdict {
    fn new(status: Status, justification: Justification) -> Self {
        RingVerdict { status, justification }
    }

    /// Re-derives the verdict for `g` from its justification.
    pub fn recheck(&self, g: &FgAbGroup) -> bool {
        let on_g = |h: &Homomorphism| h.is_endomorphism() && &h.source().canonical() == g;
        match (&self.status, &self.justification) {
            (Status::Yes, Justification::CyclicGroup) => g.is_cyclic(),
            (Status::Yes, Justification::NjCriterion { components }) => {
                g.is_finite()
                    && components == &primary_decomposition(g)
                    && components.iter().all(nj_criterion)
            }
            (Status::No, Justification::NonCommutingPair { a, b }) => {
                on_g(a)
                    && a.source() == b.source()
                    && b.is_endomorphism()
                    && matches!((a.compose(b), b.compose(a)), (Ok(x), Ok(y)) if x != y)
            }
            (Status::No, Justification::NilpotentOutsideRadical { t, r, s }) => {
                let src = t.source();
                on_g(t)
                    && [r, s].iter().all(|h| h.is_endomorphism() && h.source() == src)
                    && t.compose(t).is_ok_and(|sq| sq.is_zero())
                    && r.compose(t)
                        .and_then(|rt| rt.compose(s))
                        .and_then(|rts| Homomorphism::identity(src).add(&rts))
                        .and_then(|u| is_automorphism(&u))
                        .is_ok_and(|unit| !unit)
            }
            (Status::Unknown, _) => true,
            _ => false,
        }
    }
}

/// Strictly increasing exponents, i.e. every Ulm–Kaplansky invariant is at most 1.
pub fn nj_criterion(c: &PrimaryComponent) -> bool {
    c.exponents.windows(2).all(|w| w[0] < w[1])
}

/// `max_s f_s(C) <= 1`, evaluated through the invariant formula.
pub fn ulm_kaplansky_at_most_one(c: &PrimaryComponent) -> bool {
    let top = c.exponents.iter().copied().max().unwrap_or(0);
    (0..=top).all(|s| ulm_kaplansky(c, s) <= 1)
}

/// Every primary component embeds in `⊕_i Z/p^i`; only meaningful for finite groups.
pub fn subgroup_criterion(g: &FgAbGroup) -> bool {
    g.is_finite() && primary_decomposition(g).iter().all(nj_criterion)
}

/// Commutativity of `End(G)`. Cyclic groups give `YES`; otherwise a pair of
/// non-commuting elementary maps is searched for. Since those maps
/// additively generate the ring, the search always succeeds on a
/// non-commutative ring.
pub fn is_end_commutative(g: &FgAbGroup) -> RingVerdict {
    if g.is_cyclic() {
        return RingVerdict::new(Status::Yes, Justification::CyclicGroup);
    }
    let gens = end_generators(&g.generators());
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if a.compose(b).ok() != b.compose(a).ok() {
                return RingVerdict::new(
                    Status::No,
                    Justification::NonCommutingPair { a: a.clone(), b: b.clone() },
                );
            }
        }
    }
    RingVerdict::new(Status::Unknown, Justification::NoRuleApplies)
}

/// Whether nilpotents of `End(G)` lie in its Jacobson radical.
///
/// `YES` comes from cyclicity or from the criterion on primary components.
/// `NO` needs a witness: two equal summands `C ⊕ C` give `t` with `t² = 0`
/// and `1 − t'·t` equal to the projection killing one copy, so `t ∉ J`.
pub fn is_j_reduced_end(g: &FgAbGroup) -> RingVerdict {
    if g.is_cyclic() {
        return RingVerdict::new(Status::Yes, Justification::CyclicGroup);
    }
    if subgroup_criterion(g) {
        return RingVerdict::new(
            Status::Yes,
            Justification::NjCriterion {
                components: primary_decomposition(g),
            },
        );
    }
    if let Some(j) = repeated_summand_witness(&g.primary_generators()) {
        return RingVerdict::new(Status::No, j);
    }
    let just = if g.free_rank() > 0 && !g.is_torsion_free() {
        Justification::MixedGroup
    } else {
        Justification::NoRuleApplies
    };
    RingVerdict::new(Status::Unknown, just)
}

fn repeated_summand_witness(gens: &CyclicSum) -> Option<Justification> {
    let orders = gens.orders();
    let n = orders.len();
    let (a, b) = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .find(|&(a, b)| orders[a] == orders[b])?;
    let elementary = |row: usize, col: usize, v: i64| {
        let mut m = Matrix::zeros(n, n);
        m.set(row, col, v);
        Homomorphism::new(gens.clone(), gens.clone(), m).expect("equal orders")
    };
    Some(Justification::NilpotentOutsideRadical {
        t: elementary(a, b, 1),
        r: elementary(b, a, -1),
        s: Homomorphism::identity(gens),
    })
}
