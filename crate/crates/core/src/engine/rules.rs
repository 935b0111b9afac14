//! Rule search: tries each reducibility rule in a fixed order and returns
//! the first certificate that fires.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use crate::abgroup::{direct_sum, has_common_direct_factor, FgAbGroup};
use crate::catalog::{Catalog, SpaceDescriptor};
use crate::ringprops::{is_end_commutative, is_j_reduced_end, subgroup_criterion, Status};

use super::certificate::{Certificate, Conclusion, Fact, Premise, ReducibilityAxiom, RingProperty, RuleId};

type MemoKey = (Vec<SpaceDescriptor>, u32, bool);

pub(crate) struct Search<'a> {
    catalog: &'a Catalog,
    pivot_search: bool,
    memo: RefCell<HashMap<MemoKey, Option<Certificate>>>,
    exact_memo: RefCell<HashMap<Vec<SpaceDescriptor>, Option<Certificate>>>,
}

pub(crate) fn max_self_closeness(factors: &[SpaceDescriptor]) -> u32 {
    factors.iter().map(SpaceDescriptor::self_closeness).max().unwrap_or(0)
}

fn without(p: &[SpaceDescriptor], i: usize) -> Vec<SpaceDescriptor> {
    p.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, s)| s.clone())
        .collect()
}

/// Merges Eilenberg-MacLane factors of equal degree, ordered by degree.
/// `None` unless every factor is Eilenberg-MacLane.
pub(crate) fn merge_em(p: &[SpaceDescriptor]) -> Option<(Vec<SpaceDescriptor>, Vec<(u32, Vec<FgAbGroup>)>)> {
    let mut by_degree: BTreeMap<u32, Vec<FgAbGroup>> = BTreeMap::new();
    for s in p {
        match s {
            SpaceDescriptor::EilenbergMacLane { group, n } => by_degree.entry(*n).or_default().push(group.clone()),
            _ => return None,
        }
    }
    let merged = by_degree
        .iter()
        .map(|(&n, gs)| SpaceDescriptor::EilenbergMacLane { group: direct_sum(gs), n })
        .collect();
    let groups = by_degree.into_iter().filter(|(_, gs)| gs.len() > 1).collect();
    Some((merged, groups))
}

/// Whether a factor has `π_j = 0` for all `j > n`.
pub(crate) fn truncated_at(s: &SpaceDescriptor, n: u32) -> bool {
    match s {
        SpaceDescriptor::EilenbergMacLane { n: k, .. } => *k <= n,
        SpaceDescriptor::Sphere { n: 1 } => n >= 1,
        _ => false,
    }
}

/// Applicability of a named reducibility fact.
pub(crate) fn reducibility_axiom_holds(axiom: ReducibilityAxiom, factors: &[SpaceDescriptor], level: u32) -> bool {
    if level != max_self_closeness(factors) {
        return false;
    }
    match (axiom, factors) {
        (ReducibilityAxiom::ProjectivePair, [a, b]) => matches!(
            (a.projective(), b.projective()),
            (Some((d, m)), Some((e, k))) if d == e && m != k
        ),
        (
            ReducibilityAxiom::LensPair,
            [SpaceDescriptor::Lens { n: m, .. }, SpaceDescriptor::Lens { n: k, .. }],
        ) => m != k,
        _ => false,
    }
}

impl<'a> Search<'a> {
    pub(crate) fn new(catalog: &'a Catalog, pivot_search: bool) -> Self {
        Search {
            catalog,
            pivot_search,
            memo: RefCell::default(),
            exact_memo: RefCell::default(),
        }
    }

    /// Certificate that `A_n(P)` is reducible. With `merge`, the conclusion
    /// may instead concern an equivalent product of merged factors.
    pub(crate) fn check(&self, p: &[SpaceDescriptor], n: u32, merge: bool) -> Option<Certificate> {
        let key = (p.to_vec(), n, merge);
        if let Some(hit) = self.memo.borrow().get(&key) {
            return hit.clone();
        }
        let out = self.check_uncached(p, n, merge);
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn check_uncached(&self, p: &[SpaceDescriptor], n: u32, merge: bool) -> Option<Certificate> {
        if p.is_empty() || n == 0 {
            return None;
        }
        if p.len() == 1 {
            return Some(Certificate::reducible(RuleId::SingleFactor, p, n, Vec::new()));
        }
        merge
            .then(|| self.em_merge(p, n))
            .flatten()
            .or_else(|| self.triangular(p, n))
            .or_else(|| self.no_common_factor(p, n))
            .or_else(|| self.atomic_product(p, n))
            .or_else(|| self.moore_pivot(p, n))
            .or_else(|| self.em_truncated_pivot(p, n))
            .or_else(|| self.radical_pivot(p, n))
            .or_else(|| self.axiom_pair(p, n))
            .or_else(|| self.level_lift(p, n))
    }

    /// Product-theorem certificate for the exact number of `p`.
    pub(crate) fn exact(&self, p: &[SpaceDescriptor]) -> Option<Certificate> {
        if let Some(hit) = self.exact_memo.borrow().get(p) {
            return hit.clone();
        }
        let out = self.exact_uncached(p);
        self.exact_memo.borrow_mut().insert(p.to_vec(), out.clone());
        out
    }

    fn exact_uncached(&self, p: &[SpaceDescriptor]) -> Option<Certificate> {
        let value = max_self_closeness(p);
        let sub = self.check(p, value, true)?;
        let mut premises: Vec<Premise> = p
            .iter()
            .map(|s| {
                Premise::new(Fact::SelfCloseness {
                    space: s.clone(),
                    value: s.self_closeness(),
                })
            })
            .collect();
        let fact = match &sub.conclusion {
            Conclusion::Reducible { factors, level } => Fact::Reducible {
                factors: factors.clone(),
                level: *level,
            },
            Conclusion::ReducibleAfterMerge { factors, merged, level } => Fact::ReducibleAfterMerge {
                factors: factors.clone(),
                merged: merged.clone(),
                level: *level,
            },
            Conclusion::SelfCloseness { .. } => return None,
        };
        premises.push(Premise::with_sub(fact, sub));
        Some(Certificate::new(
            RuleId::ProductTheorem,
            value,
            premises,
            Conclusion::SelfCloseness { factors: p.to_vec(), value },
        ))
    }

    fn em_merge(&self, p: &[SpaceDescriptor], n: u32) -> Option<Certificate> {
        let (merged, groups) = merge_em(p)?;
        if groups.is_empty() {
            return None;
        }
        let sub = self.check(&merged, n, false)?;
        let mut premises: Vec<Premise> = groups
            .into_iter()
            .map(|(degree, groups)| {
                let merged = direct_sum(&groups);
                Premise::new(Fact::EmMerge { degree, groups, merged })
            })
            .collect();
        premises.push(Premise::with_sub(
            Fact::Reducible { factors: merged.clone(), level: n },
            sub,
        ));
        Some(Certificate::new(
            RuleId::EmMerge,
            n,
            premises,
            Conclusion::ReducibleAfterMerge { factors: p.to_vec(), merged, level: n },
        ))
    }

    fn trivial_fact(&self, from: &SpaceDescriptor, to: &SpaceDescriptor, k: u32) -> Option<Premise> {
        let reason = self.catalog.maps_trivial(from, to, k)?;
        Some(Premise::new(Fact::MapsTrivial {
            from: from.clone(),
            to: to.clone(),
            degree: k,
            reason,
        }))
    }

    fn triangular(&self, p: &[SpaceDescriptor], n: u32) -> Option<Certificate> {
        let m = p.len();
        let mut premises = Vec::new();
        for k in 1..=n {
            let mut edges = vec![vec![false; m]; m];
            for i in 0..m {
                for j in 0..m {
                    if i == j {
                        continue;
                    }
                    match self.trivial_fact(&p[i], &p[j], k) {
                        Some(fact) => {
                            if !premises.contains(&fact) {
                                premises.push(fact);
                            }
                        }
                        None => edges[i][j] = true,
                    }
                }
            }
            if !is_acyclic(&edges) {
                return None;
            }
        }
        Some(Certificate::reducible(RuleId::Triangular, p, n, premises))
    }

    fn no_common_factor(&self, p: &[SpaceDescriptor], n: u32) -> Option<Certificate> {
        let mut premises = Vec::new();
        for k in 1..=n {
            let groups = p
                .iter()
                .map(|s| self.catalog.homotopy_group(s, k).ok().flatten().filter(FgAbGroup::is_finite))
                .collect::<Option<Vec<_>>>()?;
            for (i, gi) in groups.iter().enumerate() {
                for gj in &groups[i + 1..] {
                    if has_common_direct_factor(gi, gj) {
                        return None;
                    }
                }
            }
            for (s, g) in p.iter().zip(&groups) {
                premises.push(Premise::new(Fact::FiniteHomotopy {
                    space: s.clone(),
                    degree: k,
                    group: g.clone(),
                }));
            }
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    premises.push(Premise::new(Fact::NoCommonDirectFactor {
                        first: p[i].clone(),
                        second: p[j].clone(),
                        degree: k,
                    }));
                }
            }
        }
        Some(Certificate::reducible(RuleId::NoCommonFactor, p, n, premises))
    }

    fn atomic_product(&self, p: &[SpaceDescriptor], n: u32) -> Option<Certificate> {
        let atoms = p
            .iter()
            .map(|s| match s {
                SpaceDescriptor::Atomic(a) => Some(a),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        if n != max_self_closeness(p) {
            return None;
        }
        let mut premises = Vec::new();
        for (i, a) in atoms.iter().enumerate() {
            for (j, b) in atoms.iter().enumerate() {
                if i == j {
                    continue;
                }
                if a.hurewicz_dim == b.hurewicz_dim || !a.not_retract_of.contains(&b.name) {
                    return None;
                }
                premises.push(Premise::new(Fact::NoRetract {
                    space: p[i].clone(),
                    of: p[j].clone(),
                }));
            }
        }
        Some(Certificate::reducible(RuleId::AtomicProduct, p, n, premises))
    }

    /// Distance premise plus the recursive remainder premise.
    fn pivot_premises(&self, x: &[SpaceDescriptor], y: &[SpaceDescriptor], n: u32) -> Option<[Premise; 2]> {
        let evidence = self.catalog.are_n_distant(x, y, n)?;
        let sub = self.check(y, n, false)?;
        Some([
            Premise::new(Fact::Distant {
                x: x.to_vec(),
                y: y.to_vec(),
                level: n,
                evidence,
            }),
            Premise::with_sub(Fact::Reducible { factors: y.to_vec(), level: n }, sub),
        ])
    }

    fn moore_pivot(&self, p: &[SpaceDescriptor], n: u32) -> Option<Certificate> {
        (0..p.len())
            .filter(|&i| p[i].moore_degree() == Some(n))
            .find_map(|i| {
                let premises = self.pivot_premises(&p[i..=i], &without(p, i), n)?;
                Some(Certificate::reducible(RuleId::MoorePivot, p, n, premises.into()))
            })
    }

    fn em_truncated_pivot(&self, p: &[SpaceDescriptor], n: u32) -> Option<Certificate> {
        if n < 2 {
            return None;
        }
        (0..p.len())
            .filter(|&i| p[i].em_degree() == Some(n))
            .find_map(|i| {
                let rest = without(p, i);
                if !rest.iter().all(|s| truncated_at(s, n)) {
                    return None;
                }
                let mut premises: Vec<Premise> = rest
                    .iter()
                    .map(|s| Premise::new(Fact::Truncated { space: s.clone(), above: n }))
                    .collect();
                premises.extend(self.pivot_premises(&p[i..=i], &rest, n)?);
                Some(Certificate::reducible(RuleId::EmTruncatedPivot, p, n, premises))
            })
    }

    fn radical_pivot(&self, p: &[SpaceDescriptor], n: u32) -> Option<Certificate> {
        let singles = (0..p.len()).map(|i| (p[i..=i].to_vec(), without(p, i)));
        let prefixes = (2..p.len())
            .filter(|_| self.pivot_search)
            .map(|k| (p[..k].to_vec(), p[k..].to_vec()));
        singles
            .chain(prefixes)
            .find_map(|(x, y)| self.radical_pivot_at(p, &x, &y, n))
    }

    fn radical_pivot_at(
        &self,
        p: &[SpaceDescriptor],
        x: &[SpaceDescriptor],
        y: &[SpaceDescriptor],
        n: u32,
    ) -> Option<Certificate> {
        let mut premises = Vec::new();
        let ne_x = max_self_closeness(x);
        if ne_x > n {
            return None;
        }
        if let [single] = x {
            premises.push(Premise::new(Fact::SelfCloseness {
                space: single.clone(),
                value: ne_x,
            }));
        } else {
            let sub = self.exact(x)?;
            premises.push(Premise::with_sub(
                Fact::ProductSelfCloseness { factors: x.to_vec(), value: ne_x },
                sub,
            ));
        }
        for k in 1..=n {
            let group = self.catalog.product_homotopy_group(y, k).ok()??;
            let (property, verdict) = ring_property(&group)?;
            premises.push(Premise::new(Fact::RingProperty {
                spaces: y.to_vec(),
                degree: k,
                group,
                property,
                verdict,
            }));
        }
        for k in 1..=ne_x {
            premises.extend(
                self.all_trivial(y, x, k)
                    .or_else(|| self.all_trivial(x, y, k))?,
            );
        }
        premises.extend(self.pivot_premises(x, y, n)?);
        Some(Certificate::reducible(RuleId::RadicalPivot, p, n, premises))
    }

    /// Triviality facts for every pair `(a, b)` with `a ∈ from`, `b ∈ to`.
    fn all_trivial(&self, from: &[SpaceDescriptor], to: &[SpaceDescriptor], k: u32) -> Option<Vec<Premise>> {
        from.iter()
            .flat_map(|a| to.iter().map(move |b| (a, b)))
            .map(|(a, b)| self.trivial_fact(a, b, k))
            .collect()
    }

    fn axiom_pair(&self, p: &[SpaceDescriptor], n: u32) -> Option<Certificate> {
        [
            (ReducibilityAxiom::ProjectivePair, RuleId::ProjectivePair),
            (ReducibilityAxiom::LensPair, RuleId::LensPair),
        ]
        .into_iter()
        .find(|&(axiom, _)| reducibility_axiom_holds(axiom, p, n))
        .map(|(axiom, rule)| {
            let fact = Fact::ReducibilityAxiom {
                axiom,
                factors: p.to_vec(),
                level: n,
            };
            Certificate::reducible(rule, p, n, vec![Premise::new(fact)])
        })
    }

    fn level_lift(&self, p: &[SpaceDescriptor], n: u32) -> Option<Certificate> {
        let base = max_self_closeness(p);
        if n <= base {
            return None;
        }
        let sub = self.check(p, base, false)?;
        let premise = Premise::with_sub(Fact::Reducible { factors: p.to_vec(), level: base }, sub);
        Some(Certificate::reducible(RuleId::LevelLift, p, n, vec![premise]))
    }
}

/// First ring property that holds for `End(g)`, in rule order.
pub(crate) fn ring_property(g: &FgAbGroup) -> Option<(RingProperty, Option<crate::ringprops::RingVerdict>)> {
    let v = is_j_reduced_end(g);
    if v.status == Status::Yes {
        return Some((RingProperty::JReduced, Some(v)));
    }
    let v = is_end_commutative(g);
    if v.status == Status::Yes {
        return Some((RingProperty::Commutative, Some(v)));
    }
    subgroup_criterion(g).then_some((RingProperty::SubgroupCriterion, None))
}

/// Kahn's algorithm on an adjacency matrix.
pub(crate) fn is_acyclic(edges: &[Vec<bool>]) -> bool {
    let m = edges.len();
    let mut indegree: Vec<usize> = (0..m).map(|j| (0..m).filter(|&i| edges[i][j]).count()).collect();
    let mut ready: Vec<usize> = (0..m).filter(|&j| indegree[j] == 0).collect();
    let mut seen = 0;
    while let Some(i) = ready.pop() {
        seen += 1;
        for j in 0..m {
            if edges[i][j] {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    ready.push(j);
                }
            }
        }
    }
    seen == m
}
