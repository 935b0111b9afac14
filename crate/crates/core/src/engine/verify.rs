//! Certificate replay. Every premise is re-derived from the catalog and the
//! group algorithms; nothing computed during the search is trusted.

use serde::Serialize;
use thiserror::Error;

use crate::abgroup::{direct_sum, has_common_direct_factor};
use crate::catalog::{Catalog, SpaceDescriptor};
use crate::ringprops::{is_end_commutative, is_j_reduced_end, subgroup_criterion, Status};

use super::certificate::{Certificate, Conclusion, Fact, Premise, ReducibilityAxiom, RingProperty, RuleId};
use super::rules::{is_acyclic, max_self_closeness, merge_em, reducibility_axiom_holds, truncated_at};
use super::{EngineResult, ResultStatus};

/// The first node that failed to verify, with a dotted path from the root.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("verification failed at {path}: {reason}")]
pub struct VerificationFailure {
    pub path: String,
    pub reason: String,
}

type Check = Result<(), VerificationFailure>;

fn fail(path: &str, reason: impl Into<String>) -> Check {
    Err(VerificationFailure {
        path: path.to_string(),
        reason: reason.into(),
    })
}

fn ensure(cond: bool, path: &str, reason: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        fail(path, reason())
    }
}

fn sorted(v: impl IntoIterator<Item = SpaceDescriptor>) -> Vec<SpaceDescriptor> {
    let mut v: Vec<_> = v.into_iter().collect();
    v.sort();
    v
}

/// Replays a certificate against `catalog`.
pub fn verify_certificate(catalog: &Catalog, cert: &Certificate) -> Check {
    Verifier { catalog }.node(cert, "certificate")
}

/// Checks an engine result: the value is the lower bound, and `EXACT`
/// carries a certificate concluding that value for these factors.
pub fn verify_result(catalog: &Catalog, result: &EngineResult) -> Check {
    let path = "result";
    ensure(!result.factors.is_empty(), path, || "empty product".into())?;
    for f in &result.factors {
        if let Err(e) = f.validate() {
            return fail(path, e.to_string());
        }
    }
    let bound = max_self_closeness(&result.factors);
    ensure(result.value == bound, path, || {
        format!("value {} differs from the lower bound {bound}", result.value)
    })?;
    match (result.status, &result.certificate) {
        (ResultStatus::Exact, None) => fail(path, "EXACT result without a certificate"),
        (ResultStatus::Exact, Some(c)) => {
            let expected = Conclusion::SelfCloseness {
                factors: result.factors.clone(),
                value: result.value,
            };
            ensure(c.conclusion == expected, path, || {
                "certificate concludes something other than this result".into()
            })?;
            verify_certificate(catalog, c)
        }
        (ResultStatus::LowerBound, None) => Ok(()),
        (ResultStatus::LowerBound, Some(_)) => fail(path, "LOWER_BOUND result carries a certificate"),
    }
}

struct Verifier<'a> {
    catalog: &'a Catalog,
}

impl Verifier<'_> {
    fn node(&self, c: &Certificate, path: &str) -> Check {
        ensure(c.anchor == c.rule_id.anchor(), path, || {
            format!("anchor `{}` does not match rule {:?}", c.anchor, c.rule_id)
        })?;
        ensure(c.level >= 1, path, || "level must be at least 1".into())?;
        let factors = match &c.conclusion {
            Conclusion::Reducible { factors, level } | Conclusion::ReducibleAfterMerge { factors, level, .. } => {
                ensure(*level == c.level, path, || "conclusion level differs from node level".into())?;
                factors
            }
            Conclusion::SelfCloseness { factors, value } => {
                ensure(*value == c.level, path, || "conclusion value differs from node level".into())?;
                factors
            }
        };
        ensure(!factors.is_empty(), path, || "empty product".into())?;
        for f in factors {
            if let Err(e) = f.validate() {
                return fail(path, e.to_string());
            }
        }
        for (i, p) in c.premises.iter().enumerate() {
            self.premise(p, &format!("{path}.premises[{i}]"))?;
        }
        self.schema(c, factors, path)
    }

    fn premise(&self, p: &Premise, path: &str) -> Check {
        ensure(p.anchor == p.fact.anchor(), path, || format!("anchor `{}` does not match fact", p.anchor))?;
        let needs_sub = matches!(
            p.fact,
            Fact::ProductSelfCloseness { .. } | Fact::Reducible { .. } | Fact::ReducibleAfterMerge { .. }
        );
        match (&p.sub, needs_sub) {
            (None, true) => return fail(path, "fact requires a sub-certificate"),
            (Some(_), false) => return fail(path, "unexpected sub-certificate"),
            (Some(sub), true) => {
                let sub_path = format!("{path}.sub");
                let expected = match &p.fact {
                    Fact::ProductSelfCloseness { factors, value } => {
                        ensure(sub.rule_id == RuleId::ProductTheorem, &sub_path, || {
                            "exact product needs a product-theorem certificate".into()
                        })?;
                        Conclusion::SelfCloseness { factors: factors.clone(), value: *value }
                    }
                    Fact::Reducible { factors, level } => Conclusion::Reducible {
                        factors: factors.clone(),
                        level: *level,
                    },
                    Fact::ReducibleAfterMerge { factors, merged, level } => Conclusion::ReducibleAfterMerge {
                        factors: factors.clone(),
                        merged: merged.clone(),
                        level: *level,
                    },
                    _ => unreachable!("only sub-certificate facts reach here"),
                };
                ensure(sub.conclusion == expected, &sub_path, || {
                    "sub-certificate concludes a different statement".into()
                })?;
                return self.node(sub, &sub_path);
            }
            (None, false) => {}
        }
        self.fact(&p.fact, path)
    }

    fn fact(&self, fact: &Fact, path: &str) -> Check {
        let cat = self.catalog;
        match fact {
            Fact::SelfCloseness { space, value } => ensure(
                space.validate().is_ok() && *value == space.self_closeness(),
                path,
                || format!("self-closeness of {space} is not {value}"),
            ),
            Fact::MapsTrivial { from, to, degree, reason } => {
                ensure(cat.recheck_trivial(from, to, *degree, reason), path, || {
                    format!("cannot re-derive that maps {from} -> {to} are trivial on pi_{degree}")
                })
            }
            Fact::FiniteHomotopy { space, degree, group } => ensure(
                *degree >= 1
                    && group.is_finite()
                    && cat.homotopy_group(space, *degree) == Ok(Some(group.clone())),
                path,
                || format!("pi_{degree}({space}) is not the finite group {group}"),
            ),
            Fact::NoCommonDirectFactor { first, second, degree } => {
                let groups = (
                    cat.homotopy_group(first, *degree).ok().flatten(),
                    cat.homotopy_group(second, *degree).ok().flatten(),
                );
                ensure(
                    matches!(&groups, (Some(a), Some(b)) if !has_common_direct_factor(a, b)),
                    path,
                    || format!("pi_{degree} of {first} and {second} share a direct factor or are unknown"),
                )
            }
            Fact::Distant { x, y, level, evidence } => ensure(
                !x.is_empty() && !y.is_empty() && cat.recheck_distance(x, y, *level, evidence),
                path,
                || format!("cannot re-derive {level}-distance"),
            ),
            Fact::RingProperty { spaces, degree, group, property, verdict } => {
                let actual = if *degree >= 1 {
                    cat.product_homotopy_group(spaces, *degree).ok().flatten()
                } else {
                    None
                };
                ensure(actual.as_ref() == Some(group), path, || {
                    format!("pi_{degree} of the remainder is not {group}")
                })?;
                let holds = match property {
                    RingProperty::JReduced | RingProperty::Commutative => {
                        let fresh = if *property == RingProperty::JReduced {
                            is_j_reduced_end(group)
                        } else {
                            is_end_commutative(group)
                        };
                        fresh.status == Status::Yes
                            && verdict.as_ref().is_some_and(|v| v == &fresh && v.recheck(group))
                    }
                    RingProperty::SubgroupCriterion => verdict.is_none() && subgroup_criterion(group),
                };
                ensure(holds, path, || format!("End({group}) lacks property {property:?}"))
            }
            Fact::Truncated { space, above } => ensure(truncated_at(space, *above), path, || {
                format!("cannot show pi_j({space}) = 0 for j > {above}")
            }),
            Fact::NoRetract { space, of } => ensure(
                matches!(
                    (space, of),
                    (SpaceDescriptor::Atomic(a), SpaceDescriptor::Atomic(b)) if a.not_retract_of.contains(&b.name)
                ),
                path,
                || format!("no declaration that {space} is not a retract of {of}"),
            ),
            Fact::EmMerge { groups, merged, .. } => ensure(
                groups.len() >= 2 && &direct_sum(groups) == merged,
                path,
                || "merged group is not the direct sum".into(),
            ),
            Fact::ReducibilityAxiom { axiom, factors, level } => {
                ensure(reducibility_axiom_holds(*axiom, factors, *level), path, || {
                    format!("axiom {axiom:?} does not apply at level {level}")
                })
            }
            Fact::ProductSelfCloseness { .. } | Fact::Reducible { .. } | Fact::ReducibleAfterMerge { .. } => {
                unreachable!("handled with the sub-certificate")
            }
        }
    }

    fn schema(&self, c: &Certificate, factors: &[SpaceDescriptor], path: &str) -> Check {
        let n = c.level;
        let facts: Vec<&Fact> = c.premises.iter().map(|p| &p.fact).collect();
        let has = |f: &Fact| facts.contains(&f);
        let reducible = |factors: &[SpaceDescriptor], level: u32| Fact::Reducible {
            factors: factors.to_vec(),
            level,
        };
        let reducible_conclusion = matches!(c.conclusion, Conclusion::Reducible { .. });
        if !matches!(c.rule_id, RuleId::ProductTheorem | RuleId::EmMerge) {
            ensure(reducible_conclusion, path, || "rule must conclude reducibility".into())?;
        }
        match c.rule_id {
            RuleId::ProductTheorem => {
                let Conclusion::SelfCloseness { .. } = &c.conclusion else {
                    return fail(path, "product theorem must conclude a self-closeness number");
                };
                let bound = max_self_closeness(factors);
                ensure(n == bound, path, || format!("value {n} is not the maximum {bound}"))?;
                let step = facts.iter().any(|f| match f {
                    Fact::Reducible { factors: fs, level } => fs == factors && *level == n,
                    Fact::ReducibleAfterMerge { factors: fs, level, .. } => fs == factors && *level == n,
                    _ => false,
                });
                ensure(step, path, || "missing reducibility at the maximum level".into())
            }
            RuleId::SingleFactor => ensure(factors.len() == 1 && facts.is_empty(), path, || {
                "single-factor rule needs exactly one factor and no premises".into()
            }),
            RuleId::EmMerge => {
                let Conclusion::ReducibleAfterMerge { merged, .. } = &c.conclusion else {
                    return fail(path, "merge rule must conclude reducibility after merging");
                };
                let Some((expected, groups)) = merge_em(factors) else {
                    return fail(path, "merge needs Eilenberg-MacLane factors only");
                };
                ensure(merged == &expected && !groups.is_empty(), path, || {
                    "merged factors do not match".into()
                })?;
                for (degree, groups) in groups {
                    let merged = direct_sum(&groups);
                    ensure(has(&Fact::EmMerge { degree, groups, merged }), path, || {
                        format!("missing merge fact in degree {degree}")
                    })?;
                }
                ensure(has(&reducible(merged, n)), path, || "missing merged reducibility".into())
            }
            RuleId::Triangular => {
                ensure(factors.len() >= 2, path, || "needs at least two factors".into())?;
                for k in 1..=n {
                    let edges: Vec<Vec<bool>> = factors
                        .iter()
                        .enumerate()
                        .map(|(i, a)| {
                            factors
                                .iter()
                                .enumerate()
                                .map(|(j, b)| {
                                    i != j
                                        && !facts.iter().any(|f| {
                                            matches!(f, Fact::MapsTrivial { from, to, degree, .. }
                                                if from == a && to == b && *degree == k)
                                        })
                                })
                                .collect()
                        })
                        .collect();
                    ensure(is_acyclic(&edges), path, || {
                        format!("possibly nontrivial maps form a cycle in degree {k}")
                    })?;
                }
                Ok(())
            }
            RuleId::NoCommonFactor => {
                ensure(factors.len() >= 2, path, || "needs at least two factors".into())?;
                for k in 1..=n {
                    for (i, a) in factors.iter().enumerate() {
                        let finite = facts.iter().any(|f| {
                            matches!(f, Fact::FiniteHomotopy { space, degree, .. } if space == a && *degree == k)
                        });
                        ensure(finite, path, || format!("missing finiteness of pi_{k}({a})"))?;
                        for b in &factors[i + 1..] {
                            let pair = facts.iter().any(|f| {
                                matches!(f, Fact::NoCommonDirectFactor { first, second, degree }
                                    if *degree == k && ((first == a && second == b) || (first == b && second == a)))
                            });
                            ensure(pair, path, || format!("missing no-common-factor fact for {a}, {b} in degree {k}"))?;
                        }
                    }
                }
                Ok(())
            }
            RuleId::AtomicProduct => {
                let mut dims = Vec::new();
                for f in factors {
                    let SpaceDescriptor::Atomic(a) = f else {
                        return fail(path, format!("{f} is not atomic"));
                    };
                    dims.push(a.hurewicz_dim);
                }
                let mut distinct = dims.clone();
                distinct.sort_unstable();
                distinct.dedup();
                ensure(distinct.len() == dims.len(), path, || "Hurewicz dimensions repeat".into())?;
                ensure(n == max_self_closeness(factors), path, || "level must be the largest dimension".into())?;
                for (i, a) in factors.iter().enumerate() {
                    for (j, b) in factors.iter().enumerate() {
                        if i != j {
                            let fact = Fact::NoRetract { space: a.clone(), of: b.clone() };
                            ensure(has(&fact), path, || format!("missing no-retract fact for {a}, {b}"))?;
                        }
                    }
                }
                Ok(())
            }
            RuleId::MoorePivot | RuleId::EmTruncatedPivot | RuleId::RadicalPivot => {
                self.pivot_schema(c.rule_id, factors, n, &facts, path)
            }
            RuleId::ProjectivePair | RuleId::LensPair => {
                let axiom = if c.rule_id == RuleId::ProjectivePair {
                    ReducibilityAxiom::ProjectivePair
                } else {
                    ReducibilityAxiom::LensPair
                };
                let fact = Fact::ReducibilityAxiom { axiom, factors: factors.to_vec(), level: n };
                ensure(has(&fact), path, || "missing axiom premise".into())
            }
            RuleId::LevelLift => {
                let base = max_self_closeness(factors);
                ensure(n > base, path, || format!("level {n} is not above the maximum {base}"))?;
                ensure(has(&reducible(factors, base)), path, || {
                    "missing reducibility at the maximum level".into()
                })
            }
        }
    }

    fn pivot_schema(&self, rule: RuleId, factors: &[SpaceDescriptor], n: u32, facts: &[&Fact], path: &str) -> Check {
        let distances: Vec<_> = facts
            .iter()
            .filter_map(|f| match f {
                Fact::Distant { x, y, level, .. } if *level == n => Some((x, y)),
                _ => None,
            })
            .collect();
        let [(x, y)] = distances[..] else {
            return fail(path, "pivot rules need exactly one distance premise at the node level");
        };
        ensure(
            sorted(x.iter().chain(y.iter()).cloned()) == sorted(factors.iter().cloned()),
            path,
            || "pivot and remainder do not partition the factors".into(),
        )?;
        let has = |f: &Fact| facts.contains(&f);
        ensure(has(&Fact::Reducible { factors: y.clone(), level: n }), path, || {
            "missing reducibility of the remainder".into()
        })?;
        match rule {
            RuleId::MoorePivot => ensure(
                matches!(&x[..], [p] if p.moore_degree() == Some(n)),
                path,
                || format!("pivot must be a Moore space or sphere of degree {n}"),
            ),
            RuleId::EmTruncatedPivot => {
                ensure(
                    n >= 2 && matches!(&x[..], [p] if p.em_degree() == Some(n)),
                    path,
                    || format!("pivot must be K(G,{n}) with {n} >= 2"),
                )?;
                for s in y {
                    ensure(has(&Fact::Truncated { space: s.clone(), above: n }), path, || {
                        format!("missing truncation of {s}")
                    })?;
                }
                Ok(())
            }
            RuleId::RadicalPivot => {
                let ne_x = max_self_closeness(x);
                let ne_fact = if let [p] = &x[..] {
                    Fact::SelfCloseness { space: p.clone(), value: ne_x }
                } else {
                    Fact::ProductSelfCloseness { factors: x.clone(), value: ne_x }
                };
                ensure(has(&ne_fact), path, || "missing self-closeness of the pivot".into())?;
                ensure(n >= ne_x, path, || format!("level {n} is below the pivot number {ne_x}"))?;
                for k in 1..=n {
                    let ring = facts.iter().any(|f| {
                        matches!(f, Fact::RingProperty { spaces, degree, .. } if spaces == y && *degree == k)
                    });
                    ensure(ring, path, || format!("missing ring property in degree {k}"))?;
                }
                let trivial = |a: &SpaceDescriptor, b: &SpaceDescriptor, k: u32| {
                    facts.iter().any(|f| {
                        matches!(f, Fact::MapsTrivial { from, to, degree, .. } if from == a && to == b && *degree == k)
                    })
                };
                for k in 1..=ne_x {
                    let back = y.iter().all(|b| x.iter().all(|a| trivial(b, a, k)));
                    let forth = x.iter().all(|a| y.iter().all(|b| trivial(a, b, k)));
                    ensure(back || forth, path, || {
                        format!("degree {k} is not block-triangular between pivot and remainder")
                    })?;
                }
                Ok(())
            }
            _ => unreachable!("pivot schema for pivot rules only"),
        }
    }
}
