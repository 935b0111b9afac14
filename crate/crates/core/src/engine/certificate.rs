//! Certificate documents: a tree of rule applications whose premises can
//! each be re-derived from the catalog.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abgroup::FgAbGroup;
use crate::catalog::{DistanceEvidence, SpaceDescriptor, TrivialityReason};
use crate::ringprops::RingVerdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleId {
    /// Reducible at the largest factor number, so that number is the answer.
    ProductTheorem,
    SingleFactor,
    /// Products of Eilenberg-MacLane spaces in one degree merge into one space.
    EmMerge,
    /// Block-triangular `π_k` for every self-map.
    Triangular,
    /// Finite homotopy groups without common direct factors.
    NoCommonFactor,
    AtomicProduct,
    MoorePivot,
    EmTruncatedPivot,
    /// Pivot against a distant remainder with J-reduced endomorphism rings.
    RadicalPivot,
    ProjectivePair,
    LensPair,
    /// Reducibility at the largest factor number persists at higher levels.
    LevelLift,
}

impl RuleId {
    pub fn anchor(self) -> &'static str {
        match self {
            RuleId::ProductTheorem => "ne(product) = max ne(factor) when reducible at that level",
            RuleId::SingleFactor => "one factor: reducibility is vacuous",
            RuleId::EmMerge => "K(G,k) x K(H,k) is equivalent to K(G+H,k)",
            RuleId::Triangular => "acyclic nontrivial-map graph gives block-triangular pi_k",
            RuleId::NoCommonFactor => "automorphisms of sums without common direct factors are diagonal mod J",
            RuleId::AtomicProduct => "atomic factors of distinct Hurewicz dimensions, no retracts",
            RuleId::MoorePivot => "Moore space of degree n against an n-distant remainder",
            RuleId::EmTruncatedPivot => "K(G,n) against an n-distant remainder with pi_j = 0 for j > n",
            RuleId::RadicalPivot => "distant remainder with J-reduced End(pi_k) and triangular low degrees",
            RuleId::ProjectivePair => "projective spaces of different dimension over one field",
            RuleId::LensPair => "lens spaces of different dimension",
            RuleId::LevelLift => "A_n is reducible for n above the level where A_N is",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingProperty {
    JReduced,
    Commutative,
    /// Every primary component embeds in `⊕_i Z/p^i`.
    SubgroupCriterion,
}

/// Reducibility statements proved by cohomology arguments, encoded by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReducibilityAxiom {
    ProjectivePair,
    LensPair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Conclusion {
    /// `A_level` of the product is reducible.
    Reducible { factors: Vec<SpaceDescriptor>, level: u32 },
    /// `A_level` of an equivalent product of merged factors is reducible.
    ReducibleAfterMerge {
        factors: Vec<SpaceDescriptor>,
        merged: Vec<SpaceDescriptor>,
        level: u32,
    },
    SelfCloseness { factors: Vec<SpaceDescriptor>, value: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "fact", rename_all = "snake_case")]
pub enum Fact {
    /// Catalog constant.
    SelfCloseness { space: SpaceDescriptor, value: u32 },
    /// Exact number of a product; carries a product-theorem sub-certificate.
    ProductSelfCloseness { factors: Vec<SpaceDescriptor>, value: u32 },
    MapsTrivial {
        from: SpaceDescriptor,
        to: SpaceDescriptor,
        degree: u32,
        reason: TrivialityReason,
    },
    FiniteHomotopy { space: SpaceDescriptor, degree: u32, group: FgAbGroup },
    NoCommonDirectFactor {
        first: SpaceDescriptor,
        second: SpaceDescriptor,
        degree: u32,
    },
    Distant {
        x: Vec<SpaceDescriptor>,
        y: Vec<SpaceDescriptor>,
        level: u32,
        evidence: DistanceEvidence,
    },
    RingProperty {
        spaces: Vec<SpaceDescriptor>,
        degree: u32,
        group: FgAbGroup,
        property: RingProperty,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        verdict: Option<RingVerdict>,
    },
    /// `π_j(space) = 0` for every `j > above`.
    Truncated { space: SpaceDescriptor, above: u32 },
    /// Declared: `space` is not a retract of `of`.
    NoRetract { space: SpaceDescriptor, of: SpaceDescriptor },
    EmMerge { degree: u32, groups: Vec<FgAbGroup>, merged: FgAbGroup },
    /// Carries a sub-certificate concluding exactly this.
    Reducible { factors: Vec<SpaceDescriptor>, level: u32 },
    /// Carries a sub-certificate concluding exactly this.
    ReducibleAfterMerge {
        factors: Vec<SpaceDescriptor>,
        merged: Vec<SpaceDescriptor>,
        level: u32,
    },
    ReducibilityAxiom {
        axiom: ReducibilityAxiom,
        factors: Vec<SpaceDescriptor>,
        level: u32,
    },
}

impl Fact {
    pub fn anchor(&self) -> &'static str {
        match self {
            Fact::SelfCloseness { .. } => "catalog:self-closeness",
            Fact::ProductSelfCloseness { .. } => "engine:exact-product",
            Fact::MapsTrivial { .. } => "catalog:maps-trivial-on-pi_k",
            Fact::FiniteHomotopy { .. } => "catalog:finite-homotopy-group",
            Fact::NoCommonDirectFactor { .. } => "abgroup:no-common-direct-factor",
            Fact::Distant { .. } => "catalog:n-distant",
            Fact::RingProperty { .. } => "ringprops:end-ring",
            Fact::Truncated { .. } => "catalog:truncated",
            Fact::NoRetract { .. } => "declared:no-retract",
            Fact::EmMerge { .. } => "catalog:em-merge",
            Fact::Reducible { .. } => "engine:reducible",
            Fact::ReducibleAfterMerge { .. } => "engine:reducible-after-merge",
            Fact::ReducibilityAxiom { .. } => "axiom:cohomology",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Premise {
    pub fact: Fact,
    pub anchor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub: Option<Box<Certificate>>,
}

impl Premise {
    pub fn new(fact: Fact) -> Self {
        let anchor = fact.anchor().to_string();
        Premise { fact, anchor, sub: None }
    }

    pub fn with_sub(fact: Fact, sub: Certificate) -> Self {
        let anchor = fact.anchor().to_string();
        Premise { fact, anchor, sub: Some(Box::new(sub)) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub rule_id: RuleId,
    pub level: u32,
    pub anchor: String,
    pub premises: Vec<Premise>,
    pub conclusion: Conclusion,
}

impl Certificate {
    pub fn new(rule_id: RuleId, level: u32, premises: Vec<Premise>, conclusion: Conclusion) -> Self {
        Certificate {
            rule_id,
            level,
            anchor: rule_id.anchor().to_string(),
            premises,
            conclusion,
        }
    }

    /// Conclusion `Reducible { factors, level }`.
    pub fn reducible(rule_id: RuleId, factors: &[SpaceDescriptor], level: u32, premises: Vec<Premise>) -> Self {
        Certificate::new(
            rule_id,
            level,
            premises,
            Conclusion::Reducible { factors: factors.to_vec(), level },
        )
    }

    /// Number of certificate nodes, counting sub-certificates.
    pub fn node_count(&self) -> usize {
        1 + self
            .premises
            .iter()
            .filter_map(|p| p.sub.as_ref())
            .map(|s| s.node_count())
            .sum::<usize>()
    }

    /// Rule ids in pre-order.
    pub fn rules(&self) -> Vec<RuleId> {
        let mut out = vec![self.rule_id];
        for s in self.premises.iter().filter_map(|p| p.sub.as_ref()) {
            out.extend(s.rules());
        }
        out
    }
}

fn product(factors: &[SpaceDescriptor]) -> String {
    factors.iter().map(ToString::to_string).collect::<Vec<_>>().join(" x ")
}

/// The serialized name of a unit enum variant, from its `Debug` form.
fn kebab<T: fmt::Debug>(value: &T) -> String {
    let mut out = String::new();
    for (i, c) in format!("{value:?}").chars().enumerate() {
        if c.is_ascii_uppercase() && i > 0 {
            out.push('-');
        }
        out.push(c.to_ascii_lowercase());
    }
    out
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::Reducible { factors, level } => write!(f, "A_{level}({}) is reducible", product(factors)),
            Conclusion::ReducibleAfterMerge { factors, merged, level } => write!(
                f,
                "A_{level}({}) is reducible, via {}",
                product(factors),
                product(merged)
            ),
            Conclusion::SelfCloseness { factors, value } => write!(f, "NE({}) = {value}", product(factors)),
        }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fact::SelfCloseness { space, value } => write!(f, "NE({space}) = {value}"),
            Fact::ProductSelfCloseness { factors, value } => write!(f, "NE({}) = {value}", product(factors)),
            Fact::MapsTrivial { from, to, degree, reason } => {
                write!(f, "every map {from} -> {to} is zero on pi_{degree}")?;
                match reason {
                    TrivialityReason::HomVanishes { source, target } => write!(f, " (Hom({source}, {target}) = 0)"),
                    TrivialityReason::SphereNullity { sphere_dim } => write!(f, " (pi_{sphere_dim}({to}) = 0)"),
                }
            }
            Fact::FiniteHomotopy { space, degree, group } => write!(f, "pi_{degree}({space}) = {group} is finite"),
            Fact::NoCommonDirectFactor { first, second, degree } => {
                write!(f, "pi_{degree}({first}) and pi_{degree}({second}) share no direct factor")
            }
            Fact::Distant { x, y, level, evidence } => {
                write!(f, "{} and {} are {level}-distant", product(x), product(y))?;
                match evidence {
                    DistanceEvidence::PerDegree { degrees } => write!(f, " ({} degrees checked)", degrees.len()),
                    DistanceEvidence::Axiom { axiom, .. } => write!(f, " ({})", kebab(axiom)),
                }
            }
            Fact::RingProperty { spaces, degree, group, property, .. } => write!(
                f,
                "End({group}) is {} for pi_{degree}({})",
                kebab(property),
                product(spaces)
            ),
            Fact::Truncated { space, above } => write!(f, "pi_j({space}) = 0 for j > {above}"),
            Fact::NoRetract { space, of } => write!(f, "{space} is not a retract of {of}"),
            Fact::EmMerge { degree, groups, merged } => {
                let gs: Vec<String> = groups.iter().map(ToString::to_string).collect();
                write!(f, "K({}, {degree}) merge to K({merged}, {degree})", gs.join(" | "))
            }
            Fact::Reducible { factors, level } => write!(f, "A_{level}({}) is reducible", product(factors)),
            Fact::ReducibleAfterMerge { factors, merged, level } => write!(
                f,
                "A_{level}({}) is reducible, via {}",
                product(factors),
                product(merged)
            ),
            Fact::ReducibilityAxiom { axiom, factors, level } => {
                write!(f, "A_{level}({}) is reducible ({})", product(factors), kebab(axiom))
            }
        }
    }
}

impl Certificate {
    fn render(&self, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pad = "  ".repeat(depth);
        writeln!(f, "{pad}{} [level {}]: {}", kebab(&self.rule_id), self.level, self.conclusion)?;
        for p in &self.premises {
            writeln!(f, "{pad}  - {}", p.fact)?;
            if let Some(sub) = &p.sub {
                sub.render(depth + 2, f)?;
            }
        }
        Ok(())
    }
}

/// An indented rule tree, one premise per line.
impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(0, f)
    }
}
