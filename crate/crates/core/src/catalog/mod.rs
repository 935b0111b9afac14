//! Catalogued spaces: homotopy groups, self-closeness numbers, and the
//! map-triviality and distance facts consumed by the reducibility rules.

mod sphere_table;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abgroup::{direct_sum, hom_group, is_prime, FgAbGroup};
use crate::oracle::{all_composites_nilpotent, Bounds};

pub use sphere_table::SphereTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid space {space}: {message}")]
    InvalidSpace { space: String, message: String },
    #[error("homotopy degree must be at least 1")]
    DegreeZero,
    #[error("sphere table line {line}, column {column}: {message}")]
    Table { line: usize, column: usize, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

/// A nonzero cyclic module over the `p`-local integers: `Z/p^r`, or the
/// local integers themselves when `exponent` is `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocalCyclicModule {
    pub prime: u64,
    pub exponent: Option<u32>,
}

impl LocalCyclicModule {
    /// The module as a finitely generated group, when it is one.
    pub fn as_group(&self) -> Option<FgAbGroup> {
        let r = self.exponent?;
        self.prime.checked_pow(r).map(FgAbGroup::cyclic)
    }
}

/// A `p`-local atomic space known through its bottom homotopy group and
/// user-declared retract facts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AtomicSpace {
    pub name: String,
    pub hurewicz_dim: u32,
    pub module: LocalCyclicModule,
    /// Names of atomic spaces this one is declared not to be a retract of.
    pub not_retract_of: BTreeSet<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceDescriptor {
    Sphere { n: u32 },
    Moore { group: FgAbGroup, n: u32 },
    EilenbergMacLane { group: FgAbGroup, n: u32 },
    RealProjective { n: u32 },
    ComplexProjective { n: u32 },
    QuaternionicProjective { n: u32 },
    /// The lens space `S^{2n+1}/(Z/p)`.
    Lens { n: u32, p: u64 },
    Atomic(AtomicSpace),
}

impl SpaceDescriptor {
    pub fn validate(&self) -> Result<(), CatalogError> {
        let bad = |message: &str| {
            Err(CatalogError::InvalidSpace {
                space: self.to_string(),
                message: message.to_string(),
            })
        };
        match self {
            SpaceDescriptor::Sphere { n } if *n < 1 => bad("sphere dimension must be at least 1"),
            SpaceDescriptor::Moore { n, .. } if *n < 2 => bad("Moore space degree must be at least 2"),
            SpaceDescriptor::Moore { group, .. } if group.is_trivial() => bad("Moore space group must be nonzero"),
            SpaceDescriptor::EilenbergMacLane { n, .. } if *n < 1 => {
                bad("Eilenberg-MacLane degree must be at least 1")
            }
            SpaceDescriptor::EilenbergMacLane { group, .. } if group.is_trivial() => {
                bad("Eilenberg-MacLane group must be nonzero")
            }
            SpaceDescriptor::RealProjective { n }
            | SpaceDescriptor::ComplexProjective { n }
            | SpaceDescriptor::QuaternionicProjective { n }
                if *n < 2 =>
            {
                bad("projective dimension must be at least 2")
            }
            SpaceDescriptor::Lens { n, .. } if *n < 1 => bad("lens space dimension 2n+1 needs n >= 1"),
            SpaceDescriptor::Lens { p, .. } if !is_prime(*p) => bad("lens space order must be prime"),
            SpaceDescriptor::Atomic(a) if a.hurewicz_dim < 1 => bad("Hurewicz dimension must be at least 1"),
            SpaceDescriptor::Atomic(a) if !is_prime(a.module.prime) => bad("local prime must be prime"),
            SpaceDescriptor::Atomic(a) if a.module.exponent == Some(0) => bad("module exponent must be at least 1"),
            SpaceDescriptor::Atomic(a) if a.module.as_group().is_none() && a.module.exponent.is_some() => {
                bad("module order overflows 64 bits")
            }
            _ => Ok(()),
        }
    }

    /// Moore spaces `M(Z, n)` are spheres; every other descriptor is kept.
    fn as_sphere(&self) -> Option<u32> {
        match self {
            SpaceDescriptor::Sphere { n } => Some(*n),
            SpaceDescriptor::Moore { group, n } if group == &FgAbGroup::integers() => Some(*n),
            _ => None,
        }
    }

    /// The degree of a Moore space or sphere of dimension at least 2.
    pub fn moore_degree(&self) -> Option<u32> {
        match self {
            SpaceDescriptor::Moore { n, .. } => Some(*n),
            SpaceDescriptor::Sphere { n } if *n >= 2 => Some(*n),
            _ => None,
        }
    }

    pub fn em_degree(&self) -> Option<u32> {
        match self {
            SpaceDescriptor::EilenbergMacLane { n, .. } => Some(*n),
            _ => None,
        }
    }

    /// `(real dimension of the field, n)` for projective spaces.
    pub fn projective(&self) -> Option<(u32, u32)> {
        match self {
            SpaceDescriptor::RealProjective { n } => Some((1, *n)),
            SpaceDescriptor::ComplexProjective { n } => Some((2, *n)),
            SpaceDescriptor::QuaternionicProjective { n } => Some((4, *n)),
            _ => None,
        }
    }

    /// Built-in self-closeness number.
    pub fn self_closeness(&self) -> u32 {
        match self {
            SpaceDescriptor::Sphere { n }
            | SpaceDescriptor::Moore { n, .. }
            | SpaceDescriptor::EilenbergMacLane { n, .. }
            | SpaceDescriptor::RealProjective { n } => *n,
            SpaceDescriptor::ComplexProjective { .. } => 2,
            SpaceDescriptor::QuaternionicProjective { .. } => 4,
            SpaceDescriptor::Lens { n, .. } => 2 * n + 1,
            SpaceDescriptor::Atomic(a) => a.hurewicz_dim,
        }
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDescriptor::Sphere { n } => write!(f, "S^{n}"),
            SpaceDescriptor::Moore { group, n } => write!(f, "M({group},{n})"),
            SpaceDescriptor::EilenbergMacLane { group, n } => write!(f, "K({group},{n})"),
            SpaceDescriptor::RealProjective { n } => write!(f, "RP^{n}"),
            SpaceDescriptor::ComplexProjective { n } => write!(f, "CP^{n}"),
            SpaceDescriptor::QuaternionicProjective { n } => write!(f, "HP^{n}"),
            SpaceDescriptor::Lens { n, p } => write!(f, "L({},{p})", 2 * n + 1),
            SpaceDescriptor::Atomic(a) => write!(f, "atomic:{}", a.name),
        }
    }
}

/// Why every map induces zero on `π_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum TrivialityReason {
    /// `Hom(π_k(X), π_k(Y)) = 0`.
    HomVanishes { source: FgAbGroup, target: FgAbGroup },
    /// `X = S^a` and `π_a(Y) = 0`, so every map `X → Y` is null.
    SphereNullity { sphere_dim: u32 },
}

/// Per-degree reason for `n`-distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeReason {
    /// `Hom(π_k(X), π_k(Y)) = 0`.
    NoMapsForward,
    /// `Hom(π_k(Y), π_k(X)) = 0`.
    NoMapsBackward,
    /// Every composite `π_k(Y) → π_k(X) → π_k(Y)` is nilpotent, by enumeration.
    CompositesNilpotent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeEvidence {
    pub degree: u32,
    pub x_group: FgAbGroup,
    pub y_group: FgAbGroup,
    pub reason: DegreeReason,
}

/// Distance facts proved by homology or cohomology arguments, encoded by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceAxiom {
    /// A Moore space or sphere of degree `a` against Moore spaces and spheres
    /// of other degrees, up to level `a`: composites vanish on `H_a`, hence on
    /// `π_a` by naturality of the Hurewicz isomorphism.
    MooreHurewicz,
    /// Projective spaces over one field in different dimensions: maps from the
    /// larger to the smaller are zero in cohomology.
    ProjectiveCohomology,
    /// Lens spaces of different dimensions.
    LensCohomology,
}

impl DistanceAxiom {
    pub fn anchor(self) -> &'static str {
        match self {
            DistanceAxiom::MooreHurewicz => "distance:moore-hurewicz-naturality",
            DistanceAxiom::ProjectiveCohomology => "distance:projective-cohomology-ring",
            DistanceAxiom::LensCohomology => "distance:lens-finite-top-group",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum DistanceEvidence {
    PerDegree { degrees: Vec<DegreeEvidence> },
    Axiom { axiom: DistanceAxiom, anchor: String },
}

/// Immutable catalog: the sphere table plus enumeration bounds for
/// brute-force distance checks.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    table: SphereTable,
    bounds: Bounds,
}

impl Catalog {
    pub fn new(table: SphereTable, bounds: Bounds) -> Self {
        Catalog { table, bounds }
    }

    pub fn table(&self) -> &SphereTable {
        &self.table
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    /// `π_k(X)`, or `None` when unknown.
    pub fn homotopy_group(&self, x: &SpaceDescriptor, k: u32) -> Result<Option<FgAbGroup>, CatalogError> {
        if k == 0 {
            return Err(CatalogError::DegreeZero);
        }
        let sphere = |n: u32, k: u32| self.table.lookup(n, k);
        let zero = || Some(FgAbGroup::trivial());
        Ok(match x {
            _ if x.as_sphere().is_some() => sphere(x.as_sphere().unwrap(), k),
            SpaceDescriptor::Moore { group, n } => match k.cmp(n) {
                std::cmp::Ordering::Less => zero(),
                std::cmp::Ordering::Equal => Some(group.clone()),
                std::cmp::Ordering::Greater => None,
            },
            SpaceDescriptor::EilenbergMacLane { group, n } => {
                if k == *n {
                    Some(group.clone())
                } else {
                    zero()
                }
            }
            SpaceDescriptor::RealProjective { n } => {
                if k == 1 {
                    Some(FgAbGroup::cyclic(2))
                } else {
                    sphere(*n, k)
                }
            }
            SpaceDescriptor::ComplexProjective { n } => match k {
                1 => zero(),
                2 => Some(FgAbGroup::integers()),
                _ => sphere(2 * n + 1, k),
            },
            // Long exact sequence of S^3 → S^{4n+3} → HP^n: π_k(HP^n) ≅ π_{k-1}(S^3)
            // while both neighbouring groups of S^{4n+3} vanish.
            SpaceDescriptor::QuaternionicProjective { n } => {
                if k < 4 {
                    zero()
                } else if k <= 4 * n + 2 {
                    sphere(3, k - 1)
                } else {
                    None
                }
            }
            SpaceDescriptor::Lens { n, p } => {
                if k == 1 {
                    Some(FgAbGroup::cyclic(*p))
                } else {
                    sphere(2 * n + 1, k)
                }
            }
            SpaceDescriptor::Atomic(a) => match k.cmp(&a.hurewicz_dim) {
                std::cmp::Ordering::Less => zero(),
                std::cmp::Ordering::Equal => a.module.as_group(),
                std::cmp::Ordering::Greater => None,
            },
            SpaceDescriptor::Sphere { .. } => unreachable!("handled by the sphere arm"),
        })
    }

    /// `π_k` of a product: the direct sum over factors.
    pub fn product_homotopy_group(
        &self,
        factors: &[SpaceDescriptor],
        k: u32,
    ) -> Result<Option<FgAbGroup>, CatalogError> {
        let mut parts = Vec::with_capacity(factors.len());
        for x in factors {
            match self.homotopy_group(x, k)? {
                Some(g) => parts.push(g),
                None => return Ok(None),
            }
        }
        Ok(Some(direct_sum(&parts)))
    }

    /// Whether every map `X → Y` induces zero on `π_k`.
    pub fn maps_trivial(&self, x: &SpaceDescriptor, y: &SpaceDescriptor, k: u32) -> Option<TrivialityReason> {
        if k == 0 {
            return None;
        }
        if let (Ok(Some(gx)), Ok(Some(gy))) = (self.homotopy_group(x, k), self.homotopy_group(y, k)) {
            if hom_group(&gx, &gy).is_trivial() {
                return Some(TrivialityReason::HomVanishes { source: gx, target: gy });
            }
        }
        if let SpaceDescriptor::Sphere { n: a } = x {
            if matches!(self.homotopy_group(y, *a), Ok(Some(g)) if g.is_trivial()) {
                return Some(TrivialityReason::SphereNullity { sphere_dim: *a });
            }
        }
        None
    }

    /// Re-derives a triviality fact from scratch.
    pub fn recheck_trivial(
        &self,
        x: &SpaceDescriptor,
        y: &SpaceDescriptor,
        k: u32,
        reason: &TrivialityReason,
    ) -> bool {
        if k == 0 {
            return false;
        }
        match reason {
            TrivialityReason::HomVanishes { source, target } => {
                self.homotopy_group(x, k) == Ok(Some(source.clone()))
                    && self.homotopy_group(y, k) == Ok(Some(target.clone()))
                    && hom_group(source, target).is_trivial()
            }
            TrivialityReason::SphereNullity { sphere_dim } => {
                x == &SpaceDescriptor::Sphere { n: *sphere_dim }
                    && matches!(self.homotopy_group(y, *sphere_dim), Ok(Some(g)) if g.is_trivial())
            }
        }
    }

    /// Evidence that the products `X` and `Y` are homotopically `n`-distant.
    pub fn are_n_distant(
        &self,
        x: &[SpaceDescriptor],
        y: &[SpaceDescriptor],
        n: u32,
    ) -> Option<DistanceEvidence> {
        if let Some(degrees) = self.per_degree_distance(x, y, n) {
            return Some(DistanceEvidence::PerDegree { degrees });
        }
        distance_axiom(x, y, n).map(|axiom| DistanceEvidence::Axiom {
            axiom,
            anchor: axiom.anchor().to_string(),
        })
    }

    fn per_degree_distance(
        &self,
        x: &[SpaceDescriptor],
        y: &[SpaceDescriptor],
        n: u32,
    ) -> Option<Vec<DegreeEvidence>> {
        (1..=n)
            .map(|k| {
                let gx = self.product_homotopy_group(x, k).ok()??;
                let gy = self.product_homotopy_group(y, k).ok()??;
                let reason = self.degree_reason(&gx, &gy)?;
                Some(DegreeEvidence { degree: k, x_group: gx, y_group: gy, reason })
            })
            .collect()
    }

    fn degree_reason(&self, gx: &FgAbGroup, gy: &FgAbGroup) -> Option<DegreeReason> {
        if hom_group(gx, gy).is_trivial() {
            Some(DegreeReason::NoMapsForward)
        } else if hom_group(gy, gx).is_trivial() {
            Some(DegreeReason::NoMapsBackward)
        } else if all_composites_nilpotent(&gx.generators(), &gy.generators(), &self.bounds) == Some(true) {
            Some(DegreeReason::CompositesNilpotent)
        } else {
            None
        }
    }

    /// Re-derives distance evidence from scratch.
    pub fn recheck_distance(
        &self,
        x: &[SpaceDescriptor],
        y: &[SpaceDescriptor],
        n: u32,
        evidence: &DistanceEvidence,
    ) -> bool {
        match evidence {
            DistanceEvidence::PerDegree { degrees } => {
                degrees.len() == n as usize
                    && degrees.iter().enumerate().all(|(i, d)| {
                        d.degree == i as u32 + 1
                            && self.product_homotopy_group(x, d.degree) == Ok(Some(d.x_group.clone()))
                            && self.product_homotopy_group(y, d.degree) == Ok(Some(d.y_group.clone()))
                            && self.degree_holds(&d.x_group, &d.y_group, d.reason)
                    })
            }
            DistanceEvidence::Axiom { axiom, anchor } => {
                anchor == axiom.anchor() && distance_axiom_holds(*axiom, x, y, n)
            }
        }
    }

    fn degree_holds(&self, gx: &FgAbGroup, gy: &FgAbGroup, reason: DegreeReason) -> bool {
        match reason {
            DegreeReason::NoMapsForward => hom_group(gx, gy).is_trivial(),
            DegreeReason::NoMapsBackward => hom_group(gy, gx).is_trivial(),
            DegreeReason::CompositesNilpotent => {
                all_composites_nilpotent(&gx.generators(), &gy.generators(), &self.bounds) == Some(true)
            }
        }
    }
}

fn distance_axiom(x: &[SpaceDescriptor], y: &[SpaceDescriptor], n: u32) -> Option<DistanceAxiom> {
    [
        DistanceAxiom::MooreHurewicz,
        DistanceAxiom::ProjectiveCohomology,
        DistanceAxiom::LensCohomology,
    ]
    .into_iter()
    .find(|&a| distance_axiom_holds(a, x, y, n))
}

/// Applicability of a named distance fact; symmetric in `x` and `y`.
pub fn distance_axiom_holds(axiom: DistanceAxiom, x: &[SpaceDescriptor], y: &[SpaceDescriptor], n: u32) -> bool {
    let oriented = |x: &[SpaceDescriptor], y: &[SpaceDescriptor]| match (axiom, x, y) {
        (DistanceAxiom::MooreHurewicz, [pivot], rest) => pivot.moore_degree().is_some_and(|a| {
            n <= a
                && !rest.is_empty()
                && rest.iter().all(|s| s.moore_degree().is_some_and(|b| b != a))
        }),
        (DistanceAxiom::ProjectiveCohomology, [a], [b]) => match (a.projective(), b.projective()) {
            (Some((d, m)), Some((e, k))) if d == e && m != k => {
                let top = if d == 1 { m.max(k) } else { d };
                n <= top
            }
            _ => false,
        },
        (
            DistanceAxiom::LensCohomology,
            [SpaceDescriptor::Lens { n: m, .. }],
            [SpaceDescriptor::Lens { n: k, .. }],
        ) => m != k && n <= 2 * m.max(k) + 1,
        _ => false,
    };
    oriented(x, y) || oriented(y, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    fn sphere(n: u32) -> SpaceDescriptor {
        SpaceDescriptor::Sphere { n }
    }

    #[test]
    fn projective_groups() {
        let c = Catalog::default();
        let cp3 = SpaceDescriptor::ComplexProjective { n: 3 };
        assert_eq!(c.homotopy_group(&cp3, 2).unwrap(), Some(g("Z")));
        assert_eq!(c.homotopy_group(&cp3, 5).unwrap(), Some(g("0")));
        assert_eq!(c.homotopy_group(&cp3, 7).unwrap(), Some(g("Z")));
        let hp2 = SpaceDescriptor::QuaternionicProjective { n: 2 };
        assert_eq!(c.homotopy_group(&hp2, 4).unwrap(), Some(g("Z")));
        assert_eq!(c.homotopy_group(&hp2, 3).unwrap(), Some(g("0")));
        assert_eq!(c.homotopy_group(&hp2, 1).unwrap(), Some(g("0")));
        assert_eq!(c.homotopy_group(&hp2, 5).unwrap(), Some(g("Z/2")));
        assert_eq!(c.homotopy_group(&hp2, 11).unwrap(), None);
        let rp5 = SpaceDescriptor::RealProjective { n: 5 };
        assert_eq!(c.homotopy_group(&rp5, 1).unwrap(), Some(g("Z/2")));
        assert_eq!(c.homotopy_group(&rp5, 3).unwrap(), Some(g("0")));
        assert_eq!(c.homotopy_group(&rp5, 5).unwrap(), Some(g("Z")));
        let lens = SpaceDescriptor::Lens { n: 2, p: 3 };
        assert_eq!(c.homotopy_group(&lens, 1).unwrap(), Some(g("Z/3")));
        assert_eq!(c.homotopy_group(&lens, 5).unwrap(), Some(g("Z")));
        assert!(c.homotopy_group(&lens, 0).is_err());
    }

    #[test]
    fn moore_and_em_groups() {
        let c = Catalog::default();
        let m = SpaceDescriptor::Moore { group: g("Z/6"), n: 3 };
        assert_eq!(c.homotopy_group(&m, 2).unwrap(), Some(g("0")));
        assert_eq!(c.homotopy_group(&m, 3).unwrap(), Some(g("Z/6")));
        assert_eq!(c.homotopy_group(&m, 4).unwrap(), None);
        let mz = SpaceDescriptor::Moore { group: g("Z"), n: 4 };
        assert_eq!(c.homotopy_group(&mz, 5).unwrap(), Some(g("Z/2")));
        let k = SpaceDescriptor::EilenbergMacLane { group: g("Z+Z/6"), n: 4 };
        assert_eq!(c.homotopy_group(&k, 4).unwrap(), Some(g("Z+Z/6")));
        assert_eq!(c.homotopy_group(&k, 9).unwrap(), Some(g("0")));
    }

    #[test]
    fn self_closeness_constants() {
        assert_eq!(SpaceDescriptor::ComplexProjective { n: 5 }.self_closeness(), 2);
        assert_eq!(SpaceDescriptor::Moore { group: g("Z/6"), n: 3 }.self_closeness(), 3);
        assert_eq!(SpaceDescriptor::Lens { n: 3, p: 5 }.self_closeness(), 7);
        assert_eq!(SpaceDescriptor::QuaternionicProjective { n: 2 }.self_closeness(), 4);
    }

    #[test]
    fn triviality_facts() {
        let c = Catalog::default();
        let r = c.maps_trivial(&sphere(2), &sphere(5), 5).unwrap();
        assert!(matches!(r, TrivialityReason::HomVanishes { .. }));
        assert!(c.recheck_trivial(&sphere(2), &sphere(5), 5, &r));
        let k = SpaceDescriptor::EilenbergMacLane { group: g("Z/3"), n: 4 };
        assert!(c.maps_trivial(&sphere(3), &k, 4).is_some());
        assert!(c.maps_trivial(&sphere(2), &sphere(2), 2).is_none());
        let r = c.maps_trivial(&sphere(2), &sphere(5), 7).unwrap();
        assert_eq!(r, TrivialityReason::SphereNullity { sphere_dim: 2 });
        let forged = TrivialityReason::HomVanishes { source: g("Z"), target: g("Z") };
        assert!(!c.recheck_trivial(&sphere(2), &sphere(2), 2, &forged));
    }

    #[test]
    fn distance_facts() {
        let c = Catalog::default();
        let m2 = SpaceDescriptor::Moore { group: g("Z/2"), n: 2 };
        let m4 = SpaceDescriptor::Moore { group: g("Z"), n: 4 };
        let e = c.are_n_distant(&[m2.clone()], &[m4.clone()], 4).unwrap();
        assert!(c.recheck_distance(&[m2.clone()], &[m4.clone()], 4, &e));
        assert!(c.are_n_distant(&[m4.clone()], &[m2.clone()], 4).is_some());
        let rp2 = SpaceDescriptor::RealProjective { n: 2 };
        let rp5 = SpaceDescriptor::RealProjective { n: 5 };
        assert!(c.are_n_distant(&[rp2.clone()], &[rp5.clone()], 5).is_some());
        assert!(c.are_n_distant(&[rp5], &[rp2], 5).is_some());
        let k3 = SpaceDescriptor::EilenbergMacLane { group: g("Z"), n: 3 };
        assert!(c.are_n_distant(&[sphere(3)], &[k3], 3).is_none());
        let forged = DistanceEvidence::Axiom {
            axiom: DistanceAxiom::MooreHurewicz,
            anchor: DistanceAxiom::MooreHurewicz.anchor().into(),
        };
        assert!(!c.recheck_distance(&[sphere(2)], &[sphere(2)], 2, &forged));
    }

    #[test]
    fn distance_by_enumeration() {
        let c = Catalog::default();
        let a = SpaceDescriptor::EilenbergMacLane { group: g("Z/2"), n: 2 };
        let b = SpaceDescriptor::EilenbergMacLane { group: g("Z/4"), n: 2 };
        let e = c.are_n_distant(&[a.clone()], &[b.clone()], 2).unwrap();
        let DistanceEvidence::PerDegree { degrees } = &e else { panic!() };
        assert_eq!(degrees[1].reason, DegreeReason::CompositesNilpotent);
        assert!(c.recheck_distance(&[a], &[b], 2, &e));
    }

    #[test]
    fn validation() {
        assert!(SpaceDescriptor::Lens { n: 1, p: 4 }.validate().is_err());
        assert!(SpaceDescriptor::RealProjective { n: 1 }.validate().is_err());
        assert!(SpaceDescriptor::Moore { group: g("0"), n: 3 }.validate().is_err());
        assert!(sphere(0).validate().is_err());
        assert!(sphere(1).validate().is_ok());
    }
}
