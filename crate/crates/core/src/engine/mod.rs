//! Self-closeness numbers of products.
//!
//! The engine proves that `A_N` of the product is reducible at
//! `N = max NE(X_i)`, which pins the number to `N`. When no rule fires it
//! reports `N` as a lower bound.

mod certificate;
mod rules;
mod verify;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Catalog, CatalogError, SpaceDescriptor};

pub use certificate::{Certificate, Conclusion, Fact, Premise, ReducibilityAxiom, RingProperty, RuleId};
pub use verify::{verify_certificate, verify_result, VerificationFailure};

use rules::{max_self_closeness, Search};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("a product needs at least one factor")]
    EmptyProduct,
    #[error("reducibility level must be at least 1")]
    LevelZero,
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ResultStatus {
    Exact,
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineResult {
    pub factors: Vec<SpaceDescriptor>,
    pub status: ResultStatus,
    pub value: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, Default)]
pub struct Engine {
    catalog: Catalog,
    pivot_search: bool,
}

impl Engine {
    pub fn new(catalog: Catalog) -> Self {
        Engine { catalog, pivot_search: false }
    }

    /// Also try prefix groups of factors as the pivot of the radical rule.
    pub fn with_pivot_search(mut self, on: bool) -> Self {
        self.pivot_search = on;
        self
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    fn validate(factors: &[SpaceDescriptor]) -> Result<(), EngineError> {
        if factors.is_empty() {
            return Err(EngineError::EmptyProduct);
        }
        factors.iter().try_for_each(SpaceDescriptor::validate)?;
        Ok(())
    }

    /// `max NE(X_i)`, always a lower bound for the product.
    pub fn lower_bound(&self, factors: &[SpaceDescriptor]) -> Result<u32, EngineError> {
        Self::validate(factors)?;
        Ok(max_self_closeness(factors))
    }

    /// A certificate that `A_n` of the product is reducible, possibly after
    /// merging Eilenberg-MacLane factors of equal degree.
    pub fn check_reducible(&self, factors: &[SpaceDescriptor], n: u32) -> Result<Option<Certificate>, EngineError> {
        Self::validate(factors)?;
        if n == 0 {
            return Err(EngineError::LevelZero);
        }
        Ok(Search::new(&self.catalog, self.pivot_search).check(factors, n, true))
    }

    pub fn compute_ne(&self, factors: &[SpaceDescriptor]) -> Result<EngineResult, EngineError> {
        let value = self.lower_bound(factors)?;
        let certificate = Search::new(&self.catalog, self.pivot_search).exact(factors);
        let status = if certificate.is_some() {
            ResultStatus::Exact
        } else {
            ResultStatus::LowerBound
        };
        Ok(EngineResult {
            factors: factors.to_vec(),
            status,
            value,
            certificate,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(n: u32) -> SpaceDescriptor {
        SpaceDescriptor::Sphere { n }
    }

    #[test]
    fn spheres_of_distinct_dimensions() {
        let e = Engine::default();
        let r = e.compute_ne(&[sphere(2), sphere(5), sphere(7)]).unwrap();
        assert_eq!((r.status, r.value), (ResultStatus::Exact, 7));
        verify_result(e.catalog(), &r).unwrap();
        let c = r.certificate.unwrap();
        assert_eq!(c.rules(), vec![RuleId::ProductTheorem, RuleId::Triangular]);
    }

    #[test]
    fn triangular_pair() {
        let e = Engine::default();
        let c = e.check_reducible(&[sphere(3), sphere(5)], 5).unwrap().unwrap();
        assert_eq!(c.rule_id, RuleId::Triangular);
        verify_certificate(e.catalog(), &c).unwrap();
    }

    #[test]
    fn repeated_sphere_is_inconclusive() {
        let e = Engine::default();
        assert!(e.check_reducible(&[sphere(2), sphere(2)], 2).unwrap().is_none());
        let r = e.compute_ne(&[sphere(2), sphere(2)]).unwrap();
        assert_eq!((r.status, r.value), (ResultStatus::LowerBound, 2));
        assert!(r.certificate.is_none());
        verify_result(e.catalog(), &r).unwrap();
    }

    #[test]
    fn single_factor() {
        let e = Engine::default();
        let r = e.compute_ne(&[SpaceDescriptor::Lens { n: 3, p: 5 }]).unwrap();
        assert_eq!((r.status, r.value), (ResultStatus::Exact, 7));
        verify_result(e.catalog(), &r).unwrap();
    }

    #[test]
    fn tampered_certificates_fail() {
        let e = Engine::default();
        let mut r = e.compute_ne(&[sphere(2), sphere(5), sphere(7)]).unwrap();
        let mut bad = r.clone();
        bad.certificate = None;
        assert!(verify_result(e.catalog(), &bad).is_err());
        let c = r.certificate.as_mut().unwrap();
        let sub = c.premises.last_mut().unwrap().sub.as_mut().unwrap();
        sub.premises[0].fact = Fact::MapsTrivial {
            from: sphere(2),
            to: sphere(2),
            degree: 2,
            reason: crate::catalog::TrivialityReason::HomVanishes {
                source: "Z".parse().unwrap(),
                target: "Z".parse().unwrap(),
            },
        };
        let err = verify_result(e.catalog(), &r).unwrap_err();
        assert!(err.path.contains("premises"), "{err}");
    }

    #[test]
    fn errors() {
        let e = Engine::default();
        assert_eq!(e.lower_bound(&[]), Err(EngineError::EmptyProduct));
        assert!(e.lower_bound(&[sphere(0)]).is_err());
        assert_eq!(e.check_reducible(&[sphere(2)], 0), Err(EngineError::LevelZero));
    }
}
