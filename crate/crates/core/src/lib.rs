//! Self-closeness numbers of products of catalogued spaces.
//!
//! The crate is layered bottom-up: integer matrices and Smith normal form,
//! finitely generated abelian groups, homomorphisms and block maps, ring
//! properties of endomorphism rings, a catalog of spaces with their homotopy
//! groups, and a rule engine that emits replayable certificates. The
//! [`oracle`] module holds brute-force ground truth for every algebraic
//! predicate on small finite groups.

pub mod abgroup;
pub mod catalog;
pub mod engine;
pub mod error;
pub mod expr;
pub mod homs;
pub mod matrix;
pub mod oracle;
pub mod ringprops;
pub mod snf;

pub use abgroup::{CyclicSum, FgAbGroup, GroupOrder, PrimaryComponent};
pub use error::AlgebraError;
pub use matrix::Matrix;
pub use snf::{smith_normal_form, SmithForm};
pub use homs::{BlockMap, Homomorphism, Truth};
pub use oracle::Bounds;
pub use ringprops::{RingVerdict, Status};
pub use catalog::{Catalog, SpaceDescriptor, SphereTable};
pub use engine::{verify_certificate, verify_result, Certificate, Engine, EngineResult, ResultStatus, RuleId};
pub use expr::{parse_expression, Expression, ParseError};
