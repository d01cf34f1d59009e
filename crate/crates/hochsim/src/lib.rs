//! Exact-arithmetic Hochschild and simplicial cohomology for based algebras.
//!
//! The crate builds Hochschild cochain complexes of group rings, poset
//! algebras and amalgam category algebras, splits them into autopoietic and
//! non-autopoietic parts, implements the cochain-level products (Gerstenhaber,
//! pre-Lie, cup, cup-one) and the comparison maps to simplicial cochains on
//! bar constructions and nerves, and computes cohomology groups over ℤ, ℤ/m
//! and ℚ via Smith normal form and exact rank computations.
//!
//! ```
//! use hochsim::algebra::{group_ring, FiniteGroup};
//! use hochsim::coeff::Ring;
//! use hochsim::engine::{hochschild_cohomology, verify_ap_iso};
//! use hochsim::hochschild::Variant;
//!
//! // the autopoietic part of the Hochschild complex of Z[Z/2] carries the
//! // cohomology of the classifying space: Z, 0, Z/2, 0, Z/2
//! let g = FiniteGroup::cyclic(2);
//! let alg = group_ring(&g, Ring::Integers);
//! let h = hochschild_cohomology(&alg, Variant::Ap, 5, None).unwrap();
//! let printed: Vec<String> = h.iter().map(|g| g.to_string()).collect();
//! assert_eq!(printed, ["Z", "0", "Z/2", "0", "Z/2"]);
//!
//! // the same comparison, reported degree by degree against the bar complex
//! assert!(verify_ap_iso(&g, Ring::Integers, 5).unwrap().pass);
//! ```

pub mod algebra;
pub mod bridge;
pub mod coeff;
pub mod engine;
pub mod hochschild;
pub mod input;
pub mod simplicial;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("consecutive differentials do not compose to zero at entry ({row}, {col})")]
    CompositionNonzero { row: usize, col: usize },
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("composition slot {slot} out of range for a degree-{degree} cochain")]
    IndexOutOfRange { slot: usize, degree: usize },
    #[error("partial composition and pre-Lie need a left operand of degree at least 1")]
    DegreeZeroOperand,
    #[error("operation requires a group-ring algebra")]
    NotGroupRing,
    #[error("operation requires idempotent structure constants")]
    NotIdempotent,
    #[error("the E-relative complex requires an amalgam, poset or group-ring algebra")]
    NotAmalgam,
    #[error("cochain does not live on the expected simplicial slice")]
    SliceMismatch,
    #[error("the non-autopoietic cochains are not closed under the coboundary here")]
    NotSubcomplex,
    #[error("cup-{i} is not defined in negative total degree")]
    UnsupportedArity { i: usize },
    #[error(
        "degree {requested} exceeds the guard cap {cap} for a basis of size {dim}; \
         pass an explicit cell budget to override"
    )]
    DegreeCapExceeded { requested: usize, cap: usize, dim: usize },
    #[error("cell budget exceeded: the complex needs {needed} matrix cells, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
