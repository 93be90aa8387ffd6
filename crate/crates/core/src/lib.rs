//! Signatures of Weyl group elements computed from weights.
//!
//! For `μ` in the Weyl orbit of a dominant weight `λ`, the difference
//! `λ - μ` is a sum of distinct positive roots. Counting them gives the
//! length of the group element, and hence its signature, without
//! enumerating reduced words. The crate also carries an independent
//! dominance-algorithm oracle, orbit enumeration and Poincaré polynomials
//! for cross-checking.

pub mod algebra;
pub mod e8;
pub mod error;
pub mod roots;
pub mod signature;
pub mod weyl;

pub use algebra::{cartan_matrix, rho, AlgebraId, CartanMatrix, ExactFraction, Family, RootVector, Weight};
pub use error::{Error, Result};
pub use roots::{ExponentList, RootEntry, RootSystem};
pub use signature::{
    analyze, decompose, gamma, length_census, poincare_polynomial, signature_of_weight, verify_statement,
    ClaimReport, Decomposition, SearchMode, SignatureRecord, Strategy, VerifyOptions,
};
pub use weyl::{apply_word, dominance_reduce, orbit, reflect, step_roots, Composition, OrbitSet, WeylWord};
