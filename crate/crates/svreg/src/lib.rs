//! Single-valued polylogarithms, symbol complexes over Q(t), and the
//! numerical regulator/residue integrals that tie them together.
//!
//! The crate is organized around six pieces:
//!
//! - [`field`]: exact arithmetic in Q(t)* tensor Q (factored elements,
//!   places of P^1, valuations, complex evaluation);
//! - [`polylog`]: numerical Li_k, P_n^mod, P_n,Zag and the number-field
//!   regulator oracle;
//! - [`symbols`]: the weight-n symbol complexes with their differentials,
//!   boundary maps, cocycle solving and exact identity suites;
//! - [`relations`]: generators and verifiers for the dilogarithm and
//!   trilogarithm functional equations;
//! - [`regulator`]: 1-form and 2-form numerics: contour residues, constancy
//!   checks, standard integrals, and the regulator determinant;
//! - [`manifest`]: the expression grammar, manifest/report formats, and the
//!   dispatch used by the `svreg` binary.
//!
//! The runnable `examples/` directory demonstrates one capability per file.

pub mod error;
pub mod factor;
pub mod field;
pub mod manifest;
pub mod poly;
pub mod polylog;
pub mod primes;
pub mod regulator;
pub mod relations;
pub mod symbols;
pub mod verdict;

pub use error::{Error, Result};

#[cfg(test)]
mod concurrency_contract {
    // every domain value is immutable after construction and freely shared
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn domain_types_are_send_and_sync() {
        assert_send_sync::<crate::field::FieldElement>();
        assert_send_sync::<crate::field::Place>();
        assert_send_sync::<crate::field::Embedding>();
        assert_send_sync::<crate::poly::Poly>();
        assert_send_sync::<crate::polylog::PolylogValue>();
        assert_send_sync::<crate::polylog::Constants>();
        assert_send_sync::<crate::symbols::ChainElement>();
        assert_send_sync::<crate::symbols::RelationPool>();
        assert_send_sync::<crate::relations::FormalRelation>();
        assert_send_sync::<crate::regulator::OneFormValue>();
        assert_send_sync::<crate::verdict::Verdict>();
    }
}
