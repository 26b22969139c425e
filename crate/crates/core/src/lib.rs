//! Finite idempotent semirings: Green's relations, the least distributive
//! lattice congruence η and its routes (σ closure, σ*, meet of all
//! distributive lattice congruences), variety and Malcev product membership,
//! quotients, spined products and exhaustive enumeration.

pub mod congruences;
pub mod enumerate;
pub mod error;
pub mod examples;
pub mod relations;
pub mod structure;
pub mod table;
pub mod term;
pub mod theorems;
pub mod varieties;

pub use congruences::{
    all_congruences, all_congruences_bounded, congruence_closure, eta, is_congruence, least_dl_congruence, sigma,
    sigma_star, CongruenceSet, EtaMethod,
};
pub use enumerate::{canonical_form, enumerate_idempotent_semirings, EnumConfig, Enumeration};
pub use error::{Error, Result};
pub use relations::{green_add, green_mult, quasi_orders, BinRelation, GreenTriple, Partition, QuasiOrders};
pub use structure::{
    is_distributive_lattice, is_isomorphic, malcev_membership, quotient, spined_decompose, spined_product, ClassExpr,
    SpinedDecomposition,
};
pub use table::{validate_semiring, Elem, SemiringTable, ValidationReport};
pub use term::{eval_term, satisfies_identity, Identity, Term};
pub use theorems::{eta_equals_relation, verify_theorem, GreenRelation, TheoremId, TheoremReport};
pub use varieties::{catalog, variety, variety_membership, VarietySpec};
