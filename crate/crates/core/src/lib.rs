//! An exact combinatorics engine for key and Lascoux polynomials.
//!
//! The pieces fit together as follows. Weak compositions index everything
//! ([`compositions`]); their key diagrams generate Kohnert and K-Kohnert
//! closures ([`diagrams`]); the labeling algorithm certifies closure
//! membership ([`labeling`]); reverse set-valued tableaux with a left-key
//! condition form the dual family ([`tableaux`]); the raise/drop operators
//! ([`operators`]) drive the two mutually inverse maps between the families
//! ([`bijection`]); and both families sum to the same polynomials
//! ([`polynomials`]).

pub mod bijection;
pub mod compositions;
pub mod diagrams;
pub mod labeling;
pub mod operators;
pub mod polynomials;
pub mod tableaux;

pub use bijection::{
    phi, phi_direct, phi_direct_traced, psi, psi_direct, psi_direct_traced, verify_bijection,
    MembershipError, VerificationReport,
};
pub use compositions::{
    all_compositions, bruhat_leq, dominating_subset, key_tableau, left_swap_leq,
    max_below_supported, min_above_supported, subset_leq, KeyTableau, WeakComposition,
};
pub use diagrams::{
    closure, kd_closure, key_diagram, kkd_closure, Cell, Diagram, DiagramPair, StateLimitExceeded,
    DEFAULT_STATE_CAP,
};
pub use labeling::{in_kd, label, unlabel, KohnertTableau};
pub use operators::{
    flat, flat_batch, flat_batch_recursive, flat_defined, sharp, sharp_batch,
    sharp_batch_recursive, sharp_defined, sharp_definitional, sharp_with_filling, OpResult,
    TraceStep,
};
pub use polynomials::{
    key_polynomial, key_polynomial_via_diagrams, key_polynomial_via_tableaux, lascoux_polynomial,
    lascoux_polynomial_via_diagrams, lascoux_polynomial_via_tableaux, polynomial_over, Monomial,
    Polynomial,
};
pub use tableaux::{
    decode, encode, enumerate_rssyt, enumerate_rsvt, in_kkd_set_recursive, in_rssyt_set,
    in_rsvt_set, in_rsvt_set_recursive, left_key, Rsvt, TableauPair,
};
