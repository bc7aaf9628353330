//! Finite rings given by Cayley tables: construction, ideal structure,
//! semidirect products and the section property (★).
//!
//! Elements are indices `0..order`; index `0` is always the additive zero.
//! Rings without a multiplicative identity are supported throughout.

pub mod catalogue;
pub mod cli;
pub mod construct;
pub mod error;
pub mod expr;
pub mod hom;
pub mod ring;
pub mod semidirect;
pub mod star;
pub mod structure;

pub use error::{FinringError, Result};
pub use expr::{eval, eval_str, parse, render, Expr, ExprError, ExprKind};
pub use hom::{check_hom, find_isomorphism, RingHom};
pub use ring::{order_cap, set_order_cap, verify_ring_axioms, AxiomReport, FiniteRing, RingDoc};
pub use semidirect::{build_sdprod, enumerate_action_pairs, verify_action_pair, SemidirectDoc, SemidirectSpec};
pub use star::{build_phi_psi, check_star_decomposition, check_star_section, classify, Classification, StarWitness};
pub use structure::{all_ideals, maximal_ideals, quotient, subfields, units, IdealSubset};
