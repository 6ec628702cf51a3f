//! Kahn process networks as a graph IR.
//!
//! * [`net`]: nets, their well-formedness and the identity, composition,
//!   tensor and trace constructions, plus the structural wiring nets.
//! * [`iso`]: isomorphism search between nets.
//! * [`rewrite`]: sharing/erasing normalization and se-equivalence.
//! * [`laws`]: random net generation and executable categorical laws.
//! * [`kahn`]: least-fixpoint stream semantics over finite prefixes.
//! * [`nstime`]: the δ-sampled infinitesimal-time backend.
//! * [`stdnets`]: the standard signature and example nets.

pub mod iso;
pub mod kahn;
pub mod laws;
pub mod net;
pub mod nstime;
pub mod rewrite;
pub mod stdnets;

pub use iso::{find_iso, is_isomorphic, NetIso};
pub use net::{
    compose, duplication, erasure, generator, identity, projection, projection_second, symmetry,
    tensor, trace, wiring, Arity, Net, NetError, Operator, Signature, Structural,
};
pub use rewrite::{normalize, se_equivalent, Redex, SharedNet};
