//! Exact arithmetic for the stable algebra of nonnegative integer and
//! polynomial matrices, as it arises in symbolic dynamics.
//!
//! A square matrix `A` over `Z+` presents a shift of finite type (the
//! bi-infinite edge walks on the graph with adjacency matrix `A`). The
//! crate computes the classical invariants of that presentation and
//! verifies the certificate-style equivalences between presentations:
//!
//! - [`exact`]: arbitrary-precision matrices and polynomials,
//!   `det(I-tA)`, Smith normal form, cokernels, Newton's identities,
//!   net traces and the zeta-function identity;
//! - [`structure`]: nondegenerate cores, primitivity, irreducibility,
//!   period and cyclic block form, higher-block presentations;
//! - [`invariants`]: assembled invariant reports and the complete
//!   SIM-Z / SE-Z classification inside the 2x2 integer-spectrum family;
//! - [`equivalence`]: elementary strong shift equivalences, SSE chains,
//!   SSE-to-SE compression, zero/nilpotent extensions, amalgamations and
//!   bounded ESSE-neighbor enumeration;
//! - [`polymatrix`]: polynomial matrix presentations, `A#` graph
//!   expansion, positive-equivalence move logs, the PSSE equations and
//!   flow-equivalence invariants;
//! - [`autgyration`]: periodic orbits, sliding block codes, elementary
//!   conjugacies `c(R,S)`, gyration and sign-gyration homomorphisms and
//!   the Kim-Roush `sgc2` path invariant;
//! - [`niep`]: necessary conditions for spectral realization by
//!   nonnegative matrices, JLL size bounds, Suleimanova companion
//!   realization, period inflation and Laffey quantities.
//!
//! Everything is exact (`num-bigint` / `num-rational`); floating point
//! appears only in the clearly marked numeric root estimates of
//! [`niep`]. All operations are pure functions on immutable values.
//!
//! The `examples/` directory holds one runnable walkthrough per
//! capability; the `sftalg` binary exposes the same operations as batch
//! subcommands over small matrix files.

pub mod autgyration;
pub mod cli;
pub mod equivalence;
mod error;
pub mod exact;
pub mod invariants;
pub mod io;
pub mod niep;
pub mod polymatrix;
pub mod structure;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
