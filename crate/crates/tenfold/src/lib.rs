//! Exact classification tables for gapped free-fermion phases and their
//! interacting counterparts, organized by the ten Altland-Zirnbauer symmetry
//! classes.
//!
//! Everything here is computed over the integers with no floating point and
//! no randomness, so every table, map, kernel, and cokernel is reproducible
//! bit for bit. The layers, from the bottom up:
//!
//! - [`abgroup`]: finitely generated abelian groups presented by integer
//!   relation matrices, Smith normal form, kernels and cokernels of
//!   homomorphisms between presented groups.
//! - [`kcoeff`]: KO- and K-theory point coefficients and their
//!   binomial-weighted torus decompositions.
//! - [`azclass`]: the registry of the ten symmetry classes with their
//!   Clifford algebra labels and structure groups.
//! - [`strongf2i`]: per-class strong-phase data, i.e. the comparison maps
//!   from the free classification to the interacting one in each dimension,
//!   loaded from a versioned text table and cross-checked on load.
//! - [`weakf2i`]: the weak-phase engine; assembles torus classifications
//!   cell by cell, computes the kernel and cokernel of the full
//!   free-to-interacting map, renders tables, and evaluates the
//!   dislocation pairing.
//! - [`charclass`]: mod 2 characteristic class arithmetic in truncated
//!   polynomial rings, a small manifold catalog, and the bordism
//!   generator / exactness checks used to certify the degree -2 invariant.

pub mod abgroup;
pub mod azclass;
pub mod charclass;
pub mod kcoeff;
pub mod strongf2i;
pub mod weakf2i;
