//! Mod-2 characteristic numbers over truncated polynomial rings.
//!
//! Three layers. [`ring`] is the arithmetic: graded polynomial rings over
//! the two-element field with nilpotent generators, enough to hold the
//! cohomology of projective spaces and their binary products. [`catalog`]
//! builds tangent Stiefel-Whitney classes for a closed-world manifold
//! list and loads the shipped catalog with its auxiliary bundles.
//! [`appendix`] holds the audited chain data for the rank-2 Smith long
//! exact sequence and the verification routines that hold the encoded
//! values, the computed characteristic numbers, and exactness together.

mod appendix;
mod catalog;
mod ring;

pub use appendix::{
    AppendixData, BasisReport, ChainGroups, ExactnessReport, FourDimGenerator, JointReport,
    PhiReport, SurfaceGenerator, abs_minus2, verify_generator_basis, verify_phi_matrix,
    verify_smith_exactness,
};
pub use catalog::{
    Bundle, Catalog, DATA_VERSION, DEFAULT_DATA, ManifoldFamily, ManifoldModel, total_sw,
};
pub use ring::{GradedF2Poly, GradedF2Ring, RingGenerator};

use crate::abgroup::AbGroupError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CharClassError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("expected a homogeneous class of degree {expected}, found a term of degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("{name} has dimension {dim}, expected {expected}")]
    WrongDimension {
        name: String,
        dim: usize,
        expected: usize,
    },
    #[error("unknown manifold {name:?}; the catalog is closed-world")]
    UnknownManifold { name: String },
    #[error("manifold {manifold} has no bundle named {name:?}")]
    UnknownBundle { manifold: String, name: String },
    #[error("unknown generator {name:?}; expected one of {expected}")]
    UnknownGenerator { name: String, expected: String },
    #[error("cannot parse manifold catalog: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("unsupported data version {found}; this build reads version {DATA_VERSION}")]
    Version { found: u64 },
    #[error("duplicate entry {name:?}")]
    Duplicate { name: String },
    #[error("bundle {name:?} on {manifold}: {reason}")]
    BadBundle {
        manifold: String,
        name: String,
        reason: String,
    },
    #[error("appendix data: {reason}")]
    BadAppendix { reason: String },
    #[error("appendix data: {context}: {source}")]
    Group {
        context: String,
        source: AbGroupError,
    },
    #[error(
        "ABS value of {manifold} is encoded as {encoded} but phi_1 following sm_V gives {computed}"
    )]
    FactorizationMismatch {
        manifold: String,
        encoded: u8,
        computed: u8,
    },
}
