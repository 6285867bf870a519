//! The tenfold-way registry: Altland-Zirnbauer symmetry classes with their
//! Clifford algebra positions and structure groups.
//!
//! Two classes are complex (A, AIII) and pair with complex K-theory; the
//! other eight are real, pair with KO, and are indexed by a Clifford
//! parameter `s` whose residues mod 8 cover all eight values exactly once.
//! Adding `k` spatial dimensions shifts the Clifford index down by `k`,
//! which is where every degree shift in the torus decompositions comes
//! from.

use crate::kcoeff::KFlavor;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AZLabel {
    A,
    AIII,
    CII,
    AII,
    DIII,
    D,
    BDI,
    AI,
    CI,
    C,
}

impl AZLabel {
    /// All ten labels: the two complex classes first, then the real ones by
    /// ascending `s`.
    pub const ALL: [AZLabel; 10] = [
        AZLabel::A,
        AZLabel::AIII,
        AZLabel::CII,
        AZLabel::AII,
        AZLabel::DIII,
        AZLabel::D,
        AZLabel::BDI,
        AZLabel::AI,
        AZLabel::CI,
        AZLabel::C,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AZLabel::A => "A",
            AZLabel::AIII => "AIII",
            AZLabel::CII => "CII",
            AZLabel::AII => "AII",
            AZLabel::DIII => "DIII",
            AZLabel::D => "D",
            AZLabel::BDI => "BDI",
            AZLabel::AI => "AI",
            AZLabel::CI => "CI",
            AZLabel::C => "C",
        }
    }
}

impl fmt::Display for AZLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for AZLabel {
    type Err = UnknownClass;

    fn from_str(s: &str) -> Result<Self, UnknownClass> {
        AZLabel::ALL
            .into_iter()
            .find(|label| label.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownClass(s.to_string()))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown symmetry class {0:?}; expected one of A, AIII, CII, AII, DIII, D, BDI, AI, CI, C")]
pub struct UnknownClass(pub String);

/// Whether the class sits over the complex or the real Clifford tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryKind {
    Complex,
    Real,
}

/// Full registry row for one symmetry class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AZClass {
    pub label: AZLabel,
    pub kind: SymmetryKind,
    /// Clifford parameter; degrees in the tables are shifted by `s`.
    pub s: i64,
    /// Name of the Clifford algebra whose module count the class measures.
    pub clifford_name: &'static str,
    /// The fermionic symmetry group of the class.
    pub fermionic_group_name: &'static str,
    /// Tangential structure on the bordism side.
    pub structure_group_name: &'static str,
}

impl AZClass {
    /// K-theory flavor the class pairs with.
    pub fn flavor(&self) -> KFlavor {
        match self.kind {
            SymmetryKind::Complex => KFlavor::K,
            SymmetryKind::Real => KFlavor::Ko,
        }
    }
}

const REGISTRY: [AZClass; 10] = [
    AZClass {
        label: AZLabel::A,
        kind: SymmetryKind::Complex,
        s: 0,
        clifford_name: "C",
        fermionic_group_name: "U(1)",
        structure_group_name: "Spin^c",
    },
    AZClass {
        label: AZLabel::AIII,
        kind: SymmetryKind::Complex,
        s: 1,
        clifford_name: "Cl_1 ⊗ C",
        fermionic_group_name: "U(1) × Z2",
        structure_group_name: "Pin^c",
    },
    AZClass {
        label: AZLabel::CII,
        kind: SymmetryKind::Real,
        s: -3,
        clifford_name: "Cl_{-3}",
        fermionic_group_name: "Pin^-(3)",
        structure_group_name: "Pin^{h-}",
    },
    AZClass {
        label: AZLabel::AII,
        kind: SymmetryKind::Real,
        s: -2,
        clifford_name: "Cl_{-2}",
        fermionic_group_name: "Pin^-(2)",
        structure_group_name: "Pin^{c̃+}",
    },
    AZClass {
        label: AZLabel::DIII,
        kind: SymmetryKind::Real,
        s: -1,
        clifford_name: "Cl_{-1}",
        fermionic_group_name: "Pin^-(1)",
        structure_group_name: "Pin^+",
    },
    AZClass {
        label: AZLabel::D,
        kind: SymmetryKind::Real,
        s: 0,
        clifford_name: "R",
        fermionic_group_name: "Spin(1)",
        structure_group_name: "Spin",
    },
    AZClass {
        label: AZLabel::BDI,
        kind: SymmetryKind::Real,
        s: 1,
        clifford_name: "Cl_1",
        fermionic_group_name: "Pin^+(1)",
        structure_group_name: "Pin^-",
    },
    AZClass {
        label: AZLabel::AI,
        kind: SymmetryKind::Real,
        s: 2,
        clifford_name: "Cl_2",
        fermionic_group_name: "Pin^+(2)",
        structure_group_name: "Pin^{c̃-}",
    },
    AZClass {
        label: AZLabel::CI,
        kind: SymmetryKind::Real,
        s: 3,
        clifford_name: "Cl_3",
        fermionic_group_name: "Pin^+(3)",
        structure_group_name: "Pin^{h+}",
    },
    AZClass {
        label: AZLabel::C,
        kind: SymmetryKind::Real,
        s: 4,
        clifford_name: "Cl_4",
        fermionic_group_name: "Spin(3)",
        structure_group_name: "Spin^h",
    },
];

/// The ten classes in registry order (complex first, then real by
/// ascending `s`).
pub fn registry() -> &'static [AZClass; 10] {
    &REGISTRY
}

/// Looks up one class.
pub fn class(label: AZLabel) -> &'static AZClass {
    REGISTRY
        .iter()
        .find(|c| c.label == label)
        .expect("registry covers every label")
}

/// Clifford index after adding `k` spatial dimensions to a class at
/// index `i`.
pub fn clifford_shift(i: i64, k: i64) -> i64 {
    i - k
}
