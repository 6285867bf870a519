//! Closed-world manifold catalog with tangent Stiefel-Whitney classes.
//!
//! Models are built from a tiny family grammar: real and complex
//! projective spaces up to index 4 and binary products of those. The
//! shipped catalog adds named auxiliary bundles with per-entry citations;
//! anything outside the catalog is rejected rather than approximated.

use super::CharClassError;
use super::appendix::{self, AppendixData};
use super::ring::{GradedF2Poly, GradedF2Ring, RingGenerator};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;

pub const DATA_VERSION: u64 = 1;
/// The shipped catalog text; the starting point for audited edits.
pub const DEFAULT_DATA: &str = include_str!("../data/manifolds.toml");

const MAX_PROJECTIVE_INDEX: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ManifoldFamily {
    RealProjective(u32),
    ComplexProjective(u32),
    Product(Vec<ManifoldFamily>),
}

impl ManifoldFamily {
    pub fn dim(&self) -> usize {
        match self {
            ManifoldFamily::RealProjective(n) => *n as usize,
            ManifoldFamily::ComplexProjective(n) => 2 * *n as usize,
            ManifoldFamily::Product(factors) => factors.iter().map(ManifoldFamily::dim).sum(),
        }
    }
}

impl fmt::Display for ManifoldFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldFamily::RealProjective(n) => write!(f, "RP({n})"),
            ManifoldFamily::ComplexProjective(n) => write!(f, "CP({n})"),
            ManifoldFamily::Product(factors) => {
                let parts: Vec<String> = factors.iter().map(ToString::to_string).collect();
                f.write_str(&parts.join(" x "))
            }
        }
    }
}

impl std::str::FromStr for ManifoldFamily {
    type Err = CharClassError;

    fn from_str(text: &str) -> Result<Self, CharClassError> {
        let err = |reason: &str| CharClassError::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let factor = |piece: &str| -> Result<ManifoldFamily, CharClassError> {
            let piece = piece.trim();
            let (kind, rest) = piece.split_at(piece.len().min(2));
            let index: u32 = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.parse().ok())
                .ok_or_else(|| err("expected RP(n) or CP(n)"))?;
            if index == 0 || index > MAX_PROJECTIVE_INDEX {
                return Err(err("projective index must be between 1 and 4"));
            }
            match kind {
                "RP" => Ok(ManifoldFamily::RealProjective(index)),
                "CP" => Ok(ManifoldFamily::ComplexProjective(index)),
                _ => Err(err("expected RP(n) or CP(n)")),
            }
        };
        let pieces: Vec<&str> = text.split(" x ").collect();
        match pieces.as_slice() {
            [single] => factor(single),
            [left, right] => Ok(ManifoldFamily::Product(vec![factor(left)?, factor(right)?])),
            _ => Err(err("only binary products are supported")),
        }
    }
}

/// Auxiliary bundle on a manifold model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub name: String,
    pub rank: u32,
    pub total_sw: GradedF2Poly,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldModel {
    pub name: String,
    pub family: ManifoldFamily,
    pub dim: usize,
    pub ring: GradedF2Ring,
    pub tangent_total_sw: GradedF2Poly,
    pub provenance: String,
    bundles: BTreeMap<String, Bundle>,
}

/// Builds the model with its tangent total Stiefel-Whitney class:
/// `(1+a)^{n+1}` for `RP(n)`, `(1+b)^{n+1}` for `CP(n)`, and the product
/// of the pulled-back factor classes for binary products. Product ring
/// generators get the factor position as a suffix (`b1`, `b2`).
pub fn total_sw(family: &ManifoldFamily) -> Result<ManifoldModel, CharClassError> {
    let factors: Vec<&ManifoldFamily> = match family {
        ManifoldFamily::Product(inner) => {
            if inner.len() != 2
                || inner
                    .iter()
                    .any(|f| matches!(f, ManifoldFamily::Product(_)))
            {
                return Err(CharClassError::Parse {
                    input: family.to_string(),
                    reason: "only binary products of projective spaces are supported".to_string(),
                });
            }
            inner.iter().collect()
        }
        single => vec![single],
    };
    let mut generators = Vec::new();
    for (position, factor) in factors.iter().enumerate() {
        let suffix = if factors.len() > 1 {
            (position + 1).to_string()
        } else {
            String::new()
        };
        let (base, degree, index) = match factor {
            ManifoldFamily::RealProjective(n) => ("a", 1, *n),
            ManifoldFamily::ComplexProjective(n) => ("b", 2, *n),
            ManifoldFamily::Product(_) => unreachable!("flattened above"),
        };
        if index == 0 || index > MAX_PROJECTIVE_INDEX {
            return Err(CharClassError::Parse {
                input: family.to_string(),
                reason: "projective index must be between 1 and 4".to_string(),
            });
        }
        generators.push(RingGenerator {
            name: format!("{base}{suffix}"),
            degree,
            truncation: index as u16 + 1,
        });
    }
    let ring = GradedF2Ring::new(generators)?;
    let mut tangent = GradedF2Poly::one(&ring);
    for (position, factor) in factors.iter().enumerate() {
        let index = match factor {
            ManifoldFamily::RealProjective(n) | ManifoldFamily::ComplexProjective(n) => *n,
            ManifoldFamily::Product(_) => unreachable!("flattened above"),
        };
        let class = GradedF2Poly::generator(&ring, &ring.generators()[position].name)?
            .add(&GradedF2Poly::one(&ring))?
            .pow(index + 1);
        tangent = tangent.mul(&class)?;
    }
    let dim = family.dim();
    debug_assert_eq!(dim, ring.top_degree());
    Ok(ManifoldModel {
        name: family.to_string(),
        family: family.clone(),
        dim,
        ring,
        tangent_total_sw: tangent,
        provenance: String::new(),
        bundles: BTreeMap::new(),
    })
}

impl ManifoldModel {
    /// Degree-`k` tangent class `w_k`.
    pub fn tangent_w(&self, k: usize) -> GradedF2Poly {
        self.tangent_total_sw.component(k)
    }

    pub fn add_bundle(&mut self, bundle: Bundle) -> Result<(), CharClassError> {
        let bad = |reason: &str| CharClassError::BadBundle {
            manifold: self.name.clone(),
            name: bundle.name.clone(),
            reason: reason.to_string(),
        };
        if bundle.total_sw.ring() != &self.ring {
            return Err(bad("total class lives in a different ring"));
        }
        if bundle.total_sw.component(0).term_count() != 1 {
            return Err(bad("total class needs constant term 1"));
        }
        if let Some(&degree) = bundle
            .total_sw
            .term_degrees()
            .iter()
            .find(|&&d| d > bundle.rank as usize)
        {
            return Err(bad(&format!(
                "has a degree-{degree} class but only rank {}",
                bundle.rank
            )));
        }
        if self.bundles.contains_key(&bundle.name) {
            return Err(CharClassError::Duplicate {
                name: bundle.name.clone(),
            });
        }
        self.bundles.insert(bundle.name.clone(), bundle);
        Ok(())
    }

    pub fn bundle(&self, name: &str) -> Result<&Bundle, CharClassError> {
        self.bundles
            .get(name)
            .ok_or_else(|| CharClassError::UnknownBundle {
                manifold: self.name.clone(),
                name: name.to_string(),
            })
    }

    pub fn bundles(&self) -> impl Iterator<Item = &Bundle> {
        self.bundles.values()
    }

    /// Evaluates a characteristic number: the coefficient of the top
    /// monomial. The class must be zero or homogeneous of the manifold's
    /// dimension.
    pub fn integrate(&self, class: &GradedF2Poly) -> Result<u8, CharClassError> {
        if class.ring() != &self.ring {
            return Err(CharClassError::RingMismatch);
        }
        if class.is_zero() {
            return Ok(0);
        }
        match class.homogeneous_degree() {
            Some(degree) if degree == self.dim => Ok(class.top_coefficient()),
            Some(degree) => Err(CharClassError::DegreeMismatch {
                expected: self.dim,
                found: degree,
            }),
            None => Err(CharClassError::DegreeMismatch {
                expected: self.dim,
                found: *class
                    .term_degrees()
                    .iter()
                    .find(|&&d| d != self.dim)
                    .expect("mixed-degree polynomial has an off-degree term"),
            }),
        }
    }

    /// `∫ w₂(E)²` for the named bundle.
    pub fn xi_invariant(&self, bundle_name: &str) -> Result<u8, CharClassError> {
        let w2 = self.bundle(bundle_name)?.total_sw.component(2);
        self.integrate(&w2.mul(&w2)?)
    }

    /// `w₂(T) + w₁(T)²` on a closed surface; the degree-2 Wu class, which
    /// vanishes on every closed 2-manifold.
    pub fn wu_check(&self) -> Result<GradedF2Poly, CharClassError> {
        if self.dim != 2 {
            return Err(CharClassError::WrongDimension {
                name: self.name.clone(),
                dim: self.dim,
                expected: 2,
            });
        }
        let w1 = self.tangent_w(1);
        self.tangent_w(2).add(&w1.mul(&w1)?)
    }
}

#[derive(Debug)]
pub struct Catalog {
    manifolds: BTreeMap<String, ManifoldModel>,
    pub appendix: AppendixData,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRoot {
    version: u64,
    manifold: Vec<FileManifold>,
    appendix: appendix::FileAppendix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileManifold {
    name: String,
    family: String,
    provenance: String,
    #[serde(default)]
    bundle: Vec<FileBundle>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileBundle {
    name: String,
    rank: u32,
    total_sw: String,
    provenance: String,
}

impl Catalog {
    pub fn load_default() -> Result<Self, CharClassError> {
        Self::load_str(DEFAULT_DATA)
    }

    pub fn load_str(text: &str) -> Result<Self, CharClassError> {
        let root: FileRoot = toml::from_str(text)?;
        if root.version != DATA_VERSION {
            return Err(CharClassError::Version {
                found: root.version,
            });
        }
        let mut manifolds = BTreeMap::new();
        for entry in root.manifold {
            let family: ManifoldFamily = entry.family.parse()?;
            let mut model = total_sw(&family)?;
            model.name = entry.name.clone();
            model.provenance = entry.provenance;
            for b in entry.bundle {
                let class = GradedF2Poly::parse(&model.ring, &b.total_sw)?;
                model.add_bundle(Bundle {
                    name: b.name,
                    rank: b.rank,
                    total_sw: class,
                    provenance: b.provenance,
                })?;
            }
            if manifolds.insert(entry.name.clone(), model).is_some() {
                return Err(CharClassError::Duplicate { name: entry.name });
            }
        }
        let appendix = appendix::build(root.appendix, &manifolds)?;
        Ok(Catalog {
            manifolds,
            appendix,
        })
    }

    pub fn manifold(&self, name: &str) -> Result<&ManifoldModel, CharClassError> {
        self.manifolds
            .get(name)
            .ok_or_else(|| CharClassError::UnknownManifold {
                name: name.to_string(),
            })
    }

    /// All models, ordered by name.
    pub fn manifolds(&self) -> impl Iterator<Item = &ManifoldModel> {
        self.manifolds.values()
    }
}
