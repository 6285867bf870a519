//! Strong-phase data: the free-to-interacting comparison map for every
//! symmetry class in dimensions 0 through 3.
//!
//! The free side is pure K-theory and is always rederived from
//! [`point_coefficient`]; only the interacting side, the comparison map,
//! and its kernel and cokernel live in the data table, each record with a
//! provenance note. [`StrongData::load_str`] cross-checks every record
//! (shape, well-definedness, kernel, cokernel) so a corrupted or edited
//! table fails at load time rather than producing a wrong table later.
//!
//! [`solve_point_data`] goes the other way: given the observed weak-table
//! totals of a class for d = 1..3, it reconstructs the per-dimension
//! records. The totals alone leave one degree of freedom, which is fixed
//! by pinning the dimension-0 record to an isomorphism; physically, the
//! filled-band count of a zero-dimensional system survives interactions
//! unchanged, and every known class satisfies this.

use crate::abgroup::{
    AbGroupError, FGAbelianGroup, GroupHom, KernelRecord, RenderStyle, monoid_difference,
    parse_group, sublattice_scales,
};
use crate::azclass::{AZLabel, UnknownClass, class};
use crate::kcoeff::{point_coefficient, t_dual_free_degree};
use num_bigint::BigInt;
use serde::Deserialize;
use std::collections::BTreeMap;
use thiserror::Error;

/// Largest space dimension covered by the tables.
pub const MAX_DIM: usize = 3;

/// The table shipped with the crate.
pub const DEFAULT_DATA: &str = include_str!("data/strong_f2i.toml");

const DATA_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum StrongDataError {
    #[error("cannot parse strong-phase data: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("unsupported data version {found}; this build reads version {DATA_VERSION}")]
    Version { found: u64 },
    #[error(transparent)]
    UnknownClass(#[from] UnknownClass),
    #[error("record {class} m={m}: dimension out of range, the tables cover m = 0..={MAX_DIM}")]
    DimRange { class: AZLabel, m: usize },
    #[error("duplicate record for {class} m={m}")]
    Duplicate { class: AZLabel, m: usize },
    #[error("missing record for {class} m={m}")]
    Missing { class: AZLabel, m: usize },
    #[error("record {class} m={m}: {source}")]
    Group {
        class: AZLabel,
        m: usize,
        source: AbGroupError,
    },
    #[error(
        "record {class} m={m}: map has {rows} rows and {cols} columns, expected {expected_rows} (interacting generators) by {expected_cols} (free generators)"
    )]
    MapShape {
        class: AZLabel,
        m: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("record {class} m={m}: kernel literal {literal:?} is not \"0\", \"Z\", or \"nZ\"")]
    KernelLiteral {
        class: AZLabel,
        m: usize,
        literal: String,
    },
    #[error("record {class} m={m}: stored kernel {stored:?} but the map's kernel is {computed:?}")]
    KernelMismatch {
        class: AZLabel,
        m: usize,
        stored: String,
        computed: String,
    },
    #[error("record {class} m={m}: stored cokernel {stored} but the map's cokernel is {computed}")]
    CokernelMismatch {
        class: AZLabel,
        m: usize,
        stored: FGAbelianGroup,
        computed: FGAbelianGroup,
    },
}

/// One class, one dimension: the comparison map with everything derived
/// from it.
#[derive(Clone, Debug)]
pub struct StrongRecord {
    pub class: AZLabel,
    pub m: usize,
    /// Free classification group, `point_coefficient(flavor, m + s - 2)`.
    pub free: FGAbelianGroup,
    /// Interacting classification group.
    pub interacting: FGAbelianGroup,
    /// Comparison map on canonical generators.
    pub map: GroupHom,
    pub kernel: KernelRecord,
    pub cokernel: FGAbelianGroup,
    /// Where the interacting side comes from.
    pub provenance: String,
}

/// The forced free-side group for a class in dimension `m`.
pub fn free_group(label: AZLabel, m: usize) -> FGAbelianGroup {
    let c = class(label);
    point_coefficient(c.flavor(), t_dual_free_degree(c.s, m as i64))
}

/// Validated strong-phase table, keyed by class and dimension.
#[derive(Clone, Debug)]
pub struct StrongData {
    records: BTreeMap<(AZLabel, usize), StrongRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRoot {
    version: u64,
    #[serde(default)]
    record: Vec<FileRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRecord {
    class: String,
    m: usize,
    interacting: String,
    map: Vec<Vec<i64>>,
    kernel: String,
    cokernel: String,
    provenance: String,
}

impl StrongData {
    /// Loads and validates the table shipped with the crate.
    pub fn load_default() -> Result<Self, StrongDataError> {
        Self::load_str(DEFAULT_DATA)
    }

    /// Loads and validates a table from TOML text. Every record is
    /// recomputed: the free side from the point coefficients, the kernel
    /// and cokernel from the stored map. Any disagreement is an error
    /// naming the record.
    pub fn load_str(text: &str) -> Result<Self, StrongDataError> {
        let root: FileRoot = toml::from_str(text)?;
        if root.version != DATA_VERSION {
            return Err(StrongDataError::Version {
                found: root.version,
            });
        }
        let mut records = BTreeMap::new();
        for file_record in root.record {
            let record = validate_record(file_record)?;
            let key = (record.class, record.m);
            if records.insert(key, record).is_some() {
                return Err(StrongDataError::Duplicate {
                    class: key.0,
                    m: key.1,
                });
            }
        }
        for label in AZLabel::ALL {
            for m in 0..=MAX_DIM {
                if !records.contains_key(&(label, m)) {
                    return Err(StrongDataError::Missing { class: label, m });
                }
            }
        }
        Ok(StrongData { records })
    }

    /// The record for one class and dimension.
    pub fn record(&self, label: AZLabel, m: usize) -> Result<&StrongRecord, StrongDataError> {
        if m > MAX_DIM {
            return Err(StrongDataError::DimRange { class: label, m });
        }
        Ok(self
            .records
            .get(&(label, m))
            .expect("validated data covers every class and dimension"))
    }

    /// All records, classes in registry order, dimensions ascending.
    pub fn records(&self) -> impl Iterator<Item = &StrongRecord> {
        AZLabel::ALL
            .into_iter()
            .flat_map(move |label| (0..=MAX_DIM).map(move |m| &self.records[&(label, m)]))
    }
}

fn validate_record(file: FileRecord) -> Result<StrongRecord, StrongDataError> {
    let label: AZLabel = file.class.parse()?;
    let m = file.m;
    if m > MAX_DIM {
        return Err(StrongDataError::DimRange { class: label, m });
    }
    let group_err = |source| StrongDataError::Group {
        class: label,
        m,
        source,
    };
    let free = free_group(label, m);
    let interacting = parse_group(&file.interacting).map_err(group_err)?;
    let cokernel_stored = parse_group(&file.cokernel).map_err(group_err)?;
    let expected_rows = interacting.generator_count();
    let expected_cols = free.generator_count();
    let rows = file.map.len();
    let cols = file.map.first().map_or(0, Vec::len);
    let shape_err = || StrongDataError::MapShape {
        class: label,
        m,
        rows,
        cols,
        expected_rows,
        expected_cols,
    };
    if rows != expected_rows || file.map.iter().any(|r| r.len() != cols) {
        return Err(shape_err());
    }
    if rows > 0 && cols != expected_cols {
        return Err(shape_err());
    }
    let matrix =
        crate::abgroup::matrix::IntMatrix::from_fn(expected_rows, expected_cols, |i, j| {
            BigInt::from(file.map[i][j])
        });
    let map = GroupHom::new(
        free.to_presentation(),
        interacting.to_presentation(),
        matrix,
    );
    map.validate().map_err(group_err)?;
    let kernel = map.kernel().map_err(group_err)?;
    let cokernel = map.cokernel().map_err(group_err)?;
    check_kernel_literal(label, m, &file.kernel, &kernel)?;
    if cokernel != cokernel_stored {
        return Err(StrongDataError::CokernelMismatch {
            class: label,
            m,
            stored: cokernel_stored,
            computed: cokernel,
        });
    }
    Ok(StrongRecord {
        class: label,
        m,
        free,
        interacting,
        map,
        kernel,
        cokernel,
        provenance: file.provenance,
    })
}

/// Kernel literals are `"0"`, `"Z"`, or `"nZ"`: out of a cyclic free side
/// the kernel is a sublattice, and the literal states its scale.
fn check_kernel_literal(
    label: AZLabel,
    m: usize,
    literal: &str,
    computed: &KernelRecord,
) -> Result<(), StrongDataError> {
    let bad_literal = || StrongDataError::KernelLiteral {
        class: label,
        m,
        literal: literal.to_string(),
    };
    let expected: Vec<BigInt> = match literal {
        "0" => Vec::new(),
        "Z" => vec![BigInt::from(1)],
        other => {
            let digits = other.strip_suffix('Z').ok_or_else(bad_literal)?;
            let n: BigInt = digits.parse().map_err(|_| bad_literal())?;
            if n < BigInt::from(2) {
                return Err(bad_literal());
            }
            vec![n]
        }
    };
    let scales = if computed.group.is_trivial() {
        Vec::new()
    } else {
        sublattice_scales(&computed.subgroup_generators)
    };
    if scales != expected {
        return Err(StrongDataError::KernelMismatch {
            class: label,
            m,
            stored: literal.to_string(),
            computed: computed.index_description.clone(),
        });
    }
    Ok(())
}

/// Observed weak-table totals for one class in one dimension; the four
/// columns of a table row, as abstract groups.
#[derive(Clone, Debug)]
pub struct ObservedWeakRow {
    pub d: usize,
    pub kernel: FGAbelianGroup,
    pub free: FGAbelianGroup,
    pub interacting: FGAbelianGroup,
    pub cokernel: FGAbelianGroup,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("weak totals for {class} are inconsistent at dimension {dim}: {detail}")]
    Inconsistent {
        class: AZLabel,
        dim: usize,
        detail: String,
    },
}

/// Reconstructs the strong records of a class from its observed weak-table
/// totals for d = 1..3.
///
/// The torus totals in dimension `d` are binomial sums of point blocks,
/// `total_d = ⊕_k binomial(d, k) · block_{d-k}`, so the point data can be
/// peeled off dimension by dimension once the d = 0 block is known. That
/// block is pinned to an isomorphism (see the module docs), which is what
/// makes the answer unique: without the pin, classes with a `Z2` in both
/// the free and interacting columns of dimension 1 admit a second,
/// shifted solution. Each reconstructed map is the lexicographically
/// smallest matrix (row-major reading order, canonical generator
/// coordinates) realizing the peeled kernel and cokernel.
pub fn solve_point_data(
    label: AZLabel,
    rows: &[ObservedWeakRow],
) -> Result<Vec<StrongRecord>, SolveError> {
    let inconsistent = |dim: usize, detail: String| SolveError::Inconsistent {
        class: label,
        dim,
        detail,
    };
    let mut by_dim: BTreeMap<usize, &ObservedWeakRow> = BTreeMap::new();
    for row in rows {
        by_dim.insert(row.d, row);
    }
    for d in 1..=MAX_DIM {
        if !by_dim.contains_key(&d) {
            return Err(inconsistent(d, "no observed row for this dimension".into()));
        }
    }

    // Column peeling: blocks[m] holds (kernel, free, interacting,
    // cokernel) of the dimension-m record.
    let trivial = FGAbelianGroup::trivial;
    let mut kernel_blocks = vec![trivial()];
    let mut free_blocks = vec![free_group(label, 0)];
    let mut interacting_blocks = vec![free_group(label, 0)];
    let mut cokernel_blocks = vec![trivial()];
    for d in 1..=MAX_DIM {
        let row = by_dim[&d];
        if row.d != d {
            unreachable!();
        }
        let free_expected = free_group(label, d);
        let peel = |column: &FGAbelianGroup,
                    blocks: &mut Vec<FGAbelianGroup>,
                    name: &str|
         -> Result<(), SolveError> {
            let mut lower = Vec::new();
            for k in 1..=d {
                let b = binomial(d, k);
                lower.extend(std::iter::repeat_n(blocks[d - k].clone(), b));
            }
            let stacked = FGAbelianGroup::direct_sum(&lower);
            let block = monoid_difference(column, &stacked).ok_or_else(|| {
                inconsistent(
                    d,
                    format!(
                        "{name} column {} does not contain the stacked lower-dimensional blocks {}",
                        column.render(RenderStyle::Unicode),
                        stacked.render(RenderStyle::Unicode)
                    ),
                )
            })?;
            blocks.push(block);
            Ok(())
        };
        peel(&row.kernel, &mut kernel_blocks, "kernel")?;
        peel(&row.free, &mut free_blocks, "free")?;
        peel(&row.interacting, &mut interacting_blocks, "interacting")?;
        peel(&row.cokernel, &mut cokernel_blocks, "cokernel")?;
        if free_blocks[d] != free_expected {
            return Err(inconsistent(
                d,
                format!(
                    "free column peels to {} but the point coefficient is {}",
                    free_blocks[d].render(RenderStyle::Unicode),
                    free_expected.render(RenderStyle::Unicode)
                ),
            ));
        }
    }

    let mut records = Vec::new();
    for m in 0..=MAX_DIM {
        let map = minimal_realization(
            &free_blocks[m],
            &interacting_blocks[m],
            &kernel_blocks[m],
            &cokernel_blocks[m],
        )
        .ok_or_else(|| {
            inconsistent(
                m.max(1),
                format!(
                    "no map {} -> {} has kernel {} and cokernel {}",
                    free_blocks[m].render(RenderStyle::Unicode),
                    interacting_blocks[m].render(RenderStyle::Unicode),
                    kernel_blocks[m].render(RenderStyle::Unicode),
                    cokernel_blocks[m].render(RenderStyle::Unicode)
                ),
            )
        })?;
        let kernel = map.kernel().expect("realization was validated");
        let cokernel = map.cokernel().expect("realization was validated");
        records.push(StrongRecord {
            class: label,
            m,
            free: free_blocks[m].clone(),
            interacting: interacting_blocks[m].clone(),
            map,
            kernel,
            cokernel,
            provenance: "reconstructed from weak-table totals".to_string(),
        });
    }
    Ok(records)
}

fn binomial(n: usize, k: usize) -> usize {
    let mut acc: usize = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Lexicographically smallest matrix (row-major reading order) defining a
/// map `free -> interacting` with the requested kernel and cokernel.
/// Entries range over `0..order` for torsion rows and `0..=3` for free
/// rows, which covers every comparison map that exists in the tables.
fn minimal_realization(
    free: &FGAbelianGroup,
    interacting: &FGAbelianGroup,
    kernel: &FGAbelianGroup,
    cokernel: &FGAbelianGroup,
) -> Option<GroupHom> {
    let domain = free.to_presentation();
    let codomain = interacting.to_presentation();
    let rows = codomain.generator_count();
    let cols = domain.generator_count();
    let row_bound = |i: usize| -> u64 {
        if i < interacting.free_rank() {
            4
        } else {
            u64::try_from(&interacting.invariant_factors()[i - interacting.free_rank()])
                .expect("table torsion orders fit in u64")
        }
    };
    let total = rows * cols;
    let mut entries = vec![0u64; total];
    loop {
        let matrix = crate::abgroup::matrix::IntMatrix::from_fn(rows, cols, |i, j| {
            BigInt::from(entries[i * cols + j])
        });
        let hom = GroupHom::new(domain.clone(), codomain.clone(), matrix);
        if hom.validate().is_ok()
            && hom.kernel().expect("validated").group == *kernel
            && hom.cokernel().expect("validated") == *cokernel
        {
            return Some(hom);
        }
        let mut pos = total;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            entries[pos] += 1;
            if entries[pos] < row_bound(pos / cols) {
                break;
            }
            entries[pos] = 0;
        }
    }
}
