//! Weak-phase classification over tori.
//!
//! A `d`-torus splits stably into `2^d` cells indexed by subsets of the
//! circle directions, and a cell of dimension `k` carries the strong
//! problem in dimension `d - k`: the bottom cell is the strong phase
//! itself, the top cell the band count, everything in between a weak
//! phase wrapped around some of the circles. [`classify`] assembles the
//! free and interacting classifications cell by cell, builds the
//! block-diagonal comparison map, and computes its kernel and cokernel
//! both directly (Smith normal form of the assembled matrix) and
//! blockwise; tests hold the engine to the two agreeing.
//!
//! [`dislocation_pairing`] evaluates the physical pairing between a weak
//! phase and a lattice defect: a defect with Burgers vector `B` probed by
//! defect charges `M_i` (one per circle direction, valued in the strong
//! interacting group one dimension down) binds `sum_i B_i M_i`.

use crate::abgroup::{
    FGAbelianGroup, GroupHom, KernelRecord, RenderStyle, render_sublattice, sublattice_scales,
};
use crate::azclass::{AZLabel, class};
use crate::kcoeff::{
    CellRole, KFlavor, TorusDecomposition, TorusSummand, t_dual_free_degree, torus_group,
};
use crate::strongf2i::{MAX_DIM, StrongData, StrongDataError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeakError {
    #[error("dimension {d} out of range; the tables cover d = 0..={MAX_DIM}")]
    DimRange { d: usize },
    #[error("expected {expected} defect charge vectors (one per circle direction), got {got}")]
    DefectCount { expected: usize, got: usize },
    #[error(
        "defect charge {index} has {got} coordinates but the pairing group {group} has {expected} generators"
    )]
    DefectShape {
        index: usize,
        expected: usize,
        got: usize,
        group: String,
    },
    #[error("Burgers vector has {got} entries, expected {expected}")]
    BurgersShape { expected: usize, got: usize },
    #[error(transparent)]
    Data(#[from] StrongDataError),
}

/// One cell's block of the weak classification.
#[derive(Clone, Debug)]
pub struct WeakBlock {
    /// Which circle directions the cell wraps, ascending, possibly empty.
    pub cell: Vec<usize>,
    pub cell_dim: usize,
    /// Dimension of the strong problem this block carries: `d - cell_dim`.
    pub strong_dim: usize,
    pub role: CellRole,
    pub free: FGAbelianGroup,
    pub interacting: FGAbelianGroup,
    pub kernel: FGAbelianGroup,
    pub cokernel: FGAbelianGroup,
}

/// Full weak classification of one class on the `d`-torus.
#[derive(Clone, Debug)]
pub struct WeakResult {
    pub class: AZLabel,
    pub d: usize,
    /// Free side, the K-theory torus decomposition.
    pub free: TorusDecomposition,
    /// Interacting side, cell by cell; degrees here are bordism degrees
    /// (`strong_dim + 2` per cell).
    pub interacting: TorusDecomposition,
    /// Block-diagonal comparison map over all `2^d` cells.
    pub map: GroupHom,
    /// Kernel of the comparison map; the description is the table column,
    /// in block order (`"8Z ⊕ (4Z)^3"` style).
    pub kernel: KernelRecord,
    pub cokernel: FGAbelianGroup,
    /// Per-cell blocks, cells ordered by dimension then lexicographically.
    pub blocks: Vec<WeakBlock>,
}

/// Subsets of `{1, ..., d}` ordered by size, then lexicographically.
fn cells(d: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..1 << d)
        .map(|mask| (1..=d).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn role_for(cell_dim: usize, d: usize) -> CellRole {
    if cell_dim == d && d > 0 {
        CellRole::BandCount
    } else if cell_dim == 0 {
        CellRole::Strong
    } else {
        CellRole::Weak
    }
}

/// Classifies one symmetry class on the `d`-torus, `d <= 3`.
pub fn classify(data: &StrongData, label: AZLabel, d: usize) -> Result<WeakResult, WeakError> {
    if d > MAX_DIM {
        return Err(WeakError::DimRange { d });
    }
    let c = class(label);
    let free = torus_group(c.flavor(), t_dual_free_degree(c.s, d as i64), d);
    let mut blocks = Vec::new();
    let mut homs = Vec::new();
    for cell in cells(d) {
        let cell_dim = cell.len();
        let strong_dim = d - cell_dim;
        let record = data.record(label, strong_dim)?;
        blocks.push(WeakBlock {
            cell,
            cell_dim,
            strong_dim,
            role: role_for(cell_dim, d),
            free: record.free.clone(),
            interacting: record.interacting.clone(),
            kernel: record.kernel.group.clone(),
            cokernel: record.cokernel.clone(),
        });
        homs.push(record.map.clone());
    }
    let map = GroupHom::direct_sum(&homs);
    let mut kernel = map.kernel().expect("blocks were validated at load time");
    kernel.index_description = kernel_column(data, label, d, &kernel)?;
    let cokernel = map.cokernel().expect("blocks were validated at load time");
    let interacting = interacting_decomposition(data, label, c.flavor(), d)?;
    Ok(WeakResult {
        class: label,
        d,
        free,
        interacting,
        map,
        kernel,
        cokernel,
        blocks,
    })
}

/// Interacting-side counterpart of the K-theory torus decomposition: the
/// same cells, each carrying the interacting strong group of its
/// dimension, with the bordism degree `strong_dim + 2` in place of the
/// point degree.
fn interacting_decomposition(
    data: &StrongData,
    label: AZLabel,
    flavor: KFlavor,
    d: usize,
) -> Result<TorusDecomposition, WeakError> {
    let mut summands = Vec::new();
    let mut parts = Vec::new();
    for k in 0..=d {
        let record = data.record(label, d - k)?;
        let multiplicity = binomial(d, k);
        summands.push(TorusSummand {
            cell_dim: k,
            multiplicity,
            point_degree: (d - k) as i64 + 2,
            group: record.interacting.clone(),
            role: role_for(k, d),
        });
        parts.extend(std::iter::repeat_n(
            record.interacting.clone(),
            multiplicity as usize,
        ));
    }
    Ok(TorusDecomposition {
        flavor,
        degree: d as i64 + 2,
        dim: d,
        summands,
        total: FGAbelianGroup::direct_sum(&parts),
    })
}

/// The kernel column of the table: concatenated sublattice scales in block
/// order when every nontrivial block kernel is a sublattice of a free
/// block (which holds for all shipped data), the abstract class otherwise.
fn kernel_column(
    data: &StrongData,
    label: AZLabel,
    d: usize,
    kernel: &KernelRecord,
) -> Result<String, WeakError> {
    if kernel.group.is_trivial() {
        return Ok("0".to_string());
    }
    let mut scales = Vec::new();
    for cell in cells(d) {
        let record = data.record(label, d - cell.len())?;
        if record.kernel.group.is_trivial() {
            continue;
        }
        if !record.free.invariant_factors().is_empty()
            || !record.kernel.group.invariant_factors().is_empty()
        {
            return Ok(kernel.group.render(RenderStyle::Unicode));
        }
        scales.extend(sublattice_scales(&record.kernel.subgroup_generators));
    }
    Ok(render_sublattice(&scales))
}

fn binomial(n: usize, k: usize) -> u64 {
    let mut acc: u64 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Result of pairing a weak phase against a lattice defect.
#[derive(Clone, Debug)]
pub struct PairingResult {
    pub class: AZLabel,
    pub d: usize,
    /// The group the pairing lands in: the strong interacting group in
    /// dimension `d - 1`.
    pub group: FGAbelianGroup,
    /// Reduced coordinates of `sum_i burgers[i] * defects[i]` on the
    /// canonical generators of `group`.
    pub element: Vec<BigInt>,
    /// `"(1) in Z2"` style rendering.
    pub rendered: String,
    pub trivial: bool,
}

/// Pairs defect charges against a Burgers vector.
///
/// `defects[i]` is the charge bound to circle direction `i + 1`, written
/// on the canonical generators of the strong interacting group in
/// dimension `d - 1`; `burgers` is the defect's Burgers vector. The bound
/// charge is the sum `sum_i burgers[i] * defects[i]`, reduced modulo the
/// invariant factors.
pub fn dislocation_pairing(
    data: &StrongData,
    label: AZLabel,
    d: usize,
    defects: &[Vec<BigInt>],
    burgers: &[BigInt],
) -> Result<PairingResult, WeakError> {
    if d == 0 || d > MAX_DIM {
        return Err(WeakError::DimRange { d });
    }
    let group = data.record(label, d - 1)?.interacting.clone();
    let gens = group.generator_count();
    if defects.len() != d {
        return Err(WeakError::DefectCount {
            expected: d,
            got: defects.len(),
        });
    }
    for (index, charge) in defects.iter().enumerate() {
        if charge.len() != gens {
            return Err(WeakError::DefectShape {
                index,
                expected: gens,
                got: charge.len(),
                group: group.render(RenderStyle::Unicode),
            });
        }
    }
    if burgers.len() != d {
        return Err(WeakError::BurgersShape {
            expected: d,
            got: burgers.len(),
        });
    }
    let mut element = vec![BigInt::zero(); gens];
    for (b, charge) in burgers.iter().zip(defects) {
        for (acc, c) in element.iter_mut().zip(charge) {
            *acc += b * c;
        }
    }
    for (j, acc) in element.iter_mut().enumerate() {
        if j >= group.free_rank() {
            *acc = acc.mod_floor(&group.invariant_factors()[j - group.free_rank()]);
        }
    }
    let trivial = element.iter().all(Zero::is_zero);
    let rendered = if gens == 0 {
        "0 in 0".to_string()
    } else {
        format!(
            "({}) in {}",
            element
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", "),
            group.render(RenderStyle::Unicode)
        )
    };
    Ok(PairingResult {
        class: label,
        d,
        group,
        element,
        rendered,
        trivial,
    })
}

/// Output formats for [`render_table`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Json,
    Csv,
}

impl std::str::FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "markdown" | "md" => Ok(TableFormat::Markdown),
            "json" => Ok(TableFormat::Json),
            "csv" => Ok(TableFormat::Csv),
            other => Err(format!(
                "unknown format {other:?}; expected markdown, json, or csv"
            )),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct SummandDto {
    pub cell_dim: usize,
    pub multiplicity: u64,
    pub point_degree: i64,
    pub group: String,
    pub role: CellRole,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct DecompositionDto {
    pub degree: i64,
    pub total: String,
    pub summands: Vec<SummandDto>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct KernelDto {
    pub group: String,
    pub description: String,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct BlockDto {
    pub cell: Vec<usize>,
    pub cell_dim: usize,
    pub strong_dim: usize,
    pub role: CellRole,
    pub free: String,
    pub interacting: String,
    pub kernel: String,
    pub cokernel: String,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct TableRowDto {
    pub class: String,
    pub d: usize,
    pub free: DecompositionDto,
    pub interacting: DecompositionDto,
    pub kernel: KernelDto,
    pub cokernel: String,
    pub blocks: Vec<BlockDto>,
}

fn decomposition_dto(decomposition: &TorusDecomposition) -> DecompositionDto {
    DecompositionDto {
        degree: decomposition.degree,
        total: decomposition.total.render(RenderStyle::Unicode),
        summands: decomposition
            .summands
            .iter()
            .map(|s| SummandDto {
                cell_dim: s.cell_dim,
                multiplicity: s.multiplicity,
                point_degree: s.point_degree,
                group: s.group.render(RenderStyle::Unicode),
                role: s.role,
            })
            .collect(),
    }
}

impl WeakResult {
    pub fn to_row_dto(&self) -> TableRowDto {
        TableRowDto {
            class: self.class.name().to_string(),
            d: self.d,
            free: decomposition_dto(&self.free),
            interacting: decomposition_dto(&self.interacting),
            kernel: KernelDto {
                group: self.kernel.group.render(RenderStyle::Unicode),
                description: self.kernel.index_description.clone(),
            },
            cokernel: self.cokernel.render(RenderStyle::Unicode),
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockDto {
                    cell: b.cell.clone(),
                    cell_dim: b.cell_dim,
                    strong_dim: b.strong_dim,
                    role: b.role,
                    free: b.free.render(RenderStyle::Unicode),
                    interacting: b.interacting.render(RenderStyle::Unicode),
                    kernel: b.kernel.render(RenderStyle::Unicode),
                    cokernel: b.cokernel.render(RenderStyle::Unicode),
                })
                .collect(),
        }
    }

    fn block_with_role(&self, role: CellRole) -> Option<&WeakBlock> {
        self.blocks.iter().find(|b| b.role == role)
    }
}

/// Renders the weak table for the given classes and dimensions. Output is
/// deterministic byte for byte: classes and dimensions appear in the order
/// given, blocks in cell order.
pub fn render_table(
    data: &StrongData,
    classes: &[AZLabel],
    dims: &[usize],
    format: TableFormat,
) -> Result<String, WeakError> {
    let mut results = Vec::new();
    for &label in classes {
        for &d in dims {
            results.push(classify(data, label, d)?);
        }
    }
    Ok(match format {
        TableFormat::Markdown => render_markdown(&results),
        TableFormat::Json => {
            let rows: Vec<TableRowDto> = results.iter().map(WeakResult::to_row_dto).collect();
            let mut text =
                serde_json::to_string_pretty(&rows).expect("table rows serialize infallibly");
            text.push('\n');
            text
        }
        TableFormat::Csv => render_csv(&results),
    })
}

fn roles_cell(result: &WeakResult, style: RenderStyle) -> String {
    let arrow = match style {
        RenderStyle::Ascii => "->",
        _ => "\u{2192}",
    };
    let mut parts = Vec::new();
    if let Some(b) = result.block_with_role(CellRole::Strong) {
        parts.push(format!(
            "strong: {} {arrow} {}",
            b.free.render(style),
            b.interacting.render(style)
        ));
    }
    if let Some(b) = result.block_with_role(CellRole::BandCount) {
        parts.push(format!(
            "band: {} {arrow} {}",
            b.free.render(style),
            b.interacting.render(style)
        ));
    }
    parts.join("; ")
}

fn render_markdown(results: &[WeakResult]) -> String {
    let mut out = String::new();
    let mut current_class = None;
    for result in results {
        if current_class != Some(result.class) {
            if current_class.is_some() {
                out.push('\n');
            }
            let c = class(result.class);
            let kind = match c.kind {
                crate::azclass::SymmetryKind::Complex => "complex",
                crate::azclass::SymmetryKind::Real => "real",
            };
            out.push_str(&format!(
                "## {} ({kind}, s = {}, structure {})\n\n",
                c.label, c.s, c.structure_group_name
            ));
            out.push_str("| d | kernel | free | interacting | cokernel | roles |\n");
            out.push_str("|---|--------|------|-------------|----------|-------|\n");
            current_class = Some(result.class);
        }
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} |\n",
            result.d,
            result.kernel.index_description,
            result.free.total.render(RenderStyle::Unicode),
            result.interacting.total.render(RenderStyle::Unicode),
            result.cokernel.render(RenderStyle::Unicode),
            roles_cell(result, RenderStyle::Unicode),
        ));
    }
    out
}

fn render_csv(results: &[WeakResult]) -> String {
    let mut out =
        String::from("class,d,kernel,free,interacting,cokernel,strong_block,band_block\n");
    for result in results {
        let strong = result
            .block_with_role(CellRole::Strong)
            .map(|b| {
                format!(
                    "{} -> {}",
                    b.free.render(RenderStyle::Ascii),
                    b.interacting.render(RenderStyle::Ascii)
                )
            })
            .unwrap_or_default();
        let band = result
            .block_with_role(CellRole::BandCount)
            .map(|b| {
                format!(
                    "{} -> {}",
                    b.free.render(RenderStyle::Ascii),
                    b.interacting.render(RenderStyle::Ascii)
                )
            })
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            result.class,
            result.d,
            result.kernel.index_description.replace(" \u{2295} ", " + "),
            result.free.total.render(RenderStyle::Ascii),
            result.interacting.total.render(RenderStyle::Ascii),
            result.cokernel.render(RenderStyle::Ascii),
            strong,
            band,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::parse_group;

    fn data() -> StrongData {
        StrongData::load_default().unwrap()
    }

    fn big(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn cells_are_ordered_by_size_then_lexicographically() {
        assert_eq!(cells(0), vec![Vec::<usize>::new()]);
        assert_eq!(
            cells(3),
            vec![
                vec![],
                vec![1],
                vec![2],
                vec![3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
                vec![1, 2, 3],
            ]
        );
    }

    #[test]
    fn aii_three_torus_matches_the_worked_example() {
        let result = classify(&data(), AZLabel::AII, 3).unwrap();
        assert_eq!(result.free.total, parse_group("Z + Z2^4").unwrap());
        assert_eq!(result.interacting.total, parse_group("Z + Z2^6").unwrap());
        assert!(result.kernel.group.is_trivial());
        assert_eq!(result.kernel.index_description, "0");
        assert_eq!(result.cokernel, parse_group("Z2^2").unwrap());
        assert_eq!(result.blocks.len(), 8);
        let strong = &result.blocks[0];
        assert_eq!(strong.cell, Vec::<usize>::new());
        assert_eq!(strong.role, CellRole::Strong);
        assert_eq!(strong.strong_dim, 3);
        assert_eq!(strong.free, parse_group("Z2").unwrap());
        assert_eq!(strong.interacting, parse_group("Z2^3").unwrap());
        assert_eq!(strong.cokernel, parse_group("Z2^2").unwrap());
        let band = result.blocks.last().unwrap();
        assert_eq!(band.role, CellRole::BandCount);
        assert_eq!(band.strong_dim, 0);
        assert_eq!(band.free, FGAbelianGroup::free(1));
        assert_eq!(band.interacting, FGAbelianGroup::free(1));
        // Map shape: 7 interacting generators by 5 free generators.
        assert_eq!(result.map.matrix.rows(), 7);
        assert_eq!(result.map.matrix.cols(), 5);
    }

    #[test]
    fn aiii_kernel_column_lists_scales_in_block_order() {
        let result = classify(&data(), AZLabel::AIII, 3).unwrap();
        assert_eq!(result.kernel.index_description, "8Z \u{2295} (4Z)^3");
        assert_eq!(result.kernel.group, FGAbelianGroup::free(4));
        assert_eq!(result.cokernel, FGAbelianGroup::cyclic(2));
        assert_eq!(
            result.interacting.total,
            parse_group("Z2 + Z4^3 + Z8").unwrap()
        );
        let d1 = classify(&data(), AZLabel::AIII, 1).unwrap();
        assert_eq!(d1.kernel.index_description, "4Z");
        let bdi = classify(&data(), AZLabel::BDI, 3).unwrap();
        assert_eq!(bdi.kernel.index_description, "(8Z)^3");
    }

    #[test]
    fn assembled_kernel_and_cokernel_match_blockwise_sums() {
        let data = data();
        for label in [AZLabel::AIII, AZLabel::CI, AZLabel::AII, AZLabel::C] {
            for d in 0..=MAX_DIM {
                let result = classify(&data, label, d).unwrap();
                let kernel_blocks: Vec<FGAbelianGroup> =
                    result.blocks.iter().map(|b| b.kernel.clone()).collect();
                let cokernel_blocks: Vec<FGAbelianGroup> =
                    result.blocks.iter().map(|b| b.cokernel.clone()).collect();
                assert_eq!(
                    result.kernel.group,
                    FGAbelianGroup::direct_sum(&kernel_blocks),
                    "{label} d={d} kernel"
                );
                assert_eq!(
                    result.cokernel,
                    FGAbelianGroup::direct_sum(&cokernel_blocks),
                    "{label} d={d} cokernel"
                );
            }
        }
    }

    #[test]
    fn bottom_cell_reproduces_the_strong_record() {
        let data = data();
        for label in [AZLabel::D, AZLabel::CII] {
            for d in 0..=MAX_DIM {
                let result = classify(&data, label, d).unwrap();
                let record = data.record(label, d).unwrap();
                let bottom = &result.blocks[0];
                assert_eq!(bottom.free, record.free);
                assert_eq!(bottom.interacting, record.interacting);
                assert_eq!(bottom.kernel, record.kernel.group);
                assert_eq!(bottom.cokernel, record.cokernel);
            }
        }
    }

    #[test]
    fn zero_torus_is_the_strong_problem_alone() {
        let result = classify(&data(), AZLabel::D, 0).unwrap();
        assert_eq!(result.blocks.len(), 1);
        assert_eq!(result.blocks[0].role, CellRole::Strong);
        assert_eq!(result.free.total, FGAbelianGroup::cyclic(2));
        assert!(classify(&data(), AZLabel::D, 4).is_err());
    }

    #[test]
    fn pairing_detects_the_helical_response() {
        let data = data();
        // Three defect charges in the AII surface group Z2, Burgers vector
        // along the first direction: one unit of charge binds.
        let nontrivial = dislocation_pairing(
            &data,
            AZLabel::AII,
            3,
            &[big(&[1]), big(&[0]), big(&[0])],
            &big(&[1, 0, 0]),
        )
        .unwrap();
        assert_eq!(nontrivial.group, FGAbelianGroup::cyclic(2));
        assert_eq!(nontrivial.element, big(&[1]));
        assert_eq!(nontrivial.rendered, "(1) in Z2");
        assert!(!nontrivial.trivial);
        // Two charged directions probed along both: the Z2 charges cancel.
        let trivial = dislocation_pairing(
            &data,
            AZLabel::AII,
            3,
            &[big(&[1]), big(&[1]), big(&[0])],
            &big(&[1, 1, 0]),
        )
        .unwrap();
        assert!(trivial.trivial);
        assert_eq!(trivial.element, big(&[0]));
    }

    #[test]
    fn pairing_validates_its_inputs() {
        let data = data();
        assert!(matches!(
            dislocation_pairing(&data, AZLabel::AII, 3, &[big(&[1])], &big(&[1, 0, 0])),
            Err(WeakError::DefectCount {
                expected: 3,
                got: 1
            })
        ));
        assert!(matches!(
            dislocation_pairing(
                &data,
                AZLabel::AII,
                3,
                &[big(&[1, 0]), big(&[0]), big(&[0])],
                &big(&[1, 0, 0])
            ),
            Err(WeakError::DefectShape { index: 0, .. })
        ));
        assert!(matches!(
            dislocation_pairing(
                &data,
                AZLabel::AII,
                3,
                &[big(&[1]), big(&[0]), big(&[0])],
                &big(&[1])
            ),
            Err(WeakError::BurgersShape {
                expected: 3,
                got: 1
            })
        ));
        assert!(matches!(
            dislocation_pairing(&data, AZLabel::AII, 0, &[], &[]),
            Err(WeakError::DimRange { d: 0 })
        ));
    }

    #[test]
    fn markdown_table_freezes_the_bdi_section() {
        let text =
            render_table(&data(), &[AZLabel::BDI], &[1, 2, 3], TableFormat::Markdown).unwrap();
        let expected = "\
## BDI (real, s = 1, structure Pin^-)

| d | kernel | free | interacting | cokernel | roles |
|---|--------|------|-------------|----------|-------|
| 1 | 8Z | Z \u{2295} Z2 | Z2 \u{2295} Z8 | 0 | strong: Z \u{2192} Z8; band: Z2 \u{2192} Z2 |
| 2 | (8Z)^2 | Z^2 \u{2295} Z2 | Z2 \u{2295} Z8^2 | 0 | strong: 0 \u{2192} 0; band: Z2 \u{2192} Z2 |
| 3 | (8Z)^3 | Z^3 \u{2295} Z2 | Z2 \u{2295} Z8^3 | 0 | strong: 0 \u{2192} 0; band: Z2 \u{2192} Z2 |
";
        assert_eq!(text, expected);
    }

    #[test]
    fn json_round_trips_and_agrees_with_the_engine() {
        let data = data();
        let text = render_table(
            &data,
            &[AZLabel::A, AZLabel::D],
            &[1, 2, 3],
            TableFormat::Json,
        )
        .unwrap();
        let rows: Vec<TableRowDto> = serde_json::from_str(&text).unwrap();
        assert_eq!(rows.len(), 6);
        for row in &rows {
            let label: AZLabel = row.class.parse().unwrap();
            let result = classify(&data, label, row.d).unwrap();
            assert_eq!(row, &result.to_row_dto());
            assert_eq!(
                parse_group(&row.free.total).unwrap(),
                result.free.total,
                "totals survive the string round trip"
            );
        }
    }

    #[test]
    fn csv_has_one_row_per_class_and_dimension() {
        let text = render_table(&data(), &[AZLabel::CI], &[1, 2, 3], TableFormat::Csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(
            lines[0],
            "class,d,kernel,free,interacting,cokernel,strong_block,band_block"
        );
        assert_eq!(lines[3], "CI,3,4Z,Z,Z2^4 + Z4,Z2^4,Z -> Z2 + Z4,0 -> 0");
    }

    #[test]
    fn rendering_is_deterministic() {
        let data = data();
        for format in [TableFormat::Markdown, TableFormat::Json, TableFormat::Csv] {
            let a = render_table(&data, &AZLabel::ALL, &[1, 2, 3], format).unwrap();
            let b = render_table(&data, &AZLabel::ALL, &[1, 2, 3], format).unwrap();
            assert_eq!(a, b);
        }
    }
}
