//! Finitely generated abelian groups and homomorphisms between them.
//!
//! A group is presented by an integer relation matrix (generators index the
//! rows, relators the columns) and classified up to isomorphism by its free
//! rank together with the chain of invariant factors `d1 | d2 | ...`, each
//! at least 2. Canonical forms come from the Smith normal form of the
//! relation matrix. Homomorphisms are integer matrices acting on generator
//! coordinates; the interesting operations, kernels and cokernels in the
//! category of abelian groups rather than of lattices, reduce to kernel
//! lattices of augmented matrices.

pub mod matrix;

use matrix::{IntMatrix, integer_kernel_basis, smith_normal_form, solve_integer};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AbGroupError {
    #[error(
        "matrix shape {rows}x{cols} does not match codomain x domain generator counts {expected_rows}x{expected_cols}"
    )]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error(
        "not a homomorphism: domain relator r{relator_index} = {relator} maps outside the codomain relation lattice"
    )]
    IllDefined {
        relator_index: usize,
        relator: String,
    },
    #[error("cannot parse {input:?} as a group expression: {reason}")]
    Parse { input: String, reason: String },
}

/// Isomorphism class of a finitely generated abelian group:
/// `Z^free_rank + Z/d1 + Z/d2 + ...` with `2 <= d1 | d2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FGAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

/// How to spell groups when rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderStyle {
    /// `Z ⊕ Z2^3`
    Unicode,
    /// `Z + Z2^3`
    Ascii,
    /// `\mathbb{Z} \oplus \mathbb{Z}_{2}^{3}`
    Latex,
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        FGAbelianGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// Cyclic group of order `n >= 1`; `cyclic(1)` is the trivial group.
    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 1, "cyclic group order must be positive");
        FGAbelianGroup::new(0, vec![BigInt::from(n)])
    }

    /// Builds the isomorphism class from a free rank and any list of
    /// torsion orders, canonicalizing into a divisibility chain. A zero in
    /// the list is an extra free summand; a one is dropped.
    pub fn new(free_rank: usize, torsion_orders: Vec<BigInt>) -> Self {
        let gens = free_rank + torsion_orders.len();
        let relations = IntMatrix::from_fn(gens, torsion_orders.len(), |i, j| {
            if i == free_rank + j {
                torsion_orders[j].abs()
            } else {
                BigInt::zero()
            }
        });
        PresentedGroup::new(gens, relations).canonical_form()
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Generator count of the canonical presentation: free generators
    /// first, then one generator per invariant factor in ascending order.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    /// Group order; `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }

    /// The canonical presentation, generators ordered as in
    /// [`generator_count`](Self::generator_count).
    pub fn to_presentation(&self) -> PresentedGroup {
        let gens = self.generator_count();
        let relations = IntMatrix::from_fn(gens, self.invariant_factors.len(), |i, j| {
            if i == self.free_rank + j {
                self.invariant_factors[j].clone()
            } else {
                BigInt::zero()
            }
        });
        PresentedGroup::new(gens, relations)
    }

    /// Direct sum of isomorphism classes, re-canonicalized.
    pub fn direct_sum(parts: &[FGAbelianGroup]) -> FGAbelianGroup {
        let rank = parts.iter().map(|g| g.free_rank).sum();
        let torsion: Vec<BigInt> = parts
            .iter()
            .flat_map(|g| g.invariant_factors.iter().cloned())
            .collect();
        FGAbelianGroup::new(rank, torsion)
    }

    pub fn render(&self, style: RenderStyle) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        if self.free_rank > 0 {
            terms.push(render_power(&free_symbol(style), self.free_rank, style));
        }
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let n = &self.invariant_factors[i];
            let mut count = 1;
            while i + count < self.invariant_factors.len()
                && &self.invariant_factors[i + count] == n
            {
                count += 1;
            }
            terms.push(render_power(&cyclic_symbol(n, style), count, style));
            i += count;
        }
        terms.join(joiner(style))
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RenderStyle::Unicode))
    }
}

fn free_symbol(style: RenderStyle) -> String {
    match style {
        RenderStyle::Latex => r"\mathbb{Z}".to_string(),
        _ => "Z".to_string(),
    }
}

fn cyclic_symbol(n: &BigInt, style: RenderStyle) -> String {
    match style {
        RenderStyle::Latex => format!(r"\mathbb{{Z}}_{{{n}}}"),
        _ => format!("Z{n}"),
    }
}

fn render_power(base: &str, exp: usize, style: RenderStyle) -> String {
    if exp == 1 {
        base.to_string()
    } else if style == RenderStyle::Latex {
        format!("{base}^{{{exp}}}")
    } else {
        format!("{base}^{exp}")
    }
}

fn joiner(style: RenderStyle) -> &'static str {
    match style {
        RenderStyle::Unicode => " \u{2295} ",
        RenderStyle::Ascii => " + ",
        RenderStyle::Latex => r" \oplus ",
    }
}

/// Parses group expressions in the notation emitted by
/// [`FGAbelianGroup::render`] for the unicode and ascii styles: `0`, `Z`,
/// `Z^3`, `Z8`, `Z2^4`, joined by `⊕` or `+`.
pub fn parse_group(input: &str) -> Result<FGAbelianGroup, AbGroupError> {
    let err = |reason: &str| AbGroupError::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let trimmed = input.trim();
    if trimmed == "0" {
        return Ok(FGAbelianGroup::trivial());
    }
    if trimmed.is_empty() {
        return Err(err("empty expression"));
    }
    let mut rank = 0usize;
    let mut torsion = Vec::new();
    for raw in trimmed.split(['\u{2295}', '+']) {
        let term = raw.trim();
        let rest = term
            .strip_prefix('Z')
            .ok_or_else(|| err("each summand must start with Z"))?;
        let (order, exp_part) = match rest.find('^') {
            Some(pos) => (&rest[..pos], Some(&rest[pos + 1..])),
            None => (rest, None),
        };
        let exp: usize = match exp_part {
            Some(e) => e
                .parse()
                .map_err(|_| err("exponent must be a positive integer"))?,
            None => 1,
        };
        if exp == 0 {
            return Err(err("exponent must be a positive integer"));
        }
        if order.is_empty() {
            rank += exp;
        } else {
            let n: BigInt = order
                .parse()
                .map_err(|_| err("cyclic order must be an integer"))?;
            if n < BigInt::from(2) {
                return Err(err("cyclic order must be at least 2"));
            }
            torsion.extend(std::iter::repeat_n(n, exp));
        }
    }
    Ok(FGAbelianGroup::new(rank, torsion))
}

/// A group given by generators and relations: the cokernel of the relation
/// matrix `Z^relators -> Z^generators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGroup {
    generator_count: usize,
    relations: IntMatrix,
}

impl PresentedGroup {
    /// `relations` has one row per generator and one column per relator.
    pub fn new(generator_count: usize, relations: IntMatrix) -> Self {
        assert_eq!(
            relations.rows(),
            generator_count,
            "relation matrix must have one row per generator"
        );
        PresentedGroup {
            generator_count,
            relations,
        }
    }

    /// Free group on `n` generators (no relators).
    pub fn free(n: usize) -> Self {
        PresentedGroup::new(n, IntMatrix::zeros(n, 0))
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// True when the presentation carries no effective relations.
    pub fn is_relation_free(&self) -> bool {
        self.relations.is_zero()
    }

    /// The isomorphism class, via the Smith normal form of the relation
    /// matrix: diagonal entries >= 2 are invariant factors, zero rows are
    /// free summands.
    pub fn canonical_form(&self) -> FGAbelianGroup {
        let snf = smith_normal_form(&self.relations);
        let d = snf.diagonal_entries();
        let rank_of_relations = d.iter().filter(|x| !x.is_zero()).count();
        FGAbelianGroup {
            free_rank: self.generator_count - rank_of_relations,
            invariant_factors: d.into_iter().filter(|x| *x > BigInt::one()).collect(),
        }
    }

    /// Direct sum of presentations: generators and relators concatenate,
    /// relations assemble block-diagonally.
    pub fn direct_sum(parts: &[PresentedGroup]) -> PresentedGroup {
        let relations: Vec<IntMatrix> = parts.iter().map(|p| p.relations.clone()).collect();
        PresentedGroup::new(
            parts.iter().map(|p| p.generator_count).sum(),
            IntMatrix::block_diagonal(&relations),
        )
    }
}

/// Homomorphism between presented groups, given on generator coordinates:
/// column `j` of `matrix` is the image of domain generator `j`, written in
/// codomain generators. Construction does not validate; call
/// [`validate`](Self::validate) or any derived computation, which validates
/// first.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub domain: PresentedGroup,
    pub codomain: PresentedGroup,
    pub matrix: IntMatrix,
}

/// Kernel of a homomorphism, remembered three ways: generators of the
/// kernel subgroup in domain coordinates, the abstract isomorphism class,
/// and a human-readable description of how the kernel sits in the domain
/// (`"8Z inside Z"` for a finite-index sublattice, plain group notation
/// otherwise).
#[derive(Clone, Debug)]
pub struct KernelRecord {
    pub subgroup_generators: IntMatrix,
    pub group: FGAbelianGroup,
    pub index_description: String,
}

impl GroupHom {
    pub fn new(domain: PresentedGroup, codomain: PresentedGroup, matrix: IntMatrix) -> Self {
        GroupHom {
            domain,
            codomain,
            matrix,
        }
    }

    /// Identity on a presented group.
    pub fn identity(group: PresentedGroup) -> Self {
        let n = group.generator_count();
        GroupHom::new(group.clone(), group, IntMatrix::identity(n))
    }

    /// Checks that the matrix has the right shape and that every domain
    /// relator maps into the codomain relation lattice; both are needed for
    /// the matrix to define a homomorphism of the presented groups.
    pub fn validate(&self) -> Result<(), AbGroupError> {
        let (er, ec) = (
            self.codomain.generator_count(),
            self.domain.generator_count(),
        );
        if self.matrix.rows() != er || self.matrix.cols() != ec {
            return Err(AbGroupError::ShapeMismatch {
                expected_rows: er,
                expected_cols: ec,
                rows: self.matrix.rows(),
                cols: self.matrix.cols(),
            });
        }
        for j in 0..self.domain.relations().cols() {
            let relator = self.domain.relations().column(j);
            let image = self.matrix.apply(&relator);
            if solve_integer(self.codomain.relations(), &image).is_none() {
                return Err(AbGroupError::IllDefined {
                    relator_index: j,
                    relator: render_combination(&relator),
                });
            }
        }
        Ok(())
    }

    /// Kernel as a subgroup of the domain.
    ///
    /// The preimage lattice `{x : matrix * x lies in the codomain relation
    /// lattice}` is the projection of the kernel of `[matrix | codomain
    /// relations]`; quotienting by the domain relation lattice gives the
    /// kernel group. Its presentation uses the projected columns as
    /// generators and their relations (vectors landing back in the domain
    /// relation lattice) as relators.
    pub fn kernel(&self) -> Result<KernelRecord, AbGroupError> {
        self.validate()?;
        let n = self.domain.generator_count();
        let lifted = integer_kernel_basis(&self.matrix.augment(self.codomain.relations()));
        let generators = lifted.top_rows(n);
        let syzygies = integer_kernel_basis(&generators.augment(self.domain.relations()));
        let relators = syzygies.top_rows(generators.cols());
        let group = PresentedGroup::new(generators.cols(), relators).canonical_form();
        let index_description = describe_subgroup(&self.domain, &generators, &group);
        Ok(KernelRecord {
            subgroup_generators: generators,
            group,
            index_description,
        })
    }

    /// Cokernel: the codomain with the image columns adjoined as relators.
    pub fn cokernel(&self) -> Result<FGAbelianGroup, AbGroupError> {
        self.validate()?;
        let relations = self.matrix.augment(self.codomain.relations());
        Ok(PresentedGroup::new(self.codomain.generator_count(), relations).canonical_form())
    }

    /// Direct sum of homomorphisms, block-diagonal on every layer.
    pub fn direct_sum(parts: &[GroupHom]) -> GroupHom {
        let matrices: Vec<IntMatrix> = parts.iter().map(|h| h.matrix.clone()).collect();
        GroupHom::new(
            PresentedGroup::direct_sum(&parts.iter().map(|h| h.domain.clone()).collect::<Vec<_>>()),
            PresentedGroup::direct_sum(
                &parts.iter().map(|h| h.codomain.clone()).collect::<Vec<_>>(),
            ),
            IntMatrix::block_diagonal(&matrices),
        )
    }
}

/// The unique `c` with `b ⊕ c ≅ a`, if `b` splits off `a` as a direct
/// summand; `None` otherwise. Finitely generated abelian groups cancel
/// (Krull-Schmidt on primary cyclic pieces), so working prime by prime on
/// the torsion parts is both sound and complete.
pub fn monoid_difference(a: &FGAbelianGroup, b: &FGAbelianGroup) -> Option<FGAbelianGroup> {
    if a.free_rank < b.free_rank {
        return None;
    }
    let mut parts: std::collections::BTreeMap<BigInt, usize> = std::collections::BTreeMap::new();
    for q in a.invariant_factors.iter().flat_map(prime_power_parts) {
        *parts.entry(q).or_insert(0) += 1;
    }
    for q in b.invariant_factors.iter().flat_map(prime_power_parts) {
        match parts.get_mut(&q) {
            Some(count) if *count > 0 => *count -= 1,
            _ => return None,
        }
    }
    let torsion: Vec<BigInt> = parts
        .into_iter()
        .flat_map(|(q, count)| std::iter::repeat_n(q, count))
        .collect();
    Some(FGAbelianGroup::new(a.free_rank - b.free_rank, torsion))
}

/// Prime-power cyclic pieces of `Z/n`, by trial division. Orders in the
/// tables are tiny, so no sophistication is called for.
fn prime_power_parts(n: &BigInt) -> Vec<BigInt> {
    let mut parts = Vec::new();
    let mut rest = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        if (&rest % &p).is_zero() {
            let mut q = BigInt::one();
            while (&rest % &p).is_zero() {
                rest /= &p;
                q *= &p;
            }
            parts.push(q);
        }
        p += 1;
    }
    if rest > BigInt::one() {
        parts.push(rest);
    }
    parts
}

/// Renders an integer combination of generators, `"2·g0 + g2"` style.
fn render_combination(coefficients: &[BigInt]) -> String {
    let mut terms = Vec::new();
    for (i, c) in coefficients.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_one() {
            terms.push(format!("g{i}"));
        } else {
            terms.push(format!("{c}\u{b7}g{i}"));
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Description of how a kernel sits inside its domain. For sublattices of a
/// free domain the elementary divisors of the generator matrix give the
/// scaling, largest first: `"8Z ⊕ (4Z)^3 inside Z^4"`. Otherwise fall back
/// to the abstract class.
fn describe_subgroup(
    domain: &PresentedGroup,
    generators: &IntMatrix,
    group: &FGAbelianGroup,
) -> String {
    if group.is_trivial() {
        return "0".to_string();
    }
    if !domain.is_relation_free() {
        return group.render(RenderStyle::Unicode);
    }
    let scales = sublattice_scales(generators);
    let ambient = FGAbelianGroup::free(domain.generator_count()).render(RenderStyle::Unicode);
    format!("{} inside {}", render_sublattice(&scales), ambient)
}

/// Nonzero elementary divisors of a lattice generator matrix, largest
/// first: the lattice is isomorphic to a direct sum of `d·Z` summands.
pub(crate) fn sublattice_scales(generators: &IntMatrix) -> Vec<BigInt> {
    let mut scales: Vec<BigInt> = smith_normal_form(generators)
        .diagonal_entries()
        .into_iter()
        .filter(|d| !d.is_zero())
        .collect();
    scales.reverse();
    scales
}

/// Renders sublattice scales as `"8Z ⊕ (4Z)^3"`; a scale of 1 prints as
/// plain `Z`.
pub(crate) fn render_sublattice(scales: &[BigInt]) -> String {
    if scales.is_empty() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    let mut i = 0;
    while i < scales.len() {
        let d = &scales[i];
        let mut count = 1;
        while i + count < scales.len() && &scales[i + count] == d {
            count += 1;
        }
        let base = if d.is_one() {
            "Z".to_string()
        } else {
            format!("{d}Z")
        };
        if count == 1 {
            terms.push(base);
        } else {
            terms.push(format!("({base})^{count}"));
        }
        i += count;
    }
    terms.join(" \u{2295} ")
}
