//! Point coefficients of real and complex K-theory and their torus
//! decompositions.
//!
//! Cohomological indexing is used throughout: the degree-`n` coefficient
//! group is the homotopy group in degree `-n`, so KO has `Z` in degrees
//! `0, -4, -8, ...` and `Z2` in degrees `-1, -2` modulo 8. A torus of
//! dimension `d` splits stably into `2^d` cells indexed by subsets of the
//! circle factors, and the degree-`n` group of the `d`-torus is the sum
//! over cells of point coefficients in shifted degrees, with binomial
//! multiplicities. The top cell carries the point group in degree `n - d`
//! and counts occupied bands; the bottom cell is the strong summand; the
//! rest are weak.
//!
//! One convention worth pinning down, since two sign choices circulate for
//! the degree a defect of codimension `s` probes on a `d`-torus: the tables
//! here use `d + s - 2` for the dual free degree. That is the choice forced
//! by requiring the top-cell summand of every class to be the band count
//! and is applied consistently everywhere downstream.

use crate::abgroup::FGAbelianGroup;
use serde::{Deserialize, Serialize};

/// Which K-theory flavor a symmetry class pairs with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KFlavor {
    /// Real K-theory, period 8.
    Ko,
    /// Complex K-theory, period 2.
    K,
}

impl KFlavor {
    pub fn period(self) -> i64 {
        match self {
            KFlavor::Ko => 8,
            KFlavor::K => 2,
        }
    }
}

/// Degree-`n` point coefficient group of the chosen flavor.
pub fn point_coefficient(flavor: KFlavor, degree: i64) -> FGAbelianGroup {
    match flavor {
        KFlavor::K => {
            if degree.rem_euclid(2) == 0 {
                FGAbelianGroup::free(1)
            } else {
                FGAbelianGroup::trivial()
            }
        }
        KFlavor::Ko => match degree.rem_euclid(8) {
            0 | 4 => FGAbelianGroup::free(1),
            6 | 7 => FGAbelianGroup::cyclic(2),
            _ => FGAbelianGroup::trivial(),
        },
    }
}

/// Physical meaning of a torus cell's contribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellRole {
    /// Bottom cell: the genuinely `d`-dimensional phases.
    Strong,
    /// Intermediate cells: phases stacked from lower dimensions.
    Weak,
    /// Top cell: the filled-band count.
    BandCount,
}

/// One cell's worth of a torus decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSummand {
    /// Dimension of the cells contributing this summand.
    pub cell_dim: usize,
    /// How many such cells there are: `binomial(d, cell_dim)`.
    pub multiplicity: u64,
    /// Point degree these cells land in.
    pub point_degree: i64,
    /// The point coefficient group in that degree.
    pub group: FGAbelianGroup,
    pub role: CellRole,
}

/// Degree-`degree` K-group of the `dim`-torus, cell by cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusDecomposition {
    pub flavor: KFlavor,
    pub degree: i64,
    pub dim: usize,
    /// One entry per cell dimension `0..=dim`, ascending.
    pub summands: Vec<TorusSummand>,
    /// Direct sum over all cells with multiplicity.
    pub total: FGAbelianGroup,
}

fn binomial(n: usize, k: usize) -> u64 {
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// Splits the degree-`degree` group of the `dim`-torus into cell summands.
/// Cells of dimension `k` contribute the point coefficient in degree
/// `degree - k`, with multiplicity `binomial(dim, k)`.
pub fn torus_group(flavor: KFlavor, degree: i64, dim: usize) -> TorusDecomposition {
    let summands: Vec<TorusSummand> = (0..=dim)
        .map(|k| {
            let point_degree = degree - k as i64;
            let role = if k == dim && dim > 0 {
                CellRole::BandCount
            } else if k == 0 {
                CellRole::Strong
            } else {
                CellRole::Weak
            };
            TorusSummand {
                cell_dim: k,
                multiplicity: binomial(dim, k),
                point_degree,
                group: point_coefficient(flavor, point_degree),
                role,
            }
        })
        .collect();
    let parts: Vec<FGAbelianGroup> = summands
        .iter()
        .flat_map(|s| std::iter::repeat_n(s.group.clone(), s.multiplicity as usize))
        .collect();
    TorusDecomposition {
        flavor,
        degree,
        dim,
        total: FGAbelianGroup::direct_sum(&parts),
        summands,
    }
}

/// Degree probed by a codimension-`s` defect wrapped by the dual cell on a
/// `d`-torus; see the module docs for the sign convention.
pub fn t_dual_free_degree(s: i64, d: i64) -> i64 {
    d + s - 2
}

/// Complementary cell: the sorted complement of `cell` in `{1, ..., d}`.
/// Elements must be distinct and within range.
pub fn dual_cell(cell: &[usize], d: usize) -> Result<Vec<usize>, String> {
    let mut seen = vec![false; d + 1];
    for &c in cell {
        if c == 0 || c > d {
            return Err(format!("cell element {c} out of range 1..={d}"));
        }
        if seen[c] {
            return Err(format!("cell element {c} repeated"));
        }
        seen[c] = true;
    }
    Ok((1..=d).filter(|&c| !seen[c]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::RenderStyle;

    fn ko(n: i64) -> FGAbelianGroup {
        point_coefficient(KFlavor::Ko, n)
    }

    #[test]
    fn ko_point_groups_follow_the_period_eight_pattern() {
        // Spot values in low degrees, then the full window by periodicity.
        assert_eq!(ko(0), FGAbelianGroup::free(1));
        assert_eq!(ko(-1), FGAbelianGroup::cyclic(2));
        assert_eq!(ko(-2), FGAbelianGroup::cyclic(2));
        assert_eq!(ko(-3), FGAbelianGroup::trivial());
        assert_eq!(ko(-4), FGAbelianGroup::free(1));
        assert_eq!(ko(-5), FGAbelianGroup::trivial());
        assert_eq!(ko(-6), FGAbelianGroup::trivial());
        assert_eq!(ko(-7), FGAbelianGroup::trivial());
        for n in -32..=32 {
            assert_eq!(ko(n), ko(n - 8), "KO degree {n}");
            assert_eq!(ko(n), ko(n + 8), "KO degree {n}");
        }
    }

    #[test]
    fn complex_point_groups_have_period_two() {
        for n in -32..=32 {
            let g = point_coefficient(KFlavor::K, n);
            if n % 2 == 0 {
                assert_eq!(g, FGAbelianGroup::free(1));
            } else {
                assert!(g.is_trivial());
            }
            assert_eq!(g, point_coefficient(KFlavor::K, n + 2));
        }
    }

    #[test]
    fn torus_decomposition_of_the_three_torus() {
        let t = torus_group(KFlavor::Ko, -1, 3);
        assert_eq!(t.summands.len(), 4);
        let m: Vec<u64> = t.summands.iter().map(|s| s.multiplicity).collect();
        assert_eq!(m, vec![1, 3, 3, 1]);
        let roles: Vec<CellRole> = t.summands.iter().map(|s| s.role).collect();
        assert_eq!(
            roles,
            vec![
                CellRole::Strong,
                CellRole::Weak,
                CellRole::Weak,
                CellRole::BandCount
            ]
        );
        let degrees: Vec<i64> = t.summands.iter().map(|s| s.point_degree).collect();
        assert_eq!(degrees, vec![-1, -2, -3, -4]);
        assert_eq!(t.total.render(RenderStyle::Unicode), "Z \u{2295} Z2^4");
    }

    #[test]
    fn zero_dimensional_torus_is_a_point_and_its_cell_is_strong() {
        let t = torus_group(KFlavor::Ko, -2, 0);
        assert_eq!(t.summands.len(), 1);
        assert_eq!(t.summands[0].role, CellRole::Strong);
        assert_eq!(t.total, ko(-2));
    }

    #[test]
    fn cell_multiplicities_are_symmetric_and_count_subsets() {
        for d in 0..=6 {
            let t = torus_group(KFlavor::K, 0, d);
            let total_cells: u64 = t.summands.iter().map(|s| s.multiplicity).sum();
            assert_eq!(total_cells, 1 << d);
            for s in &t.summands {
                assert_eq!(s.multiplicity, t.summands[d - s.cell_dim].multiplicity);
            }
        }
    }

    #[test]
    fn dual_degree_convention_and_dual_cells() {
        assert_eq!(t_dual_free_degree(-2, 3), -1);
        assert_eq!(t_dual_free_degree(1, 1), 0);
        assert_eq!(dual_cell(&[1, 3], 3).unwrap(), vec![2]);
        assert_eq!(dual_cell(&[], 2).unwrap(), vec![1, 2]);
        assert!(dual_cell(&[0], 2).is_err());
        assert!(dual_cell(&[1, 1], 2).is_err());
        assert!(dual_cell(&[3], 2).is_err());
    }

    #[test]
    fn binomials_match_pascal() {
        for n in 0..=10usize {
            for k in 0..=n {
                let direct = binomial(n, k);
                let pascal = if k == 0 || k == n {
                    1
                } else {
                    binomial(n - 1, k - 1) + binomial(n - 1, k)
                };
                assert_eq!(direct, pascal);
            }
        }
    }
}
