//! Dense integer matrices and Smith normal form.
//!
//! Entries are arbitrary-precision integers: intermediate values during a
//! reduction routinely outgrow the inputs, and correctness here is load
//! bearing for everything above. The decomposition computed by
//! [`smith_normal_form`] is `left * m * right = diagonal` with `left` and
//! `right` unimodular and the diagonal entries nonnegative, each dividing
//! the next. Pivot selection is deterministic (smallest nonzero absolute
//! value, ties broken by row-major position), so transforms are stable
//! across runs and platforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense row-major matrix over the integers. Zero-row and zero-column
/// shapes are legal; they show up as presentations of free groups and as
/// maps out of the trivial group.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from machine-integer rows. All rows must have the
    /// same length; an empty slice gives the 0 x 0 matrix.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|row| row.len() == c),
            "ragged rows: expected uniform length {c}"
        );
        IntMatrix {
            rows: r,
            cols: c,
            data: rows
                .iter()
                .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
                .collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        self.data[i * self.cols + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        IntMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| self.at(i, k) * rhs.at(k, j)).sum()
        })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(
            v.len(),
            self.cols,
            "vector length differs from column count"
        );
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    /// Horizontal concatenation `[self | right]`.
    pub fn augment(&self, right: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, right.rows, "row counts differ");
        IntMatrix::from_fn(self.rows, self.cols + right.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                right.at(i, j - self.cols).clone()
            }
        })
    }

    /// Keeps the first `count` rows, dropping the rest.
    pub fn top_rows(&self, count: usize) -> IntMatrix {
        assert!(count <= self.rows);
        IntMatrix::from_fn(count, self.cols, |i, j| self.at(i, j).clone())
    }

    /// Block-diagonal assembly; off-block entries are zero.
    pub fn block_diagonal(blocks: &[IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = IntMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.at(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Exact determinant by Bareiss fraction-free elimination. Quadratic
    /// growth only, and every division is exact.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row_vec(i)).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    fn row_vec(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`.
    fn add_scaled_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let delta = c * self.at(src, j);
            let v = self.at(dst, j) + delta;
            self.set(dst, j, v);
        }
    }

    /// `col[dst] += c * col[src]`.
    fn add_scaled_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let delta = c * self.at(i, src);
            let v = self.at(i, dst) + delta;
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix({}x{})", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Result of [`smith_normal_form`]: `left * m * right = diagonal`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    /// Unimodular row transform, `rows x rows`.
    pub left: IntMatrix,
    /// The diagonal matrix, same shape as the input. Entries are
    /// nonnegative and each nonzero entry divides the next.
    pub diagonal: IntMatrix,
    /// Unimodular column transform, `cols x cols`.
    pub right: IntMatrix,
}

impl SmithDecomposition {
    /// The `min(rows, cols)` diagonal entries, in order.
    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal.at(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal_entries()
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }
}

/// Position of the entry with smallest nonzero absolute value in the
/// trailing block starting at `(t, t)`, scanning row-major so ties resolve
/// to the earliest position.
fn pivot_position(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.at(i, j);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            match &best {
                Some((m, _, _)) if *m <= abs => {}
                _ => best = Some((abs, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// First entry of the block strictly below and right of `(t, t)` that the
/// pivot `a[t][t]` does not divide, in row-major order.
fn first_nondivisible(a: &IntMatrix, t: usize) -> Option<usize> {
    let p = a.at(t, t).clone();
    for i in t + 1..a.rows() {
        for j in t + 1..a.cols() {
            if !a.at(i, j).mod_floor(&p).is_zero() {
                return Some(i);
            }
        }
    }
    None
}

/// Smith normal form over the integers.
///
/// Returns unimodular `left`, `right` and diagonal `d` with
/// `left * m * right = d`, `d[i][i] >= 0`, and `d[i][i]` dividing
/// `d[i+1][i+1]`. Deterministic for a given input; see the module docs for
/// the pivot rule.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = pivot_position(&a, t) else {
            break;
        };
        if pi != t {
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
        }
        if pj != t {
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if a.at(i, t).is_zero() {
                continue;
            }
            let q = -(a.at(i, t) / a.at(t, t));
            if !q.is_zero() {
                a.add_scaled_row(i, t, &q);
                left.add_scaled_row(i, t, &q);
            }
            if !a.at(i, t).is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if a.at(t, j).is_zero() {
                continue;
            }
            let q = -(a.at(t, j) / a.at(t, t));
            if !q.is_zero() {
                a.add_scaled_col(j, t, &q);
                right.add_scaled_col(j, t, &q);
            }
            if !a.at(t, j).is_zero() {
                clean = false;
            }
        }
        if !clean {
            // A truncated-division remainder survived somewhere in row or
            // column t; the next pivot pick is strictly smaller in absolute
            // value, which bounds the number of passes.
            continue;
        }
        if let Some(i) = first_nondivisible(&a, t) {
            let one = BigInt::one();
            a.add_scaled_row(t, i, &one);
            left.add_scaled_row(t, i, &one);
            continue;
        }
        if a.at(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }
    SmithDecomposition {
        left,
        diagonal: a,
        right,
    }
}

/// Basis for the integer kernel lattice `{x : m x = 0}`, returned as the
/// columns of a `cols x nullity` matrix. The basis columns are the columns
/// of the Smith right transform sitting over zero diagonal entries, so the
/// result is as deterministic as the decomposition itself.
pub fn integer_kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let d = snf.diagonal_entries();
    let keep: Vec<usize> = (0..m.cols())
        .filter(|&j| j >= d.len() || d[j].is_zero())
        .collect();
    IntMatrix::from_fn(m.cols(), keep.len(), |i, k| {
        snf.right.at(i, keep[k]).clone()
    })
}

/// One integer solution of `m x = rhs`, if any exists.
pub fn solve_integer(m: &IntMatrix, rhs: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(
        rhs.len(),
        m.rows(),
        "right-hand side length differs from row count"
    );
    let snf = smith_normal_form(m);
    let b = snf.left.apply(rhs);
    let d = snf.diagonal_entries();
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, bi) in b.iter().enumerate() {
        if i < d.len() && !d[i].is_zero() {
            let (q, r) = bi.div_rem(&d[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !bi.is_zero() {
            return None;
        }
    }
    Some(snf.right.apply(&y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn snf_checks(m: &IntMatrix) {
        let snf = smith_normal_form(m);
        assert_eq!(snf.left.mul(m).mul(&snf.right), snf.diagonal);
        assert_eq!(snf.left.determinant().abs(), BigInt::one());
        assert_eq!(snf.right.determinant().abs(), BigInt::one());
        let d = snf.diagonal_entries();
        for i in 0..snf.diagonal.rows() {
            for j in 0..snf.diagonal.cols() {
                if i != j {
                    assert!(
                        snf.diagonal.at(i, j).is_zero(),
                        "off-diagonal junk at ({i},{j})"
                    );
                }
            }
        }
        for v in &d {
            assert!(!v.is_negative());
        }
        for w in d.windows(2) {
            if !w[0].is_zero() {
                assert!(
                    w[1].mod_floor(&w[0]).is_zero(),
                    "{} does not divide {}",
                    w[0],
                    w[1]
                );
            } else {
                assert!(w[1].is_zero(), "nonzero entry after a zero on the diagonal");
            }
        }
    }

    #[test]
    fn snf_of_coprime_diagonal_merges_factors() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(
            snf.diagonal_entries(),
            vec![BigInt::from(1), BigInt::from(6)]
        );
        snf_checks(&m);
    }

    #[test]
    fn snf_of_zero_and_empty_matrices() {
        snf_checks(&IntMatrix::zeros(3, 2));
        assert_eq!(smith_normal_form(&IntMatrix::zeros(3, 2)).rank(), 0);
        for m in [
            IntMatrix::zeros(0, 0),
            IntMatrix::zeros(0, 4),
            IntMatrix::zeros(4, 0),
        ] {
            let snf = smith_normal_form(&m);
            assert_eq!(snf.diagonal, m);
            snf_checks(&m);
        }
    }

    #[test]
    fn snf_handles_negative_pivots() {
        let m = IntMatrix::from_rows(&[vec![-4, 2], vec![6, -8]]);
        snf_checks(&m);
        let d = smith_normal_form(&m).diagonal_entries();
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(10)]);
    }

    #[test]
    fn kernel_basis_spans_the_kernel() {
        let m = IntMatrix::from_rows(&[vec![2, 4]]);
        let k = integer_kernel_basis(&m);
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = integer_kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_finds_exact_solutions_and_rejects_the_rest() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let sol = solve_integer(&m, &[BigInt::from(4), BigInt::from(9)]).unwrap();
        assert_eq!(m.apply(&sol), vec![BigInt::from(4), BigInt::from(9)]);
        assert!(solve_integer(&m, &[BigInt::from(1), BigInt::from(0)]).is_none());
        // Inconsistent overdetermined system.
        let tall = IntMatrix::from_rows(&[vec![1], vec![1]]);
        assert!(solve_integer(&tall, &[BigInt::from(1), BigInt::from(2)]).is_none());
        // Zero-column matrix: solvable exactly when the rhs vanishes.
        let empty = IntMatrix::zeros(2, 0);
        assert!(solve_integer(&empty, &[BigInt::zero(), BigInt::zero()]).is_some());
        assert!(solve_integer(&empty, &[BigInt::one(), BigInt::zero()]).is_none());
    }

    #[test]
    fn determinant_matches_cofactor_expansion_on_small_cases() {
        let m = IntMatrix::from_rows(&[vec![3, 8], vec![4, 6]]);
        assert_eq!(m.determinant(), BigInt::from(-14));
        let m = IntMatrix::from_rows(&[vec![6, 1, 1], vec![4, -2, 5], vec![2, 8, 7]]);
        assert_eq!(m.determinant(), BigInt::from(-306));
        assert_eq!(IntMatrix::identity(5).determinant(), BigInt::one());
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), BigInt::one());
    }

    #[test]
    fn block_diagonal_and_augment_compose_shapes() {
        let a = IntMatrix::from_rows(&[vec![1, 2]]);
        let b = IntMatrix::from_rows(&[vec![3], vec![4]]);
        let blk = IntMatrix::block_diagonal(&[a.clone(), b]);
        assert_eq!((blk.rows(), blk.cols()), (3, 3));
        assert_eq!(blk.at(0, 1), &BigInt::from(2));
        assert_eq!(blk.at(2, 2), &BigInt::from(4));
        assert!(blk.at(0, 2).is_zero());
        let aug = a.augment(&IntMatrix::identity(1));
        assert_eq!((aug.rows(), aug.cols()), (1, 3));
        assert_eq!(aug.at(0, 2), &BigInt::one());
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-20i64..=20, r * c).prop_map(move |entries| {
                IntMatrix::from_fn(r, c, |i, j| BigInt::from(entries[i * c + j]))
            })
        })
    }

    proptest! {
        #[test]
        fn snf_invariants_hold_on_random_matrices(m in arb_matrix()) {
            snf_checks(&m);
        }

        #[test]
        fn kernel_columns_are_annihilated(m in arb_matrix()) {
            let k = integer_kernel_basis(&m);
            prop_assert!(m.mul(&k).is_zero());
        }

        #[test]
        fn solve_round_trips_on_images(m in arb_matrix(), x in proptest::collection::vec(-5i64..=5, 6)) {
            let v: Vec<BigInt> = x[..m.cols()].iter().map(|&e| BigInt::from(e)).collect();
            let rhs = m.apply(&v);
            let sol = solve_integer(&m, &rhs).expect("image vector must be solvable");
            prop_assert_eq!(m.apply(&sol), rhs);
        }
    }
}
