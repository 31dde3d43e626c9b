//! Exact integer matrices and the Smith normal form.
//!
//! Everything here works over arbitrary-precision integers. The Smith
//! decomposition keeps both transformation matrices so callers can map
//! vectors in and out of the diagonal basis:
//!
//! ```text
//!     U · M · V = D,   |det U| = |det V| = 1,   d_1 | d_2 | ... | d_r, zeros last
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("ragged rows: row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::Empty);
        }
        Ok(IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        })
    }

    pub fn identity(size: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(size, size)?;
        for i in 0..size {
            m.data[i * size + i] = BigInt::one();
        }
        Ok(m)
    }

    pub fn from_rows<T>(rows: &[Vec<T>]) -> Result<Self, LinalgError>
    where
        T: Clone + Into<BigInt>,
    {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::Ragged {
                    row: i,
                    len: row.len(),
                    expected: cols,
                });
            }
            for (j, x) in row.iter().enumerate() {
                m.data[i * cols + j] = x.clone().into();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        self.data[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, col).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data: vec![BigInt::zero(); self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `v · M`.
    pub fn left_mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if v.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                got: v.len(),
            });
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += vi * self.get(i, j);
            }
        }
        Ok(out)
    }

    /// Matrix times column vector: `M · v`.
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Submatrix with the given row and column removed.
    pub fn minor_matrix(&self, skip_row: usize, skip_col: usize) -> Option<IntMatrix> {
        if self.rows < 2 || self.cols < 2 {
            return None;
        }
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                data.push(self.get(i, j).clone());
            }
        }
        Some(IntMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        })
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

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = factor * &self.data[src * self.cols + j];
            self.data[dst * self.cols + j] += delta;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = factor * &self.data[i * self.cols + src];
            self.data[i * self.cols + dst] += delta;
        }
    }

    fn negate_row(&mut self, row: usize) {
        for j in 0..self.cols {
            let idx = row * self.cols + j;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }

    pub(crate) fn negate_col(&mut self, col: usize) {
        for i in 0..self.rows {
            let idx = i * self.cols + col;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
            }))
            .finish()
    }
}

/// Output of [`smith_normal_form`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// Unimodular, rows × rows.
    pub left: IntMatrix,
    /// Unimodular, cols × cols.
    pub right: IntMatrix,
    /// `left · M · right`.
    pub diagonal: IntMatrix,
    /// The first `min(rows, cols)` diagonal entries.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }
}

/// Smith normal form with transforms, using minimal-absolute-value pivots.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows).expect("rows >= 1");
    let mut right = IntMatrix::identity(cols).expect("cols >= 1");

    'diag: for k in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&a, k) else {
                break 'diag;
            };
            a.swap_rows(k, pi);
            left.swap_rows(k, pi);
            a.swap_cols(k, pj);
            right.swap_cols(k, pj);

            let pivot = a.get(k, k).clone();
            let mut dirty = false;
            for i in k + 1..rows {
                let q = a.get(i, k).div_floor(&pivot);
                let neg = -q;
                a.add_row_multiple(i, k, &neg);
                left.add_row_multiple(i, k, &neg);
                dirty |= !a.get(i, k).is_zero();
            }
            for j in k + 1..cols {
                let q = a.get(k, j).div_floor(&pivot);
                let neg = -q;
                a.add_col_multiple(j, k, &neg);
                right.add_col_multiple(j, k, &neg);
                dirty |= !a.get(k, j).is_zero();
            }
            if dirty {
                continue;
            }

            // Pivot must divide the whole trailing block; otherwise pull an
            // offending row up and reduce again (the remainder is a smaller pivot).
            let offending = (k + 1..rows).find(|&i| {
                (k + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot))
            });
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(k, i, &one);
                    left.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        if a.get(k, k).is_negative() {
            a.negate_row(k);
            left.negate_row(k);
        }
    }

    let invariant_factors = (0..rows.min(cols)).map(|i| a.get(i, i).clone()).collect();
    SmithDecomposition {
        left,
        right,
        diagonal: a,
        invariant_factors,
    }
}

fn min_abs_entry(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                best = Some((i, j, abs));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// True iff `v` is an integer combination of the rows of `m`.
pub fn row_lattice_contains(m: &IntMatrix, v: &[BigInt]) -> Result<bool, LinalgError> {
    let snf = smith_normal_form(m);
    row_lattice_contains_with(m, &snf, v)
}

/// Same as [`row_lattice_contains`] but reuses a precomputed decomposition of `m`.
pub fn row_lattice_contains_with(
    m: &IntMatrix,
    snf: &SmithDecomposition,
    v: &[BigInt],
) -> Result<bool, LinalgError> {
    if v.len() != m.cols() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.cols(),
            got: v.len(),
        });
    }
    // y·M = v  <=>  (y·U⁻¹)·D = v·V
    let z = snf.right.left_mul_vec(v)?;
    Ok(z.iter().enumerate().all(|(i, zi)| {
        match snf.invariant_factors.get(i) {
            Some(d) if d.is_zero() => zi.is_zero(),
            Some(d) => zi.is_multiple_of(d),
            None => zi.is_zero(),
        }
    }))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                a.set(i, j, num / &prev);
            }
        }
        prev = a.get(k, k).clone();
    }
    Ok(sign * a.get(n - 1, n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Fraction-free Gaussian elimination rank; test-only, independent of the SNF.
    fn bareiss_rank(m: &IntMatrix) -> usize {
        let mut a = m.to_rows();
        let (rows, cols) = (m.rows(), m.cols());
        let mut rank = 0;
        let mut prev = BigInt::one();
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..rows {
                for j in c + 1..cols {
                    let num = &a[i][j] * &a[rank][c] - &a[i][c] * &a[rank][j];
                    a[i][j] = num / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[rank][c].clone();
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// d_k = gcd(k×k minors) / gcd((k-1)×(k-1) minors); test-only oracle.
    fn invariant_factors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 0..n {
                for mut rest in subsets(n, k - 1) {
                    if rest.first().is_none_or(|&r| r > first) {
                        rest.insert(0, first);
                        out.push(rest);
                    }
                }
            }
            out
        }
        let r = m.rows().min(m.cols());
        let mut gcds = vec![BigInt::one()];
        for k in 1..=r {
            let mut g = BigInt::zero();
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let sub: Vec<Vec<BigInt>> = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect())
                        .collect();
                    g = g.gcd(&determinant(&IntMatrix::from_rows(&sub).unwrap()).unwrap());
                }
            }
            gcds.push(g);
        }
        (1..=r)
            .map(|k| {
                if gcds[k].is_zero() {
                    BigInt::zero()
                } else {
                    &gcds[k] / &gcds[k - 1]
                }
            })
            .collect()
    }

    fn check_decomposition(m: &IntMatrix) -> SmithDecomposition {
        let snf = smith_normal_form(m);
        let prod = snf.left.mul(m).unwrap().mul(&snf.right).unwrap();
        assert_eq!(prod, snf.diagonal);
        assert_eq!(determinant(&snf.left).unwrap().abs(), BigInt::one());
        assert_eq!(determinant(&snf.right).unwrap().abs(), BigInt::one());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    assert!(snf.diagonal.get(i, j).is_zero());
                }
            }
        }
        let d = &snf.invariant_factors;
        for w in d.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zero factors must trail: {d:?}");
            } else {
                assert!(w[1].is_multiple_of(&w[0]), "divisibility chain broken: {d:?}");
            }
        }
        snf
    }

    #[test]
    fn example_matrix_with_two_torsion() {
        let m = mat(&[&[3, 0, -1, -1], &[-1, 4, 0, -2], &[0, -2, 5, -1], &[-2, -2, -4, 4]]);
        let snf = check_decomposition(&m);
        assert_eq!(snf.invariant_factors, ints(&[1, 1, 2, 0]));
        assert_eq!(snf.rank(), 3);
    }

    #[test]
    fn identity_factors() {
        let m = IntMatrix::identity(3).unwrap();
        assert_eq!(check_decomposition(&m).invariant_factors, ints(&[1, 1, 1]));
    }

    #[test]
    fn laplacian_of_triangle() {
        let m = mat(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        let snf = check_decomposition(&m);
        assert_eq!(snf.invariant_factors, invariant_factors_by_minors(&m));
        assert_eq!(snf.invariant_factors, ints(&[1, 3, 0]));
    }

    #[test]
    fn rectangular_and_zero() {
        let m = mat(&[&[2, 4, 6], &[4, 8, 12]]);
        let snf = check_decomposition(&m);
        assert_eq!(snf.invariant_factors, ints(&[2, 0]));
        let z = IntMatrix::zeros(2, 3).unwrap();
        assert_eq!(check_decomposition(&z).invariant_factors, ints(&[0, 0]));
        let tall = mat(&[&[6], &[4], &[9]]);
        assert_eq!(check_decomposition(&tall).invariant_factors, ints(&[1]));
    }

    #[test]
    fn divisibility_fix_up() {
        // diag(2, 3) must become diag(1, 6)
        let m = mat(&[&[2, 0], &[0, 3]]);
        assert_eq!(check_decomposition(&m).invariant_factors, ints(&[1, 6]));
    }

    #[test]
    fn lattice_membership() {
        let m = mat(&[&[3, 0, -1, -1], &[-1, 4, 0, -2], &[0, -2, 5, -1], &[-2, -2, -4, 4]]);
        assert!(row_lattice_contains(&m, &ints(&[0, 0, 0, 0])).unwrap());
        assert!(row_lattice_contains(&m, &ints(&[3, 0, -1, -1])).unwrap());
        assert!(!row_lattice_contains(&m, &ints(&[1, 0, 0, 0])).unwrap());
        assert!(matches!(
            row_lattice_contains(&m, &ints(&[1, 0])),
            Err(LinalgError::DimensionMismatch { expected: 4, got: 2 })
        ));
    }

    #[test]
    fn unit_vector_not_in_lattice_by_small_search() {
        // brute force: no combination with coefficients in [-6, 6] hits e_1
        let m = mat(&[&[3, 0, -1, -1], &[-1, 4, 0, -2], &[0, -2, 5, -1], &[-2, -2, -4, 4]]);
        let rows = m.to_rows();
        let target = ints(&[1, 0, 0, 0]);
        for a in -6..=6i64 {
            for b in -6..=6i64 {
                for c in -6..=6i64 {
                    let v: Vec<BigInt> = (0..4)
                        .map(|j| {
                            &rows[0][j] * a + &rows[1][j] * b + &rows[2][j] * c
                        })
                        .collect();
                    assert_ne!(v, target);
                }
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(IntMatrix::zeros(0, 3), Err(LinalgError::Empty));
        let ragged = IntMatrix::from_rows(&[vec![1i64, 2], vec![3]]);
        assert!(matches!(ragged, Err(LinalgError::Ragged { row: 1, .. })));
        let m = mat(&[&[1, 2, 3]]);
        assert!(determinant(&m).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = IntMatrix> {
            (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
                proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
                    .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
            })
        }

        proptest! {
            #[test]
            fn decomposition_invariants(m in small_matrix()) {
                let snf = check_decomposition(&m);
                prop_assert_eq!(snf.rank(), bareiss_rank(&m));
            }

            #[test]
            fn factors_match_gcd_of_minors(m in small_matrix()) {
                prop_assume!(m.rows() <= 4 && m.cols() <= 4);
                let snf = smith_normal_form(&m);
                prop_assert_eq!(snf.invariant_factors, invariant_factors_by_minors(&m));
            }

            #[test]
            fn combinations_of_rows_are_members(
                m in small_matrix(),
                coeffs in proptest::collection::vec(-5i64..=5, 4),
            ) {
                let snf = smith_normal_form(&m);
                for i in 0..m.rows() {
                    prop_assert!(row_lattice_contains_with(&m, &snf, m.row(i)).unwrap());
                }
                let y: Vec<BigInt> = coeffs.iter().take(m.rows()).map(|&c| BigInt::from(c)).collect();
                let y: Vec<BigInt> = y.into_iter().chain(std::iter::repeat(BigInt::zero())).take(m.rows()).collect();
                let v = m.left_mul_vec(&y).unwrap();
                prop_assert!(row_lattice_contains_with(&m, &snf, &v).unwrap());
            }
        }
    }
}
