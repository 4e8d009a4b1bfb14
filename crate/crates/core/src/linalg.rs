//! Exact sparse linear algebra: rank over a field and per-block homology
//! dimensions. No floating point, no modular shortcuts — elimination runs in
//! the coefficient field itself.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("dimension mismatch: {left} vs {right} ({context})")]
    DimensionMismatch {
        left: String,
        right: String,
        context: &'static str,
    },
    #[error("not a complex: the composite differential is nonzero")]
    NotAComplex,
}

/// Sparse matrix with at most one stored entry per position; zeros are never
/// stored. Entries live in a `BTreeMap` so iteration order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), T>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries.insert((i, i), T::one());
        }
        m
    }

    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut m = Self::zero(rows, cols);
        for (r, c, v) in triplets {
            m.add_entry(r, c, v)?;
        }
        Ok(m)
    }

    /// Accumulate `v` into position `(row, col)`, dropping the entry if the
    /// sum cancels to zero.
    pub fn add_entry(&mut self, row: usize, col: usize, v: T) -> Result<(), LinalgError> {
        if row >= self.rows || col >= self.cols {
            return Err(LinalgError::OutOfRange {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        if v.is_zero() {
            return Ok(());
        }
        match self.entries.remove(&(row, col)) {
            None => {
                self.entries.insert((row, col), v);
            }
            Some(old) => {
                let sum = old + v;
                if !sum.is_zero() {
                    self.entries.insert((row, col), sum);
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&T> {
        self.entries.get(&(row, col))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            m.entries.insert((c, r), v.clone());
        }
        m
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.rows, self.cols);
        }
        let mut m = Self::zero(self.rows, self.cols);
        for (&pos, v) in &self.entries {
            m.entries.insert(pos, v.clone() * c.clone());
        }
        m
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::DimensionMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", rhs.rows, rhs.cols),
                context: "matrix addition",
            });
        }
        let mut m = self.clone();
        for (&(r, c), v) in &rhs.entries {
            m.add_entry(r, c, v.clone())?;
        }
        Ok(m)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.add(&rhs.scale(&-T::one()))
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", rhs.rows, rhs.cols),
                context: "matrix product",
            });
        }
        let rhs_rows = rhs.row_lists();
        let mut m = Self::zero(self.rows, rhs.cols);
        for (&(r, c), v) in &self.entries {
            for (k, w) in &rhs_rows[c] {
                m.add_entry(r, *k, v.clone() * w.clone())?;
            }
        }
        Ok(m)
    }

    /// Stack `self` on top of `other` (same column count).
    pub fn stack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                left: format!("{} cols", self.cols),
                right: format!("{} cols", other.cols),
                context: "vertical stack",
            });
        }
        let mut m = Self::zero(self.rows + other.rows, self.cols);
        m.entries = self.entries.clone();
        for (&(r, c), v) in &other.entries {
            m.entries.insert((r + self.rows, c), v.clone());
        }
        Ok(m)
    }

    fn row_lists(&self) -> Vec<Vec<(usize, T)>> {
        let mut rows = vec![Vec::new(); self.rows];
        // BTreeMap iterates in (row, col) order, so each list is col-sorted.
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v.clone()));
        }
        rows
    }

    /// Exact rank over the coefficient field.
    pub fn rank(&self) -> usize {
        if self.entries.is_empty() {
            return 0;
        }
        // Row reduction cost scales with the number of rows processed;
        // rank is transpose-invariant, so work on the thinner side.
        let row_data = if self.rows > self.cols {
            self.transpose().row_lists()
        } else {
            self.row_lists()
        };
        rank_of_rows(row_data)
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}

/// Gaussian elimination on sparse rows; pivot rows are kept normalized so a
/// reduction step is a single scaled subtraction per leading column.
fn rank_of_rows<T: Scalar>(mut rows: Vec<Vec<(usize, T)>>) -> usize {
    // Light rows first keeps fill-in down on the structured matrices we see.
    rows.sort_by_key(|r| r.len());
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    let mut rank = 0;
    for mut row in rows {
        loop {
            let Some((lead_col, lead_val)) = row.first().cloned() else {
                break;
            };
            match pivots.get(&lead_col) {
                Some(pivot) => {
                    row = axpy(&row, &lead_val, pivot);
                }
                None => {
                    let inv = T::one() / lead_val;
                    for (_, v) in row.iter_mut() {
                        *v = v.clone() * inv.clone();
                    }
                    pivots.insert(lead_col, row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// `row - coef * pivot` as a merge of column-sorted sparse rows.
fn axpy<T: Scalar>(row: &[(usize, T)], coef: &T, pivot: &[(usize, T)]) -> Vec<(usize, T)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < row.len() || b < pivot.len() {
        match (row.get(a), pivot.get(b)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let v = va.clone() - coef.clone() * vb.clone();
                if !v.is_zero() {
                    out.push((*ca, v));
                }
                a += 1;
                b += 1;
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                out.push((*ca, va.clone()));
                a += 1;
            }
            (Some(_), Some((cb, vb))) => {
                out.push((*cb, -(coef.clone() * vb.clone())));
                b += 1;
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                a += 1;
            }
            (None, Some((cb, vb))) => {
                out.push((*cb, -(coef.clone() * vb.clone())));
                b += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Homology dimension of the middle block of `upper --d_in--> block --d_out--> lower`:
/// `dim ker(d_out) - rank(d_in)`. Verifies that the two maps compose to zero.
pub fn homology_dim<T: Scalar>(
    d_out: &SparseMatrix<T>,
    d_in: &SparseMatrix<T>,
) -> Result<usize, LinalgError> {
    if d_out.cols() != d_in.rows() {
        return Err(LinalgError::DimensionMismatch {
            left: format!("d_out domain {}", d_out.cols()),
            right: format!("d_in codomain {}", d_in.rows()),
            context: "homology block",
        });
    }
    if !d_out.matmul(d_in)?.is_zero() {
        return Err(LinalgError::NotAComplex);
    }
    Ok(d_out.cols() - d_out.rank() - d_in.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use proptest::prelude::*;

    type M = SparseMatrix<Rat>;

    fn dense(rows: usize, cols: usize, data: &[i64]) -> M {
        assert_eq!(data.len(), rows * cols);
        M::from_triplets(
            rows,
            cols,
            data.iter()
                .enumerate()
                .map(|(ix, &v)| (ix / cols, ix % cols, Rat::from_int(v))),
        )
        .unwrap()
    }

    #[test]
    fn rank_of_zero_matrix() {
        assert_eq!(M::zero(3, 3).rank(), 0);
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(dense(2, 2, &[1, 2, 2, 4]).rank(), 1);
        assert_eq!(dense(2, 2, &[1, 2, 3, 4]).rank(), 2);
        assert_eq!(dense(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]).rank(), 2);
    }

    #[test]
    fn rank_with_rational_entries() {
        let m = M::from_triplets(
            2,
            2,
            vec![
                (0, 0, Rat::new(1.into(), 3.into())),
                (0, 1, Rat::new(1.into(), 2.into())),
                (1, 0, Rat::new(2.into(), 3.into())),
                (1, 1, Rat::from_int(1)),
            ],
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn entries_accumulate_and_cancel() {
        let mut m = M::zero(2, 2);
        m.add_entry(0, 0, Rat::from_int(2)).unwrap();
        m.add_entry(0, 0, Rat::from_int(-2)).unwrap();
        assert!(m.is_zero());
        assert!(m.add_entry(2, 0, Rat::from_int(1)).is_err());
    }

    #[test]
    fn homology_of_zero_maps_is_full_block() {
        let d_out = M::zero(4, 5);
        let d_in = M::zero(5, 2);
        assert_eq!(homology_dim(&d_out, &d_in).unwrap(), 5);
    }

    #[test]
    fn homology_of_identity_out_is_zero() {
        let d_out = M::identity(3);
        let d_in = M::zero(3, 4);
        assert_eq!(homology_dim(&d_out, &d_in).unwrap(), 0);
    }

    #[test]
    fn homology_rejects_nonzero_composite() {
        let d_out = M::identity(2);
        let d_in = M::identity(2);
        assert_eq!(homology_dim(&d_out, &d_in), Err(LinalgError::NotAComplex));
    }

    #[test]
    fn homology_rejects_shape_mismatch() {
        let d_out = M::zero(2, 3);
        let d_in = M::zero(4, 2);
        assert!(matches!(
            homology_dim(&d_out, &d_in),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn matmul_small() {
        let a = dense(2, 3, &[1, 2, 0, 0, 1, 1]);
        let b = dense(3, 2, &[1, 0, 0, 1, 1, 1]);
        assert_eq!(a.matmul(&b).unwrap(), dense(2, 2, &[1, 2, 1, 2]));
    }

    #[test]
    fn stack_concatenates_rows() {
        let a = dense(1, 2, &[1, 2]);
        let b = dense(2, 2, &[3, 4, 5, 6]);
        let s = a.stack(&b).unwrap();
        assert_eq!(s.rows(), 3);
        assert_eq!(s.get(2, 1), Some(&Rat::from_int(6)));
    }

    fn arb_matrix() -> impl Strategy<Value = M> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |data| dense(r, c, &data))
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_bounded_by_shape(m in arb_matrix()) {
            prop_assert!(m.rank() <= m.rows().min(m.cols()));
        }

        #[test]
        fn homology_invariant_under_permutation(
            m in arb_matrix(),
            seed in 0u64..1000,
        ) {
            // permuting the middle-block basis permutes d_out columns and
            // d_in rows simultaneously; homology must not move
            let block = m.cols();
            let d_out = m.clone();
            let d_in = M::zero(block, 3);
            let mut perm: Vec<usize> = (0..block).collect();
            // cheap deterministic shuffle
            let mut s = seed;
            for i in (1..block).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s % (i as u64 + 1)) as usize);
            }
            let permuted = M::from_triplets(
                d_out.rows(),
                block,
                d_out.iter().map(|(r, c, v)| (r, perm[c], v.clone())),
            ).unwrap();
            prop_assert_eq!(
                homology_dim(&d_out, &d_in).unwrap(),
                homology_dim(&permuted, &d_in).unwrap()
            );
        }
    }
}
