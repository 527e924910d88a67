//! The validated orthonormal-frame type and row-level accessors.
//!
//! An [`OrthonormalFrame`] is an n x 2 matrix whose two columns are
//! orthonormal. Frames are immutable after construction; every mutation
//! (rotation, row deletion, rescaling) produces a new frame through
//! validation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::Mat2;

/// Orthonormality tolerance: residuals of the column Gram sums may drift by
/// rounding proportional to the summation length, hence the sqrt(n) scaling.
pub fn tol_ortho(n: usize) -> f64 {
    1e-10 * (n as f64).sqrt()
}

/// The three column Gram residuals of a candidate frame:
/// |sum x_i^2 - 1|, |sum y_i^2 - 1| and |sum x_i y_i|.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrthoResiduals {
    pub col_x: f64,
    pub col_y: f64,
    pub cross: f64,
}

impl OrthoResiduals {
    pub(crate) fn of(rows: &[[f64; 2]]) -> Self {
        let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
        for &[x, y] in rows {
            sxx += x * x;
            syy += y * y;
            sxy += x * y;
        }
        Self {
            col_x: (sxx - 1.0).abs(),
            col_y: (syy - 1.0).abs(),
            cross: sxy.abs(),
        }
    }

    pub fn max(&self) -> f64 {
        self.col_x.max(self.col_y).max(self.cross)
    }
}

/// An ordered pair of distinct row indices, 0-based, with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct RowPair {
    i: usize,
    j: usize,
}

impl RowPair {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i < j {
            Ok(Self { i, j })
        } else {
            Err(Error::InvalidRowPair { i, j })
        }
    }

    pub fn i(self) -> usize {
        self.i
    }

    pub fn j(self) -> usize {
        self.j
    }
}

impl TryFrom<[usize; 2]> for RowPair {
    type Error = Error;

    fn try_from(v: [usize; 2]) -> Result<Self> {
        Self::new(v[0], v[1])
    }
}

impl From<RowPair> for [usize; 2] {
    fn from(p: RowPair) -> Self {
        [p.i, p.j]
    }
}

impl std::fmt::Display for RowPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// A validated n x 2 matrix with orthonormal columns.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthonormalFrame {
    rows: Vec<[f64; 2]>,
    residuals: OrthoResiduals,
}

impl OrthonormalFrame {
    /// Validates the raw rows against [`tol_ortho`] for their row count.
    pub fn validate(rows: Vec<[f64; 2]>) -> Result<Self> {
        let tol = tol_ortho(rows.len());
        Self::validate_with_tol(rows, tol)
    }

    /// Validates with an explicit tolerance on the Gram residuals.
    pub fn validate_with_tol(rows: Vec<[f64; 2]>, tol: f64) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::TooFewRows { n: rows.len() });
        }
        for (i, &[x, y]) in rows.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFiniteEntry { row: i, col: 0 });
            }
            if !y.is_finite() {
                return Err(Error::NonFiniteEntry { row: i, col: 1 });
            }
        }
        let residuals = OrthoResiduals::of(&rows);
        if residuals.max() > tol {
            return Err(Error::NotOrthonormal {
                col_x: residuals.col_x,
                col_y: residuals.col_y,
                cross: residuals.cross,
                tol,
            });
        }
        Ok(Self { rows, residuals })
    }

    /// Repairs marginally drifted input by two-column Gram-Schmidt
    /// (normalize column one, orthogonalize column two against it,
    /// normalize), then validates strictly.
    pub fn reorthonormalized(mut rows: Vec<[f64; 2]>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::TooFewRows { n: rows.len() });
        }
        gram_schmidt_columns(&mut rows)?;
        Self::validate(rows)
    }

    /// Wraps rows without enforcing orthonormality. Residuals are still
    /// recorded. Meant for diagnostics and for exercising the audit on
    /// deliberately broken input; everything downstream that certifies a
    /// bound assumes a validated frame.
    pub fn from_rows_unchecked(rows: Vec<[f64; 2]>) -> Self {
        let residuals = OrthoResiduals::of(&rows);
        Self { rows, residuals }
    }

    pub(crate) fn from_parts(rows: Vec<[f64; 2]>, residuals: OrthoResiduals) -> Self {
        Self { rows, residuals }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[[f64; 2]] {
        &self.rows
    }

    /// Residuals measured at construction time.
    pub fn residuals(&self) -> OrthoResiduals {
        self.residuals
    }

    /// Squared Euclidean norm of row `i`.
    pub fn row_norm_sq(&self, i: usize) -> Result<f64> {
        let [x, y] = *self
            .rows
            .get(i)
            .ok_or(Error::RowOutOfRange { index: i, n: self.n() })?;
        Ok(x * x + y * y)
    }

    /// The 2x2 submatrix formed by rows `pair.i()` and `pair.j()`.
    pub fn submatrix(&self, pair: RowPair) -> Result<Mat2> {
        if pair.j() >= self.n() {
            return Err(Error::RowOutOfRange {
                index: pair.j(),
                n: self.n(),
            });
        }
        Ok(Mat2::from_rows(self.rows[pair.i()], self.rows[pair.j()]))
    }
}

/// In-place two-column Gram-Schmidt on the rows' column vectors.
pub(crate) fn gram_schmidt_columns(rows: &mut [[f64; 2]]) -> Result<()> {
    let nx = rows.iter().map(|r| r[0] * r[0]).sum::<f64>().sqrt();
    if nx <= 1e-300 {
        return Err(Error::Domain("degenerate first column".into()));
    }
    for r in rows.iter_mut() {
        r[0] /= nx;
    }
    let dot = rows.iter().map(|r| r[0] * r[1]).sum::<f64>();
    for r in rows.iter_mut() {
        r[1] -= dot * r[0];
    }
    let ny = rows.iter().map(|r| r[1] * r[1]).sum::<f64>().sqrt();
    if ny <= 1e-300 {
        return Err(Error::Domain("degenerate second column".into()));
    }
    for r in rows.iter_mut() {
        r[1] /= ny;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::tightness_frame;

    #[test]
    fn identity_frame_validates_with_zero_residuals() {
        let f = OrthonormalFrame::validate(vec![[1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_eq!(f.residuals().max(), 0.0);
        assert_eq!(f.n(), 2);
    }

    #[test]
    fn tightness_rows_validate() {
        let f = tightness_frame(4).unwrap();
        assert!(f.residuals().max() <= 1e-15);
    }

    #[test]
    fn duplicated_unit_row_is_rejected() {
        let err = OrthonormalFrame::validate(vec![[1.0, 0.0], [1.0, 0.0]]).unwrap_err();
        match err {
            Error::NotOrthonormal { col_x, .. } => assert!((col_x - 1.0).abs() < 1e-15),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn single_row_is_a_size_error() {
        assert!(matches!(
            OrthonormalFrame::validate(vec![[1.0, 0.0]]),
            Err(Error::TooFewRows { n: 1 })
        ));
    }

    #[test]
    fn row_norm_sq_matches_hand_values() {
        let f = OrthonormalFrame::validate(vec![[1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_eq!(f.row_norm_sq(0).unwrap(), 1.0);

        let t = tightness_frame(4).unwrap();
        assert!((t.row_norm_sq(0).unwrap() - 3.0 / 8.0).abs() <= 1e-15);
        assert!((t.row_norm_sq(2).unwrap() - 5.0 / 8.0).abs() <= 1e-15);
    }

    #[test]
    fn row_norms_sum_to_two() {
        let t = tightness_frame(7).unwrap();
        let total: f64 = (0..7).map(|i| t.row_norm_sq(i).unwrap()).sum();
        assert!((total - 2.0).abs() <= 2.0 * tol_ortho(7));
    }

    #[test]
    fn submatrix_picks_the_named_rows() {
        let t = tightness_frame(4).unwrap();
        let m = t.submatrix(RowPair::new(2, 3).unwrap()).unwrap();
        let b = (1.0f64 / 8.0).sqrt();
        let c = (1.0f64 / 2.0).sqrt();
        assert_eq!(m, Mat2::new(b, c, b, -c));
    }

    #[test]
    fn degenerate_pair_is_rejected_by_the_type() {
        assert!(RowPair::new(1, 1).is_err());
        assert!(RowPair::new(2, 1).is_err());
    }

    #[test]
    fn out_of_range_accesses_error() {
        let f = OrthonormalFrame::validate(vec![[1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert!(f.row_norm_sq(2).is_err());
        assert!(f.submatrix(RowPair::new(0, 5).unwrap()).is_err());
    }

    #[test]
    fn reorthonormalization_repairs_marginal_drift() {
        let mut rows = tightness_frame(6).unwrap().rows().to_vec();
        for r in rows.iter_mut() {
            r[0] *= 1.0 + 3e-9; // residual ~6e-9, beyond tol_ortho(6)
        }
        assert!(OrthonormalFrame::validate(rows.clone()).is_err());
        let repaired = OrthonormalFrame::reorthonormalized(rows).unwrap();
        assert!(repaired.residuals().max() <= 1e-14);
    }
}
