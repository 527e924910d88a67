//! Small dense 2x2 kernels: singular values, Givens rotations, and the
//! smallest-singular-value submultiplicativity check.
//!
//! Everything here is a pure function of its inputs and safe to call
//! concurrently.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on |c^2 + s^2 - 1| for a valid rotation.
pub const ROTATION_UNIT_TOL: f64 = 1e-14;

/// Slack allowed when checking sigma2(YZ) >= sigma2(Y) * sigma2(Z).
pub const SUBMULTIPLICATIVITY_SLACK: f64 = 1e-12;

/// A dense 2x2 real matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Mat2 {
    pub fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn identity() -> Self {
        Self::new(1.0, 0.0, 0.0, 1.0)
    }

    /// Builds the matrix whose rows are `r0` and `r1`.
    pub fn from_rows(r0: [f64; 2], r1: [f64; 2]) -> Self {
        Self::new(r0[0], r0[1], r1[0], r1[1])
    }

    pub fn det(self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    /// Squared Frobenius norm, i.e. the sum of squared entries.
    pub fn frob_sq(self) -> f64 {
        self.a11 * self.a11 + self.a12 * self.a12 + self.a21 * self.a21 + self.a22 * self.a22
    }

    pub fn is_finite(self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a21.is_finite() && self.a22.is_finite()
    }

    fn first_non_finite(self) -> Option<(usize, usize)> {
        [
            (self.a11, (0, 0)),
            (self.a12, (0, 1)),
            (self.a21, (1, 0)),
            (self.a22, (1, 1)),
        ]
        .into_iter()
        .find(|(v, _)| !v.is_finite())
        .map(|(_, at)| at)
    }
}

impl std::ops::Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * rhs.a11 + self.a12 * rhs.a21,
            self.a11 * rhs.a12 + self.a12 * rhs.a22,
            self.a21 * rhs.a11 + self.a22 * rhs.a21,
            self.a21 * rhs.a12 + self.a22 * rhs.a22,
        )
    }
}

/// A plane rotation stored as its cosine and sine.
///
/// As a matrix it is `[[c, -s], [s, c]]`; a row vector `(x, y)` is rotated by
/// right multiplication, `(x, y) -> (x c + y s, y c - x s)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RotationRaw")]
pub struct Rotation2 {
    c: f64,
    s: f64,
}

#[derive(Deserialize)]
struct RotationRaw {
    c: f64,
    s: f64,
}

impl TryFrom<RotationRaw> for Rotation2 {
    type Error = Error;

    fn try_from(raw: RotationRaw) -> Result<Self> {
        Rotation2::new(raw.c, raw.s)
    }
}

impl Rotation2 {
    pub fn identity() -> Self {
        Self { c: 1.0, s: 0.0 }
    }

    /// Checks |c^2 + s^2 - 1| <= [`ROTATION_UNIT_TOL`].
    pub fn new(c: f64, s: f64) -> Result<Self> {
        if !(c.is_finite() && s.is_finite()) || (c * c + s * s - 1.0).abs() > ROTATION_UNIT_TOL {
            return Err(Error::NotARotation { c, s });
        }
        Ok(Self { c, s })
    }

    pub fn cos(self) -> f64 {
        self.c
    }

    pub fn sin(self) -> f64 {
        self.s
    }

    /// Right-multiplies the row `(x, y)` by the rotation matrix.
    pub fn apply_to_row(self, x: f64, y: f64) -> (f64, f64) {
        (x * self.c + y * self.s, y * self.c - x * self.s)
    }

    pub fn as_mat2(self) -> Mat2 {
        Mat2::new(self.c, -self.s, self.s, self.c)
    }
}

/// The two singular values of a 2x2 matrix, in descending order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingularPair {
    pub sigma1: f64,
    pub sigma2: f64,
}

/// Singular values via the Frobenius/determinant closed form.
///
/// With `T` the sum of squared entries and `D` the determinant,
/// `sigma1 = sqrt((T + sqrt(T^2 - 4 D^2)) / 2)` and `sigma2 = |D| / sigma1`.
/// The quotient form avoids the cancellation the subtractive root suffers
/// when sigma2 << sigma1; the discriminant is clamped at zero because
/// near-equal singular values can push it a few ulps negative.
pub fn singular_values_2x2(m: Mat2) -> Result<SingularPair> {
    if let Some((row, col)) = m.first_non_finite() {
        return Err(Error::NonFiniteEntry { row, col });
    }
    let (sigma1, sigma2) = sigma_pair_unchecked(m);
    Ok(SingularPair { sigma1, sigma2 })
}

/// Same closed form without the finiteness check, for hot loops over rows of
/// an already-validated frame.
pub(crate) fn sigma_pair_unchecked(m: Mat2) -> (f64, f64) {
    let t = m.frob_sq();
    let d = m.det();
    let disc = (t * t - 4.0 * d * d).max(0.0);
    let sigma1 = (0.5 * (t + disc.sqrt())).sqrt();
    let sigma2 = if sigma1 > 0.0 { d.abs() / sigma1 } else { 0.0 };
    (sigma1, sigma2)
}

/// Smallest singular value only.
pub(crate) fn sigma2_unchecked(m: Mat2) -> f64 {
    sigma_pair_unchecked(m).1
}

/// Builds the rotation that zeroes the second component of `row`, i.e.
/// `(x, y) . P = (hypot(x, y), 0)`. A (numerically) zero row gets the
/// identity rotation so the caller's code path stays uniform.
pub fn givens_zeroing_second(x: f64, y: f64) -> Rotation2 {
    let r = x.hypot(y);
    if !r.is_finite() || r <= 1e-300 {
        return Rotation2::identity();
    }
    Rotation2 { c: x / r, s: y / r }
}

/// Whether sigma2(YZ) >= sigma2(Y) * sigma2(Z) - [`SUBMULTIPLICATIVITY_SLACK`].
///
/// The inequality is a theorem for real 2x2 matrices; this exists as a
/// property-test hook, not a runtime guard.
pub fn sigma2_submultiplicative_check(y: Mat2, z: Mat2) -> bool {
    let lhs = sigma2_unchecked(y * z);
    let rhs = sigma2_unchecked(y) * sigma2_unchecked(z);
    lhs >= rhs - SUBMULTIPLICATIVITY_SLACK
}
