//! Construction of the proof objects behind the Case B argument and a
//! numerical audit of every identity the selection algorithm leans on.
//!
//! For a frame with rows r_i = (x_i, y_i) the objects are
//!
//! * w_i = (x_i^2 - y_i^2, 2 x_i y_i), the squared-row vector,
//! * z_i = |r_i|^2 - 2/n, the centered squared row norm,
//! * G = W W^T - z z^T with G_ij = (w_i, w_j) - z_i z_j,
//! * M = G + (2/n^2) E with E the all-ones matrix.
//!
//! G annihilates the all-ones vector, has trace 4/n and at most two positive
//! eigenvalues; M has eigenvalue 2/n on the all-ones vector. Together these
//! force a nonpositive off-diagonal M_ij whenever every row norm exceeds
//! 1/sqrt(n), which is exactly what the Case B pair search exploits. The
//! audit re-measures each of those facts on concrete data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frames::{OrthonormalFrame, RowPair};

/// A margin at most this large certifies a Case B pair. The extremal family
/// attains margin 0 exactly, so certification must tolerate rounding around
/// zero.
pub const CASE_B_MARGIN_TOL: f64 = 1e-12;

/// Slack on the Case B premise `|r_i|^2 > 1/n`.
pub const CASE_B_PREMISE_SLACK: f64 = 1e-12;

const POLARIZATION_SAMPLES: usize = 100;
const POLARIZATION_SEED: u64 = 0x706f_6c61;
const JACOBI_MAX_SWEEPS: usize = 50;
const JACOBI_OFF_TOL: f64 = 1e-15;
const SPAN_DROP_TOL_REL: f64 = 1e-14;

/// w_i of a row: (x^2 - y^2, 2xy). Its norm is the squared row norm squared,
/// and the w's of an orthonormal frame sum to zero.
pub fn w_vector(row: [f64; 2]) -> [f64; 2] {
    let [x, y] = row;
    [x * x - y * y, 2.0 * x * y]
}

/// z_i of a row: its squared norm centered by the mean 2/n.
pub fn z_value(norm_sq: f64, n: usize) -> f64 {
    norm_sq - 2.0 / n as f64
}

/// The w vectors, z vector and matrices G, M of a frame.
#[derive(Clone, Debug)]
pub struct ProofTensors {
    n: usize,
    pub w: Vec<[f64; 2]>,
    pub z: Vec<f64>,
    g: Vec<f64>,
    m: Vec<f64>,
}

impl ProofTensors {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self, i: usize, j: usize) -> f64 {
        self.g[i * self.n + j]
    }

    pub fn m(&self, i: usize, j: usize) -> f64 {
        self.m[i * self.n + j]
    }
}

/// Assembles the proof tensors entry-wise. G and M are materialized as dense
/// n x n matrices (symmetry is exact because each unordered pair is computed
/// once), so this is O(n^2) space; the pair scan below avoids that cost where
/// only margins are needed.
pub fn build_tensors(frame: &OrthonormalFrame) -> ProofTensors {
    let n = frame.n();
    let w: Vec<[f64; 2]> = frame.rows().iter().map(|&r| w_vector(r)).collect();
    let z: Vec<f64> = frame
        .rows()
        .iter()
        .map(|&[x, y]| z_value(x * x + y * y, n))
        .collect();
    let shift = 2.0 / (n as f64 * n as f64);
    let mut g = vec![0.0; n * n];
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let gij = w[i][0] * w[j][0] + w[i][1] * w[j][1] - z[i] * z[j];
            g[i * n + j] = gij;
            g[j * n + i] = gij;
            m[i * n + j] = gij + shift;
            m[j * n + i] = gij + shift;
        }
    }
    ProofTensors { n, w, z, g, m }
}

/// Scans all off-diagonal pairs for the minimum of
/// M_ij = (w_i, w_j) - z_i z_j + 2/n^2, in O(n) memory.
/// Ties break to the lexicographically least pair.
pub fn min_offdiag_margin(frame: &OrthonormalFrame) -> (RowPair, f64) {
    min_offdiag_margin_rows(frame.rows())
}

/// Same scan on bare rows; the selection recursion calls this on
/// intermediate levels that are not wrapped in a frame.
pub fn min_offdiag_margin_rows(rows: &[[f64; 2]]) -> (RowPair, f64) {
    let n = rows.len();
    let w: Vec<[f64; 2]> = rows.iter().map(|&r| w_vector(r)).collect();
    let z: Vec<f64> = rows
        .iter()
        .map(|&[x, y]| z_value(x * x + y * y, n))
        .collect();
    let shift = 2.0 / (n as f64 * n as f64);
    let mut best = (0usize, 1usize);
    let mut best_margin = f64::INFINITY;
    for i in 0..n {
        let wi = w[i];
        let zi = z[i];
        for j in (i + 1)..n {
            let margin = wi[0] * w[j][0] + wi[1] * w[j][1] - zi * z[j] + shift;
            if margin < best_margin {
                best_margin = margin;
                best = (i, j);
            }
        }
    }
    (
        RowPair::new(best.0, best.1).expect("scan order keeps i < j"),
        best_margin,
    )
}

/// Case B certification of a pair through its 2x2 Gram matrix.
///
/// With G~ = A~ A~^T the Gram matrix of the pair's submatrix, the
/// characteristic polynomial P(lambda) = (|r_i|^2 - lambda)(|r_j|^2 -
/// lambda) - (r_i, r_j)^2 is evaluated at lambda = 1/n. P(1/n) >= 0 keeps
/// 1/n outside the open eigenvalue interval, and trace > 2/n puts the
/// larger eigenvalue above 1/n; together both eigenvalues are at least
/// 1/n, i.e. sigma2 >= 1/sqrt(n). A nonpositive margin M_ij is algebraically
/// the same inequality, so this is a second arithmetic route to the same
/// certification.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GramCertificate {
    pub p_at_inv_n: f64,
    pub trace: f64,
    pub certified: bool,
}

/// Slack for the Gram-polynomial route; the extremal family sits at
/// P(1/n) = 0 exactly.
pub const GRAM_POLY_SLACK: f64 = 1e-12;

/// Evaluates the Gram characteristic-polynomial certificate for a pair.
pub fn gram_certificate(frame: &OrthonormalFrame, pair: RowPair) -> Result<GramCertificate> {
    let ni = frame.row_norm_sq(pair.i())?;
    let nj = frame.row_norm_sq(pair.j())?;
    let [xi, yi] = frame.rows()[pair.i()];
    let [xj, yj] = frame.rows()[pair.j()];
    let dot = xi * xj + yi * yj;
    let inv_n = 1.0 / frame.n() as f64;
    let p_at_inv_n = (ni - inv_n) * (nj - inv_n) - dot * dot;
    let trace = ni + nj;
    let certified = p_at_inv_n >= -GRAM_POLY_SLACK && trace > 2.0 * inv_n - GRAM_POLY_SLACK;
    Ok(GramCertificate {
        p_at_inv_n,
        trace,
        certified,
    })
}

/// The three largest eigenvalues of G and its trace.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpectralSummary {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub trace_g: f64,
}

/// Eigenvalues of G through its low-rank structure: G = W W^T - z z^T acts
/// inside span[W | z], so an orthonormal basis Q of that (at most three
/// dimensional) span reduces the problem to the k x k symmetric matrix
/// (Q^T W)(Q^T W)^T - (Q^T z)(Q^T z)^T, solved by Jacobi sweeps. The rest of
/// the spectrum is exactly zero, which is merged in before taking the top
/// three.
pub fn spectral_summary(t: &ProofTensors) -> SpectralSummary {
    let n = t.n;
    let wx: Vec<f64> = t.w.iter().map(|w| w[0]).collect();
    let wy: Vec<f64> = t.w.iter().map(|w| w[1]).collect();
    let basis = pivoted_span_basis([wx, wy, t.z.clone()]);
    let k = basis.len();

    // P = Q^T W (k x 2), q = Q^T z
    let mut b = [[0.0; 3]; 3];
    let mut p = [[0.0; 2]; 3];
    let mut q = [0.0; 3];
    for (a, col) in basis.iter().enumerate() {
        for ((ci, wi), zi) in col.iter().zip(&t.w).zip(&t.z) {
            p[a][0] += ci * wi[0];
            p[a][1] += ci * wi[1];
            q[a] += ci * zi;
        }
    }
    for a in 0..k {
        for c in 0..k {
            b[a][c] = p[a][0] * p[c][0] + p[a][1] * p[c][1] - q[a] * q[c];
        }
    }

    let mut eigs = jacobi_eigenvalues(b, k);
    let zero_multiplicity = (n - k).min(3);
    eigs.extend(std::iter::repeat_n(0.0, zero_multiplicity));
    eigs.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    while eigs.len() < 3 {
        eigs.push(0.0);
    }

    let trace_g = t
        .w
        .iter()
        .zip(&t.z)
        .map(|(w, z)| w[0] * w[0] + w[1] * w[1] - z * z)
        .sum();
    SpectralSummary {
        lambda1: eigs[0],
        lambda2: eigs[1],
        lambda3: eigs[2],
        trace_g,
    }
}

/// Modified Gram-Schmidt with column pivoting over up to three n-vectors.
/// Columns whose residual norm falls under a relative drop tolerance are
/// discarded; rank deficiency is normal (the extremal family has z parallel
/// to a column of W).
fn pivoted_span_basis(cols: [Vec<f64>; 3]) -> Vec<Vec<f64>> {
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let scale = cols.iter().map(|c| norm(c)).fold(0.0f64, f64::max);
    let drop_tol = SPAN_DROP_TOL_REL * scale.max(f64::MIN_POSITIVE);

    let mut remaining: Vec<Vec<f64>> = cols.into_iter().collect();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(3);
    while !remaining.is_empty() && basis.len() < 3 {
        let (pick, best_norm) = remaining
            .iter()
            .enumerate()
            .map(|(i, c)| (i, norm(c)))
            .max_by(|a, b| a.1.partial_cmp(&b.1).expect("finite norms"))
            .expect("nonempty");
        if best_norm <= drop_tol {
            break;
        }
        let mut q = remaining.swap_remove(pick);
        for x in q.iter_mut() {
            *x /= best_norm;
        }
        for col in remaining.iter_mut() {
            // two orthogonalization passes keep the basis clean
            for _ in 0..2 {
                let dot: f64 = q.iter().zip(col.iter()).map(|(a, b)| a * b).sum();
                for (c, qv) in col.iter_mut().zip(q.iter()) {
                    *c -= dot * qv;
                }
            }
        }
        basis.push(q);
    }
    basis
}

/// Cyclic Jacobi on the leading k x k block of a symmetric 3x3 buffer.
#[allow(clippy::needless_range_loop)] // index pairs walk rows and columns symmetrically
fn jacobi_eigenvalues(mut b: [[f64; 3]; 3], k: usize) -> Vec<f64> {
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        let mut frob = 0.0;
        for p in 0..k {
            for q in 0..k {
                frob += b[p][q] * b[p][q];
                if p < q {
                    off += 2.0 * b[p][q] * b[p][q];
                }
            }
        }
        if off.sqrt() <= JACOBI_OFF_TOL * frob.sqrt().max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..k {
            for q in (p + 1)..k {
                let apq = b[p][q];
                if apq == 0.0 {
                    continue;
                }
                let tau = (b[q][q] - b[p][p]) / (2.0 * apq);
                let tan = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let cos = 1.0 / (1.0 + tan * tan).sqrt();
                let sin = tan * cos;
                for r in 0..k {
                    let brp = b[r][p];
                    let brq = b[r][q];
                    b[r][p] = cos * brp - sin * brq;
                    b[r][q] = sin * brp + cos * brq;
                }
                for r in 0..k {
                    let bpr = b[p][r];
                    let bqr = b[q][r];
                    b[p][r] = cos * bpr - sin * bqr;
                    b[q][r] = sin * bpr + cos * bqr;
                }
            }
        }
    }
    (0..k).map(|i| b[i][i]).collect()
}

/// One named audit check: measured residual against its tolerance.
#[derive(Clone, Debug, Serialize)]
pub struct AuditCheck {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl AuditCheck {
    fn new(name: &'static str, residual: f64, tolerance: f64) -> Self {
        let pass = residual <= tolerance;
        Self {
            name,
            residual,
            tolerance,
            pass,
        }
    }
}

/// Results of [`audit_invariants`]: one entry per identity, overall pass.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub checks: Vec<AuditCheck>,
    pub pass: bool,
}

impl AuditReport {
    pub fn check(&self, name: &str) -> Option<&AuditCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Runs the full identity chain on a frame and reports residuals. Failures
/// are report entries, never errors; sum-based tolerances scale with n
/// because rounding accumulates with summation length.
pub fn audit_invariants(frame: &OrthonormalFrame) -> AuditReport {
    let n = frame.n();
    let nf = n as f64;
    let t = build_tensors(frame);
    let spectral = spectral_summary(&t);
    let norms_sq: Vec<f64> = frame.rows().iter().map(|&[x, y]| x * x + y * y).collect();

    let mut checks = Vec::with_capacity(11);

    let sum_norms: f64 = norms_sq.iter().sum();
    checks.push(AuditCheck::new(
        "sum_row_norms_sq_is_two",
        (sum_norms - 2.0).abs(),
        1e-12 * nf,
    ));

    let w_norm_residual = t
        .w
        .iter()
        .zip(&norms_sq)
        .map(|(w, &ns)| ((w[0] * w[0] + w[1] * w[1]) - ns * ns).abs())
        .fold(0.0f64, f64::max);
    checks.push(AuditCheck::new(
        "w_norm_equals_row_norm_fourth",
        w_norm_residual,
        1e-13,
    ));

    let w_sum = t.w.iter().fold([0.0f64; 2], |acc, w| {
        [acc[0] + w[0], acc[1] + w[1]]
    });
    checks.push(AuditCheck::new(
        "w_sum_zero",
        w_sum[0].hypot(w_sum[1]),
        1e-12,
    ));

    let z_sum: f64 = t.z.iter().sum();
    checks.push(AuditCheck::new("z_sum_zero", z_sum.abs(), 1e-12));

    let g_ones_residual = (0..n)
        .map(|i| (0..n).map(|j| t.g(i, j)).sum::<f64>().abs())
        .fold(0.0f64, f64::max);
    checks.push(AuditCheck::new(
        "g_annihilates_ones",
        g_ones_residual,
        1e-11 * nf,
    ));

    let m_ones_residual = (0..n)
        .map(|i| ((0..n).map(|j| t.m(i, j)).sum::<f64>() - 2.0 / nf).abs())
        .fold(0.0f64, f64::max);
    checks.push(AuditCheck::new(
        "m_ones_eigenpair",
        m_ones_residual,
        1e-11 * nf,
    ));

    checks.push(AuditCheck::new(
        "trace_g_is_four_over_n",
        (spectral.trace_g - 4.0 / nf).abs(),
        1e-12 * nf,
    ));

    checks.push(AuditCheck::new(
        "lambda3_nonpositive",
        spectral.lambda3.max(0.0),
        1e-12,
    ));

    checks.push(AuditCheck::new(
        "lambda1_at_least_two_over_n",
        (2.0 / nf - spectral.lambda1).max(0.0),
        1e-12,
    ));

    let mut rng = ChaCha12Rng::seed_from_u64(POLARIZATION_SEED);
    let mut polarization_residual = 0.0f64;
    for _ in 0..POLARIZATION_SAMPLES {
        let (i, j) = loop {
            let i = rng.random_range(0..n);
            let j = rng.random_range(0..n);
            if i != j {
                break (i, j);
            }
        };
        let [xi, yi] = frame.rows()[i];
        let [xj, yj] = frame.rows()[j];
        let dot = xi * xj + yi * yj;
        let wdot = t.w[i][0] * t.w[j][0] + t.w[i][1] * t.w[j][1];
        let residual = (dot * dot - 0.5 * norms_sq[i] * norms_sq[j] - 0.5 * wdot).abs();
        polarization_residual = polarization_residual.max(residual);
    }
    checks.push(AuditCheck::new(
        "polarization_identity",
        polarization_residual,
        1e-13,
    ));

    let m_diag_residual = (0..n)
        .map(|i| (t.m(i, i) - ((4.0 / nf) * norms_sq[i] - 2.0 / (nf * nf))).abs())
        .fold(0.0f64, f64::max);
    checks.push(AuditCheck::new(
        "m_diagonal_formula",
        m_diag_residual,
        1e-13,
    ));

    let pass = checks.iter().all(|c| c.pass);
    AuditReport { checks, pass }
}

/// Whether some off-diagonal M_ij is (numerically) nonpositive, under the
/// Case B premise that every squared row norm exceeds 1/n. The premise is
/// enforced; the conclusion is the tested consequence of the
/// Perron-Frobenius contradiction.
pub fn case_b_existence_check(frame: &OrthonormalFrame) -> Result<bool> {
    let n = frame.n();
    let threshold = 1.0 / n as f64 - CASE_B_PREMISE_SLACK;
    for i in 0..n {
        let ns = frame.row_norm_sq(i)?;
        if ns <= threshold {
            return Err(Error::WrongCase {
                detail: format!(
                    "row {i} has squared norm {ns}, at or below 1/n = {}; not a Case B frame",
                    1.0 / n as f64
                ),
            });
        }
    }
    Ok(min_offdiag_margin(frame).1 <= CASE_B_MARGIN_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::OrthonormalFrame;
    use crate::generators::{random_frame, small_row_frame, tightness_frame};
    use approx::assert_abs_diff_eq;

    fn identity_frame() -> OrthonormalFrame {
        OrthonormalFrame::validate(vec![[1.0, 0.0], [0.0, 1.0]]).unwrap()
    }

    #[test]
    fn identity_frame_tensors() {
        let t = build_tensors(&identity_frame());
        assert_eq!(t.w, vec![[1.0, 0.0], [-1.0, 0.0]]);
        assert_eq!(t.z, vec![0.0, 0.0]);
        assert_eq!(
            [t.g(0, 0), t.g(0, 1), t.g(1, 0), t.g(1, 1)],
            [1.0, -1.0, -1.0, 1.0]
        );
    }

    #[test]
    fn identity_frame_spectrum() {
        let t = build_tensors(&identity_frame());
        let s = spectral_summary(&t);
        assert_abs_diff_eq!(s.lambda1, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.lambda2, 0.0, epsilon = 1e-14);
        assert_eq!(s.lambda3, 0.0);
        assert_abs_diff_eq!(s.trace_g, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn tightness_tensors_match_hand_arithmetic() {
        let t = build_tensors(&tightness_frame(4).unwrap());
        // w_X = (a^2, 0), w_Y = (b^2 - c^2, 2bc) = (-3/8, 1/2), w_Z mirrors it.
        assert_abs_diff_eq!(t.w[0][0], 0.375, epsilon = 1e-15);
        assert_abs_diff_eq!(t.w[0][1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.w[2][0], -0.375, epsilon = 1e-15);
        assert_abs_diff_eq!(t.w[2][1], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(t.w[3][1], -0.5, epsilon = 1e-15);
        for (i, expected) in [-0.125, -0.125, 0.125, 0.125].into_iter().enumerate() {
            assert_abs_diff_eq!(t.z[i], expected, epsilon = 1e-15);
        }
        // M entries: mixed pairs sit at 0, the (X, X') pair at 1/4.
        assert_abs_diff_eq!(t.m(0, 1), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(t.m(0, 2), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.m(2, 3), 0.0, epsilon = 1e-15);
        let s = spectral_summary(&t);
        assert_abs_diff_eq!(s.trace_g, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn w_sum_vanishes_on_random_frames() {
        for seed in 0..5u64 {
            let t = build_tensors(&random_frame(40, seed));
            let sum = t.w.iter().fold([0.0f64; 2], |acc, w| {
                [acc[0] + w[0], acc[1] + w[1]]
            });
            assert!(sum[0].hypot(sum[1]) <= 1e-12);
        }
    }

    #[test]
    fn tightness_margin_is_zero_and_skips_duplicate_rows() {
        let (pair, margin) = min_offdiag_margin(&tightness_frame(4).unwrap());
        assert!(margin.abs() <= 1e-13);
        assert!(!(pair.i() == 0 && pair.j() == 1), "an (X, X') pair has margin 1/4");
    }

    #[test]
    fn audit_passes_on_identity_and_tightness() {
        for frame in [identity_frame(), tightness_frame(4).unwrap()] {
            let report = audit_invariants(&frame);
            assert!(report.pass, "failed checks: {:?}", report
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| c.name)
                .collect::<Vec<_>>());
        }
    }

    #[test]
    fn audit_flags_a_perturbed_frame() {
        let mut rows = identity_frame().rows().to_vec();
        rows[0][0] += 1e-3;
        let report = audit_invariants(&OrthonormalFrame::from_rows_unchecked(rows));
        assert!(!report.pass);
        for name in [
            "sum_row_norms_sq_is_two",
            "w_sum_zero",
            "z_sum_zero",
            "g_annihilates_ones",
            "m_ones_eigenpair",
        ] {
            let check = report.check(name).unwrap();
            assert!(!check.pass, "{name} unexpectedly passed");
            assert!(check.residual > 1e-4, "{name} residual {:.3e}", check.residual);
        }
        // Purely algebraic identities hold regardless of orthonormality.
        assert!(report.check("w_norm_equals_row_norm_fourth").unwrap().pass);
        assert!(report.check("polarization_identity").unwrap().pass);
    }

    #[test]
    fn spectral_summary_matches_dense_eigensolver() {
        for &(n, seed) in &[(2usize, 1u64), (3, 2), (5, 3), (20, 4), (50, 5)] {
            let frame = random_frame(n, seed);
            let t = build_tensors(&frame);
            let s = spectral_summary(&t);

            let dense = nalgebra::DMatrix::from_fn(n, n, |i, j| t.g(i, j));
            let mut eigs: Vec<f64> = dense.symmetric_eigenvalues().iter().copied().collect();
            eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());

            let got = [s.lambda1, s.lambda2, s.lambda3];
            for (idx, expected) in eigs.iter().take(3).enumerate() {
                assert!(
                    (got[idx] - expected).abs() <= 1e-11,
                    "n = {n}, lambda{} = {} vs dense {}",
                    idx + 1,
                    got[idx],
                    expected
                );
            }
        }
    }

    #[test]
    fn gram_certificate_certifies_minimal_margin_pairs() {
        let frame = tightness_frame(4).unwrap();
        let (pair, margin) = min_offdiag_margin(&frame);
        assert!(margin <= CASE_B_MARGIN_TOL);
        let cert = gram_certificate(&frame, pair).unwrap();
        assert!(cert.certified);
        // the extremal family attains P(1/n) = 0
        assert!(cert.p_at_inv_n.abs() <= 1e-13);
        assert!(cert.trace > 0.5);

        // a duplicated-X pair is rank 1 and must not certify
        let xx = gram_certificate(&frame, RowPair::new(0, 1).unwrap()).unwrap();
        assert!(!xx.certified);
    }

    #[test]
    fn m_diagonal_is_positive_under_the_case_b_premise() {
        for n in [4usize, 9, 40] {
            let frame = tightness_frame(n).unwrap();
            let t = build_tensors(&frame);
            for i in 0..n {
                assert!(t.m(i, i) > 0.0, "n = {n}, i = {i}");
            }
        }
    }

    #[test]
    fn case_b_existence_on_tightness_and_wrong_case() {
        assert!(case_b_existence_check(&tightness_frame(4).unwrap()).unwrap());
        let case_a = small_row_frame(5, 0.1, 3).unwrap();
        assert!(matches!(
            case_b_existence_check(&case_a),
            Err(Error::WrongCase { .. })
        ));
    }
}
