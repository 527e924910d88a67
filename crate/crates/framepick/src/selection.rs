//! The proof-driven selection algorithm: pick a row pair of an orthonormal
//! frame whose 2x2 submatrix has smallest singular value at least 1/sqrt(n),
//! and record a replayable certificate of how the pair was found.
//!
//! The dichotomy at each level of the recursion:
//!
//! * Case A - some row has squared norm b^2 <= 1/n. Rotate so that row
//!   becomes (b, 0), delete it, rescale the first column by
//!   t = 1/sqrt(1 - b^2). The result is an orthonormal (n-1)-frame; a pair
//!   good for it is good for the original because right rotations preserve
//!   singular values and sigma2(YZ) >= sigma2(Y) sigma2(Z) turns the 1/t
//!   rescaling into exactly the slack that 1 - b^2 >= 1 - 1/n provides.
//! * Case B - every row is longer than 1/sqrt(n). Then some off-diagonal
//!   entry of M = G + (2/n^2) E must be nonpositive, and that pair's Gram
//!   matrix has both eigenvalues at least 1/n.
//!
//! The recursion bottoms out at n = 2, where any orthonormal frame is an
//! orthogonal matrix with sigma2 = 1. Selection always ends by recomputing
//! sigma2 of the chosen pair on the original frame and checking the bound;
//! the certificate is evidence, never the authority.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{gram_schmidt_columns, tol_ortho, OrthoResiduals, OrthonormalFrame, RowPair};
use crate::kernels::{
    givens_zeroing_second, sigma2_unchecked, sigma_pair_unchecked, Mat2, Rotation2,
};
use crate::proofaudit::{audit_invariants, min_offdiag_margin_rows, CASE_B_MARGIN_TOL};

/// Slack on the certified bound: sigma2 >= 1/sqrt(n) - BOUND_SLACK.
pub const BOUND_SLACK: f64 = 1e-10;

/// Slack on the Case A precondition b^2 <= 1/n for direct calls;
/// the selection loop itself dispatches on the exact comparison.
pub const CASE_A_PRE_SLACK: f64 = 1e-12;

/// Tolerance when re-deriving sigma2 from scratch in [`verify_selection`].
pub const SIGMA_RECHECK_TOL: f64 = 1e-12;

/// The certified lower bound 1/sqrt(n), computed as sqrt(1/n): square root
/// rounds correctly, so this is the tighter of the two evaluation orders.
pub fn sigma_bound(n: usize) -> f64 {
    (1.0 / n as f64).sqrt()
}

/// One Case A reduction: which original row was removed, with what squared
/// norm, rescaling and rotation, at which level of the recursion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseAStep {
    pub removed_row: usize,
    pub b_sq: f64,
    pub t_sq: f64,
    pub rotation: Rotation2,
    pub n_level: usize,
    pub reorthonormalized: bool,
}

/// How the recursion ended.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Terminal {
    /// Two rows left; any orthonormal 2-frame is orthogonal.
    BaseCase,
    /// A pair with M_ij <= tolerance was found at the final level.
    CaseBPair { margin: f64 },
    /// The Case B scan found no certified pair (impossible in exact
    /// arithmetic); the pair came from direct sigma2 maximization instead.
    FallbackScan,
}

/// The ordered trace of reductions ending in a terminal pair, expressed in
/// original-frame row indices throughout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub steps: Vec<CaseAStep>,
    pub terminal: Terminal,
    pub final_pair: RowPair,
    pub sigma2: f64,
    pub bound: f64,
}

/// A certified selection: the pair, its smallest singular value, and the
/// trace that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub pair: RowPair,
    pub sigma2: f64,
    pub certificate: Certificate,
}

fn min_norm_row(rows: &[[f64; 2]]) -> (usize, f64) {
    let mut best = (0usize, f64::INFINITY);
    for (i, &[x, y]) in rows.iter().enumerate() {
        let ns = x * x + y * y;
        if ns < best.1 {
            best = (i, ns);
        }
    }
    best
}

fn max_sigma2_pair(rows: &[[f64; 2]]) -> (usize, usize, f64) {
    let n = rows.len();
    let mut best = (0usize, 1usize, f64::NEG_INFINITY);
    for i in 0..n {
        for j in (i + 1)..n {
            let s = sigma2_unchecked(Mat2::from_rows(rows[i], rows[j]));
            if s > best.2 {
                best = (i, j, s);
            }
        }
    }
    best
}

/// Selects a certified row pair. Deterministic: identical input bits give an
/// identical [`Selection`].
pub fn select_pair(frame: &OrthonormalFrame) -> Result<Selection> {
    let n0 = frame.n();
    let bound = sigma_bound(n0);

    let mut current = frame.clone();
    // Row k of the current level is row original_index[k] of the input.
    let mut original_index: Vec<usize> = (0..n0).collect();
    let mut steps = Vec::new();

    let (terminal, local) = loop {
        let n = current.n();
        if n == 2 {
            break (Terminal::BaseCase, (0usize, 1usize));
        }
        let (i_min, min_sq) = min_norm_row(current.rows());
        if min_sq <= 1.0 / n as f64 {
            // Case A on the minimal-norm row: maximal 1 - b^2 slack.
            let (reduced, mut step) = case_a_reduce(&current, i_min)?;
            step.removed_row = original_index[i_min];
            steps.push(step);
            original_index.remove(i_min);
            current = reduced;
        } else {
            let (pair, margin) = case_b_pair(&current);
            if margin <= CASE_B_MARGIN_TOL {
                break (Terminal::CaseBPair { margin }, (pair.i(), pair.j()));
            }
            let (i, j, _) = max_sigma2_pair(current.rows());
            break (Terminal::FallbackScan, (i, j));
        }
    };

    let final_pair = RowPair::new(original_index[local.0], original_index[local.1])
        .expect("level-to-original index map is strictly increasing");
    let sigma2 = sigma2_unchecked(frame.submatrix(final_pair)?);
    if sigma2 < bound - BOUND_SLACK {
        return Err(Error::Certification {
            detail: format!(
                "pair {final_pair} has sigma2 = {sigma2:e}, below 1/sqrt({n0}) = {bound:e}"
            ),
            report: Box::new(audit_invariants(frame)),
        });
    }
    Ok(Selection {
        pair: final_pair,
        sigma2,
        certificate: Certificate {
            steps,
            terminal,
            final_pair,
            sigma2,
            bound,
        },
    })
}

/// One Case A reduction on row `i` of `frame`. The returned step carries `i`
/// as its `removed_row`; [`select_pair`] rewrites that to the original-frame
/// index when it recurses.
pub fn case_a_reduce(frame: &OrthonormalFrame, i: usize) -> Result<(OrthonormalFrame, CaseAStep)> {
    let n = frame.n();
    if n < 3 {
        return Err(Error::WrongCase {
            detail: format!("cannot reduce an {n}-row frame below 2 rows"),
        });
    }
    let b_sq = frame.row_norm_sq(i)?;
    let inv_n = 1.0 / n as f64;
    if b_sq > inv_n + CASE_A_PRE_SLACK {
        return Err(Error::WrongCase {
            detail: format!(
                "row {i} has squared norm {b_sq} > 1/n = {inv_n}; not a Case A row"
            ),
        });
    }
    if b_sq >= 1.0 {
        return Err(Error::Domain(format!(
            "row {i} has squared norm {b_sq} >= 1, impossible for an orthonormal frame"
        )));
    }

    let [x, y] = frame.rows()[i];
    let rotation = givens_zeroing_second(x, y);
    let t_sq = 1.0 / (1.0 - b_sq);
    let t = t_sq.sqrt();

    let mut reduced = Vec::with_capacity(n - 1);
    for (k, &[xk, yk]) in frame.rows().iter().enumerate() {
        if k == i {
            continue;
        }
        let (xr, yr) = rotation.apply_to_row(xk, yk);
        reduced.push([t * xr, yr]);
    }

    // Exact arithmetic guarantees orthonormality of the reduced frame;
    // repair only when accumulated rounding exceeds the frame tolerance.
    let residuals = OrthoResiduals::of(&reduced);
    let (reduced_frame, reorthonormalized) = if residuals.max() <= tol_ortho(n - 1) {
        (OrthonormalFrame::from_parts(reduced, residuals), false)
    } else {
        (OrthonormalFrame::reorthonormalized(reduced)?, true)
    };

    Ok((
        reduced_frame,
        CaseAStep {
            removed_row: i,
            b_sq,
            t_sq,
            rotation,
            n_level: n,
            reorthonormalized,
        },
    ))
}

/// Full scan for the off-diagonal pair minimizing
/// M_ij = (w_i, w_j) - z_i z_j + 2/n^2, with its margin. Callers are
/// expected to have established the Case B premise (every squared row norm
/// above 1/n); a margin above [`CASE_B_MARGIN_TOL`] is reported upward, not
/// an error.
pub fn case_b_pair(frame: &OrthonormalFrame) -> (RowPair, f64) {
    min_offdiag_margin_rows(frame.rows())
}

/// Re-derives sigma2 of the claimed pair from the frame alone and checks both
/// the bound and agreement with the claimed value. Does not trust the
/// certificate.
pub fn verify_selection(frame: &OrthonormalFrame, sel: &Selection) -> bool {
    let Ok(sub) = frame.submatrix(sel.pair) else {
        return false;
    };
    let (_, sigma2) = sigma_pair_unchecked(sub);
    let bound = sigma_bound(frame.n());
    sigma2 >= bound - BOUND_SLACK && (sigma2 - sel.sigma2).abs() <= SIGMA_RECHECK_TOL
}

impl Certificate {
    /// Re-executes the recorded reduction trace on `frame` and returns the
    /// pair the terminal rule picks. Uses the recorded rotations and
    /// rescalings, so a certificate produced by [`select_pair`] replays to
    /// its own `final_pair` bit-for-bit.
    pub fn replay(&self, frame: &OrthonormalFrame) -> Result<RowPair> {
        let mut rows = frame.rows().to_vec();
        let mut original_index: Vec<usize> = (0..frame.n()).collect();

        for step in &self.steps {
            if rows.len() < 3 {
                return Err(Error::Replay {
                    detail: format!("step removes a row from a {}-row level", rows.len()),
                });
            }
            let local = original_index
                .iter()
                .position(|&o| o == step.removed_row)
                .ok_or_else(|| Error::Replay {
                    detail: format!("removed row {} is not present at its level", step.removed_row),
                })?;
            let t = step.t_sq.sqrt();
            let mut next = Vec::with_capacity(rows.len() - 1);
            for (k, &[x, y]) in rows.iter().enumerate() {
                if k == local {
                    continue;
                }
                let (xr, yr) = step.rotation.apply_to_row(x, y);
                next.push([t * xr, yr]);
            }
            if step.reorthonormalized {
                gram_schmidt_columns(&mut next).map_err(|e| Error::Replay {
                    detail: format!("re-orthonormalization failed: {e}"),
                })?;
            }
            original_index.remove(local);
            rows = next;
        }

        let (i, j) = match self.terminal {
            Terminal::BaseCase => {
                if rows.len() != 2 {
                    return Err(Error::Replay {
                        detail: format!("base case reached with {} rows", rows.len()),
                    });
                }
                (0, 1)
            }
            Terminal::CaseBPair { .. } => {
                let (pair, _) = min_offdiag_margin_rows(&rows);
                (pair.i(), pair.j())
            }
            Terminal::FallbackScan => {
                let (i, j, _) = max_sigma2_pair(&rows);
                (i, j)
            }
        };
        RowPair::new(original_index[i], original_index[j]).map_err(|_| Error::Replay {
            detail: "terminal pair indices are not ordered".into(),
        })
    }
}
