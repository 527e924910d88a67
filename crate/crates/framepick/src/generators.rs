//! Deterministic construction of test frames: the extremal tightness family,
//! seeded random orthonormal frames, and frames with a prescribed small row.
//!
//! Reproducibility is a contract here: the stream is ChaCha12 keyed from the
//! 64-bit seed via `seed_from_u64`, normal variates come from the ziggurat
//! sampler in `rand_distr`, and entries are drawn row-major, x before y.
//! That recipe is frozen as [`GENERATOR_VERSION`]; reports embed it so any
//! run can be replayed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::frames::{gram_schmidt_columns, OrthonormalFrame};

/// Identifier of the pinned generation recipe.
pub const GENERATOR_VERSION: &str = "v1";

/// Rejection retries before a generator gives up.
const RETRY_CAP: usize = 100;

/// Allowed deviation of the constructed first row's squared norm.
pub const SMALL_ROW_NORM_TOL: f64 = 1e-13;

/// Seed for the deterministic generators.
pub type Seed = u64;

/// Parameters of the extremal family: n - 2 rows (a, 0), one row (b, c) and
/// one row (b, -c).
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct TightnessParams {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl TightnessParams {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::Domain(format!(
                "the tightness family is defined for n >= 4, got {n}"
            )));
        }
        let nf = n as f64;
        Ok(Self {
            n,
            a: ((nf - 1.0) / (nf * (nf - 2.0))).sqrt(),
            b: (1.0 / (2.0 * nf)).sqrt(),
            c: std::f64::consts::FRAC_1_SQRT_2,
        })
    }
}

/// Builds the extremal frame on which the 1/sqrt(n) bound is attained.
pub fn tightness_frame(n: usize) -> Result<OrthonormalFrame> {
    let p = TightnessParams::new(n)?;
    let mut rows = Vec::with_capacity(n);
    rows.resize(n - 2, [p.a, 0.0]);
    rows.push([p.b, p.c]);
    rows.push([p.b, -p.c]);
    OrthonormalFrame::validate(rows)
}

fn chacha(seed: Seed) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

fn normal_rows(n: usize, rng: &mut ChaCha12Rng) -> Vec<[f64; 2]> {
    (0..n)
        .map(|_| {
            let x: f64 = rng.sample(StandardNormal);
            let y: f64 = rng.sample(StandardNormal);
            [x, y]
        })
        .collect()
}

fn orthonormal_from_rng(n: usize, rng: &mut ChaCha12Rng) -> OrthonormalFrame {
    for _ in 0..RETRY_CAP {
        let mut rows = normal_rows(n, rng);
        if gram_schmidt_columns(&mut rows).is_err() {
            continue; // measure-zero degenerate draw
        }
        if let Ok(frame) = OrthonormalFrame::validate(rows) {
            return frame;
        }
    }
    panic!("random frame generation failed {RETRY_CAP} times; broken RNG stream?");
}

/// Seeded random orthonormal frame: i.i.d. standard normal entries, columns
/// orthonormalized by Gram-Schmidt. Same `(n, seed)` gives identical bits.
///
/// Panics if `n < 2`.
pub fn random_frame(n: usize, seed: Seed) -> OrthonormalFrame {
    assert!(n >= 2, "random_frame requires n >= 2");
    let mut rng = chacha(seed);
    orthonormal_from_rng(n, &mut rng)
}

/// Frame whose first row has squared norm `rho_sq`, with the remaining rows
/// an orthonormal completion built from a seeded random (n-1)-frame.
///
/// The first row v is laid on a random direction and nudged so its computed
/// squared norm never exceeds `rho_sq` (callers dispatch on `<= 1/n`, so
/// landing an ulp above would flip the case). The completion multiplies a
/// random (n-1)-frame by the symmetric square root of I - v v^T, which makes
/// the stacked matrix orthonormal to machine precision with the first row
/// untouched.
pub fn small_row_frame(n: usize, rho_sq: f64, seed: Seed) -> Result<OrthonormalFrame> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "small_row_frame needs n >= 3 (an orthonormal 2-frame has unit rows), got {n}"
        )));
    }
    if !rho_sq.is_finite() || rho_sq < 0.0 || rho_sq > 1.0 / n as f64 {
        return Err(Error::Domain(format!(
            "rho_sq = {rho_sq} is outside [0, 1/n] for n = {n}"
        )));
    }
    let rho = rho_sq.sqrt();
    let mut rng = chacha(seed);
    for _ in 0..RETRY_CAP {
        let theta = rng.random::<f64>() * std::f64::consts::TAU;
        let mut v = [rho * theta.cos(), rho * theta.sin()];
        for _ in 0..8 {
            let s0 = v[0] * v[0] + v[1] * v[1];
            if s0 <= rho_sq {
                break;
            }
            let shrink = (rho_sq / s0).sqrt().min(1.0 - f64::EPSILON);
            v[0] *= shrink;
            v[1] *= shrink;
        }

        let rho2 = v[0] * v[0] + v[1] * v[1];
        // sqrt(I - v v^T) = I - beta v v^T with beta = 1 / (1 + sqrt(1 - |v|^2))
        let beta = 1.0 / (1.0 + (1.0 - rho2).sqrt());
        let s00 = 1.0 - beta * v[0] * v[0];
        let s01 = -beta * v[0] * v[1];
        let s11 = 1.0 - beta * v[1] * v[1];

        let inner = orthonormal_from_rng(n - 1, &mut rng);
        let mut rows = Vec::with_capacity(n);
        rows.push(v);
        for &[x, y] in inner.rows() {
            rows.push([x * s00 + y * s01, x * s01 + y * s11]);
        }

        let Ok(frame) = OrthonormalFrame::validate(rows) else {
            continue;
        };
        let got = frame.row_norm_sq(0)?;
        if got <= rho_sq && (got - rho_sq).abs() <= SMALL_ROW_NORM_TOL {
            return Ok(frame);
        }
    }
    Err(Error::RetryLimit { attempts: RETRY_CAP })
}
