//! Brute-force ground truth: sigma2 of every row pair.
//!
//! The full table is kept, not just the maximum, so failures stay
//! inspectable and the bench subcommand can report distributions. Values are
//! stored in a flat lexicographically ordered array; pairs are implicit in
//! the index, which halves the footprint at large n.

use crate::error::{Error, Result};
use crate::frames::{OrthonormalFrame, RowPair};
use crate::kernels::{sigma2_unchecked, Mat2};

/// Default guard against accidental O(n^2) blowups: n = 20000 is about
/// 2e8 sigma2 evaluations.
pub const DEFAULT_ORACLE_CAP: usize = 20_000;

/// sigma2 for all C(n, 2) row pairs, with the lexicographically least
/// maximizer.
#[derive(Clone, Debug)]
pub struct PairTable {
    n: usize,
    sigma2: Vec<f64>,
    argmax: RowPair,
    max_sigma2: f64,
}

impl PairTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of records, always n(n-1)/2.
    pub fn len(&self) -> usize {
        self.sigma2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma2.is_empty()
    }

    pub fn max_sigma2(&self) -> f64 {
        self.max_sigma2
    }

    /// Lexicographically least pair attaining the exact maximum.
    pub fn argmax(&self) -> RowPair {
        self.argmax
    }

    /// All records in lexicographic pair order.
    pub fn entries(&self) -> impl Iterator<Item = (RowPair, f64)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| ((i + 1)..n).map(move |j| RowPair::new(i, j).expect("i < j")))
            .zip(self.sigma2.iter().copied())
    }

    /// Pairs whose sigma2 is within `tol` of the maximum.
    pub fn maximizers_within(&self, tol: f64) -> Vec<RowPair> {
        self.entries()
            .filter(|&(_, s)| s >= self.max_sigma2 - tol)
            .map(|(p, _)| p)
            .collect()
    }
}

/// Evaluates sigma2 for every pair. Errors when `n` exceeds `cap`.
pub fn best_pair_bruteforce(frame: &OrthonormalFrame, cap: usize) -> Result<PairTable> {
    let n = frame.n();
    if n > cap {
        return Err(Error::OracleCapExceeded { n, cap });
    }
    let rows = frame.rows();
    let mut sigma2 = Vec::with_capacity(n * (n - 1) / 2);
    let mut max_sigma2 = f64::NEG_INFINITY;
    let mut argmax = (0usize, 1usize);
    for i in 0..n {
        for j in (i + 1)..n {
            let s = sigma2_unchecked(Mat2::from_rows(rows[i], rows[j]));
            if s > max_sigma2 {
                max_sigma2 = s;
                argmax = (i, j);
            }
            sigma2.push(s);
        }
    }
    Ok(PairTable {
        n,
        sigma2,
        argmax: RowPair::new(argmax.0, argmax.1).expect("scan keeps i < j"),
        max_sigma2,
    })
}
