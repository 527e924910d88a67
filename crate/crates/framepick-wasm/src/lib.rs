//! Browser bindings for the interactive demo page.
//!
//! Each export runs one pipeline (generate, select, audit, oracle) and
//! returns a JSON payload the page renders: the rows as 2D vectors, the
//! selected pair, the certified bound, the certificate trace and the audit
//! checklist. Build with `wasm-pack build --target web` (see `www/`).
//!
//! The `*_impl` functions carry the logic and are host-testable; the
//! `#[wasm_bindgen]` wrappers only translate errors to `JsValue`.

use serde_json::json;
use wasm_bindgen::prelude::*;

use framepick::{
    audit_invariants, best_pair_bruteforce, select_pair, sigma_bound, small_row_frame,
    tightness_frame, OrthonormalFrame, Selection, Terminal,
};

/// Keep payloads and the O(n^2) demo scans browser-friendly.
const MAX_DEMO_ROWS: usize = 2048;
const ORACLE_DEMO_LIMIT: usize = 512;

fn check_n(n: u32) -> Result<usize, String> {
    let n = n as usize;
    if !(2..=MAX_DEMO_ROWS).contains(&n) {
        return Err(format!("n must be between 2 and {MAX_DEMO_ROWS}"));
    }
    Ok(n)
}

fn payload(frame: &OrthonormalFrame, selection: &Selection) -> serde_json::Value {
    let n = frame.n();
    let (terminal, margin) = match selection.certificate.terminal {
        Terminal::BaseCase => ("base_case", None),
        Terminal::CaseBPair { margin } => ("case_b_pair", Some(margin)),
        Terminal::FallbackScan => ("fallback_scan", None),
    };
    let steps: Vec<serde_json::Value> = selection
        .certificate
        .steps
        .iter()
        .map(|s| {
            json!({
                "removed_row": s.removed_row,
                "b_sq": s.b_sq,
                "t_sq": s.t_sq,
                "n_level": s.n_level,
                "reorthonormalized": s.reorthonormalized,
            })
        })
        .collect();

    let audit = audit_invariants(frame);
    let checks: Vec<serde_json::Value> = audit
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "residual": c.residual,
                "tolerance": c.tolerance,
                "pass": c.pass,
            })
        })
        .collect();

    let oracle = if n <= ORACLE_DEMO_LIMIT {
        best_pair_bruteforce(frame, ORACLE_DEMO_LIMIT).ok().map(|t| {
            json!({
                "max_sigma2": t.max_sigma2(),
                "argmax": [t.argmax().i(), t.argmax().j()],
            })
        })
    } else {
        None
    };

    json!({
        "n": n,
        "bound": sigma_bound(n),
        "rows": frame.rows(),
        "pair": [selection.pair.i(), selection.pair.j()],
        "sigma2": selection.sigma2,
        "terminal": terminal,
        "margin": margin,
        "steps": steps,
        "audit": checks,
        "audit_pass": audit.pass,
        "oracle": oracle,
    })
}

fn run(frame: OrthonormalFrame) -> Result<String, String> {
    let selection = select_pair(&frame).map_err(|e| e.to_string())?;
    Ok(payload(&frame, &selection).to_string())
}

fn demo_random_impl(n: u32, seed: u32) -> Result<String, String> {
    let n = check_n(n)?;
    run(framepick::random_frame(n, seed as u64))
}

fn demo_tightness_impl(n: u32) -> Result<String, String> {
    let n = check_n(n)?;
    run(tightness_frame(n).map_err(|e| e.to_string())?)
}

fn demo_small_row_impl(n: u32, rho_frac: f64, seed: u32) -> Result<String, String> {
    let n = check_n(n)?;
    if !(0.0..=1.0).contains(&rho_frac) {
        return Err("rho_frac must lie in [0, 1]".into());
    }
    let rho_sq = rho_frac / n as f64;
    run(small_row_frame(n, rho_sq, seed as u64).map_err(|e| e.to_string())?)
}

/// Seeded random orthonormal frame, certified selection, audit.
#[wasm_bindgen]
pub fn demo_random(n: u32, seed: u32) -> Result<String, JsValue> {
    demo_random_impl(n, seed).map_err(|e| JsValue::from_str(&e))
}

/// The extremal family on which sigma2 of the best pair equals 1/sqrt(n).
#[wasm_bindgen]
pub fn demo_tightness(n: u32) -> Result<String, JsValue> {
    demo_tightness_impl(n).map_err(|e| JsValue::from_str(&e))
}

/// A frame whose first row has squared norm `rho_frac / n`, forcing the
/// selection to open with a Case A reduction. `rho_frac` ranges over [0, 1].
#[wasm_bindgen]
pub fn demo_small_row(n: u32, rho_frac: f64, seed: u32) -> Result<String, JsValue> {
    demo_small_row_impl(n, rho_frac, seed).map_err(|e| JsValue::from_str(&e))
}
