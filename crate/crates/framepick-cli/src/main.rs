//! Command-line entry point wiring generation, selection, the oracle, the
//! audit and serialization into reproducible runs.
//!
//! Exit status: 0 on success (including all asserted bounds holding), 1 on
//! validation/certification/data errors, 2 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use framepick::io::{
    audit_to_map, read_frame_from_path, read_report_from_path, write_frame, write_report,
    GeneratorSpec, OracleSummary, ReportDocument, ToleranceOverrides,
};
use framepick::{
    audit_invariants, best_pair_bruteforce, case_b_existence_check, generators, gram_certificate,
    random_frame, select_pair, sigma_bound, singular_values_2x2, small_row_frame,
    tightness_frame, verify_selection, Error, OrthonormalFrame, Terminal, DEFAULT_ORACLE_CAP,
};

#[derive(Parser)]
#[command(
    name = "framepick",
    version,
    about = "Certified selection of a well-conditioned 2x2 row submatrix from an n x 2 orthonormal frame"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Select a certified row pair and emit a report
    Select(SelectArgs),
    /// Evaluate sigma2 of every row pair by brute force
    Oracle(OracleArgs),
    /// Audit the proof identities on a frame
    Audit(AuditArgs),
    /// Generate the extremal frame for n and confirm the bound is attained
    Tightness(TightnessArgs),
    /// Emit a frame file
    Gen(GenArgs),
    /// Recheck the claims of a prior report
    Verify(VerifyArgs),
    /// Time selection against the oracle across sizes
    Bench(BenchArgs),
}

fn parse_row_count(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 2 {
        return Err("a frame needs at least 2 rows".into());
    }
    Ok(n)
}

#[derive(Args)]
struct InputArgs {
    /// Frame file to read (one row per line, two fields, '#' comments)
    #[arg(long, value_name = "PATH", required_unless_present = "gen_random", conflicts_with = "gen_random")]
    input: Option<PathBuf>,
    /// Generate a seeded random frame with this many rows instead
    #[arg(long, value_name = "N", value_parser = parse_row_count)]
    gen_random: Option<usize>,
    /// Seed for --gen-random
    #[arg(long, value_name = "S", default_value_t = 0)]
    seed: u64,
    /// Override the orthonormality validation tolerance
    #[arg(long, value_name = "X")]
    tol_ortho: Option<f64>,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Stamp the report with the current unix time
    #[arg(long)]
    timestamps: bool,
}

#[derive(Args)]
struct SelectArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Include the full certificate in the report
    #[arg(long)]
    cert: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Abort if n exceeds this (guards the O(n^2) scan)
    #[arg(long, value_name = "N", default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TightnessArgs {
    /// Row count of the extremal frame (n >= 4)
    #[arg(long, value_name = "N")]
    n: usize,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GenArgs {
    /// Emit a seeded random frame with this many rows
    #[arg(long, value_name = "N", value_parser = parse_row_count, required_unless_present = "n", conflicts_with = "n")]
    gen_random: Option<usize>,
    /// Seed for --gen-random
    #[arg(long, value_name = "S", default_value_t = 0)]
    seed: u64,
    /// Emit the tightness frame for this n instead
    #[arg(long, value_name = "N")]
    n: Option<usize>,
    /// Write the frame here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Report produced by a previous run
    report: PathBuf,
    /// Frame file the report refers to; omitted reports must carry an
    /// embedded generation spec
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BenchArgs {
    /// Sizes to sweep (repeatable)
    #[arg(long = "n", value_name = "N", value_parser = parse_row_count)]
    sizes: Vec<usize>,
    #[arg(long, value_name = "S", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    /// Write the table here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Select(args) => run_select(args),
        Command::Oracle(args) => run_oracle(args),
        Command::Audit(args) => run_audit(args),
        Command::Tightness(args) => run_tightness(args),
        Command::Gen(args) => run_gen(args),
        Command::Verify(args) => run_verify(args),
        Command::Bench(args) => run_bench(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            if let Error::Certification { report, .. } = &err {
                // ship the diagnostic audit alongside the failure
                if let Ok(json) = serde_json_audit(report) {
                    eprintln!("diagnostic audit: {json}");
                }
            }
            ExitCode::from(1)
        }
    }
}

fn serde_json_audit(report: &framepick::AuditReport) -> Result<String, Error> {
    let mut doc = ReportDocument::new("diagnostic", 0);
    doc.audit = Some(audit_to_map(report));
    doc.audit_pass = Some(report.pass);
    Ok(write_report(&doc))
}

struct LoadedFrame {
    frame: OrthonormalFrame,
    generator: Option<GeneratorSpec>,
    overrides: Option<ToleranceOverrides>,
}

fn load_frame(input: &InputArgs) -> Result<LoadedFrame, Error> {
    let overrides = input.tol_ortho.map(|tol| ToleranceOverrides {
        tol_ortho: Some(tol),
        oracle_cap: None,
    });
    if let Some(path) = &input.input {
        let rows = read_frame_from_path(path)?;
        let frame = match input.tol_ortho {
            Some(tol) => OrthonormalFrame::validate_with_tol(rows, tol)?,
            None => OrthonormalFrame::validate(rows)?,
        };
        return Ok(LoadedFrame {
            frame,
            generator: None,
            overrides,
        });
    }
    let n = input.gen_random.expect("clap enforces input xor gen-random");
    let frame = random_frame(n, input.seed);
    Ok(LoadedFrame {
        frame,
        generator: Some(GeneratorSpec {
            kind: "random".into(),
            n,
            seed: Some(input.seed),
            rho_sq: None,
            version: generators::GENERATOR_VERSION.into(),
        }),
        overrides,
    })
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn stamp(doc: &mut ReportDocument, output: &OutputArgs) {
    if output.timestamps {
        doc.timestamp = Some(
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .expect("clock after 1970")
                .as_secs(),
        );
    }
}

fn run_select(args: SelectArgs) -> Result<bool, Error> {
    let loaded = load_frame(&args.input)?;
    let selection = select_pair(&loaded.frame)?;
    let verified = verify_selection(&loaded.frame, &selection);

    let mut doc = ReportDocument::new("select", loaded.frame.n());
    doc.generator = loaded.generator;
    doc.tolerance_overrides = loaded.overrides;
    doc.pair = Some(selection.pair);
    doc.sigma2 = Some(selection.sigma2);
    doc.margin = match selection.certificate.terminal {
        Terminal::CaseBPair { margin } => Some(margin),
        _ => None,
    };
    doc.verified = Some(verified);
    if args.cert {
        doc.certificate = Some(selection.certificate.clone());
    }
    stamp(&mut doc, &args.output);
    emit(&write_report(&doc), &args.output.out)?;
    Ok(verified)
}

fn run_oracle(args: OracleArgs) -> Result<bool, Error> {
    let loaded = load_frame(&args.input)?;
    let table = best_pair_bruteforce(&loaded.frame, args.oracle_cap)?;
    let n = loaded.frame.n();
    let meets_bound = table.max_sigma2() >= sigma_bound(n) - 1e-12;

    let mut doc = ReportDocument::new("oracle", n);
    doc.generator = loaded.generator;
    doc.tolerance_overrides = merge_cap(loaded.overrides, args.oracle_cap);
    doc.oracle = Some(OracleSummary {
        max_sigma2: table.max_sigma2(),
        argmax: table.argmax(),
        pairs_evaluated: table.len(),
        meets_bound,
    });
    stamp(&mut doc, &args.output);
    emit(&write_report(&doc), &args.output.out)?;
    Ok(meets_bound)
}

fn merge_cap(
    overrides: Option<ToleranceOverrides>,
    cap: usize,
) -> Option<ToleranceOverrides> {
    if cap == DEFAULT_ORACLE_CAP {
        return overrides;
    }
    let mut merged = overrides.unwrap_or_default();
    merged.oracle_cap = Some(cap);
    Some(merged)
}

fn run_audit(args: AuditArgs) -> Result<bool, Error> {
    let loaded = load_frame(&args.input)?;
    let report = audit_invariants(&loaded.frame);
    // The existence check only applies under the Case B premise.
    let existence = match case_b_existence_check(&loaded.frame) {
        Ok(found) => Some(found),
        Err(Error::WrongCase { .. }) => None,
        Err(other) => return Err(other),
    };
    let ok = report.pass && existence != Some(false);

    let mut doc = ReportDocument::new("audit", loaded.frame.n());
    doc.generator = loaded.generator;
    doc.tolerance_overrides = loaded.overrides;
    doc.audit = Some(audit_to_map(&report));
    doc.audit_pass = Some(report.pass);
    doc.case_b_existence = existence;
    stamp(&mut doc, &args.output);
    emit(&write_report(&doc), &args.output.out)?;
    Ok(ok)
}

fn run_tightness(args: TightnessArgs) -> Result<bool, Error> {
    let frame = tightness_frame(args.n)?;
    let table = best_pair_bruteforce(&frame, args.oracle_cap)?;
    let bound = sigma_bound(args.n);
    let attained = (table.max_sigma2() - bound).abs() <= 1e-12;

    let mut doc = ReportDocument::new("tightness", args.n);
    doc.generator = Some(GeneratorSpec {
        kind: "tightness".into(),
        n: args.n,
        seed: None,
        rho_sq: None,
        version: generators::GENERATOR_VERSION.into(),
    });
    doc.tolerance_overrides = merge_cap(None, args.oracle_cap);
    doc.oracle = Some(OracleSummary {
        max_sigma2: table.max_sigma2(),
        argmax: table.argmax(),
        pairs_evaluated: table.len(),
        meets_bound: attained,
    });
    stamp(&mut doc, &args.output);
    emit(&write_report(&doc), &args.output.out)?;
    Ok(attained)
}

fn run_gen(args: GenArgs) -> Result<bool, Error> {
    let (frame, header) = if let Some(n) = args.n {
        (
            tightness_frame(n)?,
            format!("# framepick gen: kind=tightness n={n} version={}\n", generators::GENERATOR_VERSION),
        )
    } else {
        let n = args.gen_random.expect("clap enforces gen-random xor n");
        (
            random_frame(n, args.seed),
            format!(
                "# framepick gen: kind=random n={n} seed={} version={}\n",
                args.seed,
                generators::GENERATOR_VERSION
            ),
        )
    };
    let text = format!("{header}{}", write_frame(&frame));
    emit(&text, &args.out)?;
    Ok(true)
}

fn regenerate(spec: &GeneratorSpec) -> Result<OrthonormalFrame, Error> {
    if spec.version != generators::GENERATOR_VERSION {
        return Err(Error::Report(format!(
            "report was generated with generator {} but this build provides {}",
            spec.version,
            generators::GENERATOR_VERSION
        )));
    }
    match spec.kind.as_str() {
        "random" => {
            let seed = spec
                .seed
                .ok_or_else(|| Error::Report("random generation spec without seed".into()))?;
            Ok(random_frame(spec.n, seed))
        }
        "tightness" => tightness_frame(spec.n),
        "small-row" => {
            let seed = spec
                .seed
                .ok_or_else(|| Error::Report("small-row generation spec without seed".into()))?;
            let rho_sq = spec
                .rho_sq
                .ok_or_else(|| Error::Report("small-row generation spec without rho_sq".into()))?;
            small_row_frame(spec.n, rho_sq, seed)
        }
        other => Err(Error::Report(format!("unknown generator kind {other:?}"))),
    }
}

fn run_verify(args: VerifyArgs) -> Result<bool, Error> {
    let report = read_report_from_path(&args.report)?;
    let frame = match (&args.input, &report.generator) {
        (Some(path), _) => {
            let rows = read_frame_from_path(path)?;
            match report.tolerance_overrides.and_then(|t| t.tol_ortho) {
                Some(tol) => OrthonormalFrame::validate_with_tol(rows, tol)?,
                None => OrthonormalFrame::validate(rows)?,
            }
        }
        (None, Some(spec)) => regenerate(spec)?,
        (None, None) => {
            return Err(Error::Report(
                "report has no generation spec; pass the frame with --input".into(),
            ))
        }
    };

    let mut failures: Vec<String> = Vec::new();
    let mut claim = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };

    let n = frame.n();
    claim(report.n == n, "row count matches the frame");
    claim(
        (report.bound - sigma_bound(n)).abs() <= 1e-15,
        "bound equals 1/sqrt(n)",
    );

    if let (Some(pair), Some(claimed)) = (report.pair, report.sigma2) {
        match frame.submatrix(pair) {
            Ok(sub) => {
                let sigma2 = singular_values_2x2(sub)?.sigma2;
                claim(
                    (sigma2 - claimed).abs() <= 1e-12,
                    "recomputed sigma2 agrees with the claim",
                );
                claim(
                    sigma2 >= sigma_bound(n) - 1e-10,
                    "recomputed sigma2 meets the bound",
                );
                if report.margin.is_some() {
                    // Case B pairs must also certify through the Gram
                    // characteristic polynomial, a second arithmetic route.
                    let cert = gram_certificate(&frame, pair)?;
                    claim(cert.certified, "Gram polynomial certifies the pair");
                }
            }
            Err(_) => claim(false, "claimed pair indexes the frame"),
        }
    }

    if let Some(cert) = &report.certificate {
        claim(
            Some(cert.final_pair) == report.pair,
            "certificate pair matches the report pair",
        );
        claim(
            report.sigma2 == Some(cert.sigma2),
            "certificate sigma2 matches the report",
        );
        for step in &cert.steps {
            claim(
                step.b_sq <= 1.0 / step.n_level as f64 + 1e-12 && step.t_sq >= 1.0,
                "certificate step invariants hold",
            );
        }
        match cert.replay(&frame) {
            Ok(pair) => claim(pair == cert.final_pair, "certificate replays to its pair"),
            Err(e) => claim(false, &format!("certificate replays ({e})")),
        }
    }

    if let Some(map) = &report.audit {
        let fresh = audit_invariants(&frame);
        for check in &fresh.checks {
            let recorded = map
                .get(check.name)
                .and_then(|v| v.get("pass"))
                .and_then(|v| v.as_bool());
            claim(
                recorded == Some(check.pass),
                &format!("audit check {} agrees", check.name),
            );
        }
        if let Some(pass) = report.audit_pass {
            claim(pass == fresh.pass, "overall audit result agrees");
        }
    }

    if let Some(summary) = &report.oracle {
        let cap = report
            .tolerance_overrides
            .and_then(|t| t.oracle_cap)
            .unwrap_or(DEFAULT_ORACLE_CAP);
        let table = best_pair_bruteforce(&frame, cap)?;
        claim(
            (table.max_sigma2() - summary.max_sigma2).abs() <= 1e-12,
            "oracle maximum agrees",
        );
        claim(table.argmax() == summary.argmax, "oracle argmax agrees");
        claim(
            table.len() == summary.pairs_evaluated,
            "oracle pair count agrees",
        );
    }

    let consistent = failures.is_empty();
    for failure in &failures {
        eprintln!("verify: claim failed: {failure}");
    }

    let mut doc = ReportDocument::new("verify", n);
    doc.verified = Some(consistent);
    doc.pair = report.pair;
    doc.sigma2 = report.sigma2;
    doc.margin = report.margin;
    stamp(&mut doc, &args.output);
    emit(&write_report(&doc), &args.output.out)?;
    Ok(consistent)
}

fn run_bench(args: BenchArgs) -> Result<bool, Error> {
    let sizes = if args.sizes.is_empty() {
        vec![64, 256, 1024]
    } else {
        args.sizes.clone()
    };
    let mut out = String::from("# n\tselect_s\tselect_sigma2\toracle_s\toracle_max\n");
    for &n in &sizes {
        let frame = random_frame(n, args.seed);

        let t0 = Instant::now();
        let sel = select_pair(&frame)?;
        let select_s = t0.elapsed().as_secs_f64();

        let (oracle_s, oracle_max) = if n <= args.oracle_cap {
            let t1 = Instant::now();
            let table = best_pair_bruteforce(&frame, args.oracle_cap)?;
            (
                format!("{:.6}", t1.elapsed().as_secs_f64()),
                format!("{}", table.max_sigma2()),
            )
        } else {
            ("skipped".into(), "skipped".into())
        };
        out.push_str(&format!(
            "{n}\t{select_s:.6}\t{}\t{oracle_s}\t{oracle_max}\n",
            sel.sigma2
        ));
    }
    emit(&out, &args.out)?;
    Ok(true)
}
