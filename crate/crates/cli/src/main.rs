//! Command-line surface: enumerate diagram and tableau families, compute key
//! and Lascoux polynomials by either route, apply the maps with optional
//! step traces, and sweep-verify the whole toolkit.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 state cap
//! exceeded.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use lascoux::{
    decode, enumerate_rssyt, enumerate_rsvt, kd_closure, key_polynomial_via_diagrams,
    key_polynomial_via_tableaux, kkd_closure, label, lascoux_polynomial_via_diagrams,
    lascoux_polynomial_via_tableaux, phi_direct_traced, psi_direct_traced, verify_bijection,
    DiagramPair, Polynomial, Rsvt, TableauPair, WeakComposition, DEFAULT_STATE_CAP,
};

const SCHEMA: &str = "lascoux/v1";

#[derive(Parser)]
#[command(
    name = "lascoux",
    version,
    about = "Kohnert diagram and reverse set-valued tableau combinatorics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Ascii,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetKind {
    /// Kohnert diagrams
    Kd,
    /// K-Kohnert diagram pairs
    Kkd,
    /// reverse semistandard tableaux of the composition
    Rssyt,
    /// reverse set-valued tableaux of the composition
    Rsvt,
    /// Kohnert tableaux (labelings of the Kohnert diagrams)
    Kt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyKind {
    Key,
    Lascoux,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    /// tableau enumeration only
    Tableau,
    /// diagram closure only
    Diagram,
    /// both routes with an equality verdict
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    /// diagram pair to tableau pair
    Psi,
    /// tableau (pair) to diagram pair
    Phi,
}

#[derive(Subcommand)]
enum Command {
    /// List one of the families attached to a composition
    Enumerate {
        /// comma-separated composition, e.g. 0,2,1
        alpha: String,
        #[arg(long, value_enum)]
        set: SetKind,
        /// keep only elements with excess at most this bound
        #[arg(long)]
        max_excess: Option<usize>,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        /// closure state cap
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        state_cap: usize,
    },
    /// Compute the key or Lascoux polynomial of a composition
    Poly {
        alpha: String,
        #[arg(long, value_enum)]
        kind: PolyKind,
        /// truncate the Lascoux polynomial at this deformation degree
        #[arg(long)]
        max_excess: Option<usize>,
        #[arg(long, value_enum, default_value = "both")]
        route: Route,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        state_cap: usize,
    },
    /// Apply one of the two maps to a JSON-encoded element
    Map {
        alpha: String,
        #[arg(long, value_enum)]
        dir: Direction,
        /// JSON input; reads stdin when omitted or "-"
        #[arg(long)]
        input: Option<String>,
        /// emit one record per elementary move
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
    },
    /// Sweep all compositions of a given length and entry bound
    Verify {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_entry: usize,
        #[arg(long)]
        max_excess: Option<usize>,
        /// worker threads for the per-composition checks
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        state_cap: usize,
    },
}

enum CliError {
    Usage(String),
    Verification(String),
    Resource(String),
}

impl From<lascoux::StateLimitExceeded> for CliError {
    fn from(e: lascoux::StateLimitExceeded) -> Self {
        CliError::Resource(e.to_string())
    }
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate {
            alpha,
            set,
            max_excess,
            format,
            state_cap,
        } => cmd_enumerate(&alpha, set, max_excess, format, state_cap),
        Command::Poly {
            alpha,
            kind,
            max_excess,
            route,
            format,
            state_cap,
        } => cmd_poly(&alpha, kind, max_excess, route, format, state_cap),
        Command::Map {
            alpha,
            dir,
            input,
            trace,
            format,
        } => cmd_map(&alpha, dir, input.as_deref(), trace, format),
        Command::Verify {
            n,
            max_entry,
            max_excess,
            jobs,
            format,
            state_cap,
        } => cmd_verify(n, max_entry, max_excess, jobs, format, state_cap),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Resource(msg)) => {
            eprintln!("resource limit: {msg}");
            ExitCode::from(3)
        }
    }
}

fn parse_alpha(s: &str) -> Result<WeakComposition, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("{e}")))
}

fn print_json(value: serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(&value).expect("serializable output")
    );
}

fn cmd_enumerate(
    alpha: &str,
    set: SetKind,
    max_excess: Option<usize>,
    format: Format,
    state_cap: usize,
) -> Result<(), CliError> {
    let alpha = parse_alpha(alpha)?;
    let within = |ex: usize| max_excess.is_none_or(|m| ex <= m);
    match set {
        SetKind::Kd | SetKind::Kkd => {
            let name = if set == SetKind::Kd { "kd" } else { "kkd" };
            let elements: Vec<DiagramPair> = if set == SetKind::Kd {
                kd_closure(&alpha, state_cap)?.into_iter().collect()
            } else {
                kkd_closure(&alpha, state_cap)?
                    .into_iter()
                    .filter(|d| within(d.excess()))
                    .collect()
            };
            match format {
                Format::Json => print_json(json!({
                    "schema": SCHEMA,
                    "alpha": alpha,
                    "set": name,
                    "max_excess": max_excess,
                    "count": elements.len(),
                    "elements": elements,
                })),
                Format::Ascii => {
                    println!("{name}({alpha}): {} elements", elements.len());
                    for (i, d) in elements.iter().enumerate() {
                        println!("--- {} ---", i + 1);
                        print!("{d}");
                        if d.is_empty() {
                            println!();
                        }
                    }
                }
            }
        }
        SetKind::Rssyt | SetKind::Rsvt => {
            let name = if set == SetKind::Rssyt {
                "rssyt"
            } else {
                "rsvt"
            };
            let elements: Vec<Rsvt> = if set == SetKind::Rssyt {
                enumerate_rssyt(&alpha)
            } else {
                enumerate_rsvt(&alpha, max_excess)
            };
            match format {
                Format::Json => print_json(json!({
                    "schema": SCHEMA,
                    "alpha": alpha,
                    "set": name,
                    "max_excess": max_excess,
                    "count": elements.len(),
                    "elements": elements,
                })),
                Format::Ascii => {
                    println!("{name}({alpha}): {} elements", elements.len());
                    for (i, t) in elements.iter().enumerate() {
                        println!("--- {} ---", i + 1);
                        print!("{t}");
                        if t.is_empty() {
                            println!();
                        }
                    }
                }
            }
        }
        SetKind::Kt => {
            let tableaux: Vec<_> = kd_closure(&alpha, state_cap)?
                .iter()
                .map(|d| label(d, &alpha).expect("closure elements are labelable"))
                .collect();
            match format {
                Format::Json => print_json(json!({
                    "schema": SCHEMA,
                    "alpha": alpha,
                    "set": "kt",
                    "count": tableaux.len(),
                    "elements": tableaux,
                })),
                Format::Ascii => {
                    println!("kt({alpha}): {} elements", tableaux.len());
                    for (i, t) in tableaux.iter().enumerate() {
                        println!("--- {} ---", i + 1);
                        print!("{t}");
                        if t.filling().is_empty() {
                            println!();
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn cmd_poly(
    alpha: &str,
    kind: PolyKind,
    max_excess: Option<usize>,
    route: Route,
    format: Format,
    state_cap: usize,
) -> Result<(), CliError> {
    let alpha = parse_alpha(alpha)?;
    let kind_name = match kind {
        PolyKind::Key => "key",
        PolyKind::Lascoux => "lascoux",
    };
    let via_tableaux = || -> Polynomial {
        match kind {
            PolyKind::Key => key_polynomial_via_tableaux(&alpha),
            PolyKind::Lascoux => lascoux_polynomial_via_tableaux(&alpha, max_excess),
        }
    };
    let via_diagrams = || -> Result<Polynomial, CliError> {
        Ok(match kind {
            PolyKind::Key => key_polynomial_via_diagrams(&alpha, state_cap)?,
            PolyKind::Lascoux => lascoux_polynomial_via_diagrams(&alpha, max_excess, state_cap)?,
        })
    };
    let (poly, other, verdict) = match route {
        Route::Tableau => (via_tableaux(), None, None),
        Route::Diagram => (via_diagrams()?, None, None),
        Route::Both => {
            let t = via_tableaux();
            let d = via_diagrams()?;
            let equal = t == d;
            (t, Some(d), Some(equal))
        }
    };
    match format {
        Format::Json => {
            let mut out = json!({
                "schema": SCHEMA,
                "alpha": alpha,
                "kind": kind_name,
                "max_excess": max_excess,
                "polynomial": poly,
            });
            if let Some(d) = &other {
                out["via_diagrams"] = serde_json::to_value(d).expect("serializable");
                out["routes_equal"] = json!(verdict.unwrap());
            }
            print_json(out);
        }
        Format::Ascii => {
            println!("{kind_name}({alpha}) = {poly}");
            println!(
                "terms: {} distinct, {} with multiplicity",
                poly.term_count(),
                poly.coefficient_sum()
            );
            if let Some(equal) = verdict {
                println!("routes: {}", if equal { "equal" } else { "MISMATCH" });
            }
        }
    }
    if verdict == Some(false) {
        return Err(CliError::Verification(
            "tableau and diagram routes disagree".into(),
        ));
    }
    Ok(())
}

fn read_input(input: Option<&str>) -> Result<String, CliError> {
    match input {
        Some("-") | None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
        Some(s) => Ok(s.to_string()),
    }
}

fn cmd_map(
    alpha: &str,
    dir: Direction,
    input: Option<&str>,
    trace: bool,
    format: Format,
) -> Result<(), CliError> {
    let alpha = parse_alpha(alpha)?;
    let raw = read_input(input)?;
    let value: serde_json::Value = serde_json::from_str(&raw)
        .map_err(|e| CliError::Usage(format!("invalid JSON input: {e}")))?;
    match dir {
        Direction::Psi => {
            let d: DiagramPair = serde_json::from_value(value)
                .map_err(|e| CliError::Usage(format!("expected a diagram pair: {e}")))?;
            let (image, steps) =
                psi_direct_traced(&d, &alpha).map_err(|e| CliError::Usage(e.to_string()))?;
            let tableau = decode(&image).expect("map images decode to tableaux");
            match format {
                Format::Json => {
                    let mut out = json!({
                        "schema": SCHEMA,
                        "alpha": alpha,
                        "dir": "psi",
                        "tableau": tableau,
                        "leading": image.leading(),
                        "extras": image.extras(),
                    });
                    if trace {
                        out["trace"] = serde_json::to_value(&steps).expect("serializable");
                    }
                    print_json(out);
                }
                Format::Ascii => {
                    if trace {
                        for s in &steps {
                            println!(
                                "{} ({},{}) from row {}",
                                s.op, s.g_or_k.0, s.g_or_k.1, s.partner
                            );
                        }
                    }
                    println!("image tableau:");
                    print!("{tableau}");
                    println!("image as diagram pair (. leading, X extra):");
                    print!("{}", image.as_diagram_pair());
                }
            }
        }
        Direction::Phi => {
            let pair = parse_tableau_input(value)?;
            let (image, steps) =
                phi_direct_traced(&pair, &alpha).map_err(|e| CliError::Usage(e.to_string()))?;
            match format {
                Format::Json => {
                    let mut out = json!({
                        "schema": SCHEMA,
                        "alpha": alpha,
                        "dir": "phi",
                        "image": image,
                    });
                    if trace {
                        out["trace"] = serde_json::to_value(&steps).expect("serializable");
                    }
                    print_json(out);
                }
                Format::Ascii => {
                    if trace {
                        for s in &steps {
                            println!(
                                "{} ({},{}) from row {}",
                                s.op, s.g_or_k.0, s.g_or_k.1, s.partner
                            );
                        }
                    }
                    println!("image diagram pair (. Kohnert, X ghost):");
                    print!("{image}");
                    if image.is_empty() {
                        println!();
                    }
                }
            }
        }
    }
    Ok(())
}

/// Accept either the boxes form `{"shape","boxes"}` or the pair form
/// `{"leading","extras"}`.
fn parse_tableau_input(value: serde_json::Value) -> Result<TableauPair, CliError> {
    if value.get("boxes").is_some() {
        let t: Rsvt = serde_json::from_value(value)
            .map_err(|e| CliError::Usage(format!("invalid tableau: {e}")))?;
        Ok(lascoux::encode(&t))
    } else {
        serde_json::from_value(value)
            .map_err(|e| CliError::Usage(format!("expected a tableau or tableau pair: {e}")))
    }
}

fn cmd_verify(
    n: usize,
    max_entry: usize,
    max_excess: Option<usize>,
    jobs: usize,
    format: Format,
    state_cap: usize,
) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let sweep = lascoux::all_compositions(n, max_entry);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot build worker pool: {e}")))?;
    let reports: Vec<Result<lascoux::VerificationReport, lascoux::StateLimitExceeded>> = pool
        .install(|| {
            use rayon::prelude::*;
            sweep
                .par_iter()
                .map(|alpha| verify_bijection(alpha, max_excess, state_cap))
                .collect()
        });
    let mut oks = Vec::new();
    for report in reports {
        oks.push(report?);
    }
    let all_ok = oks.iter().all(|r| r.ok);
    match format {
        Format::Json => print_json(json!({
            "schema": SCHEMA,
            "n": n,
            "max_entry": max_entry,
            "max_excess": max_excess,
            "compositions": oks.len(),
            "ok": all_ok,
            "reports": oks,
        })),
        Format::Ascii => {
            for r in &oks {
                println!("{}", r.summary_line());
            }
            println!(
                "verified {} compositions (n={}, entries<={}): {}",
                oks.len(),
                n,
                max_entry,
                if all_ok { "all ok" } else { "FAILURES" }
            );
        }
    }
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "{} of {} compositions failed",
            oks.iter().filter(|r| !r.ok).count(),
            oks.len()
        )))
    }
}
