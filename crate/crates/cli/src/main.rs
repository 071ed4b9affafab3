//! Command-line front end for the Property O verifier.
//!
//! Exit codes: 0 Property O holds, 1 it does not (both routes agree),
//! 2 the input failed to parse or validate, 3 the verifier hit an internal
//! inconsistency (route disagreement, root-finder stall, multiplicity
//! mismatch).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use propo_core::{
    build_c1hat, build_graph, build_report, char_poly, classify_circle, datasets, export_dot,
    find_cycle_of_length, parse_table, period, roots, strongly_connected, validate_grading,
    verify_property_o, ChevalleyTable, DotOptions, GradingIssue, PropertyOVerdict, SpectralError,
    VerificationReport, VerifyError, VerifyOptions, DEFAULT_TOL,
};

const EXIT_HOLDS: u8 = 0;
const EXIT_FAILS: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "propo",
    version,
    about = "Decide Property O for graded quantum Chevalley multiplication tables",
    long_about = "Decide Property O for the quantum multiplication operator of the\n\
        anticanonical class, from a graded Chevalley multiplication table.\n\
        The decision is reached twice (graph criterion and direct spectral\n\
        measurement) and the two routes must agree.\n\n\
        Inputs are file paths or bundled:NAME for a compiled-in dataset.\n\
        Exit codes: 0 holds, 1 does not hold, 2 invalid input, 3 internal\n\
        inconsistency."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify Property O for one table
    Verify {
        /// Path to a table file, or bundled:NAME
        input: String,
        /// Relative tolerance for spectral comparisons
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Emit a JSON report instead of text
        #[arg(long)]
        json: bool,
        /// Run the r-dependent checks against this index instead of the
        /// table's own (negative-control experiments)
        #[arg(long)]
        fano_index_override: Option<u32>,
    },
    /// Verify every bundled dataset
    VerifyAll {
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Inspect the quantum Bruhat graph of a table
    Graph {
        /// Path to a table file, or bundled:NAME
        input: String,
        /// Emit Graphviz DOT instead of a summary
        #[arg(long)]
        dot: bool,
        /// Comma-separated vertex names whose consecutive edges are drawn
        /// bold in the DOT output
        #[arg(long, value_delimiter = ',')]
        highlight: Option<Vec<String>>,
    },
    /// Print the spectrum of the quantum multiplication operator
    Eigs {
        /// Path to a table file, or bundled:NAME
        input: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        fano_index_override: Option<u32>,
    },
    /// Write a bundled dataset to a file
    DumpDataset {
        /// Bundled dataset name (see `verify-all` for the list)
        name: String,
        /// Output path (default: NAME.txt in the working directory)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify {
            input,
            tol,
            json,
            fano_index_override,
        } => cmd_verify(&input, tol, json, fano_index_override),
        Command::VerifyAll { tol, json } => cmd_verify_all(tol, json),
        Command::Graph {
            input,
            dot,
            highlight,
        } => cmd_graph(&input, dot, highlight),
        Command::Eigs {
            input,
            tol,
            json,
            fano_index_override,
        } => cmd_eigs(&input, tol, json, fano_index_override),
        Command::DumpDataset { name, out } => cmd_dump_dataset(&name, out),
    };
    ExitCode::from(code)
}

/// Resolve `bundled:NAME` or a path, parse, and validate the grading.
/// Failures print to stderr and map to exit 2.
fn load_table(input: &str) -> Result<ChevalleyTable, u8> {
    let text = if let Some(name) = input.strip_prefix("bundled:") {
        match datasets::bundled(name) {
            Some(text) => text.to_string(),
            None => {
                eprintln!(
                    "error: no bundled dataset `{name}` (available: {})",
                    datasets::names().join(", ")
                );
                return Err(EXIT_INVALID);
            }
        }
    } else {
        match std::fs::read_to_string(input) {
            Ok(text) => text,
            Err(e) => {
                eprintln!("error: cannot read `{input}`: {e}");
                return Err(EXIT_INVALID);
            }
        }
    };

    let table = match parse_table(&text) {
        Ok(table) => table,
        Err(e) => {
            eprintln!("error: {input}: {e}");
            return Err(EXIT_INVALID);
        }
    };

    let grading = validate_grading(&table);
    if !grading.ok {
        eprintln!(
            "error: {input}: table violates the degree rule deg(target) = deg(source) + 1 - r*d:"
        );
        for v in &grading.violations {
            let detail = match v.issue {
                GradingIssue::Negative => "degree gap is negative".to_string(),
                GradingIssue::NonIntegral => {
                    "degree gap is not a multiple of the Fano index".to_string()
                }
                GradingIssue::WrongPower { expected, actual } => {
                    format!("expected q^{expected}, found q^{actual}")
                }
            };
            eprintln!("  {} -> {}: {}", v.source, v.target, detail);
        }
        return Err(EXIT_INVALID);
    }

    let empty = table.empty_row_names();
    if !empty.is_empty() {
        eprintln!(
            "warning: {input}: empty rows (h * alpha = 0) for: {}",
            empty.join(", ")
        );
    }
    Ok(table)
}

fn verify_exit_code(outcome: &Result<PropertyOVerdict, VerifyError>) -> u8 {
    match outcome {
        Ok(v) if v.holds => EXIT_HOLDS,
        Ok(_) => EXIT_FAILS,
        Err(_) => EXIT_INCONSISTENT,
    }
}

fn cmd_verify(input: &str, tol: f64, json: bool, fano_index_override: Option<u32>) -> u8 {
    let table = match load_table(input) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let options = VerifyOptions {
        tol,
        fano_index_override,
    };
    let started = Instant::now();
    let outcome = verify_property_o(&table, &options);
    let total_ms = started.elapsed().as_secs_f64() * 1e3;
    match &outcome {
        Ok(verdict) => {
            let report = build_report(&table, verdict, total_ms);
            if json {
                print!("{}", report.to_json_pretty());
            } else {
                print!("{}", render_verdict(&table, verdict, &report));
            }
        }
        Err(e) => {
            eprintln!("error: {input}: {e}");
            if let VerifyError::Spectral(SpectralError::NonConvergence { partial, .. }) = e {
                eprintln!(
                    "  partial spectrum: {} roots, delta0 estimate {:.12}",
                    partial.eigenvalues.len(),
                    partial.delta0
                );
            }
        }
    }
    verify_exit_code(&outcome)
}

fn cmd_verify_all(tol: f64, json: bool) -> u8 {
    let options = VerifyOptions {
        tol,
        fano_index_override: None,
    };
    let mut reports: Vec<VerificationReport> = Vec::new();
    let mut lines: Vec<String> = Vec::new();
    let mut worst = EXIT_HOLDS;
    for d in datasets::BUNDLED {
        let table = match load_table(&format!("bundled:{}", d.name)) {
            Ok(t) => t,
            Err(code) => return code,
        };
        let started = Instant::now();
        let outcome = verify_property_o(&table, &options);
        let total_ms = started.elapsed().as_secs_f64() * 1e3;
        let code = verify_exit_code(&outcome);
        worst = worst_code(worst, code);
        match outcome {
            Ok(verdict) => {
                lines.push(format!(
                    "{:9} n={:2} r={} delta0={:<18.12} {}",
                    d.name,
                    table.dim(),
                    verdict.fano_index,
                    verdict.spectral.delta0,
                    if verdict.holds { "HOLDS" } else { "FAILS" },
                ));
                reports.push(build_report(&table, &verdict, total_ms));
            }
            Err(e) => {
                lines.push(format!("{:9} ERROR: {e}", d.name));
            }
        }
    }
    if json {
        let mut s = serde_json::to_string_pretty(&reports).expect("reports serialize");
        s.push('\n');
        print!("{s}");
    } else {
        for line in &lines {
            println!("{line}");
        }
        let held = reports.iter().filter(|r| r.holds).count();
        println!("{held}/{} hold", datasets::BUNDLED.len());
    }
    worst
}

/// Later stages dominate earlier ones: an internal inconsistency (3) or an
/// invalid input (2) outranks a clean "does not hold" (1).
fn worst_code(a: u8, b: u8) -> u8 {
    a.max(b)
}

fn cmd_graph(input: &str, dot: bool, highlight: Option<Vec<String>>) -> u8 {
    let table = match load_table(input) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let graph = build_graph(&table);

    let highlight_indices = match highlight {
        None => None,
        Some(names) => {
            if !dot {
                eprintln!("error: --highlight requires --dot");
                return EXIT_INVALID;
            }
            let mut indices = Vec::with_capacity(names.len());
            for name in &names {
                match graph.index_of(name) {
                    Some(i) => indices.push(i),
                    None => {
                        eprintln!("error: --highlight names unknown vertex `{name}`");
                        return EXIT_INVALID;
                    }
                }
            }
            for pair in indices.windows(2) {
                if !graph.has_edge(pair[0], pair[1]) {
                    eprintln!(
                        "error: --highlight path uses a missing edge {} -> {}",
                        graph.name(pair[0]),
                        graph.name(pair[1])
                    );
                    return EXIT_INVALID;
                }
            }
            Some(indices)
        }
    };

    if dot {
        print!(
            "{}",
            export_dot(
                &graph,
                &DotOptions {
                    highlight: highlight_indices,
                }
            )
        );
        return EXIT_HOLDS;
    }

    let conn = strongly_connected(&graph);
    println!(
        "graph {}: {} vertices, {} edges",
        table.name,
        graph.vertex_count(),
        graph.edge_count()
    );
    println!(
        "strongly connected: {} ({} component{})",
        if conn.strongly_connected { "yes" } else { "no" },
        conn.component_count,
        if conn.component_count == 1 { "" } else { "s" }
    );
    match period(&graph) {
        Ok(p) => println!(
            "period: {} ({} Fano index {})",
            p.period,
            if p.equals_fano_index {
                "equals"
            } else if p.divides_fano_index {
                "divides"
            } else {
                "does not divide"
            },
            graph.fano_index()
        ),
        Err(e) => println!("period: undefined ({e})"),
    }
    let r = graph.fano_index() as usize;
    match find_cycle_of_length(&graph, r) {
        Some(c) => println!(
            "cycle of length {}: {}{}",
            r,
            c.vertices
                .iter()
                .map(|&v| graph.name(v).to_string())
                .collect::<Vec<_>>()
                .join(" -> "),
            if c.simple {
                ""
            } else {
                " (closed walk, not simple)"
            }
        ),
        None => println!("cycle of length {r}: none"),
    }
    EXIT_HOLDS
}

fn cmd_eigs(input: &str, tol: f64, json: bool, fano_index_override: Option<u32>) -> u8 {
    let table = match load_table(input) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let r = fano_index_override.unwrap_or(table.fano_index);
    let matrix = build_c1hat(&table);
    let poly = char_poly(&matrix);
    let spectrum = match roots(&poly) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {input}: {e}");
            return EXIT_INCONSISTENT;
        }
    };
    let circle = classify_circle(&spectrum, r, tol);

    if json {
        let entries: Vec<serde_json::Value> = spectrum
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let mut entry = serde_json::json!({
                    "re": z.re,
                    "im": z.im,
                    "modulus": z.norm(),
                    "residual": spectrum.residuals[i],
                    "on_circle": i < circle.len(),
                });
                if i < circle.len() {
                    entry["nearest_k"] = serde_json::json!(circle[i].nearest_k);
                    entry["distance"] = serde_json::json!(circle[i].distance);
                }
                entry
            })
            .collect();
        let doc = serde_json::json!({
            "schema_version": propo_core::SCHEMA_VERSION,
            "dataset": table.name,
            "fano_index": r,
            "delta0": spectrum.delta0,
            "eigenvalues": entries,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("eigs report serializes");
        s.push('\n');
        print!("{s}");
    } else {
        println!(
            "dataset {}: {} eigenvalues, delta0 = {:.12}",
            table.name,
            spectrum.eigenvalues.len(),
            spectrum.delta0
        );
        for (i, z) in spectrum.eigenvalues.iter().enumerate() {
            let mut line = format!(
                "  {:>+20.12} {:>+20.12}i  |.| = {:18.12}",
                z.re,
                z.im,
                z.norm()
            );
            if i < circle.len() {
                let _ = write!(
                    line,
                    "  on circle: k={} dist={:.2e}",
                    circle[i].nearest_k, circle[i].distance
                );
            }
            println!("{line}");
        }
    }
    EXIT_HOLDS
}

fn cmd_dump_dataset(name: &str, out: Option<PathBuf>) -> u8 {
    let text = match datasets::bundled(name) {
        Some(text) => text,
        None => {
            eprintln!(
                "error: no bundled dataset `{name}` (available: {})",
                datasets::names().join(", ")
            );
            return EXIT_INVALID;
        }
    };
    let path = out.unwrap_or_else(|| PathBuf::from(format!("{name}.txt")));
    if let Err(e) = std::fs::write(&path, text) {
        eprintln!("error: cannot write `{}`: {e}", path.display());
        return EXIT_INVALID;
    }
    println!("wrote {} to {}", name, path.display());
    EXIT_HOLDS
}

fn render_verdict(
    table: &ChevalleyTable,
    verdict: &PropertyOVerdict,
    report: &VerificationReport,
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "dataset {} ({} classes, Fano index {}, c1 = {}h)",
        table.name,
        table.dim(),
        verdict.fano_index,
        table.c1_multiple
    );
    let _ = writeln!(out, "degree histogram: {:?}", report.degree_histogram);
    let lemma = &verdict.lemma;
    let _ = writeln!(out, "graph route:");
    let _ = writeln!(out, "  nonnegative matrix: {}", yes_no(lemma.nonnegative));
    let _ = writeln!(
        out,
        "  strongly connected: {} ({} component{})",
        yes_no(lemma.connectivity.strongly_connected),
        lemma.connectivity.component_count,
        if lemma.connectivity.component_count == 1 {
            ""
        } else {
            "s"
        }
    );
    match &lemma.r_cycle {
        Some(c) => {
            let _ = writeln!(
                out,
                "  {}-cycle: {}{}",
                verdict.fano_index,
                c.vertices
                    .iter()
                    .map(|&v| table.basis[v].name.clone())
                    .collect::<Vec<_>>()
                    .join(" -> "),
                if c.simple {
                    ""
                } else {
                    " (closed walk, not simple)"
                }
            );
        }
        None => {
            let _ = writeln!(out, "  {}-cycle: none", verdict.fano_index);
        }
    }
    match &lemma.period {
        Some(p) => {
            let _ = writeln!(
                out,
                "  period: {} (divides r: {}, equals r: {})",
                p.period,
                yes_no(p.divides_fano_index),
                yes_no(p.equals_fano_index)
            );
        }
        None => {
            let _ = writeln!(out, "  period: undefined");
        }
    }
    let _ = writeln!(out, "  holds: {}", yes_no(lemma.holds));

    let spectral = &verdict.spectral;
    let _ = writeln!(out, "spectral route:");
    let _ = writeln!(
        out,
        "  delta0 = {:.12} (multiplicity {})",
        spectral.delta0, spectral.delta0_multiplicity
    );
    match &spectral.power {
        Some(p) => {
            let rel = if spectral.delta0 > 0.0 {
                (p.value - spectral.delta0).abs() / spectral.delta0
            } else {
                p.value.abs()
            };
            let _ = writeln!(
                out,
                "  power iteration: {:.12} (relative difference {:.2e})",
                p.value, rel
            );
        }
        None => {
            let _ = writeln!(out, "  power iteration: skipped (matrix is reducible)");
        }
    }
    let max_dist = spectral
        .circle
        .iter()
        .fold(0.0f64, |m, c| m.max(c.distance));
    let _ = writeln!(
        out,
        "  spectral circle: {} eigenvalue(s) of maximal modulus, max distance to delta0*zeta^k = {:.2e}",
        spectral.circle.len(),
        max_dist
    );
    let _ = writeln!(
        out,
        "  max residual: {:.2e}",
        report.spectral_route.max_residual
    );
    let _ = writeln!(out, "  holds: {}", yes_no(spectral.holds));

    if verdict.holds {
        let _ = writeln!(out, "PROPERTY O HOLDS (both routes agree)");
    } else {
        let _ = writeln!(out, "PROPERTY O DOES NOT HOLD (both routes agree)");
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
