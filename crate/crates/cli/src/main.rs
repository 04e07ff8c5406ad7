//! `sics` — command-line front end for the sporadic-sics library.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification or
//! check failure.

mod output;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde_json::json;

use sporadic_sics::hv::{
    anticoincidence, dispersion_free_operator, enumerate_instruction_sets, hv_from_state,
    singlet_update_rule_defect,
};
use sporadic_sics::ks::{build_graph, ks_report};
use sporadic_sics::mermin::{
    bell_value, enumerate_lhv, expectation_table, ghz_parity, ghz_sic_analysis, ghz_state,
};
use sporadic_sics::repr::{negativity, probs_to_state, quasiprob, state_to_probs};
use sporadic_sics::sics::{
    build_by_label, build_qutrit_mubs, verify_sic, SicLabel, SicSet, SicSetJson,
};
use sporadic_sics::qmath::OperatorJson;
use sporadic_sics::{DensityOperator, Operator};

use output::{write_output, Rendered, Table};

#[derive(Parser)]
#[command(
    name = "sics",
    version,
    about = "Sporadic SIC-POVMs, the urgleichung, and mechanical nonclassicality checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Numeric tolerance for pass/fail checks, in (0, 1e-4]
    #[arg(long, global = true, default_value_t = 1e-10, env = "SICS_TOL")]
    tol: f64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json, env = "SICS_FORMAT")]
    format: Format,

    /// Write output to this file instead of stdout
    #[arg(long, global = true, env = "SICS_OUT")]
    out: Option<PathBuf>,

    /// Seed for randomized cross-checks
    #[arg(long, global = true, default_value_t = 0, env = "SICS_SEED")]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SicType {
    QubitPlus,
    QubitMinus,
    Hesse,
    Hoggar,
}

impl From<SicType> for SicLabel {
    fn from(t: SicType) -> SicLabel {
        match t {
            SicType::QubitPlus => SicLabel::QubitPlus,
            SicType::QubitMinus => SicLabel::QubitMinus,
            SicType::Hesse => SicLabel::Hesse,
            SicType::Hoggar => SicLabel::Hoggar,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Construct a SIC family and emit its kets with a verification report
    BuildSic {
        #[arg(long = "type", value_enum)]
        sic_type: SicType,
    },
    /// Verify the SIC defining property (for a built family or a kets file)
    Verify {
        #[arg(long = "type", value_enum)]
        sic_type: SicType,
        /// Optional SIC-set JSON file to verify instead of rebuilding
        #[arg(long, env = "SICS_STATE")]
        state: Option<PathBuf>,
    },
    /// Represent a density-matrix JSON file as a SIC probability vector
    Represent {
        /// Density matrix file: {dim, entries: [[[re,im],...],...]} row-major
        #[arg(long, env = "SICS_STATE")]
        state: PathBuf,
        #[arg(long = "type", value_enum)]
        sic_type: SicType,
    },
    /// Local-hidden-variable enumeration and the GHZ Bell value
    Bell,
    /// GHZ analysis in the Hoggar representation: expectation table, weighted sums, parity
    Ghz,
    /// Qubit instruction sets: feasibility, anti-coincidence, dispersion-free octahedron
    Hv {
        /// Optional density-matrix file to test for classical-region membership
        #[arg(long, env = "SICS_STATE")]
        state: Option<PathBuf>,
    },
    /// The 21-vector qutrit Kochen-Specker contradiction
    Ks {
        /// Also write the orthogonality graph in DOT format to this file
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Full paper-value battery: one table of (quantity, expected, computed, delta, pass)
    Report,
}

/// Input or usage problem (exit 1) versus a failed check (exit 2).
enum CliError {
    Usage(String),
    Check(String),
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if !(cli.tol > 0.0 && cli.tol <= 1e-4) {
        eprintln!("error: --tol must lie in (0, 1e-4], got {}", cli.tol);
        return ExitCode::from(1);
    }
    match run(&cli) {
        Ok(rendered) => match write_output(&rendered, cli.format, cli.out.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(2)
        }
    }
}

fn build_sic(label: SicLabel) -> Result<SicSet, CliError> {
    build_by_label(label).map_err(|e| CliError::Check(e.to_string()))
}

fn load_density(path: &PathBuf, dim: usize, tol: f64) -> Result<DensityOperator, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let j: OperatorJson = serde_json::from_str(&text)
        .map_err(|e| usage(format!("{} is not an operator JSON file: {e}", path.display())))?;
    if j.dim != dim {
        return Err(usage(format!(
            "state dimension {} does not match SIC dimension {dim}",
            j.dim
        )));
    }
    let op = Operator::try_from(&j).map_err(usage)?;
    DensityOperator::new(op, tol.max(1e-8)).map_err(usage)
}

fn run(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::BuildSic { sic_type } => {
            let set = build_sic((*sic_type).into())?;
            let report = verify_sic(&set, cli.tol);
            let rendered = Rendered {
                json: json!({
                    "sic": SicSetJson::from(&set),
                    "verification": report,
                }),
                table: verification_table(&report),
            };
            if report.pass {
                Ok(rendered)
            } else {
                Err(CliError::Check(format!(
                    "SIC verification failed: overlap deviation {:.3e}, resolution deviation {:.3e}",
                    report.max_overlap_deviation, report.max_resolution_deviation
                )))
            }
        }
        Command::Verify { sic_type, state } => {
            let set = match state {
                None => build_sic((*sic_type).into())?,
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                    let j: SicSetJson = serde_json::from_str(&text)
                        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    if j.label != SicLabel::from(*sic_type) {
                        return Err(usage(format!(
                            "file is labeled {:?}, but --type asked for {:?}",
                            j.label,
                            SicLabel::from(*sic_type)
                        )));
                    }
                    SicSet::try_from(&j).map_err(usage)?
                }
            };
            let report = verify_sic(&set, cli.tol);
            let rendered = Rendered {
                json: serde_json::to_value(&report).expect("serializable"),
                table: verification_table(&report),
            };
            if report.pass {
                Ok(rendered)
            } else {
                Err(CliError::Check(format!(
                    "SIC verification failed: overlap deviation {:.3e}, resolution deviation {:.3e}",
                    report.max_overlap_deviation, report.max_resolution_deviation
                )))
            }
        }
        Command::Represent { state, sic_type } => {
            let set = build_sic((*sic_type).into())?;
            let rho = load_density(state, set.dim, cli.tol)?;
            let p = state_to_probs(&rho, &set).map_err(usage)?;
            let q = quasiprob(&p);
            let neg = negativity(&q);
            let (_, psd) = probs_to_state(&p, &set).map_err(usage)?;
            let mut table = Table::new(["index", "p(H_i)", "q(i)"]);
            for i in 0..p.p.len() {
                table.push([i.to_string(), fmt(p.p[i]), fmt(q.q[i])]);
            }
            table.push(["negativity".into(), fmt(neg), String::new()]);
            table.push(["round-trip PSD".into(), psd.to_string(), String::new()]);
            Ok(Rendered {
                json: json!({
                    "dim": p.dim,
                    "probabilities": p.p,
                    "quasiprobabilities": q.q,
                    "negativity": neg,
                    "round_trip_psd": psd,
                }),
                table,
            })
        }
        Command::Bell => {
            let assignments = enumerate_lhv();
            let values: Vec<i32> = assignments.iter().map(|&(_, v)| v).collect();
            let min = *values.iter().min().unwrap();
            let max = *values.iter().max().unwrap();
            let b = bell_value(&ghz_state());
            let mut table = Table::new(["quantity", "value"]);
            table.push(["lambda assignments".into(), values.len().to_string()]);
            table.push(["LHV min".into(), min.to_string()]);
            table.push(["LHV max".into(), max.to_string()]);
            table.push(["B(GHZ)".into(), fmt(b)]);
            let rendered = Rendered {
                json: json!({
                    "assignments": values.len(),
                    "lhv_min": min,
                    "lhv_max": max,
                    "lhv_values": values,
                    "bell_ghz": b,
                }),
                table,
            };
            if min == -2 && max == 2 && (b - 4.0).abs() <= cli.tol {
                Ok(rendered)
            } else {
                Err(CliError::Check(format!(
                    "expected LHV range [-2, 2] and B(GHZ) = 4; got [{min}, {max}] and {b}"
                )))
            }
        }
        Command::Ghz => {
            let hoggar = build_sic(SicLabel::Hoggar)?;
            let table = expectation_table(&hoggar);
            let ghz = ghz_sic_analysis(&hoggar).map_err(|e| CliError::Check(e.to_string()))?;
            let parity = ghz_parity(&hoggar).map_err(|e| CliError::Check(e.to_string()))?;
            let mut t = Table::new(["quantity", "value"]);
            for (k, label) in ["XXX", "-XYY", "-YXY", "-YYX"].iter().enumerate() {
                t.push([
                    format!("weighted sum ({label})"),
                    fmt(ghz.per_operator_sums[k]),
                ]);
            }
            t.push(["un-deformed total".into(), fmt(ghz.undeformed_total)]);
            t.push(["deformed total".into(), fmt(ghz.deformed_total)]);
            t.push(["B(GHZ) direct".into(), fmt(ghz.bell_value_direct)]);
            for (k, s) in ["+++", "+--", "-+-", "--+"].iter().enumerate() {
                t.push([format!("overlap sum ({s})"), fmt(parity.overlap_sums[k])]);
            }
            t.push(["P(odd parity)".into(), fmt(parity.p_odd)]);
            t.push(["P(odd) via urgleichung".into(), fmt(parity.p_odd_urgleichung)]);
            let ok = ghz
                .per_operator_sums
                .iter()
                .all(|&s| (s - 1.0 / 9.0).abs() <= cli.tol)
                && (ghz.deformed_total - 4.0).abs() <= cli.tol
                && (parity.p_odd - 1.0).abs() <= cli.tol;
            let rendered = Rendered {
                json: json!({
                    "expectation_table_csv": table.to_csv(),
                    "ghz": ghz,
                    "parity": parity,
                }),
                table: t,
            };
            if ok {
                Ok(rendered)
            } else {
                Err(CliError::Check(
                    "GHZ analysis deviates from the expected values".into(),
                ))
            }
        }
        Command::Hv { state } => {
            let sic_plus = build_sic(SicLabel::QubitPlus)?;
            let sets = enumerate_instruction_sets();
            let mut t = Table::new(["quantity", "value"]);
            t.push([
                "instruction sets".into(),
                sets.iter()
                    .map(|s| s.pattern())
                    .collect::<Vec<_>>()
                    .join(" "),
            ]);
            let mut octa = Vec::new();
            for s in &sets {
                let (_, bloch) = dispersion_free_operator(&s, &sic_plus)
                    .map_err(|e| CliError::Check(e.to_string()))?;
                octa.push([bloch.x, bloch.y, bloch.z]);
                t.push([
                    format!("pseudo-state {}", s.pattern()),
                    format!("({}, {}, {})", fmt(bloch.x), fmt(bloch.y), fmt(bloch.z)),
                ]);
            }
            let mut anti = Vec::new();
            for i in 0..4 {
                let mut row = Vec::new();
                for j in 0..4 {
                    let (quantum, hv) = anticoincidence(i, j);
                    row.push(json!({ "quantum": quantum, "hv": hv }));
                    t.push([format!("anti-coincidence ({i},{j})"), fmt(quantum)]);
                }
                anti.push(row);
            }
            let defect = singlet_update_rule_defect();
            t.push(["singlet update-rule defect".into(), fmt(defect)]);
            let feasibility = match state {
                None => None,
                Some(path) => {
                    let rho = load_density(path, 2, cli.tol)?;
                    let f = hv_from_state(&rho, &sic_plus)
                        .map_err(|e| CliError::Check(e.to_string()))?;
                    t.push(["state feasible".into(), f.feasible.to_string()]);
                    t.push(["feasibility margin".into(), fmt(f.margin)]);
                    Some(f)
                }
            };
            Ok(Rendered {
                json: json!({
                    "instruction_sets": sets.iter().map(|s| s.pattern()).collect::<Vec<_>>(),
                    "octahedron_bloch": octa,
                    "anticoincidence": anti,
                    "singlet_update_defect": defect,
                    "feasibility": feasibility,
                }),
                table: t,
            })
        }
        Command::Ks { dot } => {
            let hesse = build_sic(SicLabel::Hesse)?;
            let mubs = build_qutrit_mubs(&hesse).map_err(|e| CliError::Check(e.to_string()))?;
            if let Some(path) = dot {
                let g = build_graph(&hesse, &mubs).map_err(|e| CliError::Check(e.to_string()))?;
                std::fs::write(path, g.to_dot())
                    .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            }
            let report = ks_report(&hesse, &mubs).map_err(|e| CliError::Check(e.to_string()))?;
            let mut t = Table::new(["quantity", "value"]);
            t.push(["required sum".into(), report.required_sum.to_string()]);
            t.push(["max achievable".into(), report.max_achievable.to_string()]);
            t.push(["min achievable".into(), report.min_achievable.to_string()]);
            t.push(["contradiction".into(), report.contradiction.to_string()]);
            t.push([
                "Born check max deviation".into(),
                fmt(report.born_check_max_deviation),
            ]);
            t.push([
                "assignments".into(),
                report.per_assignment.len().to_string(),
            ]);
            let rendered = Rendered {
                json: serde_json::to_value(&report).expect("serializable"),
                table: t,
            };
            if report.contradiction && report.born_check_max_deviation <= cli.tol {
                Ok(rendered)
            } else {
                Err(CliError::Check(
                    "Kochen-Specker contradiction not reproduced".into(),
                ))
            }
        }
        Command::Report => {
            let mut rng = ChaCha12Rng::seed_from_u64(cli.seed);
            let rows = report::full_battery(cli.tol, &mut rng)
                .map_err(|e| CliError::Check(e))?;
            let all_pass = rows.iter().all(|r| r.pass);
            let mut t = Table::new(["quantity", "expected", "computed", "|delta|", "pass"]);
            for r in &rows {
                t.push([
                    r.quantity.clone(),
                    fmt(r.expected),
                    fmt(r.computed),
                    fmt(r.delta),
                    r.pass.to_string(),
                ]);
            }
            let rendered = Rendered {
                json: json!({ "rows": rows, "all_pass": all_pass }),
                table: t,
            };
            if all_pass {
                Ok(rendered)
            } else {
                let failures: Vec<String> = rows
                    .iter()
                    .filter(|r| !r.pass)
                    .map(|r| {
                        format!(
                            "{}: expected {}, computed {}",
                            r.quantity,
                            fmt(r.expected),
                            fmt(r.computed)
                        )
                    })
                    .collect();
                // still emit the table so the failures are inspectable
                let _ = write_output(&rendered, cli.format, cli.out.as_deref());
                Err(CliError::Check(failures.join("; ")))
            }
        }
    }
}

fn verification_table(report: &sporadic_sics::sics::VerificationReport) -> Table {
    let mut t = Table::new(["quantity", "value"]);
    t.push(["dim".into(), report.dim.to_string()]);
    t.push(["label".into(), report.label.clone()]);
    t.push([
        "max overlap deviation".into(),
        fmt(report.max_overlap_deviation),
    ]);
    t.push([
        "max resolution deviation".into(),
        fmt(report.max_resolution_deviation),
    ]);
    t.push(["pass".into(), report.pass.to_string()]);
    t
}

/// Compact numeric rendering: plain integers stay plain, everything
/// else gets shortest round-trip form.
pub fn fmt(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e9 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}
