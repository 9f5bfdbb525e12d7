use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use clarforce::clar::build_ilp;
use clarforce::corpus::{fixed_animals, Cells};
use clarforce::forcing::{DEFAULT_DEPTH_BUDGET, DEFAULT_MATCHING_BUDGET};
use clarforce::planegraph::{polyomino_from_cells, render_polyomino};
use clarforce::verify::{run_checks, Check, Outcome};
use clarforce::{
    elementary_components, parse_hexagonal, solve_clar, Budget, GraphError, Lattice, MatchingError,
    PlaneBipartiteGraph,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::input::{self, Format, Input};
use crate::report::{self, injected_fault, Report};
use crate::svg;

pub const MAX_CORPUS_POLY: usize = 8;
pub const MAX_CORPUS_HEX: usize = 5;

#[derive(Parser, Debug)]
#[command(
    name = "clarforce",
    version,
    about = "Clar numbers and maximum forcing numbers of polyominoes and hexagonal systems"
)]
pub struct Cli {
    /// Input format; detected from the file contents when omitted.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Leave phase timings out of the report.
    #[arg(long, global = true)]
    pub no_timings: bool,
    /// Maximum number of perfect matchings any exhaustive check may visit.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_MATCHING_BUDGET)]
    pub budget_matchings: usize,
    /// Maximum forcing-set size searched exhaustively.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_DEPTH_BUDGET)]
    pub budget_depth: usize,
    /// Write the Clar integer program in CPLEX LP format to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    pub dump_lp: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Clar number, maximum forcing number, witnesses and certificates.
    Analyze { input: PathBuf },
    /// Cross-check the fast pipeline against exhaustive oracles.
    Verify { input: PathBuf },
    /// Draw a maximum Clar cover as SVG.
    Render { input: PathBuf, output: PathBuf },
    /// Elementary components and fixed bonds.
    Decompose { input: PathBuf },
    /// Verify every fixed animal with 1 to MAX_CELLS cells (lattice from --format, default poly).
    Corpus {
        max_cells: usize,
        /// Permit sizes above the default limits (8 square cells, 5 hexagons).
        #[arg(long)]
        allow_large: bool,
    },
}

impl Cli {
    fn budget(&self) -> Budget {
        Budget {
            matchings: self.budget_matchings,
            depth: self.budget_depth,
        }
    }

    fn load(&self, path: &Path) -> Result<Input, CliError> {
        let input = input::load(path, self.format)?;
        if let Some(lp) = &self.dump_lp {
            write_file(lp, &build_ilp(&input.graph).to_cplex_lp())?;
        }
        Ok(input)
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|source| CliError::Write {
            path: PathBuf::from("<stdout>"),
            source,
        })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Runs one command and returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Analyze { input } => {
            let mut report = report::analyze(&cli.load(input)?, cli.budget())?;
            if cli.no_timings {
                report.timings_ms = None;
            }
            let text = if cli.json {
                to_json(&report)
            } else {
                analyze_text(&report)
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Verify { input } => {
            let input = cli.load(input)?;
            let checks = checks_with_faults(&input.graph, cli.budget())?;
            let code = verdict_code(&checks);
            let text = if cli.json {
                to_json(&VerifyReport {
                    input_fingerprint: &input.fingerprint,
                    status: status_name(code),
                    checks: &checks,
                })
            } else {
                checks.iter().map(check_line).collect()
            };
            emit(out, &text)?;
            Ok(code)
        }
        Command::Render { input, output } => {
            let input = cli.load(input)?;
            let g = &input.graph;
            let dec = elementary_components(g)?;
            let cover = solve_clar(g)?.witness;
            write_file(output, &svg::render(g, &cover, &dec.bond_class))?;
            Ok(0)
        }
        Command::Decompose { input } => {
            let report = report::decompose(&cli.load(input)?)?;
            let text = if cli.json {
                to_json(&report)
            } else {
                format!(
                    "elementary: {}\ncomponents: {}\nfixed bonds: {}\n",
                    report.elementary,
                    report.components.len(),
                    report.fixed_bonds.len()
                )
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Corpus {
            max_cells,
            allow_large,
        } => corpus(cli, *max_cells, *allow_large, out),
    }
}

fn analyze_text(r: &Report) -> String {
    let g = &r.graph;
    let mut s = format!(
        "graph: {} vertices, {} edges, {} faces\n",
        g.vertex_count, g.edge_count, g.face_count
    );
    s += &format!(
        "elementary: {} ({} component(s), {} fixed bond(s))\n",
        r.elementary,
        r.components.len(),
        r.fixed_bonds.len()
    );
    s += &format!("clar number: {}\n", r.clar_number);
    s += &format!("max forcing number: {}\n", r.max_forcing);
    s += &format!(
        "certificate: {:?} (LP bound {})\n",
        r.certificate, r.lp_bound
    );
    let w = &r.witnesses;
    s += &format!("clar cover faces:{}\n", join(&w.clar_cover.faces));
    s += &format!("clar cover edges:{}\n", join(&w.clar_cover.edges));
    match &w.forcing_set {
        Some(f) => s += &format!("forcing set:{}\n", join(&f.edges)),
        None => s += "forcing set: beyond depth budget\n",
    }
    if let Some(t) = &r.timings_ms {
        s += &format!(
            "timings (ms): decompose {:.3}, clar {:.3}, forcing {:.3}, witnesses {:.3}\n",
            t.decompose, t.clar, t.forcing, t.witnesses
        );
    }
    s
}

/// Each item preceded by a space.
fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| format!(" {x}")).collect()
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    input_fingerprint: &'a str,
    status: &'static str,
    checks: &'a [Check],
}

fn checks_with_faults(g: &PlaneBipartiteGraph, budget: Budget) -> Result<Vec<Check>, CliError> {
    let mut checks = run_checks(g, budget).map_err(|e| match e {
        MatchingError::NoPerfectMatching => CliError::NoPerfectMatching,
        other => CliError::from(other),
    })?;
    if let Some(name) = injected_fault() {
        for c in checks.iter_mut().filter(|c| c.name == name) {
            c.outcome = Outcome::Fail("injected fault".to_string());
        }
    }
    Ok(checks)
}

/// 0 when every check passed, 4 on any failure, otherwise 5.
fn verdict_code(checks: &[Check]) -> i32 {
    if checks.iter().any(Check::failed) {
        4
    } else if checks.iter().any(Check::skipped) {
        5
    } else {
        0
    }
}

fn status_name(code: i32) -> &'static str {
    match code {
        0 => "PASS",
        4 => "FAIL",
        _ => "SKIPPED",
    }
}

fn check_line(c: &Check) -> String {
    let (status, detail) = match &c.outcome {
        Outcome::Pass(d) => ("PASS", d),
        Outcome::Fail(d) => ("FAIL", d),
        Outcome::Skipped(d) => ("SKIPPED", d),
    };
    format!("{status} {}: {detail}\n", c.name)
}

#[derive(Serialize)]
struct CorpusRecord {
    size: usize,
    shape: String,
    cells: Cells,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    clar_number: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_forcing: Option<usize>,
    checks: Vec<Check>,
}

#[derive(Serialize, Default)]
struct CorpusSummary {
    lattice: &'static str,
    max_cells: usize,
    animals: usize,
    rejected: usize,
    without_perfect_matching: usize,
    instances: usize,
    passed: usize,
    failed: usize,
    skipped: usize,
}

enum Instance {
    Rejected,
    Unmatchable,
    Checked(Box<CorpusRecord>),
}

fn shape(lattice: Lattice, cells: &Cells) -> String {
    match lattice {
        Lattice::Square => render_polyomino(cells).trim_end().replace('\n', "/"),
        Lattice::Hexagonal => cells
            .iter()
            .map(|(q, r)| format!("{q} {r}"))
            .collect::<Vec<_>>()
            .join(", "),
    }
}

fn check_instance(lattice: Lattice, size: usize, cells: Cells, budget: Budget) -> Instance {
    let graph = match lattice {
        Lattice::Square => polyomino_from_cells(cells.iter().copied()),
        Lattice::Hexagonal => parse_hexagonal(&cells),
    };
    let graph = match graph {
        Ok(g) => g,
        Err(GraphError::Holes(_)) => return Instance::Rejected,
        Err(e) => panic!("lattice animal failed to parse: {e}"),
    };
    let mut checks = match checks_with_faults(&graph, budget) {
        Ok(c) => c,
        Err(CliError::NoPerfectMatching) => return Instance::Unmatchable,
        Err(e) => panic!("unexpected error on a corpus instance: {e}"),
    };
    let input = Input {
        graph,
        fingerprint: String::new(),
    };
    let (clar_number, max_forcing) = match report::analyze(&input, budget) {
        Ok(r) => (Some(r.clar_number), Some(r.max_forcing)),
        Err(e) => {
            let outcome = match e {
                CliError::Budget(msg) => Outcome::Skipped(msg),
                other => Outcome::Fail(other.to_string()),
            };
            checks.push(Check {
                name: "analyze",
                outcome,
            });
            (None, None)
        }
    };
    Instance::Checked(Box::new(CorpusRecord {
        size,
        shape: shape(lattice, &cells),
        status: status_name(verdict_code(&checks)),
        cells,
        clar_number,
        max_forcing,
        checks,
    }))
}

fn corpus(
    cli: &Cli,
    max_cells: usize,
    allow_large: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let (lattice, limit, name) = match cli.format.unwrap_or(Format::Poly) {
        Format::Poly => (Lattice::Square, MAX_CORPUS_POLY, "square"),
        Format::Hex => (Lattice::Hexagonal, MAX_CORPUS_HEX, "hexagonal"),
    };
    if max_cells > limit && !allow_large {
        return Err(CliError::Usage(format!(
            "max_cells {max_cells} exceeds the {name} limit of {limit}; pass --allow-large to override"
        )));
    }
    let animals: Vec<(usize, Cells)> = (1..=max_cells)
        .flat_map(|n| fixed_animals(lattice, n).into_iter().map(move |c| (n, c)))
        .collect();
    let budget = cli.budget();
    let results: Vec<Instance> = animals
        .into_par_iter()
        .map(|(n, cells)| check_instance(lattice, n, cells, budget))
        .collect();

    let mut summary = CorpusSummary {
        lattice: name,
        max_cells,
        animals: results.len(),
        ..CorpusSummary::default()
    };
    let mut code = 0;
    for instance in results {
        let record = match instance {
            Instance::Rejected => {
                summary.rejected += 1;
                continue;
            }
            Instance::Unmatchable => {
                summary.without_perfect_matching += 1;
                continue;
            }
            Instance::Checked(r) => r,
        };
        summary.instances += 1;
        match record.status {
            "PASS" => summary.passed += 1,
            "FAIL" => summary.failed += 1,
            _ => summary.skipped += 1,
        }
        let line = if cli.json {
            let mut s = serde_json::to_string(&record).expect("records serialize");
            s.push('\n');
            s
        } else {
            let cf = match (record.clar_number, record.max_forcing) {
                (Some(c), Some(f)) => format!(" C={c} F={f}"),
                _ => String::new(),
            };
            let failures: String = record
                .checks
                .iter()
                .filter(|c| !c.passed())
                .map(|c| format!("\n  {}", check_line(c).trim_end()))
                .collect();
            format!(
                "{} n={} {}{cf}{failures}\n",
                record.status, record.size, record.shape
            )
        };
        emit(out, &line)?;
        if record.status == "FAIL" {
            code = 4;
            break;
        }
        if record.status == "SKIPPED" {
            code = 5;
        }
    }
    let text = if cli.json {
        let mut s = serde_json::to_string(&serde_json::json!({ "summary": summary }))
            .expect("summary serializes");
        s.push('\n');
        s
    } else {
        format!(
            "summary: {} animals, {} rejected (holes), {} without perfect matching, {} instances: {} passed, {} failed, {} skipped\n",
            summary.animals,
            summary.rejected,
            summary.without_perfect_matching,
            summary.instances,
            summary.passed,
            summary.failed,
            summary.skipped
        )
    };
    emit(out, &text)?;
    Ok(code)
}
