//! Shell front door: graph6 in, JSON (or CSV for corpus runs) out.
//! Exit codes: 0 clean, 1 violations found, 2 usage/input error, 3 budget
//! exhausted.

use std::collections::BTreeSet;
use std::io::Read;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use holescope::chroma::{self, ChromaError};
use holescope::constructions::{self, ConstructionError, Outcome};
use holescope::exec;
use holescope::generators::{self, FamilySpec};
use holescope::graph::{emit_graph6, parse_graph6, Distance, Graph};
use holescope::holes;
use holescope::structures::{verify_levelling, Certificate};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "holescope", version, about = "Hole spectra and chromatic structure of triangle-free graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Read graph6 lines from this file
    #[arg(long = "in", value_name = "FILE", conflicts_with = "stdin")]
    input: Option<String>,
    /// Read graph6 lines from standard input
    #[arg(long)]
    stdin: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum, chromatic numbers, girth and hole intervals of input graphs
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Report chi^rho for rho = 1..=RHO
        #[arg(long, default_value_t = 0)]
        rho: usize,
        /// Report the smallest t with holes of nu consecutive lengths, nu = 1..=NUMAX
        #[arg(long, default_value_t = 0)]
        numax: usize,
        /// Largest hole length searched
        #[arg(long, default_value_t = 12)]
        lmax: usize,
        #[arg(long)]
        budget: Option<u64>,
        /// JSON is the only analyze format; accepted for symmetry
        #[arg(long)]
        json: bool,
    },
    /// Check a certificate JSON file against a graph
    Verify {
        /// graph6 file (first line is used)
        #[arg(long, value_name = "FILE")]
        graph: String,
        /// certificate JSON file with a "kind" tag
        #[arg(long, value_name = "FILE")]
        cert: String,
        #[arg(long)]
        json: bool,
    },
    /// Run a named construction procedure on input graphs
    Construct {
        procedure: Procedure,
        #[command(flatten)]
        input: InputArgs,
        /// Hole length for ell-hole
        #[arg(long)]
        ell: Option<usize>,
    },
    /// Emit a graph family as graph6 on stdout
    Generate {
        /// e.g. "cycle:7", "mycielski:cycle:5", "kneser:5:2", "rtf:n=30:seed=7"
        spec: String,
    },
    /// Run the corpus suite and emit a per-graph summary
    Corpus {
        /// CSV summary (the default)
        #[arg(long)]
        csv: bool,
        /// JSON lines instead of CSV
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Base seed for the random corpus members
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        lmax: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Procedure {
    FiveHole,
    SixHole,
    EllHole,
    Levelling,
}

fn main() {
    std::process::exit(run());
}

const EXIT_OK: i32 = 0;
const EXIT_VIOLATIONS: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_BUDGET: i32 = 3;

fn fail(msg: impl std::fmt::Display) -> i32 {
    eprintln!("holescope: {msg}");
    EXIT_USAGE
}

fn budget_from(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("HOLESCOPE_BUDGET").ok().and_then(|s| s.parse().ok())
    })
    .unwrap_or(holes::DEFAULT_HOLE_BUDGET)
}

fn read_graphs(input: &InputArgs) -> Result<Vec<(String, Graph)>, String> {
    let (name, text) = match (&input.input, input.stdin) {
        (Some(path), _) => (
            path.clone(),
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?,
        ),
        (None, true) => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            ("<stdin>".to_string(), buf)
        }
        (None, false) => return Err("need --in FILE or --stdin".to_string()),
    };
    let mut graphs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let g = parse_graph6(line).map_err(|e| format!("{name} line {}: {e}", i + 1))?;
        graphs.push((format!("{name}:{}", i + 1), g));
    }
    if graphs.is_empty() {
        return Err(format!("{name}: no graph6 lines"));
    }
    Ok(graphs)
}

fn girth_json(g: &Graph) -> serde_json::Value {
    match g.girth() {
        Distance::Finite(d) => json!(d),
        Distance::Infinite => serde_json::Value::Null,
    }
}

fn run() -> i32 {
    match Cli::parse().command {
        Command::Analyze { input, rho, numax, lmax, budget, json: _ } => {
            analyze(&input, rho, numax, lmax.max(4), budget_from(budget))
        }
        Command::Verify { graph, cert, json: _ } => verify(&graph, &cert),
        Command::Construct { procedure, input, ell } => construct(procedure, &input, ell),
        Command::Generate { spec } => generate(&spec),
        Command::Corpus { seed, lmax, budget, json, csv: _ } => {
            corpus(seed, lmax.max(4), budget_from(budget), json)
        }
    }
}

fn analyze(input: &InputArgs, rho: usize, numax: usize, lmax: usize, budget: u64) -> i32 {
    let graphs = match read_graphs(input) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let start = Instant::now();
    for (name, g) in graphs {
        let all: BTreeSet<usize> = g.vertices().collect();
        let chi = match chroma::chromatic_number_budgeted(
            &g.induced_subgraph(&all).0,
            budget.max(chroma::DEFAULT_BUDGET),
        ) {
            Ok(c) => c,
            Err(e) => return budget_fail(e),
        };
        let mut chi_rho_table = Vec::new();
        for r in 1..=rho {
            match chroma::chi_rho(&g, r) {
                Ok(c) => chi_rho_table.push(json!([r, c])),
                Err(e) => return budget_fail(e),
            }
        }
        let spectrum = match holes::hole_spectrum(&g, lmax, budget) {
            Ok(s) => s,
            Err(e) => return hole_budget_fail(e),
        };
        let mut intervals = Vec::new();
        for nu in 1..=numax {
            match holes::hole_interval(&g, nu, lmax, budget) {
                Ok(i) => intervals.push(json!([nu, i.map(|i| i.t)])),
                Err(e) => return hole_budget_fail(e),
            }
        }
        let report = json!({
            "schema_version": SCHEMA_VERSION,
            "input": name,
            "n": g.n(),
            "m": g.edges().len(),
            "triangle_free": g.is_triangle_free(),
            "girth": girth_json(&g),
            "chi": chi,
            "chi_rho": chi_rho_table,
            "spectrum": spectrum.lengths(),
            "spectrum_complete": spectrum.complete,
            "nu_intervals": intervals,
            "wall_ms": start.elapsed().as_millis() as u64,
        });
        println!("{report}");
    }
    EXIT_OK
}

fn budget_fail(e: ChromaError) -> i32 {
    eprintln!("holescope: {e}");
    match e {
        ChromaError::BudgetExhausted(_) => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn hole_budget_fail(e: holes::HoleError) -> i32 {
    eprintln!("holescope: {e}");
    EXIT_BUDGET
}

fn verify(graph_path: &str, cert_path: &str) -> i32 {
    let text = match std::fs::read_to_string(graph_path) {
        Ok(t) => t,
        Err(e) => return fail(format!("cannot read {graph_path}: {e}")),
    };
    let Some(line) = text.lines().find(|l| !l.trim().is_empty()) else {
        return fail(format!("{graph_path}: no graph6 line"));
    };
    let g = match parse_graph6(line.trim()) {
        Ok(g) => g,
        Err(e) => return fail(format!("{graph_path}: {e}")),
    };
    let cert_text = match std::fs::read_to_string(cert_path) {
        Ok(t) => t,
        Err(e) => return fail(format!("cannot read {cert_path}: {e}")),
    };
    let cert: Certificate = match serde_json::from_str(&cert_text) {
        Ok(c) => c,
        Err(e) => return fail(format!("{cert_path}: schema mismatch: {e}")),
    };
    let violations = cert.verify(&g);
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "kind": cert.kind_name(),
        "graph": graph_path,
        "violations": violations,
        "valid": violations.is_empty(),
    });
    println!("{report}");
    if violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    }
}

fn construct(procedure: Procedure, input: &InputArgs, ell: Option<usize>) -> i32 {
    let graphs = match read_graphs(input) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let mut worst = EXIT_OK;
    for (name, g) in graphs {
        let (label, result) = match procedure {
            Procedure::FiveHole => ("five_hole", constructions::find_5_hole(&g)),
            Procedure::SixHole => ("six_hole", constructions::find_6_hole(&g)),
            Procedure::EllHole => {
                let Some(ell) = ell else { return fail("ell-hole needs --ell") };
                ("ell_hole", constructions::find_ell_hole_c4free(&g, ell))
            }
            Procedure::Levelling => {
                match constructions::build_levelling(&g) {
                    Ok(l) => {
                        let ok = verify_levelling(&g, &l).is_empty();
                        let report = json!({
                            "schema_version": SCHEMA_VERSION,
                            "input": name,
                            "procedure": "levelling",
                            "outcome": "success",
                            "levels": l.levels,
                            "verified": ok,
                        });
                        println!("{report}");
                        if !ok {
                            worst = worst.max(EXIT_VIOLATIONS);
                        }
                        continue;
                    }
                    Err(e) => return fail(e),
                }
            }
        };
        match result {
            Ok(Outcome::Success(w)) => {
                let report = json!({
                    "schema_version": SCHEMA_VERSION,
                    "input": name,
                    "procedure": label,
                    "outcome": "success",
                    "witness": w,
                });
                println!("{report}");
            }
            Ok(Outcome::ThresholdNotMet { stage, detail }) => {
                let report = json!({
                    "schema_version": SCHEMA_VERSION,
                    "input": name,
                    "procedure": label,
                    "outcome": "threshold_not_met",
                    "stage": stage,
                    "detail": detail,
                });
                println!("{report}");
            }
            Ok(Outcome::BudgetExhausted) => {
                eprintln!("holescope: {name}: budget exhausted");
                return EXIT_BUDGET;
            }
            Err(ConstructionError::Chroma(ChromaError::BudgetExhausted(n))) => {
                eprintln!("holescope: {name}: budget exhausted after {n} nodes");
                return EXIT_BUDGET;
            }
            Err(e) => return fail(format!("{name}: {e}")),
        }
    }
    worst
}

fn generate(spec: &str) -> i32 {
    let spec: FamilySpec = match spec.parse() {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    match spec.generate() {
        Ok(g) => {
            println!("{}", emit_graph6(&g));
            EXIT_OK
        }
        Err(e) => fail(e),
    }
}

fn corpus_graphs(seed: u64) -> Vec<(String, Graph)> {
    let mut graphs: Vec<(String, Graph)> = (4..=12)
        .map(|n| (format!("cycle{n}"), holescope::graph::cycle(n)))
        .collect();
    graphs.push(("petersen".into(), generators::petersen()));
    graphs.push(("groetzsch".into(), generators::groetzsch()));
    let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
    let mut m = k2;
    for i in 1..=3 {
        m = generators::mycielski(&m);
        graphs.push((format!("mycielski{i}"), m.clone()));
    }
    for s in 0..10 {
        graphs.push((
            format!("rtf20-{}", seed + s),
            generators::random_triangle_free(20, seed + s),
        ));
    }
    graphs
}

fn corpus(seed: u64, lmax: usize, budget: u64, json_lines: bool) -> i32 {
    let graphs = corpus_graphs(seed);
    let results = exec::map_collect(&graphs, |(name, g)| {
        let all: BTreeSet<usize> = g.vertices().collect();
        let chi = chroma::chi_of_set(g, &all)?;
        let spectrum = match holes::hole_spectrum(g, lmax, budget) {
            Ok(s) => s,
            Err(holes::HoleError::BudgetExhausted(n)) => {
                return Err(ChromaError::BudgetExhausted(n))
            }
        };
        let levelling_ok = constructions::build_levelling(g)
            .map(|l| {
                let base_chi = chroma::chi_of_set(g, l.base().unwrap()).unwrap_or(0);
                verify_levelling(g, &l).is_empty() && 2 * base_chi >= chi
            })
            .unwrap_or(false);
        Ok((name.clone(), g.n(), g.edges().len(), chi, g.girth(), spectrum, levelling_ok))
    });
    let mut all_ok = true;
    if !json_lines {
        println!("name,n,m,chi,girth,spectrum,levelling_ok");
    }
    for res in results {
        let (name, n, m, chi, girth, spectrum, levelling_ok) = match res {
            Ok(row) => row,
            Err(e) => return budget_fail(e),
        };
        all_ok &= levelling_ok;
        let lengths = spectrum.lengths();
        if json_lines {
            let report = json!({
                "schema_version": SCHEMA_VERSION,
                "name": name,
                "n": n,
                "m": m,
                "chi": chi,
                "girth": match girth { Distance::Finite(d) => json!(d), Distance::Infinite => serde_json::Value::Null },
                "spectrum": lengths,
                "levelling_ok": levelling_ok,
            });
            println!("{report}");
        } else {
            let spec_str =
                lengths.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(";");
            println!("{name},{n},{m},{chi},{girth},{spec_str},{levelling_ok}");
        }
    }
    if all_ok {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    }
}
