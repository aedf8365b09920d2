//! `monopath`: generate polytope families, count monotone paths and
//! arborescences, build flip graphs and fiber diagrams, and verify the
//! extremal bounds over families.

mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use monopath::counting::{check_bounds, count_arborescences_oracle, diameter_checks};
use monopath::fibers::{check_isomorphism, fiber_diagram};
use monopath::flips::{build_flip_graph, check_distance_bound};
use monopath::io::{functional_to_json, parse_functional, parse_polytope, polytope_to_json};
use monopath::{Error, FamilySpec, Orientation, Rational, RationalPolytope};
use serde_json::json;

pub const DEFAULT_CAP: u64 = 10_000;
pub const DEFAULT_ORACLE_CAP: u64 = 100_000;

#[derive(Parser)]
#[command(name = "monopath", version, about = "Monotone paths, arborescences and flip graphs of LP-oriented polytopes")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write a Graphviz rendering to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub dot: Option<PathBuf>,
    /// Upper limit on the number of monotone paths for flip-graph work.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Upper limit on the choice-function space for the arborescence oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: u64,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Print the JSON document of a family member.
    Gen {
        family: String,
        params: Vec<usize>,
        /// Also write the canonical functional here.
        #[arg(long, value_name = "PATH")]
        functional: Option<PathBuf>,
        /// Write the polytope here instead of stdout.
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Count paths and arborescences and check the bounds that apply.
    Count { polytope: PathBuf, functional: PathBuf },
    /// Build the flip graph of monotone paths.
    Flipgraph {
        polytope: PathBuf,
        functional: PathBuf,
        #[arg(long)]
        diameter: bool,
        /// Check d <= nu * f2 / 2 over path pairs.
        #[arg(long)]
        check_dist_bound: bool,
        /// Rebuild the graph as an inverse limit and compare.
        #[arg(long)]
        via_fibers: bool,
        /// Write node eccentricities as CSV.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Print the fiber diagram of a 3-polytope.
    Fibers { polytope: PathBuf, functional: PathBuf },
    /// Run checks over family parameter ranges, e.g. `verify prism 3..8`,
    /// or `verify all` for the shipped suite.
    Verify {
        family: String,
        /// Integers or inclusive ranges `a..b`.
        params: Vec<String>,
        /// Comma-separated subset of counts,bounds,flipgraph,diameter,fibers,distance_bound,subset_model.
        #[arg(long, default_value = "counts,bounds")]
        checks: String,
    },
}

/// Failures mapped to exit codes: violations of proved bounds exit 1,
/// everything about bad input exits 2.
pub enum Failure {
    Violation(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(polytope: &Path, functional: &Path) -> Result<(RationalPolytope, Orientation), Failure> {
    let at = |path: &Path, e: Error| Failure::Input(format!("{}: {e}", path.display()));
    let p = parse_polytope::<Rational>(&read(polytope)?).map_err(|e| at(polytope, e))?;
    let f = parse_functional::<Rational>(&read(functional)?).map_err(|e| at(functional, e))?;
    let o = Orientation::new(&p, &f).map_err(|e| at(functional, e))?;
    Ok((p, o))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json values serialize"));
}

fn cmd_gen(family: &str, params: &[usize], functional: Option<&Path>, output: Option<&Path>) -> Result<(), Failure> {
    let spec = FamilySpec::from_name(family, params)?;
    let (p, f) = spec.make::<Rational>()?;
    let text = polytope_to_json(&p);
    match output {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    if let Some(path) = functional {
        write(path, &functional_to_json(&f))?;
    }
    Ok(())
}

fn cmd_count(g: &Global, polytope: &Path, functional: &Path) -> Result<(), Failure> {
    let (_, o) = load(polytope, functional)?;
    let report = check_bounds(&o)?;
    let oracle = match count_arborescences_oracle(&o, g.oracle_cap) {
        Ok(t) => Some(t),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let oracle_agrees = oracle.as_ref().map(|t| *t == report.tau);
    if g.json {
        let mut value = serde_json::to_value(&report).expect("report serializes");
        value["tau_oracle"] = json!(oracle.as_ref().map(|t| t.to_string()));
        print_json(&value);
    } else {
        print!("{}", report.to_table());
        match &oracle {
            Some(t) => println!("tau oracle  {t} ({})", if oracle_agrees == Some(true) { "agrees" } else { "DISAGREES" }),
            None => println!("tau oracle  skipped (choice space above {})", g.oracle_cap),
        }
    }
    if report.mu != report.mu_lemma || oracle_agrees == Some(false) {
        return Err(Failure::Violation("path or arborescence counts disagree between methods".into()));
    }
    let violations = report.violations();
    if !violations.is_empty() {
        let names: Vec<String> = violations.iter().map(|b| b.bound.to_string()).collect();
        return Err(Failure::Violation(format!("proved bound violated: {}", names.join(", "))));
    }
    Ok(())
}

fn cmd_flipgraph(g: &Global, files: (&Path, &Path), diameter: bool, dist: bool, via_fibers: bool, csv: Option<&Path>) -> Result<(), Failure> {
    let (_, o) = load(files.0, files.1)?;
    let graph = build_flip_graph(&o, g.cap)?;
    let mut out = json!({ "nodes": graph.len(), "edges": graph.edges().len(), "connected": graph.is_connected() });
    let mut violation = None;
    if diameter {
        let d = graph.diameter()?;
        out["diameter"] = json!(d);
        if o.dim() == 3 {
            let rows = diameter_checks(o.n_vertices(), d, false)?;
            if let Some(bad) = rows.iter().find(|r| r.is_violation()) {
                violation = Some(format!("diameter {d} violates {}", bad.bound));
            }
            out["diameter_bounds"] = serde_json::to_value(&rows).expect("rows serialize");
        }
    }
    if dist {
        let r = check_distance_bound(&o, &graph, g.seed)?;
        if !r.passed() {
            violation = Some(format!("distance bound fails on {} pairs", r.violations));
        }
        out["distance_bound"] = serde_json::to_value(&r).expect("report serializes");
    }
    if via_fibers {
        let r = check_isomorphism(&o, g.cap)?;
        if !r.isomorphic() {
            violation = Some("inverse limit is not isomorphic to the flip graph".into());
        }
        out["isomorphic"] = json!(r.isomorphic());
        out["via_fibers"] = serde_json::to_value(&r).expect("report serializes");
    }
    if let Some(path) = &g.dot {
        write(path, &graph.to_dot())?;
    }
    if let Some(path) = csv {
        write(path, &graph.eccentricities_csv()?)?;
    }
    if g.json {
        print_json(&out);
    } else {
        println!("nodes: {}", graph.len());
        println!("edges: {}", graph.edges().len());
        println!("connected: {}", graph.is_connected());
        if let Some(d) = out.get("diameter") {
            println!("diameter: {d}");
            for row in out.get("diameter_bounds").and_then(|v| v.as_array()).into_iter().flatten() {
                println!("  {} {} {}: {}", row["bound"].as_str().unwrap_or(""), row["relation"].as_str().unwrap_or(""), row["value"].as_str().unwrap_or(""), row["satisfied"]);
            }
        }
        if let Some(r) = out.get("distance_bound") {
            println!(
                "distance bound: {} pairs{}, violations {}, max ratio {}",
                r["pairs_checked"],
                if r["sampled"] == json!(true) { " (sampled)" } else { "" },
                r["violations"],
                r["max_ratio"].as_str().unwrap_or("")
            );
        }
        if let Some(iso) = out.get("isomorphic") {
            println!("isomorphic: {iso}");
        }
    }
    match violation {
        Some(v) => Err(Failure::Violation(v)),
        None => Ok(()),
    }
}

fn cmd_fibers(g: &Global, polytope: &Path, functional: &Path) -> Result<(), Failure> {
    let (_, o) = load(polytope, functional)?;
    let d = fiber_diagram(&o)?;
    if let Some(path) = &g.dot {
        write(path, &d.to_dot())?;
    }
    if g.json {
        println!("{}", d.to_json());
        return Ok(());
    }
    for (j, slab) in d.slabs.iter().enumerate() {
        println!("G_{{{j},{}}}: {} nodes, {} edges, cycle: {}", j + 1, slab.nodes.len(), slab.edges.len(), slab.is_single_cycle());
        if let Some(level) = d.levels.get(j) {
            println!("G_{}: {} nodes, {} edges, cycle: {}", j + 1, level.nodes.len(), level.edges.len(), level.is_single_cycle());
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Gen { family, params, functional, output } => cmd_gen(family, params, functional.as_deref(), output.as_deref()),
        Command::Count { polytope, functional } => cmd_count(g, polytope, functional),
        Command::Flipgraph { polytope, functional, diameter, check_dist_bound, via_fibers, csv } => {
            cmd_flipgraph(g, (polytope, functional), *diameter, *check_dist_bound, *via_fibers, csv.as_deref())
        }
        Command::Fibers { polytope, functional } => cmd_fibers(g, polytope, functional),
        Command::Verify { family, params, checks } => verify::cmd_verify(g, family, params, checks),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
