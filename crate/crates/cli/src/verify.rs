//! The `verify` harness: runs checks over family instances in parallel and
//! prints one row per instance and check, in canonical order.

use std::fmt::Write as _;

use monopath::counting::{check_bounds, count_arborescences_oracle, diameter_checks, BoundCheck};
use monopath::fibers::check_isomorphism;
use monopath::flips::{build_flip_graph, check_distance_bound, xn_subset_model, FlipGraph};
use monopath::{Error, FamilySpec, Orientation, Rational};
use rayon::prelude::*;
use serde::Serialize;

use crate::{Failure, Global};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Counts,
    Bounds,
    Flipgraph,
    Diameter,
    Fibers,
    DistanceBound,
    SubsetModel,
}

impl Check {
    const ALL: [Check; 7] =
        [Check::Counts, Check::Bounds, Check::Flipgraph, Check::Diameter, Check::Fibers, Check::DistanceBound, Check::SubsetModel];

    fn name(&self) -> &'static str {
        match self {
            Check::Counts => "counts",
            Check::Bounds => "bounds",
            Check::Flipgraph => "flipgraph",
            Check::Diameter => "diameter",
            Check::Fibers => "fibers",
            Check::DistanceBound => "distance_bound",
            Check::SubsetModel => "subset_model",
        }
    }

    fn parse_list(text: &str) -> Result<Vec<Check>, Failure> {
        let mut out = Vec::new();
        for word in text.split(',').map(str::trim).filter(|w| !w.is_empty()) {
            if word == "all" {
                out.extend(Check::ALL);
                continue;
            }
            let c = Check::ALL.into_iter().find(|c| c.name() == word).ok_or_else(|| Failure::Input(format!("unknown check `{word}`")))?;
            out.push(c);
        }
        if out.is_empty() {
            return Err(Failure::Input("no checks given".into()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// A proved statement failed on this instance.
    Violation,
    /// Conjecture row, reported only.
    ConjectureHolds,
    ConjectureFails,
    Skipped,
    NotApplicable,
}

impl Status {
    fn label(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "VIOLATION",
            Status::ConjectureHolds => "conj: holds",
            Status::ConjectureFails => "conj: fails",
            Status::Skipped => "skipped",
            Status::NotApplicable => "n/a",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub instance: String,
    pub check: String,
    pub detail: String,
    pub status: Status,
}

fn parse_values(token: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Input(format!("bad parameter `{token}`: expected an integer or a range a..b"));
    match token.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (a.parse::<usize>().map_err(|_| bad())?, b.trim_start_matches('=').parse::<usize>().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![token.parse().map_err(|_| bad())?]),
    }
}

/// Expands `family a..b [c..d]` into the grid of instances.
pub fn expand(family: &str, params: &[String]) -> Result<Vec<FamilySpec>, Failure> {
    let mut grid: Vec<Vec<usize>> = vec![Vec::new()];
    for token in params {
        let values = parse_values(token)?;
        grid = grid.into_iter().flat_map(|prefix| values.iter().map(move |&v| [prefix.clone(), vec![v]].concat())).collect();
    }
    grid.iter().map(|p| FamilySpec::from_name(family, p).map_err(Failure::from)).collect()
}

/// The shipped suite run by `verify all`.
pub fn full_suite() -> Vec<(FamilySpec, Vec<Check>)> {
    let every = Check::ALL.to_vec();
    let mut out = Vec::new();
    let mut add = |specs: Vec<FamilySpec>, checks: &[Check]| out.extend(specs.into_iter().map(|s| (s, checks.to_vec())));
    add((2..=5).map(FamilySpec::Simplex).collect(), &every);
    add((4..=12).map(FamilySpec::StackedX).collect(), &every);
    add((3..=8).map(FamilySpec::Prism).collect(), &every);
    add((3..=8).map(FamilySpec::WedgeVertex).collect(), &every);
    add((3..=8).map(FamilySpec::WedgeEdge).collect(), &every);
    add((3..=12).map(FamilySpec::Pyramid).collect(), &every);
    add((3..=5).flat_map(|d| (3..=6).map(move |k| FamilySpec::MultiPyramid(d, k))).collect(), &every);
    add((2..=5).map(FamilySpec::Hypercube).collect(), &every);
    add((4..=12).map(FamilySpec::CompleteDag).collect(), &[Check::Counts, Check::Bounds, Check::Flipgraph]);
    out
}

fn bound_row(instance: &str, b: &BoundCheck) -> Row {
    let params: Vec<String> = b.params.iter().map(usize::to_string).collect();
    let status = match (b.conjecture, b.satisfied) {
        (false, true) => Status::Ok,
        (false, false) => Status::Violation,
        (true, true) => Status::ConjectureHolds,
        (true, false) => Status::ConjectureFails,
    };
    Row {
        instance: instance.to_string(),
        check: format!("bounds:{}({})", b.bound, params.join(",")),
        detail: format!("{:?} {} {} {}", b.statistic, b.observed, b.relation.symbol(), b.value).to_lowercase(),
        status,
    }
}

fn run_instance(spec: FamilySpec, checks: &[Check], cap: u64, oracle_cap: u64, seed: u64) -> Vec<Row> {
    let name = spec.to_string();
    let row = |check: &str, detail: String, status: Status| Row { instance: name.clone(), check: check.to_string(), detail, status };
    let o: Orientation = match spec.canonical_orientation::<Rational>() {
        Ok(o) => o,
        Err(e) => return vec![row("setup", e.to_string(), Status::Violation)],
    };
    let three_dim = o.dim() == 3 && !o.faces().is_empty();
    let mut rows = Vec::new();
    let mut graph: Option<Result<FlipGraph, Error>> = None;
    let flip_graph = |graph: &mut Option<Result<FlipGraph, Error>>| graph.get_or_insert_with(|| build_flip_graph(&o, cap)).clone();

    for &check in checks {
        match check {
            Check::Counts => match check_bounds(&o) {
                Ok(r) => {
                    let (oracle, agrees) = match count_arborescences_oracle(&o, oracle_cap) {
                        Ok(t) => (t.to_string(), t == r.tau),
                        Err(_) => ("skipped".to_string(), true),
                    };
                    let ok = r.mu == r.mu_lemma && agrees;
                    rows.push(row(
                        "counts",
                        format!("n={} mu={} mu_lemma={} tau={} tau_oracle={oracle}", r.n_vertices, r.mu, r.mu_lemma, r.tau),
                        if ok { Status::Ok } else { Status::Violation },
                    ));
                }
                Err(e) => rows.push(row("counts", e.to_string(), Status::Violation)),
            },
            Check::Bounds => match check_bounds(&o) {
                Ok(r) => rows.extend(r.bounds_checked.iter().map(|b| bound_row(&name, b))),
                Err(e) => rows.push(row("bounds", e.to_string(), Status::Violation)),
            },
            Check::Flipgraph => {
                if o.faces().is_empty() {
                    rows.push(row("flipgraph", "no 2-faces".into(), Status::NotApplicable));
                    continue;
                }
                match flip_graph(&mut graph) {
                    Ok(g) => {
                        let mu = monopath::count_paths_dp(&o).map(|m| m.to_string()).unwrap_or_default();
                        let ok = g.len().to_string() == mu && g.is_connected();
                        rows.push(row(
                            "flipgraph",
                            format!("nodes={} edges={} connected={}", g.len(), g.edges().len(), g.is_connected()),
                            if ok { Status::Ok } else { Status::Violation },
                        ));
                    }
                    Err(e @ Error::CapExceeded { .. }) => rows.push(row("flipgraph", e.to_string(), Status::Skipped)),
                    Err(e) => rows.push(row("flipgraph", e.to_string(), Status::Violation)),
                }
            }
            Check::Diameter => {
                if !three_dim {
                    rows.push(row("diameter", "needs a 3-polytope".into(), Status::NotApplicable));
                    continue;
                }
                match flip_graph(&mut graph).and_then(|g| g.diameter()) {
                    Ok(d) => {
                        rows.push(row("diameter", format!("diameter={d}"), Status::Ok));
                        let stacked = matches!(spec, FamilySpec::StackedX(_));
                        match diameter_checks(o.n_vertices(), d, stacked) {
                            Ok(checks) => rows.extend(checks.iter().map(|b| bound_row(&name, b))),
                            Err(e) => rows.push(row("diameter", e.to_string(), Status::Violation)),
                        }
                    }
                    Err(e @ Error::CapExceeded { .. }) => rows.push(row("diameter", e.to_string(), Status::Skipped)),
                    Err(e) => rows.push(row("diameter", e.to_string(), Status::Violation)),
                }
            }
            Check::Fibers => {
                if !three_dim {
                    rows.push(row("fibers", "needs a 3-polytope".into(), Status::NotApplicable));
                    continue;
                }
                match check_isomorphism(&o, cap) {
                    Ok(r) => rows.push(row(
                        "fibers",
                        format!("limit_nodes={} limit_edges={} isomorphic={}", r.limit_nodes, r.limit_edges, r.isomorphic()),
                        if r.isomorphic() && r.interval_condition { Status::Ok } else { Status::Violation },
                    )),
                    Err(e @ Error::CapExceeded { .. }) => rows.push(row("fibers", e.to_string(), Status::Skipped)),
                    Err(e) => rows.push(row("fibers", e.to_string(), Status::Violation)),
                }
            }
            Check::DistanceBound => {
                if !three_dim {
                    rows.push(row("distance_bound", "needs a 3-polytope".into(), Status::NotApplicable));
                    continue;
                }
                match flip_graph(&mut graph).and_then(|g| check_distance_bound(&o, &g, seed)) {
                    Ok(r) => rows.push(row(
                        "distance_bound",
                        format!(
                            "pairs={}{} violations={} max_ratio={} max_nu={}",
                            r.pairs_checked,
                            if r.sampled { format!(" (sampled, seed {seed})") } else { String::new() },
                            r.violations,
                            r.max_ratio,
                            r.max_nu
                        ),
                        if r.passed() { Status::Ok } else { Status::Violation },
                    )),
                    Err(e @ Error::CapExceeded { .. }) => rows.push(row("distance_bound", e.to_string(), Status::Skipped)),
                    Err(e) => rows.push(row("distance_bound", e.to_string(), Status::Violation)),
                }
            }
            Check::SubsetModel => {
                let FamilySpec::StackedX(n) = spec else {
                    rows.push(row("subset_model", "stacked-x only".into(), Status::NotApplicable));
                    continue;
                };
                match (xn_subset_model(n), flip_graph(&mut graph)) {
                    (Ok(m), Ok(g)) => {
                        let iso = m.is_isomorphic_to(&g);
                        rows.push(row(
                            "subset_model",
                            format!("nodes={} edges={} isomorphic={iso}", m.nodes().len(), m.edges().len()),
                            if iso { Status::Ok } else { Status::Violation },
                        ));
                    }
                    (_, Err(e @ Error::CapExceeded { .. })) => rows.push(row("subset_model", e.to_string(), Status::Skipped)),
                    (Err(e), _) | (_, Err(e)) => rows.push(row("subset_model", e.to_string(), Status::Violation)),
                }
            }
        }
    }
    rows
}

pub fn run_jobs(jobs: &[(FamilySpec, Vec<Check>)], cap: u64, oracle_cap: u64, seed: u64) -> Vec<Row> {
    // par_iter + collect keeps input order whatever the scheduling
    let per_instance: Vec<Vec<Row>> = jobs.par_iter().map(|(spec, checks)| run_instance(*spec, checks, cap, oracle_cap, seed)).collect();
    per_instance.into_iter().flatten().collect()
}

pub fn render(rows: &[Row]) -> String {
    let w0 = rows.iter().map(|r| r.instance.len()).max().unwrap_or(0).max("instance".len());
    let w1 = rows.iter().map(|r| r.check.len()).max().unwrap_or(0).max("check".len());
    let w2 = rows.iter().map(|r| r.detail.len()).max().unwrap_or(0).max("result".len());
    let mut out = String::new();
    let _ = writeln!(out, "{:<w0$}  {:<w1$}  {:<w2$}  status", "instance", "check", "result");
    for r in rows {
        let _ = writeln!(out, "{:<w0$}  {:<w1$}  {:<w2$}  {}", r.instance, r.check, r.detail, r.status.label());
    }
    out
}

pub fn cmd_verify(g: &Global, family: &str, params: &[String], checks: &str) -> Result<(), Failure> {
    if g.cap == 0 || g.oracle_cap == 0 {
        return Err(Failure::Input("caps must be positive".into()));
    }
    let jobs: Vec<(FamilySpec, Vec<Check>)> = if family == "all" {
        if !params.is_empty() {
            return Err(Failure::Input("`verify all` takes no parameters".into()));
        }
        full_suite()
    } else {
        let checks = Check::parse_list(checks)?;
        expand(family, params)?.into_iter().map(|s| (s, checks.clone())).collect()
    };
    let rows = run_jobs(&jobs, g.cap, g.oracle_cap, g.seed);
    if g.json {
        println!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
    } else {
        print!("{}", render(&rows));
    }
    let violations = rows.iter().filter(|r| r.status == Status::Violation).count();
    let conj_fail = rows.iter().filter(|r| r.status == Status::ConjectureFails).count();
    if !g.json {
        println!("{} rows, {violations} violations, {conj_fail} conjecture rows failing", rows.len());
    }
    if violations > 0 {
        return Err(Failure::Violation(format!("{violations} proved checks failed")));
    }
    Ok(())
}
