use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::nu::nu_unchecked;
use super::paths::{enumerate_paths, face_chains, swap_chain, MonotonePath};
use crate::error::{Error, Result};
use crate::orientation::Orientation;

/// An edge of the flip graph between nodes `a < b`, labeled by the 2-face
/// the flip goes across.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FlipEdge {
    pub a: usize,
    pub b: usize,
    pub face: usize,
}

/// The graph of monotone paths under polygon flips. Nodes are indexed in
/// lexicographic path order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlipGraph {
    paths: Vec<MonotonePath>,
    edges: Vec<FlipEdge>,
    #[serde(skip)]
    adjacency: Vec<Vec<(usize, usize)>>,
    #[serde(skip)]
    index: HashMap<MonotonePath, usize>,
}

impl FlipGraph {
    /// Assembles a graph from nodes and labeled edges. Paths are put into
    /// canonical order and the edges renumbered; duplicate edges collapse.
    pub fn from_parts(paths: Vec<MonotonePath>, edges: impl IntoIterator<Item = (MonotonePath, MonotonePath, usize)>) -> Result<Self> {
        let mut paths = paths;
        paths.sort();
        paths.dedup();
        let index: HashMap<MonotonePath, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut list = Vec::new();
        for (p, q, face) in edges {
            let (Some(&i), Some(&j)) = (index.get(&p), index.get(&q)) else {
                return Err(Error::NotAPath(format!("edge endpoint {p} or {q} is not a node")));
            };
            if i == j {
                return Err(Error::NotAPath(format!("self-loop at {p}")));
            }
            list.push(FlipEdge { a: i.min(j), b: i.max(j), face });
        }
        list.sort();
        list.dedup();
        let mut adjacency = vec![Vec::new(); paths.len()];
        for e in &list {
            adjacency[e.a].push((e.b, e.face));
            adjacency[e.b].push((e.a, e.face));
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
        }
        Ok(Self { paths, edges: list, adjacency, index })
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &[MonotonePath] {
        &self.paths
    }

    pub fn path(&self, i: usize) -> &MonotonePath {
        &self.paths[i]
    }

    pub fn edges(&self) -> &[FlipEdge] {
        &self.edges
    }

    /// Neighbors of node `i` with the face label of each edge.
    pub fn neighbors(&self, i: usize) -> &[(usize, usize)] {
        &self.adjacency[i]
    }

    pub fn index_of(&self, path: &MonotonePath) -> Option<usize> {
        self.index.get(path).copied()
    }

    fn require(&self, path: &MonotonePath) -> Result<usize> {
        self.index_of(path).ok_or_else(|| Error::NotAPath(format!("{path} is not a node of the flip graph")))
    }

    /// Breadth-first distances from node `from`; `u32::MAX` marks unreachable.
    pub fn bfs(&self, from: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adjacency[v] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.bfs(0).iter().all(|&d| d != u32::MAX)
    }

    pub fn distance(&self, p: &MonotonePath, q: &MonotonePath) -> Result<usize> {
        let (i, j) = (self.require(p)?, self.require(q)?);
        match self.bfs(i)[j] {
            u32::MAX => Err(Error::Disconnected),
            d => Ok(d as usize),
        }
    }

    /// Exact eccentricity of every node by all-sources BFS.
    pub fn eccentricities(&self) -> Result<Vec<usize>> {
        (0..self.len())
            .into_par_iter()
            .map(|i| {
                let dist = self.bfs(i);
                match dist.iter().max() {
                    Some(&u32::MAX) => Err(Error::Disconnected),
                    Some(&d) => Ok(d as usize),
                    None => Ok(0),
                }
            })
            .collect()
    }

    pub fn diameter(&self) -> Result<usize> {
        Ok(self.eccentricities()?.into_iter().max().unwrap_or(0))
    }

    /// Graphviz rendering: node labels are hyphenated vertex sequences, edge
    /// labels face ids.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph flips {\n");
        for (i, p) in self.paths.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{p}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{} -- n{} [label=\"{}\"];", e.a, e.b, e.face);
        }
        out.push_str("}\n");
        out
    }

    /// `node,path,eccentricity` rows.
    pub fn eccentricities_csv(&self) -> Result<String> {
        let ecc = self.eccentricities()?;
        let mut out = String::from("node,path,eccentricity\n");
        for (i, (p, e)) in self.paths.iter().zip(ecc).enumerate() {
            let _ = writeln!(out, "{i},{p},{e}");
        }
        Ok(out)
    }
}

/// Builds the flip graph directly: for every path and every 2-face, swap a
/// contiguous face chain for the other one.
pub fn build_flip_graph(o: &Orientation, cap: u64) -> Result<FlipGraph> {
    if o.faces().is_empty() {
        return Err(Error::NoFaces);
    }
    let chains = (0..o.faces().len()).map(|id| face_chains(o, id)).collect::<Result<Vec<_>>>()?;
    let paths = enumerate_paths(o, cap)?;
    let index: HashMap<&[usize], usize> = paths.iter().enumerate().map(|(i, p)| (p.vertices(), i)).collect();
    let rank = o.ranks();
    let mut edges = Vec::new();
    // each edge is found from its chain-`a` side only
    for p in &paths {
        for (face, (a, b)) in chains.iter().enumerate() {
            let Some(q) = swap_chain(p.vertices(), a, b, rank) else { continue };
            let j = index[q.as_slice()];
            edges.push((p.clone(), paths[j].clone(), face));
        }
    }
    let g = FlipGraph::from_parts(paths, edges)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(g)
}

/// Applies flips across the listed faces in order.
pub fn verify_flip_walk(o: &Orientation, start: &MonotonePath, faces: &[usize]) -> Result<MonotonePath> {
    start.check(o)?;
    let rank = o.ranks();
    let mut current = start.vertices().to_vec();
    for (step, &face) in faces.iter().enumerate() {
        let (a, b) = face_chains(o, face).map_err(|_| Error::IllegalFlip(step))?;
        current = swap_chain(&current, &a, &b, rank)
            .or_else(|| swap_chain(&current, &b, &a, rank))
            .ok_or(Error::IllegalFlip(step))?;
    }
    Ok(MonotonePath::from_vec_unchecked(current))
}

/// Outcome of checking `d(γ, γ') <= ν(γ, γ') · f_2 / 2` over path pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceBoundReport {
    pub n_paths: usize,
    pub f2: usize,
    pub pairs_checked: u64,
    pub sampled: bool,
    pub seed: Option<u64>,
    pub violations: u64,
    /// Largest `2d / (ν f_2)` seen, as an exact fraction `num/den`.
    pub max_ratio: String,
    pub worst_pair: Option<(MonotonePath, MonotonePath)>,
    pub worst_distance: usize,
    pub worst_nu: usize,
    pub max_nu: usize,
}

impl DistanceBoundReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Pairs are checked exhaustively up to this many paths, sampled above.
pub const EXHAUSTIVE_LIMIT: usize = 2000;
pub const SAMPLE_PAIRS: usize = 100_000;

pub fn check_distance_bound(o: &Orientation, g: &FlipGraph, seed: u64) -> Result<DistanceBoundReport> {
    if o.dim() != 3 {
        return Err(Error::NotDim3(o.dim()));
    }
    let n = g.len();
    let f2 = o.faces().len();
    let sampled = n > EXHAUSTIVE_LIMIT;
    // pairs grouped by their first node so each group needs one BFS
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLE_PAIRS {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            groups[i].push(j);
        }
    } else {
        for (i, group) in groups.iter_mut().enumerate() {
            group.extend(i + 1..n);
        }
    }

    #[derive(Default)]
    struct Acc {
        pairs: u64,
        violations: u64,
        // worst ratio 2d / (ν f2) kept as (2d, ν f2, i, j, d, ν)
        worst: Option<(u64, u64, usize, usize, usize, usize)>,
        max_nu: usize,
    }
    let better = |cand: (u64, u64), best: Option<(u64, u64)>| match best {
        None => true,
        Some((bn, bd)) => cand.0 * bd > bn * cand.1,
    };

    let acc = groups
        .par_iter()
        .enumerate()
        .filter(|(_, js)| !js.is_empty())
        .map(|(i, js)| -> Result<Acc> {
            let dist = g.bfs(i);
            let mut acc = Acc::default();
            for &j in js {
                let d = match dist[j] {
                    u32::MAX => return Err(Error::Disconnected),
                    d => d as usize,
                };
                let nu = nu_unchecked(o, g.path(i), g.path(j));
                acc.pairs += 1;
                acc.max_nu = acc.max_nu.max(nu);
                let (num, den) = (2 * d as u64, (nu * f2) as u64);
                if num > den {
                    acc.violations += 1;
                }
                if better((num, den), acc.worst.map(|w| (w.0, w.1))) {
                    acc.worst = Some((num, den, i, j, d, nu));
                }
            }
            Ok(acc)
        })
        .try_reduce(Acc::default, |mut x, y| {
            x.pairs += y.pairs;
            x.violations += y.violations;
            x.max_nu = x.max_nu.max(y.max_nu);
            if let Some(w) = y.worst {
                let take = match x.worst {
                    None => true,
                    // deterministic tie-break on the pair indices
                    Some(v) => better((w.0, w.1), Some((v.0, v.1))) || (w.0 * v.1 == v.0 * w.1 && (w.2, w.3) < (v.2, v.3)),
                };
                if take {
                    x.worst = Some(w);
                }
            }
            Ok(x)
        })?;

    let (max_ratio, worst_pair, worst_distance, worst_nu) = match acc.worst {
        Some((num, den, i, j, d, nu)) => {
            let r = num_rational::Ratio::new(num, den.max(1));
            (r.to_string(), Some((g.path(i).clone(), g.path(j).clone())), d, nu)
        }
        None => ("0".to_string(), None, 0, 0),
    };
    Ok(DistanceBoundReport {
        n_paths: n,
        f2,
        pairs_checked: acc.pairs,
        sampled,
        seed: sampled.then_some(seed),
        violations: acc.violations,
        max_ratio,
        worst_pair,
        worst_distance,
        worst_nu,
        max_nu: acc.max_nu,
    })
}
