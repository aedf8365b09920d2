//! Fibers of the functional over a 3-polytope and the inverse limit of the
//! diagram they form.
//!
//! Everything is combinatorial: a generic functional puts no vertex inside
//! an open slab, so each 2-face spanning a level meets it in exactly two
//! boundary elements, and those pairs are the fiber edges.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;

use crate::counting::count_paths_dp;
use crate::error::{Error, Result};
use crate::flips::{build_flip_graph, FlipGraph, MonotonePath};
use crate::orientation::Orientation;

/// Which level a fiber sits at, by vertex rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FiberKind {
    /// Open slab between ranks `i` and `i + 1`.
    AtSlab(usize),
    /// The level of the rank-`i` vertex.
    AtVertex(usize),
}

/// A node of a fiber graph: a polytope edge crossing the level, or the
/// vertex lying on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FiberNode {
    Edge(usize, usize),
    Vertex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FiberEdge {
    pub a: usize,
    pub b: usize,
    pub face: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberGraph {
    pub kind: FiberKind,
    pub nodes: Vec<FiberNode>,
    pub edges: Vec<FiberEdge>,
    #[serde(skip)]
    index: HashMap<FiberNode, usize>,
    #[serde(skip)]
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl FiberGraph {
    fn build(o: &Orientation, kind: FiberKind) -> Self {
        let rank = o.ranks();
        let crosses = |u: usize, w: usize| {
            let (lo, hi) = (rank[u].min(rank[w]), rank[u].max(rank[w]));
            match kind {
                FiberKind::AtSlab(i) => lo <= i && i < hi,
                FiberKind::AtVertex(i) => lo < i && i < hi,
            }
        };
        let node_of = |u: usize, w: usize| if rank[u] < rank[w] { FiberNode::Edge(u, w) } else { FiberNode::Edge(w, u) };

        let mut nodes: Vec<FiberNode> = o.skeleton().edges().iter().filter(|e| crosses(e[0], e[1])).map(|e| node_of(e[0], e[1])).collect();
        let on_level = match kind {
            FiberKind::AtVertex(i) => Some(o.vertex_at(i)),
            FiberKind::AtSlab(_) => None,
        };
        if let Some(v) = on_level {
            nodes.push(FiberNode::Vertex(v));
        }
        nodes.sort_unstable();
        let index: HashMap<FiberNode, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();

        let mut edges = Vec::new();
        for (face_id, face) in o.faces().iter().enumerate() {
            let len = face.len();
            let mut meets = Vec::new();
            for k in 0..len {
                let (u, w) = (face[k], face[(k + 1) % len]);
                if crosses(u, w) {
                    meets.push(index[&node_of(u, w)]);
                }
                if Some(u) == on_level {
                    // a vertex in the middle of the face's rank range
                    let prev = face[(k + len - 1) % len];
                    let middle = (rank[prev] < rank[u]) != (rank[w] < rank[u]);
                    if middle {
                        meets.push(index[&FiberNode::Vertex(u)]);
                    }
                }
            }
            match meets.len() {
                0 => {}
                2 => edges.push(FiberEdge { a: meets[0].min(meets[1]), b: meets[0].max(meets[1]), face: face_id }),
                k => panic!("face {face_id} meets level {kind:?} in {k} elements; orientation not admissible on it"),
            }
        }
        edges.sort_unstable();
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for e in &edges {
            adjacency[e.a].push((e.b, e.face));
            adjacency[e.b].push((e.a, e.face));
        }
        Self { kind, nodes, edges, index, adjacency }
    }

    pub fn index_of(&self, node: &FiberNode) -> Option<usize> {
        self.index.get(node).copied()
    }

    /// Face label of the fiber edge between two nodes, if there is one.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.adjacency[a].iter().find(|&&(w, _)| w == b).map(|&(_, f)| f)
    }

    pub fn neighbors(&self, a: usize) -> &[(usize, usize)] {
        &self.adjacency[a]
    }

    /// Connected and 2-regular on at least three nodes.
    pub fn is_single_cycle(&self) -> bool {
        if self.nodes.len() < 3 || self.adjacency.iter().any(|nb| nb.len() != 2) {
            return false;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn to_dot(&self) -> String {
        let name = match self.kind {
            FiberKind::AtSlab(i) => format!("slab_{i}_{}", i + 1),
            FiberKind::AtVertex(i) => format!("level_{i}"),
        };
        let mut out = format!("graph {name} {{\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let label = match n {
                FiberNode::Edge(u, w) => format!("{u}-{w}"),
                FiberNode::Vertex(v) => format!("v{v}"),
            };
            let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{} -- n{} [label=\"{}\"];", e.a, e.b, e.face);
        }
        out.push_str("}\n");
        out
    }
}

/// A node map between fiber graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialMap {
    pub source: FiberKind,
    pub target: FiberKind,
    pub node_map: Vec<usize>,
}

impl SimplicialMap {
    /// Every source edge goes to a target edge or to a single node.
    pub fn validate(&self, source: &FiberGraph, target: &FiberGraph) -> Result<()> {
        let complain = |why: String| Err(Error::InvalidSpec(format!("map {:?} -> {:?}: {why}", self.source, self.target)));
        if self.node_map.len() != source.nodes.len() {
            return complain("node map is not total".into());
        }
        if self.node_map.iter().any(|&t| t >= target.nodes.len()) {
            return complain("image outside the target".into());
        }
        for e in &source.edges {
            let (x, y) = (self.node_map[e.a], self.node_map[e.b]);
            if x != y && target.edge_between(x, y).is_none() {
                return complain(format!("edge {:?} -- {:?} lands on a non-edge", source.nodes[e.a], source.nodes[e.b]));
            }
        }
        Ok(())
    }

    /// Whether the map sends the edge `{a, b}` onto an edge rather than
    /// collapsing it.
    pub fn keeps(&self, a: usize, b: usize) -> bool {
        self.node_map[a] != self.node_map[b]
    }
}

/// `G_{0,1} → G_1 ← G_{1,2} → ⋯ ← G_{n-2,n-1}`.
///
/// `levels[i - 1]` is `G_i`; `alphas[i - 1]` maps `G_{i-1,i}` and
/// `betas[i - 1]` maps `G_{i,i+1}` into it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberDiagram {
    pub slabs: Vec<FiberGraph>,
    pub levels: Vec<FiberGraph>,
    pub alphas: Vec<SimplicialMap>,
    pub betas: Vec<SimplicialMap>,
}

pub fn fiber_diagram(o: &Orientation) -> Result<FiberDiagram> {
    if o.dim() != 3 {
        return Err(Error::NotDim3(o.dim()));
    }
    if o.faces().is_empty() || !o.validate_lp_admissible().passed() {
        return Err(Error::NotLpAdmissible);
    }
    let n = o.n_vertices();
    let slabs: Vec<FiberGraph> = (0..n - 1).map(|i| FiberGraph::build(o, FiberKind::AtSlab(i))).collect();
    let levels: Vec<FiberGraph> = (1..n - 1).map(|i| FiberGraph::build(o, FiberKind::AtVertex(i))).collect();
    let rank = o.ranks();
    let mut alphas = Vec::new();
    let mut betas = Vec::new();
    for i in 1..n - 1 {
        let target = &levels[i - 1];
        let v = o.vertex_at(i);
        let project = |node: &FiberNode| -> usize {
            let FiberNode::Edge(u, w) = *node else { unreachable!("slab fibers hold edges only") };
            if rank[u] == i || rank[w] == i {
                target.index_of(&FiberNode::Vertex(v)).unwrap()
            } else {
                target.index_of(node).unwrap()
            }
        };
        let alpha = SimplicialMap {
            source: FiberKind::AtSlab(i - 1),
            target: FiberKind::AtVertex(i),
            node_map: slabs[i - 1].nodes.iter().map(project).collect(),
        };
        let beta = SimplicialMap {
            source: FiberKind::AtSlab(i),
            target: FiberKind::AtVertex(i),
            node_map: slabs[i].nodes.iter().map(project).collect(),
        };
        alpha.validate(&slabs[i - 1], target)?;
        beta.validate(&slabs[i], target)?;
        alphas.push(alpha);
        betas.push(beta);
    }
    Ok(FiberDiagram { slabs, levels, alphas, betas })
}

impl FiberDiagram {
    pub fn n_slabs(&self) -> usize {
        self.slabs.len()
    }

    fn alpha(&self, i: usize, x: usize) -> usize {
        self.alphas[i - 1].node_map[x]
    }

    fn beta(&self, i: usize, x: usize) -> usize {
        self.betas[i - 1].node_map[x]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    /// One DOT graph per fiber, slabs and levels interleaved.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        for (j, slab) in self.slabs.iter().enumerate() {
            out.push_str(&slab.to_dot());
            if let Some(level) = self.levels.get(j) {
                out.push_str(&level.to_dot());
            }
        }
        out
    }

    /// Structural check of the adjacency condition: the slabs where `u` and
    /// `v` differ form a nonempty interval, the two are fiber-adjacent on
    /// each slab in it, and consecutive differing slabs map onto one edge of
    /// the level between them.
    pub fn limit_adjacent(&self, u: &[usize], v: &[usize]) -> bool {
        let differ: Vec<usize> = (0..u.len()).filter(|&j| u[j] != v[j]).collect();
        let (Some(&lo), Some(&hi)) = (differ.first(), differ.last()) else { return false };
        if hi - lo + 1 != differ.len() {
            return false;
        }
        (lo..=hi).all(|j| self.slabs[j].edge_between(u[j], v[j]).is_some())
            && (lo..hi).all(|j| self.alphas[j].keeps(u[j], v[j]) && self.betas[j].keeps(u[j + 1], v[j + 1]))
    }
}

/// The inverse limit: compatible node sequences, one node per slab, with
/// interval adjacency. Node sequences are stored as slab-node indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitGraph {
    pub nodes: Vec<Vec<usize>>,
    /// `(a, b, face)` with `a < b`; the face labels the first differing slab.
    pub edges: Vec<(usize, usize, usize)>,
}

pub fn inverse_limit(d: &FiberDiagram) -> LimitGraph {
    let m = d.n_slabs();
    // forward propagation: extend each compatible prefix by the slab nodes
    // whose β-image matches the α-image of the last entry
    let mut preimages: Vec<HashMap<usize, Vec<usize>>> = vec![HashMap::new()];
    for i in 1..m {
        let mut map: HashMap<usize, Vec<usize>> = HashMap::new();
        for x in 0..d.slabs[i].nodes.len() {
            map.entry(d.beta(i, x)).or_default().push(x);
        }
        preimages.push(map);
    }
    let mut nodes: Vec<Vec<usize>> = (0..d.slabs[0].nodes.len()).map(|x| vec![x]).collect();
    for (i, pre) in preimages.iter().enumerate().skip(1) {
        let mut next = Vec::with_capacity(nodes.len());
        for seq in nodes {
            let target = d.alpha(i, *seq.last().unwrap());
            for &x in pre.get(&target).map(Vec::as_slice).unwrap_or(&[]) {
                let mut s = seq.clone();
                s.push(x);
                next.push(s);
            }
        }
        nodes = next;
    }
    nodes.sort();
    let index: HashMap<&[usize], usize> = nodes.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();

    let mut edges = HashSet::new();
    for (ui, u) in nodes.iter().enumerate() {
        for lo in 0..m {
            for &(x, face) in d.slabs[lo].neighbors(u[lo]) {
                // entering the interval: the previous slab is shared, so the
                // change at `lo` must be invisible from the level below it
                if lo > 0 && d.beta(lo, x) != d.beta(lo, u[lo]) {
                    continue;
                }
                let mut v = u.clone();
                v[lo] = x;
                extend(d, u, &mut v, lo, face, &index, ui, &mut edges);
            }
        }
    }
    let mut edges: Vec<(usize, usize, usize)> = edges.into_iter().collect();
    edges.sort_unstable();
    LimitGraph { nodes, edges }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    d: &FiberDiagram,
    u: &[usize],
    v: &mut Vec<usize>,
    j: usize,
    face: usize,
    index: &HashMap<&[usize], usize>,
    ui: usize,
    edges: &mut HashSet<(usize, usize, usize)>,
) {
    let m = u.len();
    // close the interval at j
    if j + 1 == m || d.alpha(j + 1, v[j]) == d.beta(j + 1, u[j + 1]) {
        if let Some(&vi) = index.get(v.as_slice()) {
            if vi != ui {
                edges.insert((ui.min(vi), ui.max(vi), face));
            }
        }
    }
    // or keep going through level j + 1 along a non-collapsed edge
    if j + 1 < m && d.alphas[j].keeps(u[j], v[j]) {
        let want = d.alpha(j + 1, v[j]);
        for &(y, _) in d.slabs[j + 1].neighbors(u[j + 1]) {
            if d.beta(j + 1, y) == want && d.betas[j].keeps(u[j + 1], y) {
                let saved = v[j + 1];
                v[j + 1] = y;
                extend(d, u, v, j + 1, face, index, ui, edges);
                v[j + 1] = saved;
            }
        }
    }
}

impl LimitGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Relabels nodes by their monotone paths.
    pub fn to_flip_graph(&self, d: &FiberDiagram) -> Result<FlipGraph> {
        let paths = self.nodes.iter().map(|s| path_of_limit_node(d, s)).collect::<Result<Vec<_>>>()?;
        let edges = self.edges.iter().map(|&(a, b, f)| (paths[a].clone(), paths[b].clone(), f));
        FlipGraph::from_parts(paths.clone(), edges.collect::<Vec<_>>())
    }
}

/// Reads the path off a compatible node sequence: consecutive distinct slab
/// edges must chain head to tail.
pub fn path_of_limit_node(d: &FiberDiagram, seq: &[usize]) -> Result<MonotonePath> {
    let bad = |why: String| Err(Error::IncompatibleSequence(why));
    if seq.len() != d.n_slabs() {
        return bad(format!("{} entries for {} slabs", seq.len(), d.n_slabs()));
    }
    let mut vertices = Vec::new();
    let mut last: Option<(usize, usize)> = None;
    for (j, &x) in seq.iter().enumerate() {
        let Some(&FiberNode::Edge(u, w)) = d.slabs[j].nodes.get(x) else {
            return bad(format!("slab {j} has no node {x}"));
        };
        if j > 0 && d.alpha(j, seq[j - 1]) != d.beta(j, x) {
            return bad(format!("slabs {} and {j} disagree on level {j}", j - 1));
        }
        match last {
            None => vertices.extend([u, w]),
            Some(prev) if prev == (u, w) => {}
            Some((_, pw)) if pw == u => vertices.push(w),
            Some(prev) => return bad(format!("edge {prev:?} is not followed by {:?}", (u, w))),
        }
        last = Some((u, w));
    }
    Ok(MonotonePath::from_vec_unchecked(vertices))
}

/// Slab `j` entry is the path edge crossing slab `j`.
pub fn limit_node_of_path(o: &Orientation, d: &FiberDiagram, path: &MonotonePath) -> Result<Vec<usize>> {
    path.check(o).map_err(|e| Error::IncompatibleSequence(e.to_string()))?;
    let v = path.vertices();
    let mut seq = Vec::with_capacity(d.n_slabs());
    let mut step = 0;
    for j in 0..d.n_slabs() {
        while o.rank(v[step + 1]) <= j {
            step += 1;
        }
        let node = FiberNode::Edge(v[step], v[step + 1]);
        seq.push(d.slabs[j].index_of(&node).ok_or_else(|| Error::IncompatibleSequence(format!("{node:?} missing from slab {j}")))?);
    }
    Ok(seq)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsomorphismReport {
    pub limit_nodes: usize,
    pub limit_edges: usize,
    pub flip_nodes: usize,
    pub flip_edges: usize,
    /// Path → limit node is a bijection onto the limit nodes.
    pub bijective: bool,
    /// Flip edges map onto limit edges and vice versa.
    pub edges_preserved: bool,
    /// Corresponding edges carry the same face label.
    pub labels_agree: bool,
    /// Every limit edge passes the direct structural adjacency test.
    pub interval_condition: bool,
}

impl IsomorphismReport {
    pub fn isomorphic(&self) -> bool {
        self.bijective && self.edges_preserved
    }
}

/// Compares the inverse limit with the directly built flip graph through
/// the path ↦ limit node map.
pub fn check_isomorphism(o: &Orientation, cap: u64) -> Result<IsomorphismReport> {
    let mu = count_paths_dp(o)?;
    if mu > BigUint::from(cap) {
        return Err(Error::CapExceeded { what: "monotone paths", value: mu.to_string(), cap });
    }
    let d = fiber_diagram(o)?;
    let limit = inverse_limit(&d);
    let g = build_flip_graph(o, cap)?;
    let index: HashMap<&[usize], usize> = limit.nodes.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();

    let map = g
        .paths()
        .iter()
        .map(|p| limit_node_of_path(o, &d, p).map(|s| index.get(s.as_slice()).copied()))
        .collect::<Result<Vec<Option<usize>>>>()?;
    let hit: HashSet<usize> = map.iter().flatten().copied().collect();
    let bijective = map.iter().all(Option::is_some) && hit.len() == limit.len() && g.len() == limit.len();

    let (mut edges_preserved, mut labels_agree) = (bijective, bijective);
    if bijective {
        let limit_edges: HashMap<(usize, usize), usize> = limit.edges.iter().map(|&(a, b, f)| ((a, b), f)).collect();
        edges_preserved = limit_edges.len() == g.edges().len();
        for e in g.edges() {
            let (x, y) = (map[e.a].unwrap(), map[e.b].unwrap());
            match limit_edges.get(&(x.min(y), x.max(y))) {
                Some(&f) => labels_agree &= f == e.face,
                None => edges_preserved = false,
            }
        }
        labels_agree &= edges_preserved;
    }
    let interval_condition = limit.edges.iter().all(|&(a, b, _)| d.limit_adjacent(&limit.nodes[a], &limit.nodes[b]));
    Ok(IsomorphismReport {
        limit_nodes: limit.len(),
        limit_edges: limit.edges.len(),
        flip_nodes: g.len(),
        flip_edges: g.edges().len(),
        bijective,
        edges_preserved,
        labels_agree,
        interval_condition,
    })
}
