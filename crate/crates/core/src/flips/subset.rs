//! Paths on the stacked polytope `X(n)` as subsets of skipped interior
//! vertices.
//!
//! A path omits a set `S ⊆ {1, …, n-2}` with no three consecutive elements,
//! and flips act on `S` by a short list of local insertions and removals.

use std::collections::{HashMap, HashSet, VecDeque};

use super::graph::FlipGraph;
use super::paths::MonotonePath;
use crate::error::{Error, Result};

/// Bit `k` set means interior vertex `k` is skipped.
pub type SubsetNode = u64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetModel {
    n: usize,
    nodes: Vec<SubsetNode>,
    edges: Vec<[usize; 2]>,
    adjacency: Vec<Vec<usize>>,
}

fn has(s: SubsetNode, k: usize) -> bool {
    s >> k & 1 == 1
}

/// Builds the subset graph for `X(n)`, `4 <= n <= 64`.
pub fn xn_subset_model(n: usize) -> Result<SubsetModel> {
    if !(4..=64).contains(&n) {
        return Err(Error::BadParams(format!("subset model needs 4 <= n <= 64, got {n}")));
    }
    let interior = n - 2;
    let full: u64 = if n - 1 == 64 { u64::MAX } else { (1u64 << (n - 1)) - 1 };
    let universe = full & !1; // bits 1..=n-2
    let mut nodes = Vec::new();
    let mut s: u64 = 0;
    // enumerate submasks of the interior bits
    loop {
        if s & (s >> 1) & (s >> 2) == 0 {
            nodes.push(s);
        }
        if s == universe {
            break;
        }
        s = (s.wrapping_sub(universe)) & universe;
    }
    nodes.sort_unstable();
    let index: HashMap<u64, usize> = nodes.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let first = 1;
    let last = interior;
    let mut edges = HashSet::new();
    for (i, &s) in nodes.iter().enumerate() {
        let mut moves = Vec::new();
        // removal of the first or last interior vertex
        for k in [first, last] {
            if has(s, k) {
                moves.push(s & !(1 << k));
            }
        }
        // inclusion of the first one unless its two successors are skipped
        if !has(s, first) && !(has(s, first + 1) && has(s, first + 2)) {
            moves.push(s | 1 << first);
        }
        if !has(s, last) && !(has(s, last - 1) && has(s, last - 2)) {
            moves.push(s | 1 << last);
        }
        // toggle one of a pair k, k+1 when the other is skipped and both
        // outer neighbors are not
        for k in first..last {
            let outer_clear = (k == first || !has(s, k - 1)) && (k + 1 == last || !has(s, k + 2));
            if !outer_clear {
                continue;
            }
            if has(s, k + 1) {
                moves.push(s ^ 1 << k);
            }
            if has(s, k) {
                moves.push(s ^ 1 << (k + 1));
            }
        }
        for t in moves {
            let j = *index.get(&t).expect("moves stay inside the model");
            if i != j {
                edges.insert([i.min(j), i.max(j)]);
            }
        }
    }
    let mut edges: Vec<[usize; 2]> = edges.into_iter().collect();
    edges.sort_unstable();
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for &[a, b] in &edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    Ok(SubsetModel { n, nodes, edges, adjacency })
}

impl SubsetModel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[SubsetNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn index_of(&self, s: SubsetNode) -> Option<usize> {
        self.nodes.binary_search(&s).ok()
    }

    /// The path visiting the complement of `s` in `0..n`.
    pub fn path_of(&self, s: SubsetNode) -> MonotonePath {
        MonotonePath::from_vec_unchecked((0..self.n).filter(|&v| !has(s, v)).collect())
    }

    pub fn subset_of(path: &MonotonePath, n: usize) -> SubsetNode {
        (1..n - 1).filter(|&v| !path.contains(v)).fold(0, |acc, v| acc | 1 << v)
    }

    pub fn from_elements(elements: &[usize]) -> SubsetNode {
        elements.iter().fold(0, |acc, &v| acc | 1 << v)
    }

    pub fn distance(&self, a: SubsetNode, b: SubsetNode) -> Option<usize> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        let mut dist = vec![usize::MAX; self.nodes.len()];
        dist[i] = 0;
        let mut queue = VecDeque::from([i]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        (dist[j] != usize::MAX).then_some(dist[j])
    }

    /// Checks that `S ↦ complement path` is a bijection onto the nodes of
    /// `g` carrying edges exactly onto edges.
    pub fn is_isomorphic_to(&self, g: &FlipGraph) -> bool {
        if self.nodes.len() != g.len() || self.edges.len() != g.edges().len() {
            return false;
        }
        let Some(map) = self.nodes.iter().map(|&s| g.index_of(&self.path_of(s))).collect::<Option<Vec<usize>>>() else {
            return false;
        };
        let image: HashSet<[usize; 2]> = self.edges.iter().map(|&[a, b]| [map[a].min(map[b]), map[a].max(map[b])]).collect();
        image.len() == g.edges().len() && g.edges().iter().all(|e| image.contains(&[e.a, e.b]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::tribonacci;
    use num_traits::ToPrimitive;

    #[test]
    fn small_models() {
        let m = xn_subset_model(4).unwrap();
        assert_eq!(m.nodes(), &[0b000, 0b010, 0b100, 0b110]);
        assert_eq!(m.path_of(0b010).to_string(), "0-2-3");
        for n in 4..=20 {
            assert_eq!(xn_subset_model(n).unwrap().nodes().len(), tribonacci(n - 1).to_usize().unwrap());
        }
        assert!(xn_subset_model(3).is_err());
    }

    #[test]
    fn far_pair_in_x10() {
        let m = xn_subset_model(10).unwrap();
        let gamma = SubsetModel::from_elements(&[1, 3, 5, 7]);
        assert_eq!(m.path_of(gamma).to_string(), "0-2-4-6-8-9");
        assert_eq!(m.distance(gamma, 0), Some(16));
        assert_eq!(SubsetModel::subset_of(&m.path_of(gamma), 10), gamma);
    }
}
