//! Combinatorial polytopes: graph, 2-faces and optional exact coordinates.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The combinatorial part of a polytope.
///
/// Vertex ids are dense, `0..n`. Edges are stored as `[u, w]` with `u < w`,
/// sorted. Each 2-face is stored as one cyclic vertex sequence; which of the
/// two senses is stored carries no meaning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    dim: usize,
    n: usize,
    edges: Vec<[usize; 2]>,
    faces: Vec<Vec<usize>>,
    neighbors: Vec<Vec<usize>>,
}

impl Skeleton {
    /// Validates and normalizes the combinatorial data.
    ///
    /// Checks that the graph is simple and connected, that each 2-face is a
    /// cycle of at least three distinct vertices whose sides are edges, and,
    /// for `dim == 3` with faces present, Euler's relation. A polytope with no
    /// faces at all is accepted as a graph-only model.
    pub fn new(dim: usize, n: usize, edges: Vec<[usize; 2]>, faces: Vec<Vec<usize>>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidPolytope(format!("dimension {dim} < 2")));
        }
        if n < dim + 1 {
            return Err(Error::InvalidPolytope(format!("{n} vertices cannot span dimension {dim}")));
        }
        let mut seen = BTreeSet::new();
        for &[u, w] in &edges {
            if u >= n || w >= n {
                return Err(Error::InvalidPolytope(format!("edge [{u}, {w}] references a missing vertex")));
            }
            if u == w {
                return Err(Error::InvalidPolytope(format!("loop at vertex {u}")));
            }
            if !seen.insert([u.min(w), u.max(w)]) {
                return Err(Error::InvalidPolytope(format!("duplicate edge [{u}, {w}]")));
            }
        }
        let edges: Vec<[usize; 2]> = seen.into_iter().collect();
        let mut neighbors = vec![Vec::new(); n];
        for &[u, w] in &edges {
            neighbors[u].push(w);
            neighbors[w].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }

        let edge_set: HashSet<[usize; 2]> = edges.iter().copied().collect();
        for (i, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                return Err(Error::InvalidPolytope(format!("face {i} has fewer than 3 vertices")));
            }
            let distinct: HashSet<usize> = face.iter().copied().collect();
            if distinct.len() != face.len() {
                return Err(Error::InvalidPolytope(format!("face {i} repeats a vertex")));
            }
            for k in 0..face.len() {
                let (a, b) = (face[k], face[(k + 1) % face.len()]);
                if a >= n || b >= n {
                    return Err(Error::InvalidPolytope(format!("face {i} references a missing vertex")));
                }
                if !edge_set.contains(&[a.min(b), a.max(b)]) {
                    return Err(Error::InvalidPolytope(format!("face {i}: side [{a}, {b}] is not an edge")));
                }
            }
        }

        let skeleton = Self { dim, n, edges, faces, neighbors };
        if !skeleton.is_connected() {
            return Err(Error::InvalidPolytope("graph is disconnected".into()));
        }
        if dim == 3 && !skeleton.faces.is_empty() {
            let euler = n as i64 - skeleton.edges.len() as i64 + skeleton.faces.len() as i64;
            if euler != 2 {
                return Err(Error::InvalidPolytope(format!("Euler characteristic is {euler}, expected 2")));
            }
        }
        Ok(skeleton)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.neighbors[u].binary_search(&w).is_ok()
    }

    /// Every vertex has graph degree exactly `dim`.
    pub fn is_simple(&self) -> bool {
        self.neighbors.iter().all(|nb| nb.len() == self.dim)
    }

    /// Looks up a 2-face by its vertex set.
    pub fn face_id(&self, vertices: &[usize]) -> Option<usize> {
        let mut want = vertices.to_vec();
        want.sort_unstable();
        self.faces.iter().position(|f| {
            let mut have = f.clone();
            have.sort_unstable();
            have == want
        })
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }
}

/// A polytope with optional exact coordinates over the scalar `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope<S> {
    skeleton: Arc<Skeleton>,
    coords: Option<Vec<Vec<S>>>,
    name: Option<String>,
}

impl<S: Scalar> Polytope<S> {
    pub fn new(skeleton: Skeleton, coords: Option<Vec<Vec<S>>>, name: Option<String>) -> Result<Self> {
        if let Some(points) = &coords {
            if points.len() != skeleton.n_vertices() {
                return Err(Error::InvalidPolytope(format!(
                    "{} coordinate rows for {} vertices",
                    points.len(),
                    skeleton.n_vertices()
                )));
            }
            if let Some(row) = points.iter().position(|p| p.len() != skeleton.dim()) {
                return Err(Error::InvalidPolytope(format!("coordinate row {row} does not have {} entries", skeleton.dim())));
            }
            for &[u, w] in skeleton.edges() {
                if points[u] == points[w] {
                    return Err(Error::InvalidPolytope(format!("edge [{u}, {w}] joins two equal points")));
                }
            }
        }
        Ok(Self { skeleton: Arc::new(skeleton), coords, name })
    }

    /// Builds a graph-and-faces polytope after validating the data.
    pub fn from_parts(
        dim: usize,
        n: usize,
        edges: Vec<[usize; 2]>,
        faces: Vec<Vec<usize>>,
        coords: Option<Vec<Vec<S>>>,
        name: Option<String>,
    ) -> Result<Self> {
        Self::new(Skeleton::new(dim, n, edges, faces)?, coords, name)
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub(crate) fn shared_skeleton(&self) -> Arc<Skeleton> {
        Arc::clone(&self.skeleton)
    }

    pub fn coords(&self) -> Option<&[Vec<S>]> {
        self.coords.as_deref()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.skeleton.dim()
    }

    pub fn n_vertices(&self) -> usize {
        self.skeleton.n_vertices()
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        self.skeleton.edges()
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        self.skeleton.faces()
    }

    pub fn is_simple(&self) -> bool {
        self.skeleton.is_simple()
    }
}
