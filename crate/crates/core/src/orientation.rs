//! Orientations of polytope graphs induced by generic functionals.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::polytope::{Polytope, Skeleton};
use crate::scalar::{ExactField, Scalar};

/// A linear functional given either by a coefficient vector or by an explicit
/// vertex order (`order[k]` is the vertex of rank `k`).
#[derive(Debug, Clone, PartialEq)]
pub enum Functional<S> {
    Vector(Vec<S>),
    Order(Vec<usize>),
}

impl<S: Scalar> Functional<S> {
    /// Values `f(v)` for each vertex, when the functional and the polytope
    /// both carry coordinates.
    pub fn values(&self, p: &Polytope<S>) -> Option<Vec<S>> {
        let Functional::Vector(c) = self else { return None };
        let coords = p.coords()?;
        Some(
            coords
                .iter()
                .map(|x| x.iter().zip(c).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
                .collect(),
        )
    }
}

/// The acyclic digraph `ω(P, f)`: every edge points towards the larger value.
#[derive(Debug, Clone)]
pub struct Orientation {
    skeleton: Arc<Skeleton>,
    rank: Vec<usize>,
    order: Vec<usize>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Orientation {
    /// Orients `p` by `f`. Ties between vertex values are errors.
    pub fn new<S: Scalar>(p: &Polytope<S>, f: &Functional<S>) -> Result<Self> {
        let n = p.n_vertices();
        let order = match f {
            Functional::Vector(c) => {
                if p.coords().is_none() {
                    return Err(Error::NonGenericFunctional("vector functional on a polytope without coordinates".into()));
                }
                if c.len() != p.dim() {
                    return Err(Error::NonGenericFunctional(format!(
                        "functional has {} coefficients, dimension is {}",
                        c.len(),
                        p.dim()
                    )));
                }
                let values = f.values(p).expect("coordinates checked above");
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by(|&a, &b| values[a].cmp(&values[b]));
                if let Some(w) = order.windows(2).find(|w| values[w[0]] == values[w[1]]) {
                    return Err(Error::NonGenericFunctional(format!(
                        "vertices {} and {} share the value {}",
                        w[0], w[1], values[w[0]]
                    )));
                }
                order
            }
            Functional::Order(order) => {
                if order.len() != n {
                    return Err(Error::OrderArityMismatch { expected: n, found: order.len() });
                }
                order.clone()
            }
        };
        Self::from_order(p.shared_skeleton(), order)
    }

    /// Orients a bare skeleton by an explicit vertex order.
    pub fn from_order(skeleton: Arc<Skeleton>, order: Vec<usize>) -> Result<Self> {
        let n = skeleton.n_vertices();
        if order.len() != n {
            return Err(Error::OrderArityMismatch { expected: n, found: order.len() });
        }
        let mut rank = vec![usize::MAX; n];
        for (k, &v) in order.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(Error::NotAPermutation);
            }
            rank[v] = k;
        }
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for &[u, w] in skeleton.edges() {
            let (lo, hi) = if rank[u] < rank[w] { (u, w) } else { (w, u) };
            out[lo].push(hi);
            inc[hi].push(lo);
        }
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_unstable();
        }
        let o = Self { skeleton, rank, order, out, inc };
        debug_assert_eq!(o.out.iter().map(Vec::len).sum::<usize>(), o.skeleton.edges().len());
        Ok(o)
    }

    /// Re-orients the same polytope by another order.
    pub fn reorder(&self, order: Vec<usize>) -> Result<Self> {
        Self::from_order(Arc::clone(&self.skeleton), order)
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn n_vertices(&self) -> usize {
        self.order.len()
    }

    pub fn dim(&self) -> usize {
        self.skeleton.dim()
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        self.skeleton.faces()
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Vertex ids in increasing functional order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn vertex_at(&self, k: usize) -> usize {
        self.order[k]
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn outdegree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    /// The lowest-ranked vertex.
    pub fn source(&self) -> usize {
        self.order[0]
    }

    /// The highest-ranked vertex.
    pub fn sink(&self) -> usize {
        self.order[self.order.len() - 1]
    }

    pub fn is_arc(&self, u: usize, w: usize) -> bool {
        self.out[u].binary_search(&w).is_ok()
    }

    /// True when the source is the only vertex without in-arcs and the sink
    /// the only vertex without out-arcs.
    pub fn has_single_source_sink(&self) -> bool {
        let (s, t) = (self.source(), self.sink());
        (0..self.n_vertices()).all(|v| (v == s || !self.inc[v].is_empty()) && (v == t || !self.out[v].is_empty()))
    }

    /// Outdegrees sorted in decreasing order.
    pub fn outdegree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.out.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// `h_k` = number of vertices of outdegree `k`. Only defined for simple
    /// polytopes.
    pub fn h_vector(&self) -> Result<Vec<usize>> {
        if !self.skeleton.is_simple() {
            return Err(Error::NotSimple);
        }
        let mut h = vec![0; self.dim() + 1];
        for list in &self.out {
            h[list.len()] += 1;
        }
        Ok(h)
    }

    /// Checks uniqueness of source and sink globally and on every 2-face.
    pub fn validate_lp_admissible(&self) -> AdmissibilityReport {
        let n = self.n_vertices();
        let global_sources = (0..n).filter(|&v| self.inc[v].is_empty()).collect();
        let global_sinks = (0..n).filter(|&v| self.out[v].is_empty()).collect();
        let faces = self
            .faces()
            .iter()
            .enumerate()
            .map(|(id, cycle)| {
                let len = cycle.len();
                let mut sources = Vec::new();
                let mut sinks = Vec::new();
                for k in 0..len {
                    let r = self.rank[cycle[k]];
                    let prev = self.rank[cycle[(k + len - 1) % len]];
                    let next = self.rank[cycle[(k + 1) % len]];
                    if r < prev && r < next {
                        sources.push(cycle[k]);
                    }
                    if r > prev && r > next {
                        sinks.push(cycle[k]);
                    }
                }
                FaceCheck { face: id, sources, sinks }
            })
            .collect();
        AdmissibilityReport { global_sources, global_sinks, faces }
    }
}

/// Local sources and sinks of one 2-face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceCheck {
    pub face: usize,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
}

impl FaceCheck {
    pub fn passed(&self) -> bool {
        self.sources.len() == 1 && self.sinks.len() == 1
    }
}

/// Outcome of [`Orientation::validate_lp_admissible`]. This is a necessary
/// condition only; it does not certify that a realizing functional exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub global_sources: Vec<usize>,
    pub global_sinks: Vec<usize>,
    pub faces: Vec<FaceCheck>,
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        self.global_sources.len() == 1 && self.global_sinks.len() == 1 && self.faces.iter().all(FaceCheck::passed)
    }

    pub fn failing_faces(&self) -> Vec<usize> {
        self.faces.iter().filter(|f| !f.passed()).map(|f| f.face).collect()
    }
}

/// Convenience wrapper for [`Orientation::new`].
pub fn orient<S: Scalar>(p: &Polytope<S>, f: &Functional<S>) -> Result<Orientation> {
    Orientation::new(p, f)
}

/// Draws coefficient vectors with entries `a/b`, `|a| <= 1000`, `1 <= b <= 7`,
/// until one is generic on `p`. Needs coordinates.
pub fn random_generic_functional<S: ExactField, R: Rng + ?Sized>(p: &Polytope<S>, rng: &mut R) -> Result<Functional<S>> {
    if p.coords().is_none() {
        return Err(Error::NonGenericFunctional("random functionals need coordinates".into()));
    }
    for _ in 0..1000 {
        let c: Vec<S> = (0..p.dim()).map(|_| S::ratio(rng.gen_range(-1000..=1000), rng.gen_range(1..=7))).collect();
        let f = Functional::Vector(c);
        match Orientation::new(p, &f) {
            Ok(_) => return Ok(f),
            Err(Error::NonGenericFunctional(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NonGenericFunctional("no generic functional found in 1000 draws".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::Skeleton;
    use num_bigint::BigInt;
    use num_rational::Ratio;

    type Q = Ratio<BigInt>;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn unit_cube() -> Polytope<Q> {
        let mut edges = Vec::new();
        let mut faces = Vec::new();
        for v in 0..8usize {
            for b in 0..3 {
                if v & (1 << b) == 0 {
                    edges.push([v, v | (1 << b)]);
                }
            }
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                let other = 3 - i - j;
                for side in 0..2 {
                    let base = side << other;
                    faces.push(vec![base, base | 1 << i, base | 1 << i | 1 << j, base | 1 << j]);
                }
            }
        }
        let coords = (0..8).map(|v| (0..3).map(|b| q(((v >> b) & 1) as i64, 1)).collect()).collect();
        Polytope::from_parts(3, 8, edges, faces, Some(coords), Some("cube".into())).unwrap()
    }

    #[test]
    fn cube_outdegrees_match_h_vector() {
        let p = unit_cube();
        let o = orient(&p, &Functional::Vector(vec![q(1, 1), q(1, 2), q(1, 4)])).unwrap();
        assert_eq!(o.outdegree_sequence(), vec![3, 2, 2, 2, 1, 1, 1, 0]);
        assert_eq!(o.h_vector().unwrap(), vec![1, 3, 3, 1]);
        assert_eq!(o.source(), 0);
        assert_eq!(o.sink(), 7);
        assert!(o.validate_lp_admissible().passed());
        for v in 0..8 {
            for &w in o.out_neighbors(v) {
                assert!(o.rank(v) < o.rank(w));
            }
        }
    }

    #[test]
    fn ties_are_rejected() {
        let p = unit_cube();
        let err = orient(&p, &Functional::Vector(vec![q(1, 1), q(1, 1), q(1, 4)])).unwrap_err();
        assert!(matches!(err, Error::NonGenericFunctional(_)));
    }

    #[test]
    fn order_errors() {
        let p = unit_cube();
        let err = orient(&p, &Functional::Order(vec![0, 1, 2])).unwrap_err();
        assert_eq!(err, Error::OrderArityMismatch { expected: 8, found: 3 });
        let err = orient(&p, &Functional::Order(vec![0, 1, 2, 3, 4, 5, 6, 6])).unwrap_err();
        assert_eq!(err, Error::NotAPermutation);
    }

    #[test]
    fn vector_needs_coordinates() {
        let s = Skeleton::new(2, 3, vec![[0, 1], [1, 2], [0, 2]], vec![vec![0, 1, 2]]).unwrap();
        let p: Polytope<Q> = Polytope::new(s, None, None).unwrap();
        let err = orient(&p, &Functional::Vector(vec![q(1, 1), q(0, 1)])).unwrap_err();
        assert!(matches!(err, Error::NonGenericFunctional(_)));
    }

    fn square() -> Polytope<Q> {
        Polytope::from_parts(2, 4, vec![[0, 1], [1, 2], [2, 3], [0, 3]], vec![vec![0, 1, 2, 3]], None, None).unwrap()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut all = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                all.push(q);
            }
        }
        all
    }

    #[test]
    fn square_orders_flag_exactly_the_two_minima_cases() {
        let p = square();
        let mut failures = 0;
        for order in permutations(4) {
            let o = orient(&p, &Functional::Order(order.clone())).unwrap();
            // Oracle: count local minima of the cycle directly.
            let rank = o.ranks().to_vec();
            let cyc = [0usize, 1, 2, 3];
            let local_min = (0..4)
                .filter(|&k| rank[cyc[k]] < rank[cyc[(k + 1) % 4]] && rank[cyc[k]] < rank[cyc[(k + 3) % 4]])
                .count();
            let report = o.validate_lp_admissible();
            assert_eq!(report.faces[0].passed(), local_min == 1);
            assert_eq!(report.failing_faces().is_empty(), local_min == 1);
            if local_min != 1 {
                failures += 1;
            }
        }
        // The two lowest vertices are opposite in 8 of the 24 orders.
        assert_eq!(failures, 8);
    }

    #[test]
    fn two_local_minima_example() {
        // cycle (a, b, c, d) = (0, 1, 2, 3) with a < c < b < d
        let o = orient(&square(), &Functional::<Q>::Order(vec![0, 2, 1, 3])).unwrap();
        let report = o.validate_lp_admissible();
        assert!(!report.passed());
        assert_eq!(report.faces[0].sources, vec![0, 2]);
        assert_eq!(report.faces[0].sinks, vec![1, 3]);
        assert_eq!(report.global_sources.len(), 2);
    }

    #[test]
    fn h_vector_requires_simple() {
        let p = Polytope::<Q>::from_parts(
            3,
            5,
            vec![[0, 1], [0, 2], [0, 3], [0, 4], [1, 2], [2, 3], [3, 4], [1, 4]],
            vec![vec![1, 2, 3, 4], vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4], vec![0, 4, 1]],
            None,
            None,
        )
        .unwrap();
        assert!(!p.is_simple());
        let o = orient(&p, &Functional::Order(vec![0, 1, 2, 4, 3])).unwrap();
        assert_eq!(o.h_vector(), Err(Error::NotSimple));
    }
}
