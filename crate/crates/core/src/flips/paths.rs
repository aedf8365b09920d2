use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::counting::count_paths_dp;
use crate::error::{Error, Result};
use crate::orientation::Orientation;

/// A monotone path as its vertex sequence, source first.
///
/// Ordered lexicographically by vertex ids; this is the canonical order of
/// flip-graph nodes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonotonePath(Vec<usize>);

impl MonotonePath {
    /// Wraps a vertex sequence after checking it is a source-to-sink path
    /// along arcs of `o`.
    pub fn new(o: &Orientation, vertices: Vec<usize>) -> Result<Self> {
        let path = Self(vertices);
        path.check(o)?;
        Ok(path)
    }

    /// Wraps a sequence without validation. Callers must know it is a path.
    pub(crate) fn from_vec_unchecked(vertices: Vec<usize>) -> Self {
        Self(vertices)
    }

    pub fn check(&self, o: &Orientation) -> Result<()> {
        let v = &self.0;
        let bad = |why: String| Err(Error::NotAPath(format!("{self}: {why}")));
        if v.is_empty() {
            return bad("empty".into());
        }
        if v.iter().any(|&x| x >= o.n_vertices()) {
            return bad("unknown vertex".into());
        }
        if v[0] != o.source() {
            return bad(format!("starts at {} instead of the source {}", v[0], o.source()));
        }
        if *v.last().unwrap() != o.sink() {
            return bad(format!("ends at {} instead of the sink {}", v.last().unwrap(), o.sink()));
        }
        if let Some(w) = v.windows(2).find(|w| !o.is_arc(w[0], w[1])) {
            return bad(format!("{} -> {} is not an arc", w[0], w[1]));
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl fmt::Display for MonotonePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join("-"))
    }
}

/// Parses `0-2-5-9` (also accepts commas or spaces as separators).
impl FromStr for MonotonePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let vertices = s
            .split(|c: char| c == '-' || c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex id {t:?} in path {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self(vertices))
    }
}

impl Serialize for MonotonePath {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(&self.0)
    }
}

/// All monotone paths, in lexicographic order. Counts them first and refuses
/// when there are more than `cap`.
pub fn enumerate_paths(o: &Orientation, cap: u64) -> Result<Vec<MonotonePath>> {
    let mu = count_paths_dp(o)?;
    if mu > BigUint::from(cap) {
        return Err(Error::CapExceeded { what: "monotone paths", value: mu.to_string(), cap });
    }
    let mut out = Vec::new();
    let mut stack = vec![o.source()];
    walk(o, &mut stack, &mut out);
    out.sort();
    Ok(out)
}

fn walk(o: &Orientation, stack: &mut Vec<usize>, out: &mut Vec<MonotonePath>) {
    let v = *stack.last().unwrap();
    if v == o.sink() {
        out.push(MonotonePath(stack.clone()));
        return;
    }
    for &w in o.out_neighbors(v) {
        stack.push(w);
        walk(o, stack, out);
        stack.pop();
    }
}

/// The two boundary chains of a 2-face from its lowest to its highest
/// vertex, each rank-increasing. The first chain is the lexicographically
/// smaller one.
pub fn face_chains(o: &Orientation, face_id: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let face = o.faces().get(face_id).ok_or(Error::NotLpAdmissibleFace(face_id))?;
    let len = face.len();
    let low = (0..len).min_by_key(|&k| o.rank(face[k])).unwrap();
    let high = (0..len).max_by_key(|&k| o.rank(face[k])).unwrap();
    let forward: Vec<usize> = (0..len).map(|s| face[(low + s) % len]).collect();
    let split = (high + len - low) % len;
    let a: Vec<usize> = forward[..=split].to_vec();
    let mut b: Vec<usize> = forward[split..].to_vec();
    b.push(face[low]);
    b.reverse();
    let increasing = |c: &[usize]| c.windows(2).all(|w| o.rank(w[0]) < o.rank(w[1]));
    if !increasing(&a) || !increasing(&b) {
        return Err(Error::NotLpAdmissibleFace(face_id));
    }
    Ok(if a <= b { (a, b) } else { (b, a) })
}

/// If `chain` occurs contiguously in `path`, the path with it replaced by
/// `other`.
pub(crate) fn swap_chain(path: &[usize], chain: &[usize], other: &[usize], rank: &[usize]) -> Option<Vec<usize>> {
    // ranks strictly increase along a path, so the chain start occurs once
    let start = path.binary_search_by_key(&rank[chain[0]], |&v| rank[v]).ok()?;
    if path[start] != chain[0] || path.len() < start + chain.len() || path[start..start + chain.len()] != *chain {
        return None;
    }
    let mut out = Vec::with_capacity(path.len() + other.len() - chain.len());
    out.extend_from_slice(&path[..start]);
    out.extend_from_slice(other);
    out.extend_from_slice(&path[start + chain.len()..]);
    Some(out)
}

/// The flip of `path` across face `face_id`, if one chain of the face is a
/// contiguous part of the path.
pub fn flip_across(o: &Orientation, path: &MonotonePath, face_id: usize) -> Result<Option<MonotonePath>> {
    let (a, b) = face_chains(o, face_id)?;
    let rank = o.ranks();
    Ok(swap_chain(&path.0, &a, &b, rank).or_else(|| swap_chain(&path.0, &b, &a, rank)).map(MonotonePath))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;
    use crate::Rational;

    fn orient(spec: FamilySpec) -> Orientation {
        spec.canonical_orientation::<Rational>().unwrap()
    }

    fn p(v: &[usize]) -> MonotonePath {
        MonotonePath(v.to_vec())
    }

    #[test]
    fn simplex_paths() {
        let o = orient(FamilySpec::Simplex(3));
        let paths = enumerate_paths(&o, 100).unwrap();
        assert_eq!(paths, vec![p(&[0, 1, 2, 3]), p(&[0, 1, 3]), p(&[0, 2, 3]), p(&[0, 3])]);
    }

    #[test]
    fn path_counts_match_dp() {
        assert_eq!(enumerate_paths(&orient(FamilySpec::StackedX(6)), 100).unwrap().len(), 13);
        assert_eq!(enumerate_paths(&orient(FamilySpec::Prism(3)), 100).unwrap().len(), 5);
        let err = enumerate_paths(&orient(FamilySpec::StackedX(12)), 100).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn display_and_parse() {
        let path = p(&[0, 2, 5, 9]);
        assert_eq!(path.to_string(), "0-2-5-9");
        assert_eq!("0-2-5-9".parse::<MonotonePath>().unwrap(), path);
        assert_eq!("0, 2 ,5,9".parse::<MonotonePath>().unwrap(), path);
        assert!("0-x".parse::<MonotonePath>().is_err());
    }

    #[test]
    fn validation() {
        let o = orient(FamilySpec::StackedX(6));
        assert!(MonotonePath::new(&o, vec![0, 3, 5]).is_ok());
        assert!(matches!(MonotonePath::new(&o, vec![0, 4, 5]), Err(Error::NotAPath(_))));
        assert!(matches!(MonotonePath::new(&o, vec![1, 3, 5]), Err(Error::NotAPath(_))));
        assert!(matches!(MonotonePath::new(&o, vec![0, 3]), Err(Error::NotAPath(_))));
        assert!(matches!(MonotonePath::new(&o, vec![]), Err(Error::NotAPath(_))));
    }

    #[test]
    fn triangle_chains() {
        let o = orient(FamilySpec::Simplex(3));
        for id in 0..o.faces().len() {
            let (a, b) = face_chains(&o, id).unwrap();
            let mut verts = o.faces()[id].clone();
            verts.sort();
            assert_eq!(a, verts);
            assert_eq!(b, vec![verts[0], verts[2]]);
        }
    }

    #[test]
    fn chains_split_every_face() {
        for spec in [FamilySpec::Prism(5), FamilySpec::Pyramid(6), FamilySpec::WedgeEdge(6), FamilySpec::Hypercube(3)] {
            let o = orient(spec);
            for (id, face) in o.faces().iter().enumerate() {
                let (a, b) = face_chains(&o, id).unwrap();
                assert_eq!(a[0], b[0]);
                assert_eq!(a.last(), b.last());
                assert_eq!(a.len() + b.len(), face.len() + 2);
                let inner_a: Vec<_> = a[1..a.len() - 1].to_vec();
                assert!(inner_a.iter().all(|v| !b.contains(v)));
            }
        }
    }

    #[test]
    fn prism_quadrilateral_chains() {
        let o = orient(FamilySpec::Prism(3));
        let quad = o.faces().iter().position(|f| f.len() == 4).unwrap();
        let (a, b) = face_chains(&o, quad).unwrap();
        let mut lens = [a.len(), b.len()];
        lens.sort();
        assert!(lens == [2, 4] || lens == [3, 3], "{lens:?}");
    }

    #[test]
    fn flips_are_involutions() {
        let o = orient(FamilySpec::StackedX(7));
        for path in enumerate_paths(&o, 1000).unwrap() {
            for id in 0..o.faces().len() {
                if let Some(q) = flip_across(&o, &path, id).unwrap() {
                    assert_ne!(q, path);
                    q.check(&o).unwrap();
                    assert_eq!(flip_across(&o, &q, id).unwrap(), Some(path.clone()));
                }
            }
        }
    }
}
