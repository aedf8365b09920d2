use super::paths::MonotonePath;
use crate::error::Result;
use crate::orientation::Orientation;

/// Where a path meets one of the `2n - 1` sample levels: the vertex of rank
/// `k`, or the open slab between ranks `k` and `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    Vertex(usize),
    Edge(usize, usize),
}

/// Positions of `path` at levels `0..2n-1`; level `2k` is the value of the
/// rank-`k` vertex, level `2k + 1` the slab above it.
pub fn positions(o: &Orientation, path: &MonotonePath) -> Vec<Position> {
    let n = o.n_vertices();
    let v = path.vertices();
    let mut out = Vec::with_capacity(2 * n - 1);
    let mut step = 0;
    for level in 0..2 * n - 1 {
        let k = level / 2;
        // advance to the edge whose upper end is above level k
        while step + 1 < v.len() && o.rank(v[step + 1]) <= k {
            step += 1;
        }
        let here = v[step];
        if level % 2 == 0 && o.rank(here) == k {
            out.push(Position::Vertex(here));
        } else {
            out.push(Position::Edge(here, v[step + 1]));
        }
    }
    out
}

/// Number of maximal runs of levels where the two paths are at different
/// positions.
pub fn nu(o: &Orientation, a: &MonotonePath, b: &MonotonePath) -> Result<usize> {
    a.check(o)?;
    b.check(o)?;
    Ok(nu_unchecked(o, a, b))
}

pub(crate) fn nu_unchecked(o: &Orientation, a: &MonotonePath, b: &MonotonePath) -> usize {
    let (pa, pb) = (positions(o, a), positions(o, b));
    let mut runs = 0;
    let mut inside = false;
    for (x, y) in pa.iter().zip(&pb) {
        let differ = x != y;
        if differ && !inside {
            runs += 1;
        }
        inside = differ;
    }
    runs
}
