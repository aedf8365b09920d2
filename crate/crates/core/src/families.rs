//! Generators for the named polytope families, each with a canonical
//! functional.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::orientation::{Functional, Orientation};
use crate::polytope::Polytope;
use crate::scalar::ExactField;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilySpec {
    /// `d`-simplex.
    Simplex(usize),
    /// The stacked 3-polytope `X(n)` whose stacking order is a path.
    StackedX(usize),
    /// Prism over a `k`-gon.
    Prism(usize),
    /// Wedge of a `k`-gon over one of its vertices.
    WedgeVertex(usize),
    /// Wedge of a `k`-gon over one of its edges.
    WedgeEdge(usize),
    /// Pyramid over a `k`-gon.
    Pyramid(usize),
    /// `(d - 2)`-fold pyramid over a `k`-gon.
    MultiPyramid(usize, usize),
    /// `d`-cube.
    Hypercube(usize),
    /// Complete graph on `n` vertices, standing in for any 2-neighborly
    /// polytope. Carries no 2-faces.
    CompleteDag(usize),
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        match *self {
            FamilySpec::Simplex(d) if d < 2 => bad(format!("simplex needs d >= 2, got {d}")),
            FamilySpec::StackedX(n) if n < 4 => bad(format!("stacked-x needs n >= 4, got {n}")),
            FamilySpec::Prism(k) | FamilySpec::WedgeVertex(k) | FamilySpec::WedgeEdge(k) | FamilySpec::Pyramid(k)
                if k < 3 =>
            {
                bad(format!("{} needs a polygon with k >= 3, got {k}", self.family_name()))
            }
            FamilySpec::MultiPyramid(d, k) if d < 3 || k < 3 => {
                bad(format!("multi-pyramid needs d >= 3 and k >= 3, got d = {d}, k = {k}"))
            }
            FamilySpec::Hypercube(d) if !(2..=16).contains(&d) => bad(format!("hypercube needs 2 <= d <= 16, got {d}")),
            FamilySpec::CompleteDag(n) if n < 4 => bad(format!("complete-dag needs n >= 4, got {n}")),
            _ => Ok(()),
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::Simplex(_) => "simplex",
            FamilySpec::StackedX(_) => "stacked-x",
            FamilySpec::Prism(_) => "prism",
            FamilySpec::WedgeVertex(_) => "wedge-vertex",
            FamilySpec::WedgeEdge(_) => "wedge-edge",
            FamilySpec::Pyramid(_) => "pyramid",
            FamilySpec::MultiPyramid(..) => "multi-pyramid",
            FamilySpec::Hypercube(_) => "hypercube",
            FamilySpec::CompleteDag(_) => "complete-dag",
        }
    }

    /// Builds a spec from a family name and its integer parameters.
    pub fn from_name(name: &str, params: &[usize]) -> Result<Self> {
        let one = |f: fn(usize) -> FamilySpec| match params {
            [a] => Ok(f(*a)),
            _ => Err(Error::InvalidSpec(format!("{name} takes exactly one parameter"))),
        };
        let spec = match name {
            "simplex" => one(FamilySpec::Simplex)?,
            "stacked-x" => one(FamilySpec::StackedX)?,
            "prism" => one(FamilySpec::Prism)?,
            "wedge-vertex" => one(FamilySpec::WedgeVertex)?,
            "wedge-edge" => one(FamilySpec::WedgeEdge)?,
            "pyramid" => one(FamilySpec::Pyramid)?,
            "hypercube" => one(FamilySpec::Hypercube)?,
            "complete-dag" => one(FamilySpec::CompleteDag)?,
            "multi-pyramid" => match params {
                [d, k] => FamilySpec::MultiPyramid(*d, *k),
                _ => return Err(Error::InvalidSpec("multi-pyramid takes two parameters: d k".into())),
            },
            other => return Err(Error::InvalidSpec(format!("unknown family `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Rebuilds this family with a different last parameter.
    pub fn with_param(&self, p: usize) -> Self {
        match *self {
            FamilySpec::Simplex(_) => FamilySpec::Simplex(p),
            FamilySpec::StackedX(_) => FamilySpec::StackedX(p),
            FamilySpec::Prism(_) => FamilySpec::Prism(p),
            FamilySpec::WedgeVertex(_) => FamilySpec::WedgeVertex(p),
            FamilySpec::WedgeEdge(_) => FamilySpec::WedgeEdge(p),
            FamilySpec::Pyramid(_) => FamilySpec::Pyramid(p),
            FamilySpec::MultiPyramid(d, _) => FamilySpec::MultiPyramid(d, p),
            FamilySpec::Hypercube(_) => FamilySpec::Hypercube(p),
            FamilySpec::CompleteDag(_) => FamilySpec::CompleteDag(p),
        }
    }

    /// Number of vertices of the generated polytope.
    pub fn n_vertices(&self) -> usize {
        match *self {
            FamilySpec::Simplex(d) => d + 1,
            FamilySpec::StackedX(n) | FamilySpec::CompleteDag(n) => n,
            FamilySpec::Prism(k) => 2 * k,
            FamilySpec::WedgeVertex(k) => 2 * k - 1,
            FamilySpec::WedgeEdge(k) => 2 * k - 2,
            FamilySpec::Pyramid(k) => k + 1,
            FamilySpec::MultiPyramid(d, k) => k + d - 2,
            FamilySpec::Hypercube(d) => 1 << d,
        }
    }

    pub fn make<S: ExactField>(&self) -> Result<(Polytope<S>, Functional<S>)> {
        self.validate()?;
        match *self {
            FamilySpec::Simplex(d) => Ok(simplex(d)),
            FamilySpec::StackedX(n) => Ok(stacked_x(n)),
            FamilySpec::Prism(k) => Ok(prism(k)),
            FamilySpec::WedgeVertex(k) => Ok(wedge_vertex(k)),
            FamilySpec::WedgeEdge(k) => Ok(wedge_edge(k)),
            FamilySpec::Pyramid(k) => Ok(multi_pyramid(3, k, "pyramid")),
            FamilySpec::MultiPyramid(d, k) => Ok(multi_pyramid(d, k, "multi-pyramid")),
            FamilySpec::Hypercube(d) => Ok(hypercube(d)),
            FamilySpec::CompleteDag(n) => Ok(complete_dag(n)),
        }
    }

    /// `make` followed by orientation under the canonical functional.
    pub fn canonical_orientation<S: ExactField>(&self) -> Result<Orientation> {
        let (p, f) = self.make::<S>()?;
        Orientation::new(&p, &f)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::MultiPyramid(d, k) => write!(f, "multi-pyramid {d} {k}"),
            FamilySpec::Simplex(p)
            | FamilySpec::StackedX(p)
            | FamilySpec::Prism(p)
            | FamilySpec::WedgeVertex(p)
            | FamilySpec::WedgeEdge(p)
            | FamilySpec::Pyramid(p)
            | FamilySpec::Hypercube(p)
            | FamilySpec::CompleteDag(p) => write!(f, "{} {p}", self.family_name()),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses `"<family> <param> [<param>]"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut words = s.split_whitespace();
        let name = words.next().ok_or_else(|| Error::InvalidSpec("empty family spec".into()))?;
        let params = words
            .map(|w| w.parse::<usize>().map_err(|_| Error::InvalidSpec(format!("bad parameter `{w}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_name(name, &params)
    }
}

fn q<S: ExactField>(num: i64, den: i64) -> S {
    S::ratio(num, den)
}

fn int<S: ExactField>(v: i64) -> S {
    S::ratio(v, 1)
}

fn build<S: ExactField>(
    dim: usize,
    n: usize,
    edges: Vec<[usize; 2]>,
    faces: Vec<Vec<usize>>,
    coords: Option<Vec<Vec<S>>>,
    name: String,
) -> Polytope<S> {
    Polytope::from_parts(dim, n, edges, faces, coords, Some(name)).expect("generated family data is valid")
}

/// Vertices of a convex `k`-gon on the unit circle, in cyclic order, with
/// pairwise distinct x-coordinates. Uses the rational parametrization
/// `t -> ((1 - t^2) / (1 + t^2), 2t / (1 + t^2))` so points are exact.
fn circle_polygon<S: ExactField>(k: usize) -> Vec<[S; 2]> {
    let k = k as i64;
    (0..k)
        .map(|i| {
            // t_i + t_j never vanishes, so no two points are mirror images
            let t: S = q(12 * i - 6 * (k - 1) + 1, 2 * k);
            let t2 = t.clone() * t.clone();
            let den = S::one() + t2.clone();
            [(S::one() - t2) / den.clone(), (t.clone() + t) / den]
        })
        .collect()
}

fn min_x_gap<S: ExactField>(poly: &[[S; 2]]) -> S {
    let mut xs: Vec<S> = poly.iter().map(|p| p[0].clone()).collect();
    xs.sort();
    xs.windows(2).map(|w| w[1].clone() - w[0].clone()).min().expect("polygon has >= 3 vertices")
}

fn cycle_edges(vertices: &[usize]) -> Vec<[usize; 2]> {
    (0..vertices.len()).map(|i| [vertices[i], vertices[(i + 1) % vertices.len()]]).collect()
}

fn simplex<S: ExactField>(d: usize) -> (Polytope<S>, Functional<S>) {
    let n = d + 1;
    let mut edges = Vec::new();
    let mut faces = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            edges.push([a, b]);
            for c in (b + 1)..n {
                faces.push(vec![a, b, c]);
            }
        }
    }
    let coords = (0..n).map(|v| (0..d).map(|j| int::<S>((v == j + 1) as i64)).collect()).collect();
    // f(e_j) = j, so vertex ids are already in increasing order
    let f = Functional::Vector((1..=d as i64).map(int).collect());
    (build(d, n, edges, faces, Some(coords), format!("simplex {d}")), f)
}

/// Facets of `X(n)`: `{0,1,2}`, `{n-3,n-2,n-1}` and, for `1 <= k <= n-3`,
/// `{k-1,k,k+2}` and `{k-1,k+1,k+2}`.
pub fn stacked_x_facets(n: usize) -> Vec<Vec<usize>> {
    let mut faces = vec![vec![0, 1, 2]];
    for k in 1..=(n - 3) {
        faces.push(vec![k - 1, k, k + 2]);
        faces.push(vec![k - 1, k + 1, k + 2]);
    }
    faces.push(vec![n - 3, n - 2, n - 1]);
    faces
}

fn stacked_x<S: ExactField>(n: usize) -> (Polytope<S>, Functional<S>) {
    let edges = (0..n).flat_map(|i| ((i + 1)..n.min(i + 4)).map(move |j| [i, j])).collect();
    let p = build(3, n, edges, stacked_x_facets(n), None, format!("stacked-x {n}"));
    (p, Functional::Order((0..n).collect()))
}

fn prism<S: ExactField>(k: usize) -> (Polytope<S>, Functional<S>) {
    let poly = circle_polygon::<S>(k);
    let bottom: Vec<usize> = (0..k).collect();
    let top: Vec<usize> = (k..2 * k).collect();
    let mut edges = cycle_edges(&bottom);
    edges.extend(cycle_edges(&top));
    edges.extend((0..k).map(|i| [i, k + i]));
    let mut faces = vec![bottom, top];
    for i in 0..k {
        let j = (i + 1) % k;
        faces.push(vec![i, j, k + j, k + i]);
    }
    let coords = (0..2 * k)
        .map(|v| {
            let p = &poly[v % k];
            vec![p[0].clone(), p[1].clone(), int::<S>((v >= k) as i64)]
        })
        .collect();
    // x first, height as tie-break: bottom_0, top_0, bottom_1, top_1, ...
    let eps = min_x_gap(&poly) / int::<S>(2);
    let f = Functional::Vector(vec![S::one(), S::zero(), eps]);
    (build(3, 2 * k, edges, faces, Some(coords), format!("prism {k}")), f)
}

fn wedge_vertex<S: ExactField>(k: usize) -> (Polytope<S>, Functional<S>) {
    let poly = circle_polygon::<S>(k);
    // collapse the leftmost polygon vertex, which then becomes the source
    let c = (0..k).min_by(|&a, &b| poly[a][0].cmp(&poly[b][0])).expect("k >= 3");
    let mut top = vec![0usize; k];
    let mut next = k;
    for (j, slot) in top.iter_mut().enumerate() {
        if j == c {
            *slot = c;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let bottom: Vec<usize> = (0..k).collect();
    let mut edges = cycle_edges(&bottom);
    edges.extend(cycle_edges(&top));
    edges.extend((0..k).filter(|&j| j != c).map(|j| [j, top[j]]));
    let mut faces = vec![bottom, top.clone()];
    for i in 0..k {
        let j = (i + 1) % k;
        if i == c {
            faces.push(vec![c, j, top[j]]);
        } else if j == c {
            faces.push(vec![i, c, top[i]]);
        } else {
            faces.push(vec![i, j, top[j], top[i]]);
        }
    }
    // height g(p) = 1 - <p_c, p> vanishes exactly at p_c on the unit circle
    let height = |p: &[S; 2]| S::one() - (poly[c][0].clone() * p[0].clone() + poly[c][1].clone() * p[1].clone());
    let mut coords = vec![Vec::new(); 2 * k - 1];
    for j in 0..k {
        let p = &poly[j];
        coords[j] = vec![p[0].clone(), p[1].clone(), S::zero()];
        if j != c {
            coords[top[j]] = vec![p[0].clone(), p[1].clone(), height(p)];
        }
    }
    // heights lie in [0, 2]
    let eps = min_x_gap(&poly) / int::<S>(4);
    let f = Functional::Vector(vec![S::one(), S::zero(), eps]);
    (build(3, 2 * k - 1, edges, faces, Some(coords), format!("wedge-vertex {k}")), f)
}

fn wedge_edge<S: ExactField>(k: usize) -> (Polytope<S>, Functional<S>) {
    let poly = circle_polygon::<S>(k);
    // wedge edge is {0, k-1}; top copies of 1..k-2 get ids k..2k-3
    let a = 0;
    let b = k - 1;
    let top = |j: usize| if j == a || j == b { j } else { k + j - 1 };
    let bottom: Vec<usize> = (0..k).collect();
    let upper: Vec<usize> = (0..k).map(top).collect();
    let mut edges = cycle_edges(&bottom);
    edges.extend(cycle_edges(&upper).into_iter().filter(|e| *e != [b, a]));
    edges.extend((1..k - 1).map(|j| [j, top(j)]));
    let mut faces = vec![bottom, upper];
    for i in 0..k - 1 {
        let j = i + 1;
        if i == a {
            faces.push(vec![a, j, top(j)]);
        } else if j == b {
            faces.push(vec![i, b, top(i)]);
        } else {
            faces.push(vec![i, j, top(j), top(i)]);
        }
    }
    // height vanishes on the line through p_a and p_b and is positive on the polygon
    let (pa, pb) = (&poly[a], &poly[b]);
    let cross = |p: &[S; 2]| {
        (pb[0].clone() - pa[0].clone()) * (p[1].clone() - pa[1].clone())
            - (pb[1].clone() - pa[1].clone()) * (p[0].clone() - pa[0].clone())
    };
    let sign = if cross(&poly[1]) > S::zero() { S::one() } else { -S::one() };
    let mut coords = vec![Vec::new(); 2 * k - 2];
    for j in 0..k {
        let p = &poly[j];
        coords[j] = vec![p[0].clone(), p[1].clone(), S::zero()];
        if j != a && j != b {
            coords[top(j)] = vec![p[0].clone(), p[1].clone(), sign.clone() * cross(p)];
        }
    }
    // snake through the rungs: a, q1, q1', q2', q2, q3, q3', ..., b
    let mut order = vec![a];
    for j in 1..k - 1 {
        if j % 2 == 1 {
            order.extend([j, top(j)]);
        } else {
            order.extend([top(j), j]);
        }
    }
    order.push(b);
    (build(3, 2 * k - 2, edges, faces, Some(coords), format!("wedge-edge {k}")), Functional::Order(order))
}

/// Vertices `0..d-2` are the cone points, the polygon follows in cyclic
/// order. Coordinates embed the polygon in the first two axes and put cone
/// point `j` on axis `j + 2`.
fn multi_pyramid<S: ExactField>(d: usize, k: usize, label: &str) -> (Polytope<S>, Functional<S>) {
    let cones = d - 2;
    let n = cones + k;
    let poly_ids: Vec<usize> = (cones..n).collect();
    let mut edges = cycle_edges(&poly_ids);
    let mut faces = vec![poly_ids.clone()];
    for c in 0..cones {
        for v in (c + 1)..n {
            edges.push([c, v]);
        }
    }
    for c in 0..cones {
        for &[u, w] in &cycle_edges(&poly_ids) {
            faces.push(vec![c, u, w]);
        }
        for c2 in (c + 1)..cones {
            for &v in &poly_ids {
                faces.push(vec![c, c2, v]);
            }
            for c3 in (c2 + 1)..cones {
                faces.push(vec![c, c2, c3]);
            }
        }
    }
    let poly = circle_polygon::<S>(k);
    let mut coords = vec![vec![S::zero(); d]; n];
    for c in 0..cones {
        coords[c][c + 2] = S::one();
    }
    for (i, p) in poly.iter().enumerate() {
        coords[cones + i][0] = p[0].clone();
        coords[cones + i][1] = p[1].clone();
    }
    // cone point j has value -(j + 2) < -1 < every polygon value
    let mut c = vec![S::one(), S::zero()];
    c.extend((0..cones).map(|j| int::<S>(-(j as i64) - 2)));
    let name = if label == "pyramid" { format!("pyramid {k}") } else { format!("multi-pyramid {d} {k}") };
    (build(d, n, edges, faces, Some(coords), name), Functional::Vector(c))
}

fn hypercube<S: ExactField>(d: usize) -> (Polytope<S>, Functional<S>) {
    let n = 1usize << d;
    let mut edges = Vec::new();
    for v in 0..n {
        for b in 0..d {
            if v & (1 << b) == 0 {
                edges.push([v, v | (1 << b)]);
            }
        }
    }
    let mut faces = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            for v in 0..n {
                if v & (1 << i) == 0 && v & (1 << j) == 0 {
                    faces.push(vec![v, v | 1 << i, v | 1 << i | 1 << j, v | 1 << j]);
                }
            }
        }
    }
    let coords = (0..n).map(|v| (0..d).map(|b| int::<S>(((v >> b) & 1) as i64)).collect()).collect();
    let f = Functional::Vector((0..d).map(|b| q::<S>(1, 1 << b)).collect());
    (build(d, n, edges, faces, Some(coords), format!("hypercube {d}")), f)
}

fn complete_dag<S: ExactField>(n: usize) -> (Polytope<S>, Functional<S>) {
    let edges = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| [a, b])).collect();
    // K_4 is the tetrahedron graph; larger complete graphs are graphs of
    // 2-neighborly 4-polytopes
    let dim = (n - 1).min(4);
    (build(dim, n, edges, Vec::new(), None, format!("complete-dag {n}")), Functional::Order((0..n).collect()))
}
