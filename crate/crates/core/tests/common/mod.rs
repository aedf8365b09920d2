//! Reference computations used by the integration and acceptance tests.
//! None of these call into the library's counting code.

#![allow(dead_code)]

use monopath::{FamilySpec, Orientation, Rational};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

pub fn orient(spec: FamilySpec) -> Orientation {
    spec.canonical_orientation::<Rational>().unwrap_or_else(|e| panic!("{spec}: {e}"))
}

/// Tribonacci by the recurrence, from scratch.
pub fn trib(n: usize) -> BigUint {
    let mut t = vec![BigUint::one(), BigUint::one(), BigUint::from(2u32)];
    while t.len() <= n {
        let k = t.len();
        let next = &t[k - 1] + &t[k - 2] + &t[k - 3];
        t.push(next);
    }
    t[n].clone()
}

pub fn fib(n: usize) -> BigUint {
    let mut f = vec![BigUint::zero(), BigUint::one()];
    while f.len() <= n {
        let k = f.len();
        let next = &f[k - 1] + &f[k - 2];
        f.push(next);
    }
    f[n].clone()
}

pub fn fact(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

pub fn pow(base: u64, e: usize) -> BigUint {
    (0..e).fold(BigUint::one(), |acc, _| acc * base)
}

/// Paths from the source to the sink by memoized DFS over arcs, keyed by
/// vertex id rather than rank.
pub fn paths_by_dfs(o: &Orientation) -> BigUint {
    fn go(o: &Orientation, v: usize, memo: &mut Vec<Option<BigUint>>) -> BigUint {
        if v == o.sink() {
            return BigUint::one();
        }
        if let Some(x) = &memo[v] {
            return x.clone();
        }
        let total = o.out_neighbors(v).iter().map(|&w| go(o, w, memo)).sum::<BigUint>();
        memo[v] = Some(total.clone());
        total
    }
    let mut memo = vec![None; o.n_vertices()];
    go(o, o.source(), &mut memo)
}

/// Spanning arborescences directed towards the sink, by the directed
/// matrix-tree theorem: `det(D_out - A)` with the sink row and column
/// deleted. Fraction-free Bareiss elimination over the integers.
pub fn arborescences_by_matrix_tree(o: &Orientation) -> BigUint {
    let sink = o.sink();
    let keep: Vec<usize> = (0..o.n_vertices()).filter(|&v| v != sink).collect();
    let pos = |v: usize| keep.iter().position(|&x| x == v);
    let m = keep.len();
    let mut a = vec![vec![BigInt::zero(); m]; m];
    for (i, &v) in keep.iter().enumerate() {
        a[i][i] = BigInt::from(o.out_neighbors(v).len());
        for &w in o.out_neighbors(v) {
            if let Some(j) = pos(w) {
                a[i][j] -= 1;
            }
        }
    }
    let det = bareiss(a);
    assert!(!det.is_negative(), "Laplacian minor is nonnegative");
    det.to_biguint().unwrap()
}

fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Arborescences as the product of outdegrees off the sink, written out
/// here rather than taken from the library.
pub fn outdegree_product(o: &Orientation) -> BigUint {
    (0..o.n_vertices()).filter(|&v| v != o.sink()).map(|v| BigUint::from(o.out_neighbors(v).len())).product()
}

/// Every shipped family instance the suites iterate over.
pub fn suite_instances() -> Vec<FamilySpec> {
    let mut v = vec![FamilySpec::Simplex(2), FamilySpec::Simplex(3), FamilySpec::Simplex(4), FamilySpec::Simplex(5)];
    v.extend((4..=14).map(FamilySpec::StackedX));
    v.extend((3..=8).map(FamilySpec::Prism));
    v.extend((3..=8).map(FamilySpec::WedgeVertex));
    v.extend((3..=8).map(FamilySpec::WedgeEdge));
    v.extend((3..=12).map(FamilySpec::Pyramid));
    for d in 3..=5 {
        v.extend((3..=6).map(|k| FamilySpec::MultiPyramid(d, k)));
    }
    v.extend((2..=5).map(FamilySpec::Hypercube));
    v.extend((4..=12).map(FamilySpec::CompleteDag));
    v
}

/// Families that carry coordinates, for random functionals.
pub fn coordinate_families() -> Vec<FamilySpec> {
    vec![
        FamilySpec::Simplex(3),
        FamilySpec::Simplex(4),
        FamilySpec::Prism(4),
        FamilySpec::Prism(6),
        FamilySpec::WedgeVertex(5),
        FamilySpec::WedgeEdge(6),
        FamilySpec::Pyramid(5),
        FamilySpec::Pyramid(7),
        FamilySpec::MultiPyramid(4, 5),
        FamilySpec::Hypercube(3),
        FamilySpec::Hypercube(4),
    ]
}
