//! Counting monotone paths and arborescences, and the closed-form extremal
//! bounds they are checked against.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orientation::Orientation;

fn big(v: usize) -> BigUint {
    BigUint::from(v)
}

fn require_single_source_sink(o: &Orientation) -> Result<()> {
    if o.has_single_source_sink() {
        Ok(())
    } else {
        Err(Error::NotSingleSourceSink)
    }
}

/// Number of directed paths from the source to every vertex, indexed by
/// rank: entry `k` counts partial monotone paths ending at the `k`-th vertex.
pub fn count_paths_partial(o: &Orientation) -> Result<Vec<BigUint>> {
    let src = o.source();
    if (0..o.n_vertices()).any(|v| v != src && o.in_neighbors(v).is_empty()) {
        return Err(Error::NotSingleSourceSink);
    }
    let mut by_vertex = vec![BigUint::zero(); o.n_vertices()];
    by_vertex[src] = BigUint::one();
    for &v in &o.order()[1..] {
        by_vertex[v] = o.in_neighbors(v).iter().map(|&u| &by_vertex[u]).sum();
    }
    Ok(o.order().iter().map(|&v| by_vertex[v].clone()).collect())
}

/// `μ(P, f)` by dynamic programming in rank order.
pub fn count_paths_dp(o: &Orientation) -> Result<BigUint> {
    require_single_source_sink(o)?;
    let mu = count_paths_partial(o)?;
    Ok(mu.last().cloned().expect("at least one vertex"))
}

/// `μ(P, f) = 1 + Σ_k (d_k - 1) μ_k`, summed over all vertices but the sink.
///
/// Must agree with [`count_paths_dp`]; the two are kept as separate routes.
pub fn count_paths_lemma(o: &Orientation) -> Result<BigUint> {
    require_single_source_sink(o)?;
    let mu = count_paths_partial(o)?;
    let n = o.n_vertices();
    let mut total = BigUint::one();
    for (k, mu_k) in mu.iter().enumerate().take(n - 1) {
        let d = o.outdegree(o.vertex_at(k));
        // d >= 1 off the sink, so every term is non-negative
        total += mu_k * big(d - 1);
    }
    Ok(total)
}

/// `τ(P, f)` as the product of outdegrees over all vertices but the sink.
pub fn count_arborescences(o: &Orientation) -> Result<BigUint> {
    let sink = o.sink();
    let mut tau = BigUint::one();
    for v in 0..o.n_vertices() {
        if v == sink {
            continue;
        }
        match o.outdegree(v) {
            0 => return Err(Error::ZeroOutdegreeNonSink(v)),
            d => tau *= big(d),
        }
    }
    Ok(tau)
}

/// Counts arborescences by enumerating every out-arc choice function and
/// checking that each one routes every vertex to the sink along a unique
/// path. Refuses to run when the number of choice functions exceeds `cap`.
pub fn count_arborescences_oracle(o: &Orientation, cap: u64) -> Result<BigUint> {
    let n = o.n_vertices();
    let sink = o.sink();
    let movers: Vec<usize> = (0..n).filter(|&v| v != sink).collect();
    let mut space = BigUint::one();
    for &v in &movers {
        if o.outdegree(v) == 0 {
            return Err(Error::ZeroOutdegreeNonSink(v));
        }
        space *= big(o.outdegree(v));
    }
    if space > BigUint::from(cap) {
        return Err(Error::CapExceeded { what: "arborescence search space", value: space.to_string(), cap });
    }

    let mut digits = vec![0usize; movers.len()];
    let mut choice = vec![usize::MAX; n];
    let mut verified = 0u64;
    loop {
        for (i, &v) in movers.iter().enumerate() {
            choice[v] = o.out_neighbors(v)[digits[i]];
        }
        if routes_to_sink(&choice, sink) {
            verified += 1;
        }
        // mixed-radix increment
        let mut i = 0;
        loop {
            if i == movers.len() {
                return Ok(BigUint::from(verified));
            }
            digits[i] += 1;
            if digits[i] < o.outdegree(movers[i]) {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Following `choice` from any vertex reaches `sink` without revisiting a
/// vertex. The subgraph has out-degree one off the sink, so the walk is the
/// unique path.
fn routes_to_sink(choice: &[usize], sink: usize) -> bool {
    let n = choice.len();
    (0..n).all(|start| {
        let mut v = start;
        let mut steps = 0;
        while v != sink {
            v = choice[v];
            steps += 1;
            if steps > n {
                return false;
            }
        }
        true
    })
}

/// `T_0 = T_1 = 1`, `T_2 = 2`, `T_n = T_{n-1} + T_{n-2} + T_{n-3}`.
pub fn tribonacci(n: usize) -> BigUint {
    let (mut a, mut b, mut c) = (BigUint::one(), BigUint::one(), BigUint::from(2u32));
    match n {
        0 | 1 => return BigUint::one(),
        2 => return c,
        _ => {}
    }
    for _ in 3..=n {
        let next = &a + &b + &c;
        a = b;
        b = c;
        c = next;
    }
    c
}

/// `F_0 = 0`, `F_1 = F_2 = 1`.
pub fn fibonacci(n: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * big(i))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * big(n - i) / big(i + 1))
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// h-vector of the polar dual of a neighborly `d`-polytope with `m`
/// vertices: `h_k = C(m - d + k - 1, k)` for `k <= d/2`, symmetric.
pub fn neighborly_h_vector(d: usize, m: usize) -> Vec<BigUint> {
    let mut h = vec![BigUint::zero(); d + 1];
    for k in 0..=d / 2 {
        let v = binomial(m - d + k - 1, k);
        h[d - k] = v.clone();
        h[k] = v;
    }
    h
}

/// `Π_{i=1}^{d} i^{h_i}` for a given h-vector.
pub fn h_vector_product(h: &[BigUint]) -> BigUint {
    h.iter().enumerate().skip(1).fold(BigUint::one(), |acc, (i, e)| {
        acc * big(i).pow(e.to_u32().expect("h-vector exponent fits in u32"))
    })
}

/// The simple-polytope arborescence maximum written as two products over
/// the lower and upper halves of the h-vector, the `i = 0..⌊(d-1)/2⌋`
/// second half covering `h_{d-i}`.
pub fn arb_simple_max_split_form(d: usize, m: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 1..=d / 2 {
        acc *= big(i).pow(exp(binomial(m - d + i - 1, i)));
    }
    for i in 0..=(d - 1) / 2 {
        acc *= big(d - i).pow(exp(binomial(m - d + i - 1, i)));
    }
    acc
}

/// The same maximum with the upper product indexed `i = ⌊(d+1)/2⌋..d` and
/// exponent `C(m - i - 1, d - i)`. For even `d` both products contain the
/// `i = d/2` factor, so this form double-counts it.
pub fn arb_simple_max_upper_index_form(d: usize, m: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 1..=d / 2 {
        acc *= big(i).pow(exp(binomial(m - d + i - 1, i)));
    }
    for i in (d + 1) / 2..=d {
        acc *= big(i).pow(exp(binomial(m - i - 1, d - i)));
    }
    acc
}

fn exp(e: BigUint) -> u32 {
    e.to_u32().expect("exponent fits in u32")
}

/// Named closed-form bounds. Parameters are vertex counts `n`, facet counts
/// `m` and dimensions `d` as noted per variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    /// `(n)`: `T_{n-1}`, max paths on 3-polytopes with `n` vertices.
    PathMax3d,
    /// `(n)`: `⌈n/2⌉ + 2`.
    PathMin3d,
    /// `(d, n)`: `⌈dn/2⌉ - n + 2`.
    PathMinGeneral,
    /// `(n)`: `2^{n-2}`.
    PathMaxGeneral,
    /// `(n)`: `2 F_n`, for simple 3-polytopes with `n + 1` vertices.
    PathMaxSimpleProved,
    /// `(n)`: `F_{n+2} + 1`, for simple 3-polytopes with `2n` vertices.
    /// Conjectured.
    PathMaxSimpleConj,
    /// `(n)`: `2 · 3^{n-3}`.
    ArbMax3d,
    /// `(n)`: `(n-1)!`.
    ArbMaxGeneral,
    /// `(n)`: `2(n-1)`.
    ArbMin3d,
    /// `(m)`: `3 · 2^{m-3}`.
    ArbSimple3d,
    /// `(d, m)`: `d · ((d-1)!)^{m-d}`.
    ArbSimpleMin,
    /// `(d, m)`: `Π i^{h_i}` over the neighborly h-vector.
    ArbSimpleMax,
    /// `(d, n)`: `2 (n-1)(n-2)⋯(n-d+2)`. Attained by multipyramids; as a
    /// lower bound for every `d`-polytope it is an open question.
    ArbMultipyramid,
    /// `(n)`: `⌈(n-2)²/4⌉`.
    DiamLower3d,
    /// `(n)`: `(n-2)⌊(n-1)/2⌋`.
    DiamUpper3d,
    /// `(n)`: `⌊(n+5)/4⌋`. Conjectured minimum diameter.
    DiamMinConj,
}

impl BoundName {
    pub const ALL: [BoundName; 16] = [
        BoundName::PathMax3d,
        BoundName::PathMin3d,
        BoundName::PathMinGeneral,
        BoundName::PathMaxGeneral,
        BoundName::PathMaxSimpleProved,
        BoundName::PathMaxSimpleConj,
        BoundName::ArbMax3d,
        BoundName::ArbMaxGeneral,
        BoundName::ArbMin3d,
        BoundName::ArbSimple3d,
        BoundName::ArbSimpleMin,
        BoundName::ArbSimpleMax,
        BoundName::ArbMultipyramid,
        BoundName::DiamLower3d,
        BoundName::DiamUpper3d,
        BoundName::DiamMinConj,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BoundName::PathMax3d => "path_max_3d",
            BoundName::PathMin3d => "path_min_3d",
            BoundName::PathMinGeneral => "path_min_general",
            BoundName::PathMaxGeneral => "path_max_general",
            BoundName::PathMaxSimpleProved => "path_max_simple_proved",
            BoundName::PathMaxSimpleConj => "path_max_simple_conj",
            BoundName::ArbMax3d => "arb_max_3d",
            BoundName::ArbMaxGeneral => "arb_max_general",
            BoundName::ArbMin3d => "arb_min_3d",
            BoundName::ArbSimple3d => "arb_simple_3d",
            BoundName::ArbSimpleMin => "arb_simple_min",
            BoundName::ArbSimpleMax => "arb_simple_max",
            BoundName::ArbMultipyramid => "arb_multipyramid",
            BoundName::DiamLower3d => "diam_lower_3d",
            BoundName::DiamUpper3d => "diam_upper_3d",
            BoundName::DiamMinConj => "diam_min_conj",
        }
    }

    /// Conjectured bounds are reported, never enforced.
    pub fn is_conjecture(&self) -> bool {
        matches!(self, BoundName::PathMaxSimpleConj | BoundName::DiamMinConj | BoundName::ArbMultipyramid)
    }

    fn arity(&self) -> usize {
        match self {
            BoundName::PathMinGeneral | BoundName::ArbSimpleMin | BoundName::ArbSimpleMax | BoundName::ArbMultipyramid => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundName::ALL.into_iter().find(|b| b.as_str() == s).ok_or_else(|| Error::UnknownBound(s.to_string()))
    }
}

/// Evaluates a named bound exactly.
pub fn bound(name: BoundName, params: &[usize]) -> Result<BigUint> {
    if params.len() != name.arity() {
        return Err(Error::BadParams(format!("{name} takes {} parameter(s), got {}", name.arity(), params.len())));
    }
    let bad = |why: &str| Err(Error::BadParams(format!("{name}{params:?}: {why}")));
    let p0 = params[0];
    let value = match name {
        BoundName::PathMax3d => {
            if p0 < 4 {
                return bad("needs n >= 4");
            }
            tribonacci(p0 - 1)
        }
        BoundName::PathMin3d => big(ceil_div(p0, 2) + 2),
        BoundName::PathMinGeneral => {
            let (d, n) = (p0, params[1]);
            if d < 2 {
                return bad("needs d >= 2");
            }
            big(ceil_div(d * n, 2) + 2 - n)
        }
        BoundName::PathMaxGeneral => {
            if p0 < 2 {
                return bad("needs n >= 2");
            }
            BigUint::one() << (p0 - 2)
        }
        BoundName::PathMaxSimpleProved => {
            if p0 < 3 {
                return bad("needs n >= 3");
            }
            fibonacci(p0) * 2u32
        }
        BoundName::PathMaxSimpleConj => {
            if p0 < 2 {
                return bad("needs n >= 2");
            }
            fibonacci(p0 + 2) + 1u32
        }
        BoundName::ArbMax3d => {
            if p0 < 3 {
                return bad("needs n >= 3");
            }
            BigUint::from(3u32).pow((p0 - 3) as u32) * 2u32
        }
        BoundName::ArbMaxGeneral => {
            if p0 < 1 {
                return bad("needs n >= 1");
            }
            factorial(p0 - 1)
        }
        BoundName::ArbMin3d => {
            if p0 < 1 {
                return bad("needs n >= 1");
            }
            big(2 * (p0 - 1))
        }
        BoundName::ArbSimple3d => {
            if p0 < 4 {
                return bad("needs m >= 4");
            }
            BigUint::from(3u32) << (p0 - 3)
        }
        BoundName::ArbSimpleMin => {
            let (d, m) = (p0, params[1]);
            if d < 2 || m <= d {
                return bad("needs m > d >= 2");
            }
            factorial(d - 1).pow((m - d) as u32) * big(d)
        }
        BoundName::ArbSimpleMax => {
            let (d, m) = (p0, params[1]);
            if d < 2 || m <= d {
                return bad("needs m > d >= 2");
            }
            h_vector_product(&neighborly_h_vector(d, m))
        }
        BoundName::ArbMultipyramid => {
            let (d, n) = (p0, params[1]);
            if d < 3 || n < d + 1 {
                return bad("needs n > d >= 3");
            }
            (1..=d - 2).fold(BigUint::from(2u32), |acc, i| acc * big(n - i))
        }
        BoundName::DiamLower3d => {
            if p0 < 2 {
                return bad("needs n >= 2");
            }
            big(ceil_div((p0 - 2) * (p0 - 2), 4))
        }
        BoundName::DiamUpper3d => {
            if p0 < 2 {
                return bad("needs n >= 2");
            }
            big((p0 - 2) * ((p0 - 1) / 2))
        }
        BoundName::DiamMinConj => big((p0 + 5) / 4),
    };
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// observed <= bound
    AtMost,
    /// observed >= bound
    AtLeast,
    /// observed == bound
    Equal,
}

impl Relation {
    pub fn holds(&self, observed: &BigUint, bound: &BigUint) -> bool {
        match self {
            Relation::AtMost => observed <= bound,
            Relation::AtLeast => observed >= bound,
            Relation::Equal => observed == bound,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Equal => "==",
        }
    }
}

/// Which statistic a bound constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    Mu,
    Tau,
    Diameter,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub bound: BoundName,
    pub params: Vec<usize>,
    pub statistic: Statistic,
    pub relation: Relation,
    #[serde(serialize_with = "ser_big")]
    pub value: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub observed: BigUint,
    pub satisfied: bool,
    pub conjecture: bool,
}

impl BoundCheck {
    pub fn new(bound: BoundName, params: Vec<usize>, statistic: Statistic, relation: Relation, observed: &BigUint) -> Result<Self> {
        let value = self::bound(bound, &params)?;
        let satisfied = relation.holds(observed, &value);
        Ok(Self { bound, params, statistic, relation, value, observed: observed.clone(), satisfied, conjecture: bound.is_conjecture() })
    }

    /// A proved bound that does not hold.
    pub fn is_violation(&self) -> bool {
        !self.satisfied && !self.conjecture
    }
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_big_vec<S: serde::Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub dim: usize,
    pub n_vertices: usize,
    pub n_edges: usize,
    pub n_faces: usize,
    pub simple: bool,
    #[serde(serialize_with = "ser_big")]
    pub mu: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub mu_lemma: BigUint,
    #[serde(serialize_with = "ser_big_vec")]
    pub mu_partial: Vec<BigUint>,
    #[serde(serialize_with = "ser_big")]
    pub tau: BigUint,
    pub outdegrees: Vec<usize>,
    pub h_vector: Option<Vec<usize>>,
    pub bounds_checked: Vec<BoundCheck>,
}

impl CountReport {
    pub fn violations(&self) -> Vec<&BoundCheck> {
        self.bounds_checked.iter().filter(|b| b.is_violation()).collect()
    }

    /// Aligned-column text rendering.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "dim {}  vertices {}  edges {}  2-faces {}  simple {}\n",
            self.dim, self.n_vertices, self.n_edges, self.n_faces, self.simple
        ));
        out.push_str(&format!("mu (dp)     {}\n", self.mu));
        out.push_str(&format!("mu (lemma)  {}\n", self.mu_lemma));
        out.push_str(&format!("tau         {}\n", self.tau));
        let degs: Vec<String> = self.outdegrees.iter().map(usize::to_string).collect();
        out.push_str(&format!("outdegrees  {}\n", degs.join(" ")));
        if let Some(h) = &self.h_vector {
            let hs: Vec<String> = h.iter().map(usize::to_string).collect();
            out.push_str(&format!("h-vector    ({})\n", hs.join(", ")));
        }
        if self.bounds_checked.is_empty() {
            return out;
        }
        let rows: Vec<[String; 5]> = self
            .bounds_checked
            .iter()
            .map(|b| {
                let params: Vec<String> = b.params.iter().map(usize::to_string).collect();
                let status = match (b.satisfied, b.conjecture) {
                    (true, false) => "ok",
                    (false, false) => "VIOLATED",
                    (true, true) => "consistent (conj)",
                    (false, true) => "fails (conj)",
                };
                [
                    format!("{}({})", b.bound, params.join(",")),
                    format!("{:?}", b.statistic).to_lowercase(),
                    format!("{} {} {}", b.observed, b.relation.symbol(), b.value),
                    status.to_string(),
                    String::new(),
                ]
            })
            .collect();
        let width = |c: usize| rows.iter().map(|r| r[c].len()).max().unwrap_or(0);
        let (w0, w1, w2) = (width(0), width(1), width(2));
        out.push_str(&format!("{:<w0$}  {:<w1$}  {:<w2$}  status\n", "bound", "stat", "check"));
        for r in rows {
            out.push_str(&format!("{:<w0$}  {:<w1$}  {:<w2$}  {}\n", r[0], r[1], r[2], r[3]));
        }
        out
    }
}

/// Diameter rows for a 3-polytope with `n` vertices: the proved upper
/// envelope, the conjectured minimum and, for the stacked family, the
/// proved lower bound.
pub fn diameter_checks(n: usize, diameter: usize, stacked: bool) -> Result<Vec<BoundCheck>> {
    let observed = BigUint::from(diameter);
    let mut rows = vec![
        BoundCheck::new(BoundName::DiamUpper3d, vec![n], Statistic::Diameter, Relation::AtMost, &observed)?,
        BoundCheck::new(BoundName::DiamMinConj, vec![n], Statistic::Diameter, Relation::AtLeast, &observed)?,
    ];
    if stacked {
        rows.push(BoundCheck::new(BoundName::DiamLower3d, vec![n], Statistic::Diameter, Relation::AtLeast, &observed)?);
    }
    Ok(rows)
}

/// Evaluates `μ` and `τ` and checks them against every bound that applies
/// to the orientation's dimension, vertex count and simplicity.
pub fn check_bounds(o: &Orientation) -> Result<CountReport> {
    let mu = count_paths_dp(o)?;
    let mu_lemma = count_paths_lemma(o)?;
    let mu_partial = count_paths_partial(o)?;
    let tau = count_arborescences(o)?;
    let n = o.n_vertices();
    let d = o.dim();
    let simple = o.skeleton().is_simple();
    let h = if simple { o.h_vector().ok() } else { None };
    let mut checks = Vec::new();
    let mut add = |b, params: Vec<usize>, stat, rel| -> Result<()> {
        let observed = match stat {
            Statistic::Mu => &mu,
            Statistic::Tau => &tau,
            Statistic::Diameter => unreachable!("diameter bounds are checked by the flip-graph harness"),
        };
        checks.push(BoundCheck::new(b, params, stat, rel, observed)?);
        Ok(())
    };
    if d == 3 && n >= 4 {
        add(BoundName::PathMax3d, vec![n], Statistic::Mu, Relation::AtMost)?;
        add(BoundName::PathMin3d, vec![n], Statistic::Mu, Relation::AtLeast)?;
        add(BoundName::ArbMax3d, vec![n], Statistic::Tau, Relation::AtMost)?;
        add(BoundName::ArbMin3d, vec![n], Statistic::Tau, Relation::AtLeast)?;
        if simple {
            // simple 3-polytope: m = n/2 + 2 facets, h = (1, m-3, m-3, 1)
            let m = n / 2 + 2;
            add(BoundName::ArbSimple3d, vec![m], Statistic::Tau, Relation::Equal)?;
            add(BoundName::PathMaxSimpleProved, vec![n - 1], Statistic::Mu, Relation::AtMost)?;
            if n.is_even() {
                add(BoundName::PathMaxSimpleConj, vec![n / 2], Statistic::Mu, Relation::AtMost)?;
            }
        }
    }
    if d >= 4 {
        add(BoundName::PathMaxGeneral, vec![n], Statistic::Mu, Relation::AtMost)?;
        add(BoundName::PathMinGeneral, vec![d, n], Statistic::Mu, Relation::AtLeast)?;
        add(BoundName::ArbMaxGeneral, vec![n], Statistic::Tau, Relation::AtMost)?;
        add(BoundName::ArbMultipyramid, vec![d, n], Statistic::Tau, Relation::AtLeast)?;
        if let Some(h) = &h {
            let m = h[1] + d;
            if m > d {
                add(BoundName::ArbSimpleMin, vec![d, m], Statistic::Tau, Relation::AtLeast)?;
                add(BoundName::ArbSimpleMax, vec![d, m], Statistic::Tau, Relation::AtMost)?;
            }
        }
    }
    Ok(CountReport {
        dim: d,
        n_vertices: n,
        n_edges: o.skeleton().edges().len(),
        n_faces: o.faces().len(),
        simple,
        mu,
        mu_lemma,
        mu_partial,
        tau,
        outdegrees: o.outdegree_sequence(),
        h_vector: h,
        bounds_checked: checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;
    use crate::Rational;

    fn orient(spec: FamilySpec) -> Orientation {
        spec.canonical_orientation::<Rational>().unwrap()
    }

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn recurrences() {
        let t: Vec<u64> = (0..12).map(|n| tribonacci(n).to_u64().unwrap()).collect();
        // unrolled by hand from T0 = T1 = 1, T2 = 2
        assert_eq!(t, vec![1, 1, 2, 4, 7, 13, 24, 44, 81, 149, 274, 504]);
        assert_eq!(fibonacci(7), b(13));
        assert_eq!(fibonacci(1), b(1));
        assert_eq!(fibonacci(2), b(1));
        assert_eq!(binomial(6, 3), b(20));
        assert_eq!(binomial(3, 5), b(0));
        assert_eq!(factorial(5), b(120));
    }

    #[test]
    fn simplex_counts() {
        let o = orient(FamilySpec::Simplex(3));
        assert_eq!(count_paths_dp(&o).unwrap(), b(4));
        assert_eq!(count_paths_lemma(&o).unwrap(), b(4));
        assert_eq!(count_paths_partial(&o).unwrap(), vec![b(1), b(1), b(2), b(4)]);
        assert_eq!(count_arborescences(&o).unwrap(), b(6));
        assert_eq!(count_arborescences_oracle(&o, 100).unwrap(), b(6));
    }

    #[test]
    fn stacked_counts() {
        let o = orient(FamilySpec::StackedX(10));
        assert_eq!(count_paths_dp(&o).unwrap(), b(149));
        assert_eq!(count_arborescences(&o).unwrap(), b(4374));
        let partial = count_paths_partial(&o).unwrap();
        for (k, mu) in partial.iter().enumerate() {
            assert_eq!(*mu, tribonacci(k));
        }
    }

    #[test]
    fn complete_dag_counts() {
        let o = orient(FamilySpec::CompleteDag(5));
        assert_eq!(count_paths_dp(&o).unwrap(), b(8));
        let o4 = orient(FamilySpec::CompleteDag(4));
        assert_eq!(count_paths_partial(&o4).unwrap(), vec![b(1), b(1), b(2), b(4)]);
        let big = orient(FamilySpec::CompleteDag(60));
        assert_eq!(count_paths_dp(&big).unwrap(), BigUint::one() << 58u32);
        assert_eq!(count_paths_lemma(&big).unwrap(), BigUint::one() << 58u32);
    }

    #[test]
    fn prism_and_pyramid() {
        let o = orient(FamilySpec::Prism(3));
        assert_eq!(count_paths_lemma(&o).unwrap(), b(5));
        assert_eq!(count_arborescences_oracle(&o, 1000).unwrap(), b(12));
        let py = orient(FamilySpec::Pyramid(4));
        assert_eq!(count_arborescences_oracle(&py, 1000).unwrap(), b(8));
        let cube = orient(FamilySpec::Hypercube(3));
        assert_eq!(count_arborescences(&cube).unwrap(), b(24));
    }

    #[test]
    fn oracle_respects_cap() {
        let o = orient(FamilySpec::StackedX(12));
        let err = count_arborescences_oracle(&o, 1000).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn oracle_rejects_broken_choice() {
        // a 2-cycle never reaches the sink
        assert!(!routes_to_sink(&[1, 0, 2], 2));
        assert!(routes_to_sink(&[1, 2, 2], 2));
    }

    #[test]
    fn multiple_sources_are_rejected() {
        let square = crate::Polytope::<Rational>::from_parts(
            2,
            4,
            vec![[0, 1], [1, 2], [2, 3], [0, 3]],
            vec![vec![0, 1, 2, 3]],
            None,
            None,
        )
        .unwrap();
        let o = Orientation::new(&square, &crate::Functional::Order(vec![0, 2, 1, 3])).unwrap();
        assert_eq!(count_paths_dp(&o), Err(Error::NotSingleSourceSink));
        assert_eq!(count_paths_lemma(&o), Err(Error::NotSingleSourceSink));
    }

    #[test]
    fn named_bounds() {
        assert_eq!(bound(BoundName::PathMax3d, &[10]).unwrap(), b(149));
        assert_eq!(bound(BoundName::ArbSimpleMin, &[4, 6]).unwrap(), b(144));
        assert_eq!(bound(BoundName::ArbSimpleMax, &[4, 6]).unwrap(), b(288));
        assert_eq!(bound(BoundName::PathMin3d, &[7]).unwrap(), b(6));
        assert_eq!(bound(BoundName::PathMinGeneral, &[4, 16]).unwrap(), b(18));
        assert_eq!(bound(BoundName::PathMaxGeneral, &[16]).unwrap(), b(1 << 14));
        assert_eq!(bound(BoundName::ArbMultipyramid, &[4, 7]).unwrap(), b(60));
        assert_eq!(bound(BoundName::DiamLower3d, &[7]).unwrap(), b(7));
        assert_eq!(bound(BoundName::DiamUpper3d, &[7]).unwrap(), b(15));
        assert_eq!(bound(BoundName::DiamMinConj, &[8]).unwrap(), b(3));
        assert_eq!(bound(BoundName::PathMaxSimpleConj, &[4]).unwrap(), b(9));
        assert_eq!(bound(BoundName::PathMaxSimpleProved, &[7]).unwrap(), b(26));
        assert!(matches!(bound(BoundName::PathMax3d, &[3]), Err(Error::BadParams(_))));
        assert!(matches!(bound(BoundName::ArbSimpleMin, &[4]), Err(Error::BadParams(_))));
        assert!(matches!("nope".parse::<BoundName>(), Err(Error::UnknownBound(_))));
        assert_eq!("arb_max_3d".parse::<BoundName>().unwrap(), BoundName::ArbMax3d);
    }

    #[test]
    fn three_dimensional_simple_forms_agree() {
        for m in 4..=20 {
            let v = bound(BoundName::ArbSimple3d, &[m]).unwrap();
            assert_eq!(bound(BoundName::ArbSimpleMin, &[3, m]).unwrap(), v);
            assert_eq!(bound(BoundName::ArbSimpleMax, &[3, m]).unwrap(), v);
        }
    }

    #[test]
    fn printed_product_forms() {
        for d in 2..=8 {
            for m in (d + 1)..=(d + 6) {
                let h_route = bound(BoundName::ArbSimpleMax, &[d, m]).unwrap();
                assert_eq!(arb_simple_max_split_form(d, m), h_route, "d={d} m={m}");
                let upper = arb_simple_max_upper_index_form(d, m);
                if d % 2 == 1 {
                    assert_eq!(upper, h_route);
                } else {
                    let mid = big(d / 2).pow(exp(binomial(m - d / 2 - 1, d / 2)));
                    assert_eq!(upper, h_route * mid);
                }
            }
        }
    }

    #[test]
    fn report_for_stacked_x8_is_tight() {
        let r = check_bounds(&orient(FamilySpec::StackedX(8))).unwrap();
        assert_eq!(r.mu, b(44));
        let top = r.bounds_checked.iter().find(|c| c.bound == BoundName::PathMax3d).unwrap();
        assert_eq!(top.value, b(44));
        assert!(top.satisfied);
        assert!(r.violations().is_empty());
        assert!(r.to_table().contains("path_max_3d(8)"));
    }

    #[test]
    fn report_for_wedge_vertex4() {
        let r = check_bounds(&orient(FamilySpec::WedgeVertex(4))).unwrap();
        assert_eq!(r.mu, b(6));
        let low = r.bounds_checked.iter().find(|c| c.bound == BoundName::PathMin3d).unwrap();
        assert_eq!(low.value, b(6));
    }

    #[test]
    fn report_for_hypercube4() {
        let o = orient(FamilySpec::Hypercube(4));
        let r = check_bounds(&o).unwrap();
        assert_eq!(r.tau, b(20736));
        assert_eq!(r.h_vector, Some(vec![1, 4, 6, 4, 1]));
        assert!(r.mu >= bound(BoundName::PathMinGeneral, &[4, 16]).unwrap());
        assert!(r.mu <= bound(BoundName::PathMaxGeneral, &[16]).unwrap());
        assert!(r.violations().is_empty());
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"tau\":\"20736\""));
    }
}
