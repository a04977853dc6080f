//! Graphs on the canonical vertex order: Paley graphs by the square-difference
//! rule, block graphs of orthogonal arrays, strongly-regular parameter
//! verification, clique regularity checks, and exhaustive maximum-clique
//! enumeration.

use crate::gf::ExtField;
use crate::plane::{self, all_slopes, line, line_index_of, OaViolation, OrthogonalArray};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    InvalidOa(OaViolation),
    /// m ≥ n+1 puts the array outside the block-graph parameter formulas.
    HypothesisViolated {
        m: u64,
        n: u64,
    },
    NotAClique {
        u: usize,
        v: usize,
    },
    VertexOutOfRange {
        vertex: usize,
        n: usize,
    },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::InvalidOa(v) => write!(f, "invalid orthogonal array: {v}"),
            GraphError::HypothesisViolated { m, n } => {
                write!(f, "row count m={m} must satisfy m < n+1 (n={n})")
            }
            GraphError::NotAClique { u, v } => {
                write!(f, "vertices {u} and {v} are not adjacent")
            }
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for n={n}")
            }
        }
    }
}

impl std::error::Error for GraphError {}

/// Undirected loop-free graph stored as one dense bitset row per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    labels: Vec<String>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self::with_labels((0..n).map(|i| i.to_string()).collect())
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        let n = labels.len();
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
            labels,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "no loops");
        assert!(u < self.n && v < self.n);
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        bits_to_vec(self.row(v))
    }

    pub fn common_neighbor_count(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Edges as (u, v) with u < v, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

fn bits_to_vec(words: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (wi, &w) in words.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let b = w.trailing_zeros() as usize;
            out.push(wi * 64 + b);
            w &= w - 1;
        }
    }
    out
}

/// The Paley graph on GF(q²): vertices in canonical order, an edge wherever
/// the difference is a nonzero square. Symmetry needs no enforcement because
/// −1 is a square in GF(q²).
pub fn build_paley(e: &ExtField) -> Graph {
    let elems = e.enumerate_elements();
    let n = elems.len();
    let mut g = Graph::with_labels(elems.iter().map(|v| e.element_string(v)).collect());
    for i in 0..n {
        for j in i + 1..n {
            let diff = e.sub(&elems[i], &elems[j]);
            if e.is_square(&diff).expect("distinct vertices differ") {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Block graph of an orthogonal array: vertices are columns, adjacent when
/// they share an entry in some row.
pub fn build_block_graph(a: &OrthogonalArray) -> Result<Graph, GraphError> {
    plane::validate_oa(a).map_err(GraphError::InvalidOa)?;
    let n = a.n() as usize;
    let mut g = Graph::with_labels(a.col_labels().to_vec());
    for row in a.rows() {
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (col, &sym) in row.iter().enumerate() {
            buckets[sym as usize].push(col);
        }
        for bucket in buckets {
            for i in 0..bucket.len() {
                for j in i + 1..bucket.len() {
                    g.add_edge(bucket[i], bucket[j]);
                }
            }
        }
    }
    Ok(g)
}

/// Literal adjacency equality under the shared vertex order.
pub fn graphs_equal(g: &Graph, h: &Graph) -> bool {
    g.n == h.n && g.bits == h.bits
}

/// Strongly-regular parameters (v, k, λ, μ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    /// The counting identity k(k−λ−1) = (v−k−1)μ.
    pub fn feasibility_holds(&self) -> bool {
        let (v, k, l, m) = (
            self.v as i128,
            self.k as i128,
            self.lambda as i128,
            self.mu as i128,
        );
        k * (k - l - 1) == (v - k - 1) * m
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SrgViolation {
    IrregularDegree {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    LambdaMismatch {
        u: usize,
        v: usize,
        count: usize,
        expected: usize,
    },
    MuMismatch {
        u: usize,
        v: usize,
        count: usize,
        expected: usize,
    },
}

/// Outcome of the strongly-regular scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SrgCheck {
    Srg(SrgParams),
    /// Complete or empty graphs leave λ or μ with no defining pair.
    Degenerate {
        complete: bool,
    },
    NotSrg(SrgViolation),
}

/// Verifies regularity, then constancy of λ over edges and μ over non-edges.
pub fn check_srg(g: &Graph) -> SrgCheck {
    let n = g.n_vertices();
    if n == 0 {
        return SrgCheck::Degenerate { complete: true };
    }
    let k = g.degree(0);
    for v in 1..n {
        if g.degree(v) != k {
            return SrgCheck::NotSrg(SrgViolation::IrregularDegree {
                vertex: v,
                degree: g.degree(v),
                expected: k,
            });
        }
    }
    if k == n - 1 {
        return SrgCheck::Degenerate { complete: true };
    }
    if k == 0 {
        return SrgCheck::Degenerate { complete: false };
    }
    let mut lambda: Option<usize> = None;
    let mut mu: Option<usize> = None;
    for u in 0..n {
        for v in u + 1..n {
            let c = g.common_neighbor_count(u, v);
            if g.has_edge(u, v) {
                match lambda {
                    None => lambda = Some(c),
                    Some(l) if l != c => {
                        return SrgCheck::NotSrg(SrgViolation::LambdaMismatch {
                            u,
                            v,
                            count: c,
                            expected: l,
                        })
                    }
                    _ => {}
                }
            } else {
                match mu {
                    None => mu = Some(c),
                    Some(m) if m != c => {
                        return SrgCheck::NotSrg(SrgViolation::MuMismatch {
                            u,
                            v,
                            count: c,
                            expected: m,
                        })
                    }
                    _ => {}
                }
            }
        }
    }
    SrgCheck::Srg(SrgParams {
        v: n as u64,
        k: k as u64,
        lambda: lambda.expect("k > 0 gives at least one edge") as u64,
        mu: mu.expect("k < n-1 gives at least one non-edge") as u64,
    })
}

/// (n², m(n−1), (m−1)(m−2)+n−2, m(m−1)) for the block graph of an m × n²
/// orthogonal array with m < n+1.
pub fn expected_srg_params(m: u64, n: u64) -> Result<SrgParams, GraphError> {
    if m == 0 || n < 2 || m > n {
        return Err(GraphError::HypothesisViolated { m, n });
    }
    // (m−1)(m−2) needs signed arithmetic at m = 1.
    let lambda = (m as i64 - 1) * (m as i64 - 2) + n as i64 - 2;
    Ok(SrgParams {
        v: n * n,
        k: m * (n - 1),
        lambda: lambda as u64,
        mu: m * (m - 1),
    })
}

/// Eigenvalues m(n−1), n−m, −m with multiplicities 1, m(n−1), (n−1)(n+1−m);
/// coinciding eigenvalues merge their multiplicities.
pub fn expected_spectrum(m: u64, n: u64) -> Result<BTreeMap<i64, u64>, GraphError> {
    if m == 0 || n < 2 || m > n {
        return Err(GraphError::HypothesisViolated { m, n });
    }
    let mut spectrum = BTreeMap::new();
    *spectrum.entry((m * (n - 1)) as i64).or_insert(0) += 1;
    *spectrum.entry((n - m) as i64).or_insert(0) += m * (n - 1);
    *spectrum.entry(-(m as i64)).or_insert(0) += (n - 1) * (n + 1 - m);
    Ok(spectrum)
}

/// Result of the clique bound test |S| ≤ 1 + k/m for a clique S in an SRG
/// with smallest eigenvalue −m.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HoffmanReport {
    pub clique_size: usize,
    pub size_bound_ok: bool,
    pub at_equality: bool,
    /// Only meaningful at equality: every outside vertex has μ/m neighbours.
    pub regular: Option<bool>,
    pub outside_count: Option<u64>,
}

/// Checks the clique bound and, at equality, outside regularity with the
/// exact count μ/m. Comparisons are multiplied through by m so no division
/// is ever needed.
pub fn hoffman_check(
    g: &Graph,
    params: &SrgParams,
    m_eig: u64,
    s: &[usize],
) -> Result<HoffmanReport, GraphError> {
    for &v in s {
        if v >= g.n_vertices() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: g.n_vertices(),
            });
        }
    }
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] == s[j] || !g.has_edge(s[i], s[j]) {
                return Err(GraphError::NotAClique { u: s[i], v: s[j] });
            }
        }
    }
    let size = s.len() as u64;
    if size == 0 {
        return Ok(HoffmanReport {
            clique_size: 0,
            size_bound_ok: true,
            at_equality: false,
            regular: None,
            outside_count: None,
        });
    }
    let size_bound_ok = m_eig * (size - 1) <= params.k;
    let at_equality = m_eig * (size - 1) == params.k;
    if !at_equality {
        return Ok(HoffmanReport {
            clique_size: s.len(),
            size_bound_ok,
            at_equality,
            regular: None,
            outside_count: None,
        });
    }
    let mut in_s = vec![false; g.n_vertices()];
    for &v in s {
        in_s[v] = true;
    }
    let mut regular = true;
    for (w, _) in in_s.iter().enumerate().filter(|(_, &inside)| !inside) {
        let count = s.iter().filter(|&&v| g.has_edge(w, v)).count() as u64;
        if m_eig * count != params.mu {
            regular = false;
            break;
        }
    }
    Ok(HoffmanReport {
        clique_size: s.len(),
        size_bound_ok,
        at_equality,
        regular: Some(regular),
        outside_count: if regular {
            Some(params.mu / m_eig)
        } else {
            None
        },
    })
}

/// Options for the exhaustive maximum-clique search.
#[derive(Debug, Clone)]
pub struct CliqueSearchOptions {
    /// Recursion-node budget; exceeding it aborts with `exhaustive = false`.
    pub node_budget: u64,
    /// A certified lower bound on the clique number. Branches that cannot
    /// reach it are pruned, which is sound only when the caller has already
    /// exhibited a clique of this size.
    pub omega_floor: Option<usize>,
}

impl Default for CliqueSearchOptions {
    fn default() -> Self {
        CliqueSearchOptions {
            node_budget: 1_000_000_000,
            omega_floor: None,
        }
    }
}

/// All maximum cliques found, sorted canonically (each clique ascending,
/// the list lexicographic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSearch {
    pub omega: usize,
    pub cliques: Vec<Vec<usize>>,
    pub exhaustive: bool,
    pub nodes_visited: u64,
}

struct SearchState<'a> {
    g: &'a Graph,
    best: usize,
    found: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

fn word_and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn word_count(a: &[u64]) -> usize {
    a.iter().map(|w| w.count_ones() as usize).sum()
}

fn word_is_empty(a: &[u64]) -> bool {
    a.iter().all(|&w| w == 0)
}

fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

fn bron_kerbosch(st: &mut SearchState<'_>, r: &mut Vec<usize>, p: Vec<u64>, x: Vec<u64>) {
    st.nodes += 1;
    if st.nodes > st.budget {
        st.aborted = true;
        return;
    }
    if word_is_empty(&p) && word_is_empty(&x) {
        if r.len() > st.best {
            st.best = r.len();
            st.found.clear();
        }
        if r.len() == st.best {
            let mut clique = r.clone();
            clique.sort_unstable();
            st.found.push(clique);
        }
        return;
    }
    if r.len() + word_count(&p) < st.best {
        return;
    }
    // Pivot on the candidate covering most of P; smallest index on ties.
    let mut pivot = usize::MAX;
    let mut pivot_cover = 0;
    for u in bits_to_vec(&p).into_iter().chain(bits_to_vec(&x)) {
        let cover = and_count(&p, st.g.row(u));
        if pivot == usize::MAX || cover > pivot_cover || (cover == pivot_cover && u < pivot) {
            pivot = u;
            pivot_cover = cover;
        }
    }
    // P \ N(pivot); the pivot itself stays in (it is never its own neighbour).
    let ext: Vec<usize> = bits_to_vec(&p)
        .into_iter()
        .filter(|&v| !st.g.has_edge(pivot, v))
        .collect();
    let mut p = p;
    let mut x = x;
    for v in ext {
        if st.aborted {
            return;
        }
        let np = word_and(&p, st.g.row(v));
        let nx = word_and(&x, st.g.row(v));
        r.push(v);
        bron_kerbosch(st, r, np, nx);
        r.pop();
        p[v / 64] &= !(1 << (v % 64));
        x[v / 64] |= 1 << (v % 64);
    }
}

/// Exhaustive enumeration of all maximum cliques by branch and bound with
/// pivoting. The result set is deterministic for a given graph and options.
pub fn enumerate_max_cliques(g: &Graph, opts: &CliqueSearchOptions) -> CliqueSearch {
    let n = g.n_vertices();
    let words = n.div_ceil(64).max(1);
    let mut p = vec![0u64; words];
    for v in 0..n {
        p[v / 64] |= 1 << (v % 64);
    }
    let mut st = SearchState {
        g,
        best: opts.omega_floor.unwrap_or(1),
        found: Vec::new(),
        nodes: 0,
        budget: opts.node_budget,
        aborted: false,
    };
    let mut r = Vec::new();
    if n > 0 {
        bron_kerbosch(&mut st, &mut r, p, vec![0u64; words]);
    }
    st.found.sort_unstable();
    CliqueSearch {
        omega: if st.found.is_empty() { 0 } else { st.best },
        cliques: st.found,
        exhaustive: !st.aborted,
        nodes_visited: st.nodes,
    }
}

/// Per-clique classification attached to a search result.
#[derive(Debug, Clone, Serialize)]
pub struct CliqueInfo {
    pub vertices: Vec<usize>,
    pub is_quadratic_line: bool,
    pub slope: Option<String>,
    pub regular: bool,
    pub outside_count: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CliqueReport {
    pub omega: usize,
    pub n_max_cliques: usize,
    pub exhaustive: bool,
    pub nodes_visited: u64,
    pub all_quadratic_lines: bool,
    pub all_regular: bool,
    pub cliques: Vec<CliqueInfo>,
}

/// Classifies every maximum clique: is it an affine line with square slope,
/// which parallel class does it belong to, and is it regular (all outside
/// vertices seeing the same number of members).
pub fn classify_cliques(g: &Graph, e: &ExtField, search: &CliqueSearch) -> CliqueReport {
    let slopes = all_slopes(e);
    let cliques: Vec<CliqueInfo> = search
        .cliques
        .iter()
        .map(|s| {
            let quadratic = plane::is_quadratic_line(s, e);
            let slope = slopes.iter().find_map(|sl| {
                let v0 = e.element(s[0] as u64);
                let idx = line_index_of(&v0, sl, e);
                let ln = line(sl, &idx, e).vertex_indices(e);
                (ln == *s).then(|| sl.notation(e))
            });
            let (regular, outside_count) = outside_regularity(g, s);
            CliqueInfo {
                vertices: s.clone(),
                is_quadratic_line: quadratic,
                slope,
                regular,
                outside_count,
            }
        })
        .collect();
    CliqueReport {
        omega: search.omega,
        n_max_cliques: cliques.len(),
        exhaustive: search.exhaustive,
        nodes_visited: search.nodes_visited,
        all_quadratic_lines: cliques.iter().all(|c| c.is_quadratic_line),
        all_regular: cliques.iter().all(|c| c.regular),
        cliques,
    }
}

fn outside_regularity(g: &Graph, s: &[usize]) -> (bool, Option<u64>) {
    let mut in_s = vec![false; g.n_vertices()];
    for &v in s {
        in_s[v] = true;
    }
    let mut common: Option<u64> = None;
    for (w, _) in in_s.iter().enumerate().filter(|(_, &inside)| !inside) {
        let count = s.iter().filter(|&&v| g.has_edge(w, v)).count() as u64;
        match common {
            None => common = Some(count),
            Some(c) if c != count => return (false, None),
            _ => {}
        }
    }
    (true, common)
}
