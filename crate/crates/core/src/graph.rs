//! Riordan graphs and the combinatorial queries run on them.
//!
//! Vertices are labelled `1..=n` at the API boundary and stored 0-based.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bitmat::BitMatrix;
use crate::error::{Error, Result};
use crate::fps::Gf2Series;
use crate::series_lang;

/// Simple labelled graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: BitMatrix,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}) {:?}", self.n(), self.adj)
    }
}

impl Graph {
    /// `adj` must be square and symmetric with zero diagonal.
    pub fn from_adjacency(adj: BitMatrix) -> Result<Self> {
        let n = adj.rows();
        if adj.cols() != n {
            return Err(Error::Dimension(format!("{}x{} adjacency", n, adj.cols())));
        }
        for i in 0..n {
            if adj.get(i, i) {
                return Err(Error::Dimension(format!("loop at vertex {}", i + 1)));
            }
            for j in 0..i {
                if adj.get(i, j) != adj.get(j, i) {
                    return Err(Error::Dimension("adjacency is not symmetric".into()));
                }
            }
        }
        Ok(Graph { adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: BitMatrix::zeros(n, n),
        }
    }

    pub fn complete(n: usize) -> Self {
        Graph {
            adj: BitMatrix::from_fn(n, n, |i, j| i != j),
        }
    }

    pub fn n(&self) -> usize {
        self.adj.rows()
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    /// 1-based adjacency test.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u - 1, v - 1)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.count_ones() / 2
    }

    /// Edges `(u, v)` with `u < v`, 1-based, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in self.adj.row_support(u).filter(|&v| v > u) {
                out.push((u + 1, v + 1));
            }
        }
        out
    }

    /// Degrees indexed by `vertex - 1`.
    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|i| self.adj.row_count(i)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.row_count(v - 1)
    }

    /// Open neighbourhood of `v`, 1-based labels.
    pub fn neighborhood(&self, v: usize) -> Vec<usize> {
        self.adj.row_support(v - 1).map(|u| u + 1).collect()
    }

    pub fn universal_vertices(&self) -> Vec<usize> {
        let n = self.n();
        (1..=n).filter(|&v| self.degree(v) + 1 == n).collect()
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        Graph {
            adj: BitMatrix::from_fn(n, n, |i, j| i != j && !self.adj.get(i, j)),
        }
    }

    /// Subgraph induced by the 1-based `vertices`, relabelled `1..` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let idx: Vec<usize> = vertices.iter().map(|v| v - 1).collect();
        Graph {
            adj: self.adj.submatrix(&idx, &idx),
        }
    }

    /// Keep only edges joining an odd and an even label.
    pub fn bipartite_double(&self) -> Graph {
        let n = self.n();
        Graph {
            adj: BitMatrix::from_fn(n, n, |i, j| (i + j) % 2 == 1 && self.adj.get(i, j)),
        }
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(k, &u)| vertices[k + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let n = self.n();
        let mut dist = vec![None; n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for v in self.adj.row_support(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Largest eccentricity; `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n() {
            for d in self.bfs(s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    /// Integer Laplacian `D - A`.
    pub fn laplacian_i64(&self) -> Vec<Vec<i64>> {
        self.degree_shifted(-1)
    }

    /// Integer signless Laplacian `D + A`.
    pub fn signless_i64(&self) -> Vec<Vec<i64>> {
        self.degree_shifted(1)
    }

    fn degree_shifted(&self, sign: i64) -> Vec<Vec<i64>> {
        let deg = self.degrees();
        let mut m = self.adj.to_i64();
        for (i, row) in m.iter_mut().enumerate() {
            for x in row.iter_mut() {
                *x *= sign;
            }
            row[i] = deg[i] as i64;
        }
        m
    }

    pub fn to_text(&self) -> String {
        let n = self.n();
        let mut s = format!("{n}\n");
        for i in 0..n {
            let row: Vec<&str> = (0..n)
                .map(|j| if self.adj.get(i, j) { "1" } else { "0" })
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in 1..=self.n() {
            let _ = writeln!(s, "  {v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("u,v\n");
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u},{v}");
        }
        s
    }
}

/// Leading `rows x cols` block of the binary Riordan matrix: entry `(i, j)`
/// is `[z^i] g f^j`, 0-based.
pub fn binary_riordan(g: &Gf2Series, f: &Gf2Series, rows: usize, cols: usize) -> Result<BitMatrix> {
    if f.precision() > 0 && f.bit(0) {
        return Err(Error::NonzeroLowTerm);
    }
    if rows == 0 || cols == 0 {
        return Ok(BitMatrix::zeros(rows, cols));
    }
    let mut col = g.truncated(rows - 1)?;
    let f = if cols > 1 { f.truncated(rows - 1)? } else { f.clone() };
    let mut out = BitMatrix::zeros(rows, cols);
    for j in 0..cols {
        for i in col.support() {
            out.set(i, j, true);
        }
        if j + 1 < cols {
            col = col.mul(&f);
        }
    }
    Ok(out)
}

/// Which named family a graph was built from, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Pascal,
    Catalan,
    Path,
    Complete,
    CompleteBipartite,
    Null,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Pascal,
        Family::Catalan,
        Family::Path,
        Family::Complete,
        Family::CompleteBipartite,
        Family::Null,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Pascal => "pascal",
            Family::Catalan => "catalan",
            Family::Path => "path",
            Family::Complete => "complete",
            Family::CompleteBipartite => "complete_bipartite",
            Family::Null => "null",
        }
    }

    /// The `(g, f)` expressions defining the family.
    pub fn pair(self) -> (&'static str, &'static str) {
        match self {
            Family::Pascal => ("1/(1-z)", "z/(1-z)"),
            Family::Catalan => ("C", "z*C"),
            Family::Path => ("1", "z"),
            Family::Complete => ("1/(1-z)", "z"),
            Family::CompleteBipartite => ("1/(1-z^2)", "z"),
            Family::Null => ("0", "z"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// A graph `G_n(g, f)` together with the series that produced it.
#[derive(Clone, Debug)]
pub struct RiordanGraph {
    graph: Graph,
    g: Gf2Series,
    f: Gf2Series,
    g_expr: String,
    f_expr: String,
    family: Option<Family>,
}

impl RiordanGraph {
    /// Truncation used for the stored series; enough for every extraction
    /// the decomposition formulas perform on an order-`n` graph.
    pub fn series_trunc(n: usize) -> usize {
        n + 2
    }

    pub fn from_exprs(g_expr: &str, f_expr: &str, n: usize) -> Result<Self> {
        let trunc = Self::series_trunc(n);
        let g = series_lang::eval_str(g_expr, trunc)?;
        let f = series_lang::eval_str(f_expr, trunc)?;
        let mut rg = Self::from_series(g, f, n)?;
        rg.g_expr = g_expr.trim().to_string();
        rg.f_expr = f_expr.trim().to_string();
        Ok(rg)
    }

    pub fn family(family: Family, n: usize) -> Result<Self> {
        let (g, f) = family.pair();
        let mut rg = Self::from_exprs(g, f, n)?;
        rg.family = Some(family);
        Ok(rg)
    }

    pub fn from_series(g: Gf2Series, f: Gf2Series, n: usize) -> Result<Self> {
        let graph = build_graph(&g, &f, n)?;
        Ok(RiordanGraph {
            graph,
            g_expr: g.to_poly_expr(),
            f_expr: f.to_poly_expr(),
            g,
            f,
            family: None,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn g(&self) -> &Gf2Series {
        &self.g
    }

    pub fn f(&self) -> &Gf2Series {
        &self.f
    }

    pub fn g_expr(&self) -> &str {
        &self.g_expr
    }

    pub fn f_expr(&self) -> &str {
        &self.f_expr
    }

    pub fn family_tag(&self) -> Option<Family> {
        self.family
    }

    /// `{g}_k(1)`.
    pub fn g_ones(&self, k: i64) -> usize {
        self.g
            .ones_count_prefix(k)
            .expect("stored series cover every degree used by an order-n graph")
    }
}

/// `A = B(zg, f)_n + B(zg, f)_n^T`.
pub fn build_graph(g: &Gf2Series, f: &Gf2Series, n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n >= 2 {
        // zg needs g through n-2 and f must be known through n-1.
        g.truncated(n - 2)?;
        f.truncated(n - 1)?;
    }
    let zg = g.with_precision(n.saturating_sub(1))?.zero_extended(n).shift_up(1);
    let lower = binary_riordan(&zg, f, n, n)?;
    let mut adj = lower.clone();
    for i in 0..n {
        for j in lower.row_support(i) {
            adj.set(j, i, true);
        }
    }
    Graph::from_adjacency(adj)
}

/// `p = floor(log2(n - 1))` for `n >= 2`.
pub fn p_of(n: usize) -> u32 {
    assert!(n >= 2);
    (n - 1).ilog2()
}

/// `ceil(log2 n)` for `n >= 1`.
pub fn ceil_log2(n: usize) -> u32 {
    assert!(n >= 1);
    usize::BITS - (n - 1).leading_zeros()
}

/// The parts `V_1, ..., V_{ceil(log2 n)+1}` of the colour partition of an
/// io-decomposable Bell graph, each checked to be independent in `g`.
pub fn partition_moj(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    let top = ceil_log2(n) as usize;
    let mut parts = Vec::with_capacity(top + 1);
    for j in 1..=top {
        let first = (1usize << (j - 1)) + 1;
        let step = 1usize << j;
        let mut part = Vec::new();
        if n >= first {
            let imax = (n - 1 - (1usize << (j - 1))) / step;
            for i in 0..=imax {
                part.push(first + i * step);
            }
        }
        parts.push(part);
    }
    parts.push(vec![1]);
    for (k, part) in parts.iter().enumerate() {
        if !g.is_independent(part) {
            return Err(Error::PartitionNotIndependent { part: k + 1 });
        }
    }
    let mut seen = vec![false; n];
    for &v in parts.iter().flatten() {
        if seen[v - 1] {
            return Err(Error::AssertionFailure(format!("vertex {v} in two parts")));
        }
        seen[v - 1] = true;
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::AssertionFailure(format!("vertex {} in no part", v + 1)));
    }
    Ok(parts)
}

pub const DEFAULT_CLIQUE_CAP: usize = 64;

/// Clique number and chromatic number by exact search on graphs with at most
/// `cap` vertices (and never more than 64).
pub fn clique_and_chromatic(g: &Graph, cap: usize) -> Result<(usize, usize)> {
    let n = g.n();
    let cap = cap.min(64);
    if n > cap {
        return Err(Error::SizeCapExceeded { n, cap });
    }
    let nb: Vec<u64> = (0..n)
        .map(|i| g.adjacency().row_support(i).fold(0u64, |m, j| m | 1 << j))
        .collect();
    let omega = max_clique(&nb, n);
    let upper = greedy_colours(&nb, n);
    let mut chi = upper;
    for k in omega..upper {
        if colourable(&nb, n, k) {
            chi = k;
            break;
        }
    }
    Ok((omega, chi))
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn max_clique(nb: &[u64], n: usize) -> usize {
    fn expand(nb: &[u64], size: usize, mut cand: u64, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        // Bound by candidates left; the colouring bound is not needed at n <= 64.
        while cand != 0 {
            if size + cand.count_ones() as usize <= *best {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            expand(nb, size + 1, cand & nb[v], best);
        }
    }
    let mut best = 0;
    expand(nb, 0, full_mask(n), &mut best);
    best
}

fn greedy_colours(nb: &[u64], n: usize) -> usize {
    let mut colour = vec![usize::MAX; n];
    let mut used = 0;
    for v in 0..n {
        let mut taken = 0u64;
        for u in 0..n {
            if nb[v] >> u & 1 == 1 && colour[u] != usize::MAX {
                taken |= 1 << colour[u];
            }
        }
        let c = (!taken).trailing_zeros() as usize;
        colour[v] = c;
        used = used.max(c + 1);
    }
    used
}

/// DSATUR-ordered backtracking test for a proper `k`-colouring.
fn colourable(nb: &[u64], n: usize, k: usize) -> bool {
    fn go(nb: &[u64], n: usize, k: usize, colour: &mut [usize], done: usize) -> bool {
        if done == n {
            return true;
        }
        let mut pick = None;
        let mut pick_key = (0, 0);
        for v in 0..n {
            if colour[v] != usize::MAX {
                continue;
            }
            let mut sat = 0u64;
            for u in 0..n {
                if nb[v] >> u & 1 == 1 && colour[u] != usize::MAX {
                    sat |= 1 << colour[u];
                }
            }
            let key = (sat.count_ones() as usize, nb[v].count_ones() as usize);
            if pick.is_none() || key > pick_key {
                pick = Some((v, sat));
                pick_key = key;
            }
        }
        let (v, sat) = pick.expect("an uncoloured vertex remains");
        let max_used = colour.iter().filter(|&&c| c != usize::MAX).max().map_or(0, |c| c + 1);
        // Colours above the first unused one are interchangeable.
        for c in 0..k.min(max_used + 1) {
            if sat >> c & 1 == 0 {
                colour[v] = c;
                if go(nb, n, k, colour, done + 1) {
                    return true;
                }
                colour[v] = usize::MAX;
            }
        }
        false
    }
    if n == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut colour = vec![usize::MAX; n];
    go(nb, n, k, &mut colour, 0)
}
