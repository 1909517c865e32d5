//! Triangle listing.
//!
//! Every lister reports each triangle exactly once, in canonical `i < j < k`
//! form, through a push callback so output never has to be materialized.
//! Each also returns a [`WorkCounter`] recording its inner-loop work.

use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{intersect_sorted_into, Graph, Vertex};
use crate::matrix::AdjMatrix;

/// Largest graph the cubic brute-force oracle accepts.
pub const BRUTE_FORCE_MAX_N: usize = 2_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triangle {
    pub i: Vertex,
    pub j: Vertex,
    pub k: Vertex,
}

impl Triangle {
    /// Canonicalizes any ordering of three distinct vertices.
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Self {
        let mut t = [a, b, c];
        t.sort_unstable();
        Triangle { i: t[0], j: t[1], k: t[2] }
    }

    pub fn to_vec(self) -> Vec<Vertex> {
        vec![self.i, self.j, self.k]
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkCounter {
    /// Executions of the innermost loop body.
    pub inner_iterations: u64,
    /// Matrix or hash-set membership tests.
    pub edge_probes: u64,
}

impl std::ops::AddAssign for WorkCounter {
    fn add_assign(&mut self, rhs: Self) {
        self.inner_iterations += rhs.inner_iterations;
        self.edge_probes += rhs.edge_probes;
    }
}

/// The listing algorithms, by CLI name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TriangleAlgo {
    Hybrid,
    Cn,
    Ir,
    EdgeHash,
    BruteForce,
}

impl TriangleAlgo {
    pub const ALL: [TriangleAlgo; 5] = [
        TriangleAlgo::Hybrid,
        TriangleAlgo::Cn,
        TriangleAlgo::Ir,
        TriangleAlgo::EdgeHash,
        TriangleAlgo::BruteForce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TriangleAlgo::Hybrid => "hybrid",
            TriangleAlgo::Cn => "cn",
            TriangleAlgo::Ir => "ir",
            TriangleAlgo::EdgeHash => "edge-hash",
            TriangleAlgo::BruteForce => "brute-force",
        }
    }
}

/// For each edge `ij` (`i < j`), scans the adjacency list of the endpoint of
/// lower degree (ties pick `i`) and probes the matrix for the third edge.
/// A triangle is reported while processing its lexicographically smallest
/// edge, so output is in lexicographic order and `inner_iterations == F(G)`.
pub fn list_hybrid<F>(g: &Graph, matrix: &AdjMatrix, mut emit: F) -> Result<WorkCounter>
where
    F: FnMut(Triangle),
{
    if matrix.n() != g.n() {
        return Err(Error::Contract(format!(
            "matrix dimension {} does not match graph order {}",
            matrix.n(),
            g.n()
        )));
    }
    let mut work = WorkCounter::default();
    for (i, j) in g.edges() {
        let (x, y) = if g.degree(i) <= g.degree(j) { (i, j) } else { (j, i) };
        for &k in g.neighbors(x) {
            work.inner_iterations += 1;
            if j < k {
                work.edge_probes += 1;
                if matrix.get(y, k) {
                    emit(Triangle { i, j, k });
                }
            }
        }
    }
    Ok(work)
}

/// Vertex-iterator listing. Vertices are processed by non-increasing degree
/// (lowest id first on ties); each processed vertex is then treated as
/// deleted. Deletion is a mark, and the counter includes the skipped entries,
/// which still totals at most `F(G)`.
pub fn list_chiba_nishizeki<F>(g: &Graph, mut emit: F) -> WorkCounter
where
    F: FnMut(Triangle),
{
    let (work, _) = chiba_nishizeki_until(g, |t| {
        emit(t);
        ControlFlow::Continue(())
    });
    work
}

/// First triangle found by the vertex-iterator scan, if any.
pub fn find_triangle(g: &Graph) -> Option<Triangle> {
    let (_, found) = chiba_nishizeki_until(g, ControlFlow::Break);
    found
}

fn chiba_nishizeki_until<F>(g: &Graph, mut emit: F) -> (WorkCounter, Option<Triangle>)
where
    F: FnMut(Triangle) -> ControlFlow<Triangle>,
{
    let n = g.n();
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let mut removed = vec![false; n];
    let mut marked = vec![false; n];
    let mut work = WorkCounter::default();

    for &u in order.iter().take(n.saturating_sub(2)) {
        let live = |v: &&Vertex| !removed[**v as usize];
        for &v in g.neighbors(u).iter().filter(live) {
            marked[v as usize] = true;
        }
        for &v in g.neighbors(u) {
            if removed[v as usize] {
                continue;
            }
            for &w in g.neighbors(v) {
                work.inner_iterations += 1;
                if removed[w as usize] {
                    continue;
                }
                work.edge_probes += 1;
                if marked[w as usize] {
                    if let ControlFlow::Break(t) = emit(Triangle::new(u, v, w)) {
                        return (work, Some(t));
                    }
                }
            }
            marked[v as usize] = false;
        }
        removed[u as usize] = true;
    }
    (work, None)
}

/// Repeatedly takes a DFS spanning forest of the residual graph, lists the
/// triangles through each tree edge, then deletes the tree edges.
///
/// Two tree edges of one round can share a triangle; a set of already
/// reported triangles keeps the output duplicate-free.
pub fn list_itai_rodeh<F>(g: &Graph, mut emit: F) -> WorkCounter
where
    F: FnMut(Triangle),
{
    let n = g.n();
    let mut residual: Vec<Vec<Vertex>> = g.vertices().map(|v| g.neighbors(v).to_vec()).collect();
    let mut remaining = g.m();
    let mut seen: HashSet<Triangle> = HashSet::new();
    let mut work = WorkCounter::default();
    let mut visited = vec![false; n];
    let mut tree_nbrs: Vec<Vec<Vertex>> = vec![Vec::new(); n];

    while remaining > 0 {
        let tree = spanning_forest(&residual, &mut visited);

        for &(u, v) in &tree {
            let (nu, nv) = (&residual[u as usize], &residual[v as usize]);
            let mut found = 0;
            work.inner_iterations += intersect_sorted_into(nu, nv, |a, _| {
                found += 1;
                let t = Triangle::new(u, v, nu[a]);
                if seen.insert(t) {
                    emit(t);
                }
            });
            work.edge_probes += found;
        }

        for list in tree_nbrs.iter_mut() {
            list.clear();
        }
        for &(u, v) in &tree {
            tree_nbrs[u as usize].push(v);
            tree_nbrs[v as usize].push(u);
        }
        for (v, dead) in tree_nbrs.iter_mut().enumerate() {
            if dead.is_empty() {
                continue;
            }
            dead.sort_unstable();
            residual[v].retain(|w| dead.binary_search(w).is_err());
        }
        remaining -= tree.len();
    }
    work
}

/// Tree edges of an iterative DFS forest, rooted at the lowest-id unvisited
/// vertex of each component.
fn spanning_forest(adj: &[Vec<Vertex>], visited: &mut [bool]) -> Vec<(Vertex, Vertex)> {
    visited.iter_mut().for_each(|v| *v = false);
    let mut tree = Vec::new();
    let mut stack: Vec<(Vertex, usize)> = Vec::new();
    for root in 0..adj.len() {
        if visited[root] || adj[root].is_empty() {
            continue;
        }
        visited[root] = true;
        stack.push((root as Vertex, 0));
        while let Some(top) = stack.last_mut() {
            let (v, next) = *top;
            match adj[v as usize].get(next) {
                Some(&w) => {
                    top.1 += 1;
                    if !visited[w as usize] {
                        visited[w as usize] = true;
                        tree.push((v, w));
                        stack.push((w, 0));
                    }
                }
                None => {
                    stack.pop();
                }
            }
        }
    }
    tree
}

/// Edge iterator with hashed neighborhoods: for each edge `uv` (`u < v`), the
/// smaller neighborhood is scanned and only `w > v` are probed against the
/// hash set of the other endpoint.
pub fn list_edge_iterator_hashed<F>(g: &Graph, mut emit: F) -> WorkCounter
where
    F: FnMut(Triangle),
{
    let sets: Vec<HashSet<Vertex>> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut work = WorkCounter::default();
    for (u, v) in g.edges() {
        let (small, large) = if g.degree(u) <= g.degree(v) { (u, v) } else { (v, u) };
        let probe = &sets[large as usize];
        for &w in g.neighbors(small) {
            work.inner_iterations += 1;
            if w > v {
                work.edge_probes += 1;
                if probe.contains(&w) {
                    emit(Triangle { i: u, j: v, k: w });
                }
            }
        }
    }
    work
}

/// `trace(M^3) / 6`; each triangle contributes 6 closed walks of length 3.
pub fn count_matrix_trace(g: &Graph, matrix: &AdjMatrix) -> Result<u64> {
    if matrix.n() != g.n() {
        return Err(Error::Contract(format!(
            "matrix dimension {} does not match graph order {}",
            matrix.n(),
            g.n()
        )));
    }
    let trace = matrix.trace_of_cube();
    if !trace.is_multiple_of(6) {
        return Err(Error::Consistency(format!("trace(M^3) = {trace} is not divisible by 6")));
    }
    Ok((trace / 6) as u64)
}

/// Exhaustive triple scan over a dense boolean matrix built independently
/// of the other listers.
pub fn brute_force_triangles<F>(g: &Graph, mut emit: F) -> Result<()>
where
    F: FnMut(Triangle),
{
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::capacity("brute-force triangle oracle order", n as u64, BRUTE_FORCE_MAX_N as u64));
    }
    let dense = dense_adjacency(g);
    for i in 0..n {
        for j in i + 1..n {
            if !dense[i * n + j] {
                continue;
            }
            for k in j + 1..n {
                if dense[i * n + k] && dense[j * n + k] {
                    emit(Triangle { i: i as Vertex, j: j as Vertex, k: k as Vertex });
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn dense_adjacency(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let mut dense = vec![false; n * n];
    for (u, v) in g.edges() {
        dense[u as usize * n + v as usize] = true;
        dense[v as usize * n + u as usize] = true;
    }
    dense
}

/// Runs one lister and collects its triangles, sorted.
pub fn collect_triangles(g: &Graph, algo: TriangleAlgo, matrix_max_n: usize) -> Result<(Vec<Triangle>, WorkCounter)> {
    let mut out = Vec::new();
    let push = |t| out.push(t);
    let work = match algo {
        TriangleAlgo::Hybrid => {
            let m = AdjMatrix::build(g, matrix_max_n)?;
            list_hybrid(g, &m, push)?
        }
        TriangleAlgo::Cn => list_chiba_nishizeki(g, push),
        TriangleAlgo::Ir => list_itai_rodeh(g, push),
        TriangleAlgo::EdgeHash => list_edge_iterator_hashed(g, push),
        TriangleAlgo::BruteForce => {
            brute_force_triangles(g, push)?;
            WorkCounter::default()
        }
    };
    out.sort_unstable();
    Ok((out, work))
}
