//! Immutable simple undirected graph in compressed adjacency (CSR) form.
//!
//! Vertices are dense ids `0..n`. Every adjacency list is strictly increasing,
//! adjacency is symmetric and there are no self-loops, so `sum(deg) == 2m`.

use crate::error::{Error, Result};

pub type Vertex = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    adj: Vec<Vertex>,
}

/// What canonicalization had to clean up while building a [`Graph`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildReport {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            adj: Vec::new(),
        }
    }

    /// Builds a graph from an arbitrary edge list, dropping self-loops and
    /// merging duplicates (in either orientation).
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        Self::from_edges_with_report(n, edges).map(|(g, _)| g)
    }

    pub fn from_edges_with_report(n: usize, edges: &[(Vertex, Vertex)]) -> Result<(Self, BuildReport)> {
        if n > Vertex::MAX as usize {
            return Err(Error::MalformedInput(format!("vertex count {n} does not fit in u32 ids")));
        }
        let mut report = BuildReport::default();
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::MalformedInput(format!(
                        "edge ({u}, {v}) references vertex {x} but n = {n}"
                    )));
                }
            }
            if u == v {
                report.self_loops += 1;
                continue;
            }
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }

        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut adj = vec![0; offsets[n]];
        for &(u, v) in edges {
            if u == v {
                continue;
            }
            adj[fill[u as usize]] = v;
            fill[u as usize] += 1;
            adj[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }

        // Sort and dedup every list, compacting in place.
        let mut write = 0;
        let mut new_offsets = Vec::with_capacity(n + 1);
        new_offsets.push(0);
        for v in 0..n {
            let (start, end) = (offsets[v], offsets[v + 1]);
            adj[start..end].sort_unstable();
            let mut last = None;
            for read in start..end {
                let x = adj[read];
                if last == Some(x) {
                    continue;
                }
                last = Some(x);
                adj[write] = x;
                write += 1;
            }
            new_offsets.push(write);
        }
        let removed_stubs = adj.len() - write;
        adj.truncate(write);
        report.duplicates = removed_stubs / 2;

        Ok((
            Graph {
                offsets: new_offsets,
                adj,
            },
            report,
        ))
    }

    /// Builds directly from per-vertex neighbor lists that are already
    /// canonical (sorted, symmetric, loop-free).
    pub(crate) fn from_sorted_lists(lists: Vec<Vec<Vertex>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut adj = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        for list in lists {
            debug_assert!(list.windows(2).all(|w| w[0] < w[1]));
            adj.extend_from_slice(&list);
            offsets.push(adj.len());
        }
        Graph { offsets, adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.adj.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.offsets.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0)
    }

    /// O(log deg) membership test on the sorted adjacency list.
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n() as Vertex
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            let nbrs = self.neighbors(u);
            let from = nbrs.partition_point(|&v| v <= u);
            nbrs[from..].iter().map(move |&v| (u, v))
        })
    }

    /// Subgraph induced by `vertices` (sorted, distinct), relabelled so that
    /// `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Graph {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let lists = vertices
            .iter()
            .map(|&v| {
                let mut out = Vec::new();
                intersect_sorted_into(self.neighbors(v), vertices, |_, j| out.push(j as Vertex));
                out
            })
            .collect();
        Graph::from_sorted_lists(lists)
    }

    /// True when every pair of `vertices` is adjacent.
    pub fn is_clique(&self, vertices: &[Vertex]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            (u as usize) < self.n()
                && vertices[i + 1..]
                    .iter()
                    .all(|&v| v != u && (v as usize) < self.n() && self.has_edge(u, v))
        })
    }
}

/// Merge-intersects two sorted slices, calling `f(index_in_a, index_in_b)`
/// for each common element. Returns the number of loop steps taken.
pub(crate) fn intersect_sorted_into<F>(a: &[Vertex], b: &[Vertex], mut f: F) -> u64
where
    F: FnMut(usize, usize),
{
    let (mut i, mut j, mut steps) = (0, 0, 0u64);
    while i < a.len() && j < b.len() {
        steps += 1;
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                f(i, j);
                i += 1;
                j += 1;
            }
        }
    }
    steps
}

/// Sorted common neighborhood of all `vertices`.
pub(crate) fn common_neighborhood(g: &Graph, vertices: &[Vertex]) -> Vec<Vertex> {
    let Some((&first, rest)) = vertices.split_first() else {
        return g.vertices().collect();
    };
    let mut acc = g.neighbors(first).to_vec();
    let mut scratch = Vec::new();
    for &v in rest {
        scratch.clear();
        intersect_sorted_into(&acc, g.neighbors(v), |i, _| scratch.push(acc[i]));
        std::mem::swap(&mut acc, &mut scratch);
        if acc.is_empty() {
            break;
        }
    }
    acc
}
