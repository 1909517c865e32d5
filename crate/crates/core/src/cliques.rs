//! Listing every copy of `K_l` by recursive neighborhood restriction along a
//! degeneracy order.
//!
//! Each root vertex `v` only considers neighbors placed after it in the
//! elimination order (at most `d` of them), and every deeper level intersects
//! the candidate set with the next vertex's forward neighborhood. A clique is
//! therefore reached exactly once, from its earliest-placed vertex, and total
//! work is `O(m d^{l-2})`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::degeneracy::{degeneracy, DegeneracyInfo};
use crate::error::{Error, Result};
use crate::graph::{intersect_sorted_into, Graph, Vertex};
use crate::triangles::{dense_adjacency, WorkCounter};

/// Default cap on `C(n, l)` for the brute-force oracle.
pub const DEFAULT_ORACLE_BUDGET: u64 = 100_000_000;

/// Strictly increasing vertex tuple whose members are pairwise adjacent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Clique(Vec<Vertex>);

impl Clique {
    /// Sorts `vertices` and checks they form a clique of `g`.
    pub fn verified(g: &Graph, mut vertices: Vec<Vertex>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) || !g.is_clique(&vertices) {
            return Err(Error::Consistency(format!("{vertices:?} is not a clique")));
        }
        Ok(Clique(vertices))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }
}

/// Forward adjacency of a graph under its degeneracy order.
pub struct CliqueLister<'g> {
    graph: &'g Graph,
    info: DegeneracyInfo,
    forward: Vec<Vec<Vertex>>,
}

/// Per-thread scratch space, one candidate buffer per recursion level.
struct Scratch {
    levels: Vec<Vec<Vertex>>,
    prefix: Vec<Vertex>,
    out: Vec<Vertex>,
}

impl Scratch {
    fn new(l: usize) -> Self {
        Scratch {
            levels: vec![Vec::new(); l],
            prefix: Vec::with_capacity(l),
            out: Vec::with_capacity(l),
        }
    }
}

impl<'g> CliqueLister<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let info = degeneracy(graph);
        let forward = graph.vertices().map(|v| info.forward_neighbors(graph, v)).collect();
        CliqueLister { graph, info, forward }
    }

    pub fn degeneracy(&self) -> &DegeneracyInfo {
        &self.info
    }

    /// Sequential listing in root order.
    pub fn list<F>(&self, l: usize, mut emit: F) -> Result<WorkCounter>
    where
        F: FnMut(&[Vertex]),
    {
        check_size(l)?;
        let mut work = WorkCounter::default();
        if l > self.graph.n() {
            return Ok(work);
        }
        let mut scratch = Scratch::new(l);
        for &root in &self.info.order {
            self.search_root(root, l, &mut scratch, &mut work, &mut emit);
        }
        Ok(work)
    }

    /// Sums `f(clique)` over every `K_l`, spreading root vertices over
    /// `threads` workers. The result does not depend on `threads`.
    pub fn sum<F>(&self, l: usize, threads: usize, f: F) -> Result<CliqueSum>
    where
        F: Fn(&[Vertex]) -> Result<u128> + Sync,
    {
        check_size(l)?;
        if l > self.graph.n() {
            return Ok(CliqueSum::default());
        }
        let per_root = |scratch: &mut Scratch, root: Vertex| -> Result<CliqueSum> {
            let mut acc = CliqueSum::default();
            let mut failure = None;
            let mut work = WorkCounter::default();
            self.search_root(root, l, scratch, &mut work, &mut |c: &[Vertex]| {
                if failure.is_some() {
                    return;
                }
                match f(c) {
                    Ok(x) => acc.add(x),
                    Err(e) => failure = Some(e),
                }
            });
            acc.work = work;
            failure.map_or(Ok(acc), Err)
        };

        if threads <= 1 {
            let mut scratch = Scratch::new(l);
            let mut total = CliqueSum::default();
            for &root in &self.info.order {
                total.merge(per_root(&mut scratch, root)?);
            }
            return Ok(total);
        }

        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Contract(format!("cannot start {threads} workers: {e}")))?;
        pool.install(|| {
            self.info
                .order
                .par_iter()
                .map_init(|| Scratch::new(l), |scratch, &root| per_root(scratch, root))
                .try_reduce(CliqueSum::default, |mut a, b| {
                    a.merge(b);
                    Ok(a)
                })
        })
    }

    fn search_root<F>(&self, root: Vertex, l: usize, scratch: &mut Scratch, work: &mut WorkCounter, emit: &mut F)
    where
        F: FnMut(&[Vertex]) + ?Sized,
    {
        scratch.prefix.clear();
        scratch.prefix.push(root);
        if l == 1 {
            work.inner_iterations += 1;
            emit(&scratch.prefix);
            return;
        }
        let cand = &self.forward[root as usize];
        if cand.len() < l - 1 {
            return;
        }
        let Scratch { levels, prefix, out } = scratch;
        self.extend(cand, l - 1, levels, prefix, out, work, emit);
    }

    #[allow(clippy::too_many_arguments)]
    fn extend<F>(
        &self,
        cand: &[Vertex],
        remaining: usize,
        levels: &mut [Vec<Vertex>],
        prefix: &mut Vec<Vertex>,
        out: &mut Vec<Vertex>,
        work: &mut WorkCounter,
        emit: &mut F,
    ) where
        F: FnMut(&[Vertex]) + ?Sized,
    {
        if remaining == 1 {
            for &c in cand {
                work.inner_iterations += 1;
                out.clear();
                out.extend_from_slice(prefix);
                out.push(c);
                out.sort_unstable();
                emit(out);
            }
            return;
        }
        let (next, deeper) = levels.split_first_mut().expect("one scratch level per clique vertex");
        for &u in cand {
            next.clear();
            work.edge_probes += 1;
            work.inner_iterations += intersect_sorted_into(cand, &self.forward[u as usize], |a, _| next.push(cand[a]));
            if next.len() < remaining - 1 {
                continue;
            }
            prefix.push(u);
            self.extend(next, remaining - 1, deeper, prefix, out, work, emit);
            prefix.pop();
        }
    }
}

/// Saturating 128-bit total plus the listing work behind it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CliqueSum {
    pub total: u128,
    pub saturated: bool,
    pub work: WorkCounter,
}

impl CliqueSum {
    fn add(&mut self, x: u128) {
        match self.total.checked_add(x) {
            Some(t) => self.total = t,
            None => {
                self.total = u128::MAX;
                self.saturated = true;
            }
        }
    }

    fn merge(&mut self, other: CliqueSum) {
        self.add(other.total);
        self.saturated |= other.saturated;
        self.work += other.work;
    }
}

fn check_size(l: usize) -> Result<()> {
    if l == 0 {
        return Err(Error::Contract("clique size must be at least 1".into()));
    }
    Ok(())
}

/// Streams every `K_l` of `g` as a sorted vertex slice.
pub fn list_k_cliques<F>(g: &Graph, l: usize, emit: F) -> Result<WorkCounter>
where
    F: FnMut(&[Vertex]),
{
    CliqueLister::new(g).list(l, emit)
}

/// Number of `K_l` copies, computed over `threads` workers.
pub fn count_k_cliques(g: &Graph, l: usize, threads: usize) -> Result<(u64, WorkCounter)> {
    let sum = CliqueLister::new(g).sum(l, threads, |_| Ok(1))?;
    Ok((sum.total as u64, sum.work))
}

/// All `K_l` copies, sorted.
pub fn collect_k_cliques(g: &Graph, l: usize) -> Result<Vec<Clique>> {
    let mut out = Vec::new();
    list_k_cliques(g, l, |c| out.push(Clique(c.to_vec())))?;
    out.sort_unstable();
    Ok(out)
}

/// Exhaustive scan over vertex combinations in index order, abandoning a
/// prefix as soon as it stops being a clique. Refuses when `C(n, l)` exceeds
/// `budget`.
pub fn brute_force_k_cliques(g: &Graph, l: usize, budget: u64) -> Result<u64> {
    check_size(l)?;
    let n = g.n();
    let combos = binomial(n as u64, l as u64).unwrap_or(u128::MAX);
    if combos > budget as u128 {
        return Err(Error::capacity("brute-force clique oracle tuples", combos, budget));
    }
    if l > n {
        return Ok(0);
    }
    let dense = dense_adjacency(g);
    let mut chosen = Vec::with_capacity(l);
    Ok(scan_combinations(&dense, n, l, 0, &mut chosen))
}

fn scan_combinations(dense: &[bool], n: usize, l: usize, start: usize, chosen: &mut Vec<usize>) -> u64 {
    if chosen.len() == l {
        return 1;
    }
    let mut count = 0;
    for v in start..n {
        if n - v < l - chosen.len() {
            break;
        }
        if chosen.iter().all(|&u| dense[u * n + v]) {
            chosen.push(v);
            count += scan_combinations(dense, n, l, v + 1, chosen);
            chosen.pop();
        }
    }
    count
}
