//! Composite counting and detection of `K_l` built on top of clique listing.
//!
//! * Extension: list every `K_{l1}`, count `K_{l2}` (`l = l1 + l2`) inside the
//!   common neighborhood of each copy, divide by `C(l, l1)`.
//! * Triangle method: vertices of an auxiliary graph `H` are the `K_j` copies,
//!   edges join disjoint copies whose union is a `K_{2j}`. Triangles of `H` are
//!   `K_{3j}` copies of the base graph, each seen `(3j)! / ((j!)^3 3!)` times.
//! * Edge count: a `K_4` in the same `H` is a `K_{4j}` in the base graph.

use serde::{Deserialize, Serialize};

use crate::cliques::{Clique, CliqueLister, DEFAULT_ORACLE_BUDGET};
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::graph::{common_neighborhood, intersect_sorted_into, Graph, Vertex};
use crate::matrix::DEFAULT_MATRIX_MAX_N;
use crate::triangles::{find_triangle, list_chiba_nishizeki, WorkCounter};

/// Default cap on the number of auxiliary-graph vertices.
pub const DEFAULT_H_VERTEX_BUDGET: usize = 10_000_000;

/// Size and work budgets shared by the composite methods and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub matrix_max_n: usize,
    pub h_vertex_budget: usize,
    pub oracle_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            matrix_max_n: DEFAULT_MATRIX_MAX_N,
            h_vertex_budget: DEFAULT_H_VERTEX_BUDGET,
            oracle_budget: DEFAULT_ORACLE_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodKind {
    Extension,
    TriangleMethod,
    EdgeCount,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodPlan {
    pub method: MethodKind,
    pub l: usize,
    /// `(l1, l2)` for extension, `(j, i)` with `l = 3j + i` for the
    /// triangle method, `(j, 0)` with `l = 4j` for edge count.
    pub split: (usize, usize),
    /// Exact overcount divisor.
    pub multiplicity: u128,
}

impl MethodPlan {
    pub fn extension(l: usize, l1: usize) -> Result<Self> {
        if l1 < 2 || l1 + 2 > l {
            return Err(Error::Contract(format!(
                "extension split needs 2 <= l1 <= l - 2, got l = {l}, l1 = {l1}"
            )));
        }
        Ok(MethodPlan {
            method: MethodKind::Extension,
            l,
            split: (l1, l - l1),
            multiplicity: checked_binomial(l, l1)?,
        })
    }

    pub fn triangle(l: usize) -> Result<Self> {
        if l < 3 || !l.is_multiple_of(3) {
            return Err(Error::Contract(format!(
                "triangle-method counting needs l = 3j with j >= 1, got {l}"
            )));
        }
        let j = l / 3;
        let ordered = checked_binomial(3 * j, j)?
            .checked_mul(checked_binomial(2 * j, j)?)
            .ok_or_else(|| Error::capacity("triangle-method multiplicity", u128::MAX, u128::MAX))?;
        Ok(MethodPlan {
            method: MethodKind::TriangleMethod,
            l,
            split: (j, 0),
            multiplicity: ordered / 6,
        })
    }
}

/// Default extension split: peel `l - 3` so the remainder is a triangle
/// count, or `2` for small `l`.
pub fn default_split(l: usize) -> usize {
    if l > 5 {
        l - 3
    } else {
        2
    }
}

fn checked_binomial(n: usize, k: usize) -> Result<u128> {
    binomial(n as u64, k as u64).ok_or_else(|| Error::capacity("binomial coefficient", u128::MAX, u128::MAX))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodCount {
    pub plan: MethodPlan,
    pub count: u128,
    pub pre_division_total: u128,
    /// Set when the pre-division total overflowed 128 bits; `count` is then
    /// a lower bound and divisibility was not checked.
    pub saturated: bool,
    pub work: WorkCounter,
}

impl MethodCount {
    fn divide(plan: MethodPlan, total: u128, saturated: bool, work: WorkCounter) -> Result<Self> {
        if !saturated && !total.is_multiple_of(plan.multiplicity) {
            return Err(Error::Consistency(format!(
                "{:?} total {total} is not divisible by multiplicity {} (l = {}, split = {:?})",
                plan.method, plan.multiplicity, plan.l, plan.split
            )));
        }
        Ok(MethodCount {
            plan,
            count: total / plan.multiplicity,
            pre_division_total: total,
            saturated,
            work,
        })
    }
}

pub fn extension_count(g: &Graph, l: usize, l1: usize) -> Result<MethodCount> {
    extension_count_with_threads(g, l, l1, 1)
}

/// Extension method with the outer loop over `K_{l1}` copies spread across
/// `threads` workers.
pub fn extension_count_with_threads(g: &Graph, l: usize, l1: usize, threads: usize) -> Result<MethodCount> {
    let plan = MethodPlan::extension(l, l1)?;
    let l2 = l - l1;
    let sum = CliqueLister::new(g).sum(l1, threads, |copy| {
        let common = common_neighborhood(g, copy);
        if common.len() < l2 {
            return Ok(0);
        }
        count_small_cliques(&g.induced_subgraph(&common), l2)
    })?;
    MethodCount::divide(plan, sum.total, sum.saturated, sum.work)
}

/// Base cases of the extension recursion; larger sizes recurse with the
/// default split.
fn count_small_cliques(g: &Graph, l: usize) -> Result<u128> {
    Ok(match l {
        0 => 1,
        1 => g.n() as u128,
        2 => g.m() as u128,
        3 => {
            let mut count = 0u128;
            list_chiba_nishizeki(g, |_| count += 1);
            count
        }
        _ => {
            let inner = extension_count_with_threads(g, l, default_split(l), 1)?;
            if inner.saturated {
                return Err(Error::capacity("nested extension total", u128::MAX, u128::MAX));
            }
            inner.count
        }
    })
}

/// Auxiliary graph whose vertices are the `K_j` copies of `base`.
#[derive(Clone, Debug)]
pub struct AuxiliaryGraph<'g> {
    pub base: &'g Graph,
    pub j: usize,
    /// Canonical `K_j` copies in lexicographic order; index = H-vertex id.
    pub h_vertices: Vec<Vec<Vertex>>,
    pub h_graph: Graph,
}

impl AuxiliaryGraph<'_> {
    pub fn index_of(&self, copy: &[Vertex]) -> Option<Vertex> {
        self.h_vertices
            .binary_search_by(|probe| probe.as_slice().cmp(copy))
            .ok()
            .map(|i| i as Vertex)
    }

    /// Union of the base-graph vertex sets behind `h_ids`, sorted.
    pub fn union(&self, h_ids: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = h_ids
            .iter()
            .flat_map(|&h| self.h_vertices[h as usize].iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

/// Builds `H` over the `K_j` copies of `g`. Instead of testing all pairs of
/// copies, every `K_{2j}` contributes its `C(2j, j) / 2` complementary splits
/// as H-edges.
pub fn build_auxiliary_graph<'g>(g: &'g Graph, j: usize, limits: &Limits) -> Result<AuxiliaryGraph<'g>> {
    if j == 0 {
        return Err(Error::Contract("auxiliary graph needs j >= 1".into()));
    }
    if j > 32 {
        return Err(Error::Contract(format!("auxiliary graph supports j <= 32, got {j}")));
    }
    let lister = CliqueLister::new(g);

    let mut copies: Vec<Vec<Vertex>> = Vec::new();
    let mut seen = 0usize;
    lister.list(j, |c| {
        seen += 1;
        if seen <= limits.h_vertex_budget {
            copies.push(c.to_vec());
        }
    })?;
    if seen > limits.h_vertex_budget {
        return Err(Error::capacity("auxiliary graph vertices", seen as u64, limits.h_vertex_budget as u64));
    }
    copies.sort_unstable();

    let mut aux = AuxiliaryGraph {
        base: g,
        j,
        h_vertices: copies,
        h_graph: Graph::empty(0),
    };

    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut left = Vec::with_capacity(j);
    let mut right = Vec::with_capacity(j);
    lister.list(2 * j, |big| {
        // Subsets containing big[0] pick exactly one side of each split.
        for_each_mask(2 * j - 1, j - 1, |mask| {
            left.clear();
            right.clear();
            left.push(big[0]);
            for (bit, &v) in big[1..].iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    left.push(v);
                } else {
                    right.push(v);
                }
            }
            let a = aux.index_of(&left).expect("every j-subset of a clique is a listed clique");
            let b = aux.index_of(&right).expect("every j-subset of a clique is a listed clique");
            edges.push((a, b));
        });
    })?;
    aux.h_graph = Graph::from_edges(aux.h_vertices.len(), &edges)?;
    Ok(aux)
}

/// Calls `f` with every `width`-bit mask having exactly `ones` bits set,
/// in increasing order (Gosper's hack).
fn for_each_mask<F: FnMut(u64)>(width: usize, ones: usize, mut f: F) {
    if ones > width {
        return;
    }
    if ones == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << width;
    let mut mask = (1u64 << ones) - 1;
    while mask < limit {
        f(mask);
        let low = mask & mask.wrapping_neg();
        let ripple = mask + low;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
}

/// Counts `K_l` for `l = 3j` as triangles of `H` divided by the partition
/// multiplicity.
pub fn triangle_method_count(g: &Graph, l: usize, limits: &Limits) -> Result<MethodCount> {
    let plan = MethodPlan::triangle(l)?;
    let aux = build_auxiliary_graph(g, l / 3, limits)?;
    let mut h_triangles = 0u128;
    let work = list_chiba_nishizeki(&aux.h_graph, |_| h_triangles += 1);
    MethodCount::divide(plan, h_triangles, false, work)
}

/// Finds some `K_l`, `l = 3j + i`. For `i = 0` this is a triangle of `H`;
/// otherwise every `K_i` copy is tried, restricting the graph to its common
/// neighborhood and searching for a `K_{3j}` there.
pub fn triangle_method_detect(g: &Graph, l: usize, limits: &Limits) -> Result<Option<Clique>> {
    if l < 3 {
        return Err(Error::Contract(format!("detection needs l >= 3, got {l}")));
    }
    let (j, i) = (l / 3, l % 3);
    if l > g.n() {
        return Ok(None);
    }
    if i == 0 {
        return detect_balanced(g, j, limits);
    }

    let attempt = |copy: &[Vertex]| -> Result<Option<Clique>> {
        let common = common_neighborhood(g, copy);
        if common.len() < 3 * j {
            return Ok(None);
        }
        let sub = g.induced_subgraph(&common);
        let Some(inner) = detect_balanced(&sub, j, limits)? else {
            return Ok(None);
        };
        let mut vertices: Vec<Vertex> = inner.vertices().iter().map(|&x| common[x as usize]).collect();
        vertices.extend_from_slice(copy);
        Clique::verified(g, vertices).map(Some)
    };

    if i == 1 {
        for v in g.vertices() {
            if let Some(w) = attempt(&[v])? {
                return Ok(Some(w));
            }
        }
    } else {
        for (u, v) in g.edges() {
            if let Some(w) = attempt(&[u, v])? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

fn detect_balanced(g: &Graph, j: usize, limits: &Limits) -> Result<Option<Clique>> {
    let aux = build_auxiliary_graph(g, j, limits)?;
    match find_triangle(&aux.h_graph) {
        Some(t) => Clique::verified(g, aux.union(&[t.i, t.j, t.k])).map(Some),
        None => Ok(None),
    }
}

/// Finds a `K_{4j}` by searching for a `K_4` in `H`: an H-edge `ab` whose
/// common neighborhood (restricted past `b`) contains another H-edge.
pub fn edge_count_detect(g: &Graph, j: usize, limits: &Limits) -> Result<Option<Clique>> {
    if j == 0 {
        return Err(Error::Contract("edge-count detection needs j >= 1".into()));
    }
    if 4 * j > g.n() {
        return Ok(None);
    }
    let aux = build_auxiliary_graph(g, j, limits)?;
    let h = &aux.h_graph;
    let mut common = Vec::new();
    for (a, b) in h.edges() {
        common.clear();
        let nb = h.neighbors(b);
        intersect_sorted_into(h.neighbors(a), nb, |_, y| {
            if nb[y] > b {
                common.push(nb[y]);
            }
        });
        for (idx, &c) in common.iter().enumerate() {
            let mut hit = None;
            intersect_sorted_into(&common[idx + 1..], h.neighbors(c), |x, _| {
                hit.get_or_insert(common[idx + 1 + x]);
            });
            if let Some(e) = hit {
                return Clique::verified(g, aux.union(&[a, b, c, e])).map(Some);
            }
        }
    }
    Ok(None)
}
