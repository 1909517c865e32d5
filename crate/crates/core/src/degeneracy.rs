//! Degeneracy ordering, arboricity upper bounds and the edge work functional
//! `F(G) = sum over edges uv of min(deg u, deg v)`.

use std::collections::BTreeSet;

use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyInfo {
    /// Elimination order: repeatedly remove a minimum-degree vertex.
    pub order: Vec<Vertex>,
    /// `position[v]` is the index of `v` in `order`.
    pub position: Vec<usize>,
    pub d: usize,
    /// `ceil(sqrt(2m + n) / 2)`.
    pub alpha_ub_cn: usize,
    /// Degeneracy is itself an arboricity upper bound.
    pub alpha_ub_degen: usize,
}

impl DegeneracyInfo {
    /// Tightest of the two certified arboricity upper bounds.
    pub fn alpha_upper_bound(&self) -> usize {
        self.alpha_ub_cn.min(self.alpha_ub_degen)
    }

    /// Neighbors of `v` placed after it in the elimination order (at most `d`).
    pub fn forward_neighbors(&self, g: &Graph, v: Vertex) -> Vec<Vertex> {
        let pv = self.position[v as usize];
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|&w| self.position[w as usize] > pv)
            .collect()
    }
}

/// Min-degree elimination with a bucket queue; ties go to the lowest id.
pub fn degeneracy(g: &Graph) -> DegeneracyInfo {
    let n = g.n();
    let mut residual = g.degrees();
    let max_deg = g.max_degree();
    let mut buckets: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); max_deg + 1];
    for v in g.vertices() {
        buckets[residual[v as usize]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut position = vec![0; n];
    let mut d = 0;
    let mut low = 0;

    for step in 0..n {
        while buckets[low].is_empty() {
            low += 1;
        }
        let v = buckets[low].pop_first().unwrap();
        d = d.max(low);
        removed[v as usize] = true;
        position[v as usize] = step;
        order.push(v);
        for &w in g.neighbors(v) {
            let wi = w as usize;
            if removed[wi] {
                continue;
            }
            buckets[residual[wi]].remove(&w);
            residual[wi] -= 1;
            buckets[residual[wi]].insert(w);
        }
        low = low.saturating_sub(1);
    }

    DegeneracyInfo {
        order,
        position,
        d,
        alpha_ub_cn: arboricity_upper_bound(g),
        alpha_ub_degen: d,
    }
}

/// `ceil(sqrt(2m + n) / 2)`, in exact integer arithmetic: the least `a` with
/// `4a^2 >= 2m + n`.
pub fn arboricity_upper_bound(g: &Graph) -> usize {
    ceil_half_sqrt(2 * g.m() as u128 + g.n() as u128) as usize
}

fn ceil_half_sqrt(x: u128) -> u128 {
    let mut a = ((x as f64).sqrt() / 2.0).floor() as u128;
    while a > 0 && 4 * (a - 1) * (a - 1) >= x {
        a -= 1;
    }
    while 4 * a * a < x {
        a += 1;
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeWork {
    /// `f(e)` for each edge in [`Graph::edges`] order.
    pub per_edge: Vec<u64>,
    pub total: u64,
}

pub fn edge_work_functional(g: &Graph) -> EdgeWork {
    let per_edge: Vec<u64> = g
        .edges()
        .map(|(u, v)| g.degree(u).min(g.degree(v)) as u64)
        .collect();
    let total = per_edge.iter().sum();
    EdgeWork { per_edge, total }
}

/// `value <= 4 m^{3/2}`, checked as `value^2 <= 16 m^3`.
pub fn within_four_m_three_halves(value: u64, m: usize) -> bool {
    let m = m as u128;
    (value as u128).pow(2) <= 16 * m * m * m
}

/// `value <= 2 m alpha` for a certified upper bound `alpha`.
pub fn within_two_m_alpha(value: u64, m: usize, alpha: usize) -> bool {
    value as u128 <= 2 * m as u128 * alpha as u128
}
