//! One entry point that runs any counting algorithm and reports the result
//! with its work counters, shared by the CLI and the bench harness.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cliques::CliqueLister;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::AdjMatrix;
use crate::methods::{default_split, extension_count_with_threads, triangle_method_count, Limits, MethodKind};
use crate::triangles::{
    count_matrix_trace, list_chiba_nishizeki, list_edge_iterator_hashed, list_hybrid, list_itai_rodeh, WorkCounter,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    Hybrid,
    Cn,
    Ir,
    EdgeHash,
    Matrix,
    Kclique,
    Extension,
    TriangleMethod,
}

impl Algo {
    pub const ALL: [Algo; 8] = [
        Algo::Hybrid,
        Algo::Cn,
        Algo::Ir,
        Algo::EdgeHash,
        Algo::Matrix,
        Algo::Kclique,
        Algo::Extension,
        Algo::TriangleMethod,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Hybrid => "hybrid",
            Algo::Cn => "cn",
            Algo::Ir => "ir",
            Algo::EdgeHash => "edge-hash",
            Algo::Matrix => "matrix",
            Algo::Kclique => "kclique",
            Algo::Extension => "extension",
            Algo::TriangleMethod => "triangle-method",
        }
    }

    /// Triangle-only algorithms.
    pub fn triangles_only(self) -> bool {
        matches!(self, Algo::Hybrid | Algo::Cn | Algo::Ir | Algo::EdgeHash | Algo::Matrix)
    }

    /// Algorithms whose inner loop is bounded by `F(G)`.
    pub fn work_bounded_by_f(self) -> bool {
        matches!(self, Algo::Hybrid | Algo::Cn | Algo::EdgeHash)
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Contract(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountOptions {
    pub l: usize,
    /// Extension split; `None` picks the default.
    pub l1: Option<usize>,
    pub threads: usize,
    pub limits: Limits,
    /// When false, `millis` is reported as 0 so output is reproducible.
    pub timed: bool,
}

impl CountOptions {
    pub fn new(l: usize) -> Self {
        CountOptions {
            l,
            l1: None,
            threads: 1,
            limits: Limits::default(),
            timed: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub algo: String,
    pub l: usize,
    pub count: u128,
    pub inner_iterations: u64,
    pub edge_probes: u64,
    pub millis: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<MethodKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pre_division_total: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub saturated: Option<bool>,
}

impl CountReport {
    fn plain(algo: Algo, l: usize, count: u128, work: WorkCounter) -> Self {
        CountReport {
            algo: algo.name().to_string(),
            l,
            count,
            inner_iterations: work.inner_iterations,
            edge_probes: work.edge_probes,
            millis: 0,
            method: None,
            split: None,
            multiplicity: None,
            pre_division_total: None,
            saturated: None,
        }
    }
}

/// Counts `K_l` in `g` with `algo`. Only the algorithm call is timed.
pub fn run_count(g: &Graph, algo: Algo, opts: &CountOptions) -> Result<CountReport> {
    let l = opts.l;
    if algo.triangles_only() && l != 3 {
        return Err(Error::Contract(format!("{algo} only counts triangles, got l = {l}")));
    }
    let matrix = match algo {
        Algo::Hybrid | Algo::Matrix => Some(AdjMatrix::build(g, opts.limits.matrix_max_n)?),
        _ => None,
    };

    let start = Instant::now();
    let mut triangles = 0u128;
    let mut tally = |_| triangles += 1;
    let mut report = match algo {
        Algo::Hybrid => {
            let work = list_hybrid(g, matrix.as_ref().expect("matrix built"), &mut tally)?;
            CountReport::plain(algo, l, triangles, work)
        }
        Algo::Cn => {
            let work = list_chiba_nishizeki(g, &mut tally);
            CountReport::plain(algo, l, triangles, work)
        }
        Algo::Ir => {
            let work = list_itai_rodeh(g, &mut tally);
            CountReport::plain(algo, l, triangles, work)
        }
        Algo::EdgeHash => {
            let work = list_edge_iterator_hashed(g, &mut tally);
            CountReport::plain(algo, l, triangles, work)
        }
        Algo::Matrix => {
            let count = count_matrix_trace(g, matrix.as_ref().expect("matrix built"))?;
            CountReport::plain(algo, l, count as u128, WorkCounter::default())
        }
        Algo::Kclique => {
            let sum = CliqueLister::new(g).sum(l, opts.threads, |_| Ok(1))?;
            let mut r = CountReport::plain(algo, l, sum.total, sum.work);
            r.saturated = Some(sum.saturated);
            r
        }
        Algo::Extension => {
            let l1 = opts.l1.unwrap_or_else(|| default_split(l));
            let mc = extension_count_with_threads(g, l, l1, opts.threads)?;
            let mut r = CountReport::plain(algo, l, mc.count, mc.work);
            r.method = Some(mc.plan.method);
            r.split = Some(mc.plan.split);
            r.multiplicity = Some(mc.plan.multiplicity);
            r.pre_division_total = Some(mc.pre_division_total);
            r.saturated = Some(mc.saturated);
            r
        }
        Algo::TriangleMethod => {
            let mc = triangle_method_count(g, l, &opts.limits)?;
            let mut r = CountReport::plain(algo, l, mc.count, mc.work);
            r.method = Some(mc.plan.method);
            r.split = Some(mc.plan.split);
            r.multiplicity = Some(mc.plan.multiplicity);
            r.pre_division_total = Some(mc.pre_division_total);
            r.saturated = Some(mc.saturated);
            r
        }
    };
    if opts.timed {
        report.millis = start.elapsed().as_millis() as u64;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_lemma3;

    fn complete(n: u32) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n as usize, &edges).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for a in Algo::ALL {
            assert_eq!(a.name().parse::<Algo>().unwrap(), a);
            assert_eq!(serde_json::to_string(&a).unwrap(), format!("\"{}\"", a.name()));
        }
        assert!("strassen".parse::<Algo>().is_err());
    }

    #[test]
    fn every_triangle_algo_counts_k6() {
        let g = complete(6);
        for a in Algo::ALL {
            let mut opts = CountOptions::new(3);
            opts.timed = false;
            if a == Algo::Extension {
                continue;
            }
            assert_eq!(run_count(&g, a, &opts).unwrap().count, 20, "{a}");
        }
    }

    #[test]
    fn composite_reports_carry_method_fields() {
        let mut opts = CountOptions::new(6);
        opts.timed = false;
        let r = run_count(&complete(6), Algo::TriangleMethod, &opts).unwrap();
        assert_eq!((r.count, r.multiplicity, r.pre_division_total), (1, Some(15), Some(15)));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["method"], "triangle-method");

        let (g, _) = gen_lemma3(3, 4, 0).unwrap();
        let r = run_count(&g, Algo::Extension, &CountOptions::new(4)).unwrap();
        assert_eq!(r.count, 27);
        assert_eq!(r.split, Some((2, 2)));
    }

    #[test]
    fn triangle_algos_reject_other_sizes() {
        let err = run_count(&complete(5), Algo::Hybrid, &CountOptions::new(4)).unwrap_err();
        assert_eq!(err.kind(), "contract");
    }

    #[test]
    fn plain_reports_omit_method_fields() {
        let mut opts = CountOptions::new(3);
        opts.timed = false;
        let r = run_count(&complete(4), Algo::Cn, &opts).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 6);
        for key in ["algo", "l", "count", "inner_iterations", "edge_probes", "millis"] {
            assert!(keys.contains(&key), "{key}");
        }
        assert_eq!(json["count"], 4);
        assert_eq!(json["millis"], 0);
    }
}
