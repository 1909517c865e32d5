//! Benchmark grid: every (graph, algorithm) pair becomes one CSV row holding
//! the count, the work counters and the structural bounds they are checked
//! against.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::degeneracy::{degeneracy, edge_work_functional};
use crate::error::{Error, Result};
use crate::generators::{generate, Model};
use crate::graph::Graph;
use crate::methods::Limits;
use crate::report::{run_count, Algo, CountOptions};

/// CSV column order.
pub const CSV_HEADER: [&str; 13] = [
    "graph_id",
    "model",
    "n",
    "m",
    "d",
    "alpha_ub",
    "F",
    "algo",
    "l",
    "count",
    "inner_iterations",
    "millis",
    "status",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub graph_id: String,
    pub model: String,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    /// `min(ceil(sqrt(2m+n)/2), d)`, a certified upper bound on arboricity.
    pub alpha_ub: usize,
    #[serde(rename = "F")]
    pub f: u64,
    pub algo: String,
    pub l: usize,
    pub count: Option<u128>,
    pub inner_iterations: Option<u64>,
    pub millis: Option<u64>,
    /// `ok`, or `error:<kind>: <message>` when the row failed.
    pub status: String,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub models: Vec<Model>,
    pub algos: Vec<Algo>,
    pub l: usize,
    pub threads: usize,
    pub limits: Limits,
}

struct GraphStats {
    id: String,
    model: &'static str,
    graph: Option<Graph>,
    n: usize,
    m: usize,
    d: usize,
    alpha_ub: usize,
    f: u64,
    error: Option<Error>,
}

fn graph_stats(model: &Model) -> GraphStats {
    let mut stats = GraphStats {
        id: model.id(),
        model: model.name(),
        graph: None,
        n: 0,
        m: 0,
        d: 0,
        alpha_ub: 0,
        f: 0,
        error: None,
    };
    match generate(model) {
        Ok((g, _)) => {
            let info = degeneracy(&g);
            stats.n = g.n();
            stats.m = g.m();
            stats.d = info.d;
            stats.alpha_ub = info.alpha_upper_bound();
            stats.f = edge_work_functional(&g).total;
            stats.graph = Some(g);
        }
        Err(e) => stats.error = Some(e),
    }
    stats
}

fn status_of(e: &Error) -> String {
    format!("error:{}: {e}", e.kind())
}

/// Runs the grid. Rows are computed on up to `threads` workers and returned
/// in grid order (models outer, algorithms inner).
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.max(1))
        .build()
        .map_err(|e| Error::Contract(format!("cannot start {} workers: {e}", config.threads)))?;
    let opts = CountOptions {
        l: config.l,
        l1: None,
        threads: 1,
        limits: config.limits,
        timed: true,
    };
    Ok(pool.install(|| {
        let graphs: Vec<GraphStats> = config.models.par_iter().map(graph_stats).collect();
        let jobs: Vec<(&GraphStats, Algo)> = graphs
            .iter()
            .flat_map(|s| config.algos.iter().map(move |&a| (s, a)))
            .collect();
        jobs.into_par_iter()
            .map(|(s, algo)| {
                let mut rec = BenchRecord {
                    graph_id: s.id.clone(),
                    model: s.model.to_string(),
                    n: s.n,
                    m: s.m,
                    d: s.d,
                    alpha_ub: s.alpha_ub,
                    f: s.f,
                    algo: algo.name().to_string(),
                    l: config.l,
                    count: None,
                    inner_iterations: None,
                    millis: None,
                    status: "ok".to_string(),
                };
                let outcome = match (&s.graph, &s.error) {
                    (Some(g), _) => run_count(g, algo, &opts),
                    (None, Some(e)) => Err(Error::Contract(format!("generator failed: {e}"))),
                    (None, None) => unreachable!("graph stats carry a graph or an error"),
                };
                match outcome {
                    Ok(r) => {
                        rec.count = Some(r.count);
                        rec.inner_iterations = Some(r.inner_iterations);
                        rec.millis = Some(r.millis);
                    }
                    Err(e) => rec.status = status_of(&e),
                }
                rec
            })
            .collect()
    }))
}

/// Writes the header and rows as CSV.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let io_err = |e: csv::Error| Error::Io(std::io::Error::other(e.to_string()));
    w.write_record(CSV_HEADER).map_err(io_err)?;
    for r in records {
        w.serialize(r).map_err(io_err)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(models: Vec<Model>, algos: Vec<Algo>) -> BenchConfig {
        BenchConfig {
            models,
            algos,
            l: 3,
            threads: 2,
            limits: Limits::default(),
        }
    }

    #[test]
    fn complete_grid_counts_triangles() {
        let cfg = config(
            vec![Model::Complete { n: 64 }, Model::Complete { n: 128 }],
            vec![Algo::Hybrid, Algo::EdgeHash],
        );
        let rows = run_bench(&cfg).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].count, Some(41_664));
        assert_eq!(rows[2].count, Some(341_376));
        assert_eq!(rows[3].graph_id, "complete-n128");
        assert_eq!(rows[3].algo, "edge-hash");
    }

    #[test]
    fn failures_become_status_rows() {
        let cfg = config(
            vec![Model::Cycle { n: 2 }, Model::Cycle { n: 5 }],
            vec![Algo::Cn, Algo::TriangleMethod],
        );
        let rows = run_bench(&cfg).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows[0].status.starts_with("error:contract"));
        assert_eq!(rows[2].status, "ok");
        assert_eq!(rows[2].count, Some(0));
        assert_eq!(rows[3].count, Some(0));
    }

    #[test]
    fn csv_header_and_shape() {
        let cfg = config(vec![Model::Complete { n: 5 }], vec![Algo::Cn]);
        let rows = run_bench(&cfg).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields.len(), CSV_HEADER.len());
        assert_eq!(&fields[..5], &["complete-n5", "complete", "5", "10", "4"]);
        assert_eq!(fields[9], "10");
        assert_eq!(fields[12], "ok");
    }
}
