//! Deterministic graph constructors, each paired with a certificate of exact
//! subgraph counts.
//!
//! The two extremal families:
//!
//! * `lemma2(n, m)`: a clique on the first `x` vertices, `C(x,2) <= m < C(x+1,2)`,
//!   plus the leftover `m - C(x,2)` edges dealt round-robin from the clique to
//!   an independent set. Contains `Theta(m^{3/2})` triangles.
//! * `lemma3(k, b)`: `k` disjoint copies of `K_b` all fully joined to an
//!   independent set of `b/2` vertices. Arboricity is at most `b` while the
//!   number of `K_l` copies is `Omega(b^{l-2} m)`.

use std::collections::BTreeMap;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Model {
    Lemma2 { n: usize, m: usize },
    Lemma3 { k: usize, b: usize, n_pad: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Cycle { n: usize },
    Path { n: usize },
    #[serde(rename = "gnp")]
    RandomGnp { n: usize, p: f64, seed: u64 },
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Lemma2 { .. } => "lemma2",
            Model::Lemma3 { .. } => "lemma3",
            Model::Complete { .. } => "complete",
            Model::CompleteBipartite { .. } => "complete_bipartite",
            Model::Cycle { .. } => "cycle",
            Model::Path { .. } => "path",
            Model::RandomGnp { .. } => "gnp",
        }
    }

    /// Compact identifier, e.g. `lemma3-k3-b4-pad0`.
    pub fn id(&self) -> String {
        match *self {
            Model::Lemma2 { n, m } => format!("lemma2-n{n}-m{m}"),
            Model::Lemma3 { k, b, n_pad } => format!("lemma3-k{k}-b{b}-pad{n_pad}"),
            Model::Complete { n } => format!("complete-n{n}"),
            Model::CompleteBipartite { a, b } => format!("complete_bipartite-{a}x{b}"),
            Model::Cycle { n } => format!("cycle-n{n}"),
            Model::Path { n } => format!("path-n{n}"),
            Model::RandomGnp { n, p, seed } => format!("gnp-n{n}-p{p}-s{seed}"),
        }
    }

    fn params(&self) -> BTreeMap<String, Value> {
        let value = serde_json::to_value(self).expect("model parameters serialize");
        let Value::Object(map) = value else { unreachable!("model serializes as an object") };
        map.into_iter().filter(|(k, _)| k != "model").collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorCertificate {
    pub model: String,
    pub params: BTreeMap<String, Value>,
    pub n: usize,
    pub m: usize,
    /// Exact number of `K_l` copies, keyed by `l`, where a closed form exists.
    pub expected_counts: BTreeMap<usize, u128>,
    pub alpha_claim: Option<usize>,
    pub seed: Option<u64>,
}

impl GeneratorCertificate {
    fn new(model: &Model, g: &Graph) -> Self {
        GeneratorCertificate {
            model: model.name().to_string(),
            params: model.params(),
            n: g.n(),
            m: g.m(),
            expected_counts: BTreeMap::new(),
            alpha_claim: None,
            seed: match model {
                Model::RandomGnp { seed, .. } => Some(*seed),
                _ => None,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: format!("certificate: {e}"),
        })
    }
}

pub fn generate(model: &Model) -> Result<(Graph, GeneratorCertificate)> {
    match *model {
        Model::Lemma2 { n, m } => gen_lemma2(n, m),
        Model::Lemma3 { k, b, n_pad } => gen_lemma3(k, b, n_pad),
        _ => gen_standard(model),
    }
}

fn binom(n: usize, k: usize) -> Result<u128> {
    binomial(n as u64, k as u64).ok_or_else(|| Error::capacity("binomial coefficient", u128::MAX, u128::MAX))
}

fn checked_graph(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
    if n > Vertex::MAX as usize {
        return Err(Error::Contract(format!("n = {n} exceeds the vertex id range")));
    }
    Graph::from_edges(n, edges)
}

pub fn gen_lemma2(n: usize, m: usize) -> Result<(Graph, GeneratorCertificate)> {
    let max_m = binom(n, 2)?;
    if m < 3 || m as u128 > max_m {
        return Err(Error::Contract(format!("lemma2 needs 3 <= m <= C(n,2) = {max_m}, got m = {m}")));
    }
    let mut x = 2;
    while binom(x + 1, 2)? <= m as u128 {
        x += 1;
    }
    let extra = m - binom(x, 2)? as usize;
    let v2 = n - x;

    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(m);
    for u in 0..x {
        for v in u + 1..x {
            edges.push((u as Vertex, v as Vertex));
        }
    }
    // Edge t joins V2 vertex (t mod |V2|) to clique vertex (t div |V2|);
    // extra < x keeps the clique endpoint in range.
    let mut v2_degree = vec![0usize; v2];
    for t in 0..extra {
        let target = t % v2;
        let source = t / v2;
        edges.push((source as Vertex, (x + target) as Vertex));
        v2_degree[target] += 1;
    }
    let g = checked_graph(n, &edges)?;
    debug_assert_eq!(g.m(), m);

    let model = Model::Lemma2 { n, m };
    let mut cert = GeneratorCertificate::new(&model, &g);
    for l in 3..=x {
        let mut count = binom(x, l)?;
        for &deg in &v2_degree {
            count += binom(deg, l - 1)?;
        }
        cert.expected_counts.insert(l, count);
    }
    Ok((g, cert))
}

pub fn gen_lemma3(k: usize, b: usize, n_pad: usize) -> Result<(Graph, GeneratorCertificate)> {
    if b < 2 || !b.is_multiple_of(2) {
        return Err(Error::Contract(format!("lemma3 needs an even block size b >= 2, got {b}")));
    }
    if k < 1 {
        return Err(Error::Contract("lemma3 needs at least one block".into()));
    }
    let half = b / 2;
    let v1 = k * b;
    let n = v1 + half + n_pad;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for block in 0..k {
        let base = block * b;
        for u in base..base + b {
            for v in u + 1..base + b {
                edges.push((u as Vertex, v as Vertex));
            }
        }
    }
    for u in 0..v1 {
        for s in v1..v1 + half {
            edges.push((u as Vertex, s as Vertex));
        }
    }
    let g = checked_graph(n, &edges)?;

    let model = Model::Lemma3 { k, b, n_pad };
    let mut cert = GeneratorCertificate::new(&model, &g);
    for l in 3..=b + 1 {
        let count = k as u128 * binom(b, l)? + k as u128 * binom(b, l - 1)? * half as u128;
        cert.expected_counts.insert(l, count);
    }
    cert.alpha_claim = Some(b);
    Ok((g, cert))
}

pub fn gen_standard(model: &Model) -> Result<(Graph, GeneratorCertificate)> {
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let (n, counts, alpha): (usize, Vec<(usize, u128)>, Option<usize>) = match *model {
        Model::Complete { n } => {
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u as Vertex, v as Vertex));
                }
            }
            let counts = (3..=n).map(|l| Ok((l, binom(n, l)?))).collect::<Result<_>>()?;
            (n, counts, Some(n.div_ceil(2)))
        }
        Model::CompleteBipartite { a, b } => {
            for u in 0..a {
                for v in a..a + b {
                    edges.push((u as Vertex, v as Vertex));
                }
            }
            (a + b, vec![(3, 0)], None)
        }
        Model::Cycle { n } => {
            if n < 3 {
                return Err(Error::Contract(format!("cycle needs n >= 3, got {n}")));
            }
            edges.extend((0..n).map(|u| (u as Vertex, ((u + 1) % n) as Vertex)));
            (n, vec![(3, u128::from(n == 3))], Some(2))
        }
        Model::Path { n } => {
            edges.extend((1..n).map(|u| ((u - 1) as Vertex, u as Vertex)));
            (n, vec![(3, 0)], Some(usize::from(n >= 2)))
        }
        Model::RandomGnp { n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Contract(format!("edge probability must lie in [0, 1], got {p}")));
            }
            let mut rng = SplitMix64::from_seed(seed.to_le_bytes());
            for u in 0..n {
                for v in u + 1..n {
                    if unit_interval(rng.next_u64()) < p {
                        edges.push((u as Vertex, v as Vertex));
                    }
                }
            }
            (n, Vec::new(), None)
        }
        Model::Lemma2 { .. } | Model::Lemma3 { .. } => {
            return Err(Error::Contract(format!("{} is not a standard model", model.name())));
        }
    };
    let g = checked_graph(n, &edges)?;
    let mut cert = GeneratorCertificate::new(model, &g);
    cert.expected_counts.extend(counts);
    cert.alpha_claim = alpha;
    Ok((g, cert))
}

/// Top 53 bits of a 64-bit draw as a double in `[0, 1)`.
fn unit_interval(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// `G(n, p)` with the seeded splitmix stream.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    gen_standard(&Model::RandomGnp { n, p, seed }).map(|(g, _)| g)
}
