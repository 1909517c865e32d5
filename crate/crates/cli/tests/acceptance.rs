//! Acceptance suite: one line per criterion with its verdict, runtime and
//! limit. Exits nonzero when any criterion fails.

use std::collections::BTreeSet;
use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use kclique::generators::{gen_lemma3, random_gnp};
use kclique::matrix::DEFAULT_MATRIX_MAX_N;
use kclique::methods::{edge_count_detect, extension_count, triangle_method_count, triangle_method_detect, Limits};
use kclique::triangles::{
    count_matrix_trace, list_chiba_nishizeki, list_edge_iterator_hashed, list_hybrid, list_itai_rodeh, Triangle,
};
use kclique::{degeneracy, AdjMatrix, Clique, Graph, Vertex};

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn choose(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Dense adjacency used by the oracles below.
fn dense(g: &Graph) -> Vec<Vec<bool>> {
    let mut d = vec![vec![false; g.n()]; g.n()];
    for (u, v) in g.edges() {
        d[u as usize][v as usize] = true;
        d[v as usize][u as usize] = true;
    }
    d
}

fn oracle_triangles(adj: &[Vec<bool>]) -> Vec<Triangle> {
    let n = adj.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !adj[i][j] {
                continue;
            }
            for k in j + 1..n {
                if adj[i][k] && adj[j][k] {
                    out.push(Triangle::new(i as Vertex, j as Vertex, k as Vertex));
                }
            }
        }
    }
    out
}

/// Exhaustive ordered scan over vertex subsets, extending only cliques.
fn oracle_cliques(adj: &[Vec<bool>], l: usize) -> u128 {
    fn go(adj: &[Vec<bool>], l: usize, start: usize, chosen: &mut Vec<usize>) -> u128 {
        if chosen.len() == l {
            return 1;
        }
        let mut count = 0;
        for v in start..adj.len() {
            if chosen.iter().all(|&u| adj[u][v]) {
                chosen.push(v);
                count += go(adj, l, v + 1, chosen);
                chosen.pop();
            }
        }
        count
    }
    go(adj, l, 0, &mut Vec::new())
}

fn oracle_f(g: &Graph) -> u128 {
    g.edges().map(|(u, v)| g.degree(u).min(g.degree(v)) as u128).sum()
}

/// Least `a` with `4a^2 >= 2m + n`, i.e. `ceil(sqrt(2m + n) / 2)`.
fn cn_bound(g: &Graph) -> u128 {
    let target = 2 * g.m() as u128 + g.n() as u128;
    let mut a = 0u128;
    while 4 * a * a < target {
        a += 1;
    }
    a
}

/// Replays the elimination order; the largest residual degree certifies an
/// arboricity upper bound.
fn replayed_degeneracy(g: &Graph) -> u128 {
    let info = degeneracy(g);
    let mut removed = vec![false; g.n()];
    let mut worst = 0;
    for &v in &info.order {
        let residual = g.neighbors(v).iter().filter(|&&w| !removed[w as usize]).count();
        worst = worst.max(residual);
        removed[v as usize] = true;
    }
    assert_eq!(worst, info.d);
    worst as u128
}

fn suite1_graphs() -> Vec<(String, Graph)> {
    let ps = [0.05, 0.2, 0.5];
    (0..200u64)
        .map(|i| {
            let n = 10 + (i as usize * 37) % 111;
            let p = ps[i as usize % 3];
            let seed = 1000 + i;
            (format!("gnp(n={n}, p={p}, seed={seed})"), random_gnp(n, p, seed).unwrap())
        })
        .collect()
}

const SUITE2: [(usize, usize); 5] = [(2, 4), (3, 4), (2, 6), (3, 6), (2, 8)];

fn suite2_graphs() -> Vec<(String, Graph)> {
    SUITE2
        .iter()
        .map(|&(k, b)| (format!("lemma3(k={k}, b={b})"), gen_lemma3(k, b, 0).unwrap().0))
        .collect()
}

fn sorted(mut v: Vec<Triangle>) -> Vec<Triangle> {
    v.sort_unstable();
    v
}

fn criterion_1() -> Verdict {
    let graphs = suite1_graphs();
    let mut total = 0usize;
    for (name, g) in &graphs {
        let expected = oracle_triangles(&dense(g));
        let matrix = AdjMatrix::build(g, DEFAULT_MATRIX_MAX_N).map_err(|e| e.to_string())?;
        let mut streams: Vec<(&str, Vec<Triangle>)> = Vec::new();
        let mut s = Vec::new();
        list_hybrid(g, &matrix, |t| s.push(t)).map_err(|e| e.to_string())?;
        streams.push(("hybrid", s));
        let mut s = Vec::new();
        list_chiba_nishizeki(g, |t| s.push(t));
        streams.push(("cn", s));
        let mut s = Vec::new();
        list_itai_rodeh(g, |t| s.push(t));
        streams.push(("ir", s));
        let mut s = Vec::new();
        list_edge_iterator_hashed(g, |t| s.push(t));
        streams.push(("edge-hash", s));
        for (algo, stream) in streams {
            let len = stream.len();
            let set = sorted(stream);
            ensure(set.iter().collect::<BTreeSet<_>>().len() == len, || format!("{algo} repeats on {name}"))?;
            ensure(set == expected, || format!("{algo} differs from brute force on {name}"))?;
        }
        let trace = count_matrix_trace(g, &matrix).map_err(|e| e.to_string())?;
        ensure(trace as usize == expected.len(), || format!("matrix-trace {trace} vs {} on {name}", expected.len()))?;
        total += expected.len();
    }
    Ok(format!("{} graphs, {total} triangles, 5 counters identical to brute force", graphs.len()))
}

fn criterion_2() -> Verdict {
    let limits = Limits::default();
    let mut checks = 0;
    for &(k, b) in &SUITE2 {
        let (g, _) = gen_lemma3(k, b, 0).unwrap();
        for l in 3..=5usize {
            let expected = k as u128 * choose(b as u128, l as u128)
                + k as u128 * choose(b as u128, l as u128 - 1) * (b as u128 / 2);
            let mut listed = 0u128;
            kclique::list_k_cliques(&g, l, |_| listed += 1).map_err(|e| e.to_string())?;
            ensure(listed == expected, || format!("list_k_cliques k={k} b={b} l={l}: {listed} vs {expected}"))?;
            checks += 1;
            for l1 in 2..l.saturating_sub(1) {
                let r = extension_count(&g, l, l1).map_err(|e| e.to_string())?;
                ensure(r.count == expected, || format!("extension k={k} b={b} l={l} l1={l1}: {} vs {expected}", r.count))?;
                checks += 1;
            }
            if l % 3 == 0 {
                let r = triangle_method_count(&g, l, &limits).map_err(|e| e.to_string())?;
                ensure(r.count == expected, || format!("triangle-method k={k} b={b} l={l}: {} vs {expected}", r.count))?;
                checks += 1;
            }
        }
    }
    let (g, _) = gen_lemma3(3, 4, 0).unwrap();
    let mut k4 = 0;
    kclique::list_k_cliques(&g, 4, |_| k4 += 1).map_err(|e| e.to_string())?;
    let triangles = oracle_triangles(&dense(&g)).len();
    ensure(g.m() == 42 && triangles == 48 && k4 == 27, || {
        format!("(3,4): m={}, triangles={triangles}, K4={k4}", g.m())
    })?;
    Ok(format!("{checks} closed-form checks exact; (k=3,b=4): m=42, triangles=48, K4=27"))
}

fn criterion_3() -> Verdict {
    let mut graphs = suite1_graphs();
    graphs.extend(suite2_graphs());
    let mut tightest = 0f64;
    for (name, g) in &graphs {
        let m = g.m() as u128;
        let f = oracle_f(g);
        ensure(f * f <= 16 * m * m * m, || format!("F > 4 m^1.5 on {name}"))?;
        let bound = 2 * m * cn_bound(g).min(replayed_degeneracy(g));
        ensure(f <= bound, || format!("F = {f} > 2 m min(cn, d) = {bound} on {name}"))?;
        let matrix = AdjMatrix::build(g, DEFAULT_MATRIX_MAX_N).map_err(|e| e.to_string())?;
        let hybrid = list_hybrid(g, &matrix, |_| {}).map_err(|e| e.to_string())?;
        let hashed = list_edge_iterator_hashed(g, |_| {});
        for (algo, inner) in [("hybrid", hybrid.inner_iterations), ("edge-hash", hashed.inner_iterations)] {
            ensure(inner as u128 <= f, || format!("{algo} inner_iterations {inner} > F {f} on {name}"))?;
        }
        if bound > 0 {
            tightest = tightest.max(f as f64 / bound as f64);
        }
    }
    Ok(format!("{} graphs; max F / (2 m min(cn, d)) = {tightest:.3}", graphs.len()))
}

fn criterion_4() -> Verdict {
    let limits = Limits::default();
    for n in 6..=9u32 {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let g = Graph::from_edges(n as usize, &edges).unwrap();
        let r = triangle_method_count(&g, 6, &limits).map_err(|e| e.to_string())?;
        let expected = choose(n as u128, 6);
        ensure(r.count == expected && r.pre_division_total == 15 * expected, || {
            format!("K{n}: count {} pre-division {} vs {expected}, {}", r.count, r.pre_division_total, 15 * expected)
        })?;
    }
    Ok("K6..K9: count C(n,6), pre-division 15 C(n,6)".into())
}

fn criterion_5() -> Verdict {
    let ps = [0.1, 0.3, 0.5, 0.7];
    let mut checks = 0;
    for i in 0..50u64 {
        let n = 12 + (i as usize * 7) % 49;
        let p = ps[i as usize % 4];
        let g = random_gnp(n, p, 5000 + i).unwrap();
        let adj = dense(&g);
        for l in 4..=6usize {
            let expected = oracle_cliques(&adj, l);
            for l1 in 2..=l - 2 {
                let r = extension_count(&g, l, l1).map_err(|e| e.to_string())?;
                let divisor = choose(l as u128, l1 as u128);
                ensure(r.pre_division_total % divisor == 0, || {
                    format!("n={n} p={p} l={l} l1={l1}: {} not divisible by {divisor}", r.pre_division_total)
                })?;
                ensure(r.pre_division_total / divisor == expected, || {
                    format!("n={n} p={p} l={l} l1={l1}: {} vs brute force {expected}", r.pre_division_total / divisor)
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("50 graphs, {checks} (l, l1) splits exact"))
}

fn witness_ok(g: &Graph, w: &Option<Clique>, l: usize, count: u128) -> bool {
    match w {
        None => count == 0,
        Some(c) => {
            let v = c.vertices();
            let pairwise = (0..v.len()).all(|a| (a + 1..v.len()).all(|b| g.has_edge(v[a], v[b])));
            let distinct = v.iter().collect::<BTreeSet<_>>().len() == l;
            count > 0 && v.len() == l && distinct && pairwise
        }
    }
}

fn criterion_6() -> Verdict {
    let limits = Limits::default();
    let mut graphs = suite1_graphs();
    graphs.extend(suite2_graphs());
    let (mut positive, mut negative) = (0, 0);
    for (name, g) in &graphs {
        let adj = dense(g);
        for l in 3..=6usize {
            let count = oracle_cliques(&adj, l);
            let w = triangle_method_detect(g, l, &limits).map_err(|e| e.to_string())?;
            ensure(witness_ok(g, &w, l, count), || format!("triangle_method_detect l={l} on {name}: {w:?}, count {count}"))?;
            if count > 0 { positive += 1 } else { negative += 1 }
        }
        for j in 1..=2usize {
            let l = 4 * j;
            let count = oracle_cliques(&adj, l);
            let w = edge_count_detect(g, j, &limits).map_err(|e| e.to_string())?;
            ensure(witness_ok(g, &w, l, count), || format!("edge_count_detect j={j} on {name}: {w:?}, count {count}"))?;
            if count > 0 { positive += 1 } else { negative += 1 }
        }
    }
    Ok(format!("{} graphs; {positive} verified witnesses, {negative} correct absences", graphs.len()))
}

fn criterion_7() -> Verdict {
    let mut ratios = Vec::new();
    for b in [8, 16, 32] {
        let (g, _) = gen_lemma3(4, b, 0).unwrap();
        let d = degeneracy(&g).d as f64;
        let mut k4 = 0u64;
        kclique::list_k_cliques(&g, 4, |_| k4 += 1).map_err(|e| e.to_string())?;
        ratios.push(k4 as f64 / (d * d * g.m() as f64));
    }
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(0.0, f64::max);
    ensure(lo > 0.0 && hi / lo <= 64.0, || format!("ratios {ratios:?}"))?;
    Ok(format!("K4 / (d^2 m) = {ratios:.4?}, spread {:.2}x (limit 64x)", hi / lo))
}

fn criterion_8() -> Verdict {
    let tmp = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let dir = tmp.path();
    let run = |args: &[&str]| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_kclique"))
            .current_dir(dir)
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || format!("{args:?} exited with {}", out.status))?;
        Ok(out.stdout)
    };
    let generators: [&[&str]; 3] = [
        &["--model", "gnp", "--n", "80", "--p", "0.3", "--seed", "17"],
        &["--model", "lemma3", "--k", "3", "--b", "6"],
        &["--model", "lemma2", "--n", "60", "--m", "400"],
    ];
    let mut compared = 0;
    for (i, params) in generators.iter().enumerate() {
        let mut files = Vec::new();
        for rep in 0..2 {
            let prefix = format!("g{i}_{rep}");
            let mut args = vec!["generate"];
            args.extend_from_slice(params);
            args.extend_from_slice(&["--out", &prefix]);
            run(&args)?;
            let el = fs::read(dir.join(format!("{prefix}.el"))).map_err(|e| e.to_string())?;
            let cert = fs::read(dir.join(format!("{prefix}.cert.json"))).map_err(|e| e.to_string())?;
            files.push((el, cert));
        }
        ensure(files[0] == files[1], || format!("generate {params:?} is not byte-identical"))?;
        compared += 1;

        let input = format!("g{i}_0.el");
        for (algo, l) in [("hybrid", "3"), ("cn", "3"), ("kclique", "4"), ("extension", "5"), ("triangle-method", "6")] {
            let mut outputs = Vec::new();
            for threads in ["1", "2", "8", "1"] {
                outputs.push(run(&["count", "--algo", algo, "--l", l, "--threads", threads, "--no-timing", &input])?);
            }
            ensure(outputs.iter().all(|o| *o == outputs[0]), || {
                format!("count --algo {algo} --l {l} on {input} differs across runs or threads")
            })?;
            compared += 1;
        }
    }
    Ok(format!("{compared} invocations byte-identical across repeats and --threads 1/2/8"))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Verdict, Option<u64>); 8] = [
        (1, "oracle equivalence (triangles)", criterion_1, Some(60)),
        (2, "closed-form clique counts", criterion_2, Some(30)),
        (3, "work-bound invariants", criterion_3, None),
        (4, "triangle-method multiplicity", criterion_4, Some(10)),
        (5, "extension-method overcount", criterion_5, Some(120)),
        (6, "detection soundness/completeness", criterion_6, Some(60)),
        (7, "tightness scaling", criterion_7, None),
        (8, "determinism", criterion_8, None),
    ];
    let mut failures = 0;
    for (id, name, check, limit) in criteria {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        let over = limit.is_some_and(|s| elapsed > Duration::from_secs(s));
        let limit_text = limit.map_or("no limit".to_string(), |s| format!("limit {s}s"));
        let (status, detail) = match (&verdict, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over time budget; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("criterion {id} [{name}]: {status} ({:.2}s, {limit_text}) {detail}", elapsed.as_secs_f64());
    }
    if failures == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
