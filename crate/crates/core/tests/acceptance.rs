//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hypercolor::pipeline::{color_equitably, Path, PipelineConfig, PipelineTrace, Route};
use hypercolor::tools::{gen_bounded_degree, gen_complete, gen_pipeline_friendly};
use hypercolor::{
    equitable_color, resample_until_clear, verify_coloring, verify_graph_coloring, BadEvent, Coloring,
    SimpleGraph, ThreeGraph, VariableSpace, Witness,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

fn criterion_fallback() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut times = Vec::with_capacity(1000);
    for k in 0..1000u64 {
        let n = rng.gen_range(3..=300);
        let d = rng.gen_range(1..=20);
        let h = gen_bounded_degree(n, d, n * d / 3, k);
        let cfg = PipelineConfig::for_instance(&h, d + 1, 1.0).with_seed(k);
        let start = Instant::now();
        let out = color_equitably(&h, &cfg).map_err(|e| format!("instance {k} (n={n}, d={d}): {e}"))?;
        times.push(start.elapsed());
        let verdict = verify_coloring(&h, &out.coloring).unwrap();
        ensure(verdict.passed(), || format!("instance {k}: {:?}", verdict.witness()))?;
        ensure(out.path == Path::Fallback, || format!("instance {k} took {}", out.path))?;
    }
    let med = median(times);
    ensure(med < Duration::from_secs(1), || format!("median {med:?}"))?;
    Ok(format!("1000/1000 verified, median {med:?}"))
}

fn random_graph(n: usize, max_degree: usize, rng: &mut ChaCha8Rng) -> SimpleGraph {
    let mut deg = vec![0usize; n];
    let mut edges = HashSet::new();
    let target = n * max_degree * 9 / 20;
    let mut misses = 0;
    while edges.len() < target && misses < 50 * n && n > 1 {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u == v || deg[u] >= max_degree || deg[v] >= max_degree || !edges.insert((u.min(v), u.max(v))) {
            misses += 1;
            continue;
        }
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    SimpleGraph::new(n, edges).unwrap()
}

fn criterion_equitable() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..500 {
        let n = rng.gen_range(1..=500);
        let cap = rng.gen_range(1..=20);
        let g = random_graph(n, cap, &mut rng);
        let r = g.max_degree() + 1;
        let c = equitable_color(&g, r).map_err(|e| format!("graph {k}: {e}"))?;
        let verdict = verify_graph_coloring(&g, &c).unwrap();
        ensure(verdict.passed(), || format!("graph {k} (n={n}): {:?}", verdict.witness()))?;
    }

    // Doubling n at fixed degree and r; best of three timings per size.
    let (delta, r) = (10, 11);
    let time_for = |n: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let graphs: Vec<SimpleGraph> = (0..20).map(|_| random_graph(n, delta, &mut rng)).collect();
        (0..3)
            .map(|_| {
                let start = Instant::now();
                for g in &graphs {
                    equitable_color(g, r).unwrap();
                }
                start.elapsed()
            })
            .min()
            .unwrap()
    };
    let (small, large) = (time_for(250), time_for(500));
    let ratio = large.as_secs_f64() / small.as_secs_f64().max(1e-9);
    ensure(ratio <= 5.0, || format!("n 250 -> 500 runtime ratio {ratio:.2}"))?;
    Ok(format!("500/500 verified, runtime ratio for n 250 -> 500 is {ratio:.2}"))
}

fn criterion_engine() -> Check {
    // Disjoint triads, two colors: each event is violated with probability
    // q = 1/4 independently of the others, so its resample count is
    // geometric with mean q / (1 - q).
    let q: f64 = 0.25;
    let expected = q / (1.0 - q);
    let k = 30;
    let space = VariableSpace::uniform(3 * k, 2).unwrap();
    let events: Vec<BadEvent> = (0..k)
        .map(|e| BadEvent::new(format!("m{e}"), vec![3 * e, 3 * e + 1, 3 * e + 2], |v| v[0] == v[1] && v[1] == v[2]))
        .collect();
    let samples: Vec<f64> = (0..10_000u64)
        .map(|seed| {
            let (_, log) = resample_until_clear(&space, &events, seed, 1_000_000).unwrap();
            log.total_resamples as f64 / k as f64
        })
        .collect();
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let se = (var / n).sqrt();
    ensure((mean - expected).abs() <= 3.0 * se, || format!("mean {mean:.4}, expected {expected:.4}, se {se:.4}"))?;

    // 8-uniform 2-coloring, every variable in at most 4 edges.
    let (vars, width, occurrences) = (400, 8, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut slots: Vec<usize> = (0..vars).flat_map(|v| std::iter::repeat_n(v, occurrences)).collect();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    slots.shuffle(&mut rng);
    for chunk in slots.chunks(width) {
        let mut e = chunk.to_vec();
        e.sort_unstable();
        e.dedup();
        if e.len() == width {
            edges.push(e);
        }
    }
    let p = 2.0 * 0.5f64.powi(width as i32);
    let dep = edges
        .iter()
        .map(|e| edges.iter().filter(|f| !std::ptr::eq(*f, e) && f.iter().any(|x| e.contains(x))).count())
        .max()
        .unwrap();
    let lll = std::f64::consts::E * p * (dep as f64 + 1.0);
    ensure(lll < 1.0, || format!("instance violates e p (d+1) < 1: {lll:.3}"))?;
    let events: Vec<BadEvent> = edges
        .iter()
        .enumerate()
        .map(|(i, e)| BadEvent::new(format!("e{i}"), e.clone(), |v| v.iter().all(|&x| x == v[0])))
        .collect();
    let space = VariableSpace::uniform(vars, 2).unwrap();
    let cap = 10 * events.len() as u64;
    let finished = (0..100u64).filter(|&s| resample_until_clear(&space, &events, s, cap).is_ok()).count();
    ensure(finished >= 99, || format!("{finished}/100 seeds finished under cap {cap}"))?;
    Ok(format!(
        "mean {mean:.4} vs {expected:.4} (se {se:.4}); {finished}/100 under cap {cap} with e p (d+1) = {lll:.3}"
    ))
}

fn contains_triad(h: &ThreeGraph, set: &[usize]) -> Option<[usize; 3]> {
    let inside: HashSet<usize> = set.iter().copied().collect();
    h.triads().iter().copied().find(|t| t.iter().all(|v| inside.contains(v)))
}

fn check_pipeline_run(h: &ThreeGraph, cfg: &PipelineConfig, trace: &PipelineTrace, c: &Coloring) -> Result<(), String> {
    let cover = &trace.phase1.cover;
    let labels = cover.labels();
    let p = cfg.p;
    let (s, ps) = (cfg.s, cfg.ps());

    // Phase 1: two-part cover property and both degree bounds.
    for t in h.triads() {
        let parts: HashSet<usize> = t.iter().map(|&v| labels[v]).collect();
        if parts.len() < 3 {
            let covered = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
                .iter()
                .any(|&(u, v)| cover.has_diedge(u, v) || cover.has_diedge(v, u));
            ensure(covered, || format!("triad {t:?} uncovered"))?;
        }
    }
    for v in 0..h.n() {
        let mut per_part = vec![0usize; cover.parts()];
        for w in cover.out_neighbors(v) {
            per_part[labels[w]] += 1;
        }
        ensure(per_part.iter().all(|&k| k + 1 < p), || format!("vertex {v} out-degrees {per_part:?}"))?;
        let intra: HashSet<usize> = cover
            .out_neighbors(v)
            .chain(cover.in_neighbors(v).iter().copied())
            .filter(|&w| labels[w] == labels[v])
            .collect();
        ensure(intra.len() + 1 < p, || format!("vertex {v} intra degree {}", intra.len()))?;
    }

    // Phase 2.
    let p2 = &trace.phase2;
    let floor = p2.t1() as i64 - (p * cfg.t) as i64;
    ensure(p2.index_set_sizes.iter().all(|&k| k as i64 >= floor && k > 0), || "index set too small".into())?;
    for (j, plus) in p2.w_plus.iter().enumerate() {
        if let Some(t) = contains_triad(h, plus) {
            return Err(format!("W_{j}^+ holds {t:?}"));
        }
        let rem = &p2.remainders[j];
        ensure(rem.len() < s && rem.iter().all(|v| p2.w_blocks[j].contains(v)), || format!("R_{j} = {rem:?}"))?;
    }
    for class in p2.w_blocks.iter().chain(&p2.finished) {
        ensure(contains_triad(h, class).is_none(), || format!("class {class:?} not independent"))?;
    }
    ensure(p2.u_blocks.iter().all(|u| u.len() >= 12 * ps), || "some U_i below 12ps".into())?;

    // Phase 3, conditions (i)-(iv) on every shifting iteration.
    let last = p2.u_blocks.len().saturating_sub(1);
    for rec in trace.phase3.records.iter().filter(|r| r.block < last) {
        ensure(rec.q_len == rec.rho && rec.rho < s, || format!("(i) fails: {rec:?}"))?;
        ensure(rec.remainder_len % s == 0, || format!("(ii) fails: {rec:?}"))?;
        ensure(rec.shift_set.len() == 4 * ps, || format!("(iii) fails: {rec:?}"))?;
        let inside: HashSet<usize> = rec.shift_set.iter().copied().collect();
        let max_deg = rec
            .shift_set
            .iter()
            .map(|&u| {
                let nbrs: HashSet<usize> = cover
                    .out_neighbors(u)
                    .chain(cover.in_neighbors(u).iter().copied())
                    .filter(|w| inside.contains(w))
                    .collect();
                nbrs.len()
            })
            .max()
            .unwrap_or(0);
        ensure(max_deg + 1 < 4 * p, || format!("(iv) fails: degree {max_deg}"))?;
    }

    // Size accounting.
    let mut sizes = c.class_sizes();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let mut planned = vec![s; if cfg.b == 0 { cfg.r } else { cfg.b }];
    planned.resize(cfg.r, s - 1);
    ensure(sizes == planned, || "class sizes differ from the plan".into())?;
    ensure(planned.iter().sum::<usize>() == h.n(), || "plan does not sum to n".into())?;
    Ok(())
}

fn criterion_pipeline() -> Check {
    let (n, r, d) = (800, 400, 16);
    let mut completed = 0;
    let (mut small_parts, mut shifted) = (0, 0);
    let mut failures = Vec::new();
    for seed in 0..100u64 {
        let h = gen_pipeline_friendly(&PipelineConfig::desk(n, r, d), seed);
        let cfg = PipelineConfig::desk(n, r, h.max_degree()).with_seed(seed).with_route(Route::ForcePipeline);
        match color_equitably(&h, &cfg) {
            Ok(out) => {
                let trace = out.trace.as_ref().ok_or("pipeline run without trace")?;
                ensure(out.path == Path::Pipeline, || format!("seed {seed} took {}", out.path))?;
                let verdict = verify_coloring(&h, &out.coloring).unwrap();
                ensure(verdict.passed(), || format!("seed {seed}: {:?}", verdict.witness()))?;
                check_pipeline_run(&h, &cfg, trace, &out.coloring).map_err(|e| format!("seed {seed}: {e}"))?;
                completed += 1;
                small_parts += usize::from(!trace.phase2.small_vertices.is_empty());
                shifted += usize::from(trace.phase3.shifted);
            }
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    ensure(completed >= 95, || format!("{completed}/100 completed; {failures:?}"))?;
    Ok(format!(
        "{completed}/100 through all phases (n={n}, r={r}, d={d}); small parts in {small_parts}, shifting in {shifted}"
    ))
}

fn criterion_verifier() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0u64;
    for k in 0..200 {
        let n = rng.gen_range(3..=6);
        let all: Vec<[usize; 3]> =
            (0..n).flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c]))).collect();
        let triads: Vec<[usize; 3]> = all.into_iter().filter(|_| rng.gen_bool(0.4)).collect();
        let h = ThreeGraph::new(n, triads.clone()).unwrap();
        for r in 1..=3usize {
            for code in 0..r.pow(n as u32) {
                let colors: Vec<usize> = (0..n).map(|v| code / r.pow(v as u32) % r).collect();
                let mono = triads.iter().any(|t| colors[t[0]] == colors[t[1]] && colors[t[1]] == colors[t[2]]);
                let mut tally = vec![0usize; r];
                colors.iter().for_each(|&c| tally[c] += 1);
                let equitable = tally.iter().max().unwrap() - tally.iter().min().unwrap() <= 1;
                let verdict = verify_coloring(&h, &Coloring::new(r, colors.clone()).unwrap()).unwrap();
                ensure(verdict.proper == !mono && verdict.equitable == equitable, || {
                    format!("graph {k}, coloring {colors:?}: verdict {verdict:?}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("200 graphs, {checked} colorings, zero discrepancies"))
}

fn criterion_lower_bound() -> Check {
    let h = gen_complete(6);
    ensure(h.max_degree() == 10, || "K6 degree".into())?;
    let bound = (h.max_degree() as f64 / 2.0).sqrt();
    let mut canonical = 0;
    for code in 0..3usize.pow(6) {
        let colors: Vec<usize> = (0..6).map(|v| code / 3usize.pow(v) % 3).collect();
        // Canonical: colors appear in order of first use.
        let mut next = 0;
        let is_canonical = colors.iter().all(|&c| {
            if c == next {
                next += 1;
            }
            c < next
        });
        if !is_canonical {
            continue;
        }
        canonical += 1;
        let c = Coloring::new(3, colors.clone()).unwrap();
        let verdict = verify_coloring(&h, &c).unwrap();
        let sizes = c.class_sizes();
        if verdict.equitable {
            ensure(sizes.iter().any(|&s| s >= 2), || format!("{colors:?} has no class of size 2"))?;
        }
        if sizes.iter().any(|&s| s >= 3) {
            ensure(!verdict.proper, || format!("{colors:?} accepted"))?;
            ensure(matches!(verdict.improper_witness, Some(Witness::MonochromaticTriad(_))), || {
                format!("{colors:?} lacks a triad witness")
            })?;
        }
    }
    // Set partitions of six elements into at most three blocks:
    // S(6,1) + S(6,2) + S(6,3) = 1 + 31 + 90.
    ensure(canonical == 122, || format!("{canonical} canonical colorings"))?;
    // Fewer than sqrt(d/2) colors: two colors never give a proper coloring.
    let proper_two = (0..64usize)
        .filter(|code| {
            let colors = (0..6).map(|v| code >> v & 1).collect();
            verify_coloring(&h, &Coloring::new(2, colors).unwrap()).unwrap().proper
        })
        .count();
    ensure(proper_two == 0 && 2.0 < bound && bound <= 3.0, || format!("{proper_two} proper 2-colorings"))?;
    Ok(format!("{canonical} canonical 3-colorings checked, sqrt(d/2) = {bound:.3}"))
}

fn criterion_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_hypercolor");
    let run = |args: &[&str]| -> Result<(), String> {
        let out = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        ensure(out.status.success(), || format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)))
    };
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    run(&["gen", "--n", "200", "--d", "12", "--seed", "7", "--out", &p("a.p3g")])?;
    run(&["gen", "--n", "800", "--d", "16", "--pipeline-friendly", "--colors", "400", "--seed", "7", "--out", &p("b.p3g")])?;
    let jobs: [(&str, Vec<&str>); 2] = [
        ("a.p3g", vec!["--colors", "13", "--seed", "11"]),
        ("b.p3g", vec!["--colors", "400", "--seed", "11", "--scale", "1e-6", "--force-pipeline"]),
    ];
    for (input, flags) in &jobs {
        let mut outputs = Vec::new();
        for rep in 0..10 {
            let out = p(&format!("{input}.{rep}.col"));
            let in_path = p(input);
            let mut args = vec!["color", "--input", &in_path, "--out", &out];
            args.extend(flags.iter().copied());
            run(&args)?;
            outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("{input}: outputs differ"))?;
    }
    Ok("fallback and pipeline colorings byte-identical over 10 runs".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("fallback correctness", criterion_fallback),
        ("equitable graph coloring", criterion_equitable),
        ("resampling engine", criterion_engine),
        ("pipeline path", criterion_pipeline),
        ("verifier oracle equivalence", criterion_verifier),
        ("complete 3-graph lower bound", criterion_lower_bound),
        ("command-line determinism", criterion_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("criterion {} [PASS] {name}: {detail} ({:.1?})", i + 1, start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("criterion {} [FAIL] {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
