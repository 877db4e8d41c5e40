//! Benchmark harness: colors every instance of a directory under several
//! seeds and records one CSV row per run.

use std::path::{Path as FsPath, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::model::ThreeGraph;
use crate::pipeline::{color_equitably, PipelineConfig, PipelineError, Route};

use super::io::{parse_instance, ParseError};

/// How the number of colors is chosen per instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorsRule {
    /// `r = d + 1`.
    DegreePlusOne,
    Fixed(usize),
}

impl ColorsRule {
    pub fn colors(self, d: usize) -> usize {
        match self {
            ColorsRule::DegreePlusOne => d + 1,
            ColorsRule::Fixed(r) => r,
        }
    }
}

impl std::str::FromStr for ColorsRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "d+1" {
            return Ok(ColorsRule::DegreePlusOne);
        }
        s.strip_prefix("fixed:")
            .and_then(|r| r.parse().ok())
            .filter(|&r: &usize| r > 0)
            .map(ColorsRule::Fixed)
            .ok_or_else(|| format!("expected `d+1` or `fixed:R`, got `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub r: usize,
    pub sigma: f64,
    pub path: String,
    pub resamples_phase1: u64,
    pub resamples_phase2: u64,
    pub wall_ms: f64,
    pub verdict: String,
}

pub const BENCH_HEADER: &str =
    "instance,seed,n,m,d,r,sigma,path,resamples_phase1,resamples_phase2,wall_ms,verdict";

/// Runs one instance; errors become a row whose verdict names the error.
pub fn bench_instance(id: &str, h: &ThreeGraph, rule: ColorsRule, sigma: f64, seed: u64, route: Route) -> BenchRow {
    let d = h.max_degree();
    let r = rule.colors(d);
    let cfg = PipelineConfig::for_instance(h, r, sigma).with_seed(seed).with_route(route);
    let start = Instant::now();
    let result = color_equitably(h, &cfg);
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let (path, (p1, p2), verdict) = match &result {
        Ok(out) => (out.path.to_string(), out.resamples(), "pass".to_string()),
        Err(e) => ("none".to_string(), (0, 0), verdict_for(e)),
    };
    BenchRow {
        instance: id.to_string(),
        seed,
        n: h.n(),
        m: h.num_triads(),
        d,
        r,
        sigma,
        path,
        resamples_phase1: p1,
        resamples_phase2: p2,
        wall_ms,
        verdict,
    }
}

fn verdict_for(e: &PipelineError) -> String {
    match e {
        PipelineError::Verification(_) => "fail".into(),
        PipelineError::Precondition(_) => "precondition".into(),
        _ => "error".into(),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Instance files of `dir` in name order.
pub fn instance_files(dir: &FsPath) -> Result<Vec<PathBuf>, BenchError> {
    let io = |source| BenchError::Io { path: dir.to_path_buf(), source };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    Ok(files)
}

/// Benchmarks every file of `dir` for seeds `0..seeds` and writes the CSV.
pub fn run_bench<W: std::io::Write>(
    dir: &FsPath,
    rule: ColorsRule,
    sigma: f64,
    seeds: u64,
    out: W,
) -> Result<Vec<BenchRow>, BenchError> {
    let mut rows = Vec::new();
    for path in instance_files(dir)? {
        let text = std::fs::read_to_string(&path).map_err(|source| BenchError::Io { path: path.clone(), source })?;
        let h = parse_instance(&text).map_err(|source| BenchError::Parse { path: path.clone(), source })?;
        let id = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
        for seed in 0..seeds {
            rows.push(bench_instance(&id, &h, rule, sigma, seed, Route::Auto));
        }
    }
    let mut writer = csv::Writer::from_writer(out);
    if rows.is_empty() {
        writer.write_record(BENCH_HEADER.split(','))?;
    }
    for row in &rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(|source| BenchError::Io { path: dir.to_path_buf(), source })?;
    Ok(rows)
}
