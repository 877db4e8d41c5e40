use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hypercolor::pipeline::{color_equitably, PipelineConfig, Route};
use hypercolor::tools::{
    gen_bounded_degree, gen_complete, gen_pipeline_friendly, parse_coloring, parse_instance, run_bench,
    write_coloring, write_instance, ColorsRule,
};
use hypercolor::{verify_coloring, Coloring, ThreeGraph};

const EXIT_PRECONDITION: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_MALFORMED: u8 = 5;

#[derive(Parser)]
#[command(name = "hypercolor", version, about = "Equitable colorings of bounded-degree 3-graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Color an instance equitably.
    Color(ColorArgs),
    /// Check that a coloring is proper and equitable.
    Verify(VerifyArgs),
    /// Benchmark every instance in a directory and write a CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    /// Target number of triads (default n*d/3).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, conflicts_with = "pipeline_friendly")]
    complete: bool,
    #[arg(long)]
    pipeline_friendly: bool,
    /// Colors the friendly instance is sized for (default n/2).
    #[arg(long, requires = "pipeline_friendly")]
    colors: Option<usize>,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ColorArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    colors: usize,
    /// Constant scale; below 1 the pipeline is tried for every d >= 2.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, conflicts_with = "force_pipeline")]
    force_fallback: bool,
    #[arg(long)]
    force_pipeline: bool,
    #[arg(long)]
    max_retries: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    coloring: PathBuf,
    /// Number of colors; defaults to the `# r=` summary line, then to the
    /// largest color plus one.
    #[arg(long)]
    colors: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    dir: PathBuf,
    #[arg(long, default_value = "d+1")]
    colors_rule: ColorsRule,
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    #[arg(long)]
    csv: PathBuf,
}

struct Failure(u8, String);

type Outcome = Result<(), Failure>;

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(EXIT_MALFORMED, format!("{}: {e}", path.display())))
}

fn write(path: &PathBuf, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| Failure(1, format!("{}: {e}", path.display())))
}

fn load_instance(path: &PathBuf) -> Result<ThreeGraph, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure(EXIT_MALFORMED, format!("{}: {e}", path.display())))
}

fn gen(args: GenArgs) -> Outcome {
    if args.n < 3 {
        return Err(Failure(EXIT_PRECONDITION, "need n >= 3".into()));
    }
    let h = if args.complete {
        gen_complete(args.n)
    } else if args.pipeline_friendly {
        let r = args.colors.unwrap_or(args.n / 2).max(1);
        let cfg = PipelineConfig::desk(args.n, r, args.d);
        if args.n < 2 * cfg.a + 4 || args.d < cfg.a {
            return Err(Failure(EXIT_PRECONDITION, "instance too small for the requested degree".into()));
        }
        gen_pipeline_friendly(&cfg, args.seed)
    } else {
        if args.d == 0 {
            return Err(Failure(EXIT_PRECONDITION, "need d >= 1".into()));
        }
        let m = args.m.unwrap_or(args.n * args.d / 3);
        let h = gen_bounded_degree(args.n, args.d, m, args.seed);
        if h.num_triads() < m {
            eprintln!("requested {m} triads, generated {}", h.num_triads());
        }
        h
    };
    write(&args.out, &write_instance(&h))
}

fn color(args: ColorArgs) -> Outcome {
    if !(args.scale > 0.0 && args.scale <= 1.0) {
        return Err(Failure(EXIT_PRECONDITION, "scale must lie in (0, 1]".into()));
    }
    let h = load_instance(&args.input)?;
    let mut cfg = PipelineConfig::for_instance(&h, args.colors, args.scale).with_seed(args.seed);
    if args.scale < 1.0 {
        cfg.d_gate = 2;
    }
    if args.force_fallback {
        cfg.route = Route::ForceFallback;
    } else if args.force_pipeline {
        cfg.route = Route::ForcePipeline;
    }
    if let Some(k) = args.max_retries {
        cfg.max_retries = k;
    }
    let out = color_equitably(&h, &cfg).map_err(|e| Failure(e.exit_code() as u8, e.to_string()))?;
    write(&args.out, &write_coloring(&out.coloring))
}

fn declared_colors(text: &str) -> Option<usize> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix("# r="))
        .find_map(|rest| rest.split_whitespace().next()?.parse().ok())
}

fn verify(args: VerifyArgs) -> Outcome {
    let h = load_instance(&args.input)?;
    let text = read(&args.coloring)?;
    let colors = parse_coloring(&text).map_err(|e| Failure(EXIT_MALFORMED, format!("{}: {e}", args.coloring.display())))?;
    if colors.len() != h.n() {
        return Err(Failure(EXIT_MALFORMED, format!("expected {} colors, found {}", h.n(), colors.len())));
    }
    let r = args
        .colors
        .or_else(|| declared_colors(&text))
        .unwrap_or_else(|| colors.iter().max().map_or(1, |&c| c + 1));
    let c = Coloring::new(r, colors).map_err(|e| Failure(EXIT_MALFORMED, e.to_string()))?;
    let verdict = verify_coloring(&h, &c).map_err(|e| Failure(EXIT_MALFORMED, e.to_string()))?;
    match verdict.witness() {
        None => {
            println!("pass: proper and equitable with {r} colors");
            Ok(())
        }
        Some(w) => Err(Failure(EXIT_VERIFY, format!("fail: {w}"))),
    }
}

fn bench(args: BenchArgs) -> Outcome {
    let file = std::fs::File::create(&args.csv).map_err(|e| Failure(1, format!("{}: {e}", args.csv.display())))?;
    let rows = run_bench(&args.dir, args.colors_rule, args.scale, args.seeds, file)
        .map_err(|e| Failure(EXIT_MALFORMED, e.to_string()))?;
    let failed = rows.iter().filter(|r| r.verdict != "pass").count();
    println!("{} runs, {failed} not passing", rows.len());
    if failed > 0 {
        return Err(Failure(EXIT_VERIFY, format!("{failed} runs did not pass")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Color(a) => color(a),
        Command::Verify(a) => verify(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
