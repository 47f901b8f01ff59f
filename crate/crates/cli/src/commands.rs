use std::fmt::Display;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use volsel_core::eptas::{
    eptas_solve, run_suite, EptasConfig, FallbackPolicy, LemmaReport, LemmaSuite,
};
use volsel_core::exact::subsets_up_to;
use volsel_core::hardness::{
    check_m, embed_instance, lemma_reduction1, verify_reduction, HardnessReport, Reduction1Check,
    ReductionReport, TriGridVertexSet,
};
use volsel_core::io::{parse_points, write_points};
use volsel_core::{
    generate, hv_estimate, hv_inclusion_exclusion, hv_sweep, volsel_exact_2d, volsel_greedy,
    BruteForce, Coord, Mode, PointSet, Solution,
};

use crate::args::{
    Algo, BenchArgs, Cli, Command, Engine, Fallback, GenCommand, HvArgs, ModeArg, SolveArgs,
    SolverOptions, VerifyCommand,
};
use crate::error::{CliError, Result};
use crate::record::{BenchRow, EptasDetails, HvRecord, IntoVolume, RunRecord, SCHEMA_VERSION};

/// Text to emit and whether every check in it passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let ctx = Context {
        seed: cli.seed,
        mode: cli.mode,
        timing: !cli.no_timing,
    };
    match &cli.command {
        Command::Gen(GenCommand::Random { n, d, spread }) => {
            gen_random(&ctx, *n, *d, *spread).map(Outcome::ok)
        }
        Command::Gen(GenCommand::Hardness {
            gamma_vertices,
            ell,
        }) => gen_hardness(cli.output.as_deref(), gamma_vertices, *ell).map(Outcome::ok),
        Command::Hv(args) => hv(&ctx, args).map(Outcome::ok),
        Command::Solve(args) => solve(&ctx, args).map(Outcome::ok),
        Command::Bench(args) => bench(&ctx, args).map(Outcome::ok),
        Command::Verify(VerifyCommand::Hardness {
            m,
            gamma_vertices,
            ell,
            trials,
            budget,
        }) => match (m, gamma_vertices, ell) {
            (Some(m), _, _) => verify_gadget(&ctx, *m, *trials),
            (None, Some(path), Some(ell)) => verify_instance(path, *ell, *budget),
            _ => Err(CliError::Usage(
                "verify hardness needs --m or --gamma-vertices with --ell".into(),
            )),
        },
        Command::Verify(VerifyCommand::Lemmas { which, trials, eps }) => {
            verify_lemmas(&ctx, which, *trials, *eps)
        }
    }
}

/// Writes `text` to `path`, or to stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

struct Context {
    seed: u64,
    mode: ModeArg,
    timing: bool,
}

impl Context {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn elapsed(&self, start: Instant) -> u64 {
        if self.timing {
            start.elapsed().as_millis() as u64
        } else {
            0
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load<T: Coord + FromStr>(path: &Path) -> Result<PointSet<T>> {
    Ok(parse_points(&read_file(path)?)?)
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn gen_random(ctx: &Context, n: usize, d: usize, spread: f64) -> Result<String> {
    let mut rng = ctx.rng();
    let header = format!(
        "volsel random n={n} d={d} spread={spread} seed={} mode={}",
        ctx.seed,
        mode_of(ctx.mode)
    );
    match ctx.mode {
        ModeArg::Float => {
            let set = generate::log_uniform(&mut rng, n, d, spread)?;
            Ok(write_points(&set, Some(&header)))
        }
        ModeArg::Exact => {
            if spread.fract() != 0.0 || spread > 1e15 {
                return Err(CliError::Usage(format!(
                    "exact mode needs an integer spread up to 1e15, got {spread}"
                )));
            }
            let set = generate::log_uniform_int(&mut rng, n, d, spread as i64)?;
            Ok(write_points(&set, Some(&header)))
        }
    }
}

fn gen_hardness(output: Option<&Path>, vertices: &Path, ell: usize) -> Result<String> {
    let output = output.ok_or_else(|| {
        CliError::Usage("gen hardness needs --output for the points and the sidecar".into())
    })?;
    let sidecar_path = output.with_extension("json");
    if sidecar_path == output {
        return Err(CliError::Usage(
            "--output must not end in .json; the sidecar takes that name".into(),
        ));
    }
    let a = TriGridVertexSet::parse(&read_file(vertices)?, ell)?;
    let inst = embed_instance(&a)?;
    write_file(&sidecar_path, &json(&inst.sidecar())?)?;
    let header = format!("volsel hardness m={} k={} ell={}", inst.m, inst.k, inst.ell);
    Ok(write_points(&inst.points, Some(&header)))
}

fn mode_of(mode: ModeArg) -> Mode {
    match mode {
        ModeArg::Float => Mode::Float,
        ModeArg::Exact => Mode::Exact,
    }
}

fn hv(ctx: &Context, args: &HvArgs) -> Result<String> {
    match ctx.mode {
        ModeArg::Float => hv_on(ctx, args, &load::<f64>(&args.file)?),
        ModeArg::Exact => hv_on(ctx, args, &load::<i64>(&args.file)?),
    }
}

fn hv_on<T: Coord>(ctx: &Context, args: &HvArgs, set: &PointSet<T>) -> Result<String>
where
    T::Volume: IntoVolume,
{
    let points = match &args.indices {
        Some(idx) => {
            if let Some(&bad) = idx.iter().find(|&&i| i >= set.len()) {
                return Err(CliError::Usage(format!(
                    "index {bad} out of range for {} points",
                    set.len()
                )));
            }
            set.select(idx)
        }
        None => set.refs(),
    };
    let start = Instant::now();
    let (engine, value, eps, delta) = match args.engine {
        Engine::Sweep => ("sweep", hv_sweep(&points).into_volume(), None, None),
        Engine::Ie => (
            "ie",
            hv_inclusion_exclusion(&points)?.into_volume(),
            None,
            None,
        ),
        Engine::Mc => {
            let floats: Vec<Vec<f64>> = points
                .iter()
                .map(|p| p.iter().map(|c| c.to_f64()).collect())
                .collect();
            let views: Vec<&[f64]> = floats.iter().map(Vec::as_slice).collect();
            let v = hv_estimate(&views, args.eps, args.delta, &mut ctx.rng())?;
            ("mc", v.into_volume(), Some(args.eps), Some(args.delta))
        }
    };
    json(&HvRecord {
        schema_version: SCHEMA_VERSION,
        engine: engine.into(),
        mode: T::MODE,
        n: points.len(),
        d: set.dim(),
        value,
        eps,
        delta,
        elapsed_ms: ctx.elapsed(start),
        seed: ctx.seed,
    })
}

fn common_solve<T: Coord>(
    set: &PointSet<T>,
    algo: Algo,
    k: usize,
    opts: &SolverOptions,
) -> Result<Solution<T::Volume>> {
    Ok(match algo {
        Algo::Brute => BruteForce {
            budget: opts.budget,
        }
        .solve(set, k)?,
        Algo::Exact2d => volsel_exact_2d(set, k)?,
        Algo::Greedy => volsel_greedy(set, k)?,
        Algo::Eptas => unreachable!("handled by the float path"),
    })
}

fn solve_float(
    ctx: &Context,
    set: &PointSet<f64>,
    algo: Algo,
    k: usize,
    opts: &SolverOptions,
) -> Result<RunRecord> {
    let start = Instant::now();
    if algo != Algo::Eptas {
        let sol = common_solve(set, algo, k, opts)?;
        let mut rec = RunRecord::new(sol, Mode::Float, set.len(), set.dim(), k, ctx.seed);
        rec.elapsed_ms = ctx.elapsed(start);
        return Ok(rec);
    }
    let eps = opts
        .eps
        .ok_or_else(|| CliError::Usage("--algo eptas needs --eps".into()))?;
    let config = EptasConfig {
        cell_cap: opts.cell_cap,
        fallback: match opts.fallback {
            Fallback::Error => FallbackPolicy::Error,
            Fallback::Greedy => FallbackPolicy::Greedy,
        },
        ..EptasConfig::default()
    };
    let r = eptas_solve(set, k, eps, &config)?;
    let mut rec = RunRecord::new(r.solution, Mode::Float, set.len(), set.dim(), k, ctx.seed);
    rec.elapsed_ms = ctx.elapsed(start);
    rec.eps = Some(eps);
    rec.fallback_events = Some(r.fallback_events);
    rec.eptas = Some(EptasDetails {
        chosen_offset: r.chosen_offset,
        reported_value: r.reported_value,
        internal_eps: r.internal_eps,
        tau: r.tau,
        lambda_exp: r.lambda_exp,
        offsets_evaluated: r.offsets_evaluated,
    });
    Ok(rec)
}

fn solve_exact(
    ctx: &Context,
    set: &PointSet<i64>,
    algo: Algo,
    k: usize,
    opts: &SolverOptions,
) -> Result<RunRecord> {
    if algo == Algo::Eptas {
        return Err(CliError::Usage("--algo eptas needs --mode float".into()));
    }
    let start = Instant::now();
    let sol = common_solve(set, algo, k, opts)?;
    let mut rec = RunRecord::new(sol, Mode::Exact, set.len(), set.dim(), k, ctx.seed);
    rec.elapsed_ms = ctx.elapsed(start);
    Ok(rec)
}

enum Loaded {
    Float(PointSet<f64>),
    Exact(PointSet<i64>),
}

impl Loaded {
    fn read(ctx: &Context, path: &Path) -> Result<Self> {
        Ok(match ctx.mode {
            ModeArg::Float => Loaded::Float(load(path)?),
            ModeArg::Exact => Loaded::Exact(load(path)?),
        })
    }

    fn len(&self) -> usize {
        match self {
            Loaded::Float(s) => s.len(),
            Loaded::Exact(s) => s.len(),
        }
    }

    fn solve(
        &self,
        ctx: &Context,
        algo: Algo,
        k: usize,
        opts: &SolverOptions,
    ) -> Result<RunRecord> {
        match self {
            Loaded::Float(s) => solve_float(ctx, s, algo, k, opts),
            Loaded::Exact(s) => solve_exact(ctx, s, algo, k, opts),
        }
    }
}

fn solve(ctx: &Context, args: &SolveArgs) -> Result<String> {
    let set = Loaded::read(ctx, &args.file)?;
    json(&set.solve(ctx, args.algo, args.k, &args.options)?)
}

fn bench(ctx: &Context, args: &BenchArgs) -> Result<String> {
    if args.algos.is_empty() || args.k.is_empty() {
        return Err(CliError::Usage(
            "bench needs at least one algorithm and one k".into(),
        ));
    }
    let mut out = csv::Writer::from_writer(Vec::new());
    for file in &args.files {
        let set = Loaded::read(ctx, file)?;
        for &k in &args.k {
            let mut records = Vec::new();
            for &algo in &args.algos {
                if algo == Algo::Brute && subsets_up_to(set.len(), k) > args.options.budget {
                    continue;
                }
                records.push(set.solve(ctx, algo, k, &args.options)?);
            }
            let best = records.iter().map(|r| r.value.as_f64()).fold(0.0, f64::max);
            for r in records {
                let value = r.value.as_f64();
                out.serialize(BenchRow {
                    schema_version: SCHEMA_VERSION,
                    file: file.display().to_string(),
                    algorithm: r.algorithm,
                    mode: r.mode,
                    n: r.n,
                    d: r.d,
                    k,
                    eps: r.eps,
                    value,
                    indices: join(&r.indices),
                    elapsed_ms: r.elapsed_ms,
                    seed: r.seed,
                    guarantee: r.guarantee.to_string(),
                    fallback_events: r.fallback_events,
                    ratio: if best > 0.0 { value / best } else { 1.0 },
                })?;
            }
        }
    }
    let bytes = out
        .into_inner()
        .map_err(|e| CliError::Usage(format!("flushing CSV: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

fn join<T: Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct GadgetVerification {
    schema_version: u32,
    kind: &'static str,
    seed: u64,
    report: HardnessReport,
    reduction1: Vec<Reduction1Check>,
    passed: bool,
}

fn verify_gadget(ctx: &Context, m: usize, trials: usize) -> Result<Outcome> {
    let report = check_m(m)?;
    let reduction1 = if m >= 4 {
        lemma_reduction1(m, trials, &mut ctx.rng())?
    } else {
        Vec::new()
    };
    let passed = report.passed && reduction1.iter().all(|c| c.holds);
    let text = json(&GadgetVerification {
        schema_version: SCHEMA_VERSION,
        kind: "hardness",
        seed: ctx.seed,
        report,
        reduction1,
        passed,
    })?;
    Ok(Outcome { text, passed })
}

#[derive(Serialize)]
struct InstanceVerification {
    schema_version: u32,
    kind: &'static str,
    report: ReductionReport,
    passed: bool,
}

fn verify_instance(path: &Path, ell: usize, budget: u128) -> Result<Outcome> {
    let a = TriGridVertexSet::parse(&read_file(path)?, ell)?;
    let inst = embed_instance(&a)?;
    let report = verify_reduction(&inst, budget)?;
    let passed = report.agree;
    let text = json(&InstanceVerification {
        schema_version: SCHEMA_VERSION,
        kind: "reduction",
        report,
        passed,
    })?;
    Ok(Outcome { text, passed })
}

#[derive(Serialize)]
struct SuiteSummary {
    suite: LemmaSuite,
    trials: usize,
    passes: usize,
    passed: bool,
    checks: Vec<volsel_core::eptas::LemmaCheck>,
}

#[derive(Serialize)]
struct LemmaVerification {
    schema_version: u32,
    kind: &'static str,
    eps: f64,
    seed: u64,
    suites: Vec<SuiteSummary>,
    passed: bool,
}

fn verify_lemmas(ctx: &Context, which: &str, trials: usize, eps: f64) -> Result<Outcome> {
    let suites: Vec<LemmaSuite> = if which == "all" {
        LemmaSuite::ALL.to_vec()
    } else {
        vec![which.parse()?]
    };
    let reports: Vec<LemmaReport> = suites
        .into_iter()
        .map(|s| run_suite(s, trials, ctx.seed, eps))
        .collect::<volsel_core::Result<_>>()?;
    let summaries: Vec<SuiteSummary> = reports
        .into_iter()
        .map(|r| SuiteSummary {
            suite: r.suite,
            trials,
            passes: r.passes(),
            passed: r.passed(),
            checks: r.checks,
        })
        .collect();
    let passed = summaries.iter().all(|s| s.passed);
    let text = json(&LemmaVerification {
        schema_version: SCHEMA_VERSION,
        kind: "lemmas",
        eps,
        seed: ctx.seed,
        suites: summaries,
        passed,
    })?;
    Ok(Outcome { text, passed })
}
