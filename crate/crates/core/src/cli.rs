//! Command-line front end: one task per invocation, one JSON document out.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use num_bigint::BigInt;

use crate::enumerate::{enumerate_least_norm, enumerate_solutions, enumerate_sparse, PrecisionPair, Solution};
use crate::error::{Error, Result};
use crate::io::{load_problem, millis, parse_matrix, parse_rational, rational_string, BenchRow, D0Doc, OutputDoc, Timings};
use crate::pcp::{
    bezout_cap, classify_d0, copositive_solve, generate_benchmark, least_norm_representation, sparse_representation,
    univariate_representation_with, Family, HStrategy, PcpProblem, PipelineStats, ShapeRoute, UnivarRep,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Task {
    Solve,
    LeastNorm,
    Sparse,
    #[value(alias = "classify")]
    CheckD0,
    Copositive,
    Bench,
}

impl Task {
    fn name(self) -> &'static str {
        match self {
            Task::Solve => "solve",
            Task::LeastNorm => "least-norm",
            Task::Sparse => "sparse",
            Task::CheckD0 => "check-d0",
            Task::Copositive => "copositive",
            Task::Bench => "bench",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Random,
    Deterministic,
    Explicit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    P,
    Q,
}

/// Exact solver for polynomial complementarity problems.
#[derive(Clone, Debug, Parser)]
#[command(name = "pcp-univar", version)]
pub struct RunConfig {
    #[arg(long, value_enum)]
    pub task: Task,
    /// Problem file (TOML); not used by `bench`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Where to write the JSON document; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Root isolation width [default: 1e-10].
    #[arg(long)]
    pub gamma1: Option<String>,
    /// Merge distance and sign slack [default: 1e-6, bench 1e-4].
    #[arg(long)]
    pub gamma2: Option<String>,
    #[arg(long, value_enum, default_value = "random")]
    pub strategy: StrategyArg,
    /// Required by the random strategy and by `copositive`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// First `s` of the deterministic strategy.
    #[arg(long, default_value_t = 0)]
    pub s_start: u64,
    /// Matrix for the explicit strategy, one row per line.
    #[arg(long)]
    pub h_matrix: Option<PathBuf>,
    /// Use `H = M^-1` rather than `H = M`.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub invert_h: bool,
    /// Perturbation radius for `copositive`.
    #[arg(long, default_value = "1e-6")]
    pub eps: String,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub d: u32,
    /// Largest Bezout cap `2^n (d+1)^n` that `bench` accepts without `--force`.
    #[arg(long, default_value_t = 1024)]
    pub max_cap: u64,
    #[arg(long)]
    pub force: bool,
    #[arg(long)]
    pub verbose: bool,
}

/// Exit status and the document to write.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub doc: OutputDoc,
}

/// 2 for non-D0 input, 3 for bad input, 4 for a failed certificate, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotD0 { .. } => 2,
        Error::Parse { .. } | Error::Format(_) | Error::Io(_) | Error::Domain(_) => 3,
        Error::Certification(_) => 4,
        _ => 1,
    }
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    doc: OutputDoc,
    timings: Timings,
    started: Instant,
}

impl Ctx<'_> {
    fn log(&self, msg: impl AsRef<str>) {
        if self.cfg.verbose {
            eprintln!("[{:>8.3}s] {}", self.started.elapsed().as_secs_f64(), msg.as_ref());
        }
    }
}

fn input_error(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn precision(cfg: &RunConfig) -> Result<PrecisionPair> {
    let base = if cfg.task == Task::Bench { PrecisionPair::bench() } else { PrecisionPair::default() };
    let g1 = cfg.gamma1.as_deref().map(parse_rational).transpose()?.unwrap_or_else(|| base.gamma1().clone());
    let g2 = cfg.gamma2.as_deref().map(parse_rational).transpose()?.unwrap_or_else(|| base.gamma2().clone());
    PrecisionPair::new(g1, g2)
}

fn strategy(cfg: &RunConfig, n: usize) -> Result<HStrategy> {
    let mut s = match cfg.strategy {
        StrategyArg::Deterministic => HStrategy::deterministic(),
        StrategyArg::Random => HStrategy::random(cfg.seed.ok_or_else(|| input_error("--strategy random needs --seed"))?),
        StrategyArg::Explicit => {
            let path = cfg.h_matrix.as_ref().ok_or_else(|| input_error("--strategy explicit needs --h-matrix"))?;
            let m = parse_matrix(&std::fs::read_to_string(path)?)?;
            if m.rows() != 3 * n || m.cols() != 3 * n {
                return Err(input_error(format!("H must be {0}x{0} for n = {n}, got {1}x{2}", 3 * n, m.rows(), m.cols())));
            }
            HStrategy::explicit(m, cfg.invert_h)
        }
    };
    s.invert_convention = cfg.invert_h;
    s.s_start = cfg.s_start;
    Ok(s)
}

fn read_problem(cfg: &RunConfig) -> Result<PcpProblem> {
    let path = cfg.input.as_ref().ok_or_else(|| input_error(format!("--task {} needs --input", cfg.task.name())))?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(load_problem(&text)?.1)
}

/// Runs the D0 check and the representation; records stage timings.
fn represent(ctx: &mut Ctx, prob: &PcpProblem) -> Result<UnivarRep> {
    let check = classify_d0(prob)?;
    ctx.doc.d0 = Some(D0Doc { is_d0: check.is_d0, witness: check.witness.map(|i| prob.ring().names()[i].clone()) });
    if !check.is_d0 {
        let witness = check.witness.unwrap_or(0);
        return Err(Error::NotD0 { witness, name: prob.ring().names()[witness].clone() });
    }
    let strat = strategy(ctx.cfg, prob.n())?;
    ctx.log(format!("{}: n = {}, d = {}, D0", prob.name().unwrap_or("problem"), prob.n(), prob.degree()));
    let (rep, stats) = univariate_representation_with(prob, &strat, ShapeRoute::Quotient)?;
    record(ctx, &stats);
    ctx.log(format!("deg w = {}, {} attempt(s)", rep.deg_w(), stats.attempts));
    ctx.doc.set_rep(&rep);
    Ok(rep)
}

fn record(ctx: &mut Ctx, stats: &PipelineStats) {
    ctx.timings.groebner += stats.groebner_secs;
    ctx.timings.radical += stats.radical_secs;
    ctx.timings.shape += stats.shape_secs;
}

fn timed<T>(ctx: &mut Ctx, f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let t = Instant::now();
    let out = f()?;
    let secs = t.elapsed().as_secs_f64();
    ctx.timings.enumeration += secs;
    Ok((out, secs))
}

fn describe(sols: &[Solution]) -> String {
    sols.iter().map(|s| format!("({})", s.coordinates.join(", "))).collect::<Vec<_>>().join(" ")
}

fn execute(ctx: &mut Ctx) -> Result<()> {
    let cfg = ctx.cfg;
    let prec = precision(cfg)?;
    ctx.doc.gamma1 = Some(rational_string(prec.gamma1()));
    ctx.doc.gamma2 = Some(rational_string(prec.gamma2()));
    if cfg.task == Task::Bench {
        return bench(ctx, &prec);
    }
    let prob = read_problem(cfg)?;
    ctx.doc.problem = prob.name().map(str::to_string);
    ctx.doc.variables = prob.ring().names().to_vec();
    ctx.doc.n = prob.n();
    match cfg.task {
        Task::CheckD0 => {
            let check = classify_d0(&prob)?;
            let witness = check.witness.map(|i| prob.ring().names()[i].clone());
            ctx.doc.d0 = Some(D0Doc { is_d0: check.is_d0, witness: witness.clone() });
            ctx.doc.status = "solved".into();
            match witness {
                Some(x) if !check.is_d0 => {
                    ctx.doc.error = Some(format!("not D0: no pure power of {x} among the leading monomials"));
                    Err(Error::NotD0 { witness: check.witness.unwrap(), name: x })
                }
                _ => Ok(()),
            }
        }
        Task::Solve => {
            let rep = represent(ctx, &prob)?;
            let (sols, _) = timed(ctx, || enumerate_solutions(&prob, &rep, &prec))?;
            ctx.log(format!("{} solution(s): {}", sols.len(), describe(&sols)));
            ctx.doc.real_roots = Some(rep.real_root_count());
            ctx.doc.set_solutions(&sols);
            Ok(())
        }
        Task::LeastNorm => {
            let rep = least_norm_representation(&represent(ctx, &prob)?)?;
            ctx.doc.set_rep(&rep);
            let ((sols, value), _) = timed(ctx, || enumerate_least_norm(&prob, &rep, &prec))?;
            ctx.doc.least_norm = value.as_ref().map(rational_string);
            ctx.doc.set_solutions(&sols);
            Ok(())
        }
        Task::Sparse => {
            let rep = represent(ctx, &prob)?;
            match timed(ctx, || sparse_representation(&rep)) {
                Err(Error::NoSolutions) => {
                    ctx.doc.set_solutions(&[]);
                    Ok(())
                }
                Err(e) => Err(e),
                Ok((sp, _)) => {
                    ctx.doc.set_sparse(&sp);
                    let (sols, _) = timed(ctx, || enumerate_sparse(&prob, &sp, &prec))?;
                    ctx.doc.set_solutions(&sols);
                    Ok(())
                }
            }
        }
        Task::Copositive => {
            let eps = parse_rational(&cfg.eps)?;
            let seed = cfg.seed.ok_or_else(|| input_error("--task copositive needs --seed"))?;
            let strat = strategy(cfg, prob.n())?;
            let t = Instant::now();
            let (a, rep) = copositive_solve(&prob, &eps, seed, &strat)?;
            ctx.timings.shape += t.elapsed().as_secs_f64();
            ctx.doc.perturbation = Some(a.iter().map(rational_string).collect());
            ctx.doc.set_rep(&rep);
            let perturbed = prob.perturbed(&a)?;
            let (sols, _) = timed(ctx, || enumerate_solutions(&perturbed, &rep, &prec))?;
            ctx.doc.set_solutions(&sols);
            Ok(())
        }
        Task::Bench => unreachable!(),
    }
}

fn bench(ctx: &mut Ctx, prec: &PrecisionPair) -> Result<()> {
    let cfg = ctx.cfg;
    let family = match cfg.family.ok_or_else(|| input_error("--task bench needs --family"))? {
        FamilyArg::P => Family::P,
        FamilyArg::Q => Family::Q,
    };
    let n = cfg.n.ok_or_else(|| input_error("--task bench needs --n"))?;
    let cap = bezout_cap(n, cfg.d);
    if cap > BigInt::from(cfg.max_cap) && !cfg.force {
        return Err(input_error(format!("Bezout cap {cap} exceeds {}; pass --force to run anyway", cfg.max_cap)));
    }
    let prob = generate_benchmark(family, n, cfg.d)?;
    ctx.doc.problem = prob.name().map(str::to_string);
    ctx.doc.variables = prob.ring().names().to_vec();
    let t = Instant::now();
    let rep = least_norm_representation(&represent(ctx, &prob)?)?;
    let time_rep = t.elapsed().as_secs_f64();
    ctx.doc.set_rep(&rep);
    let (sols, time_sol) = timed(ctx, || enumerate_solutions(&prob, &rep, prec))?;
    ctx.log(format!("#Sol = {}", sols.len()));
    let ((ln, value), time_ln) = timed(ctx, || enumerate_least_norm(&prob, &rep, prec))?;
    ctx.log(format!("#Sol_ln = {}", ln.len()));
    let ((sp, sp_sols), time_sp) = timed(ctx, || {
        let sp = sparse_representation(&rep)?;
        let sols = enumerate_sparse(&prob, &sp, prec)?;
        Ok((sp, sols))
    })?;
    ctx.log(format!("#Sol_sp = {} (k = {})", sp_sols.len(), sp.k));
    ctx.doc.k = Some(sp.k);
    ctx.doc.omega = Some(sp.omega.iter().map(|l| l.iter().map(|i| i + 1).collect()).collect());
    ctx.doc.least_norm = value.as_ref().map(rational_string);
    ctx.doc.real_roots = Some(rep.real_root_count());
    ctx.doc.bench = Some(BenchRow {
        family: format!("{family:?}").to_lowercase(),
        n,
        d: cfg.d,
        deg_w: rep.deg_w(),
        real_roots: rep.real_root_count(),
        sol: sols.len(),
        sol_ln: ln.len(),
        sol_sp: sp_sols.len(),
        time_rep: millis(time_rep),
        time_sol: millis(time_sol),
        time_ln: millis(time_ln),
        time_sp: millis(time_sp),
    });
    ctx.doc.set_solutions(&sols);
    Ok(())
}

/// Executes one task. Never panics on bad input; the error lands in the document.
pub fn run(cfg: &RunConfig) -> Outcome {
    let mut ctx = Ctx {
        cfg,
        doc: OutputDoc { status: "error".into(), task: cfg.task.name().into(), ..Default::default() },
        timings: Timings::default(),
        started: Instant::now(),
    };
    let result = execute(&mut ctx);
    let code = match &result {
        Ok(()) => 0,
        Err(e) => {
            if cfg.task != Task::CheckD0 {
                ctx.doc.status = "error".into();
            }
            ctx.doc.error.get_or_insert_with(|| e.to_string());
            exit_code(e)
        }
    };
    let mut t = ctx.timings;
    t.total = ctx.started.elapsed().as_secs_f64();
    ctx.doc.timings = Some(Timings {
        groebner: millis(t.groebner),
        radical: millis(t.radical),
        shape: millis(t.shape),
        enumeration: millis(t.enumeration),
        total: millis(t.total),
    });
    Outcome { code, doc: ctx.doc }
}

/// One-line human summary for stderr.
pub fn summary(out: &Outcome) -> String {
    let d = &out.doc;
    if d.task == "check-d0" {
        if let Some(c) = &d.d0 {
            return match (&c.is_d0, &c.witness) {
                (true, _) => "D0".into(),
                (false, Some(x)) => format!("not D0 (witness {x})"),
                (false, None) => "not D0".into(),
            };
        }
    }
    if let Some(e) = &d.error {
        return format!("{}: {e}", d.status);
    }
    let mut s = format!("{}: {} solution(s)", d.status, d.solutions.len());
    if let Some(k) = d.deg_w {
        s += &format!(", deg w = {k}");
    }
    if let Some(b) = &d.bench {
        s += &format!(" | #Sol {} #Sol_ln {} #Sol_sp {}", b.sol, b.sol_ln, b.sol_sp);
    }
    s
}

/// Parses `args`, runs, writes the document, returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = run(&cfg);
    let text = out.doc.to_json() + "\n";
    match &cfg.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return 3;
            }
        }
        None => print!("{text}"),
    }
    eprintln!("{}", summary(&out));
    out.code
}
