//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
//! Stretch instances run only when `PCP_STRETCH` is set.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use pcp_univar::enumerate::{enumerate_least_norm, enumerate_solutions, enumerate_sparse, PrecisionPair, Solution};
use pcp_univar::pcp::{
    bezout_cap, classify_d0, copositive_solve_with, generate_benchmark, least_norm_representation, sparse_representation,
    univariate_representation, Family, HStrategy, PcpProblem, UnivarRep,
};
use pcp_univar::poly::{MPoly, MonomialOrder};
use pcp_univar::univar::{isolate_real_roots, squarefree_part, UPoly};
use pcp_univar::{Error, Rational};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A solved instance, kept for the bound and certificate criteria.
struct Record {
    name: String,
    n: usize,
    d: u32,
    deg_w: usize,
    real_roots: usize,
    sols: usize,
    p_family: bool,
}

#[derive(Default)]
struct State {
    records: Vec<Record>,
    reported: Vec<(String, PcpProblem, Solution, Rational)>,
}

impl State {
    fn record(&mut self, name: &str, prob: &PcpProblem, rep: &UnivarRep, sols: &[Solution], p_family: bool) {
        self.records.push(Record {
            name: name.into(),
            n: prob.n(),
            d: prob.degree(),
            deg_w: rep.deg_w(),
            real_roots: rep.real_root_count(),
            sols: sols.len(),
            p_family,
        });
    }

    fn reported(&mut self, name: &str, prob: &PcpProblem, sols: &[Solution], prec: &PrecisionPair) {
        for s in sols {
            self.reported.push((name.into(), prob.clone(), s.clone(), prec.gamma2().clone()));
        }
    }
}

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Duration, budget_secs: u64, what: &str) -> std::result::Result<(), String> {
    ensure(t.as_secs_f64() < budget_secs as f64, || format!("{what} took {:.1}s, budget {budget_secs}s", t.as_secs_f64()))
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Runs all three tasks on one instance: counts of all, least-norm and sparse solutions.
fn full_run(state: &mut State, prob: &PcpProblem, strat: &HStrategy, prec: &PrecisionPair, p_family: bool) -> std::result::Result<(UnivarRep, usize, usize, usize), String> {
    let name = prob.name().unwrap_or("problem").to_string();
    let rep = univariate_representation(prob, strat).map_err(err)?;
    let sols = enumerate_solutions(prob, &rep, prec).map_err(err)?;
    let ln_rep = least_norm_representation(&rep).map_err(err)?;
    let (ln, _) = enumerate_least_norm(prob, &ln_rep, prec).map_err(err)?;
    let sp = match sparse_representation(&rep) {
        Ok(sp) => enumerate_sparse(prob, &sp, prec).map_err(err)?,
        Err(Error::NoSolutions) => Vec::new(),
        Err(e) => return Err(err(e)),
    };
    state.record(&name, prob, &rep, &sols, p_family);
    state.reported(&name, prob, &sols, prec);
    state.reported(&name, prob, &ln, prec);
    state.reported(&name, prob, &sp, prec);
    Ok((rep, sols.len(), ln.len(), sp.len()))
}

fn ramp(state: &mut State) -> Outcome {
    let t = Instant::now();
    let (prob, strat) = common::ramp();
    let rep = univariate_representation(&prob, &strat).map_err(err)?;
    let expected = upoly(&[0, -11616, -5324, -11228, -5247, 392, 78, 4, 1]);
    ensure(rep.w == expected, || format!("w = {}", rep.w))?;
    let roots = isolate_real_roots(&squarefree_part(&rep.w).map_err(err)?, &q(1, 1000)).map_err(err)?;
    let exact: Vec<Rational> = roots.iter().filter(|r| r.is_exact()).map(|r| r.as_interval().lo).collect();
    ensure(exact == [int(-8), int(-2), int(0), int(6)], || format!("real roots {roots:?}"))?;
    ensure(rep.v[0] == rep.v[1], || "v2 != v1".into())?;
    let prec = PrecisionPair::default();
    let sols = enumerate_solutions(&prob, &rep, &prec).map_err(err)?;
    ensure(sols.len() == 1, || format!("{} solutions", sols.len()))?;
    let one = int(1);
    ensure(sols[0].values.iter().all(|x| (x - &one).abs() <= q(1, 1_000_000)), || format!("solution {:?}", sols[0].coordinates))?;
    state.record("ramp", &prob, &rep, &sols, false);
    state.reported("ramp", &prob, &sols, &prec);
    within(t.elapsed(), 10, "ramp case")?;
    Ok(format!("w exact, roots -8 -2 0 6, v2 = v1, Sol = {{(1, 1)}}, {:.2}s", t.elapsed().as_secs_f64()))
}

fn table_row(state: &mut State, family: Family, n: usize, d: u32, expect: (usize, usize, usize, usize), p_family: bool) -> std::result::Result<String, String> {
    let t = Instant::now();
    let prob = generate_benchmark(family, n, d).map_err(err)?;
    let (rep, s, ln, sp) = full_run(state, &prob, &HStrategy::random(2024), &PrecisionPair::bench(), p_family)?;
    let got = (rep.deg_w(), s, ln, sp);
    ensure(got == expect, || format!("{}: (deg w, #Sol, #Sol_ln, #Sol_sp) = {got:?}, expected {expect:?}", prob.name().unwrap()))?;
    Ok(format!("{} {:?} {:.1}s", prob.name().unwrap(), got, t.elapsed().as_secs_f64()))
}

fn bench_p(state: &mut State) -> Outcome {
    let t = Instant::now();
    let row = table_row(state, Family::P, 2, 2, (36, 9, 1, 1), true)?;
    within(t.elapsed(), 300, "p n=2 d=2")?;
    Ok(row)
}

fn bench_q(state: &mut State) -> Outcome {
    let t = Instant::now();
    let a = table_row(state, Family::Q, 1, 2, (6, 3, 1, 1), false)?;
    let b = table_row(state, Family::Q, 2, 2, (36, 9, 1, 1), false)?;
    within(t.elapsed(), 300, "q rows")?;
    Ok(format!("{a}; {b}"))
}

fn copositive(state: &mut State) -> Outcome {
    let t = Instant::now();
    let prob = problem(&["x1", "x2"], &["x1^2 + x2^2 - 1", "x1^2 + x2^2 - 1"]);
    ensure(!classify_d0(&prob).map_err(err)?.is_d0, || "unperturbed circle should not be D0".into())?;
    let a = [q(1, 1_000_000), q(1, 100_000)];
    let rep = copositive_solve_with(&prob, &a, &HStrategy::random(7)).map_err(err)?;
    let perturbed = prob.perturbed(&a).map_err(err)?;
    let prec = PrecisionPair::default();
    let sols = enumerate_solutions(&perturbed, &rep, &prec).map_err(err)?;
    ensure(sols.len() == 1, || format!("{} solutions", sols.len()))?;
    let s = &sols[0];
    let near = (&s.values[0] - int(1)).abs() < q(1, 1000) && s.values[1].abs() < q(1, 1000);
    ensure(near, || format!("solution {:?}", s.coordinates))?;
    state.record("circle+a", &perturbed, &rep, &sols, false);
    state.reported("circle+a", &perturbed, &sols, &prec);
    within(t.elapsed(), 60, "copositive example")?;
    Ok(format!("one solution ({}, {}), {:.2}s", s.coordinates[0], s.coordinates[1], t.elapsed().as_secs_f64()))
}

/// Small extra instances so the bound suite covers several `(n, d)`.
fn extra_instances(state: &mut State) -> std::result::Result<(), String> {
    for (n, d) in [(1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (2, 1)] {
        let prob = generate_benchmark(Family::P, n, d).map_err(err)?;
        full_run(state, &prob, &HStrategy::deterministic(), &PrecisionPair::bench(), true)?;
    }
    let prob = problem(&["x1", "x2"], &["x1^2 - 3*x1 + 1", "x2 - x1"]).with_name("mixed");
    full_run(state, &prob, &HStrategy::random(3), &PrecisionPair::default(), false)?;
    Ok(())
}

fn bounds(state: &mut State) -> Outcome {
    extra_instances(state)?;
    for r in &state.records {
        let cap = bezout_cap(r.n, r.d.max(1));
        ensure(BigInt::from(r.deg_w) <= cap, || format!("{}: deg w {} > cap {cap}", r.name, r.deg_w))?;
        ensure(r.real_roots <= (1usize << r.n) * r.sols, || format!("{}: {} real roots > 2^n * {}", r.name, r.real_roots, r.sols))?;
        if r.p_family {
            let expect = (r.d as usize + 1).pow(r.n as u32);
            ensure(r.sols == expect, || format!("{}: #Sol {} != (d+1)^n = {expect}", r.name, r.sols))?;
        }
    }
    Ok(format!("{} solved instances checked", state.records.len()))
}

/// Brute force for `n = 1`: roots of `x f(x)` that are >= 0 with `f >= 0`.
fn oracle(f: &UPoly) -> Vec<Rational> {
    let mut out = Vec::new();
    if f.eval(&int(0)) >= int(0) {
        out.push(int(0));
    }
    if f.degree().unwrap_or(0) > 0 {
        let s = squarefree_part(f).unwrap();
        for r in isolate_real_roots(&s, &q(1, 1 << 40)).unwrap() {
            let m = r.midpoint();
            if m.is_positive() && !r.as_interval().contains(&int(0)) {
                out.push(m);
            }
        }
    }
    out
}

fn close(a: &[Rational], b: &[Rational]) -> bool {
    let tol = q(1, 1_000_000);
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn oracle_n1(state: &mut State) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let prec = PrecisionPair::default();
    let mut tested = 0;
    let mut draws = 0;
    while tested < 50 {
        draws += 1;
        let deg = rng.gen_range(0..=3usize);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-4i64..=4)).collect();
        let f = upoly(&coeffs);
        let ring = ring(1, MonomialOrder::lex(1));
        let fm: MPoly = if f.is_zero() { MPoly::zero(&ring) } else { f.to_mpoly(&ring, 0) };
        let prob = PcpProblem::new(vec![fm]).map_err(err)?.with_name(format!("oracle{tested}"));
        if !classify_d0(&prob).map_err(err)?.is_d0 {
            continue;
        }
        let want = oracle(&f);
        let (rep, ..) = full_run(state, &prob, &HStrategy::random(draws), &prec, false)?;
        let sols = enumerate_solutions(&prob, &rep, &prec).map_err(err)?;
        let mut got: Vec<Rational> = sols.iter().map(|s| s.values[0].clone()).collect();
        got.sort();
        ensure(close(&got, &want), || format!("f = {f}: got {got:?}, oracle {want:?}"))?;

        let ln_rep = least_norm_representation(&rep).map_err(err)?;
        let (ln, _) = enumerate_least_norm(&prob, &ln_rep, &prec).map_err(err)?;
        let ln: Vec<Rational> = ln.iter().map(|s| s.values[0].clone()).collect();
        let want_ln: Vec<Rational> = want.iter().min().cloned().into_iter().collect();
        ensure(close(&ln, &want_ln), || format!("f = {f}: least-norm {ln:?}, oracle {want_ln:?}"))?;

        let sp: Vec<Rational> = match sparse_representation(&rep) {
            Ok(s) => enumerate_sparse(&prob, &s, &prec).map_err(err)?.iter().map(|s| s.values[0].clone()).collect(),
            Err(Error::NoSolutions) => Vec::new(),
            Err(e) => return Err(err(e)),
        };
        let want_sp = if want.first().is_some_and(Zero::is_zero) { vec![int(0)] } else { want.clone() };
        ensure(close(&sp, &want_sp), || format!("f = {f}: sparse {sp:?}, oracle {want_sp:?}"))?;
        tested += 1;
    }
    Ok(format!("50 problems ({draws} draws) agree with the oracle, including least-norm and sparse"))
}

fn runner(seed: u64) -> TestRunner {
    TestRunner::new(Config { cases: 256, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() })
}

fn prop<S: Strategy>(name: &str, seed: u64, strategy: S, f: impl Fn(S::Value) -> Check) -> std::result::Result<(), String> {
    runner(seed)
        .run(&strategy, |v| f(v).map_err(TestCaseError::fail))
        .map_err(|e| format!("{name}: {e}"))
}

fn algebra(_: &mut State) -> Outcome {
    let terms = |nvars: usize, max_exp: u32| prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -6i64..=6), 1..=3);
    prop("buchberger", 1, (2usize..=3, prop::collection::vec(terms(3, 1), 2..=3), any::<bool>(), 0usize..3), |(nvars, gens, lex, rot)| {
        let order = if lex { MonomialOrder::lex(nvars) } else { MonomialOrder::grevlex(nvars) };
        let r = ring(nvars, order.clone());
        let gens: Vec<MPoly> = gens
            .iter()
            .map(|t| {
                let t: Vec<(Vec<u32>, i64)> =
                    t.iter().map(|(e, c)| (if nvars == 2 { vec![e[0] + e[2], e[1] + e[2]] } else { e.clone() }, *c)).collect();
                mpoly(&r, &t)
            })
            .filter(|p| !p.is_zero())
            .collect();
        if gens.is_empty() {
            return Ok(());
        }
        check_groebner(&gens, &order, rot)
    })?;
    prop("radical", 2, (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3), |(a, b, c, d, e)| check_radical(&zero_dim_pair(a, b, c, d, e)))?;
    let coeffs = |deg: usize| prop::collection::vec(-5i64..=5, 1..=deg + 1);
    prop("gcd", 3, (coeffs(4), coeffs(4), coeffs(2)), |(a, b, c)| check_gcd(&upoly(&a), &upoly(&b), &upoly(&c)))?;
    prop("sturm", 4, (prop::collection::vec(-8i64..=8, 0..6), 0i64..4, (-10i64..=10, -10i64..=10, -10i64..=10)), |(r, s, c)| {
        check_sturm(&r, s, c)
    })?;
    let v3 = || prop::collection::vec(-4i64..=4, 3);
    prop("substitution", 5, (terms(3, 3), v3(), v3(), v3()), |(t, row, low, pt)| {
        check_substitution(&mpoly(&ring(3, MonomialOrder::lex(3)), &t), &row, &low, &pt)
    })?;
    Ok("5 property runs x 256 cases (fixed seeds): S-criterion with shuffle uniqueness, radical idempotence, gcd/squarefree, Sturm additivity, substitution".into())
}

fn certification(state: &mut State) -> Outcome {
    let failures: Vec<String> = state
        .reported
        .iter()
        .filter(|(_, prob, s, g2)| !certificate_holds(prob, s, g2))
        .map(|(name, _, s, _)| format!("{name}: {:?}", s.coordinates))
        .collect();
    ensure(failures.is_empty(), || format!("{} certificate failures: {failures:?}", failures.len()))?;
    Ok(format!("{} reported solutions, 0 certificate failures", state.reported.len()))
}

fn stretch_p_d4(state: &mut State) -> Outcome {
    let t = Instant::now();
    let prob = generate_benchmark(Family::P, 2, 4).map_err(err)?;
    let (rep, s, ln, sp) = full_run(state, &prob, &HStrategy::random(2024), &PrecisionPair::bench(), true)?;
    ensure((rep.deg_w(), s) == (100, 25), || format!("(deg w, #Sol) = ({}, {s})", rep.deg_w()))?;
    within(t.elapsed(), 3600, "p n=2 d=4")?;
    Ok(format!("deg w 100, #Sol 25, #Sol_ln {ln}, #Sol_sp {sp}, {:.0}s", t.elapsed().as_secs_f64()))
}

fn stretch_q_n3(state: &mut State) -> Outcome {
    let t = Instant::now();
    let prob = generate_benchmark(Family::Q, 3, 2).map_err(err)?;
    let prec = PrecisionPair::bench();
    let rep = univariate_representation(&prob, &HStrategy::random(2024)).map_err(err)?;
    let sols = enumerate_solutions(&prob, &rep, &prec).map_err(err)?;
    state.record("q_n3", &prob, &rep, &sols, false);
    state.reported("q_n3", &prob, &sols, &prec);
    ensure((rep.deg_w(), sols.len()) == (216, 27), || format!("(deg w, #Sol) = ({}, {})", rep.deg_w(), sols.len()))?;
    within(t.elapsed(), 7200, "q n=3")?;
    Ok(format!("deg w 216, #Sol 27, {:.0}s (sparse excluded)", t.elapsed().as_secs_f64()))
}

type Criterion = (&'static str, fn(&mut State) -> Outcome);

fn main() {
    let stretch = std::env::var_os("PCP_STRETCH").is_some();
    let mut criteria: Vec<Criterion> = vec![
        ("Exact w for f = (x2 - 1, x1 - 1) with the ramp H", ramp),
        ("Benchmark p, n=2 d=2", bench_p),
        ("Benchmark q, n=1 and n=2", bench_q),
        ("Copositive circle with a = (1e-6, 1e-5)", copositive),
        ("Oracle equivalence, n = 1", oracle_n1),
        ("Algebra property suite", algebra),
    ];
    let stretch_goals: Vec<Criterion> = vec![("Stretch: p family n=2 d=4", stretch_p_d4), ("Stretch: q family n=3", stretch_q_n3)];
    if stretch {
        criteria.extend(stretch_goals.iter().copied());
    }
    // these two read what the runs above collected
    criteria.push(("Bound suite", bounds));
    criteria.push(("Certification suite", certification));

    let mut state = State::default();
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| f(&mut state))).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("ACCEPTANCE PASS  {name}: {detail} [{:.1}s]", t.elapsed().as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("ACCEPTANCE FAIL  {name}: {why} [{:.1}s]", t.elapsed().as_secs_f64());
            }
        }
    }
    if !stretch {
        for (name, _) in &stretch_goals {
            println!("ACCEPTANCE SKIP  {name}: set PCP_STRETCH=1 to run");
        }
    }
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
