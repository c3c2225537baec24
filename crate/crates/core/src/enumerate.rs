//! Certified enumeration of the solutions described by a univariate representation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::pcp::{PcpProblem, SparseRep, UnivarRep};
use crate::poly::MPoly;
use crate::univar::{isolate_real_roots, refine_root, simplest_between, squarefree_part, ugcd, IsolatedRoot, UPoly};
use crate::Rational;

/// `gamma1` bounds the width of root intervals, `gamma2` the distance below
/// which two solutions are merged and the slack allowed in the sign checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionPair {
    gamma1: Rational,
    gamma2: Rational,
}

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

fn ten_to_minus(e: u32) -> Rational {
    Rational::new(BigInt::one(), pow10(e))
}

impl PrecisionPair {
    pub fn new(gamma1: Rational, gamma2: Rational) -> Result<Self> {
        if !gamma1.is_positive() || gamma1 >= gamma2 {
            return Err(Error::Domain(format!("need 0 < gamma1 < gamma2, got gamma1={gamma1}, gamma2={gamma2}")));
        }
        Ok(PrecisionPair { gamma1, gamma2 })
    }

    pub fn gamma1(&self) -> &Rational {
        &self.gamma1
    }

    pub fn gamma2(&self) -> &Rational {
        &self.gamma2
    }

    /// `gamma1 = 1e-10`, `gamma2 = 1e-4`, used for benchmark runs.
    pub fn bench() -> Self {
        PrecisionPair { gamma1: ten_to_minus(10), gamma2: ten_to_minus(4) }
    }
}

impl Default for PrecisionPair {
    fn default() -> Self {
        PrecisionPair { gamma1: ten_to_minus(10), gamma2: ten_to_minus(6) }
    }
}

/// One solution `x` of the complementarity problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Decimal rendering of each coordinate.
    pub coordinates: Vec<String>,
    /// Exact value when `exact[i]`, otherwise the midpoint of `bounds[i]`.
    pub values: Vec<Rational>,
    pub bounds: Vec<Interval>,
    pub exact: Vec<bool>,
    /// Isolating interval of the representative root of `w`.
    pub root: Interval,
    /// Number of real roots of `w` merged into this solution.
    pub root_count: usize,
    /// Upper bound on `max_i |x_i f_i(x)|` over the box.
    pub residual: Rational,
}

/// Rounds `q` to `sig` significant digits in positional notation.
pub fn to_decimal(q: &Rational, sig: usize) -> String {
    if q.is_zero() {
        return "0".into();
    }
    if q.is_integer() {
        return q.to_integer().to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    // e = floor(log10 a)
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let pw = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(pow10(k as u32))
        } else {
            ten_to_minus((-k) as u32)
        }
    };
    while a >= pw(e + 1) {
        e += 1;
    }
    while a < pw(e) {
        e -= 1;
    }
    let shift = sig as i64 - 1 - e;
    let scaled = &a * pw(shift);
    let mut digits = (scaled + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    let mut shift = shift;
    if digits >= pow10(sig as u32) {
        digits /= BigInt::from(10);
        shift -= 1;
    }
    let s = digits.to_string();
    let body = if shift <= 0 {
        format!("{s}{}", "0".repeat((-shift) as usize))
    } else if (shift as usize) < s.len() {
        let (i, f) = s.split_at(s.len() - shift as usize);
        format!("{i}.{f}")
    } else {
        format!("0.{}{s}", "0".repeat(shift as usize - s.len()))
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Interval enclosure of a multivariate polynomial over a box.
pub fn eval_mpoly_on(p: &MPoly, x: &[Interval]) -> Interval {
    p.terms().iter().fold(Interval::zero(), |acc, (m, c)| {
        let term = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(Interval::point(c.clone()), |t, (i, &e)| t.mul(&x[i].pow(e)));
        acc.add(&term)
    })
}

/// `coeffs / den` with integer coefficients, evaluated without intermediate gcds.
struct ScaledPoly {
    coeffs: Vec<BigInt>,
    den: BigInt,
}

impl ScaledPoly {
    fn new(p: &UPoly) -> Self {
        let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
        ScaledPoly { coeffs, den }
    }

    fn eval(&self, x: &Rational) -> Rational {
        if self.coeffs.is_empty() {
            return Rational::zero();
        }
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        Rational::new(acc, &self.den * (bpow / b))
    }

    fn derivative(&self) -> ScaledPoly {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
        ScaledPoly { coeffs, den: self.den.clone() }
    }

    /// Horner enclosure over `[lo, hi]`, kept in integers over a common denominator.
    fn range(&self, x: &Interval) -> Interval {
        if self.coeffs.is_empty() {
            return Interval::zero();
        }
        let b = x.lo.denom().lcm(x.hi.denom());
        let a = x.lo.numer() * (&b / x.lo.denom());
        let c = x.hi.numer() * (&b / x.hi.denom());
        // acc scaled by b^(steps taken)
        let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
        let mut bpow = BigInt::one();
        for coef in self.coeffs.iter().rev() {
            let prods = [&lo * &a, &lo * &c, &hi * &a, &hi * &c];
            let t = coef * &bpow;
            lo = prods.iter().min().unwrap() + &t;
            hi = prods.iter().max().unwrap() + &t;
            bpow *= &b;
        }
        let scale = &self.den * (bpow / &b);
        Interval::new(Rational::new(lo, scale.clone()), Rational::new(hi, scale))
    }
}

/// Mean-value enclosure `p(m) + p'(R) [-w/2, w/2]` of `p` at the root bracketed by `r`.
fn enclose(p: &ScaledPoly, dp: &ScaledPoly, r: &IsolatedRoot) -> Interval {
    if r.is_exact() {
        return Interval::point(p.eval(&r.lo));
    }
    let pm = p.eval(&r.midpoint());
    let half = r.width() / Rational::from_integer(BigInt::from(2));
    let slope = dp.range(&r.as_interval());
    slope.mul(&Interval::new(-half.clone(), half)).add_scalar(&pm)
}

/// Refines `root` of the squarefree `sub` until every enclosure has width at most `target`.
fn tighten(sub: &UPoly, ps: &[(ScaledPoly, ScaledPoly)], root: &IsolatedRoot, target: &Rational, root_width: &Rational) -> (IsolatedRoot, Vec<Interval>) {
    // outward rounding to multiples of 2^-k keeps the endpoints short
    let mut k = 0u64;
    while Rational::new(BigInt::one(), BigInt::one() << k) * Rational::from_integer(BigInt::from(8)) > *target {
        k += 1;
    }
    let mut r = refine_root(sub, root, root_width);
    loop {
        let bounds: Vec<Interval> = ps.iter().map(|(p, dp)| round_out(&enclose(p, dp, &r), k)).collect();
        let wide = widest(&bounds);
        if &wide <= target || r.is_exact() {
            return (r, bounds);
        }
        // enclosure width shrinks at least linearly with the root interval
        let next = r.width() * target / wide / Rational::from_integer(BigInt::from(4));
        r = refine_root(sub, &r, &next);
    }
}

fn round_out(x: &Interval, k: u64) -> Interval {
    if x.lo == x.hi && x.lo.denom().bits() <= k + 1 {
        return x.clone();
    }
    let scale = Rational::from_integer(BigInt::one() << k);
    let lo = (&x.lo * &scale).floor() / &scale;
    let hi = (&x.hi * &scale).ceil() / &scale;
    Interval::new(lo, hi)
}

fn with_derivatives(ps: &[UPoly]) -> Vec<(ScaledPoly, ScaledPoly)> {
    ps.iter()
        .map(|p| {
            let s = ScaledPoly::new(p);
            let d = s.derivative();
            (s, d)
        })
        .collect()
}

/// A divisor `g` of the squarefree polynomial whose roots were isolated.
struct Divisor {
    g: UPoly,
}

impl Divisor {
    fn new(g: UPoly) -> Self {
        Divisor { g }
    }

    /// Does `g` vanish at the root bracketed by `r`? The interval isolates a
    /// single root of a multiple of `g` and its endpoints are not roots, so
    /// `g` vanishes inside exactly when its sign changes across it.
    fn vanishes_at(&self, r: &IsolatedRoot) -> bool {
        if self.g.degree().unwrap_or(0) == 0 {
            return false;
        }
        if r.is_exact() {
            return self.g.sign_at(&r.lo) == 0;
        }
        self.g.sign_at(&r.lo) * self.g.sign_at(&r.hi) < 0
    }
}

fn widest(bounds: &[Interval]) -> Rational {
    bounds.iter().map(Interval::width).max().unwrap_or_else(Rational::zero)
}

struct Candidate {
    root: IsolatedRoot,
    bounds: Vec<Interval>,
    exact: Vec<Option<Rational>>,
    residual: Rational,
}

fn certify(prob: &PcpProblem, cand: &Candidate, gamma2: &Rational) -> Result<Rational> {
    let floor = -gamma2.clone();
    let mut residual = Rational::zero();
    for (i, fi) in prob.f().iter().enumerate() {
        let xi = &cand.bounds[i];
        let fx = eval_mpoly_on(fi, &cand.bounds);
        let prod = xi.mul(&fx);
        if !prod.contains_zero() || xi.lo < floor || fx.lo < floor {
            return Err(Error::Certification(format!(
                "coordinate {} fails: x in {xi}, f in {fx}, x*f in {prod}",
                i + 1
            )));
        }
        residual = residual.max(prod.mag());
    }
    Ok(residual)
}

fn small(c: &Rational) -> bool {
    c.numer().bits() <= 64 && c.denom().bits() <= 64
}

/// Detects coordinates that are exactly a small rational (one gcd per
/// distinct coordinate and value), then certifies every candidate.
fn finish(prob: &PcpProblem, sub: &UPoly, v: &[UPoly], located: Vec<(IsolatedRoot, Vec<Interval>)>, gamma2: &Rational) -> Result<Vec<Candidate>> {
    let mut guesses: BTreeSet<(usize, Rational)> = BTreeSet::new();
    for (_, bounds) in &located {
        for (i, b) in bounds.iter().enumerate() {
            let c = simplest_between(&b.lo, &b.hi);
            if b.lo != b.hi && small(&c) {
                guesses.insert((i, c));
            }
        }
    }
    let divisors: HashMap<(usize, Rational), Divisor> = guesses
        .into_par_iter()
        .map(|(i, c)| {
            let g = ugcd(&[sub.clone(), v[i].sub(&UPoly::constant(c.clone()))])?;
            Ok(((i, c), Divisor::new(g)))
        })
        .collect::<Result<_>>()?;
    located
        .into_par_iter()
        .map(|(root, mut bounds)| {
            let exact: Vec<Option<Rational>> = bounds
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    if b.lo == b.hi {
                        return Some(b.lo.clone());
                    }
                    let key = (i, simplest_between(&b.lo, &b.hi));
                    divisors.get(&key).filter(|d| d.vanishes_at(&root)).map(|_| key.1)
                })
                .collect();
            for (b, e) in bounds.iter_mut().zip(&exact) {
                if let Some(c) = e {
                    *b = Interval::point(c.clone());
                }
            }
            let mut cand = Candidate { root, bounds, exact, residual: Rational::zero() };
            cand.residual = certify(prob, &cand, gamma2)?;
            Ok(cand)
        })
        .collect()
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut i = i;
    while parent[i] != r {
        let next = parent[i];
        parent[i] = r;
        i = next;
    }
    r
}

fn close(a: &Candidate, b: &Candidate, gamma2: &Rational) -> bool {
    a.bounds.iter().zip(&b.bounds).all(|(x, y)| (x.midpoint() - y.midpoint()).abs() < *gamma2)
}

/// Merges candidates closer than `gamma2` and renders them, sorted by coordinates.
fn merge(cands: Vec<Candidate>, gamma2: &Rational, sig: usize) -> Vec<Solution> {
    let k = cands.len();
    let mut parent: Vec<usize> = (0..k).collect();
    for i in 0..k {
        for j in i + 1..k {
            if close(&cands[i], &cands[j], gamma2) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..k {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Solution> = groups
        .values()
        .map(|members| {
            let best = *members
                .iter()
                .min_by(|&&a, &&b| {
                    cands[a].residual.cmp(&cands[b].residual).then(widest(&cands[a].bounds).cmp(&widest(&cands[b].bounds)))
                })
                .unwrap();
            let c = &cands[best];
            let values: Vec<Rational> =
                c.bounds.iter().zip(&c.exact).map(|(b, e)| e.clone().unwrap_or_else(|| b.midpoint())).collect();
            Solution {
                coordinates: values.iter().map(|x| to_decimal(x, sig)).collect(),
                values,
                bounds: c.bounds.clone(),
                exact: c.exact.iter().map(Option::is_some).collect(),
                root: c.root.as_interval(),
                root_count: members.len(),
                residual: c.residual.clone(),
            }
        })
        .collect();
    sort_solutions(&mut out, gamma2);
    out
}

/// Coordinates rounded to the `gamma2` grid, so equal values with slightly
/// different enclosures still order lexicographically.
fn grid_key(s: &Solution, gamma2: &Rational) -> Vec<BigInt> {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    s.values.iter().map(|v| (v / gamma2 + &half).floor().to_integer()).collect()
}

fn sort_solutions(sols: &mut [Solution], gamma2: &Rational) {
    sols.sort_by_cached_key(|s| (grid_key(s, gamma2), s.values.clone()));
}

fn widths(prob: &PcpProblem, rep: &UnivarRep, precision: &PrecisionPair) -> (Rational, Rational) {
    // two guard digits beyond the 10 + deg w that get printed
    let digits = ten_to_minus(12 + rep.deg_w() as u32);
    let root_width = precision.gamma1.clone().min(digits.clone());
    let coord_width = (precision.gamma2.clone() / Rational::from_integer(BigInt::from(4 * prob.n() as u64))).min(digits);
    (root_width, coord_width)
}

/// Solutions coming from the real roots of `roots_of`, a divisor of `w`.
fn solutions_at(prob: &PcpProblem, rep: &UnivarRep, roots_of: &UPoly, precision: &PrecisionPair) -> Result<Vec<Solution>> {
    if rep.v.len() != prob.n() {
        return Err(Error::Structure(format!("representation has {} coordinates, problem has {}", rep.v.len(), prob.n())));
    }
    if roots_of.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let (root_width, coord_width) = widths(prob, rep, precision);
    let sub = squarefree_part(roots_of)?;
    let vs = with_derivatives(&rep.v);
    let roots = isolate_real_roots(&sub, &precision.gamma1)?;
    let located = roots.par_iter().map(|r| tighten(&sub, &vs, r, &coord_width, &root_width)).collect();
    let cands = finish(prob, &sub, &rep.v, located, &precision.gamma2)?;
    Ok(merge(cands, &precision.gamma2, 10 + rep.deg_w()))
}

/// Every solution of `CP(f)` described by `rep`, certified and deduplicated.
pub fn enumerate_solutions(prob: &PcpProblem, rep: &UnivarRep, precision: &PrecisionPair) -> Result<Vec<Solution>> {
    solutions_at(prob, rep, &rep.w, precision)
}

/// Least-norm solutions and the minimal squared norm.
pub fn enumerate_least_norm(prob: &PcpProblem, rep: &UnivarRep, precision: &PrecisionPair) -> Result<(Vec<Solution>, Option<Rational>)> {
    let phi = rep.phi.as_ref().ok_or_else(|| Error::Domain("representation carries no phi".into()))?;
    let w = squarefree_part(&rep.w)?;
    if w.degree().unwrap_or(0) == 0 {
        return Ok((Vec::new(), None));
    }
    let roots = isolate_real_roots(&w, &precision.gamma1)?;
    if roots.is_empty() {
        return Ok((Vec::new(), None));
    }
    // enclose phi at every root to within gamma1
    let sphi = with_derivatives(std::slice::from_ref(phi));
    let encl: Vec<(IsolatedRoot, Interval)> = roots
        .par_iter()
        .map(|r| {
            let (r, mut e) = tighten(&w, &sphi, r, &precision.gamma1, &precision.gamma1);
            (r, e.remove(0))
        })
        .collect();
    let min_hi = encl.iter().map(|(_, e)| e.hi.clone()).min().unwrap();
    let near: Vec<&(IsolatedRoot, Interval)> = encl.iter().filter(|(_, e)| e.lo <= min_hi).collect();
    let lo = near.iter().map(|(_, e)| e.lo.clone()).min().unwrap();
    // try to pin the minimum to an exact rational value
    let c = simplest_between(&lo.max(Rational::zero()).min(min_hi.clone()), &min_hi);
    let g = ugcd(&[w.clone(), phi.sub(&UPoly::constant(c.clone()))])?;
    let at_min = Divisor::new(g);
    if near.iter().any(|(r, _)| at_min.vanishes_at(r)) {
        return Ok((solutions_at(prob, rep, &at_min.g, precision)?, Some(c)));
    }
    // otherwise keep every root whose enclosure reaches the smallest upper bound
    let (root_width, coord_width) = widths(prob, rep, precision);
    let vs = with_derivatives(&rep.v);
    let located = near.par_iter().map(|(r, _)| tighten(&w, &vs, r, &coord_width, &root_width)).collect();
    let cands = finish(prob, &w, &rep.v, located, &precision.gamma2)?;
    Ok((merge(cands, &precision.gamma2, 10 + rep.deg_w()), Some(min_hi)))
}

/// Sparsest solutions: those with zero coordinates exactly on some set in `omega`.
pub fn enumerate_sparse(prob: &PcpProblem, sparse: &SparseRep, precision: &PrecisionPair) -> Result<Vec<Solution>> {
    let rep = &sparse.base;
    let mut all = Vec::new();
    for ell in &sparse.omega {
        let h = sparse.support_polynomial(ell)?;
        all.extend(solutions_at(prob, rep, &h, precision)?);
    }
    sort_solutions(&mut all, &precision.gamma2);
    all.dedup_by(|a, b| a.values.iter().zip(&b.values).all(|(x, y)| (x - y).abs() < precision.gamma2));
    Ok(all)
}

/// Number of zero coordinates, counting only exactly certified zeros.
pub fn exact_zero_count(s: &Solution) -> usize {
    s.values.iter().zip(&s.exact).filter(|(v, e)| **e && v.is_zero()).count()
}
