//! Polynomial complementarity problems: find `x >= 0` with `f(x) >= 0` and
//! `<x, f(x)> = 0`.
//!
//! The solution set is the projection of the real zeros of the slack system
//! `x_i f_i, z_i^2 - x_i, z_{n+i}^2 - f_i`. For D0 problems (finitely many
//! complex zeros of `<x_i f_i>`) a linear change of coordinates puts the
//! radical of the slack ideal in shape position, which yields polynomials
//! `[w, v_1, .., v_n]` with `Sol(f) = {(v_1(t), .., v_n(t)) : w(t) = 0, t real}`.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, is_zero_dimensional, GroebnerBasis};
use crate::poly::{MPoly, Monomial, MonomialOrder, RationalMatrix, Ring};
use crate::univar::{root_bound, squarefree_part, udivrem, ugcd, SturmSequence, UPoly};
use crate::zero_dim::{radical, shape_by_linear_algebra, try_shape_position, ShapeBasis};
use crate::Rational;

/// `f: R^n -> R^n`, polynomial in `x_1..x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcpProblem {
    f: Vec<MPoly>,
    name: Option<String>,
}

impl PcpProblem {
    pub fn new(f: Vec<MPoly>) -> Result<Self> {
        let ring = f.first().ok_or_else(|| Error::Domain("empty problem".into()))?.ring().clone();
        if f.iter().any(|p| p.ring() != &ring) {
            return Err(Error::Structure("components of f live in different rings".into()));
        }
        if ring.nvars() != f.len() {
            return Err(Error::Structure(format!(
                "f has {} components over {} variables",
                f.len(),
                ring.nvars()
            )));
        }
        Ok(PcpProblem { f, name: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.f.len()
    }

    pub fn f(&self) -> &[MPoly] {
        &self.f
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.f[0].ring()
    }

    /// `max deg f_i` (zero components count as degree 0).
    pub fn degree(&self) -> u32 {
        self.f.iter().filter_map(MPoly::degree).max().unwrap_or(0)
    }

    /// The problem `f + a`.
    pub fn perturbed(&self, a: &[Rational]) -> Result<PcpProblem> {
        if a.len() != self.n() {
            return Err(Error::Structure("perturbation length differs from n".into()));
        }
        let f = self
            .f
            .iter()
            .zip(a)
            .map(|(fi, ai)| fi.checked_add(&MPoly::constant(self.ring(), ai.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(PcpProblem { f, name: self.name.clone() })
    }

    /// Ring `x_1..x_n, z_1..z_2n` (indices `0..3n`) with the given order.
    pub fn slack_ring(&self, order: MonomialOrder) -> Arc<Ring> {
        let mut names: Vec<String> = self.ring().names().to_vec();
        let mut prefix = String::from("z");
        while names.iter().any(|n| n.starts_with(&prefix)) {
            prefix.insert(0, '_');
        }
        names.extend((1..=2 * self.n()).map(|i| format!("{prefix}{i}")));
        Ring::new(names, order).expect("order sized to 3n")
    }

    /// Lifts a polynomial in `x` into a ring whose first `n` variables are `x`.
    fn embed(&self, p: &MPoly, target: &Arc<Ring>) -> MPoly {
        let extra = target.nvars() - self.n();
        MPoly::from_terms(
            target,
            p.terms().iter().map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.extend(std::iter::repeat_n(0, extra));
                (Monomial::new(e), c.clone())
            }),
        )
    }
}

/// The generators `x_1 f_1, .., x_n f_n` of `I[f]`.
pub fn build_ideal_f(prob: &PcpProblem) -> Vec<MPoly> {
    prob.f.iter().enumerate().map(|(i, fi)| &MPoly::var(prob.ring(), i) * fi).collect()
}

/// The `3n` generators of `I[f, z]` in the slack ring, listed as
/// `x_i f_i`, then `z_i^2 - x_i`, then `z_{n+i}^2 - f_i`.
pub fn build_ideal_fz(prob: &PcpProblem) -> Vec<MPoly> {
    build_ideal_fz_in(prob, &prob.slack_ring(MonomialOrder::lex(3 * prob.n())))
}

fn build_ideal_fz_in(prob: &PcpProblem, ring: &Arc<Ring>) -> Vec<MPoly> {
    let n = prob.n();
    let x = |i: usize| MPoly::var(ring, i);
    let zsq = |i: usize| MPoly::var(ring, n + i).pow_u32(2);
    let f: Vec<MPoly> = prob.f.iter().map(|p| prob.embed(p, ring)).collect();
    let mut out = Vec::with_capacity(3 * n);
    out.extend((0..n).map(|i| &x(i) * &f[i]));
    out.extend((0..n).map(|i| &zsq(i) - &x(i)));
    out.extend((0..n).map(|i| &zsq(n + i) - &f[i]));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D0Check {
    pub is_d0: bool,
    /// A variable with no pure power among the leading monomials when not D0.
    pub witness: Option<usize>,
    pub basis: GroebnerBasis,
}

/// Decides whether `I[f]` is zero-dimensional (grevlex basis).
pub fn classify_d0(prob: &PcpProblem) -> Result<D0Check> {
    let basis = buchberger(&build_ideal_f(prob), &MonomialOrder::grevlex(prob.n()))?;
    let (is_d0, witness) = is_zero_dimensional(&basis);
    Ok(D0Check { is_d0, witness, basis })
}

fn not_d0(prob: &PcpProblem, check: &D0Check) -> Error {
    let witness = check.witness.unwrap_or(0);
    Error::NotD0 { witness, name: prob.ring().names()[witness].clone() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HMode {
    Deterministic,
    Random,
    Explicit,
}

/// How the change of variables `(x, z) = H y` is chosen.
///
/// Candidates are built from a matrix `M` that is the identity except for its
/// first row; `H = M^{-1}` when `invert_convention` holds and `H = M` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HStrategy {
    pub mode: HMode,
    pub seed: Option<u64>,
    pub explicit_matrix: Option<RationalMatrix>,
    pub invert_convention: bool,
    /// First `s` tried in deterministic mode (first row `1, s, s^2, ..`).
    pub s_start: u64,
    /// Draw budget in random mode.
    pub max_draws: usize,
}

impl HStrategy {
    pub fn deterministic() -> Self {
        HStrategy { mode: HMode::Deterministic, seed: None, explicit_matrix: None, invert_convention: true, s_start: 0, max_draws: 16 }
    }

    pub fn random(seed: u64) -> Self {
        HStrategy { mode: HMode::Random, seed: Some(seed), ..Self::deterministic() }
    }

    pub fn explicit(matrix: RationalMatrix, invert_convention: bool) -> Self {
        HStrategy { mode: HMode::Explicit, explicit_matrix: Some(matrix), invert_convention, ..Self::deterministic() }
    }
}

/// Which computation produces the shape basis of the radical slack ideal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ShapeRoute {
    /// Reduce in the quotient ring of the grevlex radical; only the
    /// separating form changes between candidates.
    #[default]
    Quotient,
    /// Substitute `(x, z) = H y`, then compute the lex basis of the radical
    /// in the `y` ring and match it syntactically.
    LexGroebner,
}

/// `[w, v_1, .., v_n]`, optionally with the least-norm objective `phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivarRep {
    pub w: UPoly,
    pub v: Vec<UPoly>,
    pub phi: Option<UPoly>,
    pub h_used: RationalMatrix,
    pub mode: HMode,
    pub seed: Option<u64>,
    pub s_used: Option<u64>,
    pub invert_convention: bool,
}

impl UnivarRep {
    pub fn n(&self) -> usize {
        self.v.len()
    }

    pub fn deg_w(&self) -> usize {
        self.w.degree().unwrap_or(0)
    }

    /// Number of distinct real roots of `w`.
    pub fn real_root_count(&self) -> usize {
        real_root_count(&self.w)
    }
}

fn real_root_count(p: &UPoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let sq = squarefree_part(p).expect("nonzero");
    let b = root_bound(&sq);
    SturmSequence::new(&sq).expect("squarefree").count(&-b.clone(), &b)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PipelineStats {
    pub groebner_secs: f64,
    pub radical_secs: f64,
    pub shape_secs: f64,
    pub attempts: u64,
    pub slack_quotient_dim: Option<usize>,
}

/// `2^n (d+1)^n`, the a-priori bound on `deg w`.
pub fn bezout_cap(n: usize, d: u32) -> BigInt {
    BigInt::from(2u32).pow(n as u32) * BigInt::from(d + 1).pow(n as u32)
}

/// `(3n - 1) delta (delta - 1) / 2 + 1` with `delta = 2^n (d+1)^n`.
pub fn deterministic_loop_bound(n: usize, d: u32) -> BigInt {
    let delta = bezout_cap(n, d);
    BigInt::from(3 * n - 1) * &delta * (&delta - 1) / 2 + 1
}

fn first_row_matrix(row: &[Rational]) -> RationalMatrix {
    let mut m = RationalMatrix::identity(row.len());
    for (j, r) in row.iter().enumerate() {
        m.set(0, j, r.clone());
    }
    m
}

struct Candidate {
    h: RationalMatrix,
    s: Option<u64>,
}

fn candidate_from(m: RationalMatrix, invert: bool, s: Option<u64>) -> Result<Candidate> {
    let h = if invert { m.inverse()? } else { m };
    Ok(Candidate { h, s })
}

/// Univariate representation of `Sol(f)` with the default shape route.
pub fn univariate_representation(prob: &PcpProblem, strategy: &HStrategy) -> Result<UnivarRep> {
    Ok(univariate_representation_with(prob, strategy, ShapeRoute::default())?.0)
}

/// Univariate representation of `Sol(f)`: tries changes of variables from
/// `strategy` until the radical slack ideal is in shape position, then maps
/// `(t, u_2, .., u_3n)` back through `H`.
pub fn univariate_representation_with(
    prob: &PcpProblem,
    strategy: &HStrategy,
    route: ShapeRoute,
) -> Result<(UnivarRep, PipelineStats)> {
    let n = prob.n();
    let m = 3 * n;
    let mut stats = PipelineStats::default();

    let clock = Instant::now();
    let check = classify_d0(prob)?;
    if !check.is_d0 {
        return Err(not_d0(prob, &check));
    }
    let prepared = match route {
        ShapeRoute::Quotient => {
            let ring = prob.slack_ring(MonomialOrder::grevlex(m));
            let gb = buchberger(&build_ideal_fz_in(prob, &ring), ring.order())?;
            stats.slack_quotient_dim = gb.quotient_dimension();
            stats.groebner_secs = clock.elapsed().as_secs_f64();
            let clock = Instant::now();
            let rad = radical(&gb)?;
            stats.radical_secs = clock.elapsed().as_secs_f64();
            Some(rad)
        }
        ShapeRoute::LexGroebner => {
            stats.groebner_secs = clock.elapsed().as_secs_f64();
            None
        }
    };

    let clock = Instant::now();
    let attempt = |cand: &Candidate, stats: &mut PipelineStats| -> Result<Option<ShapeBasis>> {
        stats.attempts += 1;
        match &prepared {
            Some(rad) => shape_by_linear_algebra(rad, &cand.h.inverse()?),
            None => {
                let (shape, gb_secs, rad_secs) = lex_shape(prob, &cand.h)?;
                stats.groebner_secs += gb_secs;
                stats.radical_secs += rad_secs;
                Ok(shape)
            }
        }
    };

    let found: (ShapeBasis, Candidate) = match strategy.mode {
        HMode::Explicit => {
            let mat = strategy
                .explicit_matrix
                .clone()
                .ok_or_else(|| Error::Domain("explicit strategy without a matrix".into()))?;
            if mat.rows() != m || !mat.is_square() {
                return Err(Error::Structure(format!("explicit H must be {m}x{m}")));
            }
            let cand = candidate_from(mat, strategy.invert_convention, None)?;
            match attempt(&cand, &mut stats)? {
                Some(shape) => (shape, cand),
                None => return Err(Error::ShapeExhausted { attempts: 1, bound: "1 (explicit matrix)".into() }),
            }
        }
        HMode::Deterministic => {
            let bound = deterministic_loop_bound(n, prob.degree());
            let mut s = strategy.s_start;
            loop {
                if BigInt::from(s - strategy.s_start) >= bound {
                    return Err(Error::ShapeExhausted { attempts: s - strategy.s_start, bound: bound.to_string() });
                }
                let sq = Rational::from_integer(BigInt::from(s));
                let row: Vec<Rational> = (0..m).map(|k| num_traits::pow(sq.clone(), k)).collect();
                let cand = candidate_from(first_row_matrix(&row), strategy.invert_convention, Some(s))?;
                if let Some(shape) = attempt(&cand, &mut stats)? {
                    break (shape, cand);
                }
                s += 1;
            }
        }
        HMode::Random => {
            let seed = strategy.seed.ok_or_else(|| Error::Domain("random strategy needs a seed".into()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut found = None;
            for _ in 0..strategy.max_draws {
                let row: Vec<Rational> = loop {
                    let row: Vec<Rational> = (0..m)
                        .map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-65536i64..=65536))))
                        .collect();
                    if !row[0].is_zero() {
                        break row;
                    }
                };
                let cand = candidate_from(first_row_matrix(&row), strategy.invert_convention, None)?;
                if let Some(shape) = attempt(&cand, &mut stats)? {
                    found = Some((shape, cand));
                    break;
                }
            }
            found.ok_or_else(|| Error::ShapeExhausted {
                attempts: strategy.max_draws as u64,
                bound: format!("{} random draws", strategy.max_draws),
            })?
        }
    };
    stats.shape_secs = clock.elapsed().as_secs_f64();

    let (shape, cand) = found;
    let w = shape.w.clone();
    let coords: Vec<UPoly> = (0..m).map(|i| shape.coordinate(i)).collect();
    let v = (0..n)
        .map(|j| {
            let vj = (0..m).fold(UPoly::zero(), |acc, i| acc.add(&coords[i].scale(cand.h.get(j, i))));
            vj.rem(&w)
        })
        .collect::<Result<Vec<_>>>()?;
    let rep = UnivarRep {
        w,
        v,
        phi: None,
        h_used: cand.h,
        mode: strategy.mode,
        seed: strategy.seed.filter(|_| strategy.mode == HMode::Random),
        s_used: cand.s,
        invert_convention: strategy.invert_convention,
    };
    Ok((rep, stats))
}

/// Substitutes `(x, z) = H y` into the slack generators and reads the shape
/// basis off the reduced lex basis of the radical, if it has that shape.
fn lex_shape(prob: &PcpProblem, h: &RationalMatrix) -> Result<(Option<ShapeBasis>, f64, f64)> {
    let m = 3 * prob.n();
    let slack = prob.slack_ring(MonomialOrder::lex(m));
    let yring = Ring::with_prefix("y", m, MonomialOrder::lex(m));
    let hs = build_ideal_fz_in(prob, &slack)
        .iter()
        .map(|p| p.substitute_linear(h, &yring))
        .collect::<Result<Vec<_>>>()?;
    let clock = Instant::now();
    let gb = buchberger(&hs, yring.order())?;
    let gb_secs = clock.elapsed().as_secs_f64();
    let clock = Instant::now();
    let rad = radical(&gb)?;
    let rad_secs = clock.elapsed().as_secs_f64();
    Ok((try_shape_position(&rad), gb_secs, rad_secs))
}

/// Adds `phi = (v_1^2 + .. + v_n^2) mod w`.
pub fn least_norm_representation(rep: &UnivarRep) -> Result<UnivarRep> {
    let phi_hat = rep.v.iter().fold(UPoly::zero(), |acc, vi| acc.add(&vi.mul(vi)));
    let phi = phi_hat.rem(&rep.w)?;
    Ok(UnivarRep { phi: Some(phi), ..rep.clone() })
}

/// Output of the sparse search: `k` zero coordinates, attained on the index sets `omega`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRep {
    pub base: UnivarRep,
    pub k: usize,
    /// Zero-based index sets, each sorted; `[[]]` when `k = 0`.
    pub omega: Vec<Vec<usize>>,
    /// `gcd(w, v_i)` for each coordinate.
    pub zero_polys: Vec<UPoly>,
}

impl SparseRep {
    /// Polynomial whose real roots are exactly the real roots `t` of `w`
    /// with `v_i(t) = 0` for `i` in `ell` and `v_i(t) != 0` otherwise.
    pub fn support_polynomial(&self, ell: &[usize]) -> Result<UPoly> {
        support_from(&self.base.w, &self.zero_polys, ell)
    }
}

/// `gcd(w, v_i)` for every coordinate.
pub fn coordinate_zero_polys(rep: &UnivarRep) -> Result<Vec<UPoly>> {
    rep.v.par_iter().map(|vi| ugcd(&[rep.w.clone(), vi.clone()])).collect()
}

fn support_from(w: &UPoly, zero_polys: &[UPoly], ell: &[usize]) -> Result<UPoly> {
    let mut ps = vec![w.clone()];
    ps.extend(ell.iter().map(|&i| zero_polys[i].clone()));
    let mut h = ugcd(&ps)?;
    for (i, gi) in zero_polys.iter().enumerate() {
        if ell.contains(&i) {
            continue;
        }
        if h.degree() == Some(0) {
            break;
        }
        let g = ugcd(&[h.clone(), gi.clone()])?;
        if g.degree() > Some(0) {
            h = udivrem(&h, &g)?.0;
        }
    }
    Ok(h)
}

/// `w_ell = gcd(w, v_i : i in ell)` with every root shared with some `v_i`,
/// `i` outside `ell`, divided out.
pub fn support_polynomial(rep: &UnivarRep, ell: &[usize]) -> Result<UPoly> {
    support_from(&rep.w, &coordinate_zero_polys(rep)?, ell)
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Descending search for the largest number `k` of zero coordinates among solutions.
pub fn sparse_representation(rep: &UnivarRep) -> Result<SparseRep> {
    if rep.real_root_count() == 0 {
        return Err(Error::NoSolutions);
    }
    let n = rep.n();
    let zero_polys = coordinate_zero_polys(rep)?;
    for j in (1..=n).rev() {
        let hits: Vec<Vec<usize>> = subsets(n, j)
            .into_par_iter()
            .map(|ell| -> Result<Option<Vec<usize>>> {
                let h = support_from(&rep.w, &zero_polys, &ell)?;
                Ok((real_root_count(&h) > 0).then_some(ell))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        if !hits.is_empty() {
            return Ok(SparseRep { base: rep.clone(), k: j, omega: hits, zero_polys });
        }
    }
    Ok(SparseRep { base: rep.clone(), k: 0, omega: vec![Vec::new()], zero_polys })
}

/// Default number of perturbation draws.
pub const PERTURBATION_DRAWS: usize = 32;

/// Solves `CP(f + a)` for a random small `a` with `||a|| < eps`, redrawing
/// until the perturbed problem is D0.
pub fn copositive_solve(
    prob: &PcpProblem,
    eps: &Rational,
    seed: u64,
    strategy: &HStrategy,
) -> Result<(Vec<Rational>, UnivarRep)> {
    if !eps.is_positive() {
        return Err(Error::Domain(format!("perturbation radius must be positive, got {eps}")));
    }
    let n = prob.n();
    let scale = eps / Rational::from_integer(BigInt::from(n as u64 * 65536 + 1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..PERTURBATION_DRAWS {
        let a: Vec<Rational> = (0..n)
            .map(|_| &scale * Rational::from_integer(BigInt::from(rng.gen_range(-65536i64..=65536))))
            .collect();
        let perturbed = prob.perturbed(&a)?;
        if classify_d0(&perturbed)?.is_d0 {
            let rep = univariate_representation(&perturbed, strategy)?;
            return Ok((a, rep));
        }
    }
    Err(Error::PerturbationExhausted { draws: PERTURBATION_DRAWS })
}

/// Solves `CP(f + a)` for a caller-chosen `a`.
pub fn copositive_solve_with(prob: &PcpProblem, a: &[Rational], strategy: &HStrategy) -> Result<UnivarRep> {
    let perturbed = prob.perturbed(a)?;
    let check = classify_d0(&perturbed)?;
    if !check.is_d0 {
        return Err(not_d0(&perturbed, &check));
    }
    univariate_representation(&perturbed, strategy)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `p_i = (-1)^d (x_i - 1)(x_i - 2)..(x_i - d)`, with `(d+1)^n` solutions.
    P,
    /// `q_i = x_i^2 - 3 x_i + 1`.
    Q,
}

pub fn generate_benchmark(family: Family, n: usize, d: u32) -> Result<PcpProblem> {
    if n == 0 || d == 0 {
        return Err(Error::Domain(format!("benchmark needs n >= 1 and d >= 1 (got n={n}, d={d})")));
    }
    let ring = Ring::with_prefix("x", n, MonomialOrder::lex(n));
    let int = |k: i64| Rational::from_integer(BigInt::from(k));
    let f: Vec<MPoly> = match family {
        Family::P => (0..n)
            .map(|i| {
                let x = MPoly::var(&ring, i);
                let prod = (1..=d as i64).fold(MPoly::one(&ring), |acc, j| &acc * &(&x - &MPoly::constant(&ring, int(j))));
                if d % 2 == 1 {
                    prod.neg()
                } else {
                    prod
                }
            })
            .collect(),
        Family::Q => {
            if d != 2 {
                return Err(Error::Domain(format!("the q family has degree 2, got d={d}")));
            }
            (0..n)
                .map(|i| {
                    let x = MPoly::var(&ring, i);
                    &(&(&x * &x) - &x.scale(&int(3))) + &MPoly::one(&ring)
                })
                .collect()
        }
    };
    let name = match family {
        Family::P => format!("p_n{n}_d{d}"),
        Family::Q => format!("q_n{n}"),
    };
    Ok(PcpProblem::new(f)?.with_name(name))
}

/// Converts a benchmark size to `f64` for logging; saturates on overflow.
pub fn cap_as_f64(b: &BigInt) -> f64 {
    b.to_f64().unwrap_or(f64::INFINITY)
}

impl PcpProblem {
    /// Sum of the squares of the coordinates, handy for least-norm checks.
    pub fn norm_sq(point: &[Rational]) -> Rational {
        point.iter().fold(Rational::zero(), |acc, x| acc + x * x)
    }

    /// True when `x >= 0`, `f(x) >= 0` and `x_i f_i(x) = 0` exactly.
    pub fn is_solution(&self, point: &[Rational]) -> Result<bool> {
        for (i, fi) in self.f.iter().enumerate() {
            let v = fi.evaluate(point)?;
            if point[i].is_negative() || v.is_negative() || !(&point[i] * &v).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn ring2() -> Arc<Ring> {
        Ring::with_prefix("x", 2, MonomialOrder::lex(2))
    }

    pub(crate) fn swap() -> PcpProblem {
        let r = ring2();
        let one = MPoly::one(&r);
        PcpProblem::new(vec![&MPoly::var(&r, 1) - &one, &MPoly::var(&r, 0) - &one]).unwrap()
    }

    fn circle(a1: Rational, a2: Rational) -> PcpProblem {
        let r = ring2();
        let base = &(&MPoly::var(&r, 0).pow_u32(2) + &MPoly::var(&r, 1).pow_u32(2)) - &MPoly::one(&r);
        PcpProblem::new(vec![&base + &MPoly::constant(&r, a1), &base + &MPoly::constant(&r, a2)]).unwrap()
    }

    #[test]
    fn ideal_generators() {
        let p = swap();
        let names: Vec<String> = build_ideal_f(&p).iter().map(|g| g.to_string()).collect();
        assert_eq!(names, ["x1*x2 - x1", "x1*x2 - x2"]);
        let fz: Vec<String> = build_ideal_fz(&p).iter().map(|g| g.to_string()).collect();
        assert_eq!(fz, ["x1*x2 - x1", "x1*x2 - x2", "z1^2 - x1", "z2^2 - x2", "z3^2 - x2 + 1", "z4^2 - x1 + 1"]);

        let r1 = Ring::with_prefix("x", 1, MonomialOrder::lex(1));
        let ones = PcpProblem::new(vec![MPoly::one(&r1)]).unwrap();
        let fz: Vec<String> = build_ideal_fz(&ones).iter().map(|g| g.to_string()).collect();
        assert_eq!(fz, ["x1", "z1^2 - x1", "z2^2 - 1"]);
        assert_eq!(build_ideal_fz(&swap()).len(), 6);
    }

    #[test]
    fn d0_classification() {
        assert!(classify_d0(&swap()).unwrap().is_d0);
        let c = classify_d0(&circle(q(0), q(0))).unwrap();
        assert!(!c.is_d0);
        assert!(c.witness.is_some());
        let tiny = |k: i64| Rational::new(BigInt::one(), BigInt::from(k));
        assert!(classify_d0(&circle(tiny(1_000_000), tiny(100_000))).unwrap().is_d0);
    }

    #[test]
    fn benchmark_families() {
        let p = generate_benchmark(Family::P, 2, 2).unwrap();
        assert_eq!(p.f()[0].to_string(), "x1^2 - 3*x1 + 2");
        assert_eq!(p.f()[1].to_string(), "x2^2 - 3*x2 + 2");
        let p3 = generate_benchmark(Family::P, 1, 3).unwrap();
        assert_eq!(p3.f()[0].to_string(), "-x1^3 + 6*x1^2 - 11*x1 + 6");
        let qf = generate_benchmark(Family::Q, 3, 2).unwrap();
        assert!(qf.f().iter().enumerate().all(|(i, f)| f.to_string() == format!("x{0}^2 - 3*x{0} + 1", i + 1)));
        assert!(generate_benchmark(Family::P, 0, 2).is_err());
        assert!(generate_benchmark(Family::Q, 2, 3).is_err());
        // every grid point of {0..d}^n solves the p family
        for d in 1..=3u32 {
            let p = generate_benchmark(Family::P, 2, d).unwrap();
            let mut count = 0;
            for a in 0..=4 {
                for b in 0..=4 {
                    if p.is_solution(&[q(a), q(b)]).unwrap() {
                        count += 1;
                    }
                }
            }
            assert_eq!(count, (d as usize + 1).pow(2));
        }
    }

    #[test]
    fn loop_bound() {
        assert_eq!(bezout_cap(2, 2), BigInt::from(36));
        // (3*2 - 1) * 36 * 35 / 2 + 1
        assert_eq!(deterministic_loop_bound(2, 2), BigInt::from(3151));
    }

    #[test]
    fn trivial_problem_representation() {
        let r = ring2();
        let ones = PcpProblem::new(vec![MPoly::one(&r), MPoly::one(&r)]).unwrap();
        let rep = univariate_representation(&ones, &HStrategy::random(7)).unwrap();
        // V(I[f,z]) = {x = 0, z1 = z2 = 0, z3, z4 = +-1}: four points
        assert_eq!(rep.deg_w(), 4);
        assert!(rep.v.iter().all(|vi| vi.is_zero()));
        let ln = least_norm_representation(&rep).unwrap();
        assert_eq!(ln.phi, Some(UPoly::zero()));
        let sp = sparse_representation(&rep).unwrap();
        assert_eq!((sp.k, sp.omega.clone()), (2, vec![vec![0, 1]]));
    }

    #[test]
    fn least_norm_phi_by_hand() {
        let rep = UnivarRep {
            w: UPoly::from_i64(&[0, -1, 1]),
            v: vec![UPoly::t()],
            phi: None,
            h_used: RationalMatrix::identity(3),
            mode: HMode::Deterministic,
            seed: None,
            s_used: Some(0),
            invert_convention: true,
        };
        assert_eq!(least_norm_representation(&rep).unwrap().phi, Some(UPoly::t()));
    }

    #[test]
    fn non_d0_is_rejected() {
        let err = univariate_representation(&circle(q(0), q(0)), &HStrategy::random(1)).unwrap_err();
        assert!(matches!(err, Error::NotD0 { .. }));
    }

    #[test]
    fn copositive_needs_positive_eps() {
        let err = copositive_solve(&circle(q(0), q(0)), &q(0), 1, &HStrategy::random(1)).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    fn ramp_strategy() -> HStrategy {
        let mut h = RationalMatrix::identity(6);
        for j in 0..6 {
            h.set(0, j, q(j as i64 + 1));
        }
        HStrategy::explicit(h, false)
    }

    fn ramp_v1() -> UPoly {
        let num = [5710973125i64, 2068565664, 5545360564, 2037780580, -167371327, -31180792, -1758766, -395708];
        let den = Rational::from_integer(BigInt::from(5710973125i64));
        UPoly::new(num.iter().map(|&c| q(c) / &den).collect())
    }

    fn ramp_route(route: ShapeRoute) {
        let w = UPoly::from_i64(&[0, -11616, -5324, -11228, -5247, 392, 78, 4, 1]);
        {
            let (rep, stats) = univariate_representation_with(&swap(), &ramp_strategy(), route).unwrap();
            assert_eq!(rep.w, w, "{route:?}");
            assert_eq!(rep.v, vec![ramp_v1(), ramp_v1()], "{route:?}");
            assert_eq!(stats.attempts, 1);
            assert_eq!(rep.real_root_count(), 4);
        }
    }

    #[test]
    fn ramp_quotient_route() {
        ramp_route(ShapeRoute::Quotient);
    }

    // dense lex Buchberger over six variables; very slow
    #[test]
    #[ignore]
    fn ramp_lex_route() {
        ramp_route(ShapeRoute::LexGroebner);
    }

    #[test]
    fn routes_agree_in_one_variable() {
        let r1 = Ring::with_prefix("x", 1, MonomialOrder::lex(1));
        let x = MPoly::var(&r1, 0);
        let f = &(&x * &x) - &x.scale(&q(3));
        let prob = PcpProblem::new(vec![&f + &MPoly::constant(&r1, q(2))]).unwrap();
        for s in [HStrategy::deterministic(), HStrategy::random(3)] {
            let (a, _) = univariate_representation_with(&prob, &s, ShapeRoute::Quotient).unwrap();
            let (b, _) = univariate_representation_with(&prob, &s, ShapeRoute::LexGroebner).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.deg_w(), 6);
        }
    }
}
