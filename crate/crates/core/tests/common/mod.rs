//! Shared fixtures and property checks for the integration and acceptance targets.
#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use pcp_univar::enumerate::{eval_mpoly_on, Solution};
use pcp_univar::groebner::{buchberger, is_reduced, satisfies_buchberger_criterion};
use pcp_univar::io::ProblemFile;
use pcp_univar::pcp::{HStrategy, PcpProblem};
use pcp_univar::poly::{MPoly, Monomial, MonomialOrder, RationalMatrix, Ring};
use pcp_univar::univar::{is_squarefree, squarefree_part, udivrem, ugcd, SturmSequence, UPoly};
use pcp_univar::zero_dim::{minimal_polynomial, radical};
use pcp_univar::Rational;

pub fn q(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

pub fn int(a: i64) -> Rational {
    q(a, 1)
}

pub fn problem(vars: &[&str], f: &[&str]) -> PcpProblem {
    ProblemFile {
        name: None,
        variables: vars.iter().map(|s| s.to_string()).collect(),
        f: f.iter().map(|s| s.to_string()).collect(),
        expected_solutions: None,
        expected_deg_w: None,
    }
    .to_problem()
    .unwrap()
}

/// `H` with first row `(1, 2, .., 6)`, used as `H = M`.
pub fn ramp_h() -> RationalMatrix {
    let mut h = RationalMatrix::identity(6);
    for j in 0..6 {
        h.set(0, j, int(j as i64 + 1));
    }
    h
}

pub fn ramp() -> (PcpProblem, HStrategy) {
    (problem(&["x1", "x2"], &["x2 - 1", "x1 - 1"]), HStrategy::explicit(ramp_h(), false))
}

/// Independent recheck of a reported solution's residual certificate.
pub fn certificate_holds(prob: &PcpProblem, s: &Solution, gamma2: &Rational) -> bool {
    let floor = -gamma2.clone();
    prob.f().iter().enumerate().all(|(i, fi)| {
        let x = &s.bounds[i];
        let fx = eval_mpoly_on(fi, &s.bounds);
        x.mul(&fx).contains_zero() && x.lo >= floor && fx.lo >= floor && x.contains(&s.values[i])
    })
}

pub fn upoly(c: &[i64]) -> UPoly {
    UPoly::from_i64(c)
}

/// Polynomial from `(exponents, coefficient)` pairs.
pub fn mpoly(ring: &Arc<Ring>, terms: &[(Vec<u32>, i64)]) -> MPoly {
    MPoly::from_terms(ring, terms.iter().map(|(e, c)| (Monomial::new(e.clone()), int(*c))))
}

pub fn ring(n: usize, order: MonomialOrder) -> Arc<Ring> {
    Ring::with_prefix("x", n, order)
}

// ----- algebra properties; each returns a description of the first violation -----

pub type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same_set(a: &[MPoly], b: &[MPoly]) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.contains(p))
}

/// Every produced basis meets the S-polynomial criterion, is reduced, and
/// does not depend on the order of the input generators.
pub fn check_groebner(gens: &[MPoly], order: &MonomialOrder, rotate: usize) -> Check {
    let g = buchberger(gens, order).map_err(|e| e.to_string())?;
    ensure(satisfies_buchberger_criterion(&g).map_err(|e| e.to_string())?, || format!("S-criterion fails for {gens:?}"))?;
    ensure(is_reduced(&g), || "basis is not reduced".into())?;
    let mut shuffled = gens.to_vec();
    shuffled.reverse();
    let len = shuffled.len();
    shuffled.rotate_left(rotate % len);
    let h = buchberger(&shuffled, order).map_err(|e| e.to_string())?;
    ensure(same_set(g.generators(), h.generators()), || "reduced basis depends on generator order".into())?;
    for p in gens {
        ensure(g.normal_form(p).map_err(|e| e.to_string())?.is_zero(), || "generator not in its own ideal".into())?;
    }
    Ok(())
}

/// `rad(rad(I)) = rad(I)`, `I` is inside `rad(I)`, and the minimal
/// polynomials of the radical are squarefree.
pub fn check_radical(gens: &[MPoly]) -> Check {
    let order = MonomialOrder::grevlex(gens[0].ring().nvars());
    let g = buchberger(gens, &order).map_err(|e| e.to_string())?;
    let r = radical(&g).map_err(|e| e.to_string())?;
    let rr = radical(&r).map_err(|e| e.to_string())?;
    ensure(same_set(r.generators(), rr.generators()), || "radical is not idempotent".into())?;
    for p in g.generators() {
        ensure(r.normal_form(p).map_err(|e| e.to_string())?.is_zero(), || "ideal not contained in its radical".into())?;
    }
    if !r.is_unit() {
        for v in 0..r.ring().nvars() {
            let m = minimal_polynomial(&r, v).map_err(|e| e.to_string())?;
            ensure(is_squarefree(&m), || format!("minimal polynomial of variable {v} is not squarefree: {m}"))?;
        }
    }
    Ok(())
}

fn divides(d: &UPoly, p: &UPoly) -> bool {
    udivrem(p, d).map(|(_, r)| r.is_zero()).unwrap_or(false)
}

/// gcd and squarefree-part identities.
pub fn check_gcd(a: &UPoly, b: &UPoly, c: &UPoly) -> Check {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Ok(());
    }
    let g = ugcd(&[a.clone(), b.clone()]).map_err(|e| e.to_string())?;
    ensure(divides(&g, a) && divides(&g, b), || format!("gcd {g} does not divide {a} and {b}"))?;
    let gc = ugcd(&[a.mul(c), b.mul(c)]).map_err(|e| e.to_string())?;
    ensure(gc == g.mul(c).monic(), || format!("gcd(ac, bc) = {gc}, expected gcd(a, b) c"))?;
    // cofactors are coprime
    let (ca, _) = udivrem(a, &g).map_err(|e| e.to_string())?;
    let (cb, _) = udivrem(b, &g).map_err(|e| e.to_string())?;
    ensure(ugcd(&[ca, cb]).map_err(|e| e.to_string())?.degree() == Some(0), || "cofactors share a factor".into())?;
    let s = squarefree_part(a).map_err(|e| e.to_string())?;
    ensure(is_squarefree(&s), || format!("squarefree part {s} has a repeated factor"))?;
    ensure(divides(&s, a), || "squarefree part does not divide the input".into())?;
    let s2 = squarefree_part(&a.mul(a).mul(b)).map_err(|e| e.to_string())?;
    let s1 = squarefree_part(&a.mul(b)).map_err(|e| e.to_string())?;
    ensure(s1 == s2, || "sqf(a^2 b) != sqf(a b)".into())?;
    Ok(())
}

/// Sturm counts over adjacent open intervals add up, and agree with a
/// polynomial whose real roots are known by construction.
pub fn check_sturm(roots: &[i64], shift: i64, cuts: (i64, i64, i64)) -> Check {
    let mut rs = roots.to_vec();
    rs.sort();
    rs.dedup();
    // prod (x - r) * (x^2 + 1 + shift^2) has exactly the real roots rs
    let mut p = upoly(&[1 + shift * shift, 0, 1]);
    for r in &rs {
        p = p.mul(&upoly(&[-r, 1]));
    }
    let seq = SturmSequence::new(&p).map_err(|e| e.to_string())?;
    let mut c = [cuts.0, cuts.1, cuts.2];
    c.sort();
    let (a, b, cc) = (q(2 * c[0] - 1, 2), int(c[1]), q(2 * c[2] + 1, 2));
    let at_b = usize::from(p.eval(&b).is_zero());
    ensure(seq.count(&a, &cc) == seq.count(&a, &b) + seq.count(&b, &cc) + at_b, || {
        format!("additivity fails for roots {rs:?} at cuts {c:?}")
    })?;
    let brute = rs.iter().filter(|&&r| int(r) > a && int(r) < cc).count();
    ensure(seq.count(&a, &cc) == brute, || format!("Sturm count {} vs brute force {brute}", seq.count(&a, &cc)))
}

/// `p(H (H^-1 y)) = p(y)` and `(p o H)(y) = p(H y)` at a sample point.
pub fn check_substitution(p: &MPoly, first_row: &[i64], lower: &[i64], point: &[i64]) -> Check {
    let n = p.ring().nvars();
    let mut h = RationalMatrix::identity(n);
    // unit upper-triangular first row times a unit lower-triangular column: always invertible
    for j in 1..n {
        h.set(0, j, int(first_row[j % first_row.len()]));
        h.set(j, 0, int(lower[j % lower.len()]));
    }
    h.set(0, 0, int(1) + int(first_row[0]).abs());
    let hinv = match h.inverse() {
        Ok(m) => m,
        Err(_) => return Ok(()),
    };
    let ring = p.ring().clone();
    let ph = p.substitute_linear(&h, &ring).map_err(|e| e.to_string())?;
    let back = ph.substitute_linear(&hinv, &ring).map_err(|e| e.to_string())?;
    ensure(&back == p, || format!("round trip changed {p} into {back}"))?;
    let y: Vec<Rational> = (0..n).map(|i| int(point[i % point.len()])).collect();
    let hy = h.mul_vec(&y).map_err(|e| e.to_string())?;
    let lhs = ph.evaluate(&y).map_err(|e| e.to_string())?;
    let rhs = p.evaluate(&hy).map_err(|e| e.to_string())?;
    ensure(lhs == rhs, || format!("(p o H)(y) = {lhs} but p(Hy) = {rhs}"))
}

/// Zero-dimensional generators in two variables with repeated factors:
/// `(x1 - a)^2 (x1 - b) + (c x2 + e)` and `(x2 - c)^2 + (d x1 + e)`; the
/// pure-power leading terms keep the ideal zero-dimensional in grevlex.
pub fn zero_dim_pair(a: i64, b: i64, c: i64, d: i64, e: i64) -> Vec<MPoly> {
    let r = ring(2, MonomialOrder::grevlex(2));
    let x1 = MPoly::var(&r, 0);
    let x2 = MPoly::var(&r, 1);
    let k = |v: i64| MPoly::constant(&r, int(v));
    let l1 = &x1 - &k(a);
    let g1 = &(&(&l1 * &l1) * &(&x1 - &k(b))) + &(&x2.scale(&int(c)) + &k(e));
    let l2 = &x2 - &k(c);
    let g2 = &(&l2 * &l2) + &(&x1.scale(&int(d)) + &k(e));
    vec![g1, g2]
}
