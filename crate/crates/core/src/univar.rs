//! Dense univariate polynomials over Q and exact real-root isolation.
//!
//! Roots are isolated by Sturm-sequence bisection starting from the Cauchy
//! bound, then refined by sign bisection. Every interval endpoint stays an
//! exact rational, so containment claims are certificates rather than
//! floating-point estimates.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::poly::{MPoly, Monomial, Ring};
use crate::Rational;

/// Coefficients lowest degree first; the last one is nonzero unless the polynomial is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `t - r`
    pub fn linear_root(r: Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> UPoly {
        match self.leading_coeff() {
            None => UPoly::zero(),
            Some(lc) => {
                let inv = lc.recip();
                UPoly { coeffs: self.coeffs.iter().map(|c| c * &inv).collect() }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> UPoly {
        UPoly { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        // integer convolution over a common denominator, one reduction per coefficient
        let (a, da) = scaled(&self.coeffs);
        let (b, db) = scaled(&o.coeffs);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let d = da * db;
        UPoly::new(out.into_iter().map(|c| Rational::new(c, d.clone())).collect())
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Sign of `p(x)` computed with integer arithmetic only.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let ints = integer_coeffs(&self.coeffs);
        sign_of_int_poly(&ints, x)
    }

    /// Remainder modulo `m`; `m` must be nonzero.
    pub fn rem(&self, m: &UPoly) -> Result<UPoly> {
        Ok(udivrem(self, m)?.1)
    }

    /// Interval enclosure of `p` over `x` by Horner's scheme.
    pub fn eval_on(&self, x: &Interval) -> Interval {
        if x.lo == x.hi {
            return Interval::point(self.eval(&x.lo));
        }
        let mut acc = Interval::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add_scalar(c);
        }
        acc
    }

    /// Lifts to a polynomial in variable `var` of `ring`.
    pub fn to_mpoly(&self, ring: &Arc<Ring>, var: usize) -> MPoly {
        let n = ring.nvars();
        MPoly::from_terms(
            ring,
            self.coeffs.iter().enumerate().map(|(i, c)| (Monomial::var_pow(n, var, i as u32), c.clone())),
        )
    }

    /// Reads a polynomial involving only `var`.
    pub fn from_mpoly(p: &MPoly, var: usize) -> Result<UPoly> {
        let mut coeffs = vec![Rational::zero(); p.degree_in(var) as usize + 1];
        for (m, c) in p.terms() {
            if m.exponents().iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return Err(Error::Domain(format!("{p} is not univariate in variable {var}")));
            }
            coeffs[m.exponents()[var] as usize] = c.clone();
        }
        Ok(UPoly::new(coeffs))
    }

    pub fn fmt_in(&self, var: &str) -> String {
        let ring = Ring::new(vec![var.to_string()], crate::poly::MonomialOrder::lex(1)).unwrap();
        self.to_mpoly(&ring, 0).to_string()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_in("t"))
    }
}

/// Scales rational coefficients to coprime integers (positive multiple).
fn integer_coeffs(coeffs: &[Rational]) -> Vec<BigInt> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|c| c / &g).collect()
    }
}

/// Sign of `sum c_i (a/b)^i` via the homogenised form `sum c_i a^i b^(n-i)` (b > 0).
fn sign_of_int_poly(c: &[BigInt], x: &Rational) -> i8 {
    let a = x.numer();
    let b = x.denom();
    let mut acc = BigInt::zero();
    let mut bpow = BigInt::one();
    // Horner over homogenised coefficients: acc = acc*a + c_i*b^(n-i)
    for ci in c.iter().rev() {
        acc = acc * a + ci * &bpow;
        bpow *= b;
    }
    match acc.sign() {
        Sign::Plus => 1,
        Sign::Minus => -1,
        Sign::NoSign => 0,
    }
}

/// `coeffs = ints / den` exactly, `den` the lcm of the denominators.
fn scaled(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (ints, den)
}

pub fn udivrem(a: &UPoly, b: &UPoly) -> Result<(UPoly, UPoly)> {
    let db = b.degree().ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
    let Some(da) = a.degree() else {
        return Ok((UPoly::zero(), UPoly::zero()));
    };
    if da < db {
        return Ok((UPoly::zero(), a.clone()));
    }
    // L^(da-db+1) A = Q B + R over the integers, with a = A/ea and b = B/eb
    let (ai, ea) = scaled(&a.coeffs);
    let (bi, eb) = scaled(&b.coeffs);
    let lc = bi[db].clone();
    let mut r = ai;
    let mut q = vec![BigInt::zero(); da - db + 1];
    let mut unused = da - db + 1;
    for k in (0..=da - db).rev() {
        let lead = std::mem::take(&mut r[k + db]);
        if !lc.is_one() {
            for x in r.iter_mut().chain(q.iter_mut()) {
                *x *= &lc;
            }
        }
        unused -= 1;
        if lead.is_zero() {
            continue;
        }
        for (j, bj) in bi[..db].iter().enumerate() {
            if !bj.is_zero() {
                r[k + j] -= &lead * bj;
            }
        }
        q[k] = lead;
    }
    debug_assert_eq!(unused, 0);
    r.truncate(db);
    let lpow = num_traits::pow(lc, da - db + 1);
    let qd = &lpow * &ea;
    let rd = lpow * ea;
    let quo = UPoly::new(q.into_iter().map(|c| Rational::new(c * &eb, qd.clone())).collect());
    let rem = UPoly::new(r.into_iter().map(|c| Rational::new(c, rd.clone())).collect());
    Ok((quo, rem))
}

/// `lc(b)^(deg a - deg b + 1) a mod b`, all over the integers.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lc = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return r;
    }
    let mut unused = r.len() - b.len() + 1;
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let lead = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &lead * bj;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        unused -= 1;
    }
    if unused > 0 && !r.is_empty() {
        let f = num_traits::pow(lc.clone(), unused);
        for x in r.iter_mut() {
            *x *= &f;
        }
    }
    r
}

fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Plus => 1,
        Sign::Minus => -1,
        Sign::NoSign => 0,
    }
}

/// Subresultant remainder sequence of `a`, `b` (`deg a >= deg b`, both nonzero).
/// Each member comes with a sign so that `sign * member` is a positive
/// multiple of the Euclidean remainder sequence `r_{i+1} = -rem(r_{i-1}, r_i)`.
fn subresultant_prs(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<(Vec<BigInt>, i8)> {
    let mut seq = vec![(a, 1i8), (b, 1i8)];
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let i = seq.len() - 1;
        let (pa, sa) = (&seq[i - 1].0, seq[i - 1].1);
        let pb = &seq[i].0;
        if pb.len() == 1 {
            break;
        }
        let delta = pa.len() - pb.len();
        let r = prem(pa, pb);
        if r.is_empty() {
            break;
        }
        let beta = &g * num_traits::pow(h.clone(), delta);
        let lcb = pb.last().unwrap().clone();
        let lc_sign = if (delta + 1) % 2 == 0 { 1 } else { sign_of(&lcb) };
        let sigma = -sa * lc_sign * sign_of(&beta);
        let next: Vec<BigInt> = r.into_iter().map(|c| c / &beta).collect();
        g = lcb;
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1)
        };
        seq.push((next, sigma));
    }
    seq
}

fn gcd2(a: &UPoly, b: &UPoly) -> UPoly {
    let (a, b) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
    if b.is_zero() {
        return a.monic();
    }
    let g = crate::modular::gcd_int(&integer_coeffs(&a.coeffs), &integer_coeffs(&b.coeffs));
    UPoly::new(g.into_iter().map(Rational::from_integer).collect()).monic()
}

/// Same as the modular gcd, by the subresultant sequence; kept as an independent check.
#[cfg(test)]
fn gcd_subresultant(a: &UPoly, b: &UPoly) -> UPoly {
    let (a, b) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
    if b.is_zero() {
        return a.monic();
    }
    let seq = subresultant_prs(integer_coeffs(&a.coeffs), integer_coeffs(&b.coeffs));
    let last = &seq.last().unwrap().0;
    UPoly::new(last.iter().map(|c| Rational::from_integer(c.clone())).collect()).monic()
}

/// Monic gcd of all inputs.
pub fn ugcd(ps: &[UPoly]) -> Result<UPoly> {
    if ps.iter().all(UPoly::is_zero) {
        return Err(Error::Domain("gcd of zero polynomials only".into()));
    }
    let mut g = UPoly::zero();
    for p in ps {
        g = gcd2(&g, p);
        if g.degree() == Some(0) {
            break;
        }
    }
    Ok(g)
}

/// `p / gcd(p, p')`, monic.
pub fn squarefree_part(p: &UPoly) -> Result<UPoly> {
    if p.is_zero() {
        return Err(Error::Domain("squarefree part of the zero polynomial".into()));
    }
    let g = gcd2(p, &p.derivative());
    Ok(udivrem(p, &g)?.0.monic())
}

pub fn is_squarefree(p: &UPoly) -> bool {
    !p.is_zero() && gcd2(p, &p.derivative()).degree() == Some(0)
}

/// Sturm chain of a squarefree polynomial, each member stored as primitive integers.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<Vec<BigInt>>,
}

impl SturmSequence {
    pub fn new(p: &UPoly) -> Result<Self> {
        let not_squarefree = || Error::Domain(format!("Sturm sequence needs a squarefree polynomial, got {p}"));
        match p.degree() {
            None => return Err(not_squarefree()),
            Some(0) => return Ok(SturmSequence { chain: vec![integer_coeffs(&p.coeffs)] }),
            _ => {}
        }
        let seq = subresultant_prs(integer_coeffs(&p.coeffs), integer_coeffs(&p.derivative().coeffs));
        if seq.last().unwrap().0.len() != 1 {
            return Err(not_squarefree());
        }
        let chain = seq
            .into_iter()
            .map(|(c, s)| if s < 0 { c.into_iter().map(|x| -x).collect() } else { c })
            .collect();
        Ok(SturmSequence { chain })
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for q in &self.chain {
            let s = sign_of_int_poly(q, x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct roots in the open interval `(lo, hi)`. For a squarefree
    /// polynomial, `V(a) - V(b)` counts the roots in `(a, b]` even when an
    /// endpoint is itself a root, so a root at `hi` is subtracted exactly.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        let v = self.variations(lo) - self.variations(hi);
        if sign_of_int_poly(&self.chain[0], hi) == 0 {
            v - 1
        } else {
            v
        }
    }

    fn sign(&self, x: &Rational) -> i8 {
        sign_of_int_poly(&self.chain[0], x)
    }
}

/// Number of real roots of the squarefree `p` in the open interval `(lo, hi)`.
pub fn sturm_count(p: &UPoly, lo: &Rational, hi: &Rational) -> Result<usize> {
    if lo >= hi {
        return Err(Error::Domain(format!("empty interval ({lo}, {hi})")));
    }
    Ok(SturmSequence::new(p)?.count(lo, hi))
}

/// `1 + max |a_i / a_n|`, a strict bound on the modulus of every root.
pub fn cauchy_bound(p: &UPoly) -> Rational {
    let lc = p.leading_coeff().expect("nonzero polynomial").abs();
    let n = p.coeffs.len() - 1;
    let m = p.coeffs[..n].iter().map(|c| c.abs() / &lc).max().unwrap_or_else(Rational::zero);
    Rational::one() + m
}

/// A rational interval holding exactly one real root of a squarefree polynomial.
/// Non-degenerate intervals have endpoints of opposite sign; `lo == hi` marks an exact root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity_free: bool,
}

impl IsolatedRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn as_interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn midpoint(&self) -> Rational {
        self.as_interval().midpoint()
    }
}

fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

/// The rational with smallest denominator (then numerator) in `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// `2^(k+2)` where `|a_(n-i) / a_n| <= 2^(k i)` for every `i`. Fujiwara's
/// bound puts every root at modulus at most `2^(k+1)`, so this one is strict.
/// It tracks the true root size far better than the Cauchy bound when
/// coefficients are large.
pub fn root_bound(p: &UPoly) -> Rational {
    let n = p.degree().expect("nonzero polynomial");
    let lc = p.leading_coeff().unwrap().abs();
    let mut k: usize = 0;
    for i in 1..=n {
        let ratio = p.coeffs[n - i].abs() / &lc;
        if ratio.is_zero() {
            continue;
        }
        while Rational::from_integer(BigInt::one() << (k * i)) < ratio {
            k += 1;
        }
    }
    Rational::from_integer(BigInt::one() << (k + 2))
}

/// Isolates every distinct real root of `p`, each interval of width at most
/// `precision`, sorted ascending. Exact rational roots come back as points.
pub fn isolate_real_roots(p: &UPoly, precision: &Rational) -> Result<Vec<IsolatedRoot>> {
    if p.is_zero() {
        return Err(Error::Domain("the zero polynomial has infinitely many roots".into()));
    }
    if !precision.is_positive() {
        return Err(Error::Domain(format!("precision must be positive, got {precision}")));
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let multiplicity_free = is_squarefree(p);
    let q = squarefree_part(p)?;
    let sturm = SturmSequence::new(&q)?;
    let b = root_bound(&q);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b.clone(), sturm.count(&-b.clone(), &b))];
    while let Some((lo, hi, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push(refine_in(&sturm, lo, hi, precision, multiplicity_free)),
            _ => {
                let mid = (&lo + &hi) * half();
                if sturm.sign(&mid) == 0 {
                    out.push(IsolatedRoot { lo: mid.clone(), hi: mid.clone(), multiplicity_free });
                }
                let left = sturm.count(&lo, &mid);
                let right = sturm.count(&mid, &hi);
                stack.push((lo, mid.clone(), left));
                stack.push((mid, hi, right));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Narrows an open interval `(lo, hi)` holding exactly one root.
fn refine_in(sturm: &SturmSequence, mut lo: Rational, mut hi: Rational, width: &Rational, mf: bool) -> IsolatedRoot {
    // endpoints may be roots (previous split points); count-based steps move them off
    while sturm.sign(&lo) == 0 || sturm.sign(&hi) == 0 {
        let mid = (&lo + &hi) * half();
        if sturm.sign(&mid) == 0 {
            return IsolatedRoot { lo: mid.clone(), hi: mid, multiplicity_free: mf };
        }
        if sturm.count(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let root = IsolatedRoot { lo, hi, multiplicity_free: mf };
    refine_signs(&sturm.chain[0], root, width)
}

fn refine_signs(p: &[BigInt], mut root: IsolatedRoot, width: &Rational) -> IsolatedRoot {
    if root.is_exact() {
        return root;
    }
    let slo = sign_of_int_poly(p, &root.lo);
    while &root.width() > width {
        let mid = root.midpoint();
        let s = sign_of_int_poly(p, &mid);
        if s == 0 {
            return IsolatedRoot { lo: mid.clone(), hi: mid, multiplicity_free: root.multiplicity_free };
        }
        if s == slo {
            root.lo = mid;
        } else {
            root.hi = mid;
        }
    }
    let cand = simplest_between(&root.lo, &root.hi);
    if sign_of_int_poly(p, &cand) == 0 {
        return IsolatedRoot { lo: cand.clone(), hi: cand, multiplicity_free: root.multiplicity_free };
    }
    root
}

/// Refines an interval produced by [`isolate_real_roots`] for the squarefree `p`.
pub fn refine_root(p: &UPoly, root: &IsolatedRoot, width: &Rational) -> IsolatedRoot {
    refine_signs(&integer_coeffs(p.coeffs()), root.clone(), width)
}

/// Exact rational bounds on `p(tau)` for the root `tau` bracketed by `r`.
pub fn eval_interval(p: &UPoly, r: &IsolatedRoot) -> (Rational, Rational) {
    let i = p.eval_on(&r.as_interval());
    (i.lo, i.hi)
}
