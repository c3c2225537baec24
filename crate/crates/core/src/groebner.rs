//! Buchberger's algorithm with the normal selection strategy and both of
//! Buchberger's pair criteria, producing reduced Gröbner bases over Q.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{MPoly, Monomial, MonomialOrder, OrderKey, Ring};
use crate::Rational;

/// A reduced Gröbner basis: monic, inter-reduced, sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    generators: Vec<MPoly>,
    zero_dimensional: bool,
    quotient_dimension: Option<usize>,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn zero_dimensional(&self) -> bool {
        self.zero_dimensional
    }

    /// Number of standard monomials, for zero-dimensional ideals.
    pub fn quotient_dimension(&self) -> Option<usize> {
        self.quotient_dimension
    }

    /// Basis of the whole ring, i.e. the ideal contains 1.
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.generators.iter().map(|g| g.leading_monomial().expect("nonzero generator")).collect()
    }

    pub fn normal_form(&self, p: &MPoly) -> Result<MPoly> {
        normal_form(p, &self.generators)
    }

    pub fn contains(&self, p: &MPoly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Wraps generators the caller knows to form a reduced basis.
    pub(crate) fn from_reduced(ring: &Arc<Ring>, generators: Vec<MPoly>) -> Self {
        let mut gb = GroebnerBasis { ring: ring.clone(), generators, zero_dimensional: false, quotient_dimension: None };
        gb.zero_dimensional = is_zero_dimensional(&gb).0;
        if gb.zero_dimensional {
            gb.quotient_dimension = quotient_monomial_basis(&gb).ok().map(|b| b.len());
        }
        gb
    }
}

struct Reducer {
    lm: Monomial,
    lc_inv: Rational,
}

fn reducers(gs: &[MPoly]) -> Vec<Reducer> {
    gs.iter()
        .map(|g| {
            let (m, c) = g.lead().expect("nonzero reducer");
            Reducer { lm: m.clone(), lc_inv: c.recip() }
        })
        .collect()
}

/// Full multivariate division remainder of `p` by `gs` under the ring's ordering.
pub fn normal_form(p: &MPoly, gs: &[MPoly]) -> Result<MPoly> {
    for g in gs {
        if g.ring() != p.ring() {
            return Err(Error::Structure("normal form across different rings".into()));
        }
        if g.is_zero() {
            return Err(Error::Domain("zero polynomial among the divisors".into()));
        }
    }
    let ring = p.ring();
    let order = ring.order();
    let reds = reducers(gs);
    let mut work: BTreeMap<OrderKey, (Monomial, Rational)> =
        p.terms().iter().map(|(m, c)| (order.key(m), (m.clone(), c.clone()))).collect();
    let mut rem = Vec::new();
    while let Some((_, (m, c))) = work.pop_last() {
        match reds.iter().position(|r| r.lm.divides(&m)) {
            Some(i) => {
                let factor = &c * &reds[i].lc_inv;
                let shift = reds[i].lm.quotient_of(&m).unwrap();
                for (tm, tc) in gs[i].terms().iter().skip(1) {
                    let nm = tm.mul(&shift);
                    let key = order.key(&nm);
                    let delta = &factor * tc;
                    match work.entry(key) {
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            e.get_mut().1 -= delta;
                            if e.get().1.is_zero() {
                                e.remove();
                            }
                        }
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert((nm, -delta));
                        }
                    }
                }
            }
            None => rem.push((m, c)),
        }
    }
    Ok(MPoly::from_sorted_terms(ring, rem))
}

/// Division with cofactors: returns `(q, r)` with `p = sum q_i g_i + r`.
pub fn divide(p: &MPoly, gs: &[MPoly]) -> Result<(Vec<MPoly>, MPoly)> {
    let ring = p.ring();
    let reds = reducers(gs);
    let mut quotients = vec![MPoly::zero(ring); gs.len()];
    let mut rest = p.clone();
    let mut rem = MPoly::zero(ring);
    while let Some((m, c)) = rest.lead().map(|(m, c)| (m.clone(), c.clone())) {
        match reds.iter().position(|r| r.lm.divides(&m)) {
            Some(i) => {
                let factor = &c * &reds[i].lc_inv;
                let shift = reds[i].lm.quotient_of(&m).unwrap();
                quotients[i] = quotients[i].checked_add(&MPoly::monomial(ring, shift.clone(), factor.clone()))?;
                rest = rest.checked_sub(&gs[i].mul_term(&shift, &factor))?;
            }
            None => {
                let lt = MPoly::monomial(ring, m, c);
                rem = rem.checked_add(&lt)?;
                rest = rest.checked_sub(&lt)?;
            }
        }
    }
    Ok((quotients, rem))
}

pub fn s_polynomial(f: &MPoly, g: &MPoly) -> MPoly {
    let (mf, cf) = f.lead().expect("nonzero");
    let (mg, cg) = g.lead().expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&l).unwrap(), &cf.recip());
    let b = g.mul_term(&mg.quotient_of(&l).unwrap(), &cg.recip());
    &a - &b
}

/// Deterministic ordering of generators: degree, then leading monomial, then term sequence.
fn canonical_cmp(order: &MonomialOrder, a: &MPoly, b: &MPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| match (a.leading_monomial(), b.leading_monomial()) {
            (Some(x), Some(y)) => order.cmp(x, y),
            _ => std::cmp::Ordering::Equal,
        })
        .then_with(|| {
            for (s, t) in a.terms().iter().zip(b.terms()) {
                let o = order.cmp(&s.0, &t.0).then_with(|| s.1.cmp(&t.1));
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            a.len().cmp(&b.len())
        })
}

struct Pair {
    i: usize,
    j: usize,
    deg: u32,
    key: OrderKey,
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
pub fn buchberger(gens: &[MPoly], order: &MonomialOrder) -> Result<GroebnerBasis> {
    let first = gens.first().ok_or_else(|| Error::Domain("no generators".into()))?;
    let src = first.ring().clone();
    if gens.iter().any(|g| g.ring() != &src) {
        return Err(Error::Structure("generators from different rings".into()));
    }
    let ring = if src.order() == order { src.clone() } else { src.reorder(order.clone())? };
    let mut basis: Vec<MPoly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.to_ring(&ring)?.monic());
        }
    }
    basis.sort_by(|a, b| canonical_cmp(order, a, b));
    basis.dedup();
    if basis.is_empty() {
        return Ok(GroebnerBasis::from_reduced(&ring, Vec::new()));
    }
    if basis.iter().any(MPoly::is_constant) {
        return Ok(GroebnerBasis::from_reduced(&ring, vec![MPoly::one(&ring)]));
    }

    let mut pending: Vec<Pair> = Vec::new();
    let mut open: HashSet<(usize, usize)> = HashSet::new();
    let push_pair = |pending: &mut Vec<Pair>, open: &mut HashSet<(usize, usize)>, basis: &[MPoly], i: usize, j: usize| {
        let l = basis[i].leading_monomial().unwrap().lcm(basis[j].leading_monomial().unwrap());
        pending.push(Pair { i, j, deg: l.degree(), key: order.key(&l) });
        open.insert((i, j));
    };
    for j in 1..basis.len() {
        for i in 0..j {
            push_pair(&mut pending, &mut open, &basis, i, j);
        }
    }

    while !pending.is_empty() {
        let best = (0..pending.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pending[a], &pending[b]);
                (p.deg, &p.key, p.j, p.i).cmp(&(q.deg, &q.key, q.j, q.i))
            })
            .unwrap();
        let Pair { i, j, .. } = pending.swap_remove(best);
        open.remove(&(i, j));

        let lmi = basis[i].leading_monomial().unwrap();
        let lmj = basis[j].leading_monomial().unwrap();
        if lmi.is_coprime(lmj) {
            continue;
        }
        let l = lmi.lcm(lmj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !open.contains(&(i.min(k), i.max(k)))
                && !open.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let h = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(GroebnerBasis::from_reduced(&ring, vec![MPoly::one(&ring)]));
        }
        basis.push(h.monic());
        let new = basis.len() - 1;
        for k in 0..new {
            push_pair(&mut pending, &mut open, &basis, k, new);
        }
    }
    Ok(GroebnerBasis::from_reduced(&ring, reduce_basis(basis)?))
}

/// Turns a Gröbner basis into the reduced one.
fn reduce_basis(mut basis: Vec<MPoly>) -> Result<Vec<MPoly>> {
    let order = basis[0].ring().order().clone();
    basis.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<MPoly> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(lm)) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let g = &minimal[idx];
        let others: Vec<MPoly> =
            minimal.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, h)| h.clone()).collect();
        let (lm, lc) = g.lead().unwrap();
        let lt = MPoly::monomial(g.ring(), lm.clone(), lc.clone());
        let tail = g.checked_sub(&lt)?;
        let tail = if others.is_empty() { tail } else { normal_form(&tail, &others)? };
        reduced.push(lt.checked_add(&tail)?.monic());
    }
    Ok(reduced)
}

/// True iff every variable has a pure power among the leading monomials;
/// otherwise the first variable lacking one.
pub fn is_zero_dimensional(g: &GroebnerBasis) -> (bool, Option<usize>) {
    if g.is_unit() {
        return (true, None);
    }
    let n = g.ring.nvars();
    let mut covered = vec![false; n];
    for m in g.leading_monomials() {
        if let Some(v) = m.pure_power_var() {
            covered[v] = true;
        }
    }
    match covered.iter().position(|c| !c) {
        None => (true, None),
        Some(v) => (false, Some(v)),
    }
}

/// Standard monomials of a zero-dimensional basis, ascending in the basis order.
pub fn quotient_monomial_basis(g: &GroebnerBasis) -> Result<Vec<Monomial>> {
    let (zd, witness) = is_zero_dimensional(g);
    if !zd {
        return Err(Error::Domain(format!(
            "ideal is positive dimensional (no pure power of variable {})",
            witness.unwrap_or(0)
        )));
    }
    if g.is_unit() {
        return Ok(Vec::new());
    }
    let n = g.ring.nvars();
    let lms: Vec<Monomial> = g.leading_monomials().into_iter().cloned().collect();
    let standard = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut queue = VecDeque::new();
    let one = Monomial::one(n);
    seen.insert(one.clone());
    queue.push_back(one);
    let mut out = Vec::new();
    while let Some(m) = queue.pop_front() {
        for v in 0..n {
            let next = m.mul(&Monomial::var(n, v));
            if standard(&next) && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        out.push(m);
    }
    let order = g.order();
    out.sort_by(|a, b| order.cmp(a, b));
    Ok(out)
}

/// Checks Buchberger's criterion: every S-polynomial reduces to zero.
pub fn satisfies_buchberger_criterion(g: &GroebnerBasis) -> Result<bool> {
    let gs = g.generators();
    for j in 0..gs.len() {
        for i in 0..j {
            if !normal_form(&s_polynomial(&gs[i], &gs[j]), gs)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks the reduced-basis conditions: monic, and no term of any generator
/// divisible by another generator's leading monomial.
pub fn is_reduced(g: &GroebnerBasis) -> bool {
    let gs = g.generators();
    gs.iter().enumerate().all(|(i, p)| {
        p.leading_coeff().is_some_and(One::is_one)
            && p.terms().iter().all(|(m, _)| {
                gs.iter().enumerate().all(|(k, h)| k == i || !h.leading_monomial().unwrap().divides(m))
            })
    })
}
