//! Sparse multivariate polynomials over Q.
//!
//! Terms are kept sorted by the ring's monomial ordering, largest first, with
//! no zero coefficients. All operations return canonical polynomials.

mod matrix;
mod monomial;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

pub use matrix::{bareiss_solve, RationalMatrix};
pub use monomial::{Monomial, MonomialOrder, OrderKey, OrderKind, Ring};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Debug)]
pub struct MPoly {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for MPoly {}

fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl MPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        MPoly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        MPoly { ring: ring.clone(), terms: vec![(Monomial::var(ring.nvars(), index), Rational::one())] }
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Builds a canonical polynomial, merging duplicate monomials and dropping zeros.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<Ring>, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MPoly { ring: ring.clone(), terms }
    }

    /// Trusts the caller: terms already sorted descending with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, Rational)>) -> Self {
        MPoly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Largest exponent of a single variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponents()[var]).max().unwrap_or(0)
    }

    /// Leading monomial and coefficient under the ring's own ordering.
    pub fn lead(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Leading term under an arbitrary ordering of the same variables.
    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(Monomial, Rational)> {
        if order.nvars() != self.ring.nvars() {
            return Err(Error::Structure("ordering ranks a different number of variables".into()));
        }
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .cloned()
            .ok_or_else(|| Error::Domain("leading term of the zero polynomial".into()))
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.ring.nvars()))
    }

    fn check_ring(&self, other: &MPoly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::Structure(format!(
                "ring mismatch: {:?} vs {:?}",
                self.ring.names(),
                other.ring.names()
            )))
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &MPoly, negate: bool) -> MPoly {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
                (Some(_), None) => std::cmp::Ordering::Greater,
                _ => std::cmp::Ordering::Less,
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { -c } else { c.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].1 - &other.terms[j].1
                    } else {
                        &self.terms[i].1 + &other.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MPoly { ring: self.ring.clone(), terms: out }
    }

    fn mul_unchecked(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero(&self.ring);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Self::from_map(&self.ring, acc)
    }

    pub fn neg(&self) -> MPoly {
        MPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Multiplies by `c * m`; order compatibility keeps the terms sorted.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    /// Power with a signed exponent; negative exponents are a domain error.
    pub fn pow(&self, exp: i64) -> Result<MPoly> {
        if exp < 0 {
            return Err(Error::Domain(format!("negative exponent {exp}")));
        }
        Ok(self.pow_u32(exp as u32))
    }

    pub fn pow_u32(&self, mut exp: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(&self.ring);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> MPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.nvars() {
            return Err(Error::Structure(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.ring.nvars()
            )));
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Re-expresses the polynomial in a ring with the same variables but another ordering.
    pub fn to_ring(&self, ring: &Arc<Ring>) -> Result<MPoly> {
        if ring.nvars() != self.ring.nvars() {
            return Err(Error::Structure("target ring has a different variable count".into()));
        }
        let mut terms = self.terms.clone();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Ok(MPoly { ring: ring.clone(), terms })
    }

    /// Returns `p(H y)`: variable `j` is replaced by `sum_k H[j][k] * y_k`,
    /// the result living in `target` (same variable count).
    pub fn substitute_linear(&self, h: &RationalMatrix, target: &Arc<Ring>) -> Result<MPoly> {
        let n = self.ring.nvars();
        if !h.is_square() || h.rows() != n || target.nvars() != n {
            return Err(Error::Structure(format!(
                "substitution matrix {}x{} against {} variables",
                h.rows(),
                h.cols(),
                n
            )));
        }
        h.inverse()?;
        let forms: Vec<MPoly> = (0..n)
            .map(|j| {
                MPoly::from_terms(
                    target,
                    (0..n).map(|k| (Monomial::var(n, k), h.get(j, k).clone())),
                )
            })
            .collect();
        let mut powers: Vec<Vec<MPoly>> = forms.iter().map(|f| vec![MPoly::one(target), f.clone()]).collect();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (j, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap().mul_unchecked(&forms[j]);
                    powers[j].push(next);
                }
                t = t.mul_unchecked(&powers[j][e as usize]);
            }
            for (tm, tc) in t.terms {
                *acc.entry(tm).or_insert_with(Rational::zero) += tc;
            }
        }
        Ok(MPoly::from_map(target, acc))
    }

    /// Variables actually occurring in the polynomial.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for v in m.support() {
                seen[v] = true;
            }
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i).collect()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                self.ring.fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&MPoly> for &MPoly {
            type Output = MPoly;
            /// Panics when the rings differ; use the checked method to get an error instead.
            fn $method(self, rhs: &MPoly) -> MPoly {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }
        impl std::ops::$tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly::neg(self)
    }
}
