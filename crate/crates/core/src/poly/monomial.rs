use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Exponent vector of a monomial; its length is the ambient variable count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn var_pow(nvars: usize, index: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// If this is a pure power `x_i^k` with `k >= 1`, the variable index.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    Grevlex,
}

/// A monomial ordering. `precedence` lists variable indices from the
/// smallest variable to the largest, so `lex` with precedence `[0, 1, .., n-1]`
/// is the lexicographic order with `x1 < x2 < ... < xn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, precedence: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; precedence.len()];
        for &p in &precedence {
            if p >= seen.len() || seen[p] {
                return Err(Error::Structure(format!(
                    "variable precedence {precedence:?} is not a permutation"
                )));
            }
            seen[p] = true;
        }
        Ok(MonomialOrder { kind, precedence })
    }

    /// Lex with the first variable smallest.
    pub fn lex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::Lex, precedence: (0..nvars).collect() }
    }

    /// Grevlex with the first variable smallest.
    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::Grevlex, precedence: (0..nvars).collect() }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self.kind {
            OrderKind::Lex => {
                for &v in self.precedence.iter().rev() {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                if da != db {
                    return da.cmp(&db);
                }
                for &v in &self.precedence {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// A key whose natural `Ord` agrees with this ordering.
    pub fn key(&self, m: &Monomial) -> OrderKey {
        let e = m.exponents();
        match self.kind {
            OrderKind::Lex => OrderKey(self.precedence.iter().rev().map(|&v| e[v] as i64).collect()),
            OrderKind::Grevlex => {
                let mut k = Vec::with_capacity(e.len() + 1);
                k.push(m.degree() as i64);
                k.extend(self.precedence.iter().map(|&v| -(e[v] as i64)));
                OrderKey(k)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey(Vec<i64>);

/// Variable names plus the monomial ordering of a polynomial ring over Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(names: Vec<String>, order: MonomialOrder) -> Result<Arc<Ring>> {
        if names.len() != order.nvars() {
            return Err(Error::Structure(format!(
                "{} variable names but the ordering ranks {} variables",
                names.len(),
                order.nvars()
            )));
        }
        Ok(Arc::new(Ring { names, order }))
    }

    /// Ring with names `{prefix}1 .. {prefix}n` and the given order.
    pub fn with_prefix(prefix: &str, nvars: usize, order: MonomialOrder) -> Arc<Ring> {
        let names = (1..=nvars).map(|i| format!("{prefix}{i}")).collect();
        Ring::new(names, order).expect("order sized to nvars")
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Same variables under a different ordering.
    pub fn reorder(&self, order: MonomialOrder) -> Result<Arc<Ring>> {
        Ring::new(self.names.clone(), order)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub(crate) fn fmt_monomial(&self, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn lex_respects_precedence() {
        let lex = MonomialOrder::lex(2);
        assert_eq!(lex.cmp(&m(&[0, 1]), &m(&[1, 0])), Ordering::Greater);
        assert_eq!(lex.cmp(&m(&[5, 0]), &m(&[0, 1])), Ordering::Less);
        let rev = MonomialOrder::new(OrderKind::Lex, vec![1, 0]).unwrap();
        assert_eq!(rev.cmp(&m(&[5, 0]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn grevlex_ties() {
        // x1 smallest: among degree-2 monomials x3^2 > x2*x3 > x2^2 > x1*x3 > ...
        let g = MonomialOrder::grevlex(3);
        let mut ms = vec![m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])];
        ms.sort_by(|a, b| g.cmp(a, b));
        assert_eq!(ms, vec![m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[1, 0, 1]), m(&[0, 2, 0]), m(&[0, 1, 1]), m(&[0, 0, 2])]);
    }

    #[test]
    fn keys_agree_with_cmp() {
        let all: Vec<Monomial> = (0..27).map(|i| m(&[i % 3, (i / 3) % 3, i / 9])).collect();
        for order in [MonomialOrder::lex(3), MonomialOrder::grevlex(3)] {
            for a in &all {
                for b in &all {
                    assert_eq!(order.cmp(a, b), order.key(a).cmp(&order.key(b)));
                }
            }
        }
    }

    #[test]
    fn bad_precedence() {
        assert!(MonomialOrder::new(OrderKind::Lex, vec![0, 0]).is_err());
    }
}
