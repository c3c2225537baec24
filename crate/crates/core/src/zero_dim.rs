//! Zero-dimensional ideals: minimal polynomials in the quotient ring,
//! Seidenberg radicals, and shape-position bases.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, quotient_monomial_basis, GroebnerBasis};
use crate::poly::{bareiss_solve, MPoly, Monomial, OrderKind, RationalMatrix, Ring};
use crate::univar::{squarefree_part, UPoly};
use crate::Rational;

/// Reduced lex basis `[w(y_s), y_i - u_i(y_s) ...]` with `y_s` the separating variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeBasis {
    pub w: UPoly,
    /// One entry per non-separating variable, in variable-index order.
    pub u: Vec<UPoly>,
    pub separating_variable: usize,
}

impl ShapeBasis {
    /// `u_i` for ring variable `var`; the separating variable maps to `t`.
    pub fn coordinate(&self, var: usize) -> UPoly {
        use std::cmp::Ordering::*;
        match var.cmp(&self.separating_variable) {
            Equal => UPoly::t(),
            Less => self.u[var].clone(),
            Greater => self.u[var - 1].clone(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.u.len() + 1
    }

    /// The generators `[w, y_i - u_i]` as polynomials of `ring`.
    pub fn generators(&self, ring: &Arc<Ring>) -> Vec<MPoly> {
        let s = self.separating_variable;
        let mut out = vec![self.w.to_mpoly(ring, s)];
        for var in (0..ring.nvars()).filter(|&v| v != s) {
            out.push(&MPoly::var(ring, var) - &self.coordinate(var).to_mpoly(ring, s));
        }
        out
    }
}

/// Semi-echelon form over Q that remembers how each row was built from the
/// inserted vectors, so dependencies and coordinates come out directly.
struct Echelon {
    rows: Vec<EchelonRow>,
    inserted: usize,
}

struct EchelonRow {
    pivot: usize,
    row: Vec<Rational>,
    combo: Vec<Rational>,
}

fn axpy(dst: &mut Vec<Rational>, f: &Rational, src: &[Rational]) {
    if dst.len() < src.len() {
        dst.resize(src.len(), Rational::zero());
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= f * s;
        }
    }
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new(), inserted: 0 }
    }

    fn reduce(&self, v: &mut Vec<Rational>, combo: &mut Vec<Rational>) {
        for r in &self.rows {
            if v[r.pivot].is_zero() {
                continue;
            }
            let f = v[r.pivot].clone();
            axpy(v, &f, &r.row);
            axpy(combo, &f, &r.combo);
        }
    }

    /// Inserts `v` as vector number `inserted`; on linear dependence returns
    /// coefficients `c` with `sum c_j v_j = 0` and `c_last = 1`.
    fn insert(&mut self, mut v: Vec<Rational>) -> Option<Vec<Rational>> {
        let k = self.inserted;
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::one();
        self.reduce(&mut v, &mut combo);
        match v.iter().position(|x| !x.is_zero()) {
            None => Some(combo),
            Some(p) => {
                let inv = v[p].recip();
                for x in v.iter_mut().chain(combo.iter_mut()) {
                    *x *= &inv;
                }
                self.rows.push(EchelonRow { pivot: p, row: v, combo });
                self.inserted += 1;
                None
            }
        }
    }
}

/// Coordinates of normal forms in the standard-monomial basis.
struct QuotientCoords {
    gb: GroebnerBasis,
    index: HashMap<Monomial, usize>,
}

impl QuotientCoords {
    fn new(g: &GroebnerBasis) -> Result<Self> {
        if g.is_unit() {
            return Err(Error::Domain("the unit ideal has an empty quotient".into()));
        }
        let basis = quotient_monomial_basis(g)?;
        let index = basis.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(QuotientCoords { gb: g.clone(), index })
    }

    fn dim(&self) -> usize {
        self.index.len()
    }

    fn coords(&self, nf: &MPoly) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Minimal polynomial of multiplication by `elem`.
    fn minimal_polynomial_of(&self, elem: &MPoly) -> Result<UPoly> {
        let mut ech = Echelon::new();
        let mut cur = self.gb.normal_form(&MPoly::one(self.gb.ring()))?;
        loop {
            if let Some(dep) = ech.insert(self.coords(&cur)) {
                return Ok(UPoly::new(dep));
            }
            cur = self.gb.normal_form(&cur.checked_mul(elem)?)?;
        }
    }
}

/// Monic generator of the elimination ideal `<G>` ∩ Q[x_var].
pub fn minimal_polynomial(g: &GroebnerBasis, var: usize) -> Result<UPoly> {
    if var >= g.ring().nvars() {
        return Err(Error::Structure(format!("variable index {var} out of range")));
    }
    let q = QuotientCoords::new(g)?;
    q.minimal_polynomial_of(&MPoly::var(g.ring(), var))
}

/// Minimal polynomial of an arbitrary element of the quotient ring.
pub fn minimal_polynomial_of(g: &GroebnerBasis, elem: &MPoly) -> Result<UPoly> {
    let q = QuotientCoords::new(g)?;
    q.minimal_polynomial_of(elem)
}

/// Radical of a zero-dimensional ideal: adjoin the squarefree part of every
/// per-variable minimal polynomial and recompute the reduced basis.
pub fn radical(g: &GroebnerBasis) -> Result<GroebnerBasis> {
    let (zd, witness) = crate::groebner::is_zero_dimensional(g);
    if !zd {
        return Err(Error::Domain(format!(
            "radical needs a zero-dimensional ideal (variable {} is free)",
            witness.unwrap_or(0)
        )));
    }
    if g.is_unit() {
        return Ok(g.clone());
    }
    let ring = g.ring().clone();
    let extra: Vec<MPoly> = (0..ring.nvars())
        .into_par_iter()
        .map(|v| -> Result<Option<MPoly>> {
            let m = minimal_polynomial(g, v)?;
            let s = squarefree_part(&m)?;
            Ok((s.degree() < m.degree()).then(|| s.to_mpoly(&ring, v)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    if extra.is_empty() {
        return Ok(g.clone());
    }
    let mut gens = g.generators().to_vec();
    gens.extend(extra);
    buchberger(&gens, g.order())
}

/// Reads off `[w, y_i - u_i]` from a reduced lex basis whose smallest
/// variable separates the points; `None` if the basis has another shape.
pub fn try_shape_position(g: &GroebnerBasis) -> Option<ShapeBasis> {
    let order = g.order();
    if order.kind() != OrderKind::Lex || g.is_unit() || g.is_zero_ideal() {
        return None;
    }
    let ring = g.ring();
    let n = ring.nvars();
    let s = order.precedence()[0];
    let gens = g.generators();
    if gens.len() != n {
        return None;
    }
    let w = UPoly::from_mpoly(&gens[0], s).ok()?;
    if w.degree()? == 0 {
        return None;
    }
    let mut u: Vec<Option<UPoly>> = vec![None; n];
    for p in &gens[1..] {
        let lm = p.leading_monomial()?;
        let v = lm.pure_power_var()?;
        if lm.degree() != 1 || v == s {
            return None;
        }
        let rest = &MPoly::var(ring, v) - p;
        let uv = UPoly::from_mpoly(&rest, s).ok()?;
        if u[v].replace(uv).is_some() {
            return None;
        }
    }
    let u = (0..n).filter(|&v| v != s).map(|v| u[v].take()).collect::<Option<Vec<_>>>()?;
    Some(ShapeBasis { w, u, separating_variable: s })
}

/// Shape basis of the radical zero-dimensional ideal `g` after the linear
/// change of coordinates `y = coords * x`, with `y_1` separating.
///
/// Works entirely in the quotient ring of `g`: `w` is the minimal polynomial
/// of `y_1`, and `y_i ≡ u_i(y_1)` is solved from the power basis. Returns
/// `None` when `y_1` does not separate the points (its minimal polynomial has
/// degree below the quotient dimension).
pub fn shape_by_linear_algebra(g: &GroebnerBasis, coords: &RationalMatrix) -> Result<Option<ShapeBasis>> {
    let ring = g.ring();
    let n = ring.nvars();
    if coords.rows() != n || coords.cols() != n {
        return Err(Error::Structure("coordinate matrix does not match the ring".into()));
    }
    let q = QuotientCoords::new(g)?;
    let dim = q.dim();
    let basis: Vec<Monomial> = quotient_monomial_basis(g)?;
    let form = |i: usize| MPoly::from_terms(ring, (0..n).map(|k| (Monomial::var(n, k), coords.get(i, k).clone())));

    // multiplication by y_1 on the standard monomials, column by column
    let y1 = form(0);
    let columns = basis
        .par_iter()
        .map(|b| Ok(q.coords(&g.normal_form(&y1.mul_term(b, &Rational::one()))?)))
        .collect::<Result<Vec<_>>>()?;
    let den = columns.iter().flatten().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mult: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| columns.iter().map(|col| col[i].numer() * (&den / col[i].denom())).collect())
        .collect();

    // Krylov vectors k_i = (den * M)^i e, so the true powers are k_i / den^i
    let mut krylov: Vec<Vec<BigInt>> = Vec::with_capacity(dim + 1);
    krylov.push(q.coords(&g.normal_form(&MPoly::one(ring))?).iter().map(|c| c.to_integer()).collect());
    for _ in 0..dim {
        let last = krylov.last().unwrap();
        let next = mult
            .par_iter()
            .map(|row| row.iter().zip(last).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect();
        krylov.push(next);
    }
    let system: Vec<Vec<BigInt>> = (0..dim).map(|i| (0..dim).map(|j| krylov[j][i].clone()).collect()).collect();

    let mut rhs = vec![krylov[dim].clone()];
    let mut scales = Vec::with_capacity(n - 1);
    for i in 1..n {
        let t = q.coords(&g.normal_form(&form(i))?);
        let s = t.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        rhs.push(t.iter().map(|c| c.numer() * (&s / c.denom())).collect());
        scales.push(s);
    }
    let Some((det, sols)) = bareiss_solve(system, &rhs) else {
        return Ok(None);
    };
    let den_r = Rational::from_integer(den);
    let det_r = Rational::from_integer(det);
    let powers: Vec<Rational> = std::iter::successors(Some(Rational::one()), |p| Some(p * &den_r)).take(dim + 1).collect();

    // t^dim = sum c_i den^(i - dim) t^i
    let mut w: Vec<Rational> = sols[0].iter().enumerate().map(|(i, c)| -(Rational::from_integer(c.clone()) / &det_r) * &powers[i] / &powers[dim]).collect();
    w.push(Rational::one());
    let u = sols[1..]
        .iter()
        .zip(&scales)
        .map(|(c, s)| {
            let s = Rational::from_integer(s.clone()) * &det_r;
            UPoly::new(c.iter().enumerate().map(|(i, ci)| Rational::from_integer(ci.clone()) * &powers[i] / &s).collect())
        })
        .collect();
    Ok(Some(ShapeBasis { w: UPoly::new(w), u, separating_variable: 0 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;
    use num_bigint::BigInt;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn lex2() -> Arc<Ring> {
        Ring::with_prefix("y", 2, MonomialOrder::lex(2))
    }

    fn poly(r: &Arc<Ring>, terms: &[(&[u32], i64)]) -> MPoly {
        MPoly::from_terms(r, terms.iter().map(|(e, c)| (Monomial::new(e.to_vec()), q(*c))))
    }

    fn gb(gens: Vec<MPoly>) -> GroebnerBasis {
        let order = gens[0].ring().order().clone();
        buchberger(&gens, &order).unwrap()
    }

    #[test]
    fn minimal_polynomials() {
        let r = lex2();
        let g = gb(vec![poly(&r, &[(&[2, 0], 1), (&[1, 0], -1)]), poly(&r, &[(&[0, 1], 1), (&[1, 0], -1)])]);
        assert_eq!(minimal_polynomial(&g, 0).unwrap(), UPoly::from_i64(&[0, -1, 1]));
        let g = gb(vec![poly(&r, &[(&[2, 0], 1)]), poly(&r, &[(&[0, 1], 1)])]);
        assert_eq!(minimal_polynomial(&g, 1).unwrap(), UPoly::from_i64(&[0, 1]));
        let r1 = Ring::with_prefix("x", 1, MonomialOrder::lex(1));
        let g = gb(vec![poly(&r1, &[(&[1], 1), (&[0], -5)])]);
        assert_eq!(minimal_polynomial(&g, 0).unwrap(), UPoly::from_i64(&[-5, 1]));
        let unit = gb(vec![poly(&r1, &[(&[0], 1)])]);
        assert!(minimal_polynomial(&unit, 0).is_err());
        let pos = gb(vec![poly(&r, &[(&[1, 1], 1)])]);
        assert!(minimal_polynomial(&pos, 0).is_err());
    }

    #[test]
    fn radicals() {
        let r1 = Ring::with_prefix("x", 1, MonomialOrder::lex(1));
        let g = gb(vec![poly(&r1, &[(&[2], 1)])]);
        assert_eq!(radical(&g).unwrap().generators(), &[poly(&r1, &[(&[1], 1)])]);

        let r = lex2();
        // <(x1-1)^2, x2-x1>
        let g = gb(vec![
            poly(&r, &[(&[2, 0], 1), (&[1, 0], -2), (&[0, 0], 1)]),
            poly(&r, &[(&[0, 1], 1), (&[1, 0], -1)]),
        ]);
        let rad = radical(&g).unwrap();
        assert_eq!(
            rad.generators(),
            &[poly(&r, &[(&[1, 0], 1), (&[0, 0], -1)]), poly(&r, &[(&[0, 1], 1), (&[0, 0], -1)])]
        );
        assert_eq!(radical(&rad).unwrap(), rad);
        assert!(radical(&gb(vec![poly(&r, &[(&[1, 1], 1)])])).is_err());
    }

    #[test]
    fn shape_detection() {
        let r = lex2();
        let g = gb(vec![poly(&r, &[(&[2, 0], 1), (&[1, 0], -1)]), poly(&r, &[(&[0, 1], 1), (&[1, 0], -1)])]);
        let s = try_shape_position(&g).unwrap();
        assert_eq!(s.w, UPoly::from_i64(&[0, -1, 1]));
        assert_eq!(s.u, vec![UPoly::t()]);
        assert_eq!(s.generators(&r), g.generators());

        let g = GroebnerBasis::from_reduced(
            &r,
            vec![poly(&r, &[(&[2, 0], 1)]), poly(&r, &[(&[1, 1], 1)]), poly(&r, &[(&[0, 2], 1)])],
        );
        assert!(try_shape_position(&g).is_none());

        let g = gb(vec![poly(&r, &[(&[1, 0], 1), (&[0, 0], -3)]), poly(&r, &[(&[0, 1], 1), (&[0, 0], -7)])]);
        let s = try_shape_position(&g).unwrap();
        assert_eq!(s.w, UPoly::from_i64(&[-3, 1]));
        assert_eq!(s.u, vec![UPoly::from_i64(&[7])]);
    }

    #[test]
    fn linear_algebra_shape_matches_lex_basis() {
        // the points (0,0), (1,2), (2,1), described under grevlex
        let r = Ring::with_prefix("x", 2, MonomialOrder::grevlex(2));
        let pts = [(0, 0), (1, 2), (2, 1)];
        let x1 = MPoly::var(&r, 0);
        let x2 = MPoly::var(&r, 1);
        let mut prod = MPoly::one(&r);
        for (a, _) in pts {
            prod = &prod * &(&x1 - &MPoly::constant(&r, q(a)));
        }
        // x2 = interpolant through the points: x2 = (-3/2) x1^2 + (7/2) x1
        let interp = &(&x2 - &(&x1 * &x1).scale(&Rational::new((-3).into(), 2.into())))
            - &x1.scale(&Rational::new(7.into(), 2.into()));
        let g = buchberger(&[prod, interp], &MonomialOrder::grevlex(2)).unwrap();
        let shape = shape_by_linear_algebra(&g, &RationalMatrix::identity(2)).unwrap().unwrap();
        assert_eq!(shape.w, UPoly::from_i64(&[0, 2, -3, 1]));
        let lex = buchberger(g.generators(), &MonomialOrder::lex(2)).unwrap();
        assert_eq!(try_shape_position(&lex).unwrap(), shape);

        // swapping coordinates: y1 = x2 also separates
        let mut swap = RationalMatrix::zeros(2, 2);
        swap.set(0, 1, q(1));
        swap.set(1, 0, q(1));
        assert!(shape_by_linear_algebra(&g, &swap).unwrap().is_some());

        // y1 = x1 + x2 takes the value 3 twice
        let mut sum = RationalMatrix::identity(2);
        sum.set(0, 1, q(1));
        assert!(shape_by_linear_algebra(&g, &sum).unwrap().is_none());
    }
}
