//! Problem files, polynomial expressions and the JSON output document.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::enumerate::Solution;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::pcp::{coordinate_zero_polys, HMode, PcpProblem, SparseRep, UnivarRep};
use crate::poly::{MPoly, MonomialOrder, RationalMatrix, Ring};
use crate::univar::UPoly;
use crate::Rational;

/// Exponents above this are rejected; nothing useful has degree beyond it.
pub const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Parsed expression. `Var` holds an index into the declared variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var(usize),
    Neg(Box<Expr>),
    /// `offset` points at the operator, for errors found while lowering.
    Bin { op: BinOp, lhs: Box<Expr>, rhs: Box<Expr>, offset: usize },
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Value of a variable-free expression; `None` if a variable occurs or a
    /// division by zero is met.
    fn constant(&self) -> Option<Rational> {
        Some(match self {
            Expr::Num(q) => q.clone(),
            Expr::Var(_) => return None,
            Expr::Neg(e) => -e.constant()?,
            Expr::Bin { op, lhs, rhs, .. } => {
                let (a, b) = (lhs.constant()?, rhs.constant()?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div if b.is_zero() => return None,
                    BinOp::Div => a / b,
                }
            }
            Expr::Pow(e, k) => num_traits::pow(e.constant()?, *k as usize),
        })
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Option<Rational> {
        Some(match self {
            Expr::Num(q) => q.clone(),
            Expr::Var(i) => point.get(*i)?.clone(),
            Expr::Neg(e) => -e.evaluate(point)?,
            Expr::Bin { op, lhs, rhs, .. } => {
                let (a, b) = (lhs.evaluate(point)?, rhs.evaluate(point)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div if b.is_zero() => return None,
                    BinOp::Div => a / b,
                }
            }
            Expr::Pow(e, k) => num_traits::pow(e.evaluate(point)?, *k as usize),
        })
    }
}

fn perr(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset, message: message.into() }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> char {
        let c = self.src[self.pos..].chars().next().unwrap();
        self.pos += c.len_utf8();
        c
    }

    // sum := product (('+' | '-') product)*
    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            let offset = self.pos;
            self.bump();
            let rhs = self.product()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Expr::Bin { op, lhs: Box::new(lhs), rhs: Box::new(rhs), offset };
        }
        Ok(lhs)
    }

    // product := unary (('*' | '/') unary)*
    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            let offset = self.pos;
            self.bump();
            let rhs = self.unary()?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            if op == BinOp::Div && rhs.constant().is_none_or(|q| q.is_zero()) {
                return Err(perr(offset, "division is only allowed by a nonzero constant"));
            }
            lhs = Expr::Bin { op, lhs: Box::new(lhs), rhs: Box::new(rhs), offset };
        }
        Ok(lhs)
    }

    // unary := '-' unary | '+' unary | power
    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    // power := atom ('^' power)?, right-associative
    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        let at = {
            self.skip_ws();
            self.pos
        };
        let exponent = match self.peek() {
            Some('-') => return Err(perr(at, "exponent must be a non-negative integer")),
            _ => self.power()?,
        };
        let k = exponent.constant().ok_or_else(|| perr(at, "exponent must be a non-negative integer constant"))?;
        if !k.is_integer() || k.is_negative() {
            return Err(perr(at, format!("exponent must be a non-negative integer, got {k}")));
        }
        let k = k.to_integer().to_u32().filter(|&k| k <= MAX_EXPONENT).ok_or_else(|| perr(at, "exponent too large"))?;
        Ok(Expr::Pow(Box::new(base), k))
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            None => Err(perr(start, "unexpected end of input")),
            Some('(') => {
                self.bump();
                let e = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(perr(self.pos, format!("unbalanced parenthesis opened at byte {start}")));
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(start),
            Some(c) if c.is_alphabetic() || c == '_' => {
                while self.src[self.pos..].chars().next().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.bump();
                }
                let name = &self.src[start..self.pos];
                self.vars
                    .iter()
                    .position(|v| v == name)
                    .map(Expr::Var)
                    .ok_or_else(|| perr(start, format!("unknown identifier `{name}`")))
            }
            Some(c) => Err(perr(start, format!("unexpected character `{c}`"))),
        }
    }

    fn number(&mut self, start: usize) -> Result<Expr> {
        let bytes = self.src.as_bytes();
        let digits = |p: &mut usize| {
            let s = *p;
            while *p < bytes.len() && bytes[*p].is_ascii_digit() {
                *p += 1;
            }
            *p - s
        };
        let mut p = start;
        let mut n = digits(&mut p);
        if p < bytes.len() && bytes[p] == b'.' {
            p += 1;
            n += digits(&mut p);
        }
        if n == 0 {
            return Err(perr(start, "malformed number"));
        }
        if p < bytes.len() && (bytes[p] == b'e' || bytes[p] == b'E') {
            let mut q = p + 1;
            if q < bytes.len() && (bytes[q] == b'+' || bytes[q] == b'-') {
                q += 1;
            }
            if digits(&mut q) == 0 {
                return Err(perr(p, "malformed exponent in number"));
            }
            p = q;
        }
        self.pos = p;
        parse_decimal(&self.src[start..p]).map(Expr::Num).ok_or_else(|| perr(start, "malformed number"))
    }
}

/// Parses an expression over the given variable names.
pub fn parse_expression(src: &str, variables: &[String]) -> Result<Expr> {
    let mut p = Parser { src, pos: 0, vars: variables };
    let e = p.sum()?;
    match p.peek() {
        None => Ok(e),
        Some(')') => Err(perr(p.pos, "unbalanced parenthesis")),
        Some(c) => Err(perr(p.pos, format!("unexpected `{c}` (implicit multiplication is not supported)"))),
    }
}

/// Expands an expression into a polynomial of `ring`.
pub fn lower_to_poly(e: &Expr, ring: &Arc<Ring>) -> Result<MPoly> {
    Ok(match e {
        Expr::Num(q) => MPoly::constant(ring, q.clone()),
        Expr::Var(i) if *i < ring.nvars() => MPoly::var(ring, *i),
        Expr::Var(i) => return Err(Error::Structure(format!("variable index {i} outside a ring of {} variables", ring.nvars()))),
        Expr::Neg(a) => lower_to_poly(a, ring)?.neg(),
        Expr::Bin { op, lhs, rhs, offset } => {
            let a = lower_to_poly(lhs, ring)?;
            match op {
                BinOp::Add => a.checked_add(&lower_to_poly(rhs, ring)?)?,
                BinOp::Sub => a.checked_sub(&lower_to_poly(rhs, ring)?)?,
                BinOp::Mul => a.checked_mul(&lower_to_poly(rhs, ring)?)?,
                BinOp::Div => {
                    let c = rhs.constant().filter(|c| !c.is_zero()).ok_or_else(|| perr(*offset, "division by a non-constant"))?;
                    a.scale(&c.recip())
                }
            }
        }
        Expr::Pow(a, k) => lower_to_poly(a, ring)?.pow_u32(*k),
    })
}

/// Parses and lowers in one step.
pub fn parse_poly(src: &str, ring: &Arc<Ring>) -> Result<MPoly> {
    lower_to_poly(&parse_expression(src, ring.names())?, ring)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = BigInt::from_str(&format!("{int}{frac}0")).ok()? / 10;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Some(if shift >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, shift as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-shift) as usize))
    })
}

/// Reads `a/b`, an integer, a decimal or scientific literal, with an optional sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Format(format!("not a rational number: `{s}`"));
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let q = if let Some((a, b)) = body.split_once('/') {
        let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
        let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
        if b.is_zero() {
            return Err(Error::Format(format!("zero denominator in `{s}`")));
        }
        Rational::new(a, b)
    } else {
        parse_decimal(body).ok_or_else(bad)?
    };
    Ok(if neg { -q } else { q })
}

/// `num/den` with a positive denominator.
pub fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn upoly_strings(p: &UPoly) -> Vec<String> {
    p.coeffs().iter().map(rational_string).collect()
}

fn upoly_from(s: &[String]) -> Result<UPoly> {
    Ok(UPoly::new(s.iter().map(|c| parse_rational(c)).collect::<Result<_>>()?))
}

/// On-disk problem description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub variables: Vec<String>,
    pub f: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_solutions: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_deg_w: Option<usize>,
}

impl ProblemFile {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Format(format!("problem file: {}", e.message())))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plain data serializes")
    }

    /// Builds the problem; parse errors name the offending component.
    pub fn to_problem(&self) -> Result<PcpProblem> {
        if self.variables.is_empty() {
            return Err(Error::Format("no variables declared".into()));
        }
        if self.variables.len() != self.f.len() {
            return Err(Error::Format(format!("{} variables but {} components in f", self.variables.len(), self.f.len())));
        }
        let n = self.variables.len();
        let ring = Ring::new(self.variables.clone(), MonomialOrder::lex(n))?;
        let f = self
            .f
            .iter()
            .enumerate()
            .map(|(i, src)| {
                parse_poly(src, &ring).map_err(|e| match e {
                    Error::Parse { offset, message } => Error::Parse { offset, message: format!("f[{i}]: {message}") },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let prob = PcpProblem::new(f)?;
        Ok(match &self.name {
            Some(name) => prob.with_name(name.clone()),
            None => prob,
        })
    }

    pub fn from_problem(prob: &PcpProblem) -> Self {
        ProblemFile {
            name: prob.name().map(str::to_string),
            variables: prob.ring().names().to_vec(),
            f: prob.f().iter().map(|p| p.to_string()).collect(),
            expected_solutions: None,
            expected_deg_w: None,
        }
    }
}

/// Reads a problem file from TOML text.
pub fn load_problem(text: &str) -> Result<(ProblemFile, PcpProblem)> {
    let file = ProblemFile::from_toml(text)?;
    let prob = file.to_problem()?;
    Ok((file, prob))
}

/// Whitespace-separated rationals, one matrix row per line; `#` starts a comment.
pub fn parse_matrix(text: &str) -> Result<RationalMatrix> {
    let rows = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(parse_rational).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(Error::Format("empty matrix".into()));
    }
    RationalMatrix::from_rows(rows)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StrategyDoc {
    pub mode: Option<HMode>,
    pub seed: Option<u64>,
    pub s: Option<u64>,
    pub invert_convention: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub coordinates: Vec<String>,
    pub values: Vec<String>,
    pub exact: Vec<bool>,
    pub bounds: Vec<[String; 2]>,
    pub root: [String; 2],
    pub root_count: usize,
    pub residual: String,
}

impl SolutionDoc {
    pub fn from_solution(s: &Solution) -> Self {
        let pair = |i: &Interval| [rational_string(&i.lo), rational_string(&i.hi)];
        SolutionDoc {
            coordinates: s.coordinates.clone(),
            values: s.values.iter().map(rational_string).collect(),
            exact: s.exact.clone(),
            bounds: s.bounds.iter().map(pair).collect(),
            root: pair(&s.root),
            root_count: s.root_count,
            residual: rational_string(&s.residual),
        }
    }

    pub fn to_solution(&self) -> Result<Solution> {
        let interval = |p: &[String; 2]| -> Result<Interval> {
            let (lo, hi) = (parse_rational(&p[0])?, parse_rational(&p[1])?);
            if lo > hi {
                return Err(Error::Format(format!("reversed interval [{lo}, {hi}]")));
            }
            Ok(Interval::new(lo, hi))
        };
        Ok(Solution {
            coordinates: self.coordinates.clone(),
            values: self.values.iter().map(|v| parse_rational(v)).collect::<Result<_>>()?,
            bounds: self.bounds.iter().map(interval).collect::<Result<_>>()?,
            exact: self.exact.clone(),
            root: interval(&self.root)?,
            root_count: self.root_count,
            residual: parse_rational(&self.residual)?,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct D0Doc {
    pub is_d0: bool,
    /// Variable with no pure power among the leading monomials.
    pub witness: Option<String>,
}

/// One line of a benchmark table.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub d: u32,
    pub deg_w: usize,
    pub real_roots: usize,
    pub sol: usize,
    pub sol_ln: usize,
    pub sol_sp: usize,
    pub time_rep: f64,
    pub time_sol: f64,
    pub time_ln: f64,
    pub time_sp: f64,
}

/// Per-stage wall time in seconds, rounded to milliseconds.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub groebner: f64,
    pub radical: f64,
    pub shape: f64,
    pub enumeration: f64,
    pub total: f64,
}

pub fn millis(secs: f64) -> f64 {
    (secs * 1000.0).round() / 1000.0
}

/// Everything a run reports. Exact quantities are `num/den` strings and
/// polynomial coefficients are listed from the constant term up.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OutputDoc {
    pub status: String,
    #[serde(default)]
    pub task: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub problem: Option<String>,
    #[serde(default)]
    pub variables: Vec<String>,
    #[serde(default)]
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg_w: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<String>>,
    #[serde(rename = "H", default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<StrategyDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real_roots: Option<usize>,
    #[serde(default)]
    pub solutions: Vec<SolutionDoc>,
    /// Minimal squared norm over the solution set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub least_norm: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Supports of the sparsest solutions, 1-based.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d0: Option<D0Doc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bench: Option<BenchRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl OutputDoc {
    /// Fills the representation fields.
    pub fn set_rep(&mut self, rep: &UnivarRep) {
        self.n = rep.n();
        self.deg_w = Some(rep.deg_w());
        self.w = Some(upoly_strings(&rep.w));
        self.v = Some(rep.v.iter().map(upoly_strings).collect());
        self.phi = rep.phi.as_ref().map(upoly_strings);
        self.h = Some(rep.h_used.to_rows().iter().map(|r| r.iter().map(rational_string).collect()).collect());
        self.strategy = Some(StrategyDoc { mode: Some(rep.mode), seed: rep.seed, s: rep.s_used, invert_convention: rep.invert_convention });
    }

    pub fn set_solutions(&mut self, sols: &[Solution]) {
        self.solutions = sols.iter().map(SolutionDoc::from_solution).collect();
        self.status = if sols.is_empty() { "infeasible" } else { "solved" }.into();
    }

    pub fn set_sparse(&mut self, sp: &SparseRep) {
        self.set_rep(&sp.base);
        self.k = Some(sp.k);
        self.omega = Some(sp.omega.iter().map(|l| l.iter().map(|i| i + 1).collect()).collect());
    }

    /// Rebuilds the representation, if the document carries one.
    pub fn rep(&self) -> Result<Option<UnivarRep>> {
        let (Some(w), Some(v), Some(h), Some(st)) = (&self.w, &self.v, &self.h, &self.strategy) else {
            return Ok(None);
        };
        let rows = h.iter().map(|r| r.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        Ok(Some(UnivarRep {
            w: upoly_from(w)?,
            v: v.iter().map(|c| upoly_from(c)).collect::<Result<_>>()?,
            phi: self.phi.as_deref().map(upoly_from).transpose()?,
            h_used: RationalMatrix::from_rows(rows)?,
            mode: st.mode.ok_or_else(|| Error::Format("strategy.mode missing".into()))?,
            seed: st.seed,
            s_used: st.s,
            invert_convention: st.invert_convention,
        }))
    }

    pub fn sparse(&self) -> Result<Option<SparseRep>> {
        let (Some(base), Some(k), Some(omega)) = (self.rep()?, self.k, &self.omega) else {
            return Ok(None);
        };
        let omega = omega
            .iter()
            .map(|l| l.iter().map(|&i| i.checked_sub(1).ok_or_else(|| Error::Format("omega indices are 1-based".into()))).collect())
            .collect::<Result<_>>()?;
        let zero_polys = coordinate_zero_polys(&base)?;
        Ok(Some(SparseRep { base, k, omega, zero_polys }))
    }

    pub fn solution_list(&self) -> Result<Vec<Solution>> {
        self.solutions.iter().map(SolutionDoc::to_solution).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(format!("output document: {e}")))
    }
}

/// Serializes a representation with an optional solution list. Without a
/// list the status is `solved`; an empty list means `infeasible`.
pub fn serialize_rep(rep: &UnivarRep, solutions: Option<&[Solution]>) -> String {
    let mut doc = OutputDoc { status: "solved".into(), task: "solve".into(), ..Default::default() };
    doc.set_rep(rep);
    if let Some(s) = solutions {
        doc.set_solutions(s);
    }
    doc.to_json()
}

pub fn serialize_sparse(sp: &SparseRep, solutions: Option<&[Solution]>) -> String {
    let mut doc = OutputDoc { status: "solved".into(), task: "sparse".into(), ..Default::default() };
    doc.set_sparse(sp);
    if let Some(s) = solutions {
        doc.set_solutions(s);
    }
    doc.to_json()
}

/// Inverse of [`serialize_rep`].
pub fn read_rep(text: &str) -> Result<(UnivarRep, Vec<Solution>)> {
    let doc = OutputDoc::from_json(text)?;
    let rep = doc.rep()?.ok_or_else(|| Error::Format("document carries no representation".into()))?;
    Ok((rep, doc.solution_list()?))
}

/// Inverse of [`serialize_sparse`].
pub fn read_sparse(text: &str) -> Result<(SparseRep, Vec<Solution>)> {
    let doc = OutputDoc::from_json(text)?;
    let sp = doc.sparse()?.ok_or_else(|| Error::Format("document carries no sparse representation".into()))?;
    Ok((sp, doc.solution_list()?))
}
