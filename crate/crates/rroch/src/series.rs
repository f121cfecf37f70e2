//! Truncated weighted-graded multivariate series over an exact coefficient
//! domain.
//!
//! Invariants:
//! - every stored monomial has weighted degree `<= trunc`;
//! - no zero coefficients are stored;
//! - binary operations require identical variable tables and truncation.
//!
//! Monomials are ordered graded-lexicographically by variable-table order;
//! this fixes the canonical rendering order and the leading term used by
//! the elementary-symmetric basis conversion.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::{IVPoly, Rational, Scalar};
use crate::error::CalcError;

/// Ordered list of variables with positive integer weights.
#[derive(Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VarTable {
    pub fn new<S: AsRef<str>>(vars: &[(S, u32)]) -> Result<Arc<Self>, CalcError> {
        let mut names = Vec::with_capacity(vars.len());
        let mut weights = Vec::with_capacity(vars.len());
        for (name, w) in vars {
            let name = name.as_ref().to_string();
            if *w == 0 {
                return Err(CalcError::BadVarTable(format!("variable {name} has weight 0")));
            }
            if names.contains(&name) {
                return Err(CalcError::BadVarTable(format!("duplicate variable {name}")));
            }
            names.push(name);
            weights.push(*w);
        }
        Ok(Arc::new(VarTable { names, weights }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn weighted_degree(&self, exps: &[u16]) -> u32 {
        exps.iter()
            .zip(&self.weights)
            .map(|(e, w)| u32::from(*e) * w)
            .sum()
    }
}

/// Exponent vector with cached weighted degree; `Ord` is graded-lex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Monomial {
    deg: u32,
    exps: Vec<u16>,
}

impl Monomial {
    fn new(vars: &VarTable, exps: Vec<u16>) -> Self {
        debug_assert_eq!(exps.len(), vars.len());
        let deg = vars.weighted_degree(&exps);
        Monomial { deg, exps }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

#[derive(Clone, PartialEq)]
pub struct Series<C: Scalar> {
    vars: Arc<VarTable>,
    trunc: u32,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Series<C> {
    pub fn zero(vars: Arc<VarTable>, trunc: u32) -> Self {
        Series {
            vars,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Arc<VarTable>, trunc: u32, c: C) -> Self {
        let mut s = Series::zero(vars, trunc);
        let m = Monomial::new(&s.vars, vec![0; s.vars.len()]);
        s.insert(m, c);
        s
    }

    pub fn one(vars: Arc<VarTable>, trunc: u32) -> Self {
        Series::constant(vars, trunc, C::one())
    }

    pub fn var(vars: Arc<VarTable>, trunc: u32, name: &str) -> Result<Self, CalcError> {
        let i = vars
            .position(name)
            .ok_or_else(|| CalcError::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0u16; vars.len()];
        exps[i] = 1;
        Ok(Series::from_term(vars, trunc, exps, C::one()))
    }

    pub fn from_term(vars: Arc<VarTable>, trunc: u32, exps: Vec<u16>, c: C) -> Self {
        let mut s = Series::zero(vars, trunc);
        let m = Monomial::new(&s.vars, exps);
        s.insert(m, c);
        s
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u16]) -> C {
        let m = Monomial::new(&self.vars, exps.to_vec());
        self.terms.get(&m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    fn insert(&mut self, m: Monomial, c: C) {
        if c.is_zero() || m.deg > self.trunc {
            return;
        }
        self.terms.insert(m, c);
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() || m.deg > self.trunc {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn compatible(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    fn check_compat(&self, other: &Self) -> Result<(), CalcError> {
        if !self.compatible(other) || self.trunc != other.trunc {
            return Err(CalcError::ContextMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CalcError> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CalcError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CalcError> {
        self.check_compat(other)?;
        let mut out = Series::zero(self.vars.clone(), self.trunc);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.deg + m2.deg > self.trunc {
                    continue;
                }
                let exps: Vec<u16> = m1
                    .exps
                    .iter()
                    .zip(&m2.exps)
                    .map(|(a, b)| a + b)
                    .collect();
                let m = Monomial {
                    deg: m1.deg + m2.deg,
                    exps,
                };
                out.add_term(m, c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("series context mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("series context mismatch")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("series context mismatch")
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.neg()))
            .collect();
        Series {
            vars: self.vars.clone(),
            trunc: self.trunc,
            terms,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Series::zero(self.vars.clone(), self.trunc);
        for (m, a) in &self.terms {
            out.insert(m.clone(), a.mul(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> C {
        self.terms
            .iter()
            .next()
            .filter(|(m, _)| m.is_constant())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }

    /// Sum of terms of weighted degree exactly `d`.
    pub fn component(&self, d: u32) -> Self {
        let mut out = Series::zero(self.vars.clone(), self.trunc);
        for (m, c) in &self.terms {
            if m.deg == d {
                out.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// As `component`, but rejects degrees beyond the truncation.
    pub fn component_checked(&self, d: u32) -> Result<Self, CalcError> {
        if d > self.trunc {
            return Err(CalcError::DegreeOutOfRange { degree: d, trunc: self.trunc });
        }
        Ok(self.component(d))
    }

    /// Re-truncate to a lower degree bound.
    pub fn truncated(&self, trunc: u32) -> Self {
        let mut out = Series::zero(self.vars.clone(), trunc);
        for (m, c) in &self.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        let mut out = Series::zero(self.vars.clone(), self.trunc);
        for (m, c) in &self.terms {
            out.insert(m.clone(), f(c));
        }
        out
    }

    /// Exact division.
    ///
    /// Supports a single-term divisor (exponentwise division of every term,
    /// failing when any term is not divisible) and a unit divisor with
    /// constant term 1 (multiplication by the inverse). A failure on a
    /// single-term divisor signals a failed divisibility claim.
    pub fn divide_exact(&self, g: &Self) -> Result<Self, CalcError> {
        self.check_compat(g)?;
        if g.is_zero() {
            return Err(CalcError::NotDivisible);
        }
        if g.terms.len() == 1 {
            let (gm, gc) = g.terms.iter().next().unwrap();
            let mut out = Series::zero(self.vars.clone(), self.trunc);
            for (m, c) in &self.terms {
                let mut exps = Vec::with_capacity(m.exps.len());
                for (a, b) in m.exps.iter().zip(&gm.exps) {
                    if a < b {
                        return Err(CalcError::NotDivisible);
                    }
                    exps.push(a - b);
                }
                let q = c.div_exact(gc).ok_or(CalcError::NotDivisible)?;
                out.insert(
                    Monomial {
                        deg: m.deg - gm.deg,
                        exps,
                    },
                    q,
                );
            }
            return Ok(out);
        }
        if g.constant_term() == C::one() {
            return Ok(self.mul(&inverse(g)?));
        }
        Err(CalcError::NotDivisible)
    }

    /// Swaps the exponents of variables `i` and `j` in every term.
    pub(crate) fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Series::zero(self.vars.clone(), self.trunc);
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            exps.swap(i, j);
            out.insert(Monomial::new(&self.vars, exps), c.clone());
        }
        out
    }
}

impl<C: Scalar> std::fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Series[N={}]{{", self.trunc)?;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})")?;
            for (k, e) in m.exps.iter().enumerate() {
                if *e > 0 {
                    write!(f, "*{}^{}", self.vars.name(k), e)?;
                }
            }
        }
        write!(f, "}}")
    }
}

/// Elements of a truncated graded commutative ring with unity.
///
/// Implemented by `Series` and by the projective-bundle ring classes; the
/// analytic-style operations below (`inverse`, `log`, `exp`, powers) are
/// generic over this trait.
pub trait GradedRing: Clone + PartialEq {
    type Coeff: Scalar;

    fn trunc(&self) -> u32;
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Self::Coeff) -> Self;
    fn component(&self, d: u32) -> Self;
    fn constant_term(&self) -> Self::Coeff;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

impl<C: Scalar> GradedRing for Series<C> {
    type Coeff = C;

    fn trunc(&self) -> u32 {
        self.trunc
    }
    fn one_like(&self) -> Self {
        Series::one(self.vars.clone(), self.trunc)
    }
    fn zero_like(&self) -> Self {
        Series::zero(self.vars.clone(), self.trunc)
    }
    fn add(&self, other: &Self) -> Self {
        Series::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Series::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Series::mul(self, other)
    }
    fn neg(&self) -> Self {
        Series::neg(self)
    }
    fn scale(&self, c: &C) -> Self {
        Series::scale(self, c)
    }
    fn component(&self, d: u32) -> Self {
        Series::component(self, d)
    }
    fn constant_term(&self) -> C {
        Series::constant_term(self)
    }
    fn is_zero(&self) -> bool {
        Series::is_zero(self)
    }
}

fn require_unit<R: GradedRing>(u: &R) -> Result<(), CalcError> {
    if u.constant_term() != R::Coeff::one() {
        return Err(CalcError::ConstantTermNotOne);
    }
    Ok(())
}

/// Multiplicative inverse of a unit series with constant term 1.
pub fn inverse<R: GradedRing>(u: &R) -> Result<R, CalcError> {
    require_unit(u)?;
    // 1/(1 - t) = sum t^k with t = 1 - u, which has positive lowest degree.
    let t = u.one_like().sub(u);
    let mut out = u.one_like();
    let mut pow = u.one_like();
    for _ in 1..=u.trunc() {
        pow = pow.mul(&t);
        if pow.is_zero() {
            break;
        }
        out = out.add(&pow);
    }
    Ok(out)
}

/// `log u` for a unit with constant term 1; requires rational scalars.
pub fn log<R: GradedRing>(u: &R) -> Result<R, CalcError> {
    require_unit(u)?;
    let f = u.sub(&u.one_like());
    let mut out = u.zero_like();
    let mut pow = u.one_like();
    for k in 1..=u.trunc() {
        pow = pow.mul(&f);
        if pow.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let c = Rational::new(sign, i64::from(k));
        out = out.add(&pow.scale(&R::Coeff::from_rational(&c)));
    }
    Ok(out)
}

/// `exp f` for a series with zero constant term.
pub fn exp<R: GradedRing>(f: &R) -> Result<R, CalcError> {
    if !f.constant_term().is_zero() {
        return Err(CalcError::NonzeroConstantTerm);
    }
    let mut out = f.one_like();
    let mut pow = f.one_like();
    let mut fact = Rational::one();
    for k in 1..=f.trunc() {
        pow = pow.mul(f);
        if pow.is_zero() {
            break;
        }
        fact = fact.mul(&Rational::from_int(i64::from(k)));
        let c = Rational::one().div(&fact);
        out = out.add(&pow.scale(&R::Coeff::from_rational(&c)));
    }
    Ok(out)
}

/// Integer power; negative exponents go through the inverse of a unit.
pub fn int_pow<R: GradedRing>(u: &R, m: i64) -> Result<R, CalcError> {
    let (base, e) = if m < 0 {
        (inverse(u)?, m.unsigned_abs())
    } else {
        (u.clone(), m as u64)
    };
    let mut out = u.one_like();
    let mut sq = base;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            out = out.mul(&sq);
        }
        e >>= 1;
        if e > 0 {
            sq = sq.mul(&sq);
        }
    }
    Ok(out)
}

/// The binary power series `u^y = sum_k C(y,k) (u-1)^k` for a polynomial
/// exponent `y` in `t0`. Substituting an integer for `t0` agrees with the
/// integer power.
pub fn pow_binomial<R: GradedRing>(u: &R, y: &IVPoly) -> Result<R, CalcError> {
    require_unit(u)?;
    let f = u.sub(&u.one_like());
    let mut out = u.zero_like();
    let mut pow = u.one_like();
    for k in 0..=u.trunc() {
        if k > 0 {
            pow = pow.mul(&f);
            if pow.is_zero() {
                break;
            }
        }
        let b = IVPoly::binomial_of(y, k as usize);
        if b.is_zero() {
            continue;
        }
        let c = R::Coeff::from_t0_poly(&b).ok_or(CalcError::SymbolicExponent)?;
        out = out.add(&pow.scale(&c));
    }
    Ok(out)
}

/// Raises a unit to a rank that may be symbolic: constant integer ranks use
/// the integer power, anything else the binary power series.
pub fn pow_rank<R: GradedRing>(u: &R, rank: &IVPoly) -> Result<R, CalcError> {
    match rank.as_integer() {
        Some(m) => int_pow(u, m),
        None => pow_binomial(u, rank),
    }
}

/// Evaluates `f` in another graded ring: coefficients through `coeff_map`,
/// variables through `var_map`. Grading is respected as long as images of
/// variables have the corresponding weights as lowest degree.
pub fn substitute<C: Scalar, R: GradedRing>(
    f: &Series<C>,
    one: &R,
    coeff_map: impl Fn(&C) -> R::Coeff,
    var_map: impl Fn(&str) -> R,
) -> R {
    let nvars = f.vars().len();
    // Power tables, filled lazily per variable.
    let mut powers: Vec<Vec<R>> = vec![vec![one.clone()]; nvars];
    let mut images: Vec<Option<R>> = vec![None; nvars];
    let mut out = one.zero_like();
    for (m, c) in f.terms() {
        let mut term = one.scale(&coeff_map(c));
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if images[i].is_none() {
                images[i] = Some(var_map(f.vars().name(i)));
            }
            while powers[i].len() <= usize::from(e) {
                let next = powers[i].last().unwrap().mul(images[i].as_ref().unwrap());
                powers[i].push(next);
            }
            term = term.mul(&powers[i][usize::from(e)]);
        }
        out = out.add(&term);
    }
    out
}
