//! A formal cohomology ring for the projective completion P(E + 1) of a
//! split bundle E over a base, and the Riemann-Roch verifiers that live in
//! it.
//!
//! The ring is free over the base on 1, xi, .., xi^r, where xi is the first
//! Chern class of the tautological line bundle; the defining relation
//! `xi^{r+1} + c_1(E) xi^r + ... + c_r(E) xi = 0` is used as a rewrite rule
//! to keep every class in normal form. The pushforward to the base reads
//! off the xi^r coefficient; the zero section restricts by xi := 0 and its
//! Gysin map multiplies by the top Chern class of the universal quotient
//! bundle Q, whose total class is `c(E) (1 - xi)^{-1}`.
//!
//! Invariants:
//! - every `RingClass` is fully reduced (xi-degree <= r);
//! - coefficients of xi^j carry base weight <= trunc - j, so total weight
//!   (base weight + xi-degree) never exceeds the truncation.

use std::sync::Arc;

use crate::arith::{IVPoly, Rational, Scalar};
use crate::chern::VirtualBundle;
use crate::error::CalcError;
use crate::report::{CaseReport, SuiteReport};
use crate::series::{inverse, pow_rank, substitute, GradedRing, Series, VarTable};
use crate::symfunc::star0;
use crate::universal::{big_g_r, UniversalContext};

#[derive(Debug, PartialEq)]
struct ModelInner<C: Scalar> {
    r: u32,
    trunc: u32,
    base: Arc<VarTable>,
    roots: Vec<Series<C>>,
    // c_0(E) .. c_r(E) as base series.
    chern: Vec<Series<C>>,
}

/// The cohomology model of P(E + 1) for a split rank-r bundle E.
#[derive(Clone, Debug)]
pub struct ProjectiveModel<C: Scalar> {
    inner: Arc<ModelInner<C>>,
}

/// An element `q_0 + q_1 xi + ... + q_r xi^r` in normal form.
#[derive(Clone, Debug)]
pub struct RingClass<C: Scalar> {
    model: Arc<ModelInner<C>>,
    q: Vec<Series<C>>,
}

impl<C: Scalar> PartialEq for RingClass<C> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.model, &other.model) || *self.model == *other.model)
            && self.q == other.q
    }
}

impl<C: Scalar> ProjectiveModel<C> {
    /// Builds the model from the Chern roots of E, given as base classes of
    /// lowest degree 1.
    pub fn new(
        base: Arc<VarTable>,
        trunc: u32,
        roots: Vec<Series<C>>,
    ) -> Result<Self, CalcError> {
        let r = roots.len() as u32;
        for x in &roots {
            if !x.constant_term().is_zero() {
                return Err(CalcError::NonzeroConstantTerm);
            }
        }
        // c_j(E) as the j-th elementary symmetric function of the roots.
        let one = Series::one(base.clone(), trunc);
        let mut total = one.clone();
        for x in &roots {
            total = total.mul(&one.add(x));
        }
        let chern = (0..=r).map(|j| total.component(j)).collect();
        Ok(ProjectiveModel {
            inner: Arc::new(ModelInner {
                r,
                trunc,
                base,
                roots,
                chern,
            }),
        })
    }

    pub fn r(&self) -> u32 {
        self.inner.r
    }

    pub fn trunc(&self) -> u32 {
        self.inner.trunc
    }

    pub fn base(&self) -> &Arc<VarTable> {
        &self.inner.base
    }

    pub fn e_roots(&self) -> &[Series<C>] {
        &self.inner.roots
    }

    /// c_j(E) as a base series.
    pub fn e_chern(&self, j: u32) -> &Series<C> {
        &self.inner.chern[j as usize]
    }

    /// Total Chern class of E over the base.
    pub fn e_total_chern(&self) -> Series<C> {
        let mut out = Series::zero(self.inner.base.clone(), self.inner.trunc);
        for c in &self.inner.chern {
            out = out.add(c);
        }
        out
    }

    pub fn zero(&self) -> RingClass<C> {
        let z = Series::zero(self.inner.base.clone(), self.inner.trunc);
        RingClass {
            model: self.inner.clone(),
            q: vec![z; self.inner.r as usize + 1],
        }
    }

    pub fn one(&self) -> RingClass<C> {
        self.from_base(&Series::one(self.inner.base.clone(), self.inner.trunc))
    }

    /// The pullback p-sharp of a base class.
    pub fn from_base(&self, x: &Series<C>) -> RingClass<C> {
        let mut out = self.zero();
        out.q[0] = x.clone();
        out.normalize();
        out
    }

    /// The hyperplane class xi.
    pub fn xi(&self) -> RingClass<C> {
        let mut out = self.zero();
        if self.inner.r >= 1 {
            out.q[1] = Series::one(self.inner.base.clone(), self.inner.trunc);
        } else {
            // rank 0: xi is already reducible, xi = 0.
        }
        out.normalize();
        out
    }

    /// Normal form of an arbitrary polynomial `sum coeffs[k] xi^k`.
    pub fn reduce(&self, mut coeffs: Vec<Series<C>>) -> RingClass<C> {
        let r = self.inner.r as usize;
        while coeffs.len() > r + 1 {
            let k = coeffs.len() - 1;
            let top = coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            // xi^{r+1} = -sum_j c_j(E) xi^{r+1-j}, shifted up by k - (r+1).
            for j in 1..=r {
                let idx = k - j;
                let contrib = top.mul(&self.inner.chern[j]);
                coeffs[idx] = coeffs[idx].sub(&contrib);
            }
        }
        let z = Series::zero(self.inner.base.clone(), self.inner.trunc);
        coeffs.resize(r + 1, z);
        let mut out = RingClass {
            model: self.inner.clone(),
            q: coeffs,
        };
        out.normalize();
        out
    }

    /// Total Chern class of the universal quotient bundle Q:
    /// `c(E) (1 - xi)^{-1}` in normal form.
    pub fn quotient_chern(&self) -> Result<RingClass<C>, CalcError> {
        let unit = self.one().sub(&self.xi());
        Ok(self.from_base(&self.e_total_chern()).mul(&inverse(&unit)?))
    }

    /// Top Chern class c_r(Q).
    pub fn quotient_top_chern(&self) -> Result<RingClass<C>, CalcError> {
        Ok(self.quotient_chern()?.component(self.inner.r))
    }

    /// Pushforward to the base: the xi^r coefficient.
    pub fn pushforward(&self, z: &RingClass<C>) -> Series<C> {
        z.q[self.inner.r as usize].clone()
    }

    /// Gysin map of the zero section: `p-sharp(x) c_r(Q)`.
    pub fn gysin_zero_section(&self, x: &Series<C>) -> Result<RingClass<C>, CalcError> {
        Ok(self.from_base(x).mul(&self.quotient_top_chern()?))
    }

    /// Restriction along the zero section: xi := 0.
    pub fn restrict_to_zero_section(&self, z: &RingClass<C>) -> Series<C> {
        z.q[0].clone()
    }

    /// Total Chern class of `lambda_{-1}(Q-dual)`, the K-theoretic
    /// pushforward of 1: equals `1 + c_r(Q) G_r(c_1(Q), .., c_r(Q))`.
    pub fn lambda_minus_one_dual_quotient(&self) -> Result<RingClass<C>, CalcError> {
        let r = self.inner.r;
        if r == 0 {
            return Ok(self.one());
        }
        let cq = self.quotient_chern()?;
        let gg = big_g_r(r, self.inner.trunc)?;
        let one = self.one();
        let g_sub: RingClass<C> = substitute(
            &gg,
            &one,
            |p| {
                let c = p.as_constant().expect("constant coefficient");
                C::from_rational(&c)
            },
            |name| {
                let j: u32 = name[1..].parse().unwrap();
                cq.component(j)
            },
        );
        Ok(one.add(&cq.component(r).mul(&g_sub)))
    }

    /// Total Chern class of the pushforward of a class alpha of the given
    /// rank and total Chern class (both over the base): the augmented star
    /// product of p-sharp(alpha) with the rank-zero `lambda_{-1}(Q-dual)`.
    pub fn chern_of_pushforward(
        &self,
        rank: &IVPoly,
        chern_alpha: &Series<C>,
    ) -> Result<RingClass<C>, CalcError> {
        let u = self.from_base(chern_alpha);
        let v = self.lambda_minus_one_dual_quotient()?;
        Ok(star0(&u, &v)?.mul(&pow_rank(&v, rank)?))
    }
}

impl<C: Scalar> RingClass<C> {
    /// The xi^j coefficient.
    pub fn coeff(&self, j: u32) -> &Series<C> {
        &self.q[j as usize]
    }

    pub fn model_rank(&self) -> u32 {
        self.model.r
    }

    /// Drops terms of total weight (base weight + xi-degree) beyond the
    /// truncation.
    fn normalize(&mut self) {
        let n = self.model.trunc;
        for (j, q) in self.q.iter_mut().enumerate() {
            let cap = n.saturating_sub(j as u32);
            let mut kept = q.zero_like();
            for d in 0..=cap.min(q.trunc()) {
                kept = kept.add(&q.component(d));
            }
            if (j as u32) > n {
                kept = q.zero_like();
            }
            *q = kept;
        }
    }
}

impl<C: Scalar> GradedRing for RingClass<C> {
    type Coeff = C;

    fn trunc(&self) -> u32 {
        self.model.trunc
    }

    fn one_like(&self) -> Self {
        let mut out = self.zero_like();
        out.q[0] = Series::one(self.model.base.clone(), self.model.trunc);
        out
    }

    fn zero_like(&self) -> Self {
        let z = Series::zero(self.model.base.clone(), self.model.trunc);
        RingClass {
            model: self.model.clone(),
            q: vec![z; self.model.r as usize + 1],
        }
    }

    fn add(&self, other: &Self) -> Self {
        let q = self
            .q
            .iter()
            .zip(&other.q)
            .map(|(a, b)| a.add(b))
            .collect();
        RingClass {
            model: self.model.clone(),
            q,
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        let r = self.model.r as usize;
        let z = Series::zero(self.model.base.clone(), self.model.trunc);
        let mut conv = vec![z; 2 * r + 1];
        for (i, a) in self.q.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.q.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] = conv[i + j].add(&a.mul(b));
            }
        }
        let model = ProjectiveModel {
            inner: self.model.clone(),
        };
        model.reduce(conv)
    }

    fn neg(&self) -> Self {
        RingClass {
            model: self.model.clone(),
            q: self.q.iter().map(|a| a.neg()).collect(),
        }
    }

    fn scale(&self, c: &C) -> Self {
        let mut out = RingClass {
            model: self.model.clone(),
            q: self.q.iter().map(|a| a.scale(c)).collect(),
        };
        out.normalize();
        out
    }

    fn component(&self, d: u32) -> Self {
        let mut out = self.zero_like();
        for (j, q) in self.q.iter().enumerate() {
            if (j as u32) <= d {
                out.q[j] = q.component(d - j as u32);
            }
        }
        out
    }

    fn constant_term(&self) -> C {
        self.q[0].constant_term()
    }

    fn is_zero(&self) -> bool {
        self.q.iter().all(|q| q.is_zero())
    }
}

/// Base variables `x1..xr` (roots of E) and `a1..an` (roots of alpha), and
/// the model over them.
fn verifier_setup(
    n: u32,
    r: u32,
    trunc: u32,
) -> Result<(ProjectiveModel<Rational>, Vec<Series<Rational>>), CalcError> {
    let mut pairs: Vec<(String, u32)> = Vec::new();
    for k in 1..=r {
        pairs.push((format!("x{k}"), 1));
    }
    for i in 1..=n {
        pairs.push((format!("a{i}"), 1));
    }
    let base = VarTable::new(&pairs)?;
    let roots = (1..=r)
        .map(|k| Series::<Rational>::var(base.clone(), trunc, &format!("x{k}")).unwrap())
        .collect();
    let model = ProjectiveModel::new(base.clone(), trunc, roots)?;
    let alpha_roots = (1..=n)
        .map(|i| Series::<Rational>::var(base.clone(), trunc, &format!("a{i}")).unwrap())
        .collect();
    Ok((model, alpha_roots))
}

fn split_total_chern(base_one: &Series<Rational>, roots: &[Series<Rational>]) -> Series<Rational> {
    let mut out = base_one.clone();
    for x in roots {
        out = out.mul(&base_one.add(x));
    }
    out
}

/// Evaluates `P_{m,r}` at rank `t0 = rank`, with the t-variables replaced
/// by the Chern classes of alpha and the u-variables by those of E.
fn evaluate_p(
    m: u32,
    r: u32,
    rank: i64,
    chern_alpha: &Series<Rational>,
    model: &ProjectiveModel<Rational>,
) -> Result<Series<Rational>, CalcError> {
    let ctx = UniversalContext::new(m, r, m + r)?;
    let p = ctx.p_nr()?;
    let one = Series::<Rational>::one(model.base().clone(), model.trunc());
    Ok(substitute(
        &p,
        &one,
        |c| c.eval(rank),
        |name| {
            let j: u32 = name[1..].parse().unwrap();
            if name.starts_with('t') {
                chern_alpha.component(j)
            } else {
                model.e_chern(j).clone()
            }
        },
    ))
}

/// Riemann-Roch without denominators for the zero section: for every
/// degree i, the i-th Chern class of the pushforward of alpha equals the
/// Gysin image of `P_{i-r,r}(rk alpha, c(alpha); c(E))`.
pub fn verify_rr_without_denominators(n: u32, r: u32, trunc: u32) -> Result<SuiteReport, CalcError> {
    if r == 0 || trunc < r {
        return Err(CalcError::BadParameter(
            "need r >= 1 and truncation >= r".into(),
        ));
    }
    let (model, alpha_roots) = verifier_setup(n, r, trunc)?;
    let one = Series::<Rational>::one(model.base().clone(), trunc);
    let chern_alpha = split_total_chern(&one, &alpha_roots);
    let rank = IVPoly::constant(Rational::from_int(i64::from(n)));
    let total = model.chern_of_pushforward(&rank, &chern_alpha)?;

    let mut cases = Vec::new();
    for i in 1..=trunc {
        let lhs = total.component(i);
        let rhs = if i >= r {
            let p_val = evaluate_p(i - r, r, i64::from(n), &chern_alpha, &model)?;
            model.gysin_zero_section(&p_val)?
        } else {
            model.zero()
        };
        let pass = lhs == rhs;
        let first_failure = if pass {
            None
        } else {
            Some(format!("degree {i}: {:?} vs {:?}", lhs, rhs))
        };
        cases.push(CaseReport::new(
            format!("chern-degree-{i}"),
            [
                ("n".to_string(), n.to_string()),
                ("r".to_string(), r.to_string()),
                ("truncate".to_string(), trunc.to_string()),
                ("degree".to_string(), i.to_string()),
            ],
            pass,
            first_failure,
        ));
    }
    Ok(SuiteReport::new(
        format!("rr-without-denominators-n{n}-r{r}"),
        cases,
    ))
}

/// Grothendieck-Riemann-Roch for the zero section: the Chern character of
/// the pushforward equals the Gysin image of `ch(alpha) td(E)^{-1}`.
pub fn verify_grr_zero_section(n: u32, r: u32, trunc: u32) -> Result<SuiteReport, CalcError> {
    if r == 0 || trunc < r {
        return Err(CalcError::BadParameter(
            "need r >= 1 and truncation >= r".into(),
        ));
    }
    let (model, alpha_roots) = verifier_setup(n, r, trunc)?;
    let one = Series::<Rational>::one(model.base().clone(), trunc);
    let chern_alpha = split_total_chern(&one, &alpha_roots);
    let rank = IVPoly::constant(Rational::from_int(i64::from(n)));

    // ch(f_* alpha) = ch(p-sharp alpha) ch(lambda_{-1}(Q-dual)).
    let alpha_up = VirtualBundle::from_chern(
        rank.clone(),
        model.from_base(&chern_alpha),
    )?;
    let lam = VirtualBundle::from_chern(
        IVPoly::zero(),
        model.lambda_minus_one_dual_quotient()?,
    )?;
    let lhs = alpha_up
        .chern_character()?
        .mul(&lam.chern_character()?);

    // f_!(ch(alpha) td(E)^{-1}).
    let alpha_base = VirtualBundle::from_chern(rank, chern_alpha.clone())?;
    let e_bundle = VirtualBundle::from_chern(
        IVPoly::constant(Rational::from_int(i64::from(r))),
        model.e_total_chern(),
    )?;
    let td_e_inv = inverse(&e_bundle.todd()?)?;
    let rhs = model.gysin_zero_section(&alpha_base.chern_character()?.mul(&td_e_inv))?;

    let mut cases = Vec::new();
    for d in 0..=trunc {
        let l = lhs.component(d);
        let rr = rhs.component(d);
        let pass = l == rr;
        let first_failure = if pass {
            None
        } else {
            Some(format!("degree {d}: {:?} vs {:?}", l, rr))
        };
        cases.push(CaseReport::new(
            format!("character-degree-{d}"),
            [
                ("n".to_string(), n.to_string()),
                ("r".to_string(), r.to_string()),
                ("truncate".to_string(), trunc.to_string()),
                ("degree".to_string(), d.to_string()),
            ],
            pass,
            first_failure,
        ));
    }
    Ok(SuiteReport::new(
        format!("grr-zero-section-n{n}-r{r}"),
        cases,
    ))
}

/// The structural suite for the projective model: the closed form of
/// c_r(Q), `p_#(c_r(Q)) = 1`, `p_# o f_! = id`, and the trivial-bundle
/// specialization `f_!(1) = xi^r`.
pub fn verify_pushforward_basis(r: u32, trunc: u32) -> Result<SuiteReport, CalcError> {
    if r == 0 || trunc < r {
        return Err(CalcError::BadParameter(
            "need r >= 1 and truncation >= r".into(),
        ));
    }
    let (model, _) = verifier_setup(0, r, trunc)?;
    let one = Series::<Rational>::one(model.base().clone(), trunc);
    let params = [
        ("r".to_string(), r.to_string()),
        ("truncate".to_string(), trunc.to_string()),
    ];
    let mut cases = Vec::new();

    // c_r(Q) = sum_j c_j(E) xi^{r-j}.
    let top = model.quotient_top_chern()?;
    let xi = model.xi();
    let mut expect = model.zero();
    let mut xi_pow = model.one();
    for j in (0..=r).rev() {
        expect = expect.add(&model.from_base(model.e_chern(j)).mul(&xi_pow));
        if j > 0 {
            xi_pow = xi_pow.mul(&xi);
        }
    }
    let pass = top == expect;
    cases.push(CaseReport::new(
        format!("top-chern-closed-form-r{r}"),
        params.clone(),
        pass,
        if pass {
            None
        } else {
            Some(format!("{:?} vs {:?}", top, expect))
        },
    ));

    // p_#(c_r(Q)) = 1.
    let pf = model.pushforward(&top);
    let pass = pf == one;
    cases.push(CaseReport::new(
        format!("pushforward-of-top-chern-r{r}"),
        params.clone(),
        pass,
        if pass { None } else { Some(format!("{:?}", pf)) },
    ));

    // p_# o f_! = id on an assorted base class of degree <= trunc - r.
    let mut y = one.clone();
    for d in 1..=trunc.saturating_sub(r) {
        y = y.add(&model.e_total_chern().component(d.min(r)).scale(&Rational::from_int(
            i64::from(d) + 1,
        )));
    }
    let roundtrip = model.pushforward(&model.gysin_zero_section(&y)?);
    // Classes of degree beyond trunc - r cannot survive the truncation.
    let mut y_cap = y.zero_like();
    for d in 0..=trunc.saturating_sub(r) {
        y_cap = y_cap.add(&y.component(d));
    }
    let pass = roundtrip == y_cap;
    cases.push(CaseReport::new(
        format!("pushforward-after-gysin-r{r}"),
        params.clone(),
        pass,
        if pass {
            None
        } else {
            Some(format!("{:?} vs {:?}", roundtrip, y_cap))
        },
    ));

    // Trivial bundle: f_!(1) = xi^r.
    let base = VarTable::new(&[("w", 1)])?;
    let zeros = vec![Series::<Rational>::zero(base.clone(), trunc); r as usize];
    let trivial = ProjectiveModel::new(base.clone(), trunc, zeros)?;
    let f1 = trivial.gysin_zero_section(&Series::one(base.clone(), trunc))?;
    let mut xi_r = trivial.one();
    for _ in 0..r {
        xi_r = xi_r.mul(&trivial.xi());
    }
    let pass = f1 == xi_r;
    cases.push(CaseReport::new(
        format!("trivial-bundle-gysin-r{r}"),
        params,
        pass,
        if pass {
            None
        } else {
            Some(format!("{:?} vs {:?}", f1, xi_r))
        },
    ));

    Ok(SuiteReport::new(format!("pushforward-basis-r{r}"), cases))
}
