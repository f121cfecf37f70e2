//! The universal integral Riemann-Roch polynomials.
//!
//! Working in formal Chern roots a_1..a_n and b_1..b_r, the pipeline builds
//!
//! - `F_{n,r}(a, b) = prod_i prod_{S subset b} (1 + a_i - sum S)^{(-1)^|S|}`,
//! - `g_r(b) = F_{1,r}(0, b)`, rewritten as `1 + s_r G_r(s_1..s_r)` in the
//!   elementary symmetric functions of the b's,
//! - `J_{n,r} = F_{n,r} g_r^{-n}`, whose deviation from 1 is divisible by
//!   `b_1..b_r`,
//! - `h_{n,r}` = degree-(n+r) component of `J_{n,r} g_r^{t0}` with
//!   coefficients polynomial in the symbolic rank `t0`,
//! - `P_{n,r}(t0, t_1..t_n; u_1..u_r)` = the e-basis form of `h_{n,r}`
//!   divided exactly by `u_r`; weighted homogeneous of degree n when `t_j`
//!   and `u_j` carry weight j.
//!
//! `verify_generating_identity` checks the generating identity
//! `(1 + u_r G_r)^{t0} (c * (1 + u_r G_r)) = 1 + u_r sum_n P_{n,r}` degree
//! by degree for a generic total class `c = 1 + tau_1 + tau_2 + ...`.

use std::sync::Arc;

use crate::arith::{IVPoly, Rational};
use crate::error::CalcError;
use crate::report::{CaseReport, SuiteReport};
use crate::series::{int_pow, pow_binomial, substitute, GradedRing, Series, VarTable};
use crate::symfunc::{star0, subset_product, to_elementary_basis, Alphabet, ElementaryTarget};

/// Parameters of one `P_{n,r}` computation: n a-roots, r b-roots, truncation
/// degree at least n + r.
#[derive(Clone, Debug)]
pub struct UniversalContext {
    n: u32,
    r: u32,
    trunc: u32,
    vars: Arc<VarTable>,
    a_alph: Alphabet,
    b_alph: Alphabet,
}

impl UniversalContext {
    pub fn new(n: u32, r: u32, trunc: u32) -> Result<Self, CalcError> {
        if r == 0 {
            return Err(CalcError::BadParameter("r must be positive".into()));
        }
        if trunc < n + r {
            return Err(CalcError::BadParameter(format!(
                "truncation {trunc} below n + r = {}",
                n + r
            )));
        }
        let mut pairs: Vec<(String, u32)> = Vec::new();
        for i in 1..=n {
            pairs.push((format!("a{i}"), 1));
        }
        for k in 1..=r {
            pairs.push((format!("b{k}"), 1));
        }
        let vars = VarTable::new(&pairs)?;
        Ok(UniversalContext {
            n,
            r,
            trunc,
            vars,
            a_alph: Alphabet::numbered("a", n as usize),
            b_alph: Alphabet::numbered("b", r as usize),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    /// The monomial `b_1 .. b_r` in the working roots.
    pub fn b_product(&self) -> Series<IVPoly> {
        let mut exps = vec![0u16; self.vars.len()];
        for k in 0..self.r as usize {
            exps[self.n as usize + k] = 1;
        }
        Series::from_term(self.vars.clone(), self.trunc, exps, IVPoly::one())
    }

    /// `F_{n,r}`: the signed subset product over the b's, shifted by each a.
    pub fn f_nr(&self) -> Result<Series<IVPoly>, CalcError> {
        let mut out = Series::one(self.vars.clone(), self.trunc);
        for i in 1..=self.n {
            let a = Series::var(self.vars.clone(), self.trunc, &format!("a{i}"))?;
            out = out.mul(&subset_product(
                &self.vars,
                self.trunc,
                &self.b_alph,
                &a,
            )?);
        }
        Ok(out)
    }

    /// `g_r` in this context's variables.
    pub fn g_in_ctx(&self) -> Result<Series<IVPoly>, CalcError> {
        let zero = Series::zero(self.vars.clone(), self.trunc);
        subset_product(&self.vars, self.trunc, &self.b_alph, &zero)
    }

    /// `J_{n,r} = F_{n,r} g_r^{-n}`.
    pub fn j_nr(&self) -> Result<Series<IVPoly>, CalcError> {
        let f = self.f_nr()?;
        let g = self.g_in_ctx()?;
        Ok(f.mul(&int_pow(&g, -i64::from(self.n))?))
    }

    /// `h_{n,r}`: degree-(n+r) component of `J_{n,r} g_r^{t0}`.
    pub fn h_nr(&self) -> Result<Series<IVPoly>, CalcError> {
        let j = self.j_nr()?;
        let g = self.g_in_ctx()?;
        Ok(j.mul(&pow_binomial(&g, &IVPoly::t0())?)
            .component(self.n + self.r))
    }

    /// Equal alternative route for `h_{n,r}`: the same component of
    /// `F_{n,r} g_r^{t0 - n}`.
    pub fn h_nr_alt(&self) -> Result<Series<IVPoly>, CalcError> {
        let f = self.f_nr()?;
        let g = self.g_in_ctx()?;
        let exponent = IVPoly::t0().sub(&IVPoly::constant(Rational::from_int(i64::from(self.n))));
        Ok(f.mul(&pow_binomial(&g, &exponent)?)
            .component(self.n + self.r))
    }

    fn e_targets(&self) -> (Vec<ElementaryTarget>, Arc<VarTable>) {
        let mut pairs: Vec<(String, u32)> = Vec::new();
        for j in 1..=self.n as usize {
            pairs.push((format!("t{j}"), j as u32));
        }
        for j in 1..=self.r as usize {
            pairs.push((format!("u{j}"), j as u32));
        }
        let target = VarTable::new(&pairs).unwrap();
        let specs = vec![
            ElementaryTarget::new(
                self.a_alph.clone(),
                (1..=self.n as usize).map(|j| format!("t{j}")).collect(),
            ),
            ElementaryTarget::new(
                self.b_alph.clone(),
                (1..=self.r as usize).map(|j| format!("u{j}")).collect(),
            ),
        ];
        (specs, target)
    }

    /// `P_{n,r}(t0, t_1..t_n; u_1..u_r)`: the e-basis form of `h_{n,r}`,
    /// divided exactly by `u_r`.
    pub fn p_nr(&self) -> Result<Series<IVPoly>, CalcError> {
        let h = self.h_nr()?;
        let (specs, target) = self.e_targets();
        let he = to_elementary_basis(&h, &specs, &target)?;
        let mut exps = vec![0u16; target.len()];
        exps[self.n as usize + self.r as usize - 1] = 1;
        let ur = Series::from_term(target.clone(), self.trunc, exps, IVPoly::one());
        he.divide_exact(&ur)
    }
}

/// `g_r` in a standalone table of roots `b1..br`.
pub fn g_r(r: u32, trunc: u32) -> Result<Series<IVPoly>, CalcError> {
    let pairs: Vec<(String, u32)> = (1..=r).map(|k| (format!("b{k}"), 1)).collect();
    let vars = VarTable::new(&pairs)?;
    let zero = Series::zero(vars.clone(), trunc);
    subset_product(&vars, trunc, &Alphabet::numbered("b", r as usize), &zero)
}

/// `G_r(s_1..s_r)`, defined by `g_r = 1 + s_r G_r` in the elementary
/// symmetric functions `s_j` of the roots.
pub fn big_g_r(r: u32, trunc: u32) -> Result<Series<IVPoly>, CalcError> {
    if r == 0 {
        return Err(CalcError::BadParameter("r must be positive".into()));
    }
    let g = g_r(r, trunc)?;
    let pairs: Vec<(String, u32)> = (1..=r).map(|j| (format!("s{j}"), j)).collect();
    let target = VarTable::new(&pairs)?;
    let specs = [ElementaryTarget::new(
        Alphabet::numbered("b", r as usize),
        (1..=r).map(|j| format!("s{j}")).collect(),
    )];
    let ge = to_elementary_basis(&g, &specs, &target)?;
    let mut exps = vec![0u16; r as usize];
    exps[r as usize - 1] = 1;
    let sr = Series::from_term(target.clone(), trunc, exps, IVPoly::one());
    ge.sub(&Series::one(target.clone(), trunc)).divide_exact(&sr)
}

/// Checks the generating identity for the polynomials `P_{*,r}` degree by
/// degree up to `up_to_degree`, with a generic total class in weight-j
/// variables `tau_j` and symbolic rank `t0`.
pub fn verify_generating_identity(r: u32, up_to_degree: u32) -> Result<SuiteReport, CalcError> {
    if r == 0 || up_to_degree < r {
        return Err(CalcError::BadParameter(
            "need r >= 1 and a degree bound >= r".into(),
        ));
    }
    let n_tau = up_to_degree - r;
    let trunc = up_to_degree;
    let mut pairs: Vec<(String, u32)> = Vec::new();
    for j in 1..=n_tau {
        pairs.push((format!("tau{j}"), j));
    }
    for j in 1..=r {
        pairs.push((format!("u{j}"), j));
    }
    let vars = VarTable::new(&pairs)?;
    let one = Series::<IVPoly>::one(vars.clone(), trunc);

    // 1 + u_r G_r(u_1..u_r), moved into the working table.
    let gg = big_g_r(r, trunc)?;
    let gg_here: Series<IVPoly> = substitute(&gg, &one, |c| c.clone(), |name| {
        let j: u32 = name[1..].parse().unwrap();
        Series::var(vars.clone(), trunc, &format!("u{j}")).unwrap()
    });
    let ur = Series::<IVPoly>::var(vars.clone(), trunc, &format!("u{r}"))?;
    let unit = one.add(&ur.mul(&gg_here));

    // Left side.
    let mut c_total = one.clone();
    for j in 1..=n_tau {
        c_total = c_total.add(&Series::var(vars.clone(), trunc, &format!("tau{j}"))?);
    }
    let lhs = pow_binomial(&unit, &IVPoly::t0())?.mul(&star0(&c_total, &unit)?);

    // Right side: 1 + u_r sum_{n >= r} P_{n-r,r}(t0, tau; u).
    let mut rhs = one.clone();
    for n in r..=up_to_degree {
        let m = n - r;
        let ctx = UniversalContext::new(m, r, m + r)?;
        let p = ctx.p_nr()?;
        let p_here: Series<IVPoly> = substitute(&p, &one, |c| c.clone(), |name| {
            let j: u32 = name[1..].parse().unwrap();
            let target = if name.starts_with('t') {
                format!("tau{j}")
            } else {
                format!("u{j}")
            };
            Series::var(vars.clone(), trunc, &target).unwrap()
        });
        rhs = rhs.add(&ur.mul(&p_here));
    }

    let mut cases = Vec::new();
    for d in 0..=up_to_degree {
        let l = lhs.component(d);
        let rr = rhs.component(d);
        let pass = l == rr;
        let first_failure = if pass {
            None
        } else {
            Some(format!("degree {d}: {:?} vs {:?}", l, rr))
        };
        cases.push(CaseReport::new(
            format!("degree-{d}"),
            [("r".to_string(), r.to_string()), ("degree".to_string(), d.to_string())],
            pass,
            first_failure,
        ));
    }
    Ok(SuiteReport::new(
        format!("universal-generating-identity-r{r}"),
        cases,
    ))
}

/// Checks `c(lambda_{-1}(E-dual)) = 1 + e_r(b) G_r(e_1(b), .., e_r(b))`
/// for a split rank-r bundle with free roots.
pub fn verify_lambda_chern(r: u32, trunc: u32) -> Result<SuiteReport, CalcError> {
    use crate::chern::{SignedRoot, VirtualBundle};

    if r == 0 {
        return Err(CalcError::BadParameter("r must be positive".into()));
    }
    let pairs: Vec<(String, u32)> = (1..=r).map(|k| (format!("b{k}"), 1)).collect();
    let vars = VarTable::new(&pairs)?;
    let roots: Vec<SignedRoot<Series<Rational>>> = (1..=r)
        .map(|k| SignedRoot {
            class: Series::var(vars.clone(), trunc, &format!("b{k}")).unwrap(),
            mult: 1,
        })
        .collect();
    let sample = Series::<Rational>::one(vars.clone(), trunc);
    let bundle = VirtualBundle::from_roots(&sample, roots)?;
    let lhs = bundle.lambda_minus_one_dual()?.chern().clone();
    // Right side rebuilt from G_r in the roots.
    let gg = big_g_r(r, trunc)?;
    let elem: Vec<Series<Rational>> = (0..=trunc)
        .map(|d| bundle.chern().component(d))
        .collect();
    let g_expanded: Series<Rational> = substitute(
        &gg,
        &sample,
        |p| p.as_constant().expect("constant coefficient"),
        |name| {
            let j: usize = name[1..].parse().unwrap();
            elem.get(j).cloned().unwrap_or_else(|| sample.zero_like())
        },
    );
    let rhs = sample.add(&elem[r as usize].mul(&g_expanded));
    let pass = lhs == rhs;
    let first_failure = if pass {
        None
    } else {
        Some(format!("{:?} vs {:?}", lhs, rhs))
    };
    Ok(SuiteReport::new(
        format!("lambda-chern-r{r}"),
        vec![CaseReport::new(
            format!("lambda-chern-r{r}-N{trunc}"),
            [
                ("r".to_string(), r.to_string()),
                ("truncate".to_string(), trunc.to_string()),
            ],
            pass,
            first_failure,
        )],
    ))
}

/// Checks the two structural facts about `J_{n,r}`: its deviation from 1 is
/// exactly divisible by `b_1 .. b_r`, and it equals the rank-zero star
/// product of the generic total class of the a-roots with `g_r`.
pub fn verify_star_kernel(n: u32, r: u32, trunc: u32) -> Result<SuiteReport, CalcError> {
    let ctx = UniversalContext::new(n, r, trunc)?;
    let j = ctx.j_nr()?;
    let one = Series::one(ctx.vars().clone(), trunc);
    let params = [
        ("n".to_string(), n.to_string()),
        ("r".to_string(), r.to_string()),
        ("truncate".to_string(), trunc.to_string()),
    ];

    let div = j.sub(&one).divide_exact(&ctx.b_product());
    let div_pass = div.is_ok();
    let div_case = CaseReport::new(
        format!("divisibility-n{n}-r{r}-N{trunc}"),
        params.clone(),
        div_pass,
        if div_pass {
            None
        } else {
            Some("deviation from 1 not divisible by the b-product".into())
        },
    );

    let mut c = one.clone();
    for i in 1..=n {
        let a = Series::var(ctx.vars().clone(), trunc, &format!("a{i}"))?;
        c = c.mul(&one.add(&a));
    }
    let s = star0(&c, &ctx.g_in_ctx()?)?;
    let star_pass = s == j;
    let star_case = CaseReport::new(
        format!("star-kernel-n{n}-r{r}-N{trunc}"),
        params,
        star_pass,
        if star_pass {
            None
        } else {
            Some(format!("{:?} vs {:?}", s, j))
        },
    );
    Ok(SuiteReport::new(
        format!("star-kernel-n{n}-r{r}"),
        vec![div_case, star_case],
    ))
}
