//! Formal Chern-root alphabets and symmetric-function algorithms.
//!
//! Provides elementary symmetric series, conversion of multi-symmetric
//! polynomials to the elementary basis (Gauss' leading-term descent),
//! signed subset products, and the rank-zero `star0` kernel of the
//! lambda-ring tensor product.
//!
//! `star0(u, v)` resolves each unit series into exactly N formal roots
//! (N = truncation), substitutes the graded components for the elementary
//! symmetric functions in the cached bi-symmetric expansion of
//! `prod (1 + x_i + y_j)`, and divides by `u^N v^N`. This normalization is
//! stable under adding trivial roots and reproduces the pairwise-root
//! product on genuine split bundles.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{Rational, Scalar};
use crate::error::CalcError;
use crate::series::{inverse, int_pow, substitute, GradedRing, Series, VarTable};

/// An ordered list of degree-1 root variables inside a variable table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    vars: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Alphabet {
            vars: names.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    /// Root names `prefix1 .. prefixN`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        Alphabet {
            vars: (1..=n).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.vars
    }

    fn positions(&self, table: &VarTable) -> Result<Vec<usize>, CalcError> {
        self.vars
            .iter()
            .map(|n| {
                table
                    .position(n)
                    .ok_or_else(|| CalcError::UnknownVariable(n.clone()))
            })
            .collect()
    }
}

/// The k-th elementary symmetric series of the alphabet.
pub fn elementary<C: Scalar>(
    vars: &Arc<VarTable>,
    trunc: u32,
    alphabet: &Alphabet,
    k: usize,
) -> Result<Series<C>, CalcError> {
    if k > alphabet.len() {
        return Err(CalcError::IndexOutOfRange {
            k,
            size: alphabet.len(),
        });
    }
    let pos = alphabet.positions(vars)?;
    let mut out = Series::zero(vars.clone(), trunc);
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let mut exps = vec![0u16; vars.len()];
        for &i in &subset {
            exps[pos[i]] = 1;
        }
        out = out.add(&Series::from_term(vars.clone(), trunc, exps, C::one()));
        if k == 0 {
            break;
        }
        // Next k-subset in lexicographic order.
        let n = alphabet.len();
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if subset[i] != i + n - k {
                break;
            }
        }
        if subset[i] == i + n - k {
            return Ok(out);
        }
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
    Ok(out)
}

/// Whether `f` is invariant under every permutation of the alphabet
/// (checked on adjacent transpositions).
pub fn is_symmetric<C: Scalar>(f: &Series<C>, alphabet: &Alphabet) -> Result<bool, CalcError> {
    let pos = alphabet.positions(f.vars())?;
    for w in pos.windows(2) {
        if f.swap_vars(w[0], w[1]) != *f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One alphabet together with the names of its target elementary variables
/// (`targets[k-1]` receives `e_k`, and must carry weight `k`).
#[derive(Clone, Debug)]
pub struct ElementaryTarget {
    pub alphabet: Alphabet,
    pub targets: Vec<String>,
}

impl ElementaryTarget {
    pub fn new(alphabet: Alphabet, targets: Vec<String>) -> Self {
        assert_eq!(alphabet.len(), targets.len());
        ElementaryTarget { alphabet, targets }
    }
}

/// Rewrites a polynomial, symmetric separately in each alphabet, in the
/// elementary symmetric basis. Gauss' descent: repeatedly subtract the
/// elementary product matching the graded-lex leading partition.
pub fn to_elementary_basis<C: Scalar>(
    f: &Series<C>,
    specs: &[ElementaryTarget],
    target: &Arc<VarTable>,
) -> Result<Series<C>, CalcError> {
    let vars = f.vars();
    let trunc = f.trunc();
    // Positions of each alphabet in the source table, and of each e-variable
    // in the target table.
    let mut alpha_pos: Vec<Vec<usize>> = Vec::new();
    let mut e_pos: Vec<Vec<usize>> = Vec::new();
    for spec in specs {
        alpha_pos.push(spec.alphabet.positions(vars)?);
        let mut tp = Vec::new();
        for (k, name) in spec.targets.iter().enumerate() {
            let p = target
                .position(name)
                .ok_or_else(|| CalcError::UnknownVariable(name.clone()))?;
            if target.weight(p) != (k + 1) as u32 {
                return Err(CalcError::BadVarTable(format!(
                    "target {name} must have weight {}",
                    k + 1
                )));
            }
            tp.push(p);
        }
        e_pos.push(tp);
    }
    // Every variable of the support must belong to some alphabet.
    let mut owner = vec![usize::MAX; vars.len()];
    for (ai, pos) in alpha_pos.iter().enumerate() {
        for &p in pos {
            owner[p] = ai;
        }
    }
    for (m, _) in f.terms() {
        for (i, &e) in m.exps().iter().enumerate() {
            if e > 0 && owner[i] == usize::MAX {
                return Err(CalcError::NotSymmetric(vars.name(i).to_string()));
            }
        }
    }
    for spec in specs {
        if !is_symmetric(f, &spec.alphabet)? {
            return Err(CalcError::NotSymmetric(spec.alphabet.vars.join(",")));
        }
    }

    let mut elem_cache: HashMap<(usize, usize), Series<C>> = HashMap::new();
    let mut out = Series::zero(target.clone(), trunc);
    for d in 0..=trunc {
        let mut g = f.component(d);
        while let Some((m, c)) = g.leading() {
            let c = c.clone();
            // Leading partition per alphabet and the matching e-exponents.
            let mut target_exps = vec![0u16; target.len()];
            let mut expansion = Series::one(vars.clone(), trunc);
            for (ai, pos) in alpha_pos.iter().enumerate() {
                let lambda: Vec<u16> = pos.iter().map(|&p| m.exps()[p]).collect();
                for w in lambda.windows(2) {
                    if w[0] < w[1] {
                        return Err(CalcError::NotSymmetric(
                            specs[ai].alphabet.vars.join(","),
                        ));
                    }
                }
                for k in 0..lambda.len() {
                    let next = if k + 1 < lambda.len() { lambda[k + 1] } else { 0 };
                    let mult = lambda[k] - next;
                    if mult == 0 {
                        continue;
                    }
                    target_exps[e_pos[ai][k]] += mult;
                    let e_k = elem_cache
                        .entry((ai, k + 1))
                        .or_insert_with(|| {
                            elementary(vars, trunc, &specs[ai].alphabet, k + 1)
                                .expect("alphabet validated")
                        })
                        .clone();
                    for _ in 0..mult {
                        expansion = expansion.mul(&e_k);
                    }
                }
            }
            g = g.sub(&expansion.scale(&c));
            out = out.add(&Series::from_term(target.clone(), trunc, target_exps, c));
        }
    }
    Ok(out)
}

/// Expands a polynomial in elementary variables back into the roots;
/// inverse of `to_elementary_basis`.
pub fn expand_in_roots<C: Scalar>(
    f: &Series<C>,
    specs: &[ElementaryTarget],
    roots_table: &Arc<VarTable>,
) -> Result<Series<C>, CalcError> {
    let trunc = f.trunc();
    let mut map: HashMap<String, Series<C>> = HashMap::new();
    for spec in specs {
        for (k, name) in spec.targets.iter().enumerate() {
            map.insert(
                name.clone(),
                elementary(roots_table, trunc, &spec.alphabet, k + 1)?,
            );
        }
    }
    let one = Series::one(roots_table.clone(), trunc);
    Ok(substitute(f, &one, |c| c.clone(), |name| {
        map.get(name)
            .cloned()
            .unwrap_or_else(|| Series::zero(roots_table.clone(), trunc))
    }))
}

/// The signed subset product
/// `prod_{S subset alphabet} (1 + shift - sum_{k in S} b_k)^{(-1)^{|S|}}`.
pub fn subset_product<C: Scalar>(
    vars: &Arc<VarTable>,
    trunc: u32,
    alphabet: &Alphabet,
    shift: &Series<C>,
) -> Result<Series<C>, CalcError> {
    let pos = alphabet.positions(vars)?;
    let one = Series::one(vars.clone(), trunc);
    let mut out = one.clone();
    for mask in 0u32..(1 << alphabet.len()) {
        let mut base = one.add(shift);
        for (i, &p) in pos.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let mut exps = vec![0u16; vars.len()];
                exps[p] = 1;
                base = base.sub(&Series::from_term(vars.clone(), trunc, exps, C::one()));
            }
        }
        if mask.count_ones() % 2 == 0 {
            out = out.mul(&base);
        } else {
            out = out.mul(&inverse(&base)?);
        }
    }
    Ok(out)
}

/// Cached bi-symmetric expansion of `prod_{i,j <= m} (1 + x_i + y_j)` in the
/// elementary symmetric functions of the two root sets, truncated at `trunc`.
/// Variables are `ex1..exm, ey1..eym` with weight k on index k.
fn star_kernel_expansion(m: u32, trunc: u32) -> Arc<Series<Rational>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<Series<Rational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(m, trunc)) {
        return hit.clone();
    }
    let m_us = m as usize;
    let mut root_vars: Vec<(String, u32)> = Vec::new();
    for i in 1..=m_us {
        root_vars.push((format!("x{i}"), 1));
    }
    for j in 1..=m_us {
        root_vars.push((format!("y{j}"), 1));
    }
    let roots = VarTable::new(&root_vars).unwrap();
    let xs = Alphabet::numbered("x", m_us);
    let ys = Alphabet::numbered("y", m_us);
    let one = Series::<Rational>::one(roots.clone(), trunc);
    let mut prod = one.clone();
    for i in 1..=m_us {
        let xi = Series::<Rational>::var(roots.clone(), trunc, &format!("x{i}")).unwrap();
        for j in 1..=m_us {
            let yj = Series::<Rational>::var(roots.clone(), trunc, &format!("y{j}")).unwrap();
            prod = prod.mul(&one.add(&xi).add(&yj));
        }
    }
    let mut target_vars: Vec<(String, u32)> = Vec::new();
    for k in 1..=m_us {
        target_vars.push((format!("ex{k}"), k as u32));
    }
    for k in 1..=m_us {
        target_vars.push((format!("ey{k}"), k as u32));
    }
    let target = VarTable::new(&target_vars).unwrap();
    let specs = [
        ElementaryTarget::new(xs, (1..=m_us).map(|k| format!("ex{k}")).collect()),
        ElementaryTarget::new(ys, (1..=m_us).map(|k| format!("ey{k}")).collect()),
    ];
    let expansion =
        Arc::new(to_elementary_basis(&prod, &specs, &target).expect("kernel expansion"));
    cache
        .lock()
        .unwrap()
        .insert((m, trunc), expansion.clone());
    expansion
}

/// Rank-zero kernel of the lambda-ring tensor product, resolved with
/// `n_roots` formal roots per side.
pub fn star0_resolved<R: GradedRing>(u: &R, v: &R, n_roots: u32) -> Result<R, CalcError> {
    if u.constant_term() != R::Coeff::one() || v.constant_term() != R::Coeff::one() {
        return Err(CalcError::ConstantTermNotOne);
    }
    if u.trunc() != v.trunc() {
        return Err(CalcError::ContextMismatch);
    }
    let trunc = u.trunc();
    if n_roots < trunc {
        return Err(CalcError::BadParameter(format!(
            "need at least {trunc} resolving roots, got {n_roots}"
        )));
    }
    let expansion = star_kernel_expansion(n_roots, trunc);
    let one = u.one_like();
    let u_comps: Vec<R> = (0..=trunc).map(|d| u.component(d)).collect();
    let v_comps: Vec<R> = (0..=trunc).map(|d| v.component(d)).collect();
    let zero = u.zero_like();
    let resolved: R = substitute(
        &expansion,
        &one,
        |q| R::Coeff::from_rational(q),
        |name| {
            let (side, k) = name.split_at(2);
            let k: u32 = k.parse().unwrap();
            let comps = if side == "ex" { &u_comps } else { &v_comps };
            if k <= trunc {
                comps[k as usize].clone()
            } else {
                zero.clone()
            }
        },
    );
    let m = i64::from(n_roots);
    Ok(resolved
        .mul(&int_pow(u, -m)?)
        .mul(&int_pow(v, -m)?))
}

/// The rank-zero star product, resolved with exactly N = truncation roots.
pub fn star0<R: GradedRing>(u: &R, v: &R) -> Result<R, CalcError> {
    star0_resolved(u, v, u.trunc())
}
