//! Parser and evaluator for bundle description files.
//!
//! A file holds one or more blocks:
//!
//! ```text
//! bundle E
//! rank 2
//! root x 1
//! root y 1
//!
//! bundle F
//! rank 1
//! chern c1
//! ```
//!
//! Each block gives the bundle either by roots (name and signed
//! multiplicity; the names become weight-1 variables) or by named Chern
//! coefficients (`chern c1 c2 ...`, where the j-th name is a weight-j
//! variable). Exactly one of the two must be present, and a declared rank
//! must match the root multiplicities.

use rroch::{
    IVPoly, Rational, Series, SignedRoot, VarTable, VirtualBundle,
};

pub enum EvalError {
    /// Malformed input: maps to exit code 2.
    Usage(String),
    /// Well-formed input violating a declared invariant: exit code 1.
    Invariant(String),
}

#[derive(Debug, Default)]
pub struct Decl {
    pub name: String,
    pub rank: Option<i64>,
    pub roots: Vec<(String, i64)>,
    pub chern: Vec<String>,
}

pub fn parse(text: &str) -> Result<Vec<Decl>, String> {
    let mut decls: Vec<Decl> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        let key = words.next().unwrap();
        let rest: Vec<&str> = words.collect();
        let err = |msg: &str| format!("line {}: {msg}", lineno + 1);
        match key {
            "bundle" => {
                let [name] = rest.as_slice() else {
                    return Err(err("expected: bundle NAME"));
                };
                decls.push(Decl {
                    name: name.to_string(),
                    ..Decl::default()
                });
            }
            "rank" => {
                let decl = decls.last_mut().ok_or_else(|| err("rank before bundle"))?;
                let [value] = rest.as_slice() else {
                    return Err(err("expected: rank INTEGER"));
                };
                let value: i64 = value.parse().map_err(|_| err("rank must be an integer"))?;
                if decl.rank.replace(value).is_some() {
                    return Err(err("duplicate rank"));
                }
            }
            "root" => {
                let decl = decls.last_mut().ok_or_else(|| err("root before bundle"))?;
                let (name, mult) = match rest.as_slice() {
                    [name] => (name.to_string(), 1),
                    [name, mult] => (
                        name.to_string(),
                        mult.parse()
                            .map_err(|_| err("multiplicity must be an integer"))?,
                    ),
                    _ => return Err(err("expected: root NAME [MULTIPLICITY]")),
                };
                decl.roots.push((name, mult));
            }
            "chern" => {
                let decl = decls.last_mut().ok_or_else(|| err("chern before bundle"))?;
                if rest.is_empty() {
                    return Err(err("expected: chern NAME..."));
                }
                if !decl.chern.is_empty() {
                    return Err(err("duplicate chern line"));
                }
                decl.chern = rest.iter().map(|s| s.to_string()).collect();
            }
            other => return Err(err(&format!("unknown directive {other}"))),
        }
    }
    if decls.is_empty() {
        return Err("no bundle blocks found".into());
    }
    for decl in &decls {
        if decl.rank.is_none() {
            return Err(format!("bundle {}: missing rank", decl.name));
        }
        if decl.roots.is_empty() == decl.chern.is_empty() {
            return Err(format!(
                "bundle {}: exactly one of roots or chern coefficients required",
                decl.name
            ));
        }
    }
    Ok(decls)
}

fn build_table(decls: &[Decl]) -> Result<std::sync::Arc<VarTable>, EvalError> {
    let mut pairs: Vec<(String, u32)> = Vec::new();
    let mut push = |name: &str, weight: u32| -> Result<(), EvalError> {
        if let Some((_, w)) = pairs.iter().find(|(n, _)| n == name) {
            if *w != weight {
                return Err(EvalError::Usage(format!(
                    "variable {name} used with weights {w} and {weight}"
                )));
            }
            return Ok(());
        }
        pairs.push((name.to_string(), weight));
        Ok(())
    };
    for decl in decls {
        for (name, _) in &decl.roots {
            push(name, 1)?;
        }
        for (j, name) in decl.chern.iter().enumerate() {
            push(name, j as u32 + 1)?;
        }
    }
    VarTable::new(&pairs).map_err(|e| EvalError::Usage(e.to_string()))
}

pub fn evaluate(
    decls: &[Decl],
    op: &str,
    trunc: u32,
) -> Result<Series<Rational>, EvalError> {
    let table = build_table(decls)?;
    let invariant = |e: rroch::CalcError| EvalError::Invariant(e.to_string());

    let mut bundles: Vec<VirtualBundle<Series<Rational>>> = Vec::new();
    for decl in decls {
        let rank = decl.rank.unwrap();
        let bundle = if !decl.roots.is_empty() {
            let roots: Vec<SignedRoot<Series<Rational>>> = decl
                .roots
                .iter()
                .map(|(name, mult)| {
                    Ok(SignedRoot {
                        class: Series::var(table.clone(), trunc, name)
                            .map_err(|e| EvalError::Usage(e.to_string()))?,
                        mult: *mult,
                    })
                })
                .collect::<Result<_, EvalError>>()?;
            let sample = Series::<Rational>::one(table.clone(), trunc);
            let b = VirtualBundle::from_roots(&sample, roots).map_err(invariant)?;
            if b.rank().as_integer() != Some(rank) {
                return Err(EvalError::Invariant(format!(
                    "bundle {}: declared rank {rank} but roots sum to {}",
                    decl.name,
                    b.rank()
                )));
            }
            b
        } else {
            let mut chern = Series::<Rational>::one(table.clone(), trunc);
            for name in &decl.chern {
                chern = chern.add(
                    &Series::var(table.clone(), trunc, name)
                        .map_err(|e| EvalError::Usage(e.to_string()))?,
                );
            }
            VirtualBundle::from_chern(IVPoly::constant(Rational::from_int(rank)), chern)
                .map_err(invariant)?
        };
        bundles.push(bundle);
    }

    match op {
        "star" => {
            let mut acc = bundles[0].clone();
            for b in &bundles[1..] {
                acc = acc.star(b).map_err(invariant)?;
            }
            Ok(acc.chern().clone())
        }
        _ => {
            let mut acc = bundles[0].clone();
            for b in &bundles[1..] {
                acc = acc.sum(b);
            }
            match op {
                "chern" => Ok(acc.chern().clone()),
                "ch" => acc.chern_character().map_err(invariant),
                "todd" => acc.todd().map_err(invariant),
                other => Err(EvalError::Usage(format!("unknown operation {other}"))),
            }
        }
    }
}
