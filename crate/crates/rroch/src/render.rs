//! Deterministic text, LaTeX, and JSON rendering of series.
//!
//! Terms are emitted in the canonical ascending graded-lex order, so equal
//! series always render to identical strings. Coefficients polynomial in
//! the rank variable `t0` are printed in falling powers; in LaTeX they are
//! matched against binomial-coefficient basis elements `binom(t0+s, k)`
//! first, since the universal polynomials are naturally expressed there.

use serde::Serialize;

use crate::arith::{IVPoly, Rational};
use crate::series::Series;

fn rational_text(c: &Rational) -> String {
    format!("{c}")
}

fn rational_latex(c: &Rational) -> String {
    if c.is_integer() {
        format!("{}", c.numer())
    } else if c.is_negative() {
        format!("-\\frac{{{}}}{{{}}}", c.numer().magnitude(), c.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

/// `t0` polynomial in falling powers, e.g. `1/2 t0^2 + 1/2 t0`.
pub fn poly_text(p: &IVPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    for k in (0..=p.degree()).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let var = match k {
            0 => String::new(),
            1 => "t0".to_string(),
            _ => format!("t0^{k}"),
        };
        let piece = if var.is_empty() {
            rational_text(&c)
        } else if c.is_one() {
            var
        } else if c.neg().is_one() {
            format!("-{var}")
        } else {
            format!("{} {var}", rational_text(&c))
        };
        parts.push(piece);
    }
    join_signed(parts)
}

fn join_signed(parts: Vec<String>) -> String {
    let mut out = String::new();
    for (i, piece) in parts.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&piece);
        } else if let Some(rest) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&piece);
        }
    }
    out
}

/// Whether `p` is a single monomial `c t0^k` (so it can be printed without
/// parentheses as a series coefficient).
fn poly_is_monomial(p: &IVPoly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
}

fn latex_var(name: &str) -> String {
    let split = name.find(|ch: char| ch.is_ascii_digit());
    match split {
        Some(i) if i > 0 => {
            let (head, digits) = name.split_at(i);
            if digits.len() == 1 {
                format!("{head}_{digits}")
            } else {
                format!("{head}_{{{digits}}}")
            }
        }
        _ => name.to_string(),
    }
}

/// LaTeX for a `t0` polynomial: a scaled binomial basis element when the
/// polynomial matches `c binom(t0+s, k)` for a small shift s, otherwise
/// falling powers.
pub fn poly_latex(p: &IVPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let k = p.degree();
    if k >= 1 {
        for s in -4i64..=4 {
            let b = IVPoly::binomial(k).shift(s);
            let lead = b.coeff(k);
            let c = p.coeff(k).div(&lead);
            if b.scale(&c) == *p {
                let arg = if s == 0 {
                    "t_0".to_string()
                } else if s > 0 {
                    format!("t_0+{s}")
                } else {
                    format!("t_0-{}", -s)
                };
                let binom = format!("\\binom{{{arg}}}{{{k}}}");
                return if c.is_one() {
                    binom
                } else if c.neg().is_one() {
                    format!("-{binom}")
                } else {
                    format!("{} {binom}", rational_latex(&c))
                };
            }
        }
    }
    let mut parts = Vec::new();
    for j in (0..=k).rev() {
        let c = p.coeff(j);
        if c.is_zero() {
            continue;
        }
        let var = match j {
            0 => String::new(),
            1 => "t_0".to_string(),
            _ => format!("t_0^{{{j}}}"),
        };
        let piece = if var.is_empty() {
            rational_latex(&c)
        } else if c.is_one() {
            var
        } else if c.neg().is_one() {
            format!("-{var}")
        } else {
            format!("{} {var}", rational_latex(&c))
        };
        parts.push(piece);
    }
    join_signed(parts)
}

fn monomial_text(s: &Series<IVPoly>, exps: &[u16], latex: bool) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = if latex {
            latex_var(s.vars().name(i))
        } else {
            s.vars().name(i).to_string()
        };
        let piece = match (e, latex) {
            (1, _) => name,
            (_, false) => format!("{name}^{e}"),
            (_, true) => format!("{name}^{{{e}}}"),
        };
        parts.push(piece);
    }
    parts.join(" ")
}

/// Rendering order: ascending total degree, and within a degree the
/// lexicographically larger exponent vector first (so t-terms precede
/// u-terms in the universal polynomials).
fn ordered_terms(s: &Series<IVPoly>) -> Vec<(&crate::series::Monomial, &IVPoly)> {
    let mut terms: Vec<_> = s.terms().collect();
    terms.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| b.exps().cmp(a.exps()))
    });
    terms
}

fn series_render(s: &Series<IVPoly>, latex: bool) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (m, c) in ordered_terms(s) {
        let vars = monomial_text(s, m.exps(), latex);
        let coeff = if latex { poly_latex(c) } else { poly_text(c) };
        let piece = if vars.is_empty() {
            coeff
        } else if coeff == "1" {
            vars
        } else if coeff == "-1" {
            format!("-{vars}")
        } else if poly_is_monomial(c) || (latex && !coeff.contains(" + ") && !coeff.contains(" - "))
        {
            format!("{coeff} {vars}")
        } else if latex {
            format!("\\left({coeff}\\right) {vars}")
        } else {
            format!("({coeff}) {vars}")
        };
        parts.push(piece);
    }
    join_signed(parts)
}

/// Plain-text rendering in ascending graded-lex order.
pub fn series_text(s: &Series<IVPoly>) -> String {
    series_render(s, false)
}

/// LaTeX rendering in ascending graded-lex order.
pub fn series_latex(s: &Series<IVPoly>) -> String {
    series_render(s, true)
}

/// Lifts rational coefficients into constant `t0` polynomials so every
/// series shares one rendering path.
pub fn lift_rational(s: &Series<Rational>) -> Series<IVPoly> {
    s.map_coeffs(|c| IVPoly::constant(c.clone()))
}

#[derive(Debug, Serialize)]
pub struct TermJson {
    pub exps: Vec<u16>,
    pub coeff: String,
}

#[derive(Debug, Serialize)]
pub struct SeriesJson {
    pub truncate: u32,
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

/// Schema-stable JSON form: terms in canonical order, coefficients as
/// exact text.
pub fn series_json(s: &Series<IVPoly>) -> SeriesJson {
    SeriesJson {
        truncate: s.trunc(),
        vars: s.vars().names().map(str::to_string).collect(),
        terms: ordered_terms(s)
            .into_iter()
            .map(|(m, c)| TermJson {
                exps: m.exps().to_vec(),
                coeff: poly_text(c),
            })
            .collect(),
    }
}
