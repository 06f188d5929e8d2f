//! Deterministic emitters for scalars (plain text / machine-readable
//! expression grammar, and LaTeX).
//!
//! The text form is also the machine-readable form: it re-parses with
//! [`crate::parse::parse_scalar`] to the same canonical value.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::scalar::{rational_text, Const, FuncAtom, Monomial, ScalarExpr, Var, Q};

/// Output flavour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// Human-readable; identical to [`Format::Expr`] for scalars.
    Text,
    /// LaTeX source.
    Latex,
    /// Machine-readable expression grammar (re-parseable).
    Expr,
}

fn const_factors_text(k: &Const) -> Vec<String> {
    let mut out = Vec::new();
    match k.sqrt_pi {
        0 => {}
        1 => out.push("sqrt(pi)".into()),
        2 => out.push("pi".into()),
        n => out.push(format!("sqrt(pi)^{n}")),
    }
    if !k.radicand.is_one() {
        out.push(format!("sqrt({})", k.radicand));
    }
    if !k.exp.is_zero() {
        out.push(format!("exp({})", rational_text(&k.exp)));
    }
    out
}

fn func_text(f: &FuncAtom) -> String {
    let args: Vec<String> = f.args.iter().map(|a| a.as_ref().map_or_else(|| "0".to_string(), Var::to_string)).collect();
    if f.deriv.iter().all(|&d| d == 0) {
        format!("{}({})", f.name, args.join(","))
    } else {
        let d: Vec<String> = f.deriv.iter().map(u32::to_string).collect();
        format!("d[{}]{}({})", d.join(","), f.name, args.join(","))
    }
}

fn pow_text(base: String, k: u32) -> String {
    if k == 1 {
        base
    } else {
        format!("{base}^{k}")
    }
}

/// Text factors of a monomial, in canonical order: coordinates, trig,
/// functions, Gaussians, constants.
pub fn monomial_factors_text(m: &Monomial) -> Vec<String> {
    let mut out = Vec::new();
    for (v, &k) in m.vars() {
        out.push(pow_text(v.to_string(), k));
    }
    for (v, t) in m.trig() {
        if t.cos > 0 {
            out.push(pow_text(format!("cos({v})"), t.cos));
        }
        if t.sin > 0 {
            out.push(format!("sin({v})"));
        }
    }
    for (f, &k) in m.funcs() {
        out.push(pow_text(func_text(f), k));
    }
    for (v, c) in m.gauss() {
        if c.is_one() {
            out.push(format!("exp(-{v}^2)"));
        } else {
            out.push(format!("exp(-{}*{v}^2)", rational_text(c)));
        }
    }
    out.extend(const_factors_text(m.konst()));
    out
}

/// Joins signed terms `(coefficient, factor list)` into a sum.
fn join_terms(terms: Vec<(Q, Vec<String>)>, coeff: impl Fn(&Q) -> String, sep: &str) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (c, factors)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if factors.is_empty() {
            s.push_str(&coeff(&a));
        } else {
            if !a.is_one() {
                s.push_str(&coeff(&a));
                s.push_str(sep);
            }
            s.push_str(&factors.join(sep));
        }
    }
    s
}

/// Text rendering of a scalar (re-parseable).
pub fn scalar_text(e: &ScalarExpr) -> String {
    let terms = e.terms().map(|(m, c)| (c.clone(), monomial_factors_text(m))).collect();
    join_terms(terms, rational_text, "*")
}

/// Text rendering wrapped in parentheses when it has several terms.
pub fn scalar_text_grouped(e: &ScalarExpr) -> String {
    if e.len() > 1 {
        format!("({})", scalar_text(e))
    } else {
        scalar_text(e)
    }
}

const GREEK: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa", "lambda", "mu", "nu", "xi", "pi", "rho",
    "sigma", "tau", "phi", "chi", "psi", "omega",
];

const GREEK_UNICODE: &[(char, &str)] = &[
    ('α', "alpha"),
    ('β', "beta"),
    ('γ', "gamma"),
    ('δ', "delta"),
    ('ε', "epsilon"),
    ('θ', "theta"),
    ('λ', "lambda"),
    ('μ', "mu"),
    ('ξ', "xi"),
    ('ρ', "rho"),
    ('σ', "sigma"),
    ('τ', "tau"),
    ('φ', "phi"),
    ('χ', "chi"),
    ('ψ', "psi"),
    ('ω', "omega"),
];

/// LaTeX name of a bare identifier.
pub fn name_latex(name: &str) -> String {
    let mut chars = name.chars();
    if let (Some(c), None) = (chars.next(), chars.next()) {
        if let Some((_, g)) = GREEK_UNICODE.iter().find(|(u, _)| *u == c) {
            return format!("\\{g}");
        }
        return c.to_string();
    }
    if GREEK.contains(&name) {
        return format!("\\{name}");
    }
    if let Some(split) = name.find('_') {
        let (a, b) = name.split_at(split);
        return format!("{}_{{{}}}", name_latex(a), &b[1..]);
    }
    format!("\\mathrm{{{name}}}")
}

/// LaTeX rendering of a variable (`x.3` becomes `x_{3}`).
pub fn var_latex(v: &Var) -> String {
    match v.index() {
        None => name_latex(v.name()),
        Some(i) => format!("{}_{{{}}}", name_latex(v.name()), i),
    }
}

fn rational_latex(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn monomial_factors_latex(m: &Monomial) -> Vec<String> {
    let mut out = Vec::new();
    let sup = |k: u32| if k == 1 { String::new() } else { format!("^{{{k}}}") };
    for (v, &k) in m.vars() {
        out.push(format!("{}{}", var_latex(v), sup(k)));
    }
    for (v, t) in m.trig() {
        if t.cos > 0 {
            out.push(format!("\\cos{}({})", sup(t.cos), var_latex(v)));
        }
        if t.sin > 0 {
            out.push(format!("\\sin({})", var_latex(v)));
        }
    }
    for (f, &k) in m.funcs() {
        let args: Vec<String> = f.args.iter().map(|a| a.as_ref().map_or_else(|| "0".to_string(), var_latex)).collect();
        let total: u32 = f.deriv.iter().sum();
        let head = if total == 0 {
            name_latex(&f.name)
        } else if f.deriv.len() == 1 {
            if total <= 3 {
                format!("{}{}", name_latex(&f.name), "'".repeat(total as usize))
            } else {
                format!("{}^{{({total})}}", name_latex(&f.name))
            }
        } else {
            let d: Vec<String> = f.deriv.iter().map(u32::to_string).collect();
            format!("\\partial^{{({})}}{}", d.join(","), name_latex(&f.name))
        };
        let body = format!("{head}({})", args.join(","));
        out.push(if k == 1 { body } else { format!("\\left({body}\\right)^{{{k}}}") });
    }
    for (v, c) in m.gauss() {
        let coef = if c.is_one() { String::new() } else { rational_latex(c) };
        out.push(format!("e^{{-{coef}{}^{{2}}}}", var_latex(v)));
    }
    let k = m.konst();
    match k.sqrt_pi {
        0 => {}
        1 => out.push("\\sqrt{\\pi}".into()),
        2 => out.push("\\pi".into()),
        n => out.push(format!("\\sqrt{{\\pi}}^{{{n}}}")),
    }
    if !k.radicand.is_one() {
        out.push(format!("\\sqrt{{{}}}", k.radicand));
    }
    if !k.exp.is_zero() {
        out.push(format!("e^{{{}}}", rational_latex(&k.exp)));
    }
    out
}

/// LaTeX rendering of a scalar.
pub fn scalar_latex(e: &ScalarExpr) -> String {
    let terms = e.terms().map(|(m, c)| (c.clone(), monomial_factors_latex(m))).collect();
    join_terms(terms, rational_latex, " ")
}

/// LaTeX rendering wrapped in `\left(…\right)` when it has several terms.
pub fn scalar_latex_grouped(e: &ScalarExpr) -> String {
    if e.len() > 1 {
        format!("\\left({}\\right)", scalar_latex(e))
    } else {
        scalar_latex(e)
    }
}

/// Renders a scalar in the requested format.
pub fn scalar(e: &ScalarExpr, f: Format) -> String {
    match f {
        Format::Text | Format::Expr => scalar_text(e),
        Format::Latex => scalar_latex(e),
    }
}

/// Renders a scalar, parenthesized when it has several terms.
pub fn scalar_grouped(e: &ScalarExpr, f: Format) -> String {
    match f {
        Format::Text | Format::Expr => scalar_text_grouped(e),
        Format::Latex => scalar_latex_grouped(e),
    }
}
