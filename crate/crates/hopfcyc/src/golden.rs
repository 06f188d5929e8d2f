//! Golden files and canonical comparison.
//!
//! Two kinds of files live under `golden/`:
//!
//! * **term tables** (`*.terms`): lines `key<TAB>basis<TAB>coefficient`,
//!   one per term; terms with equal `(key, basis)` are summed, and
//!   coefficients are parsed into canonical [`ScalarExpr`]s before
//!   comparison, so formatting and term order do not matter;
//! * **frozen command output** (`*.expr`): the `realize --format expr`
//!   output, compared line by line after re-parsing every expression.
//!
//! `#` starts a comment line in both.

use std::collections::BTreeMap;

use hopfcyc_core::form::PolyForm;
use hopfcyc_core::parse::parse_scalar;
use hopfcyc_core::ScalarExpr;

use crate::error::{CliError, Result};

/// `(key, basis) ↦ coefficient`, zero terms dropped.
pub type TermTable = BTreeMap<(String, String), ScalarExpr>;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

/// Adds a term to a table, dropping it if the sum vanishes.
pub fn add_term(t: &mut TermTable, key: &str, basis: &str, c: ScalarExpr) {
    let k = (key.to_string(), basis.to_string());
    let e = t.entry(k.clone()).or_default();
    *e += &c;
    if e.is_zero() {
        t.remove(&k);
    }
}

/// Parses a term table.
pub fn parse_terms(text: &str) -> Result<TermTable> {
    let mut out = TermTable::new();
    for (n, line) in content_lines(text) {
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 3 {
            return Err(CliError::Golden(format!("line {}: expected key<TAB>basis<TAB>coefficient", n + 1)));
        }
        let c = parse_scalar(f[2].trim()).map_err(|e| CliError::Golden(format!("line {}: {e}", n + 1)))?;
        add_term(&mut out, f[0].trim(), f[1].trim(), c);
    }
    Ok(out)
}

/// The sub-table of one key.
pub fn section(t: &TermTable, key: &str) -> TermTable {
    t.iter().filter(|((k, _), _)| k == key).map(|(k, v)| (k.clone(), v.clone())).collect()
}

/// Human-readable differences between two tables (empty when equal).
pub fn diff(expected: &TermTable, actual: &TermTable) -> Vec<String> {
    let mut out = Vec::new();
    let keys: std::collections::BTreeSet<_> = expected.keys().chain(actual.keys()).collect();
    for k in keys {
        let (e, a) = (expected.get(k), actual.get(k));
        if e != a {
            let show = |x: Option<&ScalarExpr>| x.map_or_else(|| "0".to_string(), ToString::to_string);
            out.push(format!("{} [{}]: expected {}, got {}", k.0, k.1, show(e), show(a)));
        }
    }
    out
}

/// Basis label `dx∧dy` of a form index over the given coordinate names.
pub fn form_basis(idx: &[usize], names: &[String]) -> String {
    if idx.is_empty() {
        return "1".into();
    }
    idx.iter().map(|&i| format!("d{}", names[i])).collect::<Vec<_>>().join("∧")
}

/// Adds every term of a form under `key`, with basis labels `d<coord>∧…`
/// followed by `suffix`.
pub fn add_form(t: &mut TermTable, key: &str, form: &PolyForm, suffix: &str) {
    let names: Vec<String> = form.coords().iter().map(ToString::to_string).collect();
    for (idx, c) in form.terms() {
        add_term(t, key, &format!("{}{suffix}", form_basis(idx, &names)), c.clone());
    }
}

/// One canonicalized line of `realize` output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canon {
    /// Compared verbatim.
    Text(String),
    /// An expression with coframe names read as symbols.
    Expr(ScalarExpr),
    /// A cyclic degree with the integrand of `int(…; d…)`.
    Integral(String, ScalarExpr, String),
}

fn expr_of(s: &str) -> Result<ScalarExpr> {
    parse_scalar(&s.replace('∧', "*")).map_err(|e| CliError::Golden(format!("{s:?}: {e}")))
}

/// Canonicalizes `realize --format expr` output.
pub fn canonical_realization(text: &str) -> Result<BTreeMap<String, Canon>> {
    let mut out = BTreeMap::new();
    for (n, line) in content_lines(text) {
        let f: Vec<&str> = line.split('\t').collect();
        let key = f[0].to_string();
        let value = if key.starts_with("E[") || key.starts_with("Theta[") {
            Canon::Expr(expr_of(f.get(1).copied().unwrap_or(""))?)
        } else if key.starts_with("Phi[") && f.len() == 3 {
            match f[2].strip_prefix("int(").and_then(|s| s.strip_suffix(')')).and_then(|s| s.rsplit_once(';')) {
                Some((body, vars)) => Canon::Integral(f[1].into(), expr_of(body)?, vars.trim().into()),
                None => Canon::Text(f[1..].join("\t")),
            }
        } else {
            Canon::Text(f[1..].join("\t"))
        };
        if out.insert(key.clone(), value).is_some() {
            return Err(CliError::Golden(format!("line {}: duplicate key {key}", n + 1)));
        }
    }
    Ok(out)
}

/// Differences between two `realize` outputs after canonicalization.
pub fn diff_realization(expected: &str, actual: &str) -> Result<Vec<String>> {
    let (e, a) = (canonical_realization(expected)?, canonical_realization(actual)?);
    let keys: std::collections::BTreeSet<_> = e.keys().chain(a.keys()).collect();
    Ok(keys.into_iter().filter(|k| e.get(*k) != a.get(*k)).map(|k| format!("{k}: expected {:?}, got {:?}", e.get(k), a.get(k))).collect())
}
