//! The TOML model-file format.
//!
//! ```toml
//! name = "diamond"
//! # Y_a ▷ X_i ∋ c·X_k and Y_a ◁ X_i ∋ c·Y_k, as [a, i, k, c]
//! action_left = []
//! action_right = [["X", "T", "Y", -1], ["Y", "T", "X", 1]]
//!
//! [g1]
//! basis = ["T"]
//! brackets = []                      # [i, j, k, c]: [e_i, e_j] ∋ c·e_k
//!
//! [g2]
//! basis = ["X", "Y", "Z"]
//! brackets = [["X", "Y", "Z", 1]]
//!
//! [group]
//! act_left = ["θ"]                   # ψ ▷ φ, one entry per G₁ coordinate
//! act_right = ["cos(θ)*x + sin(θ)*y", "cos(θ)*y - sin(θ)*x", "z"]
//! g1.coords = ["θ"]
//! g2.coords = ["x", "y", "z"]
//! mul.g1 = ["θ.1 + θ.2"]             # two-point suffixes .1/.2
//! mul.g2 = ["x.1 + x.2", "y.1 + y.2", "z.1 + z.2 + 1/2*x.1*y.2 - 1/2*y.1*x.2"]
//! inv.g1 = ["-θ"]
//! inv.g2 = ["-x", "-y", "-z"]
//!
//! [pipeline]
//! classes = ["θ2∧θ3∧θ4"]
//! ```
//!
//! Indices in bracket and action entries are either 0-based integers or
//! declared basis names; coefficients are integers or `"p/q"` strings.
//! Expressions use the grammar of [`hopfcyc_core::parse`].

use std::collections::BTreeMap;
use std::path::Path;

use hopfcyc_core::group::{GroupLaws, GroupModel};
use hopfcyc_core::lie::{LieAlgebra, MatchedPairLie};
use hopfcyc_core::models::{self, MatchedPairModel};
use hopfcyc_core::parse::parse_scalar;
use hopfcyc_core::{ScalarExpr, Var, Q};
use serde::Deserialize;

use crate::error::{CliError, Result};

/// Text of the shipped diamond model.
pub const DIAMOND_TOML: &str = include_str!("../models/diamond.toml");

/// A loaded model together with its optional pipeline section.
#[derive(Clone, Debug)]
pub struct ModelFile {
    /// The matched pair.
    pub model: MatchedPairModel,
    /// Class selectors listed under `[pipeline]` (empty: validation only).
    pub classes: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    name: Option<String>,
    #[serde(default)]
    action_left: Vec<Vec<toml::Value>>,
    #[serde(default)]
    action_right: Vec<Vec<toml::Value>>,
    g1: RawAlgebra,
    g2: RawAlgebra,
    group: RawGroup,
    #[serde(default)]
    pipeline: RawPipeline,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    basis: Vec<String>,
    #[serde(default)]
    brackets: Vec<Vec<toml::Value>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    act_left: Vec<String>,
    act_right: Vec<String>,
    g1: RawCoords,
    g2: RawCoords,
    mul: RawPair,
    inv: RawPair,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoords {
    coords: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    g1: Vec<String>,
    g2: Vec<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPipeline {
    #[serde(default)]
    classes: Vec<String>,
}

fn index(v: &toml::Value, names: &[String], what: &str) -> Result<usize> {
    match v {
        toml::Value::Integer(i) if *i >= 0 && (*i as usize) < names.len() => Ok(*i as usize),
        toml::Value::Integer(i) => Err(CliError::Schema(format!("{what}: index {i} out of range 0..{}", names.len()))),
        toml::Value::String(s) => {
            names.iter().position(|n| n == s).ok_or_else(|| CliError::Schema(format!("{what}: undeclared basis name {s:?}")))
        }
        other => Err(CliError::Schema(format!("{what}: expected an index or a name, found {other}"))),
    }
}

fn rational(v: &toml::Value, what: &str) -> Result<Q> {
    match v {
        toml::Value::Integer(i) => Ok(Q::from_integer((*i).into())),
        toml::Value::String(s) => parse_scalar(s)
            .ok()
            .and_then(|e| e.as_rational())
            .ok_or_else(|| CliError::Syntax(format!("{what}: {s:?} is not a rational literal"))),
        other => Err(CliError::Syntax(format!("{what}: expected an integer or \"p/q\", found {other}"))),
    }
}

type Entry = (usize, usize, usize, Q);

fn entries(raw: &[Vec<toml::Value>], names: [&[String]; 3], what: &str) -> Result<Vec<Entry>> {
    raw.iter()
        .enumerate()
        .map(|(n, e)| {
            let at = format!("{what}[{n}]");
            if e.len() != 4 {
                return Err(CliError::Schema(format!("{at}: expected [i, j, k, coeff], found {} items", e.len())));
            }
            Ok((index(&e[0], names[0], &at)?, index(&e[1], names[1], &at)?, index(&e[2], names[2], &at)?, rational(&e[3], &at)?))
        })
        .collect()
}

fn algebra(raw: &RawAlgebra, what: &str) -> Result<LieAlgebra> {
    let b = &raw.basis;
    let list = entries(&raw.brackets, [b, b, b], &format!("{what}.brackets"))?;
    Ok(LieAlgebra::new(b.clone(), &list)?)
}

fn exprs(list: &[String], expected: usize, what: &str) -> Result<Vec<ScalarExpr>> {
    if list.len() != expected {
        return Err(CliError::Schema(format!("{what}: expected {expected} expressions, found {}", list.len())));
    }
    list.iter().map(|s| parse_scalar(s).map_err(|e| CliError::Syntax(format!("{what}: {s:?}: {e}")))).collect()
}

fn coords(list: &[String], what: &str) -> Result<Vec<Var>> {
    let mut seen = std::collections::BTreeSet::new();
    for c in list {
        let ok = c.chars().next().is_some_and(char::is_alphabetic) && c.chars().all(|ch| ch.is_alphanumeric() || ch == '_');
        if !ok {
            return Err(CliError::Schema(format!("{what}: {c:?} is not a coordinate name")));
        }
        if !seen.insert(c) {
            return Err(CliError::Schema(format!("{what}: duplicate coordinate {c:?}")));
        }
    }
    Ok(list.iter().map(|c| Var::new(c)).collect())
}

/// Parses a model document.
pub fn parse_model(text: &str) -> Result<ModelFile> {
    let raw: RawModel = toml::from_str(text).map_err(|e| CliError::Syntax(e.to_string()))?;
    let g1 = algebra(&raw.g1, "g1")?;
    let g2 = algebra(&raw.g2, "g2")?;
    let (b1, b2) = (&raw.g1.basis, &raw.g2.basis);
    let left = entries(&raw.action_left, [b2, b1, b1], "action_left")?;
    let right = entries(&raw.action_right, [b2, b1, b2], "action_right")?;
    let lie = MatchedPairLie::new(g1, g2, &left, &right)?;

    let c1 = coords(&raw.group.g1.coords, "group.g1.coords")?;
    let c2 = coords(&raw.group.g2.coords, "group.g2.coords")?;
    let (n1, n2) = (c1.len(), c2.len());
    let laws = GroupLaws {
        mul1: exprs(&raw.group.mul.g1, n1, "group.mul.g1")?,
        mul2: exprs(&raw.group.mul.g2, n2, "group.mul.g2")?,
        inv1: exprs(&raw.group.inv.g1, n1, "group.inv.g1")?,
        inv2: exprs(&raw.group.inv.g2, n2, "group.inv.g2")?,
        act_left: exprs(&raw.group.act_left, n1, "group.act_left")?,
        act_right: exprs(&raw.group.act_right, n2, "group.act_right")?,
    };
    let declared: Vec<&Var> = c1.iter().chain(&c2).collect();
    for (what, list) in [
        ("group.mul.g1", &laws.mul1),
        ("group.mul.g2", &laws.mul2),
        ("group.inv.g1", &laws.inv1),
        ("group.inv.g2", &laws.inv2),
        ("group.act_left", &laws.act_left),
        ("group.act_right", &laws.act_right),
    ] {
        for e in list {
            for v in e.free_vars() {
                if !declared.iter().any(|d| d.name() == v.name()) {
                    return Err(CliError::Schema(format!("{what}: undeclared coordinate {:?}", v.name())));
                }
            }
        }
    }
    let group = GroupModel::new(c1, c2, laws)?;
    let name = raw.name.unwrap_or_else(|| "model".into());
    let model = MatchedPairModel::new(&name, lie, group)?;
    Ok(ModelFile { model, classes: raw.pipeline.classes })
}

/// Loads `builtin:<name>` or a model file path.
pub fn load(spec: &str) -> Result<ModelFile> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        if name == "diamond" {
            return parse_model(DIAMOND_TOML);
        }
        let model = models::builtin(name).map_err(|_| CliError::Schema(format!("unknown builtin model {name:?}")))?;
        return Ok(ModelFile { model, classes: Vec::new() });
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_model(&text)
}

/// Names of the shipped built-in models.
pub fn builtin_names() -> BTreeMap<&'static str, &'static str> {
    [
        ("diamond", "rotations of ℝ acting on the Heisenberg group"),
        ("heisenberg", "trivial G₁, Heisenberg G₂"),
        ("abelian-plane", "ℝ × ℝ with trivial actions"),
        ("shear", "ℝ acting on ℝ² by a shear"),
    ]
    .into_iter()
    .collect()
}
