//! The `cohomology` and `realize` commands: Lie algebra cohomology of the
//! bicrossed algebra, and the transport of a class through `𝓔`, `Θ` and
//! `Φ` to a cyclic cochain on the convolution algebra.

use std::fmt::Write as _;

use hopfcyc_core::cochain::{CochainMaps, GroupCochainForm};
use hopfcyc_core::conv::Integral;
use hopfcyc_core::emit::Format;
use hopfcyc_core::group::Frame;
use hopfcyc_core::lie::{cochain_text, CEComplex, CeCochain, Cohomology};
use hopfcyc_core::models::MatchedPairModel;
use hopfcyc_core::phi::PhiMap;
use hopfcyc_core::Q;
use num_traits::{One, Zero};

use crate::error::{CliError, Result};

/// Betti numbers and representatives in the `θ` coframe.
#[derive(Clone, Debug)]
pub struct CohomologyTable {
    /// Coframe names `θ1, …`.
    pub frame: Vec<String>,
    /// The computed cohomology.
    pub cohomology: Cohomology,
}

/// Computes the Chevalley–Eilenberg cohomology of the bicrossed algebra.
pub fn cohomology(m: &MatchedPairModel) -> Result<CohomologyTable> {
    let alg = m.algebra()?;
    let ce = CEComplex::new(&alg);
    Ok(CohomologyTable { frame: m.frame_names(), cohomology: ce.cohomology() })
}

fn latex_frame(name: &str) -> String {
    match name.strip_prefix('θ') {
        Some(k) => format!("\\theta_{{{k}}}"),
        None => name.to_string(),
    }
}

/// A CE cochain in the coframe, in the requested format.
pub fn class_text(a: &CeCochain, frame: &[String], f: Format) -> String {
    match f {
        Format::Latex => {
            let names: Vec<String> = frame.iter().map(|n| latex_frame(n)).collect();
            cochain_text(a, &names).replace('∧', "\\wedge ")
        }
        _ => cochain_text(a, frame),
    }
}

impl CohomologyTable {
    /// `betti<TAB>b0 b1 …` followed by `H<k>.<i><TAB>representative` lines.
    pub fn render(&self, f: Format) -> String {
        let c = &self.cohomology;
        let mut out = String::new();
        let betti: Vec<String> = c.betti.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "betti\t{}", betti.join(" "));
        for (k, reps) in c.representatives.iter().enumerate() {
            for (i, r) in reps.iter().enumerate() {
                let _ = writeln!(out, "H{k}.{}\t{}", i + 1, class_text(r, &self.frame, f));
            }
        }
        out
    }
}

/// Resolves a class selector: `1`, a wedge of coframe names
/// (`θ2∧θ3∧θ4`, also `theta2^theta3^theta4`), or `degree:index` into the
/// deterministic representative list (index 1-based).
pub fn parse_selector(m: &MatchedPairModel, sel: &str) -> Result<CeCochain> {
    let sel = sel.trim();
    let n = m.dim();
    if let Some((d, i)) = sel.split_once(':') {
        let d: usize = d.trim().parse().map_err(|_| CliError::Selector(format!("bad degree in {sel:?}")))?;
        let i: usize = i.trim().parse().map_err(|_| CliError::Selector(format!("bad index in {sel:?}")))?;
        let table = cohomology(m)?;
        return table
            .cohomology
            .representatives
            .get(d)
            .and_then(|reps| reps.get(i.wrapping_sub(1)))
            .cloned()
            .ok_or_else(|| CliError::Selector(format!("no representative {i} in degree {d}")));
    }
    if sel == "1" {
        return Ok([(Vec::new(), Q::one())].into_iter().collect());
    }
    let mut idx = Vec::new();
    for tok in sel.split(['∧', '^']) {
        let tok = tok.trim();
        let num = tok
            .strip_prefix('θ')
            .or_else(|| tok.strip_prefix("theta"))
            .ok_or_else(|| CliError::Selector(format!("{tok:?} is not a coframe name θk")))?;
        let k: usize = num.parse().map_err(|_| CliError::Selector(format!("{tok:?} is not a coframe name θk")))?;
        if k == 0 || k > n {
            return Err(CliError::Selector(format!("{tok:?}: coframe index out of range 1..={n}")));
        }
        idx.push(k - 1);
    }
    let (sign, sorted) =
        hopfcyc_core::form::sort_with_sign(&idx).ok_or_else(|| CliError::Selector(format!("{sel:?} repeats a coframe element")))?;
    let c = if sign < 0 { -Q::one() } else { Q::one() };
    Ok([(sorted, c)].into_iter().collect())
}

/// One bidegree component of a realized class.
#[derive(Clone, Debug)]
pub struct Component {
    /// `𝓔(ω)` in bidegree `(p, q)`.
    pub e: GroupCochainForm,
    /// `Θ(𝓔(ω))`.
    pub theta: GroupCochainForm,
    /// Cyclic degree `l` of `Φ(Θ𝓔ω) ∈ C^l(𝒜)` (it takes `l + 1` arguments).
    pub cyclic_degree: usize,
    /// `Φ(Θ𝓔ω)` on the symbolic probe `(f₀U*_{ψ₀}, …)`, or the reason it
    /// could not be formed.
    pub phi: std::result::Result<Integral, String>,
}

/// The output of `realize`.
#[derive(Clone, Debug)]
pub struct Realization {
    /// The class.
    pub class: CeCochain,
    /// Its degree.
    pub degree: usize,
    /// `dim G₁`.
    pub dim1: usize,
    /// Coframe names.
    pub frame: Vec<String>,
    /// Per-bidegree data, by increasing `q`.
    pub components: Vec<Component>,
}

impl Realization {
    /// Parity of the periodic cyclic target: `degree + dim G₁ mod 2`.
    pub fn parity(&self) -> &'static str {
        if (self.degree + self.dim1).is_multiple_of(2) {
            "even"
        } else {
            "odd"
        }
    }

    /// Deterministic rendering, one `key<TAB>value` line per item.
    pub fn render(&self, f: Format) -> String {
        let names: Vec<String> = match f {
            Format::Latex => self.frame[..self.dim1].iter().map(|n| latex_frame(n)).collect(),
            _ => self.frame[..self.dim1].to_vec(),
        };
        let names = &names[..];
        let mut out = String::new();
        let _ = writeln!(out, "class\t{}", class_text(&self.class, &self.frame, f));
        let _ = writeln!(out, "degree\t{}", self.degree);
        let _ = writeln!(out, "parity\t{}", self.parity());
        for c in &self.components {
            let (p, q) = (c.e.p, c.e.q);
            let _ = writeln!(out, "E[{p},{q}]\t{}", c.e.render(names, f));
            let _ = writeln!(out, "Theta[{p},{q}]\t{}", c.theta.render(names, f));
            match &c.phi {
                Ok(i) => {
                    let _ = writeln!(out, "Phi[{p},{q}]\tC^{}\t{}", c.cyclic_degree, i.render(f));
                }
                Err(e) => {
                    let _ = writeln!(out, "Phi[{p},{q}]\tC^{}\tunavailable: {e}", c.cyclic_degree);
                }
            }
        }
        out
    }
}

fn witness_text(w: &CeCochain, frame: &[String]) -> String {
    let nonzero: CeCochain = w.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.clone(), c.clone())).collect();
    cochain_text(&nonzero, frame)
}

/// Transports a closed class through `𝓔`, `Θ` and `Φ`.  Fails with
/// [`hopfcyc_core::Error::NotACocycle`] (carrying `∂ω`) on non-closed input.
pub fn realize(m: &MatchedPairModel, frame: Frame, omega: &CeCochain) -> Result<Realization> {
    let maps = CochainMaps::with_frame(m, frame)?;
    let d = maps.ce().d(omega);
    if !d.is_empty() {
        return Err(hopfcyc_core::Error::NotACocycle(format!("∂ω = {}", witness_text(&d, &m.frame_names()))).into());
    }
    let degree = omega.keys().map(Vec::len).max().unwrap_or(0);
    let phi = PhiMap::new(&m.group);
    let mut components = Vec::new();
    for e in maps.e_components(omega)? {
        let theta = maps.theta(&e)?;
        let l = phi.arity(&theta)?;
        let value = phi.symbolic_probe(l).and_then(|probe| phi.phi_integral(&theta, &probe)).map_err(|err| err.to_string());
        components.push(Component { e, theta, cyclic_degree: l, phi: value });
    }
    Ok(Realization { class: omega.clone(), degree, dim1: maps.dim1(), frame: m.frame_names(), components })
}
