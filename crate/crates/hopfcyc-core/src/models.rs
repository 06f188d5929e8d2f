//! Shipped matched-pair models and test fixtures.
//!
//! Every model bundles the Lie-algebra data with polynomial (or
//! trigonometric) group laws in exponential coordinates.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{GroupLaws, GroupModel};
use crate::hopf::Bicrossed;
use crate::lie::{LieAlgebra, MatchedPairLie, Violation};
use crate::parse::parse_scalar;
use crate::scalar::{q, ScalarExpr, Var};

/// A matched pair given both infinitesimally and globally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPairModel {
    /// Model name (used in reports).
    pub name: String,
    /// Lie-algebra data (`𝔤₁` basis first in the bicrossed algebra).
    pub lie: MatchedPairLie,
    /// Group laws.
    pub group: GroupModel,
}

impl MatchedPairModel {
    /// Bundles Lie and group data after checking dimensions.
    pub fn new(name: &str, lie: MatchedPairLie, group: GroupModel) -> Result<Self> {
        if lie.g1.dim() != group.g1_coords().len() || lie.g2.dim() != group.g2_coords().len() {
            return Err(Error::DimensionMismatch(format!(
                "Lie data ({}, {}) vs coordinates ({}, {})",
                lie.g1.dim(),
                lie.g2.dim(),
                group.g1_coords().len(),
                group.g2_coords().len()
            )));
        }
        Ok(MatchedPairModel { name: name.into(), lie, group })
    }

    /// Total dimension `dim 𝔤₁ + dim 𝔤₂`.
    pub fn dim(&self) -> usize {
        self.lie.g1.dim() + self.lie.g2.dim()
    }

    /// Names `θ1, …, θn` of the left-invariant coframe dual to the bicrossed
    /// basis.
    pub fn frame_names(&self) -> Vec<String> {
        (1..=self.dim()).map(|i| format!("θ{i}")).collect()
    }

    /// The bicrossed-product Hopf algebra of the model.
    pub fn bicrossed(&self) -> Result<Bicrossed> {
        Bicrossed::new(&self.lie.g1, &self.group)
    }

    /// The bicrossed Lie algebra (validated).
    pub fn algebra(&self) -> Result<LieAlgebra> {
        self.lie.bicrossed_lie()
    }

    /// Every Lie-level and group-level violation of the model.
    pub fn structural_violations(&self) -> Result<Vec<Violation>> {
        let mut out = self.lie.g1.antisymmetry_violations();
        out.extend(self.lie.g1.jacobi_violations());
        out.extend(self.lie.g2.antisymmetry_violations());
        out.extend(self.lie.g2.jacobi_violations());
        out.extend(self.lie.validate());
        out.extend(self.group.axiom_violations()?);
        out.extend(self.group.gamma_violations()?);
        out.extend(self.group.lie_compat_violations(&self.lie)?);
        Ok(out)
    }
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(ToString::to_string).collect()
}

fn exprs(list: &[&str]) -> Result<Vec<ScalarExpr>> {
    list.iter().map(|s| parse_scalar(s)).collect()
}

fn vars(list: &[&str]) -> Vec<Var> {
    list.iter().map(|s| Var::new(s)).collect()
}

fn heisenberg_algebra() -> Result<LieAlgebra> {
    LieAlgebra::new(names(&["X", "Y", "Z"]), &[(0, 1, 2, q(1))])
}

fn heisenberg_laws() -> Result<(Vec<ScalarExpr>, Vec<ScalarExpr>)> {
    Ok((exprs(&["x.1 + x.2", "y.1 + y.2", "z.1 + z.2 + 1/2*x.1*y.2 - 1/2*y.1*x.2"])?, exprs(&["-x", "-y", "-z"])?))
}

/// The diamond group: `G₁ = ℝ` (coordinate `θ`, basis `T`) acting on the
/// Heisenberg group `G₂` (coordinates `x, y, z`, basis `X, Y, Z` with
/// `[X,Y] = Z`) by rotation of `(x, y)`; `G₂ ▷ G₁` is trivial.
///
/// The Lie data are the ones induced by the group law:
/// `X ◁ T = −Y`, `Y ◁ T = X`.
pub fn diamond() -> Result<MatchedPairModel> {
    let (mul2, inv2) = heisenberg_laws()?;
    let laws = GroupLaws {
        mul1: exprs(&["θ.1 + θ.2"])?,
        mul2,
        inv1: exprs(&["-θ"])?,
        inv2,
        act_left: exprs(&["θ"])?,
        act_right: exprs(&["cos(θ)*x + sin(θ)*y", "cos(θ)*y - sin(θ)*x", "z"])?,
    };
    let group = GroupModel::new(vars(&["θ"]), vars(&["x", "y", "z"]), laws)?;
    let g1 = LieAlgebra::abelian(names(&["T"]));
    let lie = MatchedPairLie::new(g1, heisenberg_algebra()?, &[], &[(0, 0, 1, q(-1)), (1, 0, 0, q(1))])?;
    MatchedPairModel::new("diamond", lie, group)
}

/// The diamond Lie data with the opposite rotation sense
/// (`X ◁ T = Y`, `Y ◁ T = −X`), giving `[T,X] = −Y`, `[T,Y] = X`.
pub fn diamond_rotated_lie() -> Result<MatchedPairLie> {
    let g1 = LieAlgebra::abelian(names(&["T"]));
    MatchedPairLie::new(g1, heisenberg_algebra()?, &[], &[(0, 0, 1, q(1)), (1, 0, 0, q(-1))])
}

/// `G₁` trivial, `G₂` the Heisenberg group.
pub fn heisenberg() -> Result<MatchedPairModel> {
    let (mul2, inv2) = heisenberg_laws()?;
    let laws = GroupLaws { mul2, inv2, act_right: exprs(&["x", "y", "z"])?, ..GroupLaws::default() };
    let group = GroupModel::new(Vec::new(), vars(&["x", "y", "z"]), laws)?;
    let lie = MatchedPairLie::new(LieAlgebra::abelian(Vec::new()), heisenberg_algebra()?, &[], &[])?;
    MatchedPairModel::new("heisenberg", lie, group)
}

/// `G₁ = G₂ = ℝ` with trivial actions.
pub fn abelian_plane() -> Result<MatchedPairModel> {
    let laws = GroupLaws {
        mul1: exprs(&["u.1 + u.2"])?,
        mul2: exprs(&["v.1 + v.2"])?,
        inv1: exprs(&["-u"])?,
        inv2: exprs(&["-v"])?,
        act_left: exprs(&["u"])?,
        act_right: exprs(&["v"])?,
    };
    let group = GroupModel::new(vars(&["u"]), vars(&["v"]), laws)?;
    let lie = MatchedPairLie::new(LieAlgebra::abelian(names(&["U"])), LieAlgebra::abelian(names(&["V"])), &[], &[])?;
    MatchedPairModel::new("abelian-plane", lie, group)
}

/// Shear fixture: `G₁ = ℝ²` (coordinates `a, b`, basis `A, B`),
/// `G₂ = ℝ` (coordinate `s`, basis `S`), `ψ ▷ (a, b) = (a + s·b, b)`,
/// `◁` trivial.  Here `γ = [[1, 0], [−s, 1]]` is non-trivial.
pub fn shear() -> Result<MatchedPairModel> {
    let laws = GroupLaws {
        mul1: exprs(&["a.1 + a.2", "b.1 + b.2"])?,
        mul2: exprs(&["s.1 + s.2"])?,
        inv1: exprs(&["-a", "-b"])?,
        inv2: exprs(&["-s"])?,
        act_left: exprs(&["a + s*b", "b"])?,
        act_right: exprs(&["s"])?,
    };
    let group = GroupModel::new(vars(&["a", "b"]), vars(&["s"]), laws)?;
    let lie = MatchedPairLie::new(LieAlgebra::abelian(names(&["A", "B"])), LieAlgebra::abelian(names(&["S"])), &[(0, 1, 0, q(1))], &[])?;
    MatchedPairModel::new("shear", lie, group)
}

/// Every shipped model, by name.
pub fn builtin(name: &str) -> Result<MatchedPairModel> {
    match name {
        "diamond" => diamond(),
        "heisenberg" => heisenberg(),
        "abelian-plane" => abelian_plane(),
        "shear" => shear(),
        other => Err(Error::Invalid(format!("unknown builtin model {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_models_pass_structural_checks() {
        for m in [diamond(), heisenberg(), abelian_plane(), shear()] {
            let m = m.unwrap();
            let v = m.structural_violations().unwrap();
            assert!(v.is_empty(), "{}: {v:?}", m.name);
        }
    }

    #[test]
    fn rotated_diamond_data_fail_group_compatibility() {
        let d = diamond().unwrap();
        let rot = diamond_rotated_lie().unwrap();
        assert!(rot.validate().is_empty());
        let v = d.group.lie_compat_violations(&rot).unwrap();
        assert!(v.iter().any(|x| x.check == "group.lie_compat.right"));
    }
}
