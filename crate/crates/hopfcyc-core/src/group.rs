//! Symbolic matched pairs of Lie groups in exponential coordinates: group
//! laws, actions, the functions `γ`, `Γ`, `σ = det γ`, the map `ν`,
//! left-invariant Maurer–Cartan frames and simplices in `G₂`.
//!
//! Points are coordinate vectors of [`ScalarExpr`]s.  The identity of each
//! factor is the origin of its coordinates.  Two-point laws use the index
//! suffixes `.1` and `.2` on the coordinate names.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::form::PolyForm;
use crate::lie::{LieAlgebra, MatchedPairLie, Violation};
use crate::linalg::{det_scalar, inverse, mat_mul_scalar, QMatrix};
use crate::scalar::{q, qf, ScalarExpr, Var, Q};
use crate::simplex::AffineSimplex;

/// A coordinate vector of a group element.
pub type Point = Vec<ScalarExpr>;

/// A matrix with symbolic entries.
pub type SMatrix = Vec<Vec<ScalarExpr>>;

/// Which left-invariant frame to build on `G = G₁ ⋈ G₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Frame {
    /// The Maurer–Cartan frame of the bicrossed group law.
    #[default]
    Bicrossed,
    /// Per-factor frames of `G₁` and `G₂` placed side by side (left-invariant
    /// on each factor only; provided for comparison).
    Factor,
}

/// Group laws of a matched pair `(G₁, G₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupModel {
    g1: Vec<Var>,
    g2: Vec<Var>,
    h2: usize,
    mul1: Vec<ScalarExpr>,
    mul2: Vec<ScalarExpr>,
    inv1: Vec<ScalarExpr>,
    inv2: Vec<ScalarExpr>,
    act_left: Vec<ScalarExpr>,
    act_right: Vec<ScalarExpr>,
}

/// Laws supplied to [`GroupModel::new`].
#[derive(Clone, Debug, Default)]
pub struct GroupLaws {
    /// `G₁` multiplication, per coordinate, in `v.1`, `v.2`.
    pub mul1: Vec<ScalarExpr>,
    /// `G₂` multiplication, per coordinate, in `v.1`, `v.2`.
    pub mul2: Vec<ScalarExpr>,
    /// `G₁` inverse, per coordinate.
    pub inv1: Vec<ScalarExpr>,
    /// `G₂` inverse, per coordinate.
    pub inv2: Vec<ScalarExpr>,
    /// `ψ ▷ φ ∈ G₁`, per coordinate, in the plain coordinates of both.
    pub act_left: Vec<ScalarExpr>,
    /// `ψ ◁ φ ∈ G₂`, per coordinate, in the plain coordinates of both.
    pub act_right: Vec<ScalarExpr>,
}

fn fresh(v: &Var, tag: &str) -> Var {
    Var::indexed(&format!("@{tag}{}", v.name()), v.index().unwrap_or(0))
}

fn point_map(coords: &[Var], p: &[ScalarExpr]) -> BTreeMap<Var, ScalarExpr> {
    coords.iter().cloned().zip(p.iter().cloned()).collect()
}

fn subs_all(law: &[ScalarExpr], map: &BTreeMap<Var, ScalarExpr>) -> Result<Point> {
    law.iter().map(|e| e.subs(map)).collect()
}

fn diff_text(a: &[ScalarExpr], b: &[ScalarExpr]) -> Option<String> {
    let d: Vec<String> = a
        .iter()
        .zip(b)
        .enumerate()
        .filter_map(|(i, (x, y))| {
            let e = x - y;
            (!e.is_zero()).then(|| format!("[{i}] {e}"))
        })
        .collect();
    (!d.is_empty()).then(|| d.join("; "))
}

impl GroupModel {
    /// Builds a model after checking shapes and variable scopes.
    pub fn new(g1: Vec<Var>, g2: Vec<Var>, laws: GroupLaws) -> Result<Self> {
        if g1.iter().any(|v| g2.contains(v)) {
            return Err(Error::Invalid("G1 and G2 coordinates must be distinct".into()));
        }
        let (n1, n2) = (g1.len(), g2.len());
        let shape = [
            ("mul1", laws.mul1.len(), n1),
            ("mul2", laws.mul2.len(), n2),
            ("inv1", laws.inv1.len(), n1),
            ("inv2", laws.inv2.len(), n2),
            ("act_left", laws.act_left.len(), n1),
            ("act_right", laws.act_right.len(), n2),
        ];
        for (name, got, want) in shape {
            if got != want {
                return Err(Error::DimensionMismatch(format!("{name}: {got} entries for {want} coordinates")));
            }
        }
        let two = |c: &[Var]| -> Vec<Var> { c.iter().flat_map(|v| [v.with_index(Some(1)), v.with_index(Some(2))]).collect() };
        let mut both: Vec<Var> = g1.clone();
        both.extend(g2.iter().cloned());
        let scopes: [(&str, &[ScalarExpr], Vec<Var>); 6] = [
            ("mul1", &laws.mul1, two(&g1)),
            ("mul2", &laws.mul2, two(&g2)),
            ("inv1", &laws.inv1, g1.clone()),
            ("inv2", &laws.inv2, g2.clone()),
            ("act_left", &laws.act_left, both.clone()),
            ("act_right", &laws.act_right, both),
        ];
        for (name, law, allowed) in scopes {
            for e in law {
                if let Some(v) = e.free_vars().into_iter().find(|v| !allowed.contains(v)) {
                    return Err(Error::Invalid(format!("{name}: unknown variable {v}")));
                }
            }
        }
        Ok(GroupModel {
            g1,
            g2,
            h2: 0,
            mul1: laws.mul1,
            mul2: laws.mul2,
            inv1: laws.inv1,
            inv2: laws.inv2,
            act_left: laws.act_left,
            act_right: laws.act_right,
        })
    }

    /// Declares the first `k` coordinates of `G₂` as the reductive block
    /// `H₂` of `G₂ = H₂ ⋉ L₂`.  Computations needing `π_L` refuse `k > 0`.
    pub fn with_h2_block(mut self, k: usize) -> Result<Self> {
        if k > self.g2.len() {
            return Err(Error::IndexOutOfRange { index: k, max: self.g2.len() });
        }
        self.h2 = k;
        Ok(self)
    }

    /// Size of the `H₂` coordinate block.
    pub fn h2_block(&self) -> usize {
        self.h2
    }

    /// `G₁` coordinates.
    pub fn g1_coords(&self) -> &[Var] {
        &self.g1
    }

    /// `G₂` coordinates.
    pub fn g2_coords(&self) -> &[Var] {
        &self.g2
    }

    /// Coordinates of `G = G₁ ⋈ G₂` (`G₁` first).
    pub fn coords(&self) -> Vec<Var> {
        let mut c = self.g1.clone();
        c.extend(self.g2.iter().cloned());
        c
    }

    /// The laws as supplied.
    pub fn laws(&self) -> GroupLaws {
        GroupLaws {
            mul1: self.mul1.clone(),
            mul2: self.mul2.clone(),
            inv1: self.inv1.clone(),
            inv2: self.inv2.clone(),
            act_left: self.act_left.clone(),
            act_right: self.act_right.clone(),
        }
    }

    /// Symbolic `G₁` point with coordinates `v.k`.
    pub fn g1_point(&self, k: u32) -> Point {
        self.g1.iter().map(|v| ScalarExpr::var(v.with_index(Some(k)))).collect()
    }

    /// Symbolic `G₂` point with coordinates `v.k`.
    pub fn g2_point(&self, k: u32) -> Point {
        self.g2.iter().map(|v| ScalarExpr::var(v.with_index(Some(k)))).collect()
    }

    /// The point whose coordinates are the plain coordinate variables.
    pub fn g1_generic(&self) -> Point {
        self.g1.iter().cloned().map(ScalarExpr::var).collect()
    }

    /// The point whose coordinates are the plain coordinate variables.
    pub fn g2_generic(&self) -> Point {
        self.g2.iter().cloned().map(ScalarExpr::var).collect()
    }

    /// Identity of `G₁`.
    pub fn e1(&self) -> Point {
        vec![ScalarExpr::zero(); self.g1.len()]
    }

    /// Identity of `G₂`.
    pub fn e2(&self) -> Point {
        vec![ScalarExpr::zero(); self.g2.len()]
    }

    fn two_point(coords: &[Var], law: &[ScalarExpr], a: &[ScalarExpr], b: &[ScalarExpr]) -> Result<Point> {
        let mut map = BTreeMap::new();
        for (i, v) in coords.iter().enumerate() {
            map.insert(v.with_index(Some(1)), a[i].clone());
            map.insert(v.with_index(Some(2)), b[i].clone());
        }
        subs_all(law, &map)
    }

    /// Product in `G₁`.
    pub fn mul1(&self, a: &[ScalarExpr], b: &[ScalarExpr]) -> Result<Point> {
        Self::two_point(&self.g1, &self.mul1, a, b)
    }

    /// Product in `G₂`.
    pub fn mul2(&self, a: &[ScalarExpr], b: &[ScalarExpr]) -> Result<Point> {
        Self::two_point(&self.g2, &self.mul2, a, b)
    }

    /// Inverse in `G₁`.
    pub fn inv1(&self, a: &[ScalarExpr]) -> Result<Point> {
        subs_all(&self.inv1, &point_map(&self.g1, a))
    }

    /// Inverse in `G₂`.
    pub fn inv2(&self, a: &[ScalarExpr]) -> Result<Point> {
        subs_all(&self.inv2, &point_map(&self.g2, a))
    }

    fn act_map(&self, psi: &[ScalarExpr], phi: &[ScalarExpr]) -> BTreeMap<Var, ScalarExpr> {
        let mut map = point_map(&self.g2, psi);
        map.extend(point_map(&self.g1, phi));
        map
    }

    /// `ψ ▷ φ`.
    pub fn left(&self, psi: &[ScalarExpr], phi: &[ScalarExpr]) -> Result<Point> {
        subs_all(&self.act_left, &self.act_map(psi, phi))
    }

    /// `ψ ◁ φ`.
    pub fn right(&self, psi: &[ScalarExpr], phi: &[ScalarExpr]) -> Result<Point> {
        subs_all(&self.act_right, &self.act_map(psi, phi))
    }

    /// Product in `G`: `(φ₁ψ₁)(φ₂ψ₂) = φ₁(ψ₁▷φ₂) · (ψ₁◁φ₂)ψ₂`, on
    /// concatenated coordinates (`G₁` first).
    pub fn mul(&self, a: &[ScalarExpr], b: &[ScalarExpr]) -> Result<Point> {
        let n1 = self.g1.len();
        let (p1, s1) = a.split_at(n1);
        let (p2, s2) = b.split_at(n1);
        let mut out = self.mul1(p1, &self.left(s1, p2)?)?;
        out.extend(self.mul2(&self.right(s1, p2)?, s2)?);
        Ok(out)
    }

    /// Inverse in `G`: `(φψ)⁻¹ = (ψ⁻¹ ▷ φ⁻¹)(ψ⁻¹ ◁ φ⁻¹)`.
    pub fn inv(&self, a: &[ScalarExpr]) -> Result<Point> {
        let n1 = self.g1.len();
        let (p, s) = a.split_at(n1);
        let (pi, si) = (self.inv1(p)?, self.inv2(s)?);
        let mut out = self.left(&si, &pi)?;
        out.extend(self.right(&si, &pi)?);
        Ok(out)
    }

    /// Group and matched-pair axioms, checked as symbolic identities on
    /// generic points.  Each failing identity is reported once.
    pub fn axiom_violations(&self) -> Result<Vec<Violation>> {
        let (f1, f2, f3) = (self.g1_point(1), self.g1_point(2), self.g1_point(3));
        let (s1, s2, s3) = (self.g2_point(1), self.g2_point(2), self.g2_point(3));
        let (e1, e2) = (self.e1(), self.e2());
        let mut out = Vec::new();
        let mut check = |name: &str, lhs: Point, rhs: Point| {
            if let Some(d) = diff_text(&lhs, &rhs) {
                out.push(Violation { check: name.to_string(), indices: Vec::new(), detail: d });
            }
        };
        check("group.g1.assoc", self.mul1(&self.mul1(&f1, &f2)?, &f3)?, self.mul1(&f1, &self.mul1(&f2, &f3)?)?);
        check("group.g2.assoc", self.mul2(&self.mul2(&s1, &s2)?, &s3)?, self.mul2(&s1, &self.mul2(&s2, &s3)?)?);
        check("group.g1.unit", self.mul1(&e1, &f1)?, f1.clone());
        check("group.g1.unit", self.mul1(&f1, &e1)?, f1.clone());
        check("group.g2.unit", self.mul2(&e2, &s1)?, s1.clone());
        check("group.g2.unit", self.mul2(&s1, &e2)?, s1.clone());
        check("group.g1.inverse", self.mul1(&f1, &self.inv1(&f1)?)?, e1.clone());
        check("group.g1.inverse", self.mul1(&self.inv1(&f1)?, &f1)?, e1.clone());
        check("group.g2.inverse", self.mul2(&s1, &self.inv2(&s1)?)?, e2.clone());
        check("group.g2.inverse", self.mul2(&self.inv2(&s1)?, &s1)?, e2.clone());
        check("group.act.fix_identity", self.left(&s1, &e1)?, e1.clone());
        check("group.act.fix_identity", self.right(&e2, &f1)?, e2.clone());
        check("group.act.unit", self.left(&e2, &f1)?, f1.clone());
        check("group.act.unit", self.right(&s1, &e1)?, s1.clone());
        check("group.act.left_action", self.left(&self.mul2(&s1, &s2)?, &f1)?, self.left(&s1, &self.left(&s2, &f1)?)?);
        check("group.act.right_action", self.right(&s1, &self.mul1(&f1, &f2)?)?, self.right(&self.right(&s1, &f1)?, &f2)?);
        check(
            "group.matched.left",
            self.left(&s1, &self.mul1(&f1, &f2)?)?,
            self.mul1(&self.left(&s1, &f1)?, &self.left(&self.right(&s1, &f1)?, &f2)?)?,
        );
        check(
            "group.matched.right",
            self.right(&self.mul2(&s1, &s2)?, &f1)?,
            self.mul2(&self.right(&s1, &self.left(&s2, &f1)?)?, &self.right(&s2, &f1)?)?,
        );
        Ok(out)
    }

    /// `γ_i^j(ψ) = ⟨ψ⁻¹ ▷ Z_i, ω_j⟩`, obtained by differentiating
    /// `φ ↦ ψ⁻¹ ▷ φ` at `e`; entries are functions of the plain `G₂`
    /// coordinates.  Row index `i`, column index `j`.
    pub fn gamma(&self) -> Result<SMatrix> {
        self.gamma_at(&self.g2_generic())
    }

    /// `γ(ψ)` at a given point.
    pub fn gamma_at(&self, psi: &[ScalarExpr]) -> Result<SMatrix> {
        let phi: Point = self.g1.iter().map(|v| ScalarExpr::var(fresh(v, "g"))).collect();
        let img = self.left(&self.inv2(psi)?, &phi)?;
        let zero: BTreeMap<Var, ScalarExpr> = self.g1.iter().map(|v| (fresh(v, "g"), ScalarExpr::zero())).collect();
        let n1 = self.g1.len();
        (0..n1)
            .map(|i| {
                let vi = fresh(&self.g1[i], "g");
                (0..n1).map(|j| img[j].diff(&vi).subs(&zero)).collect::<Result<Vec<_>>>()
            })
            .collect()
    }

    /// `Γ_i^j(ψ)(φ) = γ_i^j(ψ ◁ φ)` in the plain coordinates of both factors.
    pub fn big_gamma(&self) -> Result<SMatrix> {
        self.gamma_at(&self.right(&self.g2_generic(), &self.g1_generic())?)
    }

    /// `σ = det γ`, a group-like element of `ℛ(G₂)`.
    pub fn sigma(&self) -> Result<ScalarExpr> {
        Ok(det_scalar(&self.gamma()?))
    }

    /// Cocycle identities: `γ(ψ₁ψ₂) = γ(ψ₁)γ(ψ₂)`,
    /// `Γ(ψ₁ψ₂) = (Γ(ψ₁)∘ψ̃₂)·Γ(ψ₂)`, `Γ(ψ)(e) = γ(ψ)`,
    /// `(Γ(ψ⁻¹)∘ψ̃)·Γ(ψ) = 1` and `det(Γ(ψ⁻¹)∘ψ̃)·det Γ(ψ) = 1`.
    pub fn gamma_violations(&self) -> Result<Vec<Violation>> {
        let n1 = self.g1.len();
        let (s1, s2) = (self.g2_point(1), self.g2_point(2));
        let phi = self.g1_generic();
        let mut out = Vec::new();
        let mut check = |name: &str, lhs: &SMatrix, rhs: &SMatrix| {
            let l: Vec<ScalarExpr> = lhs.iter().flatten().cloned().collect();
            let r: Vec<ScalarExpr> = rhs.iter().flatten().cloned().collect();
            if let Some(d) = diff_text(&l, &r) {
                out.push(Violation { check: name.into(), indices: Vec::new(), detail: d });
            }
        };
        let g = |p: &[ScalarExpr]| self.gamma_at(p);
        check("gamma.cocycle", &g(&self.mul2(&s1, &s2)?)?, &mat_mul_scalar(&g(&s1)?, &g(&s2)?));
        let big = |psi: &[ScalarExpr], phi: &[ScalarExpr]| self.gamma_at(&self.right(psi, phi)?);
        let lhs = big(&self.mul2(&s1, &s2)?, &phi)?;
        let rhs = mat_mul_scalar(&big(&s1, &self.left(&s2, &phi)?)?, &big(&s2, &phi)?);
        check("gamma.big_cocycle", &lhs, &rhs);
        check("gamma.big_at_identity", &big(&s1, &self.e1())?, &g(&s1)?);
        let id: SMatrix = (0..n1).map(|i| (0..n1).map(|j| if i == j { ScalarExpr::one() } else { ScalarExpr::zero() }).collect()).collect();
        let inv_part = big(&self.inv2(&s1)?, &self.left(&s1, &phi)?)?;
        let direct = big(&s1, &phi)?;
        check("gamma.big_inverse", &mat_mul_scalar(&inv_part, &direct), &id);
        let det_prod = &det_scalar(&inv_part) * &det_scalar(&direct);
        check("gamma.det_inverse", &vec![vec![det_prod]], &vec![vec![ScalarExpr::one()]]);
        Ok(out)
    }

    /// Left-invariant 1-forms `θ₁…θ_n` on `G` (coordinates [`Self::coords`]),
    /// dual at `e` to the coordinate basis.
    ///
    /// For [`Frame::Bicrossed`], `θ(g) = d(L_{g⁻¹})_g`, computed as the
    /// Jacobian of `h ↦ g⁻¹h` at `h = g`.
    pub fn maurer_cartan_frame(&self, frame: Frame) -> Result<Vec<PolyForm>> {
        let coords = self.coords();
        let forms = match frame {
            Frame::Bicrossed => {
                let g: Point = coords.iter().cloned().map(ScalarExpr::var).collect();
                let h: Point = coords.iter().map(|v| ScalarExpr::var(fresh(v, "h"))).collect();
                let prod = self.mul(&self.inv(&g)?, &h)?;
                Self::jacobian_forms(&coords, &coords, &prod, "h")?
            }
            Frame::Factor => {
                let mut out = Vec::new();
                for (block, law_inv, law_mul) in [(&self.g1, &self.inv1, &self.mul1), (&self.g2, &self.inv2, &self.mul2)] {
                    let g: Point = block.iter().cloned().map(ScalarExpr::var).collect();
                    let h: Point = block.iter().map(|v| ScalarExpr::var(fresh(v, "h"))).collect();
                    let ginv = subs_all(law_inv, &point_map(block, &g))?;
                    let prod = Self::two_point(block, law_mul, &ginv, &h)?;
                    for f in Self::jacobian_forms(block, block, &prod, "h")? {
                        out.push(f.extend_coords(&coords)?);
                    }
                }
                out
            }
        };
        // frame at e must be invertible
        let at_e: QMatrix = forms
            .iter()
            .map(|f| (0..coords.len()).map(|l| f.coeff(&[l]).at_origin().as_rational().unwrap_or_else(Q::zero)).collect())
            .collect();
        if inverse(&at_e).is_none() {
            return Err(Error::Singular("Maurer-Cartan frame is degenerate at the identity".into()));
        }
        Ok(forms)
    }

    fn jacobian_forms(coords: &[Var], block: &[Var], prod: &[ScalarExpr], tag: &str) -> Result<Vec<PolyForm>> {
        let back: BTreeMap<Var, ScalarExpr> = block.iter().map(|v| (fresh(v, tag), ScalarExpr::var(v.clone()))).collect();
        prod.iter()
            .map(|pk| {
                let mut f = PolyForm::zero(coords);
                for (l, v) in block.iter().enumerate() {
                    let c = pk.diff(&fresh(v, tag)).subs(&back)?;
                    f.add_term(vec![l], c);
                }
                Ok(f)
            })
            .collect()
    }

    /// Whether each frame form is invariant under left translation by a
    /// fully symbolic element; returns the indices that fail.
    pub fn left_invariance_failures(&self, frame: &[PolyForm]) -> Result<Vec<usize>> {
        let coords = self.coords();
        let a: Point = coords.iter().map(|v| ScalarExpr::var(fresh(v, "a"))).collect();
        let g: Point = coords.iter().cloned().map(ScalarExpr::var).collect();
        let img = self.mul(&a, &g)?;
        let map = point_map(&coords, &img);
        let mut bad = Vec::new();
        for (i, th) in frame.iter().enumerate() {
            if th.pullback(&coords, &map)? != *th {
                bad.push(i);
            }
        }
        Ok(bad)
    }

    /// Structure constants read off `dθ_k = −Σ_{i<j} c_{ij}^k θ_i∧θ_j` at `e`.
    pub fn frame_algebra(&self, frame: &[PolyForm], names: Vec<String>) -> Result<LieAlgebra> {
        let n = frame.len();
        let at_e: QMatrix =
            frame.iter().map(|f| (0..n).map(|l| f.coeff(&[l]).at_origin().as_rational().unwrap_or_else(Q::zero)).collect()).collect();
        let inv = inverse(&at_e).ok_or_else(|| Error::Singular("frame at identity".into()))?;
        // dθ_k(e) in coordinate 2-forms, then in frame 2-forms via the dual
        // change of basis: du_l = Σ inv[l][m] θ_m at e.
        let mut brackets = Vec::new();
        for (k, th) in frame.iter().enumerate() {
            let d = th.d();
            for (idx, c) in d.terms() {
                let c = c
                    .at_origin()
                    .as_rational()
                    .ok_or_else(|| Error::NoClosedForm(format!("structure constant of θ{} is not rational", k + 1)))?;
                let (l1, l2) = (idx[0], idx[1]);
                for i in 0..n {
                    for j in 0..n {
                        if i >= j {
                            continue;
                        }
                        // coefficient of θ_i∧θ_j in du_l1∧du_l2
                        let w = &inv[l1][i] * &inv[l2][j] - &inv[l1][j] * &inv[l2][i];
                        if !w.is_zero() {
                            brackets.push((i, j, k, -(&c * &w)));
                        }
                    }
                }
            }
        }
        LieAlgebra::new(names, &brackets)
    }

    /// The matched pair of Lie algebras obtained by differentiating the
    /// group data at the identity: brackets from the antisymmetrized
    /// second-order terms of the laws, `Y ▷ X` and `Y ◁ X` from the mixed
    /// second derivatives of the actions.
    pub fn derived_lie(&self, names1: Vec<String>, names2: Vec<String>) -> Result<MatchedPairLie> {
        let bracket_of = |coords: &[Var], law: &[ScalarExpr], names: Vec<String>| -> Result<LieAlgebra> {
            let n = coords.len();
            let mut br = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    for (k, mk) in law.iter().enumerate() {
                        let a = mk.diff(&coords[i].with_index(Some(1))).diff(&coords[j].with_index(Some(2)));
                        let b = mk.diff(&coords[j].with_index(Some(1))).diff(&coords[i].with_index(Some(2)));
                        let c = (&a - &b)
                            .at_origin()
                            .as_rational()
                            .ok_or_else(|| Error::NoClosedForm("second derivative of the law is not rational".into()))?;
                        br.push((i, j, k, c));
                    }
                }
            }
            LieAlgebra::new(names, &br)
        };
        let g1 = bracket_of(&self.g1, &self.mul1, names1)?;
        let g2 = bracket_of(&self.g2, &self.mul2, names2)?;
        let mixed = |law: &[ScalarExpr]| -> Result<Vec<(usize, usize, usize, Q)>> {
            let mut out = Vec::new();
            for (a, ya) in self.g2.iter().enumerate() {
                for (i, xi) in self.g1.iter().enumerate() {
                    for (k, lk) in law.iter().enumerate() {
                        let c = lk
                            .diff(ya)
                            .diff(xi)
                            .at_origin()
                            .as_rational()
                            .ok_or_else(|| Error::NoClosedForm("second derivative of an action is not rational".into()))?;
                        out.push((a, i, k, c));
                    }
                }
            }
            Ok(out)
        };
        MatchedPairLie::new(g1, g2, &mixed(&self.act_left)?, &mixed(&self.act_right)?)
    }

    /// `ν(φ, ψ) = φ · (ψ ◁ φ)⁻¹` on `G`-coordinates, as images of the plain
    /// coordinates.
    pub fn nu(&self) -> Result<Point> {
        let phi = self.g1_generic();
        let psi = self.g2_generic();
        let mut out = phi.clone();
        out.extend(self.inv2(&self.right(&psi, &phi)?)?);
        Ok(out)
    }

    /// The simplex `Δ(ψ₀,…,ψ_p)` in exponential coordinates of `L₂`.
    pub fn build_simplex(&self, vertices: &[Point]) -> Result<AffineSimplex> {
        if self.h2 > 0 {
            return Err(Error::Unsupported("simplices need a trivial H2 block".into()));
        }
        AffineSimplex::new(vertices.to_vec())
    }

    /// Whether every coordinate of `ψ ◁ φ` is affine in the coordinates of
    /// `ψ` (coefficients may depend on `φ`).
    pub fn right_action_is_affine(&self) -> bool {
        let is_g2 = |v: &Var| self.g2.contains(v);
        self.act_right.iter().all(|e| !e.has_nonpolynomial_in(&is_g2) && e.collect_by(&is_g2).keys().all(|m| m.degree() <= 1))
    }

    /// Whether right translation `ψ₀ ↦ ψ₀ψ` is affine in exponential
    /// coordinates, so that translated simplices are images of simplices.
    pub fn right_translation_is_affine(&self) -> bool {
        let first = |v: &Var| v.index() == Some(1) && self.g2.iter().any(|c| c.name() == v.name());
        self.mul2.iter().all(|e| e.collect_by(&first).keys().all(|m| m.degree() <= 1))
    }

    /// Compares declared Lie data with the data derived from the group laws
    /// and with the structure of the bicrossed Maurer–Cartan frame.
    pub fn lie_compat_violations(&self, declared: &MatchedPairLie) -> Result<Vec<Violation>> {
        let n1 = declared.g1.names().to_vec();
        let n2 = declared.g2.names().to_vec();
        let derived = self.derived_lie(n1, n2)?;
        let mut out = Vec::new();
        let mut cmp = |name: &str, a: &Vec<Vec<Vec<Q>>>, b: &Vec<Vec<Vec<Q>>>| {
            if a != b {
                out.push(Violation {
                    check: name.into(),
                    indices: Vec::new(),
                    detail: "declared data differ from the group-derived data".into(),
                });
            }
        };
        let tensor = |g: &LieAlgebra| -> Vec<Vec<Vec<Q>>> {
            let n = g.dim();
            (0..n).map(|i| (0..n).map(|j| g.bracket_basis(i, j).to_vec()).collect()).collect()
        };
        cmp("group.lie_compat.g1", &tensor(&declared.g1), &tensor(&derived.g1));
        cmp("group.lie_compat.g2", &tensor(&declared.g2), &tensor(&derived.g2));
        cmp("group.lie_compat.left", &declared.left, &derived.left);
        cmp("group.lie_compat.right", &declared.right, &derived.right);
        let frame = self.maurer_cartan_frame(Frame::Bicrossed)?;
        let fa = self.frame_algebra(&frame, declared.bicrossed_unchecked().names().to_vec())?;
        cmp("group.lie_compat.frame", &tensor(&declared.bicrossed_unchecked()), &tensor(&fa));
        Ok(out)
    }
}

/// Group law of the simply connected nilpotent group of `alg` in
/// exponential coordinates, from the Baker–Campbell–Hausdorff series
/// `a + b + ½[a,b] + (1/12)([a,[a,b]] + [b,[b,a]])`, exact for nilpotency
/// class ≤ 3.  Returns the multiplication law (in `v.1`, `v.2`) and the
/// inverse law (negation).
pub fn bch_law(alg: &LieAlgebra, coords: &[Var]) -> Result<(Vec<ScalarExpr>, Vec<ScalarExpr>)> {
    let n = alg.dim();
    if coords.len() != n {
        return Err(Error::DimensionMismatch("one coordinate per basis vector".into()));
    }
    // class ≤ 3: every 4-fold bracket of basis vectors vanishes
    let basis = |i: usize| -> Vec<Q> { (0..n).map(|k| if k == i { q(1) } else { q(0) }).collect() };
    for i in 0..n {
        for j in 0..n {
            let b2 = alg.bracket(&basis(i), &basis(j));
            for k in 0..n {
                let b3 = alg.bracket(&basis(k), &b2);
                for l in 0..n {
                    if alg.bracket(&basis(l), &b3).iter().any(|c| !c.is_zero()) {
                        return Err(Error::Unsupported("BCH law needs nilpotency class at most 3".into()));
                    }
                }
            }
        }
    }
    let br = |x: &[ScalarExpr], y: &[ScalarExpr]| -> Vec<ScalarExpr> {
        let mut out = vec![ScalarExpr::zero(); n];
        for i in 0..n {
            for j in 0..n {
                if x[i].is_zero() || y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = alg.structure(i, j, k);
                    if !c.is_zero() {
                        *o += xy.scale(c);
                    }
                }
            }
        }
        out
    };
    let a: Vec<ScalarExpr> = coords.iter().map(|v| ScalarExpr::var(v.with_index(Some(1)))).collect();
    let b: Vec<ScalarExpr> = coords.iter().map(|v| ScalarExpr::var(v.with_index(Some(2)))).collect();
    let ab = br(&a, &b);
    let aab = br(&a, &ab);
    let ba = br(&b, &a);
    let bba = br(&b, &ba);
    let mul = (0..n).map(|k| &(&(&a[k] + &b[k]) + &ab[k].scale(&qf(1, 2))) + &(&aab[k] + &bba[k]).scale(&qf(1, 12))).collect();
    let inv = coords.iter().map(|v| -ScalarExpr::var(v.clone())).collect();
    Ok((mul, inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_scalar;

    fn heis_names() -> Vec<String> {
        ["X", "Y", "Z"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn bch_reproduces_heisenberg_law() {
        let h = LieAlgebra::new(heis_names(), &[(0, 1, 2, q(1))]).unwrap();
        let c: Vec<Var> = ["x", "y", "z"].iter().map(|s| Var::new(s)).collect();
        let (mul, _) = bch_law(&h, &c).unwrap();
        assert_eq!(mul[2], parse_scalar("z.1 + z.2 + 1/2*x.1*y.2 - 1/2*y.1*x.2").unwrap());
    }

    #[test]
    fn bch_rejects_high_class() {
        // filiform algebra of class 4
        let names: Vec<String> = ["a", "b", "c", "d", "e"].iter().map(|s| s.to_string()).collect();
        let g = LieAlgebra::new(names, &[(0, 1, 2, q(1)), (0, 2, 3, q(1)), (0, 3, 4, q(1))]).unwrap();
        let c: Vec<Var> = ["a", "b", "c", "d", "e"].iter().map(|s| Var::new(s)).collect();
        assert!(matches!(bch_law(&g, &c), Err(Error::Unsupported(_))));
    }
}
