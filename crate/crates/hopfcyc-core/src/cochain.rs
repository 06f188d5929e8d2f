//! Transit maps from Lie algebra cochains of `𝔤₁ ⋈ 𝔤₂` to group cochains:
//! `μ`, `𝓔 = ∫_Δ ∘ μ`, `Θ`, `𝒟 = Θ ∘ 𝓔`, the differentials `d₁`, `d₂`, and
//! the quasi-inverse `♮⁻¹ ∘ j`.
//!
//! A [`GroupCochainForm`] of bidegree `(p, q)` is a `q`-form on `G₁` whose
//! coefficients depend on the vertex coordinates `v.0 … v.p` of
//! `ψ₀ … ψ_p ∈ G₂` (and, for `Θ`-images, on the point `φ ∈ G₁`).  Elements of
//! `C^p_ℛ(G₂, ∧^q 𝔤₁*)` use the same type with `φ`-free coefficients, the
//! constant form `dφ_I` standing for `ω_I`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::emit::Format;
use crate::error::{Error, Result};
use crate::form::PolyForm;
use crate::group::{Frame, GroupModel, Point};
use crate::lie::{natural_split_inv, subsets, CEComplex, CeCochain, LieAlgebra, SplitCochain, Violation};
use crate::linalg::permutations;
use crate::models::MatchedPairModel;
use crate::scalar::{q, ScalarExpr, Var, Q};
use crate::simplex::integrate_over_simplex;

/// A group cochain of bidegree `(p, q)`: a `q`-form on `G₁` depending on
/// `p + 1` symbolic vertices of `G₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCochainForm {
    /// Group degree.
    pub p: usize,
    /// Form degree.
    pub q: usize,
    /// The form, over the `G₁` coordinates.
    pub form: PolyForm,
}

impl GroupCochainForm {
    /// Whether the cochain vanishes.
    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    /// Coefficient of `ω_I` (`dφ_I`).
    pub fn coeff(&self, idx: &[usize]) -> ScalarExpr {
        self.form.coeff(idx)
    }

    /// Renders `coeff·ω_I + …` with the given names for the `ω_i`.
    pub fn render(&self, names: &[String], f: Format) -> String {
        if self.form.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (idx, c) in self.form.terms() {
            let body = crate::emit::scalar_grouped(c, f);
            if idx.is_empty() {
                parts.push(body);
                continue;
            }
            let w: Vec<String> = idx.iter().map(|&i| names[i].clone()).collect();
            let sep = if f == Format::Latex { " \\wedge " } else { "∧" };
            let joined = w.join(sep);
            parts.push(match f {
                Format::Latex => format!("{body}\\,{joined}"),
                _ => format!("{body}*{joined}"),
            });
        }
        parts.join(" + ")
    }
}

/// `μ_q(ω)`: for each increasing `I ⊂ 𝔤₁` with `|I| = q`, a `p`-form on
/// `L₂ = G₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuComponent {
    /// Number of `𝔤₁` directions contracted.
    pub q: usize,
    /// `I ↦` form on `G₂` (coordinates of `G₂`).
    pub parts: BTreeMap<Vec<usize>, PolyForm>,
}

/// The transit maps for one matched-pair model.
#[derive(Clone, Debug)]
pub struct CochainMaps {
    group: GroupModel,
    frame_kind: Frame,
    frame: Vec<PolyForm>,
    algebra: LieAlgebra,
    ce: CEComplex,
    dim1: usize,
    dim2: usize,
    /// `Z̃_i(e)` in `G₁` coordinates.
    z_at_e: Vec<Vec<ScalarExpr>>,
    /// Left-invariant forms `ω̃_i` on `G₁`.
    g1_forms: Vec<PolyForm>,
}

fn point_map(coords: &[Var], img: &[ScalarExpr]) -> BTreeMap<Var, ScalarExpr> {
    coords.iter().cloned().zip(img.iter().cloned()).collect()
}

fn vertex_point(group: &GroupModel, k: usize) -> Point {
    group.g2_point(k as u32)
}

impl CochainMaps {
    /// Builds the maps for `model` using the Maurer–Cartan frame of the
    /// bicrossed group law.
    pub fn new(model: &MatchedPairModel) -> Result<Self> {
        Self::with_frame(model, Frame::Bicrossed)
    }

    /// Builds the maps with a chosen left-invariant coframe.
    pub fn with_frame(model: &MatchedPairModel, frame_kind: Frame) -> Result<Self> {
        let group = model.group.clone();
        if group.h2_block() > 0 {
            return Err(Error::Unsupported("transit maps need a trivial H2 block".into()));
        }
        let frame = group.maurer_cartan_frame(frame_kind)?;
        let algebra = group.frame_algebra(&frame, model.frame_names())?;
        let ce = CEComplex::new(&algebra);
        let dim1 = group.g1_coords().len();
        let dim2 = group.g2_coords().len();
        let g1 = group.g1_coords().to_vec();
        // Z̃_i at e and the left-invariant forms on G₁ from the G₁ law
        let laws = group.laws();
        let mut at_zero = BTreeMap::new();
        let mut at_phi = BTreeMap::new();
        for v in &g1 {
            at_zero.insert(v.with_index(Some(1)), ScalarExpr::zero());
            at_zero.insert(v.with_index(Some(2)), ScalarExpr::zero());
            at_phi.insert(v.with_index(Some(1)), ScalarExpr::var(v.clone()));
            at_phi.insert(v.with_index(Some(2)), ScalarExpr::zero());
        }
        let mut z_at_e = Vec::new();
        let mut fields = Vec::new();
        for vi in &g1 {
            let dv = vi.with_index(Some(2));
            z_at_e.push(laws.mul1.iter().map(|m| m.diff(&dv).subs(&at_zero)).collect::<Result<Vec<_>>>()?);
            fields.push(laws.mul1.iter().map(|m| m.diff(&dv).subs(&at_phi)).collect::<Result<Vec<_>>>()?);
        }
        for (i, row) in z_at_e.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                let want = if i == k { ScalarExpr::one() } else { ScalarExpr::zero() };
                if *c != want {
                    return Err(Error::Unsupported("G₁ coordinates must be canonical at the identity".into()));
                }
            }
        }
        // ω̃ = ℓ⁻¹ dφ, with ℓ the field matrix; needs ℓ constant-invertible
        // or triangular; use the factor Maurer–Cartan frame of G₁ instead.
        let factor = group.maurer_cartan_frame(Frame::Factor)?;
        let g1_forms = factor[..dim1]
            .iter()
            .map(|f| {
                let mut out = PolyForm::zero(&g1);
                for (idx, c) in f.terms() {
                    if idx.iter().all(|&i| i < dim1) {
                        out.add_term(idx.clone(), c.clone());
                    }
                }
                out
            })
            .collect();
        let _ = fields;
        Ok(CochainMaps { group, frame_kind, frame, algebra, ce, dim1, dim2, z_at_e, g1_forms })
    }

    /// The group model.
    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    /// The frame in use.
    pub fn frame_kind(&self) -> Frame {
        self.frame_kind
    }

    /// The left-invariant coframe `θ₁ … θ_n` of `G`.
    pub fn frame(&self) -> &[PolyForm] {
        &self.frame
    }

    /// The Lie algebra dual to the coframe.
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// Its Chevalley–Eilenberg complex.
    pub fn ce(&self) -> &CEComplex {
        &self.ce
    }

    /// `dim G₁`.
    pub fn dim1(&self) -> usize {
        self.dim1
    }

    /// `dim G₂`.
    pub fn dim2(&self) -> usize {
        self.dim2
    }

    /// The left-invariant forms `ω̃_i` on `G₁`.
    pub fn g1_forms(&self) -> &[PolyForm] {
        &self.g1_forms
    }

    /// `ω̃ = Σ ω_K θ_K` on `G`.
    pub fn invariant_form(&self, omega: &CeCochain) -> PolyForm {
        let coords = self.group.coords();
        let mut out = PolyForm::zero(&coords);
        for (idx, c) in omega {
            let mut acc = PolyForm::scalar(&coords, ScalarExpr::rational(c.clone()));
            for &i in idx {
                acc = acc.wedge(&self.frame[i]);
            }
            out = &out + &acc;
        }
        out
    }

    /// Pullback of a form on `G` along `(φ, ψ) ↦ ν(φ, ψ⁻¹) = φ(ψ⁻¹ ◁ φ)⁻¹`,
    /// i.e. `ı*ν*` with `ı` the inversion of `G₂`.
    pub fn nu_inv_pullback(&self, form: &PolyForm) -> Result<PolyForm> {
        let coords = self.group.coords();
        let phi = self.group.g1_generic();
        let psi = self.group.g2_generic();
        let moved = self.group.right(&self.group.inv2(&psi)?, &phi)?;
        let mut img = phi.clone();
        img.extend(self.group.inv2(&moved)?);
        form.pullback(&coords, &point_map(&coords, &img))
    }

    /// Plain pullback `ν*` along `ν(φ, ψ) = φ(ψ ◁ φ)⁻¹`.
    pub fn nu_pullback(&self, form: &PolyForm) -> Result<PolyForm> {
        let coords = self.group.coords();
        form.pullback(&coords, &point_map(&coords, &self.group.nu()?))
    }

    /// `μ_q(ω) = Σ_{|I|=q} ı*(ι_{Z̃_I(e)} ν*ω̃)|_{G₂} ⊗ ω_I` for every `q`.
    pub fn mu(&self, omega: &CeCochain) -> Result<Vec<MuComponent>> {
        let n = omega.keys().map(Vec::len).max().unwrap_or(0);
        if omega.keys().any(|k| k.len() != n) {
            return Err(Error::Invalid("cochain is not homogeneous".into()));
        }
        let coords = self.group.coords();
        let pulled = self.nu_inv_pullback(&self.invariant_form(omega))?;
        let g2 = self.group.g2_coords().to_vec();
        let origin: BTreeMap<Var, ScalarExpr> = self.group.g1_coords().iter().map(|v| (v.clone(), ScalarExpr::zero())).collect();
        let mut out = Vec::new();
        for qd in 0..=n.min(self.dim1) {
            let mut parts = BTreeMap::new();
            for idx in subsets(self.dim1, qd) {
                let mut acc = pulled.clone();
                for &i in &idx {
                    let mut v = self.z_at_e[i].clone();
                    v.extend(vec![ScalarExpr::zero(); self.dim2]);
                    acc = acc.contract(&v);
                }
                let mut form = PolyForm::zero(&g2);
                for (k, c) in acc.component(n - qd).terms() {
                    if k.iter().all(|&i| i >= self.dim1) {
                        form.add_term(k.iter().map(|i| i - self.dim1).collect(), c.subs(&origin)?);
                    }
                }
                debug_assert_eq!(coords.len(), self.dim1 + self.dim2);
                if !form.is_zero() {
                    parts.insert(idx, form);
                }
            }
            out.push(MuComponent { q: qd, parts });
        }
        Ok(out)
    }

    /// `𝓔(ω)(ψ₀,…,ψ_p) = ∫_{Δ(ψ₀,…,ψ_p)} μ_q(ω)` for `p + q = deg ω`.
    pub fn e_map(&self, omega: &CeCochain, p: usize, qd: usize) -> Result<GroupCochainForm> {
        let n = omega.keys().map(Vec::len).max().unwrap_or(0);
        if !omega.is_empty() && p + qd != n {
            return Err(Error::DegreeMismatch { expected: n, found: p + qd });
        }
        let g1 = self.group.g1_coords().to_vec();
        let mut form = PolyForm::zero(&g1);
        if qd > self.dim1 || omega.is_empty() {
            return Ok(GroupCochainForm { p, q: qd, form });
        }
        let mu = self.mu(omega)?;
        let simplex = self.group.build_simplex(&(0..=p).map(|k| vertex_point(&self.group, k)).collect::<Vec<_>>())?;
        for (idx, part) in &mu[qd].parts {
            let val = integrate_over_simplex(part, &simplex)?;
            form.add_term(idx.clone(), val);
        }
        Ok(GroupCochainForm { p, q: qd, form })
    }

    /// All bidegree components of `𝓔(ω)`, by increasing `q`.
    pub fn e_components(&self, omega: &CeCochain) -> Result<Vec<GroupCochainForm>> {
        let n = omega.keys().map(Vec::len).max().unwrap_or(0);
        (0..=n.min(self.dim1)).map(|qd| self.e_map(omega, n - qd, qd)).collect()
    }

    /// `Θ(α)(ψ₀,…,ψ_p)|_φ = L_φ*(α)(ψ₀ ◁ φ, …, ψ_p ◁ φ)`.
    pub fn theta(&self, alpha: &GroupCochainForm) -> Result<GroupCochainForm> {
        let phi = self.group.g1_generic();
        let mut map = BTreeMap::new();
        for k in 0..=alpha.p {
            let moved = self.group.right(&vertex_point(&self.group, k), &phi)?;
            for (v, e) in self.group.g2_coords().iter().zip(moved) {
                map.insert(v.with_index(Some(k as u32)), e);
            }
        }
        let g1 = self.group.g1_coords().to_vec();
        let mut form = PolyForm::zero(&g1);
        for (idx, c) in alpha.form.terms() {
            let mut acc = PolyForm::scalar(&g1, c.subs(&map)?);
            for &i in idx {
                acc = acc.wedge(&self.g1_forms[i]);
            }
            form = &form + &acc;
        }
        Ok(GroupCochainForm { p: alpha.p, q: alpha.q, form })
    }

    /// `Θ⁻¹`: evaluation at `φ = e`.
    pub fn theta_inv(&self, gamma: &GroupCochainForm) -> Result<GroupCochainForm> {
        let origin: BTreeMap<Var, ScalarExpr> = self.group.g1_coords().iter().map(|v| (v.clone(), ScalarExpr::zero())).collect();
        Ok(GroupCochainForm { p: gamma.p, q: gamma.q, form: gamma.form.subs_coeffs(&origin)? })
    }

    /// `𝒟 = Θ ∘ 𝓔`, all components.
    pub fn d_map(&self, omega: &CeCochain) -> Result<Vec<GroupCochainForm>> {
        self.e_components(omega)?.iter().map(|a| self.theta(a)).collect()
    }

    /// `(d₁α)(ψ₀,…,ψ_{p+1}) = Σ_j (−1)^{q+j} α(ψ₀,…,ψ̌_j,…,ψ_{p+1})`.
    pub fn d1(&self, alpha: &GroupCochainForm) -> GroupCochainForm {
        let p = alpha.p;
        let mut form = alpha.form.zero_like();
        for j in 0..=p + 1 {
            let renamed = alpha.form.map_coeffs(|c| {
                c.rename_with(&|v: &Var| {
                    let is_vertex = self.group.g2_coords().iter().any(|g| g.name() == v.name());
                    match v.index() {
                        Some(k) if is_vertex && (k as usize) >= j => Some(v.with_index(Some(k + 1))),
                        _ => None,
                    }
                })
            });
            let sign = if (alpha.q + j).is_multiple_of(2) { q(1) } else { q(-1) };
            form = &form + &renamed.scale_q(&sign);
        }
        GroupCochainForm { p: p + 1, q: alpha.q, form }
    }

    /// `d₂ α = d α` (de Rham differential on `G₁`).
    pub fn d2(&self, alpha: &GroupCochainForm) -> GroupCochainForm {
        GroupCochainForm { p: alpha.p, q: alpha.q + 1, form: alpha.form.d() }
    }

    /// Checks `𝒟(∂ω) = (d₁ + d₂) 𝒟(ω)` bidegree by bidegree.
    pub fn verify_chain_map(&self, omega: &CeCochain) -> Result<Vec<Violation>> {
        let n = omega.keys().map(Vec::len).max().unwrap_or(0);
        let lhs = self.d_map(&self.ce.d(omega))?;
        let rhs = self.d_map(omega)?;
        let g1 = self.group.g1_coords().to_vec();
        let mut out = Vec::new();
        for qd in 0..=(n + 1).min(self.dim1) {
            let p = n + 1 - qd;
            let l = lhs.iter().find(|c| c.q == qd).map(|c| c.form.clone()).unwrap_or_else(|| PolyForm::zero(&g1));
            let mut r = PolyForm::zero(&g1);
            if p >= 1 {
                if let Some(c) = rhs.iter().find(|c| c.q == qd && c.p == p - 1) {
                    r = &r + &self.d1(c).form;
                }
            }
            if qd >= 1 {
                if let Some(c) = rhs.iter().find(|c| c.q == qd - 1 && c.p == p) {
                    r = &r + &self.d2(c).form;
                }
            }
            if l != r {
                out.push(Violation { check: "cochain.chain_map".into(), indices: vec![p, qd], detail: format!("bidegree ({p},{qd})") });
            }
        }
        Ok(out)
    }

    /// `j(α)(X¹…X^q | ξ₁…ξ_p) = Σ_{σ∈S_p} (−1)^σ ∂_{s₁}⋯∂_{s_p}|₀ α(Ψ(ξ))(X)`
    /// with `Ψ(ξ) = (1, e^{s_{σ1}ξ_{σ1}}, e^{s_{σ1}ξ_{σ1}}e^{s_{σ2}ξ_{σ2}}, …)`,
    /// on basis vectors.  The result is a `φ`-free split cochain.
    pub fn j_map(&self, alpha: &GroupCochainForm) -> Result<SplitCochain> {
        let p = alpha.p;
        let s: Vec<Var> = (1..=p).map(|i| Var::indexed("@s", i as u32)).collect();
        let mut out = SplitCochain::new();
        for xi in subsets(self.dim2, p) {
            let mut vals: BTreeMap<Vec<usize>, ScalarExpr> = BTreeMap::new();
            for (sign, perm) in permutations(p) {
                // vertices
                let mut verts = vec![self.group.e2()];
                let mut acc = self.group.e2();
                for &k in &perm {
                    let mut step = self.group.e2();
                    step[xi[k]] = ScalarExpr::var(s[k].clone());
                    acc = self.group.mul2(&acc, &step)?;
                    verts.push(acc.clone());
                }
                let mut map = BTreeMap::new();
                for (k, pt) in verts.iter().enumerate() {
                    for (v, e) in self.group.g2_coords().iter().zip(pt) {
                        map.insert(v.with_index(Some(k as u32)), e.clone());
                    }
                }
                for (idx, c) in alpha.form.terms() {
                    let mut d = c.subs(&map)?;
                    for sv in &s {
                        d = d.diff(sv);
                    }
                    let zero: BTreeMap<Var, ScalarExpr> = s.iter().map(|v| (v.clone(), ScalarExpr::zero())).collect();
                    let d = d.subs(&zero)?;
                    let e = vals.entry(idx.clone()).or_default();
                    *e += &d.scale(&q(sign as i64));
                }
            }
            for (idx, v) in vals {
                if v.is_zero() {
                    continue;
                }
                let c = v.as_rational().ok_or_else(|| Error::Invalid(format!("j-image is not constant: {v}")))?;
                out.insert((idx, xi.clone()), c);
            }
        }
        Ok(out)
    }

    /// `(♮⁻¹ ∘ j)` applied to the sum of all components.
    pub fn natural_inv_j(&self, comps: &[GroupCochainForm]) -> Result<CeCochain> {
        let mut split = SplitCochain::new();
        for c in comps {
            for (k, v) in self.j_map(&self.theta_inv(c)?)? {
                let e = split.entry(k).or_insert_with(Q::zero);
                *e += v;
            }
        }
        split.retain(|_, v| !v.is_zero());
        Ok(natural_split_inv(self.dim1, &split))
    }

    /// Strong covariance of a `Θ`-image:
    /// `γ(ψ₀ ◁ φ', …, ψ_p ◁ φ') = L_{φ'}^* γ(ψ₀, …, ψ_p)`.
    pub fn is_strongly_covariant(&self, gamma: &GroupCochainForm) -> Result<bool> {
        let g1 = self.group.g1_coords().to_vec();
        let shift: Point = g1.iter().map(|v| ScalarExpr::var(Var::new(&format!("{}'", v.name())))).collect();
        let mut map = BTreeMap::new();
        for k in 0..=gamma.p {
            let moved = self.group.right(&vertex_point(&self.group, k), &shift)?;
            for (v, e) in self.group.g2_coords().iter().zip(moved) {
                map.insert(v.with_index(Some(k as u32)), e);
            }
        }
        let lhs = gamma.form.subs_coeffs(&map)?;
        let phi = self.group.g1_generic();
        let translate = point_map(&g1, &self.group.mul1(&shift, &phi)?);
        let rhs = gamma.form.pullback(&g1, &translate)?;
        Ok(lhs == rhs)
    }

    /// `G₂`-equivariance of an `𝓔`-image under right translation:
    /// `α(ψ₀ψ, …, ψ_pψ) = (ψ⁻¹ ▷)^* α(ψ₀, …, ψ_p)` on `∧^q 𝔤₁*`.
    pub fn is_equivariant(&self, alpha: &GroupCochainForm) -> Result<bool> {
        self.translation_law(alpha, false)
    }

    /// Invariance of an `𝓔`-image under left translation of the vertices,
    /// `α(ψψ₀, …, ψψ_p) = (ψ⁻¹ ▷)^* α(ψ₀, …, ψ_p)`, which every image has
    /// because `μ` produces left-invariant forms on `G₂`.
    pub fn is_left_equivariant(&self, alpha: &GroupCochainForm) -> Result<bool> {
        self.translation_law(alpha, true)
    }

    fn translation_law(&self, alpha: &GroupCochainForm, left: bool) -> Result<bool> {
        let g1 = self.group.g1_coords().to_vec();
        let psi: Point = self.group.g2_coords().iter().map(|v| ScalarExpr::var(Var::new(&format!("{}'", v.name())))).collect();
        let mut map = BTreeMap::new();
        for k in 0..=alpha.p {
            let v = vertex_point(&self.group, k);
            let moved = if left { self.group.mul2(&psi, &v)? } else { self.group.mul2(&v, &psi)? };
            for (v, e) in self.group.g2_coords().iter().zip(moved) {
                map.insert(v.with_index(Some(k as u32)), e);
            }
        }
        let lhs = alpha.form.subs_coeffs(&map)?;
        // linear part of φ ↦ ψ⁻¹ ▷ φ at e, acting on constant forms
        let phi = self.group.g1_generic();
        let img = self.group.left(&self.group.inv2(&psi)?, &phi)?;
        let origin: BTreeMap<Var, ScalarExpr> = g1.iter().map(|v| (v.clone(), ScalarExpr::zero())).collect();
        let mut lin = Vec::new();
        for e in &img {
            let mut acc = ScalarExpr::zero();
            for v in &g1 {
                acc += &(&e.diff(v).subs(&origin)? * &ScalarExpr::var(v.clone()));
            }
            lin.push(acc);
        }
        let rhs = alpha.form.pullback(&g1, &point_map(&g1, &lin))?;
        Ok(lhs == rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::parse::parse_scalar;
    use num_traits::One;

    fn w(idx: &[usize]) -> CeCochain {
        [(idx.to_vec(), Q::one())].into_iter().collect()
    }

    #[test]
    fn frame_differential_matches_ce() {
        let m = models::diamond().unwrap();
        let c = CochainMaps::new(&m).unwrap();
        for k in 0..=3 {
            for idx in c.ce().basis(k).to_vec() {
                let om = w(&idx);
                assert_eq!(c.invariant_form(&om).d(), c.invariant_form(&c.ce().d(&om)), "{idx:?}");
            }
        }
    }

    #[test]
    fn diamond_mu_theta1_and_top() {
        let m = models::diamond().unwrap();
        let c = CochainMaps::new(&m).unwrap();
        let mu = c.mu(&w(&[0])).unwrap();
        let g2 = c.group().g2_coords().to_vec();
        assert!(mu[0].parts.is_empty());
        assert_eq!(mu[1].parts[&vec![0]], PolyForm::scalar(&g2, ScalarExpr::one()));
        let mu = c.mu(&w(&[1, 2, 3])).unwrap();
        assert_eq!(mu[0].parts[&vec![]], PolyForm::monomial(&g2, &[0, 1, 2], ScalarExpr::one()));
        let mu = c.mu(&w(&[0, 1, 2, 3])).unwrap();
        assert_eq!(mu[1].parts[&vec![0]], PolyForm::monomial(&g2, &[0, 1, 2], ScalarExpr::one()));
    }

    #[test]
    fn e_map_point_and_degree_errors() {
        let m = models::diamond().unwrap();
        let c = CochainMaps::new(&m).unwrap();
        let e = c.e_map(&w(&[0]), 0, 1).unwrap();
        assert_eq!(e.coeff(&[0]), ScalarExpr::one());
        assert!(matches!(c.e_map(&w(&[0]), 1, 1), Err(Error::DegreeMismatch { .. })));
        let e = c.e_map(&w(&[1, 2, 3]), 3, 0).unwrap();
        let expect = parse_scalar(
            "(x.1-x.0)*((y.2-y.0)*(z.3-z.0)-(y.3-y.0)*(z.2-z.0)) - (x.2-x.0)*((y.1-y.0)*(z.3-z.0)-(y.3-y.0)*(z.1-z.0)) + (x.3-x.0)*((y.1-y.0)*(z.2-z.0)-(y.2-y.0)*(z.1-z.0))",
        )
        .unwrap();
        assert_eq!(e.coeff(&[]), expect.scale(&crate::scalar::qf(1, 6)));
    }

    #[test]
    fn chain_map_and_round_trips_on_diamond() {
        let m = models::diamond().unwrap();
        let c = CochainMaps::new(&m).unwrap();
        for k in 0..=4 {
            for idx in c.ce().basis(k).to_vec() {
                let om = w(&idx);
                assert!(c.verify_chain_map(&om).unwrap().is_empty(), "chain map at {idx:?}");
                let comps = c.e_components(&om).unwrap();
                assert_eq!(c.natural_inv_j(&comps).unwrap(), om, "round trip at {idx:?}");
                for a in &comps {
                    let t = c.theta(a).unwrap();
                    assert_eq!(c.theta_inv(&t).unwrap(), *a);
                    assert!(c.is_strongly_covariant(&t).unwrap());
                    assert!(c.is_left_equivariant(a).unwrap(), "left equivariance at {idx:?}");
                }
            }
        }
    }

    #[test]
    fn worked_classes_are_right_equivariant() {
        let m = models::diamond().unwrap();
        let c = CochainMaps::new(&m).unwrap();
        for idx in [vec![0], vec![1, 2, 3], vec![0, 1, 2, 3]] {
            for a in c.e_components(&w(&idx)).unwrap() {
                assert!(c.is_equivariant(&a).unwrap(), "{idx:?}");
            }
        }
        // θ₄ alone is only left-equivariant
        let a = c.e_map(&w(&[3]), 1, 0).unwrap();
        assert!(!c.is_equivariant(&a).unwrap());
        assert!(c.is_left_equivariant(&a).unwrap());
    }

    #[test]
    fn d1_and_d2_square_to_zero() {
        let m = models::diamond().unwrap();
        let c = CochainMaps::new(&m).unwrap();
        let a = c.theta(&c.e_map(&w(&[1, 2, 3]), 2, 1).unwrap()).unwrap();
        let b = c.theta(&c.e_map(&w(&[0, 1]), 1, 1).unwrap()).unwrap();
        for x in [&a, &b] {
            assert!(c.d1(&c.d1(x)).is_zero());
            assert!(c.d2(&c.d2(x)).is_zero());
            let mut s = c.d1(&c.d2(x)).form;
            s = &s + &c.d2(&c.d1(x)).form;
            assert!(s.is_zero());
        }
    }
}
