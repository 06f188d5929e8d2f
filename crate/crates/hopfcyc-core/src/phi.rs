//! Connes' map `Φ` from strongly covariant group cochains to cyclic
//! cochains on the convolution algebra.
//!
//! The construction goes through the crossed product
//! `𝒞 = (A*(G₁) ⊗ Λ*(δ_ψ)) ⋊ G₂`: an element is a finite sum of triples
//! `ω ⊗ δ_{ψ₁}⋯δ_{ψ_k} U*_ψ` with `ω` a form on `G₁` and anticommuting
//! degree-one symbols `δ_ψ`.  The relations are
//!
//! * `U*_ψ ω U_ψ = ω ∘ ψ̃` and `U*_ψ δ_χ U_ψ = δ_{χψ} − δ_ψ`,
//! * `U*_{ψ₁} U*_{ψ₂} = U*_{ψ₂ψ₁}`, `δ_e = 0`,
//! * `d(b U*_ψ) = db U*_ψ − (−1)^{∂b} b δ_ψ U*_ψ`.
//!
//! A cochain `γ ∈ D^{p,q}` defines `γ̃(ω ⊗ δ_{ψ₁}⋯δ_{ψ_p} U*_e) =
//! ∫_{G₁} ω ∧ γ(e, ψ₁, …, ψ_p)` (zero off `U*_e`), and
//! `Φ(γ)(a⁰,…,a^l) = p!/(l+1)! Σ_j (−1)^{j(l−j)} γ̃(da^{j+1}⋯da^l a⁰ da¹⋯da^j)`
//! with `l = p + dim G₁ − q`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cochain::GroupCochainForm;
use crate::conv::{ConvElement, Convolution, Integral};
use crate::emit::Format;
use crate::error::{Error, Result};
use crate::form::{sort_with_sign, PolyForm};
use crate::group::{GroupModel, Point};
use crate::hopf::{HopfElement, TensorWord};
use crate::linalg::rref;
use crate::scalar::{factorial, FuncAtom, Monomial, ScalarExpr, Var, Q};

/// Element of the crossed product `𝒞`, keyed by `(δ-list, ψ)`; the
/// δ-list is kept sorted (the sign is absorbed into the form).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BottForm {
    terms: BTreeMap<(Vec<Point>, Point), PolyForm>,
}

impl BottForm {
    /// Zero.
    pub fn zero() -> Self {
        Self::default()
    }

    /// Terms `((δ_{ψ₁},…,δ_{ψ_k}), ψ) ↦ ω`.
    pub fn terms(&self) -> &BTreeMap<(Vec<Point>, Point), PolyForm> {
        &self.terms
    }

    /// Whether the element vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `ω ⊗ δ_{ψ₁}⋯δ_{ψ_k} U*_ψ`, normalizing the δ-list: a δ at the
    /// identity or a repeated δ kills the term.
    pub fn add_term(&mut self, form: PolyForm, deltas: Vec<Point>, psi: Point) {
        if form.is_zero() || deltas.iter().any(|d| d.iter().all(ScalarExpr::is_zero)) {
            return;
        }
        let Some((sign, order)) = sort_by_key_with_sign(&deltas) else { return };
        let sorted: Vec<Point> = order.into_iter().map(|i| deltas[i].clone()).collect();
        let form = if sign < 0 { form.scale_q(&-Q::one()) } else { form };
        let key = (sorted, psi);
        let sum = match self.terms.remove(&key) {
            Some(old) => &old + &form,
            None => form,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    /// Adds another element.
    pub fn add_assign(&mut self, other: &Self) {
        for ((d, psi), f) in &other.terms {
            self.add_term(f.clone(), d.clone(), psi.clone());
        }
    }

    /// Multiplies by a rational.
    pub fn scale_q(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        for ((d, psi), f) in &self.terms {
            out.add_term(f.scale_q(c), d.clone(), psi.clone());
        }
        out
    }

    /// Renders `ω ⊗ δ_{…} U*_{…} + …`.
    pub fn render(&self, f: Format) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let pt = |p: &Point| {
            let c: Vec<String> = p.iter().map(|e| crate::emit::scalar(e, f)).collect();
            format!("({})", c.join(","))
        };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((d, psi), w)| {
                let ds: Vec<String> = d.iter().map(|x| format!("δ{}", pt(x))).collect();
                format!("[{}]⊗{}U*{}", w.render(f), ds.join(""), pt(psi))
            })
            .collect();
        parts.join(" + ")
    }
}

/// Sorting permutation of a list with the sign of the permutation; `None`
/// when two entries coincide.
fn sort_by_key_with_sign(items: &[Point]) -> Option<(i32, Vec<usize>)> {
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&a, &b| items[a].cmp(&items[b]));
    if order.windows(2).any(|w| items[w[0]] == items[w[1]]) {
        return None;
    }
    // sign of the permutation `order`
    sort_with_sign(&order).map(|(s, _)| (s, order))
}

/// The crossed product `𝒞` of a matched pair together with Connes' map.
#[derive(Clone, Debug)]
pub struct PhiMap {
    group: GroupModel,
    g1: Vec<Var>,
}

impl PhiMap {
    /// Builds the map for a group model.
    pub fn new(group: &GroupModel) -> Self {
        PhiMap { group: group.clone(), g1: group.g1_coords().to_vec() }
    }

    /// The group model.
    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    /// `Σ f_ψ U*_ψ ↦ Σ f_ψ ⊗ 1 ⊗ U*_ψ`.
    pub fn embed(&self, a: &ConvElement) -> BottForm {
        let mut out = BottForm::zero();
        for (psi, f) in a.terms() {
            out.add_term(PolyForm::scalar(&self.g1, f.clone()), Vec::new(), psi.clone());
        }
        out
    }

    /// `U*_ψ (ω ⊗ D) U_ψ`: pulls `ω` back along `φ ↦ ψ ▷ φ` and replaces
    /// each `δ_χ` by `δ_{χψ} − δ_ψ`.
    fn conjugate(&self, form: &PolyForm, deltas: &[Point], psi: &Point) -> Result<Vec<(PolyForm, Vec<Point>)>> {
        let moved = self.group.left(psi, &self.group.g1_generic())?;
        let map: BTreeMap<Var, ScalarExpr> = self.g1.iter().cloned().zip(moved).collect();
        let form = form.pullback(&self.g1, &map)?;
        let mut out = vec![(form, Vec::new())];
        for chi in deltas {
            let shifted = self.group.mul2(chi, psi)?;
            let mut next = Vec::with_capacity(out.len() * 2);
            for (f, d) in out {
                let mut a = d.clone();
                a.push(shifted.clone());
                next.push((f.clone(), a));
                let mut b = d;
                b.push(psi.clone());
                next.push((f.scale_q(&-Q::one()), b));
            }
            out = next;
        }
        Ok(out)
    }

    /// Graded product in `𝒞`:
    /// `(ω₁⊗D₁U*_{ψ₁})(ω₂⊗D₂U*_{ψ₂}) = (−1)^{|D₁||ω₂|} ω₁ω₂'⊗D₁D₂' U*_{ψ₂ψ₁}`
    /// with `ω₂'⊗D₂' = U*_{ψ₁}(ω₂⊗D₂)U_{ψ₁}`.
    pub fn mul(&self, a: &BottForm, b: &BottForm) -> Result<BottForm> {
        let mut out = BottForm::zero();
        for ((d1, p1), w1) in &a.terms {
            for ((d2, p2), w2) in &b.terms {
                let psi = self.group.mul2(p2, p1)?;
                for (w2c, d2c) in self.conjugate(w2, d2, p1)? {
                    for k in 0..=self.g1.len() {
                        let part = w2c.component(k);
                        if part.is_zero() {
                            continue;
                        }
                        let mut w = w1.wedge(&part);
                        if (d1.len() * k) % 2 == 1 {
                            w = w.scale_q(&-Q::one());
                        }
                        let mut d = d1.clone();
                        d.extend(d2c.iter().cloned());
                        out.add_term(w, d, psi.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product of several elements, left to right.
    pub fn mul_all(&self, items: &[BottForm]) -> Result<BottForm> {
        let mut it = items.iter();
        let Some(first) = it.next() else {
            return Err(Error::DimensionMismatch("empty product".into()));
        };
        let mut acc = first.clone();
        for x in it {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// `d(ω⊗D U*_ψ) = dω⊗D U*_ψ − (−1)^{|ω|+|D|} ω⊗Dδ_ψ U*_ψ`.
    pub fn d(&self, a: &BottForm) -> BottForm {
        let mut out = BottForm::zero();
        for ((dl, psi), w) in &a.terms {
            out.add_term(w.d(), dl.clone(), psi.clone());
            for k in 0..=self.g1.len() {
                let part = w.component(k);
                if part.is_zero() {
                    continue;
                }
                let mut ext = dl.clone();
                ext.push(psi.clone());
                let sign = if (k + dl.len()) % 2 == 0 { -Q::one() } else { Q::one() };
                out.add_term(part.scale_q(&sign), ext, psi.clone());
            }
        }
        out
    }

    /// Decides `ψ = e` (see [`Convolution::is_identity`]).
    fn is_identity(&self, psi: &[ScalarExpr]) -> Result<bool> {
        if psi.iter().all(ScalarExpr::is_zero) {
            return Ok(true);
        }
        if psi.iter().any(|c| c.as_rational().is_some_and(|r| !r.is_zero())) {
            return Ok(false);
        }
        Err(Error::Indeterminate(format!("cannot decide whether {psi:?} is the identity")))
    }

    /// `γ̃` as an integrand over `G₁`: only `U*_e` terms with exactly `p`
    /// δ-symbols and form degree `dim G₁ − q` contribute.
    pub fn gamma_tilde(&self, gamma: &GroupCochainForm, x: &BottForm) -> Result<ScalarExpr> {
        let n = self.g1.len();
        if gamma.q > n {
            return Err(Error::DegreeMismatch { expected: n, found: gamma.q });
        }
        let top: Vec<usize> = (0..n).collect();
        let mut integrand = ScalarExpr::zero();
        for ((dl, psi), w) in &x.terms {
            if dl.len() != gamma.p || !self.is_identity(psi)? {
                continue;
            }
            let part = w.component(n - gamma.q);
            if part.is_zero() {
                continue;
            }
            let mut map = BTreeMap::new();
            for (k, pt) in core::iter::once(self.group.e2()).chain(dl.iter().cloned()).enumerate() {
                for (v, c) in self.group.g2_coords().iter().zip(pt) {
                    map.insert(v.with_index(Some(k as u32)), c);
                }
            }
            let g = gamma.form.subs_coeffs(&map)?;
            integrand += &part.wedge(&g).coeff(&top);
        }
        Ok(integrand)
    }

    /// `l = p + dim G₁ − q`, the number of arguments minus one.
    pub fn arity(&self, gamma: &GroupCochainForm) -> Result<usize> {
        (gamma.p + self.g1.len()).checked_sub(gamma.q).ok_or(Error::DegreeMismatch { expected: self.g1.len(), found: gamma.q })
    }

    /// `Φ(γ)(a⁰,…,a^l)` as an unevaluated integral over `G₁`.
    pub fn phi_integral(&self, gamma: &GroupCochainForm, args: &[ConvElement]) -> Result<Integral> {
        let l = self.arity(gamma)?;
        if args.len() != l + 1 {
            return Err(Error::DegreeMismatch { expected: l + 1, found: args.len() });
        }
        let a: Vec<BottForm> = args.iter().map(|x| self.embed(x)).collect();
        let da: Vec<BottForm> = a.iter().map(|x| self.d(x)).collect();
        let mut integrand = ScalarExpr::zero();
        for j in 0..=l {
            let mut factors: Vec<BottForm> = da[j + 1..].to_vec();
            factors.push(a[0].clone());
            factors.extend(da[1..=j].iter().cloned());
            let prod = self.mul_all(&factors)?;
            let mut t = self.gamma_tilde(gamma, &prod)?;
            if (j * (l - j)) % 2 == 1 {
                t = -t;
            }
            integrand += &t;
        }
        let pref = &factorial(gamma.p as u64) / &factorial(l as u64 + 1);
        Ok(Integral { integrand: integrand.scale(&pref), vars: self.g1.clone() })
    }

    /// `Φ(γ)(a⁰,…,a^l)` evaluated exactly (integrable test functions).
    pub fn phi(&self, gamma: &GroupCochainForm, args: &[ConvElement]) -> Result<ScalarExpr> {
        self.phi_integral(gamma, args)?.evaluate()
    }

    /// Symbolic probe `(f₀U*_{ψ₀}, …, f_lU*_{ψ_l})` with formal functions
    /// `f_i` on `G₁`, symbolic `ψ_i = (x.i, …)` for `i ≥ 1` and
    /// `ψ₀ = (ψ_l⋯ψ₁)⁻¹`, so that the support condition holds identically.
    pub fn symbolic_probe(&self, l: usize) -> Result<Vec<ConvElement>> {
        let mut prod = self.group.e2();
        let mut rest = Vec::new();
        for i in 1..=l {
            let p = self.group.g2_point(i as u32);
            prod = self.group.mul2(&p, &prod)?;
            rest.push(ConvElement::term(self.formal(i), p));
        }
        let mut out = vec![ConvElement::term(self.formal(0), self.group.inv2(&prod)?)];
        out.extend(rest);
        Ok(out)
    }

    /// The formal test function `f_i(φ)`.
    pub fn formal(&self, i: usize) -> ScalarExpr {
        ScalarExpr::func(FuncAtom::new(&format!("f{i}"), &self.g1))
    }

    /// Solves `λ(w) = Φ(γ)` for `w` in the span of all words whose legs
    /// come from `legs`, by matching integrands monomial by monomial on
    /// every probe.  Returns the word (free coefficients set to zero) or
    /// `None` when no combination matches.
    pub fn realize(
        &self,
        conv: &Convolution,
        gamma: &GroupCochainForm,
        legs: &[HopfElement],
        probes: &[Vec<ConvElement>],
    ) -> Result<Option<TensorWord>> {
        let l = self.arity(gamma)?;
        let words = leg_words(legs, l);
        let mut rows: BTreeMap<(usize, Monomial), Vec<Q>> = BTreeMap::new();
        let width = words.len() + 1;
        for (pi, args) in probes.iter().enumerate() {
            let target = self.phi_integral(gamma, args)?.integrand;
            for (m, c) in target.terms() {
                rows.entry((pi, m.clone())).or_insert_with(|| vec![Q::zero(); width])[words.len()] = c.clone();
            }
            for (k, w) in words.iter().enumerate() {
                let lam = conv.lambda_integral(w, args)?.integrand;
                for (m, c) in lam.terms() {
                    rows.entry((pi, m.clone())).or_insert_with(|| vec![Q::zero(); width])[k] = c.clone();
                }
            }
        }
        let matrix: Vec<Vec<Q>> = rows.into_values().collect();
        let (red, pivots) = rref(&matrix, width);
        if pivots.last() == Some(&words.len()) {
            return Ok(None);
        }
        let mut w = TensorWord::zero(l);
        for (row, &pc) in pivots.iter().enumerate() {
            let c = red[row][words.len()].clone();
            if !c.is_zero() {
                w.add_scaled(&words[pc], &c);
            }
        }
        Ok(Some(w))
    }
}

/// All pure tensors of length `l` with legs from `legs`.
fn leg_words(legs: &[HopfElement], l: usize) -> Vec<TensorWord> {
    let mut out = vec![Vec::<HopfElement>::new()];
    for _ in 0..l {
        let mut next = Vec::with_capacity(out.len() * legs.len());
        for prefix in &out {
            for h in legs {
                let mut p = prefix.clone();
                p.push(h.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out.iter().map(|p| TensorWord::from_legs(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::CochainMaps;
    use crate::group::Frame;
    use crate::lie::CeCochain;
    use crate::models;
    use crate::scalar::{q, qf};

    fn w(idx: &[usize]) -> CeCochain {
        [(idx.to_vec(), Q::one())].into_iter().collect()
    }

    fn sample_elements(phi: &PhiMap) -> Vec<BottForm> {
        let g = phi.group();
        let t = ScalarExpr::var(g.g1_coords()[0].clone());
        let a = ConvElement::term(t.clone(), g.g2_point(1));
        let b = ConvElement::term(&(&t * &t) + &ScalarExpr::one(), g.g2_point(2));
        let c = ConvElement::term(ScalarExpr::cos(g.g1_coords()[0].clone()), g.e2());
        let ea = phi.embed(&a);
        let eb = phi.embed(&b);
        vec![ea.clone(), phi.d(&ea), eb.clone(), phi.d(&eb), phi.embed(&c)]
    }

    fn degree(x: &BottForm) -> Option<usize> {
        let mut out = None;
        for ((d, _), f) in x.terms() {
            for k in 0..=f.coords().len() {
                if !f.component(k).is_zero() {
                    let t = k + d.len();
                    if out.is_some_and(|o| o != t) {
                        return None;
                    }
                    out = Some(t);
                }
            }
        }
        out
    }

    #[test]
    fn crossed_product_is_a_dga() {
        let m = models::diamond().unwrap();
        let phi = PhiMap::new(&m.group);
        let xs = sample_elements(&phi);
        for x in &xs {
            assert!(phi.d(&phi.d(x)).is_zero());
            for y in &xs {
                let lhs = phi.d(&phi.mul(x, y).unwrap());
                let mut rhs = phi.mul(&phi.d(x), y).unwrap();
                let sign = if degree(x).unwrap_or(0).is_multiple_of(2) { Q::one() } else { -Q::one() };
                rhs.add_assign(&phi.mul(x, &phi.d(y)).unwrap().scale_q(&sign));
                assert_eq!(lhs, rhs);
                for z in &xs {
                    let l = phi.mul(&phi.mul(x, y).unwrap(), z).unwrap();
                    let r = phi.mul(x, &phi.mul(y, z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn delta_at_identity_and_repeats_vanish() {
        let m = models::diamond().unwrap();
        let g1 = m.group.g1_coords().to_vec();
        let mut x = BottForm::zero();
        x.add_term(PolyForm::scalar(&g1, ScalarExpr::one()), vec![m.group.e2()], m.group.e2());
        assert!(x.is_zero());
        let p = m.group.g2_point(1);
        x.add_term(PolyForm::scalar(&g1, ScalarExpr::one()), vec![p.clone(), p.clone()], m.group.e2());
        assert!(x.is_zero());
        let r = m.group.g2_point(2);
        x.add_term(PolyForm::scalar(&g1, ScalarExpr::one()), vec![p.clone(), r.clone()], m.group.e2());
        x.add_term(PolyForm::scalar(&g1, ScalarExpr::one()), vec![r, p], m.group.e2());
        assert!(x.is_zero());
    }

    #[test]
    fn phi_of_constant_class_is_the_trace_pairing() {
        // p = q = 0 on a one-dimensional G₁: Φ(1)(a⁰,a¹) = ½∫(f₀f₁' − f₀'f₁)
        // on the support ψ₁ψ₀ = e, which for ψ = e is ∫ f₀ f₁'.
        let m = models::diamond().unwrap();
        let c = CochainMaps::new(&m).unwrap();
        let phi = PhiMap::new(&m.group);
        let one = c.e_map(&[(vec![], Q::one())].into_iter().collect(), 0, 0).unwrap();
        let args = phi.symbolic_probe(1).unwrap();
        let integral = phi.phi_integral(&one, &args).unwrap();
        let th = m.group.g1_coords()[0].clone();
        let f0 = phi.formal(0);
        let f1 = phi.formal(1);
        assert_eq!(integral.integrand, &f0 * &f1.diff(&th));
        // evaluation mode on Gaussians: ∫ e^{−θ²}(1−2θ²)e^{−θ²} = ½√(π/2)
        let e = m.group.e2();
        let g = ScalarExpr::gauss(th.clone(), q(1));
        let a0 = ConvElement::term(g.clone(), e.clone());
        let a1 = ConvElement::term(&g * &ScalarExpr::var(th.clone()), e);
        let v = phi.phi(&one, &[a0, a1]).unwrap();
        let expect = ScalarExpr::sqrt_pi() * ScalarExpr::sqrt_rational(&qf(1, 2)).unwrap();
        assert_eq!(v, expect.scale(&qf(1, 2)));
    }

    #[test]
    fn phi_respects_support_and_degrees() {
        let m = models::diamond().unwrap();
        let c = CochainMaps::new(&m).unwrap();
        let phi = PhiMap::new(&m.group);
        let one = c.e_map(&[(vec![], Q::one())].into_iter().collect(), 0, 0).unwrap();
        let th = m.group.g1_coords()[0].clone();
        let g = ScalarExpr::gauss(th, q(1));
        let off: Point = vec![ScalarExpr::one(), ScalarExpr::zero(), ScalarExpr::zero()];
        let args = [ConvElement::term(g.clone(), off.clone()), ConvElement::term(g, off)];
        assert!(phi.phi(&one, &args).unwrap().is_zero());
        assert!(matches!(phi.phi(&one, &args[..1]), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn phi_factors_through_lambda_on_low_classes() {
        let m = models::diamond().unwrap();
        let conv = Convolution::new(&m).unwrap();
        let hopf = conv.hopf();
        let c = CochainMaps::new(&m).unwrap();
        let phi = PhiMap::new(&m.group);
        let mut legs = vec![hopf.one(), hopf.gen(0)];
        legs.extend(hopf.generators(1).into_iter().map(|(_, h)| h));
        // class 1: p = q = 0, l = 1
        let one = c.theta(&c.e_map(&[(vec![], Q::one())].into_iter().collect(), 0, 0).unwrap()).unwrap();
        let probes = vec![phi.symbolic_probe(1).unwrap()];
        let wd = phi.realize(&conv, &one, &legs, &probes).unwrap().expect("class 1 realized");
        assert_eq!(wd, TensorWord::from_legs(&[hopf.gen(0)]));
        // class θ₁: p = 0, q = 1, l = 0
        let t1 = c.theta(&c.e_map(&w(&[0]), 0, 1).unwrap()).unwrap();
        let probes = vec![phi.symbolic_probe(0).unwrap()];
        let wd = phi.realize(&conv, &t1, &legs, &probes).unwrap().expect("class θ₁ realized");
        assert_eq!(wd, TensorWord::scalar(ScalarExpr::one()));
    }

    #[test]
    fn factor_frame_top_class_realizes() {
        let m = models::diamond().unwrap();
        let conv = Convolution::new(&m).unwrap();
        let hopf = conv.hopf();
        let c = CochainMaps::with_frame(&m, Frame::Factor).unwrap();
        let phi = PhiMap::new(&m.group);
        let alpha = c.e_map(&w(&[1, 2, 3]), 2, 1).unwrap();
        assert!(!alpha.is_zero());
        let gamma = c.theta(&alpha).unwrap();
        let mut legs = vec![hopf.one()];
        for f in hopf.rep_monomials(3) {
            legs.push(hopf.rep(f));
        }
        let probes = vec![phi.symbolic_probe(2).unwrap()];
        let wd = phi.realize(&conv, &gamma, &legs, &probes).unwrap().expect("realized");
        assert!(!wd.is_zero());
        for args in &probes {
            let lhs = phi.phi_integral(&gamma, args).unwrap().integrand;
            let rhs = conv.lambda_integral(&wd, args).unwrap().integrand;
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bicrossed_frame_top_class_has_vanishing_middle_part() {
        let m = models::diamond().unwrap();
        let conv = Convolution::new(&m).unwrap();
        let c = CochainMaps::new(&m).unwrap();
        let phi = PhiMap::new(&m.group);
        let gamma = c.theta(&c.e_map(&w(&[1, 2, 3]), 2, 1).unwrap()).unwrap();
        let probes = vec![phi.symbolic_probe(2).unwrap()];
        assert!(phi.phi_integral(&gamma, &probes[0]).unwrap().integrand.is_zero());
        let legs = vec![conv.hopf().one()];
        let wd = phi.realize(&conv, &gamma, &legs, &probes).unwrap().unwrap();
        assert!(wd.is_zero());
    }
}
