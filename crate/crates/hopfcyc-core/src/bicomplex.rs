//! The tower of bicomplexes between the Hopf cyclic complex of
//! `ℛ(G₂) ▶◁ 𝒰(𝔤₁)` and group cochains, plus the comparison maps.
//!
//! `ℛ(G₂)^{⊗k}` is represented exactly as polynomials in `k` indexed copies
//! of the `G₂` coordinates (copy `j` uses variables `v.j`), so that
//! `Δ(F)(ψ₁,ψ₂) = F(ψ₁ψ₂)`, `S(F)(ψ) = F(ψ⁻¹)` and `ε(F) = F(e)` are
//! substitutions.  Three presentations of the same data are used:
//!
//! * step 1: `∧^q𝔤₁* ⊗ ℛ^{⊗p}`, legs `1..=p`;
//! * step 2: `(∧^q𝔤₁* ⊗ ℛ^{⊗p+1})^ℛ`, legs `0..=p` (coinvariant);
//! * step 3: the totally antisymmetric part of step 2.
//!
//! The coefficient forms carry the left coaction `▼(ωⁱ) = Σ_j aⁱ_j ⊗ ωʲ`
//! with `aⁱ_j = S(γ_j^i)`, extended to `∧^q` by minors.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cochain::GroupCochainForm;
use crate::error::{Error, Result};
use crate::form::PolyForm;
use crate::group::{GroupModel, Point, SMatrix};
use crate::hopf::{Bicrossed, Pbw, Structure, TensorWord};
use crate::lie::{ce_contract, ce_wedge, subsets, CEComplex, CeCochain, Violation};
use crate::linalg::{det_scalar, permutations};
use crate::models::MatchedPairModel;
use crate::scalar::{factorial, ScalarExpr, Var, Q};

/// Which complex of the tower a [`MixedCochain`] lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Presentation {
    /// `∧^q𝔤₁* ⊗ ℛ^{⊗p}`.
    Step1,
    /// `(∧^q𝔤₁* ⊗ ℛ^{⊗p+1})^ℛ`.
    Step2,
    /// `(∧^q𝔤₁* ⊗ ∧^{p+1}ℛ)^ℛ`.
    Step3,
}

/// `Σ_I ω^I ⊗ F_I` with `F_I` a polynomial in the leg variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedCochain {
    /// Presentation.
    pub presentation: Presentation,
    /// Group degree `p`.
    pub p: usize,
    terms: BTreeMap<Vec<usize>, ScalarExpr>,
}

impl MixedCochain {
    /// Zero cochain.
    pub fn zero(presentation: Presentation, p: usize) -> Self {
        MixedCochain { presentation, p, terms: BTreeMap::new() }
    }

    /// Single term `ω^I ⊗ F`.
    pub fn term(presentation: Presentation, p: usize, idx: Vec<usize>, f: ScalarExpr) -> Self {
        let mut x = Self::zero(presentation, p);
        x.add_term(idx, f);
        x
    }

    /// The terms `I ↦ F_I`.
    pub fn terms(&self) -> &BTreeMap<Vec<usize>, ScalarExpr> {
        &self.terms
    }

    /// Whether the cochain vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `ω^I ⊗ F` (`I` must be increasing).
    pub fn add_term(&mut self, idx: Vec<usize>, f: ScalarExpr) {
        if f.is_zero() {
            return;
        }
        let e = self.terms.entry(idx.clone()).or_default();
        *e += &f;
        if e.is_zero() {
            self.terms.remove(&idx);
        }
    }

    /// Adds another cochain of the same shape.
    pub fn add_assign(&mut self, other: &Self) {
        for (i, f) in &other.terms {
            self.add_term(i.clone(), f.clone());
        }
    }

    /// Rational multiple.
    pub fn scale_q(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.presentation, self.p);
        for (i, f) in &self.terms {
            out.add_term(i.clone(), f.scale(c));
        }
        out
    }

    /// `self − other`.
    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(&other.scale_q(&-Q::one()));
        out
    }

    fn map_polys(&self, presentation: Presentation, p: usize, f: impl Fn(&ScalarExpr) -> Result<ScalarExpr>) -> Result<Self> {
        let mut out = Self::zero(presentation, p);
        for (i, e) in &self.terms {
            out.add_term(i.clone(), f(e)?);
        }
        Ok(out)
    }

    /// Leg indices of this presentation.
    pub fn legs(&self) -> core::ops::RangeInclusive<u32> {
        legs_of(self.presentation, self.p)
    }
}

fn legs_of(pr: Presentation, p: usize) -> core::ops::RangeInclusive<u32> {
    match pr {
        Presentation::Step1 => 1..=p as u32,
        _ => 0..=p as u32,
    }
}

/// `ℂ ⊗ ℛ^{⊗r} ⊗ 𝒰^{⊗u}`: `𝒰`-legs as PBW keys, `ℛ`-legs as a polynomial in
/// leg variables `1..=r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiWord {
    /// Number of `ℛ` legs.
    pub r: usize,
    /// Number of `𝒰` legs.
    pub u: usize,
    terms: BTreeMap<Vec<Pbw>, ScalarExpr>,
}

impl BiWord {
    /// Zero of bidegree `(r, u)`.
    pub fn zero(r: usize, u: usize) -> Self {
        BiWord { r, u, terms: BTreeMap::new() }
    }

    /// The terms `u-legs ↦ ℛ-polynomial`.
    pub fn terms(&self) -> &BTreeMap<Vec<Pbw>, ScalarExpr> {
        &self.terms
    }

    /// Whether the word vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds a term.
    pub fn add_term(&mut self, key: Vec<Pbw>, c: ScalarExpr) {
        debug_assert_eq!(key.len(), self.u);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Adds another word of the same bidegree.
    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    /// Rational multiple.
    pub fn scale_q(&self, s: &Q) -> Self {
        let mut out = Self::zero(self.r, self.u);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.scale(s));
        }
        out
    }
}

/// An element of the total complex: bidegree `(p, q)` ↦ component.
pub type TotCochain = BTreeMap<(usize, usize), BiWord>;

/// The comparison machinery for one matched pair.
#[derive(Clone, Debug)]
pub struct Bicomplex {
    group: GroupModel,
    hopf: Bicrossed,
    ce: CEComplex,
    /// `a[i][j] = S(γ_j^i)`: `▼(ωⁱ) = Σ_j a[i][j] ⊗ ωʲ`.
    coact: SMatrix,
}

fn rename_legs(e: &ScalarExpr, f: &dyn Fn(u32) -> u32) -> ScalarExpr {
    e.rename_with(&|v: &Var| v.index().map(|k| v.with_index(Some(f(k)))))
}

impl Bicomplex {
    /// Builds the tower for a model.
    pub fn new(model: &MatchedPairModel) -> Result<Self> {
        let hopf = model.bicrossed()?;
        let ce = CEComplex::new(hopf.g1());
        let m = hopf.m();
        let coact = (0..m).map(|i| (0..m).map(|j| hopf.rep_antipode(&hopf.gamma()[j][i])).collect()).collect();
        Ok(Bicomplex { group: model.group.clone(), hopf, ce, coact })
    }

    /// The Hopf algebra.
    pub fn hopf(&self) -> &Bicrossed {
        &self.hopf
    }

    /// The group model.
    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    /// `dim 𝔤₁`.
    pub fn dim1(&self) -> usize {
        self.hopf.m()
    }

    // ---- leg arithmetic ----

    fn leg(&self, k: u32) -> Point {
        self.group.g2_point(k)
    }

    /// `ψ_{k₁}⋯ψ_{k_m}` in leg variables.
    fn prod(&self, ks: &[u32]) -> Result<Point> {
        let mut acc = self.group.e2();
        for &k in ks {
            acc = self.group.mul2(&acc, &self.leg(k))?;
        }
        Ok(acc)
    }

    /// Simultaneously substitutes leg `k` by the given point, for each pair.
    fn subs_legs(&self, e: &ScalarExpr, assign: &[(u32, Point)]) -> Result<ScalarExpr> {
        let mut map = BTreeMap::new();
        for (k, pt) in assign {
            for (v, c) in self.group.g2_coords().iter().zip(pt) {
                map.insert(v.with_index(Some(*k)), c.clone());
            }
        }
        e.subs(&map)
    }

    /// A plain-variable function placed on leg `k` (variables `v ↦ v.k`).
    pub fn on_leg(&self, f: &ScalarExpr, k: u32) -> ScalarExpr {
        f.rename_with(&|v: &Var| v.index().is_none().then(|| v.with_index(Some(k))))
    }

    /// `▼(ω^I) = Σ_J a^I_J ⊗ ω^J`, the coefficient placed on leg `k`.
    fn coaction_form(&self, idx: &[usize], k: u32) -> Vec<(Vec<usize>, ScalarExpr)> {
        let mut out = Vec::new();
        for j in subsets(self.dim1(), idx.len()) {
            let minor: SMatrix = idx.iter().map(|&r| j.iter().map(|&c| self.coact[r][c].clone()).collect()).collect();
            let d = if idx.is_empty() { ScalarExpr::one() } else { det_scalar(&minor) };
            if !d.is_zero() {
                out.push((j, self.on_leg(&d, k)));
            }
        }
        out
    }

    /// `u ▷` acting on leg `k` of a leg polynomial.
    fn act_on_leg(&self, u: &[u32], k: u32, e: &ScalarExpr) -> ScalarExpr {
        if u.iter().all(|&x| x == 0) {
            return e.clone();
        }
        let plain = e.rename_with(&|v: &Var| (v.index() == Some(k)).then(|| v.with_index(None)));
        let acted = self.hopf.act_pbw(u, &plain);
        self.on_leg(&acted, k)
    }

    fn expect(&self, x: &MixedCochain, pr: Presentation) -> Result<()> {
        if x.presentation != pr {
            return Err(Error::Unsupported(format!("operator defined on {pr:?}, cochain is in {:?}", x.presentation)));
        }
        Ok(())
    }

    // ---- step 1 ----

    /// `b_ℛ(α⊗F¹⊗⋯⊗F^p) = α⊗1⊗F¹⊗⋯ + Σ_i (−1)^i α⊗⋯⊗Δ(F^i)⊗⋯
    /// + (−1)^{p+1} α_{<0>}⊗F¹⊗⋯⊗F^p⊗α_{<−1>}`.
    pub fn b1(&self, x: &MixedCochain) -> Result<MixedCochain> {
        self.expect(x, Presentation::Step1)?;
        let p = x.p as u32;
        let mut out = MixedCochain::zero(Presentation::Step1, x.p + 1);
        for (idx, f) in &x.terms {
            out.add_term(idx.clone(), rename_legs(f, &|k| k + 1));
            for i in 1..=p {
                let shifted = rename_legs(f, &|k| if k > i { k + 1 } else { k });
                let moved = self.subs_legs(&shifted, &[(i, self.prod(&[i, i + 1])?)])?;
                out.add_term(idx.clone(), if i % 2 == 1 { -moved } else { moved });
            }
            for (j, a) in self.coaction_form(idx, p + 1) {
                let t = f * &a;
                out.add_term(j, if (p + 1) % 2 == 1 { -t } else { t });
            }
        }
        Ok(out)
    }

    /// `τ_ℛ(α⊗F¹⊗⋯⊗F^p) = α_{<0>}⊗S(F¹)·(F²⊗⋯⊗F^p⊗α_{<−1>})`.
    pub fn tau1(&self, x: &MixedCochain) -> Result<MixedCochain> {
        self.expect(x, Presentation::Step1)?;
        let p = x.p as u32;
        if p == 0 {
            return Ok(x.clone());
        }
        let all: Vec<u32> = (1..=p).collect();
        let first = self.group.inv2(&self.prod(&all)?)?;
        let mut assign = vec![(1, first)];
        for k in 2..=p {
            assign.push((k, self.leg(k - 1)));
        }
        let mut out = MixedCochain::zero(Presentation::Step1, x.p);
        for (idx, f) in &x.terms {
            let g = self.subs_legs(f, &assign)?;
            for (j, a) in self.coaction_form(idx, p) {
                out.add_term(j, &g * &a);
            }
        }
        Ok(out)
    }

    /// `σ_ℛ(α⊗F¹⊗⋯⊗F^p) = ε(F^p) α⊗F¹⊗⋯⊗F^{p−1}`.
    pub fn sigma1(&self, x: &MixedCochain) -> Result<MixedCochain> {
        self.expect(x, Presentation::Step1)?;
        if x.p == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        let e = self.group.e2();
        x.map_polys(Presentation::Step1, x.p - 1, |f| self.subs_legs(f, &[(x.p as u32, e.clone())]))
    }

    /// `B_ℛ = (Σ_{i<p} (−1)^{(p−1)i} τ^i) σ τ (1 − (−1)^p τ)` in any
    /// presentation.
    pub fn big_b(&self, x: &MixedCochain) -> Result<MixedCochain> {
        if x.presentation == Presentation::Step1 && x.p == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        let tau = |y: &MixedCochain| match y.presentation {
            Presentation::Step1 => self.tau1(y),
            _ => self.tau2(y),
        };
        let sigma = |y: &MixedCochain| match y.presentation {
            Presentation::Step1 => self.sigma1(y),
            _ => self.sigma2(y),
        };
        let p = x.p;
        let t = tau(x)?;
        let mut y = x.clone();
        y.add_assign(&t.scale_q(&if p.is_multiple_of(2) { -Q::one() } else { Q::one() }));
        let y = sigma(&tau(&y)?)?;
        // τ has order p on degree p − 1 in every presentation
        let mut out = MixedCochain::zero(y.presentation, y.p);
        let mut cur = y;
        for i in 0..p {
            let s = if ((p - 1) * i) % 2 == 1 { -Q::one() } else { Q::one() };
            out.add_assign(&cur.scale_q(&s));
            cur = tau(&cur)?;
        }
        Ok(out)
    }

    /// `Z_i ▷ (F¹⊗⋯⊗F^p)` through the iterated coproduct `Δ_⋈^{(p)}(Z_i)`.
    fn twisted_action(&self, i: usize, f: &ScalarExpr, p: usize) -> ScalarExpr {
        if p == 0 {
            return ScalarExpr::zero();
        }
        let w = self.hopf.iterated_coproduct(Structure::Bowtie, &self.hopf.gen(i), p - 1);
        let mut out = ScalarExpr::zero();
        for (key, c) in w.terms() {
            let mut acc = f.clone();
            for (k, u) in key.iter().enumerate() {
                acc = self.act_on_leg(u, k as u32 + 1, &acc);
                if acc.is_zero() {
                    break;
                }
            }
            if !acc.is_zero() {
                out += &(c * &acc);
            }
        }
        out
    }

    /// The diagonal action `Z_i ▷ (F⁰⊗⋯⊗F^p) = Σ_k F⁰⊗⋯⊗Z_i▷F^k⊗⋯`.
    fn diagonal_action(&self, i: usize, f: &ScalarExpr, legs: core::ops::RangeInclusive<u32>) -> ScalarExpr {
        let u = self.hopf.pbw_gen(i);
        legs.map(|k| self.act_on_leg(&u, k, f)).sum()
    }

    fn partial_with(&self, x: &MixedCochain, act: &dyn Fn(usize, &ScalarExpr) -> ScalarExpr) -> MixedCochain {
        let mut out = MixedCochain::zero(x.presentation, x.p);
        for (idx, f) in &x.terms {
            let unit: CeCochain = [(idx.clone(), Q::one())].into_iter().collect();
            for (j, c) in self.ce.d(&unit) {
                out.add_term(j, f.scale(&c));
            }
            for i in 0..self.dim1() {
                let zf = act(i, f);
                if zf.is_zero() {
                    continue;
                }
                let wi: CeCochain = [(vec![i], Q::one())].into_iter().collect();
                for (j, c) in ce_wedge(&wi, &unit) {
                    out.add_term(j, zf.scale(&-c));
                }
            }
        }
        out
    }

    /// `∂_𝔤(α⊗F) = ∂α⊗F − Σ_i ωⁱ∧α ⊗ Z_i▷F`, with the action through
    /// `Δ_⋈` in step 1 and the diagonal action in steps 2 and 3.
    pub fn partial(&self, x: &MixedCochain) -> MixedCochain {
        match x.presentation {
            Presentation::Step1 => self.partial_with(x, &|i, f| self.twisted_action(i, f, x.p)),
            _ => self.partial_with(x, &|i, f| self.diagonal_action(i, f, x.legs())),
        }
    }

    // ---- step 2 ----

    /// `b_ℛ(α⊗F⁰⊗⋯⊗F^p) = Σ_{i=0}^{p+1} (−1)^i α⊗⋯⊗F^{i−1}⊗1⊗F^i⊗⋯`.
    pub fn b2(&self, x: &MixedCochain) -> Result<MixedCochain> {
        if x.presentation == Presentation::Step1 {
            return Err(Error::Unsupported("b₂ needs a homogeneous cochain".into()));
        }
        let p = x.p as u32;
        let mut out = MixedCochain::zero(Presentation::Step2, x.p + 1);
        for (idx, f) in &x.terms {
            for i in 0..=p + 1 {
                let g = rename_legs(f, &|k| if k >= i { k + 1 } else { k });
                out.add_term(idx.clone(), if i % 2 == 1 { -g } else { g });
            }
        }
        Ok(out)
    }

    /// `τ_ℛ(α⊗F⁰⊗⋯⊗F^p) = α⊗F¹⊗⋯⊗F^p⊗F⁰`.
    pub fn tau2(&self, x: &MixedCochain) -> Result<MixedCochain> {
        if x.presentation == Presentation::Step1 {
            return Err(Error::Unsupported("τ₂ needs a homogeneous cochain".into()));
        }
        let p = x.p as u32;
        x.map_polys(Presentation::Step2, x.p, |f| Ok(rename_legs(f, &|k| if k == 0 { p } else { k - 1 })))
    }

    /// `σ_ℛ(α⊗F⁰⊗⋯⊗F^p) = α⊗F⁰⊗⋯⊗F^{p−1}F^p`.
    pub fn sigma2(&self, x: &MixedCochain) -> Result<MixedCochain> {
        if x.presentation == Presentation::Step1 {
            return Err(Error::Unsupported("σ₂ needs a homogeneous cochain".into()));
        }
        if x.p == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        let p = x.p as u32;
        x.map_polys(Presentation::Step2, x.p - 1, |f| Ok(rename_legs(f, &|k| if k == p { p - 1 } else { k })))
    }

    /// `𝓘(α⊗F¹⊗⋯⊗F^p) = α_{<0>}⊗F¹_{(1)}⊗S(F¹_{(2)})F²_{(1)}⊗⋯⊗S(F^p_{(2)})α_{<−1>}`,
    /// i.e. `Σ_J ω^J ⊗ F(ψ₀ψ₁⁻¹, …, ψ_{p−1}ψ_p⁻¹)·a^I_J(ψ_p)`.
    pub fn homogeneous_i(&self, x: &MixedCochain) -> Result<MixedCochain> {
        self.expect(x, Presentation::Step1)?;
        let p = x.p as u32;
        let mut assign = Vec::new();
        for k in 1..=p {
            let inv = self.group.inv2(&self.leg(k))?;
            assign.push((k, self.group.mul2(&self.leg(k - 1), &inv)?));
        }
        let mut out = MixedCochain::zero(Presentation::Step2, x.p);
        for (idx, f) in &x.terms {
            let g = self.subs_legs(f, &assign)?;
            for (j, a) in self.coaction_form(idx, p) {
                out.add_term(j, &g * &a);
            }
        }
        Ok(out)
    }

    /// `𝓘⁻¹(α⊗F⁰⊗⋯⊗F^p) = α⊗F⁰_{(1)}⊗F⁰_{(2)}F¹_{(1)}⊗⋯⊗F⁰_{(p)}⋯F^{p−1}ε(F^p)`,
    /// i.e. `G(ψ₁⋯ψ_p, ψ₂⋯ψ_p, …, ψ_p, e)`; rejects non-coinvariant input.
    pub fn homogeneous_i_inv(&self, x: &MixedCochain) -> Result<MixedCochain> {
        if x.presentation == Presentation::Step1 {
            return Err(Error::Unsupported("𝓘⁻¹ needs a homogeneous cochain".into()));
        }
        if !self.is_coinvariant(x)? {
            return Err(Error::Invalid("𝓘⁻¹ of a non-coinvariant cochain".into()));
        }
        let p = x.p as u32;
        let mut assign = Vec::new();
        for k in 0..=p {
            let tail: Vec<u32> = (k + 1..=p).collect();
            assign.push((k, self.prod(&tail)?));
        }
        x.map_polys(Presentation::Step1, x.p, |f| self.subs_legs(f, &assign))
    }

    /// The coinvariance condition
    /// `α_{<0>}⊗F⁰⊗⋯⊗F^p⊗α_{<−1>} = α⊗F⁰_{(1)}⊗⋯⊗F^p_{(1)}⊗F⁰_{(2)}⋯F^p_{(2)}`.
    pub fn is_coinvariant(&self, x: &MixedCochain) -> Result<bool> {
        let p = x.p as u32;
        let chi = p + 1;
        let mut lhs = MixedCochain::zero(x.presentation, x.p);
        let mut rhs = MixedCochain::zero(x.presentation, x.p);
        let mut assign = Vec::new();
        for k in 0..=p {
            assign.push((k, self.group.mul2(&self.leg(k), &self.leg(chi))?));
        }
        for (idx, f) in &x.terms {
            for (j, a) in self.coaction_form(idx, chi) {
                lhs.add_term(j, f * &a);
            }
            rhs.add_term(idx.clone(), self.subs_legs(f, &assign)?);
        }
        Ok(lhs == rhs)
    }

    // ---- step 3 ----

    /// `α_ℛ`: `1/(p+1)! Σ_σ (−1)^σ α⊗F^{σ(0)}⊗⋯⊗F^{σ(p)}`.
    pub fn antisymmetrize(&self, x: &MixedCochain) -> Result<MixedCochain> {
        if x.presentation == Presentation::Step1 {
            return Err(Error::Unsupported("α_ℛ needs a homogeneous cochain".into()));
        }
        let n = x.p + 1;
        let norm = Q::one() / factorial(n as u64);
        let mut out = MixedCochain::zero(Presentation::Step3, x.p);
        for (sign, perm) in permutations(n) {
            let c = if sign < 0 { -norm.clone() } else { norm.clone() };
            // F^{σ(k)} sits on leg k: old leg σ(k) ↦ new leg k
            let mut inv = vec![0u32; n];
            for (k, &s) in perm.iter().enumerate() {
                inv[s] = k as u32;
            }
            for (idx, f) in &x.terms {
                out.add_term(idx.clone(), rename_legs(f, &|k| inv[k as usize]).scale(&c));
            }
        }
        Ok(out)
    }

    /// Whether a homogeneous cochain is totally antisymmetric in its legs.
    pub fn is_antisymmetric(&self, x: &MixedCochain) -> Result<bool> {
        let mut y = self.antisymmetrize(x)?;
        y.presentation = x.presentation;
        Ok(y == *x)
    }

    /// Step-3 `b_ℛ(α⊗F⁰∧⋯∧F^p) = α⊗1∧F⁰∧⋯∧F^p`.
    pub fn b3(&self, x: &MixedCochain) -> Result<MixedCochain> {
        self.expect(x, Presentation::Step3)?;
        let mut y = x.map_polys(Presentation::Step2, x.p + 1, |f| Ok(rename_legs(f, &|k| k + 1)))?;
        y = self.antisymmetrize(&y)?;
        Ok(y)
    }

    /// `𝒥(α⊗F⁰∧⋯∧F^p)(ψ₀,…,ψ_p) = 1/(p+1)! Σ_σ (−1)^σ α F^{σ(0)}(ψ₀)⋯F^{σ(p)}(ψ_p)`,
    /// a group cochain on the vertices `ψ_k = (v.k)`.
    pub fn j_map(&self, x: &MixedCochain) -> Result<GroupCochainForm> {
        let y = self.antisymmetrize(x)?;
        let g1 = self.group.g1_coords().to_vec();
        let mut form = PolyForm::zero(&g1);
        let mut qd = None;
        for (idx, f) in &y.terms {
            if qd.is_some_and(|d| d != idx.len()) {
                return Err(Error::DegreeMismatch { expected: qd.unwrap_or(0), found: idx.len() });
            }
            qd = Some(idx.len());
            form.add_term(idx.clone(), f.clone());
        }
        Ok(GroupCochainForm { p: x.p, q: qd.unwrap_or(0), form })
    }

    /// Reads a group cochain (vertex variables `v.k`) as a step-2 word.
    pub fn from_group_cochain(&self, alpha: &GroupCochainForm) -> MixedCochain {
        let mut out = MixedCochain::zero(Presentation::Step2, alpha.p);
        for (idx, c) in alpha.form.terms() {
            out.add_term(idx.clone(), c.clone());
        }
        out
    }

    // ---- checks ----

    /// The bicomplex identities on the given step-1 cochains: `b² = 0`,
    /// `B² = 0`, `bB + Bb = 0`, `∂² = 0`, `∂b = b∂`, the transported
    /// operators `𝓘b₁ = b₂𝓘`, `𝓘∂₁ = ∂₂𝓘`, `𝓘τ₁ = τ₂𝓘`, the round trip
    /// `𝓘⁻¹𝓘 = id` and coinvariance of `𝓘`-images.
    pub fn verify_step_identities(&self, xs: &[(String, MixedCochain)]) -> Result<Vec<Violation>> {
        let mut out = Vec::new();
        let mut check = |name: &str, label: &str, ok: bool| {
            if !ok {
                out.push(Violation { check: name.into(), indices: Vec::new(), detail: format!("fails on {label}") });
            }
        };
        for (label, x) in xs {
            let bx = self.b1(x)?;
            check("bicomplex.b_squared", label, self.b1(&bx)?.is_zero());
            check("bicomplex.partial_squared", label, self.partial(&self.partial(x)).is_zero());
            check("bicomplex.partial_b_commute", label, self.partial(&bx) == self.b1(&self.partial(x))?);
            let ix = self.homogeneous_i(x)?;
            check("bicomplex.I_coinvariant", label, self.is_coinvariant(&ix)?);
            check("bicomplex.I_round_trip", label, self.homogeneous_i_inv(&ix)? == *x);
            check("bicomplex.I_intertwines_b", label, self.homogeneous_i(&bx)? == self.b2(&ix)?);
            check("bicomplex.I_intertwines_partial", label, self.homogeneous_i(&self.partial(x))? == self.partial(&ix));
            check("bicomplex.I_intertwines_tau", label, self.homogeneous_i(&self.tau1(x)?)? == self.tau2(&ix)?);
            if x.p >= 1 {
                let bb = self.big_b(x)?;
                if bb.p >= 1 {
                    check("bicomplex.B_squared", label, self.big_b(&bb)?.is_zero());
                }
                let mut s = self.big_b(&bx)?;
                s.add_assign(&self.b1(&bb)?);
                check("bicomplex.bB_anticommute", label, s.is_zero());
                check("bicomplex.I_intertwines_B", label, self.homogeneous_i(&bb)? == self.big_b(&ix)?);
            }
        }
        Ok(out)
    }

    /// Step-1 test cochains: `ω^I ⊗` products of coordinate monomials of
    /// degree `≤ deg` on each leg, deterministic.
    pub fn test_cochains(&self, p: usize, deg: u32, count: usize) -> Vec<(String, MixedCochain)> {
        let monos = self.hopf.rep_monomials(deg);
        let forms: Vec<Vec<usize>> = (0..=self.dim1()).flat_map(|k| subsets(self.dim1(), k)).collect();
        let mut out = Vec::new();
        for t in 0..count {
            let idx = forms[(t * 7 + 1) % forms.len()].clone();
            let mut f = ScalarExpr::one();
            for k in 1..=p {
                let m = &monos[(t * 5 + 3 * k) % monos.len()];
                f = &f * &self.on_leg(m, k as u32);
            }
            let mut x = MixedCochain::term(Presentation::Step1, p, idx.clone(), f.clone());
            // a second term so that sums are exercised
            let m2 = &monos[(t * 11 + 2) % monos.len()];
            if p >= 1 {
                x.add_term(forms[(t * 3) % forms.len()].clone(), self.on_leg(m2, p as u32));
            }
            out.push((format!("p={p} #{t} ω{idx:?}⊗{f}"), x));
        }
        out
    }

    // ---- appendix: the diagonal of the bicyclic complex ----

    /// Iterated coaction of `u` with its `ℛ` part evaluated at the point
    /// `at`: `Σ u_{<0>} ⊗ u_{<1>}(at)`.
    fn coact_at(&self, u: &[u32], at: &Point) -> Result<Vec<(Pbw, ScalarExpr)>> {
        let map: BTreeMap<Var, ScalarExpr> = self.group.g2_coords().iter().cloned().zip(at.iter().cloned()).collect();
        self.hopf.coaction(u).into_iter().map(|(v, f)| Ok((v, f.subs(&map)?))).collect()
    }

    /// Deterministic length-`n` tensor words over `ℋ` (pure words of
    /// generators and words with one mixed leg), for round-trip tests.
    pub fn sample_tensor_words(&self, n: usize) -> Vec<TensorWord> {
        let h = self.hopf();
        let mut elems = vec![h.one()];
        elems.extend(h.generators(1).into_iter().map(|(_, e)| e));
        let mut out = Vec::new();
        for (t, a) in elems.iter().enumerate() {
            let legs: Vec<_> = (0..n).map(|k| elems[(t + 2 * k) % elems.len()].clone()).collect();
            out.push(TensorWord::from_legs(&legs));
            let mut mixed = h.product(a, &elems[(t + 1) % elems.len()]);
            mixed.add_assign(&h.gen(0));
            let legs: Vec<_> = (0..n).map(|k| if k == 0 { mixed.clone() } else { elems[k % elems.len()].clone() }).collect();
            out.push(TensorWord::from_legs(&legs));
        }
        out
    }

    /// Three deterministic normalized bi-words of bidegree `(r, u)`: every
    /// ℛ-leg is a non-constant monomial and every 𝒰-leg a non-unit PBW word.
    pub fn sample_biwords(&self, r: usize, u: usize) -> Vec<BiWord> {
        let monos: Vec<ScalarExpr> = self.hopf().rep_monomials(2).into_iter().filter(|m| !m.is_one()).collect();
        let pbw: Vec<Pbw> = self.hopf().pbw_monomials(2).into_iter().filter(|p| p.iter().any(|&k| k > 0)).collect();
        let mut out = Vec::new();
        for t in 0..3 {
            let mut w = BiWord::zero(r, u);
            let mut f = ScalarExpr::one();
            for k in 1..=r {
                f = &f * &self.on_leg(&monos[(t + 2 * k) % monos.len()], k as u32);
            }
            let key: Vec<Pbw> = (0..u).map(|k| pbw[(t + k) % pbw.len()].clone()).collect();
            w.add_term(key, f);
            out.push(w);
        }
        out
    }

    /// `Ψ_⋈(1⊗F¹▶◁u¹⊗⋯⊗Fⁿ▶◁uⁿ) = 1⊗F¹⊗F²S(u¹_{<n−1>})⊗⋯⊗FⁿS(u¹_{<1>})⋯S(u^{n−1}_{<1>})
    /// ⊗u¹_{<0>}⊗⋯⊗u^{n−1}_{<0>}⊗uⁿ`.
    pub fn psi_bowtie(&self, w: &TensorWord) -> Result<BiWord> {
        let n = w.n();
        let mut at = Vec::with_capacity(n);
        for j in 1..n as u32 {
            let tail: Vec<u32> = (j + 1..=n as u32).collect();
            at.push(self.group.inv2(&self.prod(&tail)?)?);
        }
        self.reshuffle(w.terms(), n, &at)
    }

    /// `Ψ_⋈⁻¹(1⊗F¹⊗⋯⊗Fⁿ⊗u¹⊗⋯⊗uⁿ) = 1⊗F¹▶◁u¹_{<0>}⊗F²u¹_{<1>}▶◁u²_{<0>}⊗⋯`.
    pub fn psi_bowtie_inv(&self, x: &BiWord) -> Result<TensorWord> {
        if x.r != x.u {
            return Err(Error::DimensionMismatch(format!("off-diagonal bidegree ({}, {})", x.r, x.u)));
        }
        let n = x.r;
        let mut at = Vec::with_capacity(n);
        for j in 1..n as u32 {
            let tail: Vec<u32> = (j + 1..=n as u32).collect();
            at.push(self.prod(&tail)?);
        }
        let y = self.reshuffle(&x.terms, n, &at)?;
        let mut out = TensorWord::zero(n);
        for (k, c) in y.terms {
            out.add_term(k, c);
        }
        Ok(out)
    }

    /// Coacts `u^j` (`j < n`) and multiplies by `u^j_{<1>}(at[j−1])`.
    fn reshuffle(&self, terms: &BTreeMap<Vec<Pbw>, ScalarExpr>, n: usize, at: &[Point]) -> Result<BiWord> {
        let mut out = BiWord::zero(n, n);
        for (key, c) in terms {
            let mut partial: Vec<(Vec<Pbw>, ScalarExpr)> = vec![(Vec::new(), c.clone())];
            for (j, u) in key.iter().enumerate() {
                if j + 1 == n {
                    for (k, _) in partial.iter_mut() {
                        k.push(u.clone());
                    }
                    break;
                }
                let co = self.coact_at(u, &at[j])?;
                let mut next = Vec::with_capacity(partial.len() * co.len());
                for (k, e) in &partial {
                    for (v, f) in &co {
                        let mut k2 = k.clone();
                        k2.push(v.clone());
                        next.push((k2, e * f));
                    }
                }
                partial = next;
            }
            for (k, e) in partial {
                out.add_term(k, e);
            }
        }
        Ok(out)
    }

    /// Horizontal (ℛ) coface `→∂_i : ℛ^{⊗r} → ℛ^{⊗r+1}`.
    pub fn r_coface(&self, i: usize, x: &BiWord) -> Result<BiWord> {
        let r = x.r as u32;
        let i = i as u32;
        let mut out = BiWord::zero(x.r + 1, x.u);
        for (k, c) in &x.terms {
            let e = if i == 0 {
                rename_legs(c, &|l| l + 1)
            } else if i == r + 1 {
                c.clone()
            } else {
                let s = rename_legs(c, &|l| if l > i { l + 1 } else { l });
                self.subs_legs(&s, &[(i, self.prod(&[i, i + 1])?)])?
            };
            out.add_term(k.clone(), e);
        }
        Ok(out)
    }

    /// Horizontal codegeneracy `→s_i`: `ε` on leg `i+1`.
    pub fn r_codegeneracy(&self, i: usize, x: &BiWord) -> Result<BiWord> {
        let leg = i as u32 + 1;
        let mut out = BiWord::zero(x.r - 1, x.u);
        for (k, c) in &x.terms {
            let e = self.subs_legs(c, &[(leg, self.group.e2())])?;
            out.add_term(k.clone(), rename_legs(&e, &|l| if l > leg { l - 1 } else { l }));
        }
        Ok(out)
    }

    /// Vertical (𝒰) coface `↑∂_i : 𝒰^{⊗u} → 𝒰^{⊗u+1}`.
    pub fn u_coface(&self, i: usize, x: &BiWord) -> BiWord {
        let one = self.hopf.pbw_one();
        let mut out = BiWord::zero(x.r, x.u + 1);
        for (k, c) in &x.terms {
            if i == 0 || i == x.u + 1 {
                let mut k2 = k.clone();
                k2.insert(if i == 0 { 0 } else { x.u }, one.clone());
                out.add_term(k2, c.clone());
            } else {
                for (a, b, q) in self.hopf.u_coproduct(&k[i - 1]) {
                    let mut k2 = k[..i - 1].to_vec();
                    k2.push(a);
                    k2.push(b);
                    k2.extend(k[i..].iter().cloned());
                    out.add_term(k2, c.scale(&q));
                }
            }
        }
        out
    }

    /// Vertical codegeneracy `↑s_i`: `ε` on leg `i+1`.
    pub fn u_codegeneracy(&self, i: usize, x: &BiWord) -> BiWord {
        let mut out = BiWord::zero(x.r, x.u - 1);
        for (k, c) in &x.terms {
            let e = self.hopf.u_counit(&k[i]);
            if e.is_zero() {
                continue;
            }
            let mut k2 = k.clone();
            k2.remove(i);
            out.add_term(k2, c.scale(&e));
        }
        out
    }

    /// Horizontal Hochschild differential `Σ (−1)^i →∂_i`.
    pub fn b_horizontal(&self, x: &BiWord) -> Result<BiWord> {
        let mut out = BiWord::zero(x.r + 1, x.u);
        for i in 0..=x.r + 1 {
            let s = if i % 2 == 1 { -Q::one() } else { Q::one() };
            out.add_assign(&self.r_coface(i, x)?.scale_q(&s));
        }
        Ok(out)
    }

    /// Vertical Hochschild differential `Σ (−1)^i ↑∂_i`.
    pub fn b_vertical(&self, x: &BiWord) -> BiWord {
        let mut out = BiWord::zero(x.r, x.u + 1);
        for i in 0..=x.u + 1 {
            let s = if i % 2 == 1 { -Q::one() } else { Q::one() };
            out.add_assign(&self.u_coface(i, x).scale_q(&s));
        }
        out
    }

    /// Diagonal Hochschild differential `Σ (−1)^i ↑∂_i →∂_i`.
    pub fn b_diagonal(&self, x: &BiWord) -> Result<BiWord> {
        let mut out = BiWord::zero(x.r + 1, x.u + 1);
        for i in 0..=x.r + 1 {
            let s = if i % 2 == 1 { -Q::one() } else { Q::one() };
            out.add_assign(&self.u_coface(i, &self.r_coface(i, x)?).scale_q(&s));
        }
        Ok(out)
    }

    /// Total differential `b_→ + (−1)^p b_↑` on `⊕ ℛ^{⊗p}⊗𝒰^{⊗q}`.
    pub fn b_total(&self, x: &TotCochain) -> Result<TotCochain> {
        let mut out = TotCochain::new();
        let put = |out: &mut TotCochain, w: BiWord| {
            let slot = out.entry((w.r, w.u)).or_insert_with(|| BiWord::zero(w.r, w.u));
            slot.add_assign(&w);
        };
        for (&(p, _), w) in x {
            put(&mut out, self.b_horizontal(w)?);
            let v = self.b_vertical(w);
            put(&mut out, if p % 2 == 1 { v.scale_q(&-Q::one()) } else { v });
        }
        out.retain(|_, w| !w.is_zero());
        Ok(out)
    }

    /// Alexander–Whitney `AW_{p,q}: ℛ^{⊗p}⊗𝒰^{⊗q} → ℛ^{⊗p+q}⊗𝒰^{⊗p+q}`,
    /// `↑∂₀^p →∂_{p+q}⋯→∂_{p+1}` (front face on `ℛ`, back face on `𝒰`).
    pub fn aw(&self, x: &BiWord) -> Result<BiWord> {
        let (p, q) = (x.r, x.u);
        let mut y = x.clone();
        for i in p + 1..=p + q {
            y = self.r_coface(i, &y)?;
        }
        for _ in 0..p {
            y = self.u_coface(0, &y);
        }
        Ok(y)
    }

    /// `AW` on a total cochain, summed into the diagonal.
    pub fn aw_total(&self, x: &TotCochain) -> Result<BiWord> {
        let n = x.keys().map(|(p, q)| p + q).max().unwrap_or(0);
        let mut out = BiWord::zero(n, n);
        for w in x.values() {
            if w.r + w.u != n {
                return Err(Error::DegreeMismatch { expected: n, found: w.r + w.u });
            }
            out.add_assign(&self.aw(w)?);
        }
        Ok(out)
    }

    /// Shuffle map `Sh: ℛ^{⊗n}⊗𝒰^{⊗n} → ⊕_{p+q=n} ℛ^{⊗p}⊗𝒰^{⊗q}`,
    /// `Σ_{(μ,ν)∈Sh(p,q)} (−1)^{(μ,ν)} ↑s_μ →s_ν`.
    pub fn shuffle(&self, x: &BiWord) -> Result<TotCochain> {
        if x.r != x.u {
            return Err(Error::DimensionMismatch(format!("off-diagonal bidegree ({}, {})", x.r, x.u)));
        }
        let n = x.r;
        let mut out = TotCochain::new();
        for p in 0..=n {
            let q = n - p;
            let mut acc = BiWord::zero(p, q);
            for mu in subsets(n, p) {
                let nu: Vec<usize> = (0..n).filter(|k| !mu.contains(k)).collect();
                let mut perm = mu.clone();
                perm.extend(nu.iter().cloned());
                let sign = crate::form::sort_with_sign(&perm).map(|(s, _)| s).unwrap_or(1);
                let mut y = x.clone();
                for &k in nu.iter().rev() {
                    y = self.r_codegeneracy(k, &y)?;
                }
                for &k in mu.iter().rev() {
                    y = self.u_codegeneracy(k, &y);
                }
                acc.add_assign(&if sign < 0 { y.scale_q(&-Q::one()) } else { y });
            }
            if !acc.is_zero() {
                out.insert((p, q), acc);
            }
        }
        Ok(out)
    }

    // ---- Poincaré duality ----

    /// `ι(η)ϖ` for `η = Z_{j₁}∧⋯∧Z_{j_k}` and `ϖ = ω¹∧⋯∧ω^m`, with
    /// `ι(Z_{j₁}∧⋯∧Z_{j_k}) = ι(Z_{j_k})∘⋯∘ι(Z_{j₁})`.
    pub fn contract_volume(&self, eta: &[usize]) -> Result<CeCochain> {
        let m = self.dim1();
        if eta.len() > m {
            return Err(Error::DegreeMismatch { expected: m, found: eta.len() });
        }
        Ok(contract_volume(m, eta))
    }

    /// `𝔇(ϖ⊗η⊗F¹⊗⋯⊗F^p) = ι(η)ϖ⊗F¹⊗⋯⊗F^p` on `Σ_η η ⊗ F_η`.
    pub fn poincare(&self, p: usize, x: &BTreeMap<Vec<usize>, ScalarExpr>) -> Result<MixedCochain> {
        let mut out = MixedCochain::zero(Presentation::Step1, p);
        for (eta, f) in x {
            for (j, c) in self.contract_volume(eta)? {
                out.add_term(j, f.scale(&c));
            }
        }
        Ok(out)
    }

    /// `ad*(Z)ϖ = δ(Z)ϖ` for every basis vector, with
    /// `(ad*(Z)α)(X₁,…) = Σ_k α(…, [Z, X_k], …)`.
    pub fn volume_is_delta_twisted(&self) -> bool {
        let alg = self.hopf.g1();
        let m = alg.dim();
        let delta = alg.delta_character();
        (0..m).all(|i| {
            let tr: Q = (0..m).map(|k| alg.bracket_basis(i, k)[k].clone()).sum();
            tr == delta[i]
        })
    }

    /// `▼(ϖ) = σ⁻¹ ⊗ ϖ`.
    pub fn volume_coaction_is_sigma_inv(&self) -> bool {
        let all: Vec<usize> = (0..self.dim1()).collect();
        let co = self.coaction_form(&all, 0);
        let plain = |e: &ScalarExpr| e.rename_with(&|v: &Var| v.index().map(|_| v.with_index(None)));
        co.len() == 1 && co[0].0 == all && plain(&co[0].1) == self.hopf.sigma_inv()
    }
}

/// `ι(η)(ω¹∧⋯∧ω^m)` with the first-slot convention.
pub fn contract_volume(m: usize, eta: &[usize]) -> CeCochain {
    let mut acc: CeCochain = [((0..m).collect::<Vec<_>>(), Q::one())].into_iter().collect();
    for &j in eta {
        let mut v = vec![Q::zero(); m];
        v[j] = Q::one();
        acc = ce_contract(&acc, &v);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::CochainMaps;
    use crate::models;

    fn setups() -> Vec<(String, Bicomplex)> {
        ["diamond", "shear"].iter().map(|n| ((*n).into(), Bicomplex::new(&models::builtin(n).unwrap()).unwrap())).collect()
    }

    #[test]
    fn step_operators_form_a_bicomplex() {
        for (name, bc) in setups() {
            for p in 0..=2 {
                let xs = bc.test_cochains(p, 2, 4);
                let v = bc.verify_step_identities(&xs).unwrap();
                assert!(v.is_empty(), "{name}: {v:?}");
            }
        }
    }

    #[test]
    fn b1_in_degree_zero_has_two_terms() {
        let bc = Bicomplex::new(&models::diamond().unwrap()).unwrap();
        let x = MixedCochain::term(Presentation::Step1, 0, vec![0], ScalarExpr::one());
        // trivial coaction: α⊗1 − α⊗1 = 0
        assert!(bc.b1(&x).unwrap().is_zero());
        let bc = Bicomplex::new(&models::shear().unwrap()).unwrap();
        let x = MixedCochain::term(Presentation::Step1, 0, vec![0], ScalarExpr::one());
        let b = bc.b1(&x).unwrap();
        assert!(!b.is_zero());
        assert_eq!(b.p, 1);
    }

    #[test]
    fn i_on_trivial_coaction_and_wrong_presentation() {
        let bc = Bicomplex::new(&models::diamond().unwrap()).unwrap();
        let x = MixedCochain::term(Presentation::Step1, 0, vec![0], ScalarExpr::one());
        let ix = bc.homogeneous_i(&x).unwrap();
        assert_eq!(ix, MixedCochain::term(Presentation::Step2, 0, vec![0], ScalarExpr::one()));
        assert!(bc.b2(&x).is_err());
        assert!(bc.tau1(&ix).is_err());
        // a non-coinvariant step-2 word is rejected by 𝓘⁻¹
        let xv = ScalarExpr::var(bc.group().g2_coords()[0].with_index(Some(0)));
        let bad = MixedCochain::term(Presentation::Step2, 1, vec![], xv);
        assert!(matches!(bc.homogeneous_i_inv(&bad), Err(Error::Invalid(_))));
    }

    #[test]
    fn antisymmetric_words_are_b_closed_and_j_matches() {
        let m = models::diamond().unwrap();
        let bc = Bicomplex::new(&m).unwrap();
        for p in 1..=2 {
            for (label, x) in bc.test_cochains(p, 2, 4) {
                let ix = bc.homogeneous_i(&x).unwrap();
                let a = bc.antisymmetrize(&ix).unwrap();
                assert!(bc.is_antisymmetric(&a).unwrap());
                assert!(bc.big_b(&a).unwrap().is_zero(), "{label}");
                let t = bc.tau2(&a).unwrap();
                let sign = if p.is_multiple_of(2) { Q::one() } else { -Q::one() };
                let mut ta = a.scale_q(&sign);
                ta.presentation = Presentation::Step2;
                assert_eq!(t, ta);
                // 𝒥 intertwines b with (−1)^q d₁
                let c = CochainMaps::new(&m).unwrap();
                let qd = x.terms().keys().next().map(Vec::len).unwrap_or(0);
                let homog: Vec<_> = a.terms().iter().filter(|(k, _)| k.len() == qd).collect();
                let mut aq = MixedCochain::zero(Presentation::Step3, p);
                for (k, f) in homog {
                    aq.add_term(k.clone(), f.clone());
                }
                let j = bc.j_map(&aq).unwrap();
                let lhs = bc.j_map(&bc.b2(&aq).unwrap()).unwrap();
                let mut rhs = c.d1(&j);
                if qd % 2 == 1 {
                    rhs.form = rhs.form.scale_q(&-Q::one());
                }
                assert_eq!(lhs.form, rhs.form, "{label}");
            }
        }
        // 𝒥(θ₁⊗x∧y)(ψ₀,ψ₁) = ½θ₁(x(ψ₀)y(ψ₁) − y(ψ₀)x(ψ₁))
        let g2 = bc.group().g2_coords().to_vec();
        let x0 = ScalarExpr::var(g2[0].with_index(Some(0)));
        let y1 = ScalarExpr::var(g2[1].with_index(Some(1)));
        let y0 = ScalarExpr::var(g2[1].with_index(Some(0)));
        let x1 = ScalarExpr::var(g2[0].with_index(Some(1)));
        let w = MixedCochain::term(Presentation::Step3, 1, vec![0], &x0 * &y1);
        let j = bc.j_map(&w).unwrap();
        let expect = (&(&x0 * &y1) - &(&y0 * &x1)).scale(&crate::scalar::qf(1, 2));
        assert_eq!(j.coeff(&[0]), expect);
    }

    #[test]
    fn j_of_e_images_reproduces_them() {
        let m = models::diamond().unwrap();
        let bc = Bicomplex::new(&m).unwrap();
        let c = CochainMaps::new(&m).unwrap();
        for idx in [vec![0], vec![1, 2, 3], vec![0, 1, 2, 3]] {
            let om: CeCochain = [(idx.clone(), Q::one())].into_iter().collect();
            for a in c.e_components(&om).unwrap() {
                let word = bc.from_group_cochain(&a);
                assert!(bc.is_antisymmetric(&word).unwrap(), "{idx:?}");
                let back = bc.j_map(&bc.antisymmetrize(&word).unwrap()).unwrap();
                assert_eq!(back.form, a.form, "{idx:?}");
            }
        }
    }

    #[test]
    fn psi_bowtie_round_trip() {
        for (name, bc) in setups() {
            for n in 1..=2 {
                for w in bc.sample_tensor_words(n) {
                    let y = bc.psi_bowtie(&w).unwrap();
                    assert_eq!(bc.psi_bowtie_inv(&y).unwrap(), w, "{name} n={n}");
                }
            }
            // n = 1: Ψ(1⊗F▶◁u) = 1⊗F⊗u
            for w in bc.sample_tensor_words(1) {
                let y = bc.psi_bowtie(&w).unwrap();
                assert_eq!(y.terms(), w.terms());
            }
        }
    }

    #[test]
    fn shuffle_after_alexander_whitney_is_identity() {
        for (name, bc) in setups() {
            for n in 0..=3 {
                for p in 0..=n {
                    for w in bc.sample_biwords(p, n - p) {
                        let back = bc.shuffle(&bc.aw(&w).unwrap()).unwrap();
                        let expect: TotCochain =
                            if w.is_zero() { TotCochain::new() } else { [((p, n - p), w.clone())].into_iter().collect() };
                        assert_eq!(back, expect, "{name} ({p},{})", n - p);
                    }
                }
            }
        }
    }

    #[test]
    fn aw_and_shuffle_are_chain_maps() {
        let bc = Bicomplex::new(&models::diamond().unwrap()).unwrap();
        for n in 0..=2 {
            for p in 0..=n {
                for w in bc.sample_biwords(p, n - p) {
                    let x: TotCochain = [((p, n - p), w.clone())].into_iter().collect();
                    let lhs = bc.aw_total(&bc.b_total(&x).unwrap()).unwrap();
                    let rhs = bc.b_diagonal(&bc.aw(&w).unwrap()).unwrap();
                    assert_eq!(lhs.terms(), rhs.terms(), "AW at ({p},{})", n - p);
                }
            }
            for w in bc.sample_biwords(n, n) {
                let lhs = bc.shuffle(&bc.b_diagonal(&w).unwrap()).unwrap();
                let rhs = bc.b_total(&bc.shuffle(&w).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "Sh at n={n}");
            }
        }
    }

    #[test]
    fn poincare_duality() {
        // three-dimensional: ι(Z₁∧Z₂)(ω₁∧ω₂∧ω₃) = ω₃
        let c = contract_volume(3, &[0, 1]);
        assert_eq!(c, [(vec![2], Q::one())].into_iter().collect());
        let bc = Bicomplex::new(&models::diamond().unwrap()).unwrap();
        // dim 1: ι(T)θ₁ = 1 and η = 1 gives the volume
        assert_eq!(bc.contract_volume(&[0]).unwrap(), [(vec![], Q::one())].into_iter().collect());
        assert_eq!(bc.contract_volume(&[]).unwrap(), [(vec![0], Q::one())].into_iter().collect());
        assert!(bc.contract_volume(&[0, 0]).is_err());
        let x: BTreeMap<Vec<usize>, ScalarExpr> = [(vec![0], ScalarExpr::one())].into_iter().collect();
        assert_eq!(bc.poincare(0, &x).unwrap(), MixedCochain::term(Presentation::Step1, 0, vec![], ScalarExpr::one()));
        for (name, bc) in setups() {
            assert!(bc.volume_is_delta_twisted(), "{name}");
            assert!(bc.volume_coaction_is_sigma_inv(), "{name}");
        }
        // 𝔇 is a bijection ∧^{m−q}𝔤₁ → ∧^q𝔤₁* on the shear fixture (m = 2)
        let bc = Bicomplex::new(&models::shear().unwrap()).unwrap();
        let mut images = alloc::collections::BTreeSet::new();
        for k in 0..=2 {
            for eta in subsets(2, k) {
                let c = bc.contract_volume(&eta).unwrap();
                assert_eq!(c.len(), 1);
                images.insert(c.keys().next().unwrap().clone());
            }
        }
        assert_eq!(images.len(), 4);
    }
}
