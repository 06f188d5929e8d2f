//! The convolution algebra `𝒜 = C_c^∞(G₁) ⋊ G₂` on symbolic test functions,
//! the Hopf action of `ℋ` on it, the trace `τ` and the characteristic map
//! `λ`.
//!
//! Test functions are [`ScalarExpr`]s in the `G₁` coordinates: either
//! polynomial × trigonometric × Gaussian (exactly integrable), or formal
//! function atoms (differentiable, not integrable).  `U*_ψ` is labelled by
//! the coordinate vector of `ψ ∈ G₂`, concrete or symbolic.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::cyclic::CyclicModule;
use crate::emit::{self, Format};
use crate::error::{Error, Result};
use crate::group::{GroupModel, Point};
use crate::hopf::{Bicrossed, HopfElement, Structure, TensorWord};
use crate::lie::Violation;
use crate::linalg::det_scalar;
use crate::models::MatchedPairModel;
use crate::scalar::{q, ScalarExpr, Var, Q};

/// Finite sum `Σ f_ψ U*_ψ`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ConvElement {
    terms: BTreeMap<Point, ScalarExpr>,
}

impl ConvElement {
    /// Zero.
    pub fn zero() -> Self {
        Self::default()
    }

    /// `f U*_ψ`.
    pub fn term(f: ScalarExpr, psi: Point) -> Self {
        let mut a = Self::zero();
        a.add_term(psi, f);
        a
    }

    /// Adds `f U*_ψ`.
    pub fn add_term(&mut self, psi: Point, f: ScalarExpr) {
        if f.is_zero() {
            return;
        }
        let e = self.terms.entry(psi.clone()).or_default();
        *e += &f;
        if e.is_zero() {
            self.terms.remove(&psi);
        }
    }

    /// Adds another element.
    pub fn add_assign(&mut self, other: &Self) {
        for (p, f) in &other.terms {
            self.add_term(p.clone(), f.clone());
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &ScalarExpr) -> Self {
        let mut out = Self::zero();
        for (p, f) in &self.terms {
            out.add_term(p.clone(), f * c);
        }
        out
    }

    /// Terms `ψ ↦ f_ψ`.
    pub fn terms(&self) -> &BTreeMap<Point, ScalarExpr> {
        &self.terms
    }

    /// Whether this is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Renders `f U*_(ψ) + …`.
    pub fn render(&self, f: Format) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(p, c)| {
                let pt: Vec<String> = p.iter().map(|e| emit::scalar(e, f)).collect();
                format!("{}*U*({})", emit::scalar_grouped(c, f), pt.join(", "))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `∫_ℝ v^m cos(v)^a sin(v)^e e^{−c v²} dv` as an exact scalar.
fn gaussian_trig_moment(m: u32, a: u32, e: u8, c: &Q) -> Result<ScalarExpr> {
    // Fourier expansion cos^a sin^e = Σ_j C_j e^{ijv}
    let half = Complex::new(q(1) / q(2), Q::zero());
    let mut fourier: BTreeMap<i64, Complex<Q>> = BTreeMap::new();
    fourier.insert(0, Complex::one());
    let step = |f: &BTreeMap<i64, Complex<Q>>, plus: Complex<Q>, minus: Complex<Q>| {
        let mut out: BTreeMap<i64, Complex<Q>> = BTreeMap::new();
        for (j, cj) in f {
            *out.entry(j + 1).or_insert_with(Complex::zero) += cj * &plus;
            *out.entry(j - 1).or_insert_with(Complex::zero) += cj * &minus;
        }
        out.retain(|_, v| !v.is_zero());
        out
    };
    for _ in 0..a {
        fourier = step(&fourier, half.clone(), half.clone());
    }
    if e == 1 {
        let mi = Complex::new(Q::zero(), -q(1) / q(2));
        let pi = Complex::new(Q::zero(), q(1) / q(2));
        fourier = step(&fourier, mi, pi);
    }
    // ∫ v^m e^{ijv − cv²} = P_m(j) √(π/c) e^{−j²/(4c)},
    // P_{m+1} = (m P_{m−1} + i j P_m) / (2c)
    let two_c = Complex::new(c * q(2), Q::zero());
    let base = ScalarExpr::sqrt_pi() * ScalarExpr::sqrt_rational(&(Q::one() / c))?;
    let mut by_j2: BTreeMap<i64, Complex<Q>> = BTreeMap::new();
    for (j, cj) in &fourier {
        let ij = Complex::new(Q::zero(), Q::from_integer((*j).into()));
        let mut prev = Complex::zero();
        let mut cur = Complex::one();
        for k in 0..m {
            let next = (Complex::new(q(k as i64), Q::zero()) * &prev + &ij * &cur) / &two_c;
            prev = cur;
            cur = next;
        }
        *by_j2.entry(j * j).or_insert_with(Complex::zero) += cj * cur;
    }
    let mut out = ScalarExpr::zero();
    for (j2, v) in by_j2 {
        if !v.im.is_zero() {
            return Err(Error::Invalid("complex Gaussian moment".into()));
        }
        if v.re.is_zero() {
            continue;
        }
        let ex = ScalarExpr::exp_rational(-Q::from_integer(j2.into()) / (c * q(4)));
        out += &(&base * &ex).scale(&v.re);
    }
    Ok(out)
}

/// `∫_ℝ e dv`, exact for polynomial × trig × Gaussian dependence on `v`.
pub fn integrate_line(e: &ScalarExpr, v: &Var) -> Result<ScalarExpr> {
    let mut out = ScalarExpr::zero();
    for (mono, c) in e.terms() {
        let (k, t, g, rest) = mono.take_var(v);
        if rest.has_nonpolynomial(v) {
            return Err(Error::NoClosedForm(format!("formal function of {v} under the integral")));
        }
        let Some(g) = g.filter(|g| g > &Q::zero()) else {
            return Err(Error::NoClosedForm(format!("integrand without Gaussian decay in {v}")));
        };
        let moment = gaussian_trig_moment(k, t.cos, t.sin, &g)?;
        out += &(&ScalarExpr::term(c.clone(), rest) * &moment);
    }
    Ok(out)
}

/// Unevaluated integral `∫_{G₁} integrand · ϖ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integral {
    /// Integrand, a function of the `G₁` coordinates and symbolic parameters.
    pub integrand: ScalarExpr,
    /// Integration variables (the `G₁` coordinates).
    pub vars: Vec<Var>,
}

impl Integral {
    /// Exact value, when the integrand is in the integrable class.
    pub fn evaluate(&self) -> Result<ScalarExpr> {
        let mut acc = self.integrand.clone();
        for v in &self.vars {
            acc = integrate_line(&acc, v)?;
        }
        Ok(acc)
    }

    /// Renders `∫ (integrand) dφ…`.
    pub fn render(&self, f: Format) -> String {
        let body = emit::scalar_grouped(&self.integrand, f);
        match f {
            Format::Latex => {
                let d: Vec<String> = self.vars.iter().map(|v| format!("\\,d{}", emit::var_latex(v))).collect();
                format!("\\int {body}{}", d.concat())
            }
            _ => {
                let d: Vec<String> = self.vars.iter().map(|v| format!("d{v}")).collect();
                format!("int({body}; {})", d.join(","))
            }
        }
    }
}

/// The convolution algebra of a matched pair with its Hopf action.
#[derive(Clone, Debug)]
pub struct Convolution {
    group: GroupModel,
    hopf: Bicrossed,
    fields: Vec<Vec<ScalarExpr>>,
    density: ScalarExpr,
}

impl Convolution {
    /// Builds the algebra; needs a constant density of `ϖ` in the `G₁`
    /// coordinates.
    pub fn new(model: &MatchedPairModel) -> Result<Self> {
        let group = model.group.clone();
        let hopf = model.bicrossed()?;
        let g1 = group.g1_coords().to_vec();
        let laws = group.laws();
        let mut map = BTreeMap::new();
        for v in &g1 {
            map.insert(v.with_index(Some(1)), ScalarExpr::var(v.clone()));
            map.insert(v.with_index(Some(2)), ScalarExpr::zero());
        }
        let mut fields = Vec::new();
        for vi in &g1 {
            let row = laws.mul1.iter().map(|mk| mk.diff(&vi.with_index(Some(2))).subs(&map)).collect::<Result<Vec<_>>>()?;
            fields.push(row);
        }
        let det = det_scalar(&fields);
        let d = det.as_rational().filter(|d| !d.is_zero()).ok_or_else(|| Error::Unsupported(format!("non-constant Haar density {det}")))?;
        Ok(Convolution { group, hopf, fields, density: ScalarExpr::rational(Q::one() / d) })
    }

    /// The Hopf algebra acting.
    pub fn hopf(&self) -> &Bicrossed {
        &self.hopf
    }

    /// The group model.
    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    /// `1 U*_e`.
    pub fn unit(&self) -> ConvElement {
        ConvElement::term(ScalarExpr::one(), self.group.e2())
    }

    /// `fU*_{ψ₁} ∗ gU*_{ψ₂} = f·(g∘ψ̃₁)·U*_{ψ₂ψ₁}`.
    pub fn mul(&self, a: &ConvElement, b: &ConvElement) -> Result<ConvElement> {
        let phi = self.group.g1_generic();
        let mut out = ConvElement::zero();
        for (p1, f) in &a.terms {
            let moved = self.group.left(p1, &phi)?;
            let map: BTreeMap<Var, ScalarExpr> = self.group.g1_coords().iter().cloned().zip(moved).collect();
            for (p2, g) in &b.terms {
                let gm = g.subs(&map)?;
                out.add_term(self.group.mul2(p2, p1)?, f * &gm);
            }
        }
        Ok(out)
    }

    /// Product of several elements, left to right.
    pub fn mul_all(&self, items: &[ConvElement]) -> Result<ConvElement> {
        let mut acc = self.unit();
        for a in items {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Left-invariant vector field `Z̃_i` on a test function.
    pub fn z_tilde(&self, i: usize, f: &ScalarExpr) -> ScalarExpr {
        let mut out = ScalarExpr::zero();
        for (k, v) in self.group.g1_coords().iter().enumerate() {
            let a = &self.fields[i][k];
            if !a.is_zero() {
                out += &(a * &f.diff(v));
            }
        }
        out
    }

    fn z_tilde_pbw(&self, u: &[u32], f: &ScalarExpr) -> ScalarExpr {
        let mut acc = f.clone();
        for &i in self.hopf.word_of(u).iter().rev() {
            acc = self.z_tilde(i, &acc);
        }
        acc
    }

    /// `(F ▶◁ Z_I)(fU*_ψ)(φ) = F(ψ ◁ φ) Z̃_I(f)(φ) U*_ψ`.
    pub fn act(&self, h: &HopfElement, a: &ConvElement) -> Result<ConvElement> {
        let phi = self.group.g1_generic();
        let mut out = ConvElement::zero();
        for (psi, f) in &a.terms {
            let moved = self.group.right(psi, &phi)?;
            let map: BTreeMap<Var, ScalarExpr> = self.group.g2_coords().iter().cloned().zip(moved).collect();
            for (u, big_f) in h.terms() {
                let zf = self.z_tilde_pbw(u, f);
                if zf.is_zero() {
                    continue;
                }
                out.add_term(psi.clone(), &big_f.subs(&map)? * &zf);
            }
        }
        Ok(out)
    }

    /// Decides `ψ = e` for a possibly symbolic point.
    pub fn is_identity(&self, psi: &[ScalarExpr]) -> Result<bool> {
        if psi.iter().all(ScalarExpr::is_zero) {
            return Ok(true);
        }
        if psi.iter().any(|c| c.as_rational().is_some_and(|r| !r.is_zero())) {
            return Ok(false);
        }
        Err(Error::Indeterminate(format!("cannot decide whether {psi:?} is the identity")))
    }

    /// The `U*_e` component of `a` as an unevaluated integral against `ϖ`.
    pub fn trace_integral(&self, a: &ConvElement) -> Result<Integral> {
        let mut integrand = ScalarExpr::zero();
        for (psi, f) in &a.terms {
            if self.is_identity(psi)? {
                integrand += &(f * &self.density);
            }
        }
        Ok(Integral { integrand, vars: self.group.g1_coords().to_vec() })
    }

    /// `τ(fU*_ψ) = ∫_{G₁} f ϖ` if `ψ = e`, else 0.
    pub fn trace(&self, a: &ConvElement) -> Result<ScalarExpr> {
        self.trace_integral(a)?.evaluate()
    }

    /// The product `a⁰ · h¹(a¹) ⋯ hⁿ(aⁿ)` summed over the pure tensors of
    /// `w`, before taking the trace.
    pub fn lambda_product(&self, w: &TensorWord, args: &[ConvElement]) -> Result<ConvElement> {
        if args.len() != w.n() + 1 {
            return Err(Error::DimensionMismatch(format!("{} arguments for a word of length {}", args.len(), w.n())));
        }
        let mut out = ConvElement::zero();
        for (c, legs) in w.pure_tensors() {
            let mut acc = args[0].clone();
            for (h, a) in legs.iter().zip(&args[1..]) {
                acc = self.mul(&acc, &self.act(h, a)?)?;
            }
            out.add_assign(&acc.scale(&c));
        }
        Ok(out)
    }

    /// `λ(h¹⊗⋯⊗hⁿ)(a⁰,…,aⁿ) = τ(a⁰ h¹(a¹) ⋯ hⁿ(aⁿ))`.
    pub fn lambda(&self, w: &TensorWord, args: &[ConvElement]) -> Result<ScalarExpr> {
        self.trace(&self.lambda_product(w, args)?)
    }

    /// `λ` as an unevaluated integral (for formal test functions).
    pub fn lambda_integral(&self, w: &TensorWord, args: &[ConvElement]) -> Result<Integral> {
        self.trace_integral(&self.lambda_product(w, args)?)
    }

    /// Checks `τ(ab) = τ(b σ(a))`, `τ(h(a)) = δ(h)τ(a)` and
    /// `τ(h(a)b) = τ(a S_δ(h)(b))` on every case.
    pub fn verify_trace_identities(&self, hs: &[(String, HopfElement)], pairs: &[(ConvElement, ConvElement)]) -> Result<Vec<Violation>> {
        let mut out = Vec::new();
        let sigma = self.hopf.rep(self.hopf.sigma().clone());
        for (k, (a, b)) in pairs.iter().enumerate() {
            let l = self.trace(&self.mul(a, b)?)?;
            let r = self.trace(&self.mul(b, &self.act(&sigma, a)?)?)?;
            if l != r {
                out.push(Violation { check: "trace.sigma_trace".into(), indices: vec![k], detail: format!("{l} vs {r}") });
            }
            for (name, h) in hs {
                let l = self.trace(&self.act(h, a)?)?;
                let r = &self.hopf.delta(h) * &self.trace(a)?;
                if l != r {
                    out.push(Violation { check: "trace.delta_invariance".into(), indices: vec![k], detail: format!("{name}: {l} vs {r}") });
                }
                let sh = self.hopf.s_delta(Structure::Cop, h);
                let l = self.trace(&self.mul(&self.act(h, a)?, b)?)?;
                let r = self.trace(&self.mul(a, &self.act(&sh, b)?)?)?;
                if l != r {
                    out.push(Violation {
                        check: "trace.integration_by_parts".into(),
                        indices: vec![k],
                        detail: format!("{name}: {l} vs {r}"),
                    });
                }
            }
        }
        Ok(out)
    }

    /// Module-algebra law `h(ab) = h₍₁₎(a) h₍₂₎(b)` with the coproduct of
    /// `ℋ`, on every generator and pair.
    pub fn verify_module_algebra(&self, hs: &[(String, HopfElement)], pairs: &[(ConvElement, ConvElement)]) -> Result<Vec<Violation>> {
        let mut out = Vec::new();
        for (name, h) in hs {
            let cop = self.hopf.coproduct(Structure::Cop, h);
            let split = cop.pure_tensors();
            for (k, (a, b)) in pairs.iter().enumerate() {
                let l = self.act(h, &self.mul(a, b)?)?;
                let mut r = ConvElement::zero();
                for (c, legs) in &split {
                    r.add_assign(&self.mul(&self.act(&legs[0], a)?, &self.act(&legs[1], b)?)?.scale(c));
                }
                if l != r {
                    out.push(Violation { check: "action.module_algebra".into(), indices: vec![k], detail: name.clone() });
                }
            }
        }
        Ok(out)
    }

    /// Hermite-class probe `p(φ)·e^{−|φ|²}`.
    pub fn hermite(&self, p: &ScalarExpr) -> ScalarExpr {
        self.group.g1_coords().iter().fold(p.clone(), |acc, v| &acc * &ScalarExpr::gauss(v.clone(), Q::one()))
    }
}

/// Deterministic probe data for the convolution algebra: Hermite-class
/// test functions at concrete points of `G₂`.
impl Convolution {
    /// Polynomial prefactors used by the Hermite probes.
    pub fn probe_polynomials(&self) -> Vec<ScalarExpr> {
        let v: Vec<ScalarExpr> = self.group.g1_coords().iter().cloned().map(ScalarExpr::var).collect();
        let Some(t) = v.first().cloned() else {
            return vec![ScalarExpr::one()];
        };
        let s = v.iter().cloned().fold(ScalarExpr::zero(), |a, b| &a + &b);
        vec![
            ScalarExpr::one(),
            t.clone(),
            t.pow(2),
            &t + &ScalarExpr::one(),
            &t.pow(3) - &t.scale(&q(2)),
            &(&s.pow(2) - &t) + &ScalarExpr::int(2),
        ]
    }

    /// Concrete points of `G₂` used by the probes (the identity first).
    pub fn probe_points(&self) -> Vec<Point> {
        let d = self.group.g2_coords().len();
        let pattern: [&[i64]; 4] = [&[0], &[1, 0, -1], &[0, 2, 1], &[-1, 1, 2]];
        pattern.iter().map(|p| (0..d).map(|k| ScalarExpr::int(p[k % p.len()])).collect()).collect()
    }

    /// Pairs `(a, b)` of Hermite elements for the trace identities: each
    /// polynomial pair at every probe point `ψ` with `b` supported at `ψ⁻¹`,
    /// plus pairs whose product misses the identity.
    pub fn trace_cases(&self) -> Result<Vec<(ConvElement, ConvElement)>> {
        let polys = self.probe_polynomials();
        let points = self.probe_points();
        let mut out = Vec::new();
        for (i, p) in polys.iter().enumerate() {
            for shift in 0..3 {
                let r = &polys[(i + shift + 1) % polys.len()];
                for psi in &points {
                    let a = ConvElement::term(self.hermite(p), psi.clone());
                    let b = ConvElement::term(self.hermite(r), self.group.inv2(psi)?);
                    out.push((a, b));
                }
            }
            let a = ConvElement::term(self.hermite(p), points[1].clone());
            out.push((a.clone(), ConvElement::term(self.hermite(p), points[2].clone())));
        }
        Ok(out)
    }

    /// Tuples `(a⁰,…,aⁿ)` of Hermite elements with `ψₙ⋯ψ₁ψ₀ = e`, so that
    /// `λ` does not vanish for support reasons.
    pub fn lambda_probes(&self, n: usize, count: usize) -> Result<Vec<Vec<ConvElement>>> {
        let polys = self.probe_polynomials();
        let points = self.probe_points();
        let mut out = Vec::new();
        for k in 0..count {
            let mut pts = Vec::with_capacity(n);
            let mut prod = self.group.e2();
            for i in 1..=n {
                let p = points[(k + 2 * i) % points.len()].clone();
                prod = self.group.mul2(&p, &prod)?;
                pts.push(p);
            }
            let mut args = vec![ConvElement::term(self.hermite(&polys[k % polys.len()]), self.group.inv2(&prod)?)];
            for (i, p) in pts.into_iter().enumerate() {
                args.push(ConvElement::term(self.hermite(&polys[(k + 3 * i + 1) % polys.len()]), p));
            }
            out.push(args);
        }
        Ok(out)
    }

    /// Checks that `λ` intertwines the cocyclic structure of `ℋ^♮` with the
    /// cyclic structure of multilinear functionals on `𝒜`:
    /// `λ(δ_i w) = λ(w)(…, a^i a^{i+1}, …)`, `λ(δ_n w) = λ(w)(aⁿa⁰, …)`,
    /// `λ(σ_i w) = λ(w)(…, a^i, 1, …)` and `λ(τ_n w) = λ(w)(aⁿ, a⁰, …)`.
    pub fn verify_lambda_map(&self, cm: &CyclicModule<'_>, words: &[(String, TensorWord)]) -> Result<Vec<Violation>> {
        let mut out = Vec::new();
        let mut report = |check: &str, name: &str, detail: String| {
            out.push(Violation { check: check.into(), indices: Vec::new(), detail: format!("{name}: {detail}") });
        };
        for (name, w) in words {
            let m = w.n();
            // faces into C^{m+1}
            for args in self.lambda_probes(m + 1, 2)? {
                for i in 0..=m + 1 {
                    let l = self.lambda(&cm.face(i, w)?, &args)?;
                    let mut red = Vec::with_capacity(m + 1);
                    if i <= m {
                        red.extend_from_slice(&args[..i]);
                        red.push(self.mul(&args[i], &args[i + 1])?);
                        red.extend_from_slice(&args[i + 2..]);
                    } else {
                        red.push(self.mul(&args[m + 1], &args[0])?);
                        red.extend_from_slice(&args[1..=m]);
                    }
                    let r = self.lambda(w, &red)?;
                    if l != r {
                        report("lambda.face", name, format!("i={i}: {l} vs {r}"));
                    }
                }
            }
            if m >= 1 {
                for args in self.lambda_probes(m - 1, 2)? {
                    for i in 0..m {
                        let l = self.lambda(&cm.degeneracy(i, w)?, &args)?;
                        let mut ext = args.clone();
                        ext.insert(i + 1, self.unit());
                        let r = self.lambda(w, &ext)?;
                        if l != r {
                            report("lambda.degeneracy", name, format!("i={i}: {l} vs {r}"));
                        }
                    }
                }
            }
            for args in self.lambda_probes(m, 2)? {
                let l = self.lambda(&cm.cyclic(w), &args)?;
                let mut rot = vec![args[m].clone()];
                rot.extend_from_slice(&args[..m]);
                let r = self.lambda(w, &rot)?;
                if l != r {
                    report("lambda.cyclic", name, format!("{l} vs {r}"));
                }
            }
        }
        Ok(out)
    }

    /// Rank of the functionals `λ(h)` (`h` in `hs`, length-1 words) on the
    /// probe pairs, as a rational matrix over the monomials of the values.
    /// Full rank means the family is separated by the probes.
    pub fn lambda_rank(&self, hs: &[HopfElement], probes: &[Vec<ConvElement>]) -> Result<usize> {
        let mut columns: BTreeMap<(usize, crate::scalar::Monomial), usize> = BTreeMap::new();
        let mut rows = Vec::new();
        for h in hs {
            let w = TensorWord::from_element(h);
            let mut row = BTreeMap::new();
            for (k, args) in probes.iter().enumerate() {
                for (mono, c) in self.lambda(&w, args)?.terms() {
                    let next = columns.len();
                    let col = *columns.entry((k, mono.clone())).or_insert(next);
                    row.insert(col, c.clone());
                }
            }
            rows.push(row);
        }
        let cols = columns.len();
        let m: Vec<Vec<Q>> = rows.into_iter().map(|r| (0..cols).map(|c| r.get(&c).cloned().unwrap_or_else(Q::zero)).collect()).collect();
        Ok(crate::linalg::rank(&m, cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::parse::parse_scalar;

    fn p(s: &str) -> ScalarExpr {
        parse_scalar(s).unwrap()
    }

    #[test]
    fn gaussian_moments() {
        let th = Var::new("θ");
        let got = integrate_line(&p("θ^2*exp(-θ^2)"), &th).unwrap();
        assert_eq!(got, ScalarExpr::sqrt_pi().scale(&(q(1) / q(2))));
        assert!(integrate_line(&p("θ*exp(-θ^2)"), &th).unwrap().is_zero());
        // ∫ −2θ e^{−2θ²} = 0, ∫ e^{−2θ²} = √π/√2
        assert!(integrate_line(&p("-2*θ*exp(-2*θ^2)"), &th).unwrap().is_zero());
        let got = integrate_line(&p("exp(-2*θ^2)"), &th).unwrap();
        assert_eq!(got, &ScalarExpr::sqrt_pi() * &ScalarExpr::sqrt_rational(&(q(1) / q(2))).unwrap());
        // ∫ cos θ e^{−θ²} = √π e^{−1/4}
        let got = integrate_line(&p("cos(θ)*exp(-θ^2)"), &th).unwrap();
        assert_eq!(got, &ScalarExpr::sqrt_pi() * &ScalarExpr::exp_rational(-q(1) / q(4)));
    }

    #[test]
    fn diamond_action_on_functions() {
        let m = models::diamond().unwrap();
        let c = Convolution::new(&m).unwrap();
        let psi = vec![p("x.0"), p("y.0"), p("z.0")];
        let f = p("f(θ)");
        let a = ConvElement::term(f.clone(), psi.clone());
        let t = c.act(&c.hopf().gen(0), &a).unwrap();
        assert_eq!(t, ConvElement::term(f.diff(&Var::new("θ")), psi.clone()));
        let x = c.act(&c.hopf().rep(p("x")), &a).unwrap();
        assert_eq!(x, ConvElement::term(p("(cos(θ)*x.0 + sin(θ)*y.0)*f(θ)"), psi));
    }

    #[test]
    fn trace_support_and_lambda() {
        let m = models::diamond().unwrap();
        let c = Convolution::new(&m).unwrap();
        let e = c.group().e2();
        let g = p("exp(-θ^2)");
        assert_eq!(c.trace(&ConvElement::term(p("θ^2*exp(-θ^2)"), e.clone())).unwrap(), ScalarExpr::sqrt_pi().scale(&(q(1) / q(2))));
        assert!(c.trace(&ConvElement::term(g.clone(), vec![p("1"), p("0"), p("0")])).unwrap().is_zero());
        let a = ConvElement::term(g, e);
        let w = TensorWord::from_element(&c.hopf().gen(0));
        assert!(c.lambda(&w, &[a.clone(), a]).unwrap().is_zero());
    }

    #[test]
    fn diamond_trace_identities_and_module_algebra() {
        let m = models::diamond().unwrap();
        let c = Convolution::new(&m).unwrap();
        let cases = c.trace_cases().unwrap();
        assert!(cases.len() >= 50);
        let hs = c.hopf().generators(1);
        let v = c.verify_trace_identities(&hs, &cases).unwrap();
        assert!(v.is_empty(), "{:?}", &v[..v.len().min(3)]);
        let v = c.verify_module_algebra(&hs, &cases[..8]).unwrap();
        assert!(v.is_empty(), "{v:?}");
    }

    #[test]
    fn lambda_is_a_map_of_cyclic_modules() {
        let m = models::diamond().unwrap();
        let c = Convolution::new(&m).unwrap();
        let cm = CyclicModule::new(c.hopf(), Structure::Cop);
        let mut words = Vec::new();
        for n in 0..=1 {
            words.extend(cm.test_words(n, 4));
        }
        let v = c.verify_lambda_map(&cm, &words).unwrap();
        assert!(v.is_empty(), "{:?}", &v[..v.len().min(3)]);
    }

    #[test]
    fn lambda_separates_low_degree_elements() {
        let m = models::diamond().unwrap();
        let c = Convolution::new(&m).unwrap();
        let hs: Vec<HopfElement> = c.hopf().test_elements(1, 1).into_iter().map(|(_, h)| h).collect();
        let probes = c.lambda_probes(1, 12).unwrap();
        assert_eq!(c.lambda_rank(&hs, &probes).unwrap(), hs.len());
    }
}
