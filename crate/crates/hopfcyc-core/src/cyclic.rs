//! The Hopf cyclic module `ℋ^♮` with coefficients in the modular pair
//! `(δ, σ)`: faces, degeneracies, the cyclic operator, and the Hochschild
//! and Connes operators `b`, `B`.
//!
//! `C^n = ℋ^{⊗n}` is represented by [`TensorWord`]s of length `n`; `C^0` is
//! the ground ring.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hopf::{Bicrossed, HopfElement, Structure, TensorWord};
use crate::lie::Violation;
use crate::scalar::{q, ScalarExpr};

/// The cyclic module of a bicrossed product with its canonical modular
/// pair, for a chosen Hopf structure.
#[derive(Clone, Copy, Debug)]
pub struct CyclicModule<'a> {
    hopf: &'a Bicrossed,
    structure: Structure,
}

impl<'a> CyclicModule<'a> {
    /// Cyclic module of `hopf` with the structure `s`.
    pub fn new(hopf: &'a Bicrossed, s: Structure) -> Self {
        CyclicModule { hopf, structure: s }
    }

    /// The underlying Hopf algebra.
    pub fn hopf(&self) -> &'a Bicrossed {
        self.hopf
    }

    fn sigma_word(&self) -> TensorWord {
        TensorWord::from_element(&self.hopf.rep(self.hopf.sigma().clone()))
    }

    /// Face `δ_i : C^{n−1} → C^n` (`n = w.n() + 1`, `0 ≤ i ≤ n`): inserts
    /// `1` in front (`i = 0`), splits leg `i` by the coproduct, or appends
    /// `σ` (`i = n`).
    pub fn face(&self, i: usize, w: &TensorWord) -> Result<TensorWord> {
        let n = w.n() + 1;
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        Ok(if i == 0 {
            TensorWord::from_element(&self.hopf.one()).tensor(w)
        } else if i == n {
            w.tensor(&self.sigma_word())
        } else {
            w.apply_leg(i - 1, &mut |h| self.hopf.coproduct(self.structure, h))
        })
    }

    /// Degeneracy `σ_i : C^{n+1} → C^n` (`0 ≤ i ≤ n`): applies the counit to
    /// leg `i + 1`.
    pub fn degeneracy(&self, i: usize, w: &TensorWord) -> Result<TensorWord> {
        if w.n() == 0 || i >= w.n() {
            return Err(Error::IndexOutOfRange { index: i, max: w.n().saturating_sub(1) });
        }
        Ok(w.apply_leg(i, &mut |h| TensorWord::scalar(self.hopf.counit(h))))
    }

    /// Cyclic operator
    /// `τ_n(h¹⊗⋯⊗hⁿ) = Δ^{n−1}S_δ(h¹) · (h²⊗⋯⊗hⁿ⊗σ)`; the identity on `C^0`.
    pub fn cyclic(&self, w: &TensorWord) -> TensorWord {
        let n = w.n();
        if n == 0 {
            return w.clone();
        }
        let mut out = TensorWord::zero(n);
        for (c, legs) in w.pure_tensors() {
            let head = self.hopf.s_delta(self.structure, &legs[0]);
            let split = self.hopf.iterated_coproduct(self.structure, &head, n - 1);
            let tail = TensorWord::from_legs(&legs[1..]).tensor(&self.sigma_word());
            out.add_assign(&self.hopf.word_product(&split, &tail).scale(&c));
        }
        out
    }

    /// `τ_n^k`.
    pub fn cyclic_power(&self, w: &TensorWord, k: usize) -> TensorWord {
        (0..k).fold(w.clone(), |acc, _| self.cyclic(&acc))
    }

    /// Hochschild coboundary `b = Σ_{i=0}^{n+1} (−1)^i δ_i : C^n → C^{n+1}`.
    pub fn b(&self, w: &TensorWord) -> TensorWord {
        let mut out = TensorWord::zero(w.n() + 1);
        for i in 0..=w.n() + 1 {
            let sign = if i.is_multiple_of(2) { q(1) } else { q(-1) };
            out.add_scaled(&self.face(i, w).expect("face index in range"), &sign);
        }
        out
    }

    /// Connes' operator
    /// `B = (Σ_{i=0}^{n−1} (−1)^{(n−1)i} τ_{n−1}^i) σ_{n−1} τ_n (1 − (−1)^n τ_n)`
    /// from `C^n` to `C^{n−1}`; `None` on `C^0`.
    pub fn big_b(&self, w: &TensorWord) -> Option<TensorWord> {
        let n = w.n();
        if n == 0 {
            return None;
        }
        let mut x = w.clone();
        let sign_n = if n.is_multiple_of(2) { q(-1) } else { q(1) };
        x.add_scaled(&self.cyclic(w), &sign_n);
        let y = self.degeneracy(n - 1, &self.cyclic(&x)).expect("last degeneracy");
        let mut out = TensorWord::zero(n - 1);
        let mut acc = y;
        for i in 0..n {
            let s = if ((n - 1) * i).is_multiple_of(2) { q(1) } else { q(-1) };
            out.add_scaled(&acc, &s);
            acc = self.cyclic(&acc);
        }
        Some(out)
    }

    /// Deterministic family of test words of length `n` built from the
    /// unit, the coordinate functions and the generators `1 ▶◁ Z_i`, plus
    /// one mixed sum; at most `count` words.
    pub fn test_words(&self, n: usize, count: usize) -> Vec<(String, TensorWord)> {
        let mut legs: Vec<(String, HopfElement)> = Vec::new();
        legs.push(("1".into(), self.hopf.one()));
        legs.extend(self.hopf.generators(1));
        let k = legs.len();
        let mut out = Vec::new();
        if n == 0 {
            out.push(("1".into(), TensorWord::scalar(ScalarExpr::one())));
            return out;
        }
        let total = k.pow(n as u32);
        let stride = (total / count.max(1)).max(1);
        let mut idx = 0usize;
        while idx < total && out.len() < count.saturating_sub(1).max(1) {
            let mut rest = idx;
            let mut chosen = Vec::with_capacity(n);
            let mut names = Vec::with_capacity(n);
            for _ in 0..n {
                let (name, h) = &legs[rest % k];
                chosen.push(h.clone());
                names.push(name.clone());
                rest /= k;
            }
            out.push((names.join(" ⊗ "), TensorWord::from_legs(&chosen)));
            idx += stride + 1;
        }
        // a genuinely mixed element: (x▶◁Z) ⊗ (Z + 1) ⊗ ⋯
        let mixed_leg = {
            let mut h = self.hopf.product(&legs[k - 1].1, &legs[1].1);
            h.add_assign(&legs[0].1);
            h
        };
        let mixed: Vec<HopfElement> = (0..n).map(|_| mixed_leg.clone()).collect();
        out.push(("mixed".into(), TensorWord::from_legs(&mixed)));
        out
    }

    /// The relations of a cocyclic module on the given words (grouped by
    /// length), plus `b² = 0`, `B² = 0` and `bB + Bb = 0`.
    pub fn verify_lambda_identities(&self, words: &[(String, TensorWord)]) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut report = |check: &str, name: &str, detail: String| {
            out.push(Violation { check: check.into(), indices: Vec::new(), detail: format!("{name}: {detail}") });
        };
        for (name, w) in words {
            let m = w.n();
            let face = |i: usize, x: &TensorWord| self.face(i, x).expect("face");
            let degen = |i: usize, x: &TensorWord| self.degeneracy(i, x).expect("degeneracy");
            // δ_j δ_i = δ_i δ_{j−1}, i < j
            for j in 1..=m + 2 {
                for i in 0..j {
                    if i > m + 1 || j - 1 > m + 1 {
                        continue;
                    }
                    if face(j, &face(i, w)) != face(i, &face(j - 1, w)) {
                        report("cyclic.face_face", name, format!("i={i} j={j}"));
                    }
                }
            }
            // σ_j σ_i = σ_i σ_{j+1}, i ≤ j
            if m >= 2 {
                for j in 0..=m - 2 {
                    for i in 0..=j {
                        if degen(j, &degen(i, w)) != degen(i, &degen(j + 1, w)) {
                            report("cyclic.degeneracy_degeneracy", name, format!("i={i} j={j}"));
                        }
                    }
                }
            }
            // σ_j δ_i
            for j in 0..=m {
                for i in 0..=m + 1 {
                    let l = degen(j, &face(i, w));
                    let r = if i < j {
                        face(i, &degen(j - 1, w))
                    } else if i == j || i == j + 1 {
                        w.clone()
                    } else {
                        face(i - 1, &degen(j, w))
                    };
                    if l != r {
                        report("cyclic.degeneracy_face", name, format!("i={i} j={j}"));
                    }
                }
            }
            // τ_{m+1} δ_i = δ_{i−1} τ_m, τ_{m+1} δ_0 = δ_{m+1}
            for i in 0..=m + 1 {
                let l = self.cyclic(&face(i, w));
                let r = if i == 0 { face(m + 1, w) } else { face(i - 1, &self.cyclic(w)) };
                if l != r {
                    report("cyclic.cyclic_face", name, format!("i={i}"));
                }
            }
            // τ_{m−1} σ_i = σ_{i−1} τ_m, τ_{m−1} σ_0 = σ_{m−1} τ_m²
            for i in 0..m {
                let l = self.cyclic(&degen(i, w));
                let r = if i == 0 { degen(m - 1, &self.cyclic_power(w, 2)) } else { degen(i - 1, &self.cyclic(w)) };
                if l != r {
                    report("cyclic.cyclic_degeneracy", name, format!("i={i}"));
                }
            }
            if self.cyclic_power(w, m + 1) != *w {
                report("cyclic.cyclic_order", name, format!("τ_{m}^{} ≠ id", m + 1));
            }
            let bw = self.b(w);
            if !self.b(&bw).is_zero() {
                report("cyclic.b_squared", name, "b² ≠ 0".into());
            }
            if let Some(bb) = self.big_b(w) {
                if self.big_b(&bb).is_some_and(|x| !x.is_zero()) {
                    report("cyclic.B_squared", name, "B² ≠ 0".into());
                }
            }
            let mut anti = self.big_b(&bw).expect("b raises degree");
            if let Some(bb) = self.big_b(w) {
                anti.add_assign(&self.b(&bb));
            }
            if !anti.is_zero() {
                report("cyclic.bB_anticommute", name, "bB + Bb ≠ 0".into());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn diamond_operators() {
        let m = models::diamond().unwrap();
        let h = m.bicrossed().unwrap();
        let c = CyclicModule::new(&h, Structure::Cop);
        let t = TensorWord::from_element(&h.gen(0));
        assert_eq!(c.cyclic(&t), t.scale(&ScalarExpr::from(-1)));
        let one = TensorWord::scalar(ScalarExpr::one());
        assert!(c.b(&one).is_zero());
        assert!(c.big_b(&one).is_none());
        assert_eq!(c.face(0, &t).unwrap(), TensorWord::from_legs(&[h.one(), h.gen(0)]));
        assert_eq!(c.degeneracy(0, &TensorWord::from_legs(&[h.one(), h.gen(0)])).unwrap(), t);
        assert!(matches!(c.face(3, &t), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn lambda_identities_low_degree() {
        for m in [models::diamond().unwrap(), models::shear().unwrap()] {
            let h = m.bicrossed().unwrap();
            let c = CyclicModule::new(&h, Structure::Cop);
            let mut words = Vec::new();
            for n in 0..=2 {
                words.extend(c.test_words(n, 6));
            }
            let v = c.verify_lambda_identities(&words);
            assert!(v.is_empty(), "{}: {:?}", m.name, &v[..v.len().min(5)]);
        }
    }
}
