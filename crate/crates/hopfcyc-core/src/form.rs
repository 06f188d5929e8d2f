//! Differential forms with symbolic coefficients.
//!
//! A [`PolyForm`] lives on an ordered list of coordinates.  Basis forms are
//! `dx_{i₁}∧…∧dx_{i_k}` with strictly increasing index tuples into that list;
//! antisymmetry is therefore enforced by construction.  Forms need not be
//! homogeneous.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::emit::{self, Format};
use crate::error::{Error, Result};
use crate::scalar::{ScalarExpr, Var, Q};

/// Sign of the permutation sorting `idx`, and the sorted tuple; `None` when
/// an index repeats.
pub fn sort_with_sign(idx: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    // insertion sort counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// A differential form `Σ_I c_I dx_I` over a fixed coordinate list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyForm {
    coords: Arc<[Var]>,
    terms: BTreeMap<Vec<usize>, ScalarExpr>,
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Format::Text))
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Format::Text))
    }
}

impl PolyForm {
    /// Zero form over `coords`.
    pub fn zero(coords: &[Var]) -> Self {
        PolyForm { coords: Arc::from(coords), terms: BTreeMap::new() }
    }

    /// Zero form sharing the coordinate list of `self`.
    pub fn zero_like(&self) -> Self {
        PolyForm { coords: self.coords.clone(), terms: BTreeMap::new() }
    }

    /// 0-form (function).
    pub fn scalar(coords: &[Var], s: ScalarExpr) -> Self {
        let mut f = Self::zero(coords);
        f.add_term(Vec::new(), s);
        f
    }

    /// Basis 1-form `dx_i`.
    pub fn dx(coords: &[Var], i: usize) -> Self {
        let mut f = Self::zero(coords);
        f.add_term(alloc::vec![i], ScalarExpr::one());
        f
    }

    /// Basis 1-form `dv` for a coordinate `v` of the list.
    pub fn d_of(coords: &[Var], v: &Var) -> Result<Self> {
        let i = coords.iter().position(|c| c == v).ok_or_else(|| Error::MissingCoordinate(format!("{v}")))?;
        Ok(Self::dx(coords, i))
    }

    /// Basis form `c·dx_{idx}` for an arbitrary index tuple (sign-normalized).
    pub fn monomial(coords: &[Var], idx: &[usize], c: ScalarExpr) -> Self {
        let mut f = Self::zero(coords);
        if let Some((sign, sorted)) = sort_with_sign(idx) {
            f.add_term(sorted, if sign < 0 { -c } else { c });
        }
        f
    }

    /// Coordinate list.
    pub fn coords(&self) -> &[Var] {
        &self.coords
    }

    /// Shared coordinate list.
    pub fn coords_arc(&self) -> Arc<[Var]> {
        self.coords.clone()
    }

    /// Terms `sorted index tuple ↦ coefficient`.
    pub fn terms(&self) -> &BTreeMap<Vec<usize>, ScalarExpr> {
        &self.terms
    }

    /// Coefficient of the basis form with sorted index tuple `idx`.
    pub fn coeff(&self, idx: &[usize]) -> ScalarExpr {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    /// Adds `c·dx_idx` for a sorted tuple `idx`.
    pub fn add_term(&mut self, idx: Vec<usize>, c: ScalarExpr) {
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// True for the zero form.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree if the form is homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Vec::len);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Homogeneous component of degree `k`.
    pub fn component(&self, k: usize) -> Self {
        PolyForm {
            coords: self.coords.clone(),
            terms: self.terms.iter().filter(|(i, _)| i.len() == k).map(|(i, c)| (i.clone(), c.clone())).collect(),
        }
    }

    fn check_same(&self, other: &Self) {
        assert!(self.coords == other.coords, "forms live on different coordinate lists: {:?} vs {:?}", self.coords, other.coords);
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, s: &ScalarExpr) -> Self {
        let mut out = self.zero_like();
        for (i, c) in &self.terms {
            out.add_term(i.clone(), c * s);
        }
        out
    }

    /// Multiplies every coefficient by a rational.
    pub fn scale_q(&self, s: &Q) -> Self {
        let mut out = self.zero_like();
        for (i, c) in &self.terms {
            out.add_term(i.clone(), c.scale(s));
        }
        out
    }

    /// Wedge product.
    pub fn wedge(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut out = self.zero_like();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let mut idx = i.clone();
                idx.extend_from_slice(j);
                if let Some((sign, sorted)) = sort_with_sign(&idx) {
                    let c = a * b;
                    out.add_term(sorted, if sign < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// Exterior derivative with respect to the form's coordinates (other
    /// variables in the coefficients are treated as constants).
    pub fn d(&self) -> Self {
        let mut out = self.zero_like();
        for (i, c) in &self.terms {
            for (k, v) in self.coords.iter().enumerate() {
                let dc = c.diff(v);
                if dc.is_zero() {
                    continue;
                }
                let mut idx = alloc::vec![k];
                idx.extend_from_slice(i);
                if let Some((sign, sorted)) = sort_with_sign(&idx) {
                    out.add_term(sorted, if sign < 0 { -dc } else { dc });
                }
            }
        }
        out
    }

    /// Pullback along a map into the coordinates of `self`, expressed as
    /// `old coordinate ↦ expression in new_coords` (other variables in the
    /// images are constants).  Every coordinate whose differential occurs
    /// must have an image.
    pub fn pullback(&self, new_coords: &[Var], map: &BTreeMap<Var, ScalarExpr>) -> Result<Self> {
        let mut dimg: BTreeMap<usize, PolyForm> = BTreeMap::new();
        let mut out = PolyForm::zero(new_coords);
        for (i, c) in &self.terms {
            let mut acc = PolyForm::scalar(new_coords, c.subs(map)?);
            for &k in i {
                if let alloc::collections::btree_map::Entry::Vacant(e) = dimg.entry(k) {
                    let v = &self.coords[k];
                    let img = map.get(v).ok_or_else(|| Error::MissingCoordinate(format!("{v}")))?;
                    e.insert(PolyForm::scalar(new_coords, img.clone()).d());
                }
                acc = acc.wedge(&dimg[&k]);
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Substitutes into the coefficients only (differentials untouched).
    pub fn subs_coeffs(&self, map: &BTreeMap<Var, ScalarExpr>) -> Result<Self> {
        let mut out = self.zero_like();
        for (i, c) in &self.terms {
            out.add_term(i.clone(), c.subs(map)?);
        }
        Ok(out)
    }

    /// Applies `f` to each coefficient.
    pub fn map_coeffs(&self, mut f: impl FnMut(&ScalarExpr) -> ScalarExpr) -> Self {
        let mut out = self.zero_like();
        for (i, c) in &self.terms {
            out.add_term(i.clone(), f(c));
        }
        out
    }

    /// Interior product with a vector field (components over the
    /// coordinate list), inserting the vector into the first slot.
    pub fn contract(&self, vector: &[ScalarExpr]) -> Self {
        assert_eq!(vector.len(), self.coords.len(), "vector dimension");
        let mut out = self.zero_like();
        for (i, c) in &self.terms {
            for (pos, &k) in i.iter().enumerate() {
                if vector[k].is_zero() {
                    continue;
                }
                let mut rest = i.clone();
                rest.remove(pos);
                let term = c * &vector[k];
                out.add_term(rest, if pos % 2 == 1 { -term } else { term });
            }
        }
        out
    }

    /// Evaluates the form on an ordered tuple of vectors (components over
    /// the coordinate list): `ω(v₁,…,v_k) = Σ_I c_I det[v_j(dx_{i_l})]`.
    pub fn evaluate(&self, vectors: &[Vec<ScalarExpr>]) -> ScalarExpr {
        let mut acc = self.component(vectors.len());
        for v in vectors {
            acc = acc.contract(v);
        }
        acc.coeff(&[])
    }

    /// Re-expresses the form on a larger coordinate list containing all of
    /// the current coordinates.
    pub fn extend_coords(&self, coords: &[Var]) -> Result<Self> {
        let pos: Vec<usize> = self
            .coords
            .iter()
            .map(|v| coords.iter().position(|c| c == v).ok_or_else(|| Error::MissingCoordinate(format!("{v}"))))
            .collect::<Result<_>>()?;
        let mut out = PolyForm::zero(coords);
        for (i, c) in &self.terms {
            let idx: Vec<usize> = i.iter().map(|&k| pos[k]).collect();
            let (sign, sorted) = sort_with_sign(&idx).expect("distinct");
            out.add_term(sorted, if sign < 0 { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    /// Renders the form.
    pub fn render(&self, f: Format) -> String {
        match f {
            Format::Expr => {
                let parts: Vec<String> =
                    self.terms.iter().map(|(i, c)| format!("{}: {}", self.basis_name(i, Format::Expr), emit::scalar_text(c))).collect();
                format!("{{{}}}", parts.join("; "))
            }
            _ => {
                if self.terms.is_empty() {
                    return "0".into();
                }
                let mut s = String::new();
                for (n, (i, c)) in self.terms.iter().enumerate() {
                    let basis = self.basis_name(i, f);
                    let (neg, mag) = match c.as_rational() {
                        Some(r) if r < Q::from_integer(0.into()) => (true, ScalarExpr::rational(-r)),
                        _ if c.len() == 1 && c.terms().next().is_some_and(|(_, q)| *q < Q::from_integer(0.into())) => (true, -c.clone()),
                        _ => (false, c.clone()),
                    };
                    if n > 0 {
                        s.push_str(if neg { " - " } else { " + " });
                    } else if neg {
                        s.push('-');
                    }
                    let sep = if f == Format::Latex { "\\," } else { "*" };
                    if i.is_empty() {
                        s.push_str(&emit::scalar_grouped(&mag, f));
                    } else if mag.is_one() {
                        s.push_str(&basis);
                    } else {
                        s.push_str(&emit::scalar_grouped(&mag, f));
                        s.push_str(sep);
                        s.push_str(&basis);
                    }
                }
                s
            }
        }
    }

    fn basis_name(&self, i: &[usize], f: Format) -> String {
        if i.is_empty() {
            return "1".into();
        }
        let names: Vec<String> = i
            .iter()
            .map(|&k| match f {
                Format::Latex => format!("d{}", emit::var_latex(&self.coords[k])),
                _ => format!("d{}", self.coords[k]),
            })
            .collect();
        match f {
            Format::Latex => names.join("\\wedge "),
            Format::Text => names.join("∧"),
            Format::Expr => names.join(","),
        }
    }
}

impl Add for &PolyForm {
    type Output = PolyForm;
    fn add(self, rhs: &PolyForm) -> PolyForm {
        self.check_same(rhs);
        let mut out = self.clone();
        for (i, c) in &rhs.terms {
            out.add_term(i.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PolyForm {
    type Output = PolyForm;
    fn sub(self, rhs: &PolyForm) -> PolyForm {
        self + &(-rhs)
    }
}

impl Neg for &PolyForm {
    type Output = PolyForm;
    fn neg(self) -> PolyForm {
        self.map_coeffs(|c| -c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_scalar;

    fn p(s: &str) -> ScalarExpr {
        parse_scalar(s).unwrap()
    }

    fn xyz() -> Vec<Var> {
        ["x", "y", "z"].iter().map(|n| Var::new(n)).collect()
    }

    #[test]
    fn antisymmetry() {
        let c = xyz();
        let dx = PolyForm::dx(&c, 0);
        let dy = PolyForm::dx(&c, 1);
        assert_eq!(dy.wedge(&dx), -&dx.wedge(&dy));
        assert!(dx.wedge(&dx).is_zero());
    }

    #[test]
    fn heisenberg_top_form() {
        let c = xyz();
        let th4 = &(&PolyForm::dx(&c, 0).scale(&p("y/2")) - &PolyForm::dx(&c, 1).scale(&p("x/2"))) + &PolyForm::dx(&c, 2);
        let w = th4.wedge(&PolyForm::dx(&c, 0)).wedge(&PolyForm::dx(&c, 1));
        assert_eq!(w, PolyForm::monomial(&c, &[0, 1, 2], ScalarExpr::one()));
    }

    #[test]
    fn exterior_derivative() {
        let c = xyz();
        let f = PolyForm::scalar(&c, p("z + x*y/2"));
        let expect = &(&PolyForm::dx(&c, 2) + &PolyForm::dx(&c, 0).scale(&p("y/2"))) + &PolyForm::dx(&c, 1).scale(&p("x/2"));
        assert_eq!(f.d(), expect);
        assert_eq!(PolyForm::dx(&c, 1).scale(&p("x")).d(), PolyForm::monomial(&c, &[0, 1], ScalarExpr::one()));
        assert!(f.d().d().is_zero());
    }

    #[test]
    fn contraction_first_slot() {
        let c = xyz();
        let w = PolyForm::monomial(&c, &[0, 1], ScalarExpr::one());
        let ey = alloc::vec![ScalarExpr::zero(), ScalarExpr::one(), ScalarExpr::zero()];
        assert_eq!(w.contract(&ey), -&PolyForm::dx(&c, 0));
    }
}
