//! Affine simplices and exact integration of polynomial forms over them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::form::PolyForm;
use crate::scalar::{factorial, ScalarExpr, Var};

/// Name of the barycentric parameters `t₁,…,t_p` (not a valid user name).
pub const PARAM: &str = "@t";

/// A `p`-simplex given by `p+1` vertices in an ambient coordinate system;
/// vertex coordinates may be symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSimplex {
    vertices: Vec<Vec<ScalarExpr>>,
}

impl AffineSimplex {
    /// Builds a simplex; all vertices must have the same dimension.
    pub fn new(vertices: Vec<Vec<ScalarExpr>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::DimensionMismatch("a simplex needs at least one vertex".into()));
        }
        let n = vertices[0].len();
        if vertices.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch("vertices of different dimensions".into()));
        }
        Ok(AffineSimplex { vertices })
    }

    /// Dimension `p` (number of vertices minus one).
    pub fn p(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Vertex list.
    pub fn vertices(&self) -> &[Vec<ScalarExpr>] {
        &self.vertices
    }

    /// The barycentric parameters `t₁,…,t_p`.
    pub fn params(&self) -> Vec<Var> {
        (1..=self.p()).map(|i| Var::indexed(PARAM, i as u32)).collect()
    }

    /// The affine parametrization `x = v₀ + Σ tᵢ(vᵢ − v₀)` as a substitution
    /// for the ambient coordinates.
    pub fn parametrization(&self, coords: &[Var]) -> Result<BTreeMap<Var, ScalarExpr>> {
        if coords.len() != self.vertices[0].len() {
            return Err(Error::DimensionMismatch("simplex and form dimensions differ".into()));
        }
        let t = self.params();
        let mut map = BTreeMap::new();
        for (k, c) in coords.iter().enumerate() {
            let v0 = &self.vertices[0][k];
            let mut img = v0.clone();
            for (i, ti) in t.iter().enumerate() {
                let diff = &self.vertices[i + 1][k] - v0;
                img += &diff * &ScalarExpr::var(ti.clone());
            }
            map.insert(c.clone(), img);
        }
        Ok(map)
    }
}

/// `∫_{Δ^p} t₁^{a₁}⋯t_p^{a_p} dt = ∏aᵢ! / (p + Σaᵢ)!` (Dirichlet).
pub fn dirichlet(exponents: &[u32]) -> crate::scalar::Q {
    let p = exponents.len() as u64;
    let total: u64 = exponents.iter().map(|&a| a as u64).sum();
    let mut num = crate::scalar::Q::from_integer(1.into());
    for &a in exponents {
        num *= factorial(a as u64);
    }
    num / factorial(p + total)
}

/// Exact integral of a degree-`p` form over an affine `p`-simplex.
///
/// The form is pulled back along the affine parametrization to
/// `q(t) dt₁∧…∧dt_p` and integrated monomial by monomial with the
/// Dirichlet formula.  The result is a scalar in the vertex coordinates.
pub fn integrate_over_simplex(form: &PolyForm, s: &AffineSimplex) -> Result<ScalarExpr> {
    let p = s.p();
    if form.is_zero() {
        return Ok(ScalarExpr::zero());
    }
    match form.degree() {
        Some(d) if d == p => {}
        Some(d) => return Err(Error::DegreeMismatch { expected: p, found: d }),
        None => return Err(Error::DegreeMismatch { expected: p, found: form.terms().keys().map(Vec::len).max().unwrap_or(0) }),
    }
    let t = s.params();
    let map = s.parametrization(form.coords())?;
    let pulled = form.pullback(&t, &map)?;
    let top: Vec<usize> = (0..p).collect();
    let q = pulled.coeff(&top);
    let is_t = |v: &Var| v.name() == PARAM;
    if q.has_nonpolynomial_in(&is_t) {
        return Err(Error::LeavesClass("integrand is not polynomial along the simplex".into()));
    }
    let mut out = ScalarExpr::zero();
    for (mono, rest) in q.collect_by(&is_t) {
        let exps: Vec<u32> = t.iter().map(|ti| mono.vars().get(ti).copied().unwrap_or(0)).collect();
        out += rest.scale(&dirichlet(&exps));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_scalar;
    use crate::scalar::qf;
    use alloc::vec;

    #[test]
    fn dirichlet_values() {
        assert_eq!(dirichlet(&[1, 1]), qf(1, 24));
        assert_eq!(dirichlet(&[0, 0, 0]), qf(1, 6));
        assert_eq!(dirichlet(&[]), qf(1, 1));
    }

    #[test]
    fn point_evaluation() {
        let c = vec![Var::new("x")];
        let s = AffineSimplex::new(vec![vec![parse_scalar("x.0").unwrap()]]).unwrap();
        let f = PolyForm::scalar(&c, parse_scalar("x^2 + 3").unwrap());
        assert_eq!(integrate_over_simplex(&f, &s).unwrap(), parse_scalar("x.0^2 + 3").unwrap());
    }

    #[test]
    fn degree_mismatch() {
        let c = vec![Var::new("x"), Var::new("y")];
        let s = AffineSimplex::new(vec![vec![ScalarExpr::zero(); 2]; 2]).unwrap();
        let f = PolyForm::monomial(&c, &[0, 1], ScalarExpr::one());
        assert!(matches!(integrate_over_simplex(&f, &s), Err(Error::DegreeMismatch { .. })));
    }
}
