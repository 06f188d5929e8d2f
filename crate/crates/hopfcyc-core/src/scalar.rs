//! Exact scalar coefficient ring.
//!
//! A [`ScalarExpr`] is a finite ℚ-linear combination of [`Monomial`]s.  A
//! monomial is a product of
//!
//! * powers of named coordinate variables,
//! * `cos(v)^a · sin(v)^b` with `b ≤ 1` (the relation `sin² = 1 − cos²` is
//!   applied eagerly, which makes the representation canonical),
//! * formal function atoms `∂^α f(v₁,…,v_k)` (opaque test functions),
//! * Gaussian atoms `exp(−c·v²)`, one per variable,
//! * a constant factor `√π^a · √d · exp(r)` with `d` squarefree.
//!
//! The constants `√π`, `√d` and `exp(r)` are treated as formally independent
//! transcendental units.  All containers are ordered maps, so equality of
//! values is equality of canonical forms.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational numbers.
pub type Q = BigRational;

/// Rational from an integer.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational `n/d`; panics when `d = 0`.
pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// A named coordinate, optionally carrying a point/copy index.
///
/// The index distinguishes copies of the same coordinate: the two points of
/// a group law (`x.1`, `x.2`), simplex vertices (`x.0`, …, `x.p`) and the
/// tensor legs of Hopf words.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    name: Arc<str>,
    idx: Option<u32>,
}

impl Var {
    /// Plain coordinate.
    pub fn new(name: &str) -> Self {
        Var { name: Arc::from(name), idx: None }
    }

    /// Indexed copy `name.idx`.
    pub fn indexed(name: &str, idx: u32) -> Self {
        Var { name: Arc::from(name), idx: Some(idx) }
    }

    /// Base name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Copy index, if any.
    pub fn index(&self) -> Option<u32> {
        self.idx
    }

    /// Same base name with another index.
    pub fn with_index(&self, idx: Option<u32>) -> Self {
        Var { name: self.name.clone(), idx }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.idx {
            None => write!(f, "{}", self.name),
            Some(i) => write!(f, "{}.{}", self.name, i),
        }
    }
}

/// `cos(v)^cos · sin(v)^sin` with `sin ∈ {0, 1}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Trig {
    /// Exponent of `cos(v)`.
    pub cos: u32,
    /// Exponent of `sin(v)` (0 or 1).
    pub sin: u8,
}

/// A formal function atom `∂^deriv name(args)`.
///
/// An argument `None` means the slot has been evaluated at `0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FuncAtom {
    /// Function symbol.
    pub name: Arc<str>,
    /// Argument slots (`None` = evaluated at 0).
    pub args: Vec<Option<Var>>,
    /// Derivative order per slot.
    pub deriv: Vec<u32>,
}

impl FuncAtom {
    /// Underived function of the given arguments.
    pub fn new(name: &str, args: &[Var]) -> Self {
        FuncAtom { name: Arc::from(name), args: args.iter().cloned().map(Some).collect(), deriv: vec![0; args.len()] }
    }
}

/// Transcendental constant `√π^sqrt_pi · √radicand · exp(exp)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Const {
    /// Power of `√π`.
    pub sqrt_pi: i32,
    /// Squarefree radicand `d` of `√d`.
    pub radicand: BigUint,
    /// Exponent `r` of `exp(r)`.
    pub exp: Q,
}

impl Default for Const {
    fn default() -> Self {
        Const { sqrt_pi: 0, radicand: BigUint::one(), exp: Q::zero() }
    }
}

impl Const {
    /// True for the unit constant.
    pub fn is_one(&self) -> bool {
        self.sqrt_pi == 0 && self.radicand.is_one() && self.exp.is_zero()
    }
}

/// Writes `n = s²·d` with `d` squarefree; returns `(s, d)`.
fn split_square(n: &BigUint) -> (BigUint, BigUint) {
    let mut s = BigUint::one();
    let mut d = BigUint::one();
    let mut rest = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= &p;
        }
        if e % 2 == 1 {
            d *= &p;
        }
        p += 1u32;
    }
    d *= rest;
    (s, d)
}

/// A product of atoms (no coefficient).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    vars: BTreeMap<Var, u32>,
    trig: BTreeMap<Var, Trig>,
    funcs: BTreeMap<FuncAtom, u32>,
    gauss: BTreeMap<Var, Q>,
    konst: Const,
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Monomial::default()
    }

    /// `v^k`.
    pub fn var_pow(v: Var, k: u32) -> Self {
        let mut m = Monomial::one();
        if k > 0 {
            m.vars.insert(v, k);
        }
        m
    }

    /// Polynomial exponents.
    pub fn vars(&self) -> &BTreeMap<Var, u32> {
        &self.vars
    }

    /// Trigonometric exponents.
    pub fn trig(&self) -> &BTreeMap<Var, Trig> {
        &self.trig
    }

    /// Formal function atoms with multiplicities.
    pub fn funcs(&self) -> &BTreeMap<FuncAtom, u32> {
        &self.funcs
    }

    /// Gaussian exponents `c` of `exp(−c·v²)`.
    pub fn gauss(&self) -> &BTreeMap<Var, Q> {
        &self.gauss
    }

    /// Constant transcendental factor.
    pub fn konst(&self) -> &Const {
        &self.konst
    }

    /// True for the empty product.
    pub fn is_one(&self) -> bool {
        self.vars.is_empty() && self.trig.is_empty() && self.funcs.is_empty() && self.gauss.is_empty() && self.konst.is_one()
    }

    /// True when only polynomial variables (and no constant unit) occur.
    pub fn is_polynomial(&self) -> bool {
        self.trig.is_empty() && self.funcs.is_empty() && self.gauss.is_empty() && self.konst.is_one()
    }

    /// Total polynomial degree.
    pub fn degree(&self) -> u32 {
        self.vars.values().sum()
    }

    /// Every variable occurring anywhere in the monomial.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut s: BTreeSet<Var> = self.vars.keys().cloned().collect();
        s.extend(self.trig.keys().cloned());
        s.extend(self.gauss.keys().cloned());
        for f in self.funcs.keys() {
            s.extend(f.args.iter().flatten().cloned());
        }
        s
    }

    /// True when `v` occurs in a non-polynomial atom.
    pub fn has_nonpolynomial(&self, v: &Var) -> bool {
        self.trig.contains_key(v) || self.gauss.contains_key(v) || self.funcs.keys().any(|f| f.args.iter().any(|a| a.as_ref() == Some(v)))
    }

    /// Removes the power, trigonometric and Gaussian atoms of `v`; returns
    /// `(power, trig, Gaussian coefficient, remainder)`.  Function atoms are
    /// left in the remainder.
    pub fn take_var(&self, v: &Var) -> (u32, Trig, Option<Q>, Monomial) {
        let mut rest = self.clone();
        let k = rest.vars.remove(v).unwrap_or(0);
        let t = rest.trig.remove(v).unwrap_or_default();
        let g = rest.gauss.remove(v);
        (k, t, g, rest)
    }

    /// Splits off the polynomial factor in the variables selected by `pred`.
    pub fn split_vars(&self, pred: &dyn Fn(&Var) -> bool) -> (Monomial, Monomial) {
        let mut sel = Monomial::one();
        let mut rest = self.clone();
        rest.vars.clear();
        for (v, &k) in &self.vars {
            if pred(v) {
                sel.vars.insert(v.clone(), k);
            } else {
                rest.vars.insert(v.clone(), k);
            }
        }
        (sel, rest)
    }
}

/// Multiplies two monomials; the result is a short linear combination
/// because `sin² = 1 − cos²` and `√d·√d' = s·√d''`.
fn mul_mono(a: &Monomial, b: &Monomial) -> Vec<(Q, Monomial)> {
    let mut m = a.clone();
    for (v, k) in &b.vars {
        *m.vars.entry(v.clone()).or_insert(0) += k;
    }
    for (f, k) in &b.funcs {
        *m.funcs.entry(f.clone()).or_insert(0) += k;
    }
    for (v, c) in &b.gauss {
        let e = m.gauss.entry(v.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            m.gauss.remove(v);
        }
    }
    m.konst.sqrt_pi += b.konst.sqrt_pi;
    m.konst.exp += &b.konst.exp;
    let (s, d) = split_square(&(&a.konst.radicand * &b.konst.radicand));
    m.konst.radicand = d;
    let coeff = Q::from_integer(BigInt::from(s));
    let mut squared = Vec::new();
    for (v, t) in &b.trig {
        let e = m.trig.entry(v.clone()).or_default();
        e.cos += t.cos;
        e.sin += t.sin;
        if e.sin == 2 {
            squared.push(v.clone());
        }
    }
    let mut out = vec![(coeff, m)];
    for v in squared {
        let mut next = Vec::with_capacity(out.len() * 2);
        for (c, mut mm) in out {
            let t = mm.trig.get_mut(&v).expect("trig entry present");
            t.sin = 0;
            let base_cos = t.cos;
            let plain = {
                let mut p = mm.clone();
                if base_cos == 0 {
                    p.trig.remove(&v);
                }
                p
            };
            mm.trig.get_mut(&v).expect("trig entry present").cos = base_cos + 2;
            next.push((c.clone(), plain));
            next.push((-c, mm));
        }
        out = next;
    }
    out
}

/// Exact scalar: canonical ℚ-combination of monomials.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ScalarExpr {
    terms: BTreeMap<Monomial, Q>,
}

impl fmt::Debug for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::emit::scalar_text(self))
    }
}

impl ScalarExpr {
    /// The zero element (empty term list).
    pub fn zero() -> Self {
        ScalarExpr::default()
    }

    /// The unit.
    pub fn one() -> Self {
        Self::rational(Q::one())
    }

    /// Rational constant.
    pub fn rational(c: Q) -> Self {
        Self::term(c, Monomial::one())
    }

    /// Integer constant.
    pub fn int(n: i64) -> Self {
        Self::rational(q(n))
    }

    /// Single term `c·m`.
    pub fn term(c: Q, m: Monomial) -> Self {
        let mut s = ScalarExpr::zero();
        s.add_term(m, c);
        s
    }

    /// Coordinate variable.
    pub fn var(v: Var) -> Self {
        Self::term(Q::one(), Monomial::var_pow(v, 1))
    }

    /// Coordinate variable by name.
    pub fn named(name: &str) -> Self {
        Self::var(Var::new(name))
    }

    /// `cos(v)`.
    pub fn cos(v: Var) -> Self {
        let mut m = Monomial::one();
        m.trig.insert(v, Trig { cos: 1, sin: 0 });
        Self::term(Q::one(), m)
    }

    /// `sin(v)`.
    pub fn sin(v: Var) -> Self {
        let mut m = Monomial::one();
        m.trig.insert(v, Trig { cos: 0, sin: 1 });
        Self::term(Q::one(), m)
    }

    /// Formal function atom.
    pub fn func(f: FuncAtom) -> Self {
        let mut m = Monomial::one();
        m.funcs.insert(f, 1);
        Self::term(Q::one(), m)
    }

    /// Gaussian `exp(−c·v²)`.
    pub fn gauss(v: Var, c: Q) -> Self {
        let mut m = Monomial::one();
        if !c.is_zero() {
            m.gauss.insert(v, c);
        }
        Self::term(Q::one(), m)
    }

    /// `√π`.
    pub fn sqrt_pi() -> Self {
        let mut m = Monomial::one();
        m.konst.sqrt_pi = 1;
        Self::term(Q::one(), m)
    }

    /// `√π^n` for any integer `n`.
    pub fn sqrt_pi_pow(n: i32) -> Self {
        let mut m = Monomial::one();
        m.konst.sqrt_pi = n;
        Self::term(Q::one(), m)
    }

    /// `√c` for a rational `c ≥ 0`.
    pub fn sqrt_rational(c: &Q) -> Result<Self> {
        if c.is_negative() {
            return Err(Error::LeavesClass("square root of a negative rational".into()));
        }
        if c.is_zero() {
            return Ok(Self::zero());
        }
        // √(p/q) = √(p·q)/q
        let pq = (c.numer() * c.denom()).to_biguint().expect("non-negative");
        let (s, d) = split_square(&pq);
        let mut m = Monomial::one();
        m.konst.radicand = d;
        let coeff = Q::new(BigInt::from(s), c.denom().clone());
        Ok(Self::term(coeff, m))
    }

    /// `exp(r)` for a rational `r`.
    pub fn exp_rational(r: Q) -> Self {
        let mut m = Monomial::one();
        m.konst.exp = r;
        Self::term(Q::one(), m)
    }

    /// Adds `c·m` in place, keeping the canonical form.
    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    /// Canonical terms in order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    /// Number of terms (the zero expression has none; see [`Self::is_zero`]).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the unit.
    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|c| c.is_one())
    }

    /// The rational value when the expression is a plain rational constant.
    pub fn as_rational(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// True if all terms are polynomial in variables (no trig, functions,
    /// Gaussians or transcendental constants).
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_polynomial)
    }

    /// Every variable occurring in the expression.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            s.extend(m.free_vars());
        }
        s
    }

    /// True if `v` occurs anywhere.
    pub fn contains_var(&self, v: &Var) -> bool {
        self.terms.keys().any(|m| m.vars.contains_key(v) || m.has_nonpolynomial(v))
    }

    /// Total polynomial degree (maximum over terms); `0` for zero.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Multiplies by a rational.
    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ScalarExpr { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    /// `self^n`.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value at the point where all variables vanish, when every atom is
    /// evaluable there (polynomial, trig and Gaussian atoms; function atoms
    /// are kept with their arguments evaluated at 0).
    pub fn at_origin(&self) -> Self {
        let map: BTreeMap<Var, ScalarExpr> = self.free_vars().into_iter().map(|v| (v, ScalarExpr::zero())).collect();
        self.subs(&map).expect("evaluation at 0 stays in class")
    }

    /// Partial derivative with respect to `v`.
    pub fn diff(&self, v: &Var) -> Self {
        let mut out = ScalarExpr::zero();
        for (m, c) in &self.terms {
            if let Some(&k) = m.vars.get(v) {
                let mut mm = m.clone();
                if k == 1 {
                    mm.vars.remove(v);
                } else {
                    mm.vars.insert(v.clone(), k - 1);
                }
                out.add_term(mm, c * q(k as i64));
            }
            if let Some(&t) = m.trig.get(v) {
                let set = |cos: u32, sin: u8| {
                    let mut mm = m.clone();
                    if cos == 0 && sin == 0 {
                        mm.trig.remove(v);
                    } else {
                        mm.trig.insert(v.clone(), Trig { cos, sin });
                    }
                    mm
                };
                let a = t.cos as i64;
                if t.sin == 0 {
                    if a > 0 {
                        out.add_term(set(t.cos - 1, 1), -(c * q(a)));
                    }
                } else {
                    // d(cos^a sin) = −a cos^{a−1} sin² + cos^{a+1}
                    //              = −a cos^{a−1} + (a+1) cos^{a+1}
                    if a > 0 {
                        out.add_term(set(t.cos - 1, 0), -(c * q(a)));
                    }
                    out.add_term(set(t.cos + 1, 0), c * q(a + 1));
                }
            }
            for (f, &k) in &m.funcs {
                for (slot, arg) in f.args.iter().enumerate() {
                    if arg.as_ref() != Some(v) {
                        continue;
                    }
                    let mut mm = m.clone();
                    if k == 1 {
                        mm.funcs.remove(f);
                    } else {
                        mm.funcs.insert(f.clone(), k - 1);
                    }
                    let mut df = f.clone();
                    df.deriv[slot] += 1;
                    *mm.funcs.entry(df).or_insert(0) += 1;
                    out.add_term(mm, c * q(k as i64));
                }
            }
            if let Some(g) = m.gauss.get(v) {
                let mut mm = m.clone();
                *mm.vars.entry(v.clone()).or_insert(0) += 1;
                out.add_term(mm, -(c * g * q(2)));
            }
        }
        out
    }

    /// Decomposes the expression as `Σ nᵢ·vᵢ` with integer `nᵢ`, if possible.
    pub fn as_integer_linear(&self) -> Option<Vec<(Var, BigInt)>> {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            if !c.is_integer() || !m.is_polynomial() || m.vars.len() != 1 {
                return None;
            }
            let (v, &k) = m.vars.iter().next().expect("one var");
            if k != 1 {
                return None;
            }
            out.push((v.clone(), c.to_integer()));
        }
        Some(out)
    }

    /// If the expression is `±w` for a single variable `w`, returns it.
    fn as_signed_var(&self) -> Option<(Var, bool)> {
        let lin = self.as_integer_linear()?;
        if lin.len() != 1 {
            return None;
        }
        let (v, n) = &lin[0];
        if n.is_one() {
            Some((v.clone(), true))
        } else if *n == -BigInt::one() {
            Some((v.clone(), false))
        } else {
            None
        }
    }

    /// Simultaneous substitution of variables by expressions.
    ///
    /// Variables without an image are kept.  Trigonometric atoms accept
    /// integer linear combinations of variables; function atoms accept plain
    /// renamings or `0`; Gaussian atoms accept `±w` or `0`.  Anything else is
    /// reported as [`Error::LeavesClass`].
    pub fn subs(&self, map: &BTreeMap<Var, ScalarExpr>) -> Result<Self> {
        if map.is_empty() {
            return Ok(self.clone());
        }
        let mut trig_cache: BTreeMap<Var, (ScalarExpr, ScalarExpr)> = BTreeMap::new();
        let mut out = ScalarExpr::zero();
        for (m, c) in &self.terms {
            let mut keep = Monomial::one();
            keep.konst = m.konst.clone();
            let mut factor = ScalarExpr::one();
            for (v, &k) in &m.vars {
                match map.get(v) {
                    Some(img) => factor = &factor * &img.pow(k),
                    None => {
                        keep.vars.insert(v.clone(), k);
                    }
                }
            }
            for (v, &t) in &m.trig {
                match map.get(v) {
                    Some(img) => {
                        if !trig_cache.contains_key(v) {
                            let lin = img.as_integer_linear().ok_or_else(|| {
                                Error::LeavesClass(alloc::format!(
                                    "trigonometric argument {v} ↦ {img} is not an integer linear combination"
                                ))
                            })?;
                            trig_cache.insert(v.clone(), cos_sin_linear(&lin));
                        }
                        let (cs, sn) = &trig_cache[v];
                        factor = &factor * &cs.pow(t.cos);
                        if t.sin == 1 {
                            factor = &factor * sn;
                        }
                    }
                    None => {
                        keep.trig.insert(v.clone(), t);
                    }
                }
            }
            for (f, &k) in &m.funcs {
                let mut g = f.clone();
                for arg in g.args.iter_mut() {
                    if let Some(v) = arg.clone() {
                        if let Some(img) = map.get(&v) {
                            if img.is_zero() {
                                *arg = None;
                            } else {
                                match img.as_signed_var() {
                                    Some((w, true)) => *arg = Some(w),
                                    _ => {
                                        return Err(Error::LeavesClass(alloc::format!(
                                            "argument {v} ↦ {img} of function {} is not a renaming",
                                            f.name
                                        )))
                                    }
                                }
                            }
                        }
                    }
                }
                *keep.funcs.entry(g).or_insert(0) += k;
            }
            for (v, cc) in &m.gauss {
                match map.get(v) {
                    Some(img) => {
                        if img.is_zero() {
                            continue;
                        }
                        let (w, _) = img
                            .as_signed_var()
                            .ok_or_else(|| Error::LeavesClass(alloc::format!("Gaussian in {v} composed with {img} is not a Gaussian")))?;
                        factor = &factor * &ScalarExpr::gauss(w, cc.clone());
                    }
                    None => {
                        let e = keep.gauss.entry(v.clone()).or_insert_with(Q::zero);
                        *e += cc;
                    }
                }
            }
            let kept = ScalarExpr::term(c.clone(), keep);
            out += &(&kept * &factor);
        }
        Ok(out)
    }

    /// Renames variables (a substitution by variables only; never fails).
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Self {
        let m: BTreeMap<Var, ScalarExpr> = map.iter().map(|(a, b)| (a.clone(), ScalarExpr::var(b.clone()))).collect();
        self.subs(&m).expect("renaming stays in class")
    }

    /// Renames variables by a function (`None` keeps the variable).  Fast
    /// path for polynomial terms; other terms go through [`Self::subs`].
    pub fn rename_with(&self, f: &dyn Fn(&Var) -> Option<Var>) -> Self {
        let mut out = ScalarExpr::zero();
        for (m, c) in &self.terms {
            if m.trig.is_empty() && m.funcs.is_empty() && m.gauss.is_empty() {
                let mut mm = m.clone();
                mm.vars.clear();
                for (v, &k) in &m.vars {
                    *mm.vars.entry(f(v).unwrap_or_else(|| v.clone())).or_insert(0) += k;
                }
                out.add_term(mm, c.clone());
            } else {
                let map: BTreeMap<Var, Var> = m.free_vars().into_iter().filter_map(|v| f(&v).map(|w| (v, w))).collect();
                out += &ScalarExpr::term(c.clone(), m.clone()).rename(&map);
            }
        }
        out
    }

    /// Groups terms by their polynomial factor in the variables selected by
    /// `pred`; returns `selected monomial ↦ remaining coefficient`.
    pub fn collect_by(&self, pred: &dyn Fn(&Var) -> bool) -> BTreeMap<Monomial, ScalarExpr> {
        let mut out: BTreeMap<Monomial, ScalarExpr> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (sel, rest) = m.split_vars(pred);
            out.entry(sel).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// True when a variable selected by `pred` occurs inside a
    /// non-polynomial atom.
    pub fn has_nonpolynomial_in(&self, pred: &dyn Fn(&Var) -> bool) -> bool {
        self.terms.keys().any(|m| m.free_vars().iter().any(|v| pred(v) && m.has_nonpolynomial(v)))
    }

    /// Applies `f` to every rational coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Q) -> Q) -> Self {
        let mut out = ScalarExpr::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

/// `(cos(Σnᵢvᵢ), sin(Σnᵢvᵢ))` by expanding `∏(cos vᵢ ± i sin vᵢ)^{|nᵢ|}`.
fn cos_sin_linear(lin: &[(Var, BigInt)]) -> (ScalarExpr, ScalarExpr) {
    let mut re = ScalarExpr::one();
    let mut im = ScalarExpr::zero();
    for (v, n) in lin {
        let c1 = ScalarExpr::cos(v.clone());
        let s1 = if n.is_negative() { -ScalarExpr::sin(v.clone()) } else { ScalarExpr::sin(v.clone()) };
        let times = n.abs().to_u64().expect("moderate multiple angle");
        for _ in 0..times {
            let nre = &(&re * &c1) - &(&im * &s1);
            let nim = &(&re * &s1) + &(&im * &c1);
            re = nre;
            im = nim;
        }
    }
    (re, im)
}

impl From<Q> for ScalarExpr {
    fn from(c: Q) -> Self {
        ScalarExpr::rational(c)
    }
}

impl From<i64> for ScalarExpr {
    fn from(n: i64) -> Self {
        ScalarExpr::int(n)
    }
}

impl From<Var> for ScalarExpr {
    fn from(v: Var) -> Self {
        ScalarExpr::var(v)
    }
}

impl AddAssign<&ScalarExpr> for ScalarExpr {
    fn add_assign(&mut self, rhs: &ScalarExpr) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for ScalarExpr {
    fn add_assign(&mut self, rhs: ScalarExpr) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&ScalarExpr> for ScalarExpr {
    fn sub_assign(&mut self, rhs: &ScalarExpr) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: &ScalarExpr) -> ScalarExpr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ScalarExpr {
    type Output = ScalarExpr;
    fn add(mut self, rhs: ScalarExpr) -> ScalarExpr {
        self += rhs;
        self
    }
}

impl Sub for &ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: &ScalarExpr) -> ScalarExpr {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for ScalarExpr {
    type Output = ScalarExpr;
    fn sub(mut self, rhs: ScalarExpr) -> ScalarExpr {
        self -= &rhs;
        self
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(mut self) -> ScalarExpr {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for &ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: &ScalarExpr) -> ScalarExpr {
        let mut out = ScalarExpr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let c = ca * cb;
                for (k, m) in mul_mono(ma, mb) {
                    out.add_term(m, &c * k);
                }
            }
        }
        out
    }
}

impl Mul for ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: ScalarExpr) -> ScalarExpr {
        &self * &rhs
    }
}

impl MulAssign<&ScalarExpr> for ScalarExpr {
    fn mul_assign(&mut self, rhs: &ScalarExpr) {
        *self = &*self * rhs;
    }
}

impl core::iter::Sum for ScalarExpr {
    fn sum<I: Iterator<Item = ScalarExpr>>(iter: I) -> Self {
        let mut acc = ScalarExpr::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}

/// Convenience: render a rational as `p` or `p/q`.
pub fn rational_text(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        alloc::format!("{}/{}", c.numer(), c.denom())
    }
}

/// Factorial as a rational.
pub fn factorial(n: u64) -> Q {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Q::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_scalar;

    fn p(s: &str) -> ScalarExpr {
        parse_scalar(s).unwrap()
    }

    #[test]
    fn pythagorean_rewrite() {
        assert_eq!(p("sin(t)^2 + cos(t)^2"), ScalarExpr::one());
        assert_eq!(p("sin(t)^3"), p("sin(t) - cos(t)^2*sin(t)"));
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p("(x+y)*(x-y)"), p("x^2 - y^2"));
    }

    #[test]
    fn rotation_collapses() {
        // cosθ·(cosθ x + sinθ y) − sinθ·(cosθ y − sinθ x) = x
        let e = p("cos(t)*(cos(t)*x + sin(t)*y) - sin(t)*(cos(t)*y - sin(t)*x)");
        assert_eq!(e, p("x"));
    }

    #[test]
    fn trig_substitution_angle_addition() {
        let mut m = BTreeMap::new();
        m.insert(Var::new("t"), p("a + b"));
        assert_eq!(p("cos(t)").subs(&m).unwrap(), p("cos(a)*cos(b) - sin(a)*sin(b)"));
        let mut m = BTreeMap::new();
        m.insert(Var::new("t"), p("-a"));
        assert_eq!(p("sin(t)").subs(&m).unwrap(), p("-sin(a)"));
        let mut m = BTreeMap::new();
        m.insert(Var::new("t"), ScalarExpr::zero());
        assert_eq!(p("3*cos(t) + sin(t)").subs(&m).unwrap(), ScalarExpr::int(3));
    }

    #[test]
    fn non_linear_trig_argument_leaves_class() {
        let mut m = BTreeMap::new();
        m.insert(Var::new("t"), p("a*b"));
        assert!(matches!(p("cos(t)").subs(&m), Err(Error::LeavesClass(_))));
    }

    #[test]
    fn derivatives() {
        let t = Var::new("t");
        assert_eq!(p("cos(t)*x").diff(&t), p("-sin(t)*x"));
        assert_eq!(p("sin(t)").diff(&t), p("cos(t)"));
        assert_eq!(p("cos(t)*sin(t)").diff(&t), p("2*cos(t)^2 - 1"));
        assert_eq!(p("exp(-t^2)").diff(&t), p("-2*t*exp(-t^2)"));
        assert_eq!(p("f(t)").diff(&t), p("d[1]f(t)"));
        assert_eq!(p("f(t,t)").diff(&t), p("d[1,0]f(t,t) + d[0,1]f(t,t)"));
    }

    #[test]
    fn constants() {
        assert_eq!(p("sqrt(2)*sqrt(2)"), ScalarExpr::int(2));
        assert_eq!(p("sqrt(1/2)"), p("sqrt(2)/2"));
        assert_eq!(p("sqrt(pi)*sqrt(pi)"), p("pi"));
        assert_eq!(p("exp(1/2)*exp(-1/2)"), ScalarExpr::one());
        assert_eq!(p("exp(-t^2)*exp(-t^2)"), p("exp(-2*t^2)"));
    }

    #[test]
    fn text_round_trip() {
        for s in [
            "x^2 - 1/2*y*x.1 + 3",
            "cos(t)^2*sin(t)*x - sqrt(pi)*exp(-1/4)",
            "d[2,0]f(a,0)*exp(-2*a^2) + sqrt(3)*pi",
            "-x.0*y.3^2 + sqrt(pi)^3",
        ] {
            let e = p(s);
            assert_eq!(parse_scalar(&e.to_string()).unwrap(), e, "{s}");
        }
    }
}
