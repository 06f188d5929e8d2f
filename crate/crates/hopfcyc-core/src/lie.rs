//! Lie algebras by structure constants, matched pairs of Lie algebras, the
//! bicrossed product, and Chevalley–Eilenberg cohomology.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::form::sort_with_sign;
use crate::linalg::{kernel, rank, QMatrix};
use crate::scalar::{rational_text, Q};

/// A cochain in `∧^k 𝔤*`: sorted index tuple ↦ coefficient.
pub type CeCochain = BTreeMap<Vec<usize>, Q>;

/// A finite-dimensional Lie algebra over ℚ with structure constants
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    c: Vec<Vec<Vec<Q>>>,
}

/// One identity failure found by a validator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Name of the identity (e.g. `lie.jacobi`, `mp.cond4`).
    pub check: String,
    /// Basis indices at which it fails.
    pub indices: Vec<usize>,
    /// Human-readable witness.
    pub detail: String,
}

fn add_scaled(acc: &mut [Q], v: &[Q], s: &Q) {
    if s.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        *a += s * b;
    }
}

fn basis_vec(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

fn vec_text(v: &[Q], names: &[String]) -> String {
    let parts: Vec<String> = v
        .iter()
        .zip(names)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, n)| if c.is_one() { n.clone() } else { format!("{}*{n}", rational_text(c)) })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl LieAlgebra {
    /// Builds an algebra from bracket entries `(i, j, k, c)` meaning
    /// `[e_i, e_j] ∋ c·e_k`; the antisymmetric partner is filled in.
    /// Entries for the same `(i, j, k)` add up.
    pub fn new(names: Vec<String>, brackets: &[(usize, usize, usize, Q)]) -> Result<Self> {
        let n = names.len();
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for (i, j, k, v) in brackets {
            let m = *i.max(j).max(k);
            if m >= n {
                return Err(Error::IndexOutOfRange { index: m, max: n });
            }
            if i == j {
                if !v.is_zero() {
                    return Err(Error::Invalid(format!("[{0},{0}] must vanish", names[*i])));
                }
                continue;
            }
            c[*i][*j][*k] += v;
            c[*j][*i][*k] -= v;
        }
        Ok(LieAlgebra { names, c })
    }

    /// Abelian algebra on the given basis names.
    pub fn abelian(names: Vec<String>) -> Self {
        Self::new(names, &[]).expect("no brackets")
    }

    /// Builds an algebra from a raw tensor without symmetrizing (used to
    /// exercise the validators on malformed data).
    pub fn from_tensor(names: Vec<String>, c: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        let n = names.len();
        if c.len() != n || c.iter().any(|r| r.len() != n || r.iter().any(|s| s.len() != n)) {
            return Err(Error::DimensionMismatch("structure tensor shape".into()));
        }
        Ok(LieAlgebra { names, c })
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// Basis names.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Structure constant `c_{ij}^k`.
    pub fn structure(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.c[i][j][k]
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                add_scaled(&mut out, &self.c[i][j], &(&x[i] * &y[j]));
            }
        }
        out
    }

    /// Bracket of basis elements.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Q] {
        &self.c[i][j]
    }

    /// Whether all brackets vanish.
    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// Antisymmetry violations `c_{ij}^k ≠ −c_{ji}^k`.
    pub fn antisymmetry_violations(&self) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if !(&self.c[i][j][k] + &self.c[j][i][k]).is_zero() {
                        out.push(Violation {
                            check: "lie.antisymmetry".into(),
                            indices: vec![i, j, k],
                            detail: format!("[{},{}]", self.names[i], self.names[j]),
                        });
                    }
                }
            }
        }
        out
    }

    /// Jacobi violations, one per failing basis triple `i < j < k`
    /// (brute force over all triples).
    pub fn jacobi_violations(&self) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !(i < j && j < k) {
                        continue;
                    }
                    let (ei, ej, ek) = (basis_vec(n, i), basis_vec(n, j), basis_vec(n, k));
                    let a = self.bracket(&self.bracket(&ei, &ej), &ek);
                    let b = self.bracket(&self.bracket(&ej, &ek), &ei);
                    let c = self.bracket(&self.bracket(&ek, &ei), &ej);
                    let s: Vec<Q> = (0..n).map(|l| &a[l] + &b[l] + &c[l]).collect();
                    if s.iter().any(|x| !x.is_zero()) {
                        out.push(Violation {
                            check: "lie.jacobi".into(),
                            indices: vec![i, j, k],
                            detail: format!("({},{},{}) -> {}", self.names[i], self.names[j], self.names[k], vec_text(&s, &self.names)),
                        });
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_{e_i}` (column `j` is `[e_i, e_j]`).
    pub fn ad(&self, i: usize) -> QMatrix {
        let n = self.dim();
        (0..n).map(|k| (0..n).map(|j| self.c[i][j][k].clone()).collect()).collect()
    }

    /// The modular character `δ(Z) = Tr(ad_Z)` as a row vector.
    pub fn delta_character(&self) -> Vec<Q> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|k| self.c[i][k][k].clone()).sum()).collect()
    }

    /// Renders a vector in this algebra's basis.
    pub fn vector_text(&self, v: &[Q]) -> String {
        vec_text(v, &self.names)
    }
}

/// A matched pair of Lie algebras: `▷ : 𝔤₂ ⊗ 𝔤₁ → 𝔤₁` (left action of
/// 𝔤₂ on 𝔤₁) and `◁ : 𝔤₂ ⊗ 𝔤₁ → 𝔤₂` (right action of 𝔤₁ on 𝔤₂).
///
/// `left[a][i]` is `Y_a ▷ X_i ∈ 𝔤₁`, `right[a][i]` is `Y_a ◁ X_i ∈ 𝔤₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPairLie {
    /// The algebra acted on from the left.
    pub g1: LieAlgebra,
    /// The algebra acted on from the right.
    pub g2: LieAlgebra,
    /// `left[a][i] = Y_a ▷ X_i`.
    pub left: Vec<Vec<Vec<Q>>>,
    /// `right[a][i] = Y_a ◁ X_i`.
    pub right: Vec<Vec<Vec<Q>>>,
}

impl MatchedPairLie {
    /// Builds a matched pair from action entries `(a, i, k, c)`:
    /// `Y_a ▷ X_i ∋ c·X_k` and `Y_a ◁ X_i ∋ c·Y_k`.
    pub fn new(g1: LieAlgebra, g2: LieAlgebra, left: &[(usize, usize, usize, Q)], right: &[(usize, usize, usize, Q)]) -> Result<Self> {
        let (n1, n2) = (g1.dim(), g2.dim());
        let mut l = vec![vec![vec![Q::zero(); n1]; n1]; n2];
        let mut r = vec![vec![vec![Q::zero(); n2]; n1]; n2];
        for (a, i, k, c) in left {
            if *a >= n2 || *i >= n1 || *k >= n1 {
                return Err(Error::DimensionMismatch(format!("left action entry ({a},{i},{k})")));
            }
            l[*a][*i][*k] += c;
        }
        for (a, i, k, c) in right {
            if *a >= n2 || *i >= n1 || *k >= n2 {
                return Err(Error::DimensionMismatch(format!("right action entry ({a},{i},{k})")));
            }
            r[*a][*i][*k] += c;
        }
        Ok(MatchedPairLie { g1, g2, left: l, right: r })
    }

    /// `Y ▷ X` for coordinate vectors.
    pub fn act_left(&self, y: &[Q], x: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.g1.dim()];
        for (a, ya) in y.iter().enumerate() {
            for (i, xi) in x.iter().enumerate() {
                add_scaled(&mut out, &self.left[a][i], &(ya * xi));
            }
        }
        out
    }

    /// `Y ◁ X` for coordinate vectors.
    pub fn act_right(&self, y: &[Q], x: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.g2.dim()];
        for (a, ya) in y.iter().enumerate() {
            for (i, xi) in x.iter().enumerate() {
                add_scaled(&mut out, &self.right[a][i], &(ya * xi));
            }
        }
        out
    }

    /// Checks the four matched-pair identities on all basis triples.
    ///
    /// With `Y, Y₁, Y₂ ∈ 𝔤₂` and `X, X₁, X₂ ∈ 𝔤₁`:
    /// 1. `[Y₁,Y₂] ▷ X = Y₁ ▷ (Y₂ ▷ X) − Y₂ ▷ (Y₁ ▷ X)`
    /// 2. `Y ◁ [X₁,X₂] = (Y ◁ X₁) ◁ X₂ − (Y ◁ X₂) ◁ X₁`
    /// 3. `Y ▷ [X₁,X₂] = [Y ▷ X₁, X₂] + [X₁, Y ▷ X₂] + (Y ◁ X₁) ▷ X₂ − (Y ◁ X₂) ▷ X₁`
    /// 4. `[Y₁,Y₂] ◁ X = [Y₁ ◁ X, Y₂] + [Y₁, Y₂ ◁ X] + Y₁ ◁ (Y₂ ▷ X) − Y₂ ◁ (Y₁ ▷ X)`
    ///
    /// Indices in a violation are listed 𝔤₂ indices first, then 𝔤₁.
    pub fn validate(&self) -> Vec<Violation> {
        let (n1, n2) = (self.g1.dim(), self.g2.dim());
        let mut out = Vec::new();
        let sub = |a: Vec<Q>, b: Vec<Q>| -> Vec<Q> { a.iter().zip(&b).map(|(x, y)| x - y).collect() };
        let add = |a: Vec<Q>, b: Vec<Q>| -> Vec<Q> { a.iter().zip(&b).map(|(x, y)| x + y).collect() };
        let mut report = |cond: usize, idx: Vec<usize>, diff: Vec<Q>, names: &[String], label: String| {
            if diff.iter().any(|x| !x.is_zero()) {
                out.push(Violation {
                    check: format!("mp.cond{cond}"),
                    indices: idx,
                    detail: format!("{label}: lhs - rhs = {}", vec_text(&diff, names)),
                });
            }
        };
        let (e1, e2) = (|i| basis_vec(n1, i), |a| basis_vec(n2, a));
        let (nm1, nm2) = (self.g1.names(), self.g2.names());
        for a in 0..n2 {
            for b in 0..n2 {
                for i in 0..n1 {
                    let (ya, yb, x) = (e2(a), e2(b), e1(i));
                    let yab = self.g2.bracket(&ya, &yb);
                    if a < b {
                        let lhs = self.act_left(&yab, &x);
                        let rhs = sub(self.act_left(&ya, &self.act_left(&yb, &x)), self.act_left(&yb, &self.act_left(&ya, &x)));
                        let label = format!("({},{};{})", nm2[a], nm2[b], nm1[i]);
                        report(1, vec![a, b, i], sub(lhs, rhs), nm1, label);
                        let lhs = self.act_right(&yab, &x);
                        let rhs = add(
                            add(self.g2.bracket(&self.act_right(&ya, &x), &yb), self.g2.bracket(&ya, &self.act_right(&yb, &x))),
                            sub(self.act_right(&ya, &self.act_left(&yb, &x)), self.act_right(&yb, &self.act_left(&ya, &x))),
                        );
                        let label = format!("({},{};{})", nm2[a], nm2[b], nm1[i]);
                        report(4, vec![a, b, i], sub(lhs, rhs), nm2, label);
                    }
                }
            }
            for i in 0..n1 {
                for j in (i + 1)..n1 {
                    let (y, xi, xj) = (e2(a), e1(i), e1(j));
                    let xij = self.g1.bracket(&xi, &xj);
                    let lhs = self.act_right(&y, &xij);
                    let rhs = sub(self.act_right(&self.act_right(&y, &xi), &xj), self.act_right(&self.act_right(&y, &xj), &xi));
                    let label = format!("({};{},{})", nm2[a], nm1[i], nm1[j]);
                    report(2, vec![a, i, j], sub(lhs, rhs), nm2, label.clone());
                    let lhs = self.act_left(&y, &xij);
                    let rhs = add(
                        add(self.g1.bracket(&self.act_left(&y, &xi), &xj), self.g1.bracket(&xi, &self.act_left(&y, &xj))),
                        sub(self.act_left(&self.act_right(&y, &xi), &xj), self.act_left(&self.act_right(&y, &xj), &xi)),
                    );
                    report(3, vec![a, i, j], sub(lhs, rhs), nm1, label);
                }
            }
        }
        out.sort_by(|a, b| a.check.cmp(&b.check).then_with(|| a.indices.cmp(&b.indices)));
        out
    }

    /// The bicrossed product `𝔤₁ ⋈ 𝔤₂` on `𝔤₁ ⊕ 𝔤₂` (𝔤₁ basis first):
    /// `[X₁⊕Y₁, X₂⊕Y₂] = ([X₁,X₂] + Y₁▷X₂ − Y₂▷X₁) ⊕ ([Y₁,Y₂] + Y₁◁X₂ − Y₂◁X₁)`.
    ///
    /// Fails with [`Error::Invalid`] if the pair does not validate or the
    /// output violates Jacobi.
    pub fn bicrossed_lie(&self) -> Result<LieAlgebra> {
        if let Some(v) = self.validate().first() {
            return Err(Error::Invalid(format!("not a matched pair: {} at {}", v.check, v.detail)));
        }
        let alg = self.bicrossed_unchecked();
        if let Some(v) = alg.jacobi_violations().first() {
            return Err(Error::Invalid(format!("bicrossed bracket violates Jacobi at {}", v.detail)));
        }
        Ok(alg)
    }

    /// The bicrossed bracket without any validation.
    pub fn bicrossed_unchecked(&self) -> LieAlgebra {
        let (n1, n2) = (self.g1.dim(), self.g2.dim());
        let n = n1 + n2;
        let mut names: Vec<String> = self.g1.names().to_vec();
        names.extend(self.g2.names().iter().cloned());
        let split = |v: &[Q]| (v[..n1].to_vec(), v[n1..].to_vec());
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for u in 0..n {
            for w in 0..n {
                let (x1, y1) = split(&basis_vec(n, u));
                let (x2, y2) = split(&basis_vec(n, w));
                let mut first = self.g1.bracket(&x1, &x2);
                add_scaled(&mut first, &self.act_left(&y1, &x2), &Q::one());
                add_scaled(&mut first, &self.act_left(&y2, &x1), &-Q::one());
                let mut second = self.g2.bracket(&y1, &y2);
                add_scaled(&mut second, &self.act_right(&y1, &x2), &Q::one());
                add_scaled(&mut second, &self.act_right(&y2, &x1), &-Q::one());
                first.extend(second);
                c[u][w] = first;
            }
        }
        LieAlgebra { names, c }
    }
}

/// `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn add_cochain(acc: &mut CeCochain, key: Vec<usize>, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(key.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&key);
    }
}

/// Wedge product of CE cochains.
pub fn ce_wedge(a: &CeCochain, b: &CeCochain) -> CeCochain {
    let mut out = CeCochain::new();
    for (i, x) in a {
        for (j, y) in b {
            let mut idx = i.clone();
            idx.extend_from_slice(j);
            if let Some((s, sorted)) = sort_with_sign(&idx) {
                add_cochain(&mut out, sorted, Q::from_integer(s.into()) * x * y);
            }
        }
    }
    out
}

/// Interior product `ι_v` (first slot) of a CE cochain.
pub fn ce_contract(a: &CeCochain, v: &[Q]) -> CeCochain {
    let mut out = CeCochain::new();
    for (i, x) in a {
        for (pos, &k) in i.iter().enumerate() {
            if v[k].is_zero() {
                continue;
            }
            let mut rest = i.clone();
            rest.remove(pos);
            let s = if pos % 2 == 1 { -(x * &v[k]) } else { x * &v[k] };
            add_cochain(&mut out, rest, s);
        }
    }
    out
}

/// The Chevalley–Eilenberg complex `(∧^• 𝔤*, ∂)` with trivial coefficients.
#[derive(Clone, Debug)]
pub struct CEComplex {
    alg: LieAlgebra,
    bases: Vec<Vec<Vec<usize>>>,
    diffs: Vec<QMatrix>,
}

/// Cohomology data per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    /// Betti numbers `b_0 … b_n`.
    pub betti: Vec<usize>,
    /// Representative cocycles per degree.
    pub representatives: Vec<Vec<CeCochain>>,
}

impl CEComplex {
    /// Assembles the differential matrices.
    pub fn new(alg: &LieAlgebra) -> Self {
        let n = alg.dim();
        let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| subsets(n, k)).collect();
        let diffs = (0..n)
            .map(|k| {
                let rows = &bases[k + 1];
                let mut m = vec![vec![Q::zero(); bases[k].len()]; rows.len()];
                for (col, idx) in bases[k].iter().enumerate() {
                    let img = Self::d_basis(alg, idx);
                    for (key, c) in img {
                        let row = rows.binary_search(&key).expect("basis");
                        m[row][col] = c;
                    }
                }
                m
            })
            .collect();
        CEComplex { alg: alg.clone(), bases, diffs }
    }

    /// The underlying algebra.
    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    /// Basis of `∧^k 𝔤*` (sorted index tuples).
    pub fn basis(&self, k: usize) -> &[Vec<usize>] {
        &self.bases[k]
    }

    /// Matrix of `∂ : ∧^k → ∧^{k+1}`.
    pub fn matrix(&self, k: usize) -> &QMatrix {
        &self.diffs[k]
    }

    fn d_one(alg: &LieAlgebra, k: usize) -> CeCochain {
        // ∂θ_k(x, y) = −θ_k([x, y])
        let n = alg.dim();
        let mut out = CeCochain::new();
        for i in 0..n {
            for j in (i + 1)..n {
                add_cochain(&mut out, vec![i, j], -alg.c[i][j][k].clone());
            }
        }
        out
    }

    fn d_basis(alg: &LieAlgebra, idx: &[usize]) -> CeCochain {
        // graded Leibniz rule over the wedge factors
        let mut out = CeCochain::new();
        for (pos, &k) in idx.iter().enumerate() {
            let mut left = CeCochain::new();
            left.insert(idx[..pos].to_vec(), Q::one());
            let mut right = CeCochain::new();
            right.insert(idx[pos + 1..].to_vec(), Q::one());
            let term = ce_wedge(&ce_wedge(&left, &Self::d_one(alg, k)), &right);
            for (key, c) in term {
                add_cochain(&mut out, key, if pos % 2 == 1 { -c } else { c });
            }
        }
        out
    }

    /// `∂` of a cochain.
    pub fn d(&self, a: &CeCochain) -> CeCochain {
        let mut out = CeCochain::new();
        for (idx, c) in a {
            for (key, v) in Self::d_basis(&self.alg, idx) {
                add_cochain(&mut out, key, c * &v);
            }
        }
        out
    }

    /// Coordinates of a homogeneous degree-`k` cochain in the basis.
    pub fn to_vector(&self, k: usize, a: &CeCochain) -> Vec<Q> {
        self.bases[k].iter().map(|i| a.get(i).cloned().unwrap_or_else(Q::zero)).collect()
    }

    /// Cochain from coordinates in the degree-`k` basis.
    pub fn from_vector(&self, k: usize, v: &[Q]) -> CeCochain {
        let mut out = CeCochain::new();
        for (i, c) in self.bases[k].iter().zip(v) {
            add_cochain(&mut out, i.clone(), c.clone());
        }
        out
    }

    /// Whether `∂∘∂ = 0` holds as a matrix identity in every degree.
    pub fn d_squared_vanishes(&self) -> bool {
        (1..self.diffs.len()).all(|k| {
            let cols = self.bases[k - 1].len();
            let prod = crate::linalg::mat_mul(&self.diffs[k], &self.diffs[k - 1], cols);
            prod.iter().flatten().all(Zero::is_zero)
        })
    }

    fn image_basis(&self, k: usize) -> Vec<Vec<Q>> {
        if k == 0 {
            return Vec::new();
        }
        let m = &self.diffs[k - 1];
        let cols = self.bases[k - 1].len();
        (0..cols).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect()
    }

    fn kernel_basis(&self, k: usize) -> Vec<Vec<Q>> {
        let dim = self.bases[k].len();
        if k == self.diffs.len() {
            return (0..dim).map(|i| basis_vec(dim, i)).collect();
        }
        kernel(&self.diffs[k], dim)
    }

    /// Whether a degree-`k` cochain is a coboundary.
    pub fn is_exact(&self, k: usize, a: &CeCochain) -> bool {
        let dim = self.bases[k].len();
        let mut img = self.image_basis(k);
        let r = rank(&img, dim);
        img.push(self.to_vector(k, a));
        rank(&img, dim) == r
    }

    /// Betti numbers and deterministic representatives: kernel basis vectors
    /// from the reduced row-echelon form, kept greedily when they are
    /// independent of the image and of the previously kept ones.
    pub fn cohomology(&self) -> Cohomology {
        let n = self.alg.dim();
        let mut betti = Vec::new();
        let mut reps = Vec::new();
        for k in 0..=n {
            let dim = self.bases[k].len();
            let mut span = self.image_basis(k);
            let mut r = rank(&span, dim);
            let mut chosen = Vec::new();
            for v in self.kernel_basis(k) {
                span.push(v.clone());
                let r2 = rank(&span, dim);
                if r2 > r {
                    r = r2;
                    chosen.push(self.from_vector(k, &v));
                } else {
                    span.pop();
                }
            }
            betti.push(chosen.len());
            reps.push(chosen);
        }
        Cohomology { betti, representatives: reps }
    }

    /// Basis of the `𝔥`-basic subspace of `∧^k 𝔤*` for `𝔥` spanned by
    /// `h` (vectors in 𝔤): cochains with `ι_ξ α = 0` and `ι_ξ ∂α = 0`.
    pub fn basic_subspace(&self, k: usize, h: &[Vec<Q>]) -> Vec<CeCochain> {
        let dim = self.bases[k].len();
        let mut rows: QMatrix = Vec::new();
        // each condition is linear in the coefficient vector: stack the
        // images of basis cochains as columns
        let mut columns: Vec<Vec<Q>> = Vec::new();
        for b in 0..dim {
            let e = self.from_vector(k, &basis_vec(dim, b));
            let de = self.d(&e);
            let mut col = Vec::new();
            for xi in h {
                let c1 = ce_contract(&e, xi);
                if k >= 1 {
                    col.extend(self.to_vector(k - 1, &c1));
                }
                let c2 = ce_contract(&de, xi);
                col.extend(self.to_vector(k, &c2));
            }
            columns.push(col);
        }
        let m = columns.first().map_or(0, Vec::len);
        for r in 0..m {
            rows.push(columns.iter().map(|c| c[r].clone()).collect());
        }
        if rows.is_empty() {
            return (0..dim).map(|b| self.from_vector(k, &basis_vec(dim, b))).collect();
        }
        kernel(&rows, dim).iter().map(|v| self.from_vector(k, v)).collect()
    }
}

/// Text of a CE cochain in a named coframe (`θ1∧θ3`, …).
pub fn cochain_text(a: &CeCochain, frame: &[String]) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (n, (idx, c)) in a.iter().enumerate() {
        let neg = c < &Q::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if n == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let body = if idx.is_empty() { "1".to_string() } else { idx.iter().map(|&i| frame[i].clone()).collect::<Vec<_>>().join("∧") };
        if abs.is_one() {
            s.push_str(&body);
        } else if idx.is_empty() {
            s.push_str(&rational_text(&abs));
        } else {
            s.push_str(&format!("{}*{body}", rational_text(&abs)));
        }
    }
    s
}

/// A bigraded cochain in `⊕ ∧^q 𝔤₁* ⊗ ∧^p 𝔩₂*`: `(𝔤₁ indices, 𝔩₂ indices)`
/// ↦ coefficient, indices local to each factor.
pub type SplitCochain = BTreeMap<(Vec<usize>, Vec<usize>), Q>;

/// The splitting `♮ : ∧^n(𝔤₁ ⊕ 𝔩₂)* → ⊕_{p+q=n} ∧^q 𝔤₁* ⊗ ∧^p 𝔩₂*`,
/// `♮ω(X¹,…,X^q; ξ₁,…,ξ_p) = ω(X¹⊕0,…,X^q⊕0, 0⊕ξ₁,…,0⊕ξ_p)`, for a
/// direct sum whose first `dim1` basis vectors span 𝔤₁.
///
/// `h2` lists vectors (in the full basis) spanning the subalgebra
/// `𝔥₂ ⊂ 𝔤₂`; `ω` must be basic for it.
pub fn natural_split(ce: &CEComplex, dim1: usize, omega: &CeCochain, h2: &[Vec<Q>]) -> Result<SplitCochain> {
    if !h2.is_empty() {
        for xi in h2 {
            let bad = !ce_contract(omega, xi).is_empty() || !ce_contract(&ce.d(omega), xi).is_empty();
            if bad {
                return Err(Error::Invalid("cochain is not basic for the given subalgebra".into()));
            }
        }
    }
    let mut out = SplitCochain::new();
    for (idx, c) in omega {
        let a: Vec<usize> = idx.iter().copied().filter(|&i| i < dim1).collect();
        let b: Vec<usize> = idx.iter().copied().filter(|&i| i >= dim1).collect();
        // evaluate ω on (e_a…, e_b…): sign of sorting the concatenation
        let mut cat = a.clone();
        cat.extend_from_slice(&b);
        let (s, _) = sort_with_sign(&cat).expect("distinct");
        let key = (a, b.iter().map(|i| i - dim1).collect());
        let v = Q::from_integer(s.into()) * c;
        let e = out.entry(key).or_insert_with(Q::zero);
        *e += v;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Inverse of [`natural_split`].
pub fn natural_split_inv(dim1: usize, split: &SplitCochain) -> CeCochain {
    let mut out = CeCochain::new();
    for ((a, b), c) in split {
        let mut cat = a.clone();
        cat.extend(b.iter().map(|i| i + dim1));
        if let Some((s, sorted)) = sort_with_sign(&cat) {
            add_cochain(&mut out, sorted, Q::from_integer(s.into()) * c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn heisenberg_cohomology() {
        let h = LieAlgebra::new(names(&["X", "Y", "Z"]), &[(0, 1, 2, q(1))]).unwrap();
        let ce = CEComplex::new(&h);
        assert!(ce.d_squared_vanishes());
        assert_eq!(ce.cohomology().betti, vec![1, 2, 2, 1]);
    }

    #[test]
    fn delta_of_affine_algebra() {
        let g = LieAlgebra::new(names(&["A", "B"]), &[(0, 1, 1, q(1))]).unwrap();
        assert_eq!(g.delta_character(), vec![q(1), q(0)]);
    }

    #[test]
    fn split_round_trip() {
        let g = LieAlgebra::abelian(names(&["a", "b", "c"]));
        let ce = CEComplex::new(&g);
        for k in 0..=3 {
            for idx in ce.basis(k) {
                let w: CeCochain = [(idx.clone(), q(3))].into_iter().collect();
                let s = natural_split(&ce, 1, &w, &[]).unwrap();
                assert_eq!(natural_split_inv(1, &s), w);
            }
        }
    }
}
