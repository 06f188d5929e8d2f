//! Exact linear algebra over ℚ (and determinants over the scalar ring).

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::scalar::{ScalarExpr, Q};

/// Dense rational matrix, row-major.
pub type QMatrix = Vec<Vec<Q>>;

/// Reduced row-echelon form and pivot columns.
pub fn rref(m: &QMatrix, cols: usize) -> (QMatrix, Vec<usize>) {
    let mut a: QMatrix = m.clone();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Q::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..cols {
                    let t = &f * &a[r][k];
                    a[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank of a matrix with `cols` columns.
pub fn rank(m: &QMatrix, cols: usize) -> usize {
    rref(m, cols).1.len()
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per free column,
/// read off the reduced row-echelon form (deterministic).
pub fn kernel(m: &QMatrix, cols: usize) -> Vec<Vec<Q>> {
    let (a, pivots) = rref(m, cols);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        out.push(v);
    }
    out
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let aug: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    let (red, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Matrix–vector product.
pub fn mat_vec(m: &QMatrix, v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Matrix product `a·b` (`a` is `n×k`, `b` is `k×m`).
pub fn mat_mul(a: &QMatrix, b: &QMatrix, m: usize) -> QMatrix {
    a.iter().map(|row| (0..m).map(|j| row.iter().zip(b).map(|(x, r)| x * &r[j]).sum()).collect()).collect()
}

/// Permutations of `0..n` with their signs (Heap's algorithm order is not
/// needed; lexicographic order is used for determinism).
pub fn permutations(n: usize) -> Vec<(i32, Vec<usize>)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out.into_iter().map(|p| (perm_sign(&p), p)).collect()
}

/// Sign of a permutation given as an image list.
pub fn perm_sign(p: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Determinant of a square matrix over the scalar ring (Leibniz formula;
/// intended for the small matrices occurring here).
pub fn det_scalar(m: &[Vec<ScalarExpr>]) -> ScalarExpr {
    let n = m.len();
    let mut acc = ScalarExpr::zero();
    for (sign, p) in permutations(n) {
        let mut t = ScalarExpr::one();
        for (i, &j) in p.iter().enumerate() {
            t = &t * &m[i][j];
            if t.is_zero() {
                break;
            }
        }
        if sign < 0 {
            acc -= &t;
        } else {
            acc += &t;
        }
    }
    acc
}

/// Product of square matrices over the scalar ring.
pub fn mat_mul_scalar(a: &[Vec<ScalarExpr>], b: &[Vec<ScalarExpr>]) -> Vec<Vec<ScalarExpr>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn mat(rows: &[&[i64]]) -> QMatrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m, 3), 2);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&m, &k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn determinant_over_ring() {
        let s = |x: i64| ScalarExpr::int(x);
        assert_eq!(det_scalar(&[vec![s(1), s(2)], vec![s(3), s(4)]]), s(-2));
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(perm_sign(&[1, 0, 2]), -1);
    }
}
