//! Exact linear algebra over Q for the classical symbol spaces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QMat = Vec<Vec<BigRational>>;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut QMat) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut piv = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, i);
        let inv = m[r][c].recip();
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        piv.push(c);
        r += 1;
    }
    piv
}

/// Basis of the right kernel.
pub fn kernel(a: &QMat, cols: usize) -> Vec<Vec<BigRational>> {
    let mut m = a.clone();
    let piv = rref(&mut m);
    (0..cols)
        .filter(|c| !piv.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

pub fn rank(a: &QMat) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    let mut c = vec![vec![BigRational::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                c[i][j] += &a[i][t] * &b[t][j];
            }
        }
    }
    c
}

pub fn mat_vec(a: &QMat, x: &[BigRational]) -> Vec<BigRational> {
    a.iter().map(|row| row.iter().zip(x).map(|(r, y)| r * y).sum()).collect()
}

pub fn identity(n: usize) -> QMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect()
}

/// Characteristic polynomial det(X - A), constant term first
/// (Faddeev-LeVerrier).
pub fn charpoly(a: &QMat) -> Vec<BigRational> {
    let n = a.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut mk = mat_mul(a, &m);
        for i in 0..n {
            mk[i][i] += &coeffs[n - k + 1];
        }
        let am = mat_mul(a, &mk);
        let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -tr / q(k as i64);
        m = mk;
    }
    coeffs
}

/// Matrix of the restriction of `a` to the invariant subspace spanned by the
/// columns `basis`, in that basis.
pub fn restrict(a: &QMat, basis: &[Vec<BigRational>]) -> QMat {
    let n = a.len();
    let k = basis.len();
    // solve basis · X = a · basis column by column
    let mut out = vec![vec![BigRational::zero(); k]; k];
    for (j, b) in basis.iter().enumerate() {
        let img = mat_vec(a, b);
        let mut aug: QMat = (0..n)
            .map(|i| {
                let mut r: Vec<BigRational> = basis.iter().map(|v| v[i].clone()).collect();
                r.push(img[i].clone());
                r
            })
            .collect();
        rref(&mut aug);
        for i in 0..k {
            out[i][j] = aug[i][k].clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_charpoly() {
        let m = vec![vec![BigInt::from(2), BigInt::from(1)], vec![BigInt::from(7), BigInt::from(4)]];
        assert_eq!(det_int(&m), BigInt::from(1));
        let a = vec![vec![q(2), q(1)], vec![q(7), q(4)]];
        assert_eq!(charpoly(&a), vec![q(1), q(-6), q(1)]);
    }

    #[test]
    fn kernel_dimension() {
        let a = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(mat_vec(&a, &v).iter().all(|x| x.is_zero()));
        }
    }
}
