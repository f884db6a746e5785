//! Gaussian elimination over L with minimal-valuation pivoting.

use super::context::Ctx;
use super::element::PAdicElement;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<PAdicElement>>;

/// Reduced row echelon form in place. Returns the pivot columns.
/// Pivots are chosen with least valuation in the remaining block so that
/// the precision loss from each division is as small as possible.
pub fn rref(m: &mut Matrix) -> Result<Vec<usize>> {
    let rows = m.len();
    if rows == 0 {
        return Ok(vec![]);
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter_map(|i| m[i][c].valuation().map(|v| (v, i)))
            .min();
        let Some((_, piv)) = best else { continue };
        m.swap(r, piv);
        let inv = m[r][c].inv()?;
        for j in c..cols {
            m[r][j] = m[r][j].mul(&inv)?;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let t = f.mul(&m[r][j])?;
                m[i][j] = m[i][j].sub(&t)?;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// Solve `a x = b` for square or overdetermined consistent systems.
pub fn solve(a: &Matrix, b: &[PAdicElement]) -> Result<Vec<PAdicElement>> {
    let rows = a.len();
    if rows == 0 || b.len() != rows {
        return Err(Error::Precondition("shape mismatch".into()));
    }
    let cols = a[0].len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut aug)?;
    if piv.len() < cols {
        return Err(Error::SingularMatrix);
    }
    if piv.last() == Some(&cols) {
        return Err(Error::Unsolvable("inconsistent system".into()));
    }
    for row in aug.iter().skip(cols) {
        if !row[cols].is_zero() {
            return Err(Error::Unsolvable("inconsistent system".into()));
        }
    }
    Ok((0..cols).map(|i| aug[i][cols].clone()).collect())
}

/// Basis of the right kernel of `a`.
pub fn kernel(ctx: &Ctx, a: &Matrix, cols: usize) -> Result<Vec<Vec<PAdicElement>>> {
    let mut m = a.clone();
    let piv = rref(&mut m)?;
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !piv.contains(c)) {
        let mut v = vec![PAdicElement::zero(ctx); cols];
        v[free] = PAdicElement::one(ctx);
        for (r, &pc) in piv.iter().enumerate() {
            v[pc] = m[r][free].neg();
        }
        basis.push(v);
    }
    Ok(basis)
}

pub fn mat_vec(a: &Matrix, x: &[PAdicElement]) -> Result<Vec<PAdicElement>> {
    a.iter()
        .map(|row| {
            let mut s = PAdicElement::zero(x[0].ctx());
            for (r, xi) in row.iter().zip(x) {
                s = s.add(&r.mul(xi)?)?;
            }
            Ok(s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PAdicContext;

    #[test]
    fn solves_with_non_unit_entries() {
        let ctx = PAdicContext::qp(5, 12).unwrap();
        let e = |n| PAdicElement::from_i64(&ctx, n);
        let a = vec![vec![e(5), e(1)], vec![e(2), e(25)]];
        let x = vec![e(3), e(-7)];
        let b = mat_vec(&a, &x).unwrap();
        let y = solve(&a, &b).unwrap();
        for (u, v) in x.iter().zip(&y) {
            assert!(u.eq_at_prec(v), "{u} vs {v}");
        }
    }

    #[test]
    fn kernel_of_rank_one() {
        let ctx = PAdicContext::qp(3, 10).unwrap();
        let e = |n| PAdicElement::from_i64(&ctx, n);
        let a = vec![vec![e(1), e(2), e(3)], vec![e(2), e(4), e(6)]];
        let k = kernel(&ctx, &a, 3).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in mat_vec(&a, v).unwrap() {
                assert!(r.is_zero());
            }
        }
    }
}
