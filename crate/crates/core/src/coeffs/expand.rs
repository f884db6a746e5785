//! Truncated power series in one variable and the action table
//! T[m][t] = [z^t] det^v (b + dz)^m (a + cz)^{k-m}.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::weight::Mat2;
use crate::error::{Error, Result};
use crate::padic::{Ctx, PAdicElement};

/// Exact binomial C(n, i) for any integer n.
pub fn binom(n: i64, i: u64) -> BigInt {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for t in 0..i as i64 {
        num *= n - t;
        den *= t + 1;
    }
    num / den
}

fn scalar(ctx: &Ctx, n: &BigInt) -> Result<PAdicElement> {
    PAdicElement::from_bigrational(ctx, &BigRational::from_integer(n.clone()))
}

/// Truncated product of two series with `len` terms.
pub fn series_mul(x: &[PAdicElement], y: &[PAdicElement], len: usize) -> Result<Vec<PAdicElement>> {
    let ctx = x[0].ctx().clone();
    let mut out = vec![PAdicElement::zero(&ctx); len];
    for (i, xi) in x.iter().enumerate().take(len) {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].add(&xi.mul(yj)?)?;
        }
    }
    Ok(out)
}

/// (x0 + x1 z)^n truncated to `len` terms; n < 0 needs x0 a unit.
pub fn linear_pow(x0: &PAdicElement, x1: &PAdicElement, n: i64, len: usize) -> Result<Vec<PAdicElement>> {
    let ctx = x0.ctx().clone();
    let mut out = vec![PAdicElement::zero(&ctx); len];
    if n >= 0 {
        for (i, slot) in out.iter_mut().enumerate().take((n as usize + 1).min(len)) {
            let c = scalar(&ctx, &binom(n, i as u64))?;
            *slot = c.mul(&x0.pow(n - i as i64)?)?.mul(&x1.pow(i as i64)?)?;
        }
    } else {
        if !x0.is_unit() {
            return Err(Error::NotAUnit("constant term of a negative power".into()));
        }
        let lead = x0.pow(n)?;
        let ratio = x1.div(x0)?;
        let mut rp = PAdicElement::one(&ctx);
        for (i, slot) in out.iter_mut().enumerate() {
            let c = scalar(&ctx, &binom(n, i as u64))?;
            *slot = c.mul(&lead)?.mul(&rp)?;
            rp = rp.mul(&ratio)?;
        }
    }
    Ok(out)
}

/// Rows m = 0..rows, columns t = 0..cols of the action table of γ in
/// weight (k, v).
pub fn action_table(g: &Mat2, k: i64, v: i64, rows: usize, cols: usize) -> Result<Vec<Vec<PAdicElement>>> {
    let det_v = g.det()?.pow(v)?;
    let mut table = Vec::with_capacity(rows);
    let mut bpow = linear_pow(&g.b, &g.d, 0, cols)?;
    let bz = linear_pow(&g.b, &g.d, 1, cols)?;
    for m in 0..rows as i64 {
        let apow = linear_pow(&g.a, &g.c, k - m, cols)?;
        let row = series_mul(&bpow, &apow, cols)?;
        table.push(row.iter().map(|x| x.mul(&det_v)).collect::<Result<Vec<_>>>()?);
        bpow = series_mul(&bpow, &bz, cols)?;
    }
    Ok(table)
}
