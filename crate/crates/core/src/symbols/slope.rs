//! Slope ≤ h subspaces of classical spaces and the small-slope test.

use num_rational::{BigRational, Ratio};

use crate::coeffs::Weight;
use crate::error::{Error, Result};
use crate::field::LocalPrime;
use crate::padic::{linalg, slope_le_factor, Ctx, PAdicElement, PAdicPolynomial};
use crate::qlinalg::{self, QMat};

fn to_padic(ctx: &Ctx, a: &QMat) -> Result<linalg::Matrix> {
    a.iter().map(|r| r.iter().map(|x| PAdicElement::from_bigrational(ctx, x)).collect()).collect()
}

/// det(1 - U X) of a rational matrix, as a polynomial over L.
pub fn reverse_charpoly(ctx: &Ctx, u: &QMat) -> Result<PAdicPolynomial> {
    let mut c: Vec<BigRational> = qlinalg::charpoly(u);
    c.reverse();
    PAdicPolynomial::new(ctx, c.iter().map(|x| PAdicElement::from_bigrational(ctx, x)).collect::<Result<_>>()?)
}

/// P(A) for a polynomial P over L and a square matrix A over L.
pub fn eval_matrix(p: &PAdicPolynomial, a: &linalg::Matrix) -> Result<linalg::Matrix> {
    let ctx = p.ctx().clone();
    let n = a.len();
    let mut acc = vec![vec![PAdicElement::zero(&ctx); n]; n];
    for c in p.coeffs().iter().rev() {
        // acc = acc·A + c·I
        let mut next = vec![vec![PAdicElement::zero(&ctx); n]; n];
        for i in 0..n {
            for t in 0..n {
                if acc[i][t].is_zero() {
                    continue;
                }
                for j in 0..n {
                    next[i][j] = next[i][j].add(&acc[i][t].mul(&a[t][j])?)?;
                }
            }
            next[i][i] = next[i][i].add(c)?;
        }
        acc = next;
    }
    Ok(acc)
}

/// Basis (coordinate vectors over L) of the slope ≤ h part for the
/// operator with rational matrix `u`.
pub fn slope_le_subspace(ctx: &Ctx, u: &QMat, h: Ratio<i64>) -> Result<Vec<Vec<PAdicElement>>> {
    let d = u.len();
    if d == 0 {
        return Ok(vec![]);
    }
    let q = reverse_charpoly(ctx, u)?;
    let (ple, _) = slope_le_factor(&q, h)?;
    let m = ple.degree();
    if m == 0 {
        return Ok(vec![]);
    }
    let star = ple.reverse()?;
    let ua = to_padic(ctx, u)?;
    let kernel = linalg::kernel(ctx, &eval_matrix(&star, &ua)?, d)?;
    if kernel.len() != m {
        return Err(Error::PrecisionInsufficient(format!("slope ≤ {h} kernel has dimension {} not {m}", kernel.len())));
    }
    Ok(kernel)
}

/// True iff v_p(λ_𝔭) < (k_𝔭⁰ + v_𝔭 + 1)/e_𝔭 for every 𝔭 | p, slopes
/// measured with v_p(p) = 1.
pub fn is_small_slope(weight: &Weight, primes: &[LocalPrime], eig: &[PAdicElement]) -> bool {
    primes.len() == eig.len()
        && primes.iter().zip(eig).all(|(pr, lam)| match lam.vp() {
            None => false,
            Some(h) => h < Ratio::new(weight.k0(pr) + weight.v_prime(pr) + 1, pr.e as i64),
        })
}
