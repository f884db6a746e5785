//! Coefficient modules: V_λ, its dual, and truncated distributions D_λ.

pub mod expand;
pub mod moments;
pub mod weight;

pub use moments::{act_v, box_indices, multi_indices, DualPolySymbol, MomentDistribution, MomentRecord};
pub use weight::{Mat2, Sigma0Matrix, Weight};

use crate::error::{Error, Result};
use crate::padic::PAdicElement;

/// For ψ = c · z^r on a coset, μ(ψ*) = c · μ(z^{k+v-r}); returns the
/// exponent k + v - r and the scalar c.
pub fn star_twist(k: &[i64], v: &[i64], r: &[i64], c: &PAdicElement) -> Result<(Vec<u32>, PAdicElement)> {
    if k.len() != r.len() || v.len() != r.len() {
        return Err(Error::Precondition("weight and infinity type differ in length".into()));
    }
    let mut exp = Vec::with_capacity(r.len());
    for i in 0..r.len() {
        let e = k[i] + v[i] - r[i];
        if e < 0 {
            return Err(Error::NonCritical(format!("r = {} exceeds k + v = {} at {i}", r[i], k[i] + v[i])));
        }
        exp.push(e as u32);
    }
    Ok((exp, c.clone()))
}
