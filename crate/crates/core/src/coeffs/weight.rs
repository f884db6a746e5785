//! Weights λ = (k, v) and 2×2 matrices acting on the coefficient modules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{LocalPrime, NumberFieldData};
use crate::padic::{Ctx, PAdicElement};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weight {
    pub k: Vec<i64>,
    pub v: Vec<i64>,
}

impl Weight {
    /// Checks k ≥ 0, k = ck and k + 2v parallel.
    pub fn new(field: &NumberFieldData, k: Vec<i64>, v: Vec<i64>) -> Result<Self> {
        let d = field.degree();
        if k.len() != d || v.len() != d {
            return Err(Error::InvalidWeight("weight has the wrong length".into()));
        }
        if k.iter().any(|&x| x < 0) {
            return Err(Error::InvalidWeight("k must be nonnegative".into()));
        }
        if (0..d).any(|i| k[i] != k[field.conj[i]]) {
            return Err(Error::InvalidWeight("k is not conjugation invariant".into()));
        }
        let s0 = k[0] + 2 * v[0];
        if (0..d).any(|i| k[i] + 2 * v[i] != s0) {
            return Err(Error::InvalidWeight("k + 2v is not parallel".into()));
        }
        Ok(Weight { k, v })
    }

    /// Weight (k, v) for F = Q.
    pub fn rational(k: i64, v: i64) -> Result<Self> {
        if k < 0 {
            return Err(Error::InvalidWeight("k must be nonnegative".into()));
        }
        Ok(Weight { k: vec![k], v: vec![v] })
    }

    pub fn dim(&self) -> usize {
        self.k.len()
    }

    /// k_𝔭⁰ = min over σ ∼ 𝔭 of k_σ.
    pub fn k0(&self, prime: &LocalPrime) -> i64 {
        prime.embeddings.iter().map(|&s| self.k[s]).min().unwrap_or(0)
    }

    /// v_𝔭 = Σ over σ ∼ 𝔭 of v_σ.
    pub fn v_prime(&self, prime: &LocalPrime) -> i64 {
        prime.embeddings.iter().map(|&s| self.v[s]).sum()
    }

    /// Dimension ∏(k_σ + 1) of V_λ.
    pub fn poly_dim(&self) -> usize {
        self.k.iter().map(|&k| k as usize + 1).product()
    }
}

/// A 2×2 matrix (a b; c d) with entries in one context.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat2 {
    pub a: PAdicElement,
    pub b: PAdicElement,
    pub c: PAdicElement,
    pub d: PAdicElement,
}

impl Mat2 {
    pub fn from_i64(ctx: &Ctx, a: i64, b: i64, c: i64, d: i64) -> Self {
        let f = |x| PAdicElement::from_i64(ctx, x);
        Mat2 { a: f(a), b: f(b), c: f(c), d: f(d) }
    }

    pub fn identity(ctx: &Ctx) -> Self {
        Self::from_i64(ctx, 1, 0, 0, 1)
    }

    pub fn det(&self) -> Result<PAdicElement> {
        self.a.mul(&self.d)?.sub(&self.b.mul(&self.c)?)
    }

    pub fn mul(&self, o: &Mat2) -> Result<Mat2> {
        let s = |x: &PAdicElement, y: &PAdicElement, z: &PAdicElement, w: &PAdicElement| -> Result<PAdicElement> {
            x.mul(y)?.add(&z.mul(w)?)
        };
        Ok(Mat2 {
            a: s(&self.a, &o.a, &self.b, &o.c)?,
            b: s(&self.a, &o.b, &self.b, &o.d)?,
            c: s(&self.c, &o.a, &self.d, &o.c)?,
            d: s(&self.c, &o.b, &self.d, &o.d)?,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.det().map(|d| !d.is_zero() && d.valuation().is_some_and(|v| v < d.precision())).unwrap_or(false)
    }

    /// c ∈ p O, a a unit, det ≠ 0.
    pub fn in_sigma0(&self) -> bool {
        let e = self.a.ctx().e as i64;
        let c_ok = self.c.is_zero() || self.c.valuation().is_some_and(|v| v >= e);
        c_ok && self.a.is_unit() && self.is_invertible()
    }
}

/// A matrix in GL₂(O_F ⊗ Z_p), one component per moment variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Sigma0Matrix {
    pub comps: Vec<Mat2>,
}

impl Sigma0Matrix {
    pub fn new(comps: Vec<Mat2>) -> Result<Self> {
        if comps.iter().any(|m| !m.in_sigma0()) {
            return Err(Error::NotInSigma0("need c ∈ pO, a a unit, det ≠ 0".into()));
        }
        Ok(Sigma0Matrix { comps })
    }

    pub fn rational(ctx: &Ctx, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(vec![Mat2::from_i64(ctx, a, b, c, d)])
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Ok(Sigma0Matrix { comps: self.comps.iter().zip(&o.comps).map(|(x, y)| x.mul(y)).collect::<Result<_>>()? })
    }
}
