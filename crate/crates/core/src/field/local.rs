//! Completions at primes above p and the ring O_F ⊗ Z_p.

use super::{FieldElem, NumberFieldData, PrimeSpec};
use crate::error::{Error, Result};
use crate::padic::{ContextSpec, Ctx, PAdicContext, PAdicElement, PAdicPolynomial};

/// A prime 𝔭 | p with its local context and the p-adic images of θ under
/// each embedding σ ∼ 𝔭.
#[derive(Debug, Clone)]
pub struct LocalPrime {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    pub ctx: Ctx,
    /// Global embedding indices in this fiber.
    pub embeddings: Vec<usize>,
    theta: Vec<PAdicElement>,
}

impl LocalPrime {
    pub(crate) fn rational(p: u64, precision: i64) -> Result<Self> {
        Ok(LocalPrime { p, e: 1, f: 1, ctx: PAdicContext::qp(p, precision)?, embeddings: vec![0], theta: vec![] })
    }

    pub(crate) fn build(data: &NumberFieldData, ps: &PrimeSpec, precision: i64) -> Result<Self> {
        let spec = ContextSpec { precision, ..ps.context.clone() };
        let ctx = PAdicContext::new(spec).map_err(|e| Error::InvalidField(e.to_string()))?;
        if ctx.e != ps.e || ctx.f != ps.f || ctx.p() != ps.p {
            return Err(Error::InvalidField(format!("local context at {} disagrees with (e, f)", ps.p)));
        }
        let minpoly = PAdicPolynomial::from_i64s(&ctx, &data.file.minpoly)?;
        let mut theta = Vec::new();
        for seed in &ps.seeds {
            if seed.len() > ctx.dim() {
                return Err(Error::InvalidField("seed has too many coordinates".into()));
            }
            let mut raw = vec![0u128; ctx.dim()];
            for (i, &c) in seed.iter().enumerate() {
                raw[i] = ctx.z.from_i64(c);
            }
            let x0 = PAdicElement::from_raw(&ctx, raw, 0, ctx.n());
            if minpoly.eval(&x0)?.valuation().is_some_and(|v| v < 1) {
                return Err(Error::InvalidField(format!("seed {seed:?} is not a root mod 𝔭")));
            }
            let r = minpoly
                .newton_root(&x0)
                .map_err(|_| Error::InvalidField(format!("seed {seed:?} does not lift")))?;
            theta.push(r);
        }
        let embeddings = ps
            .embeddings
            .iter()
            .map(|l| data.label_index[l])
            .collect();
        Ok(LocalPrime { p: ps.p, e: ps.e, f: ps.f, ctx, embeddings, theta })
    }

    /// Image of a global element under the k-th embedding of this fiber.
    pub fn image_under(&self, x: &[i128], k: usize) -> Result<PAdicElement> {
        if self.theta.is_empty() {
            return Ok(PAdicElement::from_i128(&self.ctx, x[0]));
        }
        let t = &self.theta[k];
        let mut acc = PAdicElement::zero(&self.ctx);
        for &c in x.iter().rev() {
            acc = acc.mul(t)?.add(&PAdicElement::from_i128(&self.ctx, c))?;
        }
        Ok(acc)
    }

    /// Image in O_{F_𝔭} (first embedding of the fiber).
    pub fn image(&self, x: &[i128]) -> Result<PAdicElement> {
        self.image_under(x, 0)
    }

    pub fn uniformizer(&self) -> PAdicElement {
        PAdicElement::uniformizer(&self.ctx)
    }

    /// Image of π_𝔭 under the k-th embedding of the fiber. In an unramified
    /// completion π_𝔭 = p is fixed by every conjugation.
    pub fn uniformizer_conjugate(&self, k: usize) -> Result<PAdicElement> {
        if self.e == 1 || k == 0 {
            Ok(self.uniformizer())
        } else {
            Err(Error::Unsupported("conjugates of a ramified uniformizer".into()))
        }
    }

    pub fn norm_of_prime(&self) -> u64 {
        self.p.pow(self.f)
    }
}

/// An element of O_F ⊗ Z_p, one component per prime above p.
#[derive(Debug, Clone, PartialEq)]
pub struct OFpElement {
    pub comps: Vec<PAdicElement>,
}

impl OFpElement {
    pub fn one(primes: &[LocalPrime]) -> Self {
        OFpElement { comps: primes.iter().map(|l| PAdicElement::one(&l.ctx)).collect() }
    }

    pub fn embed(primes: &[LocalPrime], x: &[i128]) -> Result<Self> {
        Ok(OFpElement { comps: primes.iter().map(|l| l.image(x)).collect::<Result<_>>()? })
    }

    fn zip(&self, o: &Self, f: impl Fn(&PAdicElement, &PAdicElement) -> Result<PAdicElement>) -> Result<Self> {
        Ok(OFpElement { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| f(a, b)).collect::<Result<_>>()? })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a.add(b))
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a.sub(b))
    }
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a.mul(b))
    }
    pub fn is_unit(&self) -> bool {
        self.comps.iter().all(|c| c.is_unit())
    }
    pub fn eq_at_prec(&self, o: &Self) -> bool {
        self.comps.iter().zip(&o.comps).all(|(a, b)| a.eq_at_prec(b))
    }
}

/// Ring map O_F → O_F ⊗ Z_p.
pub fn embed_global(primes: &[LocalPrime], x: &FieldElem) -> Result<OFpElement> {
    OFpElement::embed(primes, x)
}

/// Componentwise (π_𝔭^{n_𝔭}).
pub fn uniformizer_power(primes: &[LocalPrime], exps: &[u32]) -> Result<OFpElement> {
    Ok(OFpElement {
        comps: primes
            .iter()
            .zip(exps)
            .map(|(l, &n)| l.uniformizer().pow(n as i64))
            .collect::<Result<_>>()?,
    })
}

/// Scalar ∏_σ σ(π_𝔭(σ))^{n_𝔭(σ) m_σ} in `target`, with `m` indexed by
/// global embedding labels.
pub fn uniformizer_scalar(primes: &[LocalPrime], exps: &[u32], m: &[i64], target: &Ctx) -> Result<PAdicElement> {
    let mut acc = PAdicElement::one(target);
    for (l, &n) in primes.iter().zip(exps) {
        for (k, &sigma) in l.embeddings.iter().enumerate() {
            let t = n as i64 * m[sigma];
            if t == 0 {
                continue;
            }
            let u = l.uniformizer_conjugate(k)?;
            let u = if u.ctx().spec == target.spec { u } else { u.embed(target)? };
            acc = acc.mul(&u.pow(t)?)?;
        }
    }
    Ok(acc)
}
