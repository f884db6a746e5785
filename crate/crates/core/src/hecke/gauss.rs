//! Gauss sums. The additive character on a finite idele x supported at
//! the primes above p is ζ_{p^M}^{-c} with c / p^M the fractional part of
//! Σ_𝔭 Tr_{F_𝔭/Q_p}(x_𝔭).

use super::HeckeCharacter;
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::padic::{root_of_unity, trace_scaled, PAdicElement};
use crate::ray_class::Residue;

/// Exponent of the additive character: returns (c, M) with
/// e_F(x) = ζ_{p^M}^{-c}.
pub fn additive_exponent(comps: &[PAdicElement]) -> Result<(u128, u32)> {
    let mut parts = Vec::new();
    for x in comps {
        parts.push(trace_scaled(x)?);
    }
    let big_m = parts.iter().map(|&(_, m)| m).max().unwrap_or(0);
    let Some(x0) = comps.first() else { return Ok((0, 0)) };
    let p = x0.ctx().p() as u128;
    let modulus = p.pow(big_m);
    let mut c = 0u128;
    for (t, m) in parts {
        let t = t % modulus;
        c = (c + t * p.pow(big_m - m) % modulus) % modulus;
    }
    Ok((c, big_m))
}

impl HeckeCharacter {
    /// e_F(ζ b δ^{-1} π_f^{-1}) with the idele supported at f.
    fn additive(&self, b: &Residue, zeta: &FieldElem, delta: &FieldElem) -> Result<PAdicElement> {
        let mut comps = Vec::new();
        for (i, l) in self.primes.iter().enumerate() {
            let n = self.ring.exps[i];
            if n == 0 {
                continue;
            }
            let bl = PAdicElement::from_raw(&l.ctx, b[i].clone(), 0, l.ctx.n());
            let x = bl
                .mul(&l.image(zeta)?)?
                .div(&l.image(delta)?)?
                .mul(&l.uniformizer().pow(-(n as i64))?)?;
            comps.push(x);
        }
        let (c, m) = additive_exponent(&comps)?;
        if m == 0 {
            return Ok(PAdicElement::one(&self.l));
        }
        let z = root_of_unity(&self.l, self.primes[0].p.pow(m))?;
        z.pow(-(c as i64))
    }

    fn check_different(&self, delta: &FieldElem) -> Result<()> {
        let want = self.field.norm(&self.field.different_generator())?;
        let got = self.field.norm(delta)?;
        if got != want && got != -want.clone() {
            return Err(Error::Precondition("δ does not generate the different".into()));
        }
        Ok(())
    }

    /// τ(φ) computed with the different generated by `delta`.
    pub fn gauss_sum_with(&self, delta: &FieldElem) -> Result<PAdicElement> {
        self.twisted_gauss_sum_with(&self.field.one(), delta)
    }

    pub fn gauss_sum(&self) -> Result<PAdicElement> {
        self.gauss_sum_with(&self.field.different_generator())
    }

    /// φ(d^{-1}) Σ_b φ_f(b) e_F(ζ b d^{-1} π_f^{-1}), summed directly.
    pub fn twisted_gauss_sum_with(&self, zeta: &FieldElem, delta: &FieldElem) -> Result<PAdicElement> {
        self.check_different(delta)?;
        if !self.is_primitive() {
            return Err(Error::Precondition("f is not the conductor of φ".into()));
        }
        let mut acc = PAdicElement::zero(&self.l);
        for b in self.ring.units() {
            let term = self.finite_value(&b)?.mul(&self.additive(&b, zeta, delta)?)?;
            acc = acc.add(&term)?;
        }
        // φ(d^{-1}) = φ_∞(δ) since φ(δ) = 1 and φ is unramified away from f
        acc.mul(&self.phi_infinity(delta)?)
    }

    pub fn twisted_gauss_sum(&self, zeta: &FieldElem) -> Result<PAdicElement> {
        self.twisted_gauss_sum_with(zeta, &self.field.different_generator())
    }
}
