//! Roots of unity and traces in a context.

use super::context::{cyclotomic_shifted, Ctx};
use super::element::{teichmuller_of, PAdicElement};
use crate::error::{Error, Result};

/// Level t of a cyclotomic context Q_p^{unr}(ζ_{p^t}), 0 if the Eisenstein
/// part is not cyclotomic.
pub fn cyclotomic_level(ctx: &Ctx) -> u32 {
    if ctx.e == 1 {
        return 0;
    }
    let p = ctx.p();
    (1..=8).find(|&t| cyclotomic_shifted(p, t) == ctx.spec.eisenstein).unwrap_or(0)
}

/// A generator of the residue field F_q^×, as a raw unit, searched in a
/// fixed order so the choice is deterministic.
fn residue_generator(ctx: &Ctx) -> Result<PAdicElement> {
    let p = ctx.p() as u128;
    let q = ctx.q() as u128;
    let f = ctx.f as usize;
    let mut factors = Vec::new();
    let mut m = q - 1;
    let mut l = 2;
    while m > 1 {
        if m % l == 0 {
            factors.push(l);
            while m % l == 0 {
                m /= l;
            }
        }
        l += 1;
    }
    for code in 1..q {
        let mut raw = vec![0u128; ctx.dim()];
        let mut c = code;
        for slot in raw.iter_mut().take(f) {
            *slot = c % p;
            c /= p;
        }
        let x = PAdicElement::from_raw(ctx, raw, 0, 1);
        if !x.is_unit() {
            continue;
        }
        let one = PAdicElement::one(ctx).with_prec(1);
        if factors.iter().all(|&l| !x.pow(((q - 1) / l) as i64).unwrap().eq_at_prec(&one)) {
            let full = PAdicElement::from_raw(ctx, x.unit_part().to_vec(), 0, ctx.n());
            return Ok(full);
        }
    }
    Err(Error::InvalidContext("residue field has no generator".into()))
}

/// The chosen primitive m-th root of unity in the context: a Teichmüller
/// power for the prime-to-p part times (1 + ϖ)^{p^{t-s}} for the p-part.
pub fn root_of_unity(ctx: &Ctx, m: u64) -> Result<PAdicElement> {
    if m == 0 {
        return Err(Error::Precondition("order 0".into()));
    }
    let p = ctx.p();
    let (mut m1, mut s) = (m, 0u32);
    while m1 % p == 0 {
        m1 /= p;
        s += 1;
    }
    let q = ctx.q();
    if (q - 1) % m1 != 0 {
        return Err(Error::MissingRootOfUnity(format!("order {m1} does not divide {}", q - 1)));
    }
    let mut z = if m1 == 1 {
        PAdicElement::one(ctx)
    } else {
        teichmuller_of(&residue_generator(ctx)?)?.pow(((q - 1) / m1) as i64)?
    };
    if s > 0 {
        let t = cyclotomic_level(ctx);
        if t < s {
            return Err(Error::MissingRootOfUnity(format!("needs ζ_{{{p}^{s}}}")));
        }
        let zeta = PAdicElement::one(ctx).add(&PAdicElement::uniformizer(ctx))?;
        z = z.mul(&zeta.pow((p as i64).pow(t - s))?)?;
    }
    Ok(z)
}

/// Tr_{L/Q_p}(x) written as T / p^m with T an integer residue modulo p^K.
pub fn trace_scaled(x: &PAdicElement) -> Result<(u128, u32)> {
    let ctx = x.ctx();
    let Some(v) = x.valuation() else { return Ok((0, 0)) };
    let e = ctx.e as i64;
    let m = if v < 0 { ((-v + e - 1) / e) as u32 } else { 0 };
    // y = p^m x = ϖ^{v + m e} η^{-m} u, where ϖ^e = p η
    let shift = v + m as i64 * e;
    let y = ctx.mul_pi_pow_raw(x.unit_part(), shift);
    let eta_m = ctx.pow_raw(&ctx.eta_inv_raw(), m as u64);
    let y = ctx.mul_raw(&y, &eta_m);
    let mut t = 0u128;
    for k in 0..ctx.dim() {
        let mut b = vec![0u128; ctx.dim()];
        b[k] = 1;
        let prod = ctx.mul_raw(&y, &b);
        t = ctx.z.add(t, prod[k]);
    }
    Ok((t, m))
}
