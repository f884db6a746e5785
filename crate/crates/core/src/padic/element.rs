use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::context::Ctx;
use crate::error::{Error, Result};

/// A fixed-precision element ϖ^v · u of L with u a unit known modulo
/// ϖ^(prec - v). Zero at precision `prec` has no valuation.
#[derive(Clone)]
pub struct PAdicElement {
    ctx: Ctx,
    val: Option<i64>,
    unit: Vec<u128>,
    prec: i64,
}

/// Serialized form: canonical base-p digits per basis coordinate,
/// least significant first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub context: String,
    pub valuation: Option<i64>,
    pub digits: Vec<Vec<u32>>,
    pub precision: i64,
}

impl PAdicElement {
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }
    pub fn valuation(&self) -> Option<i64> {
        self.val
    }
    pub fn precision(&self) -> i64 {
        self.prec
    }
    pub fn unit_part(&self) -> &[u128] {
        &self.unit
    }
    /// True if every known digit vanishes.
    pub fn is_zero(&self) -> bool {
        self.val.is_none()
    }
    pub fn is_unit(&self) -> bool {
        self.val == Some(0)
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Self::zero_at(ctx, ctx.n())
    }

    pub fn zero_at(ctx: &Ctx, prec: i64) -> Self {
        PAdicElement {
            ctx: ctx.clone(),
            val: None,
            unit: vec![0; ctx.dim()],
            prec: prec.min(ctx.n()),
        }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::from_i64(ctx, 1)
    }

    pub fn from_i64(ctx: &Ctx, n: i64) -> Self {
        Self::from_raw(ctx, ctx.int_raw(n as i128), 0, ctx.n())
    }

    pub fn from_i128(ctx: &Ctx, n: i128) -> Self {
        Self::from_raw(ctx, ctx.int_raw(n), 0, ctx.n())
    }

    pub fn from_rational(ctx: &Ctx, num: i128, den: i128) -> Result<Self> {
        let a = Self::from_i128(ctx, num);
        let b = Self::from_i128(ctx, den);
        a.div(&b)
    }

    pub fn from_bigrational(ctx: &Ctx, q: &num_rational::BigRational) -> Result<Self> {
        let num = bigint_to_element(ctx, q.numer());
        let den = bigint_to_element(ctx, q.denom());
        num.div(&den)
    }

    /// Uniformizer ϖ.
    pub fn uniformizer(ctx: &Ctx) -> Self {
        Self::from_raw(ctx, ctx.uniformizer_raw(), 0, ctx.n())
    }

    /// Generator θ of the unramified part.
    pub fn theta(ctx: &Ctx) -> Self {
        Self::from_raw(ctx, ctx.theta_raw(), 0, ctx.n())
    }

    /// Element of Z_p given by a residue modulo p^k (known to that many
    /// p-adic digits).
    pub fn from_residue(ctx: &Ctx, r: u128, p_digits: u32) -> Self {
        let prec = (p_digits as i64 * ctx.e as i64).min(ctx.n());
        Self::from_raw(ctx, ctx.int_raw(r as i128), 0, prec)
    }

    /// Value ϖ^shift · raw with raw integral and known modulo
    /// ϖ^(prec - shift). Normalises valuation and caps precision.
    pub fn from_raw(ctx: &Ctx, raw: Vec<u128>, shift: i64, prec: i64) -> Self {
        let n = ctx.n();
        let rel = prec - shift;
        if rel <= 0 {
            return Self::zero_at(ctx, prec);
        }
        let t = ctx.val_raw(&raw, rel);
        if t >= rel {
            return Self::zero_at(ctx, prec);
        }
        let v = shift + t;
        let prec = prec.min(n).min(v + n);
        let rp = prec - v;
        if rp <= 0 {
            return Self::zero_at(ctx, prec);
        }
        let exact = ctx.reduce_raw(&raw, rel);
        let u = ctx.div_pi_pow_raw(&exact, t);
        let u = ctx.reduce_raw(&u, rp);
        PAdicElement {
            ctx: ctx.clone(),
            val: Some(v),
            unit: u,
            prec,
        }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &o.ctx) || self.ctx.spec == o.ctx.spec {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.ctx.id().into(), o.ctx.id().into()))
        }
    }

    /// Valuation, treating zero as having valuation equal to its precision.
    fn v_or_prec(&self) -> i64 {
        self.val.unwrap_or(self.prec)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let prec = self.prec.min(o.prec);
        let (a, b) = match (self.val, o.val) {
            (None, _) => return Ok(o.with_prec(prec)),
            (_, None) => return Ok(self.with_prec(prec)),
            (Some(_), Some(_)) if self.v_or_prec() <= o.v_or_prec() => (self, o),
            _ => (o, self),
        };
        let v = a.val.unwrap();
        let d = b.val.unwrap() - v;
        let mut raw = a.unit.clone();
        if d < prec - v {
            let shifted = self.ctx.mul_pi_pow_raw(&b.unit, d);
            raw = self.ctx.add_raw(&raw, &shifted);
        }
        Ok(Self::from_raw(&self.ctx, raw, v, prec))
    }

    pub fn neg(&self) -> Self {
        let unit = self.unit.iter().map(|&x| self.ctx.z.neg(x)).collect();
        let mut r = self.clone();
        r.unit = unit;
        if let Some(v) = r.val {
            r.unit = self.ctx.reduce_raw(&r.unit, r.prec - v);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let prec = (self.v_or_prec() + o.prec).min(o.v_or_prec() + self.prec);
        match (self.val, o.val) {
            (Some(a), Some(b)) => {
                let raw = self.ctx.mul_raw(&self.unit, &o.unit);
                Ok(Self::from_raw(&self.ctx, raw, a + b, prec))
            }
            _ => Ok(Self::zero_at(&self.ctx, prec)),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.val.ok_or(Error::DivisionByZero)?;
        let rp = self.prec - v;
        let u = self.ctx.inv_unit_raw(&self.unit)?;
        Ok(Self::from_raw(&self.ctx, u, -v, -v + rp))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.mul(&o.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut r = Self::one(&self.ctx);
        let mut b = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b)?;
            }
            b = b.mul(&b)?;
            k >>= 1;
        }
        Ok(r)
    }

    /// Lower the absolute precision (never raises it).
    pub fn with_prec(&self, prec: i64) -> Self {
        let prec = prec.min(self.prec);
        match self.val {
            None => Self::zero_at(&self.ctx, prec),
            Some(v) => Self::from_raw(&self.ctx, self.unit.clone(), v, prec),
        }
    }

    /// Equality modulo the smaller of the two precisions.
    pub fn eq_at_prec(&self, o: &Self) -> bool {
        self.sub(o).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// Multiply by an integer.
    pub fn scale(&self, n: i64) -> Self {
        self.mul(&Self::from_i64(&self.ctx, n)).expect("same context")
    }

    /// Canonical raw coordinates of an integral element modulo ϖ^n.
    pub fn to_raw_mod(&self, n: i64) -> Result<Vec<u128>> {
        if n > self.prec {
            return Err(Error::PrecisionInsufficient(format!("need {n} digits, have {}", self.prec)));
        }
        match self.val {
            None => Ok(vec![0; self.ctx.dim()]),
            Some(v) if v < 0 => Err(Error::NotAUnit(format!("valuation {v} < 0"))),
            Some(v) => Ok(self.ctx.reduce_raw(&self.ctx.mul_pi_pow_raw(&self.unit, v), n)),
        }
    }

    /// Z_p residue modulo p^k of an integral element of a degree-one
    /// context.
    pub fn to_residue(&self, z: &crate::zpk::Zpk) -> Result<u128> {
        if self.ctx.degree() != 1 {
            return Err(Error::Unsupported("residue of an extension element".into()));
        }
        match self.val {
            None => Ok(0),
            Some(v) if v < 0 => Err(Error::NotAUnit(format!("valuation {v} < 0"))),
            Some(v) => {
                let pv = z.pow(self.ctx.p() as u128, v as u64);
                Ok(z.mul(pv, z.red(self.unit[0])))
            }
        }
    }

    /// Image of an element of a degree-one context in a larger context over
    /// the same prime.
    pub fn embed(&self, target: &Ctx) -> Result<Self> {
        if self.ctx.degree() != 1 || self.ctx.p() != target.p() {
            return Err(Error::ContextMismatch(self.ctx.id().into(), target.id().into()));
        }
        let e = target.e as i64;
        match self.val {
            None => Ok(Self::zero_at(target, self.prec * e)),
            Some(v) => {
                let u = Self::from_raw(target, target.int_raw(self.unit[0] as i128), 0, (self.prec - v) * e);
                let pv = Self::from_i64(target, self.ctx.p() as i64).pow(v)?;
                u.mul(&pv)
            }
        }
    }

    /// v_p-normalised valuation as a rational e.g. 1/2 for ϖ in a ramified
    /// quadratic extension.
    pub fn vp(&self) -> Option<num_rational::Ratio<i64>> {
        self.val.map(|v| num_rational::Ratio::new(v, self.ctx.e as i64))
    }

    pub fn to_record(&self) -> ElementRecord {
        let p = self.ctx.p() as u128;
        let (e, f) = (self.ctx.e as i64, self.ctx.f as usize);
        let rp = match self.val {
            Some(v) => self.prec - v,
            None => 0,
        };
        let mut digits = Vec::with_capacity(self.unit.len());
        for j in 0..e {
            let len = ((rp - j + e - 1).max(0) / e) as usize;
            for i in 0..f {
                let mut x = self.unit[j as usize * f + i];
                let mut d = Vec::with_capacity(len);
                for _ in 0..len {
                    d.push((x % p) as u32);
                    x /= p;
                }
                digits.push(d);
            }
        }
        ElementRecord {
            context: self.ctx.id().to_string(),
            valuation: self.val,
            digits,
            precision: self.prec,
        }
    }

    pub fn from_record(ctx: &Ctx, r: &ElementRecord) -> Result<Self> {
        if r.context != ctx.id() {
            return Err(Error::ContextMismatch(r.context.clone(), ctx.id().into()));
        }
        if r.digits.len() != ctx.dim() && r.valuation.is_some() {
            return Err(Error::Parse("digit vector has wrong length".into()));
        }
        match r.valuation {
            None => Ok(Self::zero_at(ctx, r.precision)),
            Some(v) => {
                let p = ctx.p() as u128;
                let raw: Vec<u128> = r
                    .digits
                    .iter()
                    .map(|d| d.iter().rev().fold(0u128, |acc, &x| acc * p + x as u128))
                    .collect();
                let el = Self::from_raw(ctx, raw, v, r.precision);
                if el.val != Some(v) {
                    return Err(Error::Parse("unit part is not a unit".into()));
                }
                Ok(el)
            }
        }
    }
}

/// Teichmüller lift of an integer residue: the unique root of unity of
/// order prime to p congruent to it.
pub fn teichmuller(residue: i64, ctx: &Ctx) -> Result<PAdicElement> {
    let p = ctx.p() as i64;
    if residue.rem_euclid(p) == 0 {
        return Err(Error::NotCoprime(residue, ctx.p()));
    }
    teichmuller_of(&PAdicElement::from_i64(ctx, residue))
}

/// Teichmüller lift of an arbitrary unit of O_L.
pub fn teichmuller_of(u: &PAdicElement) -> Result<PAdicElement> {
    if !u.is_unit() {
        return Err(Error::NotAUnit(u.to_string()));
    }
    let ctx = u.ctx().clone();
    let q = ctx.q() as i64;
    let mut x = u.clone();
    // each q-th power gains at least one p-adic digit
    for _ in 0..=ctx.n() {
        let y = x.pow(q)?;
        if y == x {
            return Ok(x);
        }
        x = y;
    }
    Ok(x)
}

fn bigint_to_element(ctx: &Ctx, n: &num_bigint::BigInt) -> PAdicElement {
    use num_traits::{Signed, ToPrimitive, Zero};
    // Strip powers of p first so that huge numerators keep their valuation.
    let p = num_bigint::BigInt::from(ctx.p());
    let mut m = n.clone();
    if m.is_zero() {
        return PAdicElement::zero(ctx);
    }
    let mut v = 0i64;
    while (&m % &p).is_zero() {
        m /= &p;
        v += 1;
    }
    let modulus = num_bigint::BigInt::from(ctx.z.m);
    let mut r = &m % &modulus;
    if r.is_negative() {
        r += &modulus;
    }
    let unit = PAdicElement::from_raw(ctx, ctx.int_raw(r.to_i128().unwrap()), 0, ctx.n());
    let pv = PAdicElement::from_i64(ctx, ctx.p() as i64).pow(v).unwrap();
    unit.mul(&pv).unwrap()
}

impl PartialEq for PAdicElement {
    /// Bit-level equality of the normalised representation.
    fn eq(&self, o: &Self) -> bool {
        self.ctx.spec == o.ctx.spec && self.val == o.val && self.prec == o.prec && self.unit == o.unit
    }
}

impl fmt::Debug for PAdicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PAdicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.val {
            None => write!(f, "O(ϖ^{})", self.prec),
            Some(v) => {
                if self.ctx.degree() == 1 {
                    write!(f, "{}^{} * {} + O({}^{})", self.ctx.p(), v, self.unit[0], self.ctx.p(), self.prec)
                } else {
                    write!(f, "ϖ^{} * {:?} + O(ϖ^{})", v, self.unit, self.prec)
                }
            }
        }
    }
}
