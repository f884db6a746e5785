//! Polynomials over L, Newton polygons and slope factorisation.

use num_rational::Ratio;

use super::context::Ctx;
use super::element::PAdicElement;
use super::linalg;
use crate::error::{Error, Result};

/// Dense polynomial, coefficients from the constant term upwards.
#[derive(Clone)]
pub struct PAdicPolynomial {
    ctx: Ctx,
    coeffs: Vec<PAdicElement>,
}

impl PartialEq for PAdicPolynomial {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs
    }
}

impl std::fmt::Debug for PAdicPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl PAdicPolynomial {
    /// Build from coefficients, dropping leading terms that vanish at their
    /// precision. Errors if nothing survives.
    pub fn new(ctx: &Ctx, mut coeffs: Vec<PAdicElement>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(PAdicPolynomial { ctx: ctx.clone(), coeffs })
    }

    pub fn from_i64s(ctx: &Ctx, c: &[i64]) -> Result<Self> {
        Self::new(ctx, c.iter().map(|&x| PAdicElement::from_i64(ctx, x)).collect())
    }

    /// Monic polynomial ∏ (X - r).
    pub fn from_roots(ctx: &Ctx, roots: &[PAdicElement]) -> Result<Self> {
        let mut p = Self::new(ctx, vec![PAdicElement::one(ctx)])?;
        for r in roots {
            let lin = Self::new(ctx, vec![r.neg(), PAdicElement::one(ctx)])?;
            p = p.mul(&lin)?;
        }
        Ok(p)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }
    pub fn coeffs(&self) -> &[PAdicElement] {
        &self.coeffs
    }
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn coeff(&self, i: usize) -> PAdicElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| PAdicElement::zero(&self.ctx))
    }

    /// X^deg Q(1/X).
    pub fn reverse(&self) -> Result<Self> {
        let mut c = self.coeffs.clone();
        c.reverse();
        // a vanishing constant term becomes a vanishing leading term; keep
        // the stated degree by refusing that case
        if c.last().is_some_and(|x| x.is_zero()) {
            return Err(Error::Precondition("constant term vanishes".into()));
        }
        Self::new(&self.ctx, c)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect::<Result<Vec<_>>>()?;
        Self::new(&self.ctx, c)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect::<Result<Vec<_>>>()?;
        Ok(PAdicPolynomial { ctx: self.ctx.clone(), coeffs: c })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let mut c = vec![PAdicElement::zero(&self.ctx); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b)?)?;
            }
        }
        Self::new(&self.ctx, c)
    }

    pub fn scale(&self, s: &PAdicElement) -> Result<Self> {
        let c = self.coeffs.iter().map(|x| x.mul(s)).collect::<Result<Vec<_>>>()?;
        Self::new(&self.ctx, c)
    }

    pub fn eval(&self, x: &PAdicElement) -> Result<PAdicElement> {
        let mut acc = PAdicElement::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(c)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Result<Self> {
        if self.degree() == 0 {
            let z = vec![PAdicElement::zero(&self.ctx)];
            return Ok(PAdicPolynomial { ctx: self.ctx.clone(), coeffs: z });
        }
        let c = (1..self.coeffs.len()).map(|i| self.coeffs[i].scale(i as i64)).collect();
        Self::new(&self.ctx, c)
    }

    /// Every coefficient vanishes at its precision.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficientwise agreement at the smaller of the two precisions.
    pub fn eq_at_prec(&self, o: &Self) -> bool {
        self.sub(o).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// Newton iteration for a simple root starting from `x0`.
    pub fn newton_root(&self, x0: &PAdicElement) -> Result<PAdicElement> {
        let d = self.derivative()?;
        let mut x = x0.clone();
        for _ in 0..(2 * self.ctx.n() + 8) {
            let fx = self.eval(&x)?;
            if fx.is_zero() {
                return Ok(x);
            }
            let step = fx.div(&d.eval(&x)?)?;
            x = x.sub(&step)?;
        }
        Err(Error::NonConvergence("Newton iteration for a root".into()))
    }
}

/// Root valuations of `q`, normalised so that v(p) = 1, with multiplicity.
/// Segments of the lower convex hull of (i, v(c_i)) are listed from left
/// to right; a segment of slope s carries roots of valuation -s.
pub fn newton_polygon(q: &PAdicPolynomial) -> Result<Vec<(Ratio<i64>, usize)>> {
    let e = q.ctx.e as i64;
    let pts: Vec<(i64, i64)> = q
        .coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.valuation().map(|v| (i as i64, v)))
        .collect();
    if pts.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if pts[0].0 != 0 {
        return Err(Error::Precondition("constant term vanishes; root at zero".into()));
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b if it lies on or above segment a -> pt
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    Ok(hull
        .windows(2)
        .map(|w| {
            let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            (Ratio::new(-dy, dx * e), dx as usize)
        })
        .collect())
}

/// Split Q (with Q(0) a unit) as P_le · P_gt where the roots of P_le* have
/// valuation ≤ h and those of P_gt* valuation > h. P_le(0) = 1.
pub fn slope_le_factor(q: &PAdicPolynomial, h: Ratio<i64>) -> Result<(PAdicPolynomial, PAdicPolynomial)> {
    let ctx = q.ctx.clone();
    if !q.coeffs[0].is_unit() {
        return Err(Error::Precondition("Q(0) is not a unit".into()));
    }
    let n = q.degree();
    let qs = q.reverse()?;
    let d: usize = newton_polygon(&qs)?
        .iter()
        .filter(|(s, _)| *s > h)
        .map(|(_, m)| m)
        .sum();
    let one = PAdicPolynomial::new(&ctx, vec![PAdicElement::one(&ctx)])?;
    if d == 0 {
        let c0 = q.coeffs[0].clone();
        let ple = q.scale(&c0.inv()?)?;
        return Ok((ple, PAdicPolynomial::new(&ctx, vec![c0])?));
    }
    if d == n {
        return Ok((one, q.clone()));
    }
    // Q* = A B with B monic of degree d collecting the small roots.
    let mut a = PAdicPolynomial::new(&ctx, qs.coeffs[d..].to_vec())?;
    let mut bc = vec![PAdicElement::zero(&ctx); d];
    bc.push(PAdicElement::one(&ctx));
    let mut b = PAdicPolynomial { ctx: ctx.clone(), coeffs: bc };
    let mut converged = false;
    for _ in 0..(2 * ctx.n() + 8) {
        let err = qs.sub(&a.mul(&b)?)?;
        if err.is_zero() {
            converged = true;
            break;
        }
        let (da, db) = sylvester_step(&a, &b, &err, n, d)?;
        a = a.add(&da)?;
        b = PAdicPolynomial { ctx: ctx.clone(), coeffs: b.add(&db)?.coeffs };
    }
    if !converged {
        return Err(Error::PrecisionInsufficient("slope factors did not separate".into()));
    }
    let a_star = a.reverse()?;
    let mut bcoef = b.coeffs.clone();
    bcoef.resize(d + 1, PAdicElement::zero(&ctx));
    bcoef.reverse();
    let b_star = PAdicPolynomial::new(&ctx, bcoef)?;
    let lead = a_star.coeffs[0].clone();
    let ple = a_star.scale(&lead.inv()?)?;
    let pgt = b_star.scale(&lead)?;
    Ok((ple, pgt))
}

/// Solve A·δB + B·δA = E with deg δB < d and deg δA ≤ n - d.
fn sylvester_step(
    a: &PAdicPolynomial,
    b: &PAdicPolynomial,
    err: &PAdicPolynomial,
    n: usize,
    d: usize,
) -> Result<(PAdicPolynomial, PAdicPolynomial)> {
    let ctx = &a.ctx;
    let zero = PAdicElement::zero(ctx);
    let mut m = vec![vec![zero.clone(); n + 1]; n + 1];
    for j in 0..d {
        for (i, c) in a.coeffs.iter().enumerate() {
            if i + j <= n {
                m[i + j][j] = c.clone();
            }
        }
    }
    for j in 0..=(n - d) {
        for (i, c) in b.coeffs.iter().enumerate() {
            if i + j <= n {
                m[i + j][d + j] = c.clone();
            }
        }
    }
    let rhs: Vec<PAdicElement> = (0..=n).map(|i| err.coeff(i)).collect();
    let x = linalg::solve(&m, &rhs)?;
    let db = PAdicPolynomial { ctx: ctx.clone(), coeffs: x[..d].to_vec() };
    let da = PAdicPolynomial { ctx: ctx.clone(), coeffs: x[d..].to_vec() };
    Ok((da, db))
}
