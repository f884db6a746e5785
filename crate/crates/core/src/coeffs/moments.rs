//! Truncated distributions D_λ and the dual polynomial module V_λ*.
//!
//! Moments are indexed by multi-indices m with one entry per variable
//! (one variable per split prime above p). A moment of total degree t is
//! carried to ϖ-adic precision min(N, e (M - t)).

use serde::{Deserialize, Serialize};

use super::expand::action_table;
use super::weight::{Mat2, Sigma0Matrix};
use crate::error::{Error, Result};
use crate::padic::{Ctx, ElementRecord, PAdicElement};

/// Multi-indices of total degree < depth, graded then lexicographic.
pub fn multi_indices(vars: usize, depth: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for t in 0..depth as u32 {
        let mut level = Vec::new();
        fill(vars, t, &mut vec![], &mut level);
        out.extend(level);
    }
    out
}

fn fill(vars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() + 1 == vars {
        cur.push(left);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    if vars == 0 {
        return;
    }
    for i in (0..=left).rev() {
        cur.push(i);
        fill(vars, left - i, cur, out);
        cur.pop();
    }
}

/// Multi-indices in the box 0 ≤ j ≤ k, lexicographic.
pub fn box_indices(k: &[i64]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    for &kk in k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=kk as u32).map(move |j| {
                    let mut w = v.clone();
                    w.push(j);
                    w
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone)]
pub struct MomentDistribution {
    pub ctx: Ctx,
    /// Weight per variable.
    pub k: Vec<i64>,
    pub v: Vec<i64>,
    pub depth: usize,
    pub index: Vec<Vec<u32>>,
    pub moments: Vec<PAdicElement>,
}

impl MomentDistribution {
    pub fn zero(ctx: &Ctx, k: &[i64], v: &[i64], depth: usize) -> Self {
        let index = multi_indices(k.len(), depth);
        let mut mu = MomentDistribution {
            ctx: ctx.clone(),
            k: k.to_vec(),
            v: v.to_vec(),
            depth,
            moments: vec![PAdicElement::zero(ctx); index.len()],
            index,
        };
        mu.apply_profile();
        mu
    }

    pub fn from_moments(ctx: &Ctx, k: &[i64], v: &[i64], depth: usize, moments: Vec<PAdicElement>) -> Result<Self> {
        let mut mu = Self::zero(ctx, k, v, depth);
        if moments.len() != mu.moments.len() {
            return Err(Error::Precondition(format!("expected {} moments", mu.moments.len())));
        }
        mu.moments = moments;
        mu.apply_profile();
        Ok(mu)
    }

    pub fn vars(&self) -> usize {
        self.k.len()
    }

    /// ϖ-adic precision carried by a moment of total degree t.
    pub fn profile(&self, t: usize) -> i64 {
        let e = self.ctx.e as i64;
        self.ctx.n().min(e * (self.depth as i64 - t as i64))
    }

    pub fn apply_profile(&mut self) {
        for (m, x) in self.index.iter().zip(self.moments.iter_mut()) {
            let t: u32 = m.iter().sum();
            *x = x.with_prec((self.ctx.n().min(self.ctx.e as i64 * (self.depth as i64 - t as i64))).max(0));
        }
    }

    pub fn position(&self, m: &[u32]) -> Option<usize> {
        self.index.iter().position(|x| x == m)
    }

    pub fn moment(&self, m: &[u32]) -> Option<&PAdicElement> {
        self.position(m).map(|i| &self.moments[i])
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let moments = self.moments.iter().zip(&o.moments).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(MomentDistribution { moments, ..self.clone() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        let moments = self.moments.iter().zip(&o.moments).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
        Ok(MomentDistribution { moments, ..self.clone() })
    }

    pub fn neg(&self) -> Self {
        MomentDistribution { moments: self.moments.iter().map(|a| a.neg()).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &PAdicElement) -> Result<Self> {
        let moments = self.moments.iter().map(|a| a.mul(c)).collect::<Result<_>>()?;
        let mut mu = MomentDistribution { moments, ..self.clone() };
        mu.apply_profile();
        Ok(mu)
    }

    pub fn is_zero(&self) -> bool {
        self.moments.iter().all(|x| x.is_zero())
    }

    pub fn eq_at_prec(&self, o: &Self) -> bool {
        self.moments.iter().zip(&o.moments).all(|(a, b)| a.eq_at_prec(b))
    }

    /// min over moments of the valuation, counting zeros at their precision.
    pub fn min_valuation(&self) -> i64 {
        self.moments.iter().map(|x| x.valuation().unwrap_or(x.precision())).min().unwrap_or(0)
    }

    /// (μ|γ)(z^m) = μ(γ · z^m), the product of one-variable tables.
    pub fn act(&self, g: &Sigma0Matrix) -> Result<Self> {
        if g.comps.len() != self.vars() {
            return Err(Error::Precondition("matrix has the wrong number of components".into()));
        }
        let tables: Vec<_> = g
            .comps
            .iter()
            .enumerate()
            .map(|(s, m)| action_table(m, self.k[s], self.v[s], self.depth, self.depth))
            .collect::<Result<_>>()?;
        let mut out = Vec::with_capacity(self.index.len());
        for m in &self.index {
            let mut acc = PAdicElement::zero(&self.ctx);
            for (n, mu_n) in self.index.iter().zip(&self.moments) {
                let mut c = PAdicElement::one(&self.ctx);
                for s in 0..self.vars() {
                    c = c.mul(&tables[s][m[s] as usize][n[s] as usize])?;
                    if c.is_zero() {
                        break;
                    }
                }
                if !c.is_zero() {
                    acc = acc.add(&c.mul(mu_n)?)?;
                }
            }
            out.push(acc);
        }
        let mut mu = MomentDistribution { moments: out, ..self.clone() };
        mu.apply_profile();
        Ok(mu)
    }

    /// ρ(μ)(X^j Y^{k-j}) = μ(z^j).
    pub fn specialise(&self) -> Result<DualPolySymbol> {
        let deg: i64 = self.k.iter().sum();
        if self.depth as i64 <= deg {
            return Err(Error::TruncationTooShallow(format!("depth {} ≤ total degree {deg}", self.depth)));
        }
        let index = box_indices(&self.k);
        let coeffs = index
            .iter()
            .map(|j| self.moment(j).cloned().ok_or_else(|| Error::TruncationTooShallow("missing moment".into())))
            .collect::<Result<_>>()?;
        Ok(DualPolySymbol { ctx: self.ctx.clone(), k: self.k.clone(), v: self.v.clone(), index, coeffs })
    }

    pub fn to_record(&self) -> MomentRecord {
        MomentRecord {
            k: self.k.clone(),
            v: self.v.clone(),
            depth: self.depth,
            moments: self.moments.iter().map(|x| x.to_record()).collect(),
        }
    }

    pub fn from_record(ctx: &Ctx, r: &MomentRecord) -> Result<Self> {
        let moments = r.moments.iter().map(|x| PAdicElement::from_record(ctx, x)).collect::<Result<_>>()?;
        Self::from_moments(ctx, &r.k, &r.v, r.depth, moments)
    }
}

/// Serialized moment vector; each element carries its own precision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentRecord {
    pub k: Vec<i64>,
    pub v: Vec<i64>,
    pub depth: usize,
    pub moments: Vec<ElementRecord>,
}

/// An element of V_λ(L)*, given by its values on X^j Y^{k-j}.
#[derive(Debug, Clone)]
pub struct DualPolySymbol {
    pub ctx: Ctx,
    pub k: Vec<i64>,
    pub v: Vec<i64>,
    pub index: Vec<Vec<u32>>,
    pub coeffs: Vec<PAdicElement>,
}

impl DualPolySymbol {
    pub fn zero(ctx: &Ctx, k: &[i64], v: &[i64]) -> Self {
        let index = box_indices(k);
        DualPolySymbol { ctx: ctx.clone(), k: k.to_vec(), v: v.to_vec(), coeffs: vec![PAdicElement::zero(ctx); index.len()], index }
    }

    /// Value on the monomial ∏ X^{j}Y^{k-j}.
    pub fn value(&self, j: &[u32]) -> Option<&PAdicElement> {
        self.index.iter().position(|x| x == j).map(|i| &self.coeffs[i])
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(DualPolySymbol { coeffs, ..self.clone() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
        Ok(DualPolySymbol { coeffs, ..self.clone() })
    }

    pub fn scale(&self, c: &PAdicElement) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|a| a.mul(c)).collect::<Result<_>>()?;
        Ok(DualPolySymbol { coeffs, ..self.clone() })
    }

    pub fn eq_at_prec(&self, o: &Self) -> bool {
        self.coeffs.iter().zip(&o.coeffs).all(|(a, b)| a.eq_at_prec(b))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }

    /// (P|γ)(f) = P(γ · f) for γ ∈ GL₂, one component per variable.
    pub fn act(&self, g: &[Mat2]) -> Result<Self> {
        if g.iter().any(|m| !m.is_invertible()) {
            return Err(Error::SingularMatrix);
        }
        let tables: Vec<_> = g
            .iter()
            .enumerate()
            .map(|(s, m)| {
                let n = self.k[s] as usize + 1;
                action_table(m, self.k[s], self.v[s], n, n)
            })
            .collect::<Result<_>>()?;
        let coeffs = self
            .index
            .iter()
            .map(|j| {
                let mut acc = PAdicElement::zero(&self.ctx);
                for (t, pt) in self.index.iter().zip(&self.coeffs) {
                    let mut c = PAdicElement::one(&self.ctx);
                    for s in 0..g.len() {
                        c = c.mul(&tables[s][j[s] as usize][t[s] as usize])?;
                    }
                    acc = acc.add(&c.mul(pt)?)?;
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        Ok(DualPolySymbol { coeffs, ..self.clone() })
    }
}

/// γ · P for a polynomial P ∈ V_λ given by its coefficients on X^j Y^{k-j}:
/// (γ·P)(X, Y) = det^v P(bY + dX, aY + cX).
pub fn act_v(g: &[Mat2], k: &[i64], v: &[i64], poly: &[PAdicElement]) -> Result<Vec<PAdicElement>> {
    if g.iter().any(|m| !m.is_invertible()) {
        return Err(Error::SingularMatrix);
    }
    let index = box_indices(k);
    if poly.len() != index.len() {
        return Err(Error::Precondition("polynomial has the wrong dimension".into()));
    }
    let ctx = poly[0].ctx().clone();
    let tables: Vec<_> = g
        .iter()
        .enumerate()
        .map(|(s, m)| action_table(m, k[s], v[s], k[s] as usize + 1, k[s] as usize + 1))
        .collect::<Result<_>>()?;
    let mut out = vec![PAdicElement::zero(&ctx); index.len()];
    for (j, pj) in index.iter().zip(poly) {
        if pj.is_zero() {
            continue;
        }
        for (ti, t) in index.iter().enumerate() {
            let mut c = pj.clone();
            for s in 0..g.len() {
                c = c.mul(&tables[s][j[s] as usize][t[s] as usize])?;
            }
            out[ti] = out[ti].add(&c)?;
        }
    }
    Ok(out)
}
