//! Symbols with values in V_k^∨ ⊗ L (classical) or in the truncated
//! moment module D_k (overconvergent), both stored as per-coset
//! coefficient vectors.

use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::manin::{Formula, ManinData};
use crate::coeffs::expand::action_table;
use crate::coeffs::{DualPolySymbol, Mat2, MomentDistribution};
use crate::error::{Error, Result};
use crate::padic::{Ctx, ElementRecord, PAdicElement};

type Table = Vec<Vec<PAdicElement>>;

/// An operator given per coset x as Σ_y T_{x,y} applied to Ψ(D_y).
#[derive(Debug, Clone)]
pub struct CompiledOp {
    pub width: usize,
    pub rows: Vec<Vec<(usize, Table)>>,
}

impl CompiledOp {
    pub fn new(ops: &[Formula], ctx: &Ctx, k: i64, v: i64, width: usize) -> Result<Self> {
        let mut rows = Vec::with_capacity(ops.len());
        for f in ops {
            let mut row: Vec<(usize, Table)> = Vec::new();
            for t in f {
                let [a, b, c, d] = t.g.map(|x| PAdicElement::from_i128(ctx, x));
                let mut tab = action_table(&Mat2 { a, b, c, d }, k, v, width, width)?;
                if t.sign != 1 {
                    for x in tab.iter_mut().flatten() {
                        *x = x.scale(t.sign);
                    }
                }
                match row.iter_mut().find(|(y, _)| *y == t.coset) {
                    Some((_, acc)) => {
                        for (ra, rt) in acc.iter_mut().zip(&tab) {
                            for (x, y) in ra.iter_mut().zip(rt) {
                                *x = x.add(y)?;
                            }
                        }
                    }
                    None => row.push((t.coset, tab)),
                }
            }
            rows.push(row);
        }
        Ok(CompiledOp { width, rows })
    }

    pub fn apply(&self, vals: &[Vec<PAdicElement>]) -> Result<Vec<Vec<PAdicElement>>> {
        let ctx = vals[0][0].ctx().clone();
        let mut out = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut acc = vec![PAdicElement::zero(&ctx); self.width];
            for (y, tab) in row {
                let src = &vals[*y];
                for (m, slot) in acc.iter_mut().enumerate() {
                    for (t, s) in src.iter().enumerate() {
                        if tab[m][t].is_zero() {
                            continue;
                        }
                        *slot = slot.add(&tab[m][t].mul(s)?)?;
                    }
                }
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// A modular symbol over L. `depth` is None for V_k^∨ values and Some(M)
/// for moments of degree < M.
#[derive(Debug, Clone)]
pub struct PSymbol {
    pub manin: Arc<ManinData>,
    pub ctx: Ctx,
    pub k: i64,
    pub v: i64,
    pub depth: Option<usize>,
    pub values: Vec<Vec<PAdicElement>>,
}

impl PSymbol {
    pub fn width(&self) -> usize {
        self.depth.unwrap_or(self.k as usize + 1)
    }

    /// Absolute precision carried by moment t.
    pub fn profile(&self, t: usize) -> i64 {
        match self.depth {
            None => self.ctx.n(),
            Some(m) => self.ctx.n().min(self.ctx.e as i64 * (m as i64 - t as i64)),
        }
    }

    pub fn apply_profile(&mut self) {
        let caps: Vec<i64> = (0..self.width()).map(|t| self.profile(t).max(0)).collect();
        for row in &mut self.values {
            for (x, &c) in row.iter_mut().zip(&caps) {
                *x = x.with_prec(c);
            }
        }
    }

    /// Σ c_i b_i for exact rational basis symbols b_i.
    pub fn from_rational(manin: Arc<ManinData>, ctx: &Ctx, k: i64, v: i64, basis: &[Vec<BigRational>], coeffs: &[PAdicElement]) -> Result<Self> {
        let w = k as usize + 1;
        let n = manin.ncosets();
        let mut values = vec![vec![PAdicElement::zero(ctx); w]; n];
        for (b, c) in basis.iter().zip(coeffs) {
            for x in 0..n {
                for j in 0..w {
                    let q = &b[x * w + j];
                    if q == &BigRational::from_integer(0.into()) {
                        continue;
                    }
                    let t = PAdicElement::from_bigrational(ctx, q)?.mul(c)?;
                    values[x][j] = values[x][j].add(&t)?;
                }
            }
        }
        Ok(PSymbol { manin, ctx: ctx.clone(), k, v, depth: None, values })
    }

    pub fn compile(&self, ops: &[Formula]) -> Result<CompiledOp> {
        CompiledOp::new(ops, &self.ctx, self.k, self.v, self.width())
    }

    pub fn apply(&self, op: &CompiledOp) -> Result<Self> {
        if op.width != self.width() {
            return Err(Error::Precondition("operator compiled for another width".into()));
        }
        let mut out = PSymbol { values: op.apply(&self.values)?, ..self.clone() };
        out.apply_profile();
        Ok(out)
    }

    pub fn scale(&self, c: &PAdicElement) -> Result<Self> {
        let values = self.values.iter().map(|r| r.iter().map(|x| x.mul(c)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        let mut out = PSymbol { values, ..self.clone() };
        out.apply_profile();
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        let values = self.values.iter().zip(&o.values).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.sub(y)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        Ok(PSymbol { values, ..self.clone() })
    }

    pub fn eq_at_prec(&self, o: &Self) -> bool {
        self.values.len() == o.values.len()
            && self.values.iter().zip(&o.values).all(|(r, s)| r.len() == s.len() && r.iter().zip(s).all(|(x, y)| x.eq_at_prec(y)))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(|x| x.is_zero())
    }

    /// Least absolute precision over all stored moments relative to the
    /// profile; zero means nothing was lost.
    pub fn precision_deficit(&self) -> i64 {
        let mut worst = 0;
        for row in &self.values {
            for (t, x) in row.iter().enumerate() {
                worst = worst.max(self.profile(t).max(0) - x.precision());
            }
        }
        worst
    }

    /// Every Manin relation vanishes to the stored precision.
    pub fn satisfies_relations(&self) -> Result<bool> {
        let op = self.compile(&self.manin.relations(self.k))?;
        let out = op.apply(&self.values)?;
        Ok(out.iter().all(|row| {
            row.iter().enumerate().all(|(t, x)| x.is_zero() || x.valuation().is_some_and(|v| v >= self.profile(t)))
        }))
    }

    /// Specialisation ρ: keep the moments of degree ≤ k.
    pub fn specialise(&self) -> Result<Self> {
        let w = self.k as usize + 1;
        match self.depth {
            None => Ok(self.clone()),
            Some(m) if m < w => Err(Error::TruncationTooShallow(format!("depth {m} ≤ k = {}", self.k))),
            Some(_) => Ok(PSymbol { depth: None, values: self.values.iter().map(|r| r[..w].to_vec()).collect(), ..self.clone() }),
        }
    }

    /// Value on coset x as a distribution.
    pub fn distribution(&self, x: usize) -> Result<MomentDistribution> {
        let m = self.depth.ok_or_else(|| Error::Precondition("classical symbol".into()))?;
        MomentDistribution::from_moments(&self.ctx, &[self.k], &[self.v], m, self.values[x].clone())
    }

    /// Value on coset x as an element of V_k^∨.
    pub fn dual_poly(&self, x: usize) -> Result<DualPolySymbol> {
        let s = self.specialise()?;
        let mut d = DualPolySymbol::zero(&self.ctx, &[self.k], &[self.v]);
        d.coeffs = s.values[x].clone();
        Ok(d)
    }

    pub fn to_record(&self) -> SymbolRecord {
        SymbolRecord {
            level: self.manin.level,
            context: self.ctx.id().to_string(),
            k: self.k,
            v: self.v,
            depth: self.depth,
            values: self.values.iter().map(|r| r.iter().map(|x| x.to_record()).collect()).collect(),
        }
    }

    pub fn from_record(manin: Arc<ManinData>, ctx: &Ctx, r: &SymbolRecord) -> Result<Self> {
        if r.level != manin.level || r.values.len() != manin.ncosets() {
            return Err(Error::Precondition("record does not match the level".into()));
        }
        let values = r.values.iter().map(|row| row.iter().map(|e| PAdicElement::from_record(ctx, e)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        Ok(PSymbol { manin, ctx: ctx.clone(), k: r.k, v: r.v, depth: r.depth, values })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolRecord {
    pub level: u64,
    pub context: String,
    pub k: i64,
    pub v: i64,
    pub depth: Option<usize>,
    pub values: Vec<Vec<ElementRecord>>,
}
