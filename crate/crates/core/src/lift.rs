//! Lifting a classical eigensymbol to moments: a naive lift solving the
//! truncated Manin relations, then iteration of λ⁻¹U_p.

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::PAdicElement;
use crate::symbols::{CompiledOp, PSymbol};
use crate::zpk::Zpk;
use crate::zsolve::solve_mod;

/// Extra p-adic digits carried by the relation solver.
pub const SLACK: u32 = 4;

#[derive(Debug, Clone)]
pub struct EigenData {
    pub p: u64,
    pub lambda: PAdicElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftReport {
    pub iterations: usize,
    pub depth: usize,
    /// Least valuation of ρ(Ψ) - φ; None when they agree to precision.
    pub rho_residual: Option<i64>,
    /// Least excess valuation of U_pΨ - λΨ over the filtration; None
    /// when it vanishes in the truncation.
    pub eigen_residual: Option<i64>,
}

fn lift_once(phi: &PSymbol, depth: usize, extra: u32, seed: Option<u64>) -> Result<PSymbol> {
    let ctx = phi.ctx.clone();
    if ctx.degree() != 1 {
        return Err(Error::Unsupported("moment lifts need L = Q_p".into()));
    }
    let w = phi.k as usize + 1;
    let n = ctx.n();
    let kk = n as u32 + extra;
    let z = Zpk::new(ctx.p(), kk)?;
    let ncos = phi.manin.ncosets();
    let mut shell = PSymbol { depth: Some(depth), values: vec![vec![PAdicElement::zero(&ctx); depth]; ncos], ..phi.clone() };
    let op = CompiledOp::new(&phi.manin.relations(phi.k), &ctx, phi.k, phi.v, depth)?;
    let hi = depth - w;
    let col = |y: usize, t: usize| y * hi + (t - w);
    let fixed: Vec<Vec<u128>> = phi.values.iter().map(|r| r.iter().map(|x| x.to_residue(&z)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for row in &op.rows {
        for m in 0..depth {
            let prof = shell.profile(m);
            if prof <= 0 {
                continue;
            }
            // congruence mod p^prof, scaled up to mod p^K
            let scale = z.ppow(kk - prof as u32);
            let mut eq = vec![0u128; ncos * hi];
            let mut rhs = 0u128;
            for (y, tab) in row {
                for (t, entry) in tab[m].iter().enumerate() {
                    let c = z.mul(entry.to_residue(&z)?, scale);
                    if c == 0 {
                        continue;
                    }
                    if t < w {
                        rhs = z.sub(rhs, z.mul(c, fixed[*y][t]));
                    } else {
                        eq[col(*y, t)] = z.add(eq[col(*y, t)], c);
                    }
                }
            }
            if eq.iter().any(|&x| x != 0) || rhs != 0 {
                a.push(eq);
                b.push(rhs);
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
    let mut fill = |_: usize| if seed.is_some() { rng.gen_range(0..z.m) } else { 0 };
    // the residues solve every scaled congruence exactly, so each moment
    // is good to its profile whatever the pivot valuations were
    let sol = solve_mod(&z, a, b, ncos * hi, &mut fill)?;
    let digits = kk;
    for y in 0..ncos {
        shell.values[y][..w].clone_from_slice(&phi.values[y]);
        for t in w..depth {
            shell.values[y][t] = PAdicElement::from_residue(&ctx, sol.x[col(y, t)], digits);
        }
    }
    shell.apply_profile();
    Ok(shell)
}

/// A moment-valued symbol Ψ₀ with ρ(Ψ₀) = φ satisfying the Manin
/// relations in the truncation of depth M. Unconstrained higher moments
/// are 0, or random when `seed` is given.
pub fn naive_lift(phi: &PSymbol, depth: usize, seed: Option<u64>) -> Result<PSymbol> {
    if phi.depth.is_some() {
        return Err(Error::Precondition("naive_lift takes a classical symbol".into()));
    }
    if depth <= phi.k as usize {
        return Err(Error::TruncationTooShallow(format!("M = {depth} ≤ k = {}", phi.k)));
    }
    let vmin = phi.values.iter().flatten().filter_map(|x| x.valuation()).min();
    let Some(vmin) = vmin else {
        return Ok(PSymbol { depth: Some(depth), values: vec![vec![PAdicElement::zero(&phi.ctx); depth]; phi.values.len()], ..phi.clone() });
    };
    if vmin < 0 {
        return Err(Error::Precondition("scale φ to be integral first".into()));
    }
    // an integral lift of φ may not exist; one of p^s φ does for small s,
    // and dividing back costs s digits
    let p = PAdicElement::from_i64(&phi.ctx, phi.ctx.p() as i64);
    let mut last = None;
    for s in 0..=SLACK as i64 {
        let scaled = if s == 0 { phi.clone() } else { phi.scale(&p.pow(s)?)? };
        match lift_once(&scaled, depth, SLACK, seed) {
            Ok(psi) => {
                let psi = if s == 0 { psi } else { psi.scale(&p.pow(-s)?)? };
                if !psi.satisfies_relations()? {
                    return Err(Error::Unsolvable("lift fails the relations at its profile".into()));
                }
                return Ok(psi);
            }
            Err(e @ Error::Unsolvable(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn min_excess(s: &PSymbol) -> Option<i64> {
    let mut best: Option<i64> = None;
    for row in &s.values {
        for (t, x) in row.iter().enumerate() {
            if let Some(v) = x.valuation() {
                let d = v - s.profile(t);
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
    }
    best
}

/// Iterate Ψ ↦ λ⁻¹U_p Ψ (cycling over the primes in order) until it is
/// fixed in the truncation. The default budget is M + N.
pub fn iterate_control(psi0: &PSymbol, eig: &[EigenData], budget: Option<usize>) -> Result<(PSymbol, LiftReport)> {
    let depth = psi0.depth.ok_or_else(|| Error::Precondition("iterate_control takes a moment symbol".into()))?;
    let budget = budget.unwrap_or(depth + psi0.ctx.n() as usize);
    let ops: Vec<(CompiledOp, PAdicElement)> = eig
        .iter()
        .map(|e| Ok((psi0.compile(&psi0.manin.u_op(e.p))?, e.lambda.inv()?)))
        .collect::<Result<_>>()?;
    let phi = psi0.specialise()?;
    let mut psi = psi0.clone();
    for it in 1..=budget {
        let mut next = psi.clone();
        for (op, li) in &ops {
            next = next.apply(op)?.scale(li)?;
        }
        let settled = next.precision_deficit() == 0 && next.eq_at_prec(&psi);
        psi = next;
        if settled {
            let rho = psi.specialise()?.sub(&phi)?;
            let rho_residual = rho.values.iter().flatten().filter_map(|x| x.valuation()).min();
            let mut eigen_residual = None;
            for ((op, _), e) in ops.iter().zip(eig) {
                let diff = psi.apply(op)?.sub(&psi.scale(&e.lambda)?)?;
                if let Some(d) = min_excess(&diff) {
                    if d < 0 {
                        eigen_residual = Some(eigen_residual.map_or(d, |b: i64| b.min(d)));
                    }
                }
            }
            return Ok((psi, LiftReport { iterations: it, depth, rho_residual, eigen_residual }));
        }
    }
    Err(Error::NonConvergence(format!(
        "no fixed point after {budget} iterations (precision deficit {})",
        psi.precision_deficit()
    )))
}
