//! Cutting an eigensymbol out of the classical space: Weyl sign, Hecke
//! eigenvalues away from p, then the least-slope root of U_p.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::classical::ClassicalSpace;
use super::padic::PSymbol;
use super::slope::slope_le_subspace;
use crate::error::{Error, Result};
use crate::padic::{linalg, newton_polygon, Ctx, PAdicElement, PAdicPolynomial};
use crate::qlinalg::{self, q, QMat};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenSpec {
    /// +1 or -1 for the Weyl eigenspace, 0 for none.
    #[serde(default)]
    pub sign: i64,
    /// (ℓ, a_ℓ): T_ℓ for ℓ ∤ N, U_ℓ otherwise.
    #[serde(default)]
    pub hecke: Vec<(u64, i64)>,
}

#[derive(Debug, Clone)]
pub struct Eigensymbol {
    pub phi: PSymbol,
    pub p: u64,
    pub lambda: PAdicElement,
    /// Characteristic polynomial of U_p on the cut-out piece, constant
    /// term first.
    pub charpoly: Vec<BigRational>,
}

fn conditions(space: &ClassicalSpace, spec: &EigenSpec) -> Result<Vec<(QMat, BigRational)>> {
    let mut c = Vec::new();
    if spec.sign != 0 {
        c.push((space.weyl_matrix(), q(spec.sign.signum())));
    }
    for &(l, a) in &spec.hecke {
        let m = if space.manin.level % l == 0 { space.up_matrix(l) } else { space.tl_matrix(l)? };
        c.push((m, q(a)));
    }
    Ok(c)
}

/// The U_p-eigensymbol for the least slope on the piece cut out by
/// `spec`, normalised to be integral with a unit value.
pub fn eigensymbol(space: &ClassicalSpace, spec: &EigenSpec, p: u64, ctx: &Ctx) -> Result<Eigensymbol> {
    if space.manin.level % p != 0 {
        return Err(Error::Precondition(format!("p = {p} must divide the level")));
    }
    let sub = space.eigen_subspace(&conditions(space, spec)?);
    if sub.is_empty() {
        return Err(Error::Precondition("no symbols with these eigenvalues".into()));
    }
    let u = qlinalg::restrict(&space.up_matrix(p), &sub);
    let cp = qlinalg::charpoly(&u);
    let cpl = PAdicPolynomial::new(ctx, cp.iter().map(|x| PAdicElement::from_bigrational(ctx, x)).collect::<Result<_>>()?)?;
    let slopes = newton_polygon(&cpl)?;
    let h = slopes.iter().map(|(s, _)| *s).min().ok_or_else(|| Error::Precondition("empty polygon".into()))?;
    let basis = slope_le_subspace(ctx, &u, h)?;
    if basis.len() != 1 {
        return Err(Error::Unsupported(format!("least slope {h} occurs with multiplicity {}", basis.len())));
    }
    let v = &basis[0];
    let ua: linalg::Matrix = u.iter().map(|r| r.iter().map(|x| PAdicElement::from_bigrational(ctx, x)).collect()).collect::<Result<_>>()?;
    let uv = linalg::mat_vec(&ua, v)?;
    let i = (0..v.len()).filter(|&i| !v[i].is_zero()).min_by_key(|&i| v[i].valuation()).ok_or(Error::ZeroPolynomial)?;
    let lambda = uv[i].div(&v[i])?;
    let full: Vec<Vec<BigRational>> = sub.iter().map(|c| space.from_coords(c)).collect();
    let mut phi = PSymbol::from_rational(space.manin.clone(), ctx, space.k, space.v, &full, v)?;
    let vmin = phi.values.iter().flatten().filter_map(|x| x.valuation()).min().ok_or(Error::ZeroPolynomial)?;
    let e = ctx.e as i64;
    if vmin != 0 {
        let scale = PAdicElement::from_i64(ctx, ctx.p() as i64).pow(-vmin / e)?;
        phi = phi.scale(&scale)?;
    }
    Ok(Eigensymbol { phi, p, lambda, charpoly: cp })
}
