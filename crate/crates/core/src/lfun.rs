//! Evaluation maps and the ray-class distribution μ_Ψ for F = Q.
//!
//! Ev^a_f(Ψ) = Ψ({a/f} - {∞}) | (1 a; 0 f), a distribution supported on
//! the coset a + fZ_p. The U_p eigenrelation makes the family compatible
//! in f, and (1 t; 0 1) ∈ Γ₀(N) makes it independent of the
//! representative a.

use num_integer::Integer;
use rand::{Rng, SeedableRng};

use crate::coeffs::{star_twist, MomentDistribution};
use crate::error::{Error, Result};
use crate::field::NumberFieldData;
use crate::hecke::HeckeCharacter;
use crate::padic::{Ctx, PAdicElement};
use crate::ray_class::RayClassGroup;
use crate::symbols::{CompiledOp, PSymbol};

/// Integer class representatives a_y for Cl⁺(p^n) = (Z/p^n)^×.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepTable {
    pub p: u64,
    pub n: u32,
    pub reps: Vec<i128>,
}

impl RepTable {
    /// Representatives from the ray class group, in its class order.
    pub fn canonical(p: u64, n: u32) -> Result<Self> {
        let q = NumberFieldData::builtin("Q")?;
        let primes = q.local_primes(p, n.max(1) as i64 + 2)?;
        let g = RayClassGroup::build(&q, &primes, &[n])?;
        let reps = g.reps.iter().map(|r| r[0][0] as i128).collect();
        Ok(RepTable { p, n, reps })
    }

    pub fn modulus(&self) -> i128 {
        (self.p as i128).pow(self.n)
    }

    /// Same classes, representatives moved by random multiples of f
    /// (including negative ones).
    pub fn shifted(&self, seed: u64) -> Self {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f = self.modulus();
        let reps = self.reps.iter().map(|a| a + f * rng.gen_range(-4i128..=4)).collect();
        RepTable { reps, ..self.clone() }
    }

    pub fn class_of(&self, a: i128) -> Option<usize> {
        let f = self.modulus();
        self.reps.iter().position(|r| (r - a).mod_floor(&f) == 0)
    }
}

fn to_ctx(x: &PAdicElement, l: &Ctx) -> Result<PAdicElement> {
    if x.ctx().spec == l.spec {
        Ok(x.clone())
    } else {
        x.embed(l)
    }
}

fn eval_row(psi: &PSymbol, f0: i128, a: i128) -> Result<Vec<PAdicElement>> {
    if f0 <= 0 {
        return Err(Error::InvalidModulus(format!("f = {f0}")));
    }
    let op = CompiledOp::new(&[psi.manin.evaluation(a, f0)], &psi.ctx, psi.k, psi.v, psi.width())?;
    let mut row = op.apply(&psi.values)?.remove(0);
    for (t, x) in row.iter_mut().enumerate() {
        *x = x.with_prec(psi.profile(t).max(0));
    }
    Ok(row)
}

/// Ev^a_{f,†}(Ψ) for a moment symbol; f must be divisible by p.
pub fn ev_overconvergent(psi: &PSymbol, f0: i128, a: i128) -> Result<MomentDistribution> {
    let m = psi.depth.ok_or_else(|| Error::Precondition("moment symbol expected".into()))?;
    if f0 % psi.ctx.p() as i128 != 0 {
        return Err(Error::InvalidModulus(format!("f = {f0} is prime to p")));
    }
    MomentDistribution::from_moments(&psi.ctx, &[psi.k], &[psi.v], m, eval_row(psi, f0, a)?)
}

/// Ev^a_{f,j,2}: the value of φ({a/f} - {∞})|(1 a; 0 f) at X^{k-j}Y^j.
pub fn ev_classical_2(phi: &PSymbol, f0: i128, j: i64, a: i128) -> Result<PAdicElement> {
    if phi.depth.is_some() {
        return Err(Error::Precondition("classical symbol expected".into()));
    }
    if j < 0 || j > phi.k {
        return Err(Error::Precondition(format!("j = {j} outside [0, {}]", phi.k)));
    }
    Ok(eval_row(phi, f0, a)?[(phi.k - j) as usize].clone())
}

/// Ev^a_{f,j,1} = π_f^{-(j+v)} Ev^a_{f,j,2}, π_f = f₀.
pub fn ev_classical_1(phi: &PSymbol, f0: i128, j: i64, a: i128) -> Result<PAdicElement> {
    let e2 = ev_classical_2(phi, f0, j, a)?;
    e2.mul(&PAdicElement::from_i128(&phi.ctx, f0).pow(-(j + phi.v))?)
}

/// j with r = j + v, checked critical.
fn critical_j(k: i64, v: i64, chi: &HeckeCharacter) -> Result<i64> {
    let r = *chi.infinity_type().first().ok_or_else(|| Error::InvalidCharacter("empty infinity type".into()))?;
    let j = r - v;
    if j < 0 || j > k {
        return Err(Error::NonCritical(format!("r = {r} needs 0 ≤ r - v ≤ {k}")));
    }
    Ok(j)
}

fn chi_at(chi: &HeckeCharacter, a: i128) -> Result<PAdicElement> {
    chi.finite_value(&chi.ring.of_integer(a)?)
}

fn check_conductor(chi: &HeckeCharacter, reps: &RepTable) -> Result<()> {
    if chi.field.degree() != 1 || chi.primes[0].p != reps.p {
        return Err(Error::Unsupported("evaluation maps are implemented for F = Q".into()));
    }
    if chi.spec.conductor[0] > reps.n {
        return Err(Error::InvalidModulus(format!("conductor exponent {} exceeds n = {}", chi.spec.conductor[0], reps.n)));
    }
    Ok(())
}

/// Ev_φ(φsym) = Σ_y ε_φ φ_f(a_y) Ev^{a_y}_{f,j,norm}(φsym) at f = p^n.
pub fn ev_phi(phi: &PSymbol, chi: &HeckeCharacter, reps: &RepTable, norm: u8) -> Result<PAdicElement> {
    check_conductor(chi, reps)?;
    let j = critical_j(phi.k, phi.v, chi)?;
    let f0 = reps.modulus();
    let mut acc = PAdicElement::zero(&chi.l);
    for &a in &reps.reps {
        let ev = match norm {
            1 => ev_classical_1(phi, f0, j, a)?,
            2 => ev_classical_2(phi, f0, j, a)?,
            _ => return Err(Error::Precondition("normalisation is 1 or 2".into())),
        };
        acc = acc.add(&chi_at(chi, a)?.mul(&to_ctx(&ev, &chi.l)?)?)?;
    }
    Ok(acc)
}

/// μ_Ψ at modulus f = p^n: per-class evaluators and λ_f = λ_p^n.
#[derive(Debug, Clone)]
pub struct RayClassDistribution {
    pub reps: RepTable,
    pub k: i64,
    pub v: i64,
    pub lambda: PAdicElement,
    pub lambda_f_inv: PAdicElement,
    pub evals: Vec<MomentDistribution>,
}

pub fn build_mu(psi: &PSymbol, lambda: &PAdicElement, reps: &RepTable) -> Result<RayClassDistribution> {
    if reps.n == 0 {
        return Err(Error::InvalidModulus("f must be divisible by p".into()));
    }
    if psi.ctx.p() != reps.p {
        return Err(Error::Precondition("prime mismatch".into()));
    }
    let f0 = reps.modulus();
    let evals = reps.reps.iter().map(|&a| ev_overconvergent(psi, f0, a)).collect::<Result<_>>()?;
    Ok(RayClassDistribution {
        reps: reps.clone(),
        k: psi.k,
        v: psi.v,
        lambda: lambda.clone(),
        lambda_f_inv: lambda.pow(-(reps.n as i64))?,
        evals,
    })
}

impl RayClassDistribution {
    /// λ_f⁻¹ c Ev^{a_y}(z^e): the coset-monomial input c·z^e on class y.
    pub fn eval_monomial(&self, y: usize, e: usize, c: &PAdicElement) -> Result<PAdicElement> {
        let ev = self.evals.get(y).ok_or_else(|| Error::Precondition(format!("class {y} out of range")))?;
        let m = ev.moments.get(e).ok_or_else(|| Error::TruncationTooShallow(format!("moment {e} beyond depth {}", ev.depth)))?;
        let l = c.ctx().clone();
        to_ctx(&self.lambda_f_inv, &l)?.mul(c)?.mul(&to_ctx(m, &l)?)
    }

    /// Class of a at this modulus.
    pub fn class_of(&self, a: i128) -> Option<usize> {
        self.reps.class_of(a)
    }
}

/// μ_Ψ(φ_{p-fin}) = λ_f⁻¹ Σ_y ε_φ φ_f(a_y) Ev^{a_y}_{f,†}(Ψ)(z^{k+v-r}).
pub fn evaluate_mu(mu: &RayClassDistribution, chi: &HeckeCharacter) -> Result<PAdicElement> {
    check_conductor(chi, &mu.reps)?;
    critical_j(mu.k, mu.v, chi)?;
    let one = PAdicElement::one(&chi.l);
    let (exps, _) = star_twist(&[mu.k], &[mu.v], chi.infinity_type(), &one)?;
    let e = exps[0] as usize;
    let mut acc = PAdicElement::zero(&chi.l);
    for (y, &a) in mu.reps.reps.iter().enumerate() {
        acc = acc.add(&mu.eval_monomial(y, e, &chi_at(chi, a)?)?)?;
    }
    Ok(acc)
}

/// ∏_{𝔭∈B} φ_{p-fin}(π_𝔭)(1 - λ_𝔭⁻¹φ(𝔭)⁻¹) for F = Q and B ⊆ {p}. For φ
/// of conductor 1 and infinity type r, φ((p)) = p^{-r} and
/// φ_{p-fin}(p) = 1.
pub fn interpolation_multiplier(chi: &HeckeCharacter, lambda: &PAdicElement, include_p: bool) -> Result<PAdicElement> {
    let l = chi.l.clone();
    if !include_p {
        return Ok(PAdicElement::one(&l));
    }
    if chi.field.degree() != 1 {
        return Err(Error::Unsupported("multiplier implemented for F = Q".into()));
    }
    if chi.spec.conductor.iter().any(|&c| c > 0) {
        return Err(Error::Precondition("p is ramified in φ".into()));
    }
    let r = chi.infinity_type()[0];
    let p = PAdicElement::from_i64(&l, chi.primes[0].p as i64);
    let lam = to_ctx(lambda, &l)?;
    PAdicElement::one(&l).sub(&p.pow(r)?.div(&lam)?)
}

/// Both sides of the unramified-extension identity at a prime ℓ | N with
/// ℓ ∤ f = p^n: Σ over (Z/fℓ)^× of χ-weighted Ev, and
/// (λ_ℓ - χ(ℓ) ℓ^{k-j+v}) times the sum over (Z/f)^×.
pub fn unramified_extension_identity(phi: &PSymbol, chi: &HeckeCharacter, n: u32, ell: u64) -> Result<(PAdicElement, PAdicElement)> {
    let p = phi.ctx.p();
    let f0 = (p as i128).pow(n);
    if phi.manin.level % ell != 0 || f0 % ell as i128 == 0 {
        return Err(Error::Precondition(format!("need ℓ = {ell} | N and ℓ ∤ f")));
    }
    let j = critical_j(phi.k, phi.v, chi)?;
    // λ_ℓ from U_ℓ φ = λ_ℓ φ
    let uphi = phi.apply(&phi.compile(&phi.manin.u_op(ell))?)?;
    let (i, t) = (0..phi.values.len())
        .flat_map(|i| (0..phi.width()).map(move |t| (i, t)))
        .filter(|&(i, t)| !phi.values[i][t].is_zero())
        .min_by_key(|&(i, t)| phi.values[i][t].valuation())
        .ok_or_else(|| Error::Precondition("zero symbol".into()))?;
    let lam = uphi.values[i][t].div(&phi.values[i][t])?;
    if !uphi.eq_at_prec(&phi.scale(&lam)?) {
        return Err(Error::Precondition(format!("not a U_{ell} eigensymbol")));
    }
    let l = chi.l.clone();
    let big = f0 * ell as i128;
    let mut lhs = PAdicElement::zero(&l);
    for a in 0..big {
        if a.gcd(&big) == 1 {
            let ev = to_ctx(&ev_classical_2(phi, big, j, a)?, &l)?;
            lhs = lhs.add(&chi_at(chi, a)?.mul(&ev)?)?;
        }
    }
    let mut s = PAdicElement::zero(&l);
    for a in 0..f0 {
        if a.gcd(&f0) == 1 {
            let ev = to_ctx(&ev_classical_2(phi, f0, j, a)?, &l)?;
            s = s.add(&chi_at(chi, a)?.mul(&ev)?)?;
        }
    }
    let twist = chi_at(chi, ell as i128)?.mul(&PAdicElement::from_i64(&l, ell as i64).pow(phi.k - j + phi.v)?)?;
    let rhs = to_ctx(&lam, &l)?.sub(&twist)?.mul(&s)?;
    Ok((lhs, rhs))
}
