//! `verify <suite>`: pass/fail lines with residual valuations.

use std::fmt;
use std::sync::Arc;

use padic_lfun::hecke::GeneratorValue;
use padic_lfun::lfun::{
    build_mu, ev_classical_2, ev_overconvergent, ev_phi, evaluate_mu, interpolation_multiplier, unramified_extension_identity, RepTable,
};
use padic_lfun::lift::{iterate_control, naive_lift, EigenData};
use padic_lfun::padic::root_of_unity;
use padic_lfun::symbols::{ManinData, PSymbol};
use padic_lfun::{CharacterSpec, Error, HeckeCharacter, NumberFieldData, PAdicContext, PAdicElement, Result};
use rand::{Rng, SeedableRng};

use crate::commands::{lift_for, symbol_build};
use crate::config::JobConfig;

pub const SUITES: [&str; 6] = ["diagram", "independence", "compatibility", "gauss", "control", "interpolation"];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Valuation of the discrepancy; None when it vanishes at precision.
    pub residual: Option<i64>,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.residual.map_or("0".to_string(), |v| format!("O(p^{v})"));
        write!(f, "{} {} residual {}", if self.pass { "PASS" } else { "FAIL" }, self.name, r)
    }
}

fn compare(name: String, a: &PAdicElement, b: &PAdicElement) -> Result<Check> {
    let d = a.sub(b)?;
    Ok(Check { name, pass: a.eq_at_prec(b), residual: d.valuation() })
}

struct Setup {
    phi: PSymbol,
    psi: PSymbol,
    lambda: PAdicElement,
}

fn setup(cfg: &JobConfig) -> Result<Setup> {
    let eig = symbol_build(cfg)?;
    let (lift, _) = lift_for(cfg)?;
    let ctx = cfg.ctx()?;
    let manin = Arc::new(ManinData::new(cfg.level)?);
    Ok(Setup {
        phi: PSymbol::from_record(manin.clone(), &ctx, &eig.body.symbol)?,
        psi: PSymbol::from_record(manin, &ctx, &lift.body.symbol)?,
        lambda: PAdicElement::from_record(&ctx, &lift.body.lambda)?,
    })
}

pub fn run(suite: &str, cfg: &JobConfig) -> Result<Vec<Check>> {
    match suite {
        "diagram" => diagram(cfg),
        "independence" => independence(cfg),
        "compatibility" => compatibility(cfg),
        "gauss" => gauss(),
        "control" => control(cfg),
        "interpolation" => interpolation(cfg),
        _ => Err(Error::Parse(format!("unknown suite {suite}; expected one of {SUITES:?}"))),
    }
}

fn diagram(cfg: &JobConfig) -> Result<Vec<Check>> {
    let s = setup(cfg)?;
    let mut out = Vec::new();
    for n in [cfg.modulus.max(1), cfg.modulus.max(1) + 1] {
        let reps = RepTable::canonical(cfg.p, n)?;
        for &a in &reps.reps {
            let d = ev_overconvergent(&s.psi, reps.modulus(), a)?;
            for j in 0..=cfg.weight {
                let c = ev_classical_2(&s.phi, reps.modulus(), j, a)?;
                out.push(compare(format!("diagram f={} a={a} j={j}", reps.modulus()), &d.moments[(cfg.weight - j) as usize], &c)?);
            }
        }
    }
    Ok(out)
}

fn independence(cfg: &JobConfig) -> Result<Vec<Check>> {
    let s = setup(cfg)?;
    let base = RepTable::canonical(cfg.p, cfg.modulus.max(1))?;
    let mu = build_mu(&s.psi, &s.lambda, &base)?;
    let mut out = Vec::new();
    for t in 0..3 {
        let moved = base.shifted(cfg.seed.unwrap_or(0) + t);
        let mu2 = build_mu(&s.psi, &s.lambda, &moved)?;
        for c in &cfg.characters {
            let chi = cfg.character(c)?;
            out.push(compare(format!("reps #{t} {}", c.name), &evaluate_mu(&mu, &chi)?, &evaluate_mu(&mu2, &chi)?)?);
            out.push(compare(format!("reps #{t} Ev_φ {}", c.name), &ev_phi(&s.phi, &chi, &base, 2)?, &ev_phi(&s.phi, &chi, &moved, 2)?)?);
        }
    }
    Ok(out)
}

fn compatibility(cfg: &JobConfig) -> Result<Vec<Check>> {
    let s = setup(cfg)?;
    let n = cfg.modulus.max(1);
    let m1 = build_mu(&s.psi, &s.lambda, &RepTable::canonical(cfg.p, n)?)?;
    let m2 = build_mu(&s.psi, &s.lambda, &RepTable::canonical(cfg.p, n + 1)?)?;
    let mut out = Vec::new();
    for c in &cfg.characters {
        let chi = cfg.character(c)?;
        out.push(compare(format!("f={} vs {} {}", m1.reps.modulus(), m2.reps.modulus(), c.name), &evaluate_mu(&m1, &chi)?, &evaluate_mu(&m2, &chi)?)?);
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed.unwrap_or(0));
    let ctx = cfg.ctx()?;
    for case in 0..24 {
        let y = case % m1.reps.reps.len();
        let e = rng.gen_range(0..cfg.moments);
        let c = PAdicElement::from_i64(&ctx, rng.gen_range(-99..100));
        let a = m1.reps.reps[y];
        let mut fine = PAdicElement::zero(&ctx);
        for b in 0..cfg.p as i128 {
            let y2 = m2.class_of(a + m1.reps.modulus() * b).ok_or_else(|| Error::Precondition("class lookup".into()))?;
            fine = fine.add(&m2.eval_monomial(y2, e, &c)?)?;
        }
        out.push(compare(format!("monomial y={y} e={e}"), &fine, &m1.eval_monomial(y, e, &c)?)?);
    }
    Ok(out)
}

/// χ of conductor p^n with χ(2) = ζ_order, valued in Q_p(ζ_{p^n}).
fn dirichlet(p: u64, n: u32, order: u64) -> Result<HeckeCharacter> {
    let q = NumberFieldData::builtin("Q")?;
    let phi_f = p.pow(n - 1) * (p - 1);
    let l = PAdicContext::cyclotomic(p, n, 12 * phi_f as i64)?;
    // χ(-1) = χ(2)^{φ(f)/2} as 2 generates (Z/p^n)^× for p ∈ {3, 5}
    let sign = if (phi_f / 2) % order == 0 { 1 } else { -1 };
    let spec = CharacterSpec {
        conductor: vec![n],
        infinity_type: vec![0],
        generators: vec![GeneratorValue { generator: vec![2], order, exponent: 1 }],
        signs: vec![sign],
    };
    HeckeCharacter::new(&q, &q.local_primes(p, 14)?, spec, &l)
}

fn gauss() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (p, n, order) in [(3u64, 1u32, 2u64), (3, 2, 6), (3, 2, 3), (5, 1, 4), (5, 1, 2), (5, 2, 20), (5, 2, 10), (5, 2, 5)] {
        let chi = dirichlet(p, n, order)?;
        let f = (p as i128).pow(n);
        let z = root_of_unity(&chi.l, f as u64)?;
        // brute force: Σ_{b ∈ (Z/f)^×} χ(b) ζ_f^{-b}
        let mut brute = PAdicElement::zero(&chi.l);
        for b in (1..f).filter(|b| b % p as i128 != 0) {
            let c = chi.finite_value(&chi.ring.of_integer(b)?)?;
            brute = brute.add(&c.mul(&z.pow(-(b as i64))?)?)?;
        }
        let tau = chi.gauss_sum()?;
        out.push(compare(format!("tau p={p} f={f} order={order} vs brute force"), &tau, &brute)?);
        let mut spec = chi.spec.clone();
        spec.generators[0].exponent = order - 1;
        let bar = HeckeCharacter::new(&chi.field, &chi.primes, spec, &chi.l)?;
        let want = PAdicElement::from_i64(&chi.l, chi.spec.signs[0] as i64 * f as i64);
        out.push(compare(format!("tau tau-bar p={p} f={f} order={order}"), &tau.mul(&bar.gauss_sum()?)?, &want)?);
    }
    Ok(out)
}

fn control(cfg: &JobConfig) -> Result<Vec<Check>> {
    let eig = symbol_build(cfg)?;
    let ctx = cfg.ctx()?;
    let phi = PSymbol::from_record(Arc::new(ManinData::new(cfg.level)?), &ctx, &eig.body.symbol)?;
    let lambda = PAdicElement::from_record(&ctx, &eig.body.lambda)?;
    let data = [EigenData { p: cfg.p, lambda }];
    let seed = cfg.seed.unwrap_or(0);
    let (a, ra) = iterate_control(&naive_lift(&phi, cfg.moments, None)?, &data, None)?;
    let (b, rb) = iterate_control(&naive_lift(&phi, cfg.moments, Some(seed + 1))?, &data, None)?;
    let budget = cfg.moments + cfg.precision as usize;
    let mut out = vec![
        Check { name: format!("converged in {} ≤ {budget} steps", ra.iterations.max(rb.iterations)), pass: ra.iterations.max(rb.iterations) <= budget, residual: None },
        Check { name: "ρ(Ψ) = φ".into(), pass: ra.rho_residual.is_none(), residual: ra.rho_residual },
        Check { name: "U_p Ψ = λΨ".into(), pass: ra.eigen_residual.is_none(), residual: ra.eigen_residual },
        Check { name: "relations hold".into(), pass: a.satisfies_relations()?, residual: None },
    ];
    let d = a.sub(&b)?;
    let res = d.values.iter().flatten().filter_map(|x| x.valuation()).min();
    out.push(Check { name: "lift independent of the naive lift".into(), pass: a.eq_at_prec(&b), residual: res });
    Ok(out)
}

fn interpolation(cfg: &JobConfig) -> Result<Vec<Check>> {
    let s = setup(cfg)?;
    let mut out = Vec::new();
    let n = cfg.modulus.max(1);
    let reps = RepTable::canonical(cfg.p, n)?;
    let mu = build_mu(&s.psi, &s.lambda, &reps)?;
    for c in &cfg.characters {
        let chi = cfg.character(c)?;
        let mut li = mu.lambda_f_inv.clone();
        if chi.l.degree() > 1 {
            li = li.embed(&chi.l)?;
        }
        let rhs = ev_phi(&s.phi, &chi, &reps, 2)?.mul(&li)?;
        out.push(compare(format!("μ(φ) = λ_f⁻¹ Ev_φ,2 for {}", c.name), &evaluate_mu(&mu, &chi)?, &rhs)?);
    }
    // trivial character at f = (p) against the unramified multiplier
    let q = NumberFieldData::builtin("Q")?;
    let mut spec = CharacterSpec::trivial(&q, 1);
    spec.infinity_type = vec![cfg.v];
    spec.signs = vec![if cfg.v % 2 == 0 { 1 } else { -1 }];
    let triv = HeckeCharacter::new(&q, &q.local_primes(cfg.p, cfg.precision + 2)?, spec, &cfg.ctx()?)?;
    let mu1 = build_mu(&s.psi, &s.lambda, &RepTable::canonical(cfg.p, 1)?)?;
    let z = interpolation_multiplier(&triv, &s.lambda, true)?;
    let ev1 = ev_phi(&s.phi, &triv, &RepTable::canonical(cfg.p, 0)?, 1)?;
    // conductor 1, so λ_f = π_f = 1
    out.push(compare("trivial character: μ = Z_p Ev_φ,1".into(), &evaluate_mu(&mu1, &triv)?, &z.mul(&ev1)?)?);
    // unramified extension at the other primes of the level
    let mut ells = Vec::new();
    let mut m = cfg.level;
    for l in 2..=m {
        if m % l == 0 {
            ells.push(l);
            while m % l == 0 {
                m /= l;
            }
        }
    }
    for ell in ells.into_iter().filter(|&l| l != cfg.p) {
        let (lhs, rhs) = unramified_extension_identity(&s.phi, &triv, 1, ell)?;
        out.push(compare(format!("unramified extension at ℓ = {ell}"), &lhs, &rhs)?);
    }
    Ok(out)
}
