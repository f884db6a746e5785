use std::sync::{Arc, OnceLock};

use padic_lfun::hecke::GeneratorValue;
use padic_lfun::lfun::{
    build_mu, ev_classical_2, ev_overconvergent, ev_phi, evaluate_mu, interpolation_multiplier, unramified_extension_identity,
    RayClassDistribution, RepTable,
};
use padic_lfun::lift::{iterate_control, naive_lift, EigenData};
use padic_lfun::symbols::{eigensymbol, ClassicalSpace, EigenSpec, Eigensymbol, ManinData, PSymbol};
use padic_lfun::{CharacterSpec, HeckeCharacter, NumberFieldData, PAdicContext, PAdicElement};
use rand::{Rng, SeedableRng};

const M: usize = 10;
const N: i64 = 10;

struct Fixture {
    eig: Eigensymbol,
    psi: PSymbol,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let space = ClassicalSpace::new(Arc::new(ManinData::new(55).unwrap()), 0, 0).unwrap();
        let ctx = PAdicContext::qp(5, N).unwrap();
        let eig = eigensymbol(&space, &EigenSpec { sign: 1, hecke: vec![(2, -2)] }, 5, &ctx).unwrap();
        let data = [EigenData { p: 5, lambda: eig.lambda.clone() }];
        let (psi, _) = iterate_control(&naive_lift(&eig.phi, M, None).unwrap(), &data, None).unwrap();
        Fixture { eig, psi }
    })
}

fn mu(n: u32) -> RayClassDistribution {
    let f = fixture();
    build_mu(&f.psi, &f.eig.lambda, &RepTable::canonical(5, n).unwrap()).unwrap()
}

/// Dirichlet character of conductor 5^n sending 2 to a root of unity of
/// the given order, valued in Q_5 (order | 4) or Q_5(ζ_25).
fn dirichlet(n: u32, order: u64, exponent: u64, sign: i8) -> HeckeCharacter {
    let q = NumberFieldData::builtin("Q").unwrap();
    let primes = q.local_primes(5, 12).unwrap();
    let l = if 4 % order == 0 { PAdicContext::qp(5, N).unwrap() } else { PAdicContext::cyclotomic(5, 2, 20 * N).unwrap() };
    let spec = CharacterSpec {
        conductor: vec![n],
        infinity_type: vec![0],
        generators: vec![GeneratorValue { generator: vec![2], order, exponent }],
        signs: vec![sign],
    };
    HeckeCharacter::new(&q, &primes, spec, &l).unwrap()
}

fn trivial(r: i64) -> HeckeCharacter {
    let q = NumberFieldData::builtin("Q").unwrap();
    let primes = q.local_primes(5, 12).unwrap();
    let mut spec = CharacterSpec::trivial(&q, 1);
    spec.infinity_type = vec![r];
    spec.signs = vec![if r % 2 == 0 { 1 } else { -1 }];
    HeckeCharacter::new(&q, &primes, spec, &PAdicContext::qp(5, N).unwrap()).unwrap()
}

#[test]
fn overconvergent_evaluation_specialises_to_the_classical_one() {
    let f = fixture();
    for n in [1u32, 2] {
        let reps = RepTable::canonical(5, n).unwrap();
        assert_eq!(reps.reps.len(), 4 * 5usize.pow(n - 1));
        for &a in &reps.reps {
            let d = ev_overconvergent(&f.psi, reps.modulus(), a).unwrap();
            let c = ev_classical_2(&f.eig.phi, reps.modulus(), 0, a).unwrap();
            assert!(d.moments[0].eq_at_prec(&c), "n={n} a={a}");
        }
    }
    // weight 2, any moment lift (the square commutes for every Ψ)
    let ctx = PAdicContext::qp(5, N).unwrap();
    let space = ClassicalSpace::new(Arc::new(ManinData::new(5).unwrap()), 2, 0).unwrap();
    let coeffs: Vec<_> = (1..=space.dim() as i64).map(|c| PAdicElement::from_i64(&ctx, c)).collect();
    let phi = PSymbol::from_rational(space.manin.clone(), &ctx, 2, 0, &space.basis, &coeffs).unwrap();
    let psi = naive_lift(&phi, 6, Some(7)).unwrap();
    for a in [1i128, 2, 3, 4, 7, 13] {
        let d = ev_overconvergent(&psi, 25, a).unwrap();
        for j in 0..=2 {
            let c = ev_classical_2(&phi, 25, j, a).unwrap();
            assert!(d.moments[(2 - j) as usize].eq_at_prec(&c), "a={a} j={j}");
        }
    }
    assert_eq!(ev_overconvergent(&f.psi, 3, 1).unwrap_err().code(), "E_MODULUS");
}

#[test]
fn distribution_is_compatible_in_the_modulus() {
    let f = fixture();
    let ctx = &f.psi.ctx;
    let (m1, m2) = (mu(1), mu(2));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
    for case in 0..24 {
        let y = case % 4;
        let e = rng.gen_range(0..M);
        let c = PAdicElement::from_i64(ctx, rng.gen_range(-50..50));
        let coarse = m1.eval_monomial(y, e, &c).unwrap();
        let a = m1.reps.reps[y];
        let mut fine = PAdicElement::zero(ctx);
        for b in 0..5 {
            let y2 = m2.class_of(a + 5 * b).unwrap();
            fine = fine.add(&m2.eval_monomial(y2, e, &c).unwrap()).unwrap();
        }
        assert!(fine.eq_at_prec(&coarse), "y={y} e={e}");
    }
    // characters of conductor 5 seen at modulus 5 and 25
    for chi in [dirichlet(1, 4, 1, -1), dirichlet(1, 2, 1, 1), trivial(0)] {
        let a = evaluate_mu(&m1, &chi).unwrap();
        let b = evaluate_mu(&m2, &chi).unwrap();
        assert!(a.eq_at_prec(&b));
    }
}

#[test]
fn representatives_do_not_matter() {
    let f = fixture();
    for n in [1u32, 2] {
        let base = RepTable::canonical(5, n).unwrap();
        let a = build_mu(&f.psi, &f.eig.lambda, &base).unwrap();
        for seed in 0..3 {
            let moved = base.shifted(seed);
            assert_ne!(moved.reps, base.reps);
            let b = build_mu(&f.psi, &f.eig.lambda, &moved).unwrap();
            for (x, y) in a.evals.iter().zip(&b.evals) {
                assert!(x.moments.iter().zip(&y.moments).all(|(s, t)| s.eq_at_prec(t)));
            }
        }
    }
}

#[test]
fn mu_matches_classical_evaluation_on_finite_order_characters() {
    let f = fixture();
    for (n, chi) in [(1, dirichlet(1, 4, 1, -1)), (1, dirichlet(1, 4, 3, -1)), (1, dirichlet(1, 2, 1, 1)), (2, dirichlet(2, 20, 1, -1)), (2, dirichlet(2, 10, 1, 1))] {
        let m = mu(n);
        let reps = RepTable::canonical(5, n).unwrap();
        let lhs = evaluate_mu(&m, &chi).unwrap();
        // k = 0, j = v = 0: μ(φ) = λ^{-n} Ev_φ
        let mut li = f.eig.lambda.pow(-(n as i64)).unwrap();
        if chi.l.degree() > 1 {
            li = li.embed(&chi.l).unwrap();
        }
        for norm in [1u8, 2] {
            let rhs = ev_phi(&f.eig.phi, &chi, &reps, norm).unwrap().mul(&li).unwrap();
            assert!(lhs.eq_at_prec(&rhs), "n={n} norm={norm}");
        }
    }
}

#[test]
fn odd_characters_vanish_on_the_plus_part() {
    let f = fixture();
    let reps = RepTable::canonical(5, 1).unwrap();
    assert!(ev_phi(&f.eig.phi, &dirichlet(1, 4, 1, -1), &reps, 2).unwrap().is_zero());
    assert!(ev_phi(&f.eig.phi, &dirichlet(1, 4, 3, -1), &reps, 2).unwrap().is_zero());
    assert!(ev_phi(&f.eig.phi, &dirichlet(2, 20, 1, -1), &RepTable::canonical(5, 2).unwrap(), 2).unwrap().is_zero());
}

#[test]
fn trivial_character_picks_up_the_euler_factor() {
    let f = fixture();
    let lam = &f.eig.lambda;
    let one = PAdicElement::one(&f.psi.ctx);
    let triv = trivial(0);
    let lhs = evaluate_mu(&mu(1), &triv).unwrap();
    let d0 = ev_classical_2(&f.eig.phi, 1, 0, 0).unwrap();
    let want = one.sub(&lam.inv().unwrap()).unwrap().mul(&d0).unwrap();
    assert!(lhs.eq_at_prec(&want));
    let z = interpolation_multiplier(&triv, lam, true).unwrap();
    let ev1 = ev_phi(&f.eig.phi, &triv, &RepTable::canonical(5, 0).unwrap(), 1).unwrap();
    assert!(lhs.eq_at_prec(&z.mul(&ev1).unwrap()));
    assert!(interpolation_multiplier(&triv, lam, false).unwrap().eq_at_prec(&one));
    // |·|^j: 1 - p^j/λ
    for j in 0..3 {
        let z = interpolation_multiplier(&trivial(j), lam, true).unwrap();
        let want = one.sub(&PAdicElement::from_i64(&f.psi.ctx, 5i64.pow(j as u32)).div(lam).unwrap()).unwrap();
        assert!(z.eq_at_prec(&want));
    }
    assert_eq!(evaluate_mu(&mu(1), &trivial(1)).unwrap_err().code(), "E_NON_CRITICAL");
    assert_eq!(interpolation_multiplier(&dirichlet(1, 2, 1, 1), lam, true).unwrap_err().code(), "E_PRECONDITION");
}

#[test]
fn unramified_extension_identity_holds() {
    let f = fixture();
    for (chi, n, ell) in [(trivial(0), 1, 11), (dirichlet(1, 2, 1, 1), 1, 11), (trivial(0), 0, 5), (dirichlet(2, 10, 1, 1), 2, 11)] {
        let (lhs, rhs) = unramified_extension_identity(&f.eig.phi, &chi, n, ell).unwrap();
        assert!(lhs.eq_at_prec(&rhs), "n={n} ℓ={ell}");
    }
    // U_11 acts by 1 and χ(11) = 1: both sides vanish
    let (lhs, _) = unramified_extension_identity(&f.eig.phi, &trivial(0), 1, 11).unwrap();
    assert!(lhs.is_zero());
    assert!(unramified_extension_identity(&f.eig.phi, &trivial(0), 1, 5).is_err());
    assert!(unramified_extension_identity(&f.eig.phi, &trivial(0), 1, 3).is_err());
}
