use padic_lfun::field::{embed_global, uniformizer_power, uniformizer_scalar, NumberFieldData};
use padic_lfun::{PAdicContext, PAdicElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SHIPPED: [&str; 5] = ["Q", "Qi", "Qsqrtm11", "Qsqrt2", "Qcbrt2"];

fn shipped_with_prime() -> Vec<(NumberFieldData, u64)> {
    vec![
        (NumberFieldData::builtin("Q").unwrap(), 5),
        (NumberFieldData::builtin("Qi").unwrap(), 5),
        (NumberFieldData::builtin("Qi").unwrap(), 3),
        (NumberFieldData::builtin("Qsqrtm11").unwrap(), 3),
        (NumberFieldData::builtin("Qsqrt2").unwrap(), 7),
        (NumberFieldData::builtin("Qcbrt2").unwrap(), 5),
    ]
}

#[test]
fn shipped_fields_validate() {
    for n in SHIPPED {
        let f = NumberFieldData::builtin(n).unwrap();
        assert_eq!(f.r1() + 2 * f.r2(), f.degree());
    }
}

#[test]
fn malformed_files_are_refused() {
    let good = include_str!("../data/fields/Qsqrt2.toml");
    for (from, to) in [
        ("signature = [2, 0]", "signature = [0, 1]"),
        ("positive_unit_generators = [[3, 2]]", "positive_unit_generators = [[1, 1]]"),
        ("different_generator = [0, 2]", "different_generator = [0, 1]"),
        ("seeds = [[3]]", "seeds = [[2]]"),
        ("interval = [\"7/5\", \"3/2\"]", "interval = [\"3/2\", \"2\"]"),
        ("schema_version = 1", "schema_version = 9"),
    ] {
        let bad = good.replace(from, to);
        assert_ne!(bad, good);
        let err = NumberFieldData::from_toml_str(&bad).unwrap_err();
        assert_eq!(err.code(), "E_FIELD_INVALID", "{from}");
    }
}

#[test]
fn gaussian_i_at_five() {
    let f = NumberFieldData::builtin("Qi").unwrap();
    let primes = f.local_primes(5, 8).unwrap();
    let img = embed_global(&primes, &vec![0, 1]).unwrap();
    let a = &img.comps[0];
    let b = &img.comps[1];
    // Hensel oracle: a^2 = -1 and a = 2 mod 5; the other component is -a
    assert_eq!(a.unit_part()[0] % 5, 2);
    assert!(a.mul(a).unwrap().eq_at_prec(&PAdicElement::from_i64(a.ctx(), -1)));
    assert!(b.eq_at_prec(&a.neg()));
}

#[test]
fn one_and_integers_embed_trivially() {
    for (f, p) in shipped_with_prime() {
        let primes = f.local_primes(p, 8).unwrap();
        let one = embed_global(&primes, &f.one()).unwrap();
        assert!(one.comps.iter().all(|c| *c == PAdicElement::one(c.ctx())));
        let n = embed_global(&primes, &f.from_int(-17)).unwrap();
        assert!(n.comps.iter().all(|c| *c == PAdicElement::from_i64(c.ctx(), -17)));
    }
}

#[test]
fn embedding_is_a_ring_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (f, p) in shipped_with_prime() {
        let primes = f.local_primes(p, 8).unwrap();
        for _ in 0..100 {
            let x: Vec<i128> = (0..f.degree()).map(|_| rng.gen_range(-50..50)).collect();
            let y: Vec<i128> = (0..f.degree()).map(|_| rng.gen_range(-50..50)).collect();
            let (ex, ey) = (embed_global(&primes, &x).unwrap(), embed_global(&primes, &y).unwrap());
            let s = embed_global(&primes, &f.add(&x, &y)).unwrap();
            let m = embed_global(&primes, &f.mul(&x, &y)).unwrap();
            assert!(s.eq_at_prec(&ex.add(&ey).unwrap()));
            assert!(m.eq_at_prec(&ex.mul(&ey).unwrap()));
        }
    }
}

#[test]
fn local_norms_multiply_to_global_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (f, p) in shipped_with_prime() {
        let primes = f.local_primes(p, 8).unwrap();
        for _ in 0..30 {
            let x: Vec<i128> = (0..f.degree()).map(|_| rng.gen_range(-30..30)).collect();
            if x.iter().all(|&c| c == 0) {
                continue;
            }
            let n = f.norm(&x).unwrap();
            let mut prod: Option<PAdicElement> = None;
            for l in &primes {
                let mut local = PAdicElement::one(&l.ctx);
                for k in 0..l.embeddings.len() {
                    local = local.mul(&l.image_under(&x, k).unwrap()).unwrap();
                }
                let qp = PAdicContext::qp(p, 8).unwrap();
                // a norm from an unramified extension lies in Q_p: read off the
                // first coordinate
                let r = local.to_record();
                assert!(r.digits.iter().skip(1).all(|d| d.iter().all(|&x| x == 0)));
                let v = local.valuation().unwrap_or(8);
                let unit = if local.is_zero() { 0 } else { local.unit_part()[0] as i128 };
                let back = PAdicElement::from_i128(&qp, unit).mul(&PAdicElement::from_i64(&qp, p as i64).pow(v).unwrap()).unwrap();
                prod = Some(match prod {
                    None => back,
                    Some(a) => a.mul(&back).unwrap(),
                });
            }
            let qp = PAdicContext::qp(p, 8).unwrap();
            let want = PAdicElement::from_bigrational(&qp, &num_rational::BigRational::from_integer(n.clone())).unwrap();
            let got = prod.unwrap();
            assert!(got.eq_at_prec(&want) || got.eq_at_prec(&want.neg()), "{} {x:?}", f.name());
        }
    }
}

#[test]
fn unit_generators_embed_as_units() {
    for (f, p) in shipped_with_prime() {
        let primes = f.local_primes(p, 8).unwrap();
        for u in f.unit_generators().iter().chain(&f.positive_unit_generators()) {
            assert!(embed_global(&primes, u).unwrap().is_unit());
        }
    }
}

#[test]
fn total_positivity() {
    let q2 = NumberFieldData::builtin("Qsqrt2").unwrap();
    // 1 + sqrt2 is positive at one place, but its conjugate 1 - sqrt2 is not
    assert!(!q2.is_totally_positive(&vec![1, 1]).unwrap());
    assert!(!q2.is_totally_positive(&vec![1, -1]).unwrap());
    assert!(q2.approx_embedding(&[1, 1], 0).0 > 0.0);
    assert!(q2.is_totally_positive(&vec![2, 1]).unwrap());
    // 3 - 2 sqrt2 = 0.17... > 0 and its conjugate 5.8 > 0
    assert!(q2.is_totally_positive(&vec![3, -2]).unwrap());
    // 99 - 70 sqrt2 is positive but tiny; -(99 - 70 sqrt2) is not
    assert!(q2.is_totally_positive(&vec![99, -70]).unwrap());
    assert!(!q2.is_totally_positive(&vec![-99, 70]).unwrap());
    let q = NumberFieldData::builtin("Q").unwrap();
    assert!(q.is_totally_positive(&q.one()).unwrap());
    assert!(!q.is_totally_positive(&vec![-3]).unwrap());
    let qi = NumberFieldData::builtin("Qi").unwrap();
    assert!(qi.is_totally_positive(&vec![-5, 2]).unwrap());
    let c = NumberFieldData::builtin("Qcbrt2").unwrap();
    assert!(c.is_totally_positive(&vec![-1, 1, 0]).unwrap());
    assert!(!c.is_totally_positive(&vec![1, -1, 0]).unwrap());
}

#[test]
fn uniformizer_powers() {
    let q = NumberFieldData::builtin("Q").unwrap();
    let pr = q.local_primes(5, 10).unwrap();
    assert!(uniformizer_power(&pr, &[0]).unwrap().comps[0] == PAdicElement::one(&pr[0].ctx));
    assert!(uniformizer_power(&pr, &[2]).unwrap().comps[0].eq_at_prec(&PAdicElement::from_i64(&pr[0].ctx, 25)));

    let qi = NumberFieldData::builtin("Qi").unwrap();
    let pr = qi.local_primes(5, 10).unwrap();
    let l = PAdicContext::qp(5, 10).unwrap();
    // f = 𝔭: exponent 1 at 𝔭, 0 at its conjugate; weight (1, 1)
    let s = uniformizer_scalar(&pr, &[1, 0], &[1, 1], &l).unwrap();
    assert_eq!(s.valuation(), Some(1));
    let s = uniformizer_scalar(&pr, &[2, 1], &[3, 1], &l).unwrap();
    assert_eq!(s.valuation(), Some(2 * 3 + 1));
}
