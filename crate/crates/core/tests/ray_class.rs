use padic_lfun::field::NumberFieldData;
use padic_lfun::ray_class::{RayClassGroup, ResidueRing};

fn group(name: &str, p: u64, exps: &[u32]) -> RayClassGroup {
    let f = NumberFieldData::builtin(name).unwrap();
    let primes = f.local_primes(p, 8).unwrap();
    RayClassGroup::build(&f, &primes, exps).unwrap()
}

fn int_res(g: &RayClassGroup, n: i128) -> Vec<Vec<u128>> {
    g.ring.of_integer(n).unwrap()
}

#[test]
fn rational_prime_conductor() {
    for p in [3u64, 5, 7] {
        let g = group("Q", p, &[1]);
        assert_eq!(g.order() as u64, p - 1);
        // brute force: classes are exactly the residues 1..p-1
        for a in 1..p as i128 {
            for b in 1..p as i128 {
                let same = g.class_of(&int_res(&g, a)).unwrap() == g.class_of(&int_res(&g, b)).unwrap();
                assert_eq!(same, a == b);
            }
        }
        assert_eq!(g.invariants, vec![p - 1]);
    }
}

#[test]
fn trivial_modulus_gives_narrow_class_group() {
    for name in ["Q", "Qi", "Qsqrt2"] {
        let f = NumberFieldData::builtin(name).unwrap();
        let p = if name == "Qsqrt2" { 7 } else { 5 };
        let primes = f.local_primes(p, 6).unwrap();
        let g = RayClassGroup::build(&f, &primes, &vec![0; primes.len()]).unwrap();
        assert_eq!(g.order(), 1);
    }
}

#[test]
fn gaussian_split_prime() {
    let g = group("Qi", 5, &[1, 0]);
    assert_eq!(g.order(), 1);
    // oracle: i has order 4 modulo each prime over 5, so the group has
    // order φ(5^a) φ(5^b) / 4 when a + b > 0
    let phi = |n: u32| if n == 0 { 1 } else { 4 * 5u64.pow(n - 1) };
    for (a, b) in [(1, 1), (2, 0), (2, 1), (0, 3)] {
        let g = group("Qi", 5, &[a, b]);
        assert_eq!(g.order() as u64, phi(a) * phi(b) / 4, "({a},{b})");
        assert_eq!(g.invariants.iter().product::<u64>(), g.order() as u64);
    }
}

#[test]
fn real_quadratic_at_seven() {
    // (3 + 2 sqrt2) maps to (2, 4) mod 7 at the two primes; both have order 3
    let g = group("Qsqrt2", 7, &[1, 1]);
    assert_eq!(g.order(), 36 / 3);
    let g = group("Qsqrt2", 7, &[1, 0]);
    assert_eq!(g.order(), 2);
}

#[test]
fn orders_match_exact_sequence() {
    for (name, p) in [("Q", 5u64), ("Q", 3), ("Qi", 5), ("Qsqrtm11", 3), ("Qsqrt2", 7), ("Qcbrt2", 5)] {
        let f = NumberFieldData::builtin(name).unwrap();
        let primes = f.local_primes(p, 8).unwrap();
        let k = primes.len();
        let mut exps = vec![0u32; k];
        loop {
            let ring = ResidueRing::new(&primes, &exps).unwrap();
            if ring.norm() <= 125 {
                let g = RayClassGroup::build(&f, &primes, &exps).unwrap();
                let units = ring.units().len();
                assert_eq!(g.order() * g.unit_image.len(), units, "{name} {exps:?}");
                assert_eq!(g.invariants.iter().product::<u64>(), g.order() as u64);
            }
            // odometer over exponent vectors with entries < 4
            let mut i = 0;
            while i < k {
                exps[i] += 1;
                if exps[i] < 4 {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
}

#[test]
fn compatible_representatives_at_three() {
    let coarse = group("Q", 3, &[1]);
    let fine = group("Q", 3, &[2]);
    let us = coarse.compatible_representatives(&fine).unwrap();
    let vals: Vec<u128> = us.iter().map(|u| u[0][0]).collect();
    assert_eq!(vals, vec![1, 4, 7]);
    assert_eq!(fine.order(), 6);
}

#[test]
fn compatible_representatives_for_q5() {
    let coarse = group("Q", 5, &[1]);
    let fine = group("Q", 5, &[2]);
    let us = coarse.compatible_representatives(&fine).unwrap();
    assert_eq!(us.len(), 5);
    assert!(us.iter().all(|u| u[0][0] % 5 == 1));
    // a coarse modulus not divisible by every prime over p is refused
    let g0 = group("Qi", 5, &[1, 0]);
    let g1 = group("Qi", 5, &[2, 0]);
    assert!(g0.compatible_representatives(&g1).is_err());
    let g0 = group("Qi", 5, &[1, 1]);
    let g1 = group("Qi", 5, &[2, 1]);
    let us = g0.compatible_representatives(&g1).unwrap();
    assert_eq!(us.len() * g0.order(), g1.order());
}

#[test]
fn projection_is_a_homomorphism() {
    let g = group("Q", 5, &[2]);
    let deep = group("Q", 5, &[3]);
    assert_eq!(g.coset_of(&deep.ring, &int_res(&deep, 7)).unwrap(), g.class_of(&int_res(&g, 7)).unwrap());
    assert_eq!(g.class_of(&g.ring.one()).unwrap(), g.identity());
    let coarse = group("Q", 5, &[1]);
    for a in (1..125i128).filter(|a| a % 5 != 0) {
        for b in [2i128, 3, 7, 11] {
            let za = int_res(&deep, a);
            let zb = int_res(&deep, b);
            let prod = deep.ring.mul(&za, &zb);
            let lhs = g.coset_of(&deep.ring, &prod).unwrap();
            let rhs = g.mul_classes(g.coset_of(&deep.ring, &za).unwrap(), g.coset_of(&deep.ring, &zb).unwrap());
            assert_eq!(lhs, rhs);
            // composing projections through the intermediate level
            let via = coarse.coset_of(&g.ring, &g.ring.reduce_to(&za, &[2])).unwrap();
            assert_eq!(via, coarse.coset_of(&deep.ring, &za).unwrap());
        }
    }
}

#[test]
fn representative_factorisation() {
    let g = group("Qi", 5, &[1, 1]);
    let a = g.reps[1].clone();
    // multiply by the image of i: same class, factor recovered
    let i_img = g.ring.of_global(&vec![0, 1]).unwrap();
    let a2 = g.ring.mul(&a, &i_img);
    let fac = g.factorise(&a, &a2).unwrap();
    assert_eq!(fac.unit_exponents, vec![1]);
    assert_eq!(fac.u, g.ring.one());
}
