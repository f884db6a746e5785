//! Narrow ray class groups of conductor dividing p^∞.
//!
//! With narrow class number one, Cl_F⁺(f) is (O_F/f)^× modulo the image of
//! the totally positive units, and every class has a representative idele
//! whose only nontrivial components sit at the primes above p.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::field::{embed_global, FieldElem, LocalPrime, NumberFieldData};

/// Residue in O_F/f: canonical raw coordinates per prime above p.
pub type Residue = Vec<Vec<u128>>;

/// The ring O_F/f for f = ∏ 𝔭^{n_𝔭}.
#[derive(Debug, Clone)]
pub struct ResidueRing {
    pub primes: Vec<LocalPrime>,
    pub exps: Vec<u32>,
}

impl ResidueRing {
    pub fn new(primes: &[LocalPrime], exps: &[u32]) -> Result<Self> {
        if exps.len() != primes.len() {
            return Err(Error::InvalidModulus(format!("{} exponents for {} primes", exps.len(), primes.len())));
        }
        for (l, &n) in primes.iter().zip(exps) {
            if n as i64 > l.ctx.n() {
                return Err(Error::PrecisionInsufficient(format!("modulus exponent {n} exceeds precision")));
            }
        }
        Ok(ResidueRing { primes: primes.to_vec(), exps: exps.to_vec() })
    }

    /// N(f).
    pub fn norm(&self) -> u64 {
        self.primes.iter().zip(&self.exps).map(|(l, &n)| l.norm_of_prime().pow(n)).product()
    }

    pub fn one(&self) -> Residue {
        self.primes
            .iter()
            .zip(&self.exps)
            .map(|(l, &n)| l.ctx.reduce_raw(&l.ctx.one_raw(), n as i64))
            .collect()
    }

    pub fn of_global(&self, x: &FieldElem) -> Result<Residue> {
        let img = embed_global(&self.primes, x)?;
        img.comps
            .iter()
            .zip(&self.exps)
            .map(|(c, &n)| c.to_raw_mod(n as i64))
            .collect()
    }

    pub fn of_integer(&self, n: i128) -> Result<Residue> {
        let mut x = vec![0i128; self.degree()];
        x[0] = n;
        self.of_global(&x)
    }

    fn degree(&self) -> usize {
        // ring of a degree-d field: recover d from the embedding fibers
        self.primes.iter().map(|l| l.embeddings.len()).sum()
    }

    pub fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        self.primes
            .iter()
            .zip(&self.exps)
            .enumerate()
            .map(|(i, (l, &n))| l.ctx.reduce_raw(&l.ctx.mul_raw(&a[i], &b[i]), n as i64))
            .collect()
    }

    pub fn pow(&self, a: &Residue, mut k: u64) -> Residue {
        let mut r = self.one();
        let mut b = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            k >>= 1;
        }
        r
    }

    pub fn is_unit(&self, a: &Residue) -> bool {
        self.primes
            .iter()
            .zip(&self.exps)
            .enumerate()
            .all(|(i, (l, &n))| n == 0 || l.ctx.val_raw(&a[i], 1) == 0)
    }

    /// Reduce a residue modulo a divisor g | f.
    pub fn reduce_to(&self, a: &Residue, g: &[u32]) -> Residue {
        self.primes
            .iter()
            .zip(g)
            .enumerate()
            .map(|(i, (l, &n))| l.ctx.reduce_raw(&a[i], n as i64))
            .collect()
    }

    /// Every element of (O_F/f)^×, in a fixed deterministic order.
    pub fn units(&self) -> Vec<Residue> {
        let mut per_prime: Vec<Vec<Vec<u128>>> = Vec::new();
        for (l, &n) in self.primes.iter().zip(&self.exps) {
            let (e, f) = (l.e as i64, l.f as usize);
            let mut moduli = Vec::new();
            for j in 0..e {
                let ex = ((n as i64 - j + e - 1).max(0) / e) as u32;
                for _ in 0..f {
                    moduli.push((l.p as u128).pow(ex));
                }
            }
            let mut all = vec![vec![]];
            for &m in &moduli {
                all = all
                    .into_iter()
                    .flat_map(|v: Vec<u128>| {
                        (0..m).map(move |c| {
                            let mut w = v.clone();
                            w.push(c);
                            w
                        })
                    })
                    .collect();
            }
            all.retain(|v| n == 0 || l.ctx.val_raw(v, 1) == 0);
            per_prime.push(all);
        }
        let mut out: Vec<Residue> = vec![vec![]];
        for comp in per_prime {
            out = out
                .into_iter()
                .flat_map(|r| {
                    comp.iter().map(move |c| {
                        let mut s = r.clone();
                        s.push(c.clone());
                        s
                    })
                })
                .collect();
        }
        out
    }
}

/// Factorisation a' = a · γ · u of two representatives of the same class,
/// with γ a totally positive unit (given by exponents on the declared
/// generators) and u ≡ 1 mod f.
#[derive(Debug, Clone, PartialEq)]
pub struct RepFactorisation {
    pub unit_exponents: Vec<u32>,
    pub u: Residue,
}

/// Cl_F⁺(f) for f | p^∞.
#[derive(Debug, Clone)]
pub struct RayClassGroup {
    pub ring: ResidueRing,
    /// Image of O_{F,+}^× in (O_F/f)^× with a word in the generators.
    pub unit_image: HashMap<Residue, Vec<u32>>,
    /// Class representatives a_y (the finite idele part at f).
    pub reps: Vec<Residue>,
    class_index: HashMap<Residue, usize>,
    pub invariants: Vec<u64>,
}

impl RayClassGroup {
    pub fn build(field: &NumberFieldData, primes: &[LocalPrime], exps: &[u32]) -> Result<Self> {
        if field.file.narrow_class_number != 1 {
            return Err(Error::Unsupported("narrow class number > 1".into()));
        }
        let ring = ResidueRing::new(primes, exps)?;
        let gens: Vec<Residue> =
            field.positive_unit_generators().iter().map(|u| ring.of_global(u)).collect::<Result<_>>()?;
        // BFS closure of the unit image, remembering exponent words
        let mut unit_image: HashMap<Residue, Vec<u32>> = HashMap::new();
        let mut queue = VecDeque::new();
        unit_image.insert(ring.one(), vec![0; gens.len()]);
        queue.push_back(ring.one());
        while let Some(x) = queue.pop_front() {
            let w = unit_image[&x].clone();
            for (i, g) in gens.iter().enumerate() {
                let y = ring.mul(&x, g);
                if !unit_image.contains_key(&y) {
                    let mut w2 = w.clone();
                    w2[i] += 1;
                    unit_image.insert(y.clone(), w2);
                    queue.push_back(y);
                }
            }
        }
        let mut reps = Vec::new();
        let mut class_index = HashMap::new();
        for u in ring.units() {
            if class_index.contains_key(&u) {
                continue;
            }
            let y = reps.len();
            for h in unit_image.keys() {
                class_index.insert(ring.mul(&u, h), y);
            }
            reps.push(u);
        }
        let mut g = RayClassGroup { ring, unit_image, reps, class_index, invariants: vec![] };
        g.invariants = g.compute_invariants();
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// Class of a unit residue modulo f.
    pub fn class_of(&self, a: &Residue) -> Result<usize> {
        self.class_index
            .get(a)
            .copied()
            .ok_or_else(|| Error::InvalidModulus("residue is not a unit modulo f".into()))
    }

    /// Class of a residue given modulo a multiple of f (the projection from a
    /// deeper level).
    pub fn coset_of(&self, deeper: &ResidueRing, z: &Residue) -> Result<usize> {
        if deeper.exps.iter().zip(&self.ring.exps).any(|(a, b)| a < b) {
            return Err(Error::InvalidModulus("source modulus does not refine f".into()));
        }
        self.class_of(&deeper.reduce_to(z, &self.ring.exps))
    }

    pub fn class_of_global(&self, x: &FieldElem) -> Result<usize> {
        self.class_of(&self.ring.of_global(x)?)
    }

    pub fn mul_classes(&self, a: usize, b: usize) -> usize {
        self.class_index[&self.ring.mul(&self.reps[a], &self.reps[b])]
    }

    pub fn identity(&self) -> usize {
        self.class_index[&self.ring.one()]
    }

    /// Write a' = a · γ · u with γ in the unit image and u ≡ 1 mod f; for
    /// representatives a, a' of the same class the u returned is 1.
    pub fn factorise(&self, a: &Residue, a2: &Residue) -> Result<RepFactorisation> {
        if self.class_of(a)? != self.class_of(a2)? {
            return Err(Error::Precondition("representatives of different classes".into()));
        }
        for (h, w) in &self.unit_image {
            if self.ring.mul(a, h) == *a2 {
                return Ok(RepFactorisation { unit_exponents: w.clone(), u: self.ring.one() });
            }
        }
        Err(Error::Precondition("no unit relates the two representatives".into()))
    }

    /// Invariant factors d_1 | d_2 | ... of the class group, read off the
    /// counts #{x : x^(ℓ^i) = 1}.
    fn compute_invariants(&self) -> Vec<u64> {
        let id = self.identity();
        let orders: Vec<u64> = (0..self.order())
            .map(|y| {
                let (mut k, mut x) = (1u64, y);
                while x != id {
                    x = self.mul_classes(x, y);
                    k += 1;
                }
                k
            })
            .collect();
        let mut n = self.order() as u64;
        let mut ell_parts: Vec<(u64, Vec<u32>)> = Vec::new();
        let mut l = 2u64;
        while n > 1 {
            if n % l == 0 {
                while n % l == 0 {
                    n /= l;
                }
                // b[i-1] = number of cyclic ℓ-factors of exponent ≥ i
                let mut b = Vec::new();
                let (mut prev, mut i) = (1u64, 1u32);
                loop {
                    let c = orders.iter().filter(|&&o| l.pow(i) % o == 0).count() as u64;
                    if c == prev {
                        break;
                    }
                    let (mut r, mut k) = (c / prev, 0);
                    while r > 1 {
                        r /= l;
                        k += 1;
                    }
                    b.push(k);
                    prev = c;
                    i += 1;
                }
                ell_parts.push((l, b));
            }
            l += 1;
        }
        let width = ell_parts.iter().map(|(_, b)| b.first().copied().unwrap_or(0)).max().unwrap_or(0);
        let mut inv: Vec<u64> = (1..=width)
            .map(|k| {
                ell_parts
                    .iter()
                    .map(|(l, b)| l.pow(b.iter().filter(|&&x| x >= k).count() as u32))
                    .product()
            })
            .collect();
        inv.reverse();
        if inv.is_empty() {
            inv.push(1);
        }
        inv
    }

    /// Units u_r ≡ 1 mod f such that {a_y u_r} represents Cl_F⁺(f𝔭) without
    /// duplicates. `fine` is the group at modulus f𝔭.
    pub fn compatible_representatives(&self, fine: &RayClassGroup) -> Result<Vec<Residue>> {
        if self.ring.exps.iter().any(|&n| n == 0) {
            return Err(Error::Precondition("f must be divisible by every prime above p".into()));
        }
        let mut us: Vec<Residue> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for u in fine.ring.units() {
            if fine.ring.reduce_to(&u, &self.ring.exps) != self.ring.one() {
                continue;
            }
            let c = fine.class_of(&u)?;
            if seen.insert(c) {
                us.push(u);
            }
        }
        // check the product table is a bijection onto Cl_F⁺(f𝔭)
        let mut all = std::collections::HashSet::new();
        for a in &self.reps {
            for u in &us {
                if !all.insert(fine.class_of(&fine.ring.mul(a, u))?) {
                    return Err(Error::Precondition("representatives are not compatible".into()));
                }
            }
        }
        if all.len() != fine.order() {
            return Err(Error::Precondition("representatives do not cover the finer group".into()));
        }
        Ok(us)
    }
}
