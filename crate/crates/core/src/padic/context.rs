use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zpk::Zpk;

/// Declarative description of L/Q_p as an unramified extension of degree
/// `f` (generator θ, root of `unram`) followed by an Eisenstein extension of
/// degree `e` (uniformizer ϖ, root of `eisenstein`). Both polynomials are
/// monic with integer coefficients, listed constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextSpec {
    pub id: String,
    pub p: u64,
    pub unram: Vec<i64>,
    pub eisenstein: Vec<i64>,
    /// Working absolute precision, in powers of ϖ.
    pub precision: i64,
}

/// A fixed local field with its working precision. Elements of the ring of
/// integers are stored as coordinate vectors in the basis ϖ^j θ^i
/// (index `j * f + i`), each coordinate a residue modulo p^K.
#[derive(Debug)]
pub struct PAdicContext {
    pub spec: ContextSpec,
    pub e: u32,
    pub f: u32,
    pub z: Zpk,
    /// ϖ^e = p·η with η a unit; we keep η^{-1}.
    eta_inv: Vec<u128>,
    eta: Vec<u128>,
    /// ϖ^r for r < e.
    pi_pow: Vec<Vec<u128>>,
}

pub type Ctx = Arc<PAdicContext>;

impl PAdicContext {
    pub fn new(spec: ContextSpec) -> Result<Ctx> {
        let p = spec.p;
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidContext(format!("p = {p} is not prime")));
        }
        if spec.precision < 1 {
            return Err(Error::InvalidContext("precision must be at least 1".into()));
        }
        let f = check_monic(&spec.unram, "unramified")?;
        let e = check_monic(&spec.eisenstein, "Eisenstein")?;
        if !irreducible_mod_p(&spec.unram, p) {
            return Err(Error::InvalidContext(
                "unramified polynomial is not irreducible mod p".into(),
            ));
        }
        if e > 1 {
            let pp = p as i64;
            let ok = spec.eisenstein[..e as usize].iter().all(|c| c.rem_euclid(pp) == 0)
                && spec.eisenstein[0].rem_euclid(pp * pp) != 0;
            if !ok {
                return Err(Error::InvalidContext("polynomial is not Eisenstein".into()));
            }
        }
        // Headroom: two extra p-powers beyond what precision N needs.
        let k = ((spec.precision + e as i64 - 1) / e as i64) as u32 + 3;
        let z = Zpk::new(p, k)?;
        let mut ctx = PAdicContext {
            spec,
            e,
            f,
            z,
            eta_inv: vec![],
            eta: vec![],
            pi_pow: vec![],
        };
        let n = (e * f) as usize;
        let mut pw = vec![0u128; n];
        pw[0] = 1;
        for r in 0..e {
            ctx.pi_pow.push(pw.clone());
            if r + 1 < e {
                pw = ctx.mul_raw(&pw, &ctx.uniformizer_raw());
            }
        }
        // η = ϖ^e / p = -(Σ_{j<e} E_j ϖ^j)/p, computed coordinatewise.
        // With e = 1 the uniformizer is p itself and η = 1.
        let mut eta = vec![0u128; n];
        if e == 1 {
            eta[0] = 1;
        } else {
            for j in 0..e as usize {
                let c = -ctx.spec.eisenstein[j] / p as i64;
                eta[j * f as usize] = z.from_i64(c);
            }
        }
        ctx.eta_inv = ctx.inv_unit_raw(&eta)?;
        ctx.eta = eta;
        Ok(Arc::new(ctx))
    }

    /// Q_p itself at absolute precision `n`.
    pub fn qp(p: u64, n: i64) -> Result<Ctx> {
        Self::new(ContextSpec {
            id: format!("Q{p}@{n}"),
            p,
            unram: vec![0, 1],
            eisenstein: vec![0, 1],
            precision: n,
        })
    }

    /// Q_p(ζ_{p^m}) with ϖ = ζ - 1, totally ramified of degree φ(p^m).
    pub fn cyclotomic(p: u64, m: u32, n: i64) -> Result<Ctx> {
        let eis = cyclotomic_shifted(p, m);
        Self::new(ContextSpec {
            id: format!("Q{p}(zeta{}^{m})@{n}", p),
            p,
            unram: vec![0, 1],
            eisenstein: eis,
            precision: n,
        })
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }
    pub fn n(&self) -> i64 {
        self.spec.precision
    }
    pub fn id(&self) -> &str {
        &self.spec.id
    }
    pub fn degree(&self) -> u32 {
        self.e * self.f
    }
    pub fn dim(&self) -> usize {
        (self.e * self.f) as usize
    }
    /// Residue field size.
    pub fn q(&self) -> u64 {
        self.p().pow(self.f)
    }

    pub fn uniformizer_raw(&self) -> Vec<u128> {
        let mut v = vec![0u128; self.dim()];
        if self.e == 1 {
            v[0] = self.spec.p as u128;
        } else {
            v[self.f as usize] = 1;
        }
        v
    }

    pub fn theta_raw(&self) -> Vec<u128> {
        let mut v = vec![0u128; self.dim()];
        if self.f == 1 {
            // θ is a root of X + c; i.e. θ = -c
            v[0] = self.z.from_i64(-self.spec.unram[0]);
        } else {
            v[1] = 1;
        }
        v
    }

    /// p / ϖ^e as a raw unit.
    pub fn eta_inv_raw(&self) -> Vec<u128> {
        self.eta_inv.clone()
    }

    pub fn one_raw(&self) -> Vec<u128> {
        let mut v = vec![0u128; self.dim()];
        v[0] = 1;
        v
    }

    pub fn int_raw(&self, n: i128) -> Vec<u128> {
        let mut v = vec![0u128; self.dim()];
        v[0] = self.z.from_i128(n);
        v
    }

    fn mul_unram(&self, a: &[u128], b: &[u128]) -> Vec<u128> {
        let f = self.f as usize;
        let z = &self.z;
        if f == 1 {
            return vec![z.mul(a[0], b[0])];
        }
        let mut t = vec![0u128; 2 * f - 1];
        for i in 0..f {
            if a[i] == 0 {
                continue;
            }
            for j in 0..f {
                t[i + j] = z.add(t[i + j], z.mul(a[i], b[j]));
            }
        }
        for d in (f..2 * f - 1).rev() {
            let c = t[d];
            if c == 0 {
                continue;
            }
            t[d] = 0;
            for i in 0..f {
                let g = z.from_i64(self.spec.unram[i]);
                t[d - f + i] = z.sub(t[d - f + i], z.mul(c, g));
            }
        }
        t.truncate(f);
        t
    }

    pub fn add_raw(&self, a: &[u128], b: &[u128]) -> Vec<u128> {
        a.iter().zip(b).map(|(&x, &y)| self.z.add(x, y)).collect()
    }
    pub fn sub_raw(&self, a: &[u128], b: &[u128]) -> Vec<u128> {
        a.iter().zip(b).map(|(&x, &y)| self.z.sub(x, y)).collect()
    }
    pub fn scale_raw(&self, a: &[u128], c: u128) -> Vec<u128> {
        a.iter().map(|&x| self.z.mul(x, c)).collect()
    }

    pub fn mul_raw(&self, a: &[u128], b: &[u128]) -> Vec<u128> {
        let (e, f) = (self.e as usize, self.f as usize);
        let z = &self.z;
        let mut t = vec![vec![0u128; f]; 2 * e - 1];
        for i in 0..e {
            let ai = &a[i * f..(i + 1) * f];
            if ai.iter().all(|&x| x == 0) {
                continue;
            }
            for j in 0..e {
                let bj = &b[j * f..(j + 1) * f];
                if bj.iter().all(|&x| x == 0) {
                    continue;
                }
                let pr = self.mul_unram(ai, bj);
                for (s, v) in t[i + j].iter_mut().zip(pr) {
                    *s = z.add(*s, v);
                }
            }
        }
        for d in (e..2 * e - 1).rev() {
            let c = std::mem::replace(&mut t[d], vec![0u128; f]);
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            for j in 0..e {
                let g = z.from_i64(self.spec.eisenstein[j]);
                if g == 0 {
                    continue;
                }
                for (s, &v) in t[d - e + j].iter_mut().zip(&c) {
                    *s = z.sub(*s, z.mul(v, g));
                }
            }
        }
        t.truncate(e);
        t.into_iter().flatten().collect()
    }

    pub fn pow_raw(&self, a: &[u128], mut k: u64) -> Vec<u128> {
        let mut r = self.one_raw();
        let mut b = a.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul_raw(&r, &b);
            }
            b = self.mul_raw(&b, &b);
            k >>= 1;
        }
        r
    }

    /// ϖ-adic valuation of a raw integral element, capped at `cap`.
    pub fn val_raw(&self, a: &[u128], cap: i64) -> i64 {
        let (e, f) = (self.e as usize, self.f as usize);
        let mut best = cap;
        for j in 0..e {
            let vp = (0..f).map(|i| self.z.val(a[j * f + i])).min().unwrap() as i64;
            best = best.min(e as i64 * vp + j as i64);
        }
        best
    }

    /// Canonical representative modulo ϖ^n: coordinate j is reduced modulo
    /// p^⌈(n-j)/e⌉, which is exact because the lattice ϖ^n O_L is
    /// coordinatewise in this basis.
    pub fn reduce_raw(&self, a: &[u128], n: i64) -> Vec<u128> {
        let (e, f) = (self.e as i64, self.f as usize);
        let mut out = a.to_vec();
        for j in 0..e {
            let ex = ((n - j + e - 1).max(0) / e) as u32;
            for i in 0..f {
                let idx = j as usize * f + i;
                out[idx] = self.z.red_to(out[idx], ex);
            }
        }
        out
    }

    /// Exact division by ϖ^t of an element divisible by ϖ^t.
    pub fn div_pi_pow_raw(&self, a: &[u128], t: i64) -> Vec<u128> {
        if t <= 0 {
            return a.to_vec();
        }
        let e = self.e as i64;
        let (s, r) = (t / e, t % e);
        // ϖ^t = p^s η^s ϖ^r; for r > 0 use ϖ^{-r} = ϖ^{e-r} / (p η).
        let (mut x, mut pdiv, mut etas) = (a.to_vec(), s as u32, s as u64);
        if r > 0 {
            x = self.mul_raw(&x, &self.pi_pow[(e - r) as usize]);
            pdiv += 1;
            etas += 1;
        }
        let q = (self.spec.p as u128).pow(pdiv);
        let x: Vec<u128> = x.iter().map(|&c| c / q).collect();
        let einv = self.pow_raw(&self.eta_inv, etas);
        self.mul_raw(&x, &einv)
    }

    /// Multiply by ϖ^t.
    pub fn mul_pi_pow_raw(&self, a: &[u128], t: i64) -> Vec<u128> {
        if t <= 0 {
            return a.to_vec();
        }
        let e = self.e as i64;
        let (s, r) = (t / e, t % e);
        let mut x = self.mul_raw(a, &self.pi_pow[r as usize]);
        if s > 0 {
            // ϖ^{es} = p^s η^s
            x = self.mul_raw(&x, &self.pow_raw(&self.eta, s as u64));
            let ps = self.z.pow(self.spec.p as u128, s as u64);
            x = self.scale_raw(&x, ps);
        }
        x
    }

    /// Inverse of a unit by Newton iteration from u^{q-2}.
    pub fn inv_unit_raw(&self, u: &[u128]) -> Result<Vec<u128>> {
        if self.val_raw(u, 1) != 0 {
            return Err(Error::NotAUnit("raw element has positive valuation".into()));
        }
        let mut x = self.pow_raw(u, self.q() - 2);
        let two = self.int_raw(2);
        let target = self.e as i64 * self.z.k as i64;
        let mut prec = 1i64;
        while prec < target {
            let ux = self.mul_raw(u, &x);
            x = self.mul_raw(&x, &self.sub_raw(&two, &ux));
            prec *= 2;
        }
        Ok(x)
    }
}

fn check_monic(c: &[i64], what: &str) -> Result<u32> {
    if c.len() < 2 || *c.last().unwrap() != 1 {
        return Err(Error::InvalidContext(format!("{what} polynomial must be monic of degree ≥ 1")));
    }
    Ok((c.len() - 1) as u32)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Brute-force irreducibility over F_p for small degree: no root-free
/// factorisation check is needed beyond trial division by monic polynomials
/// of degree ≤ deg/2, which is cheap at desk scale.
fn irreducible_mod_p(c: &[i64], p: u64) -> bool {
    let deg = c.len() - 1;
    if deg <= 1 {
        return true;
    }
    let pp = p as i64;
    let f: Vec<i64> = c.iter().map(|x| x.rem_euclid(pp)).collect();
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut g = vec![0i64; d + 1];
            let mut t = idx;
            for gi in g.iter_mut().take(d) {
                *gi = (t % p as usize) as i64;
                t /= p as usize;
            }
            g[d] = 1;
            if poly_rem_mod_p(&f, &g, pp).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_mod_p(a: &[i64], g: &[i64], p: i64) -> Vec<i64> {
    let mut r = a.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for i in 0..=dg {
            r[shift + i] = (r[shift + i] - c * g[i]).rem_euclid(p);
        }
        r.pop();
    }
    r
}

/// Φ_{p^m}(X + 1) with integer coefficients, constant term first.
pub fn cyclotomic_shifted(p: u64, m: u32) -> Vec<i64> {
    // Φ_{p^m}(Y) = Σ_{i<p} Y^{i p^{m-1}}
    let step = p.pow(m - 1) as usize;
    let deg = step * (p as usize - 1);
    let mut phi = vec![0i128; deg + 1];
    for i in 0..p as usize {
        phi[i * step] = 1;
    }
    // substitute Y = X + 1 via Taylor shift
    let n = phi.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            phi[j] += phi[j + 1];
        }
    }
    phi.into_iter().map(|x| x as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_is_eisenstein() {
        assert_eq!(cyclotomic_shifted(5, 1), vec![5, 10, 10, 5, 1]);
        assert_eq!(cyclotomic_shifted(3, 1), vec![3, 3, 1]);
        let c9 = cyclotomic_shifted(3, 2);
        assert_eq!(c9.len(), 7);
        assert_eq!(c9[0], 3);
        assert!(PAdicContext::cyclotomic(3, 2, 12).is_ok());
    }

    #[test]
    fn rejects_non_eisenstein() {
        let spec = ContextSpec {
            id: "bad".into(),
            p: 5,
            unram: vec![0, 1],
            eisenstein: vec![25, 0, 1],
            precision: 4,
        };
        assert!(PAdicContext::new(spec).is_err());
    }

    #[test]
    fn uniformizer_division_round_trip() {
        let c = PAdicContext::cyclotomic(5, 1, 12).unwrap();
        let x = c.int_raw(7);
        let y = c.mul_pi_pow_raw(&x, 5);
        assert_eq!(c.val_raw(&y, 100), 5);
        let back = c.div_pi_pow_raw(&y, 5);
        assert_eq!(c.reduce_raw(&back, 8), c.reduce_raw(&x, 8));
    }
}
