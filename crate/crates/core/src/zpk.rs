//! Residues modulo p^k in machine words.
//!
//! The moment engine and the relation solver live here; moduli are capped
//! at 2^62 so that a product of two residues fits in a `u128` with room to
//! spare.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const MODULUS_CAP: u128 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Zpk {
    pub p: u64,
    pub k: u32,
    pub m: u128,
}

impl Zpk {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidContext(format!("p = {p}")));
        }
        let mut m: u128 = 1;
        for _ in 0..k {
            m = m
                .checked_mul(p as u128)
                .filter(|&m| m <= MODULUS_CAP)
                .ok_or_else(|| {
                    Error::PrecisionInsufficient(format!("{p}^{k} exceeds the 2^62 modulus cap"))
                })?;
        }
        Ok(Zpk { p, k, m })
    }

    #[inline]
    pub fn red(&self, x: u128) -> u128 {
        x % self.m
    }

    #[inline]
    pub fn from_i128(&self, x: i128) -> u128 {
        let m = self.m as i128;
        (((x % m) + m) % m) as u128
    }

    pub fn from_i64(&self, x: i64) -> u128 {
        self.from_i128(x as i128)
    }

    #[inline]
    pub fn add(&self, a: u128, b: u128) -> u128 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u128) -> u128 {
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u128, b: u128) -> u128 {
        (a * b) % self.m
    }

    pub fn pow(&self, mut a: u128, mut e: u64) -> u128 {
        let mut r = 1 % self.m;
        a %= self.m;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// p-adic valuation of a residue, `k` for zero.
    pub fn val(&self, mut a: u128) -> u32 {
        a %= self.m;
        if a == 0 {
            return self.k;
        }
        let mut v = 0;
        while a % self.p as u128 == 0 {
            a /= self.p as u128;
            v += 1;
        }
        v
    }

    /// Inverse of a unit residue.
    pub fn inv(&self, a: u128) -> Result<u128> {
        let a = a % self.m;
        if self.k > 0 && a % self.p as u128 == 0 {
            return Err(Error::NotAUnit(format!("{a} mod {}^{}", self.p, self.k)));
        }
        // extended Euclid on signed integers
        let (mut r0, mut r1) = (self.m as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(self.from_i128(t0))
    }

    pub fn ppow(&self, e: u32) -> u128 {
        if e >= self.k {
            0
        } else {
            (self.p as u128).pow(e)
        }
    }

    /// Reduce modulo p^e (e ≤ k), returning the canonical representative.
    pub fn red_to(&self, a: u128, e: u32) -> u128 {
        if e >= self.k {
            a % self.m
        } else {
            a % (self.p as u128).pow(e)
        }
    }

    /// Exact division by p^e of a residue known to be divisible; the result
    /// is only meaningful modulo p^(k-e).
    pub fn div_ppow(&self, a: u128, e: u32) -> Option<u128> {
        let q = (self.p as u128).pow(e);
        if a % q != 0 {
            None
        } else {
            Some(a / q)
        }
    }

    /// Signed representative in (-m/2, m/2].
    pub fn signed(&self, a: u128) -> i128 {
        let a = a % self.m;
        if a > self.m / 2 {
            a as i128 - self.m as i128
        } else {
            a as i128
        }
    }
}

/// Generalised binomial coefficient C(n, i) for integer n (possibly
/// negative), reduced into `z`.
pub fn binom_mod(z: &Zpk, n: i64, i: u64) -> u128 {
    // C(n,i) = n(n-1)...(n-i+1)/i!. Compute exactly over i128 by the
    // multiplicative recurrence, which keeps every intermediate integral.
    let mut c: i128 = 1;
    for t in 0..i as i128 {
        c = c * (n as i128 - t) / (t + 1);
    }
    z.from_i128(c)
}
