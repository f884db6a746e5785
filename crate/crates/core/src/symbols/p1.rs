//! P¹(Z/N), SL₂(Z) coset representatives for Γ₀(N), and continued
//! fractions.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Integer 2×2 matrix [a, b, c, d].
pub type IntMat = [i128; 4];

pub const IDENTITY: IntMat = [1, 0, 0, 1];
pub const S: IntMat = [0, -1, 1, 0];
pub const TAU: IntMat = [0, -1, 1, -1];

pub fn mat_mul(x: &IntMat, y: &IntMat) -> IntMat {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

pub fn det(x: &IntMat) -> i128 {
    x[0] * x[3] - x[1] * x[2]
}

/// Inverse of a determinant ±1 matrix.
pub fn inv_unimodular(x: &IntMat) -> IntMat {
    let d = det(x);
    debug_assert!(d == 1 || d == -1);
    [x[3] * d, -x[1] * d, -x[2] * d, x[0] * d]
}

/// A cusp a/b in lowest terms with b ≥ 0; (1, 0) is ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cusp(pub i128, pub i128);

impl Cusp {
    pub fn new(a: i128, b: i128) -> Self {
        if b == 0 {
            return Cusp(1, 0);
        }
        let g = a.gcd(&b);
        let (a, b) = (a / g, b / g);
        if b < 0 {
            Cusp(-a, -b)
        } else {
            Cusp(a, b)
        }
    }

    pub fn infinity() -> Self {
        Cusp(1, 0)
    }

    /// Möbius image g · (a/b).
    pub fn act(&self, g: &IntMat) -> Self {
        Cusp::new(g[0] * self.0 + g[1] * self.1, g[2] * self.0 + g[3] * self.1)
    }
}

/// Matrices g ∈ SL₂(Z) with {a/b} - {∞} = Σ g_i({0} - {∞}), from the
/// convergents of a/b.
pub fn continued_fraction_path(c: Cusp) -> Vec<IntMat> {
    let Cusp(a, b) = c;
    if b == 0 {
        return vec![];
    }
    // convergents p_i/q_i with p_{-1}/q_{-1} = 1/0
    let (mut pm, mut qm) = (1i128, 0i128);
    let (mut num, mut den) = (a, b);
    let q0 = Integer::div_floor(&num, &den);
    let (mut p, mut q) = (q0, 1i128);
    let mut out = Vec::new();
    let mut push = |pm: i128, qm: i128, p: i128, q: i128| {
        // g·∞ = p_{i-1}/q_{i-1}, g·0 = p_i/q_i
        let g = [pm, p, qm, q];
        out.push(if det(&g) == 1 { g } else { [-pm, p, -qm, q] });
    };
    push(pm, qm, p, q);
    let r = num - q0 * den;
    num = den;
    den = r;
    while den != 0 {
        let t = Integer::div_floor(&num, &den);
        let (p2, q2) = (t * p + pm, t * q + qm);
        pm = p;
        qm = q;
        p = p2;
        q = q2;
        push(pm, qm, p, q);
        let r = num - t * den;
        num = den;
        den = r;
    }
    out
}

/// P¹(Z/N) with canonical representatives and SL₂(Z) lifts.
#[derive(Debug, Clone)]
pub struct P1 {
    pub n: i128,
    pub elems: Vec<(i128, i128)>,
    index: Vec<usize>,
    pub lifts: Vec<IntMat>,
}

impl P1 {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("level 0".into()));
        }
        let n = n as i128;
        let units: Vec<i128> = (1..=n).filter(|&u| u.gcd(&n) == 1).map(|u| u % n).collect();
        let size = (n * n) as usize;
        let mut index = vec![usize::MAX; size];
        let mut elems = Vec::new();
        for c in 0..n {
            for d in 0..n {
                if c.gcd(&d).gcd(&n) != 1 || index[(c * n + d) as usize] != usize::MAX {
                    continue;
                }
                let i = elems.len();
                elems.push((c, d));
                for &u in &units {
                    index[((u * c % n) * n + u * d % n) as usize] = i;
                }
            }
        }
        let lifts = elems.iter().map(|&(c, d)| lift_to_sl2(c, d, n)).collect();
        Ok(P1 { n, elems, index, lifts })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, c: i128, d: i128) -> usize {
        let (c, d) = (c.rem_euclid(self.n), d.rem_euclid(self.n));
        self.index[(c * self.n + d) as usize]
    }

    /// Coset of g ∈ SL₂(Z), read from its bottom row.
    pub fn coset(&self, g: &IntMat) -> usize {
        self.index_of(g[2], g[3])
    }
}

fn lift_to_sl2(c: i128, d: i128, n: i128) -> IntMat {
    if n == 1 {
        return IDENTITY;
    }
    let c1 = if c == 0 { n } else { c };
    let mut d1 = d;
    while c1.gcd(&d1) != 1 {
        d1 += n;
    }
    // a d1 - b c1 = 1
    let e = c1.extended_gcd(&d1);
    // e.x c1 + e.y d1 = 1
    [e.y, -e.x, c1, d1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_sizes() {
        // N ∏ (1 + 1/ℓ)
        for (n, want) in [(1u64, 1usize), (2, 3), (5, 6), (11, 12), (55, 72), (25, 30)] {
            assert_eq!(P1::new(n).unwrap().len(), want);
        }
    }

    #[test]
    fn lifts_are_in_sl2_and_in_their_coset() {
        let p = P1::new(55).unwrap();
        for (i, g) in p.lifts.iter().enumerate() {
            assert_eq!(det(g), 1);
            assert_eq!(p.coset(g), i);
        }
    }

    #[test]
    fn paths_telescope() {
        for (a, b) in [(3, 7), (-5, 12), (7, 1), (0, 1), (13, 55), (-1, 3)] {
            let path = continued_fraction_path(Cusp::new(a, b));
            let mut prev = Cusp::infinity();
            for g in &path {
                assert_eq!(det(g), 1);
                assert_eq!(Cusp::infinity().act(g), prev);
                prev = Cusp(0, 1).act(g);
            }
            assert_eq!(prev, Cusp::new(a, b));
        }
    }
}
