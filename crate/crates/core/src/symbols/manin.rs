//! Γ₀(N)-modular symbols through their values on the divisors
//! D_x = g_x({0} - {∞}), one per coset x ∈ P¹(Z/N).
//!
//! A symbol Ψ satisfies Ψ(γD)|γ = Ψ(D) for γ ∈ Γ₀(N). Every value
//! Ψ(D) reduces to a formula Σ ± Ψ(D_y)|g with g integral; Hecke
//! operators and the Manin relations are such formulas.

use std::collections::BTreeMap;

use num_integer::Integer;

use super::p1::{continued_fraction_path, inv_unimodular, mat_mul, Cusp, IntMat, IDENTITY, P1, S, TAU};
use crate::error::{Error, Result};

/// sign · Ψ(D_coset) | g
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coset: usize,
    pub sign: i64,
    pub g: IntMat,
}

pub type Formula = Vec<Term>;

/// Merge equal (coset, g) pairs and drop cancelled terms.
pub fn simplify(f: Formula) -> Formula {
    let mut acc: BTreeMap<(usize, IntMat), i64> = BTreeMap::new();
    for t in f {
        *acc.entry((t.coset, t.g)).or_default() += t.sign;
    }
    acc.into_iter().filter(|(_, s)| *s != 0).map(|((coset, g), sign)| Term { coset, sign, g }).collect()
}

#[derive(Debug, Clone)]
pub struct ManinData {
    pub level: u64,
    pub p1: P1,
}

impl ManinData {
    pub fn new(level: u64) -> Result<Self> {
        if level > 5000 {
            return Err(Error::LevelTooLarge(format!("N = {level}")));
        }
        Ok(ManinData { level, p1: P1::new(level)? })
    }

    pub fn ncosets(&self) -> usize {
        self.p1.len()
    }

    /// Ψ(g D₀) for g ∈ SL₂(Z): g = γ g_y gives Ψ(D_y)|γ⁻¹ with
    /// γ⁻¹ = g_y g⁻¹.
    pub fn term_of(&self, g: &IntMat) -> Term {
        let y = self.p1.coset(g);
        Term { coset: y, sign: 1, g: mat_mul(&self.p1.lifts[y], &inv_unimodular(g)) }
    }

    /// Ψ({r} - {∞}).
    pub fn to_infinity(&self, r: Cusp) -> Formula {
        continued_fraction_path(r).iter().map(|g| self.term_of(g)).collect()
    }

    /// Ψ({r} - {s}).
    pub fn divisor(&self, r: Cusp, s: Cusp) -> Formula {
        let mut f = self.to_infinity(r);
        f.extend(self.to_infinity(s).into_iter().map(|t| Term { sign: -t.sign, ..t }));
        simplify(f)
    }

    /// Formulas that vanish on every symbol: the two-term relations from
    /// S, the three-term relations from τ, and, for odd k, the relation
    /// from -1.
    pub fn relations(&self, k: i64) -> Vec<Formula> {
        let n = self.ncosets();
        let lifts = &self.p1.lifts;
        let mut out = Vec::new();
        let mut seen_s = vec![false; n];
        let mut seen_t = vec![false; n];
        for x in 0..n {
            let gx = lifts[x];
            let gs = mat_mul(&gx, &S);
            let xs = self.p1.coset(&gs);
            if !seen_s[x] {
                seen_s[x] = true;
                seen_s[xs] = true;
                let mut f = vec![Term { coset: x, sign: 1, g: IDENTITY }];
                f.push(self.term_of(&gs));
                out.push(simplify(f));
            }
            if !seen_t[x] {
                let g1 = mat_mul(&gx, &TAU);
                let g2 = mat_mul(&g1, &TAU);
                seen_t[x] = true;
                seen_t[self.p1.coset(&g1)] = true;
                seen_t[self.p1.coset(&g2)] = true;
                out.push(simplify(vec![Term { coset: x, sign: 1, g: IDENTITY }, self.term_of(&g1), self.term_of(&g2)]));
            }
            if k.is_odd() {
                out.push(simplify(vec![
                    Term { coset: x, sign: 1, g: IDENTITY },
                    Term { coset: x, sign: -1, g: [-1, 0, 0, -1] },
                ]));
            }
        }
        out.retain(|f| !f.is_empty());
        out
    }

    /// Per-coset formulas of Ψ ↦ Σ_β Ψ(β·)|β.
    pub fn double_coset(&self, betas: &[IntMat]) -> Vec<Formula> {
        (0..self.ncosets())
            .map(|x| {
                let gx = self.p1.lifts[x];
                let mut f = Vec::new();
                for b in betas {
                    let h = mat_mul(b, &gx);
                    let r = Cusp(0, 1).act(&h);
                    let s = Cusp::infinity().act(&h);
                    for t in self.divisor(r, s) {
                        f.push(Term { coset: t.coset, sign: t.sign, g: mat_mul(&t.g, b) });
                    }
                }
                simplify(f)
            })
            .collect()
    }

    /// U_ℓ for ℓ | N (and U_p in general): β_a = (1 a; 0 ℓ).
    pub fn u_op(&self, l: u64) -> Vec<Formula> {
        let l = l as i128;
        let betas: Vec<IntMat> = (0..l).map(|a| [1, a, 0, l]).collect();
        self.double_coset(&betas)
    }

    /// T_ℓ for ℓ ∤ N.
    pub fn t_op(&self, l: u64) -> Result<Vec<Formula>> {
        if self.level % l == 0 {
            return Err(Error::Precondition(format!("T_{l} needs {l} ∤ N")));
        }
        let l = l as i128;
        let mut betas: Vec<IntMat> = (0..l).map(|b| [1, b, 0, l]).collect();
        betas.push([l, 0, 0, 1]);
        Ok(self.double_coset(&betas))
    }

    /// Ψ ↦ Ψ|ι with ι = diag(-1, 1).
    pub fn weyl_op(&self) -> Vec<Formula> {
        self.double_coset(&[[-1, 0, 0, 1]])
    }

    /// Ψ ↦ Ψ(β D₀)|β with β = (1 a; 0 f); the evaluation map at a/f.
    pub fn evaluation(&self, a: i128, f: i128) -> Formula {
        let b: IntMat = [1, a, 0, f];
        self.divisor(Cusp::new(a, f), Cusp::infinity())
            .into_iter()
            .map(|t| Term { g: mat_mul(&t.g, &b), ..t })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_counts() {
        // level 1: one S-orbit and one τ-orbit on a single coset
        let m = ManinData::new(1).unwrap();
        assert_eq!(m.relations(0).len(), 2);
        let m = ManinData::new(11).unwrap();
        // 12 cosets; S and τ act freely except on elliptic points
        assert_eq!(m.relations(0).len(), 6 + 4);
    }

    #[test]
    fn terms_lie_in_gamma0() {
        let m = ManinData::new(55).unwrap();
        for f in m.relations(0) {
            for t in f {
                assert_eq!(t.g[2] % 55, 0);
            }
        }
    }
}
