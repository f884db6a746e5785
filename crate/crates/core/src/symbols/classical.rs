//! The classical space Symb_Γ₀(N)(V_k^∨) over Q, computed exactly.
//!
//! A symbol is a vector of length ncosets·(k+1): the coordinates of
//! Ψ(D_x) on the dual basis of z^0, ..., z^k.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::manin::{Formula, ManinData};
use super::p1::{det, IntMat};
use crate::coeffs::expand::binom;
use crate::error::{Error, Result};
use crate::qlinalg::{self, QMat};

fn big(n: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn poly_mul(x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn lin_pow(x0: i128, x1: i128, n: i64) -> Vec<BigRational> {
    (0..=n).map(|i| BigRational::from_integer(binom(n, i as u64) * BigInt::from(x0).pow((n - i) as u32) * BigInt::from(x1).pow(i as u32))).collect()
}

/// T[m][t] = [z^t] det^v (b + dz)^m (a + cz)^{k-m} for 0 ≤ m, t ≤ k.
pub fn rational_table(g: &IntMat, k: i64, v: i64) -> QMat {
    let [a, b, c, d] = *g;
    let dv = {
        let dt = big(det(g));
        if v >= 0 {
            num_traits::pow(dt, v as usize)
        } else {
            num_traits::pow(dt.recip(), (-v) as usize)
        }
    };
    (0..=k)
        .map(|m| {
            let mut row = poly_mul(&lin_pow(b, d, m), &lin_pow(a, c, k - m));
            row.resize(k as usize + 1, BigRational::zero());
            row.into_iter().map(|x| x * &dv).collect()
        })
        .collect()
}

/// Apply per-coset formulas to a value vector with (k+1) entries per
/// coset.
pub fn apply_formulas(ops: &[Formula], vals: &[BigRational], k: i64, v: i64) -> Vec<BigRational> {
    let w = k as usize + 1;
    let mut out = vec![BigRational::zero(); ops.len() * w];
    for (x, f) in ops.iter().enumerate() {
        for t in f {
            let tab = rational_table(&t.g, k, v);
            let src = &vals[t.coset * w..(t.coset + 1) * w];
            for m in 0..w {
                let s: BigRational = (0..w).map(|j| &tab[m][j] * &src[j]).sum();
                out[x * w + m] += s * big(t.sign as i128);
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct ClassicalSpace {
    pub manin: Arc<ManinData>,
    pub k: i64,
    pub v: i64,
    /// Basis vectors of the symbol space.
    pub basis: Vec<Vec<BigRational>>,
    rows: Vec<usize>,
    inv: QMat,
}

impl ClassicalSpace {
    pub fn new(manin: Arc<ManinData>, k: i64, v: i64) -> Result<Self> {
        if k < 0 {
            return Err(Error::InvalidWeight(format!("k = {k}")));
        }
        let w = k as usize + 1;
        let n = manin.ncosets() * w;
        let mut rel: QMat = Vec::new();
        for f in manin.relations(k) {
            let mut block = vec![vec![BigRational::zero(); n]; w];
            for t in &f {
                let tab = rational_table(&t.g, k, v);
                for m in 0..w {
                    for j in 0..w {
                        block[m][t.coset * w + j] += &tab[m][j] * big(t.sign as i128);
                    }
                }
            }
            rel.extend(block);
        }
        let basis = qlinalg::kernel(&rel, n);
        // rows where the basis matrix is invertible, for coordinates
        let mut rows = Vec::new();
        let mut acc: QMat = Vec::new();
        for i in 0..n {
            let row: Vec<BigRational> = basis.iter().map(|b| b[i].clone()).collect();
            acc.push(row);
            if qlinalg::rank(&acc) > rows.len() {
                rows.push(i);
            } else {
                acc.pop();
            }
            if rows.len() == basis.len() {
                break;
            }
        }
        let d = basis.len();
        let mut aug: QMat = acc
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut r = r.clone();
                r.extend((0..d).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                r
            })
            .collect();
        qlinalg::rref(&mut aug);
        let inv = aug.into_iter().map(|r| r[d..].to_vec()).collect();
        Ok(ClassicalSpace { manin, k, v, basis, rows, inv })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn width(&self) -> usize {
        self.k as usize + 1
    }

    /// Coordinates of a symbol in the basis.
    pub fn coords(&self, vals: &[BigRational]) -> Vec<BigRational> {
        let sub: Vec<BigRational> = self.rows.iter().map(|&i| vals[i].clone()).collect();
        qlinalg::mat_vec(&self.inv, &sub)
    }

    pub fn from_coords(&self, c: &[BigRational]) -> Vec<BigRational> {
        let n = self.basis.first().map_or(0, |b| b.len());
        let mut out = vec![BigRational::zero(); n];
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += ci * x;
            }
        }
        out
    }

    /// True if every relation vanishes on `vals`.
    pub fn is_symbol(&self, vals: &[BigRational]) -> bool {
        let rel = self.manin.relations(self.k);
        apply_formulas(&rel, vals, self.k, self.v).iter().all(|x| x.is_zero())
    }

    /// Matrix of an operator in the basis; column j is the image of
    /// basis vector j.
    pub fn matrix(&self, ops: &[Formula]) -> QMat {
        let d = self.dim();
        let cols: Vec<Vec<BigRational>> = self.basis.iter().map(|b| self.coords(&apply_formulas(ops, b, self.k, self.v))).collect();
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn up_matrix(&self, p: u64) -> QMat {
        self.matrix(&self.manin.u_op(p))
    }

    pub fn tl_matrix(&self, l: u64) -> Result<QMat> {
        Ok(self.matrix(&self.manin.t_op(l)?))
    }

    pub fn weyl_matrix(&self) -> QMat {
        self.matrix(&self.manin.weyl_op())
    }

    /// Common kernel of A_i - c_i on the span of `sub` (coordinate
    /// vectors); returns coordinate vectors.
    pub fn eigen_subspace(&self, conditions: &[(QMat, BigRational)]) -> Vec<Vec<BigRational>> {
        let d = self.dim();
        let mut stacked: QMat = Vec::new();
        for (a, c) in conditions {
            for i in 0..d {
                let mut row = a[i].clone();
                row[i] -= c;
                stacked.push(row);
            }
        }
        if stacked.is_empty() {
            return qlinalg::identity(d);
        }
        qlinalg::kernel(&stacked, d)
    }
}
