//! Linear systems over Z/p^K by elimination with least-valuation pivots.
//!
//! Row operations are unimodular, so the solution set is unchanged; a
//! pivot of valuation v leaves its unknown determined modulo p^(K-v).

use crate::error::{Error, Result};
use crate::zpk::Zpk;

#[derive(Debug, Clone)]
pub struct Solution {
    pub x: Vec<u128>,
    /// Largest pivot valuation; unknowns are known modulo p^(K - loss).
    pub loss: u32,
    pub free: Vec<usize>,
}

/// Solve A x = b over Z/p^K. Free unknowns take the values `fill(col)`.
pub fn solve_mod(z: &Zpk, mut a: Vec<Vec<u128>>, mut b: Vec<u128>, cols: usize, fill: &mut dyn FnMut(usize) -> u128) -> Result<Solution> {
    let rows = a.len();
    let mut col_done = vec![false; cols];
    let mut pivots: Vec<(usize, usize, u32)> = Vec::new();
    let mut r = 0;
    while r < rows {
        // least valuation over the remaining block
        let mut best: Option<(u32, usize, usize)> = None;
        'scan: for (i, row) in a.iter().enumerate().skip(r) {
            for (j, &x) in row.iter().enumerate() {
                if x == 0 || col_done[j] {
                    continue;
                }
                let v = z.val(x);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                    if v == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((v, i, c)) = best else { break };
        a.swap(r, i);
        b.swap(r, i);
        col_done[c] = true;
        let unit = z.div_ppow(a[r][c], v).expect("valuation");
        let uinv = z.inv(unit)?;
        let pivot_row = a[r].clone();
        let pivot_b = b[r];
        for i2 in r + 1..rows {
            let x = a[i2][c];
            if x == 0 {
                continue;
            }
            // q · p^v · unit ≡ x
            let q = z.mul(z.div_ppow(x, v).expect("pivot has least valuation"), uinv);
            let row = &mut a[i2];
            for (dst, &src) in row.iter_mut().zip(&pivot_row) {
                if src != 0 {
                    *dst = z.sub(*dst, z.mul(q, src));
                }
            }
            b[i2] = z.sub(b[i2], z.mul(q, pivot_b));
        }
        pivots.push((r, c, v));
        r += 1;
    }
    for (i, &bi) in b.iter().enumerate().skip(r) {
        if bi != 0 {
            return Err(Error::Unsolvable(format!("row {i} reduces to 0 = {}", z.signed(bi))));
        }
    }
    let free: Vec<usize> = (0..cols).filter(|&j| !col_done[j]).collect();
    let mut x = vec![0u128; cols];
    for &j in &free {
        x[j] = z.red(fill(j));
    }
    let mut loss = 0;
    for &(row, c, v) in pivots.iter().rev() {
        let mut rhs = b[row];
        for (j, &aj) in a[row].iter().enumerate() {
            if j != c && aj != 0 {
                rhs = z.sub(rhs, z.mul(aj, x[j]));
            }
        }
        let Some(num) = z.div_ppow(rhs, v) else {
            return Err(Error::Unsolvable(format!("pivot of valuation {v} does not divide its row")));
        };
        let unit = z.div_ppow(a[row][c], v).expect("valuation");
        x[c] = z.mul(num, z.inv(unit)?);
        loss = loss.max(v);
    }
    Ok(Solution { x, loss, free })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_with_non_unit_pivots() {
        let z = Zpk::new(5, 6).unwrap();
        // 5x + y = 7, 25 y = 50  → y = 2 mod 5^4, x = 1 mod 5^5
        let a = vec![vec![5, 1], vec![0, 25]];
        let s = solve_mod(&z, a.clone(), vec![7, 50], 2, &mut |_| 0).unwrap();
        for (row, rhs) in a.iter().zip([7u128, 50]) {
            assert_eq!(z.add(z.mul(row[0], s.x[0]), z.mul(row[1], s.x[1])), rhs);
        }
        assert!(solve_mod(&z, vec![vec![5]], vec![1], 1, &mut |_| 0).is_err());
        assert!(solve_mod(&z, vec![vec![0, 0]], vec![3], 2, &mut |_| 0).is_err());
    }
}
