//! Fraction-free Gaussian elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::ExactRational;
use crate::error::{Error, Result};

/// Echelon form produced by Bareiss elimination.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Row-reduces `rows` (each of length `cols`) with the Bareiss
/// one-step fraction-free scheme. Every division is exact.
pub fn bareiss(rows: &[Vec<BigInt>], cols: usize) -> Result<Echelon> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    for row in &mut m {
        if row.len() != cols {
            return Err(Error::Internal(format!(
                "matrix row has {} entries, expected {cols}",
                row.len()
            )));
        }
        primitive(row);
    }
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let num = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                if !rem.is_zero() {
                    return Err(Error::Internal("inexact Bareiss division".into()));
                }
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Ok(Echelon {
        rows: m,
        pivots,
        cols,
    })
}

/// A basis of the right nullspace, one vector per free column in increasing
/// column order. Each vector is the one with a positive entry at its free
/// column, zeros at the other free columns, and coprime integer entries.
///
/// These are the scaled reduced-row-echelon basis vectors, so they depend
/// only on the row space, not on the order of the input rows.
pub fn nullspace(rows: &[Vec<BigInt>], cols: usize) -> Result<Vec<Vec<BigInt>>> {
    let ech = bareiss(rows, cols)?;
    let free: Vec<usize> = (0..cols).filter(|c| !ech.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![ExactRational::zero(); cols];
        x[f] = ExactRational::one();
        for (i, &pc) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.rows[i];
            let mut acc = ExactRational::zero();
            for j in pc + 1..cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc += &(&ExactRational::from(&row[j]) * &x[j]);
                }
            }
            x[pc] = -(&acc / &ExactRational::from(&row[pc]));
        }
        basis.push(clear_denominators(&x));
    }
    Ok(basis)
}

/// Smallest integer multiple of a rational vector with coprime entries,
/// keeping the sign of the original.
pub fn clear_denominators(x: &[ExactRational]) -> Vec<BigInt> {
    let l = x.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let mut out: Vec<BigInt> = x.iter().map(|v| v.numer() * (&l / v.denom())).collect();
    primitive(&mut out);
    out
}

/// Makes the vector primitive with a positive last nonzero entry.
pub fn normalize_sign(v: &mut [BigInt]) {
    primitive(v);
    if v.iter().rev().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn apply(rows: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
        rows.iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ech = bareiss(&m, 3).unwrap();
        assert_eq!(ech.rank(), 2);
        let ns = nullspace(&m, 3).unwrap();
        assert_eq!(ns.len(), 1);
        assert!(apply(&m, &ns[0]).iter().all(Zero::is_zero));
        assert_eq!(ns[0], vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]);
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let m = mat(&[&[2, 1], &[1, 3], &[5, 5]]);
        assert!(nullspace(&m, 2).unwrap().is_empty());
    }

    #[test]
    fn kernel_is_independent_of_row_order() {
        let m = mat(&[
            &[1, 1, 2, 3, 5],
            &[0, 1, 1, 2, 3],
            &[1, 2, 3, 5, 8],
            &[3, 1, 4, 1, 5],
        ]);
        let a = nullspace(&m, 5).unwrap();
        let mut rev = m.clone();
        rev.reverse();
        let b = nullspace(&rev, 5).unwrap();
        assert_eq!(a, b);
        for v in &a {
            assert!(apply(&m, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn sign_normalization() {
        let mut v = vec![BigInt::from(4), BigInt::from(-6), BigInt::zero()];
        normalize_sign(&mut v);
        assert_eq!(v, vec![BigInt::from(-2), BigInt::from(3), BigInt::zero()]);
    }
}
