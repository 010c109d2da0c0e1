//! Fraction-free Gaussian elimination over ℤ.
//!
//! Every intermediate entry is a minor of the input, so growth stays
//! polynomial. Used directly for small systems and as an independent oracle
//! for the multimodular path.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Row echelon form: pivot columns and the echelon rows.
pub fn echelon(mut a: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<usize>, Vec<Vec<BigInt>>) {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(k) = (r..a.len()).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, k);
        let (top, rest) = a.split_at_mut(r + 1);
        let piv = &top[r];
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c..ncols {
                // (p·a_ij − a_ic·p_j) / prev is exact
                let v = &piv[c] * &row[j] - &lead * &piv[j];
                row[j] = v / &prev;
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (pivots, a)
}

/// Kernel basis by back-substitution, one vector per free column.
pub fn kernel(a: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<usize>, Vec<Vec<BigRational>>) {
    let (pivots, rows) = echelon(a, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for j in (0..ncols).filter(|&j| !is_pivot[j]) {
        let mut v = vec![BigRational::zero(); ncols];
        v[j] = BigRational::one();
        for (i, &c) in pivots.iter().enumerate().rev() {
            let mut s = BigRational::zero();
            for k in c + 1..ncols {
                if !rows[i][k].is_zero() && !v[k].is_zero() {
                    s += BigRational::from_integer(rows[i][k].clone()) * &v[k];
                }
            }
            v[c] = -s / BigRational::from_integer(rows[i][c].clone());
        }
        basis.push(v);
    }
    (pivots, basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn determinant_on_diagonal() {
        let (p, e) = echelon(m(&[&[2, 3, 1], &[4, 1, 0], &[0, 5, 7]]), 3);
        assert_eq!(p, vec![0, 1, 2]);
        // last pivot of a full-rank square Bareiss form is the determinant
        assert_eq!(e[2][2], BigInt::from(-50));
    }

    #[test]
    fn kernel_of_rank_two() {
        let (p, k) = kernel(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]), 3);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(k.len(), 1);
        let v: Vec<String> = k[0].iter().map(|q| q.to_string()).collect();
        assert_eq!(v, ["1", "-2", "1"]);
    }
}
