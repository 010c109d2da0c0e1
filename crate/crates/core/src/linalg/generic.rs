//! Gauss–Jordan elimination over any [`Scalar`] field.

use crate::scalar::Scalar;

/// Returns the pivot columns and the reduced rows (one per pivot).
pub fn rref(mut rows: Vec<Vec<Scalar>>, ncols: usize) -> (Vec<usize>, Vec<Vec<Scalar>>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for v in rows[r].iter_mut().skip(c) {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, s) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !s.is_zero() {
                    *v = &*v - &(&f * s);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (pivots, rows)
}

/// Kernel vector attached to free column `j` of a reduced form.
pub fn kernel_vector(pivots: &[usize], rows: &[Vec<Scalar>], ncols: usize, j: usize) -> Vec<Scalar> {
    let field = rows
        .first()
        .map(|r| r[0].field())
        .unwrap_or(crate::scalar::FieldId::Q);
    let mut v = vec![Scalar::zero(field); ncols];
    v[j] = Scalar::one(field);
    for (i, &c) in pivots.iter().enumerate() {
        v[c] = -&rows[i][j];
    }
    v
}
