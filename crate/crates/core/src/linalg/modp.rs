//! Dense row reduction over GF(p) with residues in `u64`.

use crate::scalar::{invmod, mulmod};

/// Reduced row echelon form modulo `p`.
#[derive(Debug, Clone)]
pub struct ModRref {
    pub p: u64,
    pub ncols: usize,
    /// Pivot columns in increasing order.
    pub pivots: Vec<usize>,
    /// Dense reduced rows, one per pivot, in pivot order; each has a 1 in its
    /// pivot column and 0 in every other pivot column.
    pub rows: Vec<Vec<u64>>,
    /// Indices of input rows that contributed a new pivot, in input order.
    pub basis_rows: Vec<usize>,
}

impl ModRref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Kernel vector attached to the free column `j`: `v_j = 1`, other free
    /// entries 0, `v_{pivot_i} = -R[i][j]`.
    pub fn kernel_vector(&self, j: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.ncols];
        v[j] = 1;
        for (i, &c) in self.pivots.iter().enumerate() {
            let r = self.rows[i][j];
            v[c] = if r == 0 { 0 } else { self.p - r };
        }
        v
    }
}

#[inline]
fn axpy(dst: &mut [u64], src: &[u64], factor: u64, p: u64, from: usize) {
    // dst += factor * src, entries < p
    if p < (1 << 31) {
        for (d, s) in dst[from..].iter_mut().zip(&src[from..]) {
            if *s != 0 {
                *d = (*d + factor * *s) % p;
            }
        }
    } else {
        for (d, s) in dst[from..].iter_mut().zip(&src[from..]) {
            if *s != 0 {
                let t = *d + mulmod(factor, *s, p);
                *d = if t >= p { t - p } else { t };
            }
        }
    }
}

#[inline]
fn scale(row: &mut [u64], factor: u64, p: u64, from: usize) {
    for v in row[from..].iter_mut() {
        if *v != 0 {
            *v = mulmod(*v, factor, p);
        }
    }
}

/// Incremental Gauss–Jordan elimination of sparse rows given as
/// `(column, residue)` pairs with residues already reduced mod `p`.
pub fn rref_sparse(rows: &[Vec<(usize, u64)>], ncols: usize, p: u64) -> ModRref {
    let mut out = ModRref {
        p,
        ncols,
        pivots: Vec::new(),
        rows: Vec::new(),
        basis_rows: Vec::new(),
    };
    // pivot column -> position in out.rows
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut dense = vec![0u64; ncols];
    for (idx, row) in rows.iter().enumerate() {
        if out.rows.len() == ncols {
            break;
        }
        dense.iter_mut().for_each(|v| *v = 0);
        let mut lo = ncols;
        for &(c, v) in row {
            dense[c] = (dense[c] + v) % p;
            lo = lo.min(c);
        }
        if lo == ncols {
            continue;
        }
        // eliminate existing pivots in increasing column order
        let mut lead = None;
        for c in lo..ncols {
            let v = dense[c];
            if v == 0 {
                continue;
            }
            match pivot_of_col[c] {
                Some(k) => {
                    let src = &out.rows[k];
                    axpy(&mut dense, src, p - v, p, c);
                }
                None => {
                    if lead.is_none() {
                        lead = Some(c);
                    }
                }
            }
        }
        let Some(c) = lead else { continue };
        let inv = invmod(dense[c], p);
        scale(&mut dense, inv, p, c);
        // clear column c from the existing rows
        for r in out.rows.iter_mut() {
            let v = r[c];
            if v != 0 {
                axpy(r, &dense, p - v, p, c);
            }
        }
        pivot_of_col[c] = Some(out.rows.len());
        out.rows.push(dense.clone());
        out.pivots.push(c);
        out.basis_rows.push(idx);
    }
    // sort rows by pivot column
    let mut order: Vec<usize> = (0..out.pivots.len()).collect();
    order.sort_by_key(|&i| out.pivots[i]);
    out.rows = order.iter().map(|&i| std::mem::take(&mut out.rows[i])).collect();
    out.basis_rows = order.iter().map(|&i| out.basis_rows[i]).collect();
    out.pivots = order.iter().map(|&i| out.pivots[i]).collect();
    out
}
