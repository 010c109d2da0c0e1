//! Exact sparse linear algebra over the supported fields.
//!
//! - GF(p): dense modular Gauss–Jordan.
//! - ℚ: rows are cleared to integers; small systems use fraction-free
//!   elimination, larger ones the verified multimodular path.
//! - ℚ(i): Gauss–Jordan over [`Scalar`].

pub mod bareiss;
pub mod generic;
pub mod modp;
pub(crate) mod multimodular;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{FieldId, Scalar};
use multimodular::{IntRow, Want};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ran out of primes for modular reconstruction")]
    OutOfPrimes,
    #[error("modular images disagree; no certified answer")]
    Unlucky,
}

/// Systems with at most this many entries go through fraction-free elimination.
const SMALL: usize = 600;

/// Sparse matrix with rows of `(column, value)` pairs.
#[derive(Debug, Clone)]
pub struct Matrix {
    field: FieldId,
    ncols: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

/// A kernel basis in reduced form: one vector per free column.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub basis: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone)]
pub enum Solution {
    /// A particular solution with all free unknowns set to zero.
    Consistent(Vec<Scalar>),
    /// A left vector `w` with `wᵀA = 0` and `wᵀb = 1`.
    Inconsistent { witness: Vec<Scalar> },
}

impl Matrix {
    pub fn new(field: FieldId, ncols: usize) -> Matrix {
        Matrix {
            field,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_dense(field: FieldId, ncols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        let mut m = Matrix::new(field, ncols);
        for r in rows {
            m.push_row(
                r.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            );
        }
        m
    }

    pub fn push_row(&mut self, mut row: Vec<(usize, Scalar)>) {
        debug_assert!(row.iter().all(|(c, v)| *c < self.ncols && v.field() == self.field));
        row.retain(|(_, v)| !v.is_zero());
        self.rows.push(row);
    }

    pub fn field(&self) -> FieldId {
        self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<(usize, Scalar)>] {
        &self.rows
    }

    pub fn transpose(&self) -> Matrix {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                cols[*c].push((i, v.clone()));
            }
        }
        Matrix {
            field: self.field,
            ncols: self.rows.len(),
            rows: cols,
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Scalar::zero(self.field), |acc, (c, a)| acc + a * &v[*c])
            })
            .collect()
    }

    /// The matrix with `rhs` appended as a last column.
    pub fn augment(&self, rhs: &[Scalar]) -> Matrix {
        assert_eq!(rhs.len(), self.rows.len());
        let mut m = Matrix::new(self.field, self.ncols + 1);
        for (row, b) in self.rows.iter().zip(rhs) {
            let mut r = row.clone();
            if !b.is_zero() {
                r.push((self.ncols, b.clone()));
            }
            m.push_row(r);
        }
        m
    }

    fn residues(&self) -> Vec<Vec<(usize, u64)>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, v)| (*c, v.residue().expect("prime field entry")))
                    .filter(|(_, v)| *v != 0)
                    .collect()
            })
            .collect()
    }

    fn int_rows(&self) -> Vec<IntRow> {
        self.rows
            .iter()
            .map(|r| {
                let den = r.iter().fold(BigInt::one(), |acc, (_, v)| {
                    acc.lcm(v.to_rational().expect("rational entry").denom())
                });
                r.iter()
                    .map(|(c, v)| {
                        let q = v.to_rational().unwrap();
                        (*c, q.numer() * (&den / q.denom()))
                    })
                    .collect()
            })
            .collect()
    }

    fn dense(&self) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![Scalar::zero(self.field); self.ncols];
                for (c, v) in r {
                    d[*c] = v.clone();
                }
                d
            })
            .collect()
    }

    fn is_small(&self) -> bool {
        self.rows.len() * self.ncols <= SMALL
    }

    /// Kernel vectors in reduced form: for each free column `j`, the vector
    /// with `v_j = 1` and zeros in the other free columns.
    fn reduced_kernel(&self) -> Result<(Vec<usize>, Vec<(usize, Vec<Scalar>)>), LinalgError> {
        let n = self.ncols;
        let free_of = |pivots: &[usize]| -> Vec<usize> {
            let mut is_pivot = vec![false; n];
            pivots.iter().for_each(|&c| is_pivot[c] = true);
            (0..n).filter(|&j| !is_pivot[j]).collect()
        };
        Ok(match self.field {
            FieldId::Fp(p) => {
                let r = modp::rref_sparse(&self.residues(), n, p);
                let vectors = r
                    .free_columns()
                    .into_iter()
                    .map(|j| {
                        let v = r.kernel_vector(j).into_iter().map(|v| Scalar::Fp { v, p }).collect();
                        (j, v)
                    })
                    .collect();
                (r.pivots, vectors)
            }
            FieldId::Q => {
                let to_scalars = |v: Vec<BigRational>| -> Vec<Scalar> { v.into_iter().map(Scalar::Q).collect() };
                if self.is_small() {
                    let dense: Vec<Vec<BigInt>> = self
                        .int_rows()
                        .into_iter()
                        .map(|r| {
                            let mut d = vec![BigInt::zero(); n];
                            for (c, v) in r {
                                d[c] = v;
                            }
                            d
                        })
                        .collect();
                    let (pivots, basis) = bareiss::kernel(dense, n);
                    let vectors = free_of(&pivots).into_iter().zip(basis.into_iter().map(to_scalars)).collect();
                    (pivots, vectors)
                } else {
                    let k = multimodular::kernel(&self.int_rows(), n, Want::All)?;
                    let vectors = k.vectors.into_iter().map(|(j, v)| (j, to_scalars(v))).collect();
                    (k.pivots, vectors)
                }
            }
            FieldId::QI => {
                let (pivots, rows) = generic::rref(self.dense(), n);
                let vectors = free_of(&pivots)
                    .into_iter()
                    .map(|j| (j, generic::kernel_vector(&pivots, &rows, n, j)))
                    .collect();
                (pivots, vectors)
            }
        })
    }

    /// Kernel basis in reduced form; rational bases are scaled to primitive
    /// integer vectors.
    pub fn kernel(&self) -> Result<Kernel, LinalgError> {
        let (pivots, vectors) = self.reduced_kernel()?;
        let basis: Vec<Vec<Scalar>> = vectors
            .into_iter()
            .map(|(_, v)| {
                if self.field == FieldId::Q {
                    let qs: Vec<BigRational> = v.iter().map(|s| s.to_rational().unwrap()).collect();
                    multimodular::primitive(&qs)
                        .into_iter()
                        .map(|a| Scalar::Q(BigRational::from_integer(a)))
                        .collect()
                } else {
                    v
                }
            })
            .collect();
        Ok(Kernel {
            rank: self.ncols - basis.len(),
            pivots,
            basis,
        })
    }

    /// Reduced row echelon form: pivot columns and one dense row per pivot.
    pub fn rref(&self) -> Result<(Vec<usize>, Vec<Vec<Scalar>>), LinalgError> {
        let (pivots, vectors) = self.reduced_kernel()?;
        let mut rows: Vec<Vec<Scalar>> = pivots
            .iter()
            .map(|&c| {
                let mut r = vec![Scalar::zero(self.field); self.ncols];
                r[c] = Scalar::one(self.field);
                r
            })
            .collect();
        for (j, v) in &vectors {
            for (i, &c) in pivots.iter().enumerate() {
                rows[i][*j] = -&v[c];
            }
        }
        Ok((pivots, rows))
    }

    /// Exact rank.
    pub fn rank(&self) -> Result<usize, LinalgError> {
        match self.field {
            FieldId::Fp(p) => Ok(modp::rref_sparse(&self.residues(), self.ncols, p).rank()),
            FieldId::QI => Ok(generic::rref(self.dense(), self.ncols).0.len()),
            FieldId::Q => {
                if self.is_small() {
                    return Ok(self.kernel()?.rank);
                }
                let ints = self.int_rows();
                let p = multimodular::prime_sequence().next().unwrap();
                let r = multimodular::rank_mod_prime(&ints, self.ncols, p).rank();
                let nonzero = ints.iter().filter(|r| !r.is_empty()).count();
                if r == self.ncols || r == nonzero {
                    return Ok(r);
                }
                // certify on the side with the smaller kernel
                if self.ncols - r <= nonzero - r {
                    let k = multimodular::kernel(&ints, self.ncols, Want::All)?;
                    Ok(self.ncols - k.vectors.len())
                } else {
                    let t = self.transpose();
                    let k = multimodular::kernel(&t.int_rows(), t.ncols, Want::All)?;
                    Ok(t.ncols - k.vectors.len())
                }
            }
        }
    }

    /// True when the only solution of `A·v = 0` is zero.
    pub fn kernel_is_trivial(&self) -> Result<bool, LinalgError> {
        if self.rows.len() < self.ncols {
            return Ok(false);
        }
        if self.field == FieldId::Q && !self.is_small() {
            // rank mod p is a lower bound for the rank over ℚ
            let p = multimodular::prime_sequence().next().unwrap();
            if multimodular::rank_mod_prime(&self.int_rows(), self.ncols, p).rank() == self.ncols {
                return Ok(true);
            }
        }
        Ok(self.rank()? == self.ncols)
    }

    /// Solves `A·x = rhs`, returning a solution or a certificate of
    /// inconsistency.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Solution, LinalgError> {
        if let Some(x) = self.particular_solution(rhs)? {
            return Ok(Solution::Consistent(x));
        }
        // w with [A | b]ᵀ w = (0, ..., 0, 1)
        let aug = self.augment(rhs).transpose();
        let mut e = vec![Scalar::zero(self.field); self.ncols + 1];
        e[self.ncols] = Scalar::one(self.field);
        match aug.particular_solution(&e)? {
            Some(w) => Ok(Solution::Inconsistent { witness: w }),
            None => Err(LinalgError::Unlucky),
        }
    }

    fn particular_solution(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        let aug = self.augment(rhs);
        let n = self.ncols;
        let neg = |v: Vec<Scalar>| -> Vec<Scalar> { v.into_iter().take(n).map(|s| -s).collect() };
        let x = match self.field {
            FieldId::Q if !aug.is_small() => {
                let k = multimodular::kernel(&aug.int_rows(), n + 1, Want::Column(n))?;
                k.vectors.into_iter().next().map(|(_, v)| {
                    neg(v.into_iter().map(Scalar::Q).collect())
                })
            }
            FieldId::Fp(p) => {
                let r = modp::rref_sparse(&aug.residues(), n + 1, p);
                if r.pivots.contains(&n) {
                    None
                } else {
                    Some(neg(r
                        .kernel_vector(n)
                        .into_iter()
                        .map(|v| Scalar::Fp { v, p })
                        .collect()))
                }
            }
            _ => {
                let (pivots, rows) = generic::rref(aug.dense(), n + 1);
                if pivots.contains(&n) {
                    None
                } else {
                    Some(neg(generic::kernel_vector(&pivots, &rows, n + 1, n)))
                }
            }
        };
        if let Some(x) = &x {
            let lhs = self.mul_vec(x);
            assert!(lhs == rhs, "solver returned a non-solution");
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(field: FieldId, rows: &[&[i64]]) -> Matrix {
        let n = rows[0].len();
        Matrix::from_dense(
            field,
            n,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn kernels_agree_across_fields() {
        let rows: &[&[i64]] = &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 1]];
        for f in [FieldId::Q, FieldId::QI, FieldId::fp(65537).unwrap()] {
            let m = mat(f, rows);
            let k = m.kernel().unwrap();
            assert_eq!(k.rank, 2);
            assert_eq!(k.basis.len(), 2);
            for v in &k.basis {
                assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
            }
            assert_eq!(m.rank().unwrap(), 2);
            assert!(!m.kernel_is_trivial().unwrap());
        }
    }

    #[test]
    fn solve_and_witness() {
        let q = FieldId::Q;
        let m = mat(q, &[&[1, 1], &[1, 1], &[0, 1]]);
        match m.solve(&[q.int(3), q.int(3), q.int(1)]).unwrap() {
            Solution::Consistent(x) => assert_eq!(x, vec![q.int(2), q.int(1)]),
            _ => panic!("expected a solution"),
        }
        let rhs = [q.int(3), q.int(4), q.int(1)];
        match m.solve(&rhs).unwrap() {
            Solution::Inconsistent { witness } => {
                let wt = m.transpose().mul_vec(&witness);
                assert!(wt.iter().all(Scalar::is_zero));
                let wb = witness
                    .iter()
                    .zip(&rhs)
                    .fold(q.zero(), |acc, (a, b)| acc + a * b);
                assert!(wb.is_one());
            }
            _ => panic!("expected inconsistency"),
        }
    }

    #[test]
    fn large_rational_matches_bareiss() {
        // 30x25 matrix of rank 20 built from a product of small factors
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let q = FieldId::Q;
        let left: Vec<Vec<i64>> = (0..30).map(|_| (0..20).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let right: Vec<Vec<i64>> = (0..20).map(|_| (0..25).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let prod: Vec<Vec<i64>> = left
            .iter()
            .map(|l| (0..25).map(|j| (0..20).map(|k| l[k] * right[k][j]).sum()).collect())
            .collect();
        let refs: Vec<&[i64]> = prod.iter().map(|r| r.as_slice()).collect();
        let m = mat(q, &refs);
        assert!(!m.is_small());
        let k = m.kernel().unwrap();
        assert_eq!(k.rank, 20);
        for v in &k.basis {
            assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
        let dense: Vec<Vec<BigInt>> = prod
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let (piv, _) = bareiss::kernel(dense, 25);
        assert_eq!(piv, k.pivots);
        assert_eq!(m.rank().unwrap(), 20);
    }

    #[test]
    fn rref_rows_span_the_row_space() {
        let q = FieldId::Q;
        let m = mat(q, &[&[2, 4, 6], &[1, 1, 1]]);
        let (piv, rows) = m.rref().unwrap();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rows[0], vec![q.int(1), q.int(0), q.int(-1)]);
        assert_eq!(rows[1], vec![q.int(0), q.int(1), q.int(2)]);
    }
}
