//! Exact kernels over ℚ by reduction modulo word-size primes, Chinese
//! remaindering, rational reconstruction and an exact check over ℤ.
//!
//! A prime `p` is accepted only through verification: reconstructed kernel
//! vectors must annihilate the integer matrix exactly. Since
//! `rank_p(A) ≤ rank_ℚ(A)`, exhibiting `ncols - rank_p` independent rational
//! kernel vectors proves the rank and the kernel at once.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{rref_sparse, ModRref};
use super::LinalgError;
use crate::scalar::{invmod, is_prime_u64, mulmod};

/// Primes just below 2^31, largest first.
pub(crate) fn prime_sequence() -> impl Iterator<Item = u64> {
    (1u64 << 20..(1u64 << 31)).rev().filter(|&n| n % 2 == 1 && is_prime_u64(n))
}

pub(crate) type IntRow = Vec<(usize, BigInt)>;

pub(crate) fn reduce_rows(rows: &[IntRow], subset: Option<&[usize]>, p: u64) -> Vec<Vec<(usize, u64)>> {
    let conv = |r: &IntRow| -> Vec<(usize, u64)> {
        r.iter()
            .filter_map(|(c, v)| {
                let m = residue(v, p);
                (m != 0).then_some((*c, m))
            })
            .collect()
    };
    match subset {
        Some(idx) => idx.iter().map(|&i| conv(&rows[i])).collect(),
        None => rows.iter().map(conv).collect(),
    }
}

pub(crate) fn residue(v: &BigInt, p: u64) -> u64 {
    if let Some(small) = v.to_i64() {
        return small.rem_euclid(p as i64) as u64;
    }
    let m = v.mod_floor(&BigInt::from(p));
    m.to_u64().expect("residue fits")
}

/// Which kernel vectors to reconstruct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Want {
    /// The full basis, one vector per free column.
    All,
    /// Only the vector attached to this column, if it is free.
    Column(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct QKernel {
    pub pivots: Vec<usize>,
    /// Pairs (free column, kernel vector) for the requested free columns.
    pub vectors: Vec<(usize, Vec<BigRational>)>,
}

/// Lexicographic comparison of pivot patterns: larger rank wins, then the
/// earlier pivot list.
fn better_pattern(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return a.len() > b.len();
    }
    a < b
}

struct Accumulator {
    modulus: BigInt,
    /// Residues of `R[i][j]` for each pivot row i and requested free column j.
    values: Vec<Vec<BigInt>>,
    columns: Vec<usize>,
}

impl Accumulator {
    fn new(r: &ModRref, columns: Vec<usize>) -> Self {
        let values = r
            .rows
            .iter()
            .map(|row| columns.iter().map(|&j| BigInt::from(row[j])).collect())
            .collect();
        Accumulator {
            modulus: BigInt::from(r.p),
            values,
            columns,
        }
    }

    fn absorb(&mut self, r: &ModRref) {
        let p = r.p;
        let m_mod_p = residue(&self.modulus, p);
        let inv = invmod(m_mod_p, p);
        for (i, row) in r.rows.iter().enumerate() {
            for (k, &j) in self.columns.iter().enumerate() {
                let a = &mut self.values[i][k];
                let a_mod = residue(a, p);
                let b = row[j];
                let diff = (b + p - a_mod) % p;
                if diff != 0 {
                    let t = mulmod(diff, inv, p);
                    *a += &self.modulus * BigInt::from(t);
                }
            }
        }
        self.modulus *= BigInt::from(p);
    }

    fn reconstruct(&self) -> Option<Vec<Vec<BigRational>>> {
        let bound: BigInt = (&self.modulus >> 1u32).sqrt();
        self.values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|a| rational_reconstruction(a, &self.modulus, &bound))
                    .collect::<Option<Vec<_>>>()
            })
            .collect()
    }
}

/// Finds `r/s ≡ a (mod m)` with `|r|, s ≤ bound`.
pub(crate) fn rational_reconstruction(a: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
    let a = a.mod_floor(m);
    if a.is_zero() {
        return Some(BigRational::zero());
    }
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let (q, r2) = r0.div_rem(&r1);
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Exact check `A·v = 0` for a rational vector given by its free-column data.
fn annihilates(rows: &[IntRow], v: &[BigRational]) -> bool {
    let den = v
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|q| q.numer() * (&den / q.denom()))
        .collect();
    rows.iter().all(|row| {
        let mut s = BigInt::zero();
        for (c, a) in row {
            if !ints[*c].is_zero() {
                s += a * &ints[*c];
            }
        }
        s.is_zero()
    })
}

fn assemble(pivots: &[usize], ncols: usize, j: usize, col: &[BigRational]) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); ncols];
    v[j] = BigRational::one();
    for (i, &c) in pivots.iter().enumerate() {
        v[c] = -col[i].clone();
    }
    v
}

/// Computes the requested kernel vectors of an integer matrix.
pub(crate) fn kernel(rows: &[IntRow], ncols: usize, want: Want) -> Result<QKernel, LinalgError> {
    let mut primes = prime_sequence();
    'restart: for _attempt in 0..8 {
        let p0 = primes.next().ok_or(LinalgError::OutOfPrimes)?;
        let first = rref_sparse(&reduce_rows(rows, None, p0), ncols, p0);
        let basis = first.basis_rows.clone();
        let pivots = first.pivots.clone();
        let free = first.free_columns();
        let columns: Vec<usize> = match want {
            Want::All => free.clone(),
            Want::Column(j) => {
                if free.contains(&j) {
                    vec![j]
                } else {
                    Vec::new()
                }
            }
        };
        if columns.is_empty() {
            // A pivot mod p is a pivot over ℚ only for lucky p; callers that
            // need certainty check the opposite claim separately.
            return Ok(QKernel {
                pivots,
                vectors: Vec::new(),
            });
        }
        let mut acc = Accumulator::new(&first, columns.clone());
        let mut used = 1usize;
        let mut next_check = 1usize;
        let mut last: Option<Vec<Vec<BigRational>>> = None;
        loop {
            if used >= next_check {
                next_check = next_check + next_check / 2 + 1;
                if let Some(cand) = acc.reconstruct() {
                    let vectors: Vec<(usize, Vec<BigRational>)> = columns
                        .iter()
                        .enumerate()
                        .map(|(k, &j)| {
                            let col: Vec<BigRational> = cand.iter().map(|r| r[k].clone()).collect();
                            (j, assemble(&pivots, ncols, j, &col))
                        })
                        .collect();
                    if vectors.iter().all(|(_, v)| annihilates(rows, v)) {
                        return Ok(QKernel { pivots, vectors });
                    }
                    if last.as_ref() == Some(&cand) {
                        // stable but wrong: the first prime was unlucky
                        continue 'restart;
                    }
                    last = Some(cand);
                }
            }
            let p = primes.next().ok_or(LinalgError::OutOfPrimes)?;
            let r = rref_sparse(&reduce_rows(rows, Some(&basis), p), ncols, p);
            if r.pivots != pivots {
                if better_pattern(&r.pivots, &pivots) {
                    continue 'restart;
                }
                continue;
            }
            acc.absorb(&r);
            used += 1;
            if used > 4000 {
                return Err(LinalgError::OutOfPrimes);
            }
        }
    }
    Err(LinalgError::OutOfPrimes)
}

/// Rank modulo a single prime; a lower bound for the rank over ℚ.
pub(crate) fn rank_mod_prime(rows: &[IntRow], ncols: usize, p: u64) -> ModRref {
    rref_sparse(&reduce_rows(rows, None, p), ncols, p)
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub(crate) fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
    if !g.is_zero() {
        let lead_neg = ints.iter().find(|a| !a.is_zero()).map(|a| a.sign() == Sign::Minus) == Some(true);
        let g = if lead_neg { -g } else { g };
        for a in ints.iter_mut() {
            *a = &*a / &g;
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_rows(rows: &[&[i64]]) -> Vec<IntRow> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(c, v)| (c, BigInt::from(*v)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn reconstruction_recovers_fractions() {
        let m = BigInt::from(1_000_000_007u64);
        let bound: BigInt = (&m >> 1u32).sqrt();
        // 2/3 mod m
        let inv3 = BigInt::from(invmod(3, 1_000_000_007));
        let a = (BigInt::from(2) * inv3).mod_floor(&m);
        assert_eq!(
            rational_reconstruction(&a, &m, &bound),
            Some(BigRational::new(2.into(), 3.into()))
        );
    }

    #[test]
    fn kernel_with_large_entries() {
        // rows force v = (big, -1) direction
        let big: i64 = 3_000_000_019;
        let rows = int_rows(&[&[1, big], &[2, 2 * big]]);
        let k = kernel(&rows, 2, Want::All).unwrap();
        assert_eq!(k.vectors.len(), 1);
        let v = &k.vectors[0].1;
        assert_eq!(v[0], BigRational::from_integer((-big).into()));
        assert_eq!(primitive(v), vec![BigInt::from(big), BigInt::from(-1)]);
    }

    #[test]
    fn entries_needing_several_primes() {
        // 3x3 system whose kernel has entries near 10^30
        let a: i64 = 1_000_000_007;
        let b: i64 = 998_244_353;
        let rows = int_rows(&[&[a, b, 0, 1], &[0, a, b, 0], &[b, 0, a, 1]]);
        let k = kernel(&rows, 4, Want::All).unwrap();
        assert_eq!(k.vectors.len(), 1);
        assert!(annihilates(&rows, &k.vectors[0].1));
    }
}
