//! Degree-by-degree linear algebra over R = 𝕂[x, y, z].
//!
//! Every graded question (Hilbert values, membership in a degree piece,
//! syzygies of a fixed degree) becomes a finite linear system whose columns
//! are indexed by monomials in grevlex order.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{LinalgError, Matrix, Solution};
use crate::poly::{Monomial, Poly, PolyError};
use crate::scalar::{FieldId, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("input polynomial is not homogeneous")]
    NonHomogeneousInput,
    #[error("an ideal needs at least one nonzero generator")]
    NoGenerators,
    #[error("polynomials live over different fields ({0} vs {1})")]
    FieldMismatch(FieldId, FieldId),
    #[error("maps of a graded kernel must share one degree")]
    MixedDegrees,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl From<PolyError> for GradedError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::FieldMismatch(a, b) => GradedError::FieldMismatch(a, b),
            _ => GradedError::NonHomogeneousInput,
        }
    }
}

/// `C(n, 2)`-style binomial, zero for negative `n`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Dimension of R_e.
pub fn dim_r(e: i64) -> u64 {
    binomial(e + 2, 2)
}

/// All monomials of degree `e`, largest first in grevlex.
pub fn monomial_basis(e: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(dim_r(e as i64) as usize);
    for c in 0..=e {
        for b in 0..=(e - c) {
            out.push(Monomial::new(e - c - b, b, c));
        }
    }
    out
}

/// Position of `m` inside [`monomial_basis`] of its degree.
pub fn monomial_index(m: &Monomial) -> usize {
    let e = m.degree() as usize;
    let (b, c) = (m.0[1] as usize, m.0[2] as usize);
    // blocks for z-exponent k have e - k + 1 entries
    let before: usize = (0..c).map(|k| e - k + 1).sum();
    before + b
}

/// Coefficient vector of a homogeneous polynomial of degree `e`, sparse.
pub fn coefficients(p: &Poly) -> Vec<(usize, Scalar)> {
    p.terms()
        .iter()
        .map(|(m, c)| (monomial_index(m), c.clone()))
        .collect()
}

/// Polynomial from a dense coefficient vector over the monomials of degree `e`.
pub fn from_coefficients(field: FieldId, e: u32, v: &[Scalar]) -> Poly {
    let basis = monomial_basis(e);
    Poly::from_terms(
        field,
        basis
            .into_iter()
            .zip(v.iter().cloned())
            .filter(|(_, c)| !c.is_zero()),
    )
}

/// Homogeneous ideal given by an ordered list of generators.
#[derive(Debug, Clone)]
pub struct GradedIdeal {
    field: FieldId,
    generators: Vec<Poly>,
    degrees: Vec<u32>,
}

/// Classification of the scheme defined by a graded ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "length", rename_all = "snake_case")]
pub enum Finiteness {
    Finite(u64),
    PositiveDimensional,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertProfile {
    pub values: Vec<u64>,
    pub stable_value: Option<u64>,
    pub stabilized_at: Option<u32>,
    pub t_max: u32,
}

impl HilbertProfile {
    /// Applies the stopping rule to raw values `values[0..=t_max]`.
    pub fn from_values(values: Vec<u64>) -> HilbertProfile {
        let t_max = values.len() as u32 - 1;
        let n = values.len();
        let mut stable_value = None;
        let mut stabilized_at = None;
        if n >= 4 {
            let last = values[n - 1];
            if values[n - 4..].iter().all(|&v| v == last) {
                stable_value = Some(last);
                let mut t = n - 1;
                while t > 0 && values[t - 1] == last {
                    t -= 1;
                }
                stabilized_at = Some(t as u32);
            }
        }
        HilbertProfile {
            values,
            stable_value,
            stabilized_at,
            t_max,
        }
    }

    pub fn finiteness(&self) -> Finiteness {
        if let Some(v) = self.stable_value {
            return Finiteness::Finite(v);
        }
        let n = self.values.len();
        if n >= 4 && self.values[n - 4..].windows(2).all(|w| w[1] > w[0]) {
            return Finiteness::PositiveDimensional;
        }
        Finiteness::Inconclusive
    }

    pub fn length(&self) -> Option<u64> {
        match self.finiteness() {
            Finiteness::Finite(l) => Some(l),
            _ => None,
        }
    }
}

/// Outcome of a degree-piece membership test.
#[derive(Debug, Clone)]
pub enum Membership {
    /// `Σ Q_i g_i = F` with one cofactor per generator.
    Member(Vec<Poly>),
    /// `F` lies outside the degree piece; adding it raises the rank.
    NotMember {
        rank_piece: usize,
        rank_with_f: usize,
        /// Linear functional on R_N vanishing on the piece and equal to 1 on F.
        witness: Vec<Scalar>,
    },
}

impl GradedIdeal {
    pub fn new(generators: Vec<Poly>) -> Result<GradedIdeal, GradedError> {
        let gens: Vec<Poly> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let first = gens.first().ok_or(GradedError::NoGenerators)?;
        let field = first.field();
        let mut degrees = Vec::with_capacity(gens.len());
        for g in &gens {
            if g.field() != field {
                return Err(GradedError::FieldMismatch(field, g.field()));
            }
            degrees.push(g.require_homogeneous()?);
        }
        Ok(GradedIdeal {
            field,
            generators: gens,
            degrees,
        })
    }

    pub fn field(&self) -> FieldId {
        self.field
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Rows `m·g_i` spanning I_t, as coefficient vectors over R_t.
    pub fn degree_matrix(&self, t: u32) -> Matrix {
        let mut m = Matrix::new(self.field, dim_r(t as i64) as usize);
        for (g, &d) in self.generators.iter().zip(&self.degrees) {
            if d > t {
                continue;
            }
            let one = Scalar::one(self.field);
            for mono in monomial_basis(t - d) {
                m.push_row(coefficients(&g.mul_term(&one, &mono)));
            }
        }
        m
    }

    /// Row-reduced basis of I_t.
    pub fn degree_piece(&self, t: u32) -> Result<Vec<Poly>, GradedError> {
        let m = self.degree_matrix(t);
        if m.nrows() == 0 {
            return Ok(Vec::new());
        }
        let (_, rows) = m.rref()?;
        Ok(rows
            .iter()
            .map(|r| from_coefficients(self.field, t, r))
            .collect())
    }

    pub fn piece_dimension(&self, t: u32) -> Result<u64, GradedError> {
        let m = self.degree_matrix(t);
        if m.nrows() == 0 {
            return Ok(0);
        }
        Ok(m.rank()? as u64)
    }

    /// dim (R/I)_t.
    pub fn hilbert_value(&self, t: u32) -> Result<u64, GradedError> {
        Ok(dim_r(t as i64) - self.piece_dimension(t)?)
    }

    /// The bound `max(Σ deg g_i, 3·max deg g_i) + 3`.
    pub fn auto_t_max(&self) -> u32 {
        let sum: u32 = self.degrees.iter().sum();
        let max = self.degrees.iter().copied().max().unwrap_or(0);
        sum.max(3 * max) + 3
    }

    pub fn hilbert_profile(&self, t_max: Option<u32>) -> Result<HilbertProfile, GradedError> {
        let t_max = t_max.unwrap_or_else(|| self.auto_t_max()).max(3);
        let values: Result<Vec<u64>, GradedError> = (0..=t_max)
            .into_par_iter()
            .map(|t| self.hilbert_value(t))
            .collect();
        Ok(HilbertProfile::from_values(values?))
    }

    /// Decides whether `f` lies in the degree piece I_N spanned by the
    /// generators, returning cofactors or a separating functional.
    pub fn membership_certificate(&self, f: &Poly) -> Result<Membership, GradedError> {
        if f.field() != self.field {
            return Err(GradedError::FieldMismatch(self.field, f.field()));
        }
        let n = match f.homogeneous_degree() {
            Some(n) => n,
            None if f.is_zero() => {
                return Ok(Membership::Member(vec![Poly::zero(self.field); self.generators.len()]))
            }
            None => return Err(GradedError::NonHomogeneousInput),
        };
        let rows_t = self.degree_matrix(n);
        let ncoef = dim_r(n as i64) as usize;
        if rows_t.nrows() == 0 {
            let mut w = vec![Scalar::zero(self.field); ncoef];
            let (m, c) = f.leading_term().unwrap();
            w[monomial_index(m)] = c.inv().expect("nonzero");
            return Ok(Membership::NotMember {
                rank_piece: 0,
                rank_with_f: 1,
                witness: w,
            });
        }
        // columns of A are the products m·g_i, rows are monomials of degree N
        let a = rows_t.transpose();
        let mut rhs = vec![Scalar::zero(self.field); ncoef];
        for (k, c) in coefficients(f) {
            rhs[k] = c;
        }
        match a.solve(&rhs)? {
            Solution::Consistent(x) => {
                let mut cofactors = Vec::with_capacity(self.generators.len());
                let mut offset = 0;
                for &d in &self.degrees {
                    if d > n {
                        cofactors.push(Poly::zero(self.field));
                        continue;
                    }
                    let len = dim_r((n - d) as i64) as usize;
                    cofactors.push(from_coefficients(self.field, n - d, &x[offset..offset + len]));
                    offset += len;
                }
                let check = cofactors
                    .iter()
                    .zip(&self.generators)
                    .fold(Poly::zero(self.field), |acc, (q, g)| &acc + &(q * g));
                assert_eq!(&check, f, "membership cofactors fail to reproduce F");
                Ok(Membership::Member(cofactors))
            }
            Solution::Inconsistent { witness } => {
                let rank_piece = rows_t.rank()?;
                Ok(Membership::NotMember {
                    rank_piece,
                    rank_with_f: rank_piece + 1,
                    witness,
                })
            }
        }
    }
}

/// Basis of `{(A_1, …, A_k) ∈ R_e^k : Σ A_j h_j = 0}` for forms `h_j` of a
/// common degree (zero entries allowed).
pub fn graded_kernel(h: &[Poly], e: u32) -> Result<Vec<Vec<Poly>>, GradedError> {
    let m = graded_map_matrix(h, e)?;
    let field = m.field();
    let block = dim_r(e as i64) as usize;
    let k = m.kernel()?;
    Ok(k.basis
        .iter()
        .map(|v| {
            (0..h.len())
                .map(|j| from_coefficients(field, e, &v[j * block..(j + 1) * block]))
                .collect()
        })
        .collect())
}

/// True when the graded kernel in degree `e` is zero.
pub fn graded_kernel_is_trivial(h: &[Poly], e: u32) -> Result<bool, GradedError> {
    Ok(graded_map_matrix(h, e)?.kernel_is_trivial()?)
}

/// Matrix of `(A_j) ↦ Σ A_j h_j` from R_e^k to R_{e+s}; rows are target
/// monomials, columns are blocks of source monomials.
pub fn graded_map_matrix(h: &[Poly], e: u32) -> Result<Matrix, GradedError> {
    let field = h.first().map(Poly::field).ok_or(GradedError::NoGenerators)?;
    let mut s = None;
    for p in h {
        if p.field() != field {
            return Err(GradedError::FieldMismatch(field, p.field()));
        }
        if p.is_zero() {
            continue;
        }
        let d = p.require_homogeneous()?;
        if s.is_some_and(|s| s != d) {
            return Err(GradedError::MixedDegrees);
        }
        s = Some(d);
    }
    let s = s.unwrap_or(0);
    let block = dim_r(e as i64) as usize;
    let mut cols = Matrix::new(field, dim_r((e + s) as i64) as usize);
    let one = Scalar::one(field);
    for p in h {
        for mono in monomial_basis(e) {
            cols.push_row(coefficients(&p.mul_term(&one, &mono)));
        }
    }
    debug_assert_eq!(cols.nrows(), block * h.len());
    Ok(cols.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(FieldId::Q, s).unwrap()
    }

    fn ideal(gens: &[&str]) -> GradedIdeal {
        GradedIdeal::new(gens.iter().map(|g| p(g)).collect()).unwrap()
    }

    #[test]
    fn monomial_bases() {
        assert_eq!(monomial_basis(0), vec![Monomial::ONE]);
        let b1: Vec<String> = monomial_basis(1).iter().map(|m| m.to_string()).collect();
        assert_eq!(b1, ["x", "y", "z"]);
        assert_eq!(monomial_basis(3).len(), 10);
        for e in 0..7 {
            let b = monomial_basis(e);
            assert!(b.windows(2).all(|w| w[0] > w[1]));
            for (k, m) in b.iter().enumerate() {
                assert_eq!(monomial_index(m), k);
            }
        }
    }

    #[test]
    fn degree_pieces() {
        assert_eq!(ideal(&["x", "y", "z"]).piece_dimension(1).unwrap(), 3);
        let sq = ideal(&["x^2"]);
        assert_eq!(sq.piece_dimension(3).unwrap(), 3);
        assert_eq!(sq.degree_piece(3).unwrap().len(), 3);
        let osc = ideal(&["x*(z^2+x*y)", "x^2*z", "z^3"]);
        // nine products m·g_i with the single relation z·u = y·v + x·w
        assert_eq!(osc.piece_dimension(4).unwrap(), 8);
        assert_eq!(osc.hilbert_value(4).unwrap(), 7);
    }

    #[test]
    fn profiles() {
        let pt = ideal(&["x", "y"]).hilbert_profile(None).unwrap();
        assert_eq!(pt.stable_value, Some(1));
        assert_eq!(pt.finiteness(), Finiteness::Finite(1));
        let osc = ideal(&["x*(z^2+x*y)", "x^2*z", "z^3"]).hilbert_profile(None).unwrap();
        assert_eq!(osc.stable_value, Some(7));
        let line = ideal(&["x"]).hilbert_profile(None).unwrap();
        assert_eq!(line.finiteness(), Finiteness::PositiveDimensional);
        assert_eq!(line.stable_value, None);
    }

    #[test]
    fn hilbert_complement() {
        let osc = ideal(&["x*(z^2+x*y)", "x^2*z", "z^3"]);
        for t in 0..9 {
            assert_eq!(
                osc.piece_dimension(t).unwrap() + osc.hilbert_value(t).unwrap(),
                dim_r(t as i64)
            );
        }
    }

    #[test]
    fn membership() {
        let osc = ideal(&["x*(z^2+x*y)", "x^2*z", "z^3"]);
        match osc.membership_certificate(&p("x*z^3 - x^2*y*z")).unwrap() {
            Membership::Member(q) => {
                // differs from fg = x·w − y·v by a syzygy of (u, v, w)
                let diff = [q[0].clone(), &q[1] + &p("y"), &q[2] - &p("x")];
                let syz = graded_kernel(osc.generators(), 1).unwrap();
                assert_eq!(syz.len(), 1);
                let s = &syz[0];
                let ratio = (0..3)
                    .find(|&k| !s[k].is_zero())
                    .map(|k| diff[k].div_exact(&s[k]).unwrap())
                    .unwrap();
                assert!(ratio.is_constant());
                for k in 0..3 {
                    assert_eq!(diff[k], &ratio * &s[k]);
                }
            }
            _ => panic!("fg lies in the ideal"),
        }
        let g = p("z^2-x*y");
        let f = p("x*z");
        let target = &(&g * &(&f + &g)) * &(&f - &g);
        assert!(matches!(
            osc.membership_certificate(&target).unwrap(),
            Membership::Member(_)
        ));
        match osc.membership_certificate(&p("y^4")).unwrap() {
            Membership::NotMember {
                rank_piece,
                rank_with_f,
                ..
            } => assert_eq!(rank_with_f, rank_piece + 1),
            _ => panic!("y^4 is not in the ideal"),
        }
        let xyz = ideal(&["x*y*z", "x^2", "y^2"]);
        assert!(matches!(
            xyz.membership_certificate(&p("x*y*z^2")).unwrap(),
            Membership::Member(_)
        ));
    }

    #[test]
    fn kernels_of_gradients() {
        let coords = Poly::coords(FieldId::Q).to_vec();
        assert!(graded_kernel(&coords, 0).unwrap().is_empty());
        assert!(graded_kernel_is_trivial(&coords, 0).unwrap());
        assert_eq!(graded_kernel(&p("x*y*z").gradient(), 1).unwrap().len(), 2);
        let rot = graded_kernel(&p("x^2+y^2+z^2").gradient(), 1).unwrap();
        assert_eq!(rot.len(), 3);
        let h = p("x^2+y^2+z^2").gradient();
        for v in rot {
            let s = (0..3).fold(Poly::zero(FieldId::Q), |acc, j| &acc + &(&v[j] * &h[j]));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(dim_r(-1), 0);
        assert_eq!(dim_r(0), 1);
        assert_eq!(dim_r(4), 15);
        assert_eq!(binomial(10, 3), 120);
    }
}
