//! Finite-dimensional quotients `K[u,v]/I`: standard monomials,
//! multiplication matrices, points and local multiplicities.

use crate::linalg::Matrix;
use crate::poly::{Monomial, Poly};
use crate::scalar::{FieldId, Scalar};
use crate::upoly::UPoly;

use super::groebner::{buchberger2, normal_form};
use super::roots::field_roots;
use super::SingularError;

pub type Dense = Vec<Vec<Scalar>>;

#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    field: FieldId,
    basis: Vec<Poly>,
    standard: Vec<Monomial>,
    /// `mult[k][i][j]`: coefficient of standard monomial i in NF(var_k · s_j).
    mult: [Dense; 2],
}

impl QuotientAlgebra {
    pub fn new(gens: &[Poly]) -> Result<QuotientAlgebra, SingularError> {
        let field = gens.first().map(Poly::field).ok_or(SingularError::NoGenerators)?;
        let basis = buchberger2(gens);
        QuotientAlgebra::from_groebner(field, basis)
    }

    pub fn from_groebner(field: FieldId, basis: Vec<Poly>) -> Result<QuotientAlgebra, SingularError> {
        let leads: Vec<Monomial> = basis.iter().map(|g| g.leading_monomial().unwrap()).collect();
        let pure = |k: usize| {
            leads
                .iter()
                .filter(|m| m.0[1 - k] == 0 && m.0[2] == 0)
                .map(|m| m.0[k])
                .min()
        };
        let (Some(a), Some(b)) = (pure(0), pure(1)) else {
            return Err(SingularError::PositiveDimensional);
        };
        let mut standard = Vec::new();
        for i in 0..a {
            for j in 0..b {
                let m = Monomial::new(i, j, 0);
                if !leads.iter().any(|l| l.divides(&m)) {
                    standard.push(m);
                }
            }
        }
        standard.sort();
        let index = |m: &Monomial| standard.binary_search(m).expect("normal forms use standard monomials");
        let dim = standard.len();
        let one = Scalar::one(field);
        let mult = [0usize, 1].map(|k| {
            let var = if k == 0 { Monomial::new(1, 0, 0) } else { Monomial::new(0, 1, 0) };
            let mut m = vec![vec![Scalar::zero(field); dim]; dim];
            for (j, s) in standard.iter().enumerate() {
                let nf = normal_form(&Poly::term(one.clone(), var.mul(s)), &basis);
                for (mono, c) in nf.terms() {
                    m[index(mono)][j] = c.clone();
                }
            }
            m
        });
        let q = QuotientAlgebra {
            field,
            basis,
            standard,
            mult,
        };
        assert!(
            mat_mul(&q.mult[0], &q.mult[1]) == mat_mul(&q.mult[1], &q.mult[0]),
            "multiplication matrices do not commute"
        );
        Ok(q)
    }

    pub fn field(&self) -> FieldId {
        self.field
    }

    pub fn groebner_basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    pub fn dimension(&self) -> usize {
        self.standard.len()
    }

    pub fn mult_matrix(&self, k: usize) -> &Dense {
        &self.mult[k]
    }

    /// Dimension of the joint generalized eigenspace at `(a, b)`.
    pub fn local_multiplicity(&self, point: &[Scalar; 2]) -> usize {
        let dim = self.dimension();
        if dim == 0 {
            return 0;
        }
        let a = generalized_kernel_rows(&self.mult[0], &point[0]);
        let b = generalized_kernel_rows(&self.mult[1], &point[1]);
        let mut m = Matrix::new(self.field, dim);
        for row in a.iter().chain(&b) {
            m.push_row(row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, c.clone())).collect());
        }
        dim - m.rank().expect("rank")
    }

    pub fn solve_points(&self) -> PointSet {
        let dim = self.dimension();
        let cu = charpoly(&self.mult[0]);
        let cv = charpoly(&self.mult[1]);
        let su = field_roots(&cu);
        let sv = field_roots(&cv);
        let mut points = Vec::new();
        let mut total = 0;
        for a in &su.roots {
            for b in &sv.roots {
                let pt = [a.clone(), b.clone()];
                let m = self.local_multiplicity(&pt);
                if m > 0 {
                    total += m;
                    points.push((pt, m));
                }
            }
        }
        let mut residual_factors = Vec::new();
        for r in [&su.residual, &sv.residual] {
            if r.degree().unwrap_or(0) > 0 {
                residual_factors.push(r.clone());
            }
        }
        PointSet {
            points,
            residual_factors,
            residual_dimension: dim - total,
        }
    }
}

/// Field-rational points with multiplicities and what is left over.
#[derive(Debug, Clone)]
pub struct PointSet {
    pub points: Vec<([Scalar; 2], usize)>,
    /// Non-split squarefree parts of the characteristic polynomials of M_u, M_v.
    pub residual_factors: Vec<UPoly>,
    pub residual_dimension: usize,
}

pub fn mat_mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let field = a.first().and_then(|r| r.first()).map(Scalar::field);
    let Some(field) = field else { return vec![Vec::new(); n] };
    let mut out = vec![vec![Scalar::zero(field); m]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(aik * &b[k][j]);
                }
            }
        }
    }
    out
}

fn shift(m: &Dense, c: &Scalar) -> Dense {
    let mut out = m.clone();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = &row[i] - c;
    }
    out
}

fn dense_rank(m: &Dense) -> usize {
    let field = m[0][0].field();
    let mut mat = Matrix::new(field, m[0].len());
    for row in m {
        mat.push_row(row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, c.clone())).collect());
    }
    mat.rank().expect("rank")
}

/// `(M − c)^k` for k large enough that its kernel is the generalized eigenspace.
fn generalized_kernel_rows(m: &Dense, c: &Scalar) -> Dense {
    let n = shift(m, c);
    let mut pow = n.clone();
    let mut rank = dense_rank(&pow);
    loop {
        let next = mat_mul(&pow, &pow);
        let r = dense_rank(&next);
        if r == rank {
            return pow;
        }
        pow = next;
        rank = r;
    }
}

/// Characteristic polynomial by reduction to Hessenberg form.
pub fn charpoly(m: &Dense) -> UPoly {
    let n = m.len();
    let field = match m.first().and_then(|r| r.first()) {
        Some(c) => c.field(),
        None => return UPoly::one(FieldId::Q),
    };
    let mut h = m.clone();
    for k in 1..n.saturating_sub(1) {
        let Some(piv) = (k..n).find(|&i| !h[i][k - 1].is_zero()) else { continue };
        if piv != k {
            h.swap(piv, k);
            for row in h.iter_mut() {
                row.swap(piv, k);
            }
        }
        let inv = h[k][k - 1].inv().unwrap();
        for i in k + 1..n {
            if h[i][k - 1].is_zero() {
                continue;
            }
            let f = &h[i][k - 1] * &inv;
            for j in 0..n {
                let t = &f * &h[k][j];
                h[i][j] = &h[i][j] - &t;
            }
            for row in h.iter_mut() {
                let t = &f * &row[i];
                row[k] = &row[k] + &t;
            }
        }
    }
    // p_k = charpoly of the leading k×k block
    let t = UPoly::x(field);
    let mut polys = vec![UPoly::one(field)];
    for k in 0..n {
        let mut pk = t.sub(&UPoly::new(field, vec![h[k][k].clone()])).mul(&polys[k]);
        let mut prod = Scalar::one(field);
        for i in (0..k).rev() {
            prod = &prod * &h[i + 1][i];
            let c = &prod * &h[i][k];
            pk = pk.sub(&polys[i].scale(&c));
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}
