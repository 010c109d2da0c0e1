//! Dense univariate polynomials over a [`Scalar`] field.

use crate::poly::{Monomial, Poly};
use crate::scalar::{FieldId, Scalar};

/// Coefficients from degree 0 upward, with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly {
    field: FieldId,
    coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn new(field: FieldId, mut coeffs: Vec<Scalar>) -> UPoly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UPoly { field, coeffs }
    }

    pub fn zero(field: FieldId) -> UPoly {
        UPoly::new(field, Vec::new())
    }

    pub fn one(field: FieldId) -> UPoly {
        UPoly::new(field, vec![Scalar::one(field)])
    }

    /// The monic linear factor `t - r`.
    pub fn linear(r: &Scalar) -> UPoly {
        let f = r.field();
        UPoly::new(f, vec![-r, Scalar::one(f)])
    }

    pub fn x(field: FieldId) -> UPoly {
        UPoly::new(field, vec![Scalar::zero(field), Scalar::one(field)])
    }

    pub fn from_i64(field: FieldId, c: &[i64]) -> UPoly {
        UPoly::new(field, c.iter().map(|&v| Scalar::from_i64(field, v)).collect())
    }

    /// Reads a polynomial in `x` alone.
    pub fn from_poly_in_x(p: &Poly) -> UPoly {
        let deg = p.terms().iter().map(|(m, _)| m.0[0]).max().unwrap_or(0) as usize;
        let mut c = vec![Scalar::zero(p.field()); deg + 1];
        for (m, v) in p.terms() {
            debug_assert!(m.0[1] == 0 && m.0[2] == 0);
            c[m.0[0] as usize] = v.clone();
        }
        UPoly::new(p.field(), c)
    }

    pub fn to_poly_in_x(&self) -> Poly {
        Poly::from_terms(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (Monomial::new(k as u32, 0, 0), c.clone())),
        )
    }

    pub fn field(&self) -> FieldId {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(self.field), |acc, c| &(&acc * t) + c)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Scalar::zero(self.field);
        UPoly::new(
            self.field,
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + o.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.scale(&-Scalar::one(self.field)))
    }

    pub fn scale(&self, c: &Scalar) -> UPoly {
        UPoly::new(self.field, self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(self.field);
        }
        let mut c = vec![Scalar::zero(self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UPoly::new(self.field, c)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.leading().unwrap().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let n = r.len();
        if n <= dd {
            return (UPoly::zero(self.field), self.clone());
        }
        let mut q = vec![Scalar::zero(self.field); n - dd];
        for k in (dd..n).rev() {
            let c = &r[k] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k - dd + j] = &r[k - dd + j] - &(&c * dj);
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        (UPoly::new(self.field, q), UPoly::new(self.field, r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> UPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_i64(self.field, k as i64))
                .collect(),
        )
    }

    /// `a^e mod m` by repeated squaring.
    pub fn pow_mod(&self, mut e: u128, m: &UPoly) -> UPoly {
        let mut acc = UPoly::one(self.field).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Squarefree part in characteristic zero, or when the degree is below
    /// the characteristic.
    pub fn squarefree_part(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Reduces rational coefficients modulo `p`.
    pub fn reduce_mod(&self, p: u64) -> Option<UPoly> {
        let f = FieldId::Fp(p);
        let c: Option<Vec<Scalar>> = self.coeffs.iter().map(|v| v.reduce_mod(p).ok()).collect();
        Some(UPoly::new(f, c?))
    }
}

impl std::fmt::Display for UPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // printed in the variable t
        let p = self.to_poly_in_x();
        write!(f, "{}", p.to_string().replace('x', "t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let q = FieldId::Q;
        let a = UPoly::from_i64(q, &[-1, 0, 1]); // t^2 - 1
        let b = UPoly::from_i64(q, &[1, 1]); // t + 1
        let (quo, r) = a.div_rem(&b);
        assert_eq!(quo, UPoly::from_i64(q, &[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&UPoly::from_i64(q, &[-1, 1])), UPoly::from_i64(q, &[-1, 1]));
        assert!(a.is_squarefree());
        let sq = a.mul(&b);
        assert!(!sq.is_squarefree());
        assert_eq!(sq.squarefree_part(), a);
    }

    #[test]
    fn evaluation_and_powers() {
        let f = FieldId::fp(13).unwrap();
        let t = UPoly::x(f);
        let m = UPoly::from_i64(f, &[1, 0, 1]);
        // t^13 ≡ t mod (p, m) by Frobenius on GF(13)[t]/(t^2+1) conjugates
        let r = t.pow_mod(13 * 13, &m);
        assert_eq!(r, t);
        assert_eq!(m.eval(&f.int(5)), f.int(0));
    }
}
