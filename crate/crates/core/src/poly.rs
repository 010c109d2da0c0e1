//! Sparse polynomials in x, y, z with graded reverse lexicographic order.
//!
//! Terms are stored in a vector sorted from largest to smallest monomial with
//! no zero coefficients, so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::scalar::{FieldId, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("polynomials live over different fields ({0} vs {1})")]
    FieldMismatch(FieldId, FieldId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        ['x', 'y', 'z'][self as usize]
    }
}

/// Exponent triple for x, y, z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Monomial([a, b, c])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial([
            other.0[0] - self.0[0],
            other.0[1] - self.0[1],
            other.0[2] - self.0[2],
        ])
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0].max(other.0[0]),
            self.0[1].max(other.0[1]),
            self.0[2].max(other.0[2]),
        ])
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0].min(other.0[0]),
            self.0[1].min(other.0[1]),
            self.0[2].min(other.0[2]),
        ])
    }
}

impl Ord for Monomial {
    /// Graded reverse lexicographic with x > y > z.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0[2].cmp(&self.0[2]))
            .then_with(|| other.0[1].cmp(&self.0[1]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Homogeneity {
    Zero,
    Degree(u32),
    Mixed,
}

#[derive(Clone)]
pub struct Poly {
    field: FieldId,
    terms: Vec<(Monomial, Scalar)>,
    homog: OnceLock<Homogeneity>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.terms.hash(state);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self)
    }
}

impl Poly {
    pub fn zero(field: FieldId) -> Poly {
        Poly {
            field,
            terms: Vec::new(),
            homog: OnceLock::new(),
        }
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::term(c, Monomial::ONE)
    }

    pub fn one(field: FieldId) -> Poly {
        Poly::constant(Scalar::one(field))
    }

    pub fn int(field: FieldId, n: i64) -> Poly {
        Poly::constant(Scalar::from_i64(field, n))
    }

    pub fn term(c: Scalar, m: Monomial) -> Poly {
        let field = c.field();
        if c.is_zero() {
            return Poly::zero(field);
        }
        Poly {
            field,
            terms: vec![(m, c)],
            homog: OnceLock::new(),
        }
    }

    pub fn var(field: FieldId, v: Var) -> Poly {
        Poly::term(Scalar::one(field), Monomial::var(v))
    }

    pub fn x(field: FieldId) -> Poly {
        Poly::var(field, Var::X)
    }

    pub fn y(field: FieldId) -> Poly {
        Poly::var(field, Var::Y)
    }

    pub fn z(field: FieldId) -> Poly {
        Poly::var(field, Var::Z)
    }

    /// The coordinate triple (x, y, z).
    pub fn coords(field: FieldId) -> [Poly; 3] {
        [Poly::x(field), Poly::y(field), Poly::z(field)]
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(field: FieldId, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Poly {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(c.field(), field);
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Poly::from_map(field, acc)
    }

    fn from_map(field: FieldId, acc: HashMap<Monomial, Scalar>) -> Poly {
        let mut terms: Vec<(Monomial, Scalar)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly {
            field,
            terms,
            homog: OnceLock::new(),
        }
    }

    /// Terms already sorted descending and free of zeros.
    pub(crate) fn from_sorted_terms(field: FieldId, terms: Vec<(Monomial, Scalar)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly {
            field,
            terms,
            homog: OnceLock::new(),
        }
    }

    pub fn field(&self) -> FieldId {
        self.field
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == 0)
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .binary_search_by(|(k, _)| m.cmp(k))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Scalar::zero(self.field))
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    fn homogeneity(&self) -> Homogeneity {
        *self.homog.get_or_init(|| {
            let mut it = self.terms.iter().map(|(m, _)| m.degree());
            match it.next() {
                None => Homogeneity::Zero,
                Some(d) => {
                    if it.all(|e| e == d) {
                        Homogeneity::Degree(d)
                    } else {
                        Homogeneity::Mixed
                    }
                }
            }
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity() != Homogeneity::Mixed
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.homogeneity() {
            Homogeneity::Degree(d) => Some(d),
            _ => None,
        }
    }

    /// Degree of a nonzero homogeneous polynomial, or a typed error.
    pub fn require_homogeneous(&self) -> Result<u32, PolyError> {
        self.homogeneous_degree().ok_or(PolyError::NonHomogeneous)
    }

    fn check_field(&self, other: &Poly) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::FieldMismatch(self.field, other.field))
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_field(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_field(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly::from_sorted_terms(self.field, out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.mul_term(c, m));
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(other.mul_term(c, m));
        }
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * 2 + other.terms.len() * 2);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(Poly::from_map(self.field, acc))
    }

    /// `c·m·self`; order is preserved by monomial multiplication.
    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.mul(m), v * c))
            .collect();
        Poly::from_sorted_terms(self.field, terms)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        self.mul_term(c, &Monomial::ONE)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn product<'a>(field: FieldId, factors: impl IntoIterator<Item = &'a Poly>) -> Poly {
        factors
            .into_iter()
            .fold(Poly::one(field), |acc, f| &acc * f)
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Formal partial derivative.
    pub fn partial(&self, v: Var) -> Poly {
        let k = v.index();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let c = c * &Scalar::from_i64(self.field, e as i64);
            if c.is_zero() {
                continue;
            }
            let mut n = *m;
            n.0[k] -= 1;
            terms.push((n, c));
        }
        // lowering one exponent can break grevlex order of the survivors
        Poly::from_terms(self.field, terms)
    }

    pub fn gradient(&self) -> [Poly; 3] {
        [
            self.partial(Var::X),
            self.partial(Var::Y),
            self.partial(Var::Z),
        ]
    }

    pub fn evaluate(&self, point: &[Scalar; 3]) -> Result<Scalar, PolyError> {
        for c in point {
            if c.field() != self.field {
                return Err(PolyError::FieldMismatch(self.field, c.field()));
            }
        }
        let max = |k: usize| self.terms.iter().map(|(m, _)| m.0[k]).max().unwrap_or(0);
        let powers: Vec<Vec<Scalar>> = (0..3)
            .map(|k| {
                let mut v = vec![Scalar::one(self.field)];
                for _ in 0..max(k) {
                    let next = v.last().unwrap() * &point[k];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Scalar::zero(self.field);
        for (m, c) in &self.terms {
            let t = c
                * &powers[0][m.0[0] as usize]
                * &powers[1][m.0[1] as usize]
                * &powers[2][m.0[2] as usize];
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// Division by a single polynomial leaves remainder zero exactly when it
    /// divides, since one polynomial is a Gröbner basis of its ideal.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() || self.field != d.field {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero(self.field));
        }
        let (dm, dc) = d.leading_term().cloned().unwrap();
        let dinv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Scalar)> = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            if !dm.divides(&m) {
                return None;
            }
            let qm = dm.quotient(&m);
            let qc = &c * &dinv;
            rem = &rem - &d.mul_term(&qc, &qm);
            quot.push((qm, qc));
        }
        Some(Poly::from_terms(self.field, quot))
    }

    /// Substitutes polynomials for x, y, z.
    pub fn compose(&self, images: &[Poly; 3]) -> Poly {
        let max = |k: usize| self.terms.iter().map(|(m, _)| m.0[k]).max().unwrap_or(0);
        let powers: Vec<Vec<Poly>> = (0..3)
            .map(|k| {
                let mut v = vec![Poly::one(self.field)];
                for _ in 0..max(k) {
                    let next = v.last().unwrap() * &images[k];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Poly::zero(self.field);
        for (m, c) in &self.terms {
            let t = &(&powers[0][m.0[0] as usize] * &powers[1][m.0[1] as usize])
                * &powers[2][m.0[2] as usize];
            acc = &acc + &t.scale(c);
        }
        acc
    }

    /// Sets `chart` to 1 and renames the two remaining coordinates, in order,
    /// to the affine variables x (u) and y (v).
    pub fn dehomogenize(&self, chart: Var) -> Poly {
        let rest: Vec<usize> = (0..3).filter(|&k| k != chart.index()).collect();
        Poly::from_terms(
            self.field,
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.0[rest[0]], m.0[rest[1]], 0), c.clone())),
        )
    }

    /// Reinterprets every coefficient in a larger field (ℚ → ℚ(i)).
    pub fn change_field(&self, field: FieldId) -> Result<Poly, PolyError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let v = match (c, field) {
                (_, f) if f == self.field => c.clone(),
                (Scalar::Q(q), f) => Scalar::from_rational(f, q)?,
                (Scalar::QI(g), FieldId::Fp(_)) if g.im == num_rational::BigRational::from_integer(0.into()) => {
                    Scalar::from_rational(field, &g.re)?
                }
                _ => return Err(PolyError::FieldMismatch(self.field, field)),
            };
            if !v.is_zero() {
                terms.push((*m, v));
            }
        }
        Ok(Poly::from_terms(field, terms))
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                self.$f(rhs).expect("polynomial field mismatch")
            }
        }
        impl std::ops::$tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$f(&rhs).expect("polynomial field mismatch")
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_sorted_terms(
            self.field,
            self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        )
    }
}

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Cross product `u ∧ v` of two polynomial triples.
pub fn wedge(u: &[Poly; 3], v: &[Poly; 3]) -> [Poly; 3] {
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

pub fn dot(u: &[Poly; 3], v: &[Poly; 3]) -> Poly {
    &(&(&u[0] * &v[0]) + &(&u[1] * &v[1])) + &(&u[2] * &v[2])
}

/// Determinant of the 3×3 matrix whose columns are `c1, c2, c3`.
pub fn det3(c1: &[Poly; 3], c2: &[Poly; 3], c3: &[Poly; 3]) -> Poly {
    dot(c3, &wedge(c1, c2))
}

/// Signed 2×2 minors `(R1, R2, R3)` of the 3×2 matrix `[c1 | c2]`, fixed by
/// `det3(c1, c2, q) = q1·R1 + q2·R2 + q3·R3`.
pub fn minors2x2(c1: &[Poly; 3], c2: &[Poly; 3]) -> [Poly; 3] {
    wedge(c1, c2)
}

/// Polynomial matrix with three rows and at most three columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    columns: Vec<[Poly; 3]>,
}

impl PolyMatrix {
    pub fn from_columns(columns: Vec<[Poly; 3]>) -> Result<PolyMatrix, PolyError> {
        assert!(columns.len() <= 3, "at most three columns");
        if let Some(first) = columns.first() {
            let f = first[0].field();
            for c in &columns {
                for e in c {
                    if e.field() != f {
                        return Err(PolyError::FieldMismatch(f, e.field()));
                    }
                }
            }
        }
        Ok(PolyMatrix { columns })
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn det3(&self) -> Option<Poly> {
        match self.columns.as_slice() {
            [a, b, c] => Some(det3(a, b, c)),
            _ => None,
        }
    }

    pub fn minors2x2(&self) -> Option<[Poly; 3]> {
        match self.columns.as_slice() {
            [a, b] => Some(minors2x2(a, b)),
            _ => None,
        }
    }
}
