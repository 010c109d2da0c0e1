//! Derivations of R, logarithmic derivations of a curve, and the freeness
//! decision through Saito's criterion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gradedlin::{graded_kernel, graded_kernel_is_trivial, Finiteness, GradedError, GradedIdeal, HilbertProfile};
use crate::poly::{det3, Poly, PolyError};
use crate::scalar::{FieldId, Scalar};
use crate::text::{format_poly, parse_poly, ParseError};
use crate::upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("all three coefficients are zero")]
    ZeroDerivation,
    #[error("coefficients must be homogeneous of one common degree")]
    MixedDegrees,
    #[error("polynomials live over different fields ({0} vs {1})")]
    FieldMismatch(FieldId, FieldId),
    #[error("input polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("the derivation is not tangent to the curve")]
    NotTangent,
    #[error("characteristic {p} divides or does not exceed the degree {d}")]
    CharacteristicTooSmall { p: u64, d: u32 },
    #[error("degrees {a} + {b} do not add up to deg f - 1 = {target}")]
    DegreeMismatch { a: u32, b: u32, target: u32 },
    #[error("the curve is not reduced")]
    NotReduced,
    #[error("reducedness could not be decided within the Hilbert bound")]
    InconclusiveProfile,
    #[error("det(δ_E, θ₁, θ₂) is not a scalar multiple of f")]
    SaitoIdentityFailed,
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl From<PolyError> for DerivationError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::FieldMismatch(a, b) => DerivationError::FieldMismatch(a, b),
            _ => DerivationError::NonHomogeneous,
        }
    }
}

/// `P₁∂x + P₂∂y + P₃∂z` with homogeneous coefficients of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    coeffs: [Poly; 3],
    degree: u32,
}

impl Derivation {
    pub fn new(coeffs: [Poly; 3]) -> Result<Derivation, DerivationError> {
        let field = coeffs[0].field();
        let mut degree = None;
        for c in &coeffs {
            if c.field() != field {
                return Err(DerivationError::FieldMismatch(field, c.field()));
            }
            if c.is_zero() {
                continue;
            }
            let d = c.homogeneous_degree().ok_or(DerivationError::MixedDegrees)?;
            if degree.is_some_and(|e| e != d) {
                return Err(DerivationError::MixedDegrees);
            }
            degree = Some(d);
        }
        let degree = degree.ok_or(DerivationError::ZeroDerivation)?;
        Ok(Derivation { coeffs, degree })
    }

    /// The Euler derivation `x∂x + y∂y + z∂z`.
    pub fn euler(field: FieldId) -> Derivation {
        Derivation {
            coeffs: Poly::coords(field),
            degree: 1,
        }
    }

    pub fn coeffs(&self) -> &[Poly; 3] {
        &self.coeffs
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> FieldId {
        self.coeffs[0].field()
    }

    /// `P₁·∂x f + P₂·∂y f + P₃·∂z f`.
    pub fn apply(&self, f: &Poly) -> Result<Poly, DerivationError> {
        if f.field() != self.field() {
            return Err(DerivationError::FieldMismatch(self.field(), f.field()));
        }
        let g = f.gradient();
        Ok((0..3).fold(Poly::zero(f.field()), |acc, k| &acc + &(&self.coeffs[k] * &g[k])))
    }

    /// The cofactor `K` with `δ(f) = K·f`, if it exists.
    pub fn tangency(&self, f: &Poly) -> Result<Option<Poly>, DerivationError> {
        let d = self.apply(f)?;
        Ok(d.div_exact(f))
    }

    pub fn scale(&self, c: &Scalar) -> Option<Derivation> {
        Derivation::new(self.coeffs.clone().map(|p| p.scale(c))).ok()
    }

    pub fn mul_poly(&self, h: &Poly) -> Option<Derivation> {
        Derivation::new(self.coeffs.clone().map(|p| &p * h)).ok()
    }

    pub fn evaluate(&self, pt: &[Scalar; 3]) -> Result<[Scalar; 3], DerivationError> {
        Ok([
            self.coeffs[0].evaluate(pt)?,
            self.coeffs[1].evaluate(pt)?,
            self.coeffs[2].evaluate(pt)?,
        ])
    }

    pub fn to_text(&self) -> [String; 3] {
        self.coeffs.clone().map(|p| format_poly(&p))
    }

    pub fn parse(field: FieldId, text: &[String; 3]) -> Result<Derivation, DerivationError> {
        Derivation::new([
            parse_poly(field, &text[0])?,
            parse_poly(field, &text[1])?,
            parse_poly(field, &text[2])?,
        ])
    }
}

impl std::fmt::Display for Derivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({})∂x + ({})∂y + ({})∂z",
            self.coeffs[0], self.coeffs[1], self.coeffs[2]
        )
    }
}

/// Result of splitting off the Euler component of a tangent derivation.
#[derive(Debug, Clone)]
pub struct EulerSplit {
    /// `δ − (K/d)·δ_E`, annihilating f.
    pub residual: [Poly; 3],
    pub cofactor: Poly,
}

/// Writes a tangent derivation as an element of Der₀(f) plus a multiple of δ_E.
pub fn euler_split(delta: &Derivation, f: &Poly) -> Result<EulerSplit, DerivationError> {
    let d = f.require_homogeneous()?;
    check_characteristic(f.field(), d)?;
    let k = delta.tangency(f)?.ok_or(DerivationError::NotTangent)?;
    let over_d = Scalar::from_i64(f.field(), d as i64).inv().expect("char does not divide d");
    let kd = k.scale(&over_d);
    let xyz = Poly::coords(f.field());
    let residual: [Poly; 3] = [0, 1, 2].map(|i| &delta.coeffs[i] - &(&kd * &xyz[i]));
    let check = (0..3).fold(Poly::zero(f.field()), |acc, i| &acc + &(&residual[i] * &f.partial(crate::Var::ALL[i])));
    assert!(check.is_zero(), "Euler split left a nonzero residual action");
    Ok(EulerSplit { residual, cofactor: k })
}

fn check_characteristic(field: FieldId, d: u32) -> Result<(), DerivationError> {
    let p = field.characteristic();
    if p != 0 && p <= d as u64 {
        return Err(DerivationError::CharacteristicTooSmall { p, d });
    }
    Ok(())
}

/// Basis of Der₀(f)_e: triples of degree-e forms annihilating f.
pub fn der0_basis(f: &Poly, e: u32) -> Result<Vec<Derivation>, DerivationError> {
    f.require_homogeneous()?;
    let grad = f.gradient();
    let kernel = graded_kernel(&grad, e)?;
    Ok(kernel
        .into_iter()
        .map(|v| Derivation::new([v[0].clone(), v[1].clone(), v[2].clone()]).expect("nonzero kernel vector"))
        .collect())
}

pub fn der0_dimension(f: &Poly, e: u32) -> Result<usize, DerivationError> {
    Ok(der0_basis(f, e)?.len())
}

fn der0_is_zero(f: &Poly, e: u32) -> Result<bool, DerivationError> {
    Ok(graded_kernel_is_trivial(&f.gradient(), e)?)
}

/// Least e ≤ deg f − 1 with Der₀(f)_e ≠ 0.
pub fn mdr(f: &Poly) -> Result<Option<u32>, DerivationError> {
    let d = f.require_homogeneous()?;
    for e in 0..d {
        if !der0_is_zero(f, e)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// A point with small integer coordinates where `f` does not vanish.
fn evaluation_point(f: &Poly) -> [Scalar; 3] {
    let field = f.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a17);
    let mut candidates: Vec<[i64; 3]> = vec![[1, 2, 3], [2, 3, 5], [3, 5, 7]];
    for _ in 0..64 {
        candidates.push([rng.gen_range(-40..=40), rng.gen_range(-40..=40), rng.gen_range(-40..=40)]);
    }
    for c in candidates {
        let pt = c.map(|v| Scalar::from_i64(field, v));
        if !f.evaluate(&pt).expect("same field").is_zero() {
            return pt;
        }
    }
    panic!("no evaluation point found for a nonzero form")
}

fn det3_scalar(a: &[Scalar; 3], b: &[Scalar; 3], c: &[Scalar; 3]) -> Scalar {
    let minor = |i: usize, j: usize| &(&b[i] * &c[j]) - &(&b[j] * &c[i]);
    &(&(&a[0] * &minor(1, 2)) + &(&a[1] * &minor(2, 0))) + &(&a[2] * &minor(0, 1))
}

/// Scalar c with det(δ_E, θ₁, θ₂) = c·f, possibly zero.
pub fn saito_scalar(f: &Poly, t1: &Derivation, t2: &Derivation) -> Result<Scalar, DerivationError> {
    let d = f.require_homogeneous()?;
    if t1.degree() + t2.degree() + 1 != d {
        return Err(DerivationError::DegreeMismatch {
            a: t1.degree(),
            b: t2.degree(),
            target: d.saturating_sub(1),
        });
    }
    for t in [t1, t2] {
        if t.tangency(f)?.is_none() {
            return Err(DerivationError::NotTangent);
        }
    }
    let det = det3(&Poly::coords(f.field()), t1.coeffs(), t2.coeffs());
    let (m, lf) = f.leading_term().expect("nonzero f");
    let c = &det.coeff(m) * &lf.inv().expect("nonzero");
    if det != f.scale(&c) {
        return Err(DerivationError::SaitoIdentityFailed);
    }
    Ok(c)
}

/// A Saito certificate for a free curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessCertificate {
    pub exponents: (u32, u32),
    pub theta1: Derivation,
    pub theta2: Derivation,
    pub c: Scalar,
    pub cofactors: (Poly, Poly),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub field: String,
    pub curve: String,
    pub exponents: (u32, u32),
    pub theta1: [String; 3],
    pub theta2: [String; 3],
    pub c: String,
    pub cofactors: [String; 2],
}

/// Which identity of a certificate failed to hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("could not read the certificate: {0}")]
    Malformed(String),
    #[error("exponents {0} + {1} + 1 differ from deg f = {2}")]
    ExponentSum(u32, u32, u32),
    #[error("θ{0} has degree {1}, expected {2}")]
    ThetaDegree(u8, u32, u32),
    #[error("θ{0}(f) ≠ K{0}·f")]
    Tangency(u8),
    #[error("c is zero")]
    ZeroScalar,
    #[error("det(δ_E, θ₁, θ₂) ≠ c·f")]
    Determinant,
}

impl FreenessCertificate {
    /// Re-checks every identity by expansion.
    pub fn verify(&self, f: &Poly) -> Result<(), CertificateError> {
        let d = f
            .homogeneous_degree()
            .ok_or_else(|| CertificateError::Malformed("curve is not homogeneous".into()))?;
        let (a, b) = self.exponents;
        if a + b + 1 != d {
            return Err(CertificateError::ExponentSum(a, b, d));
        }
        for (k, t, e) in [(1u8, &self.theta1, a), (2u8, &self.theta2, b)] {
            if t.degree() != e {
                return Err(CertificateError::ThetaDegree(k, t.degree(), e));
            }
        }
        let checks = [(1u8, &self.theta1, &self.cofactors.0), (2u8, &self.theta2, &self.cofactors.1)];
        for (k, t, kf) in checks {
            let lhs = t.apply(f).map_err(|e| CertificateError::Malformed(e.to_string()))?;
            if lhs != kf * f {
                return Err(CertificateError::Tangency(k));
            }
        }
        if self.c.is_zero() {
            return Err(CertificateError::ZeroScalar);
        }
        let det = det3(&Poly::coords(f.field()), self.theta1.coeffs(), self.theta2.coeffs());
        if det != f.scale(&self.c) {
            return Err(CertificateError::Determinant);
        }
        Ok(())
    }

    pub fn to_record(&self, f: &Poly) -> CertificateRecord {
        CertificateRecord {
            field: f.field().to_string(),
            curve: format_poly(f),
            exponents: self.exponents,
            theta1: self.theta1.to_text(),
            theta2: self.theta2.to_text(),
            c: self.c.to_string(),
            cofactors: [format_poly(&self.cofactors.0), format_poly(&self.cofactors.1)],
        }
    }
}

impl CertificateRecord {
    /// Parses the record back and verifies it; returns the curve on success.
    pub fn verify(&self) -> Result<Poly, CertificateError> {
        let bad = |e: &dyn std::fmt::Display| CertificateError::Malformed(e.to_string());
        let field: FieldId = self.field.parse().map_err(|e| bad(&e))?;
        let f = parse_poly(field, &self.curve).map_err(|e| bad(&e))?;
        let t1 = Derivation::parse(field, &self.theta1).map_err(|e| bad(&e))?;
        let t2 = Derivation::parse(field, &self.theta2).map_err(|e| bad(&e))?;
        let c = parse_poly(field, &self.c).map_err(|e| bad(&e))?;
        if !c.is_constant() {
            return Err(CertificateError::Malformed("c is not a scalar".into()));
        }
        let c = c.coeff(&crate::Monomial::ONE);
        let k1 = parse_poly(field, &self.cofactors[0]).map_err(|e| bad(&e))?;
        let k2 = parse_poly(field, &self.cofactors[1]).map_err(|e| bad(&e))?;
        let cert = FreenessCertificate {
            exponents: self.exponents,
            theta1: t1,
            theta2: t2,
            c,
            cofactors: (k1, k2),
        };
        cert.verify(&f)?;
        Ok(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotFreeReason {
    /// Der₀(f) vanishes in every degree below deg f.
    NoDerivationBelowDegree,
    /// 2·mdr > deg f − 1, so no pair of exponents can sum to deg f − 1.
    MdrTooLarge { mdr: u32 },
    /// Every basis pair of Der₀(f)_a × Der₀(f)_b has zero Saito determinant.
    SaitoPairingVanishes { a: u32, b: u32, pairs: usize },
}

impl std::fmt::Display for NotFreeReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotFreeReason::NoDerivationBelowDegree => write!(f, "no derivation below degree d"),
            NotFreeReason::MdrTooLarge { mdr } => {
                write!(f, "mdr = {mdr} exceeds (d-1)/2; exponents must sum to d-1")
            }
            NotFreeReason::SaitoPairingVanishes { a, b, pairs } => write!(
                f,
                "Saito pairing identically zero on Der0_{a} x Der0_{b} ({pairs} basis pairs)"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreenessStatus {
    Free(FreenessCertificate),
    NotFree(NotFreeReason),
    /// Reducedness could not be settled within the Hilbert bound.
    Inconclusive(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessVerdict {
    pub status: FreenessStatus,
    pub mdr: Option<u32>,
}

impl FreenessVerdict {
    pub fn exponents(&self) -> Option<(u32, u32)> {
        match &self.status {
            FreenessStatus::Free(c) => Some(c.exponents),
            _ => None,
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self.status, FreenessStatus::Free(_))
    }
}

/// Decides freeness of a reduced curve through Saito's criterion.
pub fn decide_freeness(f: &Poly) -> Result<FreenessVerdict, DerivationError> {
    let d = f.require_homogeneous()?;
    check_characteristic(f.field(), d)?;
    match is_reduced(f) {
        Ok(r) if !r.reduced => return Err(DerivationError::NotReduced),
        Ok(_) => {}
        Err(DerivationError::InconclusiveProfile) => {
            return Ok(FreenessVerdict {
                status: FreenessStatus::Inconclusive("reducedness undecided within the Hilbert bound".into()),
                mdr: None,
            })
        }
        Err(e) => return Err(e),
    }
    decide_freeness_reduced(f)
}

/// As [`decide_freeness`], for input already known to be reduced.
pub fn decide_freeness_reduced(f: &Poly) -> Result<FreenessVerdict, DerivationError> {
    let d = f.require_homogeneous()?;
    check_characteristic(f.field(), d)?;
    let Some(a) = mdr(f)? else {
        return Ok(FreenessVerdict {
            status: FreenessStatus::NotFree(NotFreeReason::NoDerivationBelowDegree),
            mdr: None,
        });
    };
    if 2 * a > d - 1 {
        return Ok(FreenessVerdict {
            status: FreenessStatus::NotFree(NotFreeReason::MdrTooLarge { mdr: a }),
            mdr: Some(a),
        });
    }
    let status = saito_search(f, a, d - 1 - a)?;
    Ok(FreenessVerdict { status, mdr: Some(a) })
}

/// Checks whether f is free with the prescribed exponents (a, b).
pub fn free_with_exponents(f: &Poly, a: u32, b: u32) -> Result<FreenessStatus, DerivationError> {
    let d = f.require_homogeneous()?;
    check_characteristic(f.field(), d)?;
    if a + b + 1 != d {
        return Err(DerivationError::DegreeMismatch { a, b, target: d - 1 });
    }
    let (a, b) = (a.min(b), a.max(b));
    saito_search(f, a, b)
}

fn saito_search(f: &Poly, a: u32, b: u32) -> Result<FreenessStatus, DerivationError> {
    let first = der0_basis(f, a)?;
    let second = if a == b { first.clone() } else { der0_basis(f, b)? };
    let pt = evaluation_point(f);
    let fp = f.evaluate(&pt)?;
    let xyz = pt.clone();
    let firsts: Vec<[Scalar; 3]> = first.iter().map(|t| t.evaluate(&pt)).collect::<Result<_, _>>()?;
    let seconds: Vec<[Scalar; 3]> = second.iter().map(|t| t.evaluate(&pt)).collect::<Result<_, _>>()?;
    // Evaluation commutes with the determinant, so c = D(pt)/f(pt) exactly.
    for (i, u) in firsts.iter().enumerate() {
        for (j, v) in seconds.iter().enumerate() {
            let dp = det3_scalar(&xyz, u, v);
            if dp.is_zero() {
                continue;
            }
            let c = &dp * &fp.inv().expect("f(pt) ≠ 0");
            let cert = FreenessCertificate {
                exponents: (a, b),
                theta1: first[i].clone(),
                theta2: second[j].clone(),
                c,
                cofactors: (Poly::zero(f.field()), Poly::zero(f.field())),
            };
            cert.verify(f).map_err(|_| DerivationError::SaitoIdentityFailed)?;
            return Ok(FreenessStatus::Free(cert));
        }
    }
    Ok(FreenessStatus::NotFree(NotFreeReason::SaitoPairingVanishes {
        a,
        b,
        pairs: first.len() * second.len(),
    }))
}

/// How reducedness was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReducedMethod {
    /// The restriction to a line is a squarefree binary form of degree d.
    LineRestriction,
    /// Hilbert profile of ⟨f, f_x, f_y, f_z⟩.
    SingularLocusProfile,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedCheck {
    pub reduced: bool,
    pub method: ReducedMethod,
    pub profile: Option<HilbertProfile>,
}

/// Restriction of f to the line through `p` and `q`, as a polynomial in t
/// for the point `p + t·q`.
fn restrict_to_line(f: &Poly, p: &[Scalar; 3], q: &[Scalar; 3]) -> UPoly {
    let field = f.field();
    let t = Poly::x(field);
    let images = [0, 1, 2].map(|k| &Poly::constant(p[k].clone()) + &t.scale(&q[k]));
    UPoly::from_poly_in_x(&f.compose(&images))
}

/// Squarefreeness certificate from a line restriction.
/// Sufficient test for reducedness: some line section is squarefree of full
/// degree.
pub fn reduced_by_lines(f: &Poly) -> bool {
    match f.total_degree() {
        Some(d) => d <= 1 || line_section_squarefree(f, d),
        None => false,
    }
}

fn line_section_squarefree(f: &Poly, d: u32) -> bool {
    let field = f.field();
    let p_char = field.characteristic();
    if p_char != 0 && p_char <= d as u64 {
        return false;
    }
    // over ℚ a squarefree section mod p of full degree lifts: the
    // discriminant of the rational section is nonzero
    let images: Vec<Poly> = match field {
        FieldId::Q => crate::linalg::multimodular::prime_sequence()
            .take(3)
            .filter_map(|prime| f.change_field(FieldId::Fp(prime)).ok())
            .collect(),
        _ => vec![f.clone()],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x11ae);
    for _ in 0..4 {
        let pick = [0; 6].map(|_| rng.gen_range(-50i64..=50));
        for image in &images {
            let k = image.field();
            let p = [0, 1, 2].map(|i| Scalar::from_i64(k, pick[i]));
            let q = [3, 4, 5].map(|i| Scalar::from_i64(k, pick[i]));
            let h = restrict_to_line(image, &p, &q);
            if h.degree() == Some(d as usize) && h.is_squarefree() {
                return true;
            }
        }
    }
    false
}

/// Decides whether the curve has no repeated component.
pub fn is_reduced(f: &Poly) -> Result<ReducedCheck, DerivationError> {
    let d = f.require_homogeneous()?;
    if d <= 1 || line_section_squarefree(f, d) {
        return Ok(ReducedCheck {
            reduced: true,
            method: ReducedMethod::LineRestriction,
            profile: None,
        });
    }
    let mut gens = vec![f.clone()];
    gens.extend(f.gradient());
    let ideal = GradedIdeal::new(gens)?;
    let profile = ideal.hilbert_profile(None)?;
    let reduced = match profile.finiteness() {
        Finiteness::Finite(_) => true,
        Finiteness::PositiveDimensional => false,
        Finiteness::Inconclusive => return Err(DerivationError::InconclusiveProfile),
    };
    Ok(ReducedCheck {
        reduced,
        method: ReducedMethod::SingularLocusProfile,
        profile: Some(profile),
    })
}

/// Expected dim Der₀(f)_e for a free curve with exponents (a, b).
pub fn free_der0_dimension(a: u32, b: u32, e: u32) -> u64 {
    let e = e as i64;
    crate::gradedlin::dim_r(e - a as i64) + crate::gradedlin::dim_r(e - b as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(FieldId::Q, s).unwrap()
    }

    fn der(a: &str, b: &str, c: &str) -> Derivation {
        Derivation::new([p(a), p(b), p(c)]).unwrap()
    }

    #[test]
    fn application() {
        let f = p("x^3 + y*z^2 - 2*x*y*z");
        assert_eq!(Derivation::euler(FieldId::Q).apply(&f).unwrap(), f.scale(&FieldId::Q.int(3)));
        assert!(der("x", "-y", "0").apply(&p("x*y")).unwrap().is_zero());
        let mu = der("x^4", "y^4", "z^4");
        assert_eq!(mu.apply(&p("x^3-y^3")).unwrap(), p("3*(x^3+y^3)*(x^3-y^3)"));
        assert_eq!(mu.tangency(&p("x")).unwrap(), Some(p("x^3")));
    }

    #[test]
    fn tangency_cofactors() {
        let f = p("x*y*z*(x-y)");
        assert_eq!(Derivation::euler(FieldId::Q).tangency(&f).unwrap(), Some(p("4")));
        assert_eq!(der("y", "0", "0").tangency(&p("x*y")).unwrap(), None);
    }

    #[test]
    fn euler_split_examples() {
        let f = p("x*y*z");
        let q = FieldId::Q;
        let e = Derivation::euler(q);
        let s = euler_split(&e, &f).unwrap();
        assert!(s.residual.iter().all(Poly::is_zero));
        assert_eq!(s.cofactor, p("3"));
        let delta = der("2*x", "0", "z");
        let s = euler_split(&delta, &f).unwrap();
        assert_eq!(s.residual, [p("x"), p("-y"), p("0")]);
        assert_eq!(s.cofactor, p("3"));
        let inside = der("x", "-y", "0");
        let s = euler_split(&inside, &f).unwrap();
        assert_eq!(s.residual, [p("x"), p("-y"), p("0")]);
        assert!(s.cofactor.is_zero());
        let f5 = FieldId::fp(3).unwrap();
        let g = parse_poly(f5, "x*y*z").unwrap();
        assert!(matches!(
            euler_split(&Derivation::euler(f5), &g),
            Err(DerivationError::CharacteristicTooSmall { .. })
        ));
    }

    #[test]
    fn der0_pieces_and_mdr() {
        assert_eq!(der0_dimension(&p("x*y*z"), 1).unwrap(), 2);
        assert_eq!(der0_dimension(&p("x^2+y^2+z^2"), 0).unwrap(), 0);
        let ceva = p("x*y*z*(x-y)*(x-z)*(y-z)");
        assert_eq!(der0_dimension(&ceva, 2).unwrap(), 1);
        assert_eq!(mdr(&p("x*y*z")).unwrap(), Some(1));
        assert_eq!(mdr(&p("x^2+y^2+z^2")).unwrap(), Some(1));
        assert_eq!(mdr(&ceva).unwrap(), Some(2));
    }

    #[test]
    fn saito_scalars() {
        let f = p("x*y*z");
        let t1 = der("x", "-y", "0");
        let t2 = der("0", "y", "-z");
        assert_eq!(saito_scalar(&f, &t1, &t2).unwrap(), FieldId::Q.int(3));
        let t3 = der("2*x", "-2*y", "0");
        assert!(saito_scalar(&f, &t1, &t3).unwrap().is_zero());
    }

    #[test]
    fn freeness_decisions() {
        let ceva = p("x*y*z*(x-y)*(x-z)*(y-z)");
        let v = decide_freeness(&ceva).unwrap();
        assert_eq!(v.exponents(), Some((2, 3)));
        let conic = decide_freeness(&p("x^2+y^2+z^2")).unwrap();
        assert!(!conic.is_free());
        assert_eq!(conic.mdr, Some(1));
        assert!(matches!(decide_freeness(&p("x^2*y")), Err(DerivationError::NotReduced)));
    }

    #[test]
    fn reducedness() {
        assert!(!is_reduced(&p("x^2*y")).unwrap().reduced);
        assert!(is_reduced(&p("x*y*z")).unwrap().reduced);
        assert!(is_reduced(&p("(x^2+y^2+z^2)*(x^2+y^2+2*z^2)")).unwrap().reduced);
    }

    #[test]
    fn certificate_records_round_trip() {
        let f = p("x*y*z*(x-y)*(x-z)*(y-z)");
        let FreenessStatus::Free(cert) = decide_freeness(&f).unwrap().status else {
            panic!("Ceva is free")
        };
        let rec = cert.to_record(&f);
        assert_eq!(rec.verify().unwrap(), f);
        let mut bad = rec.clone();
        bad.c = format!("{}+1", bad.c);
        assert!(matches!(bad.verify(), Err(CertificateError::Determinant)));
    }
}
