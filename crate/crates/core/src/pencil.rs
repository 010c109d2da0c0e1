//! Pencils `(f^a, g^b)`: the canonical derivation `[∇f ∧ ∇g]·∇`, the base
//! locus, the scheme Z = V(∇f ∧ ∇g), singular members, and freeness of
//! unions of members.

use num_integer::Integer;
use thiserror::Error;

use crate::derivation::{free_with_exponents, is_reduced, Derivation, DerivationError, FreenessStatus};
use crate::eigenscheme::{contains_curve, eigenscheme_of, freeness_vs_containment, Containment, Eigenscheme, EigenschemeError, EquivalenceReport};
use crate::gradedlin::{Finiteness, GradedError, GradedIdeal, HilbertProfile};
use crate::poly::{wedge, Poly};
use crate::scalar::{FieldId, Scalar};
use crate::singular::{projective_points, SingularError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PencilError {
    #[error("pencil generators must be homogeneous of positive degree")]
    BadGenerator,
    #[error("pencil generator {0} is not reduced")]
    NotReduced(&'static str),
    #[error("f and g share a common factor")]
    CommonFactor,
    #[error("member parameter {0} is repeated")]
    DuplicateMember(String),
    #[error("(0:0) is not a pencil parameter")]
    ZeroParameter,
    #[error("F·G is not annihilated by the canonical derivation")]
    NotAMemberProduct,
    #[error("F does not divide the member union")]
    NotADivisor,
    #[error("the union has k = {0} < 2 members")]
    TooFewMembers(usize),
    #[error("deg F = {degree} does not exceed n + m − 1 = {bound}")]
    DegreeTooSmall { degree: u32, bound: u32 },
    #[error(
        "V(∇f ∧ ∇g) is not finite; replacing f by a combination λf + μg only rescales ∇f ∧ ∇g, \
         and the reduced-factor replacement needs a factorization, which is not available"
    )]
    InfiniteZ,
    #[error("a Hilbert profile did not stabilize within the bound")]
    InconclusiveProfile,
    #[error("the member ({0}) is singular outside the base locus")]
    MemberSingularOutsideB(String),
    #[error("the union with the added member is not reduced")]
    UnionNotReduced,
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Eigenscheme(#[from] EigenschemeError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Singular(#[from] SingularError),
}

/// Projective parameter `(λ:μ)` normalized to `(1:μ/λ)` or `(0:1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub lambda: Scalar,
    pub mu: Scalar,
}

impl Param {
    pub fn new(lambda: Scalar, mu: Scalar) -> Result<Param, PencilError> {
        if lambda.is_zero() {
            if mu.is_zero() {
                return Err(PencilError::ZeroParameter);
            }
            let field = mu.field();
            return Ok(Param {
                lambda: Scalar::zero(field),
                mu: Scalar::one(field),
            });
        }
        let inv = lambda.inv().unwrap();
        Ok(Param {
            mu: &mu * &inv,
            lambda: Scalar::one(lambda.field()),
        })
    }

    pub fn ints(field: FieldId, lambda: i64, mu: i64) -> Result<Param, PencilError> {
        Param::new(Scalar::from_i64(field, lambda), Scalar::from_i64(field, mu))
    }
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.lambda, self.mu)
    }
}

#[derive(Debug, Clone)]
pub struct Pencil {
    f: Poly,
    g: Poly,
    degrees: (u32, u32),
    powers: (u32, u32),
    canonical: Derivation,
}

/// `δ_{f,g}` with coefficients `∇f ∧ ∇g`.
pub fn canonical_derivation(f: &Poly, g: &Poly) -> Result<Derivation, PencilError> {
    for h in [f, g] {
        match h.homogeneous_degree() {
            Some(d) if d > 0 => {}
            _ => return Err(PencilError::BadGenerator),
        }
    }
    Ok(Derivation::new(wedge(&f.gradient(), &g.gradient()))?)
}

impl Pencil {
    pub fn new(f: Poly, g: Poly) -> Result<Pencil, PencilError> {
        let canonical = canonical_derivation(&f, &g).map_err(|e| match e {
            PencilError::Derivation(DerivationError::ZeroDerivation) => PencilError::CommonFactor,
            e => e,
        })?;
        let n = f.homogeneous_degree().unwrap();
        let m = g.homogeneous_degree().unwrap();
        if !is_reduced(&f)?.reduced {
            return Err(PencilError::NotReduced("f"));
        }
        if !is_reduced(&g)?.reduced {
            return Err(PencilError::NotReduced("g"));
        }
        let base = GradedIdeal::new(vec![f.clone(), g.clone()])?.hilbert_profile(None)?;
        match base.finiteness() {
            Finiteness::Finite(_) => {}
            Finiteness::PositiveDimensional => return Err(PencilError::CommonFactor),
            Finiteness::Inconclusive => return Err(PencilError::InconclusiveProfile),
        }
        let l = n.lcm(&m);
        Ok(Pencil {
            f,
            g,
            degrees: (n, m),
            powers: (l / n, l / m),
            canonical,
        })
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    pub fn field(&self) -> FieldId {
        self.f.field()
    }

    /// `(n, m)`.
    pub fn degrees(&self) -> (u32, u32) {
        self.degrees
    }

    /// `(a, b)` with `a·n = b·m = lcm(n, m)`.
    pub fn powers(&self) -> (u32, u32) {
        self.powers
    }

    pub fn canonical(&self) -> &Derivation {
        &self.canonical
    }

    /// `λ f^a + μ g^b`.
    pub fn member(&self, p: &Param) -> Poly {
        let (a, b) = self.powers;
        &self.f.pow(a).scale(&p.lambda) + &self.g.pow(b).scale(&p.mu)
    }

    /// `(n−1)² + (n−1)(m−1) + (m−1)²`.
    pub fn expected_z_length(&self) -> u64 {
        let (n, m) = (self.degrees.0 as u64 - 1, self.degrees.1 as u64 - 1);
        n * n + n * m + m * m
    }

    pub fn member_union(&self, params: &[Param]) -> Result<MemberSelection, PencilError> {
        for (i, p) in params.iter().enumerate() {
            if params[..i].contains(p) {
                return Err(PencilError::DuplicateMember(p.to_string()));
            }
        }
        let members: Vec<Poly> = params.iter().map(|p| self.member(p)).collect();
        let union = Poly::product(self.field(), &members);
        assert!(
            self.canonical.apply(&union)?.is_zero(),
            "the canonical derivation fails to annihilate a member union"
        );
        Ok(MemberSelection {
            params: params.to_vec(),
            members,
            union,
        })
    }

    /// Tangency cofactors of the canonical derivation on a split `F·G` of a
    /// member union.
    pub fn split_tangency(&self, f: &Poly, g: &Poly) -> Result<(Poly, Poly), PencilError> {
        if !self.canonical.apply(&(f * g))?.is_zero() {
            return Err(PencilError::NotAMemberProduct);
        }
        if !g.is_constant() && !f.is_constant() {
            let p = GradedIdeal::new(vec![f.clone(), g.clone()])?.hilbert_profile(None)?;
            if !matches!(p.finiteness(), Finiteness::Finite(_)) {
                return Err(PencilError::CommonFactor);
            }
        }
        let kf = self.canonical.tangency(f)?.ok_or(PencilError::NotAMemberProduct)?;
        let kg = self.canonical.tangency(g)?.ok_or(PencilError::NotAMemberProduct)?;
        assert!((&(&kf * g) + &(&kg * f)).is_zero(), "split cofactors do not cancel");
        Ok((kf, kg))
    }

    pub fn analyze(&self) -> Result<PencilAnalysis, PencilError> {
        let b_ideal = GradedIdeal::new(vec![self.f.clone(), self.g.clone()])?;
        let z_gens: Vec<Poly> = self.canonical.coeffs().to_vec();
        let z_ideal = GradedIdeal::new(z_gens.clone())?;
        let (base, z) = rayon::join(|| b_ideal.hilbert_profile(None), || z_ideal.hilbert_profile(None));
        let (base, z) = (base?, z?);
        match z.finiteness() {
            Finiteness::Finite(_) => {}
            Finiteness::PositiveDimensional => return Err(PencilError::InfiniteZ),
            Finiteness::Inconclusive => return Err(PencilError::InconclusiveProfile),
        }
        let gamma = eigenscheme_of(&self.canonical)?;
        let decomposition = match (base.length(), z.length(), gamma.length()) {
            (Some(b), Some(zl), Some(g)) => Some(g == b + zl),
            _ => None,
        };
        let located = projective_points(&z_gens)?;
        let (a, b) = self.powers;
        let field = self.field();
        let mut singular_members = Vec::new();
        for (p, _) in &located.points {
            let fp = self.f.evaluate(p).unwrap();
            let gp = self.g.evaluate(p).unwrap();
            if fp.is_zero() || gp.is_zero() {
                continue;
            }
            let df = self.f.gradient().map(|h| h.evaluate(p).unwrap());
            let dg = self.g.gradient().map(|h| h.evaluate(p).unwrap());
            let ca = &Scalar::from_i64(field, a as i64) * &fp.pow(a as u64 - 1);
            let cb = &Scalar::from_i64(field, b as i64) * &gp.pow(b as u64 - 1);
            // λ·ca·∇f(p) + μ·cb·∇g(p) = 0 with ∇f(p) ∥ ∇g(p)
            let param = match (0..3).find(|&k| !df[k].is_zero()) {
                Some(k) => Param::new(&cb * &dg[k], -(&ca * &df[k])).ok(),
                None => (0..3).find(|&k| !dg[k].is_zero()).map(|_| Param::ints(field, 1, 0).unwrap()),
            };
            if let Some(q) = &param {
                let member = self.member(q);
                assert!(
                    member.gradient().iter().all(|h| h.evaluate(p).unwrap().is_zero()),
                    "located member is smooth at the point"
                );
            }
            singular_members.push(SingularMember { point: p.clone(), param });
        }
        Ok(PencilAnalysis {
            base,
            z,
            gamma,
            decomposition,
            singular_members,
            unlocated: located.residual_dimension,
            residual_degrees: located.residual_degrees,
        })
    }

    /// Both sides of the freeness/containment equivalence for a divisor F of
    /// a union of k ≥ 2 members.
    pub fn union_freeness_check(&self, sel: &MemberSelection, f: &Poly) -> Result<EquivalenceReport, PencilError> {
        self.check_divisor(sel, f)?;
        Ok(freeness_vs_containment(&self.canonical, f)?)
    }

    fn check_divisor(&self, sel: &MemberSelection, f: &Poly) -> Result<u32, PencilError> {
        if sel.params.len() < 2 {
            return Err(PencilError::TooFewMembers(sel.params.len()));
        }
        if sel.union.div_exact(f).is_none() {
            return Err(PencilError::NotADivisor);
        }
        let big_n = f.require_homogeneous().map_err(DerivationError::from)?;
        let (n, m) = self.degrees;
        if big_n <= n + m - 1 {
            return Err(PencilError::DegreeTooSmall { degree: big_n, bound: n + m - 1 });
        }
        Ok(big_n)
    }

    /// Adds a member smooth outside the base locus to a free divisor F of a
    /// member union and checks the predicted exponents both ways.
    pub fn add_smooth_member(
        &self,
        sel: &MemberSelection,
        f: &Poly,
        param: &Param,
        analysis: &PencilAnalysis,
    ) -> Result<AddMemberReport, PencilError> {
        let big_n = self.check_divisor(sel, f)?;
        if analysis.singular_members.iter().any(|s| s.param.as_ref() == Some(param)) {
            return Err(PencilError::MemberSingularOutsideB(param.to_string()));
        }
        let before = self.union_freeness_check(sel, f)?;
        let member = self.member(param);
        let union = f * &member;
        if !is_reduced(&union)?.reduced {
            return Err(PencilError::UnionNotReduced);
        }
        let (n, m) = self.degrees;
        let an = self.powers.0 * n;
        let exponents = (n + m - 2, big_n + an - n - m + 1);
        let containment = contains_curve(&analysis.gamma, &union)?;
        let free = match free_with_exponents(&union, exponents.0, exponents.1)? {
            FreenessStatus::Free(c) => Some(c),
            _ => None,
        };
        Ok(AddMemberReport {
            base_free: before.free_side(),
            exponents,
            union,
            containment,
            free,
            smoothness_fully_checked: analysis.unlocated == 0,
        })
    }
}

#[derive(Debug, Clone)]
pub struct MemberSelection {
    pub params: Vec<Param>,
    pub members: Vec<Poly>,
    pub union: Poly,
}

#[derive(Debug, Clone)]
pub struct SingularMember {
    pub point: [Scalar; 3],
    /// `None` when every member is singular at the point.
    pub param: Option<Param>,
}

#[derive(Debug, Clone)]
pub struct PencilAnalysis {
    pub base: HilbertProfile,
    pub z: HilbertProfile,
    pub gamma: Eigenscheme,
    /// `deg Γ = deg B + deg Z`, when all three are finite.
    pub decomposition: Option<bool>,
    pub singular_members: Vec<SingularMember>,
    /// Length of Z carried by points that are not rational over the field.
    pub unlocated: usize,
    pub residual_degrees: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct AddMemberReport {
    pub base_free: bool,
    pub exponents: (u32, u32),
    pub union: Poly,
    pub containment: Containment,
    pub free: Option<crate::derivation::FreenessCertificate>,
    /// False when part of Z is not rational and smoothness of the member
    /// outside B was only checked at the located points.
    pub smoothness_fully_checked: bool,
}

impl AddMemberReport {
    pub fn agree(&self) -> bool {
        self.containment.is_contained() == self.free.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(FieldId::Q, s).unwrap()
    }

    #[test]
    fn canonical_derivations() {
        let d = canonical_derivation(&p("x^3+y^3+z^3"), &p("x*y*z")).unwrap();
        assert_eq!(d.degree(), 4);
        let d = canonical_derivation(&p("x^2+y^2+z^2"), &p("x*y*z")).unwrap();
        assert_eq!(d.degree(), 3);
        assert!(d.apply(&p("x^2+y^2+z^2")).unwrap().is_zero());
        assert!(d.apply(&p("x*y*z")).unwrap().is_zero());
    }

    #[test]
    fn sextic_pencil() {
        let q = FieldId::Q;
        let pen = Pencil::new(p("x^2+y^2+z^2"), p("x*y*z")).unwrap();
        assert_eq!(pen.powers(), (3, 2));
        let an = pen.analyze().unwrap();
        assert_eq!(an.z.length(), Some(7));
        assert_eq!(an.base.length(), Some(6));
        assert_eq!(an.gamma.length(), Some(13));
        assert_eq!(an.decomposition, Some(true));
        assert_eq!(an.singular_members.len(), 4);
        let target = Param::ints(q, 1, -27).unwrap();
        assert!(an.singular_members.iter().all(|s| s.param.as_ref() == Some(&target)));
    }

    #[test]
    fn conic_pencils() {
        let pen = Pencil::new(p("x*z"), p("z^2-x*y")).unwrap();
        let an = pen.analyze().unwrap();
        assert_eq!(an.gamma.length(), Some(7));
        let q = FieldId::Q;
        let sel = pen
            .member_union(&[Param::ints(q, 1, 0).unwrap(), Param::ints(q, 0, 1).unwrap()])
            .unwrap();
        let r = pen.union_freeness_check(&sel, &sel.union).unwrap();
        assert!(r.agree() && r.free_side());
        let (kf, kg) = pen.split_tangency(pen.f(), pen.g()).unwrap();
        assert!(kf.is_zero() && kg.is_zero());
        assert!(matches!(
            pen.member_union(&[Param::ints(q, 2, 2).unwrap(), Param::ints(q, 1, 1).unwrap()]),
            Err(PencilError::DuplicateMember(_))
        ));
    }

    #[test]
    fn common_factor_refused() {
        assert!(matches!(
            Pencil::new(p("x*y"), p("x*z")),
            Err(PencilError::CommonFactor)
        ));
    }
}
