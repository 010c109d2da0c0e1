//! Eigenschemes of derivations: the scheme cut out by the 2×2 minors of
//! `[(x,y,z) | (P₁,P₂,P₃)]`, its length, and curves through it.

use thiserror::Error;

use crate::derivation::{free_with_exponents, Derivation, DerivationError, FreenessCertificate, FreenessStatus};
use crate::gradedlin::{dim_r, Finiteness, GradedError, GradedIdeal, HilbertProfile, Membership};
use crate::poly::{det3, minors2x2, Poly};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EigenschemeError {
    #[error("the eigenscheme is not finite ({0:?})")]
    NotFinite(Finiteness),
    #[error("curve degree {degree} is below deg δ + 1 = {min}")]
    DegreeTooSmall { degree: u32, min: u32 },
    #[error("the derivation is not tangent to the curve")]
    TangencyViolated,
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

#[derive(Debug, Clone)]
pub struct Eigenscheme {
    source: Derivation,
    minors: [Poly; 3],
    ideal: Option<GradedIdeal>,
    profile: HilbertProfile,
}

impl Eigenscheme {
    pub fn source(&self) -> &Derivation {
        &self.source
    }

    /// `(R₁,R₂,R₃) = (x,y,z) ∧ (P₁,P₂,P₃)`.
    pub fn minors(&self) -> &[Poly; 3] {
        &self.minors
    }

    /// The ideal of the nonzero minors; `None` when all minors vanish.
    pub fn ideal(&self) -> Option<&GradedIdeal> {
        self.ideal.as_ref()
    }

    pub fn profile(&self) -> &HilbertProfile {
        &self.profile
    }

    pub fn finiteness(&self) -> Finiteness {
        self.profile.finiteness()
    }

    pub fn length(&self) -> Option<u64> {
        self.profile.length()
    }

    /// `1 + n + n²` for a derivation of degree n.
    pub fn expected_length(&self) -> u64 {
        let n = self.source.degree() as u64;
        1 + n + n * n
    }

    pub fn contains_curve(&self, f: &Poly) -> Result<Containment, EigenschemeError> {
        contains_curve(self, f)
    }
}

pub fn eigenscheme_of(delta: &Derivation) -> Result<Eigenscheme, EigenschemeError> {
    eigenscheme_with_bound(delta, None)
}

/// As [`eigenscheme_of`], with an explicit Hilbert-profile bound.
pub fn eigenscheme_with_bound(delta: &Derivation, t_max: Option<u32>) -> Result<Eigenscheme, EigenschemeError> {
    let field = delta.field();
    let minors = minors2x2(&Poly::coords(field), delta.coeffs());
    let (ideal, profile) = if minors.iter().all(Poly::is_zero) {
        let t = t_max.unwrap_or(3 * (delta.degree() + 1) + 3).max(3);
        let values = (0..=t).map(|k| dim_r(k as i64)).collect();
        (None, HilbertProfile::from_values(values))
    } else {
        let ideal = GradedIdeal::new(minors.to_vec())?;
        let profile = ideal.hilbert_profile(t_max)?;
        (Some(ideal), profile)
    };
    Ok(Eigenscheme {
        source: delta.clone(),
        minors,
        ideal,
        profile,
    })
}

/// `det[(x,y,z) | P | Q] = c·F`, equivalently `Σ QᵢRᵢ = c·F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentCertificate {
    pub curve: Poly,
    pub q: [Poly; 3],
    pub c: Scalar,
}

impl ContainmentCertificate {
    /// Re-expands the determinant identity.
    pub fn verify(&self, delta: &Derivation) -> bool {
        let field = self.curve.field();
        let det = det3(&Poly::coords(field), delta.coeffs(), &self.q);
        !self.c.is_zero() && det == self.curve.scale(&self.c)
    }

    pub fn as_derivation(&self) -> Option<Derivation> {
        Derivation::new(self.q.clone()).ok()
    }
}

#[derive(Debug, Clone)]
pub enum Containment {
    Contained(ContainmentCertificate),
    /// F lies outside (I_Γ)_N; adding it to the piece raises the rank.
    NotContained { rank_piece: usize, rank_with_f: usize },
}

impl Containment {
    pub fn is_contained(&self) -> bool {
        matches!(self, Containment::Contained(_))
    }
}

pub fn contains_curve(gamma: &Eigenscheme, f: &Poly) -> Result<Containment, EigenschemeError> {
    let fin = gamma.finiteness();
    if !matches!(fin, Finiteness::Finite(_)) {
        return Err(EigenschemeError::NotFinite(fin));
    }
    let n = gamma.source.degree();
    let big_n = f.require_homogeneous().map_err(DerivationError::from)?;
    if big_n < n + 1 {
        return Err(EigenschemeError::DegreeTooSmall { degree: big_n, min: n + 1 });
    }
    let ideal = gamma.ideal.as_ref().expect("finite eigenschemes have generators");
    match ideal.membership_certificate(f)? {
        Membership::Member(cofactors) => {
            // the ideal dropped zero minors; put cofactors back in place
            let field = f.field();
            let mut it = cofactors.into_iter();
            let q = [0, 1, 2].map(|i| {
                if gamma.minors[i].is_zero() {
                    Poly::zero(field)
                } else {
                    it.next().expect("one cofactor per nonzero minor")
                }
            });
            let cert = ContainmentCertificate {
                curve: f.clone(),
                q,
                c: Scalar::one(field),
            };
            assert!(cert.verify(&gamma.source), "containment certificate fails expansion");
            Ok(Containment::Contained(cert))
        }
        Membership::NotMember { rank_piece, rank_with_f, .. } => {
            Ok(Containment::NotContained { rank_piece, rank_with_f })
        }
    }
}

/// Both sides of the equivalence between freeness with exponents
/// `(deg δ, d − deg δ − 1)` and containment of Γ_δ.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub exponents: (u32, u32),
    pub tangency_cofactor: Poly,
    pub free: Option<FreenessCertificate>,
    pub containment: Containment,
    pub length: u64,
}

impl EquivalenceReport {
    pub fn free_side(&self) -> bool {
        self.free.is_some()
    }

    pub fn containment_side(&self) -> bool {
        self.containment.is_contained()
    }

    pub fn agree(&self) -> bool {
        self.free_side() == self.containment_side()
    }
}

/// Evaluates both sides of the eigenscheme freeness criterion for `F ∈ K(δ)`.
pub fn freeness_vs_containment(delta: &Derivation, f: &Poly) -> Result<EquivalenceReport, EigenschemeError> {
    let cofactor = delta.tangency(f)?.ok_or(EigenschemeError::TangencyViolated)?;
    let d = f.require_homogeneous().map_err(DerivationError::from)?;
    let a = delta.degree();
    if d < a + 1 {
        return Err(EigenschemeError::DegreeTooSmall { degree: d, min: a + 1 });
    }
    let gamma = eigenscheme_of(delta)?;
    let length = match gamma.finiteness() {
        Finiteness::Finite(l) => l,
        other => return Err(EigenschemeError::NotFinite(other)),
    };
    let b = d - a - 1;
    let free = match free_with_exponents(f, a, b)? {
        FreenessStatus::Free(cert) => Some(cert),
        _ => None,
    };
    let containment = contains_curve(&gamma, f)?;
    Ok(EquivalenceReport {
        exponents: (a, b),
        tangency_cofactor: cofactor,
        free,
        containment,
        length,
    })
}
