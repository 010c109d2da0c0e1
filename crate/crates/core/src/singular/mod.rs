//! Local invariants of plane curve singularities through affine quotient
//! algebras: Milnor and Tjurina numbers at field-rational points, and the
//! total Tjurina number through the Hilbert function of the Jacobian ideal.

pub mod groebner;
pub mod quotient;
pub mod roots;

use serde::Serialize;
use thiserror::Error;

use crate::derivation::{is_reduced, DerivationError};
use crate::gradedlin::{Finiteness, GradedError, GradedIdeal};
use crate::poly::{Poly, Var};
use crate::scalar::{FieldId, Scalar};
use crate::text::format_point;

pub use groebner::buchberger2;
pub use quotient::{PointSet, QuotientAlgebra};
pub use roots::{field_roots, RootSplit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularError {
    #[error("no generators")]
    NoGenerators,
    #[error("the quotient algebra is not finite-dimensional")]
    PositiveDimensional,
    #[error("the point is (0:0:0)")]
    ChartUnavailable,
    #[error("the point does not lie on the curve")]
    NotOnCurve,
    #[error("the curve is not reduced")]
    NotReduced,
    #[error("the Jacobian profile did not stabilize within the bound")]
    InconclusiveProfile,
    #[error("point and curve live over different fields")]
    FieldMismatch,
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
}

/// The affine chart through a projective point: the first nonzero
/// coordinate in the order z, y, x is set to 1.
pub fn chart_of(p: &[Scalar; 3]) -> Result<(Var, [Scalar; 2]), SingularError> {
    for v in [Var::Z, Var::Y, Var::X] {
        let c = &p[v.index()];
        if !c.is_zero() {
            let inv = c.inv().unwrap();
            let rest: Vec<Scalar> = (0..3).filter(|&k| k != v.index()).map(|k| &p[k] * &inv).collect();
            return Ok((v, [rest[0].clone(), rest[1].clone()]));
        }
    }
    Err(SingularError::ChartUnavailable)
}

fn affine(f: &Poly, chart: Var) -> (Poly, Poly, Poly) {
    let h = f.dehomogenize(chart);
    let hu = h.partial(Var::X);
    let hv = h.partial(Var::Y);
    (h, hu, hv)
}

fn check_point(f: &Poly, p: &[Scalar; 3]) -> Result<(), SingularError> {
    if p.iter().any(|c| c.field() != f.field()) {
        return Err(SingularError::FieldMismatch);
    }
    if !f.evaluate(p).map_err(|_| SingularError::FieldMismatch)?.is_zero() {
        return Err(SingularError::NotOnCurve);
    }
    Ok(())
}

/// Milnor number of the germ of V(f) at p.
pub fn milnor_at(f: &Poly, p: &[Scalar; 3]) -> Result<usize, SingularError> {
    check_point(f, p)?;
    let (chart, pt) = chart_of(p)?;
    let (h, hu, hv) = affine(f, chart);
    let alg = match QuotientAlgebra::new(&[hu.clone(), hv.clone()]) {
        Ok(a) => a,
        // critical curves away from V(f): h² lies in the local Jacobian ideal
        // at isolated singular points, so adding it changes no local algebra there
        Err(SingularError::PositiveDimensional) => QuotientAlgebra::new(&[hu, hv, &h * &h])?,
        Err(e) => return Err(e),
    };
    Ok(alg.local_multiplicity(&pt))
}

/// Tjurina number of the germ of V(f) at p.
pub fn tjurina_at(f: &Poly, p: &[Scalar; 3]) -> Result<usize, SingularError> {
    check_point(f, p)?;
    let (chart, pt) = chart_of(p)?;
    let (h, hu, hv) = affine(f, chart);
    let alg = QuotientAlgebra::new(&[h, hu, hv])?;
    Ok(alg.local_multiplicity(&pt))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalInvariants {
    pub point: [Scalar; 3],
    pub chart: Var,
    pub mu: usize,
    pub tau: usize,
}

impl LocalInvariants {
    pub fn quasihomogeneous(&self) -> bool {
        self.mu == self.tau
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalRow {
    pub point: String,
    pub chart: char,
    pub mu: usize,
    pub tau: usize,
    pub quasihomogeneous: bool,
}

impl LocalInvariants {
    pub fn row(&self) -> LocalRow {
        LocalRow {
            point: format_point(&self.point),
            chart: self.chart.name(),
            mu: self.mu,
            tau: self.tau,
            quasihomogeneous: self.quasihomogeneous(),
        }
    }
}

pub fn local_invariants(f: &Poly, p: &[Scalar; 3]) -> Result<LocalInvariants, SingularError> {
    let (chart, _) = chart_of(p)?;
    Ok(LocalInvariants {
        point: p.clone(),
        chart,
        mu: milnor_at(f, p)?,
        tau: tjurina_at(f, p)?,
    })
}

/// Rational points of a zero-dimensional projective scheme.
#[derive(Debug, Clone)]
pub struct SingularLocus {
    /// Points in projective normal form with local multiplicities (τ_p for
    /// a singular locus).
    pub points: Vec<([Scalar; 3], usize)>,
    /// Degrees of non-split characteristic factors met in any chart.
    pub residual_degrees: Vec<usize>,
    /// Part of the scheme not accounted for by rational points.
    pub residual_dimension: usize,
}

impl SingularLocus {
    pub fn all_rational(&self) -> bool {
        self.residual_dimension == 0
    }

    pub fn tjurina_sum(&self) -> usize {
        self.points.iter().map(|(_, t)| t).sum()
    }
}

fn lift(chart: Var, pt: &[Scalar; 2], field: FieldId) -> [Scalar; 3] {
    let mut out = [Scalar::zero(field), Scalar::zero(field), Scalar::zero(field)];
    let rest: Vec<usize> = (0..3).filter(|&k| k != chart.index()).collect();
    out[chart.index()] = Scalar::one(field);
    out[rest[0]] = pt[0].clone();
    out[rest[1]] = pt[1].clone();
    out
}

/// Field-rational points of the projective scheme cut out by homogeneous
/// `gens`, with the multiplicity of each local algebra: chart z = 1, then the
/// line z = 0 in chart y = 1, then (1:0:0).
pub fn projective_points(gens: &[Poly]) -> Result<SingularLocus, SingularError> {
    let field = gens.first().map(Poly::field).ok_or(SingularError::NoGenerators)?;
    let mut points = Vec::new();
    let mut residual_degrees = Vec::new();
    let mut residual_dimension = 0;
    for chart in [Var::Z, Var::Y, Var::X] {
        let affine: Vec<Poly> = gens.iter().map(|g| g.dehomogenize(chart)).collect();
        let alg = QuotientAlgebra::new(&affine)?;
        let set = alg.solve_points();
        // points seen in an earlier chart have a nonzero earlier coordinate
        let keep = |pt: &[Scalar; 2]| match chart {
            Var::Z => true,
            Var::Y => pt[1].is_zero(),
            Var::X => pt[0].is_zero() && pt[1].is_zero(),
        };
        for (pt, m) in &set.points {
            if keep(pt) {
                points.push((lift(chart, pt, field), *m));
            }
        }
        residual_degrees.extend(set.residual_factors.iter().filter_map(|r| r.degree()));
        residual_dimension += match chart {
            Var::Z => set.residual_dimension,
            Var::Y => {
                let mut on_line = affine.clone();
                on_line.push(Poly::y(field));
                QuotientAlgebra::new(&on_line)?.solve_points().residual_dimension
            }
            Var::X => 0,
        };
    }
    Ok(SingularLocus {
        points,
        residual_degrees,
        residual_dimension,
    })
}

/// Singular points of V(f) over the working field with their Tjurina numbers.
pub fn singular_locus(f: &Poly) -> Result<SingularLocus, SingularError> {
    f.require_homogeneous().map_err(|_| SingularError::Derivation(DerivationError::NonHomogeneous))?;
    let mut gens = vec![f.clone()];
    gens.extend(f.gradient());
    projective_points(&gens)
}

/// Total Tjurina number: the stable Hilbert value of R/⟨f_x, f_y, f_z⟩.
pub fn tjurina_total(f: &Poly, t_max: Option<u32>) -> Result<u64, SingularError> {
    if !is_reduced(f)?.reduced {
        return Err(SingularError::NotReduced);
    }
    let ideal = GradedIdeal::new(f.gradient().to_vec())?;
    match ideal.hilbert_profile(t_max)?.finiteness() {
        Finiteness::Finite(l) => Ok(l),
        _ => Err(SingularError::InconclusiveProfile),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(FieldId::Q, s).unwrap()
    }

    fn pt(a: i64, b: i64, c: i64) -> [Scalar; 3] {
        [a, b, c].map(|v| FieldId::Q.int(v))
    }

    #[test]
    fn nodes_and_cusps() {
        let f = p("x*y*z");
        assert_eq!(milnor_at(&f, &pt(0, 0, 1)).unwrap(), 1);
        assert_eq!(tjurina_at(&f, &pt(0, 0, 1)).unwrap(), 1);
        let cusp = p("x^2*z - y^3");
        assert_eq!(milnor_at(&cusp, &pt(0, 0, 1)).unwrap(), 2);
        assert_eq!(tjurina_at(&cusp, &pt(0, 0, 1)).unwrap(), 2);
        assert!(matches!(milnor_at(&f, &pt(1, 1, 1)), Err(SingularError::NotOnCurve)));
    }

    #[test]
    fn ordinary_triple_point() {
        let f = p("x*y*(x-y)*z");
        let inv = local_invariants(&f, &pt(0, 0, 1)).unwrap();
        assert_eq!((inv.mu, inv.tau), (4, 4));
        assert!(inv.quasihomogeneous());
    }

    #[test]
    fn two_paths_for_the_total() {
        for s in ["x*y*z", "x*y*z*(x-y)*(x-z)*(y-z)", "x*y*z*(x+y+z)"] {
            let f = p(s);
            let locus = singular_locus(&f).unwrap();
            assert!(locus.all_rational());
            assert_eq!(locus.tjurina_sum() as u64, tjurina_total(&f, None).unwrap(), "{s}");
        }
    }
}
