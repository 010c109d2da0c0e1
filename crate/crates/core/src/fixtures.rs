//! Named curves, pencils and derivations with their recorded outcomes, and a
//! runner that recomputes every outcome from scratch.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::derivation::{decide_freeness, reduced_by_lines, saito_scalar, Derivation, FreenessStatus};
use crate::eigenscheme::eigenscheme_of;
use crate::gradedlin::GradedIdeal;
use crate::pencil::{Param, Pencil};
use crate::poly::{det3, wedge, Poly};
use crate::scalar::{FieldId, Scalar};
use crate::singular::{local_invariants, singular_locus, tjurina_total};
use crate::text::{format_poly, parse_poly};

pub const DEFAULT_SEED: u64 = 20_240_501;

/// A recorded outcome attached to a named subject of the fixture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "claim", rename_all = "snake_case")]
pub enum Claim {
    Free { exponents: (u32, u32) },
    NotFree,
    /// Length of the eigenscheme of a named derivation.
    EigenschemeLength { length: u64 },
    /// Pencil data: lengths of B, Z, Γ.
    PencilLengths { base: u64, z: u64, gamma: u64 },
    /// Singular members located at `count` rational points, all with parameter (λ:μ).
    SingularMember { count: usize, param: (i64, i64) },
    /// det(δ_E, θ₁, θ₂) = c·subject.
    SaitoScalar { theta1: String, theta2: String, c: i64 },
    /// det(∇f, ∇g, ∇h) = multiple·subject.
    GradientDeterminant { polys: [String; 3], multiple: i64 },
    LocalInvariants { point: [i64; 3], mu: usize, tau: usize },
    /// The eigenscheme ideal of the subject derivation and the listed
    /// generators agree in every degree up to `up_to`.
    IdealAgreement { generators: Vec<String>, up_to: u32 },
    /// Global and local Tjurina totals agree.
    TjurinaTwoPath,
}

#[derive(Debug, Clone, Serialize)]
pub struct Expectation {
    pub subject: String,
    #[serde(flatten)]
    pub claim: Claim,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub field: FieldId,
    pub n: Option<u32>,
    pub seed: Option<u64>,
    pub curves: Vec<(String, Poly)>,
    pub pencil: Option<(Poly, Poly)>,
    pub derivations: Vec<(String, Derivation)>,
    pub expected: Vec<Expectation>,
    pub notes: Vec<String>,
}

impl Fixture {
    fn new(name: &str, field: FieldId) -> Fixture {
        Fixture {
            name: name.to_string(),
            field,
            n: None,
            seed: None,
            curves: Vec::new(),
            pencil: None,
            derivations: Vec::new(),
            expected: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn curve(&self, label: &str) -> Option<&Poly> {
        self.curves.iter().find(|(l, _)| l == label).map(|(_, p)| p)
    }

    pub fn derivation(&self, label: &str) -> Option<&Derivation> {
        self.derivations.iter().find(|(l, _)| l == label).map(|(_, d)| d)
    }

    fn add_curve(&mut self, label: &str, p: Poly) {
        self.curves.push((label.to_string(), p));
    }

    fn expect(&mut self, subject: &str, claim: Claim) {
        self.expected.push(Expectation {
            subject: subject.to_string(),
            claim,
        });
    }

    /// Text form of the payload.
    pub fn export(&self) -> FixtureExport {
        FixtureExport {
            name: self.name.clone(),
            field: self.field.to_string(),
            n: self.n,
            seed: self.seed,
            curves: self.curves.iter().map(|(l, p)| (l.clone(), format_poly(p))).collect(),
            pencil: self.pencil.as_ref().map(|(f, g)| [format_poly(f), format_poly(g)]),
            derivations: self.derivations.iter().map(|(l, d)| (l.clone(), d.to_text())).collect(),
            expected: self.expected.clone(),
            notes: self.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureExport {
    pub name: String,
    pub field: String,
    pub n: Option<u32>,
    pub seed: Option<u64>,
    pub curves: Vec<(String, String)>,
    pub pencil: Option<[String; 2]>,
    pub derivations: Vec<(String, [String; 3])>,
    pub expected: Vec<Expectation>,
    pub notes: Vec<String>,
}

fn poly(field: FieldId, s: &str) -> Poly {
    parse_poly(field, s).expect("fixture polynomial parses")
}

pub fn ceva(field: FieldId) -> Fixture {
    let mut fx = Fixture::new("ceva", field);
    fx.add_curve("ceva", poly(field, "x*y*z*(x-y)*(x-z)*(y-z)"));
    fx.pencil = Some((poly(field, "(x-y)*z"), poly(field, "y*(x-z)")));
    fx.expect("ceva", Claim::Free { exponents: (2, 3) });
    fx.expect("ceva", Claim::TjurinaTwoPath);
    fx.expect("pencil", Claim::PencilLengths { base: 4, z: 3, gamma: 7 });
    fx
}

/// Hesse pencil `(x³+y³+z³, xyz)` and the union of its four triangles,
/// `xyz·(f³ − 27g³)`.
pub fn hesse(field: FieldId) -> Fixture {
    let mut fx = Fixture::new("hesse", field);
    let f = poly(field, "x^3+y^3+z^3");
    let g = poly(field, "x*y*z");
    let arrangement = &g * &(&f.pow(3) - &g.pow(3).scale(&field.int(27)));
    fx.add_curve("arrangement", arrangement);
    fx.pencil = Some((f, g));
    fx.expect("arrangement", Claim::Free { exponents: (4, 7) });
    fx.expect("pencil", Claim::PencilLengths { base: 9, z: 12, gamma: 21 });
    if let Some(j) = cube_root_of_unity(field) {
        fx.notes.push(format!("triangle parameters (0:1), (1:-3), (1:-3j), (1:-3j^2) with j = {j}"));
    }
    fx
}

/// A primitive cube root of unity in GF(p) for p ≡ 1 mod 3.
pub fn cube_root_of_unity(field: FieldId) -> Option<Scalar> {
    let FieldId::Fp(p) = field else { return None };
    if p % 3 != 1 {
        return None;
    }
    (2..p.min(1000)).find_map(|c| {
        let j = Scalar::from_i64(field, c as i64).pow((p - 1) / 3);
        (!j.is_one()).then_some(j)
    })
}

/// The four triangle parameters of the Hesse pencil, when j exists.
pub fn hesse_triangle_params(field: FieldId) -> Option<Vec<Param>> {
    let j = cube_root_of_unity(field)?;
    let m3 = field.int(-3);
    let mut out = vec![Param::ints(field, 0, 1).unwrap()];
    for e in [Scalar::one(field), j.clone(), &j * &j] {
        out.push(Param::new(Scalar::one(field), &m3 * &e).unwrap());
    }
    Some(out)
}

pub fn fermat(n: u32, field: FieldId) -> Fixture {
    let mut fx = Fixture::new("fermat", field);
    fx.n = Some(n);
    fx.add_curve(
        "fermat",
        poly(field, &format!("(x^{n}-y^{n})*(x^{n}-z^{n})*(y^{n}-z^{n})")),
    );
    let (a, b) = (n + 1, 2 * n - 2);
    fx.expect("fermat", Claim::Free { exponents: (a.min(b), a.max(b)) });
    fx
}

/// The pencil `(f³, g²)` of a smooth conic and a triangle.
pub fn sextic_pencil(field: FieldId) -> Fixture {
    let mut fx = Fixture::new("sextic_pencil", field);
    let f = poly(field, "x^2+y^2+z^2");
    let g = poly(field, "x*y*z");
    let member = &f.pow(3) - &g.pow(2).scale(&field.int(27));
    fx.add_curve("xyz_member", &g * &member);
    fx.add_curve("yz_member", &poly(field, "y*z") * &member);
    fx.pencil = Some((f, g));
    fx.expect("pencil", Claim::PencilLengths { base: 6, z: 7, gamma: 13 });
    fx.expect("pencil", Claim::SingularMember { count: 4, param: (1, -27) });
    fx.expect("xyz_member", Claim::Free { exponents: (3, 5) });
    fx.expect("yz_member", Claim::Free { exponents: (3, 4) });
    fx
}

/// Osculating conics `xz` and `z² − xy`.
pub fn osculating_conics(field: FieldId) -> Fixture {
    let mut fx = Fixture::new("osculating_conics", field);
    let f = poly(field, "x*z");
    let g = poly(field, "z^2-x*y");
    let fpg = &f + &g;
    let fmg = &f - &g;
    fx.add_curve("fg", &f * &g);
    fx.add_curve("g(f+g)(f-g)", &(&g * &fpg) * &fmg);
    fx.add_curve("x(f+g)(f-g)", &(&poly(field, "x") * &fpg) * &fmg);
    fx.add_curve("f(f+g)(f-g)", &(&f * &fpg) * &fmg);
    fx.add_curve("g(f+g)", &g * &fpg);
    let delta = Derivation::new(wedge(&f.gradient(), &g.gradient())).unwrap();
    fx.derivations.push(("canonical".into(), delta));
    fx.pencil = Some((f, g));
    fx.expect("canonical", Claim::EigenschemeLength { length: 7 });
    fx.expect(
        "canonical",
        Claim::IdealAgreement {
            generators: vec!["x*(z^2+x*y)".into(), "x^2*z".into(), "z^3".into()],
            up_to: 8,
        },
    );
    fx.expect("fg", Claim::Free { exponents: (1, 2) });
    fx.expect("g(f+g)(f-g)", Claim::Free { exponents: (2, 3) });
    fx.expect("x(f+g)(f-g)", Claim::Free { exponents: (2, 3) });
    fx.expect("f(f+g)(f-g)", Claim::Free { exponents: (2, 3) });
    fx.expect("g(f+g)", Claim::NotFree);
    fx.expect("g(f+g)(f-g)", Claim::LocalInvariants { point: [0, 1, 0], mu: 16, tau: 15 });
    fx.expect("x(f+g)(f-g)", Claim::LocalInvariants { point: [0, 1, 0], mu: 12, tau: 11 });
    fx.expect("g(f+g)(f-g)", Claim::TjurinaTwoPath);
    fx.expect("x(f+g)(f-g)", Claim::TjurinaTwoPath);
    fx
}

/// Two smooth conics meeting in one point of multiplicity 4.
pub fn quadruple_point_pencil(field: FieldId) -> Fixture {
    let mut fx = Fixture::new("quadruple_point_pencil", field);
    let f = poly(field, "x*z-y^2");
    let g = poly(field, "x^2+x*z-y^2");
    fx.add_curve("two_members", &f * &g);
    fx.pencil = Some((f, g));
    fx.notes.push("the pencil contains the double line x^2, so V(∇f ∧ ∇g) is not finite".into());
    fx.expect("two_members", Claim::Free { exponents: (1, 2) });
    fx
}

/// Two smooth conics meeting in a simple and a triple point.
pub fn triple_point_pencil(field: FieldId) -> Fixture {
    let mut fx = Fixture::new("triple_point_pencil", field);
    let f = poly(field, "z^2-x*y");
    let g = poly(field, "x*z+z^2-x*y");
    let h = poly(field, "x*z-z^2+x*y");
    fx.add_curve("three_members", &(&f * &g) * &h);
    fx.add_curve("two_members", &f * &g);
    fx.pencil = Some((f, g));
    fx.expect("three_members", Claim::Free { exponents: (2, 3) });
    fx.expect("two_members", Claim::NotFree);
    fx
}

/// Free curve of degree 5 with exponents (2,2), with the degree-3
/// derivation `x·θ₁ + y·θ₂` built from its two generators.
pub fn five_lines(field: FieldId) -> Fixture {
    let mut fx = Fixture::new("five_lines", field);
    fx.add_curve("curve", poly(field, "x*y*z*(x-y)*(x-z)"));
    fx.expect("curve", Claim::Free { exponents: (2, 2) });
    fx
}

/// Net member `a·f + b·g + c·h` of the reflection net.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NetMember {
    pub coeffs: [i64; 3],
}

#[derive(Debug, Clone)]
pub struct ReflectionNet {
    pub fixture: Fixture,
    pub n: u32,
    pub arrangement: Poly,
    pub mu: Derivation,
    pub delta: Derivation,
    pub net: [Poly; 3],
    pub members: Vec<NetMember>,
    pub member_polys: Vec<Poly>,
    /// Coefficient pairs (a_i, b_i) for combinations of G₁ and G₂.
    pub pairs: Vec<(i64, i64)>,
}

fn cross(a: &[i64; 3], b: &[i64; 3]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn power_diff(field: FieldId, a: &str, b: &str, n: u32) -> Poly {
    poly(field, &format!("{a}^{n}-{b}^{n}"))
}

pub fn reflection_net(n: u32, seed: u64, field: FieldId) -> ReflectionNet {
    let mut fx = Fixture::new("reflection_net", field);
    fx.n = Some(n);
    fx.seed = Some(seed);
    let (x, y, z) = (Poly::x(field), Poly::y(field), Poly::z(field));
    let xy = power_diff(field, "x", "y", n);
    let xz = power_diff(field, "x", "z", n);
    let yz = power_diff(field, "y", "z", n);
    let arrangement = Poly::product(field, [&x, &y, &z, &xy, &xz, &yz]);
    let mu = Derivation::new([x.pow(n + 1), y.pow(n + 1), z.pow(n + 1)]).unwrap();
    let delta = Derivation::new([&(&x * &xy) * &xz, &(&y * &xy) * &yz, &(&z * &xz) * &yz]).unwrap();
    let net = [
        &(&y * &z) * &yz,
        &(&x * &z) * &-&xz,
        &(&x * &y) * &xy,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grads = net.clone().map(|p| p.gradient());
    let d_fg = wedge(&grads[0], &grads[1]);
    let d_fh = wedge(&grads[0], &grads[2]);
    let d_gh = wedge(&grads[1], &grads[2]);
    let mut members: Vec<NetMember> = Vec::new();
    let mut member_polys: Vec<Poly> = Vec::new();
    let mut attempts = 0;
    while members.len() < 5 {
        attempts += 1;
        let c = [0; 3].map(|_| rng.gen_range(-3i64..=3));
        let [a, b, cc] = c.map(|v| field.int(v));
        // the two derivations of Der₀(G) built from the net must be independent
        let d1: [Poly; 3] = [0, 1, 2].map(|k| &d_fg[k].scale(&b) + &d_fh[k].scale(&cc));
        let d2: [Poly; 3] = [0, 1, 2].map(|k| &d_fh[k].scale(&a) + &d_gh[k].scale(&b));
        if wedge(&d1, &d2).iter().all(Poly::is_zero) {
            continue;
        }
        let g = &(&net[0].scale(&a) + &net[1].scale(&b)) + &net[2].scale(&cc);
        // general position in the net: no two members coincide and no three
        // lie in one pencil
        let proportional = members.iter().any(|m| cross(&m.coeffs, &c) == [0; 3]);
        let in_pencil = (0..members.len()).any(|i| {
            (i + 1..members.len()).any(|j| {
                let w = cross(&members[i].coeffs, &members[j].coeffs);
                w[0] * c[0] + w[1] * c[1] + w[2] * c[2] == 0
            })
        });
        if in_pencil {
            continue;
        }
        if proportional || !reduced_by_lines(&g) {
            continue;
        }
        // the product with F must stay reduced; a squarefree line section
        // certifies it
        let mut prod = &arrangement * &g;
        for h in &member_polys {
            prod = &prod * h;
        }
        if !reduced_by_lines(&prod) {
            continue;
        }
        members.push(NetMember { coeffs: c });
        member_polys.push(g);
    }
    fx.notes.push(format!("{attempts} draws for 5 general net members"));
    let mut pairs: Vec<(i64, i64)> = Vec::new();
    let mut combined = arrangement.clone();
    let mut pair_attempts = 0;
    while pairs.len() < 5 {
        pair_attempts += 1;
        let (a, b) = (rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3));
        if a == 0 || b == 0 || pairs.iter().any(|&(c, d)| a * d == b * c) {
            continue;
        }
        let g = &member_polys[0].scale(&field.int(a)) + &member_polys[1].scale(&field.int(b));
        let next = &combined * &g;
        if !reduced_by_lines(&next) {
            continue;
        }
        combined = next;
        pairs.push((a, b));
    }
    fx.notes.push(format!("{pair_attempts} draws for 5 pencil coefficient pairs"));
    fx.add_curve("F", arrangement.clone());
    for (k, g) in member_polys.iter().enumerate() {
        fx.add_curve(&format!("G{}", k + 1), g.clone());
    }
    for (k, p) in net.iter().enumerate() {
        fx.add_curve(["f", "g", "h"][k], p.clone());
    }
    fx.notes.push("det(δ_E, μ, δ) = −F and det(∇f, ∇g, ∇h) = −(n+1)(n+2)F with columns in the listed order".into());
    fx.derivations.push(("mu".into(), mu.clone()));
    fx.derivations.push(("delta".into(), delta.clone()));
    fx.expect(
        "F",
        Claim::SaitoScalar {
            theta1: "mu".into(),
            theta2: "delta".into(),
            c: -1,
        },
    );
    fx.expect(
        "F",
        Claim::GradientDeterminant {
            polys: ["f".into(), "g".into(), "h".into()],
            multiple: -(((n + 1) * (n + 2)) as i64),
        },
    );
    fx.expect("mu", Claim::EigenschemeLength { length: (n * n + 3 * n + 3) as u64 });
    fx.expect("F", Claim::Free { exponents: (n + 1, 2 * n + 1) });
    ReflectionNet {
        fixture: fx,
        n,
        arrangement,
        mu,
        delta,
        net,
        members,
        member_polys,
        pairs,
    }
}

/// One curve of the reflection suite with its expected verdict.
#[derive(Debug, Clone)]
pub struct SuiteCurve {
    pub label: String,
    pub curve: Poly,
    /// `None` for a curve expected not to be free.
    pub expected: Option<(u32, u32)>,
}

/// Curves F·ΠG with their expected verdicts; item (3) uses `k` combinations
/// of G₁ and G₂.
pub fn reflection_suite(net: &ReflectionNet, k: usize) -> Vec<SuiteCurve> {
    let n = net.n;
    let f = &net.arrangement;
    let g = &net.member_polys;
    let field = f.field();
    let prod = |count: usize| g[..count].iter().fold(f.clone(), |acc, h| &acc * h);
    let mut out = vec![
        SuiteCurve {
            label: "FG1".into(),
            curve: prod(1),
            expected: Some((2 * n + 2, 2 * n + 2)),
        },
        SuiteCurve {
            label: "FG1G2".into(),
            curve: prod(2),
            expected: Some((2 * n + 2, 3 * n + 4)),
        },
    ];
    let combos = net.pairs[..k.min(net.pairs.len())]
        .iter()
        .fold(f.clone(), |acc, &(a, b)| &acc * &(&g[0].scale(&field.int(a)) + &g[1].scale(&field.int(b))));
    let k = k as u32;
    out.push(SuiteCurve {
        label: format!("F*prod_{k}(aG1+bG2)"),
        curve: combos,
        expected: Some((2 * n + 2, (k + 1) * n + 2 * k)),
    });
    out.push(SuiteCurve {
        label: "FG1G2G3".into(),
        curve: prod(3),
        expected: Some((3 * n + 4, 3 * n + 4)),
    });
    out.push(SuiteCurve {
        label: "FG1G2G3G4".into(),
        curve: prod(4),
        expected: Some((3 * n + 5, 4 * n + 5)),
    });
    out.push(SuiteCurve {
        label: "FG1G2G3G4G5".into(),
        curve: prod(5),
        expected: None,
    });
    out
}

/// All fixtures at their default parameters.
pub fn catalog(field: FieldId) -> Vec<Fixture> {
    vec![
        ceva(field),
        hesse(field),
        fermat(3, field),
        fermat(4, field),
        fermat(5, field),
        sextic_pencil(field),
        osculating_conics(field),
        quadruple_point_pencil(field),
        triple_point_pencil(field),
        five_lines(field),
        reflection_net(2, DEFAULT_SEED, field).fixture,
    ]
}

pub const NAMES: &[&str] = &[
    "ceva",
    "hesse",
    "fermat",
    "sextic_pencil",
    "osculating_conics",
    "quadruple_point_pencil",
    "triple_point_pencil",
    "five_lines",
    "reflection_net",
];

/// Builds a fixture by name.
pub fn by_name(name: &str, n: Option<u32>, seed: Option<u64>, field: FieldId) -> Option<Fixture> {
    Some(match name {
        "ceva" => ceva(field),
        "hesse" => hesse(field),
        "fermat" => fermat(n.unwrap_or(3), field),
        "sextic_pencil" => sextic_pencil(field),
        "osculating_conics" => osculating_conics(field),
        "quadruple_point_pencil" => quadruple_point_pencil(field),
        "triple_point_pencil" => triple_point_pencil(field),
        "five_lines" => five_lines(field),
        "reflection_net" => reflection_net(n.unwrap_or(2), seed.unwrap_or(DEFAULT_SEED), field).fixture,
        _ => return None,
    })
}

/// Outcome of re-deriving one recorded claim.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub fixture: String,
    pub subject: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

fn describe(claim: &Claim) -> String {
    match claim {
        Claim::Free { exponents } => format!("free {exponents:?}"),
        Claim::NotFree => "not free".into(),
        Claim::EigenschemeLength { length } => format!("eigenscheme length {length}"),
        Claim::PencilLengths { base, z, gamma } => format!("B={base} Z={z} Γ={gamma}"),
        Claim::SingularMember { count, param } => format!("{count} points with ({}:{})", param.0, param.1),
        Claim::SaitoScalar { theta1, theta2, c } => format!("det(δ_E,{theta1},{theta2}) = {c}·F"),
        Claim::GradientDeterminant { polys, multiple } => {
            format!("det(∇{},∇{},∇{}) = {multiple}·F", polys[0], polys[1], polys[2])
        }
        Claim::LocalInvariants { point, mu, tau } => format!("at {point:?}: μ={mu} τ={tau}"),
        Claim::IdealAgreement { generators, up_to } => format!("⟨{}⟩ up to degree {up_to}", generators.join(", ")),
        Claim::TjurinaTwoPath => "global τ = Σ local τ".into(),
    }
}

/// Evaluates one claim; errors are reported as failed observations.
pub fn check(fx: &Fixture, e: &Expectation) -> CheckOutcome {
    let observed = observe(fx, e).unwrap_or_else(|err| Observation {
        text: format!("error: {err}"),
        pass: false,
    });
    CheckOutcome {
        fixture: fx.name.clone(),
        subject: e.subject.clone(),
        expected: describe(&e.claim),
        observed: observed.text,
        pass: observed.pass,
    }
}

struct Observation {
    text: String,
    pass: bool,
}

fn observe(fx: &Fixture, e: &Expectation) -> Result<Observation, String> {
    let field = fx.field;
    let curve = || fx.curve(&e.subject).ok_or_else(|| format!("unknown curve {}", e.subject));
    let err = |x: &dyn std::fmt::Display| x.to_string();
    let obs = |text: String, pass: bool| Ok(Observation { text, pass });
    match &e.claim {
        Claim::Free { exponents } => {
            let v = decide_freeness(curve()?).map_err(|x| err(&x))?;
            match &v.status {
                FreenessStatus::Free(c) => obs(format!("free {:?}", c.exponents), c.exponents == *exponents),
                FreenessStatus::NotFree(r) => obs(format!("not free: {r}"), false),
                FreenessStatus::Inconclusive(r) => obs(format!("inconclusive: {r}"), false),
            }
        }
        Claim::NotFree => {
            let v = decide_freeness(curve()?).map_err(|x| err(&x))?;
            match &v.status {
                FreenessStatus::Free(c) => obs(format!("free {:?}", c.exponents), false),
                FreenessStatus::NotFree(r) => obs(format!("not free: {r}"), true),
                FreenessStatus::Inconclusive(r) => obs(format!("inconclusive: {r}"), false),
            }
        }
        Claim::EigenschemeLength { length } => {
            let d = fx.derivation(&e.subject).ok_or("unknown derivation")?;
            let g = eigenscheme_of(d).map_err(|x| err(&x))?;
            obs(format!("{:?}", g.finiteness()), g.length() == Some(*length))
        }
        Claim::PencilLengths { base, z, gamma } => {
            let (f, g) = fx.pencil.clone().ok_or("no pencil")?;
            let a = Pencil::new(f, g).and_then(|p| p.analyze()).map_err(|x| err(&x))?;
            let got = (a.base.length(), a.z.length(), a.gamma.length());
            obs(
                format!("B={:?} Z={:?} Γ={:?}", got.0, got.1, got.2),
                got == (Some(*base), Some(*z), Some(*gamma)),
            )
        }
        Claim::SingularMember { count, param } => {
            let (f, g) = fx.pencil.clone().ok_or("no pencil")?;
            let a = Pencil::new(f, g).and_then(|p| p.analyze()).map_err(|x| err(&x))?;
            let target = Param::ints(field, param.0, param.1).map_err(|x| err(&x))?;
            let hits = a.singular_members.iter().filter(|s| s.param.as_ref() == Some(&target)).count();
            obs(
                format!("{} located, {hits} with the parameter", a.singular_members.len()),
                hits == *count && a.singular_members.len() == *count,
            )
        }
        Claim::SaitoScalar { theta1, theta2, c } => {
            let t1 = fx.derivation(theta1).ok_or("unknown derivation")?;
            let t2 = fx.derivation(theta2).ok_or("unknown derivation")?;
            let got = saito_scalar(curve()?, t1, t2).map_err(|x| err(&x))?;
            obs(format!("c = {got}"), got == field.int(*c))
        }
        Claim::GradientDeterminant { polys, multiple } => {
            let g: Vec<[Poly; 3]> = polys
                .iter()
                .map(|l| fx.curve(l).map(Poly::gradient).ok_or("unknown curve"))
                .collect::<Result<_, _>>()?;
            let det = det3(&g[0], &g[1], &g[2]);
            let target = curve()?.scale(&field.int(*multiple));
            obs(
                if det == target { format!("{multiple}·F") } else { "other".into() },
                det == target,
            )
        }
        Claim::LocalInvariants { point, mu, tau } => {
            let p = point.map(|v| field.int(v));
            let inv = local_invariants(curve()?, &p).map_err(|x| err(&x))?;
            obs(format!("μ={} τ={}", inv.mu, inv.tau), inv.mu == *mu && inv.tau == *tau)
        }
        Claim::IdealAgreement { generators, up_to } => {
            let d = fx.derivation(&e.subject).ok_or("unknown derivation")?;
            let g = eigenscheme_of(d).map_err(|x| err(&x))?;
            let theirs: Vec<Poly> = generators
                .iter()
                .map(|s| parse_poly(field, s).map_err(|x| err(&x)))
                .collect::<Result<_, _>>()?;
            let ours = g.ideal().ok_or("eigenscheme ideal is zero")?.generators().to_vec();
            let agree = ideals_agree(&ours, &theirs, *up_to).map_err(|x| err(&x))?;
            obs(if agree { "agree".into() } else { "differ".into() }, agree)
        }
        Claim::TjurinaTwoPath => {
            let f = curve()?;
            let global = tjurina_total(f, None).map_err(|x| err(&x))?;
            let locus = singular_locus(f).map_err(|x| err(&x))?;
            let local = locus.tjurina_sum() as u64;
            obs(
                format!("global {global}, local {local}, rational {}", locus.all_rational()),
                locus.all_rational() && global == local,
            )
        }
    }
}

/// Degreewise equality of two homogeneous ideals for t ≤ `up_to`.
pub fn ideals_agree(a: &[Poly], b: &[Poly], up_to: u32) -> Result<bool, crate::gradedlin::GradedError> {
    let ia = GradedIdeal::new(a.to_vec())?;
    let ib = GradedIdeal::new(b.to_vec())?;
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    let ic = GradedIdeal::new(both)?;
    for t in 0..=up_to {
        let (ra, rb, rc) = (ia.piece_dimension(t)?, ib.piece_dimension(t)?, ic.piece_dimension(t)?);
        if ra != rc || rb != rc {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn run(fx: &Fixture) -> Vec<CheckOutcome> {
    fx.expected.iter().map(|e| check(fx, e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn payloads_are_deterministic() {
        let a = reflection_net(2, 7, FieldId::Q);
        let b = reflection_net(2, 7, FieldId::Q);
        assert_eq!(a.members, b.members);
        assert_eq!(a.pairs, b.pairs);
        assert_eq!(a.fixture.export().curves, b.fixture.export().curves);
    }

    #[test]
    fn reflection_identities() {
        for n in [2, 3] {
            let net = reflection_net(n, DEFAULT_SEED, FieldId::Q);
            let fx = &net.fixture;
            for e in &fx.expected {
                if matches!(e.claim, Claim::Free { .. }) && n == 3 {
                    continue;
                }
                let out = check(fx, e);
                assert!(out.pass, "{out:?}");
            }
        }
    }

    #[test]
    fn hesse_triangles_over_prime_field() {
        let field = FieldId::fp(65521).unwrap();
        let params = hesse_triangle_params(field).unwrap();
        let fx = hesse(field);
        let (f, g) = fx.pencil.clone().unwrap();
        let pen = Pencil::new(f, g).unwrap();
        let sel = pen.member_union(&params).unwrap();
        assert_eq!(sel.union.monic(), fx.curve("arrangement").unwrap().monic());
    }

    #[test]
    fn small_fixtures_conform() {
        for fx in [ceva(FieldId::Q), quadruple_point_pencil(FieldId::Q), triple_point_pencil(FieldId::Q)] {
            for out in run(&fx) {
                assert!(out.pass, "{out:?}");
            }
        }
    }
}
