//! `freecurve` command-line front end.
//!
//! Exit codes: 0 when a verdict was computed (including negative ones),
//! 1 when the input was refused, 2 when two independent checks disagree.

mod render;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use freecurve::derivation::{decide_freeness, CertificateRecord, Derivation, FreenessStatus};
use freecurve::eigenscheme::{eigenscheme_with_bound, freeness_vs_containment, Containment, EquivalenceReport};
use freecurve::fixtures;
use freecurve::gradedlin::{Finiteness, HilbertProfile};
use freecurve::pencil::{Param, Pencil};
use freecurve::singular::{local_invariants, singular_locus, tjurina_total};
use freecurve::text::{format_point, parse_point};
use freecurve::{format_poly, parse_poly, FieldId, Poly, Scalar};

pub const REPORT_SCHEMA: &str = "freecurve.report/1";

#[derive(Parser)]
#[command(name = "freecurve", version, about = "Freeness, eigenschemes and pencils of plane curves")]
struct Cli {
    /// Ground field: q, qi or fp:P.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Hilbert function bound override.
    #[arg(long, global = true)]
    tmax: Option<u32>,
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized fixtures.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide freeness of a reduced curve and emit a Saito certificate.
    FreeCheck {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Eigenscheme of the derivation P1∂x + P2∂y + P3∂z.
    Eigenscheme {
        #[arg(allow_hyphen_values = true)]
        p1: String,
        #[arg(allow_hyphen_values = true)]
        p2: String,
        #[arg(allow_hyphen_values = true)]
        p3: String,
        /// Also compare freeness of this curve with containment of the eigenscheme.
        #[arg(long, allow_hyphen_values = true)]
        curve: Option<String>,
    },
    /// Base locus, Z, eigenscheme and singular members of the pencil (f, g).
    PencilAnalyze {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Freeness of a union of members, checked both ways.
    PencilFree {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        /// Member parameters λ:μ, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        members: Vec<String>,
        /// Divisor of the union to test instead of the union itself.
        #[arg(long, allow_hyphen_values = true)]
        divisor: Option<String>,
        /// Add one more member, smooth outside the base locus.
        #[arg(long, allow_hyphen_values = true)]
        add: Option<String>,
    },
    /// Total Tjurina number and the table of rational singular points.
    Tau {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Milnor and Tjurina numbers at a point.
    Mu {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Named examples.
    Fixtures {
        #[command(subcommand)]
        action: FixturesCmd,
    },
    /// Re-verify a certificate file produced by free-check.
    VerifyCert { path: std::path::PathBuf },
}

#[derive(Subcommand)]
enum FixturesCmd {
    List,
    Emit {
        name: String,
        #[arg(long)]
        n: Option<u32>,
    },
    RunAll,
}

enum Outcome {
    Verdict(Value),
    Refusal(String),
    Inconsistent(Value),
}

use Outcome::*;

struct Ctx {
    field: FieldId,
    tmax: Option<u32>,
    seed: Option<u64>,
}

fn poly(ctx: &Ctx, s: &str) -> Result<Poly, String> {
    parse_poly(ctx.field, s).map_err(|e| format!("cannot parse {s:?}: {e}"))
}

fn param(ctx: &Ctx, s: &str) -> Result<Param, String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("parameter {s:?} is not of the form λ:μ"))?;
    let parse = |t: &str| Scalar::parse(ctx.field, t).map_err(|e| e.to_string());
    Param::new(parse(a)?, parse(b)?).map_err(|e| e.to_string())
}

fn profile_json(p: &HilbertProfile) -> Value {
    json!({
        "values": p.values,
        "stable_value": p.stable_value,
        "stabilized_at": p.stabilized_at,
        "t_max": p.t_max,
        "finiteness": finiteness_name(p.finiteness()),
    })
}

fn finiteness_name(f: Finiteness) -> &'static str {
    match f {
        Finiteness::Finite(_) => "finite",
        Finiteness::PositiveDimensional => "positive_dimensional",
        Finiteness::Inconclusive => "inconclusive",
    }
}

fn derivation_json(d: &Derivation) -> Value {
    json!({ "degree": d.degree(), "coefficients": d.to_text() })
}

fn containment_json(c: &Containment) -> Value {
    match c {
        Containment::Contained(cert) => json!({
            "contained": true,
            "q": cert.q.clone().map(|p| format_poly(&p)),
            "c": cert.c.to_string(),
        }),
        Containment::NotContained { rank_piece, rank_with_f } => json!({
            "contained": false,
            "rank_piece": rank_piece,
            "rank_with_f": rank_with_f,
        }),
    }
}

fn equivalence_json(r: &EquivalenceReport, f: &Poly) -> Value {
    json!({
        "exponents": [r.exponents.0, r.exponents.1],
        "tangency_cofactor": format_poly(&r.tangency_cofactor),
        "free": r.free_side(),
        "certificate": r.free.as_ref().map(|c| c.to_record(f)),
        "containment": containment_json(&r.containment),
        "eigenscheme_length": r.length,
        "agree": r.agree(),
    })
}

fn free_check(ctx: &Ctx, f: &str) -> Result<Outcome, String> {
    let f = poly(ctx, f)?;
    let v = decide_freeness(&f).map_err(|e| e.to_string())?;
    let body = match &v.status {
        FreenessStatus::Free(cert) => {
            let verified = cert.verify(&f).is_ok();
            let out = json!({
                "curve": format_poly(&f),
                "degree": f.total_degree(),
                "verdict": "free",
                "exponents": [cert.exponents.0, cert.exponents.1],
                "mdr": v.mdr,
                "certificate": cert.to_record(&f),
                "certificate_verified": verified,
            });
            return Ok(if verified { Verdict(out) } else { Inconsistent(out) });
        }
        FreenessStatus::NotFree(reason) => json!({
            "curve": format_poly(&f),
            "degree": f.total_degree(),
            "verdict": "not_free",
            "mdr": v.mdr,
            "reason": reason.to_string(),
        }),
        FreenessStatus::Inconclusive(why) => return Ok(Refusal(format!("inconclusive: {why}"))),
    };
    Ok(Verdict(body))
}

fn eigenscheme(ctx: &Ctx, p: [&str; 3], curve: Option<&str>) -> Result<Outcome, String> {
    let coeffs = [poly(ctx, p[0])?, poly(ctx, p[1])?, poly(ctx, p[2])?];
    let d = Derivation::new(coeffs).map_err(|e| e.to_string())?;
    let g = eigenscheme_with_bound(&d, ctx.tmax).map_err(|e| e.to_string())?;
    let mut out = json!({
        "derivation": derivation_json(&d),
        "minors": g.minors().iter().map(format_poly).collect::<Vec<_>>(),
        "profile": profile_json(g.profile()),
        "finiteness": finiteness_name(g.finiteness()),
        "length": g.length(),
        "expected_length": g.expected_length(),
    });
    if let Some(c) = curve {
        let f = poly(ctx, c)?;
        let r = freeness_vs_containment(&d, &f).map_err(|e| e.to_string())?;
        out["equivalence"] = equivalence_json(&r, &f);
        if !r.agree() {
            return Ok(Inconsistent(out));
        }
    }
    Ok(Verdict(out))
}

fn pencil_analyze(ctx: &Ctx, f: &str, g: &str) -> Result<Outcome, String> {
    let pen = Pencil::new(poly(ctx, f)?, poly(ctx, g)?).map_err(|e| e.to_string())?;
    let a = pen.analyze().map_err(|e| e.to_string())?;
    let (n, m) = pen.degrees();
    let (pa, pb) = pen.powers();
    let singular: Vec<Value> = a
        .singular_members
        .iter()
        .map(|s| {
            json!({
                "point": format_point(&s.point),
                "param": s.param.as_ref().map(|p| p.to_string()),
            })
        })
        .collect();
    let out = json!({
        "f": format_poly(pen.f()),
        "g": format_poly(pen.g()),
        "degrees": [n, m],
        "powers": [pa, pb],
        "canonical": derivation_json(pen.canonical()),
        "base": profile_json(&a.base),
        "z": profile_json(&a.z),
        "z_expected_length": pen.expected_z_length(),
        "gamma": profile_json(a.gamma.profile()),
        "decomposition_holds": a.decomposition,
        "singular_members": singular,
        "unlocated": a.unlocated,
        "residual_degrees": a.residual_degrees,
    });
    if a.decomposition == Some(false) {
        return Ok(Inconsistent(out));
    }
    Ok(Verdict(out))
}

fn pencil_free(
    ctx: &Ctx,
    f: &str,
    g: &str,
    members: &[String],
    divisor: Option<&str>,
    add: Option<&str>,
) -> Result<Outcome, String> {
    let pen = Pencil::new(poly(ctx, f)?, poly(ctx, g)?).map_err(|e| e.to_string())?;
    let params: Vec<Param> = members.iter().map(|s| param(ctx, s)).collect::<Result<_, _>>()?;
    let sel = pen.member_union(&params).map_err(|e| e.to_string())?;
    let big_f = match divisor {
        Some(d) => poly(ctx, d)?,
        None => sel.union.clone(),
    };
    let r = pen.union_freeness_check(&sel, &big_f).map_err(|e| e.to_string())?;
    let mut out = json!({
        "members": params.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "union": format_poly(&sel.union),
        "curve": format_poly(&big_f),
        "equivalence": equivalence_json(&r, &big_f),
    });
    let mut agree = r.agree();
    if let Some(p) = add {
        let p = param(ctx, p)?;
        let analysis = pen.analyze().map_err(|e| e.to_string())?;
        let rep = pen.add_smooth_member(&sel, &big_f, &p, &analysis).map_err(|e| e.to_string())?;
        agree &= rep.agree();
        out["added"] = json!({
            "param": p.to_string(),
            "base_free": rep.base_free,
            "exponents": [rep.exponents.0, rep.exponents.1],
            "curve": format_poly(&rep.union),
            "free": rep.free.is_some(),
            "certificate": rep.free.as_ref().map(|c| c.to_record(&rep.union)),
            "containment": containment_json(&rep.containment),
            "smoothness_fully_checked": rep.smoothness_fully_checked,
            "agree": rep.agree(),
        });
    }
    Ok(if agree { Verdict(out) } else { Inconsistent(out) })
}

fn tau(ctx: &Ctx, f: &str) -> Result<Outcome, String> {
    let f = poly(ctx, f)?;
    let total = tjurina_total(&f, ctx.tmax).map_err(|e| e.to_string())?;
    let locus = singular_locus(&f).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for (pt, _) in &locus.points {
        let inv = local_invariants(&f, pt).map_err(|e| e.to_string())?;
        rows.push(inv.row());
    }
    let local: usize = locus.tjurina_sum();
    let all_rational = locus.all_rational();
    let out = json!({
        "curve": format_poly(&f),
        "tjurina_total": total,
        "points": rows,
        "local_sum": local,
        "all_rational": all_rational,
        "residual_degrees": locus.residual_degrees,
        "residual_dimension": locus.residual_dimension,
        "two_paths_agree": all_rational.then_some(local as u64 == total),
    });
    if all_rational && local as u64 != total {
        return Ok(Inconsistent(out));
    }
    Ok(Verdict(out))
}

fn mu(ctx: &Ctx, f: &str, at: &str) -> Result<Outcome, String> {
    let f = poly(ctx, f)?;
    let p = parse_point(ctx.field, at).map_err(|e| e.to_string())?;
    let inv = local_invariants(&f, &p).map_err(|e| e.to_string())?;
    Ok(Verdict(json!({ "curve": format_poly(&f), "local": inv.row() })))
}

fn fixtures_cmd(ctx: &Ctx, action: &FixturesCmd) -> Result<Outcome, String> {
    match action {
        FixturesCmd::List => Ok(Verdict(json!({ "fixtures": fixtures::NAMES }))),
        FixturesCmd::Emit { name, n } => {
            let fx = fixtures::by_name(name, *n, ctx.seed, ctx.field).ok_or_else(|| format!("unknown fixture {name:?}"))?;
            Ok(Verdict(serde_json::to_value(fx.export()).map_err(|e| e.to_string())?))
        }
        FixturesCmd::RunAll => {
            let mut outcomes = Vec::new();
            for fx in fixtures::catalog(ctx.field) {
                outcomes.extend(fixtures::run(&fx));
            }
            let passed = outcomes.iter().filter(|o| o.pass).count();
            Ok(Verdict(json!({
                "checks": outcomes,
                "passed": passed,
                "failed": outcomes.len() - passed,
            })))
        }
    }
}

fn verify_cert(path: &std::path::Path) -> Result<Outcome, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let rec: CertificateRecord = serde_json::from_str(&text).map_err(|e| format!("malformed certificate: {e}"))?;
    match rec.verify() {
        Ok(f) => Ok(Verdict(json!({
            "valid": true,
            "curve": format_poly(&f),
            "exponents": [rec.exponents.0, rec.exponents.1],
        }))),
        Err(e) => Ok(Refusal(format!("certificate rejected: {e}"))),
    }
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::FreeCheck { .. } => "free-check",
        Cmd::Eigenscheme { .. } => "eigenscheme",
        Cmd::PencilAnalyze { .. } => "pencil-analyze",
        Cmd::PencilFree { .. } => "pencil-free",
        Cmd::Tau { .. } => "tau",
        Cmd::Mu { .. } => "mu",
        Cmd::Fixtures { .. } => "fixtures",
        Cmd::VerifyCert { .. } => "verify-cert",
    }
}

fn dispatch(ctx: &Ctx, cmd: &Cmd) -> Result<Outcome, String> {
    match cmd {
        Cmd::FreeCheck { f } => free_check(ctx, f),
        Cmd::Eigenscheme { p1, p2, p3, curve } => eigenscheme(ctx, [p1, p2, p3], curve.as_deref()),
        Cmd::PencilAnalyze { f, g } => pencil_analyze(ctx, f, g),
        Cmd::PencilFree {
            f,
            g,
            members,
            divisor,
            add,
        } => pencil_free(ctx, f, g, members, divisor.as_deref(), add.as_deref()),
        Cmd::Tau { f } => tau(ctx, f),
        Cmd::Mu { f, at } => mu(ctx, f, at),
        Cmd::Fixtures { action } => fixtures_cmd(ctx, action),
        Cmd::VerifyCert { path } => verify_cert(path),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match cli.field.parse::<FieldId>() {
        Ok(field) => {
            let ctx = Ctx {
                field,
                tmax: cli.tmax,
                seed: cli.seed,
            };
            dispatch(&ctx, &cli.cmd).unwrap_or_else(Refusal)
        }
        Err(e) => Refusal(format!("bad --field: {e}")),
    };
    let (status, code, result, error) = match outcome {
        Verdict(v) => ("verdict", 0, v, None),
        Refusal(msg) => ("refusal", 1, Value::Null, Some(msg)),
        Inconsistent(v) => ("inconsistent", 2, v, Some("independent checks disagree".to_string())),
    };
    let mut report = json!({
        "schema": REPORT_SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "command": command_name(&cli.cmd),
        "field": cli.field,
        "status": status,
        "result": result,
        "error": error,
    });
    if cli.timing {
        report["timing_ms"] = json!(start.elapsed().as_secs_f64() * 1000.0);
    }
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        if let Some(e) = report["error"].as_str() {
            eprintln!("{}: {e}", report["status"].as_str().unwrap_or_default());
        }
        if !report["result"].is_null() {
            print!("{}", render::text(&report["result"]));
        }
        if let Some(t) = report.get("timing_ms") {
            println!("timing_ms: {t}");
        }
    }
    ExitCode::from(code)
}
