use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use splitjac::algebra::{parse_rational, parse_rational_list, rational_to_f64, Poly, Rational};
use splitjac::coversolver::{
    build_system_with, emit_curve, solve, verify_cover, SolveOptions, DEFAULT_ANCHORS,
};
use splitjac::family4::{build_member, verify_locus, verify_subcover_discriminant};
use splitjac::humbert::{find_relation, humbert_nonempty, parse_gaussian, parse_tau};
use splitjac::igusa::{absolute_invariants, igusa_invariants, AbsoluteInvariants, GenusTwoCurve};
use splitjac::nielsen::{
    braid_orbits, check_row, enumerate_nielsen, orbit_genus_with, CycleType, GenusConvention,
    OrbitTable,
};
use splitjac::ramification::{theorem2_catalogue, validate_profile, RamificationProfile};
use splitjac::{Error, Result};

use crate::Report;

const STORED_TABLE: &str = include_str!("../../../data/orbit_table.json");

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum Convention {
    PureLambdaLine,
    ReducedJLine,
    FullArrangement,
}

impl From<Convention> for GenusConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::PureLambdaLine => GenusConvention::PureLambdaLine,
            Convention::ReducedJLine => GenusConvention::ReducedJLine,
            Convention::FullArrangement => GenusConvention::FullArrangement,
        }
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

pub fn igusa(coeffs: &str) -> Result<Report> {
    let c = parse_rational_list(coeffs)?;
    let curve = GenusTwoCurve::new(Poly::new(c))?;
    let v = igusa_invariants(&curve);
    let abs = absolute_invariants(&v)?;
    let (chart, values) = match &abs {
        AbsoluteInvariants::J2Chart(a) => ("j2", a),
        AbsoluteInvariants::J10Chart(a) => ("j10", a),
    };
    let result = json!({
        "coefficients": strings(curve.f().coeffs()),
        "invariants": { "j2": v.j2.to_string(), "j4": v.j4.to_string(), "j6": v.j6.to_string(), "j10": v.j10.to_string() },
        "absolute": { "chart": chart, "values": strings(values) },
    });
    let mut text = String::new();
    for (name, x) in [("J2", &v.j2), ("J4", &v.j4), ("J6", &v.j6), ("J10", &v.j10)] {
        let _ = writeln!(text, "{name:<4}= {x}");
    }
    let _ = writeln!(text, "absolute ({chart} chart): {}", strings(values).join(", "));
    Ok(Report::new("splitjac/igusa/v1", result, text))
}

pub fn ramification(degree: usize, profile: Option<&str>) -> Result<Report> {
    if let Some(p) = profile {
        let prof = RamificationProfile::parse(degree, p)?;
        let rep = validate_profile(&prof);
        let text = match &rep.failure_reason {
            Some(why) => format!("{prof}: {why}\n"),
            None => format!("{prof}: consistent, ramification {}\n", rep.riemann_hurwitz_sum),
        };
        let mut out = Report::new("splitjac/ramification-profile/v1", json!({ "profile": prof, "report": rep }), text);
        out.verified = rep.consistent;
        return Ok(out);
    }
    let cat = theorem2_catalogue(degree)?;
    let mut text = String::new();
    for e in &cat {
        let shape = e.profile.as_ref().map_or_else(|| "-".to_string(), |p| p.to_string());
        let status = if !e.applicable {
            "inapplicable".to_string()
        } else if e.consistent {
            "ok".to_string()
        } else {
            format!("INCONSISTENT: {}", e.failure_reason.as_deref().unwrap_or(""))
        };
        let flag = if e.excluded_for_maximal { " [not maximal]" } else { "" };
        let _ = writeln!(text, "{:<6}{shape:<48}{status}{flag}", e.label);
    }
    Ok(Report::new("splitjac/ramification/v1", json!({ "degree": degree, "entries": cat }), text))
}

fn parse_types(types: &str, n: usize) -> Result<Vec<CycleType>> {
    types.split(',').map(|s| CycleType::parse(s.trim(), n)).collect()
}

pub fn braid(degree: usize, types: &str, genus: Option<Convention>) -> Result<Report> {
    let types = parse_types(types, degree)?;
    let class = enumerate_nielsen(degree, &types)?;
    let mut orbits = braid_orbits(&class.tuples)?;
    let mut reports = Vec::new();
    if let Some(conv) = genus {
        for o in &mut orbits {
            let r = orbit_genus_with(o, conv.into())?;
            o.genus = Some(r.genus);
            reports.push(r);
        }
    }
    let mut text = format!("class size {}\n", class.tuples.len());
    if let Some(d) = &class.diagnostic {
        let _ = writeln!(text, "empty: {d}");
    }
    for o in &orbits {
        let g = o.genus.map_or_else(String::new, |g| format!(" genus {g}"));
        let _ = writeln!(text, "orbit length {} |G| = {}{g}", o.length, o.group_order);
    }
    let sig: Vec<String> = types.iter().map(ToString::to_string).collect();
    let result = json!({
        "degree": degree,
        "cycle_types": sig,
        "class_size": class.tuples.len(),
        "diagnostic": class.diagnostic,
        "orbits": orbits,
        "genus_reports": reports,
    });
    Ok(Report::new("splitjac/braid/v1", result, text))
}

pub fn braid_table(path: Option<&Path>, check: bool) -> Result<Report> {
    let source = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?,
        None => STORED_TABLE.to_string(),
    };
    let table = OrbitTable::from_json(&source)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut all = true;
    for row in &table.rows {
        let out = check_row(&table, row)?;
        let found: Vec<String> = out.orbits.iter().map(|o| o.length.to_string()).collect();
        let _ = writeln!(
            text,
            "{} case {:<8} ({}) expected length {} |G| {} genus {}; orbits [{}]",
            if out.pass { "PASS" } else { "FAIL" },
            row.case,
            row.cycle_types.join(", "),
            row.orbit_length,
            row.group_order,
            row.genus.map_or("-".into(), |g| g.to_string()),
            found.join(", ")
        );
        all &= out.pass;
        rows.push(json!({ "expected": row, "computed": out }));
    }
    let mut report = Report::new(
        "splitjac/braid-table/v1",
        json!({ "degree": table.degree, "genus_convention": table.genus_convention, "rows": rows, "all_match": all }),
        text,
    );
    report.verified = !check || all;
    Ok(report)
}

pub fn family4(b: &str, locus: bool) -> Result<Report> {
    let b = parse_rational(b)?;
    let m = build_member(&b)?;
    let subcover = verify_subcover_discriminant(&m);
    let mut result = json!({
        "b": b.to_string(),
        "sextic": strings(m.curve().f().coeffs()),
        "delta_c": m.delta_c().to_string(),
        "delta_e": m.delta_e().to_string(),
        "lambda_e": m.lambda().to_string(),
        "subcover_discriminant_matches": subcover,
    });
    let mut text = format!(
        "b = {b}\nf = {}\nDelta_C = {}\nDelta_E = {}\nlambda_E = {}\nsubcover discriminant matches: {subcover}\n",
        render_poly(m.curve().f()),
        m.delta_c(),
        m.delta_e(),
        m.lambda()
    );
    let mut verified = subcover;
    if locus {
        let rep = verify_locus(&m);
        let _ = writeln!(text, "relation residues: {}, {}", rep.residues[0], rep.residues[1]);
        let _ = writeln!(text, "on locus: {}", rep.on_locus);
        verified &= rep.on_locus;
        result["locus"] = serde_json::to_value(&rep).expect("json");
    }
    let mut report = Report::new("splitjac/family4/v1", result, text);
    report.verified = verified;
    Ok(report)
}

fn render_poly(p: &Poly<Rational>) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| **c != Rational::from_integer(0.into()))
        .map(|(i, c)| match i {
            0 => format!("({c})"),
            1 => format!("({c})x"),
            _ => format!("({c})x^{i}"),
        })
        .collect();
    terms.join(" + ")
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let z = parse_gaussian(s)?;
    Ok(Complex64::new(rational_to_f64(&z.re), rational_to_f64(&z.im)))
}

#[derive(Serialize)]
struct SolvedCover {
    instance: splitjac::coversolver::CoverInstance,
    verification: splitjac::coversolver::VerificationReport,
    curve: splitjac::coversolver::EmittedCurve,
}

pub fn cover_solve(
    degree: usize,
    seeds: usize,
    tol: f64,
    max_iter: usize,
    rng: u64,
    s: Option<&str>,
    t: Option<&str>,
) -> Result<Report> {
    let anchors = (
        s.map(parse_complex).transpose()?.unwrap_or(DEFAULT_ANCHORS.0),
        t.map(parse_complex).transpose()?.unwrap_or(DEFAULT_ANCHORS.1),
    );
    let sys = build_system_with(degree, anchors)?;
    let opts = SolveOptions { seeds, tolerance: tol, rng_seed: rng, max_iterations: max_iter };
    let out = solve(&sys, &opts)?;
    let mut solved = Vec::new();
    let mut text = format!(
        "degree {degree}: {} verified covers from {seeds} starts ({} converged)\n",
        out.instances.len(),
        out.converged_starts
    );
    for inst in &out.instances {
        let verification = verify_cover(inst);
        let curve = emit_curve(inst)?;
        let _ = writeln!(
            text,
            "residual {:.2e}  w4 = {:.6}  w5 = {:.6}  w6 = {:.6}  profile {}",
            inst.residual,
            inst.w4,
            inst.w5,
            inst.w6,
            verification.profile.as_ref().map_or("-".into(), |p| p.to_string())
        );
        solved.push(SolvedCover { instance: inst.clone(), verification, curve });
    }
    for (why, k) in &out.discarded {
        let _ = writeln!(text, "discarded {k}: {why}");
    }
    let result = json!({
        "system": sys,
        "options": opts,
        "converged_starts": out.converged_starts,
        "discarded": out.discarded,
        "covers": solved,
    });
    Ok(Report::new("splitjac/cover-solve/v1", result, text))
}

pub fn humbert(tau: &str, height: i64, delta: Option<i128>, tol: f64) -> Result<Report> {
    let p = parse_tau(tau)?;
    let hits = find_relation(&p, height, delta, tol)?;
    let mut text = String::new();
    if let Some(d) = delta {
        let _ = writeln!(text, "Delta = {d}: Humbert surface {}", if humbert_nonempty(d) { "nonempty" } else { "empty" });
    }
    let _ = writeln!(text, "{} relations with height <= {height}", hits.len());
    for h in &hits {
        let _ = writeln!(text, "{}  Delta = {}  residual {:.2e}", h.relation, h.discriminant, h.residual);
    }
    let result = json!({
        "tau": tau,
        "height": height,
        "target_delta": delta,
        "target_nonempty": delta.map(humbert_nonempty),
        "tolerance": tol,
        "relations": hits,
    });
    Ok(Report::new("splitjac/humbert/v1", result, text))
}
