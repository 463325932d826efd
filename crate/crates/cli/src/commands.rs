use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Value};

use pseudoiso::curve::{
    classify_curve, frenet_frame, invariants, is_admissible, is_arclength, lightlike_plane,
    ARC_LENGTH_TOL,
};
use pseudoiso::expr::{eval, eval_jet1, eval_jet2, parse as parse_expr, Ast, Node};
use pseudoiso::revolution::{
    curvature_field, make_revolution, solve_profile, verify_family, Branch, ParamGrid, Profile,
    ProfileFamily, ProfileKind, Stats,
};
use pseudoiso::surface::{fundamental_forms, FundamentalForms};
use pseudoiso::verify::{checks, find_check, run_check, Bound, CheckReport, Measure, SuiteOptions};
use pseudoiso::{causal_class, CausalClass, CurveJet, Error, SurfaceJet, Vec3};

use crate::input;
use crate::mesh::Mesh;
use crate::{
    ClassifyArgs, CliError, CurveArgs, FamilyName, Format, KindName, ParseArgs, RevolveArgs,
    Status, SurfaceArgs, VerifyArgs,
};

type Result<T> = std::result::Result<T, CliError>;

fn expr(text: &str, vars: &[&str]) -> Result<Ast> {
    parse_expr(text, vars).map_err(|e| CliError::parse(text, e))
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Shortest representation that parses back to the same `f64`; `-0.0` prints as `0.0`.
fn num(x: f64) -> String {
    format!("{:?}", x + 0.0)
}

fn curve_jet(text: &str, var: &str, range: &str) -> Result<CurveJet> {
    let [x, y, z] = input::triple(text)?;
    let vars = [var];
    Ok(CurveJet::from_exprs(
        expr(x, &vars)?,
        expr(y, &vars)?,
        expr(z, &vars)?,
        input::range(range)?,
    )?)
}

pub fn classify(a: &ClassifyArgs) -> Result<Status> {
    if let Some(v) = &a.vector {
        let mut comps = [0.0; 3];
        for (c, text) in comps.iter_mut().zip(input::triple(v)?) {
            *c = eval(&expr(text, &[])?, &[]).map_err(Error::from)?;
        }
        println!(
            "{}",
            causal_class(Vec3::try_new(comps[0], comps[1], comps[2])?)
        );
        return Ok(Status::Ok);
    }
    let c = curve_jet(a.curve.as_deref().unwrap_or_default(), &a.var, &a.range)?;
    let class = classify_curve(&c, a.n)?;
    let line = match class {
        CausalClass::Lightlike => {
            let p = lightlike_plane(&c, a.n, a.tol)?;
            let c0 = if p.c0.abs() <= a.tol { 0.0 } else { p.c0 };
            format!(
                "lightlike, plane x{}y={c0}",
                if p.sign > 0 { '+' } else { '-' }
            )
        }
        CausalClass::Isotropic => "isotropic".to_string(),
        _ => {
            let adm = is_admissible(&c, a.n)?;
            let arc = is_arclength(&c, a.n, a.tol)?;
            format!(
                "{class}, {}, {}",
                if adm { "admissible" } else { "not admissible" },
                if arc { "arc-length" } else { "not arc-length" }
            )
        }
    };
    println!("{line}");
    Ok(Status::Ok)
}

pub fn curve(a: &CurveArgs) -> Result<Status> {
    let c = curve_jet(&a.curve, &a.var, &a.range)?;
    let class = classify_curve(&c, a.n)?;
    if !matches!(class, CausalClass::Spacelike | CausalClass::Timelike) {
        return Err(CliError::Precondition(format!(
            "{class} curves have no Frenet frame"
        )));
    }
    if !is_arclength(&c, a.n, ARC_LENGTH_TOL)? {
        return Err(CliError::Precondition(
            "curve is not parameterized by arc length (|<a',a'>| != 1)".to_string(),
        ));
    }
    let mut w = output(&a.out)?;
    writeln!(w, "s,x,y,z,kappa,tau,Tx,Ty,Tz,Nx,Ny,Nz")?;
    let mut partial = false;
    for s in c.sample_params(a.n)? {
        let p = c.eval(s)?;
        let inv = invariants(&c, s)?;
        let t = p.d1;
        write!(
            w,
            "{},{},{},{},{}",
            num(s),
            num(p.pos.x),
            num(p.pos.y),
            num(p.pos.z),
            num(inv.kappa)
        )?;
        match inv.tau {
            Some(tau) => {
                let n = frenet_frame(&c, s)?.n;
                writeln!(
                    w,
                    ",{},{},{},{},{},{},{}",
                    num(tau),
                    num(t.x),
                    num(t.y),
                    num(t.z),
                    num(n.x),
                    num(n.y),
                    num(n.z)
                )?;
            }
            None => {
                partial = true;
                writeln!(w, ",,{},{},{},,,", num(t.x), num(t.y), num(t.z))?;
            }
        }
    }
    w.flush()?;
    if partial {
        eprintln!("warning: curvature vanishes at some samples; tau and N left empty");
        return Ok(Status::Partial);
    }
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct SurfacePointOut {
    params: [f64; 2],
    r: [f64; 3],
    forms: Option<FundamentalForms>,
    #[serde(rename = "K")]
    k: Option<f64>,
    #[serde(rename = "H")]
    h: Option<f64>,
}

pub fn surface(a: &SurfaceArgs) -> Result<Status> {
    let (nu, nv) = input::grid(&a.grid)?;
    let domain = (input::range(&a.range)?, input::range(&a.vrange)?);
    let (sj, names) = match (&a.graph, &a.surface) {
        (Some(g), _) => (
            SurfaceJet::graph_xy(expr(g, &["x", "y"])?, domain),
            vec!["x", "y"],
        ),
        (None, Some(text)) => {
            let names = input::names(&a.vars, 2)?;
            let [x, y, z] = input::triple(text)?;
            let sj = SurfaceJet::from_exprs(
                expr(x, &names)?,
                expr(y, &names)?,
                expr(z, &names)?,
                domain,
            )?;
            (sj, names)
        }
        (None, None) => unreachable!("clap requires one input"),
    };
    let grid = ParamGrid::new(domain.0, domain.1, nu, nv);
    let mut points = Vec::with_capacity(nu * nv);
    for (u, v) in grid.points()? {
        let r = sj.eval(u, v)?.r;
        let forms = match fundamental_forms(&sj, (u, v)) {
            Ok(f) => Some(f),
            Err(Error::DegenerateMetric { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        points.push(SurfacePointOut {
            params: [u, v],
            r: r.to_array(),
            k: forms.map(|f| f.gauss()),
            h: forms.map(|f| f.mean()),
            forms,
        });
    }
    let degenerate = points.iter().filter(|p| p.forms.is_none()).count();
    eprintln!("parameter order: u1 = {}, u2 = {}", names[0], names[1]);

    let mut w = output(&a.out)?;
    match a.format {
        Format::Csv => {
            writeln!(w, "u1,u2,x,y,z,g11,g12,g22,h11,h12,h22,K,H")?;
            for p in &points {
                write!(
                    w,
                    "{},{},{},{},{}",
                    num(p.params[0]),
                    num(p.params[1]),
                    num(p.r[0]),
                    num(p.r[1]),
                    num(p.r[2])
                )?;
                match (p.forms, p.k, p.h) {
                    (Some(f), Some(k), Some(h)) => {
                        for x in [f.g11, f.g12, f.g22, f.h11, f.h12, f.h22, k, h] {
                            write!(w, ",{}", num(x))?;
                        }
                        writeln!(w)?;
                    }
                    _ => writeln!(w, ",,,,,,,,")?,
                }
            }
        }
        Format::Json => {
            let ks: Vec<f64> = points.iter().filter_map(|p| p.k).collect();
            let hs: Vec<f64> = points.iter().filter_map(|p| p.h).collect();
            let doc = json!({
                "parameter_order": names,
                "grid": grid,
                "K_stats": Stats::of(&ks),
                "H_stats": Stats::of(&hs),
                "degenerate_points": degenerate,
                "points": points,
            });
            serde_json::to_writer_pretty(&mut w, &doc)?;
            writeln!(w)?;
        }
        Format::Obj => {
            let verts = points
                .iter()
                .map(|p| Vec3::new(p.r[0], p.r[1], p.r[2]))
                .collect();
            Mesh::grid(verts, nu, nv).write_obj(&mut w)?;
        }
    }
    w.flush()?;
    if degenerate > 0 {
        eprintln!("warning: {degenerate} points have a degenerate (lightlike) tangent plane");
        return Ok(Status::Partial);
    }
    Ok(Status::Ok)
}

fn family(a: &RevolveArgs, name: FamilyName) -> ProfileFamily {
    let (c1, c2) = (a.c1, a.c2);
    match name {
        FamilyName::Flat => ProfileFamily::Flat { c1, c2 },
        FamilyName::Minimal => ProfileFamily::Minimal { c1, c2 },
        FamilyName::ParabolicSphere => ProfileFamily::ParabolicSphere { c1, c2 },
        FamilyName::ConstantH => ProfileFamily::ConstantH { h0: a.h0, c1, c2 },
        FamilyName::ConstantK => ProfileFamily::ConstantK {
            k0: a.k0,
            c1,
            c2,
            branch: if a.descending {
                Branch::Descending
            } else {
                Branch::Ascending
            },
        },
    }
}

#[derive(Serialize)]
struct RevolveSummary {
    family: String,
    params: BTreeMap<String, Value>,
    kind: &'static str,
    grid: ParamGrid,
    #[serde(rename = "K_stats")]
    k_stats: Option<Stats>,
    #[serde(rename = "H_stats")]
    h_stats: Option<Stats>,
    #[serde(rename = "max_abs_K_minus_K0")]
    max_abs_k_minus_k0: Option<f64>,
    #[serde(rename = "max_abs_H_minus_H0")]
    max_abs_h_minus_h0: Option<f64>,
    #[serde(rename = "max_abs_H2_minus_K")]
    max_abs_h2_minus_k: Option<f64>,
    negative_control: Option<f64>,
    extension: bool,
    tolerance: Option<f64>,
    pass: Option<bool>,
    vertices: usize,
    faces: usize,
}

pub fn revolve(a: &RevolveArgs) -> Result<Status> {
    let (nu, nv) = input::grid(&a.grid)?;
    let (ur, vr) = (input::range(&a.range)?, input::range(&a.vrange)?);
    let grid = ParamGrid::new(ur, vr, nu, nv);

    let (profile, fam) = match (a.family, &a.profile) {
        (Some(name), _) => {
            let fam = family(a, name);
            (solve_profile(&fam, ur)?, Some(fam))
        }
        (None, Some(text)) => {
            let kind = match a.kind {
                KindName::Spacelike => ProfileKind::Spacelike,
                KindName::Timelike => ProfileKind::Timelike,
            };
            (Profile::new(expr(text, &["u"])?, ur, kind)?, None)
        }
        (None, None) => unreachable!("clap requires one source"),
    };
    let report = fam.map(|f| verify_family(&f, &grid, a.tol));
    if let Some(e) = report.as_ref().and_then(|r| r.error.clone()) {
        return Err(CliError::Precondition(e));
    }

    let sj = make_revolution(&profile, vr);
    let field = curvature_field(&sj, &grid)?;
    let mut verts = Vec::with_capacity(field.len());
    for r in &field {
        verts.push(sj.eval(r[0], r[1])?.r);
    }
    let ks: Vec<f64> = field.iter().map(|r| r[2]).collect();
    let hs: Vec<f64> = field.iter().map(|r| r[3]).collect();
    let mesh = Mesh::grid(verts, nu, nv)
        .with_scalar("K", ks.clone())
        .with_scalar("H", hs.clone());
    if !mesh.is_valid() {
        return Err(CliError::Precondition(
            "mesh has non-finite vertices".to_string(),
        ));
    }
    if a.out.is_some() {
        let mut w = output(&a.out)?;
        mesh.write_obj(&mut w)?;
        w.flush()?;
    }
    if a.vertex_data.is_some() {
        let mut w = output(&a.vertex_data)?;
        mesh.write_vertex_csv(&mut w)?;
        w.flush()?;
    }

    let params: BTreeMap<String, Value> = match (&fam, &a.profile) {
        (Some(f), _) => f
            .params()
            .into_iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect(),
        (None, Some(text)) => BTreeMap::from([("f".to_string(), json!(text))]),
        (None, None) => BTreeMap::new(),
    };
    let summary = RevolveSummary {
        family: fam.map_or("explicit", |f| f.name()).to_string(),
        params,
        kind: match profile.kind {
            ProfileKind::Spacelike => "spacelike",
            ProfileKind::Timelike => "timelike",
        },
        grid,
        k_stats: Stats::of(&ks),
        h_stats: Stats::of(&hs),
        max_abs_k_minus_k0: report.as_ref().and_then(|r| r.max_abs_k_minus_k0),
        max_abs_h_minus_h0: report.as_ref().and_then(|r| r.max_abs_h_minus_h0),
        max_abs_h2_minus_k: report.as_ref().and_then(|r| r.max_abs_h2_minus_k),
        negative_control: report.as_ref().and_then(|r| r.negative_control),
        extension: report.as_ref().is_some_and(|r| r.extension),
        tolerance: report.as_ref().map(|r| r.tolerance),
        pass: report.as_ref().map(|r| r.pass),
        vertices: mesh.vertices.len(),
        faces: mesh.quads.len(),
    };
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &summary)?;
    writeln!(out)?;
    Ok(if summary.pass == Some(false) {
        Status::VerificationFailed
    } else {
        Status::Ok
    })
}

#[derive(Serialize)]
struct CheckOut<'a> {
    id: usize,
    name: &'a str,
    reference: &'a str,
    measured: Option<f64>,
    tolerance: Option<f64>,
    pass: bool,
    error: Option<&'a str>,
    measures: &'a [Measure],
}

impl<'a> From<&'a CheckReport> for CheckOut<'a> {
    fn from(r: &'a CheckReport) -> Self {
        let worst = r.worst();
        CheckOut {
            id: r.id,
            name: r.name,
            reference: r.reference,
            measured: worst.map(|m| m.measured),
            tolerance: worst.map(|m| m.tolerance),
            pass: r.pass,
            error: r.error.as_deref(),
            measures: &r.measures,
        }
    }
}

pub fn verify(a: &VerifyArgs) -> Result<Status> {
    if a.suite != "paper" {
        return Err(CliError::Precondition(format!(
            "unknown suite `{}` (available: paper)",
            a.suite
        )));
    }
    if a.list {
        for c in checks() {
            println!("{:>2} {:<28} {}", c.id, c.name, c.reference);
        }
        return Ok(Status::Ok);
    }
    if let Some(t) = a.tol {
        if t.is_nan() || t <= 0.0 {
            return Err(CliError::Precondition(format!(
                "tolerance must be positive, got {t}"
            )));
        }
    }
    let selected: Vec<_> = if a.checks.is_empty() {
        checks().iter().collect()
    } else {
        a.checks
            .iter()
            .map(|n| {
                find_check(n).ok_or_else(|| CliError::Precondition(format!("unknown check `{n}`")))
            })
            .collect::<Result<_>>()?
    };
    let opts = SuiteOptions {
        seed: a.seed,
        tol: a.tol,
    };
    let reports: Vec<CheckReport> = selected.iter().map(|c| run_check(c, &opts)).collect();
    for r in &reports {
        let worst = r.worst();
        let detail = match (worst, &r.error) {
            (_, Some(e)) => format!("error: {e}"),
            (Some(m), None) => {
                let op = if m.bound == Bound::Below { '<' } else { '>' };
                format!("{}: {:.3e} {op} {:.0e}", m.label, m.measured, m.tolerance)
            }
            (None, None) => String::new(),
        };
        eprintln!(
            "{} {:>2} {}  {detail}",
            if r.pass { "PASS" } else { "FAIL" },
            r.id,
            r.name
        );
    }
    let pass = reports.iter().all(|r| r.pass);
    let doc = json!({
        "suite": a.suite,
        "seed": a.seed,
        "tolerance_override": a.tol,
        "pass": pass,
        "checks": reports.iter().map(CheckOut::from).collect::<Vec<_>>(),
    });
    let mut w = output(&a.out)?;
    serde_json::to_writer_pretty(&mut w, &doc)?;
    writeln!(w)?;
    w.flush()?;
    Ok(if pass {
        Status::Ok
    } else {
        Status::VerificationFailed
    })
}

fn dump(node: &Node, vars: &[String], depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match node {
        Node::Const(c) => out.push_str(&format!("{pad}Const {c:?}\n")),
        Node::Var(i) => out.push_str(&format!("{pad}Var {}\n", vars[*i])),
        Node::Unary(op, child) => {
            let name = match op {
                pseudoiso::expr::UnaryOp::Neg => "neg",
                f => f.name(),
            };
            out.push_str(&format!("{pad}Unary {name}\n"));
            dump(child, vars, depth + 1, out);
        }
        Node::Binary(op, l, r) => {
            out.push_str(&format!("{pad}Binary {}\n", op.symbol()));
            dump(l, vars, depth + 1, out);
            dump(r, vars, depth + 1, out);
        }
        Node::Pow(base, p) => {
            out.push_str(&format!("{pad}Pow {p:?}\n"));
            dump(base, vars, depth + 1, out);
        }
    }
}

pub fn parse(a: &ParseArgs) -> Result<Status> {
    let vars: Vec<&str> = if a.vars.trim().is_empty() {
        Vec::new()
    } else {
        a.vars.split(',').map(str::trim).collect()
    };
    let ast = expr(&a.expr, &vars)?;
    let mut tree = String::new();
    dump(&ast.root, &ast.vars, 0, &mut tree);
    println!("{ast}");
    print!("{tree}");
    if let Some(at) = &a.at {
        let point = at
            .split(',')
            .map(input::number)
            .collect::<pseudoiso::Result<Vec<f64>>>()?;
        if point.len() != vars.len() {
            return Err(CliError::Precondition(format!(
                "--at has {} coordinates for {} variables",
                point.len(),
                vars.len()
            )));
        }
        match point[..] {
            [] => println!("value {}", num(eval(&ast, &[]).map_err(Error::from)?)),
            [s] => {
                let j = eval_jet1(&ast, s, 3).map_err(Error::from)?;
                println!(
                    "value {} d1 {} d2 {} d3 {}",
                    num(j.value),
                    num(j.d1),
                    num(j.d2),
                    num(j.d3)
                );
            }
            [u, v] => {
                let j = eval_jet2(&ast, u, v).map_err(Error::from)?;
                println!(
                    "value {} du {} dv {} duu {} duv {} dvv {}",
                    num(j.value),
                    num(j.du),
                    num(j.dv),
                    num(j.duu),
                    num(j.duv),
                    num(j.dvv)
                );
            }
            _ => {
                return Err(CliError::Precondition(
                    "derivatives are available for at most two variables".to_string(),
                ))
            }
        }
    }
    Ok(Status::Ok)
}
