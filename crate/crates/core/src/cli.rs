//! The `toricdeg` command line: JSON in, a JSON envelope (or text/CSV) out.
//!
//! Exit codes: 0 when the check passes, 1 when it finds violations, 2 on
//! malformed input or a failed computation.

use std::ffi::OsString;
use std::io::Read;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::complex::simplicity::DEFAULT_FAMILY_BOUND;
use crate::complex::{
    is_simple_bounded, mpl_check, validate_complex, MPLFunction, PolyCellComplex,
};
use crate::error::{Error, Result};
use crate::fibration::{fiber_class, k3_run, BasePoint, K3Report};
use crate::gluing::{
    check_lifted_cocycle, check_open_gluing, is_coboundary, CoboundaryResult, OpenGluingViolation,
};
use crate::io::{
    cochain_json, cone_json, int_json, matrix_json, parse, point_json, points_json, polytope_json,
    torus_json, ComplexWire, ConeWire, GluingWire, KnWire, LogWire, MonoidWire,
};
use crate::monoid::{ToricMonoid, DEFAULT_WORD_BOUND};
use crate::poly::k3_quartic;
use crate::toric::{kn_descriptor, BaseRegion, LogKind, ToricVarietyModel};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "toricdeg",
    version,
    about = "Exact checks on toric degenerations and their affine base complexes"
)]
pub struct Cli {
    /// Omit timing so that identical inputs give byte-identical output.
    #[arg(long, global = true)]
    pub canonical: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Group,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Io {
    /// Input JSON file, `-` for stdin.
    #[arg(long = "in", value_name = "PATH")]
    pub input: String,

    /// Output file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Group {
    /// Presented monoids.
    Monoid {
        #[command(subcommand)]
        action: MonoidCmd,
    },
    /// Rational polyhedral cones.
    Cone {
        #[command(subcommand)]
        action: ConeCmd,
    },
    /// Kato–Nakayama descriptors of toric varieties.
    Kn {
        #[command(subcommand)]
        action: KnCmd,
    },
    /// Polyhedral complexes with affine structure.
    Complex {
        #[command(subcommand)]
        action: ComplexCmd,
    },
    /// Open and lifted gluing data.
    Gluing {
        #[command(subcommand)]
        action: GluingCmd,
    },
    /// The quartic K3 degeneration.
    K3 {
        #[command(subcommand)]
        action: K3Cmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum MonoidCmd {
    /// Integral, fine, saturated and toric flags with witnesses.
    Classify {
        #[command(flatten)]
        io: Io,
        /// Word-length bound for the integrality search.
        #[arg(long, default_value_t = DEFAULT_WORD_BOUND)]
        word_bound: usize,
    },
    /// Hilbert basis of a toric presented monoid.
    Hilbert {
        #[command(flatten)]
        io: Io,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConeCmd {
    Dual {
        #[command(flatten)]
        io: Io,
    },
}

#[derive(Subcommand, Debug)]
pub enum KnCmd {
    Describe {
        #[command(flatten)]
        io: Io,
    },
}

#[derive(Subcommand, Debug)]
pub enum ComplexCmd {
    Validate {
        #[command(flatten)]
        io: Io,
    },
    Monodromy {
        #[command(flatten)]
        io: Io,
    },
    Positive {
        #[command(flatten)]
        io: Io,
    },
    SimpleCheck {
        #[command(flatten)]
        io: Io,
        /// Largest number of family assignments tried per cell.
        #[arg(long, default_value_t = DEFAULT_FAMILY_BOUND)]
        bound: usize,
    },
    MplCheck {
        #[command(flatten)]
        io: Io,
        /// Kink on every codimension-one cell when the input lists none.
        #[arg(long, default_value_t = 1)]
        kink: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum GluingCmd {
    Check {
        #[command(flatten)]
        io: Io,
    },
    Trivialize {
        #[command(flatten)]
        io: Io,
    },
}

#[derive(Subcommand, Debug)]
pub enum K3Cmd {
    Run {
        /// Write the JSON report here (`-` for stdout).
        #[arg(long, value_name = "PATH")]
        json: Option<String>,
        /// Write the discriminant points as CSV.
        #[arg(long, value_name = "PATH")]
        csv: Option<String>,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A computed report before formatting.
struct Report {
    command: &'static str,
    pass: bool,
    body: Value,
    csv: Option<Vec<Vec<String>>>,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_input(path: &str) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    if path == "-" {
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Error::Invalid(format!("stdin: {e}")))?;
    } else {
        buf = std::fs::read(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
    }
    Ok(buf)
}

fn text_of(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes)
        .map_err(|e| Error::Invalid(format!("malformed JSON: input is not UTF-8 ({e})")))
}

fn write_output(path: Option<&str>, content: &str, stdout: &mut String) -> Result<()> {
    match path {
        None | Some("-") => stdout.push_str(content),
        Some(p) => std::fs::write(p, content).map_err(|e| Error::Invalid(format!("{p}: {e}")))?,
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let start = Instant::now();
    let (io, report, digest) = match &cli.command {
        Group::K3 {
            action: K3Cmd::Run { json, csv },
        } => {
            let digest = hex::encode(Sha256::digest(
                format!("{:?}", k3_quartic().terms()).as_bytes(),
            ));
            let report = k3_report(&k3_run()?);
            let mut stdout = String::new();
            if let Some(path) = csv {
                write_output(
                    Some(path),
                    &render_csv(report.csv.as_deref().unwrap_or_default())?,
                    &mut stdout,
                )?;
            }
            let env = envelope(cli, &report, &digest, start);
            match json {
                Some(path) => write_output(Some(path), &pretty(&env), &mut stdout)?,
                None if csv.is_none() || cli.format != Format::Json => {
                    stdout.push_str(&format_report(cli.format, &report, &env)?)
                }
                None => {}
            }
            let code = if report.pass { EXIT_PASS } else { EXIT_FAIL };
            return Ok(Outcome {
                code,
                stdout,
                stderr: String::new(),
            });
        }
        Group::Monoid {
            action: MonoidCmd::Classify { io, word_bound },
        } => {
            let (bytes, digest) = load(io)?;
            (
                io,
                monoid_classify(&parse(text_of(&bytes)?)?, *word_bound)?,
                digest,
            )
        }
        Group::Monoid {
            action: MonoidCmd::Hilbert { io },
        } => {
            let (bytes, digest) = load(io)?;
            (io, monoid_hilbert(&parse(text_of(&bytes)?)?)?, digest)
        }
        Group::Cone {
            action: ConeCmd::Dual { io },
        } => {
            let (bytes, digest) = load(io)?;
            (io, cone_dual(&parse(text_of(&bytes)?)?)?, digest)
        }
        Group::Kn {
            action: KnCmd::Describe { io },
        } => {
            let (bytes, digest) = load(io)?;
            (io, kn_describe(&parse(text_of(&bytes)?)?)?, digest)
        }
        Group::Complex { action } => {
            let io = match action {
                ComplexCmd::Validate { io }
                | ComplexCmd::Monodromy { io }
                | ComplexCmd::Positive { io }
                | ComplexCmd::SimpleCheck { io, .. }
                | ComplexCmd::MplCheck { io, .. } => io,
            };
            let (bytes, digest) = load(io)?;
            let wire: ComplexWire = parse(text_of(&bytes)?)?;
            let c = wire.to_complex()?;
            let report = match action {
                ComplexCmd::Validate { .. } => complex_validate(&c),
                ComplexCmd::Monodromy { .. } => complex_monodromy(&c)?,
                ComplexCmd::Positive { .. } => complex_positive(&c)?,
                ComplexCmd::SimpleCheck { bound, .. } => complex_simple(&c, *bound)?,
                ComplexCmd::MplCheck { kink, .. } => {
                    let phi = match wire.to_mpl(&c)? {
                        Some(phi) => phi,
                        None => MPLFunction::constant(&c, *kink)?,
                    };
                    complex_mpl(&c, &phi)?
                }
            };
            (io, report, digest)
        }
        Group::Gluing { action } => {
            let (GluingCmd::Check { io } | GluingCmd::Trivialize { io }) = action;
            let (bytes, digest) = load(io)?;
            let wire: GluingWire = parse(text_of(&bytes)?)?;
            let report = match action {
                GluingCmd::Check { .. } => gluing_check(&wire)?,
                GluingCmd::Trivialize { .. } => gluing_trivialize(&wire)?,
            };
            (io, report, digest)
        }
    };
    let env = envelope(cli, &report, &digest, start);
    let mut stdout = String::new();
    write_output(
        io.out.as_deref(),
        &format_report(cli.format, &report, &env)?,
        &mut stdout,
    )?;
    Ok(Outcome {
        code: if report.pass { EXIT_PASS } else { EXIT_FAIL },
        stdout,
        stderr: String::new(),
    })
}

fn load(io: &Io) -> Result<(Vec<u8>, String)> {
    let bytes = read_input(&io.input)?;
    let digest = hex::encode(Sha256::digest(&bytes));
    Ok((bytes, digest))
}

fn envelope(cli: &Cli, r: &Report, digest: &str, start: Instant) -> Value {
    let mut env = json!({
        "tool": "toricdeg",
        "version": env!("CARGO_PKG_VERSION"),
        "command": r.command,
        "input_sha256": digest,
        "verdict": if r.pass { "pass" } else { "fail" },
        "report": r.body,
    });
    if !cli.canonical {
        env["timing_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    env
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn format_report(format: Format, r: &Report, env: &Value) -> Result<String> {
    match format {
        Format::Json => Ok(pretty(env)),
        Format::Text => {
            let mut s = format!("{}: {}\n", r.command, if r.pass { "pass" } else { "fail" });
            if let Value::Object(m) = &r.body {
                for (k, v) in m {
                    let shown = match v {
                        Value::Array(a) => format!("{} entries", a.len()),
                        Value::Object(_) => "{...}".to_string(),
                        other => other.to_string(),
                    };
                    s.push_str(&format!("  {k}: {shown}\n"));
                }
            }
            Ok(s)
        }
        Format::Csv => match &r.csv {
            Some(rows) => render_csv(rows),
            None => Err(Error::Invalid(format!("`{}` has no CSV output", r.command))),
        },
    }
}

fn render_csv(rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(row)
            .map_err(|e| Error::Invalid(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8 records"))
}

fn monoid_classify(w: &MonoidWire, bound: usize) -> Result<Report> {
    let m = w.to_monoid()?;
    let c = m.classify(bound);
    let body = json!({
        "integral": c.integral,
        "fine": c.fine,
        "saturated": c.saturated,
        "toric": c.toric,
        "non_integral_witness": c.non_integral_witness.as_ref().map(|(a, b)| json!([
            a.iter().map(int_json).collect::<Vec<_>>(),
            b.iter().map(int_json).collect::<Vec<_>>(),
        ])),
        "non_saturated_witness": c.non_saturated_witness.as_ref().map(|(p, k)| json!({"point": point_json(p), "multiple": k})),
        "torsion": c.torsion.iter().map(int_json).collect::<Vec<_>>(),
    });
    Ok(Report {
        command: "monoid classify",
        pass: c.toric.is_true(),
        body,
        csv: None,
    })
}

fn monoid_hilbert(w: &MonoidWire) -> Result<Report> {
    let m = ToricMonoid::from_presented(&w.to_monoid()?)?;
    let body = json!({
        "rank": m.rank(),
        "sharp": m.is_sharp(),
        "hilbert_basis": points_json(m.hilbert_basis()),
        "units": points_json(m.units()),
    });
    Ok(Report {
        command: "monoid hilbert",
        pass: true,
        body,
        csv: None,
    })
}

fn cone_dual(w: &ConeWire) -> Result<Report> {
    let c = w.to_cone()?;
    let d = c.dual();
    let inside = |a: &crate::polyhedra::RationalCone, b: &crate::polyhedra::RationalCone| {
        a.rays().iter().chain(a.lineality()).all(|x| b.contains(x))
            && a.lineality().iter().all(|x| b.contains(&-x))
    };
    let self_dual = inside(&c, &d) && inside(&d, &c);
    let body = json!({"dual": cone_json(&d), "self_dual": self_dual});
    Ok(Report {
        command: "cone dual",
        pass: true,
        body,
        csv: None,
    })
}

fn kn_describe(w: &KnWire) -> Result<Report> {
    let log = match w.log {
        LogWire::ToricBoundary => LogKind::ToricBoundary,
        LogWire::Trivial => LogKind::Trivial,
    };
    let m = match (&w.polytope, &w.cone, &w.fan) {
        (Some(p), None, None) => ToricVarietyModel::projective(&p.to_polytope()?, log)?,
        (None, Some(c), None) => ToricVarietyModel::affine(&c.to_cone()?, log),
        (None, None, Some(f)) => ToricVarietyModel::from_fan(f.to_fan()?, log),
        _ => {
            return Err(Error::Invalid(
                "give exactly one of `polytope`, `cone`, `fan`".into(),
            ))
        }
    };
    let d = kn_descriptor(&m)?;
    let base = match &d.base {
        BaseRegion::Cone(c) => json!({"cone": cone_json(c)}),
        BaseRegion::Polytope(p) => json!({"polytope": polytope_json(p)}),
    };
    let fibers: Vec<Value> = d
        .fibers
        .iter()
        .map(|(s, r)| json!({"stratum": s, "rank": r}))
        .collect();
    let body = json!({"base": base, "torus_rank": d.torus_rank, "fibers": fibers});
    Ok(Report {
        command: "kn describe",
        pass: true,
        body,
        csv: None,
    })
}

fn complex_validate(c: &PolyCellComplex) -> Report {
    let r = validate_complex(c);
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| json!({"kind": format!("{:?}", v.kind), "cells": v.cells, "detail": v.detail}))
        .collect();
    let body = json!({"valid": r.is_valid(), "f_vector": c.f_vector(), "violations": violations});
    Report {
        command: "complex validate",
        pass: r.is_valid(),
        body,
        csv: None,
    }
}

fn complex_monodromy(c: &PolyCellComplex) -> Result<Report> {
    let mut edges = Vec::new();
    let mut rows = vec![vec![
        "omega".to_string(),
        "rho".to_string(),
        "kappa".to_string(),
    ]];
    for (&(omega, rho), kappa) in &c.kappas()? {
        let ov = &c.cell(omega).vertices;
        let ms = &c.cell(rho).max_cells;
        let t = c.monodromy_loop(omega, rho, ov[0], ov[1], ms[0], ms[1])?;
        edges.push(json!({
            "omega": ov,
            "rho": c.cell(rho).vertices,
            "kappa": int_json(kappa),
            "matrix": matrix_json(&t.matrix),
            "d": point_json(&t.d),
            "d_check": point_json(&t.d_check),
            "chart": c.max_cells()[t.chart].vertices,
        }));
        rows.push(vec![
            format!("{ov:?}"),
            format!("{:?}", c.cell(rho).vertices),
            kappa.to_string(),
        ]);
    }
    Ok(Report {
        command: "complex monodromy",
        pass: true,
        body: json!({"monodromy": edges}),
        csv: Some(rows),
    })
}

fn complex_positive(c: &PolyCellComplex) -> Result<Report> {
    let neg: Vec<Value> = c
        .negative_kappas()?
        .iter()
        .map(|((o, r), k)| json!({"omega": c.cell(*o).vertices, "rho": c.cell(*r).vertices, "kappa": int_json(k)}))
        .collect();
    let positive = neg.is_empty();
    Ok(Report {
        command: "complex positive",
        pass: positive,
        body: json!({"positive": positive, "negative": neg}),
        csv: None,
    })
}

fn complex_simple(c: &PolyCellComplex, bound: usize) -> Result<Report> {
    let r = is_simple_bounded(c, bound)?;
    let failing: Vec<Value> = r
        .failing
        .iter()
        .map(|(t, why)| json!({"cell": c.cell(*t).vertices, "reason": why}))
        .collect();
    let body = json!({
        "simple": r.simple,
        "positive": r.positive,
        "per_point_simple": r.per_point_simple,
        "certified_cells": r.certificates.len(),
        "failing": failing,
    });
    Ok(Report {
        command: "complex simple-check",
        pass: r.simple,
        body,
        csv: None,
    })
}

fn complex_mpl(c: &PolyCellComplex, phi: &MPLFunction) -> Result<Report> {
    let r = mpl_check(c, phi)?;
    let failing: Vec<Value> = r
        .failing
        .iter()
        .map(|(t, res)| json!({"cell": c.cell(*t).vertices, "residual": point_json(res)}))
        .collect();
    Ok(Report {
        command: "complex mpl-check",
        pass: r.passes,
        body: json!({"passes": r.passes, "failing": failing}),
        csv: None,
    })
}

fn open_violation_json(c: &PolyCellComplex, v: &OpenGluingViolation) -> Value {
    let verts = |i: usize| c.cell(i).vertices.clone();
    match v {
        OpenGluingViolation::NotInPM {
            tau,
            sigma,
            omega,
            v,
            w,
        } => {
            json!({"kind": "not-in-pm", "tau": verts(*tau), "sigma": verts(*sigma), "omega": verts(*omega), "vertices": [v, w]})
        }
        OpenGluingViolation::Identity { tau } => json!({"kind": "identity", "tau": verts(*tau)}),
        OpenGluingViolation::Composition {
            tau,
            mid,
            top,
            max_cell,
            vertex,
        } => json!({
            "kind": "composition",
            "tau": verts(*tau),
            "mid": verts(*mid),
            "top": verts(*top),
            "max_cell": c.max_cells()[*max_cell].vertices,
            "vertex": vertex,
        }),
    }
}

fn gluing_check(w: &GluingWire) -> Result<Report> {
    let c = w.complex.to_complex()?;
    let open = w.to_open(&c)?;
    let lifted = w.to_lifted(&c)?;
    if open.is_none() && lifted.is_none() {
        return Err(Error::Invalid(
            "gluing file has neither `open` nor `lifted` data".into(),
        ));
    }
    let mut body = json!({});
    let mut pass = true;
    if let Some(g) = open {
        let r = check_open_gluing(&c, &g)?;
        pass &= r.valid;
        let vs: Vec<Value> = r
            .violations
            .iter()
            .map(|v| open_violation_json(&c, v))
            .collect();
        body["open"] = json!({"valid": r.valid, "violations": vs});
    }
    if let Some(l) = lifted {
        let r = check_lifted_cocycle(&c, &l)?;
        pass &= r.cocycle;
        let verts = |i: usize| c.cell(i).vertices.clone();
        let triples: Vec<Value> = r
            .triple_violations
            .iter()
            .map(|&(a, b, t)| json!([verts(a), verts(b), verts(t)]))
            .collect();
        let inv: Vec<Value> = r
            .invariance_violations
            .iter()
            .map(|&(a, b)| json!([verts(a), verts(b)]))
            .collect();
        body["lifted"] = json!({"cocycle": r.cocycle, "triple_violations": triples, "invariance_violations": inv});
    }
    Ok(Report {
        command: "gluing check",
        pass,
        body,
        csv: None,
    })
}

fn gluing_trivialize(w: &GluingWire) -> Result<Report> {
    let c = w.complex.to_complex()?;
    let l = w
        .to_lifted(&c)?
        .ok_or_else(|| Error::Invalid("`gluing trivialize` needs `lifted` data".into()))?;
    let (pass, body) = match is_coboundary(&c, &l)? {
        CoboundaryResult::Trivialized(t) => (
            true,
            json!({"coboundary": true, "cochain": cochain_json(&c, &t)}),
        ),
        CoboundaryResult::Obstructed {
            edge: (o, t),
            ratio,
        } => (
            false,
            json!({"coboundary": false, "obstruction": {"omega": c.cell(o).vertices, "tau": c.cell(t).vertices, "ratio": torus_json(&ratio)}}),
        ),
    };
    Ok(Report {
        command: "gluing trivialize",
        pass,
        body,
        csv: None,
    })
}

fn k3_report(r: &K3Report) -> Report {
    let c = r.cy.complex();
    let mut rows = vec![["edge", "root", "momentum", "charge", "fiber_class"]
        .map(String::from)
        .to_vec()];
    let mut edges = Vec::new();
    let mut mark = 0;
    for e in &r.edges {
        let (i, j) = e.coords;
        let id = format!("X{i}X{j}");
        let mut roots = Vec::new();
        for x in &e.roots {
            let class = fiber_class(&r.cy, BasePoint::Mark(mark))
                .map(|f| f.to_string())
                .unwrap_or_else(|e| e.to_string());
            mark += 1;
            rows.push(vec![
                id.clone(),
                x.exact.to_string(),
                format!("{}", x.momentum),
                x.charge.to_string(),
                class.clone(),
            ]);
            roots.push(json!({"root": x.exact.to_string(), "factor": x.factor.to_string(), "momentum": x.momentum, "charge": x.charge, "fiber_class": class}));
        }
        edges.push(json!({
            "edge": id,
            "vertices": c.cell(e.cell).vertices,
            "restriction": e.restriction.univariate.to_string(),
            "factorization": e.factorization.to_string(),
            "real_roots": e.real_roots,
            "roots": roots,
        }));
    }
    let splitting = r.splitting.iter().all(|s| s.holds());
    let pass = r.validation.is_valid()
        && r.positive
        && r.mpl.passes
        && splitting
        && r.charges_match_kappa()
        && r.fibration.euler_characteristic.is_some();
    let kappas: Vec<Value> = r
        .kappas
        .iter()
        .map(|(e, k)| json!({"edge": c.cell(*e).vertices, "kappa": int_json(k)}))
        .collect();
    let body = json!({
        "discriminant_count": r.discriminant_count,
        "edges": edges,
        "valid": r.validation.is_valid(),
        "positive": r.positive,
        "kappas": kappas,
        "charges_match_kappa": r.charges_match_kappa(),
        "mpl_passes": r.mpl.passes,
        "splitting_rank_holds": splitting,
        "euler_characteristic": r.fibration.euler_characteristic,
    });
    Report {
        command: "k3 run",
        pass,
        body,
        csv: Some(rows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(a: &[&str]) -> Outcome {
        run(std::iter::once("toricdeg").chain(a.iter().copied()))
    }

    #[test]
    fn k3_json_to_stdout() {
        let o = run_args(&["--canonical", "k3", "run", "--json", "-"]);
        assert_eq!(o.code, EXIT_PASS, "{}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["report"]["discriminant_count"], 24);
        assert_eq!(v["report"]["euler_characteristic"], 24);
        assert!(v.get("timing_ms").is_none());
    }

    #[test]
    fn k3_csv() {
        let o = run_args(&["--format", "csv", "k3", "run"]);
        assert_eq!(o.code, EXIT_PASS);
        let lines: Vec<&str> = o.stdout.lines().collect();
        assert_eq!(lines.len(), 25);
        assert!(lines[0].starts_with("edge,root,momentum"));
        assert!(o.stdout.contains("(3+√5)/2"));
    }

    #[test]
    fn unknown_flags_and_missing_files_exit_2() {
        assert_eq!(
            run_args(&["cone", "dual", "--in", "x.json", "--bogus"]).code,
            EXIT_INPUT
        );
        assert_eq!(
            run_args(&["cone", "dual", "--in", "/nonexistent/x.json"]).code,
            EXIT_INPUT
        );
        assert_eq!(run_args(&["frobnicate"]).code, EXIT_INPUT);
        assert_eq!(run_args(&["--help"]).code, EXIT_PASS);
    }
}
