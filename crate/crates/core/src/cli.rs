//! Argument parsing and dispatch for the `virfuse` binary.

use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bpz::{left_trace_check, rigidity_routes, ROUTE_TOL, TRACE_TOL};
use crate::error::{Error, Result};
use crate::fuscat::{cat_dim, loewy, ss_tensor, tensor, Decomp, LoewyData, ModuleLabel};
use crate::oracle::check_ring_axioms;
use crate::report::{CheckSummary, Failure, Report};
use crate::scalars::Rat;
use crate::triplet::{
    check_monoidal, induce, restrict, triplet_loewy, triplet_tensor_sourced, Source, TripletDecomp,
    TripletLabel,
};
use crate::verma::{embedding_chain, gram_det, gram_matrix, singular_vectors, CentralData};
use crate::zhu::{logarithmic_flag, top_level_spectrum, BimodPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "virfuse",
    version,
    about = "Fusion rules and Verma-module data for the Virasoro category at c = 13 - 6p - 6/p"
)]
pub struct Cli {
    /// The integer p >= 2 fixing the central charge.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
    pub p: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// General fusion rules theorem: decomposes the product of two modules
    /// L:r,s / P:r,s. W:r,s / R:r,s labels use the triplet fusion rules
    /// theorem.
    Fuse { a: String, b: String },
    /// Categorical dimension theorem: dim L_{r,s} in Z[q], q = e^{iπ/p}.
    Dim { a: String },
    /// Structure theorem for projective covers: socle, middle and head
    /// layers of P:r,s or R:r,s.
    Loewy { a: String },
    /// Zhu algebra bimodule theorem: the relation f(x, y) for a generator,
    /// and the lowest conformal weights of its product with a target.
    Zhu {
        generator: String,
        target: Option<String>,
    },
    /// Feigin-Fuchs embedding theorem: singular vectors of the Verma module
    /// of weight h_{r,s} at level rs.
    Singular { a: String },
    /// Kac determinant formula: Gram matrix of the Shapovalov form at a
    /// weight (a rational or L:r,s) and level.
    Gram { h: String, level: u32 },
    /// Feigin-Fuchs embedding theorem: the chain of singular weights below
    /// h_{r,s}.
    Chain {
        a: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Induction theorem for the triplet algebra W(p).
    Induce { a: String },
    /// Decomposition theorem for W(p)-modules as Virasoro modules.
    Restrict {
        a: String,
        #[arg(long, default_value_t = 3)]
        cutoff: u32,
    },
    /// Semisimplification theorem: products modulo negligible objects.
    Ss { a: String, b: String },
    /// Fusion ring consistency: commutativity, unit, associativity,
    /// recursive oracle, dimension multiplicativity and the triplet
    /// induction being monoidal.
    Verify {
        #[arg(long, default_value_t = 4)]
        rmax: u32,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Rigidity theorem for L_{1,2}: the BPZ equation, its connection
    /// coefficients and the left trace e∘i = -2cos(π/p).
    Bpz,
}

/// Exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn domain(e: &Error) -> Self {
        Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("virfuse: {e}\n"),
        }
    }

    fn failed(report: String, summary: String) -> Self {
        Outcome {
            code: 2,
            stdout: report,
            stderr: summary,
        }
    }
}

pub fn dispatch<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(e.to_string()),
                _ => {
                    let msg = e.to_string();
                    let line = msg.lines().next().unwrap_or("invalid arguments");
                    Outcome::domain(&Error::Parse(
                        line.trim_start_matches("error: ").to_string(),
                    ))
                }
            };
        }
    };
    match run(&cli) {
        Ok(o) => o,
        Err(e) => Outcome::domain(&e),
    }
}

#[derive(Serialize)]
struct Flagged<'a> {
    #[serde(flatten)]
    decomp: &'a TripletDecomp,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

enum AnyLabel {
    Vir(ModuleLabel),
    Triplet(TripletLabel),
}

fn any_label(text: &str, p: u32) -> Result<AnyLabel> {
    match text.trim().chars().next() {
        Some('W') | Some('R') => TripletLabel::parse(text, p).map(AnyLabel::Triplet),
        _ => ModuleLabel::parse(text, p).map(AnyLabel::Vir),
    }
}

fn vir(text: &str, p: u32) -> Result<ModuleLabel> {
    ModuleLabel::parse(text, p)
}

fn simple(text: &str, p: u32) -> Result<ModuleLabel> {
    let a = vir(text, p)?;
    if !a.is_simple() {
        return Err(Error::Domain(format!("{a} is not a simple module L:r,s")));
    }
    Ok(a)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("output serializes") + "\n"
}

fn emit<T: Serialize>(fmt: Format, v: &T, text: impl FnOnce() -> String) -> Outcome {
    Outcome::ok(match fmt {
        Format::Json => to_json(v),
        Format::Text => text() + "\n",
    })
}

fn loewy_text(d: &LoewyData) -> String {
    format!(
        "head:   {}\nmiddle: {}\nsocle:  {}",
        d.head.join(" + "),
        d.middle.join(" + "),
        d.socle.join(" + ")
    )
}

fn run(cli: &Cli) -> Result<Outcome> {
    let p = cli.p;
    let fmt = cli.format;
    let out = match &cli.verb {
        Verb::Fuse { a, b } => match (any_label(a, p)?, any_label(b, p)?) {
            (AnyLabel::Vir(a), AnyLabel::Vir(b)) => {
                let d = tensor(&a, &b)?;
                emit(fmt, &d, || d.to_string())
            }
            (AnyLabel::Triplet(a), AnyLabel::Triplet(b)) => {
                let (d, src) = triplet_tensor_sourced(&a, &b)?;
                let note =
                    (src == Source::Transported).then_some("derived via induction transport");
                let v = Flagged { decomp: &d, note };
                emit(fmt, &v, || match note {
                    Some(n) => format!("{d}\n({n})"),
                    None => d.to_string(),
                })
            }
            _ => {
                return Err(Error::Domain(
                    "cannot multiply a Virasoro label with a triplet label".into(),
                ))
            }
        },
        Verb::Dim { a } => {
            let a = vir(a, p)?;
            let d = cat_dim(&a);
            let z = d.to_complex();
            let v = json!({"label": a.to_string(), "p": p, "dim": d.to_string(), "value": [z.re, z.im]});
            emit(fmt, &v, || format!("dim {a} = {d} = {:.12}", z.re))
        }
        Verb::Loewy { a } => {
            let d = match any_label(a, p)? {
                AnyLabel::Vir(a) => loewy(&a),
                AnyLabel::Triplet(a) => triplet_loewy(&a),
            };
            emit(fmt, &d, || loewy_text(&d))
        }
        Verb::Zhu { generator, target } => {
            let cd = CentralData::new(p)?;
            let g = simple(generator, p)?;
            let bp = BimodPoly::for_generator(&cd, g.r as i64, g.s as i64)?;
            match target {
                None => emit(fmt, &bp, || format!("f(x, y) = {}", bp.f)),
                Some(t) => {
                    let t = simple(t, p)?;
                    let (r, s) = (t.r as i64, t.s as i64);
                    let spec = top_level_spectrum(&bp, &cd, r, s)?;
                    let log = if (g.r, g.s) == (1, 2) {
                        Some(logarithmic_flag(&cd, r, s)?)
                    } else {
                        None
                    };
                    let v = json!({"bimodule": bp, "spectrum": spec, "double_root": log});
                    emit(fmt, &v, || {
                        let roots: Vec<String> = spec
                            .roots
                            .iter()
                            .map(|(h, m)| {
                                if *m == 1 {
                                    h.to_string()
                                } else {
                                    format!("{h} (x{m})")
                                }
                            })
                            .collect();
                        let mut s = format!("f(x, y) = {}\nweights: {}", bp.f, roots.join(", "));
                        if log == Some(true) {
                            s += "\nL_0 has a double eigenvalue on the top level";
                        }
                        s
                    })
                }
            }
        }
        Verb::Singular { a } => {
            let cd = CentralData::new(p)?;
            let a = simple(a, p)?;
            let h = cd.h(a.r as i64, a.s as i64);
            let sv = singular_vectors(&cd, &h, a.r * a.s)?;
            emit(fmt, &sv, || {
                sv.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
        Verb::Gram { h, level } => {
            let cd = CentralData::new(p)?;
            let hv = if h.contains(':') {
                let a = simple(h, p)?;
                cd.h(a.r as i64, a.s as i64)
            } else {
                Rat::from_str(h)?
            };
            let m = gram_matrix(&cd, &hv, *level);
            let det = gram_det(&cd, &hv, *level);
            let v = json!({"h": hv, "level": level, "det": det, "matrix": m.to_rows()});
            emit(fmt, &v, || {
                let rows: Vec<String> = m
                    .to_rows()
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                format!("{}\ndet = {det}", rows.join("\n"))
            })
        }
        Verb::Chain { a, depth } => {
            let cd = CentralData::new(p)?;
            let a = simple(a, p)?;
            let chain = embedding_chain(p, a.r as i64, a.s as i64, *depth)?;
            let items: Vec<_> = chain
                .iter()
                .map(|&(r, s)| json!({"r": r, "s": s, "h": cd.h(r, s)}))
                .collect();
            emit(fmt, &items, || {
                chain
                    .iter()
                    .map(|&(r, s)| format!("({r},{s}) h = {}", cd.h(r, s)))
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
        Verb::Induce { a } => {
            let d = induce(&vir(a, p)?);
            emit(fmt, &d, || d.to_string())
        }
        Verb::Restrict { a, cutoff } => {
            let a = TripletLabel::parse(a, p)?;
            let d = Decomp::from_pairs(p, restrict(&a, *cutoff));
            emit(fmt, &d, || d.to_string())
        }
        Verb::Ss { a, b } => {
            let d = ss_tensor(&vir(a, p)?, &vir(b, p)?)?;
            emit(fmt, &d, || d.to_string())
        }
        Verb::Verify { rmax, jobs } => {
            let rmax = *rmax;
            let sweep = || {
                let mut rep = check_ring_axioms(p, rmax);
                rep.push(check_monoidal(p, rmax));
                rep
            };
            let rep = match jobs {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(*n)
                    .build()
                    .map_err(|e| Error::Domain(e.to_string()))?
                    .install(sweep),
                None => sweep(),
            };
            verify_outcome(fmt, &rep)
        }
        Verb::Bpz => bpz_outcome(fmt, p)?,
    };
    Ok(out)
}

fn verify_outcome(fmt: Format, rep: &Report) -> Outcome {
    if !rep.is_ok() {
        return Outcome::failed(rep.to_json_lines(), rep.summary_line() + "\n");
    }
    match fmt {
        Format::Json => Outcome::ok(rep.to_json_lines()),
        Format::Text => {
            let mut s = String::new();
            for c in &rep.checks {
                s += &format!("{:<14} p={} {} cases\n", c.check, c.p, c.count);
            }
            Outcome::ok(s + &rep.summary_line() + "\n")
        }
    }
}

fn bpz_outcome(fmt: Format, p: u32) -> Result<Outcome> {
    let routes = rigidity_routes(p)?;
    let mut failures = Vec::new();
    if routes.difference > ROUTE_TOL || routes.connection_gap > ROUTE_TOL {
        failures.push(Failure {
            witness: vec![format!("p={p}")],
            detail: format!(
                "series {} vs closed form {} (difference {:e}, connection gap {:e})",
                routes.series, routes.closed_form, routes.difference, routes.connection_gap
            ),
        });
    }
    let trace = if failures.is_empty() {
        match left_trace_check(p) {
            Ok(t) => Some(t),
            Err(e) => {
                failures.push(Failure {
                    witness: vec![format!("p={p}")],
                    detail: format!("{e} (tolerance {TRACE_TOL:e})"),
                });
                None
            }
        }
    } else {
        None
    };
    if !failures.is_empty() {
        let s = CheckSummary {
            check: "bpz".into(),
            p,
            count: 2,
            failures,
        };
        return Ok(Outcome::failed(
            to_json(&s),
            "rigidity routes disagree\n".into(),
        ));
    }
    let trace = trace.expect("checked above");
    let v = json!({"routes": routes, "left_trace": trace});
    Ok(emit(fmt, &v, || {
        format!(
            "closed form:  {:.12}\nseries:       {:.12}\ndifference:   {:.3e}\nleft trace:   {:.12}",
            routes.closed_form, routes.series, routes.difference, trace
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &str) -> Outcome {
        dispatch(std::iter::once("virfuse").chain(args.split_whitespace()))
    }

    #[test]
    fn fuse_json() {
        let o = run("fuse --p 3 L:1,2 L:1,2 --format json");
        assert_eq!(o.code, 0);
        assert_eq!(
            o.stdout.trim(),
            r#"{"p":3,"summands":[{"kind":"L","r":1,"s":1,"mult":1},{"kind":"L","r":1,"s":3,"mult":1}]}"#
        );
        assert_eq!(run("fuse --p 2 L:1,1 P:5,1").stdout.trim(), "P:5,1");
    }

    #[test]
    fn transported_products_are_flagged() {
        let o = run("fuse --p 3 W:1,2 W:2,3");
        assert_eq!(o.stdout, "R:2,2\n(derived via induction transport)\n");
        assert!(!run("fuse --p 3 W:1,2 W:2,2").stdout.contains("derived"));
        assert_eq!(
            run("fuse --p 3 W:1,2 W:2,3 --format json").stdout.trim(),
            r#"{"p":3,"summands":[{"kind":"R","r":2,"s":2,"mult":1}],"note":"derived via induction transport"}"#
        );
    }

    #[test]
    fn errors() {
        let o = run("fuse --p 3 L:1,9 L:1,1");
        assert_eq!(o.code, 1);
        assert_eq!(o.stderr.lines().count(), 1);
        assert_eq!(run("fuse --p 1 L:1,1 L:1,1").code, 1);
        assert_eq!(run("frobnicate --p 3").code, 1);
        assert_eq!(run("dim --p 3 X:1,1").code, 1);
    }

    #[test]
    fn verification_failures_exit_two() {
        let mut rep = Report::default();
        rep.push(CheckSummary::collect(
            "oracle",
            3,
            [Some(Failure {
                witness: vec!["L:1,2".into(), "L:1,2".into()],
                detail: "differs".into(),
            })],
        ));
        let o = verify_outcome(Format::Text, &rep);
        assert_eq!(o.code, 2);
        assert_eq!(Report::from_json_lines(&o.stdout).unwrap(), rep);
    }

    #[test]
    fn help_names_theorems() {
        let o = run("bpz --help");
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("Rigidity theorem"));
    }
}
