//! Command-line front end. Every subcommand reads JSON documents (see
//! [`crate::io`]) and maps onto one library operation.
//!
//! Exit codes: 0 when the underlying report list is empty, 1 on a
//! mathematical failure, 2 on malformed input or usage errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::action::{semidirect, validate_action};
use crate::cat1::{cat1_round_trip, cat1_to_xmod, validate_cat1, xmod_round_trip, xmod_to_cat1};
use crate::cohomology::{
    build_extension, choose_sections, cocycle_h, section_independence_check,
    section_independence_for,
};
use crate::corpus::{k3, m4_bundle, K1Window};
use crate::error::{Error, Result};
use crate::exactq::Scalar;
use crate::hla::{check_morphism, validate_hla};
use crate::io::{emit, load, to_document, Bundle};
use crate::report::IdentityReport;
use crate::representation::{direct_sum_criterion, validate_rep};
use crate::xmod::{validate_xmod, CrossedModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "hlanti", version, about = "Hom-Lie antialgebra toolkit")]
pub struct Cli {
    /// Format of check results.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub report_format: ReportFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the algebra axioms (or the validity of any structure document).
    Validate { file: PathBuf },
    /// Check that a pair of maps is an algebra morphism.
    CheckMorphism { file: PathBuf },
    /// Check a module document, both as a representation and via the direct sum.
    CheckRep { file: PathBuf },
    /// Check an action document.
    CheckAction { file: PathBuf },
    /// Build the semidirect product of an action.
    Semidirect {
        file: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Check a crossed module document.
    CheckXmod { file: PathBuf },
    /// Crossed module to Cat1 structure on the semidirect product.
    Xmod2cat1 {
        file: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Cat1 structure to crossed module on the kernel of s.
    Cat12xmod {
        file: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        /// Also check both round-trip isomorphisms.
        #[arg(long)]
        iso_check: bool,
    },
    /// Check a Cat1 document.
    CheckCat1 { file: PathBuf },
    /// The 3-cocycle of a crossed module extension for seeded sections.
    Cocycle {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        /// Also write the extension with its sections.
        #[arg(long)]
        extension_out: Option<PathBuf>,
    },
    /// Compare the cocycles of two section choices up to a coboundary.
    CocycleDiff {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed_a: u64,
        #[arg(long, default_value_t = 1)]
        seed_b: u64,
    },
    /// Emit a built-in example: k3, m4 or k1-window.
    Example {
        name: String,
        /// Parameter `name=value` (repeatable).
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, String)>,
        /// For m4: which document to emit.
        #[arg(long, value_enum, default_value = "action")]
        part: M4Part,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum M4Part {
    M,
    N,
    Action,
    Xmod,
    Cat1,
    /// A JSON array of all five documents.
    All,
}

fn parse_param(s: &str) -> std::result::Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .filter(|(k, _)| !k.is_empty())
        .ok_or_else(|| format!("expected name=value, got {s:?}"))
}

/// Output of a subcommand before formatting.
struct Outcome {
    command: &'static str,
    reports: Vec<IdentityReport>,
    notes: Vec<String>,
    /// Constructed document, written to `-o` or printed.
    document: Option<String>,
}

impl Outcome {
    fn check(command: &'static str, reports: Vec<IdentityReport>) -> Self {
        Outcome {
            command,
            reports,
            notes: vec![],
            document: None,
        }
    }
}

fn read(path: &Path) -> Result<Bundle> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parameter(format!("cannot read {}: {e}", path.display())))?;
    load(&text)
}

fn wrong_kind(expected: &str, got: &Bundle) -> Error {
    Error::Parameter(format!("kind: expected {expected}, got {}", got.kind()))
}

fn read_xmod(path: &Path) -> Result<CrossedModule> {
    match read(path)? {
        Bundle::Xmod(x) => Ok(x),
        Bundle::Extension { xmod, .. } => Ok(xmod),
        b => Err(wrong_kind("xmod", &b)),
    }
}

fn scalar_param(params: &BTreeMap<String, String>, name: &str) -> Result<Scalar> {
    let v = params
        .get(name)
        .ok_or_else(|| Error::Parameter(format!("missing parameter {name}")))?;
    v.parse()
        .map_err(|e| Error::Parameter(format!("parameter {name}: {e}")))
}

fn int_param(params: &BTreeMap<String, String>, name: &str) -> Result<i64> {
    scalar_param(params, name)?
        .to_i64()
        .ok_or_else(|| Error::Parameter(format!("parameter {name} must be an integer")))
}

fn example(name: &str, params: &[(String, String)], part: M4Part) -> Result<String> {
    let mut map = BTreeMap::new();
    for (k, v) in params {
        if map.insert(k.clone(), v.clone()).is_some() {
            return Err(Error::Parameter(format!("parameter {k} given twice")));
        }
    }
    let allowed: &[&str] = match name {
        "k3" | "m4" => &["mu"],
        "k1-window" => &["q", "n_lo", "n_hi", "i_lo", "i_hi"],
        _ => return Err(Error::Parameter(format!("unknown example {name:?}"))),
    };
    if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::Parameter(format!(
            "unknown parameter {k} for {name}"
        )));
    }
    Ok(match name {
        "k3" => emit(&Bundle::Algebra(k3(&scalar_param(&map, "mu")?)?)),
        "m4" => {
            let b = m4_bundle(&scalar_param(&map, "mu")?)?;
            let parts = [
                Bundle::Algebra(b.m.with_name("M")),
                Bundle::Algebra(b.n),
                Bundle::Action(b.action),
                Bundle::Xmod(b.xmod),
                Bundle::Cat1(b.cat1),
            ];
            let pick = match part {
                M4Part::M => 0,
                M4Part::N => 1,
                M4Part::Action => 2,
                M4Part::Xmod => 3,
                M4Part::Cat1 => 4,
                M4Part::All => {
                    let docs: Vec<_> = parts.iter().map(to_document).collect();
                    let mut s = serde_json::to_string_pretty(&docs).expect("documents serialize");
                    s.push('\n');
                    return Ok(s);
                }
            };
            emit(&parts[pick])
        }
        _ => {
            let w = K1Window::new(
                &scalar_param(&map, "q")?,
                int_param(&map, "n_lo")?,
                int_param(&map, "n_hi")?,
                &scalar_param(&map, "i_lo")?,
                &scalar_param(&map, "i_hi")?,
            )?;
            emit(&Bundle::K1Table(w.table()))
        }
    })
}

fn validate_any(b: &Bundle) -> Result<Vec<IdentityReport>> {
    match b {
        Bundle::Algebra(a) => validate_hla(a),
        Bundle::Module { algebra, module } => validate_rep(algebra, module),
        Bundle::Action(a) => validate_action(a, true),
        Bundle::Xmod(x) | Bundle::Extension { xmod: x, .. } => validate_xmod(x),
        Bundle::Cat1(c) => validate_cat1(c),
        Bundle::Morphism(m) => m.check(),
        b => Err(Error::Parameter(format!(
            "kind: {} documents have nothing to validate",
            b.kind()
        ))),
    }
}

fn execute(cmd: &Command) -> Result<Outcome> {
    Ok(match cmd {
        Command::Validate { file } => Outcome::check("validate", validate_any(&read(file)?)?),
        Command::CheckMorphism { file } => match read(file)? {
            Bundle::Morphism(m) => Outcome::check(
                "check-morphism",
                check_morphism(&m.source, &m.target, &m.phi0, &m.phi1)?,
            ),
            b => return Err(wrong_kind("morphism", &b)),
        },
        Command::CheckRep { file } => match read(file)? {
            Bundle::Module { algebra, module } => {
                let reports = validate_rep(&algebra, &module)?;
                let ds = direct_sum_criterion(&algebra, &module)?;
                let mut o = Outcome::check("check-rep", reports);
                o.notes.push(format!(
                    "direct sum: representation valid = {}, direct-sum algebra valid = {}",
                    ds.rep_valid, ds.algebra_valid
                ));
                o
            }
            b => return Err(wrong_kind("module", &b)),
        },
        Command::CheckAction { file } => match read(file)? {
            Bundle::Action(a) => Outcome::check("check-action", validate_action(&a, true)?),
            b => return Err(wrong_kind("action", &b)),
        },
        Command::Semidirect { .. } => unreachable!("handled with output"),
        Command::CheckXmod { file } => {
            Outcome::check("check-xmod", validate_xmod(&read_xmod(file)?)?)
        }
        Command::Xmod2cat1 { file, .. } => {
            let c = xmod_to_cat1(&read_xmod(file)?)?;
            let mut o = Outcome::check("xmod2cat1", vec![]);
            o.document = Some(emit(&Bundle::Cat1(c)));
            o
        }
        Command::Cat12xmod {
            file, iso_check, ..
        } => {
            let c = match read(file)? {
                Bundle::Cat1(c) => c,
                b => return Err(wrong_kind("cat1", &b)),
            };
            let x = cat1_to_xmod(&c)?;
            let mut reports = vec![];
            let mut notes = vec![];
            if *iso_check {
                let back = cat1_round_trip(&c)?;
                let fwd = xmod_round_trip(&x)?;
                reports.extend(
                    back.check()?
                        .into_iter()
                        .map(|r| r.with_prefix("cat1-iso:")),
                );
                reports.extend(fwd.check()?.into_iter().map(|r| r.with_prefix("xmod-iso:")));
                notes.push(format!(
                    "round-trip maps invertible: cat1 {}, xmod {}",
                    back.is_invertible(),
                    fwd.is_invertible()
                ));
                if !back.is_invertible() || !fwd.is_invertible() {
                    return Err(Error::Structural("round-trip map is not invertible".into()));
                }
            }
            Outcome {
                command: "cat12xmod",
                reports,
                notes,
                document: Some(emit(&Bundle::Xmod(x))),
            }
        }
        Command::CheckCat1 { file } => match read(file)? {
            Bundle::Cat1(c) => Outcome::check("check-cat1", validate_cat1(&c)?),
            b => return Err(wrong_kind("cat1", &b)),
        },
        Command::Cocycle { .. } => unreachable!("handled with output"),
        Command::CocycleDiff {
            file,
            seed_a,
            seed_b,
        } => {
            let (e, fixed) = match read(file)? {
                Bundle::Xmod(x) => (build_extension(&x)?, None),
                Bundle::Extension { xmod, sections } => (build_extension(&xmod)?, Some(sections)),
                b => return Err(wrong_kind("xmod", &b)),
            };
            let out = match fixed {
                // The stored sections play the role of seed A.
                Some(sp) => {
                    e.check_sections(&sp)?;
                    let spb = choose_sections(&e, *seed_b)?;
                    section_independence_for(&e, &sp, &spb)?
                }
                None => section_independence_check(&e, *seed_a, *seed_b)?,
            };
            let mut o = Outcome::check("cocycle-diff", out.reports);
            o.notes.push(format!("sections independent: {}", out.holds));
            o
        }
        Command::Example { .. } => unreachable!("handled with output"),
    })
}

fn cocycle(file: &Path, seed: u64, ext_out: Option<&Path>) -> Result<Outcome> {
    let (e, sp) = match read(file)? {
        Bundle::Xmod(x) => {
            let e = build_extension(&x)?;
            let sp = choose_sections(&e, seed)?;
            (e, sp)
        }
        Bundle::Extension { xmod, sections } => {
            let e = build_extension(&xmod)?;
            e.check_sections(&sections)?;
            (e, sections)
        }
        b => return Err(wrong_kind("xmod", &b)),
    };
    let h = cocycle_h(&e, &sp)?;
    if let Some(p) = ext_out {
        write_file(
            p,
            &emit(&Bundle::Extension {
                xmod: e.xmod.clone(),
                sections: sp.clone(),
            }),
        )?;
    }
    let (m0, m1) = e.kernel_dims();
    let g = e.g();
    let nonzero: Vec<String> = h
        .components()
        .iter()
        .enumerate()
        .map(|(i, t)| format!("h{i}:{}", if t.is_zero() { "zero" } else { "nonzero" }))
        .collect();
    let mut o = Outcome::check("cocycle", vec![]);
    o.notes.push(format!(
        "kernel dims ({m0},{m1}), cokernel dims ({},{}), seed {}",
        g.dim_even, g.dim_odd, sp.seed
    ));
    o.notes.push(format!(
        "all components in the kernel; {}",
        nonzero.join(" ")
    ));
    o.document = Some(emit(&Bundle::Cochain3 {
        seed: Some(sp.seed),
        cochain: h,
    }));
    Ok(o)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::Parameter(format!("cannot write {}: {e}", path.display())))
}

fn dispatch(cmd: &Command) -> Result<(Outcome, Option<PathBuf>)> {
    Ok(match cmd {
        Command::Semidirect { file, output } => {
            let act = match read(file)? {
                Bundle::Action(a) => a,
                b => return Err(wrong_kind("action", &b)),
            };
            let sd = semidirect(&act)?;
            let mut o = Outcome::check("semidirect", vec![]);
            o.document = Some(emit(&Bundle::Algebra(sd.algebra)));
            (o, output.clone())
        }
        Command::Cocycle {
            file,
            seed,
            output,
            extension_out,
        } => (
            cocycle(file, *seed, extension_out.as_deref())?,
            output.clone(),
        ),
        Command::Example {
            name,
            params,
            part,
            output,
        } => {
            let mut o = Outcome::check("example", vec![]);
            o.document = Some(example(name, params, *part)?);
            (o, output.clone())
        }
        Command::Xmod2cat1 { output, .. } | Command::Cat12xmod { output, .. } => {
            (execute(cmd)?, output.clone())
        }
        _ => (execute(cmd)?, None),
    })
}

fn print_reports(
    fmt: ReportFormat,
    o: &Outcome,
    out: &mut dyn Write,
    wrote: Option<&Path>,
) -> std::io::Result<()> {
    match fmt {
        ReportFormat::Text => {
            for r in &o.reports {
                writeln!(out, "{r}")?;
            }
            for n in &o.notes {
                writeln!(out, "{n}")?;
            }
            if let Some(p) = wrote {
                writeln!(out, "wrote {}", p.display())?;
            }
            if o.document.is_none() || wrote.is_some() {
                let status = if o.reports.is_empty() { "ok" } else { "FAILED" };
                writeln!(
                    out,
                    "{}: {status} ({} failing instances)",
                    o.command,
                    o.reports.len()
                )?;
            }
        }
        ReportFormat::Json => {
            let v = json!({
                "kind": "report",
                "command": o.command,
                "valid": o.reports.is_empty(),
                "reports": o.reports,
                "notes": o.notes,
                "output": wrote.map(|p| p.display().to_string()),
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&v).expect("report serializes")
            )?;
        }
    }
    Ok(())
}

fn print_error(fmt: ReportFormat, e: &Error, code: i32, out: &mut dyn Write, err: &mut dyn Write) {
    match fmt {
        ReportFormat::Text => {
            for r in e.reports() {
                let _ = writeln!(out, "{r}");
            }
            let _ = writeln!(err, "error: {e}");
        }
        ReportFormat::Json => {
            let v = json!({
                "kind": "error",
                "exit_code": code,
                "message": e.to_string(),
                "reports": e.reports(),
            });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&v).expect("error serializes")
            );
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let fmt = cli.report_format;
    match dispatch(&cli.command) {
        Ok((o, path)) => {
            let wrote = match (&o.document, &path) {
                (Some(doc), Some(p)) => {
                    if let Err(e) = write_file(p, doc) {
                        print_error(fmt, &e, 2, out, err);
                        return 2;
                    }
                    Some(p.as_path())
                }
                (Some(doc), None) if fmt == ReportFormat::Text && o.reports.is_empty() => {
                    let _ = write!(out, "{doc}");
                    for n in &o.notes {
                        let _ = writeln!(err, "{n}");
                    }
                    return 0;
                }
                _ => None,
            };
            let _ = print_reports(fmt, &o, out, wrote);
            if o.reports.is_empty() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let code = if e.is_input_error() { 2 } else { 1 };
            print_error(fmt, &e, code, out, err);
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("hlanti").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn example_k3_prints_document() {
        let (code, out, _) = run_args(&["example", "k3", "--param", "mu=2"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"kind\": \"algebra\""));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["example", "k3"]).0, 2);
        assert_eq!(run_args(&["example", "k3", "--param", "mu=0"]).0, 2);
        assert_eq!(run_args(&["example", "nope"]).0, 2);
        assert_eq!(run_args(&["validate", "/nonexistent.json"]).0, 2);
    }

    #[test]
    fn k1_window_needs_square_q() {
        let base = [
            "example",
            "k1-window",
            "--param",
            "n_lo=-1",
            "--param",
            "n_hi=1",
        ];
        let mut args: Vec<&str> = base.to_vec();
        args.extend([
            "--param",
            "i_lo=-1/2",
            "--param",
            "i_hi=1/2",
            "--param",
            "q=2",
        ]);
        assert_eq!(run_args(&args).0, 2);
        *args.last_mut().unwrap() = "q=4";
        let (code, out, _) = run_args(&args);
        assert_eq!(code, 0);
        assert!(out.contains("\"kind\": \"k1-table\""));
    }
}
