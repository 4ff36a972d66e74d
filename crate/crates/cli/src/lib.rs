//! Command dispatch for the `stabform` binary. [`run_command`] does all the
//! work and returns the exit status with the report, so the binary is a
//! thin printer and tests can drive commands in-process.

mod args;
mod report;

use std::fs;
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};
use stabform::classify::{
    classify, orbit_sample, search_nondegenerate, search_orbit, Registry, SearchReport,
};
use stabform::expr::{parse_form, render_form};
use stabform::invariants::{
    bilinear7, hitchin_endo, insertion_rank, jacobi_defect, lie_bracket, malcev_defect,
    malcev_product, s_mult, stabilizer, trace_form, DefectReport,
};
use stabform::{Error, FieldDesc, KForm};

pub use args::{Check, Cli, Command, FormArgs, RegistryAction};
pub use report::ReportDoc;

use report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Failure of a command, carrying its exit status.
enum Failure {
    Input(String),
    Mismatch(ReportDoc),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<ReportDoc, Failure>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, T>(argv: I) -> (i32, ReportDoc)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let wants_json = argv.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    (EXIT_OK, ReportDoc::new(Value::Null, e.to_string(), false))
                }
                _ => (EXIT_INPUT, ReportDoc::error(clap_line(&e), wants_json)),
            };
        }
    };
    match dispatch(&cli) {
        Ok(doc) => (EXIT_OK, doc),
        Err(Failure::Input(msg)) => (EXIT_INPUT, ReportDoc::error(msg, cli.json)),
        Err(Failure::Mismatch(doc)) => (EXIT_MISMATCH, doc),
    }
}

/// The first line of a clap error, without its `error: ` prefix.
fn clap_line(e: &clap::Error) -> String {
    let rendered = e.render().to_string();
    let first = rendered.lines().next().unwrap_or_default();
    first.strip_prefix("error: ").unwrap_or(first).to_string()
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_form(
    form: Option<&str>,
    file: Option<&Path>,
    dim: Option<usize>,
    field: FieldDesc,
) -> Result<Option<KForm>, Failure> {
    let text = match (form, file) {
        (Some(f), _) => f.to_string(),
        (None, Some(path)) => read_text(path)?,
        (None, None) => return Ok(None),
    };
    Ok(Some(parse_form(text.trim(), dim, field)?))
}

fn form_of(args: &FormArgs) -> Result<KForm, Failure> {
    load_form(
        args.form.as_deref(),
        args.file.as_deref(),
        args.dim,
        args.field,
    )?
    .ok_or_else(|| Failure::Input("no form given (use --form or --file)".into()))
}

fn dispatch(cli: &Cli) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Classify(a) => cmd_classify(&form_of(a)?, json),
        Command::Invariants(a) => cmd_invariants(&form_of(a)?, json),
        Command::MultTable(a) => cmd_mult_table(&form_of(a)?, json),
        Command::TraceForm(a) => cmd_trace_form(&form_of(a)?, json),
        Command::Bilinear7(a) => cmd_bilinear7(&form_of(a)?, json),
        Command::Hitchin(a) => cmd_hitchin(&form_of(a)?, json),
        Command::Bracket { form, check } => cmd_bracket(&form_of(form)?, *check, json),
        Command::OrbitSample { form, seed, count } => {
            cmd_orbit_sample(&form_of(form)?, *seed, *count, json)
        }
        Command::Search {
            form,
            file,
            dim,
            field,
            seed,
            trials,
            pool,
        } => {
            let base = load_form(form.as_deref(), file.as_deref(), *dim, *field)?;
            let report = match base {
                Some(base) => search_orbit(&base, *trials, *seed, pool.clone())?,
                None => {
                    let n = dim.ok_or_else(|| {
                        Failure::Input("search needs --dim or a base form".into())
                    })?;
                    search_nondegenerate(n, *trials, *seed, pool.clone())?
                }
            };
            Ok(search_doc(&report, pool, json))
        }
        Command::Registry { action } => match action {
            RegistryAction::List { file } => cmd_registry(file.as_deref(), false, json),
            RegistryAction::Verify { file } => cmd_registry(file.as_deref(), true, json),
        },
    }
}

fn cmd_classify(form: &KForm, json: bool) -> Outcome {
    let r = classify(form)?;
    Ok(ReportDoc::new(
        classification(&r),
        classification_text(&r),
        json,
    ))
}

fn cmd_invariants(form: &KForm, json: bool) -> Outcome {
    let rank = insertion_rank(form)?;
    let stab = stabilizer(form)?;
    let stable = stabform::invariants::is_stable(form)?;
    let kernel: Vec<Value> = rank
        .kernel_basis
        .iter()
        .map(|v| scalars(v.comps()))
        .collect();
    let value = object(vec![
        ("n", json!(form.dim())),
        ("k", json!(form.degree())),
        ("rank", json!(rank.rank)),
        ("multisymplectic", json!(rank.multisymplectic)),
        ("kernel", Value::Array(kernel)),
        ("stabilizer_dim", json!(stab.dim)),
        ("stabilizer_traceless", json!(stab.all_traceless)),
        ("stable", json!(stable)),
    ]);
    let text = format!(
        "rank            {}\nmultisymplectic {}\nstabilizer_dim  {}\ntraceless       {}\nstable          {}\n",
        rank.rank, rank.multisymplectic, stab.dim, stab.all_traceless, stable
    );
    Ok(ReportDoc::new(value, text, json))
}

fn cmd_mult_table(form: &KForm, json: bool) -> Outcome {
    let sc = s_mult(form)?;
    let table = product_table(&sc);
    let value = object(vec![
        ("n", json!(form.dim())),
        ("table", string_grid(&table)),
        ("structure_constants", structure_constants(&sc)),
    ]);
    Ok(ReportDoc::new(value, grid_text(&table), json))
}

fn cmd_trace_form(form: &KForm, json: bool) -> Outcome {
    let r = trace_form(form)?;
    let det = r.gram.det()?;
    let sig = r.gram.signature()?;
    let value = object(vec![
        ("n", json!(r.n)),
        ("grade", json!(r.grade)),
        ("gram", matrix(&r.gram)),
        ("determinant", scalar(&det)),
        ("nondegenerate", json!(!det.is_zero())),
        ("signature", inertia(&sig)),
    ]);
    let text = format!(
        "{}signature {sig}\nnondegenerate {}\n",
        grid_text(&matrix_cells(&r.gram)),
        !det.is_zero()
    );
    Ok(ReportDoc::new(value, text, json))
}

fn cmd_bilinear7(form: &KForm, json: bool) -> Outcome {
    let r = bilinear7(form)?;
    let sig = r.gram.signature()?;
    let value = object(vec![
        ("n", json!(r.n)),
        ("grade", json!(r.grade)),
        ("gram", matrix(&r.gram)),
        ("signature", inertia(&sig)),
    ]);
    let text = format!("{}signature {sig}\n", grid_text(&matrix_cells(&r.gram)));
    Ok(ReportDoc::new(value, text, json))
}

fn cmd_hitchin(form: &KForm, json: bool) -> Outcome {
    let r = hitchin_endo(form)?;
    let lambda = r.lambda_sq.as_ref();
    let value = object(vec![
        ("n", json!(r.n)),
        ("grade", json!(r.grade)),
        ("matrix", matrix(r.k.matrix())),
        ("lambda_sq", lambda.map_or(Value::Null, scalar)),
    ]);
    let lambda_text = lambda.map_or("K² is not scalar".to_string(), |l| format!("K² = {l}·Id"));
    let text = format!("{}{lambda_text}\n", grid_text(&matrix_cells(r.k.matrix())));
    Ok(ReportDoc::new(value, text, json))
}

fn defect_value(d: &DefectReport) -> Value {
    json!({
        "zero": d.is_zero(),
        "max_violation": scalar(&d.max_violation),
        "witness_count": d.witnesses.len(),
        "witness": d.witness().map(|w| w.iter().map(|i| i + 1).collect::<Vec<_>>()),
    })
}

fn cmd_bracket(form: &KForm, check: Option<Check>, json: bool) -> Outcome {
    let n = form.dim();
    let (sc, kind, default) = match n % 3 {
        2 => (lie_bracket(form)?, "lie_bracket", Check::Jacobi),
        1 => (malcev_product(form)?, "malcev_product", Check::Malcev),
        _ => {
            return Err(Failure::Input(format!(
                "bracket needs n ≡ 1 or 2 (mod 3), got n = {n}"
            )))
        }
    };
    let check = check.unwrap_or(default);
    let (name, defect) = match check {
        Check::Jacobi => ("jacobi", jacobi_defect(&sc)?),
        Check::Malcev => ("malcev", malcev_defect(&sc)?),
    };
    let table = product_table(&sc);
    let value = object(vec![
        ("n", json!(n)),
        ("product", json!(kind)),
        ("table", string_grid(&table)),
        ("structure_constants", structure_constants(&sc)),
        ("identity", json!(name)),
        ("defect", defect_value(&defect)),
    ]);
    let verdict = match defect.witness() {
        None => format!("{name} identity holds on all basis tuples\n"),
        Some(w) => format!(
            "{name} identity fails on {} basis tuples, e.g. {:?}\n",
            defect.witnesses.len(),
            w.iter().map(|i| i + 1).collect::<Vec<_>>()
        ),
    };
    Ok(ReportDoc::new(
        value,
        format!("{}{verdict}", grid_text(&table)),
        json,
    ))
}

fn cmd_orbit_sample(form: &KForm, seed: u64, count: usize, json: bool) -> Outcome {
    let samples = orbit_sample(form, seed, count)?;
    let mut text = String::new();
    let mut items = Vec::new();
    for (i, (g, image)) in samples.iter().enumerate() {
        let rendered = render_form(image);
        text.push_str(&format!(
            "sample {i}: det(g) = {}\n  g*form = {rendered}\n",
            g.det()
        ));
        items.push(json!({
            "g": matrix(g.matrix()),
            "det": scalar(&g.det()),
            "form": rendered,
        }));
    }
    let value = object(vec![
        ("seed", json!(seed)),
        ("count", json!(count)),
        ("samples", Value::Array(items)),
    ]);
    Ok(ReportDoc::new(value, text, json))
}

fn search_doc(
    report: &SearchReport,
    pool: &std::ops::RangeInclusive<i64>,
    json: bool,
) -> ReportDoc {
    let hits: Vec<Value> = report
        .hits
        .iter()
        .map(|h| json!({ "trial": h.trial, "form": render_form(&h.form) }))
        .collect();
    let value = object(vec![
        ("n", json!(report.n)),
        ("trials", json!(report.trials)),
        ("seed", json!(report.seed)),
        ("pool", json!([pool.start(), pool.end()])),
        ("hits", Value::Array(hits)),
        ("summary", json!(report.to_string())),
    ]);
    let mut text = format!("{report} (n = {}, seed = {})\n", report.n, report.seed);
    for h in &report.hits {
        text.push_str(&format!("trial {}: {}\n", h.trial, render_form(&h.form)));
    }
    ReportDoc::new(value, text, json)
}

fn cmd_registry(file: Option<&Path>, verify: bool, json: bool) -> Outcome {
    let text = match file {
        Some(path) => read_text(path)?,
        None => Registry::bundled_source().to_string(),
    };
    let registry = Registry::parse_unverified(&text)?;
    let mut rows = Vec::new();
    let mut out = String::new();
    let mut failures = 0;
    for e in registry.entries() {
        let mismatch = e.mismatch();
        failures += usize::from(mismatch.is_some());
        rows.push(json!({
            "name": e.name,
            "dim": e.dim,
            "field": e.field.to_string(),
            "form": e.source,
            "expect_type": e.expect_type.as_str(),
            "expect_stab_dim": e.expect_stab_dim,
            "type": e.report.form_type.as_str(),
            "stabilizer_dim": e.report.stabilizer_dim,
            "ok": mismatch.is_none(),
            "mismatch": mismatch,
        }));
        let status = match (&mismatch, verify) {
            (Some(m), _) => format!("MISMATCH: {m}"),
            (None, true) => "ok".to_string(),
            (None, false) => String::new(),
        };
        let line = format!(
            "{:<14} dim {}  {:<8} {:<15} stab {:>2}  {}",
            e.name,
            e.dim,
            e.field.to_string(),
            e.report.form_type.as_str(),
            e.report.stabilizer_dim,
            status
        );
        out.push_str(line.trim_end());
        out.push('\n');
    }
    if verify {
        out.push_str(&format!(
            "{} entries, {} mismatches\n",
            registry.len(),
            failures
        ));
    }
    let value = object(vec![
        ("entries", Value::Array(rows)),
        ("mismatches", json!(failures)),
    ]);
    let doc = ReportDoc::new(value, out, json);
    if verify && failures > 0 {
        let mut doc = doc;
        doc.diagnostic = Some(format!("{failures} registry entries failed verification"));
        return Err(Failure::Mismatch(doc));
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn help_exits_zero() {
        let (code, doc) = run_command(["stabform", "--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(doc.text.contains("classify"));
    }

    #[test]
    fn unknown_flag_is_single_line() {
        let (code, doc) = run_command(["stabform", "classify", "--frobnicate"]);
        assert_eq!(code, EXIT_INPUT);
        let d = doc.diagnostic.unwrap();
        assert!(!d.contains('\n'));
        assert!(d.contains("--frobnicate"), "{d}");
    }

    #[test]
    fn parse_error_is_positioned() {
        let (code, doc) = run_command(["stabform", "classify", "--form", "e12 + e1x3"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(doc.diagnostic.unwrap().contains("position"));
    }
}
