use std::fmt::Write;

use serde_json::{json, Value};

use pbw_core::casimir::{casimirs, verify_casimir, CasimirVerdict, DegreeFilter};
use pbw_core::catalog::{self, CatalogEntry, ExpectedCasimir, ExpectedPbw};
use pbw_core::coeff::{Assignment, ParamPoly};
use pbw_core::diamond::{is_pbw, pbw_constraints, Verdict};
use pbw_core::relations::{find_degree_map, Mode, Reducer, RelationSet, Strategy};
use pbw_core::syntax::{parse_algebra, parse_assignment, parse_expr, print_algebra, Scope};
use pbw_core::transform::{apply, classify_ab_form, parse_transformation};
use pbw_core::Error;

use crate::{CatalogAction, Command, Source};

pub const FORMAT_VERSION: u32 = 1;

/// Rendered result of one command.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub status: u8,
}

impl Report {
    fn ok(command: &str, text: String, mut json: Value) -> Report {
        json["format_version"] = json!(FORMAT_VERSION);
        json["command"] = json!(command);
        Report { text, json, status: 0 }
    }

    fn error(command: &str, e: &CliError) -> Report {
        let (kind, msg) = match e {
            CliError::Usage(m) => ("usage", m.clone()),
            CliError::Engine(err @ Error::Parse { .. }) => ("parse", err.to_string()),
            CliError::Engine(err) => ("engine", err.to_string()),
        };
        Report {
            text: format!("error: {msg}\n"),
            json: json!({
                "format_version": FORMAT_VERSION,
                "command": command,
                "error": { "kind": kind, "message": msg },
            }),
            status: 2,
        }
    }
}

pub enum CliError {
    Usage(String),
    Engine(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Engine(e)
    }
}

type Res<T> = std::result::Result<T, CliError>;

pub fn run(cmd: &Command) -> Report {
    let name = match cmd {
        Command::Check { .. } => "check",
        Command::Constraints { .. } => "constraints",
        Command::Reduce { .. } => "reduce",
        Command::Casimir { .. } => "casimir",
        Command::Classify { .. } => "classify",
        Command::Transform { .. } => "transform",
        Command::Catalog { .. } => "catalog",
    };
    let res = match cmd {
        Command::Check { source, at } => check(source, at.as_deref()),
        Command::Constraints { source, at } => constraints(source, at.as_deref()),
        Command::Reduce { source, expr, strategy, at } => reduce(source, expr, strategy, at.as_deref()),
        Command::Casimir { source, degree, at, graded, verify } => match verify {
            Some(f) => casimir_verify(source, f, at.as_deref()),
            None => casimir(source, degree.unwrap_or(0), at.as_deref(), *graded),
        },
        Command::Classify { source } => classify(source),
        Command::Transform { source, map } => transform(source, map),
        Command::Catalog { action } => match action {
            CatalogAction::List => catalog_list(),
            CatalogAction::Show { id, export } => catalog_show(id, *export),
        },
    };
    match res {
        Ok((text, json)) => {
            let mut r = Report::ok(name, text, json);
            if name == "check" && r.json["verdict"] == "not_pbw" {
                r.status = 1;
            }
            r
        }
        Err(e) => Report::error(name, &e),
    }
}

fn read_file(path: &str) -> Res<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))
}

/// Loads the algebra and substitutes `at` when given. Catalog exclusions are
/// enforced on the assignment.
fn load(source: &Source, at: Option<&str>) -> Res<RelationSet> {
    let assignment = match at {
        Some(a) => Some(parse_assignment(a)?),
        None => None,
    };
    let r = match (&source.catalog, &source.file) {
        (Some(id), _) => {
            let e = catalog::entry(id)?;
            return Ok(match assignment {
                Some(a) => e.instantiate(&a)?,
                None => e.relations(),
            });
        }
        (None, Some(path)) => parse_algebra(&read_file(path)?)?,
        (None, None) => return Err(CliError::Usage("no algebra given".into())),
    };
    Ok(match assignment {
        Some(a) => r.specialize(&a)?,
        None => r,
    })
}

fn assumption_list(a: &[ParamPoly]) -> Vec<String> {
    a.iter().map(|p| format!("{p} ≠ 0")).collect()
}

fn assuming(a: &[ParamPoly]) -> String {
    if a.is_empty() {
        String::new()
    } else {
        format!(" (assuming {})", assumption_list(a).join(", "))
    }
}

fn check(source: &Source, at: Option<&str>) -> Res<(String, Value)> {
    let r = load(source, at)?;
    let v = is_pbw(&r, &Assignment::new())?;
    Ok(match v {
        Verdict::Pbw { assumptions } => (
            format!("PBW{}\n", assuming(&assumptions)),
            json!({ "verdict": "pbw", "assumptions": assumption_list(&assumptions) }),
        ),
        Verdict::NotPbw { ambiguity, word, value } => {
            let amb = r.word_name(&ambiguity.word());
            let w = word.render(r.generators());
            (
                format!("not PBW: overlap {amb} leaves {w}: {value}\n"),
                json!({
                    "verdict": "not_pbw",
                    "ambiguity": amb,
                    "witness_word": w,
                    "witness_polynomial": value.to_string(),
                }),
            )
        }
        Verdict::Undetermined { assumptions, rows } => {
            let mut text = format!("undetermined{}: PBW exactly when these vanish\n", assuming(&assumptions));
            let many = rows.iter().any(|(a, _, _)| *a != rows[0].0);
            let mut out = Vec::new();
            for (a, w, f) in &rows {
                let amb = r.word_name(&a.word());
                let w = w.render(r.generators());
                if many {
                    let _ = writeln!(text, "  {amb} {w}: {f}");
                } else {
                    let _ = writeln!(text, "  {w}: {f}");
                }
                out.push(json!({ "ambiguity": amb, "word": w, "polynomial": f.to_string() }));
            }
            (
                text,
                json!({ "verdict": "undetermined", "assumptions": assumption_list(&assumptions), "rows": out }),
            )
        }
    })
}

fn constraints(source: &Source, at: Option<&str>) -> Res<(String, Value)> {
    let r = load(source, at)?;
    let cs = pbw_constraints(&r)?;
    let mut text = String::new();
    for line in cs.render(&r) {
        let _ = writeln!(text, "{line}");
    }
    if cs.is_empty() {
        text.push_str("no constraints\n");
    }
    if !cs.assumptions.is_empty() {
        let _ = writeln!(text, "assuming {}", assumption_list(&cs.assumptions).join(", "));
    }
    let rows: Vec<Value> = cs
        .rows()
        .map(|(a, w, f)| {
            json!({
                "ambiguity": r.word_name(&a.word()),
                "word": w.render(r.generators()),
                "polynomial": f.to_string(),
            })
        })
        .collect();
    Ok((text, json!({ "rows": rows, "assumptions": assumption_list(&cs.assumptions) })))
}

fn parse_strategy(s: &str) -> Res<Strategy> {
    match s {
        "leftmost" => Ok(Strategy::Leftmost),
        "rightmost" => Ok(Strategy::Rightmost),
        _ => s
            .strip_prefix("random:")
            .and_then(|n| n.parse().ok())
            .map(Strategy::Random)
            .ok_or_else(|| CliError::Usage(format!("unknown strategy `{s}` (leftmost, rightmost, random:SEED)"))),
    }
}

fn scoped_expr(r: &RelationSet, src: &str) -> Res<pbw_core::NCPoly> {
    let scope = Scope {
        generators: r.generators(),
        params: r.params(),
        brackets: true,
    };
    Ok(parse_expr(src, &scope)?)
}

fn reduce(source: &Source, expr: &str, strategy: &str, at: Option<&str>) -> Res<(String, Value)> {
    let r = load(source, at)?;
    let strategy = parse_strategy(strategy)?;
    let f = scoped_expr(&r, expr)?;
    let nf = Reducer::symbolic(&r).reduce(&f, strategy)?;
    let s = r.render(&nf);
    let a = r.assumptions();
    Ok((
        format!("{s}\n{}", if a.is_empty() { String::new() } else { format!("assuming {}\n", assumption_list(&a).join(", ")) }),
        json!({ "normal_form": s, "assumptions": assumption_list(&a) }),
    ))
}

/// Polynomial-degree bound beyond which exact elimination stops being
/// practical for three generators.
const MAX_CASIMIR_DEGREE: usize = 5;

fn casimir(source: &Source, degree: usize, at: Option<&str>, graded: bool) -> Res<(String, Value)> {
    if degree == 0 {
        return Err(CliError::Usage("--degree must be positive".into()));
    }
    let r = load(source, at)?;
    if degree > MAX_CASIMIR_DEGREE && r.n() >= 3 && !graded {
        return Err(CliError::Usage(format!("--degree above {MAX_CASIMIR_DEGREE} is not supported")));
    }
    let filter = if graded { DegreeFilter::Graded } else { DegreeFilter::Polynomial };
    let b = casimirs(&r, degree, filter)?;
    let ks: Vec<String> = b.elements.iter().map(|k| r.render(k)).collect();
    let mut text = format!("degree: {degree}\n");
    if ks.is_empty() {
        text.push_str("casimirs: []\n");
    } else {
        text.push_str("casimirs:\n");
        for (i, k) in ks.iter().enumerate() {
            let _ = writeln!(text, "  K{} = {k}", i + 1);
        }
    }
    if !b.assumptions.is_empty() {
        let _ = writeln!(text, "assuming {}", assumption_list(&b.assumptions).join(", "));
    }
    Ok((
        text,
        json!({
            "degree": degree,
            "filter": if graded { "graded" } else { "polynomial" },
            "dimension": b.dimension(),
            "casimirs": ks,
            "assumptions": assumption_list(&b.assumptions),
        }),
    ))
}

fn casimir_verify(source: &Source, path: &str, at: Option<&str>) -> Res<(String, Value)> {
    let r = load(source, at)?;
    let text: String = read_file(path)?
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    let k = scoped_expr(&r, &text)?;
    Ok(match verify_casimir(&k, &r)? {
        CasimirVerdict::Casimir => ("central\n".into(), json!({ "central": true })),
        CasimirVerdict::Residual { generator, residual } => {
            let g = &r.generators()[generator];
            let res = r.render(&residual);
            (
                format!("not central: [K,{g}] = {res}\n"),
                json!({ "central": false, "generator": g, "residual": res }),
            )
        }
    })
}

fn classify(source: &Source) -> Res<(String, Value)> {
    let r = load(source, None)?;
    let c = classify_ab_form(&r)?;
    let g = r.generators();
    let ba = c.canonical.brackets().remove(&(1, 0)).map(|p| r.render(&p)).unwrap_or_else(|| "0".into());
    let t = c.transformation.render(&r);
    let reach: Vec<&str> = c.reachable.iter().map(|k| k.name()).collect();
    let mut text = format!("form: {}\nlambda: {}\n", c.label.kind, c.label.lambda);
    let _ = writeln!(text, "[{},{}] = {ba}", g[1], g[0]);
    text.push_str("transformation:\n");
    for line in &t {
        let _ = writeln!(text, "  {line}");
    }
    if c.tie_broken() {
        let _ = writeln!(text, "tie_break: priority order chose {} from {}", c.label.kind, reach.join(", "));
    }
    if !c.assumptions.is_empty() {
        let _ = writeln!(text, "assuming {}", assumption_list(&c.assumptions).join(", "));
    }
    text.push_str("canonical relations:\n");
    text.push_str(&print_algebra(&c.canonical));
    Ok((
        text,
        json!({
            "form": c.label.kind.name(),
            "lambda": c.label.lambda.to_string(),
            "lowest_bracket": ba,
            "transformation": t,
            "identity": c.transformation.is_identity(),
            "reachable": reach,
            "tie_break": c.tie_broken(),
            "assumptions": assumption_list(&c.assumptions),
            "relations": print_algebra(&c.canonical),
        }),
    ))
}

fn transform(source: &Source, map: &str) -> Res<(String, Value)> {
    let r = load(source, None)?;
    let t = parse_transformation(&read_file(map)?, &r)?;
    let out = apply(&t, &r)?;
    let text = print_algebra(&out);
    let brackets: serde_json::Map<String, Value> = out
        .brackets()
        .into_iter()
        .map(|((j, i), p)| (format!("[{},{}]", r.generators()[j], r.generators()[i]), json!(r.render(&p))))
        .collect();
    Ok((
        text.clone(),
        json!({ "transformation": t.render(&r), "brackets": brackets, "relations": text }),
    ))
}

fn catalog_list() -> Res<(String, Value)> {
    let items = catalog::list_entries();
    let width = items.iter().map(|(id, _)| id.len()).max().unwrap_or(0);
    let mut text = String::new();
    for (id, summary) in &items {
        let _ = writeln!(text, "{id:width$}  {summary}");
    }
    let entries: Vec<Value> = items.iter().map(|(id, s)| json!({ "id": id, "summary": s })).collect();
    Ok((text, json!({ "entries": entries })))
}

fn pbw_name(p: ExpectedPbw) -> &'static str {
    match p {
        ExpectedPbw::Pbw => "pbw",
        ExpectedPbw::Constrained => "constrained",
        ExpectedPbw::Diverges => "diverges",
    }
}

fn casimir_note(c: ExpectedCasimir) -> (String, Value) {
    match c {
        ExpectedCasimir::Degree(d) => (format!("degree {d}"), json!({ "degree": d })),
        ExpectedCasimir::NoneUpTo(d) => (format!("none up to degree {d}"), json!({ "none_up_to": d })),
        ExpectedCasimir::NotRecorded => ("not recorded".into(), Value::Null),
    }
}

fn catalog_show(id: &str, export: bool) -> Res<(String, Value)> {
    let e: &CatalogEntry = catalog::entry(id)?;
    let r = e.relations();
    let file = print_algebra(&r);
    if export {
        return Ok((file.clone(), json!({ "id": e.id, "relations": file })));
    }
    let (cas, cas_json) = casimir_note(e.casimir);
    let dm = match r.mode() {
        Mode::Strict => Some(r.degrees().values().to_vec()),
        Mode::Permissive { .. } => find_degree_map(&r, 6).map(|d| d.values().to_vec()),
    };
    let mut text = format!("{}: {}\n", e.id, e.summary);
    let _ = writeln!(text, "form: {}", e.form.unwrap_or("-"));
    let _ = writeln!(text, "pbw: {}", pbw_name(e.pbw));
    let _ = writeln!(text, "casimir: {cas}");
    let excl: Vec<String> = e.exclusions.iter().map(|x| format!("{x} ≠ 0")).collect();
    if !excl.is_empty() {
        let _ = writeln!(text, "exclusions: {}", excl.join(", "));
    }
    match &dm {
        Some(d) => {
            let _ = writeln!(text, "degree map: {d:?}");
        }
        None => text.push_str("degree map: none up to 6\n"),
    }
    if let Some(k) = e.printed_casimir {
        let _ = writeln!(text, "printed casimir: {}", k.split_whitespace().collect::<Vec<_>>().join(" "));
    }
    text.push_str("relations:\n");
    text.push_str(&file);
    Ok((
        text,
        json!({
            "id": e.id,
            "summary": e.summary,
            "form": e.form,
            "pbw": pbw_name(e.pbw),
            "casimir": cas_json,
            "exclusions": e.exclusions,
            "degree_map": dm,
            "printed_casimir": e.printed_casimir.map(|k| k.split_whitespace().collect::<Vec<_>>().join(" ")),
            "relations": file,
        }),
    ))
}
