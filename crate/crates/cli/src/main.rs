use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use lojex::corpus::parse_corpus_line;
use lojex::diagram::{build_diagram, diagram_predicates, face_part};
use lojex::exponent::{exponent_report, newton_number_of_diagram, ExponentOptions};
use lojex::modp::default_primes;
use lojex::nondegeneracy::nondegeneracy_on_diagram;
use lojex::oracle::{
    brute_force_faces_stable, engine_faces, monte_carlo_newton_volumes, torus_degeneracy_search,
    OracleConfig,
};
use lojex::report::{analyze, render_text, summarize_diagram, AnalyzeOptions, SCHEMA_VERSION};
use lojex::scalar::fmt_rational;
use lojex::{parse_germ, Error, PolyGerm};

#[derive(Parser, Debug)]
#[command(
    name = "lojex",
    version,
    about = "Newton diagrams and Łojasiewicz exponents of isolated singularities"
)]
struct Cli {
    command: Command,
    /// Germ expression, or a file with one germ per line
    input: Option<String>,
    /// Number of variables (required unless every line carries `<arity>;`)
    #[arg(short = 'n')]
    arity: Option<usize>,
    /// One JSON document per germ on stdout
    #[arg(long)]
    json: bool,
    /// Add the monomial-curve lower bound
    #[arg(long)]
    curve_probe: bool,
    /// Offer the upper bound as a flagged conjectural exact value
    #[arg(long)]
    conjecture: bool,
    #[arg(long = "normal-bound", value_name = "B")]
    normal_bound: Option<u32>,
    #[arg(long = "mc-samples", value_name = "N")]
    mc_samples: Option<u64>,
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    /// Batch file with one `<arity>;<expression>` per line
    #[arg(long, value_name = "FILE")]
    corpus: Option<String>,
    /// JSON file with oracle settings
    #[arg(long, value_name = "FILE")]
    config: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    Analyze,
    Diagram,
    Faces,
    Nondegenerate,
    Exponent,
    NewtonNumber,
    Oracle,
}

const EXIT_INPUT: u8 = 2;
const EXIT_CONSISTENCY: u8 = 3;

struct Outcome {
    stdout: String,
    stderr: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let (config, germs) = match prepare(&cli) {
        Ok(x) => x,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let outcomes: Vec<Outcome> = germs
        .par_iter()
        .map(|g| run_one(&cli, &config, g))
        .collect();
    let mut code = 0;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for o in outcomes {
        let _ = out.write_all(o.stdout.as_bytes());
        if !o.stderr.is_empty() {
            eprint!("{}", o.stderr);
        }
        code = code.max(o.code);
    }
    ExitCode::from(code)
}

/// A germ or the reason its line could not be read.
type Parsed = (String, Result<PolyGerm, Error>);

fn prepare(cli: &Cli) -> Result<(OracleConfig, Vec<Parsed>), String> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
            serde_json::from_str(&text).map_err(|e| format!("bad config {path}: {e}"))?
        }
        None => OracleConfig::default(),
    };
    if let Some(b) = cli.normal_bound {
        config.normal_bound = b;
    }
    if let Some(m) = cli.mc_samples {
        config.mc_samples = m;
    }
    if let Some(s) = cli.seed {
        config.rng_seed = s;
    }
    config.validate().map_err(|e| e.to_string())?;

    let germs = match (&cli.corpus, &cli.input) {
        (Some(_), Some(_)) => return Err("give either an input or --corpus, not both".into()),
        (None, None) => return Err("no input given".into()),
        (Some(path), None) => read_lines(path, None)?,
        (None, Some(input)) if Path::new(input).is_file() => read_lines(input, cli.arity)?,
        (None, Some(expr)) => {
            let n = cli.arity.ok_or("-n <arity> is required for inline input")?;
            vec![(expr.clone(), parse_germ(expr, n))]
        }
    };
    Ok((config, germs))
}

fn read_lines(path: &str, arity: Option<usize>) -> Result<Vec<Parsed>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let mut out = Vec::new();
    for line in text.lines() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let parsed = if body.contains(';') {
            parse_corpus_line(body).expect("nonempty line")
        } else {
            match arity {
                Some(n) => parse_germ(body, n),
                None => Err(Error::Syntax {
                    pos: 0,
                    msg: "line lacks `<arity>;` and no -n was given".into(),
                }),
            }
        };
        out.push((body.to_string(), parsed));
    }
    Ok(out)
}

fn run_one(cli: &Cli, config: &OracleConfig, (src, parsed): &Parsed) -> Outcome {
    let result = parsed.clone().and_then(|f| command_output(cli, config, &f));
    match result {
        Ok((doc, text)) => Outcome {
            stdout: if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
            } else {
                text
            },
            stderr: String::new(),
            code: 0,
        },
        Err(e) => {
            let code = if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_CONSISTENCY
            };
            let stdout = if cli.json {
                let doc =
                    json!({"schema_version": SCHEMA_VERSION, "input": src, "error": e.to_string()});
                format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
            } else {
                String::new()
            };
            Outcome {
                stdout,
                stderr: format!("error: {src}: {e}\n"),
                code,
            }
        }
    }
}

fn exponent_options(cli: &Cli) -> ExponentOptions {
    ExponentOptions {
        curve_probe: None,
        conjecture: cli.conjecture,
    }
}

fn envelope(command: &str, f: &PolyGerm, body: Value) -> Value {
    let mut doc = json!({"schema_version": SCHEMA_VERSION, "command": command, "input": f.to_string(), "arity": f.arity()});
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    doc
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn command_output(
    cli: &Cli,
    config: &OracleConfig,
    f: &PolyGerm,
) -> Result<(Value, String), Error> {
    let d = build_diagram(f)?;
    match cli.command {
        Command::Analyze => {
            let mut opts = AnalyzeOptions {
                exponent: exponent_options(cli),
                config: config.clone(),
            };
            if cli.curve_probe {
                opts.exponent.curve_probe = Some(config.curve_weight_bound);
            }
            let rep = analyze(f, &opts)?;
            Ok((to_value(&rep), render_text(&rep)))
        }
        Command::Diagram => {
            let pred = diagram_predicates(&d);
            let summary = summarize_diagram(&d)?;
            let mut text = format!("germ: {f}\n");
            text += &format!(
                "convenient: {}  nearly convenient: {}  hyperplane contact: {:?}\n",
                pred.convenient, pred.nearly_convenient, pred.hyperplane_contact
            );
            text += &format!(
                "faces: {} vertices, {} edges, {} facets\n",
                d.faces_of_dim(0).count(),
                d.faces_of_dim(1).count(),
                d.facets().count()
            );
            if let Some(m) = &summary.m0 {
                text += &format!("m0 = {m}\n");
            }
            if let Some(j) = &summary.j_segment {
                text += &format!("J segment: {j}\n");
            }
            if let Some(c) = &summary.boundary_case {
                text += &format!("boundary case: {c:?}\n");
            }
            let body = json!({
                "predicates": to_value(&pred),
                "m0": summary.m0,
                "j_segment": summary.j_segment,
                "boundary_case": summary.boundary_case.map(|c| to_value(&c)),
                "vertices": d.vertices().iter().map(|v| v.0.clone()).collect::<Vec<_>>(),
            });
            Ok((envelope("diagram", f, body), text))
        }
        Command::Faces => {
            let summary = summarize_diagram(&d)?;
            let mut text = format!("germ: {f}\n");
            let mut faces = Vec::new();
            for (s, fs) in summary.faces.iter().zip(d.faces()) {
                let part = face_part(f, fs)?.to_string();
                text += &format!(
                    "#{:<3} dim {}  u = {:?}  l = {}  vertices {:?}",
                    s.id, s.dim, s.normal, s.level, s.vertices
                );
                if let Some(m) = &s.m {
                    text += &format!("  m = {m}");
                }
                if let Some(ax) = &s.exceptional_axes {
                    text += &if ax.is_empty() {
                        "  unexceptional".to_string()
                    } else {
                        format!("  exceptional w.r.t. {ax:?}")
                    };
                }
                text += &format!("\n     f_S = {part}\n");
                let mut v = to_value(s);
                v["face_part"] = json!(part);
                faces.push(v);
            }
            Ok((envelope("faces", f, json!({ "faces": faces })), text))
        }
        Command::Nondegenerate => {
            let nd = nondegeneracy_on_diagram(f, &d)?;
            let mut text = format!("germ: {f}\nverdict: {:?}\n", nd.verdict);
            for fv in &nd.faces {
                text += &format!("  face #{}: {:?} ({:?})", fv.face_id, fv.verdict, fv.method);
                if let Some(w) = &fv.witness {
                    text += &format!("  witness [{}] over {}", w.point.join(", "), w.field);
                    if let Some(p) = w.prime {
                        text += &format!(" p = {p}");
                    }
                }
                text += "\n";
            }
            Ok((
                envelope(
                    "nondegenerate",
                    f,
                    json!({ "nondegeneracy": to_value(&nd) }),
                ),
                text,
            ))
        }
        Command::Exponent => {
            f.require_singularity()?;
            let nd = nondegeneracy_on_diagram(f, &d)?;
            let mut opts = exponent_options(cli);
            if cli.curve_probe {
                opts.curve_probe = Some(config.curve_weight_bound);
            }
            let r = exponent_report(f, &d, &nd, &opts)?;
            let mut text = format!("germ: {f}\n");
            for v in &r.values {
                text += &format!(
                    "  {:?}: {:?} {}\n",
                    v.method,
                    v.kind,
                    fmt_rational(&v.value)
                );
            }
            let show =
                |q: &Option<lojex::Rational>| q.as_ref().map_or("-".to_string(), fmt_rational);
            text += &format!(
                "exact: {}  lower: {}  upper: {}\n",
                show(&r.exact),
                show(&r.lower),
                show(&r.upper)
            );
            if let Some(s) = r.s_f {
                text += &format!("s(f) = {s}\n");
            }
            if let Some(c) = &r.conjecture {
                text += &format!("{}: {}\n", c.flag, fmt_rational(&c.value));
            }
            for a in r.assumptions.iter().chain(&r.diagnostics) {
                text += &format!("note: {a}\n");
            }
            Ok((
                envelope("exponent", f, json!({ "exponent": to_value(&r) })),
                text,
            ))
        }
        Command::NewtonNumber => {
            let nn = newton_number_of_diagram(&d)?;
            let mut text = format!(
                "germ: {f}\nV3 = {}  V2 = {}  V1 = {}  nu = {}\n",
                fmt_rational(&nn.V3),
                fmt_rational(&nn.V2),
                fmt_rational(&nn.V1),
                fmt_rational(&nn.nu)
            );
            let mut body = json!({ "newton_number": to_value(&nn) });
            if cli.mc_samples.is_some() {
                let est = monte_carlo_newton_volumes(&d, config.mc_samples, config.rng_seed)?;
                text += &format!("Monte-Carlo V3 = {:.6} ± {:.6}\n", est.v3, est.stderr);
                body["monte_carlo"] = to_value(&est);
            }
            Ok((envelope("newton-number", f, body), text))
        }
        Command::Oracle => oracle_output(f, &d, config),
    }
}

fn oracle_output(
    f: &PolyGerm,
    d: &lojex::diagram::NewtonDiagram,
    config: &OracleConfig,
) -> Result<(Value, String), Error> {
    let mut text = format!("germ: {f}\n");
    let mut body = json!({});
    if f.arity() <= 3 {
        let st = brute_force_faces_stable(&f.support(), config.normal_bound, 1024);
        let agree = st.faces == engine_faces(d);
        text += &format!(
            "brute-force faces: {} (bound {}, stable: {}), engine faces: {}, agree: {agree}\n",
            st.faces.len(),
            st.bound,
            st.stable,
            d.faces().len()
        );
        body["brute_force"] = json!({"faces": st.faces.len(), "bound": st.bound, "stable": st.stable, "agrees_with_engine": agree});
    }
    let primes = default_primes(config.prime_count);
    let mut hits = Vec::new();
    for s in d.faces() {
        let fs = face_part(f, s)?;
        if let Some(w) = torus_degeneracy_search(&fs, &primes, 200, config.rng_seed) {
            text += &format!(
                "falsifier: face #{} has torus critical point [{}] mod {}\n",
                s.id,
                w.point.join(", "),
                w.prime.unwrap_or(0)
            );
            hits.push(json!({"face_id": s.id, "witness": to_value(&w)}));
        }
    }
    if hits.is_empty() {
        text += "falsifier: no torus critical point found\n";
    }
    body["falsifier"] = Value::Array(hits);
    if f.arity() == 3 && diagram_predicates(d).convenient {
        let nn = newton_number_of_diagram(d)?;
        let est = monte_carlo_newton_volumes(d, config.mc_samples, config.rng_seed)?;
        text += &format!(
            "V3 exact {} vs Monte-Carlo {:.6} ± {:.6}\n",
            fmt_rational(&nn.V3),
            est.v3,
            est.stderr
        );
        body["monte_carlo"] =
            json!({"exact_v3": fmt_rational(&nn.V3), "estimate": est.v3, "stderr": est.stderr});
    }
    if f.is_singularity().is_yes() {
        match lojex::curve::monomial_curve_lower_bound(f, config.curve_weight_bound) {
            Ok(b) => {
                text += &format!(
                    "curve probe: {} at weights {:?} ({})\n",
                    fmt_rational(&b.value),
                    b.weights,
                    b.pattern
                );
                body["curve_probe"] = to_value(&b);
            }
            Err(e) => {
                text += &format!("curve probe: {e}\n");
                body["curve_probe"] = json!({ "error": e.to_string() });
            }
        }
    }
    Ok((envelope("oracle", f, body), text))
}
