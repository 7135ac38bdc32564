//! Command-line front end: reads curve and embedding JSON, runs the
//! constructions and checks, and writes deterministic JSON or text.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use embcurve_core::certificate::CertOptions;
use embcurve_core::curves::{embed, embedding_from_value, h0_expected, degree_total, parse_curve};
use embcurve_core::exactla::format_rational;
use embcurve_core::gluing::{compose_verified, self_glue_verified, verify_gluing_with, GlueOptions, GluingReport};
use embcurve_core::verify::{min_k, min_k_report, run_axioms, secant_conditions, AxiomRunConfig, ComponentType};
use embcurve_core::{EmbeddedCurve, Error};
use serde::Serialize;
use serde_json::{json, Value};

const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_RANGE: u8 = 4;
const EXIT_VERIFY: u8 = 5;

#[derive(Parser)]
#[command(name = "embcurve", version, about = "Log-canonical embeddings of marked nodal rational curves")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Embed a marked curve by its complete log-canonical k-system.
    Embed {
        curve: PathBuf,
        #[arg(long)]
        k: u32,
    },
    /// Glue mark `i` of the first embedding to mark 1 of the second.
    Glue {
        first: PathBuf,
        i: usize,
        second: PathBuf,
        #[arg(long)]
        override_k: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Glue marks `i` and `j` of one embedding.
    Selfglue {
        embedding: PathBuf,
        i: usize,
        j: usize,
        #[arg(long)]
        override_k: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check that `output` is the projection of `input` gluing marks `i`, `j`.
    Verify {
        output: PathBuf,
        input: PathBuf,
        i: usize,
        j: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run an axiom suite described by a config file.
    Axioms {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        cases: Option<usize>,
        /// Comma-separated overrides, e.g. `max_legs=5,k=1`.
        #[arg(long)]
        caps: Option<String>,
    },
    /// Section-space dimension and degree for a signature.
    Dims { g: u32, n: usize, k: u32 },
    /// Minimal k satisfying both secant criteria per component type.
    Mink { types: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::OutsideRange { .. } => EXIT_RANGE,
            _ => EXIT_VALIDATION,
        };
        Failure { code, message: e.to_string() }
    }
}

fn parse_failure(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_PARSE, message: msg.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| parse_failure(format!("cannot read {}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| parse_failure(format!("{}: {e}", path.display())))
}

/// Accepts a bare embedding or the `{"embedding": …}` wrapper written by `glue`.
fn read_embedding(path: &Path) -> Result<EmbeddedCurve, Failure> {
    let mut v = read_json(path)?;
    if let Some(inner) = v.get_mut("embedding") {
        v = inner.take();
    }
    Ok(embedding_from_value(v)?)
}

struct Output {
    value: Value,
    text: String,
    code: u8,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn report_text(r: &GluingReport) -> String {
    let mut s = format!(
        "gluing {} (method {}, {})\n",
        if r.pass { "verified" } else { "FAILED" },
        serde_json::to_value(r.method).unwrap().as_str().unwrap_or(""),
        if r.in_theorem_range { "in theorem range" } else { "outside theorem range" }
    );
    for (name, c) in r.checks() {
        s.push_str(&format!("  {name:<24} {}\n", if c.pass { "pass" } else { "fail" }));
    }
    s
}

fn embedding_text(e: &EmbeddedCurve) -> String {
    let mut s = format!("k = {}, ambient P^{}\n", e.k(), e.ambient_dim());
    for a in 0..e.curve().components() {
        let coords: Vec<String> = e
            .parametrization(a)
            .iter()
            .map(|f| {
                let terms: Vec<String> = f
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_is_zero(c))
                    .map(|(d, c)| match d {
                        0 => format_rational(c),
                        1 => format!("{}*t", format_rational(c)),
                        _ => format!("{}*t^{d}", format_rational(c)),
                    })
                    .collect();
                if terms.is_empty() { "0".into() } else { terms.join(" + ") }
            })
            .collect();
        s.push_str(&format!("component {a}: [{}]\n", coords.join(" : ")));
    }
    for (l, img) in e.mark_images().iter().enumerate() {
        s.push_str(&format!("mark {}: [{}]\n", l + 1, img.iter().map(format_rational).collect::<Vec<_>>().join(":")));
    }
    s
}

fn num_is_zero(c: &embcurve_core::Rational) -> bool {
    *c == embcurve_core::Rational::from_integer(0.into())
}

fn glued(e: EmbeddedCurve, r: GluingReport) -> Output {
    let text = format!("{}{}", embedding_text(&e), report_text(&r));
    let code = if r.pass { 0 } else { EXIT_VERIFY };
    Output { value: json!({"embedding": to_value(&e), "report": to_value(&r)}), text, code }
}

fn apply_caps(cfg: &mut AxiomRunConfig, spec: &str) -> Result<(), Failure> {
    let mut caps = to_value(&cfg.caps);
    for item in spec.split(',').filter(|s| !s.trim().is_empty()) {
        let (key, val) = item
            .split_once('=')
            .ok_or_else(|| parse_failure(format!("--caps entry {item:?} is not key=value")))?;
        let n: u64 = val.trim().parse().map_err(|_| parse_failure(format!("--caps value {val:?} is not an integer")))?;
        caps[key.trim()] = json!(n);
    }
    cfg.caps = serde_json::from_value(caps).map_err(|e| parse_failure(format!("--caps: {e}")))?;
    Ok(())
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Embed { curve, k } => {
            let c = parse_curve(&read(curve)?)?;
            let e = embed(&c, *k)?;
            Ok(Output { value: to_value(&e), text: embedding_text(&e), code: 0 })
        }
        Command::Glue { first, i, second, override_k, seed } => {
            let (a, b) = (read_embedding(first)?, read_embedding(second)?);
            let cert = CertOptions { seed: *seed, ..Default::default() };
            let (e, r) = compose_verified(&a, *i, &b, &GlueOptions { override_k: *override_k }, &cert)?;
            Ok(glued(e, r))
        }
        Command::Selfglue { embedding, i, j, override_k, seed } => {
            let a = read_embedding(embedding)?;
            let cert = CertOptions { seed: *seed, ..Default::default() };
            let (e, r) = self_glue_verified(&a, *i, *j, &GlueOptions { override_k: *override_k }, &cert)?;
            Ok(glued(e, r))
        }
        Command::Verify { output, input, i, j, seed } => {
            let (out, inp) = (read_embedding(output)?, read_embedding(input)?);
            let cert = CertOptions { seed: *seed, ..Default::default() };
            let r = verify_gluing_with(&out, &inp, *i, *j, &cert)?;
            let code = if r.pass { 0 } else { EXIT_VERIFY };
            Ok(Output { value: to_value(&r), text: report_text(&r), code })
        }
        Command::Axioms { config, seed, cases, caps } => {
            let mut cfg: AxiomRunConfig =
                serde_json::from_value(read_json(config)?).map_err(|e| parse_failure(format!("{}: {e}", config.display())))?;
            if let Some(s) = seed {
                cfg.seed = *s;
            }
            if let Some(c) = cases {
                cfg.cases = *c;
            }
            if let Some(spec) = caps {
                apply_caps(&mut cfg, spec)?;
            }
            let r = run_axioms(&cfg)?;
            let mut text = String::new();
            for a in &r.axioms {
                let status = if a.skipped { "skipped" } else if a.failed == 0 { "pass" } else { "FAIL" };
                text.push_str(&format!("{:<8} {status:<7} {}/{} failing\n", a.axiom, a.failed, a.checked));
            }
            let code = if r.pass { 0 } else { EXIT_VERIFY };
            Ok(Output { value: to_value(&r), text, code })
        }
        Command::Dims { g, n, k } => {
            let h0 = h0_expected(*g, *n, *k)?;
            let d = degree_total(*g, *n, *k)?;
            Ok(Output {
                value: json!({"g": g, "n": n, "k": k, "h0": h0, "degree": d, "ambient_dim": h0 - 1}),
                text: format!("(g, n, k) = ({g}, {n}, {k}): h0 = {h0}, degree = {d}, ambient P^{}\n", h0 - 1),
                code: 0,
            })
        }
        Command::Mink { types } => {
            let raw: Vec<ComponentType> = serde_json::from_value(read_json(types)?)
                .map_err(|e| parse_failure(format!("{}: {e}", types.display())))?;
            for t in &raw {
                t.validate()?;
            }
            let rows = min_k_report(&raw);
            // past the minimum both inequalities keep holding
            let monotone = raw.iter().all(|t| (min_k(t)..=10).all(|k| secant_conditions(t, k) == (true, true)));
            let text = rows
                .iter()
                .map(|r| {
                    format!(
                        "(g={}, n={}, p={}) min k = {}{}\n",
                        r.ty.g,
                        r.ty.n,
                        r.ty.p,
                        r.min_k,
                        if r.flagged { "  [exceeds 5]" } else { "" }
                    )
                })
                .collect();
            Ok(Output { value: json!({"rows": to_value(&rows), "monotone": monotone}), text, code: 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.value).expect("json") + "\n",
                Format::Text => out.text,
            };
            let written = match &cli.out {
                Some(p) => fs::write(p, body).map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => {
                    print!("{body}");
                    Ok(())
                }
            };
            if let Err(msg) = written {
                eprintln!("error: {msg}");
                return ExitCode::from(EXIT_VALIDATION);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
