//! The `orthosps` command-line interface.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation or verification
//! failure, 3 I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::classical::ClassicalData;
use crate::closure::{Sps, StateRoster};
use crate::decomposition::{decomposition_morphism, direct_union, verify_morphism};
use crate::error::Error;
use crate::generators::{compose_shuffled, gen_boolean, gen_mo, mutate, MutationKind};
use crate::instance::RawInstance;
use crate::io::{parse, serialize, FORMAT_VERSION};
use crate::lemmas::lemma_suite;
use crate::ortho::OrthoSps;
use crate::report::{Report, SamplingConfig};
use crate::rng::Seed;
use crate::{classical::verify_classical_theorems, StateSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "orthosps", version, about = "Verify, classify and decompose orthocomplemented state property systems")]
struct Cli {
    /// Emit a machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every axiom of an instance file.
    Verify { file: PathBuf },
    /// Print the classical properties and the partition of the states.
    Classify { file: PathBuf },
    /// Write one instance file per nonclassical component plus a manifest.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the direct union of several instance files.
    Compose {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every verification: axioms, classical structure, identities and
    /// the decomposition round trip.
    Check { file: PathBuf },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Power set of N states.
    Boolean {
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// MO_K: K complementary pairs of atoms.
    Mo {
        k: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Direct union of the given files with states and properties shuffled.
    Shuffle {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// An instance that violates one axiom.
    Mutate {
        file: PathBuf,
        #[arg(long)]
        kind: MutationKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

impl clap::ValueEnum for MutationKind {
    fn value_variants<'a>() -> &'a [Self] {
        &MutationKind::ALL
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.as_str()))
    }
}

#[allow(clippy::large_enum_variant)]
enum CliError {
    Usage(String),
    Io(String),
    /// An instance failed to parse or validate; the roster, when known,
    /// lets witnesses be rendered with state labels.
    Invalid { file: String, error: Error, roster: Option<StateRoster>, sps: Option<Sps> },
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Invalid { error: Error::CapExceeded { .. } | Error::ProductTooLarge { .. }, .. } => EXIT_USAGE,
            CliError::Invalid { .. } => EXIT_FAILURE,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({"status": "error", "kind": "usage", "message": m}),
            CliError::Io(m) => json!({"status": "error", "kind": "io", "message": m}),
            CliError::Invalid { file, error, roster, sps } => json!({
                "status": "fail",
                "file": file,
                "error": {
                    "kind": error.kind(),
                    "law": error.law(),
                    "message": error.to_string(),
                    "witness": witness(error, roster.as_ref(), sps.as_ref()),
                }
            }),
        }
    }

    fn to_text(&self) -> String {
        match self {
            CliError::Usage(m) => format!("usage error: {m}"),
            CliError::Io(m) => format!("I/O error: {m}"),
            CliError::Invalid { file, error, roster, sps } => {
                let mut line = format!("{file}: FAIL {}", error.kind());
                if let Some(law) = error.law() {
                    line.push_str(&format!(" [{law}]"));
                }
                let w = witness(error, roster.as_ref(), sps.as_ref());
                match w.as_object() {
                    Some(fields) if !fields.is_empty() => {
                        let parts: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
                        line.push_str(&format!(": {}", parts.join(" ")));
                    }
                    _ => line.push_str(&format!(": {error}")),
                }
                line
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn labels(roster: Option<&StateRoster>, set: StateSet) -> Value {
    match roster {
        Some(r) => Value::String(r.render(set)),
        None => Value::String(format!("{set:?}")),
    }
}

/// Structured witness for a failure, with labels wherever they are known.
fn witness(error: &Error, roster: Option<&StateRoster>, sps: Option<&Sps>) -> Value {
    let prop = |a: usize| match sps {
        Some(s) if a < s.len() => Value::String(s.describe(a)),
        _ => json!(a),
    };
    let state = |p: usize| match roster {
        Some(r) if p < r.len() => Value::String(r.name(p).to_string()),
        _ => json!(p),
    };
    match error {
        Error::NotIntersectionClosed { left, right, intersection } => json!({
            "left": labels(roster, *left),
            "right": labels(roster, *right),
            "intersection": labels(roster, *intersection),
        }),
        Error::DuplicateProperty { set } => json!({"set": labels(roster, *set)}),
        Error::NotInvolutive { property, partner, back } => {
            json!({"property": prop(*property), "perp": prop(*partner), "perp_perp": prop(*back)})
        }
        Error::NotAntitone { lower, upper } => json!({"lower": prop(*lower), "upper": prop(*upper)}),
        Error::ComplementLawFailed { property, partner, detail } => {
            json!({"property": prop(*property), "perp": prop(*partner), "detail": detail.to_string()})
        }
        Error::OrthoComFailed { property, state: s } => json!({"property": prop(*property), "state": state(*s)}),
        Error::IndexOutOfRange { what, index, len } => json!({"what": what, "index": index, "len": len}),
        Error::UnknownStateLabel(l) => json!({"label": l}),
        Error::DanglingPerpReference { property, reference } => {
            json!({"property": property, "reference": reference})
        }
        Error::Syntax { line, column, .. } => json!({"line": line, "column": column}),
        _ => json!({}),
    }
}

struct Output {
    code: i32,
    json: Value,
    text: String,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { code: EXIT_OK, json, text }
    }
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", display(path))))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", display(path))))
}

fn load(path: &Path) -> Result<OrthoSps, CliError> {
    let file = display(path);
    let text = read(path)?;
    let invalid = |error, roster, sps| CliError::Invalid { file: file.clone(), error, roster, sps };
    let raw = parse(&text).map_err(|e| invalid(e, None, None))?;
    let roster = StateRoster::new(raw.states.iter().cloned()).ok();
    let sps = raw.sps().map_err(|e| invalid(e, roster.clone(), None))?;
    raw.validate_ortho_on(sps.clone()).map_err(|e| invalid(e, roster, Some(sps)))
}

fn generic(file: &str, error: Error) -> CliError {
    match error {
        Error::CapExceeded { .. }
        | Error::ProductTooLarge { .. }
        | Error::InvalidParameter(_)
        | Error::EmptyRoster
        | Error::MutationInapplicable { .. } => CliError::Usage(error.to_string()),
        error => CliError::Invalid { file: file.to_string(), error, roster: None, sps: None },
    }
}

fn summary(osps: &OrthoSps) -> Value {
    json!({"states": osps.state_count(), "properties": osps.len()})
}

fn verify(path: &Path) -> Result<Output, CliError> {
    let osps = load(path)?;
    let symmetry = osps.symmetry_report();
    let text = format!(
        "{}: ok ({} states, {} properties; all axioms hold)",
        display(path),
        osps.state_count(),
        osps.len()
    );
    let mut out = Output::ok(
        json!({"status": "pass", "file": display(path), "instance": summary(&osps), "orthogonality": symmetry}),
        text,
    );
    if !symmetry.is_clean() {
        out.code = EXIT_FAILURE;
        out.json["status"] = json!("fail");
        out.text = format!("{}: orthogonality relation is inconsistent: {symmetry:?}", display(path));
    }
    Ok(out)
}

fn classify(path: &Path) -> Result<Output, CliError> {
    let osps = load(path)?;
    let sps = osps.sps();
    let data = ClassicalData::new(&osps).map_err(|e| generic(&display(path), e))?;
    let classical: Vec<String> = data.classical().iter().map(|&a| sps.describe(a)).collect();
    let partition: Vec<Value> = data
        .omega()
        .iter()
        .map(|&w| {
            let states: Vec<&str> = sps.kappa(w).iter().map(|s| sps.roster().name(s)).collect();
            json!({"omega": sps.describe(w), "states": states})
        })
        .collect();
    let mut text = format!(
        "|C| = {}\n|Ω| = {}\nclassical properties: {}\npartition of states:\n",
        classical.len(),
        data.omega().len(),
        classical.join(" ")
    );
    for &w in data.omega() {
        text.push_str(&format!("  {}: {}\n", sps.describe(w), sps.roster().render(sps.kappa(w))));
    }
    Ok(Output::ok(
        json!({
            "status": "pass",
            "file": display(path),
            "classical_properties": classical,
            "classical_property_count": data.classical().len(),
            "classical_state_count": data.omega().len(),
            "partition": partition,
        }),
        text.trim_end().to_string(),
    ))
}

fn decompose(path: &Path, out: &Path) -> Result<Output, CliError> {
    let osps = load(path)?;
    let file = display(path);
    let d = decomposition_morphism(&osps).map_err(|e| generic(&file, e))?;
    let check = verify_morphism(&d.pair, &osps, &d.union.osps);
    fs::create_dir_all(out).map_err(|e| CliError::Io(format!("cannot create {}: {e}", display(out))))?;

    let sps = osps.sps();
    let union_sps = d.union.osps.sps();
    let mut components = Vec::new();
    for (i, c) in d.components.iter().enumerate() {
        let name = format!("component_{i}.json");
        write(&out.join(&name), &serialize(&c.osps))?;
        components.push(json!({
            "file": name,
            "omega": sps.describe(c.omega),
            "omega_index": c.omega,
            "states": c.state_embedding.iter().map(|&s| sps.roster().name(s)).collect::<Vec<_>>(),
            "property_embedding": c.prop_embedding,
        }));
    }
    let m: Vec<Value> = d
        .pair
        .m
        .iter()
        .enumerate()
        .map(|(p, &t)| json!({"state": sps.roster().name(p), "image": union_sps.roster().name(t)}))
        .collect();
    let n: Vec<Value> = d
        .pair
        .n
        .iter()
        .enumerate()
        .map(|(u, &a)| json!({"tuple": d.union.prop_tuple[u], "image": a, "image_kappa": sps.roster().render(sps.kappa(a))}))
        .collect();
    let manifest = json!({
        "format_version": FORMAT_VERSION,
        "source": file,
        "classical_state_count": d.components.len(),
        "components": components,
        "union_states": union_sps.roster().names(),
        "m": m,
        "n": n,
        "verification": check,
    });
    let mut manifest_text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    manifest_text.push('\n');
    write(&out.join("manifest.json"), &manifest_text)?;

    let mut text = format!("{file}: {} component(s) written to {}\n", d.components.len(), display(out));
    for (i, c) in d.components.iter().enumerate() {
        text.push_str(&format!(
            "  component_{i}.json: ω = {}, {} states, {} properties\n",
            sps.describe(c.omega),
            c.osps.state_count(),
            c.osps.len()
        ));
    }
    text.push_str(&check.to_string());
    let code = if check.passed { EXIT_OK } else { EXIT_FAILURE };
    Ok(Output {
        code,
        json: json!({"status": if check.passed {"pass"} else {"fail"}, "out": display(out), "manifest": manifest}),
        text: text.trim_end().to_string(),
    })
}

fn compose(files: &[PathBuf], out: &Path) -> Result<Output, CliError> {
    let parts = files.iter().map(|f| load(f)).collect::<Result<Vec<_>, _>>()?;
    let union = direct_union(&parts).map_err(|e| generic("compose", e))?;
    write(out, &serialize(&union.osps))?;
    Ok(Output::ok(
        json!({"status": "pass", "out": display(out), "parts": files.len(), "instance": summary(&union.osps)}),
        format!(
            "wrote {} ({} parts, {} states, {} properties)",
            display(out),
            files.len(),
            union.osps.state_count(),
            union.osps.len()
        ),
    ))
}

fn check(path: &Path) -> Result<Output, CliError> {
    let osps = load(path)?;
    let file = display(path);
    let cfg = SamplingConfig::default();
    let data = ClassicalData::new(&osps).map_err(|e| generic(&file, e))?;
    let symmetry = osps.symmetry_report();
    let classical = verify_classical_theorems(&osps, &cfg).map_err(|e| generic(&file, e))?;
    let lemmas = lemma_suite(&osps, &cfg).map_err(|e| generic(&file, e))?;
    let (morphism, component_count) = match decomposition_morphism(&osps) {
        Ok(d) => (verify_morphism(&d.pair, &osps, &d.union.osps), d.components.len()),
        Err(e) => return Err(generic(&file, e)),
    };
    let reports: [&Report; 3] = [&classical, &lemmas, &morphism];
    let passed = symmetry.is_clean() && reports.iter().all(|r| r.passed);

    let mut text = format!(
        "{file}: {}\n  {} states, {} properties\n  |C| = {}, |Ω| = {}, {} component(s)\n  axioms: ok\n",
        if passed { "PASS" } else { "FAIL" },
        osps.state_count(),
        osps.len(),
        data.classical().len(),
        data.omega().len(),
        component_count
    );
    for r in reports {
        text.push_str(&r.to_string());
    }
    Ok(Output {
        code: if passed { EXIT_OK } else { EXIT_FAILURE },
        json: json!({
            "status": if passed {"pass"} else {"fail"},
            "file": file,
            "instance": summary(&osps),
            "classical_property_count": data.classical().len(),
            "classical_state_count": data.omega().len(),
            "component_count": component_count,
            "orthogonality": symmetry,
            "reports": reports,
        }),
        text: text.trim_end().to_string(),
    })
}

fn generated(osps: &OrthoSps, out: &Path, what: String) -> Result<Output, CliError> {
    write(out, &serialize(osps))?;
    Ok(Output::ok(
        json!({"status": "pass", "out": display(out), "generator": what, "instance": summary(osps)}),
        format!("wrote {} ({what}: {} states, {} properties)", display(out), osps.state_count(), osps.len()),
    ))
}

fn gen(what: GenCommand) -> Result<Output, CliError> {
    match what {
        GenCommand::Boolean { n, out } => {
            let osps = gen_boolean(n).map_err(|e| generic("gen", e))?;
            generated(&osps, &out, format!("boolean {n}"))
        }
        GenCommand::Mo { k, out } => {
            let osps = gen_mo(k).map_err(|e| generic("gen", e))?;
            generated(&osps, &out, format!("mo {k}"))
        }
        GenCommand::Shuffle { files, seed, out } => {
            let parts = files.iter().map(|f| load(f)).collect::<Result<Vec<_>, _>>()?;
            let osps = compose_shuffled(&parts, Seed(seed)).map_err(|e| generic("gen", e))?;
            generated(&osps, &out, format!("shuffle of {} part(s), seed {seed}", parts.len()))
        }
        GenCommand::Mutate { file, kind, seed, out } => {
            let osps = load(&file)?;
            let raw = mutate(&osps, kind, Seed(seed)).map_err(|e| generic("gen", e))?;
            write(&out, &serialize_raw(&raw))?;
            Ok(Output::ok(
                json!({"status": "pass", "out": display(&out), "generator": format!("mutate {kind}"), "seed": seed}),
                format!("wrote {} ({kind} mutation of {}, seed {seed})", display(&out), display(&file)),
            ))
        }
    }
}

/// Serializes an unvalidated instance in its own property order with
/// positional `perp` references.
fn serialize_raw(raw: &RawInstance) -> String {
    let doc = crate::io::InstanceDocument {
        format_version: FORMAT_VERSION.into(),
        states: raw.states.clone(),
        properties: raw
            .properties
            .iter()
            .map(|p| crate::io::PropertyRecord {
                name: p.name.clone(),
                kappa: p.kappa.iter().map(|s| raw.states.get(s).cloned().unwrap_or_else(|| format!("#{s}"))).collect(),
                perp: crate::io::PerpRef::Index(p.perp),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("documents always serialize");
    text.push('\n');
    text
}

/// Runs the CLI with explicit output streams and returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(stderr, "{rendered}") } else { write!(stdout, "{rendered}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify { file } => verify(&file),
        Command::Classify { file } => classify(&file),
        Command::Decompose { file, out } => decompose(&file, &out),
        Command::Compose { files, out } => compose(&files, &out),
        Command::Check { file } => check(&file),
        Command::Gen { what } => gen(what),
    };
    let (code, json, text, to_stderr) = match result {
        Ok(o) => {
            let failed = o.code != EXIT_OK;
            (o.code, o.json, o.text, failed)
        }
        Err(e) => (e.code(), e.to_json(), e.to_text(), true),
    };
    let _ = if cli.json {
        writeln!(stdout, "{}", serde_json::to_string_pretty(&json).expect("report serializes"))
    } else if to_stderr {
        writeln!(stderr, "{text}")
    } else {
        writeln!(stdout, "{text}")
    };
    code
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
