mod cache;
mod render;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use braid3::verify::run_suite;
use braid3::{
    coincidence, coincidence_full, find_ccbar_power, normal_form, normal_forms_of_length,
    BlockForm, CapExceeded, ConjugacyEngine, NormalForm, PosWord, Suite, WordError,
    DEFAULT_CLOSURE_CAP,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cache::ClassTableCache;
use crate::render::{class_text, BlockFormView, ClassTable, ClassView, CyclicClassView};

/// Lengths above this are refused unless `--allow-large` is given.
const LENGTH_LIMIT: usize = 20;

#[derive(Parser)]
#[command(
    name = "braid3",
    version,
    about = "Conjugacy classes of positive 3-braids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Upper bound on any closure computation.
    #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP, global = true)]
    cap: usize,

    /// Directory for cached class tables.
    #[arg(long, env = "BRAID3_CACHE", global = true)]
    cache: Option<PathBuf>,

    /// Omit timing so that repeated runs are byte-identical.
    #[arg(long, global = true)]
    stable: bool,

    /// Exit with status 1 when a boolean query answers false.
    #[arg(long, global = true)]
    exit_code: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form Δ^m·tail of a word.
    Normal { word: String },
    /// Reflection σ₁ ↔ σ₂.
    Reflect { word: String },
    /// The cyclic-equivalence class.
    CyclicClass { word: String },
    /// The positive conjugacy class and its cyclic decomposition.
    Class { word: String },
    /// Whether two positive braids are conjugate.
    Conjugate { a: String, b: String },
    /// A minimal expression (c·c̄)^ℓ, if one exists.
    Ccbar { word: String },
    /// Whether the conjugacy class is a single cyclic class.
    Coincide {
        word: String,
        /// Evaluate every condition even after the verdict is known.
        #[arg(long)]
        full: bool,
    },
    /// Every conjugacy class of the given length.
    Enumerate {
        length: usize,
        #[arg(long)]
        allow_large: bool,
    },
    /// Run an exhaustive verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        allow_large: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot parse {input:?}: {source}")]
    Parse { input: String, source: WordError },
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error("length {0} exceeds the limit of {LENGTH_LIMIT}; pass --allow-large to override")]
    TooLarge(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Cap(_) | CliError::TooLarge(_) => 3,
        }
    }
}

/// A rendered command result and the exit status it implies.
struct Outcome {
    result: Value,
    text: String,
    status: u8,
}

impl Outcome {
    fn ok(result: Value, text: String) -> Outcome {
        Outcome {
            result,
            text,
            status: 0,
        }
    }
}

fn parse_word(text: &str) -> Result<PosWord, CliError> {
    text.parse().map_err(|source| CliError::Parse {
        input: text.to_string(),
        source,
    })
}

fn parse_braid(text: &str) -> Result<NormalForm, CliError> {
    Ok(normal_form(&parse_word(text)?))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("views serialize")
}

fn class_table(engine: &ConjugacyEngine, length: usize) -> Result<ClassTable, CapExceeded> {
    let forms = normal_forms_of_length(length);
    let mut classes: Vec<ClassView> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for a in &forms {
        if seen.contains(a) {
            continue;
        }
        let report = engine.class_report(a)?;
        seen.extend(report.conjugacy_class.iter().copied());
        classes.push((&report).into());
    }
    classes.sort_by_cached_key(|c| c.representative.sort_key());
    Ok(ClassTable {
        length,
        braid_count: forms.len(),
        class_count: classes.len(),
        classes,
    })
}

fn run(cli: &Cli, engine: &ConjugacyEngine) -> Result<Outcome, CliError> {
    let cap = cli.cap;
    match &cli.command {
        Command::Normal { word } => {
            let w = parse_word(word)?;
            let f = normal_form(&w);
            let blocks = BlockForm::from_word(&f.tail()).expect("normal-form tails are Δ-free");
            let result = json!({
                "word": w.to_string(),
                "normal_form": f,
                "infimum": f.infimum(),
                "tail": f.tail().to_string(),
                "length": f.len(),
                "block_form": BlockFormView::from(&blocks),
            });
            Ok(Outcome::ok(result, format!("{f}\n")))
        }
        Command::Reflect { word } => {
            let w = parse_word(word)?;
            let r = w.reflect();
            let f = normal_form(&r);
            let result =
                json!({ "word": w.to_string(), "reflection": r.to_string(), "normal_form": f });
            Ok(Outcome::ok(result, format!("{r}\t{f}\n")))
        }
        Command::CyclicClass { word } => {
            let a = parse_braid(word)?;
            let class = engine.cyclic_class(&a)?;
            let view = CyclicClassView::from(class.as_ref());
            let members: Vec<String> = view.members.iter().map(ToString::to_string).collect();
            let text = format!(
                "[{}]↻ ({} braids)\n{}\n",
                view.representative,
                view.size,
                members.join("\n")
            );
            let mut result = to_value(&view);
            result["input"] = to_value(&a);
            Ok(Outcome::ok(result, text))
        }
        Command::Class { word } => {
            let a = parse_braid(word)?;
            let report = engine.class_report(&a)?;
            let view = ClassView::from(&report);
            let mut text = String::new();
            class_text(&view, &mut text);
            let mut result = to_value(&view);
            result["input"] = to_value(&a);
            Ok(Outcome::ok(result, text))
        }
        Command::Conjugate { a, b } => {
            let (x, y) = (parse_braid(a)?, parse_braid(b)?);
            let conjugate = engine.are_conjugate(&x, &y)?;
            let cyclic = engine.cyclic_equivalent(&x, &y)?;
            let result = json!({
                "conjugate": conjugate,
                "cyclic_equivalent": cyclic,
                "via_reflection": conjugate && !cyclic,
            });
            let status = u8::from(cli.exit_code && !conjugate);
            Ok(Outcome {
                result,
                text: format!("{conjugate}\n"),
                status,
            })
        }
        Command::Ccbar { word } => {
            let a = parse_braid(word)?;
            let (result, text) = match find_ccbar_power(&a, cap)? {
                Some(p) => (
                    json!({
                        "found": true,
                        "c": p.c.to_string(),
                        "c_bar": p.c.reflect().to_string(),
                        "ell": p.ell,
                        "minimal": p.minimal,
                    }),
                    format!(
                        "({}·{})^{}{}\n",
                        p.c,
                        p.c.reflect(),
                        p.ell,
                        if p.minimal { "" } else { " (not minimal)" }
                    ),
                ),
                None => (json!({ "found": false }), "none\n".to_string()),
            };
            let status = u8::from(cli.exit_code && !result["found"].as_bool().unwrap_or(false));
            Ok(Outcome {
                result,
                text,
                status,
            })
        }
        Command::Coincide { word, full } => {
            let a = parse_braid(word)?;
            let verdict = if *full {
                coincidence_full(&a, cap)?
            } else {
                coincidence(&a, cap)?
            };
            let show = |x: Option<bool>| x.map_or("skipped".to_string(), |b| b.to_string());
            let text = format!(
                "{}\n  (1) inf = 0: {}\n  (2) shape: {}\n  (3) not (c·c̄)^ℓ: {}\n",
                verdict.coincides,
                verdict.condition_1_inf_zero,
                verdict.condition_2_shape,
                show(verdict.condition_3_not_ccbar_power)
            );
            let status = u8::from(cli.exit_code && !verdict.coincides);
            Ok(Outcome {
                result: to_value(&verdict),
                text,
                status,
            })
        }
        Command::Enumerate {
            length,
            allow_large,
        } => {
            if *length > LENGTH_LIMIT && !allow_large {
                return Err(CliError::TooLarge(*length));
            }
            let cache = cli.cache.as_ref().map(ClassTableCache::new);
            let table = match cache.as_ref().and_then(|c| c.load(*length)) {
                Some(t) => t,
                None => {
                    let t = class_table(engine, *length)?;
                    if let Some(c) = &cache {
                        if let Err(e) = c.store(&t) {
                            eprintln!("warning: could not write class cache: {e}");
                        }
                    }
                    t
                }
            };
            let mut text = format!(
                "length {}: {} braids, {} conjugacy classes\n",
                table.length, table.braid_count, table.class_count
            );
            for class in &table.classes {
                class_text(class, &mut text);
            }
            Ok(Outcome::ok(to_value(&table), text))
        }
        Command::Verify {
            suite,
            max_len,
            allow_large,
        } => {
            let max_len = max_len.unwrap_or_else(|| suite.default_max_len());
            if max_len > LENGTH_LIMIT && !allow_large {
                return Err(CliError::TooLarge(max_len));
            }
            let reports = run_suite(engine, *suite, max_len)?;
            let passed = reports.iter().all(|r| r.passed());
            let mut text = String::new();
            for r in &reports {
                let counts: Vec<String> =
                    r.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(
                    text,
                    "{} {} max_len={} instances={} {}",
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.suite,
                    r.max_len,
                    r.instances_checked,
                    counts.join(" ")
                );
                for f in &r.failures {
                    let _ = writeln!(text, "  {}", json!(f));
                }
            }
            Ok(Outcome {
                result: json!({ "passed": passed, "suites": reports }),
                text,
                status: u8::from(!passed),
            })
        }
    }
}

fn inputs(command: &Command) -> Vec<String> {
    match command {
        Command::Normal { word }
        | Command::Reflect { word }
        | Command::CyclicClass { word }
        | Command::Class { word }
        | Command::Ccbar { word }
        | Command::Coincide { word, .. } => vec![word.clone()],
        Command::Conjugate { a, b } => vec![a.clone(), b.clone()],
        Command::Enumerate { length, .. } => vec![length.to_string()],
        Command::Verify { suite, .. } => vec![suite.to_string()],
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Normal { .. } => "normal",
        Command::Reflect { .. } => "reflect",
        Command::CyclicClass { .. } => "cyclic-class",
        Command::Class { .. } => "class",
        Command::Conjugate { .. } => "conjugate",
        Command::Ccbar { .. } => "ccbar",
        Command::Coincide { .. } => "coincide",
        Command::Enumerate { .. } => "enumerate",
        Command::Verify { .. } => "verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let engine = ConjugacyEngine::new(cli.cap);
    let start = Instant::now();
    let outcome = run(&cli, &engine);
    let elapsed_ms = start.elapsed().as_millis() as u64;

    match outcome {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => {
                    let mut doc = json!({
                        "command": command_name(&cli.command),
                        "inputs": inputs(&cli.command),
                        "result": out.result,
                    });
                    if !cli.stable {
                        doc["elapsed_ms"] = json!(elapsed_ms);
                    }
                    println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
                }
            }
            ExitCode::from(out.status)
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => {
                    let doc = json!({
                        "command": command_name(&cli.command),
                        "inputs": inputs(&cli.command),
                        "error": e.to_string(),
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
                }
            }
            ExitCode::from(e.exit_code())
        }
    }
}
