use std::fs;
use std::io::{self, Write};
use std::num::NonZeroUsize;
use std::path::Path;

use xaiact_core::catalog::{
    parse_document, parse_method_catalog, parse_regulation_set, serialize_method_catalog,
    serialize_regulation_set, Warning,
};
use xaiact_core::report::{
    render_matrix, render_ranking, reproduce, sensitivity_csv, sensitivity_summary, Format,
};
use xaiact_core::{
    builtin_dataset, compliance_score, rank_methods, sweep, DeltaGrid, Error, MethodCatalog,
    RegulationProfile, RegulationSet, Target,
};

use crate::cli::{Cli, Command, DocumentKind, Inputs, OutputFormat};

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_COMPUTATION: u8 = 3;

/// A non-zero exit with an optional message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self::new(EXIT_USAGE, message)
    }

    /// Exit silently; diagnostics were already printed.
    fn quiet(code: u8) -> Self {
        Self::new(code, "")
    }
}

fn computation(err: Error) -> Failure {
    Failure::new(EXIT_COMPUTATION, err.to_string())
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { paths, strict } => validate(&paths, strict),
        Command::Rank {
            regulation,
            target,
            top,
            inputs,
            format,
        } => rank(&inputs, &regulation, &target, top, format),
        Command::Score {
            regulation,
            inputs,
            format,
        } => score(&inputs, regulation.as_deref(), format),
        Command::Sensitivity {
            inputs,
            delta_min,
            delta_max,
            steps,
            out,
        } => sensitivity(&inputs, delta_min, delta_max, steps, out.as_deref()),
        Command::Reproduce { inputs } => reproduce_table(&inputs),
        Command::ExportBuiltin { kind, out } => export(kind, out.as_deref()),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::new(EXIT_FAILURE, format!("cannot write output: {e}")))
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn print_warnings(source: &str, warnings: &[Warning]) {
    for w in warnings {
        eprintln!("warning: {source}: {w}");
    }
}

fn load(inputs: &Inputs) -> Result<(MethodCatalog, RegulationSet), Failure> {
    let (builtin_methods, builtin_regulations) = builtin_dataset();
    let methods = match &inputs.methods {
        None => builtin_methods,
        Some(path) => {
            let parsed = parse_method_catalog(&read(path)?)
                .map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", path.display())))?;
            print_warnings(&path.display().to_string(), &parsed.warnings);
            parsed.document
        }
    };
    let regulations = match &inputs.regulations {
        None => builtin_regulations,
        Some(path) => {
            parse_regulation_set(&read(path)?)
                .map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", path.display())))?
                .document
        }
    };
    Ok((methods, regulations))
}

fn find_regulation<'a>(set: &'a RegulationSet, id: &str) -> Result<&'a RegulationProfile, Failure> {
    set.regulation(id).ok_or_else(|| {
        let known: Vec<&str> = set.regulations.iter().map(|r| r.id.as_str()).collect();
        Failure::usage(format!(
            "unknown regulation `{id}` (known: {})",
            known.join(", ")
        ))
    })
}

fn format_of(format: OutputFormat) -> Format {
    match format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Csv => Format::Csv,
        OutputFormat::Records => Format::Records,
    }
}

fn validate(paths: &[std::path::PathBuf], strict: bool) -> Result<(), Failure> {
    if paths.is_empty() {
        let (methods, regulations) = builtin_dataset();
        println!(
            "builtin: ok ({} methods, {} regulations)",
            methods.methods.len(),
            regulations.regulations.len()
        );
        return Ok(());
    }
    let mut failed = false;
    for path in paths {
        let source = path.display().to_string();
        let text = match fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) => {
                eprintln!("error: {source}: {e}");
                failed = true;
                continue;
            }
        };
        match parse_document(&text) {
            Err(e) => {
                eprintln!("error: {source}: {e}");
                failed = true;
            }
            Ok(parsed) => {
                print_warnings(&source, &parsed.warnings);
                if strict && !parsed.warnings.is_empty() {
                    eprintln!(
                        "error: {source}: {} warning(s) in strict mode",
                        parsed.warnings.len()
                    );
                    failed = true;
                } else {
                    println!("{source}: ok");
                }
            }
        }
    }
    if failed {
        Err(Failure::quiet(EXIT_FAILURE))
    } else {
        Ok(())
    }
}

fn rank(
    inputs: &Inputs,
    regulation: &str,
    target: &str,
    top: Option<usize>,
    format: OutputFormat,
) -> Result<(), Failure> {
    let (methods, regulations) = load(inputs)?;
    let r = find_regulation(&regulations, regulation)?;
    let target: Target = target
        .parse()
        .map_err(|e: Error| Failure::usage(e.to_string()))?;
    if let Target::Category(c) = target {
        if !r.requires(c) {
            return Err(Failure::usage(format!(
                "`{}` does not require {c}; valid targets: {}",
                r.id,
                Target::all_for(r)
                    .iter()
                    .map(|t| t.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
    }
    let top_k = match top {
        None => None,
        Some(k) => {
            Some(NonZeroUsize::new(k).ok_or_else(|| Failure::usage("--top must be positive"))?)
        }
    };
    let entries = rank_methods(&methods.methods, r, target, top_k).map_err(computation)?;
    emit(
        &render_ranking(r, target, &entries, format_of(format)),
        None,
    )
}

fn score(inputs: &Inputs, regulation: Option<&str>, format: OutputFormat) -> Result<(), Failure> {
    let (methods, regulations) = load(inputs)?;
    let selected: Vec<&RegulationProfile> = match regulation {
        Some(id) => vec![find_regulation(&regulations, id)?],
        None => regulations.regulations.iter().collect(),
    };
    let mut results = Vec::new();
    for r in selected {
        for m in &methods.methods {
            results.push(compliance_score(m, r).map_err(computation)?);
        }
    }
    emit(&render_matrix(&results, format_of(format)), None)
}

fn sensitivity(
    inputs: &Inputs,
    delta_min: f64,
    delta_max: f64,
    steps: usize,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let grid =
        DeltaGrid::new(delta_min, delta_max, steps).map_err(|e| Failure::usage(e.to_string()))?;
    let (methods, regulations) = load(inputs)?;
    let report = sweep(&methods.methods, &regulations.regulations, grid).map_err(computation)?;
    let csv = sensitivity_csv(&report);
    let summary = sensitivity_summary(&report);
    match out {
        Some(path) => {
            emit(&csv, Some(path))?;
            emit(&summary, None)
        }
        None => {
            emit(&csv, None)?;
            eprint!("{summary}");
            Ok(())
        }
    }
}

fn reproduce_table(inputs: &Inputs) -> Result<(), Failure> {
    let (methods, regulations) = load(inputs)?;
    let rep = reproduce(&methods.methods, &regulations.regulations).map_err(computation)?;
    emit(&rep.render(), None)?;
    if rep.passed() {
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_FAILURE,
            format!(
                "{} of {} cells differ",
                rep.checks.len() - rep.matched(),
                rep.checks.len()
            ),
        ))
    }
}

fn export(kind: DocumentKind, out: Option<&Path>) -> Result<(), Failure> {
    let (methods, regulations) = builtin_dataset();
    let text = match kind {
        DocumentKind::Methods => serialize_method_catalog(&methods),
        DocumentKind::Regulations => serialize_regulation_set(&regulations),
    };
    emit(&text, out)
}
