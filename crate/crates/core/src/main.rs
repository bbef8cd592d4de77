use std::collections::HashSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use croloc::diagnostic::Diagnostic;
use croloc::eval::{link_oracles_file, Mode};
use croloc::pipeline::{
    cmd_eval, cmd_extract, cmd_index, cmd_locate, cmd_translate, BackendKind, LocateOptions, PipelineError,
    ProjectConfig,
};
use croloc::rank::{Alpha, Technique};
use regex::Regex;

#[derive(Parser)]
#[command(name = "croloc", version, about = "Cross-lingual bug localization for Japanese/English code bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Project config (JSON).
    #[arg(long, short)]
    config: PathBuf,
    /// History weight for BugLocator, in [0, 1].
    #[arg(long)]
    alpha: Option<f64>,
    /// Entries per query in the run file.
    #[arg(long)]
    top_k: Option<usize>,
    #[arg(long, value_parser = ["vsm", "rvsm", "buglocator"])]
    technique: Option<String>,
    #[arg(long, value_parser = ["identity", "glossary", "service"])]
    translator: Option<String>,
    /// Glossary TSV for the glossary translator.
    #[arg(long)]
    glossary: Option<PathBuf>,
    /// Translation cache (JSONL).
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Use the untranslated source index (reports are still translated).
    #[arg(long)]
    no_translate: bool,
    /// Stem tokens before indexing.
    #[arg(long)]
    stemming: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Write comment and string spans to spans.jsonl.
    Extract(Common),
    /// Translate sources and reports into the output directory.
    Translate(Common),
    /// Build the term index.
    Index(Common),
    /// Rank files for bug reports and write a TREC run.
    Locate {
        #[command(flatten)]
        common: Common,
        /// Report id to rank; repeatable. Defaults to every usable report.
        #[arg(long = "query", short = 'q')]
        queries: Vec<String>,
        /// Rank every report, not only usable ones.
        #[arg(long)]
        all: bool,
        /// Run file to write.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Score a run against the project's oracles.
    Eval {
        #[command(flatten)]
        common: Common,
        /// Run file; defaults to the one `locate` writes.
        #[arg(long)]
        run: Option<PathBuf>,
        /// Qrels file overriding the config.
        #[arg(long)]
        qrels: Option<PathBuf>,
        #[arg(long, value_parser = ["direct", "direct+indirect"])]
        mode: Option<String>,
        /// Print the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build qrels from a commit log export.
    Link {
        /// JSONL records of {hash, message, changed_files}.
        #[arg(long)]
        commits: PathBuf,
        /// Bug id regex; capture group 1 if present. Repeatable.
        #[arg(long = "pattern", default_value = r"\b([A-Z][A-Z0-9]*-\d+)\b")]
        patterns: Vec<String>,
        /// Source extension to keep; repeatable.
        #[arg(long = "ext", default_values = ["java", "cs"])]
        extensions: Vec<String>,
        /// Qrels file to write; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

type Error = Box<dyn std::error::Error>;

fn load_config(common: &Common) -> Result<ProjectConfig, Error> {
    let mut config = ProjectConfig::load(&common.config)?;
    if let Some(a) = common.alpha {
        config.alpha = Alpha::new(a)?;
    }
    if let Some(k) = common.top_k {
        config.top_k = k;
    }
    if let Some(t) = &common.technique {
        config.technique = t.parse::<Technique>()?;
    }
    if let Some(t) = &common.translator {
        config.translator.backend = t.parse::<BackendKind>()?;
    }
    if let Some(g) = &common.glossary {
        config.translator.glossary = Some(g.clone());
    }
    if let Some(c) = &common.cache {
        config.cache = Some(c.clone());
    }
    if common.stemming {
        config.tokenizer.stemming = true;
    }
    config.validate()?;
    Ok(config)
}

fn report_diagnostics(diagnostics: &[Diagnostic]) {
    for d in diagnostics {
        eprintln!("warning: {d}");
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()).into()),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Extract(common) => {
            let s = cmd_extract(&load_config(&common)?)?;
            report_diagnostics(&s.diagnostics);
            eprintln!(
                "{} files, {} spans ({} with Japanese) -> {}",
                s.files,
                s.spans,
                s.japanese_spans,
                s.output.display()
            );
        }
        Command::Translate(common) => {
            let s = cmd_translate(&load_config(&common)?)?;
            report_diagnostics(&s.diagnostics);
            eprintln!(
                "{}: {} files, {} reports, {} texts ({} cached, {} failed) -> {}",
                s.backend,
                s.files,
                s.reports,
                s.stats.texts,
                s.stats.cache_hits,
                s.stats.failed,
                s.output_root.display()
            );
        }
        Command::Index(common) => {
            let s = cmd_index(&load_config(&common)?, !common.no_translate)?;
            eprintln!("{} documents, {} terms -> {}", s.documents, s.terms, s.output.display());
        }
        Command::Locate {
            common,
            queries,
            all,
            output,
        } => {
            let config = load_config(&common)?;
            let options = LocateOptions {
                queries,
                translated_sources: !common.no_translate,
                all_reports: all,
                output,
            };
            let s = cmd_locate(&config, &options)?;
            report_diagnostics(&s.diagnostics);
            eprintln!("{}: {} queries -> {}", s.technique, s.queries, s.output.display());
        }
        Command::Eval {
            common,
            run,
            qrels,
            mode,
            json,
            report,
        } => {
            let mut config = load_config(&common)?;
            if qrels.is_some() {
                config.qrels = qrels;
            }
            let mode = match mode {
                Some(m) => m.parse::<Mode>()?,
                None => config.mode,
            };
            let run = run.unwrap_or_else(|| config.run_path(config.technique, !common.no_translate));
            let r = cmd_eval(&config, &run, mode)?;
            if let Some(path) = report {
                write_output(Some(&path), &(r.to_json() + "\n"))?;
            }
            let text = if json { r.to_json() } else { r.to_string() };
            println!("{text}");
        }
        Command::Link {
            commits,
            patterns,
            extensions,
            output,
        } => {
            let patterns = patterns
                .iter()
                .map(|p| Regex::new(p))
                .collect::<Result<Vec<_>, _>>()?;
            let extensions: HashSet<String> = extensions.into_iter().collect();
            let qrels = link_oracles_file(&commits, &patterns, &extensions)?;
            eprintln!("{} bug ids linked", qrels.len());
            write_output(output.as_deref(), &qrels.to_string())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = e.source();
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            if let Some(PipelineError::MissingArtifact { .. }) = e.downcast_ref::<PipelineError>() {
                return ExitCode::from(3);
            }
            ExitCode::FAILURE
        }
    }
}
