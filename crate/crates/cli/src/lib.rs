//! The `proofcloud` command: check, translate, verify, analyze, index,
//! serve, bench and pipeline.
//!
//! Exit codes are 0 on success, 1 when a stage fails and 2 on usage errors.
//! Every error is also written to stderr as one JSON line
//! `{"stage", "file", "line", "message"}`.

pub mod config;
pub mod diag;
pub mod stages;

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use proofcloud_analyzer::CorpusMeta;
use proofcloud_bench::{measure, Format};
use proofcloud_index::{serve, Service, Snapshot};

use crate::config::{FileConfig, Flags, Settings, VersionMode};
use crate::diag::{Diag, Failure, EXIT_OK, EXIT_USAGE};
use crate::stages::{stem, AnalysisOutput};

#[derive(Debug, Parser)]
#[command(name = "proofcloud", version, about = "Replay, translate, check, analyze and index HOL proof articles")]
pub struct Cli {
    /// Kernel version to run: 5, 6 or auto (the article's own).
    #[arg(long, global = true, value_parser = clap::value_parser!(VersionMode))]
    pub version_mode: Option<VersionMode>,
    /// Upper bound on worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Fail on axiom leaves that are neither choice, known axioms nor lemmas.
    #[arg(long, global = true)]
    pub strict: bool,
    /// TOML file with defaults for the flags.
    #[arg(long, global = true, env = "PROOFCLOUD_CONFIG")]
    pub config: Option<PathBuf>,
    /// Root for relative input paths not found in the working directory.
    #[arg(long, global = true, env = "PROOFCLOUD_DATA")]
    pub data: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Replay articles and print their exports and assumptions.
    Check {
        #[arg(required = true)]
        articles: Vec<PathBuf>,
    },
    /// Write one Dedukti module per article plus the prelude.
    Translate {
        #[arg(required = true)]
        articles: Vec<PathBuf>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Typecheck every `.dk` module in a directory.
    Verify { dir: PathBuf },
    /// Classify proofs and compute package statistics.
    Analyze {
        /// Articles replacing the ones named in the metadata.
        articles: Vec<PathBuf>,
        #[arg(long)]
        meta: PathBuf,
        /// Directory for the JSON files; stdout when absent.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build the static site and search pages from `analyze` output.
    Index {
        input: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Serve a site over HTTP until interrupted.
    Serve {
        site: PathBuf,
        #[arg(long)]
        bind: Option<String>,
    },
    /// Measure sizes and times at both kernel versions.
    Bench {
        #[arg(required = true)]
        articles: Vec<PathBuf>,
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long, value_parser = clap::value_parser!(Format))]
        format: Option<Format>,
    },
    /// Run check, translate, verify, analyze and index in order.
    Pipeline {
        articles: Vec<PathBuf>,
        /// Package metadata; without it every article is its own package.
        #[arg(long)]
        meta: Option<PathBuf>,
        #[arg(short, long)]
        out: PathBuf,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return EXIT_OK;
            }
            let _ = e.print();
            let first = e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            eprintln!("{}", Diag::new("args", None, None, first).to_line());
            return EXIT_USAGE;
        }
    };
    match run(cli) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            for d in f.diags() {
                eprintln!("{}", d.to_line());
            }
            f.code()
        }
    }
}

fn settings(cli: &Cli) -> Result<Settings, Failure> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let (reps, bind, format) = match &cli.command {
        Command::Bench { reps, format, .. } => (*reps, None, *format),
        Command::Serve { bind, .. } => (None, bind.clone(), None),
        _ => (None, None, None),
    };
    let flags = Flags {
        version_mode: cli.version_mode,
        jobs: cli.jobs,
        strict: cli.strict,
        reps,
        bind,
        format,
        data: cli.data.clone(),
    };
    Settings::merge(flags, file)
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    let s = settings(&cli)?;
    if let Some(n) = s.jobs {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match &cli.command {
        Command::Check { articles } => check(&s, articles),
        Command::Translate { articles, out } => {
            let paths = s.inputs(articles)?;
            let results = stages::replay_all(&paths, VersionMode::Auto)?;
            let named: Vec<_> = paths.iter().zip(results).map(|(p, r)| (stem(p), p.clone(), r)).collect();
            for f in stages::translate(&named, s.version_mode, out)? {
                println!("wrote {}", f.display());
            }
            Ok(())
        }
        Command::Verify { dir } => {
            let dir = &s.inputs(std::slice::from_ref(dir))?[0];
            verify(dir)
        }
        Command::Analyze { articles, meta, out } => {
            let meta_path = &s.inputs(std::slice::from_ref(meta))?[0];
            let articles = s.inputs(articles)?;
            let mut meta = load_meta(meta_path)?;
            stages::override_articles(&mut meta, &articles);
            let a = stages::analyze_corpus(&meta, &s)?;
            match out {
                Some(dir) => {
                    for f in a.write(dir)? {
                        println!("wrote {}", f.display());
                    }
                }
                None => print!("{}", a.to_json()),
            }
            Ok(())
        }
        Command::Index { input, out } => {
            let input = &s.inputs(std::slice::from_ref(input))?[0];
            let m = stages::index(input, out)?;
            println!("wrote {} files to {}", m.files.len(), out.display());
            Ok(())
        }
        Command::Serve { site, .. } => {
            let site = &s.inputs(std::slice::from_ref(site))?[0];
            serve_site(site, &s.bind)
        }
        Command::Bench { articles, .. } => bench(&s, articles),
        Command::Pipeline { articles, meta, out } => pipeline(&s, articles, meta.as_deref(), out),
    }
}

fn load_meta(path: &Path) -> Result<CorpusMeta, Failure> {
    CorpusMeta::load(path).map_err(|e| Failure::Usage(Diag::new("analyze", Some(path), None, e.to_string())))
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

fn check(s: &Settings, articles: &[PathBuf]) -> Result<(), Failure> {
    let paths = s.inputs(articles)?;
    let results = stages::replay_all(&paths, s.version_mode)?;
    let mut out = std::io::stdout().lock();
    for (p, r) in paths.iter().zip(&results) {
        let _ = writeln!(
            out,
            "{}: version {}, {}, {}",
            p.display(),
            r.version.number(),
            plural(r.exports.len(), "export"),
            plural(r.assumptions.len(), "assumption")
        );
        for a in &r.assumptions {
            let _ = writeln!(out, "  assume {a}");
        }
        for e in &r.exports {
            if e.name.is_empty() {
                let _ = writeln!(out, "  export {}", e.theorem.sequent());
            } else {
                let _ = writeln!(out, "  export {}: {}", e.name, e.theorem.sequent());
            }
        }
    }
    Ok(())
}

fn verify(dir: &Path) -> Result<(), Failure> {
    let mods = stages::verify(dir)?;
    for m in &mods {
        println!("{}: {} ok", m.name, plural(m.decls, "declaration"));
    }
    Ok(())
}

fn bench(s: &Settings, articles: &[PathBuf]) -> Result<(), Failure> {
    let paths = s.inputs(articles)?;
    let refs: Vec<&Path> = paths.iter().map(PathBuf::as_path).collect();
    let report = measure(&refs, s.reps).map_err(|e| Failure::Usage(Diag::new("bench", None, None, e.to_string())))?;
    let (art, dk) = (report.article_table(), report.dedukti_table());
    match s.format {
        Format::Json => {
            let parse = |t: String| serde_json::from_str::<serde_json::Value>(&t).expect("table json");
            let v = serde_json::json!({
                "article": parse(art.emit(Format::Json)),
                "dedukti": parse(dk.emit(Format::Json)),
                "summary": report.reduction_summary(),
                "environment": report.environment,
                "rows": report.rows,
            });
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        }
        Format::Csv => print!("{}\n{}", art.emit(Format::Csv), dk.emit(Format::Csv)),
        Format::Text => {
            print!("{}\n{}\n", art.emit(Format::Text), dk.emit(Format::Text));
            println!("{}", report.reduction_summary());
            print!("{}", report.environment_text());
        }
    }
    let diags: Vec<Diag> = report
        .rows
        .iter()
        .zip(&paths)
        .filter_map(|(r, p)| r.error.as_ref().map(|e| Diag::new("bench", Some(p), None, e.clone())))
        .collect();
    if diags.is_empty() {
        Ok(())
    } else {
        Err(Failure::Domain(diags))
    }
}

fn serve_site(site: &Path, bind: &str) -> Result<(), Failure> {
    let snap = Snapshot::load(site).map_err(|e| Failure::domain(Diag::new("serve", Some(site), None, e.to_string())))?;
    let rt = tokio::runtime::Runtime::new().map_err(|e| Failure::domain(Diag::new("serve", None, None, e.to_string())))?;
    rt.block_on(async {
        let handle = serve(Service::new(snap), bind)
            .await
            .map_err(|e| Failure::domain(Diag::new("serve", None, None, e.to_string())))?;
        println!("listening on http://{}", handle.addr);
        let _ = std::io::stdout().flush();
        let _ = tokio::signal::ctrl_c().await;
        handle.shutdown().await;
        Ok(())
    })
}

/// Output layout of `pipeline`.
pub const PIPELINE_DIRS: [&str; 3] = ["dk", "analysis", "site"];

fn pipeline(s: &Settings, articles: &[PathBuf], meta: Option<&Path>, out: &Path) -> Result<(), Failure> {
    let articles = s.inputs(articles)?;
    let mut meta = match meta {
        Some(m) => load_meta(&s.inputs(&[m.to_path_buf()])?[0])?,
        None if articles.is_empty() => {
            return Err(Failure::Usage(Diag::new("args", None, None, "pipeline needs articles or --meta")))
        }
        None => CorpusMeta::default(),
    };
    stages::override_articles(&mut meta, &articles);
    let order: Vec<_> = stages::load_order(&meta)?.into_iter().filter(|p| p.article.is_some()).collect();
    let paths: Vec<PathBuf> = order.iter().map(|p| meta.resolve(p.article.as_deref().unwrap_or_default())).collect();
    let results = stages::replay_all(&paths, s.version_mode)?;
    eprintln!("check: {} replayed", plural(paths.len(), "article"));
    let named: Vec<_> = order.iter().zip(&paths).zip(results).map(|((m, p), r)| (m.name.clone(), p.clone(), r)).collect();
    let dk = out.join(PIPELINE_DIRS[0]);
    let files = stages::translate(&named, s.version_mode, &dk)?;
    eprintln!("translate: {} written", plural(files.len(), "module"));
    let mods = stages::verify(&dk)?;
    eprintln!("verify: {} checked", plural(mods.len(), "module"));
    let analysis: AnalysisOutput = stages::analyze_corpus(&meta, s)?;
    let adir = out.join(PIPELINE_DIRS[1]);
    analysis.write(&adir)?;
    eprintln!("analyze: {}", plural(analysis.records.len(), "proof"));
    let site = out.join(PIPELINE_DIRS[2]);
    let m = stages::index(&adir, &site)?;
    eprintln!("index: {} in {}", plural(m.files.len(), "file"), site.display());
    let c = &analysis.corpus;
    println!(
        "{} packages, {} proofs, {} constructive, {} classical, {}% constructive",
        c.number_of_packages,
        c.total_number_of_proofs,
        c.number_of_constructive_proofs,
        c.number_of_classical_proofs,
        c.percentage_of_constructive_proofs
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn global_flags_go_anywhere() {
        let c = Cli::try_parse_from(["proofcloud", "check", "a.art", "--version-mode", "5", "--jobs", "2"]).unwrap();
        assert_eq!(c.version_mode, Some(VersionMode::Force(proofcloud_kernel::KernelVersion::V5)));
        assert_eq!(c.jobs, Some(2));
    }

    #[test]
    fn usage_errors_exit_with_two() {
        assert_eq!(main_with(["proofcloud", "check"]), EXIT_USAGE);
        assert_eq!(main_with(["proofcloud", "frobnicate"]), EXIT_USAGE);
        assert_eq!(main_with(["proofcloud", "--version-mode", "7", "check", "x"]), EXIT_USAGE);
        assert_eq!(main_with(["proofcloud", "check", "/definitely/not/here.art"]), EXIT_USAGE);
        assert_eq!(diag::EXIT_FAILURE, 1);
    }
}
