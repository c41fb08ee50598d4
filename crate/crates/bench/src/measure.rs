//! Size and timing measurements over article files.

use std::path::Path;
use std::time::Instant;

use proofcloud_article::{emit_article, lower, read_article, replay, uses_v6_expressible_rules, with_large_stack, ReplayOptions};
use proofcloud_dedukti::{emit_module, prelude_module, translate_article, Symbols};
use proofcloud_kernel::KernelVersion;
use proofcloud_lp::{parse_module, Checker};
use serde::{Deserialize, Serialize};

use crate::table::{Table, TableRow};
use crate::units::{gzip_len, kb, median, Centis, KB};

pub const VERSIONS: [KernelVersion; 2] = [KernelVersion::V5, KernelVersion::V6];

/// One package; array entries are v5 then v6. Sizes are gzip bytes.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct BenchRow {
    pub package: String,
    pub article_bytes: [u64; 2],
    pub translate_seconds: [f64; 2],
    pub dk_bytes: [u64; 2],
    pub check_seconds: [f64; 2],
    /// Whether the translated module typechecked.
    pub checked: [bool; 2],
    pub error: Option<String>,
}

impl BenchRow {
    pub fn article_row(&self) -> TableRow {
        TableRow {
            package: self.package.clone(),
            size_kb_v5: kb(self.article_bytes[0]),
            time_v5: Centis::from_seconds(self.translate_seconds[0]),
            size_kb_v6: kb(self.article_bytes[1]),
            time_v6: Centis::from_seconds(self.translate_seconds[1]),
        }
    }

    pub fn dedukti_row(&self) -> TableRow {
        TableRow {
            package: self.package.clone(),
            size_kb_v5: kb(self.dk_bytes[0]),
            time_v5: Centis::from_seconds(self.check_seconds[0]),
            size_kb_v6: kb(self.dk_bytes[1]),
            time_v6: Centis::from_seconds(self.check_seconds[1]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Environment {
    pub os: String,
    pub arch: String,
    pub cpu: String,
    pub logical_cpus: usize,
    pub memory: String,
    pub repetitions: usize,
    pub timing: String,
    pub kb_bytes: u64,
    pub kb_rounding: String,
    pub compression: String,
}

fn proc_field(file: &str, key: &str) -> Option<String> {
    let text = std::fs::read_to_string(file).ok()?;
    text.lines().find(|l| l.starts_with(key)).and_then(|l| l.split_once(':')).map(|(_, v)| v.trim().to_string())
}

impl Environment {
    pub fn detect(repetitions: usize) -> Environment {
        Environment {
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            cpu: proc_field("/proc/cpuinfo", "model name").unwrap_or_else(|| "unknown".into()),
            logical_cpus: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            memory: proc_field("/proc/meminfo", "MemTotal").unwrap_or_else(|| "unknown".into()),
            repetitions,
            timing: "median wall time".into(),
            kb_bytes: KB,
            kb_rounding: "half-up".into(),
            compression: "gzip, default level".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub environment: Environment,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BenchError {
    #[error("repetitions must be at least 1")]
    NoRepetitions,
}

fn timed<T>(reps: usize, mut f: impl FnMut() -> T) -> (T, f64) {
    let mut times = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps {
        let t0 = Instant::now();
        last = Some(f());
        times.push(t0.elapsed().as_secs_f64());
    }
    (last.expect("at least one repetition"), median(&times))
}

/// Measures one article. Failures end up in `error`; what was measured
/// before the failure stays.
pub fn measure_one(name: &str, text: &str, reps: usize) -> BenchRow {
    let mut row = BenchRow { package: name.to_string(), ..BenchRow::default() };
    let src = match replay(text, &ReplayOptions::default()) {
        Ok(r) => r,
        Err(e) => {
            row.error = Some(format!("replay: {e}"));
            return row;
        }
    };
    for (i, v) in VERSIONS.into_iter().enumerate() {
        let tag = format!("v{}", v.number());
        let article = match emit_article(&src, v) {
            Ok(a) => a,
            Err(e) => {
                row.error = Some(format!("{tag} emit: {e}"));
                return row;
            }
        };
        row.article_bytes[i] = gzip_len(article.as_bytes());
        // translation reads the article of this version, as a translator would
        let (dk, secs) = timed(reps, || {
            let r = replay(&article, &ReplayOptions::default()).map_err(|e| format!("replay: {e}"))?;
            let r = lower(&r, v).map_err(|e| format!("lower: {e}"))?;
            let t = translate_article(&r, name, &Symbols::new()).map_err(|e| format!("translate: {e}"))?;
            Ok::<String, String>(emit_module(&t.module))
        });
        row.translate_seconds[i] = secs;
        let dk = match dk {
            Ok(d) => d,
            Err(e) => {
                row.error = Some(format!("{tag} {e}"));
                return row;
            }
        };
        row.dk_bytes[i] = gzip_len(dk.as_bytes());
        let (ok, secs) = timed(reps, || {
            let mut c = Checker::new();
            let m = parse_module(&dk).map_err(|e| e.to_string())?;
            Ok::<bool, String>(c.check_module(&prelude_module()).passed() && c.check_module(&m).passed())
        });
        row.check_seconds[i] = secs;
        match ok {
            Ok(true) => row.checked[i] = true,
            Ok(false) => row.error = Some(format!("{tag}: module does not typecheck")),
            Err(e) => row.error = Some(format!("{tag} parse: {e}")),
        }
    }
    row
}

/// Measures each article in turn; timing runs never overlap.
pub fn measure(paths: &[&Path], reps: usize) -> Result<BenchReport, BenchError> {
    if reps == 0 {
        return Err(BenchError::NoRepetitions);
    }
    let rows = paths
        .iter()
        .map(|p| {
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let name = name.strip_suffix(".art").map(str::to_string).unwrap_or(name);
            match read_article(p) {
                Ok(text) => with_large_stack(|| measure_one(&name, &text, reps)),
                Err(e) => BenchRow { package: name, error: Some(e.to_string()), ..BenchRow::default() },
            }
        })
        .collect();
    Ok(BenchReport { rows, environment: Environment::detect(reps) })
}

impl BenchReport {
    pub fn article_table(&self) -> Table {
        Table {
            caption: "Size of Article Files and Translation Time".into(),
            versions: ["v5".into(), "v6".into()],
            rows: self.rows.iter().map(BenchRow::article_row).collect(),
        }
    }

    pub fn dedukti_table(&self) -> Table {
        Table {
            caption: "Size of Dedukti Files and Proof Checking Time".into(),
            versions: ["Dedukti v5".into(), "Dedukti v6".into()],
            rows: self.rows.iter().map(BenchRow::dedukti_row).collect(),
        }
    }

    /// One line comparing v6 with v5 over the whole run, from exact byte
    /// counts and unrounded times.
    pub fn reduction_summary(&self) -> String {
        let sum = |f: &dyn Fn(&BenchRow) -> f64| self.rows.iter().map(f).sum::<f64>();
        let pct = |v5: f64, v6: f64| if v5 == 0.0 { 0.0 } else { 100.0 * (v5 - v6) / v5 };
        let phrase = |p: f64| {
            let r = p.abs().round() as i64;
            if p >= 0.0 {
                format!("reduced by around {r}%")
            } else {
                format!("increased by around {r}%")
            }
        };
        let art = pct(sum(&|r| r.article_bytes[0] as f64), sum(&|r| r.article_bytes[1] as f64));
        let dk = pct(sum(&|r| r.dk_bytes[0] as f64), sum(&|r| r.dk_bytes[1] as f64));
        let chk = pct(sum(&|r| r.check_seconds[0]), sum(&|r| r.check_seconds[1]));
        format!(
            "From v5 to v6 the article size was {}, the Dedukti size was {} and the checking time was {}.",
            phrase(art),
            phrase(dk),
            phrase(chk)
        )
    }

    pub fn environment_text(&self) -> String {
        let e = &self.environment;
        format!(
            "{} {}, {} x{} ({}), {} repetitions, {}, 1 KB = {} bytes rounded {}, {}\n",
            e.os, e.arch, e.cpu, e.logical_cpus, e.memory, e.repetitions, e.timing, e.kb_bytes, e.kb_rounding, e.compression
        )
    }
}

/// Gzip sizes of one article written at each version.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct SizePair {
    pub package: String,
    pub v5: u64,
    pub v6: u64,
    /// The source uses `sym`, `trans` or `proveHyp`, or a primitive pattern v6 states with one.
    pub uses_v6_rules: bool,
}

pub fn size_pair(name: &str, text: &str) -> Result<SizePair, String> {
    with_large_stack(|| {
        let src = replay(text, &ReplayOptions::default()).map_err(|e| e.to_string())?;
        let a = emit_article(&src, KernelVersion::V5).map_err(|e| e.to_string())?;
        let b = emit_article(&src, KernelVersion::V6).map_err(|e| e.to_string())?;
        let uses = uses_v6_expressible_rules(&src.trace);
        Ok(SizePair { package: name.to_string(), v5: gzip_len(a.as_bytes()), v6: gzip_len(b.as_bytes()), uses_v6_rules: uses })
    })
}
