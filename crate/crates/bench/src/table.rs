//! The two four-column tables: size and time per kernel version.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::units::{group_thousands, Centis, KB};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct TableRow {
    pub package: String,
    pub size_kb_v5: u64,
    pub time_v5: Centis,
    pub size_kb_v6: u64,
    pub time_v6: Centis,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub caption: String,
    /// Column group labels, v5 then v6.
    pub versions: [String; 2],
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (text, csv or json)")),
        }
    }
}

/// Column sums.
pub fn totals(rows: &[TableRow]) -> TableRow {
    let mut t = TableRow { package: "Total".into(), size_kb_v5: 0, time_v5: Centis(0), size_kb_v6: 0, time_v6: Centis(0) };
    for r in rows {
        t.size_kb_v5 += r.size_kb_v5;
        t.time_v5.0 += r.time_v5.0;
        t.size_kb_v6 += r.size_kb_v6;
        t.time_v6.0 += r.time_v6.0;
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct CsvError {
    pub line: usize,
    pub message: String,
}

/// Reads `package,size_kb_v5,time_s_v5,size_kb_v6,time_s_v6` rows after a
/// header line. A row named `Total` is returned separately.
pub fn parse_csv(text: &str) -> Result<(Vec<TableRow>, Option<TableRow>), CsvError> {
    let mut rows = Vec::new();
    let mut total = None;
    for (i, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let err = |message: String| CsvError { line: i + 1, message };
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        if f.len() != 5 {
            return Err(err(format!("expected 5 fields, found {}", f.len())));
        }
        let size = |s: &str| s.parse::<u64>().map_err(|e| err(format!("`{s}`: {e}")));
        let time = |s: &str| s.parse::<Centis>().map_err(|e| err(e.to_string()));
        let row = TableRow {
            package: f[0].to_string(),
            size_kb_v5: size(f[1])?,
            time_v5: time(f[2])?,
            size_kb_v6: size(f[3])?,
            time_v6: time(f[4])?,
        };
        if row.package == "Total" {
            total = Some(row);
        } else {
            rows.push(row);
        }
    }
    Ok((rows, total))
}

impl Table {
    pub fn total(&self) -> TableRow {
        totals(&self.rows)
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn text(&self) -> String {
        let mut all = self.rows.clone();
        all.push(self.total());
        let cells: Vec<[String; 5]> = all
            .iter()
            .map(|r| {
                [
                    r.package.clone(),
                    group_thousands(r.size_kb_v5),
                    r.time_v5.to_string(),
                    group_thousands(r.size_kb_v6),
                    r.time_v6.to_string(),
                ]
            })
            .collect();
        let head = [
            "Package".to_string(),
            format!("{} Size (KB)", self.versions[0]),
            format!("{} Time (s)", self.versions[0]),
            format!("{} Size (KB)", self.versions[1]),
            format!("{} Time (s)", self.versions[1]),
        ];
        let mut width = head.each_ref().map(|h| h.chars().count());
        for c in &cells {
            for (w, s) in width.iter_mut().zip(c) {
                *w = (*w).max(s.chars().count());
            }
        }
        let line = |c: &[String; 5]| {
            let mut s = format!("{:<w$}", c[0], w = width[0]);
            for (i, x) in c.iter().enumerate().skip(1) {
                let _ = write!(s, " | {:>w$}", x, w = width[i]);
            }
            s + "\n"
        };
        let mut out = format!("{}\n", self.caption);
        out += &line(&head);
        out += &format!("{}\n", width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-"));
        let n = cells.len();
        for (i, c) in cells.iter().enumerate() {
            if i + 1 == n {
                out += &format!("{}\n", width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-"));
            }
            out += &line(c);
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("package,size_kb_v5,time_s_v5,size_kb_v6,time_s_v6\n");
        for r in self.rows.iter().chain(std::iter::once(&self.total())) {
            let _ = writeln!(out, "{},{},{},{},{}", r.package, r.size_kb_v5, r.time_v5, r.size_kb_v6, r.time_v6);
        }
        out
    }

    fn json(&self) -> String {
        let row = |r: &TableRow| {
            json!({
                "package": r.package,
                "size-kb-v5": r.size_kb_v5,
                "time-s-v5": r.time_v5.seconds(),
                "size-kb-v6": r.size_kb_v6,
                "time-s-v6": r.time_v6.seconds(),
            })
        };
        let v = json!({
            "caption": self.caption,
            "versions": self.versions,
            "kb-bytes": KB,
            "kb-rounding": "half-up",
            "rows": self.rows.iter().map(row).collect::<Vec<_>>(),
            "total": row(&self.total()),
        });
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    }
}
