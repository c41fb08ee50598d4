//! Static site export: one HTML and one JSON page per proof, package and
//! verification record, an index page, and a hashed manifest.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use proofcloud_analyzer::{corpus_stats, DependencyGraph, PackageStats, ProofRecord, VerificationRecord};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::doc::{package_id, PageIds};
use crate::error::{IndexError, Result};

pub const PROOF_SCHEMA: &str = include_str!("../schema/proof.schema.json");
pub const PACKAGE_SCHEMA: &str = include_str!("../schema/package.schema.json");
pub const VERIFICATION_SCHEMA: &str = include_str!("../schema/verification.schema.json");
pub const API_DOC: &str = include_str!("../schema/api.md");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub files: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn get(&self, path: &str) -> Option<&ManifestEntry> {
        self.files.iter().find(|f| f.path == path)
    }
}

/// Everything the site is made of, kept in memory until written.
#[derive(Debug, Default)]
struct Files(BTreeMap<String, Vec<u8>>);

impl Files {
    fn add(&mut self, path: String, bytes: impl Into<Vec<u8>>) {
        self.0.insert(path, bytes.into());
    }

    fn json(&mut self, path: String, v: &Value) {
        let mut text = serde_json::to_string_pretty(v).expect("serializable");
        text.push('\n');
        self.add(path, text);
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '&' => out.push_str("&amp;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

fn html_page(title: &str, depth: usize, body: &str) -> String {
    let up = "../".repeat(depth);
    format!(
        "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>{}</title>\n</head>\n<body>\n<p><a href=\"{up}index.html\">ProofCloud</a></p>\n<h1>{}</h1>\n{body}</body>\n</html>\n",
        escape(title),
        escape(title)
    )
}

fn table(rows: &[(&str, String)]) -> String {
    let mut out = String::from("<table>\n");
    for (k, v) in rows {
        let _ = writeln!(out, "<tr><th>{}</th><td>{v}</td></tr>", escape(k));
    }
    out.push_str("</table>\n");
    out
}

fn list(items: impl IntoIterator<Item = String>) -> String {
    let items: Vec<String> = items.into_iter().collect();
    if items.is_empty() {
        return "none".to_string();
    }
    format!("<ul>{}</ul>", items.iter().map(|i| format!("<li>{i}</li>")).collect::<String>())
}

fn with_fields(v: impl Serialize, extra: Value) -> Value {
    let mut v = serde_json::to_value(v).expect("serializable");
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

pub fn proof_page(r: &ProofRecord, ids: &PageIds) -> Value {
    let id = ids.get(&r.packagename, &r.theorem_name).expect("id for every record");
    let lemma_pages: BTreeMap<&String, Option<&str>> =
        r.classical_lemmas.iter().chain(&r.constructive_lemmas).map(|l| (l, ids.lemma(l))).collect();
    with_fields(r, json!({ "id": id, "lemma-pages": lemma_pages }))
}

pub fn package_page(s: &PackageStats, records: &[ProofRecord], ids: &PageIds, graph: &DependencyGraph) -> Value {
    let pages: Vec<&str> = records
        .iter()
        .filter(|r| r.packagename == s.package_name)
        .filter_map(|r| ids.get(&r.packagename, &r.theorem_name))
        .collect();
    let requires: Vec<&str> = graph.edges.iter().filter(|e| e.from == s.package_name).map(|e| e.to.as_str()).collect();
    with_fields(s, json!({ "id": package_id(&s.package_name), "proof-pages": pages, "requires": requires }))
}

fn lemma_link(l: &str, ids: &PageIds, depth: usize) -> String {
    match ids.lemma(l) {
        Some(id) => format!("<a href=\"{}proofs/{id}.html\">{}</a>", "../".repeat(depth), escape(l)),
        None => escape(l),
    }
}

fn proof_html(r: &ProofRecord, ids: &PageIds) -> String {
    // proofs/<package>/<name>.html sits two levels down
    let depth = 2;
    let pkg = format!("<a href=\"../../packages/{}.html\">{}</a>", package_id(&r.packagename), escape(&r.packagename));
    let rows = [
        ("Theorem name", escape(&r.theorem_name)),
        ("Theorem conclusion", format!("<code>{}</code>", escape(&r.theorem_conclusion))),
        ("Package", pkg),
        ("Constructive proof", if r.constructive_proof { "yes" } else { "no" }.to_string()),
        ("Axioms", list(r.axioms.iter().map(|a| format!("<code>{}</code>", escape(a))))),
        ("Constructive lemmas", list(r.constructive_lemmas.iter().map(|l| lemma_link(l, ids, depth)))),
        ("Classical lemmas", list(r.classical_lemmas.iter().map(|l| lemma_link(l, ids, depth)))),
        ("Size", r.size.to_string()),
        ("Comments", escape(&r.comments)),
    ];
    html_page(&r.theorem_name, depth, &table(&rows))
}

fn average(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.2}")).unwrap_or_else(|| "n/a".to_string())
}

fn package_html(s: &PackageStats, records: &[ProofRecord], ids: &PageIds) -> String {
    let proofs = records.iter().filter(|r| r.packagename == s.package_name).map(|r| {
        let id = ids.get(&r.packagename, &r.theorem_name).unwrap_or_default();
        format!(
            "<a href=\"../proofs/{id}.html\">{}</a>: <code>{}</code>",
            escape(&r.theorem_name),
            escape(&r.theorem_conclusion)
        )
    });
    let pid = package_id(&s.package_name);
    let rows = [
        ("Package name", escape(&s.package_name)),
        ("Author of package", escape(&s.author_of_package)),
        ("Subpackages", list(s.subpackages.iter().map(|p| escape(p)))),
        ("Date retrieved", escape(&s.date_retrieved)),
        ("Total number of proofs", s.total_number_of_proofs.to_string()),
        ("Number of constructive proofs", s.number_of_constructive_proofs.to_string()),
        ("Number of classical proofs", s.number_of_classical_proofs.to_string()),
        ("Percentage of constructive proofs", format!("{:.2}%", s.percentage_of_constructive_proofs)),
        ("Size of constructive proofs on average", average(s.size_of_constructive_proofs_on_average)),
        ("Size of classical proofs on average", average(s.size_of_classical_proofs_on_average)),
        ("List of proofs", list(proofs)),
        ("Comments", escape(&s.comments)),
        ("Verification", format!("<a href=\"../verification/{pid}.html\">proof checking results</a>")),
    ];
    html_page(&s.package_name, 1, &table(&rows))
}

fn verification_html(v: &VerificationRecord) -> String {
    let rows = [
        ("Software engineer for verification", escape(&v.software_engineer_for_verification)),
        ("Software for verification", escape(&v.software_for_verification)),
        ("Translation time", format!("{:.2} s", v.translation_time)),
        ("Verification time", format!("{:.2} s", v.verification_time)),
        ("PC Specification", escape(&v.pc_specification)),
        ("Comments", escape(&v.comments)),
    ];
    html_page(&format!("Verification of {}", v.package_name), 1, &table(&rows))
}

fn index_html(stats: &[PackageStats], graph: &DependencyGraph) -> String {
    let mut body = String::from(
        "<form action=\"/api/search\" method=\"get\"><input type=\"text\" name=\"q\"><input type=\"submit\" value=\"Search\"></form>\n",
    );
    body.push_str("<h2>Packages</h2>\n");
    body.push_str(&list(stats.iter().map(|s| {
        format!(
            "<a href=\"packages/{}.html\">{}</a> ({} proofs, {:.2}% constructive)",
            package_id(&s.package_name),
            escape(&s.package_name),
            s.total_number_of_proofs,
            s.percentage_of_constructive_proofs
        )
    })));
    body.push_str("\n<h2>Dependencies</h2>\n");
    body.push_str(&list(graph.edges.iter().map(|e| format!("{} &rarr; {}", escape(&e.from), escape(&e.to)))));
    body.push('\n');
    html_page("ProofCloud", 0, &body)
}

fn verification_for(name: &str, given: &[VerificationRecord]) -> VerificationRecord {
    given.iter().find(|v| v.package_name == name).cloned().unwrap_or(VerificationRecord {
        package_name: name.to_string(),
        software_engineer_for_verification: String::new(),
        software_for_verification: String::new(),
        translation_time: 0.0,
        verification_time: 0.0,
        pc_specification: String::new(),
        comments: String::new(),
    })
}

fn render(
    records: &[ProofRecord],
    stats: &[PackageStats],
    verifications: &[VerificationRecord],
    graph: &DependencyGraph,
) -> Files {
    let ids = PageIds::new(records);
    let mut f = Files::default();
    for r in records {
        let id = ids.get(&r.packagename, &r.theorem_name).expect("id for every record");
        f.json(format!("proofs/{id}.json"), &proof_page(r, &ids));
        f.add(format!("proofs/{id}.html"), proof_html(r, &ids));
    }
    for s in stats {
        let pid = package_id(&s.package_name);
        f.json(format!("packages/{pid}.json"), &package_page(s, records, &ids, graph));
        f.add(format!("packages/{pid}.html"), package_html(s, records, &ids));
        let v = verification_for(&s.package_name, verifications);
        f.json(format!("verification/{pid}.json"), &serde_json::to_value(&v).expect("serializable"));
        f.add(format!("verification/{pid}.html"), verification_html(&v));
    }
    f.add("index.html".to_string(), index_html(stats, graph));
    f.json("graph.json".to_string(), &serde_json::to_value(graph).expect("serializable"));
    f.json("stats.json".to_string(), &serde_json::to_value(corpus_stats(stats)).expect("serializable"));
    f.add("schema/proof.schema.json".to_string(), PROOF_SCHEMA);
    f.add("schema/package.schema.json".to_string(), PACKAGE_SCHEMA);
    f.add("schema/verification.schema.json".to_string(), VERIFICATION_SCHEMA);
    f.add("schema/api.md".to_string(), API_DOC);
    f
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| IndexError::io(dir, e))?;
    }
    std::fs::write(path, bytes).map_err(|e| IndexError::io(path, e))
}

/// Writes the site under `out` and returns its manifest, which is also
/// written as `manifest.json`. The output depends only on the inputs.
pub fn export_site(
    records: &[ProofRecord],
    stats: &[PackageStats],
    verifications: &[VerificationRecord],
    graph: &DependencyGraph,
    out: &Path,
) -> Result<Manifest> {
    let files = render(records, stats, verifications, graph);
    let mut manifest = Manifest::default();
    for (rel, bytes) in &files.0 {
        write(&out.join(rel), bytes)?;
        manifest.files.push(ManifestEntry {
            path: rel.clone(),
            sha256: hex::encode(Sha256::digest(bytes)),
            bytes: bytes.len() as u64,
        });
    }
    let mut text = serde_json::to_string_pretty(&manifest).expect("serializable");
    text.push('\n');
    write(&out.join("manifest.json"), text.as_bytes())?;
    Ok(manifest)
}

/// Path of a site file on disk.
pub fn site_path(root: &Path, rel: &str) -> PathBuf {
    rel.split('/').fold(root.to_path_buf(), |p, c| p.join(c))
}
