use proofcloud_bench::*;
use proptest::prelude::*;

fn load(name: &str) -> (Vec<TableRow>, TableRow) {
    let path = format!("{}/../../fixtures/bench/{name}", env!("CARGO_MANIFEST_DIR"));
    let (rows, total) = parse_csv(&std::fs::read_to_string(path).unwrap()).unwrap();
    (rows, total.expect("published total row"))
}

/// Column sums computed from the CSV text alone, seconds as integer
/// hundredths by string surgery.
fn text_sums(name: &str) -> [u64; 4] {
    let path = format!("{}/../../fixtures/bench/{name}", env!("CARGO_MANIFEST_DIR"));
    let mut s = [0u64; 4];
    for line in std::fs::read_to_string(path).unwrap().lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        if f[0] == "Total" {
            continue;
        }
        for (i, v) in f[1..].iter().enumerate() {
            s[i] += v.replace('.', "").parse::<u64>().unwrap();
        }
    }
    s
}

fn as_array(t: &TableRow) -> [u64; 4] {
    [t.size_kb_v5, t.time_v5.0, t.size_kb_v6, t.time_v6.0]
}

#[test]
fn dedukti_table_totals_match_the_published_row() {
    let (rows, published) = load("dedukti_table.csv");
    assert_eq!(rows.len(), 17);
    assert_eq!(as_array(&totals(&rows)), [16146, 3483, 15637, 3295]);
    assert_eq!(totals(&rows), TableRow { package: "Total".into(), ..published });
}

#[test]
fn totals_are_the_column_sums() {
    for name in ["article_table.csv", "dedukti_table.csv"] {
        let (rows, _) = load(name);
        assert_eq!(as_array(&totals(&rows)), text_sums(name), "{name}");
    }
}

#[test]
fn article_table_v5_size_total_matches() {
    let (rows, published) = load("article_table.csv");
    assert_eq!(rows.len(), 17);
    assert_eq!(totals(&rows).size_kb_v5, 4668);
    assert_eq!(published.size_kb_v5, 4668);
}

#[test]
fn article_table_published_row_is_read_verbatim() {
    let (_, published) = load("article_table.csv");
    assert_eq!(as_array(&published), [4668, 7373, 4377, 7221]);
}

#[test]
fn text_table_prints_computed_totals() {
    let (rows, _) = load("dedukti_table.csv");
    let t = Table { caption: "t".into(), versions: ["v5".into(), "v6".into()], rows };
    let out = t.emit(Format::Text);
    let total = out.lines().find(|l| l.starts_with("Total")).unwrap();
    for cell in ["16,146", "34.83", "15,637", "32.95"] {
        assert!(total.contains(cell), "{total}");
    }
}

#[test]
fn csv_round_trips() {
    let (rows, _) = load("article_table.csv");
    let t = Table { caption: "t".into(), versions: ["v5".into(), "v6".into()], rows: rows.clone() };
    let (again, total) = parse_csv(&t.emit(Format::Csv)).unwrap();
    assert_eq!(again, rows);
    assert_eq!(total, Some(TableRow { package: "Total".into(), ..totals(&rows) }));
}

proptest! {
    #[test]
    fn totals_sum_each_column(cells in prop::collection::vec((0u64..100_000, 0u64..100_000, 0u64..100_000, 0u64..100_000), 0..40)) {
        let rows: Vec<TableRow> = cells.iter().enumerate().map(|(i, c)| TableRow {
            package: format!("p{i}"),
            size_kb_v5: c.0,
            time_v5: Centis(c.1),
            size_kb_v6: c.2,
            time_v6: Centis(c.3),
        }).collect();
        let t = totals(&rows);
        prop_assert_eq!(t.size_kb_v5, cells.iter().map(|c| c.0).sum::<u64>());
        prop_assert_eq!(t.time_v5.0, cells.iter().map(|c| c.1).sum::<u64>());
        prop_assert_eq!(t.size_kb_v6, cells.iter().map(|c| c.2).sum::<u64>());
        prop_assert_eq!(t.time_v6.0, cells.iter().map(|c| c.3).sum::<u64>());
    }
}
