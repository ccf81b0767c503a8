use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use segvis::geometry::{parse_polygon, point_in_polygon, validate_polygon, Containment, Point};
use segvis::render::WvpDocument;

fn segvis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_segvis"))
        .args(args)
        .env_remove("SEGVIS_SEED")
        .output()
        .unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}.poly", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("segvis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_reports_violations() {
    assert_eq!(segvis(&["validate", &fixture("square")]).status.code(), Some(0));
    let bow = scratch("bow.poly");
    std::fs::write(&bow, "4\n0 0\n1 1\n1 0\n0 1\n").unwrap();
    let o = segvis(&["validate", s(&bow)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("edges 0 and 2 intersect"));
    let col = scratch("col.poly");
    std::fs::write(&col, "4\n0 0\n1 0\n2 0\n1 1\n").unwrap();
    let o = segvis(&["validate", s(&col)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("collinear"));
}

#[test]
fn build_is_deterministic_and_reports_stats() {
    let (a, b) = (scratch("sq1.idx"), scratch("sq2.idx"));
    let o = segvis(&["build", &fixture("square"), "-o", s(&a)]);
    assert_eq!(o.status.code(), Some(0));
    let stats: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // One internal node and two triangle leaves.
    assert_eq!(stats["stats"]["nodes"], 3);
    assert_eq!(stats["size_audit"]["ok"], true);
    segvis(&["build", &fixture("square"), "-o", s(&b)]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let j = scratch("sq.json.idx");
    segvis(&["build", &fixture("square"), "-o", s(&j), "--format", "json"]);
    assert!(std::fs::read(&j).unwrap().starts_with(b"SEGVIS1\n"));
}

#[test]
fn queries_answer_check_and_reject() {
    let idx = scratch("spike.idx");
    segvis(&["build", &fixture("spike"), "-o", s(&idx)]);
    // This segment sits left of the notch, which hides vertices 2 and 3.
    let o = segvis(&["query", s(&idx), "-2", "5", "0", "8", "--check", "--trace"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: WvpDocument = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(doc.visible_vertices, vec![0, 1, 4, 5, 6, 7]);
    assert!(doc.check.is_some() && doc.trace.is_some());
    let o = segvis(&["query", s(&idx), "100", "100", "0", "0"]);
    assert_eq!(o.status.code(), Some(2));

    let sq = scratch("square.idx");
    segvis(&["build", &fixture("square"), "-o", s(&sq)]);
    let o = segvis(&["query", s(&sq), "1/4", "1/4", "0.5", "3/4"]);
    let doc: WvpDocument = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(doc.visible_vertices, vec![0, 1, 2, 3]);

    let batch = scratch("batch.txt");
    std::fs::write(&batch, "# two segments\n1/4 1/4 1/2 1/2\n0 0 1 1\n").unwrap();
    let o = segvis(&["query", s(&sq), "--batch", s(&batch)]);
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = segvis(&["query", s(&sq), "0", "0", "1", "1", "--format", "svg"]);
    assert!(stdout(&o).starts_with("<svg"));
}

#[test]
fn render_shades_inside_the_outline() {
    let o = segvis(&["render", &fixture("square")]);
    assert!(stdout(&o).contains("class=\"outline\"") && !stdout(&o).contains("class=\"wvp\""));
    let idx = scratch("lshape.idx");
    segvis(&["build", &fixture("lshape"), "-o", s(&idx)]);
    let w = scratch("lshape.json");
    let o = segvis(&["query", s(&idx), "7/4", "1/2", "19/10", "1/2"]);
    std::fs::write(&w, &o.stdout).unwrap();
    let svg = stdout(&segvis(&["render", &fixture("lshape"), "--wvp", s(&w)]));
    let poly = validate_polygon(&parse_polygon(&std::fs::read_to_string(fixture("lshape")).unwrap()).unwrap()).unwrap();
    let line = svg.lines().find(|l| l.contains("class=\"wvp\"")).unwrap();
    let pts = line.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
    for p in pts.split(' ') {
        let (x, y) = p.split_once(',').unwrap();
        let (x, y): (f64, f64) = (x.parse().unwrap(), y.parse().unwrap());
        // Undo the y flip; round to a grid fine enough for these coordinates.
        let q = Point::new(
            segvis::geometry::Coord::frac((x * 3000.0).round() as i64, 3000),
            segvis::geometry::Coord::frac((-y * 3000.0).round() as i64, 3000),
        );
        assert_ne!(point_in_polygon(&poly, &q), Containment::Outside, "{p}");
    }
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"nope\": 1}").unwrap();
    assert_eq!(segvis(&["render", &fixture("lshape"), "--wvp", s(&bad)]).status.code(), Some(1));
}

#[test]
fn bench_rows_and_generation_are_deterministic() {
    let o = segvis(&["bench", "--sizes", "16,24", "--queries", "3"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "n,build_ms,avg_query_ns,output_size,node_visits");
    assert_eq!(rows.len(), 3);
    let again = stdout(&segvis(&["bench", "--sizes", "16,24", "--queries", "3"]));
    let stable = |t: &str| -> Vec<(String, String, String)> {
        t.lines()
            .skip(1)
            .map(|l| {
                let c: Vec<&str> = l.split(',').collect();
                (c[0].into(), c[3].into(), c[4].into())
            })
            .collect()
    };
    assert_eq!(stable(&text), stable(&again));

    let a = stdout(&segvis(&["gen", "--n", "15", "--seed", "4"]));
    let b = Command::new(env!("CARGO_BIN_EXE_segvis"))
        .args(["gen", "--n", "15"])
        .env("SEGVIS_SEED", "4")
        .output()
        .unwrap();
    assert_eq!(a, String::from_utf8(b.stdout).unwrap());
    assert_eq!(parse_polygon(&a).unwrap().len(), 15);
}

#[test]
fn unknown_flags_are_errors() {
    assert_eq!(segvis(&["validate", "--bogus"]).status.code(), Some(1));
    assert_eq!(segvis(&["--help"]).status.code(), Some(0));
}
