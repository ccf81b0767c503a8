//! End-to-end acceptance checks. Each test prints one PASS/FAIL line.

mod common;

use std::io::Write;
use std::process::Command;
use std::time::Instant;

use common::{clipped, root_cases, shape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use segvis::config::{fitted_exponent, Thresholds};
use segvis::corpus::{all_fixtures, generate, random_interior_point, random_interior_segment, Method};
use segvis::geometry::{segment_in_polygon, Point, Segment, SimplePolygon};
use segvis::index::{Format, WvpIndex};
use segvis::partial::{NodeGeometry, PartialDecomposition, ScratchTree, SptL};
use segvis::structure::{balance_bound, triangulate, CutTree};
use segvis::visibility::{visibility_polygon, weak_visibility_oracle, wvp_linear};

/// Writes past the test harness's output capture.
fn report(id: usize, name: &str, failures: &[String], detail: &str) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout();
    let _ = writeln!(out, "criterion {id} [{verdict}] {name}: {detail}");
    for f in failures.iter().take(5) {
        let _ = writeln!(out, "    {f}");
    }
    let _ = out.flush();
    assert!(failures.is_empty(), "criterion {id} failed: {}", failures[0]);
}

fn method(i: u64) -> Method {
    if i % 2 == 0 {
        Method::SpacePartition
    } else {
        Method::TwoOptRepair
    }
}

/// Polygon `i` of a corpus with sizes spread over `lo..=hi`.
fn corpus_polygon(base: u64, i: u64, lo: usize, hi: usize) -> SimplePolygon {
    let n = lo + ((i as usize) * 37) % (hi - lo + 1);
    generate(base + i, n, method(i)).unwrap()
}

#[test]
fn c1_oracle_chain_exactness() {
    let mut failures = Vec::new();
    let mut pairs = 0;
    let check = |name: String, poly: &SimplePolygon, idx: &WvpIndex, pq: &Segment, failures: &mut Vec<String>| {
        let tri = triangulate(poly);
        let lin = wvp_linear(poly, &tri, pq).unwrap();
        let oracle = weak_visibility_oracle(poly, &tri, pq).unwrap();
        if lin.boundary.vertex_set() != oracle {
            failures.push(format!("{name}: linear vertex set differs from oracle for {pq:?}"));
        }
        if idx.query(pq).unwrap().boundary != lin.boundary {
            failures.push(format!("{name}: index boundary differs from linear for {pq:?}"));
        }
    };
    for (name, poly) in all_fixtures() {
        let idx = WvpIndex::build(&poly);
        for k in 0..25 {
            let pq = random_interior_segment(&poly, k).unwrap();
            check(name.to_string(), &poly, &idx, &pq, &mut failures);
            pairs += 1;
        }
    }
    let fixture_pairs = pairs;
    for i in 0..100u64 {
        let poly = corpus_polygon(10_000, i, 10, 100);
        let idx = WvpIndex::build(&poly);
        for k in 0..5 {
            let pq = random_interior_segment(&poly, i * 10 + k).unwrap();
            check(format!("polygon {i} (n={})", poly.len()), &poly, &idx, &pq, &mut failures);
            pairs += 1;
        }
    }
    let detail = format!("{fixture_pairs} fixture pairs and {} generated pairs, n in [10, 100]", pairs - fixture_pairs);
    report(1, "oracle chain exactness", &failures, &detail);
}

#[test]
fn c2_partial_wvp_exactness() {
    let mut failures = Vec::new();
    let mut triples = 0;
    for i in 0..125u64 {
        let poly = corpus_polygon(20_000, i, 10, 100);
        for (side, c) in root_cases(&poly).iter().enumerate() {
            for k in 0..2 {
                let pq = random_interior_segment(&c.r, i * 10 + k).unwrap();
                let (got, _) = c.decomp.query_pwvp(&c.geom, &pq).unwrap();
                if got.canonical() != clipped(c, &pq) {
                    failures.push(format!("polygon {i} side {side}: {pq:?}"));
                }
                triples += 1;
            }
        }
    }
    report(2, "partial WVP exactness", &failures, &format!("{triples} (polygon, root diagonal, segment) triples"));
}

/// Checks the stored profile of cell `f` against a directly computed tree.
fn compare_cell(tag: &str, geom: &NodeGeometry, d: &PartialDecomposition, f: usize, failures: &mut Vec<String>) {
    let x = &d.arrangement.samples[f];
    let stored = d.query_sptl(geom, x).unwrap();
    if !stored.is_stored() {
        failures.push(format!("{tag}: sample of cell {f} did not resolve to its stored profile"));
        return;
    }
    let ctx = d.ctx(geom);
    let direct = SptL::Scratch { ctx, tree: ScratchTree::build(ctx, x).unwrap() };
    if shape(&stored) != shape(&direct) {
        failures.push(format!("{tag}: cell {f} profile differs from the direct tree"));
    }
}

#[test]
fn c3_persistence_soundness() {
    let mut failures = Vec::new();
    let (mut cells, mut rebuilt) = (0, 0);
    for (name, poly) in all_fixtures() {
        let idx = WvpIndex::build(&poly);
        for (id, node) in idx.internal.iter().enumerate() {
            let Some(node) = node else { continue };
            for d in &node.decomps {
                rebuilt += d.rebuilt_cells;
                for f in 0..d.arrangement.face_count {
                    compare_cell(&format!("{name} node {id}"), &node.geom, d, f, &mut failures);
                    cells += 1;
                }
            }
        }
    }
    let fixture_cells = cells;
    for i in 0..100u64 {
        let poly = corpus_polygon(30_000, i, 10, 60);
        let mut rng = ChaCha8Rng::seed_from_u64(i);
        let cases = root_cases(&poly);
        for (side, c) in cases.iter().enumerate() {
            rebuilt += c.decomp.rebuilt_cells;
            for _ in 0..10 {
                let f = rng.gen_range(0..c.decomp.arrangement.face_count);
                compare_cell(&format!("polygon {i} side {side}"), &c.geom, &c.decomp, f, &mut failures);
                cells += 1;
            }
        }
    }
    let detail = format!(
        "{fixture_cells} fixture cells, {} random cells over 100 polygons, {rebuilt} cells rebuilt from scratch",
        cells - fixture_cells
    );
    report(3, "persistence soundness", &failures, &detail);
}

#[test]
fn c4_balance() {
    let t = Thresholds::default();
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for i in 0..500u64 {
        let poly = corpus_polygon(40_000, i, 10, 100);
        let n = poly.len();
        let tree = CutTree::build(&poly);
        for node in &tree.nodes {
            let Some(split) = &node.split else { continue };
            let m = node.verts.len();
            for c in split.children {
                let k = tree.nodes[c].verts.len();
                if k > balance_bound(m) {
                    failures.push(format!("polygon {i}: child with {k} of {m} vertices"));
                }
            }
        }
        let depth = tree.depth() as f64;
        worst = worst.max(depth / (n as f64).log2());
        if depth > t.max_depth(n) {
            failures.push(format!("polygon {i}: depth {depth} for n = {n}"));
        }
    }
    report(4, "balance and depth", &failures, &format!("500 polygons, worst depth / log2 n = {worst:.2}"));
}

#[test]
fn c5_size_and_time_audits() {
    let t = Thresholds::default();
    let mut failures = Vec::new();
    let mut fit = Vec::new();
    let (mut worst_visits, mut worst_partial, mut worst_entries): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for (k, &n) in [32usize, 64, 128, 256].iter().enumerate() {
        let poly = generate(50_000 + k as u64, n, Method::SpacePartition).unwrap();
        let mut best = f64::INFINITY;
        let mut idx = None;
        for _ in 0..3 {
            let t0 = Instant::now();
            let built = WvpIndex::build(&poly);
            best = best.min(t0.elapsed().as_secs_f64());
            idx = Some(built);
        }
        let idx = idx.unwrap();
        fit.push((n as f64, best));
        let stats = idx.stats();
        worst_entries = worst_entries.max(stats.profile_entries as f64 / (n * n) as f64);
        if stats.profile_entries as f64 > t.max_profile_entries(n) {
            failures.push(format!("n={n}: {} profile entries", stats.profile_entries));
        }
        for (id, node) in idx.internal.iter().enumerate() {
            let Some(node) = node else { continue };
            let m = idx.tree.nodes[id].verts.len();
            for d in &node.decomps {
                if d.constraints.len() as f64 > t.max_constraints(m) {
                    failures.push(format!("n={n} node {id}: {} constraints for {m} vertices", d.constraints.len()));
                }
                if d.arrangement.face_count as f64 > t.max_cells(m) {
                    failures.push(format!("n={n} node {id}: {} cells for {m} vertices", d.arrangement.face_count));
                }
            }
        }
        let root = &idx.internal[0].as_ref().unwrap();
        for j in 0..20u64 {
            let pq = random_interior_segment(&poly, j).unwrap();
            let (w, tr) = idx.query_traced(&pq).unwrap();
            let out = w.elements(&idx.polygon).len();
            worst_visits = worst_visits.max(tr.visits as f64 / t.max_query_visits(n, out) * t.beta);
            if tr.visits as f64 > t.max_query_visits(n, out) {
                failures.push(format!("n={n}: {} visits for output {out}", tr.visits));
            }
            if tr.visits >= n * out.max(1) {
                failures.push(format!("n={n}: super-linear query, {} visits for output {out}", tr.visits));
            }
            // The root's partial queries on their own, against alpha.
            for d in &root.decomps {
                let Ok((part, visits)) = d.query_pwvp(&root.geom, &pq) else { continue };
                let out = part.vertex_set().len();
                worst_partial = worst_partial.max(visits as f64 / t.max_partial_visits(n, out) * t.alpha);
                if visits as f64 > t.max_partial_visits(n, out) {
                    failures.push(format!("n={n}: partial query visited {visits} for output {out}"));
                }
            }
        }
    }
    let e = fitted_exponent(&fit);
    if e > t.build_exponent {
        failures.push(format!("fitted build exponent {e:.2} exceeds {}", t.build_exponent));
    }
    let detail = format!(
        "build exponent {e:.2} (limit {}), worst profile entries / n^2 = {worst_entries:.2} (limit {}), \
         worst query visit ratio {worst_visits:.2} (limit {}), worst partial visit ratio {worst_partial:.2} (limit {})",
        t.build_exponent, t.c3, t.beta, t.alpha
    );
    report(5, "size and time audits", &failures, &detail);
}

#[test]
fn c6_degeneracies() {
    let mut failures = Vec::new();
    let mut cases = 0;
    let mut polys: Vec<(String, SimplePolygon)> = all_fixtures().into_iter().map(|(n, p)| (n.to_string(), p)).collect();
    polys.extend((0..20u64).map(|i| (format!("polygon {i}"), corpus_polygon(60_000, i, 10, 60))));
    for (name, poly) in &polys {
        let idx = WvpIndex::build(poly);
        let tri = triangulate(poly);
        let mut rng = ChaCha8Rng::seed_from_u64(cases as u64);
        let mut found = Vec::new();
        let mut agree = |what: &str, pq: &Segment| {
            if !segment_in_polygon(poly, pq) {
                return;
            }
            cases += 1;
            let want = wvp_linear(poly, &tri, pq).unwrap().boundary;
            match idx.query(pq) {
                Ok(got) if got.boundary == want => {}
                Ok(_) => found.push(format!("{name}: {what} {pq:?} differs from linear")),
                Err(e) => found.push(format!("{name}: {what} {pq:?} rejected: {e}")),
            }
        };
        // Point sources.
        for _ in 0..5 {
            let p = random_interior_point(poly, &mut rng).unwrap();
            let pq = Segment::new(p.clone(), p.clone());
            let vp = visibility_polygon(poly, &tri, &p).unwrap();
            let got = idx.query(&pq).unwrap().boundary.vertex_set();
            agree("point source", &pq);
            if got != vp.boundary.vertex_set() {
                failures.push(format!("{name}: point source {p:?} differs from its visibility polygon"));
            }
        }
        // Endpoints on the boundary: at vertices and inside edges.
        for v in 0..poly.len().min(12) {
            let q = random_interior_point(poly, &mut rng).unwrap();
            agree("vertex endpoint", &Segment::new(poly.vertex(v).clone(), q.clone()));
            let (a, b) = poly.edge_points(v);
            agree("edge endpoint", &Segment::new(Point::midpoint(a, b), q));
        }
        // Endpoints on cut diagonals, including both ends on one diagonal.
        for node in &idx.tree.nodes {
            let Some(split) = &node.split else { continue };
            let (a, b) = (poly.vertex(node.verts[split.a]), poly.vertex(node.verts[split.b]));
            let mid = Point::midpoint(a, b);
            let q = random_interior_point(poly, &mut rng).unwrap();
            agree("diagonal endpoint", &Segment::new(mid.clone(), q.clone()));
            agree("diagonal endpoint", &Segment::new(q, mid.clone()));
            agree("along diagonal", &Segment::new(mid.clone(), a.clone()));
            agree("whole diagonal", &Segment::new(a.clone(), b.clone()));
        }
        failures.extend(found);
    }
    report(6, "degeneracy suite", &failures, &format!("{cases} degenerate queries over {} polygons", polys.len()));
}

fn run(args: &[&str]) -> Vec<u8> {
    let o = Command::new(env!("CARGO_BIN_EXE_segvis")).args(args).env_remove("SEGVIS_SEED").output().unwrap();
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    o.stdout
}

#[test]
fn c7_determinism() {
    let mut failures = Vec::new();
    let dir = std::env::temp_dir().join(format!("segvis-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let fixtures = ["square", "lshape", "spike", "comb8"];
    let mut runs = 0;
    for name in fixtures {
        let poly = format!("{}/fixtures/{name}.poly", env!("CARGO_MANIFEST_DIR"));
        let segs = String::from_utf8(run(&["gen", "--segments", "5", "--polygon", &poly])).unwrap();
        let batch = dir.join(format!("{name}.txt"));
        std::fs::write(&batch, &segs).unwrap();
        for format in ["binary", "json"] {
            let files: Vec<_> = (0..2).map(|k| dir.join(format!("{name}.{format}.{k}"))).collect();
            for f in &files {
                run(&["build", &poly, "-o", f.to_str().unwrap(), "--format", format]);
            }
            let bytes: Vec<Vec<u8>> = files.iter().map(|f| std::fs::read(f).unwrap()).collect();
            if bytes[0] != bytes[1] {
                failures.push(format!("{name}: {format} index files differ"));
            }
            let answers: Vec<Vec<u8>> = files
                .iter()
                .map(|f| run(&["query", f.to_str().unwrap(), "--batch", batch.to_str().unwrap(), "--trace"]))
                .collect();
            if answers[0] != answers[1] {
                failures.push(format!("{name}: {format} query output differs"));
            }
            runs += 2;
        }
        let p = all_fixtures().into_iter().find(|(n, _)| n.to_lowercase().replace('-', "") == name).unwrap().1;
        if WvpIndex::build(&p).to_bytes(Format::Binary) != WvpIndex::build(&p).to_bytes(Format::Binary) {
            failures.push(format!("{name}: in-process builds differ"));
        }
    }
    report(7, "determinism", &failures, &format!("{runs} build and query runs over {} fixtures", fixtures.len()));
}
