use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use segvis::config::{fitted_exponent, Thresholds};
use segvis::corpus::{generate, random_interior_segment, Method};
use segvis::geometry::{format_polygon, parse_polygon, parse_segment, validate_polygon, Segment, SimplePolygon};
use segvis::index::{Format, WvpIndex};
use segvis::render::{render_svg, CheckReport, WvpDocument};
use segvis::structure::triangulate;
use segvis::visibility::{weak_visibility_oracle, wvp_linear};

#[derive(Parser)]
#[command(name = "segvis", version, about = "Weak visibility queries for segments in simple polygons")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Seed for generated polygons and segments.
    #[arg(long, env = "SEGVIS_SEED", default_value_t = 0, global = true)]
    seed: u64,
    #[arg(long, global = true)]
    c1: Option<f64>,
    #[arg(long, global = true)]
    c2: Option<f64>,
    #[arg(long, global = true)]
    c3: Option<f64>,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    beta: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a polygon file.
    Validate { polygon: PathBuf },
    /// Build an index and print its statistics.
    Build {
        polygon: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = IndexFormat::Binary)]
        format: IndexFormat,
    },
    /// Answer one segment `x1 y1 x2 y2`, or a batch with one segment per line.
    Query {
        index: PathBuf,
        #[arg(num_args = 0..=4, allow_negative_numbers = true)]
        segment: Vec<String>,
        /// File of segments, `-` for stdin.
        #[arg(long)]
        batch: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
        #[arg(long)]
        trace: bool,
        /// Compare with the linear algorithm and the brute-force oracle.
        #[arg(long)]
        check: bool,
    },
    /// Time builds and queries over generated polygons; CSV on stdout.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [32usize, 64, 128])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        queries: usize,
        #[arg(long, value_enum, default_value_t = GenMethod::Space)]
        method: GenMethod,
    },
    /// Draw a polygon, optionally with a query answer in JSON.
    Render {
        polygon: PathBuf,
        #[arg(long)]
        wvp: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Generate a polygon, or segments inside a given polygon.
    Gen {
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GenMethod::Space)]
        method: GenMethod,
        /// Print this many segments inside `--polygon` instead.
        #[arg(long, requires = "polygon")]
        segments: Option<usize>,
        #[arg(long)]
        polygon: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum IndexFormat {
    Json,
    Binary,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenMethod {
    Space,
    TwoOpt,
}

impl From<GenMethod> for Method {
    fn from(m: GenMethod) -> Method {
        match m {
            GenMethod::Space => Method::SpacePartition,
            GenMethod::TwoOpt => Method::TwoOptRepair,
        }
    }
}

/// Failures by exit code.
enum Fail {
    Input(String),
    Precondition(String),
    Internal(String),
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Input(_) => 1,
            Fail::Precondition(_) => 2,
            Fail::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Fail::Input(m) | Fail::Precondition(m) | Fail::Internal(m) => m,
        }
    }
}

type Res<T = ()> = Result<T, Fail>;

fn input<E: std::fmt::Display>(ctx: &str) -> impl Fn(E) -> Fail + '_ {
    move |e| Fail::Input(format!("{ctx}: {e}"))
}

fn read_text(path: &Path) -> Res<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(input("stdin"))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(input(&path.display().to_string()))
}

fn load_polygon(path: &Path) -> Res<SimplePolygon> {
    let text = read_text(path)?;
    let pts = parse_polygon(&text).map_err(input(&path.display().to_string()))?;
    validate_polygon(&pts).map_err(input(&path.display().to_string()))
}

fn emit(out: Option<&Path>, text: &str) -> Res {
    match out {
        Some(p) => fs::write(p, text).map_err(input(&p.display().to_string())),
        None => io::stdout().write_all(text.as_bytes()).map_err(input("stdout")),
    }
}

fn thresholds(cli: &Cli) -> Thresholds {
    let mut t = Thresholds::default();
    for (slot, v) in [(&mut t.c1, cli.c1), (&mut t.c2, cli.c2), (&mut t.c3, cli.c3), (&mut t.alpha, cli.alpha), (&mut t.beta, cli.beta)] {
        if let Some(v) = v {
            *slot = v;
        }
    }
    t
}

fn validate(path: &Path) -> Res {
    let poly = load_polygon(path)?;
    println!("ok: {} vertices, {} reflex", poly.len(), poly.reflex_count());
    Ok(())
}

fn build(cli: &Cli, polygon: &Path, out: &Path, format: IndexFormat) -> Res {
    let poly = load_polygon(polygon)?;
    let t0 = Instant::now();
    let index = WvpIndex::build(&poly);
    let build_ms = t0.elapsed().as_secs_f64() * 1e3;
    let format = match format {
        IndexFormat::Json => Format::Json,
        IndexFormat::Binary => Format::Binary,
    };
    fs::write(out, index.to_bytes(format)).map_err(input(&out.display().to_string()))?;
    let stats = index.stats();
    let limit = thresholds(cli).max_profile_entries(stats.n);
    let report = serde_json::json!({
        "stats": stats,
        "build_ms": build_ms,
        "size_audit": { "profile_entries": stats.profile_entries, "limit": limit, "ok": stats.profile_entries as f64 <= limit },
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("stats serialize"));
    Ok(())
}

fn load_index(path: &Path) -> Res<WvpIndex> {
    let file = fs::File::open(path).map_err(input(&path.display().to_string()))?;
    WvpIndex::read_from(io::BufReader::new(file)).map_err(input(&path.display().to_string()))
}

fn answer(index: &WvpIndex, pq: &Segment, trace: bool, check: bool) -> Res<WvpDocument> {
    let (w, tr) = index.query_traced(pq).map_err(|e| Fail::Precondition(format!("{e}: {pq:?}")))?;
    let poly = &index.polygon;
    let mut doc = WvpDocument::new(poly, &w);
    if trace {
        doc.trace = Some(tr);
    }
    if check {
        let tri = triangulate(poly);
        let lin = wvp_linear(poly, &tri, pq).map_err(|e| Fail::Internal(e.to_string()))?;
        let oracle = weak_visibility_oracle(poly, &tri, pq).map_err(|e| Fail::Internal(e.to_string()))?;
        let want = lin.elements(poly);
        if want != doc.elements {
            let k = want.iter().zip(&doc.elements).take_while(|(a, b)| a == b).count();
            return Err(Fail::Internal(format!(
                "index and linear answers diverge at element {k}: index {:?}, linear {:?}",
                doc.elements.get(k),
                want.get(k)
            )));
        }
        let lin_set = lin.boundary.vertex_set();
        if lin_set != oracle {
            let v = lin_set.symmetric_difference(&oracle).next().copied();
            return Err(Fail::Internal(format!("linear answer and oracle disagree on vertex {v:?}")));
        }
        doc.check = Some(CheckReport { linear: true, oracle: true });
    }
    Ok(doc)
}

fn query(index_path: &Path, segment: &[String], batch: Option<&Path>, format: OutFormat, trace: bool, check: bool) -> Res {
    let index = load_index(index_path)?;
    let segments: Vec<Segment> = match (batch, segment.len()) {
        (Some(b), 0) => {
            let text = read_text(b)?;
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| parse_segment(l).map_err(|e| Fail::Input(format!("{l:?}: {e}"))))
                .collect::<Res<_>>()?
        }
        (None, 4) => vec![parse_segment(&segment.join(" ")).map_err(Fail::Input)?],
        _ => return Err(Fail::Input("give a segment as x1 y1 x2 y2, or --batch FILE".into())),
    };
    if format == OutFormat::Svg && segments.len() != 1 {
        return Err(Fail::Input("svg output takes exactly one segment".into()));
    }
    let mut out = io::stdout().lock();
    for pq in &segments {
        let doc = answer(&index, pq, trace, check)?;
        let text = match format {
            OutFormat::Json => serde_json::to_string(&doc).expect("answer serializes") + "\n",
            OutFormat::Svg => render_svg(&index.polygon, Some(&doc)),
        };
        out.write_all(text.as_bytes()).map_err(input("stdout"))?;
    }
    Ok(())
}

fn bench(cli: &Cli, sizes: &[usize], queries: usize, method: Method) -> Res {
    let t = thresholds(cli);
    println!("n,build_ms,avg_query_ns,output_size,node_visits");
    let mut fit = Vec::new();
    for &n in sizes {
        let poly = generate(cli.seed ^ n as u64, n, method).map_err(|e| Fail::Internal(e.to_string()))?;
        let t0 = Instant::now();
        let index = WvpIndex::build(&poly);
        let build_ms = t0.elapsed().as_secs_f64() * 1e3;
        fit.push((n as f64, build_ms));
        let segs: Vec<Segment> = (0..queries as u64)
            .map(|k| random_interior_segment(&poly, cli.seed.wrapping_mul(1_000_003) + k))
            .collect::<Result<_, _>>()
            .map_err(|e| Fail::Internal(e.to_string()))?;
        let (mut ns, mut size, mut visits) = (0u128, 0usize, 0usize);
        for pq in &segs {
            let t1 = Instant::now();
            let (w, tr) = index.query_traced(pq).map_err(|e| Fail::Internal(e.to_string()))?;
            ns += t1.elapsed().as_nanos();
            let out = w.elements(&index.polygon).len();
            if tr.visits as f64 > t.max_query_visits(n, out) {
                eprintln!("audit: n={n} query visits {} exceed {:.0}", tr.visits, t.max_query_visits(n, out));
            }
            size += out;
            visits += tr.visits;
        }
        let k = segs.len().max(1);
        println!("{n},{build_ms:.3},{},{:.2},{:.2}", ns / k as u128, size as f64 / k as f64, visits as f64 / k as f64);
    }
    if fit.len() >= 2 {
        let e = fitted_exponent(&fit);
        eprintln!("fitted build exponent {e:.3} (limit {})", t.build_exponent);
    }
    Ok(())
}

fn render(polygon: &Path, wvp: Option<&Path>, out: Option<&Path>) -> Res {
    let poly = load_polygon(polygon)?;
    let doc: Option<WvpDocument> = match wvp {
        Some(p) => {
            let text = read_text(p)?;
            let doc: WvpDocument = serde_json::from_str(text.lines().next().unwrap_or("")).map_err(input(&p.display().to_string()))?;
            if let Some(bad) = doc.elements.iter().find(|e| match e {
                segvis::visibility::Element::Vertex(i) => *i >= poly.len(),
                segvis::visibility::Element::Window { edge, .. } => *edge >= poly.len(),
            }) {
                return Err(Fail::Input(format!("element {bad:?} does not fit the polygon")));
            }
            Some(doc)
        }
        None => None,
    };
    emit(out, &render_svg(&poly, doc.as_ref()))
}

fn gen(cli: &Cli, n: usize, method: Method, segments: Option<usize>, polygon: Option<&Path>) -> Res {
    match (segments, polygon) {
        (Some(k), Some(p)) => {
            let poly = load_polygon(p)?;
            let mut s = String::new();
            for j in 0..k as u64 {
                let pq = random_interior_segment(&poly, cli.seed.wrapping_mul(1_000_003) + j).map_err(|e| Fail::Internal(e.to_string()))?;
                s.push_str(&format!("{} {} {} {}\n", pq.a.x, pq.a.y, pq.b.x, pq.b.y));
            }
            emit(None, &s)
        }
        _ => {
            let poly = generate(cli.seed, n, method).map_err(input("generate"))?;
            emit(None, &format_polygon(&poly))
        }
    }
}

fn run(cli: &Cli) -> Res {
    match &cli.cmd {
        Cmd::Validate { polygon } => validate(polygon),
        Cmd::Build { polygon, out, format } => build(cli, polygon, out, *format),
        Cmd::Query { index, segment, batch, format, trace, check } => query(index, segment, batch.as_deref(), *format, *trace, *check),
        Cmd::Bench { sizes, queries, method } => bench(cli, sizes, *queries, (*method).into()),
        Cmd::Render { polygon, wvp, out } => render(polygon, wvp.as_deref(), out.as_deref()),
        Cmd::Gen { n, method, segments, polygon } => gen(cli, *n, (*method).into(), *segments, polygon.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

