use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spiralss::io::{from_json, to_json, AnyStem, IoError, Object};
use spiralss::oracle::{classical_coss, classical_ss, random_cochain_corpus, random_corpus};
use spiralss::pages::{
    compare_pages, cosimplicial_ss, spiral_ss_of_chains, truncated_ss_with, ChaseChoices, SpectralPages,
    TruncatedSS, TruncationError,
};
use spiralss::simplicial::{Bicomplex, CochainBicomplex};
use spiralss::spiral::{cospiral_les, spiral_les_of_couple, LesKind, SpiralCouple, SpiralLes};
use spiralss::stems::{costem_of, stem_of_chains, stem_validate, Grid, Stem};

mod render;

#[derive(Parser)]
#[command(name = "spiralss", version, about = "Spiral and truncated spectral sequences of bisimplicial abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for corpus generation and for varying lift choices in the relation chase.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Svg,
    Json,
}

#[derive(Args)]
struct Input {
    #[arg(long, short)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check an input document and report what it contains.
    Validate(Input),
    /// Pages of the spectral sequence of a double complex or bisimplicial group.
    Pages {
        #[command(flatten)]
        input: Input,
        /// Last page; defaults to the page where the sequence has stabilized.
        #[arg(long)]
        max_page: Option<usize>,
    },
    /// The stem of order n of an object, as a document.
    Stem {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        stem_order: usize,
    },
    /// The spiral long exact sequence.
    Spiral {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 4)]
        range: usize,
    },
    /// The truncated spectral sequence of a stem (or of the stem of an object).
    Truncate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        stem_order: Option<usize>,
    },
    /// The composite of the top truncated differential with itself.
    Obstruction {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        stem_order: Option<usize>,
    },
    /// Truncated against full pages (with --stem-order), or full pages against the
    /// filtration spectral sequence.
    Compare {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        stem_order: Option<usize>,
        #[arg(long, default_value_t = 4)]
        max_page: usize,
    },
    /// Write a seeded random corpus, one document per object.
    Corpus {
        #[arg(long, default_value_t = 10)]
        size: usize,
        #[arg(long, value_enum, default_value_t = CorpusKind::Bicomplex)]
        kind: CorpusKind,
        #[arg(long, default_value = "corpus")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CorpusKind {
    Bicomplex,
    Cochain,
}

/// A failed run, by exit code. Mismatches are not failures; they exit 1 with output.
enum Failure {
    Malformed(String),
    Invariant(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Malformed(_) => 2,
            Failure::Invariant(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Malformed(m) | Failure::Invariant(m) | Failure::Internal(m) => m,
        }
    }
}

type Run = Result<Output, Failure>;

/// What a command prints, and the verdict it exits with.
struct Output {
    body: String,
    mismatch: Option<String>,
}

impl Output {
    fn ok(body: String) -> Output {
        Output { body, mismatch: None }
    }
}

fn load(path: &Path) -> Result<Object, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    from_json(&text).map_err(|e| {
        let m = format!("{}: {e}", path.display());
        match e {
            IoError::Syntax { .. } | IoError::Field { .. } => Failure::Malformed(m),
            IoError::Invariant(_) => Failure::Invariant(m),
        }
    })
}

/// The double complex the engine runs on.
enum Engine {
    Chains(Bicomplex),
    Cochains(CochainBicomplex),
}

fn engine(x: Object, command: &str) -> Result<Engine, Failure> {
    match x {
        Object::Bicomplex(b) => Ok(Engine::Chains(b)),
        Object::Bisimplicial(x) => Ok(Engine::Chains(x.vertical_normalize().normalized().bicomplex)),
        Object::Cochain(k) => Ok(Engine::Cochains(k)),
        Object::Stem(_) => Err(Failure::Malformed(format!("`{command}` needs a double complex or a bisimplicial group, not a stem"))),
    }
}

fn stable_page(max_s: usize, max_t: usize) -> usize {
    max_s + max_t + 2
}

fn pages_body(pages: &SpectralPages, format: Format, extra: Value, summary: String) -> String {
    match format {
        Format::Text => format!("{}\n{summary}\n", render::text_pages(&pages.pages, pages.grading)),
        Format::Svg => render::svg_pages(&pages.pages, pages.grading),
        Format::Json => {
            let mut v = json!({ "pages": render::pages_json(&pages.pages, pages.grading) });
            if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
                m.extend(e);
            }
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
    }
}

/// First page from which every computed differential vanishes.
fn collapse_page(pages: &SpectralPages) -> usize {
    let mut r = pages.max_page() + 1;
    for p in pages.pages.iter().rev() {
        if p.diffs.values().any(|d| !d.is_zero()) {
            break;
        }
        r = p.r;
    }
    r
}

fn check_full(pages: &SpectralPages, converged: bool) -> Result<(), Failure> {
    let internal = |e: spiralss::pages::PageFailure| Failure::Internal(format!("page {} at {:?}: {}", e.r, e.pos, e.reason));
    pages.check_d_squared().map_err(internal)?;
    pages.check_homology_steps().map_err(internal)?;
    if converged {
        pages.check_convergence().map_err(internal)?;
    }
    Ok(())
}

fn cmd_validate(x: Object, format: Format) -> Run {
    let (kind, detail) = match &x {
        Object::Bicomplex(b) => ("bicomplex", format!("{} nonzero entries", b.support().count())),
        Object::Cochain(k) => ("cochain-bicomplex", format!("{} nonzero entries", k.support().count())),
        Object::Bisimplicial(x) => ("bisimplicial", format!("levels 0..={} by 0..={}", x.stop(), x.ttop())),
        Object::Stem(s) => {
            let (verdict, order, n) = match s {
                AnyStem::Simplicial(s) => (stem_validate(s), s.order, s.windows.len()),
                AnyStem::Cosimplicial(s) => (stem_validate(s), s.order, s.windows.len()),
            };
            if let Some(v) = verdict.violation {
                return Err(Failure::Invariant(format!(
                    "stem axiom {:?} fails in window {} (column {}, degree {})",
                    v.axiom, v.window, v.column, v.degree
                )));
            }
            ("stem", format!("order {order}, {n} windows"))
        }
    };
    Ok(Output::ok(match format {
        Format::Json => format!("{}\n", json!({ "valid": true, "kind": kind, "detail": detail })),
        _ => format!("valid {kind}: {detail}\n"),
    }))
}

fn cmd_pages(x: Object, max_page: Option<usize>, format: Format) -> Run {
    let (pages, stable) = match engine(x, "pages")? {
        Engine::Chains(b) => {
            let st = stable_page(b.max_s(), b.max_t());
            (spiral_ss_of_chains(&b, max_page.unwrap_or(st)), st)
        }
        Engine::Cochains(k) => {
            let st = stable_page(k.max_s(), k.max_t());
            (cosimplicial_ss(&k, max_page.unwrap_or(st)), st)
        }
    };
    check_full(&pages, pages.max_page() >= stable)?;
    let c = collapse_page(&pages);
    let summary = if c <= pages.max_page() {
        format!("collapses at page {c}")
    } else {
        format!("nonzero differentials through page {}", pages.max_page())
    };
    Ok(Output::ok(pages_body(&pages, format, json!({ "collapse": c, "summary": summary.clone() }), summary)))
}

fn stem_text<G: Grid>(s: &Stem<G>) -> String {
    let mut out = format!("stem of order {} with {} windows\n", s.order, s.windows.len());
    for (k, w) in s.windows.iter().enumerate() {
        let groups: Vec<String> = w
            .grid_support()
            .into_iter()
            .map(|(a, b)| format!("({a},{b}) {}", render::group_label(&w.grid_group(a, b))))
            .collect();
        out.push_str(&format!("window {k}: {}\n", if groups.is_empty() { "0".to_string() } else { groups.join(", ") }));
    }
    out
}

fn cmd_stem(x: Object, n: usize, format: Format) -> Run {
    let s = match engine(x, "stem")? {
        Engine::Chains(b) => AnyStem::Simplicial(stem_of_chains(&b, n)),
        Engine::Cochains(k) => AnyStem::Cosimplicial(costem_of(&k, n)),
    };
    let body = match (format, &s) {
        (Format::Json, _) => format!("{}\n", to_json(&Object::Stem(s.clone()))),
        (_, AnyStem::Simplicial(s)) => stem_text(s),
        (_, AnyStem::Cosimplicial(s)) => stem_text(s),
    };
    Ok(Output::ok(body))
}

fn les_body(les: &SpiralLes, format: Format) -> String {
    match format {
        Format::Json => {
            let rows: serde_json::Map<String, Value> = les
                .rows
                .iter()
                .map(|(&t, row)| {
                    let nodes: Vec<Value> = row
                        .nodes
                        .iter()
                        .zip(&row.groups)
                        .map(|(n, g)| json!({ "node": n.label(les.kind, t), "group": render::group_json(g.value()) }))
                        .collect();
                    (t.to_string(), Value::Array(nodes))
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&json!({ "exact": true, "rows": rows })).expect("json"))
        }
        _ => {
            let mut out = String::new();
            for (&t, row) in &les.rows {
                let cells: Vec<String> = row
                    .nodes
                    .iter()
                    .zip(&row.groups)
                    .map(|(n, g)| format!("{} = {}", n.label(les.kind, t), render::group_label(g.value())))
                    .collect();
                out.push_str(&format!("row {t}: {}\n", cells.join(" -> ")));
            }
            out.push_str("exact at every node\n");
            out
        }
    }
}

fn cmd_spiral(x: Object, range: usize, format: Format) -> Run {
    let les = match engine(x, "spiral")? {
        Engine::Chains(b) => spiral_les_of_couple(&SpiralCouple::new(&b), range),
        Engine::Cochains(k) => cospiral_les(&k, range),
    };
    les.check_exact()
        .map_err(|e| Failure::Internal(format!("spiral sequence is not exact at {:?} in row {}", e.node, e.row)))?;
    if les.kind == LesKind::Simplicial && !les.h0_is_iso() {
        return Err(Failure::Internal("h_0 is not an isomorphism".into()));
    }
    if format == Format::Svg {
        return Err(Failure::Malformed("the spiral sequence has no chart; use --format text or json".into()));
    }
    Ok(Output::ok(les_body(&les, format)))
}

enum TruncInput {
    Simplicial(Stem<Bicomplex>),
    Cosimplicial(Stem<CochainBicomplex>),
}

fn stem_input(x: Object, order: Option<usize>, command: &str) -> Result<TruncInput, Failure> {
    match (x, order) {
        (Object::Stem(AnyStem::Simplicial(s)), None) => Ok(TruncInput::Simplicial(s)),
        (Object::Stem(AnyStem::Cosimplicial(s)), None) => Ok(TruncInput::Cosimplicial(s)),
        (Object::Stem(_), Some(_)) => Err(Failure::Malformed("--stem-order applies to objects, not to stems".into())),
        (x, Some(n)) => Ok(match engine(x, command)? {
            Engine::Chains(b) => TruncInput::Simplicial(stem_of_chains(&b, n)),
            Engine::Cochains(k) => TruncInput::Cosimplicial(costem_of(&k, n)),
        }),
        (_, None) => Err(Failure::Malformed(format!("`{command}` needs a stem or --stem-order"))),
    }
}

fn truncation_failure(e: TruncationError) -> Failure {
    match e {
        TruncationError::Stem(v) => Failure::Invariant(format!(
            "stem axiom {:?} fails in window {} (column {}, degree {})",
            v.axiom, v.window, v.column, v.degree
        )),
        TruncationError::Chase(p) => {
            Failure::Invariant(format!("relation chase fails on page {} at {:?}: {} (stem axiom violation)", p.r, p.pos, p.reason))
        }
    }
}

fn truncate(input: &TruncInput, seed: Option<u64>) -> Result<TruncatedSS, Failure> {
    let choices = seed.map(|seed| ChaseChoices { seed });
    match input {
        TruncInput::Simplicial(s) => truncated_ss_with(s, choices),
        TruncInput::Cosimplicial(s) => truncated_ss_with(s, choices),
    }
    .map_err(truncation_failure)
}

fn as_pages(t: &TruncatedSS) -> SpectralPages {
    SpectralPages { grading: t.grading, e1: Default::default(), pages: t.pages.clone(), abutment: Default::default() }
}

fn obstruction_lines(t: &TruncatedSS) -> Vec<(String, String, String)> {
    spiralss::pages::obstruction_images(t)
        .into_iter()
        .map(|(p, q, g)| (render::pos_key(p), render::pos_key(q), render::group_label(&g)))
        .collect()
}

fn cmd_truncate(x: Object, order: Option<usize>, seed: Option<u64>, format: Format) -> Run {
    let input = stem_input(x, order, "truncate")?;
    let t = truncate(&input, seed)?;
    if t.is_closed() {
        t.check_boundaries().map_err(|e| Failure::Internal(format!("page {} at {:?}: {}", e.r, e.pos, e.reason)))?;
    }
    let summary = if t.is_closed() {
        format!("pages 1..{} of order {}; top differential squares to zero", t.order + 1, t.order)
    } else {
        format!("pages 1..{} of order {}; top differential does not square to zero", t.order + 1, t.order)
    };
    let extra = json!({ "order": t.order, "closed": t.is_closed() });
    Ok(Output::ok(pages_body(&as_pages(&t), format, extra, summary)))
}

fn cmd_obstruction(x: Object, order: Option<usize>, seed: Option<u64>, format: Format) -> Run {
    let input = stem_input(x, order, "obstruction")?;
    let t = truncate(&input, seed)?;
    let lines = obstruction_lines(&t);
    let body = match format {
        Format::Json => {
            let entries: Vec<Value> =
                lines.iter().map(|(p, q, g)| json!({ "source": p, "target": q, "image": g })).collect();
            format!("{}\n", serde_json::to_string_pretty(&json!({ "order": t.order, "vanishes": lines.is_empty(), "entries": entries })).expect("json"))
        }
        Format::Svg => return Err(Failure::Malformed("the obstruction has no chart; use --format text or json".into())),
        Format::Text if lines.is_empty() => format!("obstruction of order {} vanishes\n", t.order),
        Format::Text => lines.iter().map(|(p, q, g)| format!("nonzero obstruction ({p}) -> ({q}), image {g}\n")).collect(),
    };
    Ok(Output::ok(body))
}

fn cmd_compare(x: Object, order: Option<usize>, max_page: usize, seed: Option<u64>, format: Format) -> Run {
    let (agreement, through) = match order {
        Some(_) => {
            let input = stem_input(x, order, "compare")?;
            let t = truncate(&input, seed)?;
            let verdict = match &input {
                TruncInput::Simplicial(s) => spiralss::pages::compare_with_source(&t, s),
                TruncInput::Cosimplicial(s) => spiralss::pages::compare_with_source(&t, s),
            }
            .ok_or_else(|| Failure::Malformed("the stem has no realization to compare with".into()))?;
            let verdict = verdict.and_then(|a| t.check_boundaries().map(|_| a));
            (verdict, t.order + 1)
        }
        None => {
            let (ours, theirs) = match engine(x, "compare")? {
                Engine::Chains(b) => (spiral_ss_of_chains(&b, max_page), classical_ss(&b, max_page)),
                Engine::Cochains(k) => (cosimplicial_ss(&k, max_page), classical_coss(&k, max_page)),
            };
            (compare_pages(&ours, &theirs, 1, max_page), max_page)
        }
    };
    let (body, mismatch) = match agreement {
        Ok(a) => {
            let body = match format {
                Format::Json => format!("{}\n", json!({ "match": true, "through": through, "signs": a.signs })),
                _ => format!("match through page {through}\n"),
            };
            (body, None)
        }
        Err(e) => {
            let m = format!("mismatch on page {} at ({},{}): {}", e.r, e.pos.0, e.pos.1, e.reason);
            let body = match format {
                Format::Json => format!("{}\n", json!({ "match": false, "page": e.r, "at": render::pos_key(e.pos), "reason": e.reason })),
                _ => format!("{m}\n"),
            };
            (body, Some(m))
        }
    };
    if format == Format::Svg {
        return Err(Failure::Malformed("comparisons have no chart; use --format text or json".into()));
    }
    Ok(Output { body, mismatch })
}

fn cmd_corpus(size: usize, kind: CorpusKind, out: &Path, seed: u64) -> Run {
    std::fs::create_dir_all(out).map_err(|e| Failure::Malformed(format!("{}: {e}", out.display())))?;
    let docs: Vec<String> = match kind {
        CorpusKind::Bicomplex => random_corpus(seed, size).into_iter().map(|b| to_json(&Object::Bicomplex(b))).collect(),
        CorpusKind::Cochain => random_cochain_corpus(seed, size).into_iter().map(|k| to_json(&Object::Cochain(k))).collect(),
    };
    let mut body = String::new();
    for (i, d) in docs.iter().enumerate() {
        let path = out.join(format!("object-{i:03}.json"));
        std::fs::write(&path, format!("{d}\n")).map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))?;
        body.push_str(&format!("{}\n", path.display()));
    }
    Ok(Output::ok(body))
}

fn run(cli: &Cli) -> Run {
    let f = cli.format;
    match &cli.command {
        Command::Validate(i) => cmd_validate(load(&i.input)?, f),
        Command::Pages { input, max_page } => cmd_pages(load(&input.input)?, *max_page, f),
        Command::Stem { input, stem_order } => cmd_stem(load(&input.input)?, *stem_order, f),
        Command::Spiral { input, range } => cmd_spiral(load(&input.input)?, *range, f),
        Command::Truncate { input, stem_order } => cmd_truncate(load(&input.input)?, *stem_order, cli.seed, f),
        Command::Obstruction { input, stem_order } => cmd_obstruction(load(&input.input)?, *stem_order, cli.seed, f),
        Command::Compare { input, stem_order, max_page } => cmd_compare(load(&input.input)?, *stem_order, *max_page, cli.seed, f),
        Command::Corpus { size, kind, out } => cmd_corpus(*size, *kind, out, cli.seed.unwrap_or(0)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    let (body, code) = match result {
        Ok(out) => {
            let code = if out.mismatch.is_some() { 1 } else { 0 };
            (out.body, code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            return ExitCode::from(e.code());
        }
    };
    match &cli.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, body) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(4);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(code)
}
