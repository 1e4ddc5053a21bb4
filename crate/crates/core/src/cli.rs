//! The `hoffman` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::canon::{canonical_form, canonical_graph, slim_fixing_automorphisms};
use crate::enumerate::{enumerate_sums, find_covers, slim_line_graphs};
use crate::error::Error;
use crate::family::{bar_closure, family_prefix, lower_bound, Catalog, FamilySpec};
use crate::graph::{HoffmanGraph, SlimGraph};
use crate::io::{read_graph6, read_hgf, write_graph6, write_hgf};
use crate::sum::{decompose, tilde};
use crate::verify::{search_nh, verify_order, Verdict, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

#[derive(Parser, Debug)]
#[command(name = "hoffman", version, about = "Hoffman graph sums, covers and uniqueness certificates")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Comma-separated catalog names (h1,h2,h3,h5,h5p), HGF files or
    /// directories of HGF files.
    #[arg(long, required = true)]
    family: String,
    /// Use the family as given instead of its closure.
    #[arg(long)]
    no_closure: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a graph is a valid Hoffman graph.
    Validate { input: Option<PathBuf> },
    /// Print the unique indecomposable decomposition.
    Decompose { input: Option<PathBuf> },
    /// Replace every h1 addend by h2.
    Tilde { input: Option<PathBuf> },
    /// Print the closure of a family.
    Closure {
        #[arg(long, required = true)]
        family: String,
    },
    /// Print the first m + 1 members of the ordered closure.
    Prefix {
        #[arg(long, required = true)]
        family: String,
        #[arg(long)]
        order: usize,
    },
    /// Print the lower bound on N_H.
    LowerBound {
        #[arg(long, required = true)]
        family: String,
    },
    /// Enumerate sums with connected slim subgraph.
    EnumSums {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        order: usize,
        /// Write one HGF file per member and a manifest here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate connected slim line graphs.
    EnumLine {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the strict covers of a labeled graph up to equivalence.
    Covers {
        #[command(flatten)]
        family: FamilyArgs,
        /// Graph in graph6 or HGF (slim only).
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the uniqueness certificate at one order.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        order: usize,
    },
    /// Search for N_H up to a maximum order.
    SearchNh {
        #[arg(long, required = true)]
        family: String,
        #[arg(long)]
        max: usize,
    },
    /// Print the canonical certificate and representative.
    Canon { input: Option<PathBuf> },
    /// Print the automorphism group.
    Aut { input: Option<PathBuf> },
}

enum Failure {
    Usage(String),
    Io(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

struct Ctx<'a> {
    format: Format,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, text: &str, value: serde_json::Value) -> Result<(), Failure> {
        let s = match self.format {
            Format::Text => text.to_string(),
            Format::Json => serde_json::to_string_pretty(&value).expect("json values serialize") + "\n",
        };
        self.out
            .write_all(s.as_bytes())
            .map_err(|e| Failure::Io(format!("stdout: {e}")))
    }

    fn note(&mut self, msg: &str) {
        let _ = writeln!(self.err, "{msg}");
    }
}

fn read_text(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p).map_err(|e| io_err(p, e)),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

/// HGF when the first meaningful line is a comment or problem line,
/// graph6 otherwise.
fn parse_graph(text: &str) -> Result<HoffmanGraph, Error> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    if first.starts_with("c ") || first == "c" || first.starts_with("p ") {
        read_hgf(text)
    } else {
        Ok(read_graph6(first)?.into_hoffman())
    }
}

fn read_graph(path: Option<&Path>) -> Result<HoffmanGraph, Failure> {
    Ok(parse_graph(&read_text(path)?)?)
}

fn read_slim(path: Option<&Path>) -> Result<SlimGraph, Failure> {
    let g = read_graph(path)?;
    SlimGraph::try_from(g).map_err(Failure::Domain)
}

fn hgf_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| io_err(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "hgf"))
        .collect();
    files.sort();
    Ok(files)
}

fn parse_family(spec: &str) -> Result<FamilySpec, Failure> {
    let mut members = Vec::new();
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Ok(c) = token.parse::<Catalog>() {
            members.push(c.graph());
            continue;
        }
        let path = Path::new(token);
        if path.is_dir() {
            for f in hgf_files(path)? {
                let text = std::fs::read_to_string(&f).map_err(|e| io_err(&f, e))?;
                members.push(read_hgf(&text)?);
            }
        } else if path.is_file() {
            let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
            members.push(read_hgf(&text)?);
        } else {
            return Err(Failure::Usage(format!(
                "`{token}` is neither a catalog name (h1, h2, h3, h5, h5p) nor an HGF file or directory"
            )));
        }
    }
    if members.is_empty() {
        return Err(Failure::Usage("empty family".into()));
    }
    Ok(FamilySpec::new(members)?)
}

fn resolve_family(ctx: &mut Ctx<'_>, args: &FamilyArgs) -> Result<FamilySpec, Failure> {
    let f = parse_family(&args.family)?;
    if args.no_closure {
        return Ok(f);
    }
    let c = bar_closure(&f)?;
    if c != f {
        ctx.note(&format!("note: using the closure {c} of {f}"));
    }
    Ok(c)
}

fn write_members<'g>(
    dir: &Path,
    items: impl Iterator<Item = (String, &'g HoffmanGraph)>,
    manifest: serde_json::Value,
) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    for (hex, g) in items {
        let p = dir.join(format!("{hex}.hgf"));
        std::fs::write(&p, write_hgf(g)).map_err(|e| io_err(&p, e))?;
    }
    let p = dir.join("manifest.json");
    let text = serde_json::to_string_pretty(&manifest).expect("json values serialize") + "\n";
    std::fs::write(&p, text).map_err(|e| io_err(&p, e))
}

fn catalog_name(g: &HoffmanGraph) -> String {
    Catalog::identify(g).map_or_else(|| "-".to_string(), |c| c.name().to_string())
}

fn family_lines(f: &FamilySpec) -> String {
    let mut s = String::new();
    for (name, cert) in f.names().iter().zip(f.certificates()) {
        let _ = writeln!(s, "{name} {}", hex::encode(cert));
    }
    s
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "family: {}", r.family);
    let _ = writeln!(s, "order: {}", r.order);
    let _ = writeln!(s, "|X| = {}", r.x_count);
    let _ = writeln!(s, "|Y| = {}", r.y_count);
    let _ = writeln!(s, "aut* violations: {}", r.aut_star_violations.len());
    for c in &r.aut_star_violations {
        let _ = writeln!(s, "  {c}");
    }
    let _ = writeln!(s, "aut mismatches: {}", r.aut_mismatches.len());
    for m in &r.aut_mismatches {
        let _ = writeln!(s, "  {} |Aut| = {} vs {}", m.cover, m.cover_aut, m.slim_aut);
    }
    let _ = writeln!(s, "verdict: {}", r.verdict);
    s
}

fn run_command(ctx: &mut Ctx<'_>, command: Command) -> Result<i32, Failure> {
    match command {
        Command::Validate { input } => {
            let g = read_graph(input.as_deref())?;
            let text = format!(
                "valid: {} slim, {} fat, {} edges{}\n",
                g.slim_count(),
                g.fat_count(),
                g.edge_count(),
                if g.is_fat_graph() { ", fat graph" } else { "" }
            );
            ctx.emit(
                &text,
                json!({"valid": true, "slim": g.slim_count(), "fat": g.fat_count(),
                       "edges": g.edge_count(), "fat_graph": g.is_fat_graph()}),
            )?;
        }
        Command::Decompose { input } => {
            let g = read_graph(input.as_deref())?;
            let d = decompose(&g)?;
            let mut text = format!("addends: {}\n", d.len());
            let mut items = Vec::new();
            for (i, part) in d.parts().iter().enumerate() {
                let a = d.addend(i).graph;
                let name = catalog_name(&a);
                let slims: Vec<String> = part.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(text, "a {}  {name}", slims.join(" "));
                items.push(json!({"slims": part, "catalog": name, "hgf": write_hgf(&a)}));
            }
            ctx.emit(&text, json!({ "addends": items }))?;
        }
        Command::Tilde { input } => {
            let t = tilde(&read_graph(input.as_deref())?)?;
            ctx.emit(&write_hgf(&t), json!({ "hgf": write_hgf(&t) }))?;
        }
        Command::Closure { family } => {
            let c = bar_closure(&parse_family(&family)?)?;
            ctx.emit(&family_lines(&c), serde_json::to_value(&c).unwrap())?;
        }
        Command::Prefix { family, order } => {
            let p = family_prefix(&parse_family(&family)?, order)?;
            ctx.emit(&family_lines(&p), serde_json::to_value(&p).unwrap())?;
        }
        Command::LowerBound { family } => {
            let b = lower_bound(&parse_family(&family)?)?;
            ctx.emit(&format!("{b}\n"), json!({ "lower_bound": b }))?;
        }
        Command::EnumSums { family, order, out } => {
            let f = resolve_family(ctx, &family)?;
            let start = Instant::now();
            let x = enumerate_sums(&f, order)?;
            ctx.note(&format!("wall time: {:.3}s", start.elapsed().as_secs_f64()));
            let certs: Vec<String> = x.members.iter().map(|m| m.form.hex()).collect();
            let manifest = json!({"family": f, "order": order, "count": x.len(), "certificates": certs});
            if let Some(dir) = out {
                write_members(&dir, x.members.iter().map(|m| (m.form.hex(), &m.graph)), manifest.clone())?;
            }
            let mut text = format!("family {f} order {order}: {} sums\n", x.len());
            for c in &certs {
                let _ = writeln!(text, "{c}");
            }
            ctx.emit(&text, manifest)?;
        }
        Command::EnumLine { family, order, out } => {
            let f = resolve_family(ctx, &family)?;
            let start = Instant::now();
            let y = slim_line_graphs(&enumerate_sums(&f, order)?)?;
            ctx.note(&format!("wall time: {:.3}s", start.elapsed().as_secs_f64()));
            let lines: Vec<(String, String)> = y
                .members
                .iter()
                .map(|m| (m.form.hex(), write_graph6(&m.graph)))
                .collect();
            let manifest = json!({
                "family": f, "order": order, "count": y.len(),
                "members": lines.iter().map(|(c, g)| json!({"certificate": c, "graph6": g})).collect::<Vec<_>>(),
            });
            if let Some(dir) = out {
                write_members(&dir, y.members.iter().map(|m| (m.form.hex(), m.graph.as_hoffman())), manifest.clone())?;
            }
            let mut text = format!("family {f} order {order}: {} slim line graphs\n", y.len());
            for (_, g) in &lines {
                let _ = writeln!(text, "{g}");
            }
            ctx.emit(&text, manifest)?;
        }
        Command::Covers { family, graph, out } => {
            let f = resolve_family(ctx, &family)?;
            let g = read_slim(graph.as_deref())?;
            let covers = find_covers(&g, &f)?;
            let certs: Vec<String> = covers.iter().map(|c| canonical_form(c).hex()).collect();
            let manifest = json!({
                "graph6": write_graph6(&g), "classes": covers.len(),
                "covers": covers.iter().map(write_hgf).collect::<Vec<_>>(),
            });
            if let Some(dir) = out {
                write_members(
                    &dir,
                    covers.iter().enumerate().map(|(i, c)| (format!("{i}-{}", certs[i]), c)),
                    manifest.clone(),
                )?;
            }
            let mut text = format!("{} equivalence classes\n", covers.len());
            for (i, c) in covers.iter().enumerate() {
                let _ = write!(text, "cover {i}\n{}", write_hgf(c));
            }
            ctx.emit(&text, manifest)?;
        }
        Command::Verify { family, order } => {
            let f = resolve_family(ctx, &family)?;
            let start = Instant::now();
            let r = verify_order(&f, order)?;
            let secs = start.elapsed().as_secs_f64();
            ctx.note(&format!("wall time: {secs:.3}s"));
            let mut doc = serde_json::to_value(&r).unwrap();
            doc["wall_time_seconds"] = json!(secs);
            ctx.emit(&report_text(&r), doc)?;
            return Ok(match r.verdict {
                Verdict::UniqueCovers => EXIT_OK,
                Verdict::Inconclusive => EXIT_INCONCLUSIVE,
            });
        }
        Command::SearchNh { family, max } => {
            let f = parse_family(&family)?;
            let start = Instant::now();
            let s = search_nh(&f, max)?;
            let secs = start.elapsed().as_secs_f64();
            ctx.note(&format!("wall time: {secs:.3}s"));
            let mut text = format!("family: {}\nlower bound: {}\n", s.family, s.lower_bound);
            for e in &s.evidence {
                let _ = write!(text, "order {}:", e.order);
                if e.below_bound {
                    text.push_str(" below the lower bound;");
                }
                if let Some(r) = &e.report {
                    let _ = write!(text, " |X| = {}, |Y| = {}, {};", r.x_count, r.y_count, r.verdict);
                }
                match &e.witness {
                    Some(w) => {
                        let _ = write!(text, " witness {} with {} covers", write_graph6(&w.graph), w.cover_classes.len());
                    }
                    None => text.push_str(" no witness"),
                }
                text.push('\n');
            }
            match s.n_h {
                Some(n) => {
                    let _ = writeln!(text, "N_H = {n}{}", if s.exact { "" } else { " (upper bound)" });
                }
                None => {
                    let _ = writeln!(text, "N_H = NOT_FOUND (max {max})");
                }
            }
            let mut doc = serde_json::to_value(&s).unwrap();
            doc["wall_time_seconds"] = json!(secs);
            ctx.emit(&text, doc)?;
            return Ok(if s.n_h.is_some() { EXIT_OK } else { EXIT_INCONCLUSIVE });
        }
        Command::Canon { input } => {
            let g = read_graph(input.as_deref())?;
            let (c, form) = canonical_graph(&g);
            let text = format!("{}\n{}", form.hex(), write_hgf(&c));
            ctx.emit(
                &text,
                json!({"certificate": form.hex(), "relabeling": form.relabeling().images(), "hgf": write_hgf(&c)}),
            )?;
        }
        Command::Aut { input } => {
            let g = read_graph(input.as_deref())?;
            let grp = crate::canon::automorphism_group(&g);
            let star = slim_fixing_automorphisms(&g);
            let mut text = format!("order: {}\naut* order: {}\ngenerators: {}\n", grp.order(), star.order(), grp.generators().len());
            for p in grp.generators() {
                let _ = writeln!(text, "{p}");
            }
            let gens: Vec<String> = grp.generators().iter().map(|p| p.to_string()).collect();
            ctx.emit(
                &text,
                json!({"order": grp.order().to_string(), "aut_star_order": star.order().to_string(), "generators": gens}),
            )?;
        }
    }
    Ok(EXIT_OK)
}

/// Runs the command line, returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            let _ = writeln!(err, "error: --jobs must be positive");
            return EXIT_USAGE;
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut ctx = Ctx {
        format: cli.format,
        out,
        err,
    };
    match run_command(&mut ctx, cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            ctx.note(&format!("error: {m}"));
            EXIT_USAGE
        }
        Err(Failure::Io(m)) => {
            ctx.note(&format!("error: {m}"));
            EXIT_IO
        }
        Err(Failure::Domain(e)) => {
            ctx.note(&format!("error: {}: {e}", e.name()));
            EXIT_ERROR
        }
    }
}
