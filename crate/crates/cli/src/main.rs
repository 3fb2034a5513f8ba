use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use krdeg::charge::{charge, semicharge};
use krdeg::crystal::{RectSeq, TensorElement};
use krdeg::deg::{build_graph, descent_set, BuildOptions, KRDegGraph};
use krdeg::symfun::{component_character, conjectured_character, graph_character, SymFunc};
use krdeg::verify::{run_suite, Suite};
use serde_json::json;

mod cache;

use cache::Cache;

/// Kirillov-Reshetikhin dual equivalence graphs on 0-weight spaces.
#[derive(Parser, Debug)]
#[command(name = "krdeg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the graph and write it as text, JSON or DOT.
    Graph(GraphArgs),
    /// List connected components with their sizes and charge residues.
    Components(GraphArgs),
    /// Schur expansions of component characters.
    Character(GraphArgs),
    /// Run a verification suite and print a pass/fail report.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        /// thm-components, thm-commutator, thm-characters, conj-plethysm or props-charge
        #[arg(long)]
        suite: String,
    },
    /// Charge, semicharge, descent set and weight of a tensor element.
    Charge {
        /// JSON file holding the element, `-` for stdin.
        #[arg(long)]
        element: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Comma separated rectangles, each `RxS` with R rows and S columns (or `s^r`).
    #[arg(long)]
    shapes: String,
    /// Restrict to one component (components, character).
    #[arg(long)]
    component: Option<usize>,
    /// Refuse to build graphs predicted to have more vertices than this.
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    limit: u64,
    /// Build even when the vertex guard would refuse.
    #[arg(long)]
    force: bool,
    /// Worker threads for graph construction.
    #[arg(long)]
    jobs: Option<usize>,
    /// Graph cache directory.
    #[arg(long, env = "KRDEG_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

impl OutputArgs {
    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn emit(&self, body: &str) -> anyhow::Result<()> {
        let mut body = body.to_string();
        if !body.ends_with('\n') {
            body.push('\n');
        }
        match &self.out {
            Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
            None => {
                std::io::stdout().write_all(body.as_bytes())?;
                Ok(())
            }
        }
    }
}

fn parse_shapes(s: &str) -> anyhow::Result<RectSeq> {
    let shapes: RectSeq = s.parse()?;
    if !shapes.is_grouped() {
        eprintln!(
            "warning: equal shapes in {} are not contiguous; semicharge results assume the grouped order {}",
            shapes.canonical(),
            shapes.grouped().canonical()
        );
    }
    Ok(shapes)
}

fn load_graph(args: &GraphArgs) -> anyhow::Result<KRDegGraph> {
    let shapes = parse_shapes(&args.shapes)?;
    let cache = args.cache_dir.as_deref().map(Cache::new);
    if let Some(cache) = &cache {
        if let Some(g) = cache.load(&shapes)? {
            return Ok(g);
        }
    }
    let predicted = shapes.predicted_vertex_count();
    if predicted > u128::from(args.limit) && !args.force {
        return Err(krdeg::Error::Resource(format!(
            "{} would have {predicted} vertices, above --limit {}; pass --force to build anyway",
            shapes.canonical(),
            args.limit
        ))
        .into());
    }
    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global().ok();
    }
    let g = build_graph(&shapes, &BuildOptions::default())?;
    if let Some(cache) = &cache {
        cache.save(&g)?;
    }
    Ok(g)
}

fn check_component(g: &KRDegGraph, c: Option<usize>) -> anyhow::Result<()> {
    if let Some(c) = c {
        if c >= g.components().len() {
            bail!(krdeg::Error::Domain(format!("component {c} does not exist; the graph has {}", g.components().len())));
        }
    }
    Ok(())
}

fn residue_of(g: &KRDegGraph, c: usize) -> usize {
    let d = g.shapes().d_r() as u64;
    (g.vertices()[g.components()[c][0]].charge % d) as usize
}

fn cmd_graph(args: &GraphArgs) -> anyhow::Result<()> {
    if args.component.is_some() {
        bail!(krdeg::Error::Parse("--component applies to `components` and `character`".into()));
    }
    let g = load_graph(args)?;
    let body = match args.output.format(Format::Text) {
        Format::Text => g.to_text(),
        Format::Json => g.to_json(),
        Format::Dot => g.to_dot(),
    };
    args.output.emit(&body)
}

fn cmd_components(args: &GraphArgs) -> anyhow::Result<()> {
    let g = load_graph(args)?;
    check_component(&g, args.component)?;
    let d = g.shapes().d_r();
    let chosen: Vec<usize> = match args.component {
        Some(c) => vec![c],
        None => (0..g.components().len()).collect(),
    };
    let body = match args.output.format(Format::Text) {
        Format::Json => {
            let comps: Vec<_> = chosen
                .iter()
                .map(|&c| {
                    json!({
                        "index": c,
                        "size": g.components()[c].len(),
                        "charge_residue": residue_of(&g, c),
                        "vertices": g.components()[c],
                    })
                })
                .collect();
            serde_json::to_string(&json!({"shapes": g.shapes().canonical(), "d_r": d, "components": comps}))?
        }
        Format::Text => {
            let mut s = format!(
                "{}: {} vertices, {} components, d_R = {d}\n",
                g.shapes().canonical(),
                g.vertices().len(),
                g.components().len()
            );
            for &c in &chosen {
                s += &format!("component {c}: {} vertices, charge {} mod {d}\n", g.components()[c].len(), residue_of(&g, c));
                if args.component.is_some() {
                    for &v in &g.components()[c] {
                        let x = &g.vertices()[v];
                        s += &format!("  {v}: {}  D = {}  charge {}\n", x.element, x.descents, x.charge);
                    }
                }
            }
            s
        }
        Format::Dot => bail!(krdeg::Error::Parse("components support text and json".into())),
    };
    args.output.emit(&body)
}

fn cmd_character(args: &GraphArgs) -> anyhow::Result<()> {
    let g = load_graph(args)?;
    check_component(&g, args.component)?;
    let d = g.shapes().d_r();
    let chosen: Vec<usize> = match args.component {
        Some(c) => vec![c],
        None => (0..g.components().len()).collect(),
    };
    let mut rows = Vec::new();
    for &c in &chosen {
        let residue = residue_of(&g, c);
        let got = component_character(&g, c)?;
        let predicted = conjectured_character(g.shapes(), residue).ok();
        rows.push((c, residue, got, predicted));
    }
    let total: Option<SymFunc> = if args.component.is_none() { Some(graph_character(&g)?) } else { None };
    let body = match args.output.format(Format::Text) {
        Format::Json => {
            let comps: Vec<_> = rows
                .iter()
                .map(|(c, r, got, pred)| {
                    json!({
                        "index": c,
                        "charge_residue": r,
                        "character": got,
                        "conjectured": pred,
                        "matches_conjecture": pred.as_ref().map(|p| p == got),
                    })
                })
                .collect();
            serde_json::to_string(&json!({"shapes": g.shapes().canonical(), "components": comps, "total": total}))?
        }
        Format::Text => {
            let mut s = String::new();
            for (c, r, got, pred) in &rows {
                let verdict = match pred {
                    Some(p) if p == got => "matches the cyclic plethysm",
                    Some(_) => "differs from the cyclic plethysm",
                    None => "cyclic plethysm not computed",
                };
                s += &format!("component {c} (charge {r} mod {d}, {verdict}): {got}\n");
            }
            if let Some(t) = &total {
                s += &format!("total: {t}\n");
            }
            s
        }
        Format::Dot => bail!(krdeg::Error::Parse("characters support text and json".into())),
    };
    args.output.emit(&body)
}

fn cmd_verify(args: &GraphArgs, suite: &str) -> anyhow::Result<bool> {
    let suite: Suite = suite.parse()?;
    let g = load_graph(args)?;
    let report = run_suite(suite, &g);
    let body = match args.output.format(Format::Json) {
        Format::Json => serde_json::to_string_pretty(&report)?,
        Format::Text => report.to_string(),
        Format::Dot => bail!(krdeg::Error::Parse("reports support text and json".into())),
    };
    args.output.emit(&body)?;
    Ok(report.passed)
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        Ok(std::io::read_to_string(std::io::stdin())?)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn cmd_charge(element: &Path, output: &OutputArgs) -> anyhow::Result<()> {
    let text = read_input(element)?;
    let t: TensorElement = serde_json::from_str(&text).map_err(|e| krdeg::Error::Invalid(e.to_string()))?;
    let c = charge(&t)?;
    let s = semicharge(&t);
    let descents = descent_set(&t).ok();
    let weight = t.weight();
    let body = match output.format(Format::Text) {
        Format::Json => serde_json::to_string(&json!({
            "charge": c,
            "semicharge": s,
            "descents": descents,
            "weight": weight,
        }))?,
        Format::Text => {
            let d = descents.map_or_else(|| "undefined (not a standard filling)".to_string(), |d| d.to_string());
            let w: Vec<String> = weight.iter().map(ToString::to_string).collect();
            format!("charge: {c}\nsemicharge: {s}\ndescents: {d}\nweight: ({})\n", w.join(","))
        }
        Format::Dot => bail!(krdeg::Error::Parse("charge supports text and json".into())),
    };
    output.emit(&body)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<krdeg::Error>() {
        Some(krdeg::Error::Parse(_) | krdeg::Error::Domain(_)) => 2,
        Some(krdeg::Error::Resource(_)) => 3,
        Some(krdeg::Error::Invalid(_) | krdeg::Error::Shape(_)) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Graph(a) => cmd_graph(a).map(|_| true),
        Command::Components(a) => cmd_components(a).map(|_| true),
        Command::Character(a) => cmd_character(a).map(|_| true),
        Command::Verify { graph, suite } => cmd_verify(graph, suite),
        Command::Charge { element, output } => cmd_charge(element, output).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("krdeg: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
