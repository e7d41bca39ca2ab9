mod check;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fliplab::complexes::{arc_complex, dual_subcomplex, flip_ball, full_flip_graph};
use fliplab::{FlipSubgraph, Model, SimplicialComplex, SurfaceSig, Triangulation};
use serde_json::json;

pub const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(
    name = "fliplab",
    version,
    about = "Build and check flip graphs and arc complexes of small surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complexity of a surface signature and the model realising it.
    SurfaceInfo {
        /// Signature such as `S_{1,1}` or `S_{0,0,(5)}`.
        signature: String,
    },
    /// Write a flip graph or arc complex as DOT or JSON.
    Build {
        object: Object,
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and report JSON lines.
    Check {
        #[arg(value_enum, required_unless_present = "suite_flag")]
        suite: Option<check::Suite>,
        #[arg(long = "suite", value_enum, conflicts_with = "suite")]
        suite_flag: Option<check::Suite>,
        #[command(flatten)]
        target: Target,
        /// Seed for sampled centres on infinite models.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    FlipGraph,
    ArcComplex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(clap::Args)]
pub struct Target {
    /// `polygon:N`, `ppolygon:N` or `torus`.
    #[arg(long, default_value = "polygon:5")]
    model: Model,
    /// Radius of the flip ball around the centre.
    #[arg(long, conflicts_with = "full")]
    radius: Option<usize>,
    /// Use the whole flip graph (finite models only).
    #[arg(long)]
    full: bool,
    /// Centre triangulation, e.g. `[C(0,2),C(0,3)]`; defaults to the base one.
    #[arg(long)]
    center: Option<String>,
}

impl Target {
    pub fn center(&self) -> Result<Triangulation> {
        match &self.center {
            Some(text) => Ok(self.model.parse_triangulation(text)?),
            None => Ok(self.model.base_triangulation()),
        }
    }

    /// The full flip graph, or the ball of the given radius.
    pub fn flip_graph(&self, default_radius: usize) -> Result<FlipSubgraph> {
        if self.full {
            if !self.model.is_finite() {
                bail!(
                    "--full needs a finite model; {} has infinitely many triangulations",
                    self.model
                );
            }
            return Ok(full_flip_graph(&self.model)?);
        }
        let r = self.radius.unwrap_or(default_radius);
        Ok(flip_ball(&self.model, &self.center()?, r)?)
    }
}

fn surface_info(text: &str) -> Result<()> {
    let sig: SurfaceSig = text.parse()?;
    let model = Model::for_surface(&sig).map(|m| m.to_string());
    println!(
        "{}",
        json!({ "signature": sig.to_string(), "complexity": sig.complexity(), "model": model })
    );
    Ok(())
}

fn complex_dot(c: &SimplicialComplex<fliplab::Arc>) -> String {
    let index: Vec<_> = c.vertices().iter().collect();
    let mut out = String::from("graph arcs {\n");
    for (k, v) in index.iter().enumerate() {
        out.push_str(&format!("  {k} [label=\"{v}\"];\n"));
    }
    let mut edges = std::collections::BTreeSet::new();
    for s in c.maximal_simplices() {
        for (x, a) in s.iter().enumerate() {
            for b in &s[x + 1..] {
                let i = index.binary_search(&a).expect("vertex");
                let j = index.binary_search(&b).expect("vertex");
                edges.insert((i.min(j), i.max(j)));
            }
        }
    }
    for (i, j) in edges {
        out.push_str(&format!("  {i} -- {j};\n"));
    }
    out.push_str("}\n");
    out
}

fn build(object: Object, target: &Target, format: Format, out: Option<&PathBuf>) -> Result<()> {
    let (text, mut counts) = match object {
        Object::FlipGraph => {
            let g = target.flip_graph(2)?;
            let text = match format {
                Format::Dot => g.to_dot(),
                Format::Json => format!("{}\n", g.to_json()),
            };
            (
                text,
                json!({ "object": "flip-graph", "vertices": g.vertex_count(), "edges": g.edge_count() }),
            )
        }
        Object::ArcComplex => {
            let c = if target.full && target.model.is_finite() {
                arc_complex(&target.model)?
            } else {
                dual_subcomplex(&target.flip_graph(2)?)?
            };
            let text = match format {
                Format::Dot => complex_dot(&c),
                Format::Json => format!("{}\n", c.to_json()),
            };
            let counts = json!({
                "object": "arc-complex",
                "vertices": c.vertices().len(),
                "maximal_simplices": c.maximal_simplices().len(),
            });
            (text, counts)
        }
    };
    counts["model"] = json!(target.model.to_string());
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            println!("{counts}");
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            eprintln!("{counts}");
        }
    }
    Ok(())
}

fn configure_threads() -> Result<()> {
    if let Ok(value) = std::env::var("FLIPLAB_THREADS") {
        let n: usize = value
            .parse()
            .with_context(|| format!("FLIPLAB_THREADS={value} is not a number"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    configure_threads()?;
    match cli.command {
        Command::SurfaceInfo { signature } => surface_info(&signature).map(|()| true),
        Command::Build {
            object,
            target,
            format,
            out,
        } => build(object, &target, format, out.as_ref()).map(|()| true),
        Command::Check {
            suite,
            suite_flag,
            target,
            seed,
        } => {
            let suite = suite.or(suite_flag).expect("clap requires a suite");
            check::run(suite, &target, seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
