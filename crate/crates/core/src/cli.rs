//! The `opgray` command line.
//!
//! Exit status is 0 on success, 1 when a verification fails or an experiment
//! reports a discrepancy, and 2 on usage, input or parse errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::counting::{check_fib_bound, count_del_contract, count_matrix_tree};
use crate::dualtree::{labeling_for_root, labeling_per_block};
use crate::embedgraph::{build_embedding, EmbeddedGraph, GraphFile, MultiGraph};
use crate::flipgraph::{
    arborescence_flip_graph, build_flip_graph, experiment_open_problems, outerplane_order, Budget, Digraph, Experiment,
    Scope,
};
use crate::labeling::EdgeLabeling;
use crate::treegen::{
    parse_listing, verify_gray, write_listing, ClassFilter, Classifier, Generator, LabeledGraph, SpanningTree, TieBreak,
};

#[derive(Debug, Parser)]
#[command(
    name = "opgray",
    version,
    about = "Gray codes for spanning trees of outerplane graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the dual-tree labeling of an outerplane graph.
    Label {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// List all spanning trees with the greedy exchange generator.
    Gen {
        #[command(flatten)]
        graph: GraphArgs,
        /// closest, farthest, random:<seed>, prefer-pivot, prefer-pof, ...
        #[arg(long, default_value = "closest")]
        tiebreak: String,
        /// Class reported in the summary; defaults to the preferred class,
        /// else any.
        #[arg(long)]
        restriction: Option<String>,
        /// "default" or a comma-separated list of edge labels.
        #[arg(long, default_value = "default")]
        initial: String,
    },
    /// Check a listing for genlex order and the Gray-code property.
    Verify {
        /// Listing file as written by `gen`.
        #[arg(long)]
        listing: PathBuf,
        /// Graph the listing belongs to; enables completeness and class
        /// recomputation.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "any")]
        restriction: String,
        /// Accept parallel edges and loops in the graph.
        #[arg(long)]
        multigraph: bool,
    },
    /// Count spanning trees by two independent methods.
    Count {
        #[arg(long)]
        input: PathBuf,
        /// Also check the Fibonacci bound (needs an outerplane embedding).
        #[arg(long)]
        fib: bool,
        #[arg(long)]
        multigraph: bool,
    },
    /// Hamilton searches on restricted flip graphs of small graphs.
    Experiment {
        #[arg(long, value_parser = ["pivot", "paf", "arborescence"])]
        scope: String,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Search steps per Hamilton query before reporting unknown.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Report path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow sizes above the desk-scale defaults (6 vertices, or 5 for
        /// arborescences).
        #[arg(long)]
        long_running: bool,
    },
    /// Export the flip graph of a graph (arborescences for directed input).
    Flip {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "any")]
        restriction: String,
        #[arg(long, value_enum, default_value_t = FlipFormat::Dot)]
        format: FlipFormat,
        /// Root vertex for directed input.
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[arg(long)]
        multigraph: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlipFormat {
    Dot,
    Text,
}

#[derive(Debug, clap::Args)]
pub struct GraphArgs {
    /// Edge-list file with an optional `outer:` line.
    #[arg(long)]
    pub input: PathBuf,
    /// Split-dual leaf used as root, by counterclockwise index.
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    /// Label each block separately for graphs with cut vertices.
    #[arg(long)]
    pub per_block: bool,
    /// Accept parallel edges and loops.
    #[arg(long)]
    pub multigraph: bool,
}

enum Failure {
    Usage(String),
    Verify(String),
}

type CmdResult = Result<(), Failure>;

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string())
}

fn io_err(e: std::io::Error) -> Failure {
    Failure::Usage(format!("i/o error: {e}"))
}

fn read_graph(path: &Path, multigraph: bool) -> Result<GraphFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let file = GraphFile::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if !multigraph {
        let g = &file.graph;
        if g.loops().next().is_some() {
            return Err(usage("input has loops; pass --multigraph"));
        }
        let mut ends: Vec<(usize, usize)> = g.edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        ends.sort_unstable();
        if ends.windows(2).any(|w| w[0] == w[1]) && !file.directed {
            return Err(usage("input has parallel edges; pass --multigraph"));
        }
    }
    Ok(file)
}

fn embed(file: &GraphFile) -> Result<Option<EmbeddedGraph>, Failure> {
    let order = match &file.outer {
        Some(o) => Some(o.clone()),
        None if file.graph.n() <= 8 && file.graph.is_connected() => outerplane_order(&file.graph),
        None => None,
    };
    order
        .map(|o| build_embedding(&file.graph, &o).map_err(|e| usage(format!("embedding: {e}"))))
        .transpose()
}

fn dual_labeling(e: &EmbeddedGraph, args: &GraphArgs) -> Result<(EdgeLabeling, String), Failure> {
    if e.graph().is_two_connected() {
        let (o, l) = labeling_for_root(e, args.root).map_err(usage)?;
        let d = o.split().leaf_dart(o.root());
        let (u, v) = (d.tail(e.graph()), d.head(e.graph()));
        Ok((l, format!("root leaf={} edge=({u},{v}) [id {}]", args.root, d.edge)))
    } else if args.per_block {
        Ok((labeling_per_block(e).map_err(usage)?, "root per-block".into()))
    } else {
        Err(usage("graph is not 2-connected; pass --per-block"))
    }
}

fn parse_class(s: &str) -> Result<ClassFilter, Failure> {
    s.parse().map_err(usage)
}

fn cmd_label(args: &GraphArgs, out: &mut dyn Write) -> CmdResult {
    let file = read_graph(&args.input, args.multigraph)?;
    let e = embed(&file)?.ok_or_else(|| usage("graph is not outerplane or has no outer order"))?;
    let (l, root) = dual_labeling(&e, args)?;
    writeln!(out, "# {root}").map_err(io_err)?;
    for (id, &(u, v)) in e.graph().edges().iter().enumerate() {
        writeln!(out, "edge ({u},{v}) [id {id}] -> label {}", l.label(id)).map_err(io_err)?;
    }
    Ok(())
}

fn parse_initial(spec: &str, lg: &LabeledGraph) -> Result<SpanningTree, Failure> {
    if spec == "default" {
        return SpanningTree::first(lg).ok_or_else(|| usage("graph has no spanning tree"));
    }
    let labels: Vec<usize> = spec
        .split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| usage(format!("bad label {t:?} in --initial"))))
        .collect::<Result<_, _>>()?;
    SpanningTree::from_labels(lg, &labels)
        .ok_or_else(|| usage(format!("labels {labels:?} do not form a spanning tree")))
}

fn cmd_gen(
    args: &GraphArgs,
    tiebreak: &str,
    restriction: Option<&str>,
    initial: &str,
    out: &mut dyn Write,
) -> CmdResult {
    let tiebreak: TieBreak = tiebreak.parse().map_err(usage)?;
    let class = match (restriction, tiebreak) {
        (Some(r), _) => parse_class(r)?,
        (None, TieBreak::Prefer(c)) => c,
        (None, _) => ClassFilter::Any,
    };
    let file = read_graph(&args.input, args.multigraph)?;
    let g = &file.graph;
    let embedding = embed(&file)?;
    let (labeling, note) = match &embedding {
        Some(e) => dual_labeling(e, args)?,
        None => (EdgeLabeling::identity(g.m()), "labeling identity".to_string()),
    };
    if embedding.is_none() && (class.needs_faces() || matches!(tiebreak, TieBreak::Prefer(c) if c.needs_faces())) {
        return Err(usage(format!("class {class} needs an outerplane embedding")));
    }
    let lg = LabeledGraph::new(g, &labeling);
    let initial = parse_initial(initial, &lg)?;
    let mut generator = Generator::new(g, &labeling, tiebreak);
    if let Some(e) = &embedding {
        generator = generator.with_embedding(e);
    }
    let listing = generator.run(&initial).map_err(|e| Failure::Verify(e.to_string()))?;
    writeln!(out, "# {note}").map_err(io_err)?;
    write_listing(out, &listing, class).map_err(io_err)?;
    if !listing.all_steps(class) {
        return Err(Failure::Verify(format!("not every step is {class}")));
    }
    Ok(())
}

fn cmd_verify(
    listing: &Path,
    input: Option<&Path>,
    restriction: &str,
    multigraph: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let class = parse_class(restriction)?;
    let text = fs::read_to_string(listing).map_err(|e| usage(format!("{}: {e}", listing.display())))?;
    let parsed = parse_listing(&text).map_err(|e| usage(format!("{}: {e}", listing.display())))?;
    let listing = parsed.into_listing().map_err(usage)?;
    let graph = match input {
        Some(p) => {
            let file = read_graph(p, multigraph)?;
            if file.graph.m() != listing.labeling.m() {
                return Err(usage(format!(
                    "graph has {} edges, listing has {}",
                    file.graph.m(),
                    listing.labeling.m()
                )));
            }
            let classifier = match embed(&file)? {
                Some(e) => Classifier::from_embedding(&e, &listing.labeling),
                None if class.needs_faces() => {
                    return Err(usage(format!("class {class} needs an outerplane embedding")))
                }
                None => Classifier::from_graph(&file.graph, &listing.labeling),
            };
            Some((file.graph, classifier))
        }
        None => None,
    };
    let report = verify_gray(&listing, class, graph.as_ref().map(|(g, c)| (g, c)), true);
    let yn = |b: bool| if b { "yes" } else { "no" };
    writeln!(
        out,
        "trees={} genlex={} gray={} class={class} complete={}",
        report.trees,
        yn(report.genlex),
        yn(report.passed()),
        if report.completeness_checked {
            yn(report.passed())
        } else {
            "unchecked"
        }
    )
    .map_err(io_err)?;
    match report.violation {
        Some(v) => Err(Failure::Verify(v.to_string())),
        None => Ok(()),
    }
}

fn cmd_count(input: &Path, fib: bool, multigraph: bool, out: &mut dyn Write) -> CmdResult {
    let file = read_graph(input, multigraph)?;
    let g: &MultiGraph = &file.graph;
    let a = count_matrix_tree(g);
    let b = count_del_contract(g);
    writeln!(out, "matrix-tree={a} deletion-contraction={b}").map_err(io_err)?;
    if a != b {
        return Err(Failure::Verify("counts differ".into()));
    }
    if fib {
        let e = embed(&file)?.ok_or_else(|| usage("--fib needs an outerplane graph"))?;
        let report = check_fib_bound(&e);
        writeln!(out, "{report}").map_err(io_err)?;
        if !report.consistent() {
            return Err(Failure::Verify("Fibonacci bound check failed".into()));
        }
    }
    Ok(())
}

fn cmd_experiment(
    scope: &str,
    max_n: usize,
    budget: u64,
    path: Option<&Path>,
    long_running: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let experiment: Experiment = scope.parse().map_err(usage)?;
    let desk = match experiment {
        Experiment::Arborescence => 4,
        _ => 5,
    };
    if max_n > desk && !long_running {
        return Err(usage(format!(
            "--max-n {max_n} exceeds {desk} for {scope}; pass --long-running"
        )));
    }
    let limit = match experiment {
        Experiment::Arborescence => 5,
        _ => 7,
    };
    if max_n > limit {
        return Err(usage(format!("--max-n is limited to {limit} for {scope}")));
    }
    let report = experiment_open_problems(Scope {
        experiment,
        max_n,
        budget: Budget::steps(budget),
    });
    let text = report.to_string();
    match path {
        Some(p) => fs::write(p, &text).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => out.write_all(text.as_bytes()).map_err(io_err)?,
    }
    if report.discrepancies() > 0 {
        return Err(Failure::Verify(format!("{} discrepancies", report.discrepancies())));
    }
    Ok(())
}

fn cmd_flip(
    input: &Path,
    restriction: &str,
    format: FlipFormat,
    root: usize,
    multigraph: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let file = read_graph(input, multigraph)?;
    let fg = if file.directed {
        if root >= file.graph.n() {
            return Err(usage(format!("root {root} out of range")));
        }
        arborescence_flip_graph(&Digraph::new(file.graph.n(), file.graph.edges().to_vec()), root).map_err(usage)?
    } else {
        let class = parse_class(restriction)?;
        let e = embed(&file)?;
        if e.is_none() && class.needs_faces() {
            return Err(usage(format!("restriction {class} needs an outerplane embedding")));
        }
        let labeling = match &e {
            Some(e) if e.graph().is_two_connected() => labeling_for_root(e, 0).map_err(usage)?.1,
            _ => EdgeLabeling::identity(file.graph.m()),
        };
        build_flip_graph(&file.graph, e.as_ref(), &labeling, class).map_err(usage)?
    };
    let text = match format {
        FlipFormat::Dot => fg.to_dot(),
        FlipFormat::Text => fg.to_text(),
    };
    out.write_all(text.as_bytes()).map_err(io_err)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    let result = match &cli.command {
        Command::Label { graph } => cmd_label(graph, out),
        Command::Gen {
            graph,
            tiebreak,
            restriction,
            initial,
        } => cmd_gen(graph, tiebreak, restriction.as_deref(), initial, out),
        Command::Verify {
            listing,
            input,
            restriction,
            multigraph,
        } => cmd_verify(listing, input.as_deref(), restriction, *multigraph, out),
        Command::Count { input, fib, multigraph } => cmd_count(input, *fib, *multigraph, out),
        Command::Experiment {
            scope,
            max_n,
            budget,
            out: path,
            long_running,
        } => cmd_experiment(scope, *max_n, *budget, path.as_deref(), *long_running, out),
        Command::Flip {
            input,
            restriction,
            format,
            root,
            multigraph,
        } => cmd_flip(input, restriction, *format, *root, *multigraph, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
