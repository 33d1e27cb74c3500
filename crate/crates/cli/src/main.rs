use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use convergecast::experiment::{run_experiment, Algorithm, ExperimentConfig, Family, Sweep};
use convergecast::format::{
    parse_annotations, parse_instance, parse_trace, write_annotations, write_instance, write_plan,
    write_trace,
};
use convergecast::generate::{
    gen_gadget, gen_grid, gen_line, gen_random_connected, gen_random_tree, gen_setcover,
    gen_setpartition, GadgetSpec, PartitionShape, SetCoverSpec, SetPartitionSpec,
};
use convergecast::oracle::{solve_exact, OracleLimits};
use convergecast::routing::{
    check_elementary_property, check_shortest_path_property, run_basic, run_gadget_opt, run_spt,
    run_sptg, validate_trace,
};
use convergecast::{build_spt, BoundReport, Instance, ParentPolicy, RawBounds};

#[derive(Parser)]
#[command(name = "convergecast", version, about = "Convergecast routing workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file
    Gen(GenArgs),
    /// Route an instance and write the hop trace
    Route(RouteArgs),
    /// Print lower bounds for an instance
    Bounds(BoundsArgs),
    /// Solve a small instance exactly
    Oracle(OracleArgs),
    /// Replay a trace against an instance
    Verify(VerifyArgs),
    /// Run a parameter sweep and write CSV
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    Line,
    Grid,
    Tree,
    Random,
    Gadget,
    Setcover,
    Setpartition,
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    Line,
    NeckTree,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: GenFamily,
    /// Sensors (non-sink vertices) for line, tree and random
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    k: u32,
    #[arg(long, default_value_t = 4)]
    rows: usize,
    #[arg(long, default_value_t = 4)]
    cols: usize,
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    ell: usize,
    /// Set-cover universe size
    #[arg(long, default_value_t = 0)]
    elements: usize,
    /// Set-cover subsets, e.g. "0,1;1"
    #[arg(long, default_value = "")]
    sets: String,
    /// Set-partition reading sizes, e.g. "1,2,3"
    #[arg(long, default_value = "")]
    items: String,
    #[arg(long, value_enum, default_value_t = Shape::NeckTree)]
    shape: Shape,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Gadget annotation sidecar; defaults to <out>.ann
    #[arg(long)]
    annotations: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Spt,
    Sptg,
    Basic,
    GadgetOpt,
}

#[derive(Args)]
struct RouteArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Spt)]
    algo: Algo,
    /// min-id, max-id, random:<seed>, round-robin, prefer:<v,...>
    #[arg(long, default_value = "min-id")]
    policy: ParentPolicy,
    /// Shuffle BASIC's depth-first neighbour order with this seed
    #[arg(long)]
    seed: Option<u64>,
    /// Gadget annotation file (gadget-opt only)
    #[arg(long)]
    annotations: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
}

#[derive(Args)]
struct BoundsArgs {
    instance: PathBuf,
    /// Unrounded values
    #[arg(long)]
    raw: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    instance: PathBuf,
    #[arg(long, env = "CONVERGECAST_MAX_ORACLE_VERTICES", default_value_t = 12)]
    max_vertices: usize,
    #[arg(long, default_value_t = 10_000)]
    max_paths: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    trace: PathBuf,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, default_value = "random")]
    family: Family,
    #[arg(long)]
    sweep: Option<Sweep>,
    /// Comma-separated sweep values
    #[arg(long, value_delimiter = ',')]
    values: Option<Vec<f64>>,
    #[arg(long)]
    trials: Option<usize>,
    /// Base seed; trial t uses seed + t
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    density: Option<f64>,
    #[arg(long)]
    k: Option<u32>,
    /// Comma-separated: spt, spt:<policy>, spt:prefer-spc, sptg, basic, gadget-opt.
    /// The first two also give the algorithm_ratio column.
    #[arg(long, value_delimiter = ',')]
    algos: Option<Vec<Algorithm>>,
    #[arg(long)]
    no_bounds: bool,
    #[arg(long)]
    oracle: bool,
    #[arg(long, env = "CONVERGECAST_MAX_ORACLE_VERTICES", default_value_t = 12)]
    max_vertices: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Per-trial rows; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-point means
    #[arg(long)]
    summary: Option<PathBuf>,
    /// gnuplot script for the summary (needs --summary)
    #[arg(long)]
    gnuplot: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn csv_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|e| anyhow::anyhow!("bad {what} {t:?}: {e}")))
        .collect()
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let mut spec = None;
    let inst = match args.family {
        GenFamily::Line => gen_line(args.n, args.k)?,
        GenFamily::Grid => gen_grid(args.rows, args.cols, args.k)?,
        GenFamily::Tree => gen_random_tree(args.n, args.k, args.seed)?,
        GenFamily::Random => gen_random_connected(args.n, args.density, args.k, args.seed)?,
        GenFamily::Gadget => {
            let (inst, s) = gen_gadget(args.ell)?;
            spec = Some(s);
            inst
        }
        GenFamily::Setcover => {
            let subsets = args
                .sets
                .split(';')
                .map(|s| csv_list(s, "element"))
                .collect::<Result<Vec<Vec<usize>>>>()?;
            gen_setcover(&SetCoverSpec::new(args.elements, subsets))?
        }
        GenFamily::Setpartition => gen_setpartition(&SetPartitionSpec {
            elements: csv_list(&args.items, "item")?,
            capacity: args.k,
            shape: match args.shape {
                Shape::Line => PartitionShape::Line,
                Shape::NeckTree => PartitionShape::NeckTree,
            },
        })?,
    };
    emit(args.out.as_deref(), &write_instance(&inst))?;
    if let Some(spec) = spec {
        let sidecar = args.annotations.or_else(|| {
            args.out.as_ref().map(|p| {
                let mut s = p.clone().into_os_string();
                s.push(".ann");
                PathBuf::from(s)
            })
        });
        match sidecar {
            Some(path) => emit(Some(&path), &write_annotations(&spec.annotations()))?,
            None => eprintln!("note: no --out or --annotations; gadget annotations not written"),
        }
    }
    Ok(())
}

fn gadget_spec(annotations: Option<&Path>) -> Result<GadgetSpec> {
    let path = annotations.context("gadget-opt needs --annotations")?;
    let notes = parse_annotations(&read(path)?)?;
    let ell = GadgetSpec::ell_from_annotations(&notes);
    let (_, spec) = gen_gadget(ell)?;
    if spec.annotations() != notes {
        bail!("annotations in {} do not describe a gadget instance", path.display());
    }
    Ok(spec)
}

fn cmd_route(args: RouteArgs) -> Result<()> {
    let inst = load_instance(&args.instance)?;
    let trace = match args.algo {
        Algo::Spt => run_spt(&inst, &build_spt(&inst, &args.policy))?,
        Algo::Sptg => run_sptg(&inst)?,
        Algo::Basic => run_basic(&inst, args.seed),
        Algo::GadgetOpt => run_gadget_opt(&inst, &gadget_spec(args.annotations.as_deref())?)?,
    };
    let m = validate_trace(&inst, &trace)?;
    eprintln!(
        "total {} full {} partial {}",
        m.total_hops, m.full_hops, m.partial_hops
    );
    emit(args.out.as_deref(), &write_trace(&trace))
}

fn cmd_bounds(args: BoundsArgs) -> Result<()> {
    let inst = load_instance(&args.instance)?;
    let Format::Csv = args.format;
    let text = if args.raw {
        format!("{}\n{}\n", BoundReport::CSV_HEADER, RawBounds::compute(&inst).csv_row())
    } else {
        format!("{}\n{}\n", BoundReport::CSV_HEADER, BoundReport::compute(&inst).csv_row())
    };
    emit(args.out.as_deref(), &text)
}

fn cmd_oracle(args: OracleArgs) -> Result<()> {
    let inst = load_instance(&args.instance)?;
    let limits = OracleLimits {
        max_vertices: args.max_vertices,
        max_paths_per_vertex: args.max_paths,
    };
    let sol = solve_exact(&inst, limits).context("oracle refused the instance")?;
    emit(args.out.as_deref(), &write_plan(Some(sol.optimum), &sol.plan))
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let inst = load_instance(&args.instance)?;
    let trace = parse_trace(&read(&args.trace)?)?;
    match validate_trace(&inst, &trace) {
        Ok(m) => {
            println!("valid");
            println!("total_hops {}", m.total_hops);
            println!("full_hops {}", m.full_hops);
            println!("partial_hops {}", m.partial_hops);
            println!("reading_distance_sum {}", m.reading_distance_sum);
            println!("shortest_path {}", check_shortest_path_property(&inst, &trace));
            println!("elementary {}", check_elementary_property(&inst, &trace));
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            println!("invalid: {e}");
            println!("error {e:?}");
            Ok(ExitCode::FAILURE)
        }
    }
}

fn cmd_experiment(args: ExperimentArgs) -> Result<()> {
    let mut cfg = match args.family {
        Family::Grid => ExperimentConfig::default_grid(),
        Family::Gadget => ExperimentConfig::default_gadget(),
        Family::Random => ExperimentConfig::default_random(),
        Family::Tree => ExperimentConfig {
            family: Family::Tree,
            ..ExperimentConfig::default_random()
        },
    };
    if let Some(s) = args.sweep {
        cfg.sweep = s;
    }
    if let Some(v) = args.values {
        cfg.values = v;
    }
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    if let Some(s) = args.seed {
        cfg.base_seed = s;
    }
    if let Some(s) = args.size {
        cfg.size = s;
    }
    if let Some(d) = args.density {
        cfg.density = d;
    }
    if let Some(k) = args.k {
        cfg.k = k;
    }
    if let Some(a) = args.algos {
        cfg.algorithms = a;
    }
    cfg.bounds = !args.no_bounds;
    cfg.oracle = args.oracle;
    cfg.oracle_limits.max_vertices = args.max_vertices;
    let Format::Csv = args.format;

    let res = run_experiment(&cfg)?;
    emit(args.out.as_deref(), &res.rows_csv())?;
    if let Some(path) = &args.summary {
        emit(Some(path), &res.summary_csv())?;
        if let Some(gp) = &args.gnuplot {
            let png = gp.with_extension("png");
            let script = res.gnuplot_script(&path.display().to_string(), &png.display().to_string());
            emit(Some(gp), &script)?;
        }
    } else if args.gnuplot.is_some() {
        bail!("--gnuplot needs --summary");
    } else {
        eprint!("{}", res.summary_csv());
    }
    Ok(())
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen(a) => cmd_gen(a)?,
        Command::Route(a) => cmd_route(a)?,
        Command::Bounds(a) => cmd_bounds(a)?,
        Command::Oracle(a) => cmd_oracle(a)?,
        Command::Verify(a) => return cmd_verify(a),
        Command::Experiment(a) => cmd_experiment(a)?,
    }
    Ok(ExitCode::SUCCESS)
}
