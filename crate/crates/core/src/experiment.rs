//! Parameter sweeps over generated instances, written as CSV.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::bounds::BoundReport;
use crate::error::{InstanceError, OracleError};
use crate::generate::{gen_gadget, gen_grid, gen_random_connected, gen_random_tree, GadgetSpec};
use crate::graph::Instance;
use crate::oracle::{solve_exact, OracleLimits};
use crate::routing::{run_basic, run_gadget_opt, run_spt, run_sptg, validate_trace, Metrics};
use crate::spt::{build_spt, ParentPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Random,
    Grid,
    Tree,
    Gadget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    Size,
    Density,
    K,
    Ell,
}

/// Parent choice for `spt`; `PreferSpc` resolves to the corridor vertices
/// of a gadget instance and to min-id elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolicyChoice {
    Fixed(ParentPolicy),
    PreferSpc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algorithm {
    Spt(PolicyChoice),
    Sptg,
    Basic,
    GadgetOpt,
}

impl Algorithm {
    /// CSV column prefix.
    pub fn label(&self) -> String {
        match self {
            Algorithm::Spt(PolicyChoice::Fixed(ParentPolicy::MinId)) => "spt".into(),
            Algorithm::Spt(PolicyChoice::PreferSpc) => "spt_prefer_spc".into(),
            Algorithm::Spt(PolicyChoice::Fixed(p)) => format!("spt_{p}")
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
                .collect(),
            Algorithm::Sptg => "sptg".into(),
            Algorithm::Basic => "basic".into(),
            Algorithm::GadgetOpt => "gadget_opt".into(),
        }
    }
}

macro_rules! keyword_enum {
    ($ty:ident { $($text:literal => $variant:ident),* $(,)? }) => {
        impl FromStr for $ty {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($text => Ok($ty::$variant),)*
                    _ => Err(format!("unknown {} {s:?}", stringify!($ty).to_lowercase())),
                }
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($ty::$variant => $text,)* })
            }
        }
    };
}

keyword_enum!(Family { "random" => Random, "grid" => Grid, "tree" => Tree, "gadget" => Gadget });
keyword_enum!(Sweep { "size" => Size, "density" => Density, "k" => K, "ell" => Ell });

impl FromStr for Algorithm {
    type Err = String;

    /// `spt`, `spt:<policy>`, `spt:prefer-spc`, `sptg`, `basic`, `gadget-opt`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "spt" => Ok(Algorithm::Spt(PolicyChoice::Fixed(ParentPolicy::MinId))),
            "sptg" => Ok(Algorithm::Sptg),
            "basic" => Ok(Algorithm::Basic),
            "gadget-opt" => Ok(Algorithm::GadgetOpt),
            "spt:prefer-spc" => Ok(Algorithm::Spt(PolicyChoice::PreferSpc)),
            _ => match s.strip_prefix("spt:") {
                Some(p) => Ok(Algorithm::Spt(PolicyChoice::Fixed(p.parse()?))),
                None => Err(format!("unknown algorithm {s:?}")),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub family: Family,
    pub sweep: Sweep,
    pub values: Vec<f64>,
    pub trials: usize,
    pub base_seed: u64,
    /// Non-sink vertices (random, tree) or side length (grid) when not swept.
    pub size: usize,
    pub density: f64,
    pub k: u32,
    pub ell: usize,
    pub algorithms: Vec<Algorithm>,
    pub bounds: bool,
    /// Exact optimum per trial; skipped on instances beyond `oracle_limits`.
    pub oracle: bool,
    pub oracle_limits: OracleLimits,
}

impl ExperimentConfig {
    /// Random connected graphs with 10, 20 and 40 sensors, density 0.3,
    /// k = 4, 20 trials per point, SPT against BASIC.
    pub fn default_random() -> Self {
        Self {
            family: Family::Random,
            sweep: Sweep::Size,
            values: vec![10.0, 20.0, 40.0],
            trials: 20,
            base_seed: 1,
            size: 20,
            density: 0.3,
            k: 4,
            ell: 2,
            algorithms: vec![Algorithm::Spt(PolicyChoice::Fixed(ParentPolicy::MinId)), Algorithm::Basic],
            bounds: true,
            oracle: false,
            oracle_limits: OracleLimits::default(),
        }
    }

    pub fn default_grid() -> Self {
        Self {
            family: Family::Grid,
            values: vec![8.0, 16.0, 32.0],
            trials: 1,
            algorithms: vec![Algorithm::Sptg, Algorithm::Basic],
            ..Self::default_random()
        }
    }

    pub fn default_gadget() -> Self {
        Self {
            family: Family::Gadget,
            sweep: Sweep::Ell,
            values: vec![2.0, 3.0, 4.0],
            trials: 1,
            algorithms: vec![Algorithm::Spt(PolicyChoice::PreferSpc), Algorithm::GadgetOpt],
            ..Self::default_random()
        }
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        let bad = |m: &str| Err(InstanceError::InvalidParameter(m.into()));
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.values.is_empty() {
            return bad("no sweep values");
        }
        if self.algorithms.is_empty() {
            return bad("no algorithms");
        }
        let fits = match self.sweep {
            Sweep::Size => self.family != Family::Gadget,
            Sweep::Density => self.family == Family::Random,
            Sweep::K => self.family != Family::Gadget,
            Sweep::Ell => self.family == Family::Gadget,
        };
        if !fits {
            return Err(InstanceError::InvalidParameter(format!(
                "cannot sweep {} over the {} family",
                self.sweep, self.family
            )));
        }
        for &v in &self.values {
            let integral = v >= 0.0 && v.fract() == 0.0;
            if self.sweep != Sweep::Density && !integral {
                return Err(InstanceError::InvalidParameter(format!(
                    "{} values must be non-negative integers, got {v}",
                    self.sweep
                )));
            }
        }
        Ok(())
    }

    fn instance(&self, value: f64, seed: u64) -> Result<(Instance, Option<GadgetSpec>), InstanceError> {
        let (mut size, mut density, mut k, mut ell) = (self.size, self.density, self.k, self.ell);
        match self.sweep {
            Sweep::Size => size = value as usize,
            Sweep::Density => density = value,
            Sweep::K => k = value as u32,
            Sweep::Ell => ell = value as usize,
        }
        Ok(match self.family {
            Family::Random => (gen_random_connected(size, density, k, seed)?, None),
            Family::Tree => (gen_random_tree(size, k, seed)?, None),
            Family::Grid => (gen_grid(size, size, k)?, None),
            Family::Gadget => {
                let (inst, spec) = gen_gadget(ell)?;
                (inst, Some(spec))
            }
        })
    }

    fn instance_id(&self, value: f64, seed: u64) -> String {
        format!("{}-{}{}-s{}", self.family, self.sweep, value, seed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub point: usize,
    pub value: f64,
    pub trial: usize,
    pub seed: u64,
    pub instance_id: String,
    pub vertices: usize,
    pub edges: usize,
    pub k: u32,
    /// One entry per configured algorithm; `None` when it failed.
    pub metrics: Vec<Option<Metrics>>,
    pub bounds: Option<BoundReport>,
    pub oracle: Option<u64>,
    pub status: String,
}

impl ResultRow {
    fn total(&self, i: usize) -> Option<u64> {
        self.metrics.get(i).copied().flatten().map(|m| m.total_hops)
    }

    pub fn ratio_to_best_lb(&self) -> Option<f64> {
        ratio(self.total(0), self.bounds.map(|b| b.best))
    }

    pub fn ratio_to_oracle(&self) -> Option<f64> {
        ratio(self.total(0), self.oracle)
    }

    pub fn ratio_to_grid_lb(&self) -> Option<f64> {
        ratio(self.total(0), self.bounds.and_then(|b| b.grid_lb))
    }

    /// First algorithm over the second.
    pub fn algorithm_ratio(&self) -> Option<f64> {
        ratio(self.total(0), self.total(1))
    }
}

fn ratio(num: Option<u64>, den: Option<u64>) -> Option<f64> {
    match (num, den) {
        (Some(a), Some(b)) if b > 0 => Some(a as f64 / b as f64),
        _ => None,
    }
}

fn mean(xs: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let (mut sum, mut n) = (0.0, 0usize);
    for x in xs.flatten() {
        sum += x;
        n += 1;
    }
    (n > 0).then(|| sum / n as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub value: f64,
    pub trials: usize,
    pub mean_total: Vec<Option<f64>>,
    pub mean_ratio_to_best_lb: Option<f64>,
    pub mean_ratio_to_oracle: Option<f64>,
    pub mean_ratio_to_grid_lb: Option<f64>,
    pub mean_algorithm_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub rows: Vec<ResultRow>,
    pub summary: Vec<SummaryRow>,
}

fn cell<T: fmt::Display>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn cell_f(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.6}")).unwrap_or_default()
}

impl ExperimentResult {
    pub fn rows_csv(&self) -> String {
        let mut out = String::from("family,sweep,value,trial,seed,instance,vertices,edges,k");
        for a in &self.config.algorithms {
            let l = a.label();
            write!(out, ",{l}_total,{l}_full,{l}_partial").unwrap();
        }
        out.push_str(",lb1,lb2,lb3,grid_lb,best_lb,oracle");
        out.push_str(",ratio_to_best_lb,ratio_to_oracle,ratio_to_grid_lb,algorithm_ratio,status\n");
        for r in &self.rows {
            write!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                self.config.family,
                self.config.sweep,
                r.value,
                r.trial,
                r.seed,
                r.instance_id,
                r.vertices,
                r.edges,
                r.k
            )
            .unwrap();
            for m in &r.metrics {
                write!(
                    out,
                    ",{},{},{}",
                    cell(m.map(|m| m.total_hops)),
                    cell(m.map(|m| m.full_hops)),
                    cell(m.map(|m| m.partial_hops))
                )
                .unwrap();
            }
            let b = r.bounds;
            write!(
                out,
                ",{},{},{},{},{},{}",
                cell(b.map(|b| b.lb1)),
                cell(b.map(|b| b.lb2)),
                cell(b.map(|b| b.lb3)),
                cell(b.and_then(|b| b.grid_lb)),
                cell(b.map(|b| b.best)),
                cell(r.oracle)
            )
            .unwrap();
            writeln!(
                out,
                ",{},{},{},{},{}",
                cell_f(r.ratio_to_best_lb()),
                cell_f(r.ratio_to_oracle()),
                cell_f(r.ratio_to_grid_lb()),
                cell_f(r.algorithm_ratio()),
                r.status
            )
            .unwrap();
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from("family,sweep,value,trials");
        for a in &self.config.algorithms {
            write!(out, ",mean_{}_total", a.label()).unwrap();
        }
        out.push_str(",mean_ratio_to_best_lb,mean_ratio_to_oracle,mean_ratio_to_grid_lb,mean_algorithm_ratio\n");
        for s in &self.summary {
            write!(out, "{},{},{},{}", self.config.family, self.config.sweep, s.value, s.trials).unwrap();
            for t in &s.mean_total {
                write!(out, ",{}", cell_f(*t)).unwrap();
            }
            writeln!(
                out,
                ",{},{},{},{}",
                cell_f(s.mean_ratio_to_best_lb),
                cell_f(s.mean_ratio_to_oracle),
                cell_f(s.mean_ratio_to_grid_lb),
                cell_f(s.mean_algorithm_ratio)
            )
            .unwrap();
        }
        out
    }

    /// gnuplot script plotting the per-point mean ratios from the summary
    /// CSV written at `summary_path`.
    pub fn gnuplot_script(&self, summary_path: &str, png_path: &str) -> String {
        let base = 5 + self.config.algorithms.len();
        format!(
            "set datafile separator ','\n\
             set key autotitle columnhead\n\
             set terminal pngcairo size 800,500\n\
             set output '{png_path}'\n\
             set xlabel '{sweep}'\n\
             set ylabel 'mean ratio'\n\
             plot '{summary_path}' using 3:{a} with linespoints, \\\n\
             \x20    '' using 3:{b} with linespoints, \\\n\
             \x20    '' using 3:{c} with linespoints, \\\n\
             \x20    '' using 3:{d} with linespoints\n",
            sweep = self.config.sweep,
            a = base,
            b = base + 1,
            c = base + 2,
            d = base + 3,
        )
    }
}

/// Runs every trial of every sweep point, in (point, trial) order. Seeds
/// are `base_seed + trial`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult, InstanceError> {
    config.validate()?;
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for (point, &value) in config.values.iter().enumerate() {
        let first = rows.len();
        for trial in 0..config.trials {
            let seed = config.base_seed.wrapping_add(trial as u64);
            rows.push(run_trial(config, point, value, trial, seed));
        }
        let point_rows = &rows[first..];
        summary.push(SummaryRow {
            value,
            trials: point_rows.len(),
            mean_total: (0..config.algorithms.len())
                .map(|i| mean(point_rows.iter().map(|r| r.total(i).map(|t| t as f64))))
                .collect(),
            mean_ratio_to_best_lb: mean(point_rows.iter().map(ResultRow::ratio_to_best_lb)),
            mean_ratio_to_oracle: mean(point_rows.iter().map(ResultRow::ratio_to_oracle)),
            mean_ratio_to_grid_lb: mean(point_rows.iter().map(ResultRow::ratio_to_grid_lb)),
            mean_algorithm_ratio: mean(point_rows.iter().map(ResultRow::algorithm_ratio)),
        });
    }
    Ok(ExperimentResult {
        config: config.clone(),
        rows,
        summary,
    })
}

fn run_trial(config: &ExperimentConfig, point: usize, value: f64, trial: usize, seed: u64) -> ResultRow {
    let mut row = ResultRow {
        point,
        value,
        trial,
        seed,
        instance_id: config.instance_id(value, seed),
        vertices: 0,
        edges: 0,
        k: 0,
        metrics: vec![None; config.algorithms.len()],
        bounds: None,
        oracle: None,
        status: String::new(),
    };
    let mut problems = Vec::new();
    let (inst, spec) = match config.instance(value, seed) {
        Ok(x) => x,
        Err(e) => {
            row.status = sanitize(&format!("instance: {e}"));
            return row;
        }
    };
    row.vertices = inst.vertex_count();
    row.edges = inst.graph().edge_count();
    row.k = inst.capacity();

    for (i, algo) in config.algorithms.iter().enumerate() {
        match route(&inst, spec.as_ref(), algo) {
            Ok(m) => row.metrics[i] = Some(m),
            Err(e) => problems.push(format!("{}: {e}", algo.label())),
        }
    }
    if config.bounds {
        row.bounds = Some(BoundReport::compute(&inst));
    }
    if config.oracle && inst.reading_count() <= config.oracle_limits.max_vertices {
        match solve_exact(&inst, config.oracle_limits) {
            Ok(sol) => row.oracle = Some(sol.optimum),
            Err(OracleError::LimitsExceeded(_)) => problems.push("oracle: limits exceeded".into()),
            Err(e) => problems.push(format!("oracle: {e}")),
        }
    }
    row.status = if problems.is_empty() {
        "ok".into()
    } else {
        sanitize(&problems.join("; "))
    };
    row
}

fn sanitize(s: &str) -> String {
    s.replace([',', '\n'], " ")
}

/// Routes one instance and validates the resulting trace.
pub fn route(instance: &Instance, spec: Option<&GadgetSpec>, algo: &Algorithm) -> Result<Metrics, String> {
    let trace = match algo {
        Algorithm::Spt(choice) => {
            let policy = match (choice, spec) {
                (PolicyChoice::Fixed(p), _) => p.clone(),
                (PolicyChoice::PreferSpc, Some(spec)) => ParentPolicy::PreferSet(spec.spc_vertices()),
                (PolicyChoice::PreferSpc, None) => ParentPolicy::MinId,
            };
            run_spt(instance, &build_spt(instance, &policy)).map_err(|e| e.to_string())?
        }
        Algorithm::Sptg => run_sptg(instance).map_err(|e| e.to_string())?,
        Algorithm::Basic => run_basic(instance, None),
        Algorithm::GadgetOpt => {
            let spec = spec.ok_or("not a gadget instance")?;
            run_gadget_opt(instance, spec).map_err(|e| e.to_string())?
        }
    };
    validate_trace(instance, &trace).map_err(|e| e.to_string())
}
