//! Batch front end for the `pentropy` binary.
//!
//! Every subcommand reads its inputs, fans independent work out to a rayon
//! pool of `--jobs` threads and writes one output from the calling thread,
//! so results do not depend on the pool size.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use pentropy_core::entropy::{bound_table, entropy_difference, TABLE_NS, TABLE_RS};
use pentropy_core::fixtures::{add_noise, circle_sample, Pattern};
use pentropy_core::io::{
    barcode_to_json, barcodes_to_json, format_significant, parse_barcodes, parse_point_cloud, point_cloud_to_csv,
    step_function_to_csv,
};
use pentropy_core::rips::{pairwise_distances, persistence_with, rips_complex, PersistenceOptions};
use pentropy_core::summary::{es_function, feature_ranking, l1_distance, nes_function, tes_function};
use pentropy_core::{persistent_entropy, wasserstein, Barcode, Error, InfPolicy, PointCloud, StepFunction};

/// Exit code for malformed input or configuration.
pub const EXIT_INPUT: i32 = 2;
/// Exit code for a violated numeric precondition.
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pentropy", version, about = "Persistent entropy of persistence barcodes")]
pub struct Cli {
    /// Worker threads.
    #[arg(long, short = 'j', global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,

    /// Output file (stdout when omitted).
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rips persistence barcodes of point clouds.
    Rips {
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        rips: RipsArgs,
        /// Keep zero-length pairs.
        #[arg(long)]
        keep_zero_length: bool,
        /// Write `<stem>_dim<k>.json` files here instead of one JSON array.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Persistent entropy of every barcode in the inputs.
    Entropy {
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        select: SelectArgs,
    },
    /// Distance, relative error and entropy bound of two barcodes.
    Dist {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "inf")]
        p: Exponent,
        #[command(flatten)]
        select: SelectArgs,
        /// Fail with exit code 3 unless the entropy bound applies.
        #[arg(long)]
        require_bound: bool,
    },
    /// Pairwise distance matrix of summary functions or barcodes.
    Distmat {
        inputs: Vec<PathBuf>,
        /// Summary function to compare; barcode d_p when omitted.
        #[arg(long, value_enum)]
        summary: Option<SummaryKind>,
        #[arg(long, default_value = "inf")]
        p: Exponent,
        #[command(flatten)]
        select: SelectArgs,
    },
    /// ES, NES or TES function as step-function CSV.
    Summary {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SummaryKind::Es)]
        kind: SummaryKind,
        #[command(flatten)]
        select: SelectArgs,
    },
    /// Betti profiles ranked by TES value.
    Features {
        inputs: Vec<PathBuf>,
        #[arg(long, default_value = "tau:0")]
        inf_policy: Policy,
        #[arg(long, default_value_t = 5)]
        top_k: usize,
        #[command(flatten)]
        rips: OptionalRipsArgs,
        /// Wrap the ranking in an object with the settings used.
        #[arg(long)]
        metadata: bool,
    },
    /// Relative entropy bounds over a grid of n and r.
    BoundTable {
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        r: Vec<f64>,
    },
    /// Seeded fixture point clouds as CSV.
    Generate {
        #[command(subcommand)]
        fixture: Fixture,
    },
}

#[derive(Debug, Subcommand)]
pub enum Fixture {
    /// Uniform sample of the unit circle.
    Circle {
        #[arg(long, default_value_t = 40)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Vertices of a quadrilateral tessellation, optionally noisy.
    Pattern {
        #[arg(value_enum)]
        pattern: PatternArg,
        #[arg(long, default_value_t = 4)]
        cols: usize,
        #[arg(long, default_value_t = 4)]
        rows: usize,
        #[arg(long)]
        noisy: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PatternArg {
    Squares,
    Rectangles,
}

impl From<PatternArg> for Pattern {
    fn from(p: PatternArg) -> Self {
        match p {
            PatternArg::Squares => Pattern::Squares,
            PatternArg::Rectangles => Pattern::Rectangles,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SummaryKind {
    Es,
    Nes,
    Tes,
}

#[derive(Debug, Clone, Args)]
pub struct RipsArgs {
    /// Highest homology dimension.
    #[arg(long, default_value_t = 1)]
    pub max_dim: usize,
    /// Largest filtration value: a number or `diameter`.
    #[arg(long)]
    pub max_scale: Scale,
}

/// Rips settings for commands that also accept barcode files.
#[derive(Debug, Clone, Args)]
pub struct OptionalRipsArgs {
    #[arg(long, default_value_t = 1)]
    pub max_dim: usize,
    #[arg(long)]
    pub max_scale: Option<Scale>,
}

/// How an input becomes the single barcode a command works on.
#[derive(Debug, Clone, Args)]
pub struct SelectArgs {
    /// Use only this homology dimension (all pooled when omitted).
    #[arg(long)]
    pub dim: Option<usize>,
    /// Resolution of infinite intervals: `tau:C`, `phi:C` or `drop`.
    #[arg(long)]
    pub inf_policy: Option<Policy>,
    #[command(flatten)]
    pub rips: OptionalRipsArgs,
}

/// `p` of a Wasserstein distance; `inf` selects the bottleneck distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent(pub f64);

impl FromStr for Exponent {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Exponent(f64::INFINITY));
        }
        match s.parse::<f64>() {
            Ok(p) if p >= 1.0 => Ok(Exponent(p)),
            _ => Err(format!("expected a number >= 1 or `inf`, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Policy(pub InfPolicy);

impl FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let constant = |c: &str| c.parse::<f64>().map_err(|_| format!("bad constant in `{s}`"));
        match s.split_once(':') {
            Some(("tau", c)) => Ok(Policy(InfPolicy::Tau(constant(c)?))),
            Some(("phi", c)) => Ok(Policy(InfPolicy::Phi(constant(c)?))),
            None if s == "drop" => Ok(Policy(InfPolicy::Drop)),
            _ => Err(format!("expected `tau:C`, `phi:C` or `drop`, got `{s}`")),
        }
    }
}

impl std::fmt::Display for Policy {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self.0 {
            InfPolicy::Tau(c) => write!(f, "tau:{c}"),
            InfPolicy::Phi(c) => write!(f, "phi:{c}"),
            InfPolicy::Drop => f.write_str("drop"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scale {
    Value(f64),
    Diameter,
}

impl FromStr for Scale {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "diameter" {
            return Ok(Scale::Diameter);
        }
        match s.parse::<f64>() {
            Ok(x) if x > 0.0 => Ok(Scale::Value(x)),
            _ => Err(format!("expected a positive number or `diameter`, got `{s}`")),
        }
    }
}

/// Exit code for an error returned by [`run`].
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_numeric() => EXIT_NUMERIC,
        _ => EXIT_INPUT,
    }
}

/// Runs the command and returns the text for the output.
pub fn run(cli: &Cli) -> anyhow::Result<String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs as usize)
        .build()
        .context("building the worker pool")?;
    pool.install(|| execute(&cli.command))
}

/// Runs the command and writes its output to `--output` or stdout.
pub fn run_and_write(cli: &Cli) -> anyhow::Result<()> {
    let text = run(cli)?;
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(command: &Command) -> anyhow::Result<String> {
    match command {
        Command::Rips { inputs, rips, keep_zero_length, out_dir } => {
            run_rips(inputs, rips, *keep_zero_length, out_dir.as_deref())
        }
        Command::Entropy { inputs, select } => run_entropy(inputs, select),
        Command::Dist { a, b, p, select, require_bound } => run_dist(a, b, p.0, select, *require_bound),
        Command::Distmat { inputs, summary, p, select } => run_distmat(inputs, *summary, p.0, select),
        Command::Summary { input, kind, select } => run_summary(input, *kind, select),
        Command::Features { inputs, inf_policy, top_k, rips, metadata } => {
            run_features(inputs, *inf_policy, *top_k, rips, *metadata)
        }
        Command::BoundTable { n, r } => run_bound_table(n, r),
        Command::Generate { fixture } => Ok(run_generate(fixture)),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn require_inputs(inputs: &[PathBuf], at_least: usize) -> anyhow::Result<()> {
    if inputs.len() < at_least {
        bail!("expected at least {at_least} input file(s), got {}", inputs.len());
    }
    Ok(())
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

/// Barcodes of every homology dimension up to `max_dim`.
fn cloud_barcodes(
    cloud: &PointCloud,
    max_dim: usize,
    scale: Scale,
    keep_zero_length: bool,
) -> pentropy_core::Result<BTreeMap<usize, Barcode>> {
    let dm = pairwise_distances(cloud);
    let max_scale = match scale {
        Scale::Value(x) => x,
        // A single point has diameter 0; any positive scale gives the same complex.
        Scale::Diameter => dm.diameter().max(f64::MIN_POSITIVE),
    };
    let fc = rips_complex(&dm, max_dim, max_scale)?;
    let mut opts = PersistenceOptions::new(max_dim);
    opts.keep_zero_length = keep_zero_length;
    persistence_with(&fc, &opts)
}

fn load_cloud(path: &Path) -> anyhow::Result<PointCloud> {
    parse_point_cloud(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Barcodes of an input keyed by dimension: a barcode JSON file (untagged
/// barcodes keyed by position) or a point cloud run through Rips.
fn load_by_dim(path: &Path, rips: &OptionalRipsArgs) -> anyhow::Result<BTreeMap<usize, Barcode>> {
    if is_json(path) {
        let barcodes = parse_barcodes(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
        let mut out = BTreeMap::new();
        for (k, b) in barcodes.into_iter().enumerate() {
            let d = b.dim().unwrap_or(k);
            if out.insert(d, b).is_some() {
                bail!("{}: dimension {d} appears twice", path.display());
            }
        }
        Ok(out)
    } else {
        let scale = rips
            .max_scale
            .ok_or_else(|| anyhow!("{}: point clouds need --max-scale", path.display()))?;
        let cloud = load_cloud(path)?;
        Ok(cloud_barcodes(&cloud, rips.max_dim, scale, false)?)
    }
}

/// The single barcode a command works on: one dimension or all pooled,
/// with infinite intervals resolved when a policy is given.
fn load_selected(path: &Path, select: &SelectArgs) -> anyhow::Result<Barcode> {
    let by_dim = load_by_dim(path, &select.rips)?;
    let barcode = match select.dim {
        Some(d) => by_dim
            .get(&d)
            .cloned()
            .ok_or_else(|| anyhow!("{}: no barcode of dimension {d}", path.display()))?,
        None if by_dim.len() == 1 => by_dim.into_values().next().expect("one entry"),
        None => Barcode::new(by_dim.into_values().flat_map(Barcode::into_intervals).collect()),
    };
    match select.inf_policy {
        Some(Policy(policy)) if !barcode.is_empty() => Ok(policy.apply(&barcode)?),
        _ => Ok(barcode),
    }
}

fn load_all_selected(inputs: &[PathBuf], select: &SelectArgs) -> anyhow::Result<Vec<Barcode>> {
    inputs.par_iter().map(|p| load_selected(p, select)).collect()
}

fn run_rips(inputs: &[PathBuf], rips: &RipsArgs, keep_zero_length: bool, out_dir: Option<&Path>) -> anyhow::Result<String> {
    require_inputs(inputs, 1)?;
    let results: Vec<(f64, BTreeMap<usize, Barcode>)> = inputs
        .par_iter()
        .map(|path| {
            let cloud = load_cloud(path)?;
            let diameter = pairwise_distances(&cloud).diameter();
            let bars = cloud_barcodes(&cloud, rips.max_dim, rips.max_scale, keep_zero_length)?;
            Ok((diameter, bars))
        })
        .collect::<anyhow::Result<_>>()?;

    let mut out = String::new();
    let mut all = Vec::new();
    for (path, (diameter, bars)) in inputs.iter().zip(results) {
        eprintln!("{}: diameter {}", path.display(), format_significant(diameter, 10));
        match out_dir {
            Some(dir) => {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                for (d, b) in &bars {
                    let file = dir.join(format!("{}_dim{d}.json", stem(path)));
                    fs::write(&file, barcode_to_json(b) + "\n")
                        .with_context(|| format!("writing {}", file.display()))?;
                    writeln!(out, "{}", file.display())?;
                }
            }
            None => all.extend(bars.into_values()),
        }
    }
    if out_dir.is_none() {
        out = barcodes_to_json(&all) + "\n";
    }
    Ok(out)
}

fn run_entropy(inputs: &[PathBuf], select: &SelectArgs) -> anyhow::Result<String> {
    require_inputs(inputs, 1)?;
    let rows: Vec<Vec<String>> = inputs
        .par_iter()
        .map(|path| -> anyhow::Result<Vec<String>> {
            let barcodes: Vec<Barcode> = if select.dim.is_some() || !is_json(path) {
                vec![load_selected(path, select)?]
            } else {
                // Every barcode of a JSON file gets its own row.
                let mut v = Vec::new();
                for b in load_by_dim(path, &select.rips)?.into_values() {
                    v.push(match select.inf_policy {
                        Some(Policy(policy)) if !b.is_empty() => policy.apply(&b)?,
                        _ => b,
                    });
                }
                v
            };
            barcodes
                .iter()
                .map(|b| {
                    let dim = b.dim().map_or_else(String::new, |d| d.to_string());
                    if b.is_empty() {
                        // Entropy is undefined; keep the row so dimensions line up.
                        return Ok(format!("{},{dim},0,0.0,,", path.display()));
                    }
                    let e = persistent_entropy(b)?;
                    Ok(format!(
                        "{},{},{},{:?},{:?},{:?}",
                        path.display(),
                        dim,
                        e.n,
                        e.total_length,
                        e.entropy,
                        e.max_entropy
                    ))
                })
                .collect()
        })
        .collect::<anyhow::Result<_>>()?;
    let mut out = String::from("file,dim,n,total_length,entropy,max_entropy\n");
    for line in rows.into_iter().flatten() {
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

#[derive(Serialize)]
struct DistReport {
    p: String,
    distance: f64,
    relative_error: Option<f64>,
    entropy_difference: Option<f64>,
    bound: Option<f64>,
}

fn exponent_label(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

/// JSON has no infinity; infinite distances are written as `null`.
fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn run_dist(a: &Path, b: &Path, p: f64, select: &SelectArgs, require_bound: bool) -> anyhow::Result<String> {
    let (ba, bb) = (load_selected(a, select)?, load_selected(b, select)?);
    let distance = wasserstein(&ba, &bb, p)?;
    let mut report = DistReport {
        p: exponent_label(p),
        distance,
        relative_error: None,
        entropy_difference: None,
        bound: None,
    };
    if ba.is_finite() && bb.is_finite() && !ba.is_empty() && !bb.is_empty() {
        let diff = entropy_difference(&ba, &bb, p)?;
        report.relative_error = Some(diff.relative_error);
        report.entropy_difference = Some(diff.difference);
        report.bound = diff.bound;
    }
    if require_bound && report.bound.is_none() {
        return Err(match report.relative_error {
            Some(r) => Error::OutOfDomain(format!("relative error {r} is not below 1/4")),
            None => Error::InfiniteInterval,
        }
        .into());
    }
    if !distance.is_finite() {
        let json = serde_json::json!({ "p": report.p, "distance": finite(distance) });
        return Ok(serde_json::to_string_pretty(&json)? + "\n");
    }
    Ok(serde_json::to_string_pretty(&report)? + "\n")
}

fn summary_of(b: &Barcode, kind: SummaryKind) -> pentropy_core::Result<StepFunction> {
    match kind {
        SummaryKind::Es => es_function(b),
        SummaryKind::Nes => nes_function(b),
        SummaryKind::Tes => tes_function(b).map(|(f, _)| f),
    }
}

fn run_distmat(inputs: &[PathBuf], summary: Option<SummaryKind>, p: f64, select: &SelectArgs) -> anyhow::Result<String> {
    require_inputs(inputs, 2)?;
    let barcodes = load_all_selected(inputs, select)?;
    let n = barcodes.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let values: Vec<f64> = match summary {
        Some(kind) => {
            let functions: Vec<StepFunction> = barcodes
                .par_iter()
                .zip(inputs)
                .map(|(b, path)| summary_of(b, kind).with_context(|| path.display().to_string()))
                .collect::<anyhow::Result<_>>()?;
            pairs.par_iter().map(|&(i, j)| l1_distance(&functions[i], &functions[j])).collect()
        }
        None => pairs
            .par_iter()
            .map(|&(i, j)| wasserstein(&barcodes[i], &barcodes[j], p))
            .collect::<pentropy_core::Result<_>>()?,
    };
    let mut matrix = vec![vec![0.0; n]; n];
    for (&(i, j), &v) in pairs.iter().zip(&values) {
        matrix[i][j] = v;
        matrix[j][i] = v;
    }
    let labels: Vec<String> = inputs.iter().map(|p| stem(p)).collect();
    let mut out = format!(",{}\n", labels.join(","));
    for (label, row) in labels.iter().zip(&matrix) {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
        writeln!(out, "{label},{}", cells.join(","))?;
    }
    Ok(out)
}

fn run_summary(input: &Path, kind: SummaryKind, select: &SelectArgs) -> anyhow::Result<String> {
    let b = load_selected(input, select)?;
    Ok(step_function_to_csv(&summary_of(&b, kind)?))
}

const CONTRACTIBLE_NOTE: &str =
    "segments with the contractible profile (beta_0 = 1, higher Betti numbers 0) or nothing alive are excluded";

fn run_features(
    inputs: &[PathBuf],
    policy: Policy,
    top_k: usize,
    rips: &OptionalRipsArgs,
    metadata: bool,
) -> anyhow::Result<String> {
    require_inputs(inputs, 1)?;
    let rankings: Vec<Vec<pentropy_core::AliveProfile>> = inputs
        .par_iter()
        .map(|path| {
            let by_dim = load_by_dim(path, rips)?;
            feature_ranking(&by_dim, policy.0, top_k).with_context(|| path.display().to_string())
        })
        .collect::<anyhow::Result<_>>()?;
    let json = if metadata {
        let entries: Vec<serde_json::Value> = inputs
            .iter()
            .zip(&rankings)
            .map(|(path, r)| serde_json::json!({ "input": path.display().to_string(), "profiles": r }))
            .collect();
        serde_json::json!({
            "inf_policy": policy.to_string(),
            "top_k": top_k,
            "note": CONTRACTIBLE_NOTE,
            "rankings": entries,
        })
    } else if rankings.len() == 1 {
        serde_json::to_value(&rankings[0])?
    } else {
        serde_json::to_value(&rankings)?
    };
    Ok(serde_json::to_string_pretty(&json)? + "\n")
}

fn run_bound_table(ns: &[usize], rs: &[f64]) -> anyhow::Result<String> {
    let ns = if ns.is_empty() { TABLE_NS.to_vec() } else { ns.to_vec() };
    let rs = if rs.is_empty() { TABLE_RS.to_vec() } else { rs.to_vec() };
    let table = bound_table(&ns, &rs)?;
    let mut out = String::from("n");
    for r in &rs {
        write!(out, ",{r}")?;
    }
    out.push('\n');
    for (n, row) in ns.iter().zip(&table) {
        write!(out, "{n}")?;
        for v in row {
            write!(out, ",{}", format_significant(*v, 6))?;
        }
        out.push('\n');
    }
    Ok(out)
}

fn run_generate(fixture: &Fixture) -> String {
    match *fixture {
        Fixture::Circle { n, seed } => point_cloud_to_csv(&circle_sample(n, seed)),
        Fixture::Pattern { pattern, cols, rows, noisy, seed } => {
            let mut pts = Pattern::from(pattern).vertices(cols, rows);
            if noisy {
                pts = add_noise(&pts, seed);
            }
            point_cloud_to_csv(&PointCloud::new(pts).expect("patterns are nonempty"))
        }
    }
}
