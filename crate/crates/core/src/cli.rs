//! Command-line front end. Every number it prints comes straight from the
//! library calls; the CLI only parses, orders and writes.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or precondition error,
//! 3 internal invariant breach.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::error::Error;
use crate::evaluation::{
    error_diagram, p_value, parameter_sweep, sweep_stats_json, write_diagram_csv, write_sweep_csv, SweepGrid,
    SweepResult,
};
use crate::extremes::{detect_extremes, write_extremes_csv, DEFAULT_AFTER, DEFAULT_BEFORE};
use crate::indicator::{indicator, write_indicator_csv, ExtremeKind, IndicatorSeries, DEFAULT_SCOPE};
use crate::series::{load_csv, write_series_csv, PriceSeries, Scale};
use crate::synthetic::{gen_synthetic, SyntheticSpec};
use crate::visibility::{build_network, degree_sequence, write_degree_csv, write_edge_list, DirectionFilter, LinkKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "netextreme", version, about = "Network-degree peak/trough indicators and error-diagram evaluation")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Look-back scope S in trading days.
    #[arg(short = 'S', long, global = true, default_value_t = DEFAULT_SCOPE)]
    pub scope: usize,
    /// Days before an extreme that it must dominate (b).
    #[arg(short = 'b', long, global = true, default_value_t = DEFAULT_BEFORE)]
    pub before: usize,
    /// Days after an extreme that it must dominate (a).
    #[arg(short = 'a', long, global = true, default_value_t = DEFAULT_AFTER)]
    pub after: usize,
    /// An alarm on day d also covers extremes on days d+1..=d+h.
    #[arg(long, global = true, default_value_t = 0)]
    pub horizon: usize,
    /// Build networks on log-prices (default).
    #[arg(long, global = true, conflicts_with = "raw")]
    pub log: bool,
    /// Build networks on raw prices instead of log-prices.
    #[arg(long, global = true)]
    pub raw: bool,
    /// Which extremes to compute.
    #[arg(long, global = true, value_enum, default_value_t = KindSel::Both)]
    pub kind: KindSel,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for synthetic fixtures.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Omit the generation-time comment line from outputs.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[arg(long, global = true, default_value = "close")]
    pub price_column: String,
    #[arg(long, global = true, default_value = "date")]
    pub date_column: String,
    /// Use a generated fixture instead of (or in addition to) input files.
    #[arg(long, global = true, value_enum)]
    pub synthetic: Option<Preset>,
    #[arg(long, global = true, default_value_t = 2000)]
    pub synthetic_length: usize,
    /// Number of planted regimes in a synthetic fixture.
    #[arg(long, global = true, default_value_t = 4)]
    pub synthetic_count: usize,
    /// Daily log-return noise of a synthetic fixture.
    #[arg(long, global = true, default_value_t = 0.01)]
    pub noise: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindSel {
    Peak,
    Trough,
    Both,
}

impl KindSel {
    fn kinds(self) -> &'static [ExtremeKind] {
        match self {
            KindSel::Peak => &[ExtremeKind::Peak],
            KindSel::Trough => &[ExtremeKind::Trough],
            KindSel::Both => &[ExtremeKind::Peak, ExtremeKind::Trough],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Planted super-exponential rises, each ending in a crash.
    Bubble,
    /// Planted super-exponential declines, each ending in a rebound.
    NegativeBubble,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write peak and trough indicator CSVs.
    Indicator {
        inputs: Vec<PathBuf>,
        /// Also write edge lists and unfiltered degree CSVs for both network kinds.
        #[arg(long)]
        export_network: bool,
    },
    /// List days whose indicator exceeds a threshold.
    Mark {
        inputs: Vec<PathBuf>,
        #[arg(long)]
        threshold: f64,
    },
    /// Write realized peaks and troughs.
    Extremes { inputs: Vec<PathBuf> },
    /// Error diagrams and p-values, one summary row per input.
    Evaluate { inputs: Vec<PathBuf> },
    /// p-values over an (S, a, b) grid with box-plot statistics.
    Sweep {
        inputs: Vec<PathBuf>,
        /// Comma-separated S values.
        #[arg(long = "grid-S", value_delimiter = ',')]
        grid_s: Vec<usize>,
        /// Comma-separated a values.
        #[arg(long = "grid-a", value_delimiter = ',')]
        grid_a: Vec<usize>,
        /// Comma-separated b values.
        #[arg(long = "grid-b", value_delimiter = ',')]
        grid_b: Vec<usize>,
    },
    /// Write a synthetic series as `day_index,date,price,log_price`.
    Synth {
        #[arg(long, value_enum, default_value_t = Preset::Bubble)]
        preset: Preset,
        #[arg(long, default_value = "synthetic.csv")]
        file: PathBuf,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(m) => write!(f, "error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Data(e.to_string())
    }
}

fn write_err(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| CliError::Data(format!("cannot write {}: {e}", path.display()))
}

/// Named input series.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub ticker: String,
    pub series: PriceSeries,
}

struct Ctx<'a> {
    opts: &'a GlobalOpts,
    scale: Scale,
}

impl Ctx<'_> {
    fn header_lines(&self) -> Vec<String> {
        let mut lines = vec![format!(
            "scale={}",
            match self.scale {
                Scale::Log => "log",
                Scale::Raw => "raw",
            }
        )];
        if !self.opts.no_timestamp {
            lines.push(format!("generated={}", chrono::Utc::now().to_rfc3339()));
        }
        lines
    }

    fn create(&self, name: &str) -> Result<(PathBuf, BufWriter<File>), CliError> {
        let path = self.opts.out.join(name);
        let file = File::create(&path).map_err(|e| CliError::Data(format!("cannot create {}: {e}", path.display())))?;
        Ok((path, BufWriter::new(file)))
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn validate(cli: &Cli) -> Result<(), CliError> {
    let g = &cli.global;
    if g.scope < 2 {
        return Err(CliError::Usage(format!("--scope must be at least 2, got {}", g.scope)));
    }
    if g.before == 0 || g.after == 0 {
        return Err(CliError::Usage("--before and --after must be at least 1".into()));
    }
    if g.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    if !(g.noise >= 0.0 && g.noise.is_finite()) {
        return Err(CliError::Usage("--noise must be a nonnegative number".into()));
    }
    match &cli.command {
        Command::Mark { threshold, .. } if !(*threshold > 0.0 && *threshold <= 1.0) => {
            Err(CliError::Usage(format!("--threshold must lie in (0, 1], got {threshold}")))
        }
        Command::Sweep { grid_s, .. } if grid_s.iter().any(|&s| s < 2) => {
            Err(CliError::Usage("--grid-S values must be at least 2".into()))
        }
        Command::Sweep { grid_a, grid_b, .. } if grid_a.contains(&0) || grid_b.contains(&0) => {
            Err(CliError::Usage("--grid-a and --grid-b values must be at least 1".into()))
        }
        _ => Ok(()),
    }
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    validate(cli)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.global.jobs {
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(|e| CliError::Internal(e.to_string()))?;
    pool.install(|| dispatch(cli))
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let opts = &cli.global;
    let ctx = Ctx {
        opts,
        scale: if opts.raw { Scale::Raw } else { Scale::Log },
    };
    fs::create_dir_all(&opts.out).map_err(|e| CliError::Data(format!("cannot create {}: {e}", opts.out.display())))?;

    match &cli.command {
        Command::Synth { preset, file } => cmd_synth(&ctx, *preset, file),
        Command::Indicator { inputs, export_network } => {
            let data = load_inputs(&ctx, inputs)?;
            cmd_indicator(&ctx, &data, *export_network)
        }
        Command::Mark { inputs, threshold } => {
            let data = load_inputs(&ctx, inputs)?;
            cmd_mark_thresholds(&ctx, &data, *threshold)
        }
        Command::Extremes { inputs } => {
            let data = load_inputs(&ctx, inputs)?;
            cmd_extremes(&ctx, &data)
        }
        Command::Evaluate { inputs } => {
            let data = load_inputs(&ctx, inputs)?;
            cmd_evaluate(&ctx, &data)
        }
        Command::Sweep {
            inputs,
            grid_s,
            grid_a,
            grid_b,
        } => {
            let data = load_inputs(&ctx, inputs)?;
            let defaults = SweepGrid::default();
            let pick = |given: &Vec<usize>, fallback: Vec<usize>| if given.is_empty() { fallback } else { given.clone() };
            let grid = SweepGrid {
                scopes: pick(grid_s, defaults.scopes),
                afters: pick(grid_a, defaults.afters),
                befores: pick(grid_b, defaults.befores),
            };
            cmd_sweep(&ctx, &data, &grid)
        }
    }
}

fn synthetic_spec(opts: &GlobalOpts, preset: Preset) -> Result<SyntheticSpec, Error> {
    let (len, count, noise, seed) = (opts.synthetic_length, opts.synthetic_count, opts.noise, opts.seed);
    match preset {
        Preset::Bubble => SyntheticSpec::planted_bubbles(len, count, noise, seed),
        Preset::NegativeBubble => SyntheticSpec::planted_negative_bubbles(len, count, noise, seed),
    }
}

fn preset_name(preset: Preset) -> &'static str {
    match preset {
        Preset::Bubble => "synthetic_bubble",
        Preset::NegativeBubble => "synthetic_negative_bubble",
    }
}

fn load_inputs(ctx: &Ctx<'_>, inputs: &[PathBuf]) -> Result<Vec<Dataset>, CliError> {
    if inputs.is_empty() && ctx.opts.synthetic.is_none() {
        return Err(CliError::Usage("give at least one input CSV or --synthetic".into()));
    }
    let mut data: Vec<Dataset> = inputs
        .par_iter()
        .map(|path| {
            let series = load_csv(path, &ctx.opts.price_column, &ctx.opts.date_column)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            let ticker = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "series".into());
            Ok(Dataset {
                ticker,
                series: series.with_scale(ctx.scale),
            })
        })
        .collect::<Result<_, CliError>>()?;
    if let Some(preset) = ctx.opts.synthetic {
        let series = gen_synthetic(&synthetic_spec(ctx.opts, preset)?)?;
        data.push(Dataset {
            ticker: preset_name(preset).into(),
            series: series.with_scale(ctx.scale),
        });
    }
    Ok(data)
}

fn cmd_synth(ctx: &Ctx<'_>, preset: Preset, file: &Path) -> Result<(), CliError> {
    let series = gen_synthetic(&synthetic_spec(ctx.opts, preset)?)?;
    let path = ctx.opts.out.join(file);
    let out = File::create(&path).map_err(write_err(&path))?;
    write_series_csv(&series, BufWriter::new(out))?;
    println!("wrote {} ({} days)", path.display(), series.len());
    Ok(())
}

fn indicators_for(ctx: &Ctx<'_>, data: &[Dataset]) -> Result<Vec<Vec<IndicatorSeries>>, CliError> {
    let kinds = ctx.opts.kind.kinds();
    data.par_iter()
        .map(|d| {
            kinds
                .iter()
                .map(|&k| indicator(&d.series, ctx.opts.scope, k).map_err(|e| CliError::Data(format!("{}: {e}", d.ticker))))
                .collect()
        })
        .collect()
}

/// Indicator CSVs per input and kind.
fn cmd_indicator(ctx: &Ctx<'_>, data: &[Dataset], export_network: bool) -> Result<(), CliError> {
    let all = indicators_for(ctx, data)?;
    let header = ctx.header_lines();
    for (d, inds) in data.iter().zip(&all) {
        for ind in inds {
            let (path, mut out) = ctx.create(&format!("{}_{}_indicator.csv", d.ticker, ind.kind))?;
            write_indicator_csv(&d.series, ind, &mut out, &header)?;
            out.flush().map_err(write_err(&path))?;
            println!("{}: {} indicator defined for {} days", d.ticker, ind.kind, ind.len());
        }
        if export_network {
            for (kind, tag) in [(LinkKind::Visibility, "visibility"), (LinkKind::AbsoluteInvisibility, "invisibility")] {
                let edges = build_network(&d.series, kind, Some(ctx.opts.scope));
                let (path, mut out) = ctx.create(&format!("{}_{tag}_edges.txt", d.ticker))?;
                write_edge_list(&edges, &mut out).map_err(write_err(&path))?;
                out.flush().map_err(write_err(&path))?;
                let seq = degree_sequence(&d.series, ctx.opts.scope, kind, DirectionFilter::None)?;
                let (path, mut out) = ctx.create(&format!("{}_{tag}_degree.csv", d.ticker))?;
                write_degree_csv(&seq, &mut out)?;
                out.flush().map_err(write_err(&path))?;
            }
        }
    }
    Ok(())
}

/// Days with indicator strictly above `threshold`, as
/// `day_index,date,price,kind,indicator_value`.
fn cmd_mark_thresholds(ctx: &Ctx<'_>, data: &[Dataset], threshold: f64) -> Result<(), CliError> {
    let all = indicators_for(ctx, data)?;
    let header = ctx.header_lines();
    for (d, inds) in data.iter().zip(&all) {
        let mut rows: Vec<(usize, ExtremeKind, f64)> = inds
            .iter()
            .flat_map(|ind| ind.iter().filter(|&(_, v)| v > threshold).map(move |(day, v)| (day, ind.kind, v)))
            .collect();
        rows.sort_by_key(|&(day, kind, _)| (day, kind == ExtremeKind::Trough));
        if rows.is_empty() {
            eprintln!("warning: {}: no indicator value exceeds {threshold}", d.ticker);
        }
        let (path, mut out) = ctx.create(&format!("{}_marked.csv", d.ticker))?;
        writeln!(out, "# threshold={threshold} scope={}", ctx.opts.scope).map_err(write_err(&path))?;
        for line in &header {
            writeln!(out, "# {line}").map_err(write_err(&path))?;
        }
        let mut wtr = csv::Writer::from_writer(&mut out);
        wtr.write_record(["day_index", "date", "price", "kind", "indicator_value"])
            .map_err(Error::from)?;
        for (day, kind, value) in &rows {
            wtr.write_record([
                day.to_string(),
                d.series.date_string(*day),
                d.series.prices()[day - 1].to_string(),
                kind.name().to_string(),
                value.to_string(),
            ])
            .map_err(Error::from)?;
        }
        wtr.flush().map_err(write_err(&path))?;
        drop(wtr);
        out.flush().map_err(write_err(&path))?;
        println!("{}: {} marked days", d.ticker, rows.len());
    }
    Ok(())
}

fn cmd_extremes(ctx: &Ctx<'_>, data: &[Dataset]) -> Result<(), CliError> {
    for d in data {
        let sets = ctx
            .opts
            .kind
            .kinds()
            .iter()
            .map(|&k| detect_extremes(&d.series, k, ctx.opts.before, ctx.opts.after))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Data(format!("{}: {e}", d.ticker)))?;
        let (path, mut out) = ctx.create(&format!("{}_extremes.csv", d.ticker))?;
        let refs: Vec<_> = sets.iter().collect();
        write_extremes_csv(&d.series, &refs, &mut out)?;
        out.flush().map_err(write_err(&path))?;
        for s in &sets {
            println!("{}: {} {}s", d.ticker, s.len(), s.kind);
        }
    }
    Ok(())
}

/// p-value per input and kind, in input order.
pub fn evaluate_dataset(
    d: &Dataset,
    kind: ExtremeKind,
    scope: usize,
    before: usize,
    after: usize,
    horizon: usize,
) -> Result<crate::evaluation::ErrorDiagram, CliError> {
    let ind = indicator(&d.series, scope, kind).map_err(|e| CliError::Data(format!("{}: {e}", d.ticker)))?;
    let ext =
        detect_extremes(&d.series, kind, before, after).map_err(|e| CliError::Data(format!("{}: {e}", d.ticker)))?;
    error_diagram(&ind, &ext, horizon).map_err(|e| CliError::Data(format!("{} ({kind}s): {e}", d.ticker)))
}

fn cmd_evaluate(ctx: &Ctx<'_>, data: &[Dataset]) -> Result<(), CliError> {
    let o = ctx.opts;
    let kinds = o.kind.kinds();
    let diagrams: Vec<Vec<_>> = data
        .par_iter()
        .map(|d| {
            kinds
                .iter()
                .map(|&k| evaluate_dataset(d, k, o.scope, o.before, o.after, o.horizon))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;

    let header = ctx.header_lines();
    for (d, dias) in data.iter().zip(&diagrams) {
        for dia in dias {
            let p = p_value(dia);
            if !(p > 0.0 && p <= 1.0) {
                return Err(CliError::Internal(format!("{}: p-value {p} outside (0, 1]", d.ticker)));
            }
            let (path, mut out) = ctx.create(&format!("{}_{}_error_diagram.csv", d.ticker, dia.kind))?;
            write_diagram_csv(dia, &mut out, &header)?;
            out.flush().map_err(write_err(&path))?;
        }
    }

    let (path, mut out) = ctx.create("summary.csv")?;
    for line in &header {
        writeln!(out, "# {line}").map_err(write_err(&path))?;
    }
    writeln!(out, "# S={} a={} b={} horizon={}", o.scope, o.after, o.before, o.horizon).map_err(write_err(&path))?;
    let mut wtr = csv::Writer::from_writer(&mut out);
    wtr.write_record(["ticker", "peak_p", "trough_p"]).map_err(Error::from)?;
    for (d, dias) in data.iter().zip(&diagrams) {
        let cell = |k: ExtremeKind| {
            dias.iter()
                .find(|x| x.kind == k)
                .map(|x| p_value(x).to_string())
                .unwrap_or_default()
        };
        let (pk, tr) = (cell(ExtremeKind::Peak), cell(ExtremeKind::Trough));
        println!("{}: peak p = {} trough p = {}", d.ticker, display_or_dash(&pk), display_or_dash(&tr));
        wtr.write_record([d.ticker.as_str(), &pk, &tr]).map_err(Error::from)?;
    }
    wtr.flush().map_err(write_err(&path))?;
    drop(wtr);
    out.flush().map_err(write_err(&path))?;
    Ok(())
}

fn display_or_dash(s: &str) -> &str {
    if s.is_empty() {
        "-"
    } else {
        s
    }
}

fn cmd_sweep(ctx: &Ctx<'_>, data: &[Dataset], grid: &SweepGrid) -> Result<(), CliError> {
    let o = ctx.opts;
    let kinds = o.kind.kinds();
    let results: Vec<Vec<SweepResult>> = data
        .iter()
        .map(|d| {
            kinds
                .iter()
                .map(|&k| parameter_sweep(&d.series, grid, k, o.horizon))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;

    let header = ctx.header_lines();
    let (sum_path, mut summary) = ctx.create("sweep_summary.csv")?;
    for line in &header {
        writeln!(summary, "# {line}").map_err(write_err(&sum_path))?;
    }
    writeln!(summary, "ticker,kind,valid,excluded,q1,median,q3").map_err(write_err(&sum_path))?;

    let mut medians: Vec<(ExtremeKind, f64)> = Vec::new();
    for (d, per_kind) in data.iter().zip(&results) {
        for r in per_kind {
            let (path, mut out) = ctx.create(&format!("{}_{}_sweep.csv", d.ticker, r.kind))?;
            write_sweep_csv(r, &mut out)?;
            out.flush().map_err(write_err(&path))?;
            let (path, mut out) = ctx.create(&format!("{}_{}_sweep_stats.json", d.ticker, r.kind))?;
            writeln!(out, "{}", sweep_stats_json(r)?).map_err(write_err(&path))?;
            out.flush().map_err(write_err(&path))?;

            let excluded = r.excluded_count();
            if excluded > 0 {
                eprintln!("{}: {} of {} {} triples excluded", d.ticker, excluded, r.entries.len(), r.kind);
            }
            let (q1, med, q3) = match &r.stats {
                Some(s) => {
                    medians.push((r.kind, s.median));
                    (s.q1.to_string(), s.median.to_string(), s.q3.to_string())
                }
                None => Default::default(),
            };
            writeln!(
                summary,
                "{},{},{},{},{q1},{med},{q3}",
                d.ticker,
                r.kind,
                r.entries.len() - excluded,
                excluded
            )
            .map_err(write_err(&sum_path))?;
        }
    }
    summary.flush().map_err(write_err(&sum_path))?;

    for &k in kinds {
        let m: Vec<f64> = medians.iter().filter(|(kk, _)| *kk == k).map(|&(_, v)| v).collect();
        if !m.is_empty() {
            println!("mean of median {} p-values over {} series: {}", k, m.len(), m.iter().sum::<f64>() / m.len() as f64);
        }
    }
    Ok(())
}
