use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use scaleorb::claims::{verify_all, verify_claim};
use scaleorb::means::{diam_t, linspace, sample_curve, CurveKind, TParam};
use scaleorb::named::named;
use scaleorb::orbits::{orbit_partition, write_rows_csv, OrbitMultiset};
use scaleorb::search::{parse_catalog, reproduce_table2, sweep_catalog, sweep_young, Dedupe, SweepReport};
use scaleorb::{ActionMode, GeneratorSet, NameRegistry, ScaleUniverse, DEGREE};

/// Orbits and power-mean diameters of permutation groups acting on scales.
#[derive(Parser)]
#[command(name = "scaleorb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the orbits of a group on k-note scales, largest first.
    Orbits {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// Print diam_t of a group on k-note scales, one line per t.
    Diam {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        t: TList,
        #[command(flatten)]
        out: Output,
    },
    /// Rank Young subgroups or catalog groups by diam_t.
    Sweep(SweepArgs),
    /// Check registered claims; exits 1 if any fails.
    Verify {
        /// Claim id, e.g. GAMMA-THATS.
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        /// List the registered claim ids and exit.
        #[arg(long, conflicts_with_all = ["id", "all"])]
        list: bool,
        #[arg(long, value_enum, default_value_t = VerifyFormat::Text)]
        format: VerifyFormat,
        #[command(flatten)]
        out: Output,
    },
    /// Emit curve data for the two figures as CSV.
    Figure {
        #[arg(value_enum)]
        figure: Figure,
        #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
        t_min: f64,
        #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
        t_max: f64,
        #[arg(long, default_value_t = 201)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        precision: usize,
        #[command(flatten)]
        out: Output,
    },
    /// The 56 Young types on 7-note tonic scales ordered by diam_1.
    Table2 {
        #[arg(long, default_value_t = 4)]
        precision: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Young subgroup family to sweep.
    #[arg(long, value_enum, conflicts_with = "catalog", required_unless_present = "catalog")]
    family: Option<Family>,
    /// Catalog file: one `label ; generator ; generator ... [; order=N]` per line.
    #[arg(long)]
    catalog: Option<PathBuf>,
    #[arg(long, default_value_t = 7)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Mode::Tonic)]
    mode: Mode,
    #[command(flatten)]
    t: TList,
    /// Worker threads for catalog sweeps (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct Target {
    /// `;`-separated generators in cycle notation, or a named group such
    /// as `gamma`, `delta`, `sigma1`. Empty for the trivial group.
    #[arg(long, allow_hyphen_values = true)]
    group: String,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Mode::Tonic)]
    mode: Mode,
}

#[derive(Args)]
struct TList {
    /// Comma-separated exponents; `inf` and `-inf` allowed.
    #[arg(
        long = "t",
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "1,0,-1"
    )]
    t: Vec<TParam>,
    #[arg(long, default_value_t = 4)]
    precision: usize,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Tonic,
    Atonic,
}

impl From<Mode> for ActionMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Tonic => ActionMode::Tonic,
            Mode::Atonic => ActionMode::Atonic,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum VerifyFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "young-types")]
    Types,
    #[value(name = "young-signatures")]
    Signatures,
    #[value(name = "young-partitions")]
    Partitions,
}

#[derive(Clone, Copy, ValueEnum)]
enum Figure {
    Fig1,
    Fig2,
}

const FIGURE_SIZES: [u64; 5] = [2, 2, 7, 8, 10];

impl Output {
    fn write(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut stdout = io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                Ok(stdout.flush()?)
            }
        }
    }
}

fn parse_group(text: &str) -> Result<GeneratorSet> {
    let trimmed = text.trim();
    if !trimmed.is_empty() && !trimmed.contains('(') {
        return named(trimmed)
            .map(|g| g.generator_set())
            .ok_or_else(|| anyhow!("unknown group name {trimmed:?}"));
    }
    GeneratorSet::parse_list(trimmed, DEGREE).with_context(|| format!("parsing group {text:?}"))
}

fn target_partition(target: &Target) -> Result<scaleorb::OrbitPartition> {
    let gens = parse_group(&target.group)?;
    let universe = ScaleUniverse::enumerate(target.k, target.mode.into())?;
    Ok(orbit_partition(&gens, &universe)?)
}

fn cmd_orbits(target: &Target, format: Format, out: &Output) -> Result<ExitCode> {
    let partition = target_partition(target)?;
    let mut rows = partition.rows(NameRegistry::embedded());
    rows.sort_by_key(|r| std::cmp::Reverse(r.size));
    let text = match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_rows_csv(&rows, &mut buf)?;
            String::from_utf8(buf)?
        }
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
    };
    out.write(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_diam(target: &Target, t: &TList, out: &Output) -> Result<ExitCode> {
    let m = target_partition(target)?.multiset();
    let precision = t.precision;
    let mut text = String::new();
    for &tv in &t.t {
        text.push_str(&format!("{:.precision$}\n", diam_t(&m, tv)?));
    }
    out.write(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn sweep_json(report: &SweepReport) -> Value {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "descriptor": r.descriptor,
                "order": r.order.to_string(),
                "covers": r.covers,
                "max_orbit": r.max_orbit(),
                "n_orbits": r.n_orbits(),
                "orbit_sizes": r.multiset().to_string(),
                "diams": r.diams(),
            })
        })
        .collect();
    json!({
        "family": report.family,
        "k": report.k,
        "mode": report.mode,
        "t": report.t_list.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "rows": rows,
        "diagnostics": report.diagnostics.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn cmd_sweep(args: &SweepArgs) -> Result<ExitCode> {
    let SweepArgs {
        family,
        catalog,
        k,
        mode,
        t,
        jobs,
        format,
        out,
    } = args;
    let (k, mode, jobs) = (*k, ActionMode::from(*mode), *jobs);
    let report = match (family, catalog) {
        (_, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let (entries, parse_diags) = parse_catalog(&text);
            let mut report = sweep_catalog(&entries, k, mode, &t.t, jobs)?;
            let mut diags = parse_diags;
            diags.append(&mut report.diagnostics);
            diags.sort_by_key(|d| d.line);
            report.diagnostics = diags;
            report
        }
        (Some(f), None) => {
            let dedupe = match f {
                Family::Types => Dedupe::ByType,
                Family::Signatures => Dedupe::AllSignatures,
                Family::Partitions => Dedupe::AllPartitions,
            };
            sweep_young(k, mode, &t.t, dedupe)?
        }
        (None, None) => bail!("either --family or --catalog is required"),
    };
    let text = match *format {
        Format::Csv => report.to_csv(t.precision),
        Format::Json => serde_json::to_string_pretty(&sweep_json(&report))? + "\n",
    };
    out.write(&text)?;
    for d in &report.diagnostics {
        eprintln!("skipped: {d}");
    }
    Ok(if report.diagnostics.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_verify(id: Option<&str>, all: bool, list: bool, format: VerifyFormat, out: &Output) -> Result<ExitCode> {
    if list {
        let ids: Vec<&str> = scaleorb::claims::claim_ids().collect();
        out.write(&(ids.join("\n") + "\n"))?;
        return Ok(ExitCode::SUCCESS);
    }
    let records = match (id, all) {
        (_, true) => verify_all(),
        (Some(id), false) => vec![verify_claim(id)?],
        (None, false) => bail!("give a claim id or --all"),
    };
    let text = match format {
        VerifyFormat::Text => records.iter().map(|r| format!("{r}\n")).collect(),
        VerifyFormat::Json => serde_json::to_string_pretty(&records)? + "\n",
    };
    out.write(&text)?;
    Ok(if records.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_figure(
    figure: Figure,
    t_min: f64,
    t_max: f64,
    samples: usize,
    precision: usize,
    out: &Output,
) -> Result<ExitCode> {
    if !(t_min.is_finite() && t_max.is_finite()) || t_min >= t_max {
        bail!("t range must be finite with --t-min < --t-max");
    }
    if samples < 2 {
        bail!("--samples must be at least 2");
    }
    let grid = linspace(t_min, t_max, samples);
    let m = OrbitMultiset::from_sizes(FIGURE_SIZES);
    let text = match figure {
        Figure::Fig1 => sample_curve(&m, &grid, CurveKind::RawMean)?.to_csv(precision),
        Figure::Fig2 => {
            let orb = sample_curve(&m, &grid, CurveKind::Orb)?;
            let diam = sample_curve(&m, &grid, CurveKind::Diam)?;
            let mut text = String::from("t,orb,diam\n");
            for ((t, o), d) in grid.iter().zip(&orb.values).zip(&diam.values) {
                text.push_str(&format!("{t:.precision$},{o:.precision$},{d:.precision$}\n"));
            }
            text
        }
    };
    out.write(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_table2(precision: usize, format: Format, out: &Output) -> Result<ExitCode> {
    let report = reproduce_table2();
    let text = match format {
        Format::Csv => {
            let mut text = String::from("type,maximal_orbits,orbits,diam_1,diam_0,diam_-1\n");
            for r in &report.rows {
                let ty = r.descriptor.trim_matches(['(', ')']).replace(' ', "");
                text.push_str(&format!("\"{ty}\",{},{}", r.multiset().max_description(), r.n_orbits()));
                for d in r.diams() {
                    text.push_str(&format!(",{d:.precision$}"));
                }
                text.push('\n');
            }
            text
        }
        Format::Json => serde_json::to_string_pretty(&sweep_json(&report))? + "\n",
    };
    out.write(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Orbits { target, format, out } => cmd_orbits(&target, format, &out),
        Command::Diam { target, t, out } => cmd_diam(&target, &t, &out),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Verify {
            id,
            all,
            list,
            format,
            out,
        } => cmd_verify(id.as_deref(), all, list, format, &out),
        Command::Figure {
            figure,
            t_min,
            t_max,
            samples,
            precision,
            out,
        } => cmd_figure(figure, t_min, t_max, samples, precision, &out),
        Command::Table2 { precision, format, out } => cmd_table2(precision, format, &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
