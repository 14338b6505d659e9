use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gemkit::catalogue::{self, meta_path, parse_filters, read_catalogue, write_catalogue, Filter, GenerateParams, Meta, RunOptions};
use gemkit::dipole::reduce;
use gemkit::report::Report;
use gemkit::{canonical_code, CodeFlavor, ColoredGraph, CyclicPermutation, GemError, Result};
use serde_json::json;

#[derive(Parser)]
#[command(name = "gemkit", version, about = "Analyze and enumerate gems of PL manifolds")]
struct Cli {
    /// Print JSON instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Manifold class, crystallization check and sphere recognition.
    Info { path: PathBuf },
    /// Regular genus over all cyclic permutations.
    Genus {
        path: PathBuf,
        /// Also report this permutation, e.g. `0,2,1,3,4`.
        #[arg(long)]
        permutation: Option<String>,
    },
    /// t-values, weak-simple witnesses, genus identities and bounds.
    Classify { path: PathBuf },
    /// Homology of K(Γ), fundamental group presentations.
    Homology {
        path: PathBuf,
        /// Write the presentation of the manifold's fundamental group here.
        #[arg(long)]
        presentation: Option<PathBuf>,
    },
    /// Hypothesis witnesses, handle profiles and link summaries.
    Handles { path: PathBuf },
    /// Eliminate proper dipoles; writes the reduced gem.
    Reduce { path: PathBuf, out: Option<PathBuf> },
    /// Connected sum of two gems.
    Sum { first: PathBuf, second: PathBuf, out: Option<PathBuf> },
    /// Canonical code.
    Canon {
        path: PathBuf,
        /// Identify graphs that differ by a renaming of colors.
        #[arg(long)]
        up_to_colors: bool,
    },
    /// Enumerate connected graphs into a JSON-lines catalogue.
    Generate {
        /// Number of edge colors (dimension + 1).
        #[arg(long)]
        n_colors: Option<usize>,
        #[arg(long)]
        max_order: Option<usize>,
        /// Comma-separated, applied in order.
        #[arg(long, default_value = "")]
        filters: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Continue from this `.meta` checkpoint.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Stop after this many shards (a checkpoint is written).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Replay every identity on a catalogue.
    Verify { catalogue: PathBuf },
}

fn read_gem(path: &Path) -> Result<ColoredGraph> {
    let text = fs::read_to_string(path).map_err(|e| GemError::Io(format!("{}: {e}", path.display())))?;
    ColoredGraph::parse_gem(&text)
}

/// Writes to stdout; a reader that went away early (`| head`) is not an error.
fn put(stdout: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    match stdout.write_all(bytes) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn write_or_print(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => put(stdout, text.as_bytes())?,
    }
    Ok(())
}

fn emit(json: bool, value: serde_json::Value, stdout: &mut dyn Write) -> Result<()> {
    let text = if json {
        let mut s = serde_json::to_string_pretty(&value).expect("json");
        s.push('\n');
        s
    } else {
        gemkit::report::flatten_text(&value)
    };
    put(stdout, text.as_bytes())
}

fn report_for(path: &Path) -> Result<(ColoredGraph, Report)> {
    let g = read_gem(path)?;
    let r = Report::new(&g, Some(&path.display().to_string()))?;
    Ok((g, r))
}

fn generate(
    n_colors: Option<usize>,
    max_order: Option<usize>,
    filters: &str,
    jobs: usize,
    resume: Option<&Path>,
    budget: Option<usize>,
    out: &Path,
) -> Result<serde_json::Value> {
    let filters: Vec<Filter> = parse_filters(filters)?;
    let mut meta = match resume {
        Some(p) => {
            let m = Meta::load(p)?;
            let clash = n_colors.is_some_and(|n| n != m.params.n_colors)
                || max_order.is_some_and(|o| o != m.params.max_order)
                || (!filters.is_empty() && filters != m.params.filters);
            if clash {
                return Err(GemError::InvalidGraph("flags disagree with the checkpoint being resumed".into()));
            }
            m
        }
        None => {
            let (Some(n_colors), Some(max_order)) = (n_colors, max_order) else {
                return Err(GemError::InvalidGraph("--n-colors and --max-order are required unless resuming".into()));
            };
            Meta::new(GenerateParams { n_colors, max_order, filters })
        }
    };
    let mpath = meta_path(out);
    let opts = RunOptions { jobs, shard_budget: budget };
    let records = catalogue::run(&mut meta, &opts, &mut |m| m.save(&mpath))?;
    write_catalogue(out, &records)?;
    let counts: serde_json::Map<String, serde_json::Value> = meta.counts.iter().map(|(o, c)| (o.to_string(), json!(c))).collect();
    Ok(json!({
        "catalogue": out.display().to_string(),
        "records": records.len(),
        "filters": meta.params.filters.iter().map(|f| f.name()).collect::<Vec<_>>(),
        "counts_by_order": counts,
    }))
}

fn run(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    let json = cli.json;
    match cli.command {
        Command::Info { path } => {
            let (_, r) = report_for(&path)?;
            emit(json, r.to_value(), stdout)
        }
        Command::Genus { path, permutation } => {
            let (g, mut r) = report_for(&path)?;
            let eps = permutation.map(|s| s.parse::<CyclicPermutation>()).transpose()?;
            r.add_genus(&g, eps.as_ref())?;
            emit(json, r.to_value(), stdout)
        }
        Command::Classify { path } => {
            let (g, mut r) = report_for(&path)?;
            r.add_classification(&g)?;
            emit(json, r.to_value(), stdout)
        }
        Command::Homology { path, presentation } => {
            let (g, mut r) = report_for(&path)?;
            r.add_homology(&g)?;
            if let Some(p) = presentation {
                let pres = r.homology.as_ref().and_then(|h| h.pi1_manifold.as_ref()).ok_or_else(|| {
                    GemError::Refused("no fundamental group presentation for this input".into())
                })?;
                fs::write(p, pres.presentation.to_text())?;
            }
            emit(json, r.to_value(), stdout)
        }
        Command::Handles { path } => {
            let (g, mut r) = report_for(&path)?;
            r.add_handles(&g)?;
            emit(json, r.to_value(), stdout)
        }
        Command::Reduce { path, out } => {
            let g = read_gem(&path)?;
            let red = reduce(&g)?;
            let text = red.graph.to_gem_string();
            let Some(out) = out else {
                return write_or_print(None, &text, stdout);
            };
            fs::write(&out, &text)?;
            let summary = json!({
                "order_before": g.order(),
                "order_after": red.graph.order(),
                "eliminations": red.steps.len(),
                "uncertified_dipoles": red.uncertified,
                "out": out.display().to_string(),
            });
            emit(json, summary, stdout)
        }
        Command::Sum { first, second, out } => {
            let s = read_gem(&first)?.connected_sum_default(&read_gem(&second)?)?;
            write_or_print(out.as_deref(), &s.to_gem_string(), stdout)
        }
        Command::Canon { path, up_to_colors } => {
            let g = read_gem(&path)?;
            let flavor = if up_to_colors { CodeFlavor::UpToColorPermutation } else { CodeFlavor::ColorPreserving };
            let code = canonical_code(&g, flavor)?;
            if json {
                emit(true, json!({ "code": code.to_hex(), "flavor": flavor }), stdout)
            } else {
                put(stdout, format!("{code}\n").as_bytes())
            }
        }
        Command::Generate { n_colors, max_order, filters, jobs, resume, budget, out } => {
            let summary = generate(n_colors, max_order, &filters, jobs, resume.as_deref(), budget, &out)?;
            emit(json, summary, stdout)
        }
        Command::Verify { catalogue } => {
            let records = read_catalogue(&catalogue)?;
            let report = catalogue::verify_corpus(&records);
            if json {
                emit(true, serde_json::to_value(&report).expect("json"), stdout)?;
            } else {
                put(stdout, report.to_text().as_bytes())?;
            }
            if report.row("decode").fail > 0 {
                return Err(GemError::InvalidGraph("catalogue holds undecodable codes".into()));
            }
            if !report.ok() {
                return Err(GemError::Consistency("catalogue verification failed".into()));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = lock.flush();
            let diag = json!({ "error": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() });
            eprintln!("{diag}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
