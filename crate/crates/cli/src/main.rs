//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 input parse/IO error,
//! 3 internal invariant violation.

mod export;
mod report;

use clap::{Parser, Subcommand};
use digicup::formats::{self, Format};
use digicup::oracle;
use digicup::simplicial::build_representation;
use digicup::{full_pipeline, hb1, DigitalPicture, Pipeline, SimplicialComplex};
use report::{Report, SCHEMA_VERSION};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "digicup",
    version,
    about = "Z/2 cohomology rings (Betti numbers, representative (co)cycles, cup products, HB1) \
             of 3D binary images on the body-centered cubic grid"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and print a JSON report per input.
    Analyze(AnalyzeArgs),
    /// Write representative (co)cycles as OBJ + JSON for viewing.
    ExportCycles(ExportCyclesArgs),
    /// Convert a cubic-grid pts file to BCC coordinates.
    Convert(ConvertArgs),
}

#[derive(clap::Args)]
struct AnalyzeArgs {
    /// Input files (pts, raw or sc).
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Input format; inferred from the extension when omitted.
    #[arg(long)]
    format: Option<String>,
    /// Skip topological thinning (run algebraic thinning on the full complex).
    #[arg(long)]
    no_thin: bool,
    /// Cross-check Betti numbers and cup rank with the dense linear-algebra oracle.
    #[arg(long)]
    oracle: bool,
    /// Re-verify the contraction axioms on every simplex at runtime.
    #[arg(long)]
    verify: bool,
    /// Include per-stage wall times (makes reports non-reproducible).
    #[arg(long)]
    timings: bool,
    /// Worker threads when analyzing several inputs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write the report here instead of stdout (single input only).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Dump the composite chain contraction as JSON (single input only).
    #[arg(long)]
    dump_contraction: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ExportCyclesArgs {
    input: PathBuf,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    no_thin: bool,
    /// Directory for cycles.obj / cycles.json.
    #[arg(long, required = true)]
    export_dir: PathBuf,
}

#[derive(clap::Args)]
struct ConvertArgs {
    /// Input pts file with cubic-grid coordinates.
    input: PathBuf,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Parse(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<formats::FormatError> for CliError {
    fn from(e: formats::FormatError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                std::process::exit(0);
            }
            let _ = e.print();
            std::process::exit(1);
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::ExportCycles(args) => cmd_export_cycles(args),
        Command::Convert(args) => cmd_convert(args),
    };
    if let Err(e) = result {
        eprintln!("digicup: {}", e.message());
        std::process::exit(e.code());
    }
}

fn resolve_format(path: &Path, flag: &Option<String>) -> Result<Format, CliError> {
    match flag {
        Some(name) => name.parse().map_err(CliError::Usage),
        None => Format::from_extension(path).ok_or_else(|| {
            CliError::Usage(format!(
                "cannot infer format of {} (use --format)",
                path.display()
            ))
        }),
    }
}

enum Input {
    Picture(DigitalPicture),
    Complex(SimplicialComplex),
}

fn load_input(path: &Path, format: Format) -> Result<Input, CliError> {
    match format {
        Format::Sc => Ok(Input::Complex(formats::load_complex(path)?)),
        picture_format => Ok(Input::Picture(formats::load_picture(path, picture_format)?)),
    }
}

/// Panics inside the pipeline (invariant assertions) become exit code 3.
fn guarded<T: Send>(work: impl FnOnce() -> T + std::panic::UnwindSafe) -> Result<T, CliError> {
    std::panic::catch_unwind(work).map_err(|cause| {
        let msg = cause
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| cause.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".to_string());
        CliError::Internal(format!("invariant violation: {msg}"))
    })
}

struct Analysis {
    report: Report,
    pipeline: Pipeline,
}

fn analyze_one(path: &Path, args: &AnalyzeArgs) -> Result<Analysis, CliError> {
    let format = resolve_format(path, &args.format)?;
    let input = load_input(path, format)?;
    let t_start = Instant::now();

    let t_build = Instant::now();
    let (complex, points) = match input {
        Input::Picture(pic) => {
            let n = pic.len();
            let k = guarded(move || build_representation(&pic))?;
            (k, n)
        }
        Input::Complex(k) => {
            let n = k.vertex_table().len();
            (k, n)
        }
    };
    let build_ms = ms(t_build);

    let complex = Arc::new(complex);
    let t_reduce = Instant::now();
    let thin = !args.no_thin;
    let pipeline = guarded({
        let complex = Arc::clone(&complex);
        move || full_pipeline(complex, thin)
    })?;
    let reduce_ms = ms(t_reduce);

    let verify = if args.verify {
        let reports = [
            pipeline.to_thinned.verify(),
            pipeline.on_thinned.verify(),
            pipeline.to_homology.verify(),
        ];
        if let Some(bad) = reports.iter().find(|r| !r.passed()) {
            return Err(CliError::Internal(format!(
                "contraction verification failed:\n{bad}"
            )));
        }
        Some(report::VerifyDesc {
            collapse_contraction: true,
            thinning_contraction: true,
            composite_contraction: true,
        })
    } else {
        None
    };

    let betti = pipeline.betti();
    // generator counts must reproduce the Betti numbers
    assert_eq!(betti.0, pipeline.homology.counts());

    // The cup matrix comes from the thinned-level contraction; under
    // --no-thin that is the full complex with the composite maps. The
    // two routes produce equal matrices (the collapse `g` is an
    // inclusion), which the library's tests pin down.
    let t_cup = Instant::now();
    let matrix = guarded({
        let c = &pipeline.on_thinned;
        move || digicup::cup_matrix(c)
    })?;
    let rank = hb1(&matrix);
    let cup_ms = ms(t_cup);

    let t_oracle = Instant::now();
    let oracle_desc = if args.oracle {
        let cross = oracle::betti_oracle(&pipeline.thinned)
            .and_then(|b| oracle::cohomology_cup_oracle(&pipeline.thinned).map(|cup| (b, cup.rank)))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let (oracle_betti, cup_rank) = cross;
        Some(report::OracleDesc {
            on: if args.no_thin { "full" } else { "thinned" }.to_string(),
            betti: oracle_betti.0,
            cup_rank,
            agrees: oracle_betti == betti && cup_rank == rank,
        })
    } else {
        None
    };
    let oracle_ms = ms(t_oracle);

    let name_simplex = {
        let k = &pipeline.complex;
        move |s: &digicup::Simplex| {
            s.vertices()
                .iter()
                .map(|&v| k.vertex_name(v).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        }
    };
    let report = Report {
        schema_version: SCHEMA_VERSION,
        input: report::InputDesc {
            path: path.display().to_string(),
            format: format.to_string(),
            points,
        },
        complex: report::ComplexDesc {
            counts: pipeline.complex.counts(),
            total: pipeline.complex.total(),
        },
        thinned: report::ThinnedDesc {
            counts: pipeline.thinned.counts(),
            total: pipeline.thinned.total(),
            collapse_pairs: pipeline.collapse_seq.len(),
        },
        betti: betti.0,
        generators: report::generator_descriptions(&pipeline),
        cup_matrix: matrix.to_document(name_simplex),
        hb1: rank,
        oracle: oracle_desc,
        verify,
        timings_ms: args.timings.then(|| report::Timings {
            build: build_ms,
            reduce: reduce_ms,
            cup: cup_ms,
            oracle: oracle_ms,
            total: ms(t_start),
        }),
    };
    Ok(Analysis { report, pipeline })
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    if args.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    if args.inputs.len() > 1 && (args.output.is_some() || args.dump_contraction.is_some()) {
        return Err(CliError::Usage(
            "--output and --dump-contraction take a single input".into(),
        ));
    }

    let mut rendered: Vec<Option<Result<String, CliError>>> =
        (0..args.inputs.len()).map(|_| None).collect();
    let jobs = args.jobs.min(args.inputs.len());
    if jobs <= 1 {
        for (i, path) in args.inputs.iter().enumerate() {
            rendered[i] = Some(run_and_render(path, &args));
        }
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots: Vec<std::sync::Mutex<Option<Result<String, CliError>>>> = (0..args.inputs.len())
            .map(|_| std::sync::Mutex::new(None))
            .collect();
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                    if i >= args.inputs.len() {
                        break;
                    }
                    let out = run_and_render(&args.inputs[i], &args);
                    *slots[i].lock().unwrap() = Some(out);
                });
            }
        });
        for (slot, out) in slots.into_iter().zip(rendered.iter_mut()) {
            *out = slot.into_inner().unwrap();
        }
    }

    for slot in rendered {
        let text = slot.expect("every input processed")?;
        match &args.output {
            Some(path) => std::fs::write(path, &text)?,
            None => print!("{text}"),
        }
    }
    Ok(())
}

fn run_and_render(path: &Path, args: &AnalyzeArgs) -> Result<String, CliError> {
    let analysis = analyze_one(path, args)?;
    if let Some(dump) = &args.dump_contraction {
        let doc = analysis.pipeline.to_homology.to_document();
        std::fs::write(dump, serde_json::to_string_pretty(&doc).unwrap() + "\n")?;
    }
    Ok(serde_json::to_string_pretty(&analysis.report).unwrap() + "\n")
}

fn cmd_export_cycles(args: ExportCyclesArgs) -> Result<(), CliError> {
    let analyze_args = AnalyzeArgs {
        inputs: vec![args.input.clone()],
        format: args.format.clone(),
        no_thin: args.no_thin,
        oracle: false,
        verify: false,
        timings: false,
        jobs: 1,
        output: None,
        dump_contraction: None,
    };
    let analysis = analyze_one(&args.input, &analyze_args)?;
    let outcome = export::export_cycles(&analysis.pipeline, &args.export_dir)?;
    if outcome.obj_written {
        eprintln!(
            "digicup: wrote {} and {}",
            outcome.obj_path.display(),
            outcome.json_path.display()
        );
    } else {
        eprintln!(
            "digicup: input has no point geometry; wrote {} only",
            outcome.json_path.display()
        );
    }
    Ok(())
}

fn cmd_convert(args: ConvertArgs) -> Result<(), CliError> {
    let picture = formats::load_picture(&args.input, Format::PtsCubic)?;
    let text = formats::write_pts_bcc(&picture);
    match &args.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
