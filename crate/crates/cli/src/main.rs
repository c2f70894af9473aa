use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lens_surgery::lattice::{
    check_lemma, check_regions, render, trace_curves, Lattice, MatrixKind, RenderFormat, Window,
};
use lens_surgery::sweep::{
    corollary_violations, run_sweep, sweep_records, theorem_violations, ReportFormat, Violation,
};
use lens_surgery::{canonicalize_dual_class, polynomial, Error, SurgeryParams, SweepConfig};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "lenspoly",
    version,
    about = "Lens surgery Alexander polynomials and their lattice matrices"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print k2, e, m, q, q2 and c.
    Invariants(ParamArgs),
    /// Print the Alexander polynomial.
    Poly(ParamArgs),
    /// Print a window of the A or dA matrix.
    Matrix {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "A")]
        kind: MatrixKind,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Trace the non-zero curves in a window of A.
    Curve {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        window: WindowArgs,
        /// Also write an SVG rendering to this path.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Check the (-1, +1) pattern of dA against p < 3 k2 and adjacent zeros.
    Lemma(ParamArgs),
    /// Write a record per canonical parameter up to --max-p.
    Sweep(SweepArgs),
    /// Check the top-coefficient theorem and its corollary up to --max-p.
    Verify {
        #[arg(long, default_value_t = 600)]
        max_p: i64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(short = 'p', allow_negative_numbers = true)]
    p: i64,
    #[arg(short = 'k', allow_negative_numbers = true)]
    k: i64,
}

#[derive(Args, Debug)]
struct WindowArgs {
    #[arg(long, allow_negative_numbers = true)]
    i0: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    i1: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    j0: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    j1: Option<i64>,
}

impl WindowArgs {
    /// Unset bounds fall back to the fundamental window.
    fn resolve(&self, lattice: &Lattice) -> Window {
        let f = lattice.fundamental_window();
        Window::new(
            self.i0.unwrap_or(f.i0),
            self.i1.unwrap_or(f.i1),
            self.j0.unwrap_or(f.j0),
            self.j1.unwrap_or(f.j1),
        )
    }
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value_t = 600)]
    max_p: i64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value = "sweep.csv")]
    out: PathBuf,
    #[arg(long, default_value = "sweep.checkpoint.json")]
    checkpoint: PathBuf,
    /// Ignore an existing checkpoint and start again at p = 2.
    #[arg(long)]
    from_scratch: bool,
    /// Report encoding: csv or jsonl.
    #[arg(long, default_value = "csv")]
    report_format: ReportFormat,
    /// Stop after this p, leaving a checkpoint to resume from.
    #[arg(long)]
    stop_after: Option<i64>,
    /// Write per-record timings (p,k,elapsed_us) to this file.
    #[arg(long, value_name = "PATH")]
    timings: Option<PathBuf>,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io { .. } | Error::CorruptCheckpoint { .. } => 3,
        Error::Integrity { .. } | Error::NoRegion { .. } => 4,
        _ => 2,
    }
}

fn resolve(args: &ParamArgs) -> Result<SurgeryParams, Error> {
    let params = canonicalize_dual_class(args.p, args.k)?;
    if params.k() != args.k {
        eprintln!(
            "note: k = {} normalized to its canonical representative; using (p, k) = {params}",
            args.k
        );
    }
    Ok(params)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output serializes")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let format = cli.format;
    match &cli.command {
        Command::Invariants(args) => {
            let params = resolve(args)?;
            let inv = params.invariants();
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out<T> {
                        p: i64,
                        k: i64,
                        #[serde(flatten)]
                        inv: T,
                    }
                    println!(
                        "{}",
                        json(&Out {
                            p: params.p(),
                            k: params.k(),
                            inv
                        })
                    );
                }
                Format::Text => {
                    println!("p = {}\nk = {}", params.p(), params.k());
                    println!("k2 = {}\ne = {}\nm = {}", inv.k2, inv.e, inv.m);
                    println!("q = {}\nq2 = {}\nc = {}", inv.q, inv.q2, inv.c);
                }
            }
        }
        Command::Poly(args) => {
            let params = resolve(args)?;
            let poly = polynomial(params)?;
            match format {
                Format::Json => println!("{}", json(&poly)),
                Format::Text => println!("{poly}"),
            }
        }
        Command::Matrix {
            params,
            kind,
            window,
        } => {
            let lattice = Lattice::new(resolve(params)?)?;
            let view = lattice.view(*kind, window.resolve(&lattice))?;
            match format {
                Format::Json => println!("{}", view.to_json()),
                Format::Text => print!("{}", render(&view, &[], None, RenderFormat::Ascii)),
            }
        }
        Command::Curve {
            params,
            window,
            svg,
        } => {
            let lattice = Lattice::new(resolve(params)?)?;
            let window = window.resolve(&lattice);
            let view = lattice.view(MatrixKind::A, window)?;
            let curves = trace_curves(&lattice, window);
            let region = lattice.region().ok();
            let check = check_regions(&lattice, window);
            if let Some(path) = svg {
                let doc = render(&view, &curves, region.as_ref(), RenderFormat::Svg);
                fs::write(path, doc).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?;
            }
            match format {
                Format::Json => {
                    println!(
                        "{}",
                        json(&serde_json::json!({
                            "p": lattice.params().p(),
                            "k": lattice.params().k(),
                            "window": window,
                            "curves": curves,
                            "check": check,
                        }))
                    );
                }
                Format::Text => {
                    print!("{}", render(&view, &curves, None, RenderFormat::Ascii));
                    if region.is_none() {
                        println!("trivial polynomial: no non-zero region");
                    }
                    for c in &curves {
                        let translate = c.translate.map_or("mixed".to_string(), |t| t.to_string());
                        let (first, last) = (c.arrows[0], c.arrows[c.arrows.len() - 1]);
                        println!(
                            "curve {}: translate {translate}, {} arrows, ({}, {}) to ({}, {})",
                            c.id,
                            c.arrows.len(),
                            first.i,
                            first.j,
                            last.i,
                            last.j
                        );
                    }
                    if region.is_some() {
                        println!("outside region: {}", check.outside.len());
                        match check.defect {
                            None => println!(
                                "components per translate: {}",
                                check.components_per_translate
                            ),
                            Some(d) => println!("curve defect: {d:?}"),
                        }
                    }
                }
            }
        }
        Command::Lemma(args) => {
            let params = resolve(args)?;
            let report = check_lemma(params);
            match format {
                Format::Json => println!("{}", json(&report)),
                Format::Text => {
                    match report.witness {
                        Some((i, j)) => println!("hypothesis: found at ({i}, {j})"),
                        None => println!("hypothesis: not found"),
                    }
                    println!("p < 3 k2: {}", report.bound_ok);
                    println!("no adjacent zeros: {}", report.no_adjacent_zeros);
                    println!("holds: {}", report.holds());
                }
            }
            if !report.holds() {
                return Ok(1);
            }
        }
        Command::Sweep(args) => {
            let config = SweepConfig {
                max_p: args.max_p,
                jobs: args.jobs,
                out: args.out.clone(),
                checkpoint: args.checkpoint.clone(),
                format: args.report_format,
                from_scratch: args.from_scratch,
                stop_after: args.stop_after,
                timings: args.timings.clone(),
            };
            let summary = run_sweep(&config)?;
            match format {
                Format::Json => println!(
                    "{}",
                    json(&serde_json::json!({
                        "completed_p": summary.completed_p,
                        "finished": summary.finished,
                        "records": summary.records,
                        "theorem_violations": summary.theorem.len(),
                        "corollary_violations": summary.corollary.len(),
                        "lemma_violations": summary.lemma.len(),
                    }))
                ),
                Format::Text => {
                    println!(
                        "completed p = {} of {} ({} records, resumed from p = {})",
                        summary.completed_p, config.max_p, summary.records, summary.resumed_from
                    );
                    print_counts("theorem", &summary.theorem);
                    print_counts("corollary", &summary.corollary);
                    print_counts("lemma", &summary.lemma);
                }
            }
            if summary.has_violations() {
                return Ok(1);
            }
        }
        Command::Verify { max_p, jobs } => {
            if *max_p < 2 || *jobs == 0 {
                return Err(Error::Config(
                    "--max-p must be at least 2 and --jobs at least 1".into(),
                ));
            }
            let pool = rayon_pool(*jobs)?;
            let records = pool.install(|| sweep_records(*max_p))?;
            let theorem = theorem_violations(&records);
            let corollary = corollary_violations(&records);
            match format {
                Format::Json => println!(
                    "{}",
                    json(&serde_json::json!({
                        "max_p": max_p,
                        "records": records.len(),
                        "theorem": theorem,
                        "corollary": corollary,
                    }))
                ),
                Format::Text => {
                    println!(
                        "checked {} canonical parameters with p <= {max_p}",
                        records.len()
                    );
                    print_counts("theorem", &theorem);
                    print_counts("corollary", &corollary);
                    for v in theorem.iter().chain(&corollary) {
                        println!(
                            "violation ({}, {}) g = {} {:?}{}",
                            v.p,
                            v.k,
                            v.g,
                            v.kind,
                            if v.admissible {
                                " [flat, alternating]"
                            } else {
                                ""
                            }
                        );
                    }
                }
            }
            if !(theorem.is_empty() && corollary.is_empty()) {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn print_counts(label: &str, violations: &[Violation]) {
    let admissible = violations.iter().filter(|v| v.admissible).count();
    println!(
        "{label} violations: {} ({admissible} with a flat alternating polynomial)",
        violations.len()
    );
}

fn rayon_pool(jobs: usize) -> Result<rayon::ThreadPool, Error> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(e.to_string()))
}
