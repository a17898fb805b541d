//! Command-line driver: recognize instances, validate and render drawings,
//! run the brute-force oracle, generate instances, and run the corpus
//! report.
//!
//! Exit codes: 0 accept/valid, 1 reject/invalid, 2 usage or input error,
//! 3 unknown (oracle budget exhausted).

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use uer::drawing::{canonicalize, validate, Model};
use uer::io::{drawing_from_json, drawing_to_json, emit_instance, parse_instance, Instance};
use uer::oracle::{
    brute_recognize, enumerate_drawings, gen_instance, EnumerationBudget, InstanceKind,
    OracleVerdict,
};
use uer::outcome::{Constraints, Verdict};
use uer::recognize::{recognize, RecognizerVariant};
use uer::svg::{render_svg, RenderOptions};

#[derive(Parser)]
#[command(
    name = "uer",
    about = "recognize and construct unit edge-length rectilinear drawings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether an instance admits a drawing; emit the drawing on accept
    Recognize(RecognizeArgs),
    /// Validate a drawing file against its model
    Validate { file: PathBuf },
    /// Render a drawing file to SVG
    Render(RenderArgs),
    /// Brute-force recognition by exhaustive enumeration, or corpus dump
    Oracle(OracleArgs),
    /// Generate an instance (optionally with its witness drawing)
    Gen(GenArgs),
    /// Run the condensed verification corpus and print a report table
    Corpus,
}

#[derive(Args)]
struct RecognizeArgs {
    /// instance file (see the README for the format)
    file: PathBuf,
    /// drawing model to test (defaults to the instance's model section, then rf)
    #[arg(long)]
    model: Option<Model>,
    #[arg(long, default_value = "auto")]
    variant: RecognizerVariant,
    /// prescribed external cycle, overriding the instance section
    #[arg(long, value_name = "IDS", allow_hyphen_values = false)]
    external: Option<String>,
    /// prescribed corners, overriding the instance section
    #[arg(long, value_name = "IDS")]
    corners: Option<String>,
    /// write the accepted drawing here (JSON)
    #[arg(long)]
    out: Option<PathBuf>,
    /// worker count for the assignment search (default: UER_JOBS or 1)
    #[arg(long)]
    jobs: Option<usize>,
    /// print run statistics to stderr
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct RenderArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 40)]
    scale: i64,
    #[arg(long, default_value_t = true)]
    show_crossings: bool,
    #[arg(long, default_value_t = false)]
    show_labels: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// instance file; omit with --enumerate to dump the corpus
    file: Option<PathBuf>,
    /// model (defaults to the instance's model section, then rf)
    #[arg(long)]
    model: Option<Model>,
    #[arg(long, default_value_t = 3)]
    max_width: i64,
    #[arg(long, default_value_t = 3)]
    max_height: i64,
    #[arg(long, default_value_t = 24)]
    max_vertices: usize,
    /// time budget in seconds; exceeding it yields verdict "unknown"
    #[arg(long)]
    time_limit: Option<f64>,
    /// dump every enumerated canonical drawing, one JSON document per line
    #[arg(long)]
    enumerate: bool,
}

#[derive(Args)]
struct GenArgs {
    /// grid MxN | cycle K | sample
    kind: String,
    /// grid: M N; cycle: K; sample: none
    params: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "rf")]
    model: Model,
    #[arg(long, default_value_t = 3)]
    max_width: i64,
    #[arg(long, default_value_t = 3)]
    max_height: i64,
    #[arg(long, default_value_t = 24)]
    max_vertices: usize,
    /// write the witness drawing here (JSON), when one exists
    #[arg(long)]
    drawing_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Recognize(args) => cmd_recognize(args),
        Command::Validate { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| e.to_string())?;
            let drawing = drawing_from_json(&text)?;
            let report = validate(&drawing);
            if report.valid {
                println!("valid");
                Ok(ExitCode::SUCCESS)
            } else {
                for v in &report.violations {
                    println!(
                        "{}: {}",
                        serde_json::to_string(&v.code).unwrap().trim_matches('"'),
                        v.description
                    );
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Render(args) => {
            let text = std::fs::read_to_string(&args.file).map_err(|e| e.to_string())?;
            let drawing = drawing_from_json(&text)?;
            let svg = render_svg(
                &drawing,
                &RenderOptions {
                    scale: args.scale,
                    show_crossings: args.show_crossings,
                    show_labels: args.show_labels,
                },
            )
            .map_err(|e| e.to_string())?;
            write_or_print(&args.out, &svg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle(args) => cmd_oracle(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Corpus => {
            let rows = uer::corpus::run_report();
            let mut all = true;
            println!("{:<14} {:<6} detail", "check", "result");
            for row in &rows {
                all &= row.pass;
                println!(
                    "{:<14} {:<6} {}",
                    row.name,
                    if row.pass { "pass" } else { "FAIL" },
                    row.detail
                );
            }
            Ok(if all {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn cmd_recognize(args: RecognizeArgs) -> Result<ExitCode, String> {
    let text = std::fs::read_to_string(&args.file).map_err(|e| e.to_string())?;
    let inst = parse_instance(&text).map_err(|e| e.to_string())?;
    let model = args.model.or(inst.model).unwrap_or(Model::Rf);

    let mut constraints = inst.constraints.clone();
    if let Some(ext) = &args.external {
        constraints.external_cycle = Some(parse_id_list(ext)?);
    }
    if let Some(corners) = &args.corners {
        let ids = parse_id_list(corners)?;
        if ids.len() != 4 {
            return Err("--corners needs exactly 4 ids".into());
        }
        constraints.corners = Some([ids[0], ids[1], ids[2], ids[3]]);
    }
    let jobs = args
        .jobs
        .or_else(|| std::env::var("UER_JOBS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1);

    let outcome = recognize(&inst.graph, model, args.variant, &constraints, jobs)
        .map_err(|e| e.to_string())?;
    if args.stats {
        eprintln!("{}", serde_json::to_string(&outcome.stats).unwrap());
    }
    match outcome.verdict {
        Verdict::Accept(drawing) => {
            let json = drawing_to_json(&drawing);
            match &args.out {
                Some(path) => std::fs::write(path, &json).map_err(|e| e.to_string())?,
                None => println!("{json}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Verdict::Reject(reasons) => {
            let names: Vec<String> = reasons
                .iter()
                .map(|r| {
                    serde_json::to_string(r)
                        .unwrap()
                        .trim_matches('"')
                        .to_string()
                })
                .collect();
            println!("reject: {}", names.join(", "));
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_oracle(args: OracleArgs) -> Result<ExitCode, String> {
    let mut budget = EnumerationBudget::new(args.max_width, args.max_height, args.max_vertices);
    if let Some(secs) = args.time_limit {
        budget = budget.with_time_limit(Duration::from_secs_f64(secs));
    }
    let flag_model = args.model.unwrap_or(Model::Rf);
    if args.enumerate {
        let result = enumerate_drawings(&budget, flag_model);
        for d in &result.drawings {
            println!("{}", drawing_to_json(d));
        }
        if !result.complete {
            eprintln!("warning: enumeration incomplete (time limit)");
            return Ok(ExitCode::from(3));
        }
        return Ok(ExitCode::SUCCESS);
    }
    let file = args
        .file
        .ok_or("oracle needs an instance file or --enumerate")?;
    let text = std::fs::read_to_string(&file).map_err(|e| e.to_string())?;
    let inst = parse_instance(&text).map_err(|e| e.to_string())?;
    let model = args.model.or(inst.model).unwrap_or(Model::Rf);
    match brute_recognize(&inst.graph, &budget, model, &inst.constraints) {
        OracleVerdict::Accept(d) => {
            println!("{}", drawing_to_json(&d));
            Ok(ExitCode::SUCCESS)
        }
        OracleVerdict::Reject => {
            println!("reject");
            Ok(ExitCode::from(1))
        }
        OracleVerdict::Unknown => {
            println!("unknown");
            Ok(ExitCode::from(3))
        }
    }
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode, String> {
    let kind = match args.kind.as_str() {
        "grid" => {
            let (m, n) = match args.params[..] {
                [m, n] => (m, n),
                _ => return Err("gen grid needs M and N".into()),
            };
            InstanceKind::Grid { m, n }
        }
        "cycle" => {
            let k = match args.params[..] {
                [k] => k,
                _ => return Err("gen cycle needs K".into()),
            };
            InstanceKind::Cycle { k }
        }
        "sample" => InstanceKind::Sampled {
            seed: args.seed,
            budget: EnumerationBudget::new(args.max_width, args.max_height, args.max_vertices),
            model: args.model,
        },
        other => return Err(format!("unknown kind `{other}` (grid|cycle|sample)")),
    };
    let (graph, drawing) = gen_instance(&kind)?;
    let inst = Instance {
        graph,
        constraints: Constraints::none(),
        model: Some(args.model),
    };
    write_or_print(&args.out, &emit_instance(&inst))?;
    if let Some(path) = &args.drawing_out {
        match drawing {
            Some(d) => std::fs::write(path, drawing_to_json(&canonicalize(&d)))
                .map_err(|e| e.to_string())?,
            None => return Err("no witness drawing exists for this instance".into()),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_id_list(text: &str) -> Result<Vec<usize>, String> {
    text.split([' ', ','])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("bad vertex id `{t}`")))
        .collect()
}

fn write_or_print(path: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| e.to_string()),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
