//! `lefschetz`: analyze fibration specs, classify hypersurfaces and inspect
//! braid words.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::thread;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lefschetz_core::braid::{
    lift_class, mcg_image_trivial, Ambient, BraidError, BraidWord, LiftClass, LiftSearch,
    McgVerdict, ShapedWord, DEFAULT_BUDGET,
};
use lefschetz_core::constructions::{analyze, family_mn, AnalysisOptions, CurveTable};
use lefschetz_core::delpezzo::{classify, DiffeoType};
use lefschetz_core::model::{parse_spec, FibrationSpec};
use lefschetz_core::report::MachineReport;
use lefschetz_core::Error;

const EXIT_OK: u8 = 0;
const EXIT_INVALID_SPEC: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;
const EXIT_UNSUPPORTED: u8 = 4;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "lefschetz",
    version,
    about = "Hyperelliptic Lefschetz fibration engine"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants, the braid lift class and ambient data of specs.
    Analyze(AnalyzeArgs),
    /// Classify a degree-k symplectic hypersurface of CP^3.
    ClassifyHypersurface {
        k: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Permutation, degree and lift-class queries on braid words.
    Braid {
        #[command(subcommand)]
        query: BraidQuery,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Demo {
    Mn,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Spec document (JSON); may be repeated.
    #[arg(long = "spec", value_name = "FILE")]
    specs: Vec<PathBuf>,
    /// Built-in family instead of a spec file.
    #[arg(long, value_enum, conflicts_with = "specs", requires = "n")]
    demo: Option<Demo>,
    #[arg(long, requires = "demo")]
    n: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Exit 3 when the lift class is not decided.
    #[arg(long)]
    strict: bool,
    /// Search budget for the lift-class decision.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Intersection number of Y with the section, if known.
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i64>,
    /// Write one report per input into this directory instead of stdout.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WordArgs {
    #[arg(long)]
    strands: usize,
    #[arg(long, value_enum)]
    ambient: Option<AmbientArg>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Exit 3 on Unknown or Undecided verdicts.
    #[arg(long)]
    strict: bool,
    /// Signed generator indices; commas are accepted as separators.
    #[arg(allow_negative_numbers = true, num_args = 0..)]
    word: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AmbientArg {
    Planar,
    Spherical,
}

#[derive(Subcommand)]
enum BraidQuery {
    /// Image in the symmetric group.
    Perm(WordArgs),
    /// Signed letter count, reduced mod 2(n-1) for spherical words.
    Degree(WordArgs),
    /// Mapping-class triviality and, when trivial, the lift class.
    Liftclass(WordArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    ExitCode::from(match cli.command {
        Command::Analyze(args) => cmd_analyze(&args),
        Command::ClassifyHypersurface { k, format } => cmd_classify(k, format),
        Command::Braid { query } => cmd_braid(query),
    })
}

struct Input {
    source: String,
    stem: String,
    document: String,
}

fn load_inputs(args: &AnalyzeArgs) -> Result<Vec<Input>, String> {
    if let Some(Demo::Mn) = args.demo {
        let n = args.n.expect("clap enforces --n with --demo");
        let spec = family_mn(n, &CurveTable::shipped());
        return Ok(vec![Input {
            source: format!("demo:mn:{n}"),
            stem: format!("mn_{n}"),
            document: spec.to_document(),
        }]);
    }
    if args.specs.is_empty() {
        return Err("give --spec FILE or --demo mn --n N".to_owned());
    }
    args.specs
        .iter()
        .map(|path| {
            let document = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            Ok(Input {
                source: path.display().to_string(),
                stem: path
                    .file_stem()
                    .map_or_else(|| "spec".to_owned(), |s| s.to_string_lossy().into_owned()),
                document,
            })
        })
        .collect()
}

fn spec_for(input: &Input, demo: Option<(Demo, i64)>) -> Result<FibrationSpec, Error> {
    match demo {
        // Keep the family's provenance, which a parsed document cannot carry.
        Some((Demo::Mn, n)) => Ok(family_mn(n, &CurveTable::shipped())),
        None => Ok(parse_spec(&input.document)?),
    }
}

fn cmd_analyze(args: &AnalyzeArgs) -> u8 {
    let inputs = match load_inputs(args) {
        Ok(inputs) => inputs,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    if let Some(dir) = &args.out {
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("error: cannot create {}: {e}", dir.display());
            return EXIT_USAGE;
        }
    }
    let options = AnalysisOptions {
        search: LiftSearch {
            budget: args.budget,
            schedule_seed: None,
        },
        m: args.m,
    };
    let demo = args.demo.zip(args.n);
    let results: Vec<Result<MachineReport, Error>> = thread::scope(|s| {
        let handles: Vec<_> = inputs
            .iter()
            .map(|input| {
                s.spawn(move || {
                    let spec = spec_for(input, demo)?;
                    let analysis = analyze(&spec, &options)?;
                    Ok(MachineReport::new(&input.source, &input.document, analysis))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("analysis thread panicked"))
            .collect()
    });

    let mut code = EXIT_OK;
    for (input, result) in inputs.iter().zip(results) {
        let report = match result {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {}: {e}", input.source);
                code = code.max(EXIT_INVALID_SPEC);
                continue;
            }
        };
        // Text reports on stdout already list their warnings.
        if args.format == Format::Machine || args.out.is_some() {
            for w in &report.analysis.warnings {
                eprintln!("warning: {}: {w}", input.source);
            }
        }
        let (body, ext) = match args.format {
            Format::Machine => (report.encode(), "json"),
            Format::Text => (report.render_text(), "txt"),
        };
        match &args.out {
            Some(dir) => {
                let path = dir.join(format!("{}.{ext}", input.stem));
                if let Err(e) = write_atomically(dir, &path, &body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
            None => print!("{body}"),
        }
        if report.exit_code(args.strict) != 0 {
            code = if code == EXIT_INVALID_SPEC {
                code
            } else {
                EXIT_UNDECIDED
            };
        }
    }
    code
}

fn write_atomically(dir: &Path, path: &Path, body: &str) -> std::io::Result<()> {
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(body.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn cmd_classify(k: u64, format: Format) -> u8 {
    if k == 0 {
        eprintln!("error: degree must be at least 1");
        return EXIT_USAGE;
    }
    let data = classify(k);
    match format {
        Format::Machine => {
            let mut s = serde_json::to_string_pretty(&data).expect("serializable");
            s.push('\n');
            print!("{s}");
        }
        Format::Text => match data.diffeo_type {
            DiffeoType::Unsupported => println!(
                "Unsupported: degree {k}, {}",
                data.reason.as_deref().unwrap_or("no classification")
            ),
            t => {
                let b2m = data.b2minus.expect("set for supported degrees");
                let spin = if data.spin == Some(true) {
                    " (spin)"
                } else {
                    ""
                };
                println!("{t}{spin}, b2- = {b2m}");
                println!(
                    "c1 = {} eta, c2 = {} eta^2, chi = {}, sigma = {}",
                    data.c1_coefficient.expect("set"),
                    data.c2_coefficient.expect("set"),
                    data.chi.expect("set"),
                    data.sigma.expect("set")
                );
            }
        },
    }
    if data.diffeo_type == DiffeoType::Unsupported {
        EXIT_UNSUPPORTED
    } else {
        EXIT_OK
    }
}

fn parse_word(args: &WordArgs, default: Ambient) -> Result<BraidWord, BraidError> {
    let ambient = match args.ambient {
        Some(AmbientArg::Planar) => Ambient::Planar,
        Some(AmbientArg::Spherical) => Ambient::Spherical,
        None => default,
    };
    BraidWord::parse(args.strands, ambient, &args.word.join(" "))
}

fn cmd_braid(query: BraidQuery) -> u8 {
    let (args, default) = match &query {
        BraidQuery::Perm(a) | BraidQuery::Degree(a) => (a, Ambient::Planar),
        BraidQuery::Liftclass(a) => (a, Ambient::Spherical),
    };
    let word = match parse_word(args, default) {
        Ok(w) => w,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match query {
        BraidQuery::Perm(_) => {
            println!("permutation: {}", word.permutation());
            EXIT_OK
        }
        BraidQuery::Degree(_) => {
            println!("degree: {}", word.degree());
            EXIT_OK
        }
        BraidQuery::Liftclass(ref a) => liftclass(&word, a),
    }
}

fn liftclass(word: &BraidWord, args: &WordArgs) -> u8 {
    if word.ambient() != Ambient::Spherical {
        eprintln!("error: liftclass needs --ambient spherical");
        return EXIT_USAGE;
    }
    println!("permutation: {}", word.permutation());
    println!("degree: {}", word.degree());
    let mcg = mcg_image_trivial(word, args.budget);
    let verdict = match mcg.verdict {
        McgVerdict::Trivial => "true",
        McgVerdict::Nontrivial => "false",
        McgVerdict::Unknown => "unknown",
    };
    println!("mcg-trivial: {verdict}");
    if mcg.verdict != McgVerdict::Trivial {
        return if args.strict && mcg.verdict == McgVerdict::Unknown {
            EXIT_UNDECIDED
        } else {
            EXIT_OK
        };
    }
    let search = LiftSearch {
        budget: args.budget,
        schedule_seed: None,
    };
    match lift_class(&ShapedWord::new(word.clone()), &search) {
        Ok(d) => {
            let class = match d.class {
                LiftClass::Trivial => "Trivial",
                LiftClass::FullTwist => "FullTwist",
                LiftClass::Undecided => "Undecided",
            };
            println!("lift class: {class}");
            if args.strict && d.class == LiftClass::Undecided {
                EXIT_UNDECIDED
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_UNDECIDED
        }
    }
}
