//! `djhp`: builds `Lambda(A, B)` from two presentation files, verifies it and
//! reports on the derived Jordan-Holder property.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use djhp_core::algebra::{AlgebraDump, FdAlgebra};
use djhp_core::error::PairError;
use djhp_core::field::Field;
use djhp_core::path_algebra::{algebra_from_presentation, DEFAULT_CUTOFF};
use djhp_core::presentation::{emit_presentation, parse_presentation, Format, Presentation};
use djhp_core::report::{build_report, run_verification, LoadedPair, SuiteOptions, UserFlags};

#[derive(Parser)]
#[command(name = "djhp", version, about = "Build and certify Lambda(A, B) from two quiver presentations")]
struct Cli {
    /// Seed for the randomized module-isomorphism sampler.
    #[arg(long, global = true, default_value_t = SuiteOptions::default().seed)]
    seed: u64,
    /// Largest path length tried when certifying admissibility.
    #[arg(long, global = true, default_value_t = DEFAULT_CUTOFF)]
    cutoff: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the structure constants of Lambda, the generated presentation (DSL and DOT) and a summary.
    Build {
        a: PathBuf,
        b: PathBuf,
        /// Output prefix; files are `<prefix>.lambda.json`, `.quiver.qa`, `.quiver.dot`, `.summary.txt`.
        #[arg(short = 'o', long = "output", default_value = "lambda")]
        prefix: PathBuf,
        /// Ground field: `q` or `fp:<p>`.
        #[arg(long, value_parser = parse_field)]
        field: Option<Field>,
    },
    /// Run the full verification suite; exits 3 on the first failing check.
    Verify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Assemble the derived Jordan-Holder report.
    Report {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Declare non-local inputs derived simple.
        #[arg(long, value_enum)]
        assert_derived_simple: Option<Which>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Print a presentation as a DOT graph.
    Dot { file: PathBuf },
    /// Reload a structure-constant dump and check associativity.
    CheckDump { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    A,
    B,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

fn parse_field(s: &str) -> Result<Field, String> {
    match s.to_ascii_lowercase().as_str() {
        "q" => Ok(Field::Rational),
        other => {
            let p = other
                .strip_prefix("fp:")
                .ok_or_else(|| format!("expected `q` or `fp:<p>`, got `{s}`"))?;
            let p: u64 = p.parse().map_err(|_| format!("bad modulus `{p}`"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}

/// Failure classes, mapped to exit codes.
enum Failure {
    Input(anyhow::Error),
    Certification(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Certification(_) => 3,
        }
    }
}

type Outcome = Result<(), Failure>;

fn input<T>(r: anyhow::Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Input)
}

fn read_presentation(path: &Path) -> anyhow::Result<Presentation> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_presentation(&text).map_err(|e| anyhow!("{}:{e}", path.display()))
}

fn load_pair(a: &Path, b: &Path, field: Option<Field>, cutoff: usize) -> Result<LoadedPair, Failure> {
    let mut pa = input(read_presentation(a))?;
    let mut pb = input(read_presentation(b))?;
    if let Some(f) = field {
        pa = input(pa.with_field(f).with_context(|| format!("{}: field conversion", a.display())))?;
        pb = input(pb.with_field(f).with_context(|| format!("{}: field conversion", b.display())))?;
    }
    LoadedPair::new(&pa, &pb, cutoff).map_err(|e| {
        let msg = match &e {
            PairError::Admissibility { which: 'A', source } => format!("{}: {source}", a.display()),
            PairError::Admissibility { which: 'B', source } => format!("{}: {source}", b.display()),
            other => other.to_string(),
        };
        Failure::Input(anyhow!(msg))
    })
}

fn write(path: PathBuf, contents: &str) -> Result<(), Failure> {
    std::fs::write(&path, contents)
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(Failure::Input)
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn build(cli: &Cli, a: &Path, b: &Path, prefix: &Path, field: Option<Field>) -> Outcome {
    let pair = load_pair(a, b, field, cli.cutoff)?;
    let dump = serde_json::to_string_pretty(&pair.lambda.algebra.to_dump()).expect("dump serializes");
    let generated = &pair.generated.presentation;
    let outputs = [
        (with_suffix(prefix, ".lambda.json"), dump),
        (with_suffix(prefix, ".quiver.qa"), emit_presentation(generated, Format::Dsl)),
        (with_suffix(prefix, ".quiver.dot"), emit_presentation(generated, Format::Dot)),
        (with_suffix(prefix, ".summary.txt"), pair.summary()),
    ];
    for (path, contents) in outputs {
        write(path.clone(), &contents)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn verify(cli: &Cli, a: &Path, b: &Path, depth: usize) -> Outcome {
    let pair = load_pair(a, b, None, cli.cutoff)?;
    let opts = SuiteOptions { depth, seed: cli.seed };
    let checks = run_verification(&pair, &opts).map_err(|e| Failure::Certification(e.into()))?;
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            println!("{status} {}", c.name);
        } else {
            println!("{status} {}: {}", c.name, c.detail);
        }
    }
    match checks.iter().find(|c| !c.passed) {
        Some(c) => Err(Failure::Certification(anyhow!("check failed: {}", c.name))),
        None => Ok(()),
    }
}

fn report(cli: &Cli, a: &Path, b: &Path, depth: usize, asserted: Option<Which>, format: OutputFormat) -> Outcome {
    let pair = load_pair(a, b, None, cli.cutoff)?;
    let user = UserFlags {
        derived_simple_a: matches!(asserted, Some(Which::A | Which::Both)),
        derived_simple_b: matches!(asserted, Some(Which::B | Which::Both)),
    };
    let opts = SuiteOptions { depth, seed: cli.seed };
    let r = build_report(&pair, user, &opts).map_err(|e| Failure::Certification(e.into()))?;
    match format {
        OutputFormat::Text => print!("{}", r.render_text()),
        OutputFormat::Json => println!("{}", r.to_json()),
    }
    let broken = [("R1", &r.r1), ("R2", &r.r2)].into_iter().find(|(_, x)| !x.rank_accounting);
    if let Some((name, _)) = broken {
        return Err(Failure::Certification(anyhow!("rank accounting violated for {name}")));
    }
    Ok(())
}

fn dot(cli: &Cli, file: &Path) -> Outcome {
    let p = input(read_presentation(file))?;
    input(algebra_from_presentation(&p, cli.cutoff).map_err(|e| anyhow!("{}: {e}", file.display())))?;
    print!("{}", emit_presentation(&p, Format::Dot));
    Ok(())
}

fn check_dump(file: &Path) -> Outcome {
    let alg = input((|| {
        let text = std::fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
        let dump: AlgebraDump =
            serde_json::from_str(&text).with_context(|| format!("{}: malformed dump", file.display()))?;
        FdAlgebra::from_dump(&dump).with_context(|| format!("{}: invalid algebra data", file.display()))
    })())?;
    if let Some((i, j, k)) = alg.associativity_violation() {
        let label = |x: usize| alg.basis()[x].label.clone();
        return Err(Failure::Certification(anyhow!(
            "associativity fails on ({}, {}, {})",
            label(i),
            label(j),
            label(k)
        )));
    }
    alg.check_axioms()
        .map_err(|e| Failure::Certification(anyhow!("{}: {e}", file.display())))?;
    println!("PASS associativity: {} basis triples", alg.dim().pow(3));
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Build { a, b, prefix, field } => build(cli, a, b, prefix, *field),
        Command::Verify { a, b, depth } => verify(cli, a, b, *depth),
        Command::Report {
            a,
            b,
            depth,
            assert_derived_simple,
            format,
        } => report(cli, a, b, *depth, *assert_derived_simple, *format),
        Command::Dot { file } => dot(cli, file),
        Command::CheckDump { file } => check_dump(file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let code = f.code();
            let (Failure::Input(e) | Failure::Certification(e)) = f;
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
