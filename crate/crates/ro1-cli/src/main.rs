//! `ro1`: analyze rank-one transformations given by cutting and spacer
//! parameters.
//!
//! Exit codes: 0 = True/success, 1 = False, 2 = Unknown, 3 = input error,
//! 4 = cap or horizon error. Diagnostics go to stderr only.

mod paramfile;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use ro1::decide::{
    decide_msj, decide_total_ergodicity, decide_trivial_centralizer, Certificate, Status, Verdict,
};
use ro1::lattice::{
    canonicalize, enumerate_av, enumerate_av_oracle, CanonicalStatus, LatticeError,
};
use ro1::params::{heights, validate_spec, ParamError, ParamSpec};
use ro1::tower::{
    level_decompose, return_levels, shift_overlap, tower_stats, LevelClass, Measure, TowerError,
};
use ro1::words::{expand, parse_blocks, Word, WordError, WordHandle};
use ro1::{fixtures, DEFAULT_CAP};

const EXIT_TRUE: u8 = 0;
const EXIT_FALSE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_CAP: u8 = 4;

#[derive(Parser)]
#[command(name = "ro1", version, about = "Rank-one transformation analyzer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a parameter file is well-formed and satisfies the stage
    /// invariants.
    Validate { file: PathBuf },
    /// Print the tower heights h_0 ..= h_n, one per line.
    Heights {
        file: PathBuf,
        #[arg(long)]
        stages: usize,
    },
    /// Materialize and print the generating word v_n.
    Expand {
        file: PathBuf,
        #[arg(long)]
        stage: usize,
        /// Materialization cap in symbols (default: RO1_CAP or 2^24).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Greedily parse TEXT as blocks of BLOCK separated by 1-runs.
    Parse { text: String, block: String },
    /// Count occurrences of a pattern in the generating word v_n.
    Count {
        file: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        stage: usize,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Enumerate the words the rank-one word is built from, up to a length.
    Av {
        file: PathBuf,
        /// Length cap for enumerated words.
        #[arg(long, default_value_t = 1 << 14)]
        cap: usize,
        /// Use the brute-force prefix-parsing oracle instead of the fast path.
        #[arg(long)]
        oracle: bool,
    },
    /// Compute the canonical cutting and spacer parameters.
    Canon {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Length cap for the judged candidate region.
        #[arg(long, default_value_t = 1 << 20)]
        cap: usize,
    },
    /// Decide a property of the transformation.
    Decide {
        property: Property,
        file: PathBuf,
        /// Machine-readable one-line output: tab-separated key=value pairs.
        #[arg(long)]
        porcelain: bool,
    },
    /// Print stage height, base measure, and tower mass.
    Tower {
        file: PathBuf,
        #[arg(long)]
        stage: usize,
    },
    /// Print the return levels of B_M into B_N, one per line.
    Levels {
        file: PathBuf,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Classify one level of a tower against a target stage, or report the
    /// shift-overlap bound of a constant-spacer stage.
    Overlap {
        file: PathBuf,
        /// Target stage N.
        #[arg(long)]
        target: usize,
        /// Constant-spacer stage n.
        #[arg(long)]
        stage: usize,
    },
    /// Classify level l of the stage-M tower against stage N.
    Level {
        file: PathBuf,
        #[arg(long)]
        stage: usize,
        #[arg(long)]
        level: u64,
        #[arg(long)]
        target: usize,
    },
    /// Emit a built-in example as a parameter file.
    Example {
        name: ExampleName,
        /// Stage count for generated prefixes (djr).
        #[arg(long, default_value_t = 16)]
        stages: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Centralizer,
    Ergodic,
    Weakmixing,
    Msj,
    Canonbounded,
}

impl Property {
    fn name(self) -> &'static str {
        match self {
            Property::Centralizer => "centralizer",
            Property::Ergodic => "ergodic",
            Property::Weakmixing => "weakmixing",
            Property::Msj => "msj",
            Property::Canonbounded => "canonbounded",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    Chacon,
    Odometer2,
    Djr,
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: EXIT_INPUT,
        }
    }

    fn cap(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: EXIT_CAP,
        }
    }
}

impl From<ParamError> for CliError {
    fn from(e: ParamError) -> Self {
        match e {
            ParamError::BeyondHorizon { .. } => CliError::cap(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        match e {
            WordError::CapExceeded { .. } => CliError::cap(e.to_string()),
            WordError::Param(p) => p.into(),
            WordError::NotAStageWord => CliError::input(e.to_string()),
        }
    }
}

impl From<TowerError> for CliError {
    fn from(e: TowerError) -> Self {
        match e {
            TowerError::CapExceeded { .. } => CliError::cap(e.to_string()),
            TowerError::Param(p) => p.into(),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Word(w) => w.into(),
            LatticeError::Param(p) => p.into(),
            LatticeError::LatticeViolation { .. } => CliError::cap(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("ro1: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn default_cap() -> Result<usize, CliError> {
    match std::env::var("RO1_CAP") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::input(format!("RO1_CAP is not a decimal integer: {v:?}"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn load_spec(path: &Path) -> Result<ParamSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let raw = paramfile::parse_param_file(&text)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let spec =
        validate_spec(&raw).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Ok(spec)
}

fn parse_word(s: &str, what: &str) -> Result<Word, CliError> {
    Word::parse_str(s).ok_or_else(|| CliError::input(format!("{what} is not a 0/1 word: {s:?}")))
}

fn measure_str(m: &Measure) -> String {
    match m {
        Measure::Exact(v) => v.to_string(),
        Measure::Bounded { upper } => format!("[0, {upper}]"),
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Validate { file } => {
            let spec = load_spec(&file)?;
            let kind = if spec.is_eventually_periodic() {
                "eventually-periodic"
            } else {
                "horizon-limited"
            };
            println!(
                "ok: {} prefix stages, {} ({kind})",
                spec.prefix().len(),
                spec.tail()
                    .map_or("no tail".to_string(), |t| format!("{}-stage tail", t.len())),
            );
            Ok(EXIT_TRUE)
        }
        Command::Heights { file, stages } => {
            let spec = load_spec(&file)?;
            for h in heights(&spec, stages)?.as_slice() {
                println!("{h}");
            }
            Ok(EXIT_TRUE)
        }
        Command::Expand { file, stage, cap } => {
            let spec = load_spec(&file)?;
            let cap = cap.map_or_else(default_cap, Ok)?;
            let word = expand(&WordHandle::new(&spec, stage)?, cap)?;
            println!("{word}");
            Ok(EXIT_TRUE)
        }
        Command::Parse { text, block } => {
            let text = parse_word(&text, "text")?;
            let block = parse_word(&block, "block")?;
            match parse_blocks(&text, &block) {
                Some(d) => {
                    let spacers: Vec<String> = d.spacers.iter().map(u64::to_string).collect();
                    println!(
                        "built=true\tcount={}\tspacers={}",
                        d.count,
                        spacers.join(",")
                    );
                    Ok(EXIT_TRUE)
                }
                None => {
                    println!("built=false");
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::Count {
            file,
            pattern,
            stage,
            cap,
        } => {
            let spec = load_spec(&file)?;
            let cap = cap.map_or_else(default_cap, Ok)?;
            let pattern = parse_word(&pattern, "pattern")?;
            let handle = WordHandle::new(&spec, stage)?;
            println!("{}", ro1::words::count_occurrences(&pattern, &handle, cap)?);
            Ok(EXIT_TRUE)
        }
        Command::Av { file, cap, oracle } => {
            let spec = load_spec(&file)?;
            let mat_cap = default_cap()?;
            let set = if oracle {
                enumerate_av_oracle(&spec, cap, mat_cap)?
            } else {
                enumerate_av(&spec, cap, mat_cap)?
            };
            for member in &set.members {
                println!("{member}");
            }
            eprintln!(
                "# {} members, horizon stage {}, length bound {}",
                set.members.len(),
                set.horizon.stage,
                set.horizon.length_bound
            );
            Ok(EXIT_TRUE)
        }
        Command::Canon { file, depth, cap } => {
            let spec = load_spec(&file)?;
            let result = canonicalize(&spec, depth, cap)?;
            for stage in &result.stages {
                println!("{}", paramfile::render_stage(stage));
            }
            let status = match result.status {
                CanonicalStatus::CompleteToDepth => "complete-to-depth",
                CanonicalStatus::HorizonLimited => "horizon-limited",
                CanonicalStatus::PeriodicWord => "periodic-word",
            };
            println!("# status: {status}");
            Ok(EXIT_TRUE)
        }
        Command::Decide {
            property,
            file,
            porcelain,
        } => {
            let spec = load_spec(&file)?;
            let verdict = match property {
                Property::Centralizer => decide_trivial_centralizer(&spec),
                Property::Ergodic => decide_total_ergodicity(&spec),
                Property::Weakmixing => ro1::decide::decide_weak_mixing(&spec),
                Property::Msj => decide_msj(&spec),
                Property::Canonbounded => ro1::lattice::is_canonically_bounded(&spec),
            };
            if porcelain {
                println!("{}", porcelain_line(property, &verdict));
            } else {
                print!("{}", human_report(property, &verdict));
            }
            Ok(match verdict.status {
                Status::True => EXIT_TRUE,
                Status::False => EXIT_FALSE,
                Status::Unknown => EXIT_UNKNOWN,
            })
        }
        Command::Tower { file, stage } => {
            let spec = load_spec(&file)?;
            let stats = tower_stats(&spec, stage)?;
            println!("stage: {}", stats.stage);
            println!("height: {}", stats.height);
            println!("base_measure: {}", measure_str(&stats.base_measure));
            println!("tower_mass: {}", measure_str(&stats.tower_mass));
            Ok(EXIT_TRUE)
        }
        Command::Levels {
            file,
            from,
            to,
            cap,
        } => {
            let spec = load_spec(&file)?;
            if from > to {
                return Err(CliError::input("--from must be at most --to"));
            }
            let cap = cap.map_or_else(default_cap, Ok)?;
            for l in &return_levels(&spec, from, to, cap)?.positions {
                println!("{l}");
            }
            Ok(EXIT_TRUE)
        }
        Command::Overlap {
            file,
            target,
            stage,
        } => {
            let spec = load_spec(&file)?;
            if target > stage {
                return Err(CliError::input("--target must be at most --stage"));
            }
            let so = shift_overlap(&spec, target, stage)?;
            println!("r: {}", so.r);
            println!("overlap_lower_bound: {}", so.overlap_lower_bound);
            println!("defect_upper_bound: {}", so.defect_upper_bound);
            Ok(EXIT_TRUE)
        }
        Command::Level {
            file,
            stage,
            level,
            target,
        } => {
            let spec = load_spec(&file)?;
            if target > stage {
                return Err(CliError::input("--target must be at most --stage"));
            }
            match level_decompose(&spec, stage, &BigUint::from(level), target)? {
                LevelClass::Block {
                    return_level,
                    offset,
                } => println!("block\treturn_level={return_level}\toffset={offset}"),
                LevelClass::Spacer {
                    stage,
                    index,
                    depth,
                } => println!("spacer\tstage={stage}\tindex={index}\tdepth={depth}"),
            }
            Ok(EXIT_TRUE)
        }
        Command::Example { name, stages } => {
            let spec = match name {
                ExampleName::Chacon => fixtures::chacon(),
                ExampleName::Odometer2 => fixtures::odometer2(),
                ExampleName::Djr => fixtures::djr_prefix(stages),
            };
            print!("{}", paramfile::render_spec(&spec));
            Ok(EXIT_TRUE)
        }
    }
}

/// Certificate fields as tab-separated `key=value` pairs, deterministic
/// order.
fn certificate_fields(cert: &Certificate, out: &mut String) {
    match cert {
        Certificate::DistinctSpacers { k, first, second } => {
            let _ = write!(
                out,
                "\tk={k}\tn={}\ti={}\tm={}\tj={}",
                first.stage, first.index, second.stage, second.index
            );
        }
        Certificate::ConstantTail { value } => {
            let _ = write!(out, "\tvalue={value}");
        }
        Certificate::BoundedWindow { k, values } => {
            let _ = write!(out, "\tk={k}\tv1={}\tv2={}", values.0, values.1);
        }
        Certificate::DivisibilityFailure { d, stage } => {
            let _ = write!(out, "\td={d}\tN={stage}");
        }
        Certificate::NoFailingDivisor {
            gcd,
            divisors_checked,
        } => {
            let divisors: Vec<String> = divisors_checked.iter().map(u64::to_string).collect();
            let _ = write!(out, "\tD={gcd}\tdivisors={}", divisors.join(","));
        }
        Certificate::Conjunction {
            centralizer,
            ergodicity,
        } => {
            let _ = write!(
                out,
                "\tcentralizer={}\tergodic={}",
                centralizer.status, ergodicity.status
            );
        }
        Certificate::WindowEvidence { longest_all_equal } => {
            let _ = write!(out, "\twindow={longest_all_equal}");
        }
        Certificate::None => {}
    }
}

fn porcelain_line(property: Property, verdict: &Verdict) -> String {
    let mut line = format!("property={}\tstatus={}", property.name(), verdict.status);
    certificate_fields(&verdict.certificate, &mut line);
    if matches!(property, Property::Weakmixing) {
        let _ = write!(line, "\tmethod={}", verdict.method);
    }
    line
}

fn describe_certificate(cert: &Certificate) -> String {
    match cert {
        Certificate::DistinctSpacers { k, first, second } => format!(
            "a[{},{}]={} differs from a[{},{}]={} inside every window of {k} stages",
            first.stage, first.index, first.value, second.stage, second.index, second.value
        ),
        Certificate::ConstantTail { value } => {
            format!("every tail spacer equals {value}")
        }
        Certificate::BoundedWindow { k, values } => format!(
            "tail spacer values {} and {} appear in every window of {k} stages",
            values.0, values.1
        ),
        Certificate::DivisibilityFailure { d, stage } => {
            format!("{d} divides h_{stage} + a for every spacer value a at stages >= {stage}")
        }
        Certificate::NoFailingDivisor {
            gcd,
            divisors_checked,
        } => {
            if divisors_checked.is_empty() {
                format!("spacer-difference gcd is {gcd}; no divisor candidates")
            } else {
                let divisors: Vec<String> = divisors_checked.iter().map(u64::to_string).collect();
                format!(
                    "spacer-difference gcd {gcd}; divisors {} admit no failing stage",
                    divisors.join(", ")
                )
            }
        }
        Certificate::Conjunction {
            centralizer,
            ergodicity,
        } => format!(
            "centralizer {} ({}); ergodicity {} ({})",
            centralizer.status,
            describe_certificate(&centralizer.certificate),
            ergodicity.status,
            describe_certificate(&ergodicity.certificate)
        ),
        Certificate::WindowEvidence { longest_all_equal } => {
            format!("longest all-equal spacer window observed: {longest_all_equal} stages")
        }
        Certificate::None => "none".to_string(),
    }
}

fn human_report(property: Property, verdict: &Verdict) -> String {
    format!(
        "property: {}\nstatus: {}\nmethod: {}\nhorizon: {} stages\ncertificate: {}\n",
        property.name(),
        verdict.status,
        verdict.method,
        verdict.horizon.stages,
        describe_certificate(&verdict.certificate)
    )
}
