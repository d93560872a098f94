//! Command-line front end. Every command prints one self-describing report.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fusion_oracle::{fusion_table, verlinde_numeric_check};
use crate::groebner::is_prime;
use crate::lie_core::{build_root_system, LieType, RootSystem, Series};
use crate::rep_ring::VirtualCharacter;
use crate::resolution::{
    build_complex, cokernel_vs_oracle, d_squared_check, extract_presentation, g2_theorem_generators, verify_presentation,
    ExtractOptions, DEFAULT_PRIMES,
};
use crate::twisted_modules::{census, check_g2_module_bases, g2_level_one_identity};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fusion-ideal", version, about = "Fusion rings of loop groups: oracle, resolution and presentations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    options: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Full level-k fusion table with ring axiom and Verlinde checks.
    Fusion,
    /// Verify the four-relation presentation of the G2 fusion ideal.
    VerifyG2,
    /// List the twisted face modules of a group.
    Census,
    /// Ranks, d1 d1 = 0 and degree-zero homology of the face complex.
    Complex,
    /// Extract a fusion ideal presentation from the complex and verify it.
    Presentation,
    /// Verify generators read from a JSON file (a list of virtual characters).
    Verify,
    /// Check the explicit bases of the six G2 face modules.
    BasesCheck,
}

#[derive(Args, Debug, Clone)]
struct Options {
    /// Group as series letter and rank, e.g. G2.
    #[arg(long, global = true)]
    group: Option<LieType>,
    #[arg(long, global = true, default_value_t = 1)]
    level: i64,
    /// Comma-separated primes for the codimension checks.
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Orbit-size truncation for module computations (default k + 2 h^vee).
    #[arg(long, global = true)]
    truncation: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// JSON file with a list of virtual characters, for `verify`.
    #[arg(long, global = true)]
    generators: Option<PathBuf>,
    /// Allow groups above the desk-scale rank limit.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Md,
}

/// Validated settings shared by every command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub group: LieType,
    pub level: i64,
    pub primes: Vec<u64>,
    pub truncation: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<PathBuf>,
    #[serde(skip)]
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub threads: Option<usize>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn g2() -> LieType {
    LieType::new(Series::G, 2).expect("G2")
}

fn config(command: Command, o: &Options) -> Result<RunConfig> {
    let group = match command {
        Command::VerifyG2 | Command::BasesCheck => {
            if let Some(g) = o.group {
                if g != g2() {
                    return Err(invalid(format!("this command is specific to G2, got {g}")));
                }
            }
            g2()
        }
        _ => o.group.ok_or_else(|| invalid("--group is required"))?,
    };
    if o.level < 0 {
        return Err(invalid("level must be nonnegative"));
    }
    let primes = o.primes.clone().unwrap_or_else(|| DEFAULT_PRIMES.to_vec());
    if primes.is_empty() {
        return Err(invalid("at least one prime is required"));
    }
    if let Some(p) = primes.iter().find(|&&p| !is_prime(p) || p >= 1 << 31) {
        return Err(invalid(format!("{p} is not a prime below 2^31")));
    }
    if command == Command::Verify && o.generators.is_none() {
        return Err(invalid("verify needs --generators"));
    }
    if let Some(t) = o.truncation {
        if t < o.level {
            return Err(invalid("truncation must be at least the level"));
        }
    }
    let limit = match command {
        Command::Presentation => Some(2),
        Command::Complex => Some(3),
        _ => None,
    };
    if let Some(limit) = limit {
        if group.rank() > limit && !o.force {
            return Err(invalid(format!("{command:?} is limited to rank {limit}; pass --force to run {group}")));
        }
    }
    Ok(RunConfig {
        group,
        level: o.level,
        primes,
        truncation: o.truncation,
        generators: o.generators.clone(),
        format: o.format,
        out: o.out.clone(),
        threads: o.threads,
    })
}

/// A command's report and whether every check in it passed.
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
    /// Preformatted CSV for reports that have a natural table shape.
    pub csv: Option<String>,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

pub fn cmd_fusion(cfg: &RunConfig) -> Result<Outcome> {
    let rs = build_root_system(cfg.group);
    let table = fusion_table(&rs, cfg.level)?;
    let axioms = table.check_ring_axioms();
    let verlinde = verlinde_numeric_check(&rs, cfg.level, 1e-6)?;
    let passed = axioms.passed() && verlinde.passed;
    Ok(Outcome {
        csv: Some(table.to_csv()),
        report: json!({ "table": to_value(&table), "axioms": to_value(&axioms), "verlinde": to_value(&verlinde) }),
        passed,
    })
}

pub fn cmd_verify_g2(cfg: &RunConfig) -> Result<Outcome> {
    let rs = build_root_system(g2());
    let gens = g2_theorem_generators(cfg.level)?;
    let report = verify_presentation(&rs, cfg.level, &gens, &cfg.primes)?;
    Ok(Outcome { passed: report.passed(), report: to_value(&report), csv: None })
}

pub fn cmd_census(cfg: &RunConfig) -> Result<Outcome> {
    let report = census(&build_root_system(cfg.group));
    let mut csv = String::from("subset,centralizer_type,twist_order,module_rank\n");
    for e in &report.entries {
        csv.push_str(&format!("\"{}\",{},{},{}\n", e.subset, e.centralizer_type, e.twist_order, e.module_rank));
    }
    Ok(Outcome { report: to_value(&report), passed: true, csv: Some(csv) })
}

pub fn cmd_complex(cfg: &RunConfig) -> Result<Outcome> {
    let rs = build_root_system(cfg.group);
    let complex = build_complex(&rs, cfg.level)?;
    let dd = d_squared_check(&rs, cfg.level, cfg.truncation)?;
    let coker = cokernel_vs_oracle(&rs, cfg.level, cfg.truncation)?;
    let passed = complex.euler_characteristic == 0 && dd.passed && coker.passed;
    Ok(Outcome {
        report: json!({ "complex": to_value(&complex), "d_squared": to_value(&dd), "cokernel": to_value(&coker) }),
        passed,
        csv: None,
    })
}

pub fn cmd_presentation(cfg: &RunConfig) -> Result<Outcome> {
    let rs: RootSystem = build_root_system(cfg.group);
    let options = ExtractOptions { bound: cfg.truncation, primes: cfg.primes.clone(), shared_bases: true };
    let report = extract_presentation(&rs, cfg.level, &options)?;
    Ok(Outcome { passed: report.passed(), report: to_value(&report), csv: None })
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome> {
    let path = cfg.generators.as_ref().ok_or_else(|| invalid("verify needs --generators"))?;
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    let gens = parse_generators(&text)?;
    let rs = build_root_system(cfg.group);
    let report = verify_presentation(&rs, cfg.level, &gens, &cfg.primes)?;
    Ok(Outcome { passed: report.passed(), report: to_value(&report), csv: None })
}

/// Reads a JSON array of virtual characters.
pub fn parse_generators(text: &str) -> Result<Vec<VirtualCharacter>> {
    let items: Vec<Value> = serde_json::from_str(text).map_err(|e| invalid(format!("generators: {e}")))?;
    items.iter().map(|v| VirtualCharacter::from_json(&v.to_string())).collect()
}

pub fn cmd_bases_check(cfg: &RunConfig) -> Result<Outcome> {
    let rs = build_root_system(g2());
    let bases = check_g2_module_bases(&rs, cfg.truncation)?;
    let identity = g2_level_one_identity(&rs)?;
    let passed = identity && bases.iter().all(|b| b.report.passed);
    Ok(Outcome { report: json!({ "bases": to_value(&bases), "level_one_identity": identity }), passed, csv: None })
}

fn leaves(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                leaves(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                leaves(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render(outcome: &Outcome, envelope: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(envelope).expect("json") + "\n",
        Format::Csv => match &outcome.csv {
            Some(csv) => csv.clone(),
            None => {
                let mut rows = Vec::new();
                leaves("", envelope, &mut rows);
                let mut s = String::from("field,value\n");
                for (k, v) in rows {
                    s.push_str(&format!("{},{}\n", csv_field(&k), csv_field(&v)));
                }
                s
            }
        },
        Format::Md => {
            let mut rows = Vec::new();
            leaves("", envelope, &mut rows);
            let mut s = format!(
                "# fusion-ideal {}\n\nverdict: **{}**\n\n| field | value |\n|---|---|\n",
                envelope["command"].as_str().unwrap_or(""),
                if outcome.passed { "pass" } else { "fail" }
            );
            for (k, v) in rows {
                s.push_str(&format!("| `{}` | {} |\n", k, v.replace('|', "\\|")));
            }
            s
        }
    }
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Fusion => "fusion",
        Command::VerifyG2 => "verify-g2",
        Command::Census => "census",
        Command::Complex => "complex",
        Command::Presentation => "presentation",
        Command::Verify => "verify",
        Command::BasesCheck => "bases-check",
    }
}

fn execute(command: Command, cfg: &RunConfig) -> Result<Outcome> {
    match command {
        Command::Fusion => cmd_fusion(cfg),
        Command::VerifyG2 => cmd_verify_g2(cfg),
        Command::Census => cmd_census(cfg),
        Command::Complex => cmd_complex(cfg),
        Command::Presentation => cmd_presentation(cfg),
        Command::Verify => cmd_verify(cfg),
        Command::BasesCheck => cmd_bases_check(cfg),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) => EXIT_INVALID,
        Error::InternalLimit(_) | Error::InfiniteCodimension { .. } => EXIT_LIMIT,
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match config(cli.command, &cli.options) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    if let Some(n) = cfg.threads {
        // the global pool can only be set once per process; later calls keep the first
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let outcome = match execute(cli.command, &cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let envelope = json!({
        "tool": "fusion-ideal",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command_name(cli.command),
        "config": to_value(&cfg),
        "passed": outcome.passed,
        "report": outcome.report,
    });
    let text = render(&outcome, &envelope, cfg.format);
    match &cfg.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_INVALID;
            }
        }
        None => print!("{text}"),
    }
    if outcome.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}
