//! kbraid: exact Hecke-algebra and Kazhdan-Lusztig computations from the
//! command line, with bulk verification of the braid, inverse, KL and
//! Demazure-Lusztig identity suites.
//!
//! Exit codes: 0 success, 1 failed check or runtime failure, 2 usage or
//! parse error.

mod expr;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use kbraid::braid::positive_lift;
use kbraid::error::{Error, Result};
use kbraid::hecke::{HeckeAlgebra, HeckeElement, KLTable};
use kbraid::kops::{hecke_action, WeightLaurent};
use kbraid::rootdata::{build_cartan, generate_roots};
use kbraid::verify;
use kbraid::weyl::{parse_word, WeylGroup};

use report::RunReport;

#[derive(Parser)]
#[command(name = "kbraid", version, about = "Hecke algebras, Kazhdan-Lusztig bases, braid lifts and Demazure-Lusztig operators, exactly")]
struct Cli {
    /// Cartan spec, e.g. "A3", "G2" or a JSON matrix "[[2,-1],[-1,2]]"
    /// (alternative to the positional argument of each subcommand)
    #[arg(short = 't', long = "type", global = true, value_name = "SPEC")]
    cartan_type: Option<String>,

    /// Emit machine-readable JSON on stdout
    #[arg(long, global = true)]
    json: bool,

    /// KL cache file (JSON lines); loaded if present, rewritten on exit
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,

    /// Seed for the randomized property suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kazhdan-Lusztig polynomials P_{y,w}
    Kl {
        /// [CARTAN] Y-WORD W-WORD, or just [CARTAN] with --all; words are
        /// 1-based like "1 2", the empty string is the identity
        #[arg(value_name = "ARG")]
        args: Vec<String>,
        /// Tabulate every strict Bruhat pair y < w
        #[arg(long)]
        all: bool,
    },
    /// Run verification suites and report each check
    Verify {
        cartan: Option<String>,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Evaluate an expression in T(word), C(word), Tinv(word), q^n, * and +
    Mult {
        /// [CARTAN] EXPR
        #[arg(value_name = "ARG", required = true)]
        args: Vec<String>,
        /// Also expand the result in the KL basis
        #[arg(long)]
        c_basis: bool,
    },
    /// Apply the lifted braid word of a Weyl element to a weight-lattice
    /// element read from a JSON file
    Dl {
        /// [CARTAN] WORD FILE
        #[arg(value_name = "ARG", required = true)]
        args: Vec<String>,
    },
    /// Print the root system as JSON vectors in simple-root coordinates
    Roots { cartan: Option<String> },
}

/// Split leading Cartan spec from positional args: accept exactly
/// `want` args plus an optional leading spec (else the --type flag).
fn split_args<'a>(
    args: &'a [String],
    want: usize,
    flag: &Option<String>,
    usage: &str,
) -> Result<(String, &'a [String])> {
    if args.len() == want + 1 {
        Ok((resolve_spec(&Some(args[0].clone()), flag)?, &args[1..]))
    } else if args.len() == want {
        Ok((resolve_spec(&None, flag)?, args))
    } else {
        Err(Error::Parse {
            position: 0,
            message: format!("expected {usage}"),
        })
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Suite {
    Braid,
    Inverse,
    Kl,
    Dl,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::CartanSpec { .. }
        | Error::InvalidCartan(_)
        | Error::NotFiniteType { .. }
        | Error::GeneratorOutOfRange { .. }
        | Error::Parse { .. }
        | Error::Json(_)
        | Error::CartanMismatch { .. } => 2,
        _ => 1,
    }
}

fn resolve_spec(positional: &Option<String>, flag: &Option<String>) -> Result<String> {
    match (positional, flag) {
        (Some(p), None) => Ok(p.clone()),
        (None, Some(f)) => Ok(f.clone()),
        (Some(p), Some(f)) if p == f => Ok(p.clone()),
        (Some(_), Some(_)) => Err(Error::Parse {
            position: 0,
            message: "conflicting Cartan specs given positionally and via --type".into(),
        }),
        (None, None) => Err(Error::Parse {
            position: 0,
            message: "missing Cartan spec: pass it positionally or via --type".into(),
        }),
    }
}

fn group_for(spec: &str) -> Result<WeylGroup> {
    WeylGroup::new(build_cartan(spec)?)
}

fn load_table(cache: &Option<PathBuf>) -> Result<KLTable> {
    match cache {
        Some(path) if path.exists() => {
            let (table, load) = KLTable::load(path)?;
            for warning in load.warnings() {
                eprintln!("warning: {warning}");
            }
            Ok(table)
        }
        _ => Ok(KLTable::new()),
    }
}

fn store_table(cache: &Option<PathBuf>, table: &KLTable) -> Result<()> {
    if let Some(path) = cache {
        if !table.is_empty() || path.exists() {
            table.store(path)?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match &cli.command {
        Command::Kl { args, all } => cmd_kl(&cli, args, *all),
        Command::Verify { cartan, suite } => cmd_verify(&cli, cartan, *suite),
        Command::Mult { args, c_basis } => cmd_mult(&cli, args, *c_basis),
        Command::Dl { args } => cmd_dl(&cli, args),
        Command::Roots { cartan } => cmd_roots(&cli, cartan),
    }
}

fn cmd_kl(cli: &Cli, args: &[String], all: bool) -> Result<bool> {
    let started = Instant::now();
    let want = if all { 0 } else { 2 };
    let (spec, words) = split_args(
        args,
        want,
        &cli.cartan_type,
        "kl [CARTAN] Y-WORD W-WORD, or kl [CARTAN] --all",
    )?;
    let group = group_for(&spec)?;
    let alg = HeckeAlgebra::new(group.clone());
    let table = load_table(&cli.cache)?;

    let mut pairs = Vec::new();
    if all {
        let els = group.all_elements()?;
        for w in &els {
            for y in &els {
                if y != w && group.bruhat_leq(y, w)? {
                    pairs.push((y.clone(), w.clone()));
                }
            }
        }
        pairs.sort_by(|a, b| (&a.1, &a.0).cmp(&(&b.1, &b.0)));
    } else {
        pairs.push((
            group.from_word(&parse_word(&words[0])?)?,
            group.from_word(&parse_word(&words[1])?)?,
        ));
    }

    let mut rows = Vec::new();
    for (y, w) in &pairs {
        let p = alg.kl_polynomial(y, w, &table)?;
        rows.push((y, w, p));
    }
    store_table(&cli.cache, &table)?;

    let report = RunReport::new("kl", group.cartan().label(), Vec::new(), started).with(
        "pairs",
        serde_json::Value::Array(
            rows.iter()
                .map(|(y, w, p)| {
                    serde_json::json!({
                        "y": y.word_string(),
                        "w": w.word_string(),
                        "poly": serde_json::to_value(p).expect("poly serializes"),
                    })
                })
                .collect(),
        ),
    );
    if cli.json {
        report.print_json();
    } else {
        for (y, w, p) in &rows {
            println!("P({}, {}) = {}", y, w, p);
        }
        println!("{} pairs", rows.len());
    }
    Ok(true)
}

fn cmd_verify(cli: &Cli, cartan: &Option<String>, suite: Suite) -> Result<bool> {
    let started = Instant::now();
    let spec = resolve_spec(cartan, &cli.cartan_type)?;
    let group = group_for(&spec)?;
    let alg = HeckeAlgebra::new(group.clone());
    let table = load_table(&cli.cache)?;

    let mut checks = Vec::new();
    if matches!(suite, Suite::Braid | Suite::All) {
        checks.extend(verify::braid_suite(&alg, cli.seed)?);
    }
    if matches!(suite, Suite::Inverse | Suite::All) {
        checks.extend(verify::inverse_suite(&alg)?);
    }
    if matches!(suite, Suite::Kl | Suite::All) {
        checks.extend(verify::kl_suite(&alg, &table)?);
    }
    if matches!(suite, Suite::Dl | Suite::All) {
        checks.extend(verify::dl_suite(&alg, cli.seed)?);
    }
    store_table(&cli.cache, &table)?;

    let report = RunReport::new("verify", group.cartan().label(), checks, started);
    if cli.json {
        report.print_json();
    } else {
        report.print_human_summary();
    }
    Ok(report.passed())
}

fn c_basis_json(
    alg: &HeckeAlgebra,
    h: &HeckeElement,
    table: &KLTable,
) -> Result<serde_json::Value> {
    let coeffs = alg.to_c_basis(h, table)?;
    Ok(serde_json::json!({
        "cartan": alg.group().cartan().label(),
        "basis": "C",
        "terms": coeffs
            .iter()
            .map(|(w, p)| {
                serde_json::json!({
                    "w": w.word_string(),
                    "poly": serde_json::to_value(p).expect("poly serializes"),
                })
            })
            .collect::<Vec<_>>(),
    }))
}

fn cmd_mult(cli: &Cli, args: &[String], c_basis: bool) -> Result<bool> {
    let started = Instant::now();
    let (spec, rest) = split_args(args, 1, &cli.cartan_type, "mult [CARTAN] EXPR")?;
    let input = &rest[0];
    let group = group_for(&spec)?;
    let alg = HeckeAlgebra::new(group.clone());
    let table = load_table(&cli.cache)?;

    let element = expr::ExprParser::new(&alg, &table).parse(input)?;
    let mut report = RunReport::new("mult", group.cartan().label(), Vec::new(), started).with(
        "element",
        serde_json::to_value(&element).expect("element serializes"),
    );
    if c_basis {
        report = report.with("c_basis", c_basis_json(&alg, &element, &table)?);
    }
    store_table(&cli.cache, &table)?;

    if cli.json {
        report.print_json();
    } else {
        println!("{element}");
        if c_basis {
            for (w, p) in alg.to_c_basis(&element, &table)? {
                println!("C[{}]: {}", w, p);
            }
        }
    }
    Ok(true)
}

fn cmd_dl(cli: &Cli, args: &[String]) -> Result<bool> {
    let started = Instant::now();
    let (spec, rest) = split_args(args, 2, &cli.cartan_type, "dl [CARTAN] WORD FILE")?;
    let (word, file) = (&rest[0], PathBuf::from(&rest[1]));
    let group = group_for(&spec)?;

    let contents = std::fs::read_to_string(&file)?;
    let value: serde_json::Value =
        serde_json::from_str(&contents).map_err(|e| Error::Json(e.to_string()))?;
    let f = WeightLaurent::from_json(&group, &value)?;

    let w = group.from_word(&parse_word(word)?)?;
    let image = positive_lift(&w).hecke_image();
    let result = hecke_action(&image, &f)?;

    let report = RunReport::new("dl", group.cartan().label(), Vec::new(), started).with(
        "element",
        serde_json::to_value(&result).expect("element serializes"),
    );
    if cli.json {
        report.print_json();
    } else {
        println!("{result}");
    }
    Ok(true)
}

fn cmd_roots(cli: &Cli, cartan: &Option<String>) -> Result<bool> {
    let started = Instant::now();
    let spec = resolve_spec(cartan, &cli.cartan_type)?;
    let datum = build_cartan(&spec)?;
    let roots = generate_roots(&datum)?;

    let report = RunReport::new("roots", datum.label(), Vec::new(), started).with(
        "roots",
        serde_json::to_value(&roots).expect("roots serialize"),
    );
    if cli.json {
        report.print_json();
    } else {
        println!(
            "{} roots, {} positive",
            roots.len(),
            roots.num_positive()
        );
        for r in roots.roots() {
            println!("{r:?}");
        }
    }
    Ok(true)
}
