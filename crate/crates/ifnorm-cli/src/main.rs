//! Command-line front end: normalize expressions, print measures, enumerate
//! universes, decide tautology, and run the verification suites.
//!
//! Exit codes are a stable contract: 0 success, 1 usage/parse/config error,
//! 2 fuel exhausted, 3 property counterexample found.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ifnorm::{
    if_depth, norm, norm1, norm2, norm2_lex_measure, norm_fuel, norm_measure, parse_alphabet,
    run_suites, tautology_counterexample, tested_if_count, trace_to_json, Expr, ExprUniverse,
    Suite, SuiteConfig, DEFAULT_NORM2_FUEL,
};

#[derive(Parser)]
#[command(
    name = "ifnorm",
    version,
    about = "Normalize conditional expressions and verify the algorithms' claimed properties"
)]
struct Cli {
    /// Suppress report lines; exit codes, results, and requested files still
    /// convey the outcome.
    #[arg(long, global = true)]
    quiet: bool,

    /// Write a machine-readable JSON result to this file.
    #[arg(long, global = true, value_name = "FILE")]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize an expression.
    Norm(NormArgs),
    /// Print a measure of an expression.
    Measure(MeasureArgs),
    /// Run verification suites over an enumerated universe.
    Verify(VerifyArgs),
    /// List every expression of a universe in enumeration order.
    Enum(EnumArgs),
    /// Decide tautology; print a falsifying assignment if one exists.
    Taut(TautArgs),
}

#[derive(Args)]
struct ExprInput {
    /// Expression text; `-` reads it from stdin.
    #[arg(value_name = "EXPR", conflicts_with = "file")]
    expr: Option<String>,

    /// Read the expression from a file instead.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

impl ExprInput {
    fn read(&self) -> Result<String, String> {
        match (&self.expr, &self.file) {
            (Some(text), None) => {
                if text == "-" {
                    let mut buf = String::new();
                    std::io::stdin()
                        .read_to_string(&mut buf)
                        .map_err(|e| format!("cannot read stdin: {e}"))?;
                    Ok(buf)
                } else {
                    Ok(text.clone())
                }
            }
            (None, Some(path)) => fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display())),
            (None, None) => {
                Err("no expression given; pass it inline, with --file, or as `-` for stdin"
                    .to_string())
            }
            (Some(_), Some(_)) => {
                Err("give the expression either inline or with --file, not both".to_string())
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Norm,
    Norm1,
    Norm2,
}

impl AlgoArg {
    fn name(self) -> &'static str {
        match self {
            AlgoArg::Norm => "norm",
            AlgoArg::Norm1 => "norm1",
            AlgoArg::Norm2 => "norm2",
        }
    }
}

#[derive(Args)]
struct NormArgs {
    /// Which algorithm to run.
    #[arg(long, value_enum, default_value_t = AlgoArg::Norm)]
    algo: AlgoArg,

    /// Invocation budget. Defaults to the measure of the input for `norm`
    /// and to 1000000 for `norm2`; `norm1` runs without one.
    #[arg(long)]
    fuel: Option<u64>,

    /// Write the call trace as JSON to this file.
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,

    /// Print call count, recursion depth, and input measures.
    #[arg(long)]
    stats: bool,

    #[command(flatten)]
    input: ExprInput,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureWhich {
    /// Call-count measure certifying norm's termination.
    M,
    /// Number of If nodes sitting in test position.
    TestedIfs,
    /// Nesting depth along test positions.
    IfDepth,
    /// Total node count.
    Size,
    /// Lexicographic pair (tested Ifs, size) certifying norm2's termination.
    Lex,
}

#[derive(Args)]
struct MeasureArgs {
    /// Which measure to print.
    #[arg(long, value_enum)]
    which: MeasureWhich,

    #[command(flatten)]
    input: ExprInput,
}

#[derive(Args)]
struct VerifyArgs {
    /// Enumerate all expressions with up to this many If nodes.
    #[arg(long, default_value_t = 3)]
    max_ifs: usize,

    /// Comma-separated atom names for the universe.
    #[arg(long, default_value = "a,b")]
    alphabet: String,

    /// Suite name, or `all`; repeat the flag to select several.
    #[arg(long = "suite", value_name = "NAME", default_value = "all")]
    suites: Vec<String>,

    /// Replace every per-run fuel default.
    #[arg(long)]
    fuel: Option<u64>,

    /// Worker threads for suite sharding.
    #[arg(long)]
    parallelism: Option<usize>,
}

#[derive(Args)]
struct EnumArgs {
    /// Enumerate all expressions with up to this many If nodes.
    #[arg(long)]
    max_ifs: usize,

    /// Comma-separated atom names.
    #[arg(long, default_value = "a,b")]
    alphabet: String,

    /// Print only the number of expressions.
    #[arg(long)]
    count: bool,
}

#[derive(Args)]
struct TautArgs {
    #[command(flatten)]
    input: ExprInput,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let quiet = cli.quiet;
    let json = cli.json.clone();
    let outcome = match cli.command {
        Command::Norm(args) => cmd_norm(args, quiet, json.as_deref()),
        Command::Measure(args) => cmd_measure(args, json.as_deref()),
        Command::Verify(args) => cmd_verify(args, quiet, json.as_deref()),
        Command::Enum(args) => cmd_enum(args, json.as_deref()),
        Command::Taut(args) => cmd_taut(args, json.as_deref()),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn cmd_norm(args: NormArgs, quiet: bool, json: Option<&Path>) -> Result<u8, String> {
    let text = args.input.read()?;
    let expr = parse_expr(&text)?;
    let algo = args.algo.name();

    if args.algo == AlgoArg::Norm1 {
        if args.fuel.is_some() {
            return Err("--fuel does not apply to norm1; it runs without a budget".to_string());
        }
        if args.trace.is_some() {
            return Err("--trace does not apply to norm1; it records no call trace".to_string());
        }
        let result = norm1(&expr);
        println!("{result}");
        if args.stats && !quiet {
            print_input_measures(&expr);
        }
        if let Some(path) = json {
            write_json(
                path,
                &serde_json::json!({
                    "algo": algo,
                    "input": expr.to_string(),
                    "status": "completed",
                    "result": result.to_string(),
                }),
            )?;
        }
        return Ok(0);
    }

    let fuel = args.fuel.unwrap_or_else(|| match args.algo {
        AlgoArg::Norm => norm_fuel(&expr),
        _ => DEFAULT_NORM2_FUEL,
    });
    let tracing = args.trace.is_some();
    let out = match args.algo {
        AlgoArg::Norm => norm(&expr, fuel, tracing),
        _ => norm2(&expr, fuel, tracing),
    };
    if let Some(path) = &args.trace {
        let trace = out.trace.as_deref().unwrap_or(&[]);
        let mut body = trace_to_json(trace);
        body.push('\n');
        fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    if let Some(result) = out.result() {
        println!("{result}");
    }
    if args.stats && !quiet {
        println!("callCount={}", out.call_count);
        println!("maxDepth={}", out.max_depth);
        print_input_measures(&expr);
    }
    if let Some(path) = json {
        write_json(
            path,
            &serde_json::json!({
                "algo": algo,
                "input": expr.to_string(),
                "status": if out.completed() { "completed" } else { "fuelExhausted" },
                "result": out.result().map(|r| r.to_string()),
                "callCount": out.call_count,
                "maxDepth": out.max_depth,
            }),
        )?;
    }
    if out.completed() {
        Ok(0)
    } else {
        eprintln!("fuel exhausted after {} calls (budget {fuel})", out.call_count);
        Ok(2)
    }
}

fn print_input_measures(expr: &Expr) {
    println!("m={}", norm_measure(expr));
    println!("lex={}", norm2_lex_measure(expr));
}

fn cmd_measure(args: MeasureArgs, json: Option<&Path>) -> Result<u8, String> {
    let text = args.input.read()?;
    let expr = parse_expr(&text)?;
    let (which, value) = match args.which {
        MeasureWhich::M => ("m", norm_measure(&expr).to_string()),
        MeasureWhich::TestedIfs => ("tested-ifs", tested_if_count(&expr).to_string()),
        MeasureWhich::IfDepth => ("if-depth", if_depth(&expr).to_string()),
        MeasureWhich::Size => ("size", expr.size().to_string()),
        MeasureWhich::Lex => ("lex", norm2_lex_measure(&expr).to_string()),
    };
    println!("{value}");
    if let Some(path) = json {
        write_json(
            path,
            &serde_json::json!({
                "which": which,
                "expr": expr.to_string(),
                "value": value,
            }),
        )?;
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs, quiet: bool, json: Option<&Path>) -> Result<u8, String> {
    let alphabet =
        parse_alphabet(&args.alphabet).map_err(|e| format!("invalid alphabet: {e}"))?;
    let mut suites: Vec<Suite> = Vec::new();
    for name in &args.suites {
        if name == "all" {
            suites.extend(Suite::ALL);
        } else {
            let suite = Suite::from_name(name).ok_or_else(|| {
                let known: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                format!("unknown suite `{name}`; expected one of {}, or all", known.join(", "))
            })?;
            suites.push(suite);
        }
    }
    suites.dedup();
    let cfg = SuiteConfig {
        max_if_nodes: args.max_ifs,
        alphabet,
        suites,
        fuel_override: args.fuel,
        parallelism: args.parallelism.unwrap_or_else(|| SuiteConfig::default().parallelism),
    };
    cfg.validate().map_err(|e| e.to_string())?;
    let members = cfg.universe().map_err(|e| e.to_string())?.members();
    let outcomes = run_suites(&cfg, &members).map_err(|e| e.to_string())?;
    let all_passed = outcomes.iter().all(|o| o.passed());
    if !quiet {
        for outcome in &outcomes {
            println!(
                "suite {}: {} (exprs={}, edges={})",
                outcome.suite,
                if outcome.passed() { "PASS" } else { "FAIL" },
                outcome.exprs_checked,
                outcome.edges_checked,
            );
            for note in &outcome.notes {
                println!("  note: {note}");
            }
            for cex in &outcome.counterexamples {
                println!("  counterexample: {cex}");
            }
        }
        println!("verify: {}", if all_passed { "PASS" } else { "FAIL" });
    }
    if let Some(path) = json {
        let report = serde_json::json!({
            "config": {
                "maxIfNodes": cfg.max_if_nodes,
                "alphabet": cfg.alphabet.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
                "suites": cfg.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
                "fuelOverride": cfg.fuel_override,
                "parallelism": cfg.parallelism,
            },
            "outcomes": outcomes
                .iter()
                .map(|o| {
                    serde_json::json!({
                        "suite": o.suite.name(),
                        "exprsChecked": o.exprs_checked,
                        "edgesChecked": o.edges_checked,
                        "passed": o.passed(),
                        "counterexamples": o.counterexamples,
                        "notes": o.notes,
                    })
                })
                .collect::<Vec<_>>(),
            "passed": all_passed,
        });
        write_json(path, &report)?;
    }
    Ok(if all_passed { 0 } else { 3 })
}

fn cmd_enum(args: EnumArgs, json: Option<&Path>) -> Result<u8, String> {
    let alphabet =
        parse_alphabet(&args.alphabet).map_err(|e| format!("invalid alphabet: {e}"))?;
    let universe =
        ExprUniverse::new(args.max_ifs, alphabet).map_err(|e| e.to_string())?;
    if args.count {
        let total = universe.enumerate().count();
        println!("{total}");
        if let Some(path) = json {
            write_json(
                path,
                &serde_json::json!({
                    "maxIfs": args.max_ifs,
                    "alphabet": universe.alphabet().iter().map(|s| s.as_str()).collect::<Vec<_>>(),
                    "count": total,
                }),
            )?;
        }
        return Ok(0);
    }
    let members = universe.members();
    for member in &members {
        println!("{member}");
    }
    if let Some(path) = json {
        write_json(
            path,
            &serde_json::json!({
                "maxIfs": args.max_ifs,
                "alphabet": universe.alphabet().iter().map(|s| s.as_str()).collect::<Vec<_>>(),
                "count": members.len(),
                "members": members.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            }),
        )?;
    }
    Ok(0)
}

fn cmd_taut(args: TautArgs, json: Option<&Path>) -> Result<u8, String> {
    let text = args.input.read()?;
    let expr = parse_expr(&text)?;
    let counterexample = tautology_counterexample(&expr);
    match &counterexample {
        None => println!("tautology"),
        Some(rho) => println!("falsifiable {rho}"),
    }
    if let Some(path) = json {
        write_json(
            path,
            &serde_json::json!({
                "expr": expr.to_string(),
                "tautology": counterexample.is_none(),
                "counterexample": counterexample.map(|rho| rho.to_string()),
            }),
        )?;
    }
    Ok(0)
}

fn parse_expr(text: &str) -> Result<Expr, String> {
    ifnorm::parse(text).map_err(|e| format!("parse error: {e}"))
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), String> {
    let mut body = serde_json::to_string_pretty(value).expect("report serialization");
    body.push('\n');
    fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))
}
