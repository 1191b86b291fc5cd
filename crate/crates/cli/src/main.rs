//! Command-line surface of the exact binomial-sum toolkit.
//!
//! Subcommands: `eval` (one sum, exact value), `verify` (oracle vs closed
//! form campaigns), `seq` (sequence emission), `poly` (P/Q/gamma/omega
//! tables), `walk` (Monte Carlo cross-check), `bench` (oracle vs closed
//! form timing).
//!
//! Exit codes: 0 on success with every campaign passed, 1 on any value
//! mismatch, 2 on usage errors.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use absum::bench::bench;
use absum::closed::IdentityTag;
use absum::gamma::{gamma_funcs, omega};
use absum::seq::{emit_sequence, SeqFormat};
use absum::tuenter::{p_poly, q_poly};
use absum::verify::{default_ranges, guard_sum_spec, verify_identity, Ranges};
use absum::walk::{estimate_expectation, WalkConfig};
use absum::{SumSpec, WeightExpr};

#[derive(Parser)]
#[command(
    name = "absum",
    version,
    about = "Exact evaluation, verification, and benchmarking of absolute-value binomial sums"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one sum exactly.
    Eval(EvalArgs),
    /// Check closed forms against the brute-force oracle.
    Verify(VerifyArgs),
    /// Emit an integer sequence (b-file, csv, or jsonl).
    Seq(SeqArgs),
    /// Print P/Q polynomials or gamma/omega rational functions.
    Poly(PolyArgs),
    /// Monte Carlo estimate of a walk-weight expectation.
    Walk(WalkArgs),
    /// Time the oracle against the closed form.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalFamily {
    /// sum_k C(2n,n+k)|k|^beta
    Single,
    /// sum_k C(n,k)|n/2-k|^beta
    Half,
    /// sum_{k,l} C(2m,m+k)C(2n,n+l)|k-l|^beta
    DoubleDiff,
    /// sum_{k,l} C(2n,n+k)C(2n,n+l)|k^alpha-l^alpha|^beta
    Centered,
    /// sum_{k,l} C(n,k)C(n,l)|k-l|^beta
    Unrestricted,
    /// d-fold sum with a --weight expression over --dims
    Generic,
    /// triple sum with the squared-Vandermonde weight
    Triple,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    family: EvalFamily,
    #[arg(long, default_value_t = 1)]
    alpha: u32,
    #[arg(long, default_value_t = 0)]
    beta: u32,
    #[arg(long, default_value_t = 0)]
    n: u64,
    #[arg(long, default_value_t = 0)]
    m: u64,
    /// Comma-separated per-dimension sizes, e.g. "1,2,3".
    #[arg(long)]
    dims: Option<String>,
    /// Weight expression in k1..kd (i, j, k alias k1, k2, k3).
    #[arg(long)]
    weight: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Family tag (best, tuenter-s, t-reduction, w1, w-odd, w-even,
    /// triple, s-alpha1, o1..o5, ineq, all).
    #[arg(long)]
    family: String,
    /// Alpha for the s-alpha1 family.
    #[arg(long)]
    alpha: Option<u32>,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long)]
    m_max: Option<u64>,
    #[arg(long)]
    beta_max: Option<u32>,
    #[arg(long)]
    k_max: Option<u32>,
    #[arg(long)]
    r_max: Option<u32>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Summary)]
    format: ReportFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Summary,
    Jsonl,
    Csv,
}

#[derive(Args)]
struct SeqArgs {
    /// S11, S21, S12e, S22e, S13e, S23e, S14e, or S24e.
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 10)]
    n_max: u64,
    #[arg(long, value_enum, default_value_t = SeqFormatArg::Bfile)]
    format: SeqFormatArg,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqFormatArg {
    Bfile,
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyKind {
    P,
    Q,
    Gamma,
    Omega,
}

#[derive(Args)]
struct PolyArgs {
    #[arg(long, value_enum)]
    kind: PolyKind,
    /// Degree parameter for P/Q.
    #[arg(long, default_value_t = 0)]
    beta: u32,
    /// Level parameter for gamma/omega.
    #[arg(long, default_value_t = 0)]
    k: u32,
}

#[derive(Args)]
struct WalkArgs {
    /// Comma-separated per-dimension sizes, e.g. "1,2".
    #[arg(long)]
    dims: String,
    #[arg(long)]
    weight: String,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    /// Family tag (best, tuenter-s, w1, w-odd, w-even, triple,
    /// s-alpha1, o1..o5).
    #[arg(long)]
    family: String,
    /// Alpha for the s-alpha1 family.
    #[arg(long)]
    alpha: Option<u32>,
    /// Exponent parameter (beta for tuenter-s, k for w-odd, r for w-even).
    #[arg(long)]
    beta: Option<u32>,
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 3)]
    reps: u32,
}

const USAGE_ERROR: u8 = 2;
const MISMATCH_ERROR: u8 = 1;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(args) => run_eval(&args),
        Command::Verify(args) => run_verify(&args),
        Command::Seq(args) => run_seq(&args),
        Command::Poly(args) => run_poly(&args),
        Command::Walk(args) => run_walk(&args),
        Command::Bench(args) => run_bench(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}

fn parse_dims(raw: &str) -> Result<Vec<u64>, String> {
    raw.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| format!("invalid dimension '{part}' in --dims"))
        })
        .collect()
}

fn run_eval(args: &EvalArgs) -> Result<ExitCode, String> {
    let spec = match args.family {
        EvalFamily::Single => SumSpec::Single {
            beta: args.beta,
            n: args.n,
        },
        EvalFamily::Half => SumSpec::HalfCenter {
            beta: args.beta,
            n: args.n,
        },
        EvalFamily::DoubleDiff => SumSpec::DoubleDiff {
            beta: args.beta,
            m: args.m,
            n: args.n,
        },
        EvalFamily::Centered => SumSpec::Centered {
            alpha: args.alpha,
            beta: args.beta,
            n: args.n,
        },
        EvalFamily::Unrestricted => SumSpec::Unrestricted {
            beta: args.beta,
            n: args.n,
        },
        EvalFamily::Generic => {
            let dims = parse_dims(
                args.dims
                    .as_deref()
                    .ok_or("--dims is required for the generic family")?,
            )?;
            let weight_src = args
                .weight
                .as_deref()
                .ok_or("--weight is required for the generic family")?;
            let weight = WeightExpr::parse(weight_src, dims.len()).map_err(|e| e.to_string())?;
            SumSpec::Generic {
                n_list: dims,
                weight,
            }
        }
        EvalFamily::Triple => SumSpec::TripleVandermonde { n: args.n },
    };
    guard_sum_spec(&spec).map_err(|e| e.to_string())?;
    let value = spec.evaluate().map_err(|e| e.to_string())?;
    println!("{value}");
    Ok(ExitCode::SUCCESS)
}

fn parse_identity_family(name: &str, alpha: Option<u32>) -> Result<Vec<IdentityTag>, String> {
    let canon = name.to_ascii_lowercase().replace('-', "_");
    let tag = match canon.as_str() {
        "all" => return Ok(absum::verify::all_families()),
        "best" => IdentityTag::Best,
        "tuenter_s" => IdentityTag::TuenterS,
        "t_reduction" => IdentityTag::TReduction,
        "w1" => IdentityTag::W1,
        "w_odd" => IdentityTag::WOdd,
        "w_even" => IdentityTag::WEven,
        "triple" => IdentityTag::Triple,
        "s_alpha1" => {
            let alpha = alpha.ok_or("--alpha is required for the s-alpha1 family")?;
            IdentityTag::SAlpha1(alpha)
        }
        "o1" => IdentityTag::OFamily(1),
        "o2" => IdentityTag::OFamily(2),
        "o3" => IdentityTag::OFamily(3),
        "o4" => IdentityTag::OFamily(4),
        "o5" => IdentityTag::OFamily(5),
        "ineq" | "ineq_bound" => IdentityTag::IneqBound,
        _ => return Err(format!("unknown identity family '{name}'")),
    };
    Ok(vec![tag])
}

fn run_verify(args: &VerifyArgs) -> Result<ExitCode, String> {
    let families = parse_identity_family(&args.family, args.alpha)?;
    let mut output = String::new();
    let mut all_passed = true;
    for family in families {
        let mut ranges: Ranges = default_ranges(family);
        if let Some(n_max) = args.n_max {
            ranges.n_max = n_max;
        }
        if let Some(m_max) = args.m_max {
            ranges.m_max = m_max;
        }
        if let Some(beta_max) = args.beta_max {
            ranges.beta_max = beta_max;
        }
        if let Some(k_max) = args.k_max {
            ranges.k_max = k_max;
        }
        if let Some(r_max) = args.r_max {
            ranges.r_max = r_max;
        }
        let report = verify_identity(family, &ranges).map_err(|e| e.to_string())?;
        all_passed &= report.passed;
        match args.format {
            ReportFormat::Summary => {
                let _ = writeln!(output, "{}", report.summary());
                for inst in report.instances.iter().filter(|i| !i.equal) {
                    let params: Vec<String> = inst
                        .params
                        .iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect();
                    let _ = writeln!(
                        output,
                        "  MISMATCH {} lhs={} rhs={} {}",
                        params.join(","),
                        inst.lhs,
                        inst.rhs,
                        inst.note
                    );
                }
            }
            ReportFormat::Jsonl => output.push_str(&report.jsonl()),
            ReportFormat::Csv => output.push_str(&report.csv()),
        }
    }
    write_out(args.out.as_deref(), &output)?;
    if all_passed {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(MISMATCH_ERROR))
    }
}

fn run_seq(args: &SeqArgs) -> Result<ExitCode, String> {
    let format = match args.format {
        SeqFormatArg::Bfile => SeqFormat::BFile,
        SeqFormatArg::Csv => SeqFormat::Csv,
        SeqFormatArg::Jsonl => SeqFormat::Jsonl,
    };
    let text = emit_sequence(&args.family, args.n_max, format).map_err(|e| e.to_string())?;
    write_out(args.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run_poly(args: &PolyArgs) -> Result<ExitCode, String> {
    const MAX_PQ_BETA: u32 = 16;
    const MAX_LEVEL: u32 = 10;
    match args.kind {
        PolyKind::P | PolyKind::Q => {
            if args.beta > MAX_PQ_BETA {
                return Err(format!(
                    "--beta {} exceeds the cap of {MAX_PQ_BETA}",
                    args.beta
                ));
            }
            let (label, poly) = match args.kind {
                PolyKind::P => ("P", p_poly(args.beta)),
                _ => ("Q", q_poly(args.beta)),
            };
            println!("{label}_{}(n) = {poly}", args.beta);
            let coeffs: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
            println!(
                "{label}_{} coeffs (ascending): [{}]",
                args.beta,
                coeffs.join(", ")
            );
        }
        PolyKind::Gamma => {
            if args.k > MAX_LEVEL {
                return Err(format!("--k {} exceeds the cap of {MAX_LEVEL}", args.k));
            }
            let table = gamma_funcs(args.k);
            for (j, entry) in table.entries().iter().enumerate() {
                let (num, den) = entry.integer_form();
                println!("gamma[{},{j}] = {entry}", args.k);
                println!(
                    "gamma[{},{j}] num coeffs: [{}]",
                    args.k,
                    num.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                );
                println!(
                    "gamma[{},{j}] den coeffs: [{}]",
                    args.k,
                    den.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
        }
        PolyKind::Omega => {
            if args.k > MAX_LEVEL {
                return Err(format!("--k {} exceeds the cap of {MAX_LEVEL}", args.k));
            }
            let om = omega(args.k);
            let (num, den) = om.omega.integer_form();
            println!("omega_{} = {}", args.k, om.omega);
            println!(
                "omega_{} num coeffs: [{}]",
                args.k,
                num.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            println!(
                "omega_{} den coeffs: [{}]",
                args.k,
                den.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_walk(args: &WalkArgs) -> Result<ExitCode, String> {
    let dims = parse_dims(&args.dims)?;
    let weight = WeightExpr::parse(&args.weight, dims.len()).map_err(|e| e.to_string())?;
    let cfg = WalkConfig {
        n_list: dims,
        weight,
        samples: args.samples,
        seed: args.seed,
    };
    let result = estimate_expectation(&cfg).map_err(|e| e.to_string())?;
    println!("mean: {}", result.mean);
    println!("std_error: {}", result.std_error);
    match &result.exact {
        Some(exact) => {
            println!("exact: {exact} ({})", exact.to_f64());
            if result.std_error > 0.0 {
                let sigma = (result.mean - exact.to_f64()).abs() / result.std_error;
                println!("deviation: {sigma:.2} standard errors");
            }
        }
        None => println!("exact: unavailable at this size"),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_bench(args: &BenchArgs) -> Result<ExitCode, String> {
    let families = parse_identity_family(&args.family, args.alpha)?;
    if families.len() != 1 {
        return Err("bench takes a single family".to_string());
    }
    match bench(families[0], args.beta, args.n, args.reps) {
        Ok(record) => {
            print!("{}", record.render());
            if record.values_equal {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(MISMATCH_ERROR))
            }
        }
        Err(absum::bench::BenchError::CalibrationMismatch { n, oracle, closed }) => {
            eprintln!("calibration failed at n = {n}: oracle {oracle} != closed form {closed}");
            Ok(ExitCode::from(MISMATCH_ERROR))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn write_out(path: Option<&str>, text: &str) -> Result<(), String> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
