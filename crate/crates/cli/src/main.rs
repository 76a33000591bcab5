use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use ehrkit::characterize::{classify, SearchOptions, DEFAULT_BUDGET};
use ehrkit::count::{
    count_points, count_weighted_simplex, ehrhart_quasi, scan_scaled_translate, weighted_simplex_quasi, RationalPolytope,
};
use ehrkit::io::{integer_json, parse_input, to_canonical_string, vector_json, Input};
use ehrkit::scalar::parse_rational;
use ehrkit::zonotope::{abm_quasi, zonotope_vertices};
use ehrkit::{corpus, reproduce, Error, LatticePolytope, QuasiPoly, Rational};
use serde_json::{json, Map, Value};

mod render;

/// Exact Ehrhart quasi-polynomials of almost integral polytopes.
#[derive(Parser)]
#[command(name = "ehrkit", version)]
struct Cli {
    /// Worker threads (results do not depend on it).
    #[arg(long, global = true, env = "EHRKIT_JOBS")]
    jobs: Option<usize>,
    /// Write JSON here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct InputArg {
    /// JSON input file; standard input when omitted.
    #[arg(long, short)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Sym,
    Gcd,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice points of `c + tP`.
    Count {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 1)]
        dilate: u64,
    },
    /// Ehrhart quasi-polynomial of `c + P`.
    Ehrhart {
        #[command(flatten)]
        input: InputArg,
        /// Reduce to the minimal period.
        #[arg(long)]
        minimal: bool,
    },
    /// Same as `ehrhart`, for generator input.
    Zonotope {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        minimal: bool,
    },
    /// Test symmetry or the GCD-property of the quasi-polynomial.
    Check {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum)]
        property: Property,
    },
    /// Structural verdicts and, optionally, witness searches.
    Classify {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Recorded in the report; the search order is fixed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exit with status 5 if a search runs out of budget.
        #[arg(long)]
        require_witness: bool,
    },
    /// `#((x·c + P) ∩ Z^d)` at each sample `x`.
    Scan {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated rationals.
        #[arg(long, value_delimiter = ',', required = true)]
        xs: Vec<String>,
    },
    /// Named polytopes.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Recompute every published table and verdict.
    Reproduce {
        /// Restrict to these groups.
        #[arg(long)]
        only: Vec<String>,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
    Build {
        /// E.g. `cube`, `alcove(G2)`, `counterexample_pn(8,3)`.
        name: String,
        /// `key=value` parameters.
        #[arg(long = "param")]
        params: Vec<String>,
    },
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse(_) | Error::BadParams(_) | Error::UnknownName(_) | Error::EmptyPolytope) => 2,
        Some(Error::DimensionMismatch { .. }) => 3,
        Some(Error::Unsupported(_)) => 4,
        Some(Error::BudgetExhausted { .. }) => 5,
        _ => 1,
    }
}

fn read_input(arg: &InputArg) -> anyhow::Result<Input> {
    let text = match &arg.input {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
            s
        }
    };
    Ok(parse_input(&text)?.resolve()?)
}

fn lattice_input(input: Input) -> anyhow::Result<(LatticePolytope, Vec<Rational>)> {
    Ok(match input {
        Input::Polytope(p) => (p.base, p.translate),
        Input::Zonotope(z) => {
            let p = zonotope_vertices(&z)?;
            (p.base, p.translate)
        }
        _ => return Err(Error::Unsupported("this command needs integral vertices or generators".into()).into()),
    })
}

fn quasi(input: Input) -> anyhow::Result<QuasiPoly> {
    Ok(match input {
        Input::Polytope(p) => ehrhart_quasi(&p)?,
        Input::Zonotope(z) => abm_quasi(&z)?,
        Input::WeightedSimplex(w) => weighted_simplex_quasi(&w)?,
        Input::Rational(r, c) => {
            let moved = r.vertices().iter().map(|v| v.iter().zip(&c).map(|(a, b)| a + b).collect()).collect();
            RationalPolytope::new(moved)?.ehrhart_quasi()?
        }
    })
}

fn run(cli: Cli) -> anyhow::Result<(Value, u8)> {
    let ok = |v: Value| Ok((v, 0));
    match cli.command {
        Command::Count { input, dilate } => {
            let n = match read_input(&input)? {
                Input::WeightedSimplex(w) => count_weighted_simplex(&w, dilate)?,
                Input::Rational(r, c) => r.count_dilate(&c, dilate)?,
                other => {
                    let (p, c) = lattice_input(other)?;
                    count_points(&p, &c, dilate)?
                }
            };
            ok(json!({ "count": integer_json(&n) }))
        }
        Command::Ehrhart { input, minimal } | Command::Zonotope { input, minimal } => {
            let q = quasi(read_input(&input)?)?;
            ok(render::quasi(&if minimal { q.minimal_period() } else { q }))
        }
        Command::Check { input, property } => {
            let q = quasi(read_input(&input)?)?;
            let violation = match property {
                Property::Sym => q.symmetry_violation(),
                Property::Gcd => q.gcd_violation(),
            };
            ok(render::property(&q, violation))
        }
        Command::Classify { input, witness, budget, seed, require_witness } => {
            let (p, _) = lattice_input(read_input(&input)?)?;
            let report = classify(&p, witness.then_some(SearchOptions { budget }))?;
            let mut out = render::classification(&p, &report);
            out["seed"] = json!(seed);
            let missing = [&report.asymmetry_witness, &report.gcd_witness]
                .into_iter()
                .flatten()
                .any(|r| !r.found());
            let code = if require_witness && missing { 5 } else { 0 };
            Ok((out, code))
        }
        Command::Scan { input, xs } => {
            let (p, c) = lattice_input(read_input(&input)?)?;
            let xs: Vec<Rational> = xs.iter().map(|x| parse_rational(x)).collect::<Result<_, _>>()?;
            let counts = scan_scaled_translate(&p, &c, &xs)?;
            ok(json!({
                "xs": vector_json(&xs),
                "counts": counts.iter().map(integer_json).collect::<Vec<_>>(),
            }))
        }
        Command::Corpus { action: CorpusAction::List } => ok(json!({
            "names": corpus::NAMES,
            "alcoves": corpus::ALCOVES.iter().map(|(n, _)| *n).collect::<Vec<_>>(),
        })),
        Command::Corpus { action: CorpusAction::Build { name, params } } => {
            let mut map = Map::new();
            for kv in params {
                let Some((k, v)) = kv.split_once('=') else {
                    return Err(Error::Parse(format!("expected key=value, got `{kv}`")).into());
                };
                let v = v.parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::String(v.to_string()));
                map.insert(k.to_string(), v);
            }
            ok(render::corpus_entry(&corpus::build(&name, &map)?))
        }
        Command::Reproduce { only } => {
            let checks = reproduce::run(&only)?;
            let count = |s: reproduce::Status| checks.iter().filter(|c| c.status == s).count();
            let out = json!({
                "checks": checks.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                "summary": {
                    "pass": count(reproduce::Status::Pass),
                    "fail": count(reproduce::Status::Fail),
                    "disputed": count(reproduce::Status::Disputed),
                },
                "passed": reproduce::all_pass(&checks),
            });
            let code = if reproduce::all_pass(&checks) { 0 } else { 1 };
            Ok((out, code))
        }
    }
}

fn emit(path: Option<&PathBuf>, v: &Value) -> anyhow::Result<()> {
    let text = to_canonical_string(v);
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let output = cli.output.clone();
    let result = run(cli).and_then(|(v, code)| {
        emit(output.as_ref(), &v)?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
