//! `posmap`: exact positivity decisions for hermiticity-preserving maps.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use posmap_core::choi::{choi_matrix, cross_check_routes, positivity_poly, HermMap, Route};
use posmap_core::numkernel::{format_rational, parse_poly, parse_upoly, MultiPoly, Rational, UniPoly};
use posmap_core::pipeline::decide_positivity;
use posmap_core::renegar::{decide_nonneg, falsify_with_count, DecideOptions, DecisionReport, Verdict};
use posmap_core::sturm::{count_pos_pos, exists_both_positive, tarski_query};
use posmap_core::Error;

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser, Debug)]
#[command(name = "posmap", version, about = "Exact positivity decisions for hermiticity-preserving maps")]
struct Cli {
    #[command(flatten)]
    run: RunFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunFlags {
    /// Seed for the sampling falsifier
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of sampled points before enumeration
    #[arg(long, global = true, default_value_t = posmap_core::renegar::decide::DEFAULT_SAMPLES)]
    samples: u64,
    /// Maximum number of univariate sign decisions
    #[arg(long, global = true)]
    work_cap: Option<u64>,
    /// Maximum order of the determinant matrices
    #[arg(long, global = true)]
    max_system: Option<usize>,
    /// Lift every cap
    #[arg(long, global = true)]
    exhaustive: bool,
    /// Construction of the positivity polynomial
    #[arg(long, global = true, value_enum, default_value_t = RouteArg::Kraus)]
    route: RouteArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Kraus,
    Choi,
    Doublesum,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Route {
        match r {
            RouteArg::Kraus => Route::Kraus,
            RouteArg::Choi => Route::Choi,
            RouteArg::Doublesum => Route::DoubleSum,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the map in a JSON file is positive
    Decide { map: String },
    /// Print the positivity polynomial of a map
    Poly { map: String },
    /// Print the Choi operator entries of a map
    Choi { map: String },
    /// Decide nonnegativity of an even homogeneous form (file or inline text)
    Nonneg {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Search for a negative value by sampling (polynomial or map file)
    Falsify {
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Univariate sign queries
    #[command(subcommand)]
    Sturm(SturmCommand),
}

#[derive(Subcommand, Debug)]
enum SturmCommand {
    /// Is there t with p(t) > 0 and q(t) > 0
    ExistsPos {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Σ sgn g(x) over the real roots x of f
    Tarski {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Number of real roots of f where p > 0 and q > 0
    Count {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(m) => Failure::Internal(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Outcome {
    text: String,
    structured: Value,
    code: u8,
}

impl RunFlags {
    fn options(&self) -> DecideOptions {
        let base = if self.exhaustive {
            DecideOptions::exhaustive()
        } else {
            DecideOptions::default()
        };
        DecideOptions {
            samples: self.samples,
            seed: self.seed,
            work_cap: if self.exhaustive { None } else { self.work_cap.or(base.work_cap) },
            max_system: if self.exhaustive { None } else { self.max_system.or(base.max_system) },
            ..base
        }
    }
}

fn read_map(path: &str) -> Result<HermMap, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    HermMap::from_json(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

/// An existing file is read; anything else is taken as polynomial text.
fn read_poly(arg: &str) -> Result<MultiPoly, Failure> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("cannot read {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    Ok(parse_poly(text.trim(), None)?)
}

fn upoly(text: &str) -> Result<UniPoly, Failure> {
    Ok(parse_upoly(text)?)
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Yes => EXIT_YES,
        Verdict::No => EXIT_NO,
        Verdict::UnknownCapped => EXIT_UNKNOWN,
    }
}

fn complex_pairs(w: &[Rational]) -> Vec<String> {
    w.chunks(2)
        .map(|c| {
            let z = posmap_core::ComplexRational::new(c[0].clone(), c[1].clone());
            z.to_string()
        })
        .collect()
}

fn report_outcome(report: &DecisionReport, header: &str, extra: Value) -> Outcome {
    let mut structured = report.to_json();
    if let (Value::Object(obj), Value::Object(more)) = (&mut structured, extra) {
        obj.extend(more);
    }
    Outcome {
        text: format!("{header}{}", report.to_text()),
        structured,
        code: verdict_code(report.verdict),
    }
}

fn decide(map: &str, flags: &RunFlags) -> Result<Outcome, Failure> {
    let phi = read_map(map)?;
    let route: Route = flags.route.into();
    let d = decide_positivity(&phi, route, &flags.options())?;
    let n = phi.dim();
    let mut header = format!("map: n = {n}, {} terms\nroute: {route}\n", phi.terms().len());
    let mut extra = json!({"map": {"n": n, "terms": phi.terms().len()}, "route": route.name()});
    if let Some(w) = &d.report.witness {
        let z = complex_pairs(w);
        let (x, y) = z.split_at(n);
        writeln!(header, "x = ({})\ny = ({})", x.join(", "), y.join(", ")).unwrap();
        extra["x"] = json!(x);
        extra["y"] = json!(y);
    }
    Ok(report_outcome(&d.report, &header, extra))
}

fn poly(map: &str, flags: &RunFlags) -> Result<Outcome, Failure> {
    let phi = read_map(map)?;
    if !cross_check_routes(&phi) {
        return Err(Failure::Internal("the three constructions of the positivity polynomial disagree".into()));
    }
    let route: Route = flags.route.into();
    let p = positivity_poly(&phi, route)?;
    let text = p.poly().to_text();
    Ok(Outcome {
        structured: json!({"n": phi.dim(), "route": route.name(), "polynomial": text}),
        text: format!("{text}\n"),
        code: EXIT_YES,
    })
}

fn choi(map: &str) -> Result<Outcome, Failure> {
    let phi = read_map(map)?;
    let t = choi_matrix(&phi);
    let mut text = String::new();
    let mut entries = Vec::new();
    for ((i, j, k, l), z) in t.iter() {
        writeln!(text, "T({i},{j})({k},{l}) = {z}").unwrap();
        entries.push(json!({
            "index": [i, j, k, l],
            "re": format_rational(&z.re),
            "im": format_rational(&z.im),
        }));
    }
    Ok(Outcome {
        text,
        structured: json!({"n": t.dim(), "entries": entries}),
        code: EXIT_YES,
    })
}

fn nonneg(arg: &str, flags: &RunFlags) -> Result<Outcome, Failure> {
    let g = read_poly(arg)?;
    let report = decide_nonneg(&g, &flags.options())?;
    let header = format!("polynomial: {}\n", g.to_text());
    Ok(report_outcome(&report, &header, json!({"polynomial": g.to_text()})))
}

fn falsify(arg: &str, flags: &RunFlags) -> Result<Outcome, Failure> {
    let is_map = Path::new(arg).is_file() && std::fs::read_to_string(arg).is_ok_and(|t| t.trim_start().starts_with('{'));
    let g = if is_map {
        positivity_poly(&read_map(arg)?, flags.route.into())?.into_poly()
    } else {
        read_poly(arg)?
    };
    let s = falsify_with_count(&g, flags.samples, flags.seed);
    let mut text = String::new();
    let structured = match &s.witness {
        Some(w) => {
            let v = g.eval(w)?;
            let coords: Vec<String> = w.iter().map(format_rational).collect();
            writeln!(text, "witness: ({})\nvalue: {}", coords.join(", "), format_rational(&v)).unwrap();
            json!({"witness": coords, "value": format_rational(&v), "samples_drawn": s.drawn})
        }
        None => {
            writeln!(text, "no negative value in {} samples", s.drawn).unwrap();
            json!({"witness": null, "samples_drawn": s.drawn})
        }
    };
    writeln!(text, "seed: {}\nsamples: {}", flags.seed, flags.samples).unwrap();
    let mut structured = structured;
    structured["seed"] = json!(flags.seed);
    structured["samples"] = json!(flags.samples);
    Ok(Outcome {
        text,
        structured,
        code: if s.witness.is_some() { EXIT_NO } else { EXIT_UNKNOWN },
    })
}

fn sturm(cmd: &SturmCommand) -> Result<Outcome, Failure> {
    match cmd {
        SturmCommand::ExistsPos { p, q } => {
            let b = exists_both_positive(&upoly(p)?, &upoly(q)?)?;
            Ok(Outcome {
                text: format!("{b}\n"),
                structured: json!({"exists": b}),
                code: if b { EXIT_YES } else { EXIT_NO },
            })
        }
        SturmCommand::Tarski { f, g } => {
            let v = tarski_query(&upoly(f)?, &upoly(g)?)?;
            Ok(Outcome {
                text: format!("{v}\n"),
                structured: json!({"tarski": v}),
                code: EXIT_YES,
            })
        }
        SturmCommand::Count { f, p, q } => {
            let v = count_pos_pos(&upoly(f)?, &upoly(p)?, &upoly(q)?)?;
            Ok(Outcome {
                text: format!("{v}\n"),
                structured: json!({"count": v}),
                code: EXIT_YES,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let flags = &cli.run;
    match &cli.command {
        Command::Decide { map } => decide(map, flags),
        Command::Poly { map } => poly(map, flags),
        Command::Choi { map } => choi(map),
        Command::Nonneg { poly } => nonneg(poly, flags),
        Command::Falsify { input } => falsify(input, flags),
        Command::Sturm(cmd) => sturm(cmd),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.run.format {
                Format::Text => print!("{}", out.text),
                Format::Structured => println!("{}", serde_json::to_string_pretty(&out.structured).unwrap()),
            }
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
