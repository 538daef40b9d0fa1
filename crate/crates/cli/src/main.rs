use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use milnor_zeta_core::chi::{chi_for, ChiStrategy, CurveParams, SuppliedChi};
use milnor_zeta_core::report::{analyze, AnalysisOptions, AnalysisReport, ZetaStatus};
use milnor_zeta_core::toricfan::{chart_pullback, divisor_configuration, subdivide, Cone};
use milnor_zeta_core::{CoveringMap, Error, LaurentMixedMonomial, MixedMonomial, MixedPolynomial, NewtonBoundary, Subset, WeightVector};
use serde_json::json;

const GRAMMAR: &str = "\
POLYNOMIAL GRAMMAR:
    poly   := ws term (ws ('+'|'-') ws term)* ws
    term   := [coeff '*'] factor ('*' factor)* | coeff
    factor := ('z'|'zbar') INDEX ['^' POSINT]
    coeff  := DECIMAL | '(' DECIMAL ',' DECIMAL ')'

    Indices are 1-based; zbarJ is the conjugate of zJ. The first term may
    carry a sign, and the parts of a complex coefficient (re,im) may be
    signed. Example: z1^3*zbar1 + z2^3*zbar2 + z2^5

EXIT CODES:
    0 success, 1 usage error, 2 input or parse error,
    3 strategy gap (a partial report is still written)";

#[derive(Parser)]
#[command(name = "milnor-zeta", version, about = "Milnor fibration invariants of mixed polynomials", after_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// File holding the polynomial; `-` or absent reads stdin.
    file: Option<String>,
    /// Polynomial given inline instead of a file.
    #[arg(short = 'e', long = "expr", conflicts_with = "file", allow_hyphen_values = true)]
    expr: Option<String>,
    /// Declared number of variables (defaults to the largest index used).
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct ChiOpts {
    /// holomorphic | covering:A,B | curve | supplied:FILE
    #[arg(long = "chi", default_value = "holomorphic")]
    chi: String,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: Newton data, face type, chi table, zeta.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        chi: ChiOpts,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Samples per facet for the non-degeneracy spot check.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Attach the power series of the zeta function up to this degree.
        #[arg(long)]
        expand: Option<usize>,
        /// Include the regular fan and divisor graph.
        #[arg(long)]
        subdivide: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Zeta function, chi(F) and Milnor number.
    Zeta {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        chi: ChiOpts,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        expand: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Pull back along w -> w^a conj(w)^b.
    Cover {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Regular subdivision of the dual Newton diagram (n <= 3).
    Subdivide {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Toric chart pullback for a regular cone, e.g. --cone "[[1,1],[0,1]]".
    Chart {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        cone: String,
    },
    /// Euler characteristic chi(P) of one toric Milnor fiber.
    Chi {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        chi: ChiOpts,
        /// Coordinate subset, 1-based, e.g. 1,2.
        #[arg(long = "I", value_delimiter = ',')]
        subset: Vec<usize>,
        /// Weight vector in I-coordinates, e.g. 1,1.
        #[arg(long = "P", value_delimiter = ',')]
        weight: Vec<i64>,
    },
}

enum Failure {
    Usage(String),
    Input(String),
    Gap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unsupported(_) => Failure::Usage(e.to_string()),
            Error::StrategyInapplicable(_) | Error::NoZerosFound | Error::NonIntegralOrbitCount { .. } => {
                Failure::Gap(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read_poly(input: &Input) -> Result<MixedPolynomial, Failure> {
    let text = match (&input.expr, input.file.as_deref()) {
        (Some(e), _) => e.clone(),
        (None, Some(path)) if path != "-" => {
            fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))?
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    Ok(MixedPolynomial::parse(text.trim(), input.n)?)
}

fn parse_strategy(value: &str) -> Result<ChiStrategy, Failure> {
    let usage = || Failure::Usage(format!("invalid --chi value {value:?}; expected holomorphic, covering:A,B, curve or supplied:FILE"));
    match value.split_once(':') {
        None if value == "holomorphic" => Ok(ChiStrategy::HolomorphicVolume),
        None if value == "curve" => Ok(ChiStrategy::CurveOrbitCount(CurveParams::default())),
        Some(("covering", ab)) => {
            let (a, b) = ab.split_once(',').ok_or_else(usage)?;
            let a: u32 = a.trim().parse().map_err(|_| usage())?;
            let b: u32 = b.trim().parse().map_err(|_| usage())?;
            CoveringMap::new(a, b).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(ChiStrategy::CoveringPullback { a, b })
        }
        Some(("supplied", path)) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))?;
            Ok(ChiStrategy::Supplied(SuppliedChi::from_json(&text)?))
        }
        _ => Err(usage()),
    }
}

fn emit_report(report: &AnalysisReport, format: Format) -> Outcome {
    match format {
        Format::Text => print!("{}", report.to_text()),
        _ => println!("{}", report.to_json()),
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    if report.zeta_status == ZetaStatus::StrategyGap {
        eprintln!("error: chi unavailable for some (I, P); zeta omitted");
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn laurent(t: &MixedMonomial) -> LaurentMixedMonomial {
    LaurentMixedMonomial {
        coeff: [t.coeff.re, t.coeff.im],
        nu: t.exps.nu.iter().map(|&x| i64::from(x)).collect(),
        mu: t.exps.mu.iter().map(|&x| i64::from(x)).collect(),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Analyze { input, chi, seed, samples, expand, subdivide, format } => {
            if format == Format::Dot {
                return Err(Failure::Usage("analyze supports --format json or text".into()));
            }
            let f = read_poly(&input)?;
            let opts = AnalysisOptions {
                chi_strategy: parse_strategy(&chi.chi)?,
                subdivide,
                nondeg_samples: samples,
                seed,
                expand,
                ..AnalysisOptions::default()
            };
            emit_report(&analyze(&f, &opts)?, format)
        }
        Command::Zeta { input, chi, seed, samples, expand, format } => {
            if format == Format::Dot {
                return Err(Failure::Usage("zeta supports --format json or text".into()));
            }
            let f = read_poly(&input)?;
            let opts = AnalysisOptions {
                chi_strategy: parse_strategy(&chi.chi)?,
                nondeg_samples: samples,
                seed,
                expand,
                ..AnalysisOptions::default()
            };
            let report = analyze(&f, &opts)?;
            let Some(z) = &report.zeta else {
                return emit_report(&report, format);
            };
            match format {
                Format::Text => println!("{}", z.text),
                _ => println!("{}", serde_json::to_string_pretty(z).expect("zeta serializes")),
            }
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cover { input, a, b, format } => {
            let f = read_poly(&input)?;
            let cov = CoveringMap::new(a, b).map_err(|e| Failure::Usage(e.to_string()))?;
            let g = cov.pullback(&f)?;
            if format == Format::Text {
                println!("{g}");
                return Ok(ExitCode::SUCCESS);
            }
            let mut terms = Vec::new();
            if f.is_convenient() {
                for facet in NewtonBoundary::of(&f)?.facets {
                    for &i in &facet.support_terms {
                        let t = &f.terms()[i];
                        let (r, p) = (t.rdeg(&facet.normal), t.pdeg(&facet.normal));
                        let (r2, p2) = cov.degree_transform(r, p);
                        terms.push(json!({
                            "P": facet.normal,
                            "term": i,
                            "rdeg": r, "pdeg": p,
                            "rdeg_pullback": r2, "pdeg_pullback": p2,
                        }));
                    }
                }
            }
            println!(
                "{}",
                pretty(&json!({
                    "a": a, "b": b,
                    "pullback": g.to_string(),
                    "radial_factor": cov.radial_factor(),
                    "polar_factor": cov.polar_factor(),
                    "degrees": terms,
                }))
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Subdivide { input, format } => {
            let f = read_poly(&input)?;
            let fan = subdivide(&f)?;
            let graph = divisor_configuration(&fan, &f)?;
            match format {
                Format::Dot => print!("{}", graph.to_dot()),
                Format::Text => {
                    for c in &fan.cones {
                        println!("{c}");
                    }
                }
                Format::Json => println!("{}", pretty(&json!({ "fan": fan, "divisors": graph }))),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Chart { input, cone } => {
            let f = read_poly(&input)?;
            let gens: Vec<Vec<i64>> = serde_json::from_str(&cone)
                .map_err(|e| Failure::Usage(format!("invalid --cone {cone:?}: {e}")))?;
            let sigma = Cone::from_points(&gens)?;
            let c = chart_pullback(&f, &sigma)?;
            println!(
                "{}",
                pretty(&json!({
                    "cone": c.cone,
                    "degrees": c.degrees,
                    "factor": c.factor.to_string(),
                    "face_part": c.face_part.as_ref().map(|fp| {
                        fp.terms().iter().map(|t| laurent(t).to_string()).collect::<Vec<_>>().join(" + ")
                    }),
                    "remainder": c.remainder.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "remainder_positive": c.remainder_is_positive(),
                }))
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Chi { input, chi, subset, weight } => {
            let f = read_poly(&input)?;
            let strategy = parse_strategy(&chi.chi)?;
            let subset = Subset::from_one_based(&subset).map_err(|e| Failure::Usage(e.to_string()))?;
            let weight = WeightVector::new(weight).map_err(|e| Failure::Usage(e.to_string()))?;
            let rec = chi_for(&f, &subset, &weight, &strategy)?;
            println!("{}", serde_json::to_string_pretty(&rec).expect("record serializes"));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Gap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
