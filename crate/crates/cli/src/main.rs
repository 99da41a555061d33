//! `oreseries`: command-line front end for the twisted power series kernel.

mod payload;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oreseries::rational::{self, FormKind, RationalForm};
use oreseries::{make_context, with_field, Error, Field};
use serde_json::{json, Value};

use payload::Payload;

#[derive(Parser)]
#[command(name = "oreseries", version, about = "Rational twisted power series over fields with an endomorphism")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Field specification, e.g. `QQ`, `GF(4)[x^2]`, `GF(5)(t)[t->t+1]`.
    #[arg(long)]
    field: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

/// Exactly one rational object: a fraction `(P)^-1*(Q)`, a representation
/// or a recurrence (JSON). Each value may be inline, a file path or `-`.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct FormInput {
    #[arg(long)]
    fraction: Option<String>,
    #[arg(long)]
    rep: Option<String>,
    #[arg(long)]
    rec: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand a rational object to n coefficients.
    Expand {
        #[command(flatten)]
        input: FormInput,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Guess a left fraction P⁻¹Q from a truncated series.
    Guess {
        /// Series `[a0, a1, ...]` (optionally `@ N`) or JSON.
        #[arg(long)]
        coeffs: String,
        /// Largest denominator degree tried; defaults to (N - 4)/2.
        #[arg(long)]
        max_order: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Kronecker determinants det D_m for m ≤ m-max and the verdict.
    Kronecker {
        #[arg(long)]
        coeffs: String,
        /// Defaults to (N - 1)/2, the largest m the series supports.
        #[arg(long)]
        m_max: Option<usize>,
        /// Print the determinant trace as CSV `m,det`.
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Minimal twisted polynomial (generator of the syntactic ideal).
    Minpoly {
        #[arg(long)]
        fraction: String,
        #[command(flatten)]
        common: Common,
    },
    /// Rank of a rational series; `--json` emits the full canonical data.
    Rank {
        #[arg(long)]
        fraction: String,
        #[command(flatten)]
        common: Common,
    },
    /// Minimal representation of the same series.
    Minimize {
        #[arg(long)]
        rep: String,
        #[command(flatten)]
        common: Common,
    },
    /// Matrix B conjugating the first representation into the second.
    Similar {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        other: String,
        #[command(flatten)]
        common: Common,
    },
    /// Representation of the Hadamard product of two series.
    Hadamard {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        other: String,
        #[command(flatten)]
        common: Common,
    },
    /// Regularity of a rational series by its three characterizations.
    Regular {
        #[arg(long)]
        fraction: String,
        #[command(flatten)]
        common: Common,
    },
    /// Convert between fraction, representation and recurrence.
    Convert {
        #[command(flatten)]
        input: FormInput,
        #[arg(long, value_enum)]
        to: Target,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Fraction,
    Rep,
    Rec,
}

pub enum CliError {
    Usage(String),
    Kernel(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Kernel(e)
    }
}

/// Text and JSON renderings of a result.
struct Output {
    text: String,
    json: Value,
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

fn form_of<F: Field>(f: &F, p: &Payload) -> Result<RationalForm<F>, CliError> {
    Ok(match p.flag {
        "fraction" => RationalForm::Fraction(payload::fraction(f, p)?),
        "rep" => RationalForm::Rep(payload::rep(f, p)?),
        _ => {
            let (rec, seed) = payload::recurrence(f, p)?;
            RationalForm::Rec(rec, seed)
        }
    })
}

fn form_output<F: Field>(x: &RationalForm<F>) -> Output {
    match x {
        RationalForm::Fraction(y) => Output {
            text: y.to_string(),
            json: payload::fraction_json(y),
        },
        RationalForm::Rep(r) => {
            let json = payload::rep_json(r);
            Output { text: compact(&json), json }
        }
        RationalForm::Rec(rec, seed) => {
            let json = payload::recurrence_json(rec, seed);
            Output { text: compact(&json), json }
        }
    }
}

fn run<F: Field>(f: &F, cmd: &Cmd, inputs: &[Payload]) -> Result<Output, CliError> {
    let input = &inputs[0];
    match cmd {
        Cmd::Expand { n, .. } => {
            let s = form_of(f, input)?.expand(*n)?;
            Ok(Output {
                text: s.to_string(),
                json: payload::series_json(&s),
            })
        }
        Cmd::Guess { max_order, .. } => {
            let s = payload::series(f, input)?;
            let order = max_order.unwrap_or(s.precision().saturating_sub(4) / 2);
            let (rec, x) = rational::guess_left_denominator(&s, order)?;
            let seed = &s.coeffs()[..rec.seed_len().min(s.precision())];
            let text = format!(
                "denominator: {}\nnumerator: {}\nfraction: {x}",
                x.denominator(),
                x.numerator()
            );
            let mut json = payload::fraction_json(&x);
            json["recurrence"] = payload::recurrence_members(&rec, seed);
            Ok(Output { text, json })
        }
        Cmd::Kronecker { m_max, csv, .. } => {
            let s = payload::series(f, input)?;
            let m_max = m_max.unwrap_or(s.precision().saturating_sub(1) / 2);
            let report = rational::kronecker_test(&s, m_max)?;
            let dets: Vec<(usize, String)> = report
                .determinants
                .iter()
                .map(|(m, d)| (*m, f.format_elem(d)))
                .collect();
            let text = if *csv {
                let mut out = String::from("m,det");
                for (m, d) in &dets {
                    out.push_str(&format!("\n{m},{d}"));
                }
                out
            } else {
                let mut out = format!("verdict: {}", report.verdict.as_str());
                for (m, d) in &dets {
                    out.push_str(&format!("\ndet D_{m} = {d}"));
                }
                if let Some((_, x)) = &report.witness {
                    out.push_str(&format!("\nwitness: {x}"));
                }
                out
            };
            let json = payload::tagged(
                f,
                json!({
                    "verdict": report.verdict.as_str(),
                    "determinants": dets.iter().map(|(m, d)| json!({"m": m, "det": d})).collect::<Vec<_>>(),
                    "witness": report.witness.as_ref().map(|(_, x)| payload::fraction_members(x)),
                }),
            );
            Ok(Output { text, json })
        }
        Cmd::Minpoly { .. } => {
            let x = payload::fraction(f, input)?;
            let r = rational::minimal_polynomial(&x)?;
            let json = payload::tagged(
                f,
                json!({"minimal_polynomial": r.to_string(), "degree": r.degree()}),
            );
            Ok(Output { text: r.to_string(), json })
        }
        Cmd::Rank { .. } => {
            let x = payload::fraction(f, input)?;
            let data = rational::canonical_data(&x)?;
            let (p, q) = &data.right_fraction;
            let json = payload::tagged(
                f,
                json!({
                    "rank": data.rank,
                    "minimal_polynomial": data.minimal_polynomial.to_string(),
                    "left_fraction": payload::fraction_members(&data.left_fraction),
                    "right_fraction": {"numerator": p.to_string(), "denominator": q.to_string()},
                    "regular": data.regular,
                    "k": data.k,
                }),
            );
            Ok(Output { text: data.rank.to_string(), json })
        }
        Cmd::Minimize { .. } => {
            let r = payload::rep(f, input)?.minimize()?;
            let json = payload::rep_json(&r);
            Ok(Output { text: compact(&json), json })
        }
        Cmd::Similar { .. } => {
            let (r1, r2) = (payload::rep(f, input)?, payload::rep(f, &inputs[1])?);
            let b = r1.similarity_witness(&r2)?;
            let matrix = payload::matrix_json(f, &b);
            Ok(Output {
                text: compact(&matrix),
                json: payload::tagged(f, json!({ "B": matrix })),
            })
        }
        Cmd::Hadamard { .. } => {
            let (r1, r2) = (payload::rep(f, input)?, payload::rep(f, &inputs[1])?);
            let json = payload::rep_json(&r1.hadamard(&r2));
            Ok(Output { text: compact(&json), json })
        }
        Cmd::Regular { .. } => {
            let x = payload::fraction(f, input)?;
            let g = rational::is_regular(&x)?;
            let text = format!(
                "regular: {}\nnegative_degree: {}\nminimal_polynomial_unit_constant: {}\ninvertible_matrix: {}",
                g.regular, g.negative_degree, g.minimal_polynomial_unit_constant, g.invertible_matrix
            );
            let json = payload::tagged(
                f,
                json!({
                    "regular": g.regular,
                    "negative_degree": g.negative_degree,
                    "minimal_polynomial_unit_constant": g.minimal_polynomial_unit_constant,
                    "invertible_matrix": g.invertible_matrix,
                }),
            );
            Ok(Output { text, json })
        }
        Cmd::Convert { to, .. } => {
            let to = match to {
                Target::Fraction => FormKind::Fraction,
                Target::Rep => FormKind::Rep,
                Target::Rec => FormKind::Rec,
            };
            Ok(form_output(&rational::convert(&form_of(f, input)?, to)?))
        }
    }
}

fn payload_args(cmd: &Cmd) -> (Vec<(&'static str, Option<&String>)>, &Common) {
    match cmd {
        Cmd::Expand { input, common, .. } | Cmd::Convert { input, common, .. } => (
            vec![
                ("fraction", input.fraction.as_ref()),
                ("rep", input.rep.as_ref()),
                ("rec", input.rec.as_ref()),
            ],
            common,
        ),
        Cmd::Guess { coeffs, common, .. } | Cmd::Kronecker { coeffs, common, .. } => {
            (vec![("coeffs", Some(coeffs))], common)
        }
        Cmd::Minpoly { fraction, common }
        | Cmd::Rank { fraction, common }
        | Cmd::Regular { fraction, common } => (vec![("fraction", Some(fraction))], common),
        Cmd::Minimize { rep, common } => (vec![("rep", Some(rep))], common),
        Cmd::Similar { rep, other, common } | Cmd::Hadamard { rep, other, common } => {
            (vec![("rep", Some(rep)), ("other", Some(other))], common)
        }
    }
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let (args, common) = payload_args(&cli.cmd);
    let inputs = payload::load(&args)?;
    let spec = payload::field_spec(common.field.as_ref(), &inputs)?;
    let ctx = make_context(&spec)?;
    let out = with_field!(&ctx, f => run(f, &cli.cmd, &inputs))?;
    Ok(if common.json {
        serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
    } else {
        out.text
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Kernel(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(if e.is_input_error() { 1 } else { 2 })
        }
    }
}
