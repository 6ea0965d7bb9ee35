//! Command-line front end: every library computation as a subcommand,
//! with plain text (primary value on the final line) or JSON output.
//!
//! Exit codes: 0 on success, 1 on domain errors (bad matrix text, zero
//! polynomial, non-prime modulus, ...), 2 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use essdim::ed::{self, TorusActionSpec};
use essdim::intmat::IntMatrix;
use essdim::laurent::{self, LaurentPoly};

#[derive(Parser)]
#[command(
    name = "essdim",
    version,
    about = "Exact essential dimension computations via Smith normal form and monomial valuations"
)]
struct Cli {
    /// Emit a single JSON object instead of plain text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MatrixInput {
    /// Inline matrix text, e.g. "2 0; 1 1; 0 2"
    #[arg(long, value_name = "TEXT", allow_hyphen_values = true)]
    matrix: Option<String>,
    /// Read the matrix text from a file
    #[arg(long, value_name = "PATH")]
    matrix_file: Option<PathBuf>,
}

impl MatrixInput {
    fn load(&self) -> Result<IntMatrix, Failure> {
        let text = match (&self.matrix, &self.matrix_file) {
            (Some(text), None) => text.clone(),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map_err(|e| Failure::domain(format!("cannot read {}: {e}", path.display())))?,
            _ => unreachable!("clap enforces exactly one source"),
        };
        Ok(text.parse::<IntMatrix>()?)
    }
}

#[derive(Args)]
struct FormsArgs {
    /// Dimension of the underlying space
    #[arg(short = 'm', long)]
    dimension: usize,
    /// Degree of the forms
    #[arg(short = 'd', long)]
    degree: usize,
}

#[derive(Args)]
struct ExprArgs {
    /// Ordered variable names, e.g. "x1,x2"
    #[arg(long, value_delimiter = ',', required = true)]
    vars: Vec<String>,
    /// Laurent polynomial expression
    #[arg(allow_hyphen_values = true)]
    expr: String,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form with unimodular transformations
    Snf {
        #[command(flatten)]
        input: MatrixInput,
    },
    /// Rank over the rationals
    Rank {
        #[command(flatten)]
        input: MatrixInput,
    },
    /// Determinantal rank modulo an integer
    RankMod {
        #[command(flatten)]
        input: MatrixInput,
        /// Modulus, absolute value at least 2
        #[arg(short = 'm', long, allow_hyphen_values = true)]
        modulus: String,
    },
    /// Essential dimension of the torus orbit functor of an exponent matrix
    EdTorus {
        #[command(flatten)]
        input: MatrixInput,
    },
    /// Essential dimension of the induced action on projective space
    EdProjective {
        #[command(flatten)]
        input: MatrixInput,
    },
    /// Essential dimension of rigid homogeneous forms
    EdForms {
        #[command(flatten)]
        forms: FormsArgs,
    },
    /// Essential dimension of rigid hypersurfaces in projective space
    EdHypersurface {
        #[command(flatten)]
        forms: FormsArgs,
    },
    /// Essential dimension (rank) of a finite abelian group
    EdAbelian {
        /// Cyclic moduli, e.g. "2,4"
        #[arg(long, value_delimiter = ',', required = true)]
        moduli: Vec<String>,
    },
    /// Canonical dimension of the torus action
    CdTorus {
        #[command(flatten)]
        input: MatrixInput,
    },
    /// Valuation (lexicographically smallest exponent) of an expression
    Val {
        #[command(flatten)]
        expr: ExprArgs,
    },
    /// Initial exponent (lexicographically largest) of an expression
    Initial {
        #[command(flatten)]
        expr: ExprArgs,
    },
    /// Independence certificate for the rows of a valuation matrix
    Indep {
        #[command(flatten)]
        input: MatrixInput,
    },
    /// Brute-force minimum of rank(I + E*U) over bounded parameter matrices
    Search {
        #[command(flatten)]
        input: MatrixInput,
        /// Entry bound for the searched matrices U
        #[arg(long)]
        bound: usize,
        /// Search beyond the default size guard (m*n <= 9, bound <= 6)
        #[arg(long)]
        force: bool,
    },
    /// Valuation obstruction for a compression of a finite abelian group action
    CheckAbelian {
        /// Cyclic moduli, e.g. "2,4"
        #[arg(long, value_delimiter = ',', required = true)]
        moduli: Vec<String>,
        /// A prime dividing every modulus
        #[arg(short = 'p', long, allow_hyphen_values = true)]
        prime: String,
        /// Variable names; defaults to x1,...,xn
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        /// One polynomial per group coordinate (use `--` before
        /// expressions that start with a minus sign)
        #[arg(required = true)]
        polys: Vec<String>,
    },
}

/// A failure with the exit code it maps to.
struct Failure {
    message: String,
    usage: bool,
}

impl Failure {
    fn domain(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            usage: false,
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            usage: true,
        }
    }
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(if failure.usage { 2 } else { 1 })
        }
    }
}

fn bigint_value(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(small) => Value::from(small),
        Err(_) => Value::from(v.to_string()),
    }
}

fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(bigint_value).collect()))
            .collect(),
    )
}

fn divisors_value(divisors: &[BigInt]) -> Value {
    Value::Array(divisors.iter().map(bigint_value).collect())
}

fn tuple_line(values: &[BigInt]) -> String {
    let inner: Vec<String> = values.iter().map(BigInt::to_string).collect();
    format!("({})", inner.join(","))
}

fn parse_bigint(text: &str, what: &str) -> Result<BigInt, Failure> {
    text.trim()
        .parse::<BigInt>()
        .map_err(|_| Failure::domain(format!("{what} `{text}` is not an integer")))
}

fn parse_moduli(moduli: &[String]) -> Result<Vec<BigInt>, Failure> {
    moduli
        .iter()
        .map(|m| parse_bigint(m, "modulus"))
        .collect()
}

fn parse_poly(expr: &str, vars: &[String]) -> Result<LaurentPoly, Failure> {
    let trimmed: Vec<&str> = vars.iter().map(|v| v.trim()).collect();
    Ok(laurent::parse_laurent(expr, &trimmed)?)
}

fn emit(json_mode: bool, object: Value, plain: &[String]) {
    if json_mode {
        println!("{object}");
    } else {
        for line in plain {
            println!("{line}");
        }
    }
}

fn ed_report(json_mode: bool, key: &str, value: usize, divisors: &[BigInt]) {
    emit(
        json_mode,
        json!({ key: value, "divisors": divisors_value(divisors) }),
        &[value.to_string()],
    );
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Snf { input } => {
            let a = input.load()?;
            let snf = a.smith_normal_form();
            emit(
                cli.json,
                json!({
                    "divisors": divisors_value(snf.divisors()),
                    "p": matrix_value(snf.p()),
                    "q": matrix_value(snf.q()),
                }),
                &[
                    format!("p = {}", snf.p()),
                    format!("d = {}", snf.d()),
                    format!("q = {}", snf.q()),
                    tuple_line(snf.divisors()),
                ],
            );
        }
        Command::Rank { input } => {
            let rank = input.load()?.rank_rational();
            emit(cli.json, json!({ "rank": rank }), &[rank.to_string()]);
        }
        Command::RankMod { input, modulus } => {
            let m = parse_bigint(modulus, "modulus")?;
            let rank = input.load()?.rank_mod(&m)?;
            emit(
                cli.json,
                json!({ "rank": rank, "modulus": bigint_value(&m) }),
                &[rank.to_string()],
            );
        }
        Command::EdTorus { input } => {
            let e = input.load()?;
            let divisors = e.elementary_divisors();
            let value = ed::ed_torus(&TorusActionSpec::new(e));
            ed_report(cli.json, "ed", value, &divisors);
        }
        Command::EdProjective { input } => {
            let e = input.load()?;
            if e.rows() == 0 {
                return Err(Failure::domain(
                    "projective action needs at least one coordinate (a nonempty matrix)",
                ));
            }
            let extended = ed::extend_projective(&e);
            let divisors = extended.elementary_divisors();
            let value = ed::ed_projective(&TorusActionSpec::new(e));
            ed_report(cli.json, "ed", value, &divisors);
        }
        Command::EdForms { forms } => {
            let matrix = ed::forms_matrix(forms.dimension, forms.degree)?;
            let divisors = matrix.elementary_divisors();
            let value = ed::ed_torus(&TorusActionSpec::new(matrix));
            ed_report(cli.json, "ed", value, &divisors);
        }
        Command::EdHypersurface { forms } => {
            let matrix = ed::forms_matrix(forms.dimension, forms.degree)?;
            let extended = ed::extend_projective(&matrix);
            let divisors = extended.elementary_divisors();
            let value = ed::ed_projective(&TorusActionSpec::new(matrix));
            ed_report(cli.json, "ed", value, &divisors);
        }
        Command::EdAbelian { moduli } => {
            let moduli = parse_moduli(moduli)?;
            let divisors = IntMatrix::diagonal(&moduli).elementary_divisors();
            let value = ed::ed_abelian(&moduli)?;
            ed_report(cli.json, "ed", value, &divisors);
        }
        Command::CdTorus { input } => {
            let e = input.load()?;
            let divisors = e.elementary_divisors();
            let value = ed::cd_torus(&TorusActionSpec::new(e));
            ed_report(cli.json, "cd", value, &divisors);
        }
        Command::Val { expr } => {
            let poly = parse_poly(&expr.expr, &expr.vars)?;
            let v = poly.valuation()?;
            emit(
                cli.json,
                json!({ "valuation": v.coords() }),
                &[v.to_string()],
            );
        }
        Command::Initial { expr } => {
            let poly = parse_poly(&expr.expr, &expr.vars)?;
            let v = poly.initial_exponent()?;
            emit(
                cli.json,
                json!({ "initial": v.coords() }),
                &[v.to_string()],
            );
        }
        Command::Indep { input } => {
            let v = input.load()?;
            let cert = ed::construct_independent(&v)?;
            let index_list = |ixs: &[usize]| {
                ixs.iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            emit(
                cli.json,
                json!({
                    "lambda": bigint_value(cert.lambda()),
                    "Lambda": matrix_value(cert.lambda_matrix()),
                    "rows": cert.row_select(),
                    "cols": cert.col_select(),
                    "g_exponents": matrix_value(cert.g_exponents()),
                }),
                &[
                    format!("Lambda = {}", cert.lambda_matrix()),
                    format!("rows = {}", index_list(cert.row_select())),
                    format!("cols = {}", index_list(cert.col_select())),
                    format!("g = {}", cert.g_exponents()),
                    cert.lambda().to_string(),
                ],
            );
        }
        Command::Search {
            input,
            bound,
            force,
        } => {
            let e = input.load()?;
            let cells = e.rows() * e.cols();
            if (cells > 9 || *bound > 6) && !force {
                return Err(Failure::usage(format!(
                    "search space has (2*{bound}+1)^{cells} points; pass --force to search \
                     beyond m*n <= 9 with bound <= 6"
                )));
            }
            let witness = ed::compression_search(&TorusActionSpec::new(e), *bound);
            emit(
                cli.json,
                json!({
                    "min_rank": witness.achieved_rank(),
                    "witness": matrix_value(witness.parameter_valuations()),
                }),
                &[
                    format!("witness = {}", witness.parameter_valuations()),
                    witness.achieved_rank().to_string(),
                ],
            );
        }
        Command::CheckAbelian {
            moduli,
            prime,
            vars,
            polys,
        } => {
            let moduli = parse_moduli(moduli)?;
            let p = parse_bigint(prime, "prime")?;
            let names: Vec<String> = match vars {
                Some(names) => names.clone(),
                None => (1..=moduli.len()).map(|i| format!("x{i}")).collect(),
            };
            if names.len() != moduli.len() {
                return Err(Failure::domain(format!(
                    "expected {} variable names, got {}",
                    moduli.len(),
                    names.len()
                )));
            }
            let mut parsed = Vec::with_capacity(polys.len());
            for text in polys {
                parsed.push(parse_poly(text, &names)?);
            }
            let report = ed::abelian_obstruction_check(&moduli, &parsed, &p)?;
            let mut object = json!({
                "equivariant": report.is_equivariant(),
                "valuation": matrix_value(report.valuation_matrix()),
            });
            let mut lines = vec![format!(
                "equivariant: {}",
                if report.is_equivariant() { "yes" } else { "no" }
            )];
            lines.push(format!("valuation = {}", report.valuation_matrix()));
            if let Some(congruence) = report.congruence() {
                object["identity_mod_p"] = Value::from(congruence.identity_mod_p);
                object["rank_mod_p"] = Value::from(congruence.rank_mod_p);
                object["rank"] = Value::from(congruence.rank_rational);
                object["full_rank"] = Value::from(report.full_rank_established());
                lines.push(format!(
                    "identity mod {p}: {}",
                    if congruence.identity_mod_p { "yes" } else { "no" }
                ));
                lines.push(format!("rank mod {p} = {}", congruence.rank_mod_p));
                lines.push(congruence.rank_mod_p.to_string());
            } else {
                let violations: Vec<Value> = report
                    .violations()
                    .iter()
                    .map(|v| {
                        json!({
                            "component": v.component,
                            "term": v.term.coords(),
                            "coordinate": v.coordinate,
                            "residue": bigint_value(&v.residue),
                            "required": bigint_value(&v.required),
                        })
                    })
                    .collect();
                object["violations"] = Value::Array(violations);
                for v in report.violations() {
                    lines.push(format!(
                        "violation: f{} term {} coordinate {}: residue {}, required {}",
                        v.component + 1,
                        v.term,
                        v.coordinate + 1,
                        v.residue,
                        v.required
                    ));
                }
                lines.push("non-equivariant".to_string());
            }
            emit(cli.json, object, &lines);
        }
    }
    Ok(())
}
