//! The `tda` command line: products, coproducts and Solomon's rule on
//! textual input, plus the invariant suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 size cap exceeded.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use twisted_descent::json::{descent_to_json, element_from_json, element_to_json, parse_json, tensor_to_json};
use twisted_descent::solomon::{in_young_subgroup, shuffle_test, young_decompose};
use twisted_descent::text::{
    parse_descent_element, parse_integer_composition, parse_permutation, parse_set_composition, render_element,
    render_tensor, TensorStyle,
};
use twisted_descent::verify::{self, VerifyConfig, DEFAULT_SEED};
use twisted_descent::{parse_element, DescentElement, Error, FiniteSet, Limits, TDElement};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SIZE_CAP: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "tda", version, about = "Exact arithmetic in the free twisted descent algebra")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,

    /// Write tensors with `(x)` instead of `⊗`.
    #[arg(long, global = true)]
    pub ascii: bool,

    /// Degree bound for the verification suites.
    #[arg(long, global = true, env = "TDA_MAX_N")]
    pub max_n: Option<usize>,

    /// Oracle universe size and random support bound.
    #[arg(long, global = true, env = "TDA_MAX_SUPPORT")]
    pub max_support: Option<usize>,

    /// Cap on coproduct splits and orbit-sum expansions.
    #[arg(long, global = true, env = "TDA_MAX_TERMS")]
    pub max_terms: Option<u64>,

    /// Seed for the randomized suites.
    #[arg(long, global = true, env = "TDA_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Number of random trials per randomized law.
    #[arg(long, global = true, env = "TDA_TRIALS")]
    pub trials: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convolution product a ∗ b.
    Conv {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Composition product a ∘ b.
    Comp {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Coproduct δ(a).
    Coprod {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Solomon's rule in the descent algebra, e.g. `solomon 2,1 1,2`.
    Solomon {
        #[arg(allow_hyphen_values = true)]
        c1: String,
        #[arg(allow_hyphen_values = true)]
        c2: String,
    },
    /// Run an invariant suite (or `all`).
    Verify { suite: String },
    /// Factor σ as (Young subgroup element) ∘ (shuffle).
    Young {
        /// An integer composition such as `2,1`, or blocks such as `{1,2}|{3}`.
        partition: String,
        permutation: String,
    },
}

impl Cli {
    fn limits(&self) -> Limits {
        self.verify_config().limits()
    }

    fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            max_n: self.max_n,
            max_support: self.max_support,
            max_terms: self.max_terms,
            trials: self.trials,
            seed: self.seed,
        }
    }

    fn style(&self) -> TensorStyle {
        if self.ascii {
            TensorStyle::Ascii
        } else {
            TensorStyle::Unicode
        }
    }
}

enum Failure {
    Lib(Error, String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e, String::new())
    }
}

fn with_input<T>(r: twisted_descent::Result<T>, input: &str) -> Result<T, Failure> {
    r.map_err(|e| Failure::Lib(e, input.to_string()))
}

/// Text, or the JSON layout when the argument starts with `{`.
fn element_arg(s: &str) -> Result<TDElement, Failure> {
    if s.trim_start().starts_with('{') {
        with_input(parse_json(s).and_then(|v| element_from_json(&v)), s)
    } else {
        with_input(parse_element(s), s)
    }
}

fn descent_arg(s: &str) -> Result<DescentElement, Failure> {
    if s.contains('(') || s.contains('*') {
        with_input(parse_descent_element(s), s)
    } else {
        with_input(parse_integer_composition(s).map(DescentElement::basis), s)
    }
}

fn partition_arg(s: &str) -> Result<Vec<FiniteSet>, Failure> {
    if s.contains('{') {
        with_input(parse_set_composition(s).map(|sc| sc.blocks().to_vec()), s)
    } else {
        with_input(parse_integer_composition(s).map(|c| c.increasing_partition()), s)
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let json = cli.format == Format::Json;
    let mut emit = |line: String| {
        // A closed stdout is not worth a distinct exit code.
        let _ = writeln!(out, "{line}");
    };
    match &cli.command {
        Command::Conv { a, b } => {
            let p = element_arg(a)?.convolve(&element_arg(b)?);
            emit(if json { element_to_json(&p).to_string() } else { render_element(&p) });
        }
        Command::Comp { a, b } => {
            let p = element_arg(a)?.compose(&element_arg(b)?);
            emit(if json { element_to_json(&p).to_string() } else { render_element(&p) });
        }
        Command::Coprod { a } => {
            let d = element_arg(a)?.coproduct_limited(&cli.limits())?;
            emit(if json {
                tensor_to_json(&d).to_string()
            } else {
                render_tensor(&d, cli.style())
            });
        }
        Command::Solomon { c1, c2 } => {
            let p = descent_arg(c1)?.compose(&descent_arg(c2)?);
            emit(if json { descent_to_json(&p).to_string() } else { p.to_string() });
        }
        Command::Young { partition, permutation } => {
            let parts = partition_arg(partition)?;
            let sigma = with_input(parse_permutation(permutation), permutation)?;
            let (beta, tau) = young_decompose(&parts, &sigma)?;
            if !(in_young_subgroup(&parts, &beta) && shuffle_test(&parts, &tau)? && beta.compose(&tau)? == sigma) {
                return Err(Failure::Verify(format!(
                    "factorization of {sigma} did not recompose: β = {beta}, shuffle = {tau}"
                )));
            }
            if json {
                let list = |p: &twisted_descent::Permutation| format!("{:?}", p.images()).replace(' ', "");
                emit(format!("{{\"beta\":{},\"shuffle\":{}}}", list(&beta), list(&tau)));
            } else {
                let name = if cli.ascii { "beta" } else { "β" };
                emit(format!("{name} = {beta}"));
                emit(format!("shuffle = {tau}"));
            }
        }
        Command::Verify { suite } => {
            let reports = verify::run(suite, &cli.verify_config())?;
            if json {
                let all: Vec<String> = reports.iter().map(|r| r.to_json().to_string()).collect();
                emit(format!("[{}]", all.join(",")));
            } else {
                for r in &reports {
                    emit(r.to_string().trim_end().to_string());
                }
            }
            if !reports.iter().all(|r| r.passed()) {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

fn report_error(e: &Error, input: &str, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "error: {e}");
    if let Error::Parse { pos, .. } = e {
        if !input.is_empty() {
            let col = input.get(..*pos).map_or(0, |p| p.chars().count());
            let _ = writeln!(err, "  {input}\n  {}^", " ".repeat(col));
        }
    }
    if e.is_size_limit() {
        EXIT_SIZE_CAP
    } else {
        EXIT_USAGE
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Lib(e, input)) => report_error(&e, &input, err),
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_VERIFY_FAILED
        }
    }
}
