use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ncgeo_core::fuzzy::{parse_rational, ConnectionChoice};
use ncgeo_core::minimal::NumericConfig;
use ncgeo_core::parser::{parse_expression, presentation_by_id};
use ncgeo_core::suites;
use ncgeo_core::{Error, Report};

#[derive(Parser, Debug)]
#[command(name = "ncgeo", version, about = "Exact verification of noncommutative geometry identities")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify the fuzzy sphere or the monopole bundle.
    Verify {
        #[command(subcommand)]
        target: Target,
    },
    /// Minimal surface from Weierstrass data built on F(Λ).
    Minimal {
        /// Polynomial in L (Λ).
        #[arg(long = "F", short = 'F')]
        f: String,
        #[arg(long)]
        gamma1: Option<String>,
        #[arg(long)]
        gamma2: Option<String>,
        #[arg(long, env = "NCGEO_FOCK_DIM", default_value_t = 64)]
        fock_dim: usize,
    },
    /// Normal form of an expression.
    Eval {
        expression: String,
        /// fuzzy, weyl-uv or weyl-lambda.
        #[arg(long, short, default_value = "weyl-lambda")]
        presentation: String,
    },
    /// Every acceptance check.
    Suite {
        #[arg(long, env = "NCGEO_FOCK_DIM", default_value_t = 64)]
        fock_dim: usize,
        #[arg(long, default_value_t = 20240611)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum Target {
    Fuzzy {
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        /// Spin j for matrix mode (e.g. 1/2, 3); all suite spins if omitted.
        #[arg(long)]
        spin: Option<String>,
        #[arg(long, value_enum, default_value_t = Conn::Both)]
        connection: Conn,
    },
    Monopole {
        /// Rational t > 1; ℏ = t − 1/t.
        #[arg(long, default_value = "2")]
        t: String,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Mode {
    Symbolic,
    Matrix,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Conn {
    Zero,
    Epsilon,
    Both,
}

fn numeric_config(fock_dim: usize) -> Result<NumericConfig, Error> {
    if fock_dim < 8 {
        return Err(Error::InvalidParameter(format!("--fock-dim must be at least 8, got {fock_dim}")));
    }
    Ok(NumericConfig { dim: fock_dim, ..NumericConfig::default() })
}

fn execute(command: &Command) -> Result<Report, Error> {
    match command {
        Command::Verify { target: Target::Fuzzy { mode, spin, connection } } => {
            let choice = match connection {
                Conn::Zero => Some(ConnectionChoice::Zero),
                Conn::Epsilon => Some(ConnectionChoice::Epsilon),
                Conn::Both => None,
            };
            match (mode, spin) {
                (Mode::Symbolic, None) => suites::fuzzy_symbolic(choice),
                (Mode::Symbolic, Some(_)) => Err(Error::InvalidParameter("--spin requires --mode matrix".into())),
                (Mode::Matrix, None) => suites::fuzzy_spin(&suites::SPIN_SUITE, choice),
                (Mode::Matrix, Some(j)) => suites::fuzzy_spin(&[suites::parse_spin(j)?], choice),
            }
        }
        Command::Verify { target: Target::Monopole { t } } => suites::monopole(&parse_rational(t)?),
        Command::Minimal { f, gamma1, gamma2, fock_dim } => {
            suites::minimal(f, gamma1.as_deref(), gamma2.as_deref(), &numeric_config(*fock_dim)?)
        }
        Command::Eval { expression, presentation } => {
            let p = presentation_by_id(presentation)?;
            let value = parse_expression(expression, &p)?;
            let mut r = Report::new(p.id());
            r.insert_data("input", expression.clone());
            r.insert_data("normal-form", value.to_text());
            Ok(r)
        }
        Command::Suite { fock_dim, seed } => suites::full(&numeric_config(*fock_dim)?, *seed),
    }
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidParameter(_) | Error::Syntax { .. } | Error::UnknownGenerator(_) | Error::UnknownDerivation(_)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("ncgeo: {e}");
            return ExitCode::from(if usage_error(&e) { 2 } else { 1 });
        }
    };
    let mut text = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("ncgeo: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
