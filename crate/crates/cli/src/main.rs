use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use werner_core::chords::{enumerate_noncrossing, representative_set, Symmetry};
use werner_core::io;
use werner_core::separability::{
    is_separable_pair, partial_trace, rho0000_exact, rho0000_lower_bound, table2,
    two_qubit_werner_form,
};
use werner_core::states::{diagram_state, pizza_state, polygon_density};
use werner_core::werner_ops::{
    decompose, decompose_float, hermitian_basis, CheckRegistry, Operand,
};
use werner_core::{ChordDiagram, WernerError};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "werner",
    version,
    about = "Chord-diagram bases and polygon states for multiqubit Werner operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List noncrossing diagrams with their symmetry class and representative-set membership.
    Diagrams {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        n: u8,
    },
    /// Dump the Hermitian basis of Werner-invariant operators.
    Basis {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        n: u8,
    },
    /// Check Werner invariance of a state or operator file.
    Check {
        input: PathBuf,
        /// Registered check strategy.
        #[arg(long, default_value = "commutator")]
        method: String,
        /// Haar samples for the twirl check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Coefficients of an operator file in the Hermitian basis.
    Decompose { input: PathBuf },
    /// The ρ₀₀,₀₀ table for 3 <= m <= m_max.
    Table2 {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=12), default_value_t = 8)]
        m: u8,
    },
    /// Emit a diagram state (or the pizza state with --n).
    State {
        /// Diagram literal such as "3; 1-6, 2-5, 3-4".
        #[arg(long, conflicts_with = "n", required_unless_present = "n")]
        diagram: Option<String>,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        n: Option<u8>,
    },
    /// Emit the polygon density matrix ρ_m.
    Polygon {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=10))]
        m: u8,
    },
    /// Exact ρ₀₀,₀₀ for qubits 1 and 1+distance, with separability verdict.
    Rho0000 {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=24))]
        m: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..))]
        distance: u8,
    },
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<WernerError> for Failure {
    fn from(e: WernerError) -> Self {
        match e {
            WernerError::OutOfRange { .. }
            | WernerError::InvalidPair { .. }
            | WernerError::DuplicatePosition(_)
            | WernerError::UnknownStrategy(_) => Failure::Usage(e.to_string()),
            _ => Failure::Io(e.to_string()),
        }
    }
}

struct Output {
    text: String,
    passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }
}

fn pretty_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn read_operand(path: &PathBuf) -> Result<Operand, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(io::parse_operand(&text)?)
}

fn symmetry_tag(d: &ChordDiagram) -> &'static str {
    match d.symmetry() {
        Symmetry::HalfTurn => "symm",
        Symmetry::NonRotational => "nonrot",
    }
}

fn cmd_diagrams(n: usize, format: Format) -> Result<Output, Failure> {
    let all = enumerate_noncrossing(n)?;
    let reps = representative_set(n)?;
    let rows: Vec<(String, &'static str, bool)> = all
        .iter()
        .map(|d| (d.to_string(), symmetry_tag(d), reps.contains(d)))
        .collect();
    let text = match format {
        Format::Json => pretty_json(&json!({
            "n": n,
            "count": rows.len(),
            "diagrams": rows.iter().map(|(d, s, r)| json!({"diagram": d, "symmetry": s, "in_r": r})).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("index,diagram,symmetry,in_r\n");
            for (i, (d, sym, r)) in rows.iter().enumerate() {
                s.push_str(&format!("{i},\"{d}\",{sym},{r}\n"));
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for (i, (d, sym, r)) in rows.iter().enumerate() {
                s.push_str(&format!(
                    "{i:>4}  {d:<28} {sym:<7}{}\n",
                    if *r { "R" } else { "" }
                ));
            }
            let symm = rows.iter().filter(|r| r.1 == "symm").count();
            s.push_str(&format!(
                "{} diagrams, {symm} symm, |R| = {}\n",
                rows.len(),
                reps.len()
            ));
            s
        }
    };
    Ok(Output::ok(text))
}

fn cmd_basis(n: usize, format: Format) -> Result<Output, Failure> {
    let basis = hermitian_basis(n)?;
    let text = match format {
        Format::Pretty => {
            let mut s = format!(
                "n = {n}, {} elements, entries scaled by 2^(-{n}/2)\n",
                basis.len()
            );
            for (i, e) in basis.elements().iter().enumerate() {
                s.push_str(&format!(
                    "\n[{i}] {} {}\n",
                    e.provenance.tag(),
                    e.provenance.diagram()
                ));
                s.push_str(&format!("{:?}", e.operator));
            }
            s
        }
        _ => pretty_json(&io::basis_json(&basis)?),
    };
    Ok(Output::ok(text))
}

fn cmd_check(
    input: &PathBuf,
    method: &str,
    samples: usize,
    seed: u64,
    format: Format,
) -> Result<Output, Failure> {
    let operand = read_operand(input)?;
    let registry = CheckRegistry::with_defaults(samples, seed);
    let check = registry.get(method)?;
    let outcome = check.check(&operand)?;
    let text = match format {
        Format::Pretty => {
            let mut s = format!("method: {}\n", outcome.method);
            for (name, v) in &outcome.residuals {
                s.push_str(&format!("{name}: {v:e}\n"));
            }
            s.push_str(&format!(
                "tolerance: {:e}\n{}\n",
                outcome.tolerance,
                if outcome.passed {
                    "INVARIANT"
                } else {
                    "NOT INVARIANT"
                }
            ));
            s
        }
        Format::Csv => {
            let mut s = String::from("method,quantity,value,tolerance,passed\n");
            for (name, v) in &outcome.residuals {
                s.push_str(&format!(
                    "{},{name},{},{},{}\n",
                    outcome.method,
                    io::fmt_f64(*v),
                    io::fmt_f64(outcome.tolerance),
                    outcome.passed
                ));
            }
            s
        }
        Format::Json => pretty_json(&json!({
            "method": outcome.method,
            "residuals": outcome.residuals.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
            "tolerance": outcome.tolerance,
            "passed": outcome.passed,
        })),
    };
    Ok(Output {
        text,
        passed: outcome.passed,
    })
}

fn cmd_decompose(input: &PathBuf, format: Format) -> Result<Output, Failure> {
    let operand = read_operand(input)?;
    let n = operand.qubits();
    if !(1..=5).contains(&n) {
        return Err(Failure::Usage(format!(
            "operator on {n} qubits; decompose supports 1..=5"
        )));
    }
    let basis = hermitian_basis(n)?;
    let d = match &operand {
        Operand::ExactOperator(op) => decompose(op, &basis)?,
        Operand::FloatOperator(op) => decompose_float(op, &basis)?,
        _ => return Err(Failure::Usage("decompose expects an operator file".into())),
    };
    let text = match format {
        Format::Json => pretty_json(&io::decomposition_json(&basis, &d)),
        Format::Csv => io::decomposition_csv(&basis, &d),
        Format::Pretty => {
            let mut s = String::new();
            for (i, (e, c)) in basis.elements().iter().zip(&d.coefficients).enumerate() {
                s.push_str(&format!(
                    "[{i}] {:<15} {:<28} {:>+.12}\n",
                    e.provenance.tag(),
                    e.provenance.diagram().to_string(),
                    c
                ));
            }
            if let Some(exact) = &d.exact {
                let vals: Vec<String> = exact.values.iter().map(|v| v.to_string()).collect();
                s.push_str(&format!(
                    "exact: ({}) * sqrt2^{}\n",
                    vals.join(", "),
                    exact.sqrt2_exponent
                ));
            }
            s.push_str(&format!("residual: {:e}\n", d.residual));
            s
        }
    };
    Ok(Output {
        text,
        passed: d.in_span(),
    })
}

fn cmd_table2(m_max: usize, format: Format) -> Result<Output, Failure> {
    let rows = table2(m_max)?;
    let text = match format {
        Format::Json => pretty_json(&io::table2_json(&rows)),
        Format::Csv => io::table2_csv(&rows),
        Format::Pretty => {
            let mut s = String::from("  m  |a-b|  rho_00,00\n");
            for r in &rows {
                s.push_str(&format!(
                    "{:>3}  {:>5}  {:>8} ≈ {}\n",
                    r.m,
                    r.distance,
                    r.fraction(),
                    r.decimal()
                ));
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn cmd_state(diagram: Option<&str>, n: Option<usize>) -> Result<Output, Failure> {
    let psi = match (diagram, n) {
        (Some(text), _) => {
            let d: ChordDiagram = text
                .parse()
                .map_err(|e: WernerError| Failure::Usage(e.to_string()))?;
            diagram_state(&d)
        }
        (None, Some(n)) => pizza_state(n),
        (None, None) => unreachable!("clap requires one of the two"),
    };
    Ok(Output::ok(pretty_json(&io::exact_state_json(&psi))))
}

fn cmd_polygon(m: usize) -> Result<Output, Failure> {
    let rho = polygon_density(m)?;
    Ok(Output::ok(pretty_json(&io::float_operator_json(&rho))))
}

fn cmd_rho0000(m: usize, distance: usize, format: Format) -> Result<Output, Failure> {
    let b = 1 + distance;
    let value = rho0000_exact(m, 1, b)?;
    let separable = is_separable_pair(m, 1, b)?;
    let bound = rho0000_lower_bound(m)?;
    let fit = if m <= 10 {
        let rdm = partial_trace(&polygon_density(m)?, &[1, b])?;
        Some(two_qubit_werner_form(&rdm)?)
    } else {
        None
    };
    let text = match format {
        Format::Pretty => {
            let mut s =
                format!("rho_00,00 = {value}\nseparable: {separable}\nlower bound: {bound}\n");
            if let Some(f) = fit {
                s.push_str(&format!(
                    "lambda: {:.12}\nform residual: {:e}\n",
                    f.lambda, f.residual
                ));
            }
            s
        }
        _ => pretty_json(&json!({
            "m": m,
            "a": 1,
            "b": b,
            "rho0000": value.to_string(),
            "separable": separable,
            "lower_bound": bound.to_string(),
            "werner_form": fit,
        })),
    };
    Ok(Output::ok(text))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Diagrams { n } => cmd_diagrams(*n as usize, cli.format),
        Command::Basis { n } => cmd_basis(*n as usize, cli.format),
        Command::Check {
            input,
            method,
            samples,
            seed,
        } => cmd_check(input, method, *samples, *seed, cli.format),
        Command::Decompose { input } => cmd_decompose(input, cli.format),
        Command::Table2 { m } => cmd_table2(*m as usize, cli.format),
        Command::State { diagram, n } => cmd_state(diagram.as_deref(), n.map(|n| n as usize)),
        Command::Polygon { m } => cmd_polygon(*m as usize),
        Command::Rho0000 { m, distance } => {
            cmd_rho0000(*m as usize, *distance as usize, cli.format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build_global()
        {
            eprintln!("werner: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => {
                    fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("werner: {e}");
                return ExitCode::from(EXIT_IO);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("werner: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("werner: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}
