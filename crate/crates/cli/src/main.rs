use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pasep_core::formulas::{
    fine_from_z, q_eulerian_row, q_stirling2, q_tangent_secant, StirlingMethod,
};
use pasep_core::paths::{enumerate_family, enumerate_laguerre, Family, TildeForm};
use pasep_core::perms::enumerate_permutations;
use pasep_core::polyring::{Point, Rational};
use pasep_core::tableaux::enumerate_tableaux;
use pasep_core::verify::{run_suite, Suite};
use pasep_core::{zn, Method};
use serde_json::json;

const USAGE: u8 = 2;
const CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "pasep",
    version,
    about = "Exact PASEP partition functions and their combinatorics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the partition function for N sites.
    Zn {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "closed")]
        method: Method,
        /// Evaluate at a rational point, e.g. a=1/2,b=3,y=1,q=0.
        #[arg(long)]
        eval: Option<String>,
        /// Largest size allowed for enumerative methods.
        #[arg(long, default_value_t = 9)]
        cap: usize,
        /// Ignore the size cap.
        #[arg(long)]
        force: bool,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Stream combinatorial objects as JSON lines.
    Enumerate {
        #[arg(long, value_enum)]
        object: Object,
        #[arg(long)]
        n: usize,
        /// Number of bare q-power level steps (pathset-R only).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 9)]
        cap: usize,
        #[arg(long)]
        force: bool,
    },
    /// Print a table of specialized polynomials.
    Special {
        #[arg(long, value_enum)]
        what: Special,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    Permutation,
    Tableau,
    Laguerre,
    #[value(name = "pathset-P")]
    PathsetP,
    #[value(name = "pathset-R")]
    PathsetR,
    #[value(name = "pathset-B")]
    PathsetB,
}

#[derive(Clone, Copy, ValueEnum)]
enum Special {
    QEulerian,
    QStirling,
    Fine,
    TangentSecant,
}

fn parse_point(spec: &str) -> Result<Point, String> {
    let mut values: [Option<Rational>; 4] = Default::default();
    for part in spec.split(',') {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected name=value, got {part:?}"))?;
        let slot = match name.trim() {
            "a" => 0,
            "b" => 1,
            "y" => 2,
            "q" => 3,
            other => return Err(format!("unknown variable {other:?}")),
        };
        let v: Rational = value
            .trim()
            .parse()
            .map_err(|e| format!("bad rational {value:?}: {e}"))?;
        values[slot] = Some(v);
    }
    let [a, b, y, q] = values;
    let missing = |v: Option<Rational>, n: &str| v.ok_or_else(|| format!("missing value for {n}"));
    Ok(Point::new(
        missing(a, "a")?,
        missing(b, "b")?,
        missing(y, "y")?,
        missing(q, "q")?,
    ))
}

fn cap_exceeded(n: usize, cap: usize, force: bool) -> bool {
    if n > cap && !force {
        eprintln!("error: n = {n} exceeds the cap {cap}; pass --force to run anyway");
        true
    } else {
        false
    }
}

fn run(cli: Cli) -> io::Result<u8> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Zn {
            n,
            method,
            eval,
            cap,
            force,
        } => {
            let point = match eval.as_deref().map(parse_point).transpose() {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(USAGE);
                }
            };
            if method.is_enumerative() && cap_exceeded(n, cap, force) {
                return Ok(CAP);
            }
            let z = zn(method, n);
            match point {
                Some(p) => writeln!(out, "{}", z.eval(&p))?,
                None => writeln!(out, "{}", z.canonical_string())?,
            }
        }
        Command::Verify { suite, max_n, json } => {
            let report = run_suite(suite, max_n);
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                )?;
            } else {
                write!(out, "{report}")?;
            }
            out.flush()?;
            return Ok(if report.passed() { 0 } else { 1 });
        }
        Command::Enumerate {
            object,
            n,
            k,
            cap,
            force,
        } => {
            if cap_exceeded(n, cap, force) {
                return Ok(CAP);
            }
            enumerate(&mut out, object, n, k)?;
        }
        Command::Special { what, n } => special(&mut out, what, n)?,
    }
    out.flush()?;
    Ok(0)
}

fn enumerate(out: &mut impl Write, object: Object, n: usize, k: Option<usize>) -> io::Result<()> {
    match object {
        Object::Permutation => {
            for p in enumerate_permutations(n) {
                writeln!(
                    out,
                    "{}",
                    json!({ "permutation": p.images(), "stats": p.stats() })
                )?;
            }
        }
        Object::Tableau => {
            for t in enumerate_tableaux(n) {
                writeln!(out, "{}", json!({ "tableau": t, "stats": t.stats() }))?;
            }
        }
        Object::Laguerre => {
            for h in enumerate_laguerre(n) {
                let (y, q) = h.weight_exponents();
                let mut record = h.to_json();
                record["weight"] = json!({ "y": y, "q": q });
                writeln!(out, "{record}")?;
            }
        }
        Object::PathsetP | Object::PathsetR | Object::PathsetB => {
            let (family, qpow) = match object {
                Object::PathsetP => (Family::P, None),
                Object::PathsetR => (Family::R, k),
                _ => (Family::B, None),
            };
            for path in enumerate_family(family, n, qpow) {
                let mut record = path.to_json();
                record["family"] = json!(family.name());
                record["qpow_levels"] = json!(path.qpow_levels());
                record["weight"] = json!(path.weight(TildeForm::Expanded).canonical_string());
                writeln!(out, "{record}")?;
            }
        }
    }
    Ok(())
}

fn special(out: &mut impl Write, what: Special, n: usize) -> io::Result<()> {
    match what {
        Special::QEulerian => {
            for (k, p) in q_eulerian_row(n).iter().enumerate() {
                writeln!(out, "{k}\t{p}")?;
            }
        }
        Special::QStirling => {
            for k in 1..=n {
                let p = q_stirling2(n, k, StirlingMethod::Recurrence).expect("recurrence is exact");
                writeln!(out, "{k}\t{p}")?;
            }
        }
        Special::Fine => {
            for i in 1..=n {
                writeln!(out, "{i}\t{}", fine_from_z(i))?;
            }
        }
        Special::TangentSecant => {
            for i in 0..=n {
                writeln!(out, "{i}\t{}", q_tangent_secant(i))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
