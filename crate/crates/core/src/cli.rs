//! Command-line front end. [`run`] returns the process exit status:
//! 0 success, 1 negative result (invalid, rejected, survey failures),
//! 2 bad input, 3 no certificate found.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::json;

use crate::charfun::{
    validate_hyper, validate_rational_polygon, validate_rational_simplex, CharFnFile, HyperCharFn,
    ValidityReport,
};
use crate::cobord::{
    build_certificate, lem2_chain, normalize_params, survey, verify_certificate, verify_chain,
    Certificate,
};
use crate::error::{Error, Result};
use crate::exactlin::{parse_vector, IntMatrix};
use crate::lensid::{canonical_form, identify, lenscla2_translate, LensClass};

#[derive(Parser, Debug)]
#[command(
    name = "torcob",
    version,
    about = "Lens spaces, characteristic functions and null-cobordism certificates"
)]
struct Cli {
    /// Structured output (JSON or the raw report format).
    #[arg(long, global = true)]
    machine: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a characteristic-function file.
    Validate {
        #[arg(long)]
        file: PathBuf,
        /// Rational (polytope) rather than hyper (simplex) validity.
        #[arg(long)]
        rational: bool,
    },
    /// Identify the lens space of a hyper characteristic function.
    Identify {
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        file: Option<PathBuf>,
        /// Columns are the facet vectors, e.g. "1,-3;0,8".
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
    },
    /// Translate lens parameters by a unimodular matrix.
    Translate {
        #[arg(short = 'p', allow_hyphen_values = true)]
        p: String,
        #[arg(short = 'q', allow_hyphen_values = true)]
        q: String,
        #[arg(short = 'B', allow_hyphen_values = true)]
        b: String,
    },
    /// Build a null-cobordism certificate for L(P; q1,...,qn).
    Certify {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Run the epsilon search over every normalized tuple up to a sum.
    Survey {
        #[arg(long)]
        dim: usize,
        #[arg(long = "max-sum")]
        max_sum: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    machine: bool,
}

/// Parses `args` (including the program name) and executes the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let mut io = Io {
        out,
        err,
        machine: cli.machine,
    };
    let status = match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            2
        }
    };
    let _ = io.out.flush();
    status
}

fn dispatch(cmd: Command, io: &mut Io) -> Result<i32> {
    match cmd {
        Command::Validate { file, rational } => cmd_validate(&file, rational, io),
        Command::Identify { file, matrix } => cmd_identify(file, matrix, io),
        Command::Translate { p, q, b } => cmd_translate(&p, &q, &b, io),
        Command::Certify { p, q, out } => cmd_certify(&p, &q, out, io),
        Command::Verify { cert } => cmd_verify(&cert, io),
        Command::Survey { dim, max_sum, jobs } => cmd_survey(dim, max_sum, jobs, io),
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Parse(e.to_string())
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

fn strs(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn num(x: &BigInt) -> serde_json::Value {
    serde_json::Value::Number(x.to_string().parse().expect("decimal integer"))
}

fn nums(xs: &[BigInt]) -> serde_json::Value {
    serde_json::Value::Array(xs.iter().map(num).collect())
}

fn report_validity(report: &ValidityReport, io: &mut Io) -> Result<i32> {
    if io.machine {
        let v = json!({"valid": report.is_valid(), "failing": report.failing});
        writeln!(io.out, "{v}").map_err(io_err)?;
    } else {
        writeln!(io.out, "{report}").map_err(io_err)?;
    }
    Ok(if report.is_valid() { 0 } else { 1 })
}

fn cmd_validate(file: &PathBuf, rational: bool, io: &mut Io) -> Result<i32> {
    let f = CharFnFile::parse(&read(file)?)?;
    let report = if !rational {
        validate_hyper(f.dimension, &f.labeled()?)?
    } else if f.dimension == 2 && (f.vectors.len() != 3 || f.vectors.iter().any(Option::is_none)) {
        let edges = f
            .vectors
            .iter()
            .map(|v| match v {
                None => Ok(None),
                Some(v) if v.len() == 2 => Ok(Some([v[0].clone(), v[1].clone()])),
                Some(v) => Err(Error::Dimension(format!(
                    "polygon edge of length {}",
                    v.len()
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        validate_rational_polygon(&edges)?
    } else {
        validate_rational_simplex(f.dimension, &f.labeled()?)?
    };
    report_validity(&report, io)
}

fn print_class(class: &LensClass, io: &mut Io) -> Result<()> {
    if io.machine {
        let v = match class {
            LensClass::Sphere { n } => json!({"kind": "sphere", "n": n, "text": class.to_string()}),
            LensClass::Lens { p, r } => json!({
                "kind": "lens",
                "p": num(p),
                "r": nums(r),
                "canonical": nums(&canonical_form(p, r)?),
                "text": class.to_string(),
            }),
            LensClass::ProductS1CPn { n } => {
                json!({"kind": "product", "n": n, "text": class.to_string()})
            }
        };
        writeln!(io.out, "{v}").map_err(io_err)
    } else {
        writeln!(io.out, "{class}").map_err(io_err)
    }
}

fn cmd_identify(file: Option<PathBuf>, matrix: Option<String>, io: &mut Io) -> Result<i32> {
    let vectors = match (file, matrix) {
        (Some(path), _) => {
            let f = CharFnFile::parse(&read(&path)?)?;
            let v = f.labeled()?;
            if v.len() != f.dimension + 1 {
                return Err(Error::Dimension(format!(
                    "dimension {} needs {} vectors, got {}",
                    f.dimension,
                    f.dimension + 1,
                    v.len()
                )));
            }
            v
        }
        (None, Some(m)) => m.parse::<IntMatrix>()?.columns(),
        (None, None) => return Err(Error::Parse("give --file or --matrix".into())),
    };
    let f = HyperCharFn::new(vectors)?;
    match identify(&f) {
        Ok(class) => print_class(&class, io)?,
        Err(Error::NonCyclicQuotient { divisors }) => {
            if io.machine {
                let v = json!({"kind": "non-cyclic", "divisors": nums(&divisors)});
                writeln!(io.out, "{v}").map_err(io_err)?;
            } else {
                writeln!(io.out, "non-cyclic quotient").map_err(io_err)?;
            }
        }
        Err(e) => return Err(e),
    }
    Ok(0)
}

fn cmd_translate(p: &str, q: &str, b: &str, io: &mut Io) -> Result<i32> {
    let p = parse_int(p)?;
    let q = parse_vector(q)?;
    let b: IntMatrix = b.parse()?;
    let r = lenscla2_translate(&p, &q, &b)?;
    let canon = canonical_form(&p, &r)?;
    if io.machine {
        let v = json!({"p": num(&p), "q": nums(&q), "r": nums(&r), "canonical": nums(&canon)});
        writeln!(io.out, "{v}").map_err(io_err)?;
    } else {
        writeln!(io.out, "r: {}", strs(&r).join(",")).map_err(io_err)?;
        writeln!(io.out, "canonical: {}", strs(&canon).join(",")).map_err(io_err)?;
    }
    Ok(0)
}

fn cmd_certify(p: &str, q: &str, out: Option<PathBuf>, io: &mut Io) -> Result<i32> {
    let p = parse_int(p)?;
    let q_in = parse_vector(q)?;
    if p < BigInt::one() {
        return Err(Error::InvalidLensParameters(format!(
            "p = {p} is not positive"
        )));
    }
    let q = normalize_params(&p, &q_in);
    let mut sorted_in = q_in.clone();
    sorted_in.sort();
    if sorted_in != q {
        writeln!(
            io.err,
            "note: parameters normalized to {}",
            strs(&q).join(",")
        )
        .map_err(io_err)?;
    }
    let cert = if q.len() == 1 && !p.is_one() {
        Certificate::Chain(lem2_chain(&q[0], &p)?)
    } else {
        match build_certificate(&p, &q)? {
            Some(t) => Certificate::Tree(t),
            None => {
                writeln!(
                    io.err,
                    "no certificate: epsilon search failed in the reduction"
                )
                .map_err(io_err)?;
                return Ok(3);
            }
        }
    };
    let text = cert.to_json();
    match out {
        Some(path) => {
            fs::write(&path, &text)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let what = match &cert {
                Certificate::Chain(c) => format!("chain of {} vectors", c.chain.len()),
                Certificate::Tree(t) => format!(
                    "reduction tree with {} nodes, depth {}",
                    t.root.node_count(),
                    t.root.depth()
                ),
            };
            writeln!(io.out, "wrote {} ({what})", path.display()).map_err(io_err)?;
        }
        None => write!(io.out, "{text}").map_err(io_err)?,
    }
    Ok(0)
}

fn cmd_verify(path: &PathBuf, io: &mut Io) -> Result<i32> {
    let cert = Certificate::parse(&read(path)?)?;
    let (accepted, path, reason) = match &cert {
        Certificate::Tree(t) => {
            let r = verify_certificate(t);
            match r.failure {
                None => (true, None, None),
                Some((path, why)) => (false, Some(path), Some(why)),
            }
        }
        Certificate::Chain(c) => match verify_chain(c) {
            Ok(()) => (true, None, None),
            Err(d) => (false, Some("chain".to_string()), Some(d.to_string())),
        },
    };
    if io.machine {
        let v = json!({"accepted": accepted, "path": path, "reason": reason});
        writeln!(io.out, "{v}").map_err(io_err)?;
    } else if accepted {
        writeln!(io.out, "accepted").map_err(io_err)?;
    } else {
        writeln!(
            io.out,
            "rejected at {}: {}",
            path.unwrap_or_default(),
            reason.unwrap_or_default()
        )
        .map_err(io_err)?;
    }
    Ok(if accepted { 0 } else { 1 })
}

fn cmd_survey(dim: usize, max_sum: u64, jobs: usize, io: &mut Io) -> Result<i32> {
    let report = survey(dim, max_sum, jobs)?;
    write!(io.out, "{report}").map_err(io_err)?;
    Ok(if report.failures.is_empty() { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("torcob").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn identify_matrix() {
        let (code, out, _) = call(&["identify", "--matrix", "1,-3;0,8"]);
        assert_eq!(code, 0);
        assert_eq!(out, "L(8; 3)\n");
        let (code, _, _) = call(&["identify", "--matrix", "2,0;0,2"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn translate_example() {
        let (code, out, _) = call(&["translate", "-p", "8", "-q", "-5,-7", "-B", "3,5;2,3"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.ends_with("canonical: 1,3\n"));
        let (code, _, err) = call(&["translate", "-p", "8", "-q", "1,3", "-B", "2,0;0,1"]);
        assert_eq!(code, 2);
        assert!(err.contains("unimodular"));
    }

    #[test]
    fn certify_stdout_and_notice() {
        let (code, out, err) = call(&["certify", "5", "-3,2"]);
        assert_eq!(code, 0);
        assert!(err.contains("normalized"));
        assert!(out.contains("\"dimension\": 2"));
        let (code, _, _) = call(&["certify", "6", "2,3"]);
        assert_eq!(code, 2);
        let (code, out, _) = call(&["certify", "8", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"chain\""));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&[]).0, 2);
        assert_eq!(call(&["bogus"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
        assert_eq!(call(&["survey", "--dim", "1", "--max-sum", "10"]).0, 2);
        assert_eq!(call(&["verify", "--cert", "/nonexistent/cert.json"]).0, 2);
    }

    #[test]
    fn survey_small() {
        let (code, out, _) = call(&["survey", "--dim", "2", "--max-sum", "4"]);
        assert_eq!(code, 0);
        assert!(out.contains("failures: 0\n"));
        assert!(out.contains("\n4\t1\t0\n"));
    }
}
