//! `atomforge`: command-line front end.
//!
//! Exit codes: 0 success, 1 certificate failure, 2 invalid input,
//! 3 factorization overflow.

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use atomforge_core::atoms::atom_census_with;
use atomforge_core::divgroup::{theorem419_census, theorem419_grid};
use atomforge_core::domain::RingElement;
use atomforge_core::euclid::{polyvalue_primes, EuclidState, PollackState};
use atomforge_core::field::Fe;
use atomforge_core::radical::{condition_e_panel, jacobson_radical};
use atomforge_core::report::{PolyPrimesResult, Report, ReportBody};
use atomforge_core::rings::gaussian::Gaussian;
use atomforge_core::rings::{Budget, RingDescriptor};
use atomforge_core::topo::{golomb_membership, maximal_ideal_closed_check, periodic_char_check};
use atomforge_core::Error;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

#[derive(Parser, Debug)]
#[command(name = "atomforge", version, about = "Certificates for factorization in integral domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Output {
    /// Print the JSON report instead of a table.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pairwise comaximal irreducibles from x = y f_1...f_n + 1.
    Euclid {
        /// z, gauss or poly-fq:<q>.
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Irreducibles of Z whose class mod N avoids a subgroup H.
    Pollack {
        #[arg(long)]
        modulus: u64,
        /// Comma-separated members of H, e.g. "1,4".
        #[arg(long)]
        subgroup: String,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[command(flatten)]
        out: Output,
    },
    /// New prime divisors of values of an integer polynomial.
    Polyprimes {
        /// Coefficients, constant term first, e.g. "1,0,1" for t^2+1.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 3)]
        count: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Atom census of trunc:q:d:e:N.
    Atoms {
        #[arg(long)]
        ring: String,
        /// Also recompute at N + 1.
        #[arg(long)]
        stability: bool,
        /// Print the orbit table as CSV.
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Jacobson radical of a truncated ring, or Condition (E) witnesses on a panel.
    Radical {
        #[arg(long)]
        ring: String,
        /// Comma-separated panel: integers ("1,-2"), Gaussian integers
        /// ("i,3+4i") or polynomials as colon-separated codes, constant
        /// first ("1:1:1").
        #[arg(long, allow_hyphen_values = true)]
        panel: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Finite-window checks over Z.
    Topo {
        #[command(subcommand)]
        check: TopoCommand,
    },
    /// Group-of-divisibility census for (alpha, beta, gamma).
    Divgroup {
        #[arg(long, requires_all = ["beta", "gamma"], conflicts_with = "grid")]
        alpha: Option<u32>,
        #[arg(long)]
        beta: Option<u32>,
        #[arg(long)]
        gamma: Option<u32>,
        /// Every triple with entries up to this bound.
        #[arg(long)]
        grid: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Re-check a JSON report.
    Verify {
        file: std::path::PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum TopoCommand {
    /// Periodicity of the coprime indicator for a prime list.
    Periodicity {
        #[arg(long)]
        primes: String,
        #[arg(long)]
        radius: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Basic neighborhoods x + pZ for every x in [1, radius] outside pZ.
    Golomb {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        radius: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Whether x lies in b + aZ.
    Member {
        #[arg(long, allow_hyphen_values = true)]
        x: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        base: BigInt,
        #[arg(long)]
        modulus: BigInt,
    },
}

/// Writes a line to stdout, ignoring a closed pipe.
fn say(s: impl std::fmt::Display) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

/// Failure modes, each with its exit code.
enum Failure {
    Input(String),
    Overflow(String),
    Certificate(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::FactorizationOverflow { .. } => Failure::Overflow(e.to_string()),
            Error::BudgetExceeded { .. } => Failure::Input(e.to_string()),
            e if e.is_invalid_input() => Failure::Input(e.to_string()),
            e => Failure::Certificate(e.to_string()),
        }
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Input(format!("bad {what} entry {t:?}"))))
        .collect()
}

fn parse_ring(s: &str) -> Result<RingDescriptor, Failure> {
    Ok(s.parse::<RingDescriptor>()?)
}

fn parse_gaussian(s: &str) -> Option<Gaussian> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i') else {
        return Some(Gaussian::new(s.parse::<BigInt>().ok()?, 0));
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .last()
        .map(|(i, _)| i);
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => BigInt::from(1),
        "-" => BigInt::from(-1),
        other => other.parse().ok()?,
    };
    Some(Gaussian::new(re.parse::<BigInt>().ok()?, im))
}

fn parse_element(ring: RingDescriptor, s: &str) -> Result<RingElement, Failure> {
    let bad = || Failure::Input(format!("cannot read {s:?} as an element of {ring}"));
    match ring {
        RingDescriptor::Integers => Ok(RingElement::Integer(s.trim().parse().map_err(|_| bad())?)),
        RingDescriptor::GaussianIntegers => parse_gaussian(s).map(RingElement::Gaussian).ok_or_else(bad),
        RingDescriptor::PolyOverFq { q } => {
            let codes: Vec<Fe> = s
                .split(':')
                .map(|c| c.trim().parse::<Fe>().ok().filter(|&c| c < q))
                .collect::<Option<_>>()
                .ok_or_else(bad)?;
            Ok(RingElement::poly(q, &codes))
        }
        RingDescriptor::Truncated(_) => Err(bad()),
    }
}

fn default_panel(ring: RingDescriptor) -> Vec<RingElement> {
    match ring {
        RingDescriptor::Integers => [1, -1, 2, -2, 1_000_000].into_iter().map(RingElement::int).collect(),
        RingDescriptor::GaussianIntegers => vec![
            RingElement::gaussian(1, 0),
            RingElement::gaussian(0, 1),
            RingElement::gaussian(3, 4),
        ],
        RingDescriptor::PolyOverFq { q } => vec![
            RingElement::poly(q, &[1]),
            RingElement::poly(q, &[0, 1]),
            RingElement::poly(q, &[1, 1, 1]),
        ],
        RingDescriptor::Truncated(_) => Vec::new(),
    }
}

fn print_table(report: &Report, csv: bool) -> Result<(), Failure> {
    let mut lines: Vec<String> = Vec::new();
    let mut line = |s: String| lines.push(s);
    match &report.body {
        ReportBody::Euclid(s) => {
            line(format!("ring {}", s.ring));
            for (i, st) in s.transcript.iter().enumerate() {
                let x = st.x.as_ref().map_or("seed".to_string(), |x| x.to_string());
                line(format!("{:>3}  {:<30}  x = {}", i + 1, st.selected.to_string(), x));
            }
        }
        ReportBody::Pollack(s) => {
            line(format!("N = {}  H = {:?}  alpha = {}  beta = {}", s.modulus, s.subgroup, s.alpha, s.beta));
            for (i, st) in s.transcript.iter().enumerate() {
                line(format!(
                    "{:>3}  {:<20}  class {:<4}  P(t) = {}t + {}  at t = {}",
                    i + 1,
                    st.selected.to_string(),
                    st.class,
                    st.lead,
                    st.constant,
                    st.x
                ));
            }
        }
        ReportBody::Polyprimes(r) => {
            for p in &r.primes {
                line(format!("{:<12}  divides f({}) = {}", p.p.to_string(), p.n, p.value));
            }
        }
        ReportBody::Atoms(c) => {
            if csv {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Failure::Input(e.to_string());
                w.write_record(["representative", "valuation", "orbit_size"]).map_err(io)?;
                for o in &c.orbits {
                    let v = o.representative.valuation().map_err(Failure::from)?;
                    w.write_record([o.representative.to_string(), v.to_string(), o.size.to_string()])
                        .map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| Failure::Input(e.to_string()))?;
                line(String::from_utf8_lossy(&bytes).trim_end().to_string());
            } else {
                line(format!("ring {}", c.ring));
                line(format!("observed {}  predicted {}", c.observed(), c.predicted));
                line(format!("irreducibles {}", c.irreducibles_total));
                if let Some(stable) = c.truncation_stable {
                    line(format!("stable at N+1: {stable}"));
                }
                for o in &c.orbits {
                    line(format!("  {:<24} orbit size {}", o.representative.to_string(), o.size));
                }
            }
        }
        ReportBody::Radical(r) => {
            line(format!("ring {}  condition (E): {:?}", r.ring, r.condition_e));
            if let Some(m) = &r.radical_members {
                line(format!("radical members {}", m.len()));
            }
            if let Some(w) = &r.witness {
                line(format!("witness {w}"));
            }
            for w in &r.panel {
                line(format!("  x = {:<16} y = {:<16} y*x+1 = {}", w.x.to_string(), w.y.to_string(), w.value));
            }
        }
        ReportBody::Periodicity(r) => {
            line(format!("primes {:?}  period {}  window {:?}", r.primes, r.period, r.window));
            line(format!("periodic {}  coset {}", r.verified, r.coset_check));
            for e in &r.extractions {
                line(format!("  {:>8} -> {}", e.x, e.prime));
            }
        }
        ReportBody::Golomb(r) => {
            line(format!("p = {}  window {:?}", r.prime, r.window));
            line(format!("neighborhoods {}  skipped {}  verified {}", r.neighborhoods.len(), r.skipped.len(), r.verified));
        }
        ReportBody::Divgroup(rs) => {
            line("alpha beta gamma  spec                      atoms max primes atomic furst  claims".into());
            for r in rs {
                line(format!(
                    "{:>5} {:>4} {:>5}  {:<25} {:>5} {:>3} {:>6} {:>6} {:>5}  {}",
                    r.alpha,
                    r.beta,
                    r.gamma,
                    r.spec.to_string(),
                    r.atoms,
                    r.maximal_ideals,
                    r.nonzero_primes,
                    r.atomic,
                    r.furstenberg,
                    if r.all_checkable_hold() { "ok" } else { "FAIL" }
                ));
            }
        }
    }
    if !csv {
        line(format!(
            "verification: {} checked, {} failed",
            report.verification.checked, report.verification.failed
        ));
        for f in &report.verification.failures {
            line(format!("  FAILED {f}"));
        }
    }
    for l in lines {
        say(l);
    }
    Ok(())
}

fn emit(report: &Report, out: Output, csv: bool) -> Result<(), Failure> {
    if out.json {
        say(report.to_json());
    } else {
        print_table(report, csv)?;
    }
    if report.verification.passed() {
        Ok(())
    } else {
        Err(Failure::Certificate(format!(
            "{} of {} checks failed",
            report.verification.failed, report.verification.checked
        )))
    }
}

fn run(cli: Cli, argv: Vec<String>) -> Result<(), Failure> {
    let budget = Budget::from_env();
    let start = Instant::now();
    let elapsed = |s: Instant| s.elapsed().as_millis() as u64;
    let (body, out, csv) = match cli.command {
        Command::Euclid { ring, count, out } => {
            let st = EuclidState::run(parse_ring(&ring)?, count)?;
            (ReportBody::Euclid(st), out, false)
        }
        Command::Pollack { modulus, subgroup, count, out } => {
            let h: Vec<u64> = parse_list(&subgroup, "subgroup")?;
            (ReportBody::Pollack(PollackState::run(modulus, &h, count)?), out, false)
        }
        Command::Polyprimes { poly, count, out } => {
            let f: Vec<BigInt> = parse_list(&poly, "coefficient")?;
            let primes = polyvalue_primes(&f, count)?;
            (ReportBody::Polyprimes(PolyPrimesResult { poly: f, primes }), out, false)
        }
        Command::Atoms { ring, stability, csv, out } => {
            let RingDescriptor::Truncated(spec) = parse_ring(&ring)? else {
                return Err(Failure::Input(format!("{ring} is not a truncated ring")));
            };
            (ReportBody::Atoms(atom_census_with(spec, budget, stability)?), out, csv)
        }
        Command::Radical { ring, panel, out } => {
            let r = parse_ring(&ring)?;
            let report = match r {
                RingDescriptor::Truncated(spec) => {
                    if panel.is_some() {
                        return Err(Failure::Input("truncated rings are scanned exhaustively; drop --panel".into()));
                    }
                    jacobson_radical(spec, budget)?
                }
                _ => {
                    let xs = match panel {
                        Some(p) => p
                            .split(',')
                            .map(|s| parse_element(r, s))
                            .collect::<Result<Vec<_>, _>>()?,
                        None => default_panel(r),
                    };
                    condition_e_panel(r, &xs)?
                }
            };
            (ReportBody::Radical(report), out, false)
        }
        Command::Topo { check } => match check {
            TopoCommand::Periodicity { primes, radius, out } => {
                let ps: Vec<u64> = parse_list(&primes, "prime")?;
                (ReportBody::Periodicity(periodic_char_check(&ps, radius)?), out, false)
            }
            TopoCommand::Golomb { prime, radius, out } => {
                (ReportBody::Golomb(maximal_ideal_closed_check(prime, radius)?), out, false)
            }
            TopoCommand::Member { x, base, modulus } => {
                say(golomb_membership(&x, &base, &modulus)?);
                return Ok(());
            }
        },
        Command::Divgroup { alpha, beta, gamma, grid, out } => {
            let reports = match (alpha, beta, gamma, grid) {
                (_, _, _, Some(m)) => theorem419_grid(m)?,
                (Some(a), Some(b), Some(c), None) => vec![theorem419_census(a, b, c)?],
                _ => return Err(Failure::Input("give --alpha/--beta/--gamma or --grid".into())),
            };
            (ReportBody::Divgroup(reports), out, false)
        }
        Command::Verify { file, out } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
            let report = Report::from_json(&text)?;
            let summary = report.verify(budget);
            if out.json {
                say(serde_json::to_string_pretty(&summary).expect("summary serializes"));
            } else {
                say(format_args!("{}: {} checked, {} failed", report.subject, summary.checked, summary.failed));
                for f in &summary.failures {
                    say(format_args!("  FAILED {f}"));
                }
            }
            return if summary.passed() {
                Ok(())
            } else {
                Err(Failure::Certificate(format!("{} checks failed", summary.failed)))
            };
        }
    };
    let report = Report::new(argv, body, budget, elapsed(start));
    emit(&report, out, csv)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(cli, argv);
    let _ = std::io::stdout().flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Certificate(m)) => {
            eprintln!("certificate failure: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("invalid input: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Overflow(m)) => {
            eprintln!("factorization overflow: {m}");
            ExitCode::from(3)
        }
    }
}
