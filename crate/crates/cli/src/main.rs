use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use sl2pf::certificate::{omega_eval, Certificate, FieldSpec};
use sl2pf::decompose::{decompose, CaseTrace, DecomposeOptions, DEFAULT_DEGREE_CAP};
use sl2pf::random::random_sl2;
use sl2pf::selftest::{algebra_suites, round_trip};
use sl2pf::{mix_seed, seeded_rng, Error, PolyRing};

mod doc;

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(name = "sl2pf", version, about = "Write matrices in SL2(F_q[T]) with 52 polynomial parameters")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
    #[command(flatten)]
    cfg: RunConfig,
}

#[derive(Args, Clone)]
struct RunConfig {
    /// Field as p[,n[,modulus]], e.g. 5 or 3,2 or 3,2,T^2+1
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, env = "SL2PF_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Refuse inputs whose powers would exceed this entry degree
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    degree_cap: u64,
    /// Candidates tried per degree in prime searches
    #[arg(long, global = true)]
    retry_cap: Option<u64>,
    /// Re-verify every stage by evaluation
    #[arg(long, global = true)]
    checked: bool,
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Matrix JSON in, certificate JSON out
    Decompose,
    /// Certificate JSON in, matrix JSON out
    Evaluate,
    /// Compare a matrix (--in) with a certificate (--cert)
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Run the built-in suites
    Selftest {
        /// Samples per randomized suite
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Random matrices decomposed per field
        #[arg(long, default_value_t = 20)]
        round_trips: usize,
    },
    /// Time decompositions of random matrices, one CSV row each
    Bench {
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Largest parameter degree of the elementary factors
        #[arg(long, default_value_t = 1)]
        max_deg: usize,
        #[arg(long, default_value_t = 4)]
        factors: usize,
    },
    /// A seeded random product of elementary matrices
    Random {
        #[arg(long, default_value_t = 4)]
        factors: usize,
        #[arg(long, default_value_t = 1)]
        max_deg: usize,
    },
}

/// Exit status for an error.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::FieldMismatch | Error::ArityMismatch(_) | Error::BadLength(_) => 2,
        Error::NotPrime(_) | Error::EvenCharacteristic | Error::ReducibleModulus | Error::Unsupported(_) => 2,
        Error::NotSL2(_) => 3,
        Error::SearchExhausted(_) | Error::DegreeCapExceeded { .. } => 4,
        Error::QuintupleNotSL2 => 5,
        _ => 1,
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    let mut s = String::new();
    let res = match path {
        Some(p) => fs::read_to_string(p).map(|t| s = t),
        None => io::stdin().read_to_string(&mut s).map(|_| ()),
    };
    res.map_err(|e| Failure { code: 2, message: format!("cannot read input: {e}") })?;
    Ok(s)
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    let res = match path {
        Some(p) => fs::write(p, format!("{text}\n")),
        None => writeln!(io::stdout().lock(), "{text}"),
    };
    res.map_err(|e| Failure { code: 1, message: format!("cannot write output: {e}") })
}

impl RunConfig {
    fn field_spec(&self) -> Result<Option<FieldSpec>, Failure> {
        Ok(self.field.as_deref().map(doc::parse_field_flag).transpose()?)
    }

    fn ring(&self) -> Result<PolyRing, Failure> {
        let spec = self.field_spec()?.unwrap_or(FieldSpec { p: 3, n: 1, modulus: None });
        Ok(PolyRing::new(spec.build()?))
    }

    fn options(&self) -> DecomposeOptions {
        DecomposeOptions { checked: self.checked, degree_cap: Some(self.degree_cap), retry_cap: self.retry_cap }
    }
}

fn cmd_decompose(cfg: &RunConfig) -> Result<(), Failure> {
    let text = read_input(cfg.input.as_ref())?;
    let (r, alpha) = doc::parse_matrix(&text, cfg.field_spec()?.as_ref())?;
    let (cert, trace) = decompose(&r, &alpha, cfg.seed, &cfg.options())?;
    write_output(cfg.out.as_ref(), &cert.to_json(&r))?;
    let mut line = format!("slots 9,5,4,5,11,5,4,5,4; max parameter degree {}", cert.max_degree());
    match (&trace.case, trace.summary()) {
        (_, Some((d1, d2, er, es, h1, h2))) => {
            line += &format!("; prime degrees {d1},{d2}; exponents r={er} s={es} h1={h1} h2={h2}")
        }
        (CaseTrace::Identity, _) => line += "; identity",
        _ => line += "; a = 0 branch",
    }
    eprintln!("{line}");
    Ok(())
}

fn cmd_evaluate(cfg: &RunConfig) -> Result<(), Failure> {
    let text = read_input(cfg.input.as_ref())?;
    let (r, cert) = Certificate::from_json(&text)?;
    if let Some(spec) = cfg.field_spec()? {
        if !doc::same_field(&spec, &FieldSpec::of(r.field()))? {
            return Err(Error::FieldMismatch.into());
        }
    }
    let m = omega_eval(&r, &cert)?;
    write_output(cfg.out.as_ref(), &doc::format_matrix(&r, &m))
}

fn cmd_verify(cfg: &RunConfig, cert_path: &PathBuf) -> Result<(), Failure> {
    let (r, alpha) = doc::parse_matrix(&read_input(cfg.input.as_ref())?, cfg.field_spec()?.as_ref())?;
    let (rc, cert) = Certificate::from_json(&read_input(Some(cert_path))?)?;
    if FieldSpec::of(r.field()) != FieldSpec::of(rc.field()) {
        return Err(Error::FieldMismatch.into());
    }
    let m = omega_eval(&r, &cert)?;
    let (got, want) = (m.format(&r), alpha.format(&r));
    for i in 0..2 {
        for j in 0..2 {
            if got[i][j] != want[i][j] {
                return Err(Failure {
                    code: 1,
                    message: format!(
                        "entry ({},{}) differs: certificate gives {}, matrix has {}",
                        i + 1,
                        j + 1,
                        got[i][j],
                        want[i][j]
                    ),
                });
            }
        }
    }
    write_output(cfg.out.as_ref(), "ok")
}

fn cmd_selftest(cfg: &RunConfig, samples: usize, round_trips: usize) -> Result<(), Failure> {
    let opts = cfg.options();
    let mut ok = true;
    let mut lines = Vec::new();
    for s in algebra_suites(samples, cfg.seed, &opts) {
        ok &= s.passed;
        lines.push(format!("{} {}: {}", if s.passed { "PASS" } else { "FAIL" }, s.name, s.detail));
    }
    let q = cfg.ring()?.field().q();
    let rt = round_trip(q, round_trips, 4, 1, cfg.seed, &opts);
    // refusals by the degree cap are reported, not failures
    let rt_ok = rt.wrong == 0;
    ok &= rt_ok;
    lines.push(format!("{} round trip {}", if rt_ok { "PASS" } else { "FAIL" }, rt.summary()));
    write_output(cfg.out.as_ref(), &lines.join("\n"))?;
    if ok {
        Ok(())
    } else {
        Err(Failure { code: 1, message: "some suites failed".into() })
    }
}

fn cmd_bench(cfg: &RunConfig, count: usize, max_deg: usize, factors: usize) -> Result<(), Failure> {
    let r = cfg.ring()?;
    let q = r.field().q();
    let opts = cfg.options();
    let mut rows = vec!["q,deg,seed,ms,max_deg,trials".to_string()];
    for k in 0..count {
        let seed = mix_seed(cfg.seed, k as u64);
        let mut rng = seeded_rng(seed);
        let alpha = random_sl2(&r, &mut rng, factors, max_deg);
        let start = Instant::now();
        let res = decompose(&r, &alpha, seed, &opts);
        let ms = start.elapsed().as_millis();
        let (peak, trials) = match &res {
            Ok((_, t)) => (t.peak_degree.to_string(), t.search_trials.to_string()),
            Err(_) => (String::new(), String::new()),
        };
        rows.push(format!("{q},{},{seed},{ms},{peak},{trials}", alpha.max_degree()));
    }
    write_output(cfg.out.as_ref(), &rows.join("\n"))
}

fn cmd_random(cfg: &RunConfig, factors: usize, max_deg: usize) -> Result<(), Failure> {
    let r = cfg.ring()?;
    let mut rng = seeded_rng(cfg.seed);
    let m = random_sl2(&r, &mut rng, factors, max_deg);
    write_output(cfg.out.as_ref(), &doc::format_matrix(&r, &m))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = &cli.cfg;
    let res = match &cli.cmd {
        Command::Decompose => cmd_decompose(cfg),
        Command::Evaluate => cmd_evaluate(cfg),
        Command::Verify { cert } => cmd_verify(cfg, cert),
        Command::Selftest { samples, round_trips } => cmd_selftest(cfg, *samples, *round_trips),
        Command::Bench { count, max_deg, factors } => cmd_bench(cfg, *count, *max_deg, *factors),
        Command::Random { factors, max_deg } => cmd_random(cfg, *factors, *max_deg),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
